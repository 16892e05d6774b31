//! Acceptance suite: one PASS/FAIL line per criterion, with elapsed time
//! against the budget. Exits nonzero if any criterion fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use charvar::chevalley::{q_image, tau_image, GeneratorSymbol};
use charvar::lie::{
    cartan_metric, cohomology_dims, differential, hamiltonian_field, in_algebra, killing_ratio, lie_basis,
    omega_prime, torus_matrix, variation, CohomologyDims, Matrix, ORIENTATION,
};
use charvar::poisson::{tau_eval, JacobiOutcome, Lattice, PoissonAlgebra, TauPoly};
use charvar::sampling::{random_conjugate, random_eigenvalues, random_generic_point, random_invariant, random_rational, seeded};
use charvar::scalar::rat;
use charvar::{Decomposer, Family, GaussScalar, GroupSpec, Scalar, TorusPoint};
use itertools::Itertools;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::Rng;

type Outcome = Result<String, String>;

fn spec(f: Family, n: usize, big_n: usize) -> GroupSpec {
    GroupSpec::new(f, n, big_n).expect("valid group")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

fn window(cutoff: i64) -> Vec<Lattice> {
    (-cutoff..=cutoff).cartesian_product(-cutoff..=cutoff).map(|(p, q)| [p, q]).collect()
}

fn to_float(p: &TorusPoint<GaussScalar>) -> TorusPoint<Complex64> {
    p.map(Scalar::to_complex)
}

fn killing_table() -> Outcome {
    let mut cases = Vec::new();
    for n in 2..=4 {
        cases.push((spec(Family::SL, n, 1), 2 * n as i64));
    }
    for m in 3..=7usize {
        let g = if m % 2 == 1 { spec(Family::SOodd, m / 2, 1) } else { spec(Family::SOeven, m / 2, 1) };
        cases.push((g, m as i64 - 2));
    }
    for n in 1..=3 {
        cases.push((spec(Family::Sp, n, 1), 2 * n as i64 + 2));
    }
    for (g, expected) in &cases {
        let r = killing_ratio(g).map_err(|e| format!("{g}: {e}"))?;
        ensure(r == rat(*expected, 1), || format!("{g}: got {r}, expected {expected}"))?;
    }
    Ok(format!("{} algebras", cases.len()))
}

fn cohomology() -> Outcome {
    let mut rng = seeded(2);
    let mut count = 0;
    for f in Family::ALL {
        for n in 1..=3 {
            for big_n in [2, 3] {
                let g = spec(f, n, big_n);
                let expected = CohomologyDims::expected_generic(&g, big_n);
                for _ in 0..20 {
                    let p = random_generic_point(&g, &mut rng);
                    let gens: Vec<Matrix<GaussScalar>> =
                        p.columns().iter().map(|x| torus_matrix(&g, x)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
                    let dims = cohomology_dims(&g, &gens).map_err(|e| format!("{g}: {e}"))?;
                    ensure(dims == expected, || format!("{g}: got {dims:?}, expected {expected:?}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} tuples, exact mode"))
}

fn decomposition_round_trip() -> Outcome {
    let mut rng = seeded(3);
    let mut q_top = 0;
    let mut total = 0;
    for f in Family::ALL {
        let mut decomposers: HashMap<GroupSpec, Decomposer> = HashMap::new();
        for i in 0..200 {
            let g = spec(f, 1 + i % 3, 1 + (i / 3) % 2);
            let inv = random_invariant(&g, 3, 4, &mut rng).map_err(|e| e.to_string())?;
            let dec = decomposers.entry(g).or_insert_with(|| Decomposer::new(g).expect("small Weyl group"));
            let d = dec.decompose(&inv).map_err(|e| format!("{g}: {e}"))?;
            let back = d.expand(&g).map_err(|e| e.to_string())?;
            ensure(back.eq_in_ring(&inv), || format!("{g}: round trip failed for {inv}"))?;
            if d.terms().any(|(k, _)| k.iter().any(|s| matches!(s, GeneratorSymbol::Q(_)))) {
                q_top += 1;
            }
            total += 1;
        }
    }
    ensure(q_top > 0, || "no SO(2n) invariant exercised the Q generator".into())?;
    Ok(format!("{total} invariants, {q_top} with Q"))
}

/// Symbolic brackets against the ω′ oracle at one point, for all pairs in the window.
fn compare_at_point(
    alg: &PoissonAlgebra,
    brackets: &HashMap<(Lattice, Lattice), TauPoly>,
    vectors: &[Lattice],
    p: &TorusPoint<Complex64>,
) -> Result<f64, String> {
    let g = alg.group();
    let metric = cartan_metric(g, alg.c()).map_err(|e| e.to_string())?;
    let mut fields = HashMap::new();
    for a in vectors {
        let img = tau_image(g, a).map_err(|e| e.to_string())?;
        let df = differential(&img, p).map_err(|e| e.to_string())?;
        fields.insert(*a, hamiltonian_field(&metric, &df));
    }
    let mut worst: f64 = 0.0;
    for a in vectors {
        for b in vectors {
            let num = omega_prime(&metric, &fields[a], &fields[b]) * ORIENTATION;
            let sym = tau_eval(&brackets[&(*a, *b)], p).map_err(|e| e.to_string())?;
            worst = worst.max(rel_err(sym, num));
        }
    }
    Ok(worst)
}

fn bracket_oracle() -> Outcome {
    let groups = [
        spec(Family::SL, 2, 2),
        spec(Family::SL, 3, 2),
        spec(Family::Sp, 1, 2),
        spec(Family::Sp, 2, 2),
        spec(Family::SOodd, 1, 2),
        spec(Family::SOodd, 2, 2),
        spec(Family::SOeven, 2, 2),
    ];
    let vectors = window(2);
    let mut rng = seeded(4);
    let mut worst: f64 = 0.0;
    for g in &groups {
        let alg = PoissonAlgebra::new(*g, rat(1, 1)).map_err(|e| e.to_string())?;
        let mut brackets = HashMap::new();
        for a in &vectors {
            for b in &vectors {
                brackets.insert((*a, *b), alg.bracket_symbols(*a, *b).map_err(|e| e.to_string())?);
            }
        }
        for _ in 0..100 {
            let p = to_float(&random_generic_point(g, &mut rng));
            let e = compare_at_point(&alg, &brackets, &vectors, &p)?;
            ensure(e < 1e-9, || format!("{g}: relative error {e:.3e}"))?;
            worst = worst.max(e);
        }
    }
    Ok(format!("{} groups x 100 points x {} pairs, max rel err {worst:.2e}", groups.len(), vectors.len().pow(2)))
}

fn random_lattice<R: Rng>(rng: &mut R) -> Lattice {
    [rng.random_range(-2..=2), rng.random_range(-2..=2)]
}

fn random_tau_poly<R: Rng>(alg: &PoissonAlgebra, rng: &mut R) -> TauPoly {
    let mut f = alg.zero();
    for _ in 0..rng.random_range(1..=3) {
        let key: Vec<Lattice> = (0..rng.random_range(0..=2)).map(|_| random_lattice(rng)).collect();
        f.add_term(&key, GaussScalar::from_ratio(rng.random_range(-4..=4), rng.random_range(1..=3)));
    }
    f
}

fn poisson_axioms() -> Outcome {
    let mut rng = seeded(5);
    let groups = [
        spec(Family::SL, 2, 2),
        spec(Family::SL, 3, 2),
        spec(Family::Sp, 2, 2),
        spec(Family::SOodd, 2, 2),
        spec(Family::SOeven, 2, 2),
    ];
    let err = |e: charvar::Error| e.to_string();
    for i in 0..500 {
        let g = groups[i % groups.len()];
        let alg = PoissonAlgebra::new(g, random_rational(&mut rng)).map_err(err)?;
        let (f, h, k) = (random_tau_poly(&alg, &mut rng), random_tau_poly(&alg, &mut rng), random_tau_poly(&alg, &mut rng));
        let fh = alg.bracket(&f, &h).map_err(err)?;
        ensure(fh == alg.bracket(&h, &f).map_err(err)?.neg(), || format!("{g}: antisymmetry fails for {f}, {h}"))?;
        let lhs = alg.bracket(&f.mul(&h).map_err(err)?, &k).map_err(err)?;
        let rhs = f
            .mul(&alg.bracket(&h, &k).map_err(err)?)
            .map_err(err)?
            .add(&h.mul(&alg.bracket(&f, &k).map_err(err)?).map_err(err)?)
            .map_err(err)?;
        ensure(lhs == rhs, || format!("{g}: Leibniz fails for {f}, {h}, {k}"))?;
    }

    let mut modes: Vec<String> = Vec::new();
    for f in Family::ALL {
        let g = spec(f, 2, 2);
        let alg = PoissonAlgebra::new(g, rat(1, 1)).map_err(err)?.with_extrapolated(f == Family::GL);
        let points: Vec<TorusPoint<Complex64>> = (0..50).map(|_| to_float(&random_generic_point(&g, &mut rng))).collect();
        let (mut identical, mut numeric) = (0, 0);
        for _ in 0..100 {
            let (a, b, e) = (random_lattice(&mut rng), random_lattice(&mut rng), random_lattice(&mut rng));
            match alg.jacobi_outcome(a, b, e, &points, 1e-9).map_err(err)? {
                JacobiOutcome::IdenticallyZero => identical += 1,
                JacobiOutcome::NumericallyZero { .. } => numeric += 1,
                JacobiOutcome::Nonzero { max_abs } => {
                    return Err(format!("{g}: Jacobi defect {max_abs:.3e} for {a:?}, {b:?}, {e:?}"))
                }
            }
        }
        let label = if f == Family::GL { "GL (extrapolated)".to_string() } else { f.to_string() };
        modes.push(format!("{label}: {identical} identical/{numeric} numeric"));
    }
    Ok(format!("500 antisymmetry+Leibniz instances; Jacobi {}", modes.join(", ")))
}

fn sl2_sp1_consistency() -> Outcome {
    let sl = PoissonAlgebra::new(spec(Family::SL, 2, 2), rat(1, 1)).map_err(|e| e.to_string())?;
    let sp = PoissonAlgebra::new(spec(Family::Sp, 1, 2), rat(1, 1)).map_err(|e| e.to_string())?;
    let vectors = window(2);
    let mut rng = seeded(6);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x = random_rational(&mut rng);
        let y = random_rational(&mut rng);
        let c = |r: &BigRational| GaussScalar::real(r.clone()).to_complex();
        let p_sl = TorusPoint::new(*sl.group(), vec![vec![c(&x), c(&x.recip())], vec![c(&y), c(&y.recip())]])
            .map_err(|e| e.to_string())?;
        let p_sp = TorusPoint::new(*sp.group(), vec![vec![c(&x)], vec![c(&y)]]).map_err(|e| e.to_string())?;
        for a in &vectors {
            for b in &vectors {
                let u = tau_eval(&sl.bracket_symbols(*a, *b).map_err(|e| e.to_string())?, &p_sl).map_err(|e| e.to_string())?;
                let v = tau_eval(&sp.bracket_symbols(*a, *b).map_err(|e| e.to_string())?, &p_sp).map_err(|e| e.to_string())?;
                worst = worst.max(rel_err(u, v));
            }
        }
    }
    ensure(worst < 1e-9, || format!("max rel err {worst:.3e}"))?;
    Ok(format!("100 points x {} pairs, max rel err {worst:.2e}", vectors.len().pow(2)))
}

/// `2^{-n} Σ_{σ∈S_{2n}} sgn(σ) ∏_k (M_k − M_kᵀ)_{σ(2k), σ(2k+1)}`.
fn polarized_pfaffian(ms: &[Matrix<Complex64>]) -> Complex64 {
    let n = ms.len();
    let ks: Vec<Matrix<Complex64>> = ms.iter().map(|m| m.sub(&m.transpose())).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for sigma in (0..2 * n).permutations(2 * n) {
        let inversions = (0..2 * n).flat_map(|i| (i + 1..2 * n).map(move |j| (i, j))).filter(|&(i, j)| sigma[i] > sigma[j]).count();
        let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
        let prod: Complex64 = (0..n).map(|k| *ks[k].get(sigma[2 * k], sigma[2 * k + 1])).product();
        total += prod * sign;
    }
    total / 2f64.powi(n as i32)
}

fn q_lemma() -> Outcome {
    let g = spec(Family::SOeven, 2, 2);
    let mut rng = seeded(7);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let p = to_float(&random_generic_point(&g, &mut rng));
        let alphas: Vec<Vec<i64>> = (0..2).map(|_| vec![rng.random_range(-2..=2), rng.random_range(-2..=2)]).collect();
        let gens: Vec<Matrix<Complex64>> =
            p.columns().iter().map(|x| torus_matrix(&g, x)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let ms = alphas
            .iter()
            .map(|a| Ok(gens[0].pow(a[0])?.mul(&gens[1].pow(a[1])?)))
            .collect::<Result<Vec<_>, charvar::Error>>()
            .map_err(|e| e.to_string())?;
        let direct = polarized_pfaffian(&ms);
        let closed = q_image(&g, &alphas).and_then(|q| q.eval(&p)).map_err(|e| e.to_string())?;
        worst = worst.max(rel_err(closed, direct));
    }
    ensure(worst < 1e-9, || format!("max rel err {worst:.3e}"))?;
    Ok(format!("50 points, max rel err {worst:.2e}"))
}

fn variation_contracts() -> Outcome {
    let mut rng = seeded(8);
    let mut count = 0;
    for f in Family::ALL {
        for i in 0..100 {
            let g = spec(f, 1 + i % 3, 1);
            let c = random_rational(&mut rng);
            let t = torus_matrix(&g, &random_eigenvalues(&g, &mut rng)).map_err(|e| e.to_string())?;
            let a = if i % 2 == 0 { t } else { random_conjugate(&g, &t, &mut rng).map_err(|e| e.to_string())? };
            let fa = variation(&g, &a, &c).map_err(|e| format!("{g}: {e}"))?;
            ensure(in_algebra(&g, &fa), || format!("{g}: F(A) outside the Lie algebra"))?;
            let inv_c = GaussScalar::real(c.recip());
            for v in lie_basis(&g).elements() {
                ensure(fa.trace_product(v) == &a.trace_product(v) * &inv_c, || format!("{g}: duality fails"))?;
            }
            ensure(a.mul(&fa) == fa.mul(&a), || format!("{g}: F(A) does not commute with A"))?;
            count += 1;
        }
    }
    Ok(format!("{count} elements, exact"))
}

type Criterion = (&'static str, u64, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 killing-constant table", 10, killing_table),
        ("2 cohomology dimensions", 60, cohomology),
        ("3 decomposition round trip", 300, decomposition_round_trip),
        ("4 bracket oracle agreement", 300, bracket_oracle),
        ("5 poisson axioms and jacobi", 120, poisson_axioms),
        ("6 SL(2)/Sp(1) consistency", 30, sl2_sp1_consistency),
        ("7 Q closed form vs block matrices", 30, q_lemma),
        ("8 variation contracts", 60, variation_contracts),
    ];
    let mut failed = 0;
    for (name, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(budget);
        match (&outcome, over) {
            (Ok(detail), false) => println!("PASS  {name} ({:.2}s / {budget}s): {detail}", elapsed.as_secs_f64()),
            (Ok(detail), true) => {
                failed += 1;
                println!("FAIL  {name} ({:.2}s / {budget}s): over budget; {detail}", elapsed.as_secs_f64())
            }
            (Err(why), _) => {
                failed += 1;
                println!("FAIL  {name} ({:.2}s / {budget}s): {why}", elapsed.as_secs_f64())
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
