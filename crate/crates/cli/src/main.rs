//! `charvar`: decomposition, brackets and verification suites for torus
//! character varieties of classical groups.
//!
//! Exit codes: 0 success, 1 a verification suite failed its tolerance,
//! 2 invalid input or flags.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use charvar::chevalley::tau_image;
use charvar::json;
use charvar::lie::{cohomology_dims, killing_ratio, numeric_bracket, torus_matrix, CohomologyDims, Matrix};
use charvar::poisson::{tau_eval, JacobiOutcome, Lattice, PoissonAlgebra};
use charvar::sampling::{random_generic_point, seeded};
use charvar::scalar::parse_rational;
use charvar::weyl::{level_of_poly, orbit_sum};
use charvar::{Decomposer, Error, ExponentMatrix, Family, GaussScalar, GroupSpec, Scalar, TorusPoint};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::Rng;

#[derive(Parser)]
#[command(name = "charvar", version, about = "Trace coordinates and Poisson brackets on torus character varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Gl,
    Sl,
    Sp,
    SoOdd,
    SoEven,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Gl => Family::GL,
            FamilyArg::Sl => Family::SL,
            FamilyArg::Sp => Family::Sp,
            FamilyArg::SoOdd => Family::SOodd,
            FamilyArg::SoEven => Family::SOeven,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Args, Clone)]
struct GroupArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    rank: usize,
    /// Number of Z-factors N.
    #[arg(long, default_value_t = 2)]
    factors: usize,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec, Error> {
        GroupSpec::new(self.family.into(), self.rank, self.factors)
    }
}

/// Group over Z^2, for bracket commands.
#[derive(Args, Clone)]
struct PlaneGroupArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    rank: usize,
    /// Form parameter c in B = c·Tr (rational, e.g. 3/2).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    c: String,
    /// Enable the conjectural GL(n) bracket rule.
    #[arg(long)]
    extrapolated: bool,
}

impl PlaneGroupArgs {
    fn algebra(&self) -> Result<PoissonAlgebra, Error> {
        let g = GroupSpec::new(self.family.into(), self.rank, 2)?;
        Ok(PoissonAlgebra::new(g, parse_rational(&self.c)?)?.with_extrapolated(self.extrapolated))
    }
}

#[derive(Args, Clone)]
struct TrialArgs {
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Write a Weyl-invariant Laurent polynomial (JSON) in trace generators.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand a generator polynomial (JSON) on the torus.
    Expand {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Poisson bracket of two trace functions.
    Bracket {
        #[command(flatten)]
        group: PlaneGroupArgs,
        /// First lattice vector, e.g. 1,0.
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Second lattice vector, e.g. 0,-1.
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare symbolic brackets against the symplectic oracle at random points.
    VerifyBracket {
        #[command(flatten)]
        group: PlaneGroupArgs,
        #[command(flatten)]
        trials: TrialArgs,
        #[arg(long, default_value_t = 2)]
        cutoff: i64,
    },
    /// Check the Jacobi identity on random triples of trace functions.
    VerifyJacobi {
        #[command(flatten)]
        group: PlaneGroupArgs,
        #[command(flatten)]
        trials: TrialArgs,
        #[arg(long, default_value_t = 2)]
        cutoff: i64,
    },
    /// Dimensions of Z^1, B^1, H^1 of Z^N with coefficients in the adjoint representation.
    Cohomology {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// JSON file {"generators": [matrix, ...]} with matrices of exact entries.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Ratio of the Killing form to the trace form.
    Killing {
        #[arg(long, value_enum, requires = "rank")]
        family: Option<FamilyArg>,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Table of brackets of all trace functions in a window.
    StructureConstants {
        #[command(flatten)]
        group: PlaneGroupArgs,
        #[arg(long, default_value_t = 1)]
        cutoff: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weyl orbit sum of a monomial, e.g. --exps "1,0;0,-1".
    OrbitSum {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, allow_hyphen_values = true)]
        exps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Level of a Laurent polynomial (JSON) or of a single monomial.
    Level {
        #[arg(long = "in", conflicts_with = "exps")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, requires_all = ["rank", "exps"])]
        family: Option<FamilyArg>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 2)]
        factors: usize,
        #[arg(long, allow_hyphen_values = true, requires = "family")]
        exps: Option<String>,
    },
}

enum Failure {
    Verification(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn input_err(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, out: &Option<PathBuf>) -> CmdResult {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| input_err(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_vector(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| input_err(format!("bad integer `{t}` in `{s}`"))))
        .collect()
}

fn parse_lattice(s: &str) -> Result<Lattice, Failure> {
    match parse_vector(s)?.as_slice() {
        [p, q] => Ok([*p, *q]),
        _ => Err(input_err(format!("expected a vector p,q, got `{s}`"))),
    }
}

fn parse_exponents(s: &str, g: &GroupSpec) -> Result<ExponentMatrix, Failure> {
    let rows = s.split(';').map(parse_vector).collect::<Result<Vec<_>, _>>()?;
    if rows.len() != g.rank || rows.iter().any(|r| r.len() != g.factors) {
        return Err(input_err(format!("exponents must be {} rows of {} integers", g.rank, g.factors)));
    }
    Ok(ExponentMatrix::from_rows(&rows)?)
}

fn decompose(input: &PathBuf, out: &Option<PathBuf>) -> CmdResult {
    let f = json::laurent_from_str(&read(input)?)?;
    let d = Decomposer::new(*f.group())?.decompose(&f)?;
    emit(&json::to_pretty(&json::generator_to_value(&d)), out)
}

fn expand(group: &GroupArgs, input: &PathBuf, out: &Option<PathBuf>) -> CmdResult {
    let g = group.spec()?;
    let p = json::generator_from_str(&read(input)?)?;
    let f = p.expand(&g)?;
    emit(&json::to_pretty(&json::laurent_to_value(&f)), out)
}

fn bracket(group: &PlaneGroupArgs, a: &str, b: &str, out: &Option<PathBuf>) -> CmdResult {
    let alg = group.algebra()?;
    let v = alg.bracket_symbols(parse_lattice(a)?, parse_lattice(b)?)?;
    match out {
        Some(_) => emit(&json::to_pretty(&json::tau_to_value(&v)), out),
        None => emit(&format!("{v}\n"), out),
    }
}

fn window(cutoff: i64) -> Result<Vec<Lattice>, Failure> {
    if cutoff < 1 {
        return Err(input_err("cutoff must be at least 1"));
    }
    Ok((-cutoff..=cutoff).flat_map(|p| (-cutoff..=cutoff).map(move |q| [p, q])).collect())
}

fn float_point(g: &GroupSpec, rng: &mut impl Rng) -> TorusPoint<Complex64> {
    random_generic_point(g, rng).map(Scalar::to_complex)
}

fn verify_bracket(group: &PlaneGroupArgs, t: &TrialArgs, cutoff: i64) -> CmdResult {
    let alg = group.algebra()?;
    let g = *alg.group();
    let vectors = window(cutoff)?;
    let images = vectors.iter().map(|a| tau_image(&g, a)).collect::<Result<Vec<_>, _>>()?;
    let mut rng = seeded(t.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..t.trials {
        let p = float_point(&g, &mut rng);
        for (a, fa) in vectors.iter().zip(&images) {
            for (b, fb) in vectors.iter().zip(&images) {
                let sym = tau_eval(&alg.bracket_symbols(*a, *b)?, &p)?;
                let num = numeric_bracket(fa, fb, &p, alg.c())?;
                worst = worst.max((sym - num).norm() / (1.0 + num.norm()));
            }
        }
    }
    println!("group: {g}");
    println!("points: {}, pairs per point: {}", t.trials, vectors.len().pow(2));
    println!("max relative error: {worst:e}");
    if worst < t.tol {
        println!("PASS (tol {:e})", t.tol);
        Ok(())
    } else {
        Err(Failure::Verification(format!("max relative error {worst:e} exceeds {:e}", t.tol)))
    }
}

fn verify_jacobi(group: &PlaneGroupArgs, t: &TrialArgs, cutoff: i64) -> CmdResult {
    window(cutoff)?;
    let alg = group.algebra()?;
    let g = *alg.group();
    let mut rng = seeded(t.seed);
    let points: Vec<TorusPoint<Complex64>> = (0..50).map(|_| float_point(&g, &mut rng)).collect();
    let lattice = |rng: &mut dyn rand::RngCore| [rng.random_range(-cutoff..=cutoff), rng.random_range(-cutoff..=cutoff)];
    let (mut identical, mut numeric, mut worst) = (0, 0, 0.0f64);
    for _ in 0..t.trials {
        let (a, b, e) = (lattice(&mut rng), lattice(&mut rng), lattice(&mut rng));
        match alg.jacobi_outcome(a, b, e, &points, t.tol)? {
            JacobiOutcome::IdenticallyZero => identical += 1,
            JacobiOutcome::NumericallyZero { max_abs } => {
                numeric += 1;
                worst = worst.max(max_abs);
            }
            JacobiOutcome::Nonzero { max_abs } => {
                return Err(Failure::Verification(format!(
                    "Jacobi defect {max_abs:e} for {a:?}, {b:?}, {e:?} on {g}"
                )))
            }
        }
    }
    println!("group: {g}");
    println!("triples: {}, identically zero: {identical}, numerically zero: {numeric}", t.trials);
    if numeric > 0 {
        println!("max defect at sample points: {worst:e}");
    }
    println!("PASS");
    Ok(())
}

fn read_generators(path: &PathBuf, g: &GroupSpec) -> Result<Vec<Matrix<GaussScalar>>, Failure> {
    let doc: serde_json::Value = serde_json::from_str(&read(path)?).map_err(|e| input_err(e.to_string()))?;
    let gens = doc["generators"].as_array().ok_or_else(|| input_err("expected {\"generators\": [...]}"))?;
    let m = g.matrix_size();
    let mut out = Vec::new();
    for gen in gens {
        let rows = gen.as_array().ok_or_else(|| input_err("a generator must be a list of rows"))?;
        let mut parsed = Vec::new();
        for row in rows {
            let entries = row.as_array().ok_or_else(|| input_err("a matrix row must be a list"))?;
            let row = entries
                .iter()
                .map(|e| match e {
                    serde_json::Value::String(s) => s.parse::<GaussScalar>().map_err(Failure::from),
                    serde_json::Value::Number(n) => {
                        n.to_string().parse::<GaussScalar>().map_err(Failure::from)
                    }
                    _ => Err(input_err("matrix entries must be strings or integers")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            parsed.push(row);
        }
        let mat = Matrix::from_rows(parsed)?;
        if mat.rows() != m || mat.cols() != m {
            return Err(input_err(format!("{g} needs {m}x{m} generators")));
        }
        out.push(mat);
    }
    if out.is_empty() {
        return Err(input_err("no generators given"));
    }
    Ok(out)
}

fn cohomology(group: &GroupArgs, seed: u64, mode: Mode, input: &Option<PathBuf>) -> CmdResult {
    let g = group.spec()?;
    let gens = match input {
        Some(path) => read_generators(path, &g)?,
        None => {
            let p = random_generic_point(&g, &mut seeded(seed));
            p.columns().iter().map(|x| torus_matrix(&g, x)).collect::<Result<Vec<_>, _>>()?
        }
    };
    let dims = match mode {
        Mode::Exact => cohomology_dims(&g, &gens)?,
        Mode::Float => cohomology_dims(&g, &gens.iter().map(Matrix::to_complex).collect::<Vec<_>>())?,
    };
    println!("dim Z1 = {}", dims.z1);
    println!("dim B1 = {}", dims.b1);
    println!("dim H1 = {}", dims.h1);
    if input.is_none() {
        let expected = CohomologyDims::expected_generic(&g, gens.len());
        if dims != expected {
            return Err(Failure::Verification(format!("generic point gave {dims:?}, expected {expected:?}")));
        }
    }
    Ok(())
}

fn killing(family: Option<FamilyArg>, rank: Option<usize>) -> CmdResult {
    if let (Some(f), Some(n)) = (family, rank) {
        println!("{}", killing_ratio(&GroupSpec::new(f.into(), n, 1)?)?);
        return Ok(());
    }
    let mut cases = Vec::new();
    for n in 2..=4 {
        cases.push(GroupSpec::new(Family::SL, n, 1)?);
    }
    for m in 3..=7usize {
        let f = if m % 2 == 1 { Family::SOodd } else { Family::SOeven };
        cases.push(GroupSpec::new(f, m / 2, 1)?);
    }
    for n in 1..=3 {
        cases.push(GroupSpec::new(Family::Sp, n, 1)?);
    }
    for g in cases {
        let name = g.to_string();
        let name = name.split(" over").next().unwrap_or(&name).to_string();
        println!("{name}\t{}", killing_ratio(&g)?);
    }
    Ok(())
}

fn structure_constants(group: &PlaneGroupArgs, cutoff: i64, out: &Option<PathBuf>) -> CmdResult {
    let table = group.algebra()?.structure_constants(cutoff)?;
    emit(&json::to_pretty(&json::table_to_value(&table)), out)
}

fn orbit(group: &GroupArgs, exps: &str, out: &Option<PathBuf>) -> CmdResult {
    let g = group.spec()?;
    let m = parse_exponents(exps, &g)?;
    emit(&json::to_pretty(&json::laurent_to_value(&orbit_sum(&m, &g)?)), out)
}

fn level(input: &Option<PathBuf>, group: Option<GroupArgs>, exps: &Option<String>) -> CmdResult {
    let f = match (input, group, exps) {
        (Some(path), _, _) => json::laurent_from_str(&read(path)?)?,
        (None, Some(group), Some(exps)) => {
            let g = group.spec()?;
            charvar::LaurentPoly::monomial(g, parse_exponents(exps, &g)?, GaussScalar::one())?
        }
        _ => return Err(input_err("give --in FILE, or --family/--rank/--factors with --exps")),
    };
    println!("{}", level_of_poly(&f)?);
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Decompose { input, out } => decompose(input, out),
        Command::Expand { group, input, out } => expand(group, input, out),
        Command::Bracket { group, a, b, out } => bracket(group, a, b, out),
        Command::VerifyBracket { group, trials, cutoff } => verify_bracket(group, trials, *cutoff),
        Command::VerifyJacobi { group, trials, cutoff } => verify_jacobi(group, trials, *cutoff),
        Command::Cohomology { group, seed, mode, input } => cohomology(group, *seed, *mode, input),
        Command::Killing { family, rank } => killing(*family, *rank),
        Command::StructureConstants { group, cutoff, out } => structure_constants(group, *cutoff, out),
        Command::OrbitSum { group, exps, out } => orbit(group, exps, out),
        Command::Level { input, family, rank, factors, exps } => {
            let group = family.zip(*rank).map(|(family, rank)| GroupArgs { family, rank, factors: *factors });
            level(input, group, exps)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
