//! JSON encodings. Coefficients are exact strings such as `"3/2+1/2i"`;
//! exponents are written as their true values (`0.5` for a half weight).

use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::chevalley::{GeneratorPoly, GeneratorSymbol};
use crate::error::{Error, Result};
use crate::exponent::ExponentMatrix;
use crate::group::GroupSpec;
use crate::laurent::LaurentPoly;
use crate::poisson::{Lattice, StructureTable, TauPoly};
use crate::scalar::{parse_rational, GaussScalar};

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Serialize, Deserialize)]
struct LaurentTerm {
    coeff: String,
    exps: Vec<Vec<Value>>,
}

#[derive(Serialize, Deserialize)]
struct LaurentDoc {
    group: GroupSpec,
    terms: Vec<LaurentTerm>,
}

fn exponent_value(doubled: i64) -> Value {
    if doubled % 2 == 0 {
        Value::Number((doubled / 2).into())
    } else {
        Value::Number(Number::from_f64(doubled as f64 / 2.0).expect("finite"))
    }
}

fn doubled_from_value(v: &Value) -> Result<i64> {
    if let Some(i) = v.as_i64() {
        return Ok(2 * i);
    }
    let f = v.as_f64().ok_or_else(|| Error::Parse(format!("exponent {v} is not a number")))?;
    let d = (2.0 * f).round();
    if (2.0 * f - d).abs() > 0.0 || d.abs() > 1e15 {
        return Err(Error::Parse(format!("exponent {v} is not a multiple of 1/2")));
    }
    Ok(d as i64)
}

pub fn laurent_to_value(f: &LaurentPoly) -> Value {
    let terms = f
        .terms()
        .map(|(m, c)| LaurentTerm {
            coeff: c.to_string(),
            exps: (0..m.rows()).map(|i| m.row_doubled(i).iter().map(|&d| exponent_value(d)).collect()).collect(),
        })
        .collect();
    serde_json::to_value(LaurentDoc { group: *f.group(), terms }).expect("serializable")
}

pub fn laurent_from_str(s: &str) -> Result<LaurentPoly> {
    let doc: LaurentDoc = serde_json::from_str(s).map_err(parse_err)?;
    let g = GroupSpec::new(doc.group.family, doc.group.rank, doc.group.factors)?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in doc.terms {
        let coeff: GaussScalar = t.coeff.parse()?;
        if t.exps.len() != g.rank || t.exps.iter().any(|r| r.len() != g.factors) {
            return Err(Error::Structural(format!("exponent matrix must be {}x{}", g.rank, g.factors)));
        }
        let doubled = t.exps.iter().flatten().map(doubled_from_value).collect::<Result<Vec<_>>>()?;
        terms.push((ExponentMatrix::from_doubled(g.rank, g.factors, doubled)?, coeff));
    }
    LaurentPoly::from_terms(g, terms)
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum SymbolDoc {
    Tau(Vec<i64>),
    Q(Vec<Vec<i64>>),
}

#[derive(Serialize, Deserialize)]
struct GeneratorTerm {
    coeff: String,
    factors: Vec<SymbolDoc>,
}

#[derive(Serialize, Deserialize)]
struct GeneratorDoc {
    terms: Vec<GeneratorTerm>,
}

pub fn generator_to_value(p: &GeneratorPoly) -> Value {
    let terms = p
        .terms()
        .map(|(key, c)| GeneratorTerm {
            coeff: c.to_string(),
            factors: key
                .iter()
                .map(|s| match s {
                    GeneratorSymbol::Tau(a) => SymbolDoc::Tau(a.clone()),
                    GeneratorSymbol::Q(a) => SymbolDoc::Q(a.clone()),
                })
                .collect(),
        })
        .collect();
    serde_json::to_value(GeneratorDoc { terms }).expect("serializable")
}

pub fn generator_from_str(s: &str) -> Result<GeneratorPoly> {
    let doc: GeneratorDoc = serde_json::from_str(s).map_err(parse_err)?;
    let mut out = GeneratorPoly::zero();
    for t in doc.terms {
        let coeff: GaussScalar = t.coeff.parse()?;
        let symbols = t
            .factors
            .into_iter()
            .map(|f| match f {
                SymbolDoc::Tau(a) => GeneratorSymbol::Tau(a),
                SymbolDoc::Q(a) => GeneratorSymbol::Q(a),
            })
            .collect();
        out = out.add(&GeneratorPoly::from_symbols(symbols, coeff));
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct TauTerm {
    coeff: String,
    symbols: Vec<Lattice>,
}

#[derive(Serialize, Deserialize)]
struct TauDoc {
    group: GroupSpec,
    c: String,
    terms: Vec<TauTerm>,
}

pub fn tau_to_value(f: &TauPoly) -> Value {
    let terms = f.terms().map(|(k, c)| TauTerm { coeff: c.to_string(), symbols: k.to_vec() }).collect();
    serde_json::to_value(TauDoc { group: *f.group(), c: f.c().to_string(), terms }).expect("serializable")
}

pub fn tau_from_str(s: &str) -> Result<TauPoly> {
    let doc: TauDoc = serde_json::from_str(s).map_err(parse_err)?;
    let g = GroupSpec::new(doc.group.family, doc.group.rank, doc.group.factors)?;
    let mut out = TauPoly::zero(g, parse_rational(&doc.c)?)?;
    for t in doc.terms {
        out.add_term(&t.symbols, t.coeff.parse()?);
    }
    Ok(out)
}

#[derive(Serialize)]
struct EntryDoc {
    a: Lattice,
    b: Lattice,
    bracket: Value,
}

#[derive(Serialize)]
struct TableDoc {
    group: GroupSpec,
    c: String,
    cutoff: i64,
    entries: Vec<EntryDoc>,
}

pub fn table_to_value(t: &StructureTable) -> Value {
    let entries = t.entries.iter().map(|(a, b, v)| EntryDoc { a: *a, b: *b, bracket: tau_to_value(v) }).collect();
    serde_json::to_value(TableDoc { group: t.group, c: t.c.to_string(), cutoff: t.cutoff, entries }).expect("serializable")
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
