//! JSON shapes emitted by the CLI. Matrix entries are decimal strings so that
//! consumers with 53-bit numbers lose nothing; small counts stay numbers.

use chroma::oracle::{AgreementRow, Counterexample, RowStatus, SymbolicModuli};
use chroma::{ColourBound, IntMatrix, RestrictionResult, RotationRep, TableRow};
use num_bigint::BigInt;
use serde_json::{json, Value};

pub fn matrix(m: &IntMatrix) -> Value {
    let rows: Vec<Vec<String>> = m
        .rows()
        .map(|r| r.iter().map(BigInt::to_string).collect())
        .collect();
    json!({ "dim": m.dim(), "rows": rows })
}

pub fn rotation(r: &RotationRep) -> Value {
    let factors: Vec<Value> = r
        .factorization()
        .factors()
        .iter()
        .map(|&(p, e)| json!({ "p": p, "r": e }))
        .collect();
    json!({
        "k": r.k(),
        "dim": r.dim(),
        "kind": r.kind().as_str(),
        "factorization": factors,
        "matrix": matrix(r.matrix()),
    })
}

/// A count that is a JSON number when it fits in 53 bits, else a string.
fn count(n: &BigInt) -> Value {
    const SAFE: i64 = 1 << 53;
    match i64::try_from(n) {
        Ok(x) if x.abs() < SAFE => json!(x),
        _ => json!(n.to_string()),
    }
}

pub fn bound(b: &ColourBound) -> Value {
    match b {
        ColourBound::Finite(n) => count(n),
        ColourBound::Unbounded => json!("unbounded"),
    }
}

pub fn restriction(r: &RestrictionResult, totient: u64, closed_form: &ColourBound) -> Value {
    json!({
        "k": r.k,
        "dim": r.dim,
        "totient": totient,
        "n_max": bound(&r.n_max),
        "closed_form": bound(closed_form),
        "valid_moduli": r.valid_moduli.iter().map(count).collect::<Vec<_>>(),
    })
}

pub fn table(rows: &[TableRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| json!({ "k": r.k, "totient": r.totient, "n_max": bound(&r.n_max) }))
            .collect(),
    )
}

fn counterexample(n: u64, c: &Counterexample) -> Value {
    json!({
        "n": n,
        "point": c.point,
        "t": c.t,
        "colour": c.colour,
        "image_colour": c.image_colour,
    })
}

pub fn agreement(row: &AgreementRow) -> Value {
    let symbolic = match &row.symbolic {
        SymbolicModuli::All => json!("all"),
        SymbolicModuli::Divisors(ds) => json!(ds),
    };
    let status = match row.status {
        RowStatus::Agree => "agree",
        RowStatus::Disagree => "disagree",
        RowStatus::Skipped { .. } => "skipped",
    };
    let mut v = json!({
        "k": row.k,
        "dim": row.dim,
        "symbolic": symbolic,
        "bruteforce": row.bruteforce,
        "status": status,
        "counterexamples": row
            .counterexamples
            .iter()
            .map(|(n, c)| counterexample(*n, c))
            .collect::<Vec<_>>(),
    });
    if let RowStatus::Skipped { points } = row.status {
        v["points"] = json!(points.to_string());
    }
    v
}
