//! Congruence systems induced by rotation invariance, and the maximal
//! colour count they allow.
//!
//! The coordinate sum of `R^t·m` is the linear functional `c_t·m` with
//! `c_t = col_sums(R^t)`. Every colour class of the modulus-`n` colouring is
//! invariant under `C_k` iff `(c_t − c₀)·m ≡ 0 (mod n)` for all integer `m`
//! and all `t`, which holds iff `n` divides every coefficient of every
//! difference `c_t − c₀`. The largest such `n` is the gcd of those
//! coefficients.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rotrep::{factorize, is_prime, next_prime, rep, totient, RotationRep};
use crate::IntVector;

/// Per-power constraint functionals `c_t` and their differences from `c₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularSystem {
    pub k: u64,
    pub dim: usize,
    /// `c_t` for `t = 0..k`.
    pub functionals: Vec<IntVector>,
    /// `c_t − c₀` for `t = 1..k`.
    pub differences: Vec<IntVector>,
}

/// Bound on the number of colours; `Unbounded` when every modulus works.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ColourBound {
    Finite(BigInt),
    Unbounded,
}

impl ColourBound {
    /// Whether modulus `n` is admissible, i.e. `n | N`.
    pub fn admits(&self, n: u64) -> bool {
        match self {
            ColourBound::Unbounded => true,
            ColourBound::Finite(bound) => n != 0 && (bound % BigInt::from(n)).is_zero(),
        }
    }

    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            ColourBound::Finite(b) => Some(b),
            ColourBound::Unbounded => None,
        }
    }
}

impl From<u64> for ColourBound {
    fn from(n: u64) -> Self {
        ColourBound::Finite(BigInt::from(n))
    }
}

impl fmt::Display for ColourBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColourBound::Finite(n) => write!(f, "{n}"),
            ColourBound::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionResult {
    pub k: u64,
    pub dim: usize,
    pub n_max: ColourBound,
    /// Nonzero difference coefficients; their gcd is `n_max`.
    pub gcd_witness: Vec<BigInt>,
    /// Ascending divisors of `n_max`; empty when unbounded.
    pub valid_moduli: Vec<BigInt>,
}

pub fn derive_system(rep: &RotationRep) -> ModularSystem {
    let dim = rep.dim();
    let mut functionals = Vec::with_capacity(rep.k() as usize);
    // c_t = 1ᵀ R^t, built by one row-vector product per step.
    let mut current = IntVector::ones(dim);
    for t in 0..rep.k() {
        if t > 0 {
            current = current
                .times_matrix(rep.matrix())
                .expect("functional and matrix share dim");
        }
        functionals.push(current.clone());
    }
    let base = &functionals[0];
    let differences = functionals[1..]
        .iter()
        .map(|c| c.checked_sub(base).expect("functionals share dim"))
        .collect();
    ModularSystem {
        k: rep.k(),
        dim,
        functionals,
        differences,
    }
}

pub fn restriction_number(rep: &RotationRep) -> RestrictionResult {
    let system = derive_system(rep);
    let gcd_witness: Vec<BigInt> = system
        .differences
        .iter()
        .flat_map(|d| d.entries().iter())
        .filter(|x| !x.is_zero())
        .cloned()
        .collect();
    let gcd = gcd_witness.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let (n_max, valid_moduli) = if gcd.is_zero() {
        (ColourBound::Unbounded, Vec::new())
    } else {
        let divisors = divisors(&gcd);
        (ColourBound::Finite(gcd), divisors)
    };
    RestrictionResult {
        k: rep.k(),
        dim: rep.dim(),
        n_max,
        gcd_witness,
        valid_moduli,
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let co = n / &d;
            if co != d {
                large.push(co);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `p` for `k = p^r`, `1` for two or more distinct primes, unbounded for `k = 1`.
pub fn closed_form_n(k: u64) -> ColourBound {
    let f = factorize(k);
    match f.distinct_primes() {
        0 => ColourBound::Unbounded,
        1 => ColourBound::from(f.factors()[0].0),
        _ => ColourBound::from(1),
    }
}

/// Smallest `(k, d)` such that an `n`-colour lattice of dimension `d` with
/// modular sublattices admits `C_k` with `k ≥ n`.
pub fn min_dimension(n: u64) -> Result<(u64, u64)> {
    if n < 2 {
        return Err(Error::IndexOutOfRange(format!("colour count {n}; need n >= 2")));
    }
    let k = if is_prime(n) { n } else { next_prime(n) };
    Ok((k, k - 1))
}

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];

fn variable(index: usize) -> String {
    let digits: String = index
        .to_string()
        .chars()
        .map(|c| SUBSCRIPTS[c.to_digit(10).unwrap() as usize])
        .collect();
    format!("m{digits}")
}

/// `2m₁ − m₃ + m₄`; `0` for the zero vector.
fn linear_form(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let magnitude = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('−');
            }
        } else {
            out.push_str(if c.is_negative() { " − " } else { " + " });
        }
        if !magnitude.is_one() {
            write!(out, "{magnitude}").unwrap();
        }
        out.push_str(&variable(i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Split `v = content · primitive` with the first nonzero of `primitive` positive.
fn normalize(v: &IntVector) -> (BigInt, Vec<BigInt>) {
    let content = v.entries().iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let leading_negative = v
        .entries()
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    let scale = if leading_negative { -content.clone() } else { content.clone() };
    let primitive = v.entries().iter().map(|x| x / &scale).collect();
    (content, primitive)
}

fn join_powers(ts: &[u64]) -> String {
    ts.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Human-readable listing of the congruence system.
///
/// The first line is the defining congruence `Σ mⱼ ≡ q (mod n)`; then one
/// line per power `t ≥ 1` with `(c_t − c₀)·m ≡ 0 (mod n)`. With `reduce`,
/// vanishing lines are dropped, lines equal up to sign are merged (tagged
/// with every `t` that produced them), and the content is factored out, as
/// in `3(m₅ + m₆) ≡ 0 (mod n)`.
pub fn render_equations(rep: &RotationRep, reduce: bool) -> String {
    let system = derive_system(rep);
    let mut out = String::new();
    let ones = vec![BigInt::one(); system.dim];
    writeln!(out, "{} ≡ q (mod n)", linear_form(&ones)).unwrap();

    if !reduce {
        for (i, d) in system.differences.iter().enumerate() {
            writeln!(out, "[t={}] {} ≡ 0 (mod n)", i + 1, linear_form(d.entries())).unwrap();
        }
        return out;
    }

    let mut order: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    let mut powers: HashMap<(BigInt, Vec<BigInt>), Vec<u64>> = HashMap::new();
    for (i, d) in system.differences.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let key = normalize(d);
        let ts = powers.entry(key.clone()).or_default();
        if ts.is_empty() {
            order.push(key);
        }
        ts.push(i as u64 + 1);
    }
    for key in &order {
        let (content, primitive) = key;
        let terms = primitive.iter().filter(|x| !x.is_zero()).count();
        let form = linear_form(primitive);
        let lhs = match (content.is_one(), terms) {
            (true, _) => form,
            (false, 1) => format!("{content}{form}"),
            (false, _) => format!("{content}({form})"),
        };
        writeln!(out, "[t={}] {lhs} ≡ 0 (mod n)", join_powers(&powers[key])).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub k: u64,
    pub totient: u64,
    pub n_max: ColourBound,
}

/// One row per `k` in `1..=k_max`, each checked against [`closed_form_n`].
pub fn restriction_table(k_max: u64) -> Result<Vec<TableRow>> {
    // Largest dimensions first so the big rows do not trail the pool.
    let mut ks: Vec<u64> = (1..=k_max).collect();
    ks.sort_by_key(|&k| std::cmp::Reverse(totient(k)));
    let mut rows = ks
        .into_par_iter()
        .map(|k| {
            let result = restriction_number(&rep(k)?);
            let closed = closed_form_n(k);
            if result.n_max != closed {
                return Err(Error::TheoremRegression {
                    k,
                    symbolic: result.n_max.to_string(),
                    closed_form: closed.to_string(),
                });
            }
            Ok(TableRow {
                k,
                totient: totient(k),
                n_max: result.n_max,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.k);
    Ok(rows)
}
