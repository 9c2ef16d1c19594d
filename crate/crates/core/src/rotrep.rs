//! Integer representations of the k-fold rotation `C_k`.
//!
//! Two families are built here:
//!
//! * the plane form, a 2×2 unimodular matrix for `k ∈ {1, 2, 3, 4, 6}` in the
//!   basis where `R e₁ = e₂`, `R e₂ = −e₁ + a_k e₂`;
//! * the minimal form of dimension `Ψ(k)`: the companion matrix of the
//!   cyclotomic polynomial for prime powers, and the Kronecker product of
//!   prime-power companions (ascending primes, first factor outermost) for
//!   composite orders.
//!
//! The oblique-basis angles of the plane derivation only fix the integer
//! matrices; they are not stored.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{IntMatrix, IntVector};

/// Ascending prime factorization `k = ∏ pᵢ^rᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn product(&self) -> u64 {
        self.factors.iter().map(|&(p, r)| p.pow(r)).product()
    }

    /// `Some((p, r))` when `k = p^r` with `r ≥ 1`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, r)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if *r == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{r}")?;
            }
        }
        Ok(())
    }
}

/// Trial-division factorization; `factorize(1)` is empty.
pub fn factorize(k: u64) -> Factorization {
    let mut factors = Vec::new();
    let mut rest = k;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut r = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                r += 1;
            }
            factors.push((p, r));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Factorization { factors }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).as_prime_power() == Some((n, 1))
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    (n + 1..).find(|&c| is_prime(c)).expect("primes are unbounded")
}

/// Euler's totient `Ψ(k)`, with `Ψ(1) = 1`.
pub fn totient(k: u64) -> u64 {
    factorize(k)
        .factors
        .iter()
        .map(|&(p, r)| p.pow(r - 1) * (p - 1))
        .product()
}

/// Classical restriction: a `d`-dimensional lattice admits `C_k` iff `d ≥ Ψ(k)`.
pub fn hermann_allowed(d: u64, k: u64) -> bool {
    d >= totient(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RepKind {
    TwoD,
    CompanionPrimePower,
    /// Kronecker product of prime-power companions. The empty product
    /// (`k = 1`) is the 1×1 identity.
    KroneckerComposite,
}

impl RepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RepKind::TwoD => "two-d",
            RepKind::CompanionPrimePower => "companion-prime-power",
            RepKind::KroneckerComposite => "kronecker-composite",
        }
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A rotation order together with an integer matrix of exactly that order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationRep {
    k: u64,
    matrix: IntMatrix,
    kind: RepKind,
    factorization: Factorization,
}

impl RotationRep {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    /// Kronecker product of prime-power companions taken in the given order,
    /// first factor outermost. `rep` uses ascending primes; other orders give
    /// equivalent representations.
    pub fn kronecker(factors: &[(u64, u32)]) -> Result<RotationRep> {
        let mut matrix = IntMatrix::identity(1);
        for &(p, r) in factors {
            let c = companion_prime_power(p, r)?;
            matrix = matrix.kron(c.matrix());
        }
        let k = factors.iter().map(|&(p, r)| p.pow(r)).product();
        let factorization = factorize(k);
        let kind = if factors.len() == 1 {
            RepKind::CompanionPrimePower
        } else {
            RepKind::KroneckerComposite
        };
        Ok(RotationRep {
            k,
            matrix,
            kind,
            factorization,
        })
    }

    /// Images `R^t e_j` of every basis vector, i.e. the columns of `R^t`.
    pub fn basis_images(&self, t: u64) -> Result<Vec<IntVector>> {
        if t >= self.k {
            return Err(Error::PowerOutOfRange { t, k: self.k });
        }
        let power = self.matrix.pow(t);
        Ok((0..power.dim()).map(|j| power.column(j)).collect())
    }
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

/// The 2×2 matrices of the plane lattice.
pub fn rep_2d(k: u64) -> Result<RotationRep> {
    let rows: [[i64; 2]; 2] = match k {
        1 => [[1, 0], [0, 1]],
        2 => [[-1, 0], [0, -1]],
        3 => [[0, -1], [1, -1]],
        4 => [[0, -1], [1, 0]],
        6 => [[0, -1], [1, 1]],
        0 => return Err(Error::ZeroOrder),
        _ => return Err(Error::CrystallographicRestriction { k }),
    };
    let matrix = IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())?;
    Ok(RotationRep {
        k,
        matrix,
        kind: RepKind::TwoD,
        factorization: factorize(k),
    })
}

/// Companion matrix of the cyclotomic polynomial `Φ_{p^r}(x) = Σ_{s<p} x^{s·p^{r−1}}`.
///
/// Ones on the subdiagonal; `−1` in the last column at rows `1 + s·p^{r−1}`
/// (one-based) for `s = 0..p−2`. For `r = 1` the whole last column is `−1`.
pub fn companion_prime_power(p: u64, r: u32) -> Result<RotationRep> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::IndexOutOfRange("prime-power exponent must be >= 1".into()));
    }
    let stride = p.pow(r - 1) as usize;
    let dim = stride * (p as usize - 1);
    let mut rows = vec![vec![BigInt::zero(); dim]; dim];
    for i in 1..dim {
        rows[i][i - 1] = BigInt::one();
    }
    for s in 0..(p as usize - 1) {
        rows[s * stride][dim - 1] = int(-1);
    }
    Ok(RotationRep {
        k: p.pow(r),
        matrix: IntMatrix::from_rows(rows)?,
        kind: RepKind::CompanionPrimePower,
        factorization: factorize(p.pow(r)),
    })
}

/// Closed form for the entries of `(R_p)^t`, `1 ≤ t ≤ p−1`, one-based `i, j`.
pub fn prime_power_entry_closed_form(p: u64, t: u64, i: u64, j: u64) -> Result<i8> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !(1..p).contains(&t) {
        return Err(Error::IndexOutOfRange(format!("power t={t} for p={p}")));
    }
    if !(1..p).contains(&i) || !(1..p).contains(&j) {
        return Err(Error::IndexOutOfRange(format!("entry ({i},{j}) for p={p}")));
    }
    let value = if j == p - t {
        -1
    } else if (i < t && j == p + i - t) || (i > t && j + t == i) {
        1
    } else {
        0
    };
    Ok(value)
}

/// Minimal-dimension representation of `C_k`; `dim = Ψ(k)`.
pub fn rep(k: u64) -> Result<RotationRep> {
    if k == 0 {
        return Err(Error::ZeroOrder);
    }
    let factorization = factorize(k);
    if let Some((p, r)) = factorization.as_prime_power() {
        return companion_prime_power(p, r);
    }
    RotationRep::kronecker(factorization.factors())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    fn v(xs: &[i64]) -> IntVector {
        IntVector::new(xs.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(9), 6);
        assert_eq!(totient(15), 8);
        assert_eq!(totient(2), 1);
        assert_eq!(totient(210), 48);
    }

    #[test]
    fn totient_matches_coprime_count() {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 { a } else { gcd(b, a % b) }
        }
        for k in 1..=300u64 {
            let count = (1..=k).filter(|&j| gcd(j, k) == 1).count() as u64;
            assert_eq!(totient(k), count, "k={k}");
        }
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).factors().is_empty());
        assert_eq!(factorize(15).factors(), &[(3, 1), (5, 1)]);
        assert_eq!(factorize(12).factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(97).factors(), &[(97, 1)]);
        assert_eq!(factorize(12).to_string(), "2^2·3");
        for k in 1..500 {
            assert_eq!(factorize(k).product(), k);
        }
    }

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(next_prime(4), 5);
        assert_eq!(next_prime(7), 11);
        assert_eq!(next_prime(1), 2);
    }

    #[test]
    fn rep_2d_examples() {
        assert_eq!(*rep_2d(4).unwrap().matrix(), m(&[&[0, -1], &[1, 0]]));
        assert_eq!(*rep_2d(2).unwrap().matrix(), IntMatrix::identity(2).neg());
        assert_eq!(*rep_2d(1).unwrap().matrix(), IntMatrix::identity(2));
        assert_eq!(*rep_2d(3).unwrap().matrix(), m(&[&[0, -1], &[1, -1]]));
        assert_eq!(*rep_2d(6).unwrap().matrix(), m(&[&[0, -1], &[1, 1]]));
        assert_eq!(rep_2d(5).unwrap_err(), Error::CrystallographicRestriction { k: 5 });
        assert_eq!(rep_2d(0).unwrap_err(), Error::ZeroOrder);
        for k in [1, 2, 3, 4, 6] {
            let r = rep_2d(k).unwrap();
            assert_eq!(r.kind(), RepKind::TwoD);
            assert_eq!(r.matrix().order(12), Some(k));
            assert_eq!(r.matrix().det(), BigInt::one());
        }
    }

    #[test]
    fn companion_examples() {
        let r5 = companion_prime_power(5, 1).unwrap();
        assert_eq!(
            *r5.matrix(),
            m(&[&[0, 0, 0, -1], &[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1]])
        );
        let r9 = companion_prime_power(3, 2).unwrap();
        assert_eq!(
            *r9.matrix(),
            m(&[
                &[0, 0, 0, 0, 0, -1],
                &[1, 0, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 1, 0, 0, -1],
                &[0, 0, 0, 1, 0, 0],
                &[0, 0, 0, 0, 1, 0],
            ])
        );
        assert_eq!(*companion_prime_power(2, 1).unwrap().matrix(), m(&[&[-1]]));
        assert_eq!(companion_prime_power(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(companion_prime_power(3, 0).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(prime_power_entry_closed_form(5, 2, 3, 1).unwrap(), 1);
        assert_eq!(prime_power_entry_closed_form(5, 2, 2, 3).unwrap(), -1);
        assert_eq!(prime_power_entry_closed_form(5, 4, 1, 2).unwrap(), 1);
        assert!(prime_power_entry_closed_form(5, 5, 1, 1).is_err());
        assert!(prime_power_entry_closed_form(5, 1, 5, 1).is_err());
        assert!(prime_power_entry_closed_form(6, 1, 1, 1).is_err());
    }

    #[test]
    fn rep_examples() {
        let r9 = rep(9).unwrap();
        assert_eq!(r9, companion_prime_power(3, 2).unwrap());
        assert_eq!(r9.dim(), 6);

        let r15 = rep(15).unwrap();
        assert_eq!(r15.kind(), RepKind::KroneckerComposite);
        assert_eq!(r15.dim(), 8);
        assert_eq!(r15.matrix().order(20), Some(15));

        let r6 = rep(6).unwrap();
        assert_eq!(*r6.matrix(), m(&[&[0, 1], &[-1, 1]]));
        assert_eq!(*r6.matrix(), rep_2d(3).unwrap().matrix().neg());

        let r1 = rep(1).unwrap();
        assert_eq!(*r1.matrix(), IntMatrix::identity(1));
        assert_eq!(r1.kind(), RepKind::KroneckerComposite);

        assert_eq!(*rep(2).unwrap().matrix(), m(&[&[-1]]));
        assert_eq!(rep(0).unwrap_err(), Error::ZeroOrder);
    }

    #[test]
    fn basis_images_examples() {
        let r5 = rep(5).unwrap();
        let images = r5.basis_images(1).unwrap();
        assert_eq!(images[3], v(&[-1, -1, -1, -1]));
        assert_eq!(images[0], IntVector::unit(4, 1));

        let r9 = rep(9).unwrap();
        assert_eq!(r9.basis_images(1).unwrap()[5], v(&[-1, 0, 0, -1, 0, 0]));

        for k in [5, 9, 12] {
            let r = rep(k).unwrap();
            for (j, image) in r.basis_images(0).unwrap().into_iter().enumerate() {
                assert_eq!(image, IntVector::unit(r.dim(), j));
            }
        }
        assert_eq!(r5.basis_images(5).unwrap_err(), Error::PowerOutOfRange { t: 5, k: 5 });
    }

    #[test]
    fn hermann_examples() {
        assert!(hermann_allowed(2, 6));
        assert!(!hermann_allowed(2, 5));
        assert!(!hermann_allowed(4, 15));
        assert!(hermann_allowed(8, 15));
    }
}
