//! Dense square matrices and vectors over exact integers.
//!
//! Everything here is generic over [`Scalar`], an integer type with exact
//! arithmetic. The crate works in [`BigInt`](num_bigint::BigInt) (see the
//! [`IntMatrix`](crate::IntMatrix) alias); the machine-integer impls exist for
//! the brute-force oracle, and they panic on overflow instead of wrapping.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Exact integer scalar.
pub trait Scalar: Integer + Signed + Clone + fmt::Debug + fmt::Display + Send + Sync {
    /// `acc += a * b`
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self);

    fn add_acc(acc: &mut Self, a: &Self);
}

impl Scalar for BigInt {
    #[inline]
    fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
        *acc += a * b;
    }

    #[inline]
    fn add_acc(acc: &mut Self, a: &Self) {
        *acc += a;
    }
}

macro_rules! machine_scalar {
    ($($t:ty),*) => {$(
        impl Scalar for $t {
            #[inline]
            fn mul_acc(acc: &mut Self, a: &Self, b: &Self) {
                *acc = a
                    .checked_mul(*b)
                    .and_then(|p| acc.checked_add(p))
                    .expect("integer overflow in exact matrix arithmetic");
            }

            #[inline]
            fn add_acc(acc: &mut Self, a: &Self) {
                *acc = acc
                    .checked_add(*a)
                    .expect("integer overflow in exact matrix arithmetic");
            }
        }
    )*};
}

machine_scalar!(i32, i64, i128);

/// Column vector of exact integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector<T> {
    entries: Vec<T>,
}

impl<T: Scalar> Vector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Malformed("vector must have dim >= 1".into()));
        }
        Ok(Vector { entries })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "vector must have dim >= 1");
        Vector {
            entries: vec![T::zero(); dim],
        }
    }

    pub fn ones(dim: usize) -> Self {
        assert!(dim >= 1, "vector must have dim >= 1");
        Vector {
            entries: vec![T::one(); dim],
        }
    }

    /// The basis vector `e_i` (zero-based `i`).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[i] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn sum(&self) -> T {
        let mut acc = T::zero();
        for x in &self.entries {
            T::add_acc(&mut acc, x);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim())?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.clone() - b.clone())
            .collect();
        Ok(Vector { entries })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim())?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        Ok(Vector { entries })
    }

    /// Row-vector product `vᵀ · m`.
    pub fn times_matrix(&self, m: &Matrix<T>) -> Result<Self> {
        self.check_dim(m.dim())?;
        let n = m.dim();
        let mut out = vec![T::zero(); n];
        for (i, vi) in self.entries.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, mij) in m.row(i).iter().enumerate() {
                if !mij.is_zero() {
                    T::mul_acc(&mut out[j], vi, mij);
                }
            }
        }
        Ok(Vector { entries: out })
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.dim() != other {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other,
            });
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Display for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl<T: fmt::Display> fmt::Debug for Vector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Dense square matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(dim: usize, entries: Vec<T>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("matrix must have dim >= 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::Malformed(format!(
                "{} entries for a {dim}x{dim} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Malformed("matrix rows must form a square".into()));
        }
        Self::new(dim, rows.into_iter().flatten().collect())
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "matrix must have dim >= 1");
        Matrix {
            dim,
            entries: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = T::one();
        }
        m
    }

    /// Block-diagonal matrix with the given blocks in order.
    pub fn block_diag(blocks: &[Matrix<T>]) -> Result<Self> {
        let dim: usize = blocks.iter().map(Matrix::dim).sum();
        if dim == 0 {
            return Err(Error::Malformed("block_diag of no blocks".into()));
        }
        let mut out = Self::zeros(dim);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    out.entries[(offset + i) * dim + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.dim;
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.dim)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        Vector {
            entries: (0..self.dim).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
    }

    pub fn neg(&self) -> Self {
        Matrix {
            dim: self.dim,
            entries: self.entries.iter().map(|x| -x.clone()).collect(),
        }
    }

    /// Entry-wise image under `f`; `None` if any entry fails to convert.
    pub fn try_map<U: Scalar>(&self, f: impl Fn(&T) -> Option<U>) -> Option<Matrix<U>> {
        let entries = self.entries.iter().map(f).collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            dim: self.dim,
            entries,
        })
    }

    /// Exact product `self · other`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let n = self.dim;
        // Rotation representations are sparse, so walk only nonzeros.
        let nonzero: Vec<Vec<(usize, &T)>> = other
            .rows()
            .map(|row| row.iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        let mut out = vec![T::zero(); n * n];
        for i in 0..n {
            let acc = &mut out[i * n..(i + 1) * n];
            for (l, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(j, b) in &nonzero[l] {
                    T::mul_acc(&mut acc[j], a, b);
                }
            }
        }
        Ok(Matrix { dim: n, entries: out })
    }

    /// `self^t` by binary exponentiation; `self^0 = I`.
    pub fn pow(&self, mut t: u64) -> Self {
        let mut result = Self::identity(self.dim);
        let mut base = self.clone();
        while t > 0 {
            if t & 1 == 1 {
                result = result.product(&base).expect("square powers share dim");
            }
            t >>= 1;
            if t > 0 {
                base = base.product(&base).expect("square powers share dim");
            }
        }
        result
    }

    /// `self^t` by repeated multiplication.
    pub fn pow_naive(&self, t: u64) -> Self {
        let mut result = Self::identity(self.dim);
        for _ in 0..t {
            result = result.product(self).expect("square powers share dim");
        }
        result
    }

    /// Successive powers `self^0, self^1, …, self^(count-1)`.
    pub fn powers(&self, count: u64) -> Powers<'_, T> {
        Powers {
            base: self,
            next: Some(Self::identity(self.dim)),
            remaining: count,
        }
    }

    /// Kronecker product; block `(i, j)` of the result is `self[i][j] · other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut out = vec![T::zero(); dim * dim];
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            T::mul_acc(&mut out[(i * m + k) * dim + j * m + l], a, b);
                        }
                    }
                }
            }
        }
        Matrix { dim, entries: out }
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> T {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n.saturating_sub(1) {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return T::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                negate = !negate;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                let lead = a[i * n + k].clone();
                for j in k + 1..n {
                    let num = a[i * n + j].clone() * pivot.clone() - lead.clone() * a[k * n + j].clone();
                    // Bareiss: the division is exact.
                    a[i * n + j] = num / prev.clone();
                }
                a[i * n + k] = T::zero();
            }
            prev = pivot;
        }
        let d = a[n * n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Entry `j` is the sum of column `j`.
    pub fn col_sums(&self) -> Vector<T> {
        let mut out = vec![T::zero(); self.dim];
        for row in self.rows() {
            for (acc, x) in out.iter_mut().zip(row) {
                T::add_acc(acc, x);
            }
        }
        Vector { entries: out }
    }

    /// Smallest `t` in `1..=bound` with `self^t = I`.
    pub fn order(&self, bound: u64) -> Option<u64> {
        let mut p = self.clone();
        for t in 1..=bound {
            if p.is_identity() {
                return Some(t);
            }
            if t < bound {
                p = p.product(self).expect("square powers share dim");
            }
        }
        None
    }

    /// Matrix-vector product `self · v`.
    pub fn apply(&self, v: &Vector<T>) -> Result<Vector<T>> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
            });
        }
        let entries = self
            .rows()
            .map(|row| {
                let mut acc = T::zero();
                for (a, b) in row.iter().zip(v.entries()) {
                    if !a.is_zero() {
                        T::mul_acc(&mut acc, a, b);
                    }
                }
                acc
            })
            .collect();
        Ok(Vector { entries })
    }
}

/// Iterator over successive matrix powers, starting at the identity.
pub struct Powers<'a, T> {
    base: &'a Matrix<T>,
    next: Option<Matrix<T>>,
    remaining: u64,
}

impl<T: Scalar> Iterator for Powers<'_, T> {
    type Item = Matrix<T>;

    fn next(&mut self) -> Option<Matrix<T>> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let current = self.next.take()?;
        if self.remaining > 0 {
            self.next = Some(current.product(self.base).expect("square powers share dim"));
        }
        Some(current)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    /// Right-aligned integer grid, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for (i, row) in cells.chunks(self.dim).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c:>width$}")?;
            }
        }
        Ok(())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix({}x{})", self.dim, self.dim)?;
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntMatrix, IntVector};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn v(xs: &[i64]) -> IntVector {
        IntVector::new(xs.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    fn r5() -> IntMatrix {
        m(&[&[0, 0, 0, -1], &[1, 0, 0, -1], &[0, 1, 0, -1], &[0, 0, 1, -1]])
    }

    #[test]
    fn malformed_inputs_rejected() {
        assert!(IntMatrix::new(0, vec![]).is_err());
        assert!(IntMatrix::new(2, vec![BigInt::from(1); 3]).is_err());
        assert!(IntMatrix::from_rows(vec![vec![BigInt::from(1)], vec![]]).is_err());
        assert!(IntVector::new(vec![]).is_err());
    }

    #[test]
    fn product_examples() {
        let i2 = IntMatrix::identity(2);
        assert_eq!(i2.product(&i2).unwrap(), i2);

        let sq = r5().product(&r5()).unwrap();
        assert_eq!(sq, m(&[&[0, 0, -1, 1], &[0, 0, -1, 0], &[1, 0, -1, 0], &[0, 1, -1, 0]]));

        let err = IntMatrix::identity(3).product(&i2).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { left: 3, right: 2 });
    }

    #[test]
    fn pow_examples() {
        assert_eq!(r5().pow(0), IntMatrix::identity(4));
        assert_eq!(
            r5().pow(4),
            m(&[&[-1, 1, 0, 0], &[-1, 0, 1, 0], &[-1, 0, 0, 1], &[-1, 0, 0, 0]])
        );
        assert_eq!(r5().pow(5), IntMatrix::identity(4));
        for t in 0..12 {
            assert_eq!(r5().pow(t), r5().pow_naive(t), "t={t}");
        }
    }

    #[test]
    fn powers_iterator_matches_pow() {
        let all: Vec<_> = r5().powers(7).collect();
        assert_eq!(all.len(), 7);
        for (t, p) in all.iter().enumerate() {
            assert_eq!(*p, r5().pow(t as u64));
        }
        assert_eq!(r5().powers(0).count(), 0);
    }

    #[test]
    fn kron_examples() {
        assert_eq!(
            IntMatrix::identity(2).kron(&IntMatrix::identity(3)),
            IntMatrix::identity(6)
        );
        assert_eq!(m(&[&[-1]]).kron(&r5()), r5().neg());

        let r3 = m(&[&[0, -1], &[1, -1]]);
        let a15 = m(&[
            &[0, 0, 0, 0, 0, 0, 0, 1],
            &[0, 0, 0, 0, -1, 0, 0, 1],
            &[0, 0, 0, 0, 0, -1, 0, 1],
            &[0, 0, 0, 0, 0, 0, -1, 1],
            &[0, 0, 0, -1, 0, 0, 0, 1],
            &[1, 0, 0, -1, -1, 0, 0, 1],
            &[0, 1, 0, -1, 0, -1, 0, 1],
            &[0, 0, 1, -1, 0, 0, -1, 1],
        ]);
        assert_eq!(r3.kron(&r5()), a15);
    }

    #[test]
    fn det_examples() {
        assert_eq!(IntMatrix::identity(5).det(), BigInt::from(1));
        assert_eq!(r5().det(), BigInt::from(1));
        assert_eq!(m(&[&[-1, 0], &[0, -1]]).det(), BigInt::from(1));
        assert_eq!(m(&[&[-1]]).det(), BigInt::from(-1));
        // needs a row swap
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det(), BigInt::from(0));
        assert_eq!(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).det(), BigInt::from(6));
    }

    #[test]
    fn col_sums_examples() {
        assert_eq!(IntMatrix::identity(3).col_sums(), v(&[1, 1, 1]));
        assert_eq!(m(&[&[0, -1], &[1, -1]]).col_sums(), v(&[1, -2]));
        assert_eq!(r5().col_sums(), v(&[1, 1, 1, -4]));
    }

    #[test]
    fn order_examples() {
        assert_eq!(IntMatrix::identity(4).order(10), Some(1));
        assert_eq!(r5().order(10), Some(5));
        assert_eq!(r5().order(4), None);
        assert_eq!(m(&[&[1, 1], &[0, 1]]).order(50), None);
    }

    #[test]
    fn apply_and_row_product() {
        let x = v(&[1, 2, 3, 4]);
        assert_eq!(r5().apply(&x).unwrap(), v(&[-4, -3, -2, -1]));
        assert_eq!(IntVector::ones(4).times_matrix(&r5()).unwrap(), r5().col_sums());
        assert!(r5().apply(&v(&[1, 2])).is_err());
    }

    #[test]
    fn block_diag_layout() {
        let r3 = m(&[&[0, -1], &[1, -1]]);
        let d = IntMatrix::block_diag(&[r3.clone(), m(&[&[7]])]).unwrap();
        assert_eq!(d, m(&[&[0, -1, 0], &[1, -1, 0], &[0, 0, 7]]));
    }

    #[test]
    fn display_is_aligned() {
        assert_eq!(m(&[&[0, -1], &[10, -1]]).to_string(), " 0 -1\n10 -1");
    }

    #[test]
    #[should_panic(expected = "integer overflow")]
    fn machine_scalars_refuse_to_wrap() {
        let big = Matrix::<i64>::from_rows(vec![vec![i64::MAX / 2 + 1]]).unwrap();
        let _ = big.product(&big);
    }
}
