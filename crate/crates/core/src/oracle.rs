//! Brute-force invariance checks on finite boxes `[−M, M]^d`.
//!
//! Nothing here goes through the congruence systems of
//! [`restriction`](crate::restriction): every point of the box is rotated by
//! every nontrivial power and the colours before and after are compared.
//! Image points may leave the box; colour is defined everywhere, so they are
//! still compared.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmat::Matrix;
use crate::restriction::{restriction_number, ColourBound};
use crate::rotrep::{rep, RotationRep};

pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoxSpec {
    dim: usize,
    half_width: u64,
}

impl BoxSpec {
    pub fn new(dim: usize, half_width: u64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Malformed("box dimension must be >= 1".into()));
        }
        if half_width == 0 {
            return Err(Error::Malformed("box half-width must be >= 1".into()));
        }
        Ok(BoxSpec { dim, half_width })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_width(&self) -> u64 {
        self.half_width
    }

    /// `(2M+1)^d`, saturating.
    pub fn points(&self) -> u128 {
        let side = 2 * self.half_width as u128 + 1;
        u32::try_from(self.dim)
            .ok()
            .and_then(|d| side.checked_pow(d))
            .unwrap_or(u128::MAX)
    }
}

/// A point whose image under `R^t` changes colour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub point: Vec<i64>,
    pub t: u64,
    pub colour: u64,
    pub image_colour: u64,
}

/// Per-modulus witnesses of broken invariance.
pub type Witnesses = Vec<(u64, Counterexample)>;

/// Symbolic moduli capped at the scan limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolicModuli {
    All,
    Divisors(Vec<u64>),
}

impl SymbolicModuli {
    fn expand(&self, n_scan: u64) -> Vec<u64> {
        match self {
            SymbolicModuli::All => (1..=n_scan).collect(),
            SymbolicModuli::Divisors(ds) => ds.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Agree,
    Disagree,
    Skipped { points: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgreementRow {
    pub k: u64,
    pub dim: usize,
    pub symbolic: SymbolicModuli,
    /// `None` when the box exceeded the point budget.
    pub bruteforce: Option<Vec<u64>>,
    pub status: RowStatus,
    /// First violation found for each scanned modulus that fails, ascending by `n`.
    pub counterexamples: Witnesses,
}

impl AgreementRow {
    pub fn agrees(&self) -> bool {
        self.status == RowStatus::Agree
    }
}

/// Powers `R^1 … R^{k−1}` stored column-major in machine integers.
struct PowerTable {
    dim: usize,
    columns: Vec<Vec<i64>>,
}

impl PowerTable {
    fn new(rep: &RotationRep, half_width: u64) -> Result<Self> {
        let dim = rep.dim();
        let mut columns = Vec::new();
        for power in rep.matrix().powers(rep.k()).skip(1) {
            let small: Matrix<i64> = power.try_map(|x| x.to_i64()).ok_or(Error::Overflow)?;
            // Every image coordinate and coordinate sum must stay far from i64 limits.
            let worst = small
                .rows()
                .map(|r| r.iter().map(|x| x.unsigned_abs() as u128).sum::<u128>())
                .max()
                .unwrap_or(0)
                .saturating_mul(half_width as u128)
                .saturating_mul(dim as u128);
            if worst > (i64::MAX / 4) as u128 {
                return Err(Error::Overflow);
            }
            let mut col_major = Vec::with_capacity(dim * dim);
            for j in 0..dim {
                col_major.extend((0..dim).map(|i| *small.get(i, j)));
            }
            columns.push(col_major);
        }
        Ok(PowerTable { dim, columns })
    }

    fn column(&self, t_index: usize, j: usize) -> &[i64] {
        &self.columns[t_index][j * self.dim..(j + 1) * self.dim]
    }
}

/// Oracle with a point budget; `Oracle::default()` uses [`DEFAULT_POINT_BUDGET`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    budget: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            budget: DEFAULT_POINT_BUDGET,
        }
    }
}

impl Oracle {
    pub fn with_budget(budget: u64) -> Self {
        Oracle { budget }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn admit(&self, rep: &RotationRep, b: &BoxSpec) -> Result<()> {
        if b.dim() != rep.dim() {
            return Err(Error::DimensionMismatch {
                left: rep.dim(),
                right: b.dim(),
            });
        }
        if b.points() > self.budget as u128 {
            return Err(Error::PointBudgetExceeded {
                points: b.points(),
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// True iff no point of the box changes colour under any `R^t`, `1 ≤ t < k`.
    pub fn check_invariance(&self, rep: &RotationRep, n: u64, b: &BoxSpec) -> Result<bool> {
        Ok(self.find_violation(rep, n, b)?.is_none())
    }

    /// First violating `(m, t)` in enumeration order, if any.
    pub fn find_violation(
        &self,
        rep: &RotationRep,
        n: u64,
        b: &BoxSpec,
    ) -> Result<Option<Counterexample>> {
        if n == 0 {
            return Err(Error::ZeroModulus);
        }
        let mut found = self.scan(rep, &[n], b)?;
        Ok(found.pop().map(|(_, c)| c))
    }

    /// `{ n ∈ 1..=n_max_scan : check_invariance(rep, n, box) }`, ascending.
    pub fn valid_moduli_bruteforce(
        &self,
        rep: &RotationRep,
        n_max_scan: u64,
        b: &BoxSpec,
    ) -> Result<Vec<u64>> {
        Ok(self.scan_moduli(rep, n_max_scan, b)?.0)
    }

    fn scan_moduli(
        &self,
        rep: &RotationRep,
        n_max_scan: u64,
        b: &BoxSpec,
    ) -> Result<(Vec<u64>, Witnesses)> {
        if n_max_scan == 0 {
            return Err(Error::ZeroModulus);
        }
        let moduli: Vec<u64> = (1..=n_max_scan).collect();
        let violations = self.scan(rep, &moduli, b)?;
        let valid = moduli
            .into_iter()
            .filter(|n| violations.iter().all(|(bad, _)| bad != n))
            .collect();
        Ok((valid, violations))
    }

    /// Enumerate the box once and record, for each modulus, the first violation.
    /// Slabs of fixed first coordinate run in parallel; results are merged in
    /// slab order so the reported counterexample is deterministic.
    fn scan(
        &self,
        rep: &RotationRep,
        moduli: &[u64],
        b: &BoxSpec,
    ) -> Result<Witnesses> {
        self.admit(rep, b)?;
        let table = PowerTable::new(rep, b.half_width())?;
        let half = b.half_width() as i64;
        let slabs: Vec<Vec<Option<Counterexample>>> = (-half..=half)
            .into_par_iter()
            .map(|first| scan_slab(&table, moduli, half, first))
            .collect();
        let mut out = Vec::new();
        for (idx, &n) in moduli.iter().enumerate() {
            if let Some(c) = slabs.iter().find_map(|s| s[idx].clone()) {
                out.push((n, c));
            }
        }
        Ok(out)
    }

    /// Compare symbolic and brute-force moduli for every `k` in `1..=k_max`.
    pub fn agreement_report(&self, k_max: u64, n_scan: u64, half_width: u64) -> Result<Vec<AgreementRow>> {
        (1..=k_max)
            .map(|k| self.agreement_row(k, n_scan, half_width))
            .collect()
    }

    pub fn agreement_row(&self, k: u64, n_scan: u64, half_width: u64) -> Result<AgreementRow> {
        let r = rep(k)?;
        let symbolic = match restriction_number(&r).n_max {
            ColourBound::Unbounded => SymbolicModuli::All,
            ColourBound::Finite(bound) => SymbolicModuli::Divisors(
                (1..=n_scan)
                    .filter(|&n| ColourBound::Finite(bound.clone()).admits(n))
                    .collect(),
            ),
        };
        let b = BoxSpec::new(r.dim(), half_width)?;
        if b.points() > self.budget as u128 {
            return Ok(AgreementRow {
                k,
                dim: r.dim(),
                symbolic,
                bruteforce: None,
                status: RowStatus::Skipped { points: b.points() },
                counterexamples: Vec::new(),
            });
        }
        let (brute, counterexamples) = self.scan_moduli(&r, n_scan, &b)?;
        let status = if symbolic.expand(n_scan) == brute {
            RowStatus::Agree
        } else {
            RowStatus::Disagree
        };
        Ok(AgreementRow {
            k,
            dim: r.dim(),
            symbolic,
            bruteforce: Some(brute),
            status,
            counterexamples,
        })
    }
}

fn scan_slab(table: &PowerTable, moduli: &[u64], half: i64, first: i64) -> Vec<Option<Counterexample>> {
    let dim = table.dim;
    let powers = table.columns.len();
    let mut found: Vec<Option<Counterexample>> = vec![None; moduli.len()];
    let mut open = moduli.len();
    if powers == 0 {
        return found;
    }

    let mut point = vec![-half; dim];
    point[0] = first;
    // images[t] = R^{t+1} · point, kept up to date as the odometer moves.
    let mut images: Vec<Vec<i64>> = (0..powers)
        .map(|t| {
            let mut img = vec![0i64; dim];
            for (j, &mj) in point.iter().enumerate() {
                for (acc, &c) in img.iter_mut().zip(table.column(t, j)) {
                    *acc += c * mj;
                }
            }
            img
        })
        .collect();

    loop {
        let sum: i64 = point.iter().sum();
        for (t, img) in images.iter().enumerate() {
            let image_sum: i64 = img.iter().sum();
            if image_sum == sum {
                continue;
            }
            for (slot, &n) in found.iter_mut().zip(moduli) {
                if slot.is_some() {
                    continue;
                }
                let n = n as i64;
                let (before, after) = (sum.rem_euclid(n), image_sum.rem_euclid(n));
                if before != after {
                    *slot = Some(Counterexample {
                        point: point.clone(),
                        t: t as u64 + 1,
                        colour: before as u64,
                        image_colour: after as u64,
                    });
                    open -= 1;
                }
            }
            if open == 0 {
                return found;
            }
        }

        // Advance the odometer over coordinates 1..dim.
        let Some(axis) = (1..dim).rev().find(|&i| point[i] < half) else {
            return found;
        };
        point[axis] += 1;
        for (t, img) in images.iter_mut().enumerate() {
            for (acc, &c) in img.iter_mut().zip(table.column(t, axis)) {
                *acc += c;
            }
        }
        for (j, x) in point.iter_mut().enumerate().skip(axis + 1) {
            *x = -half;
            for (t, img) in images.iter_mut().enumerate() {
                for (acc, &c) in img.iter_mut().zip(table.column(t, j)) {
                    *acc -= 2 * half * c;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotrep::rep_2d;

    fn boxed(r: &RotationRep, m: u64) -> BoxSpec {
        BoxSpec::new(r.dim(), m).unwrap()
    }

    #[test]
    fn box_points() {
        assert_eq!(BoxSpec::new(2, 3).unwrap().points(), 49);
        assert_eq!(BoxSpec::new(8, 2).unwrap().points(), 390_625);
        assert_eq!(BoxSpec::new(500, 2).unwrap().points(), u128::MAX);
        assert!(BoxSpec::new(0, 1).is_err());
        assert!(BoxSpec::new(2, 0).is_err());
    }

    #[test]
    fn check_invariance_examples() {
        let o = Oracle::default();
        let r3 = rep_2d(3).unwrap();
        assert!(o.check_invariance(&r3, 3, &boxed(&r3, 3)).unwrap());
        let r6 = rep_2d(6).unwrap();
        assert!(!o.check_invariance(&r6, 2, &boxed(&r6, 3)).unwrap());
        let r9 = rep(9).unwrap();
        assert!(o.check_invariance(&r9, 3, &boxed(&r9, 1)).unwrap());
    }

    #[test]
    fn counterexample_is_a_real_violation() {
        let o = Oracle::default();
        let r6 = rep_2d(6).unwrap();
        let c = o.find_violation(&r6, 2, &boxed(&r6, 3)).unwrap().unwrap();
        assert_ne!(c.colour, c.image_colour);
        // first point in enumeration order is (−3, −3); R₆(−3,−3) = (3,−6), sums −6 vs −3
        assert_eq!(c.point, vec![-3, -3]);
        assert_eq!(c.t, 1);
        assert_eq!((c.colour, c.image_colour), (0, 1));
    }

    #[test]
    fn valid_moduli_examples() {
        let o = Oracle::default();
        let r4 = rep_2d(4).unwrap();
        assert_eq!(o.valid_moduli_bruteforce(&r4, 8, &boxed(&r4, 3)).unwrap(), vec![1, 2]);
        let r5 = rep(5).unwrap();
        assert_eq!(o.valid_moduli_bruteforce(&r5, 12, &boxed(&r5, 1)).unwrap(), vec![1, 5]);
        let r15 = rep(15).unwrap();
        assert_eq!(o.valid_moduli_bruteforce(&r15, 12, &boxed(&r15, 1)).unwrap(), vec![1]);
    }

    #[test]
    fn budget_and_dimension_guards() {
        let r15 = rep(15).unwrap();
        let tight = Oracle::with_budget(100);
        assert!(matches!(
            tight.check_invariance(&r15, 1, &boxed(&r15, 1)),
            Err(Error::PointBudgetExceeded { points: 6561, budget: 100 })
        ));
        let wrong = BoxSpec::new(3, 1).unwrap();
        assert!(matches!(
            Oracle::default().check_invariance(&r15, 1, &wrong),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(
            Oracle::default().check_invariance(&r15, 0, &boxed(&r15, 1)),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn agreement_examples() {
        let o = Oracle::default();
        let row6 = o.agreement_row(6, 12, 2).unwrap();
        assert_eq!(row6.symbolic, SymbolicModuli::Divisors(vec![1]));
        assert_eq!(row6.bruteforce, Some(vec![1]));
        assert!(row6.agrees());

        let row9 = o.agreement_row(9, 12, 1).unwrap();
        assert_eq!(row9.symbolic, SymbolicModuli::Divisors(vec![1, 3]));
        assert_eq!(row9.bruteforce, Some(vec![1, 3]));
        assert!(row9.agrees());
        assert_eq!(row9.counterexamples.len(), 10);

        let row1 = o.agreement_row(1, 5, 2).unwrap();
        assert_eq!(row1.symbolic, SymbolicModuli::All);
        assert_eq!(row1.bruteforce, Some(vec![1, 2, 3, 4, 5]));
        assert!(row1.agrees());
    }

    #[test]
    fn oversized_rows_are_skipped() {
        let o = Oracle::with_budget(1000);
        let row = o.agreement_row(11, 4, 1).unwrap();
        assert_eq!(row.status, RowStatus::Skipped { points: 59_049 });
        assert!(row.bruteforce.is_none());
    }
}
