//! Integer primitives shared by every other module: the closed-form bound
//! `dmax`, the half-product `F(n)`, the domination order on
//! (dimension, genus) pairs and the classical comparison bounds.
//!
//! Everything here is exact `u64` arithmetic. Operations that could overflow
//! for adversarial inputs use checked arithmetic and report
//! [`Error::Overflow`].

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Status, VerificationReport};

/// A (dimension, genus) pair: a candidate compact subvariety of dimension `d`
/// inside the moduli space of `g`-dimensional abelian varieties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pair {
    pub d: u64,
    pub g: u64,
}

impl Pair {
    pub fn new(d: u64, g: u64) -> Result<Self> {
        if g == 0 {
            return Err(Error::domain("Pair::new", "g >= 1", g));
        }
        Ok(Pair { d, g })
    }

    /// `self ⪯ other`: at most the dimension of `other` in at least its genus.
    pub fn is_dominated_by(&self, other: &Pair) -> bool {
        self.d <= other.d && self.g >= other.g
    }

    pub fn is_strictly_dominated_by(&self, other: &Pair) -> bool {
        self.is_dominated_by(other) && self.d < other.d
    }

    /// Beaten by a Hodge-generic complete intersection of dimension `g - 1`.
    pub fn is_negligible(&self) -> bool {
        self.d + 1 < self.g
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d, self.g)
    }
}

/// True iff `q` is dominated by `p`.
pub fn dominates(p: &Pair, q: &Pair) -> bool {
    q.is_dominated_by(p)
}

pub fn strictly_dominates(p: &Pair, q: &Pair) -> bool {
    q.is_strictly_dominated_by(p)
}

pub fn is_negligible(p: &Pair) -> bool {
    p.is_negligible()
}

/// `max(g - 1, ⌊⌊g/2⌋² / 4⌋)`, defined for `g >= 1`.
pub fn dmax(g: u64) -> Result<u64> {
    if g == 0 {
        return Err(Error::domain("dmax", "g >= 1", g));
    }
    let half = g / 2;
    let sq = half.checked_mul(half).ok_or(Error::Overflow("dmax"))?;
    Ok((g - 1).max(sq / 4))
}

/// `⌈n/2⌉·⌊n/2⌋`, the largest `p(n - p)` over `0 <= p <= n`.
pub fn half_product(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::domain("half_product", "n >= 2", n));
    }
    let lo = n / 2;
    let hi = n - lo;
    lo.checked_mul(hi).ok_or(Error::Overflow("half_product"))
}

/// Keel–Sadun upper bound `g(g-1)/2 - 1` on compact subvarieties, `g >= 3`.
pub fn keel_sadun_bound(g: u64) -> Result<u64> {
    if g < 3 {
        return Err(Error::domain("keel_sadun_bound", "g >= 3", g));
    }
    let prod = g
        .checked_mul(g - 1)
        .ok_or(Error::Overflow("keel_sadun_bound"))?;
    Ok(prod / 2 - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    Exact,
    LowerBound,
    UpperBound,
}

/// One known value of a genus-indexed quantity, possibly only a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusValue {
    pub g: u64,
    pub value: u64,
    pub kind: BoundKind,
}

impl GenusValue {
    pub fn exact(g: u64, value: u64) -> Self {
        GenusValue {
            g,
            value,
            kind: BoundKind::Exact,
        }
    }

    pub fn lower(g: u64, value: u64) -> Self {
        GenusValue {
            g,
            value,
            kind: BoundKind::LowerBound,
        }
    }

    pub fn upper(g: u64, value: u64) -> Self {
        GenusValue {
            g,
            value,
            kind: BoundKind::UpperBound,
        }
    }

    /// Whether a true value `v` is compatible with this entry.
    pub fn admits(&self, v: u64) -> bool {
        match self.kind {
            BoundKind::Exact => v == self.value,
            BoundKind::LowerBound => v >= self.value,
            BoundKind::UpperBound => v <= self.value,
        }
    }
}

/// Exhaustively checks `dmax(g1 + g2) >= dmax(g1) + dmax(g2)` for
/// `1 <= g1 <= g2`, `g1 + g2 <= sum_max`, and that equality happens exactly
/// for `g1 = 1` with `g2 >= 16` even. Equality cases are listed as witnesses.
pub fn verify_superadditivity(sum_max: u64) -> Result<VerificationReport> {
    let table: Vec<u64> = (0..=sum_max)
        .map(|g| if g == 0 { Ok(0) } else { dmax(g) })
        .collect::<Result<_>>()?;

    let rows: Vec<(Vec<serde_json::Value>, Vec<serde_json::Value>)> = (1..=sum_max / 2)
        .into_par_iter()
        .map(|g1| {
            let mut bad = Vec::new();
            let mut eq = Vec::new();
            for g2 in g1..=(sum_max - g1) {
                let lhs = table[(g1 + g2) as usize];
                let rhs = table[g1 as usize] + table[g2 as usize];
                let expect_equal = g1 == 1 && g2 >= 16 && g2 % 2 == 0;
                if lhs < rhs || (lhs == rhs) != expect_equal {
                    bad.push(serde_json::json!({
                        "g1": g1, "g2": g2, "dmax_sum": lhs, "sum_dmax": rhs,
                    }));
                }
                if lhs == rhs {
                    eq.push(serde_json::json!([g1, g2]));
                }
            }
            (bad, eq)
        })
        .collect();

    let mut report = VerificationReport::new("lemma-dmax").with_range("g_sum_max", sum_max);
    for (bad, eq) in rows {
        report.counterexamples.extend(bad);
        report.witnesses.extend(eq);
    }
    report.status = Status::from_counterexamples(&report.counterexamples);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dmax_examples() {
        assert_eq!(dmax(16).unwrap(), 16);
        assert_eq!(dmax(17).unwrap(), 16);
        assert_eq!(dmax(100).unwrap(), 625);
        assert_eq!(dmax(1).unwrap(), 0);
        assert_eq!(dmax(18).unwrap(), 20);
        assert_eq!(dmax(15).unwrap(), 14);
    }

    #[test]
    fn dmax_rejects_zero() {
        assert!(matches!(dmax(0), Err(Error::Domain { op: "dmax", .. })));
    }

    #[test]
    fn dmax_overflow_is_reported() {
        assert_eq!(dmax(u64::MAX), Err(Error::Overflow("dmax")));
    }

    #[test]
    fn half_product_examples() {
        assert_eq!(half_product(8).unwrap(), 16);
        assert_eq!(half_product(9).unwrap(), 20);
        assert_eq!(half_product(50).unwrap(), 625);
        assert_eq!(half_product(2).unwrap(), 1);
        assert!(half_product(1).is_err());
        assert!(half_product(0).is_err());
    }

    #[test]
    fn domination_examples() {
        let p = Pair::new(20, 18).unwrap();
        let q = Pair::new(10, 20).unwrap();
        assert!(dominates(&p, &q));
        assert!(strictly_dominates(&p, &q));

        let a = Pair::new(1, 2).unwrap();
        assert!(dominates(&a, &a));
        assert!(!strictly_dominates(&a, &a));

        assert!(!dominates(
            &Pair::new(3, 5).unwrap(),
            &Pair::new(4, 4).unwrap()
        ));
    }

    #[test]
    fn negligible_examples() {
        assert!(is_negligible(&Pair::new(4, 8).unwrap()));
        assert!(is_negligible(&Pair::new(1, 4).unwrap()));
        assert!(!is_negligible(&Pair::new(1, 2).unwrap()));
        assert!(!is_negligible(&Pair::new(0, 1).unwrap()));
    }

    #[test]
    fn pair_rejects_genus_zero() {
        assert!(Pair::new(0, 0).is_err());
    }

    #[test]
    fn keel_sadun_examples() {
        assert_eq!(keel_sadun_bound(6).unwrap(), 14);
        assert_eq!(keel_sadun_bound(100).unwrap(), 4949);
        assert_eq!(keel_sadun_bound(3).unwrap(), 2);
        assert!(keel_sadun_bound(2).is_err());
    }

    #[test]
    fn genus_value_admits() {
        assert!(GenusValue::lower(24, 34).admits(40));
        assert!(!GenusValue::lower(24, 34).admits(33));
        assert!(GenusValue::upper(24, 36).admits(36));
        assert!(GenusValue::exact(23, 32).admits(32));
        assert!(!GenusValue::exact(23, 32).admits(31));
    }

    #[test]
    fn superadditivity_small_window() {
        let report = verify_superadditivity(60).unwrap();
        assert_eq!(report.status, Status::Pass);
        // (1,16), (1,18), ..., (1,58)
        assert_eq!(report.witnesses.len(), 22);
        assert_eq!(report.witnesses[0], serde_json::json!([1, 16]));
    }
}
