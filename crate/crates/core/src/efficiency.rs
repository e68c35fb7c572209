//! Multisets of factor dimensions and the product-versus-sum test that
//! decides whether a non-decoupled representation can compete with the
//! decoupled ones.
//!
//! A multiset `N` of integers `>= 2` is *inefficient* when
//! `Prod(N) >= 2·Sum(N)`. The efficient ones form a short explicit list
//! ([`is_efficient_closed`]); [`is_efficient_oracle`] evaluates the
//! definition directly and the verifiers compare the two exhaustively.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith::dmax;
use crate::error::{Error, Result};
use crate::report::{Status, VerificationReport};

/// Sorted ascending; equality and hashing are on this canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Multiset(Vec<u64>);

impl Multiset {
    pub fn new(mut elements: Vec<u64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Parse("multiset must be nonempty".into()));
        }
        if let Some(&bad) = elements.iter().find(|&&e| e < 2) {
            return Err(Error::domain("Multiset::new", "every element >= 2", bad));
        }
        elements.sort_unstable();
        Ok(Multiset(elements))
    }

    pub fn elements(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> u128 {
        self.0.iter().map(|&e| u128::from(e)).sum()
    }

    /// `(Prod(N), Sum(N))`.
    pub fn prod_sum(&self) -> Result<(u128, u128)> {
        let prod = self
            .0
            .iter()
            .try_fold(1u128, |acc, &e| acc.checked_mul(u128::from(e)))
            .ok_or(Error::Overflow("prod_sum"))?;
        Ok((prod, self.sum()))
    }
}

impl TryFrom<Vec<u64>> for Multiset {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Multiset::new(v)
    }
}

impl From<Multiset> for Vec<u64> {
    fn from(m: Multiset) -> Self {
        m.0
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for Multiset {
    type Err = Error;

    /// `{2,2,3}` or `2,2,3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = match s.strip_prefix('{') {
            Some(rest) => rest
                .strip_suffix('}')
                .ok_or_else(|| Error::Parse(format!("unbalanced braces in {s:?}")))?,
            None => s,
        };
        let elements = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad element {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Multiset::new(elements)
    }
}

pub fn prod_sum(n: &Multiset) -> Result<(u128, u128)> {
    n.prod_sum()
}

/// Membership in `{b}`, `{2,b}`, `{3,b}` with `3 <= b <= 5`, `{2,2,b}` with
/// `2 <= b <= 3`.
pub fn is_efficient_closed(n: &Multiset) -> bool {
    match *n.elements() {
        [_] => true,
        [2, _] => true,
        [3, b] => (3..=5).contains(&b),
        [2, 2, b] => (2..=3).contains(&b),
        _ => false,
    }
}

/// `Prod(N) < 2·Sum(N)`, straight from the definition.
pub fn is_efficient_oracle(n: &Multiset) -> bool {
    // Elements are >= 2, so a product that overflows u128 dwarfs 2·Sum.
    match n.prod_sum() {
        Ok((prod, sum)) => prod < 2 * sum,
        Err(_) => false,
    }
}

/// Calls `visit` on every multiset with elements `>= 2` and sum at most
/// `sum_max` whose smallest element is `first`, in lexicographic order.
fn for_each_with_first(first: u64, sum_max: u64, visit: &mut dyn FnMut(&[u64])) {
    fn extend(buf: &mut Vec<u64>, remaining: u64, visit: &mut dyn FnMut(&[u64])) {
        visit(buf);
        let last = *buf.last().expect("nonempty");
        for next in last..=remaining {
            buf.push(next);
            extend(buf, remaining - next, visit);
            buf.pop();
        }
    }
    if first < 2 || first > sum_max {
        return;
    }
    let mut buf = vec![first];
    extend(&mut buf, sum_max - first, visit);
}

/// All multisets with elements `>= 2` and `Sum <= sum_max`.
pub fn multisets_up_to(sum_max: u64) -> Vec<Multiset> {
    let mut out = Vec::new();
    for first in 2..=sum_max {
        for_each_with_first(first, sum_max, &mut |m| out.push(Multiset(m.to_vec())));
    }
    out
}

/// Strata are processed in parallel by smallest element and merged in order.
fn par_strata<T: Send>(sum_max: u64, per_multiset: impl Fn(&[u64], &mut Vec<T>) + Sync) -> Vec<T> {
    let strata: Vec<Vec<T>> = (2..=sum_max.max(1))
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            for_each_with_first(first, sum_max, &mut |m| per_multiset(m, &mut out));
            out
        })
        .collect();
    strata.into_iter().flatten().collect()
}

/// Sum above which only the unbounded families `{b}` and `{2,b}` can be
/// efficient.
pub const SPORADIC_SUM_BOUND: u64 = 14;

enum Finding {
    Mismatch(Multiset, bool, bool),
    Efficient(Multiset),
}

/// Exhaustive agreement of the closed-form list with the definition over
/// every multiset with `Sum <= sum_max`. The report also checks that every
/// efficient multiset with `Sum > 14` is of the form `{b}` or `{2,b}`, and
/// lists the sporadic efficient multisets as witnesses.
pub fn verify_lemma_n(sum_max: u64) -> Result<VerificationReport> {
    let findings = par_strata(sum_max, |m, out| {
        let ms = Multiset(m.to_vec());
        let closed = is_efficient_closed(&ms);
        let oracle = is_efficient_oracle(&ms);
        if closed != oracle {
            out.push(Finding::Mismatch(ms, closed, oracle));
        } else if oracle {
            out.push(Finding::Efficient(ms));
        }
    });

    let mut report = VerificationReport::new("lemma-N").with_range("sum_max", sum_max);
    for f in findings {
        match f {
            Finding::Mismatch(ms, closed, oracle) => report.fail(json!({
                "multiset": ms.to_string(), "closed_form": closed, "oracle": oracle,
            })),
            Finding::Efficient(ms) => {
                let unbounded_family = matches!(ms.elements(), [_] | [2, _]);
                if unbounded_family {
                    continue;
                }
                if ms.sum() > u128::from(SPORADIC_SUM_BOUND) {
                    report.fail(json!({
                        "multiset": ms.to_string(),
                        "reason": "efficient beyond the sporadic sum bound",
                    }));
                }
                report.witnesses.push(json!(ms.to_string()));
            }
        }
    }
    report.status = Status::from_counterexamples(&report.counterexamples);
    Ok(report)
}

/// For two elements, efficiency is `(a-2)(b-2) < 4`.
pub fn verify_two_element_criterion(b_max: u64) -> VerificationReport {
    let mut report = VerificationReport::new("lemma-N-pairs").with_range("b_max", b_max);
    for a in 2..=b_max {
        for b in a..=b_max {
            let ms = Multiset(vec![a, b]);
            let criterion = (a - 2) * (b - 2) < 4;
            if is_efficient_oracle(&ms) != criterion {
                report.fail(json!({"a": a, "b": b}));
            }
        }
    }
    report
}

/// Raising one element or adjoining an element `>= 2` keeps an
/// inefficient multiset inefficient.
pub fn verify_monotonicity(sum_max: u64) -> VerificationReport {
    let bad = par_strata(sum_max, |m, out| {
        let ms = Multiset(m.to_vec());
        if is_efficient_oracle(&ms) {
            return;
        }
        for i in 0..m.len() {
            let mut raised = m.to_vec();
            raised[i] += 1;
            let raised = Multiset::new(raised).expect("valid");
            if is_efficient_oracle(&raised) {
                out.push(json!({"from": ms.to_string(), "to": raised.to_string()}));
            }
        }
        for x in 2..=sum_max {
            let mut grown = m.to_vec();
            grown.push(x);
            let grown = Multiset::new(grown).expect("valid");
            if is_efficient_oracle(&grown) {
                out.push(json!({"from": ms.to_string(), "to": grown.to_string()}));
            }
        }
    });
    let mut report = VerificationReport::new("lemma-N-monotone").with_range("sum_max", sum_max);
    for b in bad {
        report.fail(b);
    }
    report
}

/// Arithmetic skeleton of the reduction from a non-decoupled representation
/// to decoupled ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionCheck {
    /// `Σ k_j·dim U_j`.
    pub decoupled_genus: u64,
    /// `Σ dmax(k_j·dim U_j)`.
    pub decoupled_bound: u64,
    pub dmax_g: u64,
    pub holds: bool,
}

/// Given summands `(k_j, dim U_j)` and the genus `g` of the ambient
/// representation, checks `g >= Σ k_j·dim U_j` and
/// `Σ dmax(k_j·dim U_j) <= dmax(g)`.
pub fn check_reduction(summands: &[(u64, u64)], g: u64) -> Result<ReductionCheck> {
    if summands.is_empty() {
        return Err(Error::Parse("at least one summand required".into()));
    }
    let mut genus = 0u64;
    let mut bound = 0u64;
    for &(k, dim_u) in summands {
        if k == 0 {
            return Err(Error::domain("check_reduction", "k_j >= 1", k));
        }
        if dim_u < 2 {
            return Err(Error::domain("check_reduction", "dim U_j >= 2", dim_u));
        }
        let v = k
            .checked_mul(dim_u)
            .ok_or(Error::Overflow("check_reduction"))?;
        genus = genus
            .checked_add(v)
            .ok_or(Error::Overflow("check_reduction"))?;
        bound = bound
            .checked_add(dmax(v)?)
            .ok_or(Error::Overflow("check_reduction"))?;
    }
    let dmax_g = dmax(g)?;
    Ok(ReductionCheck {
        decoupled_genus: genus,
        decoupled_bound: bound,
        dmax_g,
        holds: g >= genus && bound <= dmax_g,
    })
}

/// Numeric steps of the efficient non-decoupled cases with `N = {2, b}`:
///
/// * `l1 + l2·dmax(b) < dmax(b(l1 + l2))` for `b >= 3`, `l2 >= 1`,
///   `l1 + l2 >= 2`;
/// * for the `SO*(2r)` factor (`r >= 5`), a non-negligible pair with
///   `d = l1 + l2·r(r-1)/2`, `g = 2r(l1 + l2)` has `dmax(g) > d + 1`.
pub fn verify_two_factor_case(b_max: u64, l_max: u64, r_max: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("non-decoupled")
        .with_range("b_max", b_max)
        .with_range("l_max", l_max)
        .with_range("r_max", r_max);
    for b in 3..=b_max {
        let db = dmax(b)?;
        for l1 in 0..=l_max {
            for l2 in 1..=l_max {
                if l1 + l2 < 2 {
                    continue;
                }
                if l1 + l2 * db >= dmax(b * (l1 + l2))? {
                    report.fail(json!({"case": "2,b", "b": b, "l1": l1, "l2": l2}));
                }
            }
        }
    }
    for r in 5..=r_max {
        for l1 in 0..=l_max {
            for l2 in 1..=l_max {
                if l1 + l2 < 2 {
                    continue;
                }
                let g = 2 * r * (l1 + l2);
                let d = l1 + l2 * (r * (r - 1) / 2);
                if d + 1 >= g && dmax(g)? <= d + 1 {
                    report.fail(json!({"case": "2,II_r", "r": r, "l1": l1, "l2": l2}));
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(v: &[u64]) -> Multiset {
        Multiset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn prod_sum_examples() {
        assert_eq!(prod_sum(&ms(&[2, 2, 2])).unwrap(), (8, 6));
        assert_eq!(prod_sum(&ms(&[3, 5])).unwrap(), (15, 8));
        assert_eq!(prod_sum(&ms(&[7])).unwrap(), (7, 7));
    }

    #[test]
    fn rejects_empty_and_small() {
        assert!(Multiset::new(vec![]).is_err());
        assert!(Multiset::new(vec![2, 1]).is_err());
        assert!("{}".parse::<Multiset>().is_err());
        assert!("{2,x}".parse::<Multiset>().is_err());
        assert!("{2,3".parse::<Multiset>().is_err());
    }

    #[test]
    fn canonical_form() {
        assert_eq!(ms(&[5, 3]), ms(&[3, 5]));
        assert_eq!(
            "{5, 2,2}".parse::<Multiset>().unwrap().to_string(),
            "{2,2,5}"
        );
    }

    #[test]
    fn closed_form_examples() {
        assert!(is_efficient_closed(&ms(&[2, 2, 3])));
        assert!(!is_efficient_closed(&ms(&[2, 2, 4])));
        assert!(!is_efficient_closed(&ms(&[2, 3, 3])));
        assert!(is_efficient_closed(&ms(&[9])));
        assert!(is_efficient_closed(&ms(&[3, 5])));
        assert!(!is_efficient_closed(&ms(&[3, 6])));
    }

    #[test]
    fn oracle_examples() {
        assert!(!is_efficient_oracle(&ms(&[3, 6])));
        assert!(is_efficient_oracle(&ms(&[2, 100])));
        assert!(!is_efficient_oracle(&ms(&[2, 2, 2, 2])));
        assert!(is_efficient_oracle(&ms(&[2, 2, 2])));
    }

    #[test]
    fn huge_product_is_inefficient() {
        let big = Multiset::new(vec![u64::MAX; 3]).unwrap();
        assert!(big.prod_sum().is_err());
        assert!(!is_efficient_oracle(&big));
    }

    #[test]
    fn enumeration_counts_match_partition_numbers() {
        // partitions of n into parts >= 2, summed over 2 <= n <= 10:
        // 1,1,2,2,4,4,7,8,12 -> 41
        assert_eq!(multisets_up_to(10).len(), 41);
        assert!(multisets_up_to(1).is_empty());
    }

    #[test]
    fn lemma_n_small_window() {
        let r = verify_lemma_n(20).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.witnesses.contains(&json!("{2,2,3}")));
        assert!(r.witnesses.contains(&json!("{3,5}")));
    }

    #[test]
    fn reduction_checker() {
        let ok = check_reduction(&[(2, 8)], 16).unwrap();
        assert!(ok.holds);
        assert_eq!(ok.decoupled_bound, 16);
        let two = check_reduction(&[(2, 3), (3, 2)], 12).unwrap();
        assert_eq!(two.decoupled_genus, 12);
        assert_eq!(two.decoupled_bound, 5 + 5);
        assert!(two.holds);
        let short = check_reduction(&[(2, 8)], 15).unwrap();
        assert!(!short.holds);
        assert!(check_reduction(&[], 4).is_err());
        assert!(check_reduction(&[(0, 3)], 4).is_err());
        assert!(check_reduction(&[(1, 1)], 4).is_err());
    }

    #[test]
    fn two_factor_arithmetic() {
        assert_eq!(
            verify_two_factor_case(60, 12, 30).unwrap().status,
            Status::Pass
        );
    }
}
