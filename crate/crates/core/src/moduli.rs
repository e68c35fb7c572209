//! The top-level dimension functions: `dmc(A_g)` through the final
//! recursion over `mdsp*`, `dmc(M_g^ct)` through the boundary recursion,
//! and the Jacobian-locus, `M_g` and `A_g^ind` bounds.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith::{dmax, half_product, GenusValue};
use crate::error::{Error, Result};
use crate::pairs::{Family, MdspTable};
use crate::report::VerificationReport;

/// A construction realizing the maximal dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Attainment {
    /// A complete intersection of ample divisors through a very general
    /// point, of dimension `g - 1`.
    HodgeGeneric,
    /// The quaternionic Shimura curve in `A_2`.
    ShimuraCurve,
    /// The type-I family `((k-1)F(n), kn)`.
    SpecialFamily { k: u64, n: u64 },
    /// `Z × {pt}` inside `A_{g-1} × A_1`.
    ProductWithPoint(Box<Attainment>),
}

impl Attainment {
    fn from_family(f: &Family) -> Option<Attainment> {
        match *f {
            Family::A1 => Some(Attainment::ShimuraCurve),
            Family::I { k, n } => Some(Attainment::SpecialFamily { k, n }),
            _ => None,
        }
    }

    /// Dimension of the construction in genus `g`; errors if the
    /// construction does not live in that genus.
    pub fn evaluate(&self, g: u64) -> Result<u64> {
        let mismatch = || Error::Inconsistent(format!("{self} does not live in genus {g}"));
        match self {
            Attainment::HodgeGeneric => g.checked_sub(1).ok_or_else(mismatch),
            Attainment::ShimuraCurve => (g == 2).then_some(1).ok_or_else(mismatch),
            Attainment::SpecialFamily { k, n } => {
                if k.checked_mul(*n) != Some(g) || *k < 2 {
                    return Err(mismatch());
                }
                Ok((k - 1) * half_product(*n)?)
            }
            Attainment::ProductWithPoint(inner) => {
                let h = g.checked_sub(1).filter(|&h| h >= 1).ok_or_else(mismatch)?;
                inner.evaluate(h)
            }
        }
    }
}

impl fmt::Display for Attainment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Attainment::HodgeGeneric => f.write_str("HodgeGeneric"),
            Attainment::ShimuraCurve => f.write_str("ShimuraCurve"),
            Attainment::SpecialFamily { k, n } => write!(f, "SpecialFamily({k},{n})"),
            Attainment::ProductWithPoint(inner) => write!(f, "ProductWithPoint({inner})"),
        }
    }
}

/// The six regimes of the classification of maximal compact subvarieties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MaxvarCase {
    #[serde(rename = "(o)")]
    O,
    #[serde(rename = "(i)")]
    I,
    #[serde(rename = "(ii)")]
    II,
    #[serde(rename = "(iii)")]
    III,
    #[serde(rename = "(iv)")]
    IV,
    #[serde(rename = "(v)")]
    V,
}

impl MaxvarCase {
    pub fn of(g: u64) -> Option<MaxvarCase> {
        Some(match g {
            0 => return None,
            1 => MaxvarCase::O,
            2 => MaxvarCase::I,
            3..=15 => MaxvarCase::II,
            17 => MaxvarCase::V,
            _ if g.is_multiple_of(2) => MaxvarCase::III,
            _ => MaxvarCase::IV,
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            MaxvarCase::O => "(o)",
            MaxvarCase::I => "(i)",
            MaxvarCase::II => "(ii)",
            MaxvarCase::III => "(iii)",
            MaxvarCase::IV => "(iv)",
            MaxvarCase::V => "(v)",
        }
    }

    /// The constructions the classification predicts for genus `g`.
    pub fn expected_attainment(g: u64) -> Vec<Attainment> {
        use Attainment::*;
        match MaxvarCase::of(g) {
            None => vec![],
            Some(MaxvarCase::O | MaxvarCase::II) => vec![HodgeGeneric],
            Some(MaxvarCase::I) => vec![HodgeGeneric, ShimuraCurve],
            Some(MaxvarCase::III) => vec![SpecialFamily { k: 2, n: g / 2 }],
            Some(MaxvarCase::IV) => {
                vec![ProductWithPoint(Box::new(SpecialFamily {
                    k: 2,
                    n: (g - 1) / 2,
                }))]
            }
            Some(MaxvarCase::V) => {
                vec![
                    HodgeGeneric,
                    ProductWithPoint(Box::new(SpecialFamily { k: 2, n: 8 })),
                ]
            }
        }
    }
}

impl fmt::Display for MaxvarCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgResult {
    pub g: u64,
    pub dmc: u64,
    pub case: Option<MaxvarCase>,
    pub attained_by: Vec<Attainment>,
}

/// Evaluates `dmc(A_g)` for every `g <= g_max` through
/// `max(M(g), max_{g'<g} (g - g' - 1 + M(g')))`, where `M = mdsp*`.
///
/// `M` is only a lower bound for the maximal dimension of special
/// subvarieties; the recursion is still exact because values below `g - 1`
/// never win the outer maximum. Each result is checked against `dmax(g)`.
#[derive(Debug, Clone)]
pub struct AgSolver {
    mdsp: MdspTable,
}

impl AgSolver {
    pub fn new(g_max: u64) -> Self {
        AgSolver {
            mdsp: MdspTable::new(g_max),
        }
    }

    pub fn g_max(&self) -> u64 {
        self.mdsp.g_max()
    }

    pub fn mdsp(&self) -> &MdspTable {
        &self.mdsp
    }

    /// Value of the recursion alone, without the comparison to `dmax`.
    pub fn recursion_value(&self, g: u64) -> Result<u64> {
        self.check_range(g)?;
        let m = |h: u64| self.mdsp.get(h);
        Ok((0..g).map(|gp| g - gp - 1 + m(gp)).fold(m(g), u64::max))
    }

    pub fn solve(&self, g: u64) -> Result<AgResult> {
        let dmc = self.recursion_value(g)?;
        if g == 0 {
            return Ok(AgResult {
                g,
                dmc,
                case: None,
                attained_by: vec![],
            });
        }
        let closed = dmax(g)?;
        if dmc != closed {
            return Err(Error::Inconsistent(format!(
                "recursion gives dmc(A_{g}) = {dmc} but dmax({g}) = {closed}"
            )));
        }

        let mut attained_by = Vec::new();
        let mut push = |a: Attainment| {
            if !attained_by.contains(&a) {
                attained_by.push(a);
            }
        };
        // Outer term g' = 0.
        if g - 1 == dmc {
            push(Attainment::HodgeGeneric);
        }
        if self.mdsp.get(g) == dmc {
            for a in self.mdsp_attainment(g)? {
                push(a);
            }
        }
        for gp in 1..g {
            if g - gp - 1 + self.mdsp.get(gp) != dmc {
                continue;
            }
            if gp + 1 != g {
                return Err(Error::Inconsistent(format!(
                    "unexpected maximizer g' = {gp} in genus {g}"
                )));
            }
            for a in self.mdsp_attainment(gp)? {
                push(Attainment::ProductWithPoint(Box::new(a)));
            }
        }

        let case = MaxvarCase::of(g);
        let expected = MaxvarCase::expected_attainment(g);
        if attained_by != expected {
            return Err(Error::Inconsistent(format!(
                "genus {g}: derived constructions {} differ from case {} prediction {}",
                list(&attained_by),
                case.map_or("-", MaxvarCase::label),
                list(&expected),
            )));
        }
        for a in &attained_by {
            if a.evaluate(g)? != dmc {
                return Err(Error::Inconsistent(format!(
                    "{a} does not reach {dmc} in genus {g}"
                )));
            }
        }
        Ok(AgResult {
            g,
            dmc,
            case,
            attained_by,
        })
    }

    /// Constructions reaching `M(h)`, read off the DP sources.
    fn mdsp_attainment(&self, h: u64) -> Result<Vec<Attainment>> {
        let src = self.mdsp.source(h);
        let mut out: Vec<Attainment> = src
            .indecomposable
            .iter()
            .filter_map(Attainment::from_family)
            .collect();
        for &(g1, g2) in &src.splits {
            // M(1) = 0: a product with a point.
            if g1 == 1 {
                if self.mdsp.get(g2) == 0 {
                    continue;
                }
                for a in self.mdsp_attainment(g2)? {
                    out.push(Attainment::ProductWithPoint(Box::new(a)));
                }
            } else if self.mdsp.get(g1) > 0 && self.mdsp.get(g2) > 0 {
                return Err(Error::Inconsistent(format!(
                    "M({h}) is reached by the product split ({g1},{g2})"
                )));
            }
        }
        Ok(out)
    }

    fn check_range(&self, g: u64) -> Result<()> {
        if g > self.g_max() {
            return Err(Error::domain("AgSolver", "g <= solver g_max", g));
        }
        Ok(())
    }
}

fn list(items: &[Attainment]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn dmc_ag(g: u64) -> Result<AgResult> {
    AgSolver::new(g).solve(g)
}

/// `⌊3g/2⌋ - 2`.
pub fn mgct_closed_form(g: u64) -> u64 {
    (3 * g / 2).saturating_sub(2)
}

/// Largest genus for which the boundary recursion is known to be exact.
pub const MGCT_EXACT_MAX: u64 = 23;

/// Largest genus where the `A_g` bound is quoted as improving Keel–Sadun
/// on `M_g^ct`.
pub const MGCT_DMAX_UPPER_MAX: u64 = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MgctResult {
    pub g: u64,
    /// Exact for `g <= 23`, a lower bound otherwise.
    pub value: GenusValue,
    /// Present only when `value` is a lower bound.
    pub upper: Option<GenusValue>,
}

impl MgctResult {
    pub fn is_exact(&self) -> bool {
        self.upper.is_none()
    }
}

/// Values of the `M_g^ct` boundary recursion for `2 <= g <= 23`.
#[derive(Debug, Clone)]
pub struct MgctTable {
    values: Vec<u64>,
    /// Splits `(g', g'')` reaching the maximum, and whether the interior
    /// bound ties it.
    maximizers: Vec<(Vec<(u64, u64)>, bool)>,
}

impl MgctTable {
    pub fn new() -> Result<Self> {
        Self::up_to(MGCT_EXACT_MAX)
    }

    /// Runs the recursion to `g_max`. Fails at the first genus `>= 4`
    /// where the interior hypothesis `dmax(g) < ⌊3g/2⌋ - 2` breaks.
    pub fn up_to(g_max: u64) -> Result<Self> {
        let len = g_max.max(3) as usize + 1;
        let mut values = vec![0u64; len];
        let mut maximizers = vec![(Vec::new(), false); len];
        values[2] = 1;
        values[3] = 2;
        let pointed = |values: &[u64], k: u64| if k == 1 { 0 } else { 1 + values[k as usize] };
        for g in 4..len as u64 {
            let interior = dmax(g)?;
            if interior >= mgct_closed_form(g) {
                return Err(Error::Inconsistent(format!(
                    "interior hypothesis fails at genus {g}: dmax = {interior} >= {}",
                    mgct_closed_form(g)
                )));
            }
            let boundary = (1..=g / 2)
                .map(|g1| pointed(&values, g1) + pointed(&values, g - g1))
                .max()
                .unwrap_or(0);
            let value = boundary.max(interior);
            let splits = (1..=g / 2)
                .filter(|&g1| pointed(&values, g1) + pointed(&values, g - g1) == value)
                .map(|g1| (g1, g - g1))
                .collect();
            values[g as usize] = value;
            maximizers[g as usize] = (splits, interior == value);
        }
        Ok(MgctTable { values, maximizers })
    }

    pub fn get(&self, g: u64) -> Option<u64> {
        (2..self.values.len() as u64)
            .contains(&g)
            .then(|| self.values[g as usize])
    }

    pub fn maximizing_splits(&self, g: u64) -> &[(u64, u64)] {
        self.maximizers.get(g as usize).map_or(&[], |m| &m.0)
    }
}

/// `dmc(M_g^ct)`: the recursion value for `g <= 23`, bounds beyond.
pub fn dmc_mgct(g: u64) -> Result<MgctResult> {
    if g < 2 {
        return Err(Error::domain("dmc_mgct", "g >= 2", g));
    }
    if g <= MGCT_EXACT_MAX {
        let table = MgctTable::up_to(g)?;
        let v = table.get(g).expect("in range");
        if v != mgct_closed_form(g) {
            return Err(Error::Inconsistent(format!(
                "M^ct recursion gives {v} at genus {g}, closed form {}",
                mgct_closed_form(g)
            )));
        }
        return Ok(MgctResult {
            g,
            value: GenusValue::exact(g, v),
            upper: None,
        });
    }
    Ok(MgctResult {
        g,
        value: GenusValue::lower(g, mgct_closed_form(g)),
        upper: Some(GenusValue::upper(g, mgct_upper_bound(g)?)),
    })
}

/// Keel–Sadun `2g - 4`, improved to `⌊⌊g/2⌋²/4⌋` for `24 <= g <= 28`.
fn mgct_upper_bound(g: u64) -> Result<u64> {
    let ks = g
        .checked_mul(2)
        .ok_or(Error::Overflow("mgct_upper_bound"))?
        - 4;
    Ok(if g <= MGCT_DMAX_UPPER_MAX {
        ks.min(dmax(g)?)
    } else {
        ks
    })
}

/// `(⌊2g/3⌋, min(dmax(g), dmc(M_g^ct) bound))` for the Jacobian locus.
pub fn jacobian_bounds(g: u64) -> Result<(u64, u64)> {
    let (lower, upper, _) = jacobian_bounds_detailed(g)?;
    Ok((lower, upper))
}

/// Also returns the two terms of the upper bound: `(dmax(g), M^ct term)`.
pub fn jacobian_bounds_detailed(g: u64) -> Result<(u64, u64, (u64, u64))> {
    if g < 2 {
        return Err(Error::domain("jacobian_bounds", "g >= 2", g));
    }
    let lower = g.checked_mul(2).ok_or(Error::Overflow("jacobian_bounds"))? / 3;
    let ag = dmax(g)?;
    let ct = if g <= MGCT_EXACT_MAX {
        mgct_closed_form(g)
    } else {
        2 * g - 4
    };
    Ok((lower, ag.min(ct), (ag, ct)))
}

/// `(lower, upper)` for `dmc(M_g)`: covering constructions give a compact
/// `d`-fold once `g >= 2^(d+1)`; Diaz gives `g - 2`.
pub fn mg_bounds(g: u64) -> Result<(u64, u64)> {
    if g < 2 {
        return Err(Error::domain("mg_bounds", "g >= 2", g));
    }
    let lower = if g == 2 {
        0
    } else {
        (u64::from(g.ilog2())).saturating_sub(1).max(1)
    };
    Ok((lower, g - 2))
}

/// `(g - 2, g - 1, exact)` for `dmcg(A_g^ind)`, exact only for `g <= 4`.
pub fn agind_bounds(g: u64) -> Result<(u64, u64, Option<u64>)> {
    if g < 2 {
        return Err(Error::domain("agind_bounds", "g >= 2", g));
    }
    Ok((g - 2, g - 1, (g <= 4).then_some(g - 2)))
}

/// Runs the `dmc(A_g)` recursion for `1 <= g <= g_max` and checks each
/// value against `dmax(g)` together with the predicted constructions.
/// Genera with more than one construction are listed as witnesses.
pub fn verify_theorem_b(g_max: u64) -> Result<VerificationReport> {
    let solver = AgSolver::new(g_max);
    let mut report = VerificationReport::new("thm-B").with_range("g_max", g_max);
    for g in 1..=g_max {
        match solver.solve(g) {
            Ok(r) if r.attained_by.len() > 1 => report.witnesses.push(json!({
                "g": g,
                "dmc": r.dmc,
                "attained_by": r.attained_by.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })),
            Ok(_) => {}
            Err(Error::Inconsistent(msg)) => report.fail(json!({"g": g, "error": msg})),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// The boundary recursion for `M_g^ct` against `⌊3g/2⌋ - 2` on `[2, g_max]`
/// (capped at 23), and the interior hypothesis on `[4, g_max]`. The genus
/// where the hypothesis first fails is reported as a witness.
pub fn verify_cor_c(g_max: u64) -> Result<VerificationReport> {
    let top = g_max.min(MGCT_EXACT_MAX);
    let mut report = VerificationReport::new("cor-C").with_range("g_max", top);
    let table = match MgctTable::up_to(top) {
        Ok(t) => t,
        Err(e) => {
            report.fail(json!({"error": e.to_string()}));
            return Ok(report);
        }
    };
    for g in 2..=top {
        let v = table.get(g).expect("in range");
        if v != mgct_closed_form(g) {
            report.fail(json!({"g": g, "recursion": v, "closed_form": mgct_closed_form(g)}));
        }
        if g >= 4 && dmax(g)? >= mgct_closed_form(g) {
            report.fail(json!({"g": g, "dmax": dmax(g)?, "closed_form": mgct_closed_form(g)}));
        }
        report
            .witnesses
            .push(json!({"g": g, "value": v, "splits": table.maximizing_splits(g)}));
    }
    let first_failure = (4..).find(|&g| dmax(g).is_ok_and(|d| d >= mgct_closed_form(g)));
    if let Some(g) = first_failure {
        report.witnesses.push(json!({
            "hypothesis_fails_at": g, "dmax": dmax(g)?, "closed_form": mgct_closed_form(g),
        }));
    }
    Ok(report)
}
