//! Catalog of the irreducible Hermitian symmetric factors that can map to a
//! Siegel upper half-space, together with the complex representation `U`
//! through which they act.
//!
//! Each [`CaseLabel`] carries the integer parameters of its row. Cases I and
//! I' are parameterized directly by `n = rδ`; the division-algebra degree
//! only matters for the no-compact-factor families handled in
//! [`crate::pairs`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith::dmax;
use crate::error::{Error, Result};
use crate::report::{Status, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    A1,
    D4,
    /// `SU(p, n-p)` with its standard representation.
    I {
        p: u64,
        n: u64,
    },
    /// `SU(n-1, 1)` acting on `Λ^c C^n`.
    Iprime {
        n: u64,
        c: u64,
    },
    /// `SO*(2r)`.
    II {
        r: u64,
    },
    /// `Sp(K^{2r})` with a symplectic form.
    III1 {
        r: u64,
    },
    /// `SU(H^r)` with a Hermitian form; same real group as III.1.
    III2 {
        r: u64,
    },
    /// `SO(2p-2, 2)`, half-spin representations.
    IV1Even {
        p: u64,
    },
    /// `SO(2p-1, 2)`, spin representation.
    IV1Odd {
        p: u64,
    },
    /// `SU(H^r)` skew-Hermitian with real group `SO(2r-2, 2)`.
    IV2 {
        r: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DualityType {
    Symplectic,
    Orthogonal,
    #[serde(rename = "NSD")]
    Nsd,
}

impl fmt::Display for DualityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DualityType::Symplectic => "Symplectic",
            DualityType::Orthogonal => "Orthogonal",
            DualityType::Nsd => "NSD",
        })
    }
}

impl CaseLabel {
    /// Row name as used in JSON records and on the command line.
    pub fn case_name(&self) -> &'static str {
        match self {
            CaseLabel::A1 => "A1",
            CaseLabel::D4 => "D4",
            CaseLabel::I { .. } => "I",
            CaseLabel::Iprime { .. } => "Iprime",
            CaseLabel::II { .. } => "II",
            CaseLabel::III1 { .. } => "III1",
            CaseLabel::III2 { .. } => "III2",
            CaseLabel::IV1Even { .. } => "IV1even",
            CaseLabel::IV1Odd { .. } => "IV1odd",
            CaseLabel::IV2 { .. } => "IV2",
        }
    }

    /// Named parameters in declaration order.
    pub fn params(&self) -> Vec<(&'static str, u64)> {
        match *self {
            CaseLabel::A1 | CaseLabel::D4 => vec![],
            CaseLabel::I { p, n } => vec![("p", p), ("n", n)],
            CaseLabel::Iprime { n, c } => vec![("n", n), ("c", c)],
            CaseLabel::II { r } | CaseLabel::III1 { r } | CaseLabel::III2 { r } => {
                vec![("r", r)]
            }
            CaseLabel::IV1Even { p } | CaseLabel::IV1Odd { p } => vec![("p", p)],
            CaseLabel::IV2 { r } => vec![("r", r)],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let violated = match *self {
            CaseLabel::A1 | CaseLabel::D4 => None,
            CaseLabel::I { p, n } => {
                if n < 3 {
                    Some("I requires n >= 3")
                } else if p < 1 || p > n / 2 {
                    Some("I requires 1 <= p <= n/2")
                } else {
                    None
                }
            }
            CaseLabel::Iprime { n, c } => {
                if n < 4 {
                    Some("Iprime requires n >= 4")
                } else if c < 2 || c > n - 2 {
                    Some("Iprime requires 2 <= c <= n-2")
                } else {
                    None
                }
            }
            CaseLabel::II { r } => match r {
                0 | 1 => Some("II requires r >= 2"),
                4 => Some("II requires r != 4"),
                _ => None,
            },
            CaseLabel::III1 { r } if r < 2 => Some("III1 requires r >= 2"),
            CaseLabel::III2 { r } if r < 2 => Some("III2 requires r >= 2"),
            CaseLabel::III1 { .. } | CaseLabel::III2 { .. } => None,
            CaseLabel::IV1Even { p } => match p {
                0..=2 => Some("IV1even requires p >= 3"),
                4 => Some("IV1even requires p != 4"),
                _ => None,
            },
            CaseLabel::IV1Odd { p } if p < 2 => Some("IV1odd requires p >= 2"),
            CaseLabel::IV1Odd { .. } => None,
            CaseLabel::IV2 { r } => match r {
                0..=2 => Some("IV2 requires r >= 3"),
                4 => Some("IV2 requires r != 4"),
                _ => None,
            },
        };
        match violated {
            Some(constraint) => Err(Error::InvalidCase {
                label: self.to_string(),
                constraint,
            }),
            None => Ok(()),
        }
    }

    /// Complex dimension of the Hermitian symmetric space of one real factor.
    pub fn hss_dimension(&self) -> Result<u64> {
        self.validate()?;
        let ovf = || Error::Overflow("hss_dimension");
        Ok(match *self {
            CaseLabel::A1 => 1,
            CaseLabel::D4 => 6,
            CaseLabel::I { p, n } => p.checked_mul(n - p).ok_or_else(ovf)?,
            CaseLabel::Iprime { n, .. } => n - 1,
            CaseLabel::II { r } => r.checked_mul(r - 1).ok_or_else(ovf)? / 2,
            CaseLabel::III1 { r } | CaseLabel::III2 { r } => {
                r.checked_add(1)
                    .and_then(|s| r.checked_mul(s))
                    .ok_or_else(ovf)?
                    / 2
            }
            CaseLabel::IV1Even { p } => p.checked_mul(2).ok_or_else(ovf)? - 2,
            CaseLabel::IV1Odd { p } => p.checked_mul(2).ok_or_else(ovf)? - 1,
            CaseLabel::IV2 { r } => r.checked_mul(2).ok_or_else(ovf)? - 2,
        })
    }

    /// Dimension of the irreducible complex representation `U`.
    pub fn rep_dimension(&self) -> Result<u64> {
        self.validate()?;
        let pow2 = |e: u64| -> Result<u64> {
            u32::try_from(e)
                .ok()
                .and_then(|e| 1u64.checked_shl(e))
                .ok_or(Error::Overflow("rep_dimension"))
        };
        match *self {
            CaseLabel::A1 => Ok(2),
            CaseLabel::D4 => Ok(8),
            CaseLabel::I { n, .. } => Ok(n),
            CaseLabel::Iprime { n, c } => binomial(n, c).ok_or(Error::Overflow("rep_dimension")),
            CaseLabel::II { r } | CaseLabel::III1 { r } | CaseLabel::III2 { r } => {
                r.checked_mul(2).ok_or(Error::Overflow("rep_dimension"))
            }
            CaseLabel::IV1Even { p } => pow2(p - 1),
            CaseLabel::IV1Odd { p } => pow2(p),
            CaseLabel::IV2 { r } => pow2(r - 1),
        }
    }

    pub fn duality_type(&self) -> Result<DualityType> {
        use DualityType::*;
        self.validate()?;
        Ok(match *self {
            CaseLabel::A1 => Symplectic,
            CaseLabel::D4 => Orthogonal,
            CaseLabel::I { .. } => Nsd,
            CaseLabel::Iprime { n, c } => {
                if c.checked_mul(2) != Some(n) {
                    Nsd
                } else if c % 2 == 0 {
                    Orthogonal
                } else {
                    Symplectic
                }
            }
            CaseLabel::II { .. } => Orthogonal,
            CaseLabel::III1 { .. } | CaseLabel::III2 { .. } => Symplectic,
            CaseLabel::IV1Even { p: m } | CaseLabel::IV2 { r: m } => match m % 4 {
                2 => Symplectic,
                0 => Orthogonal,
                _ => Nsd,
            },
            CaseLabel::IV1Odd { p } => match p % 4 {
                0 | 3 => Orthogonal,
                _ => Symplectic,
            },
        })
    }

    /// Compact real factors forced when the ambient group is anisotropic.
    ///
    /// 1 where the relevant form satisfies both the local-global principle
    /// for isotropy and has no non-archimedean obstruction: symmetric forms in
    /// dimension >= 5, Hermitian forms over a CM field in dimension >= 3,
    /// quaternionic Hermitian forms in dimension >= 2, skew-Hermitian
    /// quaternionic forms in dimension >= 4. 0 otherwise; III.1 is always
    /// isotropic so the question does not arise there.
    pub fn min_compact_factors(&self) -> Result<u64> {
        self.validate()?;
        Ok(match *self {
            CaseLabel::A1 | CaseLabel::D4 | CaseLabel::III1 { .. } => 0,
            CaseLabel::I { .. } | CaseLabel::Iprime { .. } => 1,
            CaseLabel::III2 { .. } => 1,
            CaseLabel::IV1Even { .. } | CaseLabel::IV1Odd { .. } => 1,
            CaseLabel::II { r } | CaseLabel::IV2 { r } => u64::from(r >= 4),
        })
    }

    pub fn to_case(&self) -> Result<SatakeCase> {
        Ok(SatakeCase {
            label: *self,
            hss_dim: self.hss_dimension()?,
            rep_dim: self.rep_dimension()?,
            duality: self.duality_type()?,
            min_compact_factors: self.min_compact_factors()?,
        })
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.case_name())?;
        let params = self.params();
        if !params.is_empty() {
            let joined: Vec<String> = params.iter().map(|(_, v)| v.to_string()).collect();
            write!(f, "({})", joined.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for CaseLabel {
    type Err = Error;

    /// Accepts the [`Display`](fmt::Display) form, e.g. `I(3,7)`, `IV1odd(4)`, `D4`.
    /// The label is validated against its row constraint.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, args) = match s.find('(') {
            Some(open) => {
                let inner = s[open + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::Parse(format!("unclosed parameter list in {s:?}")))?;
                let args = inner
                    .split(',')
                    .map(|a| {
                        a.trim()
                            .parse::<u64>()
                            .map_err(|e| Error::Parse(format!("bad parameter {a:?}: {e}")))
                    })
                    .collect::<Result<Vec<u64>>>()?;
                (&s[..open], args)
            }
            None => (s, Vec::new()),
        };
        let want = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(Error::Parse(format!(
                    "{name} takes {k} parameter(s), got {}",
                    args.len()
                )))
            }
        };
        let label = match name {
            "A1" => {
                want(0)?;
                CaseLabel::A1
            }
            "D4" => {
                want(0)?;
                CaseLabel::D4
            }
            "I" => {
                want(2)?;
                CaseLabel::I {
                    p: args[0],
                    n: args[1],
                }
            }
            "Iprime" => {
                want(2)?;
                CaseLabel::Iprime {
                    n: args[0],
                    c: args[1],
                }
            }
            "II" => {
                want(1)?;
                CaseLabel::II { r: args[0] }
            }
            "III1" => {
                want(1)?;
                CaseLabel::III1 { r: args[0] }
            }
            "III2" => {
                want(1)?;
                CaseLabel::III2 { r: args[0] }
            }
            "IV1even" => {
                want(1)?;
                CaseLabel::IV1Even { p: args[0] }
            }
            "IV1odd" => {
                want(1)?;
                CaseLabel::IV1Odd { p: args[0] }
            }
            "IV2" => {
                want(1)?;
                CaseLabel::IV2 { r: args[0] }
            }
            other => return Err(Error::Parse(format!("unknown case {other:?}"))),
        };
        label.validate()?;
        Ok(label)
    }
}

/// Minimal isotypic multiplicity of `U` inside a rational symplectic
/// representation: a non-symplectic `U` must pair with its dual.
pub fn min_multiplicity(duality: DualityType) -> u64 {
    match duality {
        DualityType::Symplectic => 1,
        DualityType::Orthogonal | DualityType::Nsd => 2,
    }
}

fn binomial(n: u64, c: u64) -> Option<u64> {
    if c > n {
        return Some(0);
    }
    let c = c.min(n - c);
    let mut acc: u128 = 1;
    for i in 0..c {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}

/// One catalog row instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SatakeCase {
    pub label: CaseLabel,
    pub hss_dim: u64,
    pub rep_dim: u64,
    pub duality: DualityType,
    pub min_compact_factors: u64,
}

/// JSON record with a fixed field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub case: String,
    pub params: serde_json::Map<String, serde_json::Value>,
    pub hss_dim: u64,
    pub rep_dim: u64,
    pub duality: DualityType,
    pub min_compact_factors: u64,
}

impl SatakeCase {
    pub fn to_record(&self) -> CaseRecord {
        let params = self
            .label
            .params()
            .into_iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        CaseRecord {
            case: self.label.case_name().to_string(),
            params,
            hss_dim: self.hss_dim,
            rep_dim: self.rep_dim,
            duality: self.duality,
            min_compact_factors: self.min_compact_factors,
        }
    }
}

/// Every valid label whose representation has dimension at most
/// `rep_dim_max`, in row order, parameters ascending.
pub fn catalog(rep_dim_max: u64) -> Vec<SatakeCase> {
    let mut labels = Vec::new();
    if rep_dim_max >= 2 {
        labels.push(CaseLabel::A1);
    }
    if rep_dim_max >= 8 {
        labels.push(CaseLabel::D4);
    }
    for n in 3..=rep_dim_max {
        labels.extend((1..=n / 2).map(|p| CaseLabel::I { p, n }));
    }
    let mut n = 4;
    while binomial(n, 2).is_some_and(|b| b <= rep_dim_max) {
        for c in 2..=n - 2 {
            if binomial(n, c).is_some_and(|b| b <= rep_dim_max) {
                labels.push(CaseLabel::Iprime { n, c });
            }
        }
        n += 1;
    }
    let r_max = rep_dim_max / 2;
    labels.extend((2..=r_max).filter(|&r| r != 4).map(|r| CaseLabel::II { r }));
    labels.extend((2..=r_max).map(|r| CaseLabel::III1 { r }));
    labels.extend((2..=r_max).map(|r| CaseLabel::III2 { r }));
    let fits = |l: &CaseLabel| l.rep_dimension().is_ok_and(|d| d <= rep_dim_max);
    labels.extend(
        (3..64)
            .map(|p| CaseLabel::IV1Even { p })
            .filter(|l| l.validate().is_ok())
            .take_while(fits),
    );
    labels.extend((2..64).map(|p| CaseLabel::IV1Odd { p }).take_while(fits));
    labels.extend(
        (3..64)
            .map(|r| CaseLabel::IV2 { r })
            .filter(|l| l.validate().is_ok())
            .take_while(fits),
    );
    labels
        .into_iter()
        .map(|l| l.to_case().expect("catalog labels are valid"))
        .collect()
}

pub fn catalog_json(rep_dim_max: u64) -> String {
    let records: Vec<CaseRecord> = catalog(rep_dim_max)
        .iter()
        .map(SatakeCase::to_record)
        .collect();
    serde_json::to_string_pretty(&records).expect("catalog serializes")
}

/// With at least one compact factor among `k` real factors, a case of
/// dimension `hss` contributes at most `(k-1)·hss`; checks this never exceeds
/// `dmax(k·dim U)` and that equality only occurs for type I with `k = 2`.
pub fn verify_decoupled_bound(rep_dim_max: u64, k_max: u64) -> Result<VerificationReport> {
    let cases = catalog(rep_dim_max);
    let per_case: Vec<(Vec<serde_json::Value>, Vec<serde_json::Value>)> = cases
        .par_iter()
        .map(|case| -> Result<_> {
            let mut bad = Vec::new();
            let mut eq = Vec::new();
            for k in 2..=k_max {
                let lhs = (k - 1)
                    .checked_mul(case.hss_dim)
                    .ok_or(Error::Overflow("verify_decoupled_bound"))?;
                let g = k
                    .checked_mul(case.rep_dim)
                    .ok_or(Error::Overflow("verify_decoupled_bound"))?;
                let rhs = dmax(g)?;
                let type_i_k2 = matches!(case.label, CaseLabel::I { .. }) && k == 2;
                if lhs > rhs || (lhs == rhs && !type_i_k2) {
                    bad.push(json!({
                        "case": case.label.to_string(), "k": k, "d": lhs, "dmax": rhs,
                    }));
                } else if lhs == rhs {
                    eq.push(json!({"case": case.label.to_string(), "k": k, "d": lhs}));
                }
            }
            Ok((bad, eq))
        })
        .collect::<Result<_>>()?;

    let mut report = VerificationReport::new("cor-decoupled")
        .with_range("rep_dim_max", rep_dim_max)
        .with_range("k_max", k_max);
    for (bad, eq) in per_case {
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
    fn hss_examples() {
        assert_eq!(CaseLabel::I { p: 3, n: 7 }.hss_dimension().unwrap(), 12);
        assert_eq!(CaseLabel::III1 { r: 2 }.hss_dimension().unwrap(), 3);
        assert_eq!(CaseLabel::A1.hss_dimension().unwrap(), 1);
        assert_eq!(CaseLabel::D4.hss_dimension().unwrap(), 6);
    }

    #[test]
    fn rep_examples() {
        assert_eq!(
            CaseLabel::Iprime { n: 6, c: 3 }.rep_dimension().unwrap(),
            20
        );
        assert_eq!(CaseLabel::IV1Odd { p: 4 }.rep_dimension().unwrap(), 16);
        assert_eq!(CaseLabel::II { r: 5 }.rep_dimension().unwrap(), 10);
    }

    #[test]
    fn duality_examples() {
        assert_eq!(
            CaseLabel::IV1Even { p: 6 }.duality_type().unwrap(),
            DualityType::Symplectic
        );
        assert_eq!(
            CaseLabel::Iprime { n: 6, c: 3 }.duality_type().unwrap(),
            DualityType::Symplectic
        );
        assert_eq!(
            CaseLabel::Iprime { n: 8, c: 4 }.duality_type().unwrap(),
            DualityType::Orthogonal
        );
        assert_eq!(
            CaseLabel::Iprime { n: 8, c: 3 }.duality_type().unwrap(),
            DualityType::Nsd
        );
        assert_eq!(
            CaseLabel::I { p: 1, n: 3 }.duality_type().unwrap(),
            DualityType::Nsd
        );
        assert_eq!(
            CaseLabel::IV1Odd { p: 3 }.duality_type().unwrap(),
            DualityType::Orthogonal
        );
        assert_eq!(
            CaseLabel::IV1Odd { p: 5 }.duality_type().unwrap(),
            DualityType::Symplectic
        );
        assert_eq!(
            CaseLabel::IV2 { r: 8 }.duality_type().unwrap(),
            DualityType::Orthogonal
        );
        assert_eq!(
            CaseLabel::IV2 { r: 5 }.duality_type().unwrap(),
            DualityType::Nsd
        );
    }

    #[test]
    fn multiplicity() {
        assert_eq!(min_multiplicity(DualityType::Symplectic), 1);
        assert_eq!(min_multiplicity(DualityType::Nsd), 2);
        assert_eq!(min_multiplicity(DualityType::Orthogonal), 2);
    }

    #[test]
    fn invalid_parameters_name_the_constraint() {
        let err = CaseLabel::II { r: 4 }.hss_dimension().unwrap_err();
        assert_eq!(
            err,
            Error::InvalidCase {
                label: "II(4)".into(),
                constraint: "II requires r != 4"
            }
        );
        assert!(CaseLabel::I { p: 2, n: 3 }.validate().is_err());
        assert!(CaseLabel::I { p: 0, n: 3 }.validate().is_err());
        assert!(CaseLabel::Iprime { n: 4, c: 3 }.validate().is_err());
        assert!(CaseLabel::IV1Even { p: 4 }.validate().is_err());
        assert!(CaseLabel::IV2 { r: 4 }.validate().is_err());
        assert!(CaseLabel::IV1Odd { p: 1 }.validate().is_err());
        assert!(CaseLabel::III2 { r: 1 }.validate().is_err());
    }

    #[test]
    fn huge_spin_dimension_overflows_cleanly() {
        assert_eq!(
            CaseLabel::IV1Odd { p: 64 }.rep_dimension(),
            Err(Error::Overflow("rep_dimension"))
        );
        assert_eq!(
            CaseLabel::IV1Odd { p: 63 }.rep_dimension().unwrap(),
            1 << 63
        );
    }

    #[test]
    fn parse_roundtrip_examples() {
        for s in [
            "A1",
            "D4",
            "I(3,7)",
            "Iprime(6,3)",
            "II(5)",
            "III1(2)",
            "IV1even(6)",
            "IV2(3)",
        ] {
            let l: CaseLabel = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert!("I(3)".parse::<CaseLabel>().is_err());
        assert!("I(4,7)".parse::<CaseLabel>().is_err());
        assert!("V(2)".parse::<CaseLabel>().is_err());
        assert!("II(5".parse::<CaseLabel>().is_err());
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(6, 3), Some(20));
        assert_eq!(binomial(10, 0), Some(1));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(60, 30), Some(118_264_581_564_861_424));
        assert_eq!(binomial(70, 35), None);
    }

    #[test]
    fn catalog_invariants() {
        for case in catalog(256) {
            assert!(case.rep_dim >= 2, "{}", case.label);
            assert!(case.hss_dim >= 1, "{}", case.label);
            assert!(case.rep_dim <= 256);
            assert!(case.min_compact_factors <= 1);
        }
    }

    #[test]
    fn record_field_order() {
        let rec = CaseLabel::I { p: 3, n: 7 }.to_case().unwrap().to_record();
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"case":"I","params":{"p":3,"n":7},"hss_dim":12,"rep_dim":7,"duality":"NSD","min_compact_factors":1}"#
        );
    }
}
