//! Genus ranges as written on the command line: `a..b` (inclusive) or a
//! single `g`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusRange {
    pub start: u64,
    pub end: u64,
}

impl GenusRange {
    pub fn new(start: u64, end: u64) -> Result<Self> {
        if start > end {
            return Err(Error::Parse(format!("empty range {start}..{end}")));
        }
        Ok(GenusRange { start, end })
    }

    pub fn single(g: u64) -> Self {
        GenusRange { start: g, end: g }
    }

    pub fn len(&self) -> u64 {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<u64> {
        self.start..=self.end
    }
}

impl fmt::Display for GenusRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.start == self.end {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

fn parse_genus(s: &str) -> Result<u64> {
    let t = s.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!(
            "expected a non-negative integer, got {s:?}"
        )));
    }
    t.parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

impl FromStr for GenusRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                GenusRange::new(parse_genus(a)?, parse_genus(b)?)
            }
            None => Ok(GenusRange::single(parse_genus(s)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        assert_eq!(
            "16..18".parse::<GenusRange>().unwrap(),
            GenusRange::new(16, 18).unwrap()
        );
        assert_eq!("16..=18".parse::<GenusRange>().unwrap().len(), 3);
        assert_eq!("7".parse::<GenusRange>().unwrap(), GenusRange::single(7));
        assert_eq!(
            " 3 .. 4 "
                .parse::<GenusRange>()
                .unwrap()
                .iter()
                .collect::<Vec<_>>(),
            vec![3, 4]
        );
    }

    #[test]
    fn rejects() {
        for bad in [
            "",
            "..",
            "5..3",
            "-1",
            "a..b",
            "1..2..3",
            "+4",
            "99999999999999999999",
        ] {
            assert!(bad.parse::<GenusRange>().is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trips() {
        for s in ["4", "16..18"] {
            assert_eq!(s.parse::<GenusRange>().unwrap().to_string(), s);
        }
    }
}
