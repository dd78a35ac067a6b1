//! Utility-model parameters and their key-value file format.

use crate::rational::{format_rational, parse_rational, RationalParseError};
use num::{BigRational, One, Signed, Zero};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamsError {
    #[error("benefit horizon must be at least 2, got {0}")]
    HorizonTooShort(usize),
    #[error("benefit b{0} must be positive")]
    NonPositiveBenefit(usize),
    #[error("benefits must strictly decay with distance: b{0} >= b{1}")]
    NonDecayingBenefits(usize, usize),
    #[error("rent fraction must satisfy 0 <= gamma < 1")]
    RentFractionOutOfRange,
    #[error("link cost must be positive")]
    NonPositiveLinkCost,
    #[error("entry factor must be non-negative")]
    NegativeEntryFactor,
    #[error("entry cap must be positive")]
    ZeroEntryCap,
    #[error("params parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error(transparent)]
    Rational(#[from] RationalParseError),
}

/// Benefit decay vector b1..bD, link cost c, rent fraction gamma, entry
/// factor c0, and the optional entry cap sigma. All values exact rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct UtilityParams {
    benefits: Vec<BigRational>,
    pub link_cost: BigRational,
    pub rent_fraction: BigRational,
    pub entry_factor: BigRational,
    pub entry_cap: Option<usize>,
}

impl UtilityParams {
    pub fn new(
        benefits: Vec<BigRational>,
        link_cost: BigRational,
        rent_fraction: BigRational,
        entry_factor: BigRational,
        entry_cap: Option<usize>,
    ) -> Result<Self, ParamsError> {
        if benefits.len() < 2 {
            return Err(ParamsError::HorizonTooShort(benefits.len()));
        }
        for (i, b) in benefits.iter().enumerate() {
            if !b.is_positive() {
                return Err(ParamsError::NonPositiveBenefit(i + 1));
            }
        }
        for i in 0..benefits.len() - 1 {
            if benefits[i + 1] >= benefits[i] {
                return Err(ParamsError::NonDecayingBenefits(i + 1, i + 2));
            }
        }
        if rent_fraction.is_negative() || rent_fraction >= BigRational::one() {
            return Err(ParamsError::RentFractionOutOfRange);
        }
        if !link_cost.is_positive() {
            return Err(ParamsError::NonPositiveLinkCost);
        }
        if entry_factor.is_negative() {
            return Err(ParamsError::NegativeEntryFactor);
        }
        if entry_cap == Some(0) {
            return Err(ParamsError::ZeroEntryCap);
        }
        Ok(UtilityParams {
            benefits,
            link_cost,
            rent_fraction,
            entry_factor,
            entry_cap,
        })
    }

    /// Benefit horizon D: distances beyond it yield no benefit and no rent.
    pub fn horizon(&self) -> usize {
        self.benefits.len()
    }

    /// Benefit at the given distance; `None` beyond the horizon or at
    /// distances < 1.
    pub fn benefit(&self, distance: usize) -> Option<&BigRational> {
        if distance == 0 {
            None
        } else {
            self.benefits.get(distance - 1)
        }
    }

    pub fn benefits(&self) -> &[BigRational] {
        &self.benefits
    }

    pub fn with_link_cost(&self, c: BigRational) -> Result<Self, ParamsError> {
        UtilityParams::new(
            self.benefits.clone(),
            c,
            self.rent_fraction.clone(),
            self.entry_factor.clone(),
            self.entry_cap,
        )
    }

    pub fn with_rent_fraction(&self, gamma: BigRational) -> Result<Self, ParamsError> {
        UtilityParams::new(
            self.benefits.clone(),
            self.link_cost.clone(),
            gamma,
            self.entry_factor.clone(),
            self.entry_cap,
        )
    }

    pub fn with_entry_factor(&self, c0: BigRational) -> Result<Self, ParamsError> {
        UtilityParams::new(
            self.benefits.clone(),
            self.link_cost.clone(),
            self.rent_fraction.clone(),
            c0,
            self.entry_cap,
        )
    }

    pub fn with_entry_cap(&self, sigma: Option<usize>) -> Result<Self, ParamsError> {
        UtilityParams::new(
            self.benefits.clone(),
            self.link_cost.clone(),
            self.rent_fraction.clone(),
            self.entry_factor.clone(),
            sigma,
        )
    }

    /// Parses the key-value format:
    ///
    /// ```text
    /// b = 1, 1/2, 3/10, 1/5
    /// c = 3/5
    /// gamma = 1/10
    /// c0 = 0.1
    /// sigma = 10
    /// ```
    ///
    /// `sigma` is optional; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self, ParamsError> {
        let mut benefits: Option<Vec<BigRational>> = None;
        let mut c: Option<BigRational> = None;
        let mut gamma: Option<BigRational> = None;
        let mut c0: Option<BigRational> = None;
        let mut sigma: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ParamsError::Parse {
                line: idx + 1,
                reason: "expected `key = value`".into(),
            })?;
            let key = key.trim();
            let value = value.trim();
            let parse_one = |v: &str| -> Result<BigRational, ParamsError> {
                parse_rational(v).map_err(|e| ParamsError::Parse {
                    line: idx + 1,
                    reason: e.to_string(),
                })
            };
            match key {
                "b" => {
                    let list: Result<Vec<BigRational>, ParamsError> =
                        value.split(',').map(|v| parse_one(v.trim())).collect();
                    benefits = Some(list?);
                }
                "c" => c = Some(parse_one(value)?),
                "gamma" => gamma = Some(parse_one(value)?),
                "c0" => c0 = Some(parse_one(value)?),
                "sigma" => {
                    sigma = Some(value.parse::<usize>().map_err(|_| ParamsError::Parse {
                        line: idx + 1,
                        reason: format!("invalid sigma `{value}`"),
                    })?)
                }
                other => {
                    return Err(ParamsError::Parse {
                        line: idx + 1,
                        reason: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        UtilityParams::new(
            benefits.ok_or(ParamsError::MissingField("b"))?,
            c.ok_or(ParamsError::MissingField("c"))?,
            gamma.ok_or(ParamsError::MissingField("gamma"))?,
            c0.ok_or(ParamsError::MissingField("c0"))?,
            sigma,
        )
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        let b: Vec<String> = self.benefits.iter().map(format_rational).collect();
        let _ = writeln!(out, "b = {}", b.join(", "));
        let _ = writeln!(out, "c = {}", format_rational(&self.link_cost));
        let _ = writeln!(out, "gamma = {}", format_rational(&self.rent_fraction));
        let _ = writeln!(out, "c0 = {}", format_rational(&self.entry_factor));
        if let Some(s) = self.entry_cap {
            let _ = writeln!(out, "sigma = {s}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn p_star() -> UtilityParams {
        UtilityParams::new(
            vec![rat(1), frac(1, 2), frac(3, 10), frac(1, 5)],
            frac(3, 5),
            frac(1, 10),
            frac(1, 10),
            None,
        )
        .unwrap()
    }

    #[test]
    fn accepts_reference_point() {
        let p = p_star();
        assert_eq!(p.horizon(), 4);
        assert_eq!(p.benefit(2), Some(&frac(1, 2)));
        assert_eq!(p.benefit(5), None);
        assert_eq!(p.benefit(0), None);
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(matches!(
            UtilityParams::new(vec![rat(1)], rat(1), rat(0), rat(0), None),
            Err(ParamsError::HorizonTooShort(1))
        ));
        assert!(matches!(
            UtilityParams::new(vec![rat(1), rat(1)], rat(1), rat(0), rat(0), None),
            Err(ParamsError::NonDecayingBenefits(1, 2))
        ));
        assert!(matches!(
            UtilityParams::new(vec![rat(1), frac(1, 2)], rat(1), rat(1), rat(0), None),
            Err(ParamsError::RentFractionOutOfRange)
        ));
        assert!(matches!(
            UtilityParams::new(vec![rat(1), frac(1, 2)], rat(0), rat(0), rat(0), None),
            Err(ParamsError::NonPositiveLinkCost)
        ));
        assert!(matches!(
            UtilityParams::new(vec![rat(1), frac(1, 2)], rat(1), rat(0), rat(-1), None),
            Err(ParamsError::NegativeEntryFactor)
        ));
        assert!(matches!(
            UtilityParams::new(vec![rat(1), frac(1, 2)], rat(1), rat(0), rat(0), Some(0)),
            Err(ParamsError::ZeroEntryCap)
        ));
    }

    #[test]
    fn file_round_trip() {
        let text = "# reference point\nb = 1, 1/2, 3/10, 1/5\nc = 3/5\ngamma = 0.1\nc0 = 1/10\n";
        let p = UtilityParams::parse(text).unwrap();
        assert_eq!(p, p_star());
        let back = UtilityParams::parse(&p.to_file_string()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = UtilityParams::parse("b = 1, 1/2\nc = 1/0\ngamma = 0\nc0 = 0\n").unwrap_err();
        assert!(matches!(err, ParamsError::Parse { line: 2, .. }));
        assert!(matches!(
            UtilityParams::parse("c = 1\ngamma = 0\nc0 = 0\n"),
            Err(ParamsError::MissingField("b"))
        ));
        assert!(matches!(
            UtilityParams::parse("b = 1, 1/2\nc = 1\ngamma = 0\nc0 = 0\nwat = 3\n"),
            Err(ParamsError::Parse { line: 5, .. })
        ));
    }
}
