//! Ordinals below ω^ω in Cantor normal form.
//!
//! Used as the run clock: a successor step adds 1, a certified limit phase of
//! depth `m` adds ω^m. Display form is `w^2*3 + w + 4`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("CNF terms must have strictly decreasing exponents and positive coefficients")]
    NotNormal,
    #[error("malformed ordinal {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// `Σ ω^exponent · coefficient` with strictly decreasing exponents.
/// The empty sum is 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(u32, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::finite(1)
    }

    pub fn omega() -> Self {
        Self::omega_pow(1)
    }

    pub fn omega_pow(k: u32) -> Self {
        Ordinal {
            terms: vec![(k, 1)],
        }
    }

    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![(0, n)],
            }
        }
    }

    pub fn from_terms(terms: Vec<(u32, u64)>) -> Result<Self, OrdinalError> {
        let decreasing = terms.windows(2).all(|w| w[0].0 > w[1].0);
        if !decreasing || terms.iter().any(|t| t.1 == 0) {
            return Err(OrdinalError::NotNormal);
        }
        Ok(Ordinal { terms })
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.degree() == 0
    }

    pub fn is_limit(&self) -> bool {
        matches!(self.terms.last(), Some(&(e, _)) if e > 0)
    }

    /// Leading exponent; 0 for finite ordinals including 0.
    pub fn degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0)
    }

    /// True for ordinals of the form ω^k (including ω^0 = 1).
    pub fn is_omega_power(&self) -> Option<u32> {
        match self.terms.as_slice() {
            [(e, 1)] => Some(*e),
            _ => None,
        }
    }

    pub fn successor(&self) -> Self {
        self.add(&Self::one())
    }

    /// Ordinal sum `self + rhs`. Terms of `self` below the leading exponent of
    /// `rhs` are absorbed.
    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(&(lead, lead_coeff)) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(u32, u64)> = self
            .terms
            .iter()
            .copied()
            .take_while(|t| t.0 >= lead)
            .collect();
        match terms.last_mut() {
            Some(last) if last.0 == lead => {
                last.1 = last
                    .1
                    .checked_add(lead_coeff)
                    .expect("ordinal coefficient overflow");
                terms.extend_from_slice(&rhs.terms[1..]);
            }
            _ => terms.extend_from_slice(&rhs.terms),
        }
        Ordinal { terms }
    }
}

impl Add for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        Ordinal::add(self, rhs)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            match a.0.cmp(&b.0).then(a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "w*{c}")?,
                (e, 1) => write!(f, "w^{e}")?,
                (e, c) => write!(f, "w^{e}*{c}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| OrdinalError::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        if compact == "0" {
            return Ok(Ordinal::zero());
        }
        let mut terms = Vec::new();
        for part in compact.split('+') {
            let num = |s: &str| s.parse::<u64>().map_err(|_| err("bad number"));
            let term = if let Some(rest) = part.strip_prefix('w') {
                let (exp, coeff) = match rest.split_once('*') {
                    Some((e, c)) => (e, num(c)?),
                    None => (rest, 1),
                };
                let exp = match exp.strip_prefix('^') {
                    Some(e) => e.parse::<u32>().map_err(|_| err("bad exponent"))?,
                    None if exp.is_empty() => 1,
                    None => return Err(err("unexpected text after w")),
                };
                (exp, coeff)
            } else {
                (0, num(part)?)
            };
            terms.push(term);
        }
        Ordinal::from_terms(terms).map_err(|_| err("terms not in Cantor normal form"))
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn constructors() {
        assert_eq!(Ordinal::omega_pow(0), Ordinal::one());
        assert_eq!(Ordinal::omega_pow(2).to_string(), "w^2");
        assert!(Ordinal::zero().terms().is_empty());
    }

    #[test]
    fn successor_examples() {
        assert_eq!(Ordinal::omega().successor(), o("w + 1"));
        assert_eq!(Ordinal::zero().successor(), Ordinal::one());
        assert_eq!(o("w^2 + 3").successor(), o("w^2 + 4"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(o("w*2 + 3").add(&Ordinal::omega()), o("w*3"));
        assert_eq!(o("w + 5").add(&Ordinal::zero()), o("w + 5"));
        assert_eq!(
            Ordinal::omega().add(&Ordinal::omega_pow(2)),
            Ordinal::omega_pow(2)
        );
        assert_eq!(Ordinal::one().add(&Ordinal::omega()), Ordinal::omega());
        assert_ne!(Ordinal::omega().add(&Ordinal::one()), Ordinal::omega());
        assert_eq!(
            o("w^3*2 + w + 1").add(&o("w^2*5 + 7")),
            o("w^3*2 + w^2*5 + 7")
        );
    }

    #[test]
    fn compare_and_classify() {
        assert!(Ordinal::omega_pow(2) > o("w*5 + 7"));
        assert!(o("w*3").is_limit());
        assert!(!o("w + 1").is_limit());
        assert!(!Ordinal::zero().is_limit());
        assert_eq!(o("w^2*2 + w + 4").degree(), 2);
        assert_eq!(Ordinal::zero().degree(), 0);
        assert!(o("w^2") < o("w^2 + 1"));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(o("w^2*3 + w*1 + 4").to_string(), "w^2*3 + w + 4");
        assert_eq!(o("w").to_string(), "w");
        assert_eq!(o("0"), Ordinal::zero());
        assert_eq!(o("17"), Ordinal::finite(17));
        for bad in ["", "w + w^2", "w*0", "v", "w^x", "1 + w", "w^2 + "] {
            assert!(bad.parse::<Ordinal>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn rejects_non_normal_terms() {
        assert_eq!(
            Ordinal::from_terms(vec![(1, 1), (2, 1)]),
            Err(OrdinalError::NotNormal)
        );
        assert_eq!(
            Ordinal::from_terms(vec![(1, 0)]),
            Err(OrdinalError::NotNormal)
        );
    }
}
