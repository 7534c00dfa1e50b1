//! Exact ordered-field scalars used by the geometry and PL layers.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact ordered field. Implemented for the `num-rational` ratio types;
/// floating-point types are deliberately absent.
pub trait ExactScalar:
    Clone + Ord + Hash + Debug + Display + Num + Signed + FromPrimitive + FromStr + Send + Sync + 'static
{
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer).unwrap() / Self::from_i64(denom).unwrap()
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Parses `p/q`, an integer, or a decimal such as `-0.25`.
    fn parse_literal(text: &str) -> Option<Self> {
        if let Some((int, frac)) = text.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            let negative = int.starts_with('-');
            let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
            let magnitude = Self::from_str(&digits).ok()?;
            let mut scale = Self::one();
            let ten = Self::from_i64(10)?;
            for _ in 0..frac.len() {
                scale = scale * ten.clone();
            }
            let value = magnitude / scale;
            return Some(if negative { -value } else { value });
        }
        Self::from_str(text).ok()
    }
}

impl ExactScalar for Ratio<BigInt> {}
impl ExactScalar for Ratio<i64> {}
impl ExactScalar for Ratio<i128> {}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn literals() {
        let q = |s: &str| BigRational::parse_literal(s);
        assert_eq!(q("3/2"), Some(BigRational::from_ratio(3, 2)));
        assert_eq!(q("-3/2"), Some(BigRational::from_ratio(-3, 2)));
        assert_eq!(q("4"), Some(BigRational::from_ratio(4, 1)));
        assert_eq!(q("0.5"), Some(BigRational::from_ratio(1, 2)));
        assert_eq!(q("-1.25"), Some(BigRational::from_ratio(-5, 4)));
        assert_eq!(q("1/0"), None);
        assert_eq!(q("x"), None);
        assert_eq!(q("1."), None);
        assert_eq!(Ratio::<i64>::parse_literal("6/4"), Some(Ratio::new(3, 2)));
    }
}
