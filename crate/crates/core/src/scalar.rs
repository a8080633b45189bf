//! Scalar types used for densities and margins.
//!
//! Every threshold decision in this crate is made over exact rationals. The
//! [`Scalar`] trait exists so that density tables can also be materialized in
//! other number types (big rationals for very large graphs, floats for
//! plotting) without duplicating the counting code.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed};

use crate::error::{Error, Result};

/// A number type that densities can be expressed in.
pub trait Scalar: Num + Clone + PartialOrd + Debug {
    /// `numerator / denominator`; `denominator` is nonzero.
    fn from_counts(numerator: u64, denominator: u64) -> Self;

    /// True when values of this type compare without rounding.
    const EXACT: bool;
}

impl Scalar for Ratio<i64> {
    fn from_counts(numerator: u64, denominator: u64) -> Self {
        Ratio::new(numerator as i64, denominator as i64)
    }
    const EXACT: bool = true;
}

impl Scalar for Ratio<i128> {
    fn from_counts(numerator: u64, denominator: u64) -> Self {
        Ratio::new(numerator as i128, denominator as i128)
    }
    const EXACT: bool = true;
}

impl Scalar for BigRational {
    fn from_counts(numerator: u64, denominator: u64) -> Self {
        Ratio::new(BigInt::from(numerator), BigInt::from(denominator))
    }
    const EXACT: bool = true;
}

impl Scalar for f64 {
    fn from_counts(numerator: u64, denominator: u64) -> Self {
        numerator as f64 / denominator as f64
    }
    const EXACT: bool = false;
}

impl Scalar for f32 {
    fn from_counts(numerator: u64, denominator: u64) -> Self {
        (numerator as f64 / denominator as f64) as f32
    }
    const EXACT: bool = false;
}

/// The exact rational type used throughout the crate.
pub type Rational = Ratio<i128>;

pub fn ratio(numerator: i128, denominator: i128) -> Rational {
    Rational::new(numerator, denominator)
}

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn format_ratio(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    let (numer, denom) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let numer: i128 = numer.parse().map_err(|_| bad())?;
    let denom: i128 = denom.parse().map_err(|_| bad())?;
    if denom == 0 {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Compares `value` with the golden ratio section `τ = (√5 − 1)/2`, the
/// positive root of `x² + x = 1`, without any rounding.
///
/// For `x ≥ 0` the map `x ↦ x² + x` is strictly increasing, so the sign of
/// `x² + x − 1` decides the comparison.
pub fn cmp_golden(value: &Rational) -> Ordering {
    if !value.is_positive() {
        return Ordering::Less;
    }
    let lhs = value * value + value;
    lhs.cmp(&Rational::one())
}

/// `(k − 2)/(k − 1)`, the clique threshold density for `K^k`.
pub fn turan_density(k: usize) -> Rational {
    assert!(k >= 2, "clique size must be at least 2");
    ratio(k as i128 - 2, k as i128 - 1)
}

pub fn half() -> Rational {
    ratio(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_always_has_denominator() {
        assert_eq!(format_ratio(&ratio(1, 1)), "1/1");
        assert_eq!(format_ratio(&ratio(0, 5)), "0/1");
        assert_eq!(format_ratio(&ratio(6, 8)), "3/4");
    }

    #[test]
    fn parse_accepts_both_forms() {
        assert_eq!(parse_ratio("5/9").unwrap(), ratio(5, 9));
        assert_eq!(parse_ratio(" 2 ").unwrap(), ratio(2, 1));
        assert_eq!(parse_ratio("4/8").unwrap(), ratio(1, 2));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("0.5").is_err());
    }

    #[test]
    fn golden_comparison_is_exact() {
        assert_eq!(cmp_golden(&ratio(6180, 10000)), Ordering::Less);
        assert_eq!(cmp_golden(&ratio(6181, 10000)), Ordering::Greater);
        assert_eq!(cmp_golden(&ratio(1, 2)), Ordering::Less);
        assert_eq!(cmp_golden(&ratio(5, 8)), Ordering::Greater);
        assert_eq!(cmp_golden(&ratio(0, 1)), Ordering::Less);
        // Consecutive Fibonacci ratios alternate around τ.
        assert_eq!(cmp_golden(&ratio(55, 89)), Ordering::Less);
        assert_eq!(cmp_golden(&ratio(89, 144)), Ordering::Greater);
    }

    #[test]
    fn float_and_exact_scalars_agree_on_simple_counts() {
        assert_eq!(<f64 as Scalar>::from_counts(5, 9), 5.0 / 9.0);
        assert_eq!(<Ratio<i64> as Scalar>::from_counts(6, 9), Ratio::new(2, 3));
        assert_eq!(
            <BigRational as Scalar>::from_counts(3, 6),
            BigRational::new(1.into(), 2.into())
        );
    }

    #[test]
    fn turan_density_values() {
        assert_eq!(turan_density(3), half());
        assert_eq!(turan_density(4), ratio(2, 3));
        assert_eq!(turan_density(5), ratio(3, 4));
    }
}
