//! Exact scalars, certified root enclosures and sign analysis of the
//! polynomial inequalities that every stability threshold reduces to.
//!
//! Nothing here touches floating point. An irrational threshold is carried
//! as an [`IsolatedRoot`]: a square-free polynomial together with a rational
//! bracket on which it changes sign. Comparisons against rationals are
//! decided by sign evaluation, never by approximating a radical.

mod interval;
mod poly;

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub(crate) use interval::sign_set;
pub use interval::{Endpoint, Interval, IsolatedRoot, RationalInterval};
pub use poly::Poly;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// `n / d` in lowest terms.
pub fn reduce(n: i64, d: i64) -> Result<Rational> {
    if d == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(BigInt::from(n), BigInt::from(d)))
}

/// Shorthand for literals. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    reduce(n, d).expect("literal rational with zero denominator")
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Sign as `-1`, `0` or `+1`.
pub fn sign(x: &Rational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Default width of irrational root enclosures.
pub fn default_tolerance() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(10u64.pow(9)))
}

/// Parses `"n"`, `"n/d"` or a finite decimal such as `"2.01"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::Parse(s.to_string());
    if let Some((num, den)) = t.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{whole}{frac}");
        let n = BigInt::from_str(&digits).map_err(|_| err())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(n, d));
    }
    BigInt::from_str(t).map(Rational::from_integer).map_err(|_| err())
}

/// Canonical text form: `"n"` for integers, `"n/d"` otherwise.
pub fn render(x: &Rational) -> String {
    x.to_string()
}

/// Exact sign of `a2 x^2 + a1 x + a0`.
pub fn sign_of_quadratic_at(a2: &Rational, a1: &Rational, a0: &Rational, x: &Rational) -> i8 {
    sign(&(a2 * x * x + a1 * x + a0))
}

/// The set of positive `x` where a quadratic is strictly negative.
#[derive(Clone, Debug)]
pub struct QuadraticSignProfile {
    pub coefficients: [Rational; 3],
    pub negativity_set: Vec<Interval>,
}

impl QuadraticSignProfile {
    pub fn poly(&self) -> Poly {
        let [a2, a1, a0] = self.coefficients.clone();
        Poly::new(vec![a0, a1, a2])
    }

    pub fn is_empty(&self) -> bool {
        self.negativity_set.is_empty()
    }
}

/// Exact description of `{x > 0 : a2 x^2 + a1 x + a0 < 0}`.
///
/// Rational roots (perfect-square discriminant) are returned exactly;
/// irrational ones are bisected down to width `tol`.
pub fn quadratic_negativity(
    a2: &Rational,
    a1: &Rational,
    a0: &Rational,
    tol: &Rational,
) -> Result<QuadraticSignProfile> {
    if a2.is_zero() && a1.is_zero() && a0.is_zero() {
        return Err(Error::DegenerateInequality);
    }
    if !tol.is_positive() {
        return Err(Error::Param("tolerance must be positive".into()));
    }
    let poly = Poly::new(vec![a0.clone(), a1.clone(), a2.clone()]);
    let roots = quadratic_roots(&poly, tol);
    let domain = Interval::open(Endpoint::Exact(Rational::zero()), Endpoint::Infinity);
    let negativity_set = interval::sign_set(&poly, roots, &domain, -1);
    Ok(QuadraticSignProfile {
        coefficients: [a2.clone(), a1.clone(), a0.clone()],
        negativity_set,
    })
}

/// Real roots of a polynomial of degree at most two, ascending.
fn quadratic_roots(poly: &Poly, tol: &Rational) -> Vec<Endpoint> {
    let c = poly.coeffs();
    match poly.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => vec![Endpoint::Exact(-&c[0] / &c[1])],
        _ => {
            let (a0, a1, a2) = (&c[0], &c[1], &c[2]);
            let disc = a1 * a1 - Rational::from_integer(BigInt::from(4)) * a2 * a0;
            let two_a2 = a2 * Rational::from_integer(BigInt::from(2));
            let vertex = -a1 / &two_a2;
            match sign(&disc) {
                -1 => Vec::new(),
                0 => vec![Endpoint::Exact(vertex)],
                _ => {
                    if let Some(root) = rational_sqrt(&disc) {
                        let half = root / two_a2.abs();
                        vec![
                            Endpoint::Exact(&vertex - &half),
                            Endpoint::Exact(&vertex + &half),
                        ]
                    } else {
                        // |root - vertex| = sqrt(disc) / |2 a2| < (disc + 1) / |2 a2|
                        let reach = (&disc + Rational::from_integer(BigInt::from(1))) / two_a2.abs();
                        let left = RationalInterval::new(&vertex - &reach, vertex.clone());
                        let right = RationalInterval::new(vertex.clone(), &vertex + &reach);
                        vec![
                            IsolatedRoot::new(poly.clone(), left).refine(tol),
                            IsolatedRoot::new(poly.clone(), right).refine(tol),
                        ]
                    }
                }
            }
        }
    }
}

/// Exact square root of a non-negative rational, if it is rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(6, -8).unwrap(), rat(-3, 4));
        let r = reduce(6, -8).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), (BigInt::from(-3), BigInt::from(4)));
        assert_eq!(reduce(0, 5).unwrap(), Rational::zero());
        assert_eq!(*reduce(0, 5).unwrap().denom(), BigInt::one());
        assert_eq!(reduce(256, 1).unwrap(), int(256));
        assert_eq!(reduce(1, 0), Err(Error::DivisionByZero));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("201/100").unwrap(), rat(201, 100));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("2.01").unwrap(), rat(201, 100));
        assert_eq!(parse_rational(" 4/-6 ").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
        assert_eq!(render(&rat(10, 4)), "5/2");
        assert_eq!(render(&int(-7)), "-7");
    }

    #[test]
    fn linear_inequality_has_exact_endpoint() {
        let tol = default_tolerance();
        let prof = quadratic_negativity(&int(0), &int(2), &rat(-3, 2), &tol).unwrap();
        assert_eq!(prof.negativity_set.len(), 1);
        let iv = &prof.negativity_set[0];
        assert_eq!(iv.lo, Endpoint::Exact(int(0)));
        assert_eq!(iv.hi, Endpoint::Exact(rat(3, 4)));
        assert!(!iv.lo_closed && !iv.hi_closed);
    }

    #[test]
    fn sqrt_two_enclosure() {
        let tol = default_tolerance();
        let prof = quadratic_negativity(&int(1), &int(0), &int(-2), &tol).unwrap();
        assert_eq!(prof.negativity_set.len(), 1);
        let iv = &prof.negativity_set[0];
        assert_eq!(iv.lo, Endpoint::Exact(int(0)));
        let Endpoint::Root(root) = &iv.hi else { panic!("expected enclosure") };
        let e = root.enclosure();
        assert!(e.width() <= tol);
        // independent bracket check: lo^2 < 2 < hi^2
        assert!(e.lo() * e.lo() < int(2) && e.hi() * e.hi() > int(2));
    }

    #[test]
    fn positive_definite_is_never_negative() {
        let prof = quadratic_negativity(&int(1), &int(0), &int(1), &default_tolerance()).unwrap();
        assert!(prof.is_empty());
    }

    #[test]
    fn degenerate_and_bad_tolerance() {
        let z = int(0);
        assert_eq!(
            quadratic_negativity(&z, &z, &z, &default_tolerance()).unwrap_err(),
            Error::DegenerateInequality
        );
        assert!(quadratic_negativity(&int(1), &z, &z, &z).is_err());
    }

    #[test]
    fn negative_leading_coefficient_is_unbounded() {
        // -(x-1)(x-3): negative on (0,1) and (3, inf)
        let prof = quadratic_negativity(&int(-1), &int(4), &int(-3), &default_tolerance()).unwrap();
        assert_eq!(prof.negativity_set.len(), 2);
        assert_eq!(prof.negativity_set[0].hi, Endpoint::Exact(int(1)));
        assert_eq!(prof.negativity_set[1].lo, Endpoint::Exact(int(3)));
        assert_eq!(prof.negativity_set[1].hi, Endpoint::Infinity);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(sign_of_quadratic_at(&int(1), &int(-4), &int(2), &int(4)), 1);
        assert_eq!(sign_of_quadratic_at(&int(1), &int(-4), &int(2), &int(3)), -1);
        assert_eq!(sign_of_quadratic_at(&int(1), &int(0), &int(0), &int(0)), 0);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-60i64..60, 1i64..25).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in small_rational(), b in small_rational(), c in small_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            let s = &a + &b;
            prop_assert!(s.denom().is_positive());
            prop_assert_eq!(num_integer::Integer::gcd(s.numer(), s.denom()) , if s.is_zero() { s.denom().clone() } else { BigInt::one() });
        }

        #[test]
        fn negativity_set_is_exact(a2 in small_rational(), a1 in small_rational(), a0 in small_rational()) {
            prop_assume!(!(a2.is_zero() && a1.is_zero() && a0.is_zero()));
            let tol = rat(1, 1_000_000);
            let prof = quadratic_negativity(&a2, &a1, &a0, &tol).unwrap();
            let q = |x: &Rational| sign_of_quadratic_at(&a2, &a1, &a0, x);
            let nudge = rat(1, 1_000_000_000);
            for iv in &prof.negativity_set {
                prop_assert_eq!(q(&iv.sample()), -1);
                for (end, outward) in [(&iv.lo, -1i64), (&iv.hi, 1)] {
                    match end {
                        Endpoint::Exact(v) => {
                            let out = v + &nudge * int(outward);
                            if out.is_positive() {
                                prop_assert!(q(&out) >= 0);
                            }
                        }
                        Endpoint::Root(r) => {
                            let e = r.enclosure();
                            prop_assert!(e.width() <= tol.clone());
                            prop_assert!(q(e.lo()) * q(e.hi()) <= 0);
                        }
                        Endpoint::Infinity => {}
                    }
                }
            }
        }
    }
}
