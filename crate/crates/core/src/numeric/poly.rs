//! Univariate polynomials over the rationals with Sturm-sequence root
//! isolation.
//!
//! Every threshold in the crate is a root of a low-degree polynomial with
//! rational coefficients. Roots are returned either exactly (when rational)
//! or as a bracketing interval whose endpoints have strictly opposite signs.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{sign, Endpoint, IsolatedRoot, Rational, RationalInterval};

/// Dense polynomial, coefficients stored from the constant term upward.
/// The leading coefficient is never zero; the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `x - a`
    pub fn linear_root(a: &Rational) -> Self {
        Poly::new(vec![-a.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Rational) -> i8 {
        sign(&self.eval(x))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Poly) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Poly) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// Euclidean division. Panics when dividing by the zero polynomial.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let lead = divisor.leading().expect("division by zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / lead;
            if !q.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Poly::zero(),
        }
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors (same roots, all simple).
    pub fn square_free(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Integer coefficients with content 1 and the same roots.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &content).collect()
    }

    /// Every real root has absolute value strictly below this bound.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lead) = self.leading() else {
            return Rational::one();
        };
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lead).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        max + Rational::one()
    }

    fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(r.scale(&-Rational::one()));
        }
        seq
    }

    /// Real roots in the closed interval `[a, b]`, sorted ascending.
    ///
    /// Rational roots come back as [`Endpoint::Exact`]; irrational ones as
    /// [`Endpoint::Root`] enclosures of width at most `tol`.
    pub fn real_roots_in(&self, a: &Rational, b: &Rational, tol: &Rational) -> Vec<Endpoint> {
        assert!(a <= b, "empty search interval");
        assert!(tol.is_positive(), "tolerance must be positive");
        let mut sf = self.square_free();
        if sf.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let mut roots = Vec::new();
        for end in [a, b] {
            if sf.degree().unwrap_or(0) > 0 && sf.eval(end).is_zero() {
                roots.push(Endpoint::Exact(end.clone()));
                sf = sf.div_rem(&Poly::linear_root(end)).0;
            }
        }
        if a == b {
            roots.truncate(1);
            return roots;
        }
        if sf.degree().unwrap_or(0) > 0 {
            let sturm = sf.sturm_sequence();
            let lead = sf
                .primitive_integer()
                .last()
                .map(|l| Rational::from_integer(l.abs()))
                .unwrap_or_else(Rational::one);
            let mut stack = vec![(a.clone(), b.clone())];
            while let Some((lo, hi)) = stack.pop() {
                let count = sign_variations(&sturm, &lo) - sign_variations(&sturm, &hi);
                match count.cmp(&1) {
                    Ordering::Less => {}
                    Ordering::Equal => roots.push(isolate_single(&sf, lo, hi, &lead, tol)),
                    Ordering::Greater => {
                        let mid = split_point(&sf, &lo, &hi);
                        stack.push((lo, mid.clone()));
                        stack.push((mid, hi));
                    }
                }
            }
        }
        roots.sort_by_key(|x| x.lower_bound());
        roots
    }
}

fn sign_variations(seq: &[Poly], x: &Rational) -> i64 {
    let mut last = 0i8;
    let mut changes = 0;
    for p in seq {
        let s = p.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// A point strictly inside `(lo, hi)` that is not a root of `p`.
fn split_point(p: &Poly, lo: &Rational, hi: &Rational) -> Rational {
    let width = hi - lo;
    let mut denom = BigInt::from(2);
    loop {
        let candidate = lo + &width / Rational::from_integer(denom.clone());
        if !p.eval(&candidate).is_zero() {
            return candidate;
        }
        denom += 1;
    }
}

/// `p` has exactly one root in `(lo, hi)` and neither endpoint is a root.
fn isolate_single(p: &Poly, mut lo: Rational, mut hi: Rational, lead: &Rational, tol: &Rational) -> Endpoint {
    let lo_sign = p.sign_at(&lo);
    let two = Rational::from_integer(BigInt::from(2));
    // Any rational root has denominator dividing the leading coefficient of
    // the primitive integer form, so once the bracket is shorter than
    // 1/lead it holds at most one such candidate.
    let limit = tol.clone().min(lead.recip());
    while &hi - &lo >= limit {
        let mid = (&lo + &hi) / &two;
        match p.sign_at(&mid) {
            0 => return Endpoint::Exact(mid),
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    let candidate = (&lo * lead).ceil() / lead;
    if candidate < hi && candidate > lo && p.eval(&candidate).is_zero() {
        return Endpoint::Exact(candidate);
    }
    Endpoint::Root(IsolatedRoot::new(p.clone(), RationalInterval::new(lo, hi)))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn p(c: &[(i64, i64)]) -> Poly {
        Poly::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
    }

    #[test]
    fn division_identity() {
        let a = p(&[(1, 1), (0, 1), (-3, 2), (2, 1)]);
        let b = p(&[(-1, 1), (1, 3)]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn square_free_removes_repeats() {
        // (x-1)^2 (x+2)
        let f = p(&[(1, 1), (-1, 1)])
            .mul(&p(&[(-1, 1), (1, 1)]))
            .mul(&p(&[(2, 1), (1, 1)]));
        assert_eq!(f.square_free().degree(), Some(2));
    }

    #[test]
    fn cubic_roots_exact_and_enclosed() {
        // (x - 1/3)(x^2 - 2)
        let f = p(&[(-1, 3), (1, 1)]).mul(&p(&[(-2, 1), (0, 1), (1, 1)]));
        let tol = rat(1, 1_000_000);
        let roots = f.real_roots_in(&rat(-5, 1), &rat(5, 1), &tol);
        assert_eq!(roots.len(), 3);
        assert!(matches!(&roots[1], Endpoint::Exact(v) if *v == rat(1, 3)));
        for r in [&roots[0], &roots[2]] {
            let Endpoint::Root(root) = r else { panic!("expected enclosure") };
            let e = root.enclosure();
            assert!(e.width() <= tol);
            assert!(e.lo() * e.lo() < rat(2, 1) || e.hi() * e.hi() < rat(2, 1));
        }
    }

    #[test]
    fn roots_on_interval_endpoints() {
        let f = p(&[(0, 1), (-1, 1), (1, 1)]); // x(x-1)
        let roots = f.real_roots_in(&rat(0, 1), &rat(1, 1), &rat(1, 100));
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| matches!(r, Endpoint::Exact(_))));
    }

    #[test]
    fn rational_root_with_large_denominator() {
        let f = p(&[(-7, 1), (1000, 1)]).mul(&p(&[(-3, 1), (0, 1), (1, 1)]));
        let roots = f.real_roots_in(&rat(0, 1), &rat(1, 1), &rat(1, 10));
        assert_eq!(roots.len(), 1);
        assert!(matches!(&roots[0], Endpoint::Exact(v) if *v == rat(7, 1000)));
    }
}
