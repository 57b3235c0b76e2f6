use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::{Poly, Rational};

/// Closed rational interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    lo: Rational,
    hi: Rational,
}

impl RationalInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// A simple real root of `poly` strictly inside `enclosure`. The polynomial
/// takes nonzero values of opposite sign at the two enclosure endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    poly: Poly,
    enclosure: RationalInterval,
}

impl IsolatedRoot {
    pub fn new(poly: Poly, enclosure: RationalInterval) -> Self {
        let (a, b) = (poly.sign_at(enclosure.lo()), poly.sign_at(enclosure.hi()));
        assert!(a * b < 0, "enclosure does not bracket a sign change");
        IsolatedRoot { poly, enclosure }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn enclosure(&self) -> &RationalInterval {
        &self.enclosure
    }

    /// Halves the enclosure. Returns the root if the midpoint hits it.
    fn bisect(&mut self) -> Option<Rational> {
        let mid = self.enclosure.midpoint();
        match self.poly.sign_at(&mid) {
            0 => Some(mid),
            s if s == self.poly.sign_at(self.enclosure.lo()) => {
                self.enclosure.lo = mid;
                None
            }
            _ => {
                self.enclosure.hi = mid;
                None
            }
        }
    }

    /// Shrinks the enclosure to width at most `tol`; exact if bisection
    /// happens to land on the root.
    pub(crate) fn refine(mut self, tol: &Rational) -> Endpoint {
        while &self.enclosure.width() > tol {
            if let Some(mid) = self.bisect() {
                return Endpoint::Exact(mid);
            }
        }
        Endpoint::Root(self)
    }

    /// Position of the root relative to `x`.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if x <= self.enclosure.lo() {
            return Ordering::Greater;
        }
        if x >= self.enclosure.hi() {
            return Ordering::Less;
        }
        match self.poly.sign_at(x) {
            0 => Ordering::Equal,
            s if s == self.poly.sign_at(self.enclosure.lo()) => Ordering::Greater,
            _ => Ordering::Less,
        }
    }

    /// A copy whose enclosure excludes `x`, unless the root equals `x`.
    pub fn separated_from(&self, x: &Rational) -> Option<Self> {
        let mut r = self.clone();
        while r.enclosure.contains(x) {
            if r.poly.sign_at(x) == 0 {
                return None;
            }
            if r.bisect().is_some() {
                return None;
            }
        }
        Some(r)
    }
}

/// Boundary point of a sign region.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endpoint {
    Exact(Rational),
    Root(IsolatedRoot),
    Infinity,
}

impl Endpoint {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Endpoint::Exact(v) => Some(v),
            _ => None,
        }
    }

    /// Greatest rational known to be `<=` the point.
    pub fn lower_bound(&self) -> Option<Rational> {
        match self {
            Endpoint::Exact(v) => Some(v.clone()),
            Endpoint::Root(r) => Some(r.enclosure.lo.clone()),
            Endpoint::Infinity => None,
        }
    }

    /// Least rational known to be `>=` the point.
    pub fn upper_bound(&self) -> Option<Rational> {
        match self {
            Endpoint::Exact(v) => Some(v.clone()),
            Endpoint::Root(r) => Some(r.enclosure.hi.clone()),
            Endpoint::Infinity => None,
        }
    }

    /// Position of the point relative to `x`.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        match self {
            Endpoint::Exact(v) => v.cmp(x),
            Endpoint::Root(r) => r.cmp_rational(x),
            Endpoint::Infinity => Ordering::Greater,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Exact(v) => write!(f, "{v}"),
            Endpoint::Root(r) => write!(f, "root in {}", r.enclosure),
            Endpoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Real interval whose ends are exact rationals, certified roots or `+inf`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Endpoint,
    pub hi: Endpoint,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub fn open(lo: Endpoint, hi: Endpoint) -> Self {
        Interval { lo, hi, lo_closed: false, hi_closed: false }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match self.lo.cmp_rational(x) {
            Ordering::Less => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Greater => false,
        };
        let below = match self.hi.cmp_rational(x) {
            Ordering::Greater => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Less => false,
        };
        above && below
    }

    /// A rational strictly inside the interval.
    pub fn sample(&self) -> Rational {
        let left = self.lo.upper_bound().expect("interval starts at infinity");
        match self.hi.lower_bound() {
            None => left + Rational::one(),
            Some(right) if left < right => (left + right) / Rational::from_integer(BigInt::from(2)),
            Some(_) => left,
        }
    }

    /// A rational sample strictly inside, pushed towards the upper end.
    pub fn sample_near_hi(&self, depth: u32) -> Rational {
        let mut x = self.sample();
        if let Some(right) = self.hi.lower_bound() {
            for _ in 0..depth {
                let next = (&x + &right) / Rational::from_integer(BigInt::from(2));
                if !self.contains(&next) || next == x {
                    break;
                }
                x = next;
            }
        }
        x
    }

    /// Intersection with the rational interval from `lo` to `hi`
    /// (`None` for `+inf`), or `None` when empty.
    pub fn clip(&self, lo: &Rational, lo_closed: bool, hi: Option<&Rational>, hi_closed: bool) -> Option<Interval> {
        let (new_lo, new_lo_closed) = match self.lo.cmp_rational(lo) {
            Ordering::Greater => (separate(&self.lo, lo, hi), self.lo_closed),
            Ordering::Less => (Endpoint::Exact(lo.clone()), lo_closed),
            Ordering::Equal => (Endpoint::Exact(lo.clone()), lo_closed && self.lo_closed),
        };
        let (new_hi, new_hi_closed) = match hi {
            None => (separate(&self.hi, lo, None), self.hi_closed),
            Some(h) => match self.hi.cmp_rational(h) {
                Ordering::Less => (separate(&self.hi, lo, hi), self.hi_closed),
                Ordering::Greater => (Endpoint::Exact(h.clone()), hi_closed),
                Ordering::Equal => (Endpoint::Exact(h.clone()), hi_closed && self.hi_closed),
            },
        };
        let nonempty = match (&new_lo, &new_hi) {
            (_, Endpoint::Infinity) => true,
            (Endpoint::Exact(a), Endpoint::Exact(b)) => a < b || (a == b && new_lo_closed && new_hi_closed),
            (Endpoint::Exact(a), other) => other.cmp_rational(a) == Ordering::Greater,
            (other, Endpoint::Exact(b)) => other.cmp_rational(b) == Ordering::Less,
            // both ends come from the same sorted interval
            _ => true,
        };
        nonempty.then_some(Interval {
            lo: new_lo,
            hi: new_hi,
            lo_closed: new_lo_closed,
            hi_closed: new_hi_closed,
        })
    }

    /// Length bound, `None` when unbounded.
    pub fn length_upper_bound(&self) -> Option<Rational> {
        Some(self.hi.upper_bound()? - self.lo.lower_bound()?)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Moves a root enclosure off the clipping points so interior samples stay
/// strictly inside.
fn separate(e: &Endpoint, lo: &Rational, hi: Option<&Rational>) -> Endpoint {
    match e {
        Endpoint::Root(r) => {
            let mut r = r.separated_from(lo).unwrap_or_else(|| r.clone());
            if let Some(h) = hi {
                r = r.separated_from(h).unwrap_or(r);
            }
            Endpoint::Root(r)
        }
        other => other.clone(),
    }
}

/// Pieces of `domain` on which `poly` has sign `want`.
///
/// `roots` must be the sorted real roots of `poly` (any that fall outside
/// the domain interior are dropped). The domain's lower end must be finite.
pub(crate) fn sign_set(poly: &Poly, roots: Vec<Endpoint>, domain: &Interval, want: i8) -> Vec<Interval> {
    let Some(dlo) = domain.lo.exact().cloned() else {
        panic!("domain lower end must be an exact rational");
    };
    let dhi = domain.hi.exact().cloned();
    let mut inner = Vec::new();
    for root in roots {
        let inside_lo = root.cmp_rational(&dlo) == Ordering::Greater;
        let inside_hi = dhi.as_ref().is_none_or(|h| root.cmp_rational(h) == Ordering::Less);
        if !(inside_lo && inside_hi) {
            continue;
        }
        let root = match root {
            Endpoint::Root(r) => {
                let mut r = r.separated_from(&dlo).expect("irrational root equals a rational");
                if let Some(h) = &dhi {
                    r = r.separated_from(h).expect("irrational root equals a rational");
                }
                Endpoint::Root(r)
            }
            other => other,
        };
        inner.push(root);
    }

    let mut points = vec![domain.lo.clone()];
    points.extend(inner);
    points.push(domain.hi.clone());
    let last = points.len() - 2;

    let mut out = Vec::new();
    for (i, pair) in points.windows(2).enumerate() {
        let piece = Interval::open(pair[0].clone(), pair[1].clone());
        if poly.sign_at(&piece.sample()) != want {
            continue;
        }
        let lo_closed = i == 0 && domain.lo_closed && poly.sign_at(&dlo) == want;
        let hi_closed = i == last
            && domain.hi_closed
            && dhi.as_ref().is_some_and(|h| poly.sign_at(h) == want);
        out.push(Interval { lo_closed, hi_closed, ..piece });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn sqrt2_root() -> IsolatedRoot {
        let p = Poly::new(vec![int(-2), int(0), int(1)]);
        IsolatedRoot::new(p, RationalInterval::new(int(1), int(2)))
    }

    #[test]
    fn root_comparison_refines_on_demand() {
        let r = sqrt2_root();
        assert_eq!(r.cmp_rational(&rat(141, 100)), Ordering::Greater);
        assert_eq!(r.cmp_rational(&rat(1415, 1000)), Ordering::Less);
        assert_eq!(r.cmp_rational(&int(3)), Ordering::Less);
    }

    #[test]
    fn separation_moves_bracket_off_a_point() {
        let r = sqrt2_root().separated_from(&rat(7, 5)).unwrap();
        assert!(!r.enclosure().contains(&rat(7, 5)));
    }

    #[test]
    fn sign_set_respects_closed_domain_end() {
        // x - 1 < 0 on (0, 2] -> (0, 1)
        let p = Poly::new(vec![int(-1), int(1)]);
        let dom = Interval { lo: Endpoint::Exact(int(0)), hi: Endpoint::Exact(int(2)), lo_closed: false, hi_closed: true };
        let set = sign_set(&p, vec![Endpoint::Exact(int(1))], &dom, -1);
        assert_eq!(set.len(), 1);
        assert_eq!(set[0].hi, Endpoint::Exact(int(1)));
        // x - 3 < 0 on (0, 2] -> (0, 2]
        let p = Poly::new(vec![int(-3), int(1)]);
        let set = sign_set(&p, vec![Endpoint::Exact(int(3))], &dom, -1);
        assert_eq!(set.len(), 1);
        assert!(set[0].hi_closed);
        assert!(set[0].contains(&int(2)));
    }

    #[test]
    fn interval_display() {
        let iv = Interval::open(Endpoint::Exact(int(0)), Endpoint::Exact(rat(3, 4)));
        assert_eq!(iv.to_string(), "(0, 3/4)");
    }
}
