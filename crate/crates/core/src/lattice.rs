//! Divisor classes over a named basis and the intersection pairing.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numeric::Rational;

static NEXT_SURFACE_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of one constructed [`SurfaceModel`]. Two models never share an
/// id, even when built from identical parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceId(u64);

impl SurfaceId {
    pub(crate) fn fresh() -> Self {
        SurfaceId(NEXT_SURFACE_ID.fetch_add(1, Ordering::Relaxed))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel(String);

impl BasisLabel {
    pub fn new(name: impl Into<String>) -> Self {
        BasisLabel(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Rational combination of basis classes of one surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorClass {
    surface: SurfaceId,
    coeffs: Vec<Rational>,
}

impl DivisorClass {
    pub fn surface(&self) -> SurfaceId {
        self.surface
    }

    /// Coefficients in basis order.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &Rational) -> DivisorClass {
        DivisorClass {
            surface: self.surface,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn try_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        if self.surface != other.surface {
            return Err(Error::SurfaceMismatch);
        }
        Ok(DivisorClass {
            surface: self.surface,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }
}

/// A finite sublattice of the Néron–Severi group: an ordered basis with a
/// symmetric Gram matrix and a distinguished canonical class.
#[derive(Clone, Debug)]
pub struct Lattice {
    id: SurfaceId,
    basis: Vec<BasisLabel>,
    gram: Vec<Vec<Rational>>,
}

impl Lattice {
    /// Panics if `gram` is not a symmetric square matrix matching `basis`;
    /// constructors in this crate only build valid tables.
    pub fn new(basis: Vec<BasisLabel>, gram: Vec<Vec<Rational>>) -> Self {
        let n = basis.len();
        assert_eq!(gram.len(), n, "Gram matrix size");
        for (i, row) in gram.iter().enumerate() {
            assert_eq!(row.len(), n, "Gram matrix size");
            for (j, entry) in row.iter().enumerate().take(i) {
                assert_eq!(*entry, gram[j][i], "Gram matrix must be symmetric");
            }
        }
        Lattice { id: SurfaceId::fresh(), basis, gram }
    }

    pub fn id(&self) -> SurfaceId {
        self.id
    }

    pub fn basis(&self) -> &[BasisLabel] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    fn index_of(&self, label: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b.as_str() == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn zero(&self) -> DivisorClass {
        DivisorClass { surface: self.id, coeffs: vec![Rational::zero(); self.rank()] }
    }

    /// The class of a single basis element.
    pub fn generator(&self, label: &str) -> Result<DivisorClass> {
        let mut d = self.zero();
        d.coeffs[self.index_of(label)?] = Rational::from_integer(1.into());
        Ok(d)
    }

    /// Class from `(label, coefficient)` pairs; absent labels are zero.
    pub fn class(&self, terms: &[(&str, Rational)]) -> Result<DivisorClass> {
        let mut d = self.zero();
        for (label, c) in terms {
            d.coeffs[self.index_of(label)?] += c;
        }
        Ok(d)
    }

    /// Class with the given coefficient vector in basis order.
    pub fn from_coefficients(&self, coeffs: Vec<Rational>) -> Result<DivisorClass> {
        if coeffs.len() != self.rank() {
            return Err(Error::Param(format!(
                "expected {} coefficients, got {}",
                self.rank(),
                coeffs.len()
            )));
        }
        Ok(DivisorClass { surface: self.id, coeffs })
    }

    fn check(&self, a: &DivisorClass) -> Result<()> {
        if a.surface != self.id {
            return Err(Error::SurfaceMismatch);
        }
        Ok(())
    }

    /// Intersection number `a · b`.
    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rational> {
        self.check(a)?;
        self.check(b)?;
        let mut total = Rational::zero();
        for (i, ai) in a.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                total += ai * bj * &self.gram[i][j];
            }
        }
        Ok(total)
    }

    pub fn self_intersection(&self, a: &DivisorClass) -> Result<Rational> {
        self.pair(a, a)
    }

    /// `Σ cᵢ Dᵢ`; the empty sum is the zero class.
    pub fn linear_combination(&self, terms: &[(Rational, &DivisorClass)]) -> Result<DivisorClass> {
        let mut out = self.zero();
        for (c, d) in terms {
            self.check(d)?;
            for (o, x) in out.coeffs.iter_mut().zip(&d.coeffs) {
                *o += c * x;
            }
        }
        Ok(out)
    }

    /// Renders a class as `2*f + -1*delta_prime` style text.
    pub fn describe(&self, a: &DivisorClass) -> String {
        let terms: Vec<String> = a
            .coeffs
            .iter()
            .zip(&self.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| format!("{c}*{l}"))
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn plane(q: i64) -> Lattice {
        Lattice::new(
            vec![BasisLabel::new("f"), BasisLabel::new("delta_prime")],
            vec![vec![int(2), int(0)], vec![int(0), int(-2 * q)]],
        )
    }

    #[test]
    fn pairing_table() {
        let x = plane(3);
        let f = x.generator("f").unwrap();
        let d = x.generator("delta_prime").unwrap();
        assert_eq!(x.pair(&f, &f).unwrap(), int(2));
        assert_eq!(x.pair(&d, &d).unwrap(), int(-6));
        assert_eq!(x.pair(&f, &d).unwrap(), int(0));
    }

    #[test]
    fn combination_and_self_intersection() {
        let x = plane(2);
        let f = x.generator("f").unwrap();
        let d = x.generator("delta_prime").unwrap();
        let l3 = x.linear_combination(&[(int(3), &f), (int(1), &d)]).unwrap();
        assert_eq!(x.self_intersection(&l3).unwrap(), int(14));
        assert_eq!(x.self_intersection(&x.zero()).unwrap(), int(0));
        assert!(x.linear_combination(&[]).unwrap().is_zero());
        let x3 = plane(3);
        let l5 = x3
            .linear_combination(&[(int(5), &x3.generator("f").unwrap()), (int(1), &x3.generator("delta_prime").unwrap())])
            .unwrap();
        assert_eq!(x3.self_intersection(&l5).unwrap(), int(44));
    }

    #[test]
    fn diagonal_from_change_of_variables() {
        let x = plane(3);
        let delta = x.class(&[("f", int(1)), ("delta_prime", int(1))]).unwrap();
        assert_eq!(x.self_intersection(&delta).unwrap(), int(-4));
        assert_eq!(x.describe(&delta), "1*f + 1*delta_prime");
        assert_eq!(x.describe(&x.zero()), "0");
        assert_eq!(x.class(&[("f", rat(1, 2))]).unwrap().coefficients()[0], rat(1, 2));
    }

    #[test]
    fn mismatch_and_unknown_label() {
        let a = plane(2);
        let b = plane(2);
        let fa = a.generator("f").unwrap();
        let fb = b.generator("f").unwrap();
        assert_eq!(a.pair(&fa, &fb), Err(Error::SurfaceMismatch));
        assert_eq!(a.linear_combination(&[(int(1), &fb)]), Err(Error::SurfaceMismatch));
        assert_eq!(fa.try_add(&fb), Err(Error::SurfaceMismatch));
        assert_eq!(a.generator("Sigma"), Err(Error::UnknownLabel("Sigma".into())));
    }
}
