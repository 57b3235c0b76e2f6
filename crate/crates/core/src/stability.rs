//! Slopes, quotient slopes and destabilisation windows.
//!
//! On a surface with canonical class `K`, polarisation `L` and a curve `Z`,
//!
//! ```text
//! μ(X, L)      = −K·L / L²
//! μ_c(O_Z, L)  = 3(2 L·Z − c(K·Z + Z²)) / (2c(3 L·Z − c Z²))
//! ```
//!
//! and `Z` destabilises `(X, L)` at an admissible `c ∈ (0, ε(Z, L)]` when
//! `μ_c(O_Z, L) < μ(X, L)`. Windows are the exact sets of such `c` (or of
//! the polarisation parameter at fixed `c`), obtained by clearing
//! denominators and analysing the sign of the resulting polynomial.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::numeric::{
    int, quadratic_negativity, sign, sign_of_quadratic_at, sign_set, Endpoint, Interval, Poly, Rational,
};
use crate::positivity::{seshadri_diagonal_boundary, seshadri_lower_bound_d2, AmpleStatus, AmpleVerdict, SeshadriBound};
use crate::surfaces::{kodaira_surface, product_surface, KodairaParams, ProductSurfaceParams, SurfaceModel};

/// `−K·L / L²`.
pub fn slope(x: &SurfaceModel, l: &DivisorClass) -> Result<Rational> {
    let ll = x.pair(l, l)?;
    if ll.is_zero() {
        return Err(Error::DegeneratePolarization);
    }
    Ok(-x.pair(x.canonical(), l)? / ll)
}

/// Quotient slope of the curve class `z` with respect to `l` at parameter `c`.
pub fn quotient_slope(x: &SurfaceModel, z: &DivisorClass, l: &DivisorClass, c: &Rational) -> Result<Rational> {
    if !c.is_positive() {
        return Err(Error::Param(format!("c = {c} must be positive")));
    }
    let lz = x.pair(l, z)?;
    let kz = x.pair(x.canonical(), z)?;
    let zz = x.pair(z, z)?;
    let three = int(3);
    let den = int(2) * c * (&three * &lz - c * &zz);
    if den.is_zero() {
        return Err(Error::DegenerateQuotientSlope);
    }
    Ok(three * (int(2) * lz - c * (kz + zz)) / den)
}

#[derive(Clone, Debug)]
pub struct SlopeReport {
    pub mu_x: Rational,
    pub mu_c_z: Rational,
    pub c: Rational,
    pub seshadri: SeshadriBound,
    /// `c` lies in the certified range `(0, ε_lower]`.
    pub admissible: bool,
    pub destabilized: bool,
    pub surface: String,
    pub polarization: String,
    pub subscheme: String,
    pub notes: Vec<String>,
}

/// Evaluates both slopes and decides destabilisation. Only certified
/// Seshadri lower bounds make `c` admissible.
pub fn destabilizes(
    x: &SurfaceModel,
    z: &DivisorClass,
    l: &DivisorClass,
    c: &Rational,
    seshadri: &SeshadriBound,
) -> Result<SlopeReport> {
    let mu_x = slope(x, l)?;
    let mu_c_z = quotient_slope(x, z, l, c)?;
    let admissible = seshadri.admits(c);
    let mut notes = Vec::new();
    if !admissible {
        notes.push("inadmissible c".to_string());
    }
    Ok(SlopeReport {
        destabilized: admissible && mu_c_z < mu_x,
        mu_x,
        mu_c_z,
        c: c.clone(),
        seshadri: seshadri.clone(),
        admissible,
        surface: surface_label(x),
        polarization: x.describe(l),
        subscheme: x.describe(z),
        notes,
    })
}

fn surface_label(x: &SurfaceModel) -> String {
    use crate::surfaces::SurfaceKind;
    match x.kind() {
        SurfaceKind::Product(p) => format!("CxC (q={})", p.q()),
        SurfaceKind::Cover(p) => format!("BxC (q={}, d={})", p.q(), p.d()),
        SurfaceKind::Kodaira(p) => format!("X2 (q={}, r={}, |G|={}, d={})", p.q(), p.r(), p.group_order(), p.d()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowVariable {
    C,
    S,
    T,
}

impl fmt::Display for WindowVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WindowVariable::C => "c",
            WindowVariable::S => "s",
            WindowVariable::T => "t",
        })
    }
}

/// A union of disjoint intervals of one parameter on which the curve
/// destabilises, with the fixed parameters recorded as context.
#[derive(Clone, Debug)]
pub struct StabilityWindow {
    pub variable: WindowVariable,
    pub intervals: Vec<Interval>,
    pub context: Vec<(String, String)>,
    /// Evaluated on the boundary of the ample cone (a limit statement).
    pub boundary_limit: bool,
}

impl StabilityWindow {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|iv| iv.contains(x))
    }
}

impl fmt::Display for StabilityWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return write!(f, "{} in {{}}", self.variable);
        }
        let parts: Vec<String> = self.intervals.iter().map(ToString::to_string).collect();
        write!(f, "{} in {}", self.variable, parts.join(" U "))
    }
}

/// All admissible `c` with `μ_c(O_Z, L) < μ(X, L)`.
///
/// Clearing `2c(3L·Z − cZ²)` turns the inequality into a quadratic in `c`;
/// the linear factor's sign is tracked piecewise so nothing is lost when it
/// changes sign inside `(0, ε_lower]`.
pub fn instability_window_c(
    x: &SurfaceModel,
    z: &DivisorClass,
    l: &DivisorClass,
    seshadri: &SeshadriBound,
    tol: &Rational,
) -> Result<StabilityWindow> {
    let a = x.pair(l, z)?;
    let b = x.pair(x.canonical(), z)?;
    let cz = x.pair(z, z)?;
    let m = slope(x, l)?;
    let context = vec![
        ("surface".to_string(), surface_label(x)),
        ("polarization".to_string(), x.describe(l)),
        ("subscheme".to_string(), x.describe(z)),
        ("seshadri_lower".to_string(), seshadri.lower.to_string()),
    ];
    let mut window = StabilityWindow { variable: WindowVariable::C, intervals: Vec::new(), context, boundary_limit: false };
    if !seshadri.certified || !seshadri.lower.is_positive() {
        return Ok(window);
    }
    if a.is_zero() && cz.is_zero() {
        return Err(Error::DegenerateQuotientSlope);
    }
    let lower = &seshadri.lower;
    let three_a = int(3) * &a;
    // zero of 3A − cC inside (0, lower] splits the domain
    let cut = (!cz.is_zero())
        .then(|| &three_a / &cz)
        .filter(|c| c.is_positive() && c <= lower);
    let mut pieces = Vec::new();
    match &cut {
        Some(c) if c == lower => pieces.push((Rational::zero(), lower.clone(), false)),
        Some(c) => {
            pieces.push((Rational::zero(), c.clone(), false));
            pieces.push((c.clone(), lower.clone(), true));
        }
        None => pieces.push((Rational::zero(), lower.clone(), true)),
    }

    // numerator of μ_c − μ after clearing 2c(3A − cC)
    let n2 = int(2) * &m * &cz;
    let n1 = -int(3) * (&b + &cz) - int(6) * &m * &a;
    let n0 = int(6) * &a;
    for (lo, hi, hi_closed) in pieces {
        let mid = (&lo + &hi) / int(2);
        let sigma = int(sign(&(&three_a - &mid * &cz)).into());
        let (c2, c1, c0) = (&n2 * &sigma, &n1 * &sigma, &n0 * &sigma);
        if c2.is_zero() && c1.is_zero() && c0.is_zero() {
            continue;
        }
        let profile = quadratic_negativity(&c2, &c1, &c0, tol)?;
        window
            .intervals
            .extend(profile.negativity_set.iter().filter_map(|iv| iv.clip(&lo, false, Some(&hi), hi_closed)));
    }
    Ok(window)
}

/// The `c`-window of the diagonal on `C×C` for `l_q`, the edge of the
/// ample cone that the `s → q⁺` argument evaluates.
pub fn product_boundary_window(params: &ProductSurfaceParams, tol: &Rational) -> Result<StabilityWindow> {
    let x = product_surface(params.clone());
    let l = x.plane_class(&int(params.q().into()), &Rational::one())?;
    let d = x.named("D")?;
    let mut w = instability_window_c(&x, &d, &l, &seshadri_diagonal_boundary(params), tol)?;
    w.boundary_limit = true;
    Ok(w)
}

/// Polynomials in `s` for the intersection numbers of `L(s) = base + s·dir`
/// against `K` and `Z`.
struct AffinePairing {
    lz: Poly,
    kl: Poly,
    ll: Poly,
    kz: Rational,
    zz: Rational,
}

impl AffinePairing {
    fn new(x: &SurfaceModel, base: &DivisorClass, dir: &DivisorClass, z: &DivisorClass) -> Result<Self> {
        let k = x.canonical();
        Ok(AffinePairing {
            lz: Poly::new(vec![x.pair(base, z)?, x.pair(dir, z)?]),
            kl: Poly::new(vec![x.pair(k, base)?, x.pair(k, dir)?]),
            ll: Poly::new(vec![x.pair(base, base)?, int(2) * x.pair(base, dir)?, x.pair(dir, dir)?]),
            kz: x.pair(k, z)?,
            zz: x.pair(z, z)?,
        })
    }

    /// A polynomial with the sign of `μ_c − μ` wherever both are defined.
    fn difference_sign_poly(&self, c: &Rational) -> Poly {
        let numer = self
            .lz
            .scale(&int(6))
            .sub(&Poly::constant(int(3) * c * (&self.kz + &self.zz)));
        let den = self.lz.scale(&int(3)).sub(&Poly::constant(c * &self.zz));
        let f = numer.mul(&self.ll).add(&den.mul(&self.kl).scale(&(int(2) * c)));
        f.mul(&den).mul(&self.ll)
    }
}

/// Exact set of `s ∈ (q, q + extent]` for which the diagonal destabilises
/// `(C×C, l_s)` at the fixed `c`.
pub fn instability_window_s(
    params: &ProductSurfaceParams,
    c: &Rational,
    search_extent: &Rational,
    tol: &Rational,
) -> Result<StabilityWindow> {
    if !c.is_positive() {
        return Err(Error::Param(format!("c = {c} must be positive")));
    }
    let x = product_surface(params.clone());
    let q = int(params.q().into());
    let mut window = StabilityWindow {
        variable: WindowVariable::S,
        intervals: Vec::new(),
        context: vec![
            ("surface".to_string(), surface_label(&x)),
            ("c".to_string(), c.to_string()),
            ("search_extent".to_string(), search_extent.to_string()),
        ],
        boundary_limit: false,
    };
    if !search_extent.is_positive() {
        return Ok(window);
    }
    let hi = &q + search_extent;
    let (mut lo, mut lo_closed) = (q.clone(), false);
    // ε(D, l_s) ≥ 1 always; above 1 admissibility needs an upper bound h on
    // s_C: c ≤ (s + h)/(1 + h)  ⟺  s ≥ c(1 + h) − h.
    if *c > Rational::one() {
        let Some(h) = params.sc_upper() else {
            return Ok(window);
        };
        let s0 = c * (Rational::one() + &h) - &h;
        if s0 > lo {
            lo = s0;
            lo_closed = true;
        }
    }
    if lo > hi {
        return Ok(window);
    }
    let base = x.named("delta_prime")?;
    let dir = x.named("f")?;
    let pairing = AffinePairing::new(&x, &base, &dir, &x.named("D")?)?;
    let p = pairing.difference_sign_poly(c);
    if p.is_zero() {
        return Ok(window);
    }
    let domain = Interval { lo: Endpoint::Exact(lo.clone()), hi: Endpoint::Exact(hi.clone()), lo_closed, hi_closed: true };
    let roots = p.real_roots_in(&lo, &hi, tol);
    window.intervals = sign_set(&p, roots, &domain, -1);
    Ok(window)
}

/// Polarisation families in the `f, δ′` plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `l_s = s·f + δ′`
    Ls,
    /// `L_t = t·f − δ′`
    Lt,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ls => "l",
            Family::Lt => "L",
        })
    }
}

/// `value·f₂ ± δ₂′ + ε·K` on the Kodaira surface.
pub fn x2_polarization(x: &SurfaceModel, family: Family, value: &Rational, eps: &Rational) -> Result<DivisorClass> {
    let sign = match family {
        Family::Ls => Rational::one(),
        Family::Lt => -Rational::one(),
    };
    x.plane_class(value, &sign)?.try_add(&x.canonical().scaled(eps))
}

fn check_eps_nonneg(eps: &Rational) -> Result<()> {
    if eps.is_negative() {
        return Err(Error::Param(format!("eps = {eps} must be non-negative")));
    }
    Ok(())
}

/// Slope of the Kodaira surface for `l_{2,s,ε}` or `L_{2,t,ε}`, with the
/// `ε·K` term kept exactly.
pub fn x2_slope_exact(params: &KodairaParams, family: Family, value: &Rational, eps: &Rational) -> Result<Rational> {
    check_eps_nonneg(eps)?;
    let x = kodaira_surface(params.clone());
    slope(&x, &x2_polarization(&x, family, value, eps)?)
}

/// Quotient slope on the Kodaira surface: of `Z₂` for the `L` family (only
/// at `c = 1`) or of the diagonal pullback `D₂` for the `l` family.
pub fn x2_quotient_slope_exact(
    params: &KodairaParams,
    family: Family,
    value: &Rational,
    eps: &Rational,
    c: &Rational,
) -> Result<Rational> {
    check_eps_nonneg(eps)?;
    let x = kodaira_surface(params.clone());
    let l = x2_polarization(&x, family, value, eps)?;
    let z = match family {
        Family::Lt => {
            params.require_k()?;
            if !c.is_one() {
                return Err(Error::Param("the residual curve Z_2 is only evaluated at c = 1".into()));
            }
            x.named("Z2")?
        }
        Family::Ls => x.named("D2")?,
    };
    quotient_slope(&x, &z, &l, c)
}

/// `c`-window of `D₂` for `l_{2,s,ε}` on the Kodaira surface.
pub fn x2_diagonal_window(params: &KodairaParams, s: &Rational, eps: &Rational, tol: &Rational) -> Result<StabilityWindow> {
    check_eps_nonneg(eps)?;
    let x = kodaira_surface(params.clone());
    let l = x2_polarization(&x, Family::Ls, s, eps)?;
    let d2 = x.named("D2")?;
    let bound = seshadri_lower_bound_d2(params, s, eps)?;
    let mut w = instability_window_c(&x, &d2, &l, &bound, tol)?;
    w.boundary_limit = eps.is_zero() && *s == int(params.q().into());
    w.context.push(("eps".to_string(), eps.to_string()));
    Ok(w)
}

/// Comparison showing the ramification correction keeps `Z₂` destabilising
/// at `t = q/(k−1)`:
///
/// ```text
/// 2(k−1)²/q · ((q/(k−1) + 1)|G| + q − 1)  <  3(k|G| + q − 1)
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityMargin {
    pub lhs: Rational,
    pub rhs: Rational,
    /// `rhs − lhs`
    pub margin: Rational,
    /// `k|G| + q − 1`, which the margin strictly exceeds when `(k−1)² < q`.
    pub chain_bound: Rational,
    pub holds: bool,
}

pub fn residual_inequality_margin(q: u32, k: u32, group_order: u32) -> Result<InequalityMargin> {
    if k < 3 || u64::from(k - 1).pow(2) >= u64::from(q) {
        return Err(Error::Param(format!("need 2 <= k-1 and (k-1)^2 < q, got q={q}, k={k}")));
    }
    if group_order == 0 {
        return Err(Error::Param("|G| must be positive".into()));
    }
    let (q, k, g) = (int(q.into()), int(k.into()), int(group_order.into()));
    let km1 = &k - Rational::one();
    let t = &q / &km1;
    let lhs = int(2) * &km1 * &km1 / &q * ((&t + Rational::one()) * &g + &q - Rational::one());
    let rhs = int(3) * (&k * &g + &q - Rational::one());
    let margin = &rhs - &lhs;
    Ok(InequalityMargin {
        holds: margin.is_positive(),
        chain_bound: k * g + q - Rational::one(),
        lhs,
        rhs,
        margin,
    })
}

/// Ampleness of `α = 2(K·L)L − (L²)K` for `L = l_s` on `C×C`, decided by the
/// sign of `s² − 2qs + q`.
pub fn jflow_threshold(q: u32, s: &Rational) -> Result<AmpleVerdict> {
    let qr = int(q.into());
    if *s <= qr {
        return Err(Error::NotAmplePolarization(format!("l_s with s = {s} <= q = {q}")));
    }
    let verdict = if sign_of_quadratic_at(&Rational::one(), &(int(-2) * &qr), &qr, s) > 0 {
        AmpleVerdict { status: AmpleStatus::Ample, certificate: "s^2 + q > 2qs".into() }
    } else {
        AmpleVerdict { status: AmpleStatus::NotAmple, certificate: "s^2 + q <= 2qs".into() }
    };
    Ok(verdict)
}

/// `α = 2(K·L)L − (L²)K`.
pub fn jflow_alpha(x: &SurfaceModel, l: &DivisorClass) -> Result<DivisorClass> {
    let kl = x.pair(x.canonical(), l)?;
    let ll = x.pair(l, l)?;
    x.linear_combination(&[(int(2) * kl, l), (-ll, x.canonical())])
}
