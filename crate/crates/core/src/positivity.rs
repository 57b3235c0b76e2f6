//! Ampleness tests on the `f, δ′` plane, Seshadri constants of the diagonal
//! and the residual divisor, and the ample-cone section used for plotting.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exec::{map_ordered, ExecMode};
use crate::numeric::{default_tolerance, int, quadratic_negativity, Endpoint, Rational};
use crate::surfaces::{KodairaParams, ProductSurfaceParams, ScMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmpleStatus {
    /// Decided by an if-and-only-if criterion.
    Ample,
    NotAmple,
    /// A sufficient condition holds; there is no matching refutation test.
    AmpleCertified,
    Unknown,
}

impl fmt::Display for AmpleStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmpleStatus::Ample => "Ample",
            AmpleStatus::NotAmple => "NotAmple",
            AmpleStatus::AmpleCertified => "AmpleCertified",
            AmpleStatus::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmpleVerdict {
    pub status: AmpleStatus,
    pub certificate: String,
}

impl AmpleVerdict {
    fn new(status: AmpleStatus, certificate: impl Into<String>) -> Self {
        AmpleVerdict { status, certificate: certificate.into() }
    }

    pub fn is_ample(&self) -> bool {
        matches!(self.status, AmpleStatus::Ample | AmpleStatus::AmpleCertified)
    }
}

/// Certified bounds on a Seshadri constant `ε(Z, L)`.
///
/// `certified == false` means the hypotheses behind the bound failed; the
/// lower bound is then 0 and no `c` counts as admissible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeshadriBound {
    pub lower: Rational,
    pub upper: Option<Rational>,
    pub exact: bool,
    pub certified: bool,
    pub reason: String,
}

impl SeshadriBound {
    pub fn exact(value: Rational, reason: impl Into<String>) -> Self {
        SeshadriBound {
            upper: Some(value.clone()),
            lower: value,
            exact: true,
            certified: true,
            reason: reason.into(),
        }
    }

    pub fn at_least(lower: Rational, upper: Option<Rational>, reason: impl Into<String>) -> Self {
        let exact = upper.as_ref() == Some(&lower);
        SeshadriBound { lower, upper, exact, certified: true, reason: reason.into() }
    }

    pub fn uncertified(reason: impl Into<String>) -> Self {
        SeshadriBound {
            lower: Rational::zero(),
            upper: None,
            exact: false,
            certified: false,
            reason: reason.into(),
        }
    }

    /// `ε(Z, mL) = m·ε(Z, L)`.
    pub fn scaled(&self, m: &Rational) -> Self {
        SeshadriBound {
            lower: &self.lower * m,
            upper: self.upper.as_ref().map(|u| u * m),
            ..self.clone()
        }
    }

    /// `c` lies in `(0, lower]`.
    pub fn admits(&self, c: &Rational) -> bool {
        self.certified && c.is_positive() && *c <= self.lower
    }
}

/// `l_s = s·f + δ′` on `C×C` is ample iff `s > q`.
pub fn ample_ls(q: u32, s: &Rational) -> AmpleVerdict {
    let q = int(q.into());
    if *s > q {
        AmpleVerdict::new(AmpleStatus::Ample, "Nakai: l_s^2 = 2(s^2-q) > 0 and l_s.D = 2s-2q > 0")
    } else {
        AmpleVerdict::new(AmpleStatus::NotAmple, "l_s.D = 2s-2q <= 0 against the diagonal")
    }
}

/// `L_t = t·f − δ′` on `C×C`, ample iff `t > s_C`.
pub fn ample_lt(params: &ProductSurfaceParams, t: &Rational) -> AmpleVerdict {
    let q = int(params.q().into());
    match params.sc_mode() {
        ScMode::BranchedCover { .. } => {
            let sc = params.sc_exact().expect("branched cover has exact s_C");
            if *t > sc {
                AmpleVerdict::new(AmpleStatus::Ample, format!("t > s_C = q/(k-1) = {sc}"))
            } else {
                AmpleVerdict::new(AmpleStatus::NotAmple, format!("t <= s_C = q/(k-1) = {sc}"))
            }
        }
        ScMode::GeneralModuliPerfectSquare => {
            // t > √q  ⟺  t > 0 and t² − q > 0
            if t.is_positive() && t * t > q {
                AmpleVerdict::new(AmpleStatus::Ample, "t > s_C = sqrt(q)")
            } else {
                AmpleVerdict::new(AmpleStatus::NotAmple, "t <= s_C = sqrt(q)")
            }
        }
        ScMode::UserBounds { lo, hi } => {
            if t > hi {
                AmpleVerdict::new(AmpleStatus::Ample, format!("t > upper bound {hi} on s_C"))
            } else if t <= lo {
                AmpleVerdict::new(AmpleStatus::NotAmple, format!("t <= lower bound {lo} on s_C"))
            } else {
                AmpleVerdict::new(AmpleStatus::Unknown, format!("t between s_C bounds [{lo}, {hi}]"))
            }
        }
        ScMode::Unconstrained => {
            if !t.is_positive() || t * t <= q {
                AmpleVerdict::new(AmpleStatus::NotAmple, "L_t^2 = 2(t^2-q) <= 0")
            } else {
                AmpleVerdict::new(AmpleStatus::Unknown, "s_C not known for this curve")
            }
        }
    }
}

/// Ampleness of `a·f + b·δ′` on `C×C`, normalised into the `l_s` family
/// when `b > 0` and the `L_t` family when `b < 0`.
pub fn ample_product_class(params: &ProductSurfaceParams, a: &Rational, b: &Rational) -> AmpleVerdict {
    if b.is_positive() {
        ample_ls(params.q(), &(a / b))
    } else if b.is_negative() {
        ample_lt(params, &(a / -b))
    } else if a.is_positive() {
        AmpleVerdict::new(AmpleStatus::Ample, "positive multiple of f")
    } else {
        AmpleVerdict::new(AmpleStatus::NotAmple, "non-positive multiple of f")
    }
}

fn diagonal_formula(s: &Rational, sc: &Rational) -> Rational {
    (s + sc) / (Rational::one() + sc)
}

/// Seshadri constant of the diagonal for `l_s`, allowing the boundary
/// `s = q` where `l_s − c·D` is still ample for `0 < c < 1`.
fn diagonal_bound(params: &ProductSurfaceParams, s: &Rational) -> SeshadriBound {
    if let Some(sc) = params.sc_exact() {
        return SeshadriBound::exact(diagonal_formula(s, &sc), format!("(s+s_C)/(1+s_C) with s_C = {sc}"));
    }
    // (s + x)/(1 + x) decreases in x for s > 1, so an upper bound on s_C
    // gives a lower bound on the constant and vice versa.
    let lower = match params.sc_upper() {
        Some(hi) => diagonal_formula(s, &hi),
        None => Rational::one(),
    };
    let sc_floor = match params.sc_lower() {
        Some(lo) => lo,
        None => int(num_integer::Roots::sqrt(&params.q()).into()),
    };
    let upper = diagonal_formula(s, &sc_floor);
    SeshadriBound::at_least(lower, Some(upper), "bounds from s_C bounds; l_s - D = (s-1)f is ample")
}

/// `ε(D, l_s) = (s + s_C)/(1 + s_C)` for the diagonal `D`.
pub fn seshadri_diagonal(params: &ProductSurfaceParams, s: &Rational) -> Result<SeshadriBound> {
    if *s <= int(params.q().into()) {
        return Err(Error::NotAmplePolarization(format!("l_s with s = {s} <= q = {}", params.q())));
    }
    Ok(diagonal_bound(params, s))
}

/// Same bound at the edge `s = q` of the ample cone.
pub fn seshadri_diagonal_boundary(params: &ProductSurfaceParams) -> SeshadriBound {
    diagonal_bound(params, &int(params.q().into()))
}

fn check_eps(eps: &Rational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::Param(format!("eps = {eps} must be positive")));
    }
    Ok(())
}

/// `ε(Z₂, L_{2,t,ε}) ≥ 1` on the Kodaira surface: `L_t − Z = (t−k+1) f` is
/// ample on `C×C` and `K` is ample upstairs.
pub fn seshadri_lower_bound_z2(params: &KodairaParams, t: &Rational, eps: &Rational) -> Result<SeshadriBound> {
    check_eps(eps)?;
    let Some(sc) = params.sc() else {
        return Ok(SeshadriBound::uncertified("branched-cover degree k not given"));
    };
    if *t < sc {
        return Ok(SeshadriBound::uncertified(format!("t = {t} below q/(k-1) = {sc}")));
    }
    Ok(SeshadriBound::at_least(
        Rational::one(),
        None,
        "L_2 - Z_2 = pullback((t-k+1)f) + eps*K is ample",
    ))
}

/// `ε(D₂, l_{2,s,ε}) ≥ 1` on the Kodaira surface for `s ≥ q`, `ε ≥ 0`:
/// `l_{2,s,ε} − c·D₂` is a pullback of an ample class plus `ε·K`.
pub fn seshadri_lower_bound_d2(params: &KodairaParams, s: &Rational, eps: &Rational) -> Result<SeshadriBound> {
    if eps.is_negative() {
        return Err(Error::Param(format!("eps = {eps} must be non-negative")));
    }
    if *s < int(params.q().into()) {
        return Ok(SeshadriBound::uncertified(format!("s = {s} below q")));
    }
    Ok(SeshadriBound::at_least(
        Rational::one(),
        None,
        "l_2 - c*D_2 = pullback(l_s - c*D) + eps*K is ample for c <= 1",
    ))
}

/// `L_{2,t,ε} = t f₂ − δ₂′ + ε K` is certified ample when `t ≥ q/(k−1)` and
/// `ε > 0` (nef pullback plus a positive multiple of the ample `K`).
pub fn ample_l2(params: &KodairaParams, t: &Rational, eps: &Rational) -> AmpleVerdict {
    let Some(sc) = params.sc() else {
        return AmpleVerdict::new(AmpleStatus::Unknown, "branched-cover degree k not given");
    };
    if !eps.is_positive() {
        return AmpleVerdict::new(AmpleStatus::Unknown, "certificate needs eps > 0");
    }
    if *t >= sc {
        AmpleVerdict::new(AmpleStatus::AmpleCertified, format!("nef pullback (t >= {sc}) + eps*K"))
    } else {
        AmpleVerdict::new(AmpleStatus::Unknown, format!("t = {t} below certified region t >= {sc}"))
    }
}

/// One boundary line of the ample cone in the `f, δ′` plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeRay {
    /// `"l"` for `s·f + δ′`, `"L"` for `t·f − δ′`.
    pub family: &'static str,
    pub threshold_lo: Rational,
    /// `None` when no upper bound is known.
    pub threshold_hi: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCell {
    pub s_coeff: Rational,
    pub delta_coeff: Rational,
    pub status: AmpleStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSection {
    pub rays: Vec<ConeRay>,
    pub grid: Vec<ConeCell>,
}

/// Boundary rays plus a `samples × samples` membership grid over
/// `f`-coefficients in `[0, extent]` and `δ′`-coefficients in
/// `[−extent, extent]`. Rows are ordered by `f`-coefficient, then `δ′`.
pub fn cone_section(params: &ProductSurfaceParams, extent: &Rational, samples: usize) -> Result<ConeSection> {
    cone_section_with(params, extent, samples, ExecMode::default())
}

pub fn cone_section_with(
    params: &ProductSurfaceParams,
    extent: &Rational,
    samples: usize,
    mode: ExecMode,
) -> Result<ConeSection> {
    if !extent.is_positive() {
        return Err(Error::Param("extent must be positive".into()));
    }
    if samples < 2 {
        return Err(Error::Param("samples must be at least 2".into()));
    }
    let q = int(params.q().into());
    let sc_lo = params.sc_lower().unwrap_or_else(|| sqrt_lower_bound(&q));
    let rays = vec![
        ConeRay { family: "l", threshold_lo: q.clone(), threshold_hi: Some(q) },
        ConeRay { family: "L", threshold_lo: sc_lo, threshold_hi: params.sc_upper() },
    ];
    let steps = Rational::from_integer(BigInt::from(samples - 1));
    let cells: Vec<(usize, usize)> = (0..samples).flat_map(|i| (0..samples).map(move |j| (i, j))).collect();
    let grid = map_ordered(mode, cells, |(i, j)| {
        let a = extent * Rational::from_integer(BigInt::from(i)) / &steps;
        let b = -extent + extent * Rational::from_integer(BigInt::from(2 * j)) / &steps;
        let status = ample_product_class(params, &a, &b).status;
        ConeCell { s_coeff: a, delta_coeff: b, status }
    });
    Ok(ConeSection { rays, grid })
}

/// A certified rational lower bound on `√x`.
fn sqrt_lower_bound(x: &Rational) -> Rational {
    let prof = quadratic_negativity(&Rational::one(), &Rational::zero(), &-x, &default_tolerance())
        .expect("non-degenerate quadratic");
    match prof.negativity_set.first().map(|iv| &iv.hi) {
        Some(Endpoint::Exact(v)) => v.clone(),
        Some(Endpoint::Root(r)) => r.enclosure().lo().clone(),
        _ => Rational::zero(),
    }
}
