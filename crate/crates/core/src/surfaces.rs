//! The three parameterised surfaces: the self-product `C×C`, the unbranched
//! cover `B×C` and the cyclic branched cover of `B×C` that carries the
//! Kodaira fibration.
//!
//! Each model only exposes the finite sublattice spanned by the classes the
//! stability arguments need.

use std::ops::Deref;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{BasisLabel, DivisorClass, Lattice};
use crate::numeric::{big, int, Rational};

/// What is known about the Kouvidakis constant
/// `s_C = inf{ t : t·f − δ′ is ample }` of the curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScMode {
    /// `C` is a simple branched cover of the line of degree `k`, so
    /// `s_C = q/(k−1)`.
    BranchedCover { k: u32 },
    /// General moduli with `q` a perfect square, so `s_C = √q`.
    GeneralModuliPerfectSquare,
    /// Caller-supplied certified bounds `lo ≤ s_C ≤ hi`.
    UserBounds { lo: Rational, hi: Rational },
    /// Nothing beyond `s_C ≥ √q` (forced by `L_t² > 0`).
    Unconstrained,
}

impl std::fmt::Display for ScMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScMode::BranchedCover { k } => write!(f, "branched cover of degree k={k}"),
            ScMode::GeneralModuliPerfectSquare => f.write_str("general moduli, s_C = sqrt(q)"),
            ScMode::UserBounds { lo, hi } => write!(f, "{lo} <= s_C <= {hi}"),
            ScMode::Unconstrained => f.write_str("unconstrained, s_C >= sqrt(q)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSurfaceParams {
    q: u32,
    sc_mode: ScMode,
}

impl ProductSurfaceParams {
    pub fn new(q: u32, sc_mode: ScMode) -> Result<Self> {
        if q < 2 {
            return Err(Error::Param(format!("genus q = {q} must be at least 2")));
        }
        let qr = int(q.into());
        match &sc_mode {
            ScMode::BranchedCover { k } => check_branched_degree(q, *k)?,
            ScMode::GeneralModuliPerfectSquare => {
                let root = q.sqrt();
                if root * root != q {
                    return Err(Error::Param(format!("q = {q} is not a perfect square")));
                }
            }
            ScMode::UserBounds { lo, hi } => {
                // √q ≤ lo  ⟺  lo ≥ 0 and lo² ≥ q
                if lo.is_negative() || lo * lo < qr {
                    return Err(Error::Param(format!("lower bound {lo} is below sqrt(q)")));
                }
                if lo > hi {
                    return Err(Error::Param("s_C bounds out of order".into()));
                }
                let cap = Rational::new(q.into(), q.sqrt().into());
                if *hi > cap {
                    return Err(Error::Param(format!("upper bound {hi} exceeds q/floor(sqrt(q)) = {cap}")));
                }
            }
            ScMode::Unconstrained => {}
        }
        Ok(ProductSurfaceParams { q, sc_mode })
    }

    pub fn branched(q: u32, k: u32) -> Result<Self> {
        Self::new(q, ScMode::BranchedCover { k })
    }

    pub fn general_moduli(q: u32) -> Result<Self> {
        Self::new(q, ScMode::GeneralModuliPerfectSquare)
    }

    pub fn unconstrained(q: u32) -> Result<Self> {
        Self::new(q, ScMode::Unconstrained)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn sc_mode(&self) -> &ScMode {
        &self.sc_mode
    }

    pub fn k(&self) -> Option<u32> {
        match self.sc_mode {
            ScMode::BranchedCover { k } => Some(k),
            _ => None,
        }
    }

    /// `s_C` when it is known exactly.
    pub fn sc_exact(&self) -> Option<Rational> {
        match &self.sc_mode {
            ScMode::BranchedCover { k } => Some(Rational::new(self.q.into(), (k - 1).into())),
            ScMode::GeneralModuliPerfectSquare => Some(int(self.q.sqrt().into())),
            ScMode::UserBounds { lo, hi } if lo == hi => Some(lo.clone()),
            _ => None,
        }
    }

    /// Best certified rational upper bound on `s_C`.
    pub fn sc_upper(&self) -> Option<Rational> {
        match &self.sc_mode {
            ScMode::UserBounds { hi, .. } => Some(hi.clone()),
            ScMode::Unconstrained => None,
            _ => self.sc_exact(),
        }
    }

    /// Best certified rational lower bound on `s_C`, if one is recorded.
    pub fn sc_lower(&self) -> Option<Rational> {
        match &self.sc_mode {
            ScMode::UserBounds { lo, .. } => Some(lo.clone()),
            ScMode::Unconstrained => None,
            _ => self.sc_exact(),
        }
    }
}

fn check_branched_degree(q: u32, k: u32) -> Result<()> {
    if k < 3 {
        return Err(Error::Param(format!("branched-cover degree k = {k} needs k - 1 >= 2")));
    }
    let km1 = u64::from(k - 1);
    if km1 * km1 >= u64::from(q) {
        return Err(Error::Param(format!("(k - 1)^2 = {} must be below q = {q}", km1 * km1)));
    }
    Ok(())
}

/// Parameters of the cyclic branched cover construction.
///
/// `C` has genus `q`; `G` acts freely on `C` and `r` divides `|G|`;
/// `h: B → C` is the unbranched cover attached to `H₁(C, ℤ_r)`, of degree
/// `d = r^(2q)` unless overridden.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaParams {
    q: u32,
    r: u32,
    group_order: u32,
    k: Option<u32>,
    d: BigInt,
    d_overridden: bool,
}

impl KodairaParams {
    pub fn new(q: u32, r: u32, group_order: u32) -> Result<Self> {
        if q < 2 {
            return Err(Error::Param(format!("genus q = {q} must be at least 2")));
        }
        if r < 2 {
            return Err(Error::Param(format!("cover degree r = {r} must be at least 2")));
        }
        if group_order == 0 || !group_order.is_multiple_of(r) {
            return Err(Error::Param(format!("r = {r} must divide |G| = {group_order}")));
        }
        if (u64::from(r) - 1) * u64::from(group_order) % 2 != 0 {
            return Err(Error::Param("fiber genus is not an integer: (r-1)|G| is odd".into()));
        }
        let d = num_traits::pow(BigInt::from(r), 2 * q as usize);
        Ok(KodairaParams { q, r, group_order, k: None, d, d_overridden: false })
    }

    /// Records the degree `k` of a simple branched cover `C → ℙ¹`.
    pub fn with_k(mut self, k: u32) -> Result<Self> {
        check_branched_degree(self.q, k)?;
        self.k = Some(k);
        Ok(self)
    }

    /// Replaces `d = r^(2q)` by a hypothetical cover degree.
    pub fn with_cover_degree(mut self, d: BigInt) -> Result<Self> {
        if !d.is_positive() {
            return Err(Error::Param("cover degree d must be positive".into()));
        }
        self.d = d;
        self.d_overridden = true;
        Ok(self)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn group_order(&self) -> u32 {
        self.group_order
    }

    pub fn k(&self) -> Option<u32> {
        self.k
    }

    pub fn require_k(&self) -> Result<u32> {
        self.k.ok_or_else(|| Error::Param("branched-cover degree k is required".into()))
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn d_overridden(&self) -> bool {
        self.d_overridden
    }

    /// Genus of `B`, from `2p − 2 = d(2q − 2)`.
    pub fn p(&self) -> BigInt {
        &self.d * BigInt::from(self.q - 1) + BigInt::one()
    }

    /// `s_C = q/(k−1)` of the underlying curve, when `k` is recorded.
    pub fn sc(&self) -> Option<Rational> {
        self.k.map(|k| Rational::new(self.q.into(), (k - 1).into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Product(ProductSurfaceParams),
    Cover(KodairaParams),
    Kodaira(KodairaParams),
}

/// A surface: lattice, canonical class, parameters and named classes.
#[derive(Clone, Debug)]
pub struct SurfaceModel {
    kind: SurfaceKind,
    lattice: Lattice,
    canonical: DivisorClass,
    named: Vec<(String, DivisorClass)>,
}

impl Deref for SurfaceModel {
    type Target = Lattice;

    fn deref(&self) -> &Lattice {
        &self.lattice
    }
}

impl SurfaceModel {
    pub fn kind(&self) -> &SurfaceKind {
        &self.kind
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    /// A distinguished class such as `"D"`, `"f2"` or `"R"`.
    pub fn named(&self, name: &str) -> Result<DivisorClass> {
        self.named
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d.clone())
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn named_classes(&self) -> &[(String, DivisorClass)] {
        &self.named
    }

    /// `a·f + b·δ′` on a product, `a·f₁ + b·δ₁′` on the cover and
    /// `a·f₂ + b·δ₂′` on the Kodaira surface.
    pub fn plane_class(&self, a: &Rational, b: &Rational) -> Result<DivisorClass> {
        let (f, dp) = match self.kind {
            SurfaceKind::Product(_) => ("f", "delta_prime"),
            SurfaceKind::Cover(_) => ("f1", "delta1_prime"),
            SurfaceKind::Kodaira(_) => ("f2", "delta2_prime"),
        };
        self.linear_combination(&[(a.clone(), &self.named(f)?), (b.clone(), &self.named(dp)?)])
    }

    /// Pulls a class back along the covering maps
    /// `Kodaira → Cover → Product`. Identity when `target` is `self`.
    pub fn pullback(&self, target: &SurfaceModel, a: &DivisorClass) -> Result<DivisorClass> {
        if a.surface() != self.id() {
            return Err(Error::SurfaceMismatch);
        }
        if target.id() == self.id() {
            return Ok(a.clone());
        }
        match (&self.kind, &target.kind) {
            (SurfaceKind::Cover(p), SurfaceKind::Kodaira(t)) if p == t => {
                target.from_coefficients(a.coefficients().to_vec())
            }
            (SurfaceKind::Product(p), SurfaceKind::Cover(t) | SurfaceKind::Kodaira(t)) if p.q() == t.q() => {
                let c = a.coefficients();
                target.plane_class(&c[0], &c[1])
            }
            _ => Err(Error::SurfaceMismatch),
        }
    }
}

fn labels(names: &[&str]) -> Vec<BasisLabel> {
    names.iter().map(|n| BasisLabel::new(*n)).collect()
}

/// `C×C` in the basis `{f, δ′}` with `f² = 2`, `f·δ′ = 0`, `δ′² = −2q` and
/// `K = (2q−2) f`.
pub fn product_surface(params: ProductSurfaceParams) -> SurfaceModel {
    let q = i64::from(params.q());
    let lattice = Lattice::new(
        labels(&["f", "delta_prime"]),
        vec![vec![int(2), int(0)], vec![int(0), int(-2 * q)]],
    );
    let canonical = lattice.class(&[("f", int(2 * q - 2))]).expect("basis label");
    let mut named = vec![
        ("f".to_string(), lattice.generator("f").expect("basis label")),
        ("delta_prime".to_string(), lattice.generator("delta_prime").expect("basis label")),
        ("D".to_string(), lattice.class(&[("f", int(1)), ("delta_prime", int(1))]).expect("basis label")),
        ("K".to_string(), canonical.clone()),
    ];
    if let Some(k) = params.k() {
        let z = lattice
            .class(&[("f", int(i64::from(k) - 1)), ("delta_prime", int(-1))])
            .expect("basis label");
        named.push(("Z".to_string(), z));
    }
    SurfaceModel { kind: SurfaceKind::Product(params), lattice, canonical, named }
}

/// Gram matrix of `B×C` in the basis `{B₀, C₀, graph_h, Σ}`, assuming the
/// |G| graphs making up Σ are pairwise disjoint.
fn cover_gram(params: &KodairaParams) -> Vec<Vec<Rational>> {
    let d = big(params.d());
    let g = int(params.group_order().into());
    let chi_c = int(2 - 2 * i64::from(params.q()));
    let graph_sq = big(&graph_self_intersection(params.d(), 2 - 2 * i64::from(params.q())));
    let b_sigma = &d * &g;
    let gh_sigma = graph_sq.clone();
    let sigma_sq = &d * &chi_c * &g;
    vec![
        vec![int(0), int(1), d.clone(), b_sigma.clone()],
        vec![int(1), int(0), int(1), g.clone()],
        vec![d, int(1), graph_sq, gh_sigma.clone()],
        vec![b_sigma, g, gh_sigma, sigma_sq],
    ]
}

fn lift_classes(lattice: &Lattice, params: &KodairaParams, names: [&str; 4], suffix: &str) -> Vec<(String, DivisorClass)> {
    let [b0, c0, gh, _] = names;
    let d = big(params.d());
    let f = lattice.class(&[(c0, d), (b0, int(1))]).expect("basis label");
    let graph = lattice.generator(gh).expect("basis label");
    let delta_prime = graph.try_add(&f.scaled(&int(-1))).expect("same surface");
    let mut out = vec![
        (format!("f{suffix}"), f.clone()),
        (format!("delta{suffix}_prime"), delta_prime.clone()),
        (format!("D{suffix}"), graph),
    ];
    if let Some(k) = params.k() {
        let z = f
            .scaled(&int(i64::from(k) - 1))
            .try_add(&delta_prime.scaled(&int(-1)))
            .expect("same surface");
        out.push((format!("Z{suffix}"), z));
    }
    out
}

/// `X₁ = B×C`, an unbranched degree-`d` cover of `C×C`.
pub fn cover_surface(params: KodairaParams) -> SurfaceModel {
    let lattice = Lattice::new(labels(&["B0", "C0", "graph_h", "Sigma"]), cover_gram(&params));
    let two_q_minus_two = int(2 * i64::from(params.q()) - 2);
    let canonical = lattice
        .class(&[("C0", &two_q_minus_two * big(params.d())), ("B0", two_q_minus_two)])
        .expect("basis label");
    let mut named = lift_classes(&lattice, &params, ["B0", "C0", "graph_h", "Sigma"], "1");
    named.push(("Sigma".to_string(), lattice.generator("Sigma").expect("basis label")));
    named.push(("K".to_string(), canonical.clone()));
    SurfaceModel { kind: SurfaceKind::Cover(params), lattice, canonical, named }
}

/// `X₂`, the cyclic `r`-fold cover of `B×C` branched along Σ, in the basis
/// of pulled-back classes. Pairings are `r` times those downstairs and
/// `K = π*K_{B×C} + R` with `R = ((r−1)/r) π*Σ`.
pub fn kodaira_surface(params: KodairaParams) -> SurfaceModel {
    let r = int(params.r().into());
    let gram = cover_gram(&params)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x * &r).collect())
        .collect();
    let names = ["pb_B0", "pb_C0", "pb_graph_h", "pb_Sigma"];
    let lattice = Lattice::new(labels(&names), gram);
    let two_q_minus_two = int(2 * i64::from(params.q()) - 2);
    let pulled_k = lattice
        .class(&[("pb_C0", &two_q_minus_two * big(params.d())), ("pb_B0", two_q_minus_two)])
        .expect("basis label");
    let ramification = lattice
        .class(&[("pb_Sigma", (&r - int(1)) / &r)])
        .expect("basis label");
    let canonical = pulled_k.try_add(&ramification).expect("same surface");
    let mut named = lift_classes(&lattice, &params, names, "2");
    named.push(("R".to_string(), ramification));
    named.push(("pullback_K1".to_string(), pulled_k));
    named.push(("K".to_string(), canonical.clone()));
    SurfaceModel { kind: SurfaceKind::Kodaira(params), lattice, canonical, named }
}

/// Self-intersection of the graph of a degree-`d` map `M → N` of curves:
/// `d·χ(N)`.
pub fn graph_self_intersection(d: &BigInt, euler_n: i64) -> BigInt {
    if d.is_zero() {
        return BigInt::zero();
    }
    d * BigInt::from(euler_n)
}
