//! Topological invariants of the Kodaira fibration `X₂ → B`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::surfaces::{kodaira_surface, KodairaParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KodairaInvariants {
    /// Degree of the unbranched cover `B → C`.
    pub d: BigInt,
    /// Genus of the base `B`.
    pub p: BigInt,
    /// Genus of a fiber, an `r`-fold cover of `C` branched at `|G|` points.
    pub fiber_genus: BigInt,
    /// Topological Euler characteristic.
    pub euler: BigInt,
    pub k_squared: BigInt,
    pub signature: BigInt,
}

fn exact_div(n: &BigInt, d: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = n.div_rem(d);
    if !r.is_zero() {
        return Err(Error::Param(format!("{what} is not an integer ({n}/{d})")));
    }
    Ok(q)
}

fn compute(params: &KodairaParams, branch_weight: &BigInt) -> Result<KodairaInvariants> {
    let d = params.d().clone();
    let p = params.p();
    let q1 = BigInt::from(params.q() - 1);
    let r = BigInt::from(params.r());
    let g = branch_weight;
    let r1 = &r - BigInt::one();
    let p1 = &p - BigInt::one();

    // 2g_F − 2 = r(2q − 2) + (r − 1)|G|
    let fiber_genus = exact_div(&(&r * BigInt::from(2) * &q1 + &r1 * g), &BigInt::from(2), "fiber genus")? + 1;
    // χ(B)(rχ(C) − (r − 1)|G|)
    let euler = BigInt::from(4) * &r * &p1 * &q1 + BigInt::from(2) * &p1 * &r1 * g;
    let ramification = exact_div(&(BigInt::from(2) * (&r * &r - 1) * &q1 * &d * g), &r, "ramification term of K^2")?;
    let k_squared = BigInt::from(8) * &r * &p1 * &q1 + BigInt::from(4) * &r1 * &p1 * g + ramification;
    let signature = exact_div(&(&k_squared - BigInt::from(2) * &euler), &BigInt::from(3), "signature")?;
    Ok(KodairaInvariants { d, p, fiber_genus, euler, k_squared, signature })
}

pub fn invariants(params: &KodairaParams) -> Result<KodairaInvariants> {
    compute(params, &BigInt::from(params.group_order()))
}

/// Same formulas with every `|G|` weight set to zero, i.e. the unbranched
/// limit, where the surface is a product up to covering and `τ = 0`.
pub fn unbranched_invariants(params: &KodairaParams) -> Result<KodairaInvariants> {
    compute(params, &BigInt::zero())
}

/// `K²` of `X₂` read off the intersection table, for comparison with
/// [`KodairaInvariants::k_squared`].
pub fn invariants_from_lattice(params: &KodairaParams) -> Result<BigInt> {
    let x = kodaira_surface(params.clone());
    let k2: Rational = x.self_intersection(x.canonical())?;
    if !k2.is_integer() {
        return Err(Error::Param(format!("K^2 = {k2} from the lattice is not an integer")));
    }
    Ok(k2.to_integer())
}

/// `2(r² − 1)(q − 1)d|G| / (3r)`.
pub fn signature_closed_form(params: &KodairaParams) -> Rational {
    let r = BigInt::from(params.r());
    let num = BigInt::from(2) * (&r * &r - 1) * BigInt::from(params.q() - 1) * params.d() * BigInt::from(params.group_order());
    Rational::new(num, BigInt::from(3) * r)
}
