//! Parameter sweeps. Each grid point is independent, so the sweeps go
//! through [`map_ordered`] and return results in grid order.

use crate::error::Result;
use crate::exec::{map_ordered, ExecMode};
use crate::kodaira::{invariants, invariants_from_lattice, KodairaInvariants};
use crate::numeric::Rational;
use crate::positivity::seshadri_diagonal;
use crate::stability::{instability_window_c, instability_window_s, StabilityWindow};
use crate::surfaces::{product_surface, KodairaParams, ProductSurfaceParams};

/// `c`-windows of the diagonal for `l_s` at each `s`.
pub fn scan_product_c_windows(
    params: &ProductSurfaceParams,
    s_values: &[Rational],
    tol: &Rational,
    mode: ExecMode,
) -> Vec<Result<StabilityWindow>> {
    map_ordered(mode, s_values.to_vec(), |s| {
        let x = product_surface(params.clone());
        let l = x.plane_class(&s, &Rational::from_integer(1.into()))?;
        let d = x.named("D")?;
        instability_window_c(&x, &d, &l, &seshadri_diagonal(params, &s)?, tol)
    })
}

/// `s`-windows of the diagonal at each fixed `c`.
pub fn scan_product_s_windows(
    params: &ProductSurfaceParams,
    c_values: &[Rational],
    extent: &Rational,
    tol: &Rational,
    mode: ExecMode,
) -> Vec<Result<StabilityWindow>> {
    map_ordered(mode, c_values.to_vec(), |c| instability_window_s(params, &c, extent, tol))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRow {
    pub params: KodairaParams,
    pub invariants: KodairaInvariants,
    pub lattice_agrees: bool,
}

/// Invariants over every valid `(q, r, |G|)` in the given ranges.
pub fn scan_kodaira_invariants(
    qs: &[u32],
    rs: &[u32],
    group_orders: &[u32],
    mode: ExecMode,
) -> Vec<Result<InvariantRow>> {
    let grid: Vec<KodairaParams> = qs
        .iter()
        .flat_map(|&q| rs.iter().flat_map(move |&r| group_orders.iter().map(move |&g| (q, r, g))))
        .filter_map(|(q, r, g)| KodairaParams::new(q, r, g).ok())
        .collect();
    map_ordered(mode, grid, |params| {
        let inv = invariants(&params)?;
        let lattice_agrees = invariants_from_lattice(&params)? == inv.k_squared;
        Ok(InvariantRow { params, invariants: inv, lattice_agrees })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{default_tolerance, int, rat};

    #[test]
    fn sequential_and_parallel_agree() {
        let p = ProductSurfaceParams::unconstrained(3).unwrap();
        let s: Vec<Rational> = (1..20).map(|i| int(3) + rat(i, 10)).collect();
        let tol = default_tolerance();
        let a = scan_product_c_windows(&p, &s, &tol, ExecMode::Sequential);
        let b = scan_product_c_windows(&p, &s, &tol, ExecMode::Parallel);
        let fmt = |v: &Vec<Result<StabilityWindow>>| v.iter().map(|w| w.as_ref().unwrap().to_string()).collect::<Vec<_>>();
        assert_eq!(fmt(&a), fmt(&b));
        let rows = scan_kodaira_invariants(&[2, 3], &[2, 3], &[2, 3, 4, 6], ExecMode::Parallel);
        assert!(rows.iter().all(|r| r.as_ref().unwrap().lattice_agrees));
    }
}
