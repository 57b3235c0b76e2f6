use proptest::prelude::*;

use slopestab::numeric::{int, rat, Interval};
use slopestab::positivity::seshadri_diagonal;
use slopestab::stability::{
    destabilizes, instability_window_c, instability_window_s, quotient_slope, slope, x2_quotient_slope_exact,
    x2_slope_exact, Family,
};
use slopestab::{product_surface, Endpoint, KodairaParams, ProductSurfaceParams, Rational};

fn tol() -> Rational {
    rat(1, 1_000_000_000)
}

fn exact_endpoints(iv: &Interval) -> Vec<Rational> {
    [&iv.lo, &iv.hi].into_iter().filter_map(Endpoint::exact).cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn product_slopes_match_closed_forms(q in 2u32..=20, ds in 1i64..=500, cn in 1i64..=99) {
        let x = product_surface(ProductSurfaceParams::unconstrained(q).unwrap());
        let qr = int(q.into());
        let s = &qr + rat(ds, 50);
        let c = rat(cn, 100);
        let l = x.plane_class(&s, &int(1)).unwrap();
        let d = x.named("D").unwrap();
        let mu = -&s * (int(2) * &qr - int(2)) / (&s * &s - &qr);
        prop_assert_eq!(slope(&x, &l).unwrap(), mu);
        let num = int(3) * (int(4) * &s - int(4) * &qr - &c * (int(2) * &qr - int(2)));
        let den = int(2) * &c * (int(6) * &s - int(6) * &qr - int(2) * &c + int(2) * &c * &qr);
        prop_assert_eq!(quotient_slope(&x, &d, &l, &c).unwrap(), num / den);
    }

    #[test]
    fn c_window_points_recheck(q in 2u32..=8, ds in 1i64..=300) {
        let params = ProductSurfaceParams::unconstrained(q).unwrap();
        let x = product_surface(params.clone());
        let s = int(q.into()) + rat(ds, 100);
        let l = x.plane_class(&s, &int(1)).unwrap();
        let d = x.named("D").unwrap();
        let bound = seshadri_diagonal(&params, &s).unwrap();
        let w = instability_window_c(&x, &d, &l, &bound, &tol()).unwrap();
        let check = |c: &Rational| destabilizes(&x, &d, &l, c, &bound).unwrap().destabilized;
        for iv in &w.intervals {
            prop_assert!(check(&iv.sample()));
            prop_assert!(check(&iv.sample_near_hi(20)));
            for e in exact_endpoints(iv) {
                for probe in [&e - rat(1, 1000), &e + rat(1, 1000)] {
                    if probe > int(0) && !w.contains(&probe) {
                        prop_assert!(!check(&probe), "c = {} outside {}", probe, w);
                    }
                }
            }
        }
    }

    #[test]
    fn s_window_points_recheck(q in 2u32..=6, cn in 1i64..=99) {
        let params = ProductSurfaceParams::unconstrained(q).unwrap();
        let x = product_surface(params.clone());
        let d = x.named("D").unwrap();
        let c = rat(cn, 100);
        let w = instability_window_s(&params, &c, &int(5), &tol()).unwrap();
        let check = |s: &Rational| {
            let l = x.plane_class(s, &int(1)).unwrap();
            destabilizes(&x, &d, &l, &c, &seshadri_diagonal(&params, s).unwrap()).unwrap().destabilized
        };
        for iv in &w.intervals {
            prop_assert!(check(&iv.sample()));
            for e in exact_endpoints(iv) {
                let probe = &e + rat(1, 1000);
                if probe <= int(q.into()) + int(5) && !w.contains(&probe) {
                    prop_assert!(!check(&probe));
                }
            }
        }
    }

    #[test]
    fn x2_slopes_are_linear_in_eps(q in 2u32..=5, num in 0i64..=40) {
        let params = KodairaParams::new(q, 2, 2).unwrap();
        let s = int(q.into()) + rat(num, 10);
        let base = x2_slope_exact(&params, Family::Ls, &s, &int(0)).unwrap();
        let rate = |e: Rational| (x2_slope_exact(&params, Family::Ls, &s, &e).unwrap() - &base) / e;
        let (a, b) = (rate(rat(1, 100_000)), rate(rat(1, 1_000_000)));
        prop_assert!((&a - &b) * (&a - &b) < rat(1, 100) * (&a * &a + rat(1, 1_000_000)));
    }
}

#[test]
fn kodaira_slopes_match_reduced_forms_at_eps_zero() {
    let params = KodairaParams::new(9, 2, 2).unwrap().with_k(3).unwrap();
    let (q, r, g, k) = (int(9), int(2), int(2), int(3));
    let one = int(1);
    let product = product_surface(ProductSurfaceParams::branched(9, 3).unwrap());
    let z = product.named("Z").unwrap();
    for t in [rat(9, 2), rat(5, 1), rat(47, 10)] {
        let mu1 = -&t * (int(2) * &q - int(2)) / (&t * &t - &q);
        let reduced = &mu1 - (&r - &one) * ((&t + &one) * &g + &q - &one) / (&r * (&t * &t - &q));
        assert_eq!(x2_slope_exact(&params, Family::Lt, &t, &int(0)).unwrap(), reduced);

        let lt = product.plane_class(&t, &int(-1)).unwrap();
        let muz = quotient_slope(&product, &z, &lt, &one).unwrap();
        let km1 = &k - &one;
        let correction = int(3) * (&r - &one) * (&k * &g + &q - &one)
            / (int(2) * &r * (int(3) * &t * &km1 - &km1 * &km1 - int(2) * &q));
        let reduced = muz - correction;
        assert_eq!(x2_quotient_slope_exact(&params, Family::Lt, &t, &int(0), &one).unwrap(), reduced);
    }
    for s in [rat(9, 1), rat(19, 2), rat(12, 1)] {
        let reduced = -&s * (int(2) * &q - int(2)) / (&s * &s - &q)
            - (&r - &one) * ((&s - &one) * &g - &q + &one) / (&r * (&s * &s - &q));
        assert_eq!(x2_slope_exact(&params, Family::Ls, &s, &int(0)).unwrap(), reduced);
        for c in [rat(1, 4), rat(1, 3)] {
            let product_part = int(3) * (int(4) * &s - int(4) * &q - &c * (int(2) * &q - int(2)))
                / (int(2) * &c * (int(6) * &s - int(6) * &q - int(2) * &c + int(2) * &c * &q));
            let reduced = product_part
                - int(3) * (&r - &one) * (&one - &q) / (int(2) * &r * (int(3) * &s - int(3) * &q - &c * (&one - &q)));
            assert_eq!(x2_quotient_slope_exact(&params, Family::Ls, &s, &int(0), &c).unwrap(), reduced);
        }
    }
}
