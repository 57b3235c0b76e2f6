use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use slopestab::kodaira::{invariants, invariants_from_lattice};
use slopestab::numeric::{int, rat, render};
use slopestab::positivity::{ample_ls, seshadri_diagonal, seshadri_lower_bound_d2, seshadri_lower_bound_z2, ample_l2};
use slopestab::stability::{
    destabilizes, instability_window_c, instability_window_s, product_boundary_window, x2_diagonal_window,
    x2_polarization, x2_quotient_slope_exact, x2_slope_exact, Family, SlopeReport, StabilityWindow,
};
use slopestab::{kodaira_surface, product_surface, DivisorClass, SurfaceModel};

use crate::encode::{self, quantity};
use crate::params::{param, usage, Params};
use crate::WindowTarget;

const SLOPE: &str = "-K.L / L^2";
const QUOTIENT_SLOPE: &str = "3(2L.Z - c(K.Z + Z^2)) / (2c(3L.Z - cZ^2))";

pub fn window(target: WindowTarget, params: &Params) -> anyhow::Result<StabilityWindow> {
    let tol = params.tol()?;
    match target {
        WindowTarget::ProductC => {
            let p = params.product(2)?;
            let (s, boundary) = params.s_or_boundary(p.q())?;
            if boundary {
                return Ok(product_boundary_window(&p, &tol)?);
            }
            let x = product_surface(p.clone());
            let l = x.plane_class(&s, &int(1))?;
            let bound = param(seshadri_diagonal(&p, &s))?;
            Ok(instability_window_c(&x, &x.named("D")?, &l, &bound, &tol)?)
        }
        WindowTarget::ProductS => {
            let p = params.product(2)?;
            let c = params.c.clone().unwrap_or_else(|| rat(1, 2));
            let extent = params.extent.clone().unwrap_or_else(|| int(10));
            param(instability_window_s(&p, &c, &extent, &tol))
        }
        WindowTarget::X2C => {
            let p = params.kodaira((3, 2, 2))?;
            let (s, _) = params.s_or_boundary(p.q())?;
            let eps = params.eps.clone().unwrap_or_else(|| int(0));
            param(x2_diagonal_window(&p, &s, &eps, &tol))
        }
    }
}

fn intersection_numbers(x: &SurfaceModel, l: &DivisorClass, z: &DivisorClass) -> anyhow::Result<Value> {
    let k = x.canonical();
    Ok(json!({
        "L.L": quantity(encode::rat(&x.pair(l, l)?), "L^2"),
        "K.L": quantity(encode::rat(&x.pair(k, l)?), "K.L"),
        "L.Z": quantity(encode::rat(&x.pair(l, z)?), "L.Z"),
        "K.Z": quantity(encode::rat(&x.pair(k, z)?), "K.Z"),
        "Z.Z": quantity(encode::rat(&x.pair(z, z)?), "Z^2"),
        "K.K": quantity(encode::rat(&x.pair(k, k)?), "K^2"),
    }))
}

fn slope_block(rep: &SlopeReport) -> Value {
    json!({
        "surface": rep.surface,
        "polarization": rep.polarization,
        "subscheme": rep.subscheme,
        "mu_X": quantity(encode::rat(&rep.mu_x), SLOPE),
        "mu_c_Z": quantity(encode::rat(&rep.mu_c_z), QUOTIENT_SLOPE),
        "c": encode::rat(&rep.c),
        "seshadri": encode::seshadri(&rep.seshadri),
        "admissible": rep.admissible,
        "destabilized": rep.destabilized,
        "notes": rep.notes,
    })
}

pub fn product(params: &Params) -> anyhow::Result<Value> {
    let p = params.product(2)?;
    let tol = params.tol()?;
    let q = int(p.q().into());
    let s = params.s_or(&q + rat(1, 100))?;
    let c = params.c.clone().unwrap_or_else(|| rat(1, 2));
    let x = product_surface(p.clone());
    let l = x.plane_class(&s, &int(1))?;
    let d = x.named("D")?;
    let bound = param(seshadri_diagonal(&p, &s))?;
    let rep = param(destabilizes(&x, &d, &l, &c, &bound))?;
    let window = instability_window_c(&x, &d, &l, &bound, &tol)?;
    Ok(json!({
        "kind": "report",
        "target": "product",
        "parameters": {
            "q": p.q().to_string(),
            "s_C": p.sc_mode().to_string(),
            "s": render(&s),
            "c": render(&c),
        },
        "classes": {
            "L": quantity(Value::String(x.describe(&l)), "l_s = s f + delta'"),
            "Z": quantity(Value::String(x.describe(&d)), "diagonal D = f + delta'"),
            "K": quantity(Value::String(x.describe(x.canonical())), "K = (2q-2) f"),
        },
        "intersection_numbers": intersection_numbers(&x, &l, &d)?,
        "ampleness": encode::verdict(&ample_ls(p.q(), &s)),
        "stability": slope_block(&rep),
        "c_window": encode::window(&window),
    }))
}

pub fn kodaira(params: &Params) -> anyhow::Result<Value> {
    let p = params.kodaira((3, 2, 2))?;
    let tol = params.tol()?;
    let inv = invariants(&p)?;
    let q = int(p.q().into());
    let (s, _) = params.s_or_boundary(p.q())?;
    let eps = params.eps.clone().unwrap_or_else(|| int(0));
    let c = params.c.clone().unwrap_or_else(|| rat(1, 2));
    if s < q {
        return Err(usage(format!("--s must be at least q = {q}")));
    }

    let x = kodaira_surface(p.clone());
    let l = param(x2_polarization(&x, Family::Ls, &s, &eps))?;
    let d2 = x.named("D2")?;
    let bound = param(seshadri_lower_bound_d2(&p, &s, &eps))?;
    let rep = param(destabilizes(&x, &d2, &l, &c, &bound))?;
    let window = param(x2_diagonal_window(&p, &s, &eps, &tol))?;

    let mut doc = json!({
        "kind": "report",
        "target": "kodaira",
        "parameters": {
            "q": p.q().to_string(),
            "r": p.r().to_string(),
            "G": p.group_order().to_string(),
            "k": p.k().map(|k| k.to_string()),
            "d_overridden": p.d_overridden(),
            "s": render(&s),
            "eps": render(&eps),
            "c": render(&c),
        },
        "invariants": {
            "d": quantity(encode::int(&inv.d), "r^(2q) unless overridden"),
            "p": quantity(encode::int(&inv.p), "2p - 2 = d(2q - 2)"),
            "fiber_genus": quantity(encode::int(&inv.fiber_genus), "2g - 2 = r(2q - 2) + (r - 1)|G|"),
            "euler": quantity(encode::int(&inv.euler), "chi(B)(r chi(C) - (r - 1)|G|)"),
            "K_squared": quantity(encode::int(&inv.k_squared), "8r(p-1)(q-1) + 4(r-1)(p-1)|G| + 2(r^2-1)(q-1)d|G|/r"),
            "K_squared_lattice": quantity(encode::int(&invariants_from_lattice(&p)?), "K.K with K = pullback(K) + ((r-1)/r) pullback(Sigma)"),
            "signature": quantity(encode::int(&inv.signature), "(K^2 - 2 euler)/3"),
        },
        "intersection_numbers": intersection_numbers(&x, &l, &d2)?,
        "stability": slope_block(&rep),
        "c_window": encode::window(&window),
    });

    if let Some(t) = &params.t {
        let mut block = Map::new();
        block.insert("t".into(), encode::rat(t));
        let mu = param(x2_slope_exact(&p, Family::Lt, t, &eps))?;
        block.insert("mu_X".into(), quantity(encode::rat(&mu), SLOPE));
        block.insert("ampleness".into(), encode::verdict(&ample_l2(&p, t, &eps)));
        if p.k().is_some() {
            let mu1 = param(x2_quotient_slope_exact(&p, Family::Lt, t, &eps, &int(1)))?;
            block.insert("mu_1_Z2".into(), quantity(encode::rat(&mu1), QUOTIENT_SLOPE));
            block.insert("destabilized_if_admissible".into(), Value::Bool(mu1 < mu));
            if eps > int(0) {
                block.insert("seshadri".into(), encode::seshadri(&param(seshadri_lower_bound_z2(&p, t, &eps))?));
            }
        }
        doc["L_family"] = Value::Object(block);
    }
    Ok(doc)
}

fn flat(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Object(m) if m.contains_key("value") && m.contains_key("formula") => {
            format!("{} (`{}`)", flat(&m["value"]), flat(&m["formula"]))
        }
        Value::Object(m) if m.contains_key("text") => flat(&m["text"]),
        other => other.to_string(),
    }
}

/// Renders a report as Markdown with one section per top-level object.
pub fn to_markdown(doc: &Value) -> String {
    let mut s = String::new();
    let Value::Object(top) = doc else {
        return flat(doc);
    };
    let _ = writeln!(s, "# {} report\n", flat(&top["target"]));
    for (key, value) in top {
        match value {
            Value::Object(m) if !m.contains_key("text") => {
                let _ = writeln!(s, "## {key}\n");
                for (k, v) in m {
                    let _ = writeln!(s, "- {k}: {}", flat(v));
                }
                s.push('\n');
            }
            _ if key == "kind" || key == "target" => {}
            other => {
                let _ = writeln!(s, "## {key}\n\n{}\n", flat(other));
            }
        }
    }
    s
}
