//! JSON and CSV encodings. Rationals are always strings in lowest terms.

use num_bigint::BigInt;
use serde_json::{json, Value};

use slopestab::numeric::render;
use slopestab::positivity::{AmpleVerdict, SeshadriBound};
use slopestab::stability::StabilityWindow;
use slopestab::{Endpoint, Interval, Rational};

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

pub fn rat(x: &Rational) -> Value {
    Value::String(render(x))
}

pub fn int(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

/// A value together with the formula that produced it.
pub fn quantity(value: Value, formula: &str) -> Value {
    json!({ "value": value, "formula": formula })
}

pub fn endpoint(e: &Endpoint) -> Value {
    match e {
        Endpoint::Exact(v) => json!({ "exact": render(v) }),
        Endpoint::Root(r) => json!({
            "root_of": r.poly().to_string(),
            "enclosure": [render(r.enclosure().lo()), render(r.enclosure().hi())],
        }),
        Endpoint::Infinity => json!({ "infinity": true }),
    }
}

pub fn interval(iv: &Interval) -> Value {
    json!({
        "lo": endpoint(&iv.lo),
        "lo_closed": iv.lo_closed,
        "hi": endpoint(&iv.hi),
        "hi_closed": iv.hi_closed,
        "text": iv.to_string(),
    })
}

pub fn window(w: &StabilityWindow) -> Value {
    let context: serde_json::Map<String, Value> =
        w.context.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
    json!({
        "variable": w.variable.to_string(),
        "intervals": w.intervals.iter().map(interval).collect::<Vec<_>>(),
        "boundary_limit": w.boundary_limit,
        "context": context,
        "text": w.to_string(),
    })
}

pub fn window_document(target: &str, w: &StabilityWindow) -> Value {
    let mut doc = serde_json::Map::new();
    doc.insert("kind".into(), json!("window"));
    doc.insert("target".into(), json!(target));
    if let Value::Object(fields) = window(w) {
        doc.extend(fields);
    }
    Value::Object(doc)
}

pub fn seshadri(b: &SeshadriBound) -> Value {
    json!({
        "lower": rat(&b.lower),
        "upper": b.upper.as_ref().map(rat).unwrap_or(Value::Null),
        "exact": b.exact,
        "certified": b.certified,
        "reason": b.reason,
    })
}

pub fn verdict(v: &AmpleVerdict) -> Value {
    json!({ "status": v.status.to_string(), "certificate": v.certificate })
}

fn endpoint_cell(e: &Endpoint) -> String {
    match e {
        Endpoint::Exact(v) => render(v),
        Endpoint::Root(r) => format!("[{}, {}]", render(r.enclosure().lo()), render(r.enclosure().hi())),
        Endpoint::Infinity => "inf".to_string(),
    }
}

/// One row per interval; enclosed endpoints are written as `[lo, hi]`.
pub fn window_csv(w: &StabilityWindow) -> anyhow::Result<String> {
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(["variable", "lo", "lo_closed", "hi", "hi_closed", "boundary_limit"])?;
    for iv in &w.intervals {
        out.write_record([
            w.variable.to_string(),
            endpoint_cell(&iv.lo),
            iv.lo_closed.to_string(),
            endpoint_cell(&iv.hi),
            iv.hi_closed.to_string(),
            w.boundary_limit.to_string(),
        ])?;
    }
    Ok(String::from_utf8(out.into_inner()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use slopestab::numeric::{default_tolerance, quadratic_negativity, rat as r};

    #[test]
    fn rationals_render_in_lowest_terms() {
        assert_eq!(rat(&r(6, 8)), json!("3/4"));
        assert_eq!(rat(&r(-4, 2)), json!("-2"));
    }

    #[test]
    fn endpoints_and_csv_cells() {
        let prof = quadratic_negativity(&r(1, 1), &r(0, 1), &r(-2, 1), &default_tolerance()).unwrap();
        let iv = &prof.negativity_set[0];
        assert_eq!(endpoint(&iv.lo), json!({ "exact": "0" }));
        let hi = endpoint(&iv.hi);
        assert!(hi["root_of"].as_str().unwrap().contains("x^2"));
        let enc = hi["enclosure"].as_array().unwrap();
        let lo = slopestab::numeric::parse_rational(enc[0].as_str().unwrap()).unwrap();
        let up = slopestab::numeric::parse_rational(enc[1].as_str().unwrap()).unwrap();
        assert!(&lo * &lo <= r(2, 1) && &up * &up >= r(2, 1));
        assert!(endpoint_cell(&iv.hi).starts_with('['));
        assert_eq!(endpoint(&Endpoint::Infinity), json!({ "infinity": true }));
    }
}
