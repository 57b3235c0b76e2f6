use std::io::Write;

use slopestab::numeric::render;
use slopestab::positivity::{cone_section, AmpleStatus, ConeSection};
use slopestab::Rational;

use crate::params::{param, Params};

pub fn section(params: &Params) -> anyhow::Result<ConeSection> {
    let p = params.product(2)?;
    let extent = params.extent.clone().unwrap_or_else(|| Rational::from_integer((2 * p.q()).into()));
    param(cone_section(&p, &extent, params.samples.unwrap_or(11)))
}

fn ample_cell(s: AmpleStatus) -> &'static str {
    match s {
        AmpleStatus::Ample | AmpleStatus::AmpleCertified => "1",
        AmpleStatus::NotAmple => "0",
        AmpleStatus::Unknown => "unknown",
    }
}

/// Ray rows first, then grid rows in grid order. Columns that do not apply
/// to a record kind are left empty.
pub fn write_csv<W: Write>(section: &ConeSection, sink: W) -> anyhow::Result<()> {
    let mut out = csv::Writer::from_writer(sink);
    out.write_record(["record", "family", "threshold_lo", "threshold_hi", "s_coeff", "delta_coeff", "is_ample"])?;
    for ray in &section.rays {
        let hi = ray.threshold_hi.as_ref().map(render).unwrap_or_default();
        out.write_record(["ray", ray.family, &render(&ray.threshold_lo), &hi, "", "", ""])?;
    }
    for cell in &section.grid {
        out.write_record([
            "grid",
            "",
            "",
            "",
            &render(&cell.s_coeff),
            &render(&cell.delta_coeff),
            ample_cell(cell.status),
        ])?;
    }
    out.flush()?;
    Ok(())
}
