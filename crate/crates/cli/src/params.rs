use std::fmt;

use clap::Args;
use num_bigint::BigInt;

use slopestab::numeric::{default_tolerance, parse_rational};
use slopestab::{KodairaParams, ProductSurfaceParams, Rational, ScMode};

/// Invalid or inconsistent parameters; reported with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn usage_from(e: slopestab::Error) -> anyhow::Error {
    usage(e.to_string())
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn bigint_arg(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("not an integer: {s}"))
}

/// Parameter flags shared by every subcommand. Rationals are accepted as
/// `n`, `n/d` or finite decimals.
#[derive(Args, Clone, Debug, Default)]
pub struct Params {
    /// Genus of the curve C.
    #[arg(long)]
    pub q: Option<u32>,
    /// Degree of a simple branched cover C -> P^1, giving s_C = q/(k-1).
    #[arg(long, conflicts_with_all = ["general_moduli", "sc_bounds"])]
    pub k: Option<u32>,
    /// Degree of the cyclic branched cover.
    #[arg(long)]
    pub r: Option<u32>,
    /// Order of the group acting freely on C.
    #[arg(long = "G", value_name = "ORDER")]
    pub group_order: Option<u32>,
    /// Override of the cover degree d = r^(2q).
    #[arg(long, value_parser = bigint_arg)]
    pub d: Option<BigInt>,
    /// Coefficient s of l_s = s f + delta'; `boundary` means s = q.
    #[arg(long)]
    pub s: Option<String>,
    /// Coefficient t of L_t = t f - delta'.
    #[arg(long, value_parser = rational_arg)]
    pub t: Option<Rational>,
    #[arg(long, value_parser = rational_arg)]
    pub c: Option<Rational>,
    #[arg(long, value_parser = rational_arg)]
    pub eps: Option<Rational>,
    /// C has general moduli and q is a perfect square, so s_C = sqrt(q).
    #[arg(long, conflicts_with = "sc_bounds")]
    pub general_moduli: bool,
    /// Certified bounds lo <= s_C <= hi.
    #[arg(long, num_args = 2, value_names = ["LO", "HI"], value_parser = rational_arg)]
    pub sc_bounds: Option<Vec<Rational>>,
    /// Width to which irrational endpoints are enclosed.
    #[arg(long, value_parser = rational_arg)]
    pub tol: Option<Rational>,
    /// Grid points per axis for the cone section.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Half-width of the cone grid, or search length of an s-window.
    #[arg(long, value_parser = rational_arg)]
    pub extent: Option<Rational>,
}

impl Params {
    pub fn q_or(&self, default: u32) -> u32 {
        self.q.unwrap_or(default)
    }

    pub fn tol(&self) -> anyhow::Result<Rational> {
        let tol = self.tol.clone().unwrap_or_else(default_tolerance);
        if tol <= Rational::from_integer(0.into()) {
            return Err(usage("--tol must be positive"));
        }
        Ok(tol)
    }

    pub fn sc_mode(&self) -> anyhow::Result<ScMode> {
        Ok(match (&self.k, self.general_moduli, &self.sc_bounds) {
            (Some(k), _, _) => ScMode::BranchedCover { k: *k },
            (None, true, _) => ScMode::GeneralModuliPerfectSquare,
            (None, false, Some(b)) => ScMode::UserBounds { lo: b[0].clone(), hi: b[1].clone() },
            (None, false, None) => ScMode::Unconstrained,
        })
    }

    pub fn product(&self, default_q: u32) -> anyhow::Result<ProductSurfaceParams> {
        ProductSurfaceParams::new(self.q_or(default_q), self.sc_mode()?).map_err(usage_from)
    }

    pub fn kodaira(&self, default: (u32, u32, u32)) -> anyhow::Result<KodairaParams> {
        if self.general_moduli || self.sc_bounds.is_some() {
            return Err(usage("the Kodaira construction only takes --k for s_C"));
        }
        let mut p = KodairaParams::new(
            self.q_or(default.0),
            self.r.unwrap_or(default.1),
            self.group_order.unwrap_or(default.2),
        )
        .map_err(usage_from)?;
        if let Some(k) = self.k {
            p = p.with_k(k).map_err(usage_from)?;
        }
        if let Some(d) = &self.d {
            p = p.with_cover_degree(d.clone()).map_err(usage_from)?;
        }
        Ok(p)
    }

    /// `--s`, with `boundary` (or absence) meaning `q`.
    pub fn s_or_boundary(&self, q: u32) -> anyhow::Result<(Rational, bool)> {
        match self.s.as_deref() {
            None | Some("boundary") => Ok((Rational::from_integer(q.into()), true)),
            Some(text) => {
                let s = rational_arg(text).map_err(usage)?;
                Ok((s, false))
            }
        }
    }

    pub fn s_or(&self, default: Rational) -> anyhow::Result<Rational> {
        match self.s.as_deref() {
            None => Ok(default),
            Some(text) => rational_arg(text).map_err(usage),
        }
    }
}

/// Wraps errors from the core library that reflect bad parameters.
pub fn param<T>(r: slopestab::Result<T>) -> anyhow::Result<T> {
    r.map_err(|e| match e {
        slopestab::Error::Param(_) | slopestab::Error::NotAmplePolarization(_) => usage_from(e),
        other => anyhow::Error::new(other),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use slopestab::numeric::rat;

    #[test]
    fn sc_mode_from_flags() {
        let p = Params { k: Some(3), ..Params::default() };
        assert_eq!(p.sc_mode().unwrap(), ScMode::BranchedCover { k: 3 });
        let p = Params { sc_bounds: Some(vec![rat(9, 4), rat(5, 2)]), ..Params::default() };
        assert_eq!(p.sc_mode().unwrap(), ScMode::UserBounds { lo: rat(9, 4), hi: rat(5, 2) });
        assert_eq!(Params::default().sc_mode().unwrap(), ScMode::Unconstrained);
    }

    #[test]
    fn boundary_keyword_and_bad_values() {
        let p = Params { s: Some("boundary".into()), ..Params::default() };
        assert_eq!(p.s_or_boundary(5).unwrap(), (rat(5, 1), true));
        let p = Params { s: Some("x".into()), ..Params::default() };
        assert!(p.s_or_boundary(5).unwrap_err().downcast_ref::<UsageError>().is_some());
        let p = Params { tol: Some(rat(0, 1)), ..Params::default() };
        assert!(p.tol().is_err());
        assert!(Params { q: Some(1), ..Params::default() }.product(2).is_err());
    }
}
