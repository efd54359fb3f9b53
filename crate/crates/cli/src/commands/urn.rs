//! `urn`: drive the gap-color process directly, without trees.

use marytree::spectra::principal_eigenvector;
use marytree::urn::simulate;

use crate::fmt::{g12, Doc, Format};
use crate::opts::Opts;

use super::DEFAULT_SEED;

pub fn run(args: &[String]) -> Result<i32, String> {
    let opts = Opts::parse(args, &["m", "steps", "seed", "format"])?;
    if !opts.positional().is_empty() {
        return Err(format!("unexpected argument '{}'", opts.positional()[0]));
    }
    let m = opts.require_usize("m")?;
    let steps = opts.u64_or("steps", 10_000)?;
    let seed = opts.u64_or("seed", DEFAULT_SEED)?;
    let format = Format::parse(opts.get("format").unwrap_or("text"))?;

    let state = simulate(m, steps, seed).map_err(|e| e.to_string())?;
    let v = principal_eigenvector(m).map_err(|e| e.to_string())?;
    let total = state.total() as f64;
    let fractions: Vec<f64> = state.counts().iter().map(|&c| c as f64 / total).collect();
    let sup_deviation = fractions
        .iter()
        .zip(v.components())
        .map(|(got, want)| (got - want).abs())
        .fold(0.0f64, f64::max);

    let mut doc = Doc::new();
    doc.num("m", m.to_string())
        .num("steps", steps.to_string())
        .num("seed", seed.to_string())
        .num("total_balls", state.total().to_string())
        .num("sup_deviation_from_v", g12(sup_deviation))
        .nums(
            "counts",
            state.counts().iter().map(|c| c.to_string()).collect(),
        )
        .nums("fractions", fractions.iter().map(|&x| g12(x)).collect())
        .nums("v", v.components().iter().map(|&x| g12(x)).collect());
    print!("{}", doc.render(format));
    Ok(0)
}
