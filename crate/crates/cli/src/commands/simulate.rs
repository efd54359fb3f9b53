//! `simulate`: Monte Carlo tree growth against the limit fractions.

use marytree::asymptotics::monte_carlo;

use crate::fmt::{g12, Doc, Format};
use crate::opts::Opts;

use super::DEFAULT_SEED;

pub fn run(args: &[String]) -> Result<i32, String> {
    let opts = Opts::parse(args, &["m", "n", "trials", "seed", "format"])?;
    if !opts.positional().is_empty() {
        return Err(format!("unexpected argument '{}'", opts.positional()[0]));
    }
    let m = opts.require_usize("m")?;
    let n = opts.require_u64("n")?;
    let trials = opts.u64_or("trials", 10)?;
    let seed = opts.u64_or("seed", DEFAULT_SEED)?;
    let format = Format::parse(opts.get("format").unwrap_or("text"))?;

    let report = monte_carlo(m, n, trials, seed).map_err(|e| e.to_string())?;

    let fmt_all = |values: &[f64]| values.iter().map(|&x| g12(x)).collect();
    let mut doc = Doc::new();
    doc.num("m", m.to_string())
        .num("n", n.to_string())
        .num("trials", trials.to_string())
        .num("seed", seed.to_string())
        .num("sup_gap_deviation", g12(report.sup_gap_deviation))
        .num("sup_degree_deviation", g12(report.sup_degree_deviation))
        .num(
            "mean_protected_fraction",
            g12(report.mean_protected_fraction),
        )
        .nums("mean_gap_fractions", fmt_all(&report.mean_gap_fractions))
        .nums("gap_deviations", fmt_all(&report.gap_deviations))
        .nums(
            "mean_degree_fractions",
            fmt_all(&report.mean_degree_fractions),
        )
        .nums("degree_deviations", fmt_all(&report.degree_deviations));
    print!("{}", doc.render(format));
    Ok(0)
}
