//! `tables`: the two m = 2..27 reference tables.

use marytree::codec::relative_limit_exact;
use marytree::spectra::eigen_spectrum;

use crate::fmt::{f3, Cell, Format, Table};
use crate::opts::Opts;

use super::data_error;

pub fn run(args: &[String]) -> Result<i32, String> {
    let opts = Opts::parse(args, &["which", "k", "p", "b", "format"])?;
    if !opts.positional().is_empty() {
        return Err(format!("unexpected argument '{}'", opts.positional()[0]));
    }
    let which = opts
        .get("which")
        .ok_or("missing required flag --which (lambda2 or relsize)")?;
    let k = opts.u32_or("k", 4)?;
    let p = opts.u32_or("p", 4)?;
    let b = opts.u32_or("b", 8)?;
    let format = Format::parse(opts.get("format").unwrap_or("text"))?;

    let mut table = match which {
        "lambda2" => Table {
            columns: vec!["m", "re_lambda2"],
            rows: Vec::new(),
        },
        "relsize" => Table {
            columns: vec!["m", "relative_size"],
            rows: Vec::new(),
        },
        other => return Err(format!("unknown table '{other}' (lambda2 or relsize)")),
    };

    for m in 2..=27 {
        let value = match which {
            "lambda2" => match eigen_spectrum(m) {
                Ok(report) => report.lambda2_re(),
                Err(err) => return Ok(data_error(err)),
            },
            _ => relative_limit_exact(m, k, p, b).map_err(|e| e.to_string())?,
        };
        table
            .rows
            .push(vec![Cell::num(m.to_string()), Cell::num(f3(value))]);
    }
    print!("{}", table.render(format));
    Ok(0)
}
