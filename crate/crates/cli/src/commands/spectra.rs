//! `spectra`: second eigenvalue and regime per branching factor.

use marytree::spectra::eigen_spectrum;

use crate::fmt::{f3, Cell, Format, Table};
use crate::opts::Opts;

use super::data_error;

pub fn run(args: &[String]) -> Result<i32, String> {
    let opts = Opts::parse(args, &["m-min", "m-max", "format"])?;
    if !opts.positional().is_empty() {
        return Err(format!("unexpected argument '{}'", opts.positional()[0]));
    }
    let m_min = opts.usize_or("m-min", 2)?;
    let m_max = opts.usize_or("m-max", 27)?;
    let format = Format::parse(opts.get("format").unwrap_or("text"))?;
    if !(2 <= m_min && m_min <= m_max && m_max <= 64) {
        return Err(format!(
            "need 2 <= m-min <= m-max <= 64, got {m_min}..{m_max}"
        ));
    }

    let mut table = Table {
        columns: vec!["m", "re_lambda2", "regime"],
        rows: Vec::new(),
    };
    for m in m_min..=m_max {
        let report = match eigen_spectrum(m) {
            Ok(report) => report,
            Err(err) => return Ok(data_error(err)),
        };
        table.rows.push(vec![
            Cell::num(m.to_string()),
            Cell::num(f3(report.lambda2_re())),
            Cell::str(report.regime().to_string()),
        ]);
    }
    print!("{}", table.render(format));
    Ok(0)
}
