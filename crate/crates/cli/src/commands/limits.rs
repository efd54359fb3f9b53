//! `limits`: limiting gap/degree fractions and derived constants.

use marytree::asymptotics::limit_profile;
use marytree::spectra::harmonic;

use crate::fmt::{g12, Doc, Format};
use crate::opts::Opts;

pub fn run(args: &[String]) -> Result<i32, String> {
    let opts = Opts::parse(args, &["m", "format"])?;
    if !opts.positional().is_empty() {
        return Err(format!("unexpected argument '{}'", opts.positional()[0]));
    }
    let m = opts.require_usize("m")?;
    let format = Format::parse(opts.get("format").unwrap_or("text"))?;
    let limits = limit_profile(m).map_err(|e| e.to_string())?;

    let mut doc = Doc::new();
    doc.num("m", m.to_string())
        .num("harmonic", g12(harmonic(m)))
        .num("leaf_fraction", g12(limits.leaf_fraction))
        .num("node_fraction", g12(limits.node_fraction))
        .num("protected_fraction", g12(limits.protected_fraction))
        .num("protected_fraction_alt", g12(limits.protected_fraction_alt))
        .num("full_fraction", g12(limits.full_fraction))
        .nums("v", limits.v.iter().map(|&x| g12(x)).collect())
        .nums("v_star", limits.v_star.iter().map(|&x| g12(x)).collect())
        .str(
            "note",
            "protected_fraction = node_fraction - leaf_fraction; the halved constant \
             protected_fraction_alt is sometimes quoted for the same quantity but \
             simulation matches the difference form",
        );
    print!("{}", doc.render(format));
    Ok(0)
}
