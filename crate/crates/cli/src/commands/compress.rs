//! `compress`: build, inspect, and query compact tree files.

use std::collections::BTreeMap;
use std::fs;

use marytree::codec::{
    self, compact_size_formula, encode, image_info, lookup, plain_size, size_params, CodecError,
    CompactImage,
};
use marytree::rng::permutation;
use marytree::MaryTree;

use crate::fmt::{g12, Doc, Format};
use crate::opts::Opts;

use super::{data_error, DEFAULT_SEED};

pub fn run(args: &[String]) -> Result<i32, String> {
    let opts = Opts::parse(
        args,
        &[
            "m", "k", "p", "input", "random-n", "seed", "output", "key", "format",
        ],
    )?;
    let positional = opts.positional();
    match positional.first().map(String::as_str) {
        Some("build") => build(&opts, &positional[1..]),
        Some("inspect") => inspect(&opts, &positional[1..]),
        Some("get") => get(&opts, &positional[1..]),
        Some(other) => Err(format!("unknown compress action '{other}'")),
        None => Err("compress needs an action: build, inspect, or get".to_string()),
    }
}

fn build(opts: &Opts, rest: &[String]) -> Result<i32, String> {
    if !rest.is_empty() {
        return Err(format!("unexpected argument '{}'", rest[0]));
    }
    let m = opts.require_usize("m")?;
    let k = opts.u32_or("k", 4)?;
    let p = opts.u32_or("p", 4)?;
    let output = opts.get("output").ok_or("missing required flag --output")?;
    let format = Format::parse(opts.get("format").unwrap_or("text"))?;
    let params = size_params(m, k, p, 8).map_err(|e| e.to_string())?;

    let ranks = match (opts.get("input"), opts.get_u64("random-n")?) {
        (Some(path), None) => match read_permutation(path) {
            Ok(ranks) => ranks,
            Err(err) => return Ok(data_error(err)),
        },
        (None, Some(0)) => return Err("--random-n needs at least one key".to_string()),
        (None, Some(n)) => permutation(n, opts.u64_or("seed", DEFAULT_SEED)?),
        _ => return Err("need exactly one of --input FILE or --random-n N".to_string()),
    };

    let tree = match MaryTree::from_permutation(m, &ranks) {
        Ok(tree) => tree,
        Err(err) => return Ok(data_error(err)),
    };
    let image = match encode(&tree, &params) {
        // key/offset overflow is a parameter problem: the widths chosen
        // cannot represent this data
        Err(err @ (CodecError::KeyOverflow { .. } | CodecError::OffsetOverflow { .. })) => {
            return Err(err.to_string())
        }
        Err(err) => return Ok(data_error(err)),
        Ok(image) => image,
    };

    let x = tree.gap_profile().map_err(|e| e.to_string())?;
    let full = tree
        .degree_profile()
        .map_err(|e| e.to_string())?
        .outdegree(m);
    let formula = compact_size_formula(&x, full, &params).map_err(|e| e.to_string())?;
    let payload = image.payload_len().map_err(|e| e.to_string())?;
    let plain = plain_size(tree.node_count(), &params);

    if let Err(err) = fs::write(output, image.as_bytes()) {
        return Ok(data_error(format!("cannot write {output}: {err}")));
    }

    let mut doc = Doc::new();
    doc.str("output", output)
        .num("m", m.to_string())
        .num("n", tree.len().to_string())
        .num("nodes", tree.node_count().to_string())
        .num("payload_bytes", payload.to_string())
        .num("formula_bytes", formula.total.to_string())
        .str(
            "formula_matches",
            if payload == formula.total {
                "yes"
            } else {
                "no"
            },
        )
        .num("plain_bytes", plain.to_string())
        .num("ratio", g12(payload as f64 / plain as f64));
    print!("{}", doc.render(format));
    Ok(0)
}

fn read_permutation(path: &str) -> Result<Vec<u64>, String> {
    let text = fs::read_to_string(path).map_err(|err| format!("cannot read {path}: {err}"))?;
    let mut ranks = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let rank: u64 = line
            .parse()
            .map_err(|_| format!("{path}:{}: not an unsigned integer: '{line}'", lineno + 1))?;
        ranks.push(rank);
    }
    if ranks.is_empty() {
        return Err(format!("{path}: no ranks found"));
    }
    Ok(ranks)
}

fn load_image(path: &str) -> Result<CompactImage, String> {
    let bytes = fs::read(path).map_err(|err| format!("cannot read {path}: {err}"))?;
    Ok(CompactImage::from_bytes(bytes))
}

fn inspect(opts: &Opts, rest: &[String]) -> Result<i32, String> {
    let [path] = rest else {
        return Err("inspect needs exactly one file argument".to_string());
    };
    let format = Format::parse(opts.get("format").unwrap_or("text"))?;
    let image = match load_image(path) {
        Ok(image) => image,
        Err(err) => return Ok(data_error(err)),
    };
    let (info, tree) = match image_info(&image).and_then(|info| Ok((info, codec::decode(&image)?)))
    {
        Ok(pair) => pair,
        Err(err) => return Ok(data_error(err)),
    };

    let mut type_counts: BTreeMap<usize, u64> = BTreeMap::new();
    for id in tree.node_ids() {
        *type_counts.entry(tree.node_type(id).code()).or_insert(0) += 1;
    }

    let params =
        size_params(info.m, info.key_bytes, info.link_bytes, 8).map_err(|e| e.to_string())?;
    let x = tree.gap_profile().map_err(|e| e.to_string())?;
    let full = tree
        .degree_profile()
        .map_err(|e| e.to_string())?
        .outdegree(info.m);
    let breakdown = compact_size_formula(&x, full, &params).map_err(|e| e.to_string())?;
    let plain = plain_size(tree.node_count(), &params);

    let mut doc = Doc::new();
    doc.str("file", path.as_str())
        .num("m", info.m.to_string())
        .num("n", info.n.to_string())
        .num("key_bytes", info.key_bytes.to_string())
        .num("link_bytes", info.link_bytes.to_string())
        .num("nodes", tree.node_count().to_string());
    for (code, count) in &type_counts {
        doc.num(&format!("type_count[{code}]"), count.to_string());
    }
    doc.num("full_nodes_bytes", breakdown.full_nodes_bytes.to_string())
        .num("internal_bytes", breakdown.internal_bytes.to_string())
        .num("full_leaf_bytes", breakdown.full_leaf_bytes.to_string())
        .num(
            "partial_leaf_bytes",
            breakdown.partial_leaf_bytes.to_string(),
        )
        .num("total_bytes", breakdown.total.to_string())
        .num("payload_bytes", info.payload_len.to_string())
        .num("plain_bytes", plain.to_string())
        .num("ratio", g12(info.payload_len as f64 / plain as f64));
    print!("{}", doc.render(format));
    Ok(0)
}

fn get(opts: &Opts, rest: &[String]) -> Result<i32, String> {
    let [path] = rest else {
        return Err("get needs exactly one file argument".to_string());
    };
    let key = opts.require_u64("key")?;
    let image = match load_image(path) {
        Ok(image) => image,
        Err(err) => return Ok(data_error(err)),
    };
    match lookup(&image, key) {
        Ok(true) => {
            println!("found {key}");
            Ok(0)
        }
        Ok(false) => {
            println!("not found {key}");
            Ok(1)
        }
        Err(err) => Ok(data_error(err)),
    }
}
