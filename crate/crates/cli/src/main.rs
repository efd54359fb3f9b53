//! Command-line front end for the marytree library: reference tables,
//! limit constants, seeded experiments, and compact tree files.
//!
//! Every command's output is a pure function of its flags — stochastic
//! commands default to a fixed seed — and exit codes follow one
//! contract: 0 success (or key found), 1 key not found, 2 usage error,
//! 3 data or parse error.

mod commands;
mod fmt;
mod opts;

const USAGE: &str = "\
usage: marytree <command> [flags]

commands:
  spectra   --m-min 2 --m-max 27 [--format text|csv|json]
            second eigenvalue and limit-law regime per branching factor
  limits    --m M [--format ...]
            limiting gap/degree fractions and derived constants
  simulate  --m M --n N [--trials 10] [--seed S] [--format ...]
            Monte Carlo tree growth compared against the limits
  urn       --m M [--steps 10000] [--seed S] [--format ...]
            raw gap-color process, no trees
  tables    --which lambda2|relsize [--k 4 --p 4 --b 8] [--format ...]
            reference tables for m = 2..27
  compress  build --m M (--input FILE | --random-n N [--seed S]) --output FILE [--k 4 --p 4]
  compress  inspect FILE [--format ...]
  compress  get FILE --key K

exit codes: 0 ok/found, 1 not found, 2 usage, 3 data/parse error";

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(dispatch(&args));
}

fn dispatch(args: &[String]) -> i32 {
    let (command, rest) = match args.split_first() {
        Some(pair) => pair,
        None => {
            eprintln!("{USAGE}");
            return 2;
        }
    };
    let result = match command.as_str() {
        "spectra" => commands::spectra::run(rest),
        "limits" => commands::limits::run(rest),
        "simulate" => commands::simulate::run(rest),
        "urn" => commands::urn::run(rest),
        "tables" => commands::tables::run(rest),
        "compress" => commands::compress::run(rest),
        "help" | "--help" | "-h" => {
            println!("{USAGE}");
            return 0;
        }
        other => {
            eprintln!("error: unknown command '{other}'");
            eprintln!("{USAGE}");
            return 2;
        }
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            eprintln!("{USAGE}");
            2
        }
    }
}
