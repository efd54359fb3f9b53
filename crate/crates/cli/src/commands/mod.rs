pub mod compress;
pub mod limits;
pub mod simulate;
pub mod spectra;
pub mod tables;
pub mod urn;

/// Default seed for every stochastic command, so that bare invocations
/// are reproducible. Pass `--seed` to change it.
pub const DEFAULT_SEED: u64 = 0x6D61_7279_7472_6565;

/// Print a library error and return the data-error exit code.
pub(crate) fn data_error(err: impl std::fmt::Display) -> i32 {
    eprintln!("error: {err}");
    3
}
