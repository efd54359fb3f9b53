//! Random m-ary search trees, their gap/degree profiles, the balanced
//! urn that models them, the spectral limit theory of that urn, and a
//! compact binary on-disk tree format whose measured size matches the
//! analytic model byte for byte.
//!
//! The crate is organized around six concerns:
//!
//! * [`tree`] — the m-ary search tree, insertion under the random
//!   permutation model, node-type classification, and exact gap and
//!   outdegree profiles.
//! * [`urn`] — the 2m-2 color ball-replacement process equivalent to
//!   tree growth: replacement matrix, draw dynamics, simulation, and the
//!   exact step coupling with tree insertion.
//! * [`spectra`] — eigenvalues of the transposed replacement matrix:
//!   closed-form principal eigenvector, a dense nonsymmetric
//!   eigensolver, and the Gaussian/non-Gaussian regime classification
//!   that flips between m = 26 and m = 27.
//! * [`asymptotics`] — the limiting gap and degree fractions, seeded
//!   Monte Carlo convergence experiments, and a normality probe for the
//!   centered leaf count.
//! * [`codec`] — the analytic size model and the bit-exact compact tree
//!   format with direct membership lookup.
//! * [`rng`] — the pinned, portable random number generation everything
//!   reproducible rests on.

pub mod asymptotics;
pub mod codec;
pub mod error;
pub mod rng;
pub mod spectra;
pub mod tree;
pub mod urn;

pub use error::{Error, Result};
pub use tree::{DegreeProfile, Gap, GapProfile, MaryTree, NodeId, NodeTypeCode, Rank};

#[cfg(test)]
pub(crate) mod testutil {
    /// Insertion order for the worked quaternary example exercised all
    /// over the test suite: 7 nodes, gap profile (0,2,0,8,4,3), degree
    /// profile (5,0,1,0,1).
    pub const QUATERNARY_PERM: [u64; 16] = [12, 16, 11, 9, 13, 7, 3, 5, 15, 1, 4, 14, 10, 8, 2, 6];
}
