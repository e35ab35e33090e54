//! Number-theoretic sets: primes, prime powers, reciprocal sequences, the
//! `k^5` prime subsequence and dyadic-block diagnostics.

mod bhp;
mod families;
mod large;
mod primes;
mod progressions;
mod sequence;

pub use bhp::{
    bhp_primes, bhp_subsequence, classify_decay, gap_difference_g, BhpReport, BhpRow, DecayClass, Fit, GapDifference,
    GapReport,
};
pub use families::{gen_set, Family};
pub use large::{large_set_diagnostics, BlockRow, LargeSetReport};
pub use primes::{is_prime, is_prime_trial, is_prime_u64, next_prime, sieve_primes};
pub use progressions::find_3ap;
pub use sequence::{reciprocal_set, IntegerSequence, Provenance};
