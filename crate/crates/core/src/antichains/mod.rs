//! Finite samples of antichain families beyond the basis elements: the
//! closed graphs `X_ν`, tail equivalence of sequences, prime-coded
//! sequences, and Kneser graphs.

mod kneser;
mod primes;
mod seq;
mod xnu;

pub use kneser::{
    chromatic_number, complete_graph, kneser_graph, kneser_sequence_check, ChromaticOutcome, KneserReport, KneserRow,
};
pub use primes::{first_primes, nu_alpha, prime_coded, prime_coded_shifted};
pub use seq::{et_equivalent, EventuallyPeriodicSeq};
pub use xnu::{make_x_nu, x_nu_forced_compare, Branch, ForcedOutcome, XnuCounts, XnuSample};
