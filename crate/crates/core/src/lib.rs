//! Combinatorics of plabic graphs and cluster seeds for skew Schubert
//! varieties in the Grassmannian.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations, reduced words, Bruhat order, Grassmann necklaces.
//! * [`shapes`]: Young diagrams, lattice paths and their labellings.
//! * [`plabic`]: plabic graphs given by rotation systems, trips, face labels,
//!   moves, bridges and dual quivers.
//! * [`seeds`]: quivers, labelled seeds, mutation, the rectangles seed and the
//!   finite-type classification.
//! * [`pluecker`]: exact Plücker coordinates, sampling and weak separation.
//! * [`lediag`]: ⊕-diagrams, Le-moves and reading words.
//! * [`ppalg`]: diagram modules for the preprojective algebra of type A.
//! * [`cli`]: the command-line front end.

use std::collections::BTreeSet;

pub mod cli;
pub mod error;
pub mod lediag;
pub mod perm;
pub mod plabic;
pub mod pluecker;
pub mod ppalg;
pub mod seeds;
pub mod shapes;

pub use error::{Error, Result};

/// A finite subset of `[n]`, kept sorted.
pub type Subset = BTreeSet<usize>;

/// Formats a subset compactly: `237` when every element is a single digit,
/// `{2,3,11}` otherwise.
pub fn fmt_subset(s: &Subset) -> String {
    if s.iter().all(|&x| x < 10) {
        if s.is_empty() {
            return "{}".into();
        }
        s.iter().map(|x| x.to_string()).collect()
    } else {
        let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Parses `237`, `2 3 7`, `{2,3,7}` or `2,3,7`. A run of digits without
/// separators is read digit by digit.
pub fn parse_subset(text: &str) -> Result<Subset> {
    let t = text.trim().trim_start_matches('{').trim_end_matches('}');
    if t.chars().all(|c| c.is_ascii_digit()) {
        return Ok(t.chars().map(|c| c.to_digit(10).unwrap() as usize).collect());
    }
    t.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|e| Error::Parse(format!("{s}: {e}"))))
        .collect()
}
