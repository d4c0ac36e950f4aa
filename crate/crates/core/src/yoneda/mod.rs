//! Yoneda algebras: cobar dimensions, products, generation and verdicts.

pub mod cobar;
pub mod generation;
pub mod model;
pub mod monomial;
pub mod verdict;

use crate::field::Field;
use crate::groebner::{complete, Presentation};
use crate::resolution::morse::MorseEngine;
use crate::resolution::{BettiError, BettiTable};
use generation::{generation_profile, GenerationReport};
use model::MorseModel;

/// Betti table and generation profile of `A` through the Morse resolution.
pub fn analyze<F: Field>(
    p: &Presentation<F>,
    imax: usize,
    jmax: usize,
) -> Result<(BettiTable, GenerationReport), BettiError> {
    let gb = complete(p, jmax.max(p.max_degree()))?;
    let mut e = MorseEngine::trivial(&gb, imax + 1, jmax)?;
    let t = e.betti_table(imax);
    let mut m = MorseModel::new(e);
    let r = generation_profile(&mut m, &t, imax, jmax);
    Ok((t, r))
}
