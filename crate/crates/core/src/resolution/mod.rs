//! Minimal resolutions and bigraded Betti tables.

pub mod anngraph;
pub mod linear;
pub mod morse;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::groebner::{complete, GroebnerError, Presentation};
use crate::resolution::morse::{MorseEngine, MorseError};
use crate::word::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BettiError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Morse(#[from] MorseError),
}

/// `dim Ext_A^{i,j}(𝕜, 𝕜)` for `i ≤ imax`, `j ≤ jmax`.
pub fn algebra_betti<F: Field>(p: &Presentation<F>, imax: usize, jmax: usize) -> Result<BettiTable, BettiError> {
    let gb = complete(p, jmax.max(p.max_degree()))?;
    let mut e = MorseEngine::trivial(&gb, imax + 1, jmax)?;
    Ok(e.betti_table(imax))
}

/// `dim Ext_A^{i,j}(R, 𝕜)` for the left module `R = A/⟨gens⟩`, computed as
/// the right module `R^op` over `A^op`.
pub fn cyclic_module_betti<F: Field>(
    a: &Presentation<F>,
    gens: &[Poly<F::Elem>],
    imax: usize,
    jmax: usize,
) -> Result<BettiTable, BettiError> {
    let aop = a.opposite();
    let mut rels = aop.relations.clone();
    rels.extend(gens.iter().map(|g| g.reversed(&a.field)));
    let kop = aop.with_relations(rels)?;
    let ga = complete(&aop, jmax.max(aop.max_degree()))?;
    let gk = complete(&kop, jmax.max(kop.max_degree()))?;
    let mut e = MorseEngine::module(&ga, &gk, imax + 1, jmax)?;
    Ok(e.betti_table(imax))
}

/// `β_{i,j}` for `0 ≤ i ≤ imax`, `0 ≤ j ≤ jmax`, with per-column certification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    imax: usize,
    jmax: usize,
    entries: BTreeMap<(usize, usize), u64>,
    certified: Vec<bool>,
}

impl BettiTable {
    pub fn new(imax: usize, jmax: usize) -> Self {
        BettiTable { imax, jmax, entries: BTreeMap::new(), certified: vec![false; imax + 1] }
    }

    pub fn imax(&self) -> usize {
        self.imax
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        assert!(i <= self.imax && j <= self.jmax, "({i},{j}) outside table bounds");
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    pub fn certified(&self, i: usize) -> bool {
        self.certified.get(i).copied().unwrap_or(false)
    }

    pub fn set_certified(&mut self, i: usize, c: bool) {
        self.certified[i] = c;
    }

    pub fn all_certified(&self) -> bool {
        self.certified.iter().all(|&c| c)
    }

    /// Largest `i` such that columns `0..=i` are all certified.
    pub fn certified_through(&self) -> Option<usize> {
        let k = self.certified.iter().take_while(|&&c| c).count();
        k.checked_sub(1)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn column_total(&self, i: usize) -> u64 {
        self.entries.range((i, 0)..=(i, usize::MAX)).map(|(_, v)| v).sum()
    }

    /// Largest `i` with a nonzero entry.
    pub fn length(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// `Σ_i (−1)^i β_{i,j}`.
    pub fn euler(&self, j: usize) -> i128 {
        self.entries
            .iter()
            .filter(|(k, _)| k.1 == j)
            .map(|(k, &v)| if k.0 % 2 == 0 { v as i128 } else { -(v as i128) })
            .sum()
    }

    /// The sub-table with smaller bounds.
    pub fn restrict(&self, imax: usize, jmax: usize) -> BettiTable {
        let imax = imax.min(self.imax);
        let jmax = jmax.min(self.jmax);
        BettiTable {
            imax,
            jmax,
            entries: self.entries.iter().filter(|(k, _)| k.0 <= imax && k.1 <= jmax).map(|(&k, &v)| (k, v)).collect(),
            certified: self.certified[..=imax].to_vec(),
        }
    }

    /// First bidegree (in `(i, j)` order) where the tables differ.
    pub fn first_difference(&self, other: &BettiTable) -> Option<(usize, usize)> {
        let imax = self.imax.min(other.imax);
        let jmax = self.jmax.min(other.jmax);
        (0..=imax)
            .flat_map(|i| (0..=jmax).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != other.get(i, j))
    }

    /// `i,j,dim,certified` rows for the nonzero entries.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,dim,certified\n");
        for ((i, j), v) in self.entries() {
            s.push_str(&format!("{i},{j},{v},{}\n", self.certified(i)));
        }
        s
    }
}

/// Coefficients of `1/H(t)` up to `t^n`, where `h[0] = 1`.
pub fn inverse_series(h: &[u128], n: usize) -> Vec<i128> {
    let mut inv = vec![0i128; n + 1];
    inv[0] = 1;
    for k in 1..=n {
        let mut s = 0i128;
        for i in 1..=k {
            let hi = h.get(i).copied().unwrap_or(0) as i128;
            s -= hi * inv[k - i];
        }
        inv[k] = s;
    }
    inv
}
