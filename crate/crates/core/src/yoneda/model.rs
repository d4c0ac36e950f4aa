//! Cochain-level access to `Ext_A(𝕜, 𝕜)` for generation analysis.

use std::collections::HashMap;

use thiserror::Error;

use crate::field::Field;
use crate::linalg::{kernel, SparseVec};
use crate::resolution::morse::MorseEngine;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("({i},{j}) is outside what the model can compute")]
    Undecided { i: usize, j: usize },
}

/// Cochains in bidegree `(i, j)` with cocycles, coboundaries and a product
/// that is compatible with both.
pub trait ExtModel<F: Field> {
    fn field(&self) -> &F;
    fn cocycles(&mut self, i: usize, j: usize) -> Result<Vec<SparseVec<F::Elem>>, ModelError>;
    fn coboundaries(&mut self, i: usize, j: usize) -> Result<Vec<SparseVec<F::Elem>>, ModelError>;
    /// All products `x·y` for `x ∈ a`, `y ∈ b`, `a`-major.
    fn products(
        &mut self,
        a_deg: (usize, usize),
        a: &[SparseVec<F::Elem>],
        b_deg: (usize, usize),
        b: &[SparseVec<F::Elem>],
    ) -> Result<Vec<SparseVec<F::Elem>>, ModelError>;
}

type Terms<E> = HashMap<(usize, usize), Vec<(usize, usize, E)>>;

/// Cochains on the critical cells of the Morse resolution.
pub struct MorseModel<F: Field> {
    engine: MorseEngine<F>,
    terms: HashMap<(usize, usize), Vec<Terms<F::Elem>>>,
}

impl<F: Field> MorseModel<F> {
    pub fn new(engine: MorseEngine<F>) -> Self {
        MorseModel { engine, terms: HashMap::new() }
    }

    pub fn engine(&mut self) -> &mut MorseEngine<F> {
        &mut self.engine
    }

    fn check(&self, i: usize, j: usize) -> Result<(), ModelError> {
        if i + 1 > self.engine.enumerated_through() || i + 1 > self.engine.nmax() || j > self.engine.jmax() {
            Err(ModelError::Undecided { i, j })
        } else {
            Ok(())
        }
    }

    /// Columns of the differential `crit(n, j) → crit(n−1, j)`.
    fn columns(&mut self, n: usize, j: usize) -> Vec<SparseVec<F::Elem>> {
        let width = self.engine.crit_count(n - 1, j);
        let mut cols = vec![Vec::new(); width];
        if self.engine.crit_count(n, j) > 0 && width > 0 {
            let d = self.engine.differential(n, j);
            for (r, row) in d.iter().enumerate() {
                for (c, e) in row {
                    cols[*c].push((r, e.clone()));
                }
            }
        }
        cols
    }
}

impl<F: Field> ExtModel<F> for MorseModel<F> {
    fn field(&self) -> &F {
        self.engine.field()
    }

    fn cocycles(&mut self, i: usize, j: usize) -> Result<Vec<SparseVec<F::Elem>>, ModelError> {
        self.check(i, j)?;
        let cols = self.columns(i + 1, j);
        Ok(kernel(self.engine.field(), &cols))
    }

    fn coboundaries(&mut self, i: usize, j: usize) -> Result<Vec<SparseVec<F::Elem>>, ModelError> {
        self.check(i, j)?;
        if i == 0 {
            return Ok(Vec::new());
        }
        Ok(self.columns(i, j))
    }

    fn products(
        &mut self,
        (ia, ja): (usize, usize),
        a: &[SparseVec<F::Elem>],
        (ib, jb): (usize, usize),
        b: &[SparseVec<F::Elem>],
    ) -> Result<Vec<SparseVec<F::Elem>>, ModelError> {
        let (n, j) = (ia + ib, ja + jb);
        self.check(n, j)?;
        let f = self.engine.field().clone();
        if !self.terms.contains_key(&(n, j)) {
            let count = self.engine.crit_count(n, j);
            let t: Vec<_> = (0..count).map(|c| self.engine.product_terms(n, j, c)).collect();
            self.terms.insert((n, j), t);
        }
        let terms = &self.terms[&(n, j)];
        let dense = |v: &SparseVec<F::Elem>, len: usize| {
            let mut d = vec![f.zero(); len];
            for (k, e) in v {
                d[*k] = e.clone();
            }
            d
        };
        let la = self.engine.crit_count(ia, ja);
        let lb = self.engine.crit_count(ib, jb);
        let da: Vec<_> = a.iter().map(|v| dense(v, la)).collect();
        let db: Vec<_> = b.iter().map(|v| dense(v, lb)).collect();
        let mut out = vec![Vec::new(); a.len() * b.len()];
        for (c, split) in terms.iter().enumerate() {
            let Some(list) = split.get(&(ia, ja)) else { continue };
            for (x, va) in da.iter().enumerate() {
                for (y, vb) in db.iter().enumerate() {
                    let mut s = f.zero();
                    for (p, q, e) in list {
                        if !f.is_zero(&va[*p]) && !f.is_zero(&vb[*q]) {
                            s = f.add(&s, &f.mul(e, &f.mul(&va[*p], &vb[*q])));
                        }
                    }
                    if !f.is_zero(&s) {
                        out[x * b.len() + y].push((c, s));
                    }
                }
            }
        }
        Ok(out)
    }
}
