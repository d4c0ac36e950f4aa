//! Sparse exact row reduction.
//!
//! Vectors are sorted `(index, value)` lists without zeros. The pivot of a
//! row is its greatest index.

use std::collections::HashMap;

use crate::field::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

/// `a + c·b`.
pub fn axpy<F: Field>(f: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(c, &b[j].1)));
            j += 1;
        } else {
            let s = f.add(&a[i].1, &f.mul(c, &b[j].1));
            if !f.is_zero(&s) {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(k, e)| (*k, f.mul(c, e))).collect()
}

/// Sorts and merges an unsorted list of entries.
pub fn normalize<F: Field>(f: &F, mut v: Vec<(usize, F::Elem)>) -> SparseVec<F::Elem> {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (k, e) in v {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = f.add(&last.1, &e),
            _ => out.push((k, e)),
        }
    }
    out.retain(|(_, e)| !f.is_zero(e));
    out
}

/// Rows in echelon form keyed by pivot, each with pivot coefficient one.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon { field, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Eliminates the leading entry until it is not a pivot column.
    pub fn top_reduce(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        while let Some((k, c)) = v.last() {
            match self.pivots.get(k) {
                Some(&r) => {
                    let c = f.neg(c);
                    v = axpy(f, &v, &c, &self.rows[r]);
                }
                None => break,
            }
        }
        v
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut pos = v.len();
        while pos > 0 {
            let (k, c) = &v[pos - 1];
            if let Some(&r) = self.pivots.get(k) {
                let k = *k;
                let c = f.neg(c);
                v = axpy(f, &v, &c, &self.rows[r]);
                pos = v.partition_point(|e| e.0 < k);
            } else {
                pos -= 1;
            }
        }
        v
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        self.top_reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let v = self.top_reduce(v);
        match v.last() {
            None => false,
            Some((k, c)) => {
                let k = *k;
                let inv = self.field.inv(c).expect("nonzero pivot");
                let v = scale(&self.field, &inv, &v);
                self.pivots.insert(k, self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }

    /// Reduced row echelon form, rows ordered by ascending pivot.
    pub fn rref_rows(&self) -> Vec<SparseVec<F::Elem>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].last().unwrap().0);
        let mut done = Echelon::new(self.field.clone());
        let mut out = Vec::new();
        for r in order {
            let row = self.rows[r].clone();
            let (p, one) = row.last().unwrap().clone();
            let body = done.reduce(row[..row.len() - 1].to_vec());
            let mut full = body;
            full.push((p, one));
            done.pivots.insert(p, done.rows.len());
            done.rows.push(full.clone());
            out.push(full);
        }
        out
    }
}

pub fn rank<F: Field>(f: &F, rows: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut e = Echelon::new(f.clone());
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// A basis of `{c : Σ c_k · images[k] = 0}`.
pub fn kernel<F: Field>(f: &F, images: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut rows: Vec<(SparseVec<F::Elem>, SparseVec<F::Elem>)> = Vec::new();
    let mut pivots: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::new();
    for (k, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut combo = vec![(k, f.one())];
        while let Some((p, c)) = v.last() {
            match pivots.get(p) {
                Some(&r) => {
                    let c = f.neg(c);
                    v = axpy(f, &v, &c, &rows[r].0);
                    combo = axpy(f, &combo, &c, &rows[r].1);
                }
                None => break,
            }
        }
        match v.last() {
            None => out.push(combo),
            Some((p, c)) => {
                let inv = f.inv(c).unwrap();
                pivots.insert(*p, rows.len());
                rows.push((scale(f, &inv, &v), scale(f, &inv, &combo)));
            }
        }
    }
    out
}
