//! The reduced cobar complex and its cup product.
//!
//! `C^{i,j}` is dual to the span of tuples `(w₁|…|wᵢ)` of normal words of
//! positive degree with `Σ|wₜ| = j`. The bar differential is
//!
//! ```text
//! b(w₁|…|wᵢ) = Σₜ (−1)^{t+1} (…|wₜwₜ₊₁|…)
//! ```
//!
//! and `d = bᵀ`. The cup product is concatenation of tuples with no sign.
//!
//! [`ext_dims_cobar`] never builds whole blocks: the bar differential keeps
//! the congruence class of the concatenated word fixed, where terms of one
//! Gröbner element are congruent. Words meeting only monomial relations form
//! singleton classes whose complex depends only on where the relations sit,
//! so those are computed once per pattern.

use std::collections::HashMap;

use thiserror::Error;

use crate::field::Field;
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::quotient::{QuotientAlgebra, QuotientError};
use crate::resolution::BettiTable;
use crate::word::Word;

/// Largest number of tuples in one block (or one class of a block).
pub const DEFAULT_BLOCK_BUDGET: usize = 2_000_000;
/// Largest number of words of one degree scanned by [`ext_dims_cobar`].
pub const WORD_SCAN_LIMIT: u128 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CobarError {
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("cobar block ({i},{j}) has {size} tuples, above the budget of {budget}")]
    Budget { i: usize, j: usize, size: u128, budget: usize },
    #[error("degree {j} has {count} words, above the scan limit")]
    TooManyWords { j: usize, count: u128 },
    #[error("({i},{j}) lies outside the stored bounds")]
    OutOfBounds { i: usize, j: usize },
    #[error("class at ({i},{j}) is not a cocycle")]
    NotCocycle { i: usize, j: usize },
}

/// A cocycle in `C^{i,j}`, coordinates over the tuple basis of the block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass<E> {
    pub i: usize,
    pub j: usize,
    pub cocycle: SparseVec<E>,
}

#[derive(Debug, Default)]
struct Block {
    tuples: Vec<Vec<Word>>,
    index: HashMap<Vec<Word>, usize>,
}

/// Explicit cobar blocks for `i ≤ imax + 1`, `j ≤ jmax`.
pub struct CobarComplex<'a, F: Field> {
    q: &'a QuotientAlgebra<F>,
    imax: usize,
    jmax: usize,
    blocks: HashMap<(usize, usize), Block>,
    /// `b: B_{i,j} → B_{i−1,j}` for `i ≥ 2`, one row per tuple.
    bar: HashMap<(usize, usize), Vec<SparseVec<F::Elem>>>,
}

impl<'a, F: Field> CobarComplex<'a, F> {
    pub fn new(q: &'a QuotientAlgebra<F>, imax: usize, jmax: usize) -> Result<Self, CobarError> {
        Self::with_budget(q, imax, jmax, DEFAULT_BLOCK_BUDGET)
    }

    pub fn with_budget(q: &'a QuotientAlgebra<F>, imax: usize, jmax: usize, budget: usize) -> Result<Self, CobarError> {
        if jmax > q.trusted_degree() {
            return Err(QuotientError::DegreeExceedsTrusted { degree: jmax, trusted: q.trusted_degree() }.into());
        }
        let h = q.hilbert();
        let top = imax + 1;
        // sizes[i][j] = number of tuples
        let mut sizes = vec![vec![0u128; jmax + 1]; top + 1];
        sizes[0][0] = 1;
        for i in 1..=top {
            for j in i..=jmax {
                sizes[i][j] = (1..=j - (i - 1)).map(|k| h[k] * sizes[i - 1][j - k]).sum();
                if sizes[i][j] > budget as u128 {
                    return Err(CobarError::Budget { i, j, size: sizes[i][j], budget });
                }
            }
        }
        let mut blocks: HashMap<(usize, usize), Block> = HashMap::new();
        let mut b0 = Block::default();
        b0.index.insert(Vec::new(), 0);
        b0.tuples.push(Vec::new());
        blocks.insert((0, 0), b0);
        for i in 1..=top {
            for j in i..=jmax {
                let mut blk = Block::default();
                for k in 1..=j - (i - 1) {
                    let words = q.degree_basis(k)?;
                    let Some(rest) = blocks.get(&(i - 1, j - k)) else { continue };
                    for w in &words.words {
                        for r in &rest.tuples {
                            let mut t = Vec::with_capacity(i);
                            t.push(w.clone());
                            t.extend(r.iter().cloned());
                            blk.index.insert(t.clone(), blk.tuples.len());
                            blk.tuples.push(t);
                        }
                    }
                }
                blocks.insert((i, j), blk);
            }
        }
        let f = q.field().clone();
        let mut bar = HashMap::new();
        for i in 2..=top {
            for j in i..=jmax {
                let src = &blocks[&(i, j)];
                let tgt = &blocks[&(i - 1, j)];
                let rows = src
                    .tuples
                    .iter()
                    .map(|t| {
                        let mut acc = Vec::new();
                        for s in 0..i - 1 {
                            let prod = q.reduce_word(&t[s].concat(&t[s + 1]));
                            for (w, c) in prod.terms() {
                                let mut u: Vec<Word> = Vec::with_capacity(i - 1);
                                u.extend(t[..s].iter().cloned());
                                u.push(w.clone());
                                u.extend(t[s + 2..].iter().cloned());
                                let c = if s % 2 == 0 { c.clone() } else { f.neg(c) };
                                acc.push((tgt.index[&u], c));
                            }
                        }
                        crate::linalg::normalize(&f, acc)
                    })
                    .collect();
                bar.insert((i, j), rows);
            }
        }
        Ok(CobarComplex { q, imax, jmax, blocks, bar })
    }

    pub fn field(&self) -> &F {
        self.q.field()
    }

    pub fn imax(&self) -> usize {
        self.imax
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    fn in_bounds(&self, i: usize, j: usize) -> Result<(), CobarError> {
        if i > self.imax + 1 || j > self.jmax {
            Err(CobarError::OutOfBounds { i, j })
        } else {
            Ok(())
        }
    }

    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.blocks.get(&(i, j)).map_or(0, |b| b.tuples.len())
    }

    /// The tuple basis of `C^{i,j}`.
    pub fn basis(&self, i: usize, j: usize) -> &[Vec<Word>] {
        self.blocks.get(&(i, j)).map_or(&[], |b| &b.tuples)
    }

    /// Images of the basis cochains of `C^{i,j}` in `C^{i+1,j}`.
    pub fn differential(&self, i: usize, j: usize) -> Result<Vec<SparseVec<F::Elem>>, CobarError> {
        self.in_bounds(i + 1, j)?;
        let mut cols: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); self.dim(i, j)];
        if i >= 1 {
            if let Some(rows) = self.bar.get(&(i + 1, j)) {
                for (r, row) in rows.iter().enumerate() {
                    for (c, e) in row {
                        cols[*c].push((r, e.clone()));
                    }
                }
            }
        }
        Ok(cols)
    }

    /// Checks `d∘d = 0` on every block where both maps are stored.
    pub fn check_d_squared(&self) -> bool {
        let f = self.field();
        for i in 1..self.imax {
            for j in 0..=self.jmax {
                let (Ok(d1), Ok(d2)) = (self.differential(i, j), self.differential(i + 1, j)) else { continue };
                for v in &d1 {
                    let mut acc = Vec::new();
                    for (k, e) in v {
                        for (m, x) in &d2[*k] {
                            acc.push((*m, f.mul(e, x)));
                        }
                    }
                    if !crate::linalg::normalize(f, acc).is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// A basis of the cocycles in `C^{i,j}`; needs `i ≤ imax`.
    pub fn cocycles(&self, i: usize, j: usize) -> Result<Vec<SparseVec<F::Elem>>, CobarError> {
        let d = self.differential(i, j)?;
        Ok(kernel(self.field(), &d))
    }

    /// Spanning vectors of the coboundaries in `C^{i,j}`.
    pub fn coboundaries(&self, i: usize, j: usize) -> Result<Vec<SparseVec<F::Elem>>, CobarError> {
        if i == 0 {
            return Ok(Vec::new());
        }
        self.differential(i - 1, j)
    }

    pub fn ext_dim(&self, i: usize, j: usize) -> Result<usize, CobarError> {
        let z = self.cocycles(i, j)?.len();
        let b = crate::linalg::rank(self.field(), self.coboundaries(i, j)?);
        Ok(z - b)
    }

    pub fn is_cocycle(&self, c: &ExtClass<F::Elem>) -> Result<bool, CobarError> {
        let d = self.differential(c.i, c.j)?;
        let mut acc = Vec::new();
        for (k, e) in &c.cocycle {
            for (m, x) in &d[*k] {
                acc.push((*m, self.field().mul(e, x)));
            }
        }
        Ok(crate::linalg::normalize(self.field(), acc).is_empty())
    }

    pub fn is_coboundary(&self, c: &ExtClass<F::Elem>) -> Result<bool, CobarError> {
        let mut e = Echelon::new(self.field().clone());
        for v in self.coboundaries(c.i, c.j)? {
            e.insert(v);
        }
        Ok(e.contains(c.cocycle.clone()))
    }

    /// The unit class in `C^{0,0}`.
    pub fn unit(&self) -> ExtClass<F::Elem> {
        ExtClass { i: 0, j: 0, cocycle: vec![(0, self.field().one())] }
    }

    /// Concatenation product of two cocycles.
    pub fn cup_product(&self, a: &ExtClass<F::Elem>, b: &ExtClass<F::Elem>) -> Result<ExtClass<F::Elem>, CobarError> {
        let (i, j) = (a.i + b.i, a.j + b.j);
        if i > self.imax || j > self.jmax {
            return Err(CobarError::OutOfBounds { i, j });
        }
        self.cochain_product(a.i, a.j, &a.cocycle, b.i, b.j, &b.cocycle).map(|cocycle| ExtClass { i, j, cocycle })
    }

    fn cochain_product(
        &self,
        ia: usize,
        ja: usize,
        a: &SparseVec<F::Elem>,
        ib: usize,
        jb: usize,
        b: &SparseVec<F::Elem>,
    ) -> Result<SparseVec<F::Elem>, CobarError> {
        self.in_bounds(ia + ib, ja + jb)?;
        let f = self.field();
        let (ba, bb) = (self.basis(ia, ja), self.basis(ib, jb));
        let Some(target) = self.blocks.get(&(ia + ib, ja + jb)) else { return Ok(Vec::new()) };
        let mut acc = Vec::with_capacity(a.len() * b.len());
        for (p, x) in a {
            for (q, y) in b {
                let mut t = ba[*p].clone();
                t.extend(bb[*q].iter().cloned());
                acc.push((target.index[&t], f.mul(x, y)));
            }
        }
        Ok(crate::linalg::normalize(f, acc))
    }
}

impl<F: Field> super::model::ExtModel<F> for CobarComplex<'_, F> {
    fn field(&self) -> &F {
        self.q.field()
    }

    fn cocycles(&mut self, i: usize, j: usize) -> Result<Vec<SparseVec<F::Elem>>, super::model::ModelError> {
        CobarComplex::cocycles(self, i, j).map_err(|_| super::model::ModelError::Undecided { i, j })
    }

    fn coboundaries(&mut self, i: usize, j: usize) -> Result<Vec<SparseVec<F::Elem>>, super::model::ModelError> {
        CobarComplex::coboundaries(self, i, j).map_err(|_| super::model::ModelError::Undecided { i, j })
    }

    fn products(
        &mut self,
        (ia, ja): (usize, usize),
        a: &[SparseVec<F::Elem>],
        (ib, jb): (usize, usize),
        b: &[SparseVec<F::Elem>],
    ) -> Result<Vec<SparseVec<F::Elem>>, super::model::ModelError> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(
                    self.cochain_product(ia, ja, x, ib, jb, y)
                        .map_err(|_| super::model::ModelError::Undecided { i: ia + ib, j: ja + jb })?,
                );
            }
        }
        Ok(out)
    }
}

/// `dim Ext^{i,j}` from the bar ranks, class by class.
pub fn ext_dims_cobar<F: Field>(q: &QuotientAlgebra<F>, imax: usize, jmax: usize) -> Result<BettiTable, CobarError> {
    ext_dims_cobar_with(q, imax, jmax, DEFAULT_BLOCK_BUDGET)
}

pub fn ext_dims_cobar_with<F: Field>(
    q: &QuotientAlgebra<F>,
    imax: usize,
    jmax: usize,
    budget: usize,
) -> Result<BettiTable, CobarError> {
    if jmax > q.trusted_degree() {
        return Err(QuotientError::DegreeExceedsTrusted { degree: jmax, trusted: q.trusted_degree() }.into());
    }
    let f = q.field().clone();
    let gb = q.basis();
    let n = gb.alphabet().len();
    let aut = gb.automaton();
    let tip_len: Vec<usize> = gb.tips().iter().map(|t| t.len()).collect();
    // Terms of elements with two or more terms.
    let multi: Vec<Vec<Vec<u8>>> = gb
        .elements()
        .iter()
        .filter(|p| p.len() >= 2)
        .map(|p| p.terms().iter().map(|(w, _)| w.0.clone()).collect())
        .collect();
    let mut table = BettiTable::new(imax, jmax);
    table.set(0, 0, 1);
    for i in 0..=imax {
        table.set_certified(i, true);
    }
    let intervals = |w: &[u8]| -> Vec<(usize, usize)> {
        let mut st = 0;
        let mut out = Vec::new();
        for (k, &l) in w.iter().enumerate() {
            st = aut.step(st, l);
            if let Some(p) = aut.hit(st) {
                out.push((k + 1 - tip_len[p], k + 1));
            }
        }
        out
    };
    let contains = |w: &[u8], t: &[u8]| t.len() <= w.len() && w.windows(t.len()).any(|x| x == t);
    for j in 1..=jmax {
        let count = (n as u128).pow(j as u32);
        if count > WORD_SCAN_LIMIT {
            return Err(CobarError::TooManyWords { j, count });
        }
        let mut dims = vec![0u64; imax + 1];
        let mut patterns: HashMap<Vec<(usize, usize)>, u64> = HashMap::new();
        let mut generic: Vec<Vec<u8>> = Vec::new();
        let mut w = vec![0u8; j];
        for code in 0..count as u64 {
            let mut c = code;
            for k in (0..j).rev() {
                w[k] = (c % n as u64) as u8;
                c /= n as u64;
            }
            if multi.iter().any(|terms| terms.iter().any(|t| contains(&w, t))) {
                generic.push(w.clone());
            } else {
                *patterns.entry(intervals(&w)).or_insert(0) += 1;
            }
        }
        let mut patterns: Vec<_> = patterns.into_iter().collect();
        patterns.sort();
        for (iv, mult) in patterns {
            let h = class_homology(&f, j, imax, budget, &[iv], |_, _, _, _| Vec::new())?;
            for i in 1..=imax {
                dims[i] += mult * h[i];
            }
        }
        for class in congruence_classes(&generic, &multi) {
            let index: HashMap<&[u8], usize> = class.iter().enumerate().map(|(k, w)| (w.as_slice(), k)).collect();
            let ivs: Vec<_> = class.iter().map(|w| intervals(w)).collect();
            let h = class_homology(&f, j, imax, budget, &ivs, |m, s, e, _| {
                let word = &class[m];
                let prod = q.reduce_word(&Word::from_slice(&word[s..e]));
                prod.terms()
                    .iter()
                    .map(|(u, c)| {
                        let mut v = word[..s].to_vec();
                        v.extend_from_slice(u.letters());
                        v.extend_from_slice(&word[e..]);
                        (index[v.as_slice()], c.clone())
                    })
                    .collect()
            })?;
            for i in 1..=imax {
                dims[i] += h[i];
            }
        }
        for (i, &d) in dims.iter().enumerate().skip(1) {
            table.set(i, j, d);
        }
    }
    Ok(table)
}

/// Classes of the congruence generated by `a ~ b` for terms `a`, `b` of one
/// element, restricted to `words` (which must be closed under it).
fn congruence_classes(words: &[Vec<u8>], multi: &[Vec<Vec<u8>>]) -> Vec<Vec<Vec<u8>>> {
    let index: HashMap<&[u8], usize> = words.iter().enumerate().map(|(k, w)| (w.as_slice(), k)).collect();
    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (k, w) in words.iter().enumerate() {
        for terms in multi {
            let a = &terms[0];
            if a.len() > w.len() {
                continue;
            }
            for s in 0..=w.len() - a.len() {
                if &w[s..s + a.len()] != a.as_slice() {
                    continue;
                }
                for b in &terms[1..] {
                    let mut v = w[..s].to_vec();
                    v.extend_from_slice(b);
                    v.extend_from_slice(&w[s + a.len()..]);
                    let o = index[v.as_slice()];
                    let (x, y) = (find(&mut parent, k), find(&mut parent, o));
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Vec<u8>>> = HashMap::new();
    for (k, w) in words.iter().enumerate() {
        let r = find(&mut parent, k);
        groups.entry(r).or_default().push(w.clone());
    }
    let mut out: Vec<_> = groups.into_values().collect();
    out.sort();
    out
}

/// Homology of the bar complex restricted to one class of words of length
/// `j`. Member `m` has relation occurrences `ivs[m]`; a tuple is a member
/// with a set of cuts meeting every occurrence. `merge(m, s, e, f)` expands
/// the non-normal product `word[s..e]` as members with coefficients.
fn class_homology<F: Field>(
    f: &F,
    j: usize,
    imax: usize,
    budget: usize,
    ivs: &[Vec<(usize, usize)>],
    mut merge: impl FnMut(usize, usize, usize, &F) -> Vec<(usize, F::Elem)>,
) -> Result<Vec<u64>, CobarError> {
    let top = (imax + 1).min(j);
    let ncut = j - 1;
    // tuples[i] for i pieces: (member, cut mask)
    let mut tuples: Vec<Vec<(usize, u32)>> = vec![Vec::new(); top + 1];
    let mut index: Vec<HashMap<(usize, u32), usize>> = vec![HashMap::new(); top + 1];
    for (m, iv) in ivs.iter().enumerate() {
        for mask in 0u32..(1u32 << ncut) {
            let pieces = mask.count_ones() as usize + 1;
            if pieces > top {
                continue;
            }
            // cut at position c is bit c − 1
            if iv.iter().all(|&(s, e)| (s + 1..e).any(|c| mask >> (c - 1) & 1 == 1)) {
                index[pieces].insert((m, mask), tuples[pieces].len());
                tuples[pieces].push((m, mask));
            }
        }
    }
    for (i, t) in tuples.iter().enumerate() {
        if t.len() > budget {
            return Err(CobarError::Budget { i, j, size: t.len() as u128, budget });
        }
    }
    let mut ranks = vec![0usize; top + 2];
    for i in 2..=top {
        let mut e = Echelon::new(f.clone());
        for &(m, mask) in &tuples[i] {
            let cuts: Vec<usize> = (1..j).filter(|c| mask >> (c - 1) & 1 == 1).collect();
            let mut acc = Vec::new();
            for t in 0..cuts.len() {
                let s = if t == 0 { 0 } else { cuts[t - 1] };
                let e_ = if t + 1 < cuts.len() { cuts[t + 1] } else { j };
                let nm = mask & !(1 << (cuts[t] - 1));
                let sign = if t % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                let normal = ivs[m].iter().all(|&(a, b)| a < s || b > e_);
                if normal {
                    acc.push((index[i - 1][&(m, nm)], sign));
                } else {
                    for (m2, c) in merge(m, s, e_, f) {
                        acc.push((index[i - 1][&(m2, nm)], f.mul(&sign, &c)));
                    }
                }
            }
            e.insert(crate::linalg::normalize(f, acc));
        }
        ranks[i] = e.rank();
    }
    let mut h = vec![0u64; imax + 1];
    for i in 1..=top.min(imax) {
        h[i] = (tuples[i].len() - ranks[i] - ranks[i + 1]) as u64;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::format::parse_presentation;
    use crate::quotient::build_quotient;

    fn quotient(text: &str, n: usize) -> QuotientAlgebra<PrimeField> {
        let p = parse_presentation(text).unwrap().into_prime().unwrap().presentation;
        build_quotient(&p, n).unwrap()
    }

    fn entries(t: &BettiTable) -> Vec<((usize, usize), u64)> {
        t.entries().collect()
    }

    #[test]
    fn z4_dims() {
        let q = quotient("generators z\nrelations\nz^4\n", 12);
        let t = ext_dims_cobar(&q, 6, 12).unwrap();
        assert_eq!(entries(&t), vec![((0, 0), 1), ((1, 1), 1), ((2, 4), 1), ((3, 5), 1), ((4, 8), 1), ((5, 9), 1), ((6, 12), 1)]);
    }

    #[test]
    fn polynomial_ring_dims() {
        let q = quotient("generators x y\nrelations\nx*y - y*x\n", 8);
        let t = ext_dims_cobar(&q, 4, 8).unwrap();
        assert_eq!(entries(&t), vec![((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]);
        let c = CobarComplex::new(&q, 3, 6).unwrap();
        assert!(c.check_d_squared());
        for i in 0..=3 {
            for j in 0..=6 {
                assert_eq!(c.ext_dim(i, j).unwrap() as u64, t.get(i, j), "({i},{j})");
            }
        }
    }

    #[test]
    fn free_algebra_has_no_higher_ext() {
        let q = quotient("generators x y\nrelations\n", 6);
        let t = ext_dims_cobar(&q, 4, 6).unwrap();
        assert_eq!(entries(&t), vec![((0, 0), 1), ((1, 1), 2)]);
    }

    #[test]
    fn explicit_and_classwise_agree() {
        for text in [
            "generators x y\nrelations\nx*y - y*x\nx*y*x\n",
            "generators x y\nrelations\nx*y*x\n",
            "generators x y\nrelations\nx^2 + y^2 - 2*x*y\n",
            "generators a b c\nrelations\na*b - c^2\nb*c + a*a\n",
        ] {
            let q = quotient(text, 7);
            let fast = ext_dims_cobar(&q, 4, 7).unwrap();
            let c = CobarComplex::new(&q, 4, 7).unwrap();
            assert!(c.check_d_squared());
            for i in 0..=4 {
                for j in 0..=7 {
                    assert_eq!(c.ext_dim(i, j).unwrap() as u64, fast.get(i, j), "{text} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn rationals_match_prime_field() {
        let text = "generators x y\nrelations\nx*y - y*x\nx*y*x\n";
        let raw = parse_presentation(text).unwrap();
        let pq = raw.clone().into_rational().unwrap().presentation;
        let qq = build_quotient::<Rationals>(&pq, 8).unwrap();
        let qp = quotient(text, 8);
        assert_eq!(ext_dims_cobar(&qq, 5, 8).unwrap(), ext_dims_cobar(&qp, 5, 8).unwrap());
    }

    #[test]
    fn cup_products() {
        let q = quotient("generators x y\nrelations\nx*y - y*x\n", 4);
        let c = CobarComplex::new(&q, 2, 4).unwrap();
        let f = c.field().clone();
        let x = ExtClass { i: 1, j: 1, cocycle: vec![(0, f.one())] };
        let y = ExtClass { i: 1, j: 1, cocycle: vec![(1, f.one())] };
        assert!(c.is_cocycle(&x).unwrap());
        assert_eq!(c.cup_product(&x, &c.unit()).unwrap(), x);
        assert_eq!(c.cup_product(&c.unit(), &y).unwrap(), y);
        let xy = c.cup_product(&x, &y).unwrap();
        assert!(c.is_cocycle(&xy).unwrap());
        assert!(!c.is_coboundary(&xy).unwrap());
        let xx = c.cup_product(&x, &x).unwrap();
        assert!(c.is_coboundary(&xx).unwrap());
        // x·y + y·x is a coboundary: the classes anticommute.
        let yx = c.cup_product(&y, &x).unwrap();
        let s = crate::linalg::axpy(&f, &xy.cocycle, &f.one(), &yx.cocycle);
        assert!(c.is_coboundary(&ExtClass { i: 2, j: 2, cocycle: s }).unwrap());
        assert!(matches!(c.cup_product(&xy, &xy), Err(CobarError::OutOfBounds { .. })));

        let free = quotient("generators x y\nrelations\n", 4);
        let c = CobarComplex::new(&free, 2, 4).unwrap();
        let xy = c.cup_product(&x, &y).unwrap();
        assert!(c.is_coboundary(&xy).unwrap());
    }

    #[test]
    fn budget_refusal_names_the_block() {
        let q = quotient("generators x y\nrelations\n", 8);
        match CobarComplex::with_budget(&q, 3, 8, 100) {
            Err(CobarError::Budget { i, j, .. }) => assert!(i >= 1 && j <= 8),
            other => panic!("expected refusal, got {:?}", other.err()),
        }
        assert!(matches!(ext_dims_cobar_with(&q, 3, 8, 10), Err(CobarError::Budget { .. })));
    }
}
