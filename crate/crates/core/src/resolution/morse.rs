//! Betti numbers and Yoneda products through algebraic discrete Morse theory
//! on the normalized bar complex.
//!
//! Cells are `(m; w₁|…|wₙ)` with `m` a normal word of the right module `M`
//! (empty for the generator) and `wᵢ` nonempty normal words of `A`. The
//! differential is
//!
//! ```text
//! ∂(m; w₁|…|wₙ) = (m·w₁; w₂|…|wₙ) + Σₜ (−1)ᵗ (m; …|wₜwₜ₊₁|…)
//! ```
//!
//! with products reduced to normal form; the last factor acts on `𝕜` by zero.
//! The matching pairs a cell with the cell obtained by splitting off or
//! merging at the first position where it stops being an Anick chain. The
//! critical cells are exactly the chains, and the Morse complex on them is a
//! (generally non-minimal) free resolution whose ranks give the Betti table.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::automaton::TipAutomaton;
use crate::field::Field;
use crate::groebner::GroebnerBasis;
use crate::linalg::{rank, SparseVec};
use crate::resolution::BettiTable;
use crate::word::{Poly, Word};

/// Default cap on the number of critical cells enumerated.
pub const DEFAULT_CELL_BUDGET: usize = 3_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorseError {
    #[error("Gröbner basis is truncated at degree {truncation}, below the requested internal degree {jmax}")]
    TruncationTooLow { truncation: usize, jmax: usize },
    #[error("Gröbner basis is incomplete at its truncation degree")]
    IncompleteBasis,
    #[error("critical cells of homological degree {0} exceed the cell budget")]
    Budget(usize),
}

/// A bar-complex cell, packed as `[slots, ends…, letters…]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(Box<[u8]>);

impl Cell {
    pub fn new(slots: &[&[u8]]) -> Cell {
        let total: usize = slots.iter().map(|s| s.len()).sum();
        let mut v = Vec::with_capacity(1 + slots.len() + total);
        v.push(slots.len() as u8);
        let mut end = 0usize;
        for s in slots {
            end += s.len();
            v.push(end as u8);
        }
        for s in slots {
            v.extend_from_slice(s);
        }
        Cell(v.into_boxed_slice())
    }

    fn k(&self) -> usize {
        self.0[0] as usize
    }

    /// Number of bar factors `n`.
    pub fn dim(&self) -> usize {
        self.k() - 1
    }

    pub fn letters(&self) -> &[u8] {
        &self.0[1 + self.k()..]
    }

    pub fn degree(&self) -> usize {
        self.letters().len()
    }

    fn end(&self, i: usize) -> usize {
        self.0[1 + i] as usize
    }

    fn start(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.end(i - 1)
        }
    }

    /// Slot 0 is the module word, slots `1..=n` the bar factors.
    pub fn slot(&self, i: usize) -> &[u8] {
        &self.letters()[self.start(i)..self.end(i)]
    }

    pub fn slots(&self) -> Vec<&[u8]> {
        (0..self.k()).map(|i| self.slot(i)).collect()
    }

    /// Letters of slots `a..=b` as one contiguous slice.
    fn span(&self, a: usize, b: usize) -> &[u8] {
        &self.letters()[self.start(a)..self.end(b)]
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.slots().iter().enumerate() {
            if i == 1 {
                write!(f, ";")?;
            } else if i > 1 {
                write!(f, "|")?;
            }
            write!(f, "{s:?}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Class {
    Critical,
    /// Matched with a cell of one dimension lower.
    Upper,
    /// Matched with the given cell of one dimension higher.
    Lower(Cell),
}

/// Immutable algebra data plus normal-form caches.
struct Ctx<F: Field> {
    field: F,
    alg: GroebnerBasis<F>,
    module: Option<GroebnerBasis<F>>,
    nf_alg: RefCell<HashMap<Vec<u8>, Rc<Poly<F::Elem>>>>,
    nf_mod: RefCell<HashMap<Vec<u8>, Rc<Poly<F::Elem>>>>,
}

impl<F: Field> Ctx<F> {
    fn aut(&self) -> &TipAutomaton {
        self.alg.automaton()
    }

    fn nf(&self, letters: &[u8], module: bool) -> Rc<Poly<F::Elem>> {
        let (cache, gb) = if module {
            (&self.nf_mod, self.module.as_ref().unwrap())
        } else {
            (&self.nf_alg, &self.alg)
        };
        if let Some(p) = cache.borrow().get(letters) {
            return p.clone();
        }
        let p = Rc::new(gb.normal_form_word(&Word::from_slice(letters)));
        cache.borrow_mut().insert(letters.to_vec(), p.clone());
        p
    }

    fn classify(&self, c: &Cell) -> Class {
        let n = c.dim();
        let m = c.slot(0);
        if !m.is_empty() {
            let mut slots = vec![&[][..]];
            slots.extend(c.slots());
            return Class::Lower(Cell::new(&slots));
        }
        if n == 0 {
            return Class::Critical;
        }
        let w1 = c.slot(1);
        let e = match &self.module {
            None => Some(1),
            Some(gb) => gb.automaton().first_match(w1).map(|x| x.0),
        };
        match e {
            None => return Class::Upper,
            Some(e) if e < w1.len() => return Class::Lower(split(c, 1, e)),
            _ => {}
        }
        for p in 1..n {
            let wp = c.slot(p).len();
            let next = c.slot(p + 1).len();
            match self.aut().first_match(c.span(p, p + 1)) {
                None => return Class::Upper,
                Some((end, _)) => {
                    let e = end - wp;
                    if e < next {
                        return Class::Lower(split(c, p + 1, e));
                    }
                }
            }
        }
        Class::Critical
    }

    fn boundary(&self, c: &Cell) -> Vec<(Cell, F::Elem)> {
        let f = &self.field;
        let n = c.dim();
        let mut acc: HashMap<Cell, F::Elem> = HashMap::new();
        let mut add = |cell: Cell, v: F::Elem| match acc.get_mut(&cell) {
            Some(e) => *e = f.add(e, &v),
            None => {
                acc.insert(cell, v);
            }
        };
        let slots = c.slots();
        if n >= 1 && self.module.is_some() {
            let p = self.nf(c.span(0, 1), true);
            for (u, coef) in p.terms() {
                let mut s: Vec<&[u8]> = vec![u.letters()];
                s.extend_from_slice(&slots[2..]);
                add(Cell::new(&s), coef.clone());
            }
        }
        for t in 1..n {
            let p = self.nf(c.span(t, t + 1), false);
            let neg = t % 2 == 1;
            for (u, coef) in p.terms() {
                let mut s: Vec<&[u8]> = slots[..t].to_vec();
                s.push(u.letters());
                s.extend_from_slice(&slots[t + 2..]);
                add(Cell::new(&s), if neg { f.neg(coef) } else { coef.clone() });
            }
        }
        acc.into_iter().filter(|(_, v)| !f.is_zero(v)).collect()
    }
}

fn split(c: &Cell, slot: usize, at: usize) -> Cell {
    let w = c.slot(slot);
    let mut s = c.slots();
    s.splice(slot..=slot, [&w[..at], &w[at..]]);
    Cell::new(&s)
}

/// Reduction data for one Lower cell: its partner and the remaining boundary
/// terms of the partner, already scaled by `−1/c`.
struct Step<E> {
    inv_c: E,
    partner: Cell,
    rest: Vec<(Cell, E)>,
}

pub struct MorseEngine<F: Field> {
    ctx: Ctx<F>,
    nmax: usize,
    jmax: usize,
    /// Dimensions for which critical cells were fully enumerated.
    enumerated: usize,
    crit: Vec<Cell>,
    crit_id: HashMap<Cell, u32>,
    /// `(n, j)` → ids, and id → position in its block.
    blocks: HashMap<(usize, usize), Vec<u32>>,
    pos: Vec<u32>,
    phi_memo: HashMap<Cell, Rc<Vec<(u32, F::Elem)>>>,
    y_memo: HashMap<Cell, Rc<Vec<(Cell, F::Elem)>>>,
    diff: HashMap<(usize, usize), Rc<Vec<SparseVec<F::Elem>>>>,
}

impl<F: Field> MorseEngine<F> {
    /// Engine for `Tor^A(𝕜, 𝕜)`.
    pub fn trivial(alg: &GroebnerBasis<F>, nmax: usize, jmax: usize) -> Result<Self, MorseError> {
        Self::build(alg, None, nmax, jmax, DEFAULT_CELL_BUDGET)
    }

    /// Engine for `Tor^A(M, 𝕜)` where `M = T(V)/K` is a cyclic right module
    /// and `module` is a Gröbner basis of `K ⊇ I_A`.
    pub fn module(alg: &GroebnerBasis<F>, module: &GroebnerBasis<F>, nmax: usize, jmax: usize) -> Result<Self, MorseError> {
        Self::build(alg, Some(module), nmax, jmax, DEFAULT_CELL_BUDGET)
    }

    pub fn build(
        alg: &GroebnerBasis<F>,
        module: Option<&GroebnerBasis<F>>,
        nmax: usize,
        jmax: usize,
        budget: usize,
    ) -> Result<Self, MorseError> {
        for gb in std::iter::once(alg).chain(module) {
            if !gb.complete_at_truncation() {
                return Err(MorseError::IncompleteBasis);
            }
            if gb.truncation_degree() < jmax && !gb.closed() {
                return Err(MorseError::TruncationTooLow { truncation: gb.truncation_degree(), jmax });
            }
        }
        let ctx = Ctx {
            field: alg.field().clone(),
            alg: alg.clone(),
            module: module.cloned(),
            nf_alg: RefCell::new(HashMap::new()),
            nf_mod: RefCell::new(HashMap::new()),
        };
        let mut e = MorseEngine {
            ctx,
            nmax,
            jmax,
            enumerated: 0,
            crit: Vec::new(),
            crit_id: HashMap::new(),
            blocks: HashMap::new(),
            pos: Vec::new(),
            phi_memo: HashMap::new(),
            y_memo: HashMap::new(),
            diff: HashMap::new(),
        };
        e.enumerate(budget);
        Ok(e)
    }

    pub fn field(&self) -> &F {
        &self.ctx.field
    }

    pub fn jmax(&self) -> usize {
        self.jmax
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    /// Highest dimension whose critical cells are fully known.
    pub fn enumerated_through(&self) -> usize {
        self.enumerated
    }

    fn push_crit(&mut self, c: Cell) {
        let id = self.crit.len() as u32;
        let key = (c.dim(), c.degree());
        let block = self.blocks.entry(key).or_default();
        self.pos.push(block.len() as u32);
        block.push(id);
        self.crit_id.insert(c.clone(), id);
        self.crit.push(c);
    }

    fn enumerate(&mut self, budget: usize) {
        self.push_crit(Cell::new(&[&[]]));
        self.enumerated = 0;
        if self.nmax == 0 {
            return;
        }
        let mut level: Vec<Cell> = Vec::new();
        let nletters = self.ctx.alg.alphabet().len() as u8;
        match &self.ctx.module {
            None => {
                if self.jmax >= 1 {
                    level = (0..nletters).map(|l| Cell::new(&[&[], &[l]])).collect();
                }
            }
            Some(m) => {
                let mut out = Vec::new();
                let mut buf = Vec::new();
                obstructions(self.ctx.aut(), m.automaton(), nletters, self.jmax, 0, 0, &mut buf, &mut out);
                out.sort();
                level = out.into_iter().map(|w| Cell::new(&[&[], &w])).collect();
            }
        }
        let tips: Vec<Word> = self.ctx.alg.tips().to_vec();
        for n in 1..=self.nmax {
            if self.crit.len() + level.len() > budget {
                return;
            }
            for c in &level {
                self.push_crit(c.clone());
            }
            self.enumerated = n;
            if n == self.nmax {
                break;
            }
            let mut next = Vec::new();
            for c in &level {
                let last = c.slot(n);
                let room = self.jmax - c.degree();
                for t in &tips {
                    let t = t.letters();
                    for k in 1..t.len().min(last.len() + 1) {
                        let u = &t[k..];
                        if u.len() > room || last[last.len() - k..] != t[..k] {
                            continue;
                        }
                        let mut joined = last.to_vec();
                        joined.extend_from_slice(u);
                        if self.ctx.aut().first_match(&joined).map(|x| x.0) == Some(joined.len()) {
                            let mut s = c.slots();
                            s.push(u);
                            next.push(Cell::new(&s));
                        }
                    }
                }
            }
            next.sort();
            next.dedup();
            level = next;
        }
    }

    pub fn crit_count(&self, n: usize, j: usize) -> usize {
        self.blocks.get(&(n, j)).map_or(0, |b| b.len())
    }

    pub fn crit_cells(&self, n: usize, j: usize) -> Vec<Cell> {
        self.blocks.get(&(n, j)).map_or(Vec::new(), |b| b.iter().map(|&i| self.crit[i as usize].clone()).collect())
    }

    pub fn classify(&self, c: &Cell) -> Class {
        self.ctx.classify(c)
    }

    pub fn boundary(&self, c: &Cell) -> Vec<(Cell, F::Elem)> {
        self.ctx.boundary(c)
    }

    fn step(&self, sigma: &Cell, partner: Cell) -> Step<F::Elem> {
        let f = &self.ctx.field;
        let bd = self.ctx.boundary(&partner);
        let c = bd
            .iter()
            .find(|(r, _)| r == sigma)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(|| panic!("matched pair {sigma:?} / {partner:?} has zero incidence"));
        let inv_c = f.inv(&c).unwrap();
        let m = f.neg(&inv_c);
        let rest = bd.into_iter().filter(|(r, _)| r != sigma).map(|(r, v)| (r, f.mul(&m, &v))).collect();
        Step { inv_c, partner, rest }
    }

    /// `Φ(σ)`: the image of a cell in the Morse complex, as critical ids.
    pub fn phi(&mut self, cell: &Cell) -> Rc<Vec<(u32, F::Elem)>> {
        match self.ctx.classify(cell) {
            Class::Critical => Rc::new(vec![(self.crit_id(cell), self.ctx.field.one())]),
            Class::Upper => Rc::new(Vec::new()),
            Class::Lower(partner) => {
                self.fill_phi(cell.clone(), partner);
                self.phi_memo[cell].clone()
            }
        }
    }

    fn crit_id(&self, c: &Cell) -> u32 {
        *self
            .crit_id
            .get(c)
            .unwrap_or_else(|| panic!("critical cell {c:?} outside the enumerated range"))
    }

    fn fill_phi(&mut self, root: Cell, partner: Cell) {
        if self.phi_memo.contains_key(&root) {
            return;
        }
        struct Frame<E> {
            cell: Cell,
            step: Step<E>,
            pos: usize,
            acc: HashMap<u32, E>,
        }
        let f = self.ctx.field.clone();
        let mut active: HashSet<Cell> = HashSet::new();
        active.insert(root.clone());
        let step = self.step(&root, partner);
        let mut stack = vec![Frame { cell: root, step, pos: 0, acc: HashMap::new() }];
        while let Some(top) = stack.last_mut() {
            if top.pos == top.step.rest.len() {
                let fr = stack.pop().unwrap();
                active.remove(&fr.cell);
                let mut v: Vec<(u32, F::Elem)> = fr.acc.into_iter().filter(|(_, e)| !f.is_zero(e)).collect();
                v.sort_by_key(|e| e.0);
                self.phi_memo.insert(fr.cell, Rc::new(v));
                continue;
            }
            let (rho, k) = &top.step.rest[top.pos];
            let add = |acc: &mut HashMap<u32, F::Elem>, id: u32, v: F::Elem| match acc.get_mut(&id) {
                Some(e) => *e = f.add(e, &v),
                None => {
                    acc.insert(id, v);
                }
            };
            match self.ctx.classify(rho) {
                Class::Critical => {
                    let id = *self.crit_id.get(rho).unwrap_or_else(|| panic!("critical cell {rho:?} not enumerated"));
                    let k = k.clone();
                    add(&mut top.acc, id, k);
                    top.pos += 1;
                }
                Class::Upper => top.pos += 1,
                Class::Lower(p2) => {
                    if let Some(v) = self.phi_memo.get(rho) {
                        let k = k.clone();
                        for (id, e) in v.iter() {
                            add(&mut top.acc, *id, f.mul(&k, e));
                        }
                        top.pos += 1;
                    } else {
                        assert!(!active.contains(rho), "matching is not acyclic at {rho:?}");
                        let rho = rho.clone();
                        active.insert(rho.clone());
                        let step = self.step(&rho, p2);
                        stack.push(Frame { cell: rho, step, pos: 0, acc: HashMap::new() });
                    }
                }
            }
        }
    }

    /// `Y(σ)` for a Lower cell: the homotopy applied to `σ`.
    fn y(&mut self, root: &Cell, partner: Cell) -> Rc<Vec<(Cell, F::Elem)>> {
        if let Some(v) = self.y_memo.get(root) {
            return v.clone();
        }
        struct Frame<E> {
            cell: Cell,
            step: Step<E>,
            pos: usize,
            acc: HashMap<Cell, E>,
        }
        let f = self.ctx.field.clone();
        let add = |acc: &mut HashMap<Cell, F::Elem>, c: &Cell, v: F::Elem| match acc.get_mut(c) {
            Some(e) => *e = f.add(e, &v),
            None => {
                acc.insert(c.clone(), v);
            }
        };
        let mut active: HashSet<Cell> = HashSet::new();
        let new_frame = |eng: &Self, cell: Cell, partner: Cell| {
            let step = eng.step(&cell, partner);
            let mut acc = HashMap::new();
            acc.insert(step.partner.clone(), step.inv_c.clone());
            Frame { cell, step, pos: 0, acc }
        };
        active.insert(root.clone());
        let mut stack = vec![new_frame(self, root.clone(), partner)];
        while let Some(top) = stack.last_mut() {
            if top.pos == top.step.rest.len() {
                let fr = stack.pop().unwrap();
                active.remove(&fr.cell);
                let v: Vec<(Cell, F::Elem)> = fr.acc.into_iter().filter(|(_, e)| !f.is_zero(e)).collect();
                self.y_memo.insert(fr.cell, Rc::new(v));
                continue;
            }
            let (rho, k) = &top.step.rest[top.pos];
            match self.ctx.classify(rho) {
                Class::Lower(p2) => {
                    if let Some(v) = self.y_memo.get(rho) {
                        let k = k.clone();
                        for (c, e) in v.iter() {
                            add(&mut top.acc, c, f.mul(&k, e));
                        }
                        top.pos += 1;
                    } else {
                        assert!(!active.contains(rho), "matching is not acyclic at {rho:?}");
                        let rho = rho.clone();
                        active.insert(rho.clone());
                        let fr = new_frame(self, rho, p2);
                        stack.push(fr);
                    }
                }
                _ => top.pos += 1,
            }
        }
        self.y_memo[root].clone()
    }

    /// Rows of the Morse differential `crit(n, j) → crit(n−1, j)`, indexed by
    /// block positions.
    pub fn differential(&mut self, n: usize, j: usize) -> Rc<Vec<SparseVec<F::Elem>>> {
        assert!(n >= 1);
        if let Some(d) = self.diff.get(&(n, j)) {
            return d.clone();
        }
        let f = self.ctx.field.clone();
        let cells = self.crit_cells(n, j);
        let mut rows = Vec::with_capacity(cells.len());
        for c in &cells {
            let mut acc: Vec<(usize, F::Elem)> = Vec::new();
            for (rho, k) in self.ctx.boundary(c) {
                for (id, e) in self.phi(&rho).iter() {
                    acc.push((self.pos[*id as usize] as usize, f.mul(&k, e)));
                }
            }
            rows.push(crate::linalg::normalize(&f, acc));
        }
        let rows = Rc::new(rows);
        self.diff.insert((n, j), rows.clone());
        rows
    }

    pub fn differential_rank(&mut self, n: usize, j: usize) -> usize {
        if n == 0 || self.crit_count(n, j) == 0 || self.crit_count(n - 1, j) == 0 {
            return 0;
        }
        let d = self.differential(n, j);
        rank(&self.ctx.field, d.iter().cloned())
    }

    /// `β_{n,j}`; requires critical cells through dimension `n + 1`.
    pub fn betti(&mut self, n: usize, j: usize) -> Result<u64, MorseError> {
        if n + 1 > self.enumerated && n < self.nmax {
            return Err(MorseError::Budget(n + 1));
        }
        let c = self.crit_count(n, j);
        if c == 0 {
            return Ok(0);
        }
        let r_in = self.differential_rank(n + 1, j);
        let r_out = self.differential_rank(n, j);
        Ok((c - r_in - r_out) as u64)
    }

    /// The full table for `i ≤ imax`, `j ≤ jmax`; needs `nmax ≥ imax + 1`.
    pub fn betti_table(&mut self, imax: usize) -> BettiTable {
        let jmax = self.jmax;
        let mut t = BettiTable::new(imax, jmax);
        for i in 0..=imax {
            let ok = i < self.enumerated && i < self.nmax;
            for j in 0..=jmax {
                if i <= self.enumerated {
                    if let Ok(v) = self.betti(i, j) {
                        t.set(i, j, v);
                    }
                }
            }
            t.set_certified(i, ok);
        }
        t
    }

    /// `g(c)`: the chain in the bar complex representing a critical cell.
    pub fn lift(&mut self, c: &Cell) -> Vec<(Cell, F::Elem)> {
        let f = self.ctx.field.clone();
        let mut acc: HashMap<Cell, F::Elem> = HashMap::new();
        acc.insert(c.clone(), f.one());
        for (rho, k) in self.ctx.boundary(c) {
            if let Class::Lower(p) = self.ctx.classify(&rho) {
                let y = self.y(&rho, p);
                for (cell, e) in y.iter() {
                    let v = f.neg(&f.mul(&k, e));
                    match acc.get_mut(cell) {
                        Some(x) => *x = f.add(x, &v),
                        None => {
                            acc.insert(cell.clone(), v);
                        }
                    }
                }
            }
        }
        acc.into_iter().filter(|(_, e)| !f.is_zero(e)).collect()
    }

    /// Chain-level product coefficients for the critical cell at position
    /// `c` of block `(n, j)`: for each split `(a, k)`, triples `(p, q, x)`
    /// such that `(α·β)(c) = Σ x · α_p · β_q` with `α` on block `(a, k)` and
    /// `β` on block `(n − a, j − k)`.
    pub fn product_terms(&mut self, n: usize, j: usize, c: usize) -> HashMap<(usize, usize), Vec<(usize, usize, F::Elem)>> {
        assert!(self.ctx.module.is_none(), "products need the trivial module");
        let f = self.ctx.field.clone();
        let cell = self.crit_cells(n, j)[c].clone();
        let g = self.lift(&cell);
        let mut acc: HashMap<(usize, usize), HashMap<(usize, usize), F::Elem>> = HashMap::new();
        for (sigma, x) in g {
            let slots = sigma.slots();
            for a in 1..n {
                let left = Cell::new(&slots[..=a]);
                let mut rs: Vec<&[u8]> = vec![&[]];
                rs.extend_from_slice(&slots[a + 1..]);
                let right = Cell::new(&rs);
                let pl = self.phi(&left);
                if pl.is_empty() {
                    continue;
                }
                let pr = self.phi(&right);
                let entry = acc.entry((a, left.degree())).or_default();
                for (p, u) in pl.iter() {
                    for (q, v) in pr.iter() {
                        let key = (self.pos[*p as usize] as usize, self.pos[*q as usize] as usize);
                        let val = f.mul(&x, &f.mul(u, v));
                        match entry.get_mut(&key) {
                            Some(e) => *e = f.add(e, &val),
                            None => {
                                entry.insert(key, val);
                            }
                        }
                    }
                }
            }
        }
        acc.into_iter()
            .map(|(k, m)| {
                let mut v: Vec<(usize, usize, F::Elem)> =
                    m.into_iter().filter(|(_, e)| !f.is_zero(e)).map(|((p, q), e)| (p, q, e)).collect();
                v.sort_by_key(|t| (t.0, t.1));
                (k, v)
            })
            .filter(|(_, v)| !v.is_empty())
            .collect()
    }
}

/// Minimal `M`-reducible words that are `A`-normal: every proper prefix is
/// `M`-normal and the first `M`-tip ends at the last letter.
#[allow(clippy::too_many_arguments)]
fn obstructions(
    a: &TipAutomaton,
    m: &TipAutomaton,
    n: u8,
    jmax: usize,
    sa: u32,
    sm: u32,
    buf: &mut Vec<u8>,
    out: &mut Vec<Vec<u8>>,
) {
    if buf.len() == jmax {
        return;
    }
    for l in 0..n {
        let ta = a.step(sa, l);
        if a.hit(ta).is_some() {
            continue;
        }
        let tm = m.step(sm, l);
        buf.push(l);
        if m.hit(tm).is_some() {
            out.push(buf.clone());
        } else {
            obstructions(a, m, n, jmax, ta, tm, buf, out);
        }
        buf.pop();
    }
}
