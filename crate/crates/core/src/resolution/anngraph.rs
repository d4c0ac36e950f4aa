//! Left-annihilator graphs of monomial algebras.
//!
//! For a monomial algebra `A` and a normal word `v`, the minimal left
//! annihilators of `v` are the normal words `u` with `u·v = 0` in `A` but
//! `u'·v ≠ 0` for the proper suffix `u'` of `u` dropping its first letter.
//! Such `u` is a prefix of a relation whose remainder starts `v`. The edge
//! `u → v` is essential when that relation ends at the last letter of `v`.
//! Paths ending at a seed vertex index a basis of a minimal resolution.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::resolution::BettiTable;
use crate::word::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Essential,
    Inessential,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Seed {
    /// The generators; resolves the trivial module.
    Augmentation,
    /// Generators of a left ideal `A·J`; resolves `A/A·J`.
    ModuleGens(Vec<Word>),
}

#[derive(Clone, Debug)]
pub struct AnnihilatorGraph {
    pub alphabet: Alphabet,
    pub vertices: Vec<Word>,
    pub seeds: Vec<bool>,
    /// `(u, v, kind)`: `u` left-annihilates `v`.
    pub edges: Vec<(usize, usize, EdgeKind)>,
}

fn is_normal(tips: &[Word], w: &[u8]) -> bool {
    tips.iter().all(|t| !w.windows(t.len()).any(|x| x == t.letters()))
}

/// Minimal left annihilators of `v` with the edge kind.
pub fn minimal_left_annihilators(tips: &[Word], v: &Word) -> Vec<(Word, EdgeKind)> {
    let mut out: BTreeMap<Word, EdgeKind> = BTreeMap::new();
    for t in tips {
        let t = t.letters();
        for k in 1..t.len() {
            let rest = &t[k..];
            if rest.len() > v.len() || &v.letters()[..rest.len()] != rest {
                continue;
            }
            let u = &t[..k];
            if !is_normal(tips, u) {
                continue;
            }
            let mut tail = u[1..].to_vec();
            tail.extend_from_slice(v.letters());
            if !is_normal(tips, &tail) {
                continue;
            }
            let kind = if rest.len() == v.len() { EdgeKind::Essential } else { EdgeKind::Inessential };
            let e = out.entry(Word::from_slice(u)).or_insert(kind);
            *e = (*e).min(kind);
        }
    }
    out.into_iter().collect()
}

/// Builds the graph from the relation words (`tips`) of a monomial algebra.
pub fn annihilator_graph(alphabet: &Alphabet, tips: &[Word], seed: &Seed) -> AnnihilatorGraph {
    let seeds: Vec<Word> = match seed {
        Seed::Augmentation => (0..alphabet.len() as u8).map(Word::letter).collect(),
        Seed::ModuleGens(j) => {
            let set: BTreeSet<Word> = j.iter().filter(|w| is_normal(tips, w.letters())).cloned().collect();
            set.into_iter().collect()
        }
    };
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut vertices: Vec<Word> = Vec::new();
    let mut is_seed = Vec::new();
    for s in &seeds {
        index.insert(s.clone(), vertices.len());
        vertices.push(s.clone());
        is_seed.push(true);
    }
    let mut edges = Vec::new();
    let mut k = 0;
    while k < vertices.len() {
        let v = vertices[k].clone();
        for (u, kind) in minimal_left_annihilators(tips, &v) {
            let ui = *index.entry(u.clone()).or_insert_with(|| {
                vertices.push(u.clone());
                is_seed.push(false);
                vertices.len() - 1
            });
            edges.push((ui, k, kind));
        }
        k += 1;
    }
    edges.sort();
    AnnihilatorGraph { alphabet: alphabet.clone(), vertices, seeds: is_seed, edges }
}

/// Counts paths `u_n → … → u_1` with `u_1` a seed: `β_{n,j}` is the number
/// of such paths whose vertex degrees sum to `j`.
pub fn resolution_from_graph(g: &AnnihilatorGraph, imax: usize, jmax: usize) -> BettiTable {
    let nv = g.vertices.len();
    let mut t = BettiTable::new(imax, jmax);
    t.set(0, 0, 1);
    t.set_certified(0, true);
    // paths[v][j] with the current number of vertices.
    let mut paths = vec![vec![0u64; jmax + 1]; nv];
    for (v, w) in g.vertices.iter().enumerate() {
        if g.seeds[v] && w.len() <= jmax {
            paths[v][w.len()] += 1;
        }
    }
    for n in 1..=imax {
        for j in 0..=jmax {
            let s: u64 = paths.iter().map(|p| p[j]).sum();
            t.set(n, j, s);
        }
        t.set_certified(n, true);
        let mut next = vec![vec![0u64; jmax + 1]; nv];
        for &(u, v, _) in &g.edges {
            let du = g.vertices[u].len();
            for j in 0..=jmax.saturating_sub(du) {
                next[u][j + du] += paths[v][j];
            }
        }
        paths = next;
    }
    t
}

/// A readable vertex label: letters run together when all names are one
/// character, with repeated letters as powers.
pub fn vertex_label(a: &Alphabet, w: &Word) -> String {
    if !a.names().iter().all(|n| n.chars().count() == 1) {
        return a.format_word(w);
    }
    let l = w.letters();
    let mut s = String::new();
    let mut i = 0;
    while i < l.len() {
        let mut k = i;
        while k < l.len() && l[k] == l[i] {
            k += 1;
        }
        s.push_str(a.name(l[i]));
        if k - i > 1 {
            s.push_str(&format!("^{}", k - i));
        }
        i = k;
    }
    s
}

/// DOT rendering; inessential edges are dotted.
pub fn export_dot(g: &AnnihilatorGraph) -> String {
    let mut s = String::from("digraph annihilators {\n");
    for (i, v) in g.vertices.iter().enumerate() {
        let label = vertex_label(&g.alphabet, v);
        if g.seeds[i] {
            s.push_str(&format!("  \"{label}\" [shape=box];\n"));
        } else {
            s.push_str(&format!("  \"{label}\";\n"));
        }
    }
    for &(u, v, kind) in &g.edges {
        let a = vertex_label(&g.alphabet, &g.vertices[u]);
        let b = vertex_label(&g.alphabet, &g.vertices[v]);
        match kind {
            EdgeKind::Essential => s.push_str(&format!("  \"{a}\" -> \"{b}\";\n")),
            EdgeKind::Inessential => s.push_str(&format!("  \"{a}\" -> \"{b}\" [style=dotted];\n")),
        }
    }
    s.push_str("}\n");
    s
}
