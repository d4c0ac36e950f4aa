//! Which parts of `E(A)` are generated in low cohomological degree.
//!
//! `G¹ = E¹`, `G² = E²` and `Gⁱ = Σ_{0<a<i} Gᵃ·G^{i−a}`; `H` is the
//! subalgebra generated by `E¹`. A bidegree whose possible factorizations
//! all pass through zero groups is decided without chain work.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::field::Field;
use crate::linalg::{Echelon, SparseVec};
use crate::resolution::BettiTable;
use crate::yoneda::model::ExtModel;
use crate::yoneda::verdict::{Outcome, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// `E^{i,j} = 0`.
    Zero,
    /// `i ≤ 2` for `G`, `i = 1` for `H`.
    Definition,
    BidegreeShortcut,
    ChainProduct,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationEntry {
    pub i: usize,
    pub j: usize,
    pub ext_dim: u64,
    /// `dim G^{i,j}`, or `None` if undecided.
    pub generated_le2: Option<u64>,
    /// `dim H^{i,j}`, or `None` if undecided.
    pub generated_le1: Option<u64>,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub imax: usize,
    pub jmax: usize,
    pub entries: Vec<GenerationEntry>,
}

impl GenerationReport {
    pub fn entry(&self, i: usize, j: usize) -> Option<&GenerationEntry> {
        self.entries.iter().find(|e| e.i == i && e.j == j)
    }

    pub fn undecided(&self) -> Vec<(usize, usize)> {
        self.entries.iter().filter(|e| e.generated_le2.is_none()).map(|e| (e.i, e.j)).collect()
    }

    /// First bidegree where `G ≠ E`.
    pub fn first_ungenerated(&self) -> Option<(usize, usize)> {
        self.entries.iter().find(|e| e.generated_le2.is_some_and(|g| g < e.ext_dim)).map(|e| (e.i, e.j))
    }

    /// First bidegree where `H ≠ E`, and whether an undecided entry comes first.
    pub fn first_not_generated_by_e1(&self) -> Result<Option<(usize, usize)>, (usize, usize)> {
        for e in &self.entries {
            match e.generated_le1 {
                None => return Err((e.i, e.j)),
                Some(h) if h < e.ext_dim => return Ok(Some((e.i, e.j))),
                _ => {}
            }
        }
        Ok(None)
    }
}

/// Representatives modulo coboundaries of a subspace, with its dimension.
#[derive(Default)]
struct Part<E> {
    reps: Vec<SparseVec<E>>,
}

struct State<'m, F: Field, M: ExtModel<F>> {
    model: &'m mut M,
    e: HashMap<(usize, usize), Result<Part<F::Elem>, ()>>,
}

impl<F: Field, M: ExtModel<F>> State<'_, F, M> {
    /// A basis of `E^{i,j}` as cocycle representatives.
    fn ext(&mut self, i: usize, j: usize) -> Result<&Part<F::Elem>, ()> {
        if !self.e.contains_key(&(i, j)) {
            let r = (|| {
                let b = self.model.coboundaries(i, j).map_err(|_| ())?;
                let z = self.model.cocycles(i, j).map_err(|_| ())?;
                let mut ech = Echelon::new(self.model.field().clone());
                for v in b {
                    ech.insert(v);
                }
                Ok(Part { reps: z.into_iter().filter(|v| ech.insert(v.clone())).collect() })
            })();
            self.e.insert((i, j), r);
        }
        self.e[&(i, j)].as_ref().map_err(|_| ())
    }

    /// Span of the products of the given factor pairs, modulo coboundaries.
    fn span(
        &mut self,
        i: usize,
        j: usize,
        pairs: &[((usize, usize), &[SparseVec<F::Elem>], (usize, usize), &[SparseVec<F::Elem>])],
        target: u64,
    ) -> Result<Part<F::Elem>, ()> {
        let b = self.model.coboundaries(i, j).map_err(|_| ())?;
        let mut ech = Echelon::new(self.model.field().clone());
        for v in b {
            ech.insert(v);
        }
        let mut reps = Vec::new();
        for &(da, a, db, bb) in pairs {
            if reps.len() as u64 >= target {
                break;
            }
            for v in self.model.products(da, a, db, bb).map_err(|_| ())? {
                if ech.insert(v.clone()) {
                    reps.push(v);
                }
            }
        }
        Ok(Part { reps })
    }
}

/// Computes `dim G^{i,j}` and `dim H^{i,j}` for `1 ≤ i ≤ imax`, `i ≤ j ≤ jmax`.
/// `table` must be the Betti table of the algebra `model` describes.
pub fn generation_profile<F: Field, M: ExtModel<F>>(
    model: &mut M,
    table: &BettiTable,
    imax: usize,
    jmax: usize,
) -> GenerationReport {
    let imax = imax.min(table.imax());
    let jmax = jmax.min(table.jmax());
    let mut st = State { model, e: HashMap::new() };
    // None marks an undecided group.
    let mut g: BTreeMap<(usize, usize), Option<Vec<SparseVec<F::Elem>>>> = BTreeMap::new();
    let mut h: BTreeMap<(usize, usize), Option<Vec<SparseVec<F::Elem>>>> = BTreeMap::new();
    let mut entries = Vec::new();
    for i in 1..=imax {
        for j in i..=jmax {
            let beta = table.get(i, j);
            if beta == 0 {
                g.insert((i, j), Some(Vec::new()));
                h.insert((i, j), Some(Vec::new()));
                continue;
            }
            let mut method = Method::Definition;
            // G
            let gv: Option<Vec<_>> = if i <= 2 {
                st.ext(i, j).ok().map(|p| p.reps.clone())
            } else {
                let splits: Vec<((usize, usize), (usize, usize))> = (1..i)
                    .flat_map(|a| (a..=j.saturating_sub(i - a)).map(move |k| ((a, k), (i - a, j - k))))
                    .filter(|(x, y)| table.get(x.0, x.1) > 0 && table.get(y.0, y.1) > 0)
                    .collect();
                let unknown = splits.iter().any(|(x, y)| g[x].is_none() || g[y].is_none());
                let source: usize = splits
                    .iter()
                    .map(|(x, y)| g[x].as_ref().map_or(0, |v| v.len()) * g[y].as_ref().map_or(0, |v| v.len()))
                    .sum();
                if unknown {
                    method = Method::Undecided;
                    None
                } else if source == 0 {
                    method = Method::BidegreeShortcut;
                    Some(Vec::new())
                } else {
                    method = Method::ChainProduct;
                    let pairs: Vec<_> = splits
                        .iter()
                        .filter(|(x, y)| !g[x].as_ref().unwrap().is_empty() && !g[y].as_ref().unwrap().is_empty())
                        .map(|(x, y)| (*x, g[x].as_ref().unwrap().as_slice(), *y, g[y].as_ref().unwrap().as_slice()))
                        .collect();
                    let r = st.span(i, j, &pairs, beta).ok().map(|p| p.reps);
                    if r.is_none() {
                        method = Method::Undecided;
                    }
                    r
                }
            };
            // H
            let hv: Option<Vec<_>> = if i == 1 {
                st.ext(i, j).ok().map(|p| p.reps.clone())
            } else {
                let splits: Vec<((usize, usize), (usize, usize))> = (i - 1..=j.saturating_sub(1))
                    .map(|k| ((i - 1, k), (1, j - k)))
                    .filter(|(x, y)| table.get(x.0, x.1) > 0 && table.get(y.0, y.1) > 0)
                    .collect();
                let unknown = splits.iter().any(|(x, y)| h[x].is_none() || h[y].is_none());
                let source: usize = splits
                    .iter()
                    .map(|(x, y)| h[x].as_ref().map_or(0, |v| v.len()) * h[y].as_ref().map_or(0, |v| v.len()))
                    .sum();
                if unknown {
                    None
                } else if source == 0 {
                    Some(Vec::new())
                } else {
                    let pairs: Vec<_> = splits
                        .iter()
                        .filter(|(x, y)| !h[x].as_ref().unwrap().is_empty() && !h[y].as_ref().unwrap().is_empty())
                        .map(|(x, y)| (*x, h[x].as_ref().unwrap().as_slice(), *y, h[y].as_ref().unwrap().as_slice()))
                        .collect();
                    st.span(i, j, &pairs, beta).ok().map(|p| p.reps)
                }
            };
            entries.push(GenerationEntry {
                i,
                j,
                ext_dim: beta,
                generated_le2: gv.as_ref().map(|v| v.len() as u64),
                generated_le1: hv.as_ref().map(|v| v.len() as u64),
                method,
            });
            g.insert((i, j), gv);
            h.insert((i, j), hv);
        }
    }
    GenerationReport { imax, jmax, entries }
}

/// 𝒦₂: `Gⁱ = Eⁱ` throughout the report's range.
pub fn check_k2(report: &GenerationReport) -> Verdict {
    let outcome = if let Some((i, j)) = report.first_ungenerated() {
        Outcome::Fails { witness: Witness::Bidegree { i, j } }
    } else if !report.undecided().is_empty() {
        Outcome::Undecided { bidegrees: report.undecided() }
    } else {
        Outcome::Holds
    };
    Verdict::new("k2", outcome, report.imax, report.jmax)
}

/// Koszul read from generation: `Hⁱ = Eⁱ` throughout.
pub fn check_generated_by_e1(report: &GenerationReport) -> Verdict {
    let outcome = match report.first_not_generated_by_e1() {
        Ok(Some((i, j))) => Outcome::Fails { witness: Witness::Bidegree { i, j } },
        Ok(None) => Outcome::Holds,
        Err(b) => Outcome::Undecided { bidegrees: vec![b] },
    };
    Verdict::new("generated-by-e1", outcome, report.imax, report.jmax)
}
