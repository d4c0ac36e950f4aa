//! Explicit minimal graded free resolutions by degree-wise linear algebra.
//!
//! Maps are right multiplication by matrices over the algebra: row `r` of
//! `Mᵢ` is the image of the `r`-th generator of `Fᵢ` in `Fᵢ₋₁`.

use std::sync::Arc;

use thiserror::Error;

use crate::field::Field;
use crate::linalg::{kernel, Echelon, SparseVec};
use crate::quotient::{DegreeBasis, QuotientAlgebra, QuotientError};
use crate::resolution::BettiTable;
use crate::word::{Poly, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolutionError {
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error("the Gröbner basis is incomplete; refusing to resolve")]
    IncompleteBasis,
    #[error("internal degree {jmax} exceeds the trusted degree {trusted}")]
    BeyondTrusted { jmax: usize, trusted: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub degrees: Vec<usize>,
}

impl FreeModule {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }
}

#[derive(Clone, Debug)]
pub struct GradedMap<F: Field> {
    pub source: FreeModule,
    pub target: FreeModule,
    /// `matrix[r][c]`, homogeneous of degree `source[r] − target[c]`.
    pub matrix: Vec<Vec<Poly<F::Elem>>>,
}

#[derive(Clone, Debug)]
pub enum ModuleSpec<E> {
    Trivial,
    /// `A / (two-sided ideal generated by gens)`.
    CyclicQuotient(Vec<Poly<E>>),
}

#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    /// `maps[i − 1]` is `Fᵢ → Fᵢ₋₁`.
    pub maps: Vec<GradedMap<F>>,
    pub module: ModuleSpec<F::Elem>,
    pub certified_internal_degree: usize,
    pub imax: usize,
}

impl<F: Field> Resolution<F> {
    pub fn free_module(&self, i: usize) -> FreeModule {
        if i == 0 {
            FreeModule { degrees: vec![0] }
        } else {
            self.maps[i - 1].source.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieOrder {
    #[default]
    Forward,
    Reverse,
}

/// Coordinates of `Fᵢ` in internal degree `j`: generator blocks of normal words.
struct Layout {
    offsets: Vec<usize>,
    bases: Vec<Option<Arc<DegreeBasis>>>,
    total: usize,
}

fn layout<F: Field>(q: &QuotientAlgebra<F>, degs: &[usize], j: usize) -> Result<Layout, QuotientError> {
    let mut offsets = Vec::with_capacity(degs.len());
    let mut bases = Vec::with_capacity(degs.len());
    let mut total = 0;
    for &d in degs {
        offsets.push(total);
        if d <= j {
            let b = q.degree_basis(j - d)?;
            total += b.len();
            bases.push(Some(b));
        } else {
            bases.push(None);
        }
    }
    Ok(Layout { offsets, bases, total })
}

/// Coordinates of `Σ_g p_g e_g` where each `p_g` is in normal form.
fn to_coords<F: Field>(l: &Layout, comps: &[Poly<F::Elem>]) -> SparseVec<F::Elem> {
    let mut v = Vec::new();
    for (g, p) in comps.iter().enumerate() {
        if p.is_zero() {
            continue;
        }
        let b = l.bases[g].as_ref().expect("component degree in range");
        for (w, c) in p.terms() {
            v.push((l.offsets[g] + b.index[w], c.clone()));
        }
    }
    v.sort_by_key(|e| e.0);
    v
}

fn from_coords<F: Field>(l: &Layout, v: &SparseVec<F::Elem>, f: &F) -> Vec<Poly<F::Elem>> {
    let mut comps: Vec<Vec<(Word, F::Elem)>> = vec![Vec::new(); l.offsets.len()];
    for (k, c) in v {
        let g = (0..l.offsets.len())
            .find(|&g| l.bases[g].as_ref().is_some_and(|b| *k >= l.offsets[g] && *k < l.offsets[g] + b.len()))
            .expect("coordinate inside some block");
        let b = l.bases[g].as_ref().unwrap();
        comps[g].push((b.words[k - l.offsets[g]].clone(), c.clone()));
    }
    comps.into_iter().map(|t| Poly::from_terms(f, t)).collect()
}

/// Builds the minimal resolution up to `Fᵢₘₐₓ`, all internal degrees `≤ jmax`.
pub fn minimal_resolution<F: Field>(
    q: &QuotientAlgebra<F>,
    module: ModuleSpec<F::Elem>,
    imax: usize,
    jmax: usize,
    ties: TieOrder,
) -> Result<Resolution<F>, ResolutionError> {
    if !q.complete() {
        return Err(ResolutionError::IncompleteBasis);
    }
    if jmax > q.trusted_degree() {
        return Err(ResolutionError::BeyondTrusted { jmax, trusted: q.trusted_degree() });
    }
    let f = q.field().clone();
    let n = q.num_generators() as u8;
    // degs[i] = generator degrees of Fᵢ; rows[i] = images of Fᵢ's generators in Fᵢ₋₁.
    let mut degs: Vec<Vec<usize>> = vec![vec![0]];
    let mut rows: Vec<Vec<Vec<Poly<F::Elem>>>> = vec![Vec::new()];
    degs.resize(imax + 1, Vec::new());
    rows.resize(imax + 1, Vec::new());
    // kernels[i][j]: basis of ker(Fᵢ → Fᵢ₋₁) in degree j, as component lists.
    let mut kernels: Vec<Vec<Vec<Vec<Poly<F::Elem>>>>> = vec![vec![Vec::new(); jmax + 1]; imax];
    let ideal = match &module {
        ModuleSpec::Trivial => None,
        ModuleSpec::CyclicQuotient(g) => Some(q.two_sided_ideal(g, jmax)?),
    };
    for j in 0..=jmax {
        for i in 0..imax {
            let lay = layout(q, &degs[i], j)?;
            let kvecs: Vec<SparseVec<F::Elem>> = if i == 0 {
                match &ideal {
                    None if j > 0 => (0..lay.total).map(|k| vec![(k, f.one())]).collect(),
                    None => Vec::new(),
                    Some(id) => id.component(j).iter().map(|p| to_coords::<F>(&lay, std::slice::from_ref(p))).collect(),
                }
            } else {
                let tgt = layout(q, &degs[i - 1], j)?;
                let mut images = Vec::with_capacity(lay.total);
                for (g, &d) in degs[i].iter().enumerate() {
                    let Some(b) = &lay.bases[g] else { continue };
                    for u in &b.words {
                        let comps: Vec<Poly<F::Elem>> =
                            rows[i][g].iter().map(|p| q.reduce(&p.mul_words(u, &Word::empty()))).collect::<Result<_, _>>()?;
                        debug_assert!(d + u.len() == j);
                        images.push(to_coords::<F>(&tgt, &comps));
                    }
                }
                kernel(&f, &images)
            };
            let kpolys: Vec<Vec<Poly<F::Elem>>> = kvecs.iter().map(|v| from_coords(&lay, v, &f)).collect();
            // Decomposables: A₁ · K_{j−1}.
            let mut ech = Echelon::new(f.clone());
            if j > 0 {
                for el in &kernels[i][j - 1] {
                    for l in 0..n {
                        let x = Word::letter(l);
                        let comps: Vec<Poly<F::Elem>> =
                            el.iter().map(|p| q.reduce(&p.mul_words(&x, &Word::empty()))).collect::<Result<_, _>>()?;
                        ech.insert(to_coords::<F>(&lay, &comps));
                    }
                }
            }
            let order: Vec<usize> = match ties {
                TieOrder::Forward => (0..kvecs.len()).collect(),
                TieOrder::Reverse => (0..kvecs.len()).rev().collect(),
            };
            for k in order {
                if ech.insert(kvecs[k].clone()) {
                    degs[i + 1].push(j);
                    rows[i + 1].push(kpolys[k].clone());
                }
            }
            kernels[i][j] = kpolys;
        }
    }
    let maps = (1..=imax)
        .map(|i| {
            let ncols = degs[i - 1].len();
            GradedMap {
                source: FreeModule { degrees: degs[i].clone() },
                target: FreeModule { degrees: degs[i - 1].clone() },
                matrix: rows[i]
                    .iter()
                    .map(|r| {
                        let mut r = r.clone();
                        r.resize(ncols, Poly::zero());
                        r
                    })
                    .collect(),
            }
        })
        .collect();
    Ok(Resolution { maps, module, certified_internal_degree: jmax, imax })
}

/// `β_{i,j}` = number of degree-`j` generators of `Fᵢ`.
pub fn betti_table<F: Field>(res: &Resolution<F>) -> BettiTable {
    let mut t = BettiTable::new(res.imax, res.certified_internal_degree);
    for i in 0..=res.imax {
        for d in res.free_module(i).degrees {
            if d <= res.certified_internal_degree {
                t.set(i, d, t.get(i, d) + 1);
            }
        }
        t.set_certified(i, true);
    }
    t
}

/// Checks `Mᵢ₊₁ · Mᵢ = 0` in the algebra and that no entry has a constant term.
pub fn verify_resolution<F: Field>(q: &QuotientAlgebra<F>, res: &Resolution<F>) -> Result<(), String> {
    let f = q.field();
    for (k, m) in res.maps.iter().enumerate() {
        for (r, row) in m.matrix.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                if p.words().any(|w| w.is_empty()) {
                    return Err(format!("map {} entry ({r},{c}) has a constant term", k + 1));
                }
                if !p.is_zero() && p.homogeneous_degree() != Some(m.source.degrees[r] - m.target.degrees[c]) {
                    return Err(format!("map {} entry ({r},{c}) has the wrong degree", k + 1));
                }
            }
        }
        if k == 0 {
            continue;
        }
        let prev = &res.maps[k - 1];
        for (r, row) in m.matrix.iter().enumerate() {
            for c in 0..prev.target.rank() {
                let mut s = Poly::zero();
                for (mid, p) in row.iter().enumerate() {
                    s = s.add(f, &p.mul(f, &prev.matrix[mid][c]));
                }
                let s = q.reduce(&s).map_err(|e| e.to_string())?;
                if !s.is_zero() {
                    return Err(format!("M{} · M{} is nonzero at ({r},{c})", k + 1, k));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::format::parse_presentation;
    use crate::groebner::complete;
    use crate::quotient::build_quotient;
    use crate::resolution::morse::MorseEngine;

    fn quotient(text: &str, n: usize) -> QuotientAlgebra<PrimeField> {
        let p = parse_presentation(text).unwrap().into_prime().unwrap().presentation;
        build_quotient(&p, n).unwrap()
    }

    fn compare_with_morse(text: &str, imax: usize, jmax: usize) {
        let q = quotient(text, jmax);
        let res = minimal_resolution(&q, ModuleSpec::Trivial, imax, jmax, TieOrder::Forward).unwrap();
        verify_resolution(&q, &res).unwrap();
        let lin = betti_table(&res);
        let rev = betti_table(&minimal_resolution(&q, ModuleSpec::Trivial, imax, jmax, TieOrder::Reverse).unwrap());
        assert_eq!(lin, rev);
        let gb = complete(q.presentation(), jmax).unwrap();
        let mut e = MorseEngine::trivial(&gb, imax + 1, jmax).unwrap();
        assert_eq!(lin, e.betti_table(imax), "{text}");
    }

    #[test]
    fn agrees_with_morse() {
        compare_with_morse("generators x y\nrelations\nx*y - y*x\nx*y*x\n", 4, 8);
        compare_with_morse("generators z\nrelations\nz^4\n", 4, 9);
        compare_with_morse("generators x y\nrelations\nx*y - y*x\n", 3, 6);
        compare_with_morse("generators x y\nrelations\n", 3, 6);
        compare_with_morse("generators a x y z\nrelations\nx*a\na*z\na*y\ny^2*z^2\nx^2*y^2 + a^4\n", 4, 7);
    }

    #[test]
    fn polynomial_ring_koszul_complex() {
        let q = quotient("generators x y\nrelations\nx*y - y*x\n", 6);
        let res = minimal_resolution(&q, ModuleSpec::Trivial, 3, 6, TieOrder::Forward).unwrap();
        let t = betti_table(&res);
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, 1), 2), ((2, 2), 1)]);
        assert_eq!(res.maps[0].matrix.len(), 2);
    }

    #[test]
    fn cyclic_quotient_module() {
        // A = k<x,y>/(xy), R = A/(x³): the ideal needs one generator in degree 3.
        let q = quotient("generators x y\nrelations\nx*y\n", 8);
        let f = *q.field();
        let j = Poly::word(&f, Word(vec![0, 0, 0]));
        let res = minimal_resolution(&q, ModuleSpec::CyclicQuotient(vec![j]), 4, 8, TieOrder::Forward).unwrap();
        verify_resolution(&q, &res).unwrap();
        let t = betti_table(&res);
        assert_eq!(t.get(0, 0), 1);
        assert_eq!(t.get(1, 3), 1);
    }

    #[test]
    fn beyond_trusted_degree_is_refused() {
        let q = quotient("generators x y\nrelations\nx*y - y*x\n", 4);
        assert!(matches!(
            minimal_resolution(&q, ModuleSpec::Trivial, 2, 6, TieOrder::Forward),
            Err(ResolutionError::BeyondTrusted { .. })
        ));
    }
}
