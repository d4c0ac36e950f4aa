//! The quotient `T(V)/⟨S⟩` with normal-word bases, Hilbert function and
//! graded ideals.
//!
//! Normal words are counted by the tip automaton and only listed on demand,
//! per degree, subject to a size budget.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::field::Field;
use crate::groebner::{complete, GroebnerBasis, GroebnerError, Presentation};
use crate::linalg::{Echelon, SparseVec};
use crate::word::{Poly, Word};

/// Largest number of normal words listed in a single degree.
pub const DEFAULT_WORD_BUDGET: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("degree {degree} exceeds the trusted degree {trusted}")]
    DegreeExceedsTrusted { degree: usize, trusted: usize },
    #[error("degree {degree} has {count} normal words, above the budget of {budget}")]
    TooManyWords { degree: usize, count: u128, budget: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
}

/// Normal words of one degree, ascending, with their positions.
#[derive(Debug)]
pub struct DegreeBasis {
    pub words: Vec<Word>,
    pub index: HashMap<Word, usize>,
}

impl DegreeBasis {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[derive(Debug)]
pub struct QuotientAlgebra<F: Field> {
    presentation: Presentation<F>,
    basis: GroebnerBasis<F>,
    hilbert: Vec<u128>,
    trusted_degree: usize,
    word_budget: usize,
    bases: Vec<OnceLock<Arc<DegreeBasis>>>,
}

impl<F: Field> Clone for QuotientAlgebra<F> {
    fn clone(&self) -> Self {
        QuotientAlgebra {
            presentation: self.presentation.clone(),
            basis: self.basis.clone(),
            hilbert: self.hilbert.clone(),
            trusted_degree: self.trusted_degree,
            word_budget: self.word_budget,
            bases: (0..self.bases.len()).map(|_| OnceLock::new()).collect(),
        }
    }
}

/// Completes the relations up to `degree_bound` and wraps the result.
pub fn build_quotient<F: Field>(p: &Presentation<F>, degree_bound: usize) -> Result<QuotientAlgebra<F>, QuotientError> {
    let gb = complete(p, degree_bound.max(p.max_degree()))?;
    Ok(QuotientAlgebra::from_basis(p.clone(), gb, degree_bound))
}

impl<F: Field> QuotientAlgebra<F> {
    pub fn from_basis(presentation: Presentation<F>, basis: GroebnerBasis<F>, degree_bound: usize) -> Self {
        let trusted_degree = if basis.complete_at_truncation() {
            degree_bound.min(basis.truncation_degree())
        } else {
            basis.max_degree().min(degree_bound)
        };
        let hilbert = basis.automaton().count_normal(trusted_degree);
        QuotientAlgebra {
            presentation,
            basis,
            hilbert,
            trusted_degree,
            word_budget: DEFAULT_WORD_BUDGET,
            bases: (0..=trusted_degree).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn with_word_budget(mut self, budget: usize) -> Self {
        self.word_budget = budget;
        self
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.presentation
    }

    pub fn basis(&self) -> &GroebnerBasis<F> {
        &self.basis
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.alphabet.len()
    }

    pub fn trusted_degree(&self) -> usize {
        self.trusted_degree
    }

    /// Whether the Gröbner data is complete up to the trusted degree.
    pub fn complete(&self) -> bool {
        self.basis.complete_at_truncation()
    }

    /// `hilbert()[j] = dim A_j` for `j ≤ trusted_degree`.
    pub fn hilbert(&self) -> &[u128] {
        &self.hilbert
    }

    /// Hilbert function to any length, straight from the tip automaton. Only
    /// meaningful past the trusted degree if the basis is closed.
    pub fn hilbert_to(&self, n: usize) -> Vec<u128> {
        self.basis.automaton().count_normal(n)
    }

    fn check_degree(&self, d: usize) -> Result<(), QuotientError> {
        if d > self.trusted_degree {
            Err(QuotientError::DegreeExceedsTrusted { degree: d, trusted: self.trusted_degree })
        } else {
            Ok(())
        }
    }

    /// Normal words of degree `j`, ascending.
    pub fn degree_basis(&self, j: usize) -> Result<Arc<DegreeBasis>, QuotientError> {
        self.check_degree(j)?;
        if let Some(b) = self.bases[j].get() {
            return Ok(b.clone());
        }
        let count = self.hilbert[j];
        if count > self.word_budget as u128 {
            return Err(QuotientError::TooManyWords { degree: j, count, budget: self.word_budget });
        }
        let words = self.basis.automaton().normal_words(j, self.word_budget).expect("count within budget");
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let b = Arc::new(DegreeBasis { words, index });
        Ok(self.bases[j].get_or_init(|| b).clone())
    }

    pub fn normal_words(&self, j: usize) -> Result<Vec<Word>, QuotientError> {
        Ok(self.degree_basis(j)?.words.clone())
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.basis.is_normal(w)
    }

    pub fn reduce(&self, p: &Poly<F::Elem>) -> Result<Poly<F::Elem>, QuotientError> {
        if let Some(d) = p.words().map(|w| w.len()).max() {
            self.check_degree(d)?;
        }
        Ok(self.basis.normal_form(p))
    }

    pub fn reduce_word(&self, w: &Word) -> Poly<F::Elem> {
        self.basis.normal_form_word(w)
    }

    pub fn mul(&self, p: &Poly<F::Elem>, q: &Poly<F::Elem>) -> Result<Poly<F::Elem>, QuotientError> {
        self.reduce(&p.mul(self.field(), q))
    }

    /// Coordinates of a homogeneous normal-form polynomial of degree `j`.
    pub fn coordinates(&self, p: &Poly<F::Elem>, j: usize) -> Result<SparseVec<F::Elem>, QuotientError> {
        let b = self.degree_basis(j)?;
        let mut v: SparseVec<F::Elem> = Vec::with_capacity(p.len());
        for (w, c) in p.terms() {
            let k = *b.index.get(w).ok_or(QuotientError::NotHomogeneous)?;
            v.push((k, c.clone()));
        }
        v.reverse();
        Ok(v)
    }

    pub fn from_coordinates(&self, v: &SparseVec<F::Elem>, j: usize) -> Result<Poly<F::Elem>, QuotientError> {
        let b = self.degree_basis(j)?;
        Ok(Poly::from_sorted_unchecked(v.iter().rev().map(|(k, c)| (b.words[*k].clone(), c.clone())).collect()))
    }

    fn ideal(&self, gens: &[Poly<F::Elem>], bound: usize, two_sided: bool) -> Result<GradedSubspace<F>, QuotientError> {
        self.check_degree(bound)?;
        let f = self.field().clone();
        let n = self.num_generators() as u8;
        let mut comps: Vec<Vec<Poly<F::Elem>>> = vec![Vec::new(); bound + 1];
        for j in 0..=bound {
            let mut ech = Echelon::new(f.clone());
            for g in gens {
                let g = self.basis.normal_form(g);
                if g.is_zero() {
                    continue;
                }
                let d = g.homogeneous_degree().ok_or(QuotientError::NotHomogeneous)?;
                if d == j {
                    ech.insert(self.coordinates(&g, j)?);
                }
            }
            if j > 0 {
                for p in &comps[j - 1] {
                    for l in 0..n {
                        let x = Word::letter(l);
                        let left = self.basis.normal_form(&p.mul_words(&x, &Word::empty()));
                        if !left.is_zero() {
                            ech.insert(self.coordinates(&left, j)?);
                        }
                        if two_sided {
                            let right = self.basis.normal_form(&p.mul_words(&Word::empty(), &x));
                            if !right.is_zero() {
                                ech.insert(self.coordinates(&right, j)?);
                            }
                        }
                    }
                }
            }
            comps[j] = ech
                .rref_rows()
                .iter()
                .rev()
                .map(|r| self.from_coordinates(r, j))
                .collect::<Result<_, _>>()?;
        }
        Ok(GradedSubspace { components: comps })
    }

    /// `A·gens`, degree by degree up to `bound`.
    pub fn left_ideal(&self, gens: &[Poly<F::Elem>], bound: usize) -> Result<GradedSubspace<F>, QuotientError> {
        self.ideal(gens, bound, false)
    }

    /// `A·gens·A`, degree by degree up to `bound`.
    pub fn two_sided_ideal(&self, gens: &[Poly<F::Elem>], bound: usize) -> Result<GradedSubspace<F>, QuotientError> {
        self.ideal(gens, bound, true)
    }
}

/// A graded subspace of a quotient algebra in reduced row echelon form:
/// each component lists its basis with descending leading words, each
/// leading word absent from the other elements.
#[derive(Clone, Debug)]
pub struct GradedSubspace<F: Field> {
    components: Vec<Vec<Poly<F::Elem>>>,
}

impl<F: Field> PartialEq for GradedSubspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.components == other.components
    }
}

impl<F: Field> GradedSubspace<F> {
    pub fn bound(&self) -> usize {
        self.components.len().saturating_sub(1)
    }

    pub fn component(&self, j: usize) -> &[Poly<F::Elem>] {
        self.components.get(j).map_or(&[], |c| c.as_slice())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.len()).collect()
    }

    /// First degree where the two subspaces differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        let n = self.components.len().max(other.components.len());
        (0..n).find(|&j| self.component(j) != other.component(j))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::format::parse_presentation;
    use crate::linalg::rank;
    use crate::word::Alphabet;

    fn q(text: &str, bound: usize) -> QuotientAlgebra<PrimeField> {
        let p = parse_presentation(text).unwrap().into_prime().unwrap().presentation;
        build_quotient(&p, bound).unwrap()
    }

    #[test]
    fn hilbert_examples() {
        let z4 = q("generators z\nrelations\nz^4\n", 8);
        assert_eq!(z4.hilbert(), &[1, 1, 1, 1, 0, 0, 0, 0, 0]);
        let free = q("generators x y\nrelations\n", 8);
        assert_eq!(free.hilbert(), (0..=8).map(|j| 1u128 << j).collect::<Vec<_>>().as_slice());
        let poly = q("generators x y\nrelations\nx*y - y*x\n", 8);
        assert_eq!(poly.hilbert(), (0..=8).map(|j| j as u128 + 1).collect::<Vec<_>>().as_slice());
    }

    #[test]
    fn reduce_examples() {
        let z4 = q("generators z\nrelations\nz^4\n", 8);
        let f = *z4.field();
        assert!(z4.reduce(&Poly::word(&f, Word(vec![0; 5]))).unwrap().is_zero());
        assert!(z4.reduce(&Poly::word(&f, Word(vec![0; 9]))).is_err());
        let r = q("generators a x y z\nrelations\nx*a\na*z\na*y\ny^2*z^2\nx^2*y^2 + a^4\n", 10);
        let a = &r.presentation().alphabet;
        let w = |s: &str| Poly::word(&f, a.parse_word(s).unwrap());
        assert_eq!(r.reduce(&w("x^2*y^2")).unwrap(), w("a^4").neg(&f));
        assert_eq!(r.reduce(&w("y*x")).unwrap(), w("y*x"));
    }

    /// Brute force: reduce every product normal word × generator (× normal word).
    fn brute_dims(alg: &QuotientAlgebra<PrimeField>, gens: &[Poly<u32>], bound: usize, two_sided: bool) -> Vec<usize> {
        let f = *alg.field();
        (0..=bound)
            .map(|j| {
                let mut rows = Vec::new();
                for g in gens {
                    let d = g.homogeneous_degree().unwrap();
                    if d > j {
                        continue;
                    }
                    for a in 0..=(j - d) {
                        let b = j - d - a;
                        if !two_sided && b > 0 {
                            continue;
                        }
                        for u in alg.normal_words(a).unwrap() {
                            for v in alg.normal_words(b).unwrap() {
                                let p = alg.reduce(&g.mul_words(&u, &v)).unwrap();
                                if !p.is_zero() {
                                    rows.push(alg.coordinates(&p, j).unwrap());
                                }
                            }
                        }
                    }
                }
                rank(&f, rows)
            })
            .collect()
    }

    #[test]
    fn ideals_match_brute_force() {
        let a = q("generators x y\nrelations\nx*y\n", 6);
        let f = *a.field();
        let yx = Poly::word(&f, Word(vec![1, 0]));
        let left = a.left_ideal(&[yx.clone()], 6).unwrap();
        assert_eq!(left.dims(), brute_dims(&a, &[yx.clone()], 6, false));
        assert_eq!(left.component(3), &[Poly::word(&f, Word(vec![1, 1, 0]))]);
        let two = a.two_sided_ideal(&[yx.clone()], 6).unwrap();
        assert_eq!(two.dims(), brute_dims(&a, &[yx], 6, true));
        let one = Poly::word(&f, Word::empty());
        let all = a.left_ideal(&[one], 6).unwrap();
        assert_eq!(all.dims(), a.hilbert().iter().map(|&h| h as usize).collect::<Vec<_>>());
        assert!(a.left_ideal(&[], 6).unwrap().dims().iter().all(|&d| d == 0));

        let free = q("generators x y\nrelations\n", 4);
        let x = Poly::word(&f, Word(vec![0]));
        let t = free.two_sided_ideal(&[x], 4).unwrap();
        let al = Alphabet::new(["x", "y"]).unwrap();
        let got: Vec<String> = t.component(2).iter().map(|p| p.format(&f, &al)).collect();
        assert_eq!(got, vec!["y*x", "x*y", "x^2"]);
    }

    #[test]
    fn left_ideal_inside_two_sided() {
        let a = q("generators x y z\nrelations\nx*y\nz*z\n", 6);
        let f = *a.field();
        let g = vec![Poly::word(&f, Word(vec![1, 1, 2]))];
        let l = a.left_ideal(&g, 6).unwrap();
        let t = a.two_sided_ideal(&g, 6).unwrap();
        for j in 0..=6 {
            let mut e = Echelon::new(f);
            for p in t.component(j) {
                e.insert(a.coordinates(p, j).unwrap());
            }
            for p in l.component(j) {
                assert!(e.contains(a.coordinates(p, j).unwrap()));
            }
        }
    }

    #[test]
    fn multiplication_is_compatible_with_reduction() {
        let a = q("generators x y\nrelations\nx*y - y*x\nx*y*x\n", 9);
        let f = *a.field();
        for u in a.normal_words(2).unwrap() {
            for v in a.normal_words(3).unwrap() {
                let p = Poly::word(&f, u.concat(&v));
                let lhs = a.reduce(&p).unwrap();
                let rhs = a.mul(&a.reduce_word(&u), &a.reduce_word(&v)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
