//! Words over an ordered alphabet and sparse polynomials in the free algebra.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("letter index {index} is out of range for an alphabet of size {size}")]
    InvalidLetter { index: usize, size: usize },
    #[error("duplicate generator name `{0}`")]
    DuplicateName(String),
    #[error("empty generator name")]
    EmptyName,
    #[error("alphabet has more than 255 generators")]
    TooManyGenerators,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}

/// Ordered generator names; earlier names are smaller.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, AlgebraError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > 255 {
            return Err(AlgebraError::TooManyGenerators);
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(AlgebraError::EmptyName);
            }
            if names[..i].contains(n) {
                return Err(AlgebraError::DuplicateName(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: u8) -> &str {
        &self.names[i as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn validate(&self, w: &Word) -> Result<(), AlgebraError> {
        match w.0.iter().find(|&&l| l as usize >= self.len()) {
            Some(&l) => Err(AlgebraError::InvalidLetter { index: l as usize, size: self.len() }),
            None => Ok(()),
        }
    }

    /// Parses a word written as names separated by `*`, e.g. `x*y^2*a`.
    pub fn parse_word(&self, text: &str) -> Result<Word, AlgebraError> {
        let mut letters = Vec::new();
        let text = text.trim();
        if text == "1" || text.is_empty() {
            return Ok(Word::empty());
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (n.trim(), e.trim().parse::<usize>().unwrap_or(1)),
                None => (factor, 1),
            };
            let l = self
                .index_of(name)
                .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
            letters.extend(std::iter::repeat_n(l, exp));
        }
        Ok(Word(letters))
    }

    /// Renders a word compactly, grouping repeated letters as powers.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        let l = w.letters();
        while i < l.len() {
            let mut k = i;
            while k < l.len() && l[k] == l[i] {
                k += 1;
            }
            let n = self.name(l[i]);
            if k - i > 1 {
                parts.push(format!("{n}^{}", k - i));
            } else {
                parts.push(n.to_string());
            }
            i = k;
        }
        parts.join("*")
    }

    /// Names of the letters concatenated without separators; fine for
    /// single-character alphabets and used in graph labels.
    pub fn concat_word(&self, w: &Word) -> String {
        w.letters().iter().map(|&l| self.name(l)).collect::<Vec<_>>().join("")
    }
}

/// A word in the generators; letters are alphabet indices.
///
/// `Ord` is degree-lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: u8) -> Self {
        Word(vec![l])
    }

    pub fn from_slice(s: &[u8]) -> Self {
        Word(s.to_vec())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Start positions at which `pat` occurs as a connected subword.
    pub fn occurrences(&self, pat: &Word) -> Vec<usize> {
        if pat.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pat.len()).filter(|&i| self.0[i..i + pat.len()] == pat.0[..]).collect()
    }

    pub fn contains(&self, pat: &Word) -> bool {
        pat.is_empty() || self.0.windows(pat.len()).any(|w| w == pat.letters())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.0)
    }
}

/// Degree-lexicographic comparison, validating letters against `a`.
pub fn deglex_compare(u: &Word, v: &Word, a: &Alphabet) -> Result<Ordering, AlgebraError> {
    a.validate(u)?;
    a.validate(v)?;
    Ok(u.cmp(v))
}

/// A noncommutative polynomial: terms sorted by descending word, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<E> {
    terms: Vec<(Word, E)>,
}

impl<E: Clone> Default for Poly<E> {
    fn default() -> Self {
        Poly { terms: Vec::new() }
    }
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Word, E)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Word, E)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn monomial<F: Field<Elem = E>>(f: &F, w: Word, c: E) -> Self {
        if f.is_zero(&c) {
            Poly::zero()
        } else {
            Poly { terms: vec![(w, c)] }
        }
    }

    pub fn word<F: Field<Elem = E>>(f: &F, w: Word) -> Self {
        Poly { terms: vec![(w, f.one())] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms<F: Field<Elem = E>>(f: &F, terms: impl IntoIterator<Item = (Word, E)>) -> Self {
        let mut acc: HashMap<Word, E> = HashMap::new();
        for (w, c) in terms {
            match acc.get_mut(&w) {
                Some(e) => *e = f.add(e, &c),
                None => {
                    acc.insert(w, c);
                }
            }
        }
        let mut terms: Vec<(Word, E)> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Trusts that `terms` are already sorted descending, distinct and nonzero.
    pub(crate) fn from_sorted_unchecked(terms: Vec<(Word, E)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        Poly { terms }
    }

    pub fn leading_term(&self) -> Result<(&Word, &E), AlgebraError> {
        self.terms.first().map(|(w, c)| (w, c)).ok_or(AlgebraError::ZeroPolynomial)
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.first().map(|(w, _)| w)
    }

    pub fn coefficient(&self, w: &Word) -> Option<&E> {
        self.terms
            .binary_search_by(|(t, _)| w.cmp(t))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// The common degree of all terms, if the polynomial is homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.terms.first()?.0.len();
        self.terms.iter().all(|(w, _)| w.len() == d).then_some(d)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.iter().map(|(w, _)| w)
    }

    /// `p + c·q`.
    pub fn combine<F: Field<Elem = E>>(&self, f: &F, c: &E, q: &Poly<E>) -> Poly<E> {
        if f.is_zero(c) {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + q.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < q.terms.len() {
            let ord = match (self.terms.get(i), q.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (w, e) = &q.terms[j];
                    out.push((w.clone(), f.mul(c, e)));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(&self.terms[i].1, &f.mul(c, &q.terms[j].1));
                    if !f.is_zero(&s) {
                        out.push((self.terms[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, q: &Poly<E>) -> Poly<E> {
        self.combine(f, &f.one(), q)
    }

    pub fn sub<F: Field<Elem = E>>(&self, f: &F, q: &Poly<E>) -> Poly<E> {
        self.combine(f, &f.neg(&f.one()), q)
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Poly<E> {
        if f.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(w, e)| (w.clone(), f.mul(c, e))).collect() }
    }

    pub fn neg<F: Field<Elem = E>>(&self, f: &F) -> Poly<E> {
        Poly { terms: self.terms.iter().map(|(w, e)| (w.clone(), f.neg(e))).collect() }
    }

    /// Scales so the leading coefficient is one; zero stays zero.
    pub fn monic<F: Field<Elem = E>>(&self, f: &F) -> Poly<E> {
        match self.terms.first() {
            None => Poly::zero(),
            Some((_, c)) => self.scale(f, &f.inv(c).expect("nonzero leading coefficient")),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, f: &F, q: &Poly<E>) -> Poly<E> {
        Poly::from_terms(
            f,
            self.terms.iter().flat_map(|(u, a)| {
                q.terms.iter().map(move |(v, b)| (u.concat(v), f.mul(a, b)))
            }),
        )
    }

    /// `l·p·r` for words `l`, `r`; keeps the term order.
    pub fn mul_words(&self, l: &Word, r: &Word) -> Poly<E> {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (l.concat(w).concat(r), c.clone()))
                .collect(),
        }
    }

    /// Reverses every word; the result is re-sorted.
    pub fn reversed<F: Field<Elem = E>>(&self, f: &F) -> Poly<E> {
        Poly::from_terms(f, self.terms.iter().map(|(w, c)| (w.reversed(), c.clone())))
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F, a: &Alphabet) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let cs = f.format(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let ws = a.format_word(w);
            if mag == "1" {
                s.push_str(&ws);
            } else if w.is_empty() {
                s.push_str(&mag);
            } else {
                s.push_str(&format!("{mag}*{ws}"));
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn abc() -> Alphabet {
        Alphabet::new(["a", "x", "y", "z"]).unwrap()
    }

    #[test]
    fn deglex_examples() {
        let a = abc();
        let w = |s: &str| a.parse_word(s).unwrap();
        assert_eq!(deglex_compare(&w("x*a"), &w("a*z"), &a), Ok(Ordering::Greater));
        assert_eq!(deglex_compare(&Word::empty(), &w("z"), &a), Ok(Ordering::Less));
        assert_eq!(deglex_compare(&w("x*y*x"), &w("x*y*x"), &a), Ok(Ordering::Equal));
        assert!(deglex_compare(&Word(vec![9]), &w("z"), &a).is_err());
    }

    #[test]
    fn combine_examples() {
        let f = PrimeField::new(32003).unwrap();
        let a = Alphabet::new(["x", "y"]).unwrap();
        let xy = Poly::word(&f, a.parse_word("x*y").unwrap());
        let yx = Poly::word(&f, a.parse_word("y*x").unwrap());
        assert!(xy.combine(&f, &1, &xy.neg(&f)).is_zero());
        let s = xy.combine(&f, &1, &yx);
        assert_eq!(s.len(), 2);
        assert_eq!(s.format(&f, &a), "y*x + x*y");

        let b = abc();
        let q = Rationals;
        let p1 = Poly::from_terms(
            &q,
            [(b.parse_word("x^2*y^2").unwrap(), q.one()), (b.parse_word("a^4").unwrap(), q.one())],
        );
        let a4 = Poly::word(&q, b.parse_word("a^4").unwrap());
        let r = p1.combine(&q, &q.from_i64(-1), &a4);
        assert_eq!(r, Poly::word(&q, b.parse_word("x^2*y^2").unwrap()));
    }

    #[test]
    fn mul_examples() {
        let f = PrimeField::new(32003).unwrap();
        let a = Alphabet::new(["x", "y"]).unwrap();
        let x = Poly::word(&f, Word::letter(0));
        let y = Poly::word(&f, Word::letter(1));
        let one = Poly::word(&f, Word::empty());
        let comm = x.mul(&f, &y).sub(&f, &y.mul(&f, &x));
        assert_eq!(comm.mul(&f, &one), comm);
        let lhs = x.add(&f, &y).mul(&f, &x.sub(&f, &y));
        assert_eq!(lhs.format(&f, &a), "-y^2 + y*x - x*y + x^2");
    }

    #[test]
    fn leading_terms() {
        let q = Rationals;
        let b = abc();
        let p = Poly::from_terms(
            &q,
            [(b.parse_word("a^4").unwrap(), q.one()), (b.parse_word("x^2*y^2").unwrap(), q.one())],
        );
        assert_eq!(p.leading_term().unwrap().0, &b.parse_word("x^2*y^2").unwrap());
        let a = Alphabet::new(["x", "y"]).unwrap();
        let xy_yx = Poly::from_terms(
            &q,
            [(a.parse_word("x*y").unwrap(), q.one()), (a.parse_word("y*x").unwrap(), q.from_i64(-1))],
        );
        let (w, c) = xy_yx.leading_term().unwrap();
        assert_eq!((w.clone(), c.clone()), (a.parse_word("y*x").unwrap(), q.from_i64(-1)));
        assert_eq!(Poly::<u32>::zero().leading_term(), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new([""]).is_err());
        assert!(Alphabet::new(Vec::<String>::new()).is_ok());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word() -> impl Strategy<Value = Word> {
            proptest::collection::vec(0u8..3, 0..6).prop_map(Word)
        }

        fn poly() -> impl Strategy<Value = Poly<u32>> {
            proptest::collection::vec((word(), 0u32..7), 0..5).prop_map(|t| {
                let f = PrimeField::new(7).unwrap();
                Poly::from_terms(&f, t)
            })
        }

        proptest! {
            #[test]
            fn deglex_is_multiplicative(u in word(), v in word(), w in word()) {
                if u < v {
                    prop_assert!(w.concat(&u) < w.concat(&v));
                    prop_assert!(u.concat(&w) < v.concat(&w));
                }
            }

            #[test]
            fn mul_associative_and_distributive(p in poly(), q in poly(), r in poly(), c in 0u32..7) {
                let f = PrimeField::new(7).unwrap();
                prop_assert_eq!(p.mul(&f, &q).mul(&f, &r), p.mul(&f, &q.mul(&f, &r)));
                prop_assert_eq!(
                    p.mul(&f, &q.combine(&f, &c, &r)),
                    p.mul(&f, &q).combine(&f, &c, &p.mul(&f, &r))
                );
            }
        }
    }
}
