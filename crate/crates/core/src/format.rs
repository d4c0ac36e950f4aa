//! Text format for presentations.
//!
//! ```text
//! # comment
//! field 32003          # or: field Q
//! generators a x y z   # ascending order
//! relations
//! x*y - y*x
//! [g2]
//! x*a
//! [gd]
//! x^2*y^2 + a^4
//! ```
//!
//! Relations under `[g2]` / `[gd]` belong to the presentation and are also
//! remembered as the named groups.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::groebner::Presentation;
use crate::word::{Alphabet, Poly, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> FormatError {
    FormatError { line, col, msg: msg.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    G2,
    Gd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawRelation {
    pub terms: Vec<(Word, BigRational)>,
    pub group: Option<Group>,
    pub line: usize,
}

/// A parsed file with exact rational coefficients, before choosing a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPresentation {
    pub field: FieldSpec,
    pub alphabet: Alphabet,
    pub relations: Vec<RawRelation>,
}

/// A presentation over a concrete field with its optional relation groups.
#[derive(Clone, Debug)]
pub struct PresentationFile<F: Field> {
    pub presentation: Presentation<F>,
    pub g2: Option<Vec<Poly<F::Elem>>>,
    pub gd: Option<Vec<Poly<F::Elem>>>,
}

impl RawPresentation {
    pub fn has_groups(&self) -> bool {
        self.relations.iter().any(|r| r.group.is_some())
    }

    /// Maps coefficients into `f`. Relations that vanish or lose
    /// homogeneity in `f` are rejected.
    pub fn to_field<F: Field>(&self, f: F) -> Result<PresentationFile<F>, FormatError> {
        let mut rels = Vec::new();
        let mut g2 = Vec::new();
        let mut gd = Vec::new();
        for r in &self.relations {
            let mut terms = Vec::new();
            for (w, c) in &r.terms {
                let e = f
                    .from_fraction(c.numer(), c.denom())
                    .ok_or_else(|| err(r.line, 1, format!("denominator vanishes in field {}", f.spec())))?;
                terms.push((w.clone(), e));
            }
            let p = Poly::from_terms(&f, terms);
            if p.is_zero() {
                return Err(err(r.line, 1, "relation is zero"));
            }
            match r.group {
                Some(Group::G2) => g2.push(p.clone()),
                Some(Group::Gd) => gd.push(p.clone()),
                None => {}
            }
            rels.push(p);
        }
        let presentation = Presentation::new(f, self.alphabet.clone(), rels).map_err(|e| err(0, 0, e.to_string()))?;
        let has = self.has_groups();
        Ok(PresentationFile { presentation, g2: has.then_some(g2), gd: has.then_some(gd) })
    }

    pub fn into_prime(self) -> Result<PresentationFile<PrimeField>, FormatError> {
        match self.field {
            FieldSpec::Prime { p } => self.to_field(PrimeField::new(p).map_err(|e| err(1, 1, e.to_string()))?),
            FieldSpec::Rationals => Err(err(1, 1, "expected a prime field")),
        }
    }

    pub fn into_rational(self) -> Result<PresentationFile<Rationals>, FormatError> {
        self.to_field(Rationals)
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }
    fn col(&self) -> usize {
        self.pos + 1
    }
    fn number(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }
    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && is_name_char(self.s[self.pos], self.pos == start) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.s[start..self.pos]).unwrap())
    }
}

fn is_name_char(c: u8, first: bool) -> bool {
    c.is_ascii_alphabetic() || c == b'_' || (!first && (c.is_ascii_digit() || c == b'\''))
}

fn valid_name(n: &str) -> bool {
    let b = n.as_bytes();
    !b.is_empty() && b.iter().enumerate().all(|(i, &c)| is_name_char(c, i == 0))
}

/// Parses one polynomial line, checking homogeneity.
pub fn parse_poly_line(text: &str, alphabet: &Alphabet, line: usize) -> Result<Vec<(Word, BigRational)>, FormatError> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let mut terms: Vec<(Word, BigRational, usize)> = Vec::new();
    let mut first = true;
    loop {
        let Some(ch) = c.peek() else {
            if first {
                return Err(err(line, c.col(), "empty relation"));
            }
            break;
        };
        let mut neg = false;
        if ch == b'+' || ch == b'-' {
            neg = ch == b'-';
            c.pos += 1;
        } else if !first {
            return Err(err(line, c.col(), format!("expected `+` or `-`, found `{}`", ch as char)));
        }
        first = false;
        c.skip_ws();
        let term_col = c.col();
        let mut coef = BigRational::one();
        let mut letters = Vec::new();
        let mut need_factor = true;
        if let Some(n) = c.number() {
            let mut q = BigRational::from_integer(n);
            if c.peek() == Some(b'/') {
                c.pos += 1;
                let d = c.number().ok_or_else(|| err(line, c.col(), "expected denominator"))?;
                if d.is_zero() {
                    return Err(err(line, c.col(), "zero denominator"));
                }
                q /= BigRational::from_integer(d);
            }
            coef = q;
            need_factor = false;
            if c.peek() == Some(b'*') {
                c.pos += 1;
                need_factor = true;
            }
        }
        if need_factor {
            loop {
                let col = c.col();
                let name = c.ident().ok_or_else(|| err(line, col + 1, "expected a generator name"))?;
                let l = alphabet
                    .index_of(name)
                    .ok_or_else(|| err(line, col + 1, format!("unknown generator `{name}`")))?;
                let mut exp = 1usize;
                if c.peek() == Some(b'^') {
                    c.pos += 1;
                    let e = c.number().ok_or_else(|| err(line, c.col(), "expected exponent"))?;
                    exp = e.try_into().map_err(|_| err(line, c.col(), "exponent too large"))?;
                }
                letters.extend(std::iter::repeat_n(l, exp));
                if c.peek() == Some(b'*') {
                    c.pos += 1;
                } else {
                    break;
                }
            }
        }
        if neg {
            coef = -coef;
        }
        terms.push((Word(letters), coef, term_col));
    }
    let deg = terms[0].0.len();
    if let Some(t) = terms.iter().find(|t| t.0.len() != deg) {
        return Err(err(line, t.2, format!("relation is not homogeneous (degree {} vs {deg})", t.0.len())));
    }
    if deg < 2 {
        return Err(err(line, terms[0].2, "relations must have degree at least 2"));
    }
    let mut merged: Vec<(Word, BigRational)> = Vec::new();
    for (w, q, _) in terms {
        match merged.iter_mut().find(|(v, _)| *v == w) {
            Some(e) => e.1 += q,
            None => merged.push((w, q)),
        }
    }
    merged.retain(|(_, q)| !q.is_zero());
    if merged.is_empty() {
        return Err(err(line, 1, "relation is zero"));
    }
    Ok(merged)
}

pub fn parse_presentation(text: &str) -> Result<RawPresentation, FormatError> {
    let mut field = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut relations = Vec::new();
    let mut section: Option<Option<Group>> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap();
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len() + 1;
        let mut words = trimmed.split_whitespace();
        let head = words.next().unwrap();
        match head {
            "field" if section.is_none() => {
                let v = words.next().ok_or_else(|| err(line, indent, "missing field"))?;
                field = Some(if v == "Q" || v == "QQ" {
                    FieldSpec::Rationals
                } else {
                    let p: u64 = v.parse().map_err(|_| err(line, indent + 6, format!("bad field `{v}`")))?;
                    FieldSpec::prime(p).map_err(|e| err(line, indent + 6, e.to_string()))?
                });
            }
            "generators" if section.is_none() => {
                let names: Vec<&str> = words.collect();
                if let Some(bad) = names.iter().find(|n| !valid_name(n)) {
                    return Err(err(line, indent, format!("invalid generator name `{bad}`")));
                }
                alphabet = Some(Alphabet::new(names).map_err(|e| err(line, indent, e.to_string()))?);
            }
            "relations" => section = Some(None),
            "[g2]" => section = Some(Some(Group::G2)),
            "[gd]" => section = Some(Some(Group::Gd)),
            _ => {
                let Some(group) = section else {
                    return Err(err(line, indent, format!("unexpected `{head}`")));
                };
                let a = alphabet.as_ref().ok_or_else(|| err(line, indent, "relations before generators"))?;
                let terms = parse_poly_line(body, a, line)?;
                relations.push(RawRelation { terms, group, line });
            }
        }
    }
    let alphabet = alphabet.ok_or_else(|| err(1, 1, "missing `generators` line"))?;
    Ok(RawPresentation { field: field.unwrap_or_default(), alphabet, relations })
}

/// Canonical text form; parsing it back yields the same presentation.
pub fn print_presentation<F: Field>(file: &PresentationFile<F>) -> String {
    let p = &file.presentation;
    let mut s = format!("field {}\ngenerators {}\n", p.field.spec(), p.alphabet.names().join(" "));
    let grouped: Vec<&Poly<F::Elem>> = file.g2.iter().chain(file.gd.iter()).flatten().collect();
    let rest: Vec<&Poly<F::Elem>> = p.relations.iter().filter(|r| !grouped.contains(r)).collect();
    s.push_str("relations\n");
    for r in rest {
        s.push_str(&r.format(&p.field, &p.alphabet));
        s.push('\n');
    }
    for (tag, g) in [("[g2]", &file.g2), ("[gd]", &file.gd)] {
        if let Some(g) = g {
            s.push_str(tag);
            s.push('\n');
            for r in g {
                s.push_str(&r.format(&p.field, &p.alphabet));
                s.push('\n');
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const MIXED: &str = "field 32003\ngenerators a x y z\n[g2]\nx*a\na*z\na*y\n[gd]\ny^2*z^2\nx^2*y^2 + a^4\n";

    #[test]
    fn parses_split_groups() {
        let raw = parse_presentation(MIXED).unwrap();
        let file = raw.into_prime().unwrap();
        assert_eq!(file.presentation.alphabet.len(), 4);
        assert_eq!(file.presentation.relations.len(), 5);
        assert_eq!(file.g2.as_ref().unwrap().len(), 3);
        assert_eq!(file.gd.as_ref().unwrap().len(), 2);
    }

    #[test]
    fn empty_relations_is_free() {
        let raw = parse_presentation("generators x y\nrelations\n").unwrap();
        assert!(raw.relations.is_empty());
        assert_eq!(raw.field, FieldSpec::Prime { p: 32003 });
    }

    #[test]
    fn rejects_nonhomogeneous_with_position() {
        let e = parse_presentation("generators x\nrelations\nx + x^2\n").unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(e.col, 5);
        assert!(e.msg.contains("homogeneous"));
        assert!(parse_presentation("generators x\nrelations\nq*x\n").is_err());
        assert!(parse_presentation("generators x\nrelations\nx\n").is_err());
        assert!(parse_presentation("generators x\nrelations\nx^2 - x^2\n").is_err());
    }

    #[test]
    fn fractions_and_rationals() {
        let raw = parse_presentation("field Q\ngenerators x y\nrelations\n1/2*x*y - 3*y*x\n").unwrap();
        let file = raw.into_rational().unwrap();
        let p = &file.presentation;
        assert_eq!(print_presentation(&file), "field Q\ngenerators x y\nrelations\n-3*y*x + 1/2*x*y\n");
        assert_eq!(p.relations[0].len(), 2);
    }

    #[test]
    fn round_trip_split() {
        let file = parse_presentation(MIXED).unwrap().into_prime().unwrap();
        let text = print_presentation(&file);
        let again = parse_presentation(&text).unwrap().into_prime().unwrap();
        assert_eq!(again.presentation, file.presentation);
        assert_eq!(again.g2, file.g2);
        assert_eq!(again.gd, file.gd);
    }

    proptest! {
        #[test]
        fn round_trip_random(rels in proptest::collection::vec(
            proptest::collection::vec((-5i64..6, proptest::collection::vec(0u8..3, 3)), 1..4), 0..4)) {
            let f = PrimeField::new(32003).unwrap();
            let a = Alphabet::new(["x", "y", "z"]).unwrap();
            let polys: Vec<Poly<u32>> = rels
                .into_iter()
                .map(|ts| Poly::from_terms(&f, ts.into_iter().map(|(c, w)| (Word(w), f.from_i64(c)))))
                .filter(|p| !p.is_zero())
                .collect();
            let file = PresentationFile {
                presentation: Presentation::new(f, a, polys).unwrap(),
                g2: None,
                gd: None,
            };
            let text = print_presentation(&file);
            let back = parse_presentation(&text).unwrap().into_prime().unwrap();
            prop_assert_eq!(back.presentation, file.presentation);
        }
    }
}
