//! Free products and the 𝒦₂ certificate from merged Gröbner hypotheses.

use serde::Serialize;
use thiserror::Error;

use crate::field::Field;
use crate::groebner::{complete, is_groebner, redundancy_check, GroebnerError, Presentation};
use crate::quotient::QuotientError;
use crate::resolution::{algebra_betti, BettiError, BettiTable};
use crate::word::{Alphabet, Poly, Word};
use crate::yoneda::generation::check_k2;
use crate::yoneda::monomial::monomial_k2_criteria;
use crate::yoneda::verdict::{check_d_koszul, Outcome, Verdict, Witness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Betti(#[from] BettiError),
    #[error("{0} has no Gröbner basis complete up to the bound")]
    Incomplete(&'static str),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeProductSpec<F: Field> {
    pub left: Presentation<F>,
    /// The right factor after renaming.
    pub right: Presentation<F>,
    pub combined: Presentation<F>,
}

/// `A ⊔ B`: left generators first, then the right ones, with `'` appended to
/// right names until they are fresh.
pub fn free_product<F: Field>(p: &Presentation<F>, q: &Presentation<F>) -> FreeProductSpec<F> {
    let mut names: Vec<String> = p.alphabet.names().to_vec();
    let mut right_names = Vec::new();
    for n in q.alphabet.names() {
        let mut m = n.clone();
        while names.contains(&m) || right_names.contains(&m) {
            m.push('\'');
        }
        right_names.push(m);
    }
    names.extend(right_names.iter().cloned());
    let shift = p.alphabet.len() as u8;
    let f = &p.field;
    let moved: Vec<Poly<F::Elem>> = q
        .relations
        .iter()
        .map(|r| Poly::from_terms(f, r.terms().iter().map(|(w, c)| (Word(w.0.iter().map(|l| l + shift).collect()), c.clone()))))
        .collect();
    let right = Presentation {
        field: q.field.clone(),
        alphabet: Alphabet::new(right_names).expect("fresh names"),
        relations: q.relations.clone(),
    };
    let mut rels = p.relations.clone();
    rels.extend(moved);
    let combined = Presentation { field: f.clone(), alphabet: Alphabet::new(names).expect("fresh names"), relations: rels };
    FreeProductSpec { left: p.clone(), right, combined }
}

fn inverse(h: &[i128]) -> Vec<i128> {
    let n = h.len();
    let mut inv = vec![0i128; n];
    if n == 0 {
        return inv;
    }
    inv[0] = 1;
    for k in 1..n {
        inv[k] = -(1..=k).map(|i| h[i] * inv[k - i]).sum::<i128>();
    }
    inv
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCheck {
    pub bound: usize,
    pub left: Vec<u128>,
    pub right: Vec<u128>,
    pub combined: Vec<u128>,
    /// `H` predicted from `1/H_C = 1/H_A + 1/H_B − 1`.
    pub predicted: Vec<i128>,
    pub first_mismatch: Option<usize>,
}

impl HilbertCheck {
    pub fn holds(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Checks `1/H_{A⊔B} = 1/H_A + 1/H_B − 1` up to `bound`.
pub fn freeprod_hilbert_check<F: Field>(
    p: &Presentation<F>,
    q: &Presentation<F>,
    bound: usize,
) -> Result<HilbertCheck, ConstructionError> {
    let spec = free_product(p, q);
    let mut hs = Vec::new();
    for (name, x) in [("left factor", p), ("right factor", q), ("free product", &spec.combined)] {
        let gb = complete(x, bound.max(x.max_degree()))?;
        if !gb.complete_at_truncation() {
            return Err(ConstructionError::Incomplete(name));
        }
        hs.push(gb.automaton().count_normal(bound));
    }
    let as_i = |h: &Vec<u128>| h.iter().map(|&x| x as i128).collect::<Vec<_>>();
    let (ia, ib) = (inverse(&as_i(&hs[0])), inverse(&as_i(&hs[1])));
    let mut s: Vec<i128> = ia.iter().zip(&ib).map(|(a, b)| a + b).collect();
    s[0] -= 1;
    let predicted = inverse(&s);
    let first_mismatch = (0..=bound).find(|&k| predicted[k] != hs[2][k] as i128);
    Ok(HilbertCheck {
        bound,
        left: hs[0].clone(),
        right: hs[1].clone(),
        combined: hs[2].clone(),
        predicted,
        first_mismatch,
    })
}

/// Predicted `E(A ⊔ B)`: `(0,0) ↦ 1` and `β_{i,j}(A) + β_{i,j}(B)` for `i ≥ 1`.
pub fn expected_freeprod_ext(a: &BettiTable, b: &BettiTable) -> BettiTable {
    let imax = a.imax().min(b.imax());
    let jmax = a.jmax().min(b.jmax());
    let mut t = BettiTable::new(imax, jmax);
    t.set(0, 0, 1);
    for i in 1..=imax {
        for j in 0..=jmax {
            t.set(i, j, a.get(i, j) + b.get(i, j));
        }
    }
    for i in 0..=imax {
        t.set_certified(i, a.certified(i) && b.certified(i));
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub holds: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub clauses: Vec<Clause>,
    /// `B = T(V)/⟨g_d⟩` is `d`-Koszul.
    pub route_i: Option<Verdict>,
    /// `Ext¹_{gr A}(gr R, 𝕜)` is concentrated in degree `d`.
    pub route_ii: Option<Verdict>,
    pub verdict: Verdict,
    /// `check_k2` on `R` itself.
    pub cross_check: Option<Verdict>,
}

/// Certifies `R = T(V)/⟨g₂ ∪ g_d⟩` as 𝒦₂ when `g₂`, `g_d` and their union are
/// Gröbner bases, the union has no redundant element, and either `B` is
/// `d`-Koszul or the monomial Ext¹ condition holds for `gr R` over `gr A`.
#[allow(clippy::too_many_arguments)]
pub fn certify_k2_pipeline<F: Field>(
    field: &F,
    alphabet: &Alphabet,
    g2: &[Poly<F::Elem>],
    gd: &[Poly<F::Elem>],
    d: usize,
    imax: usize,
    jmax: usize,
) -> Result<PipelineReport, ConstructionError> {
    let name = "k2-certificate";
    let bad2 = g2.iter().any(|p| p.homogeneous_degree() != Some(2));
    let badd = gd.iter().any(|p| p.homogeneous_degree() != Some(d));
    if bad2 || badd || d < 3 {
        let reason = if d < 3 {
            "d must be at least 3".to_string()
        } else if bad2 {
            "g2 must be quadratic".to_string()
        } else {
            format!("g_d must be homogeneous of degree {d}")
        };
        return Ok(PipelineReport {
            clauses: Vec::new(),
            route_i: None,
            route_ii: None,
            verdict: Verdict::refused(name, reason, imax, jmax),
            cross_check: None,
        });
    }
    let union: Vec<Poly<F::Elem>> = g2.iter().chain(gd).cloned().collect();
    let mut clauses = Vec::new();
    for (label, set) in [("g2 is a Groebner basis", g2), ("g_d is a Groebner basis", gd), ("g2 ∪ g_d is a Groebner basis", &union[..])] {
        let (ok, w) = is_groebner(field, alphabet, set, jmax);
        clauses.push(Clause {
            name: label.to_string(),
            holds: ok,
            detail: w.map(|w| format!("ambiguity {} does not resolve", alphabet.format_word(&w))),
        });
    }
    let redundant = redundancy_check(field, alphabet, &union, jmax)?;
    clauses.push(Clause {
        name: "g2 ∪ g_d has no redundant elements".to_string(),
        holds: redundant.is_empty(),
        detail: redundant.first().map(|&k| format!("{} lies in the ideal of the others", union[k].format(field, alphabet))),
    });
    let r = Presentation::new(field.clone(), alphabet.clone(), union.clone())?;
    let (_, report) = crate::yoneda::analyze(&r, imax, jmax)?;
    let cross_check = Some(check_k2(&report));
    if let Some(c) = clauses.iter().find(|c| !c.holds) {
        let outcome = Outcome::Refused {
            reason: "hypotheses not met".into(),
            witness: Some(Witness::Clause { clause: c.name.clone(), detail: c.detail.clone() }),
        };
        return Ok(PipelineReport {
            clauses,
            route_i: None,
            route_ii: None,
            verdict: Verdict::new(name, outcome, imax, jmax),
            cross_check,
        });
    }
    let b = Presentation::new(field.clone(), alphabet.clone(), gd.to_vec())?;
    let tb = algebra_betti(&b, imax, jmax)?;
    let route_i = check_d_koszul(&tb, &b.relation_degrees(), d);
    let lead = |s: &[Poly<F::Elem>]| -> Result<Vec<Word>, ConstructionError> {
        s.iter().map(|p| p.leading_word().cloned().ok_or(GroebnerError::ZeroRelation(0).into())).collect()
    };
    let mono = monomial_k2_criteria(field, alphabet, &lead(g2)?, &lead(gd)?, d, jmax)?;
    let route_ii = mono.verdict;
    let verdict = if route_i.holds() || route_ii.holds() {
        let via = if route_i.holds() { "B is d-Koszul" } else { "gr R has Ext^1 over gr A concentrated in degree d" };
        Verdict::new(name, Outcome::Holds, imax, jmax).with_note(format!("R is K2 up to the bounds ({via})"))
    } else {
        Verdict::new(name, Outcome::Undecided { bidegrees: Vec::new() }, imax, jmax).with_note("neither route applies")
    };
    Ok(PipelineReport { clauses, route_i: Some(route_i), route_ii: Some(route_ii), verdict, cross_check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::format::parse_presentation;

    fn pres(text: &str) -> Presentation<PrimeField> {
        parse_presentation(text).unwrap().into_prime().unwrap().presentation
    }

    #[test]
    fn renaming_and_units() {
        let a = pres("generators x y\nrelations\nx*y\n");
        let b = pres("generators y z\nrelations\ny^2 - z*y\n");
        let c = free_product(&a, &b);
        assert_eq!(c.combined.alphabet.names(), ["x", "y", "y'", "z"]);
        assert_eq!(c.combined.relations.len(), 2);
        let shown: Vec<String> = c.combined.relations.iter().map(|r| r.format(&c.combined.field, &c.combined.alphabet)).collect();
        assert_eq!(shown, ["x*y", "-z*y' + y'^2"]);
        let unit = Presentation::free(a.field, Alphabet::new(Vec::<String>::new()).unwrap());
        assert_eq!(free_product(&a, &unit).combined, a);
        let f1 = pres("generators x\nrelations\n");
        let ff = free_product(&f1, &f1).combined;
        assert_eq!(ff.alphabet.names(), ["x", "x'"]);
        assert!(ff.relations.is_empty());
    }

    #[test]
    fn hilbert_identity() {
        let x = pres("generators x\nrelations\n");
        let h = freeprod_hilbert_check(&x, &x, 8).unwrap();
        assert!(h.holds());
        assert_eq!(h.combined, (0..=8).map(|k| 1u128 << k).collect::<Vec<_>>());
        let z4 = pres("generators z\nrelations\nz^4\n");
        assert!(freeprod_hilbert_check(&z4, &z4, 12).unwrap().holds());
    }

    #[test]
    fn squares_prediction() {
        let z2 = pres("generators z\nrelations\nz^2\n");
        let ta = algebra_betti(&z2, 5, 10).unwrap();
        let predicted = expected_freeprod_ext(&ta, &ta);
        let direct = algebra_betti(&pres("generators x y\nrelations\nx^2\ny^2\n"), 5, 10).unwrap();
        assert_eq!(predicted, direct);
        assert!((1..=5).all(|i| direct.get(i, i) == 2));
    }

    #[test]
    fn degenerate_split_uses_route_i() {
        let z4 = pres("generators z\nrelations\nz^4\n");
        let r = certify_k2_pipeline(&z4.field, &z4.alphabet, &[], &z4.relations, 4, 6, 12).unwrap();
        assert!(r.verdict.holds(), "{r:?}");
        assert!(r.route_i.as_ref().unwrap().holds());
        assert!(r.cross_check.as_ref().unwrap().holds());
    }

    #[test]
    fn split_pipeline_refuses() {
        let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/mixed_r.pres")).unwrap();
        let file = parse_presentation(&text).unwrap().into_prime().unwrap();
        let p = &file.presentation;
        let (g2, gd) = (file.g2.clone().unwrap(), file.gd.clone().unwrap());
        let r = certify_k2_pipeline(&p.field, &p.alphabet, &g2, &gd, 4, 4, 8).unwrap();
        assert_eq!(r.verdict.exit_code(), 2);
        let failing: Vec<&str> = r.clauses.iter().filter(|c| !c.holds).map(|c| c.name.as_str()).collect();
        assert_eq!(failing, ["g_d is a Groebner basis"]);
        assert!(r.clauses[1].detail.as_deref().unwrap().contains("x^2*y^2*z^2"), "{:?}", r.clauses[1]);
        assert!(r.cross_check.unwrap().fails());
    }
}
