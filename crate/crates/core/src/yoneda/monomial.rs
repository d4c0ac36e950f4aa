//! Almost-linear resolutions, the monomial 𝒦₂ criterion and the comparison
//! with the associated graded algebra.

use serde::Serialize;

use crate::field::Field;
use crate::groebner::{associated_graded, Presentation};
use crate::quotient::{build_quotient, QuotientError};
use crate::resolution::{algebra_betti, cyclic_module_betti, BettiError, BettiTable};
use crate::word::{Alphabet, Poly, Word};
use crate::yoneda::verdict::{check_koszul, Outcome, Verdict, Witness};

/// First pair `(j, i)` with `I₂[i]` a connected subword of `J[j]`.
pub fn subword_violation(i2: &[Word], j: &[Word]) -> Option<(usize, usize)> {
    j.iter()
        .enumerate()
        .find_map(|(a, w)| i2.iter().position(|t| w.contains(t)).map(|b| (a, b)))
}

/// First degree `≤ bound` where the left ideal of `A` generated by `gens`
/// differs from the two-sided ideal, if any.
pub fn left_vs_two_sided<F: Field>(
    a: &Presentation<F>,
    gens: &[Poly<F::Elem>],
    bound: usize,
) -> Result<Option<usize>, QuotientError> {
    let q = build_quotient(a, bound)?;
    let left = q.left_ideal(gens, bound)?;
    let two = q.two_sided_ideal(gens, bound)?;
    Ok(left.first_difference(&two))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonomialReport {
    pub subword_condition: bool,
    /// First degree where the left and two-sided ideals of `π_A(J)` differ.
    pub ext1_first_difference: Option<usize>,
    pub verdict: Verdict,
}

/// The monomial criterion for `R = 𝕜⟨V⟩/⟨I₂ ∪ J⟩` over `A = 𝕜⟨V⟩/⟨I₂⟩`:
/// under the subword condition, `_A R` is almost linear exactly when the left
/// ideal generated by `π_A(J)` is two-sided, and then `R` is 𝒦₂.
pub fn monomial_k2_criteria<F: Field>(
    field: &F,
    alphabet: &Alphabet,
    i2: &[Word],
    j: &[Word],
    d: usize,
    bound: usize,
) -> Result<MonomialReport, QuotientError> {
    let name = "monomial-k2";
    if let Some(w) = i2.iter().find(|w| w.len() != 2) {
        let v = Verdict::refused(name, format!("{} is not quadratic", alphabet.format_word(w)), 1, bound);
        return Ok(MonomialReport { subword_condition: false, ext1_first_difference: None, verdict: v });
    }
    if let Some(w) = j.iter().find(|w| w.len() != d) {
        let v = Verdict::refused(name, format!("{} is not of degree {d}", alphabet.format_word(w)), 1, bound);
        return Ok(MonomialReport { subword_condition: false, ext1_first_difference: None, verdict: v });
    }
    if let Some((a, b)) = subword_violation(i2, j) {
        let detail = format!("{} contains {}", alphabet.format_word(&j[a]), alphabet.format_word(&i2[b]));
        let outcome = Outcome::Refused {
            reason: "subword condition fails".into(),
            witness: Some(Witness::Clause { clause: "subword condition".into(), detail: Some(detail) }),
        };
        return Ok(MonomialReport {
            subword_condition: false,
            ext1_first_difference: None,
            verdict: Verdict::new(name, outcome, 1, bound),
        });
    }
    let rels: Vec<Poly<F::Elem>> = i2.iter().map(|w| Poly::word(field, w.clone())).collect();
    let a = Presentation::new(field.clone(), alphabet.clone(), rels).expect("monomial relations are homogeneous");
    let gens: Vec<Poly<F::Elem>> = j.iter().map(|w| Poly::word(field, w.clone())).collect();
    let diff = left_vs_two_sided(&a, &gens, bound.max(d))?;
    let verdict = match diff {
        Some(deg) => Verdict::new(name, Outcome::Fails { witness: Witness::Bidegree { i: 1, j: deg } }, 1, bound),
        None => Verdict::new(name, Outcome::Holds, 1, bound)
            .with_note(format!("Ext^1_A(R,k) is concentrated in degree {d}: R has an almost linear resolution over A"))
            .with_note("A is a quadratic monomial algebra, hence Koszul, so R is K2"),
    };
    Ok(MonomialReport { subword_condition: true, ext1_first_difference: diff, verdict })
}

/// Almost linear: `Ext_A^{i,j}(R, 𝕜) = 0` unless `j = d − 1 + i`, for
/// `0 < i ≤ imax`. Returns the verdict with the module table.
pub fn check_almost_linear<F: Field>(
    a: &Presentation<F>,
    gens: &[Poly<F::Elem>],
    d: usize,
    imax: usize,
    jmax: usize,
) -> Result<(Verdict, Option<BettiTable>), BettiError> {
    let name = "almost-linear";
    if let Some(e) = a.relation_degrees().into_iter().find(|&e| e != 2) {
        return Ok((Verdict::refused(name, format!("A has a relation of degree {e}"), imax, jmax), None));
    }
    if let Some(g) = gens.iter().find(|g| g.homogeneous_degree() != Some(d)) {
        let shown = g.format(&a.field, &a.alphabet);
        return Ok((Verdict::refused(name, format!("{shown} is not homogeneous of degree {d}"), imax, jmax), None));
    }
    let t = cyclic_module_betti(a, gens, imax, jmax)?;
    let top = t.certified_through().unwrap_or(0);
    let bad = t.entries().map(|(k, _)| k).find(|&(i, j)| i > 0 && i <= top && j != d - 1 + i);
    let mut v = match bad {
        Some((i, j)) => Verdict::new(name, Outcome::Fails { witness: Witness::Bidegree { i, j } }, top, jmax),
        None => Verdict::new(name, Outcome::Holds, top, jmax),
    };
    if v.holds() && d >= 3 {
        let ta = algebra_betti(a, imax, jmax)?;
        if check_koszul(&ta).holds() {
            v = v.with_note("A is Koszul up to the bounds, so R is K2");
        }
    }
    Ok((v, Some(t)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrComparison {
    pub table: BettiTable,
    pub gr_table: BettiTable,
    /// Bidegrees with `β(A) > β(gr A)`; empty when the inequality holds.
    pub violations: Vec<(usize, usize)>,
    /// Whether the two tables coincide.
    pub equal: bool,
}

/// Compares `β(A)` with `β(gr A)` entrywise.
pub fn gr_comparison<F: Field>(p: &Presentation<F>, imax: usize, jmax: usize) -> Result<GrComparison, BettiError> {
    let (gr, _) = associated_graded(p, jmax.max(p.max_degree()))?;
    let table = algebra_betti(p, imax, jmax)?;
    let gr_table = algebra_betti(&gr, imax, jmax)?;
    let violations = (0..=imax)
        .flat_map(|i| (0..=jmax).map(move |j| (i, j)))
        .filter(|&(i, j)| table.get(i, j) > gr_table.get(i, j))
        .collect();
    let equal = table.first_difference(&gr_table).is_none();
    Ok(GrComparison { table, gr_table, violations, equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn words(a: &Alphabet, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| a.parse_word(w).unwrap()).collect()
    }

    #[test]
    fn subword_condition() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let f = PrimeField::new(32003).unwrap();
        let r = monomial_k2_criteria(&f, &a, &words(&a, &["x*y"]), &words(&a, &["x*y*x"]), 3, 8).unwrap();
        assert!(!r.subword_condition);
        assert_eq!(r.verdict.exit_code(), 2);
        let r = monomial_k2_criteria(&f, &a, &words(&a, &["x*y"]), &[], 3, 8).unwrap();
        assert!(r.verdict.holds());
    }

    #[test]
    fn y_cubed_over_xy() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let f = PrimeField::new(32003).unwrap();
        let i2 = words(&a, &["x*y"]);
        let j = words(&a, &["y^3"]);
        let r = monomial_k2_criteria(&f, &a, &i2, &j, 3, 8).unwrap();
        assert!(r.subword_condition);
        // x·y³ = 0 already, y³·x ≠ 0 is not a left multiple: the ideals differ in degree 4.
        assert_eq!(r.ext1_first_difference, Some(4));
        let pa = Presentation::new(f, a.clone(), vec![Poly::word(&f, i2[0].clone())]).unwrap();
        let (v, t) = check_almost_linear(&pa, &[Poly::word(&f, j[0].clone())], 3, 4, 10).unwrap();
        assert!(v.fails());
        assert_eq!(v.witness_bidegree().map(|b| b.0), Some(1));
        assert!(t.unwrap().get(1, 4) > 0);

        // x³ over xy: left ideal A·x³ is two-sided since x³·y = 0 and x³·x = x·x³.
        let j = words(&a, &["x^3"]);
        let r = monomial_k2_criteria(&f, &a, &i2, &j, 3, 8).unwrap();
        assert!(r.verdict.holds());
        let (v, _) = check_almost_linear(&pa, &[Poly::word(&f, j[0].clone())], 3, 4, 10).unwrap();
        assert!(v.holds(), "{v:?}");
    }

    #[test]
    fn empty_j_is_almost_linear() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let f = PrimeField::new(32003).unwrap();
        let pa = Presentation::new(f, a.clone(), vec![Poly::word(&f, a.parse_word("x*y").unwrap())]).unwrap();
        let (v, t) = check_almost_linear(&pa, &[], 3, 4, 8).unwrap();
        assert!(v.holds());
        assert_eq!(t.unwrap().entries().count(), 1);
        let pc = Presentation::new(f, a.clone(), vec![Poly::word(&f, a.parse_word("x^3").unwrap())]).unwrap();
        let (v, _) = check_almost_linear(&pc, &[], 3, 4, 8).unwrap();
        assert_eq!(v.exit_code(), 2);
    }

    #[test]
    fn gr_of_commutative_polynomials() {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let f = PrimeField::new(32003).unwrap();
        let xy = Poly::word(&f, a.parse_word("x*y").unwrap());
        let yx = Poly::word(&f, a.parse_word("y*x").unwrap());
        let p = Presentation::new(f, a.clone(), vec![xy.sub(&f, &yx)]).unwrap();
        let c = gr_comparison(&p, 4, 8).unwrap();
        assert!(c.violations.is_empty());
        assert!(c.equal);
        let m = Presentation::new(f, a, vec![xy]).unwrap();
        let c = gr_comparison(&m, 4, 8).unwrap();
        assert!(c.equal);
    }
}
