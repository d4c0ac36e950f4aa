//! Property verdicts read off Betti tables.

use serde::Serialize;

use crate::resolution::BettiTable;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Bidegree { i: usize, j: usize },
    Word { word: String },
    Clause { clause: String, detail: Option<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails { witness: Witness },
    Undecided { bidegrees: Vec<(usize, usize)> },
    Refused { reason: String, witness: Option<Witness> },
}

/// A property checked up to `(imax, jmax)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub property: String,
    #[serde(flatten)]
    pub outcome: Outcome,
    pub imax: usize,
    pub jmax: usize,
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn new(property: &str, outcome: Outcome, imax: usize, jmax: usize) -> Self {
        Verdict { property: property.to_string(), outcome, imax, jmax, notes: Vec::new() }
    }

    pub fn refused(property: &str, reason: impl Into<String>, imax: usize, jmax: usize) -> Self {
        Self::new(property, Outcome::Refused { reason: reason.into(), witness: None }, imax, jmax)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn fails(&self) -> bool {
        matches!(self.outcome, Outcome::Fails { .. })
    }

    pub fn witness_bidegree(&self) -> Option<(usize, usize)> {
        match &self.outcome {
            Outcome::Fails { witness: Witness::Bidegree { i, j } } => Some((*i, *j)),
            _ => None,
        }
    }

    /// 0 holds, 1 fails, 2 refused, 3 undecided.
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::Holds => 0,
            Outcome::Fails { .. } => 1,
            Outcome::Refused { .. } => 2,
            Outcome::Undecided { .. } => 3,
        }
    }
}

/// `δ(2m) = dm`, `δ(2m+1) = dm + 1`.
pub fn delta(i: usize, d: usize) -> usize {
    if i.is_multiple_of(2) {
        d * (i / 2)
    } else {
        d * (i / 2) + 1
    }
}

/// Largest certified column.
fn certified_bound(t: &BettiTable) -> usize {
    t.certified_through().unwrap_or(0)
}

/// First bidegree of the certified range, in `(i, j)` order, violating `ok`.
fn support_check(property: &str, t: &BettiTable, ok: impl Fn(usize, usize) -> bool) -> Verdict {
    let imax = certified_bound(t);
    let bad = t.entries().map(|(k, _)| k).find(|&(i, j)| i <= imax && !ok(i, j));
    let outcome = match bad {
        Some((i, j)) => Outcome::Fails { witness: Witness::Bidegree { i, j } },
        None => Outcome::Holds,
    };
    let mut v = Verdict::new(property, outcome, imax, t.jmax());
    if imax < t.imax() {
        v.notes.push(format!("columns above {imax} are not certified"));
    }
    v
}

/// Koszul: `β_{i,j} = 0` for `j ≠ i`.
pub fn check_koszul(t: &BettiTable) -> Verdict {
    support_check("koszul", t, |i, j| i == j)
}

/// `d`-Koszul: support on `j = δ(i)`; needs all relations in degree `d`.
pub fn check_d_koszul(t: &BettiTable, relation_degrees: &[usize], d: usize) -> Verdict {
    let name = format!("{d}-koszul");
    if d < 2 {
        return Verdict::refused(&name, "d must be at least 2", t.imax(), t.jmax());
    }
    if let Some(e) = relation_degrees.iter().find(|&&e| e != d) {
        return Verdict::refused(&name, format!("relation of degree {e} is not of degree {d}"), t.imax(), t.jmax());
    }
    support_check(&name, t, |i, j| j == delta(i, d))
}

/// 2-`d`-determined: support inside `j ≤ δ(i)`; needs relations in degrees
/// 2 and `d` only.
pub fn check_2d_determined(t: &BettiTable, relation_degrees: &[usize], d: usize) -> Verdict {
    let name = format!("2-{d}-determined");
    if d < 2 {
        return Verdict::refused(&name, "d must be at least 2", t.imax(), t.jmax());
    }
    if let Some(e) = relation_degrees.iter().find(|&&e| e != d && e != 2) {
        return Verdict::refused(&name, format!("relation of degree {e} is neither 2 nor {d}"), t.imax(), t.jmax());
    }
    support_check(&name, t, |i, j| j <= delta(i, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(entries: &[((usize, usize), u64)], imax: usize, jmax: usize) -> BettiTable {
        let mut t = BettiTable::new(imax, jmax);
        for &((i, j), v) in entries {
            t.set(i, j, v);
        }
        for i in 0..=imax {
            t.set_certified(i, true);
        }
        t
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(2, 3), 3);
        assert_eq!(delta(0, 7), 0);
        assert_eq!(delta(5, 4), 9);
        assert_eq!(delta(1, 4), 1);
        assert!((0..20).all(|i| delta(i, 2) == i));
    }

    #[test]
    fn mixed_table_verdicts() {
        let r = table(
            &[((0, 0), 1), ((1, 1), 4), ((2, 2), 3), ((2, 4), 2), ((3, 3), 2), ((3, 5), 1), ((3, 6), 1), ((3, 7), 1), ((4, 6), 1)],
            6,
            12,
        );
        let v = check_2d_determined(&r, &[2, 2, 2, 4, 4], 4);
        assert_eq!(v.witness_bidegree(), Some((3, 6)));
        assert_eq!(v.exit_code(), 1);
        assert_eq!(check_koszul(&r).witness_bidegree(), Some((2, 4)));
        let refused = check_d_koszul(&r, &[2, 4], 4);
        assert_eq!(refused.exit_code(), 2);
    }

    #[test]
    fn koszul_tables_are_two_d_determined() {
        let t = table(&[((0, 0), 1), ((1, 1), 2), ((2, 2), 1)], 4, 8);
        assert!(check_koszul(&t).holds());
        for d in 2..6 {
            assert!(check_2d_determined(&t, &[2], d).holds());
        }
    }

    #[test]
    fn uncertified_columns_shrink_bounds() {
        let mut t = table(&[((0, 0), 1), ((1, 1), 1), ((3, 5), 1)], 4, 8);
        t.set_certified(3, false);
        let v = check_koszul(&t);
        assert!(v.holds());
        assert_eq!(v.imax, 2);
    }
}
