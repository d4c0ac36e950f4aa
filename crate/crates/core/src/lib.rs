//! Exact computations with finitely presented connected graded algebras:
//! noncommutative Gröbner bases, minimal resolutions, bigraded Ext tables,
//! Yoneda products and the Koszul-type properties built on them.

pub mod automaton;
pub mod constructions;
pub mod field;
pub mod format;
pub mod groebner;
pub mod linalg;
pub mod word;
pub mod yoneda;
pub mod quotient;
pub mod resolution;
