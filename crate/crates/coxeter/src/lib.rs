//! A computational toolkit for finitely generated Coxeter groups.
//!
//! The group is presented by a Coxeter matrix. Elements are handled as
//! canonical normal-form words, with every length and descent question
//! decided through the sign of a root image under the canonical linear
//! representation; operations on elements are exact once those signs are
//! certified against a tolerance. On top of the word layer sit positive
//! root enumeration, root-orbit dynamics under a fixed element (periodic,
//! even, odd, and critical roots), essentiality certification, the
//! spherical nerve, and ball-limited surveys of conjugation orbits,
//! centers, and centralizers.
//!
//! Everything is deterministic: enumerations are ordered by length and then
//! by letters, and repeated runs produce identical output.

pub mod census;
pub mod dynamics;
pub mod error;
pub mod matrix;
pub mod nerve;
pub mod roots;
pub mod tits;
pub mod word;

pub use census::{CentralizerBallReport, CentralizerRow, OrbitGrowthTable};
pub use dynamics::{
    Closure, CriticalVerdict, Essentiality, OddReflections, ParityVerdict, PcGenerators,
    RootParity, DEFAULT_WINDOW, ESSENTIAL_CLOSURE_CAP,
};
pub use error::{Error, Result};
pub use matrix::{
    classify, classify_irreducible, is_finite_type, Component, CoxeterGraph, CoxeterMatrix,
    Entry, GraphEdge, TypeClass, Verdict, MAX_RANK,
};
pub use nerve::{CosetCells, SphericalPoset};
pub use roots::{Reflection, Root, RootTable};
pub use tits::{CoxeterSystem, RootVector, Sign, DEFAULT_EPS};
pub use word::{Ball, DescentSet, Element, Word};

/// Default cap for ball and root enumerations.
pub const DEFAULT_CAP: usize = 5_000_000;
