//! Enumeration of positive roots with discovery witnesses, the bijection
//! between roots and reflections, and inversion counting.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::tits::{CoxeterSystem, RootVector, Sign};
use crate::word::{Element, Word};

/// Rounding scale for root identity: coordinates agreeing to 1e-6 are the
/// same root.
const KEY_SCALE: f64 = 1e6;

pub(crate) fn root_key(coords: &[f64]) -> Vec<i64> {
    coords.iter().map(|&x| (x * KEY_SCALE).round() as i64).collect()
}

/// A positive root with the word that produced it: the root equals the
/// witness applied to the simple root of `base`, and the witness has length
/// equal to `depth`.
#[derive(Clone, Debug)]
pub struct Root {
    pub coords: Vec<f64>,
    pub witness: Word,
    pub base: usize,
    pub depth: usize,
}

/// The reflection attached to a positive root: the conjugate of the base
/// generator by the witness, as a normal-form element.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub root: RootVector,
    pub witness: Element,
    pub element: Element,
}

/// All positive roots reachable from the simple roots by words shorter than
/// the requested depth, in discovery order.
#[derive(Clone, Debug)]
pub struct RootTable {
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    /// True when enumeration closed (no new roots at the last level), which
    /// happens exactly for finite groups.
    pub closed: bool,
    pub depth: usize,
}

impl RootTable {
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn position(&self, coords: &[f64]) -> Option<usize> {
        self.index.get(&root_key(coords)).copied()
    }
}

impl CoxeterSystem {
    /// Enumerates positive roots breadth-first: level k holds the roots
    /// first reached by words of length k. Stops after `depth` levels
    /// (level indices 0..depth-1) or when the system closes.
    pub fn enumerate_roots(&self, depth: usize, cap: usize) -> Result<RootTable> {
        if depth == 0 {
            return Err(Error::Validation("root enumeration depth must be at least 1".into()));
        }
        let n = self.rank();
        let mut roots: Vec<Root> = Vec::new();
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        for i in 0..n {
            let coords = self.simple_root(i)?.coords;
            index.insert(root_key(&coords), roots.len());
            roots.push(Root { coords, witness: Word::default(), base: i, depth: 0 });
        }
        if roots.len() > cap {
            return Err(Error::CapExceeded(format!("root enumeration passed {cap} roots")));
        }
        let mut closed = false;
        let mut level_start = 0;
        for lvl in 1..depth {
            let level_end = roots.len();
            for parent in level_start..level_end {
                for s in 0..n {
                    let coords = self.reflect(s, &roots[parent].coords)?;
                    if self.certify_sign(&coords)? == Sign::Negative {
                        // Only the simple root of s itself reflects negative.
                        continue;
                    }
                    let key = root_key(&coords);
                    if let Some(&at) = index.get(&key) {
                        let known = &roots[at].coords;
                        let drift = coords
                            .iter()
                            .zip(known)
                            .map(|(a, b)| (a - b).abs())
                            .fold(0.0, f64::max);
                        if drift > 5e-6 {
                            return Err(Error::Inconsistency(format!(
                                "distinct roots collide on the rounding key (drift {drift:e})"
                            )));
                        }
                        continue;
                    }
                    let mut letters = vec![s as u8];
                    letters.extend_from_slice(roots[parent].witness.letters());
                    index.insert(key, roots.len());
                    roots.push(Root {
                        coords,
                        witness: Word::from_raw(letters),
                        base: roots[parent].base,
                        depth: lvl,
                    });
                    if roots.len() > cap {
                        return Err(Error::CapExceeded(format!(
                            "root enumeration passed {cap} roots"
                        )));
                    }
                }
            }
            if roots.len() == level_end {
                closed = true;
                break;
            }
            level_start = level_end;
        }
        // A final closure probe: the table is closed when no root has an
        // unseen image, even if the level budget ran out first.
        if !closed {
            closed = roots.iter().all(|r| {
                (0..n).all(|s| {
                    let coords = self
                        .reflect(s, &r.coords)
                        .expect("index in range");
                    coords[s] < 0.0 && self.certify_sign(&coords) == Ok(Sign::Negative)
                        || index.contains_key(&root_key(&coords))
                })
            });
        }
        Ok(RootTable { roots, index, closed, depth })
    }

    /// The reflection through an enumerated root.
    pub fn reflection_of_root(&self, table: &RootTable, coords: &[f64]) -> Result<Reflection> {
        let at = table.position(coords).ok_or_else(|| {
            Error::UnknownRoot(format!("no enumerated root has coordinates {coords:?}"))
        })?;
        self.reflection_at(table, at)
    }

    /// The reflection through the root at a table position.
    pub fn reflection_at(&self, table: &RootTable, at: usize) -> Result<Reflection> {
        let root = &table.roots()[at];
        let w = self.reduce(&root.witness)?;
        let s = self.generator(root.base)?;
        let element = self.multiply(&self.multiply(&w, &s)?, &self.inverse(&w)?)?;
        Ok(Reflection {
            root: RootVector { coords: root.coords.clone(), sign: Sign::Positive },
            witness: w,
            element,
        })
    }

    /// The number of positive roots sent negative by w. Equals the length
    /// of w; enumeration must reach depth l(w) + 1 within the cap.
    pub fn count_inversions(&self, w: &Element, cap: usize) -> Result<usize> {
        let table = self.enumerate_roots(w.len() + 1, cap)?;
        let mut count = 0;
        for root in table.roots() {
            if self.certify_sign(&self.act(w.word(), &root.coords)?)? == Sign::Negative {
                count += 1;
            }
        }
        Ok(count)
    }
}
