//! Ball-limited surveys: conjugation orbits, central elements, centralizer
//! growth against the cyclic subgroup, and the growth series.

use std::collections::HashSet;

use crate::error::Result;
use crate::word::Element;
use crate::tits::CoxeterSystem;

/// Distinct conjugates of a fixed element by conjugators of bounded length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitGrowthTable {
    /// (conjugator radius, distinct conjugates) rows, radius ascending.
    pub rows: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CentralizerRow {
    pub radius: usize,
    pub centralizer: usize,
    pub cyclic: usize,
}

impl CentralizerRow {
    pub fn ratio(&self) -> f64 {
        self.centralizer as f64 / self.cyclic as f64
    }
}

/// Sizes of the centralizer of w and of the cyclic subgroup of w inside
/// balls of growing radius. A heuristic trend report, not a verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralizerBallReport {
    pub rows: Vec<CentralizerRow>,
}

impl CoxeterSystem {
    /// Counts distinct conjugates g w g^-1 over conjugators g of length at
    /// most each radius up to `radius`.
    pub fn orbit_growth(&self, w: &Element, radius: usize, cap: usize) -> Result<OrbitGrowthTable> {
        let ball = self.ball(radius, cap)?;
        let mut seen: HashSet<Element> = HashSet::new();
        let mut rows = Vec::with_capacity(ball.levels.len());
        for (level, gs) in ball.levels.iter().enumerate() {
            for g in gs {
                let conj = self.multiply(&self.multiply(g, w)?, &self.inverse(g)?)?;
                seen.insert(conj);
            }
            rows.push((level, seen.len()));
        }
        Ok(OrbitGrowthTable { rows })
    }

    /// All nontrivial elements of length at most `radius` commuting with
    /// every generator.
    pub fn center_search(&self, radius: usize, cap: usize) -> Result<Vec<Element>> {
        let ball = self.ball(radius, cap)?;
        let mut out = Vec::new();
        'next: for w in ball.iter() {
            if w.is_identity() {
                continue;
            }
            for s in 0..self.rank() {
                let g = self.generator(s)?;
                if self.multiply(w, &g)? != self.multiply(&g, w)? {
                    continue 'next;
                }
            }
            out.push(w.clone());
        }
        Ok(out)
    }

    /// Per-radius sizes of the centralizer of w and of the powers of w
    /// inside the ball.
    pub fn centralizer_ball(
        &self,
        w: &Element,
        radius: usize,
        cap: usize,
    ) -> Result<CentralizerBallReport> {
        let ball = self.ball(radius, cap)?;
        // Powers of w reaching into the ball. Power lengths of an infinite
        // order element eventually grow, so a generous overshoot margin is
        // enough to catch every power that dips back under the radius.
        let mut powers: HashSet<Element> = HashSet::new();
        powers.insert(self.identity());
        if !w.is_identity() {
            let mut p = w.clone();
            let mut exponent = 1usize;
            loop {
                if p.len() <= radius {
                    powers.insert(p.clone());
                    powers.insert(self.inverse(&p)?);
                }
                if p.is_identity() {
                    break; // torsion: the powers cycled
                }
                if p.len() > radius && exponent > 4 * (radius + 1) {
                    break;
                }
                p = self.multiply(&p, w)?;
                exponent += 1;
            }
        }
        let mut rows = Vec::with_capacity(ball.levels.len());
        let mut centralizer = 0usize;
        let mut cyclic = 0usize;
        for (level, ws) in ball.levels.iter().enumerate() {
            for x in ws {
                let commutes = self.multiply(x, w)? == self.multiply(w, x)?;
                if commutes {
                    centralizer += 1;
                }
                if powers.contains(x) {
                    cyclic += 1;
                }
            }
            rows.push(CentralizerRow { radius: level, centralizer, cyclic });
        }
        Ok(CentralizerBallReport { rows })
    }

    /// Sphere sizes up to the radius; stops early when the group is
    /// exhausted.
    pub fn growth_series(&self, radius: usize, cap: usize) -> Result<Vec<usize>> {
        Ok(self.ball(radius, cap)?.sphere_sizes())
    }
}
