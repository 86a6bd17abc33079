//! Behaviour of roots under iteration of a fixed element: periodic, even,
//! and odd roots, critical roots, essentiality certification, and the
//! reflections generating the parabolic closure.

use std::collections::HashSet;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::{classify_irreducible, Verdict};
use crate::roots::{root_key, Reflection, RootTable};
use crate::tits::{CoxeterSystem, RootVector, Sign};
use crate::word::Element;

pub const DEFAULT_WINDOW: usize = 20;

/// Number of consecutive stable signs required at both ends of the window
/// before an even/odd verdict is issued.
const STABLE_TAIL: usize = 5;

/// Caps for the reflection-closure searches backing certification.
pub const ESSENTIAL_CLOSURE_CAP: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParityVerdict {
    /// The orbit revisits the root after this many steps.
    Periodic { period: usize },
    /// The root separates an even number of consecutive power pairs.
    Even { separations: usize },
    /// The root separates an odd number of consecutive power pairs.
    Odd { separations: usize },
    /// The window was too short to certify any of the above.
    Inconclusive,
}

impl ParityVerdict {
    pub fn category(&self) -> &'static str {
        match self {
            ParityVerdict::Periodic { .. } => "periodic",
            ParityVerdict::Even { .. } => "even",
            ParityVerdict::Odd { .. } => "odd",
            ParityVerdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootParity {
    pub verdict: ParityVerdict,
    pub window: usize,
}

#[derive(Clone, Debug)]
pub struct CriticalVerdict {
    pub critical: bool,
    pub period: usize,
    pub orbit_sum: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct OddReflections {
    pub odd: Vec<Reflection>,
    /// Roots whose parity could not be certified in the window; reported,
    /// never dropped.
    pub inconclusive: Vec<RootVector>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Essentiality {
    /// The odd reflections provably generate the whole group.
    Certified,
    /// The element has finite order, hence lies in a proper parabolic.
    NotEssential,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct PcGenerators {
    pub reflections: Vec<Reflection>,
    /// False when some enumerated root stayed inconclusive, so the list may
    /// be missing generators.
    pub complete: bool,
}

/// Result of a bounded closure of a reflection set under multiplication.
#[derive(Clone, Debug)]
pub struct Closure {
    pub elements: Vec<Element>,
    /// True when the closure stabilized below the cap.
    pub closed: bool,
    pub simple_found: Vec<bool>,
}

impl CoxeterSystem {
    /// Classifies a root under iteration of w inside a symmetric window:
    /// periodic on an exact revisit of the rounded coordinates, otherwise
    /// even or odd by the number of sign changes along
    /// w^-M a, ..., a, ..., w^M a once the signs at both ends have held for
    /// the last few steps with growing magnitude.
    pub fn classify_root(
        &self,
        w: &Element,
        alpha: &RootVector,
        window: usize,
    ) -> Result<RootParity> {
        let report = |verdict| Ok(RootParity { verdict, window });
        if window == 0 {
            return report(ParityVerdict::Inconclusive);
        }
        let winv = self.inverse(w)?;
        let key0 = root_key(&alpha.coords);
        let mut forward = Vec::with_capacity(window + 1);
        forward.push(alpha.coords.clone());
        for k in 1..=window {
            let next = self.act(w.word(), forward.last().unwrap())?;
            if root_key(&next) == key0 {
                return report(ParityVerdict::Periodic { period: k });
            }
            forward.push(next);
        }
        let mut backward = Vec::with_capacity(window + 1);
        backward.push(alpha.coords.clone());
        for _ in 1..=window {
            let next = self.act(winv.word(), backward.last().unwrap())?;
            backward.push(next);
        }
        // signs[m + window] is the sign of w^m alpha.
        let mut signs = Vec::with_capacity(2 * window + 1);
        let mut mags = Vec::with_capacity(2 * window + 1);
        for v in backward.iter().rev().chain(forward.iter().skip(1)) {
            signs.push(self.certify_sign(v)?);
            mags.push(v.iter().fold(0.0f64, |a, &x| a.max(x.abs())));
        }
        let separations = signs.windows(2).filter(|p| p[0] != p[1]).count();
        if window < STABLE_TAIL {
            return report(ParityVerdict::Inconclusive);
        }
        let len = signs.len();
        let signs_stable = signs[..STABLE_TAIL + 1].windows(2).all(|p| p[0] == p[1])
            && signs[len - STABLE_TAIL - 1..].windows(2).all(|p| p[0] == p[1]);
        // Magnitudes must grow outward at both ends; a bounded orbit that
        // merely failed the revisit test must not pass as even or odd.
        let grows = mags[..STABLE_TAIL + 1].windows(2).all(|p| p[0] > p[1] * (1.0 + 1e-9))
            && mags[len - STABLE_TAIL - 1..].windows(2).all(|p| p[1] > p[0] * (1.0 + 1e-9));
        if !signs_stable || !grows {
            return report(ParityVerdict::Inconclusive);
        }
        if separations % 2 == 0 {
            report(ParityVerdict::Even { separations })
        } else {
            report(ParityVerdict::Odd { separations })
        }
    }

    /// Decides whether a periodic root is critical for w: the form must be
    /// positive definite on the span of the orbit and the orbit must sum
    /// to zero.
    pub fn is_critical(
        &self,
        w: &Element,
        alpha: &RootVector,
        window: usize,
    ) -> Result<CriticalVerdict> {
        let parity = self.classify_root(w, alpha, window)?;
        let period = match parity.verdict {
            ParityVerdict::Periodic { period } => period,
            other => {
                return Err(Error::NotPeriodic(format!(
                    "root classified as {} within window {window}",
                    other.category()
                )))
            }
        };
        let n = self.rank();
        let mut orbit = Vec::with_capacity(period);
        let mut v = alpha.coords.clone();
        for _ in 0..period {
            v = self.act(w.word(), &v)?;
            orbit.push(v.clone());
        }
        let mut orbit_sum = vec![0.0; n];
        for u in &orbit {
            for (acc, x) in orbit_sum.iter_mut().zip(u) {
                *acc += x;
            }
        }
        let sum_norm = orbit_sum.iter().map(|x| x * x).sum::<f64>().sqrt();
        let k = orbit.len();
        let eps = self.eps();
        // Rank of the orbit spans, under the ordinary inner product and
        // under the form; positive definite on the span means the form
        // Gram matrix is PSD with full span rank.
        let euclid = DMatrix::from_fn(k, k, |i, j| {
            orbit[i].iter().zip(&orbit[j]).map(|(a, b)| a * b).sum::<f64>()
        });
        let form = DMatrix::from_fn(k, k, |i, j| self.form(&orbit[i], &orbit[j]));
        let span_rank = euclid
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .filter(|&&l| l > eps)
            .count();
        let mut positive = 0;
        let mut negative = 0;
        for &l in form.symmetric_eigen().eigenvalues.iter() {
            if l > eps {
                positive += 1;
            } else if l < -eps {
                negative += 1;
            }
        }
        let critical = negative == 0 && positive == span_rank && sum_norm <= 1e-6;
        Ok(CriticalVerdict { critical, period, orbit_sum })
    }

    /// Splits the enumerated roots into those odd for w and those the
    /// window could not decide.
    pub fn odd_reflections(
        &self,
        w: &Element,
        depth: usize,
        window: usize,
        cap: usize,
    ) -> Result<OddReflections> {
        let table = self.enumerate_roots(depth, cap)?;
        self.odd_reflections_in(&table, w, window)
    }

    /// As `odd_reflections`, against an already enumerated table.
    pub fn odd_reflections_in(
        &self,
        table: &RootTable,
        w: &Element,
        window: usize,
    ) -> Result<OddReflections> {
        let mut odd = Vec::new();
        let mut inconclusive = Vec::new();
        for at in 0..table.len() {
            let root = &table.roots()[at];
            let rv = RootVector { coords: root.coords.clone(), sign: Sign::Positive };
            match self.classify_root(w, &rv, window)?.verdict {
                ParityVerdict::Odd { .. } => odd.push(self.reflection_at(table, at)?),
                ParityVerdict::Inconclusive => inconclusive.push(rv),
                _ => {}
            }
        }
        Ok(OddReflections { odd, inconclusive })
    }

    /// Breadth-first closure of a set of elements under right
    /// multiplication, capped. Records which generators were reached and
    /// optionally stops as soon as all of them were.
    pub fn reflection_closure(
        &self,
        gens: &[Element],
        cap: usize,
        stop_on_all_simple: bool,
    ) -> Result<Closure> {
        let n = self.rank();
        let mut simple_found = vec![false; n];
        let mut seen: HashSet<Element> = HashSet::new();
        let mut queue: Vec<Element> = Vec::new();
        let mut elements: Vec<Element> = Vec::new();
        let note = |e: &Element, simple_found: &mut Vec<bool>| {
            if e.len() == 1 {
                simple_found[e.letters()[0] as usize] = true;
            }
        };
        let id = self.identity();
        seen.insert(id.clone());
        queue.push(id.clone());
        elements.push(id);
        let all_found =
            |simple_found: &[bool]| stop_on_all_simple && simple_found.iter().all(|&b| b);
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            for g in gens {
                let next = self.multiply(&current, g)?;
                if seen.contains(&next) {
                    continue;
                }
                note(&next, &mut simple_found);
                seen.insert(next.clone());
                if elements.len() == cap {
                    return Ok(Closure { elements, closed: false, simple_found });
                }
                elements.push(next.clone());
                queue.push(next);
                if all_found(&simple_found) {
                    return Ok(Closure { elements, closed: false, simple_found });
                }
            }
        }
        Ok(Closure { elements, closed: true, simple_found })
    }

    /// Certifies that w is essential: no power of w lies in a proper
    /// parabolic. The positive certificate is that the reflections along
    /// roots odd for w generate the whole group; the negative one is
    /// finite order. Anything else stays inconclusive.
    pub fn is_essential(
        &self,
        w: &Element,
        depth: usize,
        window: usize,
        cap: usize,
    ) -> Result<Essentiality> {
        if !self.matrix().is_irreducible() {
            return Err(Error::NotIrreducibleInfinite("the diagram is disconnected".into()));
        }
        if classify_irreducible(self.matrix(), self.eps())?.verdict == Verdict::Finite {
            return Err(Error::NotIrreducibleInfinite("the group is finite".into()));
        }
        // Torsion probe: power cycling within the window.
        let mut p = w.clone();
        for _ in 0..window.max(1) {
            if p.is_identity() {
                return Ok(Essentiality::NotEssential);
            }
            p = self.multiply(&p, w)?;
        }
        let odd = self.odd_reflections(w, depth, window, cap)?;
        if odd.odd.is_empty() {
            return Ok(Essentiality::Inconclusive);
        }
        let gens: Vec<Element> = odd.odd.iter().map(|r| r.element.clone()).collect();
        let closure = self.reflection_closure(&gens, ESSENTIAL_CLOSURE_CAP, true)?;
        if closure.simple_found.iter().all(|&b| b) {
            Ok(Essentiality::Certified)
        } else {
            Ok(Essentiality::Inconclusive)
        }
    }

    /// The reflections generating the parabolic closure of w: those along
    /// critical roots together with those along odd roots.
    pub fn pc_generators(
        &self,
        w: &Element,
        depth: usize,
        window: usize,
        cap: usize,
    ) -> Result<PcGenerators> {
        let table = self.enumerate_roots(depth, cap)?;
        let mut reflections = Vec::new();
        let mut complete = true;
        for at in 0..table.len() {
            let root = &table.roots()[at];
            let rv = RootVector { coords: root.coords.clone(), sign: Sign::Positive };
            match self.classify_root(w, &rv, window)?.verdict {
                ParityVerdict::Odd { .. } => reflections.push(self.reflection_at(&table, at)?),
                ParityVerdict::Periodic { .. } => {
                    if self.is_critical(w, &rv, window)?.critical {
                        reflections.push(self.reflection_at(&table, at)?);
                    }
                }
                ParityVerdict::Even { .. } => {}
                ParityVerdict::Inconclusive => complete = false,
            }
        }
        Ok(PcGenerators { reflections, complete })
    }

    /// Compares the parity category of a root under w and under w^p.
    /// Returns None when either side is inconclusive.
    pub fn power_parity_check(
        &self,
        w: &Element,
        alpha: &RootVector,
        p: u32,
        window: usize,
    ) -> Result<Option<bool>> {
        let wp = self.power(w, p as i64)?;
        let a = self.classify_root(w, alpha, window)?.verdict;
        let b = self.classify_root(&wp, alpha, window)?.verdict;
        if a == ParityVerdict::Inconclusive || b == ParityVerdict::Inconclusive {
            return Ok(None);
        }
        Ok(Some(a.category() == b.category()))
    }
}
