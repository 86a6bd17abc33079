//! Words in the generators, canonical normal forms, descent sets, coset
//! decompositions, longest elements, and ball enumeration.
//!
//! Equality of group elements is always decided on normal-form words. The
//! numeric representation only ever answers one question, through a
//! certified sign: does this element send a given simple root negative?

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::tits::{CoxeterSystem, Sign};

/// A word in the generators. Letters are stored 0-based; the text form is
/// 1-based, e.g. "1 2 1".
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    /// Parses a 1-based, whitespace-separated word. The empty string is the
    /// empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let v: usize = tok
                .parse()
                .map_err(|_| Error::Syntax(format!("malformed word letter {tok:?}")))?;
            if v == 0 {
                return Err(Error::Syntax("word letters are 1-based".into()));
            }
            if v > crate::matrix::MAX_RANK {
                return Err(Error::Syntax(format!(
                    "word letter {v} exceeds the supported maximum rank"
                )));
            }
            letters.push((v - 1) as u8);
        }
        Ok(Word { letters })
    }

    /// Builds a word from 0-based generator indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut letters = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= crate::matrix::MAX_RANK {
                return Err(Error::IndexOutOfRange { index: i, rank: crate::matrix::MAX_RANK });
            }
            letters.push(i as u8);
        }
        Ok(Word { letters })
    }

    pub(crate) fn from_raw(letters: Vec<u8>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn indices(&self) -> Vec<usize> {
        self.letters.iter().map(|&c| c as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &c in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{}", c as usize + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// A group element held as its normal form: the lexicographically least
/// reduced word, compared length first. Only system operations construct
/// these, so two elements are equal exactly when their words are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    word: Word,
}

impl Element {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub(crate) fn letters(&self) -> &[u8] {
        self.word.letters()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Element {
    /// Length first, then letter order: the enumeration order of the group.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.word.letters.cmp(&other.word.letters))
    }
}

/// Right descent set of an element, with its complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentSet {
    pub in_set: Vec<usize>,
    pub out_set: Vec<usize>,
}

/// Elements of the ball of a given radius, grouped by length.
#[derive(Clone, Debug)]
pub struct Ball {
    pub levels: Vec<Vec<Element>>,
}

impl Ball {
    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.levels.iter().flatten()
    }
}

impl CoxeterSystem {
    pub fn identity(&self) -> Element {
        Element { word: Word::default() }
    }

    pub fn generator(&self, i: usize) -> Result<Element> {
        self.check_index(i)?;
        Ok(Element { word: Word::from_raw(vec![i as u8]) })
    }

    /// Whether right-multiplying the reduced word by s shortens it, i.e.
    /// whether the element sends alpha_s negative.
    fn word_descent(&self, word: &[u8], s: usize) -> Result<bool> {
        let mut v = vec![0.0; self.rank()];
        v[s] = 1.0;
        for &c in word.iter().rev() {
            self.reflect_in_place(c as usize, &mut v);
        }
        Ok(self.certify_sign(&v)? == Sign::Negative)
    }

    /// Multiplies a reduced word by one generator, keeping it reduced. On a
    /// descent the canceling letter is located by tracking the images of
    /// alpha_s through the suffixes: the unique suffix that carries alpha_s
    /// onto a simple root marks the letter to delete.
    fn right_multiply_reduced(&self, red: &mut Vec<u8>, s: u8) -> Result<()> {
        let n = self.rank();
        let d = red.len();
        // chain[k] = (letters k..d of red) applied to alpha_s; chain[d] = alpha_s.
        let mut chain = vec![0.0; (d + 1) * n];
        chain[d * n + s as usize] = 1.0;
        for k in (0..d).rev() {
            let (head, tail) = chain.split_at_mut((k + 1) * n);
            let src = &tail[..n];
            let dst = &mut head[k * n..];
            dst.copy_from_slice(src);
            self.reflect_in_place(red[k] as usize, dst);
        }
        if self.certify_sign(&chain[..n])? == Sign::Positive {
            red.push(s);
            return Ok(());
        }
        // Scan from the right for the first negative image; the image one
        // step later is the simple root of the letter to delete.
        for j in (0..d).rev() {
            if self.certify_sign(&chain[j * n..(j + 1) * n])? == Sign::Negative {
                debug_assert!({
                    let next = &chain[(j + 1) * n..(j + 2) * n];
                    (next[red[j] as usize] - 1.0).abs() < 1e-6
                });
                red.remove(j);
                return Ok(());
            }
        }
        Err(Error::Inconsistency(
            "descent detected but no letter to cancel".into(),
        ))
    }

    /// Rewrites a reduced word into the canonical normal form by repeatedly
    /// extracting the least generator that shortens the element from the
    /// left.
    fn normalize_reduced(&self, mut red: Vec<u8>) -> Result<Element> {
        let n = self.rank();
        let mut out = Vec::with_capacity(red.len());
        let mut v = vec![0.0; n];
        while !red.is_empty() {
            let mut chosen = None;
            for i in 0..n {
                // Sign of (inverse of red) applied to alpha_i: apply the
                // letters of red from left to right.
                v.iter_mut().for_each(|x| *x = 0.0);
                v[i] = 1.0;
                let mut neg_at = None;
                for (k, &c) in red.iter().enumerate() {
                    self.reflect_in_place(c as usize, &mut v);
                    if v[c as usize] < 0.0 && self.certify_sign(&v)? == Sign::Negative {
                        neg_at = Some(k);
                        break;
                    }
                }
                if let Some(k) = neg_at {
                    chosen = Some((i, k));
                    break;
                }
            }
            let (i, k) = chosen.ok_or_else(|| {
                Error::Inconsistency("nonempty reduced word with no left descent".into())
            })?;
            out.push(i as u8);
            // The image turned negative after applying letter k, so the
            // prefix before it carries alpha_{red[k]} onto alpha_i and the
            // extraction deletes that letter.
            red.remove(k);
        }
        Ok(Element { word: Word::from_raw(out) })
    }

    /// The normal form of an arbitrary word.
    pub fn reduce(&self, w: &Word) -> Result<Element> {
        let mut red: Vec<u8> = Vec::with_capacity(w.len());
        for &c in w.letters() {
            self.check_index(c as usize)?;
            self.right_multiply_reduced(&mut red, c)?;
        }
        self.normalize_reduced(red)
    }

    /// The length of the element a word represents.
    pub fn length(&self, w: &Word) -> Result<usize> {
        Ok(self.reduce(w)?.len())
    }

    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        let mut red = u.letters().to_vec();
        for &c in v.letters() {
            self.right_multiply_reduced(&mut red, c)?;
        }
        self.normalize_reduced(red)
    }

    /// u * s for a single generator.
    pub fn apply_generator(&self, u: &Element, s: usize) -> Result<Element> {
        self.check_index(s)?;
        let mut red = u.letters().to_vec();
        self.right_multiply_reduced(&mut red, s as u8)?;
        self.normalize_reduced(red)
    }

    pub fn inverse(&self, u: &Element) -> Result<Element> {
        let rev: Vec<u8> = u.letters().iter().rev().copied().collect();
        self.normalize_reduced(rev)
    }

    /// u^k for any integer k.
    pub fn power(&self, u: &Element, k: i64) -> Result<Element> {
        let base = if k < 0 { self.inverse(u)? } else { u.clone() };
        let mut out = self.identity();
        for _ in 0..k.unsigned_abs() {
            out = self.multiply(&out, &base)?;
        }
        Ok(out)
    }

    pub fn is_right_descent(&self, w: &Element, s: usize) -> Result<bool> {
        self.check_index(s)?;
        self.word_descent(w.letters(), s)
    }

    /// The set of generators s with l(ws) < l(w), decided by the sign of the
    /// image of alpha_s.
    pub fn right_descents(&self, w: &Element) -> Result<DescentSet> {
        let mut in_set = Vec::new();
        let mut out_set = Vec::new();
        for s in 0..self.rank() {
            if self.word_descent(w.letters(), s)? {
                in_set.push(s);
            } else {
                out_set.push(s);
            }
        }
        Ok(DescentSet { in_set, out_set })
    }

    fn check_subset(&self, t: &[usize]) -> Result<Vec<usize>> {
        let mut set = t.to_vec();
        set.sort_unstable();
        set.dedup();
        for &i in &set {
            self.check_index(i)?;
        }
        Ok(set)
    }

    /// Splits w = w0 * a with a in the standard parabolic on t and w0 the
    /// shortest representative of its coset: no right descent of w0 lies
    /// in t.
    pub fn coset_decompose(&self, w: &Element, t: &[usize]) -> Result<(Element, Element)> {
        let t = self.check_subset(t)?;
        let mut w0 = w.clone();
        let mut a = self.identity();
        loop {
            let mut moved = false;
            for &s in &t {
                if self.is_right_descent(&w0, s)? {
                    w0 = self.apply_generator(&w0, s)?;
                    a = self.multiply(&self.generator(s)?, &a)?;
                    moved = true;
                    break;
                }
            }
            if !moved {
                return Ok((w0, a));
            }
        }
    }

    /// The longest element of the standard parabolic on t, by greedy ascent:
    /// keep appending the least generator of t that lengthens the word.
    /// Fails with NotFinite when the parabolic is infinite.
    pub fn longest_element(&self, t: &[usize]) -> Result<Element> {
        let t = self.check_subset(t)?;
        if t.is_empty() {
            return Ok(self.identity());
        }
        let sub = self.matrix().submatrix(&t)?;
        if !crate::matrix::is_finite_type(&sub, self.eps())? {
            let shown: Vec<String> = t.iter().map(|i| (i + 1).to_string()).collect();
            return Err(Error::NotFinite(format!(
                "subset {{{}}} generates an infinite parabolic",
                shown.join(",")
            )));
        }
        let mut w = self.identity();
        loop {
            let mut extended = false;
            for &s in &t {
                if !self.is_right_descent(&w, s)? {
                    w = self.apply_generator(&w, s)?;
                    extended = true;
                    break;
                }
            }
            if !extended {
                return Ok(w);
            }
        }
    }

    /// All elements of length <= radius, grouped and sorted by length then
    /// letters. Fails with CapExceeded when the ball outgrows `cap`.
    pub fn ball(&self, radius: usize, cap: usize) -> Result<Ball> {
        let mut levels: Vec<Vec<Element>> = vec![vec![self.identity()]];
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        seen.insert(Vec::new());
        let mut total = 1usize;
        for _ in 0..radius {
            let prev = levels.last().unwrap();
            let mut next: Vec<Element> = Vec::new();
            for w in prev {
                for s in 0..self.rank() {
                    if self.word_descent(w.letters(), s)? {
                        continue;
                    }
                    let mut red = w.letters().to_vec();
                    red.push(s as u8);
                    let child = self.normalize_reduced(red)?;
                    if seen.insert(child.letters().to_vec()) {
                        total += 1;
                        if total > cap {
                            return Err(Error::CapExceeded(format!(
                                "ball enumeration passed {cap} elements"
                            )));
                        }
                        next.push(child);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable_by(|a, b| a.cmp(b));
            levels.push(next);
        }
        Ok(Ball { levels })
    }
}
