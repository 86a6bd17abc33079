//! The canonical linear representation: simple reflections acting on the
//! root space, with tolerance-certified sign decisions.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::CoxeterMatrix;
use crate::word::Word;

pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Positive => write!(f, "positive"),
            Sign::Negative => write!(f, "negative"),
        }
    }
}

/// A vector in the root space together with its certified sign class.
#[derive(Clone, Debug)]
pub struct RootVector {
    pub coords: Vec<f64>,
    pub sign: Sign,
}

/// A Coxeter matrix together with its bilinear form and the tolerance used
/// for every sign decision. All word and root operations hang off this.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    gram: Vec<f64>,
    rank: usize,
    eps: f64,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Self {
        Self::with_eps(matrix, DEFAULT_EPS)
    }

    pub fn with_eps(matrix: CoxeterMatrix, eps: f64) -> Self {
        let rank = matrix.rank();
        let mut gram = vec![0.0; rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                gram[i * rank + j] = matrix.entry(i, j).form_value();
            }
        }
        CoxeterSystem { matrix, gram, rank, eps }
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank });
        }
        Ok(())
    }

    /// The bilinear form applied to two coordinate vectors.
    pub fn form(&self, u: &[f64], v: &[f64]) -> f64 {
        let n = self.rank;
        let mut acc = 0.0;
        for i in 0..n {
            let row = &self.gram[i * n..(i + 1) * n];
            let mut dot = 0.0;
            for j in 0..n {
                dot += row[j] * v[j];
            }
            acc += u[i] * dot;
        }
        acc
    }

    /// The form paired against a basis root: (alpha_i, v).
    fn form_basis(&self, i: usize, v: &[f64]) -> f64 {
        let row = &self.gram[i * self.rank..(i + 1) * self.rank];
        row.iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub(crate) fn reflect_in_place(&self, i: usize, v: &mut [f64]) {
        let c = 2.0 * self.form_basis(i, v);
        v[i] -= c;
    }

    pub fn simple_root(&self, i: usize) -> Result<RootVector> {
        self.check_index(i)?;
        let mut coords = vec![0.0; self.rank];
        coords[i] = 1.0;
        Ok(RootVector { coords, sign: Sign::Positive })
    }

    /// The simple reflection applied to a coordinate vector.
    pub fn reflect(&self, i: usize, v: &[f64]) -> Result<Vec<f64>> {
        self.check_index(i)?;
        let mut out = v.to_vec();
        self.reflect_in_place(i, &mut out);
        Ok(out)
    }

    /// The word applied to a vector, letters composing right to left, so that
    /// act(uv, x) = act(u, act(v, x)).
    pub fn act(&self, word: &Word, v: &[f64]) -> Result<Vec<f64>> {
        let mut out = v.to_vec();
        for &c in word.letters().iter().rev() {
            self.check_index(c as usize)?;
            self.reflect_in_place(c as usize, &mut out);
        }
        Ok(out)
    }

    /// The reflection through an arbitrary root: v - 2 (alpha, v) alpha.
    pub fn reflect_by_root(&self, alpha: &[f64], v: &[f64]) -> Vec<f64> {
        let c = 2.0 * self.form(alpha, v);
        v.iter().zip(alpha).map(|(x, a)| x - c * a).collect()
    }

    /// Certifies the sign class of a vector: positive when every coordinate
    /// is >= -eps and some coordinate is >= eps, negative dually. Mixed signs
    /// beyond tolerance, or a vector entirely inside the band, are refused.
    pub fn certify_sign(&self, v: &[f64]) -> Result<Sign> {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for &x in v {
            min = min.min(x);
            max = max.max(x);
        }
        if min >= -self.eps && max >= self.eps {
            Ok(Sign::Positive)
        } else if max <= self.eps && min <= -self.eps {
            Ok(Sign::Negative)
        } else {
            Err(Error::NumericAmbiguity(format!(
                "coordinates span [{min:e}, {max:e}], not certifiable at tolerance {:e}",
                self.eps
            )))
        }
    }

    pub fn root_vector(&self, coords: Vec<f64>) -> Result<RootVector> {
        if coords.len() != self.rank {
            return Err(Error::Validation(format!(
                "coordinate vector has length {}, expected {}",
                coords.len(),
                self.rank
            )));
        }
        let sign = self.certify_sign(&coords)?;
        Ok(RootVector { coords, sign })
    }
}
