//! Coxeter matrices: parsing, the built-in family catalog, diagram
//! components, the associated bilinear form, and finiteness classification.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Largest supported rank. Words store generator indices in a byte and the
/// tool is aimed at hand-sized inputs, so this is generous.
pub const MAX_RANK: usize = 64;

/// An entry m(s,t) of a Coxeter matrix: the order of st, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Finite(u32),
    Infinite,
}

impl Entry {
    /// Contribution to the bilinear form: -cos(pi/m), with -1 for m = inf.
    /// The diagonal entry m = 1 gives -cos(pi) = 1.
    pub fn form_value(self) -> f64 {
        match self {
            Entry::Finite(m) => -(std::f64::consts::PI / m as f64).cos(),
            Entry::Infinite => -1.0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Entry::Infinite)
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Finite(m) => write!(f, "{m}"),
            Entry::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Entry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            return Ok(Entry::Infinite);
        }
        s.parse::<u32>()
            .map(Entry::Finite)
            .map_err(|_| Error::Syntax(format!("malformed matrix entry {s:?}")))
    }
}

/// A symmetric Coxeter matrix with 1 on the diagonal and entries >= 2 (or
/// infinity) off it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    rank: usize,
    entries: Vec<Entry>,
}

impl CoxeterMatrix {
    pub fn from_rows(rows: Vec<Vec<Entry>>) -> Result<Self> {
        let rank = rows.len();
        if rank == 0 {
            return Err(Error::Validation("rank must be at least 1".into()));
        }
        if rank > MAX_RANK {
            return Err(Error::Validation(format!(
                "rank {rank} exceeds the supported maximum {MAX_RANK}"
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::Validation(format!(
                    "rank mismatch: row {} has {} entries, expected {rank}",
                    i + 1,
                    row.len()
                )));
            }
        }
        let entries: Vec<Entry> = rows.into_iter().flatten().collect();
        let m = CoxeterMatrix { rank, entries };
        for i in 0..rank {
            if m.entry(i, i) != Entry::Finite(1) {
                return Err(Error::Validation(format!(
                    "diagonal entry at position {} must be 1",
                    i + 1
                )));
            }
            for j in 0..i {
                if m.entry(i, j) != m.entry(j, i) {
                    return Err(Error::Validation(format!(
                        "matrix is not symmetric at positions {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
                if let Entry::Finite(v) = m.entry(i, j) {
                    if v < 2 {
                        return Err(Error::Validation(format!(
                            "off-diagonal entry at positions {} and {} must be at least 2",
                            j + 1,
                            i + 1
                        )));
                    }
                }
            }
        }
        Ok(m)
    }

    /// Reads the file format: first non-comment line is the rank, then one
    /// line per row with integer or "inf" entries. Lines starting with '#'
    /// and blank lines are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let rank_line = lines
            .next()
            .ok_or_else(|| Error::Syntax("missing rank line".into()))?;
        let rank: usize = rank_line
            .parse()
            .map_err(|_| Error::Syntax(format!("malformed rank {rank_line:?}")))?;
        let mut rows = Vec::with_capacity(rank);
        for line in lines {
            let row: Vec<Entry> = line
                .split_whitespace()
                .map(Entry::from_str)
                .collect::<Result<_>>()?;
            rows.push(row);
        }
        if rows.len() != rank {
            return Err(Error::Validation(format!(
                "rank mismatch: header says {rank} but found {} rows",
                rows.len()
            )));
        }
        Self::from_rows(rows)
    }

    /// Builds a member of the standard catalog: An, Bn, Dn, E6..E8, F4, G2,
    /// H3, H4, I2(m), Dinf, triangle(p,q,r), tilde-An.
    pub fn family(name: &str) -> Result<Self> {
        let name = name.trim();
        let bad = || Error::UnknownFamily(name.to_string());
        if name == "Dinf" {
            return Self::from_edges(2, &[(0, 1, Entry::Infinite)]);
        }
        if let Some(args) = name.strip_prefix("triangle(").and_then(|r| r.strip_suffix(')')) {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            let p = Entry::from_str(parts[0]).map_err(|_| bad())?;
            let q = Entry::from_str(parts[1]).map_err(|_| bad())?;
            let r = Entry::from_str(parts[2]).map_err(|_| bad())?;
            return Self::from_edges(3, &[(0, 1, p), (0, 2, q), (1, 2, r)]);
        }
        if let Some(arg) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = arg.trim().parse().map_err(|_| bad())?;
            if m < 2 {
                return Err(bad());
            }
            return Self::from_edges(2, &[(0, 1, Entry::Finite(m))]);
        }
        if let Some(arg) = name.strip_prefix("tilde-A") {
            let n: usize = arg.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            let rank = n + 1;
            let mut edges: Vec<(usize, usize, Entry)> = (0..n)
                .map(|i| (i, i + 1, Entry::Finite(3)))
                .collect();
            edges.push((0, n, Entry::Finite(3)));
            return Self::from_edges(rank, &edges);
        }
        match name {
            "E6" | "E7" | "E8" => {
                let n = name[1..].parse::<usize>().unwrap();
                let mut edges = vec![(0, 2, Entry::Finite(3)), (1, 3, Entry::Finite(3))];
                for i in 2..n - 1 {
                    edges.push((i, i + 1, Entry::Finite(3)));
                }
                return Self::from_edges(n, &edges);
            }
            "F4" => {
                return Self::from_edges(
                    4,
                    &[
                        (0, 1, Entry::Finite(3)),
                        (1, 2, Entry::Finite(4)),
                        (2, 3, Entry::Finite(3)),
                    ],
                );
            }
            "G2" => return Self::from_edges(2, &[(0, 1, Entry::Finite(6))]),
            "H3" | "H4" => {
                let n = name[1..].parse::<usize>().unwrap();
                let mut edges = vec![(0, 1, Entry::Finite(5))];
                for i in 1..n - 1 {
                    edges.push((i, i + 1, Entry::Finite(3)));
                }
                return Self::from_edges(n, &edges);
            }
            _ => {}
        }
        if name.is_empty() {
            return Err(bad());
        }
        let (letter, rest) = name.split_at(1);
        let n: usize = match rest.parse() {
            Ok(n) => n,
            Err(_) => return Err(bad()),
        };
        match letter {
            "A" if n >= 1 => {
                let edges: Vec<_> = (0..n.saturating_sub(1))
                    .map(|i| (i, i + 1, Entry::Finite(3)))
                    .collect();
                Self::from_edges(n, &edges)
            }
            "B" if n >= 2 => {
                let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1, Entry::Finite(3))).collect();
                edges[n - 2].2 = Entry::Finite(4);
                Self::from_edges(n, &edges)
            }
            "D" if n >= 3 => {
                let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1, Entry::Finite(3))).collect();
                edges.push((n - 3, n - 1, Entry::Finite(3)));
                Self::from_edges(n, &edges)
            }
            _ => Err(bad()),
        }
    }

    /// Builds a matrix from labelled edges; absent pairs commute (entry 2).
    pub fn from_edges(rank: usize, edges: &[(usize, usize, Entry)]) -> Result<Self> {
        let mut rows = vec![vec![Entry::Finite(2); rank]; rank];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = Entry::Finite(1);
        }
        for &(a, b, m) in edges {
            rows[a][b] = m;
            rows[b][a] = m;
        }
        Self::from_rows(rows)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entry(&self, i: usize, j: usize) -> Entry {
        self.entries[i * self.rank + j]
    }

    /// The underlying labeled graph: one edge per pair with m(s,t) >= 3.
    pub fn graph(&self) -> CoxeterGraph {
        let mut edges = Vec::new();
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let m = self.entry(i, j);
                if m != Entry::Finite(2) {
                    edges.push(GraphEdge { a: i, b: j, label: m });
                }
            }
        }
        CoxeterGraph { rank: self.rank, edges }
    }

    /// Connected components of the graph, each with its index set (ascending)
    /// and the induced submatrix. Ordered by smallest index.
    pub fn components(&self) -> Vec<Component> {
        let mut seen = vec![false; self.rank];
        let mut out = Vec::new();
        for start in 0..self.rank {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut indices = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                indices.push(v);
                for u in 0..self.rank {
                    if !seen[u] && self.entry(v, u) != Entry::Finite(2) {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            indices.sort_unstable();
            let matrix = self.submatrix(&indices).expect("component indices are valid");
            out.push(Component { indices, matrix });
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.components().len() == 1
    }

    /// The induced matrix on a subset of generators. Indices are deduplicated
    /// and sorted; the empty subset is rejected.
    pub fn submatrix(&self, subset: &[usize]) -> Result<CoxeterMatrix> {
        let mut idx: Vec<usize> = subset.to_vec();
        idx.sort_unstable();
        idx.dedup();
        if idx.is_empty() {
            return Err(Error::Validation("subset must be nonempty".into()));
        }
        if let Some(&i) = idx.iter().find(|&&i| i >= self.rank) {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank });
        }
        let rows = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.entry(i, j)).collect())
            .collect();
        CoxeterMatrix::from_rows(rows)
    }

    /// The matrix of the bilinear form: rows of -cos(pi/m(s,t)), with -1 in
    /// place of infinite entries and 1 on the diagonal.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.entry(i, j).form_value()).collect())
            .collect()
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.rank)?;
        for i in 0..self.rank {
            let row: Vec<String> = (0..self.rank).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The labeled diagram of a Coxeter matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterGraph {
    pub rank: usize,
    pub edges: Vec<GraphEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphEdge {
    pub a: usize,
    pub b: usize,
    pub label: Entry,
}

/// One connected component of the diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub indices: Vec<usize>,
    pub matrix: CoxeterMatrix,
}

/// Classification verdict for an irreducible matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Finite,
    Affine,
    NonAffine,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Finite => write!(f, "finite"),
            Verdict::Affine => write!(f, "affine"),
            Verdict::NonAffine => write!(f, "non-affine"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeClass {
    pub verdict: Verdict,
    /// Number of eigenvalues of the form matrix inside (-eps, eps).
    pub kernel_dim: usize,
}

/// Classifies one irreducible matrix by the eigenvalue signs of its form.
///
/// Eigenvalues inside (-eps, eps) count as zero. An eigenvalue whose
/// magnitude lies in [eps, 10 eps) is refused: a perturbation of that size
/// would flip the verdict between finite and non-affine without being
/// absorbed by the zero band.
pub fn classify_irreducible(m: &CoxeterMatrix, eps: f64) -> Result<TypeClass> {
    let n = m.rank();
    let gram = DMatrix::from_fn(n, n, |i, j| m.entry(i, j).form_value());
    let eigen = gram.symmetric_eigen();
    let mut zeros = 0;
    let mut negatives = 0;
    for &lambda in eigen.eigenvalues.iter() {
        let mag = lambda.abs();
        if mag < eps {
            zeros += 1;
        } else if mag < 10.0 * eps {
            return Err(Error::NumericAmbiguity(format!(
                "form eigenvalue {lambda:e} is too close to zero to classify at tolerance {eps:e}"
            )));
        } else if lambda < 0.0 {
            negatives += 1;
        }
    }
    let verdict = if negatives > 0 {
        Verdict::NonAffine
    } else if zeros > 0 {
        Verdict::Affine
    } else {
        Verdict::Finite
    };
    Ok(TypeClass { verdict, kernel_dim: zeros })
}

/// Classifies every diagram component of `m`.
pub fn classify(m: &CoxeterMatrix, eps: f64) -> Result<Vec<(Component, TypeClass)>> {
    m.components()
        .into_iter()
        .map(|c| classify_irreducible(&c.matrix, eps).map(|t| (c, t)))
        .collect()
}

/// Whether every component is of finite type, i.e. the whole group is finite.
pub fn is_finite_type(m: &CoxeterMatrix, eps: f64) -> Result<bool> {
    Ok(classify(m, eps)?
        .iter()
        .all(|(_, t)| t.verdict == Verdict::Finite))
}
