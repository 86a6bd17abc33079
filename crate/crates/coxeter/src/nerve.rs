//! The poset of spherical generator subsets (the nerve) and counts of
//! parabolic coset cells inside a ball.

use std::collections::HashSet;

use crate::error::Result;
use crate::matrix::is_finite_type;
use crate::tits::CoxeterSystem;

/// All subsets of generators whose standard parabolic is finite, ordered by
/// size then lexicographically, together with the maximal nonempty ones
/// (the maximal simplices of the nerve).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphericalPoset {
    pub subsets: Vec<Vec<usize>>,
    pub maximal: Vec<Vec<usize>>,
}

/// Coset cell counts: for each spherical subset, the number of cosets of
/// its parabolic met by the ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetCells {
    pub cells: Vec<(Vec<usize>, usize)>,
    pub radius: usize,
}

impl CoxeterSystem {
    /// Enumerates the spherical subsets level by level. A candidate is only
    /// tested when all its facets are already spherical, which is sound
    /// because subgroups of finite parabolics are finite.
    pub fn spherical_subsets(&self) -> Result<SphericalPoset> {
        let n = self.rank();
        let mut subsets: Vec<Vec<usize>> = vec![Vec::new()];
        let mut prev: Vec<Vec<usize>> = vec![Vec::new()];
        let mut prev_set: HashSet<Vec<usize>> = prev.iter().cloned().collect();
        for _size in 1..=n {
            let mut level: Vec<Vec<usize>> = Vec::new();
            for t in &prev {
                let start = t.last().map_or(0, |&x| x + 1);
                'candidate: for j in start..n {
                    let mut u = t.clone();
                    u.push(j);
                    if u.len() > 1 {
                        for skip in 0..u.len() - 1 {
                            let mut facet = u.clone();
                            facet.remove(skip);
                            if !prev_set.contains(&facet) {
                                continue 'candidate;
                            }
                        }
                    }
                    let sub = self.matrix().submatrix(&u)?;
                    if is_finite_type(&sub, self.eps())? {
                        level.push(u);
                    }
                }
            }
            if level.is_empty() {
                break;
            }
            level.sort_unstable();
            subsets.extend(level.iter().cloned());
            prev_set = level.iter().cloned().collect();
            prev = level;
        }
        let all: HashSet<Vec<usize>> = subsets.iter().cloned().collect();
        let maximal: Vec<Vec<usize>> = subsets
            .iter()
            .filter(|t| !t.is_empty())
            .filter(|t| {
                (0..n).all(|j| {
                    if t.contains(&j) {
                        return true;
                    }
                    let mut u: Vec<usize> = (*t).clone();
                    u.push(j);
                    u.sort_unstable();
                    !all.contains(&u)
                })
            })
            .cloned()
            .collect();
        Ok(SphericalPoset { subsets, maximal })
    }

    /// Counts, for every spherical subset, the parabolic cosets whose
    /// shortest representative lies in the ball: the elements with no right
    /// descent inside the subset.
    pub fn coset_cells(&self, radius: usize, cap: usize) -> Result<CosetCells> {
        let poset = self.spherical_subsets()?;
        let ball = self.ball(radius, cap)?;
        let mut descent_masks: Vec<u64> = Vec::with_capacity(ball.total());
        for w in ball.iter() {
            let mut mask = 0u64;
            for s in &self.right_descents(w)?.in_set {
                mask |= 1 << s;
            }
            descent_masks.push(mask);
        }
        let cells = poset
            .subsets
            .iter()
            .map(|t| {
                let tmask: u64 = t.iter().fold(0, |m, &s| m | 1 << s);
                let count = descent_masks.iter().filter(|&&m| m & tmask == 0).count();
                (t.clone(), count)
            })
            .collect();
        Ok(CosetCells { cells, radius })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::CoxeterMatrix;

    fn sys(name: &str) -> CoxeterSystem {
        CoxeterSystem::new(CoxeterMatrix::family(name).unwrap())
    }

    #[test]
    fn a2_poset_is_the_full_power_set() {
        let s = sys("A2");
        let p = s.spherical_subsets().unwrap();
        assert_eq!(
            p.subsets,
            vec![vec![], vec![0], vec![1], vec![0, 1]]
        );
        assert_eq!(p.maximal, vec![vec![0, 1]]);
    }

    #[test]
    fn dinf_poset_has_only_vertices() {
        let s = sys("Dinf");
        let p = s.spherical_subsets().unwrap();
        assert_eq!(p.subsets, vec![vec![], vec![0], vec![1]]);
        assert_eq!(p.maximal, vec![vec![0], vec![1]]);
    }

    #[test]
    fn hyperbolic_triangle_nerve_is_the_boundary() {
        let s = sys("triangle(2,3,7)");
        let p = s.spherical_subsets().unwrap();
        assert_eq!(p.subsets.len(), 7); // empty, 3 vertices, 3 edges
        assert_eq!(
            p.maximal,
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
    }

    #[test]
    fn affine_triangle_nerve_is_the_boundary() {
        let s = sys("tilde-A2");
        let p = s.spherical_subsets().unwrap();
        assert_eq!(p.subsets.len(), 7);
        assert_eq!(p.maximal.len(), 3);
    }

    #[test]
    fn downward_closure_holds() {
        let s = sys("triangle(3,3,4)");
        let p = s.spherical_subsets().unwrap();
        let all: std::collections::HashSet<_> = p.subsets.iter().cloned().collect();
        for t in &p.subsets {
            for skip in 0..t.len() {
                let mut facet = t.clone();
                facet.remove(skip);
                assert!(all.contains(&facet));
            }
        }
    }

    #[test]
    fn a2_cells_at_full_radius() {
        let s = sys("A2");
        let c = s.coset_cells(3, 1000).unwrap();
        let lookup = |t: &[usize]| {
            c.cells
                .iter()
                .find(|(u, _)| u == t)
                .map(|&(_, n)| n)
                .unwrap()
        };
        assert_eq!(lookup(&[]), 6);
        assert_eq!(lookup(&[0]), 3);
        assert_eq!(lookup(&[1]), 3);
        assert_eq!(lookup(&[0, 1]), 1);
    }

    #[test]
    fn dinf_cells_at_radius_two() {
        let s = sys("Dinf");
        let c = s.coset_cells(2, 1000).unwrap();
        assert_eq!(
            c.cells,
            vec![(vec![], 5), (vec![0], 3), (vec![1], 3)]
        );
    }
}
