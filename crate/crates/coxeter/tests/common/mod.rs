//! Shared fixtures and brute-force oracles for the integration suites.
//!
//! The permutation oracle rebuilds a finite group as permutations of its
//! full root set and measures word lengths by breadth-first search over
//! those permutations. Lengths and descents obtained this way never touch
//! the sign-test word machinery under test.

#![allow(dead_code)]

use std::collections::HashMap;

use coxeter::{CoxeterMatrix, CoxeterSystem, Element, Entry, Error, Word};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn system(name: &str) -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::family(name).expect("catalog name"))
}

/// B2 x A1 as a single rank-3 matrix.
pub fn b2_times_a1() -> CoxeterSystem {
    let f = Entry::Finite;
    let m = CoxeterMatrix::from_rows(vec![
        vec![f(1), f(4), f(2)],
        vec![f(4), f(1), f(2)],
        vec![f(2), f(2), f(1)],
    ])
    .unwrap();
    CoxeterSystem::new(m)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn elem(sys: &CoxeterSystem, text: &str) -> Element {
    sys.reduce(&Word::parse(text).expect("word text")).expect("reduce")
}

pub fn random_word(r: &mut ChaCha8Rng, rank: usize, len: usize) -> Word {
    let letters: Vec<usize> = (0..len).map(|_| r.gen_range(0..rank)).collect();
    Word::from_indices(&letters).unwrap()
}

pub type Perm = Vec<u16>;

pub struct PermOracle {
    pub perms: Vec<Perm>,
    pub lengths: HashMap<Perm, usize>,
    pub order: usize,
    pub diameter: usize,
}

pub fn compose(p: &Perm, q: &Perm) -> Perm {
    q.iter().map(|&i| p[i as usize]).collect()
}

/// Builds the oracle for a finite system. The root set is closed
/// numerically, then everything else is integer permutation arithmetic.
pub fn perm_oracle(sys: &CoxeterSystem) -> PermOracle {
    let n = sys.rank();
    let key = |v: &[f64]| -> Vec<i64> {
        v.iter().map(|&x| (x * 1e6).round() as i64).collect()
    };
    let mut roots: Vec<Vec<f64>> = Vec::new();
    let mut idx: HashMap<Vec<i64>, usize> = HashMap::new();
    for i in 0..n {
        for sgn in [1.0f64, -1.0] {
            let mut v = vec![0.0; n];
            v[i] = sgn;
            idx.insert(key(&v), roots.len());
            roots.push(v);
        }
    }
    let mut head = 0;
    while head < roots.len() {
        let v = roots[head].clone();
        head += 1;
        for s in 0..n {
            let img = sys.reflect(s, &v).unwrap();
            let k = key(&img);
            if !idx.contains_key(&k) {
                idx.insert(k, roots.len());
                roots.push(img);
            }
        }
        assert!(roots.len() <= 20_000, "root closure did not stay finite");
    }
    let perms: Vec<Perm> = (0..n)
        .map(|s| {
            roots
                .iter()
                .map(|v| idx[&key(&sys.reflect(s, v).unwrap())] as u16)
                .collect()
        })
        .collect();
    let id: Perm = (0..roots.len() as u16).collect();
    // Sanity: generators are involutions and pair products have the order
    // the matrix dictates.
    for p in &perms {
        assert_eq!(compose(p, p), id, "generator permutation is not an involution");
    }
    for i in 0..n {
        for j in i + 1..n {
            if let Entry::Finite(m) = sys.matrix().entry(i, j) {
                let pq = compose(&perms[i], &perms[j]);
                let mut acc = pq.clone();
                let mut order = 1;
                while acc != id {
                    acc = compose(&acc, &pq);
                    order += 1;
                    assert!(order <= 2 * m, "pair order overflow");
                }
                assert_eq!(order, m, "pair product order mismatch at ({i},{j})");
            }
        }
    }
    // Cayley-graph breadth-first search.
    let mut lengths: HashMap<Perm, usize> = HashMap::new();
    lengths.insert(id.clone(), 0);
    let mut frontier = vec![id];
    let mut dist = 0;
    let mut diameter = 0;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        dist += 1;
        for w in &frontier {
            for p in &perms {
                let c = compose(w, p);
                if !lengths.contains_key(&c) {
                    lengths.insert(c.clone(), dist);
                    next.push(c);
                }
            }
        }
        if !next.is_empty() {
            diameter = dist;
        }
        frontier = next;
        assert!(lengths.len() <= 2_000_000, "group closure did not stay finite");
    }
    let order = lengths.len();
    PermOracle { perms, lengths, order, diameter }
}

impl PermOracle {
    pub fn word_perm(&self, letters: &[u8]) -> Perm {
        let mut acc: Perm = (0..self.perms[0].len() as u16).collect();
        for &c in letters {
            acc = compose(&acc, &self.perms[c as usize]);
        }
        acc
    }

    pub fn length(&self, letters: &[u8]) -> usize {
        self.lengths[&self.word_perm(letters)]
    }

    /// Right descents by length comparison in the Cayley graph.
    pub fn descents(&self, letters: &[u8]) -> Vec<usize> {
        let p = self.word_perm(letters);
        let l = self.lengths[&p];
        (0..self.perms.len())
            .filter(|&s| self.lengths[&compose(&p, &self.perms[s])] < l)
            .collect()
    }
}

/// Decides finiteness by trying to exhaust the group: `Some(order)` when
/// the ball closes below both caps, `None` otherwise. Sound for the
/// fixture subsets used in the suites, whose finite parabolics all have
/// diameter well under the radius cap.
pub fn bfs_finite_order(sys: &CoxeterSystem) -> Option<usize> {
    const RADIUS_CAP: usize = 200;
    const ELEMENT_CAP: usize = 10_000;
    match sys.ball(RADIUS_CAP, ELEMENT_CAP) {
        Ok(ball) if ball.levels.len() <= RADIUS_CAP => Some(ball.total()),
        Ok(_) => None,
        Err(Error::CapExceeded(_)) => None,
        Err(e) => panic!("unexpected error while probing finiteness: {e}"),
    }
}

/// All elements of the standard parabolic on `t`, as elements of the
/// ambient system, enumerated through the subsystem so it works for any
/// finite parabolic regardless of the ambient group.
pub fn parabolic_elements(sys: &CoxeterSystem, t: &[usize]) -> Vec<Element> {
    if t.is_empty() {
        return vec![sys.identity()];
    }
    let sub = sys.matrix().submatrix(t).unwrap();
    let subsys = CoxeterSystem::new(sub);
    let mut sorted = t.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let ball = subsys.ball(200, 100_000).expect("finite parabolic");
    ball.iter()
        .map(|e| {
            let letters: Vec<usize> = e.word().indices().iter().map(|&i| sorted[i]).collect();
            sys.reduce(&Word::from_indices(&letters).unwrap()).unwrap()
        })
        .collect()
}
