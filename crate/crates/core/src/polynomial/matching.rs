//! Pairing of two root lists by minimal total distance.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::RootSet;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest size solved exactly.
const EXACT_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct RootPair<T> {
    pub a: usize,
    pub b: usize,
    pub distance: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Real")]
pub struct Matching<T> {
    /// Indices refer to the multiplicity-expanded lists.
    pub pairs: Vec<RootPair<T>>,
    /// True when the greedy heuristic was used instead of the exact solver.
    pub approximate: bool,
}

impl<T: Real> Matching<T> {
    pub fn total(&self) -> T {
        self.pairs.iter().map(|p| p.distance).sum()
    }

    pub fn max_distance(&self) -> T {
        self.pairs
            .iter()
            .map(|p| p.distance)
            .fold(T::zero(), T::max)
    }
}

/// Minimal-total-distance bijection between the expanded root lists.
pub fn match_roots<T: Real>(a: &RootSet<T>, b: &RootSet<T>) -> Result<Matching<T>> {
    match_points(&a.expanded(), &b.expanded())
}

pub(crate) fn match_points<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Result<Matching<T>> {
    if a.len() != b.len() {
        return Err(Error::DegreeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    let cost: Vec<Vec<T>> = a
        .iter()
        .map(|x| b.iter().map(|y| (*x - *y).norm()).collect())
        .collect();
    let (assign, approximate) = if n <= EXACT_LIMIT {
        (hungarian(&cost), false)
    } else {
        (greedy_two_swap(&cost), true)
    };
    let pairs = assign
        .into_iter()
        .enumerate()
        .map(|(i, j)| RootPair {
            a: i,
            b: j,
            distance: cost[i][j],
        })
        .collect();
    Ok(Matching { pairs, approximate })
}

/// Shortest augmenting path Hungarian method with potentials, O(n^3).
/// Returns `assign[row] = col`.
fn hungarian<T: Real>(cost: &[Vec<T>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let inf = T::infinity();
    // 1-based with a virtual column 0.
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut col_owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        col_owner[0] = row;
        let mut j0 = 0usize;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = col_owner[j0];
            let mut delta = inf;
            let mut j1 = 0usize;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[col_owner[j]] = u[col_owner[j]] + delta;
                    v[j] = v[j] - delta;
                } else {
                    minv[j] = minv[j] - delta;
                }
            }
            j0 = j1;
            if col_owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            col_owner[j0] = col_owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0usize; n];
    for j in 1..=n {
        assign[col_owner[j] - 1] = j - 1;
    }
    assign
}

fn greedy_two_swap<T: Real>(cost: &[Vec<T>]) -> Vec<usize> {
    let n = cost.len();
    let mut taken = vec![false; n];
    let mut assign = vec![0usize; n];
    for (i, row) in cost.iter().enumerate() {
        let mut best = None;
        for (j, &c) in row.iter().enumerate() {
            if !taken[j] && best.is_none_or(|(_, bc)| c < bc) {
                best = Some((j, c));
            }
        }
        let (j, _) = best.expect("a free column remains");
        taken[j] = true;
        assign[i] = j;
    }
    loop {
        let mut improved = false;
        for i in 0..n {
            for k in i + 1..n {
                let (a, b) = (assign[i], assign[k]);
                if cost[i][b] + cost[k][a] < cost[i][a] + cost[k][b] {
                    assign.swap(i, k);
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    assign
}
