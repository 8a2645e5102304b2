//! Exact Fincke–Pohst enumeration of lattice points of bounded norm.
//!
//! The quadratic form is diagonalised over `Q` once and then rescaled so that
//! every step of the search is integer arithmetic: with `s_i = δ_i y_i + Σ_{j>i} M_ij y_j`
//! the form reads `Λ·Q(y) = Σ W_i s_i²` with positive integers `W_i`.

use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};

use crate::error::{CslError, Result};
use crate::ring::Rat;

/// Precomputed integer data for enumerating `{ y : yᵀ G y ≤ T }`.
#[derive(Clone, Debug)]
pub struct ShortVectors {
    dim: usize,
    /// row-wise integer multipliers of the completed squares
    delta: Vec<i128>,
    mix: Vec<Vec<i128>>,
    weight: Vec<i128>,
    scale: i128,
}

impl ShortVectors {
    /// `gram` must be symmetric positive definite.
    pub fn new(gram: &[Vec<i128>]) -> Result<Self> {
        let n = gram.len();
        let mut g: Vec<Vec<Rat>> = gram
            .iter()
            .map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect())
            .collect();
        let mut d = vec![Rat::zero(); n];
        let mut mu = vec![vec![Rat::zero(); n]; n];
        for i in 0..n {
            if !g[i][i].is_positive() {
                return Err(CslError::Inconsistent("Gram matrix is not positive definite".into()));
            }
            d[i] = g[i][i];
            for j in i + 1..n {
                mu[i][j] = g[i][j] / d[i];
            }
            for j in i + 1..n {
                for k in i + 1..n {
                    let upd = mu[i][j] * mu[i][k] * d[i];
                    g[j][k] -= upd;
                }
            }
        }
        let mut delta = vec![1i128; n];
        let mut mix = vec![vec![0i128; n]; n];
        let mut w = Vec::with_capacity(n);
        for i in 0..n {
            delta[i] = (i + 1..n).fold(1i128, |acc, j| acc.lcm(mu[i][j].denom()));
            for j in i + 1..n {
                mix[i][j] = (mu[i][j] * Rat::from_integer(delta[i])).to_integer();
            }
            w.push(d[i] / Rat::from_integer(delta[i] * delta[i]));
        }
        let scale = w.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
        let weight = w
            .iter()
            .map(|x| (x * Rat::from_integer(scale)).to_integer())
            .collect();
        Ok(ShortVectors {
            dim: n,
            delta,
            mix,
            weight,
            scale,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Calls `visit(y, Q(y))` for every integer vector with `Q(y) ≤ bound`.
    /// Returns the number of search-tree nodes visited, or an error when
    /// `max_nodes` is exceeded.
    pub fn for_each<F>(&self, bound: i128, max_nodes: u64, mut visit: F) -> Result<u64>
    where
        F: FnMut(&[i64], i128),
    {
        let n = self.dim;
        if bound < 0 || n == 0 {
            return Ok(0);
        }
        let total = bound
            .checked_mul(self.scale)
            .ok_or(CslError::Overflow("short vector bound"))?;
        let mut y = vec![0i64; n];
        let mut hi = vec![0i64; n];
        // rem[i] = budget left before choosing coordinate i
        let mut rem = vec![0i128; n + 1];
        let mut nodes = 0u64;
        rem[n] = total;

        let offset = |y: &[i64], i: usize| -> i128 {
            (i + 1..n).map(|j| self.mix[i][j] * y[j] as i128).sum()
        };
        let range = |r: i128, k: i128, i: usize| -> (i64, i64) {
            let smax = Roots::sqrt(&(r / self.weight[i]));
            let lo = Integer::div_ceil(&(-smax - k), &self.delta[i]);
            let hi = Integer::div_floor(&(smax - k), &self.delta[i]);
            (lo as i64, hi as i64)
        };

        let mut i = n - 1;
        let k = offset(&y, i);
        let (lo, h) = range(rem[n], k, i);
        y[i] = lo;
        hi[i] = h;
        loop {
            if y[i] > hi[i] {
                // exhausted this level
                if i == n - 1 {
                    break;
                }
                i += 1;
                y[i] += 1;
                continue;
            }
            nodes += 1;
            if nodes > max_nodes {
                return Err(CslError::BudgetExceeded(format!(
                    "short vector search exceeded {max_nodes} nodes"
                )));
            }
            let k = offset(&y, i);
            let s = self.delta[i] * y[i] as i128 + k;
            let r = rem[i + 1] - self.weight[i] * s * s;
            if r < 0 {
                y[i] += 1;
                continue;
            }
            if i == 0 {
                let value = total - r;
                debug_assert_eq!(value % self.scale, 0);
                visit(&y, value / self.scale);
                y[0] += 1;
                continue;
            }
            rem[i] = r;
            i -= 1;
            let k = offset(&y, i);
            let (lo, h) = range(r, k, i);
            y[i] = lo;
            hi[i] = h;
        }
        Ok(nodes)
    }

    /// Collect every vector with `Q(y) = value`.
    pub fn with_value(&self, value: i128, max_nodes: u64) -> Result<Vec<Vec<i64>>> {
        let mut out = Vec::new();
        self.for_each(value, max_nodes, |y, q| {
            if q == value {
                out.push(y.to_vec());
            }
        })?;
        Ok(out)
    }
}

/// `yᵀ G y` computed directly.
pub fn quadratic_value(gram: &[Vec<i128>], y: &[i64]) -> i128 {
    let mut acc = 0i128;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            acc += g * y[i] as i128 * y[j] as i128;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute(gram: &[Vec<i128>], bound: i128, box_size: i64) -> BTreeSet<Vec<i64>> {
        let n = gram.len();
        let mut out = BTreeSet::new();
        let side = (2 * box_size + 1) as usize;
        for idx in 0..side.pow(n as u32) {
            let mut t = idx;
            let y: Vec<i64> = (0..n)
                .map(|_| {
                    let c = (t % side) as i64 - box_size;
                    t /= side;
                    c
                })
                .collect();
            if quadratic_value(gram, &y) <= bound {
                out.insert(y);
            }
        }
        out
    }

    #[test]
    fn matches_brute_force_on_a4_gram() {
        // Cartan matrix of A4, norm ≤ 6
        let g = vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ];
        let sv = ShortVectors::new(&g).unwrap();
        let mut found = BTreeSet::new();
        sv.for_each(6, u64::MAX, |y, q| {
            assert_eq!(q, quadratic_value(&g, y));
            found.insert(y.to_vec());
        })
        .unwrap();
        assert_eq!(found, brute(&g, 6, 6));
        // 20 roots of A4
        assert_eq!(sv.with_value(2, u64::MAX).unwrap().len(), 20);
    }

    #[test]
    fn skewed_form() {
        let g = vec![vec![3, 1, 1], vec![1, 4, -2], vec![1, -2, 5]];
        let sv = ShortVectors::new(&g).unwrap();
        let mut found = BTreeSet::new();
        sv.for_each(14, u64::MAX, |y, _| {
            found.insert(y.to_vec());
        })
        .unwrap();
        assert_eq!(found, brute(&g, 14, 6));
    }

    #[test]
    fn node_budget_is_enforced() {
        let g = vec![vec![1, 0], vec![0, 1]];
        let sv = ShortVectors::new(&g).unwrap();
        assert!(matches!(
            sv.for_each(10_000, 10, |_, _| {}),
            Err(CslError::BudgetExceeded(_))
        ));
    }
}
