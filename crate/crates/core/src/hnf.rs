//! Integer row echelon (Hermite) forms, kernels, and lattice meet/join over `i128`.
//!
//! Conventions: matrices are lists of row vectors and lattices are row spans.
//! The Hermite form has strictly increasing pivot columns, positive pivots, and
//! entries above each pivot reduced into `[0, pivot)`.

use crate::error::{CslError, Result};

pub type IntMatrix = Vec<Vec<i128>>;

fn sub_multiple(target: &mut [i128], source: &[i128], q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for (t, s) in target.iter_mut().zip(source) {
        let prod = s.checked_mul(q).ok_or(CslError::Overflow("hnf"))?;
        *t = t.checked_sub(prod).ok_or(CslError::Overflow("hnf"))?;
    }
    Ok(())
}

/// Hermite normal form of the row span. Zero rows are dropped.
pub fn hermite(rows: &[Vec<i128>]) -> Result<IntMatrix> {
    let mut m: IntMatrix = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below row r
            let pivot = (r..m.len())
                .filter(|&i| m[i][c] != 0)
                .min_by_key(|&i| m[i][c].unsigned_abs());
            let Some(p) = pivot else { break };
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c] != 0 {
                    let q = m[i][c].div_euclid(m[r][c]);
                    let (head, tail) = m.split_at_mut(i);
                    sub_multiple(&mut tail[0], &head[r], q)?;
                    if tail[0][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < m.len() && m[r][c] != 0 {
            if m[r][c] < 0 {
                for x in m[r].iter_mut() {
                    *x = -*x;
                }
            }
            let piv = m[r][c];
            for i in 0..r {
                let q = m[i][c].div_euclid(piv);
                let (head, tail) = m.split_at_mut(r);
                sub_multiple(&mut head[i], &tail[0], q)?;
            }
            r += 1;
        }
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|&x| x != 0));
    Ok(m)
}

/// Basis of `{ y ∈ Zᵏ : y · rows = 0 }` for the `k` given rows, in Hermite form.
pub fn left_kernel(rows: &[Vec<i128>]) -> Result<IntMatrix> {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let augmented: IntMatrix = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..k).map(|j| i128::from(i == j)));
            v
        })
        .collect();
    let h = hermite(&augmented)?;
    let kernel: IntMatrix = h
        .into_iter()
        .filter(|row| row[..n].iter().all(|&x| x == 0))
        .map(|row| row[n..].to_vec())
        .collect();
    hermite(&kernel)
}

/// `y · m` for a row vector `y`.
pub fn row_times(y: &[i128], m: &[Vec<i128>]) -> Result<Vec<i128>> {
    let n = m.first().map_or(0, Vec::len);
    let mut out = vec![0i128; n];
    for (coef, row) in y.iter().zip(m) {
        if *coef == 0 {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            let p = x.checked_mul(*coef).ok_or(CslError::Overflow("row_times"))?;
            *o = o.checked_add(p).ok_or(CslError::Overflow("row_times"))?;
        }
    }
    Ok(out)
}

/// Row span intersection, computed from the left kernel of `[A; -B]`.
pub fn intersect(a: &[Vec<i128>], b: &[Vec<i128>]) -> Result<IntMatrix> {
    let mut stacked: IntMatrix = a.to_vec();
    stacked.extend(b.iter().map(|r| r.iter().map(|x| -x).collect()));
    let ker = left_kernel(&stacked)?;
    let images = ker
        .iter()
        .map(|y| row_times(&y[..a.len()], a))
        .collect::<Result<IntMatrix>>()?;
    hermite(&images)
}

/// Row span sum.
pub fn sum(a: &[Vec<i128>], b: &[Vec<i128>]) -> Result<IntMatrix> {
    let mut stacked = a.to_vec();
    stacked.extend_from_slice(b);
    hermite(&stacked)
}

/// Solve `y · h = v` for a full-column-rank square Hermite basis `h`.
/// Returns `None` when `v` is not in the row span.
pub fn solve_upper(h: &[Vec<i128>], v: &[i128]) -> Option<Vec<i128>> {
    let n = h.len();
    if n == 0 || h[0].len() != n {
        return None;
    }
    let mut rest = v.to_vec();
    let mut y = vec![0i128; n];
    for i in 0..n {
        let piv = h[i][i];
        if piv == 0 || rest[i] % piv != 0 {
            return None;
        }
        let c = rest[i] / piv;
        y[i] = c;
        for j in i..n {
            rest[j] -= c * h[i][j];
        }
    }
    rest.iter().all(|&x| x == 0).then_some(y)
}

/// Product of the diagonal of a square Hermite basis.
pub fn diagonal_product(h: &[Vec<i128>]) -> i128 {
    h.iter().enumerate().map(|(i, r)| r[i]).product()
}
