//! Sparse symmetric linear systems and the conjugate-gradient solver used
//! for the m²×m² pressure equation of every time step.
//!
//! The assembled pressure matrices are symmetric with at most four
//! off-diagonal entries per row (five-point Laplacians, compact or wide).
//! After scaling rows by -h² they are positive definite, so plain CG with
//! Jacobi (diagonal) preconditioning converges; the default tolerance of
//! 1e-12 keeps solver error orders of magnitude below the scheme error.
//!
//! [`dense::solve_dense`] is a small Gaussian-elimination path written once
//! as the agreement oracle for tests at m ≤ 12.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("CG did not converge in {iterations} iterations (best relative residual {best_residual:e})")]
    NonConvergence {
        iterations: usize,
        best_residual: f64,
        /// Best iterate so far, for diagnostics.
        best_x: Vec<f64>,
    },
    #[error("matrix entry at ({0}, {1}) outside dimension")]
    EntryOutOfRange(usize, usize),
    #[error("non-finite value in system")]
    NonFinite,
}

/// Triplet-form sparse system A x = b.
#[derive(Debug, Clone)]
pub struct SparseSystem {
    dimension: usize,
    entries: Vec<(usize, usize, f64)>,
    rhs: Vec<f64>,
}

/// Result of a converged solve.
#[derive(Debug, Clone)]
pub struct Solution {
    pub x: Vec<f64>,
    pub iterations: usize,
    /// Final relative residual ‖Ax-b‖₂ / max(1, ‖b‖₂), recomputed from x.
    pub residual: f64,
}

impl SparseSystem {
    pub fn new(dimension: usize) -> Self {
        SparseSystem {
            dimension,
            entries: Vec::new(),
            rhs: vec![0.0; dimension],
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn push_entry(&mut self, row: usize, col: usize, value: f64) {
        debug_assert!(row < self.dimension && col < self.dimension);
        self.entries.push((row, col, value));
    }

    pub fn add_rhs(&mut self, row: usize, value: f64) {
        self.rhs[row] += value;
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    pub fn entries(&self) -> &[(usize, usize, f64)] {
        &self.entries
    }

    /// Multiply every matrix entry and rhs component by `factor` (sign
    /// normalization before CG: the assembled Laplacian rows are scaled by
    /// -h² so the diagonal becomes positive).
    pub fn scale(&mut self, factor: f64) {
        for e in &mut self.entries {
            e.2 *= factor;
        }
        for b in &mut self.rhs {
            *b *= factor;
        }
    }

    /// Dense copy of the matrix (tests and the dense oracle only).
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dimension;
        let mut a = vec![vec![0.0; n]; n];
        for &(r, c, v) in &self.entries {
            a[r][c] += v;
        }
        a
    }

    fn to_csr(&self) -> Result<Csr, SolveError> {
        let n = self.dimension;
        // Accumulate duplicates, then sort per row.
        let mut rows: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
        for &(r, c, v) in &self.entries {
            if r >= n || c >= n {
                return Err(SolveError::EntryOutOfRange(r, c));
            }
            if !v.is_finite() {
                return Err(SolveError::NonFinite);
            }
            rows[r].push((c, v));
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for row in &mut rows {
            row.sort_by_key(|&(c, _)| c);
            let mut merged: Vec<(usize, f64)> = Vec::with_capacity(row.len());
            for &(c, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == c => last.1 += v,
                    _ => merged.push((c, v)),
                }
            }
            for (c, v) in merged {
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Ok(Csr {
            n,
            row_ptr,
            cols,
            vals,
        })
    }

    /// Structural symmetry check with an absolute tolerance on the values.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let a = self.to_dense();
        let n = self.dimension;
        (0..n).all(|i| (0..i).all(|j| (a[i][j] - a[j][i]).abs() <= tol))
    }

    /// Preconditioned conjugate gradients from x₀ = 0.
    pub fn solve(&self, tol: f64, max_iter: usize) -> Result<Solution, SolveError> {
        self.solve_with_guess(tol, max_iter, None)
    }

    /// Same, but warm-started (the per-step pressure solves reuse the
    /// previous level as the initial iterate).
    pub fn solve_with_guess(
        &self,
        tol: f64,
        max_iter: usize,
        x0: Option<&[f64]>,
    ) -> Result<Solution, SolveError> {
        assert!(tol > 0.0);
        let a = self.to_csr()?;
        let n = self.dimension;
        let b = &self.rhs;
        if b.iter().any(|v| !v.is_finite()) {
            return Err(SolveError::NonFinite);
        }

        let b_norm = norm2(b).max(1.0);
        let stop = tol * b_norm;

        // Jacobi preconditioner; unit fallback keeps degenerate test systems usable.
        let mut inv_diag = vec![1.0; n];
        for i in 0..n {
            let d = a.diag(i);
            if d != 0.0 {
                inv_diag[i] = 1.0 / d;
            }
        }

        let mut x = match x0 {
            Some(g) => {
                assert_eq!(g.len(), n);
                g.to_vec()
            }
            None => vec![0.0; n],
        };
        let mut r = vec![0.0; n];
        a.mul(&x, &mut r);
        for i in 0..n {
            r[i] = b[i] - r[i];
        }

        let mut best_res = norm2(&r);
        let mut best_x = x.clone();
        if best_res <= stop {
            return Ok(Solution {
                x,
                iterations: 0,
                residual: best_res / b_norm,
            });
        }

        let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(ri, di)| ri * di).collect();
        let mut p = z.clone();
        let mut rz = dot(&r, &z);
        let mut ap = vec![0.0; n];

        for iter in 1..=max_iter {
            a.mul(&p, &mut ap);
            let pap = dot(&p, &ap);
            if pap <= 0.0 || !pap.is_finite() {
                // Not positive definite along p (or breakdown): report best effort.
                return Err(SolveError::NonConvergence {
                    iterations: iter,
                    best_residual: best_res / b_norm,
                    best_x,
                });
            }
            let alpha = rz / pap;
            for i in 0..n {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            let res = norm2(&r);
            if res < best_res {
                best_res = res;
                best_x.copy_from_slice(&x);
            }
            if res <= stop {
                // Recompute the true residual; recurrence drift can flatter us.
                a.mul(&x, &mut ap);
                let mut true_r = 0.0;
                for i in 0..n {
                    let d = b[i] - ap[i];
                    true_r += d * d;
                }
                let true_r = true_r.sqrt();
                if true_r <= stop {
                    return Ok(Solution {
                        x,
                        iterations: iter,
                        residual: true_r / b_norm,
                    });
                }
                // Keep iterating with the recomputed residual.
                for i in 0..n {
                    r[i] = b[i] - ap[i];
                }
            }
            for i in 0..n {
                z[i] = r[i] * inv_diag[i];
            }
            let rz_next = dot(&r, &z);
            let beta = rz_next / rz;
            rz = rz_next;
            for i in 0..n {
                p[i] = z[i] + beta * p[i];
            }
        }
        Err(SolveError::NonConvergence {
            iterations: max_iter,
            best_residual: best_res / b_norm,
            best_x,
        })
    }

    /// Debug dump of (row, col, value) triples plus rhs as CSV lines.
    pub fn dump_csv(&self, out: &mut impl std::io::Write) -> std::io::Result<()> {
        writeln!(out, "row,col,value")?;
        for &(r, c, v) in &self.entries {
            writeln!(out, "{r},{c},{v}")?;
        }
        writeln!(out, "rhs")?;
        for (i, b) in self.rhs.iter().enumerate() {
            writeln!(out, "{i},{b}")?;
        }
        Ok(())
    }
}

struct Csr {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
}

impl Csr {
    fn mul(&self, x: &[f64], out: &mut [f64]) {
        for i in 0..self.n {
            let mut acc = 0.0;
            for idx in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[idx] * x[self.cols[idx]];
            }
            out[i] = acc;
        }
    }

    fn diag(&self, i: usize) -> f64 {
        for idx in self.row_ptr[i]..self.row_ptr[i + 1] {
            if self.cols[idx] == i {
                return self.vals[idx];
            }
        }
        0.0
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub mod dense {
    //! Dense Gaussian elimination with partial pivoting — the reference
    //! solver for small systems, written once and shared by the test suites.

    /// Solve A x = b destructively on copies; panics on singular input.
    pub fn solve_dense(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
        let n = b.len();
        assert!(a.len() == n && a.iter().all(|row| row.len() == n));
        let mut m: Vec<Vec<f64>> = a.to_vec();
        let mut x = b.to_vec();
        for col in 0..n {
            let pivot_row = (col..n)
                .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
                .unwrap();
            assert!(m[pivot_row][col] != 0.0, "singular matrix");
            m.swap(col, pivot_row);
            x.swap(col, pivot_row);
            for row in col + 1..n {
                let factor = m[row][col] / m[col][col];
                if factor == 0.0 {
                    continue;
                }
                for k in col..n {
                    m[row][k] -= factor * m[col][k];
                }
                x[row] -= factor * x[col];
            }
        }
        for col in (0..n).rev() {
            x[col] /= m[col][col];
            for row in 0..col {
                x[row] -= m[row][col] * x[col];
            }
        }
        x
    }

    /// Solve a triplet system with the dense path.
    pub fn solve_system(system: &super::SparseSystem) -> Vec<f64> {
        solve_dense(&system.to_dense(), system.rhs())
    }
}
