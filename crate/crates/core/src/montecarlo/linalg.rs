//! Small dense complex linear algebra for per-trial receiver computations.

use num_complex::Complex64 as C64;

/// ⟨x, y⟩ = Σ conj(x_i) y_i.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

pub fn norm_sqr(x: &[C64]) -> f64 {
    x.iter().map(|c| c.norm_sqr()).sum()
}

/// Removes from `x` its component along `dir` (not necessarily unit).
pub fn project_out(x: &[C64], dir: &[C64]) -> Vec<C64> {
    let scale = inner(dir, x) / norm_sqr(dir);
    x.iter().zip(dir).map(|(a, d)| a - scale * d).collect()
}

/// Orthonormal basis (columns, returned as vectors) of {v : a·v = 0}, i.e.
/// the orthogonal complement of conj(a), built by Gram–Schmidt over the
/// standard basis. Returns `n − 1` vectors for nonzero `a`.
pub fn null_space_of_row(a: &[C64]) -> Vec<Vec<C64>> {
    let n = a.len();
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(n);
    let lead: Vec<C64> = a.iter().map(|c| c.conj()).collect();
    let ln = norm_sqr(&lead).sqrt();
    basis.push(lead.iter().map(|c| c / ln).collect());
    for i in 0..n {
        let mut v = vec![C64::new(0.0, 0.0); n];
        v[i] = C64::new(1.0, 0.0);
        // two passes of modified Gram–Schmidt for numerical orthogonality
        for _ in 0..2 {
            for b in &basis {
                let c = inner(b, &v);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= c * bi;
                }
            }
        }
        let nv = norm_sqr(&v).sqrt();
        if nv > 1e-8 {
            basis.push(v.iter().map(|c| c / nv).collect());
        }
        if basis.len() == n {
            break;
        }
    }
    basis.remove(0);
    basis
}

/// Row-major square Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    pub n: usize,
    pub data: Vec<C64>,
}

impl HermitianMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    /// self += w · x x^H
    pub fn add_outer(&mut self, x: &[C64], w: f64) {
        let n = self.n;
        for i in 0..n {
            let xi = x[i] * w;
            for j in 0..n {
                self.data[i * n + j] += xi * x[j].conj();
            }
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i].re).sum()
    }

    pub fn add_ridge(&mut self, eps: f64) {
        for i in 0..self.n {
            self.data[i * self.n + i] += eps;
        }
    }

    /// x^H A x (real for Hermitian A).
    pub fn quad_form(&self, x: &[C64]) -> f64 {
        let n = self.n;
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            let mut row = C64::new(0.0, 0.0);
            for j in 0..n {
                row += self.data[i * n + j] * x[j];
            }
            acc += x[i].conj() * row;
        }
        acc.re
    }

    /// Lower Cholesky factor, or `None` if the matrix is not numerically
    /// positive definite.
    pub fn cholesky(&self) -> Option<Vec<C64>> {
        let n = self.n;
        let mut l = vec![C64::new(0.0, 0.0); n * n];
        let scale = self.trace().abs().max(f64::MIN_POSITIVE);
        for j in 0..n {
            let mut d = self.data[j * n + j].re;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if !(d > 1e-14 * scale) {
                return None;
            }
            let djj = d.sqrt();
            l[j * n + j] = C64::new(djj, 0.0);
            for i in (j + 1)..n {
                let mut s = self.data[i * n + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / djj;
            }
        }
        Some(l)
    }
}

/// g^H A^{-1} g given the lower Cholesky factor of A.
pub fn inverse_quad_form(chol: &[C64], n: usize, g: &[C64]) -> f64 {
    // forward solve L y = g, then g^H A^{-1} g = ‖y‖²
    let mut y = vec![C64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut s = g[i];
        for k in 0..i {
            s -= chol[i * n + k] * y[k];
        }
        y[i] = s / chol[i * n + i];
    }
    norm_sqr(&y)
}
