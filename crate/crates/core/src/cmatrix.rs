//! Dense square complex matrices with `Z_d`-periodic indexing.
//!
//! Everything in this crate lives in dimension small enough (`d <= ~50`,
//! `d^2 <= ~150` for operator representations) that a plain row-major
//! `Vec<Complex64>` beats any sparse or blocked scheme. Indices are always
//! reduced modulo the dimension, so `at(-1, k)` means row `d - 1`.

use nalgebra::DMatrix;
use num_complex::Complex64 as Cx;

use crate::error::{Result, SicError};

/// Reduce an integer index to its canonical representative in `[0, d)`.
#[inline]
pub fn modd(x: i64, d: usize) -> usize {
    x.rem_euclid(d as i64) as usize
}

/// A dense `d x d` complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Cx>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        CMatrix {
            dim,
            data: vec![Cx::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            m.data[j * dim + j] = Cx::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Cx) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                data.push(f(j, k));
            }
        }
        CMatrix { dim, data }
    }

    /// Rank-one projector `v v*`.
    pub fn outer(v: &[Cx]) -> Self {
        Self::from_fn(v.len(), |j, k| v[j] * v[k].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at `(j, k)` with indices reduced mod `d`.
    #[inline]
    pub fn at(&self, j: i64, k: i64) -> Cx {
        self.data[modd(j, self.dim) * self.dim + modd(k, self.dim)]
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> Cx {
        self.data[j * self.dim + k]
    }

    #[inline]
    pub fn set(&mut self, j: usize, k: usize, v: Cx) {
        self.data[j * self.dim + k] = v;
    }

    pub fn entries(&self) -> &[Cx] {
        &self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in matmul");
        let d = self.dim;
        let mut out = CMatrix::zeros(d);
        for j in 0..d {
            for t in 0..d {
                let a = self.data[j * d + t];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..d {
                    out.data[j * d + k] += a * rhs.data[t * d + k];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim);
        CMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: Cx) -> CMatrix {
        CMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn adjoint(&self) -> CMatrix {
        Self::from_fn(self.dim, |j, k| self.data[k * self.dim + j].conj())
    }

    pub fn trace(&self) -> Cx {
        (0..self.dim).map(|j| self.data[j * self.dim + j]).sum()
    }

    /// Frobenius pairing `tr(A B*)`.
    pub fn frob_inner(&self, rhs: &CMatrix) -> Cx {
        assert_eq!(self.dim, rhs.dim);
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn frob_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, rhs: &CMatrix) -> f64 {
        assert_eq!(self.dim, rhs.dim);
        self.data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `M^n` by binary exponentiation. Raw products, no renormalization,
    /// so residuals of order identities reflect honest accumulation.
    pub fn pow(&self, mut n: u64) -> CMatrix {
        let mut base = self.clone();
        let mut acc = CMatrix::identity(self.dim);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.matmul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.matmul(&base);
            }
        }
        acc
    }

    /// `||M* M - I||_F`, zero for a unitary matrix.
    pub fn unitarity_residual(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .sub(&CMatrix::identity(self.dim))
            .frob_norm()
    }

    pub fn hermitian_residual(&self) -> f64 {
        self.adjoint().max_abs_diff(self)
    }

    pub fn apply(&self, v: &[Cx]) -> Vec<Cx> {
        assert_eq!(v.len(), self.dim);
        let d = self.dim;
        (0..d)
            .map(|j| (0..d).map(|k| self.data[j * d + k] * v[k]).sum())
            .collect()
    }

    /// Eigenvalues of a Hermitian matrix, descending. The caller is expected
    /// to pass a matrix that is Hermitian up to rounding; used as a
    /// cross-check oracle, not on a hot path.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let d = self.dim;
        let m = DMatrix::from_fn(d, d, |r, c| self.data[r * d + c]);
        // symmetrize to kill rounding-level asymmetry before factorizing
        let h = (&m + m.adjoint()) * Cx::new(0.5, 0.0);
        let mut ev: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        ev
    }
}

pub(crate) fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(SicError::Dimension(d))
    } else {
        Ok(())
    }
}

/// `l2` norm of a complex vector.
pub fn vec_norm(v: &[Cx]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_max_abs_diff(a: &[Cx], b: &[Cx]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
