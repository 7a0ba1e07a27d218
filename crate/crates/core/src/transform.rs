//! The transform pair `T` and `L` on `C^{Z_d x Z_d}` and their finite-order
//! identities.
//!
//! Both operators pair a table against the displacement basis,
//!
//! ```text
//! T c = (1/d) Σ_{jk} c_{jk} (S^j Ω^k)^*        (adjoint coefficients)
//! L c = (1/d) Σ_{jk} c_{jk} S^{-j} Ω^{-k}      (phase-twisted variant)
//! ```
//!
//! Scaled by `sqrt(d)` each is unitary on the `d^2`-dimensional table space,
//! and, unusually for a Fourier-type transform, of finite order:
//! `(sqrt(d) T)^{6d} = (-1)^{d(d-1)/2} I` and `(sqrt(d) L)^{4d} = I`.
//! This module builds the `d^2 x d^2` matrix representations (column-major
//! vectorization, i.e. tables stacked column by column) and measures the
//! residuals of these identities together with the block structure that
//! drives them.

use num_complex::Complex64 as Cx;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{check_dim, CMatrix};
use crate::error::Result;
use crate::heisenberg::{fourier_matrix, r_matrix, zeta_pow, RootConstants};

/// Which of the two transforms to represent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformKind {
    T,
    L,
}

/// `T c` with `(Tc)_{ab} = (1/d) Σ_k c_{b-a,k} ω^{-ka}`.
pub fn t_apply(c: &CMatrix) -> CMatrix {
    let d = c.dim();
    let rc = RootConstants { d };
    let inv_d = 1.0 / d as f64;
    CMatrix::from_fn(d, |a, b| {
        let mut acc = Cx::new(0.0, 0.0);
        for k in 0..d as i64 {
            acc += c.at(b as i64 - a as i64, k) * rc.omega_pow(-k * a as i64);
        }
        acc * inv_d
    })
}

/// `L c` with `(Lc)_{ab} = (1/d) Σ_k c_{b-a,k} ω^{-kb}`.
pub fn l_apply(c: &CMatrix) -> CMatrix {
    let d = c.dim();
    let rc = RootConstants { d };
    let inv_d = 1.0 / d as f64;
    CMatrix::from_fn(d, |a, b| {
        let mut acc = Cx::new(0.0, 0.0);
        for k in 0..d as i64 {
            acc += c.at(b as i64 - a as i64, k) * rc.omega_pow(-k * b as i64);
        }
        acc * inv_d
    })
}

/// Hadamard (entrywise) product.
pub fn hadamard(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.dim(), b.dim());
    CMatrix::from_fn(a.dim(), |j, k| a.get(j, k) * b.get(j, k))
}

/// Column-major vectorization offset: table entry `(row, col)` sits at
/// coordinate `col * d + row`.
#[inline]
fn vec_index(d: usize, row: usize, col: usize) -> usize {
    col * d + row
}

/// The `d^2 x d^2` matrix of `sqrt(d) * op` in the column-stacked basis.
pub fn matrix_rep(op: TransformKind, d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    let n = d * d;
    let scale = (d as f64).sqrt();
    let mut big = CMatrix::zeros(n);
    for m in 0..n {
        let (row, col) = (m % d, m / d);
        let mut basis = CMatrix::zeros(d);
        basis.set(row, col, Cx::new(1.0, 0.0));
        let image = match op {
            TransformKind::T => t_apply(&basis),
            TransformKind::L => l_apply(&basis),
        };
        for r in 0..d {
            for s in 0..d {
                big.set(vec_index(d, r, s), m, image.get(r, s) * scale);
            }
        }
    }
    Ok(big)
}

/// Extract block `(j, k)` of a `d^2 x d^2` matrix in the column-stacked
/// block convention.
pub fn block(big: &CMatrix, d: usize, j: usize, k: usize) -> CMatrix {
    CMatrix::from_fn(d, |a, b| big.get(j * d + a, k * d + b))
}

/// Closed form of the `(j, k)` block of `[sqrt(d) T]`:
/// `A_{jk} = (1/sqrt d) Ω^{-k} P_{-1} S^{-j}`, entrywise
/// `(A_{jk})_{ab} = ω^{-ak} δ_{a, j-b} / sqrt(d)`.
pub fn t_block_closed_form(d: usize, j: usize, k: usize) -> Result<CMatrix> {
    check_dim(d)?;
    let rc = RootConstants { d };
    let s = 1.0 / (d as f64).sqrt();
    Ok(CMatrix::from_fn(d, |a, b| {
        if a == crate::cmatrix::modd(j as i64 - b as i64, d) {
            rc.omega_pow(-((a * k) as i64)) * s
        } else {
            Cx::new(0.0, 0.0)
        }
    }))
}

pub fn sign_for_dim(d: usize) -> i32 {
    if (d * (d - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct TOrderCheck {
    pub d: usize,
    /// `(-1)^{d(d-1)/2}`
    pub sign: i32,
    /// `|| [sqrt(d) T]^{6d} - sign * I ||_F`
    pub residual: f64,
}

/// Verify `(sqrt(d) T)^{6d} = (-1)^{d(d-1)/2} I` by binary exponentiation of
/// the matrix representation.
pub fn verify_t_order(d: usize) -> Result<TOrderCheck> {
    let big = matrix_rep(TransformKind::T, d)?;
    let sign = sign_for_dim(d);
    let target = CMatrix::identity(d * d).scale(Cx::new(sign as f64, 0.0));
    let residual = big.pow(6 * d as u64).sub(&target).frob_norm();
    Ok(TOrderCheck { d, sign, residual })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LOrderCheck {
    pub d: usize,
    /// `|| [sqrt(d) L]^{4d} - I ||_F`
    pub residual: f64,
    /// worst gap of `(sqrt(d) L)^4 c = (F^* R^{-2} F) c` over random tables
    pub fourth_power_residual: f64,
}

/// Verify `(sqrt(d) L)^{4d} = I`, plus the fourth-power identity
/// `(sqrt(d) L)^4 c = (F^* R^{-2} F) c` (ordinary matrix product on the
/// left factor) on a few deterministic pseudo-random tables.
pub fn verify_l_order(d: usize) -> Result<LOrderCheck> {
    let big = matrix_rep(TransformKind::L, d)?;
    let residual = big
        .pow(4 * d as u64)
        .sub(&CMatrix::identity(d * d))
        .frob_norm();

    let f = fourier_matrix(d)?;
    let r2_inv = r_matrix(d)?.pow(2).adjoint(); // R is unitary: R^{-2} = (R^2)^*
    let mult = f.adjoint().matmul(&r2_inv).matmul(&f);
    let scale = (d as f64).sqrt();
    let mut worst = 0.0f64;
    for trial in 0..20 {
        let c = pseudo_table(d, trial);
        let mut lhs = c.clone();
        for _ in 0..4 {
            lhs = l_apply(&lhs).scale(Cx::new(scale, 0.0));
        }
        let rhs = mult.matmul(&c);
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    Ok(LOrderCheck {
        d,
        residual,
        fourth_power_residual: worst,
    })
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct R2fIdentityCheck {
    pub d: usize,
    /// gap of `(R^2 F)^2 = ζ^{-6(d-1)} (RF) R^{-2} (RF)^{-1}`
    pub conjugation_residual: f64,
    /// gap of `(R^2 F)^{2d} = (-1)^{d(d-1)/2} I`
    pub power_residual: f64,
}

/// The two-step identity behind the finite order of `T`.
pub fn verify_r2f_identities(d: usize) -> Result<R2fIdentityCheck> {
    let f = fourier_matrix(d)?;
    let r = r_matrix(d)?;
    let r2f = r.pow(2).matmul(&f);
    let rf = r.matmul(&f);
    let lhs = r2f.pow(2);
    let rhs = rf
        .matmul(&r.pow(2).adjoint())
        .matmul(&rf.adjoint())
        .scale(zeta_pow(-6 * (d as i64 - 1)));
    let conjugation_residual = lhs.sub(&rhs).frob_norm();

    let sign = sign_for_dim(d);
    let target = CMatrix::identity(d).scale(Cx::new(sign as f64, 0.0));
    let power_residual = r2f.pow(2 * d as u64).sub(&target).frob_norm();
    Ok(R2fIdentityCheck {
        d,
        conjugation_residual,
        power_residual,
    })
}

/// Deterministic filler table for identity checks (no RNG dependency here).
pub(crate) fn pseudo_table(d: usize, salt: usize) -> CMatrix {
    CMatrix::from_fn(d, |j, k| {
        let x = ((j * 31 + k * 17 + salt * 101) % 97) as f64 / 97.0 - 0.5;
        let y = ((j * 13 + k * 41 + salt * 59) % 89) as f64 / 89.0 - 0.5;
        Cx::new(x, y)
    })
}
