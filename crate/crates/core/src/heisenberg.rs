//! The fixed operator zoo on `C^d`: cyclic shift `S`, modulation `Ω`,
//! displacements `S^j Ω^k`, the Fourier matrix `F`, the diagonal `R`, the
//! order-3 matrix `Z = ζ^{d-1} R F`, and the index-negation permutation.
//!
//! Matrix entries are filled from closed-form phases, with every root of
//! unity computed as `exp` of an exactly reduced angle. Powers of `S` and
//! `Ω` never go through repeated multiplication, so there is no drift.

use num_complex::Complex64 as Cx;
use std::f64::consts::TAU;

use crate::cmatrix::{check_dim, modd, CMatrix};
use crate::error::Result;

/// The scalar constants attached to a dimension: `ω = e^{2πi/d}`,
/// `μ = e^{2πi/2d}`, `ζ = e^{2πi/24}`.
#[derive(Clone, Copy, Debug)]
pub struct RootConstants {
    pub d: usize,
}

impl RootConstants {
    pub fn new(d: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(RootConstants { d })
    }

    pub fn omega(&self) -> Cx {
        self.omega_pow(1)
    }

    pub fn mu(&self) -> Cx {
        self.mu_pow(1)
    }

    pub fn zeta(&self) -> Cx {
        zeta_pow(1)
    }

    /// `ω^n` with the exponent reduced mod `d` before the angle is formed.
    #[inline]
    pub fn omega_pow(&self, n: i64) -> Cx {
        let r = modd(n, self.d) as f64;
        Cx::from_polar(1.0, TAU * r / self.d as f64)
    }

    /// `μ^n` with the exponent reduced mod `2d`.
    #[inline]
    pub fn mu_pow(&self, n: i64) -> Cx {
        let r = modd(n, 2 * self.d) as f64;
        Cx::from_polar(1.0, TAU * r / (2.0 * self.d as f64))
    }
}

/// `ζ^n` where `ζ = e^{2πi/24}`, exponent reduced mod 24.
#[inline]
pub fn zeta_pow(n: i64) -> Cx {
    let r = modd(n, 24) as f64;
    Cx::from_polar(1.0, TAU * r / 24.0)
}

/// Cyclic shift: `S_{jk} = δ_{j,k+1}`, so `S e_k = e_{k+1}`.
pub fn shift_matrix(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    Ok(CMatrix::from_fn(d, |j, k| {
        if j == (k + 1) % d {
            Cx::new(1.0, 0.0)
        } else {
            Cx::new(0.0, 0.0)
        }
    }))
}

/// Modulation: `Ω = diag(ω^j)`.
pub fn omega_matrix(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    let rc = RootConstants { d };
    Ok(CMatrix::from_fn(d, |j, k| {
        if j == k {
            rc.omega_pow(j as i64)
        } else {
            Cx::new(0.0, 0.0)
        }
    }))
}

/// Displacement `S^j Ω^k`, entrywise: `(S^j Ω^k)_{ab} = δ_{a,b+j} ω^{kb}`.
///
/// `j` and `k` may be negative; they are reduced mod `d`.
pub fn displacement(d: usize, j: i64, k: i64) -> Result<CMatrix> {
    check_dim(d)?;
    let rc = RootConstants { d };
    let jr = modd(j, d);
    Ok(CMatrix::from_fn(d, |a, b| {
        if a == (b + jr) % d {
            rc.omega_pow(k * b as i64)
        } else {
            Cx::new(0.0, 0.0)
        }
    }))
}

/// Fourier matrix `F_{jk} = ω^{jk} / sqrt(d)`; unitary with `F^4 = I`.
pub fn fourier_matrix(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    let rc = RootConstants { d };
    let s = 1.0 / (d as f64).sqrt();
    Ok(CMatrix::from_fn(d, |j, k| rc.omega_pow((j * k) as i64) * s))
}

/// Diagonal `R = diag(μ^{j(j+d)})`; satisfies `R^{2d} = I` and commutes
/// with the index-negation permutation `F^2`.
pub fn r_matrix(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    let rc = RootConstants { d };
    Ok(CMatrix::from_fn(d, |j, k| {
        if j == k {
            rc.mu_pow((j * (j + d)) as i64)
        } else {
            Cx::new(0.0, 0.0)
        }
    }))
}

/// `Z = ζ^{d-1} R F`, the order-3 element: `Z^3 = I`.
///
/// Entrywise `Z_{jk} = ζ^{d-1} μ^{j(j+d)} ω^{jk} / sqrt(d)`.
pub fn zauner_matrix(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    let rc = RootConstants { d };
    let scale = zeta_pow(d as i64 - 1) / (d as f64).sqrt();
    Ok(CMatrix::from_fn(d, |j, k| {
        scale * rc.mu_pow((j * (j + d)) as i64) * rc.omega_pow((j * k) as i64)
    }))
}

/// Index negation `P_{-1}: e_k -> e_{-k}`; equals `F^2`.
pub fn index_negation(d: usize) -> Result<CMatrix> {
    check_dim(d)?;
    Ok(CMatrix::from_fn(d, |j, k| {
        if j == modd(-(k as i64), d) {
            Cx::new(1.0, 0.0)
        } else {
            Cx::new(0.0, 0.0)
        }
    }))
}
