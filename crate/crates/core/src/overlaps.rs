//! Overlap tables and the fiducial-projector reconstruction.
//!
//! The overlap table of a unit vector `v` collects the Frobenius pairings of
//! the projector `v v*` against the displacement basis,
//!
//! ```text
//! c_{jk} = <v v*, S^j Ω^k>_F = tr(v v* (S^j Ω^k)^*) ,
//! ```
//!
//! and the tight-frame expansion recovers the projector from the table:
//! `v v* = (1/d) Σ_{jk} c_{jk} S^j Ω^k`. On tables coming from a vector the
//! entries satisfy the symmetry `c_{jk} = ω^{jk} conj(c_{-j,-k})`, `c_00 = 1`,
//! and, precisely when the orbit of `v` is equiangular,
//! `|c_{jk}|^2 = 1/(d+1)` off the origin together with the quartic trace
//! identity `tr((Tc)^4) = 1`. Those four residuals are what
//! [`check_conditions`] reports.

use num_complex::Complex64 as Cx;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{check_dim, modd, vec_norm, CMatrix};
use crate::error::{Result, SicError};
use crate::heisenberg::RootConstants;

/// Default tolerance for the structural conditions (i)-(iii).
pub const STRUCTURAL_TOL: f64 = 1e-9;
/// Default tolerance for the quartic trace condition (iv); accumulation over
/// `d^2` terms makes it slightly looser than the structural one.
pub const QUARTIC_TOL: f64 = 1e-8;

/// A unit vector in `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Fiducial {
    v: Vec<Cx>,
}

impl Fiducial {
    /// Requires `||v|| = 1` within `1e-9`.
    pub fn new(v: Vec<Cx>) -> Result<Self> {
        check_dim(v.len())?;
        if v.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SicError::NonFinite);
        }
        let norm = vec_norm(&v);
        if (norm - 1.0).abs() > 1e-9 {
            return Err(SicError::NotUnit { norm, tol: 1e-9 });
        }
        Ok(Fiducial { v })
    }

    /// Normalizes a nonzero vector.
    pub fn from_unnormalized(v: Vec<Cx>) -> Result<Self> {
        check_dim(v.len())?;
        let norm = vec_norm(&v);
        if norm < 1e-300 || !norm.is_finite() {
            return Err(SicError::NonFinite);
        }
        Ok(Fiducial {
            v: v.into_iter().map(|z| z / norm).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    pub fn coords(&self) -> &[Cx] {
        &self.v
    }

    pub fn projector(&self) -> CMatrix {
        CMatrix::outer(&self.v)
    }
}

impl AsRef<[Cx]> for Fiducial {
    fn as_ref(&self) -> &[Cx] {
        &self.v
    }
}

/// The table `c in C^{Z_d x Z_d}`, indexed mod `d` in both slots.
#[derive(Clone, Debug, PartialEq)]
pub struct OverlapTable {
    d: usize,
    c: Vec<Cx>,
}

impl OverlapTable {
    pub fn from_fn(d: usize, mut f: impl FnMut(usize, usize) -> Cx) -> Result<Self> {
        check_dim(d)?;
        let mut c = Vec::with_capacity(d * d);
        for j in 0..d {
            for k in 0..d {
                c.push(f(j, k));
            }
        }
        Ok(OverlapTable { d, c })
    }

    pub fn from_matrix(m: &CMatrix) -> Result<Self> {
        check_dim(m.dim())?;
        Ok(OverlapTable {
            d: m.dim(),
            c: m.entries().to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn at(&self, j: i64, k: i64) -> Cx {
        self.c[modd(j, self.d) * self.d + modd(k, self.d)]
    }

    pub fn entries(&self) -> &[Cx] {
        &self.c
    }

    pub fn as_matrix(&self) -> CMatrix {
        CMatrix::from_fn(self.d, |j, k| self.c[j * self.d + k])
    }

    pub fn max_abs_diff(&self, rhs: &OverlapTable) -> f64 {
        assert_eq!(self.d, rhs.d);
        self.c
            .iter()
            .zip(&rhs.c)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Entrywise conjugate-symmetry residual of condition (i):
    /// `max |c_{jk} - ω^{jk} conj(c_{-j,-k})|`.
    pub fn hermitian_residual(&self) -> f64 {
        let rc = RootConstants { d: self.d };
        let mut worst = 0.0f64;
        for j in 0..self.d as i64 {
            for k in 0..self.d as i64 {
                let gap = (self.at(j, k) - rc.omega_pow(j * k) * self.at(-j, -k).conj()).norm();
                worst = worst.max(gap);
            }
        }
        worst
    }

    /// `|c_00 - 1|`.
    pub fn norm_residual(&self) -> f64 {
        (self.at(0, 0) - Cx::new(1.0, 0.0)).norm()
    }

    /// `max_{(j,k) != 0} | |c_{jk}|^2 - 1/(d+1) |`.
    pub fn torus_residual(&self) -> f64 {
        let target = 1.0 / (self.d as f64 + 1.0);
        let mut worst = 0.0f64;
        for j in 0..self.d {
            for k in 0..self.d {
                if (j, k) == (0, 0) {
                    continue;
                }
                worst = worst.max((self.at(j as i64, k as i64).norm_sqr() - target).abs());
            }
        }
        worst
    }
}

/// Structural and quartic residuals of a candidate table.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub residual_hermitian: f64,
    pub residual_norm: f64,
    pub residual_torus: f64,
    pub residual_quartic: f64,
    pub pass: bool,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn max_residual(&self) -> f64 {
        self.residual_hermitian
            .max(self.residual_norm)
            .max(self.residual_torus)
            .max(self.residual_quartic)
    }
}

/// Overlaps of a unit vector: `c_{jk} = Σ_a conj(v_a) ω^{-ka} v_{a+j}`.
pub fn overlaps_from_fiducial(v: &Fiducial) -> OverlapTable {
    let d = v.dim();
    let rc = RootConstants { d };
    let vs = v.coords();
    OverlapTable::from_fn(d, |j, k| {
        (0..d)
            .map(|a| vs[a].conj() * rc.omega_pow(-((k * a) as i64)) * vs[(a + j) % d])
            .sum()
    })
    .expect("dimension already validated")
}

/// Tight-frame reconstruction `Tc = (1/d) Σ_{jk} c_{jk} S^j Ω^k`.
///
/// Linear in the table; for `c = overlaps_from_fiducial(v)` it returns the
/// projector `v v*` exactly (up to rounding).
pub fn reconstruct_projector(c: &OverlapTable) -> CMatrix {
    let d = c.dim();
    let rc = RootConstants { d };
    let inv_d = 1.0 / d as f64;
    CMatrix::from_fn(d, |a, b| {
        let mut acc = Cx::new(0.0, 0.0);
        for k in 0..d as i64 {
            acc += c.at(a as i64 - b as i64, k) * rc.omega_pow(k * b as i64);
        }
        acc * inv_d
    })
}

/// The phase-twisted companion `Lc = (1/d) Σ_{jk} c_{jk} S^{-j} Ω^{-k}` of
/// the reconstruction, applied to a table. See [`crate::transform`] for its
/// finite-order theory.
pub fn reconstruct_twisted(c: &OverlapTable) -> CMatrix {
    crate::transform::l_apply(&c.as_matrix())
}

/// Residuals of the four characterizing conditions at tolerance `tol`.
pub fn check_conditions(c: &OverlapTable, tol: f64) -> VerificationReport {
    let t = reconstruct_projector(c);
    let t4 = t.pow(4);
    let residual_quartic = (t4.trace() - Cx::new(1.0, 0.0)).norm();
    let report = VerificationReport {
        residual_hermitian: c.hermitian_residual(),
        residual_norm: c.norm_residual(),
        residual_torus: c.torus_residual(),
        residual_quartic,
        pass: false,
        tolerance: tol,
    };
    VerificationReport {
        pass: report.max_residual() <= tol,
        ..report
    }
}

/// `tr(Tc)`, `tr((Tc)^2)`, `tr((Tc)^4)` for a table satisfying the
/// structural conditions (i)-(iii). The first two equal 1 unconditionally on
/// such tables; the quartic trace reaches 1 exactly at rank one.
///
/// Errors if the structural residuals exceed `1e-9`.
pub fn check_trace_powers(c: &OverlapTable) -> Result<(Cx, Cx, Cx)> {
    for (which, r) in [
        ("hermitian symmetry (i)", c.hermitian_residual()),
        ("normalization (ii)", c.norm_residual()),
        ("torus moduli (iii)", c.torus_residual()),
    ] {
        if r > STRUCTURAL_TOL {
            return Err(SicError::ConditionsViolated {
                which,
                residual: r,
                tol: STRUCTURAL_TOL,
            });
        }
    }
    let t = reconstruct_projector(c);
    let t2 = t.matmul(&t);
    let t4 = t2.matmul(&t2);
    Ok((t.trace(), t2.trace(), t4.trace()))
}

/// Threshold on `(Tc)_{00}` below which extraction refuses to anchor at
/// coordinate zero.
pub const ANCHOR_TOL: f64 = 1e-8;

/// Recover the fiducial from a certified table via row sums:
/// the `j`-th row sum of `c` equals `d conj(v_0) v_j`.
///
/// Preconditions: the table passes [`check_conditions`] at the default
/// tolerances, and `(Tc)_{00} > 1e-8`. When the anchor coordinate vanishes,
/// the caller should translate the table by a shift generator (which moves a
/// nonzero coordinate into slot zero) and retry.
pub fn extract_fiducial(c: &OverlapTable) -> Result<Fiducial> {
    let d = c.dim();
    let report = check_conditions(c, QUARTIC_TOL);
    if !report.pass {
        return Err(SicError::ConditionsViolated {
            which: "table is not a certified overlap table",
            residual: report.max_residual(),
            tol: QUARTIC_TOL,
        });
    }
    let row0: Cx = (0..d as i64).map(|k| c.at(0, k)).sum();
    let v0_sq = row0.re / d as f64; // = (Tc)_{00} = |v_0|^2
    if v0_sq <= ANCHOR_TOL {
        return Err(SicError::ZeroAnchor {
            index: 0,
            value: v0_sq,
        });
    }
    let v0 = v0_sq.sqrt();
    let v: Vec<Cx> = (0..d)
        .map(|j| {
            let s: Cx = (0..d as i64).map(|k| c.at(j as i64, k)).sum();
            s / (d as f64 * v0)
        })
        .collect();
    // v_0 = v0 > 0 by construction, so the phase convention (first nonzero
    // coordinate real positive) holds; normalize away rounding.
    Fiducial::from_unnormalized(v)
}

/// The quartic frame functional `(1/d^2) Σ_{jk} |<S^j Ω^k v, v>|^4`.
///
/// Bounded below by `2/(d(d+1))` on unit vectors, with equality exactly at
/// equiangular orbits.
pub fn frame_potential(v: &Fiducial) -> f64 {
    let c = overlaps_from_fiducial(v);
    let d = v.dim() as f64;
    c.entries()
        .iter()
        .map(|z| z.norm_sqr().powi(2))
        .sum::<f64>()
        / (d * d)
}

/// The global minimum `2/(d(d+1))` of the frame potential.
pub fn potential_bound(d: usize) -> f64 {
    2.0 / (d as f64 * (d as f64 + 1.0))
}

/// `Σ_r v_r conj(v_{r+s}) conj(v_{r+t}) v_{r+s+t}`.
///
/// For an equiangular orbit this equals `0` when `s, t != 0`, `1/(d+1)` when
/// exactly one of them is zero, and `2/(d+1)` at `(0, 0)`.
pub fn quartic_row_sums(v: &Fiducial, s: i64, t: i64) -> Cx {
    let d = v.dim();
    let vs = v.coords();
    let (su, tu) = (modd(s, d), modd(t, d));
    (0..d)
        .map(|r| vs[r] * vs[(r + su) % d].conj() * vs[(r + tu) % d].conj() * vs[(r + su + tu) % d])
        .sum()
}

/// A random table satisfying conditions (i)-(iii) exactly by construction:
/// unit `c_00`, all other moduli `1/sqrt(d+1)`, phases random subject to the
/// conjugate symmetry. Self-paired entries (`2j ≡ 2k ≡ 0`) get one of their
/// two admissible phases.
pub fn random_torus_table<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<OverlapTable> {
    check_dim(d)?;
    let rc = RootConstants { d };
    let modulus = 1.0 / ((d as f64) + 1.0).sqrt();
    let mut c = vec![Cx::new(0.0, 0.0); d * d];
    let mut done = vec![false; d * d];
    c[0] = Cx::new(1.0, 0.0);
    done[0] = true;
    for j in 0..d {
        for k in 0..d {
            if done[j * d + k] {
                continue;
            }
            let (nj, nk) = (modd(-(j as i64), d), modd(-(k as i64), d));
            if (nj, nk) == (j, k) {
                // c = ω^{jk} conj(c) pins the phase up to a sign
                let alpha = std::f64::consts::PI * (j * k) as f64 / d as f64
                    + if rng.random::<bool>() {
                        std::f64::consts::PI
                    } else {
                        0.0
                    };
                c[j * d + k] = Cx::from_polar(modulus, alpha);
                done[j * d + k] = true;
            } else {
                let z = Cx::from_polar(modulus, rng.random_range(0.0..std::f64::consts::TAU));
                c[j * d + k] = z;
                c[nj * d + nk] = rc.omega_pow((j * k) as i64) * z.conj();
                done[j * d + k] = true;
                done[nj * d + nk] = true;
            }
        }
    }
    Ok(OverlapTable { d, c })
}

/// The eight `d = 2` sign-choice tables: `c_01, c_10 in {±1/sqrt3}`,
/// `c_11 in {±i/sqrt3}`. All eight are certified tables.
pub fn d2_sign_table(s01: i8, s10: i8, s11: i8) -> OverlapTable {
    let r = 1.0 / 3f64.sqrt();
    OverlapTable::from_fn(2, |j, k| match (j, k) {
        (0, 0) => Cx::new(1.0, 0.0),
        (0, 1) => Cx::new(s01 as f64 * r, 0.0),
        (1, 0) => Cx::new(s10 as f64 * r, 0.0),
        _ => Cx::new(0.0, s11 as f64 * r),
    })
    .expect("d = 2")
}

/// The `d = 2` fiducial `(sqrt3 + 1, 1 + i) / sqrt(2 (3 + sqrt3))`, whose
/// table is the all-`+` sign choice.
pub fn d2_plus_fiducial() -> Fiducial {
    let s = 1.0 / (2.0 * (3.0 + 3f64.sqrt())).sqrt();
    Fiducial::new(vec![Cx::new((3f64.sqrt() + 1.0) * s, 0.0), Cx::new(s, s)])
        .expect("unit by construction")
}
