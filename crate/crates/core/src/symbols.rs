//! Row symbols of an overlap table on the `d`-th roots of unity.
//!
//! The `j`-th symbol is the generating polynomial of row `j` evaluated on
//! the root grid,
//!
//! ```text
//! p_j(ω^k) = Σ_r c_{jr} ω^{rk} ,
//! ```
//!
//! and it ties the table to its reconstruction through the linkage
//! `p_{j-k}(ω^k) = d (Tc)_{jk}`. Rank-oneness of `Tc`, the Hermitian
//! symmetry of the table, a Riesz-type factorization
//! `|p_j(z)|^2 = p_0(z) p_0(ω^j z)` and the product invariant
//! `Π_k p_j(ω^k) = Π_k p_0(ω^k)` all become statements about these `d^2`
//! values. Symbols are stored only on the grid: a polynomial of degree
//! `< d` is determined by its values there, and the grid avoids any degree
//! bookkeeping.

use num_complex::Complex64 as Cx;

use crate::cmatrix::modd;
use crate::error::{Result, SicError};
use crate::heisenberg::RootConstants;
use crate::overlaps::OverlapTable;

/// All `d^2` symbol values `p_j(ω^k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolTable {
    d: usize,
    p: Vec<Cx>,
}

impl SymbolTable {
    pub fn dim(&self) -> usize {
        self.d
    }

    /// `p_j(ω^k)`, indices reduced mod `d`.
    #[inline]
    pub fn at(&self, j: i64, k: i64) -> Cx {
        self.p[modd(j, self.d) * self.d + modd(k, self.d)]
    }

    pub fn values(&self) -> &[Cx] {
        &self.p
    }
}

/// Evaluate every row polynomial on the root grid.
pub fn symbols_from_table(c: &OverlapTable) -> SymbolTable {
    let d = c.dim();
    let rc = RootConstants { d };
    let mut p = Vec::with_capacity(d * d);
    for j in 0..d as i64 {
        for k in 0..d as i64 {
            p.push(
                (0..d as i64)
                    .map(|r| c.at(j, r) * rc.omega_pow(r * k))
                    .sum(),
            );
        }
    }
    SymbolTable { d, p }
}

/// Invert the evaluation: `c_{jr} = (1/d) Σ_k p_j(ω^k) ω^{-rk}`.
pub fn table_from_symbols(p: &SymbolTable) -> OverlapTable {
    let d = p.dim();
    let rc = RootConstants { d };
    let inv_d = 1.0 / d as f64;
    OverlapTable::from_fn(d, |j, r| {
        (0..d as i64)
            .map(|k| p.at(j as i64, k) * rc.omega_pow(-(r as i64) * k))
            .sum::<Cx>()
            * inv_d
    })
    .expect("dimension preserved")
}

/// Outcome of the symbol rank-one test at anchor `m`.
#[derive(Clone, Copy, Debug)]
pub struct RankOne {
    pub anchor: usize,
    /// `p_0(ω^m) = d (Tc)_{mm}`, necessarily real for Hermitian tables.
    pub anchor_value: f64,
    /// max gap of `p_{j-k}(ω^k) p_0(ω^m) = p_{j-m}(ω^m) conj(p_{k-m}(ω^m))`
    pub residual: f64,
    pub pass: bool,
}

/// Minimum admissible `p_0(ω^m)` when the caller pins the anchor.
pub const RANK_ONE_ANCHOR_TOL: f64 = 1e-8;

/// Test whether `Tc` is a rank-one projector with `v_m != 0`, entirely in
/// symbol values: requires `p_0(ω^m) > 0` together with the cross-product
/// identity `p_{j-k}(ω^k) p_0(ω^m) = p_{j-m}(ω^m) conj(p_{k-m}(ω^m))`.
pub fn rank_one_at(c: &OverlapTable, m: usize, tol: f64) -> Result<RankOne> {
    let d = c.dim();
    let p = symbols_from_table(c);
    let m = m % d;
    let p0m = p.at(0, m as i64);
    if p0m.re <= RANK_ONE_ANCHOR_TOL {
        return Err(SicError::ZeroAnchor {
            index: m,
            value: p0m.re,
        });
    }
    let mut residual = 0.0f64;
    for j in 0..d as i64 {
        for k in 0..d as i64 {
            let lhs = p.at(j - k, k) * p0m;
            let rhs = p.at(j - m as i64, m as i64) * p.at(k - m as i64, m as i64).conj();
            residual = residual.max((lhs - rhs).norm());
        }
    }
    Ok(RankOne {
        anchor: m,
        anchor_value: p0m.re,
        residual,
        pass: p0m.re > 0.0 && residual <= tol,
    })
}

/// Scan anchors `m = 0, 1, ...` until `p_0(ω^m) > 1/(2d)` and test there.
/// Some coordinate of a unit vector has modulus at least `1/sqrt(d)`, so a
/// genuine projector always offers such an anchor.
pub fn rank_one_scan(c: &OverlapTable, tol: f64) -> Result<RankOne> {
    let d = c.dim();
    let p = symbols_from_table(c);
    let threshold = 1.0 / (2.0 * d as f64);
    for m in 0..d {
        if p.at(0, m as i64).re > threshold {
            return rank_one_at(c, m, tol);
        }
    }
    Err(SicError::ZeroAnchor {
        index: d - 1,
        value: p.at(0, d as i64 - 1).re,
    })
}

/// max over the grid of `| |p_j(z)|^2 - p_0(z) p_0(ω^j z) |`.
///
/// Zero (to rounding) on tables that pass the rank-one test at anchor 0.
pub fn riesz_check(c: &OverlapTable) -> f64 {
    let d = c.dim();
    let p = symbols_from_table(c);
    let mut worst = 0.0f64;
    for j in 0..d as i64 {
        for k in 0..d as i64 {
            let lhs = Cx::new(p.at(j, k).norm_sqr(), 0.0);
            let rhs = p.at(0, k) * p.at(0, j + k);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}

/// `max_j | Π_k p_j(ω^k) - Π_k p_0(ω^k) |`.
pub fn invariant_product_check(c: &OverlapTable) -> f64 {
    let d = c.dim();
    let p = symbols_from_table(c);
    let prod = |j: i64| -> Cx {
        (0..d as i64)
            .map(|k| p.at(j, k))
            .fold(Cx::new(1.0, 0.0), |acc, z| acc * z)
    };
    let base = prod(0);
    (1..d as i64)
        .map(|j| (prod(j) - base).norm())
        .fold(0.0, f64::max)
}

/// `max | conj(p_j(ω^k)) - p_{-j}(ω^{j+k}) |`; vanishes exactly when the
/// table has the conjugate symmetry (i), i.e. when `Tc` is Hermitian.
pub fn hermitian_symbol_check(c: &OverlapTable) -> f64 {
    let d = c.dim();
    let p = symbols_from_table(c);
    let mut worst = 0.0f64;
    for j in 0..d as i64 {
        for k in 0..d as i64 {
            worst = worst.max((p.at(j, k).conj() - p.at(-j, j + k)).norm());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::overlaps::{
        d2_sign_table, overlaps_from_fiducial, random_torus_table, reconstruct_projector, Fiducial,
        OverlapTable,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn random_fiducial<R: Rng>(d: usize, rng: &mut R) -> Fiducial {
        let v: Vec<Cx> = (0..d)
            .map(|_| Cx::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        Fiducial::from_unnormalized(v).unwrap()
    }

    /// The `d = 3` deltoid-family table at the cusp, frozen from the
    /// closed-form construction (all row-1 entries 1/2).
    fn d3_family_cusp_table() -> OverlapTable {
        let rc = RootConstants { d: 3 };
        let w = rc.omega();
        let w2 = rc.omega_pow(2);
        let h = Cx::new(0.5, 0.0);
        OverlapTable::from_fn(3, move |j, k| match (j, k) {
            (0, 0) => Cx::new(1.0, 0.0),
            (0, 1) => -w * 0.5,
            (0, 2) => -w2 * 0.5,
            (1, _) => h,
            (2, 0) => h,
            (2, 1) => w2 * 0.5,
            (2, 2) => w * 0.5,
            _ => unreachable!(),
        })
        .unwrap()
    }

    #[test]
    fn origin_supported_table_symbols() {
        let c = OverlapTable::from_fn(4, |j, k| {
            if (j, k) == (0, 0) {
                Cx::new(1.0, 0.0)
            } else {
                Cx::new(0.0, 0.0)
            }
        })
        .unwrap();
        let p = symbols_from_table(&c);
        for k in 0..4 {
            assert!((p.at(0, k) - Cx::new(1.0, 0.0)).norm() < 1e-15);
            for j in 1..4 {
                assert!(p.at(j, k).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn linkage_to_reconstruction() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for d in 2..=6 {
            let c = overlaps_from_fiducial(&random_fiducial(d, &mut rng));
            let p = symbols_from_table(&c);
            let t = reconstruct_projector(&c);
            for j in 0..d as i64 {
                for k in 0..d as i64 {
                    let gap = (p.at(j - k, k) - t.at(j, k) * d as f64).norm();
                    assert!(gap < 1e-12, "linkage off at d={d} ({j},{k}): {gap:.2e}");
                }
            }
        }
    }

    #[test]
    fn symbol_table_bijection() {
        let mut rng = ChaCha12Rng::seed_from_u64(22);
        for d in 2..=6 {
            let c = random_torus_table(d, &mut rng).unwrap();
            let back = table_from_symbols(&symbols_from_table(&c));
            assert!(back.max_abs_diff(&c) < 1e-12);
        }
    }

    #[test]
    fn hermitian_condition_equivalence() {
        let mut rng = ChaCha12Rng::seed_from_u64(23);
        // tables from vectors satisfy (i) exactly
        for d in 2..=5 {
            let c = overlaps_from_fiducial(&random_fiducial(d, &mut rng));
            assert!(hermitian_symbol_check(&c) < 1e-13);
        }
        // single-entry perturbation shows through linearly
        let c = overlaps_from_fiducial(&random_fiducial(3, &mut rng));
        let bumped = OverlapTable::from_fn(3, |j, k| {
            c.at(j as i64, k as i64)
                + if (j, k) == (1, 2) {
                    Cx::new(0.1, 0.0)
                } else {
                    Cx::new(0.0, 0.0)
                }
        })
        .unwrap();
        assert!(hermitian_symbol_check(&bumped) >= 0.09);
        // and the symbol residual tracks the direct entrywise residual
        assert!(bumped.hermitian_residual() >= 0.09);
    }

    #[test]
    fn rank_one_on_certified_tables() {
        let r = rank_one_at(&d2_sign_table(1, 1, 1), 0, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
        let r = rank_one_at(&d3_family_cusp_table(), 0, 1e-10).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn rank_one_on_basis_vector_tables() {
        // v = e_1 is rank one with v_0 = 0: anchor 0 errors, anchor 1 passes
        let e1 = Fiducial::new(vec![Cx::new(0.0, 0.0), Cx::new(1.0, 0.0)]).unwrap();
        let c = overlaps_from_fiducial(&e1);
        assert!(matches!(
            rank_one_at(&c, 0, 1e-10),
            Err(SicError::ZeroAnchor { index: 0, .. })
        ));
        let r = rank_one_at(&c, 1, 1e-10).unwrap();
        assert!(r.pass);
        // the scan finds the good anchor on its own
        let r = rank_one_scan(&c, 1e-10).unwrap();
        assert_eq!(r.anchor, 1);
        assert!(r.pass);
    }

    #[test]
    fn rank_one_fails_on_random_torus_tables() {
        let mut rng = ChaCha12Rng::seed_from_u64(24);
        for d in 3..=5 {
            let c = random_torus_table(d, &mut rng).unwrap();
            let r = rank_one_scan(&c, 1e-8).unwrap();
            assert!(!r.pass);
            assert!(r.residual > 1e-3, "generic residual should be large");
            // eigenvalue oracle agrees: top eigenvalue well below 1
            let ev = reconstruct_projector(&c).hermitian_eigenvalues();
            assert!((ev[0] - 1.0).abs() > 1e-3);
        }
    }

    #[test]
    fn riesz_and_invariant_on_certified_tables() {
        for c in [d2_sign_table(1, 1, 1), d3_family_cusp_table()] {
            assert!(riesz_check(&c) < 1e-10);
            assert!(invariant_product_check(&c) < 1e-9);
        }
    }

    #[test]
    fn riesz_and_invariant_reject_random_tables() {
        let mut rng = ChaCha12Rng::seed_from_u64(25);
        let c = random_torus_table(4, &mut rng).unwrap();
        assert!(riesz_check(&c) > 1e-3);
        assert!(invariant_product_check(&c) > 1e-3);
    }
}
