//! Numerical fiducial search by frame-potential minimization.
//!
//! The objective is the quartic functional
//! `F(v) = (1/d^2) Σ_{jk} |<S^j Ω^k v, v>|^4` on the unit sphere of `C^d`,
//! bounded below by `2/(d(d+1))` with equality exactly at the vectors whose
//! displacement orbit is equiangular. Each restart draws a random start
//! (optionally inside an eigenspace of the order-3 matrix `Z`), runs
//! projected gradient descent with Barzilai-Borwein steps, then polishes
//! with a limited-memory quasi-Newton phase. Restarts are independent,
//! seeded per index, and merged by smallest potential gap (ties by smaller
//! quartic residual, then by restart index), so reports are deterministic
//! for a fixed seed regardless of thread count.

use std::collections::VecDeque;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64 as Cx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::cmatrix::{modd, vec_norm, CMatrix};
use crate::error::{Result, SicError};
use crate::heisenberg::{zauner_matrix, RootConstants};
use crate::overlaps::{
    check_conditions, frame_potential, overlaps_from_fiducial, potential_bound,
    reconstruct_projector, Fiducial, OverlapTable, VerificationReport, QUARTIC_TOL,
};

/// What the restarts descend on.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ObjectiveKind {
    /// Frame potential over the unit sphere (2d real parameters).
    #[default]
    FramePotential,
    /// Experimental: quartic trace residual over the torus phases of the
    /// free table entries.
    QuarticTorus,
}

impl FromStr for ObjectiveKind {
    type Err = SicError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "potential" => Ok(ObjectiveKind::FramePotential),
            "quartic" => Ok(ObjectiveKind::QuarticTorus),
            other => Err(SicError::InvalidConfig(format!(
                "unknown objective {other:?} (expected \"potential\" or \"quartic\")"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub dim: usize,
    pub max_restarts: usize,
    /// Iteration budget per restart.
    pub max_iters: usize,
    pub target_gap: f64,
    pub rng_seed: u64,
    pub restrict_zauner: bool,
    pub objective: ObjectiveKind,
}

impl SearchConfig {
    pub fn new(dim: usize) -> Self {
        SearchConfig {
            dim,
            max_restarts: 64,
            max_iters: 3000,
            target_gap: 1e-11,
            rng_seed: 0,
            restrict_zauner: false,
            objective: ObjectiveKind::FramePotential,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(SicError::Dimension(self.dim));
        }
        if self.max_restarts == 0 {
            return Err(SicError::InvalidConfig("max_restarts must be >= 1".into()));
        }
        if self.target_gap <= 0.0 || self.target_gap.is_nan() {
            return Err(SicError::InvalidConfig("target_gap must be > 0".into()));
        }
        if self.max_iters == 0 {
            return Err(SicError::InvalidConfig("max_iters must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub dim: usize,
    pub success: bool,
    pub fiducial: Fiducial,
    /// `frame_potential(best) - 2/(d(d+1))`.
    pub potential_gap: f64,
    /// `|tr((Tc)^4) - 1|` of the best table.
    pub quartic_residual: f64,
    pub restarts_used: usize,
    pub iterations: u64,
    pub wall_time_secs: f64,
    pub table: OverlapTable,
    pub verification: VerificationReport,
}

/// Shared evaluation workspace: overlap, potential and gradient kernels for
/// a fixed dimension, all O(d^3) direct sums.
struct Workspace {
    d: usize,
    omega: Vec<Cx>, // ω^m for m in [0, d)
}

impl Workspace {
    fn new(d: usize) -> Self {
        let rc = RootConstants { d };
        Workspace {
            d,
            omega: (0..d as i64).map(|m| rc.omega_pow(m)).collect(),
        }
    }

    #[inline]
    fn om(&self, e: i64) -> Cx {
        self.omega[modd(e, self.d)]
    }

    /// `c_{jk}(v) = Σ_a conj(v_a) ω^{-ka} v_{a+j}`, defined for any `v`.
    fn overlap_matrix(&self, v: &[Cx]) -> Vec<Cx> {
        let d = self.d;
        let mut c = vec![Cx::new(0.0, 0.0); d * d];
        for j in 0..d {
            // correlation row, then evaluate its transform at each k
            let q: Vec<Cx> = (0..d).map(|a| v[a].conj() * v[(a + j) % d]).collect();
            for k in 0..d {
                let mut acc = Cx::new(0.0, 0.0);
                for (a, qa) in q.iter().enumerate() {
                    acc += qa * self.om(-((k * a) as i64));
                }
                c[j * d + k] = acc;
            }
        }
        c
    }

    fn potential(&self, v: &[Cx]) -> f64 {
        let c = self.overlap_matrix(v);
        c.iter().map(|z| z.norm_sqr() * z.norm_sqr()).sum::<f64>() / (self.d * self.d) as f64
    }

    /// Potential together with its Euclidean gradient (the derivative of the
    /// real function `F` on `C^d ~ R^{2d}`, i.e. `2 ∂F/∂conj(v)`).
    fn potential_and_gradient(&self, v: &[Cx]) -> (f64, Vec<Cx>) {
        let d = self.d;
        let c = self.overlap_matrix(v);
        let mut pot = 0.0;
        let mut g = vec![Cx::new(0.0, 0.0); d];
        for j in 0..d {
            for k in 0..d {
                let cjk = c[j * d + k];
                let a2 = cjk.norm_sqr();
                pot += a2 * a2;
                if a2 == 0.0 {
                    continue;
                }
                let w_adj = a2 * cjk.conj(); // pairs with (S^j Ω^k)^* v
                let w_fwd = a2 * cjk; //        pairs with  S^j Ω^k v
                for a in 0..d {
                    // ((S^j Ω^k)^* v)_a = ω^{-ka} v_{a+j}
                    g[a] += w_adj * self.om(-((k * a) as i64)) * v[(a + j) % d];
                    // (S^j Ω^k v)_a = ω^{k(a-j)} v_{a-j}
                    g[a] += w_fwd
                        * self.om(k as i64 * (a as i64 - j as i64))
                        * v[modd(a as i64 - j as i64, d)];
                }
            }
        }
        let scale = 4.0 / (d * d) as f64;
        for ga in g.iter_mut() {
            *ga *= scale;
        }
        (pot / (d * d) as f64, g)
    }
}

/// The frame potential as a function of an arbitrary (not necessarily unit)
/// vector; the quartic overlap sums extend off the sphere.
pub fn potential_value(v: &[Cx]) -> f64 {
    Workspace::new(v.len()).potential(v)
}

/// Euclidean gradient of [`potential_value`], suitable for comparison
/// against central finite differences in the real and imaginary parts.
pub fn potential_gradient_euclidean(v: &[Cx]) -> Vec<Cx> {
    Workspace::new(v.len()).potential_and_gradient(v).1
}

/// Gradient of the potential projected onto the tangent space of the unit
/// sphere at `v`; vanishes at critical points of the restricted functional.
pub fn potential_gradient(v: &Fiducial) -> Vec<Cx> {
    let g = potential_gradient_euclidean(v.coords());
    project_tangent(&g, v.coords())
}

fn project_tangent(g: &[Cx], v: &[Cx]) -> Vec<Cx> {
    let radial: f64 = v.iter().zip(g).map(|(a, b)| (a.conj() * b).re).sum();
    g.iter().zip(v).map(|(gi, vi)| gi - vi * radial).collect()
}

fn real_inner(a: &[Cx], b: &[Cx]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.conj() * y).re).sum()
}

fn normalize(v: &mut [Cx]) {
    let n = vec_norm(v);
    for z in v.iter_mut() {
        *z /= n;
    }
}

fn gaussian_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Cx> {
    (0..d)
        .map(|_| {
            // Box-Muller
            let u1: f64 = rng.random::<f64>().max(1e-300);
            let u2: f64 = rng.random();
            let r = (-2.0 * u1.ln()).sqrt();
            let t = std::f64::consts::TAU * u2;
            Cx::new(r * t.cos(), r * t.sin())
        })
        .collect()
}

/// Random unit vector inside an eigenspace of `Z`. The eigenvalues of the
/// order-3 matrix are cube roots of unity; the eigenprojector
/// `(1/3) Σ_p conj(λ)^p Z^p` applied to a Gaussian draw lands in the chosen
/// eigenspace. If that space turns out (numerically) empty, the draw falls
/// back to the eigenvalue with the largest projected mass.
pub fn zauner_restricted_start<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Vec<Cx>> {
    let z = zauner_matrix(d)?;
    let z2 = z.matmul(&z);
    let raw = gaussian_vector(d, rng);
    let zr = z.apply(&raw);
    let z2r = z2.apply(&raw);
    let root = Cx::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let project = |m: i64| -> Vec<Cx> {
        let l1 = root.powi(m as i32).conj();
        let l2 = root.powi(2 * m as i32).conj();
        (0..d)
            .map(|a| (raw[a] + l1 * zr[a] + l2 * z2r[a]) / 3.0)
            .collect()
    };
    let want = rng.random_range(0..3i64);
    let mut best = project(want);
    if vec_norm(&best) < 1e-6 {
        for m in 0..3 {
            let cand = project(m);
            if vec_norm(&cand) > vec_norm(&best) {
                best = cand;
            }
        }
    }
    normalize(&mut best);
    Ok(best)
}

struct RestartOutcome {
    index: usize,
    potential: f64,
    quartic: f64,
    v: Vec<Cx>,
    iterations: u64,
}

/// One restart: BB-stepped projected gradient descent, then an L-BFGS
/// polish. Returns the best point seen.
fn run_restart(cfg: &SearchConfig, ws: &Workspace, index: usize) -> RestartOutcome {
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.rng_seed);
    rng.set_stream(index as u64 + 1);
    let d = cfg.dim;
    let bound = potential_bound(d);

    let mut v = if cfg.restrict_zauner {
        zauner_restricted_start(d, &mut rng).expect("dimension validated")
    } else {
        let mut v = gaussian_vector(d, &mut rng);
        normalize(&mut v);
        v
    };

    let mut iterations = 0u64;
    match cfg.objective {
        ObjectiveKind::FramePotential => {
            let (mut f, mut g) = ws.potential_and_gradient(&v);
            let mut gp = project_tangent(&g, &v);
            assert!(f >= bound - 1e-12, "potential below its lower bound");

            // phase 1: projected gradient with Barzilai-Borwein steps
            let mut step = 0.1;
            let mut prev: Option<(Vec<Cx>, Vec<Cx>)> = None;
            let budget1 = cfg.max_iters * 2 / 3;
            for _ in 0..budget1 {
                let gnorm = real_inner(&gp, &gp).sqrt();
                if gnorm < 1e-9 || f - bound <= cfg.target_gap * 1e-2 {
                    break;
                }
                iterations += 1;
                if let Some((pv, pg)) = &prev {
                    let s: Vec<Cx> = v.iter().zip(pv).map(|(a, b)| a - b).collect();
                    let y: Vec<Cx> = gp.iter().zip(pg).map(|(a, b)| a - b).collect();
                    let den = real_inner(&s, &y);
                    if den > 1e-18 {
                        step = (real_inner(&s, &s) / den).clamp(1e-9, 1e3);
                    } else {
                        step = 1e-3;
                    }
                }
                let mut accepted = false;
                for _ in 0..45 {
                    let mut vn: Vec<Cx> = v.iter().zip(&gp).map(|(a, b)| a - b * step).collect();
                    normalize(&mut vn);
                    let (fn_, gn) = ws.potential_and_gradient(&vn);
                    assert!(fn_ >= bound - 1e-12, "potential below its lower bound");
                    if fn_ <= f + 1e-14 {
                        prev = Some((std::mem::take(&mut v), std::mem::take(&mut gp)));
                        v = vn;
                        f = fn_;
                        g = gn;
                        gp = project_tangent(&g, &v);
                        accepted = true;
                        break;
                    }
                    step *= 0.5;
                }
                if !accepted {
                    break;
                }
            }

            // phase 2: limited-memory quasi-Newton polish on the sphere
            let mut history: VecDeque<(Vec<Cx>, Vec<Cx>, f64)> = VecDeque::new();
            let budget2 = cfg.max_iters - cfg.max_iters * 2 / 3;
            for _ in 0..budget2 {
                let gnorm2 = real_inner(&gp, &gp);
                if gnorm2.sqrt() < 1e-14 || f - bound <= f64::EPSILON {
                    break;
                }
                iterations += 1;
                // two-loop recursion
                let mut q = gp.clone();
                let mut alphas = Vec::with_capacity(history.len());
                for (s, y, rho) in history.iter().rev() {
                    let alpha = rho * real_inner(s, &q);
                    for (qi, yi) in q.iter_mut().zip(y) {
                        *qi -= yi * alpha;
                    }
                    alphas.push(alpha);
                }
                if let Some((s, y, _)) = history.back() {
                    let gamma = real_inner(s, y) / real_inner(y, y).max(1e-300);
                    for qi in q.iter_mut() {
                        *qi *= gamma;
                    }
                }
                for ((s, y, rho), alpha) in history.iter().zip(alphas.iter().rev()) {
                    let beta = rho * real_inner(y, &q);
                    for (qi, si) in q.iter_mut().zip(s) {
                        *qi += si * (alpha - beta);
                    }
                }
                // descent direction; fall back to steepest descent if not
                let descent = -real_inner(&gp, &q);
                let dir: Vec<Cx> = if descent < 0.0 {
                    q.iter().map(|z| -z).collect()
                } else {
                    gp.iter().map(|z| -z).collect()
                };
                let slope = real_inner(&gp, &dir);
                let mut step = 1.0;
                let mut moved = false;
                for _ in 0..40 {
                    let mut vn: Vec<Cx> = v.iter().zip(&dir).map(|(a, b)| a + b * step).collect();
                    normalize(&mut vn);
                    let (fn_, gn) = ws.potential_and_gradient(&vn);
                    assert!(fn_ >= bound - 1e-12, "potential below its lower bound");
                    if fn_ <= f + 1e-4 * step * slope || fn_ < f - 1e-16 {
                        let gpn = project_tangent(&gn, &vn);
                        let s: Vec<Cx> = vn.iter().zip(&v).map(|(a, b)| a - b).collect();
                        let y: Vec<Cx> = gpn.iter().zip(&gp).map(|(a, b)| a - b).collect();
                        let sy = real_inner(&s, &y);
                        if sy > 1e-18 {
                            history.push_back((s, y, 1.0 / sy));
                            if history.len() > 8 {
                                history.pop_front();
                            }
                        }
                        v = vn;
                        f = fn_;
                        gp = gpn;
                        moved = true;
                        break;
                    }
                    step *= 0.5;
                }
                if !moved {
                    break;
                }
            }

            // phase 3: Gauss-Newton on the equiangularity residuals.
            // Near the minimum the potential gap is quadratic in the
            // parameter error and disappears under f64 rounding long before
            // the moduli do; the residuals |c_{jk}|^2 - 1/(d+1) stay
            // machine-representable, so a few damped normal-equation steps
            // push the moduli to ~1e-13.
            iterations += gauss_newton_polish(ws, &mut v);
            let f = ws.potential(&v);
            assert!(f >= bound - 1e-12, "potential below its lower bound");

            let c = ws.overlap_matrix(&v);
            let quartic = quartic_of_overlaps(&c, d);
            RestartOutcome {
                index,
                potential: f,
                quartic,
                v,
                iterations,
            }
        }
        ObjectiveKind::QuarticTorus => torus_restart(cfg, ws, index, &mut rng),
    }
}

/// Max equiangularity residual together with the stacked real Jacobian of
/// the residual system (off-origin moduli plus the norm constraint).
fn equiangularity_residuals(ws: &Workspace, v: &[Cx]) -> (f64, Vec<f64>, Vec<Vec<f64>>) {
    let d = ws.d;
    let target = 1.0 / (d as f64 + 1.0);
    let c = ws.overlap_matrix(v);
    let mut r = Vec::with_capacity(d * d);
    let mut jac = Vec::with_capacity(d * d);
    for j in 0..d {
        for k in 0..d {
            if (j, k) == (0, 0) {
                continue;
            }
            let cjk = c[j * d + k];
            r.push(cjk.norm_sqr() - target);
            // gradient of |c_{jk}|^2 in the (Re, Im) coordinates of v
            let mut row = vec![0.0; 2 * d];
            for a in 0..d {
                let adj = ws.om(-((k * a) as i64)) * v[(a + j) % d];
                let fwd = ws.om(k as i64 * (a as i64 - j as i64)) * v[modd(a as i64 - j as i64, d)];
                let g = (cjk.conj() * adj + cjk * fwd) * 2.0;
                row[2 * a] = g.re;
                row[2 * a + 1] = g.im;
            }
            jac.push(row);
        }
    }
    // norm constraint keeps the normal equations nondegenerate radially
    let norm_res: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>() - 1.0;
    r.push(norm_res);
    let mut row = vec![0.0; 2 * d];
    for a in 0..d {
        row[2 * a] = 2.0 * v[a].re;
        row[2 * a + 1] = 2.0 * v[a].im;
    }
    jac.push(row);
    let worst = r.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    (worst, r, jac)
}

/// Damped Gauss-Newton steps on the equiangularity system; returns the
/// number of iterations taken. No-ops quickly when the start is far from a
/// solution (steps that do not reduce the residual are rejected).
fn gauss_newton_polish(ws: &Workspace, v: &mut Vec<Cx>) -> u64 {
    use nalgebra::{DMatrix, DVector};
    let d = ws.d;
    let n = 2 * d;
    let mut taken = 0u64;
    for _ in 0..12 {
        let (worst, r, jac) = equiangularity_residuals(ws, v);
        if worst < 1e-14 {
            break;
        }
        taken += 1;
        let m = r.len();
        let j = DMatrix::from_fn(m, n, |a, b| jac[a][b]);
        let jt = j.transpose();
        let mut jtj = &jt * &j;
        let lambda = 1e-12 * jtj.trace().max(1e-300) / n as f64;
        for i in 0..n {
            jtj[(i, i)] += lambda;
        }
        let rhs = &jt * DVector::from_vec(r);
        let Some(step) = jtj.lu().solve(&rhs) else {
            break;
        };
        let mut scale = 1.0;
        let mut accepted = false;
        for _ in 0..8 {
            let mut cand: Vec<Cx> = v
                .iter()
                .enumerate()
                .map(|(a, z)| Cx::new(z.re - scale * step[2 * a], z.im - scale * step[2 * a + 1]))
                .collect();
            normalize(&mut cand);
            let (w2, _, _) = equiangularity_residuals(ws, &cand);
            if w2 < worst {
                *v = cand;
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    taken
}

fn quartic_of_overlaps(c: &[Cx], d: usize) -> f64 {
    let table = OverlapTable::from_fn(d, |j, k| c[j * d + k]).expect("d validated");
    let t = reconstruct_projector(&table);
    (t.pow(4).trace() - Cx::new(1.0, 0.0)).norm()
}

/// Experimental torus-phase descent: the moduli are pinned to the torus, the
/// free phases (one per conjugate orbit) descend on the squared quartic
/// residual with finite-difference gradients, and the answer is read off as
/// the dominant eigenvector of the reconstruction.
fn torus_restart(
    cfg: &SearchConfig,
    ws: &Workspace,
    index: usize,
    rng: &mut ChaCha12Rng,
) -> RestartOutcome {
    let d = cfg.dim;
    let rc = RootConstants { d };
    // orbit representatives of the conjugate symmetry
    let mut reps = Vec::new();
    let mut fixed = Vec::new(); // self-paired entries: only a sign choice
    let mut seen = vec![false; d * d];
    seen[0] = true;
    for j in 0..d {
        for k in 0..d {
            if seen[j * d + k] {
                continue;
            }
            let (nj, nk) = (modd(-(j as i64), d), modd(-(k as i64), d));
            if (nj, nk) == (j, k) {
                fixed.push((j, k, rng.random::<bool>()));
                seen[j * d + k] = true;
            } else {
                reps.push((j, k));
                seen[j * d + k] = true;
                seen[nj * d + nk] = true;
            }
        }
    }
    let modulus = 1.0 / ((d + 1) as f64).sqrt();
    let build = |theta: &[f64]| -> OverlapTable {
        OverlapTable::from_fn(d, |j, k| {
            if (j, k) == (0, 0) {
                return Cx::new(1.0, 0.0);
            }
            if let Some(pos) = reps.iter().position(|&(a, b)| (a, b) == (j, k)) {
                return Cx::from_polar(modulus, theta[pos]);
            }
            if let Some(&(_, _, flip)) = fixed.iter().find(|&&(a, b, _)| (a, b) == (j, k)) {
                let alpha = std::f64::consts::PI * (j * k) as f64 / d as f64
                    + if flip { std::f64::consts::PI } else { 0.0 };
                return Cx::from_polar(modulus, alpha);
            }
            // partner of a representative
            let (nj, nk) = (modd(-(j as i64), d), modd(-(k as i64), d));
            let pos = reps
                .iter()
                .position(|&(a, b)| (a, b) == (nj, nk))
                .expect("orbit partner");
            rc.omega_pow((j * k) as i64) * Cx::from_polar(modulus, theta[pos]).conj()
        })
        .expect("d validated")
    };
    let objective = |theta: &[f64]| -> f64 {
        let t = reconstruct_projector(&build(theta));
        (t.pow(4).trace() - Cx::new(1.0, 0.0)).norm_sqr()
    };

    let n = reps.len();
    let mut theta: Vec<f64> = (0..n)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    let mut f = objective(&theta);
    let mut iterations = 0u64;
    let h = 1e-6;
    let mut step = 0.05;
    let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;
    let mut grad = vec![0.0; n];
    for _ in 0..cfg.max_iters {
        if f < 1e-24 {
            break;
        }
        iterations += 1;
        for i in 0..n {
            let save = theta[i];
            theta[i] = save + h;
            let fp = objective(&theta);
            theta[i] = save - h;
            let fm = objective(&theta);
            theta[i] = save;
            grad[i] = (fp - fm) / (2.0 * h);
        }
        let gnorm: f64 = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm < 1e-12 {
            break;
        }
        if let Some((pt, pg)) = &prev {
            let mut ss = 0.0;
            let mut sy = 0.0;
            for i in 0..n {
                let s = theta[i] - pt[i];
                let y = grad[i] - pg[i];
                ss += s * s;
                sy += s * y;
            }
            if sy > 1e-18 {
                step = (ss / sy).clamp(1e-8, 10.0);
            }
        }
        let mut accepted = false;
        for _ in 0..40 {
            let cand: Vec<f64> = theta.iter().zip(&grad).map(|(t, g)| t - step * g).collect();
            let fc = objective(&cand);
            if fc <= f {
                prev = Some((std::mem::take(&mut theta), grad.clone()));
                theta = cand;
                f = fc;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }

    // read the candidate fiducial off the reconstruction's top eigenvector
    let table = build(&theta);
    let t = reconstruct_projector(&table);
    let mut v = power_iteration_top_eigvec(&t);
    // deterministic phase: first sizable coordinate real positive
    if let Some(lead) = v.iter().find(|z| z.norm() > 1e-8) {
        let phase = lead / lead.norm();
        for z in v.iter_mut() {
            *z /= phase;
        }
    }
    let pot = ws.potential(&v);
    let quartic = (t.pow(4).trace() - Cx::new(1.0, 0.0)).norm();
    RestartOutcome {
        index,
        potential: pot,
        quartic,
        v,
        iterations,
    }
}

fn power_iteration_top_eigvec(m: &CMatrix) -> Vec<Cx> {
    let d = m.dim();
    // shift to make the dominant eigenvalue the largest in modulus
    let shifted = m.add(&CMatrix::identity(d));
    let mut v: Vec<Cx> = (0..d)
        .map(|a| Cx::new(1.0 / (a as f64 + 1.0), 0.3 / (a as f64 + 2.0)))
        .collect();
    normalize(&mut v);
    for _ in 0..200 {
        v = shifted.apply(&v);
        normalize(&mut v);
    }
    v
}

/// Run the configured search. Restarts are evaluated in fixed-size chunks
/// (parallel under the `parallel` feature) with a deterministic merge, and
/// the loop stops early once a chunk contains a hit below `target_gap`.
pub fn sic_search(cfg: &SearchConfig) -> Result<SearchReport> {
    run_search(cfg, true)
}

/// Sequential twin of [`sic_search`], bypassing the thread pool regardless
/// of compiled features; kept public for benchmarking the parallel speedup.
pub fn sic_search_sequential(cfg: &SearchConfig) -> Result<SearchReport> {
    run_search(cfg, false)
}

fn run_search(cfg: &SearchConfig, parallel: bool) -> Result<SearchReport> {
    cfg.validate()?;
    let start = Instant::now();
    let ws = Workspace::new(cfg.dim);
    let bound = potential_bound(cfg.dim);

    const CHUNK: usize = 8;
    let mut best: Option<RestartOutcome> = None;
    let mut restarts_used = 0usize;
    let mut iterations = 0u64;
    while restarts_used < cfg.max_restarts {
        let hi = (restarts_used + CHUNK).min(cfg.max_restarts);
        let outcomes: Vec<RestartOutcome> = if parallel {
            crate::par::map_range(restarts_used..hi, |i| run_restart(cfg, &ws, i))
        } else {
            (restarts_used..hi)
                .map(|i| run_restart(cfg, &ws, i))
                .collect()
        };
        restarts_used = hi;
        for o in outcomes {
            iterations += o.iterations;
            let better = match &best {
                None => true,
                Some(b) => {
                    let (ga, gb) = (o.potential - bound, b.potential - bound);
                    (ga, o.quartic, o.index) < (gb, b.quartic, b.index)
                }
            };
            if better {
                best = Some(o);
            }
        }
        if best
            .as_ref()
            .map(|b| b.potential - bound <= cfg.target_gap)
            .unwrap_or(false)
        {
            break;
        }
    }

    let best = best.expect("max_restarts >= 1");
    let fiducial = Fiducial::from_unnormalized(best.v.clone())?;
    let table = overlaps_from_fiducial(&fiducial);
    let verification = check_conditions(&table, QUARTIC_TOL);
    let potential_gap = frame_potential(&fiducial) - bound;
    let success = potential_gap <= cfg.target_gap;
    Ok(SearchReport {
        dim: cfg.dim,
        success,
        fiducial,
        potential_gap,
        quartic_residual: verification.residual_quartic,
        restarts_used,
        iterations,
        wall_time_secs: start.elapsed().as_secs_f64(),
        table,
        verification,
    })
}
