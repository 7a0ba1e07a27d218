//! Actions of the Clifford generators on overlap tables.
//!
//! Conjugating a projector `v v*` by a normalizer element `a` sends its
//! overlap table to another overlap table, and for the generators the
//! induced map has a closed form that is O(d^2) instead of the O(d^3)
//! conjugation:
//!
//! ```text
//! (S^a Ω^b · c)_{jk} = ω^{bj - ak} c_{jk}
//! (F · c)_{jk}       = ω^{jk} c_{k,-j}
//! (Z · c)_{jk}       = μ^{-j(j+d-2k)} c_{k-j,-j}
//! ```
//!
//! Conjugation by the explicit matrices is kept in the tests as the oracle.
//! Scalar multiples act trivially on tables and are not represented.

use std::fmt;
use std::str::FromStr;

use crate::cmatrix::CMatrix;
use crate::error::{Result, SicError};
use crate::heisenberg::{fourier_matrix, omega_matrix, shift_matrix, zauner_matrix, RootConstants};
use crate::overlaps::OverlapTable;

/// One Clifford generator, as it acts on tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `S^a Ω^b`, exponents reduced mod `d`.
    ShiftMod(i64, i64),
    Fourier,
    Zauner,
}

impl Generator {
    /// The explicit unitary for this generator (oracle / CLI use).
    pub fn matrix(&self, d: usize) -> Result<CMatrix> {
        match *self {
            Generator::ShiftMod(a, b) => {
                let s = shift_matrix(d)?;
                let om = omega_matrix(d)?;
                let ar = crate::cmatrix::modd(a, d) as u64;
                let br = crate::cmatrix::modd(b, d) as u64;
                Ok(s.pow(ar).matmul(&om.pow(br)))
            }
            Generator::Fourier => fourier_matrix(d),
            Generator::Zauner => zauner_matrix(d),
        }
    }

    pub fn act(&self, c: &OverlapTable) -> OverlapTable {
        match *self {
            Generator::ShiftMod(a, b) => act_shift_mod(c, a, b),
            Generator::Fourier => act_fourier(c),
            Generator::Zauner => act_zauner(c),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::ShiftMod(a, b) => write!(f, "S{a}O{b}"),
            Generator::Fourier => write!(f, "F"),
            Generator::Zauner => write!(f, "Z"),
        }
    }
}

/// A word in the generators, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    pub fn apply(&self, c: &OverlapTable) -> OverlapTable {
        let mut out = c.clone();
        for g in &self.0 {
            out = g.act(&out);
        }
        out
    }

    /// Product of the generator matrices in word order (rightmost applied
    /// first to vectors, i.e. `word = g1 g2` maps `v` to `g2 g1 v`).
    pub fn matrix(&self, d: usize) -> Result<CMatrix> {
        let mut m = CMatrix::identity(d);
        for g in &self.0 {
            m = g.matrix(d)?.matmul(&m);
        }
        Ok(m)
    }
}

impl FromStr for GeneratorWord {
    type Err = SicError;

    /// Parses words like `"S1O0 F Z Z"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut gens = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "F" {
                gens.push(Generator::Fourier);
            } else if tok == "Z" {
                gens.push(Generator::Zauner);
            } else if let Some(rest) = tok.strip_prefix('S') {
                let (a, b) = rest.split_once('O').ok_or_else(|| SicError::BadWord {
                    token: tok.to_string(),
                })?;
                let a = a.parse::<i64>().map_err(|_| SicError::BadWord {
                    token: tok.to_string(),
                })?;
                let b = b.parse::<i64>().map_err(|_| SicError::BadWord {
                    token: tok.to_string(),
                })?;
                gens.push(Generator::ShiftMod(a, b));
            } else {
                return Err(SicError::BadWord {
                    token: tok.to_string(),
                });
            }
        }
        Ok(GeneratorWord(gens))
    }
}

/// `(S^a Ω^b · c)_{jk} = ω^{bj - ak} c_{jk}`: entrywise unimodular phases,
/// so all four verification residuals are preserved.
pub fn act_shift_mod(c: &OverlapTable, a: i64, b: i64) -> OverlapTable {
    let d = c.dim();
    let rc = RootConstants { d };
    OverlapTable::from_fn(d, |j, k| {
        rc.omega_pow(b * j as i64 - a * k as i64) * c.at(j as i64, k as i64)
    })
    .expect("dimension preserved")
}

/// `(F · c)_{jk} = ω^{jk} c_{k,-j}`.
pub fn act_fourier(c: &OverlapTable) -> OverlapTable {
    let d = c.dim();
    let rc = RootConstants { d };
    OverlapTable::from_fn(d, |j, k| {
        rc.omega_pow((j * k) as i64) * c.at(k as i64, -(j as i64))
    })
    .expect("dimension preserved")
}

/// `(Z · c)_{jk} = μ^{-j(j+d-2k)} c_{k-j,-j}`; applying it three times is
/// the identity on tables.
pub fn act_zauner(c: &OverlapTable) -> OverlapTable {
    let d = c.dim();
    let rc = RootConstants { d };
    OverlapTable::from_fn(d, |j, k| {
        let (j, k) = (j as i64, k as i64);
        rc.mu_pow(-(j * (j + d as i64 - 2 * k))) * c.at(k - j, -j)
    })
    .expect("dimension preserved")
}

/// `max |(Z · c)_{jk} - c_{jk}|`; zero exactly on Zauner-symmetric tables.
pub fn zauner_residual(c: &OverlapTable) -> f64 {
    act_zauner(c).max_abs_diff(c)
}
