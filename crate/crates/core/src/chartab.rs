//! Complex character tables of enumerated groups by the class-algebra method.
//!
//! The class sums `K_1, .., K_k` span the center of the group algebra, and
//! multiplication by `K_j` acts on it through the structure constants
//! `a_{jrs} = #{(x, y) in C_j x C_r : xy = z_s}`. In the basis
//! `K_s / sqrt|C_s|` these operators are normal with adjoint given by the
//! inverse class, so for random complex weights the combination
//! `W + W^*`, `W = sum_j w_j L_j`, is Hermitian and its eigenvectors are
//! the normalized central idempotents. Each eigenvector yields one
//! irreducible character up to a scalar fixed by `chi(1) > 0` and the
//! first orthogonality relation.
//!
//! Values are floating point; they are accepted only after the
//! orthogonality and integrality certificates in [`Certificate`] pass.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matgrp::{ClassId, ElementId, GroupContext};

/// Largest class count accepted by [`character_table`].
pub const MAX_CLASSES: usize = 200;
pub const ORTHOGONALITY_TOL: f64 = 1e-6;
pub const INDICATOR_TOL: f64 = 1e-4;
/// Relative tolerance for integer rounding of derived counts.
pub const COUNT_TOL: f64 = 1e-3;
pub const MAX_ATTEMPTS: u32 = 8;
const EIGEN_GAP_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub row_orthogonality: f64,
    pub column_orthogonality: f64,
    pub degree_rounding: f64,
    pub indicator_rounding: f64,
}

pub struct CharacterTable {
    group: Arc<GroupContext>,
    values: Vec<Vec<Complex64>>,
    degrees: Vec<u64>,
    indicators: Vec<i8>,
    certificate: Certificate,
    seed: u64,
    attempts: u32,
}

/// Portable form of a table, stored next to the group snapshot.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableSnapshot {
    pub values: Vec<Vec<[f64; 2]>>,
    pub degrees: Vec<u64>,
    pub indicators: Vec<i8>,
    pub seed: u64,
    pub attempts: u32,
}

/// Structure constants, indexed `[s][j][r]`.
struct ClassAlgebra {
    k: usize,
    consts: Vec<u32>,
}

impl ClassAlgebra {
    fn build(g: &GroupContext) -> Self {
        let k = g.class_count();
        let reps: Vec<ElementId> = g.classes().iter().map(|c| c.representative).collect();
        let consts: Vec<u32> = reps
            .par_iter()
            .flat_map_iter(|&z| {
                let mut counts = vec![0u32; k * k];
                for x in 0..g.order() as ElementId {
                    let y = g.mul(g.inverse(x), z);
                    counts[g.class_of(x) * k + g.class_of(y)] += 1;
                }
                counts.into_iter()
            })
            .collect();
        ClassAlgebra { k, consts }
    }

    #[inline]
    fn get(&self, j: usize, r: usize, s: usize) -> u32 {
        self.consts[(s * self.k + j) * self.k + r]
    }
}

/// Builds and certifies the character table of `group`.
///
/// Attempt `i` uses weights drawn from `ChaCha8Rng` seeded with `seed + i`.
pub fn character_table(group: Arc<GroupContext>, seed: u64) -> Result<CharacterTable> {
    let k = group.class_count();
    if k > MAX_CLASSES {
        return Err(Error::budget("class count", k as u128, MAX_CLASSES as u128));
    }
    let algebra = ClassAlgebra::build(&group);
    let mut last_err = String::new();
    for attempt in 0..MAX_ATTEMPTS {
        match attempt_table(&group, &algebra, seed.wrapping_add(attempt as u64)) {
            Ok((values, degrees, cert_partial)) => {
                let mut table = CharacterTable {
                    group: group.clone(),
                    values,
                    degrees,
                    indicators: Vec::new(),
                    certificate: cert_partial,
                    seed,
                    attempts: attempt + 1,
                };
                let mut worst = 0.0f64;
                let mut inds = Vec::with_capacity(k);
                for i in 0..k {
                    let (ind, res) = table.indicator_with_residual(i)?;
                    worst = worst.max(res);
                    inds.push(ind);
                }
                table.indicators = inds;
                table.certificate.indicator_rounding = worst;
                return Ok(table);
            }
            Err(msg) => last_err = msg,
        }
    }
    Err(Error::EigensolverDegeneracy {
        attempts: MAX_ATTEMPTS,
        detail: last_err,
    })
}

type Attempt = (Vec<Vec<Complex64>>, Vec<u64>, Certificate);

fn attempt_table(
    g: &GroupContext,
    algebra: &ClassAlgebra,
    seed: u64,
) -> std::result::Result<Attempt, String> {
    let k = algebra.k;
    let order = g.order() as f64;
    let sizes: Vec<f64> = g.classes().iter().map(|c| c.size as f64).collect();
    let sqrt_sizes: Vec<f64> = sizes.iter().map(|s| s.sqrt()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<Complex64> = (0..k)
        .map(|j| {
            let re: f64 = rng.gen_range(-1.0..1.0);
            let im: f64 = rng.gen_range(-1.0..1.0);
            Complex64::new(re, im) / sizes[j]
        })
        .collect();

    // W[s][r] = sum_j w_j a_{jrs} sqrt|C_s| / sqrt|C_r|
    let mut w = DMatrix::<Complex64>::zeros(k, k);
    for s in 0..k {
        for r in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, wj) in weights.iter().enumerate() {
                let a = algebra.get(j, r, s);
                if a != 0 {
                    acc += wj * a as f64;
                }
            }
            w[(s, r)] = acc * (sqrt_sizes[s] / sqrt_sizes[r]);
        }
    }
    let h = &w + w.adjoint();
    let eig = h.symmetric_eigen();

    let mut evals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    evals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let min_gap = evals
        .windows(2)
        .map(|p| p[1] - p[0])
        .fold(f64::INFINITY, f64::min);
    if min_gap < EIGEN_GAP_TOL {
        return Err(format!(
            "eigenvalue gap {min_gap:e} below {EIGEN_GAP_TOL:e}"
        ));
    }

    let id_class = g.identity_class();
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(k);
    for col in 0..k {
        let u = eig.eigenvectors.column(col);
        let u0 = u[id_class];
        if u0.norm() < 1e-12 {
            return Err("eigenvector vanishes at the identity class".into());
        }
        let phase = u0 / u0.norm();
        let row: Vec<Complex64> = (0..k)
            .map(|s| phase * u[s].conj() * (order.sqrt() / sqrt_sizes[s]))
            .collect();
        rows.push(row);
    }

    let mut degree_res = 0.0f64;
    let mut degrees = Vec::with_capacity(k);
    for row in &rows {
        let d = row[id_class].re;
        let r = d.round();
        degree_res = degree_res.max((d - r).abs()).max(row[id_class].im.abs());
        if r < 1.0 {
            return Err(format!("nonpositive degree {d}"));
        }
        degrees.push(r as u64);
    }
    if degree_res > ORTHOGONALITY_TOL * order {
        return Err(format!("degree rounding residual {degree_res:e}"));
    }
    let n = g.order() as u64;
    if degrees.iter().map(|d| d * d).sum::<u64>() != n {
        return Err("sum of squared degrees differs from the group order".into());
    }
    if degrees.iter().any(|&d| !n.is_multiple_of(d)) {
        return Err("a degree does not divide the group order".into());
    }

    let mut order_idx: Vec<usize> = (0..k).collect();
    let keys: Vec<Vec<(i64, i64)>> = rows.iter().map(|r| sort_key(r)).collect();
    order_idx.sort_by(|&a, &b| {
        degrees[a]
            .cmp(&degrees[b])
            .then_with(|| keys[b].cmp(&keys[a]))
    });
    let rows: Vec<Vec<Complex64>> = order_idx.iter().map(|&i| rows[i].clone()).collect();
    let degrees: Vec<u64> = order_idx.iter().map(|&i| degrees[i]).collect();

    let (row_res, col_res) = orthogonality_residuals(g, &rows);
    if row_res > ORTHOGONALITY_TOL || col_res > ORTHOGONALITY_TOL {
        return Err(format!("orthogonality residuals {row_res:e} / {col_res:e}"));
    }
    Ok((
        rows,
        degrees,
        Certificate {
            row_orthogonality: row_res,
            column_orthogonality: col_res,
            degree_rounding: degree_res,
            indicator_rounding: 0.0,
        },
    ))
}

fn sort_key(row: &[Complex64]) -> Vec<(i64, i64)> {
    row.iter()
        .map(|z| ((z.re * 1e8).round() as i64, (z.im * 1e8).round() as i64))
        .collect()
}

/// Maximum deviations from the first and second orthogonality relations.
fn orthogonality_residuals(g: &GroupContext, rows: &[Vec<Complex64>]) -> (f64, f64) {
    let k = rows.len();
    let order = g.order() as f64;
    let sizes: Vec<f64> = g.classes().iter().map(|c| c.size as f64).collect();
    let mut row_res = 0.0f64;
    for i in 0..k {
        for j in i..k {
            let ip: Complex64 = (0..k)
                .map(|s| rows[i][s] * rows[j][s].conj() * sizes[s])
                .sum::<Complex64>()
                / order;
            let target = if i == j { 1.0 } else { 0.0 };
            row_res = row_res.max((ip - target).norm());
        }
    }
    let mut col_res = 0.0f64;
    for s in 0..k {
        for t in s..k {
            let ip: Complex64 = (0..k).map(|i| rows[i][s] * rows[i][t].conj()).sum();
            let target = if s == t {
                g.classes()[s].centralizer_order as f64
            } else {
                0.0
            };
            col_res = col_res.max((ip - target).norm());
        }
    }
    (row_res, col_res)
}

/// Certifies that `z` is a nonnegative integer.
///
/// The residual must stay below `COUNT_TOL * max(1, |z|)` and below 1/4 in
/// absolute terms, so the rounded value is unambiguous.
pub fn certify_count(z: Complex64) -> Result<u128> {
    let r = z.re.round();
    let residual = (z.re - r).abs().max(z.im.abs());
    if residual > COUNT_TOL * z.re.abs().max(1.0) || residual > 0.25 || r < 0.0 {
        return Err(Error::RoundingFailure {
            value: z.re,
            residual,
        });
    }
    Ok(r as u128)
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<GroupContext> {
        &self.group
    }

    pub fn class_count(&self) -> usize {
        self.values.len()
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.degrees[chi]
    }

    pub fn value(&self, chi: usize, class: ClassId) -> Complex64 {
        self.values[chi][class]
    }

    pub fn values(&self) -> &[Vec<Complex64>] {
        &self.values
    }

    pub fn indicators(&self) -> &[i8] {
        &self.indicators
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn attempts(&self) -> u32 {
        self.attempts
    }

    fn indicator_with_residual(&self, chi: usize) -> Result<(i8, f64)> {
        let g = &self.group;
        let sum: Complex64 = g
            .classes()
            .iter()
            .map(|c| self.values[chi][c.square_class] * c.size as f64)
            .sum::<Complex64>()
            / g.order() as f64;
        let r = sum.re.round();
        let residual = (sum.re - r).abs().max(sum.im.abs());
        if residual > INDICATOR_TOL || !(-1.0..=1.0).contains(&r) {
            return Err(Error::RoundingFailure {
                value: sum.re,
                residual,
            });
        }
        Ok((r as i8, residual))
    }

    pub fn snapshot(&self) -> TableSnapshot {
        TableSnapshot {
            values: self
                .values
                .iter()
                .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            degrees: self.degrees.clone(),
            indicators: self.indicators.clone(),
            seed: self.seed,
            attempts: self.attempts,
        }
    }

    /// Restores a cached table, re-running every certificate.
    pub fn from_snapshot(group: Arc<GroupContext>, snap: TableSnapshot) -> Result<CharacterTable> {
        let k = group.class_count();
        if snap.values.len() != k || snap.values.iter().any(|r| r.len() != k) {
            return Err(Error::Cache("table shape does not match the group".into()));
        }
        let values: Vec<Vec<Complex64>> = snap
            .values
            .iter()
            .map(|r| r.iter().map(|v| Complex64::new(v[0], v[1])).collect())
            .collect();
        let (row_res, col_res) = orthogonality_residuals(&group, &values);
        let id = group.identity_class();
        let degree_res = values
            .iter()
            .zip(&snap.degrees)
            .map(|(r, &d)| (r[id] - d as f64).norm())
            .fold(0.0, f64::max);
        if row_res > ORTHOGONALITY_TOL || col_res > ORTHOGONALITY_TOL || degree_res > 1e-6 {
            return Err(Error::Cache("cached table fails its certificate".into()));
        }
        let mut table = CharacterTable {
            group,
            values,
            degrees: snap.degrees,
            indicators: Vec::new(),
            certificate: Certificate {
                row_orthogonality: row_res,
                column_orthogonality: col_res,
                degree_rounding: degree_res,
                indicator_rounding: 0.0,
            },
            seed: snap.seed,
            attempts: snap.attempts,
        };
        let mut worst = 0.0f64;
        for i in 0..k {
            let (ind, res) = table.indicator_with_residual(i)?;
            if ind != snap.indicators[i] {
                return Err(Error::Cache("cached indicator disagrees".into()));
            }
            worst = worst.max(res);
        }
        table.indicators = snap.indicators;
        table.certificate.indicator_rounding = worst;
        Ok(table)
    }
}

/// Frobenius–Schur indicator `(1/|G|) sum_g chi(g^2)`, aggregated over
/// classes through the squaring map.
pub fn fs_indicator(table: &CharacterTable, chi: usize) -> Result<i8> {
    table.indicator_with_residual(chi).map(|(i, _)| i)
}

/// Representation zeta function `sum_chi chi(1)^{-s}`.
pub fn rep_zeta(table: &CharacterTable, s: f64) -> f64 {
    table.degrees.iter().map(|&d| (d as f64).powf(-s)).sum()
}
