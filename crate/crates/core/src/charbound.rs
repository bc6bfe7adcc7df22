//! Invariant-subspace counts for semisimple operators and the character
//! bound `|chi(x)| <= chi(1)^beta` on semisimple classes of `GL_n(F_q)`.

use serde::Serialize;

use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::matgrp::{rank_of_rows, ClassId, GroupKind, Matrix};

/// Number of `w`-dimensional subspaces of `F_q^a`, by the `q`-Pascal rule
/// `[a, w] = [a-1, w-1] + q^w [a-1, w]` in checked integer arithmetic.
pub fn gaussian_binomial(a: u64, w: u64, q: u64) -> Result<u128> {
    if w > a {
        return Err(Error::BadRange(format!("w = {w} exceeds a = {a}")));
    }
    let overflow = || Error::InvalidArgument("Gaussian binomial overflows 128 bits".into());
    let w = w.min(a - w) as usize;
    // row[j] = [i, j] for the current i.
    let mut row = vec![0u128; w + 1];
    row[0] = 1;
    for i in 1..=a as usize {
        for j in (1..=w.min(i)).rev() {
            let qj = (q as u128).checked_pow(j as u32).ok_or_else(overflow)?;
            row[j] = qj
                .checked_mul(row[j])
                .and_then(|x| x.checked_add(row[j - 1]))
                .ok_or_else(overflow)?;
        }
    }
    Ok(row[w])
}

/// Isotypic data of a semisimple operator: `(deg f_i, a_i)` for
/// `charpoly = prod f_i^{a_i}`.
fn isotypic_factors(t: &Matrix) -> Result<Vec<(usize, usize)>> {
    if !t.is_semisimple() {
        return Err(Error::NotSemisimple);
    }
    Ok(t.charpoly()
        .factor(t.field())
        .into_iter()
        .map(|(g, a)| (g.degree().unwrap(), a))
        .collect())
}

/// Dimension vectors `(w_i)` with `0 <= w_i <= a_i`, `sum b_i w_i = s`.
fn dimension_vectors(factors: &[(usize, usize)], s: usize) -> Vec<Vec<usize>> {
    fn rec(f: &[(usize, usize)], s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(&(b, a)) = f.first() else {
            if s == 0 {
                out.push(cur.clone());
            }
            return;
        };
        for w in 0..=a.min(s / b) {
            cur.push(w);
            rec(&f[1..], s - b * w, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(factors, s, &mut Vec::new(), &mut out);
    out
}

/// Number of `s`-dimensional `T`-invariant subspaces of `F_q^n` for a
/// semisimple `T`: each isotypic block `V_i` is an `a_i`-dimensional space
/// over `F_{q^{b_i}}`, and invariant subspaces are sums of subspaces of
/// the blocks.
pub fn fixed_subspace_count(t: &Matrix, s: usize) -> Result<u128> {
    if s > t.dim() {
        return Err(Error::BadRange(format!("s = {s} exceeds n = {}", t.dim())));
    }
    let factors = isotypic_factors(t)?;
    count_from_factors(t.field().order() as u64, &factors, s)
}

fn count_from_factors(q: u64, factors: &[(usize, usize)], s: usize) -> Result<u128> {
    let mut total = 0u128;
    for wv in dimension_vectors(factors, s) {
        let mut term = 1u128;
        for (&(b, a), &w) in factors.iter().zip(&wv) {
            term *= gaussian_binomial(a as u64, w as u64, q.pow(b as u32))?;
        }
        total += term;
    }
    Ok(total)
}

/// Enumerates every `s`-dimensional subspace of `F_q^n` in reduced row
/// echelon form and counts those mapped into themselves by `T`.
pub fn fixed_subspace_count_bruteforce(t: &Matrix, s: usize) -> Result<u128> {
    let n = t.dim();
    if s > n {
        return Err(Error::BadRange(format!("s = {s} exceeds n = {}", n)));
    }
    let f = t.field();
    let q = f.order();
    let mut count = 0u128;
    let mut pivots: Vec<usize> = Vec::with_capacity(s);
    for_each_combination(n, s, &mut pivots, &mut |pivots| {
        // Free entries: row i, column c > pivots[i], c not a pivot.
        let free: Vec<(usize, usize)> = (0..s)
            .flat_map(|i| {
                (pivots[i] + 1..n)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (i, c))
            })
            .collect();
        let total = (q as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u32; n]; s];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            let mut c = code;
            for &(i, col) in &free {
                rows[i][col] = (c % q as u64) as u32;
                c /= q as u64;
            }
            let invariant = rows.iter().all(|v| {
                let image: Vec<u32> = (0..n)
                    .map(|r| (0..n).fold(0, |acc, k| f.add(acc, f.mul(t.get(r, k), v[k]))))
                    .collect();
                let mut with = rows.clone();
                with.push(image);
                rank_of_rows(f, n, with) == s
            });
            if invariant {
                count += 1;
            }
        }
    });
    Ok(count)
}

fn for_each_combination(n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    let start = cur.last().map_or(0, |&x| x + 1);
    for x in start..n {
        if n - x < k - cur.len() {
            break;
        }
        cur.push(x);
        for_each_combination(n, k, cur, f);
        cur.pop();
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixedSubspaceBound {
    pub count: u128,
    pub max_multiplicity: usize,
    pub dimension_vectors: usize,
    pub isotypic_factors: usize,
    /// `log_q(dimension vectors) + isotypic factors`.
    pub slack: f64,
    pub log_count: f64,
    /// `m s + slack`.
    pub bound: f64,
    pub holds: bool,
}

/// Compares `log_q(count)` with `m s + slack`, where `m` is the largest
/// eigenvalue multiplicity.
pub fn fixed_subspace_bound_check(t: &Matrix, s: usize) -> Result<FixedSubspaceBound> {
    let count = fixed_subspace_count(t, s)?;
    let factors = isotypic_factors(t)?;
    let q = t.field().order() as f64;
    let m = factors.iter().map(|&(_, a)| a).max().unwrap_or(0);
    let dv = dimension_vectors(&factors, s).len();
    let slack = (dv.max(1) as f64).ln() / q.ln() + factors.len() as f64;
    let log_count = if count == 0 {
        f64::NEG_INFINITY
    } else {
        (count as f64).ln() / q.ln()
    };
    let bound = (m * s) as f64 + slack;
    Ok(FixedSubspaceBound {
        count,
        max_multiplicity: m,
        dimension_vectors: dv,
        isotypic_factors: factors.len(),
        slack,
        log_count,
        bound,
        holds: log_count <= bound,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CharacterRatio {
    pub character: usize,
    pub degree: u64,
    pub abs_value: f64,
    /// `ln|chi(x)| / ln chi(1)`; `None` when `chi(x) = 0`.
    pub ratio: Option<f64>,
    /// `ln sqrt|C(x)| / ln chi(1)`.
    pub schur_ceiling: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub class: ClassId,
    pub max_multiplicity: usize,
    pub centralizer_order: u64,
    /// Largest ratio over nonlinear characters.
    pub max_ratio: Option<f64>,
    pub characters: Vec<CharacterRatio>,
    pub schur_consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub class: ClassId,
    pub character: usize,
    pub abs_value: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundCheckReport {
    pub group: String,
    pub q: u64,
    pub n: usize,
    /// `None` for a survey with an explicit multiplicity cap.
    pub alpha: Option<f64>,
    pub beta: f64,
    pub multiplicity_cap: usize,
    pub rows: Vec<BoundRow>,
    /// Pairs with a linear character, where `|chi(x)| = 1 = chi(1)^beta`.
    pub linear_pairs: usize,
    pub nonlinear_pairs: usize,
    pub violations: Vec<Violation>,
}

const BOUND_TOL: f64 = 1e-9;

/// Checks `|chi(x)| <= chi(1)^beta` over semisimple classes whose largest
/// eigenvalue multiplicity is at most `alpha n`, for all characters.
/// Requires `0 < alpha < beta^2/(1+2 beta)`.
pub fn character_bound_check(
    table: &CharacterTable,
    alpha: f64,
    beta: f64,
) -> Result<BoundCheckReport> {
    if !(alpha > 0.0 && beta > 0.0 && alpha < beta * beta / (1.0 + 2.0 * beta)) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < alpha < beta^2/(1+2 beta) = {:.4}; got alpha = {alpha}, beta = {beta}",
            beta * beta / (1.0 + 2.0 * beta)
        )));
    }
    let n = table.group().dim();
    let cap = (alpha * n as f64 + 1e-12).floor() as usize;
    let mut report = character_bound_survey(table, cap, beta)?;
    report.alpha = Some(alpha);
    Ok(report)
}

/// The same scan with an explicit cap on the largest eigenvalue
/// multiplicity and no constraint tying it to `beta`.
pub fn character_bound_survey(
    table: &CharacterTable,
    multiplicity_cap: usize,
    beta: f64,
) -> Result<BoundCheckReport> {
    let g = table.group();
    if g.kind() != GroupKind::GL {
        return Err(Error::InvalidArgument(
            "character bound check expects GL_n".into(),
        ));
    }
    let n = g.dim();
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut linear_pairs = 0;
    let mut nonlinear_pairs = 0;
    for (c, info) in g.classes().iter().enumerate() {
        let m = info.max_eigenvalue_multiplicity();
        if !info.is_semisimple || m > multiplicity_cap {
            continue;
        }
        let half_log_c = (info.centralizer_order as f64).ln() / 2.0;
        let mut chars = Vec::new();
        let mut schur_ok = true;
        for i in 0..table.class_count() {
            let d = table.degree(i);
            let abs = table.value(i, c).norm();
            if d == 1 {
                linear_pairs += 1;
                continue;
            }
            nonlinear_pairs += 1;
            let ln_d = (d as f64).ln();
            let ratio = (abs > 1e-9).then(|| abs.ln() / ln_d);
            let ceiling = half_log_c / ln_d;
            if abs * abs > info.centralizer_order as f64 * (1.0 + BOUND_TOL) {
                schur_ok = false;
            }
            let bound = (d as f64).powf(beta);
            if abs > bound * (1.0 + BOUND_TOL) {
                violations.push(Violation {
                    class: c,
                    character: i,
                    abs_value: abs,
                    bound,
                });
            }
            chars.push(CharacterRatio {
                character: i,
                degree: d,
                abs_value: abs,
                ratio,
                schur_ceiling: ceiling,
            });
        }
        let max_ratio = chars
            .iter()
            .filter_map(|r| r.ratio)
            .fold(None, |acc: Option<f64>, r| {
                Some(acc.map_or(r, |a| a.max(r)))
            });
        rows.push(BoundRow {
            class: c,
            max_multiplicity: m,
            centralizer_order: info.centralizer_order,
            max_ratio,
            characters: chars,
            schur_consistent: schur_ok,
        });
    }
    Ok(BoundCheckReport {
        group: g.label(),
        q: g.q(),
        n,
        alpha: None,
        beta,
        multiplicity_cap,
        rows,
        linear_pairs,
        nonlinear_pairs,
        violations,
    })
}
