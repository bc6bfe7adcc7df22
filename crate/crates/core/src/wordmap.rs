//! Word maps `G^d -> G`: evaluation, fibers, point-count dimension fits and
//! double-word image statistics.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::character_table;
use crate::error::{Error, Result};
use crate::ff::field_of_order;
use crate::homcount::{
    check_budget, fs_squares_count, hom_count_bruteforce_with, par_fold_tuples, surface_hom_count,
    tuple_count, word_histogram, Compiled, OracleOptions,
};
use crate::matgrp::{group_build, ElementId, GroupContext, GroupKind, Matrix};
use crate::word::{Presentation, Shape, Word};

/// Evaluates `w` at `tuple`, where `tuple[i]` is substituted for `x_{i+1}`.
pub fn eval_word(w: &Word, tuple: &[Matrix]) -> Result<Matrix> {
    let first = tuple.first().ok_or(Error::SpecMismatch)?;
    if tuple.len() < w.max_generator() {
        return Err(Error::SpecMismatch);
    }
    let mut acc = Matrix::identity(first.field(), first.dim());
    for l in w.letters() {
        let x = &tuple[l.generator - 1];
        let x = if l.inverse {
            x.inverse().ok_or(Error::ElementNotInGroup)?
        } else {
            x.clone()
        };
        acc = acc.mul(&x)?;
    }
    Ok(acc)
}

/// `|{t in G^d : w(t) = target}|` with `d` the largest generator index.
pub fn fiber_count(w: &Word, g: &GroupContext, target: &Matrix) -> Result<u128> {
    fiber_count_with(
        w,
        w.max_generator(),
        g,
        target,
        crate::homcount::DEFAULT_TUPLE_BUDGET,
    )
}

pub fn fiber_count_with(
    w: &Word,
    d: usize,
    g: &GroupContext,
    target: &Matrix,
    budget: u128,
) -> Result<u128> {
    if d < w.max_generator() {
        return Err(Error::InvalidArgument(
            "arity below the word's generators".into(),
        ));
    }
    let z = g.index_of(target)?;
    check_budget("tuples", tuple_count(g.order(), d), budget)?;
    let h = word_histogram(w, g, budget)?;
    Ok(h[z as usize] as u128 * tuple_count(g.order(), d - w.support().len()))
}

/// How each sample of a [`CountProfile`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMethod {
    Exact,
    SurfaceFormula,
    SquaresFormula,
    Oracle,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountSample {
    pub q: u64,
    pub count: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountProfile {
    pub presentation: String,
    pub shape: Shape,
    pub kind: GroupKind,
    pub n: usize,
    pub method: CountMethod,
    pub samples: Vec<CountSample>,
    /// Least-squares slope of `ln count` against `ln q`.
    pub fitted_dimension: f64,
    /// `exp` of the least-squares intercept.
    pub fitted_leading_coefficient: f64,
    /// `(d - r) dim G`, the dimension when the relators are independent.
    pub expected_dimension: usize,
    /// `count / q^expected_dimension` at the largest `q`.
    pub leading_coefficient: f64,
    pub irreducibility_consistent: bool,
}

/// Counts `|Hom(pres, G(F_q))|` for each `q` and fits the growth exponent.
pub fn dimension_estimate(
    pres: &Presentation,
    kind: GroupKind,
    n: usize,
    qs: &[u64],
    seed: u64,
    budget: u128,
) -> Result<CountProfile> {
    if qs.len() < 3 {
        return Err(Error::BadRange("need at least three q values".into()));
    }
    if qs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadRange(
            "q values must be strictly increasing".into(),
        ));
    }
    let shape = pres.shape();
    let method = match shape {
        Shape::Free(_) => CountMethod::Exact,
        Shape::Surface(_) => CountMethod::SurfaceFormula,
        Shape::Squares(_) => CountMethod::SquaresFormula,
        Shape::Other => CountMethod::Oracle,
    };
    let mut samples = Vec::with_capacity(qs.len());
    for &q in qs {
        let field = field_of_order(q)?;
        let g = Arc::new(group_build(kind, n, &field)?);
        let count = match shape {
            Shape::Free(d) => tuple_count(g.order(), d),
            Shape::Surface(genus) => surface_hom_count(&character_table(g, seed)?, genus)?,
            Shape::Squares(m) => {
                let id = g.identity_class();
                fs_squares_count(&character_table(g, seed)?, m, id)?
            }
            Shape::Other => hom_count_bruteforce_with(
                pres,
                &g,
                OracleOptions {
                    budget,
                    ..Default::default()
                },
            )?,
        };
        samples.push(CountSample { q, count });
    }
    let xs: Vec<f64> = samples.iter().map(|s| (s.q as f64).ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| (s.count as f64).ln()).collect();
    let (slope, intercept) = least_squares(&xs, &ys);
    let dim_g = match kind {
        GroupKind::SL => n * n - 1,
        GroupKind::GL => n * n,
    };
    let r = pres.relators().iter().filter(|w| !w.is_empty()).count();
    let expected = pres.generators().saturating_sub(r) * dim_g;
    let last = samples.last().unwrap();
    let leading = last.count as f64 / (last.q as f64).powi(expected as i32);
    Ok(CountProfile {
        presentation: pres.to_string(),
        shape,
        kind,
        n,
        method,
        samples,
        fitted_dimension: slope,
        fitted_leading_coefficient: intercept.exp(),
        expected_dimension: expected,
        leading_coefficient: leading,
        irreducibility_consistent: (0.5..=1.5).contains(&leading),
    })
}

/// Ordinary least-squares line `y = a x + b`, returned as `(a, b)`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let a = sxy / sxx;
    (a, my - a * mx)
}

#[derive(Debug, Clone, Serialize)]
pub struct DoubleWordStats {
    pub tuples: u128,
    pub image_size: u128,
    pub surjective_fraction: f64,
}

/// Size of the image of `t -> (w1(t), w2(t))` in `G x G`.
pub fn double_word_stats(
    w1: &Word,
    w2: &Word,
    g: &GroupContext,
    budget: u128,
) -> Result<DoubleWordStats> {
    let d = w1.max_generator().max(w2.max_generator());
    let order = g.order();
    let tuples = tuple_count(order, d);
    check_budget("tuples", tuples, budget)?;
    let slots: Vec<usize> = (1..=d).collect();
    let c1 = Compiled::new(w1, &slots);
    let c2 = Compiled::new(w2, &slots);
    let words = (order * order).div_ceil(64);
    let bits = par_fold_tuples(
        g,
        d,
        || vec![0u64; words],
        |b, t| {
            let k = c1.eval(g, t) as usize * order + c2.eval(g, t) as usize;
            b[k / 64] |= 1 << (k % 64);
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x |= y;
            }
            a
        },
    );
    let image_size: u128 = bits.iter().map(|w| w.count_ones() as u128).sum();
    Ok(DoubleWordStats {
        tuples,
        image_size,
        surjective_fraction: image_size as f64 / (order * order) as f64,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TransitivityReport {
    /// Commutation among noncentral elements is transitive.
    pub transitive: bool,
    /// Noncentral elements whose centralizer fails to be abelian.
    pub witnesses: usize,
    /// Tuples `(a1, a2, b, c)` with `[a1,b] = [a2,b] = 1`.
    pub constrained_tuples: u128,
    /// Of those, tuples where `[[a1,a2],[b,c]] != 1`.
    pub hom_failures: u128,
    pub hom_check: bool,
}

/// Finite check of commutative transitivity away from the center, and of
/// the induced relation in `<a1, a2, b, c : [a1,b], [a2,b]>`. The claim
/// concerns `SL_2` over odd fields; other groups are checked as data.
pub fn commutative_transitivity_check(
    g: &GroupContext,
    budget: u128,
) -> Result<TransitivityReport> {
    if g.order() > 10_000 {
        return Err(Error::budget("group order", g.order() as u128, 10_000));
    }
    let n = g.order() as ElementId;
    let centralizers: Vec<Vec<ElementId>> = (0..n)
        .into_par_iter()
        .map(|b| (0..n).filter(|&a| g.commute(a, b)).collect())
        .collect();
    let constrained: u128 = centralizers
        .iter()
        .map(|c| (c.len() as u128).pow(2) * n as u128)
        .sum();
    check_budget("constrained tuples", constrained, budget)?;

    let witnesses = (0..n)
        .into_par_iter()
        .filter(|&b| !g.is_central(b))
        .filter(|&b| {
            let c: Vec<ElementId> = centralizers[b as usize]
                .iter()
                .copied()
                .filter(|&a| !g.is_central(a))
                .collect();
            c.iter().any(|&a| c.iter().any(|&x| !g.commute(a, x)))
        })
        .count();

    let id = g.identity();
    let hom_failures: u128 = (0..n)
        .into_par_iter()
        .map(|b| {
            let cb = &centralizers[b as usize];
            let mut bad = 0u128;
            for c in 0..n {
                let bc = g.commutator(b, c);
                for &a1 in cb {
                    for &a2 in cb {
                        if g.commutator(g.commutator(a1, a2), bc) != id {
                            bad += 1;
                        }
                    }
                }
            }
            bad
        })
        .sum();
    Ok(TransitivityReport {
        transitive: witnesses == 0,
        witnesses,
        constrained_tuples: constrained,
        hom_failures,
        hom_check: hom_failures == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_make;
    use crate::homcount::DEFAULT_TUPLE_BUDGET;

    fn sl2(p: u64) -> GroupContext {
        group_build(GroupKind::SL, 2, &field_make(p, 1).unwrap()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = field_make(2, 1).unwrap();
        let i = Matrix::identity(&f, 2);
        let comm = Word::parse("[x1,x2]").unwrap();
        assert!(eval_word(&comm, &[i.clone(), i.clone()])
            .unwrap()
            .is_identity());
        let a = Matrix::from_ints(&f, 2, &[1, 1, 0, 1]).unwrap();
        let b = Matrix::from_ints(&f, 2, &[1, 0, 1, 1]).unwrap();
        let w = Word::parse("x1 x2").unwrap();
        assert!(eval_word(&w, &[a.clone(), a.inverse().unwrap()])
            .unwrap()
            .is_identity());
        assert_eq!(eval_word(&comm, &[a.clone(), b]).unwrap().order(), Some(3));
        assert!(matches!(eval_word(&comm, &[a]), Err(Error::SpecMismatch)));
    }

    #[test]
    fn fiber_examples() {
        let g = sl2(3);
        let f = g.field().clone();
        let i = Matrix::identity(&f, 2);
        let comm = Word::parse("[x1,x2]").unwrap();
        assert_eq!(fiber_count(&comm, &g, &i).unwrap(), 168);
        assert_eq!(fiber_count(&Word::generator(1), &g, &i).unwrap(), 1);
        assert_eq!(
            fiber_count(&Word::parse("x1^2").unwrap(), &g, &i).unwrap(),
            2
        );
        let total: u128 = (0..g.order() as ElementId)
            .map(|z| fiber_count(&comm, &g, &g.element(z)).unwrap())
            .sum();
        assert_eq!(total, 24 * 24);
        assert_eq!(
            fiber_count_with(&comm, 3, &g, &i, DEFAULT_TUPLE_BUDGET).unwrap(),
            168 * 24
        );
    }

    #[test]
    fn free_group_dimension() {
        let p = dimension_estimate(
            &Presentation::free(2),
            GroupKind::SL,
            2,
            &[3, 5, 7],
            0,
            DEFAULT_TUPLE_BUDGET,
        )
        .unwrap();
        for s in &p.samples {
            assert_eq!(s.count, ((s.q.pow(3) - s.q) as u128).pow(2));
        }
        // Exact slope of (q^3 - q)^2 over q in {3, 5, 7}.
        assert!((p.fitted_dimension - 6.2352).abs() < 1e-3);
        assert_eq!(p.expected_dimension, 6);
        assert!(
            dimension_estimate(&Presentation::free(2), GroupKind::SL, 2, &[3, 5], 0, 1).is_err()
        );
        assert!(
            dimension_estimate(&Presentation::free(2), GroupKind::SL, 2, &[5, 3, 7], 0, 1).is_err()
        );
    }

    #[test]
    fn double_word_examples() {
        let g = sl2(3);
        let x1 = Word::generator(1);
        let x2 = Word::generator(2);
        let s = double_word_stats(&x1, &x2, &g, DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(s.surjective_fraction, 1.0);
        let c = Word::parse("[x1,x2]").unwrap();
        let s = double_word_stats(&c, &c, &g, DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(s.surjective_fraction <= 1.0 / 24.0);
    }

    #[test]
    fn transitivity_small() {
        let r = commutative_transitivity_check(&sl2(3), DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(r.transitive && r.hom_check);
        let gl = group_build(GroupKind::GL, 2, &field_make(3, 1).unwrap()).unwrap();
        let r = commutative_transitivity_check(&gl, DEFAULT_TUPLE_BUDGET).unwrap();
        assert!(r.transitive);
        assert!(commutative_transitivity_check(&sl2(3), 10).is_err());
    }

    #[test]
    fn least_squares_line() {
        let (a, b) = least_squares(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]);
        assert!((a - 2.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
    }
}
