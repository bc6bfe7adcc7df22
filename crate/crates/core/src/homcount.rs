//! Homomorphism and class-equation counts: character-sum formulas and
//! exhaustive enumeration oracles.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::chartab::{certify_count, CharacterTable};
use crate::error::{Error, Result};
use crate::matgrp::{ClassId, ElementId, GroupContext};
use crate::word::{Presentation, Word};

/// Default limit on the number of tuples an oracle may enumerate.
pub const DEFAULT_TUPLE_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Split single relators into disjoint blocks, solve a lone generator
    /// when possible, otherwise scan.
    #[default]
    Auto,
    /// Enumerate all of `G^d`.
    FullScan,
}

#[derive(Debug, Clone, Copy)]
pub struct OracleOptions {
    pub strategy: Strategy,
    pub budget: u128,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            strategy: Strategy::Auto,
            budget: DEFAULT_TUPLE_BUDGET,
        }
    }
}

/// A word compiled against a fixed ordering of its support generators.
#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    letters: Vec<(usize, bool)>,
}

impl Compiled {
    /// `slots[i]` is the generator bound to tuple coordinate `i`.
    pub(crate) fn new(w: &Word, slots: &[usize]) -> Compiled {
        let letters = w
            .letters()
            .iter()
            .map(|l| {
                let pos = slots
                    .iter()
                    .position(|&g| g == l.generator)
                    .expect("generator bound to a slot");
                (pos, l.inverse)
            })
            .collect();
        Compiled { letters }
    }

    #[inline]
    pub(crate) fn eval(&self, g: &GroupContext, t: &[ElementId]) -> ElementId {
        let mut acc = g.identity();
        for &(i, inv) in &self.letters {
            let x = if inv { g.inverse(t[i]) } else { t[i] };
            acc = g.mul(acc, x);
        }
        acc
    }
}

pub(crate) fn tuple_count(order: usize, d: usize) -> u128 {
    (order as u128).checked_pow(d as u32).unwrap_or(u128::MAX)
}

pub(crate) fn check_budget(what: &'static str, needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        return Err(Error::budget(what, needed, budget));
    }
    Ok(())
}

/// Folds `f` over every tuple of `G^d`, sharding on the first coordinate.
/// `merge` must be commutative and associative for the result to be
/// independent of scheduling.
pub(crate) fn par_fold_tuples<A, I, F, M>(g: &GroupContext, d: usize, init: I, f: F, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    F: Fn(&mut A, &[ElementId]) + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    let n = g.order() as ElementId;
    if d == 0 {
        let mut acc = init();
        f(&mut acc, &[]);
        return acc;
    }
    (0..n)
        .into_par_iter()
        .fold(&init, |mut acc, first| {
            let mut t = vec![0 as ElementId; d];
            t[0] = first;
            loop {
                f(&mut acc, &t);
                let mut i = d - 1;
                loop {
                    if i == 0 {
                        return acc;
                    }
                    t[i] += 1;
                    if t[i] < n {
                        break;
                    }
                    t[i] = 0;
                    i -= 1;
                }
            }
        })
        .reduce(&init, merge)
}

/// Fiber sizes of `w` on `G^k`, where `k` is the size of `w`'s support.
/// Entry `z` counts tuples with `w(t) = z`.
pub fn word_histogram(w: &Word, g: &GroupContext, budget: u128) -> Result<Vec<u64>> {
    let slots = w.support();
    check_budget("tuples", tuple_count(g.order(), slots.len()), budget)?;
    let c = Compiled::new(w, &slots);
    let n = g.order();
    Ok(par_fold_tuples(
        g,
        slots.len(),
        || vec![0u64; n],
        |h, t| h[c.eval(g, t) as usize] += 1,
        add_vecs,
    ))
}

fn add_vecs(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// `(a * b)(z) = sum_x a(x) b(x^-1 z)` on the group.
fn convolve(g: &GroupContext, a: &[u128], b: &[u128]) -> Vec<u128> {
    let n = g.order();
    (0..n as ElementId)
        .into_par_iter()
        .map(|z| {
            (0..n as ElementId)
                .filter(|&x| a[x as usize] != 0)
                .map(|x| a[x as usize] * b[g.mul(g.inverse(x), z) as usize])
                .sum()
        })
        .collect()
}

/// Exact number of tuples in `G^d` satisfying every relator, with the
/// default options.
pub fn hom_count_bruteforce(pres: &Presentation, g: &GroupContext) -> Result<u128> {
    hom_count_bruteforce_with(pres, g, OracleOptions::default())
}

pub fn hom_count_bruteforce_with(
    pres: &Presentation,
    g: &GroupContext,
    opts: OracleOptions,
) -> Result<u128> {
    let d = pres.generators();
    let order = g.order();
    let rels: Vec<&Word> = pres.relators().iter().filter(|r| !r.is_empty()).collect();
    if opts.strategy == Strategy::FullScan {
        return full_scan(&rels, d, g, opts.budget);
    }
    if rels.is_empty() {
        return Ok(tuple_count(order, d));
    }
    if rels.len() == 1 {
        let r = rels[0];
        let blocks = r.disjoint_blocks();
        if blocks.len() > 1 {
            let free_factor = tuple_count(order, d - r.support().len());
            let mut dist: Option<Vec<u128>> = None;
            let mut spent = 0u128;
            for b in &blocks {
                spent = spent.saturating_add(tuple_count(order, b.support().len()));
                check_budget("tuples", spent, opts.budget)?;
                let h: Vec<u128> = word_histogram(b, g, opts.budget)?
                    .into_iter()
                    .map(u128::from)
                    .collect();
                dist = Some(match dist {
                    None => h,
                    Some(prev) => convolve(g, &prev, &h),
                });
            }
            return Ok(dist.unwrap()[g.identity() as usize] * free_factor);
        }
    }
    if let Some(count) = lone_generator_scan(&rels, d, g, opts.budget)? {
        return Ok(count);
    }
    full_scan(&rels, d, g, opts.budget)
}

fn full_scan(rels: &[&Word], d: usize, g: &GroupContext, budget: u128) -> Result<u128> {
    check_budget("tuples", tuple_count(g.order(), d), budget)?;
    let slots: Vec<usize> = (1..=d).collect();
    let compiled: Vec<Compiled> = rels.iter().map(|r| Compiled::new(r, &slots)).collect();
    let id = g.identity();
    Ok(par_fold_tuples(
        g,
        d,
        || 0u128,
        |acc, t| {
            if compiled.iter().all(|c| c.eval(g, t) == id) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    ))
}

/// When the first relator is `u x^{+-1} v` with `x` absent from `u` and
/// `v`, `x` is determined by the other coordinates.
fn lone_generator_scan(
    rels: &[&Word],
    d: usize,
    g: &GroupContext,
    budget: u128,
) -> Result<Option<u128>> {
    let Some(first) = rels.first() else {
        return Ok(None);
    };
    let Some(pos) = first
        .letters()
        .iter()
        .position(|l| first.occurrences(l.generator) == 1)
    else {
        return Ok(None);
    };
    let lone = first.letters()[pos];
    check_budget("tuples", tuple_count(g.order(), d - 1), budget)?;
    let slots: Vec<usize> = (1..=d).filter(|&i| i != lone.generator).collect();
    let mut all_slots = slots.clone();
    all_slots.push(lone.generator);
    let u = Word::new(
        &first.letters()[..pos]
            .iter()
            .map(|l| (l.generator, if l.inverse { -1 } else { 1 }))
            .collect::<Vec<_>>(),
    )?;
    let v = Word::new(
        &first.letters()[pos + 1..]
            .iter()
            .map(|l| (l.generator, if l.inverse { -1 } else { 1 }))
            .collect::<Vec<_>>(),
    )?;
    let cu = Compiled::new(&u, &all_slots);
    let cv = Compiled::new(&v, &all_slots);
    let rest: Vec<Compiled> = rels[1..]
        .iter()
        .map(|r| Compiled::new(r, &all_slots))
        .collect();
    let id = g.identity();
    Ok(Some(par_fold_tuples(
        g,
        d - 1,
        || 0u128,
        |acc, t| {
            let mut full = Vec::with_capacity(d);
            full.extend_from_slice(t);
            full.push(id);
            // u x v = 1  =>  x = u^-1 v^-1
            let y = g.mul(g.inverse(cu.eval(g, &full)), g.inverse(cv.eval(g, &full)));
            full[d - 1] = if lone.inverse { g.inverse(y) } else { y };
            if rest.iter().all(|c| c.eval(g, &full) == id) {
                *acc += 1;
            }
        },
        |a, b| a + b,
    )))
}

/// Class-size-weighted count histogram over `C1 x C2 x C3`: entry `c` is
/// the number of triples whose product inverse lies in class `c`, so it
/// equals the `(X, Y, Z, T)` count with `T` in class `c`.
pub fn quad_class_oracle(g: &GroupContext, c: [ClassId; 3], budget: u128) -> Result<Vec<u128>> {
    let members: Vec<Vec<ElementId>> = c.iter().map(|&k| g.class_members(k)).collect();
    let needed = members.iter().map(|m| m.len() as u128).product::<u128>();
    check_budget("class triples", needed, budget)?;
    let k = g.class_count();
    Ok(members[0]
        .par_iter()
        .fold(
            || vec![0u128; k],
            |mut h, &x| {
                for &y in &members[1] {
                    let xy = g.mul(x, y);
                    for &z in &members[2] {
                        h[g.class_of(g.inverse(g.mul(xy, z)))] += 1;
                    }
                }
                h
            },
        )
        .reduce(
            || vec![0u128; k],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        ))
}

/// Number of pairs `(x, y)` with `x y x^-1 y^-1 = h`:
/// `|G| sum_chi chi(h) / chi(1)`.
pub fn commutator_count(table: &CharacterTable, h: ClassId) -> Result<u128> {
    check_class(table, h)?;
    let order = table.group().order() as f64;
    let s: Complex64 = (0..table.class_count())
        .map(|i| table.value(i, h) / table.degree(i) as f64)
        .sum();
    certify_count(s * order)
}

/// `|Hom(pi_1(S_g), G)| = |G|^{2g-1} sum_chi chi(1)^{2-2g}`, evaluated in
/// exact integer arithmetic from the certified degrees.
pub fn surface_hom_count(table: &CharacterTable, genus: usize) -> Result<u128> {
    if genus == 0 {
        return Err(Error::BadRange("genus must be at least 1".into()));
    }
    let order = table.group().order() as u128;
    let overflow = || Error::InvalidArgument("surface count overflows 128 bits".into());
    let top = order
        .checked_pow(2 * genus as u32 - 1)
        .ok_or_else(overflow)?;
    let mut total = 0u128;
    for &d in table.degrees() {
        let denom = (d as u128)
            .checked_pow(2 * genus as u32 - 2)
            .ok_or_else(overflow)?;
        total = total.checked_add(top / denom).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// Number of `m`-tuples with `x_1^2 .. x_m^2 = h`:
/// `|G|^{m-1} sum_chi iota(chi)^m chi(h) / chi(1)^{m-1}`.
pub fn fs_squares_count(table: &CharacterTable, m: usize, h: ClassId) -> Result<u128> {
    if m == 0 {
        return Err(Error::BadRange("m must be at least 1".into()));
    }
    check_class(table, h)?;
    let order = table.group().order() as f64;
    let s: Complex64 = (0..table.class_count())
        .filter(|&i| table.indicators()[i] != 0)
        .map(|i| {
            let iota = (table.indicators()[i] as f64).powi(m as i32);
            table.value(i, h) * iota / (table.degree(i) as f64).powi(m as i32 - 1)
        })
        .sum();
    certify_count(s * order.powi(m as i32 - 1))
}

/// Number of `(X, Y, Z, T)` in `C_1 x C_2 x C_3 x C_4` with `XYZT = 1`:
/// `|C_1||C_2||C_3||C_4| / |G| sum_chi chi(x_1)..chi(x_4) / chi(1)^2`.
pub fn quad_class_count(table: &CharacterTable, classes: [ClassId; 4]) -> Result<u128> {
    for &c in &classes {
        check_class(table, c)?;
    }
    let g = table.group();
    let sizes: f64 = classes
        .iter()
        .map(|&c| g.classes()[c].size as f64)
        .product();
    let s: Complex64 = (0..table.class_count())
        .map(|i| {
            let p: Complex64 = classes.iter().map(|&c| table.value(i, c)).product();
            p / (table.degree(i) as f64).powi(2)
        })
        .sum();
    certify_count(s * (sizes / g.order() as f64))
}

fn check_class(table: &CharacterTable, c: ClassId) -> Result<()> {
    if c >= table.class_count() {
        return Err(Error::NoSuchClass);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::chartab::character_table;
    use crate::ff::field_make;
    use crate::matgrp::{group_build, GroupKind};

    fn s3() -> CharacterTable {
        let g = Arc::new(group_build(GroupKind::GL, 2, &field_make(2, 1).unwrap()).unwrap());
        character_table(g, 3).unwrap()
    }

    fn class_by_order(t: &CharacterTable, o: u64) -> ClassId {
        t.group()
            .classes()
            .iter()
            .position(|c| c.element_order == o)
            .unwrap()
    }

    #[test]
    fn s3_oracle_examples() {
        let t = s3();
        let g = t.group();
        let comm = Presentation::parse(None, "[x1,x2]").unwrap();
        assert_eq!(hom_count_bruteforce(&comm, g).unwrap(), 18);
        let sq = Presentation::parse(None, "x1^2").unwrap();
        assert_eq!(hom_count_bruteforce(&sq, g).unwrap(), 4);
        assert_eq!(hom_count_bruteforce(&Presentation::free(1), g).unwrap(), 6);
        assert_eq!(
            hom_count_bruteforce(&Presentation::surface(2), g).unwrap(),
            486
        );
        let full = OracleOptions {
            strategy: Strategy::FullScan,
            ..Default::default()
        };
        assert_eq!(
            hom_count_bruteforce_with(&Presentation::surface(2), g, full).unwrap(),
            486
        );
        assert_eq!(
            hom_count_bruteforce(&Presentation::squares(3), g).unwrap(),
            90
        );
    }

    #[test]
    fn s3_formula_examples() {
        let t = s3();
        let id = t.group().identity_class();
        let three = class_by_order(&t, 3);
        let two = class_by_order(&t, 2);
        assert_eq!(commutator_count(&t, id).unwrap(), 18);
        assert_eq!(commutator_count(&t, three).unwrap(), 9);
        assert_eq!(surface_hom_count(&t, 1).unwrap(), 18);
        assert_eq!(surface_hom_count(&t, 2).unwrap(), 486);
        assert_eq!(fs_squares_count(&t, 1, id).unwrap(), 4);
        assert_eq!(fs_squares_count(&t, 2, id).unwrap(), 18);
        assert_eq!(fs_squares_count(&t, 3, id).unwrap(), 90);
        assert_eq!(quad_class_count(&t, [two; 4]).unwrap(), 27);
        assert_eq!(quad_class_count(&t, [id; 4]).unwrap(), 1);
        let o = quad_class_oracle(t.group(), [two; 3], DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(o[two], 27);
    }

    #[test]
    fn lone_generator_pruning_matches_scan() {
        let g = group_build(GroupKind::SL, 2, &field_make(3, 1).unwrap()).unwrap();
        let full = OracleOptions {
            strategy: Strategy::FullScan,
            ..Default::default()
        };
        for rel in [
            "x1 x2 x3 X1 x2",
            "x1^3; x2^2",
            "x1 x2^2 x1^-1 X3",
            "[x1,x2] x3^2",
        ] {
            let p = Presentation::parse(None, rel).unwrap();
            assert_eq!(
                hom_count_bruteforce(&p, &g).unwrap(),
                hom_count_bruteforce_with(&p, &g, full).unwrap(),
                "{rel}"
            );
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = group_build(GroupKind::SL, 2, &field_make(3, 1).unwrap()).unwrap();
        let opts = OracleOptions {
            strategy: Strategy::FullScan,
            budget: 1000,
        };
        let err = hom_count_bruteforce_with(&Presentation::surface(2), &g, opts).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn trivial_group_counts() {
        let g = Arc::new(group_build(GroupKind::SL, 1, &field_make(3, 1).unwrap()).unwrap());
        let t = character_table(g, 0).unwrap();
        for genus in 1..5 {
            assert_eq!(surface_hom_count(&t, genus).unwrap(), 1);
        }
    }
}
