//! Formula-versus-oracle sweep over every enumerable group up to a given
//! order.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chartab::{character_table, CharacterTable};
use crate::error::Result;
use crate::ff::{field_of_order, prime_power};
use crate::homcount::{
    commutator_count, fs_squares_count, hom_count_bruteforce, quad_class_count, quad_class_oracle,
    surface_hom_count, word_histogram, DEFAULT_TUPLE_BUDGET,
};
use crate::matgrp::{group_build, group_order_formula, GroupContext, GroupKind};
use crate::word::{Presentation, Word};

/// Class-count limit for sweeping every quadruple of classes; larger
/// (abelian) groups get a seeded sample of quadruples.
pub const QUAD_FULL_LIMIT: usize = 16;
pub const QUAD_SAMPLES: usize = 2000;

/// `(kind, n, q)` for every `SL_n(F_q)`, `GL_n(F_q)` with `n <= 3` and
/// order at most `max_order`, ordered by `(n, q, kind)`.
pub fn small_groups(max_order: u64) -> Vec<(GroupKind, usize, u64)> {
    let mut out = Vec::new();
    for n in 1..=3usize {
        for q in 2..=max_order + 1 {
            if prime_power(q).is_none() {
                continue;
            }
            for kind in [GroupKind::SL, GroupKind::GL] {
                if group_order_formula(kind, n, q) <= max_order as u128 {
                    out.push((kind, n, q));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub group: String,
    pub check: String,
    pub formula: String,
    pub oracle: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSweep {
    pub group: String,
    pub order: usize,
    pub classes: usize,
    pub checks: usize,
    pub quad_sampled: bool,
    pub mismatches: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub max_order: u64,
    pub groups: Vec<GroupSweep>,
    pub total_checks: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn sweep(max_order: u64, seed: u64) -> Result<SweepReport> {
    let mut groups = Vec::new();
    let mut mismatches = Vec::new();
    for (kind, n, q) in small_groups(max_order) {
        let g = Arc::new(group_build(kind, n, &field_of_order(q)?)?);
        let table = character_table(g.clone(), seed)?;
        let (checks, bad, sampled) = sweep_group(&table, seed)?;
        groups.push(GroupSweep {
            group: g.label(),
            order: g.order(),
            classes: g.class_count(),
            checks,
            quad_sampled: sampled,
            mismatches: bad.len(),
        });
        mismatches.extend(bad);
    }
    Ok(SweepReport {
        max_order,
        total_checks: groups.iter().map(|g| g.checks).sum(),
        groups,
        mismatches,
    })
}

/// Runs every formula against its oracle on one group, returning the
/// number of comparisons, the mismatches and whether quadruples were
/// sampled.
pub fn sweep_group(table: &CharacterTable, seed: u64) -> Result<(usize, Vec<Mismatch>, bool)> {
    let g: &GroupContext = table.group();
    let label = g.label();
    let k = g.class_count();
    let mut checks = 0;
    let mut bad = Vec::new();
    let mut compare = |check: String, formula: Result<u128>, oracle: u128| {
        checks += 1;
        match formula {
            Ok(f) if f == oracle => {}
            other => bad.push(Mismatch {
                group: label.clone(),
                check,
                formula: match other {
                    Ok(f) => f.to_string(),
                    Err(e) => e.to_string(),
                },
                oracle: oracle.to_string(),
            }),
        }
    };

    let comm = word_histogram(&Word::parse("[x1,x2]")?, g, DEFAULT_TUPLE_BUDGET)?;
    for c in 0..k {
        let rep = g.classes()[c].representative as usize;
        compare(
            format!("commutator h={c}"),
            commutator_count(table, c),
            comm[rep] as u128,
        );
    }
    for genus in 1..=2 {
        let oracle = hom_count_bruteforce(&Presentation::surface(genus), g)?;
        compare(
            format!("surface g={genus}"),
            surface_hom_count(table, genus),
            oracle,
        );
    }
    for m in 1..=3 {
        let w = Presentation::squares(m).relators()[0].clone();
        let hist = word_histogram(&w, g, DEFAULT_TUPLE_BUDGET)?;
        for c in 0..k {
            let rep = g.classes()[c].representative as usize;
            compare(
                format!("squares m={m} h={c}"),
                fs_squares_count(table, m, c),
                hist[rep] as u128,
            );
        }
    }

    let sampled = k > QUAD_FULL_LIMIT;
    let triples: Vec<[usize; 3]> = if sampled {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        (0..QUAD_SAMPLES)
            .map(|_| {
                [
                    rng.gen_range(0..k),
                    rng.gen_range(0..k),
                    rng.gen_range(0..k),
                ]
            })
            .collect()
    } else {
        (0..k * k * k)
            .map(|i| [i / (k * k), i / k % k, i % k])
            .collect()
    };
    let oracles: Vec<Vec<u128>> = triples
        .par_iter()
        .map(|&t| quad_class_oracle(g, t, DEFAULT_TUPLE_BUDGET))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7f4a_7c15);
    for (t, o) in triples.iter().zip(&oracles) {
        let fourth: Vec<usize> = if sampled {
            vec![rng.gen_range(0..k)]
        } else {
            (0..k).collect()
        };
        for c4 in fourth {
            let cls = [t[0], t[1], t[2], c4];
            compare(format!("quad {cls:?}"), quad_class_count(table, cls), o[c4]);
        }
    }
    Ok((checks, bad, sampled))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_list() {
        let gs = small_groups(200);
        assert!(gs.contains(&(GroupKind::GL, 2, 4)));
        assert!(gs.contains(&(GroupKind::GL, 3, 2)));
        assert!(!gs.contains(&(GroupKind::SL, 2, 7)));
        assert!(gs.contains(&(GroupKind::GL, 1, 199)));
    }

    #[test]
    fn sweep_tiny() {
        let r = sweep(24, 1).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches);
        assert!(r.groups.iter().any(|g| g.group == "SL2(F3)"));
    }
}
