//! Formula-versus-enumeration checks on groups outside the prime-field
//! sweep: extension fields and the relations between the count families.

use std::sync::Arc;

use repvar::chartab::{character_table, fs_indicator};
use repvar::ff::field_make;
use repvar::homcount::{
    fs_squares_count, quad_class_count, quad_class_oracle, surface_hom_count, word_histogram,
    DEFAULT_TUPLE_BUDGET,
};
use repvar::matgrp::{group_build, GroupKind};
use repvar::verify::sweep_group;
use repvar::word::Word;
use repvar::wordmap::double_word_stats;

#[test]
fn extension_field_groups_match_oracles() {
    for (kind, n, p, m) in [
        (GroupKind::SL, 2, 2, 2),
        (GroupKind::GL, 2, 2, 2),
        (GroupKind::GL, 1, 3, 2),
        (GroupKind::GL, 1, 2, 3),
    ] {
        let g = Arc::new(group_build(kind, n, &field_make(p, m).unwrap()).unwrap());
        let t = character_table(g.clone(), 11).unwrap();
        let (checks, bad, _) = sweep_group(&t, 11).unwrap();
        assert!(checks > 0);
        assert!(bad.is_empty(), "{}: {:?}", g.label(), bad);
    }
}

#[test]
fn indicators_count_square_roots() {
    // sum_chi ind(chi) chi(g) is the number of square roots of g.
    let g = Arc::new(group_build(GroupKind::SL, 2, &field_make(5, 1).unwrap()).unwrap());
    let t = character_table(g.clone(), 0).unwrap();
    let hist = word_histogram(&Word::parse("x1^2").unwrap(), &g, DEFAULT_TUPLE_BUDGET).unwrap();
    for c in 0..g.class_count() {
        let s: f64 = (0..t.class_count())
            .map(|chi| fs_indicator(&t, chi).unwrap() as f64 * t.value(chi, c).re)
            .sum();
        let rep = g.classes()[c].representative as usize;
        assert!((s - hist[rep] as f64).abs() < 1e-6);
    }
    assert_eq!(
        fs_squares_count(&t, 1, g.identity_class()).unwrap(),
        hist[g.identity() as usize] as u128
    );
}

#[test]
fn genus_one_and_range() {
    let g = Arc::new(group_build(GroupKind::GL, 2, &field_make(3, 1).unwrap()).unwrap());
    let t = character_table(g.clone(), 0).unwrap();
    assert!(surface_hom_count(&t, 0).is_err());
    assert_eq!(
        surface_hom_count(&t, 1).unwrap(),
        (g.order() * g.class_count()) as u128
    );
}

#[test]
fn quad_with_identity_reduces_to_triples() {
    let g = Arc::new(group_build(GroupKind::SL, 2, &field_make(3, 1).unwrap()).unwrap());
    let t = character_table(g.clone(), 0).unwrap();
    let e = g.identity_class();
    for c in 0..g.class_count() {
        let inv = g.class_of(g.inverse(g.classes()[c].representative));
        let size = g.classes()[c].size as u128;
        assert_eq!(quad_class_count(&t, [c, inv, e, e]).unwrap(), size);
        let o = quad_class_oracle(&g, [c, inv, e], DEFAULT_TUPLE_BUDGET).unwrap();
        assert_eq!(o[e], size);
    }
}

#[test]
fn double_word_statistics() {
    let g = group_build(GroupKind::SL, 2, &field_make(3, 1).unwrap()).unwrap();
    let id = double_word_stats(
        &Word::parse("x1").unwrap(),
        &Word::parse("x2").unwrap(),
        &g,
        DEFAULT_TUPLE_BUDGET,
    )
    .unwrap();
    assert_eq!(id.image_size, 576);
    assert!((id.surjective_fraction - 1.0).abs() < 1e-12);
    let same = double_word_stats(
        &Word::parse("[x1,x2]").unwrap(),
        &Word::parse("[x1,x2]").unwrap(),
        &g,
        DEFAULT_TUPLE_BUDGET,
    )
    .unwrap();
    assert!(same.image_size <= 24);
}
