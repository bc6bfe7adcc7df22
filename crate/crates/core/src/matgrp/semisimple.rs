use super::group::group_order_formula;
use super::{GroupKind, Matrix};
use crate::ff::Field;
use crate::poly::Poly;

/// A semisimple conjugacy class of `GL_n(F_q)`, described by its
/// characteristic polynomial `prod f_i^{a_i}` over distinct monic
/// irreducibles `f_i != x`.
#[derive(Debug, Clone)]
pub struct SemisimpleType {
    pub factors: Vec<(Poly, usize)>,
    /// Block diagonal of `a_i` copies of each companion matrix.
    pub representative: Matrix,
}

impl SemisimpleType {
    pub fn max_multiplicity(&self) -> usize {
        self.factors.iter().map(|(_, a)| *a).max().unwrap_or(0)
    }
}

/// All semisimple classes of `GL_n(F_q)` (or of `SL_n(F_q)`, keeping those
/// of determinant one), generated from factorization patterns rather than
/// from an element enumeration.
pub fn semisimple_class_types(kind: GroupKind, n: usize, field: &Field) -> Vec<SemisimpleType> {
    let q = field.order() as u64;
    let mut irreducibles: Vec<Poly> = Vec::new();
    for d in 1..=n {
        for idx in 0..q.pow(d as u32) {
            let g = Poly::monic_from_index(field, d, idx);
            if g.coeff(0) != 0 && g.is_irreducible(field) {
                irreducibles.push(g);
            }
        }
    }
    let mut out = Vec::new();
    let mut chosen: Vec<(Poly, usize)> = Vec::new();
    collect_types(&irreducibles, 0, n, &mut chosen, &mut |factors| {
        let blocks: Vec<Matrix> = factors
            .iter()
            .flat_map(|(g, a)| std::iter::repeat_n(Matrix::companion(field, g).unwrap(), *a))
            .collect();
        let rep = Matrix::block_diagonal(field, &blocks);
        if kind == GroupKind::GL || rep.det() == 1 {
            out.push(SemisimpleType {
                factors: factors.to_vec(),
                representative: rep,
            });
        }
    });
    out
}

type Factorization = [(Poly, usize)];

fn collect_types(
    irr: &[Poly],
    start: usize,
    remaining: usize,
    chosen: &mut Vec<(Poly, usize)>,
    emit: &mut dyn FnMut(&Factorization),
) {
    if remaining == 0 {
        emit(chosen);
        return;
    }
    for i in start..irr.len() {
        let d = irr[i].degree().unwrap();
        let mut a = 1;
        while a * d <= remaining {
            chosen.push((irr[i].clone(), a));
            collect_types(irr, i + 1, remaining - a * d, chosen, emit);
            chosen.pop();
            a += 1;
        }
    }
}

/// Exact centralizer order of a semisimple element with characteristic
/// polynomial `prod f_i^{a_i}`: `prod |GL_{a_i}(F_{q^{deg f_i}})|`, divided
/// by `q - 1` inside `SL_n`.
pub fn semisimple_centralizer_order(kind: GroupKind, q: u64, factors: &[(usize, usize)]) -> u128 {
    let gl: u128 = factors
        .iter()
        .map(|&(deg, a)| group_order_formula(GroupKind::GL, a, q.pow(deg as u32)))
        .product();
    match kind {
        GroupKind::GL => gl,
        GroupKind::SL => gl / (q as u128 - 1),
    }
}
