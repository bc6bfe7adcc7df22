use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::matrix::{det_codes, mul_into, Entries, Matrix};
use super::{ClassId, ElementId, GroupKind};
use crate::error::{Error, Result};
use crate::ff::{Field, FieldDescriptor};
use crate::poly::Poly;

/// Default cap on the order of an enumerated group.
pub const DEFAULT_MAX_ORDER: u64 = 100_000;

/// Groups up to this order get a full multiplication table.
const MUL_TABLE_LIMIT: usize = 2500;

/// Irreducible factor of a characteristic polynomial with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorMultiplicity {
    pub factor: Vec<u32>,
    pub degree: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConjugacyClassInfo {
    /// Smallest member in the enumeration order.
    pub representative: ElementId,
    pub size: u64,
    pub centralizer_order: u64,
    pub element_order: u64,
    /// Characteristic polynomial, coefficients low to high.
    pub char_poly: Vec<u32>,
    pub is_semisimple: bool,
    pub eigenvalue_multiplicities: Vec<FactorMultiplicity>,
    pub inverse_class: ClassId,
    pub square_class: ClassId,
}

impl ConjugacyClassInfo {
    /// Largest eigenvalue multiplicity over the algebraic closure.
    pub fn max_eigenvalue_multiplicity(&self) -> usize {
        self.eigenvalue_multiplicities
            .iter()
            .map(|f| f.multiplicity)
            .max()
            .unwrap_or(0)
    }

    /// Semisimple with every eigenvalue of multiplicity one.
    pub fn is_regular_semisimple(&self) -> bool {
        self.is_semisimple && self.max_eigenvalue_multiplicity() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub kind: GroupKind,
    pub n: usize,
    pub field: FieldDescriptor,
}

/// `SL_n(F_q)` or `GL_n(F_q)`, fully enumerated.
///
/// Elements are numbered by increasing packed key, the row-major entries
/// read as a base-`q` number; this is the canonical enumeration order.
pub struct GroupContext {
    kind: GroupKind,
    n: usize,
    field: Field,
    entries: Vec<u32>,
    keys: Vec<u64>,
    identity: ElementId,
    inverse: Vec<ElementId>,
    classes: Vec<ConjugacyClassInfo>,
    class_of: Vec<ClassId>,
    table: OnceLock<Option<Vec<ElementId>>>,
}

/// `|GL_n(F_q)|`, or `|SL_n(F_q)|`, as exact integers.
pub fn group_order_formula(kind: GroupKind, n: usize, q: u64) -> u128 {
    let q = q as u128;
    let qn = q.pow(n as u32);
    let gl: u128 = (0..n).map(|i| qn - q.pow(i as u32)).product();
    match kind {
        GroupKind::GL => gl,
        GroupKind::SL => gl / (q - 1),
    }
}

pub fn group_build(kind: GroupKind, n: usize, field: &Field) -> Result<GroupContext> {
    group_build_with_budget(kind, n, field, DEFAULT_MAX_ORDER)
}

pub fn group_build_with_budget(
    kind: GroupKind,
    n: usize,
    field: &Field,
    max_order: u64,
) -> Result<GroupContext> {
    if n == 0 {
        return Err(Error::BadRange(
            "matrix dimension must be at least 1".into(),
        ));
    }
    let q = field.order() as u64;
    let order = group_order_formula(kind, n, q);
    if order > max_order as u128 {
        return Err(Error::budget("group order", order, max_order as u128));
    }
    let candidates = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if candidates > u64::MAX as u128 / 2 {
        return Err(Error::budget(
            "matrix enumeration",
            candidates,
            u64::MAX as u128 / 2,
        ));
    }
    let nn = n * n;
    let keys: Vec<u64> = (0..candidates as usize)
        .into_par_iter()
        .map(|key| key as u64)
        .filter(|&key| {
            let e = decode_key(key, q, nn);
            let d = det_codes(field, n, &e);
            match kind {
                GroupKind::SL => d == 1,
                GroupKind::GL => d != 0,
            }
        })
        .collect();
    if keys.len() as u128 != order {
        return Err(Error::Cache(format!(
            "enumerated {} elements, formula gives {order}",
            keys.len()
        )));
    }
    let mut entries = Vec::with_capacity(keys.len() * nn);
    for &k in &keys {
        entries.extend_from_slice(&decode_key(k, q, nn));
    }
    let mut ctx = GroupContext {
        kind,
        n,
        field: field.clone(),
        entries,
        keys,
        identity: 0,
        inverse: Vec::new(),
        classes: Vec::new(),
        class_of: Vec::new(),
        table: OnceLock::new(),
    };
    ctx.identity = ctx
        .index_of(&Matrix::identity(field, n))
        .expect("identity is in every matrix group");
    ctx.inverse = (0..ctx.order() as ElementId)
        .into_par_iter()
        .map(|i| {
            let inv = ctx
                .element(i)
                .inverse()
                .expect("group elements are invertible");
            ctx.index_of(&inv)
                .expect("groups are closed under inversion")
        })
        .collect();
    ctx.compute_classes();
    Ok(ctx)
}

fn decode_key(mut key: u64, q: u64, len: usize) -> Entries {
    let mut e: Entries = SmallVec::from_elem(0, len);
    for i in (0..len).rev() {
        e[i] = (key % q) as u32;
        key /= q;
    }
    e
}

impl GroupContext {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn identity(&self) -> ElementId {
        self.identity
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor {
            kind: self.kind,
            n: self.n,
            field: self.field.descriptor(),
        }
    }

    /// Short label such as `SL2(F7)`.
    pub fn label(&self) -> String {
        format!("{:?}{}(F{})", self.kind, self.n, self.q())
    }

    pub fn classes(&self) -> &[ConjugacyClassInfo] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: ElementId) -> ClassId {
        self.class_of[x as usize]
    }

    pub fn class_members(&self, c: ClassId) -> Vec<ElementId> {
        (0..self.order() as ElementId)
            .filter(|&x| self.class_of[x as usize] == c)
            .collect()
    }

    /// Class of the identity. Always class 0.
    pub fn identity_class(&self) -> ClassId {
        self.class_of(self.identity)
    }

    pub fn element_codes(&self, x: ElementId) -> &[u32] {
        let nn = self.n * self.n;
        &self.entries[x as usize * nn..(x as usize + 1) * nn]
    }

    pub fn element(&self, x: ElementId) -> Matrix {
        Matrix::from_entries(
            &self.field,
            self.n,
            self.element_codes(x).iter().copied().collect(),
        )
    }

    pub fn key_of(&self, x: ElementId) -> u64 {
        self.keys[x as usize]
    }

    fn key_of_codes(&self, codes: &[u32]) -> u64 {
        let q = self.q();
        codes.iter().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    pub fn index_of(&self, m: &Matrix) -> Result<ElementId> {
        if m.dim() != self.n || **m.field() != *self.field {
            return Err(Error::SpecMismatch);
        }
        let key = self.key_of_codes(m.codes());
        self.keys
            .binary_search(&key)
            .map(|i| i as ElementId)
            .map_err(|_| Error::ElementNotInGroup)
    }

    pub fn inverse(&self, x: ElementId) -> ElementId {
        self.inverse[x as usize]
    }

    fn table(&self) -> Option<&Vec<ElementId>> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                (n <= MUL_TABLE_LIMIT).then(|| {
                    (0..n * n)
                        .into_par_iter()
                        .map(|ab| self.mul_slow((ab / n) as ElementId, (ab % n) as ElementId))
                        .collect()
                })
            })
            .as_ref()
    }

    fn mul_slow(&self, a: ElementId, b: ElementId) -> ElementId {
        let mut out: Entries = SmallVec::from_elem(0, self.n * self.n);
        mul_into(
            &self.field,
            self.n,
            self.element_codes(a),
            self.element_codes(b),
            &mut out,
        );
        let key = self.key_of_codes(&out);
        self.keys
            .binary_search(&key)
            .expect("group is closed under multiplication") as ElementId
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        match self.table() {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conjugate(&self, g: ElementId, x: ElementId) -> ElementId {
        self.mul(self.mul(g, x), self.inverse[g as usize])
    }

    /// `a b a^{-1} b^{-1}`.
    #[inline]
    pub fn commutator(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul(
            self.mul(a, b),
            self.mul(self.inverse[a as usize], self.inverse[b as usize]),
        )
    }

    pub fn commute(&self, a: ElementId, b: ElementId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, x: ElementId) -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_central(&self, x: ElementId) -> bool {
        self.classes[self.class_of(x)].size == 1
    }

    fn compute_classes(&mut self) {
        let order = self.order();
        self.table();
        let mut class_of = vec![ClassId::MAX; order];
        let mut raw: Vec<(ElementId, u64)> = Vec::new();
        for x in 0..order as ElementId {
            if class_of[x as usize] != ClassId::MAX {
                continue;
            }
            let mut orbit: Vec<ElementId> = (0..order as ElementId)
                .into_par_iter()
                .map(|g| self.conjugate(g, x))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            let id = raw.len();
            for &y in &orbit {
                class_of[y as usize] = id;
            }
            raw.push((x, orbit.len() as u64));
        }
        let infos: Vec<ConjugacyClassInfo> = raw
            .par_iter()
            .map(|&(rep, size)| {
                let m = self.element(rep);
                let cp = m.charpoly();
                let mp = m.minpoly();
                let mults = cp
                    .factor(&self.field)
                    .into_iter()
                    .map(|(g, mult)| FactorMultiplicity {
                        degree: g.degree().unwrap(),
                        factor: g.coeffs().to_vec(),
                        multiplicity: mult,
                    })
                    .collect();
                ConjugacyClassInfo {
                    representative: rep,
                    size,
                    centralizer_order: order as u64 / size,
                    element_order: self.element_order(rep),
                    char_poly: cp.coeffs().to_vec(),
                    is_semisimple: mp.is_squarefree(&self.field),
                    eigenvalue_multiplicities: mults,
                    inverse_class: class_of[self.inverse(rep) as usize],
                    square_class: class_of[self.mul(rep, rep) as usize],
                }
            })
            .collect();
        let mut perm: Vec<usize> = (0..infos.len()).collect();
        perm.sort_by_key(|&i| {
            (
                infos[i].element_order,
                infos[i].size,
                infos[i].representative,
            )
        });
        let mut new_id = vec![0; infos.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_id[old] = new;
        }
        self.classes = perm
            .iter()
            .map(|&old| {
                let mut c = infos[old].clone();
                c.inverse_class = new_id[c.inverse_class];
                c.square_class = new_id[c.square_class];
                c
            })
            .collect();
        self.class_of = class_of.into_iter().map(|c| new_id[c]).collect();
    }

    /// Serializable form of the enumeration and class decomposition.
    pub fn snapshot(&self) -> GroupSnapshot {
        GroupSnapshot {
            descriptor: self.descriptor(),
            keys: self.keys.clone(),
            classes: self.classes.clone(),
            class_of: self.class_of.iter().map(|&c| c as u32).collect(),
        }
    }

    /// Rebuilds a context from a snapshot, re-deriving inverses. The element
    /// count is checked against the order formula.
    pub fn from_snapshot(field: &Field, snap: GroupSnapshot) -> Result<GroupContext> {
        let d = &snap.descriptor;
        if d.field != field.descriptor() {
            return Err(Error::Cache("snapshot field does not match".into()));
        }
        let order = group_order_formula(d.kind, d.n, field.order() as u64);
        if snap.keys.len() as u128 != order || snap.class_of.len() != snap.keys.len() {
            return Err(Error::Cache(
                "snapshot element count does not match order".into(),
            ));
        }
        let nn = d.n * d.n;
        let q = field.order() as u64;
        let mut entries = Vec::with_capacity(snap.keys.len() * nn);
        for &k in &snap.keys {
            entries.extend_from_slice(&decode_key(k, q, nn));
        }
        let mut ctx = GroupContext {
            kind: d.kind,
            n: d.n,
            field: field.clone(),
            entries,
            keys: snap.keys,
            identity: 0,
            inverse: Vec::new(),
            classes: snap.classes,
            class_of: snap.class_of.into_iter().map(|c| c as ClassId).collect(),
            table: OnceLock::new(),
        };
        ctx.identity = ctx.index_of(&Matrix::identity(field, d.n))?;
        ctx.inverse = (0..ctx.order() as ElementId)
            .into_par_iter()
            .map(|i| {
                let inv = ctx.element(i).inverse().ok_or(Error::ElementNotInGroup)?;
                ctx.index_of(&inv)
            })
            .collect::<Result<_>>()?;
        Ok(ctx)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSnapshot {
    pub descriptor: GroupDescriptor,
    pub keys: Vec<u64>,
    pub classes: Vec<ConjugacyClassInfo>,
    pub class_of: Vec<u32>,
}

/// Order of `{g : gx = xg}` by a scan over all elements.
pub fn centralizer_order(ctx: &GroupContext, x: &Matrix) -> Result<u64> {
    let xi = ctx.index_of(x)?;
    Ok((0..ctx.order() as ElementId)
        .into_par_iter()
        .filter(|&g| ctx.commute(g, xi))
        .count() as u64)
}

/// The semisimple class with a given squarefree characteristic polynomial,
/// located through the companion matrix.
pub fn semisimple_class_from_charpoly<'a>(
    ctx: &'a GroupContext,
    charpoly: &Poly,
) -> Result<&'a ConjugacyClassInfo> {
    let f = ctx.field();
    if charpoly.degree() != Some(ctx.dim()) || charpoly.lead() != 1 || charpoly.coeff(0) == 0 {
        return Err(Error::InvalidArgument(format!(
            "need a monic degree-{} polynomial with nonzero constant term",
            ctx.dim()
        )));
    }
    if !charpoly.is_squarefree(f) {
        return Err(Error::NotSquarefree);
    }
    let comp = Matrix::companion(f, charpoly)?;
    let idx = ctx.index_of(&comp).map_err(|_| Error::NoSuchClass)?;
    Ok(&ctx.classes()[ctx.class_of(idx)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_make;

    fn build(kind: GroupKind, n: usize, p: u64, m: u32) -> GroupContext {
        group_build(kind, n, &field_make(p, m).unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(build(GroupKind::SL, 2, 3, 1).order(), 24);
        assert_eq!(build(GroupKind::GL, 2, 2, 1).order(), 6);
        assert_eq!(build(GroupKind::SL, 2, 7, 1).order(), 336);
        assert_eq!(build(GroupKind::GL, 1, 7, 1).order(), 6);
        assert_eq!(build(GroupKind::SL, 1, 7, 1).order(), 1);
    }

    #[test]
    fn class_counts() {
        assert_eq!(build(GroupKind::SL, 2, 3, 1).class_count(), 7);
        assert_eq!(build(GroupKind::GL, 2, 3, 1).class_count(), 8);
        assert_eq!(build(GroupKind::GL, 2, 2, 1).class_count(), 3);
        // q^2 - 1 classes in GL_2(F_q), also over extension fields.
        assert_eq!(build(GroupKind::GL, 2, 2, 2).class_count(), 15);
    }

    #[test]
    fn minus_identity_is_central() {
        let g = build(GroupKind::SL, 2, 3, 1);
        let f = g.field().clone();
        let m = Matrix::from_ints(&f, 2, &[-1, 0, 0, -1]).unwrap();
        let c = g.class_of(g.index_of(&m).unwrap());
        assert_eq!(g.classes()[c].size, 1);
        assert_eq!(g.identity_class(), 0);
    }

    #[test]
    fn centralizer_examples() {
        let g = build(GroupKind::SL, 2, 3, 1);
        let f = g.field().clone();
        assert_eq!(centralizer_order(&g, &Matrix::identity(&f, 2)).unwrap(), 24);

        let g5 = build(GroupKind::GL, 2, 5, 1);
        let f5 = g5.field().clone();
        assert_eq!(
            centralizer_order(&g5, &Matrix::diagonal(&f5, &[1, 2])).unwrap(),
            16
        );

        let g7 = build(GroupKind::GL, 2, 7, 1);
        let f7 = g7.field().clone();
        assert_eq!(
            centralizer_order(&g7, &Matrix::diagonal(&f7, &[2, 4])).unwrap(),
            36
        );

        let sing = Matrix::from_ints(&f, 2, &[1, 0, 0, 0]).unwrap();
        assert!(matches!(
            centralizer_order(&g, &sing),
            Err(Error::ElementNotInGroup)
        ));
    }

    #[test]
    fn classes_from_charpolys() {
        let g5 = build(GroupKind::GL, 2, 5, 1);
        let f5 = g5.field().clone();
        // (x-1)(x-2) = x^2 - 3x + 2
        let cp = Poly::from_codes(vec![2, f5.neg(3), 1]);
        let c = semisimple_class_from_charpoly(&g5, &cp).unwrap();
        assert_eq!(c.size, 30);
        let d = g5.index_of(&Matrix::diagonal(&f5, &[1, 2])).unwrap();
        assert_eq!(
            g5.classes()[g5.class_of(d)].representative,
            c.representative
        );

        let g3 = build(GroupKind::SL, 2, 3, 1);
        let c = semisimple_class_from_charpoly(&g3, &Poly::from_codes(vec![1, 0, 1])).unwrap();
        assert_eq!(c.element_order, 4);
        assert_eq!(c.size, 6);

        let gl3 = build(GroupKind::GL, 2, 3, 1);
        let c = semisimple_class_from_charpoly(&gl3, &Poly::from_codes(vec![1, 0, 1])).unwrap();
        assert_eq!((c.size, c.centralizer_order), (6, 8));

        // (x-1)^2 is not squarefree.
        let sq = Poly::from_codes(vec![1, 1, 1]);
        assert!(matches!(
            semisimple_class_from_charpoly(&gl3, &sq),
            Err(Error::NotSquarefree)
        ));
        // x^2 + x + 2 over F_3 has determinant 2, so no class in SL_2(F_3).
        assert!(matches!(
            semisimple_class_from_charpoly(&g3, &Poly::from_codes(vec![2, 1, 1])),
            Err(Error::NoSuchClass)
        ));
    }

    #[test]
    fn snapshot_roundtrip() {
        let g = build(GroupKind::GL, 2, 3, 1);
        let back = GroupContext::from_snapshot(g.field(), g.snapshot()).unwrap();
        assert_eq!(back.order(), g.order());
        assert_eq!(back.class_count(), g.class_count());
        for x in 0..g.order() as ElementId {
            assert_eq!(back.inverse(x), g.inverse(x));
            assert_eq!(back.class_of(x), g.class_of(x));
        }
    }

    #[test]
    fn budget() {
        let f = field_make(5, 1).unwrap();
        assert!(matches!(
            group_build_with_budget(GroupKind::GL, 3, &f, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
