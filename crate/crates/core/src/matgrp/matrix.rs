use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};
use crate::poly::Poly;

pub(crate) type Entries = SmallVec<[u32; 16]>;

/// A square matrix over a finite field, entries stored row-major as field codes.
#[derive(Clone)]
pub struct Matrix {
    field: Field,
    n: usize,
    entries: Entries,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.n {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(|c| c.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]/F{}", self.field.order())
    }
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.field == *other.field && self.entries == other.entries
    }
}
impl Eq for Matrix {}

impl Matrix {
    pub fn from_codes(field: &Field, n: usize, codes: &[u32]) -> Result<Self> {
        if codes.len() != n * n || codes.iter().any(|&c| c >= field.order()) {
            return Err(Error::InvalidArgument(format!(
                "{} codes do not form a {n}x{n} matrix over F_{}",
                codes.len(),
                field.order()
            )));
        }
        Ok(Matrix {
            field: field.clone(),
            n,
            entries: codes.iter().copied().collect(),
        })
    }

    /// Matrix with integer entries reduced into the prime subfield.
    pub fn from_ints(field: &Field, n: usize, values: &[i64]) -> Result<Self> {
        let codes: Vec<u32> = values.iter().map(|&v| field.from_int(v)).collect();
        Matrix::from_codes(field, n, &codes)
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut entries: Entries = SmallVec::from_elem(0, n * n);
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Matrix {
            field: field.clone(),
            n,
            entries,
        }
    }

    pub fn diagonal(field: &Field, diag: &[u32]) -> Self {
        let n = diag.len();
        let mut m = Matrix::identity(field, n);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    /// Companion matrix of a monic polynomial.
    pub fn companion(field: &Field, poly: &Poly) -> Result<Self> {
        let n = poly
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::InvalidArgument("companion of a constant".into()))?;
        if poly.lead() != 1 {
            return Err(Error::InvalidArgument(
                "companion polynomial must be monic".into(),
            ));
        }
        let mut entries: Entries = SmallVec::from_elem(0, n * n);
        for i in 1..n {
            entries[i * n + (i - 1)] = 1;
        }
        for i in 0..n {
            entries[i * n + (n - 1)] = field.neg(poly.coeff(i));
        }
        Ok(Matrix {
            field: field.clone(),
            n,
            entries,
        })
    }

    pub fn block_diagonal(field: &Field, blocks: &[Matrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut entries: Entries = SmallVec::from_elem(0, n * n);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.n {
                for c in 0..b.n {
                    entries[(off + r) * n + off + c] = b.get(r, c);
                }
            }
            off += b.n;
        }
        Matrix {
            field: field.clone(),
            n,
            entries,
        }
    }

    pub(crate) fn from_entries(field: &Field, n: usize, entries: Entries) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Matrix {
            field: field.clone(),
            n,
            entries,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn codes(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.n + c]
    }

    pub fn entry(&self, r: usize, c: usize) -> FieldElement {
        FieldElement::from_code(&self.field, self.get(r, c))
    }

    fn row(&self, r: usize) -> &[u32] {
        &self.entries[r * self.n..(r + 1) * self.n]
    }

    fn compatible(&self, other: &Matrix) -> Result<()> {
        if self.n == other.n
            && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
        {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.compatible(other)?;
        let mut out: Entries = SmallVec::from_elem(0, self.n * self.n);
        mul_into(&self.field, self.n, &self.entries, &other.entries, &mut out);
        Ok(Matrix::from_entries(&self.field, self.n, out))
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut out: Entries = SmallVec::from_elem(0, n * n);
        for r in 0..n {
            for c in 0..n {
                out[c * n + r] = self.get(r, c);
            }
        }
        Matrix::from_entries(&self.field, n, out)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|r| (0..self.n).all(|c| self.get(r, c) == u32::from(r == c)))
    }

    pub fn det(&self) -> u32 {
        det_codes(&self.field, self.n, &self.entries)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        let f = &self.field;
        let n = self.n;
        let mut a: Vec<u32> = self.entries.to_vec();
        let mut inv: Vec<u32> = Matrix::identity(f, n).entries.to_vec();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            if piv != col {
                for c in 0..n {
                    a.swap(piv * n + c, col * n + c);
                    inv.swap(piv * n + c, col * n + c);
                }
            }
            let s = f.inv(a[col * n + col]).unwrap();
            for c in 0..n {
                a[col * n + c] = f.mul(a[col * n + c], s);
                inv[col * n + c] = f.mul(inv[col * n + c], s);
            }
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let u = a[r * n + col];
                for c in 0..n {
                    a[r * n + c] = f.sub(a[r * n + c], f.mul(u, a[col * n + c]));
                    inv[r * n + c] = f.sub(inv[r * n + c], f.mul(u, inv[col * n + c]));
                }
            }
        }
        Some(Matrix::from_entries(f, n, inv.into_iter().collect()))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).unwrap();
            }
            base = base.mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order; `None` for singular matrices.
    pub fn order(&self) -> Option<u64> {
        if self.det() == 0 {
            return None;
        }
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self).unwrap();
            k += 1;
        }
        Some(k)
    }

    /// `poly(self)` by Horner's rule.
    pub fn eval_poly(&self, poly: &Poly) -> Matrix {
        let f = &self.field;
        let n = self.n;
        let mut acc = Matrix::from_entries(f, n, SmallVec::from_elem(0, n * n));
        for &c in poly.coeffs().iter().rev() {
            acc = acc.mul(self).unwrap();
            for i in 0..n {
                acc.entries[i * n + i] = f.add(acc.entries[i * n + i], c);
            }
        }
        acc
    }

    /// Characteristic polynomial `det(xI - M)`, via reduction to upper
    /// Hessenberg form by elementary similarities.
    pub fn charpoly(&self) -> Poly {
        let f = &self.field;
        let n = self.n;
        let mut h: Vec<u32> = self.entries.to_vec();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h[i * n + j] != 0) else {
                continue;
            };
            if piv != j + 1 {
                for c in 0..n {
                    h.swap(piv * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.swap(r * n + piv, r * n + j + 1);
                }
            }
            let inv = f.inv(h[(j + 1) * n + j]).unwrap();
            for k in j + 2..n {
                let u = f.mul(h[k * n + j], inv);
                if u == 0 {
                    continue;
                }
                for c in 0..n {
                    h[k * n + c] = f.sub(h[k * n + c], f.mul(u, h[(j + 1) * n + c]));
                }
                for r in 0..n {
                    h[r * n + j + 1] = f.add(h[r * n + j + 1], f.mul(u, h[r * n + k]));
                }
            }
        }
        let at = |r: usize, c: usize| h[r * n + c];
        let mut ps: Vec<Poly> = vec![Poly::one()];
        for m in 1..=n {
            let lin = Poly::linear(f, at(m - 1, m - 1));
            let mut pm = lin.mul(&ps[m - 1], f);
            let mut prod = 1u32;
            for i in 1..m {
                prod = f.mul(prod, at(m - i, m - i - 1));
                let coef = f.mul(at(m - i - 1, m - 1), prod);
                if coef != 0 {
                    pm = pm.sub(&ps[m - i - 1].scale(coef, f), f);
                }
            }
            ps.push(pm);
        }
        ps.pop().unwrap()
    }

    /// Minimal polynomial: the first power `M^d` lying in the span of
    /// `I, M, .., M^{d-1}` fixes it.
    pub fn minpoly(&self) -> Poly {
        let f = &self.field;
        let mut powers: Vec<Vec<u32>> = vec![Matrix::identity(f, self.n).entries.to_vec()];
        let mut cur = Matrix::identity(f, self.n);
        loop {
            cur = cur.mul(self).unwrap();
            let target = cur.entries.to_vec();
            if let Some(sol) = solve_span(f, &powers, &target) {
                let mut coeffs: Vec<u32> = sol.iter().map(|&c| f.neg(c)).collect();
                coeffs.push(1);
                return Poly::from_codes(coeffs);
            }
            powers.push(target);
        }
    }

    /// Semisimple iff the minimal polynomial is squarefree.
    pub fn is_semisimple(&self) -> bool {
        self.minpoly().is_squarefree(&self.field)
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(
            &self.field,
            self.n,
            (0..self.n).map(|r| self.row(r).to_vec()).collect(),
        )
    }
}

/// `out = a * b` for `n x n` code arrays.
#[inline]
pub(crate) fn mul_into(f: &crate::ff::FieldSpec, n: usize, a: &[u32], b: &[u32], out: &mut [u32]) {
    for r in 0..n {
        for c in 0..n {
            let mut s = 0u32;
            for k in 0..n {
                s = f.add(s, f.mul(a[r * n + k], b[k * n + c]));
            }
            out[r * n + c] = s;
        }
    }
}

pub(crate) fn det_codes(f: &crate::ff::FieldSpec, n: usize, entries: &[u32]) -> u32 {
    if n == 2 {
        return f.sub(f.mul(entries[0], entries[3]), f.mul(entries[1], entries[2]));
    }
    let mut a: SmallVec<[u32; 16]> = entries.iter().copied().collect();
    let mut det = 1u32;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
            }
            det = f.neg(det);
        }
        let d = a[col * n + col];
        det = f.mul(det, d);
        let inv = f.inv(d).unwrap();
        for r in col + 1..n {
            let u = f.mul(a[r * n + col], inv);
            if u == 0 {
                continue;
            }
            for c in col..n {
                a[r * n + c] = f.sub(a[r * n + c], f.mul(u, a[col * n + c]));
            }
        }
    }
    det
}

pub(crate) fn rank_of_rows(
    f: &crate::ff::FieldSpec,
    width: usize,
    mut rows: Vec<Vec<u32>>,
) -> usize {
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = f.inv(rows[rank][col]).unwrap();
        eliminate(f, &mut rows, rank, col, inv);
        rank += 1;
    }
    rank
}

/// Scales row `rank` by `inv` and clears column `col` in every other row.
fn eliminate(f: &crate::ff::FieldSpec, rows: &mut [Vec<u32>], rank: usize, col: usize, inv: u32) {
    let pivot: Vec<u32> = rows[rank].iter().map(|&x| f.mul(x, inv)).collect();
    for (r, row) in rows.iter_mut().enumerate() {
        if r != rank && row[col] != 0 {
            let u = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot) {
                *x = f.sub(*x, f.mul(u, p));
            }
        }
    }
    rows[rank] = pivot;
}

/// Coefficients `c` with `sum c_i * basis_i = target`, if any. The basis
/// vectors must be linearly independent.
fn solve_span(f: &crate::ff::FieldSpec, basis: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let k = basis.len();
    let len = target.len();
    // Augmented system: rows are coordinates, columns are basis vectors.
    let mut rows: Vec<Vec<u32>> = (0..len)
        .map(|i| {
            let mut r: Vec<u32> = basis.iter().map(|b| b[i]).collect();
            r.push(target[i]);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..k {
        let piv = (rank..len).find(|&r| rows[r][col] != 0)?;
        rows.swap(rank, piv);
        let inv = f.inv(rows[rank][col]).unwrap();
        eliminate(f, &mut rows, rank, col, inv);
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[k] != 0) {
        return None;
    }
    Some((0..k).map(|i| rows[i][k]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_make;

    #[test]
    fn charpoly_matches_determinant_and_cayley_hamilton() {
        for (p, m) in [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)] {
            let f = field_make(p, m).unwrap();
            let q = f.order();
            let mut seed = 12345u64;
            for n in 1..=4 {
                for _ in 0..40 {
                    let codes: Vec<u32> = (0..n * n)
                        .map(|_| {
                            seed = seed
                                .wrapping_mul(6364136223846793005)
                                .wrapping_add(1442695040888963407);
                            ((seed >> 33) % q as u64) as u32
                        })
                        .collect();
                    let a = Matrix::from_codes(&f, n, &codes).unwrap();
                    let cp = a.charpoly();
                    assert_eq!(cp.degree(), Some(n));
                    // det(tI - A) at every field point.
                    for t in 0..q {
                        let mut shifted: Vec<u32> = codes.iter().map(|&c| f.neg(c)).collect();
                        for i in 0..n {
                            shifted[i * n + i] = f.add(shifted[i * n + i], t);
                        }
                        assert_eq!(cp.eval(t, &f), det_codes(&f, n, &shifted));
                    }
                    assert!(a.eval_poly(&cp).codes().iter().all(|&c| c == 0));
                    let mp = a.minpoly();
                    assert!(a.eval_poly(&mp).codes().iter().all(|&c| c == 0));
                    assert!(cp.rem(&mp, &f).is_zero());
                }
            }
        }
    }

    #[test]
    fn inverse_and_order() {
        let f = field_make(7, 1).unwrap();
        let a = Matrix::from_ints(&f, 2, &[1, 1, 0, 1]).unwrap();
        assert_eq!(a.order(), Some(7));
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let s = Matrix::from_ints(&f, 2, &[1, 2, 2, 4]).unwrap();
        assert!(s.inverse().is_none());
        assert_eq!(s.order(), None);
    }

    #[test]
    fn semisimplicity() {
        let f = field_make(5, 1).unwrap();
        assert!(Matrix::diagonal(&f, &[1, 2]).is_semisimple());
        assert!(Matrix::identity(&f, 3).is_semisimple());
        assert!(!Matrix::from_ints(&f, 2, &[1, 1, 0, 1])
            .unwrap()
            .is_semisimple());
    }

    #[test]
    fn companion_has_its_charpoly() {
        let f = field_make(3, 1).unwrap();
        let p = Poly::from_codes(vec![2, 0, 1, 1]);
        let c = Matrix::companion(&f, &p).unwrap();
        assert_eq!(c.charpoly(), p);
        assert_eq!(c.minpoly(), p);
    }

    #[test]
    fn mismatch() {
        let f = field_make(3, 1).unwrap();
        let g = field_make(5, 1).unwrap();
        assert!(matches!(
            Matrix::identity(&f, 2).mul(&Matrix::identity(&g, 2)),
            Err(Error::SpecMismatch)
        ));
        assert!(matches!(
            Matrix::identity(&f, 2).mul(&Matrix::identity(&f, 3)),
            Err(Error::SpecMismatch)
        ));
    }
}
