//! Prime fields `F_p` and extensions `F_{p^m}`.
//!
//! Elements of `F_q` are addressed by a *code* in `0..q`: the coefficient
//! vector `(c_0, .., c_{m-1})` of the representative polynomial read as a
//! base-`p` integer `c_0 + c_1 p + ..`. All hot loops in the crate work on
//! codes; [`FieldElement`] is the checked, self-describing wrapper.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest field order accepted by [`field_make`].
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Extension fields at most this large get precomputed operation tables.
const TABLE_LIMIT: u32 = 1024;

/// Shared handle to an immutable field description.
pub type Field = Arc<FieldSpec>;

pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, coefficients low to high. `x` for prime fields.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

/// Serializable identity of a field, used in cache keys and JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub q: u32,
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Splits `q = p^m`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Builds `F_{p^m}` with the lexicographically smallest irreducible monic
/// modulus of degree `m`.
///
/// Candidates `x^m + a_{m-1} x^{m-1} + .. + a_0` are scanned in increasing
/// order of `(a_{m-1}, .., a_0)`.
pub fn field_make(p: u64, m: u32) -> Result<Field> {
    if m == 0 {
        return Err(Error::BadRange(
            "extension degree must be at least 1".into(),
        ));
    }
    if p > (1u64 << 31) || !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    let order = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if order > MAX_FIELD_ORDER as u128 {
        return Err(Error::budget("field order", order, MAX_FIELD_ORDER as u128));
    }
    let prime = Arc::new(FieldSpec::prime(p as u32));
    if m == 1 {
        return Ok(prime);
    }
    let p32 = p as u32;
    let tail_count = p32.pow(m);
    for tail in 0..tail_count {
        let mut coeffs = digits(tail, p32, m as usize);
        coeffs.push(1);
        let cand = Poly::from_codes(coeffs);
        if cand.is_irreducible(&prime) {
            return Ok(Arc::new(FieldSpec::extension(p32, cand.coeffs().to_vec())));
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// Builds `F_q` for a prime power `q`.
pub fn field_of_order(q: u64) -> Result<Field> {
    let (p, m) = prime_power(q)
        .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
    field_make(p, m)
}

fn digits(mut code: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push(code % p);
        code /= p;
    }
    out
}

impl FieldSpec {
    fn prime(p: u32) -> Self {
        FieldSpec {
            p,
            m: 1,
            q: p,
            modulus: vec![0, 1],
            tables: None,
        }
    }

    fn extension(p: u32, modulus: Vec<u32>) -> Self {
        let m = (modulus.len() - 1) as u32;
        let q = p.pow(m);
        let mut spec = FieldSpec {
            p,
            m,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            let qs = q as usize;
            let mut add = vec![0; qs * qs];
            let mut mul = vec![0; qs * qs];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * qs + b as usize] = spec.add_slow(a, b);
                    mul[a as usize * qs + b as usize] = spec.mul_slow(a, b);
                }
            }
            let mut inv = vec![0; qs];
            for a in 1..q {
                let row = &mul[a as usize * qs..(a as usize + 1) * qs];
                inv[a as usize] = row.iter().position(|&v| v == 1).unwrap() as u32;
            }
            spec.tables = Some(Tables { add, mul, inv });
        }
        spec
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            q: self.q,
            modulus: self.modulus.clone(),
        }
    }

    pub fn coeffs_of(&self, code: u32) -> Vec<u32> {
        digits(code, self.p, self.m as usize)
    }

    pub fn code_of(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// Code of the image of an integer under `Z -> F_q`.
    pub fn from_int(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            let s = a + b;
            if s >= self.p {
                s - self.p
            } else {
                s
            }
        } else if let Some(t) = &self.tables {
            t.add[(a * self.q + b) as usize]
        } else {
            self.add_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let c: Vec<u32> = self
                .coeffs_of(a)
                .into_iter()
                .map(|x| if x == 0 { 0 } else { self.p - x })
                .collect();
            self.code_of(&c)
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else if let Some(t) = &self.tables {
            t.mul[(a * self.q + b) as usize]
        } else {
            self.mul_slow(a, b)
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.inv[a as usize]);
        }
        Some(self.pow(a, self.q as u64 - 2))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u32) -> u64 {
        assert!(a != 0, "zero has no multiplicative order");
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let ca = self.coeffs_of(a);
        let cb = self.coeffs_of(b);
        let c: Vec<u32> = ca
            .iter()
            .zip(&cb)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        self.code_of(&c)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let m = self.m as usize;
        let p = self.p as u64;
        let ca = self.coeffs_of(a);
        let cb = self.coeffs_of(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Reduce with the monic modulus, highest degree first.
        for d in (m..prod.len()).rev() {
            let lead = prod[d];
            if lead == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &c) in self.modulus[..m].iter().enumerate() {
                let idx = d - m + i;
                prod[idx] = (prod[idx] + (p - lead) * c as u64) % p;
            }
        }
        let out: Vec<u32> = prod[..m].iter().map(|&v| v as u32).collect();
        self.code_of(&out)
    }
}

/// A checked element of a specific field.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    coeffs: Vec<u32>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.field.q, self.coeffs)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.coeffs == other.coeffs
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn from_code(field: &Field, code: u32) -> Self {
        assert!(code < field.q, "code {code} out of range for F_{}", field.q);
        FieldElement {
            field: field.clone(),
            coeffs: field.coeffs_of(code),
        }
    }

    /// Element with the given coefficient vector; missing high coefficients are zero.
    pub fn from_coeffs(field: &Field, coeffs: &[u32]) -> Result<Self> {
        if coeffs.len() > field.m as usize || coeffs.iter().any(|&c| c >= field.p) {
            return Err(Error::InvalidArgument(format!(
                "coefficients {coeffs:?} do not describe an element of F_{}",
                field.q
            )));
        }
        let mut c = coeffs.to_vec();
        c.resize(field.m as usize, 0);
        Ok(FieldElement {
            field: field.clone(),
            coeffs: c,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn code(&self) -> u32 {
        self.field.code_of(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn wrap(&self, code: u32) -> Self {
        FieldElement::from_code(&self.field, code)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.code(), other.code())))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.code(), other.code())))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(self.code()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.code(), other.code())))
    }

    pub fn inv(&self) -> Result<Self> {
        let c = self.field.inv(self.code()).ok_or(Error::DivisionByZero)?;
        Ok(self.wrap(c))
    }

    pub fn pow(&self, e: u64) -> Self {
        self.wrap(self.field.pow(self.code(), e))
    }

    /// The Frobenius map `x -> x^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.p as u64)
    }
}
