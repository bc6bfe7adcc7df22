//! Dense univariate polynomials over a [`FieldSpec`], coefficients stored as
//! field codes from low to high degree.

use serde::{Deserialize, Serialize};

use crate::ff::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Poly(Vec<u32>);

impl Poly {
    pub fn from_codes(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![1])
    }

    /// `x - a`.
    pub fn linear(f: &FieldSpec, a: u32) -> Self {
        Poly(vec![f.neg(a), 1])
    }

    /// The monic polynomial `x^d + tail`, where `tail` lists the `d` lower
    /// coefficients as the base-`q` digits of `index`.
    pub fn monic_from_index(f: &FieldSpec, d: usize, mut index: u64) -> Self {
        let q = f.order() as u64;
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push((index % q) as u32);
            index /= q;
        }
        c.push(1);
        Poly(c)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        *self.0.last().unwrap_or(&0)
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::from_codes(
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::from_codes(
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: u32, f: &FieldSpec) -> Poly {
        Poly::from_codes(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_codes(out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, divisor: &Poly, f: &FieldSpec) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv_lead = f.inv(divisor.lead()).unwrap();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], inv_lead);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &dc) in divisor.0.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(c, dc));
            }
        }
        rem.truncate(dd);
        (Poly::from_codes(quot), Poly::from_codes(rem))
    }

    pub fn rem(&self, divisor: &Poly, f: &FieldSpec) -> Poly {
        self.divrem(divisor, f).1
    }

    pub fn monic(&self, f: &FieldSpec) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.lead()).unwrap(), f)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self, f: &FieldSpec) -> Poly {
        Poly::from_codes(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: u32, f: &FieldSpec) -> u32 {
        self.0
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Poly, f: &FieldSpec) -> Poly {
        let mut base = self.rem(modulus, f);
        let mut acc = Poly::one().rem(modulus, f);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(modulus, f);
            }
            base = base.mul(&base, f).rem(modulus, f);
            e >>= 1;
        }
        acc
    }

    /// Irreducibility over `F_q`: `gcd(self, x^{q^i} - x) = 1` for `i <= deg/2`.
    pub fn is_irreducible(&self, f: &FieldSpec) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        if d == 1 {
            return true;
        }
        let x = Poly(vec![0, 1]);
        let mut h = x.clone();
        for _ in 1..=d / 2 {
            h = h.powmod(f.order() as u64, self, f);
            let g = self.gcd(&h.sub(&x, f), f);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    pub fn is_squarefree(&self, f: &FieldSpec) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative(f);
                !d.is_zero() && self.gcd(&d, f).degree() == Some(0)
            }
        }
    }

    /// Factorization of a nonzero polynomial into monic irreducibles with
    /// multiplicities, by trial division over monic irreducibles of
    /// increasing degree. Factors are sorted by degree, then coefficients.
    pub fn factor(&self, f: &FieldSpec) -> Vec<(Poly, usize)> {
        let mut rest = self.monic(f);
        let mut out = Vec::new();
        let mut d = 1usize;
        loop {
            let rd = rest.degree().expect("cannot factor zero");
            if rd == 0 {
                break;
            }
            if rd < 2 * d {
                out.push((rest, 1));
                break;
            }
            let count = (f.order() as u64).pow(d as u32);
            for idx in 0..count {
                let g = Poly::monic_from_index(f, d, idx);
                let mut mult = 0;
                loop {
                    let (quo, r) = rest.divrem(&g, f);
                    if !r.is_zero() {
                        break;
                    }
                    rest = quo;
                    mult += 1;
                }
                if mult > 0 {
                    // Every factor of degree d found here is irreducible: all
                    // smaller-degree factors were already removed.
                    out.push((g, mult));
                }
                if rest.degree() == Some(0) {
                    break;
                }
            }
            d += 1;
        }
        out.sort_by(|a, b| {
            (a.0.degree(), a.0.coeffs().iter().rev().collect::<Vec<_>>())
                .cmp(&(b.0.degree(), b.0.coeffs().iter().rev().collect::<Vec<_>>()))
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::field_make;

    fn p(c: &[u32]) -> Poly {
        Poly::from_codes(c.to_vec())
    }

    #[test]
    fn divrem_roundtrip() {
        let f = field_make(5, 1).unwrap();
        let a = p(&[1, 2, 3, 4, 1]);
        let b = p(&[2, 0, 1]);
        let (q, r) = a.divrem(&b, &f);
        assert_eq!(q.mul(&b, &f).add(&r, &f), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn irreducibility_matches_root_test_for_low_degree() {
        let f = field_make(7, 1).unwrap();
        for idx in 0..49u64 {
            let g = Poly::monic_from_index(&f, 2, idx);
            let has_root = (0..7).any(|x| g.eval(x, &f) == 0);
            assert_eq!(g.is_irreducible(&f), !has_root, "{g:?}");
        }
        for idx in 0..343u64 {
            let g = Poly::monic_from_index(&f, 3, idx);
            let has_root = (0..7).any(|x| g.eval(x, &f) == 0);
            assert_eq!(g.is_irreducible(&f), !has_root, "{g:?}");
        }
    }

    #[test]
    fn irreducible_counts_over_f2() {
        // Necklace counts of monic irreducibles over F_2: 2, 1, 2, 3, 6.
        let f = field_make(2, 1).unwrap();
        let counts: Vec<usize> = (1..=5)
            .map(|d| {
                (0..(1u64 << d))
                    .filter(|&i| Poly::monic_from_index(&f, d, i).is_irreducible(&f))
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6]);
    }

    #[test]
    fn factor_reassembles() {
        let f = field_make(3, 1).unwrap();
        // (x+1)^2 (x^2+1) (x)
        let a = p(&[1, 1])
            .mul(&p(&[1, 1]), &f)
            .mul(&p(&[1, 0, 1]), &f)
            .mul(&p(&[0, 1]), &f);
        let fac = a.factor(&f);
        assert_eq!(fac.len(), 3);
        let back = fac.iter().fold(Poly::one(), |acc, (g, m)| {
            (0..*m).fold(acc, |acc, _| acc.mul(g, &f))
        });
        assert_eq!(back, a);
        assert!(!a.is_squarefree(&f));
        assert!(p(&[1, 0, 1]).is_squarefree(&f));
    }

    #[test]
    fn derivative_vanishes_on_pth_powers() {
        let f = field_make(3, 1).unwrap();
        let a = p(&[1, 0, 0, 1]); // x^3 + 1 = (x+1)^3
        assert!(a.derivative(&f).is_zero());
        assert!(!a.is_squarefree(&f));
    }
}
