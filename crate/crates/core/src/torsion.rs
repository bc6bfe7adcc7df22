//! Eigenvalue-multiplicity combinatorics over `F_l` for torsion classes.
//!
//! An order-`l` semisimple class in `SL_n` is recorded by the function
//! `f: F_l -> Z>=0` giving the multiplicity of `psi(x)` for a fixed
//! faithful additive character `psi`; everything here works with these
//! labels and never with complex roots of unity.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::is_prime;

/// Largest `l` accepted; subsets are stored as `u128` bitmasks.
pub const MAX_ELL: u64 = 127;
/// Limit on the number of `k`-subsets scanned by [`b_k`].
pub const SUBSET_BUDGET: u128 = 20_000_000;
/// The multiplicity threshold `alpha = 1/10` as a fraction.
pub const ALPHA: (u64, u64) = (1, 10);

type Mask = u128;

/// Precomputed data for one prime `l = 1 (mod 3)`.
#[derive(Debug, Clone)]
struct Ell {
    l: u64,
    mu: [u64; 3],
    /// Every affine image `t mu_3 + c`, deduplicated.
    affine: Vec<Mask>,
}

impl Ell {
    fn new(l: u64) -> Result<Ell> {
        if !is_prime(l) || l % 3 != 1 || l > MAX_ELL {
            return Err(Error::BadPrime(l));
        }
        let a = (2..l).find(|&a| a * a % l * a % l == 1).unwrap();
        let mut mu = [1, a, a * a % l];
        mu.sort_unstable();
        let mut affine: Vec<Mask> = Vec::new();
        for t in 1..l {
            for c in 0..l {
                let m = mu.iter().fold(0, |m, &x| m | bit((t * x + c) % l));
                affine.push(m);
            }
        }
        affine.sort_unstable();
        affine.dedup();
        Ok(Ell { l, mu, affine })
    }

    fn sum(&self, m: Mask) -> u64 {
        (0..self.l).filter(|&x| m & bit(x) != 0).sum::<u64>() % self.l
    }

    fn in_b(&self, m: Mask, k: usize) -> bool {
        m.count_ones() as usize == k
            && self.sum(m) == 0
            && (k < 3 || self.affine.iter().any(|&a| a & !m == 0))
    }
}

#[inline]
fn bit(x: u64) -> Mask {
    1 << x
}

fn elements(m: Mask, l: u64) -> Vec<u64> {
    (0..l).filter(|&x| m & bit(x) != 0).collect()
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The subgroup of cube roots of unity in `F_l^x`, sorted.
pub fn mu3(l: u64) -> Result<[u64; 3]> {
    Ell::new(l).map(|e| e.mu)
}

/// Zero-sum `k`-subsets of `F_l` that, for `k >= 3`, contain an affine
/// image of `mu_3`; sorted lexicographically.
pub fn b_k(l: u64, k: usize) -> Result<Vec<Vec<u64>>> {
    let e = Ell::new(l)?;
    b_k_masks(&e, k).map(|v| v.into_iter().map(|m| elements(m, l)).collect())
}

fn b_k_masks(e: &Ell, k: usize) -> Result<Vec<Mask>> {
    let l = e.l;
    if k as u64 > l - 1 {
        return Err(Error::BadRange(format!(
            "k = {k} exceeds l - 1 = {}",
            l - 1
        )));
    }
    if k == 3 {
        // t mu_3 + c sums to 3c, so only the cosets t mu_3 qualify.
        let mut out: Vec<Mask> = e
            .affine
            .iter()
            .copied()
            .filter(|&m| e.sum(m) == 0)
            .collect();
        out.sort_by_key(|&m| elements(m, l));
        return Ok(out);
    }
    let needed = binomial(l, k as u64);
    if needed > SUBSET_BUDGET {
        return Err(Error::budget("subsets", needed, SUBSET_BUDGET));
    }
    let mut out = Vec::new();
    let mut chosen: Vec<u64> = Vec::with_capacity(k);
    scan_subsets(e, k, 0, 0, 0, &mut chosen, &mut out);
    Ok(out)
}

fn scan_subsets(
    e: &Ell,
    k: usize,
    start: u64,
    mask: Mask,
    sum: u64,
    chosen: &mut Vec<u64>,
    out: &mut Vec<Mask>,
) {
    if chosen.len() == k {
        if sum == 0 && (k < 3 || e.affine.iter().any(|&a| a & !mask == 0)) {
            out.push(mask);
        }
        return;
    }
    let left = (k - chosen.len()) as u64;
    for x in start..=e.l - left {
        chosen.push(x);
        scan_subsets(e, k, x + 1, mask | bit(x), (sum + x) % e.l, chosen, out);
        chosen.pop();
    }
}

/// A multiplicity function `F_l -> Z>=0`; `values[x]` is the multiplicity
/// of the label `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MultiplicityFunction {
    pub l: u64,
    pub values: Vec<u32>,
    pub n: u64,
}

impl MultiplicityFunction {
    pub fn new(l: u64, values: Vec<u32>) -> Result<MultiplicityFunction> {
        if values.len() as u64 != l {
            return Err(Error::InvalidArgument(format!(
                "a multiplicity function over F_{l} needs {l} values"
            )));
        }
        let n = values.iter().map(|&v| v as u64).sum();
        Ok(MultiplicityFunction { l, values, n })
    }

    /// `x -> f(x - c)`.
    pub fn translate(&self, c: u64) -> MultiplicityFunction {
        let l = self.l;
        let values = (0..l)
            .map(|x| self.values[((x + l - c % l) % l) as usize])
            .collect();
        MultiplicityFunction {
            l,
            values,
            n: self.n,
        }
    }

    /// `{x : f(x) > n/l}`, sorted.
    pub fn excess_set(&self) -> Vec<u64> {
        (0..self.l)
            .filter(|&x| self.values[x as usize] as u64 * self.l > self.n)
            .collect()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// `sum_x f(x) x (mod l)`; zero exactly when the eigenvalues multiply to 1.
    pub fn determinant_sum(&self) -> u64 {
        (0..self.l)
            .map(|x| self.values[x as usize] as u64 * x)
            .sum::<u64>()
            % self.l
    }

    fn excess_mask(&self) -> Mask {
        self.excess_set().into_iter().fold(0, |m, x| m | bit(x))
    }

    fn in_a(&self, e: &Ell) -> bool {
        if self.l != e.l || self.n < 2 {
            return false;
        }
        let a = self.n / self.l;
        let k = (self.n % self.l) as usize;
        let near = self
            .values
            .iter()
            .all(|&v| v as u64 == a || (k > 0 && v as u64 == a + 1));
        near && e.in_b(self.excess_mask(), k)
    }

    fn sub(&self, positions: &[u64]) -> Option<MultiplicityFunction> {
        let mut values = self.values.clone();
        for &p in positions {
            let v = &mut values[p as usize];
            *v = v.checked_sub(1)?;
        }
        Some(MultiplicityFunction {
            l: self.l,
            values,
            n: self.n - positions.len() as u64,
        })
    }

    fn add(&self, other: &MultiplicityFunction) -> MultiplicityFunction {
        MultiplicityFunction {
            l: self.l,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
            n: self.n + other.n,
        }
    }

    fn indicator(l: u64, positions: &[u64]) -> MultiplicityFunction {
        let mut values = vec![0; l as usize];
        for &p in positions {
            values[p as usize] += 1;
        }
        MultiplicityFunction {
            l,
            values,
            n: positions.len() as u64,
        }
    }

    fn constant_except(l: u64, a: u32, lowered: &[u64]) -> MultiplicityFunction {
        let mut values = vec![a; l as usize];
        for &p in lowered {
            values[p as usize] -= 1;
        }
        MultiplicityFunction::new(l, values).unwrap()
    }
}

/// Checks membership of `f` in `A_n` for its own `l` and `n`.
pub fn is_in_a_n(f: &MultiplicityFunction) -> Result<bool> {
    Ok(f.in_a(&Ell::new(f.l)?))
}

/// All `f: F_l -> {floor(n/l), ceil(n/l)}` whose excess set lies in
/// `B_{n mod l}`, in the order of that `B`-list.
pub fn a_n(l: u64, n: u64) -> Result<Vec<MultiplicityFunction>> {
    let e = Ell::new(l)?;
    a_n_with(&e, n)
}

fn a_n_with(e: &Ell, n: u64) -> Result<Vec<MultiplicityFunction>> {
    if n < 2 {
        return Err(Error::BadRange(format!("n = {n} must be at least 2")));
    }
    let l = e.l;
    let a = (n / l) as u32;
    let k = (n % l) as usize;
    Ok(b_k_masks(e, k)?
        .into_iter()
        .map(|m| {
            let values = (0..l).map(|x| a + u32::from(m & bit(x) != 0)).collect();
            MultiplicityFunction { l, values, n }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessMode {
    /// `f = translate(f', c) + translate(delta_0, p)` with `f'` in `A_{n-1}`.
    Cond2,
    /// `f = translate(f1, c1) + translate(f2, c2)` with `f1` in `A_{n-2}`
    /// and `f2` in `A_2`.
    Cond3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Witness {
    Cond2 {
        base: MultiplicityFunction,
        shift: u64,
        position: u64,
        explicit: bool,
    },
    Cond3 {
        first: MultiplicityFunction,
        first_shift: u64,
        second: MultiplicityFunction,
        second_shift: u64,
        explicit: bool,
    },
}

impl Witness {
    /// Recomposes the witness and checks every membership claim.
    pub fn verify(&self, f: &MultiplicityFunction) -> Result<bool> {
        let e = Ell::new(f.l)?;
        Ok(match self {
            Witness::Cond2 {
                base,
                shift,
                position,
                ..
            } => {
                base.n + 1 == f.n
                    && base.in_a(&e)
                    && base
                        .translate(*shift)
                        .add(&MultiplicityFunction::indicator(f.l, &[*position % f.l]))
                        == *f
            }
            Witness::Cond3 {
                first,
                first_shift,
                second,
                second_shift,
                ..
            } => {
                first.n + 2 == f.n
                    && first.in_a(&e)
                    && second.n == 2
                    && second.in_a(&e)
                    && first
                        .translate(*first_shift)
                        .add(&second.translate(*second_shift))
                        == *f
            }
        })
    }

    pub fn is_explicit(&self) -> bool {
        match self {
            Witness::Cond2 { explicit, .. } | Witness::Cond3 { explicit, .. } => *explicit,
        }
    }
}

fn check_witness_args(e: &Ell, n: u64, f: &MultiplicityFunction, mode: WitnessMode) -> Result<()> {
    let min = match mode {
        WitnessMode::Cond2 => 3,
        WitnessMode::Cond3 => 4,
    };
    if n < min {
        return Err(Error::BadRange(format!("n = {n} below {min} for {mode:?}")));
    }
    if f.n != n || !f.in_a(e) {
        return Err(Error::InvalidArgument("f is not an element of A_n".into()));
    }
    Ok(())
}

/// A decomposition of `f` in the given mode. The cases `l | n` (cond2)
/// and `n = 0, 1 (mod l)` (cond3) use the explicit constant-function
/// decompositions; all others come from [`witness_search`].
pub fn decomposition_witness(
    l: u64,
    n: u64,
    f: &MultiplicityFunction,
    mode: WitnessMode,
) -> Result<Witness> {
    let e = Ell::new(l)?;
    check_witness_args(&e, n, f, mode)?;
    let a = (n / l) as u32;
    let k = n % l;
    let half = l.div_ceil(2);
    let explicit = match (mode, k) {
        (WitnessMode::Cond2, 0) => Some(Witness::Cond2 {
            base: MultiplicityFunction::constant_except(l, a, &[0]),
            shift: 0,
            position: 0,
            explicit: true,
        }),
        (WitnessMode::Cond3, 0) => Some(Witness::Cond3 {
            first: MultiplicityFunction::constant_except(l, a, &[half, l - half]),
            first_shift: l - half,
            second: MultiplicityFunction::indicator(l, &[l - half, half]),
            second_shift: l - half,
            explicit: true,
        }),
        (WitnessMode::Cond3, 1) => Some(Witness::Cond3 {
            first: MultiplicityFunction::constant_except(l, a, &[0]),
            first_shift: l - 1,
            second: MultiplicityFunction::indicator(l, &[l - half, half]),
            second_shift: l - half,
            explicit: true,
        }),
        _ => None,
    };
    match explicit {
        Some(w) if w.verify(f)? => Ok(w),
        Some(_) => Err(Error::NoWitness(format!(
            "explicit decomposition fails for l = {l}, n = {n}"
        ))),
        None => witness_search(l, n, f, mode),
    }
}

/// Exhaustive search. Cond2 scans `(position, shift)`; cond3 scans the
/// removed pair `u < v` lexicographically, then the shift. The remaining
/// function is tested for membership after undoing the shift.
pub fn witness_search(
    l: u64,
    n: u64,
    f: &MultiplicityFunction,
    mode: WitnessMode,
) -> Result<Witness> {
    let e = Ell::new(l)?;
    check_witness_args(&e, n, f, mode)?;
    match mode {
        WitnessMode::Cond2 => {
            for p in 0..l {
                let Some(h) = f.sub(&[p]) else { continue };
                for c in 0..l {
                    let base = h.translate(l - c);
                    if base.in_a(&e) {
                        return Ok(Witness::Cond2 {
                            base,
                            shift: c,
                            position: p,
                            explicit: false,
                        });
                    }
                }
            }
        }
        WitnessMode::Cond3 => {
            let inv2 = l.div_ceil(2);
            for u in 0..l {
                for v in u + 1..l {
                    let Some(h) = f.sub(&[u, v]) else { continue };
                    for c in 0..l {
                        let first = h.translate(l - c);
                        if first.in_a(&e) {
                            let mid = (u + v) % l * inv2 % l;
                            let x = (u + l - mid) % l;
                            return Ok(Witness::Cond3 {
                                first,
                                first_shift: c,
                                second: MultiplicityFunction::indicator(l, &[x, (l - x) % l]),
                                second_shift: mid,
                                explicit: false,
                            });
                        }
                    }
                }
            }
        }
    }
    Err(Error::NoWitness(format!("l = {l}, n = {n}, mode {mode:?}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionGroupKind {
    /// `Z/l * Z/l = <g1, g2>`.
    FreeProduct,
    /// The quadrilateral group on `x, y, z, t`, each of order `l`.
    Quadrilateral,
}

impl std::str::FromStr for TorsionGroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "free-product" | "free_product" => Ok(TorsionGroupKind::FreeProduct),
            "quadrilateral" => Ok(TorsionGroupKind::Quadrilateral),
            _ => Err(Error::Parse(format!("unknown torsion group {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionClass {
    pub generator: &'static str,
    pub exponent: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionClassList {
    pub kind: TorsionGroupKind,
    pub l: u64,
    pub representatives: Vec<TorsionClass>,
}

/// Representatives `g^e`, `1 <= e < l`, of the nontrivial torsion classes:
/// each nontrivial torsion element is conjugate into exactly one cyclic
/// factor, and distinct powers there are not conjugate.
pub fn torsion_classes(kind: TorsionGroupKind, l: u64) -> Result<TorsionClassList> {
    Ell::new(l)?;
    let gens: &[&'static str] = match kind {
        TorsionGroupKind::FreeProduct => &["g1", "g2"],
        TorsionGroupKind::Quadrilateral => {
            if l < 19 {
                return Err(Error::BadPrime(l));
            }
            &["x", "y", "z", "t"]
        }
    };
    let representatives = gens
        .iter()
        .flat_map(|&g| {
            (1..l).map(move |e| TorsionClass {
                generator: g,
                exponent: e,
            })
        })
        .collect();
    Ok(TorsionClassList {
        kind,
        l,
        representatives,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainCheck {
    /// `a + 1`, `(a+1)n/(al+1)`, `2n/(l+1)`, `alpha n` as decimals.
    pub terms: [f64; 4],
    /// Each of the three inequalities, compared exactly.
    pub steps: [bool; 3],
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityReport {
    pub l: u64,
    pub n: u64,
    pub a: u64,
    pub k: u64,
    pub max_multiplicity: u32,
    pub ceiling: u64,
    pub within_ceiling: bool,
    /// `max_multiplicity <= alpha n`.
    pub within_alpha: bool,
    /// Present when `n = a l + k` with `a >= 1` and `1 <= k < l`.
    pub chain: Option<ChainCheck>,
}

/// Multiplicity bounds for the class `C_f`, with the chain
/// `a+1 <= (a+1)n/(al+1) <= 2n/(l+1) <= alpha n` when it applies.
pub fn class_multiplicity_check(
    l: u64,
    n: u64,
    f: &MultiplicityFunction,
) -> Result<MultiplicityReport> {
    if f.l != l || f.n != n {
        return Err(Error::InvalidArgument("f does not match (l, n)".into()));
    }
    let (an, ad) = ALPHA;
    let a = n / l;
    let k = n % l;
    let ceiling = n.div_ceil(l);
    let m = f.max_multiplicity() as u64;
    let chain = (a >= 1 && k >= 1).then(|| {
        let steps = [
            (a + 1) * (a * l + 1) <= (a + 1) * n,
            (a + 1) * n * (l + 1) <= 2 * n * (a * l + 1),
            2 * n * ad <= an * n * (l + 1),
        ];
        ChainCheck {
            terms: [
                (a + 1) as f64,
                ((a + 1) * n) as f64 / (a * l + 1) as f64,
                (2 * n) as f64 / (l + 1) as f64,
                (an * n) as f64 / ad as f64,
            ],
            steps,
            holds: steps.iter().all(|&s| s),
        }
    });
    Ok(MultiplicityReport {
        l,
        n,
        a,
        k,
        max_multiplicity: m as u32,
        ceiling,
        within_ceiling: m <= ceiling,
        within_alpha: m * ad <= an * n,
        chain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu3_examples() {
        assert_eq!(mu3(7).unwrap(), [1, 2, 4]);
        assert_eq!(mu3(13).unwrap(), [1, 3, 9]);
        assert!(matches!(mu3(5), Err(Error::BadPrime(5))));
        assert!(matches!(mu3(21), Err(Error::BadPrime(21))));
    }

    #[test]
    fn b_k_examples() {
        assert_eq!(b_k(7, 2).unwrap(), vec![vec![1, 6], vec![2, 5], vec![3, 4]]);
        assert_eq!(b_k(7, 3).unwrap(), vec![vec![1, 2, 4], vec![3, 5, 6]]);
        assert_eq!(b_k(7, 0).unwrap(), vec![Vec::<u64>::new()]);
        assert_eq!(b_k(7, 1).unwrap(), vec![vec![0]]);
        assert!(matches!(b_k(7, 7), Err(Error::BadRange(_))));
    }

    #[test]
    fn b3_matches_naive_scan() {
        // {x, y, z} is an affine image of mu_3 iff x^2+y^2+z^2 = xy+yz+zx.
        for l in [7u64, 13, 19, 31] {
            let mut naive = Vec::new();
            for x in 0..l {
                for y in x + 1..l {
                    for z in y + 1..l {
                        let q = (x * x + y * y + z * z + 3 * l * l - x * y - y * z - z * x) % l;
                        if (x + y + z) % l == 0 && q == 0 {
                            naive.push(vec![x, y, z]);
                        }
                    }
                }
            }
            assert_eq!(b_k(l, 3).unwrap(), naive, "l = {l}");
        }
    }

    #[test]
    fn b_k_closed_under_scaling() {
        for l in [7u64, 13] {
            for k in 0..l as usize {
                let sets = b_k(l, k).unwrap();
                for s in &sets {
                    assert_eq!(s.iter().sum::<u64>() % l, 0);
                    for t in 1..l {
                        let mut scaled: Vec<u64> = s.iter().map(|x| x * t % l).collect();
                        scaled.sort_unstable();
                        assert!(sets.contains(&scaled));
                    }
                }
            }
        }
    }

    #[test]
    fn a_n_examples() {
        assert_eq!(a_n(7, 9).unwrap().len(), 3);
        let a7 = a_n(7, 7).unwrap();
        assert_eq!(a7.len(), 1);
        assert!(a7[0].values.iter().all(|&v| v == 1));
        assert_eq!(a_n(7, 2).unwrap().len(), 3);
        assert!(a_n(7, 1).is_err());
        for f in a_n(13, 20).unwrap() {
            assert!(is_in_a_n(&f).unwrap());
            assert_eq!(f.n, 20);
            assert_eq!(f.determinant_sum(), 0);
        }
    }

    #[test]
    fn explicit_decompositions() {
        let f = &a_n(7, 7).unwrap()[0];
        let w = decomposition_witness(7, 7, f, WitnessMode::Cond2).unwrap();
        match &w {
            Witness::Cond2 {
                base,
                shift,
                position,
                explicit,
            } => {
                assert!(*explicit);
                assert_eq!(base.values, vec![0, 1, 1, 1, 1, 1, 1]);
                assert_eq!((*shift, *position), (0, 0));
            }
            _ => panic!(),
        }
        let f = &a_n(13, 14).unwrap()[0];
        assert_eq!(f.values[0], 2);
        let w = decomposition_witness(13, 14, f, WitnessMode::Cond3).unwrap();
        assert!(w.verify(f).unwrap() && w.is_explicit());
        if let Witness::Cond3 {
            first,
            first_shift,
            second,
            second_shift,
            ..
        } = &w
        {
            let mut lowered = vec![1u32; 13];
            lowered[12] = 0;
            assert_eq!(first.translate(*first_shift).values, lowered);
            let mut ends = vec![0u32; 13];
            ends[0] = 1;
            ends[12] = 1;
            assert_eq!(second.translate(*second_shift).values, ends);
        }
        let f = &a_n(13, 26).unwrap()[0];
        let w = decomposition_witness(13, 26, f, WitnessMode::Cond3).unwrap();
        assert!(w.verify(f).unwrap() && w.is_explicit());
    }

    #[test]
    fn searched_witnesses_verify() {
        for f in a_n(7, 9).unwrap() {
            for mode in [WitnessMode::Cond2, WitnessMode::Cond3] {
                let w = decomposition_witness(7, 9, &f, mode).unwrap();
                assert!(w.verify(&f).unwrap());
                assert!(!w.is_explicit());
            }
        }
        let f = &a_n(7, 7).unwrap()[0];
        assert!(witness_search(7, 7, f, WitnessMode::Cond3)
            .unwrap()
            .verify(f)
            .unwrap());
        assert!(matches!(
            decomposition_witness(7, 2, &a_n(7, 2).unwrap()[0], WitnessMode::Cond2),
            Err(Error::BadRange(_))
        ));
    }

    #[test]
    fn torsion_class_counts() {
        assert_eq!(
            torsion_classes(TorsionGroupKind::FreeProduct, 7)
                .unwrap()
                .representatives
                .len(),
            12
        );
        assert_eq!(
            torsion_classes(TorsionGroupKind::FreeProduct, 13)
                .unwrap()
                .representatives
                .len(),
            24
        );
        assert_eq!(
            torsion_classes(TorsionGroupKind::Quadrilateral, 19)
                .unwrap()
                .representatives
                .len(),
            72
        );
        assert!(torsion_classes(TorsionGroupKind::Quadrilateral, 13).is_err());
        assert!(torsion_classes(TorsionGroupKind::FreeProduct, 11).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let f = &a_n(19, 20).unwrap()[0];
        let r = class_multiplicity_check(19, 20, f).unwrap();
        assert_eq!(r.max_multiplicity, 2);
        assert!(r.within_alpha && r.chain.as_ref().unwrap().holds);
        let f = &a_n(7, 7).unwrap()[0];
        assert_eq!(
            class_multiplicity_check(7, 7, f).unwrap().max_multiplicity,
            1
        );
        let f = &a_n(19, 40).unwrap()[0];
        let r = class_multiplicity_check(19, 40, f).unwrap();
        assert_eq!((r.max_multiplicity, r.ceiling), (3, 3));
        assert!(r.within_alpha);
        let f = &a_n(19, 5).unwrap()[0];
        assert!(class_multiplicity_check(19, 5, f).unwrap().chain.is_none());
    }
}
