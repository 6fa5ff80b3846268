//! The Kostant `Z`-form of `U(spo(2n|l))`.
//!
//! Monomials are exponent vectors read against the Chevalley basis order:
//! even root vectors (negative roots first), Cartan elements, odd root
//! vectors (negative roots first). In the Kostant basis an even exponent
//! `n` means the divided power `X^(n)`, a Cartan exponent `m` means the
//! binomial `C(h, m)` and odd exponents are 0 or 1.
//!
//! Products are computed in the ordinary PBW basis, where straightening
//! only ever uses integer structure constants, and converted at the ends.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap as HashMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::chevalley::{BasisLabel, BracketTable, ChevalleyBasis, ChevalleyError};
use crate::rootdata::{Parity, Root, RootSystem, Weight};
use crate::CheckReport;

/// Largest total filtration degree a product may reach.
pub const DEGREE_CAP: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KostantError {
    #[error("straightening exceeded filtration degree {0}")]
    DegreeCap(u32),
    #[error(transparent)]
    Chevalley(#[from] ChevalleyError),
    #[error("{0} is not a basis label of this system")]
    UnknownLabel(String),
    #[error("{0} is not an odd root")]
    NotOdd(String),
    #[error("{0} is not an even root")]
    NotEven(String),
    #[error("odd exponent must be 0 or 1")]
    OddExponent,
    #[error("monomial has {got} slots, the system has {want}")]
    Shape { got: usize, want: usize },
    #[error("p must be an odd prime, got {0}")]
    BadPrime(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    EvenRoot,
    Cartan,
    Odd,
}

type Exps = Vec<u8>;
type IntPoly = Vec<(Exps, BigInt)>;

/// A Kostant basis monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KostantMonomial(Exps);

impl KostantMonomial {
    pub fn identity(slots: usize) -> Self {
        KostantMonomial(vec![0; slots])
    }

    pub fn from_exponents(exps: Vec<u8>) -> Self {
        KostantMonomial(exps)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    /// Total filtration degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// A rational combination of Kostant monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: BTreeMap<KostantMonomial, BigRational>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn monomial(mono: KostantMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(mono, BigRational::one());
        AlgebraElement { terms }
    }

    pub fn terms(&self) -> &BTreeMap<KostantMonomial, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, mono: &KostantMonomial) -> BigRational {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mono: KostantMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry(mono.clone())
            .or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Every coefficient is a rational integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(KostantMonomial::degree)
            .max()
            .unwrap_or(0)
    }
}

/// Which distribution-algebra basis a monomial is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistKind {
    /// `Dist(B)`: positive root factors only.
    B,
    /// `Dist(G_r)`: all even and Cartan exponents below `p^r`.
    Gr(u32),
    /// `Dist(B_r)`: both conditions.
    Br(u32),
}

/// Straightening engine for one root system. Cheap to clone; each clone
/// keeps its own memo tables.
#[derive(Debug, Clone)]
pub struct KostantEngine {
    basis: Arc<ChevalleyBasis>,
    table: Arc<BracketTable>,
    kinds: Arc<Vec<FactorKind>>,
    stirling1: Arc<Vec<Vec<BigInt>>>,
    stirling2: Arc<Vec<Vec<BigInt>>>,
    factorials: Arc<Vec<BigInt>>,
    left_memo: HashMap<(usize, Exps), Arc<IntPoly>>,
    right_memo: HashMap<(Exps, usize), Arc<IntPoly>>,
}

fn add_into(acc: &mut HashMap<Exps, BigInt>, terms: &IntPoly, scale: &BigInt) {
    for (m, c) in terms {
        let entry = acc.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c * scale;
    }
}

fn finish(acc: HashMap<Exps, BigInt>) -> IntPoly {
    let mut out: IntPoly = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort();
    out
}

/// Generalized binomial `C(x, k)` for integer `x`.
fn binomial(x: i64, k: u32) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k as i64 {
        num *= BigInt::from(x - j);
        den *= BigInt::from(j + 1);
    }
    BigRational::new(num, den)
}

impl KostantEngine {
    pub fn new(rs: &RootSystem) -> Result<Self, KostantError> {
        let basis = ChevalleyBasis::new(rs)?;
        let table = basis.bracket_table()?;
        Ok(KostantEngine::from_parts(Arc::new(basis), Arc::new(table)))
    }

    pub fn from_parts(basis: Arc<ChevalleyBasis>, table: Arc<BracketTable>) -> Self {
        let kinds = basis
            .elements()
            .iter()
            .map(|el| match (&el.label, el.parity) {
                (BasisLabel::Cartan(_), _) => FactorKind::Cartan,
                (_, Parity::Even) => FactorKind::EvenRoot,
                (_, Parity::Odd) => FactorKind::Odd,
            })
            .collect();
        let cap = DEGREE_CAP as usize;
        let mut s1 = vec![vec![BigInt::zero(); cap + 1]; cap + 1];
        let mut s2 = vec![vec![BigInt::zero(); cap + 1]; cap + 1];
        s1[0][0] = BigInt::one();
        s2[0][0] = BigInt::one();
        for m in 1..=cap {
            for k in 1..=m {
                s1[m][k] = &s1[m - 1][k - 1] - BigInt::from(m - 1) * &s1[m - 1][k];
                s2[m][k] = &s2[m - 1][k - 1] + BigInt::from(k) * &s2[m - 1][k];
            }
        }
        let mut factorials = vec![BigInt::one()];
        for k in 1..=cap {
            let next = &factorials[k - 1] * BigInt::from(k);
            factorials.push(next);
        }
        KostantEngine {
            basis,
            table,
            kinds: Arc::new(kinds),
            stirling1: Arc::new(s1),
            stirling2: Arc::new(s2),
            factorials: Arc::new(factorials),
            left_memo: HashMap::default(),
            right_memo: HashMap::default(),
        }
    }

    /// A clone with empty memo tables.
    pub fn fresh(&self) -> Self {
        KostantEngine {
            left_memo: HashMap::default(),
            right_memo: HashMap::default(),
            ..self.clone()
        }
    }

    pub fn basis(&self) -> &ChevalleyBasis {
        &self.basis
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn slots(&self) -> usize {
        self.kinds.len()
    }

    pub fn kind(&self, slot: usize) -> FactorKind {
        self.kinds[slot]
    }

    pub fn identity(&self) -> KostantMonomial {
        KostantMonomial::identity(self.slots())
    }

    fn slot_of(&self, label: &BasisLabel) -> Result<usize, KostantError> {
        self.basis
            .index_of(label)
            .ok_or_else(|| KostantError::UnknownLabel(label.to_string()))
    }

    /// `X_alpha^(r)` for an even root.
    pub fn divided_power(&self, alpha: &Weight, r: u8) -> Result<KostantMonomial, KostantError> {
        let slot = self.slot_of(&BasisLabel::Root(alpha.clone()))?;
        if self.kinds[slot] != FactorKind::EvenRoot {
            return Err(KostantError::NotEven(alpha.to_string()));
        }
        let mut m = self.identity();
        m.0[slot] = r;
        Ok(m)
    }

    /// `C(h_a, m)`.
    pub fn cartan_binomial(&self, a: i32, m: u8) -> Result<KostantMonomial, KostantError> {
        let slot = self.slot_of(&BasisLabel::Cartan(a))?;
        let mut mono = self.identity();
        mono.0[slot] = m;
        Ok(mono)
    }

    /// `X_beta` for an odd root.
    pub fn odd_vector(&self, beta: &Weight) -> Result<KostantMonomial, KostantError> {
        let slot = self.slot_of(&BasisLabel::Root(beta.clone()))?;
        if self.kinds[slot] != FactorKind::Odd {
            return Err(KostantError::NotOdd(beta.to_string()));
        }
        let mut m = self.identity();
        m.0[slot] = 1;
        Ok(m)
    }

    pub fn check_monomial(&self, mono: &KostantMonomial) -> Result<(), KostantError> {
        if mono.0.len() != self.slots() {
            return Err(KostantError::Shape {
                got: mono.0.len(),
                want: self.slots(),
            });
        }
        let odd_ok = mono
            .0
            .iter()
            .zip(self.kinds.iter())
            .all(|(&e, &k)| k != FactorKind::Odd || e <= 1);
        if odd_ok {
            Ok(())
        } else {
            Err(KostantError::OddExponent)
        }
    }

    fn sign(&self, a: usize, b: usize) -> i64 {
        if self.kinds[a] == FactorKind::Odd && self.kinds[b] == FactorKind::Odd {
            -1
        } else {
            1
        }
    }

    fn degree(m: &[u8]) -> u32 {
        m.iter().map(|&e| e as u32).sum()
    }

    /// Half of `[B_g, B_g]` for odd `g`; its coefficients are integers.
    fn half_square(&self, g: usize) -> Vec<(usize, BigInt)> {
        self.table
            .get(g, g)
            .iter()
            .map(|&(k, c)| {
                assert!(c % 2 == 0, "odd square with odd structure constant");
                (k, BigInt::from(c / 2))
            })
            .collect()
    }

    /// `B_g * M` in ordinary PBW form.
    fn left_mul_gen(&mut self, g: usize, m: &[u8]) -> Result<Arc<IntPoly>, KostantError> {
        let deg = Self::degree(m) + 1;
        if deg > DEGREE_CAP {
            return Err(KostantError::DegreeCap(DEGREE_CAP));
        }
        let key = (g, m.to_vec());
        if let Some(hit) = self.left_memo.get(&key) {
            return Ok(hit.clone());
        }
        let first = m.iter().position(|&e| e > 0);
        let result: IntPoly = match first {
            Some(q) if g > q => {
                let mut rest = m.to_vec();
                rest[q] -= 1;
                let mut acc = HashMap::default();
                let swapped = self.left_mul_gen(g, &rest)?;
                let s = BigInt::from(self.sign(g, q));
                for (n, c) in swapped.iter() {
                    let t = self.left_mul_gen(q, n)?;
                    add_into(&mut acc, &t, &(c * &s));
                }
                for &(k, c) in self.table.get(g, q).to_vec().iter() {
                    let t = self.left_mul_gen(k, &rest)?;
                    add_into(&mut acc, &t, &BigInt::from(c));
                }
                finish(acc)
            }
            Some(q) if g == q && self.kinds[g] == FactorKind::Odd => {
                let mut rest = m.to_vec();
                rest[q] -= 1;
                let mut acc = HashMap::default();
                for (k, c) in self.half_square(g) {
                    let t = self.left_mul_gen(k, &rest)?;
                    add_into(&mut acc, &t, &c);
                }
                finish(acc)
            }
            _ => {
                let mut out = m.to_vec();
                out[g] += 1;
                vec![(out, BigInt::one())]
            }
        };
        let result = Arc::new(result);
        self.left_memo.insert(key, result.clone());
        Ok(result)
    }

    /// `M * B_g` in ordinary PBW form.
    fn right_mul_gen(&mut self, m: &[u8], g: usize) -> Result<Arc<IntPoly>, KostantError> {
        let deg = Self::degree(m) + 1;
        if deg > DEGREE_CAP {
            return Err(KostantError::DegreeCap(DEGREE_CAP));
        }
        let key = (m.to_vec(), g);
        if let Some(hit) = self.right_memo.get(&key) {
            return Ok(hit.clone());
        }
        let last = m.iter().rposition(|&e| e > 0);
        let result: IntPoly = match last {
            Some(l) if g < l => {
                let mut rest = m.to_vec();
                rest[l] -= 1;
                let mut acc = HashMap::default();
                let swapped = self.right_mul_gen(&rest, g)?;
                let s = BigInt::from(self.sign(g, l));
                for (n, c) in swapped.iter() {
                    let t = self.right_mul_gen(n, l)?;
                    add_into(&mut acc, &t, &(c * &s));
                }
                for &(k, c) in self.table.get(l, g).to_vec().iter() {
                    let t = self.right_mul_gen(&rest, k)?;
                    add_into(&mut acc, &t, &BigInt::from(c));
                }
                finish(acc)
            }
            Some(l) if g == l && self.kinds[g] == FactorKind::Odd => {
                let mut rest = m.to_vec();
                rest[l] -= 1;
                let mut acc = HashMap::default();
                for (k, c) in self.half_square(g) {
                    let t = self.right_mul_gen(&rest, k)?;
                    add_into(&mut acc, &t, &c);
                }
                finish(acc)
            }
            _ => {
                let mut out = m.to_vec();
                out[g] += 1;
                vec![(out, BigInt::one())]
            }
        };
        let result = Arc::new(result);
        self.right_memo.insert(key, result.clone());
        Ok(result)
    }

    fn factors(m: &[u8]) -> Vec<usize> {
        m.iter()
            .enumerate()
            .flat_map(|(k, &e)| std::iter::repeat_n(k, e as usize))
            .collect()
    }

    /// Product of ordinary PBW monomials by inserting the left factors one
    /// at a time from the right.
    fn ordinary_product_left(&mut self, a: &[u8], b: &[u8]) -> Result<IntPoly, KostantError> {
        if Self::degree(a) + Self::degree(b) > DEGREE_CAP {
            return Err(KostantError::DegreeCap(DEGREE_CAP));
        }
        let mut current: IntPoly = vec![(b.to_vec(), BigInt::one())];
        for g in Self::factors(a).into_iter().rev() {
            let mut acc = HashMap::default();
            for (m, c) in &current {
                let t = self.left_mul_gen(g, m)?;
                add_into(&mut acc, &t, c);
            }
            current = finish(acc);
        }
        Ok(current)
    }

    /// Product of ordinary PBW monomials by appending the right factors one
    /// at a time from the left.
    fn ordinary_product_right(&mut self, a: &[u8], b: &[u8]) -> Result<IntPoly, KostantError> {
        if Self::degree(a) + Self::degree(b) > DEGREE_CAP {
            return Err(KostantError::DegreeCap(DEGREE_CAP));
        }
        let mut current: IntPoly = vec![(a.to_vec(), BigInt::one())];
        for g in Self::factors(b) {
            let mut acc = HashMap::default();
            for (m, c) in &current {
                let t = self.right_mul_gen(m, g)?;
                add_into(&mut acc, &t, c);
            }
            current = finish(acc);
        }
        Ok(current)
    }

    /// Kostant monomial as `(1/d) * sum c_i M_i` over ordinary monomials,
    /// with integer `c_i`, returned together with `d`.
    fn kostant_to_ordinary(&self, k: &KostantMonomial) -> (IntPoly, BigInt) {
        let mut base = k.0.clone();
        let mut denom = BigInt::one();
        let mut cartan_slots = Vec::new();
        for (slot, &e) in k.0.iter().enumerate() {
            match self.kinds[slot] {
                FactorKind::EvenRoot => denom *= &self.factorials[e as usize],
                FactorKind::Cartan if e > 0 => {
                    denom *= &self.factorials[e as usize];
                    cartan_slots.push(slot);
                    base[slot] = 0;
                }
                _ => {}
            }
        }
        if cartan_slots.is_empty() {
            return (vec![(base, BigInt::one())], denom);
        }
        // m! C(h, m) = sum_j s(m, j) h^j
        let choices = cartan_slots.iter().map(|&slot| {
            let m = k.0[slot] as usize;
            (1..=m).map(move |j| (slot, j, m))
        });
        let mut out = Vec::new();
        for combo in choices.multi_cartesian_product() {
            let mut exps = base.clone();
            let mut c = BigInt::one();
            for &(slot, j, m) in &combo {
                exps[slot] = j as u8;
                c *= &self.stirling1[m][j];
            }
            if !c.is_zero() {
                out.push((exps, c));
            }
        }
        (out, denom)
    }

    /// Integer ordinary combination re-expressed in the Kostant basis; the
    /// coefficients stay integral.
    fn ordinary_to_kostant(&self, poly: &HashMap<Exps, BigInt>) -> HashMap<Exps, BigInt> {
        let mut out: HashMap<Exps, BigInt> = HashMap::default();
        for (m, c) in poly {
            if c.is_zero() {
                continue;
            }
            let mut base = m.clone();
            let mut scale = c.clone();
            let mut cartan_slots = Vec::new();
            for (slot, &e) in m.iter().enumerate() {
                match self.kinds[slot] {
                    FactorKind::EvenRoot => scale *= &self.factorials[e as usize],
                    FactorKind::Cartan if e > 0 => {
                        cartan_slots.push(slot);
                        base[slot] = 0;
                    }
                    _ => {}
                }
            }
            if cartan_slots.is_empty() {
                *out.entry(base).or_insert_with(BigInt::zero) += scale;
                continue;
            }
            // h^e = sum_j S(e, j) j! C(h, j)
            let choices = cartan_slots.iter().map(|&slot| {
                let e = m[slot] as usize;
                (1..=e).map(move |j| (slot, j, e))
            });
            for combo in choices.multi_cartesian_product() {
                let mut exps = base.clone();
                let mut coeff = scale.clone();
                for &(slot, j, e) in &combo {
                    exps[slot] = j as u8;
                    coeff *= &self.stirling2[e][j];
                    coeff *= &self.factorials[j];
                }
                *out.entry(exps).or_insert_with(BigInt::zero) += coeff;
            }
        }
        out
    }

    /// Product of two Kostant monomials as `(1/d) * sum c_i K_i` with
    /// integer `c_i`.
    fn monomial_product(
        &mut self,
        a: &KostantMonomial,
        b: &KostantMonomial,
        right: bool,
    ) -> Result<(HashMap<Exps, BigInt>, BigInt), KostantError> {
        let (a_ord, da) = self.kostant_to_ordinary(a);
        let (b_ord, db) = self.kostant_to_ordinary(b);
        let mut acc: HashMap<Exps, BigInt> = HashMap::default();
        for (ma, ca) in &a_ord {
            for (mb, cb) in &b_ord {
                let prod = if right {
                    self.ordinary_product_right(ma, mb)?
                } else {
                    self.ordinary_product_left(ma, mb)?
                };
                add_into(&mut acc, &prod, &(ca * cb));
            }
        }
        Ok((self.ordinary_to_kostant(&acc), da * db))
    }

    fn multiply_with(
        &mut self,
        a: &AlgebraElement,
        b: &AlgebraElement,
        right: bool,
    ) -> Result<AlgebraElement, KostantError> {
        let mut out: BTreeMap<KostantMonomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let (poly, denom) = self.monomial_product(ma, mb, right)?;
                let scale = ca * cb / BigRational::from_integer(denom);
                for (m, c) in poly {
                    if c.is_zero() {
                        continue;
                    }
                    *out.entry(KostantMonomial(m))
                        .or_insert_with(BigRational::zero) += BigRational::from_integer(c) * &scale;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(AlgebraElement { terms: out })
    }

    /// Exact product in the Kostant basis.
    pub fn multiply(
        &mut self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, KostantError> {
        self.multiply_with(a, b, false)
    }

    /// The same product straightened by appending right factors instead of
    /// inserting left ones.
    pub fn multiply_right_first(
        &mut self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, KostantError> {
        self.multiply_with(a, b, true)
    }

    pub fn multiply_monomials(
        &mut self,
        a: &KostantMonomial,
        b: &KostantMonomial,
    ) -> Result<AlgebraElement, KostantError> {
        self.check_monomial(a)?;
        self.check_monomial(b)?;
        self.multiply(
            &AlgebraElement::monomial(a.clone()),
            &AlgebraElement::monomial(b.clone()),
        )
    }

    fn odd_slot(&self, beta: &Weight) -> Result<usize, KostantError> {
        let slot = self.slot_of(&BasisLabel::Root(beta.clone()))?;
        if self.kinds[slot] == FactorKind::Odd {
            Ok(slot)
        } else {
            Err(KostantError::NotOdd(beta.to_string()))
        }
    }

    /// `X_beta C(h_a, t) = sum_r C(-beta(h_a), t - r) C(h_a, r) X_beta`.
    pub fn commute_h(&self, beta: &Weight, a: i32, t: u8) -> Result<AlgebraElement, KostantError> {
        let b_slot = self.odd_slot(beta)?;
        let h_slot = self.slot_of(&BasisLabel::Cartan(a))?;
        let shift = beta.get(a);
        let mut out = AlgebraElement::zero();
        for r in 0..=t {
            let mut m = self.identity();
            m.0[h_slot] = r;
            m.0[b_slot] = 1;
            out.add_term(m, binomial(-shift, (t - r) as u32));
        }
        Ok(out)
    }

    /// The variant with `(-1)^(t-r) C(beta(h_a), t - r)`; it agrees with
    /// [`KostantEngine::commute_h`] only for `t <= 1` or `beta(h_a) = 0`.
    pub fn commute_h_alternating(
        &self,
        beta: &Weight,
        a: i32,
        t: u8,
    ) -> Result<AlgebraElement, KostantError> {
        let b_slot = self.odd_slot(beta)?;
        let h_slot = self.slot_of(&BasisLabel::Cartan(a))?;
        let shift = beta.get(a);
        let mut out = AlgebraElement::zero();
        for r in 0..=t {
            let mut m = self.identity();
            m.0[h_slot] = r;
            m.0[b_slot] = 1;
            let sign = if (t - r).is_multiple_of(2) { 1 } else { -1 };
            out.add_term(
                m,
                binomial(shift, (t - r) as u32) * BigRational::from_integer(sign.into()),
            );
        }
        Ok(out)
    }

    /// `X_beta X_alpha^(r) = X_alpha^(r) X_beta + X_alpha^(r-1) [X_beta, X_alpha]
    /// + X_alpha^(r-2) (1/2) [[X_beta, X_alpha], X_alpha]`.
    pub fn commute_divided(
        &self,
        beta: &Weight,
        alpha: &Weight,
        r: u8,
    ) -> Result<AlgebraElement, KostantError> {
        let b_slot = self.odd_slot(beta)?;
        let a_slot = self.slot_of(&BasisLabel::Root(alpha.clone()))?;
        if self.kinds[a_slot] != FactorKind::EvenRoot {
            return Err(KostantError::NotEven(alpha.to_string()));
        }
        let d = self.slots();
        let mut ad = vec![0i64; d];
        ad[b_slot] = 1;
        let mut out = AlgebraElement::zero();
        let mut k_fact = 1i64;
        for k in 0..=2u8.min(r) {
            if k > 0 {
                ad = self.table.bracket_right(&ad, a_slot);
                k_fact *= k as i64;
            }
            for (slot, &c) in ad.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let mut m = self.identity();
                m.0[a_slot] = r - k;
                m.0[slot] = 1;
                out.add_term(m, BigRational::new(c.into(), k_fact.into()));
            }
        }
        Ok(out)
    }

    /// `(ad X_alpha)^2 X_beta != 0`, i.e. the three-term case.
    pub fn has_second_order_term(
        &self,
        beta: &Weight,
        alpha: &Weight,
    ) -> Result<bool, KostantError> {
        let b_slot = self.odd_slot(beta)?;
        let a_slot = self.slot_of(&BasisLabel::Root(alpha.clone()))?;
        let mut v = vec![0i64; self.slots()];
        v[b_slot] = 1;
        let once = self.table.bracket_left(a_slot, &v);
        let twice = self.table.bracket_left(a_slot, &once);
        Ok(twice.iter().any(|&c| c != 0))
    }

    fn root_of_slot(&self, slot: usize) -> Option<&Weight> {
        match &self.basis.elements()[slot].label {
            BasisLabel::Root(w) => Some(w),
            BasisLabel::Cartan(_) => None,
        }
    }

    /// Membership of a monomial in the `Dist(B)`, `Dist(G_r)` or `Dist(B_r)`
    /// monomial basis.
    pub fn in_dist_subalgebra(&self, mono: &KostantMonomial, which: DistKind, p: u64) -> bool {
        let rs = self.basis.root_system();
        let positive_only = || {
            mono.0.iter().enumerate().all(|(slot, &e)| {
                e == 0 || self.root_of_slot(slot).is_none_or(|w| rs.is_positive(w))
            })
        };
        let bounded = |r: u32| {
            let bound = (p as u128).saturating_pow(r);
            mono.0
                .iter()
                .enumerate()
                .all(|(slot, &e)| self.kinds[slot] == FactorKind::Odd || (e as u128) < bound)
        };
        let odd_flags = mono
            .0
            .iter()
            .zip(self.kinds.iter())
            .all(|(&e, &k)| k != FactorKind::Odd || e <= 1);
        odd_flags
            && match which {
                DistKind::B => positive_only(),
                DistKind::Gr(r) => bounded(r),
                DistKind::Br(r) => positive_only() && bounded(r),
            }
    }

    /// All Kostant monomials with even exponents `<= max_even` and Cartan
    /// exponents `<= max_cartan`.
    pub fn monomials(&self, max_even: u8, max_cartan: u8) -> Vec<KostantMonomial> {
        self.kinds
            .iter()
            .map(|k| match k {
                FactorKind::EvenRoot => 0..=max_even,
                FactorKind::Cartan => 0..=max_cartan,
                FactorKind::Odd => 0..=1,
            })
            .multi_cartesian_product()
            .map(KostantMonomial)
            .collect()
    }

    /// The Kostant generators `X_alpha^(r)`, `C(h, m)` and `X_beta` within
    /// the bounds.
    pub fn generators(&self, max_even: u8, max_cartan: u8) -> Vec<KostantMonomial> {
        let mut out = Vec::new();
        for (slot, kind) in self.kinds.iter().enumerate() {
            let top = match kind {
                FactorKind::EvenRoot => max_even,
                FactorKind::Cartan => max_cartan,
                FactorKind::Odd => 1,
            };
            for e in 1..=top {
                let mut m = self.identity();
                m.0[slot] = e;
                out.push(m);
            }
        }
        out
    }

    pub fn random_monomial<R: Rng>(
        &self,
        rng: &mut R,
        max_even: u8,
        max_cartan: u8,
    ) -> KostantMonomial {
        KostantMonomial(
            self.kinds
                .iter()
                .map(|k| match k {
                    FactorKind::EvenRoot => rng.gen_range(0..=max_even),
                    FactorKind::Cartan => rng.gen_range(0..=max_cartan),
                    FactorKind::Odd => rng.gen_range(0..=1),
                })
                .collect(),
        )
    }

    pub fn display_monomial(&self, mono: &KostantMonomial) -> String {
        if mono.is_identity() {
            return "1".to_string();
        }
        mono.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(slot, &e)| {
                let label = &self.basis.elements()[slot].label;
                match self.kinds[slot] {
                    FactorKind::EvenRoot => format!("{label}^({e})"),
                    FactorKind::Cartan => format!("C({label},{e})"),
                    FactorKind::Odd => label.to_string(),
                }
            })
            .join(" ")
    }

    pub fn display_element(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        x.terms
            .iter()
            .map(|(m, c)| format!("({c}) {}", self.display_monomial(m)))
            .join(" + ")
    }
}

impl Serialize for KostantMonomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

fn check_pairs(
    engine: &KostantEngine,
    pairs: &[(KostantMonomial, KostantMonomial)],
) -> CheckReport {
    let parts: Vec<CheckReport> = pairs
        .par_iter()
        .map_init(
            || engine.fresh(),
            |eng, (a, b)| {
                let mut report = CheckReport {
                    checked: 1,
                    violations: Vec::new(),
                };
                let shown = |eng: &KostantEngine| {
                    format!("{} * {}", eng.display_monomial(a), eng.display_monomial(b))
                };
                if let Err(e) = eng.check_monomial(a).and(eng.check_monomial(b)) {
                    report.violations.push(format!("{}: {e}", shown(eng)));
                    return report;
                }
                match eng.monomial_product(a, b, false) {
                    Ok((poly, denom)) => {
                        let bound = a.degree() + b.degree();
                        for (m, c) in &poly {
                            if c.is_zero() {
                                continue;
                            }
                            if !(c % &denom).is_zero() {
                                report.violations.push(format!(
                                    "{}: coefficient {} on {}",
                                    shown(eng),
                                    BigRational::new(c.clone(), denom.clone()),
                                    eng.display_monomial(&KostantMonomial(m.clone()))
                                ));
                            }
                            if KostantEngine::degree(m) > bound {
                                report
                                    .violations
                                    .push(format!("{}: filtration degree exceeded", shown(eng)));
                            }
                        }
                    }
                    Err(e) => report.violations.push(format!("{}: {e}", shown(eng))),
                }
                report
            },
        )
        .collect();
    CheckReport::merge_all(parts)
}

/// Products of Kostant basis monomials have integer coefficients.
///
/// All ordered pairs are multiplied when there are at most `sample_budget`
/// of them; otherwise `sample_budget` uniformly random pairs are drawn.
pub fn kostant_closure_check(
    engine: &KostantEngine,
    max_even: u8,
    max_cartan: u8,
    sample_budget: usize,
    seed: u64,
) -> CheckReport {
    let monomials = engine.monomials(max_even, max_cartan);
    let total = monomials.len().saturating_mul(monomials.len());
    let pairs: Vec<(KostantMonomial, KostantMonomial)> = if total <= sample_budget {
        monomials
            .iter()
            .cartesian_product(monomials.iter())
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..sample_budget)
            .map(|_| {
                let a = &monomials[rng.gen_range(0..monomials.len())];
                let b = &monomials[rng.gen_range(0..monomials.len())];
                (a.clone(), b.clone())
            })
            .collect()
    };
    check_pairs(engine, &pairs)
}

/// Every Kostant generator times every monomial of the bounded box. Since
/// each basis monomial is an ordered product of generators, integrality of
/// these products implies the span is closed under multiplication.
pub fn generator_closure_check(
    engine: &KostantEngine,
    max_even: u8,
    max_cartan: u8,
    box_even: u8,
    box_cartan: u8,
) -> CheckReport {
    let gens = engine.generators(max_even, max_cartan);
    let monomials = engine.monomials(box_even, box_cartan);
    let pairs: Vec<_> = gens
        .iter()
        .cartesian_product(monomials.iter())
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    check_pairs(engine, &pairs)
}

/// `(ab)c = a(bc)` on random monomial triples.
pub fn associativity_check(
    engine: &KostantEngine,
    max_even: u8,
    max_cartan: u8,
    triples: usize,
    seed: u64,
) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<[KostantMonomial; 3]> = (0..triples)
        .map(|_| {
            [
                engine.random_monomial(&mut rng, max_even, max_cartan),
                engine.random_monomial(&mut rng, max_even, max_cartan),
                engine.random_monomial(&mut rng, max_even, max_cartan),
            ]
        })
        .collect();
    let parts: Vec<CheckReport> = inputs
        .par_iter()
        .map_init(
            || engine.fresh(),
            |eng, [a, b, c]| {
                let a = AlgebraElement::monomial(a.clone());
                let b = AlgebraElement::monomial(b.clone());
                let c = AlgebraElement::monomial(c.clone());
                let lhs = eng.multiply(&a, &b).and_then(|ab| eng.multiply(&ab, &c));
                let rhs = eng.multiply(&b, &c).and_then(|bc| eng.multiply(&a, &bc));
                let violations = match (lhs, rhs) {
                    (Ok(l), Ok(r)) if l == r => vec![],
                    (Ok(_), Ok(_)) => vec![format!(
                        "({}) ({}) ({}) not associative",
                        eng.display_element(&a),
                        eng.display_element(&b),
                        eng.display_element(&c)
                    )],
                    (Err(e), _) | (_, Err(e)) => vec![e.to_string()],
                };
                CheckReport {
                    checked: 1,
                    violations,
                }
            },
        )
        .collect();
    CheckReport::merge_all(parts)
}

/// Left-insertion and right-insertion straightening agree on random pairs.
pub fn confluence_check(
    engine: &KostantEngine,
    max_even: u8,
    max_cartan: u8,
    pairs: usize,
    seed: u64,
) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<(KostantMonomial, KostantMonomial)> = (0..pairs)
        .map(|_| {
            (
                engine.random_monomial(&mut rng, max_even, max_cartan),
                engine.random_monomial(&mut rng, max_even, max_cartan),
            )
        })
        .collect();
    let parts: Vec<CheckReport> = inputs
        .par_iter()
        .map_init(
            || engine.fresh(),
            |eng, (a, b)| {
                let a = AlgebraElement::monomial(a.clone());
                let b = AlgebraElement::monomial(b.clone());
                let violations = match (eng.multiply(&a, &b), eng.multiply_right_first(&a, &b)) {
                    (Ok(l), Ok(r)) if l == r => vec![],
                    (Ok(_), Ok(_)) => vec![format!(
                        "{} * {} depends on rewrite order",
                        eng.display_element(&a),
                        eng.display_element(&b)
                    )],
                    (Err(e), _) | (_, Err(e)) => vec![e.to_string()],
                };
                CheckReport {
                    checked: 1,
                    violations,
                }
            },
        )
        .collect();
    CheckReport::merge_all(parts)
}

/// `commute_h` against `multiply(X_beta, C(h_a, t))` for every odd `beta`,
/// every Cartan index `a` and `t <= max_t`.
pub fn commute_h_check(engine: &KostantEngine, max_t: u8) -> CheckReport {
    let rs = engine.basis().root_system();
    let mut eng = engine.fresh();
    let mut report = CheckReport::default();
    let odd: Vec<Root> = rs.all_roots().into_iter().filter(|r| r.is_odd()).collect();
    for beta in &odd {
        for a in rs.indices() {
            for t in 0..=max_t {
                report.checked += 1;
                let formula = eng.commute_h(&beta.weight, a, t);
                let product = eng.odd_vector(&beta.weight).and_then(|xb| {
                    let h = eng.cartan_binomial(a, t)?;
                    eng.multiply_monomials(&xb, &h)
                });
                match (formula, product) {
                    (Ok(f), Ok(p)) if f == p && f.is_integral() => {}
                    (Ok(f), Ok(p)) => report.violations.push(format!(
                        "X({}) C(H[{a}],{t}): formula {} vs product {}",
                        beta.weight,
                        eng.display_element(&f),
                        eng.display_element(&p)
                    )),
                    (Err(e), _) | (_, Err(e)) => report.violations.push(e.to_string()),
                }
            }
        }
    }
    report
}

/// `commute_divided` against `multiply(X_beta, X_alpha^(r))` for every odd
/// `beta`, every even `alpha` and `1 <= r <= max_r`. Returns the report and
/// the number of three-term cases covered.
pub fn commute_divided_check(engine: &KostantEngine, max_r: u8) -> (CheckReport, usize) {
    let rs = engine.basis().root_system();
    let mut eng = engine.fresh();
    let mut report = CheckReport::default();
    let mut three_term = 0;
    let roots = rs.all_roots();
    for beta in roots.iter().filter(|r| r.is_odd()) {
        for alpha in roots.iter().filter(|r| !r.is_odd()) {
            if eng
                .has_second_order_term(&beta.weight, &alpha.weight)
                .unwrap_or(false)
            {
                three_term += 1;
            }
            for r in 1..=max_r {
                report.checked += 1;
                let formula = eng.commute_divided(&beta.weight, &alpha.weight, r);
                let product = eng.odd_vector(&beta.weight).and_then(|xb| {
                    let xa = eng.divided_power(&alpha.weight, r)?;
                    eng.multiply_monomials(&xb, &xa)
                });
                match (formula, product) {
                    (Ok(f), Ok(p)) if f == p && f.is_integral() => {}
                    (Ok(f), Ok(p)) => report.violations.push(format!(
                        "X({}) X({})^({r}): formula {} vs product {}",
                        beta.weight,
                        alpha.weight,
                        eng.display_element(&f),
                        eng.display_element(&p)
                    )),
                    (Err(e), _) | (_, Err(e)) => report.violations.push(e.to_string()),
                }
            }
        }
    }
    (report, three_term)
}

/// `X_beta X_beta' + X_beta' X_beta = 0` whenever `beta + beta'` is neither
/// a root nor zero.
pub fn super_commutation_check(engine: &KostantEngine) -> CheckReport {
    let rs = engine.basis().root_system();
    let mut eng = engine.fresh();
    let mut report = CheckReport::default();
    let odd: Vec<Root> = rs.all_roots().into_iter().filter(|r| r.is_odd()).collect();
    for b1 in &odd {
        for b2 in &odd {
            let sum = &b1.weight + &b2.weight;
            if sum.is_zero() || rs.is_root(&sum) {
                continue;
            }
            report.checked += 1;
            let result = (|| {
                let x1 = AlgebraElement::monomial(eng.odd_vector(&b1.weight)?);
                let x2 = AlgebraElement::monomial(eng.odd_vector(&b2.weight)?);
                let l = eng.multiply(&x1, &x2)?;
                let r = eng.multiply(&x2, &x1)?;
                Ok::<_, KostantError>(l.add(&r))
            })();
            match result {
                Ok(s) if s.is_zero() => {}
                Ok(_) => report.violations.push(format!(
                    "X({}), X({}) do not anticommute",
                    b1.weight, b2.weight
                )),
                Err(e) => report.violations.push(e.to_string()),
            }
        }
    }
    report
}

impl fmt::Display for KostantMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
