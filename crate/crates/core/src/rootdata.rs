//! Weight lattice, invariant form and root systems of `spo(2n|l)`.
//!
//! Weights are integer vectors over an index set `I(r|s) = {-r..-1, 1..s}`.
//! For `l = 2m+1` (types `B(0,n)`, `B(m,n)`) and `l = 2m`, `m >= 2` (type
//! `D(m,n)`) the index set is `I(n|m)` with the symplectic indices negative.
//! Type `C(n)` (`l = 2`) is realized as `osp(2|2n)` over `I(1|n)`: index `-1`
//! is the `so(2)` coordinate and `1..=n` are symplectic.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("spo(2n|l) needs n >= 1 and l >= 1, got n = {n}, l = {ell}")]
    NotSuper { n: usize, ell: usize },
    #[error("coroot pairing needs an even, non-isotropic root, got {0}")]
    NotEvenRoot(Weight),
    #[error("weight {weight} has shape ({neg}|{pos}), expected ({want_neg}|{want_pos})")]
    Shape {
        weight: Weight,
        neg: usize,
        pos: usize,
        want_neg: usize,
        want_pos: usize,
    },
}

/// A nonzero index of `I(r|s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightIndex(i32);

impl WeightIndex {
    pub fn new(value: i32) -> Option<Self> {
        (value != 0).then_some(WeightIndex(value))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    pub fn is_negative(self) -> bool {
        self.0 < 0
    }
}

impl fmt::Display for WeightIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `sum_i lambda_i delta_i`, stored as the negative block
/// `(lambda_{-r}, ..., lambda_{-1})` and the positive block
/// `(lambda_1, ..., lambda_s)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub neg: Vec<i64>,
    pub pos: Vec<i64>,
}

impl Weight {
    pub fn zero(neg_rank: usize, pos_rank: usize) -> Self {
        Weight {
            neg: vec![0; neg_rank],
            pos: vec![0; pos_rank],
        }
    }

    pub fn new(neg: Vec<i64>, pos: Vec<i64>) -> Self {
        Weight { neg, pos }
    }

    /// `delta_i` for `i = index`.
    pub fn unit(neg_rank: usize, pos_rank: usize, index: i32) -> Self {
        let mut w = Weight::zero(neg_rank, pos_rank);
        w.set(index, 1);
        w
    }

    pub fn neg_rank(&self) -> usize {
        self.neg.len()
    }

    pub fn pos_rank(&self) -> usize {
        self.pos.len()
    }

    pub fn same_shape(&self, other: &Weight) -> bool {
        self.neg.len() == other.neg.len() && self.pos.len() == other.pos.len()
    }

    /// Coefficient of `delta_index`; zero outside the index set.
    pub fn get(&self, index: i32) -> i64 {
        if index < 0 {
            let k = self.neg.len() as i32 + index;
            if k < 0 {
                0
            } else {
                self.neg[k as usize]
            }
        } else if index > 0 {
            self.pos.get(index as usize - 1).copied().unwrap_or(0)
        } else {
            0
        }
    }

    pub fn set(&mut self, index: i32, value: i64) {
        assert!(index != 0, "weight index 0 does not exist");
        if index < 0 {
            let k = self.neg.len() as i32 + index;
            assert!(k >= 0, "index {index} outside negative block");
            self.neg[k as usize] = value;
        } else {
            self.pos[index as usize - 1] = value;
        }
    }

    /// Indices of the index set in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = i32> {
        let r = self.neg.len() as i32;
        let s = self.pos.len() as i32;
        (-r..=-1).chain(1..=s)
    }

    pub fn is_zero(&self) -> bool {
        self.neg.iter().chain(&self.pos).all(|&x| x == 0)
    }

    /// All coordinates, negative block first.
    pub fn coords(&self) -> impl Iterator<Item = i64> + '_ {
        self.neg.iter().chain(&self.pos).copied()
    }

    pub fn max_abs(&self) -> i64 {
        self.coords().map(i64::abs).max().unwrap_or(0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.indices() {
            let c = self.get(i);
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}d[{i}]")?;
            } else {
                write!(f, "{sign}{mag}d[{i}]")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add<&Weight> for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Weight> for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        assert!(self.same_shape(rhs), "weights over different index sets");
        self.neg.iter_mut().zip(&rhs.neg).for_each(|(a, b)| *a += b);
        self.pos.iter_mut().zip(&rhs.pos).for_each(|(a, b)| *a += b);
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        assert!(self.same_shape(rhs), "weights over different index sets");
        self.neg.iter_mut().zip(&rhs.neg).for_each(|(a, b)| *a -= b);
        self.pos.iter_mut().zip(&rhs.pos).for_each(|(a, b)| *a -= b);
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            neg: self.neg.iter().map(|x| -x).collect(),
            pos: self.pos.iter().map(|x| -x).collect(),
        }
    }
}

impl Mul<&Weight> for i64 {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        Weight {
            neg: rhs.neg.iter().map(|x| self * x).collect(),
            pos: rhs.pos.iter().map(|x| self * x).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root {
    pub weight: Weight,
    pub parity: Parity,
}

impl Root {
    pub fn is_odd(&self) -> bool {
        self.parity.is_odd()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.weight)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `spo(2n|1)`
    BZero,
    /// `spo(2n|2m+1)`, `m >= 1`
    B,
    /// `spo(2n|2)`, realized as `osp(2|2n)`
    C,
    /// `spo(2n|2m)`, `m >= 2`
    D,
}

/// Root datum of `spo(2n|l)` with its standard positive system.
#[derive(Debug, Clone)]
pub struct RootSystem {
    n: usize,
    ell: usize,
    m: usize,
    family: Family,
    neg_rank: usize,
    pos_rank: usize,
    pos_even: Vec<Root>,
    pos_odd: Vec<Root>,
    simple: Vec<Root>,
    simple_even: Vec<Root>,
    roots: HashMap<Weight, Parity>,
}

impl RootSystem {
    pub fn new(n: usize, ell: usize) -> Result<Self, RootError> {
        if n == 0 || ell == 0 {
            return Err(RootError::NotSuper { n, ell });
        }
        let m = ell / 2;
        let family = match ell {
            1 => Family::BZero,
            2 => Family::C,
            _ if ell % 2 == 1 => Family::B,
            _ => Family::D,
        };
        let (neg_rank, pos_rank) = match family {
            Family::C => (1, n),
            _ => (n, m),
        };
        let unit = |i: i32| Weight::unit(neg_rank, pos_rank, i);
        let even = |w: Weight| Root {
            weight: w,
            parity: Parity::Even,
        };
        let odd = |w: Weight| Root {
            weight: w,
            parity: Parity::Odd,
        };
        let sum = |i: i32, j: i32| &unit(i) + &unit(j);
        let diff = |i: i32, j: i32| &unit(i) - &unit(j);

        let mut pos_even = Vec::new();
        let mut pos_odd = Vec::new();
        let mut simple = Vec::new();
        let mut simple_even = Vec::new();

        match family {
            Family::C => {
                let n = n as i32;
                for i in 1..=n {
                    for j in i + 1..=n {
                        pos_even.push(even(diff(i, j)));
                        pos_even.push(even(sum(i, j)));
                    }
                }
                for i in 1..=n {
                    pos_even.push(even(2 * &unit(i)));
                }
                for i in 1..=n {
                    pos_odd.push(odd(diff(-1, i)));
                    pos_odd.push(odd(sum(-1, i)));
                }
                simple.push(odd(diff(-1, 1)));
                for i in 1..n {
                    simple.push(even(diff(i, i + 1)));
                    simple_even.push(even(diff(i, i + 1)));
                }
                simple.push(even(2 * &unit(n)));
                simple_even.push(even(2 * &unit(n)));
            }
            _ => {
                let (nn, mm) = (n as i32, m as i32);
                for i in -nn..0 {
                    for j in i + 1..0 {
                        pos_even.push(even(diff(i, j)));
                        pos_even.push(even(sum(i, j)));
                    }
                }
                for i in 1..=mm {
                    for j in i + 1..=mm {
                        pos_even.push(even(diff(i, j)));
                        pos_even.push(even(sum(i, j)));
                    }
                }
                for i in -nn..0 {
                    pos_even.push(even(2 * &unit(i)));
                }
                if family == Family::B {
                    for j in 1..=mm {
                        pos_even.push(even(unit(j)));
                    }
                }
                for i in -nn..0 {
                    for j in 1..=mm {
                        pos_odd.push(odd(diff(i, j)));
                        pos_odd.push(odd(sum(i, j)));
                    }
                }
                if family != Family::D {
                    for i in -nn..0 {
                        pos_odd.push(odd(unit(i)));
                    }
                }

                for i in -nn..-1 {
                    simple.push(even(diff(i, i + 1)));
                    simple_even.push(even(diff(i, i + 1)));
                }
                simple_even.push(even(2 * &unit(-1)));
                match family {
                    Family::BZero => simple.push(odd(unit(-1))),
                    Family::B | Family::D => {
                        simple.push(odd(diff(-1, 1)));
                        for j in 1..mm {
                            simple.push(even(diff(j, j + 1)));
                            simple_even.push(even(diff(j, j + 1)));
                        }
                        let last = if family == Family::B {
                            unit(mm)
                        } else {
                            sum(mm - 1, mm)
                        };
                        simple.push(even(last.clone()));
                        simple_even.push(even(last));
                    }
                    Family::C => unreachable!(),
                }
            }
        }

        let mut roots = HashMap::new();
        for root in pos_even.iter().chain(&pos_odd) {
            roots.insert(root.weight.clone(), root.parity);
            roots.insert(-&root.weight, root.parity);
        }

        Ok(RootSystem {
            n,
            ell,
            m,
            family,
            neg_rank,
            pos_rank,
            pos_even,
            pos_odd,
            simple,
            simple_even,
            roots,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `floor(l / 2)`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn neg_rank(&self) -> usize {
        self.neg_rank
    }

    pub fn pos_rank(&self) -> usize {
        self.pos_rank
    }

    /// Dimension of the Cartan subalgebra, `|I(neg|pos)|`.
    pub fn rank(&self) -> usize {
        self.neg_rank + self.pos_rank
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::BZero => format!("B(0,{})", self.n),
            Family::B => format!("B({},{})", self.m, self.n),
            Family::C => format!("C({})", self.n),
            Family::D => format!("D({},{})", self.m, self.n),
        }
    }

    pub fn pos_even(&self) -> &[Root] {
        &self.pos_even
    }

    pub fn pos_odd(&self) -> &[Root] {
        &self.pos_odd
    }

    /// The standard simple system.
    pub fn simple(&self) -> &[Root] {
        &self.simple
    }

    /// Simple roots of the even subalgebra.
    pub fn simple_even(&self) -> &[Root] {
        &self.simple_even
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.neg_rank, self.pos_rank)
    }

    pub fn unit(&self, index: i32) -> Weight {
        Weight::unit(self.neg_rank, self.pos_rank, index)
    }

    pub fn indices(&self) -> impl Iterator<Item = i32> {
        self.zero_weight().indices()
    }

    pub fn check_shape(&self, w: &Weight) -> Result<(), RootError> {
        if w.neg.len() == self.neg_rank && w.pos.len() == self.pos_rank {
            Ok(())
        } else {
            Err(RootError::Shape {
                weight: w.clone(),
                neg: w.neg.len(),
                pos: w.pos.len(),
                want_neg: self.neg_rank,
                want_pos: self.pos_rank,
            })
        }
    }

    /// Parity of `w` if it is a root.
    pub fn root_parity(&self, w: &Weight) -> Option<Parity> {
        self.roots.get(w).copied()
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.roots.contains_key(w)
    }

    /// Every root, positives (even then odd) followed by their negatives.
    pub fn all_roots(&self) -> Vec<Root> {
        let positives: Vec<Root> = self.pos_even.iter().chain(&self.pos_odd).cloned().collect();
        let negatives = positives.iter().map(|r| Root {
            weight: -&r.weight,
            parity: r.parity,
        });
        positives.iter().cloned().chain(negatives).collect()
    }

    pub fn is_positive(&self, w: &Weight) -> bool {
        self.pos_even
            .iter()
            .chain(&self.pos_odd)
            .any(|r| &r.weight == w)
    }

    /// `(delta_i, delta_i)`.
    pub fn form_sign(&self, index: i32) -> i64 {
        let negative_block_sign = if self.family == Family::C { -1 } else { 1 };
        if index < 0 {
            negative_block_sign
        } else {
            -negative_block_sign
        }
    }

    pub fn bilinear(&self, lhs: &Weight, rhs: &Weight) -> i64 {
        lhs.indices()
            .map(|i| self.form_sign(i) * lhs.get(i) * rhs.get(i))
            .sum()
    }

    /// `<lam, alpha^vee> = 2 (lam, alpha) / (alpha, alpha)` for an even root.
    pub fn coroot_pairing(&self, lam: &Weight, alpha: &Root) -> Result<i64, RootError> {
        let norm = self.bilinear(&alpha.weight, &alpha.weight);
        if alpha.is_odd() || norm == 0 {
            return Err(RootError::NotEvenRoot(alpha.weight.clone()));
        }
        let twice = 2 * self.bilinear(lam, &alpha.weight);
        debug_assert_eq!(twice % norm, 0, "non-integral coroot pairing");
        Ok(twice / norm)
    }

    /// Membership in `X^+(T)` through the explicit chain inequalities.
    pub fn is_dominant(&self, lam: &Weight) -> bool {
        if self.check_shape(lam).is_err() {
            return false;
        }
        let chain = |xs: &[i64]| xs.windows(2).all(|w| w[0] >= w[1]);
        match self.family {
            Family::C => chain(&lam.pos) && lam.pos.last().is_none_or(|&x| x >= 0),
            Family::BZero | Family::B => {
                chain(&lam.neg)
                    && lam.neg.last().is_none_or(|&x| x >= 0)
                    && chain(&lam.pos)
                    && lam.pos.last().is_none_or(|&x| x >= 0)
            }
            Family::D => {
                let m = lam.pos.len();
                let mut head = lam.pos.clone();
                head[m - 1] = head[m - 1].abs();
                chain(&lam.neg) && lam.neg.last().is_none_or(|&x| x >= 0) && chain(&head)
            }
        }
    }

    /// `0 <= <lam, alpha^vee> < p^r` for every even simple root.
    pub fn in_xr(&self, lam: &Weight, p: u64, r: u32) -> bool {
        if self.check_shape(lam).is_err() {
            return false;
        }
        let bound = (p as i64).pow(r);
        self.simple_even.iter().all(|alpha| {
            let c = self
                .coroot_pairing(lam, alpha)
                .expect("even simple roots are anisotropic");
            (0..bound).contains(&c)
        })
    }

    /// `(r, q)` for the `alpha`-string `{beta + i alpha | -r <= i <= q}`,
    /// the maximal run through `beta` inside `Delta u {0}`.
    pub fn root_string(&self, alpha: &Weight, beta: &Weight) -> (usize, usize) {
        let member = |w: &Weight| w.is_zero() || self.is_root(w);
        let run = |sign: i64| {
            let mut count = 0;
            let mut current = beta.clone();
            loop {
                current = &current + &(sign * alpha);
                if alpha.is_zero() || !member(&current) {
                    return count;
                }
                count += 1;
            }
        };
        (run(-1), run(1))
    }
}
