//! Matrix realization of `spo(2n|l)`, its Chevalley basis and the integral
//! bracket table.
//!
//! Types `B` and `D` use rows and columns indexed by `I(2n|l)`: the
//! symplectic block `-2n..=-1` followed by the orthogonal block `1..=l`.
//! Type `C(n)` uses `osp(2|2n)` indexed by `I(2|2n)`: the `so(2)` block
//! `-2, -1` followed by the symplectic block `1..=2n`. In both layouts the
//! negative block is the even one.
//!
//! The Cartan part of the basis is `h_a` for every weight index `a`, so
//! each root `delta_a` is read off as the eigenvalue of `h_a`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::quadint::{Fp2, Fp2Ring, QuadInt};
use crate::rootdata::{Family, Parity, RootSystem, Weight};
use crate::{is_odd_prime, CheckReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevalleyError {
    #[error("basis vector {0} violates the membership relation")]
    NotMember(String),
    #[error("basis vector {0} is not a weight vector of its root")]
    NotWeightVector(String),
    #[error("[{lhs}, {rhs}] has a non-integral coefficient")]
    NonIntegralConstant { lhs: String, rhs: String },
    #[error("{0} is not in the span of the basis")]
    NotInSpan(String),
    #[error("super-commutator needs homogeneous inputs")]
    MixedParity,
    #[error("p must be an odd prime, got {0}")]
    BadPrime(u64),
}

/// Row/column bookkeeping for the two matrix realizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    n: usize,
    ell: usize,
    osp: bool,
}

impl Layout {
    pub fn for_system(rs: &RootSystem) -> Self {
        Layout {
            n: rs.n(),
            ell: rs.ell(),
            osp: rs.family() == Family::C,
        }
    }

    /// The `I(2n|l)` layout regardless of family.
    pub fn spo(n: usize, ell: usize) -> Self {
        Layout { n, ell, osp: false }
    }

    pub fn neg_count(&self) -> usize {
        if self.osp {
            2
        } else {
            2 * self.n
        }
    }

    pub fn pos_count(&self) -> usize {
        if self.osp {
            2 * self.n
        } else {
            self.ell
        }
    }

    pub fn size(&self) -> usize {
        self.neg_count() + self.pos_count()
    }

    pub fn position(&self, index: i32) -> usize {
        let neg = self.neg_count() as i32;
        let pos = self.pos_count() as i32;
        assert!(
            index != 0 && index >= -neg && index <= pos,
            "matrix index {index} out of range"
        );
        if index < 0 {
            (index + neg) as usize
        } else {
            (neg + index - 1) as usize
        }
    }

    pub fn index_at(&self, position: usize) -> i32 {
        let neg = self.neg_count() as i32;
        let k = position as i32;
        if k < neg {
            k - neg
        } else {
            k - neg + 1
        }
    }

    pub fn block_parity(&self, position: usize) -> Parity {
        if position < self.neg_count() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `epsilon(row)` as `(weight index, sign)`; `None` for the middle row
    /// of odd `l`.
    pub fn row_weight(&self, index: i32) -> Option<(i32, i64)> {
        let n = self.n as i32;
        if self.osp {
            return Some(match index {
                -2 => (-1, 1),
                -1 => (-1, -1),
                j if j <= n => (j, 1),
                j => (j - n, -1),
            });
        }
        let m = (self.ell / 2) as i32;
        Some(match index {
            r if r < -n => (r + n, 1),
            r if r < 0 => (r, -1),
            r if r <= m => (r, 1),
            r if r <= 2 * m => (r - m, -1),
            _ => return None,
        })
    }
}

/// Dense square matrix over `Z[sqrt 2]` with rows and columns in a [`Layout`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    layout: Layout,
    data: Vec<QuadInt>,
}

impl SuperMatrix {
    pub fn zeros(layout: Layout) -> Self {
        let s = layout.size();
        SuperMatrix {
            layout,
            data: vec![QuadInt::ZERO; s * s],
        }
    }

    /// `E_{row,col}` in matrix indices.
    pub fn unit(layout: Layout, row: i32, col: i32) -> Self {
        let mut out = SuperMatrix::zeros(layout);
        out.set(row, col, QuadInt::ONE);
        out
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn size(&self) -> usize {
        self.layout.size()
    }

    pub fn get(&self, row: i32, col: i32) -> QuadInt {
        let s = self.size();
        self.data[self.layout.position(row) * s + self.layout.position(col)]
    }

    pub fn set(&mut self, row: i32, col: i32, value: QuadInt) {
        let s = self.size();
        let k = self.layout.position(row) * s + self.layout.position(col);
        self.data[k] = value;
    }

    pub fn entry(&self, row_pos: usize, col_pos: usize) -> QuadInt {
        self.data[row_pos * self.size() + col_pos]
    }

    pub fn flat(&self) -> &[QuadInt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Nonzero entries as `(row index, col index, value)`, row-major.
    pub fn nonzeros(&self) -> Vec<(i32, i32, QuadInt)> {
        let s = self.size();
        self.data
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, &v)| (self.layout.index_at(k / s), self.layout.index_at(k % s), v))
            .collect()
    }

    /// `Even` for block-diagonal support, `Odd` for off-diagonal blocks,
    /// `None` when mixed. The zero matrix counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let s = self.size();
        let mut seen = None;
        for (k, v) in self.data.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let p = self.layout.block_parity(k / s) + self.layout.block_parity(k % s);
            match seen {
                None => seen = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(Parity::Even))
    }

    pub fn scale(&self, c: QuadInt) -> SuperMatrix {
        SuperMatrix {
            layout: self.layout,
            data: self.data.iter().map(|&x| x * c).collect(),
        }
    }

    /// `st(X)_{ij} = X_{ji}`, negated when row `i` is odd and column `j`
    /// is even.
    pub fn supertranspose(&self) -> SuperMatrix {
        let s = self.size();
        let mut out = SuperMatrix::zeros(self.layout);
        for i in 0..s {
            for j in 0..s {
                let v = self.data[j * s + i];
                let flip = self.layout.block_parity(i) == Parity::Odd
                    && self.layout.block_parity(j) == Parity::Even;
                out.data[i * s + j] = if flip { -v } else { v };
            }
        }
        out
    }

    /// Super-commutator `AB - (-1)^{|A||B|} BA`.
    pub fn bracket(&self, other: &SuperMatrix) -> Result<SuperMatrix, ChevalleyError> {
        let pa = self.parity().ok_or(ChevalleyError::MixedParity)?;
        let pb = other.parity().ok_or(ChevalleyError::MixedParity)?;
        let ab = self * other;
        let ba = other * self;
        Ok(if pa.is_odd() && pb.is_odd() {
            &ab + &ba
        } else {
            &ab - &ba
        })
    }
}

impl Add for &SuperMatrix {
    type Output = SuperMatrix;
    fn add(self, rhs: &SuperMatrix) -> SuperMatrix {
        SuperMatrix {
            layout: self.layout,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &SuperMatrix {
    type Output = SuperMatrix;
    fn sub(self, rhs: &SuperMatrix) -> SuperMatrix {
        SuperMatrix {
            layout: self.layout,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &SuperMatrix {
    type Output = SuperMatrix;
    fn mul(self, rhs: &SuperMatrix) -> SuperMatrix {
        let s = self.size();
        let mut out = SuperMatrix::zeros(self.layout);
        for i in 0..s {
            for k in 0..s {
                let a = self.data[i * s + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = rhs.data[k * s + j];
                    if !b.is_zero() {
                        out.data[i * s + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// The form matrix of `spo(2n|l)` in the `I(2n|l)` layout: `[[0, I], [-I, 0]]`
/// on the symplectic block, `[[0, I], [I, 0]]` on the first `2m` orthogonal
/// indices and `1` on the middle index when `l` is odd.
pub fn form_matrix(n: usize, ell: usize) -> SuperMatrix {
    spo_form(Layout::spo(n, ell))
}

fn spo_form(layout: Layout) -> SuperMatrix {
    let n = layout.n as i32;
    let m = (layout.ell / 2) as i32;
    let mut j = SuperMatrix::zeros(layout);
    for i in -n..0 {
        j.set(i - n, i, QuadInt::ONE);
        j.set(i, i - n, -QuadInt::ONE);
    }
    for a in 1..=m {
        j.set(a, a + m, QuadInt::ONE);
        j.set(a + m, a, QuadInt::ONE);
    }
    if layout.ell % 2 == 1 {
        j.set(2 * m + 1, 2 * m + 1, QuadInt::ONE);
    }
    j
}

/// The form whose super-skew elements are exactly the realized algebra.
pub fn membership_form(layout: Layout) -> SuperMatrix {
    if !layout.osp {
        return spo_form(layout);
    }
    let n = layout.n as i32;
    let mut j = SuperMatrix::zeros(layout);
    j.set(-2, -1, QuadInt::ONE);
    j.set(-1, -2, QuadInt::ONE);
    for a in 1..=n {
        j.set(a, a + n, -QuadInt::ONE);
        j.set(a + n, a, QuadInt::ONE);
    }
    j
}

/// `st(X) J + J X = 0`.
pub fn is_member(x: &SuperMatrix) -> bool {
    let j = membership_form(x.layout());
    (&(&x.supertranspose() * &j) + &(&j * x)).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    Root(Weight),
    Cartan(i32),
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisLabel::Root(w) => write!(f, "X({w})"),
            BasisLabel::Cartan(a) => write!(f, "H[{a}]"),
        }
    }
}

impl Serialize for BasisLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone)]
pub struct BasisElement {
    pub label: BasisLabel,
    pub parity: Parity,
    /// Zero for Cartan elements.
    pub weight: Weight,
    pub matrix: SuperMatrix,
}

#[derive(Serialize)]
struct BasisElementJson<'a> {
    label: &'a BasisLabel,
    parity: Parity,
    weight: &'a Weight,
    entries: Vec<(i32, i32, QuadInt)>,
}

impl Serialize for BasisElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BasisElementJson {
            label: &self.label,
            parity: self.parity,
            weight: &self.weight,
            entries: self.matrix.nonzeros(),
        }
        .serialize(serializer)
    }
}

/// Failure modes of expressing a matrix in the basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpandError {
    NonIntegral,
    NotInSpan,
}

/// The realized Chevalley basis, ordered as: negative even roots, positive
/// even roots, Cartan elements, negative odd roots, positive odd roots.
#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    rs: RootSystem,
    layout: Layout,
    elements: Vec<BasisElement>,
    lookup: HashMap<BasisLabel, usize>,
    pivots: Vec<(usize, QuadInt)>,
}

fn root_vector(layout: Layout, w: &Weight) -> SuperMatrix {
    let e = |r: i32, c: i32| SuperMatrix::unit(layout, r, c);
    let s2 = QuadInt::SQRT2;
    let support: Vec<(i32, i64)> = w
        .indices()
        .filter_map(|i| {
            let c = w.get(i);
            (c != 0).then_some((i, c))
        })
        .collect();
    let n = layout.n as i32;

    if layout.osp {
        return match *support.as_slice() {
            [(i, 2)] => e(i, i + n),
            [(i, -2)] => e(i + n, i),
            [(-1, a), (j, b)] => match (a, b) {
                (1, 1) => &e(-2, j + n) + &e(j, -1),
                (-1, -1) => &e(j + n, -2) - &e(-1, j),
                (1, -1) => &e(-2, j) - &e(j + n, -1),
                _ => &e(-1, j + n) + &e(j, -2),
            },
            [(i, a), (j, b)] => match (a, b) {
                (1, -1) => &e(i, j) - &e(j + n, i + n),
                (-1, 1) => &e(j, i) - &e(i + n, j + n),
                (1, 1) => &e(i, j + n) + &e(j, i + n),
                _ => &e(i + n, j) + &e(j + n, i),
            },
            _ => panic!("{w} is not a root of C({n})"),
        };
    }

    let m = (layout.ell / 2) as i32;
    let mid = 2 * m + 1;
    match *support.as_slice() {
        [(i, 2)] if i < 0 => e(i - n, i),
        [(i, -2)] if i < 0 => e(i, i - n),
        [(i, 1)] if i < 0 => (&e(mid, i) + &e(i - n, mid)).scale(s2),
        [(i, -1)] if i < 0 => (&e(mid, i - n) - &e(i, mid)).scale(s2),
        [(j, 1)] => (&e(j, mid) - &e(mid, j + m)).scale(s2),
        [(j, -1)] => (&e(mid, j) - &e(j + m, mid)).scale(s2),
        [(i, a), (j, b)] if j < 0 => match (a, b) {
            (1, -1) => &e(i - n, j - n) - &e(j, i),
            (-1, 1) => &e(j - n, i - n) - &e(i, j),
            (1, 1) => &e(i - n, j) + &e(j - n, i),
            _ => &e(i, j - n) + &e(j, i - n),
        },
        [(i, a), (j, b)] if i > 0 => match (a, b) {
            (1, -1) => &e(i, j) - &e(j + m, i + m),
            (-1, 1) => &e(j, i) - &e(i + m, j + m),
            (1, 1) => &e(i, j + m) - &e(j, i + m),
            _ => &e(j + m, i) - &e(i + m, j),
        },
        [(i, a), (j, b)] => match (a, b) {
            (1, 1) => &e(j, i) + &e(i - n, j + m),
            (-1, -1) => &e(j + m, i - n) - &e(i, j),
            (1, -1) => &e(j + m, i) + &e(i - n, j),
            _ => &e(j, i - n) - &e(i, j + m),
        },
        _ => panic!("{w} is not a root"),
    }
}

fn cartan_vector(layout: Layout, a: i32) -> SuperMatrix {
    let e = |r: i32| SuperMatrix::unit(layout, r, r);
    let n = layout.n as i32;
    if layout.osp {
        return if a < 0 {
            &e(-2) - &e(-1)
        } else {
            &e(a) - &e(a + n)
        };
    }
    let m = (layout.ell / 2) as i32;
    if a < 0 {
        &e(a - n) - &e(a)
    } else {
        &e(a) - &e(a + m)
    }
}

impl ChevalleyBasis {
    pub fn new(rs: &RootSystem) -> Result<Self, ChevalleyError> {
        let layout = Layout::for_system(rs);
        let mut elements = Vec::new();
        let push_root = |elements: &mut Vec<BasisElement>, w: Weight, parity: Parity| {
            elements.push(BasisElement {
                label: BasisLabel::Root(w.clone()),
                parity,
                matrix: root_vector(layout, &w),
                weight: w,
            });
        };
        for r in rs.pos_even() {
            push_root(&mut elements, -&r.weight, Parity::Even);
        }
        for r in rs.pos_even() {
            push_root(&mut elements, r.weight.clone(), Parity::Even);
        }
        for a in rs.indices() {
            elements.push(BasisElement {
                label: BasisLabel::Cartan(a),
                parity: Parity::Even,
                weight: rs.zero_weight(),
                matrix: cartan_vector(layout, a),
            });
        }
        for r in rs.pos_odd() {
            push_root(&mut elements, -&r.weight, Parity::Odd);
        }
        for r in rs.pos_odd() {
            push_root(&mut elements, r.weight.clone(), Parity::Odd);
        }

        let cartans: Vec<(i32, SuperMatrix)> = rs
            .indices()
            .map(|a| (a, cartan_vector(layout, a)))
            .collect();
        for el in &elements {
            let name = el.label.to_string();
            if !is_member(&el.matrix) || el.matrix.parity() != Some(el.parity) {
                return Err(ChevalleyError::NotMember(name));
            }
            for (a, h) in &cartans {
                let lhs = h.bracket(&el.matrix)?;
                let rhs = el.matrix.scale(QuadInt::int(el.weight.get(*a)));
                if lhs != rhs {
                    return Err(ChevalleyError::NotWeightVector(name));
                }
            }
        }

        let pivots = elements
            .iter()
            .map(|el| {
                el.matrix
                    .flat()
                    .iter()
                    .enumerate()
                    .find(|(_, v)| !v.is_zero())
                    .map(|(k, &v)| (k, v))
                    .expect("basis matrices are nonzero")
            })
            .collect();
        let lookup = elements
            .iter()
            .enumerate()
            .map(|(k, el)| (el.label.clone(), k))
            .collect();
        Ok(ChevalleyBasis {
            rs: rs.clone(),
            layout,
            elements,
            lookup,
            pivots,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, label: &BasisLabel) -> Option<usize> {
        self.lookup.get(label).copied()
    }

    pub fn root_index(&self, w: &Weight) -> Option<usize> {
        self.index_of(&BasisLabel::Root(w.clone()))
    }

    pub fn cartan_index(&self, a: i32) -> Option<usize> {
        self.index_of(&BasisLabel::Cartan(a))
    }

    /// Integer coordinates of `x` in the basis.
    ///
    /// Root vectors have pairwise disjoint supports and every Cartan element
    /// owns a diagonal entry no other basis vector touches, so each
    /// coefficient is read at that element's first nonzero entry.
    pub fn expand(&self, x: &SuperMatrix) -> Result<Vec<(usize, i64)>, ExpandError> {
        let mut residual = x.clone();
        let mut out = Vec::new();
        for (k, &(pos, pivot)) in self.pivots.iter().enumerate() {
            let value = x.flat()[pos];
            if value.is_zero() {
                continue;
            }
            let c = value
                .div_unit_or_sqrt2(pivot)
                .ok_or(ExpandError::NonIntegral)?;
            residual = &residual - &self.elements[k].matrix.scale(QuadInt::int(c));
            out.push((k, c));
        }
        if residual.is_zero() {
            Ok(out)
        } else {
            Err(ExpandError::NotInSpan)
        }
    }

    /// Coordinates of a matrix over `F_p[sqrt 2]`, or `None` when it leaves
    /// the span.
    pub fn expand_mod(&self, ring: &Fp2Ring, x: &[Fp2]) -> Option<Vec<Fp2>> {
        let mut residual = x.to_vec();
        let mut coeffs = vec![ring.zero(); self.len()];
        for (k, &(pos, pivot)) in self.pivots.iter().enumerate() {
            let value = x[pos];
            if value == ring.zero() {
                continue;
            }
            let c = ring.mul(value, ring.inv(ring.reduce(pivot))?);
            for (r, &entry) in residual.iter_mut().zip(self.elements[k].matrix.flat()) {
                *r = ring.sub(*r, ring.mul(c, ring.reduce(entry)));
            }
            coeffs[k] = c;
        }
        residual.iter().all(|&r| r == ring.zero()).then_some(coeffs)
    }

    pub fn bracket_table(&self) -> Result<BracketTable, ChevalleyError> {
        let rows: Result<Vec<BracketRowEntries>, ChevalleyError> = (0..self.len())
            .into_par_iter()
            .map(|i| {
                (0..self.len())
                    .map(|j| {
                        let a = &self.elements[i];
                        let b = &self.elements[j];
                        let m = a.matrix.bracket(&b.matrix)?;
                        self.expand(&m).map_err(|e| match e {
                            ExpandError::NonIntegral => ChevalleyError::NonIntegralConstant {
                                lhs: a.label.to_string(),
                                rhs: b.label.to_string(),
                            },
                            ExpandError::NotInSpan => {
                                ChevalleyError::NotInSpan(format!("[{}, {}]", a.label, b.label))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(BracketTable {
            labels: self.elements.iter().map(|e| e.label.clone()).collect(),
            parities: self.elements.iter().map(|e| e.parity).collect(),
            entries: rows?,
        })
    }
}

/// Sparse `(k, c_ijk)` lists for one `i`, indexed by `j`.
type BracketRowEntries = Vec<Vec<(usize, i64)>>;

/// `[B_i, B_j] = sum_k c_ijk B_k` with integer `c_ijk`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    labels: Vec<BasisLabel>,
    parities: Vec<Parity>,
    entries: Vec<BracketRowEntries>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BracketRow {
    pub lhs: String,
    pub rhs: String,
    pub result: Vec<(String, i64)>,
}

impl BracketTable {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    /// Sparse coefficient list of `[B_i, B_j]`.
    pub fn get(&self, i: usize, j: usize) -> &[(usize, i64)] {
        &self.entries[i][j]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> i64 {
        self.entries[i][j]
            .iter()
            .find(|(idx, _)| *idx == k)
            .map_or(0, |&(_, c)| c)
    }

    fn sign(&self, i: usize, j: usize) -> i64 {
        if self.parities[i].is_odd() && self.parities[j].is_odd() {
            -1
        } else {
            1
        }
    }

    /// `[B_i, x]` for a dense coefficient vector `x`.
    pub fn bracket_left(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.len()];
        for (k, &c) in x.iter().enumerate() {
            if c != 0 {
                for &(l, d) in &self.entries[i][k] {
                    out[l] += c * d;
                }
            }
        }
        out
    }

    /// `[x, B_j]` for a dense coefficient vector `x`.
    pub fn bracket_right(&self, x: &[i64], j: usize) -> Vec<i64> {
        let mut out = vec![0; self.len()];
        for (k, &c) in x.iter().enumerate() {
            if c != 0 {
                for &(l, d) in &self.entries[k][j] {
                    out[l] += c * d;
                }
            }
        }
        out
    }

    fn dense(&self, sparse: &[(usize, i64)]) -> Vec<i64> {
        let mut out = vec![0; self.len()];
        for &(k, c) in sparse {
            out[k] += c;
        }
        out
    }

    pub fn rows(&self) -> Vec<BracketRow> {
        let mut out = Vec::with_capacity(self.len() * self.len());
        for i in 0..self.len() {
            for j in 0..self.len() {
                out.push(BracketRow {
                    lhs: self.labels[i].to_string(),
                    rhs: self.labels[j].to_string(),
                    result: self.entries[i][j]
                        .iter()
                        .map(|&(k, c)| (self.labels[k].to_string(), c))
                        .collect(),
                });
            }
        }
        out
    }

    /// `[A, B] = -(-1)^{|A||B|} [B, A]` on all basis pairs.
    pub fn check_antisymmetry(&self) -> CheckReport {
        let mut report = CheckReport::default();
        for i in 0..self.len() {
            for j in 0..self.len() {
                report.checked += 1;
                let ab = self.dense(&self.entries[i][j]);
                let ba = self.dense(&self.entries[j][i]);
                let s = self.sign(i, j);
                if ab.iter().zip(&ba).any(|(x, y)| *x != -s * y) {
                    report
                        .violations
                        .push(format!("[{}, {}]", self.labels[i], self.labels[j]));
                }
            }
        }
        report
    }

    /// `[A, [B, C]] = [[A, B], C] + (-1)^{|A||B|} [B, [A, C]]` on all basis
    /// triples.
    pub fn check_jacobi(&self) -> CheckReport {
        let d = self.len();
        let partial: Vec<CheckReport> = (0..d)
            .into_par_iter()
            .map(|a| {
                let mut report = CheckReport::default();
                for b in 0..d {
                    let ab = self.dense(&self.entries[a][b]);
                    let s = self.sign(a, b);
                    for c in 0..d {
                        report.checked += 1;
                        let bc = self.dense(&self.entries[b][c]);
                        let ac = self.dense(&self.entries[a][c]);
                        let lhs = self.bracket_left(a, &bc);
                        let first = self.bracket_right(&ab, c);
                        let second = self.bracket_left(b, &ac);
                        let ok = (0..d).all(|k| lhs[k] == first[k] + s * second[k]);
                        if !ok {
                            report.violations.push(format!(
                                "({}, {}, {})",
                                self.labels[a], self.labels[b], self.labels[c]
                            ));
                        }
                    }
                }
                report
            })
            .collect();
        CheckReport::merge_all(partial)
    }
}

/// A pair of roots breaking the `+-(r + 1)` law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyViolation {
    pub alpha: Weight,
    pub beta: Weight,
    /// Coefficient of `X_{alpha + beta}`; zero when `alpha + beta` is not a root.
    pub coefficient: i64,
    /// `r + 1`, or zero when the bracket should vanish.
    pub expected: i64,
    /// The bracket has components other than `X_{alpha + beta}`.
    pub stray_terms: bool,
}

impl fmt::Display for PropertyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.expected == 0 {
            write!(f, "[X({}), X({})] should vanish", self.alpha, self.beta)
        } else {
            write!(
                f,
                "[X({}), X({})] = {} X({}), expected +-{}",
                self.alpha,
                self.beta,
                self.coefficient,
                &self.alpha + &self.beta,
                self.expected
            )
        }
    }
}

/// Every ordered pair of roots with `alpha + beta != 0`, with the pairs
/// where `|c| != r + 1` (or a forbidden bracket is nonzero).
pub fn chevalley_property_violations(
    basis: &ChevalleyBasis,
    table: &BracketTable,
) -> (u64, Vec<PropertyViolation>) {
    let rs = basis.root_system();
    let roots = rs.all_roots();
    let partial: Vec<(u64, Vec<PropertyViolation>)> = roots
        .par_iter()
        .map(|alpha| {
            let mut checked = 0;
            let mut found = Vec::new();
            let i = basis.root_index(&alpha.weight).expect("root in basis");
            for beta in &roots {
                let j = basis.root_index(&beta.weight).expect("root in basis");
                let sum = &alpha.weight + &beta.weight;
                if sum.is_zero() {
                    continue;
                }
                checked += 1;
                let result = table.get(i, j);
                let violation = match basis.root_index(&sum) {
                    Some(k) => {
                        let (r, _) = rs.root_string(&alpha.weight, &beta.weight);
                        let c = table.coefficient(i, j, k);
                        let stray = result.iter().any(|&(idx, _)| idx != k);
                        (c.unsigned_abs() as usize != r + 1 || stray).then(|| PropertyViolation {
                            alpha: alpha.weight.clone(),
                            beta: beta.weight.clone(),
                            coefficient: c,
                            expected: r as i64 + 1,
                            stray_terms: stray,
                        })
                    }
                    None => (!result.is_empty()).then(|| PropertyViolation {
                        alpha: alpha.weight.clone(),
                        beta: beta.weight.clone(),
                        coefficient: 0,
                        expected: 0,
                        stray_terms: true,
                    }),
                };
                found.extend(violation);
            }
            (checked, found)
        })
        .collect();
    partial
        .into_iter()
        .fold((0, Vec::new()), |(n, mut v), (m, w)| {
            v.extend(w);
            (n + m, v)
        })
}

/// `|c| = r + 1` whenever `alpha + beta` is a root, and `[X_alpha, X_beta] = 0`
/// whenever `alpha + beta` is neither a root nor zero.
pub fn chevalley_property_check(basis: &ChevalleyBasis, table: &BracketTable) -> CheckReport {
    let (checked, violations) = chevalley_property_violations(basis, table);
    CheckReport {
        checked,
        violations: violations.iter().map(ToString::to_string).collect(),
    }
}

fn mat_mul_mod(ring: &Fp2Ring, a: &[Fp2], b: &[Fp2], s: usize) -> Vec<Fp2> {
    let mut out = vec![ring.zero(); s * s];
    for i in 0..s {
        for k in 0..s {
            let x = a[i * s + k];
            if x == ring.zero() {
                continue;
            }
            for j in 0..s {
                let y = b[k * s + j];
                if y != ring.zero() {
                    out[i * s + j] = ring.add(out[i * s + j], ring.mul(x, y));
                }
            }
        }
    }
    out
}

fn mat_pow_mod(ring: &Fp2Ring, a: &[Fp2], s: usize, mut e: u64) -> Vec<Fp2> {
    let mut result = vec![ring.zero(); s * s];
    for i in 0..s {
        result[i * s + i] = ring.one();
    }
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul_mod(ring, &result, &base, s);
        }
        base = mat_mul_mod(ring, &base, &base, s);
        e >>= 1;
    }
    result
}

/// For every even basis element `X`: `X^[p]` is the `p`-th matrix power
/// reduced mod `p`, expanded in the basis, and `ad(X^[p]) = (ad X)^p` is
/// compared on the whole basis over `F_p[sqrt 2]`.
pub fn restricted_check(
    basis: &ChevalleyBasis,
    table: &BracketTable,
    p: u64,
) -> Result<CheckReport, ChevalleyError> {
    if !is_odd_prime(p) {
        return Err(ChevalleyError::BadPrime(p));
    }
    let ring = Fp2Ring::new(p);
    let s = basis.layout().size();
    let d = basis.len();
    let ad_mod = |x: usize| -> Vec<Fp2> {
        // column j holds [B_x, B_j]
        let mut m = vec![ring.zero(); d * d];
        for j in 0..d {
            for &(k, c) in table.get(x, j) {
                m[k * d + j] = ring.int(c);
            }
        }
        m
    };
    let ads: Vec<Vec<Fp2>> = (0..d).map(ad_mod).collect();

    let evens: Vec<usize> = (0..d)
        .filter(|&k| basis.elements()[k].parity == Parity::Even)
        .collect();
    let partial: Result<Vec<CheckReport>, ChevalleyError> = evens
        .par_iter()
        .map(|&x| {
            let el = &basis.elements()[x];
            let reduced: Vec<Fp2> = el.matrix.flat().iter().map(|&q| ring.reduce(q)).collect();
            let power = mat_pow_mod(&ring, &reduced, s, p);
            let coeffs = basis
                .expand_mod(&ring, &power)
                .ok_or_else(|| ChevalleyError::NotInSpan(format!("{}^{p}", el.label)))?;
            let mut lhs = vec![ring.zero(); d * d];
            for (k, c) in coeffs.iter().enumerate() {
                if *c == ring.zero() {
                    continue;
                }
                for (slot, &v) in lhs.iter_mut().zip(&ads[k]) {
                    *slot = ring.add(*slot, ring.mul(*c, v));
                }
            }
            let rhs = mat_pow_mod(&ring, &ads[x], d, p);
            let mut report = CheckReport {
                checked: 1,
                violations: Vec::new(),
            };
            if lhs != rhs {
                report
                    .violations
                    .push(format!("ad({}^[{p}]) != (ad {})^{p}", el.label, el.label));
            }
            Ok(report)
        })
        .collect();
    Ok(CheckReport::merge_all(partial?))
}
