//! Odd reflections between Borel subalgebras and the highest-weight walks
//! built from them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::{Partition, PartitionError};
use crate::rootdata::{Parity, Root, RootError, RootSystem, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("{0} is not an odd root")]
    NotOddRoot(Weight),
    #[error("{0} is not isotropic; odd reflections need 2 alpha outside the root system")]
    NotIsotropic(Weight),
    #[error("{0} is not simple in the current positive system")]
    NotSimple(Weight),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("need N >= n >= 1 and M >= 1, got N = {big_n}, n = {n}, M = {big_m}")]
    BadRanks {
        big_n: usize,
        n: usize,
        big_m: usize,
    },
    #[error("partition {mu} has more than {big_n} parts")]
    TooLong { mu: Partition, big_n: usize },
    #[error("Mullineux image {image} of the tail needs M >= {need}, got {big_m}")]
    MTooSmall {
        image: Partition,
        need: usize,
        big_m: usize,
    },
    #[error("z-walk needs a weight over I(1|m), got {neg} negative coordinates")]
    NotRankOne { neg: usize },
    #[error("p must be 0 or an odd prime, got {0}")]
    BadPrime(u64),
}

/// One step of a walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionOutcome {
    pub weight: Weight,
    pub moved: bool,
    pub root: Root,
}

fn check_prime(p: u64) -> Result<(), WalkError> {
    if p == 0 || crate::is_odd_prime(p) {
        Ok(())
    } else {
        Err(WalkError::BadPrime(p))
    }
}

fn congruent_zero(x: i64, p: u64) -> bool {
    if p == 0 {
        x == 0
    } else {
        x.rem_euclid(p as i64) == 0
    }
}

fn isotropic_odd(rs: &RootSystem, alpha: &Weight) -> Result<Root, WalkError> {
    rs.check_shape(alpha)?;
    match rs.root_parity(alpha) {
        Some(Parity::Odd) => {}
        _ => return Err(WalkError::NotOddRoot(alpha.clone())),
    }
    if rs.bilinear(alpha, alpha) != 0 || rs.is_root(&(2 * alpha)) {
        return Err(WalkError::NotIsotropic(alpha.clone()));
    }
    Ok(Root {
        weight: alpha.clone(),
        parity: Parity::Odd,
    })
}

/// The highest weight after the odd reflection at `alpha`: unchanged when
/// `(lam, alpha) = 0 mod p` (exactly zero for `p = 0`), otherwise
/// `lam - alpha`.
pub fn odd_reflect(
    rs: &RootSystem,
    lam: &Weight,
    alpha: &Weight,
    p: u64,
) -> Result<ReflectionOutcome, WalkError> {
    check_prime(p)?;
    rs.check_shape(lam)?;
    let root = isotropic_odd(rs, alpha)?;
    let moved = !congruent_zero(rs.bilinear(lam, alpha), p);
    let weight = if moved { lam - alpha } else { lam.clone() };
    Ok(ReflectionOutcome {
        weight,
        moved,
        root,
    })
}

/// A positive system reached from the standard one by odd reflections,
/// stored as the set of standard positive odd roots that are now negative.
#[derive(Debug, Clone)]
pub struct PositiveSystem {
    ambient: RootSystem,
    flipped: BTreeSet<Weight>,
}

impl PositiveSystem {
    pub fn standard(rs: &RootSystem) -> Self {
        PositiveSystem {
            ambient: rs.clone(),
            flipped: BTreeSet::new(),
        }
    }

    pub fn is_standard(&self) -> bool {
        self.flipped.is_empty()
    }

    pub fn ambient(&self) -> &RootSystem {
        &self.ambient
    }

    pub fn flipped(&self) -> &BTreeSet<Weight> {
        &self.flipped
    }

    pub fn is_positive(&self, w: &Weight) -> bool {
        if !self.ambient.is_root(w) {
            return false;
        }
        if self.ambient.is_positive(w) {
            !self.flipped.contains(w)
        } else {
            self.flipped.contains(&-w)
        }
    }

    pub fn positive_roots(&self) -> Vec<Weight> {
        self.ambient
            .all_roots()
            .into_iter()
            .map(|r| r.weight)
            .filter(|w| self.is_positive(w))
            .collect()
    }

    /// `alpha` is positive and not a sum of two positive roots.
    pub fn is_simple(&self, alpha: &Weight) -> bool {
        if !self.is_positive(alpha) {
            return false;
        }
        let positives = self.positive_roots();
        !positives
            .iter()
            .any(|beta| beta != alpha && self.is_positive(&(alpha - beta)))
    }

    /// Replaces `alpha` by `-alpha` among the positive roots.
    pub fn flip(&mut self, alpha: &Weight) -> Result<(), WalkError> {
        isotropic_odd(&self.ambient, alpha)?;
        if !self.is_simple(alpha) {
            return Err(WalkError::NotSimple(alpha.clone()));
        }
        if self.ambient.is_positive(alpha) {
            self.flipped.insert(alpha.clone());
        } else {
            self.flipped.remove(&-alpha);
        }
        Ok(())
    }
}

/// `delta_i - delta_j` for `j = 1..M`, and inside each block `i = -1`
/// down to `n - N`.
pub fn w_sequence(big_n: usize, n: usize, big_m: usize) -> Result<Vec<Root>, WalkError> {
    if n == 0 || big_n < n || big_m == 0 {
        return Err(WalkError::BadRanks { big_n, n, big_m });
    }
    let mut out = Vec::with_capacity(big_m * (big_n - n));
    for j in 1..=big_m as i32 {
        for i in (n as i32 - big_n as i32..=-1).rev() {
            let mut w = Weight::zero(big_n, big_m);
            w.set(i, 1);
            w.set(j, -1);
            out.push(Root {
                weight: w,
                parity: Parity::Odd,
            });
        }
    }
    Ok(out)
}

/// `delta_{-1} - delta_j` for `j = 1..m`.
pub fn z_sequence(m: usize) -> Vec<Root> {
    (1..=m as i32)
        .map(|j| {
            let mut w = Weight::zero(1, m);
            w.set(-1, 1);
            w.set(j, -1);
            Root {
                weight: w,
                parity: Parity::Odd,
            }
        })
        .collect()
}

/// Folds [`odd_reflect`] over `seq`, flipping each root in a
/// [`PositiveSystem`] that starts standard. Every step must reflect at a
/// simple root of the current system.
pub fn walk(
    rs: &RootSystem,
    lam: &Weight,
    seq: &[Root],
    p: u64,
) -> Result<(Weight, Vec<ReflectionOutcome>), WalkError> {
    let mut system = PositiveSystem::standard(rs);
    walk_from(&mut system, lam, seq, p)
}

/// [`walk`] starting from an arbitrary positive system, which is updated.
pub fn walk_from(
    system: &mut PositiveSystem,
    lam: &Weight,
    seq: &[Root],
    p: u64,
) -> Result<(Weight, Vec<ReflectionOutcome>), WalkError> {
    check_prime(p)?;
    let mut current = lam.clone();
    let mut trace = Vec::with_capacity(seq.len());
    for root in seq {
        let step = odd_reflect(system.ambient(), &current, &root.weight, p)?;
        system.flip(&root.weight)?;
        current = step.weight.clone();
        trace.push(step);
    }
    Ok((current, trace))
}

/// `sum mu_i delta_i` over the negative indices of `I(N|M)`, with
/// `mu_{-N}` the largest part.
pub fn partition_weight(mu: &Partition, big_n: usize, big_m: usize) -> Result<Weight, WalkError> {
    if mu.len() > big_n {
        return Err(WalkError::TooLong {
            mu: mu.clone(),
            big_n,
        });
    }
    let mut neg: Vec<i64> = mu.parts().iter().map(|&x| x as i64).collect();
    neg.resize(big_n, 0);
    Ok(Weight::new(neg, vec![0; big_m]))
}

/// `(mu_{n-N}, ..., mu_{-1})`, zeros included.
pub fn tail(mu: &Partition, big_n: usize, n: usize) -> Vec<usize> {
    (n..big_n).map(|k| mu.row_len(k + 1)).collect()
}

/// The weight reached by the `w`-walk, in closed form: the head of `mu`
/// is kept and the Mullineux image of the tail moves to the positive
/// indices.
pub fn mu_w_closed_form(
    mu: &Partition,
    big_n: usize,
    n: usize,
    big_m: usize,
    p: u32,
) -> Result<Weight, WalkError> {
    if n == 0 || big_n < n || big_m == 0 {
        return Err(WalkError::BadRanks { big_n, n, big_m });
    }
    check_prime(p as u64)?;
    let mut weight = partition_weight(mu, big_n, big_m)?;
    let tail_part = Partition::new(tail(mu, big_n, n))?;
    let image = tail_part.mullineux(p)?;
    if image.len() > big_m {
        return Err(WalkError::MTooSmall {
            need: image.len(),
            image,
            big_m,
        });
    }
    for i in n as i32 - big_n as i32..=-1 {
        weight.set(i, 0);
    }
    for (k, &x) in image.parts().iter().enumerate() {
        weight.set(k as i32 + 1, x as i64);
    }
    Ok(weight)
}

/// The bits `(x_{n-N}, ..., x_{-1})` of one block of the `w`-walk,
/// computed from `x_{-1}` upward: `x_i = 0` iff
/// `mu_i + x_{i+1} + ... + x_{-1} = 0 mod p`.
pub fn x_recursion(tail: &[usize], p: u32) -> Vec<u8> {
    let mut bits = vec![0u8; tail.len()];
    let mut carried = 0usize;
    for k in (0..tail.len()).rev() {
        let value = tail[k] + carried;
        let bit = u8::from(!congruent_zero(value as i64, p as u64));
        bits[k] = bit;
        carried += bit as usize;
    }
    bits
}

/// Iterates [`x_recursion`] block by block: each block subtracts its bits
/// from the tail. Returns the bits of every block and the tails after them.
pub fn x_blocks(tail: &[usize], p: u32, blocks: usize) -> Vec<(Vec<u8>, Vec<usize>)> {
    let mut current = tail.to_vec();
    let mut out = Vec::with_capacity(blocks);
    for _ in 0..blocks {
        let bits = x_recursion(&current, p);
        for (c, &b) in current.iter_mut().zip(&bits) {
            *c -= b as usize;
        }
        out.push((bits, current.clone()));
    }
    out
}

/// `lam^z`: the highest weight after the odd reflections at
/// `delta_{-1} - delta_1, ..., delta_{-1} - delta_m` in `spo(2|2m+1)`.
pub fn z_walk(lam: &Weight, p: u64) -> Result<Weight, WalkError> {
    if lam.neg_rank() != 1 {
        return Err(WalkError::NotRankOne {
            neg: lam.neg_rank(),
        });
    }
    let m = lam.pos_rank();
    let rs = RootSystem::new(1, 2 * m + 1)?;
    let (out, _) = walk(&rs, lam, &z_sequence(m), p)?;
    Ok(out)
}

/// The four statements attached to the `z`-walk for one weight over
/// `I(1|m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub lam: Weight,
    pub lam_z: Weight,
    pub z_minus_one_nonnegative: bool,
    pub j_of_z_plus_is_lam_plus: bool,
    pub j_drop_matches: bool,
    pub j_bound: bool,
}

impl InequalityReport {
    pub fn holds(&self) -> bool {
        self.z_minus_one_nonnegative
            && self.j_of_z_plus_is_lam_plus
            && self.j_drop_matches
            && self.j_bound
    }
}

fn positive_partition(w: &Weight) -> Option<Partition> {
    let parts: Option<Vec<usize>> = w.pos.iter().map(|&x| usize::try_from(x).ok()).collect();
    Partition::new(parts?).ok()
}

/// Evaluates the `z`-walk statements for `lam` at an odd prime `p`.
pub fn inequality_report(lam: &Weight, p: u32) -> Result<InequalityReport, WalkError> {
    if !crate::is_odd_prime(p as u64) {
        return Err(WalkError::BadPrime(p as u64));
    }
    let lam_z = z_walk(lam, p as u64)?;
    let z_minus = lam_z.get(-1);
    let lam_minus = lam.get(-1);
    let lam_plus = positive_partition(lam);
    let z_plus = positive_partition(&lam_z);
    let (big_j_ok, drop_ok) = match (&z_plus, &lam_plus) {
        (Some(zp), Some(lp)) => {
            let jz = zp.big_j(p)?;
            let drop = zp.little_j(p)? as i64;
            (&jz == lp, drop == lam_minus - z_minus)
        }
        _ => (false, false),
    };
    let bound = match &lam_plus {
        Some(lp) => (lp.little_j(p)? as i64) <= lam_minus,
        None => false,
    };
    Ok(InequalityReport {
        lam: lam.clone(),
        lam_z,
        z_minus_one_nonnegative: z_minus >= 0,
        j_of_z_plus_is_lam_plus: big_j_ok,
        j_drop_matches: drop_ok,
        j_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(neg: &[i64], pos: &[i64]) -> Weight {
        Weight::new(neg.to_vec(), pos.to_vec())
    }

    fn part(xs: &[usize]) -> Partition {
        Partition::new(xs.to_vec()).unwrap()
    }

    fn b11() -> RootSystem {
        RootSystem::new(1, 3).unwrap()
    }

    #[test]
    fn reflect_examples() {
        let rs = b11();
        let alpha = w(&[1], &[-1]);
        let out = odd_reflect(&rs, &w(&[2], &[1]), &alpha, 3).unwrap();
        assert!(!out.moved);
        assert_eq!(out.weight, w(&[2], &[1]));
        let out = odd_reflect(&rs, &w(&[1], &[0]), &alpha, 3).unwrap();
        assert!(out.moved);
        assert_eq!(out.weight, w(&[0], &[1]));
        for p in [0, 3, 5] {
            for root in rs
                .all_roots()
                .iter()
                .filter(|r| rs.bilinear(&r.weight, &r.weight) == 0 && r.is_odd())
            {
                let out = odd_reflect(&rs, &w(&[0], &[0]), &root.weight, p).unwrap();
                assert!(!out.moved);
            }
        }
    }

    #[test]
    fn char_zero_mode() {
        let rs = b11();
        let alpha = w(&[1], &[-1]);
        let out = odd_reflect(&rs, &w(&[2], &[1]), &alpha, 0).unwrap();
        assert!(out.moved);
        assert_eq!(out.weight, w(&[1], &[2]));
    }

    #[test]
    fn rejects_non_isotropic() {
        let rs = b11();
        assert_eq!(
            odd_reflect(&rs, &w(&[0], &[0]), &w(&[1], &[0]), 3),
            Err(WalkError::NotIsotropic(w(&[1], &[0])))
        );
        assert_eq!(
            odd_reflect(&rs, &w(&[0], &[0]), &w(&[0], &[1]), 3),
            Err(WalkError::NotOddRoot(w(&[0], &[1])))
        );
        assert_eq!(
            odd_reflect(&rs, &w(&[0], &[0]), &w(&[1], &[-1]), 2),
            Err(WalkError::BadPrime(2))
        );
    }

    #[test]
    fn w_sequence_shape() {
        assert!(w_sequence(2, 2, 3).unwrap().is_empty());
        let seq = w_sequence(2, 1, 2).unwrap();
        let weights: Vec<Weight> = seq.into_iter().map(|r| r.weight).collect();
        assert_eq!(weights, vec![w(&[0, 1], &[-1, 0]), w(&[0, 1], &[0, -1])]);
        let seq = w_sequence(4, 1, 2).unwrap();
        assert_eq!(seq.len(), 6);
        assert_eq!(seq[0].weight, w(&[0, 0, 0, 1], &[-1, 0]));
        assert_eq!(seq[2].weight, w(&[0, 1, 0, 0], &[-1, 0]));
        assert!(w_sequence(1, 2, 1).is_err());
    }

    #[test]
    fn sequences_are_valid_flips() {
        for (big_n, n, big_m) in [(3, 1, 2), (4, 2, 3), (5, 1, 4)] {
            let rs = RootSystem::new(big_n, 2 * big_m + 1).unwrap();
            let mut sys = PositiveSystem::standard(&rs);
            for root in w_sequence(big_n, n, big_m).unwrap() {
                sys.flip(&root.weight).unwrap();
            }
            assert_eq!(sys.flipped().len(), big_m * (big_n - n));
        }
        for m in 1..=4 {
            let rs = RootSystem::new(1, 2 * m + 1).unwrap();
            let mut sys = PositiveSystem::standard(&rs);
            for root in z_sequence(m) {
                sys.flip(&root.weight).unwrap();
            }
        }
    }

    #[test]
    fn non_simple_flip_rejected() {
        let rs = RootSystem::new(1, 5).unwrap();
        let mut sys = PositiveSystem::standard(&rs);
        let not_simple = w(&[1], &[0, -1]);
        assert_eq!(sys.flip(&not_simple), Err(WalkError::NotSimple(not_simple)));
    }

    #[test]
    fn flips_are_involutions() {
        let rs = RootSystem::new(2, 5).unwrap();
        let mut sys = PositiveSystem::standard(&rs);
        let alpha = w(&[0, 1], &[-1, 0]);
        sys.flip(&alpha).unwrap();
        assert!(sys.is_positive(&-&alpha));
        sys.flip(&-&alpha).unwrap();
        assert!(sys.is_standard());
    }

    #[test]
    fn even_positives_never_change() {
        let rs = RootSystem::new(3, 5).unwrap();
        let mut sys = PositiveSystem::standard(&rs);
        for root in w_sequence(3, 1, 2).unwrap() {
            sys.flip(&root.weight).unwrap();
        }
        for r in rs.pos_even() {
            assert!(sys.is_positive(&r.weight));
        }
    }

    #[test]
    fn reverse_walk_returns() {
        let rs = RootSystem::new(3, 5).unwrap();
        let seq = w_sequence(3, 1, 2).unwrap();
        let lam = partition_weight(&part(&[4, 3, 3]), 3, 2).unwrap();
        let mut sys = PositiveSystem::standard(&rs);
        let (end, trace) = walk_from(&mut sys, &lam, &seq, 3).unwrap();
        let back: Vec<Root> = seq
            .iter()
            .rev()
            .map(|r| Root {
                weight: -&r.weight,
                parity: Parity::Odd,
            })
            .collect();
        let (start, _) = walk_from(&mut sys, &end, &back, 3).unwrap();
        assert!(sys.is_standard());
        if trace.iter().all(|s| !s.moved) {
            assert_eq!(start, lam);
        }
        let (same, trace) = walk(&rs, &lam, &[], 3).unwrap();
        assert_eq!(same, lam);
        assert!(trace.is_empty());
    }

    #[test]
    fn closed_form_examples() {
        let mu = part(&[3, 2, 1]);
        assert!(matches!(
            mu_w_closed_form(&mu, 3, 1, 2, 3),
            Err(WalkError::MTooSmall { need: 3, .. })
        ));
        let out = mu_w_closed_form(&mu, 3, 1, 3, 3).unwrap();
        assert_eq!(out, w(&[3, 0, 0], &[1, 1, 1]));
        let mu = part(&[5, 2]);
        assert_eq!(
            mu_w_closed_form(&mu, 2, 2, 2, 5).unwrap(),
            w(&[5, 2], &[0, 0])
        );
        assert!(matches!(
            mu_w_closed_form(&part(&[3, 3]), 2, 1, 3, 3),
            Err(WalkError::Partition(PartitionError::NotRestricted { .. }))
        ));
    }

    #[test]
    fn walk_matches_closed_form_example() {
        let mu = part(&[3, 2, 1]);
        let rs = RootSystem::new(3, 7).unwrap();
        let lam = partition_weight(&mu, 3, 3).unwrap();
        let (end, _) = walk(&rs, &lam, &w_sequence(3, 1, 3).unwrap(), 3).unwrap();
        assert_eq!(end, mu_w_closed_form(&mu, 3, 1, 3, 3).unwrap());
    }

    #[test]
    fn x_recursion_examples() {
        assert!(x_recursion(&[], 3).is_empty());
        assert_eq!(x_recursion(&[2, 1], 3), vec![0, 1]);
        assert_eq!(x_recursion(&[6, 3, 3], 3), vec![0, 0, 0]);
        assert_eq!(part(&[2, 1]).big_j(3).unwrap(), part(&[2]));
    }

    #[test]
    fn z_walk_examples() {
        assert_eq!(z_walk(&w(&[0], &[0, 0]), 3).unwrap(), w(&[0], &[0, 0]));
        assert_eq!(z_walk(&w(&[1], &[0]), 3).unwrap(), w(&[0], &[1]));
        assert!(matches!(
            z_walk(&w(&[1, 1], &[0]), 3),
            Err(WalkError::NotRankOne { neg: 2 })
        ));
    }

    #[test]
    fn inequality_counterexample_is_frozen() {
        // lam = 2 d[-1] + d[1], p = 3: (lam, d[-1] - d[1]) = 3 so nothing moves
        let report = inequality_report(&w(&[2], &[1]), 3).unwrap();
        assert_eq!(report.lam_z, w(&[2], &[1]));
        assert!(report.z_minus_one_nonnegative);
        assert!(report.j_bound);
        assert!(!report.j_of_z_plus_is_lam_plus);
        assert!(!report.j_drop_matches);
    }

    #[test]
    fn inequality_holds_off_the_congruence() {
        let report = inequality_report(&w(&[3], &[1]), 3).unwrap();
        assert_eq!(report.lam_z, w(&[2], &[2]));
        assert!(report.holds(), "{report:?}");
    }

    fn restricted_partitions(p: usize, max_size: usize, max_len: usize) -> Vec<Partition> {
        (0..=max_size)
            .flat_map(crate::partitions::partitions_of)
            .filter(|q| q.len() <= max_len && q.is_restricted(p as u32))
            .collect()
    }

    #[test]
    fn walk_matches_closed_form_small_box() {
        for p in [3u32, 5] {
            for big_n in 2..=4 {
                for n in 1..big_n {
                    for t in restricted_partitions(p as usize, 6, big_n - n) {
                        let head = t.parts().first().copied().unwrap_or(0) + 1;
                        let mut parts = vec![head; n];
                        parts.extend_from_slice(t.parts());
                        let mu = Partition::new(parts).unwrap();
                        for big_m in 1..=3 {
                            let rs = RootSystem::new(big_n, 2 * big_m + 1).unwrap();
                            let lam = partition_weight(&mu, big_n, big_m).unwrap();
                            let seq = w_sequence(big_n, n, big_m).unwrap();
                            match mu_w_closed_form(&mu, big_n, n, big_m, p) {
                                Ok(expect) => {
                                    let (end, _) = walk(&rs, &lam, &seq, p as u64).unwrap();
                                    assert_eq!(
                                        end, expect,
                                        "mu {mu} N {big_n} n {n} M {big_m} p {p}"
                                    );
                                }
                                Err(WalkError::MTooSmall { .. }) => {}
                                Err(e) => panic!("{e}"),
                            }
                        }
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn single_step_dichotomy(a in -6i64..6, b in -6i64..6, c in -6i64..6, pi in 0usize..3,
                                 ri in 0usize..64) {
            let rs = RootSystem::new(1, 5).unwrap();
            let lam = w(&[a], &[b, c]);
            let p = [0u64, 3, 5][pi];
            let isotropic: Vec<Root> = rs
                .all_roots()
                .into_iter()
                .filter(|r| r.is_odd() && rs.bilinear(&r.weight, &r.weight) == 0)
                .collect();
            let alpha = &isotropic[ri % isotropic.len()].weight;
            let out = odd_reflect(&rs, &lam, alpha, p).unwrap();
            if out.moved {
                prop_assert_eq!(out.weight, &lam - alpha);
            } else {
                prop_assert_eq!(out.weight, lam);
            }
        }

        #[test]
        fn x_blocks_iterate_big_j(parts in proptest::collection::vec(0usize..5, 0..5), pi in 0usize..2) {
            let p = [3u32, 5][pi];
            let t = Partition::from_unsorted(parts);
            prop_assume!(t.is_restricted(p));
            let width = t.len() + 1;
            let mut padded = t.parts().to_vec();
            padded.resize(width, 0);
            let mut expect = t.clone();
            for (_, after) in x_blocks(&padded, p, 4) {
                expect = expect.big_j(p).unwrap();
                prop_assert_eq!(Partition::new(after).unwrap(), expect.clone());
            }
        }
    }
}
