//! Membership in `X^dag(T)`, box enumeration and Steinberg decompositions.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::Partition;
use crate::rootdata::{Family, RootError, RootSystem, Weight};
use crate::CheckReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Root(#[from] RootError),
    #[error("{0} is not dominant")]
    NotDominant(Weight),
    #[error("Steinberg decompositions need an odd prime, got p = {0}")]
    CharZero(u64),
    #[error("p must be 0 or an odd prime, got {0}")]
    BadPrime(u64),
}

fn check_prime(p: u64) -> Result<(), ClassifyError> {
    if p == 0 || crate::is_odd_prime(p) {
        Ok(())
    } else {
        Err(ClassifyError::BadPrime(p))
    }
}

/// `(lam_1, ..., lam_m)`, with `|lam_m|` in type D; `None` when the
/// coordinates do not form a partition.
pub fn positive_partition(lam: &Weight, rs: &RootSystem) -> Option<Partition> {
    let mut parts = lam.pos.clone();
    if rs.family() == Family::D {
        if let Some(last) = parts.last_mut() {
            *last = last.abs();
        }
    }
    let parts: Option<Vec<usize>> = parts.iter().map(|&x| usize::try_from(x).ok()).collect();
    Partition::new(parts?).ok()
}

/// The quantity bounded by `lam_{-1}`: `j` of the positive partition, or
/// its length when `p = 0`. `None` for `l = 1, 2`, where there is no
/// extra condition, and for weights whose positive block is not a
/// partition.
pub fn j_value(lam: &Weight, rs: &RootSystem, p: u64) -> Option<usize> {
    match rs.family() {
        Family::BZero | Family::C => None,
        Family::B | Family::D => {
            let mu = positive_partition(lam, rs)?;
            mu.little_j_char(p as u32).ok()
        }
    }
}

/// `lam` is dominant and, for `l >= 3`, `j(lam^+) <= lam_{-1}`.
pub fn in_xdag(lam: &Weight, rs: &RootSystem, p: u64) -> bool {
    if check_prime(p).is_err() || !rs.is_dominant(lam) {
        return false;
    }
    match rs.family() {
        Family::BZero | Family::C => true,
        Family::B | Family::D => match j_value(lam, rs, p) {
            Some(j) => (j as i64) <= lam.get(-1),
            None => false,
        },
    }
}

/// One row of `classify` / `enumerate` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyRecord {
    pub weight: Weight,
    #[serde(rename = "in_Xplus")]
    pub in_xplus: bool,
    #[serde(rename = "in_Xdag")]
    pub in_xdag: bool,
    pub j_value: Option<usize>,
}

pub fn classify(lam: &Weight, rs: &RootSystem, p: u64) -> Result<ClassifyRecord, ClassifyError> {
    check_prime(p)?;
    rs.check_shape(lam)?;
    Ok(ClassifyRecord {
        weight: lam.clone(),
        in_xplus: rs.is_dominant(lam),
        in_xdag: in_xdag(lam, rs, p),
        j_value: j_value(lam, rs, p),
    })
}

/// Every dominant weight with all `|lam_i| <= bound`, sorted by
/// coordinates.
pub fn dominant_box(rs: &RootSystem, bound: u32) -> Vec<Weight> {
    let b = bound as i64;
    let (neg, pos) = (rs.neg_rank(), rs.pos_rank());
    let coords = neg + pos;
    if coords == 0 {
        return vec![rs.zero_weight()];
    }
    let mut out: Vec<Weight> = (-b..=b)
        .into_par_iter()
        .flat_map_iter(|first| {
            (1..coords)
                .map(|_| -b..=b)
                .multi_cartesian_product()
                .map(move |rest| {
                    let mut all = Vec::with_capacity(coords);
                    all.push(first);
                    all.extend(rest);
                    all
                })
        })
        .map(|all| Weight::new(all[..neg].to_vec(), all[neg..].to_vec()))
        .filter(|w| rs.is_dominant(w))
        .collect();
    out.sort_by(|a, b| a.coords().cmp(b.coords()));
    out
}

/// All of `X^dag(T)` inside the box `|lam_i| <= bound`, sorted by
/// coordinates.
pub fn enumerate_xdag(rs: &RootSystem, p: u64, bound: u32) -> Result<Vec<Weight>, ClassifyError> {
    check_prime(p)?;
    Ok(dominant_box(rs, bound)
        .into_par_iter()
        .filter(|w| in_xdag(w, rs, p))
        .collect())
}

/// `lam + p (0 | nu)` lies in `X^dag` exactly when `lam` does, for every
/// dominant `lam` in the box and every partition `nu` on the positive
/// indices keeping the shifted weight dominant and inside the box.
pub fn p_shift_check(rs: &RootSystem, p: u64, bound: u32) -> Result<CheckReport, ClassifyError> {
    check_prime(p)?;
    if p == 0 {
        return Ok(CheckReport::default());
    }
    let m = rs.pos_rank();
    let max_part = bound as usize / p as usize;
    let shifts: Vec<Partition> = (0..m)
        .map(|_| 0..=max_part)
        .multi_cartesian_product()
        .filter_map(|parts| Partition::new(parts).ok())
        .filter(|nu| !nu.is_empty())
        .collect();
    let parts: Vec<CheckReport> = dominant_box(rs, bound)
        .par_iter()
        .map(|lam| {
            let mut report = CheckReport::default();
            let base = in_xdag(lam, rs, p);
            for nu in &shifts {
                let mut shifted = lam.clone();
                for (k, &x) in nu.parts().iter().enumerate() {
                    let idx = k as i32 + 1;
                    let cur = shifted.get(idx);
                    // keep the sign of a type-D last coordinate
                    let step = if rs.family() == Family::D && k + 1 == m && cur < 0 {
                        -(p as i64) * x as i64
                    } else {
                        (p as i64) * x as i64
                    };
                    shifted.set(idx, cur + step);
                }
                if shifted.max_abs() > bound as i64 || !rs.is_dominant(&shifted) {
                    continue;
                }
                report.checked += 1;
                if in_xdag(&shifted, rs, p) != base {
                    report
                        .violations
                        .push(format!("{lam} and {shifted} disagree at p = {p}"));
                }
            }
            report
        })
        .collect();
    Ok(CheckReport::merge_all(parts))
}

/// `lam = sum_i p^i layers[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinbergDecomposition {
    pub layers: Vec<Weight>,
    pub prime: u64,
}

impl SteinbergDecomposition {
    pub fn reconstruct(&self) -> Option<Weight> {
        let mut layers = self.layers.iter().rev();
        let mut acc = layers.next()?.clone();
        for layer in layers {
            acc = &(self.prime as i64 * &acc) + layer;
        }
        Some(acc)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SteinbergOutcome {
    Decomposed(SteinbergDecomposition),
    NoDecomposition { layers: Vec<Weight>, reason: String },
}

/// Greedy attempt: each coordinate is split into base-`p` digits of its
/// absolute value, every digit carrying the coordinate's sign. The
/// attempt fails when layer 0 is outside `X_1 ∩ X^dag` or a later layer
/// is outside `X_1`.
pub fn steinberg_decompose(
    lam: &Weight,
    rs: &RootSystem,
    p: u64,
) -> Result<SteinbergOutcome, ClassifyError> {
    check_prime(p)?;
    if p == 0 {
        return Err(ClassifyError::CharZero(p));
    }
    rs.check_shape(lam)?;
    if !rs.is_dominant(lam) {
        return Err(ClassifyError::NotDominant(lam.clone()));
    }
    let pi = p as i64;
    let mut layers = Vec::new();
    let mut rest = lam.clone();
    loop {
        let mut digit = rest.clone();
        for idx in rest.indices() {
            let x = rest.get(idx);
            digit.set(idx, x.signum() * (x.abs() % pi));
        }
        rest = &rest - &digit;
        for idx in rest.clone().indices() {
            rest.set(idx, rest.get(idx) / pi);
        }
        layers.push(digit);
        if rest.is_zero() {
            break;
        }
    }
    let d = SteinbergDecomposition { layers, prime: p };
    match layer_failure(&d, rs) {
        None => Ok(SteinbergOutcome::Decomposed(d)),
        Some(reason) => Ok(SteinbergOutcome::NoDecomposition {
            layers: d.layers,
            reason,
        }),
    }
}

fn layer_failure(d: &SteinbergDecomposition, rs: &RootSystem) -> Option<String> {
    let first = match d.layers.first() {
        Some(first) => first,
        None => return Some("no layers".to_string()),
    };
    if !rs.in_xr(first, d.prime, 1) {
        return Some(format!("layer 0 = {first} is not in X_1"));
    }
    if !in_xdag(first, rs, d.prime) {
        return Some(format!("layer 0 = {first} is not in X^dag"));
    }
    for (i, layer) in d.layers.iter().enumerate().skip(1) {
        if !rs.in_xr(layer, d.prime, 1) {
            return Some(format!("layer {i} = {layer} is not in X_1"));
        }
    }
    None
}

/// Reconstruction, layer 0 in `X_1 ∩ X^dag` and every later layer in
/// `X_1`.
pub fn validate_decomposition(d: &SteinbergDecomposition, lam: &Weight, rs: &RootSystem) -> bool {
    crate::is_odd_prime(d.prime)
        && d.layers.iter().all(|l| rs.check_shape(l).is_ok())
        && d.reconstruct().as_ref() == Some(lam)
        && layer_failure(d, rs).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(neg: &[i64], pos: &[i64]) -> Weight {
        Weight::new(neg.to_vec(), pos.to_vec())
    }

    fn sys(n: usize, ell: usize) -> RootSystem {
        RootSystem::new(n, ell).unwrap()
    }

    #[test]
    fn small_rank_is_dominance() {
        for rs in [sys(2, 1), sys(1, 2), sys(2, 2)] {
            for lam in dominant_box(&rs, 3) {
                for p in [0, 3, 5] {
                    assert!(in_xdag(&lam, &rs, p));
                }
            }
        }
    }

    #[test]
    fn b11_examples() {
        let rs = sys(1, 3);
        assert!(!in_xdag(&w(&[0], &[1]), &rs, 3));
        assert!(in_xdag(&w(&[0], &[3]), &rs, 3));
        assert!(!in_xdag(&w(&[0], &[3]), &rs, 0));
        assert!(in_xdag(&w(&[1], &[3]), &rs, 0));
        assert_eq!(j_value(&w(&[0], &[3]), &rs, 3), Some(0));
        assert_eq!(j_value(&w(&[0], &[3]), &rs, 0), Some(1));
    }

    #[test]
    fn type_d_uses_absolute_value() {
        let rs = sys(1, 4);
        assert!(rs.is_dominant(&w(&[1], &[1, -1])));
        assert_eq!(
            j_value(&w(&[1], &[1, -1]), &rs, 3),
            j_value(&w(&[1], &[1, 1]), &rs, 3)
        );
        assert_eq!(
            in_xdag(&w(&[1], &[1, -1]), &rs, 3),
            in_xdag(&w(&[1], &[1, 1]), &rs, 3)
        );
    }

    #[test]
    fn enumerate_examples() {
        for rs in [sys(1, 3), sys(2, 1), sys(1, 4), sys(2, 2)] {
            assert_eq!(enumerate_xdag(&rs, 3, 0).unwrap(), vec![rs.zero_weight()]);
        }
        assert_eq!(
            dominant_box(&sys(1, 1), 2),
            vec![w(&[0], &[]), w(&[1], &[]), w(&[2], &[])]
        );
        let rs = sys(2, 1);
        assert_eq!(enumerate_xdag(&rs, 3, 4).unwrap(), dominant_box(&rs, 4));
        // lambda_i in 0..=4 with lambda_{-2} >= lambda_{-1}
        assert_eq!(dominant_box(&rs, 4).len(), 15);
        let list = enumerate_xdag(&sys(1, 3), 5, 4).unwrap();
        assert!(list.windows(2).all(|x| x[0].coords().lt(x[1].coords())));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let rs = sys(1, 5);
        let b = 3i64;
        let mut brute = Vec::new();
        for a in -b..=b {
            for c in -b..=b {
                for d in -b..=b {
                    let lam = w(&[a], &[c, d]);
                    if in_xdag(&lam, &rs, 3) {
                        brute.push(lam);
                    }
                }
            }
        }
        assert_eq!(enumerate_xdag(&rs, 3, 3).unwrap(), brute);
    }

    #[test]
    fn empty_positive_part_is_dominance() {
        let rs = sys(2, 3);
        for lam in dominant_box(&rs, 4) {
            if lam.pos.iter().all(|&x| x == 0) {
                assert!(in_xdag(&lam, &rs, 3));
            }
        }
    }

    #[test]
    fn p_shift_invariance() {
        for rs in [sys(1, 3), sys(1, 4), sys(1, 5)] {
            for p in [3, 5] {
                let report = p_shift_check(&rs, p, 8).unwrap();
                assert!(report.checked > 0);
                assert!(report.passed(), "{:?}", report.violations);
            }
        }
    }

    #[test]
    fn steinberg_examples() {
        let rs = sys(1, 3);
        let lam = w(&[2], &[1]);
        assert!(in_xdag(&lam, &rs, 3) && rs.in_xr(&lam, 3, 1));
        match steinberg_decompose(&lam, &rs, 3).unwrap() {
            SteinbergOutcome::Decomposed(d) => assert_eq!(d.layers, vec![lam.clone()]),
            other => panic!("{other:?}"),
        }
        let mu = w(&[2], &[1]);
        let scaled = 3 * &mu;
        match steinberg_decompose(&scaled, &rs, 3).unwrap() {
            SteinbergOutcome::Decomposed(d) => {
                assert_eq!(d.layers, vec![rs.zero_weight(), mu]);
                assert!(validate_decomposition(&d, &scaled, &rs));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            steinberg_decompose(&lam, &rs, 0),
            Err(ClassifyError::CharZero(0))
        );
        assert!(matches!(
            steinberg_decompose(&w(&[0], &[1]), &sys(1, 3), 3),
            Ok(SteinbergOutcome::NoDecomposition { .. })
        ));
    }

    #[test]
    fn signed_digits_reconstruct() {
        let rs = sys(1, 4);
        let lam = w(&[4], &[4, -4]);
        let out = steinberg_decompose(&lam, &rs, 3).unwrap();
        let layers = match &out {
            SteinbergOutcome::Decomposed(d) => d.layers.clone(),
            SteinbergOutcome::NoDecomposition { layers, .. } => layers.clone(),
        };
        assert_eq!(layers, vec![w(&[1], &[1, -1]), w(&[1], &[1, -1])]);
        let d = SteinbergDecomposition { layers, prime: 3 };
        assert_eq!(d.reconstruct(), Some(lam));
    }

    #[test]
    fn tampered_layers_rejected() {
        let rs = sys(1, 3);
        let lam = w(&[5], &[4]);
        let d = match steinberg_decompose(&lam, &rs, 3).unwrap() {
            SteinbergOutcome::Decomposed(d) => d,
            other => panic!("{other:?}"),
        };
        assert!(validate_decomposition(&d, &lam, &rs));
        let mut bad = d.clone();
        bad.layers[1] = &bad.layers[1] + &w(&[1], &[0]);
        assert!(!validate_decomposition(&bad, &lam, &rs));
        let mut bad = d;
        bad.prime = 5;
        assert!(!validate_decomposition(&bad, &lam, &rs));
    }

    #[test]
    fn hand_built_decompositions_validate() {
        let rs = sys(1, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let restricted: Vec<Weight> = dominant_box(&rs, 6)
            .into_iter()
            .filter(|l| rs.in_xr(l, 3, 1))
            .collect();
        let base: Vec<Weight> = restricted
            .iter()
            .filter(|l| in_xdag(l, &rs, 3))
            .cloned()
            .collect();
        for _ in 0..50 {
            let mut layers = vec![base[rng.gen_range(0..base.len())].clone()];
            for _ in 0..rng.gen_range(0..3) {
                layers.push(restricted[rng.gen_range(0..restricted.len())].clone());
            }
            let d = SteinbergDecomposition { layers, prime: 3 };
            let lam = d.reconstruct().unwrap();
            assert!(validate_decomposition(&d, &lam, &rs));
        }
    }

    #[test]
    fn classify_record_json() {
        let rs = sys(1, 3);
        let rec = classify(&w(&[0], &[1]), &rs, 3).unwrap();
        let json = serde_json::to_value(&rec).unwrap();
        assert_eq!(json["in_Xplus"], true);
        assert_eq!(json["in_Xdag"], false);
        assert_eq!(json["j_value"], 1);
        assert_eq!(json["weight"]["neg"], serde_json::json!([0]));
    }

    proptest! {
        #[test]
        fn xdag_inside_xplus(a in -6i64..6, b in -6i64..6, c in -6i64..6, pi in 0usize..3, fam in 0usize..3) {
            let p = [0u64, 3, 5][pi];
            let (rs, lam) = match fam {
                0 => (sys(1, 5), w(&[a], &[b, c])),
                1 => (sys(1, 4), w(&[a], &[b, c])),
                _ => (sys(2, 3), w(&[a, b], &[c])),
            };
            if in_xdag(&lam, &rs, p) {
                prop_assert!(rs.is_dominant(&lam));
                prop_assert!(lam.neg.windows(2).all(|x| x[0] >= x[1]));
            }
        }

        #[test]
        fn decompositions_round_trip(a in 0i64..30, b in 0i64..30, c in 0i64..30, pi in 0usize..2) {
            let p = [3u64, 5][pi];
            let rs = sys(2, 3);
            let mut v = [a, b];
            v.sort_unstable_by(|x, y| y.cmp(x));
            let lam = w(&v, &[c]);
            if let SteinbergOutcome::Decomposed(d) = steinberg_decompose(&lam, &rs, p).unwrap() {
                prop_assert!(validate_decomposition(&d, &lam, &rs));
            }
        }
    }
}
