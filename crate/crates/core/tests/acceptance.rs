//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the output.
//! The process fails when any criterion's outcome differs from
//! [`EXPECTED_FAILURES`].

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spo_core::borelwalk::{
    inequality_report, mu_w_closed_form, partition_weight, w_sequence, walk, WalkError,
};
use spo_core::chevalley::{chevalley_property_check, is_member, restricted_check, ChevalleyBasis};
use spo_core::classify::{
    dominant_box, in_xdag, p_shift_check, steinberg_decompose, validate_decomposition,
    SteinbergOutcome,
};
use spo_core::kostant::{
    associativity_check, commute_divided_check, commute_h_check, generator_closure_check,
    kostant_closure_check, KostantEngine,
};
use spo_core::partitions::{partitions_of, Cell, Partition};
use spo_core::rootdata::{RootSystem, Weight};
use spo_core::CheckReport;

/// Criteria that fail on this implementation. Each one is checked in full
/// and must keep failing; a change of outcome in either direction is an error.
const EXPECTED_FAILURES: &[u32] = &[4, 9];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn from_report(report: &CheckReport, what: &str) -> Outcome {
        let detail = match report.violations.first() {
            None => format!("{} {what} checked", report.checked),
            Some(first) => format!(
                "{} of {} {what} violate, first: {first}",
                report.violations.len(),
                report.checked
            ),
        };
        Outcome {
            pass: report.passed(),
            detail,
        }
    }
}

fn system(n: usize, ell: usize) -> RootSystem {
    RootSystem::new(n, ell).expect("valid system")
}

fn four_systems() -> Vec<RootSystem> {
    vec![system(1, 3), system(1, 4), system(2, 2), system(2, 1)]
}

fn restricted_up_to(max_size: usize, p: u32) -> Vec<Partition> {
    (0..=max_size)
        .flat_map(partitions_of)
        .filter(|mu| mu.is_restricted(p))
        .collect()
}

fn random_partition(rng: &mut ChaCha8Rng, max_len: usize, max_part: usize) -> Partition {
    let len = rng.gen_range(0..=max_len);
    Partition::from_unsorted((0..len).map(|_| rng.gen_range(1..=max_part)).collect())
}

fn criterion_1() -> Outcome {
    let mu = Partition::new(vec![5, 4, 3, 3, 1, 1]).unwrap();
    let segments = mu.p_segments(5).unwrap().segments.len();
    let j = mu.little_j(5).unwrap();
    let big_j = mu.big_j(5).unwrap();
    let removable: BTreeSet<Cell> = mu.removable_cells(5).unwrap().into_iter().collect();
    let expected: BTreeSet<Cell> = [(1, 5), (2, 4), (5, 1), (6, 1)]
        .into_iter()
        .map(|(r, c)| Cell::new(r, c))
        .collect();
    let pass = segments == 2 && j == 4 && big_j.parts() == [4, 3, 3, 3] && removable == expected;
    Outcome {
        pass,
        detail: format!("segments {segments}, j {j}, J {big_j}, removable {removable:?}"),
    }
}

fn criterion_2() -> Outcome {
    let mut report = CheckReport::default();
    for p in [3u32, 5, 7] {
        for mu in restricted_up_to(18, p) {
            report.checked += 1;
            match mu
                .mullineux(p)
                .and_then(|m| Ok((m.mullineux(p)?, m.size())))
            {
                Ok((back, size)) if back == mu && size == mu.size() => {}
                Ok((back, size)) => report
                    .violations
                    .push(format!("p {p}: {mu} -> size {size}, back to {back}")),
                Err(e) => report.violations.push(format!("p {p}: {mu}: {e}")),
            }
        }
    }
    Outcome::from_report(&report, "restricted partitions")
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a5);
    let mut report = CheckReport::default();
    for p in [3u32, 5] {
        for _ in 0..1000 {
            let mu = random_partition(&mut rng, 8, 12);
            let nu = random_partition(&mut rng, 6, 5);
            let shifted = mu.add_scaled(&nu, p as usize);
            report.checked += 1;
            let (a, b) = (mu.little_j(p).unwrap(), shifted.little_j(p).unwrap());
            if a != b {
                report
                    .violations
                    .push(format!("p {p}: j({mu}) = {a} but j({shifted}) = {b}"));
            }
        }
    }
    Outcome::from_report(&report, "random pairs")
}

fn criterion_4() -> Outcome {
    let mut report = CheckReport::default();
    let mut failing = Vec::new();
    for n in 0..=3 {
        for ell in 1..=7 {
            let Ok(rs) = RootSystem::new(n, ell) else {
                continue;
            };
            let basis = ChevalleyBasis::new(&rs).expect("integral basis");
            let table = basis.bracket_table().expect("integral brackets");
            let part = chevalley_property_check(&basis, &table);
            if !part.passed() {
                failing.push(format!("{} ({})", rs.name(), part.violations.len()));
            }
            report.merge(part);
        }
    }
    let mut out = Outcome::from_report(&report, "root pairs");
    if !failing.is_empty() {
        out.detail = format!(
            "integral everywhere; |c| = r + 1 fails in {}; {}",
            failing.join(", "),
            out.detail
        );
    }
    out
}

fn criterion_5() -> Outcome {
    let mut report = CheckReport::default();
    for n in 0..=3 {
        for ell in 1..=7 {
            let Ok(rs) = RootSystem::new(n, ell) else {
                continue;
            };
            let basis = ChevalleyBasis::new(&rs).expect("basis");
            for el in basis.elements() {
                report.checked += 1;
                if !is_member(&el.matrix) {
                    report.violations.push(format!(
                        "{}: {} not in the algebra",
                        rs.name(),
                        el.label
                    ));
                }
            }
        }
    }
    for rs in four_systems() {
        let basis = ChevalleyBasis::new(&rs).expect("basis");
        let table = basis.bracket_table().expect("bracket table");
        report.merge(table.check_jacobi());
    }
    Outcome::from_report(&report, "memberships and Jacobi triples")
}

fn criterion_6() -> Outcome {
    let b01 = KostantEngine::new(&system(1, 1)).expect("engine");
    let b11 = KostantEngine::new(&system(1, 3)).expect("engine");
    let exhaustive = kostant_closure_check(&b01, 4, 4, usize::MAX, 0);
    let sweep = generator_closure_check(&b11, 4, 4, 1, 1);
    let sampled = kostant_closure_check(&b11, 4, 4, 60, 0x6b6f);
    let assoc_small = associativity_check(&b01, 4, 4, 400, 0x617);
    let assoc_large = associativity_check(&b11, 1, 1, 100, 0x618);
    let parts = [&exhaustive, &sweep, &sampled, &assoc_small, &assoc_large];
    let pass = parts.iter().all(|r| r.passed());
    let first = parts.iter().find_map(|r| r.violations.first().cloned());
    Outcome {
        pass,
        detail: format!(
            "B(0,1) all {} pairs; B(1,1) {} generator x box products and {} sampled full-box pairs \
             (exhaustive box is 10^12 pairs); {} + {} associativity triples{}",
            exhaustive.checked,
            sweep.checked,
            sampled.checked,
            assoc_small.checked,
            assoc_large.checked,
            first.map(|v| format!("; first violation: {v}")).unwrap_or_default()
        ),
    }
}

fn criterion_7() -> Outcome {
    let engine = KostantEngine::new(&system(1, 3)).expect("engine");
    let mut report = commute_h_check(&engine, 4);
    let (divided, three_term) = commute_divided_check(&engine, 4);
    report.merge(divided);
    let mut out = Outcome::from_report(&report, "commutations");
    out.pass &= three_term > 0;
    out.detail = format!("{}, {three_term} three-term cases", out.detail);
    out
}

fn criterion_8() -> Outcome {
    let mut report = CheckReport::default();
    for p in [3u32, 5] {
        for big_n in 1..=5usize {
            for n in 1..=2.min(big_n) {
                for t in restricted_up_to(10, p)
                    .into_iter()
                    .filter(|t| t.len() <= big_n - n)
                {
                    let top = t.parts().first().copied().unwrap_or(0);
                    let heads: BTreeSet<Vec<usize>> = [
                        vec![top; n],
                        vec![top + 1; n],
                        (0..n).map(|k| top + n - k).collect(),
                        vec![top + p as usize; n],
                    ]
                    .into_iter()
                    .collect();
                    for head in heads {
                        let mut parts = head;
                        parts.extend_from_slice(t.parts());
                        let mu = Partition::new(parts).unwrap();
                        for big_m in 1..=4usize {
                            let expect = match mu_w_closed_form(&mu, big_n, n, big_m, p) {
                                Ok(w) => w,
                                Err(WalkError::MTooSmall { .. }) => continue,
                                Err(e) => {
                                    report.violations.push(format!("{mu}: {e}"));
                                    continue;
                                }
                            };
                            report.checked += 1;
                            let rs = system(big_n, 2 * big_m + 1);
                            let lam = partition_weight(&mu, big_n, big_m).unwrap();
                            let seq = w_sequence(big_n, n, big_m).unwrap();
                            match walk(&rs, &lam, &seq, p as u64) {
                                Ok((end, _)) if end == expect => {}
                                Ok((end, _)) => report.violations.push(format!(
                                    "mu {mu}, N {big_n}, n {n}, M {big_m}, p {p}: walk {end}, closed form {expect}"
                                )),
                                Err(e) => report.violations.push(format!("mu {mu}: {e}")),
                            }
                        }
                    }
                }
            }
        }
    }
    Outcome::from_report(&report, "walks")
}

fn criterion_9() -> Outcome {
    let mut report = CheckReport::default();
    let mut tallies = [0usize; 4];
    for p in [3u64, 5] {
        for m in 1..=4usize {
            let rs = system(1, 2 * m + 1);
            let members: Vec<Weight> = dominant_box(&rs, 12)
                .into_iter()
                .filter(|w| in_xdag(w, &rs, p))
                .collect();
            for lam in members {
                report.checked += 1;
                let r = inequality_report(&lam, p as u32).expect("report");
                let flags = [
                    r.z_minus_one_nonnegative,
                    r.j_of_z_plus_is_lam_plus,
                    r.j_drop_matches,
                    r.j_bound,
                ];
                for (tally, ok) in tallies.iter_mut().zip(flags) {
                    *tally += usize::from(!ok);
                }
                if !r.holds() {
                    report
                        .violations
                        .push(format!("p {p}: lam {} -> lam^z {}", r.lam, r.lam_z));
                }
            }
        }
    }
    let mut out = Outcome::from_report(&report, "weights");
    out.detail = format!(
        "{}; failures per statement [z_-1 >= 0, J = lam+, j drop, j bound] = {tallies:?}",
        out.detail
    );
    out
}

fn criterion_10() -> Outcome {
    let mut report = CheckReport::default();
    for rs in four_systems() {
        let full: Vec<Weight> = {
            let coords = rs.neg_rank() + rs.pos_rank();
            let all: Vec<Vec<i64>> =
                itertools::Itertools::multi_cartesian_product((0..coords).map(|_| -8i64..=8))
                    .collect();
            all.into_iter()
                .map(|c| Weight::new(c[..rs.neg_rank()].to_vec(), c[rs.neg_rank()..].to_vec()))
                .collect()
        };
        for p in [0u64, 3, 5] {
            for lam in &full {
                let dag = in_xdag(lam, &rs, p);
                let dom = rs.is_dominant(lam);
                report.checked += 1;
                if dag && !dom {
                    report.violations.push(format!(
                        "{} p {p}: {lam} in X^dag but not dominant",
                        rs.name()
                    ));
                }
                if rs.ell() <= 2 && dom && !dag {
                    report.violations.push(format!(
                        "{} p {p}: {lam} dominant but not in X^dag",
                        rs.name()
                    ));
                }
            }
            if p > 0 {
                report.merge(p_shift_check(&rs, p, 8).expect("odd prime"));
            }
        }
    }
    Outcome::from_report(&report, "weights and shifts")
}

fn criterion_11() -> Outcome {
    let mut report = CheckReport::default();
    for rs in [system(1, 3), system(1, 2)] {
        let basis = ChevalleyBasis::new(&rs).expect("basis");
        let table = basis.bracket_table().expect("bracket table");
        for p in [3u64, 5] {
            report.merge(restricted_check(&basis, &table, p).expect("odd prime"));
        }
    }
    Outcome::from_report(&report, "even elements")
}

fn criterion_12() -> Outcome {
    let mut report = CheckReport::default();
    let mut declined = 0usize;
    for rs in four_systems() {
        for p in [3u64, 5] {
            for lam in dominant_box(&rs, 8)
                .into_iter()
                .filter(|w| in_xdag(w, &rs, p))
            {
                match steinberg_decompose(&lam, &rs, p).expect("dominant weight") {
                    SteinbergOutcome::Decomposed(d) => {
                        report.checked += 1;
                        if !validate_decomposition(&d, &lam, &rs)
                            || d.reconstruct().as_ref() != Some(&lam)
                        {
                            report
                                .violations
                                .push(format!("{} p {p}: {lam} does not round-trip", rs.name()));
                        }
                    }
                    SteinbergOutcome::NoDecomposition { .. } => declined += 1,
                }
            }
        }
    }
    let mut out = Outcome::from_report(&report, "decompositions");
    out.pass &= report.checked > 0;
    out.detail = format!(
        "{}, {declined} weights without a greedy decomposition",
        out.detail
    );
    out
}

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

const CRITERIA: &[Criterion] = &[
    (1, "worked Mullineux example", 1, criterion_1),
    (2, "Mullineux involution", 60, criterion_2),
    (3, "j-stability", 5, criterion_3),
    (4, "Chevalley integrality and |c| = r + 1", 30, criterion_4),
    (5, "membership and super Jacobi", 60, criterion_5),
    (6, "Kostant closure and associativity", 300, criterion_6),
    (7, "commutation formulas", 60, criterion_7),
    (
        8,
        "odd-reflection walk equals closed form",
        120,
        criterion_8,
    ),
    (9, "z-walk inequalities", 120, criterion_9),
    (10, "classification coherence", 120, criterion_10),
    (11, "restricted structure", 30, criterion_11),
    (12, "Steinberg round-trip", 60, criterion_12),
];

fn main() -> ExitCode {
    let only: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut unexpected = Vec::new();
    for &(id, title, limit, run) in CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        // criterion 1 is timed at the millisecond scale
        let budget = if id == 1 {
            Duration::from_millis(limit)
        } else {
            Duration::from_secs(limit)
        };
        let in_time = elapsed <= budget;
        let pass = outcome.pass && in_time;
        println!(
            "criterion {id:>2} {}: {title}: {} [{elapsed:.2?} of {budget:?}{}]",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            if in_time { "" } else { ", over budget" },
        );
        if pass == EXPECTED_FAILURES.contains(&id) {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all outcomes as expected (known failures: {EXPECTED_FAILURES:?})");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
