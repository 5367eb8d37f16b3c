//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! with the measured quantities before asserting.
//!
//! Two assertions are known to fail and are kept faithful on purpose; their
//! failure messages carry the counterexamples:
//! * criterion 1 pins ex(6, tight 4-path, 3-uniform) = 15, but exhaustive
//!   search (engine, naive subset enumeration, and an independent transversal
//!   computation) certifies 11;
//! * criterion 4 pins stack-freeness of the k = 3 construction, but the
//!   documented family contains a 3-stack at n = 12 (odd k escapes the
//!   middle-edge argument).

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use cgh::bounds::{applicable_kinds, evaluate_bound, BoundKind};
use cgh::extension::{
    enumerate_ends, extend_f, project_g, random_partition_experiment, verify_counting, EndMode,
};
use cgh::patterns::{find_pattern, is_zigzag_sequence, PatternKind};
use cgh::search::{exact_extremal, Certificate, SearchOptions};
use cgh::{CyclicGround, Edge, Hypergraph};
use itertools::Itertools;
use num_rational::Rational64;

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[test]
fn criterion_1_known_extremal_values() {
    let started = Instant::now();
    let big = exact_extremal(6, 3, 4, PatternKind::TightPath, false, &SearchOptions::default())
        .unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    let small = exact_extremal(5, 3, 4, PatternKind::TightPath, false, &SearchOptions::default())
        .unwrap();
    let ok = big.value == 15
        && big.certificate == Certificate::Exhaustive
        && elapsed < 600.0
        && small.value == 10;
    println!(
        "criterion 1: {} — ex(6,3,P4) = {} (want 15, certificate {:?}, {:.1}s of 600s), \
         ex(5,3,P4) = {} (want 10)",
        status(ok),
        big.value,
        big.certificate,
        elapsed,
        small.value
    );
    assert_eq!(small.value, 10);
    assert_eq!(small.certificate, Certificate::Exhaustive);
    assert!(elapsed < 600.0);
    assert_eq!(big.certificate, Certificate::Exhaustive);
    assert_eq!(
        big.value, 15,
        "expected extremal value 15, but exhaustive search certifies {}; the engine, a naive \
         enumeration of all 2^20 subsets, and an independent minimum-transversal computation \
         over the 360 tight-4-path copies all agree on 11, so the documented value cannot be \
         attained at n = 6",
        big.value
    );
}

#[test]
fn criterion_2_perles_tightness() {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, k) in [(4u32, 2usize), (6, 2), (6, 3)] {
        let started = Instant::now();
        let res = exact_extremal(n, 2, k, PatternKind::Zigzag, true, &SearchOptions::default())
            .unwrap();
        let elapsed = started.elapsed().as_secs_f64();
        let expect = (k - 1) * n as usize / 2;
        let lower = cgh::constructions::clique_union(n, k as u32).unwrap();
        let bound = evaluate_bound(BoundKind::Zigzag, n, 2, k as u32).unwrap().rational;
        let this_ok = res.value == expect
            && res.certificate == Certificate::Exhaustive
            && elapsed < 60.0
            && lower.len() == expect
            && Rational64::from(expect as i64) <= bound;
        ok &= this_ok;
        parts.push(format!("ex_cgh({n},P{k}) = {} in {elapsed:.2}s", res.value));
        assert!(this_ok, "n={n} k={k}: value {} want {expect}", res.value);
    }
    println!("criterion 2: {} — {}", status(ok), parts.join(", "));
}

#[test]
fn criterion_3_counting_never_violated() {
    let started = Instant::now();
    let mut violations = 0usize;
    let mut instances = 0usize;
    for i in 0..200u64 {
        let n = 4 + (i % 6) as u32; // 4..=9
        let r = if (i / 6) % 2 == 0 { 2 } else { 4 };
        let h = Hypergraph::random(n, r, 0.5, true, 1000 + i).unwrap();
        let report = verify_counting(&h, 4, &EndMode::Zigzag).unwrap();
        violations += report.violations();
        instances += 1;
    }
    let ok = violations == 0 && instances == 200;
    println!(
        "criterion 3: {} — {instances} seeded cghs (n in 4..=9, r in {{2,4}}, p = 1/2, \
         k in 1..=4), {violations} violations in {:.1}s",
        status(ok),
        started.elapsed().as_secs_f64()
    );
    assert_eq!(violations, 0);
}

/// Independent filter oracle for the stack-free construction, written
/// against parts (i)-(iii) directly.
fn stack_free_filter(n: u32, r: u32, k: u32) -> BTreeSet<Vec<u32>> {
    let arc = |u: u32, v: u32| {
        let d = (v + n - u) % n;
        d.min(n - d)
    };
    let mut out = BTreeSet::new();
    for combo in (0..n).combinations(r as usize) {
        let part_i = combo[0] == 0;
        let part_ii = !part_i
            && k >= 3
            && (0..r as usize).any(|h| {
                let len = arc(combo[h], combo[(h + 1) % r as usize]);
                (1..=k - 2).contains(&len)
            });
        let part_iii = !part_i
            && k >= 2
            && (1..(r / 2) as usize).any(|h| {
                let len = arc(combo[2 * h - 1], combo[2 * h]);
                len == k - 1 || len == k
            });
        if part_i || part_ii || part_iii {
            out.insert(combo);
        }
    }
    out
}

#[test]
fn criterion_4_construction_certification() {
    let stack12 = cgh::constructions::stack_free(12, 4, 3).unwrap();
    let short8 = cgh::constructions::short_side(8, 4, 3).unwrap();
    let stack_witness = find_pattern(&stack12, PatternKind::Stack, 3).unwrap();
    let short_free = find_pattern(&short8, PatternKind::Stack, 3).unwrap().is_none();

    let oracle_ok = [(8u32, 2u32, 3u32), (12, 4, 3), (10, 4, 2)]
        .iter()
        .all(|&(n, r, k)| {
            let built: BTreeSet<Vec<u32>> = cgh::constructions::stack_free(n, r, k)
                .unwrap()
                .edges()
                .map(|e| e.vertices().to_vec())
                .collect();
            built == stack_free_filter(n, r, k)
        });
    let count13 = cgh::constructions::stack_free(8, 2, 3).unwrap().len();

    let ok = stack_witness.is_none() && short_free && oracle_ok && count13 == 13;
    println!(
        "criterion 4: {} — stack_free(12,4,3) {}; short_side(8,4,3) {}; filter oracle \
         identity {}; |stack_free(8,2,3)| = {count13} (want 13)",
        status(ok),
        if stack_witness.is_none() { "stack-free" } else { "CONTAINS a 3-stack" },
        if short_free { "stack-free" } else { "contains a stack" },
        if oracle_ok { "holds" } else { "BROKEN" },
    );
    assert!(short_free);
    assert!(oracle_ok);
    assert_eq!(count13, 13);
    assert!(
        stack_witness.is_none(),
        "the k = 3 construction on 12 points contains the 3-stack {:?}: part (iii) admits arc \
         length k, so the middle edge of an odd stack is kept; the freeness claim only holds \
         for even k",
        stack_witness.unwrap().sequence
    );
}

#[test]
fn criterion_5_transversal_construction() {
    let started = Instant::now();
    let g = cgh::constructions::transversal_blocks(12, 4, 5).unwrap();
    // Blocks of 6, transversal prefix of size a = 1 each: {0} and {6}.
    // Hitting exactly one transversal set certifies the G_i are disjoint.
    let disjoint = g
        .edges()
        .all(|e| [0u32, 6].iter().filter(|&&a| e.contains(a)).count() == 1);
    let free = find_pattern(&g, PatternKind::TightPath, 5).unwrap().is_none();
    let elapsed = started.elapsed().as_secs_f64();
    let ok = g.len() == 100 && disjoint && free && elapsed < 300.0;
    println!(
        "criterion 5: {} — |G| = {} (want 100), parts disjoint: {disjoint}, tight-5-path \
         free: {free}, {elapsed:.2}s of 300s",
        status(ok),
        g.len()
    );
    assert!(ok);
}

#[test]
fn criterion_6_lifting_identities() {
    let mut identity_checks = 0usize;
    let mut transfer_checks = 0usize;
    for i in 0..50u64 {
        let n = 4 + (i % 5) as u32; // 4..=8
        let r = 2 + (i % 2) as u32; // {2,3}
        let m = 1 + (i % 3) as u32; // {1,2,3}
        let p = [0.15, 0.3, 0.5][(i as usize / 3) % 3];
        let h = Hypergraph::random(n, r, p, false, 4000 + i).unwrap();
        let lifted = cgh::constructions::lift_plus(&h, m).unwrap();
        assert_eq!(lifted.len(), m as usize * h.len(), "|H+| = m|H| at i={i}");
        let shadow_lifted = lifted.shadow().unwrap().len();
        let expected = if h.is_empty() {
            0
        } else {
            m as usize * h.shadow().unwrap().len() + h.len()
        };
        assert_eq!(shadow_lifted, expected, "|∂H+| = m|∂H| + |H| at i={i}");
        identity_checks += 1;
        for k in 1..=3usize {
            if find_pattern(&h, PatternKind::TightPath, k).unwrap().is_none() {
                let ell = k + (k - 1) / r as usize + 1;
                assert!(
                    find_pattern(&lifted, PatternKind::TightPath, ell).unwrap().is_none(),
                    "lift of a tight-{k}-path-free host contains a tight {ell}-path at i={i}"
                );
                transfer_checks += 1;
            }
        }
    }
    println!(
        "criterion 6: PASS — {identity_checks} hosts satisfy both lift identities exactly; \
         {transfer_checks} freeness transfers verified"
    );
    assert_eq!(identity_checks, 50);
    assert!(transfer_checks >= 30, "too few pattern-free hosts to exercise the transfer");
}

#[test]
fn criterion_7_monte_carlo_expectations() {
    let h = Hypergraph::random_with_edges(16, 4, 100, false, 2024).unwrap();
    assert_eq!(h.len(), 100);
    let report = random_partition_experiment(&h, 0, 10_000).unwrap();
    let target = 37.5;
    let diff_se = (report.mean_g - target).abs() / report.stderr_g;
    let mean_ok = (report.mean_g - target).abs() <= 5.0 * report.stderr_g;
    let shadow_ok = report
        .mean_shadow
        .iter()
        .zip(&report.stderr_shadow)
        .all(|(mean, se)| *mean <= report.bound_shadow + 5.0 * se);
    let ok = mean_ok && shadow_ok && (report.target_g - target).abs() < 1e-12;
    println!(
        "criterion 7: {} — mean |G| = {:.3} vs 37.5 ({:.2} stderr away, limit 5); shadow \
         means {:?} all within bound {:.3} + 5 stderr",
        status(ok),
        report.mean_g,
        diff_se,
        report.mean_shadow,
        report.bound_shadow
    );
    assert!(ok);
}

#[test]
fn criterion_8_injection_properties() {
    let mut graphs = 0usize;
    let mut extensions = 0usize;
    let mut stuck_total = 0usize;
    for n in 2..=5u32 {
        let ground = CyclicGround::new(n).unwrap();
        let pairs: Vec<Edge> = (0..n)
            .combinations(2)
            .map(|c| Edge::new(c).unwrap())
            .collect();
        for mask in 0u64..(1 << pairs.len()) {
            let mut h = Hypergraph::empty(ground, 2, true).unwrap();
            for (i, e) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    h.insert(e.clone()).unwrap();
                }
            }
            graphs += 1;
            for k in 1..=3usize {
                let here = enumerate_ends(&h, k, &EndMode::Zigzag).unwrap();
                let next = enumerate_ends(&h, k + 1, &EndMode::Zigzag).unwrap();
                let next_tuples: BTreeSet<Vec<u32>> =
                    next.ends.iter().map(|e| e.tuple().to_vec()).collect();
                let mut images = BTreeSet::new();
                for end in here.extendable() {
                    let image = extend_f(&h, end).unwrap();
                    assert!(next_tuples.contains(image.tuple()), "f must land in S_{}", k + 1);
                    assert!(images.insert(image.tuple().to_vec()), "f collision at n={n}");
                    let mut path = here.witness_for(end).unwrap().to_vec();
                    path.push(*image.tuple().last().unwrap());
                    assert!(is_zigzag_sequence(ground, &path, 2).unwrap());
                    extensions += 1;
                }
                let mut projections = BTreeSet::new();
                let mut per_set: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
                for end in &here.stuck {
                    let image = project_g(end);
                    assert!(projections.insert(image.clone()), "g collision at n={n}");
                    let mut set = image;
                    set.sort_unstable();
                    *per_set.entry(set).or_default() += 1;
                    stuck_total += 1;
                }
                assert!(per_set.values().all(|&c| c <= 1), "shadow fiber exceeds r-1 = 1");
            }
        }
    }
    println!(
        "criterion 8: PASS — {graphs} cghs on n <= 5 checked exhaustively for k <= 3: \
         {extensions} extensions collision-free and zigzag-valid, {stuck_total} stuck ends \
         projected injectively"
    );
    assert_eq!(graphs, 2 + 8 + 64 + 1024);
}

fn parse_rational(s: &str) -> Rational64 {
    let (num, den) = s.split_once('/').expect("rational as num/den");
    Rational64::new(num.parse().unwrap(), den.parse().unwrap())
}

#[test]
fn criterion_9_bound_golden_table_and_orderings() {
    let table = include_str!("data/bounds_golden.tsv");
    let mut golden: BTreeMap<(String, u32, u32, u32), (Rational64, Option<(Rational64, u64)>)> =
        BTreeMap::new();
    for line in table.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        let key = (
            f[0].to_string(),
            f[1].parse().unwrap(),
            f[2].parse().unwrap(),
            f[3].parse().unwrap(),
        );
        let irr = if f[5] == "-" {
            None
        } else {
            Some((parse_rational(f[5]), f[6].parse().unwrap()))
        };
        golden.insert(key, (parse_rational(f[4]), irr));
    }

    let mut matched = 0usize;
    for n in 4..=10u32 {
        for r in [2u32, 3, 4] {
            for k in 1..=6u32 {
                for kind in applicable_kinds(n, r, k) {
                    let value = evaluate_bound(kind, n, r, k).unwrap();
                    let key = (kind.label().to_string(), n, r, k);
                    let (rat, irr) = golden
                        .remove(&key)
                        .unwrap_or_else(|| panic!("{key:?} missing from the golden table"));
                    assert_eq!(value.rational, rat, "rational part at {key:?}");
                    let got_irr = value.irrational.map(|i| (i.coeff, i.radicand));
                    assert_eq!(got_irr, irr, "irrational part at {key:?}");
                    matched += 1;
                }
            }
        }
    }
    assert!(golden.is_empty(), "stale golden rows: {:?}", golden.keys());

    // Ordering invariants. The single degenerate exception is pinned: at
    // k = 1 with odd r the tight-path formula (1/2)(1+0)C(n,r-1) exceeds
    // the trivial bound 0 (both are valid upper bounds on ex = 0; the
    // formula chain inverts at this one point).
    let mut exceptions = 0usize;
    for n in 4..=10u32 {
        for r in [2u32, 3, 4] {
            for k in 1..=6u32 {
                let kalai = evaluate_bound(BoundKind::Kalai, n, r, k).unwrap().rational;
                let tight = evaluate_bound(BoundKind::TightPath, n, r, k).unwrap().rational;
                let trivial = evaluate_bound(BoundKind::Trivial, n, r, k).unwrap().rational;
                assert!(kalai <= tight, "kalai > tight_path at n={n} r={r} k={k}");
                if k == 1 && r % 2 == 1 {
                    assert!(tight > trivial, "the documented k=1 odd-r exception moved");
                    exceptions += 1;
                } else {
                    assert!(tight <= trivial, "tight_path > trivial at n={n} r={r} k={k}");
                }
                if r % 2 == 0 {
                    let zigzag = evaluate_bound(BoundKind::Zigzag, n, r, k).unwrap().rational;
                    assert!(zigzag >= tight, "zigzag < tight_path at n={n} r={r} k={k}");
                }
            }
        }
    }
    println!(
        "criterion 9: PASS — {matched} golden values reproduced exactly; orderings hold on \
         the full grid ({exceptions} pinned k=1 odd-r inversions of tight_path vs trivial)"
    );
    assert_eq!(matched, 714);
    assert_eq!(exceptions, 7);
}
