//! Acceptance gate: one test per release criterion, each printing a single
//! PASS or FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::collections::BTreeMap;
use std::process::Command;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use pgonal::boundary_graph::isolation_report;
use pgonal::connector::{case_formula, connector_surface};
use pgonal::degeneration::{collar_bound, p_class, pinch_chain, PieceLabel};
use pgonal::monodromy::{genus_of, MonodromyTuple};
use pgonal::oracle::{decode_tuple, orbit_classes_bruteforce, pclass_orbit_bruteforce};
use pgonal::residue::{PrimeModulus, Residue};
use pgonal::strata::{canonical_form, count_type5, enumerate_strata};

fn verdict(name: &str, ok: bool) {
    println!("acceptance {name}: {}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance {name} failed");
}

fn pm(p: u64) -> PrimeModulus {
    PrimeModulus::new(p).unwrap()
}

// 1. The genus-4 pentagonal boundary table from the actual binary: exact
// strata, exact boundary points, and the single shared degeneration.
#[test]
fn a1_genus4_boundary_table() {
    let out = Command::new(env!("CARGO_BIN_EXE_pgonal"))
        .args(["boundary", "--p", "5"])
        .output()
        .expect("binary runs");
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json report");
    let strata = v["results"]["strata"].as_array().expect("strata array");

    let row = |i: usize| {
        (
            v["results"]["strata"][i]["canonical"].clone(),
            v["results"]["strata"][i]["r4_type"].as_str().unwrap().to_string(),
            v["results"]["strata"][i]["boundary"].clone(),
        )
    };
    let bp = |a: u64, b: u64, m: u64, d: &str| {
        serde_json::json!({"pieces": [a, b], "multiplicity": m, "display": d})
    };

    let ok = out.status.success()
        && strata.len() == 3
        && row(0)
            == (
                serde_json::json!([1, 1, 1, 2]),
                "T1".into(),
                serde_json::json!([bp(1, 2, 1, "P1+P2 (1 node)")]),
            )
        && row(1)
            == (
                serde_json::json!([1, 1, 4, 4]),
                "T2".into(),
                serde_json::json!([bp(1, 1, 1, "P1+P1 (1 node)"), bp(4, 4, 5, "P4+P4 (5 nodes)")]),
            )
        && row(2)
            == (
                serde_json::json!([1, 2, 3, 4]),
                "T3(2)".into(),
                serde_json::json!([bp(2, 2, 1, "P2+P2 (1 node)"), bp(4, 4, 5, "P4+P4 (5 nodes)")]),
            )
        && v["results"]["components"] == serde_json::json!([[0], [1, 2]]);
    verdict("1 genus-4 boundary table and components", ok);
}

// 2. Stratum enumeration agrees with the independent brute-force orbit
// partition on every tractable instance, and the genus-4 list is exact.
#[test]
fn a2_enumeration_matches_brute_force() {
    let genus4: Vec<Vec<u64>> = enumerate_strata(pm(5), 4)
        .iter()
        .map(|s| s.canonical().iter().map(|e| e.value()).collect())
        .collect();
    let mut ok = genus4 == [vec![1, 1, 1, 2], vec![1, 1, 4, 4], vec![1, 2, 3, 4]];

    for p in [3u64, 5, 7, 11, 13] {
        for r in 3u64..=6 {
            let part = orbit_classes_bruteforce(pm(p), r).expect("within guard");
            let mut block_class = BTreeMap::new();
            for (idx, &code) in part.members.iter().enumerate() {
                let exps: Vec<i64> =
                    decode_tuple(code, p, r).iter().map(|&e| e as i64).collect();
                let class = canonical_form(&MonodromyTuple::validate(pm(p), &exps).unwrap());
                if let Some(prev) = block_class.insert(part.block_of[idx], class.clone()) {
                    ok &= prev == class;
                }
            }
            let classes: std::collections::BTreeSet<_> = block_class.into_values().collect();
            ok &= classes.len() == part.block_count;
            ok &= classes
                .into_iter()
                .eq(enumerate_strata(pm(p), r));
        }
    }
    verdict("2 strata enumeration vs brute force (p <= 13, r <= 6)", ok);
}

// 3. Exactly (p+1)/2 piece classes, and the closed-form label picks out the
// same partition the brute-force orbit computation finds.
#[test]
fn a3_piece_class_count_and_labels() {
    let mut ok = true;
    for p in [5u64, 7, 11, 13, 17] {
        let part = pclass_orbit_bruteforce(pm(p)).expect("within guard");
        ok &= part.block_count as u64 == p.div_ceil(2);
        let mut block_label = BTreeMap::new();
        for (idx, &code) in part.members.iter().enumerate() {
            let pair = decode_tuple(code, p, 2);
            let a = Residue::normalize(pair[0] as i64, pm(p));
            let b = Residue::normalize(pair[1] as i64, pm(p));
            let label = p_class(a, b).unwrap();
            if let Some(prev) = block_label.insert(part.block_of[idx], label) {
                ok &= prev == label;
            }
        }
        let labels: std::collections::BTreeSet<_> = block_label.into_values().collect();
        ok &= labels.len() == part.block_count;
    }
    verdict("3 piece classes: count (p+1)/2 and label agreement", ok);
}

// 4. Every type-5 stratum at p = 11, 13 is isolated with only the trivial
// symmetry on each boundary piece; no type-5 strata exist at p = 5, 7.
#[test]
fn a4_type5_isolation() {
    let mut ok = true;
    for p in [5u64, 7] {
        ok &= isolation_report(pm(p))
            .iter()
            .all(|e| e.tag.family() != "T5");
    }
    for p in [11u64, 13] {
        let report = isolation_report(pm(p));
        let t5: Vec<_> = report.iter().filter(|e| e.tag.family() == "T5").collect();
        ok &= !t5.is_empty();
        for e in t5 {
            ok &= e.isolated && e.overlaps.is_empty();
            ok &= e
                .piece_stabilizers
                .iter()
                .all(|st| st.stabilizer == [(1, false)]);
        }
    }
    verdict("4 type-5 strata isolated at p = 11, 13", ok);
}

// 5. For every genus 5..=30 the connector chain exists, is the same for all
// admissible stratum indices, matches the closed-form piece sequence, and
// has the right arithmetic genus.
#[test]
fn a5_connector_chains() {
    let mut ok = true;
    for g in 5u64..=30 {
        match connector_surface(g) {
            Ok((surface, _)) => {
                let labels: Vec<PieceLabel> =
                    surface.components.iter().map(|c| c.label).collect();
                ok &= labels == case_formula(g + 2);
                ok &= surface.arithmetic_genus() == g;
            }
            Err(_) => ok = false,
        }
    }
    verdict("5 connector chains for genus 5..=30", ok);
}

// 6. Arithmetic genus conservation: every pinched chain has the genus of
// the smooth surface it degenerates. Exhaustive over small strata and
// connectors, randomized over 1000 seeded valid tuples.
#[test]
fn a6_arithmetic_genus_conservation() {
    let mut ok = true;
    for p in [5u64, 7, 11, 13] {
        for s in enumerate_strata(pm(p), 4) {
            let surface = pinch_chain(&s.representative()).unwrap();
            ok &= surface.arithmetic_genus() == genus_of(pm(p), 4);
        }
    }
    for g in 5u64..=30 {
        let (surface, _) = connector_surface(g).unwrap();
        ok &= surface.arithmetic_genus() == g;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x70676f6e);
    let primes = [3u64, 5, 7, 11];
    let mut produced = 0;
    while produced < 1000 {
        let p = *primes.choose(&mut rng).unwrap();
        let r = rng.gen_range(4u64..=8);
        let mut exps: Vec<i64> = (0..r - 1)
            .map(|_| rng.gen_range(1..p as i64))
            .collect();
        let sum: i64 = exps.iter().sum();
        let last = (-sum).rem_euclid(p as i64);
        if last == 0 {
            continue; // closing exponent would vanish; resample
        }
        exps.push(last);
        let t = MonodromyTuple::validate(pm(p), &exps).unwrap();
        match pinch_chain(&t) {
            Ok(surface) => ok &= surface.arithmetic_genus() == genus_of(pm(p), r),
            Err(_) => ok = false,
        }
        produced += 1;
    }
    verdict("6 arithmetic genus conserved under pinching", ok);
}

// 7. Collar bound: exact value ln 3 at order 3, and monotone decreasing
// over orders 5..=50.
#[test]
fn a7_collar_bound() {
    let mut ok = (collar_bound(3).unwrap() - 3.0f64.ln()).abs() < 1e-10;
    let mut prev = collar_bound(5).unwrap();
    for d in 6u64..=50 {
        let v = collar_bound(d).unwrap();
        ok &= v < prev;
        prev = v;
    }
    verdict("7 collar bound: ln 3 at order 3, decreasing on 5..=50", ok);
}

// 8. Type-5 counts over consecutive usable primes are nondecreasing and
// quadratic in p: second divided differences agree within 2.
#[test]
fn a8_type5_count_growth() {
    let primes = [11u64, 13, 17, 19, 23];
    let counts: Vec<f64> = primes
        .iter()
        .map(|&p| count_type5(pm(p)) as f64)
        .collect();
    let mut ok = counts.windows(2).all(|w| w[0] <= w[1]);

    let x: Vec<f64> = primes.iter().map(|&p| p as f64).collect();
    let first: Vec<f64> = (0..counts.len() - 1)
        .map(|i| (counts[i + 1] - counts[i]) / (x[i + 1] - x[i]))
        .collect();
    let second: Vec<f64> = (0..first.len() - 1)
        .map(|i| (first[i + 1] - first[i]) / (x[i + 2] - x[i]))
        .collect();
    for w in second.windows(2) {
        ok &= (w[0] - w[1]).abs() <= 2.0;
    }
    verdict("8 type-5 count growth is quadratic in p", ok);
}
