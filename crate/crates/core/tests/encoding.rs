//! Cross-module checks: emitted files re-parsed and recounted independently,
//! generator soundness against exact geometry, and the forcing behavior of
//! the selector reification.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kgon_core::assembly::{assign_variables, emit, parse_header};
use kgon_core::cc5::{cc5_block, cc5_clauses_for_tuple};
use kgon_core::combinatorics::{Combinations, SubsetRanker};
use kgon_core::exclusion::{exclusion_block, exclusion_clause, KSet};
use kgon_core::fourset::{fourset_clauses, FourSet, PatternClass, REALIZABLE_PATTERNS};
use kgon_core::geometry::{convex_position, random_general_position, Point, PointSet};
use kgon_core::hull::{layer_units, wedge_units, HullTemplate, SubCube};
use kgon_core::{Cc5Mode, EncodingParams};

/// Independent DIMACS re-parse: counts variables and clauses from the bytes
/// alone, without the emitter's bookkeeping.
fn reparse_counts(bytes: &[u8]) -> (u64, u64, u64) {
    let text = std::str::from_utf8(bytes).unwrap();
    let mut declared = None;
    let mut clauses = 0u64;
    let mut max_var = 0u64;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf ") {
            let mut it = rest.split_whitespace();
            let v: u64 = it.next().unwrap().parse().unwrap();
            let c: u64 = it.next().unwrap().parse().unwrap();
            declared = Some((v, c));
            continue;
        }
        let lits: Vec<i64> = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().unwrap())
            .collect();
        assert_eq!(*lits.last().unwrap(), 0, "clause line must end with 0");
        for &l in &lits[..lits.len() - 1] {
            assert_ne!(l, 0);
            max_var = max_var.max(l.unsigned_abs());
        }
        clauses += 1;
    }
    let (v, c) = declared.expect("p cnf header");
    (v, c, clauses)
}

#[test]
fn emitted_file_recounts_exactly() {
    let params = EncodingParams::new(9, 5).unwrap();
    let mut bytes = Vec::new();
    let manifest = emit(&params, Cc5Mode::Full, None, None, &mut bytes).unwrap();
    let (vars, declared_clauses, actual_clauses) = reparse_counts(&bytes);
    assert_eq!(vars, manifest.variables.total);
    assert_eq!(declared_clauses, manifest.clauses.total);
    assert_eq!(actual_clauses, manifest.clauses.total);
    let header = parse_header(std::io::BufReader::new(bytes.as_slice())).unwrap();
    assert_eq!(header.params, params);
}

#[test]
fn full_and_reduced_modes_emit_identical_bytes() {
    let params = EncodingParams::new(8, 5).unwrap();
    let emit_with = |mode| {
        let mut bytes = Vec::new();
        let manifest = emit(&params, mode, None, None, &mut bytes).unwrap();
        (manifest.sha256.clone(), bytes)
    };
    let (sha_full, bytes_full) = emit_with(Cc5Mode::Full);
    let (sha_reduced, bytes_reduced) = emit_with(Cc5Mode::Reduced);
    // the deduplicated full family is the canonical reduced family
    assert_eq!(bytes_full.len(), bytes_reduced.len());
    assert_eq!(sha_full, sha_reduced);
    assert_eq!(bytes_full, bytes_reduced);
}

#[test]
fn square_forces_the_all_plus_selector() {
    // square corners labeled in counterclockwise cyclic order, plus a fifth
    // point so that n >= k holds
    let points = PointSet::new(vec![
        Point::new(0, 0),
        Point::new(100, 0),
        Point::new(100, 100),
        Point::new(0, 100),
        Point::new(37, 41),
    ])
    .unwrap();
    let params = EncodingParams::new(5, 5).unwrap();
    let numbering = assign_variables(&params).unwrap();
    let model = points.induced_model(&numbering).unwrap();

    let ranker = SubsetRanker::new(5);
    let square = FourSet::new(0, 1, 2, 3, &ranker).unwrap();
    // ++++ is pattern 0; its selector must be true, the other 13 false
    assert!(model.value(numbering.selector_var(square.rank(), 0)));
    for p in 1..14 {
        assert!(!model.value(numbering.selector_var(square.rank(), p)));
    }
    let mut all_satisfied = true;
    fourset_clauses(&square, &numbering, |cl| {
        all_satisfied &= model.satisfies_clause(cl);
        Ok(())
    })
    .unwrap();
    assert!(all_satisfied);
}

#[test]
fn triangle_with_interior_point_forces_a_nonconvex_selector() {
    let points = PointSet::new(vec![
        Point::new(0, 0),
        Point::new(4, 0),
        Point::new(2, 3),
        Point::new(2, 1),
        Point::new(100, 100), // far extra point for n=5
    ])
    .unwrap();
    let params = EncodingParams::new(5, 5).unwrap();
    let numbering = assign_variables(&params).unwrap();
    let model = points.induced_model(&numbering).unwrap();
    let ranker = SubsetRanker::new(5);
    let q = FourSet::new(0, 1, 2, 3, &ranker).unwrap();
    let active: Vec<usize> = (0..14)
        .filter(|&p| model.value(numbering.selector_var(q.rank(), p)))
        .collect();
    assert_eq!(active.len(), 1);
    assert_eq!(REALIZABLE_PATTERNS[active[0]].class, PatternClass::NonConvex);
}

#[test]
fn reification_forces_selector_uniqueness() {
    // with orientation variables fixed from geometry, flipping any selector
    // violates some clause of its 4-set
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let points = random_general_position(6, 300, &mut rng);
    let params = EncodingParams::new(6, 5).unwrap();
    let numbering = assign_variables(&params).unwrap();
    let model = points.induced_model(&numbering).unwrap();
    let ranker = SubsetRanker::new(6);
    let mut combos = Combinations::new(6, 4);
    while let Some(q) = combos.current() {
        let fourset = FourSet::new(q[0], q[1], q[2], q[3], &ranker).unwrap();
        for p in 0..14 {
            let mut tampered = model.clone();
            let var = numbering.selector_var(fourset.rank(), p);
            tampered.set(var, !tampered.value(var));
            let mut violated = false;
            fourset_clauses(&fourset, &numbering, |cl| {
                violated |= !tampered.satisfies_clause(cl);
                Ok(())
            })
            .unwrap();
            assert!(violated, "flipping selector {p} of {:?} went unnoticed", q);
        }
        combos.advance();
    }
}

#[test]
fn cc5_clauses_hold_on_realizable_data() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let n = 7;
        let points = random_general_position(n as usize, 200, &mut rng);
        let assignment = points.induced_assignment();
        // sampled orderings of sampled 5-subsets
        for _ in 0..200 {
            let mut labels = [0u32; 5];
            loop {
                for l in labels.iter_mut() {
                    *l = rng.gen_range(0..n);
                }
                let mut sorted = labels;
                sorted.sort_unstable();
                if sorted.windows(2).all(|w| w[0] != w[1]) {
                    break;
                }
            }
            let clause = cc5_clauses_for_tuple(labels, n).unwrap();
            let satisfied = clause
                .literals()
                .iter()
                .any(|&l| assignment.satisfies_literal(l));
            assert!(satisfied, "cc5 clause violated on labels {labels:?}");
        }
        // and the full streamed block
        let numbering = assign_variables(&EncodingParams::new(n, 5).unwrap()).unwrap();
        let mut all = true;
        cc5_block(&numbering, Cc5Mode::Reduced, |cl| {
            all &= cl.iter().any(|&l| assignment.satisfies_literal(l));
            Ok(())
        })
        .unwrap();
        assert!(all);
    }
}

#[test]
fn exclusion_clause_tracks_geometric_convexity_per_kset() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let n = rng.gen_range(6..=9u32);
        let k = 5;
        let points = random_general_position(n as usize, 120, &mut rng);
        let params = EncodingParams::new(n, k).unwrap();
        let numbering = assign_variables(&params).unwrap();
        let model = points.induced_model(&numbering).unwrap();
        let mut combos = Combinations::new(n, k);
        while let Some(labels) = combos.current() {
            let kset = KSet::new(labels.to_vec(), n).unwrap();
            let clause = exclusion_clause(&kset, &numbering);
            let satisfied = model.satisfies_clause(&clause);
            let subset: Vec<Point> = labels.iter().map(|&l| points.point(l)).collect();
            let convex = convex_position(&subset);
            assert_eq!(
                satisfied, !convex,
                "clause/geometry disagree on {labels:?}"
            );
            combos.advance();
        }
        // block satisfied as a whole iff no convex k-subset exists
        let mut block_ok = true;
        exclusion_block(&numbering, k, |cl| {
            block_ok &= model.satisfies_clause(cl);
            Ok(())
        })
        .unwrap();
        assert_eq!(block_ok, points.has_convex_subset(k).unwrap().is_none());
    }
}

#[test]
fn hand_built_two_layer_wedge_witness() {
    // h=(3,3), w=[0,1], n=6: outer triangle 0,1,2 ccw; inner triangle 3,4,5
    // ccw placed so that, seen from anchor 0, vertex 3 is the clockwise
    // extreme and vertex 4 the counterclockwise extreme of the inner layer.
    let points = PointSet::new(vec![
        Point::new(0, 10),
        Point::new(-10, -10),
        Point::new(10, -10),
        Point::new(-2, 0),
        Point::new(2, 0),
        Point::new(0, 3),
    ])
    .unwrap();
    let template = HullTemplate::new(vec![3, 3]).unwrap();
    let subcube = SubCube::new(vec![0, 1], &template).unwrap();
    let assignment = points.induced_assignment();
    for unit in layer_units(&template, 6).unwrap() {
        assert!(assignment.satisfies_literal(unit), "layer unit {unit} fails");
    }
    for unit in wedge_units(&template, &subcube, 6).unwrap() {
        assert!(assignment.satisfies_literal(unit), "wedge unit {unit} fails");
    }
}

#[test]
fn geometry_chi_matches_literal_parity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let points = random_general_position(8, 500, &mut rng);
    let assignment = points.induced_assignment();
    for _ in 0..500 {
        let mut l = [0u32; 3];
        loop {
            for x in l.iter_mut() {
                *x = rng.gen_range(0..8);
            }
            if l[0] != l[1] && l[1] != l[2] && l[0] != l[2] {
                break;
            }
        }
        // chi from geometry equals the literal's sign applied to the sorted
        // triple's stored orientation
        let direct = points.chi(l[0], l[1], l[2]).unwrap();
        let via_assignment = assignment.chi(l[0], l[1], l[2]).unwrap();
        assert_eq!(direct, via_assignment);
    }
}
