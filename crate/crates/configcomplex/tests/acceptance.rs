//! Acceptance gate: one test per criterion from the project checklist in
//! README.md, each with its stated runtime budget.  Every check is exact
//! integer arithmetic; there are no tolerances.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use configcomplex::algebra::FiniteAbelianGroup;
use configcomplex::complex::{
    cross_check_with_lattice, default_face_cap, quotient_complex,
    reference_color_independence, HomologyGroup,
};
use configcomplex::config::{ColoredConfiguration, Vertex};
use configcomplex::constructions::{
    config_from_difference_set, config_from_semifield, search_difference_sets,
    search_sidon_sets, semifield_from_field, singer_difference_set,
};
use configcomplex::correspondence::{
    code_to_config, config_to_code, roundtrip_config, sidon_to_code,
};
use configcomplex::lattice::{LatticeAction, LatticeVector, LinearCode};

/// The configurations every criterion-wide property quantifies over: the
/// projective planes of orders 2..5 and the affine planes of GF(2)..GF(4).
fn reference_configurations() -> Vec<(String, ColoredConfiguration)> {
    let mut out = Vec::new();
    for q in [2u64, 3, 4, 5] {
        let ds = singer_difference_set(q).expect("prime power");
        let (config, _) = config_from_difference_set(&ds).expect("planar");
        out.push((format!("projective plane of order {q}"), config));
    }
    for q in [2u64, 3, 4] {
        let s = semifield_from_field(q).expect("prime power");
        let config = config_from_semifield(&s).expect("semifield axioms hold");
        out.push((format!("affine plane of order {q}"), config));
    }
    out
}

fn assert_budget(start: Instant, budget: Duration, what: &str) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, over the {budget:?} budget"
    );
    println!("{what}: pass ({elapsed:?})");
}

/// All $k^2+k+1$ vectors of the unit ball around the origin.
fn ball_vectors(m: usize) -> Vec<LatticeVector> {
    let mut out = vec![LatticeVector::zero(m)];
    out.extend(LatticeVector::zero(m).neighbors());
    out
}

#[test]
fn criterion_1_order_two_projective_quotient() {
    let start = Instant::now();
    let ds = singer_difference_set(2).unwrap().canonical_form();
    let (config, action) = config_from_difference_set(&ds).unwrap();
    let qc = quotient_complex(&config).unwrap();
    let complex = qc.complex();

    assert_eq!(complex.num_vertices(), 7);
    assert_eq!(complex.facets().len(), 14);
    assert!(complex.facets().iter().all(|f| f.len() == 3));

    // Positive facets are the 7 translates of {0,1,3}, negative facets the 7
    // translates of {0,-1,-3} = {0,4,6}; vertex ids are the residues.
    let translates = |base: [usize; 3]| -> BTreeSet<Vec<usize>> {
        (0..7)
            .map(|t| {
                let mut f: Vec<usize> = base.iter().map(|&b| (b + t) % 7).collect();
                f.sort_unstable();
                f
            })
            .collect()
    };
    let family = |facets: &[Vec<usize>]| -> BTreeSet<Vec<usize>> {
        facets
            .iter()
            .map(|f| {
                let mut f = f.clone();
                f.sort_unstable();
                f
            })
            .collect()
    };
    assert_eq!(family(qc.positive()), translates([0, 1, 3]));
    assert_eq!(family(qc.negative()), translates([0, 4, 6]));

    // The positive family is the configuration itself, the negative its dual.
    let pos = qc.positive_family_config().unwrap();
    assert!(config.isomorphism(&pos).unwrap().is_some());
    let neg = qc.negative_family_config().unwrap();
    assert!(config.dual().isomorphism(&neg).unwrap().is_some());

    let cap = default_face_cap();
    assert_eq!(
        complex.homology(2, cap).unwrap(),
        vec![
            HomologyGroup::free(1),
            HomologyGroup::free(2),
            HomologyGroup::free(1)
        ]
    );
    assert_eq!(complex.euler_characteristic(cap).unwrap(), 0);
    assert!(complex.is_two_neighborly());
    assert!(qc.verify_action(&config, &action).ok());

    assert_budget(start, Duration::from_secs(1), "criterion 1");
}

#[test]
fn criterion_2_projective_quotients_up_to_order_five() {
    let start = Instant::now();
    let cap = default_face_cap();
    for q in [2u64, 3, 4, 5] {
        let n = (q * q + q + 1) as usize;
        let ds = singer_difference_set(q).unwrap();
        let (config, action) = config_from_difference_set(&ds).unwrap();
        let qc = quotient_complex(&config).unwrap();
        assert_eq!(qc.complex().num_vertices(), n, "q={q}");
        assert_eq!(qc.complex().facets().len(), 2 * n, "q={q}");
        assert!(qc.complex().is_two_neighborly(), "q={q}");
        assert_eq!(action.group.order(), n as u64);
        assert!(qc.verify_action(&config, &action).ok(), "q={q}");
        let h = qc.complex().homology(1, cap).unwrap();
        assert_eq!(h[1], HomologyGroup::free(q as usize), "q={q}");
    }
    assert_budget(start, Duration::from_secs(60), "criterion 2");
}

#[test]
fn criterion_3_affine_semifield_quotients() {
    let start = Instant::now();
    let cap = default_face_cap();
    for q in [2u64, 3, 4] {
        let s = semifield_from_field(q).unwrap();
        let config = config_from_semifield(&s).unwrap();
        let n = (q * q) as usize;
        assert_eq!(config.num_points(), n, "q={q}");
        assert_eq!(config.num_lines(), n, "q={q}");
        assert!(config.validate_coloring().ok(), "q={q}");

        let qc = quotient_complex(&config).unwrap();
        // Both facet families have q^2 members; for two colors they coincide
        // as sets, so the distinct count halves.
        assert_eq!(qc.provenance_facets(), 2 * n, "q={q}");
        if q == 2 {
            assert!(qc.is_degenerate());
            assert_eq!(qc.complex().facets().len(), n);
        } else {
            assert!(!qc.is_degenerate());
            assert_eq!(qc.complex().facets().len(), 2 * n, "q={q}");
        }
        let h = qc.complex().homology(1, cap).unwrap();
        assert_eq!(h[1], HomologyGroup::free(q as usize - 1), "q={q}");

        // The induced Sidon set: q elements in a group of order q^2.
        let code = config_to_code(&config).unwrap();
        let sidon = configcomplex::correspondence::code_to_sidon(&code).unwrap();
        assert_eq!(sidon.elements().len(), q as usize, "q={q}");
        assert_eq!(sidon.group().order(), q * q, "q={q}");
        assert!(sidon.validate().ok(), "q={q}");
    }
    assert_budget(start, Duration::from_secs(10), "criterion 3");
}

#[test]
fn criterion_4_code_configuration_roundtrips() {
    let start = Instant::now();

    // Codes from every Sidon set found in six small groups: 24 codes of
    // ranks 2 and 3.
    let searches: [(&[u64], usize); 6] = [
        (&[7], 3),
        (&[8], 3),
        (&[9], 3),
        (&[3, 3], 3),
        (&[13], 4),
        (&[14], 4),
    ];
    let mut codes: Vec<LinearCode> = Vec::new();
    for (moduli, size) in searches {
        let group = FiniteAbelianGroup::from_moduli(moduli).unwrap();
        for set in search_sidon_sets(&group, size).unwrap() {
            codes.push(sidon_to_code(&set).unwrap());
        }
    }
    assert!(codes.len() >= 20, "only {} codes found", codes.len());

    // Code -> configuration -> code is the identity on canonical bases.
    for code in &codes {
        assert!(code.k() <= 4);
        assert!(code.is_radius_one().unwrap());
        let config = code_to_config(code).unwrap();
        let recovered = config_to_code(&config).unwrap();
        assert_eq!(&recovered, code);
    }

    // Configuration -> code -> configuration recovers every reference
    // configuration up to isomorphism.
    for (name, config) in reference_configurations() {
        let rt = roundtrip_config(&config).unwrap();
        assert!(rt.isomorphic, "{name} not recovered");
    }

    assert_budget(start, Duration::from_secs(60), "criterion 4");
}

#[test]
fn criterion_5_search_matches_classical_construction() {
    let start = Instant::now();
    for q in [2u64, 3, 4] {
        let n = q * q + q + 1;
        let size = (q + 1) as usize;
        let found = search_difference_sets(n, size).unwrap();
        assert!(!found.is_empty(), "no difference sets in Z_{n}");
        for ds in &found {
            assert!(ds.validate().ok(), "search output fails validation");
        }
        let (classical, _) =
            config_from_difference_set(&singer_difference_set(q).unwrap()).unwrap();
        let matched = found.iter().any(|ds| {
            let (config, _) = config_from_difference_set(ds).unwrap();
            classical.isomorphism(&config).unwrap().is_some()
        });
        assert!(matched, "no search result is isomorphic to the classical plane of order {q}");
    }
    assert_budget(start, Duration::from_secs(120), "criterion 5");
}

#[test]
fn criterion_6_lattice_quotient_cross_check() {
    let start = Instant::now();
    for (name, config) in reference_configurations() {
        assert!(
            cross_check_with_lattice(&config).unwrap(),
            "{name}: facet families disagree with the labeled lattice quotient"
        );
    }
    assert_budget(start, Duration::from_secs(120), "criterion 6");
}

/// Membership-based ball injectivity: no difference of two distinct unit-ball
/// vectors lies in the code.  Independent of the quotient-image route used by
/// `is_radius_one`.
fn ball_injective_by_membership(code: &LinearCode) -> bool {
    let balls = ball_vectors(code.k() + 1);
    for (a, u) in balls.iter().enumerate() {
        for v in &balls[a + 1..] {
            let diff = u.sub(v).unwrap();
            if code.contains(&diff).unwrap() {
                return false;
            }
        }
    }
    true
}

/// Tiling check: the unit balls around code points cover the quotient exactly
/// when the ball images are distinct and count up to the full group order.
fn balls_tile_quotient(code: &LinearCode) -> bool {
    let (group, proj) = code.quotient().unwrap();
    let images: BTreeSet<u64> = ball_vectors(code.k() + 1)
        .iter()
        .map(|v| group.index_of(&proj.apply(v.coords()).unwrap()))
        .collect();
    images.len() == (code.k() * code.k() + code.k() + 1)
        && images.len() as u64 == group.order()
}

#[test]
fn criterion_7_algebraic_property_suite() {
    let start = Instant::now();
    let mut codes_seen: Vec<LinearCode> = Vec::new();

    for (name, config) in reference_configurations() {
        let m = config.k();
        let n = config.num_points();

        // Color maps are involutions on points and on lines.
        for c in 0..m {
            for p in 0..n {
                let v = Vertex::Point(p);
                assert_eq!(config.phi(config.phi(v, c), c), v, "{name}");
            }
            for l in 0..config.num_lines() {
                let v = Vertex::Line(l);
                assert_eq!(config.phi(config.phi(v, c), c), v, "{name}");
            }
        }

        // Building the action re-verifies inverses, commutation, the
        // composite relation, and transitivity.
        let action = LatticeAction::build(&config).unwrap();

        // Two-step walks have no fixed points.
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let g = action.generator(i, j).unwrap();
                for p in 0..n {
                    assert_ne!(g[p], p, "{name}: fixed point of a two-step walk");
                }
            }
        }

        // Generator commutation, checked directly on the permutations.
        for i in 0..m {
            for j in 0..m {
                let g = action.generator(0, 1).unwrap();
                let h = action.generator(i, j).unwrap();
                for p in 0..n {
                    assert_eq!(g[h[p]], h[g[p]], "{name}: generators do not commute");
                }
            }
        }

        // Labeling properties on the radius-2 patch around the origin.
        let origin = LatticeVector::zero(m);
        let mut patch: BTreeSet<LatticeVector> = BTreeSet::new();
        patch.insert(origin.clone());
        for u in origin.neighbors() {
            for w in u.neighbors() {
                patch.insert(w);
            }
            patch.insert(u);
        }
        let projective = n == (m - 1) * (m - 1) + (m - 1) + 1;
        for v in &patch {
            let pv = action.label(v).unwrap();
            let mut neighbor_labels = BTreeSet::new();
            for u in v.neighbors() {
                let pu = action.label(&u).unwrap();
                // Adjacent vectors carry distinct labels.
                assert_ne!(pu, pv, "{name}: adjacent labels collide");
                // At most one neighbor per label.
                assert!(
                    neighbor_labels.insert(pu),
                    "{name}: two neighbors of a vertex share a label"
                );
            }
            if projective {
                // Exactly one neighbor per other point.
                assert_eq!(neighbor_labels.len(), n - 1, "{name}");
                assert!(!neighbor_labels.contains(&pv), "{name}");
            }
        }

        // Translation invariance: shifting by a stabilizer vector fixes the
        // label, and equal labels stay equal under every unit step.
        let code = action.stabilizer_code().unwrap();
        for v in patch.iter().take(12) {
            for row in code.basis().row_vectors() {
                let shifted = v.add(&LatticeVector::new(row).unwrap()).unwrap();
                assert_eq!(
                    action.label(&shifted).unwrap(),
                    action.label(v).unwrap(),
                    "{name}: stabilizer shift moved the label"
                );
            }
        }
        let by_label: Vec<(usize, &LatticeVector)> = patch
            .iter()
            .map(|v| (action.label(v).unwrap(), v))
            .collect();
        for (lu, u) in &by_label {
            for (lv, v) in &by_label {
                if lu != lv || u == v {
                    continue;
                }
                for i in 0..m - 1 {
                    let w = LatticeVector::step(m, i, m - 1);
                    assert_eq!(
                        action.label(&u.add(&w).unwrap()).unwrap(),
                        action.label(&v.add(&w).unwrap()).unwrap(),
                        "{name}: equal labels diverge under translation"
                    );
                }
            }
        }

        // The stabilizer code is independent of the base point.
        for base in 0..n {
            assert_eq!(
                action.stabilizer_code_from(base).unwrap(),
                code,
                "{name}: stabilizer depends on the base point"
            );
        }

        // The negative facet family does not depend on the reference color.
        assert!(reference_color_independence(&config).unwrap(), "{name}");

        codes_seen.push(code);
    }

    // Radius-1 is equivalent to ball injectivity, and perfection to exact
    // tiling, on stabilizer codes plus fixtures that fail each property.
    codes_seen.push(LinearCode::from_rows(vec![vec![1, -1, 0], vec![0, 1, -1]]).unwrap());
    codes_seen.push(LinearCode::from_rows(vec![vec![2, -2]]).unwrap());
    codes_seen.push(LinearCode::from_rows(vec![vec![3, -3]]).unwrap());
    codes_seen.push(
        LinearCode::from_rows(vec![vec![2, 0, -2], vec![0, 2, -2]]).unwrap(),
    );
    for code in &codes_seen {
        assert_eq!(
            code.is_radius_one().unwrap(),
            ball_injective_by_membership(code),
            "radius-1 disagrees with the membership route"
        );
        assert_eq!(
            code.is_perfect().unwrap(),
            code.is_radius_one().unwrap() && balls_tile_quotient(code),
            "perfection disagrees with the tiling route"
        );
        let k = code.k() as u64;
        assert_eq!(
            code.is_perfect().unwrap(),
            code.is_radius_one().unwrap() && code.index() == k * k + k + 1,
            "perfection disagrees with the index formula"
        );
    }

    assert_budget(start, Duration::from_secs(120), "criterion 7");
}
