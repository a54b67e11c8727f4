// SPDX-License-Identifier: Apache-2.0

mod common;

use std::collections::BTreeSet;

use realforms::invariants::orbit_labels;
use realforms::theorems::admissible_pairs;
use realforms::{check_conditions, classify_manifolds, Membership, TableId};

#[test]
fn golden_model_lists() {
    let tables = common::golden_tables();
    assert_eq!(tables.len(), TableId::ALL.len());
    for t in &tables {
        for case in &t.cases {
            let r = classify_manifolds(&case.spec, case.n).unwrap_or_else(|e| panic!("{}: {e}", case.spec));
            assert_eq!(serde_json::to_value(r.table).unwrap(), t.table.as_str(), "{}", case.spec);
            assert_eq!(r.model_names(), case.models, "{} n={}", case.spec, case.n);
            let overlap: Vec<_> = case.collapsed.iter().filter(|c| case.models.contains(c)).collect();
            assert!(overlap.is_empty(), "{overlap:?}");
            if !case.collapsed.is_empty() {
                assert!(!r.notes.is_empty(), "{}: collapsed entries need a note", case.spec);
            }
        }
    }
}

#[test]
fn every_table_has_a_golden_case() {
    let covered: BTreeSet<String> = common::golden_tables().into_iter().map(|t| t.table).collect();
    for id in TableId::ALL {
        assert!(covered.contains(serde_json::to_value(id).unwrap().as_str().unwrap()), "{id:?}");
    }
}

#[test]
fn model_orbits_are_orbits_of_the_acting_form() {
    for (spec, n) in admissible_pairs(10) {
        let r = classify_manifolds(&spec, n).unwrap();
        assert!(!r.models.is_empty());
        for m in &r.models {
            assert_eq!(m.ambient.dim(), n, "{} {}", spec, m.name);
            if let Membership::Orbits { acting, orbits } = &m.membership {
                let all = orbit_labels(acting).unwrap();
                assert!(!orbits.is_empty(), "{}", m.name);
                for o in orbits {
                    assert!(all.contains(o), "{spec}: {} uses {o} not an orbit of {acting}", m.name);
                }
                // A model is an open invariant set: it contains an open orbit.
                assert!(orbits.iter().any(|o| o.is_open()), "{spec}: {}", m.name);
            }
        }
    }
}

#[test]
fn tables_exist_exactly_for_admissible_pairs() {
    for spec in realforms::lie::all_real_forms(10) {
        for n in 2..=10 {
            let Ok(cond) = check_conditions(&spec, n) else { continue };
            let table = classify_manifolds(&spec, n);
            if !cond.is_admissible() {
                assert!(table.is_err(), "{spec} n={n}");
            }
        }
    }
}
