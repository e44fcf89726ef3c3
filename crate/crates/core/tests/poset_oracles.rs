//! Exhaustive checks of the order, joins, meets and aspect counts against
//! brute-force searches over small universes.

use epr_universe::universe::{
    aspects_extending, count_aspects_extending, enumerate_universe, is_aspect, join_in_aspect, leq,
    meet, Aspect, EprComplex,
};
use num_bigint::BigUint;
use proptest::prelude::*;

fn universe4() -> Vec<EprComplex> {
    enumerate_universe(4).unwrap()
}

#[test]
fn order_laws_on_n4() {
    let all = universe4();
    assert_eq!(all.len(), 113);
    for e in &all {
        assert!(leq(e, e));
    }
    for e in &all {
        for f in &all {
            if leq(e, f) && leq(f, e) {
                assert_eq!(e, f);
            }
            if !leq(e, f) {
                continue;
            }
            for g in &all {
                if leq(f, g) {
                    assert!(leq(e, g), "{e:?} <= {f:?} <= {g:?}");
                }
            }
        }
    }
}

/// The least element of `{F <= A : every part <= F}`, found by search.
fn brute_join(all: &[EprComplex], a: &EprComplex, parts: &[&EprComplex]) -> EprComplex {
    let uppers: Vec<&EprComplex> = all
        .iter()
        .filter(|f| leq(f, a) && parts.iter().all(|p| leq(p, f)))
        .collect();
    let least: Vec<&EprComplex> = uppers
        .iter()
        .copied()
        .filter(|f| uppers.iter().all(|g| leq(f, g)))
        .collect();
    assert_eq!(least.len(), 1, "join must exist and be unique");
    least[0].clone()
}

#[test]
fn join_matches_brute_force_on_n4() {
    let all = universe4();
    let aspects: Vec<&EprComplex> = all.iter().filter(|e| is_aspect(e)).collect();
    assert_eq!(aspects.len(), 64);
    for a in aspects {
        let aspect = Aspect::new(a.clone()).unwrap();
        let below: Vec<&EprComplex> = all.iter().filter(|e| leq(e, a)).collect();
        for e1 in &below {
            for e2 in &below {
                let got = join_in_aspect(&aspect, &[(*e1).clone(), (*e2).clone()]).unwrap();
                assert_eq!(got, brute_join(&all, a, &[e1, e2]));
            }
        }
    }
}

fn brute_maximal_lower_bounds(all: &[EprComplex], e: &EprComplex, a: &EprComplex) -> Vec<EprComplex> {
    let lower: Vec<&EprComplex> = all.iter().filter(|i| leq(i, e) && leq(i, a)).collect();
    let mut maximal: Vec<EprComplex> = lower
        .iter()
        .filter(|i| !lower.iter().any(|j| j != *i && leq(i, j)))
        .map(|i| (*i).clone())
        .collect();
    maximal.sort_by(|x, y| y.len().cmp(&x.len()).then_with(|| x.objects().cmp(y.objects())));
    maximal
}

#[test]
fn meet_matches_brute_force_on_n4() {
    let all = universe4();
    for e in &all {
        for a in &all {
            let m = meet(e, a);
            assert_eq!(m.bounds, brute_maximal_lower_bounds(&all, e, a));
            assert_eq!(m.unique, m.bounds.len() == 1);
        }
    }
}

#[test]
fn aspect_count_formula_on_n_up_to_5() {
    for n in 0..=5 {
        for e in enumerate_universe(n).unwrap() {
            let listed = aspects_extending(&e, 20).unwrap();
            assert_eq!(BigUint::from(listed.len()), count_aspects_extending(&e));
            assert!(listed.iter().all(|a| leq(&e, a)));
        }
    }
}

#[test]
fn json_round_trip_on_n4() {
    for e in universe4() {
        assert_eq!(EprComplex::from_json(&e.to_json()).unwrap(), e);
    }
}

fn arb_complex(n_phi: usize) -> impl Strategy<Value = EprComplex> {
    (
        proptest::collection::vec(any::<bool>(), n_phi),
        proptest::collection::vec(any::<bool>(), n_phi * n_phi),
    )
        .prop_map(move |(keep, bits)| {
            let objects: Vec<u32> = (0..n_phi as u32).filter(|&i| keep[i as usize]).collect();
            let mut edges = Vec::new();
            for (x, &i) in objects.iter().enumerate() {
                for &j in &objects[x + 1..] {
                    if bits[i as usize * n_phi + j as usize] {
                        edges.push((i, j));
                    }
                }
            }
            EprComplex::new(n_phi, objects, edges).unwrap()
        })
}

proptest! {
    #[test]
    fn meet_bounds_are_common_lower_bounds(e in arb_complex(9), a in arb_complex(9)) {
        let m = meet(&e, &a);
        prop_assert!(!m.bounds.is_empty());
        for b in &m.bounds {
            prop_assert!(leq(b, &e) && leq(b, &a));
        }
        for (i, x) in m.bounds.iter().enumerate() {
            for y in &m.bounds[i + 1..] {
                prop_assert!(!leq(x, y) && !leq(y, x));
            }
        }
    }

    #[test]
    fn join_is_an_upper_bound_below_the_aspect(a in arb_complex(8), picks in proptest::collection::vec(any::<u8>(), 1..4)) {
        let aspect = Aspect::isolated_extension(&a);
        let objs = aspect.objects();
        let parts: Vec<EprComplex> = picks
            .iter()
            .map(|&p| aspect.induced(&[objs[p as usize % objs.len()]]).unwrap())
            .collect();
        let j = join_in_aspect(&aspect, &parts).unwrap();
        prop_assert!(leq(&j, &aspect));
        for p in &parts {
            prop_assert!(leq(p, &j));
        }
    }
}
