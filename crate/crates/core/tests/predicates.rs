use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use oliver::catalog::{self, constructors as c};
use oliver::chartab::CharacterTable;
use oliver::predicates::{
    classification_match, gap_exact, gap_sufficient, is_cp, is_ep, is_large, is_oliver,
    p_l_disjoint, pair_parity, proper_pairs, GapStatus, Parity,
};
use oliver::{Error, FiniteGroup, Subgroup};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn prime_power(n: usize) -> bool {
    (2..=n).find(|p| n.is_multiple_of(*p)).is_none_or(|p| {
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        m == 1
    })
}

fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut out = vec![g.trivial_subgroup()];
    seen.insert(out[0].members().clone());
    let mut i = 0;
    while i < out.len() {
        for x in 0..g.order() {
            if out[i].contains(x) {
                continue;
            }
            let k = g.extend(&out[i], &[x]);
            if seen.insert(k.members().clone()) {
                out.push(k);
            }
        }
        i += 1;
    }
    out
}

fn fixed(g: &FiniteGroup, values: &[f64], k: &Subgroup) -> f64 {
    k.elements().map(|x| values[g.class_of(x)]).sum::<f64>() / k.order() as f64
}

#[test]
fn oliver_verdicts() {
    let z8 = c::cyclic(8).unwrap();
    let v = is_oliver(&z8);
    let w = v.witness.expect("cyclic groups have an isthmus series");
    assert!(!v.is_oliver);
    assert_eq!((w.p_order, w.h_order, w.g_order), (1, 8, 8));
    assert!(is_oliver(&c::alternating(5).unwrap()).is_oliver);
    assert!(is_oliver(&c::symmetric(5).unwrap()).is_oliver);
    assert!(!is_oliver(&c::cyclic(30).unwrap()).is_oliver);
    assert!(!is_oliver(&c::symmetric(3).unwrap()).is_oliver);
}

#[test]
fn cp_and_ep() {
    for id in ["PSL(2,5)", "PSL(2,7)", "PSL(2,8)", "PSL(2,9)", "PSL(2,17)"] {
        assert!(is_cp(&catalog::shared(id).unwrap()), "{id}");
    }
    let a7 = c::alternating(7).unwrap();
    assert!(!is_cp(&a7));
    assert!(is_ep(&a7));
    assert!(is_ep(&c::symmetric(6).unwrap()));
    assert!(!is_ep(&c::symmetric(7).unwrap()));
}

#[test]
fn large_subgroups_and_disjointness() {
    let s5 = c::symmetric(5).unwrap();
    assert!(is_large(&s5, &s5.residual_p(2)));
    assert!(!is_large(&s5, &s5.trivial_subgroup()));
    assert!(p_l_disjoint(&c::alternating(5).unwrap()));
    assert!(!p_l_disjoint(&c::cyclic(6).unwrap()));
}

#[test]
fn parity_examples() {
    let a5 = c::alternating(5).unwrap();
    assert!(proper_pairs(&a5).iter().all(|p| p.parity == Parity::Even));

    let s6 = c::symmetric(6).unwrap();
    for pair in proper_pairs(&s6) {
        if pair.h.order() != 2 * pair.p.order() {
            assert_eq!(pair.parity, Parity::Even);
        }
    }

    let z2 = c::cyclic(2).unwrap();
    assert_eq!(
        pair_parity(&z2, &z2.trivial_subgroup(), &z2.whole()).unwrap(),
        Parity::Odd
    );
}

#[test]
fn parity_rejects_bad_pairs() {
    let s4 = c::symmetric(4).unwrap();
    let whole = s4.whole();
    assert!(matches!(
        pair_parity(&s4, &whole, &whole),
        Err(Error::BadPair(_))
    ));
    let s3_like = all_subgroups(&s4)
        .into_iter()
        .find(|h| h.order() == 6)
        .unwrap();
    assert!(matches!(
        pair_parity(&s4, &s3_like, &whole),
        Err(Error::BadPair(_))
    ));
}

/// Every `P < H` with `P` of prime power order, against the reduced list: the reduced pairs are
/// genuine pairs, and for random genuine modules the smallest defect is the same over both.
#[test]
fn proper_pair_reduction_matches_full_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for g in [
        c::symmetric(4).unwrap(),
        c::alternating(4).unwrap(),
        c::dihedral(6).unwrap(),
    ] {
        let subs = all_subgroups(&g);
        let full: Vec<(&Subgroup, &Subgroup)> = subs
            .iter()
            .filter(|p| prime_power(p.order()))
            .flat_map(|p| {
                subs.iter()
                    .filter(move |h| p.is_subgroup_of(h) && h.order() > p.order())
                    .map(move |h| (p, h))
            })
            .collect();
        let reduced = proper_pairs(&g);
        for pair in &reduced {
            assert!(
                prime_power(pair.p.order())
                    && pair.p.is_subgroup_of(&pair.h)
                    && pair.h.order() > pair.p.order()
            );
            assert_eq!(pair.parity, pair_parity(&g, &pair.p, &pair.h).unwrap());
        }

        let table = CharacterTable::compute(&g).unwrap();
        let basis = table.real_basis().unwrap();
        for _ in 0..40 {
            let m: Vec<f64> = basis
                .iter()
                .map(|_| {
                    if rng.random_bool(0.3) {
                        0.0
                    } else {
                        rng.random_range(0..4) as f64
                    }
                })
                .collect();
            let values: Vec<f64> = (0..basis[0].values.len())
                .map(|c| basis.iter().zip(&m).map(|(irr, k)| irr.values[c] * k).sum())
                .collect();
            let d = |p: &Subgroup, h: &Subgroup| {
                (fixed(&g, &values, p) - 2.0 * fixed(&g, &values, h)).round() as i64
            };
            let min_full = full.iter().map(|(p, h)| d(p, h)).min().unwrap();
            let min_reduced = reduced.iter().map(|pr| d(&pr.p, &pr.h)).min().unwrap();
            assert_eq!(min_full, min_reduced, "{}", g.name());
        }

        let odd_full: HashSet<(usize, usize)> = full
            .iter()
            .filter(|(p, h)| pair_parity(&g, p, h).unwrap() == Parity::Odd)
            .map(|(p, h)| (p.order(), h.order()))
            .collect();
        let odd_reduced: HashSet<(usize, usize)> = reduced
            .iter()
            .filter(|p| p.parity == Parity::Odd)
            .map(|p| (p.p.order(), p.h.order()))
            .collect();
        assert_eq!(odd_full, odd_reduced, "{}", g.name());
    }
}

#[test]
fn gap_decisions() {
    assert_eq!(gap_sufficient(&c::alternating(5).unwrap()), GapStatus::Gap);
    let s5 = gap_exact(&c::symmetric(5).unwrap(), 100_000).unwrap();
    assert_eq!(s5.status, GapStatus::NotGap);
    assert!(s5.p_l_disjoint && s5.module.is_none());
    let s6 = gap_exact(&c::symmetric(6).unwrap(), 100_000).unwrap();
    assert_eq!(s6.status, GapStatus::Gap);
    assert!(s6.module.unwrap().iter().all(|&m| m >= 0));
    assert!(matches!(
        gap_exact(&c::symmetric(6).unwrap(), 100),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn classification_examples() {
    let a7 = classification_match(&c::alternating(7).unwrap());
    assert_eq!((a7.matched_case, a7.a_g), (Some(2), 1));
    assert!(a7.consistent);

    let m10 = catalog::shared("M10").unwrap();
    let v = classification_match(&m10);
    assert_eq!((v.matched_case, v.a_g), (Some(3), 0));
    let npp_classes = m10
        .real_classes()
        .iter()
        .filter(|r| !prime_power(r.order as usize))
        .count();
    assert_eq!(npp_classes, 0);

    let s6 = classification_match(&c::symmetric(6).unwrap());
    assert_eq!((s6.matched_case, s6.a_g), (None, 2));
    assert!(s6.matching_cases.is_empty() && s6.consistent);
}
