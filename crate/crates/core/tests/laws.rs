use std::collections::BTreeSet;

use proptest::prelude::*;

use bicyclic::classify::{classify, containing_families, star_set, Verdict};
use bicyclic::element::{evaluate_word, format_elements, parse_elements, Letter};
use bicyclic::graph::{
    associated_graph, associated_graph_pairwise, bipartition_or_odd_cycle, verify_certificate,
};
use bicyclic::partition::{partition_avoids, partition_avoids_pairwise, remainder, PartitionRule};
use bicyclic::witness::validate;
use bicyclic::{Element, MaximalFamily, TargetSet, Window};

fn element(max: i64) -> impl Strategy<Value = Element> {
    (0..=max, 0..=max).prop_map(|(a, top)| Element::from_range(a, top).unwrap())
}

/// Shift maps restricted to a finite prefix of the naturals, composed as
/// functions. Independent of the library's product.
fn as_table(x: Element, len: i64) -> Vec<Option<i64>> {
    (0..len)
        .map(|n| if n >= x.a() { Some(n + x.b()) } else { None })
        .collect()
}

fn compose(left: &[Option<i64>], right: &[Option<i64>]) -> Vec<Option<i64>> {
    right
        .iter()
        .map(|r| r.and_then(|t| left.get(t as usize).copied().flatten()))
        .collect()
}

proptest! {
    #[test]
    fn associativity(x in element(40), y in element(40), z in element(40)) {
        prop_assert_eq!((x * y) * z, x * (y * z));
    }

    #[test]
    fn identity_and_regularity(x in element(60)) {
        let xs = x.adjoint();
        prop_assert_eq!(x * Element::IDENTITY, x);
        prop_assert_eq!(Element::IDENTITY * x, x);
        prop_assert_eq!(x * xs * x, x);
        prop_assert_eq!(xs * x * xs, xs);
        prop_assert_eq!(xs.adjoint(), x);
        prop_assert!((x * xs).is_idempotent());
    }

    #[test]
    fn adjoint_reverses_products(x in element(60), y in element(60)) {
        prop_assert_eq!((x * y).adjoint(), y.adjoint() * x.adjoint());
    }

    #[test]
    fn multiplication_is_composition_of_shifts(x in element(15), y in element(15)) {
        // Large enough that every intermediate value stays inside the table.
        let len = 200;
        let product = as_table(x * y, 100);
        let composed = compose(&as_table(x, len), &as_table(y, len));
        prop_assert_eq!(&product[..], &composed[..100]);
    }

    #[test]
    fn parity_is_additive(x in element(60), y in element(60)) {
        prop_assert_eq!((x * y).is_odd(), x.is_odd() != y.is_odd());
    }

    #[test]
    fn words_are_products(word in proptest::collection::vec(any::<bool>(), 1..20)) {
        let letters: Vec<Letter> = word.iter().map(|&g| if g { Letter::G } else { Letter::GStar }).collect();
        let expected = letters.iter().map(|l| l.element()).reduce(|p, q| p * q).unwrap();
        prop_assert_eq!(evaluate_word(&letters).unwrap(), expected);
    }

    #[test]
    fn element_lists_round_trip(xs in proptest::collection::vec(element(30), 1..6)) {
        let text = format_elements(&xs);
        prop_assert_eq!(parse_elements(&text).unwrap(), xs);
    }

    #[test]
    fn remainder_is_euclidean(y in -1000i64..1000, m in 1i64..50) {
        let r = remainder(y, m).unwrap();
        prop_assert!((0..m).contains(&r));
        prop_assert_eq!((y - r) % m, 0);
    }

    #[test]
    fn window_products_stay_in_product_hull(n in 0u32..12, i in 0usize..1000, j in 0usize..1000) {
        let w = Window::new(n);
        let (x, y) = (w.element_at(i % w.len()), w.element_at(j % w.len()));
        prop_assert!(w.product_hull().contains(x * y));
        prop_assert!(w.contains(x.adjoint()));
    }

    #[test]
    fn graph_routes_agree(u in proptest::collection::btree_set(element(6), 0..4), n in 1u32..7) {
        let t = TargetSet::Finite(u);
        let fast = associated_graph(Window::new(n), &t);
        let slow = associated_graph_pairwise(Window::new(n), &t);
        prop_assert_eq!(fast.edges().collect::<Vec<_>>(), slow.edges().collect::<Vec<_>>());
        let cert = bipartition_or_odd_cycle(&fast);
        prop_assert!(verify_certificate(&fast, &cert));
    }

    #[test]
    fn avoidance_routes_agree(u in proptest::collection::btree_set(element(6), 1..4), n in 1u32..6, rule in 0usize..4) {
        let rule = [
            PartitionRule::Parity,
            PartitionRule::diagonal(8, 3).unwrap(),
            PartitionRule::idempotent(6, 5).unwrap(),
            PartitionRule::row(-3).unwrap(),
        ][rule].clone();
        let t = TargetSet::Finite(u);
        prop_assert_eq!(
            partition_avoids(&rule, &t, Window::new(n)),
            partition_avoids_pairwise(&rule, &t, Window::new(n))
        );
    }

    #[test]
    fn verdicts_carry_valid_certificates(u in proptest::collection::btree_set(element(10), 0..4)) {
        match classify(&u).unwrap() {
            Verdict::Avoidable { families, certificate } => {
                prop_assert!(!families.is_empty());
                for f in &families {
                    prop_assert!(u.iter().all(|&x| f.family.contains(x)));
                }
                let t = TargetSet::Finite(u.clone());
                prop_assert!(partition_avoids(&certificate, &t, Window::new(30)).is_ok());
            }
            Verdict::Unavoidable { witness } => {
                prop_assert!(validate(&witness));
                prop_assert_eq!(witness.target, TargetSet::Finite(u.clone()));
            }
        }
    }

    #[test]
    fn verdicts_agree_with_adjoint(u in proptest::collection::btree_set(element(10), 0..4)) {
        let starred: BTreeSet<Element> = u.iter().map(|x| x.adjoint()).collect();
        prop_assert_eq!(
            classify(&u).unwrap().is_avoidable(),
            classify(&starred).unwrap().is_avoidable()
        );
        let TargetSet::Finite(back) = star_set(&star_set(&TargetSet::Finite(u.clone()))) else {
            unreachable!()
        };
        prop_assert_eq!(back, u);
    }

    #[test]
    fn subsets_of_avoidable_sets_are_avoidable(u in proptest::collection::btree_set(element(8), 1..4)) {
        if !containing_families(&u).is_empty() {
            for x in &u {
                let mut smaller = u.clone();
                smaller.remove(x);
                prop_assert!(!containing_families(&smaller).is_empty());
            }
        }
    }

    #[test]
    fn rule_adjoint_avoids_family_adjoint(a in 1i64..8) {
        let a = 2 * a;
        for c in (1..=a / 2).step_by(2) {
            let rule = PartitionRule::diagonal(a, c).unwrap();
            let fam = if 2 * c == a { MaximalFamily::DHalf { a } } else { MaximalFamily::DPair { a, c } };
            let w = Window::new(24);
            prop_assert!(partition_avoids(&rule, &TargetSet::Family(fam), w).is_ok());
            prop_assert!(partition_avoids(&rule.star(), &TargetSet::Family(fam).star(), w).is_ok());
        }
    }
}
