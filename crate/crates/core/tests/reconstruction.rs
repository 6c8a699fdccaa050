mod common;

use common::*;
use proptest::prelude::*;
use recon_core::*;

fn brute(s: &StringSet, k: usize) -> ReconReport {
    recon_brute(s, k, Limits::default()).unwrap()
}

/// Membership straight from projections, independent of disagreement masks.
fn member_by_projection(s: &StringSet, x: &[u8], k: usize) -> bool {
    recon_core::combin::KSubsets::new(s.n(), k).all(|w| {
        let win = Window::from_mask(w);
        project(s, &win).unwrap().contains(&win.restrict(x))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reconstruction_shrinks_as_k_grows(s in binary_set(1, 10, 24)) {
        let reports: Vec<_> = (1..=s.n()).map(|k| brute(&s, k)).collect();
        for r in &reports {
            for row in s.rows() {
                prop_assert!(r.members.contains(row));
            }
        }
        for pair in reports.windows(2) {
            for w in pair[1].members.rows() {
                prop_assert!(pair[0].members.contains(w));
            }
        }
        prop_assert_eq!(&reports.last().unwrap().members, &s);
    }

    #[test]
    fn membership_agrees_with_projections((s, x) in binary_set_and_query(8, 16), k in 1usize..=8) {
        let k = k.min(s.n());
        let m = is_member(&s, &x, k).unwrap();
        prop_assert_eq!(m.is_member(), member_by_projection(&s, &x, k));
        if let Membership::Excluded(w) = &m {
            prop_assert_eq!(w.len(), k);
            prop_assert!(!project(&s, w).unwrap().contains(&w.restrict(&x)));
        }
        prop_assert_eq!(m.is_member(), brute(&s, k).members.contains(&x));
    }

    #[test]
    fn one_reconstructible_iff_product(s in binary_set(1, 12, 64)) {
        prop_assert_eq!(is_1_reconstructible(&s), brute(&s, 1).members.len() == s.len());
    }

    #[test]
    fn two_sat_matches_brute(s in binary_set(2, 12, 64)) {
        let r = brute(&s, 2);
        prop_assert_eq!(is_2_reconstructible(&s).unwrap(), r.members == s);
        let mut enumerated = recon_2sat(&s).unwrap();
        enumerated.sort();
        prop_assert_eq!(enumerated, r.members.rows().to_vec());
    }

    #[test]
    fn no_information_matches_definition(s in binary_set(1, 9, 64)) {
        let total = 1usize << s.n();
        let expected = (1..=s.n()).filter(|&k| brute(&s, k).members.len() == total).max().unwrap_or(0);
        prop_assert_eq!(point_of_no_information(&s), expected);
        for k in 1..=s.n() {
            if is_complete_at(&s, k) {
                prop_assert!(is_complete_at(&s, k - 1));
            }
        }
    }

    #[test]
    fn sparsity_witness_is_reconstructed(s in binary_set(1, 12, 40)) {
        let b = sparsity_bound(&s);
        prop_assert!(b.bound >= 1 && b.bound <= s.n());
        prop_assert!(is_member(&s, &b.witness, b.bound).unwrap().is_member());
    }

    #[test]
    fn perfect_point_is_engine_independent(s in binary_set(1, 9, 32)) {
        let expected = (1..=s.n()).find(|&k| brute(&s, k).members == s).unwrap();
        for engine in Engine::ALL {
            prop_assert_eq!(perfect_point(&s, engine, Search::Ascend, Limits::default()).unwrap(), expected);
            prop_assert_eq!(perfect_point(&s, engine, Search::Bisect, Limits::default()).unwrap(), expected);
        }
    }
}

use recon_core::recon::is_complete_at;

#[test]
fn named_fixture_sets() {
    let trio = set(&["001", "011", "100"]);
    assert_eq!(perfect_point(&trio, Engine::Overlap, Search::Ascend, Limits::default()).unwrap(), 2);
    assert!(!is_1_reconstructible(&trio));
    assert_eq!(point_of_no_information(&trio), 1);

    for n in 3..=5 {
        let b = basis(n);
        assert_eq!(perfect_point(&b, Engine::Overlap, Search::Ascend, Limits::default()).unwrap(), n);
        let zero = vec![0u8; n];
        assert!(is_member(&b, &zero, n - 1).unwrap().is_member());
        assert!(!b.contains(&zero));
        let sb = sparsity_bound(&b);
        assert_eq!((sb.bound, sb.witness), (n - 1, zero));

        let p = even_parity(n);
        assert_eq!(point_of_no_information(&p), n - 1);
        assert_eq!(perfect_point(&p, Engine::Overlap, Search::Ascend, Limits::default()).unwrap(), n);
    }
}

#[test]
fn general_alphabet_engines_agree() {
    let s = StringSet::parse("0120\n1201\n2012\n0000\n2121\n1100\n", None).unwrap();
    for k in 1..=4 {
        let b = brute(&s, k);
        assert_eq!(recon_greedy(&s, k, None).unwrap().0, b);
        assert_eq!(recon_overlap(&s, k).unwrap(), b);
    }
    assert!(matches!(is_2_reconstructible(&s), Err(Error::Unsupported(_))));
    let pp = perfect_point(&s, Engine::Brute, Search::Ascend, Limits::default()).unwrap();
    assert_eq!(perfect_point(&s, Engine::Overlap, Search::Ascend, Limits::default()).unwrap(), pp);
}
