mod common;

use common::*;
use proptest::prelude::*;
use recon_core::hitting_set::mask_elements;
use recon_core::*;

fn instance() -> impl Strategy<Value = HittingSetInstance> {
    (1usize..=10).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1 << n), 0..=12)
            .prop_map(move |sets| HittingSetInstance::new(n, sets).unwrap())
    })
}

/// Minimum hitting set size by trying every subset.
fn brute_min(h: &HittingSetInstance) -> Option<usize> {
    (0u64..1 << h.universe())
        .filter(|&c| h.is_hit_by(c))
        .map(|c| c.count_ones() as usize)
        .min()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduction_is_sound((s, x) in binary_set_and_query(10, 20)) {
        let h = from_noncontainment(&s, &x).unwrap();
        let opt = h.solve_exact().map(|sol| sol.size());
        for k in 1..=s.n() {
            let hit = opt.is_some_and(|o| o <= k);
            prop_assert_eq!(hit, !is_member(&s, &x, k).unwrap().is_member());
        }
        match min_exclusion_k(&s, &x).unwrap() {
            Exclusion::Never => prop_assert!(s.contains(&x)),
            Exclusion::At(k) => {
                let last_member = (1..=s.n()).filter(|&j| is_member(&s, &x, j).unwrap().is_member()).max().unwrap_or(0);
                prop_assert_eq!(k, last_member + 1);
            }
        }
    }

    #[test]
    fn indicator_reduction_is_sound(h in instance(), k in 1usize..=10) {
        prop_assume!(!h.sets().is_empty());
        let k = k.min(h.universe());
        let (s, x) = to_noncontainment(&h).unwrap();
        let hit = h.solve_exact().is_some_and(|sol| sol.size() <= k);
        prop_assert_eq!(hit, !is_member(&s, &x, k).unwrap().is_member());
    }

    #[test]
    fn solvers_agree(h in instance()) {
        let exact = h.solve_exact().unwrap();
        prop_assert!(h.is_hit_by(exact.hitters));
        prop_assert_eq!(Some(exact.size()), brute_min(&h));
        for k in 0..=h.universe() {
            let fpt = h.solve_fpt(k);
            prop_assert_eq!(fpt.is_some(), exact.size() <= k);
            if let Some(sol) = fpt {
                prop_assert!(h.is_hit_by(sol.hitters) && sol.size() <= k);
            }
        }
        let approx = h.approx_d().unwrap();
        prop_assert!(h.is_hit_by(approx.solution.hitters));
        prop_assert!(approx.solution.size() <= h.max_set_size().max(1) * exact.size());
        for (i, &a) in approx.selected.iter().enumerate() {
            for &b in &approx.selected[i + 1..] {
                prop_assert_eq!(h.sets()[a] & h.sets()[b], 0);
            }
        }
    }

    #[test]
    fn padding_preserves_membership(
        (s, x) in binary_set_and_query(6, 10),
        k in 1usize..=6,
        y in prop::collection::vec(0u8..2, 0..=4),
    ) {
        let k = k.min(s.n());
        let p = pad_instance(&s, &x, k, &y).unwrap();
        prop_assert_eq!(unpad(&p).unwrap(), y);
        prop_assert_eq!(
            is_member(&s, &x, k).unwrap().is_member(),
            is_member(&p.set, &p.query, p.k).unwrap().is_member()
        );
    }

    #[test]
    fn toggled_decision_is_perfect_reconstruction(s in binary_set(1, 8, 16), k in 1usize..=8) {
        let k = k.min(s.n());
        let h = from_noncontainment(&s, &vec![0; s.n()]).unwrap();
        let perfect = recon_brute(&s, k, Limits::default()).unwrap().members == s;
        prop_assert_eq!(h.toggled_decision(k, Limits::default()).unwrap(), perfect);
    }
}

#[test]
fn ternary_padding() {
    let s = StringSet::parse("021\n102\n", None).unwrap();
    let x = vec![2, 2, 1];
    for k in 1..=3 {
        let p = pad_instance(&s, &x, k, &[2, 0]).unwrap();
        assert_eq!(unpad(&p).unwrap(), vec![2, 0]);
        assert_eq!(
            is_member(&s, &x, k).unwrap().is_member(),
            is_member(&p.set, &p.query, p.k).unwrap().is_member()
        );
    }
}

#[test]
fn instance_text_round_trip() {
    let h = HittingSetInstance::from_lists(5, &[vec![0, 4], vec![1], vec![2, 3, 4]]).unwrap();
    let back = HittingSetInstance::parse(&h.to_string()).unwrap();
    assert_eq!(back, h);
    assert_eq!(mask_elements(back.sets()[2]), vec![2, 3, 4]);
}
