use proptest::prelude::*;

use sgtree::oracle::NaiveSemigroup;
use sgtree::tree::{classify_child_seeds, descendant_counts, remove_right_generator};
use sgtree::wilf::{child_params, params_from_state, PrecedingSibling};
use sgtree::{Bitstream, SemigroupState};

type State = SemigroupState<u128>;

/// `⟨gens⟩|_floor` with conductor at most `max_floor`.
fn semigroup(max_floor: u32) -> impl Strategy<Value = State> {
    (prop::collection::vec(2u32..40, 1..5), 1..=max_floor)
        .prop_map(|(gens, floor)| State::from_generators_with_floor(&gens, floor).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn state_invariants(s in semigroup(60)) {
        let c = s.conductor();
        prop_assert_eq!(s.gap_bits().weight(), s.genus());
        prop_assert_eq!(c, s.genus() + s.rank());
        prop_assert!(s.gap_bits().logical_len() < c.max(1));
        prop_assert!(s.seed_bits().logical_len() <= c);
        let jumps = s.jumps();
        prop_assert_eq!(jumps.iter().sum::<u32>(), c);
        prop_assert!(jumps.iter().all(|&u| u <= s.multiplicity()));
        if let Some(&last) = jumps.last() {
            prop_assert_eq!(s.seed_bits().weight_range(c - last, c - 1).unwrap(), last);
        }
        let table = s.seed_table();
        prop_assert_eq!(Bitstream::<u128>::from_bits(&table.concatenated()).unwrap(), s.seed_bits());
        for (row, &u) in table.rows().iter().zip(&jumps) {
            prop_assert_eq!(row.len() as u32, u);
        }
    }

    #[test]
    fn sigma_split_round_trip(s in semigroup(64)) {
        let c = s.conductor();
        prop_assert_eq!(State::from_left_elements(&s.left_elements(), c).unwrap(), s);
        let sigma = State::sigma_from_left_elements(&s.left_elements(), c).unwrap();
        for i in 0..c {
            prop_assert_eq!(sigma.get(c + i), s.seed_bits().get(i));
            if i + 1 < c {
                prop_assert_eq!(sigma.get(i + 1), s.gap_bits().get(i));
            }
        }
    }

    #[test]
    fn seeds_match_definition(s in semigroup(32)) {
        let naive = NaiveSemigroup::from_state(&s);
        for p in 0..s.rank() {
            let read: Vec<u32> = (s.conductor()..2 * s.conductor())
                .filter(|&x| s.is_order_p_seed(x, p).unwrap_or(false))
                .collect();
            prop_assert_eq!(read, naive.seeds(p));
        }
    }

    #[test]
    fn children_match_oracle(s in semigroup(50)) {
        let naive = NaiveSemigroup::from_state(&s);
        prop_assert_eq!(s.right_generators(), naive.right_generators());
        for x in s.right_generators() {
            let child = remove_right_generator(&s, x).unwrap();
            prop_assert_eq!(child, naive.remove(x).to_state::<u128>().unwrap());
            prop_assert_eq!(classify_child_seeds(&s, x).unwrap(), child.seed_table());
        }
    }

    #[test]
    fn counts_match_oracle(s in semigroup(24)) {
        let d = descendant_counts(&s);
        let expected = NaiveSemigroup::from_state(&s).descendants();
        prop_assert_eq!((d.children, d.grandchildren, d.great_grandchildren), expected);
        prop_assert!(d.grandchildren <= d.children * (d.children + 1));
        if d.children == 0 {
            prop_assert_eq!((d.grandchildren, d.great_grandchildren), (0, 0));
        }
    }

    #[test]
    fn params_match_oracle(s in semigroup(50)) {
        let p = params_from_state(&s);
        prop_assert_eq!(p, NaiveSemigroup::from_state(&s).params());
        prop_assert!(p.remainder < p.multiplicity);
        prop_assert_eq!(p.quotient * p.multiplicity, p.conductor + p.remainder);
        prop_assert!(p.right_generators <= p.primitives && p.right_generators <= p.multiplicity);
        if p.eliahou_constant() >= 0 {
            prop_assert!(p.wilf_holds());
        }
    }

    #[test]
    fn incremental_params(s in semigroup(60)) {
        prop_assume!(s.rank() >= 2);
        let parent = params_from_state(&s);
        let mut preceding = None;
        for x in s.right_generators() {
            let t = x - s.conductor();
            let weak = t >= s.first_jump() || !s.is_order_p_seed(x, 1).unwrap();
            let child = child_params(&parent, t, weak, preceding).unwrap();
            prop_assert_eq!(child, params_from_state(&remove_right_generator(&s, x).unwrap()));
            preceding = Some(PrecedingSibling { right_generators: child.right_generators, weak });
        }
    }
}
