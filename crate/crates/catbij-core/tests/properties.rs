//! Randomized property tests for the algebraic layers; the exhaustive
//! small-length checks live next to the modules and in the acceptance
//! suite, so these target invariants that also make sense at larger
//! lengths.

use proptest::prelude::*;

use catbij_core::codec::canonical_decomposition;
use catbij_core::perm::Permutation;
use catbij_core::stats::{eval_base, BaseStat};
use catbij_core::trivial::{trivial_group, TrivialWord};

fn arb_permutation(max_len: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_len).prop_flat_map(|n| {
        Just((1..=n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|letters| Permutation::new(letters).expect("shuffled identity"))
    })
}

fn arb_word() -> impl Strategy<Value = TrivialWord> {
    (0..8usize).prop_map(|i| trivial_group()[i])
}

proptest! {
    /// The group law matches function composition on permutations.
    #[test]
    fn trivial_words_compose_as_functions(
        p in arb_permutation(12),
        a in arb_word(),
        b in arb_word(),
    ) {
        prop_assert_eq!(a.compose(b).apply(&p), a.apply(&b.apply(&p)));
    }

    /// Applying a word then its inverse is the identity.
    #[test]
    fn trivial_word_inverse_cancels(p in arb_permutation(12), a in arb_word()) {
        prop_assert_eq!(a.inverse().apply(&a.apply(&p)), p.clone());
        prop_assert_eq!(a.apply(&p).len(), p.len());
    }

    /// Canonical reduced decompositions reproduce their permutation.
    #[test]
    fn reduced_word_round_trip(p in arb_permutation(12)) {
        let word = canonical_decomposition(&p);
        prop_assert_eq!(word.apply(p.len()).unwrap(), p.clone());
        // run heads increase strictly
        for pair in word.runs().windows(2) {
            prop_assert!(pair[0].0 < pair[1].0);
        }
    }

    /// Ascents and descents partition the adjacencies.
    #[test]
    fn asc_des_partition(p in arb_permutation(12)) {
        let total = eval_base(BaseStat::Asc, &p) + eval_base(BaseStat::Des, &p);
        prop_assert_eq!(total, (p.len() as i64 - 1).max(0));
    }

    /// Direct sums are associative with the empty permutation as unit, and
    /// components invert the sum.
    #[test]
    fn direct_sum_algebra(
        a in arb_permutation(6),
        b in arb_permutation(6),
        c in arb_permutation(6),
    ) {
        let e = Permutation::empty();
        prop_assert_eq!(a.direct_sum(&e), a.clone());
        prop_assert_eq!(e.direct_sum(&a), a.clone());
        prop_assert_eq!(
            a.direct_sum(&b).direct_sum(&c),
            a.direct_sum(&b.direct_sum(&c))
        );
        let sum = a.direct_sum(&b);
        let rebuilt = sum
            .components()
            .iter()
            .fold(Permutation::empty(), |acc, part| acc.direct_sum(part));
        prop_assert_eq!(rebuilt, sum);
    }

    /// Statistic names parse back to the descriptor they came from.
    #[test]
    fn stat_names_round_trip(base in 0..23usize, word in arb_word(), modifier in 0..3usize) {
        use catbij_core::stats::{Modifier, StatDescriptor};
        let d = StatDescriptor {
            base: BaseStat::ALL[base],
            word,
            modifier: Modifier::ALL[modifier],
        };
        let parsed: StatDescriptor = d.name().parse().unwrap();
        prop_assert_eq!(parsed, d);
    }
}
