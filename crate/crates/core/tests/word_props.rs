use autfn_core::word::Word;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn signed_letters(rank: i64, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec((1..=rank, any::<bool>()), 0..=max_len).prop_map(|v| {
        v.into_iter()
            .map(|(i, neg)| if neg { -i } else { i })
            .collect()
    })
}

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    signed_letters(rank as i64, max_len).prop_map(move |s| Word::from_signed(rank, &s).unwrap())
}

fn ranked_triple() -> impl Strategy<Value = (Word, Word, Word)> {
    (1usize..=6).prop_flat_map(|r| (word(r, 24), word(r, 24), word(r, 24)))
}

/// Cancels adjacent inverse pairs one at a time, choosing uniformly among
/// the available pairs.
fn random_order_reduce(mut letters: Vec<i64>, rng: &mut ChaCha8Rng) -> Vec<i64> {
    loop {
        let pairs: Vec<usize> = (0..letters.len().saturating_sub(1))
            .filter(|&i| letters[i] == -letters[i + 1])
            .collect();
        if pairs.is_empty() {
            return letters;
        }
        let i = pairs[rng.gen_range(0..pairs.len())];
        letters.drain(i..i + 2);
    }
}

proptest! {
    #[test]
    fn concat_is_associative((u, v, w) in ranked_triple()) {
        let left = u.concat(&v).unwrap().concat(&w).unwrap();
        let right = u.concat(&v.concat(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_laws((u, _, _) in ranked_triple()) {
        prop_assert_eq!(u.inverse().inverse(), u.clone());
        prop_assert!(u.concat(&u.inverse()).unwrap().is_empty());
        prop_assert!(u.inverse().concat(&u).unwrap().is_empty());
    }

    #[test]
    fn apply_map_distributes(
        (u, v, images) in (1usize..=5).prop_flat_map(|r| {
            (word(r, 16), word(r, 16), prop::collection::vec(word(r, 6), r))
        })
    ) {
        let whole = u.concat(&v).unwrap().apply_map(&images).unwrap();
        let parts = u.apply_map(&images).unwrap().concat(&v.apply_map(&images).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn display_parse_round_trip((u, _, _) in ranked_triple()) {
        prop_assert_eq!(Word::parse(&u.to_string(), u.rank()).unwrap(), u);
    }

    #[test]
    fn exponent_sums_are_additive((u, v, _) in ranked_triple()) {
        let sum: Vec<i64> = u.exponent_sums().iter().zip(v.exponent_sums()).map(|(a, b)| a + b).collect();
        prop_assert_eq!(u.concat(&v).unwrap().exponent_sums(), sum);
    }
}

#[test]
fn reduction_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..2000 {
        let rank: i64 = rng.gen_range(1..=6);
        let len = rng.gen_range(0..=64);
        // Few distinct letters so that cancellations actually cascade.
        let letters: Vec<i64> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..=rank.min(2));
                if rng.gen() {
                    i
                } else {
                    -i
                }
            })
            .collect();
        let normal = Word::from_signed(rank as usize, &letters)
            .unwrap()
            .to_signed();
        for _ in 0..3 {
            assert_eq!(
                random_order_reduce(letters.clone(), &mut rng),
                normal,
                "{letters:?}"
            );
        }
    }
}
