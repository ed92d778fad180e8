use proptest::prelude::*;
use proptest::sample::subsequence;

use ssym::{product, standardize, Element, Permutation, Word};

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A word of distinct letters drawn from `pool`, in random order.
fn word_from(pool: Vec<u8>, max_len: usize) -> impl Strategy<Value = Word> {
    subsequence(pool, 0..=max_len)
        .prop_shuffle()
        .prop_map(|l| Word::new(&l).unwrap())
}

/// A small integer combination of words over `pool`.
fn element_from(pool: Vec<u8>) -> impl Strategy<Value = Element> {
    prop::collection::vec((word_from(pool, 3), -3i64..=3), 0..4).prop_map(|terms| {
        let mut e = Element::zero();
        for (w, c) in terms {
            e.add_term(w.letters(), c).unwrap();
        }
        e
    })
}

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max).prop_flat_map(|n| {
        Just((1..=n as u8).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|l| Permutation::new(&l).unwrap())
    })
}

fn pool(lo: u8, hi: u8) -> Vec<u8> {
    (lo..=hi).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shuffle_commutes(x in element_from(pool(1, 5)), y in element_from(pool(6, 10))) {
        prop_assert_eq!(x.shuffle(&y).unwrap(), y.shuffle(&x).unwrap());
    }

    #[test]
    fn shuffle_associates(
        x in element_from(pool(1, 4)),
        y in element_from(pool(5, 8)),
        z in element_from(pool(9, 12)),
    ) {
        let left = x.shuffle(&y).unwrap().shuffle(&z).unwrap();
        let right = x.shuffle(&y.shuffle(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shuffle_distributes(
        x in element_from(pool(1, 5)),
        y in element_from(pool(6, 10)),
        z in element_from(pool(6, 10)),
    ) {
        let left = x.shuffle(&y.add(&z).unwrap()).unwrap();
        let right = x.shuffle(&y).unwrap().add(&x.shuffle(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn shuffle_of_words_has_binomial_weight(u in word_from(pool(1, 6), 6), v in word_from(pool(7, 13), 6)) {
        let s = Element::from_word(u.clone()).shuffle(&Element::from_word(v.clone())).unwrap();
        prop_assert_eq!(s.weight(), binomial((u.len() + v.len()) as u64, u.len() as u64));
        prop_assert!(s.terms().all(|(_, c)| c == 1));
        prop_assert!(s.is_homogeneous());
    }

    /// ua ⧢ vb = (u ⧢ vb)a + (ua ⧢ v)b
    #[test]
    fn shuffle_right_recursion(u in word_from(pool(1, 5), 4), v in word_from(pool(6, 10), 4), a in 11u8..=13, b in 14u8..=16) {
        let ua = Element::from_word(u.concat(&Word::new(&[a]).unwrap()).unwrap());
        let vb = Element::from_word(v.concat(&Word::new(&[b]).unwrap()).unwrap());
        let (u, v) = (Element::from_word(u), Element::from_word(v));
        let la = Element::from_word(Word::new(&[a]).unwrap());
        let lb = Element::from_word(Word::new(&[b]).unwrap());
        let left = ua.shuffle(&vb).unwrap();
        let right = u.shuffle(&vb).unwrap().concat(&la).unwrap()
            .add(&ua.shuffle(&v).unwrap().concat(&lb).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn concat_associates(x in element_from(pool(1, 4)), y in element_from(pool(5, 8)), z in element_from(pool(9, 12))) {
        let left = x.concat(&y).unwrap().concat(&z).unwrap();
        let right = x.concat(&y.concat(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn components_partition(x in element_from(pool(1, 6))) {
        let mut total = Element::zero();
        for j in 1..=6u8 {
            let part = x.component_last(j);
            let back = x.component_stripped(j).concat(&Element::from_word(Word::new(&[j]).unwrap())).unwrap();
            prop_assert_eq!(&part, &back);
            total.add_assign(&part).unwrap();
        }
        let empty = Element::monomial(Word::empty(), x.coeff(&Word::empty()));
        prop_assert_eq!(total.add(&empty).unwrap(), x);
    }

    #[test]
    fn shifted_product_associates(p in permutation(3), q in permutation(3), r in permutation(3)) {
        let (p, q, r) = (Element::from_permutation(&p), Element::from_permutation(&q), Element::from_permutation(&r));
        let left = product(&product(&p, &q).unwrap(), &r).unwrap();
        let right = product(&p, &product(&q, &r).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn standardize_preserves_order(w in prop::collection::btree_set(1u64..1000, 0..8).prop_flat_map(|s| Just(s.into_iter().collect::<Vec<_>>()).prop_shuffle())) {
        let st = standardize(&w).unwrap();
        prop_assert_eq!(st.degree(), w.len());
        let l = st.letters();
        for i in 0..w.len() {
            for j in 0..w.len() {
                prop_assert_eq!(w[i] < w[j], l[i] < l[j]);
            }
        }
    }

    #[test]
    fn word_text_round_trips(w in word_from(pool(1, 30), 8)) {
        let back: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn element_text_and_records_round_trip(x in element_from(pool(1, 12))) {
        let back: Element = x.to_string().parse().unwrap();
        prop_assert_eq!(&back, &x);
        let json = serde_json::to_string(&x).unwrap();
        let back: Element = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, x);
    }
}
