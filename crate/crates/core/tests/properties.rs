use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use twistspin_core::abelian::{smith_invariant_factors, Abelianization, IntMatrix};
use twistspin_core::finquot::{
    build_group, count_homomorphisms, count_homomorphisms_with, hom_count_signature, Battery,
    GroupKind, HomSearch,
};
use twistspin_core::fpgroup::{free_reduce, tietze_simplify, Syllable, DEFAULT_TIETZE_BUDGET};
use twistspin_core::{Execution, Presentation, Word};

fn raw_syllables(gens: usize, max_len: usize) -> impl Strategy<Value = Vec<Syllable>> {
    prop::collection::vec((0..gens, -3i64..=3), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(g, e)| Syllable::new(g, e)).collect())
}

fn word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
    raw_syllables(gens, max_len).prop_map(Word::from_syllables)
}

fn presentation(
    max_gens: usize,
    max_rels: usize,
    max_len: usize,
) -> impl Strategy<Value = Presentation> {
    (1..=max_gens).prop_flat_map(move |u| {
        prop::collection::vec(word(u, max_len), 0..=max_rels).prop_map(move |rels| {
            let names: Vec<String> = (0..u)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect();
            Presentation::new(names, rels, Some(Word::generator(0))).unwrap()
        })
    })
}

fn small_battery() -> Battery {
    Battery::parse("C2,C3,S3,D4").unwrap()
}

/// Cofactor expansion; shares nothing with the Smith form code.
fn det(m: &[Vec<i64>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    let mut total = BigInt::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let term = BigInt::from(m[0][j]) * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=5)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn free_reduce_is_idempotent(raw in raw_syllables(3, 12)) {
        let once = free_reduce(&raw, 3).unwrap();
        let twice = free_reduce(once.syllables(), 3).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn word_times_inverse_is_identity(w in word(3, 12)) {
        prop_assert!(w.multiply(&w.inverse()).is_identity());
        prop_assert!(w.inverse().multiply(&w).is_identity());
    }

    #[test]
    fn multiplication_is_associative(a in word(3, 6), b in word(3, 6), c in word(3, 6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn cyclic_reduce_gives_conjugate_with_same_class(w in word(3, 10)) {
        let r = w.cyclic_reduce();
        prop_assert!(r.is_cyclically_reduced());
        prop_assert_eq!(r.cyclic_class_key(), w.cyclic_class_key());
        for g in 0..3 {
            prop_assert_eq!(r.exponent_sum(g), w.exponent_sum(g));
        }
    }

    #[test]
    fn text_round_trip(p in presentation(4, 4, 8)) {
        let text = p.to_text();
        let back = Presentation::parse(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, p);
    }

    #[test]
    fn smith_divisibility_chain(m in matrix()) {
        let (factors, rank) = smith_invariant_factors(&IntMatrix::from_rows(&m));
        prop_assert_eq!(factors.len(), rank);
        prop_assert!(factors.iter().all(|f| f.is_positive()));
        for w in factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn smith_invariant_under_elementary_ops(
        m in matrix(),
        ops in prop::collection::vec((0u8..4, 0usize..5, 0usize..5, -3i64..=3), 0..20),
    ) {
        let base = IntMatrix::from_rows(&m);
        let mut moved = base.clone();
        for (kind, i, j, k) in ops {
            let (r, c) = (moved.rows(), moved.cols());
            match kind {
                0 => moved.swap_rows(i % r, j % r),
                1 => moved.swap_cols(i % c, j % c),
                2 if i % r != j % r => moved.add_row_multiple(i % r, j % r, &BigInt::from(k)),
                3 if i % c != j % c => moved.add_col_multiple(i % c, j % c, &BigInt::from(k)),
                _ => {}
            }
        }
        prop_assert_eq!(smith_invariant_factors(&base), smith_invariant_factors(&moved));
    }

    #[test]
    fn smith_product_is_abs_det(n in 1usize..=5, seed in prop::collection::vec(-9i64..=9, 25)) {
        let m: Vec<Vec<i64>> = (0..n).map(|i| seed[i * 5..i * 5 + n].to_vec()).collect();
        let d = det(&m);
        prop_assume!(!d.is_zero());
        let (factors, rank) = smith_invariant_factors(&IntMatrix::from_rows(&m));
        prop_assert_eq!(rank, n);
        prop_assert_eq!(factors.iter().product::<BigInt>(), d.abs());
    }

    #[test]
    fn abelian_image_is_a_homomorphism(p in presentation(3, 3, 6), a in word(3, 8), b in word(3, 8)) {
        let u = p.num_generators();
        let clip = |w: &Word| w.map_generators(|g| g % u);
        let (a, b) = (clip(&a), clip(&b));
        let abz = Abelianization::of(&p);
        let lhs = abz.image(&(&a * &b)).unwrap();
        let rhs = &abz.image(&a).unwrap() + &abz.image(&b).unwrap();
        prop_assert_eq!(lhs, rhs);
        for r in p.relators() {
            prop_assert!(abz.image(r).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tietze_preserves_hom_counts(p in presentation(3, 3, 6)) {
        let battery = small_battery();
        let out = tietze_simplify(&p, DEFAULT_TIETZE_BUDGET);
        prop_assert!(out.converged);
        prop_assert_eq!(
            hom_count_signature(&out.presentation, &battery).unwrap(),
            hom_count_signature(&p, &battery).unwrap()
        );
        prop_assert_eq!(&out, &tietze_simplify(&p, DEFAULT_TIETZE_BUDGET));
    }

    #[test]
    fn signature_ignores_relator_order_and_names(p in presentation(3, 3, 6)) {
        let battery = small_battery();
        let base = hom_count_signature(&p, &battery).unwrap();
        let mut rels = p.relators().to_vec();
        rels.reverse();
        let renamed: Vec<String> = (0..p.num_generators()).map(|i| format!("g{i}")).collect();
        let q = Presentation::new(renamed, rels, None).unwrap();
        prop_assert_eq!(hom_count_signature(&q, &battery).unwrap(), base);
    }

    #[test]
    fn trivial_group_admits_exactly_one_map(p in presentation(4, 4, 8)) {
        let c1 = build_group(GroupKind::Cyclic(1)).unwrap();
        prop_assert_eq!(count_homomorphisms(&p, &c1).unwrap(), 1);
    }

    #[test]
    fn split_does_not_change_counts(p in presentation(3, 3, 6)) {
        let s4 = build_group(GroupKind::Symmetric(4)).unwrap();
        let seq = count_homomorphisms_with(&p, &s4, HomSearch { execution: Execution::Sequential, ..Default::default() });
        let par = count_homomorphisms_with(&p, &s4, HomSearch { execution: Execution::Parallel, ..Default::default() });
        prop_assert_eq!(seq.unwrap(), par.unwrap());
    }
}

#[test]
fn free_presentations_count_order_powers() {
    for u in 0..=4 {
        let names: Vec<String> = (0..u).map(|i| format!("g{i}")).collect();
        let p = Presentation::free(names).unwrap();
        for g in small_battery().groups() {
            assert_eq!(
                count_homomorphisms(&p, g).unwrap(),
                (g.order() as u64).pow(u as u32)
            );
        }
    }
}
