use circparikh::circular::{
    avg_count, circular_parikh_matrix, circular_parikh_matrix_by_class, cyclic_shift, product_identity_check,
    shift_average, slender_partition_check,
};
use circparikh::matrix::UnitriangularMatrix;
use circparikh::words::{parikh_matrix, permutation_identity_check};
use circparikh::{canonicalize, Alphabet, Rational, Word};
use proptest::prelude::*;

fn word(s: u8, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..s, 0..=max).prop_map(Word::new)
}

fn sized_word(max: usize) -> impl Strategy<Value = (Alphabet, Word)> {
    (2usize..=4).prop_flat_map(move |s| word(s as u8, max).prop_map(move |w| (Alphabet::latin(s), w)))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q))
}

fn unitriangular(dim: usize) -> impl Strategy<Value = UnitriangularMatrix> {
    prop::collection::vec(small_rational(), dim * (dim - 1) / 2)
        .prop_map(move |e| UnitriangularMatrix::from_upper(dim, e).unwrap())
}

/// Closed form for the power of a 4x4 unitriangular matrix, by the binomial
/// expansion of (I + N)^p with N strictly upper, N^4 = 0.
fn binomial_power(m: &UnitriangularMatrix, p: u64) -> UnitriangularMatrix {
    let dim = m.dim();
    let id = UnitriangularMatrix::identity(dim);
    let n: Vec<Vec<Rational>> = m
        .rows()
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.into_iter().enumerate().map(|(j, x)| if i == j { Rational::zero() } else { x }).collect())
        .collect();
    let mul = |a: &Vec<Vec<Rational>>, b: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        (0..dim)
            .map(|i| (0..dim).map(|j| (0..dim).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
            .collect()
    };
    let mut total = id.rows();
    let mut term = n.clone();
    let mut binom = Rational::from(1u64);
    for k in 1..dim as u64 {
        if k > p {
            break;
        }
        binom = binom * Rational::from(p - k + 1) / Rational::from(k);
        for i in 0..dim {
            for j in 0..dim {
                total[i][j] = &total[i][j] + &(&binom * &term[i][j]);
            }
        }
        term = mul(&term, &n);
    }
    UnitriangularMatrix::from_rows(total).unwrap()
}

proptest! {
    #[test]
    fn parikh_matrix_is_a_morphism((alpha, u) in sized_word(10), seed in any::<u64>()) {
        let v = Word::new(u.symbols().iter().rev().map(|&c| ((c as u64 + seed) % alpha.len() as u64) as u8).collect());
        let lhs = parikh_matrix(&alpha, &u.concat(&v));
        prop_assert_eq!(lhs, parikh_matrix(&alpha, &u).multiply(&parikh_matrix(&alpha, &v)).unwrap());
    }

    #[test]
    fn inverse_is_two_sided(m in (2usize..=5).prop_flat_map(unitriangular)) {
        let inv = m.inverse();
        prop_assert!(m.multiply(&inv).unwrap().is_identity());
        prop_assert!(inv.multiply(&m).unwrap().is_identity());
    }

    #[test]
    fn key_and_json_are_injective(a in unitriangular(4), b in unitriangular(4)) {
        prop_assert_eq!(a == b, a.key() == b.key());
        prop_assert_eq!(UnitriangularMatrix::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn power_matches_binomial_expansion(m in unitriangular(4), p in 0u64..=6) {
        prop_assert_eq!(m.power(p), binomial_power(&m, p));
    }

    #[test]
    fn permutation_and_product_identities((alpha, w) in sized_word(9)) {
        prop_assert!(permutation_identity_check(&alpha, &w));
        let c = canonicalize(&w);
        prop_assert!(product_identity_check(&alpha, &c));
        prop_assert!(slender_partition_check(&alpha, &c));
    }

    #[test]
    fn circular_quantities_ignore_the_representative((alpha, w) in sized_word(10), shift in 0usize..10, v in word(3, 3)) {
        let r = if w.is_empty() { w.clone() } else { cyclic_shift(&w, shift % w.len()) };
        let (c, cr) = (canonicalize(&w), canonicalize(&r));
        prop_assert_eq!(&c, &cr);
        prop_assert_eq!(shift_average(&w, &v), shift_average(&r, &v));
        prop_assert_eq!(shift_average(&r, &v), avg_count(&c, &v));
        prop_assert_eq!(circular_parikh_matrix(&alpha, &c), circular_parikh_matrix_by_class(&alpha, &c));
    }
}
