mod common;

use proptest::prelude::*;
use qcdesign::oracle::{j_characteristics, j_direct, spectrum_bruteforce};
use qcdesign::qc::{frequencies, gray_pair, lambda_profile, realize_lambda, LAMBDA_CLASSES};
use qcdesign::theory::theory_spectrum;
use qcdesign::{build_design, Branch, DesignMatrix, Family, GeneratorSpec, LambdaProfile};

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

fn spec(max_n: usize) -> impl Strategy<Value = GeneratorSpec> {
    (family(), 1..=max_n)
        .prop_flat_map(|(family, n)| {
            (
                Just(family),
                prop::collection::vec(0u8..4, n),
                prop::collection::vec(0u8..4, n),
                0u8..4,
                0u8..4,
            )
        })
        .prop_map(|(family, u, v, u0, v0)| {
            let branch = family.is_odd_run().then(|| Branch::new(u0, v0).unwrap());
            GeneratorSpec::new(family, u, v, branch).unwrap()
        })
}

/// A profile built by dropping `n` coordinates into the ten classes.
fn lambda(max_n: usize) -> impl Strategy<Value = LambdaProfile> {
    prop::collection::vec(0usize..10, 1..=max_n).prop_map(|classes| {
        let mut values = [0usize; 10];
        for c in classes {
            values[c] += 1;
        }
        LambdaProfile::new(values)
    })
}

fn random_design(max_q: usize) -> impl Strategy<Value = DesignMatrix> {
    (1..=max_q, 1usize..=40)
        .prop_flat_map(|(q, runs)| prop::collection::vec(prop::collection::vec(prop::bool::ANY, q), runs))
        .prop_map(|rows| {
            let q = rows[0].len();
            let labels = (1..=q).map(|i| format!("X{i}")).collect();
            let rows = rows
                .into_iter()
                .map(|r| r.into_iter().map(|b| if b { -1 } else { 1 }).collect())
                .collect();
            DesignMatrix::new(labels, rows).unwrap()
        })
}

/// A set of distinct runs drawn from the full `2^q` factorial.
fn distinct_rows(max_q: usize) -> impl Strategy<Value = DesignMatrix> {
    (1..=max_q)
        .prop_flat_map(|q| {
            let cells: Vec<u32> = (0..1u32 << q).collect();
            let size = 1..=cells.len();
            (Just(q), prop::sample::subsequence(cells, size))
        })
        .prop_map(|(q, cells)| {
            let labels = (1..=q).map(|i| format!("X{i}")).collect();
            let rows = cells
                .into_iter()
                .map(|x| (0..q).map(|c| if x >> c & 1 == 1 { -1 } else { 1 }).collect())
                .collect();
            DesignMatrix::new(labels, rows).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn realize_round_trip(l in lambda(8)) {
        let (u, v) = realize_lambda(&l).unwrap();
        prop_assert_eq!(lambda_profile(&frequencies(&u, &v).unwrap()), l);
    }

    #[test]
    fn rows_are_distinct(s in spec(4)) {
        let d = build_design(&s);
        prop_assert_eq!(d.runs(), s.runs());
        prop_assert!(d.has_distinct_rows());
    }

    #[test]
    fn gray_columns_follow_row_index(s in spec(4)) {
        let d = build_design(&s);
        let n = s.n();
        for r in 0..d.runs() {
            for j in 1..=n {
                let a = ((r >> (2 * (n - j))) & 3) as u8;
                let (x, y) = gray_pair(a);
                let c1 = d.column_index(&format!("F{j}1")).unwrap();
                let c2 = d.column_index(&format!("F{j}2")).unwrap();
                prop_assert_eq!((d.row(r)[c1], d.row(r)[c2]), (x, y));
            }
        }
    }

    #[test]
    fn transform_matches_direct_sums(d in random_design(8)) {
        let j = j_characteristics(&d).unwrap();
        for s in 0..1u64 << d.factors() {
            prop_assert_eq!(j.get(s), j_direct(&d, s));
        }
    }

    /// Reordering coordinates and swapping patterns within a lambda class
    /// leaves the spectrum unchanged.
    #[test]
    fn lambda_determines_spectrum(s in spec(4), picks in prop::collection::vec(0usize..2, 4), shift in 0usize..4) {
        let n = s.n();
        let mut pairs: Vec<(u8, u8)> = s.u().iter().copied().zip(s.v().iter().copied()).collect();
        pairs.rotate_left(shift % n);
        for (pair, pick) in pairs.iter_mut().zip(&picks) {
            let class = LAMBDA_CLASSES.iter().find(|c| c.contains(pair)).unwrap();
            *pair = class[pick % class.len()];
        }
        let (u, v): (Vec<u8>, Vec<u8>) = pairs.into_iter().unzip();
        let twin = GeneratorSpec::new(s.family(), u, v, s.branch()).unwrap();
        prop_assert_eq!(twin.lambda(), s.lambda());
        prop_assert_eq!(
            spectrum_bruteforce(&build_design(&twin)).unwrap(),
            spectrum_bruteforce(&build_design(&s)).unwrap()
        );
    }

    #[test]
    fn theory_matches_oracle(s in spec(4)) {
        let predicted = theory_spectrum(s.family(), &s.lambda(), s.branch()).unwrap();
        prop_assert_eq!(spectrum_bruteforce(&build_design(&s)).unwrap(), predicted);
    }

    #[test]
    fn parseval(s in spec(4)) {
        prop_assert_eq!(common::parseval(&build_design(&s)), Ok(()));
    }

    #[test]
    fn parseval_on_arbitrary_distinct_rows(d in distinct_rows(6)) {
        prop_assert_eq!(common::parseval(&d), Ok(()));
    }

    #[test]
    fn deletion_restriction(s in spec(3)) {
        prop_assert_eq!(common::deletion_restriction(&s), Ok(()));
    }

    #[test]
    fn four_way_deletion(s in spec(3)) {
        prop_assert_eq!(common::four_way_deletion(&s), Ok(()));
    }

    #[test]
    fn projectivity_bounds_and_monotonicity(s in spec(3)) {
        prop_assert_eq!(common::projectivity_properties(&build_design(&s)), Ok(()));
    }
}
