mod oracle;

use eda_core::assoc::{
    correlate, correlation_matrix, kendall_of, pearson_of, phi, point_biserial, spearman_of,
};
use eda_core::{Column, CorrelationMethod, Table};
use proptest::prelude::*;

fn pair(max: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (3usize..max).prop_flat_map(|n| {
        let v = || {
            prop_oneof![
                prop::collection::vec(-100.0..100.0f64, n),
                prop::collection::vec((-5i32..5).prop_map(f64::from), n),
            ]
        };
        (v(), v())
    })
}

fn spread(v: &[f64]) -> bool {
    v.iter().any(|x| *x != v[0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn spearman_is_pearson_on_ranks((x, y) in pair(200)) {
        prop_assume!(spread(&x) && spread(&y));
        let expect = pearson_of(&oracle::ranks(&x), &oracle::ranks(&y)).unwrap();
        prop_assert_eq!(spearman_of(&x, &y).unwrap(), expect);
    }

    #[test]
    fn kendall_matches_pair_count((x, y) in pair(100)) {
        prop_assume!(spread(&x) && spread(&y));
        prop_assert_eq!(kendall_of(&x, &y).unwrap(), oracle::kendall(&x, &y));
    }

    #[test]
    fn coded_identities((_, y) in pair(200), bits in prop::collection::vec(any::<bool>(), 200), bits2 in prop::collection::vec(any::<bool>(), 200)) {
        let n = y.len();
        let b: Vec<bool> = bits[..n].to_vec();
        let b2: Vec<bool> = bits2[..n].to_vec();
        let code = |v: &[bool]| v.iter().map(|&t| if t { 1.0 } else { 0.0 }).collect::<Vec<_>>();
        prop_assume!(spread(&code(&b)) && spread(&code(&b2)) && spread(&y));
        let bc = Column::boolean("b", b.iter().map(|&t| Some(t)));
        let bc2 = Column::boolean("c", b2.iter().map(|&t| Some(t)));
        let yc = Column::from_f64s("y", &y);
        let pb = point_biserial(&bc, &yc).unwrap();
        prop_assert!((pb - oracle::pearson(&code(&b), &y)).abs() <= 1e-12);
        let ph = phi(&bc, &bc2).unwrap();
        prop_assert!((ph - oracle::pearson(&code(&b), &code(&b2))).abs() <= 1e-12);
    }

    #[test]
    fn affine_and_monotone_invariance((x, y) in pair(120), a in 0.1..10.0f64, c in -50.0..50.0f64) {
        prop_assume!(spread(&x) && spread(&y));
        let ax: Vec<f64> = x.iter().map(|v| a * v + c).collect();
        let r = pearson_of(&x, &y).unwrap();
        prop_assert!((pearson_of(&ax, &y).unwrap() - r).abs() <= 1e-12);
        // x^3 + x is strictly increasing and exact on these magnitudes for integers
        let ints: Vec<f64> = x.iter().map(|v| v.round()).collect();
        prop_assume!(spread(&ints));
        let cubed: Vec<f64> = ints.iter().map(|v| v * v * v + v).collect();
        prop_assert_eq!(spearman_of(&cubed, &y).unwrap(), spearman_of(&ints, &y).unwrap());
        prop_assert_eq!(kendall_of(&cubed, &y).unwrap(), kendall_of(&ints, &y).unwrap());
    }

    #[test]
    fn matrix_matches_pairwise_calls(
        cols in prop::collection::vec(prop::collection::vec(prop::option::weighted(0.9, -3i32..3), 12), 2..5),
        method in prop_oneof![Just(CorrelationMethod::Pearson), Just(CorrelationMethod::Spearman), Just(CorrelationMethod::Kendall)],
    ) {
        let columns: Vec<Column> = cols
            .iter()
            .enumerate()
            .map(|(i, c)| Column::numeric(format!("c{i}"), c.iter().map(|v| v.map(f64::from))))
            .collect();
        let t = Table::new("t", columns.clone()).unwrap();
        let m = correlation_matrix(&t, method).unwrap();
        for i in 0..columns.len() {
            for j in 0..columns.len() {
                let direct = correlate(&columns[i], &columns[j], method).ok();
                if i == j {
                    prop_assert_eq!(m.values[i][j], direct.map(|_| 1.0));
                } else {
                    prop_assert_eq!(m.values[i][j], direct);
                }
            }
        }
    }
}
