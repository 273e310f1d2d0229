mod oracle;

use eda_core::reduce::{fit_pca, fit_pca_with, reconstruct, transform_pca, PcaOptions};
use eda_core::Matrix;
use proptest::prelude::*;

fn data() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (1usize..=6).prop_flat_map(|d| {
        prop::collection::vec(prop::collection::vec(-10.0..10.0f64, d), (d + 2)..40)
    })
}

fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

proptest! {
    #[test]
    fn orthonormal_and_eigen_oracle(rows in data()) {
        let d = rows[0].len();
        let x = Matrix::from_rows(&rows).unwrap();
        let m = fit_pca(&x, d).unwrap();
        let gram = m.components.matmul(&m.components.transpose()).unwrap();
        prop_assert!(max_abs_diff(&gram, &Matrix::identity(d)) <= 1e-8);
        let ev = oracle::covariance_eigenvalues(&rows);
        for (a, b) in m.explained_variance.iter().zip(&ev) {
            prop_assert!((a - b.max(0.0)).abs() <= 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn full_rank_roundtrip(rows in data(), standardize in any::<bool>()) {
        let d = rows[0].len();
        let x = Matrix::from_rows(&rows).unwrap();
        let m = fit_pca_with(&x, d, PcaOptions { standardize }).unwrap();
        let back = reconstruct(&m, &transform_pca(&m, &x).unwrap()).unwrap();
        prop_assert!(max_abs_diff(&back, &x) <= 1e-8);
    }

    #[test]
    fn more_components_reconstruct_better(rows in data()) {
        let d = rows[0].len();
        let x = Matrix::from_rows(&rows).unwrap();
        let mut last = f64::INFINITY;
        for k in 1..=d {
            let m = fit_pca(&x, k).unwrap();
            let err = reconstruct(&m, &transform_pca(&m, &x).unwrap())
                .unwrap()
                .frobenius_distance(&x);
            prop_assert!(err <= last + 1e-9);
            last = err;
        }
    }

    #[test]
    fn rank_one_explains_everything(t in prop::collection::vec(-5.0..5.0f64, 3..50), dir in prop::collection::vec(-3.0..3.0f64, 2..6)) {
        prop_assume!(t.iter().any(|v| *v != t[0]) && dir.iter().any(|v| v.abs() > 0.1));
        let rows: Vec<Vec<f64>> = t.iter().map(|s| dir.iter().map(|a| s * a).collect()).collect();
        let m = fit_pca(&Matrix::from_rows(&rows).unwrap(), 1).unwrap();
        prop_assert!((m.explained_ratio[0] - 1.0).abs() <= 1e-12);
    }
}
