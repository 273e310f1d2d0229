//! Chart inputs behind the committed golden SVG files.

use eda_core::assoc::correlation_matrix;
use eda_core::stats::{histogram, summarize, BinSpec, FrequencyTable};
use eda_core::viz::{
    plot_bar, plot_box, plot_grouped_bar, plot_heatmap, plot_histogram, plot_scatter,
};
use eda_core::{Column, CorrelationMethod, SvgDoc, Table};

fn sample() -> Vec<f64> {
    (0..60).map(|i| ((i * 37) % 23) as f64 * 1.5 + (i % 7) as f64).collect()
}

pub fn documents() -> Vec<(&'static str, SvgDoc)> {
    let v = sample();
    let h = histogram(v.as_slice(), BinSpec::Auto).unwrap();
    let s = summarize(&[1.0, 2.0, 3.0, 4.0, 100.0][..]).unwrap();
    let f = FrequencyTable::from_counts(vec![
        ("France".into(), 5014),
        ("Germany".into(), 2509),
        ("Spain & <Islands>".into(), 2477),
    ]);
    let x = Column::from_f64s("x", &v);
    let y = Column::numeric("y", v.iter().enumerate().map(|(i, a)| (i % 9 != 0).then_some(a * 0.5 - i as f64)));
    let t = Table::new(
        "t",
        vec![
            x.clone(),
            y.clone(),
            Column::from_f64s("flat", &[2.0; 60]),
            Column::boolean("b", (0..60).map(|i| Some(i % 3 == 0))),
        ],
    )
    .unwrap();
    let m = correlation_matrix(&t, CorrelationMethod::Pearson).unwrap();
    vec![
        ("histogram", plot_histogram(&h, "Histogram")),
        ("box", plot_box(&s, 1.5, &[100.0], "Box plot")),
        ("bar", plot_bar(&f, "Bar chart").unwrap()),
        ("scatter", plot_scatter(&x, &y, "Scatter").unwrap()),
        ("heatmap", plot_heatmap(&m, "Heatmap")),
        (
            "grouped_bar",
            plot_grouped_bar(
                &["A".into(), "B".into()],
                &["Retained".into(), "Exited".into()],
                &[vec![10.0, 3.0], vec![8.0, 5.0]],
                "Grouped",
            )
            .unwrap(),
        ),
    ]
}
