//! Writes the synthetic churn fixture:
//! `cargo run -p eda-core --example gen_fixture -- [PATH] [ROWS]`
//! (defaults `fixtures/churn_fixture.csv`, 200 rows).

use std::fs::File;
use std::io::BufWriter;

use eda_core::report::synthetic_churn;
use eda_core::table::write_csv;

fn main() -> eda_core::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "fixtures/churn_fixture.csv".into());
    let rows = match std::env::args().nth(2) {
        Some(r) => r
            .parse()
            .map_err(|_| eda_core::EdaError::InvalidParameter(format!("row count `{r}`")))?,
        None => 200,
    };
    let t = synthetic_churn(rows, eda_core::DEFAULT_SEED)?;
    write_csv(&t, BufWriter::new(File::create(&path)?), b',')?;
    eprintln!("wrote {} rows to {path}", t.row_count());
    Ok(())
}
