//! Td over the (lambda, theta) plane at phase pi, written as CSV.
//!
//!     cargo run --release --example witness_surface -- surface.csv
use correlation_probe::sweep::{run_sweep, write_sweep_csv, Quantity, SweepSpec};

fn main() -> correlation_probe::Result<()> {
    let spec = SweepSpec {
        quantity: Some(Quantity::Td),
        ..SweepSpec::default()
    };
    let rows = run_sweep(&spec)?;
    match std::env::args().nth(1) {
        Some(path) => {
            let mut f = std::io::BufWriter::new(std::fs::File::create(&path)?);
            write_sweep_csv(&mut f, &spec, &rows)?;
            println!("{} rows written to {path}", rows.len());
        }
        None => write_sweep_csv(&mut std::io::stdout().lock(), &spec, &rows)?,
    }
    Ok(())
}
