//! Fits the Clinton/Gore order-effect data two ways: a two-dimensional
//! Hilbert model, which cannot be exact because it forces `q = q' = 0`, and
//! interval ρ-membranes, which reproduce the table.
//!
//! Run with `cargo run --release --example fit_clinton_gore`.

use qcog::bloch::{fit_membrane, predict_membrane_table};
use qcog::bloch::model::model_from_report;
use qcog::{compute_q, compute_q_prime, fit_hilbert_2d, FitConfig, SequentialTable};

fn main() -> qcog::Result<()> {
    let table = SequentialTable::clinton_gore();
    let config = FitConfig::default();

    let hilbert = fit_hilbert_2d(&table, &config)?;
    println!("Hilbert 2D fit");
    println!("  residual     {:.6}", hilbert.residual);
    println!("  q, q'        {:.2e}, {:.2e}", compute_q(&hilbert.predicted), compute_q_prime(&hilbert.predicted).value);

    let membrane = fit_membrane(&table, &config)?;
    println!("Interval-membrane fit");
    println!("  residual     {:.3e}", membrane.residual);
    for (name, value) in &membrane.parameters {
        println!("  {name:<12} {value:.6}");
    }
    let model = model_from_report(&membrane, table.questions.clone())?;
    let predicted = predict_membrane_table(&model)?;
    println!("  q, q'        {:.5}, {:.5}", compute_q(&predicted), compute_q_prime(&predicted).value);
    println!("  data q, q'   {:.5}, {:.5}", compute_q(&table), compute_q_prime(&table).value);
    Ok(())
}
