//! Averaging the collapse probability over randomly drawn membranes recovers
//! the Born value `(1 + e) / 2`.
//!
//! Run with `cargo run --release --example universal_measurement`.

use qcog::bloch::membrane::{membrane_cdf, universal_measurement_probability, RhoMembrane};

fn main() -> qcog::Result<()> {
    let interval = RhoMembrane::interval(-0.2, 0.6)?;
    println!("single membranes at e = 0.3:");
    println!("  uniform      P(yes) = {:.4}", membrane_cdf(&RhoMembrane::Uniform, 0.3)?);
    println!("  [-0.2, 0.6]  P(yes) = {:.4}", membrane_cdf(&interval, 0.3)?);

    println!("\n     e    average   std err   Born");
    for i in 0..=10 {
        let e = -1.0 + 0.2 * i as f64;
        let est = universal_measurement_probability(e, 100_000, 2024 + i as u64)?;
        println!("{e:6.2}   {:.5}   {:.5}   {:.5}", est.mean, est.std_error, 0.5 * (1.0 + e));
    }
    Ok(())
}
