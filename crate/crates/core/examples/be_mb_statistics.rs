//! Occupation statistics of identical concepts: Maxwell-Boltzmann for
//! distinguishable entities, Bose-Einstein for indistinguishable ones.

use qcog::fock::identical_concepts_distributions;
use qcog::fock::occupation::DEFAULT_CONFIGURATION_CAP;

fn main() -> qcog::Result<()> {
    let counts = [30u64, 38, 32];
    let d = identical_concepts_distributions(2, 2, Some(&counts), DEFAULT_CONFIGURATION_CAP)?;
    println!("N = 2 entities, M = 2 cells");
    println!("configuration   MB       BE       observed");
    for (k, c) in d.configurations.iter().enumerate() {
        println!("{:<15} {:.4}   {:.4}   {}", format!("{c:?}"), d.maxwell_boltzmann[k], d.bose_einstein[k], counts[k]);
    }
    if let Some((mb, be)) = d.log_likelihood {
        println!("log-likelihood: MB {mb:.3}, BE {be:.3}");
    }

    let big = identical_concepts_distributions(5, 4, None, DEFAULT_CONFIGURATION_CAP)?;
    println!(
        "N = 5, M = 4: {} configurations, MB sum {:.12}, BE sum {:.12}",
        big.configurations.len(),
        big.maxwell_boltzmann.iter().sum::<f64>(),
        big.bose_einstein.iter().sum::<f64>()
    );
    Ok(())
}
