//! Asking G, then C, then G again. With memory the repeated answer always
//! agrees. Without memory the second G is a fresh collapse and agreement
//! drops to `(1 + gamma^2) / 2` for uniform membranes.

use qcog::bloch::replicability::exact_sequence_distribution;
use qcog::bloch::{simulate_replicability, MembraneTwoQuestionModel, MemoryPolicy};

fn main() -> qcog::Result<()> {
    let gamma = 0.6;
    let model = MembraneTwoQuestionModel::uniform(["C".into(), "G".into()], 0.1, 0.5, gamma)?;
    let seq = ["G", "C", "G"];
    for policy in [MemoryPolicy::Memory, MemoryPolicy::Memoryless] {
        let stats = simulate_replicability(&model, &seq, 10_000, policy, 42)?;
        println!("{policy:?}: agreement {:.4}", stats.first_repeat_agreement().unwrap_or(f64::NAN));
        let exact = exact_sequence_distribution(&model, &seq, policy)?;
        for (answers, p) in &exact {
            println!("  {answers}  simulated {:.4}  exact {p:.4}", stats.frequency(answers));
        }
    }
    println!("analytic memoryless agreement {:.4}", 0.5 * (1.0 + gamma * gamma));
    Ok(())
}
