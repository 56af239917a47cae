//! Question-order diagnostics for the Clinton/Gore honesty survey.
//!
//! Run with `cargo run --example clinton_gore_diagnostics`.

use qcog::order::Q_PRIME_MAX;
use qcog::{compute_q, compute_q_prime, conditional_probabilities, SequentialTable};

fn main() -> qcog::Result<()> {
    let t = SequentialTable::clinton_gore();
    let [c, g] = &t.questions;
    println!("order {c}{g}: {:?}", t.order_ab.as_array());
    println!("order {g}{c}: {:?}", t.order_ba.as_array());

    let q = compute_q(&t);
    let qp = compute_q_prime(&t);
    println!("q  = {q:.4}");
    println!("q' = {:.4}  ({:.1}% of the maximum {Q_PRIME_MAX})", qp.value, 100.0 * qp.ratio_to_max.abs());

    let cond = conditional_probabilities(&t)?;
    println!("P({g}y | {c}y) = {:.4}", cond.order_ab.yes_given_yes);
    println!("P({c}y | {g}y) = {:.4}", cond.order_ba.yes_given_yes);
    println!(
        "P({c}y): first {:.4}, second {:.4}",
        t.order_ab.first_yes(),
        t.order_ba.yy + t.order_ba.ny
    );
    println!(
        "P({g}y): first {:.4}, second {:.4}",
        t.order_ba.first_yes(),
        t.order_ab.yy + t.order_ab.ny
    );
    Ok(())
}
