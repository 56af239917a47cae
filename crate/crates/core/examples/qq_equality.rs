//! Random Hilbert models always satisfy `q = 0`, whatever the dimension and
//! projector ranks. `q' = 0` holds for two-dimensional rank-one models only.

use qcog::order::{order_difference_identity_residual, qq_operator_norm};
use qcog::{compute_q, compute_q_prime, predict_table, random_spectral_family, random_state, HilbertTwoQuestionModel};

fn model(dim: usize, ranks_a: &[usize], ranks_b: &[usize], seed: u64) -> qcog::Result<HilbertTwoQuestionModel> {
    HilbertTwoQuestionModel::new(
        random_state(dim, seed)?,
        random_spectral_family(dim, ranks_a, seed + 1)?,
        random_spectral_family(dim, ranks_b, seed + 2)?,
    )
}

fn main() -> qcog::Result<()> {
    let mut max_q: f64 = 0.0;
    let mut max_op: f64 = 0.0;
    let mut max_id: f64 = 0.0;
    for k in 0..200u64 {
        let dim = 2 + (k as usize % 5);
        let ra = 1 + (k as usize / 5) % (dim - 1);
        let rb = 1 + (k as usize / 7) % (dim - 1);
        let m = model(dim, &[ra, dim - ra], &[rb, dim - rb], 3 * k)?;
        max_q = max_q.max(compute_q(&predict_table(&m)?).abs());
        let (a, b) = (m.family_a.projector(0)?, m.family_b.projector(0)?);
        max_op = max_op.max(qq_operator_norm(a, b)?);
        max_id = max_id.max(order_difference_identity_residual(a, b)?);
    }
    println!("200 random models, dims 2-6:");
    println!("  max |q|                      {max_q:.2e}");
    println!("  max QQ operator norm         {max_op:.2e}");
    println!("  max order-identity residual  {max_id:.2e}");

    let mut max_qp_2d: f64 = 0.0;
    for k in 0..200u64 {
        let m = model(2, &[1, 1], &[1, 1], 3 * k)?;
        max_qp_2d = max_qp_2d.max(compute_q_prime(&predict_table(&m)?).value.abs());
    }
    println!("200 random 2D rank-one models: max |q'| = {max_qp_2d:.2e}");

    let m = model(3, &[1, 2], &[2, 1], 11)?;
    let t = predict_table(&m)?;
    println!(
        "3D model with ranks (1,2)/(2,1): q = {:.2e}, q' = {:.4}",
        compute_q(&t),
        compute_q_prime(&t).value
    );
    Ok(())
}
