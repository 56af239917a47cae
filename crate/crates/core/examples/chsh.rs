//! CHSH values for the optimal singlet-like correlations and for every
//! deterministic classical strategy.

use std::f64::consts::PI;

use qcog::fock::{chsh_value, JointCorrelationSet, JointTable};

fn main() -> qcog::Result<()> {
    let a = [0.0, PI / 2.0];
    let b = [PI / 4.0, -PI / 4.0];
    let mut e = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            e[i][j] = (a[i] - b[j]).cos();
        }
    }
    let r = chsh_value(&JointCorrelationSet::from_expectations(e)?);
    println!("singlet-like: S = {:.12} (2 sqrt 2 = {:.12}), violated {}", r.s, 2.0 * 2f64.sqrt(), r.violated);

    let mut max_s: f64 = 0.0;
    for bits in 0..16u8 {
        let (a1, a2, b1, b2) = (bits & 1 != 0, bits & 2 != 0, bits & 4 != 0, bits & 8 != 0);
        let t = [
            [JointTable::deterministic(a1, b1), JointTable::deterministic(a1, b2)],
            [JointTable::deterministic(a2, b1), JointTable::deterministic(a2, b2)],
        ];
        max_s = max_s.max(chsh_value(&JointCorrelationSet::from_tables(t)?).s.abs());
    }
    println!("largest |S| over 16 deterministic strategies: {max_s}");
    Ok(())
}
