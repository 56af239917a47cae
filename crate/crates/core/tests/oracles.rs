//! Library results against independent computations.

use qcog::bloch::membrane::{membrane_cdf, sample_collapses, Answer, RhoMembrane};
use qcog::bloch::replicability::exact_sequence_distribution;
use qcog::bloch::{predict_membrane_table, simulate_replicability, MembraneTwoQuestionModel, MemoryPolicy};
use qcog::{
    predict_table, random_spectral_family, random_state, sequential_probability, HilbertTwoQuestionModel,
    CMatrix,
};

/// `<A| M_1 ... M_k ... M_1 |A>` written out with explicit matrices.
fn sandwich(state: &qcog::StateVector, ms: &[&CMatrix]) -> f64 {
    let mut v = state.amplitudes().clone();
    for m in ms {
        v = *m * v;
    }
    v.dotc(&v).re
}

#[test]
fn sequential_probability_matches_operator_sandwich() {
    for seed in 0..50u64 {
        let dim = 2 + (seed as usize % 4);
        let s = random_state(dim, seed).unwrap();
        let a = random_spectral_family(dim, &[1, dim - 1], seed + 100).unwrap();
        let b = random_spectral_family(dim, &vec![1; dim], seed + 200).unwrap();
        for i in 0..2 {
            for j in 0..dim {
                let got = sequential_probability(&s, &[(&a, i), (&b, j), (&a, i)]).unwrap();
                let want = sandwich(
                    &s,
                    &[a.projector(i).unwrap().matrix(), b.projector(j).unwrap().matrix(), a.projector(i).unwrap().matrix()],
                );
                assert!((got - want).abs() < 1e-12, "{got} vs {want}");
            }
        }
    }
}

#[test]
fn predicted_table_matches_sandwich() {
    let m = HilbertTwoQuestionModel::new(
        random_state(4, 5).unwrap(),
        random_spectral_family(4, &[2, 2], 6).unwrap(),
        random_spectral_family(4, &[3, 1], 7).unwrap(),
    )
    .unwrap();
    let t = predict_table(&m).unwrap();
    let pa = |k: usize| m.family_a.projector(k).unwrap().matrix().clone();
    let pb = |k: usize| m.family_b.projector(k).unwrap().matrix().clone();
    let ab = [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(i, j)| sandwich(&m.state, &[&pa(i), &pb(j)]));
    let ba = [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(i, j)| sandwich(&m.state, &[&pb(i), &pa(j)]));
    for (x, y) in t.order_ab.as_array().iter().zip(ab) {
        assert!((x - y).abs() < 1e-12);
    }
    for (x, y) in t.order_ba.as_array().iter().zip(ba) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn sampled_collapses_match_cdf() {
    let draws = 1_000_000;
    let cases = [
        (RhoMembrane::Uniform, 0.3),
        (RhoMembrane::interval(-0.4, 0.2).unwrap(), -0.1),
        (RhoMembrane::piecewise(vec![-1.0, 0.0, 0.5, 1.0], vec![0.2, 0.5, 0.3]).unwrap(), 0.25),
    ];
    for (k, (m, e)) in cases.iter().enumerate() {
        let p = membrane_cdf(m, *e).unwrap();
        let yes = sample_collapses(*e, m, draws, 90 + k as u64)
            .unwrap()
            .iter()
            .filter(|a| **a == Answer::Yes)
            .count() as f64
            / draws as f64;
        let sigma = (p * (1.0 - p) / draws as f64).sqrt();
        assert!((yes - p).abs() <= 3.0 * sigma, "{yes} vs {p} (3 sigma = {})", 3.0 * sigma);
        assert!((yes - p).abs() < 0.002);
    }
}

#[test]
fn membrane_table_matches_outcome_tree() {
    // Hand-built tree: first answer from the state, second from the vertex
    // of the first question, where the coordinate is ±gamma.
    let m = MembraneTwoQuestionModel::new(
        ["C".into(), "G".into()],
        0.3,
        -0.2,
        0.45,
        RhoMembrane::interval(-0.6, 0.8).unwrap(),
        RhoMembrane::interval(-0.9, 0.1).unwrap(),
    )
    .unwrap();
    let cdf = |mem: &RhoMembrane, e: f64| membrane_cdf(mem, e).unwrap();
    let t = predict_membrane_table(&m).unwrap();
    let (ma, mb, g) = (&m.membrane_a, &m.membrane_b, m.gamma);
    let pa = cdf(ma, m.e_a);
    let ab = [
        pa * cdf(mb, g),
        pa * (1.0 - cdf(mb, g)),
        (1.0 - pa) * cdf(mb, -g),
        (1.0 - pa) * (1.0 - cdf(mb, -g)),
    ];
    let pb = cdf(mb, m.e_b);
    let ba = [
        pb * cdf(ma, g),
        pb * (1.0 - cdf(ma, g)),
        (1.0 - pb) * cdf(ma, -g),
        (1.0 - pb) * (1.0 - cdf(ma, -g)),
    ];
    for (x, y) in t.order_ab.as_array().iter().chain(&t.order_ba.as_array()).zip(ab.iter().chain(&ba)) {
        assert!((x - y).abs() < 1e-15);
    }
}

#[test]
fn replicability_tree_and_simulation_agree() {
    let m = MembraneTwoQuestionModel::uniform(["C".into(), "G".into()], 0.25, -0.35, 0.6).unwrap();
    let seq = ["G", "C", "G"];
    let half = |x: f64| 0.5 * (1.0 + x);
    let exact = exact_sequence_distribution(&m, &seq, MemoryPolicy::Memoryless).unwrap();
    for (answers, p) in &exact {
        let s: Vec<f64> = answers.chars().map(|c| if c == 'y' { 1.0 } else { -1.0 }).collect();
        let want = half(s[0] * m.e_b) * half(s[0] * s[1] * m.gamma) * half(s[1] * s[2] * m.gamma);
        assert!((p - want).abs() < 1e-14, "{answers}: {p} vs {want}");
    }
    let n = 40_000;
    let sim = simulate_replicability(&m, &seq, n, MemoryPolicy::Memoryless, 3).unwrap();
    for (answers, p) in &exact {
        let sigma = (p * (1.0 - p) / n as f64).sqrt();
        assert!((sim.frequency(answers) - p).abs() <= 4.0 * sigma, "{answers}");
    }

    let memory = exact_sequence_distribution(&m, &seq, MemoryPolicy::Memory).unwrap();
    for (answers, p) in &memory {
        let b = answers.as_bytes();
        assert_eq!(b[0], b[2]);
        let s1 = if b[0] == b'y' { 1.0 } else { -1.0 };
        let s2 = if b[1] == b'y' { 1.0 } else { -1.0 };
        assert!((p - half(s1 * m.e_b) * half(s1 * s2 * m.gamma)).abs() < 1e-14);
    }
}
