//! Response replicability for repeated questions.
//!
//! Participants answer a sequence of questions one after another. With
//! [`MemoryPolicy::Memoryless`] every answer is a fresh membrane collapse
//! from wherever the previous collapse left the particle. With
//! [`MemoryPolicy::Memory`], once a participant has answered a question, that
//! question's membrane is replaced for that participant by a degenerate one
//! which returns the earlier answer from any state.

use std::collections::BTreeMap;

use super::membrane::{membrane_cdf, sample_collapse_with, Answer};
use super::model::MembraneTwoQuestionModel;
use crate::error::{Error, Result};
use crate::rng::stream_rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemoryPolicy {
    Memory,
    Memoryless,
}

/// Where the particle sits between questions.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Particle {
    Initial,
    Vertex { question: usize, answer: Answer },
}

impl Particle {
    fn coordinate(self, model: &MembraneTwoQuestionModel, question: usize) -> f64 {
        match self {
            Particle::Initial => model.coordinate(question),
            Particle::Vertex { question: q, answer } if q == question => answer.vertex(),
            Particle::Vertex { answer, .. } => answer.vertex() * model.gamma,
        }
    }
}

/// Agreement between two positions of the sequence that ask the same question.
#[derive(Debug, Clone, PartialEq)]
pub struct RepeatAgreement {
    pub question: String,
    pub first_position: usize,
    pub second_position: usize,
    pub agreement: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplicabilityStats {
    pub sequence: Vec<String>,
    pub participants: usize,
    /// Answer strings such as `"yny"` with their counts.
    pub counts: BTreeMap<String, usize>,
    pub repeats: Vec<RepeatAgreement>,
}

impl ReplicabilityStats {
    pub fn frequency(&self, answers: &str) -> f64 {
        *self.counts.get(answers).unwrap_or(&0) as f64 / self.participants as f64
    }

    /// Agreement between the first and last occurrence of the first repeated
    /// question, if any.
    pub fn first_repeat_agreement(&self) -> Option<f64> {
        self.repeats.first().map(|r| r.agreement)
    }
}

fn resolve_sequence(model: &MembraneTwoQuestionModel, sequence: &[&str]) -> Result<Vec<usize>> {
    if sequence.is_empty() {
        return Err(Error::InvalidArgument("empty question sequence".into()));
    }
    sequence
        .iter()
        .map(|q| {
            model
                .questions
                .iter()
                .position(|m| m == q)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown question {q:?}")))
        })
        .collect()
}

fn repeat_pairs(indices: &[usize]) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..indices.len() {
        for j in (i + 1)..indices.len() {
            if indices[i] == indices[j] {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

fn answer_step<R: rand::Rng>(
    model: &MembraneTwoQuestionModel,
    particle: Particle,
    question: usize,
    remembered: Option<Answer>,
    rng: &mut R,
) -> Result<Answer> {
    if let Some(a) = remembered {
        return Ok(a);
    }
    let e = particle.coordinate(model, question);
    sample_collapse_with(e, model.membrane(question), rng).map(|(a, _)| a)
}

/// Monte Carlo over `participants` independent participants; participant `i`
/// draws from stream `i` of `seed`.
pub fn simulate_replicability(
    model: &MembraneTwoQuestionModel,
    sequence: &[&str],
    participants: usize,
    policy: MemoryPolicy,
    seed: u64,
) -> Result<ReplicabilityStats> {
    if participants == 0 {
        return Err(Error::InvalidArgument("participants must be at least 1".into()));
    }
    model.validate()?;
    let indices = resolve_sequence(model, sequence)?;
    let pairs = repeat_pairs(&indices);
    let mut counts = BTreeMap::new();
    let mut agree = vec![0usize; pairs.len()];

    for p in 0..participants {
        let mut rng = stream_rng(seed, p as u64);
        let mut particle = Particle::Initial;
        let mut memory: [Option<Answer>; 2] = [None, None];
        let mut answers = Vec::with_capacity(indices.len());
        for &q in &indices {
            let remembered = match policy {
                MemoryPolicy::Memory => memory[q],
                MemoryPolicy::Memoryless => None,
            };
            let answer = answer_step(model, particle, q, remembered, &mut rng)?;
            memory[q] = Some(answer);
            particle = Particle::Vertex { question: q, answer };
            answers.push(answer);
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if answers[i] == answers[j] {
                agree[k] += 1;
            }
        }
        let key: String = answers.iter().map(|a| a.letter()).collect();
        *counts.entry(key).or_insert(0) += 1;
    }

    let repeats = pairs
        .iter()
        .zip(agree)
        .map(|(&(i, j), n)| RepeatAgreement {
            question: model.questions[indices[i]].clone(),
            first_position: i,
            second_position: j,
            agreement: n as f64 / participants as f64,
        })
        .collect();
    Ok(ReplicabilityStats {
        sequence: sequence.iter().map(|s| s.to_string()).collect(),
        participants,
        counts,
        repeats,
    })
}

/// Exact distribution over answer strings, by enumerating the outcome tree.
pub fn exact_sequence_distribution(
    model: &MembraneTwoQuestionModel,
    sequence: &[&str],
    policy: MemoryPolicy,
) -> Result<BTreeMap<String, f64>> {
    model.validate()?;
    let indices = resolve_sequence(model, sequence)?;
    let mut out = BTreeMap::new();
    let mut stack = vec![(Particle::Initial, [None, None], String::new(), 1.0f64)];
    while let Some((particle, memory, prefix, weight)) = stack.pop() {
        let step = prefix.len();
        if step == indices.len() {
            *out.entry(prefix).or_insert(0.0) += weight;
            continue;
        }
        let q = indices[step];
        let remembered: Option<Answer> = match policy {
            MemoryPolicy::Memory => memory[q],
            MemoryPolicy::Memoryless => None,
        };
        let p_yes = match remembered {
            Some(a) => {
                if a.is_yes() {
                    1.0
                } else {
                    0.0
                }
            }
            None => membrane_cdf(model.membrane(q), particle.coordinate(model, q))?,
        };
        for (answer, p) in [(Answer::Yes, p_yes), (Answer::No, 1.0 - p_yes)] {
            if p <= 0.0 {
                continue;
            }
            let mut mem = memory;
            mem[q] = Some(answer);
            let mut next = prefix.clone();
            next.push(answer.letter());
            stack.push((Particle::Vertex { question: q, answer }, mem, next, weight * p));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bloch::membrane::RhoMembrane;

    fn model(gamma: f64) -> MembraneTwoQuestionModel {
        MembraneTwoQuestionModel::uniform(["C".into(), "G".into()], 0.1, 0.5, gamma).unwrap()
    }

    #[test]
    fn memory_policy_replicates_exactly() {
        let s = simulate_replicability(&model(0.3), &["G", "C", "G"], 2000, MemoryPolicy::Memory, 1).unwrap();
        assert_eq!(s.first_repeat_agreement(), Some(1.0));
        assert_eq!(s.counts.values().sum::<usize>(), 2000);
    }

    #[test]
    fn aligned_axes_replicate_under_both_policies() {
        let m = MembraneTwoQuestionModel::uniform(["C".into(), "G".into()], 0.4, 0.4, 1.0).unwrap();
        for policy in [MemoryPolicy::Memory, MemoryPolicy::Memoryless] {
            let s = simulate_replicability(&m, &["G", "C", "G"], 1000, policy, 4).unwrap();
            assert_eq!(s.first_repeat_agreement(), Some(1.0));
        }
    }

    #[test]
    fn exact_distribution_sums_to_one() {
        let m = MembraneTwoQuestionModel::new(
            ["C".into(), "G".into()],
            0.1,
            -0.2,
            0.4,
            RhoMembrane::interval(-0.5, 0.6).unwrap(),
            RhoMembrane::Uniform,
        )
        .unwrap();
        for policy in [MemoryPolicy::Memory, MemoryPolicy::Memoryless] {
            let d = exact_sequence_distribution(&m, &["G", "C", "G", "C"], policy).unwrap();
            assert!((d.values().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_unknown_questions() {
        assert!(simulate_replicability(&model(0.2), &["X"], 10, MemoryPolicy::Memory, 0).is_err());
        assert!(simulate_replicability(&model(0.2), &["G"], 0, MemoryPolicy::Memory, 0).is_err());
    }
}
