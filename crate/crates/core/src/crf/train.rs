use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::scalar::Real;
use crate::tagsets::NeTag;

use super::features::Observation;
use super::model::{label_alphabet, Compiled, CrfModel};
use super::template::FeatureTemplate;
use super::CrfError;

pub const DEFAULT_SEED: u64 = 20_220_722;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Coefficient of `(l2 / 2) * |w|^2` in the objective.
    pub l2_strength: f64,
    pub epochs: usize,
    pub learning_rate: f64,
    pub batch_size: usize,
    pub shuffle_seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            l2_strength: 0.1,
            epochs: 30,
            learning_rate: 0.5,
            batch_size: 8,
            shuffle_seed: DEFAULT_SEED,
        }
    }
}

impl TrainConfig {
    pub fn check(&self) -> Result<(), CrfError> {
        let bad = |m: &str| Err(CrfError::Config(m.to_owned()));
        if self.epochs < 1 {
            return bad("epochs must be at least 1");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning rate must be positive");
        }
        if !(self.l2_strength >= 0.0 && self.l2_strength.is_finite()) {
            return bad("L2 strength must be non-negative");
        }
        if self.batch_size < 1 {
            return bad("batch size must be at least 1");
        }
        Ok(())
    }
}

/// A training pair.
pub type Example = (Vec<Observation>, Vec<NeTag>);

/// Negative log-likelihood of one sentence; adds its gradient into `grad`.
fn sentence_nll<F: Real>(
    model: &CrfModel<F>,
    c: &Compiled,
    gold: &[usize],
    grad: &mut Vec<(usize, F)>,
) -> F {
    let l = model.lattice(c);
    let (n, k) = (l.n, l.k);
    if n == 0 {
        return F::zero();
    }
    let (alpha, log_z) = l.forward();
    let beta = l.backward();
    for i in 0..n {
        for y in 0..k {
            let p = (alpha[i * k + y] + beta[i * k + y] - log_z).exp();
            for &o in &c.unigram[i] {
                grad.push((o + y, p));
            }
        }
        for &o in &c.unigram[i] {
            grad.push((o + gold[i], -F::one()));
        }
        if i == 0 {
            continue;
        }
        for prev in 0..k {
            for y in 0..k {
                let p = (alpha[(i - 1) * k + prev] + l.t(i, prev, y) + l.e(i, y) + beta[i * k + y]
                    - log_z)
                    .exp();
                let j = prev * k + y;
                grad.push((j, p));
                for &o in &c.bigram[i] {
                    grad.push((o + j, p));
                }
            }
        }
        let j = gold[i - 1] * k + gold[i];
        grad.push((j, -F::one()));
        for &o in &c.bigram[i] {
            grad.push((o + j, -F::one()));
        }
    }
    log_z - l.score(gold)
}

fn compile_batch<F: Real>(
    model: &CrfModel<F>,
    batch: &[Example],
) -> Result<Vec<(Compiled, Vec<usize>)>, CrfError> {
    batch
        .iter()
        .map(|(x, y)| {
            if x.len() != y.len() {
                return Err(CrfError::Length {
                    tokens: x.len(),
                    tags: y.len(),
                });
            }
            Ok((model.compile(x), model.label_indices(y)?))
        })
        .collect()
}

/// Sum of per-sentence NLL plus `(l2 / 2) |w|^2`, and its gradient. Sentences
/// are processed in parallel and summed in input order.
fn objective<F: Real>(model: &CrfModel<F>, data: &[(Compiled, Vec<usize>)], l2: F) -> (F, Vec<F>) {
    let parts: Vec<(F, Vec<(usize, F)>)> = data
        .par_iter()
        .map(|(c, gold)| {
            let mut g = Vec::new();
            let nll = sentence_nll(model, c, gold, &mut g);
            (nll, g)
        })
        .collect();
    let mut grad: Vec<F> = model.weights.iter().map(|&w| l2 * w).collect();
    let half = F::lit(0.5);
    let mut loss = half * l2 * model.weights.iter().map(|&w| w * w).sum::<F>();
    for (nll, g) in parts {
        loss += nll;
        for (j, v) in g {
            grad[j] += v;
        }
    }
    (loss, grad)
}

/// Negative log-likelihood of `batch` with an L2 penalty of strength `l2`,
/// and its gradient with respect to `model.weights`.
pub fn log_likelihood_and_gradient<F: Real>(
    model: &CrfModel<F>,
    batch: &[Example],
    l2: F,
) -> Result<(F, Vec<F>), CrfError> {
    let data = compile_batch(model, batch)?;
    Ok(objective(model, &data, l2))
}

/// Builds the alphabet and attribute index from `corpus`, then fits the
/// weights by mini-batch gradient descent with L2 regularization.
/// Identical inputs and seed give bit-identical models.
pub fn train<F: Real>(
    corpus: &[Example],
    template: FeatureTemplate,
    config: &TrainConfig,
) -> Result<CrfModel<F>, CrfError> {
    config.check()?;
    if corpus.is_empty() {
        return Err(CrfError::EmptyCorpus);
    }
    let labels = label_alphabet(corpus.iter().flat_map(|(_, y)| y));
    let mut model = CrfModel::new(template, labels);
    for (x, _) in corpus {
        model.add_attributes(x);
    }
    let data = compile_batch(&model, corpus)?;
    let n = data.len();
    let l2 = F::lit(config.l2_strength);
    let lr = F::lit(config.learning_rate);
    let mut rng = ChaCha8Rng::seed_from_u64(config.shuffle_seed);
    let mut order: Vec<usize> = (0..n).collect();
    let mut history: Vec<f64> = Vec::with_capacity(config.epochs);

    for epoch in 0..config.epochs {
        order.shuffle(&mut rng);
        for batch in order.chunks(config.batch_size) {
            let parts: Vec<Vec<(usize, F)>> = batch
                .par_iter()
                .map(|&s| {
                    let mut g = Vec::new();
                    sentence_nll(&model, &data[s].0, &data[s].1, &mut g);
                    g
                })
                .collect();
            // step on (1/n) * objective: mean batch NLL plus (l2/n)|w|^2/2
            let scale = lr / F::from_usize(batch.len()).expect("batch size fits");
            let shrink = F::one() - lr * l2 / F::from_usize(n).expect("corpus size fits");
            let shrink = shrink.max(F::zero());
            for w in model.weights.iter_mut() {
                *w *= shrink;
            }
            for g in parts {
                for (j, v) in g {
                    model.weights[j] -= scale * v;
                }
            }
        }
        let (loss, _) = objective(&model, &data, l2);
        let loss = loss.to_f64().unwrap_or(f64::NAN);
        log::debug!("epoch {}: objective {loss:.6}", epoch + 1);
        if let Some(&prev) = history.last() {
            if loss > prev * (1.0 + 1e-6) + 1e-9 {
                log::warn!("epoch {}: objective rose from {prev:.6} to {loss:.6}; consider a smaller learning rate", epoch + 1);
            }
        }
        history.push(loss);
    }
    model.metadata.train_config = Some(config.clone());
    model.metadata.epoch_objective = history;
    model.metadata.optimizer =
        "mini-batch gradient descent, L2 weight decay, ChaCha8 shuffling".into();
    Ok(model)
}
