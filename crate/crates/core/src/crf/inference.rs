use crate::scalar::{log_sum_exp, Real};
use crate::tagsets::{check_transition, NeTag, Scheme};

use super::features::Observation;
use super::model::{Compiled, CrfModel};

/// Scores of one sentence: `emit[i*k + y]` and `trans[(i*k + y')*k + y]`
/// (position 0 has no transition).
#[derive(Clone, Debug)]
pub struct Lattice<F> {
    pub k: usize,
    pub n: usize,
    pub emit: Vec<F>,
    pub trans: Vec<F>,
}

impl<F: Real> Lattice<F> {
    pub fn e(&self, i: usize, y: usize) -> F {
        self.emit[i * self.k + y]
    }

    pub fn t(&self, i: usize, prev: usize, y: usize) -> F {
        self.trans[(i * self.k + prev) * self.k + y]
    }

    /// Unnormalized log score of a label sequence.
    pub fn score(&self, labels: &[usize]) -> F {
        let mut s = F::zero();
        for (i, &y) in labels.iter().enumerate() {
            s += self.e(i, y);
            if i > 0 {
                s += self.t(i, labels[i - 1], y);
            }
        }
        s
    }

    /// Forward log-messages and the log partition function.
    pub fn forward(&self) -> (Vec<F>, F) {
        let (n, k) = (self.n, self.k);
        let mut alpha = vec![F::zero(); n * k];
        if n == 0 {
            return (alpha, F::zero());
        }
        alpha[..k].copy_from_slice(&self.emit[..k]);
        for i in 1..n {
            for y in 0..k {
                let incoming = (0..k).map(|p| alpha[(i - 1) * k + p] + self.t(i, p, y));
                alpha[i * k + y] = self.e(i, y) + log_sum_exp(incoming);
            }
        }
        let log_z = log_sum_exp(alpha[(n - 1) * k..].iter().copied());
        (alpha, log_z)
    }

    pub fn backward(&self) -> Vec<F> {
        let (n, k) = (self.n, self.k);
        let mut beta = vec![F::zero(); n * k];
        for i in (0..n.saturating_sub(1)).rev() {
            for p in 0..k {
                let outgoing =
                    (0..k).map(|y| self.t(i + 1, p, y) + self.e(i + 1, y) + beta[(i + 1) * k + y]);
                beta[i * k + p] = log_sum_exp(outgoing);
            }
        }
        beta
    }

    /// Highest-scoring labels; among equal scores the sequence that is
    /// smallest in label order wins.
    pub fn viterbi(&self) -> Vec<usize> {
        let (n, k) = (self.n, self.k);
        if n == 0 {
            return Vec::new();
        }
        // best[i*k + y]: best score of positions i.. given label y at i
        let mut best = vec![F::zero(); n * k];
        best[(n - 1) * k..].copy_from_slice(&self.emit[(n - 1) * k..]);
        for i in (0..n - 1).rev() {
            for y in 0..k {
                let next = (0..k).map(|z| self.t(i + 1, y, z) + best[(i + 1) * k + z]);
                best[i * k + y] = self.e(i, y) + next.fold(F::neg_infinity(), F::max);
            }
        }
        let argmax = |scores: &mut dyn Iterator<Item = F>| {
            let mut arg = 0;
            let mut max = F::neg_infinity();
            for (y, s) in scores.enumerate() {
                if s > max {
                    max = s;
                    arg = y;
                }
            }
            arg
        };
        let mut path = Vec::with_capacity(n);
        path.push(argmax(&mut best[..k].iter().copied()));
        for i in 1..n {
            let prev = path[i - 1];
            path.push(argmax(
                &mut (0..k).map(|y| self.t(i, prev, y) + best[i * k + y]),
            ));
        }
        path
    }
}

/// Which label transitions constrained decoding allows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionMask {
    pub start: Vec<bool>,
    pub trans: Vec<bool>,
    pub end: Vec<bool>,
}

impl TransitionMask {
    pub fn for_labels(labels: &[NeTag], scheme: Scheme) -> Self {
        let ok = |a: Option<&NeTag>, b: Option<&NeTag>| check_transition(a, b, scheme).is_none();
        TransitionMask {
            start: labels.iter().map(|y| ok(None, Some(y))).collect(),
            trans: labels
                .iter()
                .flat_map(|p| labels.iter().map(move |y| ok(Some(p), Some(y))))
                .collect(),
            end: labels.iter().map(|y| ok(Some(y), None)).collect(),
        }
    }
}

impl<F: Real> CrfModel<F> {
    pub fn lattice(&self, c: &Compiled) -> Lattice<F> {
        let (n, k) = (c.len(), self.num_labels());
        let w = &self.weights;
        let mut emit = vec![F::zero(); n * k];
        let mut trans = vec![F::zero(); n * k * k];
        for i in 0..n {
            for &o in &c.unigram[i] {
                for y in 0..k {
                    emit[i * k + y] += w[o + y];
                }
            }
            if i == 0 {
                continue;
            }
            let row = &mut trans[i * k * k..(i + 1) * k * k];
            row.copy_from_slice(&w[..k * k]);
            for &o in &c.bigram[i] {
                for (j, r) in row.iter_mut().enumerate() {
                    *r += w[o + j];
                }
            }
        }
        Lattice { k, n, emit, trans }
    }

    fn masked(&self, c: &Compiled, mask: Option<&TransitionMask>) -> Lattice<F> {
        let mut l = self.lattice(c);
        if let Some(m) = mask {
            let (n, k) = (l.n, l.k);
            for y in 0..k {
                if n > 0 && !m.start[y] {
                    l.emit[y] = F::neg_infinity();
                }
                if n > 0 && !m.end[y] {
                    l.emit[(n - 1) * k + y] = F::neg_infinity();
                }
            }
            for i in 1..n {
                for (j, &allowed) in m.trans.iter().enumerate() {
                    if !allowed {
                        l.trans[i * k * k + j] = F::neg_infinity();
                    }
                }
            }
        }
        l
    }

    pub fn log_partition(&self, seq: &[Observation]) -> F {
        self.lattice(&self.compile(seq)).forward().1
    }

    /// Unnormalized log score of `tags`, which must be in the alphabet.
    pub fn sequence_score(&self, seq: &[Observation], labels: &[usize]) -> F {
        self.lattice(&self.compile(seq)).score(labels)
    }

    /// Per-position label distributions, `result[i][y]`.
    pub fn marginals(&self, seq: &[Observation]) -> Vec<Vec<F>> {
        let l = self.lattice(&self.compile(seq));
        let (alpha, log_z) = l.forward();
        let beta = l.backward();
        (0..l.n)
            .map(|i| {
                (0..l.k)
                    .map(|y| (alpha[i * l.k + y] + beta[i * l.k + y] - log_z).exp())
                    .collect()
            })
            .collect()
    }

    pub fn decode_indices(&self, seq: &[Observation]) -> Vec<usize> {
        self.lattice(&self.compile(seq)).viterbi()
    }

    pub fn decode(&self, seq: &[Observation]) -> Vec<NeTag> {
        self.decode_indices(seq)
            .into_iter()
            .map(|y| self.labels[y].clone())
            .collect()
    }

    /// Viterbi restricted to sequences that are well formed in the
    /// alphabet's scheme.
    pub fn decode_constrained(&self, seq: &[Observation]) -> Vec<NeTag> {
        let mask = TransitionMask::for_labels(&self.labels, self.scheme());
        let l = self.masked(&self.compile(seq), Some(&mask));
        l.viterbi()
            .into_iter()
            .map(|y| self.labels[y].clone())
            .collect()
    }
}
