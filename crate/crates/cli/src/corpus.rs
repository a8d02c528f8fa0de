//! Seeded corpus generators.

use std::fs;

use qgreedy::approx::adversarial_witness;
use qgreedy::SparseVector;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::config::{CoefficientDistribution, CorpusConfig, CorpusKind, RunConfig};
use crate::error::{CliError, Result};
use crate::formats::parse_corpus;

pub fn build(cfg: &RunConfig) -> Result<Vec<SparseVector>> {
    let c = &cfg.corpus;
    let corpus = match c.kind {
        CorpusKind::Random => random(c),
        CorpusKind::Witness => witnesses(cfg)?,
        CorpusKind::File => {
            let path = c
                .path
                .as_ref()
                .ok_or_else(|| CliError::Config("file corpus needs a path".into()))?;
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            parse_corpus(&text, &path.display().to_string())?
        }
    };
    if let Some(i) = corpus.iter().position(SparseVector::is_empty) {
        return Err(CliError::Config(format!("corpus vector #{i} is zero")));
    }
    Ok(corpus)
}

/// `size` vectors with uniformly drawn support sizes and supports.
pub fn random(c: &CorpusConfig) -> Vec<SparseVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let [lo, hi] = c.support_size_range;
    let range = c.index_range.unwrap_or(2 * hi).max(hi);
    (0..c.size)
        .map(|_| {
            let s = rng.random_range(lo..=hi);
            let mut support: Vec<usize> = index::sample(&mut rng, range, s)
                .into_iter()
                .map(|i| i + 1)
                .collect();
            support.sort_unstable();
            let coeffs = coefficients(&mut rng, s, c.coefficient_distribution);
            SparseVector::from_pairs(support.into_iter().zip(coeffs))
                .expect("distinct indices, finite values")
        })
        .collect()
}

fn coefficients(rng: &mut ChaCha8Rng, s: usize, dist: CoefficientDistribution) -> Vec<f64> {
    let nonzero = |rng: &mut ChaCha8Rng, draw: &dyn Fn(&mut ChaCha8Rng) -> f64| loop {
        let a = draw(rng);
        if a != 0.0 {
            break a;
        }
    };
    match dist {
        CoefficientDistribution::Uniform => (0..s)
            .map(|_| nonzero(rng, &|r| r.random_range(-1.0..1.0)))
            .collect(),
        CoefficientDistribution::Normal => (0..s)
            .map(|_| nonzero(rng, &|r| StandardNormal.sample(r)))
            .collect(),
        CoefficientDistribution::GeometricDecay { rho } => {
            let ranks = index::sample(rng, s, s).into_vec();
            ranks
                .into_iter()
                .map(|j| {
                    let sign = if rng.random_bool(0.5) { -1.0 } else { 1.0 };
                    sign * rho.powi(j as i32)
                })
                .collect()
        }
    }
}

/// Adversarial witnesses for `N = 1, 2, …`, cycling through `1..=n_max`.
pub fn witnesses(cfg: &RunConfig) -> Result<Vec<SparseVector>> {
    (0..cfg.corpus.size)
        .map(|i| {
            let n = i % cfg.n_max + 1;
            Ok(adversarial_witness(&cfg.space, n, cfg.epsilon, cfg.window)?.vector)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_corpus_is_seeded() {
        let c = CorpusConfig {
            size: 20,
            seed: 11,
            ..CorpusConfig::default()
        };
        let a = random(&c);
        assert_eq!(a, random(&c));
        assert_ne!(
            a,
            random(&CorpusConfig {
                seed: 12,
                ..c.clone()
            })
        );
        for x in &a {
            assert!((1..=12).contains(&x.len()));
            assert!(x.max_index() <= 24);
            assert!(x.max_abs() < 1.0);
        }
    }

    #[test]
    fn geometric_decay_magnitudes() {
        let c = CorpusConfig {
            size: 5,
            support_size_range: [4, 4],
            coefficient_distribution: CoefficientDistribution::GeometricDecay { rho: 0.5 },
            ..CorpusConfig::default()
        };
        for x in random(&c) {
            let mut mags: Vec<f64> = x.iter().map(|(_, a)| a.abs()).collect();
            mags.sort_by(|a, b| b.total_cmp(a));
            assert_eq!(mags, vec![1.0, 0.5, 0.25, 0.125]);
        }
    }
}
