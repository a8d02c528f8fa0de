#![allow(dead_code)]

use qgreedy::{Aggregation, SpaceSpec, SparseVector, Tail, Weights};

/// The spaces exercised by the integration suites.
pub fn registered_spaces() -> Vec<(&'static str, SpaceSpec)> {
    vec![
        ("l1", SpaceSpec::lp(1.0).unwrap()),
        ("l2", SpaceSpec::lp(2.0).unwrap()),
        ("l3", SpaceSpec::lp(3.0).unwrap()),
        ("linf", SpaceSpec::linf()),
        (
            "lorentz_1_geom",
            SpaceSpec::lorentz(1.0, Weights::geometric(0.5).unwrap()).unwrap(),
        ),
        (
            "lorentz_2_harm",
            SpaceSpec::lorentz(2.0, Weights::power(1.0).unwrap()).unwrap(),
        ),
        ("l1_plus_l2", SpaceSpec::l1_plus_l2()),
    ]
}

/// Extra shapes: weight prefixes, max aggregation, nesting.
pub fn exotic_spaces() -> Vec<(&'static str, SpaceSpec)> {
    let lor = SpaceSpec::lorentz(
        1.5,
        Weights::new(vec![1.0, 0.9, 0.9], Tail::Power(0.7)).unwrap(),
    )
    .unwrap();
    let inner = SpaceSpec::direct_sum(
        vec![SpaceSpec::lp(1.0).unwrap(), SpaceSpec::linf()],
        Aggregation::Max,
    )
    .unwrap();
    let nested = SpaceSpec::direct_sum(
        vec![inner, SpaceSpec::lp(2.0).unwrap(), lor.clone()],
        Aggregation::Sum,
    )
    .unwrap();
    vec![
        ("lorentz_prefix", lor),
        (
            "l1_max_l4",
            SpaceSpec::direct_sum(
                vec![SpaceSpec::lp(1.0).unwrap(), SpaceSpec::lp(4.0).unwrap()],
                Aggregation::Max,
            )
            .unwrap(),
        ),
        ("nested", nested),
    ]
}

pub fn vector(pairs: &[(usize, f64)]) -> SparseVector {
    SparseVector::from_pairs(pairs.iter().copied()).unwrap()
}

/// Deterministic xorshift so corpora do not depend on the rand version.
pub struct XorShift(pub u64);

impl XorShift {
    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Random vector with `len` support indices drawn from `1..=2*len+2`.
pub fn random_vector(rng: &mut XorShift, len: usize) -> SparseVector {
    let span = 2 * len + 2;
    let mut idx: Vec<usize> = (1..=span).collect();
    for i in 0..len {
        let j = i + rng.below(span - i);
        idx.swap(i, j);
    }
    let pairs = idx[..len].iter().map(|&k| {
        let mut a = 2.0 * rng.unit() - 1.0;
        if a == 0.0 {
            a = 0.5;
        }
        (k, a)
    });
    SparseVector::from_pairs(pairs).unwrap()
}
