//! Lexicographic enumeration of fixed-size subsets.

use alloc::vec::Vec;

/// Walks all `r`-element subsets of `{0, .., n-1}` in lexicographic order.
///
/// This is a streaming cursor rather than an `Iterator` so that the current
/// subset can be borrowed without allocating per step.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    started: bool,
    done: bool,
    lock_first: Option<usize>,
}

impl Combinations {
    /// Cursor over `C(n, r)` subsets. `r > n` yields nothing; `r = 0`
    /// yields the empty set once.
    pub fn new(n: usize, r: usize) -> Self {
        Self {
            n,
            current: (0..r).collect(),
            started: false,
            done: r > n,
            lock_first: None,
        }
    }

    /// Cursor over subsets whose smallest element is `first`.
    pub fn starting_with(n: usize, r: usize, first: usize) -> Self {
        let mut c = Self::new(n, r);
        if r == 0 || first + r > n {
            c.done = true;
        } else {
            c.current = (first..first + r).collect();
        }
        c.lock_first = Some(first);
        c
    }

    /// Advances and returns the next subset.
    pub fn next_subset(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        let r = self.current.len();
        let lowest = if self.lock_first.is_some() { 1 } else { 0 };
        let mut i = r;
        while i > lowest {
            i -= 1;
            if self.current[i] < self.n - r + i {
                self.current[i] += 1;
                for j in i + 1..r {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return Some(&self.current);
            }
        }
        self.done = true;
        None
    }
}

/// `C(n, r)` without overflow for the small arguments used here.
pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
