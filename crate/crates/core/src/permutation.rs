//! Permutations of `{0, ..., n-1}` in one-line notation.

use crate::error::{Error, Result};

/// `images[k] = sigma(k)`, positions counted from 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    /// The transposition exchanging positions `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v] = k;
        }
        Self { images: inv }
    }

    /// `self ∘ other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len());
        Self { images: other.images.iter().map(|&k| self.images[k]).collect() }
    }

    /// `+1` for even, `-1` for odd permutations.
    pub fn sign(&self) -> i64 {
        let mut visited = vec![false; self.images.len()];
        let mut transpositions = 0usize;
        for start in 0..self.images.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !visited[k] {
                visited[k] = true;
                k = self.images[k];
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `n` points, lexicographic.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation { images: prefix.clone() });
                return;
            }
            for v in 0..used.len() {
                if !used[v] {
                    used[v] = true;
                    prefix.push(v);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}
