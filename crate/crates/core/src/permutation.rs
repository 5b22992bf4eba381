use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A bijection on `{1..n}`, stored 0-based.
///
/// `mapping[i]` is the (0-based) index of the operand placed at position `i`,
/// so `arrange` of a tuple yields `q_{σ(1)}, …, q_{σ(n)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    mapping: Vec<usize>,
    parity: i8,
}

fn inversions(mapping: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..mapping.len() {
        for j in i + 1..mapping.len() {
            if mapping[i] > mapping[j] {
                count += 1;
            }
        }
    }
    count
}

impl Permutation {
    /// From a 0-based mapping.
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &m in &mapping {
            if m >= n || std::mem::replace(&mut seen[m], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{mapping:?} is not a bijection on 0..{n}"
                )));
            }
        }
        let parity = if inversions(&mapping).is_multiple_of(2) { 1 } else { -1 };
        Ok(Self { mapping, parity })
    }

    /// From a 1-based mapping, as written in cycle-free one-line notation.
    pub fn from_one_based(mapping: &[usize]) -> Result<Self> {
        if mapping.contains(&0) {
            return Err(Error::InvalidPermutation(format!(
                "{mapping:?} contains 0 in one-based notation"
            )));
        }
        Self::new(mapping.iter().map(|m| m - 1).collect())
    }

    pub fn identity(n: usize) -> Self {
        Self {
            mapping: (0..n).collect(),
            parity: 1,
        }
    }

    /// Swap of positions `i` and `j` applied to the identity.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        let mut mapping: Vec<usize> = (0..n).collect();
        if i >= n || j >= n {
            return Err(Error::InvalidPermutation(format!("({i} {j}) outside 0..{n}")));
        }
        mapping.swap(i, j);
        Self::new(mapping)
    }

    /// The cyclic rotation `σ(i) = i + k mod n`.
    pub fn rotation(n: usize, k: usize) -> Self {
        Self::new((0..n).map(|i| (i + k) % n).collect()).expect("rotation is a bijection")
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.mapping.iter().map(|m| m + 1).collect()
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &m)| i == m)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidPermutation(format!(
                "cannot compose permutations of sizes {} and {}",
                self.len(),
                other.len()
            )));
        }
        Self::new(other.mapping.iter().map(|&i| self.mapping[i]).collect())
    }

    /// Reorders `items` as `items[σ(0)], …, items[σ(n-1)]`.
    pub fn arrange<'a, T>(&self, items: &'a [T]) -> Result<Vec<&'a T>> {
        if items.len() != self.len() {
            return Err(Error::InvalidPermutation(format!(
                "permutation of size {} applied to {} operands",
                self.len(),
                items.len()
            )));
        }
        Ok(self.mapping.iter().map(|&i| &items[i]).collect())
    }

    /// Left rotation of the one-line word by `k` places; the orbit of a
    /// permutation under this map is its cyclic class.
    pub fn rotate_word(&self, k: usize) -> Self {
        let mut mapping = self.mapping.clone();
        if !mapping.is_empty() {
            let k = k % mapping.len();
            mapping.rotate_left(k);
        }
        Self::new(mapping).expect("rotation of a bijection")
    }

    /// All `n!` permutations in lexicographic order of their mappings.
    pub fn all(n: usize) -> LexPermutations {
        LexPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, m) in self.mapping.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", m + 1)?;
        }
        f.write_str("]")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// Lexicographic permutation iterator (Narayana's next-permutation step).
pub struct LexPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let n = succ.len();
        if n > 1 {
            if let Some(i) = (0..n - 1).rev().find(|&i| succ[i] < succ[i + 1]) {
                let j = (i + 1..n).rev().find(|&j| succ[j] > succ[i]).expect("pivot exists");
                succ.swap(i, j);
                succ[i + 1..].reverse();
                self.next = Some(succ);
            }
        }
        Some(Permutation::new(current).expect("lexicographic successor is a bijection"))
    }
}

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}
