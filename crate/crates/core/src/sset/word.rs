//! Degeneracy words in Eilenberg–Zilber normal form.
//!
//! A word `[i1, i2, ..., ik]` stands for the composite operator
//! `s_{i1} ∘ s_{i2} ∘ ... ∘ s_{ik}` (rightmost applied first). The canonical
//! form is strictly decreasing left to right; every word rewrites to exactly
//! one canonical word via `s_i s_j = s_{j+1} s_i` for `i <= j`.

use std::fmt;

/// A canonical (strictly decreasing) degeneracy word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Canonicalize an arbitrary index sequence.
    pub fn normalize(indices: &[u32]) -> Self {
        let mut w = Word::empty();
        for &i in indices.iter().rev() {
            w.prepend(i);
        }
        w
    }

    /// The word for the unique degeneracy of a vertex at dimension `n`,
    /// i.e. `s_{n-1} s_{n-2} ... s_0`.
    pub fn vertex_to_dim(n: usize) -> Self {
        Word { letters: (0..n as u32).rev().collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn contains(&self, i: u32) -> bool {
        self.letters.contains(&i)
    }

    /// Apply `s_j` on the outside: canonical form of `s_j ∘ self`.
    pub fn prepend(&mut self, j: u32) {
        // Insert from the left, bumping earlier letters with s_j s_i = s_{i+1} s_j
        // whenever j <= i.
        let mut pos = 0;
        while pos < self.letters.len() {
            let w = self.letters[pos];
            if j > w {
                break;
            }
            // j <= w: the outer letter slides right, the inner bumps to w+1.
            self.letters[pos] = w + 1;
            pos += 1;
        }
        self.letters.insert(pos, j);
    }

    /// Canonical form of `self ∘ inner`.
    pub fn compose(&self, inner: &Word) -> Word {
        let mut out = inner.clone();
        for &j in self.letters.iter().rev() {
            out.prepend(j);
        }
        out
    }

    /// Push `d_i` through the word from the left. Returns the surviving outer
    /// degeneracy word together with the face index that reaches the base, or
    /// `None` if the face cancels against a letter (`d_i s_i = d_{i+1} s_i = id`).
    pub fn push_face(&self, i: u32) -> (Word, Option<u32>) {
        let mut i = i;
        let mut prefix: Vec<u32> = Vec::new();
        for (pos, &j) in self.letters.iter().enumerate() {
            if i < j {
                // d_i s_j = s_{j-1} d_i
                prefix.push(j - 1);
            } else if i == j || i == j + 1 {
                // cancels; the rest of the word survives unchanged.
                prefix.extend_from_slice(&self.letters[pos + 1..]);
                return (Word { letters: prefix }, None);
            } else {
                // i > j+1: d_i s_j = s_j d_{i-1}
                prefix.push(j);
                i -= 1;
            }
        }
        (Word { letters: prefix }, Some(i))
    }

    /// The monotone surjection this word induces on vertex indices of a
    /// simplex of dimension `base_dim + len()`. Entry `k` is the image of
    /// vertex `k`. Used as an independent oracle in tests and for joint
    /// degeneracy extraction.
    pub fn surjection(&self, base_dim: usize) -> Vec<usize> {
        // sigma_i: [m+1] -> [m] repeats the value i. Apply letters right to left.
        let mut map: Vec<usize> = (0..=base_dim).collect();
        for &i in self.letters.iter().rev() {
            let i = i as usize;
            let mut next = Vec::with_capacity(map.len() + 1);
            next.extend_from_slice(&map[..=i]);
            next.extend_from_slice(&map[i..]);
            map = next;
        }
        map
    }

    /// Rebuild the canonical word from a monotone surjection.
    pub fn from_surjection(surj: &[usize]) -> Self {
        let mut letters: Vec<u32> = Vec::new();
        for k in 0..surj.len().saturating_sub(1) {
            if surj[k] == surj[k + 1] {
                letters.push(k as u32);
            }
        }
        letters.reverse();
        Word { letters }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &i in &self.letters {
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn identity_word() {
        assert_eq!(Word::normalize(&[]), Word::empty());
    }

    #[test]
    fn s0_twice() {
        // s_0 then s_0 is s_1 s_0.
        assert_eq!(Word::normalize(&[0, 0]).letters(), &[1, 0]);
    }

    #[test]
    fn spec_word_201() {
        // s_2 s_0 s_1 = s_3 s_2 s_0 by exhaustive rewriting.
        assert_eq!(Word::normalize(&[2, 0, 1]).letters(), &[3, 2, 0]);
    }

    #[test]
    fn push_face_cancels() {
        // d_1 s_0 = id
        let w = Word::normalize(&[0]);
        let (rest, face) = w.push_face(1);
        assert!(rest.is_empty());
        assert_eq!(face, None);
    }

    #[test]
    fn vertex_word() {
        assert_eq!(Word::vertex_to_dim(3).letters(), &[2, 1, 0]);
    }

    fn is_canonical(w: &Word) -> bool {
        w.letters().windows(2).all(|p| p[0] > p[1])
    }

    proptest! {
        // Rewriting is confluent: normalization agrees with the surjection
        // composite, which is evaluation-order independent.
        #[test]
        fn normalize_matches_surjection_oracle(letters in prop::collection::vec(0u32..6, 0..8)) {
            let w = Word::normalize(&letters);
            prop_assert!(is_canonical(&w));
            // Oracle: compose the sigma maps directly, in application order,
            // over a base dimension large enough for every prefix.
            let base = 8usize;
            let mut map: Vec<usize> = (0..=base).collect();
            for &i in letters.iter().rev() {
                let i = i as usize;
                prop_assume!(i < map.len()); // word must be applicable
                let mut next = Vec::with_capacity(map.len() + 1);
                next.extend_from_slice(&map[..=i]);
                next.extend_from_slice(&map[i..]);
                map = next;
            }
            prop_assert_eq!(Word::from_surjection(&map), w);
        }

        #[test]
        fn surjection_round_trip(letters in prop::collection::vec(0u32..6, 0..8)) {
            let w = Word::normalize(&letters);
            let surj = w.surjection(8);
            prop_assert_eq!(Word::from_surjection(&surj), w);
        }

        // Exhaustive face/degeneracy interchange: pushing any face through any
        // canonical word agrees with the surjection calculus.
        #[test]
        fn push_face_matches_surjection(letters in prop::collection::vec(0u32..5, 1..6), i in 0u32..10) {
            let w = Word::normalize(&letters);
            let n = 6 + w.len(); // dimension of s_w(base) with base dim 6
            prop_assume!((i as usize) <= n);
            let surj = w.surjection(6);
            // d_i deletes vertex i, then renormalize.
            let mut deleted = surj.clone();
            deleted.remove(i as usize);
            let (prefix, face) = w.push_face(i);
            match face {
                None => {
                    // Composite is a pure degeneracy word on the base.
                    prop_assert_eq!(Word::from_surjection(&deleted), prefix);
                    // Values must still cover 0..=6 (no face reached the base).
                    prop_assert_eq!(deleted.iter().copied().max(), Some(6));
                    prop_assert!((0..=6).all(|v| deleted.contains(&v)));
                }
                Some(k) => {
                    // deleted = prefix-surjection ∘ delta_k on the base.
                    let base_face: Vec<usize> = (0..=5).map(|v| if (v as u32) < k { v } else { v + 1 }).collect();
                    let pref_surj = prefix.surjection(5);
                    let composite: Vec<usize> = pref_surj.iter().map(|&p| base_face[p]).collect();
                    prop_assert_eq!(composite, deleted);
                }
            }
        }
    }
}
