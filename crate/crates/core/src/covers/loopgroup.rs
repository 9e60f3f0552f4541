//! Truncated Kan loop group of a reduced simplicial set, its universal
//! twisting function, and the twisted cartesian product total space, all
//! symbolic in free-group words and machine-verified against the simplicial
//! and twisting identities.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::covers::presentation::Presentation;
use crate::error::Error;
use crate::sset::{SimplexRef, Space};

/// A reduced word in the degree-`degree` loop group: letters are simplices of
/// the base one dimension up, excluding zeroth degeneracies, with exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LoopWord {
    pub degree: usize,
    letters: Vec<(SimplexRef, i8)>,
}

impl LoopWord {
    pub fn identity(degree: usize) -> Self {
        LoopWord { degree, letters: Vec::new() }
    }

    pub fn letters(&self) -> &[(SimplexRef, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn push(&mut self, letter: SimplexRef, exp: i8) {
        if let Some(last) = self.letters.last() {
            if last.0 == letter && last.1 == -exp {
                self.letters.pop();
                return;
            }
        }
        self.letters.push((letter, exp));
    }

    pub fn mul(&self, other: &LoopWord) -> LoopWord {
        debug_assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (l, e) in &other.letters {
            out.push(l.clone(), *e);
        }
        out
    }

    pub fn inverse(&self) -> LoopWord {
        LoopWord {
            degree: self.degree,
            letters: self.letters.iter().rev().map(|(l, e)| (l.clone(), -e)).collect(),
        }
    }
}

impl fmt::Debug for LoopWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (l, e) in &self.letters {
            write!(f, "<{:?}>{}", l, if *e > 0 { "" } else { "'" })?;
        }
        Ok(())
    }
}

/// The loop-group engine for a reduced base, truncated at degree `truncation`
/// (words live in degrees `0..truncation`).
pub struct LoopGroup {
    pub base: Arc<Space>,
    pub truncation: usize,
}

impl LoopGroup {
    pub fn new(base: Arc<Space>, truncation: usize) -> Result<LoopGroup, Error> {
        if !base.is_reduced() {
            return Err(Error::NotReduced);
        }
        Ok(LoopGroup { base, truncation })
    }

    /// The generator class of a base simplex one dimension up: trivial
    /// exactly on zeroth degeneracies.
    pub fn class(&self, x: &SimplexRef) -> Result<LoopWord, Error> {
        if x.dim() == 0 {
            return Err(Error::Validation("degree 0 base simplices have no class".into()));
        }
        let degree = x.dim() - 1;
        if x.word.letters().last() == Some(&0) {
            return Ok(LoopWord::identity(degree));
        }
        Ok(LoopWord { degree, letters: vec![(x.clone(), 1)] })
    }

    /// The universal twisting function: the class of a positive-dimension
    /// simplex.
    pub fn twisting(&self, x: &SimplexRef) -> Result<LoopWord, Error> {
        self.class(x)
    }

    /// Free generators in a given degree: simplices of the base one dimension
    /// up that are not zeroth degeneracies.
    pub fn generators(&self, degree: usize) -> Vec<SimplexRef> {
        self.base
            .all_refs(degree + 1)
            .into_iter()
            .filter(|r| r.word.letters().last() != Some(&0))
            .collect()
    }

    fn map_letter(
        &self,
        letter: &SimplexRef,
        exp: i8,
        image: impl Fn(&SimplexRef) -> Result<LoopWord, Error>,
    ) -> Result<LoopWord, Error> {
        let img = image(letter)?;
        Ok(if exp > 0 { img } else { img.inverse() })
    }

    /// Face homomorphism on words.
    pub fn face(&self, i: u32, w: &LoopWord) -> Result<LoopWord, Error> {
        if w.degree == 0 || (i as usize) > w.degree {
            return Err(Error::FaceIndex { i, dim: w.degree });
        }
        let mut out = LoopWord::identity(w.degree - 1);
        for (letter, exp) in &w.letters {
            let img = self.map_letter(letter, *exp, |x| {
                if i == 0 {
                    let d0 = self.base.face(0, x)?;
                    let d1 = self.base.face(1, x)?;
                    Ok(self.class(&d0)?.inverse().mul(&self.class(&d1)?))
                } else {
                    let f = self.base.face(i + 1, x)?;
                    self.class(&f)
                }
            })?;
            out = out.mul(&img);
        }
        Ok(out)
    }

    /// Degeneracy homomorphism on words.
    pub fn degeneracy(&self, j: u32, w: &LoopWord) -> Result<LoopWord, Error> {
        if (j as usize) > w.degree {
            return Err(Error::DegeneracyIndex { j, dim: w.degree });
        }
        let mut out = LoopWord::identity(w.degree + 1);
        for (letter, exp) in &w.letters {
            let img = self.map_letter(letter, *exp, |x| {
                self.class(&self.base.degeneracy(j + 1, x)?)
            })?;
            out = out.mul(&img);
        }
        Ok(out)
    }

    /// A random reduced word of bounded length in a given degree.
    pub fn random_word(&self, degree: usize, max_len: usize, rng: &mut impl Rng) -> LoopWord {
        let gens = self.generators(degree);
        let mut w = LoopWord::identity(degree);
        if gens.is_empty() {
            return w;
        }
        let len = rng.gen_range(0..=max_len);
        for _ in 0..len {
            let g = gens[rng.gen_range(0..gens.len())].clone();
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            w.push(g, e);
        }
        w
    }

    /// Verify the simplicial identities on a word in every applicable index.
    pub fn check_simplicial_identities(&self, w: &LoopWord) -> Result<bool, Error> {
        let n = w.degree;
        // d_i d_j = d_{j-1} d_i, i < j
        if n >= 2 {
            for j in 1..=n as u32 {
                for i in 0..j {
                    let a = self.face(i, &self.face(j, w)?)?;
                    let b = self.face(j - 1, &self.face(i, w)?)?;
                    if a != b {
                        return Ok(false);
                    }
                }
            }
        }
        // s_i s_j = s_{j+1} s_i, i <= j
        for j in 0..=n as u32 {
            for i in 0..=j {
                let a = self.degeneracy(i, &self.degeneracy(j, w)?)?;
                let b = self.degeneracy(j + 1, &self.degeneracy(i, w)?)?;
                if a != b {
                    return Ok(false);
                }
            }
        }
        // d_i s_j interchange
        for j in 0..=n as u32 {
            let sw = self.degeneracy(j, w)?;
            for i in 0..=(n as u32 + 1) {
                let lhs = self.face(i, &sw)?;
                let rhs = if i < j {
                    self.degeneracy(j - 1, &self.face(i, w)?)?
                } else if i == j || i == j + 1 {
                    w.clone()
                } else {
                    self.degeneracy(j, &self.face(i - 1, w)?)?
                };
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Verify the twisting identities at a base simplex of dimension >= 1.
    pub fn check_twisting_identities(&self, x: &SimplexRef) -> Result<bool, Error> {
        let n = x.dim();
        let tau = self.twisting(x)?;
        if n >= 2 {
            let lhs = self.face(0, &tau)?;
            let d0 = self.twisting(&self.base.face(0, x)?)?;
            let d1 = self.twisting(&self.base.face(1, x)?)?;
            if lhs != d0.inverse().mul(&d1) {
                return Ok(false);
            }
            for i in 1..n as u32 {
                if self.face(i, &tau)? != self.twisting(&self.base.face(i + 1, x)?)? {
                    return Ok(false);
                }
            }
        }
        for j in 0..n as u32 {
            if self.degeneracy(j, &tau)? != self.twisting(&self.base.degeneracy(j + 1, x)?)? {
                return Ok(false);
            }
        }
        // tau kills zeroth degeneracies.
        if !self.twisting(&self.base.degeneracy(0, x)?)?.is_identity() {
            return Ok(false);
        }
        Ok(true)
    }

    /// Presentation of the path components of the loop group: degree-0
    /// generators modulo the two faces of every degree-1 generator.
    pub fn pi0(&self) -> Result<Presentation, Error> {
        let gens = self.generators(0);
        let index: std::collections::HashMap<SimplexRef, usize> =
            gens.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let word_letters = |w: &LoopWord| -> Vec<(usize, i8)> {
            w.letters().iter().map(|(l, e)| (index[l], *e)).collect()
        };
        let mut relators = Vec::new();
        for h in self.generators(1) {
            let h = self.class(&h)?;
            let d0 = self.face(0, &h)?;
            let d1 = self.face(1, &h)?;
            let rel = d1.mul(&d0.inverse());
            relators.push(word_letters(&rel));
        }
        Ok(Presentation {
            generators: gens.iter().map(|g| self.base.ref_name(g)).collect(),
            relators,
        })
    }
}

/// A simplex of the twisted total space: a base simplex paired with a loop
/// word of the same degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PxSimplex {
    pub base: SimplexRef,
    pub word: LoopWord,
}

impl PxSimplex {
    pub fn new(base: SimplexRef, word: LoopWord) -> Result<PxSimplex, Error> {
        if base.dim() != word.degree {
            return Err(Error::SpaceMismatch { context: "twisted product coordinates" });
        }
        Ok(PxSimplex { base, word })
    }

    pub fn degree(&self) -> usize {
        self.base.dim()
    }
}

impl LoopGroup {
    /// Face of a twisted-product simplex: only the zeroth face twists, by
    /// left multiplication with the twisting class of the base simplex.
    pub fn px_face(&self, i: u32, s: &PxSimplex) -> Result<PxSimplex, Error> {
        let n = s.degree();
        if n == 0 || (i as usize) > n {
            return Err(Error::FaceIndex { i, dim: n });
        }
        let base = self.base.face(i, &s.base)?;
        let word = if i == 0 {
            let tau = self.twisting(&s.base)?;
            tau.mul(&self.face(0, &s.word)?)
        } else {
            self.face(i, &s.word)?
        };
        Ok(PxSimplex { base, word })
    }

    /// Degeneracies never twist.
    pub fn px_degeneracy(&self, j: u32, s: &PxSimplex) -> Result<PxSimplex, Error> {
        Ok(PxSimplex {
            base: self.base.degeneracy(j, &s.base)?,
            word: self.degeneracy(j, &s.word)?,
        })
    }

    /// Right action of the loop group on the total space.
    pub fn px_act(&self, s: &PxSimplex, h: &LoopWord) -> Result<PxSimplex, Error> {
        if s.degree() != h.degree {
            return Err(Error::SpaceMismatch { context: "twisted product action degree" });
        }
        Ok(PxSimplex { base: s.base.clone(), word: s.word.mul(h) })
    }

    /// Simplicial identities on a twisted-product simplex.
    pub fn check_px_identities(&self, s: &PxSimplex) -> Result<bool, Error> {
        let n = s.degree();
        if n >= 2 {
            for j in 1..=n as u32 {
                for i in 0..j {
                    let a = self.px_face(i, &self.px_face(j, s)?)?;
                    let b = self.px_face(j - 1, &self.px_face(i, s)?)?;
                    if a != b {
                        return Ok(false);
                    }
                }
            }
        }
        for j in 0..=n as u32 {
            let sj = self.px_degeneracy(j, s)?;
            for i in 0..=(n as u32 + 1) {
                let lhs = self.px_face(i, &sj)?;
                let rhs = if i < j {
                    self.px_degeneracy(j - 1, &self.px_face(i, s)?)?
                } else if i == j || i == j + 1 {
                    s.clone()
                } else {
                    self.px_degeneracy(j, &self.px_face(i - 1, s)?)?
                };
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The projection to the base is simplicial and a bijection on orbits:
    /// canonical representatives `(x, e)` indexed by base simplices, with the
    /// right action reaching every symbolic simplex.
    pub fn px_quotient_certificate(&self, samples: &[PxSimplex]) -> Result<bool, Error> {
        for n in 0..self.truncation {
            for x in self.base.all_refs(n) {
                let rep = PxSimplex::new(x.clone(), LoopWord::identity(n))?;
                if n > 0 {
                    for i in 0..=n as u32 {
                        // Projection commutes with every face.
                        if self.px_face(i, &rep)?.base != self.base.face(i, &x)? {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        for s in samples {
            // The orbit of a symbolic simplex meets its representative.
            let rep = PxSimplex::new(s.base.clone(), LoopWord::identity(s.degree()))?;
            if self.px_act(&rep, &s.word)? != *s {
                return Ok(false);
            }
            // Faces commute with the projection on arbitrary simplices too.
            if s.degree() > 0 {
                for i in 0..=s.degree() as u32 {
                    if self.px_face(i, s)?.base != self.base.face(i, &s.base)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// An explicit edge path in the total space from the vertex `(v, w)` to
    /// the identity vertex, peeling one letter per step. Returns the path;
    /// its endpoints are re-verified through the face operators.
    pub fn px_connectivity_certificate(&self, w: &LoopWord) -> Result<Vec<PxSimplex>, Error> {
        if w.degree != 0 {
            return Err(Error::Validation("connectivity certificate wants a vertex word".into()));
        }
        let vertex = SimplexRef::nondeg(crate::sset::SimplexId { dim: 0, idx: 0 });
        let mut path = Vec::new();
        let mut current = w.clone();
        while let Some((letter, exp)) = current.letters().first().cloned() {
            // current = <letter>^exp * rest
            let mut rest = LoopWord::identity(0);
            for (l, e) in &current.letters()[1..] {
                rest.push(l.clone(), *e);
            }
            let (edge_word, next) = if exp > 0 {
                (self.degeneracy(0, &rest)?, rest)
            } else {
                // current = <letter>^{-1} * rest; the edge travels from the
                // word <letter>*current = rest... downward.
                let target = self.class(&letter)?.mul(&current);
                (self.degeneracy(0, &current)?, target)
            };
            let edge = PxSimplex::new(letter.clone(), edge_word)?;
            // Endpoints: face 1 is the untwisted end, face 0 the twisted one.
            let e1 = self.px_face(1, &edge)?;
            let e0 = self.px_face(0, &edge)?;
            let (from, to) = if exp > 0 {
                (e0, e1) // from current to rest
            } else {
                (e1, e0)
            };
            let expect_from = PxSimplex::new(vertex.clone(), current.clone())?;
            let expect_to = PxSimplex::new(vertex.clone(), next.clone())?;
            if from != expect_from || to != expect_to {
                return Err(Error::Validation("connectivity edge endpoints mismatch".into()));
            }
            path.push(edge);
            current = next;
        }
        Ok(path)
    }
}
