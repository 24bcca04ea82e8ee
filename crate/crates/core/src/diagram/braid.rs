//! Braidings built from R-symbols.

use super::morphism::Morphism;
use crate::error::{Error, Result};
use crate::fusion_data::{CategorySpec, TensorWord};

/// Which of the two crossings realizes A B → B A.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossing {
    /// σ_{A,B}
    Over,
    /// σ_{B,A}⁻¹
    Under,
}

impl CategorySpec {
    /// σ_{a,b} ∈ Hom([a,b],[b,a]); the block at channel c is the transpose of R^{ab}_c.
    pub fn braid(&self, a: usize, b: usize) -> Result<Morphism> {
        let r = self.r.as_ref().ok_or(Error::NotBraided)?;
        let (src, tgt) = (self.word(&[a, b]), self.word(&[b, a]));
        if a == self.unit() || b == self.unit() {
            return Ok(Morphism::identity(self, &src));
        }
        let mut m = Morphism::zero(self, &src, &tgt);
        for c in self.rules.products(a, b) {
            m.blocks[c] = r.get(a, b, c).expect("allowed channel").transpose();
        }
        Ok(m)
    }

    /// σ_{a,b}⁻¹ ∈ Hom([b,a],[a,b]).
    pub fn unbraid(&self, a: usize, b: usize) -> Result<Morphism> {
        let r = self.r.as_ref().ok_or(Error::NotBraided)?;
        let (src, tgt) = (self.word(&[b, a]), self.word(&[a, b]));
        if a == self.unit() || b == self.unit() {
            return Ok(Morphism::identity(self, &src));
        }
        let mut m = Morphism::zero(self, &src, &tgt);
        for c in self.rules.products(a, b) {
            m.blocks[c] = r.inv(a, b, c).expect("allowed channel").transpose();
        }
        Ok(m)
    }

    /// Swap positions i, i+1 of `word` with the given crossing.
    fn adjacent_crossing(&self, word: &[usize], i: usize, crossing: Crossing) -> Result<Morphism> {
        let (x, y) = (word[i], word[i + 1]);
        let core = match crossing {
            Crossing::Over => self.braid(x, y)?,
            Crossing::Under => self.unbraid(y, x)?,
        };
        Ok(self.whisker(&word[..i], &core, &word[i + 2..]))
    }

    /// A B → B A, every strand of A crossing every strand of B the same way.
    pub fn crossing(&self, a: &[usize], b: &[usize], crossing: Crossing) -> Result<Morphism> {
        if !self.is_braided() {
            return Err(Error::NotBraided);
        }
        let mut word: TensorWord = a.iter().chain(b).copied().collect();
        let mut acc = Morphism::identity(self, &word);
        // carry a's letters right, last letter first
        for ai in (0..a.len()).rev() {
            for pos in ai..ai + b.len() {
                let step = self.adjacent_crossing(&word, pos, crossing)?;
                word.swap(pos, pos + 1);
                acc = acc.then(&step)?;
            }
        }
        Ok(acc)
    }

    /// σ_{A,B}
    pub fn braid_words(&self, a: &[usize], b: &[usize]) -> Result<Morphism> {
        self.crossing(a, b, Crossing::Over)
    }

    /// σ_{A,B}⁻¹ ∈ Hom(B A, A B).
    pub fn unbraid_words(&self, a: &[usize], b: &[usize]) -> Result<Morphism> {
        self.crossing(b, a, Crossing::Under)
    }
}
