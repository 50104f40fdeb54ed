//! Permutations and partial injective element maps.

use crate::error::{Error, Result};

/// A total map `0..n-1 -> 0..n-1` stored as an image vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n as u8).collect() }
    }

    pub fn from_images(image: Vec<u8>) -> Self {
        Permutation { image }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Self {
        Permutation { image: (0..n).map(|x| f(x) as u8).collect() }
    }

    /// Builds a permutation from disjoint cycles; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut image: Vec<u8> = (0..n as u8).collect();
        for cyc in cycles {
            for w in 0..cyc.len() {
                image[cyc[w]] = cyc[(w + 1) % cyc.len()] as u8;
            }
        }
        Permutation { image }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        Self::from_cycles(n, &[&[a, b]])
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline(always)]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.image.len()];
        for &v in &self.image {
            let v = v as usize;
            if v >= self.image.len() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.image.len()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { image: inv }
    }

    /// `(self.compose_after(f))(x) = self(f(x))`.
    pub fn compose_after(&self, f: &Permutation) -> Permutation {
        Permutation {
            image: (0..self.image.len()).map(|x| self.image[f.apply(x)]).collect(),
        }
    }

    pub fn moved_points(&self) -> usize {
        self.image.iter().enumerate().filter(|(i, &v)| *i != v as usize).count()
    }

    /// Sign of the permutation: true for even.
    pub fn is_even(&self) -> bool {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }
}

pub const UNDEF: u8 = u8::MAX;

/// A partially defined injective map with its inverse, as used by the
/// isomorphism searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMap {
    image: Vec<u8>,
    inverse_image: Vec<u8>,
}

impl PartialMap {
    pub fn empty(n: usize) -> Self {
        PartialMap { image: vec![UNDEF; n], inverse_image: vec![UNDEF; n] }
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        match self.image[x] {
            UNDEF => None,
            v => Some(v as usize),
        }
    }

    pub fn preimage(&self, y: usize) -> Option<usize> {
        match self.inverse_image[y] {
            UNDEF => None,
            v => Some(v as usize),
        }
    }

    /// Defines `x -> y`; fails if either endpoint is already used
    /// inconsistently.
    pub fn set(&mut self, x: usize, y: usize) -> bool {
        match (self.image[x], self.inverse_image[y]) {
            (UNDEF, UNDEF) => {
                self.image[x] = y as u8;
                self.inverse_image[y] = x as u8;
                true
            }
            (ix, iy) => ix == y as u8 && iy == x as u8,
        }
    }

    pub fn unset(&mut self, x: usize) {
        if let Some(y) = self.get(x) {
            self.image[x] = UNDEF;
            self.inverse_image[y] = UNDEF;
        }
    }

    pub fn defined(&self) -> usize {
        self.image.iter().filter(|&&v| v != UNDEF).count()
    }

    pub fn is_total(&self) -> bool {
        self.image.iter().all(|&v| v != UNDEF)
    }

    pub fn images(&self) -> &[u8] {
        &self.image
    }

    /// Converts a total map into a permutation.
    pub fn into_permutation(self) -> Result<Permutation> {
        if !self.is_total() {
            return Err(Error::MapNotTotal);
        }
        let p = Permutation::from_images(self.image);
        if !p.is_bijective() {
            return Err(Error::MapNotBijective);
        }
        Ok(p)
    }
}

impl From<&Permutation> for PartialMap {
    fn from(p: &Permutation) -> Self {
        let mut m = PartialMap::empty(p.len());
        for x in 0..p.len() {
            m.set(x, p.apply(x));
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_and_moved_points() {
        let p = Permutation::from_cycles(7, &[&[1, 2], &[5, 6]]);
        assert!(p.is_even());
        assert_eq!(p.moved_points(), 4);
        let q = Permutation::transposition(5, 0, 3);
        assert!(!q.is_even());
    }

    #[test]
    fn compose_and_inverse() {
        let f = Permutation::from_cycles(5, &[&[0, 1, 2]]);
        let g = f.inverse();
        assert!(g.compose_after(&f).is_identity());
    }

    #[test]
    fn partial_map_injective() {
        let mut m = PartialMap::empty(4);
        assert!(m.set(1, 2));
        assert!(!m.set(3, 2));
        assert!(m.set(1, 2));
        assert_eq!(m.preimage(2), Some(1));
        m.unset(1);
        assert_eq!(m.get(1), None);
    }
}
