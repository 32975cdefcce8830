//! Permutations of {0,1,2,3} and {0,1,2} used as vertex maps in face and
//! edge gluings.

use std::fmt;

/// A permutation of {0,1,2,3}. `image[i]` is where vertex `i` is sent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm4 {
    image: [u8; 4],
}

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4 { image: [0, 1, 2, 3] };

    pub fn new(image: [u8; 4]) -> Option<Perm4> {
        let mut seen = [false; 4];
        for &v in &image {
            if v > 3 || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Perm4 { image })
    }

    /// All 24 permutations, in lexicographic order of their images.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4u8 {
            for b in 0..4u8 {
                for c in 0..4u8 {
                    for d in 0..4u8 {
                        if let Some(p) = Perm4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    pub fn inverse(&self) -> Perm4 {
        let mut image = [0u8; 4];
        for i in 0..4 {
            image[self.image[i] as usize] = i as u8;
        }
        Perm4 { image }
    }

    /// Composition: `self.compose(q)` applies `q` first, then `self`.
    pub fn compose(&self, q: &Perm4) -> Perm4 {
        let mut image = [0u8; 4];
        for i in 0..4 {
            image[i] = self.image[q.image[i] as usize];
        }
        Perm4 { image }
    }

    /// Sign: +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i8 {
        let mut inversions = 0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if self.image[i] > self.image[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn word(&self) -> String {
        self.image.iter().map(|v| char::from(b'0' + v)).collect()
    }

    pub fn from_word(word: &str) -> Option<Perm4> {
        let bytes = word.as_bytes();
        if bytes.len() != 4 {
            return None;
        }
        let mut image = [0u8; 4];
        for (i, &b) in bytes.iter().enumerate() {
            if !(b'0'..=b'3').contains(&b) {
                return None;
            }
            image[i] = b - b'0';
        }
        Perm4::new(image)
    }
}

impl fmt::Debug for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm4({})", self.word())
    }
}

/// A permutation of {0,1,2} used for edge gluings of surface triangulations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm3 {
    image: [u8; 3],
}

impl Perm3 {
    pub const IDENTITY: Perm3 = Perm3 { image: [0, 1, 2] };

    pub fn new(image: [u8; 3]) -> Option<Perm3> {
        let mut seen = [false; 3];
        for &v in &image {
            if v > 2 || seen[v as usize] {
                return None;
            }
            seen[v as usize] = true;
        }
        Some(Perm3 { image })
    }

    pub fn all() -> Vec<Perm3> {
        let mut out = Vec::with_capacity(6);
        for a in 0..3u8 {
            for b in 0..3u8 {
                for c in 0..3u8 {
                    if let Some(p) = Perm3::new([a, b, c]) {
                        out.push(p);
                    }
                }
            }
        }
        out
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    pub fn inverse(&self) -> Perm3 {
        let mut image = [0u8; 3];
        for i in 0..3 {
            image[self.image[i] as usize] = i as u8;
        }
        Perm3 { image }
    }

    pub fn compose(&self, q: &Perm3) -> Perm3 {
        let mut image = [0u8; 3];
        for i in 0..3 {
            image[i] = self.image[q.image[i] as usize];
        }
        Perm3 { image }
    }

    pub fn sign(&self) -> i8 {
        let mut inversions = 0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                if self.image[i] > self.image[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn word(&self) -> String {
        self.image.iter().map(|v| char::from(b'0' + v)).collect()
    }

    pub fn from_word(word: &str) -> Option<Perm3> {
        let bytes = word.as_bytes();
        if bytes.len() != 3 {
            return None;
        }
        let mut image = [0u8; 3];
        for (i, &b) in bytes.iter().enumerate() {
            if !(b'0'..=b'2').contains(&b) {
                return None;
            }
            image[i] = b - b'0';
        }
        Perm3::new(image)
    }
}

impl fmt::Debug for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm3({})", self.word())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perm4_inverse_composes_to_identity() {
        for p in Perm4::all() {
            assert_eq!(p.compose(&p.inverse()), Perm4::IDENTITY);
            assert_eq!(p.inverse().compose(&p), Perm4::IDENTITY);
        }
    }

    #[test]
    fn perm4_sign_multiplicative() {
        let all = Perm4::all();
        assert_eq!(all.len(), 24);
        for p in &all {
            for q in &all {
                assert_eq!(p.compose(q).sign(), p.sign() * q.sign());
            }
        }
    }

    #[test]
    fn perm4_word_round_trip() {
        for p in Perm4::all() {
            assert_eq!(Perm4::from_word(&p.word()), Some(p));
        }
        assert_eq!(Perm4::from_word("0012"), None);
        assert_eq!(Perm4::from_word("012"), None);
    }

    #[test]
    fn perm3_group_laws() {
        let all = Perm3::all();
        assert_eq!(all.len(), 6);
        for p in &all {
            assert_eq!(p.compose(&p.inverse()), Perm3::IDENTITY);
            assert_eq!(Perm3::from_word(&p.word()), Some(*p));
        }
    }
}
