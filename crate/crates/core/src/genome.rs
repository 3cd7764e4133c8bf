//! Packed binary chromosomes.
//!
//! A [`Genome`] is a fixed-length bit vector; bit `i` set means feature `i`
//! is retained. Problem dimensions reach tens of thousands of features and
//! pairwise Hamming distance over whole populations is a hot path, so bits
//! are packed into `u64` words and the distance is popcount over XORed words.

use crate::error::Error;

const WORD_BITS: usize = 64;

/// Immutable fixed-length bit vector. Variation operators build new genomes
/// instead of mutating in place.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Genome {
    words: Vec<u64>,
    len: usize,
}

impl Genome {
    pub fn zeros(len: usize) -> Self {
        Genome {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for bit in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if bit {
                *words.last_mut().unwrap() |= 1u64 << (len % WORD_BITS);
            }
            len += 1;
        }
        Genome { words, len }
    }

    /// Parses a string of '0'/'1' characters, index 0 first.
    pub fn from_bitstring(s: &str) -> Result<Self, Error> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(Error::Parse(format!("invalid bit character {c:?}"))),
            }
        }
        Ok(Genome::from_bits(bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    pub fn popcount(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn hamming_distance(&self, other: &Genome) -> Result<usize, Error> {
        if self.len != other.len {
            return Err(Error::Dimension {
                expected: self.len,
                got: other.len,
            });
        }
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// Indices of set bits, ascending.
    pub fn selected_indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.popcount());
        for (wi, &word) in self.words.iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + bit);
                w &= w - 1;
            }
        }
        out
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Hex encoding of the packed words, little-endian bit order within each
    /// byte; used by the persisted front files.
    pub fn to_hex(&self) -> String {
        let n_bytes = self.len.div_ceil(8);
        let mut s = String::with_capacity(n_bytes * 2);
        for byte_idx in 0..n_bytes {
            let word = self.words[byte_idx / 8];
            let byte = (word >> ((byte_idx % 8) * 8)) as u8;
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    pub fn from_hex(s: &str, len: usize) -> Result<Self, Error> {
        let n_bytes = len.div_ceil(8);
        if s.len() != n_bytes * 2 {
            return Err(Error::Parse(format!(
                "hex genome length {} does not match dimension {len}",
                s.len()
            )));
        }
        let mut words = vec![0u64; len.div_ceil(WORD_BITS)];
        for byte_idx in 0..n_bytes {
            let byte = u8::from_str_radix(&s[byte_idx * 2..byte_idx * 2 + 2], 16)
                .map_err(|e| Error::Parse(format!("bad hex genome: {e}")))?;
            words[byte_idx / 8] |= (byte as u64) << ((byte_idx % 8) * 8);
        }
        let g = Genome { words, len };
        // trailing bits beyond len must be zero
        if g.popcount() > len {
            return Err(Error::Parse("hex genome has bits past dimension".into()));
        }
        Ok(g)
    }
}

impl std::fmt::Debug for Genome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Genome(len={}, ones={})", self.len, self.popcount())
    }
}

/// Builder used by initializers and variation operators; sealed into an
/// immutable [`Genome`] once filled.
pub struct GenomeBuilder {
    words: Vec<u64>,
    len: usize,
}

impl GenomeBuilder {
    pub fn zeros(len: usize) -> Self {
        GenomeBuilder {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn from_genome(g: &Genome) -> Self {
        GenomeBuilder {
            words: g.words.clone(),
            len: g.len,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn build(self) -> Genome {
        Genome {
            words: self.words,
            len: self.len,
        }
    }
}
