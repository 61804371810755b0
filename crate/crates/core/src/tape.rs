//! Random-access source of colour bits.

use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::hypergraph::VertexId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Color {
    Zero,
    One,
}

impl Color {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Color::One
        } else {
            Color::Zero
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Color::Zero => 0,
            Color::One => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Color::Zero => Color::One,
            Color::One => Color::Zero,
        }
    }
}

/// Colour draws as a pure function of `(seed, vertex, index)`.
///
/// Each vertex owns a ChaCha stream; draw `index` is bit 0 of the
/// `index`-th 32-bit word of that stream. Index 0 is the shattering draw,
/// resampling consumes indices from 1 upward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomTape {
    seed: u64,
}

impl RandomTape {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn color_draw(&self, vertex: VertexId, index: u64) -> Color {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(vertex as u64);
        rng.set_word_pos(index as u128);
        Color::from_bit(rng.next_u32() & 1 == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_pure() {
        let a = RandomTape::new(9);
        let b = RandomTape::new(9);
        for v in 0..50 {
            for i in 0..4 {
                assert_eq!(a.color_draw(v, i), b.color_draw(v, i));
            }
        }
        // Query order must not matter.
        let fwd: Vec<_> = (0..20).map(|v| a.color_draw(v, 0)).collect();
        let rev: Vec<_> = (0..20).rev().map(|v| a.color_draw(v, 0)).collect();
        assert_eq!(fwd, rev.into_iter().rev().collect::<Vec<_>>());
    }

    #[test]
    fn draws_are_roughly_balanced() {
        let tape = RandomTape::new(1);
        let ones = (0..4000).filter(|&v| tape.color_draw(v, 0) == Color::One).count();
        // 4000 fair bits: sd ≈ 31.6
        assert!((ones as i64 - 2000).abs() < 200, "{ones}");
        let ones = (0..4000).filter(|&i| tape.color_draw(3, i) == Color::One).count();
        assert!((ones as i64 - 2000).abs() < 200, "{ones}");
    }
}
