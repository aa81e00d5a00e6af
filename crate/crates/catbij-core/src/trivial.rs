//! The trivial bijections reverse (r), complement (c), inverse (i) and
//! their compositions.
//!
//! Acting on the diagram {(position, value)} of a permutation, r flips
//! positions, c flips values, and i transposes, so the group they generate
//! is the dihedral group of the square, with exactly 8 elements. Each
//! element is stored in the normal form "transpose first, then flip", which
//! makes composition a small boolean calculation instead of a word problem.
//!
//! A word such as "rci" is read in functional order: the rightmost letter
//! acts on the permutation first, so "rci" means r∘c∘i. This matches the
//! usage statR(π) = stat(reverse(π)) and, for stacked superscripts,
//! statRC(π) = stat(r(c(π))).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{Pattern3, Permutation};

/// A normalized element of the 8-element group generated by r, c, i.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrivialWord {
    /// Transpose the diagram (apply inverse) before any flips.
    swap: bool,
    /// Flip positions (x ↦ n+1−x) after the optional transpose.
    flip_pos: bool,
    /// Flip values (y ↦ n+1−y) after the optional transpose.
    flip_val: bool,
}

impl TrivialWord {
    pub const ID: TrivialWord = TrivialWord::new(false, false, false);
    pub const R: TrivialWord = TrivialWord::new(false, true, false);
    pub const C: TrivialWord = TrivialWord::new(false, false, true);
    pub const RC: TrivialWord = TrivialWord::new(false, true, true);
    pub const I: TrivialWord = TrivialWord::new(true, false, false);
    /// r∘i: transpose, then flip positions.
    pub const RI: TrivialWord = TrivialWord::new(true, true, false);
    /// i∘r: transpose, then flip values.
    pub const IR: TrivialWord = TrivialWord::new(true, false, true);
    pub const RCI: TrivialWord = TrivialWord::new(true, true, true);

    const fn new(swap: bool, flip_pos: bool, flip_val: bool) -> Self {
        TrivialWord {
            swap,
            flip_pos,
            flip_val,
        }
    }

    /// All 8 elements, identity first.
    pub const GROUP: [TrivialWord; 8] = [
        TrivialWord::ID,
        TrivialWord::R,
        TrivialWord::C,
        TrivialWord::I,
        TrivialWord::RC,
        TrivialWord::RI,
        TrivialWord::IR,
        TrivialWord::RCI,
    ];

    pub fn is_identity(self) -> bool {
        self == TrivialWord::ID
    }

    /// Image of a diagram point under this symmetry, in an n×n grid.
    fn map_point(self, x: usize, y: usize, n: usize) -> (usize, usize) {
        let (mut u, mut v) = if self.swap { (y, x) } else { (x, y) };
        if self.flip_pos {
            u = n + 1 - u;
        }
        if self.flip_val {
            v = n + 1 - v;
        }
        (u, v)
    }

    /// Applies the symmetry to a permutation.
    pub fn apply(self, p: &Permutation) -> Permutation {
        let n = p.len();
        let mut letters = vec![0; n];
        for (i, &v) in p.letters().iter().enumerate() {
            let (x, y) = self.map_point(i + 1, v, n);
            letters[x - 1] = y;
        }
        Permutation::new(letters).expect("symmetry of a permutation diagram is a permutation")
    }

    /// The pattern class this symmetry maps S(t) onto: w maps S_n(t)
    /// bijectively onto S_n(w(t)).
    pub fn apply_pattern(self, t: Pattern3) -> Pattern3 {
        let image = self.apply(&t.as_permutation());
        Pattern3::from_letters([image.at(1), image.at(2), image.at(3)])
    }

    /// Group law: `self ∘ other`, with `other` acting first.
    pub fn compose(self, other: TrivialWord) -> TrivialWord {
        let (op, ov) = if self.swap {
            (other.flip_val, other.flip_pos)
        } else {
            (other.flip_pos, other.flip_val)
        };
        TrivialWord {
            swap: self.swap ^ other.swap,
            flip_pos: self.flip_pos ^ op,
            flip_val: self.flip_val ^ ov,
        }
    }

    pub fn inverse(self) -> TrivialWord {
        for w in TrivialWord::GROUP {
            if w.compose(self) == TrivialWord::ID {
                return w;
            }
        }
        unreachable!("every group element has an inverse")
    }

    /// Canonical shortest spelling over {r, c, i}, "id" for the identity.
    pub fn name(self) -> &'static str {
        match (self.swap, self.flip_pos, self.flip_val) {
            (false, false, false) => "id",
            (false, true, false) => "r",
            (false, false, true) => "c",
            (false, true, true) => "rc",
            (true, false, false) => "i",
            (true, true, false) => "ri",
            (true, false, true) => "ir",
            (true, true, true) => "rci",
        }
    }

    /// Letter count of the canonical spelling; used as a tie-breaker when
    /// choosing catalog representatives.
    pub fn word_len(self) -> usize {
        if self.is_identity() {
            0
        } else {
            self.name().len()
        }
    }

    /// Deterministic order: by spelling length, then alphabetically.
    pub fn canonical_rank(self) -> usize {
        const ORDER: [TrivialWord; 8] = [
            TrivialWord::ID,
            TrivialWord::C,
            TrivialWord::I,
            TrivialWord::R,
            TrivialWord::IR,
            TrivialWord::RC,
            TrivialWord::RI,
            TrivialWord::RCI,
        ];
        ORDER.iter().position(|&w| w == self).unwrap()
    }
}

impl fmt::Display for TrivialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Debug for TrivialWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TrivialWord {
    type Err = Error;

    /// Parses any word over {r, c, i} in functional order ("rci" = r∘c∘i)
    /// and normalizes it; "id" and "" denote the identity.
    fn from_str(s: &str) -> Result<Self> {
        if s == "id" || s.is_empty() {
            return Ok(TrivialWord::ID);
        }
        let mut acc = TrivialWord::ID;
        for ch in s.chars() {
            let letter = match ch {
                'r' => TrivialWord::R,
                'c' => TrivialWord::C,
                'i' => TrivialWord::I,
                _ => return Err(Error::Parse(format!("bad trivial-word letter {ch:?}"))),
            };
            acc = acc.compose(letter);
        }
        Ok(acc)
    }
}

/// The full 8-element group, identity first.
pub fn trivial_group() -> [TrivialWord; 8] {
    TrivialWord::GROUP
}
