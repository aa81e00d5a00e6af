//! Permutations, pattern avoidance, components and landmark sets.
//!
//! A [`Permutation`] is a word over 1..n in one-line notation. The empty
//! permutation is a first-class value; several recursions below bottom out
//! at it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of {1, ..., n} in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    letters: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation, checking that each of 1..n occurs exactly once.
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        let n = letters.len();
        let mut seen = vec![false; n + 1];
        for &v in &letters {
            if v == 0 || v > n {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("letter {v} out of range"),
                });
            }
            if seen[v] {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("letter {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { letters })
    }

    pub fn empty() -> Self {
        Permutation { letters: vec![] }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            letters: (1..=n).collect(),
        }
    }

    /// One-line word; `letters()[i]` is the letter in position i+1.
    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-indexed position.
    pub fn at(&self, pos: usize) -> usize {
        self.letters[pos - 1]
    }

    /// 1-indexed position of a value.
    pub fn position_of(&self, value: usize) -> usize {
        self.letters.iter().position(|&v| v == value).unwrap() + 1
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.letters.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { letters: inv }
    }

    pub fn reverse(&self) -> Permutation {
        Permutation {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.len();
        Permutation {
            letters: self.letters.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// Direct sum: `self` followed by `other` shifted up by `|self|`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let k = self.len();
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().map(|&v| v + k));
        Permutation { letters }
    }

    /// Splits into components: minimal segments whose letter sets are
    /// intervals {1..k} stacked in increasing order. Their direct sum is
    /// the permutation itself.
    pub fn components(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut start = 0;
        let mut max = 0;
        for (i, &v) in self.letters.iter().enumerate() {
            max = max.max(v);
            if max == i + 1 {
                let seg: Vec<usize> = self.letters[start..=i].iter().map(|&v| v - start).collect();
                out.push(Permutation { letters: seg });
                start = i + 1;
            }
        }
        out
    }

    /// True if no three positions realize the order pattern `t`. Cubic
    /// brute force over index triples; at the lengths this crate works
    /// with that is fast and obviously correct.
    pub fn avoids(&self, t: Pattern3) -> bool {
        let a = &self.letters;
        let n = a.len();
        let [p1, p2, p3] = t.letters();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (a[i], a[j], a[k]);
                    // does (x, y, z) have the same relative order as (p1, p2, p3)?
                    let matches = ((p1 < p2) == (x < y))
                        && ((p2 < p3) == (y < z))
                        && ((p1 < p3) == (x < z));
                    if matches {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn contains(&self, t: Pattern3) -> bool {
        !self.avoids(t)
    }

    /// Landmark set of the requested kind, as 1-indexed (position, value)
    /// pairs sorted by position.
    pub fn landmarks(&self, kind: LandmarkKind) -> LandmarkSet {
        let n = self.len();
        let mut entries = Vec::new();
        match kind {
            LandmarkKind::Lmin | LandmarkKind::Lmax => {
                let mut best: Option<usize> = None;
                for (i, &v) in self.letters.iter().enumerate() {
                    let is_lm = match (kind, best) {
                        (_, None) => true,
                        (LandmarkKind::Lmin, Some(b)) => v < b,
                        (LandmarkKind::Lmax, Some(b)) => v > b,
                        _ => unreachable!(),
                    };
                    if is_lm {
                        best = Some(v);
                        entries.push((i + 1, v));
                    }
                }
            }
            LandmarkKind::Rmin | LandmarkKind::Rmax => {
                let mut best: Option<usize> = None;
                for i in (0..n).rev() {
                    let v = self.letters[i];
                    let is_lm = match (kind, best) {
                        (_, None) => true,
                        (LandmarkKind::Rmin, Some(b)) => v < b,
                        (LandmarkKind::Rmax, Some(b)) => v > b,
                        _ => unreachable!(),
                    };
                    if is_lm {
                        best = Some(v);
                        entries.push((i + 1, v));
                    }
                }
                entries.reverse();
            }
        }
        LandmarkSet { kind, entries }
    }
}

impl fmt::Display for Permutation {
    /// Space-separated decimal letters; the empty permutation prints as "".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts space-separated letters ("5 2 1 3 4 7 6"), or the compact
    /// digit form ("5213476") when every letter is a single digit.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        let letters: Vec<usize> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad letter {tok:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad character {c:?} in permutation")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(letters)
    }
}

/// The six length-3 patterns.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pattern3 {
    P123,
    P132,
    P213,
    P231,
    P312,
    P321,
}

impl Pattern3 {
    pub const ALL: [Pattern3; 6] = [
        Pattern3::P123,
        Pattern3::P132,
        Pattern3::P213,
        Pattern3::P231,
        Pattern3::P312,
        Pattern3::P321,
    ];

    pub fn letters(self) -> [usize; 3] {
        match self {
            Pattern3::P123 => [1, 2, 3],
            Pattern3::P132 => [1, 3, 2],
            Pattern3::P213 => [2, 1, 3],
            Pattern3::P231 => [2, 3, 1],
            Pattern3::P312 => [3, 1, 2],
            Pattern3::P321 => [3, 2, 1],
        }
    }

    pub fn from_letters(letters: [usize; 3]) -> Pattern3 {
        match letters {
            [1, 2, 3] => Pattern3::P123,
            [1, 3, 2] => Pattern3::P132,
            [2, 1, 3] => Pattern3::P213,
            [2, 3, 1] => Pattern3::P231,
            [3, 1, 2] => Pattern3::P312,
            [3, 2, 1] => Pattern3::P321,
            other => panic!("not a length-3 pattern: {other:?}"),
        }
    }

    pub fn as_permutation(self) -> Permutation {
        Permutation::new(self.letters().to_vec()).unwrap()
    }
}

impl fmt::Display for Pattern3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.letters();
        write!(f, "{a}{b}{c}")
    }
}

impl FromStr for Pattern3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "123" => Ok(Pattern3::P123),
            "132" => Ok(Pattern3::P132),
            "213" => Ok(Pattern3::P213),
            "231" => Ok(Pattern3::P231),
            "312" => Ok(Pattern3::P312),
            "321" => Ok(Pattern3::P321),
            _ => Err(Error::Parse(format!("unknown pattern {s:?}"))),
        }
    }
}

/// Which landmark family a [`LandmarkSet`] holds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum LandmarkKind {
    Lmin,
    Rmin,
    Lmax,
    Rmax,
}

/// Positions and values of left/right-to-left minima/maxima.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LandmarkSet {
    pub kind: LandmarkKind,
    /// (position, value) pairs, 1-indexed, sorted by position.
    pub entries: Vec<(usize, usize)>,
}

impl LandmarkSet {
    pub fn contains(&self, pos: usize, value: usize) -> bool {
        self.entries.iter().any(|&(p, v)| p == pos && v == value)
    }

    /// The set as (position, value) pairs.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.entries
    }
}

/// All permutations of length n in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    gen_all(n, &mut current, &mut used, &mut out);
    out
}

fn gen_all(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
    if current.len() == n {
        out.push(Permutation {
            letters: current.clone(),
        });
        return;
    }
    for v in 1..=n {
        if !used[v] {
            used[v] = true;
            current.push(v);
            gen_all(n, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
}

/// All τ-avoiding permutations of length n, in lexicographic order.
///
/// Backtracking with prefix pruning: a prefix that already contains the
/// pattern cannot be completed to an avoider.
pub fn enumerate_class(n: usize, t: Pattern3) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    gen_avoiding(n, t, &mut current, &mut used, &mut out);
    out
}

fn gen_avoiding(
    n: usize,
    t: Pattern3,
    current: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Permutation>,
) {
    if current.len() == n {
        out.push(Permutation {
            letters: current.clone(),
        });
        return;
    }
    for v in 1..=n {
        if used[v] {
            continue;
        }
        current.push(v);
        if !prefix_creates(current, t) {
            used[v] = true;
            gen_avoiding(n, t, current, used, out);
            used[v] = false;
        }
        current.pop();
    }
}

/// Does appending the last letter of `word` complete an occurrence of `t`?
fn prefix_creates(word: &[usize], t: Pattern3) -> bool {
    let m = word.len();
    if m < 3 {
        return false;
    }
    let z = word[m - 1];
    let [p1, p2, p3] = t.letters();
    for i in 0..m - 2 {
        for j in i + 1..m - 1 {
            let (x, y) = (word[i], word[j]);
            if ((p1 < p2) == (x < y)) && ((p2 < p3) == (y < z)) && ((p1 < p3) == (x < z)) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CATALAN;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(p("21").direct_sum(&p("1")), p("213"));
        assert_eq!(p("52134").direct_sum(&p("21")), p("5213476"));
        assert_eq!(Permutation::empty().direct_sum(&p("1")), p("1"));
    }

    #[test]
    fn direct_sum_unit_and_associativity() {
        let e = Permutation::empty();
        for s in ["312", "21", "1"] {
            let s = p(s);
            assert_eq!(e.direct_sum(&s), s);
            assert_eq!(s.direct_sum(&e), s);
        }
        let (a, b, c) = (p("21"), p("132"), p("1"));
        assert_eq!(
            a.direct_sum(&b).direct_sum(&c),
            a.direct_sum(&b.direct_sum(&c))
        );
    }

    #[test]
    fn components_examples() {
        let comps = p("213645").components();
        assert_eq!(comps, vec![p("21"), p("1"), p("312")]);
        // segments of the original word: 21 | 3 | 645
        assert_eq!(comps.len(), 3);
        assert_eq!(p("123").components().len(), 3);
        assert_eq!(p("321").components(), vec![p("321")]);
    }

    #[test]
    fn components_concatenate_back() {
        for n in 0..=6 {
            for perm in all_permutations(n) {
                let comps = perm.components();
                let mut rebuilt = Permutation::empty();
                for c in &comps {
                    rebuilt = rebuilt.direct_sum(c);
                }
                assert_eq!(rebuilt, perm);
            }
        }
    }

    #[test]
    fn avoids_examples() {
        assert!(p("6743152").avoids(Pattern3::P123));
        assert!(!p("321").avoids(Pattern3::P321));
        assert!(p("7564213").avoids(Pattern3::P132));
        assert!(!p("2314657").avoids(Pattern3::P132)); // (2,6,5) is a 132
    }

    #[test]
    fn enumerate_class_counts_match_catalan() {
        for n in 0..=7 {
            for t in Pattern3::ALL {
                assert_eq!(
                    enumerate_class(n, t).len() as u64,
                    CATALAN[n],
                    "n={n} t={t}"
                );
            }
        }
    }

    #[test]
    fn enumerate_class_is_sorted_and_avoiding() {
        let perms = enumerate_class(5, Pattern3::P132);
        for w in perms.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(perms.iter().all(|q| q.avoids(Pattern3::P132)));
    }

    #[test]
    fn enumeration_agrees_with_filtering() {
        for t in Pattern3::ALL {
            for n in 0..=5 {
                let by_filter: Vec<_> = all_permutations(n)
                    .into_iter()
                    .filter(|q| q.avoids(t))
                    .collect();
                assert_eq!(enumerate_class(n, t), by_filter);
            }
        }
    }

    #[test]
    fn landmark_examples() {
        let l = p("67324158").landmarks(LandmarkKind::Lmin);
        assert_eq!(l.pairs(), &[(1, 6), (3, 3), (4, 2), (6, 1)]);
        assert_eq!(p("123").landmarks(LandmarkKind::Lmin).pairs(), &[(1, 1)]);
        // on an increasing word every letter is a left-to-right maximum
        // and a right-to-left minimum; only the last is a right-to-left
        // maximum
        assert_eq!(
            p("123").landmarks(LandmarkKind::Rmin).pairs(),
            &[(1, 1), (2, 2), (3, 3)]
        );
        assert_eq!(
            p("123").landmarks(LandmarkKind::Lmax).pairs(),
            &[(1, 1), (2, 2), (3, 3)]
        );
        assert_eq!(p("123").landmarks(LandmarkKind::Rmax).pairs(), &[(3, 3)]);
        assert_eq!(
            p("536142").landmarks(LandmarkKind::Rmax).pairs(),
            &[(3, 6), (5, 4), (6, 2)]
        );
    }

    #[test]
    fn landmark_monotonicity() {
        for perm in all_permutations(6) {
            let lmin = perm.landmarks(LandmarkKind::Lmin);
            for w in lmin.pairs().windows(2) {
                assert!(w[0].0 < w[1].0 && w[0].1 > w[1].1);
            }
            let rmin = perm.landmarks(LandmarkKind::Rmin);
            for w in rmin.pairs().windows(2) {
                assert!(w[0].0 < w[1].0 && w[0].1 < w[1].1);
            }
        }
    }

    /// Both S_n(123) and S_n(132) are complete sets of representatives for
    /// the LMIN equivalence classes.
    #[test]
    fn lmin_classes_have_unique_avoider_representatives() {
        use std::collections::BTreeSet;
        for n in 1..=6 {
            let images = |t: Pattern3| -> BTreeSet<Vec<(usize, usize)>> {
                let perms = enumerate_class(n, t);
                let set: BTreeSet<_> = perms
                    .iter()
                    .map(|q| q.landmarks(LandmarkKind::Lmin).pairs().to_vec())
                    .collect();
                assert_eq!(set.len(), perms.len(), "LMIN not injective on S_{n}({t})");
                set
            };
            assert_eq!(images(Pattern3::P123), images(Pattern3::P132));
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        assert_eq!(p("5 2 1 3 4 7 6"), p("5213476"));
        assert_eq!(p("5213476").to_string(), "5 2 1 3 4 7 6");
        assert_eq!(Permutation::empty().to_string(), "");
        assert_eq!("".parse::<Permutation>().unwrap(), Permutation::empty());
        assert!("122".parse::<Permutation>().is_err());
        assert!("104".parse::<Permutation>().is_err());
        // multi-digit letters need the spaced form
        let big = p("4 1 5 7 2 3 6 8 10 9 11");
        assert_eq!(big.len(), 11);
    }
}
