//! Codings between pattern-avoiding permutations and Dyck paths: the
//! standard recursive bijection, Rotem's ballot encoding, two-row RSK,
//! Richards' decoder, Krattenthaler's encoder, the Elizalde-Deutsch array
//! walks, and the zigzag/trapezoidal strip decoders built on canonical
//! reduced decompositions.
//!
//! Each encoder checks its domain class and reports the violated pattern;
//! each decoder accepts any valid Dyck path.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dyck::{DyckPath, Step};
use crate::error::{Error, Result};
use crate::perm::{LandmarkKind, Pattern3, Permutation};

// ---------------------------------------------------------------------------
// standard bijection f: S(132) -> Dyck
// ---------------------------------------------------------------------------

/// The standard bijection: f(π_L n π_R) = u f(π_L) d f(π_R).
///
/// The position of the largest letter determines the first return to the
/// axis.
pub fn standard_f(p: &Permutation) -> Result<DyckPath> {
    if p.contains(Pattern3::P132) {
        return Err(Error::DomainViolation {
            pattern: Pattern3::P132,
            operation: "standard_f",
        });
    }
    let mut steps = Vec::with_capacity(2 * p.len());
    f_rec(p.letters(), &mut steps);
    DyckPath::new(steps)
}

fn f_rec(word: &[usize], steps: &mut Vec<Step>) {
    if word.is_empty() {
        return;
    }
    let (max_idx, _) = word
        .iter()
        .enumerate()
        .max_by_key(|&(_, v)| v)
        .expect("nonempty");
    steps.push(Step::U);
    f_rec(&word[..max_idx], steps);
    steps.push(Step::D);
    f_rec(&word[max_idx + 1..], steps);
}

/// Inverse of the standard bijection.
pub fn standard_f_inv(path: &DyckPath) -> Permutation {
    let letters = f_inv_rec(path.steps(), 0);
    Permutation::new(letters).expect("f_inv produces a permutation")
}

/// Decodes `steps` into a permutation of {base+1, ..., base+n}.
fn f_inv_rec(steps: &[Step], base: usize) -> Vec<usize> {
    if steps.is_empty() {
        return vec![];
    }
    // split u A d B at the first return to the axis
    let mut height = 0isize;
    let mut split = 0;
    for (i, &s) in steps.iter().enumerate() {
        height += if s == Step::U { 1 } else { -1 };
        if height == 0 {
            split = i;
            break;
        }
    }
    let inner = &steps[1..split];
    let rest = &steps[split + 1..];
    let n = steps.len() / 2;
    let right = f_inv_rec(rest, base);
    // left letters sit above everything in the right part
    let left = f_inv_rec(inner, base + right.len());
    let mut out = left;
    out.push(base + n);
    out.extend(right);
    out
}

// ---------------------------------------------------------------------------
// Rotem's ballot sequences: S(321) <-> ballot <-> Dyck
// ---------------------------------------------------------------------------

/// A ballot sequence: b_1 ≤ b_2 ≤ ... ≤ b_n with 0 ≤ b_i ≤ i−1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct BallotSequence {
    values: Vec<usize>,
}

impl BallotSequence {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        for (i, &b) in values.iter().enumerate() {
            if b > i {
                return Err(Error::Invariant(format!(
                    "ballot value b_{} = {b} exceeds {i}",
                    i + 1
                )));
            }
            if i > 0 && b < values[i - 1] {
                return Err(Error::Invariant(format!(
                    "ballot values decrease at position {}",
                    i + 1
                )));
            }
        }
        Ok(BallotSequence { values })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for BallotSequence {
    /// Digit string when every value fits in one digit, else
    /// space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.iter().all(|&v| v <= 9) {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let words: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            f.write_str(&words.join(" "))
        }
    }
}

impl FromStr for BallotSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return BallotSequence::new(vec![]);
        }
        let values: Vec<usize> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|tok| {
                    tok.parse()
                        .map_err(|_| Error::Parse(format!("bad ballot value {tok:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad ballot digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        BallotSequence::new(values)
    }
}

/// Rotem's encoding: b_1 = 0; b_i = b_{i−1} if p_i is a left-to-right
/// maximum, else b_i = p_i.
pub fn rotem_encode(p: &Permutation) -> Result<BallotSequence> {
    if p.contains(Pattern3::P321) {
        return Err(Error::DomainViolation {
            pattern: Pattern3::P321,
            operation: "rotem_encode",
        });
    }
    let mut values = Vec::with_capacity(p.len());
    let mut max = 0;
    for &v in p.letters() {
        if v > max {
            max = v;
            values.push(values.last().copied().unwrap_or(0));
        } else {
            values.push(v);
        }
    }
    BallotSequence::new(values)
}

/// Inverse of [`rotem_encode`]: a repeated value marks a left-to-right
/// maximum (filled with the unused values in increasing order); any other
/// position holds its ballot value.
pub fn rotem_decode(b: &BallotSequence) -> Permutation {
    let n = b.len();
    let mut letters = vec![0usize; n];
    let mut used = vec![false; n + 1];
    for (i, &v) in b.values().iter().enumerate() {
        let prev = if i == 0 { 0 } else { b.values()[i - 1] };
        if i > 0 && v != prev {
            letters[i] = v;
            used[v] = true;
        }
    }
    let mut fill = (1..=n).filter(|&v| !used[v]);
    for slot in letters.iter_mut() {
        if *slot == 0 {
            *slot = fill.next().expect("as many maxima as unused values");
        }
    }
    Permutation::new(letters).expect("ballot decodes to a permutation")
}

/// The Dyck path of a ballot sequence: the bar-diagram staircase read from
/// its far end, with right-steps becoming down-steps.
///
/// Concretely: u^(n−b_n), then for i = n down to 1 a down-step followed by
/// b_i − b_{i−1} up-steps.
pub fn ballot_to_path(b: &BallotSequence) -> DyckPath {
    let n = b.len();
    let v = b.values();
    let mut steps = Vec::with_capacity(2 * n);
    let last = v.last().copied().unwrap_or(0);
    steps.extend(std::iter::repeat_n(Step::U, n - last));
    for i in (0..n).rev() {
        steps.push(Step::D);
        let prev = if i == 0 { 0 } else { v[i - 1] };
        steps.extend(std::iter::repeat_n(Step::U, v[i] - prev));
    }
    DyckPath::new(steps).expect("ballot staircase is a Dyck path")
}

/// Inverse of [`ballot_to_path`].
pub fn path_to_ballot(path: &DyckPath) -> BallotSequence {
    // read the staircase back: b_i = number of staircase up-steps before
    // its i-th right-step; the staircase is the reversed path with the
    // step kinds swapped
    let mut values = Vec::with_capacity(path.semilength());
    let mut ups = 0;
    for &s in path.steps().iter().rev() {
        match s {
            Step::U => ups += 1,
            Step::D => values.push(ups),
        }
    }
    BallotSequence::new(values).expect("staircase of a Dyck path is a ballot sequence")
}

// ---------------------------------------------------------------------------
// two-row RSK: S(321) <-> tableau pairs <-> Dyck
// ---------------------------------------------------------------------------

/// A pair of two-row standard Young tableaux of the same shape.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TwoRowTableauPair {
    pub p_row1: Vec<usize>,
    pub p_row2: Vec<usize>,
    pub q_row1: Vec<usize>,
    pub q_row2: Vec<usize>,
}

impl TwoRowTableauPair {
    pub fn n(&self) -> usize {
        self.p_row1.len() + self.p_row2.len()
    }

    /// Checks shape equality, row/column increase, and that the entries
    /// of each tableau are exactly 1..n.
    pub fn validate(&self) -> Result<()> {
        if self.p_row1.len() != self.q_row1.len() || self.p_row2.len() != self.q_row2.len() {
            return Err(Error::Invariant("P and Q have different shapes".into()));
        }
        if self.p_row2.len() > self.p_row1.len() {
            return Err(Error::Invariant("second row longer than first".into()));
        }
        for (r1, r2) in [(&self.p_row1, &self.p_row2), (&self.q_row1, &self.q_row2)] {
            for row in [r1, r2] {
                if row.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Invariant("row not strictly increasing".into()));
                }
            }
            for (j, &v) in r2.iter().enumerate() {
                if r1[j] >= v {
                    return Err(Error::Invariant("column not strictly increasing".into()));
                }
            }
            let mut all: Vec<usize> = r1.iter().chain(r2.iter()).copied().collect();
            all.sort_unstable();
            if all != (1..=self.n()).collect::<Vec<_>>() {
                return Err(Error::Invariant("entries are not 1..n".into()));
            }
        }
        Ok(())
    }
}

/// Robinson-Schensted row insertion. For a 321-avoider the tableaux have
/// at most two rows; an insertion that would need a third row certifies a
/// 321 occurrence and is rejected.
pub fn rsk_two_row(p: &Permutation) -> Result<TwoRowTableauPair> {
    let mut t = TwoRowTableauPair {
        p_row1: vec![],
        p_row2: vec![],
        q_row1: vec![],
        q_row2: vec![],
    };
    for (i, &v) in p.letters().iter().enumerate() {
        match t.p_row1.iter().position(|&x| x > v) {
            None => {
                t.p_row1.push(v);
                t.q_row1.push(i + 1);
            }
            Some(j) => {
                let bumped = std::mem::replace(&mut t.p_row1[j], v);
                if t.p_row2.last().is_some_and(|&x| x > bumped) {
                    return Err(Error::DomainViolation {
                        pattern: Pattern3::P321,
                        operation: "rsk_two_row",
                    });
                }
                t.p_row2.push(bumped);
                t.q_row2.push(i + 1);
            }
        }
    }
    Ok(t)
}

/// Inverse Robinson-Schensted: reverse the insertions recorded by Q.
pub fn rsk_inverse(t: &TwoRowTableauPair) -> Result<Permutation> {
    t.validate()?;
    let n = t.n();
    let mut p_row1 = t.p_row1.clone();
    let mut p_row2 = t.p_row2.clone();
    let mut q_row1 = t.q_row1.clone();
    let mut q_row2 = t.q_row2.clone();
    let mut letters = vec![0usize; n];
    for i in (1..=n).rev() {
        if q_row2.last() == Some(&i) {
            q_row2.pop();
            let m = p_row2.pop().expect("shapes match");
            // the inserted letter took the slot of m: it is the rightmost
            // first-row entry smaller than m
            let j = p_row1
                .iter()
                .rposition(|&x| x < m)
                .ok_or_else(|| Error::Invariant("unbumpable tableau".into()))?;
            letters[i - 1] = std::mem::replace(&mut p_row1[j], m);
        } else if q_row1.last() == Some(&i) {
            q_row1.pop();
            letters[i - 1] = p_row1.pop().expect("shapes match");
        } else {
            return Err(Error::Invariant(format!("{i} is not at a row end of Q")));
        }
    }
    Permutation::new(letters)
}

/// Turns a tableau pair into the Dyck path A·Bʳ: A records row membership
/// of 1..n in P (row 1 = up), B does the same for Q with the roles of up
/// and down interchanged, and Bʳ is B reversed.
#[allow(clippy::needless_range_loop)]
pub fn tableaux_to_path(t: &TwoRowTableauPair) -> Result<DyckPath> {
    t.validate()?;
    let n = t.n();
    let mut in_p_row2 = vec![false; n + 1];
    for &v in &t.p_row2 {
        in_p_row2[v] = true;
    }
    let mut in_q_row2 = vec![false; n + 1];
    for &v in &t.q_row2 {
        in_q_row2[v] = true;
    }
    let mut steps = Vec::with_capacity(2 * n);
    for v in 1..=n {
        steps.push(if in_p_row2[v] { Step::D } else { Step::U });
    }
    for v in (1..=n).rev() {
        steps.push(if in_q_row2[v] { Step::U } else { Step::D });
    }
    DyckPath::new(steps)
}

/// Inverse of [`tableaux_to_path`].
pub fn path_to_tableaux(path: &DyckPath) -> Result<TwoRowTableauPair> {
    let n = path.semilength();
    let steps = path.steps();
    let mut t = TwoRowTableauPair {
        p_row1: vec![],
        p_row2: vec![],
        q_row1: vec![],
        q_row2: vec![],
    };
    for v in 1..=n {
        match steps[v - 1] {
            Step::U => t.p_row1.push(v),
            Step::D => t.p_row2.push(v),
        }
    }
    for v in 1..=n {
        // B is the reversed second half; B_v = down means v is in Q row 1
        match steps[2 * n - v] {
            Step::D => t.q_row1.push(v),
            Step::U => t.q_row2.push(v),
        }
    }
    t.validate()?;
    Ok(t)
}

// ---------------------------------------------------------------------------
// Richards' decoder: Dyck -> S(123)
// ---------------------------------------------------------------------------

/// Richards' algorithm, stated over the steps b_1...b_2n:
///
/// ```text
/// r := n+1; s := n+1; j := 1
/// for i = 1..n:
///     if b_j is an up-step:
///         repeat s := s-1; j := j+1 until b_j is a down-step
///         a_s := i
///     else:
///         repeat r := r-1 until a_r is unset
///         a_r := i
///     j := j+1
/// ```
pub fn richards_decode(path: &DyckPath) -> Permutation {
    let steps = path.steps();
    let n = path.semilength();
    let mut letters = vec![0usize; n + 1];
    let mut r = n + 1;
    let mut s = n + 1;
    let mut j = 0; // 0-indexed cursor into steps
    for i in 1..=n {
        if steps[j] == Step::U {
            loop {
                s -= 1;
                j += 1;
                if steps[j] == Step::D {
                    break;
                }
            }
            letters[s] = i;
        } else {
            loop {
                r -= 1;
                if letters[r] == 0 {
                    break;
                }
            }
            letters[r] = i;
        }
        j += 1;
    }
    Permutation::new(letters[1..=n].to_vec()).expect("Richards' algorithm fills 1..n")
}

/// Inverse of [`richards_decode`], via the peak correspondence:
/// (n+1−i, a) is a left-to-right minimum of the output exactly when
/// (i, a) is a peak of the path.
pub fn richards_encode(p: &Permutation) -> Result<DyckPath> {
    if p.contains(Pattern3::P123) {
        return Err(Error::DomainViolation {
            pattern: Pattern3::P123,
            operation: "richards_encode",
        });
    }
    let n = p.len();
    let peaks: Vec<(usize, usize)> = p
        .landmarks(LandmarkKind::Lmin)
        .pairs()
        .iter()
        .rev()
        .map(|&(pos, val)| (n + 1 - pos, val))
        .collect();
    DyckPath::from_peaks(&peaks, n)
}

// ---------------------------------------------------------------------------
// Krattenthaler's encoder: S(123) -> Dyck
// ---------------------------------------------------------------------------

/// Reading right to left, each right-to-left maximum m_i contributes
/// m_i − m_{i−1} up-steps and each in-between subword w_i contributes
/// |w_i| + 1 down-steps; the resulting path is then reflected in a
/// vertical line.
pub fn krattenthaler_encode(p: &Permutation) -> Result<DyckPath> {
    Ok(krattenthaler_pre_reflection(p)?.reflect())
}

/// The Krattenthaler path before the final reflection; the peak
/// correspondence with right-to-left maxima is naturally stated here.
pub fn krattenthaler_pre_reflection(p: &Permutation) -> Result<DyckPath> {
    if p.contains(Pattern3::P123) {
        return Err(Error::DomainViolation {
            pattern: Pattern3::P123,
            operation: "krattenthaler_encode",
        });
    }
    let mut steps = Vec::with_capacity(2 * p.len());
    let mut prev_max = 0;
    let mut gap = 0; // letters seen since the previous right-to-left maximum
    for &v in p.letters().iter().rev() {
        if v > prev_max {
            if prev_max != 0 {
                steps.extend(std::iter::repeat_n(Step::D, gap + 1));
            }
            steps.extend(std::iter::repeat_n(Step::U, v - prev_max));
            prev_max = v;
            gap = 0;
        } else {
            gap += 1;
        }
    }
    if prev_max != 0 {
        steps.extend(std::iter::repeat_n(Step::D, gap + 1));
    }
    DyckPath::new(steps)
}

/// Inverse of [`krattenthaler_encode`]: un-reflect, split into runs to
/// recover the right-to-left maxima and the subword sizes, and fill the
/// subwords with the remaining letters, smallest letters rightmost, each
/// subword written in decreasing order.
pub fn krattenthaler_decode(path: &DyckPath) -> Permutation {
    let pre = path.reflect();
    let n = pre.semilength();
    let mut maxima = Vec::new();
    let mut gaps = Vec::new();
    let mut height_sum = 0;
    let mut i = 0;
    let steps = pre.steps();
    while i < steps.len() {
        let mut ups = 0;
        while i < steps.len() && steps[i] == Step::U {
            ups += 1;
            i += 1;
        }
        let mut downs = 0;
        while i < steps.len() && steps[i] == Step::D {
            downs += 1;
            i += 1;
        }
        height_sum += ups;
        maxima.push(height_sum);
        gaps.push(downs - 1);
    }
    let mut is_max = vec![false; n + 1];
    for &m in &maxima {
        is_max[m] = true;
    }
    let mut rest = (1..=n).filter(|&v| !is_max[v]);
    // w_1 takes the smallest letters, w_2 the next ones, and so on
    let words: Vec<Vec<usize>> = gaps
        .iter()
        .map(|&g| {
            let mut w: Vec<usize> = (&mut rest).take(g).collect();
            w.reverse();
            w
        })
        .collect();
    let mut letters = Vec::with_capacity(n);
    for k in (0..maxima.len()).rev() {
        letters.extend(&words[k]);
        letters.push(maxima[k]);
    }
    Permutation::new(letters).expect("runs decode to a permutation")
}

// ---------------------------------------------------------------------------
// Elizalde-Deutsch array walks
// ---------------------------------------------------------------------------

/// The diagonal-hugging staircase walk over the array of a 321-avoider:
/// in row r the walk descends at column max(r, max of π(1..r)), i.e. as
/// close to the main diagonal as the crosses allow, keeping them all on
/// its right; right-moves are read as up-steps and down-moves as
/// down-steps.
pub fn ed_psi(p: &Permutation) -> Result<DyckPath> {
    if p.contains(Pattern3::P321) {
        return Err(Error::DomainViolation {
            pattern: Pattern3::P321,
            operation: "ed_psi",
        });
    }
    let mut steps = Vec::with_capacity(2 * p.len());
    let mut running_max = 0;
    let mut prev = 0;
    for (r, &v) in p.letters().iter().enumerate() {
        running_max = running_max.max(v);
        let c = running_max.max(r + 1);
        steps.extend(std::iter::repeat_n(Step::U, c - prev));
        steps.push(Step::D);
        prev = c;
    }
    DyckPath::new(steps)
}

/// Inverse of [`ed_psi`]: a column jump above both the diagonal and the
/// previous maximum announces a new left-to-right maximum; all other
/// letters are the unused values in increasing order.
pub fn ed_psi_inv(path: &DyckPath) -> Permutation {
    let n = path.semilength();
    let mut cols = Vec::with_capacity(n);
    let mut ups = 0;
    for &s in path.steps() {
        match s {
            Step::U => ups += 1,
            Step::D => cols.push(ups),
        }
    }
    let mut letters = vec![0usize; n];
    let mut used = vec![false; n + 1];
    let mut running_max = 0;
    for (r, &c) in cols.iter().enumerate() {
        if c > running_max {
            letters[r] = c;
            used[c] = true;
            running_max = c;
        }
    }
    let mut fill = (1..=n).filter(|&v| !used[v]);
    for slot in letters.iter_mut() {
        if *slot == 0 {
            *slot = fill.next().expect("enough unused letters");
        }
    }
    Permutation::new(letters).expect("walk columns decode to a permutation")
}

/// The 132-avoider coding: the standard bijection followed by a
/// reflection.
pub fn ed_phi(p: &Permutation) -> Result<DyckPath> {
    if p.contains(Pattern3::P132) {
        return Err(Error::DomainViolation {
            pattern: Pattern3::P132,
            operation: "ed_phi",
        });
    }
    Ok(standard_f(p)?.reflect())
}

/// Inverse of [`ed_phi`].
pub fn ed_phi_inv(path: &DyckPath) -> Permutation {
    standard_f_inv(&path.reflect())
}

/// The Dyck-path automorphism used between the two codings; see
/// [`DyckPath::outside_in_relabel`].
pub fn ed_big_psi(path: &DyckPath) -> DyckPath {
    path.outside_in_relabel()
}

// ---------------------------------------------------------------------------
// canonical reduced decompositions and the strip decoders
// ---------------------------------------------------------------------------

/// A canonical reduced decomposition: π = (12...n) σ_1 ... σ_k with runs
/// σ_j = s_{h_j} s_{h_j − 1} ... s_{t_j}, h_j ≥ t_j and h_1 < h_2 < ... .
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ReducedWord {
    runs: Vec<(usize, usize)>,
}

impl ReducedWord {
    /// Validates the run shape: each head at least its tail, tails
    /// positive, heads strictly increasing.
    pub fn new(runs: Vec<(usize, usize)>) -> Result<Self> {
        for (j, &(h, t)) in runs.iter().enumerate() {
            if t == 0 || h < t {
                return Err(Error::Invariant(format!("bad run (h={h}, t={t})")));
            }
            if j > 0 && runs[j - 1].0 >= h {
                return Err(Error::Invariant(format!(
                    "run heads not increasing: {} then {h}",
                    runs[j - 1].0
                )));
            }
        }
        Ok(ReducedWord { runs })
    }

    pub fn empty() -> Self {
        ReducedWord { runs: vec![] }
    }

    /// (head, tail) pairs.
    pub fn runs(&self) -> &[(usize, usize)] {
        &self.runs
    }

    /// Applies the word to the identity of length n. Each s_k swaps the
    /// letters in positions k and k+1, runs acting left to right and each
    /// run from its head down to its tail.
    pub fn apply(&self, n: usize) -> Result<Permutation> {
        let mut letters: Vec<usize> = (1..=n).collect();
        for &(h, t) in &self.runs {
            if h > n.saturating_sub(1) {
                return Err(Error::Invariant(format!(
                    "transposition s_{h} out of range for length {n}"
                )));
            }
            for k in (t..=h).rev() {
                letters.swap(k - 1, k);
            }
        }
        Permutation::new(letters)
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("()");
        }
        for &(h, t) in &self.runs {
            f.write_str("(")?;
            for k in (t..=h).rev() {
                write!(f, "s{k}")?;
                if k > t {
                    f.write_str(" ")?;
                }
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// The canonical reduced decomposition of a permutation, computed by
/// repeatedly re-homing the largest displaced letter: if p is the largest
/// position with π(p) ≠ p, the last run is (p−1, position of the letter p),
/// and removing that run moves p back home.
pub fn canonical_decomposition(p: &Permutation) -> ReducedWord {
    let mut letters = p.letters().to_vec();
    let mut runs = Vec::new();
    while let Some(pos) = (0..letters.len()).rev().find(|&i| letters[i] != i + 1) {
        let target = pos + 1; // the displaced letter, 1-indexed
        let at = letters.iter().position(|&v| v == target).unwrap(); // 0-indexed
        runs.push((target - 1, at + 1));
        letters.remove(at);
        letters.insert(target - 1, target);
    }
    runs.reverse();
    ReducedWord::new(runs).expect("peeling yields increasing heads")
}

/// Column heights of the staircase form of a Dyck path: entry a is the
/// number of up-steps before the (a+1)-th down-step.
fn staircase_heights(path: &DyckPath) -> Vec<usize> {
    let mut heights = Vec::with_capacity(path.semilength());
    let mut ups = 0;
    for &s in path.steps() {
        match s {
            Step::U => ups += 1,
            Step::D => heights.push(ups),
        }
    }
    heights
}

/// Decodes a Dyck path into a 321-avoiding permutation by repeatedly
/// removing the zigzag strip: the run of column-top cells that starts at
/// the rightmost essential cell (an essential cell sits to the right of the
/// second of two consecutive up-steps) and follows the border east while
/// the profile rises by at most one per column.
///
/// Cells are labeled by their diagonal index; a strip whose labels run
/// from t up to h contributes the run s_h s_{h−1} ... s_t, and the strips,
/// last removed first, form the canonical reduced decomposition of the
/// output.
pub fn mdd_zigzag_decode(path: &DyckPath) -> Permutation {
    let n = path.semilength();
    let mut h = staircase_heights(path);
    let mut runs = Vec::new();
    loop {
        // essential columns: at least two up-steps enter the column line
        let mut best: Option<usize> = None;
        for a in 0..n {
            let below = if a == 0 { 0 } else { h[a - 1] };
            if h[a] >= below + 2 {
                let x = a + h[a]; // rightmost in diamond coordinates
                if best.is_none_or(|b| (b + h[b], b) < (x, a)) {
                    best = Some(a);
                }
            }
        }
        let Some(a0) = best else { break };
        let tail = h[a0] - 1;
        let mut a1 = a0;
        while a1 + 1 < n && h[a1 + 1] >= a1 + 3 && h[a1 + 1] <= h[a1] + 1 {
            a1 += 1;
        }
        let head = h[a1] - 1;
        runs.push((head, tail));
        for col in h.iter_mut().take(a1 + 1).skip(a0) {
            *col -= 1;
        }
    }
    runs.reverse();
    let word = ReducedWord::new(runs).expect("zigzag strips peel canonically");
    word.apply(n).expect("strip labels stay below n")
}

/// Decodes a Dyck path into a 231-avoiding permutation via trapezoidal
/// strips: the eastmost run of cells on the current base line is removed,
/// the path splits into the prefix before that run and the elevated rest,
/// and both parts are decoded recursively (the elevated part against a
/// base line one higher). Cell labels are absolute columns + 1 throughout.
pub fn mdd_trapezoid_decode(path: &DyckPath) -> Permutation {
    let n = path.semilength();
    let h = staircase_heights(path);
    let mut runs = Vec::new();
    trapezoid_rec(&h, 0, n, 0, &mut runs);
    let word = ReducedWord::new(runs).expect("trapezoidal strips peel canonically");
    word.apply(n).expect("strip labels stay below n")
}

fn trapezoid_rec(h: &[usize], lo: usize, hi: usize, shift: usize, runs: &mut Vec<(usize, usize)>) {
    // columns with a cell on the current base line
    let on_base: Vec<usize> = (lo..hi).filter(|&a| h[a] >= a + shift + 2).collect();
    let Some(&c2) = on_base.last() else { return };
    let mut c1 = c2;
    while c1 > lo && on_base.contains(&(c1 - 1)) {
        c1 -= 1;
    }
    trapezoid_rec(h, lo, c1, shift, runs);
    trapezoid_rec(h, c1, hi, shift + 1, runs);
    runs.push((c2 + 1, c1 + 1));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_class;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn d(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    #[test]
    fn standard_f_examples() {
        assert_eq!(standard_f(&p("7564213")).unwrap(), d("uduudduduududd"));
        assert_eq!(standard_f(&p("1")).unwrap(), d("ud"));
        assert_eq!(standard_f(&p("12")).unwrap(), d("uudd"));
        assert!(standard_f(&p("132")).is_err());
    }

    #[test]
    fn standard_f_inv_examples() {
        assert_eq!(standard_f_inv(&d("uduudduduududd")), p("7564213"));
        assert_eq!(standard_f_inv(&d("ud")), p("1"));
        assert_eq!(standard_f_inv(&d("udud")), p("21"));
    }

    #[test]
    fn standard_f_round_trips() {
        for n in 0..=7 {
            for q in enumerate_class(n, Pattern3::P132) {
                assert_eq!(standard_f_inv(&standard_f(&q).unwrap()), q);
            }
        }
    }

    /// The left-to-right height description of the path is an independent
    /// route to the standard bijection: when p_j is read, rise to one more
    /// than the number of later letters exceeding p_j, then step down.
    #[test]
    fn standard_f_matches_height_description() {
        for n in 0..=7 {
            for q in enumerate_class(n, Pattern3::P132) {
                let a = q.letters();
                let mut steps = Vec::new();
                let mut height = 0isize;
                for j in 0..n {
                    let h = a[j + 1..].iter().filter(|&&x| x > a[j]).count() as isize;
                    steps.extend(repeat(Step::U).take((h + 1 - height) as usize));
                    steps.push(Step::D);
                    height = h;
                }
                let path = DyckPath::new(steps).unwrap();
                assert_eq!(path, standard_f(&q).unwrap(), "{q:?}");
            }
        }
    }

    #[test]
    fn rotem_examples() {
        assert_eq!(rotem_encode(&p("2513476")).unwrap().to_string(), "0013446");
        assert_eq!(rotem_encode(&p("123")).unwrap().to_string(), "000");
        assert_eq!(rotem_encode(&p("21")).unwrap().to_string(), "01");
        assert!(rotem_encode(&p("321")).is_err());
    }

    #[test]
    fn ballot_to_path_examples() {
        let b: BallotSequence = "0013446".parse().unwrap();
        assert_eq!(ballot_to_path(&b), d("uduudduduududd"));
        // composed check through the assembly
        let via = ballot_to_path(&rotem_encode(&p("2513476")).unwrap());
        assert_eq!(via, standard_f(&p("7564213")).unwrap());
        let b01: BallotSequence = "01".parse().unwrap();
        assert_eq!(ballot_to_path(&b01), d("udud"));
        // the identity's ballot word is all zeros and codes the spike path
        let b000: BallotSequence = "000".parse().unwrap();
        assert_eq!(ballot_to_path(&b000), d("uuuddd"));
    }

    #[test]
    fn ballot_round_trips() {
        for n in 0..=7 {
            for q in enumerate_class(n, Pattern3::P321) {
                let b = rotem_encode(&q).unwrap();
                assert_eq!(rotem_decode(&b), q);
                let path = ballot_to_path(&b);
                assert_eq!(path_to_ballot(&path), b);
            }
        }
    }

    #[test]
    fn ballot_invariants_enforced() {
        assert!("021".parse::<BallotSequence>().is_err());
        assert!("02".parse::<BallotSequence>().is_err());
        assert!("0012".parse::<BallotSequence>().is_ok());
    }

    #[test]
    fn rsk_examples() {
        let t = rsk_two_row(&p("3156247")).unwrap();
        assert_eq!(t.p_row1, vec![1, 2, 4, 7]);
        assert_eq!(t.p_row2, vec![3, 5, 6]);
        assert_eq!(t.q_row1, vec![1, 3, 4, 7]);
        assert_eq!(t.q_row2, vec![2, 5, 6]);

        let t = rsk_two_row(&p("123")).unwrap();
        assert_eq!(t.p_row1, vec![1, 2, 3]);
        assert!(t.p_row2.is_empty());
        assert_eq!(t.q_row1, vec![1, 2, 3]);

        let t = rsk_two_row(&p("21")).unwrap();
        assert_eq!((t.p_row1, t.p_row2), (vec![1], vec![2]));
        assert_eq!((t.q_row1, t.q_row2), (vec![1], vec![2]));

        assert!(rsk_two_row(&p("321")).is_err());
    }

    #[test]
    fn tableaux_to_path_examples() {
        let t = rsk_two_row(&p("3156247")).unwrap();
        assert_eq!(tableaux_to_path(&t).unwrap(), d("uududduduuddud"));
        let t = rsk_two_row(&p("123")).unwrap();
        assert_eq!(tableaux_to_path(&t).unwrap(), d("uuuddd"));
        let t = rsk_two_row(&p("21")).unwrap();
        assert_eq!(tableaux_to_path(&t).unwrap(), d("udud"));
    }

    #[test]
    fn rsk_round_trips() {
        for n in 0..=7 {
            for q in enumerate_class(n, Pattern3::P321) {
                let t = rsk_two_row(&q).unwrap();
                assert_eq!(rsk_inverse(&t).unwrap(), q);
                let path = tableaux_to_path(&t).unwrap();
                assert_eq!(path_to_tableaux(&path).unwrap(), t);
            }
        }
    }

    #[test]
    fn rsk_succeeds_exactly_on_two_row_shapes() {
        use crate::perm::all_permutations;
        use crate::stats::{eval_base, BaseStat};
        for q in all_permutations(6) {
            let ok = rsk_two_row(&q).is_ok();
            assert_eq!(ok, eval_base(BaseStat::Lds, &q) <= 2, "{q:?}");
        }
    }

    #[test]
    fn richards_examples() {
        assert_eq!(richards_decode(&d("uudduududuuddd")), p("5743612"));
        assert_eq!(richards_decode(&d("udududud")), p("4321"));
        assert_eq!(richards_decode(&d("uuuddd")), p("132"));
        assert_eq!(richards_decode(&d("uuuuuddddd")), p("15432"));
    }

    /// Peak-following restatement of Richards' algorithm as an oracle.
    #[test]
    fn richards_matches_peak_restatement() {
        for n in 1..=7 {
            for path in DyckPath::enumerate(n) {
                let mut letters = vec![0usize; n + 1];
                let steps = path.steps();
                let (mut ups, mut downs) = (0, 0);
                for idx in 0..steps.len() {
                    if steps[idx] == Step::D {
                        downs += 1;
                        if steps[idx - 1] == Step::U {
                            letters[n + 1 - ups] = downs;
                        } else {
                            let slot = (1..=n).rev().find(|&j| letters[j] == 0).unwrap();
                            letters[slot] = downs;
                        }
                    } else {
                        ups += 1;
                    }
                }
                let oracle = Permutation::new(letters[1..].to_vec()).unwrap();
                assert_eq!(richards_decode(&path), oracle, "{path:?}");
            }
        }
    }

    #[test]
    fn richards_round_trips() {
        for n in 0..=7 {
            for path in DyckPath::enumerate(n) {
                let q = richards_decode(&path);
                assert!(q.avoids(Pattern3::P123));
                assert_eq!(richards_encode(&q).unwrap(), path);
            }
        }
    }

    #[test]
    fn krattenthaler_examples() {
        assert_eq!(krattenthaler_encode(&p("536142")).unwrap(), d("uuudduuddudd"));
        assert_eq!(krattenthaler_encode(&p("1")).unwrap(), d("ud"));
        // a decreasing word maps to the sawtooth
        assert_eq!(krattenthaler_encode(&p("4321")).unwrap(), d("udududud"));
        assert_eq!(krattenthaler_encode(&p("54321")).unwrap(), d("ududududud"));
    }

    #[test]
    fn krattenthaler_round_trips() {
        for n in 0..=7 {
            for q in enumerate_class(n, Pattern3::P123) {
                let path = krattenthaler_encode(&q).unwrap();
                assert_eq!(krattenthaler_decode(&path), q);
            }
        }
    }

    #[test]
    fn ed_psi_examples() {
        // identity: the walk hugs the diagonal
        assert_eq!(ed_psi(&p("123")).unwrap(), d("ududud"));
        assert_eq!(ed_psi(&p("21")).unwrap(), d("uudd"));
        assert_eq!(ed_psi(&p("2314657")).unwrap(), d("uududduduuddud"));
    }

    #[test]
    fn ed_psi_round_trips() {
        for n in 0..=8 {
            for q in enumerate_class(n, Pattern3::P321) {
                let path = ed_psi(&q).unwrap();
                assert_eq!(ed_psi_inv(&path), q);
            }
        }
    }

    #[test]
    fn ed_phi_examples() {
        assert_eq!(ed_phi(&p("7432516")).unwrap(), d("uuduudududddud"));
        assert_eq!(ed_phi(&p("1")).unwrap(), d("ud"));
        assert_eq!(ed_phi(&p("12")).unwrap(), d("uudd"));
        for n in 0..=7 {
            for q in enumerate_class(n, Pattern3::P132) {
                assert_eq!(ed_phi_inv(&ed_phi(&q).unwrap()), q);
            }
        }
    }

    #[test]
    fn reduced_word_examples() {
        let w = canonical_decomposition(&p("415263"));
        assert_eq!(w.runs(), &[(3, 1), (4, 3), (5, 5)]);
        assert_eq!(w.to_string(), "(s3 s2 s1)(s4 s3)(s5)");
        assert_eq!(w.apply(6).unwrap(), p("415263"));

        assert_eq!(canonical_decomposition(&p("123")).runs(), &[]);
        let single = ReducedWord::new(vec![(1, 1)]).unwrap();
        assert_eq!(single.apply(3).unwrap(), p("213"));
    }

    #[test]
    fn reduced_word_round_trips() {
        use crate::perm::all_permutations;
        for n in 0..=6 {
            for q in all_permutations(n) {
                let w = canonical_decomposition(&q);
                assert_eq!(w.apply(n).unwrap(), q);
            }
        }
    }

    #[test]
    fn reduced_word_validation() {
        assert!(ReducedWord::new(vec![(2, 3)]).is_err());
        assert!(ReducedWord::new(vec![(3, 1), (3, 2)]).is_err());
        assert!(ReducedWord::new(vec![(1, 0)]).is_err());
        let w = ReducedWord::new(vec![(5, 5)]).unwrap();
        assert!(w.apply(3).is_err());
    }

    #[test]
    fn mdd_zigzag_examples() {
        let path = d("uuduuududddudduduuddud");
        let q = mdd_zigzag_decode(&path);
        assert_eq!(q, p("4 1 5 7 2 3 6 8 10 9 11"));
        let w = canonical_decomposition(&q);
        assert_eq!(w.runs(), &[(3, 1), (4, 3), (6, 4), (9, 9)]);

        assert_eq!(mdd_zigzag_decode(&d("ududud")), p("123"));
        assert_eq!(mdd_zigzag_decode(&d("uudd")), p("21"));
    }

    #[test]
    fn mdd_trapezoid_examples() {
        let path = d("uuduuududddudduduuddud");
        let q = mdd_trapezoid_decode(&path);
        assert_eq!(q, p("7 1 5 4 2 3 6 8 10 9 11"));
        let w = canonical_decomposition(&q);
        assert_eq!(w.runs(), &[(3, 2), (4, 2), (6, 1), (9, 9)]);

        assert_eq!(mdd_trapezoid_decode(&d("ududud")), p("123"));
        assert_eq!(mdd_trapezoid_decode(&d("uudd")), p("21"));
        assert_eq!(mdd_trapezoid_decode(&d("uuuddd")), p("321"));
    }

    #[test]
    fn mdd_decoders_are_bijections_into_their_classes() {
        use std::collections::BTreeSet;
        for n in 0..=7 {
            let paths = DyckPath::enumerate(n);
            let zig: BTreeSet<Permutation> = paths.iter().map(mdd_zigzag_decode).collect();
            assert_eq!(zig.len(), paths.len());
            assert!(zig.iter().all(|q| q.avoids(Pattern3::P321)));
            let trap: BTreeSet<Permutation> = paths.iter().map(mdd_trapezoid_decode).collect();
            assert_eq!(trap.len(), paths.len());
            assert!(trap.iter().all(|q| q.avoids(Pattern3::P231)));
        }
    }

    /// The 321 side of the strip decoding has tails rising strictly;
    /// its canonical decomposition is recovered by the generic peel.
    #[test]
    fn zigzag_tails_strictly_increase() {
        for n in 1..=7 {
            for path in DyckPath::enumerate(n) {
                let q = mdd_zigzag_decode(&path);
                let w = canonical_decomposition(&q);
                for pair in w.runs().windows(2) {
                    assert!(pair[1].1 >= pair[0].1 + 1, "{path:?} -> {q:?}");
                }
            }
        }
    }
}
