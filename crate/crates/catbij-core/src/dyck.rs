//! Dyck paths: balanced up/down words with nonnegative prefixes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One step of a Dyck path. U is a northeast step, D a southeast step.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    U,
    D,
}

/// A Dyck path of semilength n: n up-steps and n down-steps, every prefix
/// having at least as many ups as downs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    /// Validates eagerly, reporting the failing prefix index.
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height: isize = 0;
        for (i, &s) in steps.iter().enumerate() {
            height += if s == Step::U { 1 } else { -1 };
            if height < 0 {
                return Err(Error::NotADyckPath { prefix_len: i + 1 });
            }
        }
        if height != 0 {
            let ups = steps.iter().filter(|&&s| s == Step::U).count();
            return Err(Error::UnbalancedPath {
                ups,
                downs: steps.len() - ups,
            });
        }
        Ok(DyckPath { steps })
    }

    pub fn empty() -> Self {
        DyckPath { steps: vec![] }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Reflection in a vertical line through the middle: reverse the word
    /// and swap U with D. An involution.
    pub fn reflect(&self) -> DyckPath {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|&s| if s == Step::U { Step::D } else { Step::U })
            .collect();
        DyckPath { steps }
    }

    /// Pairs each up-step with the down-step closing its subpath; returns
    /// for each step index the index of its partner.
    pub fn matching(&self) -> Vec<usize> {
        let mut partner = vec![0; self.steps.len()];
        let mut stack = Vec::new();
        for (i, &s) in self.steps.iter().enumerate() {
            match s {
                Step::U => stack.push(i),
                Step::D => {
                    let j = stack.pop().expect("validated path");
                    partner[i] = j;
                    partner[j] = i;
                }
            }
        }
        partner
    }

    /// The peak set: pairs (i, j) such that the i-th up-step is immediately
    /// followed by the j-th down-step (both 1-indexed within their kind).
    pub fn peaks(&self) -> Vec<(usize, usize)> {
        let mut peaks = Vec::new();
        let (mut ups, mut downs) = (0usize, 0usize);
        for w in self.steps.windows(2) {
            if w[0] == Step::U {
                ups += 1;
                if w[1] == Step::D {
                    peaks.push((ups, downs + 1));
                }
            } else {
                downs += 1;
            }
        }
        peaks
    }

    /// Reconstructs the unique path with the given peak set. Peaks must be
    /// strictly increasing in both coordinates, start with j = 1 and end
    /// with i = n: the path is u^i1 d...d u^(i2−i1) d...d with the down-run
    /// after each peak reaching just short of the next peak's down-step.
    pub fn from_peaks(peaks: &[(usize, usize)], n: usize) -> Result<DyckPath> {
        if n == 0 {
            return if peaks.is_empty() {
                Ok(DyckPath::empty())
            } else {
                Err(Error::Invariant("empty path has no peaks".into()))
            };
        }
        if peaks.first().map(|&(_, j)| j) != Some(1) {
            return Err(Error::Invariant("peak list must start with j = 1".into()));
        }
        if peaks.last().map(|&(i, _)| i) != Some(n) {
            return Err(Error::Invariant(format!("peak list must end with i = {n}")));
        }
        let mut steps = Vec::with_capacity(2 * n);
        let mut prev_i = 0;
        for (k, &(i, j)) in peaks.iter().enumerate() {
            if i <= prev_i || i > n || j > n {
                return Err(Error::Invariant(format!(
                    "peak list not strictly increasing within bounds: ({i}, {j})"
                )));
            }
            let next_j = peaks.get(k + 1).map_or(n + 1, |&(_, j2)| j2);
            if next_j <= j {
                return Err(Error::Invariant(format!(
                    "peak list not strictly increasing within bounds: ({i}, {j})"
                )));
            }
            steps.extend(std::iter::repeat_n(Step::U, i - prev_i));
            steps.extend(std::iter::repeat_n(Step::D, next_j - j));
            prev_i = i;
        }
        DyckPath::new(steps)
    }

    /// The path automorphism that reads steps outside-in (first, last,
    /// second, second-to-last, ...) and emits an up-step exactly when the
    /// matched partner step has not been read yet.
    pub fn outside_in_relabel(&self) -> DyckPath {
        let len = self.steps.len();
        let partner = self.matching();
        let mut read = vec![false; len];
        let mut steps = Vec::with_capacity(len);
        for k in 0..len {
            // read order: positions 1, 2n, 2, 2n-1, ...
            let pos = if k % 2 == 0 { k / 2 } else { len - 1 - k / 2 };
            read[pos] = true;
            steps.push(if read[partner[pos]] { Step::D } else { Step::U });
        }
        DyckPath { steps }
    }

    /// All Dyck paths of semilength n, lexicographic with U before D.
    pub fn enumerate(n: usize) -> Vec<DyckPath> {
        let mut out = Vec::new();
        let mut steps = Vec::with_capacity(2 * n);
        gen(n, 0, 0, &mut steps, &mut out);
        out
    }
}

fn gen(n: usize, ups: usize, downs: usize, steps: &mut Vec<Step>, out: &mut Vec<DyckPath>) {
    if ups == n && downs == n {
        out.push(DyckPath {
            steps: steps.clone(),
        });
        return;
    }
    if ups < n {
        steps.push(Step::U);
        gen(n, ups + 1, downs, steps, out);
        steps.pop();
    }
    if downs < ups {
        steps.push(Step::D);
        gen(n, ups, downs + 1, steps, out);
        steps.pop();
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.steps {
            f.write_str(if s == Step::U { "u" } else { "d" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for DyckPath {
    type Err = Error;

    /// Case-insensitive letters u/d.
    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_lowercase() {
                'u' => Ok(Step::U),
                'd' => Ok(Step::D),
                _ => Err(Error::Parse(format!("bad path letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        DyckPath::new(steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CATALAN;

    fn d(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    #[test]
    fn validation() {
        assert!(matches!(
            "du".parse::<DyckPath>(),
            Err(Error::NotADyckPath { prefix_len: 1 })
        ));
        assert!(matches!(
            "uud".parse::<DyckPath>(),
            Err(Error::UnbalancedPath { ups: 2, downs: 1 })
        ));
        assert_eq!(d("UUDD"), d("uudd"));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(d("uuddud").reflect(), d("uduudd"));
        assert_eq!(d("udud").reflect(), d("udud"));
        // the paper's two §3.1 paths are reflections of each other
        assert_eq!(d("uduudduduududd").reflect(), d("uududduduuddud"));
    }

    #[test]
    fn reflect_is_involution() {
        for path in DyckPath::enumerate(5) {
            assert_eq!(path.reflect().reflect(), path);
        }
    }

    #[test]
    fn enumerate_counts() {
        for n in 0..=8 {
            assert_eq!(DyckPath::enumerate(n).len() as u64, CATALAN[n]);
        }
    }

    #[test]
    fn peaks_example() {
        // u1 u2 u3 d1 d2 u4 u5 d3 d4 u6 d5 d6
        let path = d("uuudduuddudd");
        assert_eq!(path.peaks(), vec![(3, 1), (5, 3), (6, 5)]);
        for p in DyckPath::enumerate(6) {
            assert_eq!(DyckPath::from_peaks(&p.peaks(), 6).unwrap(), p);
        }
    }

    #[test]
    fn outside_in_examples() {
        assert_eq!(d("uuduudududddud").outside_in_relabel(), d("uuuddduduuddud"));
        assert_eq!(d("ud").outside_in_relabel(), d("ud"));
        // n = 2: the two paths swap
        assert_eq!(d("uudd").outside_in_relabel(), d("udud"));
        assert_eq!(d("udud").outside_in_relabel(), d("uudd"));
    }

    #[test]
    fn outside_in_is_a_bijection() {
        use std::collections::BTreeSet;
        for n in 0..=7 {
            let all = DyckPath::enumerate(n);
            let images: BTreeSet<DyckPath> =
                all.iter().map(|p| p.outside_in_relabel()).collect();
            assert_eq!(images.len() as u64, CATALAN[n]);
        }
    }
}
