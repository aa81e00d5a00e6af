//! The 23 base permutation statistics, their 552 derived forms, and the
//! deduplicated catalog.
//!
//! A derived statistic is `mod(base(w(π)))` for a trivial word w and a
//! modifier in {plain, n-, m-}: n-stat(π) = n − stat(π) and
//! m-stat(π) = n + 1 − stat(π), with n = |π|. Derived statistics are named
//! `"<mod-><base>[.<word>]"`, e.g. `n-rank`, `slmax.rc`, `valley.i`.
//!
//! Two derived statistics are considered equal when they agree on every
//! permutation of length at most 7 (including the empty one); choosing one
//! representative per equality class yields the catalog.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{all_permutations, LandmarkKind, Permutation};
use crate::trivial::TrivialWord;

/// The base statistics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseStat {
    Asc,
    Des,
    Exc,
    Ldr,
    Rdr,
    Lir,
    Rir,
    Zeil,
    Comp,
    Lmax,
    Lmin,
    Rmax,
    Rmin,
    Head,
    Last,
    Peak,
    Valley,
    Lds,
    Lis,
    Rank,
    Cyc,
    Fp,
    Slmax,
}

impl BaseStat {
    pub const ALL: [BaseStat; 23] = [
        BaseStat::Asc,
        BaseStat::Des,
        BaseStat::Exc,
        BaseStat::Ldr,
        BaseStat::Rdr,
        BaseStat::Lir,
        BaseStat::Rir,
        BaseStat::Zeil,
        BaseStat::Comp,
        BaseStat::Lmax,
        BaseStat::Lmin,
        BaseStat::Rmax,
        BaseStat::Rmin,
        BaseStat::Head,
        BaseStat::Last,
        BaseStat::Peak,
        BaseStat::Valley,
        BaseStat::Lds,
        BaseStat::Lis,
        BaseStat::Rank,
        BaseStat::Cyc,
        BaseStat::Fp,
        BaseStat::Slmax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseStat::Asc => "asc",
            BaseStat::Des => "des",
            BaseStat::Exc => "exc",
            BaseStat::Ldr => "ldr",
            BaseStat::Rdr => "rdr",
            BaseStat::Lir => "lir",
            BaseStat::Rir => "rir",
            BaseStat::Zeil => "zeil",
            BaseStat::Comp => "comp",
            BaseStat::Lmax => "lmax",
            BaseStat::Lmin => "lmin",
            BaseStat::Rmax => "rmax",
            BaseStat::Rmin => "rmin",
            BaseStat::Head => "head",
            BaseStat::Last => "last",
            BaseStat::Peak => "peak",
            BaseStat::Valley => "valley",
            BaseStat::Lds => "lds",
            BaseStat::Lis => "lis",
            BaseStat::Rank => "rank",
            BaseStat::Cyc => "cyc",
            BaseStat::Fp => "fp",
            BaseStat::Slmax => "slmax",
        }
    }

    pub fn from_name(name: &str) -> Option<BaseStat> {
        // "fix" is the theorem-table spelling of fp
        if name == "fix" {
            return Some(BaseStat::Fp);
        }
        BaseStat::ALL.iter().copied().find(|b| b.name() == name)
    }
}

/// Value of a base statistic. Every base statistic is 0 on the empty
/// permutation (head, last, rank and slmax included), which keeps
/// deduplication total; the empty permutation distinguishes nothing since
/// all bases agree there.
pub fn eval_base(s: BaseStat, p: &Permutation) -> i64 {
    let a = p.letters();
    let n = a.len();
    if n == 0 {
        return 0;
    }
    let count = |f: &dyn Fn(usize) -> bool, range: std::ops::Range<usize>| -> i64 {
        range.filter(|&i| f(i)).count() as i64
    };
    match s {
        BaseStat::Asc => count(&|i| a[i] < a[i + 1], 0..n - 1),
        BaseStat::Des => count(&|i| a[i] > a[i + 1], 0..n - 1),
        BaseStat::Exc => count(&|i| a[i] > i + 1, 0..n),
        BaseStat::Fp => count(&|i| a[i] == i + 1, 0..n),
        BaseStat::Head => a[0] as i64,
        BaseStat::Last => a[n - 1] as i64,
        BaseStat::Ldr => {
            let mut i = 1;
            while i < n && a[i - 1] > a[i] {
                i += 1;
            }
            i as i64
        }
        BaseStat::Lir => {
            let mut i = 1;
            while i < n && a[i - 1] < a[i] {
                i += 1;
            }
            i as i64
        }
        BaseStat::Rdr => {
            let mut i = 1;
            while i < n && a[n - i - 1] > a[n - i] {
                i += 1;
            }
            i as i64
        }
        BaseStat::Rir => {
            let mut i = 1;
            while i < n && a[n - i - 1] < a[n - i] {
                i += 1;
            }
            i as i64
        }
        BaseStat::Lds => longest_monotone(a, |x, y| x > y),
        BaseStat::Lis => longest_monotone(a, |x, y| x < y),
        BaseStat::Lmax => p.landmarks(LandmarkKind::Lmax).pairs().len() as i64,
        BaseStat::Lmin => p.landmarks(LandmarkKind::Lmin).pairs().len() as i64,
        BaseStat::Rmax => p.landmarks(LandmarkKind::Rmax).pairs().len() as i64,
        BaseStat::Rmin => p.landmarks(LandmarkKind::Rmin).pairs().len() as i64,
        BaseStat::Peak => count(&|i| a[i - 1] < a[i] && a[i] > a[i + 1], 1..n.max(2) - 1),
        BaseStat::Valley => count(&|i| a[i - 1] > a[i] && a[i] < a[i + 1], 1..n.max(2) - 1),
        BaseStat::Comp => p.components().len() as i64,
        BaseStat::Rank => {
            // largest k with a_i > k for all i ≤ k
            let mut k = 0;
            while k < n && a[..=k].iter().all(|&v| v > k + 1) {
                k += 1;
            }
            k as i64
        }
        BaseStat::Cyc => {
            let mut seen = vec![false; n];
            let mut cycles = 0;
            for start in 0..n {
                if !seen[start] {
                    cycles += 1;
                    let mut j = start;
                    while !seen[j] {
                        seen[j] = true;
                        j = a[j] - 1;
                    }
                }
            }
            cycles
        }
        BaseStat::Zeil => {
            // longest subword n(n-1)...i: follow positions of n, n-1, ...
            // while they increase
            let inv = p.inverse();
            let mut d = 1;
            while d < n && inv.at(n - d) > inv.at(n - d + 1) {
                d += 1;
            }
            d as i64
        }
        BaseStat::Slmax => {
            // letters up to the first one exceeding a_1
            let mut i = 1;
            while i < n && a[i] <= a[0] {
                i += 1;
            }
            i as i64
        }
    }
}

fn longest_monotone(a: &[usize], better: fn(usize, usize) -> bool) -> i64 {
    let n = a.len();
    let mut best = vec![1i64; n];
    for i in 0..n {
        for j in 0..i {
            if better(a[j], a[i]) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.iter().copied().max().unwrap_or(0)
}

/// Modifier applied after the base statistic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Modifier {
    Plain,
    /// n-stat(π) = n − stat(π)
    N,
    /// m-stat(π) = n + 1 − stat(π)
    M,
}

impl Modifier {
    pub const ALL: [Modifier; 3] = [Modifier::Plain, Modifier::N, Modifier::M];

    fn prefix(self) -> &'static str {
        match self {
            Modifier::Plain => "",
            Modifier::N => "n-",
            Modifier::M => "m-",
        }
    }

    fn rank(self) -> usize {
        match self {
            Modifier::Plain => 0,
            Modifier::N => 1,
            Modifier::M => 2,
        }
    }
}

/// A derived statistic: base ∘ trivial word, then a modifier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StatDescriptor {
    pub base: BaseStat,
    pub word: TrivialWord,
    pub modifier: Modifier,
}

impl StatDescriptor {
    pub fn plain(base: BaseStat) -> Self {
        StatDescriptor {
            base,
            word: TrivialWord::ID,
            modifier: Modifier::Plain,
        }
    }

    /// Evaluates `mod(base(word(p)))`.
    pub fn eval(&self, p: &Permutation) -> i64 {
        let q = self.word.apply(p);
        let v = eval_base(self.base, &q);
        let n = p.len() as i64;
        match self.modifier {
            Modifier::Plain => v,
            Modifier::N => n - v,
            Modifier::M => n + 1 - v,
        }
    }

    pub fn name(&self) -> String {
        let mut s = String::new();
        s.push_str(self.modifier.prefix());
        s.push_str(self.base.name());
        if !self.word.is_identity() {
            s.push('.');
            s.push_str(self.word.name());
        }
        s
    }

    /// All 552 descriptors in a fixed order.
    pub fn all() -> Vec<StatDescriptor> {
        let mut out = Vec::with_capacity(552);
        for base in BaseStat::ALL {
            for word in TrivialWord::GROUP {
                for modifier in Modifier::ALL {
                    out.push(StatDescriptor {
                        base,
                        word,
                        modifier,
                    });
                }
            }
        }
        out
    }

    /// Representative preference: plain before n- before m-, then shortest
    /// trivial word, then base name, then word order.
    fn selection_key(&self) -> (usize, usize, &'static str, usize) {
        (
            self.modifier.rank(),
            self.word.word_len(),
            self.base.name(),
            self.word.canonical_rank(),
        )
    }
}

impl fmt::Display for StatDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for StatDescriptor {
    type Err = Error;

    /// Parses `"<mod-><base>[.<word>]"`, e.g. "lmin", "slmax.rci", "m-ldr".
    fn from_str(s: &str) -> Result<Self> {
        let (modifier, rest) = if let Some(rest) = s.strip_prefix("n-") {
            (Modifier::N, rest)
        } else if let Some(rest) = s.strip_prefix("m-") {
            (Modifier::M, rest)
        } else {
            (Modifier::Plain, s)
        };
        let (base_name, word) = match rest.split_once('.') {
            Some((b, w)) => (b, w.parse::<TrivialWord>()?),
            None => (rest, TrivialWord::ID),
        };
        let base = BaseStat::from_name(base_name).ok_or_else(|| Error::UnknownStat {
            name: s.to_string(),
            suggestion: nearest_base(base_name),
        })?;
        Ok(StatDescriptor {
            base,
            word,
            modifier,
        })
    }
}

fn nearest_base(name: &str) -> Option<String> {
    BaseStat::ALL
        .iter()
        .map(|b| b.name())
        .min_by_key(|cand| edit_distance(name, cand))
        .filter(|cand| edit_distance(name, cand) <= 2)
        .map(str::to_string)
}

/// Edit distance with adjacent transpositions, so that "lmni" suggests
/// "lmin".
#[allow(clippy::needless_range_loop)]
fn edit_distance(a: &str, b: &str) -> usize {
    let (a, b): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
    let (m, n) = (a.len(), b.len());
    let mut d = vec![vec![0usize; n + 1]; m + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i;
    }
    for j in 0..=n {
        d[0][j] = j;
    }
    for i in 1..=m {
        for j in 1..=n {
            let sub = usize::from(a[i - 1] != b[j - 1]);
            let mut best = (d[i - 1][j] + 1).min(d[i][j - 1] + 1).min(d[i - 1][j - 1] + sub);
            if i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1] {
                best = best.min(d[i - 2][j - 2] + 1);
            }
            d[i][j] = best;
        }
    }
    d[m][n]
}

/// One equality class of derived statistics.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StatClass {
    pub representative: StatDescriptor,
    /// Every descriptor in the class, representative included.
    pub members: Vec<StatDescriptor>,
}

/// The deduplicated statistic catalog.
#[derive(Clone, Debug)]
pub struct StatCatalog {
    classes: Vec<StatClass>,
    /// Lengths the equality was checked over (0..=dedup_len).
    dedup_len: usize,
}

impl StatCatalog {
    /// Generates all 552 descriptors, evaluates each on every permutation
    /// of length 0..=7, and groups descriptors with identical value
    /// vectors.
    pub fn build() -> StatCatalog {
        StatCatalog::build_with_len(7)
    }

    pub fn build_with_len(dedup_len: usize) -> StatCatalog {
        let perms: Vec<Permutation> = (0..=dedup_len).flat_map(all_permutations).collect();
        let descriptors = StatDescriptor::all();
        let mut groups: HashMap<Vec<i64>, Vec<StatDescriptor>> = HashMap::new();
        for d in descriptors {
            let values: Vec<i64> = perms.iter().map(|p| d.eval(p)).collect();
            groups.entry(values).or_default().push(d);
        }
        let mut classes: Vec<StatClass> = groups
            .into_values()
            .map(|mut members| {
                members.sort_by_key(|d| d.selection_key());
                StatClass {
                    representative: members[0],
                    members,
                }
            })
            .collect();
        classes.sort_by_key(|c| c.representative.name());
        StatCatalog { classes, dedup_len }
    }

    pub fn classes(&self) -> &[StatClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn dedup_len(&self) -> usize {
        self.dedup_len
    }

    pub fn representatives(&self) -> impl Iterator<Item = StatDescriptor> + '_ {
        self.classes.iter().map(|c| c.representative)
    }

    /// Resolves a descriptor to its class representative.
    pub fn representative_of(&self, d: StatDescriptor) -> Option<StatDescriptor> {
        self.classes
            .iter()
            .find(|c| c.members.contains(&d))
            .map(|c| c.representative)
    }

    /// Parses a statistic name and resolves it to its representative.
    pub fn lookup(&self, name: &str) -> Result<StatDescriptor> {
        let d: StatDescriptor = name.parse()?;
        self.representative_of(d).ok_or_else(|| Error::UnknownStat {
            name: name.to_string(),
            suggestion: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn base(name: &str) -> BaseStat {
        BaseStat::from_name(name).unwrap()
    }

    #[test]
    fn eval_base_examples() {
        assert_eq!(eval_base(base("comp"), &p("213645")), 3);
        assert_eq!(eval_base(base("lmin"), &p("67324158")), 4);
        assert_eq!(eval_base(base("exc"), &p("415263")), 3);
        assert_eq!(eval_base(base("head"), &p("536142")), 5);
    }

    #[test]
    fn eval_base_edge_cases() {
        let e = Permutation::empty();
        for b in BaseStat::ALL {
            assert_eq!(eval_base(b, &e), 0, "{} on empty", b.name());
        }
        let one = p("1");
        assert_eq!(eval_base(base("rank"), &one), 0);
        assert_eq!(eval_base(base("slmax"), &one), 1);
        assert_eq!(eval_base(base("zeil"), &one), 1);
        assert_eq!(eval_base(base("cyc"), &p("415263")), 2);
        assert_eq!(eval_base(base("rank"), &p("7564213")), 3);
        assert_eq!(eval_base(base("slmax"), &p("21435")), 2);
    }

    #[test]
    fn asc_plus_des_is_n_minus_one() {
        for n in 0..=6 {
            for q in all_permutations(n) {
                let total = eval_base(BaseStat::Asc, &q) + eval_base(BaseStat::Des, &q);
                assert_eq!(total, (n as i64 - 1).max(0));
            }
        }
    }

    #[test]
    fn eval_derived_examples() {
        let des_via_asc_r = StatDescriptor {
            base: base("asc"),
            word: TrivialWord::R,
            modifier: Modifier::Plain,
        };
        assert_eq!(des_via_asc_r.eval(&p("21")), 1);
        assert_eq!(des_via_asc_r.eval(&p("21")), eval_base(base("des"), &p("21")));

        let n_des: StatDescriptor = "n-des".parse().unwrap();
        assert_eq!(n_des.eval(&p("132")), 2);

        let m_ldr: StatDescriptor = "m-ldr".parse().unwrap();
        assert_eq!(m_ldr.eval(&p("7564213")), 6);
    }

    #[test]
    fn modifiers_on_empty() {
        let e = Permutation::empty();
        assert_eq!("n-des".parse::<StatDescriptor>().unwrap().eval(&e), 0);
        assert_eq!("m-des".parse::<StatDescriptor>().unwrap().eval(&e), 1);
    }

    #[test]
    fn plain_word_matches_definition() {
        // eval of (s, w, plain) equals eval_base(s, apply_trivial(w, p))
        for q in all_permutations(4) {
            for b in [BaseStat::Exc, BaseStat::Slmax, BaseStat::Rank] {
                for w in TrivialWord::GROUP {
                    let d = StatDescriptor {
                        base: b,
                        word: w,
                        modifier: Modifier::Plain,
                    };
                    assert_eq!(d.eval(&q), eval_base(b, &w.apply(&q)));
                }
            }
        }
    }

    /// Independent oracle: zeil is the longest subword n(n-1)...i.
    fn zeil_oracle(q: &Permutation) -> i64 {
        let n = q.len();
        if n == 0 {
            return 0;
        }
        let mut best = 0;
        'outer: for d in 1..=n {
            // is n, n-1, ..., n-d+1 a subword?
            let mut last_pos = 0;
            for v in (n - d + 1..=n).rev() {
                let pos = q.position_of(v);
                if pos <= last_pos {
                    continue 'outer;
                }
                last_pos = pos;
            }
            best = d;
        }
        best as i64
    }

    #[test]
    fn zeil_matches_subword_oracle() {
        for n in 0..=6 {
            for q in all_permutations(n) {
                assert_eq!(eval_base(BaseStat::Zeil, &q), zeil_oracle(&q), "{q:?}");
            }
        }
    }

    /// lir.i is the largest i with 12...i a subword.
    #[test]
    fn lir_i_matches_subword_oracle() {
        let liri: StatDescriptor = "lir.i".parse().unwrap();
        for n in 0..=6 {
            for q in all_permutations(n) {
                let mut expect = 0i64;
                for d in 1..=n {
                    let increasing = (1..d).all(|v| q.position_of(v) < q.position_of(v + 1));
                    if increasing {
                        expect = d as i64;
                    }
                }
                assert_eq!(liri.eval(&q), expect, "{q:?}");
            }
        }
    }

    #[test]
    fn rank_matches_bruteforce() {
        for n in 0..=6 {
            for q in all_permutations(n) {
                let brute = (0..=q.len())
                    .filter(|&k| (0..k).all(|i| q.letters()[i] > k))
                    .max()
                    .unwrap() as i64;
                assert_eq!(eval_base(BaseStat::Rank, &q), brute);
            }
        }
    }

    #[test]
    fn name_round_trip() {
        for d in StatDescriptor::all() {
            let parsed: StatDescriptor = d.name().parse().unwrap();
            assert_eq!(parsed, d);
        }
    }

    #[test]
    fn lookup_grammar_examples() {
        let lmin: StatDescriptor = "lmin".parse().unwrap();
        assert_eq!(lmin, StatDescriptor::plain(BaseStat::Lmin));
        let s: StatDescriptor = "slmax.rci".parse().unwrap();
        assert_eq!(s.base, BaseStat::Slmax);
        assert_eq!(s.word, TrivialWord::RCI);
        let m: StatDescriptor = "m-ldr".parse().unwrap();
        assert_eq!(m.modifier, Modifier::M);
        assert!(matches!(
            "lmni".parse::<StatDescriptor>(),
            Err(Error::UnknownStat { suggestion: Some(s), .. }) if s == "lmin"
        ));
    }

    #[test]
    fn catalog_classes_for_known_identities() {
        // Small-domain catalog keeps this test quick; the acceptance suite
        // builds the full length-7 catalog.
        let catalog = StatCatalog::build_with_len(5);
        let des = catalog
            .representative_of("des".parse().unwrap())
            .unwrap();
        let asc_r = catalog
            .representative_of("asc.r".parse().unwrap())
            .unwrap();
        assert_eq!(des, asc_r);

        let peak = catalog.representative_of("peak".parse().unwrap()).unwrap();
        let peak_r = catalog
            .representative_of("peak.r".parse().unwrap())
            .unwrap();
        let valley_c = catalog
            .representative_of("valley.c".parse().unwrap())
            .unwrap();
        assert_eq!(peak, peak_r);
        assert_eq!(peak, valley_c);
        // the representative is the plain, word-free spelling
        assert_eq!(peak.name(), "peak");
    }

    #[test]
    fn rdr_and_rir_are_reversed_runs() {
        for q in all_permutations(5) {
            assert_eq!(
                eval_base(BaseStat::Rdr, &q),
                eval_base(BaseStat::Lir, &TrivialWord::R.apply(&q))
            );
            assert_eq!(
                eval_base(BaseStat::Rir, &q),
                eval_base(BaseStat::Ldr, &TrivialWord::R.apply(&q))
            );
        }
    }
}
