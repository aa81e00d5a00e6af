//! The ten named bijections between length-3 avoidance classes, with
//! inverses.
//!
//! Bijections that factor through Dyck paths are assembled from the codecs
//! in [`crate::codec`] so that every intermediate stays independently
//! testable. Most inverses are analytic; the automorphism step of
//! Elizalde-Deutsch, both directions of Mansour-Deng-Du, and the inverse of
//! Reifegerste go through per-length lookup tables built lazily up to a
//! configurable cap.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::codec;
use crate::dyck::DyckPath;
use crate::error::{Error, Result};
use crate::perm::{enumerate_class, LandmarkKind, Pattern3, Permutation};

/// The named bijections.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BijectionId {
    Knuth,
    KnuthRotem,
    SimionSchmidt,
    KnuthRichards,
    West,
    Krattenthaler,
    Reifegerste,
    ElizaldeDeutsch,
    MansourDengDu,
    Phi,
}

impl BijectionId {
    pub const ALL: [BijectionId; 10] = [
        BijectionId::Knuth,
        BijectionId::KnuthRotem,
        BijectionId::SimionSchmidt,
        BijectionId::KnuthRichards,
        BijectionId::West,
        BijectionId::Krattenthaler,
        BijectionId::Reifegerste,
        BijectionId::ElizaldeDeutsch,
        BijectionId::MansourDengDu,
        BijectionId::Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BijectionId::Knuth => "knuth",
            BijectionId::KnuthRotem => "knuth-rotem",
            BijectionId::SimionSchmidt => "simion-schmidt",
            BijectionId::KnuthRichards => "knuth-richards",
            BijectionId::West => "west",
            BijectionId::Krattenthaler => "krattenthaler",
            BijectionId::Reifegerste => "reifegerste",
            BijectionId::ElizaldeDeutsch => "elizalde-deutsch",
            BijectionId::MansourDengDu => "mansour-deng-du",
            BijectionId::Phi => "phi",
        }
    }

    pub fn domain(self) -> Pattern3 {
        match self {
            BijectionId::Knuth
            | BijectionId::KnuthRotem
            | BijectionId::Reifegerste
            | BijectionId::ElizaldeDeutsch
            | BijectionId::MansourDengDu => Pattern3::P321,
            BijectionId::SimionSchmidt | BijectionId::West | BijectionId::Krattenthaler => {
                Pattern3::P123
            }
            BijectionId::KnuthRichards => Pattern3::P132,
            BijectionId::Phi => Pattern3::P231,
        }
    }

    pub fn codomain(self) -> Pattern3 {
        match self {
            BijectionId::KnuthRichards => Pattern3::P123,
            BijectionId::MansourDengDu => Pattern3::P231,
            BijectionId::Phi => Pattern3::P321,
            _ => Pattern3::P132,
        }
    }
}

impl FromStr for BijectionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BijectionId::ALL
            .iter()
            .copied()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown bijection {s:?}")))
    }
}

fn check_class(p: &Permutation, pattern: Pattern3, operation: &'static str) -> Result<()> {
    if p.contains(pattern) {
        return Err(Error::DomainViolation { pattern, operation });
    }
    Ok(())
}

/// Applies a bijection. The input must lie in the bijection's domain
/// class.
pub fn apply(b: BijectionId, p: &Permutation) -> Result<Permutation> {
    check_class(p, b.domain(), b.name())?;
    match b {
        BijectionId::Knuth => {
            let path = codec::tableaux_to_path(&codec::rsk_two_row(p)?)?;
            Ok(codec::standard_f_inv(&path.reflect()))
        }
        BijectionId::KnuthRotem => {
            let path = codec::ballot_to_path(&codec::rotem_encode(p)?);
            Ok(codec::standard_f_inv(&path))
        }
        BijectionId::SimionSchmidt => simion_schmidt(p),
        BijectionId::KnuthRichards => Ok(codec::richards_decode(&codec::standard_f(p)?)),
        BijectionId::West => west(p),
        BijectionId::Krattenthaler => Ok(codec::standard_f_inv(&codec::krattenthaler_encode(p)?)),
        BijectionId::Reifegerste => reifegerste(p),
        BijectionId::ElizaldeDeutsch => {
            let path = codec::ed_psi(p)?;
            let unrelabeled = tables().big_psi_inverse(&path)?;
            Ok(codec::ed_phi_inv(&unrelabeled))
        }
        BijectionId::MansourDengDu => tables().mdd_forward(p),
        BijectionId::Phi => phi(p),
    }
}

/// Applies the inverse of a bijection. The input must lie in the
/// bijection's codomain class.
pub fn invert(b: BijectionId, q: &Permutation) -> Result<Permutation> {
    check_class(q, b.codomain(), b.name())?;
    match b {
        BijectionId::Knuth => {
            let path = codec::standard_f(q)?.reflect();
            codec::rsk_inverse(&codec::path_to_tableaux(&path)?)
        }
        BijectionId::KnuthRotem => {
            let ballot = codec::path_to_ballot(&codec::standard_f(q)?);
            Ok(codec::rotem_decode(&ballot))
        }
        BijectionId::SimionSchmidt => simion_schmidt_inv(q),
        BijectionId::KnuthRichards => Ok(codec::standard_f_inv(&codec::richards_encode(q)?)),
        BijectionId::West => west_inv(q),
        BijectionId::Krattenthaler => Ok(codec::krattenthaler_decode(&codec::standard_f(q)?)),
        BijectionId::Reifegerste => tables().reifegerste_inverse(q),
        BijectionId::ElizaldeDeutsch => {
            let path = codec::ed_big_psi(&codec::ed_phi(q)?);
            Ok(codec::ed_psi_inv(&path))
        }
        BijectionId::MansourDengDu => tables().mdd_inverse(q),
        BijectionId::Phi => phi_inv(q),
    }
}

// ---------------------------------------------------------------------------
// Simion-Schmidt
// ---------------------------------------------------------------------------

/// The Simion-Schmidt bijection: left-to-right minima are kept, every
/// other letter is replaced by the smallest unused letter exceeding all
/// letters used so far.
pub fn simion_schmidt(p: &Permutation) -> Result<Permutation> {
    check_class(p, Pattern3::P123, "simion-schmidt")?;
    Ok(from_lmin_set(p, false))
}

/// Inverse of [`simion_schmidt`]: the unique 123-avoider with the same
/// left-to-right minima, obtained by filling the remaining positions with
/// the largest unused letters.
pub fn simion_schmidt_inv(q: &Permutation) -> Result<Permutation> {
    check_class(q, Pattern3::P132, "simion-schmidt")?;
    Ok(from_lmin_set(q, true))
}

fn from_lmin_set(p: &Permutation, largest: bool) -> Permutation {
    lmin_class_representative(p.len(), p.landmarks(LandmarkKind::Lmin).pairs(), largest)
        .expect("landmark set of a permutation is realizable")
}

/// Rebuilds a class representative from a left-to-right-minimum set: with
/// `largest` false the 132-avoiding one (each free position takes the
/// smallest unplaced letter above the running minimum), with `largest`
/// true the 123-avoiding one (each free position takes the largest
/// unplaced letter). `lmin` must be sorted by position.
pub(crate) fn lmin_class_representative(
    n: usize,
    lmin: &[(usize, usize)],
    largest: bool,
) -> Result<Permutation> {
    let mut used = vec![false; n + 1];
    let mut letters = vec![0usize; n];
    for &(pos, v) in lmin {
        letters[pos - 1] = v;
    }
    let mut running_min = n + 1;
    for slot in letters.iter_mut() {
        if *slot != 0 {
            running_min = (*slot).min(running_min);
            used[*slot] = true;
            continue;
        }
        let v = if largest {
            (1..=n).rev().find(|&v| !used[v])
        } else {
            (running_min + 1..=n).find(|&v| !used[v])
        };
        let v = v.filter(|&v| v > running_min).ok_or_else(|| {
            Error::Invariant("landmark set is not a left-to-right-minimum set".into())
        })?;
        used[v] = true;
        *slot = v;
    }
    Permutation::new(letters)
}

// ---------------------------------------------------------------------------
// West
// ---------------------------------------------------------------------------

/// Active-site counts under successive removal of largest letters: letter
/// k is the number of active sites of p with its k−1 largest letters
/// removed, where site i is active when inserting a new largest letter in
/// position i keeps the word inside the class of `t`.
pub fn west_signature(p: &Permutation, t: Pattern3) -> Result<Vec<usize>> {
    check_class(p, t, "west_signature")?;
    let n = p.len();
    let mut sig = Vec::with_capacity(n);
    for k in 1..=n {
        let kept = n - (k - 1);
        let letters: Vec<usize> = p.letters().iter().copied().filter(|&v| v <= kept).collect();
        let q = Permutation::new(letters).expect("removing largest letters keeps a permutation");
        sig.push(active_sites(&q, t).len());
    }
    Ok(sig)
}

/// 1-indexed active sites of `q` for inserting a new largest letter.
fn active_sites(q: &Permutation, t: Pattern3) -> Vec<usize> {
    let m = q.len();
    (1..=m + 1)
        .filter(|&site| insert_largest(q, site).avoids(t))
        .collect()
}

fn insert_largest(q: &Permutation, site: usize) -> Permutation {
    let mut letters = q.letters().to_vec();
    letters.insert(site - 1, q.len() + 1);
    Permutation::new(letters).expect("insertion keeps a permutation")
}

/// West's bijection: the unique 132-avoider whose signature equals the
/// 123-signature of the input. Since siblings in the generating tree carry
/// distinct labels, the signature can be replayed one insertion at a time;
/// a step with no or several matching sites is surfaced as an error.
pub fn west(p: &Permutation) -> Result<Permutation> {
    check_class(p, Pattern3::P123, "west")?;
    let sig = west_signature(p, Pattern3::P123)?;
    grow_by_signature(&sig, Pattern3::P132)
}

/// Inverse of [`west`].
pub fn west_inv(q: &Permutation) -> Result<Permutation> {
    check_class(q, Pattern3::P132, "west")?;
    let sig = west_signature(q, Pattern3::P132)?;
    grow_by_signature(&sig, Pattern3::P123)
}

fn grow_by_signature(sig: &[usize], t: Pattern3) -> Result<Permutation> {
    let n = sig.len();
    if n == 0 {
        return Ok(Permutation::empty());
    }
    let mut cur = Permutation::new(vec![1]).unwrap();
    // sig[n-1] labels the single-letter root; replay sig[n-2], ..., sig[0]
    for k in (0..n - 1).rev() {
        let target = sig[k];
        let candidates: Vec<Permutation> = active_sites(&cur, t)
            .into_iter()
            .map(|site| insert_largest(&cur, site))
            .filter(|child| active_sites(child, t).len() == target)
            .collect();
        if candidates.len() != 1 {
            return Err(Error::SignatureSearch {
                len: cur.len() + 1,
                matches: candidates.len(),
            });
        }
        cur = candidates.into_iter().next().unwrap();
    }
    Ok(cur)
}

// ---------------------------------------------------------------------------
// Reifegerste
// ---------------------------------------------------------------------------

/// Reifegerste's bijection: mark an E-square at (i, n+1−a_i) for every
/// excedance, shade each square with no E-square weakly south-east of it,
/// and place dots row by row in the leftmost shaded square of an unused
/// column; the dots are the diagram of the image.
#[allow(clippy::needless_range_loop)]
pub fn reifegerste(p: &Permutation) -> Result<Permutation> {
    check_class(p, Pattern3::P321, "reifegerste")?;
    let n = p.len();
    // rightmost E-column among rows ≥ a (0 when none): square (a, b) is
    // shaded iff b exceeds it
    let mut max_col_from = vec![0usize; n + 2];
    for (i, &v) in p.letters().iter().enumerate() {
        if v > i + 1 {
            let (row, col) = (i + 1, n + 1 - v);
            max_col_from[row] = max_col_from[row].max(col);
        }
    }
    for row in (1..=n).rev() {
        max_col_from[row] = max_col_from[row].max(max_col_from[row + 1]);
    }
    let mut used = vec![false; n + 1];
    let mut letters = Vec::with_capacity(n);
    for row in 1..=n {
        let col = (max_col_from[row] + 1..=n)
            .find(|&c| !used[c])
            .ok_or_else(|| Error::Invariant(format!("no shaded column free in row {row}")))?;
        used[col] = true;
        letters.push(col);
    }
    Permutation::new(letters)
}

// ---------------------------------------------------------------------------
// Phi
// ---------------------------------------------------------------------------

/// The recursive bijection Φ: Φ(ε) = ε, Φ(α(σ)) = β(Φ(σ)) on
/// indecomposables (α prepends a new largest letter), and
/// Φ(σ ⊕ τ) = Φ(τ) ⊕ Φ(σ).
pub fn phi(p: &Permutation) -> Result<Permutation> {
    check_class(p, Pattern3::P231, "phi")?;
    Ok(phi_rec(p))
}

fn phi_rec(p: &Permutation) -> Permutation {
    let comps = p.components();
    match comps.len() {
        0 => Permutation::empty(),
        1 => {
            // an indecomposable 231-avoider starts with its largest letter
            let inner =
                Permutation::new(p.letters()[1..].to_vec()).expect("stripping the largest letter");
            beta(&phi_rec(&inner))
        }
        _ => comps
            .iter()
            .rev()
            .fold(Permutation::empty(), |acc, c| acc.direct_sum(&phi_rec(c))),
    }
}

/// β: box the left-to-right maxima right of the letter 1 that are not
/// right-to-left minima, insert a new largest letter immediately left of 1
/// (boxed), and cyclically shift the boxed letters one step left.
pub fn beta(p: &Permutation) -> Permutation {
    let n = p.len() + 1;
    let one_at = if p.is_empty() { 1 } else { p.position_of(1) };
    let lmax = p.landmarks(LandmarkKind::Lmax);
    let rmin = p.landmarks(LandmarkKind::Rmin);
    // positions of boxed letters in the new word: the slot of the new
    // letter, then the old boxed positions shifted right by one
    let mut boxed_positions = vec![one_at];
    for &(pos, v) in lmax.pairs() {
        if pos > one_at && !rmin.contains(pos, v) {
            boxed_positions.push(pos + 1);
        }
    }
    let mut letters = p.letters().to_vec();
    letters.insert(one_at - 1, n);
    let values: Vec<usize> = boxed_positions.iter().map(|&pos| letters[pos - 1]).collect();
    for (idx, &pos) in boxed_positions.iter().enumerate() {
        letters[pos - 1] = values[(idx + 1) % values.len()];
    }
    Permutation::new(letters).expect("boxed shift keeps a permutation")
}

/// Inverse of [`phi`], through the right-to-left-minimum characterization:
/// (n+1−i, a) is a right-to-left minimum of the preimage exactly when
/// (n+1−a, i) is one of the image.
pub fn phi_inv(q: &Permutation) -> Result<Permutation> {
    check_class(q, Pattern3::P321, "phi")?;
    let n = q.len();
    let target: Vec<(usize, usize)> = q
        .landmarks(LandmarkKind::Rmin)
        .pairs()
        .iter()
        .map(|&(p, v)| (n + 1 - v, n + 1 - p))
        .collect();
    // the 231-avoider with a given RMIN set is the reverse of the
    // 132-avoider with the mirrored LMIN set
    let mut lmin: Vec<(usize, usize)> = target.iter().map(|&(p, v)| (n + 1 - p, v)).collect();
    lmin.sort_unstable();
    let tau = lmin_class_representative(n, &lmin, false)?;
    Ok(tau.reverse())
}

// ---------------------------------------------------------------------------
// lazily built lookup tables
// ---------------------------------------------------------------------------

const DEFAULT_TABLE_CAP: usize = 10;

struct Tables {
    cap: usize,
    big_psi_inv: HashMap<usize, HashMap<DyckPath, DyckPath>>,
    mdd_fwd: HashMap<usize, HashMap<Permutation, Permutation>>,
    mdd_inv: HashMap<usize, HashMap<Permutation, Permutation>>,
    reif_inv: HashMap<usize, HashMap<Permutation, Permutation>>,
}

static TABLES: Mutex<Option<Tables>> = Mutex::new(None);

struct TablesHandle;

fn tables() -> TablesHandle {
    TablesHandle
}

impl TablesHandle {
    fn with<R>(&self, f: impl FnOnce(&mut Tables) -> R) -> R {
        let mut guard = TABLES.lock().expect("table lock");
        let tables = guard.get_or_insert_with(|| Tables {
            cap: DEFAULT_TABLE_CAP,
            big_psi_inv: HashMap::new(),
            mdd_fwd: HashMap::new(),
            mdd_inv: HashMap::new(),
            reif_inv: HashMap::new(),
        });
        f(tables)
    }

    fn check_cap(&self, len: usize) -> Result<()> {
        self.with(|t| {
            if len > t.cap {
                Err(Error::TableCap { len, cap: t.cap })
            } else {
                Ok(())
            }
        })
    }

    fn big_psi_inverse(&self, path: &DyckPath) -> Result<DyckPath> {
        let n = path.semilength();
        self.check_cap(n)?;
        self.with(|t| {
            let table = t.big_psi_inv.entry(n).or_insert_with(|| {
                DyckPath::enumerate(n)
                    .into_iter()
                    .map(|p| (codec::ed_big_psi(&p), p))
                    .collect()
            });
            Ok(table
                .get(path)
                .expect("outside-in relabeling is onto")
                .clone())
        })
    }

    fn mdd_forward(&self, p: &Permutation) -> Result<Permutation> {
        let n = p.len();
        self.check_cap(n)?;
        self.with(|t| {
            let table = t.mdd_fwd.entry(n).or_insert_with(|| {
                DyckPath::enumerate(n)
                    .into_iter()
                    .map(|path| {
                        (
                            codec::mdd_zigzag_decode(&path),
                            codec::mdd_trapezoid_decode(&path),
                        )
                    })
                    .collect()
            });
            Ok(table.get(p).expect("zigzag decoding is onto S(321)").clone())
        })
    }

    fn mdd_inverse(&self, q: &Permutation) -> Result<Permutation> {
        let n = q.len();
        self.check_cap(n)?;
        self.with(|t| {
            let table = t.mdd_inv.entry(n).or_insert_with(|| {
                DyckPath::enumerate(n)
                    .into_iter()
                    .map(|path| {
                        (
                            codec::mdd_trapezoid_decode(&path),
                            codec::mdd_zigzag_decode(&path),
                        )
                    })
                    .collect()
            });
            Ok(table
                .get(q)
                .expect("trapezoidal decoding is onto S(231)")
                .clone())
        })
    }

    fn reifegerste_inverse(&self, q: &Permutation) -> Result<Permutation> {
        let n = q.len();
        self.check_cap(n)?;
        self.with(|t| {
            let table = t.reif_inv.entry(n).or_insert_with(|| {
                enumerate_class(n, Pattern3::P321)
                    .into_iter()
                    .map(|p| (reifegerste(&p).expect("class member"), p))
                    .collect()
            });
            table
                .get(q)
                .cloned()
                .ok_or_else(|| Error::Invariant(format!("{q:?} is not a Reifegerste image")))
        })
    }
}

/// Raises (or lowers) the cap on lazily built inversion tables.
pub fn set_table_cap(cap: usize) {
    tables().with(|t| t.cap = cap);
}

pub fn table_cap() -> usize {
    tables().with(|t| t.cap)
}
