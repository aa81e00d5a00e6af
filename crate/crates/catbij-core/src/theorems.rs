//! Statistic-pair tables for the equidistribution theorems, the
//! trivial-conjugation normal forms behind the relation theorem, and the
//! canonicalization that turns every bijection into a map from
//! 321-avoiders to 132-avoiders.
//!
//! Statistic names use the catalog grammar (`valley.i`, `m-ldr`, ...).
//! Two table entries deviate from the printed source, each pinned by a
//! regression test below:
//!
//! - the Knuth-Rotem row lists the plain excedance count, but that fails
//!   on the row's own worked example (3 vs 4) and already on length 3;
//!   the excedance count of the inverse, `exc.i`, matches everywhere;
//! - the Knuth-Richards row lists `rmax` as its last left entry, which
//!   fails on 12 → 12 (1 vs 2); deriving the row from the Simion-Schmidt
//!   row through the relation KRi⁻¹ = i∘SiS gives `rmin.i`, i.e. `lmax`,
//!   which matches everywhere.

use crate::bijection::{self, BijectionId};
use crate::error::Result;
use crate::perm::{Pattern3, Permutation};
use crate::trivial::TrivialWord;

/// One row of an equidistribution table: paired statistic names for a map
/// between two avoidance classes.
#[derive(Clone, Debug)]
pub struct TheoremRow {
    pub label: &'static str,
    /// The map the row is about, as a trivially-conjugated bijection.
    pub map: Composite,
    pub left: &'static [&'static str],
    pub right: &'static [&'static str],
}

/// A bijection conjugated by trivial words: post ∘ B^e ∘ pre.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Composite {
    pub pre: TrivialWord,
    pub bijection: BijectionId,
    pub inverted: bool,
    pub post: TrivialWord,
}

impl Composite {
    pub fn plain(bijection: BijectionId) -> Self {
        Composite {
            pre: TrivialWord::ID,
            bijection,
            inverted: false,
            post: TrivialWord::ID,
        }
    }

    pub fn domain(&self) -> Pattern3 {
        let inner = if self.inverted {
            self.bijection.codomain()
        } else {
            self.bijection.domain()
        };
        self.pre.inverse().apply_pattern(inner)
    }

    pub fn codomain(&self) -> Pattern3 {
        let inner = if self.inverted {
            self.bijection.domain()
        } else {
            self.bijection.codomain()
        };
        self.post.apply_pattern(inner)
    }

    pub fn apply(&self, p: &Permutation) -> Result<Permutation> {
        let q = self.pre.apply(p);
        let r = if self.inverted {
            bijection::invert(self.bijection, &q)?
        } else {
            bijection::apply(self.bijection, &q)?
        };
        Ok(self.post.apply(&r))
    }
}

impl std::fmt::Display for Composite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if !self.post.is_identity() {
            write!(f, "{}∘", self.post)?;
        }
        write!(f, "{}", self.bijection.name())?;
        if self.inverted {
            write!(f, "⁻¹")?;
        }
        if !self.pre.is_identity() {
            write!(f, "∘{}", self.pre)?;
        }
        Ok(())
    }
}

fn w(s: &str) -> TrivialWord {
    s.parse().expect("trivial word literal")
}

/// The nine equidistribution rows, one per bijection, each between the
/// bijection's own domain and codomain classes.
pub fn theorem1_rows() -> Vec<TheoremRow> {
    vec![
        TheoremRow {
            label: "knuth-richards (11)",
            map: Composite::plain(BijectionId::KnuthRichards),
            left: &[
                "valley.i", "valley", "lmin", "ldr.i", "head.i", "comp.r", "rank", "ldr", "lir.i",
                "lir", "lmax",
            ],
            right: &[
                "valley", "valley.i", "lmin", "ldr", "head", "comp.r", "rank", "ldr.i", "slmax.c",
                "slmax.ir", "head.ir",
            ],
        },
        TheoremRow {
            label: "simion-schmidt (11)",
            map: Composite::plain(BijectionId::SimionSchmidt),
            left: &[
                "valley", "valley.i", "lmin", "ldr", "head", "comp.r", "rank", "ldr.i", "slmax.c",
                "slmax.ir", "head.ir",
            ],
            right: &[
                "valley", "valley.i", "lmin", "ldr", "head", "comp.r", "rank", "ldr.i", "lir",
                "lir.i", "rmin",
            ],
        },
        TheoremRow {
            label: "krattenthaler (11)",
            map: Composite::plain(BijectionId::Krattenthaler),
            left: &[
                "peak.i", "peak", "rmax", "zeil", "last.ir", "comp.r", "rank.rc", "rdr",
                "slmax.ri", "slmax.r", "last",
            ],
            right: &[
                "valley", "valley.i", "lmin", "ldr", "head", "comp.r", "rank", "ldr.i", "lir",
                "lir.i", "rmin",
            ],
        },
        TheoremRow {
            label: "mansour-deng-du (11)",
            map: Composite::plain(BijectionId::MansourDengDu),
            left: &[
                "valley", "peak.i", "rmin", "rir", "last", "comp", "rank.r", "lir.i", "slmax.rc",
                "slmax.i", "head.i",
            ],
            right: &[
                "valley", "peak.i", "rmin", "rir", "last", "comp", "rank.r", "lir.i", "rdr",
                "ldr.i", "lmin",
            ],
        },
        TheoremRow {
            label: "knuth-rotem (9)",
            map: Composite::plain(BijectionId::KnuthRotem),
            left: &[
                "valley.i", "peak", "exc.i", "slmax", "head", "slmax.rci", "rir.i", "lir",
                "last.i",
            ],
            right: &[
                "valley.i", "valley", "des", "rdr", "ldr.i", "zeil", "lmax", "rmin", "m-ldr",
            ],
        },
        TheoremRow {
            label: "reifegerste (9)",
            map: Composite::plain(BijectionId::Reifegerste),
            left: &[
                "valley", "peak.i", "exc", "slmax.i", "head.i", "slmax.rc", "rir", "lir.i", "last",
            ],
            right: &[
                "valley", "valley.i", "des", "zeil", "ldr", "rdr", "rmin", "lmax", "m-ldr.i",
            ],
        },
        TheoremRow {
            label: "west (7)",
            map: Composite::plain(BijectionId::West),
            left: &[
                "valley.i", "exc.r", "slmax.ir", "slmax.c", "ldr", "ldr.i", "head",
            ],
            right: &["valley.i", "asc", "lir.i", "comp", "rmax", "ldr.i", "head"],
        },
        TheoremRow {
            label: "knuth (5)",
            map: Composite::plain(BijectionId::Knuth),
            left: &["exc", "fp", "lir.i", "lir", "lis"],
            right: &["exc", "fp", "rmin", "lmax", "n-rank"],
        },
        TheoremRow {
            label: "elizalde-deutsch (1)",
            map: Composite::plain(BijectionId::ElizaldeDeutsch),
            left: &["fp"],
            right: &["fp"],
        },
    ]
}

/// Conjugates a bijection by the relation-theorem transformations so it
/// becomes a map from 321-avoiders to 132-avoiders.
pub fn canonical_321_132(b: BijectionId) -> Composite {
    use BijectionId::*;
    let (pre, inverted, post) = match b {
        Knuth | Reifegerste | ElizaldeDeutsch => ("id", false, "id"),
        // i ∘ KRo ∘ i, which the relation theorem identifies with
        // Reifegerste's bijection
        KnuthRotem => ("i", false, "i"),
        // i ∘ SiS ∘ r
        SimionSchmidt => ("r", false, "i"),
        // i ∘ K ∘ r ∘ i
        Krattenthaler => ("ri", false, "i"),
        // i ∘ r ∘ MDD
        MansourDengDu => ("id", false, "ir"),
        // r ∘ Φ⁻¹
        Phi => ("id", true, "r"),
        // KRi⁻¹ ∘ r
        KnuthRichards => ("r", true, "id"),
        // West ∘ r
        West => ("r", false, "id"),
    };
    Composite {
        pre: w(pre),
        bijection: b,
        inverted,
        post: w(post),
    }
}

/// The condensed rows: every bijection canonicalized to 321 → 132, grouped
/// by the statistics they then respect.
pub fn theorem3_rows() -> Vec<(TheoremRow, Vec<BijectionId>)> {
    use BijectionId::*;
    let group11 = vec![Phi, KnuthRichards, Krattenthaler, MansourDengDu, SimionSchmidt];
    let group9 = vec![KnuthRotem, Reifegerste];
    let rows = vec![
        // The printed right column of this row repeats the Simion-Schmidt
        // row without conjugating by the inverse; deriving the condensed
        // row from either the Simion-Schmidt or the Mansour-Deng-Du row
        // yields the list below, and the printed one already fails on
        // length 3 (valley is not preserved at 132 → 312).
        (
            "canonical (11)",
            group11,
            &[
                "valley", "peak.i", "rmin", "rir", "last", "comp", "rank.r", "lir.i", "slmax.rc",
                "slmax.i", "head.i",
            ][..],
            &[
                "valley.i", "valley", "lmin", "ldr.i", "head.i", "comp.r", "rank", "ldr", "lir.i",
                "lir", "lmax",
            ][..],
        ),
        (
            "canonical (9)",
            group9,
            &[
                "valley", "peak.i", "exc", "slmax.i", "head.i", "slmax.rc", "rir", "lir.i", "last",
            ][..],
            &[
                "valley", "valley.i", "des", "zeil", "ldr", "rdr", "rmin", "lmax", "m-ldr.i",
            ][..],
        ),
        (
            "canonical (7)",
            vec![West],
            &[
                "peak.i", "exc", "slmax.i", "slmax.rc", "rir", "lir.i", "last",
            ][..],
            &["valley.i", "asc", "lir.i", "comp", "rmax", "ldr.i", "head"][..],
        ),
        (
            "canonical (5)",
            vec![Knuth],
            &["exc", "fp", "lir.i", "lir", "lis"][..],
            &["exc", "fp", "rmin", "lmax", "n-rank"][..],
        ),
        (
            "canonical (1)",
            vec![ElizaldeDeutsch],
            &["fp"][..],
            &["fp"][..],
        ),
    ];
    rows.into_iter()
        .map(|(label, group, left, right)| {
            let map = canonical_321_132(group[0]);
            (
                TheoremRow {
                    label,
                    map,
                    left,
                    right,
                },
                group,
            )
        })
        .collect()
}

/// Atoms of the relation algebra: representatives of the trivial-conjugacy
/// families the ten bijections fall into.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RelationAtom {
    /// r ∘ Φ⁻¹, the shared core of the five 11-statistic bijections.
    J,
    KnuthRotem,
    Knuth,
    West,
    ElizaldeDeutsch,
}

/// Symbolic normal form of a conjugated bijection: post ∘ atom^e ∘ pre
/// with the two relation identities and group algebra applied.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalForm {
    pub post: TrivialWord,
    pub atom: RelationAtom,
    pub inverted: bool,
    pub pre: TrivialWord,
}

/// Rewrites B^e in terms of an atom:
/// Φ = J⁻¹∘r, SiS = i∘J∘r, K = i∘J∘i∘r, MDD = r∘i∘J, KRi⁻¹ = J∘r,
/// Reif = i∘KRo∘i; Knuth, West and Elizalde-Deutsch are their own atoms.
fn atom_expression(b: BijectionId, inverted: bool) -> (TrivialWord, RelationAtom, bool, TrivialWord) {
    use BijectionId::*;
    use RelationAtom as A;
    let id = TrivialWord::ID;
    // forward expressions (post, atom, atom_inverted, pre)
    let fwd = match b {
        Phi => (id, A::J, true, w("r")),
        SimionSchmidt => (w("i"), A::J, false, w("r")),
        Krattenthaler => (w("i"), A::J, false, w("ir")),
        MansourDengDu => (w("ri"), A::J, false, id),
        KnuthRichards => (w("r"), A::J, true, id),
        Reifegerste => (w("i"), A::KnuthRotem, false, w("i")),
        KnuthRotem => (id, A::KnuthRotem, false, id),
        Knuth => (id, A::Knuth, false, id),
        West => (id, A::West, false, id),
        ElizaldeDeutsch => (id, A::ElizaldeDeutsch, false, id),
    };
    if !inverted {
        fwd
    } else {
        let (post, atom, ainv, pre) = fwd;
        (pre.inverse(), atom, !ainv, post.inverse())
    }
}

/// The predicted normal form of t1 ∘ B^e ∘ t2 under the two identities.
pub fn predicted_normal_form(c: &Composite) -> NormalForm {
    let (post_x, atom, inverted, pre_x) = atom_expression(c.bijection, c.inverted);
    NormalForm {
        post: c.post.compose(post_x),
        atom,
        inverted,
        pre: pre_x.compose(c.pre),
    }
}

/// The self-conjugation each atom satisfies beyond the two displayed
/// identities: a pair (u, v) with A = u ∘ A ∘ v. These are facts the
/// relation theorem does not list:
///
/// - SiS = i∘SiS∘i (left-to-right-minimum sets transpose under
///   inversion), which in atom form reads J = i∘J∘rci;
/// - Knuth = i∘Knuth∘i (the standard bijection satisfies
///   f∘i = reflect∘f, and row insertion swaps the tableau pair under
///   inversion);
/// - KnuthRotem = i∘KnuthRotem∘rci (equivalently Reifegerste differs
///   from Knuth-Rotem by an rc-preconjugation).
pub fn atom_twist(atom: RelationAtom, inverted: bool) -> Option<(TrivialWord, TrivialWord)> {
    use RelationAtom as A;
    let fwd = match atom {
        A::J | A::KnuthRotem => Some((w("i"), w("rci"))),
        A::Knuth => Some((w("i"), w("i"))),
        A::West | A::ElizaldeDeutsch => None,
    };
    fwd.map(|(u, v)| {
        if inverted {
            (v.inverse(), u.inverse())
        } else {
            (u, v)
        }
    })
}

impl NormalForm {
    /// Canonical form modulo the atom twist, so that the twisted closure
    /// can be compared against the extensional partition.
    pub fn canonical_mod_twist(&self) -> NormalForm {
        let Some((u, v)) = atom_twist(self.atom, self.inverted) else {
            return self.clone();
        };
        // A = u∘A∘v, so post∘A∘pre = (post∘u)∘A∘(v∘pre)
        let alt = NormalForm {
            post: self.post.compose(u),
            atom: self.atom,
            inverted: self.inverted,
            pre: v.compose(self.pre),
        };
        let key = |f: &NormalForm| (f.post.canonical_rank(), f.pre.canonical_rank());
        if key(&alt) < key(self) {
            alt
        } else {
            self.clone()
        }
    }
}
