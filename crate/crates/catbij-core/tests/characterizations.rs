//! Landmark characterizations of the codecs and bijections, checked
//! exhaustively at small lengths: each map is pinned down by how it
//! transports left/right minima/maxima or path peaks.

use catbij_core::bijection::{self, BijectionId};
use catbij_core::codec;
use catbij_core::dyck::DyckPath;
use catbij_core::perm::{enumerate_class, LandmarkKind, Pattern3, Permutation};
use catbij_core::theorems::Composite;

fn peak_set(path: &DyckPath) -> Vec<(usize, usize)> {
    path.peaks()
}

fn landmark_pairs(p: &Permutation, kind: LandmarkKind) -> Vec<(usize, usize)> {
    p.landmarks(kind).pairs().to_vec()
}

/// (i, n+1−a) is a left-to-right minimum of p exactly when (a, i) is a
/// peak of the standard path of p.
#[test]
fn standard_f_transports_minima_to_peaks() {
    for n in 1..=7 {
        for p in enumerate_class(n, Pattern3::P132) {
            let path = codec::standard_f(&p).unwrap();
            // entry (i, n+1−a) gives the peak (a, i); minima values fall
            // as positions rise, so the peaks come out in path order
            let expected: Vec<(usize, usize)> = landmark_pairs(&p, LandmarkKind::Lmin)
                .into_iter()
                .map(|(pos, val)| (n + 1 - val, pos))
                .collect();
            assert_eq!(peak_set(&path), expected, "{p:?}");
        }
    }
}

/// (n+1−i, a) is a left-to-right minimum of the decoded permutation
/// exactly when (i, a) is a peak of the path.
#[test]
fn richards_decode_reads_peaks_as_minima() {
    for n in 1..=7 {
        for path in DyckPath::enumerate(n) {
            let p = codec::richards_decode(&path);
            let expected: Vec<(usize, usize)> = landmark_pairs(&p, LandmarkKind::Lmin)
                .into_iter()
                .rev()
                .map(|(pos, val)| (n + 1 - pos, val))
                .collect();
            assert_eq!(peak_set(&path), expected, "{path:?}");
        }
    }
}

/// (i, a) is a right-to-left maximum of p exactly when (i, n+1−a) is a
/// peak of the Krattenthaler path; before the final reflection the same
/// maxima appear as the peaks (a, n+1−i).
#[test]
fn krattenthaler_transports_maxima_to_peaks() {
    for n in 1..=7 {
        for p in enumerate_class(n, Pattern3::P123) {
            let rmax = landmark_pairs(&p, LandmarkKind::Rmax);
            let path = codec::krattenthaler_encode(&p).unwrap();
            let expected: Vec<(usize, usize)> =
                rmax.iter().map(|&(i, a)| (i, n + 1 - a)).collect();
            assert_eq!(peak_set(&path), expected, "{p:?}");

            let pre = codec::krattenthaler_pre_reflection(&p).unwrap();
            let mut expected_pre: Vec<(usize, usize)> =
                rmax.iter().map(|&(i, a)| (a, n + 1 - i)).collect();
            expected_pre.sort_unstable();
            assert_eq!(peak_set(&pre), expected_pre, "{p:?}");
        }
    }
}

/// Simion-Schmidt preserves left-to-right minima with their positions, in
/// both directions.
#[test]
fn simion_schmidt_preserves_minima() {
    for n in 1..=8 {
        for p in enumerate_class(n, Pattern3::P123) {
            let image = bijection::apply(BijectionId::SimionSchmidt, &p).unwrap();
            assert_eq!(
                landmark_pairs(&p, LandmarkKind::Lmin),
                landmark_pairs(&image, LandmarkKind::Lmin),
                "{p:?}"
            );
        }
    }
}

/// Knuth-Richards swaps the coordinates of every left-to-right minimum.
#[test]
fn knuth_richards_transposes_minima() {
    for n in 1..=7 {
        for p in enumerate_class(n, Pattern3::P132) {
            let image = bijection::apply(BijectionId::KnuthRichards, &p).unwrap();
            let mut transposed: Vec<(usize, usize)> = landmark_pairs(&p, LandmarkKind::Lmin)
                .into_iter()
                .map(|(i, a)| (a, i))
                .collect();
            transposed.sort_unstable();
            assert_eq!(landmark_pairs(&image, LandmarkKind::Lmin), transposed, "{p:?}");
        }
    }
}

/// (n+1−i, a) is a right-to-left minimum of p exactly when (n+1−a, i) is
/// one of Φ(p).
#[test]
fn phi_mirrors_right_minima() {
    for n in 1..=7 {
        for p in enumerate_class(n, Pattern3::P231) {
            let image = bijection::phi(&p).unwrap();
            let mut expected: Vec<(usize, usize)> = landmark_pairs(&p, LandmarkKind::Rmin)
                .into_iter()
                .map(|(pos, val)| {
                    // (n+1−i, a) = (pos, val) gives the image pair (n+1−a, i)
                    let (i, a) = (n + 1 - pos, val);
                    (n + 1 - a, i)
                })
                .collect();
            expected.sort_unstable();
            assert_eq!(landmark_pairs(&image, LandmarkKind::Rmin), expected, "{p:?}");
        }
    }
}

/// (n+1−i, a) is a right-to-left maximum of p exactly when (n+1−a, i) is
/// a left-to-right minimum of the Krattenthaler image.
#[test]
fn krattenthaler_bijection_landmark_correspondence() {
    for n in 1..=7 {
        for p in enumerate_class(n, Pattern3::P123) {
            let image = bijection::apply(BijectionId::Krattenthaler, &p).unwrap();
            let mut expected: Vec<(usize, usize)> = landmark_pairs(&p, LandmarkKind::Rmax)
                .into_iter()
                .map(|(pos, val)| {
                    let (i, a) = (n + 1 - pos, val);
                    (n + 1 - a, i)
                })
                .collect();
            expected.sort_unstable();
            assert_eq!(landmark_pairs(&image, LandmarkKind::Lmin), expected, "{p:?}");
        }
    }
}

/// Both strip decoders of the same path share their right-to-left minima,
/// so the induced bijection preserves them.
#[test]
fn mdd_strips_share_right_minima() {
    for n in 1..=7 {
        for path in DyckPath::enumerate(n) {
            let zig = codec::mdd_zigzag_decode(&path);
            let trap = codec::mdd_trapezoid_decode(&path);
            assert_eq!(
                landmark_pairs(&zig, LandmarkKind::Rmin),
                landmark_pairs(&trap, LandmarkKind::Rmin),
                "{path:?}"
            );
        }
        for p in enumerate_class(n, Pattern3::P321) {
            let image = bijection::apply(BijectionId::MansourDengDu, &p).unwrap();
            assert_eq!(
                landmark_pairs(&p, LandmarkKind::Rmin),
                landmark_pairs(&image, LandmarkKind::Rmin),
                "{p:?}"
            );
        }
    }
}

/// Excedance count maps to descent count under Reifegerste's bijection.
#[test]
fn reifegerste_sends_excedances_to_descents() {
    use catbij_core::stats::{eval_base, BaseStat};
    for n in 1..=7 {
        for p in enumerate_class(n, Pattern3::P321) {
            let image = bijection::apply(BijectionId::Reifegerste, &p).unwrap();
            assert_eq!(
                eval_base(BaseStat::Exc, &p),
                eval_base(BaseStat::Des, &image),
                "{p:?}"
            );
        }
    }
}

/// The positional description of active sites matches the literal
/// insertion test: in a 132-avoider the active sites are the leftmost
/// position and the positions just right of each right-to-left maximum;
/// in a 123-avoider they are the positions up to and including the gap of
/// the leftmost ascent.
#[test]
fn west_active_site_shortcuts() {
    for n in 1..=6 {
        for q in enumerate_class(n, Pattern3::P132) {
            let literal: Vec<usize> = (1..=n + 1)
                .filter(|&site| {
                    let mut letters = q.letters().to_vec();
                    letters.insert(site - 1, n + 1);
                    Permutation::new(letters).unwrap().avoids(Pattern3::P132)
                })
                .collect();
            let mut shortcut: Vec<usize> = vec![1];
            shortcut.extend(
                landmark_pairs(&q, LandmarkKind::Rmax)
                    .iter()
                    .map(|&(pos, _)| pos + 1),
            );
            assert_eq!(literal, shortcut, "{q:?}");
        }
        for q in enumerate_class(n, Pattern3::P123) {
            let literal: Vec<usize> = (1..=n + 1)
                .filter(|&site| {
                    let mut letters = q.letters().to_vec();
                    letters.insert(site - 1, n + 1);
                    Permutation::new(letters).unwrap().avoids(Pattern3::P123)
                })
                .collect();
            let ascent = q
                .letters()
                .windows(2)
                .position(|w| w[0] < w[1])
                .map(|j| j + 1);
            let limit = ascent.map_or(n + 1, |j| j + 1);
            let shortcut: Vec<usize> = (1..=limit).collect();
            assert_eq!(literal, shortcut, "{q:?}");
        }
    }
}

/// Every named bijection is injective from its domain class onto its
/// codomain class.
#[test]
fn bijectivity_up_to_length_eight() {
    use std::collections::BTreeSet;
    for b in BijectionId::ALL {
        for n in 0..=8 {
            let domain = enumerate_class(n, b.domain());
            let mut images = BTreeSet::new();
            for q in &domain {
                let image = bijection::apply(b, q).unwrap();
                assert!(image.avoids(b.codomain()));
                images.insert(image);
            }
            assert_eq!(images.len(), domain.len(), "{b:?} at length {n}");
        }
    }
}

/// The canonicalized maps agree with the plain ones where the relation
/// theorem says they should: the canonical Knuth-Rotem equals Reifegerste
/// pointwise.
#[test]
fn canonical_knuth_rotem_is_reifegerste() {
    use catbij_core::theorems::canonical_321_132;
    let kro = canonical_321_132(BijectionId::KnuthRotem);
    let reif = Composite::plain(BijectionId::Reifegerste);
    for n in 1..=7 {
        for p in enumerate_class(n, Pattern3::P321) {
            assert_eq!(kro.apply(&p).unwrap(), reif.apply(&p).unwrap(), "{p:?}");
        }
    }
}

/// The relation-scan partition is the same at lengths 6 and 8: no class
/// merges or splits between the two bounds.
#[test]
fn relation_partition_stable_between_six_and_eight() {
    use catbij_core::analyzer::trivial_relation_classes;
    let normalize = |report: &catbij_core::analyzer::RelationReport| {
        let mut classes: Vec<Vec<String>> = report
            .classes
            .iter()
            .map(|c| {
                let mut members: Vec<String> = c
                    .members
                    .iter()
                    .map(|(post, b, inv, pre)| format!("{post}|{}|{inv}|{pre}", b.name()))
                    .collect();
                members.sort();
                members
            })
            .collect();
        classes.sort();
        classes
    };
    let at6 = trivial_relation_classes(6).unwrap();
    let at8 = trivial_relation_classes(8).unwrap();
    assert_eq!(normalize(&at6), normalize(&at8));
    assert!(at8.two_identities_sound);
    assert!(at8.twisted_closure_exact);
}
