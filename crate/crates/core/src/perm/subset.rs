use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::diagram::{ray_choices, Choice, DiagonalSequence};
use super::{is_increasing, Permutation};
use crate::error::Error;

/// The restricted families of permutations enumerated by continued fractions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SubsetId {
    All,
    Cyclic,
    Avoid321,
    UnimodalNoncrossingNoNestedFp,
    Noncrossing,
    IncreasingExc,
    IncreasingWeakExc,
    CyclicIncreasingExc,
    UnimodalCycles,
    UnimodalCyclesIncreasingExc,
    IncreasingExcAndDef,
    UnimodalNoncrossing,
    NoDoubleExcOrDef,
    Involutions,
    Involutions321,
}

impl SubsetId {
    pub const ALL: [SubsetId; 15] = [
        SubsetId::All,
        SubsetId::Cyclic,
        SubsetId::Avoid321,
        SubsetId::UnimodalNoncrossingNoNestedFp,
        SubsetId::Noncrossing,
        SubsetId::IncreasingExc,
        SubsetId::IncreasingWeakExc,
        SubsetId::CyclicIncreasingExc,
        SubsetId::UnimodalCycles,
        SubsetId::UnimodalCyclesIncreasingExc,
        SubsetId::IncreasingExcAndDef,
        SubsetId::UnimodalNoncrossing,
        SubsetId::NoDoubleExcOrDef,
        SubsetId::Involutions,
        SubsetId::Involutions321,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SubsetId::All => "All",
            SubsetId::Cyclic => "Cyclic",
            SubsetId::Avoid321 => "Avoid321",
            SubsetId::UnimodalNoncrossingNoNestedFp => "UnimodalNoncrossingNoNestedFp",
            SubsetId::Noncrossing => "Noncrossing",
            SubsetId::IncreasingExc => "IncreasingExc",
            SubsetId::IncreasingWeakExc => "IncreasingWeakExc",
            SubsetId::CyclicIncreasingExc => "CyclicIncreasingExc",
            SubsetId::UnimodalCycles => "UnimodalCycles",
            SubsetId::UnimodalCyclesIncreasingExc => "UnimodalCyclesIncreasingExc",
            SubsetId::IncreasingExcAndDef => "IncreasingExcAndDef",
            SubsetId::UnimodalNoncrossing => "UnimodalNoncrossing",
            SubsetId::NoDoubleExcOrDef => "NoDoubleExcOrDef",
            SubsetId::Involutions => "Involutions",
            SubsetId::Involutions321 => "Involutions321",
        }
    }

    /// Membership tested on the permutation itself.
    pub fn contains(self, perm: &Permutation) -> bool {
        match self {
            SubsetId::All => true,
            SubsetId::Cyclic => perm.is_cyclic(),
            SubsetId::Avoid321 => !has_decreasing_triple(perm),
            SubsetId::UnimodalNoncrossingNoNestedFp => {
                unimodal_cycles(perm) && noncrossing_cycles(perm) && !has_nested_fixed_point(perm)
            }
            SubsetId::Noncrossing => noncrossing_by_transcript(perm),
            SubsetId::IncreasingExc => is_increasing(&perm.excedance_values()),
            SubsetId::IncreasingWeakExc => is_increasing(&perm.weak_excedance_values()),
            SubsetId::CyclicIncreasingExc => perm.is_cyclic() && is_increasing(&perm.excedance_values()),
            SubsetId::UnimodalCycles => unimodal_cycles(perm),
            SubsetId::UnimodalCyclesIncreasingExc => unimodal_cycles(perm) && is_increasing(&perm.excedance_values()),
            SubsetId::IncreasingExcAndDef => {
                is_increasing(&perm.excedance_values()) && is_increasing(&perm.deficiency_values())
            }
            SubsetId::UnimodalNoncrossing => unimodal_cycles(perm) && noncrossing_cycles(perm),
            SubsetId::NoDoubleExcOrDef => perm.stats().dexc == 0 && perm.double_deficiencies() == 0,
            SubsetId::Involutions => perm.is_involution(),
            SubsetId::Involutions321 => perm.is_involution() && !has_decreasing_triple(perm),
        }
    }
}

impl fmt::Display for SubsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SubsetId {
    type Err = Error;

    /// Accepts the canonical names case-insensitively, with or without
    /// `-`/`_` separators.
    fn from_str(s: &str) -> Result<Self, Error> {
        let key: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .flat_map(char::to_lowercase)
            .collect();
        SubsetId::ALL
            .into_iter()
            .find(|id| id.name().to_lowercase() == key)
            .ok_or_else(|| Error::UnknownName {
                kind: "subset",
                name: s.to_string(),
            })
    }
}

fn has_decreasing_triple(perm: &Permutation) -> bool {
    // for each middle element: larger value to its left and smaller to its right
    let p = perm.images();
    let n = p.len();
    (1..n.saturating_sub(1)).any(|j| p[..j].iter().any(|&a| a > p[j]) && p[j + 1..].iter().any(|&c| c < p[j]))
}

/// Every cycle, written smallest element first, rises then falls.
pub(crate) fn unimodal_cycles(perm: &Permutation) -> bool {
    perm.cycles().iter().all(|cycle| {
        let peak = cycle.iter().enumerate().max_by_key(|&(_, v)| *v).map_or(0, |(i, _)| i);
        is_increasing(&cycle[..=peak]) && cycle[peak..].windows(2).all(|w| w[0] > w[1])
    })
}

/// The set partition formed by the cycles has no crossing pair of blocks.
pub(crate) fn noncrossing_cycles(perm: &Permutation) -> bool {
    // arcs between consecutive elements of each sorted block
    let mut arcs = Vec::new();
    for mut cycle in perm.cycles() {
        cycle.sort_unstable();
        arcs.extend(cycle.windows(2).map(|w| (w[0], w[1])));
    }
    arcs.iter()
        .all(|&(a, b)| arcs.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
}

/// Some arc i → π(i) passes strictly over a fixed point.
pub(crate) fn has_nested_fixed_point(perm: &Permutation) -> bool {
    let p = perm.images();
    (0..p.len())
        .filter(|&j| p[j] == j)
        .any(|j| p.iter().enumerate().any(|(i, &v)| i.min(v) < j && j < i.max(v)))
}

/// Noncrossing in the crossings/nestings sense: the building process never
/// places an upper bounce and always closes the innermost open rays, and
/// every closing bracket closes a connected pair.
fn noncrossing_by_transcript(perm: &Permutation) -> bool {
    let seq = DiagonalSequence::of(perm);
    let rec = ray_choices(perm);
    rec.entries
        .iter()
        .zip(&seq.entries)
        .all(|(choice, entry)| match *choice {
            Choice::UpperBounce { .. } => false,
            Choice::LowerBounce { k } => k == entry.height,
            Choice::Close { j, k, completes_cycle } => j == entry.height && k == entry.height && completes_cycle,
            Choice::Fixed | Choice::Open => true,
        })
}
