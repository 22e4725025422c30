//! Bell numbers through paths: cyclic permutations with increasing
//! excedances become elevated colored paths, the map `phi` trades those for
//! paths of one step less, and those read off as set partitions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::path::{enumerate_paths, ColoredMotzkinPath, Letter};
use crate::perm::{Permutation, RayBuilder, SubsetId};

/// A partition of `{1..n}`, blocks sorted internally and by minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut out = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::Precondition("empty block".into()));
            }
            b.sort_unstable();
            for &e in &b {
                if e == 0 || e > n || seen[e] {
                    return Err(Error::Precondition(format!("element {e} repeated or outside 1..{n}")));
                }
                seen[e] = true;
            }
            out.push(b);
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::Precondition(format!("blocks do not cover 1..{n}")));
        }
        out.sort_unstable();
        Ok(Self { n, blocks: out })
    }

    /// From a restricted growth string: `rgs[i]` is the block of `i + 1`.
    fn from_rgs(rgs: &[usize]) -> Self {
        let count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i + 1);
        }
        Self { n: rgs.len(), blocks }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Every partition of `{1..n}`, in restricted-growth-string order.
    pub fn all(n: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut rgs = Vec::with_capacity(n);
        fn rec(n: usize, rgs: &mut Vec<usize>, top: usize, out: &mut Vec<SetPartition>) {
            if rgs.len() == n {
                out.push(SetPartition::from_rgs(rgs));
                return;
            }
            let limit = if rgs.is_empty() { 0 } else { top + 1 };
            for b in 0..=limit {
                rgs.push(b);
                rec(n, rgs, top.max(b), out);
                rgs.pop();
            }
        }
        rec(n, &mut rgs, 0, &mut out);
        out
    }

    fn block_of(&self) -> Vec<usize> {
        let mut owner = vec![0; self.n + 1];
        for (bi, b) in self.blocks.iter().enumerate() {
            for &e in b {
                owner[e] = bi;
            }
        }
        owner
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let items: Vec<String> = b.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", items.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |detail: String| Error::Parse {
            what: "set partition",
            detail,
        };
        let mut blocks = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
            if rest.is_empty() {
                break;
            }
            let body = rest
                .strip_prefix('{')
                .ok_or_else(|| err(format!("expected `{{` at `{rest}`")))?;
            let close = body.find('}').ok_or_else(|| err("unclosed block".into()))?;
            let block = body[..close]
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|e| err(format!("`{t}`: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
            rest = &body[close + 1..];
        }
        let n = blocks.iter().map(Vec::len).sum();
        SetPartition::from_blocks(n, blocks)
    }
}

impl Serialize for SetPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Color counts of elevated paths: `h+1` for `L`, `h−1` for `D` above
/// height 1 and a single color at height 1.
pub fn epath_rule(letter: Letter, h: usize) -> usize {
    match letter {
        Letter::U => 1,
        Letter::L => h + 1,
        Letter::D if h == 1 => 1,
        Letter::D => h.saturating_sub(1),
    }
}

/// Color counts of partition paths: `h+1` for `L`, `h` for `D`.
pub fn bpath_rule(letter: Letter, h: usize) -> usize {
    match letter {
        Letter::U => 1,
        Letter::L => h + 1,
        Letter::D => h,
    }
}

pub fn is_epath(path: &ColoredMotzkinPath) -> bool {
    let s = path.steps();
    let shape = match s.len() {
        0 => false,
        1 => true,
        n => s[1..n - 1].iter().all(|st| st.start() >= 1 && st.height >= 1),
    };
    shape && path.check_colors(epath_rule).is_ok()
}

pub fn is_bpath(path: &ColoredMotzkinPath) -> bool {
    path.check_colors(bpath_rule).is_ok()
}

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(what.into()))
    }
}

/// All elevated paths of length `n`, in lexicographic order.
pub fn epaths(n: usize) -> Vec<ColoredMotzkinPath> {
    match n {
        0 => Vec::new(),
        1 => vec![ColoredMotzkinPath::from_letters([(Letter::L, 0)]).expect("valid")],
        _ => {
            // interior steps sit one level up
            let inner = |letter, h: usize| match letter {
                Letter::U => 1,
                Letter::L => h + 2,
                Letter::D => h,
            };
            enumerate_paths(n - 2, inner)
                .map(|p| {
                    let pairs = std::iter::once((Letter::U, 0))
                        .chain(p.pairs())
                        .chain(std::iter::once((Letter::D, 0)));
                    ColoredMotzkinPath::from_letters(pairs).expect("valid")
                })
                .collect()
        }
    }
}

/// All partition paths of length `n`.
pub fn bpaths(n: usize) -> Vec<ColoredMotzkinPath> {
    enumerate_paths(n, bpath_rule).collect()
}

/// Encodes `π ∈ CIE_n`. Upper bounces give `L` colored by its height; a lower
/// bounce closing the `r`-th open horizontal ray (from the bottom, from 0)
/// gives `L` colored `r`; a close gives `D` colored by the rank of its
/// horizontal ray among those that do not complete a cycle.
pub fn cie_encode(perm: &Permutation) -> Result<ColoredMotzkinPath> {
    require(
        SubsetId::CyclicIncreasingExc.contains(perm),
        "permutation is not cyclic with increasing excedances",
    )?;
    let path = crate::path::theta(perm);
    let mut b = RayBuilder::new(perm.len());
    let mut pairs = Vec::with_capacity(perm.len());
    for s in path.steps() {
        let h = s.height;
        let pair = match s.letter {
            Letter::U => {
                b.place_open();
                (Letter::U, 0)
            }
            Letter::L if s.color == 0 => {
                b.place_fixed();
                (Letter::L, 0)
            }
            Letter::L if s.color <= h => {
                b.place_upper_bounce(s.color)?;
                (Letter::L, h)
            }
            Letter::L => {
                let k = s.color - h;
                b.place_lower_bounce(k)?;
                (Letter::L, k - 1)
            }
            Letter::D => {
                let k = s.color % h + 1;
                let partner = b.partner_of_vertical(1).expect("open ray");
                b.place_close(s.color / h + 1, k)?;
                let color = if h == 1 { 0 } else { k - 1 - usize::from(k > partner) };
                (Letter::D, color)
            }
        };
        pairs.push(pair);
    }
    ColoredMotzkinPath::from_letters(pairs)
}

/// Inverse of [`cie_encode`].
pub fn cie_decode(path: &ColoredMotzkinPath) -> Result<Permutation> {
    require(is_epath(path), "path is not an elevated path with valid colors")?;
    let mut b = RayBuilder::new(path.len());
    for s in path.steps() {
        let h = s.height;
        match s.letter {
            Letter::U => b.place_open(),
            Letter::L if h == 0 => b.place_fixed(),
            Letter::L if s.color == h => b.place_upper_bounce(1)?,
            Letter::L => b.place_lower_bounce(s.color + 1)?,
            Letter::D => {
                let partner = b.partner_of_vertical(1).expect("open ray");
                let k = if h == 1 {
                    1
                } else {
                    (1..=h).filter(|&k| k != partner).nth(s.color).expect("color checked")
                };
                b.place_close(1, k)?;
            }
        }
    }
    b.finish()
}

/// The map from elevated paths of length `n` to partition paths of length
/// `n − 1`.
pub fn phi(path: &ColoredMotzkinPath) -> Result<ColoredMotzkinPath> {
    require(is_epath(path), "path is not an elevated path with valid colors")?;
    let n = path.len();
    if n == 1 {
        return Ok(ColoredMotzkinPath::default());
    }
    let pairs: Vec<(Letter, usize)> = path.pairs().collect();
    let special = path
        .steps()
        .iter()
        .rposition(|s| s.letter == Letter::L && s.color == s.height);
    let out: Vec<(Letter, usize)> = match special {
        None => std::iter::once((Letter::L, 0))
            .chain(pairs[1..n - 1].iter().copied())
            .collect(),
        Some(idx) => {
            let h = path.steps()[idx].height;
            pairs[..idx]
                .iter()
                .copied()
                .chain(std::iter::once((Letter::D, h - 1)))
                .chain(pairs[idx + 1..n - 1].iter().copied())
                .collect()
        }
    };
    ColoredMotzkinPath::from_letters(out)
}

pub fn phi_inv(path: &ColoredMotzkinPath) -> Result<ColoredMotzkinPath> {
    require(is_bpath(path), "path is not a partition path with valid colors")?;
    let pairs: Vec<(Letter, usize)> = path.pairs().collect();
    let close = std::iter::once((Letter::D, 0));
    let out: Vec<(Letter, usize)> = match pairs.first() {
        None => vec![(Letter::L, 0)],
        Some((Letter::L, _)) => std::iter::once((Letter::U, 0))
            .chain(pairs[1..].iter().copied())
            .chain(close)
            .collect(),
        Some(_) => {
            let idx = path
                .steps()
                .iter()
                .position(|s| s.letter == Letter::D && s.color + 1 == s.height)
                .expect("the final return to the axis qualifies");
            let h = path.steps()[idx].height;
            pairs[..idx]
                .iter()
                .copied()
                .chain(std::iter::once((Letter::L, h)))
                .chain(pairs[idx + 1..].iter().copied())
                .chain(close)
                .collect()
        }
    };
    ColoredMotzkinPath::from_letters(out)
}

/// Reads a partition path as a set partition. `U` opens a block. `L`
/// colored by its height is a singleton; `L` colored `c` below its height
/// adds to the `c`-th open block. `D` colored `c` adds to and closes the
/// `c`-th open block. Open blocks count from 0, oldest first.
pub fn bpath_to_partition(path: &ColoredMotzkinPath) -> Result<SetPartition> {
    require(is_bpath(path), "path is not a partition path with valid colors")?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    for (i, s) in path.steps().iter().enumerate() {
        let e = i + 1;
        match s.letter {
            Letter::U => {
                open.push(blocks.len());
                blocks.push(vec![e]);
            }
            Letter::L if s.color == s.height => blocks.push(vec![e]),
            Letter::L => blocks[open[s.color]].push(e),
            Letter::D => {
                let b = open.remove(s.color);
                blocks[b].push(e);
            }
        }
    }
    SetPartition::from_blocks(path.len(), blocks)
}

pub fn partition_to_bpath(partition: &SetPartition) -> Result<ColoredMotzkinPath> {
    let owner = partition.block_of();
    let blocks = partition.blocks();
    let mut open: Vec<usize> = Vec::new();
    let mut pairs = Vec::with_capacity(partition.n);
    for (e, &b) in owner.iter().enumerate().skip(1) {
        let block = &blocks[b];
        let first = block[0] == e;
        let last = *block.last().expect("nonempty") == e;
        let pair = match (first, last) {
            (true, true) => (Letter::L, open.len()),
            (true, false) => {
                open.push(b);
                (Letter::U, 0)
            }
            (false, last) => {
                let c = open.iter().position(|&o| o == b).expect("block is open");
                if last {
                    open.remove(c);
                    (Letter::D, c)
                } else {
                    (Letter::L, c)
                }
            }
        };
        pairs.push(pair);
    }
    ColoredMotzkinPath::from_letters(pairs)
}

/// `π ∈ CIE_n` to a partition of `{1..n−1}`.
pub fn cie_to_partition(perm: &Permutation) -> Result<SetPartition> {
    bpath_to_partition(&phi(&cie_encode(perm)?)?)
}

pub fn partition_to_cie(partition: &SetPartition) -> Result<Permutation> {
    cie_decode(&phi_inv(&partition_to_bpath(partition)?)?)
}

/// Joins `i` and `π(i)` whenever `π(i) < i`.
pub fn weak_exc_to_partition(perm: &Permutation) -> Result<SetPartition> {
    require(
        SubsetId::IncreasingWeakExc.contains(perm),
        "weak excedance values are not increasing",
    )?;
    let n = perm.len();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for i in 1..=n {
        let j = perm.image(i);
        if j < i {
            let (a, b) = (root(&mut parent, i), root(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for i in 1..=n {
        let r = root(&mut parent, i);
        blocks[r].push(i);
    }
    SetPartition::from_blocks(n, blocks.into_iter().filter(|b| !b.is_empty()).collect())
}

/// The three stages of the pipeline for one permutation.
#[derive(Debug, Clone, Serialize)]
pub struct BellTriptych {
    pub perm: Permutation,
    pub path: ColoredMotzkinPath,
    pub phi: ColoredMotzkinPath,
    pub partition: SetPartition,
}

pub fn triptych(perm: &Permutation) -> Result<BellTriptych> {
    let path = cie_encode(perm)?;
    let image = phi(&path)?;
    let partition = bpath_to_partition(&image)?;
    Ok(BellTriptych {
        perm: perm.clone(),
        path,
        phi: image,
        partition,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    const FIG_PERM: &str = "2 6 8 3 9 11 4 5 1 7 10";
    const FIG_PATH: &str = "U L1 U L1 U L3 L1 D1 D0 L0 D0";
    const FIG_PHI: &str = "U L1 U L1 U D2 L1 D1 D0 L0";
    const FIG_PARTITION: &str = "{1,9},{2},{3,4,7,8},{5,6},{10}";
    const BELL: [usize; 10] = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147];

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn path(s: &str) -> ColoredMotzkinPath {
        s.parse().unwrap()
    }

    #[test]
    fn figure_instance() {
        let t = triptych(&p(FIG_PERM)).unwrap();
        assert_eq!(t.path.to_string(), FIG_PATH);
        assert_eq!(t.phi.to_string(), FIG_PHI);
        assert_eq!(t.partition.to_string(), FIG_PARTITION);
        assert_eq!(cie_decode(&t.path).unwrap(), p(FIG_PERM));
        assert_eq!(phi_inv(&t.phi).unwrap(), t.path);
        assert_eq!(partition_to_bpath(&t.partition).unwrap(), t.phi);
    }

    #[test]
    fn small_instances() {
        assert_eq!(cie_encode(&p("2 1")).unwrap().to_string(), "U D0");
        assert_eq!(phi(&path("U D0")).unwrap().to_string(), "L0");
        assert_eq!(cie_to_partition(&p("2 1")).unwrap().to_string(), "{1}");
        assert!(phi(&path("L0")).unwrap().is_empty());
        assert_eq!(phi_inv(&ColoredMotzkinPath::default()).unwrap().to_string(), "L0");
        assert_eq!(
            bpath_to_partition(&path("L0 L0 L0")).unwrap().to_string(),
            "{1},{2},{3}"
        );
        assert!(matches!(cie_encode(&p("1 2")), Err(Error::Precondition(_))));
    }

    #[test]
    fn case_two_example() {
        let m = path("U U L2 L1 U D1 L2 D0 D0");
        let out = phi(&m).unwrap();
        assert_eq!(out.to_string(), "U U L2 L1 U D1 D1 D0");
        assert_eq!(out.len(), m.len() - 1);
        assert_eq!(phi_inv(&out).unwrap(), m);
    }

    #[test]
    fn codec_images_are_exact() {
        for n in 1..=7 {
            let image: HashSet<ColoredMotzkinPath> = Permutation::all(n)
                .filter(|q| SubsetId::CyclicIncreasingExc.contains(q))
                .map(|q| {
                    let e = cie_encode(&q).unwrap();
                    assert_eq!(cie_decode(&e).unwrap(), q);
                    e
                })
                .collect();
            let all: HashSet<ColoredMotzkinPath> = epaths(n).into_iter().collect();
            assert!(all.iter().all(is_epath));
            assert_eq!(image, all, "n = {n}");
            assert_eq!(all.len(), BELL[n - 1]);
        }
    }

    #[test]
    fn phi_is_a_bijection() {
        for n in 1..=8 {
            let mut image = HashSet::new();
            for m in epaths(n) {
                let out = phi(&m).unwrap();
                assert_eq!(out.len(), n - 1);
                assert!(is_bpath(&out));
                let case_one = !m.steps().iter().any(|s| s.letter == Letter::L && s.color == s.height);
                if n > 1 {
                    assert_eq!(out.steps()[0].letter == Letter::L, case_one);
                }
                assert_eq!(phi_inv(&out).unwrap(), m);
                image.insert(out);
            }
            let b: HashSet<ColoredMotzkinPath> = bpaths(n - 1).into_iter().collect();
            assert_eq!(image, b);
        }
    }

    #[test]
    fn partitions_and_paths() {
        for (n, &bell) in BELL.iter().enumerate().take(8) {
            let parts = SetPartition::all(n);
            assert_eq!(parts.len(), bell);
            let paths: HashSet<ColoredMotzkinPath> = parts
                .iter()
                .map(|sp| {
                    let m = partition_to_bpath(sp).unwrap();
                    assert_eq!(&bpath_to_partition(&m).unwrap(), sp);
                    m
                })
                .collect();
            assert_eq!(paths, bpaths(n).into_iter().collect());
        }
    }

    #[test]
    fn cie_counts_are_bell() {
        for n in 1..=8 {
            let image: HashSet<SetPartition> = Permutation::all(n)
                .filter(|q| SubsetId::CyclicIncreasingExc.contains(q))
                .map(|q| {
                    let sp = cie_to_partition(&q).unwrap();
                    assert_eq!(partition_to_cie(&sp).unwrap(), q);
                    sp
                })
                .collect();
            assert_eq!(image.len(), BELL[n - 1]);
        }
    }

    #[test]
    fn weak_excedance_partitions() {
        assert_eq!(weak_exc_to_partition(&p("1 2 3")).unwrap().to_string(), "{1},{2},{3}");
        assert_eq!(weak_exc_to_partition(&p("2 1")).unwrap().to_string(), "{1,2}");
        assert!(weak_exc_to_partition(&p("3 2 1")).is_err());
        for (n, &bell) in BELL.iter().enumerate().take(8) {
            let image: HashSet<SetPartition> = Permutation::all(n)
                .filter(|q| SubsetId::IncreasingWeakExc.contains(q))
                .map(|q| weak_exc_to_partition(&q).unwrap())
                .collect();
            assert_eq!(image.len(), bell);
            let members = Permutation::all(n)
                .filter(|q| SubsetId::IncreasingWeakExc.contains(q))
                .count();
            assert_eq!(members, bell);
        }
    }

    #[test]
    fn partition_text() {
        let sp: SetPartition = FIG_PARTITION.parse().unwrap();
        assert_eq!(sp.to_string(), FIG_PARTITION);
        assert_eq!(sp.blocks().len(), 5);
        assert!("{1,2},{2}".parse::<SetPartition>().is_err());
        assert!("{1},{3}".parse::<SetPartition>().is_err());
    }
}
