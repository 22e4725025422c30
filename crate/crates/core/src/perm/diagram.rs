//! The cycle diagram of a permutation read along its main diagonal, and the
//! left-to-right building process that places one diagonal square at a time.
//!
//! Vertical rays are identified by the column they rise from and ordered left
//! to right; horizontal rays by their row, ordered bottom to top. Every open
//! vertical ray is connected (through already placed segments) to exactly one
//! open horizontal ray.

use serde::Serialize;

use super::Permutation;
use crate::error::{Error, Result};
use crate::path::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DiagonalType {
    Fixed,
    Open,
    Close,
    UpperBounce,
    LowerBounce,
}

impl DiagonalType {
    pub fn letter(self) -> Letter {
        match self {
            DiagonalType::Open => Letter::U,
            DiagonalType::Close => Letter::D,
            _ => Letter::L,
        }
    }

    /// Classifies square (i, i) from π(i) and π⁻¹(i) (any consistent indexing).
    pub fn classify(i: usize, image: usize, preimage: usize) -> Self {
        use std::cmp::Ordering::*;
        match (image.cmp(&i), preimage.cmp(&i)) {
            (Equal, _) => DiagonalType::Fixed,
            (Greater, Greater) => DiagonalType::Open,
            (Less, Less) => DiagonalType::Close,
            (Greater, Less) => DiagonalType::UpperBounce,
            (Less, Greater) => DiagonalType::LowerBounce,
            _ => unreachable!("π(i) = i iff π⁻¹(i) = i"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiagonalEntry {
    pub kind: DiagonalType,
    /// Height of the corresponding Motzkin step (its highest point).
    pub height: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagonalSequence {
    pub entries: Vec<DiagonalEntry>,
}

impl DiagonalSequence {
    pub fn of(perm: &Permutation) -> Self {
        let p = perm.images();
        let inv = perm.inverse();
        let mut open = 0usize;
        let entries = (0..p.len())
            .map(|i| {
                let kind = DiagonalType::classify(i, p[i], inv.images()[i]);
                let height = match kind {
                    DiagonalType::Open => {
                        open += 1;
                        open
                    }
                    DiagonalType::Close => {
                        open -= 1;
                        open + 1
                    }
                    _ => open,
                };
                DiagonalEntry { kind, height }
            })
            .collect();
        Self { entries }
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.entries.iter().map(|e| e.kind.letter()).collect()
    }

    pub fn word(&self) -> String {
        let letters: Vec<String> = self.letters().iter().map(|l| l.to_string()).collect();
        letters.join(" ")
    }

    pub fn count(&self, kind: DiagonalType) -> usize {
        self.entries.iter().filter(|e| e.kind == kind).count()
    }
}

/// Which open rays a diagonal square closed. Indices are 1-based: `j` counts
/// open vertical rays from the left, `k` open horizontal rays from the bottom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Choice {
    Fixed,
    Open,
    Close { j: usize, k: usize, completes_cycle: bool },
    UpperBounce { j: usize },
    LowerBounce { k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChoiceRecord {
    pub entries: Vec<Choice>,
}

impl ChoiceRecord {
    /// Runs the building process on the recorded choices.
    pub fn replay(&self) -> Result<Permutation> {
        let mut b = RayBuilder::new(self.entries.len());
        for choice in &self.entries {
            match *choice {
                Choice::Fixed => b.place_fixed(),
                Choice::Open => b.place_open(),
                Choice::Close { j, k, .. } => {
                    b.place_close(j, k)?;
                }
                Choice::UpperBounce { j } => b.place_upper_bounce(j)?,
                Choice::LowerBounce { k } => b.place_lower_bounce(k)?,
            }
        }
        b.finish()
    }

    pub fn cycles_completed(&self) -> usize {
        self.entries
            .iter()
            .filter(|c| {
                matches!(
                    c,
                    Choice::Fixed
                        | Choice::Close {
                            completes_cycle: true,
                            ..
                        }
                )
            })
            .count()
    }
}

/// Replays the building process implied by `perm` and records every choice.
pub fn ray_choices(perm: &Permutation) -> ChoiceRecord {
    let seq = DiagonalSequence::of(perm);
    let p = perm.images();
    let inv = perm.inverse();
    let mut b = RayBuilder::new(perm.len());
    let mut entries = Vec::with_capacity(perm.len());
    for (i, entry) in seq.entries.iter().enumerate() {
        let choice = match entry.kind {
            DiagonalType::Fixed => {
                b.place_fixed();
                Choice::Fixed
            }
            DiagonalType::Open => {
                b.place_open();
                Choice::Open
            }
            DiagonalType::Close => {
                let j = b.vertical_rank(inv.images()[i]).expect("closed column is open");
                let k = b.horizontal_rank(p[i]).expect("closed row is open");
                let completes_cycle = b.place_close(j, k).expect("valid ray indices");
                Choice::Close { j, k, completes_cycle }
            }
            DiagonalType::UpperBounce => {
                let j = b.vertical_rank(inv.images()[i]).expect("closed column is open");
                b.place_upper_bounce(j).expect("valid ray index");
                Choice::UpperBounce { j }
            }
            DiagonalType::LowerBounce => {
                let k = b.horizontal_rank(p[i]).expect("closed row is open");
                b.place_lower_bounce(k).expect("valid ray index");
                Choice::LowerBounce { k }
            }
        };
        entries.push(choice);
    }
    ChoiceRecord { entries }
}

/// State of the building process: the partially filled permutation plus the
/// currently open rays and which vertical ray is connected to which
/// horizontal one.
#[derive(Debug, Clone)]
pub struct RayBuilder {
    images: Vec<Option<usize>>,
    step: usize,
    vertical: Vec<usize>,
    horizontal: Vec<usize>,
    // column -> connected row, row -> connected column; meaningful for open rays only
    vertical_partner: Vec<usize>,
    horizontal_partner: Vec<usize>,
}

impl RayBuilder {
    pub fn new(n: usize) -> Self {
        Self {
            images: vec![None; n],
            step: 0,
            vertical: Vec::new(),
            horizontal: Vec::new(),
            vertical_partner: vec![usize::MAX; n],
            horizontal_partner: vec![usize::MAX; n],
        }
    }

    /// Number of open vertical (equivalently horizontal) rays.
    pub fn height(&self) -> usize {
        self.vertical.len()
    }

    /// 0-based index of the next diagonal square.
    pub fn position(&self) -> usize {
        self.step
    }

    /// Open vertical rays as 1-based columns, left to right.
    pub fn open_vertical(&self) -> Vec<usize> {
        self.vertical.iter().map(|c| c + 1).collect()
    }

    /// Open horizontal rays as 1-based rows, bottom to top.
    pub fn open_horizontal(&self) -> Vec<usize> {
        self.horizontal.iter().map(|r| r + 1).collect()
    }

    /// 1-based rank `k` of the horizontal ray connected to the `j`-th open
    /// vertical ray.
    pub fn partner_of_vertical(&self, j: usize) -> Option<usize> {
        let col = *self.vertical.get(j.checked_sub(1)?)?;
        self.horizontal_rank(self.vertical_partner[col])
    }

    fn vertical_rank(&self, col: usize) -> Option<usize> {
        self.vertical.iter().position(|&c| c == col).map(|x| x + 1)
    }

    fn horizontal_rank(&self, row: usize) -> Option<usize> {
        self.horizontal.iter().position(|&r| r == row).map(|x| x + 1)
    }

    fn advance(&mut self) -> Result<usize> {
        let i = self.step;
        if i >= self.images.len() {
            return Err(Error::InvalidPath("more diagonal squares than length".into()));
        }
        self.step += 1;
        Ok(i)
    }

    fn take_vertical(&mut self, j: usize) -> Result<usize> {
        if j == 0 || j > self.vertical.len() {
            return Err(Error::InvalidPath(format!(
                "vertical ray {j} not among {} open rays",
                self.vertical.len()
            )));
        }
        Ok(self.vertical.remove(j - 1))
    }

    fn take_horizontal(&mut self, k: usize) -> Result<usize> {
        if k == 0 || k > self.horizontal.len() {
            return Err(Error::InvalidPath(format!(
                "horizontal ray {k} not among {} open rays",
                self.horizontal.len()
            )));
        }
        Ok(self.horizontal.remove(k - 1))
    }

    pub fn place_fixed(&mut self) {
        let i = self.advance().expect("fixed point within length");
        self.images[i] = Some(i);
    }

    pub fn place_open(&mut self) {
        let i = self.advance().expect("opening bracket within length");
        self.vertical.push(i);
        self.horizontal.push(i);
        self.vertical_partner[i] = i;
        self.horizontal_partner[i] = i;
    }

    /// Closes the `j`-th vertical and `k`-th horizontal open ray; returns
    /// whether the two were connected, i.e. whether a cycle was completed.
    pub fn place_close(&mut self, j: usize, k: usize) -> Result<bool> {
        let (col, row) = self.check_indices(j, k)?;
        let i = self.advance()?;
        self.take_vertical(j)?;
        self.take_horizontal(k)?;
        self.images[col] = Some(i);
        self.images[i] = Some(row);
        let row_of_col = self.vertical_partner[col];
        if row_of_col == row {
            return Ok(true);
        }
        // splice: the loose ends of the two joined strands become connected
        let col_of_row = self.horizontal_partner[row];
        self.vertical_partner[col_of_row] = row_of_col;
        self.horizontal_partner[row_of_col] = col_of_row;
        Ok(false)
    }

    fn check_indices(&self, j: usize, k: usize) -> Result<(usize, usize)> {
        let col = j
            .checked_sub(1)
            .and_then(|x| self.vertical.get(x))
            .ok_or_else(|| Error::InvalidPath(format!("vertical ray {j} is not open")))?;
        let row = k
            .checked_sub(1)
            .and_then(|x| self.horizontal.get(x))
            .ok_or_else(|| Error::InvalidPath(format!("horizontal ray {k} is not open")))?;
        Ok((*col, *row))
    }

    pub fn place_upper_bounce(&mut self, j: usize) -> Result<()> {
        if j == 0 || j > self.vertical.len() {
            return Err(Error::InvalidPath(format!("vertical ray {j} is not open")));
        }
        let i = self.advance()?;
        let col = self.take_vertical(j)?;
        self.images[col] = Some(i);
        let row = self.vertical_partner[col];
        self.vertical.push(i);
        self.vertical_partner[i] = row;
        self.horizontal_partner[row] = i;
        Ok(())
    }

    pub fn place_lower_bounce(&mut self, k: usize) -> Result<()> {
        if k == 0 || k > self.horizontal.len() {
            return Err(Error::InvalidPath(format!("horizontal ray {k} is not open")));
        }
        let i = self.advance()?;
        let row = self.take_horizontal(k)?;
        self.images[i] = Some(row);
        let col = self.horizontal_partner[row];
        self.horizontal.push(i);
        self.horizontal_partner[i] = col;
        self.vertical_partner[col] = i;
        Ok(())
    }

    pub fn finish(self) -> Result<Permutation> {
        if self.step != self.images.len() || !self.vertical.is_empty() {
            return Err(Error::InvalidPath(
                "building process ended with open rays or unplaced squares".into(),
            ));
        }
        let images = self
            .images
            .into_iter()
            .map(|v| v.expect("every square placed"))
            .collect();
        Permutation::from_images(images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use DiagonalType::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn figure_one_word() {
        let seq = DiagonalSequence::of(&p("5 7 2 4 3 8 1 6 9 12 10 11"));
        assert_eq!(seq.word(), "U U L L D U D D L U L D");
        let kinds: Vec<_> = seq.entries.iter().map(|e| e.kind).collect();
        assert_eq!(kinds[2], LowerBounce);
        assert_eq!(kinds[10], LowerBounce);
        assert_eq!(kinds[3], Fixed);
        assert_eq!(kinds[8], Fixed);
        let heights: Vec<_> = seq.entries.iter().map(|e| e.height).collect();
        assert_eq!(heights, vec![1, 2, 2, 2, 2, 2, 2, 1, 0, 1, 1, 1]);
    }

    #[test]
    fn trivial_sequences() {
        let seq = DiagonalSequence::of(&Permutation::identity(4));
        assert!(seq.entries.iter().all(|e| e.kind == Fixed && e.height == 0));
        let seq = DiagonalSequence::of(&p("2 1"));
        assert_eq!(
            seq.entries,
            vec![
                DiagonalEntry { kind: Open, height: 1 },
                DiagonalEntry { kind: Close, height: 1 }
            ]
        );
    }

    #[test]
    fn transposition_transcript() {
        let rec = ray_choices(&p("2 1"));
        assert_eq!(
            rec.entries,
            vec![
                Choice::Open,
                Choice::Close {
                    j: 1,
                    k: 1,
                    completes_cycle: true
                }
            ]
        );
    }

    #[test]
    fn figure_three_closes_outermost() {
        let rec = ray_choices(&p("3 6 7 8 1 9 2 10 4 5 11"));
        for c in rec.entries {
            match c {
                Choice::Close { j, k, .. } => assert_eq!((j, k), (1, 1)),
                Choice::UpperBounce { j } => assert_eq!(j, 1),
                Choice::LowerBounce { k } => assert_eq!(k, 1),
                _ => {}
            }
        }
    }

    #[test]
    fn sequence_invariants_and_replay() {
        for n in 0..=7 {
            for perm in Permutation::all(n) {
                let seq = DiagonalSequence::of(&perm);
                let s = perm.stats();
                assert_eq!(seq.count(Open), seq.count(Close));
                assert_eq!(seq.count(Fixed), s.fp);
                assert_eq!(seq.count(Close) + seq.count(UpperBounce), s.exc);
                assert_eq!(seq.count(UpperBounce), s.dexc);
                let mut level = 0i64;
                for e in &seq.entries {
                    match e.kind {
                        Open => level += 1,
                        Close => level -= 1,
                        UpperBounce | LowerBounce => assert!(e.height > 0),
                        Fixed => {}
                    }
                    assert!(level >= 0);
                }
                let rec = ray_choices(&perm);
                assert_eq!(rec.replay().unwrap(), perm);
                assert_eq!(rec.cycles_completed(), s.cyc, "{perm}");
                for (c, e) in rec.entries.iter().zip(&seq.entries) {
                    match *c {
                        Choice::Close { j, k, .. } => {
                            assert!((1..=e.height).contains(&j) && (1..=e.height).contains(&k))
                        }
                        Choice::UpperBounce { j } => assert!((1..=e.height).contains(&j)),
                        Choice::LowerBounce { k } => assert!((1..=e.height).contains(&k)),
                        _ => {}
                    }
                }
            }
        }
    }

    #[test]
    fn completion_flag_marks_cycle_maxima() {
        for perm in Permutation::all(6) {
            let rec = ray_choices(&perm);
            let maxima: Vec<usize> = perm.cycles().iter().map(|c| *c.iter().max().unwrap()).collect();
            for (i, c) in rec.entries.iter().enumerate() {
                if let Choice::Close { completes_cycle, .. } = c {
                    assert_eq!(*completes_cycle, maxima.contains(&(i + 1)), "{perm} at {}", i + 1);
                }
            }
        }
    }

    #[test]
    fn builder_rejects_bad_indices() {
        let mut b = RayBuilder::new(2);
        assert!(b.place_upper_bounce(1).is_err());
        b.place_open();
        assert!(b.place_close(2, 1).is_err());
        assert!(b.place_close(1, 1).unwrap());
        assert!(b.finish().is_ok());
        let mut b = RayBuilder::new(2);
        b.place_open();
        assert!(b.finish().is_err());
    }
}
