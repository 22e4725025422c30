//! Colored Motzkin paths and the bijection with permutations.
//!
//! Color codec for paths coming from permutations, at step height `h`:
//!
//! * `U` carries color 0;
//! * `D` closing vertical ray `j` and horizontal ray `k` gets `(j-1)*h + (k-1)`;
//! * `L` gets 0 for a fixed point, `j` (1..=h) for an upper bounce closing
//!   vertical ray `j`, and `h + k` for a lower bounce closing horizontal ray `k`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{ray_choices, Choice, DiagonalSequence, Permutation, RayBuilder};

/// Step letters, ordered `D < L < U` for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    D,
    L,
    U,
}

impl Letter {
    pub const ORDER: [Letter; 3] = [Letter::D, Letter::L, Letter::U];

    pub fn as_char(self) -> char {
        match self {
            Letter::U => 'U',
            Letter::L => 'L',
            Letter::D => 'D',
        }
    }

    fn rise(self) -> i64 {
        match self {
            Letter::U => 1,
            Letter::L => 0,
            Letter::D => -1,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ColoredStep {
    pub letter: Letter,
    /// y-coordinate of the step's highest point.
    pub height: usize,
    pub color: usize,
}

impl ColoredStep {
    /// Height the step starts from.
    pub fn start(&self) -> usize {
        match self.letter {
            Letter::U => self.height - 1,
            _ => self.height,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColoredMotzkinPath {
    steps: Vec<ColoredStep>,
}

impl ColoredMotzkinPath {
    /// Builds a path from (letter, color) pairs, deriving heights. Fails if the
    /// walk dips below the axis or does not return to it.
    pub fn from_letters(steps: impl IntoIterator<Item = (Letter, usize)>) -> Result<Self> {
        let mut level: i64 = 0;
        let mut out = Vec::new();
        for (idx, (letter, color)) in steps.into_iter().enumerate() {
            let next = level + letter.rise();
            if next < 0 {
                return Err(Error::InvalidPath(format!("step {} goes below the axis", idx + 1)));
            }
            out.push(ColoredStep {
                letter,
                height: level.max(next) as usize,
                color,
            });
            level = next;
        }
        if level != 0 {
            return Err(Error::InvalidPath(format!("path ends at height {level}")));
        }
        Ok(Self { steps: out })
    }

    pub fn steps(&self) -> &[ColoredStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        self.steps.iter().map(|s| s.letter).collect()
    }

    pub fn word(&self) -> String {
        let w: Vec<String> = self.steps.iter().map(|s| s.letter.to_string()).collect();
        w.join(" ")
    }

    pub(crate) fn pairs(&self) -> impl Iterator<Item = (Letter, usize)> + '_ {
        self.steps.iter().map(|s| (s.letter, s.color))
    }

    /// Checks every color against `limit(letter, height)`.
    pub fn check_colors(&self, limit: impl Fn(Letter, usize) -> usize) -> Result<()> {
        for (index, s) in self.steps.iter().enumerate() {
            let bound = limit(s.letter, s.height);
            if s.color >= bound {
                return Err(Error::ColorOutOfRange {
                    index: index + 1,
                    letter: s.letter.as_char(),
                    height: s.height,
                    color: s.color,
                    limit: bound,
                });
            }
        }
        Ok(())
    }

    /// Area between the path and the axis.
    pub fn area(&self) -> usize {
        let doubled: usize = self
            .steps
            .iter()
            .map(|s| match s.letter {
                Letter::L => 2 * s.height,
                Letter::U | Letter::D => 2 * s.height - 1,
            })
            .sum();
        doubled / 2
    }

    /// Product of per-step color counts.
    pub fn weight(&self, rule: impl Fn(Letter, usize) -> usize) -> usize {
        self.steps.iter().map(|s| rule(s.letter, s.height)).product()
    }
}

/// Color counts of the permutation codec: `h²` for `D`, `2h+1` for `L`.
pub fn permutation_rule(letter: Letter, height: usize) -> usize {
    match letter {
        Letter::U => 1,
        Letter::D => height * height,
        Letter::L => 2 * height + 1,
    }
}

impl fmt::Display for ColoredMotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match (s.letter, s.color) {
                (Letter::U, 0) => f.write_str("U")?,
                (letter, color) => write!(f, "{letter}{color}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for ColoredMotzkinPath {
    type Err = Error;

    /// Space-separated steps `U`, `L<color>`, `D<color>`.
    fn from_str(s: &str) -> Result<Self> {
        let pairs = s
            .split_whitespace()
            .map(|tok| {
                let mut chars = tok.chars();
                let letter = match chars.next() {
                    Some('U') => Letter::U,
                    Some('L') => Letter::L,
                    Some('D') => Letter::D,
                    _ => {
                        return Err(Error::Parse {
                            what: "path",
                            detail: format!("bad step `{tok}`"),
                        })
                    }
                };
                let rest = chars.as_str();
                let color = match (letter, rest) {
                    (Letter::U, "") => 0,
                    (_, "") => {
                        return Err(Error::Parse {
                            what: "path",
                            detail: format!("step `{tok}` lacks a color"),
                        })
                    }
                    _ => rest.parse().map_err(|e| Error::Parse {
                        what: "path",
                        detail: format!("step `{tok}`: {e}"),
                    })?,
                };
                Ok((letter, color))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_letters(pairs)
    }
}

impl Serialize for ColoredMotzkinPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The bijection from permutations to colored Motzkin paths.
pub fn theta(perm: &Permutation) -> ColoredMotzkinPath {
    let seq = DiagonalSequence::of(perm);
    let rec = ray_choices(perm);
    let steps = seq
        .entries
        .iter()
        .zip(&rec.entries)
        .map(|(entry, choice)| {
            let h = entry.height;
            let (letter, color) = match *choice {
                Choice::Open => (Letter::U, 0),
                Choice::Fixed => (Letter::L, 0),
                Choice::UpperBounce { j } => (Letter::L, j),
                Choice::LowerBounce { k } => (Letter::L, h + k),
                Choice::Close { j, k, .. } => (Letter::D, (j - 1) * h + (k - 1)),
            };
            ColoredStep {
                letter,
                height: h,
                color,
            }
        })
        .collect();
    ColoredMotzkinPath { steps }
}

/// Inverse of [`theta`]; rejects colors outside the permutation codec.
pub fn theta_inv(path: &ColoredMotzkinPath) -> Result<Permutation> {
    path.check_colors(permutation_rule)?;
    let mut b = RayBuilder::new(path.len());
    for s in path.steps() {
        let h = s.height;
        match s.letter {
            Letter::U => b.place_open(),
            Letter::L if s.color == 0 => b.place_fixed(),
            Letter::L if s.color <= h => b.place_upper_bounce(s.color)?,
            Letter::L => b.place_lower_bounce(s.color - h)?,
            Letter::D => {
                b.place_close(s.color / h + 1, s.color % h + 1)?;
            }
        }
    }
    b.finish()
}

/// Depth-first enumeration of all colored paths of a fixed length whose step
/// colors lie below `rule(letter, height)`, in lexicographic (letter, color)
/// order with `D < L < U`.
pub fn enumerate_paths<F>(n: usize, rule: F) -> PathEnumerator<F>
where
    F: Fn(Letter, usize) -> usize,
{
    PathEnumerator {
        n,
        rule,
        stack: Vec::with_capacity(n),
        started: false,
        done: false,
    }
}

pub struct PathEnumerator<F> {
    n: usize,
    rule: F,
    // (letter, color, start height)
    stack: Vec<(Letter, usize, usize)>,
    started: bool,
    done: bool,
}

impl<F: Fn(Letter, usize) -> usize> PathEnumerator<F> {
    fn level(&self) -> usize {
        self.stack
            .last()
            .map_or(0, |&(l, _, start)| (start as i64 + l.rise()) as usize)
    }

    /// First admissible (letter, color) strictly after `after` at `start`.
    fn next_choice(&self, start: usize, after: Option<(Letter, usize)>) -> Option<(Letter, usize)> {
        let remaining = self.n - self.stack.len() - 1;
        for letter in Letter::ORDER {
            if let Some((al, _)) = after {
                if letter < al {
                    continue;
                }
            }
            let end = start as i64 + letter.rise();
            if end < 0 || end as usize > remaining {
                continue;
            }
            let height = start.max(end as usize);
            let first = match after {
                Some((al, ac)) if al == letter => ac + 1,
                _ => 0,
            };
            if first < (self.rule)(letter, height) {
                return Some((letter, first));
            }
        }
        None
    }

    fn descend(&mut self) -> bool {
        while self.stack.len() < self.n {
            let start = self.level();
            match self.next_choice(start, None) {
                Some((l, c)) => self.stack.push((l, c, start)),
                None => return false,
            }
        }
        true
    }

    fn advance(&mut self) -> bool {
        while let Some((l, c, start)) = self.stack.pop() {
            if let Some((nl, nc)) = self.next_choice(start, Some((l, c))) {
                self.stack.push((nl, nc, start));
                return true;
            }
        }
        false
    }

    fn current(&self) -> ColoredMotzkinPath {
        let steps = self
            .stack
            .iter()
            .map(|&(letter, color, start)| ColoredStep {
                letter,
                height: start.max((start as i64 + letter.rise()) as usize),
                color,
            })
            .collect();
        ColoredMotzkinPath { steps }
    }
}

impl<F: Fn(Letter, usize) -> usize> Iterator for PathEnumerator<F> {
    type Item = ColoredMotzkinPath;

    fn next(&mut self) -> Option<ColoredMotzkinPath> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.descend() {
                return Some(self.current());
            }
        }
        loop {
            if !self.advance() {
                self.done = true;
                return None;
            }
            if self.descend() {
                return Some(self.current());
            }
        }
    }
}
