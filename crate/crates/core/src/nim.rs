//! Mex recursion and nim-value sequences for finite subtraction games.
//!
//! Two terminal conventions are supported. Under [`Convention::Sink`] every
//! non-positive heap is a zero-valued terminal and any move may land there;
//! under [`Convention::Wall`] moves below heap 0 are forbidden and heap 0 is
//! the only terminal. Sink sequences start at heap 1, wall sequences at 0.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A nim-value. Bounded by the move-set size, so `u8` is plenty.
pub type Nimber = u8;

/// Largest supported move-set size. Keeps nim-values inside `u8` and leaves
/// one spare byte for the window sentinel used by period detection.
pub const MAX_SET_SIZE: usize = 254;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("subtraction set must be nonempty")]
    Empty,
    #[error("subtraction set moves must be positive")]
    ZeroMove,
    #[error("duplicate move {0} in subtraction set")]
    DuplicateMove(usize),
    #[error("subtraction set has {0} moves, limit is {MAX_SET_SIZE}")]
    TooManyMoves(usize),
}

/// A finite set of positive moves, kept strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubtractionSet {
    moves: Vec<usize>,
}

impl SubtractionSet {
    /// Build a set from moves in any order; sorts and validates.
    pub fn new(mut moves: Vec<usize>) -> Result<Self, SetError> {
        if moves.is_empty() {
            return Err(SetError::Empty);
        }
        if moves.contains(&0) {
            return Err(SetError::ZeroMove);
        }
        moves.sort_unstable();
        if let Some(w) = moves.windows(2).find(|w| w[0] == w[1]) {
            return Err(SetError::DuplicateMove(w[0]));
        }
        if moves.len() > MAX_SET_SIZE {
            return Err(SetError::TooManyMoves(moves.len()));
        }
        Ok(Self { moves })
    }

    /// The additive three-move set {m, m+delta, 2m+delta}.
    pub fn additive(m: usize, delta: usize) -> Self {
        assert!(m >= 1 && delta >= 1, "additive parameters must be positive");
        Self {
            moves: vec![m, m + delta, 2 * m + delta],
        }
    }

    pub fn moves(&self) -> &[usize] {
        &self.moves
    }

    pub fn max_move(&self) -> usize {
        *self.moves.last().unwrap()
    }

    /// ρ = |S|. No nim-value of the game exceeds it.
    pub fn size_rho(&self) -> usize {
        self.moves.len()
    }
}

impl fmt::Display for SubtractionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.moves.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// Terminal convention for positions at or below zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// Non-positive heaps are zero-valued terminals reachable by any move.
    Sink,
    /// Moves below heap 0 are forbidden; heap 0 is the terminal.
    Wall,
}

impl Convention {
    /// First index of the nim-sequence: 1 under sink, 0 under wall.
    pub fn start_index(self) -> usize {
        match self {
            Convention::Sink => 1,
            Convention::Wall => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::Sink => "sink",
            Convention::Wall => "wall",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown convention {0:?}, expected \"sink\" or \"wall\"")]
pub struct ConventionParseError(String);

impl FromStr for Convention {
    type Err = ConventionParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sink" => Ok(Convention::Sink),
            "wall" => Ok(Convention::Wall),
            _ => Err(ConventionParseError(s.to_string())),
        }
    }
}

/// Least nonnegative integer missing from `values`.
pub fn mex<I>(values: I) -> usize
where
    I: IntoIterator<Item = usize>,
{
    let mut mask = [0u64; 4];
    let mut big: Vec<usize> = Vec::new();
    for v in values {
        if v < 256 {
            mask[v / 64] |= 1 << (v % 64);
        } else {
            big.push(v);
        }
    }
    for (i, word) in mask.iter().enumerate() {
        if *word != u64::MAX {
            return i * 64 + word.trailing_ones() as usize;
        }
    }
    // All of 0..256 present; scan the rest.
    big.sort_unstable();
    big.dedup();
    let mut m = 256;
    for v in big {
        if v == m {
            m += 1;
        } else if v > m {
            break;
        }
    }
    m
}

/// Incremental nim-value generator shared by sequence computation and
/// period detection. `values[i]` is the value of heap `start_index + i`.
pub(crate) struct Generator {
    set: SubtractionSet,
    convention: Convention,
    pub(crate) values: Vec<Nimber>,
}

impl Generator {
    pub(crate) fn new(set: SubtractionSet, convention: Convention) -> Self {
        Self {
            set,
            convention,
            values: Vec::new(),
        }
    }

    /// Compute and push the value of the next position.
    pub(crate) fn step(&mut self) -> Nimber {
        let i = self.values.len();
        let v = match self.convention {
            Convention::Sink => {
                let x = i + 1;
                mex(self.set.moves().iter().map(|&s| {
                    if s >= x {
                        0
                    } else {
                        self.values[x - s - 1] as usize
                    }
                }))
            }
            Convention::Wall => mex(self
                .set
                .moves()
                .iter()
                .filter(|&&s| s <= i)
                .map(|&s| self.values[i - s] as usize)),
        };
        debug_assert!(v <= self.set.size_rho());
        let v = v as Nimber;
        self.values.push(v);
        v
    }

    pub(crate) fn extend_to(&mut self, len: usize) {
        while self.values.len() < len {
            self.step();
        }
    }
}

/// Nim-values of heaps `start_index ..` for one set and convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrundySequence {
    set: SubtractionSet,
    convention: Convention,
    values: Vec<Nimber>,
}

impl GrundySequence {
    /// Values of the first `count` positions, starting at the convention's
    /// start index.
    pub fn compute(set: &SubtractionSet, convention: Convention, count: usize) -> Self {
        assert!(count >= 1);
        let mut gen = Generator::new(set.clone(), convention);
        gen.extend_to(count);
        Self {
            set: set.clone(),
            convention,
            values: gen.values,
        }
    }

    pub fn set(&self) -> &SubtractionSet {
        &self.set
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn start_index(&self) -> usize {
        self.convention.start_index()
    }

    pub fn values(&self) -> &[Nimber] {
        &self.values
    }
}
