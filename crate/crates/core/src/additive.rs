//! The additive family S(m, δ) = {m, m+δ, 2m+δ}: parameter reduction,
//! closed-form period lengths, and symbolic candidate period words.
//!
//! With d = δ mod 2m the sink nim-sequence is purely periodic of length
//!
//! ```text
//! p(m, δ) = 3m + 2δ − d                  if d ≤ m   (case I)
//!         = m(m + 2δ + d) / gcd(m, d)    otherwise  (case II)
//! ```
//!
//! Case I admits the explicit word (1^m 2^m)^a 3^d 0^m (3^m 0^m)^(a−1) with
//! a = (δ−d)/2m + 1. Case II with δ < 2m is assembled from B- and C-blocks
//! driven by the modular offsets α, β, γ; for larger δ the word is taken
//! from the brute-force oracle instead.

use std::fmt;

use thiserror::Error;

use crate::nim::{Convention, GrundySequence, Nimber, SubtractionSet};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Case split of the period formula on d = δ mod 2m. The boundary d = m
/// belongs to case I; both formula branches agree there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    I,
    II,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
        })
    }
}

/// Case-specific derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseDetail {
    /// d ≤ m; `a` counts the leading 1^m 2^m pairs of the candidate word.
    I { a: usize },
    /// m < d < 2m with k = d − m. The block pattern is periodic in the block
    /// index with period `blocks_per_cycle` = m/gcd(m,k), of which
    /// `long_per_cycle` = k/gcd(m,k) are long (a C-block or a B-block with
    /// an inserted ζ).
    II {
        k: usize,
        blocks_per_cycle: usize,
        long_per_cycle: usize,
    },
}

/// Reduction of (m, δ) to the quantities the formula and the word
/// constructions run on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdditiveParams {
    m: usize,
    delta: usize,
    d: usize,
    g: usize,
    detail: CaseDetail,
}

impl AdditiveParams {
    pub fn new(m: usize, delta: usize) -> Self {
        assert!(m >= 1 && delta >= 1, "additive parameters must be positive");
        let d = delta % (2 * m);
        let g = gcd(m, d);
        let detail = if d <= m {
            CaseDetail::I {
                a: (delta - d) / (2 * m) + 1,
            }
        } else {
            let k = d - m;
            debug_assert_eq!(gcd(m, k), g);
            CaseDetail::II {
                k,
                blocks_per_cycle: m / g,
                long_per_cycle: k / g,
            }
        };
        Self {
            m,
            delta,
            d,
            g,
            detail,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// d = δ mod 2m, in [0, 2m).
    pub fn d(&self) -> usize {
        self.d
    }

    /// gcd(m, d); equals gcd(m, k) in case II.
    pub fn g(&self) -> usize {
        self.g
    }

    pub fn detail(&self) -> CaseDetail {
        self.detail
    }

    pub fn case(&self) -> CaseTag {
        match self.detail {
            CaseDetail::I { .. } => CaseTag::I,
            CaseDetail::II { .. } => CaseTag::II,
        }
    }

    /// k = d − m, defined in case II only.
    pub fn k(&self) -> Option<usize> {
        match self.detail {
            CaseDetail::I { .. } => None,
            CaseDetail::II { k, .. } => Some(k),
        }
    }

    /// a = (δ−d)/2m + 1, defined in case I only.
    pub fn a(&self) -> Option<usize> {
        match self.detail {
            CaseDetail::I { a } => Some(a),
            CaseDetail::II { .. } => None,
        }
    }

    /// The moves s1 < s2 < s3 = s1 + s2.
    pub fn moves(&self) -> [usize; 3] {
        [self.m, self.m + self.delta, 2 * self.m + self.delta]
    }

    pub fn set(&self) -> SubtractionSet {
        SubtractionSet::additive(self.m, self.delta)
    }

    /// Closed-form period length p(m, δ).
    pub fn period(&self) -> usize {
        match self.detail {
            CaseDetail::I { .. } => 3 * self.m + 2 * self.delta - self.d,
            CaseDetail::II { .. } => {
                let numer = self.m * (self.m + 2 * self.delta + self.d);
                debug_assert_eq!(numer % self.g, 0);
                numer / self.g
            }
        }
    }
}

/// One maximal run `symbol^len` of a period word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub symbol: Nimber,
    pub len: usize,
}

impl Factor {
    pub fn new(symbol: Nimber, len: usize) -> Self {
        Self { symbol, len }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockTag {
    B,
    C,
    /// An inserted 0^m factor, present after block i iff β(i) = 0.
    Z,
}

impl fmt::Display for BlockTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockTag::B => "B",
            BlockTag::C => "C",
            BlockTag::Z => "Z",
        })
    }
}

/// A run-length word plus, for block-built words, its B/C/ζ structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodWord {
    factors: Vec<Factor>,
    blocks: Vec<(usize, BlockTag)>,
    total_len: usize,
}

impl PeriodWord {
    /// Normalize raw factors: drop empty ones, merge equal neighbours.
    pub fn from_factors(raw: Vec<Factor>, blocks: Vec<(usize, BlockTag)>) -> Self {
        let mut factors: Vec<Factor> = Vec::with_capacity(raw.len());
        for f in raw {
            if f.len == 0 {
                continue;
            }
            match factors.last_mut() {
                Some(last) if last.symbol == f.symbol => last.len += f.len,
                _ => factors.push(f),
            }
        }
        let total_len = factors.iter().map(|f| f.len).sum();
        Self {
            factors,
            blocks,
            total_len,
        }
    }

    /// Run-length encode a value sequence; no block structure.
    pub fn from_values(values: &[Nimber]) -> Self {
        let mut raw = Vec::new();
        for &v in values {
            match raw.last_mut() {
                Some(Factor { symbol, len }) if *symbol == v => *len += 1,
                _ => raw.push(Factor::new(v, 1)),
            }
        }
        Self::from_factors(raw, Vec::new())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Block tags with their block indices; empty for words built without
    /// block structure.
    pub fn blocks(&self) -> &[(usize, BlockTag)] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.total_len
    }

    pub fn is_empty(&self) -> bool {
        self.total_len == 0
    }

    /// Expand to one value per position.
    pub fn values(&self) -> Vec<Nimber> {
        let mut out = Vec::with_capacity(self.total_len);
        for f in &self.factors {
            out.extend(std::iter::repeat_n(f.symbol, f.len));
        }
        out
    }

    /// Word as digit characters, e.g. "1230". Symbols must be single digits.
    pub fn digits(&self) -> String {
        let mut out = String::with_capacity(self.total_len);
        for f in &self.factors {
            debug_assert!(f.symbol <= 9);
            for _ in 0..f.len {
                out.push((b'0' + f.symbol) as char);
            }
        }
        out
    }

    /// Human-readable run-length form like "1^5 2^5 3^4".
    pub fn run_length(&self) -> String {
        self.factors
            .iter()
            .map(|f| format!("{}^{}", f.symbol, f.len))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Block tags joined, e.g. "BCCCBZ".
    pub fn block_string(&self) -> String {
        self.blocks.iter().map(|(_, t)| t.to_string()).collect()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("construction expects case {expected}, parameters are case {found}")]
    WrongCase { expected: CaseTag, found: CaseTag },
    #[error("no symbolic case-II construction for delta >= 2m (m={m}, delta={delta}); use the oracle word")]
    UnsupportedDelta { m: usize, delta: usize },
}

/// The case-I candidate period (1^m 2^m)^a 3^d 0^m (3^m 0^m)^(a−1).
pub fn candidate_word_case1(params: &AdditiveParams) -> Result<PeriodWord, WordError> {
    let CaseDetail::I { a } = params.detail() else {
        return Err(WordError::WrongCase {
            expected: CaseTag::I,
            found: CaseTag::II,
        });
    };
    let (m, d) = (params.m(), params.d());
    let mut raw = Vec::with_capacity(2 * a + 2 + 2 * (a - 1));
    for _ in 0..a {
        raw.push(Factor::new(1, m));
        raw.push(Factor::new(2, m));
    }
    raw.push(Factor::new(3, d));
    raw.push(Factor::new(0, m));
    for _ in 1..a {
        raw.push(Factor::new(3, m));
        raw.push(Factor::new(0, m));
    }
    let word = PeriodWord::from_factors(raw, Vec::new());
    debug_assert_eq!(word.len(), params.period());
    Ok(word)
}

/// Modular offsets steering block i: α = [ki], β = [k(i+1)], both mod m in
/// [0, m), and γ the least positive representative of k(i+1) mod m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockIndices {
    pub i: usize,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

pub fn block_indices(i: usize, m: usize, k: usize) -> BlockIndices {
    debug_assert!(k >= 1 && k < m);
    let alpha = k * i % m;
    let beta = k * (i + 1) % m;
    let gamma = if beta == 0 { m } else { beta };
    BlockIndices {
        i,
        alpha,
        beta,
        gamma,
    }
}

/// One constructed block: its kind, raw factors (empty factors included;
/// normalization drops them), and whether a ζ = 0^m follows it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub tag: BlockTag,
    pub factors: Vec<Factor>,
    pub zeta: bool,
}

/// Build block i: a B-block A(i) 1^γ 3^(m−γ) 2^γ 0^(m−α) 3^γ when γ > α,
/// otherwise the C-block A(i) 1^m 2^m 1^β 0^(k−β) 3^(m−k) 2^β 3^(k−β) 0^m 3^β,
/// with prefix A(i) = 1^(m−α) 0^α 2^(m−α).
pub fn build_block(idx: BlockIndices, m: usize, k: usize) -> Block {
    let BlockIndices {
        alpha, beta, gamma, ..
    } = idx;
    let mut factors = vec![
        Factor::new(1, m - alpha),
        Factor::new(0, alpha),
        Factor::new(2, m - alpha),
    ];
    let tag = if gamma > alpha {
        factors.extend([
            Factor::new(1, gamma),
            Factor::new(3, m - gamma),
            Factor::new(2, gamma),
            Factor::new(0, m - alpha),
            Factor::new(3, gamma),
        ]);
        BlockTag::B
    } else {
        // γ < α forces β < k, so the two k−β exponents stay positive.
        debug_assert!(beta < k);
        factors.extend([
            Factor::new(1, m),
            Factor::new(2, m),
            Factor::new(1, beta),
            Factor::new(0, k - beta),
            Factor::new(3, m - k),
            Factor::new(2, beta),
            Factor::new(3, k - beta),
            Factor::new(0, m),
            Factor::new(3, beta),
        ]);
        BlockTag::C
    };
    Block {
        tag,
        factors,
        zeta: beta == 0,
    }
}

/// The case-II block product over all block indices 0..m, each block followed
/// by ζ(i) = 0^m when β(i) = 0.
///
/// Its length is m(4m+3k): gcd(m,k) copies of the minimal period
/// m(4m+3k)/gcd(m,k), since the block pattern repeats every m/gcd(m,k)
/// indices. Only δ < 2m is constructible; larger δ has no fixed factor
/// placement and is served by [`oracle_prefix_word`].
pub fn build_period_word_case2(params: &AdditiveParams) -> Result<PeriodWord, WordError> {
    let CaseDetail::II { k, .. } = params.detail() else {
        return Err(WordError::WrongCase {
            expected: CaseTag::II,
            found: CaseTag::I,
        });
    };
    if params.delta() != params.d() {
        return Err(WordError::UnsupportedDelta {
            m: params.m(),
            delta: params.delta(),
        });
    }
    let m = params.m();
    let mut raw = Vec::new();
    let mut blocks = Vec::new();
    for i in 0..m {
        let block = build_block(block_indices(i, m, k), m, k);
        blocks.push((i, block.tag));
        raw.extend(block.factors);
        if block.zeta {
            raw.push(Factor::new(0, m));
            blocks.push((i, BlockTag::Z));
        }
    }
    let word = PeriodWord::from_factors(raw, blocks);
    debug_assert_eq!(word.len(), m * (4 * m + 3 * k));
    Ok(word)
}

/// Brute-force sink prefix of one formula period, as a run-length word.
/// The universal fallback where no symbolic construction exists.
pub fn oracle_prefix_word(params: &AdditiveParams) -> PeriodWord {
    let seq = GrundySequence::compute(&params.set(), Convention::Sink, params.period());
    PeriodWord::from_values(seq.values())
}
