//! Mechanical verification of candidate period words.
//!
//! [`verify_mex_consistency`] replays the sink recursion over two periodic
//! copies of a word plus one window margin; a clean pass certifies the whole
//! infinite periodic extension, since every later window repeats one already
//! checked. [`audit_tables`] re-derives the same conclusion factor by factor
//! for the case-II block construction, emitting reachability witnesses and
//! anti-collision/separation checks in concrete position arithmetic.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::additive::{block_indices, build_block, AdditiveParams, BlockTag, CaseDetail};
use crate::nim::{mex, Nimber, SubtractionSet};

/// One position where a word disagrees with the mex recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MexViolation {
    /// Heap size, counted from 1.
    pub position: usize,
    /// mex of the option values at that heap.
    pub expected: Nimber,
    /// Value the word carries there.
    pub found: Nimber,
}

impl fmt::Display for MexViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "position {} expected {} found {}",
            self.position, self.expected, self.found
        )
    }
}

/// Check `word`, extended periodically from heap 1 with the sink below, at
/// every heap up to 2|word| + max S. Empty result = pass, and the infinite
/// periodic extension satisfies the recursion.
pub fn verify_mex_consistency(word: &[Nimber], set: &SubtractionSet) -> Vec<MexViolation> {
    assert!(!word.is_empty(), "cannot verify an empty word");
    let len = word.len();
    let at = |x: usize| word[(x - 1) % len];
    let mut violations = Vec::new();
    for x in 1..=2 * len + set.max_move() {
        let expected = mex(set
            .moves()
            .iter()
            .map(|&s| if s >= x { 0 } else { at(x - s) as usize }))
            as Nimber;
        let found = at(x);
        if expected != found {
            violations.push(MexViolation {
                position: x,
                expected,
                found,
            });
        }
    }
    violations
}

/// Factor position within a block: A1..A3 prefix, B1..B5 or C1..C9 body, or an
/// inserted ζ run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(clippy::upper_case_acronyms)]
pub enum FactorLabel {
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
    B4,
    B5,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    Z,
}

impl FactorLabel {
    pub fn as_str(self) -> &'static str {
        use FactorLabel::*;
        match self {
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            B1 => "B1",
            B2 => "B2",
            B3 => "B3",
            B4 => "B4",
            B5 => "B5",
            C1 => "C1",
            C2 => "C2",
            C3 => "C3",
            C4 => "C4",
            C5 => "C5",
            C6 => "C6",
            C7 => "C7",
            C8 => "C8",
            C9 => "C9",
            Z => "Z",
        }
    }
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A concrete factor occurrence: block occurrence index (counting across the
/// audited copies) plus the label inside the block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FactorId {
    pub block: usize,
    pub label: FactorLabel,
}

impl fmt::Display for FactorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.label, self.block)
    }
}

/// Where a reachability witness points: into the sink or into a factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WitnessSource {
    Sink,
    Factor(FactorId),
}

impl fmt::Display for WitnessSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessSource::Sink => f.write_str("sink"),
            WitnessSource::Factor(id) => write!(f, "{id}"),
        }
    }
}

/// Audit result for one factor: for every value below the factor's value,
/// the (move, source) pairs whose inverse images jointly cover the factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRecord {
    pub factor: FactorId,
    pub value: Nimber,
    /// First position, 1-based within the audited word.
    pub start: usize,
    pub len: usize,
    pub reachability: Vec<(Nimber, Vec<(usize, WitnessSource)>)>,
    pub collision_free: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AuditError {
    #[error("table audit applies to case II with m < delta < 2m")]
    WrongCase,
    #[error("reachability failure: {factor} (value {value}) has no option of value {missing} at position {position}")]
    Uncovered {
        factor: FactorId,
        value: Nimber,
        missing: Nimber,
        position: usize,
    },
    #[error("collision: position {position} of {factor} reaches value {value} via move {mv}")]
    Collision {
        factor: FactorId,
        value: Nimber,
        position: usize,
        mv: usize,
    },
    #[error("similar factors {label} of blocks {first} and {second} are {gap} apart, need more than {required}")]
    Separation {
        label: FactorLabel,
        first: usize,
        second: usize,
        gap: usize,
        required: usize,
    },
}

#[derive(Debug, Clone, Copy)]
struct Placed {
    id: FactorId,
    value: Nimber,
    start: usize,
    len: usize,
}

const B_LABELS: [FactorLabel; 5] = [
    FactorLabel::B1,
    FactorLabel::B2,
    FactorLabel::B3,
    FactorLabel::B4,
    FactorLabel::B5,
];
const C_LABELS: [FactorLabel; 9] = [
    FactorLabel::C1,
    FactorLabel::C2,
    FactorLabel::C3,
    FactorLabel::C4,
    FactorLabel::C5,
    FactorLabel::C6,
    FactorLabel::C7,
    FactorLabel::C8,
    FactorLabel::C9,
];

/// Lay out `copies` concatenated copies of the block product with labels.
fn place_factors(m: usize, k: usize, copies: usize) -> Vec<Placed> {
    let a_labels = [FactorLabel::A1, FactorLabel::A2, FactorLabel::A3];
    let mut placed = Vec::new();
    let mut pos = 1usize;
    for copy in 0..copies {
        for i in 0..m {
            let block = copy * m + i;
            let built = build_block(block_indices(i, m, k), m, k);
            let labels: &[FactorLabel] = match built.tag {
                BlockTag::B => &B_LABELS,
                BlockTag::C => &C_LABELS,
                BlockTag::Z => unreachable!(),
            };
            for (factor, &label) in built.factors.iter().zip(a_labels.iter().chain(labels)) {
                if factor.len == 0 {
                    continue;
                }
                placed.push(Placed {
                    id: FactorId { block, label },
                    value: factor.symbol,
                    start: pos,
                    len: factor.len,
                });
                pos += factor.len;
            }
            if built.zeta {
                placed.push(Placed {
                    id: FactorId {
                        block,
                        label: FactorLabel::Z,
                    },
                    value: 0,
                    start: pos,
                    len: m,
                });
                pos += m;
            }
        }
    }
    placed
}

/// Audit the case-II construction of `params` over two copies of the block
/// product preceded by the sink, reproducing the reachability and
/// anti-collision tables in concrete arithmetic. Factors of the first copy
/// exercise the sink base case, the copy seam exercises the wrap.
pub fn audit_tables(params: &AdditiveParams) -> Result<Vec<AuditRecord>, AuditError> {
    let CaseDetail::II { k, .. } = params.detail() else {
        return Err(AuditError::WrongCase);
    };
    if params.delta() != params.d() {
        return Err(AuditError::WrongCase);
    }
    let m = params.m();
    let moves = params.moves();
    let separation = 3 * m + k; // = max S

    let placed = place_factors(m, k, 2);
    let total: usize = placed.iter().map(|p| p.len).sum();
    debug_assert_eq!(total, 2 * m * (4 * m + 3 * k));

    // Position -> (value, owning factor), 1-based.
    let mut value_at = vec![0u8; total + 1];
    let mut owner = vec![usize::MAX; total + 1];
    for (fi, p) in placed.iter().enumerate() {
        for x in p.start..p.start + p.len {
            value_at[x] = p.value;
            owner[x] = fi;
        }
    }

    let option = |x: usize, s: usize| -> (usize, WitnessSource) {
        if s >= x {
            (0, WitnessSource::Sink)
        } else {
            let t = x - s;
            (
                value_at[t] as usize,
                WitnessSource::Factor(placed[owner[t]].id),
            )
        }
    };

    let mut records = Vec::with_capacity(placed.len());
    for p in &placed {
        let mut reachability = Vec::new();
        for missing in 0..p.value {
            let mut witnesses: BTreeSet<(usize, WitnessSource)> = BTreeSet::new();
            for x in p.start..p.start + p.len {
                let mut covered = false;
                for &s in &moves {
                    let (val, src) = option(x, s);
                    if val == missing as usize {
                        witnesses.insert((s, src));
                        covered = true;
                    }
                }
                if !covered {
                    return Err(AuditError::Uncovered {
                        factor: p.id,
                        value: p.value,
                        missing,
                        position: x,
                    });
                }
            }
            reachability.push((missing, witnesses.into_iter().collect()));
        }
        for x in p.start..p.start + p.len {
            for &s in &moves {
                if option(x, s).0 == p.value as usize {
                    return Err(AuditError::Collision {
                        factor: p.id,
                        value: p.value,
                        position: x,
                        mv: s,
                    });
                }
            }
        }
        records.push(AuditRecord {
            factor: p.id,
            value: p.value,
            start: p.start,
            len: p.len,
            reachability,
            collision_free: true,
        });
    }

    // Similar factors (same label, adjacent blocks) must sit further apart
    // than the largest move.
    for a in &placed {
        for b in &placed {
            if a.id.label == b.id.label
                && a.id.label != FactorLabel::Z
                && b.id.block == a.id.block + 1
            {
                let gap = b.start - (a.start + a.len);
                if gap <= separation {
                    return Err(AuditError::Separation {
                        label: a.id.label,
                        first: a.id.block,
                        second: b.id.block,
                        gap,
                        required: separation,
                    });
                }
            }
        }
    }

    Ok(records)
}

/// One line per factor, with moves named s1/s2/s3.
pub fn audit_report(records: &[AuditRecord], params: &AdditiveParams) -> String {
    let moves = params.moves();
    let move_name = |s: usize| match moves.iter().position(|&m| m == s) {
        Some(i) => format!("s{}", i + 1),
        None => format!("{s}"),
    };
    let mut out = String::new();
    for r in records {
        out.push_str(&format!(
            "{} v={} pos={}..{}",
            r.factor,
            r.value,
            r.start,
            r.start + r.len - 1
        ));
        for (missing, wits) in &r.reachability {
            let joined = wits
                .iter()
                .map(|(s, src)| format!("{}:{}", move_name(*s), src))
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!(" reach{missing}={joined}"));
        }
        out.push_str(if r.collision_free {
            " ok\n"
        } else {
            " COLLISION\n"
        });
    }
    out
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("modular identity failed at i={i}: {detail}")]
pub struct LemmaFailure {
    pub i: usize,
    pub detail: String,
}

/// Check the modular identities the block construction leans on, for every
/// block index: γ−α = k when γ > α; α−β = m−k, β < k and α > m−k when
/// γ < α; α(i) = β(i−1); and γ(i−1) = α(i) as positive representative.
pub fn check_lemma_identities(m: usize, k: usize) -> Result<(), LemmaFailure> {
    assert!(k >= 1 && k < m);
    let fail = |i: usize, detail: String| Err(LemmaFailure { i, detail });
    for i in 0..m {
        let cur = block_indices(i, m, k);
        if cur.gamma == cur.alpha {
            return fail(i, format!("gamma = alpha = {}", cur.alpha));
        }
        if cur.gamma > cur.alpha && cur.gamma - cur.alpha != k {
            return fail(
                i,
                format!("gamma - alpha = {}, not k", cur.gamma - cur.alpha),
            );
        }
        if cur.gamma < cur.alpha {
            if cur.alpha - cur.beta != m - k {
                return fail(
                    i,
                    format!("alpha - beta = {}, not m - k", cur.alpha - cur.beta),
                );
            }
            if cur.beta >= k {
                return fail(i, format!("beta = {} not below k", cur.beta));
            }
            if cur.alpha <= m - k {
                return fail(i, format!("alpha = {} not above m - k", cur.alpha));
            }
        }
        if i == 0 {
            if cur.alpha != 0 {
                return fail(i, format!("alpha(0) = {}", cur.alpha));
            }
        } else {
            let prev = block_indices(i - 1, m, k);
            if prev.beta != cur.alpha {
                return fail(
                    i,
                    format!("beta(i-1) = {} but alpha = {}", prev.beta, cur.alpha),
                );
            }
            let expected = if cur.alpha == 0 { m } else { cur.alpha };
            if prev.gamma != expected {
                return fail(
                    i,
                    format!("gamma(i-1) = {} but expected {expected}", prev.gamma),
                );
            }
        }
    }
    Ok(())
}
