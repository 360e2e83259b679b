//! Eventual-period detection through repeated window states.
//!
//! The window of a position is the tuple of the last `max S` nim-values. The
//! recursion reads nothing else, so once a window repeats the sequence is
//! periodic from the first occurrence on, for all later positions. Detection
//! hashes each window to its first position; the first collision gives a
//! sound (not yet minimal) pre-period and period, which are then minimized.

use std::collections::HashMap;

use thiserror::Error;

use crate::nim::{Convention, Generator, Nimber, SubtractionSet};

/// Encodes a forbidden slot in a wall-convention window. Distinct from every
/// nim-value because move-set sizes are capped at [`crate::nim::MAX_SET_SIZE`].
const ABSENT: u8 = u8::MAX;

/// Minimal pre-period and period of an eventually periodic nim-sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodInfo {
    /// Positions before the periodic tail, counted from `start_index`.
    pub preperiod: usize,
    pub period: usize,
    /// Values at positions `preperiod .. preperiod + period` relative to
    /// `start_index`.
    pub period_word: Vec<Nimber>,
    pub start_index: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("no repeated window state within horizon {horizon}; theoretical bound {bound}")]
pub struct HorizonExhausted {
    pub horizon: usize,
    /// Rendered ρ^max S, the worst-case number of distinct windows.
    pub bound: String,
}

fn state_bound(rho: usize, max_move: usize) -> String {
    match (rho as u128).checked_pow(max_move as u32) {
        Some(n) => format!("{rho}^{max_move} = {n}"),
        None => format!("{rho}^{max_move} (exceeds u128)"),
    }
}

/// Find the minimal (pre-period, period) of the nim-sequence of `set` under
/// `convention`, searching for a repeated window among the first `horizon`
/// positions.
pub fn detect_period(
    set: &SubtractionSet,
    convention: Convention,
    horizon: usize,
) -> Result<PeriodInfo, HorizonExhausted> {
    let max_move = set.max_move();
    assert!(horizon >= 2 * max_move + 2, "horizon too small");

    let window_at = |values: &[Nimber], i: usize| -> Box<[u8]> {
        (0..max_move)
            .map(|j| {
                let rel = (i + j) as isize - max_move as isize;
                if rel >= 0 {
                    values[rel as usize]
                } else {
                    match convention {
                        Convention::Sink => 0,
                        Convention::Wall => ABSENT,
                    }
                }
            })
            .collect()
    };

    let mut gen = Generator::new(set.clone(), convention);
    let mut seen: HashMap<Box<[u8]>, usize> = HashMap::new();
    let (first, second) = loop {
        let i = gen.values.len();
        if i > horizon {
            return Err(HorizonExhausted {
                horizon,
                bound: state_bound(set.size_rho(), max_move),
            });
        }
        let key = window_at(&gen.values, i);
        if let Some(&at) = seen.get(&key) {
            break (at, i);
        }
        seen.insert(key, i);
        gen.step();
    };
    drop(seen);

    // The repeat guarantees v(x + raw) = v(x) for every x >= first, not just
    // within the computed horizon.
    let raw = second - first;
    gen.extend_to(first + 2 * raw + max_move);
    let values = &gen.values;

    // The minimal period divides any established one, so strip prime factors
    // while the quotient still matches over one full raw-period window.
    let mut period = raw;
    'shrink: loop {
        for f in prime_factors(period) {
            if is_period(values, first, raw, period / f) {
                period /= f;
                continue 'shrink;
            }
        }
        break;
    }

    let mut preperiod = first;
    while preperiod > 0 && values[preperiod - 1] == values[preperiod - 1 + period] {
        preperiod -= 1;
    }

    Ok(PeriodInfo {
        preperiod,
        period,
        period_word: values[preperiod..preperiod + period].to_vec(),
        start_index: convention.start_index(),
    })
}

/// `q` is a period of the tail iff it matches across one window of the
/// already-established period `span`.
fn is_period(values: &[Nimber], from: usize, span: usize, q: usize) -> bool {
    (from..from + span).all(|x| values[x + q] == values[x])
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut fs = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            fs.push(f);
            while n.is_multiple_of(f) {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        fs.push(n);
    }
    fs
}

/// True iff `b` is a cyclic rotation of `a`, decided by comparing
/// lexicographically least rotations.
pub fn minimal_rotation_equivalent(a: &[Nimber], b: &[Nimber]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    let ra = least_rotation(a);
    let rb = least_rotation(b);
    (0..n).all(|t| a[(ra + t) % n] == b[(rb + t) % n])
}

/// Start index of the lexicographically least rotation (Booth's algorithm).
pub fn least_rotation(word: &[Nimber]) -> usize {
    assert!(!word.is_empty());
    let n = word.len() as i64;
    let at = |i: i64| word[(i % n) as usize];
    let mut fail = vec![-1i64; (2 * n) as usize];
    let mut k: i64 = 0;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[(j - k - 1) as usize];
        while i != -1 && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = fail[i as usize];
        }
        if sj != at(k + i + 1) {
            if sj < at(k) {
                k = j;
            }
            fail[(j - k) as usize] = -1;
        } else {
            fail[(j - k) as usize] = i + 1;
        }
    }
    k as usize
}
