//! The quadrant marked mesh pattern `MMP^k` and the border pattern `p`.
//!
//! A position `i` matches `MMP^k` in `sigma` when `sigma_i` is a
//! left-to-right maximum other than `n` and at least `k-1` larger entries
//! lie strictly between it and the position of `n`. The primed statistic
//! additionally lets the virtual entry 0 match whenever `n` sits at
//! position `k` or later.

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("k must be at least 2, got {0}")]
    KTooSmall(usize),
}

/// Full match data for `MMP^k` on one permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchReport {
    pub k: usize,
    /// Ascending positions `i >= 1` that match; always a prefix of the
    /// left-to-right-maxima positions.
    pub matched_positions: Vec<usize>,
    /// Whether the virtual entry 0 matches (`n` at position `>= k`).
    pub zero_matches: bool,
    pub count_unprimed: usize,
    pub count_primed: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchClass {
    /// `mmp^{k'} = 0`: `n` occurs at position `k-1` or earlier.
    CannotMatch,
    /// `mmp^{k'} = 1`.
    AlmostMatch,
    /// `mmp^{k'} = j + 1 >= 2`; carries `j = mmp^k`.
    Matches(usize),
}

pub fn mmp_matches(sigma: &Permutation, k: usize) -> Result<MatchReport, PatternError> {
    if k < 2 {
        return Err(PatternError::KTooSmall(k));
    }
    let n = sigma.n();
    let npos = sigma.position_of(n);
    let mut matched_positions = Vec::new();
    for pos in sigma.left_to_right_maxima() {
        if pos >= npos {
            break;
        }
        let v = sigma.value_at(pos);
        let bigger_before_n = (pos + 1..npos)
            .filter(|&j| sigma.value_at(j) > v)
            .count();
        if bigger_before_n >= k - 1 {
            matched_positions.push(pos);
        }
    }
    let zero_matches = npos >= k;
    let count_unprimed = matched_positions.len();
    let count_primed = count_unprimed + usize::from(zero_matches);
    Ok(MatchReport {
        k,
        matched_positions,
        zero_matches,
        count_unprimed,
        count_primed,
    })
}

/// `mmp^k(sigma)`.
pub fn mmp_count(sigma: &Permutation, k: usize) -> Result<usize, PatternError> {
    Ok(mmp_matches(sigma, k)?.count_unprimed)
}

/// `mmp^{k'}(sigma)`.
pub fn mmp_count_primed(sigma: &Permutation, k: usize) -> Result<usize, PatternError> {
    Ok(mmp_matches(sigma, k)?.count_primed)
}

pub fn classify(sigma: &Permutation, k: usize) -> Result<MatchClass, PatternError> {
    let report = mmp_matches(sigma, k)?;
    Ok(match report.count_primed {
        0 => MatchClass::CannotMatch,
        1 => MatchClass::AlmostMatch,
        _ => MatchClass::Matches(report.count_unprimed),
    })
}

/// Number of occurrences of the border pattern `p`: requires
/// `sigma_1 > 1`, `sigma_n = n`, and 1 at an interior position; counts the
/// witnesses `a` with `sigma_1 < a < n` positioned after 1 and before `n`.
pub fn border_p_count(sigma: &Permutation) -> usize {
    let n = sigma.n();
    if n < 4 {
        // four distinct roles (sigma_1, 1, a, n) need n >= 4
        return 0;
    }
    let first = sigma.value_at(1);
    if first <= 1 || sigma.value_at(n) != n {
        return 0;
    }
    let one_pos = sigma.position_of(1);
    if one_pos == n {
        return 0;
    }
    (one_pos + 1..n)
        .filter(|&j| {
            let a = sigma.value_at(j);
            a > first && a < n
        })
        .count()
}
