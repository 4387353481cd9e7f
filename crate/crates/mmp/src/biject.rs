//! The constructive correspondences behind the coefficient identities:
//! the 1-to-(k-1)! large-follower correspondence between permutations
//! with j+k-1 left-to-right maxima (top k-1 values all maxima) and
//! permutations with `mmp^{k'} = j`, the swap correspondence relating
//! consecutive rows of the arrow table, the delete-1 recursion map, and
//! the border-pattern bijection.

use itertools::Itertools;

use crate::pattern::{mmp_count_primed, mmp_matches, border_p_count, PatternError};
use crate::perm::Permutation;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BijectError {
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("n must be at least {min}, got {n}")]
    NTooSmall { n: usize, min: usize },
    #[error("permutation is not in the domain: {0}")]
    Domain(String),
    #[error("index q out of range: {q} not in 1..={max}")]
    QOutOfRange { q: usize, max: usize },
    #[error("inverse search failed: {0}")]
    InverseFailed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    Case1,
    Case2,
}

/// One fiber of the large-follower correspondence: a source permutation
/// with `j+k-1` left-to-right maxima and its `(k-1)!` images, each with
/// `mmp^{k'} = j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RStirFiber {
    pub source: Permutation,
    pub j: usize,
    pub case_tag: CaseTag,
    pub images: Vec<Permutation>,
}

/// One instance of the swap correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Main2Witness {
    pub sigma: Permutation,
    pub q: usize,
    pub pi_q: Permutation,
}

fn require_k(k: usize) -> Result<(), BijectError> {
    if k < 2 {
        Err(PatternError::KTooSmall(k).into())
    } else {
        Ok(())
    }
}

/// Checks the source-side domain: the values `n-k+2..=n` are all
/// left-to-right maxima. Returns `j` = (number of maxima) - (k-1).
fn rstir_domain_j(sigma: &Permutation, k: usize) -> Result<usize, BijectError> {
    let n = sigma.n();
    if n < k {
        return Err(BijectError::NTooSmall { n, min: k });
    }
    let maxima = sigma.left_to_right_maxima();
    let p = maxima.len();
    if p < k - 1 {
        return Err(BijectError::Domain(format!(
            "only {p} left-to-right maxima, need at least {}",
            k - 1
        )));
    }
    for (idx, &pos) in maxima[p - (k - 1)..].iter().enumerate() {
        let want = n - k + 2 + idx;
        if sigma.value_at(pos) != want {
            return Err(BijectError::Domain(format!(
                "value {want} is not a left-to-right maximum"
            )));
        }
    }
    Ok(p - (k - 1))
}

/// Case 2 restructuring: for each of the maxima `n-k+2..=n-1`, cut the
/// substring from that maximum up to just before its last large follower,
/// and append the cut substrings at the end ordered by their last large
/// follower, smallest first. A follower is large when it exceeds the j-th
/// left-to-right maximum (0 for j = 0); cutting above the j-th maximum
/// rather than the (j-1)st is what keeps distinct sources on disjoint
/// fibers. Returns the restructured permutation, or None when no maximum
/// has a large follower (Case 1).
fn large_follower_moves(
    sigma: &Permutation,
    j: usize,
    k: usize,
    threshold: usize,
    maxima: &[usize],
) -> Option<Permutation> {
    let word = sigma.word();
    let mut removed = vec![false; word.len()];
    let mut moved: Vec<(usize, Vec<usize>)> = Vec::new();
    for r in (j + 1)..=(j + k - 2) {
        let head_pos = maxima[r - 1];
        let next_pos = maxima[r];
        let last_large = (head_pos + 1..next_pos)
            .filter(|&q| sigma.value_at(q) > threshold)
            .next_back();
        if let Some(fpos) = last_large {
            for q in head_pos..fpos {
                removed[q - 1] = true;
            }
            moved.push((sigma.value_at(fpos), word[head_pos - 1..fpos - 1].to_vec()));
        }
    }
    if moved.is_empty() {
        return None;
    }
    moved.sort_by_key(|&(f, _)| f);
    let mut out: Vec<usize> = word
        .iter()
        .enumerate()
        .filter(|&(i, _)| !removed[i])
        .map(|(_, &v)| v)
        .collect();
    for (_, substring) in moved {
        out.extend(substring);
    }
    Some(Permutation::new(out).expect("rearrangement of a permutation"))
}

/// The slots rearranged across a fiber: positions 1..=k-1 when `j = 0`,
/// else the positions of the k-1 largest values strictly between the
/// anchor (the (j-1)st left-to-right maximum; start of the word when
/// j = 1) and `n`.
fn fiber_slots(base: &Permutation, k: usize, j: usize, anchor_pos: usize) -> Vec<usize> {
    if j == 0 {
        return (1..=k - 1).collect();
    }
    let npos = base.position_of(base.n());
    let mut region: Vec<usize> = (anchor_pos + 1..npos).collect();
    region.sort_by_key(|&pos| std::cmp::Reverse(base.value_at(pos)));
    let mut slots: Vec<usize> = region.into_iter().take(k - 1).collect();
    slots.sort_unstable();
    slots
}

fn rearrangements(base: &Permutation, slots: &[usize]) -> Vec<Permutation> {
    let values: Vec<usize> = slots.iter().map(|&s| base.value_at(s)).collect();
    values
        .iter()
        .copied()
        .permutations(values.len())
        .map(|perm| {
            let mut word = base.word().to_vec();
            for (&slot, v) in slots.iter().zip(perm) {
                word[slot - 1] = v;
            }
            Permutation::new(word).expect("rearrangement of a permutation")
        })
        .collect()
}

pub fn rstir_forward(sigma: &Permutation, k: usize) -> Result<RStirFiber, BijectError> {
    require_k(k)?;
    let j = rstir_domain_j(sigma, k)?;
    let n = sigma.n();
    let maxima = sigma.left_to_right_maxima();
    let npos = sigma.position_of(n);
    let anchor_pos = if j >= 2 { maxima[j - 2] } else { 0 };
    let vj_val = if j >= 1 {
        sigma.value_at(maxima[j - 1])
    } else {
        0
    };
    let (case2, base) = if j == 0 {
        if npos > k - 1 {
            let moved =
                large_follower_moves(sigma, j, k, 0, &maxima).unwrap_or_else(|| sigma.clone());
            (true, moved)
        } else if npos == k - 1 {
            (false, sigma.clone())
        } else {
            return Err(BijectError::Domain(format!(
                "n at position {npos} is incompatible with {} left-to-right maxima",
                k - 1
            )));
        }
    } else {
        // Case 2 iff the j-th maximum matches MMP^k, which happens exactly
        // when some later maximum below n has a follower above sigma_{i_j}
        match large_follower_moves(sigma, j, k, vj_val, &maxima) {
            Some(moved) => (true, moved),
            None => (false, sigma.clone()),
        }
    };
    let slots = fiber_slots(&base, k, j, anchor_pos);
    let images = rearrangements(&base, &slots);
    Ok(RStirFiber {
        source: sigma.clone(),
        j,
        case_tag: if case2 { CaseTag::Case2 } else { CaseTag::Case1 },
        images,
    })
}

/// Splits the part of `tau` after `n` into the tail that belongs to the
/// last pseudocycle and the moved substrings, each headed by a value in
/// `n-k+2..=n-1`.
fn split_moved(tau: &Permutation, k: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = tau.n();
    let npos = tau.position_of(n);
    let word = tau.word();
    let is_head = |v: usize| v >= n - k + 2 && v <= n - 1;
    let after: &[usize] = &word[npos..];
    let first_head = after.iter().position(|&v| is_head(v));
    match first_head {
        None => (after.to_vec(), Vec::new()),
        Some(start) => {
            let tail = after[..start].to_vec();
            let mut substrings: Vec<Vec<usize>> = Vec::new();
            for &v in &after[start..] {
                if is_head(v) {
                    substrings.push(vec![v]);
                } else {
                    substrings.last_mut().expect("starts at a head").push(v);
                }
            }
            (tail, substrings)
        }
    }
}

/// Right inverse of [`rstir_forward`]: finds the unique source `sigma`
/// whose fiber contains `phi`. The search ranges over the `(k-1)!`
/// arrangements of the rearranged values and, for each, over the
/// admissible re-insertion points of the substrings displaced after `n`;
/// each candidate is certified by running the forward map.
pub fn rstir_inverse(phi: &Permutation, k: usize) -> Result<Permutation, BijectError> {
    require_k(k)?;
    let n = phi.n();
    if n < k {
        return Err(BijectError::NTooSmall { n, min: k });
    }
    let report = mmp_matches(phi, k)?;
    let j = report.count_primed;
    let (anchor_pos, anchor_val) = if j >= 2 {
        let pos = *report.matched_positions.last().expect("j - 1 real matches");
        (pos, phi.value_at(pos))
    } else {
        (0, 0)
    };
    let slots = if j == 0 {
        (1..=k - 1).collect::<Vec<_>>()
    } else {
        fiber_slots(phi, k, j, anchor_pos)
    };
    let slot_values: Vec<usize> = slots.iter().map(|&s| phi.value_at(s)).collect();

    let mut found: Vec<Permutation> = Vec::new();
    for arrangement in slot_values.iter().copied().permutations(slot_values.len()) {
        let mut word = phi.word().to_vec();
        for (&slot, v) in slots.iter().zip(&arrangement) {
            word[slot - 1] = *v;
        }
        let tau = Permutation::new(word).expect("rearrangement of a permutation");
        if j == 0 && tau.value_at(k - 1) != n {
            continue;
        }
        let (_, substrings) = split_moved(&tau, k);
        let core: Vec<usize> = {
            let moved_len: usize = substrings.iter().map(|s| s.len()).sum();
            tau.word()[..tau.n() - moved_len].to_vec()
        };
        // candidate insertion targets: core entries strictly between the
        // anchor and n that exceed the anchor value, assigned to the
        // substrings in strictly increasing order (the forward map
        // appends them sorted by surviving large follower)
        let core_npos = core
            .iter()
            .position(|&v| v == n)
            .expect("n stays in the core")
            + 1;
        let mut targets: Vec<usize> = (anchor_pos + 1..core_npos)
            .map(|p| core[p - 1])
            .filter(|&v| v > anchor_val)
            .collect();
        targets.sort_unstable();
        let t = substrings.len();
        for combo in targets.iter().copied().combinations(t) {
            let mut word = Vec::with_capacity(n);
            for &v in &core {
                if let Some(idx) = combo.iter().position(|&f| f == v) {
                    word.extend(&substrings[idx]);
                }
                word.push(v);
            }
            let candidate = Permutation::new(word).expect("reassembled permutation");
            if found.contains(&candidate) {
                continue;
            }
            if rstir_domain_j(&candidate, k) != Ok(j) {
                continue;
            }
            let fiber = rstir_forward(&candidate, k)?;
            if fiber.images.contains(phi) {
                found.push(candidate);
            }
        }
    }
    match found.len() {
        1 => Ok(found.pop().expect("one candidate")),
        0 => Err(BijectError::InverseFailed(format!(
            "no source found for {phi} with k={k}"
        ))),
        _ => Err(BijectError::InverseFailed(format!(
            "multiple sources found for {phi} with k={k}"
        ))),
    }
}

pub fn main2_forward(sigma: &Permutation, k: usize, q: usize) -> Result<Main2Witness, BijectError> {
    require_k(k)?;
    let j = mmp_count_primed(sigma, k)?;
    if j < 2 {
        return Err(BijectError::Domain(format!(
            "mmp^{{{k}'}} = {j}, need at least 2"
        )));
    }
    if mmp_count_primed(sigma, k + 1)? != j - 1 {
        return Err(BijectError::Domain(format!(
            "mmp^{{{}'}} must be {}",
            k + 1,
            j - 1
        )));
    }
    if q < 1 || q > k - 1 {
        return Err(BijectError::QOutOfRange { q, max: k - 1 });
    }
    let n = sigma.n();
    let maxima = sigma.left_to_right_maxima();
    let apos = maxima[j - 2];
    let aval = sigma.value_at(apos);
    let npos = sigma.position_of(n);
    let mut bs: Vec<usize> = (apos + 1..npos)
        .map(|p| sigma.value_at(p))
        .filter(|&v| v > aval)
        .collect();
    bs.sort_unstable();
    debug_assert_eq!(bs.len(), k - 1);
    let bq = bs[q - 1];
    let mut word = sigma.word().to_vec();
    word.swap(apos - 1, sigma.position_of(bq) - 1);
    let pi_q = Permutation::new(word).expect("transposition of a permutation");
    Ok(Main2Witness {
        sigma: sigma.clone(),
        q,
        pi_q,
    })
}

pub fn main2_inverse(pi: &Permutation, k: usize) -> Result<(Permutation, usize), BijectError> {
    require_k(k)?;
    let jm1 = mmp_count_primed(pi, k)?;
    if jm1 < 1 || mmp_count_primed(pi, k + 1)? != jm1 {
        return Err(BijectError::Domain(format!(
            "need mmp^{{{k}'}} = mmp^{{{}'}} >= 1",
            k + 1
        )));
    }
    let j = jm1 + 1;
    let n = pi.n();
    let maxima = pi.left_to_right_maxima();
    let (apos, aval) = if j >= 3 {
        let pos = maxima[j - 3];
        (pos, pi.value_at(pos))
    } else {
        (0, 0)
    };
    let npos = pi.position_of(n);
    // the k distinguished entries are the k largest strictly between the
    // anchor and n: the displaced pseudocycle head plus the other k-1
    // entries exceeding it in the source
    let mut region: Vec<usize> = (apos + 1..npos).map(|p| pi.value_at(p)).collect();
    region.sort_unstable_by(|a, b| b.cmp(a));
    if region.len() < k {
        return Err(BijectError::Domain(format!(
            "{} entries between the anchor and n, need at least {k}",
            region.len()
        )));
    }
    let mut distinguished: Vec<usize> = region.into_iter().take(k).collect();
    distinguished.sort_unstable();
    if distinguished[0] <= aval {
        return Err(BijectError::Domain(
            "distinguished entries do not all exceed the anchor".into(),
        ));
    }
    let b = pi.value_at(maxima[j - 2]);
    let q = distinguished
        .iter()
        .position(|&v| v == b)
        .ok_or_else(|| BijectError::Domain("pseudocycle head not distinguished".into()))?
        + 1;
    if q < 2 {
        return Err(BijectError::Domain(
            "pseudocycle head is the smallest distinguished entry".into(),
        ));
    }
    let mut word = pi.word().to_vec();
    word.swap(
        pi.position_of(distinguished[0]) - 1,
        pi.position_of(b) - 1,
    );
    let sigma = Permutation::new(word).expect("transposition of a permutation");
    Ok((sigma, q - 1))
}

/// The delete-1 map realizing the recurrence
/// `C_{n,k,j} = (n-1) C_{n-1,k,j} + C_{n-1,k,j-1}`.
pub fn thm_main_delete_map(sigma: &Permutation, k: usize) -> Result<Permutation, BijectError> {
    require_k(k)?;
    let n = sigma.n();
    if n < 2 {
        return Err(BijectError::NTooSmall { n, min: 2 });
    }
    let j = mmp_count_primed(sigma, k)?;
    if j == 0 {
        return Err(BijectError::Domain("permutation cannot match".into()));
    }
    if j == 1 && k <= n && sigma.value_at(k) == n && sigma.position_of(1) < k {
        let mut word = sigma.word().to_vec();
        let onepos = sigma.position_of(1);
        word.swap(onepos - 1, k - 1);
        let swapped = Permutation::new(word).expect("transposition of a permutation");
        return Ok(swapped.delete_value_and_reduce(1).expect("1 is present"));
    }
    Ok(sigma.delete_value_and_reduce(1).expect("1 is present"))
}

/// The border-pattern map: `sigma = sigma_1 A 1 B n` goes to
/// `phi = (sigma_1 - 1) B' (n-1) A'` in `S_{n-1}`, primes meaning every
/// entry drops by one.
pub fn border_to_mmp(sigma: &Permutation) -> Result<Permutation, BijectError> {
    let n = sigma.n();
    let count = border_p_count(sigma);
    if count == 0 {
        return Err(BijectError::Domain(
            "permutation does not match the border pattern".into(),
        ));
    }
    let onepos = sigma.position_of(1);
    let mut word = Vec::with_capacity(n - 1);
    word.push(sigma.value_at(1) - 1);
    for p in onepos + 1..n {
        word.push(sigma.value_at(p) - 1);
    }
    word.push(n - 1);
    for p in 2..onepos {
        word.push(sigma.value_at(p) - 1);
    }
    Ok(Permutation::new(word).expect("relabeled permutation"))
}

pub fn border_from_mmp(phi: &Permutation, k: usize) -> Result<Permutation, BijectError> {
    if k < 1 {
        return Err(BijectError::Domain("k must be at least 1".into()));
    }
    let m = phi.n();
    if mmp_count_primed(phi, k + 1)? != 2 || mmp_count_primed(phi, k + 2)? != 1 {
        return Err(BijectError::Domain(format!(
            "need mmp^{{{}'}} = 2 and mmp^{{{}'}} = 1",
            k + 1,
            k + 2
        )));
    }
    let n = m + 1;
    let maxpos = phi.position_of(m);
    let mut word = Vec::with_capacity(n);
    word.push(phi.value_at(1) + 1);
    for p in maxpos + 1..=m {
        word.push(phi.value_at(p) + 1);
    }
    word.push(1);
    for p in 2..maxpos {
        word.push(phi.value_at(p) + 1);
    }
    word.push(n);
    let sigma = Permutation::new(word).expect("relabeled permutation");
    if border_p_count(&sigma) != k {
        return Err(BijectError::Domain(format!(
            "reassembled permutation matches the border pattern {} times, expected {k}",
            border_p_count(&sigma)
        )));
    }
    Ok(sigma)
}
