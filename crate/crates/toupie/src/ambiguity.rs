//! The reduction system and the ambiguity sets indexing the resolution in
//! higher degrees.
//!
//! Rewriting tips are monomial windows (replaced by zero) and pivot branches
//! (replaced by their relation tails). Overlaps only ever occur between
//! monomial windows sitting on one branch, so ambiguities are computed per
//! branch by walking chains of overlapping windows.

use crate::algebra::{Element, MonomialWindow, Path, ToupieAlgebra};

/// One rewriting rule `tip -> replacement`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionRule {
    pub tip: Path,
    pub replacement: Element,
}

/// An n-ambiguity: a chain of `degree` minimally overlapping windows on one
/// branch, recorded by the span it covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ambiguity {
    pub branch: usize,
    pub start: usize,
    pub end: usize,
    pub degree: usize,
}

impl Ambiguity {
    pub fn path(&self) -> Path {
        Path::Run {
            branch: self.branch,
            start: self.start,
            len: self.end - self.start,
        }
    }

    pub fn spans_whole_branch(&self, alg: &ToupieAlgebra) -> bool {
        self.start == 0 && self.end == alg.branch_length(self.branch)
    }
}

/// All rewriting rules: one per monomial window and one per reduced linear
/// relation row.
pub fn reduction_system(alg: &ToupieAlgebra) -> Vec<ReductionRule> {
    let mut rules = Vec::new();
    for w in alg.all_windows() {
        rules.push(ReductionRule {
            tip: Path::Run {
                branch: w.branch,
                start: w.start,
                len: w.length,
            },
            replacement: Element::zero(),
        });
    }
    for row in alg.reduced_rows() {
        rules.push(ReductionRule {
            tip: alg.full_branch(row.pivot),
            replacement: row.replacement(alg),
        });
    }
    rules
}

/// The chain of windows underlying the ambiguity starting at `start`, grown
/// greedily: each new window must begin at or after the end of the window
/// before last, end strictly later than the current span, and overlap the
/// previous window.
fn window_chain(windows: &[MonomialWindow], start: usize) -> Vec<MonomialWindow> {
    let Some(first) = windows.iter().find(|w| w.start == start) else {
        return Vec::new();
    };
    // The window at `start` must be the first window reachable from `start`;
    // an earlier-ending window beginning later would break the chain.
    if windows
        .iter()
        .any(|w| w.start > start && w.end() < first.end())
    {
        return Vec::new();
    }
    let mut chain = vec![*first];
    loop {
        let cur = chain[chain.len() - 1];
        let lower = if chain.len() == 1 {
            start + 1
        } else {
            chain[chain.len() - 2].end()
        };
        let next = windows
            .iter()
            .filter(|w| w.start >= lower && w.end() > cur.end())
            .min_by_key(|w| w.end());
        match next {
            // The new segment must not swallow a whole window, which is
            // exactly the overlap condition with the current one.
            Some(w) if w.start < cur.end() => chain.push(*w),
            _ => break,
        }
    }
    chain
}

/// All left n-ambiguities for a given degree, ordered by (branch, start).
pub fn n_ambiguities(alg: &ToupieAlgebra, degree: usize) -> Vec<Ambiguity> {
    assert!(degree >= 2);
    let mut out = Vec::new();
    for b in 0..alg.num_branches() {
        let windows = alg.windows_on(b);
        for w in windows {
            let chain = window_chain(windows, w.start);
            if chain.len() >= degree {
                out.push(Ambiguity {
                    branch: b,
                    start: w.start,
                    end: chain[degree - 1].end(),
                    degree,
                });
            }
        }
    }
    out
}

/// Smallest `N` such that the n-ambiguity set is empty for all `n >= N`.
pub fn max_ambiguity_degree(alg: &ToupieAlgebra) -> usize {
    // Chains on one branch cannot use more windows than exist there.
    let longest: usize = (0..alg.num_branches())
        .map(|b| {
            alg.windows_on(b)
                .iter()
                .map(|w| window_chain(alg.windows_on(b), w.start).len())
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    longest.max(1) + 1
}

/// Left factorization u_0, ..., u_n of an ambiguity (u_0 an arrow).
pub fn left_factorization(alg: &ToupieAlgebra, amb: &Ambiguity) -> Vec<Path> {
    let chain = window_chain(alg.windows_on(amb.branch), amb.start);
    assert!(chain.len() >= amb.degree, "not an ambiguity");
    let mut cuts = vec![amb.start, amb.start + 1];
    for w in chain.iter().take(amb.degree) {
        cuts.push(w.end());
    }
    segments(amb.branch, &cuts)
}

/// Right factorization v_n, ..., v_0 of an ambiguity (v_0 an arrow), built by
/// running the left construction on the reversed branch.
pub fn right_factorization(alg: &ToupieAlgebra, amb: &Ambiguity) -> Vec<Path> {
    let len = alg.branch_length(amb.branch);
    let reversed: Vec<MonomialWindow> = {
        let mut ws: Vec<MonomialWindow> = alg
            .windows_on(amb.branch)
            .iter()
            .map(|w| MonomialWindow {
                branch: w.branch,
                start: len - w.end(),
                length: w.length,
            })
            .collect();
        ws.sort_by_key(|w| w.start);
        ws
    };
    let chain = window_chain(&reversed, len - amb.end);
    assert!(chain.len() >= amb.degree, "no right factorization");
    let mut cuts = vec![len - amb.end, len - amb.end + 1];
    for w in chain.iter().take(amb.degree) {
        cuts.push(w.end());
    }
    // Mirror the cut positions back; the factors come out left to right, so
    // the final factor is the arrow ending the path.
    let mirrored: Vec<usize> = cuts.iter().rev().map(|&c| len - c).collect();
    segments(amb.branch, &mirrored)
}

fn segments(branch: usize, cuts: &[usize]) -> Vec<Path> {
    cuts.windows(2)
        .map(|pair| Path::Run {
            branch,
            start: pair[0],
            len: pair[1] - pair[0],
        })
        .collect()
}
