//! The toupie algebra itself: quiver encoding, branch taxonomy, relation
//! normalization, multiplication, and the irreducible-path basis.
//!
//! A toupie quiver has one source `0`, one sink `w`, and otherwise consists of
//! disjoint branches from `0` to `w`. A branch is recorded by its arrow count;
//! relations are either monomial windows inside a single branch or linear
//! combinations of whole branches. The admissible ideal lives in path length
//! at least 2, so branches of length 1 never appear in relations.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::matrix::RationalMatrix;
use crate::rat::{format_coeff_term, Rat};

/// A monomial relation: `length` consecutive arrows of one branch starting at
/// `start` (0-based arrow offsets).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct MonomialWindow {
    pub branch: usize,
    pub start: usize,
    pub length: usize,
}

impl MonomialWindow {
    pub fn end(&self) -> usize {
        self.start + self.length
    }
}

/// Raw description of a toupie algebra, before validation. Branch indices are
/// 0-based here; the CLI layer translates from the 1-based input document.
#[derive(Debug, Clone, Default)]
pub struct QuiverSpec {
    pub branch_lengths: Vec<usize>,
    pub monomial_relations: Vec<MonomialWindow>,
    pub linear_relations: Vec<BTreeMap<usize, Rat>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("quiver has no branches")]
    EmptyQuiver,
    #[error("branch {0} has length 1 and cannot appear in a relation")]
    RelationOnArrow(usize),
    #[error("window [{start}, {end}) does not fit in branch {branch} (length {len})")]
    WindowOutOfRange {
        branch: usize,
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("branch {0} carries a monomial relation and appears in a linear relation")]
    MixedBranchClass(usize),
    #[error("branch {0} has nested or duplicate monomial windows")]
    NestedWindows(usize),
    #[error("linear relation {0} has a zero coefficient on branch {1}")]
    ZeroCoefficient(usize, usize),
    #[error("linear relation {0} is dependent on earlier relations (reduces to zero)")]
    ZeroRow(usize),
    #[error("linear relations reduce to a row with a single branch; state it as a monomial relation instead")]
    DegenerateRow,
    #[error("branch index {0} is out of range")]
    NoSuchBranch(usize),
    #[error("branch {0} has length 0")]
    EmptyBranch(usize),
}

/// Vertices are the source, the sink, and for each branch its interior chain.
/// `Inner { branch, position }` is the target of arrow `position - 1`, with
/// `1 <= position <= length - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum VertexId {
    Source,
    Inner { branch: usize, position: usize },
    Sink,
}

/// A path in the quiver: a lazy vertex or a run of consecutive arrows on one
/// branch. Toupie quivers admit no other paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Path {
    Trivial(VertexId),
    Run {
        branch: usize,
        start: usize,
        len: usize,
    },
}

impl Path {
    pub fn arrow(branch: usize, index: usize) -> Path {
        Path::Run {
            branch,
            start: index,
            len: 1,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Path::Trivial(_) => 0,
            Path::Run { len, .. } => *len,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, Path::Trivial(_))
    }

    pub fn is_arrow(&self) -> bool {
        self.len() == 1
    }

    /// First arrow of a run.
    pub fn first_arrow(&self) -> Option<Path> {
        match self {
            Path::Trivial(_) => None,
            Path::Run { branch, start, .. } => Some(Path::arrow(*branch, *start)),
        }
    }
}

/// A k-linear combination of basis paths with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Element {
    terms: BTreeMap<Path, Rat>,
}

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn from_path(p: Path) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(p, Rat::one());
        Element { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, p: &Path) -> Rat {
        self.terms.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, p: Path, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(*p, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(p, v)| (*p, v * c)).collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        self.add(&other.scale(&-Rat::one()))
    }
}

/// Derived numeric invariants of a built algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    /// Arrows from source to sink.
    pub a: usize,
    /// Relation-free branches of length >= 2.
    pub l: usize,
    /// Branches carrying monomial relations.
    pub m: usize,
    /// Branches involved in linear relations.
    pub n: usize,
    /// Independent linear relations after row reduction.
    pub rank: usize,
    /// dim e_0 A e_w = a + l + n - rank.
    pub big_d: usize,
    /// Connected components of the branch graph.
    pub r: usize,
    /// Distinct non-pivot branches appearing in linear relations.
    pub d: usize,
    pub num_vertices: usize,
    pub num_arrows: usize,
}

/// One row of the reduced relation matrix: the pivot branch plus its tail,
/// i.e. the relation `pivot + sum(coeff_j * branch_j) = 0` with all `j > pivot`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedRow {
    pub pivot: usize,
    pub tail: Vec<(usize, Rat)>,
}

impl ReducedRow {
    /// The replacement value of the pivot branch inside the algebra:
    /// `-sum(coeff_j * branch_j)`.
    pub fn replacement(&self, alg: &ToupieAlgebra) -> Element {
        let mut e = Element::zero();
        for (j, c) in &self.tail {
            e.add_term(alg.full_branch(*j), -c.clone());
        }
        e
    }
}

/// The graph on non-arrow, monomial-free branches with one edge for every
/// pair of branches sharing a linear relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QRhoGraph {
    pub vertices: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

/// A validated toupie algebra with its canonical branch order and all
/// derived data. Immutable after construction.
#[derive(Debug, Clone)]
pub struct ToupieAlgebra {
    /// Branch arrow counts, in canonical order.
    lengths: Vec<usize>,
    /// Canonical position -> index in the input spec.
    branch_order: Vec<usize>,
    /// Monomial windows per canonical branch, sorted by start.
    windows: Vec<Vec<MonomialWindow>>,
    reduced_rows: Vec<ReducedRow>,
    invariants: Invariants,
    q_rho: QRhoGraph,
    basis: Vec<Path>,
    /// Branch indices whose full run is irreducible.
    full_branch_basis: Vec<usize>,
}

impl ToupieAlgebra {
    /// Validates the spec, fixes the canonical branch order, row-reduces the
    /// linear relations, and computes every derived invariant.
    pub fn build(spec: QuiverSpec) -> Result<ToupieAlgebra, BuildError> {
        if spec.branch_lengths.is_empty() {
            return Err(BuildError::EmptyQuiver);
        }
        let nb = spec.branch_lengths.len();
        for (i, &len) in spec.branch_lengths.iter().enumerate() {
            if len == 0 {
                return Err(BuildError::EmptyBranch(i));
            }
        }

        // Windows grouped by input branch index.
        let mut windows_by_branch: Vec<Vec<MonomialWindow>> = vec![Vec::new(); nb];
        for w in &spec.monomial_relations {
            if w.branch >= nb {
                return Err(BuildError::NoSuchBranch(w.branch));
            }
            let len = spec.branch_lengths[w.branch];
            if len == 1 {
                return Err(BuildError::RelationOnArrow(w.branch));
            }
            if w.length < 2 || w.end() > len {
                return Err(BuildError::WindowOutOfRange {
                    branch: w.branch,
                    start: w.start,
                    end: w.end(),
                    len,
                });
            }
            windows_by_branch[w.branch].push(*w);
        }
        for (b, ws) in windows_by_branch.iter_mut().enumerate() {
            ws.sort_by_key(|w| (w.start, w.length));
            for pair in ws.windows(2) {
                // Minimal generating sets admit no nested (or equal) tips.
                if pair[1].start == pair[0].start || pair[1].end() <= pair[0].end() {
                    return Err(BuildError::NestedWindows(b));
                }
            }
        }

        // Linear rows reference only long, monomial-free branches.
        let mut in_linear = vec![false; nb];
        for (ri, row) in spec.linear_relations.iter().enumerate() {
            if row.len() < 2 {
                return Err(BuildError::DegenerateRow);
            }
            for (&b, c) in row {
                if b >= nb {
                    return Err(BuildError::NoSuchBranch(b));
                }
                if spec.branch_lengths[b] == 1 {
                    return Err(BuildError::RelationOnArrow(b));
                }
                if !windows_by_branch[b].is_empty() {
                    return Err(BuildError::MixedBranchClass(b));
                }
                if c.is_zero() {
                    return Err(BuildError::ZeroCoefficient(ri, b));
                }
                in_linear[b] = true;
            }
        }

        // Canonical order: arrows, relation-free long branches, monomial
        // branches, branches in linear relations; input order within a class.
        let class = |i: usize| -> u8 {
            if spec.branch_lengths[i] == 1 {
                0
            } else if in_linear[i] {
                3
            } else if !windows_by_branch[i].is_empty() {
                2
            } else {
                1
            }
        };
        let mut branch_order: Vec<usize> = (0..nb).collect();
        branch_order.sort_by_key(|&i| (class(i), i));
        let mut canonical_of_input = vec![0usize; nb];
        for (pos, &inp) in branch_order.iter().enumerate() {
            canonical_of_input[inp] = pos;
        }

        let lengths: Vec<usize> = branch_order.iter().map(|&i| spec.branch_lengths[i]).collect();
        let windows: Vec<Vec<MonomialWindow>> = branch_order
            .iter()
            .map(|&i| {
                windows_by_branch[i]
                    .iter()
                    .map(|w| MonomialWindow {
                        branch: canonical_of_input[w.branch],
                        ..*w
                    })
                    .collect()
            })
            .collect();

        let a = (0..nb).filter(|&i| class(i) == 0).count();
        let l = (0..nb).filter(|&i| class(i) == 1).count();
        let m = (0..nb).filter(|&i| class(i) == 2).count();
        let n = (0..nb).filter(|&i| class(i) == 3).count();

        // Row-reduce the linear relations over the canonical branch columns.
        let linear_cols: Vec<usize> = (a + l + m..nb).collect();
        let col_of_branch: BTreeMap<usize, usize> = linear_cols
            .iter()
            .enumerate()
            .map(|(c, &b)| (b, c))
            .collect();
        let mut reduced_rows = Vec::new();
        let mut rank = 0usize;
        if !spec.linear_relations.is_empty() {
            let mut rows: Vec<Vec<Rat>> = Vec::new();
            for (ri, row) in spec.linear_relations.iter().enumerate() {
                let mut v = vec![Rat::zero(); linear_cols.len()];
                for (&b, c) in row {
                    v[col_of_branch[&canonical_of_input[b]]] = c.clone();
                }
                rows.push(v);
                // Incremental rank check pins the first dependent input row.
                let rk = RationalMatrix::from_rows(rows.clone()).rank();
                if rk != rows.len() {
                    return Err(BuildError::ZeroRow(ri));
                }
                rank = rk;
            }
            let (rref, pivots) = RationalMatrix::from_rows(rows).rref();
            for (row_idx, &pcol) in pivots.iter().enumerate() {
                let mut tail = Vec::new();
                for c in pcol + 1..linear_cols.len() {
                    let v = rref.get(row_idx, c);
                    if !v.is_zero() {
                        tail.push((linear_cols[c], v.clone()));
                    }
                }
                if tail.is_empty() {
                    return Err(BuildError::DegenerateRow);
                }
                reduced_rows.push(ReducedRow {
                    pivot: linear_cols[pcol],
                    tail,
                });
            }
        }

        let big_d = a + l + n - rank;
        let d = n - rank;
        let num_arrows: usize = lengths.iter().sum();
        let num_vertices = 2 + num_arrows - nb;

        let q_rho = build_q_rho(a, l, m, n, &reduced_rows);
        let r = q_rho.components.len();

        let invariants = Invariants {
            a,
            l,
            m,
            n,
            rank,
            big_d,
            r,
            d,
            num_vertices,
            num_arrows,
        };

        let mut alg = ToupieAlgebra {
            lengths,
            branch_order,
            windows,
            reduced_rows,
            invariants,
            q_rho,
            basis: Vec::new(),
            full_branch_basis: Vec::new(),
        };
        let (basis, full) = alg.enumerate_basis();
        alg.basis = basis;
        alg.full_branch_basis = full;
        debug_assert_eq!(alg.full_branch_basis.len(), alg.invariants.big_d);
        Ok(alg)
    }

    pub fn invariants(&self) -> &Invariants {
        &self.invariants
    }

    pub fn num_branches(&self) -> usize {
        self.lengths.len()
    }

    pub fn branch_length(&self, b: usize) -> usize {
        self.lengths[b]
    }

    /// Canonical position -> input index permutation.
    pub fn branch_order(&self) -> &[usize] {
        &self.branch_order
    }

    pub fn windows_on(&self, b: usize) -> &[MonomialWindow] {
        &self.windows[b]
    }

    pub fn all_windows(&self) -> impl Iterator<Item = &MonomialWindow> {
        self.windows.iter().flatten()
    }

    pub fn reduced_rows(&self) -> &[ReducedRow] {
        &self.reduced_rows
    }

    /// The reduced row with the given pivot branch, if any.
    pub fn row_with_pivot(&self, branch: usize) -> Option<&ReducedRow> {
        self.reduced_rows.iter().find(|r| r.pivot == branch)
    }

    pub fn is_pivot(&self, branch: usize) -> bool {
        self.row_with_pivot(branch).is_some()
    }

    pub fn q_rho(&self) -> &QRhoGraph {
        &self.q_rho
    }

    /// Branch class helpers in canonical numbering.
    pub fn is_arrow_branch(&self, b: usize) -> bool {
        b < self.invariants.a
    }

    pub fn is_monomial_branch(&self, b: usize) -> bool {
        let inv = &self.invariants;
        b >= inv.a + inv.l && b < inv.a + inv.l + inv.m
    }

    pub fn is_linear_branch(&self, b: usize) -> bool {
        b >= self.invariants.a + self.invariants.l + self.invariants.m
    }

    pub fn full_branch(&self, b: usize) -> Path {
        Path::Run {
            branch: b,
            start: 0,
            len: self.lengths[b],
        }
    }

    pub fn vertex_at(&self, branch: usize, position: usize) -> VertexId {
        if position == 0 {
            VertexId::Source
        } else if position == self.lengths[branch] {
            VertexId::Sink
        } else {
            VertexId::Inner { branch, position }
        }
    }

    pub fn source(&self, p: &Path) -> VertexId {
        match p {
            Path::Trivial(v) => *v,
            Path::Run { branch, start, .. } => self.vertex_at(*branch, *start),
        }
    }

    pub fn target(&self, p: &Path) -> VertexId {
        match p {
            Path::Trivial(v) => *v,
            Path::Run { branch, start, len } => self.vertex_at(*branch, start + len),
        }
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs = vec![VertexId::Source];
        for (b, &len) in self.lengths.iter().enumerate() {
            for position in 1..len {
                vs.push(VertexId::Inner { branch: b, position });
            }
        }
        vs.push(VertexId::Sink);
        vs
    }

    pub fn arrows(&self) -> Vec<Path> {
        let mut out = Vec::new();
        for (b, &len) in self.lengths.iter().enumerate() {
            for i in 0..len {
                out.push(Path::arrow(b, i));
            }
        }
        out
    }

    /// Whether the run contains a monomial window.
    pub fn run_contains_window(&self, branch: usize, start: usize, len: usize) -> bool {
        self.windows[branch]
            .iter()
            .any(|w| w.start >= start && w.end() <= start + len)
    }

    /// Expresses a path of the quiver in the basis of the algebra: zero if it
    /// meets a monomial relation, the relation tail if it is a pivot branch,
    /// itself otherwise.
    pub fn reduce_path(&self, p: &Path) -> Element {
        match p {
            Path::Trivial(_) => Element::from_path(*p),
            Path::Run { branch, start, len } => {
                if self.run_contains_window(*branch, *start, *len) {
                    return Element::zero();
                }
                if *start == 0 && *len == self.lengths[*branch] {
                    if let Some(row) = self.row_with_pivot(*branch) {
                        return row.replacement(self);
                    }
                }
                Element::from_path(*p)
            }
        }
    }

    /// Concatenation of two paths in the quiver, before reduction.
    pub fn compose_paths(&self, p: &Path, q: &Path) -> Option<Path> {
        if self.target(p) != self.source(q) {
            return None;
        }
        match (p, q) {
            (Path::Trivial(_), _) => Some(*q),
            (_, Path::Trivial(_)) => Some(*p),
            (
                Path::Run { branch, start, len },
                Path::Run { len: len2, .. },
            ) => Some(Path::Run {
                branch: *branch,
                start: *start,
                len: len + len2,
            }),
        }
    }

    /// Bilinear multiplication in the algebra, with full reduction.
    pub fn multiply(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::zero();
        for (p, cp) in x.terms() {
            for (q, cq) in y.terms() {
                if let Some(pq) = self.compose_paths(p, q) {
                    let reduced = self.reduce_path(&pq);
                    for (t, ct) in reduced.terms() {
                        out.add_term(*t, ct * cp * cq);
                    }
                }
            }
        }
        out
    }

    fn enumerate_basis(&self) -> (Vec<Path>, Vec<usize>) {
        let mut basis: Vec<Path> = self.vertices().into_iter().map(Path::Trivial).collect();
        let mut full = Vec::new();
        for (b, &len) in self.lengths.iter().enumerate() {
            for start in 0..len {
                for run_len in 1..=len - start {
                    let p = Path::Run {
                        branch: b,
                        start,
                        len: run_len,
                    };
                    let whole = start == 0 && run_len == len;
                    if self.run_contains_window(b, start, run_len) {
                        continue;
                    }
                    if whole && self.is_pivot(b) {
                        continue;
                    }
                    basis.push(p);
                    if whole {
                        full.push(b);
                    }
                }
            }
        }
        (basis, full)
    }

    /// The basis of irreducible paths, trivial paths included.
    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    /// Branches whose full run survives in the basis; their count is `D`.
    pub fn full_branch_basis(&self) -> &[usize] {
        &self.full_branch_basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Renders an element with 1-based branch labels, e.g. `a3 - 2*a4(1..3)`.
    pub fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (p, c)) in e.terms().enumerate() {
            out.push_str(&format_coeff_term(c, &self.format_path(p), i == 0));
        }
        out
    }

    pub fn format_path(&self, p: &Path) -> String {
        match p {
            Path::Trivial(VertexId::Source) => "e0".to_string(),
            Path::Trivial(VertexId::Sink) => "ew".to_string(),
            Path::Trivial(VertexId::Inner { branch, position }) => {
                format!("e{}_{}", branch + 1, position)
            }
            Path::Run { branch, start, len } => {
                if *start == 0 && *len == self.lengths[*branch] {
                    format!("a{}", branch + 1)
                } else {
                    format!("a{}({}..{})", branch + 1, start, start + len)
                }
            }
        }
    }
}

fn build_q_rho(a: usize, l: usize, m: usize, n: usize, rows: &[ReducedRow]) -> QRhoGraph {
    let vertices: Vec<usize> = (a..a + l).chain(a + l + m..a + l + m + n).collect();
    let index_of: BTreeMap<usize, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, i))
        .collect();

    let mut uf = UnionFind::new(vertices.len());
    for row in rows {
        let members: Vec<usize> = std::iter::once(row.pivot)
            .chain(row.tail.iter().map(|(b, _)| *b))
            .collect();
        for w in members.windows(2) {
            uf.union(index_of[&w[0]], index_of[&w[1]]);
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &b) in vertices.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(b);
    }
    let mut components: Vec<Vec<usize>> = groups.into_values().collect();
    components.sort_by_key(|c| c[0]);
    QRhoGraph {
        vertices,
        components,
    }
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut x = x;
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (mut xr, mut yr) = (self.find(x), self.find(y));
        if xr == yr {
            return;
        }
        if self.size[xr] < self.size[yr] {
            std::mem::swap(&mut xr, &mut yr);
        }
        self.parent[yr] = xr;
        self.size[xr] += self.size[yr];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use crate::samples;

    #[test]
    fn golden_invariants() {
        let alg = samples::golden_example();
        let inv = alg.invariants();
        assert_eq!(
            (inv.a, inv.l, inv.m, inv.n, inv.big_d, inv.r),
            (2, 1, 1, 2, 4, 2)
        );
        assert_eq!(inv.num_vertices, 12);
        assert_eq!(inv.num_arrows, 16);
        assert_eq!(inv.d, 1);
    }

    #[test]
    fn minimal_toupie() {
        let alg = samples::kronecker(1);
        let inv = alg.invariants();
        assert_eq!((inv.a, inv.l, inv.m, inv.n, inv.r, inv.big_d), (1, 0, 0, 0, 0, 1));
    }

    #[test]
    fn two_kronecker() {
        let alg = samples::kronecker(2);
        let inv = alg.invariants();
        assert_eq!((inv.a, inv.big_d, inv.m, inv.n, inv.l, inv.r), (2, 2, 0, 0, 0, 0));
        assert_eq!(alg.dim(), 4);
        assert_eq!(alg.full_branch_basis(), &[0, 1]);
    }

    #[test]
    fn golden_full_branch_basis() {
        let alg = samples::golden_example();
        // Branch 5 (index 4) is the pivot, branch 4 (index 3) dies on its windows.
        assert_eq!(alg.full_branch_basis(), &[0, 1, 2, 5]);
    }

    #[test]
    fn golden_pivot_rewrite() {
        let alg = samples::golden_example();
        // a5 = a5(0..1) * a5(1..2) rewrites to a6.
        let x = Element::from_path(Path::arrow(4, 0));
        let y = Element::from_path(Path::arrow(4, 1));
        let prod = alg.multiply(&x, &y);
        assert_eq!(prod, Element::from_path(alg.full_branch(5)));
    }

    #[test]
    fn golden_window_kills_product() {
        let alg = samples::golden_example();
        let x = Element::from_path(Path::Run { branch: 3, start: 0, len: 3 });
        let y = Element::from_path(Path::arrow(3, 3));
        assert!(alg.multiply(&x, &y).is_zero());
    }

    #[test]
    fn idempotent_unit_action() {
        let alg = samples::golden_example();
        for p in alg.basis() {
            let e_src = Element::from_path(Path::Trivial(alg.source(p)));
            let e_tgt = Element::from_path(Path::Trivial(alg.target(p)));
            let x = Element::from_path(*p);
            assert_eq!(alg.multiply(&e_src, &x), x);
            assert_eq!(alg.multiply(&x, &e_tgt), x);
        }
    }

    #[test]
    fn q_rho_components() {
        let alg = samples::golden_example();
        assert_eq!(alg.q_rho().components, vec![vec![2], vec![4, 5]]);

        let free = ToupieAlgebra::build(QuiverSpec {
            branch_lengths: vec![2],
            ..Default::default()
        })
        .unwrap();
        assert_eq!(free.q_rho().components, vec![vec![0]]);

        let arrows = samples::kronecker(3);
        assert!(arrows.q_rho().components.is_empty());
    }

    #[test]
    fn pivot_reduction_satisfies_relation() {
        let alg = samples::golden_example();
        for row in alg.reduced_rows() {
            // Multiply the pivot branch out arrow by arrow.
            let mut acc = Element::from_path(Path::Trivial(VertexId::Source));
            for i in 0..alg.branch_length(row.pivot) {
                acc = alg.multiply(&acc, &Element::from_path(Path::arrow(row.pivot, i)));
            }
            assert_eq!(acc, row.replacement(&alg));
            // Substituting back into the relation row gives zero.
            let mut total = acc;
            for (j, c) in &row.tail {
                total = total.add(&Element::from_path(alg.full_branch(*j)).scale(c));
            }
            assert!(total.is_zero());
        }
    }

    #[test]
    fn branch_order_respects_classes() {
        // Input deliberately scrambled: linear pair first, then an arrow,
        // then a monomial branch, then a free branch.
        let mut spec = QuiverSpec {
            branch_lengths: vec![2, 2, 1, 3, 4],
            ..Default::default()
        };
        spec.monomial_relations.push(MonomialWindow { branch: 3, start: 0, length: 2 });
        let mut row = BTreeMap::new();
        row.insert(0, rat(1));
        row.insert(1, rat(-1));
        spec.linear_relations.push(row);
        let alg = ToupieAlgebra::build(spec).unwrap();
        assert_eq!(alg.branch_order(), &[2, 4, 3, 0, 1]);
        let inv = alg.invariants();
        assert_eq!((inv.a, inv.l, inv.m, inv.n), (1, 1, 1, 2));
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            ToupieAlgebra::build(QuiverSpec::default()).unwrap_err(),
            BuildError::EmptyQuiver
        );

        let mut spec = QuiverSpec {
            branch_lengths: vec![1, 2],
            ..Default::default()
        };
        spec.monomial_relations.push(MonomialWindow { branch: 0, start: 0, length: 2 });
        assert_eq!(
            ToupieAlgebra::build(spec).unwrap_err(),
            BuildError::RelationOnArrow(0)
        );

        let mut spec = QuiverSpec {
            branch_lengths: vec![3],
            ..Default::default()
        };
        spec.monomial_relations.push(MonomialWindow { branch: 0, start: 2, length: 2 });
        assert!(matches!(
            ToupieAlgebra::build(spec).unwrap_err(),
            BuildError::WindowOutOfRange { .. }
        ));

        let mut spec = QuiverSpec {
            branch_lengths: vec![2, 2],
            ..Default::default()
        };
        spec.monomial_relations.push(MonomialWindow { branch: 0, start: 0, length: 2 });
        let mut row = BTreeMap::new();
        row.insert(0, rat(1));
        row.insert(1, rat(1));
        spec.linear_relations.push(row);
        assert_eq!(
            ToupieAlgebra::build(spec).unwrap_err(),
            BuildError::MixedBranchClass(0)
        );

        // Dependent rows reduce to zero.
        let mut spec = QuiverSpec {
            branch_lengths: vec![2, 2],
            ..Default::default()
        };
        for scale in [1i64, 2] {
            let mut row = BTreeMap::new();
            row.insert(0, rat(scale));
            row.insert(1, rat(-scale));
            spec.linear_relations.push(row);
        }
        assert_eq!(
            ToupieAlgebra::build(spec).unwrap_err(),
            BuildError::ZeroRow(1)
        );

        // Independent rows that force a single-branch relation.
        let mut spec = QuiverSpec {
            branch_lengths: vec![2, 2],
            ..Default::default()
        };
        for (c0, c1) in [(1i64, 1i64), (1, 2)] {
            let mut row = BTreeMap::new();
            row.insert(0, rat(c0));
            row.insert(1, rat(c1));
            spec.linear_relations.push(row);
        }
        assert_eq!(
            ToupieAlgebra::build(spec).unwrap_err(),
            BuildError::DegenerateRow
        );

        let mut spec = QuiverSpec {
            branch_lengths: vec![4],
            ..Default::default()
        };
        spec.monomial_relations.push(MonomialWindow { branch: 0, start: 0, length: 3 });
        spec.monomial_relations.push(MonomialWindow { branch: 0, start: 1, length: 2 });
        assert_eq!(
            ToupieAlgebra::build(spec).unwrap_err(),
            BuildError::NestedWindows(0)
        );
    }

    #[test]
    fn whole_branch_window_empties_full_basis() {
        let mut spec = QuiverSpec {
            branch_lengths: vec![2],
            ..Default::default()
        };
        spec.monomial_relations.push(MonomialWindow { branch: 0, start: 0, length: 2 });
        let alg = ToupieAlgebra::build(spec).unwrap();
        assert!(alg.full_branch_basis().is_empty());
        assert_eq!(alg.invariants().big_d, 0);
    }

    #[test]
    fn big_d_counts_full_branches() {
        for alg in samples::all() {
            assert_eq!(alg.full_branch_basis().len(), alg.invariants().big_d);
            let inv = alg.invariants();
            assert_eq!(inv.big_d, inv.a + inv.l + inv.n - inv.rank);
        }
    }
}
