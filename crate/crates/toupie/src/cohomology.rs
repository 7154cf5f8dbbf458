//! The cochain complex of the minimal resolution and the labeled bases of
//! every cohomology space.
//!
//! Degrees 0 and 1 carry the only nonzero differentials. The degree-1 basis
//! of the first cohomology space is produced by the constructive procedure
//! (the sets `C1..C4`, modified to contain a basis of the image of `D0`);
//! degree 2 comes from the `B1`/`B2` normalization of the image of `D1`; all
//! higher degrees are plain product bases over ambiguities. Every
//! constructive step is cross-checked against exact rank computations and a
//! disagreement is a hard error.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{MonomialWindow, Path, ToupieAlgebra, VertexId};
use crate::ambiguity::{max_ambiguity_degree, n_ambiguities, Ambiguity};
use crate::matrix::{same_span, RationalMatrix};
use crate::rat::Rat;

/// Generator side of a cochain basis element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    Vertex(VertexId),
    Arrow(Path),
    Relation(Gen2),
    Ambig(Ambiguity),
}

/// A degree-2 generator: a reduced linear relation or a monomial relation
/// running from source to sink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Gen2 {
    Linear(usize),
    Monomial(MonomialWindow),
}

/// One basis cochain `w || g`: the map sending the generator `w` to the path
/// `g` (sharing both endpoints) and every other generator to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CochainBasisElement {
    pub generator: Generator,
    pub value: Path,
}

#[derive(Debug, Clone)]
pub struct CochainSpace {
    pub degree: usize,
    pub basis: Vec<CochainBasisElement>,
    index: BTreeMap<CochainBasisElement, usize>,
}

impl CochainSpace {
    fn new(degree: usize, basis: Vec<CochainBasisElement>) -> CochainSpace {
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        CochainSpace {
            degree,
            basis,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, el: &CochainBasisElement) -> Option<usize> {
        self.index.get(el).copied()
    }
}

/// Labels of cohomology classes, following the degree-1 naming `y, w, x, z, t`
/// and the `generator || branch` form in degree two and beyond. Branch and
/// component indices are stored 0-based and displayed 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    Unit,
    Y { branch: usize },
    W { p: usize, q: usize },
    X { j: usize },
    Z { u: usize, s: usize },
    T { component: usize },
    Deg2 { gen: Gen2, value: usize },
    HiDeg { amb: Ambiguity, value: usize },
}

impl Label {
    pub fn display(&self) -> String {
        fn idx2(a: usize, b: usize) -> String {
            let (a, b) = (a + 1, b + 1);
            if a < 10 && b < 10 {
                format!("{a}{b}")
            } else {
                format!("{a}_{b}")
            }
        }
        match self {
            Label::Unit => "unit".to_string(),
            Label::Y { branch } => format!("y{}", branch + 1),
            Label::W { p, q } => format!("w{}", idx2(*p, *q)),
            Label::X { j } => format!("x{}", j + 1),
            Label::Z { u, s } => format!("z{}", idx2(*u, *s)),
            Label::T { component } => format!("t{}", component + 1),
            Label::Deg2 { gen, value } => format!("{}||a{}", gen2_name(gen), value + 1),
            Label::HiDeg { amb, value } => format!(
                "amb({},{},{})||a{}",
                amb.branch + 1,
                amb.start,
                amb.end,
                value + 1
            ),
        }
    }
}

pub fn gen2_name(gen: &Gen2) -> String {
    match gen {
        Gen2::Linear(i) => format!("rho{}", i + 1),
        Gen2::Monomial(w) => format!("sigma({},{},{})", w.branch + 1, w.start, w.end()),
    }
}

/// A cohomology class in coordinates over the labeled basis of its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub coords: Vec<Rat>,
}

impl CohomologyClass {
    pub fn zero(degree: usize, dim: usize) -> CohomologyClass {
        CohomologyClass {
            degree,
            coords: vec![Rat::zero(); dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn add_scaled(&mut self, other: &CohomologyClass, c: &Rat) {
        assert_eq!(self.degree, other.degree);
        for (a, b) in self.coords.iter_mut().zip(&other.coords) {
            *a += b * c;
        }
    }
}

/// A basis class: its label plus a cochain representative.
#[derive(Debug, Clone)]
pub struct HhClass {
    pub label: Label,
    pub cochain: Vec<Rat>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("constructive basis disagrees with rank computation: {0}")]
    BasisMismatch(&'static str),
    #[error("projection failed: vector outside the expected span ({0})")]
    ProjectionFailed(&'static str),
}

/// All cohomological data of one algebra: cochain spaces, differentials,
/// labeled bases, and the solvers used to reduce cocycles to basis
/// coordinates.
pub struct Cohomology<'a> {
    alg: &'a ToupieAlgebra,
    /// Largest degree with possibly nonzero cohomology; everything above
    /// vanishes because the ambiguity sets are empty.
    vanishes_above: usize,
    spaces: Vec<CochainSpace>,
    d0: RationalMatrix,
    d1: RationalMatrix,
    hh: Vec<Vec<HhClass>>,
    /// Columns: degree-1 basis representatives then a basis of Im D0.
    proj1: RationalMatrix,
    /// Columns: degree-2 basis representatives then B1 and B2''.
    proj2: RationalMatrix,
    im_d1_basis: Vec<Vec<Rat>>,
}

impl<'a> Cohomology<'a> {
    pub fn new(alg: &'a ToupieAlgebra) -> Result<Cohomology<'a>, StructureError> {
        let vanishes_above = max_ambiguity_degree(alg);
        let mut spaces = Vec::new();
        for degree in 0..=vanishes_above + 1 {
            spaces.push(build_space(alg, degree));
        }

        let d0 = differential0(alg, &spaces[0], &spaces[1]);
        let d1 = differential1(alg, &spaces[1], &spaces[2]);
        if !d1.mul_mat(&d0).is_zero() {
            return Err(StructureError::BasisMismatch("D1 * D0 != 0"));
        }

        let inv = alg.invariants();
        let nq0 = inv.num_vertices;
        let da = inv.big_d * inv.a;

        // Rank side.
        let rank_d0 = d0.rank();
        let rank_d1 = d1.rank();
        let dim_ker_d1 = spaces[1].dim() - rank_d1;
        if rank_d0 != nq0 - 1 {
            return Err(StructureError::BasisMismatch("dim Im D0 != #Q0 - 1"));
        }
        if dim_ker_d1 != inv.r + inv.m + da + nq0 - 2 {
            return Err(StructureError::BasisMismatch(
                "dim Ker D1 != r + m + D*a + #Q0 - 2",
            ));
        }
        if rank_d1 != inv.l + inv.n - inv.r {
            return Err(StructureError::BasisMismatch("dim Im D1 != l + n - r"));
        }

        // Constructive side.
        let (hh1, k_basis, u_set, u_hat) = build_hh1(alg, &spaces[1]);
        if hh1.len() != inv.r + inv.m + da - 1 {
            return Err(StructureError::BasisMismatch("#HH1 basis != r + m + D*a - 1"));
        }
        for v in &u_set {
            if !d1.mul_vec(v).iter().all(Rat::is_zero) {
                return Err(StructureError::BasisMismatch("U is not inside Ker D1"));
            }
        }
        if !same_span(&u_set, &u_hat) {
            return Err(StructureError::BasisMismatch("span(U) != span(U-hat)"));
        }
        let im_d0_cols = d0_image_columns(&d0);
        if !same_span(&k_basis, &im_d0_cols) {
            return Err(StructureError::BasisMismatch("span(K) != Im D0"));
        }
        // Basis classes are independent modulo Im D0.
        {
            let mut stacked: Vec<Vec<Rat>> = hh1.iter().map(|c| c.cochain.clone()).collect();
            stacked.extend(im_d0_cols.iter().cloned());
            if crate::matrix::span_rank(&stacked) != hh1.len() + rank_d0 {
                return Err(StructureError::BasisMismatch(
                    "HH1 classes dependent modulo Im D0",
                ));
            }
        }
        let proj1 = RationalMatrix::from_cols(
            &hh1.iter()
                .map(|c| c.cochain.clone())
                .chain(k_basis.iter().cloned())
                .collect::<Vec<_>>(),
        );

        let (hh2, im_d1_basis) = build_hh2(alg, &spaces[2])?;
        for v in &im_d1_basis {
            if !d1.contains_in_image(v) {
                return Err(StructureError::BasisMismatch(
                    "B1 or B2'' element outside Im D1",
                ));
            }
        }
        if im_d1_basis.len() != rank_d1 {
            return Err(StructureError::BasisMismatch("#B1 + #B2'' != rank D1"));
        }
        if hh2.len() != spaces[2].dim() - rank_d1 {
            return Err(StructureError::BasisMismatch("#HH2 basis != dim - rank"));
        }
        let proj2 = RationalMatrix::from_cols(
            &hh2.iter()
                .map(|c| c.cochain.clone())
                .chain(im_d1_basis.iter().cloned())
                .collect::<Vec<_>>(),
        );

        let mut hh = vec![hh0(&spaces[0]), hh1, hh2];
        for degree in 3..=vanishes_above + 1 {
            hh.push(build_hhi(&spaces[degree]));
        }

        Ok(Cohomology {
            alg,
            vanishes_above,
            spaces,
            d0,
            d1,
            hh,
            proj1,
            proj2,
            im_d1_basis,
        })
    }

    pub fn algebra(&self) -> &ToupieAlgebra {
        self.alg
    }

    /// Largest degree with possibly nonzero cohomology.
    pub fn vanishes_above(&self) -> usize {
        self.vanishes_above
    }

    pub fn space(&self, degree: usize) -> Option<&CochainSpace> {
        self.spaces.get(degree)
    }

    /// The matrix of the differential leaving the given degree; zero in
    /// degrees 2 and beyond.
    pub fn differential_matrix(&self, degree: usize) -> RationalMatrix {
        match degree {
            0 => self.d0.clone(),
            1 => self.d1.clone(),
            _ => {
                let rows = self
                    .spaces
                    .get(degree + 1)
                    .map_or(0, CochainSpace::dim);
                let cols = self.spaces.get(degree).map_or(0, CochainSpace::dim);
                RationalMatrix::zero(rows, cols)
            }
        }
    }

    pub fn hh_basis(&self, degree: usize) -> &[HhClass] {
        static EMPTY: Vec<HhClass> = Vec::new();
        self.hh.get(degree).unwrap_or(&EMPTY)
    }

    pub fn hh_dimension(&self, degree: usize) -> usize {
        self.hh_basis(degree).len()
    }

    pub fn label_index(&self, degree: usize, label: &Label) -> Option<usize> {
        self.hh_basis(degree)
            .iter()
            .position(|c| c.label == *label)
    }

    /// Reduces a degree-1 cocycle to coordinates over the labeled basis.
    pub fn project_deg1(&self, cochain: &[Rat]) -> Result<Vec<Rat>, StructureError> {
        if !self.d1.mul_vec(cochain).iter().all(Rat::is_zero) {
            return Err(StructureError::ProjectionFailed("not a degree-1 cocycle"));
        }
        let x = self
            .proj1
            .solve(cochain)
            .ok_or(StructureError::ProjectionFailed("degree 1"))?;
        Ok(x[..self.hh_dimension(1)].to_vec())
    }

    /// Reduces a degree-2 cochain (everything is a cocycle there) to basis
    /// coordinates modulo Im D1.
    pub fn project_deg2(&self, cochain: &[Rat]) -> Result<Vec<Rat>, StructureError> {
        let x = self
            .proj2
            .solve(cochain)
            .ok_or(StructureError::ProjectionFailed("degree 2"))?;
        Ok(x[..self.hh_dimension(2)].to_vec())
    }

    /// Coordinates of a degree-n cochain as a class; for n >= 3 the basis is
    /// the full cochain basis.
    pub fn class_from_cochain(
        &self,
        degree: usize,
        cochain: &[Rat],
    ) -> Result<CohomologyClass, StructureError> {
        let coords = match degree {
            1 => self.project_deg1(cochain)?,
            2 => self.project_deg2(cochain)?,
            _ if degree >= 3 => cochain.to_vec(),
            _ => return Err(StructureError::ProjectionFailed("degree 0 unsupported")),
        };
        Ok(CohomologyClass { degree, coords })
    }

    pub fn im_d1_basis(&self) -> &[Vec<Rat>] {
        &self.im_d1_basis
    }

    pub fn format_class(&self, class: &CohomologyClass) -> String {
        let basis = self.hh_basis(class.degree);
        if class.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let mut first = true;
        for (c, b) in class.coords.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            out.push_str(&crate::rat::format_coeff_term(c, &b.label.display(), first));
            first = false;
        }
        out
    }
}

fn build_space(alg: &ToupieAlgebra, degree: usize) -> CochainSpace {
    let mut basis = Vec::new();
    match degree {
        0 => {
            for v in alg.vertices() {
                basis.push(CochainBasisElement {
                    generator: Generator::Vertex(v),
                    value: Path::Trivial(v),
                });
            }
        }
        1 => {
            // All diagonal arrow cochains, then source-to-sink arrows valued
            // at the other irreducible branches.
            for arrow in alg.arrows() {
                basis.push(CochainBasisElement {
                    generator: Generator::Arrow(arrow),
                    value: arrow,
                });
            }
            for u in 0..alg.invariants().a {
                for &c in alg.full_branch_basis() {
                    if c == u {
                        continue;
                    }
                    basis.push(CochainBasisElement {
                        generator: Generator::Arrow(Path::arrow(u, 0)),
                        value: alg.full_branch(c),
                    });
                }
            }
        }
        2 => {
            for (i, _) in alg.reduced_rows().iter().enumerate() {
                for &c in alg.full_branch_basis() {
                    basis.push(CochainBasisElement {
                        generator: Generator::Relation(Gen2::Linear(i)),
                        value: alg.full_branch(c),
                    });
                }
            }
            for w in alg.all_windows() {
                if w.start == 0 && w.end() == alg.branch_length(w.branch) {
                    for &c in alg.full_branch_basis() {
                        basis.push(CochainBasisElement {
                            generator: Generator::Relation(Gen2::Monomial(*w)),
                            value: alg.full_branch(c),
                        });
                    }
                }
            }
        }
        _ => {
            for amb in n_ambiguities(alg, degree - 1) {
                if amb.spans_whole_branch(alg) {
                    for &c in alg.full_branch_basis() {
                        basis.push(CochainBasisElement {
                            generator: Generator::Ambig(amb),
                            value: alg.full_branch(c),
                        });
                    }
                }
            }
        }
    }
    CochainSpace::new(degree, basis)
}

fn differential0(
    alg: &ToupieAlgebra,
    deg0: &CochainSpace,
    deg1: &CochainSpace,
) -> RationalMatrix {
    let mut m = RationalMatrix::zero(deg1.dim(), deg0.dim());
    for (col, el) in deg0.basis.iter().enumerate() {
        let Generator::Vertex(v) = el.generator else {
            unreachable!()
        };
        for arrow in alg.arrows() {
            let diag = CochainBasisElement {
                generator: Generator::Arrow(arrow),
                value: arrow,
            };
            let row = deg1.index_of(&diag).expect("diagonal slot");
            if alg.target(&arrow) == v {
                let cur = m.get(row, col).clone();
                m.set(row, col, cur + Rat::one());
            }
            if alg.source(&arrow) == v {
                let cur = m.get(row, col).clone();
                m.set(row, col, cur - Rat::one());
            }
        }
    }
    m
}

fn differential1(
    alg: &ToupieAlgebra,
    deg1: &CochainSpace,
    deg2: &CochainSpace,
) -> RationalMatrix {
    let mut m = RationalMatrix::zero(deg2.dim(), deg1.dim());
    for (col, el) in deg1.basis.iter().enumerate() {
        let Generator::Arrow(arrow) = el.generator else {
            unreachable!()
        };
        if el.value != arrow {
            continue; // source-to-sink arrows valued elsewhere map to zero
        }
        let Path::Run { branch, .. } = arrow else {
            unreachable!()
        };
        // Substituting the arrow into each relation containing its branch;
        // values are reduced inside the algebra, so a pivot branch turns
        // into its relation tail.
        for (i, row_rel) in alg.reduced_rows().iter().enumerate() {
            if row_rel.pivot == branch {
                for (j, b) in &row_rel.tail {
                    let slot = CochainBasisElement {
                        generator: Generator::Relation(Gen2::Linear(i)),
                        value: alg.full_branch(*j),
                    };
                    let row = deg2.index_of(&slot).expect("relation slot");
                    let cur = m.get(row, col).clone();
                    m.set(row, col, cur - b);
                }
            } else if let Some((_, b)) = row_rel.tail.iter().find(|(j, _)| *j == branch) {
                let slot = CochainBasisElement {
                    generator: Generator::Relation(Gen2::Linear(i)),
                    value: alg.full_branch(branch),
                };
                let row = deg2.index_of(&slot).expect("relation slot");
                let cur = m.get(row, col).clone();
                m.set(row, col, cur + b);
            }
        }
    }
    m
}

fn d0_image_columns(d0: &RationalMatrix) -> Vec<Vec<Rat>> {
    d0.image_basis()
}

fn hh0(deg0: &CochainSpace) -> Vec<HhClass> {
    vec![HhClass {
        label: Label::Unit,
        cochain: vec![Rat::one(); deg0.dim()],
    }]
}

fn unit_vec(dim: usize, idx: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[idx] = Rat::one();
    v
}

fn diag_slot(deg1: &CochainSpace, branch: usize, index: usize) -> usize {
    let arrow = Path::arrow(branch, index);
    deg1.index_of(&CochainBasisElement {
        generator: Generator::Arrow(arrow),
        value: arrow,
    })
    .expect("diagonal slot")
}

fn z_slot(alg: &ToupieAlgebra, deg1: &CochainSpace, u: usize, value_branch: usize) -> usize {
    deg1.index_of(&CochainBasisElement {
        generator: Generator::Arrow(Path::arrow(u, 0)),
        value: alg.full_branch(value_branch),
    })
    .expect("source-to-sink slot")
}

/// Builds the labeled degree-1 basis plus the basis `K` of Im D0 and the raw
/// sets `U`, `U-hat` for the span cross-checks. Returns
/// `(basis, K, U, U_hat)`.
fn build_hh1(
    alg: &ToupieAlgebra,
    deg1: &CochainSpace,
) -> (Vec<HhClass>, Vec<Vec<Rat>>, Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let inv = alg.invariants();
    let dim = deg1.dim();
    let a = inv.a;
    let nb = alg.num_branches();

    let diag = |branch: usize, index: usize| unit_vec(dim, diag_slot(deg1, branch, index));

    // s: the sum of the leading arrows of every branch.
    let mut s_vec = vec![Rat::zero(); dim];
    for b in 0..nb {
        let sl = diag_slot(deg1, b, 0);
        s_vec[sl] += Rat::one();
    }

    // C1: diagonal arrow cochains on monomial branches. C3: differences on
    // the remaining long branches. C4: component sums.
    let mut c1_prime = Vec::new();
    let mut c1_second: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut c3 = Vec::new();
    for b in 0..nb {
        if alg.branch_length(b) < 2 {
            continue;
        }
        if alg.is_monomial_branch(b) {
            c1_second.push((b, diag(b, 0)));
            for j in 1..alg.branch_length(b) {
                let mut v = diag(b, j);
                let head = diag_slot(deg1, b, 0);
                v[head] -= Rat::one();
                c1_prime.push(v);
            }
        } else {
            for j in 1..alg.branch_length(b) {
                let mut v = diag(b, j);
                let head = diag_slot(deg1, b, 0);
                v[head] -= Rat::one();
                c3.push(v);
            }
        }
    }
    let mut c4: Vec<(usize, Vec<Rat>)> = Vec::new();
    for (k, comp) in alg.q_rho().components.iter().enumerate() {
        let mut v = vec![Rat::zero(); dim];
        for &b in comp {
            v[diag_slot(deg1, b, 0)] += Rat::one();
        }
        c4.push((k, v));
    }

    // U = C1 u C2 u C3 u C4 (raw kernel basis, used for the span check).
    let mut u_set: Vec<Vec<Rat>> = Vec::new();
    for b in 0..nb {
        if alg.is_monomial_branch(b) {
            for j in 0..alg.branch_length(b) {
                u_set.push(diag(b, j));
            }
        }
    }
    for u in 0..a {
        for &c in alg.full_branch_basis() {
            if c == u {
                u_set.push(diag(u, 0));
            } else {
                u_set.push(unit_vec(dim, z_slot(alg, deg1, u, c)));
            }
        }
    }
    u_set.extend(c3.iter().cloned());
    u_set.extend(c4.iter().map(|(_, v)| v.clone()));

    let mut basis: Vec<HhClass> = Vec::new();
    let mut k_basis: Vec<Vec<Rat>> = vec![s_vec.clone()];
    k_basis.extend(c1_prime.iter().cloned());
    k_basis.extend(c3.iter().cloned());

    if a > 0 {
        for (b, v) in &c1_second {
            basis.push(HhClass {
                label: Label::Y { branch: *b },
                cochain: v.clone(),
            });
        }
        for p in 0..a {
            for q in 0..a {
                if p != q {
                    basis.push(HhClass {
                        label: Label::W { p, q },
                        cochain: unit_vec(dim, z_slot(alg, deg1, p, q)),
                    });
                }
            }
        }
        for j in 1..a {
            let mut v = diag(j, 0);
            v[diag_slot(deg1, 0, 0)] -= Rat::one();
            basis.push(HhClass {
                label: Label::X { j },
                cochain: v,
            });
        }
        let long_values: Vec<usize> = alg
            .full_branch_basis()
            .iter()
            .copied()
            .filter(|&c| c >= a)
            .collect();
        for &sbr in &long_values {
            for u in 0..a {
                basis.push(HhClass {
                    label: Label::Z { u, s: sbr },
                    cochain: unit_vec(dim, z_slot(alg, deg1, u, sbr)),
                });
            }
        }
        for (k, v) in &c4 {
            basis.push(HhClass {
                label: Label::T { component: *k },
                cochain: v.clone(),
            });
        }
    } else {
        // No source-to-sink arrows: replace the element containing the
        // leading arrow of the last branch by s (that element moves into K).
        let last = nb - 1;
        for (b, v) in &c1_second {
            if *b == last {
                continue;
            }
            basis.push(HhClass {
                label: Label::Y { branch: *b },
                cochain: v.clone(),
            });
        }
        for (k, v) in &c4 {
            if alg.q_rho().components[*k].contains(&last) {
                continue;
            }
            basis.push(HhClass {
                label: Label::T { component: *k },
                cochain: v.clone(),
            });
        }
    }

    // U-hat = basis u K, by construction.
    let mut u_hat: Vec<Vec<Rat>> = basis.iter().map(|c| c.cochain.clone()).collect();
    u_hat.extend(k_basis.iter().cloned());

    (basis, k_basis, u_set, u_hat)
}

/// Builds the degree-2 labeled basis together with the `B1 u B2''` basis of
/// Im D1.
fn build_hh2(
    alg: &ToupieAlgebra,
    deg2: &CochainSpace,
) -> Result<(Vec<HhClass>, Vec<Vec<Rat>>), StructureError> {
    let dim = deg2.dim();
    let rows = alg.reduced_rows();

    let slot = |gen: Gen2, value: usize| -> usize {
        deg2.index_of(&CochainBasisElement {
            generator: Generator::Relation(gen),
            value: alg.full_branch(value),
        })
        .expect("degree-2 slot")
    };

    // Last relation of each component: the one with the largest pivot.
    let mut last_rows = vec![false; rows.len()];
    for comp in &alg.q_rho().components {
        let best = (0..rows.len())
            .filter(|&i| comp.contains(&rows[i].pivot))
            .max_by_key(|&i| rows[i].pivot);
        if let Some(i) = best {
            last_rows[i] = true;
        }
    }

    // B1: rho_i || f_i for every non-last relation.
    let f_vec = |i: usize| -> Vec<Rat> {
        let mut v = vec![Rat::zero(); dim];
        for (j, b) in &rows[i].tail {
            v[slot(Gen2::Linear(i), *j)] -= b;
        }
        v
    };
    let b1: Vec<(usize, Vec<Rat>)> = (0..rows.len())
        .filter(|&i| !last_rows[i])
        .map(|i| (i, f_vec(i)))
        .collect();

    // B2: one column sum per tail branch.
    let mut tail_branches: Vec<usize> = rows
        .iter()
        .flat_map(|r| r.tail.iter().map(|(j, _)| *j))
        .collect();
    tail_branches.sort_unstable();
    tail_branches.dedup();

    let min_tail = |i: usize| rows[i].tail.first().map(|(j, _)| *j);

    let mut b2_prime: Vec<Vec<Rat>> = Vec::new();
    for &h in &tail_branches {
        let mut v = vec![Rat::zero(); dim];
        for (i, row) in rows.iter().enumerate() {
            if let Some((_, b)) = row.tail.iter().find(|(j, _)| *j == h) {
                v[slot(Gen2::Linear(i), h)] += b;
            }
        }
        // Cancel the summand sitting on the first tail branch of a non-last
        // relation against the matching B1 element.
        for (i, _) in rows.iter().enumerate() {
            if last_rows[i] || min_tail(i) != Some(h) {
                continue;
            }
            let fv = f_vec(i);
            let pos = slot(Gen2::Linear(i), h);
            if v[pos].is_zero() {
                continue;
            }
            let factor = &v[pos] / &fv[pos];
            for (x, y) in v.iter_mut().zip(&fv) {
                *x -= &factor * y;
            }
        }
        b2_prime.push(v);
    }

    // B2'': echelon normalization of B2' in the cochain coordinate order.
    let b2_second: Vec<Vec<Rat>> = if b2_prime.is_empty() {
        Vec::new()
    } else {
        let (rref, pivots) = RationalMatrix::from_rows(b2_prime.clone()).rref();
        if pivots.len() != b2_prime.len() {
            return Err(StructureError::BasisMismatch("B2 rows are dependent"));
        }
        (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect()
    };

    // N': replace the first-tail slot of every non-last relation by its B1
    // element, then the pivot slot of every B2'' row.
    let mut replaced: BTreeMap<usize, Vec<Rat>> = BTreeMap::new();
    for (i, v) in &b1 {
        let target = slot(Gen2::Linear(*i), min_tail(*i).expect("tail"));
        let old = replaced.insert(target, v.clone());
        assert!(old.is_none(), "step-1 replacement collision");
    }
    for v in &b2_second {
        let pivot = v.iter().position(|c| !c.is_zero()).expect("nonzero row");
        let old = replaced.insert(pivot, v.clone());
        assert!(old.is_none(), "step-2 replacement collision");
    }

    let mut basis = Vec::new();
    for (idx, el) in deg2.basis.iter().enumerate() {
        if replaced.contains_key(&idx) {
            continue;
        }
        let Generator::Relation(gen) = el.generator else {
            unreachable!()
        };
        let Path::Run { branch, .. } = el.value else {
            unreachable!()
        };
        basis.push(HhClass {
            label: Label::Deg2 { gen, value: branch },
            cochain: unit_vec(dim, idx),
        });
    }
    let im_basis: Vec<Vec<Rat>> = b1
        .into_iter()
        .map(|(_, v)| v)
        .chain(b2_second)
        .collect();
    Ok((basis, im_basis))
}

fn build_hhi(space: &CochainSpace) -> Vec<HhClass> {
    space
        .basis
        .iter()
        .enumerate()
        .map(|(idx, el)| {
            let Generator::Ambig(amb) = el.generator else {
                unreachable!()
            };
            let Path::Run { branch, .. } = el.value else {
                unreachable!()
            };
            HhClass {
                label: Label::HiDeg { amb, value: branch },
                cochain: unit_vec(space.dim(), idx),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn labels(basis: &[HhClass]) -> Vec<String> {
        basis.iter().map(|c| c.label.display()).collect()
    }

    #[test]
    fn golden_dimensions() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let dims: Vec<usize> = (0..=5).map(|i| coh.hh_dimension(i)).collect();
        assert_eq!(dims, vec![1, 10, 3, 0, 4, 0]);
        assert_eq!(coh.vanishes_above(), 4);
    }

    #[test]
    fn golden_hh1_labels() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        assert_eq!(
            labels(coh.hh_basis(1)),
            vec!["y4", "w12", "w21", "x2", "z13", "z23", "z16", "z26", "t1", "t2"]
        );
    }

    #[test]
    fn golden_hh2_and_hh4_labels() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        assert_eq!(
            labels(coh.hh_basis(2)),
            vec!["rho1||a1", "rho1||a2", "rho1||a3"]
        );
        assert_eq!(
            labels(coh.hh_basis(4)),
            vec![
                "amb(4,0,8)||a1",
                "amb(4,0,8)||a2",
                "amb(4,0,8)||a3",
                "amb(4,0,8)||a6"
            ]
        );
    }

    #[test]
    fn kronecker_dimensions() {
        for a in 1..=4 {
            let alg = samples::kronecker(a);
            let coh = Cohomology::new(&alg).unwrap();
            assert_eq!(coh.hh_dimension(0), 1);
            assert_eq!(coh.hh_dimension(1), a * a - 1);
            for i in 2..6 {
                assert_eq!(coh.hh_dimension(i), 0);
            }
        }
    }

    #[test]
    fn two_kronecker_hh1_labels() {
        let alg = samples::kronecker(2);
        let coh = Cohomology::new(&alg).unwrap();
        assert_eq!(labels(coh.hh_basis(1)), vec!["w12", "w21", "x2"]);
    }

    #[test]
    fn lone_long_branch_has_trivial_hh1() {
        let alg = crate::algebra::ToupieAlgebra::build(crate::algebra::QuiverSpec {
            branch_lengths: vec![2],
            ..Default::default()
        })
        .unwrap();
        let coh = Cohomology::new(&alg).unwrap();
        assert_eq!(coh.hh_dimension(1), 0);
    }

    #[test]
    fn commutative_square_dimensions() {
        let alg = samples::commutative_square();
        let coh = Cohomology::new(&alg).unwrap();
        for i in 1..5 {
            assert_eq!(coh.hh_dimension(i), 0, "degree {i}");
        }
    }

    #[test]
    fn dead_branch_keeps_monomial_class() {
        let alg = samples::arrow_and_dead_branch();
        let coh = Cohomology::new(&alg).unwrap();
        assert_eq!(coh.hh_dimension(1), 1);
        assert_eq!(labels(coh.hh_basis(1)), vec!["y2"]);
        assert_eq!(coh.hh_dimension(2), 1);
        assert_eq!(labels(coh.hh_basis(2)), vec!["sigma(2,0,2)||a1"]);
    }

    #[test]
    fn differentials_compose_to_zero() {
        for alg in samples::all() {
            let coh = Cohomology::new(&alg).unwrap();
            assert!(coh
                .differential_matrix(1)
                .mul_mat(&coh.differential_matrix(0))
                .is_zero());
        }
    }

    #[test]
    fn dimension_formulas_on_samples() {
        for alg in samples::all() {
            let coh = Cohomology::new(&alg).unwrap();
            let inv = alg.invariants();
            let da = inv.big_d * inv.a;
            assert_eq!(coh.hh_dimension(0), 1);
            assert_eq!(coh.hh_dimension(1), inv.r + inv.m + da - 1);
            let d0 = coh.differential_matrix(0);
            let d1 = coh.differential_matrix(1);
            assert_eq!(d0.rank(), inv.num_vertices - 1);
            assert_eq!(
                coh.space(1).unwrap().dim() - d1.rank(),
                inv.r + inv.m + da + inv.num_vertices - 2
            );
            assert_eq!(d1.rank(), inv.l + inv.n - inv.r);
            for i in 3..=coh.vanishes_above() + 1 {
                let full = n_ambiguities(&alg, i - 1)
                    .iter()
                    .filter(|amb| amb.spans_whole_branch(&alg))
                    .count();
                assert_eq!(coh.hh_dimension(i), full * inv.big_d);
            }
        }
    }

    #[test]
    fn d0_column_for_inner_vertex() {
        let alg = samples::arrow_and_free_branch();
        let coh = Cohomology::new(&alg).unwrap();
        let d0 = coh.differential_matrix(0);
        let deg0 = coh.space(0).unwrap();
        let deg1 = coh.space(1).unwrap();
        let v = VertexId::Inner { branch: 1, position: 1 };
        let col_idx = deg0
            .index_of(&CochainBasisElement {
                generator: Generator::Vertex(v),
                value: Path::Trivial(v),
            })
            .unwrap();
        let col = d0.col(col_idx);
        let in_slot = diag_slot(deg1, 1, 0);
        let out_slot = diag_slot(deg1, 1, 1);
        for (i, c) in col.iter().enumerate() {
            if i == in_slot {
                assert!(c.is_one());
            } else if i == out_slot {
                assert!((-c.clone()).is_one());
            } else {
                assert!(c.is_zero());
            }
        }
    }

    #[test]
    fn d1_pivot_column_carries_relation_tail() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let d1 = coh.differential_matrix(1);
        let deg1 = coh.space(1).unwrap();
        let deg2 = coh.space(2).unwrap();
        // Leading arrow of the pivot branch (branch 5, index 4).
        let col = d1.col(diag_slot(deg1, 4, 0));
        let tail_slot = deg2
            .index_of(&CochainBasisElement {
                generator: Generator::Relation(Gen2::Linear(0)),
                value: alg.full_branch(5),
            })
            .unwrap();
        for (i, c) in col.iter().enumerate() {
            if i == tail_slot {
                assert!(c.is_one(), "pivot column reduces to the tail with coefficient 1");
            } else {
                assert!(c.is_zero());
            }
        }
        // Monomial-branch arrows substitute to zero.
        let col = d1.col(diag_slot(deg1, 3, 2));
        assert!(col.iter().all(Rat::is_zero));
    }
}
