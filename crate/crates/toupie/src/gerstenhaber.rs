//! The Gerstenhaber bracket: arrow substitution, the degree-1 Lie bracket,
//! its closed-form structure-constant table, the action of degree 1 on every
//! higher degree, and the vanishing cup product and high-degree brackets.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Element, Path, ToupieAlgebra};
use crate::cohomology::{
    CochainBasisElement, Cohomology, CohomologyClass, Gen2, Generator, Label, StructureError,
};
use crate::rat::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GerstError {
    #[error("substitution value does not share the arrow's endpoints")]
    EndpointMismatch,
    #[error("bracket of cocycles failed the cocycle check")]
    NotACocycle,
    #[error("closed-form table disagrees with the substitution bracket at ({0}, {1})")]
    TableMismatch(String, String),
    #[error("expected a degree-1 class acting on a class of degree >= 2")]
    DegreeMismatch,
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// Replaces the (at most one) occurrence of `arrow` inside `path` by `value`
/// and reduces the result in the algebra. Zero when the arrow is absent or
/// the spliced path dies.
pub fn substitute(
    alg: &ToupieAlgebra,
    path: &Path,
    arrow: &Path,
    value: &Element,
) -> Result<Element, GerstError> {
    let Path::Run {
        branch: ab,
        start: ai,
        ..
    } = arrow
    else {
        return Err(GerstError::EndpointMismatch);
    };
    debug_assert!(arrow.is_arrow());
    for (p, _) in value.terms() {
        if alg.source(p) != alg.source(arrow) || alg.target(p) != alg.target(arrow) {
            return Err(GerstError::EndpointMismatch);
        }
    }
    let Path::Run { branch, start, len } = path else {
        return Ok(Element::zero());
    };
    if branch != ab || *ai < *start || *ai >= start + len {
        return Ok(Element::zero());
    }
    let left = if *ai > *start {
        Path::Run {
            branch: *branch,
            start: *start,
            len: ai - start,
        }
    } else {
        Path::Trivial(alg.source(path))
    };
    let right = if ai + 1 < start + len {
        Path::Run {
            branch: *branch,
            start: ai + 1,
            len: start + len - ai - 1,
        }
    } else {
        Path::Trivial(alg.target(path))
    };
    Ok(alg.multiply(
        &alg.multiply(&alg.reduce_path(&left), value),
        &alg.reduce_path(&right),
    ))
}

fn slot_arrow_value(el: &CochainBasisElement) -> (Path, Path) {
    let Generator::Arrow(arrow) = el.generator else {
        unreachable!("degree-1 slots are arrow cochains")
    };
    (arrow, el.value)
}

/// The degree-1 bracket at the cochain level:
/// `[a||h, b||v] = b||v^(a||h) - a||h^(b||v)`, extended bilinearly.
pub fn bracket_deg1_cochain(
    coh: &Cohomology,
    f: &[Rat],
    g: &[Rat],
) -> Result<Vec<Rat>, GerstError> {
    let alg = coh.algebra();
    let space = coh.space(1).expect("degree-1 space");
    let mut out = vec![Rat::zero(); space.dim()];
    fn add_terms(
        space: &crate::cohomology::CochainSpace,
        out: &mut [Rat],
        gen_arrow: &Path,
        elem: &Element,
        scale: &Rat,
    ) {
        for (p, c) in elem.terms() {
            let slot = space
                .index_of(&CochainBasisElement {
                    generator: Generator::Arrow(*gen_arrow),
                    value: *p,
                })
                .expect("cochain slot for bracket value");
            out[slot] += c * scale;
        }
    }
    for (i, fc) in f.iter().enumerate() {
        if fc.is_zero() {
            continue;
        }
        let (alpha, hpath) = slot_arrow_value(&space.basis[i]);
        let h = Element::from_path(hpath);
        for (j, gc) in g.iter().enumerate() {
            if gc.is_zero() {
                continue;
            }
            let (beta, bpath) = slot_arrow_value(&space.basis[j]);
            let b = Element::from_path(bpath);
            let scale = fc * gc;
            let first = substitute(alg, &bpath, &alpha, &h)?;
            add_terms(space, &mut out, &beta, &first, &scale);
            let second = substitute(alg, &hpath, &beta, &b)?;
            add_terms(space, &mut out, &alpha, &second, &(-scale));
        }
    }
    Ok(out)
}

/// The degree-1 bracket of two cocycles, reduced to coordinates over the
/// labeled basis.
pub fn bracket_deg1(
    coh: &Cohomology,
    f: &[Rat],
    g: &[Rat],
) -> Result<CohomologyClass, GerstError> {
    let cochain = bracket_deg1_cochain(coh, f, g)?;
    if !coh
        .differential_matrix(1)
        .mul_vec(&cochain)
        .iter()
        .all(Rat::is_zero)
    {
        return Err(GerstError::NotACocycle);
    }
    let coords = coh.project_deg1(&cochain)?;
    Ok(CohomologyClass { degree: 1, coords })
}

/// Bracket of the i-th and j-th labeled basis classes.
pub fn bracket_deg1_basis(
    coh: &Cohomology,
    i: usize,
    j: usize,
) -> Result<CohomologyClass, GerstError> {
    let basis = coh.hh_basis(1);
    bracket_deg1(coh, &basis[i].cochain, &basis[j].cochain)
}

/// All pairwise brackets of the labeled degree-1 basis, with every entry
/// computed both from the closed-form constant families and from the
/// substitution formula. The two computations must agree.
#[derive(Debug, Clone)]
pub struct BracketTable {
    pub labels: Vec<Label>,
    /// `entries[i][j]` is the class of `[basis_i, basis_j]`.
    pub entries: Vec<Vec<CohomologyClass>>,
}

impl BracketTable {
    pub fn get(&self, i: usize, j: usize) -> &CohomologyClass {
        &self.entries[i][j]
    }

    /// Structure constants `c[i][j][k]`.
    pub fn structure_constants(&self) -> Vec<Vec<Vec<Rat>>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|c| c.coords.clone()).collect())
            .collect()
    }
}

pub fn bracket_table(coh: &Cohomology) -> Result<BracketTable, GerstError> {
    let basis = coh.hh_basis(1);
    let dim = basis.len();
    let labels: Vec<Label> = basis.iter().map(|c| c.label).collect();
    let mut entries = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(dim);
        for j in 0..dim {
            let by_formula = closed_form_bracket(coh, &labels[i], &labels[j]);
            let by_substitution = bracket_deg1_basis(coh, i, j)?;
            if by_formula != by_substitution {
                return Err(GerstError::TableMismatch(
                    labels[i].display(),
                    labels[j].display(),
                ));
            }
            row.push(by_substitution);
        }
        entries.push(row);
    }
    Ok(BracketTable { labels, entries })
}

/// Closed-form bracket of two degree-1 basis labels, from the constant
/// families `A`, `B`, `C`, `D`, `E` (zero rows and columns for the center
/// and the component sums).
pub fn closed_form_bracket(coh: &Cohomology, la: &Label, lb: &Label) -> CohomologyClass {
    fn kind(l: &Label) -> u8 {
        match l {
            Label::Y { .. } => 0,
            Label::W { .. } => 1,
            Label::X { .. } => 2,
            Label::Z { .. } => 3,
            Label::T { .. } => 4,
            _ => unreachable!("degree-1 label expected"),
        }
    }
    let dim = coh.hh_dimension(1);
    let mut out = CohomologyClass::zero(1, dim);
    let (first, second, sign) = if kind(la) <= kind(lb) {
        (la, lb, Rat::one())
    } else {
        (lb, la, -Rat::one())
    };
    {
        let mut add = |label: Label, c: Rat| {
            let idx = coh
                .label_index(1, &label)
                .expect("closed form produced a non-basis label");
            out.coords[idx] += c;
        };
        match (first, second) {
            (Label::Y { .. }, _)
            | (_, Label::Y { .. })
            | (Label::X { .. }, Label::X { .. })
            | (Label::X { .. }, Label::T { .. })
            | (Label::W { .. }, Label::T { .. })
            | (Label::Z { .. }, Label::Z { .. })
            | (Label::T { .. }, Label::T { .. }) => {}
            (Label::W { p, q }, Label::X { j }) => {
                // Antisymmetric to [x_j, w_pq] = (d_jq - d_jp) w_pq
                //                  - d_{q,1} w_{p,1} + d_{1,p} w_{1,q}.
                let (p, q, j) = (*p, *q, *j);
                if j == q {
                    add(Label::W { p, q }, -sign.clone());
                }
                if j == p {
                    add(Label::W { p, q }, sign.clone());
                }
                if q == 0 {
                    add(Label::W { p, q: 0 }, sign.clone());
                }
                if p == 0 {
                    add(Label::W { p: 0, q }, -sign.clone());
                }
            }
            (Label::X { j }, Label::Z { u, s }) => {
                if j == u {
                    add(Label::Z { u: *u, s: *s }, -sign.clone());
                }
                if *u == 0 {
                    add(Label::Z { u: 0, s: *s }, sign.clone());
                }
            }
            (Label::W { p, q }, Label::W { p: p2, q: q2 }) => {
                if q == p2 && p == q2 {
                    // Difference of two diagonal arrow cochains, written over
                    // the x family (the first diagonal is that family's zero).
                    if *p2 > 0 {
                        add(Label::X { j: *p2 }, sign.clone());
                    }
                    if *p > 0 {
                        add(Label::X { j: *p }, -sign.clone());
                    }
                } else {
                    if p == q2 {
                        add(Label::W { p: *p2, q: *q }, sign.clone());
                    }
                    if q == p2 {
                        add(Label::W { p: *p, q: *q2 }, -sign.clone());
                    }
                }
            }
            (Label::W { p, q }, Label::Z { u, s }) => {
                if q == u {
                    add(Label::Z { u: *p, s: *s }, -sign.clone());
                }
            }
            (Label::Z { u, s }, Label::T { component }) => {
                if coh.algebra().q_rho().components[*component].contains(s) {
                    add(Label::Z { u: *u, s: *s }, -sign.clone());
                }
            }
            _ => unreachable!("unhandled label pair"),
        }
    }
    out
}

/// First arrow of the word rewritten by a higher-degree generator: the pivot
/// branch for a linear relation, the window itself for a monomial one, the
/// spanned run for an ambiguity.
fn generator_first_arrow(alg: &ToupieAlgebra, gen: &Generator) -> Path {
    match gen {
        Generator::Relation(Gen2::Linear(i)) => Path::arrow(alg.reduced_rows()[*i].pivot, 0),
        Generator::Relation(Gen2::Monomial(w)) => Path::arrow(w.branch, w.start),
        Generator::Ambig(amb) => Path::arrow(amb.branch, amb.start),
        _ => unreachable!("higher-degree generator expected"),
    }
}

/// The action of a degree-1 class on a degree-n class (n >= 2): for each
/// summand `gen || c`, substitution into the value when the acting arrow
/// starts `c`, minus the identity term when it starts the rewritten word of
/// `gen`. Results in degree 2 are reduced modulo Im D1.
pub fn bracket_deg1_degn(
    coh: &Cohomology,
    f: &CohomologyClass,
    v: &CohomologyClass,
) -> Result<CohomologyClass, GerstError> {
    if f.degree != 1 || v.degree < 2 {
        return Err(GerstError::DegreeMismatch);
    }
    let alg = coh.algebra();
    let deg1 = coh.space(1).expect("degree-1 space");
    let Some(space_n) = coh.space(v.degree) else {
        // Above the vanishing bound the space itself is zero.
        return Ok(CohomologyClass::zero(v.degree, 0));
    };
    let basis_n = coh.hh_basis(v.degree);

    // Representative cochain of f over the degree-1 slots. Every slot used by
    // the labeled basis is headed by the leading arrow of a branch, which is
    // what the action formula requires.
    let mut f_cochain = vec![Rat::zero(); deg1.dim()];
    for (c, cls) in f.coords.iter().zip(coh.hh_basis(1)) {
        for (slot, v) in cls.cochain.iter().enumerate() {
            f_cochain[slot] += c * v;
        }
    }

    let mut out = vec![Rat::zero(); space_n.dim()];
    for (slot_f, kappa) in f_cochain.iter().enumerate() {
        if kappa.is_zero() {
            continue;
        }
        let (alpha, hpath) = slot_arrow_value(&deg1.basis[slot_f]);
        let h = Element::from_path(hpath);
        for (idx, mu) in v.coords.iter().enumerate() {
            if mu.is_zero() {
                continue;
            }
            // Basis classes in degree >= 2 are single slots gen || c.
            let rep = &basis_n[idx];
            let slot_v = rep
                .cochain
                .iter()
                .position(|x| !x.is_zero())
                .expect("nonzero representative");
            let el = &space_n.basis[slot_v];
            let c_path = el.value;
            let scale = kappa * mu;
            if c_path.first_arrow() == Some(alpha) {
                let subst = substitute(alg, &c_path, &alpha, &h)?;
                for (p, cc) in subst.terms() {
                    let target = space_n
                        .index_of(&CochainBasisElement {
                            generator: el.generator,
                            value: *p,
                        })
                        .expect("degree-n slot");
                    out[target] += cc * &scale;
                }
            }
            if generator_first_arrow(alg, &el.generator) == alpha {
                out[slot_v] -= &scale;
            }
        }
    }
    Ok(coh.class_from_cochain(v.degree, &out)?)
}

/// Cup product. Positive-degree products vanish; degree-0 classes act by
/// their scalar coordinate.
pub fn cup(coh: &Cohomology, f: &CohomologyClass, g: &CohomologyClass) -> CohomologyClass {
    if f.degree == 0 {
        let mut out = CohomologyClass::zero(g.degree, g.coords.len());
        out.add_scaled(g, &f.coords[0]);
        return out;
    }
    if g.degree == 0 {
        return cup(coh, g, f);
    }
    let degree = f.degree + g.degree;
    CohomologyClass::zero(degree, coh.hh_dimension(degree))
}

/// Bracket of two classes of degree > 1: zero in cohomology. The bar-complex
/// oracle certifies this independently on sampled instances.
pub fn bracket_high(
    coh: &Cohomology,
    f: &CohomologyClass,
    g: &CohomologyClass,
) -> Result<CohomologyClass, GerstError> {
    if f.degree <= 1 || g.degree <= 1 {
        return Err(GerstError::DegreeMismatch);
    }
    let degree = f.degree + g.degree - 1;
    Ok(CohomologyClass::zero(degree, coh.hh_dimension(degree)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn label_class(coh: &Cohomology, label: Label) -> CohomologyClass {
        let degree = match label {
            Label::Unit => 0,
            Label::Deg2 { .. } => 2,
            Label::HiDeg { amb, .. } => amb.degree + 1,
            _ => 1,
        };
        let mut out = CohomologyClass::zero(degree, coh.hh_dimension(degree));
        let idx = coh.label_index(degree, &label).expect("label exists");
        out.coords[idx] = Rat::one();
        out
    }

    fn expect_class(coh: &Cohomology, degree: usize, pairs: &[(Label, i64)]) -> CohomologyClass {
        let mut out = CohomologyClass::zero(degree, coh.hh_dimension(degree));
        for (l, c) in pairs {
            let idx = coh.label_index(degree, l).expect("label exists");
            out.coords[idx] += crate::rat::rat(*c);
        }
        out
    }

    #[test]
    fn substitute_whole_arrow() {
        let alg = samples::kronecker(2);
        let a1 = alg.full_branch(0);
        let a2 = Element::from_path(alg.full_branch(1));
        let out = substitute(&alg, &a1, &Path::arrow(0, 0), &a2).unwrap();
        assert_eq!(out, a2);
    }

    #[test]
    fn substitute_reducible_result_dies() {
        let alg = samples::golden_example();
        // The monomial branch contains windows, so even the identity
        // substitution reduces the full branch to zero.
        let p = alg.full_branch(3);
        let arrow = Path::arrow(3, 0);
        let out = substitute(&alg, &p, &arrow, &Element::from_path(arrow)).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn substitute_absent_arrow_is_zero() {
        let alg = samples::golden_example();
        let p = alg.full_branch(2);
        let out = substitute(
            &alg,
            &p,
            &Path::arrow(0, 0),
            &Element::from_path(alg.full_branch(1)),
        )
        .unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn substitute_endpoint_mismatch() {
        let alg = samples::golden_example();
        let err = substitute(
            &alg,
            &alg.full_branch(0),
            &Path::arrow(0, 0),
            &Element::from_path(Path::arrow(2, 0)),
        )
        .unwrap_err();
        assert_eq!(err, GerstError::EndpointMismatch);
    }

    #[test]
    fn substitution_of_path_value_has_one_summand() {
        // Replacing an arrow by one path yields at most one summand.
        let alg = samples::golden_example();
        for p in alg.basis() {
            for arrow in alg.arrows() {
                let out = substitute(&alg, p, &arrow, &Element::from_path(arrow)).unwrap();
                assert!(out.num_terms() <= 1);
            }
        }
    }

    #[test]
    fn diagonal_arrow_cochains_commute() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let y = coh.label_index(1, &Label::Y { branch: 3 }).unwrap();
        let t = coh.label_index(1, &Label::T { component: 0 }).unwrap();
        assert!(bracket_deg1_basis(&coh, y, t).unwrap().is_zero());
    }

    #[test]
    fn w21_w12_is_minus_x2() {
        for alg in [samples::golden_example(), samples::kronecker(2)] {
            let coh = Cohomology::new(&alg).unwrap();
            let i = coh.label_index(1, &Label::W { p: 1, q: 0 }).unwrap();
            let j = coh.label_index(1, &Label::W { p: 0, q: 1 }).unwrap();
            let b = bracket_deg1_basis(&coh, i, j).unwrap();
            assert_eq!(b, expect_class(&coh, 1, &[(Label::X { j: 1 }, -1)]));
        }
    }

    #[test]
    fn t_z_brackets() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let z13 = coh.label_index(1, &Label::Z { u: 0, s: 2 }).unwrap();
        let t1 = coh.label_index(1, &Label::T { component: 0 }).unwrap();
        let t2 = coh.label_index(1, &Label::T { component: 1 }).unwrap();
        let b = bracket_deg1_basis(&coh, t1, z13).unwrap();
        assert_eq!(b, expect_class(&coh, 1, &[(Label::Z { u: 0, s: 2 }, 1)]));
        assert!(bracket_deg1_basis(&coh, t2, z13).unwrap().is_zero());
    }

    #[test]
    fn golden_table_entries() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let table = bracket_table(&coh).unwrap();
        let x2 = coh.label_index(1, &Label::X { j: 1 }).unwrap();
        let z23 = coh.label_index(1, &Label::Z { u: 1, s: 2 }).unwrap();
        assert_eq!(
            table.get(x2, z23),
            &expect_class(&coh, 1, &[(Label::Z { u: 1, s: 2 }, -1)])
        );
        let y4 = coh.label_index(1, &Label::Y { branch: 3 }).unwrap();
        for j in 0..table.labels.len() {
            assert!(table.get(y4, j).is_zero());
        }
        let w12 = coh.label_index(1, &Label::W { p: 0, q: 1 }).unwrap();
        let w21 = coh.label_index(1, &Label::W { p: 1, q: 0 }).unwrap();
        assert_eq!(
            table.get(w12, w21),
            &expect_class(&coh, 1, &[(Label::X { j: 1 }, 1)])
        );
    }

    #[test]
    fn antisymmetry_and_jacobi_on_samples() {
        for alg in samples::all() {
            let coh = Cohomology::new(&alg).unwrap();
            let table = bracket_table(&coh).unwrap();
            let dim = table.labels.len();
            let c = table.structure_constants();
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        assert_eq!(c[i][j][k], -c[j][i][k].clone());
                    }
                }
            }
            for i in 0..dim {
                for j in 0..dim {
                    for k in 0..dim {
                        let mut total = vec![Rat::zero(); dim];
                        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
                            let inner = &c[x][y];
                            for t in 0..dim {
                                if inner[t].is_zero() {
                                    continue;
                                }
                                for w in 0..dim {
                                    total[w] += &inner[t] * &c[t][z][w];
                                }
                            }
                        }
                        assert!(
                            total.iter().all(Rat::is_zero),
                            "jacobi fails at ({i},{j},{k})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn golden_action_on_hh2() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let rho = Gen2::Linear(0);
        let v1 = label_class(&coh, Label::Deg2 { gen: rho, value: 0 });

        let w12 = label_class(&coh, Label::W { p: 0, q: 1 });
        let out = bracket_deg1_degn(&coh, &w12, &v1).unwrap();
        assert_eq!(
            out,
            expect_class(&coh, 2, &[(Label::Deg2 { gen: rho, value: 1 }, 1)])
        );

        let t2 = label_class(&coh, Label::T { component: 1 });
        let out = bracket_deg1_degn(&coh, &t2, &v1).unwrap();
        assert_eq!(
            out,
            expect_class(&coh, 2, &[(Label::Deg2 { gen: rho, value: 0 }, -1)])
        );

        // z16 sends the class to rho || a6, which dies in the quotient.
        let z16 = label_class(&coh, Label::Z { u: 0, s: 5 });
        assert!(bracket_deg1_degn(&coh, &z16, &v1).unwrap().is_zero());
    }

    #[test]
    fn golden_action_on_hh4() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let amb = crate::ambiguity::n_ambiguities(&alg, 3)[0];
        let v6 = label_class(&coh, Label::HiDeg { amb, value: 5 });
        let y4 = label_class(&coh, Label::Y { branch: 3 });
        let out = bracket_deg1_degn(&coh, &y4, &v6).unwrap();
        assert_eq!(
            out,
            expect_class(&coh, 4, &[(Label::HiDeg { amb, value: 5 }, -1)])
        );
    }

    #[test]
    fn cup_and_high_brackets_vanish() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let f = label_class(&coh, Label::W { p: 0, q: 1 });
        let g = label_class(&coh, Label::T { component: 0 });
        assert!(cup(&coh, &f, &g).is_zero());
        let rho = label_class(&coh, Label::Deg2 { gen: Gen2::Linear(0), value: 0 });
        assert!(bracket_high(&coh, &rho, &rho).unwrap().is_zero());
        // The unit acts as the identity under cup.
        let unit = CohomologyClass {
            degree: 0,
            coords: vec![Rat::one()],
        };
        assert_eq!(cup(&coh, &unit, &g), g);
    }
}
