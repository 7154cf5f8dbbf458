//! Lie-theoretic structure of the degree-1 cohomology and the module
//! structure of the higher degrees: abelianness, center, radical, the
//! Levi-style decomposition with its special-linear part, and per-generator
//! module decompositions.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::cohomology::{Cohomology, CohomologyClass, Gen2, Label};
use crate::gerstenhaber::{bracket_deg1_degn, BracketTable, GerstError};
use crate::matrix::{same_span, span_rank, RationalMatrix};
use crate::rat::Rat;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("the Lie algebra is abelian; the decomposition does not apply")]
    NotApplicable,
    #[error("the semisimplicity criterion assumes a nonabelian input")]
    AbelianInput,
    #[error("structure verification failed: {0}")]
    Verification(&'static str),
    #[error(transparent)]
    Gerstenhaber(#[from] GerstError),
}

/// The structural report on the degree-1 Lie algebra.
#[derive(Debug, Clone)]
pub struct LieReport {
    pub abelian: bool,
    pub abelian_reason: Option<String>,
    /// Present only in the abelian case: the enveloping algebra is then a
    /// polynomial algebra on the stated number of variables.
    pub polynomial_note: Option<String>,
    pub center: Vec<Label>,
    pub radical: Vec<Label>,
    pub decomposition: Option<LeviDecomposition>,
    pub semisimple: Option<bool>,
}

/// The splitting center + sl_a acting on (component sums acting on mixed
/// cochains).
#[derive(Debug, Clone)]
pub struct LeviDecomposition {
    pub center_part: Vec<Label>,
    pub sl_part: Vec<SlGenerator>,
    pub s1: Vec<Label>,
    pub l2: Vec<Label>,
}

/// A generator of the special-linear part with its matrix image: `w_pq`
/// maps to the elementary matrix `E_qp`, `x_j` to `E_jj - E_11`.
#[derive(Debug, Clone)]
pub struct SlGenerator {
    pub label: Label,
    pub matrix: RationalMatrix,
}

/// Decomposition of a higher cohomology space as a module over degree 1.
#[derive(Debug, Clone)]
pub struct ModuleDecomposition {
    pub degree: usize,
    pub components: Vec<ModuleComponent>,
    pub standard_multiplicity: usize,
    pub trivial_multiplicity: usize,
    /// Set when the irreducibility criterion is one-directional: with no
    /// monomial relation from source to sink, failing `D = a` does not by
    /// itself rule irreducibility out.
    pub converse_caveat: bool,
}

#[derive(Debug, Clone)]
pub struct ModuleComponent {
    pub generator: String,
    pub class_basis: Vec<Label>,
    pub indecomposable: bool,
    pub irreducible: bool,
}

pub fn is_abelian(coh: &Cohomology) -> (bool, Option<String>) {
    let inv = coh.algebra().invariants();
    if inv.a == 0 {
        (true, Some("a = 0".to_string()))
    } else if inv.big_d <= 1 {
        (true, Some("D <= 1".to_string()))
    } else {
        (false, None)
    }
}

fn indices_of<F: Fn(&Label) -> bool>(coh: &Cohomology, pred: F) -> Vec<usize> {
    coh.hh_basis(1)
        .iter()
        .enumerate()
        .filter(|(_, c)| pred(&c.label))
        .map(|(i, _)| i)
        .collect()
}

fn labels_at(coh: &Cohomology, idx: &[usize]) -> Vec<Label> {
    idx.iter().map(|&i| coh.hh_basis(1)[i].label).collect()
}

/// The center of the degree-1 Lie algebra: the `y` family when arrows from
/// source to sink exist, everything otherwise. Verified against the kernel
/// of the adjoint action.
pub fn center(coh: &Cohomology, table: &BracketTable) -> Result<Vec<Label>, LieError> {
    let dim = table.labels.len();
    let claimed: Vec<usize> = if coh.algebra().invariants().a > 0 {
        indices_of(coh, |l| matches!(l, Label::Y { .. }))
    } else {
        (0..dim).collect()
    };

    // Adjoint kernel: v with sum_i v_i [b_i, b_j] = 0 for every j.
    let c = table.structure_constants();
    let mut rows = Vec::new();
    for j in 0..dim {
        for k in 0..dim {
            rows.push((0..dim).map(|i| c[i][j][k].clone()).collect::<Vec<_>>());
        }
    }
    let kernel = if dim == 0 {
        Vec::new()
    } else {
        RationalMatrix::from_rows(rows).kernel_basis()
    };
    let claimed_vecs: Vec<Vec<Rat>> = claimed
        .iter()
        .map(|&i| {
            let mut v = vec![Rat::zero(); dim];
            v[i] = Rat::one();
            v
        })
        .collect();
    if !same_span(&kernel, &claimed_vecs) {
        return Err(LieError::Verification("center differs from adjoint kernel"));
    }
    Ok(labels_at(coh, &claimed))
}

/// Spans brackets of two coordinate subspaces using structure constants.
fn bracket_span(c: &[Vec<Vec<Rat>>], xs: &[Vec<Rat>], ys: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let dim = c.len();
    let mut out = Vec::new();
    for x in xs {
        for y in ys {
            let mut v = vec![Rat::zero(); dim];
            for i in 0..dim {
                if x[i].is_zero() {
                    continue;
                }
                for j in 0..dim {
                    if y[j].is_zero() {
                        continue;
                    }
                    for k in 0..dim {
                        if !c[i][j][k].is_zero() {
                            v[k] += &x[i] * &y[j] * &c[i][j][k];
                        }
                    }
                }
            }
            if v.iter().any(|r| !r.is_zero()) {
                out.push(v);
            }
        }
    }
    out
}

/// The radical: the solvable part `t, z` plus the center `y` (everything in
/// the abelian case). Verified to be an ideal whose derived series
/// terminates.
pub fn radical(coh: &Cohomology, table: &BracketTable) -> Result<Vec<Label>, LieError> {
    let dim = table.labels.len();
    let idx: Vec<usize> = if coh.algebra().invariants().a > 0 {
        indices_of(coh, |l| {
            matches!(l, Label::T { .. } | Label::Z { .. } | Label::Y { .. })
        })
    } else {
        (0..dim).collect()
    };
    let c = table.structure_constants();

    // Ideal check: brackets with every basis element stay inside.
    for &i in &idx {
        for j in 0..dim {
            for (k, v) in c[i][j].iter().enumerate() {
                if !v.is_zero() && !idx.contains(&k) {
                    return Err(LieError::Verification("radical is not an ideal"));
                }
            }
        }
    }

    // Derived series of the ideal reaches zero.
    let mut current: Vec<Vec<Rat>> = idx
        .iter()
        .map(|&i| {
            let mut v = vec![Rat::zero(); dim];
            v[i] = Rat::one();
            v
        })
        .collect();
    for _ in 0..=dim {
        if current.is_empty() {
            break;
        }
        let next = bracket_span(&c, &current, &current);
        if span_rank(&next) == 0 {
            current = Vec::new();
        } else {
            if span_rank(&next) >= span_rank(&current) {
                return Err(LieError::Verification("derived series does not shrink"));
            }
            current = next;
        }
    }
    if !current.is_empty() {
        return Err(LieError::Verification("derived series does not terminate"));
    }
    Ok(labels_at(coh, &idx))
}

fn elementary(a: usize, r: usize, s: usize) -> RationalMatrix {
    let mut m = RationalMatrix::zero(a, a);
    m.set(r, s, Rat::one());
    m
}

fn mat_sub(x: &RationalMatrix, y: &RationalMatrix) -> RationalMatrix {
    let mut out = x.clone();
    for i in 0..out.nrows() {
        for j in 0..out.ncols() {
            let v = out.get(i, j) - y.get(i, j);
            out.set(i, j, v);
        }
    }
    out
}

fn commutator(x: &RationalMatrix, y: &RationalMatrix) -> RationalMatrix {
    mat_sub(&x.mul_mat(y), &y.mul_mat(x))
}

/// Writes a traceless diagonal-plus-offdiagonal matrix back over the sl part
/// labels: off-diagonal `E_qp` is `w_pq`, diagonal combinations fall on the
/// `x` family.
fn matrix_to_sl_coords(coh: &Cohomology, m: &RationalMatrix) -> CohomologyClass {
    let dim1 = coh.hh_dimension(1);
    let mut out = CohomologyClass::zero(1, dim1);
    let a = m.nrows();
    let mut trace = Rat::zero();
    for i in 0..a {
        trace += m.get(i, i);
    }
    assert!(trace.is_zero(), "sl image must be traceless");
    for r in 0..a {
        for s in 0..a {
            let v = m.get(r, s);
            if v.is_zero() {
                continue;
            }
            if r != s {
                let idx = coh
                    .label_index(1, &Label::W { p: s, q: r })
                    .expect("w label");
                out.coords[idx] += v;
            } else if r > 0 {
                // E_rr = (E_rr - E_11) plus a multiple of E_11 absorbed by
                // tracelessness.
                let idx = coh.label_index(1, &Label::X { j: r }).expect("x label");
                out.coords[idx] += v;
            }
        }
    }
    out
}

/// The Levi-style decomposition. Fails with `NotApplicable` on abelian
/// inputs; otherwise partitions the basis and certifies every claim of the
/// splitting with exact structure constants.
pub fn levi_decomposition(
    coh: &Cohomology,
    table: &BracketTable,
) -> Result<LeviDecomposition, LieError> {
    if is_abelian(coh).0 {
        return Err(LieError::NotApplicable);
    }
    let a = coh.algebra().invariants().a;
    let dim = table.labels.len();
    let c = table.structure_constants();

    let center_part = indices_of(coh, |l| matches!(l, Label::Y { .. }));
    let sl_idx = indices_of(coh, |l| matches!(l, Label::W { .. } | Label::X { .. }));
    let s1_idx = indices_of(coh, |l| matches!(l, Label::T { .. }));
    let l2_idx = indices_of(coh, |l| matches!(l, Label::Z { .. }));

    let unit = |i: usize| {
        let mut v = vec![Rat::zero(); dim];
        v[i] = Rat::one();
        v
    };
    let vecs = |idx: &[usize]| idx.iter().map(|&i| unit(i)).collect::<Vec<_>>();

    // S1 and L2 are abelian, L = S1 + L2 closes into L2, and L is an ideal.
    let s1v = vecs(&s1_idx);
    let l2v = vecs(&l2_idx);
    if span_rank(&bracket_span(&c, &s1v, &s1v)) != 0 {
        return Err(LieError::Verification("[S1, S1] != 0"));
    }
    if span_rank(&bracket_span(&c, &l2v, &l2v)) != 0 {
        return Err(LieError::Verification("[L2, L2] != 0"));
    }
    let mut lv = s1v.clone();
    lv.extend(l2v.iter().cloned());
    let inside = |vs: &[Vec<Rat>], allowed: &[usize]| {
        vs.iter().all(|v| {
            v.iter()
                .enumerate()
                .all(|(k, x)| x.is_zero() || allowed.contains(&k))
        })
    };
    if !inside(&bracket_span(&c, &lv, &lv), &l2_idx) {
        return Err(LieError::Verification("[L, L] not inside L2"));
    }
    let all = vecs(&(0..dim).collect::<Vec<_>>());
    let l_allowed: Vec<usize> = s1_idx.iter().chain(&l2_idx).copied().collect();
    if !inside(&bracket_span(&c, &lv, &all), &l_allowed) {
        return Err(LieError::Verification("L is not an ideal"));
    }

    // sl part: match structure constants against elementary-matrix
    // commutators under w_pq -> E_qp, x_j -> E_jj - E_11.
    let mut sl_part = Vec::new();
    for &i in &sl_idx {
        let label = table.labels[i];
        let matrix = match label {
            Label::W { p, q } => elementary(a, q, p),
            Label::X { j } => mat_sub(&elementary(a, j, j), &elementary(a, 0, 0)),
            _ => unreachable!(),
        };
        sl_part.push(SlGenerator { label, matrix });
    }
    for gi in &sl_part {
        for gj in &sl_part {
            let li = coh.label_index(1, &gi.label).unwrap();
            let lj = coh.label_index(1, &gj.label).unwrap();
            let bracket = table.get(li, lj);
            // The bracket of sl generators stays in the sl part.
            for (k, v) in bracket.coords.iter().enumerate() {
                if !v.is_zero() && !sl_idx.contains(&k) {
                    return Err(LieError::Verification("sl part does not close"));
                }
            }
            let expected = matrix_to_sl_coords(coh, &commutator(&gi.matrix, &gj.matrix));
            if *bracket != expected {
                return Err(LieError::Verification(
                    "sl structure constants differ from matrix commutators",
                ));
            }
        }
    }

    Ok(LeviDecomposition {
        center_part: labels_at(coh, &center_part),
        sl_part,
        s1: labels_at(coh, &s1_idx),
        l2: labels_at(coh, &l2_idx),
    })
}

/// Semisimplicity criterion; only defined for nonabelian inputs.
pub fn is_semisimple(coh: &Cohomology) -> Result<bool, LieError> {
    if is_abelian(coh).0 {
        return Err(LieError::AbelianInput);
    }
    let inv = coh.algebra().invariants();
    Ok(inv.a == inv.big_d && inv.m == 0)
}

/// Full Lie report for one algebra.
pub fn lie_report(coh: &Cohomology, table: &BracketTable) -> Result<LieReport, LieError> {
    let (abelian, reason) = is_abelian(coh);
    let inv = coh.algebra().invariants();
    let polynomial_note = if abelian {
        let vars = if inv.a == 0 {
            inv.r + inv.m - 1
        } else {
            inv.m
        };
        Some(format!(
            "abelian; the enveloping algebra is a polynomial algebra in {vars} variable(s)"
        ))
    } else {
        None
    };
    let center = center(coh, table)?;
    let radical = radical(coh, table)?;
    let decomposition = if abelian {
        None
    } else {
        Some(levi_decomposition(coh, table)?)
    };
    let semisimple = if abelian {
        None
    } else {
        Some(is_semisimple(coh)?)
    };
    Ok(LieReport {
        abelian,
        abelian_reason: reason,
        polynomial_note,
        center,
        radical,
        decomposition,
        semisimple,
    })
}

/// Decomposes a higher cohomology space into the submodules attached to its
/// source-to-sink generators, with the multiplicities of the standard and
/// trivial special-linear representations.
pub fn module_decomposition(
    coh: &Cohomology,
    degree: usize,
) -> Result<ModuleDecomposition, LieError> {
    assert!(degree >= 2);
    let inv = coh.algebra().invariants();
    assert!(inv.a > 0, "module decomposition requires arrows source to sink");
    let basis = coh.hh_basis(degree);

    // Group basis classes by generator.
    let mut groups: Vec<(String, Vec<Label>)> = Vec::new();
    for cls in basis {
        let gen_name = match cls.label {
            Label::Deg2 { gen, .. } => crate::cohomology::gen2_name(&gen),
            Label::HiDeg { amb, .. } => format!(
                "amb({},{},{})",
                amb.branch + 1,
                amb.start,
                amb.end
            ),
            _ => unreachable!("higher-degree label expected"),
        };
        match groups.last_mut() {
            Some((name, labels)) if *name == gen_name => labels.push(cls.label),
            _ => groups.push((gen_name, vec![cls.label])),
        }
    }
    // Generators with no surviving classes still count for the standard
    // multiplicity only if they exist at all; every generator keeps its
    // arrow-valued classes, so groups and generators coincide.
    let num_generators = groups.len();
    let dim = basis.len();
    let standard_multiplicity = num_generators;
    let trivial_multiplicity = dim - inv.a * num_generators;

    let irreducible = inv.a == inv.big_d;
    let has_full_monomial = coh
        .algebra()
        .all_windows()
        .any(|w| w.start == 0 && w.end() == coh.algebra().branch_length(w.branch));
    let converse_caveat = degree == 2 && !irreducible && !has_full_monomial;

    let components = groups
        .into_iter()
        .map(|(generator, class_basis)| ModuleComponent {
            generator,
            class_basis,
            indecomposable: true,
            irreducible,
        })
        .collect();

    Ok(ModuleDecomposition {
        degree,
        components,
        standard_multiplicity,
        trivial_multiplicity,
        converse_caveat,
    })
}

/// The orbit of a single class under repeated bracketing with the labeled
/// degree-1 basis; used to certify indecomposability of the components.
pub fn orbit_span(
    coh: &Cohomology,
    start: &CohomologyClass,
) -> Result<Vec<Vec<Rat>>, LieError> {
    let deg1 = coh.hh_basis(1);
    let mut span: Vec<Vec<Rat>> = vec![start.coords.clone()];
    loop {
        let mut new_vecs = Vec::new();
        for v in &span {
            let class = CohomologyClass {
                degree: start.degree,
                coords: v.clone(),
            };
            for i in 0..deg1.len() {
                let mut f = CohomologyClass::zero(1, deg1.len());
                f.coords[i] = Rat::one();
                let out = bracket_deg1_degn(coh, &f, &class)?;
                if !out.is_zero() {
                    new_vecs.push(out.coords);
                }
            }
        }
        let before = span_rank(&span);
        let mut candidate = span.clone();
        candidate.extend(new_vecs);
        if span_rank(&candidate) == before {
            return Ok(span);
        }
        span = candidate;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gerstenhaber::bracket_table;
    use crate::samples;

    fn setup(
        alg: &crate::algebra::ToupieAlgebra,
    ) -> (Cohomology<'_>, BracketTable) {
        let coh = Cohomology::new(alg).unwrap();
        let table = bracket_table(&coh).unwrap();
        (coh, table)
    }

    fn names(labels: &[Label]) -> Vec<String> {
        labels.iter().map(Label::display).collect()
    }

    #[test]
    fn abelian_criteria() {
        let alg = samples::commutative_square();
        let coh = Cohomology::new(&alg).unwrap();
        assert_eq!(is_abelian(&coh), (true, Some("a = 0".to_string())));

        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        assert_eq!(is_abelian(&coh).0, false);

        let alg = samples::arrow_and_dead_branch();
        let coh = Cohomology::new(&alg).unwrap();
        assert_eq!(is_abelian(&coh), (true, Some("D <= 1".to_string())));
    }

    #[test]
    fn golden_center_and_radical() {
        let alg = samples::golden_example();
        let (coh, table) = setup(&alg);
        assert_eq!(names(&center(&coh, &table).unwrap()), vec!["y4"]);
        assert_eq!(
            names(&radical(&coh, &table).unwrap()),
            vec!["y4", "z13", "z23", "z16", "z26", "t1", "t2"]
        );
    }

    #[test]
    fn kronecker_center_empty_and_semisimple() {
        for a in [2, 3] {
            let alg = samples::kronecker(a);
            let (coh, table) = setup(&alg);
            assert!(center(&coh, &table).unwrap().is_empty());
            assert!(radical(&coh, &table).unwrap().is_empty());
            assert_eq!(is_semisimple(&coh).unwrap(), true);
        }
    }

    #[test]
    fn golden_levi() {
        let alg = samples::golden_example();
        let (coh, table) = setup(&alg);
        let levi = levi_decomposition(&coh, &table).unwrap();
        assert_eq!(names(&levi.center_part), vec!["y4"]);
        assert_eq!(
            levi.sl_part.iter().map(|g| g.label.display()).collect::<Vec<_>>(),
            vec!["w12", "w21", "x2"]
        );
        assert_eq!(names(&levi.s1), vec!["t1", "t2"]);
        assert_eq!(names(&levi.l2), vec!["z13", "z23", "z16", "z26"]);
        assert_eq!(is_semisimple(&coh).unwrap(), false);
    }

    #[test]
    fn pair_instance_levi() {
        let alg = samples::two_arrows_pair();
        let inv = alg.invariants();
        assert_eq!((inv.a, inv.big_d, inv.m, inv.r), (2, 3, 0, 1));
        let (coh, table) = setup(&alg);
        let levi = levi_decomposition(&coh, &table).unwrap();
        assert!(levi.center_part.is_empty());
        assert_eq!(levi.sl_part.len(), 3);
        assert_eq!(levi.s1.len(), 1);
        assert_eq!(levi.l2.len(), 2);

        let alg = samples::two_arrows_free_and_pair();
        let inv = alg.invariants();
        assert_eq!((inv.a, inv.big_d, inv.m, inv.r), (2, 4, 0, 2));
        let (coh, table) = setup(&alg);
        let levi = levi_decomposition(&coh, &table).unwrap();
        assert_eq!(levi.s1.len(), 2);
        assert_eq!(levi.l2.len(), 4);
    }

    #[test]
    fn abelian_inputs_fail_decomposition() {
        let alg = samples::commutative_square();
        let (coh, table) = setup(&alg);
        assert_eq!(
            levi_decomposition(&coh, &table).unwrap_err(),
            LieError::NotApplicable
        );
        assert_eq!(is_semisimple(&coh).unwrap_err(), LieError::AbelianInput);
        // Abelian: center and radical are everything.
        assert_eq!(center(&coh, &table).unwrap().len(), coh.hh_dimension(1));
        assert_eq!(radical(&coh, &table).unwrap().len(), coh.hh_dimension(1));
    }

    #[test]
    fn semisimple_needs_no_monomial_branch() {
        let mut spec = crate::algebra::QuiverSpec {
            branch_lengths: vec![1, 1, 2],
            ..Default::default()
        };
        spec.monomial_relations.push(crate::algebra::MonomialWindow {
            branch: 2,
            start: 0,
            length: 2,
        });
        let alg = crate::algebra::ToupieAlgebra::build(spec).unwrap();
        let inv = alg.invariants();
        assert_eq!((inv.a, inv.big_d, inv.m), (2, 2, 1));
        let coh = Cohomology::new(&alg).unwrap();
        assert_eq!(is_semisimple(&coh).unwrap(), false);
    }

    #[test]
    fn golden_module_decompositions() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let dec2 = module_decomposition(&coh, 2).unwrap();
        assert_eq!(dec2.components.len(), 1);
        assert_eq!(dec2.components[0].generator, "rho1");
        assert_eq!(dec2.components[0].class_basis.len(), 3);
        assert!(dec2.components[0].indecomposable);
        assert!(!dec2.components[0].irreducible);
        assert_eq!(dec2.standard_multiplicity, 1);
        assert_eq!(dec2.trivial_multiplicity, 1);

        let dec4 = module_decomposition(&coh, 4).unwrap();
        assert_eq!(dec4.components.len(), 1);
        assert_eq!(dec4.standard_multiplicity, 1);
        assert_eq!(dec4.trivial_multiplicity, 2);
    }

    #[test]
    fn kronecker_hh2_decomposition_empty() {
        let alg = samples::kronecker(2);
        let coh = Cohomology::new(&alg).unwrap();
        let dec = module_decomposition(&coh, 2).unwrap();
        assert!(dec.components.is_empty());
        assert_eq!(dec.standard_multiplicity, 0);
        assert_eq!(dec.trivial_multiplicity, 0);
    }

    #[test]
    fn orbit_spans_component() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        for degree in [2usize, 4] {
            let dec = module_decomposition(&coh, degree).unwrap();
            for comp in &dec.components {
                // Start from the class valued at the first arrow branch.
                let start_label = comp.class_basis[0];
                let mut start = CohomologyClass::zero(degree, coh.hh_dimension(degree));
                start.coords[coh.label_index(degree, &start_label).unwrap()] = Rat::one();
                let span = orbit_span(&coh, &start).unwrap();
                assert_eq!(span_rank(&span), comp.class_basis.len());
            }
        }
    }

    #[test]
    fn diagonal_action_eigenvalues() {
        // x_j acts diagonally with eigenvalues -1, 0, +1 on higher classes.
        let alg = samples::golden_example();
        let (coh, _table) = setup(&alg);
        for degree in [2usize, 4] {
            let dim = coh.hh_dimension(degree);
            for j in 1..coh.algebra().invariants().a {
                let mut xj = CohomologyClass::zero(1, coh.hh_dimension(1));
                xj.coords[coh.label_index(1, &Label::X { j }).unwrap()] = Rat::one();
                for idx in 0..dim {
                    let mut v = CohomologyClass::zero(degree, dim);
                    v.coords[idx] = Rat::one();
                    let out = bracket_deg1_degn(&coh, &xj, &v).unwrap();
                    let eigen: Vec<Rat> = out
                        .coords
                        .iter()
                        .zip(&v.coords)
                        .filter(|(_, b)| !b.is_zero())
                        .map(|(a, _)| a.clone())
                        .collect();
                    // The action is diagonal on basis classes.
                    for (k, c) in out.coords.iter().enumerate() {
                        if k != idx {
                            assert!(c.is_zero());
                        }
                    }
                    let lambda = eigen[0].clone();
                    assert!(
                        lambda.is_zero() || lambda.is_one() || (-lambda.clone()).is_one(),
                        "eigenvalue out of range"
                    );
                }
            }
        }
    }

    #[test]
    fn component_dimensions_sum() {
        for alg in samples::all() {
            if alg.invariants().a == 0 {
                continue;
            }
            let coh = Cohomology::new(&alg).unwrap();
            for degree in 2..=coh.vanishes_above() {
                let dec = module_decomposition(&coh, degree).unwrap();
                let total: usize = dec.components.iter().map(|c| c.class_basis.len()).sum();
                assert_eq!(total, coh.hh_dimension(degree));
            }
        }
    }

    #[test]
    fn full_report_on_samples() {
        for alg in samples::all() {
            let (coh, table) = setup(&alg);
            let report = lie_report(&coh, &table).unwrap();
            if report.abelian {
                assert!(report.polynomial_note.is_some());
                assert!(report.decomposition.is_none());
            } else {
                assert!(report.decomposition.is_some());
                // Radical empty exactly when semisimple.
                assert_eq!(report.semisimple.unwrap(), report.radical.is_empty());
            }
        }
    }
}
