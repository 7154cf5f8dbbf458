//! Report assembly: one deterministic, serializable document holding the
//! invariants, the labeled bases of every degree, the degree-1 bracket
//! table, the Lie report, the module decompositions, and (on request) the
//! bar-complex verification block.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::ToupieAlgebra;
use crate::bar::{
    oracle_bracket_deg1, BarComplex, BarError, Comparison, VanishingKind,
};
use crate::cohomology::{Cohomology, CohomologyClass, Label};
use crate::gerstenhaber::{bracket_deg1_degn, bracket_table, BracketTable, GerstError};
use crate::lie::{lie_report, module_decomposition, LieError, LieReport};
use crate::rat::format_rat;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Gerstenhaber(#[from] GerstError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Structure(#[from] crate::cohomology::StructureError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub invariants: InvariantsBlock,
    pub degrees: Vec<DegreeBlock>,
    /// Cohomology vanishes strictly above this degree.
    pub vanishes_above: usize,
    /// Nonzero degree-1 brackets, upper triangle only.
    pub hh1_brackets: Vec<BracketEntry>,
    pub lie: LieBlock,
    pub module_decompositions: Vec<ModuleBlock>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<OracleBlock>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsBlock {
    pub a: usize,
    pub l: usize,
    pub m: usize,
    pub n: usize,
    pub rank: usize,
    #[serde(rename = "D")]
    pub big_d: usize,
    pub r: usize,
    pub d: usize,
    pub num_vertices: usize,
    pub num_arrows: usize,
    /// Canonical position -> 1-based input branch index.
    pub branch_order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBlock {
    pub degree: usize,
    pub dimension: usize,
    pub basis: Vec<BasisEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub label: String,
    /// Cochain representative as (slot, coefficient) pairs.
    pub cochain: Vec<CoordEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordEntry {
    pub slot: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieBlock {
    pub abelian: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub abelian_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub polynomial_note: Option<String>,
    pub center: Vec<String>,
    pub radical: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decomposition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub semisimple: Option<bool>,
    /// Labels of the special-linear part with their matrix images.
    pub sl_images: Vec<SlImage>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlImage {
    pub label: String,
    pub matrix: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleBlock {
    pub degree: usize,
    pub components: Vec<ComponentBlock>,
    pub standard_multiplicity: usize,
    pub trivial_multiplicity: usize,
    /// Set when the irreducibility converse is not asserted (degree 2, no
    /// monomial relation from source to sink, D != a).
    pub converse_caveat: bool,
    /// Nonzero actions of degree-1 basis classes on this degree's basis.
    pub actions: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBlock {
    pub generator: String,
    pub class_basis: Vec<String>,
    pub indecomposable: bool,
    pub irreducible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleBlock {
    pub max_degree: usize,
    pub budget: usize,
    pub degrees: Vec<OracleDegree>,
    pub bracket_pairs: usize,
    pub bracket_mismatches: Vec<String>,
    pub vanishing: Vec<VanishingEntry>,
    pub all_agree: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDegree {
    pub degree: usize,
    pub minimal: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bar: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingEntry {
    pub kind: String,
    pub m: usize,
    pub n: usize,
    pub status: String,
}

fn class_string(coh: &Cohomology, class: &CohomologyClass) -> String {
    coh.format_class(class)
}

fn basis_entries(coh: &Cohomology, degree: usize) -> Vec<BasisEntry> {
    let Some(space) = coh.space(degree) else {
        return Vec::new();
    };
    coh.hh_basis(degree)
        .iter()
        .map(|cls| BasisEntry {
            label: cls.label.display(),
            cochain: cls
                .cochain
                .iter()
                .enumerate()
                .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                .map(|(i, c)| {
                    let el = &space.basis[i];
                    let alg = coh.algebra();
                    let gen = match el.generator {
                        crate::cohomology::Generator::Vertex(_) => alg.format_path(&el.value),
                        crate::cohomology::Generator::Arrow(a) => alg.format_path(&a),
                        crate::cohomology::Generator::Relation(r) => {
                            crate::cohomology::gen2_name(&r)
                        }
                        crate::cohomology::Generator::Ambig(amb) => format!(
                            "amb({},{},{})",
                            amb.branch + 1,
                            amb.start,
                            amb.end
                        ),
                    };
                    CoordEntry {
                        slot: format!("{}||{}", gen, alg.format_path(&el.value)),
                        coeff: format_rat(c),
                    }
                })
                .collect(),
        })
        .collect()
}

/// The human-readable splitting, e.g.
/// `⟨y4⟩ ⊕ sl_2 ⋉ (⟨t1,t2⟩ ⋉ ⟨z13,z23,z16,z26⟩)`.
fn decomposition_string(a: usize, report: &LieReport) -> Option<String> {
    let levi = report.decomposition.as_ref()?;
    let span = |labels: &[Label]| {
        format!(
            "⟨{}⟩",
            labels
                .iter()
                .map(Label::display)
                .collect::<Vec<_>>()
                .join(",")
        )
    };
    let l_part = match (levi.s1.is_empty(), levi.l2.is_empty()) {
        (true, true) => None,
        (false, true) => Some(span(&levi.s1)),
        (true, false) => Some(span(&levi.l2)),
        (false, false) => Some(format!("({} ⋉ {})", span(&levi.s1), span(&levi.l2))),
    };
    let sl = if a >= 2 {
        Some(format!("sl_{a}"))
    } else {
        None
    };
    let tail = match (sl, l_part) {
        (Some(s), Some(l)) => format!("{s} ⋉ {l}"),
        (Some(s), None) => s,
        (None, Some(l)) => l,
        (None, None) => "0".to_string(),
    };
    Some(if levi.center_part.is_empty() {
        tail
    } else {
        format!("{} ⊕ {}", span(&levi.center_part), tail)
    })
}

fn matrix_string(m: &crate::matrix::RationalMatrix) -> String {
    let rows: Vec<String> = (0..m.nrows())
        .map(|i| {
            let cells: Vec<String> = (0..m.ncols()).map(|j| format_rat(m.get(i, j))).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// Builds the full report (without the oracle block) for degrees
/// `0..=max_degree`.
pub fn build_report(
    coh: &Cohomology,
    table: &BracketTable,
    max_degree: usize,
) -> Result<ReportDocument, ReportError> {
    let alg = coh.algebra();
    let inv = alg.invariants();
    let invariants = InvariantsBlock {
        a: inv.a,
        l: inv.l,
        m: inv.m,
        n: inv.n,
        rank: inv.rank,
        big_d: inv.big_d,
        r: inv.r,
        d: inv.d,
        num_vertices: inv.num_vertices,
        num_arrows: inv.num_arrows,
        branch_order: alg.branch_order().iter().map(|&i| i + 1).collect(),
    };

    let degrees = (0..=max_degree)
        .map(|degree| DegreeBlock {
            degree,
            dimension: coh.hh_dimension(degree),
            basis: basis_entries(coh, degree),
        })
        .collect();

    let mut hh1_brackets = Vec::new();
    let dim1 = coh.hh_dimension(1);
    for i in 0..dim1 {
        for j in i + 1..dim1 {
            let class = table.get(i, j);
            if !class.is_zero() {
                hh1_brackets.push(BracketEntry {
                    left: table.labels[i].display(),
                    right: table.labels[j].display(),
                    value: class_string(coh, class),
                });
            }
        }
    }

    let lie = lie_report(coh, table)?;
    let lie_block = LieBlock {
        abelian: lie.abelian,
        abelian_reason: lie.abelian_reason.clone(),
        polynomial_note: lie.polynomial_note.clone(),
        center: lie.center.iter().map(Label::display).collect(),
        radical: lie.radical.iter().map(Label::display).collect(),
        decomposition: decomposition_string(inv.a, &lie),
        semisimple: lie.semisimple,
        sl_images: lie
            .decomposition
            .as_ref()
            .map(|levi| {
                levi.sl_part
                    .iter()
                    .map(|g| SlImage {
                        label: g.label.display(),
                        matrix: matrix_string(&g.matrix),
                    })
                    .collect()
            })
            .unwrap_or_default(),
    };

    let mut module_decompositions = Vec::new();
    if inv.a > 0 {
        for degree in 2..=max_degree.min(coh.vanishes_above()) {
            if coh.hh_dimension(degree) == 0 {
                continue;
            }
            let dec = module_decomposition(coh, degree)?;
            let mut actions = Vec::new();
            for (i, one) in coh.hh_basis(1).iter().enumerate() {
                let mut f = CohomologyClass::zero(1, dim1);
                f.coords[i] = num_traits::One::one();
                for (j, v) in coh.hh_basis(degree).iter().enumerate() {
                    let mut cls = CohomologyClass::zero(degree, coh.hh_dimension(degree));
                    cls.coords[j] = num_traits::One::one();
                    let out = bracket_deg1_degn(coh, &f, &cls)?;
                    if !out.is_zero() {
                        actions.push(BracketEntry {
                            left: one.label.display(),
                            right: v.label.display(),
                            value: class_string(coh, &out),
                        });
                    }
                }
            }
            module_decompositions.push(ModuleBlock {
                degree,
                components: dec
                    .components
                    .iter()
                    .map(|c| ComponentBlock {
                        generator: c.generator.clone(),
                        class_basis: c.class_basis.iter().map(Label::display).collect(),
                        indecomposable: c.indecomposable,
                        irreducible: c.irreducible,
                    })
                    .collect(),
                standard_multiplicity: dec.standard_multiplicity,
                trivial_multiplicity: dec.trivial_multiplicity,
                converse_caveat: dec.converse_caveat,
                actions,
            });
        }
    }

    Ok(ReportDocument {
        invariants,
        degrees,
        vanishes_above: coh.vanishes_above(),
        hh1_brackets,
        lie: lie_block,
        module_decompositions,
        oracle: None,
    })
}

/// Runs the bar-complex verification and summarizes the agreement. Budget
/// failures keep partial results and are recorded per degree.
pub fn build_oracle_block(
    coh: &Cohomology,
    max_degree: usize,
    budget: usize,
) -> Result<OracleBlock, ReportError> {
    let alg = coh.algebra();
    let mut note = None;

    // Materialize as many bar degrees as the budget allows.
    let mut cx: Option<BarComplex> = None;
    let mut reached = max_degree + 1;
    loop {
        match BarComplex::new(alg, reached, budget) {
            Ok(c) => {
                cx = Some(c);
                break;
            }
            Err(BarError::BudgetExceeded { degree, .. }) => {
                note = Some(format!("budget exceeded at bar degree {degree}"));
                if degree == 0 {
                    break;
                }
                reached = degree - 1;
            }
            Err(e) => {
                note = Some(e.to_string());
                break;
            }
        }
    }

    let mut degrees = Vec::new();
    let mut bracket_pairs = 0;
    let mut bracket_mismatches = Vec::new();
    let mut vanishing = Vec::new();
    let mut all_agree = true;

    if let Some(cx) = &cx {
        let top = cx.max_degree();
        let bar_dims = if top >= 1 { cx.dimensions(top - 1) } else { Vec::new() };
        for degree in 0..=max_degree {
            let minimal = coh.hh_dimension(degree);
            let bar = bar_dims.get(degree).copied();
            let agree = bar.map(|b| b == minimal);
            if agree == Some(false) {
                all_agree = false;
            }
            degrees.push(OracleDegree {
                degree,
                minimal,
                bar,
                agree,
            });
        }

        if top >= 2 {
            let mut cmp = Comparison::new(alg, 4);
            let basis = coh.hh_basis(1);
            for i in 0..basis.len() {
                for j in 0..basis.len() {
                    bracket_pairs += 1;
                    let direct = crate::gerstenhaber::bracket_deg1(
                        coh,
                        &basis[i].cochain,
                        &basis[j].cochain,
                    )?;
                    let via_bar = match oracle_bracket_deg1(
                        coh,
                        cx,
                        &mut cmp,
                        &basis[i].cochain,
                        &basis[j].cochain,
                    ) {
                        Ok(v) => v,
                        Err(e) => {
                            bracket_mismatches.push(format!(
                                "({}, {}): {e}",
                                basis[i].label.display(),
                                basis[j].label.display()
                            ));
                            all_agree = false;
                            continue;
                        }
                    };
                    if direct != via_bar {
                        all_agree = false;
                        bracket_mismatches.push(format!(
                            "({}, {})",
                            basis[i].label.display(),
                            basis[j].label.display()
                        ));
                    }
                }
            }

            let mut checks: Vec<(usize, usize, VanishingKind)> =
                vec![(1, 1, VanishingKind::Cup)];
            if coh.hh_dimension(2) > 0 {
                checks.push((1, 2, VanishingKind::Cup));
                checks.push((2, 2, VanishingKind::Bracket));
            }
            for v in 3..=coh.vanishes_above() {
                if coh.hh_dimension(v) > 0 && coh.hh_dimension(2) > 0 {
                    checks.push((2, v, VanishingKind::Bracket));
                }
            }
            for (m, n, kind) in checks {
                let out_degree = match kind {
                    VanishingKind::Cup => m + n,
                    VanishingKind::Bracket => m + n - 1,
                };
                let kind_name = match kind {
                    VanishingKind::Cup => "cup",
                    VanishingKind::Bracket => "bracket",
                };
                if out_degree > top || m > 4 || n > 4 {
                    vanishing.push(VanishingEntry {
                        kind: kind_name.to_string(),
                        m,
                        n,
                        status: "skipped (budget)".to_string(),
                    });
                    continue;
                }
                let status = match crate::bar::oracle_vanishing_check(
                    coh,
                    cx,
                    &mut Comparison::new(alg, 4),
                    m,
                    n,
                    kind,
                ) {
                    Ok(()) => "certified".to_string(),
                    Err(e) => {
                        all_agree = false;
                        format!("failed: {e}")
                    }
                };
                vanishing.push(VanishingEntry {
                    kind: kind_name.to_string(),
                    m,
                    n,
                    status,
                });
            }
        }
    } else {
        all_agree = false;
        for degree in 0..=max_degree {
            degrees.push(OracleDegree {
                degree,
                minimal: coh.hh_dimension(degree),
                bar: None,
                agree: None,
            });
        }
    }

    Ok(OracleBlock {
        max_degree,
        budget,
        degrees,
        bracket_pairs,
        bracket_mismatches,
        vanishing,
        all_agree,
        note,
    })
}

/// Plain-text rendering of a report.
pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let inv = &doc.invariants;
    out.push_str(&format!(
        "invariants: a={} l={} m={} n={} rank={} D={} r={} d={} vertices={} arrows={}\n",
        inv.a,
        inv.l,
        inv.m,
        inv.n,
        inv.rank,
        inv.big_d,
        inv.r,
        inv.d,
        inv.num_vertices,
        inv.num_arrows
    ));
    out.push_str(&format!(
        "branch order (input indices): {:?}\n",
        inv.branch_order
    ));
    for block in &doc.degrees {
        let labels: Vec<&str> = block.basis.iter().map(|b| b.label.as_str()).collect();
        out.push_str(&format!(
            "HH^{}: dim {}{}\n",
            block.degree,
            block.dimension,
            if labels.is_empty() {
                String::new()
            } else {
                format!("  basis {{{}}}", labels.join(", "))
            }
        ));
    }
    out.push_str(&format!(
        "HH^i = 0 for every i > {}\n",
        doc.vanishes_above
    ));
    if !doc.hh1_brackets.is_empty() {
        out.push_str("nonzero degree-1 brackets:\n");
        for b in &doc.hh1_brackets {
            out.push_str(&format!("  [{}, {}] = {}\n", b.left, b.right, b.value));
        }
    }
    out.push_str(&format!("abelian: {}", doc.lie.abelian));
    if let Some(r) = &doc.lie.abelian_reason {
        out.push_str(&format!(" ({r})"));
    }
    out.push('\n');
    if let Some(n) = &doc.lie.polynomial_note {
        out.push_str(&format!("note: {n}\n"));
    }
    out.push_str(&format!("center: {{{}}}\n", doc.lie.center.join(", ")));
    out.push_str(&format!("radical: {{{}}}\n", doc.lie.radical.join(", ")));
    if let Some(d) = &doc.lie.decomposition {
        out.push_str(&format!("decomposition: {d}\n"));
    }
    if let Some(s) = doc.lie.semisimple {
        out.push_str(&format!("semisimple: {s}\n"));
    }
    for m in &doc.module_decompositions {
        out.push_str(&format!(
            "HH^{} as a module: {} standard + {} trivial\n",
            m.degree, m.standard_multiplicity, m.trivial_multiplicity
        ));
        for c in &m.components {
            out.push_str(&format!(
                "  component {}: {{{}}} indecomposable={} irreducible={}\n",
                c.generator,
                c.class_basis.join(", "),
                c.indecomposable,
                c.irreducible
            ));
        }
        for b in &m.actions {
            out.push_str(&format!("  [{}, {}] = {}\n", b.left, b.right, b.value));
        }
    }
    if let Some(o) = &doc.oracle {
        out.push_str(&format!(
            "oracle (budget {}): {}\n",
            o.budget,
            if o.all_agree { "all checks agree" } else { "DISAGREEMENT" }
        ));
        for d in &o.degrees {
            out.push_str(&format!(
                "  degree {}: minimal {} bar {}\n",
                d.degree,
                d.minimal,
                d.bar.map_or("-".to_string(), |b| b.to_string())
            ));
        }
        for v in &o.vanishing {
            out.push_str(&format!(
                "  {} ({}, {}): {}\n",
                v.kind, v.m, v.n, v.status
            ));
        }
        if let Some(n) = &o.note {
            out.push_str(&format!("  note: {n}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn golden_report() -> ReportDocument {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let coh = Box::leak(Box::new(coh));
        let table = bracket_table(coh).unwrap();
        build_report(coh, &table, 5).unwrap()
    }

    #[test]
    fn golden_decomposition_string() {
        let doc = golden_report();
        assert_eq!(
            doc.lie.decomposition.as_deref(),
            Some("⟨y4⟩ ⊕ sl_2 ⋉ (⟨t1,t2⟩ ⋉ ⟨z13,z23,z16,z26⟩)")
        );
    }

    #[test]
    fn golden_action_counts() {
        let doc = golden_report();
        let deg2 = doc
            .module_decompositions
            .iter()
            .find(|m| m.degree == 2)
            .unwrap();
        assert_eq!(deg2.actions.len(), 10);
        let deg4 = doc
            .module_decompositions
            .iter()
            .find(|m| m.degree == 4)
            .unwrap();
        assert_eq!(deg4.actions.len(), 14);
    }

    #[test]
    fn json_round_trip() {
        let doc = golden_report();
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: ReportDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&golden_report()).unwrap();
        let b = serde_json::to_string(&golden_report()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oracle_block_on_golden() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let block = build_oracle_block(&coh, 4, 200_000).unwrap();
        assert!(block.all_agree);
        assert_eq!(block.bracket_mismatches.len(), 0);
        assert_eq!(block.bracket_pairs, 100);
        let dims: Vec<usize> = block.degrees.iter().map(|d| d.bar.unwrap()).collect();
        assert_eq!(dims, vec![1, 10, 3, 0, 4]);
    }

    #[test]
    fn oracle_block_budget_partial() {
        let alg = samples::golden_example();
        let coh = Cohomology::new(&alg).unwrap();
        let block = build_oracle_block(&coh, 4, 40).unwrap();
        assert!(block.note.is_some());
        assert!(block.degrees.iter().any(|d| d.bar.is_none()));
    }
}
