//! Saturation of a generator set into the image subring f(H*_virt) inside
//! the group ring, plus everything needed to certify a presentation.
//!
//! A [`GradedSubspace`] keeps one reduced echelon matrix per total degree,
//! with columns indexed by (group element, ambient degree-component basis).
//! Image subrings are spanned by single-element rows, so the per-(g, degree)
//! dimension blocks of the reports are recovered exactly; invariant subrings
//! of nonabelian group rings may have rows spanning several conjugate group
//! elements, which the dimension table reports under a "(mixed)" bucket.
//!
//! Closure iterates S_{k+1} = S_k + S_k·gens (right multiplication only)
//! until dimensions stabilize; a full pairwise product check then certifies
//! the result is genuinely closed.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{format_scalar, is_integer, QMatrix, Scalar};
use crate::graded::{CohClass, ManifoldModel};
use crate::group::{CohAction, FiniteGroup, GroupRingElement};
use crate::symprod::GeneratorSet;

#[derive(Debug, Clone)]
struct DegreeBlock {
    /// Reduced echelon rows over (group element × degree component) columns.
    echelon: QMatrix,
    /// Generator word whose insertion created row i.
    words: Vec<String>,
}

/// A graded subspace of the group ring, closed under multiplication when
/// produced by [`close_subring`] or [`invariant_subring`].
#[derive(Debug, Clone)]
pub struct GradedSubspace {
    group: Arc<FiniteGroup>,
    model: Arc<ManifoldModel>,
    blocks: BTreeMap<usize, DegreeBlock>,
}

impl GradedSubspace {
    fn new(group: Arc<FiniteGroup>, model: Arc<ManifoldModel>) -> Self {
        GradedSubspace {
            group,
            model,
            blocks: BTreeMap::new(),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn model(&self) -> &Arc<ManifoldModel> {
        &self.model
    }

    fn block_cols(&self, deg: usize) -> usize {
        self.group.order() * self.model.degree_component(deg).len()
    }

    /// Dense row of the degree-`deg` part of `x` over the block columns.
    fn encode(&self, x: &GroupRingElement, deg: usize) -> Vec<Scalar> {
        let comp_len = self.model.degree_component(deg).len();
        let mut row = vec![Scalar::zero(); self.block_cols(deg)];
        for (g, class) in x.terms() {
            for (v, s) in class.component(deg).dense_component(deg).into_iter().enumerate() {
                if !s.is_zero() {
                    row[g * comp_len + v] = s;
                }
            }
        }
        row
    }

    fn decode(&self, deg: usize, row: &[Scalar]) -> GroupRingElement {
        let comp = self.model.degree_component(deg);
        let comp_len = comp.len();
        let mut acc = GroupRingElement::zero(&self.group, &self.model);
        for g in 0..self.group.order() {
            let class = CohClass::from_sparse(
                &self.model,
                (0..comp_len).filter_map(|v| {
                    let s = &row[g * comp_len + v];
                    (!s.is_zero()).then(|| (comp[v], s.clone()))
                }),
            );
            if !class.is_zero() {
                acc = acc
                    .add(&GroupRingElement::term(&self.group, class, g))
                    .expect("same model");
            }
        }
        acc
    }

    /// Inserts a homogeneous element, maintaining reduced echelon form.
    /// Returns true when the rank grew.
    fn insert(&mut self, x: &GroupRingElement, word: &str) -> Result<bool> {
        if x.is_zero() {
            return Ok(false);
        }
        let deg = x
            .homogeneous_degree()
            .ok_or_else(|| Error::InvalidInput(format!("`{word}` is not homogeneous")))?;
        let cols = self.block_cols(deg);
        if cols == 0 {
            return Err(Error::InvalidInput(format!(
                "`{word}` has degree {deg}, absent from the ambient ring"
            )));
        }
        let mut row = self.encode(x, deg);
        let block = self.blocks.entry(deg).or_insert_with(|| DegreeBlock {
            echelon: QMatrix::empty(cols),
            words: Vec::new(),
        });
        // reduce by existing rows
        for r in 0..block.echelon.rows() {
            let pivot = block
                .echelon
                .row(r)
                .iter()
                .position(|s| !s.is_zero())
                .expect("no zero rows stored");
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for c in 0..cols {
                    let v = &row[c] - &factor * block.echelon.get(r, c);
                    row[c] = v;
                }
            }
        }
        let Some(lead) = row.iter().position(|s| !s.is_zero()) else {
            return Ok(false);
        };
        let inv = row[lead].clone().recip();
        for c in row.iter_mut() {
            if !c.is_zero() {
                *c = &*c * &inv;
            }
        }
        // eliminate the new pivot from existing rows
        for r in 0..block.echelon.rows() {
            let factor = block.echelon.get(r, lead).clone();
            if factor.is_zero() {
                continue;
            }
            for c in 0..cols {
                let v = block.echelon.get(r, c) - &factor * &row[c];
                block.echelon.set(r, c, v);
            }
        }
        // keep rows sorted by pivot column
        let at = (0..block.echelon.rows())
            .find(|&r| {
                block
                    .echelon
                    .row(r)
                    .iter()
                    .position(|s| !s.is_zero())
                    .expect("no zero rows")
                    > lead
            })
            .unwrap_or(block.echelon.rows());
        let mut rows: Vec<Vec<Scalar>> = block.echelon.iter_rows().map(|r| r.to_vec()).collect();
        rows.insert(at, row);
        block.words.insert(at, word.to_string());
        block.echelon = QMatrix::from_rows(rows)?;
        Ok(true)
    }

    /// Total dimension.
    pub fn total_dim(&self) -> usize {
        self.blocks.values().map(|b| b.echelon.rows()).sum()
    }

    /// Dimension per total degree.
    pub fn dims_by_degree(&self) -> BTreeMap<usize, usize> {
        self.blocks
            .iter()
            .map(|(d, b)| (*d, b.echelon.rows()))
            .collect()
    }

    /// Stored basis in (degree, row) order, decoded with provenance words.
    pub fn basis_elements(&self) -> Vec<(String, GroupRingElement)> {
        let mut out = Vec::new();
        for (deg, block) in &self.blocks {
            for r in 0..block.echelon.rows() {
                out.push((
                    block.words[r].clone(),
                    self.decode(*deg, block.echelon.row(r)),
                ));
            }
        }
        out
    }

    /// Coordinates of `x` over the stored basis (in `basis_elements` order),
    /// or `None` when `x` lies outside the subspace.
    pub fn member(&self, x: &GroupRingElement) -> Result<Option<Vec<Scalar>>> {
        let mut degrees: Vec<usize> = Vec::new();
        for (_, class) in x.terms() {
            for d in class.degrees() {
                if !degrees.contains(&d) {
                    degrees.push(d);
                }
            }
        }
        let mut per_degree: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        for deg in degrees {
            let row = self.encode(x, deg);
            match self.blocks.get(&deg) {
                None => return Ok(None),
                Some(block) => {
                    match crate::exactalg::coords_in_span(&block.echelon, &row)? {
                        None => return Ok(None),
                        Some(c) => {
                            per_degree.insert(deg, c);
                        }
                    }
                }
            }
        }
        // assemble coordinates over the full basis enumeration
        let mut out = Vec::with_capacity(self.total_dim());
        for (deg, block) in &self.blocks {
            match per_degree.get(deg) {
                Some(c) => out.extend(c.iter().cloned()),
                None => out.extend(std::iter::repeat_n(Scalar::zero(), block.echelon.rows())),
            }
        }
        Ok(Some(out))
    }
}

/// One row of the dimension table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimsRow {
    /// Group element index, or `None` for rows mixing conjugate elements.
    pub g: Option<usize>,
    pub label: String,
    /// (degree, dimension) for every even degree of the ambient ring.
    pub dims: Vec<(usize, usize)>,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimsTable {
    pub rows: Vec<DimsRow>,
    pub total: usize,
}

/// Graded dimensions per group element (plus a mixed bucket when echelon
/// rows span several conjugate elements), in group-element and degree order.
pub fn dims_table(s: &GradedSubspace) -> DimsTable {
    let degrees: Vec<usize> = s.model.degrees().collect();
    let comp_len = |deg: usize| s.model.degree_component(deg).len();
    let order = s.group.order();
    let mut counts: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    let mut mixed: BTreeMap<usize, usize> = BTreeMap::new();
    for (deg, block) in &s.blocks {
        let len = comp_len(*deg);
        for r in 0..block.echelon.rows() {
            let row = block.echelon.row(r);
            let supports: Vec<usize> = (0..order)
                .filter(|g| (0..len).any(|v| !row[g * len + v].is_zero()))
                .collect();
            match supports.as_slice() {
                [g] => *counts.entry(*g).or_default().entry(*deg).or_insert(0) += 1,
                _ => *mixed.entry(*deg).or_insert(0) += 1,
            }
        }
    }
    let mut rows = Vec::new();
    let mut total = 0;
    for g in 0..order {
        let by_deg = counts.get(&g);
        let dims: Vec<(usize, usize)> = degrees
            .iter()
            .map(|d| (*d, by_deg.and_then(|m| m.get(d)).copied().unwrap_or(0)))
            .collect();
        let sub: usize = dims.iter().map(|(_, c)| c).sum();
        total += sub;
        rows.push(DimsRow {
            g: Some(g),
            label: s.group.name(g).to_string(),
            dims,
            total: sub,
        });
    }
    if !mixed.is_empty() {
        let dims: Vec<(usize, usize)> = degrees
            .iter()
            .map(|d| (*d, mixed.get(d).copied().unwrap_or(0)))
            .collect();
        let sub: usize = dims.iter().map(|(_, c)| c).sum();
        total += sub;
        rows.push(DimsRow {
            g: None,
            label: "(mixed)".to_string(),
            dims,
            total: sub,
        });
    }
    DimsTable { rows, total }
}

/// Closes a spanning set under right multiplication by the generators.
/// Elements must be homogeneous; the unit is always included.
pub fn close_from_elements(
    group: &Arc<FiniteGroup>,
    model: &Arc<ManifoldModel>,
    elems: &[(String, GroupRingElement)],
) -> Result<GradedSubspace> {
    let mut s = GradedSubspace::new(group.clone(), model.clone());
    s.insert(&GroupRingElement::unit(group, model), "1")?;
    for (label, e) in elems {
        s.insert(e, label)?;
    }
    loop {
        let basis = s.basis_elements();
        let mut grew = false;
        for (word, b) in &basis {
            for (label, gen) in elems {
                let prod = b.mul(gen)?;
                if prod.is_zero() {
                    continue;
                }
                if s.insert(&prod, &format!("{word}·{label}"))? {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    // full-closure certificate: products of stored basis pairs stay inside
    let basis = s.basis_elements();
    for (_, a) in &basis {
        for (_, b) in &basis {
            if s.member(&a.mul(b)?)?.is_none() {
                return Err(Error::ProductEscapesSubspace);
            }
        }
    }
    Ok(s)
}

/// Saturates a validated generator set into the subring it generates.
pub fn close_subring(gens: &GeneratorSet) -> Result<GradedSubspace> {
    gens.validate()?;
    let elems: Vec<(String, GroupRingElement)> = gens
        .gens
        .iter()
        .map(|g| (g.label.clone(), g.element.clone()))
        .collect();
    close_from_elements(&gens.group, &gens.model, &elems)
}

/// Checks that the subspace is stable under every group element's action.
pub fn check_g_stability(s: &GradedSubspace, act: &CohAction) -> Result<bool> {
    for (_, b) in s.basis_elements() {
        for h in 0..s.group.order() {
            if s.member(&b.acted(h, act))?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reynolds projection of a G-stable subspace; the result is again closed
/// under multiplication (certified).
pub fn invariant_subring(s: &GradedSubspace, act: &CohAction) -> Result<GradedSubspace> {
    if !check_g_stability(s, act)? {
        return Err(Error::NotGStable);
    }
    let mut inv = GradedSubspace::new(s.group.clone(), s.model.clone());
    for (word, b) in s.basis_elements() {
        let r = b.reynolds(act);
        if !r.is_zero() {
            inv.insert(&r, &format!("R({word})"))?;
        }
    }
    let basis = inv.basis_elements();
    for (_, a) in &basis {
        for (_, b) in &basis {
            if inv.member(&a.mul(b)?)?.is_none() {
                return Err(Error::ProductEscapesSubspace);
            }
        }
    }
    Ok(inv)
}

/// All pairwise products of the stored basis expanded over the basis, with
/// an integrality audit.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    pub basis_words: Vec<String>,
    /// (i, j, coordinates of basis_i · basis_j).
    pub entries: Vec<(usize, usize, Vec<Scalar>)>,
    pub integral: bool,
    /// (i, j, coefficient) for every non-integer coefficient found.
    pub non_integral: Vec<(usize, usize, Scalar)>,
}

pub fn structure_constants(s: &GradedSubspace) -> Result<StructureConstants> {
    let basis = s.basis_elements();
    let mut entries = Vec::new();
    let mut non_integral = Vec::new();
    for (i, (_, a)) in basis.iter().enumerate() {
        for (j, (_, b)) in basis.iter().enumerate() {
            let prod = a.mul(b)?;
            let coords = s
                .member(&prod)?
                .ok_or(Error::ProductEscapesSubspace)?;
            for c in &coords {
                if !is_integer(c) {
                    non_integral.push((i, j, c.clone()));
                }
            }
            if coords.iter().any(|c| !c.is_zero()) {
                entries.push((i, j, coords));
            }
        }
    }
    Ok(StructureConstants {
        basis_words: basis.into_iter().map(|(w, _)| w).collect(),
        integral: non_integral.is_empty(),
        entries,
        non_integral,
    })
}

/// Coefficient ring a presentation is asserted over. `Integers` adds an
/// integrality requirement on the subring's structure constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoefficientTag {
    Integers,
    Rationals,
}

/// Generators-and-relations candidate for a commutative graded ring.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    /// (name, even degree ≥ 2).
    pub generators: Vec<(String, usize)>,
    pub relations: Vec<PolyRelation>,
    pub coefficients: Option<CoefficientTag>,
}

/// Polynomial in the presentation's generators: Σ coef · Π gen_i^{e_i}.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRelation {
    pub terms: Vec<(Scalar, Vec<u32>)>,
}

impl Presentation {
    pub fn validate(&self) -> Result<()> {
        for (name, deg) in &self.generators {
            if *deg == 0 || deg % 2 != 0 {
                return Err(Error::OddDegree {
                    name: name.clone(),
                    deg: *deg,
                });
            }
        }
        for (i, r) in self.relations.iter().enumerate() {
            if r.terms.is_empty() {
                return Err(Error::InvalidInput(format!("relation {i} is empty")));
            }
            let deg = self.term_degree(&r.terms[0].1);
            for (c, exps) in &r.terms {
                if c.is_zero() {
                    return Err(Error::InvalidInput(format!(
                        "relation {i} has a zero coefficient term"
                    )));
                }
                if exps.len() != self.generators.len() {
                    return Err(Error::DimensionMismatch(format!(
                        "relation {i} exponent vector length"
                    )));
                }
                if self.term_degree(exps) != deg {
                    return Err(Error::InvalidInput(format!(
                        "relation {i} is not homogeneous"
                    )));
                }
            }
        }
        Ok(())
    }

    fn term_degree(&self, exps: &[u32]) -> usize {
        exps.iter()
            .zip(&self.generators)
            .map(|(e, (_, d))| *e as usize * d)
            .sum()
    }

    pub fn relation_degree(&self, r: &PolyRelation) -> usize {
        self.term_degree(&r.terms[0].1)
    }

    pub fn render_relation(&self, r: &PolyRelation) -> String {
        let mut out = String::new();
        for (k, (c, exps)) in r.terms.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = exps
                .iter()
                .zip(&self.generators)
                .filter(|(e, _)| **e > 0)
                .map(|(e, (n, _))| {
                    if *e == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&format_scalar(&mag));
            } else {
                if !mag.is_one() {
                    out.push_str(&format_scalar(&mag));
                    out.push(' ');
                }
                out.push_str(&mono.join(" "));
            }
        }
        out
    }
}

fn monomials_of_degree(degs: &[usize], d: usize) -> Vec<Vec<u32>> {
    fn rec(degs: &[usize], d: usize, idx: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == degs.len() {
            if d % degs[idx] == 0 {
                acc.push((d / degs[idx]) as u32);
                out.push(acc.clone());
                acc.pop();
            }
            return;
        }
        for e in 0..=(d / degs[idx]) {
            acc.push(e as u32);
            rec(degs, d - e * degs[idx], idx + 1, acc, out);
            acc.pop();
        }
    }
    if degs.is_empty() {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(degs, d, 0, &mut Vec::new(), &mut out);
    out
}

/// Exact graded dimensions of the abstract quotient ring, degree by degree:
/// dim_D = #monomials(D) − rank{relation × monomial of degree D}.
pub fn quotient_dims(p: &Presentation, up_to_degree: usize) -> Result<BTreeMap<usize, usize>> {
    p.validate()?;
    let degs: Vec<usize> = p.generators.iter().map(|(_, d)| *d).collect();
    let mut out = BTreeMap::new();
    for d in (0..=up_to_degree).step_by(2) {
        let monos = monomials_of_degree(&degs, d);
        if monos.is_empty() {
            out.insert(d, 0);
            continue;
        }
        let index: BTreeMap<Vec<u32>, usize> = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut span = QMatrix::empty(monos.len());
        for r in &p.relations {
            let rdeg = p.relation_degree(r);
            if rdeg > d {
                continue;
            }
            for m in monomials_of_degree(&degs, d - rdeg) {
                let mut row = vec![Scalar::zero(); monos.len()];
                for (c, exps) in &r.terms {
                    let combined: Vec<u32> =
                        exps.iter().zip(&m).map(|(a, b)| a + b).collect();
                    row[index[&combined]] += c;
                }
                span.push_row(row);
            }
        }
        let rank = crate::exactalg::rref(&span).rank;
        out.insert(d, monos.len() - rank);
    }
    Ok(out)
}

/// Outcome of verifying a presentation against a computed subring.
#[derive(Debug, Clone)]
pub struct PresentationReport {
    /// (rendered relation, evaluates to zero).
    pub relation_results: Vec<(String, bool)>,
    /// The assigned generators re-generate the whole subring.
    pub generates: bool,
    /// Graded dimensions of the abstract quotient match the subring.
    pub dims_match: bool,
    pub quotient_dims: BTreeMap<usize, usize>,
    pub subring_dims: BTreeMap<usize, usize>,
    /// Only set when the presentation is tagged as integral: the subring's
    /// structure constants all have denominator 1.
    pub integral_ok: Option<bool>,
    pub pass: bool,
}

/// Verifies a presentation: relations vanish under the assignment, the
/// assigned elements regenerate the subring, and the abstract quotient has
/// the same graded dimensions. Assigned elements must pairwise commute.
pub fn verify_presentation(
    s: &GradedSubspace,
    p: &Presentation,
    assignment: &BTreeMap<String, GroupRingElement>,
) -> Result<PresentationReport> {
    p.validate()?;
    let mut assigned = Vec::with_capacity(p.generators.len());
    for (name, deg) in &p.generators {
        let e = assignment.get(name).ok_or_else(|| {
            Error::InvalidInput(format!("no assignment for generator `{name}`"))
        })?;
        match e.homogeneous_degree() {
            Some(d) if d == *deg => {}
            Some(d) => {
                return Err(Error::DegreeMismatch {
                    name: name.clone(),
                    want: *deg,
                    got: d,
                })
            }
            None => {
                return Err(Error::InvalidInput(format!(
                    "assignment for `{name}` is not homogeneous"
                )))
            }
        }
        assigned.push((name.clone(), e.clone()));
    }
    for (_, a) in &assigned {
        for (_, b) in &assigned {
            if a.mul(b)? != b.mul(a)? {
                return Err(Error::NonCommutative);
            }
        }
    }

    // (a) relations vanish
    let mut relation_results = Vec::new();
    for r in &p.relations {
        let mut acc = GroupRingElement::zero(&s.group, &s.model);
        for (c, exps) in &r.terms {
            let mut term = GroupRingElement::unit(&s.group, &s.model);
            for ((_, e), exp) in assigned.iter().zip(exps) {
                term = term.mul(&e.pow(*exp as usize)?)?;
            }
            acc = acc.add(&term.scale(c))?;
        }
        relation_results.push((p.render_relation(r), acc.is_zero()));
    }

    // (b) the assignment regenerates the subring
    let reclosed = close_from_elements(&s.group, &s.model, &assigned)?;
    let mut generates = reclosed.dims_by_degree() == s.dims_by_degree();
    if generates {
        for (_, b) in reclosed.basis_elements() {
            if s.member(&b)?.is_none() {
                generates = false;
                break;
            }
        }
    }

    // (c) graded dimensions of the abstract quotient match; beyond the
    // ambient top degree the quotient must vanish (checked one generator
    // degree further, which forces vanishing everywhere above)
    let cap = s.model.dim();
    let max_gen_deg = p.generators.iter().map(|(_, d)| *d).max().unwrap_or(0);
    let qdims = quotient_dims(p, cap + max_gen_deg)?;
    let sdims = s.dims_by_degree();
    let mut dims_match = true;
    for (d, q) in &qdims {
        let have = if *d <= cap {
            sdims.get(d).copied().unwrap_or(0)
        } else {
            0
        };
        if *q != have {
            dims_match = false;
        }
    }

    // an integral presentation also asserts integral structure constants
    let integral_ok = match p.coefficients {
        Some(CoefficientTag::Integers) => Some(structure_constants(s)?.integral),
        _ => None,
    };

    let pass = relation_results.iter().all(|(_, ok)| *ok)
        && generates
        && dims_match
        && integral_ok.unwrap_or(true);
    Ok(PresentationReport {
        relation_results,
        generates,
        dims_match,
        quotient_dims: qdims,
        subring_dims: sdims,
        integral_ok,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{frac, int};
    use crate::group::DEFAULT_GROUP_CAP;
    use crate::inertia::build_scenario_cpn_zp;
    use crate::symprod::{generators_general, SymmetricProduct};

    fn cp1_sq_setup() -> (SymmetricProduct, GradedSubspace) {
        let sym = SymmetricProduct::new(&ManifoldModel::cp(1), 2, DEFAULT_GROUP_CAP).unwrap();
        let s = close_subring(&sym.generators().unwrap()).unwrap();
        (sym, s)
    }

    fn tuple_class(model: &Arc<ManifoldModel>, t: &[usize]) -> CohClass {
        CohClass::basis(model, model.tensor_structure().unwrap().index_of(t).unwrap())
    }

    fn cp1_sq_named(sym: &SymmetricProduct) -> (GroupRingElement, GroupRingElement, GroupRingElement, GroupRingElement) {
        let g = sym.group().clone();
        let m = sym.ambient().clone();
        let tau = g.transposition(1, 2).unwrap();
        let x = GroupRingElement::term(&g, tuple_class(&m, &[1, 0]), 0);
        let y = GroupRingElement::term(&g, tuple_class(&m, &[0, 1]), 0);
        let u = GroupRingElement::term(
            &g,
            tuple_class(&m, &[1, 0]).add(&tuple_class(&m, &[0, 1])).unwrap(),
            tau,
        );
        let xy = GroupRingElement::term(&g, tuple_class(&m, &[1, 1]), 0);
        (x, y, u, xy)
    }

    #[test]
    fn closure_cp1_squared_dims() {
        let (_, s) = cp1_sq_setup();
        assert_eq!(s.total_dim(), 6);
        let table = dims_table(&s);
        assert_eq!(table.total, 6);
        assert_eq!(table.rows[0].dims, vec![(0, 1), (2, 2), (4, 1)], "1_G block");
        assert_eq!(table.rows[1].dims, vec![(0, 0), (2, 1), (4, 1)], "τ block");
    }

    #[test]
    fn closure_unit_only() {
        let m = ManifoldModel::cp(1);
        let g = FiniteGroup::cyclic(2, DEFAULT_GROUP_CAP).unwrap();
        let s = close_from_elements(&g, &m, &[]).unwrap();
        assert_eq!(s.total_dim(), 1);
        assert_eq!(dims_table(&s).rows[0].dims[0], (0, 1));
    }

    #[test]
    fn closure_cpn_zp_dims() {
        for (n, p) in [(2usize, 3usize), (3, 5)] {
            let sc = build_scenario_cpn_zp(n, p, false, DEFAULT_GROUP_CAP).unwrap();
            let s = close_subring(&generators_general(&sc).unwrap()).unwrap();
            let table = dims_table(&s);
            assert_eq!(table.rows[0].total, n + 1, "1_G carries all of H*(CP^n)");
            for g in 1..p {
                assert_eq!(table.rows[g].total, n, "λ^{g} misses only degree 0");
                assert_eq!(table.rows[g].dims[0], (0, 0), "degree 0 only at 1_G");
            }
            // image at λ^i is span{x, …, x^n}
            let x = CohClass::basis(sc.ambient(), 1);
            for g in 1..p {
                for a in 1..=n {
                    let mut cls = CohClass::unit(sc.ambient());
                    for _ in 0..a {
                        cls = cls.mul(&x).unwrap();
                    }
                    let e = GroupRingElement::term(sc.group(), cls, g);
                    assert!(s.member(&e).unwrap().is_some(), "x^{a} at λ^{g}");
                }
                let one = GroupRingElement::term(sc.group(), CohClass::unit(sc.ambient()), g);
                assert!(s.member(&one).unwrap().is_none(), "1 at λ^{g} is outside");
            }
        }
    }

    #[test]
    fn membership_examples() {
        let (sym, s) = cp1_sq_setup();
        let (x, _, _, xy) = cp1_sq_named(&sym);
        assert!(s.member(&xy).unwrap().is_some());
        // x1 alone at τ is not in the image (only x1+x2 and x1x2 are)
        let tau = sym.group().transposition(1, 2).unwrap();
        let x1_tau = GroupRingElement::term(
            &sym.group().clone(),
            tuple_class(sym.ambient(), &[1, 0]),
            tau,
        );
        assert!(s.member(&x1_tau).unwrap().is_none());
        let zero = GroupRingElement::zero(sym.group(), sym.ambient());
        let coords = s.member(&zero).unwrap().unwrap();
        assert!(coords.iter().all(Scalar::is_zero));
        drop(x);
    }

    #[test]
    fn generator_order_invariance() {
        let sym = SymmetricProduct::new(&ManifoldModel::cp(1), 2, DEFAULT_GROUP_CAP).unwrap();
        let gens = sym.generators().unwrap();
        let mut reversed = gens.clone();
        reversed.gens.reverse();
        let a = dims_table(&close_subring(&gens).unwrap());
        let b = dims_table(&close_subring(&reversed).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn image_is_g_stable_and_invariants_have_dim_5() {
        let (sym, s) = cp1_sq_setup();
        let act = sym.action().unwrap();
        assert!(check_g_stability(&s, &act).unwrap());
        let inv = invariant_subring(&s, &act).unwrap();
        assert_eq!(inv.total_dim(), 5);
        let table = dims_table(&inv);
        assert_eq!(table.rows[0].dims, vec![(0, 1), (2, 1), (4, 1)]);
        assert_eq!(table.rows[1].dims, vec![(0, 0), (2, 1), (4, 1)]);

        // w² = u² and u·w = 2(x1x2·τ), exactly
        let (_, _, u, xy) = cp1_sq_named(&sym);
        let w = GroupRingElement::term(
            sym.group(),
            tuple_class(sym.ambient(), &[1, 0])
                .add(&tuple_class(sym.ambient(), &[0, 1]))
                .unwrap(),
            0,
        );
        assert_eq!(u.mul(&u).unwrap(), w.mul(&w).unwrap());
        assert_eq!(u.mul(&u).unwrap(), xy.scale(&int(2)));
        let tau = sym.group().transposition(1, 2).unwrap();
        let xy_tau = GroupRingElement::term(
            sym.group(),
            tuple_class(sym.ambient(), &[1, 1]).scale(&int(2)),
            tau,
        );
        assert_eq!(u.mul(&w).unwrap(), xy_tau);
        assert!(inv.member(&u).unwrap().is_some());
        assert!(inv.member(&w).unwrap().is_some());
    }

    #[test]
    fn invariants_trivial_cases() {
        // trivial group: the Reynolds operator is the identity
        let m = ManifoldModel::cp(2);
        let g = FiniteGroup::cyclic(1, DEFAULT_GROUP_CAP).unwrap();
        let gens: Vec<(String, GroupRingElement)> = (0..m.len())
            .map(|i| {
                (
                    m.basis()[i].name.clone(),
                    GroupRingElement::term(&g, CohClass::basis(&m, i), 0),
                )
            })
            .collect();
        let s = close_from_elements(&g, &m, &gens).unwrap();
        let act = CohAction::trivial(&g, &m);
        let inv = invariant_subring(&s, &act).unwrap();
        assert_eq!(dims_table(&inv), dims_table(&s));

        // cpn_zp: abelian conjugation and trivial action leave s unchanged
        let sc = build_scenario_cpn_zp(2, 3, false, DEFAULT_GROUP_CAP).unwrap();
        let s = close_subring(&generators_general(&sc).unwrap()).unwrap();
        let inv = invariant_subring(&s, sc.action()).unwrap();
        assert_eq!(dims_table(&inv), dims_table(&s));
    }

    #[test]
    fn structure_constants_cp1_squared() {
        let (sym, s) = cp1_sq_setup();
        let sc = structure_constants(&s).unwrap();
        assert!(sc.integral);
        // u·u = 2·(x1x2 at 1_G): locate u and x1x2 in the basis enumeration
        let basis = s.basis_elements();
        let (_, _, u, xy) = cp1_sq_named(&sym);
        let iu = basis.iter().position(|(_, b)| *b == u).unwrap();
        let ixy = basis.iter().position(|(_, b)| *b == xy).unwrap();
        let (_, _, coords) = sc
            .entries
            .iter()
            .find(|(i, j, _)| *i == iu && *j == iu)
            .unwrap();
        assert_eq!(coords[ixy], int(2));
        assert!(coords
            .iter()
            .enumerate()
            .all(|(k, c)| k == ixy || c.is_zero()));
        // the unit row reproduces the basis
        let iunit = basis
            .iter()
            .position(|(_, b)| *b == GroupRingElement::unit(sym.group(), sym.ambient()))
            .unwrap();
        for (j, (_, b)) in basis.iter().enumerate() {
            let row = sc.entries.iter().find(|(i, jj, _)| *i == iunit && *jj == j);
            let coords = s.member(b).unwrap().unwrap();
            match row {
                Some((_, _, r)) => assert_eq!(*r, coords),
                None => assert!(b.is_zero()),
            }
        }
    }

    fn cp1_sq_presentation() -> Presentation {
        Presentation {
            generators: vec![("x".into(), 2), ("y".into(), 2), ("u".into(), 2)],
            relations: vec![
                PolyRelation {
                    terms: vec![(int(1), vec![2, 0, 0])],
                },
                PolyRelation {
                    terms: vec![(int(1), vec![0, 2, 0])],
                },
                PolyRelation {
                    terms: vec![(int(1), vec![0, 0, 2]), (int(-2), vec![1, 1, 0])],
                },
                PolyRelation {
                    terms: vec![(int(1), vec![1, 0, 1]), (int(-1), vec![0, 1, 1])],
                },
            ],
            coefficients: Some(CoefficientTag::Integers),
        }
    }

    #[test]
    fn quotient_dims_examples() {
        let p = cp1_sq_presentation();
        let dims = quotient_dims(&p, 8).unwrap();
        assert_eq!(
            dims,
            BTreeMap::from([(0, 1), (2, 3), (4, 2), (6, 0), (8, 0)])
        );

        let inv = Presentation {
            generators: vec![("w".into(), 2), ("u".into(), 2)],
            relations: vec![
                PolyRelation {
                    terms: vec![(int(1), vec![3, 0])],
                },
                PolyRelation {
                    terms: vec![(int(1), vec![0, 3])],
                },
                PolyRelation {
                    terms: vec![(int(1), vec![0, 2]), (int(-1), vec![2, 0])],
                },
            ],
            coefficients: None,
        };
        assert_eq!(
            quotient_dims(&inv, 6).unwrap(),
            BTreeMap::from([(0, 1), (2, 2), (4, 2), (6, 0)])
        );

        let free = Presentation {
            generators: vec![("a".into(), 2)],
            relations: vec![],
            coefficients: None,
        };
        assert_eq!(
            quotient_dims(&free, 4).unwrap(),
            BTreeMap::from([(0, 1), (2, 1), (4, 1)])
        );
    }

    #[test]
    fn verify_presentation_cp1_squared() {
        let (sym, s) = cp1_sq_setup();
        let (x, y, u, _) = cp1_sq_named(&sym);
        let p = cp1_sq_presentation();
        let assignment = BTreeMap::from([
            ("x".to_string(), x),
            ("y".to_string(), y),
            ("u".to_string(), u),
        ]);
        let report = verify_presentation(&s, &p, &assignment).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.relation_results.iter().all(|(_, ok)| *ok));
        assert!(report.generates);
        assert!(report.dims_match);
    }

    #[test]
    fn verify_presentation_invariants() {
        let (sym, s) = cp1_sq_setup();
        let act = sym.action().unwrap();
        let inv = invariant_subring(&s, &act).unwrap();
        let (_, _, u, _) = cp1_sq_named(&sym);
        let w = GroupRingElement::term(
            sym.group(),
            tuple_class(sym.ambient(), &[1, 0])
                .add(&tuple_class(sym.ambient(), &[0, 1]))
                .unwrap(),
            0,
        );
        let p = Presentation {
            generators: vec![("w".into(), 2), ("u".into(), 2)],
            relations: vec![
                PolyRelation {
                    terms: vec![(int(1), vec![3, 0])],
                },
                PolyRelation {
                    terms: vec![(int(1), vec![0, 3])],
                },
                PolyRelation {
                    terms: vec![(int(1), vec![0, 2]), (int(-1), vec![2, 0])],
                },
            ],
            coefficients: Some(CoefficientTag::Rationals),
        };
        let assignment = BTreeMap::from([("w".to_string(), w), ("u".to_string(), u)]);
        let report = verify_presentation(&inv, &p, &assignment).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn verify_presentation_negative_control() {
        let (sym, s) = cp1_sq_setup();
        let (x, y, u, _) = cp1_sq_named(&sym);
        let mut p = cp1_sq_presentation();
        // u² − 3xy instead of u² − 2xy
        p.relations[2] = PolyRelation {
            terms: vec![(int(1), vec![0, 0, 2]), (int(-3), vec![1, 1, 0])],
        };
        let assignment = BTreeMap::from([
            ("x".to_string(), x),
            ("y".to_string(), y),
            ("u".to_string(), u),
        ]);
        let report = verify_presentation(&s, &p, &assignment).unwrap();
        assert!(!report.pass);
        let failing = report
            .relation_results
            .iter()
            .find(|(_, ok)| !ok)
            .map(|(r, _)| r.clone())
            .unwrap();
        assert!(failing.contains("u^2"), "{failing}");
    }

    #[test]
    fn verify_presentation_degree_mismatch() {
        let (sym, s) = cp1_sq_setup();
        let (x, y, _, xy) = cp1_sq_named(&sym);
        let p = cp1_sq_presentation();
        let assignment = BTreeMap::from([
            ("x".to_string(), x),
            ("y".to_string(), y),
            ("u".to_string(), xy), // degree 4, declared 2
        ]);
        assert!(matches!(
            verify_presentation(&s, &p, &assignment),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn noncommuting_assignment_rejected() {
        // x1·(1 2 3) and x1·(1 2) do not commute in the S₃ group ring
        let sym = SymmetricProduct::new(&ManifoldModel::cp(1), 3, DEFAULT_GROUP_CAP).unwrap();
        let s = close_subring(&sym.generators().unwrap()).unwrap();
        let g = sym.group().clone();
        let a = GroupRingElement::term(
            &g,
            CohClass::unit(sym.ambient()),
            g.index_of_perm(&[1, 2, 0]).unwrap(),
        );
        let b = GroupRingElement::term(
            &g,
            CohClass::unit(sym.ambient()),
            g.transposition(1, 2).unwrap(),
        );
        let p = Presentation {
            generators: vec![("a".into(), 2), ("b".into(), 2)],
            relations: vec![],
            coefficients: None,
        };
        // degree checks run first, so give them degree-2 coefficients whose
        // product is nonzero
        let x1 = tuple_class(sym.ambient(), &[1, 0, 0]);
        let x2 = tuple_class(sym.ambient(), &[0, 1, 0]);
        let a = a.mul(&GroupRingElement::term(&g, x1, 0)).unwrap();
        let b = b.mul(&GroupRingElement::term(&g, x2, 0)).unwrap();
        let assignment = BTreeMap::from([("a".to_string(), a), ("b".to_string(), b)]);
        assert!(matches!(
            verify_presentation(&s, &p, &assignment),
            Err(Error::NonCommutative)
        ));
    }

    #[test]
    fn closure_fixpoint_certificate() {
        let (sym, s) = cp1_sq_setup();
        let gens = sym.generators().unwrap();
        for (_, b) in s.basis_elements() {
            for g in &gens.gens {
                assert!(s.member(&b.mul(&g.element).unwrap()).unwrap().is_some());
            }
        }
    }

    #[test]
    fn reynolds_scaling_keeps_rationals_canonical() {
        assert_eq!(frac(2, 4), frac(1, 2));
    }
}
