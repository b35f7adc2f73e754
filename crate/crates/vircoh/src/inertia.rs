//! Direct evaluation of the virtual product on inertia data.
//!
//! An [`InertiaScenario`] records, for every group element, the fixed
//! components with their pushforward/pullback matrices, and for every pair of
//! components the intersection data: restriction matrices, the excess Euler
//! class, and the pushforward into the product sector. The virtual product is
//!
//! ```text
//! (α, g)·(β, h) = ( Σ over intersections i_{gh!}(i_g*α · i_h*β · e), gh )
//! ```
//!
//! Excess classes are scenario data, not derived from geometry; the two
//! built-in fixtures pin them by identities the computation then re-verifies
//! (the homomorphism check against the group ring, and associativity).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{int, non_integral, QMatrix, Scalar};
use crate::graded::{same_model, CohClass, ManifoldModel};
use crate::group::{CohAction, FiniteGroup, GroupRingElement};

/// One connected component of a fixed-point set Y^g.
#[derive(Debug, Clone)]
pub struct FixedComponent {
    pub g: usize,
    pub id: String,
    pub ring: Arc<ManifoldModel>,
    /// Manifold dimension of the component.
    pub dim: usize,
    ambient: Arc<ManifoldModel>,
    /// f_!: rows over the component basis, columns over the ambient basis.
    pub push: QMatrix,
    /// f*: rows over the ambient basis, columns over the component basis.
    pub pull: QMatrix,
}

impl FixedComponent {
    pub fn new(
        g: usize,
        id: impl Into<String>,
        ring: Arc<ManifoldModel>,
        ambient: Arc<ManifoldModel>,
        push: QMatrix,
        pull: QMatrix,
    ) -> FixedComponent {
        let dim = ring.dim();
        FixedComponent {
            g,
            id: id.into(),
            ring,
            dim,
            ambient,
            push,
            pull,
        }
    }

    pub fn codim(&self) -> usize {
        self.ambient.dim() - self.dim
    }

    /// f_! applied to a class on the component.
    pub fn pushforward_class(&self, c: &CohClass) -> Result<CohClass> {
        if !same_model(c.model(), &self.ring) {
            return Err(Error::ModelMismatch);
        }
        let mut row = vec![Scalar::zero(); self.ring.len()];
        for (k, s) in c.coeffs() {
            row[k] = s.clone();
        }
        let out = self.push.apply_row(&row)?;
        Ok(CohClass::from_sparse(
            &self.ambient,
            out.into_iter().enumerate().filter(|(_, s)| !s.is_zero()),
        ))
    }

    /// f* applied to an ambient class.
    pub fn pullback_class(&self, c: &CohClass) -> Result<CohClass> {
        if !same_model(c.model(), &self.ambient) {
            return Err(Error::ModelMismatch);
        }
        let mut row = vec![Scalar::zero(); self.ambient.len()];
        for (k, s) in c.coeffs() {
            row[k] = s.clone();
        }
        let out = self.pull.apply_row(&row)?;
        Ok(CohClass::from_sparse(
            &self.ring,
            out.into_iter().enumerate().filter(|(_, s)| !s.is_zero()),
        ))
    }

    fn validate(&self) -> Result<()> {
        if self.push.rows() != self.ring.len()
            || self.push.cols() != self.ambient.len()
            || self.pull.rows() != self.ambient.len()
            || self.pull.cols() != self.ring.len()
        {
            return Err(Error::DimensionMismatch(format!(
                "matrix shapes for component `{}`",
                self.id
            )));
        }
        if self.dim > self.ambient.dim() || (self.ambient.dim() - self.dim) % 2 != 0 {
            return Err(Error::BadModel(format!(
                "component `{}` has odd or negative codimension",
                self.id
            )));
        }
        let shift = self.codim();
        // push raises degree by the codimension; pull preserves degree
        for a in 0..self.ring.len() {
            let deg = self.ring.basis()[a].deg;
            for b in 0..self.ambient.len() {
                if !self.push.get(a, b).is_zero() && self.ambient.basis()[b].deg != deg + shift {
                    return Err(Error::BadModel(format!(
                        "pushforward of component `{}` does not shift degree by {shift}",
                        self.id
                    )));
                }
            }
        }
        for b in 0..self.ambient.len() {
            let deg = self.ambient.basis()[b].deg;
            for a in 0..self.ring.len() {
                if !self.pull.get(b, a).is_zero() && self.ring.basis()[a].deg != deg {
                    return Err(Error::BadModel(format!(
                        "pullback of component `{}` does not preserve degree",
                        self.id
                    )));
                }
            }
        }
        // projection formula f_!(f*b · a) = b · f_!a on basis pairs
        for b in 0..self.ambient.len() {
            let bc = CohClass::basis(&self.ambient, b);
            let pulled = self.pullback_class(&bc)?;
            for a in 0..self.ring.len() {
                let ac = CohClass::basis(&self.ring, a);
                let lhs = self.pushforward_class(&pulled.mul(&ac)?)?;
                let rhs = bc.mul(&self.pushforward_class(&ac)?)?;
                if lhs != rhs {
                    return Err(Error::BadModel(format!(
                        "projection formula fails for component `{}`",
                        self.id
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One connected component of an intersection Y^g ∩ Y^h.
#[derive(Debug, Clone)]
pub struct IntersectionComponent {
    pub ring: Arc<ManifoldModel>,
    /// Manifold dimension of the intersection component.
    pub dim: usize,
    /// i_g*: rows over the Y^g-component basis, columns over this ring.
    pub ig: QMatrix,
    /// i_h*: rows over the Y^h-component basis, columns over this ring.
    pub ih: QMatrix,
    /// Excess Euler class e(Y, Y^g, Y^h) on this component.
    pub euler: CohClass,
    /// Component of Y^{gh} receiving the pushforward.
    pub target: String,
    /// i_{gh!}: rows over this ring, columns over the target component basis.
    pub ipush: QMatrix,
}

/// Intersection data for one ordered pair of fixed components; an empty list
/// means the components do not meet.
#[derive(Debug, Clone, Default)]
pub struct PairData {
    pub intersections: Vec<IntersectionComponent>,
}

impl PartialEq for FixedComponent {
    fn eq(&self, other: &Self) -> bool {
        self.g == other.g
            && self.id == other.id
            && self.dim == other.dim
            && *self.ring == *other.ring
            && self.push == other.push
            && self.pull == other.pull
    }
}

impl PartialEq for IntersectionComponent {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring
            && self.dim == other.dim
            && self.ig == other.ig
            && self.ih == other.ih
            && self.euler == other.euler
            && self.target == other.target
            && self.ipush == other.ipush
    }
}

impl PartialEq for PairData {
    fn eq(&self, other: &Self) -> bool {
        self.intersections == other.intersections
    }
}

/// How the group acts on the inertia data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    /// Identity on every component; conjugate sectors carry identically
    /// labelled components.
    Trivial,
    /// S₂ permuting the factors of a square M²: swaps the ambient factors,
    /// fixes the diagonal pointwise.
    PermuteFactors,
}

/// Full inertia-mode input: group, ambient ring, fixed components, pair data.
#[derive(Debug)]
pub struct InertiaScenario {
    group: Arc<FiniteGroup>,
    ambient: Arc<ManifoldModel>,
    action_kind: ActionKind,
    action: Arc<CohAction>,
    components: Vec<Vec<FixedComponent>>,
    pairs: BTreeMap<(usize, usize, String, String), PairData>,
}

impl PartialEq for InertiaScenario {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group
            && *self.ambient == *other.ambient
            && self.action_kind == other.action_kind
            && self.components == other.components
            && self.pairs == other.pairs
    }
}

impl InertiaScenario {
    /// Assembles and validates a scenario. `components` and `pairs` cover
    /// the nonidentity elements only: the identity sector (Y itself, with
    /// identity matrices) and every pair involving the identity are derived.
    pub fn assemble(
        group: Arc<FiniteGroup>,
        ambient: Arc<ManifoldModel>,
        action_kind: ActionKind,
        components: Vec<FixedComponent>,
        pairs: Vec<(usize, usize, String, String, Vec<IntersectionComponent>)>,
    ) -> Result<InertiaScenario> {
        let order = group.order();
        let mut per_elem: Vec<Vec<FixedComponent>> = vec![Vec::new(); order];
        let identity = FixedComponent::new(
            0,
            "Y",
            ambient.clone(),
            ambient.clone(),
            QMatrix::identity(ambient.len()),
            QMatrix::identity(ambient.len()),
        );
        per_elem[0].push(identity);
        for c in components {
            if c.g == 0 {
                return Err(Error::InvalidInput(
                    "the identity sector is derived automatically; do not supply it".into(),
                ));
            }
            if c.g >= order {
                return Err(Error::IndexOutOfRange(c.g));
            }
            if !same_model(&c.ambient, &ambient) {
                return Err(Error::ModelMismatch);
            }
            if per_elem[c.g].iter().any(|other| other.id == c.id) {
                return Err(Error::InvalidInput(format!(
                    "duplicate component id `{}` for {}",
                    c.id,
                    group.name(c.g)
                )));
            }
            per_elem[c.g].push(c);
        }
        for list in &per_elem {
            for c in list {
                c.validate()?;
            }
        }

        let mut pair_map: BTreeMap<(usize, usize, String, String), PairData> = BTreeMap::new();
        // derived pairs: anything involving the identity sector
        for (g, list) in per_elem.iter().enumerate() {
            for c in list {
                if g == 0 {
                    continue;
                }
                // (1, g): intersection is the component itself
                pair_map.insert(
                    (0, g, "Y".into(), c.id.clone()),
                    PairData {
                        intersections: vec![IntersectionComponent {
                            ring: c.ring.clone(),
                            dim: c.dim,
                            ig: c.pull.clone(),
                            ih: QMatrix::identity(c.ring.len()),
                            euler: CohClass::unit(&c.ring),
                            target: c.id.clone(),
                            ipush: QMatrix::identity(c.ring.len()),
                        }],
                    },
                );
                // (g, 1)
                pair_map.insert(
                    (g, 0, c.id.clone(), "Y".into()),
                    PairData {
                        intersections: vec![IntersectionComponent {
                            ring: c.ring.clone(),
                            dim: c.dim,
                            ig: QMatrix::identity(c.ring.len()),
                            ih: c.pull.clone(),
                            euler: CohClass::unit(&c.ring),
                            target: c.id.clone(),
                            ipush: QMatrix::identity(c.ring.len()),
                        }],
                    },
                );
            }
        }
        pair_map.insert(
            (0, 0, "Y".into(), "Y".into()),
            PairData {
                intersections: vec![IntersectionComponent {
                    ring: ambient.clone(),
                    dim: ambient.dim(),
                    ig: QMatrix::identity(ambient.len()),
                    ih: QMatrix::identity(ambient.len()),
                    euler: CohClass::unit(&ambient),
                    target: "Y".into(),
                    ipush: QMatrix::identity(ambient.len()),
                }],
            },
        );
        for (g, h, cg, ch, intersections) in pairs {
            if g == 0 || h == 0 {
                return Err(Error::InvalidInput(
                    "pairs involving the identity are derived automatically".into(),
                ));
            }
            pair_map.insert((g, h, cg, ch), PairData { intersections });
        }

        let action = match action_kind {
            ActionKind::Trivial => CohAction::trivial(&group, &ambient),
            ActionKind::PermuteFactors => CohAction::permute_factors(&group, &ambient)?,
        };

        let sc = InertiaScenario {
            group,
            ambient,
            action_kind,
            action,
            components: per_elem,
            pairs: pair_map,
        };
        sc.validate()?;
        Ok(sc)
    }

    fn validate(&self) -> Result<()> {
        if self.action_kind == ActionKind::PermuteFactors {
            let n_ok = self
                .ambient
                .tensor_structure()
                .is_some_and(|ts| ts.nfactors() == 2);
            if !n_ok || self.group.order() != 2 || self.group.perm_count() != Some(2) {
                return Err(Error::InvalidInput(
                    "permute_factors scenarios cover the S₂ square fixture".into(),
                ));
            }
        }
        // every nonidentity pair key present
        for g in 1..self.group.order() {
            for h in 1..self.group.order() {
                for cg in &self.components[g] {
                    for ch in &self.components[h] {
                        let key = (g, h, cg.id.clone(), ch.id.clone());
                        let Some(pd) = self.pairs.get(&key) else {
                            return Err(Error::MissingPairData {
                                g: self.group.name(g).to_string(),
                                h: self.group.name(h).to_string(),
                                cg: cg.id.clone(),
                                ch: ch.id.clone(),
                            });
                        };
                        for ic in &pd.intersections {
                            self.validate_intersection(g, h, cg, ch, ic)?;
                        }
                    }
                }
            }
        }
        // action must map sectors consistently
        for h in 0..self.group.order() {
            for g in 0..self.group.order() {
                for (ci, _) in self.components[g].iter().enumerate() {
                    self.sector_target(h, g, ci)?;
                }
            }
        }
        Ok(())
    }

    fn validate_intersection(
        &self,
        g: usize,
        h: usize,
        cg: &FixedComponent,
        ch: &FixedComponent,
        ic: &IntersectionComponent,
    ) -> Result<()> {
        let gh = self.group.mul(g, h);
        let target = self
            .components[gh]
            .iter()
            .find(|c| c.id == ic.target)
            .ok_or_else(|| Error::MissingPairData {
                g: self.group.name(g).to_string(),
                h: self.group.name(h).to_string(),
                cg: cg.id.clone(),
                ch: format!("target `{}` of Y^{}", ic.target, self.group.name(gh)),
            })?;
        if ic.ig.rows() != cg.ring.len()
            || ic.ig.cols() != ic.ring.len()
            || ic.ih.rows() != ch.ring.len()
            || ic.ih.cols() != ic.ring.len()
            || ic.ipush.rows() != ic.ring.len()
            || ic.ipush.cols() != target.ring.len()
        {
            return Err(Error::DimensionMismatch(format!(
                "intersection matrices for ({}, {}) pair (`{}`, `{}`)",
                self.group.name(g),
                self.group.name(h),
                cg.id,
                ch.id
            )));
        }
        if !same_model(ic.euler.model(), &ic.ring) {
            return Err(Error::ModelMismatch);
        }
        // excess: rank of TY/(TY^g + TY^h) over the intersection, as a degree
        if !ic.euler.is_zero() {
            let expected = (self.ambient.dim() + ic.dim)
                .checked_sub(cg.dim + ch.dim)
                .ok_or_else(|| Error::BadModel("negative excess rank".into()))?;
            if ic.euler.homogeneous_degree() != Some(expected) {
                return Err(Error::BadModel(format!(
                    "excess class on ({}, {}) pair (`{}`, `{}`) must be homogeneous of degree {expected}",
                    self.group.name(g),
                    self.group.name(h),
                    cg.id,
                    ch.id
                )));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ambient(&self) -> &Arc<ManifoldModel> {
        &self.ambient
    }

    pub fn action(&self) -> &Arc<CohAction> {
        &self.action
    }

    pub fn action_kind(&self) -> ActionKind {
        self.action_kind
    }

    pub fn components_of(&self, g: usize) -> &[FixedComponent] {
        &self.components[g]
    }

    pub fn pair(&self, g: usize, h: usize, cg: &str, ch: &str) -> Result<&PairData> {
        self.pairs
            .get(&(g, h, cg.to_string(), ch.to_string()))
            .ok_or_else(|| Error::MissingPairData {
                g: self.group.name(g).to_string(),
                h: self.group.name(h).to_string(),
                cg: cg.to_string(),
                ch: ch.to_string(),
            })
    }

    /// Pairs not involving the identity, in deterministic key order
    /// (serialization order for scenario files).
    pub fn explicit_pairs(
        &self,
    ) -> impl Iterator<Item = (&(usize, usize, String, String), &PairData)> {
        self.pairs.iter().filter(|((g, h, _, _), _)| *g != 0 && *h != 0)
    }

    /// Fault-injection hook: overwrites the excess class of one intersection
    /// component, bypassing validation. Used by negative-control tests.
    pub fn set_excess_class(
        &mut self,
        g: usize,
        h: usize,
        cg: &str,
        ch: &str,
        index: usize,
        euler: CohClass,
    ) -> Result<()> {
        let pd = self
            .pairs
            .get_mut(&(g, h, cg.to_string(), ch.to_string()))
            .ok_or_else(|| Error::MissingPairData {
                g: self.group.name(g).to_string(),
                h: self.group.name(h).to_string(),
                cg: cg.to_string(),
                ch: ch.to_string(),
            })?;
        let ic = pd
            .intersections
            .get_mut(index)
            .ok_or(Error::IndexOutOfRange(index))?;
        ic.euler = euler;
        Ok(())
    }

    fn component_index(&self, g: usize, id: &str) -> Result<usize> {
        self.components[g]
            .iter()
            .position(|c| c.id == id)
            .ok_or_else(|| Error::InvalidInput(format!("unknown component `{id}`")))
    }

    /// Where the action of h sends sector (g, ci): the component index inside
    /// the h⁻¹gh sector. Trivial actions keep ids; the S₂ square keeps both
    /// sectors in place.
    fn sector_target(&self, h: usize, g: usize, ci: usize) -> Result<usize> {
        let tg = self.group.conjugate(g, h);
        let src = &self.components[g][ci];
        let ti = self.component_index(tg, &src.id).map_err(|_| Error::NotGStable)?;
        let dst = &self.components[tg][ti];
        if src.ring.len() != dst.ring.len() || src.dim != dst.dim {
            return Err(Error::NotGStable);
        }
        Ok(ti)
    }

    /// The inertia-level action of h on a class living on sector (g, ci).
    pub fn sector_act(
        &self,
        h: usize,
        g: usize,
        ci: usize,
        class: &CohClass,
    ) -> Result<(usize, usize, CohClass)> {
        let tg = self.group.conjugate(g, h);
        let ti = self.sector_target(h, g, ci)?;
        let dst = &self.components[tg][ti];
        let moved = match self.action_kind {
            ActionKind::Trivial => {
                CohClass::from_sparse(&dst.ring, class.coeffs().map(|(k, c)| (k, c.clone())))
            }
            ActionKind::PermuteFactors => {
                if g == 0 {
                    // ambient sector: act through the factor permutation
                    self.action.apply(h, class)
                } else {
                    // the diagonal is fixed pointwise by the swap
                    CohClass::from_sparse(&dst.ring, class.coeffs().map(|(k, c)| (k, c.clone())))
                }
            }
        };
        Ok((tg, ti, moved))
    }
}

/// Element of the full inertia module ⊕_g H*(Y^g): one class per fixed
/// component per group element.
#[derive(Debug, Clone, PartialEq)]
pub struct InertiaElement {
    sectors: BTreeMap<(usize, usize), CohClass>,
}

impl InertiaElement {
    pub fn zero() -> InertiaElement {
        InertiaElement {
            sectors: BTreeMap::new(),
        }
    }

    pub fn parts(&self) -> impl Iterator<Item = ((usize, usize), &CohClass)> {
        self.sectors.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }
}

impl InertiaScenario {
    /// The class α placed on component `ci` of the g sector.
    pub fn element(&self, g: usize, ci: usize, class: CohClass) -> Result<InertiaElement> {
        let comp = self
            .components
            .get(g)
            .and_then(|l| l.get(ci))
            .ok_or(Error::IndexOutOfRange(ci))?;
        if !same_model(class.model(), &comp.ring) {
            return Err(Error::ModelMismatch);
        }
        let mut sectors = BTreeMap::new();
        if !class.is_zero() {
            sectors.insert((g, ci), class);
        }
        Ok(InertiaElement { sectors })
    }

    pub fn el_add(&self, a: &InertiaElement, b: &InertiaElement) -> Result<InertiaElement> {
        let mut sectors = a.sectors.clone();
        for (k, c) in &b.sectors {
            match sectors.get_mut(k) {
                Some(e) => *e = e.add(c)?,
                None => {
                    sectors.insert(*k, c.clone());
                }
            }
        }
        sectors.retain(|_, c| !c.is_zero());
        Ok(InertiaElement { sectors })
    }

    pub fn el_scale(&self, a: &InertiaElement, s: &Scalar) -> InertiaElement {
        let mut sectors: BTreeMap<(usize, usize), CohClass> = a
            .sectors
            .iter()
            .map(|(k, c)| (*k, c.scale(s)))
            .collect();
        sectors.retain(|_, c| !c.is_zero());
        InertiaElement { sectors }
    }

    /// The virtual product of two single-sector classes: pull both to each
    /// intersection component, multiply with the excess class, push into the
    /// product sector, and sum.
    pub fn virtual_product(
        &self,
        g: usize,
        ci: usize,
        alpha: &CohClass,
        h: usize,
        cj: usize,
        beta: &CohClass,
    ) -> Result<InertiaElement> {
        let cg = &self.components[g][ci];
        let ch = &self.components[h][cj];
        let gh = self.group.mul(g, h);
        let pd = self.pair(g, h, &cg.id, &ch.id)?;
        let mut acc = InertiaElement::zero();
        for ic in &pd.intersections {
            let mut row_a = vec![Scalar::zero(); cg.ring.len()];
            for (k, s) in alpha.coeffs() {
                row_a[k] = s.clone();
            }
            let a_res = CohClass::from_sparse(
                &ic.ring,
                ic.ig
                    .apply_row(&row_a)?
                    .into_iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero()),
            );
            let mut row_b = vec![Scalar::zero(); ch.ring.len()];
            for (k, s) in beta.coeffs() {
                row_b[k] = s.clone();
            }
            let b_res = CohClass::from_sparse(
                &ic.ring,
                ic.ih
                    .apply_row(&row_b)?
                    .into_iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero()),
            );
            let product = a_res.mul(&b_res)?.mul(&ic.euler)?;
            if product.is_zero() {
                continue;
            }
            let mut row_p = vec![Scalar::zero(); ic.ring.len()];
            for (k, s) in product.coeffs() {
                row_p[k] = s.clone();
            }
            let ti = self.component_index(gh, &ic.target)?;
            let pushed = CohClass::from_sparse(
                &self.components[gh][ti].ring,
                ic.ipush
                    .apply_row(&row_p)?
                    .into_iter()
                    .enumerate()
                    .filter(|(_, s)| !s.is_zero()),
            );
            acc = self.el_add(&acc, &self.element(gh, ti, pushed)?)?;
        }
        Ok(acc)
    }

    /// Bilinear extension of the virtual product to module elements.
    pub fn el_mul(&self, a: &InertiaElement, b: &InertiaElement) -> Result<InertiaElement> {
        let mut acc = InertiaElement::zero();
        for ((g, ci), alpha) in &a.sectors {
            for ((h, cj), beta) in &b.sectors {
                let prod = self.virtual_product(*g, *ci, alpha, *h, *cj, beta)?;
                acc = self.el_add(&acc, &prod)?;
            }
        }
        Ok(acc)
    }

    /// Right action of h at the inertia level, Eq.-(G action) style.
    pub fn el_act(&self, h: usize, x: &InertiaElement) -> Result<InertiaElement> {
        let mut acc = InertiaElement::zero();
        for ((g, ci), class) in &x.sectors {
            let (tg, ti, moved) = self.sector_act(h, *g, *ci, class)?;
            acc = self.el_add(&acc, &self.element(tg, ti, moved)?)?;
        }
        Ok(acc)
    }

    pub fn el_reynolds(&self, x: &InertiaElement) -> Result<InertiaElement> {
        let n = self.group.order();
        let mut acc = InertiaElement::zero();
        for h in 0..n {
            acc = self.el_add(&acc, &self.el_act(h, x)?)?;
        }
        Ok(self.el_scale(&acc, &crate::exactalg::frac(1, n as i64)))
    }

    /// The homomorphism f into the group ring: push every sector forward.
    pub fn to_group_ring(&self, x: &InertiaElement) -> Result<GroupRingElement> {
        let mut acc = GroupRingElement::zero(&self.group, &self.ambient);
        for ((g, ci), class) in &x.sectors {
            let pushed = self.components[*g][*ci].pushforward_class(class)?;
            acc = acc.add(&GroupRingElement::term(&self.group, pushed, *g))?;
        }
        Ok(acc)
    }

    /// All (g, component, basis index) triples, the basis of the module.
    pub fn module_basis(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (g, list) in self.components.iter().enumerate() {
            for (ci, comp) in list.iter().enumerate() {
                for k in 0..comp.ring.len() {
                    out.push((g, ci, k));
                }
            }
        }
        out
    }

    /// Degree in the inertia grading: coefficient degree plus codimension.
    pub fn virtual_degree(&self, g: usize, ci: usize, k: usize) -> usize {
        let comp = &self.components[g][ci];
        comp.ring.basis()[k].deg + comp.codim()
    }
}

/// One violation of the homomorphism identity f(a·b) = f(a)f(b).
#[derive(Debug, Clone)]
pub struct HomViolation {
    pub left: (usize, usize, usize),
    pub right: (usize, usize, usize),
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, Default)]
pub struct HomomorphismReport {
    pub pairs_checked: usize,
    pub violations: Vec<HomViolation>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive compatibility check: for every pair of basis classes, pushing
/// the virtual product forward agrees with the group-ring product of the
/// pushforwards.
pub fn check_homomorphism(sc: &InertiaScenario) -> Result<HomomorphismReport> {
    let mut report = HomomorphismReport::default();
    let basis = sc.module_basis();
    for &(g, ci, a) in &basis {
        let ca = CohClass::basis(&sc.components_of(g)[ci].ring, a);
        let fa = GroupRingElement::term(
            sc.group(),
            sc.components_of(g)[ci].pushforward_class(&ca)?,
            g,
        );
        for &(h, cj, b) in &basis {
            let cb = CohClass::basis(&sc.components_of(h)[cj].ring, b);
            let fb = GroupRingElement::term(
                sc.group(),
                sc.components_of(h)[cj].pushforward_class(&cb)?,
                h,
            );
            let direct = sc.virtual_product(g, ci, &ca, h, cj, &cb)?;
            let lhs = sc.to_group_ring(&direct)?;
            let rhs = fa.mul(&fb)?;
            report.pairs_checked += 1;
            if lhs != rhs {
                report.violations.push(HomViolation {
                    left: (g, ci, a),
                    right: (h, cj, b),
                    expected: format!("{rhs}"),
                    got: format!("{lhs}"),
                });
            }
        }
    }
    Ok(report)
}

/// Injectivity of the stacked pushforwards, element by element.
#[derive(Debug, Clone)]
pub struct InjectivityEntry {
    pub g: usize,
    pub name: String,
    pub source_dim: usize,
    pub rank: usize,
    pub kernel_dim: usize,
    pub injective: bool,
}

#[derive(Debug, Clone, Default)]
pub struct InjectivityReport {
    pub entries: Vec<InjectivityEntry>,
}

impl InjectivityReport {
    pub fn all_injective(&self) -> bool {
        self.entries.iter().all(|e| e.injective)
    }
}

pub fn check_injectivity(sc: &InertiaScenario) -> Result<InjectivityReport> {
    let mut report = InjectivityReport::default();
    for g in 0..sc.group().order() {
        let mut stacked = QMatrix::empty(sc.ambient().len());
        let mut source_dim = 0;
        for comp in sc.components_of(g) {
            source_dim += comp.ring.len();
            for a in 0..comp.ring.len() {
                stacked.push_row(comp.push.row(a).to_vec());
            }
        }
        let rank = crate::exactalg::rref(&stacked).rank;
        report.entries.push(InjectivityEntry {
            g,
            name: sc.group().name(g).to_string(),
            source_dim,
            rank,
            kernel_dim: source_dim - rank,
            injective: rank == source_dim,
        });
    }
    Ok(report)
}

#[derive(Debug, Clone, Default)]
pub struct AssociativityReport {
    pub triples_checked: usize,
    pub violations: usize,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Exhaustive associativity of the virtual product over module basis triples.
pub fn check_associativity(sc: &InertiaScenario) -> Result<AssociativityReport> {
    let basis = sc.module_basis();
    let elems: Vec<InertiaElement> = basis
        .iter()
        .map(|&(g, ci, k)| {
            sc.element(g, ci, CohClass::basis(&sc.components_of(g)[ci].ring, k))
        })
        .collect::<Result<_>>()?;
    let mut report = AssociativityReport::default();
    for a in &elems {
        for b in &elems {
            let ab = sc.el_mul(a, b)?;
            for c in &elems {
                let lhs = sc.el_mul(&ab, c)?;
                let rhs = sc.el_mul(a, &sc.el_mul(b, c)?)?;
                report.triples_checked += 1;
                if lhs != rhs {
                    report.violations += 1;
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Default)]
pub struct EquivarianceReport {
    pub checks: usize,
    pub violations: usize,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// f intertwines the inertia-level and group-ring G-actions.
pub fn check_equivariance(sc: &InertiaScenario) -> Result<EquivarianceReport> {
    let mut report = EquivarianceReport::default();
    for &(g, ci, k) in &sc.module_basis() {
        let x = sc.element(g, ci, CohClass::basis(&sc.components_of(g)[ci].ring, k))?;
        let fx = sc.to_group_ring(&x)?;
        for h in 0..sc.group().order() {
            let lhs = sc.to_group_ring(&sc.el_act(h, &x)?)?;
            let rhs = fx.acted(h, sc.action());
            report.checks += 1;
            if lhs != rhs {
                report.violations += 1;
            }
        }
    }
    Ok(report)
}

/// The full virtual-cohomology module with its product expanded on the
/// component basis: graded dimensions (inertia grading = degree + codim),
/// the image dimensions under f, invariant dimensions, and structure
/// constants with an integrality audit.
#[derive(Debug, Clone)]
pub struct DirectRing {
    pub basis: Vec<(usize, usize, usize)>,
    pub labels: Vec<String>,
    /// (g, virtual degree) → module dimension.
    pub module_dims: BTreeMap<(usize, usize), usize>,
    /// (g, virtual degree) → rank of the pushforward image.
    pub image_dims: BTreeMap<(usize, usize), usize>,
    /// virtual degree → dimension of the invariant submodule.
    pub invariant_dims: BTreeMap<usize, usize>,
    pub invariant_total: usize,
    /// basis-pair products expanded over the basis.
    pub products: Vec<(usize, usize, Vec<Scalar>)>,
    pub integral: bool,
}

pub fn virtual_ring_direct(sc: &InertiaScenario) -> Result<DirectRing> {
    let basis = sc.module_basis();
    let flat_index: BTreeMap<(usize, usize, usize), usize> = basis
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, i))
        .collect();
    let labels = basis
        .iter()
        .map(|&(g, ci, k)| {
            let comp = &sc.components_of(g)[ci];
            format!(
                "{} on {} · {}",
                comp.ring.basis()[k].name,
                comp.id,
                sc.group().name(g)
            )
        })
        .collect();

    let mut module_dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(g, ci, k) in &basis {
        *module_dims.entry((g, sc.virtual_degree(g, ci, k))).or_insert(0) += 1;
    }

    // image ranks per (g, virtual degree)
    let mut image_dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    {
        let mut grouped: BTreeMap<(usize, usize), QMatrix> = BTreeMap::new();
        for &(g, ci, k) in &basis {
            let vd = sc.virtual_degree(g, ci, k);
            let comp = &sc.components_of(g)[ci];
            let entry = grouped
                .entry((g, vd))
                .or_insert_with(|| QMatrix::empty(sc.ambient().len()));
            entry.push_row(comp.push.row(k).to_vec());
        }
        for (key, m) in grouped {
            image_dims.insert(key, crate::exactalg::rref(&m).rank);
        }
    }

    // invariants: Reynolds projection of every basis element, ranked per
    // virtual degree over flat module coordinates
    let flatten = |x: &InertiaElement| -> Vec<Scalar> {
        let mut row = vec![Scalar::zero(); basis.len()];
        for ((g, ci), class) in x.parts() {
            for (k, s) in class.coeffs() {
                row[flat_index[&(g, ci, k)]] = s.clone();
            }
        }
        row
    };
    let mut by_vdeg: BTreeMap<usize, QMatrix> = BTreeMap::new();
    for &(g, ci, k) in &basis {
        let x = sc.element(g, ci, CohClass::basis(&sc.components_of(g)[ci].ring, k))?;
        let r = sc.el_reynolds(&x)?;
        if r.is_zero() {
            continue;
        }
        let vd = sc.virtual_degree(g, ci, k);
        by_vdeg
            .entry(vd)
            .or_insert_with(|| QMatrix::empty(basis.len()))
            .push_row(flatten(&r));
    }
    let invariant_dims: BTreeMap<usize, usize> = by_vdeg
        .iter()
        .map(|(vd, m)| (*vd, crate::exactalg::rref(m).rank))
        .collect();
    let invariant_total = invariant_dims.values().sum();

    // structure constants over the module basis
    let mut products = Vec::new();
    let mut integral = true;
    for (i, &(g, ci, a)) in basis.iter().enumerate() {
        let ea = sc.element(g, ci, CohClass::basis(&sc.components_of(g)[ci].ring, a))?;
        for (j, &(h, cj, b)) in basis.iter().enumerate() {
            let eb = sc.element(h, cj, CohClass::basis(&sc.components_of(h)[cj].ring, b))?;
            let prod = sc.el_mul(&ea, &eb)?;
            let row = flatten(&prod);
            if !non_integral(row.iter()).is_empty() {
                integral = false;
            }
            if row.iter().any(|s| !s.is_zero()) {
                products.push((i, j, row));
            }
        }
    }

    Ok(DirectRing {
        basis,
        labels,
        module_dims,
        image_dims,
        invariant_dims,
        invariant_total,
        products,
        integral,
    })
}

/// Builds the S₂ square fixture: Y = M², the diagonal Δ ≅ M at the
/// transposition, excess class χ(M)·Ω on the (τ, τ) pair.
pub fn build_scenario_symprod2(base: &Arc<ManifoldModel>) -> Result<InertiaScenario> {
    let sym = crate::symprod::SymmetricProduct::new(base, 2, crate::group::DEFAULT_GROUP_CAP)?;
    let group = sym.group().clone();
    let ambient = sym.ambient().clone();
    let tau = 1usize;
    let incl = sym.diagonal_inclusion(tau)?;
    let delta_ring = incl.source.clone();
    let delta = FixedComponent::new(
        tau,
        "Delta",
        delta_ring.clone(),
        ambient.clone(),
        incl.pushforward.clone(),
        incl.pullback.clone(),
    );
    let chi = int(base.euler_char());
    let euler = CohClass::omega(&delta_ring).scale(&chi);
    let pair = (
        tau,
        tau,
        "Delta".to_string(),
        "Delta".to_string(),
        vec![IntersectionComponent {
            ring: delta_ring.clone(),
            dim: delta_ring.dim(),
            ig: QMatrix::identity(delta_ring.len()),
            ih: QMatrix::identity(delta_ring.len()),
            euler,
            target: "Y".to_string(),
            ipush: incl.pushforward,
        }],
    );
    InertiaScenario::assemble(
        group,
        ambient,
        ActionKind::PermuteFactors,
        vec![delta],
        vec![pair],
    )
}

/// Builds the CP^n with Z/p fixture: every nonidentity element fixes a
/// hyperplane CP^{n−1} (pushforward y^j ↦ x^{j+1}) and, when
/// `include_points` is set, the extra fixed point (pushforward z ↦ x^n).
pub fn build_scenario_cpn_zp(
    n: usize,
    p: usize,
    include_points: bool,
    group_cap: usize,
) -> Result<InertiaScenario> {
    if n == 0 {
        return Err(Error::InvalidInput("cpn-zp fixture needs n ≥ 1".into()));
    }
    if p < 2 {
        return Err(Error::InvalidInput("cpn-zp fixture needs p ≥ 2".into()));
    }
    let group = FiniteGroup::cyclic(p, group_cap)?;
    let ambient = ManifoldModel::cp(n);
    let hyper = ManifoldModel::cp_with_var(n - 1, "y");
    let point = ManifoldModel::point_named("z");

    // y^j ↦ x^{j+1}
    let mut push_h = QMatrix::zeros(n, n + 1);
    for j in 0..n {
        push_h.set(j, j + 1, int(1));
    }
    // x^j ↦ y^j (x^n ↦ 0)
    let mut pull_h = QMatrix::zeros(n + 1, n);
    for j in 0..n {
        pull_h.set(j, j, int(1));
    }
    // z ↦ x^n
    let mut push_p = QMatrix::zeros(1, n + 1);
    push_p.set(0, n, int(1));
    // x^j ↦ δ_{j,0} z
    let mut pull_p = QMatrix::zeros(n + 1, 1);
    pull_p.set(0, 0, int(1));

    let mut components = Vec::new();
    for i in 1..p {
        components.push(FixedComponent::new(
            i,
            "H",
            hyper.clone(),
            ambient.clone(),
            push_h.clone(),
            pull_h.clone(),
        ));
        if include_points {
            components.push(FixedComponent::new(
                i,
                "pt",
                point.clone(),
                ambient.clone(),
                push_p.clone(),
                pull_p.clone(),
            ));
        }
    }

    let hyper_euler = if n >= 2 {
        CohClass::basis(&hyper, 1)
    } else {
        CohClass::zero(&hyper)
    };
    let mut pairs = Vec::new();
    for i in 1..p {
        for j in 1..p {
            let sum_is_identity = (i + j) % p == 0;
            // hyperplane ∩ hyperplane = the hyperplane, excess = hyperplane class
            pairs.push((
                i,
                j,
                "H".to_string(),
                "H".to_string(),
                vec![IntersectionComponent {
                    ring: hyper.clone(),
                    dim: hyper.dim(),
                    ig: QMatrix::identity(n),
                    ih: QMatrix::identity(n),
                    euler: hyper_euler.clone(),
                    target: if sum_is_identity { "Y" } else { "H" }.to_string(),
                    ipush: if sum_is_identity {
                        push_h.clone()
                    } else {
                        QMatrix::identity(n)
                    },
                }],
            ));
            if include_points {
                // the fixed point is disjoint from the hyperplane
                pairs.push((i, j, "H".to_string(), "pt".to_string(), Vec::new()));
                pairs.push((i, j, "pt".to_string(), "H".to_string(), Vec::new()));
                // point ∩ point: excess bundle has rank 2n over a point, e = 0
                pairs.push((
                    i,
                    j,
                    "pt".to_string(),
                    "pt".to_string(),
                    vec![IntersectionComponent {
                        ring: point.clone(),
                        dim: 0,
                        ig: QMatrix::identity(1),
                        ih: QMatrix::identity(1),
                        euler: CohClass::zero(&point),
                        target: if sum_is_identity { "Y" } else { "pt" }.to_string(),
                        ipush: if sum_is_identity {
                            push_p.clone()
                        } else {
                            QMatrix::identity(1)
                        },
                    }],
                ));
            }
        }
    }

    InertiaScenario::assemble(group, ambient, ActionKind::Trivial, components, pairs)
}
