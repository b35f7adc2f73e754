//! Finite groups, the group ring `H*(Y)[G]`, and the averaging operator.
//!
//! The group ring multiplies untwisted: (α·g)(β·h) = (αβ)·(gh) with the cup
//! product on coefficients. The G-action is the right action
//! (α, g)·h = ((h⁻¹)*α, h⁻¹gh); invariants are extracted by the Reynolds
//! operator, which is the one place a division by |G| happens.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{frac, Scalar};
use crate::graded::{same_model, CohClass, ManifoldModel};

pub const DEFAULT_GROUP_CAP: usize = 720;

/// How a group was specified; serialization mirrors the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Symmetric(usize),
    Cyclic(usize),
    Table,
}

/// Finite group with dense multiplication and inverse tables; identity at
/// index 0. Symmetric groups keep one-line permutation words.
#[derive(Debug)]
pub struct FiniteGroup {
    kind: GroupKind,
    names: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    perms: Option<Vec<Vec<usize>>>,
    perm_index: Option<HashMap<Vec<usize>, usize>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.mul == other.mul
    }
}

/// Disjoint cycles of a permutation in one-line notation (0-based images),
/// reported as 1-based positions. Fixed points appear as singletons; each
/// cycle starts at its minimal element and cycles are sorted by it.
pub fn cycle_decomposition(perm: &[usize]) -> Vec<Vec<usize>> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i + 1);
            i = perm[i];
        }
        cycles.push(cycle);
    }
    cycles
}

fn perm_name(perm: &[usize]) -> String {
    let cycles: Vec<Vec<usize>> = cycle_decomposition(perm)
        .into_iter()
        .filter(|c| c.len() > 1)
        .collect();
    if cycles.is_empty() {
        return "id".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let inner: Vec<String> = c.iter().map(usize::to_string).collect();
            format!("({})", inner.join(" "))
        })
        .collect::<Vec<_>>()
        .join("")
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a·b)(i) = a(b(i)); the right action x·h = (x_{h(1)},…,x_{h(n)})
    // then satisfies x·(ab) = (x·a)·b
    b.iter().map(|&i| a[i]).collect()
}

impl FiniteGroup {
    /// Symmetric group S_n, elements in lexicographic one-line order.
    pub fn symmetric(n: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
        if n == 0 {
            return Err(Error::NotAGroup("symmetric group needs n ≥ 1".into()));
        }
        let mut order = 1usize;
        for k in 1..=n {
            order = order.saturating_mul(k);
            if order > cap {
                return Err(Error::TooLarge { order, cap });
            }
        }
        let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
        // lexicographic successor enumeration
        loop {
            let last = perms.last().unwrap();
            let mut next = last.clone();
            let Some(i) = (0..n - 1).rev().find(|&i| next[i] < next[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| next[j] > next[i]).unwrap();
            next.swap(i, j);
            next[i + 1..].reverse();
            perms.push(next);
        }
        debug_assert_eq!(perms.len(), order);
        let perm_index: HashMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mul: Vec<Vec<usize>> = perms
            .iter()
            .map(|a| perms.iter().map(|b| perm_index[&compose(a, b)]).collect())
            .collect();
        let inv: Vec<usize> = perms
            .iter()
            .map(|p| {
                let mut q = vec![0; n];
                for (i, &pi) in p.iter().enumerate() {
                    q[pi] = i;
                }
                perm_index[&q]
            })
            .collect();
        let names = perms.iter().map(|p| perm_name(p)).collect();
        Ok(Arc::new(FiniteGroup {
            kind: GroupKind::Symmetric(n),
            names,
            mul,
            inv,
            perms: Some(perms),
            perm_index: Some(perm_index),
        }))
    }

    /// Cyclic group Z/p with elements 1, λ, λ², … in exponent order.
    pub fn cyclic(p: usize, cap: usize) -> Result<Arc<FiniteGroup>> {
        if p == 0 {
            return Err(Error::NotAGroup("cyclic group needs p ≥ 1".into()));
        }
        if p > cap {
            return Err(Error::TooLarge { order: p, cap });
        }
        let names = (0..p)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "λ".to_string(),
                _ => format!("λ^{i}"),
            })
            .collect();
        let mul = (0..p).map(|a| (0..p).map(|b| (a + b) % p).collect()).collect();
        let inv = (0..p).map(|a| (p - a) % p).collect();
        Ok(Arc::new(FiniteGroup {
            kind: GroupKind::Cyclic(p),
            names,
            mul,
            inv,
            perms: None,
            perm_index: None,
        }))
    }

    /// Group from an explicit multiplication table; all axioms are checked.
    pub fn from_table(names: Vec<String>, mul: Vec<Vec<usize>>, cap: usize) -> Result<Arc<FiniteGroup>> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty element list".into()));
        }
        if n > cap {
            return Err(Error::TooLarge { order: n, cap });
        }
        if mul.len() != n || mul.iter().any(|r| r.len() != n) {
            return Err(Error::NotAGroup("multiplication table is not square".into()));
        }
        if mul.iter().flatten().any(|&x| x >= n) {
            return Err(Error::NotAGroup("table entry out of range".into()));
        }
        for j in 0..n {
            if mul[0][j] != j || mul[j][0] != j {
                return Err(Error::NotAGroup("element 0 is not a two-sided identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0 && mul[b][a] == 0) {
                Some(b) => inv[a] = b,
                None => return Err(Error::NotAGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Arc::new(FiniteGroup {
            kind: GroupKind::Table,
            names,
            mul,
            inv,
            perms: None,
            perm_index: None,
        }))
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// h⁻¹ g h.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// One-line permutation word (symmetric groups only).
    pub fn perm(&self, i: usize) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[i].as_slice())
    }

    pub fn perm_count(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p[0].len())
    }

    pub fn index_of_perm(&self, perm: &[usize]) -> Option<usize> {
        self.perm_index.as_ref()?.get(perm).copied()
    }

    /// Index of the transposition (k l), 1-based positions.
    pub fn transposition(&self, k: usize, l: usize) -> Option<usize> {
        let n = self.perm_count()?;
        if k == 0 || l == 0 || k > n || l > n || k == l {
            return None;
        }
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(k - 1, l - 1);
        self.index_of_perm(&p)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }
}

/// Degree-preserving basis-permutation action of G on the ambient ring;
/// `maps[h]` realizes α ↦ (h⁻¹)*α on basis indices.
#[derive(Debug)]
pub struct CohAction {
    group: Arc<FiniteGroup>,
    model: Arc<ManifoldModel>,
    maps: Vec<Vec<usize>>,
}

impl CohAction {
    pub fn trivial(group: &Arc<FiniteGroup>, model: &Arc<ManifoldModel>) -> Arc<CohAction> {
        let id: Vec<usize> = (0..model.len()).collect();
        Arc::new(CohAction {
            group: group.clone(),
            model: model.clone(),
            maps: vec![id; group.order()],
        })
    }

    /// Factor-permutation action of a symmetric group on a Künneth power:
    /// h sends the basis tuple a to the tuple b with b_j = a_{h(j)}.
    pub fn permute_factors(
        group: &Arc<FiniteGroup>,
        model: &Arc<ManifoldModel>,
    ) -> Result<Arc<CohAction>> {
        let ts = model
            .tensor_structure()
            .ok_or_else(|| Error::BadModel("permute_factors needs a tensor power".into()))?;
        let n = group
            .perm_count()
            .ok_or_else(|| Error::NotAGroup("permute_factors needs a symmetric group".into()))?;
        if ts.nfactors() != n {
            return Err(Error::DimensionMismatch(format!(
                "S_{n} acting on a {}-fold power",
                ts.nfactors()
            )));
        }
        let maps = (0..group.order())
            .map(|h| {
                let perm = group.perm(h).unwrap();
                (0..model.len())
                    .map(|i| {
                        let a = ts.tuple(i);
                        let b: Vec<usize> = (0..n).map(|j| a[perm[j]]).collect();
                        ts.index_of(&b).expect("permuted tuple")
                    })
                    .collect()
            })
            .collect();
        let action = Arc::new(CohAction {
            group: group.clone(),
            model: model.clone(),
            maps,
        });
        action.validate()?;
        Ok(action)
    }

    fn validate(&self) -> Result<()> {
        let n = self.group.order();
        let dim = self.model.len();
        if self.maps[0] != (0..dim).collect::<Vec<_>>() {
            return Err(Error::BadModel("action of the identity is not trivial".into()));
        }
        for (h, map) in self.maps.iter().enumerate() {
            for (i, &j) in map.iter().enumerate() {
                if self.model.basis()[i].deg != self.model.basis()[j].deg {
                    return Err(Error::BadModel(format!(
                        "action of {} does not preserve degree",
                        self.group.name(h)
                    )));
                }
            }
        }
        // right-action law: acting by h then k is acting by hk
        if n * n * dim <= 2_000_000 {
            for h in 0..n {
                for k in 0..n {
                    let hk = self.group.mul(h, k);
                    for i in 0..dim {
                        if self.maps[k][self.maps[h][i]] != self.maps[hk][i] {
                            return Err(Error::BadModel("action is not a right action".into()));
                        }
                    }
                }
            }
        }
        // each map is a ring automorphism
        if n * dim * dim <= 200_000 {
            for h in 0..n {
                for i in 0..dim {
                    for j in 0..dim {
                        let prod = CohClass::basis(&self.model, i)
                            .mul(&CohClass::basis(&self.model, j))
                            .unwrap();
                        let lhs = self.apply(h, &prod);
                        let rhs = self
                            .apply(h, &CohClass::basis(&self.model, i))
                            .mul(&self.apply(h, &CohClass::basis(&self.model, j)))
                            .unwrap();
                        if lhs != rhs {
                            return Err(Error::BadModel(format!(
                                "action of {} is not a ring map",
                                self.group.name(h)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn model(&self) -> &Arc<ManifoldModel> {
        &self.model
    }

    /// α ↦ α·h on ambient classes.
    pub fn apply(&self, h: usize, class: &CohClass) -> CohClass {
        class.permute_basis(&self.maps[h])
    }

    pub fn is_trivial(&self) -> bool {
        let id: Vec<usize> = (0..self.model.len()).collect();
        self.maps.iter().all(|m| *m == id)
    }
}

/// Element of the group ring `H*(Y)[G]`: finitely many terms α_g·g.
#[derive(Debug, Clone)]
pub struct GroupRingElement {
    group: Arc<FiniteGroup>,
    model: Arc<ManifoldModel>,
    terms: BTreeMap<usize, CohClass>,
}

impl PartialEq for GroupRingElement {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.terms == other.terms
    }
}

impl GroupRingElement {
    pub fn zero(group: &Arc<FiniteGroup>, model: &Arc<ManifoldModel>) -> Self {
        GroupRingElement {
            group: group.clone(),
            model: model.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(group: &Arc<FiniteGroup>, model: &Arc<ManifoldModel>) -> Self {
        Self::term(group, CohClass::unit(model), 0)
    }

    /// Single term α·g.
    pub fn term(group: &Arc<FiniteGroup>, class: CohClass, g: usize) -> Self {
        assert!(g < group.order(), "group element out of range");
        let model = class.model().clone();
        let mut terms = BTreeMap::new();
        if !class.is_zero() {
            terms.insert(g, class);
        }
        GroupRingElement {
            group: group.clone(),
            model,
            terms,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn model(&self) -> &Arc<ManifoldModel> {
        &self.model
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &CohClass)> {
        self.terms.iter().map(|(g, c)| (*g, c))
    }

    pub fn class_at(&self, g: usize) -> CohClass {
        self.terms
            .get(&g)
            .cloned()
            .unwrap_or_else(|| CohClass::zero(&self.model))
    }

    /// Group elements carrying a nonzero class.
    pub fn support(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    /// The common coefficient degree when every term is homogeneous of one
    /// degree (the group-ring grading used by subring tables).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for c in self.terms.values() {
            match (deg, c.homogeneous_degree()) {
                (_, None) => return None,
                (None, d) => deg = d,
                (Some(a), Some(b)) if a == b => {}
                _ => return None,
            }
        }
        Some(deg.unwrap_or(0))
    }

    pub fn component(&self, g: usize, deg: usize) -> CohClass {
        self.class_at(g).component(deg)
    }

    pub fn add(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (g, c) in &other.terms {
            let entry = terms
                .entry(*g)
                .or_insert_with(|| CohClass::zero(&self.model));
            *entry = entry.add(c)?;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GroupRingElement {
            group: self.group.clone(),
            model: self.model.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.add(&other.scale(&frac(-1, 1)))
    }

    pub fn scale(&self, s: &Scalar) -> GroupRingElement {
        if s.is_zero() {
            return GroupRingElement::zero(&self.group, &self.model);
        }
        GroupRingElement {
            group: self.group.clone(),
            model: self.model.clone(),
            terms: self.terms.iter().map(|(g, c)| (*g, c.scale(s))).collect(),
        }
    }

    fn compatible(&self, other: &GroupRingElement) -> Result<()> {
        if *self.group != *other.group || !same_model(&self.model, &other.model) {
            return Err(Error::ModelMismatch);
        }
        Ok(())
    }

    /// Group-ring product: (α·g)(β·h) = (αβ)·(gh), bilinear; coefficients
    /// multiply by the plain cup product (no twist).
    pub fn mul(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        self.compatible(other)?;
        let mut terms: BTreeMap<usize, CohClass> = BTreeMap::new();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                let gh = self.group.mul(*g, *h);
                let prod = a.mul(b)?;
                if prod.is_zero() {
                    continue;
                }
                let entry = terms
                    .entry(gh)
                    .or_insert_with(|| CohClass::zero(&self.model));
                *entry = entry.add(&prod)?;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(GroupRingElement {
            group: self.group.clone(),
            model: self.model.clone(),
            terms,
        })
    }

    /// Power by repeated multiplication.
    pub fn pow(&self, k: usize) -> Result<GroupRingElement> {
        let mut acc = GroupRingElement::unit(&self.group, &self.model);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Right action of h: each term (α, g) ↦ ((h⁻¹)*α, h⁻¹gh).
    pub fn acted(&self, h: usize, act: &CohAction) -> GroupRingElement {
        let mut terms: BTreeMap<usize, CohClass> = BTreeMap::new();
        for (g, c) in &self.terms {
            let target = self.group.conjugate(*g, h);
            let moved = act.apply(h, c);
            match terms.get_mut(&target) {
                Some(e) => *e = e.add(&moved).expect("same model"),
                None => {
                    terms.insert(target, moved);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        GroupRingElement {
            group: self.group.clone(),
            model: self.model.clone(),
            terms,
        }
    }

    /// Reynolds operator: (1/|G|) Σ_h x·h, the projection onto invariants.
    pub fn reynolds(&self, act: &CohAction) -> GroupRingElement {
        let n = self.group.order();
        let mut acc = GroupRingElement::zero(&self.group, &self.model);
        for h in 0..n {
            acc = acc.add(&self.acted(h, act)).expect("same model");
        }
        acc.scale(&frac(1, n as i64))
    }

    pub fn is_invariant(&self, act: &CohAction) -> bool {
        (0..self.group.order()).all(|h| self.acted(h, act) == *self)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (g, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            if *g == 0 {
                write!(f, "{c}")?;
            } else {
                let rendered = format!("{c}");
                if rendered.contains(' ') {
                    write!(f, "({rendered})·{}", self.group.name(*g))?;
                } else {
                    write!(f, "{rendered}·{}", self.group.name(*g))?;
                }
            }
        }
        Ok(())
    }
}
