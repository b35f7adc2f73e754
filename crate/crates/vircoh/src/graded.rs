//! Finite-dimensional graded commutative rings with Poincaré duality.
//!
//! A [`ManifoldModel`] packages the cohomology ring of a closed oriented
//! even-dimensional manifold: an ordered homogeneous basis (unit first),
//! structure constants, the top class Ω, and the dual basis that encodes the
//! Poincaré pairing. Künneth tensor powers carry a [`TensorStructure`] so
//! factor bookkeeping (diagonals, factor permutations) stays exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{format_scalar, int, QMatrix, Scalar};

/// Named homogeneous basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElem {
    pub name: String,
    pub deg: usize,
}

type SparseVec = Vec<(usize, Scalar)>;

/// Table entry: product of input basis elements i and j as sparse terms.
pub type ProductEntry = (usize, usize, Vec<(usize, Scalar)>);

/// Basis plus structure constants; multiplication is stored sparsely and
/// only for nonzero products.
#[derive(Debug, Clone, PartialEq)]
pub struct RingModel {
    basis: Vec<BasisElem>,
    products: BTreeMap<(usize, usize), SparseVec>,
}

impl RingModel {
    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Structure constants of `e_i · e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.products.get(&(i, j)).map_or(&[], Vec::as_slice)
    }
}

/// Factor bookkeeping for models built as tensor products: basis index ↔
/// tuple of factor basis indices.
#[derive(Debug, Clone)]
pub struct TensorStructure {
    pub factors: Vec<Arc<ManifoldModel>>,
    tuples: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TensorStructure {
    pub fn nfactors(&self) -> usize {
        self.factors.len()
    }

    pub fn tuple(&self, basis_idx: usize) -> &[usize] {
        &self.tuples[basis_idx]
    }

    pub fn index_of(&self, tuple: &[usize]) -> Option<usize> {
        self.index.get(tuple).copied()
    }
}

impl PartialEq for TensorStructure {
    fn eq(&self, other: &Self) -> bool {
        self.tuples == other.tuples
            && self.factors.len() == other.factors.len()
            && self
                .factors
                .iter()
                .zip(&other.factors)
                .all(|(a, b)| **a == **b)
    }
}

/// Poincaré-duality ring model of a closed oriented manifold.
#[derive(Debug, Clone)]
pub struct ManifoldModel {
    ring: RingModel,
    dim: usize,
    top: usize,
    dual: Vec<SparseVec>,
    degree_components: BTreeMap<usize, Vec<usize>>,
    pos_in_degree: Vec<usize>,
    tensor: Option<TensorStructure>,
}

impl PartialEq for ManifoldModel {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.dim == other.dim && self.top == other.top
    }
}

fn is_ident(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphabetic())
}

/// Splits `"x^3"` into `("x", 3)`; plain identifiers get exponent 1.
fn split_power(name: &str) -> Option<(&str, u32)> {
    match name.split_once('^') {
        Some((v, e)) if is_ident(v) => e.parse().ok().map(|k| (v, k)),
        Some(_) => None,
        None if is_ident(name) => Some((name, 1)),
        None => None,
    }
}

fn factor_part_name(base_name: &str, factor_1based: usize, nfactors: usize) -> Option<String> {
    if base_name == "1" {
        return None;
    }
    if nfactors == 1 {
        return Some(base_name.to_string());
    }
    match split_power(base_name) {
        Some((var, 1)) => Some(format!("{var}{factor_1based}")),
        Some((var, k)) => Some(format!("{var}{factor_1based}^{k}")),
        None => Some(format!("({base_name})_{factor_1based}")),
    }
}

fn validate_ring(ring: &RingModel, check_assoc: bool) -> Result<()> {
    if ring.basis.is_empty() || ring.basis[0].deg != 0 {
        return Err(Error::NoUnit);
    }
    for b in &ring.basis {
        if b.deg % 2 != 0 {
            return Err(Error::OddDegree {
                name: b.name.clone(),
                deg: b.deg,
            });
        }
    }
    if ring.basis.iter().filter(|b| b.deg == 0).count() != 1 {
        return Err(Error::BadModel(
            "degree-0 component must be spanned by the unit alone".into(),
        ));
    }
    let n = ring.len();
    if !ring
        .basis
        .windows(2)
        .all(|w| w[0].deg <= w[1].deg)
    {
        return Err(Error::BadModel("basis not ordered by ascending degree".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let p = ring.product(i, j);
            // graded
            for (k, c) in p {
                if c.is_zero() {
                    return Err(Error::BadModel("non-canonical zero structure constant".into()));
                }
                if ring.basis[*k].deg != ring.basis[i].deg + ring.basis[j].deg {
                    return Err(Error::BadModel(format!(
                        "product e{i}·e{j} has a term of wrong degree"
                    )));
                }
            }
            // commutative
            if p != ring.product(j, i) {
                return Err(Error::BadModel(format!("product e{i}·e{j} not commutative")));
            }
        }
        // unit law
        if ring.product(0, i) != [(i, int(1))] {
            return Err(Error::NoUnit);
        }
    }
    if check_assoc {
        let mul = |x: &SparseVec, j: usize| -> SparseVec {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (i, c) in x {
                for (k, d) in ring.product(*i, j) {
                    let e = acc.entry(*k).or_insert_with(Scalar::zero);
                    *e += c * d;
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
        };
        for i in 0..n {
            for j in 0..n {
                let ij = ring.product(i, j).to_vec();
                for k in 0..n {
                    let left = mul(&ij, k);
                    // i·(j·k) with commutativity: (j·k)·i
                    let jk = ring.product(j, k).to_vec();
                    let right = mul(&jk, i);
                    if left != right {
                        return Err(Error::NonAssociative { i, j, k });
                    }
                }
            }
        }
    }
    Ok(())
}

fn finish_model(
    ring: RingModel,
    tensor: Option<TensorStructure>,
    check_assoc: bool,
) -> Result<Arc<ManifoldModel>> {
    validate_ring(&ring, check_assoc)?;
    let dim = ring.basis.iter().map(|b| b.deg).max().unwrap_or(0);
    let tops: Vec<usize> = (0..ring.len()).filter(|&i| ring.basis[i].deg == dim).collect();
    if tops.len() != 1 {
        return Err(Error::BadModel(format!(
            "top degree {dim} component must be rank 1, found {}",
            tops.len()
        )));
    }
    let top = tops[0];

    let mut degree_components: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut pos_in_degree = vec![0usize; ring.len()];
    for (i, b) in ring.basis.iter().enumerate() {
        let comp = degree_components.entry(b.deg).or_default();
        pos_in_degree[i] = comp.len();
        comp.push(i);
    }

    let omega_coeff = |i: usize, j: usize| -> Scalar {
        ring.product(i, j)
            .iter()
            .find(|(k, _)| *k == top)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    };

    let dual: Vec<SparseVec> = match &tensor {
        Some(ts) if !ts.factors.is_empty() => {
            // dual of a tensor basis element is the tensor of factor duals
            let mut rows = Vec::with_capacity(ring.len());
            for idx in 0..ring.len() {
                let tuple = ts.tuple(idx).to_vec();
                let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::one())];
                for (f, &a) in tuple.iter().enumerate() {
                    let fac_dual = &ts.factors[f].dual[a];
                    let mut next = Vec::with_capacity(acc.len() * fac_dual.len());
                    for (prefix, c) in &acc {
                        for (k, d) in fac_dual {
                            let mut t = prefix.clone();
                            t.push(*k);
                            next.push((t, c * d));
                        }
                    }
                    acc = next;
                }
                let mut row: SparseVec = acc
                    .into_iter()
                    .map(|(t, c)| (ts.index_of(&t).expect("tensor tuple"), c))
                    .collect();
                row.sort_by_key(|(k, _)| *k);
                rows.push(row);
            }
            rows
        }
        _ => {
            // invert the dense pairing matrix
            let n = ring.len();
            let mut pairing = QMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    pairing.set(i, j, omega_coeff(i, j));
                }
            }
            let inv = pairing.invert().ok_or(Error::DegeneratePairing)?;
            (0..n)
                .map(|i| {
                    (0..n)
                        .filter(|&j| !inv.get(i, j).is_zero())
                        .map(|j| (j, inv.get(i, j).clone()))
                        .collect()
                })
                .collect()
        }
    };

    // pairing duality: Ω-coefficient of e_i · e_j^♯ is δ_ij
    if ring.len() <= 64 {
        for i in 0..ring.len() {
            for j in 0..ring.len() {
                let mut v = Scalar::zero();
                for (k, c) in &dual[j] {
                    v += c * omega_coeff(i, *k);
                }
                let want = if i == j { Scalar::one() } else { Scalar::zero() };
                if v != want {
                    return Err(Error::DegeneratePairing);
                }
            }
        }
    }

    Ok(Arc::new(ManifoldModel {
        ring,
        dim,
        top,
        dual,
        degree_components,
        pos_in_degree,
        tensor,
    }))
}

impl ManifoldModel {
    /// Complex projective space CP^m: generator `x` in degree 2, truncated at
    /// `x^{m+1}`. `m = 0` gives the point.
    pub fn cp(m: usize) -> Arc<ManifoldModel> {
        Self::cp_with_var(m, "x")
    }

    pub fn cp_with_var(m: usize, var: &str) -> Arc<ManifoldModel> {
        let basis = (0..=m)
            .map(|j| BasisElem {
                name: match j {
                    0 => "1".to_string(),
                    1 => var.to_string(),
                    _ => format!("{var}^{j}"),
                },
                deg: 2 * j,
            })
            .collect();
        let mut products = BTreeMap::new();
        for i in 0..=m {
            for j in 0..=m {
                if i + j <= m {
                    products.insert((i, j), vec![(i + j, int(1))]);
                }
            }
        }
        finish_model(RingModel { basis, products }, None, true).expect("CP^m model")
    }

    /// The point, with a custom name for its unit class.
    pub fn point_named(name: &str) -> Arc<ManifoldModel> {
        let basis = vec![BasisElem {
            name: name.to_string(),
            deg: 0,
        }];
        let mut products = BTreeMap::new();
        products.insert((0, 0), vec![(0, int(1))]);
        finish_model(RingModel { basis, products }, None, true).expect("point model")
    }

    pub fn point() -> Arc<ManifoldModel> {
        Self::point_named("1")
    }

    /// Even sphere S^{2k}: basis {1, t} with t² = 0, t in degree 2k.
    pub fn even_sphere(k: usize) -> Result<Arc<ManifoldModel>> {
        if k == 0 {
            return Err(Error::InvalidInput("even_sphere requires k ≥ 1".into()));
        }
        let basis = vec![
            BasisElem {
                name: "1".to_string(),
                deg: 0,
            },
            BasisElem {
                name: "t".to_string(),
                deg: 2 * k,
            },
        ];
        let mut products = BTreeMap::new();
        products.insert((0, 0), vec![(0, int(1))]);
        products.insert((0, 1), vec![(1, int(1))]);
        products.insert((1, 0), vec![(1, int(1))]);
        finish_model(RingModel { basis, products }, None, true)
    }

    /// Validated model from an explicit basis and structure-constant table.
    /// Basis entries are reordered degree-ascending (stable); `products`
    /// indices refer to the input order. Products with the unit are implied.
    pub fn from_table(
        basis: Vec<(String, usize)>,
        products: Vec<ProductEntry>,
    ) -> Result<Arc<ManifoldModel>> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::NoUnit);
        }
        // stable sort by degree, remap indices
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| basis[i].1);
        let mut new_index = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let sorted: Vec<BasisElem> = order
            .iter()
            .map(|&i| BasisElem {
                name: basis[i].0.clone(),
                deg: basis[i].1,
            })
            .collect();
        let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for i in 0..n {
            table.insert((0, i), vec![(i, int(1))]);
            table.insert((i, 0), vec![(i, int(1))]);
        }
        for (i, j, terms) in products {
            if i >= n || j >= n || terms.iter().any(|(k, _)| *k >= n) {
                return Err(Error::IndexOutOfRange(i.max(j)));
            }
            let mut row: SparseVec = terms
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (new_index[k], c))
                .collect();
            row.sort_by_key(|(k, _)| *k);
            let mut merged: SparseVec = Vec::new();
            for (k, c) in row {
                match merged.last_mut() {
                    Some((lk, lc)) if *lk == k => *lc += c,
                    _ => merged.push((k, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            let key = (new_index[i], new_index[j]);
            table.insert(key, merged.clone());
            table.insert((key.1, key.0), merged);
        }
        table.retain(|_, v| !v.is_empty());
        finish_model(
            RingModel {
                basis: sorted,
                products: table,
            },
            None,
            true,
        )
    }

    /// Künneth tensor product of two models.
    pub fn tensor(a: &Arc<ManifoldModel>, b: &Arc<ManifoldModel>) -> Arc<ManifoldModel> {
        Self::tensor_many(vec![a.clone(), b.clone()])
    }

    /// n-fold Künneth power M^n (n = 0 gives the point).
    pub fn power(base: &Arc<ManifoldModel>, n: usize) -> Arc<ManifoldModel> {
        Self::tensor_many(vec![base.clone(); n])
    }

    /// Tensor product of an arbitrary factor list. Basis elements are tuples
    /// of factor basis indices, ordered by (total degree, lexicographic
    /// tuple); products act componentwise (all degrees even, no signs).
    pub fn tensor_many(factors: Vec<Arc<ManifoldModel>>) -> Arc<ManifoldModel> {
        let nf = factors.len();
        // enumerate tuples in lexicographic order
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for f in &factors {
            let mut next = Vec::with_capacity(tuples.len() * f.ring.len());
            for t in &tuples {
                for a in 0..f.ring.len() {
                    let mut u = t.clone();
                    u.push(a);
                    next.push(u);
                }
            }
            tuples = next;
        }
        let tuple_deg = |t: &[usize]| -> usize {
            t.iter()
                .enumerate()
                .map(|(f, &a)| factors[f].ring.basis[a].deg)
                .sum()
        };
        // degree-ascending; within a degree, colexicographic (compare tuples
        // right to left) so that x1 sorts before x2, reports read like the
        // usual monomial order, and M^1 keeps the base order exactly
        tuples.sort_by(|a, b| {
            tuple_deg(a)
                .cmp(&tuple_deg(b))
                .then_with(|| a.iter().rev().cmp(b.iter().rev()))
        });
        let index: HashMap<Vec<usize>, usize> = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();

        let basis: Vec<BasisElem> = tuples
            .iter()
            .map(|t| {
                let parts: Vec<String> = t
                    .iter()
                    .enumerate()
                    .filter_map(|(f, &a)| {
                        factor_part_name(&factors[f].ring.basis[a].name, f + 1, nf)
                    })
                    .collect();
                BasisElem {
                    name: if parts.is_empty() {
                        "1".to_string()
                    } else {
                        parts.join(" ")
                    },
                    deg: tuple_deg(t),
                }
            })
            .collect();

        // componentwise products, kept sparse
        let mut products: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (i, ti) in tuples.iter().enumerate() {
            'pair: for (j, tj) in tuples.iter().enumerate() {
                let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::one())];
                for f in 0..nf {
                    let p = factors[f].ring.product(ti[f], tj[f]);
                    if p.is_empty() {
                        continue 'pair;
                    }
                    let mut next = Vec::with_capacity(acc.len() * p.len());
                    for (prefix, c) in &acc {
                        for (k, d) in p {
                            let mut t = prefix.clone();
                            t.push(*k);
                            next.push((t, c * d));
                        }
                    }
                    acc = next;
                }
                let mut row: SparseVec = acc
                    .into_iter()
                    .map(|(t, c)| (index[&t], c))
                    .collect();
                row.sort_by_key(|(k, _)| *k);
                if !row.is_empty() {
                    products.insert((i, j), row);
                }
            }
        }

        let check_assoc = basis.len() <= 64;
        finish_model(
            RingModel { basis, products },
            Some(TensorStructure {
                factors,
                tuples,
                index,
            }),
            check_assoc,
        )
        .expect("tensor of valid models")
    }

    pub fn ring(&self) -> &RingModel {
        &self.ring
    }

    pub fn basis(&self) -> &[BasisElem] {
        self.ring.basis()
    }

    pub fn len(&self) -> usize {
        self.ring.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ring.is_empty()
    }

    /// Manifold dimension = cohomological top degree.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Basis index of the top class Ω.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn tensor_structure(&self) -> Option<&TensorStructure> {
        self.tensor.as_ref()
    }

    pub fn degree_component(&self, deg: usize) -> &[usize] {
        self.degree_components
            .get(&deg)
            .map_or(&[], Vec::as_slice)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.degree_components.keys().copied()
    }

    pub fn pos_in_degree(&self, basis_idx: usize) -> usize {
        self.pos_in_degree[basis_idx]
    }

    pub fn dims_by_degree(&self) -> BTreeMap<usize, usize> {
        self.degree_components
            .iter()
            .map(|(d, c)| (*d, c.len()))
            .collect()
    }

    /// Σ_i dim H^i; all degrees are even so this is the Euler characteristic.
    pub fn euler_char(&self) -> i64 {
        self.ring.len() as i64
    }

    /// Poincaré pairing P_ij = Ω-coefficient of e_i · e_j.
    pub fn pairing_value(&self, i: usize, j: usize) -> Scalar {
        self.ring
            .product(i, j)
            .iter()
            .find(|(k, _)| *k == self.top)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }
}

/// Dual basis {e_i^♯}: Ω-coefficient of e_i · e_j^♯ is δ_ij.
pub fn dual_basis(model: &Arc<ManifoldModel>) -> Vec<CohClass> {
    (0..model.len())
        .map(|i| CohClass::from_sparse(model, model.dual[i].iter().cloned()))
        .collect()
}

/// Cohomology class: sparse coefficients over a model's basis.
#[derive(Debug, Clone)]
pub struct CohClass {
    model: Arc<ManifoldModel>,
    coeffs: BTreeMap<usize, Scalar>,
}

impl PartialEq for CohClass {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && same_model(&self.model, &other.model)
    }
}

/// Same model: pointer identity, falling back to structural equality.
pub fn same_model(a: &Arc<ManifoldModel>, b: &Arc<ManifoldModel>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl CohClass {
    pub fn zero(model: &Arc<ManifoldModel>) -> Self {
        CohClass {
            model: model.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(model: &Arc<ManifoldModel>) -> Self {
        Self::basis(model, 0)
    }

    pub fn basis(model: &Arc<ManifoldModel>, idx: usize) -> Self {
        assert!(idx < model.len(), "basis index out of range");
        let mut coeffs = BTreeMap::new();
        coeffs.insert(idx, Scalar::one());
        CohClass {
            model: model.clone(),
            coeffs,
        }
    }

    /// Top class Ω.
    pub fn omega(model: &Arc<ManifoldModel>) -> Self {
        Self::basis(model, model.top())
    }

    pub fn from_sparse<I: IntoIterator<Item = (usize, Scalar)>>(
        model: &Arc<ManifoldModel>,
        coeffs: I,
    ) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (k, c) in coeffs {
            assert!(k < model.len(), "basis index out of range");
            *map.entry(k).or_insert_with(Scalar::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        CohClass {
            model: model.clone(),
            coeffs: map,
        }
    }

    pub fn model(&self) -> &Arc<ManifoldModel> {
        &self.model
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, idx: usize) -> Scalar {
        self.coeffs.get(&idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degrees with a nonzero coefficient.
    pub fn degrees(&self) -> Vec<usize> {
        let mut degs: Vec<usize> = self
            .coeffs
            .keys()
            .map(|&k| self.model.basis()[k].deg)
            .collect();
        degs.sort_unstable();
        degs.dedup();
        degs
    }

    /// The degree when homogeneous (zero counts as homogeneous of any degree).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let degs = self.degrees();
        match degs.len() {
            0 => Some(0),
            1 => Some(degs[0]),
            _ => None,
        }
    }

    pub fn component(&self, deg: usize) -> CohClass {
        CohClass {
            model: self.model.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| self.model.basis()[**k].deg == deg)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// Coefficient of the top class Ω.
    pub fn omega_coeff(&self) -> Scalar {
        self.coeff(self.model.top())
    }

    /// Dense coefficient row over the degree-`deg` component basis.
    pub fn dense_component(&self, deg: usize) -> Vec<Scalar> {
        let comp = self.model.degree_component(deg);
        let mut row = vec![Scalar::zero(); comp.len()];
        for (k, c) in &self.coeffs {
            if self.model.basis()[*k].deg == deg {
                row[self.model.pos_in_degree(*k)] = c.clone();
            }
        }
        row
    }

    pub fn add(&self, other: &CohClass) -> Result<CohClass> {
        if !same_model(&self.model, &other.model) {
            return Err(Error::ModelMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            *coeffs.entry(*k).or_insert_with(Scalar::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(CohClass {
            model: self.model.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &CohClass) -> Result<CohClass> {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> CohClass {
        if s.is_zero() {
            return CohClass::zero(&self.model);
        }
        CohClass {
            model: self.model.clone(),
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c * s)).collect(),
        }
    }

    /// Cup product via the structure constants.
    pub fn mul(&self, other: &CohClass) -> Result<CohClass> {
        if !same_model(&self.model, &other.model) {
            return Err(Error::ModelMismatch);
        }
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                for (k, c) in self.model.ring.product(*i, *j) {
                    *acc.entry(*k).or_insert_with(Scalar::zero) += a * b * c;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(CohClass {
            model: self.model.clone(),
            coeffs: acc,
        })
    }

    /// Applies a basis permutation: the coefficient of `e_i` moves to `e_{perm[i]}`.
    pub fn permute_basis(&self, perm: &[usize]) -> CohClass {
        CohClass {
            model: self.model.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (perm[*k], c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for CohClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let name = &self.model.basis()[*k].name;
            let neg = c < &Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if name == "1" {
                write!(f, "{}", format_scalar(&mag))?;
            } else if mag.is_one() {
                write!(f, "{name}")?;
            } else {
                write!(f, "{} {name}", format_scalar(&mag))?;
            }
        }
        Ok(())
    }
}
