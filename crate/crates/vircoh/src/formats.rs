//! JSON input and report formats.
//!
//! Manifold specs: `{"kind":"cp","m":2}`, `{"kind":"even_sphere","k":1}`,
//! `{"kind":"table","dim":…,"basis":[{"name":…,"deg":…}],"products":[…]}`;
//! scenario files additionally use `{"kind":"power","base":…,"n":…}` and
//! `{"kind":"tensor","factors":[…]}` so that factor bookkeeping survives a
//! round trip. Matrices are row-major with `"num/den"` entries; sparse
//! classes are `[[basis, "num/den"], …]` where `basis` is an index or name.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{format_scalar, parse_scalar, QMatrix};
use crate::graded::{CohClass, ManifoldModel};
use crate::group::{FiniteGroup, GroupKind, GroupRingElement};
use crate::inertia::{
    ActionKind, FixedComponent, InertiaScenario, IntersectionComponent,
};
use crate::subring::{CoefficientTag, DimsTable, Presentation, PolyRelation, StructureConstants};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BasisElemJson {
    pub name: String,
    pub deg: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProductEntryJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, String)>,
}

/// Manifold specification.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ManifoldSpec {
    Cp {
        m: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        var: Option<String>,
    },
    EvenSphere {
        k: usize,
    },
    Table {
        dim: usize,
        basis: Vec<BasisElemJson>,
        products: Vec<ProductEntryJson>,
    },
    Power {
        base: Box<ManifoldSpec>,
        n: usize,
    },
    Tensor {
        factors: Vec<ManifoldSpec>,
    },
}

impl ManifoldSpec {
    pub fn build(&self) -> Result<Arc<ManifoldModel>> {
        match self {
            ManifoldSpec::Cp { m, var } => Ok(match var {
                Some(v) => ManifoldModel::cp_with_var(*m, v),
                None => ManifoldModel::cp(*m),
            }),
            ManifoldSpec::EvenSphere { k } => ManifoldModel::even_sphere(*k),
            ManifoldSpec::Table { dim, basis, products } => {
                let b: Vec<(String, usize)> =
                    basis.iter().map(|e| (e.name.clone(), e.deg)).collect();
                let mut p = Vec::with_capacity(products.len());
                for entry in products {
                    let mut terms = Vec::with_capacity(entry.terms.len());
                    for (k, c) in &entry.terms {
                        terms.push((*k, parse_scalar(c)?));
                    }
                    p.push((entry.i, entry.j, terms));
                }
                let model = ManifoldModel::from_table(b, p)?;
                if model.dim() != *dim {
                    return Err(Error::InvalidInput(format!(
                        "declared dim {dim} but the top degree is {}",
                        model.dim()
                    )));
                }
                Ok(model)
            }
            ManifoldSpec::Power { base, n } => Ok(ManifoldModel::power(&base.build()?, *n)),
            ManifoldSpec::Tensor { factors } => {
                let fs: Result<Vec<_>> = factors.iter().map(ManifoldSpec::build).collect();
                Ok(ManifoldModel::tensor_many(fs?))
            }
        }
    }

    /// A spec that rebuilds a structurally identical model: tensor powers are
    /// emitted as `power`/`tensor` so the factor structure survives, anything
    /// else as a full table dump.
    pub fn from_model(model: &Arc<ManifoldModel>) -> ManifoldSpec {
        if let Some(ts) = model.tensor_structure() {
            let first = &ts.factors[0];
            if ts.factors.iter().all(|f| **f == **first) {
                return ManifoldSpec::Power {
                    base: Box::new(Self::from_model(first)),
                    n: ts.nfactors(),
                };
            }
            return ManifoldSpec::Tensor {
                factors: ts.factors.iter().map(Self::from_model).collect(),
            };
        }
        let basis = model
            .basis()
            .iter()
            .map(|b| BasisElemJson {
                name: b.name.clone(),
                deg: b.deg,
            })
            .collect();
        let mut products = Vec::new();
        for i in 0..model.len() {
            for j in i..model.len() {
                if i == 0 {
                    continue; // unit products are implied
                }
                let terms: Vec<(usize, String)> = model
                    .ring()
                    .product(i, j)
                    .iter()
                    .map(|(k, c)| (*k, format_scalar(c)))
                    .collect();
                if !terms.is_empty() {
                    products.push(ProductEntryJson { i, j, terms });
                }
            }
        }
        ManifoldSpec::Table {
            dim: model.dim(),
            basis,
            products,
        }
    }
}

/// Group specification.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Symmetric { n: usize },
    Cyclic { p: usize },
    Table { elements: Vec<String>, mul: Vec<Vec<usize>> },
}

impl GroupSpec {
    pub fn build(&self, cap: usize) -> Result<Arc<FiniteGroup>> {
        match self {
            GroupSpec::Symmetric { n } => FiniteGroup::symmetric(*n, cap),
            GroupSpec::Cyclic { p } => FiniteGroup::cyclic(*p, cap),
            GroupSpec::Table { elements, mul } => {
                FiniteGroup::from_table(elements.clone(), mul.clone(), cap)
            }
        }
    }

    pub fn from_group(group: &FiniteGroup) -> GroupSpec {
        match group.kind() {
            GroupKind::Symmetric(n) => GroupSpec::Symmetric { n },
            GroupKind::Cyclic(p) => GroupSpec::Cyclic { p },
            GroupKind::Table => GroupSpec::Table {
                elements: group.names().to_vec(),
                mul: group.mul_table().to_vec(),
            },
        }
    }
}

pub fn matrix_to_json(m: &QMatrix) -> Vec<Vec<String>> {
    m.iter_rows()
        .map(|r| r.iter().map(format_scalar).collect())
        .collect()
}

pub fn matrix_from_json(rows: &[Vec<String>], cols_if_empty: usize) -> Result<QMatrix> {
    if rows.is_empty() {
        return Ok(QMatrix::empty(cols_if_empty));
    }
    let mut parsed = Vec::with_capacity(rows.len());
    for r in rows {
        let mut row = Vec::with_capacity(r.len());
        for s in r {
            row.push(parse_scalar(s)?);
        }
        parsed.push(row);
    }
    QMatrix::from_rows(parsed)
}

/// Basis reference: positional index or name.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum BasisRef {
    Index(usize),
    Name(String),
}

impl BasisRef {
    fn resolve(&self, model: &ManifoldModel) -> Result<usize> {
        match self {
            BasisRef::Index(i) if *i < model.len() => Ok(*i),
            BasisRef::Index(i) => Err(Error::IndexOutOfRange(*i)),
            BasisRef::Name(n) => model
                .basis()
                .iter()
                .position(|b| b.name == *n)
                .ok_or_else(|| Error::InvalidInput(format!("unknown basis element `{n}`"))),
        }
    }
}

pub type ClassJson = Vec<(BasisRef, String)>;

pub fn class_to_json(c: &CohClass) -> ClassJson {
    c.coeffs()
        .map(|(k, s)| (BasisRef::Index(k), format_scalar(s)))
        .collect()
}

pub fn class_from_json(model: &Arc<ManifoldModel>, c: &ClassJson) -> Result<CohClass> {
    let mut terms = Vec::with_capacity(c.len());
    for (r, s) in c {
        terms.push((r.resolve(model)?, parse_scalar(s)?));
    }
    Ok(CohClass::from_sparse(model, terms))
}

/// Group element reference: index or name.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum GroupElemRef {
    Index(usize),
    Name(String),
}

impl GroupElemRef {
    pub fn resolve(&self, group: &FiniteGroup) -> Result<usize> {
        match self {
            GroupElemRef::Index(i) if *i < group.order() => Ok(*i),
            GroupElemRef::Index(i) => Err(Error::IndexOutOfRange(*i)),
            GroupElemRef::Name(n) => group
                .element_by_name(n)
                .ok_or_else(|| Error::InvalidInput(format!("unknown group element `{n}`"))),
        }
    }
}

/// One term of a group-ring element literal.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupRingTermJson {
    pub g: GroupElemRef,
    pub class: ClassJson,
}

pub fn group_ring_from_json(
    group: &Arc<FiniteGroup>,
    model: &Arc<ManifoldModel>,
    terms: &[GroupRingTermJson],
) -> Result<GroupRingElement> {
    let mut acc = GroupRingElement::zero(group, model);
    for t in terms {
        let g = t.g.resolve(group)?;
        let class = class_from_json(model, &t.class)?;
        acc = acc.add(&GroupRingElement::term(group, class, g))?;
    }
    Ok(acc)
}

pub fn group_ring_to_json(x: &GroupRingElement) -> Vec<GroupRingTermJson> {
    x.terms()
        .map(|(g, c)| GroupRingTermJson {
            g: GroupElemRef::Index(g),
            class: class_to_json(c),
        })
        .collect()
}

// ---------------------------------------------------------------------------
// scenario files

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentJson {
    pub g: usize,
    pub id: String,
    pub ring: ManifoldSpec,
    pub dim: usize,
    pub push: Vec<Vec<String>>,
    pub pull: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IntersectionJson {
    pub ring: ManifoldSpec,
    pub ig: Vec<Vec<String>>,
    pub ih: Vec<Vec<String>>,
    pub euler: ClassJson,
    pub target: String,
    pub ipush: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairJson {
    pub g: usize,
    pub h: usize,
    pub cg: String,
    pub ch: String,
    pub intersections: Vec<IntersectionJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioJson {
    pub group: GroupSpec,
    pub ambient: ManifoldSpec,
    pub action: String,
    pub components: Vec<ComponentJson>,
    pub pairs: Vec<PairJson>,
}

fn action_kind_from_str(s: &str) -> Result<ActionKind> {
    match s {
        "trivial" => Ok(ActionKind::Trivial),
        "permute_factors" => Ok(ActionKind::PermuteFactors),
        other => Err(Error::InvalidInput(format!("unknown action `{other}`"))),
    }
}

fn action_kind_to_str(k: ActionKind) -> &'static str {
    match k {
        ActionKind::Trivial => "trivial",
        ActionKind::PermuteFactors => "permute_factors",
    }
}

impl ScenarioJson {
    pub fn build(&self, group_cap: usize) -> Result<InertiaScenario> {
        let group = self.group.build(group_cap)?;
        let ambient = self.ambient.build()?;
        let action = action_kind_from_str(&self.action)?;
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            let ring = c.ring.build()?;
            if ring.dim() != c.dim {
                return Err(Error::InvalidInput(format!(
                    "component `{}` declares dim {} but its ring has top degree {}",
                    c.id,
                    c.dim,
                    ring.dim()
                )));
            }
            components.push(FixedComponent::new(
                c.g,
                c.id.clone(),
                ring.clone(),
                ambient.clone(),
                matrix_from_json(&c.push, ambient.len())?,
                matrix_from_json(&c.pull, ring.len())?,
            ));
        }
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for p in &self.pairs {
            let mut intersections = Vec::with_capacity(p.intersections.len());
            for ic in &p.intersections {
                let ring = ic.ring.build()?;
                let euler = class_from_json(&ring, &ic.euler)?;
                intersections.push(IntersectionComponent {
                    // connected oriented component: dimension = top degree
                    dim: ring.dim(),
                    ig: matrix_from_json(&ic.ig, ring.len())?,
                    ih: matrix_from_json(&ic.ih, ring.len())?,
                    euler,
                    target: ic.target.clone(),
                    ipush: matrix_from_json(&ic.ipush, 0)?,
                    ring,
                });
            }
            pairs.push((p.g, p.h, p.cg.clone(), p.ch.clone(), intersections));
        }
        InertiaScenario::assemble(group, ambient, action, components, pairs)
    }

    /// Serializes a scenario; derived data (the identity sector and pairs
    /// involving the identity) is omitted and rebuilt on load.
    pub fn from_scenario(sc: &InertiaScenario) -> ScenarioJson {
        let mut components = Vec::new();
        for g in 1..sc.group().order() {
            for c in sc.components_of(g) {
                components.push(ComponentJson {
                    g,
                    id: c.id.clone(),
                    ring: ManifoldSpec::from_model(&c.ring),
                    dim: c.dim,
                    push: matrix_to_json(&c.push),
                    pull: matrix_to_json(&c.pull),
                });
            }
        }
        let pairs = sc
            .explicit_pairs()
            .map(|((g, h, cg, ch), pd)| PairJson {
                g: *g,
                h: *h,
                cg: cg.clone(),
                ch: ch.clone(),
                intersections: pd
                    .intersections
                    .iter()
                    .map(|ic| IntersectionJson {
                        ring: ManifoldSpec::from_model(&ic.ring),
                        ig: matrix_to_json(&ic.ig),
                        ih: matrix_to_json(&ic.ih),
                        euler: class_to_json(&ic.euler),
                        target: ic.target.clone(),
                        ipush: matrix_to_json(&ic.ipush),
                    })
                    .collect(),
            })
            .collect();
        ScenarioJson {
            group: GroupSpec::from_group(sc.group()),
            ambient: ManifoldSpec::from_model(sc.ambient()),
            action: action_kind_to_str(sc.action_kind()).to_string(),
            components,
            pairs,
        }
    }
}

// ---------------------------------------------------------------------------
// presentation files

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationGeneratorJson {
    pub name: String,
    pub deg: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationTermJson {
    pub coef: String,
    pub monomial: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationJson {
    pub generators: Vec<PresentationGeneratorJson>,
    pub relations: Vec<Vec<RelationTermJson>>,
    pub assignment: BTreeMap<String, Vec<GroupRingTermJson>>,
    /// "integers" | "rationals"; integral presentations additionally demand
    /// integral structure constants.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<String>,
}

impl PresentationJson {
    pub fn into_domain(
        &self,
        group: &Arc<FiniteGroup>,
        model: &Arc<ManifoldModel>,
    ) -> Result<(Presentation, BTreeMap<String, GroupRingElement>)> {
        let generators: Vec<(String, usize)> = self
            .generators
            .iter()
            .map(|g| (g.name.clone(), g.deg))
            .collect();
        let name_index: BTreeMap<&str, usize> = generators
            .iter()
            .enumerate()
            .map(|(i, (n, _))| (n.as_str(), i))
            .collect();
        let mut relations = Vec::with_capacity(self.relations.len());
        for r in &self.relations {
            let mut terms = Vec::with_capacity(r.len());
            for t in r {
                let mut exps = vec![0u32; generators.len()];
                for (name, e) in &t.monomial {
                    let idx = name_index.get(name.as_str()).ok_or_else(|| {
                        Error::InvalidInput(format!("relation uses unknown generator `{name}`"))
                    })?;
                    exps[*idx] = *e;
                }
                terms.push((parse_scalar(&t.coef)?, exps));
            }
            relations.push(PolyRelation { terms });
        }
        let coefficients = match self.coefficients.as_deref() {
            None => None,
            Some("integers") => Some(CoefficientTag::Integers),
            Some("rationals") => Some(CoefficientTag::Rationals),
            Some(other) => {
                return Err(Error::InvalidInput(format!(
                    "coefficients must be \"integers\" or \"rationals\", got `{other}`"
                )))
            }
        };
        let presentation = Presentation {
            generators,
            relations,
            coefficients,
        };
        presentation.validate()?;
        let mut assignment = BTreeMap::new();
        for (name, terms) in &self.assignment {
            assignment.insert(name.clone(), group_ring_from_json(group, model, terms)?);
        }
        Ok((presentation, assignment))
    }
}

// ---------------------------------------------------------------------------
// report schemas

#[derive(Debug, Clone, Serialize)]
pub struct DimsRowJson {
    pub label: String,
    pub dims: Vec<(usize, usize)>,
    pub total: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimsTableJson {
    pub rows: Vec<DimsRowJson>,
    pub total: usize,
}

pub fn dims_table_to_json(t: &DimsTable) -> DimsTableJson {
    DimsTableJson {
        rows: t
            .rows
            .iter()
            .map(|r| DimsRowJson {
                label: r.label.clone(),
                dims: r.dims.clone(),
                total: r.total,
            })
            .collect(),
        total: t.total,
    }
}

/// (i, j, sparse coordinates of basis_i·basis_j as (k, "num/den")).
pub type SparseProductJson = (usize, usize, Vec<(usize, String)>);

#[derive(Debug, Clone, Serialize)]
pub struct StructureConstantsJson {
    pub basis: Vec<String>,
    pub products: Vec<SparseProductJson>,
    pub integral: bool,
}

pub fn structure_constants_to_json(sc: &StructureConstants) -> StructureConstantsJson {
    StructureConstantsJson {
        basis: sc.basis_words.clone(),
        products: sc
            .entries
            .iter()
            .map(|(i, j, coords)| {
                let sparse: Vec<(usize, String)> = coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| (k, format_scalar(c)))
                    .collect();
                (*i, *j, sparse)
            })
            .collect(),
        integral: sc.integral,
    }
}

/// Verdict of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckVerdictJson {
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_GROUP_CAP;
    use crate::inertia::{build_scenario_cpn_zp, build_scenario_symprod2};

    #[test]
    fn manifold_spec_round_trips() {
        for model in [
            ManifoldModel::cp(3),
            ManifoldModel::even_sphere(2).unwrap(),
            ManifoldModel::power(&ManifoldModel::cp(1), 3),
            ManifoldModel::tensor(&ManifoldModel::cp(1), &ManifoldModel::cp(2)),
        ] {
            let spec = ManifoldSpec::from_model(&model);
            let text = serde_json::to_string(&spec).unwrap();
            let parsed: ManifoldSpec = serde_json::from_str(&text).unwrap();
            let rebuilt = parsed.build().unwrap();
            assert_eq!(*rebuilt, *model);
            if model.tensor_structure().is_some() {
                assert!(rebuilt.tensor_structure().is_some());
            }
        }
    }

    #[test]
    fn group_spec_round_trips() {
        for group in [
            FiniteGroup::symmetric(3, DEFAULT_GROUP_CAP).unwrap(),
            FiniteGroup::cyclic(5, DEFAULT_GROUP_CAP).unwrap(),
            FiniteGroup::from_table(
                vec!["1".into(), "g".into()],
                vec![vec![0, 1], vec![1, 0]],
                10,
            )
            .unwrap(),
        ] {
            let spec = GroupSpec::from_group(&group);
            let text = serde_json::to_string(&spec).unwrap();
            let parsed: GroupSpec = serde_json::from_str(&text).unwrap();
            let rebuilt = parsed.build(DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(*rebuilt, *group);
        }
    }

    #[test]
    fn scenario_round_trips() {
        let scenarios = [
            build_scenario_symprod2(&ManifoldModel::cp(1)).unwrap(),
            build_scenario_symprod2(&ManifoldModel::cp(2)).unwrap(),
            build_scenario_cpn_zp(2, 3, true, DEFAULT_GROUP_CAP).unwrap(),
            build_scenario_cpn_zp(3, 5, false, DEFAULT_GROUP_CAP).unwrap(),
        ];
        for sc in scenarios {
            let json = ScenarioJson::from_scenario(&sc);
            let text = serde_json::to_string_pretty(&json).unwrap();
            let parsed: ScenarioJson = serde_json::from_str(&text).unwrap();
            let rebuilt = parsed.build(DEFAULT_GROUP_CAP).unwrap();
            assert_eq!(rebuilt, sc);
            // emission is byte-deterministic
            let again = serde_json::to_string_pretty(&ScenarioJson::from_scenario(&rebuilt)).unwrap();
            assert_eq!(text, again);
        }
    }

    #[test]
    fn presentation_parses_with_names_and_indices() {
        let sym = crate::symprod::SymmetricProduct::new(&ManifoldModel::cp(1), 2, DEFAULT_GROUP_CAP)
            .unwrap();
        let text = r#"{
            "generators": [{"name": "x", "deg": 2}, {"name": "u", "deg": 2}],
            "relations": [
                [{"coef": "1", "monomial": {"x": 2}}],
                [{"coef": "1", "monomial": {"u": 2}}, {"coef": "-2", "monomial": {"x": 2}}]
            ],
            "assignment": {
                "x": [{"g": "id", "class": [["x1", "1"]]}],
                "u": [{"g": "(1 2)", "class": [["x1", "1"], [2, "1"]]}]
            }
        }"#;
        let parsed: PresentationJson = serde_json::from_str(text).unwrap();
        let (p, assignment) = parsed
            .into_domain(sym.group(), sym.ambient())
            .unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.relations.len(), 2);
        let u = &assignment["u"];
        assert_eq!(u.support(), vec![1]);
        assert_eq!(u.class_at(1).coeffs().count(), 2);
    }

    #[test]
    fn bad_inputs_are_rejected() {
        let bad_scalar = class_from_json(
            &ManifoldModel::cp(1),
            &vec![(BasisRef::Index(0), "1/0".to_string())],
        );
        assert!(bad_scalar.is_err());
        let bad_ref = class_from_json(
            &ManifoldModel::cp(1),
            &vec![(BasisRef::Name("nope".into()), "1".to_string())],
        );
        assert!(bad_ref.is_err());
        let bad_action = ScenarioJson {
            group: GroupSpec::Cyclic { p: 2 },
            ambient: ManifoldSpec::Cp { m: 1, var: None },
            action: "mystery".into(),
            components: vec![],
            pairs: vec![],
        };
        assert!(bad_action.build(DEFAULT_GROUP_CAP).is_err());
    }
}
