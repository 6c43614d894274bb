//! The four graphs attached to a permutation group `G`: the proper power
//! graph `P_0(G)`, its quotient by generator classes, the power-type graph
//! and the order graph, plus the canonical maps
//!
//! ```text
//!   P_0(G) --π--> quotient --t̃--> type graph
//!                     \               |
//!                      õ             o_T
//!                       \             v
//!                        `------> order graph
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphcore::{components, components_with, ComponentReport, LabeledGraph};
use crate::partitions::{partitions_of, proper_divisors, totient, Partition};
use crate::permutations::{fx_automorphism, CyclicClass, PermGroup, Permutation};
use crate::Caps;

const NO_CLASS: u32 = u32::MAX;

/// Selects one of the four graphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Explicit,
    Quotient,
    Order,
    Type,
}

impl GraphKind {
    pub const ALL: [GraphKind; 4] = [GraphKind::Explicit, GraphKind::Quotient, GraphKind::Order, GraphKind::Type];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Explicit => "explicit",
            GraphKind::Quotient => "quotient",
            GraphKind::Order => "order",
            GraphKind::Type => "type",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown graph {s:?}, expected explicit|quotient|order|type")))
    }
}

/// A group together with its power graphs and the maps between them.
/// Immutable once built.
pub struct PowerGraphBundle {
    group: PermGroup,
    /// Class index of each group element (by position in `group.elements()`).
    element_class: Vec<u32>,
    quotient: LabeledGraph<CyclicClass>,
    explicit: Option<LabeledGraph<Permutation>>,
    type_graph: LabeledGraph<Partition>,
    order_graph: LabeledGraph<u64>,
    class_type: Vec<usize>,
    class_order: Vec<usize>,
    type_order: Vec<usize>,
    explicit_limit: usize,
}

impl fmt::Debug for PowerGraphBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PowerGraphBundle")
            .field("degree", &self.group.degree())
            .field("order", &self.group.order())
            .field("classes", &self.quotient.vertex_count())
            .field("explicit", &self.explicit.is_some())
            .finish()
    }
}

impl PowerGraphBundle {
    /// Builds every graph. The explicit graph is only built when the group
    /// order is within `caps.max_explicit_order`.
    pub fn new(group: PermGroup, caps: &Caps) -> Result<Self> {
        Self::build(group, caps.max_explicit_order)
    }

    /// Builds the quotient, type and order graphs only.
    pub fn without_explicit(group: PermGroup) -> Result<Self> {
        Self::build(group, 0)
    }

    /// `S_n` with the graph-based pipeline cap applied.
    pub fn symmetric(n: usize, caps: &Caps) -> Result<Self> {
        if n > caps.max_pipeline_degree {
            return Err(Error::CapExceeded {
                what: "pipeline degree",
                limit: caps.max_pipeline_degree,
                actual: n,
            });
        }
        Self::new(PermGroup::symmetric(n, caps)?, caps)
    }

    fn build(group: PermGroup, explicit_limit: usize) -> Result<Self> {
        if group.order() < 2 {
            return Err(Error::InvalidInput("the trivial group has an empty proper power graph".into()));
        }
        let (classes, element_class, pending) = generator_classes(&group)?;

        let quotient_edges: Vec<(usize, usize)> = pending
            .into_iter()
            .map(|(c, e)| (c as usize, element_class[e] as usize))
            .collect();
        let quotient = LabeledGraph::new(classes, quotient_edges)?;

        let class_types: Vec<Partition> = quotient.labels().iter().map(|c| c.cycle_type()).collect();
        let types: Vec<Partition> = class_types.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let type_graph = type_graph_on(types)?;
        let class_type: Vec<usize> = class_types
            .iter()
            .map(|t| type_graph.index_of(t).expect("type vertex exists"))
            .collect();

        let orders: Vec<u64> = quotient
            .labels()
            .iter()
            .map(|c| c.subgroup_order)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let order_graph = order_graph_on(orders)?;
        let class_order: Vec<usize> = quotient
            .labels()
            .iter()
            .map(|c| order_graph.index_of(&c.subgroup_order).expect("order vertex exists"))
            .collect();
        let type_order: Vec<usize> = type_graph
            .labels()
            .iter()
            .map(|t| {
                order_graph
                    .index_of(&t.order())
                    .ok_or_else(|| Error::Internal(format!("order of type {t} missing from the order graph")))
            })
            .collect::<Result<_>>()?;

        let explicit = if group.order() <= explicit_limit {
            Some(explicit_from_quotient(&group, &element_class, &quotient)?)
        } else {
            None
        };

        Ok(PowerGraphBundle {
            group,
            element_class,
            quotient,
            explicit,
            type_graph,
            order_graph,
            class_type,
            class_order,
            type_order,
            explicit_limit,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    pub fn quotient(&self) -> &LabeledGraph<CyclicClass> {
        &self.quotient
    }

    /// `P_0(G)`, vertex `v` being the element at position `v + 1` of
    /// `group().elements()`. Fails when the group exceeded the explicit cap.
    pub fn explicit(&self) -> Result<&LabeledGraph<Permutation>> {
        self.explicit.as_ref().ok_or(Error::CapExceeded {
            what: "explicit graph order",
            limit: self.explicit_limit,
            actual: self.group.order(),
        })
    }

    /// The power graph `P(G)` with the identity restored as vertex 0; the
    /// other vertices follow `group().elements()`.
    pub fn power_graph_with_identity(&self) -> Result<LabeledGraph<Permutation>> {
        let explicit = self.explicit()?;
        let n = explicit.vertex_count();
        let edges = (1..=n)
            .map(|v| (0, v))
            .chain(explicit.edges().map(|(u, v)| (u + 1, v + 1)));
        LabeledGraph::new(self.group.elements().to_vec(), edges)
    }

    pub fn has_explicit(&self) -> bool {
        self.explicit.is_some()
    }

    pub fn type_graph(&self) -> &LabeledGraph<Partition> {
        &self.type_graph
    }

    pub fn order_graph(&self) -> &LabeledGraph<u64> {
        &self.order_graph
    }

    /// Cyclic classes, in quotient-vertex order (ascending representative).
    pub fn classes(&self) -> &[CyclicClass] {
        self.quotient.labels()
    }

    /// `π`: explicit vertex to quotient vertex.
    pub fn pi(&self) -> Vec<usize> {
        self.element_class[1..].iter().map(|&c| c as usize).collect()
    }

    /// `t̃`: quotient vertex to type-graph vertex.
    pub fn t_map(&self) -> &[usize] {
        &self.class_type
    }

    /// `õ`: quotient vertex to order-graph vertex.
    pub fn o_map(&self) -> &[usize] {
        &self.class_order
    }

    /// `o_T`: type-graph vertex to order-graph vertex.
    pub fn o_t_map(&self) -> &[usize] {
        &self.type_order
    }

    /// Quotient vertex of a non-identity element of the group.
    pub fn class_of(&self, p: &Permutation) -> Option<usize> {
        let i = self.group.index_of(p)?;
        match self.element_class[i] {
            NO_CLASS => None,
            c => Some(c as usize),
        }
    }

    /// Cycle type of a quotient vertex.
    pub fn class_type(&self, class: usize) -> &Partition {
        self.type_graph.label(self.class_type[class])
    }

    /// Components of the quotient graph with census by cycle type.
    pub fn quotient_components(&self) -> ComponentReport<Partition> {
        components_with(&self.quotient, |v| self.class_type(v).clone())
    }

    /// Components of `P_0(G)` with census by cycle type.
    pub fn explicit_components(&self) -> Result<ComponentReport<Partition>> {
        let g = self.explicit()?;
        Ok(components_with(g, |v| g.label(v).cycle_type()))
    }

    pub fn type_components(&self) -> ComponentReport<()> {
        components(&self.type_graph)
    }

    pub fn order_components(&self) -> ComponentReport<u64> {
        components_with(&self.order_graph, |v| *self.order_graph.label(v))
    }

    /// Component count of the selected graph.
    pub fn component_count(&self, kind: GraphKind) -> Result<usize> {
        Ok(match kind {
            GraphKind::Explicit => components(self.explicit()?).count,
            GraphKind::Quotient => components(&self.quotient).count,
            GraphKind::Order => components(&self.order_graph).count,
            GraphKind::Type => components(&self.type_graph).count,
        })
    }

    /// `μ_T(G)` for every type, by counting the group's elements.
    pub fn type_counts(&self) -> BTreeMap<Partition, u64> {
        let mut out = BTreeMap::new();
        for e in self.group.elements().iter().filter(|e| !e.is_identity()) {
            *out.entry(e.cycle_type()).or_insert(0) += 1;
        }
        out
    }

    /// `F_x` on quotient vertices. `x` must normalize the group.
    pub fn fx_map(&self, x: &Permutation) -> Result<Vec<usize>> {
        if x.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: x.degree(),
            });
        }
        fx_automorphism(x, self.classes())
    }

    /// The component of the quotient graph holding the class of `(1 2)`.
    pub fn main_component(&self) -> Result<MainComponent> {
        let report = self.quotient_components();
        let n = self.degree();
        if n < 3 {
            if report.count != 1 {
                return Err(Error::InvalidInput("degree below 3 needs a one-component quotient".into()));
            }
            return Ok(MainComponent::from_report(&report, 0, true));
        }
        let transposition = Permutation::from_cycles(n, &[vec![1, 2]])?;
        let class = self
            .class_of(&transposition)
            .ok_or_else(|| Error::InvalidInput("the group does not contain (1 2)".into()))?;
        Ok(MainComponent::from_report(&report, report.component_of(class), false))
    }

    /// Exchange-format text of the selected graph.
    pub fn exchange_format(&self, kind: GraphKind) -> Result<String> {
        Ok(match kind {
            GraphKind::Explicit => self.explicit()?.to_exchange_format(),
            GraphKind::Quotient => self.quotient.to_exchange_format(),
            GraphKind::Order => self.order_graph.to_exchange_format(),
            GraphKind::Type => self.type_graph.to_exchange_format(),
        })
    }

    /// The maps as `name` headers followed by `i -> j` lines.
    pub fn maps_text(&self) -> String {
        let mut out = String::new();
        let mut section = |name: &str, map: &[usize]| {
            out.push_str(&format!("# {name}\n"));
            out.push_str(&crate::graphcore::map_to_text(map));
        };
        if self.explicit.is_some() {
            section("pi", &self.pi());
        }
        section("t", &self.class_type);
        section("o", &self.class_order);
        section("o_T", &self.type_order);
        out
    }

    /// Vertex, edge and component counts per built graph.
    pub fn summary(&self) -> BundleSummary {
        let mut graphs = Vec::new();
        let mut add = |kind: GraphKind, vertices: usize, edges: usize, comps: usize| {
            graphs.push(GraphSummary {
                graph: kind,
                vertices,
                edges,
                components: comps,
            })
        };
        if let Some(g) = &self.explicit {
            add(GraphKind::Explicit, g.vertex_count(), g.edge_count(), components(g).count);
        }
        add(
            GraphKind::Quotient,
            self.quotient.vertex_count(),
            self.quotient.edge_count(),
            components(&self.quotient).count,
        );
        add(
            GraphKind::Type,
            self.type_graph.vertex_count(),
            self.type_graph.edge_count(),
            components(&self.type_graph).count,
        );
        add(
            GraphKind::Order,
            self.order_graph.vertex_count(),
            self.order_graph.edge_count(),
            components(&self.order_graph).count,
        );
        BundleSummary {
            degree: self.degree(),
            group_order: self.group.order(),
            graphs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub graph: GraphKind,
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleSummary {
    pub degree: usize,
    pub group_order: usize,
    pub graphs: Vec<GraphSummary>,
}

/// The main component of the quotient graph of `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainComponent {
    /// Index into the quotient component report.
    pub component: usize,
    pub size: usize,
    pub is_complete: bool,
    /// Types met by the component, ascending.
    pub admissible_types: Vec<Partition>,
    /// Set for degree below 3, where the quotient has a single component
    /// and no transposition-based choice is made.
    pub degenerate: bool,
}

impl MainComponent {
    fn from_report(report: &ComponentReport<Partition>, component: usize, degenerate: bool) -> Self {
        let c = &report.components[component];
        MainComponent {
            component,
            size: c.size,
            is_complete: c.is_complete,
            admissible_types: c.census.keys().cloned().collect(),
            degenerate,
        }
    }
}

/// Partitions the non-identity elements into generator classes. Returns the
/// classes (ascending by representative), the class of each element, and
/// pending quotient edges `(class, element index)` pointing at the proper
/// nontrivial subgroups of each class's cyclic subgroup.
fn generator_classes(group: &PermGroup) -> Result<(Vec<CyclicClass>, Vec<u32>, Vec<(u32, usize)>)> {
    let elements = group.elements();
    let mut element_class = vec![NO_CLASS; elements.len()];
    let mut classes: Vec<CyclicClass> = Vec::new();
    let mut pending = Vec::new();
    let locate = |p: &Permutation| {
        group
            .index_of(p)
            .ok_or_else(|| Error::Internal(format!("power {p} of a group element is not in the group")))
    };
    for (i, x) in elements.iter().enumerate() {
        if x.is_identity() || element_class[i] != NO_CLASS {
            continue;
        }
        // elements are visited in ascending order, so x is the least generator
        let c = classes.len() as u32;
        let m = x.order();
        let mut power = x.clone();
        for k in 1..m {
            if k > 1 {
                power = power.compose(x)?;
            }
            if k.gcd(&m) == 1 {
                element_class[locate(&power)?] = c;
            } else if m % k == 0 {
                pending.push((c, locate(&power)?));
            }
        }
        classes.push(CyclicClass {
            representative: x.clone(),
            class_size: totient(m)?,
            subgroup_order: m,
        });
    }
    Ok((classes, element_class, pending))
}

/// Edges among the given types: `T` is joined to `T^d` for every proper
/// divisor `d` of `o(T)`.
fn type_graph_on(types: Vec<Partition>) -> Result<LabeledGraph<Partition>> {
    let index: BTreeMap<&Partition, usize> = types.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = Vec::new();
    for (i, t) in types.iter().enumerate() {
        for d in proper_divisors(t.order()) {
            let power = t.power(d);
            let j = *index
                .get(&power)
                .ok_or_else(|| Error::Internal(format!("power {power} of type {t} is not a type of the group")))?;
            edges.push((i, j));
        }
    }
    LabeledGraph::new(types, edges)
}

/// The power-type graph of `S_n`, built from partitions alone.
pub fn type_graph_of_symmetric(n: u32) -> Result<LabeledGraph<Partition>> {
    let types: Vec<Partition> = partitions_of(n)?.into_iter().filter(|t| !t.is_trivial()).collect();
    if types.is_empty() {
        return Err(Error::InvalidInput("S_1 has no non-identity types".into()));
    }
    type_graph_on(types)
}

/// Orders joined by proper divisibility.
fn order_graph_on(orders: Vec<u64>) -> Result<LabeledGraph<u64>> {
    let mut edges = Vec::new();
    for (i, &a) in orders.iter().enumerate() {
        for (j, &b) in orders.iter().enumerate().skip(i + 1) {
            if b % a == 0 || a % b == 0 {
                edges.push((i, j));
            }
        }
    }
    LabeledGraph::new(orders, edges)
}

/// `P_0(G)` from the quotient: classes are cliques, and adjacent classes
/// are joined completely.
fn explicit_from_quotient(
    group: &PermGroup,
    element_class: &[u32],
    quotient: &LabeledGraph<CyclicClass>,
) -> Result<LabeledGraph<Permutation>> {
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); quotient.vertex_count()];
    for (i, &c) in element_class.iter().enumerate().skip(1) {
        members[c as usize].push(i - 1);
    }
    let edges: Vec<(usize, usize)> = (0..quotient.vertex_count())
        .into_par_iter()
        .flat_map_iter(|c| {
            let own = &members[c];
            let mut out = Vec::new();
            for (a, &u) in own.iter().enumerate() {
                for &v in &own[a + 1..] {
                    out.push((u, v));
                }
            }
            for d in quotient.neighbors(c).filter(|&d| d > c) {
                for &u in own {
                    for &v in &members[d] {
                        out.push((u, v));
                    }
                }
            }
            out
        })
        .collect();
    LabeledGraph::new(group.elements()[1..].to_vec(), edges)
}

/// `P_0(G)` by testing every pair for cyclic-subgroup membership. Quadratic
/// in `|G|`; kept as an independent reference for small groups.
pub fn pairwise_power_graph(group: &PermGroup) -> Result<LabeledGraph<Permutation>> {
    let elements = &group.elements()[1..];
    if elements.iter().any(|e| e.is_identity()) || group.elements().first().map_or(true, |e| !e.is_identity()) {
        return Err(Error::Internal("identity must lead the element list".into()));
    }
    let power_sets: Vec<Vec<Permutation>> = elements
        .iter()
        .map(|x| {
            let mut powers = Vec::new();
            let mut p = x.clone();
            while !p.is_identity() {
                powers.push(p.clone());
                p = p.compose(x).expect("same degree");
            }
            powers.sort();
            powers
        })
        .collect();
    let n = elements.len();
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let power_sets = &power_sets;
            (i + 1..n).filter_map(move |j| {
                let j_in_i = power_sets[i].binary_search(&elements[j]).is_ok();
                let i_in_j = power_sets[j].binary_search(&elements[i]).is_ok();
                (j_in_i || i_in_j).then_some((i, j))
            })
        })
        .collect();
    LabeledGraph::new(elements.to_vec(), edges)
}
