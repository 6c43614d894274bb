//! Counting components: the type-graph formula for fusion-controlled groups,
//! the step-by-step procedure for `S_n`, closed forms for every `n`, and
//! structural reports on the components of `S_n`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::{are_isomorphic_small, components, induced_subgraph, is_two_connected};
use crate::partitions::{factorial, is_prime, totient, BigCount, Partition};
use crate::permutations::{is_fusion_controlled, GroupKind, PermGroup};
use crate::powergraphs::PowerGraphBundle;
use crate::Caps;

/// One step of the count: a type, the component chosen for it, and the
/// number of components it accounts for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedureStep {
    pub selected_type: Partition,
    /// Index into the quotient component report.
    pub component: usize,
    /// Number of vertices of the selected type in the chosen component.
    pub k: u64,
    /// `μ_T / (φ(o(T)) · k)`.
    pub term: BigCount,
    /// Types met by the chosen component, ascending.
    pub absorbed: Vec<Partition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedureTrace {
    pub steps: Vec<ProcedureStep>,
    pub total: BigCount,
}

impl ProcedureTrace {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }
}

/// How the procedure picks the next unabsorbed type and its component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeSelection {
    /// Least type by (number of parts, parts), component of the least class.
    Least,
    /// Types in a seeded random order, components via a random class.
    Shuffled(u64),
}

/// `μ_T / (φ(o(T)) · k)`, refusing inexact divisions.
fn exact_term(mu: &BigUint, t: &Partition, k: u64) -> Result<BigCount> {
    let denominator = BigUint::from(totient(t.order())?) * BigUint::from(k);
    let (q, r) = mu.div_rem(&denominator);
    if !r.is_zero() || q.is_zero() {
        return Err(Error::InexactDivision {
            numerator: mu.to_string(),
            denominator: denominator.to_string(),
            context: t.to_string(),
        });
    }
    Ok(q)
}

/// Sum over type-graph components of `μ_T(G) / (φ(o(T)) · k_C(T))`, one
/// type `T` per component and `C` the quotient component holding the least
/// class of that type.
///
/// The formula assumes `N_{S_n}(G)` controls fusion in `G`. Symmetric and
/// alternating groups always qualify. Generated groups are checked by brute
/// force, so their degree must be within `caps.max_bruteforce_degree`.
pub fn count_by_type_components(bundle: &PowerGraphBundle, caps: &Caps) -> Result<ProcedureTrace> {
    let group = bundle.group();
    if group.kind() == GroupKind::Generated {
        let check = is_fusion_controlled(group, caps)?;
        if let Some(w) = check.witness {
            return Err(Error::NotFusionControlled(format!(
                "{} is conjugate to {} by {} outside the normalizer",
                w.psi, w.conjugate, w.x
            )));
        }
    }
    let counts = bundle.type_counts();
    let report = bundle.quotient_components();
    let least_class = least_class_per_type(bundle);
    let type_report = bundle.type_components();
    let mut steps = Vec::with_capacity(type_report.count);
    let mut total = BigUint::zero();
    for tc in &type_report.components {
        let t = tc
            .vertices
            .iter()
            .map(|&v| bundle.type_graph().label(v))
            .min_by(|a, b| a.selection_key().cmp(&b.selection_key()))
            .expect("components are non-empty");
        let class = least_class[t];
        let component = report.component_of(class);
        let k = report.components[component].census[t] as u64;
        let term = exact_term(&BigUint::from(counts[t]), t, k)?;
        total += &term;
        steps.push(ProcedureStep {
            selected_type: t.clone(),
            component,
            k,
            term,
            absorbed: tc.vertices.iter().map(|&v| bundle.type_graph().label(v).clone()).collect(),
        });
    }
    Ok(ProcedureTrace { steps, total })
}

fn least_class_per_type(bundle: &PowerGraphBundle) -> BTreeMap<&Partition, usize> {
    let mut out = BTreeMap::new();
    for c in 0..bundle.classes().len() {
        out.entry(bundle.class_type(c)).or_insert(c);
    }
    out
}

/// The component-counting procedure on the quotient graph of `S_n`, with
/// the least-type selection rule.
pub fn run_procedure_sn(n: usize, caps: &Caps) -> Result<ProcedureTrace> {
    let bundle = symmetric_quotient_bundle(n, caps)?;
    run_procedure(&bundle, TypeSelection::Least)
}

/// `S_n` bundle without the explicit graph, for the quotient-only pipeline.
pub fn symmetric_quotient_bundle(n: usize, caps: &Caps) -> Result<PowerGraphBundle> {
    if n > caps.max_pipeline_degree {
        return Err(Error::CapExceeded {
            what: "pipeline degree",
            limit: caps.max_pipeline_degree,
            actual: n,
        });
    }
    PowerGraphBundle::without_explicit(PermGroup::symmetric(n, caps)?)
}

/// The procedure on a bundle of `S_n`:
///
/// * start with every non-identity type unabsorbed;
/// * pick an unabsorbed type `T`, a quotient component `C` containing a
///   class of type `T`, and add `μ_T(S_n) / (φ(o(T)) · k_C(T))`;
/// * absorb every type met by `C`;
/// * stop when nothing is left.
///
/// The absorbed set must be exactly the type-graph component of `T`, and
/// each absorbed type must still have been unabsorbed; either failure is
/// reported as an internal error.
pub fn run_procedure(bundle: &PowerGraphBundle, selection: TypeSelection) -> Result<ProcedureTrace> {
    if bundle.group().kind() != GroupKind::Symmetric {
        return Err(Error::InvalidInput("the procedure runs on symmetric groups".into()));
    }
    let report = bundle.quotient_components();
    let type_report = bundle.type_components();
    let type_graph = bundle.type_graph();
    let mut classes_of_type: BTreeMap<&Partition, Vec<usize>> = BTreeMap::new();
    for c in 0..bundle.classes().len() {
        classes_of_type.entry(bundle.class_type(c)).or_default().push(c);
    }

    let mut order: Vec<&Partition> = type_graph.labels().iter().collect();
    order.sort_by(|a, b| a.selection_key().cmp(&b.selection_key()));
    let mut rng = match selection {
        TypeSelection::Least => None,
        TypeSelection::Shuffled(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            order.shuffle(&mut rng);
            Some(rng)
        }
    };

    let mut unabsorbed: BTreeSet<&Partition> = order.iter().copied().collect();
    let mut steps = Vec::new();
    let mut total = BigUint::zero();
    for &t in &order {
        if !unabsorbed.contains(t) {
            continue;
        }
        let candidates = &classes_of_type[t];
        let class = match rng.as_mut() {
            None => candidates[0],
            Some(rng) => candidates[rng.gen_range(0..candidates.len())],
        };
        let component = report.component_of(class);
        let census = &report.components[component].census;
        let k = census[t] as u64;
        let term = exact_term(&t.mu_symmetric(), t, k)?;
        let absorbed: Vec<Partition> = census.keys().cloned().collect();

        let tv = type_graph.index_of(t).expect("type vertex exists");
        let type_component = &type_report.components[type_report.component_of(tv)];
        let expected: BTreeSet<&Partition> = type_component.vertices.iter().map(|&v| type_graph.label(v)).collect();
        if expected != absorbed.iter().collect::<BTreeSet<_>>() {
            return Err(Error::Internal(format!(
                "types of the component chosen for {t} differ from its type-graph component"
            )));
        }
        for a in &absorbed {
            if !unabsorbed.remove(a) {
                return Err(Error::Internal(format!("type {a} absorbed twice")));
            }
        }
        total += &term;
        steps.push(ProcedureStep {
            selected_type: t.clone(),
            component,
            k,
            term,
            absorbed,
        });
    }
    Ok(ProcedureTrace { steps, total })
}

/// Which closed-form row applies to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `n ≤ 7`, read from the table of small cases.
    Small,
    Prime,
    PrimePlusOne,
    Neither,
}

impl Regime {
    pub fn of(n: u64) -> Regime {
        if n <= 7 {
            Regime::Small
        } else if is_prime(n) {
            Regime::Prime
        } else if is_prime(n - 1) {
            Regime::PrimePlusOne
        } else {
            Regime::Neither
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Regime::Small => "small",
            Regime::Prime => "prime",
            Regime::PrimePlusOne => "prime_plus_one",
            Regime::Neither => "neither",
        }
    }
}

/// Component counts of `P_0(S_n)`, its type graph and its order graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormResult {
    pub n: u64,
    pub c0: BigCount,
    pub c0_type: u32,
    pub c0_order: u32,
    pub regime: Regime,
}

const SMALL_TABLE: [(u64, u32, u32); 6] = [(1, 1, 1), (4, 2, 2), (13, 3, 2), (31, 3, 2), (83, 4, 2), (128, 3, 2)];

/// Closed-form counts for `S_n`, `n ≥ 2`: the small-case table up to 7,
/// then `(n-2)! + 1` for prime `n`, `n·(n-3)! + 1` when `n - 1` is prime,
/// and `1` otherwise.
pub fn closed_form_sn(n: u64) -> Result<ClosedFormResult> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("closed form needs n >= 2, got {n}")));
    }
    let regime = Regime::of(n);
    let (c0, c0_type, c0_order) = match regime {
        Regime::Small => {
            let (c, t, o) = SMALL_TABLE[(n - 2) as usize];
            (BigUint::from(c), t, o)
        }
        Regime::Prime => (factorial(n - 2) + BigUint::one(), 2, 2),
        Regime::PrimePlusOne => (BigUint::from(n) * factorial(n - 3) + BigUint::one(), 2, 2),
        Regime::Neither => (BigUint::one(), 1, 1),
    };
    Ok(ClosedFormResult {
        n,
        c0,
        c0_type,
        c0_order,
        regime,
    })
}

/// Shape of one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentShape {
    pub size: usize,
    pub is_complete: bool,
    /// Vertex count per cycle type.
    pub type_census: BTreeMap<String, usize>,
}

/// A non-main component of the quotient graph of `S_n` and, when the
/// explicit graph was built, the matching component of `P_0(S_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OtherComponent {
    pub quotient: ComponentShape,
    pub isolated: bool,
    /// Set for isolated classes whose order is prime.
    pub prime_order: bool,
    pub explicit: Option<ComponentShape>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub n: usize,
    pub main: ComponentShape,
    pub main_explicit: Option<ComponentShape>,
    /// Completeness of the type-graph component of `[1^{n-2},2]`.
    pub main_type_complete: bool,
    pub others: Vec<OtherComponent>,
}

impl StructureReport {
    /// For `n ≥ 8`: every non-main quotient component is an isolated class
    /// of prime order `p`, its explicit component (when built) is complete
    /// on `p - 1` vertices, and no main component is complete.
    pub fn isolated_prime_shape(&self) -> bool {
        let others_ok = self.others.iter().all(|o| {
            let order_ok = o.isolated && o.prime_order;
            let explicit_ok = o.explicit.as_ref().map_or(true, |x| {
                let p = o
                    .quotient
                    .type_census
                    .keys()
                    .next()
                    .and_then(|t| t.parse::<Partition>().ok())
                    .map(|t| t.order() as usize);
                x.is_complete && p.map_or(false, |p| x.size == p - 1)
            });
            order_ok && explicit_ok
        });
        let mains_incomplete = !self.main.is_complete
            && !self.main_type_complete
            && self.main_explicit.as_ref().map_or(true, |m| !m.is_complete);
        others_ok && mains_incomplete
    }
}

fn shape(size: usize, is_complete: bool, census: &BTreeMap<Partition, usize>) -> ComponentShape {
    ComponentShape {
        size,
        is_complete,
        type_census: census.iter().map(|(t, &k)| (t.to_string(), k)).collect(),
    }
}

/// Describes the main component and every other component of the quotient
/// graph of `S_n` (and of `P_0(S_n)` when it was built).
pub fn structure_report(bundle: &PowerGraphBundle) -> Result<StructureReport> {
    let n = bundle.degree();
    if bundle.group().kind() != GroupKind::Symmetric || n < 3 {
        return Err(Error::InvalidInput("structure reports need S_n with n >= 3".into()));
    }
    let main = bundle.main_component()?;
    let report = bundle.quotient_components();
    let explicit = if bundle.has_explicit() {
        Some(bundle.explicit_components()?)
    } else {
        None
    };
    // explicit vertex of a class representative
    let explicit_vertex = |class: usize| -> usize {
        bundle
            .group()
            .index_of(&bundle.classes()[class].representative)
            .expect("representative is a group element")
            - 1
    };
    let explicit_shape = |class: usize| {
        explicit.as_ref().map(|x| {
            let c = &x.components[x.component_of(explicit_vertex(class))];
            shape(c.size, c.is_complete, &c.census)
        })
    };

    let main_comp = &report.components[main.component];
    let transposition_type = bundle.class_type(main_comp.vertices[0]).clone();
    let type_report = bundle.type_components();
    let tv = bundle.type_graph().index_of(&transposition_type).expect("type exists");
    let main_type_complete = type_report.components[type_report.component_of(tv)].is_complete;

    let others = report
        .components
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != main.component)
        .map(|(_, c)| {
            let isolated = c.size == 1;
            OtherComponent {
                quotient: shape(c.size, c.is_complete, &c.census),
                isolated,
                prime_order: isolated && is_prime(bundle.classes()[c.vertices[0]].subgroup_order),
                explicit: explicit_shape(c.vertices[0]),
            }
        })
        .collect();
    Ok(StructureReport {
        n,
        main: shape(main_comp.size, main_comp.is_complete, &main_comp.census),
        main_explicit: explicit_shape(main_comp.vertices[0]),
        main_type_complete,
        others,
    })
}

/// Where a connectivity flag came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagSource {
    /// Computed on the graph itself.
    Graph,
    /// Read off the quotient graph, whose component count equals that of
    /// `P_0(S_n)`.
    Quotient,
    ClosedForm,
    Arithmetic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub value: bool,
    pub source: FlagSource,
}

/// The six equivalent conditions on `S_n`:
/// `P(S_n)` 2-connected, `P_0(S_n)` connected, the quotient connected, the
/// type graph connected, the order graph connected, and
/// `n = 2 or neither n nor n - 1 is prime`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityFlags {
    pub n: u64,
    pub two_connected: Flag,
    pub proper_connected: Flag,
    pub quotient_connected: Flag,
    pub type_connected: Flag,
    pub order_connected: Flag,
    pub arithmetic: Flag,
}

impl ConnectivityFlags {
    pub fn values(&self) -> [bool; 6] {
        [
            self.two_connected.value,
            self.proper_connected.value,
            self.quotient_connected.value,
            self.type_connected.value,
            self.order_connected.value,
            self.arithmetic.value,
        ]
    }

    pub fn all_agree(&self) -> bool {
        let v = self.values();
        v.iter().all(|&b| b == v[0])
    }
}

/// `n = 2` or `n ∉ P ∪ (P + 1)`.
pub fn connectivity_predicate(n: u64) -> bool {
    n == 2 || (!is_prime(n) && !is_prime(n - 1))
}

/// Evaluates each condition on the graphs when `caps` allow building them,
/// and from the closed form otherwise.
pub fn connectivity_equivalences(n: u64, caps: &Caps) -> Result<ConnectivityFlags> {
    let closed = closed_form_sn(n)?;
    let from_closed = |value: bool| Flag {
        value,
        source: FlagSource::ClosedForm,
    };
    let arithmetic = Flag {
        value: connectivity_predicate(n),
        source: FlagSource::Arithmetic,
    };
    if n as usize > caps.max_pipeline_degree {
        let connected = closed.c0.is_one();
        return Ok(ConnectivityFlags {
            n,
            two_connected: from_closed(connected),
            proper_connected: from_closed(connected),
            quotient_connected: from_closed(connected),
            type_connected: from_closed(closed.c0_type == 1),
            order_connected: from_closed(closed.c0_order == 1),
            arithmetic,
        });
    }
    let bundle = PowerGraphBundle::new(PermGroup::symmetric(n as usize, caps)?, caps)?;
    connectivity_of_bundle(&bundle)
}

/// The connectivity conditions evaluated on an already built bundle of
/// `S_n`. The first two are read off the quotient when the explicit graph
/// was not built.
pub fn connectivity_of_bundle(bundle: &PowerGraphBundle) -> Result<ConnectivityFlags> {
    if bundle.group().kind() != GroupKind::Symmetric {
        return Err(Error::InvalidInput("connectivity conditions concern S_n".into()));
    }
    let n = bundle.degree() as u64;
    let arithmetic = Flag {
        value: connectivity_predicate(n),
        source: FlagSource::Arithmetic,
    };
    let graph = |value: bool| Flag {
        value,
        source: FlagSource::Graph,
    };
    let quotient_connected = components(bundle.quotient()).count == 1;
    let (two_connected, proper_connected) = if bundle.has_explicit() {
        let full = bundle.power_graph_with_identity()?;
        (
            graph(is_two_connected(&full)),
            graph(components(bundle.explicit()?).count == 1),
        )
    } else {
        let via = Flag {
            value: quotient_connected,
            source: FlagSource::Quotient,
        };
        (via, via)
    };
    Ok(ConnectivityFlags {
        n,
        two_connected,
        proper_connected,
        quotient_connected: graph(quotient_connected),
        type_connected: graph(components(bundle.type_graph()).count == 1),
        order_connected: graph(components(bundle.order_graph()).count == 1),
        arithmetic,
    })
}

/// Per-type class counts against the components that meet the type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeComponentCheck {
    pub cycle_type: Partition,
    /// Quotient vertices of this type.
    pub total_classes: usize,
    /// Components meeting the type.
    pub admissible_components: usize,
    /// Vertices of this type per admissible component (constant when the
    /// checks pass).
    pub k: usize,
    /// `μ_T / (φ(o(T)) · k)`.
    pub predicted_components: BigCount,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeComponentReport {
    pub types: Vec<TypeComponentCheck>,
    /// One line per violated identity, with a witness.
    pub violations: Vec<String>,
}

impl TypeComponentReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn get(&self, t: &Partition) -> Option<&TypeComponentCheck> {
        self.types.iter().find(|l| &l.cycle_type == t)
    }
}

/// Checks, for a fusion-controlled group, that every component meeting a
/// type holds the same number `k` of its classes, that the ratio of total
/// classes to `k` is shared by all types of a component, and that the
/// number of components meeting `T` equals `μ_T / (φ(o(T)) · k)`.
pub fn type_component_checks(bundle: &PowerGraphBundle) -> Result<TypeComponentReport> {
    let report = bundle.quotient_components();
    let counts = bundle.type_counts();
    let mut totals: BTreeMap<&Partition, usize> = BTreeMap::new();
    for c in 0..bundle.classes().len() {
        *totals.entry(bundle.class_type(c)).or_insert(0) += 1;
    }
    let mut per_type: BTreeMap<&Partition, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, c) in report.components.iter().enumerate() {
        for (t, &k) in &c.census {
            per_type.entry(t).or_default().push((i, k));
        }
    }
    let mut violations = Vec::new();
    let mut types = Vec::new();
    for (t, seen) in &per_type {
        let k = seen[0].1;
        if let Some(&(c, other)) = seen.iter().find(|&&(_, kk)| kk != k) {
            violations.push(format!(
                "type {t}: component {} holds {k} classes, component {c} holds {other}",
                seen[0].0
            ));
        }
        let predicted = BigUint::from(counts[*t]) / (BigUint::from(totient(t.order())?) * BigUint::from(k as u64));
        if predicted != BigUint::from(seen.len()) {
            violations.push(format!(
                "type {t}: {} components meet it, formula gives {predicted}",
                seen.len()
            ));
        }
        types.push(TypeComponentCheck {
            cycle_type: (*t).clone(),
            total_classes: totals[*t],
            admissible_components: seen.len(),
            k,
            predicted_components: predicted,
        });
    }
    for (i, c) in report.components.iter().enumerate() {
        // total/k as a reduced fraction must agree across the component's types
        let ratios: BTreeSet<(usize, usize)> = c
            .census
            .iter()
            .map(|(t, &k)| {
                let total = totals[t];
                let g = total.gcd(&k);
                (total / g, k / g)
            })
            .collect();
        if ratios.len() > 1 {
            violations.push(format!("component {i}: class ratios differ across its types ({ratios:?})"));
        }
    }
    Ok(TypeComponentReport { types, violations })
}

/// Whether every quotient component is isomorphic to the type-graph
/// component induced by its types. Exhaustive matching; meant for small
/// degrees.
pub fn components_match_type_graph(bundle: &PowerGraphBundle) -> Result<bool> {
    let report = bundle.quotient_components();
    let type_graph = bundle.type_graph();
    for c in &report.components {
        let type_vertices: Vec<usize> = c
            .census
            .keys()
            .map(|t| type_graph.index_of(t).expect("type vertex exists"))
            .collect();
        if type_vertices.len() != c.size {
            return Ok(false);
        }
        let q = induced_subgraph(bundle.quotient(), &c.vertices)?;
        let t = induced_subgraph(type_graph, &type_vertices)?;
        if !are_isomorphic_small(&q, &t) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One step in a serialized report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    #[serde(rename = "type")]
    pub cycle_type: String,
    pub term: String,
    pub k: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainRecord {
    pub size: usize,
    pub is_complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureRecord {
    pub main: MainRecord,
    pub others: Vec<ComponentShape>,
}

/// Serializable summary of `S_n`: closed form, procedure steps and
/// component structure. Big numbers are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnReport {
    pub n: u64,
    pub regime: Regime,
    pub c0: String,
    pub c0_type: u32,
    pub c0_order: u32,
    /// Empty when `n` exceeds the graph pipeline cap.
    pub steps: Vec<StepRecord>,
    /// Absent when `n` exceeds the graph pipeline cap or `n < 3`.
    pub structure: Option<StructureRecord>,
}

/// Builds an [`SnReport`], running the graph pipeline when `caps` allow.
pub fn report_sn(n: u64, caps: &Caps) -> Result<SnReport> {
    let closed = closed_form_sn(n)?;
    let mut out = SnReport {
        n,
        regime: closed.regime,
        c0: closed.c0.to_string(),
        c0_type: closed.c0_type,
        c0_order: closed.c0_order,
        steps: Vec::new(),
        structure: None,
    };
    if n as usize > caps.max_pipeline_degree {
        return Ok(out);
    }
    let bundle = symmetric_quotient_bundle(n as usize, caps)?;
    let trace = run_procedure(&bundle, TypeSelection::Least)?;
    if trace.total != closed.c0 {
        return Err(Error::Internal(format!(
            "procedure total {} differs from closed form {}",
            trace.total, closed.c0
        )));
    }
    out.steps = trace
        .steps
        .iter()
        .map(|s| StepRecord {
            cycle_type: s.selected_type.to_string(),
            term: s.term.to_string(),
            k: s.k,
        })
        .collect();
    if n >= 3 {
        let s = structure_report(&bundle)?;
        out.structure = Some(StructureRecord {
            main: MainRecord {
                size: s.main.size,
                is_complete: s.main.is_complete,
            },
            others: s.others.into_iter().map(|o| o.quotient).collect(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutations::Permutation;

    fn caps() -> Caps {
        Caps::default()
    }

    fn t(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn sym(n: usize) -> PowerGraphBundle {
        PowerGraphBundle::symmetric(n, &caps()).unwrap()
    }

    fn terms(trace: &ProcedureTrace) -> Vec<String> {
        trace.steps.iter().map(|s| s.term.to_string()).collect()
    }

    #[test]
    fn type_component_count_small_cases() {
        let s5 = count_by_type_components(&sym(5), &caps()).unwrap();
        assert_eq!(s5.total, BigUint::from(31u32));
        let mut got = terms(&s5);
        got.sort();
        assert_eq!(got, vec!["10", "15", "6"]);
        let s2 = count_by_type_components(&sym(2), &caps()).unwrap();
        assert_eq!(s2.total, BigUint::one());
        let s6 = count_by_type_components(&sym(6), &caps()).unwrap();
        assert_eq!(s6.total, BigUint::from(83u32));
        let mut got = terms(&s6);
        got.sort_by_key(|s| std::cmp::Reverse(s.parse::<u32>().unwrap()));
        assert_eq!(got, vec!["45", "36", "1", "1"]);
    }

    #[test]
    fn type_component_count_rejects_unfused_sylow() {
        let gens = [
            Permutation::parse("(1 3)", Some(4)).unwrap(),
            Permutation::parse("(1 2 3 4)", Some(4)).unwrap(),
        ];
        let g = PermGroup::generated(4, &gens, &caps()).unwrap();
        let b = PowerGraphBundle::new(g, &caps()).unwrap();
        assert!(matches!(count_by_type_components(&b, &caps()), Err(Error::NotFusionControlled(_))));
    }

    #[test]
    fn type_component_count_on_fusion_controlled_subgroups() {
        // a cyclic group generated by an n-cycle, and A_4 inside S_4
        for gens in [vec!["(1 2 3 4 5)"], vec!["(1 2 3)", "(2 3 4)"]] {
            let n = if gens.len() == 1 { 5 } else { 4 };
            let gens: Vec<Permutation> = gens.iter().map(|g| Permutation::parse(g, Some(n)).unwrap()).collect();
            let g = PermGroup::generated(n, &gens, &caps()).unwrap();
            let b = PowerGraphBundle::new(g, &caps()).unwrap();
            let trace = count_by_type_components(&b, &caps()).unwrap();
            assert_eq!(trace.total, BigUint::from(components(b.quotient()).count));
        }
        let a5 = PowerGraphBundle::new(PermGroup::alternating(5, &caps()).unwrap(), &caps()).unwrap();
        let trace = count_by_type_components(&a5, &caps()).unwrap();
        assert_eq!(trace.total, BigUint::from(components(a5.quotient()).count));
    }

    #[test]
    fn procedure_examples() {
        let s4 = run_procedure_sn(4, &caps()).unwrap();
        assert_eq!(s4.total, BigUint::from(13u32));
        assert_eq!(s4.step_count(), 3);
        let s7 = run_procedure_sn(7, &caps()).unwrap();
        assert_eq!(s7.total, BigUint::from(128u32));
        assert_eq!(s7.step_count(), 3);
        let mut got = terms(&s7);
        got.sort_by_key(|s| s.parse::<u32>().unwrap());
        assert_eq!(got, vec!["1", "7", "120"]);
        // least selection opens with the transposition-free single cycle [n]
        assert_eq!(s7.steps[0].selected_type, t("[7]"));
    }

    #[test]
    fn procedure_absorbs_disjoint_cover() {
        for n in 2..=7 {
            let b = symmetric_quotient_bundle(n, &caps()).unwrap();
            let trace = run_procedure(&b, TypeSelection::Least).unwrap();
            let mut seen = BTreeSet::new();
            for s in &trace.steps {
                for a in &s.absorbed {
                    assert!(seen.insert(a.clone()));
                }
            }
            assert_eq!(seen.len(), b.type_graph().vertex_count());
            assert_eq!(trace.step_count(), b.type_components().count);
        }
    }

    #[test]
    fn shuffled_selection_keeps_total() {
        let b = symmetric_quotient_bundle(6, &caps()).unwrap();
        let base = run_procedure(&b, TypeSelection::Least).unwrap();
        for seed in 0..5 {
            let shuffled = run_procedure(&b, TypeSelection::Shuffled(seed)).unwrap();
            assert_eq!(shuffled.total, base.total);
            assert_eq!(shuffled.step_count(), base.step_count());
        }
    }

    #[test]
    fn procedure_needs_symmetric_group() {
        let b = PowerGraphBundle::new(PermGroup::alternating(4, &caps()).unwrap(), &caps()).unwrap();
        assert!(run_procedure(&b, TypeSelection::Least).is_err());
        assert!(matches!(run_procedure_sn(10, &caps()), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn closed_form_examples() {
        let r = closed_form_sn(9).unwrap();
        assert_eq!((r.c0.to_string().as_str(), r.c0_type, r.c0_order), ("1", 1, 1));
        assert_eq!(r.regime, Regime::Neither);
        let r = closed_form_sn(11).unwrap();
        assert_eq!(r.c0, BigUint::from(362_881u32));
        assert_eq!((r.c0_type, r.c0_order, r.regime), (2, 2, Regime::Prime));
        let r = closed_form_sn(6).unwrap();
        assert_eq!((r.c0, r.c0_type, r.c0_order), (BigUint::from(83u32), 4, 2));
        let r = closed_form_sn(12).unwrap();
        assert_eq!(r.c0, BigUint::from(4_354_561u32));
        assert_eq!(r.regime, Regime::PrimePlusOne);
        assert_eq!(closed_form_sn(8).unwrap().c0, BigUint::from(961u32));
        assert!(closed_form_sn(1).is_err());
        let r = closed_form_sn(101).unwrap();
        assert_eq!(r.c0, factorial(99) + BigUint::one());
        assert_eq!(r.c0.to_string().len(), 156);
    }

    #[test]
    fn closed_form_regime_is_consistent() {
        for n in 8..200u64 {
            let r = closed_form_sn(n).unwrap();
            let expected = if is_prime(n) {
                Regime::Prime
            } else if is_prime(n - 1) {
                Regime::PrimePlusOne
            } else {
                Regime::Neither
            };
            assert_eq!(r.regime, expected);
            assert_eq!(r.c0_type, r.c0_order);
            assert_eq!(r.c0.is_one(), connectivity_predicate(n));
        }
    }

    #[test]
    fn structure_of_s7() {
        let s = structure_report(&sym(7)).unwrap();
        assert_eq!(s.others.len(), 127);
        let sevens = s
            .others
            .iter()
            .filter(|o| o.isolated && o.quotient.type_census.contains_key("[7]"))
            .count();
        assert_eq!(sevens, 120);
        let fixed_point: Vec<&OtherComponent> = s.others.iter().filter(|o| !o.isolated).collect();
        assert_eq!(fixed_point.len(), 7);
        for o in fixed_point {
            let keys: BTreeSet<&str> = o.quotient.type_census.keys().map(String::as_str).collect();
            assert_eq!(keys, BTreeSet::from(["[1,2,2,2]", "[1,3,3]", "[1,6]"]));
        }
        assert!(!s.main.is_complete);
        assert!(!s.isolated_prime_shape());
    }

    #[test]
    fn structure_of_s5() {
        let s = structure_report(&sym(5)).unwrap();
        assert_eq!(s.others.len(), 30);
        assert!(s.others.iter().all(|o| o.explicit.is_some()));
        assert!(structure_report(&sym(2)).is_err());
    }

    #[test]
    fn connectivity_small() {
        for n in [2u64, 3, 4, 5, 6, 7] {
            let f = connectivity_equivalences(n, &caps()).unwrap();
            assert!(f.all_agree(), "n = {n}: {:?}", f.values());
            assert_eq!(f.values()[0], n == 2);
            assert_eq!(f.two_connected.source, FlagSource::Graph);
        }
        let f = connectivity_equivalences(16, &caps()).unwrap();
        assert!(f.all_agree());
        assert!(f.values()[0]);
        assert_eq!(f.type_connected.source, FlagSource::ClosedForm);
    }

    #[test]
    fn type_component_check_examples() {
        let r = type_component_checks(&sym(5)).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
        let l = r.get(&t("[1,4]")).unwrap();
        assert_eq!((l.admissible_components, l.k), (15, 1));
        let r = type_component_checks(&sym(6)).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
        assert_eq!(r.get(&t("[2,2,2]")).unwrap().admissible_components, 1);
        // isolated types: one component per class
        let s7 = sym(7);
        let r = type_component_checks(&s7).unwrap();
        let seven = r.get(&t("[7]")).unwrap();
        assert_eq!(BigUint::from(seven.admissible_components), t("[7]").mu_symmetric() / BigUint::from(6u32));
    }

    #[test]
    fn type_component_checks_flag_the_unfused_sylow() {
        let gens = [
            Permutation::parse("(1 3)", Some(4)).unwrap(),
            Permutation::parse("(1 2 3 4)", Some(4)).unwrap(),
        ];
        let b = PowerGraphBundle::new(PermGroup::generated(4, &gens, &caps()).unwrap(), &caps()).unwrap();
        assert!(!type_component_checks(&b).unwrap().holds());
    }

    #[test]
    fn isomorphism_to_type_components() {
        for n in 2..=5 {
            assert!(components_match_type_graph(&sym(n)).unwrap(), "n = {n}");
        }
        assert!(!components_match_type_graph(&sym(6)).unwrap());
    }

    #[test]
    fn report_round_trips() {
        let r = report_sn(5, &caps()).unwrap();
        assert_eq!(r.c0, "31");
        assert_eq!(r.steps.len(), 3);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"regime\":\"small\""));
        assert!(json.contains("\"type\":\"[5]\""));
        let back: SnReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        let big = report_sn(42, &caps()).unwrap();
        assert!(big.steps.is_empty() && big.structure.is_none());
        assert_eq!(big.regime, Regime::PrimePlusOne);
    }
}
