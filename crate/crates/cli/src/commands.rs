use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use powergraph::counting::{
    closed_form_sn, report_sn, run_procedure, symmetric_quotient_bundle, Regime, TypeSelection,
};
use powergraph::graphcore::{
    components_with, parse_exchange_format, parse_map_text, ComponentReport, GraphMap,
};
use powergraph::partitions::is_prime;
use powergraph::permutations::{parse_generator_list, parse_group_file, GroupKind, PermGroup, Permutation};
use powergraph::powergraphs::{GraphKind, PowerGraphBundle};
use powergraph::{Caps, Error};

use crate::output::{csv_rows, emit, json, CliError, CliResult, Format};
use crate::{CheckHomArgs, Cli, Command, GroupArgs, GroupKindArg, MapArg};

pub fn run(cli: &Cli) -> CliResult<()> {
    let caps = cli.caps();
    let (text, outcome) = match &cli.command {
        Command::Components { group, graph } => (components(cli.format, group, (*graph).into(), &caps)?, Ok(())),
        Command::VerifyTables { rows, expected } => verify_tables(cli, rows, expected.as_deref(), &caps)?,
        Command::CheckHom(args) => (check_hom(cli.format, args, &caps)?, Ok(())),
        Command::ClosedForm { n } => (closed_form(cli.format, *n)?, Ok(())),
        Command::Report { n } => (report(cli.format, *n, &caps)?, Ok(())),
        Command::Export {
            group,
            graph,
            maps,
            summary,
        } => (export(cli.format, group, (*graph).into(), *maps, *summary, &caps)?, Ok(())),
    };
    emit(cli.out.as_deref(), &text)?;
    outcome
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn build_group(args: &GroupArgs, caps: &Caps) -> CliResult<PermGroup> {
    let need_n = || args.n.ok_or_else(|| CliError::Usage("--n is required for this group".into()));
    match args.group {
        GroupKindArg::Sym | GroupKindArg::Alt => {
            if args.gens.is_some() || args.gens_file.is_some() {
                return Err(CliError::Usage("generators only apply to --group gen".into()));
            }
            let n = need_n()?;
            if n > caps.max_pipeline_degree {
                return Err(Error::CapExceeded {
                    what: "degree",
                    limit: caps.max_pipeline_degree,
                    actual: n,
                }
                .into());
            }
            Ok(if args.group == GroupKindArg::Sym {
                PermGroup::symmetric(n, caps)?
            } else {
                PermGroup::alternating(n, caps)?
            })
        }
        GroupKindArg::Gen => {
            let (n, gens) = match (&args.gens, &args.gens_file) {
                (Some(text), None) => {
                    let n = need_n()?;
                    (n, parse_generator_list(text, n)?)
                }
                (None, Some(path)) => {
                    let (degree, gens) = parse_group_file(&read(path)?)?;
                    if let Some(n) = args.n.filter(|&n| n != degree) {
                        return Err(Error::DegreeMismatch { left: n, right: degree }.into());
                    }
                    (degree, gens)
                }
                _ => return Err(CliError::Usage("--group gen needs --gens or --gens-file".into())),
            };
            Ok(PermGroup::generated(n, &gens, caps)?)
        }
    }
}

fn describe(group: &PermGroup) -> String {
    match group.kind() {
        GroupKind::Symmetric => format!("S_{}", group.degree()),
        GroupKind::Alternating => format!("A_{}", group.degree()),
        GroupKind::Generated => {
            let gens: Vec<String> = group.generators().iter().map(|g| g.to_string()).collect();
            format!("<{}>", gens.join(", "))
        }
    }
}

fn bundle(group: PermGroup, explicit: bool, caps: &Caps) -> CliResult<PowerGraphBundle> {
    Ok(if explicit {
        PowerGraphBundle::new(group, caps)?
    } else {
        PowerGraphBundle::without_explicit(group)?
    })
}

#[derive(Debug, Serialize)]
struct ComponentRow {
    graph: GraphKind,
    component_id: usize,
    size: usize,
    is_complete: bool,
    census: String,
}

#[derive(Debug, Serialize)]
struct ComponentJson {
    component_id: usize,
    size: usize,
    is_complete: bool,
    census: BTreeMap<String, usize>,
}

#[derive(Debug, Serialize)]
struct ComponentsJson {
    graph: GraphKind,
    group: String,
    degree: usize,
    group_order: usize,
    count: usize,
    components: Vec<ComponentJson>,
}

fn census_strings<K: ToString>(report: ComponentReport<K>) -> Vec<(usize, bool, Vec<(String, usize)>)> {
    report
        .components
        .into_iter()
        .map(|c| {
            let census = c.census.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            (c.size, c.is_complete, census)
        })
        .collect()
}

fn components(format: Format, args: &GroupArgs, kind: GraphKind, caps: &Caps) -> CliResult<String> {
    let group = build_group(args, caps)?;
    let name = describe(&group);
    let b = bundle(group, kind == GraphKind::Explicit, caps)?;
    let rows = match kind {
        GraphKind::Explicit => census_strings(b.explicit_components()?),
        GraphKind::Quotient => census_strings(b.quotient_components()),
        GraphKind::Order => census_strings(b.order_components()),
        GraphKind::Type => {
            let g = b.type_graph();
            census_strings(components_with(g, |v| g.label(v).clone()))
        }
    };
    let count = rows.len();
    Ok(match format {
        Format::Text => {
            let mut s = format!("{kind} graph of {name}: {count} components\n");
            for (i, (size, complete, census)) in rows.iter().enumerate() {
                let census: Vec<String> = census.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                let shape = if *complete { "complete" } else { "not complete" };
                writeln!(s, "  {i}: size {size}, {shape}, census {}", census.join(" ")).unwrap();
            }
            s
        }
        Format::Json => json(&ComponentsJson {
            graph: kind,
            group: name,
            degree: b.degree(),
            group_order: b.group().order(),
            count,
            components: rows
                .into_iter()
                .enumerate()
                .map(|(i, (size, is_complete, census))| ComponentJson {
                    component_id: i,
                    size,
                    is_complete,
                    census: census.into_iter().collect(),
                })
                .collect(),
        })?,
        Format::Csv => csv_rows(
            &rows
                .into_iter()
                .enumerate()
                .map(|(i, (size, is_complete, census))| ComponentRow {
                    graph: kind,
                    component_id: i,
                    size,
                    is_complete,
                    census: census
                        .iter()
                        .map(|(k, v)| format!("{k}:{v}"))
                        .collect::<Vec<_>>()
                        .join(";"),
                })
                .collect::<Vec<_>>(),
        )?,
    })
}

/// Expected `(c0, c0_type, c0_order)` for `S_n`.
const TABLE: [(u64, &str, u32, u32); 12] = [
    (2, "1", 1, 1),
    (3, "4", 2, 2),
    (4, "13", 3, 2),
    (5, "31", 3, 2),
    (6, "83", 4, 2),
    (7, "128", 3, 2),
    (8, "961", 2, 2),
    (9, "1", 1, 1),
    (10, "1", 1, 1),
    (11, "362881", 2, 2),
    (12, "4354561", 2, 2),
    (13, "39916801", 2, 2),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Expected {
    n: u64,
    c0: String,
    c0_type: u32,
    c0_order: u32,
}

#[derive(Debug, Serialize)]
struct TableRow {
    n: u64,
    method: &'static str,
    c0: String,
    c0_type: u32,
    c0_order: u32,
    status: &'static str,
}

fn parse_rows(text: &str) -> CliResult<(u64, u64)> {
    let bad = || CliError::Usage(format!("--rows expects A..B or n, got {text:?}"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (text, text),
    };
    let (a, b) = (a.trim().parse::<u64>().map_err(|_| bad())?, b.trim().parse::<u64>().map_err(|_| bad())?);
    if a < 2 || a > b {
        return Err(CliError::Usage(format!("--rows needs 2 <= A <= B, got {text:?}")));
    }
    Ok((a, b))
}

fn load_expected(path: Option<&Path>) -> CliResult<BTreeMap<u64, Expected>> {
    let mut out = BTreeMap::new();
    match path {
        None => {
            for (n, c0, t, o) in TABLE {
                out.insert(
                    n,
                    Expected {
                        n,
                        c0: c0.into(),
                        c0_type: t,
                        c0_order: o,
                    },
                );
            }
        }
        Some(path) => {
            let text = read(path)?;
            let mut reader = csv::ReaderBuilder::new()
                .has_headers(false)
                .trim(csv::Trim::All)
                .comment(Some(b'#'))
                .from_reader(text.as_bytes());
            for record in reader.records() {
                let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                if record.get(0) == Some("n") {
                    continue;
                }
                let row: Expected = record
                    .deserialize(None)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                out.insert(row.n, row);
            }
        }
    }
    Ok(out)
}

fn verify_tables(
    cli: &Cli,
    rows: &str,
    expected: Option<&Path>,
    caps: &Caps,
) -> CliResult<(String, CliResult<()>)> {
    let (first, last) = parse_rows(rows)?;
    let expected = load_expected(expected)?;
    let mut table = Vec::new();
    let mut mismatches = Vec::new();
    for n in first..=last {
        let (method, got) = if n as usize <= caps.max_pipeline_degree {
            let b = symmetric_quotient_bundle(n as usize, caps)?;
            let c0 = powergraph::graphcore::components(b.quotient()).count;
            if let Some(seed) = cli.seed {
                let trace = run_procedure(&b, TypeSelection::Shuffled(seed))?;
                if trace.total.to_string() != c0.to_string() {
                    mismatches.push(format!("n={n} procedure with seed {seed}: total {} vs BFS {c0}", trace.total));
                }
            }
            let got = Expected {
                n,
                c0: c0.to_string(),
                c0_type: powergraph::graphcore::components(b.type_graph()).count as u32,
                c0_order: powergraph::graphcore::components(b.order_graph()).count as u32,
            };
            ("bfs", got)
        } else {
            let r = closed_form_sn(n)?;
            let regime_ok = match r.regime {
                Regime::Small => n <= 7,
                Regime::Prime => is_prime(n),
                Regime::PrimePlusOne => !is_prime(n) && is_prime(n - 1),
                Regime::Neither => !is_prime(n) && !is_prime(n - 1),
            };
            if !regime_ok {
                mismatches.push(format!("n={n} regime: {} is inconsistent with n", r.regime.name()));
            }
            let got = Expected {
                n,
                c0: r.c0.to_string(),
                c0_type: r.c0_type,
                c0_order: r.c0_order,
            };
            ("closed_form", got)
        };
        let mut status = "ok";
        if let Some(want) = expected.get(&n) {
            let cells = [
                ("c0", want.c0.clone(), got.c0.clone()),
                ("c0_type", want.c0_type.to_string(), got.c0_type.to_string()),
                ("c0_order", want.c0_order.to_string(), got.c0_order.to_string()),
            ];
            if let Some((cell, w, g)) = cells.into_iter().find(|(_, w, g)| w != g) {
                status = "mismatch";
                mismatches.push(format!("n={n} {cell}: expected {w}, got {g}"));
            }
        }
        table.push(TableRow {
            n,
            method,
            c0: got.c0,
            c0_type: got.c0_type,
            c0_order: got.c0_order,
            status,
        });
    }
    let text = match cli.format {
        Format::Json => json(&table)?,
        Format::Csv => csv_rows(&table)?,
        Format::Text => {
            let mut s = String::new();
            for r in &table {
                writeln!(
                    s,
                    "n={:<3} {:<11} c0={} c0_type={} c0_order={} {}",
                    r.n, r.method, r.c0, r.c0_type, r.c0_order, r.status
                )
                .unwrap();
            }
            let verdict = if mismatches.is_empty() { "PASS" } else { "FAIL" };
            writeln!(s, "{verdict}: {} rows checked", table.len()).unwrap();
            s
        }
    };
    let outcome = match mismatches.first() {
        None => Ok(()),
        Some(first) => Err(CliError::Mismatch(first.clone())),
    };
    Ok((text, outcome))
}

#[derive(Debug, Default, Serialize)]
struct Verdicts {
    hom: bool,
    two_hom: bool,
    complete: Option<bool>,
    tame: Option<bool>,
    locally_surjective: Option<bool>,
    pseudo_covering: Option<bool>,
    orbit: Option<bool>,
}

fn verdicts<S, T>(m: &GraphMap<'_, S, T>, orbit: Option<&[Vec<usize>]>) -> CliResult<Verdicts> {
    let hom = m.is_homomorphism();
    let mut v = Verdicts {
        hom,
        two_hom: m.is_two_homomorphism(),
        ..Verdicts::default()
    };
    if hom {
        v.complete = Some(m.is_complete_map()?);
        v.tame = Some(m.is_tame()?);
        v.locally_surjective = Some(m.is_locally_surjective()?);
        v.pseudo_covering = Some(m.is_pseudo_covering()?);
    }
    if let Some(gens) = orbit {
        v.orbit = Some(m.is_orbit_map(gens)?);
    }
    Ok(v)
}

fn conjugation_on_explicit(b: &PowerGraphBundle, x: &Permutation) -> CliResult<Vec<usize>> {
    let g = b.explicit()?;
    g.labels()
        .iter()
        .map(|p| {
            let image = p.conjugate(x)?;
            b.group()
                .index_of(&image)
                .map(|i| i - 1)
                .ok_or_else(|| Error::NotInNormalizer(x.to_string()).into())
        })
        .collect()
}

fn check_hom(format: Format, args: &CheckHomArgs, caps: &Caps) -> CliResult<String> {
    let v = if let Some(source) = &args.source {
        let (Some(target), Some(map_file)) = (&args.target, &args.map_file) else {
            return Err(CliError::Usage("--source needs --target and --map-file".into()));
        };
        let source = parse_exchange_format(&read(source)?)?;
        let target = parse_exchange_format(&read(target)?)?;
        let assignment = parse_map_text(&read(map_file)?, source.vertex_count())?;
        let orbit = match &args.orbit_file {
            None => None,
            Some(path) => Some(parse_orbit_file(&read(path)?, source.vertex_count())?),
        };
        let m = GraphMap::new(&source, &target, assignment)?;
        verdicts(&m, orbit.as_deref())?
    } else {
        let map = args
            .map
            .ok_or_else(|| CliError::Usage("give --map, or --source/--target/--map-file".into()))?;
        let group = build_group(&args.group, caps)?;
        let degree = group.degree();
        let b = bundle(group, map == MapArg::Pi, caps)?;
        let xs = match &args.orbit_gens {
            None => None,
            Some(text) => Some(parse_generator_list(text, degree)?),
        };
        match map {
            MapArg::Pi => {
                let orbit = xs
                    .map(|xs| xs.iter().map(|x| conjugation_on_explicit(&b, x)).collect::<CliResult<Vec<_>>>())
                    .transpose()?;
                let pi = b.pi();
                verdicts(&GraphMap::new(b.explicit()?, b.quotient(), pi)?, orbit.as_deref())?
            }
            MapArg::Type | MapArg::Order => {
                let orbit = xs
                    .map(|xs| xs.iter().map(|x| b.fx_map(x)).collect::<Result<Vec<_>, _>>())
                    .transpose()?;
                if map == MapArg::Type {
                    verdicts(&GraphMap::new(b.quotient(), b.type_graph(), b.t_map())?, orbit.as_deref())?
                } else {
                    verdicts(&GraphMap::new(b.quotient(), b.order_graph(), b.o_map())?, orbit.as_deref())?
                }
            }
            MapArg::OrderType => {
                if xs.is_some() {
                    return Err(CliError::Usage("--orbit-gens applies to maps out of the explicit or quotient graph".into()));
                }
                verdicts(&GraphMap::new(b.type_graph(), b.order_graph(), b.o_t_map())?, None)?
            }
        }
    };
    let fields: [(&str, Option<bool>); 7] = [
        ("hom", Some(v.hom)),
        ("2-hom", Some(v.two_hom)),
        ("complete", v.complete),
        ("tame", v.tame),
        ("locally-surjective", v.locally_surjective),
        ("pseudo-covering", v.pseudo_covering),
        ("orbit", v.orbit),
    ];
    Ok(match format {
        Format::Json => json(&v)?,
        Format::Text => fields
            .iter()
            .filter_map(|(k, v)| v.map(|v| format!("{k}: {v}\n")))
            .collect(),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                property: &'a str,
                value: bool,
            }
            let rows: Vec<Row> = fields
                .iter()
                .filter_map(|&(property, v)| v.map(|value| Row { property, value }))
                .collect();
            csv_rows(&rows)?
        }
    })
}

/// `i -> j` blocks separated by `---` lines.
fn parse_orbit_file(text: &str, n: usize) -> CliResult<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut block = String::new();
    for line in text.lines().chain(std::iter::once("---")) {
        if line.trim() == "---" {
            if !block.trim().is_empty() {
                out.push(parse_map_text(&block, n)?);
            }
            block.clear();
        } else {
            block.push_str(line);
            block.push('\n');
        }
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct ClosedFormOut {
    n: u64,
    regime: Regime,
    c0: String,
    c0_type: u32,
    c0_order: u32,
}

fn closed_form(format: Format, n: u64) -> CliResult<String> {
    let r = closed_form_sn(n)?;
    let out = ClosedFormOut {
        n,
        regime: r.regime,
        c0: r.c0.to_string(),
        c0_type: r.c0_type,
        c0_order: r.c0_order,
    };
    Ok(match format {
        Format::Json => json(&out)?,
        Format::Csv => csv_rows(&[out])?,
        Format::Text => format!(
            "n = {}\nregime: {}\nc0: {}\nc0_type: {}\nc0_order: {}\n",
            out.n,
            out.regime.name(),
            out.c0,
            out.c0_type,
            out.c0_order
        ),
    })
}

fn report(format: Format, n: u64, caps: &Caps) -> CliResult<String> {
    let r = report_sn(n, caps)?;
    Ok(match format {
        Format::Json => json(&r)?,
        Format::Csv => return Err(CliError::Usage("report supports --format json or text".into())),
        Format::Text => {
            let mut s = format!(
                "S_{}: {} components ({}), type graph {}, order graph {}\n",
                r.n,
                r.c0,
                r.regime.name(),
                r.c0_type,
                r.c0_order
            );
            for step in &r.steps {
                writeln!(s, "  step {}: term {} (k = {})", step.cycle_type, step.term, step.k).unwrap();
            }
            if let Some(st) = &r.structure {
                let shape = if st.main.is_complete { "complete" } else { "not complete" };
                writeln!(s, "  main component: {} classes, {shape}", st.main.size).unwrap();
                let mut shapes: BTreeMap<String, usize> = BTreeMap::new();
                for o in &st.others {
                    let types: Vec<&str> = o.type_census.keys().map(String::as_str).collect();
                    *shapes.entry(format!("size {} over {}", o.size, types.join(" "))).or_insert(0) += 1;
                }
                for (k, count) in shapes {
                    writeln!(s, "  {count} other components: {k}").unwrap();
                }
            }
            s
        }
    })
}

fn export(format: Format, args: &GroupArgs, kind: GraphKind, maps: bool, summary: bool, caps: &Caps) -> CliResult<String> {
    let group = build_group(args, caps)?;
    let need_explicit = kind == GraphKind::Explicit || maps || summary;
    let b = if need_explicit {
        PowerGraphBundle::new(group, caps)?
    } else {
        bundle(group, false, caps)?
    };
    if summary {
        let s = b.summary();
        return Ok(match format {
            Format::Json => json(&s)?,
            Format::Csv => csv_rows(&s.graphs)?,
            Format::Text => {
                let mut out = format!("degree {}, group order {}\n", s.degree, s.group_order);
                for g in &s.graphs {
                    writeln!(out, "{}: {} vertices, {} edges, {} components", g.graph, g.vertices, g.edges, g.components)
                        .unwrap();
                }
                out
            }
        });
    }
    if maps {
        return Ok(b.maps_text());
    }
    Ok(b.exchange_format(kind)?)
}
