//! Command-line driver for the vircoh library.
//!
//! Exit codes: 0 success / all requested checks pass, 1 a mathematical check
//! failed, 2 invalid input or usage.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use vircoh::formats::{
    dims_table_to_json, structure_constants_to_json, CheckVerdictJson, DimsTableJson,
    GroupSpec, ManifoldSpec, PresentationJson, ScenarioJson, StructureConstantsJson,
};
use vircoh::graded::ManifoldModel;
use vircoh::inertia::{
    build_scenario_cpn_zp, build_scenario_symprod2, check_associativity, check_equivariance,
    check_homomorphism, check_injectivity, virtual_ring_direct, InertiaScenario,
};
use vircoh::subring::{
    close_subring, dims_table, invariant_subring, structure_constants, verify_presentation,
};
use vircoh::symprod::{generators_general, SymmetricProduct};

const BUILTIN_CP1_SQUARED: &str = include_str!("../presentations/cp1_squared.json");
const BUILTIN_CP1_SQUARED_INVARIANTS: &str =
    include_str!("../presentations/cp1_squared_invariants.json");
const DEFAULT_MAX_DIM: usize = 4096;

#[derive(Parser)]
#[command(name = "vircoh", version, about = "virtual cohomology of global quotient orbifolds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct CommonOpts {
    /// Write the JSON report here (tables always go to stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Cap on the group order
    #[arg(long, default_value_t = 720)]
    max_group_order: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Virtual cohomology of the symmetric product [M^n / S_n]
    Symprod {
        /// cp:<m> | sphere:<k> | file:<path>
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        n: usize,
        /// group-ring (closure in `H*(M^n)[S_n]`) or inertia (direct, n = 2)
        #[arg(long, default_value = "group-ring")]
        mode: String,
        /// Report the integrality audit in detail
        #[arg(long)]
        coeff_audit: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Direct inertia-mode computation and consistency checks
    Inertia {
        /// symprod2 | cpn-zp (alternative to --scenario)
        #[arg(long)]
        fixture: Option<String>,
        /// Scenario JSON path
        #[arg(long)]
        scenario: Option<PathBuf>,
        /// Base manifold for symprod2 (cp:<m> | sphere:<k> | file:<path>)
        #[arg(long)]
        manifold: Option<String>,
        /// CP^n dimension for cpn-zp
        #[arg(long)]
        n: Option<usize>,
        /// Cyclic order for cpn-zp
        #[arg(long)]
        p: Option<usize>,
        /// cyclic:<p> (alternative to --p for cpn-zp)
        #[arg(long)]
        group: Option<String>,
        /// Include the isolated fixed points of the cpn-zp fixture
        #[arg(long)]
        points: bool,
        /// Comma-separated: homomorphism,injectivity,associativity,equivariance | all
        #[arg(long, default_value = "all")]
        check: String,
        /// inertia (direct module only) or group-ring (also close the
        /// scenario's generators in `H*(Y)[G]`)
        #[arg(long, default_value = "inertia")]
        mode: String,
        /// Fail (exit 1) when injectivity does not hold
        #[arg(long)]
        strict_injectivity: bool,
        /// Also write the (validated) scenario itself as JSON
        #[arg(long)]
        emit_scenario: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify a generators-and-relations presentation
    Verify {
        /// Path to a presentation JSON, or builtin:cp1-squared /
        /// builtin:cp1-squared-invariants
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        n: usize,
        /// Verify against the invariant subring instead of the full image
        #[arg(long)]
        invariants: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Emit a fixture scenario as JSON
    Fixtures {
        /// symprod2 | cpn-zp
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        manifold: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        points: bool,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Debug)]
enum CliError {
    /// Bad input or usage: exit 2.
    Input(String),
    /// A mathematical check failed: exit 1.
    CheckFailed(String),
}

impl From<vircoh::Error> for CliError {
    fn from(e: vircoh::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("JSON: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::CheckFailed(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn max_dim() -> usize {
    std::env::var("VIRCOH_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_DIM)
}

fn parse_manifold(arg: &str) -> Result<Arc<ManifoldModel>, CliError> {
    let spec = if let Some(m) = arg.strip_prefix("cp:") {
        ManifoldSpec::Cp {
            m: m.parse()
                .map_err(|_| CliError::Input(format!("bad cp dimension `{m}`")))?,
            var: None,
        }
    } else if let Some(k) = arg.strip_prefix("sphere:") {
        ManifoldSpec::EvenSphere {
            k: k.parse()
                .map_err(|_| CliError::Input(format!("bad sphere parameter `{k}`")))?,
        }
    } else if let Some(path) = arg.strip_prefix("file:") {
        serde_json::from_str(&std::fs::read_to_string(path)?)?
    } else {
        return Err(CliError::Input(format!(
            "manifold must be cp:<m>, sphere:<k> or file:<path>, got `{arg}`"
        )));
    };
    Ok(spec.build()?)
}

fn parse_cyclic_group(arg: &str, cap: usize) -> Result<usize, CliError> {
    if let Some(p) = arg.strip_prefix("cyclic:") {
        let p: usize = p
            .parse()
            .map_err(|_| CliError::Input(format!("bad cyclic order `{p}`")))?;
        if p > cap {
            return Err(CliError::Input(format!("group order {p} exceeds cap {cap}")));
        }
        return Ok(p);
    }
    Err(CliError::Input(format!(
        "this fixture takes a cyclic group (cyclic:<p>), got `{arg}`"
    )))
}

fn check_power_dim(base: &Arc<ManifoldModel>, n: usize) -> Result<(), CliError> {
    let cap = max_dim() as u128;
    let mut dim: u128 = 1;
    for _ in 0..n {
        dim = dim.saturating_mul(base.len() as u128);
        if dim > cap {
            return Err(CliError::Input(format!(
                "ambient ring dimension {}^{} exceeds VIRCOH_MAX_DIM = {}",
                base.len(),
                n,
                cap
            )));
        }
    }
    Ok(())
}

fn write_report<T: serde::Serialize>(out: &Option<PathBuf>, report: &T) -> Result<(), CliError> {
    if let Some(path) = out {
        let mut text = serde_json::to_string_pretty(report)?;
        text.push('\n');
        std::fs::write(path, text)?;
        println!("report written to {}", path.display());
    }
    Ok(())
}

fn render_dims_table(title: &str, table: &vircoh::subring::DimsTable) {
    println!("{title}");
    let degrees: Vec<usize> = table
        .rows
        .first()
        .map(|r| r.dims.iter().map(|(d, _)| *d).collect())
        .unwrap_or_default();
    let label_w = table
        .rows
        .iter()
        .map(|r| r.label.len())
        .chain(std::iter::once("element".len()))
        .max()
        .unwrap_or(7);
    print!("  {:label_w$} |", "element");
    for d in &degrees {
        print!(" deg {d:>2} |");
    }
    println!(" total");
    for row in &table.rows {
        print!("  {:label_w$} |", row.label);
        for (_, c) in &row.dims {
            print!(" {c:>6} |");
        }
        println!(" {:>5}", row.total);
    }
    println!("  total dimension: {}", table.total);
}

fn render_products(title: &str, sc: &StructureConstantsJson, basis_display: &[String]) {
    println!("{title}");
    for (i, j, coords) in &sc.products {
        if *i > *j {
            continue; // commutative: print each unordered pair once
        }
        let rhs: Vec<String> = coords
            .iter()
            .map(|(k, c)| {
                if c == "1" {
                    format!("[{}]", basis_display[*k])
                } else {
                    format!("{c}·[{}]", basis_display[*k])
                }
            })
            .collect();
        println!(
            "  [{}] · [{}] = {}",
            basis_display[*i],
            basis_display[*j],
            rhs.join(" + ")
        );
    }
    println!(
        "  structure constants are {}",
        if sc.integral {
            "integral"
        } else {
            "NOT integral"
        }
    );
}

#[derive(serde::Serialize)]
struct SymprodReport {
    command: String,
    manifold: String,
    n: usize,
    mode: String,
    ambient_dimension: usize,
    generators: Vec<String>,
    dims: DimsTableJson,
    structure_constants: StructureConstantsJson,
    invariant_dims: DimsTableJson,
    invariant_structure_constants: StructureConstantsJson,
    integral: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    coeff_audit: Option<Vec<(usize, usize, String)>>,
}

fn run_symprod(
    manifold: String,
    n: usize,
    mode: String,
    coeff_audit: bool,
    common: CommonOpts,
) -> Result<(), CliError> {
    let base = parse_manifold(&manifold)?;
    check_power_dim(&base, n)?;
    match mode.as_str() {
        "group-ring" => {}
        "inertia" => {
            if n != 2 {
                return Err(CliError::Input(
                    "inertia mode for symprod is implemented for n = 2 (the symprod2 fixture)"
                        .into(),
                ));
            }
            let sc = build_scenario_symprod2(&base)?;
            return run_inertia_scenario(sc, "all", "inertia", false, common);
        }
        other => {
            return Err(CliError::Input(format!(
                "mode must be group-ring or inertia, got `{other}`"
            )))
        }
    }
    let sym = SymmetricProduct::new(&base, n, common.max_group_order)?;
    let gens = sym.generators()?;
    let s = close_subring(&gens)?;
    let table = dims_table(&s);
    let consts = structure_constants(&s)?;
    let act = sym.action()?;
    let inv = invariant_subring(&s, &act)?;
    let inv_table = dims_table(&inv);
    let inv_consts = structure_constants(&inv)?;

    println!("virtual cohomology of [M^{n} / S_{n}], M = {manifold} (group-ring mode)");
    println!(
        "ambient H*(M^{n}) has dimension {}, S_{n} has order {}",
        sym.ambient().len(),
        sym.group().order()
    );
    println!("generators ({}):", gens.gens.len());
    for g in &gens.gens {
        println!("  {}  =  {}", g.label, g.element);
    }
    render_dims_table("graded dimensions of the image subring:", &table);
    let basis_display: Vec<String> = s
        .basis_elements()
        .iter()
        .map(|(_, b)| format!("{b}"))
        .collect();
    render_products(
        "structure constants:",
        &structure_constants_to_json(&consts),
        &basis_display,
    );
    render_dims_table("graded dimensions of the invariant subring:", &inv_table);
    let inv_display: Vec<String> = inv
        .basis_elements()
        .iter()
        .map(|(_, b)| format!("{b}"))
        .collect();
    render_products(
        "invariant structure constants:",
        &structure_constants_to_json(&inv_consts),
        &inv_display,
    );
    if coeff_audit {
        if consts.non_integral.is_empty() && inv_consts.non_integral.is_empty() {
            println!("coefficient audit: every structure constant has denominator 1");
        } else {
            println!("coefficient audit: non-integral coefficients found:");
            for (i, j, c) in consts.non_integral.iter().chain(&inv_consts.non_integral) {
                println!("  basis {i} · basis {j}: {c}");
            }
        }
    }

    let report = SymprodReport {
        command: "symprod".into(),
        manifold,
        n,
        mode,
        ambient_dimension: sym.ambient().len(),
        generators: gens.gens.iter().map(|g| g.label.clone()).collect(),
        dims: dims_table_to_json(&table),
        structure_constants: structure_constants_to_json(&consts),
        invariant_dims: dims_table_to_json(&inv_table),
        invariant_structure_constants: structure_constants_to_json(&inv_consts),
        integral: consts.integral && inv_consts.integral,
        coeff_audit: coeff_audit.then(|| {
            consts
                .non_integral
                .iter()
                .chain(&inv_consts.non_integral)
                .map(|(i, j, c)| (*i, *j, vircoh::exactalg::format_scalar(c)))
                .collect()
        }),
    };
    write_report(&common.out, &report)?;
    Ok(())
}

fn build_fixture(
    fixture: &str,
    manifold: &Option<String>,
    n: Option<usize>,
    p: Option<usize>,
    group: &Option<String>,
    points: bool,
    max_group_order: usize,
) -> Result<InertiaScenario, CliError> {
    match fixture {
        "symprod2" => {
            let arg = manifold
                .as_deref()
                .ok_or_else(|| CliError::Input("symprod2 needs --manifold".into()))?;
            let base = parse_manifold(arg)?;
            check_power_dim(&base, 2)?;
            Ok(build_scenario_symprod2(&base)?)
        }
        "cpn-zp" => {
            let n = n.ok_or_else(|| CliError::Input("cpn-zp needs --n".into()))?;
            let p = match (p, group) {
                (Some(p), None) => p,
                (None, Some(g)) => parse_cyclic_group(g, max_group_order)?,
                (Some(p), Some(g)) => {
                    let from_group = parse_cyclic_group(g, max_group_order)?;
                    if from_group != p {
                        return Err(CliError::Input(format!(
                            "--p {p} disagrees with --group cyclic:{from_group}"
                        )));
                    }
                    p
                }
                (None, None) => {
                    return Err(CliError::Input(
                        "cpn-zp needs --p or --group cyclic:<p>".into(),
                    ))
                }
            };
            Ok(build_scenario_cpn_zp(n, p, points, max_group_order)?)
        }
        other => Err(CliError::Input(format!(
            "unknown fixture `{other}` (expected symprod2 or cpn-zp)"
        ))),
    }
}

#[derive(serde::Serialize)]
struct InertiaReport {
    command: String,
    group: GroupSpec,
    ambient: ManifoldSpec,
    module_dims: Vec<(String, usize, usize)>,
    image_dims: Vec<(String, usize, usize)>,
    invariant_dims: Vec<(usize, usize)>,
    invariant_total: usize,
    products: Vec<vircoh::formats::SparseProductJson>,
    basis: Vec<String>,
    integral: bool,
    checks: Vec<CheckVerdictJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    image_only_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    disconnected_intersection_convention: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group_ring_dims: Option<DimsTableJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group_ring_structure_constants: Option<StructureConstantsJson>,
}

fn run_inertia_scenario(
    sc: InertiaScenario,
    check: &str,
    mode: &str,
    strict_injectivity: bool,
    common: CommonOpts,
) -> Result<(), CliError> {
    let requested: Vec<&str> = if check == "all" {
        vec!["homomorphism", "injectivity", "associativity", "equivariance"]
    } else {
        check
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect()
    };
    for c in &requested {
        if !["homomorphism", "injectivity", "associativity", "equivariance"].contains(c) {
            return Err(CliError::Input(format!("unknown check `{c}`")));
        }
    }

    let ring = virtual_ring_direct(&sc)?;
    println!("inertia module over |G| = {} sectors", sc.group().order());
    println!("module dimensions (virtual grading = degree + codim):");
    for ((g, vd), d) in &ring.module_dims {
        println!("  {} deg {vd}: {d}", sc.group().name(*g));
    }
    println!("image dimensions under f:");
    for ((g, vd), d) in &ring.image_dims {
        println!("  {} deg {vd}: {d}", sc.group().name(*g));
    }
    println!(
        "invariant submodule dimension: {} (per degree: {:?})",
        ring.invariant_total, ring.invariant_dims
    );

    let mut checks = Vec::new();
    let mut hard_failure = None;
    let mut injective = true;
    for c in &requested {
        match *c {
            "homomorphism" => {
                let r = check_homomorphism(&sc)?;
                let pass = r.passed();
                println!(
                    "check homomorphism: {} ({} pairs, {} violations)",
                    verdict(pass),
                    r.pairs_checked,
                    r.violations.len()
                );
                for v in r.violations.iter().take(5) {
                    println!(
                        "    disagreement at {:?} × {:?}: expected {}, got {}",
                        v.left, v.right, v.expected, v.got
                    );
                }
                if !pass {
                    hard_failure = Some("homomorphism".to_string());
                }
                checks.push(CheckVerdictJson {
                    check: "homomorphism".into(),
                    pass,
                    detail: format!(
                        "{} pairs, {} violations",
                        r.pairs_checked,
                        r.violations.len()
                    ),
                });
            }
            "injectivity" => {
                let r = check_injectivity(&sc)?;
                injective = r.all_injective();
                println!("check injectivity: {}", verdict(injective));
                for e in &r.entries {
                    println!(
                        "    {}: source dim {}, rank {}, kernel {}{}",
                        e.name,
                        e.source_dim,
                        e.rank,
                        e.kernel_dim,
                        if e.injective { "" } else { "  (not injective)" }
                    );
                }
                if !injective && strict_injectivity {
                    hard_failure = Some("injectivity (strict)".to_string());
                }
                checks.push(CheckVerdictJson {
                    check: "injectivity".into(),
                    pass: injective,
                    detail: r
                        .entries
                        .iter()
                        .map(|e| format!("{}: kernel {}", e.name, e.kernel_dim))
                        .collect::<Vec<_>>()
                        .join("; "),
                });
            }
            "associativity" => {
                let r = check_associativity(&sc)?;
                println!(
                    "check associativity: {} ({} triples, {} violations)",
                    verdict(r.passed()),
                    r.triples_checked,
                    r.violations
                );
                if !r.passed() {
                    hard_failure = Some("associativity".to_string());
                }
                checks.push(CheckVerdictJson {
                    check: "associativity".into(),
                    pass: r.passed(),
                    detail: format!("{} triples, {} violations", r.triples_checked, r.violations),
                });
            }
            "equivariance" => {
                let r = check_equivariance(&sc)?;
                println!(
                    "check equivariance: {} ({} checks, {} violations)",
                    verdict(r.passed()),
                    r.checks,
                    r.violations
                );
                if !r.passed() {
                    hard_failure = Some("equivariance".to_string());
                }
                checks.push(CheckVerdictJson {
                    check: "equivariance".into(),
                    pass: r.passed(),
                    detail: format!("{} checks, {} violations", r.checks, r.violations),
                });
            }
            _ => unreachable!(),
        }
    }

    let image_only_note = (!injective)
        .then(|| "image only, f(H*_virt) ≠ H*_virt: the pushforwards have kernels".to_string());
    if let Some(note) = &image_only_note {
        println!("note: {note}");
    }
    let disconnected_note = sc
        .explicit_pairs()
        .any(|(_, pd)| pd.intersections.len() > 1)
        .then(|| "products sum over the components of disconnected intersections".to_string());

    let mut group_ring_dims = None;
    let mut group_ring_consts = None;
    match mode {
        "inertia" => {}
        "group-ring" => {
            let gens = generators_general(&sc)?;
            let s = close_subring(&gens)?;
            let table = dims_table(&s);
            render_dims_table(
                "group-ring mode: graded dimensions of the image subring:",
                &table,
            );
            if let Some(note) = &image_only_note {
                println!("  ({note})");
            }
            let consts = structure_constants(&s)?;
            let display: Vec<String> = s
                .basis_elements()
                .iter()
                .map(|(_, b)| format!("{b}"))
                .collect();
            render_products(
                "group-ring mode structure constants:",
                &structure_constants_to_json(&consts),
                &display,
            );
            group_ring_dims = Some(dims_table_to_json(&table));
            group_ring_consts = Some(structure_constants_to_json(&consts));
        }
        other => {
            return Err(CliError::Input(format!(
                "mode must be inertia or group-ring, got `{other}`"
            )))
        }
    }

    let report = InertiaReport {
        command: "inertia".into(),
        group: GroupSpec::from_group(sc.group()),
        ambient: ManifoldSpec::from_model(sc.ambient()),
        module_dims: ring
            .module_dims
            .iter()
            .map(|((g, vd), d)| (sc.group().name(*g).to_string(), *vd, *d))
            .collect(),
        image_dims: ring
            .image_dims
            .iter()
            .map(|((g, vd), d)| (sc.group().name(*g).to_string(), *vd, *d))
            .collect(),
        invariant_dims: ring.invariant_dims.iter().map(|(k, v)| (*k, *v)).collect(),
        invariant_total: ring.invariant_total,
        products: ring
            .products
            .iter()
            .map(|(i, j, row)| {
                let sparse: Vec<(usize, String)> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !is_zero(c))
                    .map(|(k, c)| (k, vircoh::exactalg::format_scalar(c)))
                    .collect();
                (*i, *j, sparse)
            })
            .collect(),
        basis: ring.labels.clone(),
        integral: ring.integral,
        checks,
        image_only_note,
        disconnected_intersection_convention: disconnected_note,
        group_ring_dims,
        group_ring_structure_constants: group_ring_consts,
    };
    write_report(&common.out, &report)?;

    match hard_failure {
        Some(which) => Err(CliError::CheckFailed(which)),
        None => Ok(()),
    }
}

fn is_zero(s: &vircoh::exactalg::Scalar) -> bool {
    use num_traits::Zero;
    s.is_zero()
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(serde::Serialize)]
struct VerifyReport {
    command: String,
    presentation: String,
    target: String,
    relations: Vec<(String, bool)>,
    generates: bool,
    dims_match: bool,
    quotient_dims: Vec<(usize, usize)>,
    subring_dims: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    integral_ok: Option<bool>,
    pass: bool,
}

fn run_verify(
    presentation: String,
    manifold: String,
    n: usize,
    invariants: bool,
    common: CommonOpts,
) -> Result<(), CliError> {
    let text = match presentation.as_str() {
        "builtin:cp1-squared" => BUILTIN_CP1_SQUARED.to_string(),
        "builtin:cp1-squared-invariants" => BUILTIN_CP1_SQUARED_INVARIANTS.to_string(),
        path => std::fs::read_to_string(path)?,
    };
    let pj: PresentationJson = serde_json::from_str(&text)?;
    let base = parse_manifold(&manifold)?;
    check_power_dim(&base, n)?;
    let sym = SymmetricProduct::new(&base, n, common.max_group_order)?;
    let (p, assignment) = pj.into_domain(sym.group(), sym.ambient())?;
    let s = close_subring(&sym.generators()?)?;
    let target = if invariants {
        let act = sym.action()?;
        invariant_subring(&s, &act)?
    } else {
        s
    };
    let report = verify_presentation(&target, &p, &assignment)?;

    println!(
        "verifying presentation against the {} of [M^{n} / S_{n}], M = {manifold}:",
        if invariants {
            "invariant subring"
        } else {
            "image subring"
        }
    );
    for (rel, ok) in &report.relation_results {
        println!("  relation {rel} = 0: {}", verdict(*ok));
    }
    println!(
        "  assigned generators regenerate the subring: {}",
        verdict(report.generates)
    );
    println!("  graded dimensions match: {}", verdict(report.dims_match));
    println!("    quotient: {:?}", report.quotient_dims);
    println!("    subring:  {:?}", report.subring_dims);
    if let Some(ok) = report.integral_ok {
        println!("  integral structure constants: {}", verdict(ok));
    }
    println!("verdict: {}", verdict(report.pass));

    let out = VerifyReport {
        command: "verify".into(),
        presentation,
        target: if invariants {
            "invariants".into()
        } else {
            "image".into()
        },
        relations: report.relation_results.clone(),
        generates: report.generates,
        dims_match: report.dims_match,
        quotient_dims: report.quotient_dims.iter().map(|(k, v)| (*k, *v)).collect(),
        subring_dims: report.subring_dims.iter().map(|(k, v)| (*k, *v)).collect(),
        integral_ok: report.integral_ok,
        pass: report.pass,
    };
    write_report(&common.out, &out)?;
    if report.pass {
        Ok(())
    } else {
        Err(CliError::CheckFailed("presentation verification".into()))
    }
}

fn run_fixtures(
    fixture: String,
    manifold: Option<String>,
    n: Option<usize>,
    p: Option<usize>,
    group: Option<String>,
    points: bool,
    common: CommonOpts,
) -> Result<(), CliError> {
    let sc = build_fixture(
        &fixture,
        &manifold,
        n,
        p,
        &group,
        points,
        common.max_group_order,
    )?;
    let json = ScenarioJson::from_scenario(&sc);
    let mut text = serde_json::to_string_pretty(&json)?;
    text.push('\n');
    match &common.out {
        Some(path) => {
            std::fs::write(path, text)?;
            println!("scenario written to {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Symprod {
            manifold,
            n,
            mode,
            coeff_audit,
            common,
        } => run_symprod(manifold, n, mode, coeff_audit, common),
        Cmd::Inertia {
            fixture,
            scenario,
            manifold,
            n,
            p,
            group,
            points,
            check,
            mode,
            strict_injectivity,
            emit_scenario,
            common,
        } => {
            let sc = match (&fixture, &scenario) {
                (Some(f), None) => {
                    build_fixture(f, &manifold, n, p, &group, points, common.max_group_order)?
                }
                (None, Some(path)) => {
                    let json: ScenarioJson =
                        serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    json.build(common.max_group_order)?
                }
                _ => {
                    return Err(CliError::Input(
                        "inertia needs exactly one of --fixture or --scenario".into(),
                    ))
                }
            };
            if let Some(path) = &emit_scenario {
                let json = ScenarioJson::from_scenario(&sc);
                let mut text = serde_json::to_string_pretty(&json)?;
                text.push('\n');
                std::fs::write(path, text)?;
                println!("scenario written to {}", path.display());
            }
            run_inertia_scenario(sc, &check, &mode, strict_injectivity, common)
        }
        Cmd::Verify {
            presentation,
            manifold,
            n,
            invariants,
            common,
        } => run_verify(presentation, manifold, n, invariants, common),
        Cmd::Fixtures {
            fixture,
            manifold,
            n,
            p,
            group,
            points,
            common,
        } => run_fixtures(fixture, manifold, n, p, group, points, common),
    }
}
