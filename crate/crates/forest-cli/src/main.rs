//! Command line front end: graph file I/O, fixture generators, bound
//! queries, exact solves, certified reductions, certificate checks, charge
//! audits, the refutation report, and polygon plots. Each run prints one
//! JSON envelope on standard output. Exit status 0 means success, 1 a
//! failed check, 2 unusable input.

mod graphfile;
mod report;
mod svg;

use std::collections::BTreeMap;
use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use forest::bounds::{self, best_bound, Applicability, FormulaInputs, GirthClass, Shape};
use forest::exact::{forest_number_exact, max_independent_set, SolverConfig};
use forest::families::{self, FamilySpec};
use forest::graph::Graph;
use forest::reducer::{self, CertNode, Certificate, ReduceOptions};
use graphfile::GraphFile;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "forest",
    version,
    about = "Maximum induced forests in sparse planar graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a fixture graph file.
    ///
    /// Families: cube, cubes:K, cube-minus-edge:K, cubes-linked:K,
    /// dodecahedron, dodecahedra:K, hosono:T, girth6, girth7, grid:PxQ,
    /// cycle:N, path:N.
    Gen {
        /// Family spec, e.g. `grid:4x5`.
        family: String,
        /// Output file; without it the graph file itself goes to standard
        /// output, ready to pipe into another subcommand.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Summarize a graph file.
    Info {
        /// Graph file; `-` or omitted reads standard input.
        file: Option<PathBuf>,
    },
    /// Lower bounds on the forest number from the class polygons or the
    /// formula catalog.
    Bound {
        /// Graph file; `-` or omitted reads standard input.
        file: Option<PathBuf>,
        /// Evaluate one catalog formula by id (e.g. `main`, `alon_nm`).
        #[arg(long, conflicts_with = "best")]
        formula: Option<String>,
        /// Maximize a*n - b*m over the polygon of this class; the default
        /// picks the strongest class the girth allows.
        #[arg(long)]
        best: Option<GirthClass>,
    },
    /// Exact forest number by branch and bound.
    Exact {
        /// Graph file; `-` or omitted reads standard input.
        file: Option<PathBuf>,
        /// Stop after this many seconds and report the best incumbent.
        #[arg(long = "limit-s")]
        limit_s: Option<u64>,
        /// Stop after this many search nodes.
        #[arg(long)]
        node_limit: Option<u64>,
        /// Worker threads for the root branch fan-out.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Compute a certified induced forest by reduction.
    Reduce {
        /// Graph file; `-` or omitted reads standard input.
        file: Option<PathBuf>,
        /// Bound class the certificate is checked against.
        #[arg(long)]
        class: GirthClass,
        /// Solve components of at most this many vertices exactly.
        #[arg(long)]
        threshold: Option<usize>,
        /// Write the certificate JSON here (the input to `verify`).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a certificate produced by `reduce` against a graph.
    Verify {
        /// Graph file; `-` reads standard input.
        file: PathBuf,
        /// Certificate JSON written by `reduce -o`.
        cert: PathBuf,
    },
    /// Charge audit of a connected plane graph.
    Audit {
        /// Graph file; `-` or omitted reads standard input.
        file: Option<PathBuf>,
        /// Audit mode: girth4 or girth5.
        #[arg(long)]
        mode: GirthClass,
    },
    /// Compare the refuted published bound against k disjoint cubes.
    RefuteKowalik {
        /// Number of cube components.
        #[arg(long)]
        k: u64,
    },
    /// Draw a class polygon as SVG.
    PlotPolygon {
        /// Polygon class: girth4 or girth5.
        #[arg(long)]
        class: GirthClass,
        /// Output SVG file.
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { family, output } => cmd_gen(&family, output.as_deref()),
        Command::Info { file } => cmd_info(file.as_deref()),
        Command::Bound {
            file,
            formula,
            best,
        } => cmd_bound(file.as_deref(), formula.as_deref(), best),
        Command::Exact {
            file,
            limit_s,
            node_limit,
            jobs,
        } => cmd_exact(file.as_deref(), limit_s, node_limit, jobs),
        Command::Reduce {
            file,
            class,
            threshold,
            output,
        } => cmd_reduce(file.as_deref(), class, threshold, output.as_deref()),
        Command::Verify { file, cert } => cmd_verify(&file, &cert),
        Command::Audit { file, mode } => cmd_audit(file.as_deref(), mode),
        Command::RefuteKowalik { k } => cmd_refute_kowalik(k),
        Command::PlotPolygon { class, output } => cmd_plot_polygon(class, &output),
    }
}

/// Read and parse a graph file; `None` or `-` reads standard input.
/// Returns the parsed file and the digest of the raw bytes.
fn read_graph(file: Option<&Path>) -> Result<(GraphFile, String)> {
    let text = match file {
        Some(p) if p != Path::new("-") => {
            std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .context("reading standard input")?;
            s
        }
    };
    let parsed = graphfile::parse(&text)?;
    Ok((parsed, report::sha256_hex(text.as_bytes())))
}

/// Shift internal 0-based vertex ids to the 1-based ids of the file format.
fn one_based(vs: &[usize]) -> Vec<usize> {
    vs.iter().map(|&v| v + 1).collect()
}

/// Bound classes whose girth floor the graph meets (acyclic passes both).
fn eligible_classes(g: &Graph) -> Vec<GirthClass> {
    [GirthClass::Girth4, GirthClass::Girth5]
        .into_iter()
        .filter(|c| g.girth().is_none_or(|girth| girth >= c.min_girth()))
        .collect()
}

fn cmd_gen(family: &str, output: Option<&Path>) -> Result<ExitCode> {
    let spec: FamilySpec = family.parse()?;
    let graph = families::make(&spec)?;
    let file = GraphFile {
        comments: vec![
            format!("family: {spec}"),
            "rotations are clockwise; each f line walks one outer face".to_string(),
        ],
        graph,
    };
    let text = graphfile::emit(&file);
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .with_context(|| format!("writing {}", path.display()))?;
            #[derive(Serialize)]
            struct GenResult {
                family: String,
                n: usize,
                m: usize,
                embedded: bool,
                output: String,
            }
            report::print(
                "gen",
                None,
                GenResult {
                    family: spec.to_string(),
                    n: file.graph.n(),
                    m: file.graph.m(),
                    embedded: file.graph.is_embedded(),
                    output: path.display().to_string(),
                },
            );
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_info(file: Option<&Path>) -> Result<ExitCode> {
    let (parsed, digest) = read_graph(file)?;
    let g = &parsed.graph;
    #[derive(Serialize)]
    struct InfoResult {
        n: usize,
        m: usize,
        embedded: bool,
        connected: bool,
        components: usize,
        girth: Option<usize>,
        max_degree: usize,
        bridges: usize,
        degree_counts: BTreeMap<usize, usize>,
        face_counts: Option<BTreeMap<usize, usize>>,
        classes: Vec<&'static str>,
    }
    let face_counts = if g.is_embedded() {
        Some(g.trace_faces()?.length_counts())
    } else {
        None
    };
    report::print(
        "info",
        Some(digest),
        InfoResult {
            n: g.n(),
            m: g.m(),
            embedded: g.is_embedded(),
            connected: g.is_connected(),
            components: g.components().len(),
            girth: g.girth(),
            max_degree: g.max_degree(),
            bridges: g.bridges().len(),
            degree_counts: g.degree_counts(),
            face_counts,
            classes: eligible_classes(g).iter().map(|c| c.name()).collect(),
        },
    );
    Ok(ExitCode::SUCCESS)
}

/// Confirm the checkable part of a formula's applicability: embedding,
/// girth, degree and connectivity requirements. Outerplanarity is echoed
/// in the report but not verified.
fn check_applicability(g: &Graph, f: &bounds::BoundFormula) -> Result<()> {
    let id = f.id;
    let girth_at_least =
        |k: u64| g.girth().is_none_or(|girth| girth as u64 >= k);
    let embedded = || -> Result<()> {
        if g.is_embedded() {
            Ok(())
        } else {
            bail!("formula `{id}` needs a plane graph; the file has no rotation lines")
        }
    };
    match f.applicability {
        Applicability::Planar => embedded()?,
        Applicability::Outerplanar => {}
        Applicability::TriangleFree => {
            if !girth_at_least(4) {
                bail!("formula `{id}` needs a triangle-free graph");
            }
        }
        Applicability::TriangleFreePlanar => {
            embedded()?;
            if !girth_at_least(4) {
                bail!("formula `{id}` needs a triangle-free graph");
            }
        }
        Applicability::PlanarGirth(h) => {
            embedded()?;
            if !girth_at_least(h) {
                bail!(
                    "formula `{id}` needs girth at least {h}, graph has girth {}",
                    g.girth().expect("a failed girth check implies a cycle")
                );
            }
        }
        Applicability::PlanarGirthParam => {
            embedded()?;
            if g.girth().is_none() {
                bail!("formula `{id}` scales with the girth; the graph is acyclic");
            }
        }
        Applicability::CubicTriangleFree => {
            if !girth_at_least(4) {
                bail!("formula `{id}` needs a triangle-free graph");
            }
            if (0..g.n()).any(|v| g.degree(v) != 3) {
                bail!("formula `{id}` needs a cubic graph");
            }
        }
        Applicability::Connected => {
            if !g.is_connected() {
                bail!("formula `{id}` needs a connected graph");
            }
        }
    }
    Ok(())
}

fn cmd_bound(
    file: Option<&Path>,
    formula: Option<&str>,
    best: Option<GirthClass>,
) -> Result<ExitCode> {
    let (parsed, digest) = read_graph(file)?;
    let g = &parsed.graph;

    if let Some(id) = formula {
        let f = bounds::formula(id)?;
        check_applicability(g, f)?;
        let alpha = matches!(f.shape, Shape::IndependenceDegree)
            .then(|| max_independent_set(g).0 as u64);
        let inputs = FormulaInputs {
            n: g.n() as u64,
            m: Some(g.m() as u64),
            girth: g.girth().map(|girth| girth as u64),
            alpha,
            max_degree: Some(g.max_degree() as u64),
        };
        let value = bounds::eval_formula(id, &inputs)?;
        #[derive(Serialize)]
        struct FormulaResult {
            mode: &'static str,
            id: String,
            applicability: String,
            refuted: bool,
            note: Option<&'static str>,
            n: usize,
            m: usize,
            value: String,
            ceil: i64,
        }
        report::print(
            "bound",
            Some(digest),
            FormulaResult {
                mode: "formula",
                id: id.to_string(),
                applicability: f.applicability.describe(),
                refuted: f.refuted,
                note: f
                    .refuted
                    .then_some("this published bound is false; see refute-kowalik"),
                n: g.n(),
                m: g.m(),
                value: report::frac(value),
                ceil: report::ceil_i64(value),
            },
        );
        return Ok(ExitCode::SUCCESS);
    }

    let class = match best {
        Some(c) => c,
        None => *eligible_classes(g)
            .last()
            .ok_or_else(|| anyhow!("graph has girth 3; no polygon class applies"))?,
    };
    if let Some(girth) = g.girth() {
        if girth < class.min_girth() {
            bail!(
                "graph has girth {girth}, class {class} needs at least {}",
                class.min_girth()
            );
        }
    }
    let (value, (a, b)) = best_bound(class, g.n() as u64, g.m() as u64);
    #[derive(Serialize)]
    struct VertexOut {
        a: String,
        b: String,
    }
    #[derive(Serialize)]
    struct BestResult {
        mode: &'static str,
        class: GirthClass,
        n: usize,
        m: usize,
        value: String,
        ceil: i64,
        vertex: VertexOut,
    }
    report::print(
        "bound",
        Some(digest),
        BestResult {
            mode: "best",
            class,
            n: g.n(),
            m: g.m(),
            value: report::frac(value),
            ceil: report::ceil_i64(value),
            vertex: VertexOut {
                a: report::frac(a),
                b: report::frac(b),
            },
        },
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_exact(
    file: Option<&Path>,
    limit_s: Option<u64>,
    node_limit: Option<u64>,
    jobs: usize,
) -> Result<ExitCode> {
    let (parsed, digest) = read_graph(file)?;
    let g = &parsed.graph;
    let cfg = SolverConfig {
        node_limit,
        time_limit: limit_s.map(Duration::from_secs),
        jobs: jobs.max(1),
    };
    let r = forest_number_exact(g, &cfg);
    #[derive(Serialize)]
    struct ExactResult {
        n: usize,
        m: usize,
        forest_number: usize,
        decycling_number: usize,
        witness: Vec<usize>,
        nodes: u64,
        elapsed_ms: u128,
        optimal: bool,
    }
    report::print(
        "exact",
        Some(digest),
        ExactResult {
            n: g.n(),
            m: g.m(),
            forest_number: r.forest_number,
            decycling_number: r.decycling_number,
            witness: one_based(&r.witness),
            nodes: r.nodes,
            elapsed_ms: r.elapsed.as_millis(),
            optimal: r.optimal,
        },
    );
    Ok(ExitCode::SUCCESS)
}

/// Count rule applications per "rule/variant" key.
fn count_rules(node: &CertNode, out: &mut BTreeMap<String, usize>) {
    match node {
        CertNode::Exact { .. } | CertNode::Cycle { .. } | CertNode::Heuristic { .. } => {}
        CertNode::Split { parts } => {
            for (_, child) in parts {
                count_rules(child, out);
            }
        }
        CertNode::BridgeSplit { child, .. } => count_rules(child, out),
        CertNode::Reduce {
            rule,
            variant,
            child,
            ..
        } => {
            *out.entry(format!("{rule}/{variant}")).or_insert(0) += 1;
            count_rules(child, out);
        }
    }
}

fn cmd_reduce(
    file: Option<&Path>,
    class: GirthClass,
    threshold: Option<usize>,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let (parsed, digest) = read_graph(file)?;
    let g = &parsed.graph;
    let mut opts = ReduceOptions::default();
    if let Some(t) = threshold {
        opts.exact_threshold = t;
    }
    let cert = reducer::reduce(g, class, &opts)?;
    let checked = reducer::verify(g, &cert)
        .map_err(|e| anyhow!("reduction produced an invalid certificate: {e}"))?;
    let mut rules = BTreeMap::new();
    count_rules(&cert.root, &mut rules);
    if let Some(path) = output {
        let json = serde_json::to_string_pretty(&cert).expect("certificate serializes");
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    }
    let ceil = report::ceil_i64(checked.best_bound);
    #[derive(Serialize)]
    struct ReduceResult {
        class: GirthClass,
        n: usize,
        m: usize,
        forest: Vec<usize>,
        forest_size: usize,
        best_bound: String,
        bound_ceil: i64,
        meets_bound: bool,
        certified: bool,
        exact: bool,
        rules: BTreeMap<String, usize>,
        certificate: Option<String>,
    }
    report::print(
        "reduce",
        Some(digest),
        ReduceResult {
            class,
            n: g.n(),
            m: g.m(),
            forest: one_based(&cert.forest),
            forest_size: cert.forest.len(),
            best_bound: report::frac(checked.best_bound),
            bound_ceil: ceil,
            meets_bound: cert.forest.len() as i64 >= ceil,
            certified: checked.certified,
            exact: checked.exact,
            rules,
            certificate: output.map(|p| p.display().to_string()),
        },
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(file: &Path, cert_path: &Path) -> Result<ExitCode> {
    let (parsed, digest) = read_graph(Some(file))?;
    let cert_text = std::fs::read_to_string(cert_path)
        .with_context(|| format!("reading {}", cert_path.display()))?;
    let cert: Certificate = serde_json::from_str(&cert_text)
        .with_context(|| format!("parsing certificate {}", cert_path.display()))?;
    #[derive(Serialize)]
    struct VerifyResult {
        valid: bool,
        error: Option<String>,
        forest_size: Option<usize>,
        best_bound: Option<String>,
        bound_ceil: Option<i64>,
        meets_bound: Option<bool>,
        certified: Option<bool>,
        exact: Option<bool>,
    }
    match reducer::verify(&parsed.graph, &cert) {
        Ok(rep) => {
            let ceil = report::ceil_i64(rep.best_bound);
            report::print(
                "verify",
                Some(digest),
                VerifyResult {
                    valid: true,
                    error: None,
                    forest_size: Some(rep.forest.len()),
                    best_bound: Some(report::frac(rep.best_bound)),
                    bound_ceil: Some(ceil),
                    meets_bound: Some(rep.forest.len() as i64 >= ceil),
                    certified: Some(rep.certified),
                    exact: Some(rep.exact),
                },
            );
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            report::print(
                "verify",
                Some(digest),
                VerifyResult {
                    valid: false,
                    error: Some(e.to_string()),
                    forest_size: None,
                    best_bound: None,
                    bound_ceil: None,
                    meets_bound: None,
                    certified: None,
                    exact: None,
                },
            );
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_audit(file: Option<&Path>, mode: GirthClass) -> Result<ExitCode> {
    let (parsed, digest) = read_graph(file)?;
    let g = &parsed.graph;
    let rep = g.discharging_audit(mode)?;
    #[derive(Serialize)]
    struct ViolationOut {
        face: usize,
        len: usize,
        vertices: Vec<usize>,
        high_degree: usize,
        required: usize,
    }
    #[derive(Serialize)]
    struct AuditResult {
        mode: GirthClass,
        n: usize,
        m: usize,
        euler_sum: i64,
        degree_counts: BTreeMap<usize, usize>,
        face_counts: BTreeMap<usize, usize>,
        charge_margins: [i64; 2],
        violation_count: usize,
        violations: Vec<ViolationOut>,
    }
    let violations: Vec<ViolationOut> = rep
        .violations
        .iter()
        .map(|v| ViolationOut {
            face: v.face,
            len: v.len,
            vertices: one_based(&v.vertices),
            high_degree: v.high_degree,
            required: v.required,
        })
        .collect();
    report::print(
        "audit",
        Some(digest),
        AuditResult {
            mode,
            n: g.n(),
            m: g.m(),
            euler_sum: rep.euler_sum,
            degree_counts: rep.degree_counts,
            face_counts: rep.face_counts,
            charge_margins: rep.charge_margins,
            violation_count: violations.len(),
            violations,
        },
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_refute_kowalik(k: u64) -> Result<ExitCode> {
    if k == 0 {
        bail!("--k must be at least 1");
    }
    let rep = bounds::kowalik_refutation(k);
    #[derive(Serialize)]
    struct RefuteResult {
        k: u64,
        claimed: String,
        actual: u64,
        margin: String,
        violated: bool,
        per_cube: u64,
    }
    report::print(
        "refute-kowalik",
        None,
        RefuteResult {
            k: rep.k,
            claimed: report::frac(rep.claimed),
            actual: rep.actual,
            margin: report::frac(rep.margin),
            violated: rep.violated,
            per_cube: rep.per_cube,
        },
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_plot_polygon(class: GirthClass, output: &Path) -> Result<ExitCode> {
    let doc = svg::render(class);
    std::fs::write(output, &doc).with_context(|| format!("writing {}", output.display()))?;
    let poly = class.polygon();
    #[derive(Serialize)]
    struct VertexOut {
        a: String,
        b: String,
        label: String,
    }
    #[derive(Serialize)]
    struct PlotResult {
        class: GirthClass,
        output: String,
        vertices: Vec<VertexOut>,
        constraints: Vec<String>,
    }
    report::print(
        "plot-polygon",
        None,
        PlotResult {
            class,
            output: output.display().to_string(),
            vertices: poly
                .vertices()
                .iter()
                .map(|&(a, b)| VertexOut {
                    a: report::frac(a),
                    b: report::frac(b),
                    label: svg::vertex_label(class, a, b),
                })
                .collect(),
            constraints: poly.constraints().iter().map(svg::constraint_text).collect(),
        },
    );
    Ok(ExitCode::SUCCESS)
}
