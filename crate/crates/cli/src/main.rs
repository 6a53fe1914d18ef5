//! `reconfig`: solve, check, reduce and generate reconfiguration instances.
//!
//! Exit codes: 0 yes/ok, 1 no/invalid, 2 usage or precondition error,
//! 3 resource limit. Reports are `key: value` lines on stdout; prose goes to
//! stderr.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use reconfig_core::format::{self, MapEntry};
use reconfig_core::generate::{self, DsParams, GenError, SplitParams};
use reconfig_core::graph::{clique_number_chordal, elimination_order, split_partition};
use reconfig_core::model::{
    ds_validate_sequence, ncl_orientations, ncl_validate_sequence, validate_sequence, DsInstance, DsRule, NclInstance,
    ReconfigInstance, Validation,
};
use reconfig_core::oracle::{ds_oracle, ncl_oracle, reconfig_oracle, OracleError, OracleOptions, DEFAULT_MAX_STATES};
use reconfig_core::reductions::{
    build_gb, build_gf, configs_to_witness, dsr_to_split, lift_sequence, ncl_normalize, project_sequence,
    split_to_chordal, AmplifiedGraph, GadgetGraph, GadgetVertex, SplitRule,
};
use reconfig_core::solver::{solve_with, SolveError, SolveOptions};
use reconfig_core::{Graph, MoveSequence, VertexSet};

#[derive(Parser)]
#[command(name = "reconfig", version, about = "Token reconfiguration toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a token-sliding instance on a split graph (c >= 2).
    Solve {
        instance: PathBuf,
        /// Write the witness here when reachable.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Worker threads for the bridge search.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Exhaustive breadth-first search on an instance, NCL or DS file.
    Oracle {
        input: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        #[arg(long, value_enum)]
        filter: Option<Filter>,
        /// Provenance sidecar naming the selector vertices (needed by --filter).
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Check a certificate against an instance, NCL or DS file.
    Verify { input: PathBuf, cert: PathBuf },
    #[command(subcommand)]
    Reduce(Reduce),
    #[command(subcommand)]
    Gen(Gen),
    /// Print structural facts about a file, or a DOT rendering.
    Inspect {
        input: PathBuf,
        /// Emit Graphviz DOT instead of a report. NCL files render their gadget graph.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    /// Reject states holding both selectors of one edge.
    NoBothSelectors,
}

#[derive(Args)]
struct Output {
    /// Output instance file; stdout when omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Provenance sidecar file.
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Stage {
    Gb,
    Gf,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Ts,
    Tj,
    Tar,
}

#[derive(Subcommand)]
enum Reduce {
    /// Constraint logic machine to gadget graph.
    NclToSplit {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "gf")]
        stage: Stage,
        #[command(flatten)]
        output: Output,
        /// Translate a gadget-graph certificate to the amplified graph (stage gf).
        #[arg(long, requires = "cert_out", conflicts_with = "project")]
        lift: Option<PathBuf>,
        /// Translate an amplified-graph certificate back to the gadget graph (stage gf).
        #[arg(long, requires = "cert_out")]
        project: Option<PathBuf>,
        /// Where --lift or --project writes its certificate.
        #[arg(long)]
        cert_out: Option<PathBuf>,
    },
    /// Independent-set sliding on a split graph to c-colorable sliding on a chordal graph.
    SplitToChordal {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        c: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Dominating set reconfiguration to colorable sets on a split graph.
    DsrToSplit {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "ts")]
        rule: RuleArg,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Token-sliding instance on a random split graph.
    Split {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        n: usize,
        /// Clique size; n/2 when omitted.
        #[arg(long)]
        clique: Option<usize>,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        #[arg(long, default_value_t = 4)]
        tokens: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        source_clique: Option<usize>,
        #[arg(long)]
        target_clique: Option<usize>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Normalized constraint logic machine.
    Ncl {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        ands: usize,
        #[arg(long, default_value_t = 0)]
        ors: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Dominating set reconfiguration instance.
    Ds {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// Source and target size; bound - 1 when omitted.
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, value_enum, default_value = "tar")]
        rule: RuleArg,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Yes,
    No,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Yes) => ExitCode::from(0),
        Ok(Status::No) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let resource = e
                .chain()
                .any(|c| matches!(c.downcast_ref(), Some(OracleError::ResourceLimit(_))));
            ExitCode::from(if resource { 3 } else { 2 })
        }
    }
}

fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Solve { instance, cert, jobs } => cmd_solve(&instance, cert.as_deref(), jobs),
        Command::Oracle {
            input,
            cert,
            max_states,
            filter,
            map,
        } => cmd_oracle(&input, cert.as_deref(), max_states, filter, map.as_deref()),
        Command::Verify { input, cert } => cmd_verify(&input, &cert),
        Command::Reduce(r) => cmd_reduce(r),
        Command::Gen(g) => cmd_gen(g),
        Command::Inspect { input, dot } => cmd_inspect(&input, dot),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn context(path: &Path, e: format::ParseError) -> anyhow::Error {
    anyhow!("{}: {e}", path.display())
}

/// Parsed input file of any kind.
enum Input {
    Graph(Graph),
    Instance(ReconfigInstance),
    Ncl(NclInstance),
    Ds(DsInstance),
}

fn load(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    // `g <path>` lines are resolved relative to the referencing file
    let mut resolve = |p: &str| fs::read_to_string(dir.join(p)).map_err(|e| format!("{p}: {e}"));
    let parsed = match format::detect_kind(&text) {
        Some("graph") => Input::Graph(format::parse_graph(&text).map_err(|e| context(path, e))?),
        Some("inst") => Input::Instance(format::parse_instance_with(&text, &mut resolve).map_err(|e| context(path, e))?),
        Some("ncl") => Input::Ncl(format::parse_ncl(&text).map_err(|e| context(path, e))?),
        Some("ds") => Input::Ds(format::parse_ds_with(&text, &mut resolve).map_err(|e| context(path, e))?),
        Some(other) => bail!("{}: unknown file kind `{other}`", path.display()),
        None => bail!("{}: missing `p <kind>` header", path.display()),
    };
    Ok(parsed)
}

fn load_instance(path: &Path) -> Result<ReconfigInstance> {
    match load(path)? {
        Input::Instance(i) => Ok(i),
        _ => bail!("{}: expected an instance file (`p inst`)", path.display()),
    }
}

fn load_certificate(path: &Path) -> Result<MoveSequence> {
    format::parse_certificate(&read(path)?).map_err(|e| context(path, e))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn status(b: bool) -> Status {
    if b {
        Status::Yes
    } else {
        Status::No
    }
}

fn cmd_solve(path: &Path, cert: Option<&Path>, jobs: usize) -> Result<Status> {
    let inst = load_instance(path)?;
    let sol = match solve_with(&inst, &SolveOptions { jobs }) {
        Ok(sol) => sol,
        Err(e @ SolveError::UnsupportedColorBound(_)) => bail!("{e} (`reconfig oracle`)"),
        Err(e) => return Err(e.into()),
    };
    println!("reachable: {}", yes_no(sol.reachable));
    if let Some(w) = &sol.witness {
        println!("length: {}", w.len());
    }
    println!("candidates: {}", sol.stats.candidates);
    println!("candidate_bound: {}", sol.stats.candidate_bound);
    println!("rigid_states: {}", sol.stats.rigid_states);
    if let (Some(p), Some(w)) = (cert, &sol.witness) {
        write(p, &format::write_certificate(w))?;
        eprintln!("witness written to {}", p.display());
    }
    Ok(status(sol.reachable))
}

/// Selector pairs listed in a provenance sidecar.
fn selector_pairs(map: &[MapEntry]) -> Result<Vec<[usize; 2]>> {
    let mut pairs: Vec<[Option<usize>; 2]> = Vec::new();
    for (v, entry) in map.iter().enumerate() {
        let (edge, side) = match *entry {
            MapEntry::Selector { edge, side } => (edge, side),
            MapEntry::Copy { .. } => bail!("--filter applies to gadget graphs (stage gb), not amplified ones"),
            _ => continue,
        };
        if side > 1 {
            bail!("selector side {side} out of range");
        }
        if pairs.len() <= edge {
            pairs.resize(edge + 1, [None, None]);
        }
        pairs[edge][side] = Some(v);
    }
    pairs
        .into_iter()
        .enumerate()
        .map(|(e, p)| match p {
            [Some(a), Some(b)] => Ok([a, b]),
            _ => Err(anyhow!("edge {e} lacks a selector in the map")),
        })
        .collect()
}

fn report_oracle(reachable: bool, length: Option<usize>, states: usize) {
    println!("reachable: {}", yes_no(reachable));
    if let Some(l) = length {
        println!("length: {l}");
    }
    println!("states: {states}");
    if reachable {
        eprintln!("reachable l={}", length.unwrap_or(0));
    } else {
        eprintln!("unreachable");
    }
}

fn cmd_oracle(
    path: &Path,
    cert: Option<&Path>,
    max_states: usize,
    filter: Option<Filter>,
    map: Option<&Path>,
) -> Result<Status> {
    let opts = OracleOptions {
        max_states,
        ..OracleOptions::default()
    };
    match load(path)? {
        Input::Instance(inst) => {
            let pairs = match (filter, map) {
                (None, _) => None,
                (Some(Filter::NoBothSelectors), Some(m)) => {
                    Some(selector_pairs(&format::parse_map(&read(m)?).map_err(|e| context(m, e))?)?)
                }
                (Some(_), None) => bail!("--filter needs --map with the selector provenance"),
            };
            let keep = |s: &VertexSet| {
                pairs
                    .as_ref()
                    .is_none_or(|ps| ps.iter().all(|&[a, b]| !(s.contains(a) && s.contains(b))))
            };
            let res = reconfig_oracle(&inst, pairs.is_some().then_some(&keep as _), &opts)?;
            report_oracle(res.reachable, res.witness.as_ref().map(MoveSequence::len), res.states_explored);
            if let (Some(p), Some(w)) = (cert, &res.witness) {
                write(p, &format::write_certificate(w))?;
            }
            Ok(status(res.reachable))
        }
        Input::Ncl(ncl) => {
            if filter.is_some() {
                bail!("--filter applies to gadget graph instances");
            }
            let res = ncl_oracle(&ncl, &opts)?;
            report_oracle(res.reachable, res.witness.as_ref().map(Vec::len), res.states_explored);
            if let (Some(p), Some(w)) = (cert, &res.witness) {
                write(p, &format::write_ncl_certificate(w))?;
            }
            Ok(status(res.reachable))
        }
        Input::Ds(ds) => {
            if filter.is_some() {
                bail!("--filter applies to gadget graph instances");
            }
            let res = ds_oracle(&ds, &opts)?;
            report_oracle(res.reachable, res.witness.as_ref().map(MoveSequence::len), res.states_explored);
            if let (Some(p), Some(w)) = (cert, &res.witness) {
                write(p, &format::write_certificate(w))?;
            }
            Ok(status(res.reachable))
        }
        Input::Graph(_) => bail!("{}: a bare graph has no source and target", path.display()),
    }
}

fn report_validation(v: &Validation, moves: usize) -> Status {
    match v {
        Validation::Valid => {
            println!("valid: yes");
            println!("length: {moves}");
            Status::Yes
        }
        Validation::Invalid { index, reason } => {
            println!("valid: no");
            println!("index: {index}");
            eprintln!("move {index}: {reason}");
            Status::No
        }
    }
}

fn cmd_verify(path: &Path, cert: &Path) -> Result<Status> {
    match load(path)? {
        Input::Instance(inst) => {
            let seq = load_certificate(cert)?;
            Ok(report_validation(&validate_sequence(&inst, &seq), seq.len()))
        }
        Input::Ds(ds) => {
            let seq = load_certificate(cert)?;
            Ok(report_validation(&ds_validate_sequence(&ds, &seq), seq.len()))
        }
        Input::Ncl(ncl) => {
            let flips = format::parse_ncl_certificate(&read(cert)?).map_err(|e| context(cert, e))?;
            let v = match ncl_orientations(&ncl, &flips) {
                Ok(seq) => ncl_validate_sequence(&ncl, &seq),
                Err(index) => Validation::Invalid {
                    index,
                    reason: "flip names a missing edge or a non-endpoint head".into(),
                },
            };
            // orientation indices count the initial orientation; report flip indices
            let v = match v {
                Validation::Invalid { index, reason } => Validation::Invalid {
                    index: index.saturating_sub(1),
                    reason,
                },
                ok => ok,
            };
            Ok(report_validation(&v, flips.len()))
        }
        Input::Graph(_) => bail!("{}: a bare graph has no source and target", path.display()),
    }
}

fn gadget_map(gb: &GadgetGraph) -> Vec<MapEntry> {
    gb.labels()
        .iter()
        .map(|l| match *l {
            GadgetVertex::Selector { edge, side } => MapEntry::Selector { edge, side },
            GadgetVertex::Gate { edge, index } => MapEntry::Gate { edge, index },
        })
        .collect()
}

fn amplified_map(amp: &AmplifiedGraph) -> Vec<MapEntry> {
    (0..amp.graph.n())
        .map(|w| {
            let (vertex, copy) = amp.origin(w);
            MapEntry::Copy { vertex, copy }
        })
        .collect()
}

fn write_reduction(output: &Output, inst: &ReconfigInstance, map: &[MapEntry]) -> Result<()> {
    let text = format::write_instance(inst);
    // the sidecar goes next to the instance unless given explicitly
    let map_path = output
        .map
        .clone()
        .or_else(|| output.out.as_ref().map(|o| o.with_extension("map")));
    emit(output.out.as_deref(), &text)?;
    if let Some(p) = map_path {
        write(&p, &format::write_map(map))?;
    }
    if output.out.is_some() {
        println!("vertices: {}", inst.graph.n());
        println!("edges: {}", inst.graph.m());
        println!("colors: {}", inst.colors);
        println!("tokens: {}", inst.source.len());
    }
    Ok(())
}

fn cmd_reduce(r: Reduce) -> Result<Status> {
    match r {
        Reduce::NclToSplit {
            input,
            stage,
            output,
            lift,
            project,
            cert_out,
        } => {
            let Input::Ncl(ncl) = load(&input)? else {
                bail!("{}: expected an NCL file (`p ncl`)", input.display());
            };
            let norm = ncl_normalize(&ncl)?;
            if norm.m() != ncl.m() {
                eprintln!("normalized: {} edges became {}", ncl.m(), norm.m());
            }
            let gb = build_gb(&norm)?;
            if stage == Stage::Gb {
                if lift.is_some() || project.is_some() {
                    bail!("--lift and --project need --stage gf");
                }
                write_reduction(&output, &gb.instance(), &gadget_map(&gb))?;
                if output.out.is_some() {
                    println!("ncl_edges: {}", norm.m());
                }
                return Ok(Status::Yes);
            }
            let amp = build_gf(&gb, &gb.source, &gb.target)?;
            write_reduction(&output, &amp.instance(), &amplified_map(&amp))?;
            if output.out.is_some() {
                println!("ncl_edges: {}", norm.m());
                println!("copies: {}", amp.copies);
            }
            if let (Some(src), Some(dst)) = (lift, cert_out.as_ref()) {
                let lifted = lift_sequence(&load_certificate(&src)?, &amp)?;
                write(dst, &format::write_certificate(&lifted))?;
                println!("lifted_length: {}", lifted.len());
            } else if let (Some(src), Some(dst)) = (project, cert_out.as_ref()) {
                let configs = project_sequence(&load_certificate(&src)?, &amp)?;
                let back = configs_to_witness(&gb, &configs)?;
                write(dst, &format::write_certificate(&back))?;
                println!("main_configurations: {}", configs.len());
                println!("projected_length: {}", back.len());
            }
            Ok(Status::Yes)
        }
        Reduce::SplitToChordal { input, c, output } => {
            let inst = load_instance(&input)?;
            let out = split_to_chordal(&inst, c)?;
            let n = inst.graph.n();
            let mut map: Vec<MapEntry> = (0..n).map(|vertex| MapEntry::Original { vertex }).collect();
            for edge in 0..inst.graph.m() {
                for copy in 0..n {
                    for member in 0..c - 1 {
                        map.push(MapEntry::Attached { edge, copy, member });
                    }
                }
            }
            write_reduction(&output, &out, &map)?;
            Ok(Status::Yes)
        }
        Reduce::DsrToSplit { input, rule, output } => {
            let Input::Ds(ds) = load(&input)? else {
                bail!("{}: expected a dominating set file (`p ds`)", input.display());
            };
            let rule = match rule {
                RuleArg::Ts => SplitRule::Sliding,
                RuleArg::Tj => SplitRule::Jumping,
                RuleArg::Tar => SplitRule::AdditionRemoval,
            };
            let out = dsr_to_split(&ds, rule)?;
            let n = ds.graph.n();
            let map: Vec<MapEntry> = (0..n)
                .map(|vertex| MapEntry::Clique { vertex })
                .chain((0..n).map(|vertex| MapEntry::Independent { vertex }))
                .collect();
            write_reduction(&output, &out, &map)?;
            Ok(Status::Yes)
        }
    }
}

fn generated<T>(r: Result<T, GenError>) -> Result<T> {
    r.map_err(|e| anyhow!("{e}"))
}

fn cmd_gen(g: Gen) -> Result<Status> {
    match g {
        Gen::Split {
            seed,
            n,
            clique,
            colors,
            tokens,
            density,
            source_clique,
            target_clique,
            out,
        } => {
            let p = SplitParams {
                clique: clique.unwrap_or(n / 2),
                density,
                source_clique,
                target_clique,
                ..SplitParams::new(n, colors, tokens)
            };
            let inst = generated(generate::split_instance(&mut generate::rng(seed), &p))?;
            emit(out.as_deref(), &format::write_instance(&inst))?;
        }
        Gen::Ncl { seed, ands, ors, out } => {
            let ncl = generated(generate::ncl_instance(&mut generate::rng(seed), ands, ors))?;
            emit(out.as_deref(), &format::write_ncl(&ncl))?;
        }
        Gen::Ds {
            seed,
            n,
            density,
            bound,
            size,
            rule,
            out,
        } => {
            let rule = match rule {
                RuleArg::Tar => DsRule::AdditionRemoval,
                RuleArg::Tj => DsRule::Jumping,
                RuleArg::Ts => bail!("dominating set instances use `tar` or `tj`"),
            };
            let p = DsParams {
                n,
                density,
                bound,
                size: size.unwrap_or(bound.saturating_sub(1).max(1)),
                rule,
            };
            let ds = generated(generate::ds_instance(&mut generate::rng(seed), &p))?;
            emit(out.as_deref(), &format::write_ds(&ds))?;
        }
    }
    Ok(Status::Yes)
}

fn report_graph(g: &Graph) {
    println!("vertices: {}", g.n());
    println!("edges: {}", g.m());
    match split_partition(g) {
        Some(p) => {
            println!("split: yes");
            println!("clique_side: {}", p.clique.len());
        }
        None => println!("split: no"),
    }
    match elimination_order(g) {
        Some(ord) => {
            println!("chordal: yes");
            if let Ok(w) = clique_number_chordal(g, &ord) {
                println!("clique_number: {w}");
            }
        }
        None => println!("chordal: no"),
    }
}

fn dot(g: &Graph, label: impl Fn(usize) -> String, boxed: impl Fn(usize) -> bool) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        let shape = if boxed(v) { "box" } else { "ellipse" };
        out.push_str(&format!("  {v} [label=\"{}\", shape={shape}];\n", label(v)));
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("  {u} -- {v};\n"));
    }
    out.push_str("}\n");
    out
}

fn cmd_inspect(path: &Path, as_dot: bool) -> Result<Status> {
    let input = load(path)?;
    if as_dot {
        let text = match &input {
            Input::Graph(g) => dot(g, |v| v.to_string(), |_| false),
            Input::Instance(i) => dot(&i.graph, |v| v.to_string(), |v| i.source.contains(v)),
            Input::Ds(d) => dot(&d.graph, |v| v.to_string(), |v| d.source.contains(v)),
            Input::Ncl(ncl) => {
                let gb = build_gb(&ncl_normalize(ncl)?)?;
                dot(
                    &gb.graph,
                    |v| format!("{v}: {}", gb.label(v)),
                    |v| matches!(gb.label(v), GadgetVertex::Gate { .. }),
                )
            }
        };
        print!("{text}");
        return Ok(Status::Yes);
    }
    match &input {
        Input::Graph(g) => {
            println!("kind: graph");
            report_graph(g);
        }
        Input::Instance(i) => {
            println!("kind: inst");
            report_graph(&i.graph);
            println!("colors: {}", i.colors);
            println!("rule: {}", i.rule);
            println!("tokens: {}", i.source.len());
        }
        Input::Ds(d) => {
            println!("kind: ds");
            report_graph(&d.graph);
            println!("bound: {}", d.bound);
            println!("rule: {}", d.rule);
            println!("size: {}", d.source.len());
        }
        Input::Ncl(ncl) => {
            println!("kind: ncl");
            println!("vertices: {}", ncl.n());
            println!("edges: {}", ncl.m());
            let norm = ncl_normalize(ncl)?;
            println!("normalized_edges: {}", norm.m());
            println!("amplified_copies: {}", norm.m() + 4);
        }
    }
    Ok(Status::Yes)
}
