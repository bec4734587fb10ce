use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sqroot_core::dot::to_dot;
use sqroot_core::io::{parse_edge_list, write_edge_list};
use sqroot_core::planarity::is_apex_with;
use sqroot_core::reductions::{
    color_to_setsplit, coloring_to_partition, extend_coloring, find_3_coloring, partition_to_coloring,
    partition_to_root, root_to_partition, setsplit_to_graph, ColoringInstance, LabeledGadgetGraph, RoleMap,
    APEX_LABELS,
};
use sqroot_core::report::{exit, PipelineReport, StageStatus};
use sqroot_core::rootsolver::{certify_no_root, solve_square_root, SolveOptions, SolveOutcome, DEFAULT_BUDGET};
use sqroot_core::setsplit::{
    first_unsplit_subset, solve_setsplit_bruteforce, validate_instance, verify_partition, SetSplitError,
    DEFAULT_MAX_GROUND_SET,
};
use sqroot_core::{square, square_discrepancy, Graph, Partition3, SetSplitInstance};

/// Graph square roots: reductions, solvers and verifiers.
///
/// Exit codes: 0 success or YES, 1 a requested check failed, 2 usage or
/// input error, 10 NO, 20 inconclusive (budget exhausted).
#[derive(Parser)]
#[command(name = "sqroot", version)]
struct Cli {
    /// Also write the run report as JSON to this file.
    #[arg(long, global = true, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Do not print the human-readable report to stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the square of a graph.
    Square {
        input: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a reduction.
    Reduce {
        kind: ReduceKind,
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Role map (gadget roles, or element origins for
        /// `coloring-to-setsplit`) [default: <output>.roles.json].
        #[arg(long)]
        roles: Option<PathBuf>,
        /// For `full`, also write the intermediate set-splitting instance.
        #[arg(long)]
        instance_out: Option<PathBuf>,
    },
    /// Decide an instance, writing a witness on YES.
    Solve {
        kind: SolveKind,
        input: PathBuf,
        /// Witness file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
        /// Write the square-root search transcript to this file.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Check a certificate.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Run the whole pipeline on a planar graph and check every stage.
    Roundtrip {
        input: PathBuf,
        #[command(flatten)]
        limits: Limits,
        /// Write the intermediate artifacts into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Write Graphviz DOT.
    ExportDot {
        input: PathBuf,
        /// Role map produced by `reduce`.
        #[arg(long)]
        roles: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    /// Planar graph to set-splitting instance (JSON).
    ColoringToSetsplit,
    /// Set-splitting instance (JSON) to gadget graph.
    SetsplitToGraph,
    /// Planar graph to gadget graph.
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveKind {
    /// Set-splitting instance (JSON), brute force.
    Setsplit,
    /// Graph, exact square-root search.
    Sqroot,
}

#[derive(Args, Clone, Copy)]
struct Limits {
    /// Maximum branch assignments in the square-root search.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget_nodes: u64,
    /// Largest ground set the set-splitting brute force accepts.
    #[arg(long, default_value_t = DEFAULT_MAX_GROUND_SET)]
    max_ground_set: u32,
}

#[derive(Subcommand)]
enum VerifyKind {
    /// Check that ROOT squared equals GRAPH.
    SquareRoot { root: PathBuf, graph: PathBuf },
    /// Check that PARTITION splits every subset of INSTANCE.
    Partition { instance: PathBuf, partition: PathBuf },
    /// Check that GRAPH minus the apex vertices is planar.
    Apex {
        graph: PathBuf,
        /// Comma-separated labels [default: the six a- and b-vertices].
        #[arg(long, value_delimiter = ',')]
        apex: Vec<String>,
    },
}

type Outcome = Result<i32, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_or_stdout(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    parse_edge_list(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_instance(path: &Path) -> Result<SetSplitInstance, String> {
    SetSplitInstance::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_partition(path: &Path) -> Result<Partition3, String> {
    Partition3::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn default_roles_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".roles.json");
    PathBuf::from(s)
}

fn sizes(g: &Graph) -> serde_json::Value {
    json!({"n": g.vertex_count(), "m": g.edge_count()})
}

/// Validation stage shared by the commands that consume an instance.
fn check_instance(r: &mut PipelineReport, inst: &SetSplitInstance) -> bool {
    let violations = validate_instance(inst);
    let detail = json!({
        "ground_set": inst.ground_set().len(),
        "subsets": inst.collection().len(),
        "violations": violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    let ok = violations.is_empty();
    r.record("validate-instance", if ok { StageStatus::Pass } else { StageStatus::Error }, detail);
    ok
}

fn gadget_stage(r: &mut PipelineReport, inst: &SetSplitInstance) -> Option<LabeledGadgetGraph> {
    r.stage("setsplit-to-graph", || match setsplit_to_graph(inst) {
        Ok(gg) => {
            let families: serde_json::Map<String, serde_json::Value> =
                gg.family_counts().into_iter().map(|(f, c)| (format!("{f:?}"), json!(c))).collect();
            let mut d = sizes(&gg.graph);
            d["families"] = families.into();
            (StageStatus::Done, d, Some(gg))
        }
        Err(e) => (StageStatus::Error, json!(e.to_string()), None),
    })
}

fn write_gadget(gg: &LabeledGadgetGraph, output: &Path, roles: Option<&Path>) -> Result<(), String> {
    write(output, &write_edge_list(&gg.graph))?;
    let roles = roles.map(Path::to_path_buf).unwrap_or_else(|| default_roles_path(output));
    write(&roles, &gg.role_map().to_json())
}

fn cmd_square(r: &mut PipelineReport, input: &Path, output: Option<&Path>) -> Outcome {
    let g = read_graph(input)?;
    let sq = r.stage("square", || {
        let sq = square(&g);
        (StageStatus::Done, json!({"input": sizes(&g), "square": sizes(&sq)}), sq)
    });
    write_or_stdout(output, &write_edge_list(&sq))?;
    Ok(exit::OK)
}

fn cmd_reduce(
    r: &mut PipelineReport,
    kind: ReduceKind,
    input: &Path,
    output: &Path,
    roles: Option<&Path>,
    instance_out: Option<&Path>,
) -> Outcome {
    let inst = match kind {
        ReduceKind::SetsplitToGraph => read_instance(input)?,
        ReduceKind::ColoringToSetsplit | ReduceKind::Full => {
            let g = read_graph(input)?;
            let red = r.stage("coloring-to-setsplit", || {
                match ColoringInstance::new(g).and_then(|ci| color_to_setsplit(&ci)) {
                    Ok(red) => {
                        let d = json!({
                            "ground_set": red.instance.ground_set().len(),
                            "subsets": red.instance.collection().len(),
                        });
                        (StageStatus::Done, d, Some(red))
                    }
                    Err(e) => (StageStatus::Error, json!(e.to_string()), None),
                }
            });
            let Some(red) = red else { return Ok(exit::ERROR) };
            if let ReduceKind::ColoringToSetsplit = kind {
                write(output, &red.instance.to_json())?;
                let roles = roles.map(Path::to_path_buf).unwrap_or_else(|| default_roles_path(output));
                write(&roles, &serde_json::to_string_pretty(&red.origins).expect("origins serialize"))?;
                return Ok(exit::OK);
            }
            if let Some(p) = instance_out {
                write(p, &red.instance.to_json())?;
            }
            red.instance
        }
    };
    if !check_instance(r, &inst) {
        return Ok(exit::ERROR);
    }
    let Some(gg) = gadget_stage(r, &inst) else { return Ok(exit::ERROR) };
    write_gadget(&gg, output, roles)?;
    Ok(exit::OK)
}

fn solve_graph(
    r: &mut PipelineReport,
    g: &Graph,
    budget: u64,
    transcript: Option<&Path>,
) -> Result<SolveOutcome, String> {
    let opts = SolveOptions { budget, record_transcript: transcript.is_some() };
    let report = r.stage("solve-sqroot", || {
        let rep = solve_square_root(g, opts);
        let d = json!({
            "outcome": rep.outcome.kind(),
            "nodes_explored": rep.nodes_explored,
            "budget": budget,
            "transcript_digest": rep.transcript.digest,
            "transcript_events": rep.transcript.events,
        });
        (StageStatus::Done, d, rep)
    });
    if let (Some(path), Some(lines)) = (transcript, &report.transcript.lines) {
        let mut text = lines.join("\n");
        text.push('\n');
        write(path, &text)?;
    }
    match &report.outcome {
        SolveOutcome::Root(h) => {
            let ok = sqroot_core::verify_square_root(h, g).unwrap_or(false);
            r.record("verify-root", if ok { StageStatus::Pass } else { StageStatus::Fail }, sizes(h));
        }
        SolveOutcome::NoRoot => r.stage("certify-no-root", || match certify_no_root(g, &report) {
            Ok(true) => (StageStatus::Pass, json!(null), ()),
            Ok(false) => (StageStatus::Fail, json!("replay did not end in exhaustion"), ()),
            Err(e) => (StageStatus::Fail, json!(e.to_string()), ()),
        }),
        SolveOutcome::Inconclusive(_) => {}
    }
    Ok(report.outcome)
}

fn cmd_solve(
    r: &mut PipelineReport,
    kind: SolveKind,
    input: &Path,
    output: Option<&Path>,
    limits: Limits,
    transcript: Option<&Path>,
) -> Outcome {
    match kind {
        SolveKind::Sqroot => {
            let g = read_graph(input)?;
            match solve_graph(r, &g, limits.budget_nodes, transcript)? {
                SolveOutcome::Root(h) => {
                    write_or_stdout(output, &write_edge_list(&h))?;
                    Ok(exit::OK)
                }
                SolveOutcome::NoRoot => Ok(exit::NO),
                SolveOutcome::Inconclusive(_) => Ok(exit::INCONCLUSIVE),
            }
        }
        SolveKind::Setsplit => {
            let inst = read_instance(input)?;
            if !check_instance(r, &inst) {
                return Ok(exit::ERROR);
            }
            let res = r.stage("solve-setsplit", || match solve_setsplit_bruteforce(&inst, limits.max_ground_set) {
                Ok(Some(p)) => (StageStatus::Done, json!({"outcome": "yes"}), Ok(Some(p))),
                Ok(None) => (StageStatus::Done, json!({"outcome": "no"}), Ok(None)),
                Err(e @ SetSplitError::BudgetExceeded { .. }) => {
                    (StageStatus::Done, json!({"outcome": "inconclusive", "reason": e.to_string()}), Err(()))
                }
                Err(e) => (StageStatus::Error, json!(e.to_string()), Err(())),
            });
            match res {
                Ok(Some(p)) => {
                    let ok = verify_partition(&inst, &p).unwrap_or(false);
                    r.record("verify-partition", if ok { StageStatus::Pass } else { StageStatus::Fail }, json!(null));
                    write_or_stdout(output, &p.to_json())?;
                    Ok(exit::OK)
                }
                Ok(None) => Ok(exit::NO),
                Err(()) => Ok(exit::INCONCLUSIVE),
            }
        }
    }
}

fn cmd_verify(r: &mut PipelineReport, kind: &VerifyKind) -> Outcome {
    match kind {
        VerifyKind::SquareRoot { root, graph } => {
            let (h, g) = (read_graph(root)?, read_graph(graph)?);
            let diff = square_discrepancy(&h, &g).map_err(|e| e.to_string())?;
            let ok = diff.is_empty();
            let name = |ps: &[sqroot_core::VertexPair]| {
                ps.iter().map(ToString::to_string).collect::<Vec<_>>()
            };
            let d = json!({"uncovered": name(&diff.uncovered), "extra": name(&diff.extra)});
            r.record("square-root", if ok { StageStatus::Pass } else { StageStatus::Fail }, d);
        }
        VerifyKind::Partition { instance, partition } => {
            let (inst, p) = (read_instance(instance)?, read_partition(partition)?);
            let d = match first_unsplit_subset(&inst, &p) {
                Ok(None) => (StageStatus::Pass, json!(null)),
                Ok(Some(j)) => (StageStatus::Fail, json!({"unsplit_subset": j})),
                Err(e) => (StageStatus::Fail, json!(e.to_string())),
            };
            r.record("partition", d.0, d.1);
        }
        VerifyKind::Apex { graph, apex } => {
            let g = read_graph(graph)?;
            let labels: Vec<String> =
                if apex.is_empty() { APEX_LABELS.iter().map(|s| s.to_string()).collect() } else { apex.clone() };
            let cert = is_apex_with(&g, &labels).map_err(|e| e.to_string())?;
            let status = if cert.remainder_planar { StageStatus::Pass } else { StageStatus::Fail };
            r.record("apex", status, serde_json::to_value(&cert).unwrap());
        }
    }
    Ok(exit::OK)
}

fn pass_fail(ok: bool) -> StageStatus {
    if ok {
        StageStatus::Pass
    } else {
        StageStatus::Fail
    }
}

fn cmd_roundtrip(r: &mut PipelineReport, input: &Path, limits: Limits, out_dir: Option<&Path>) -> Outcome {
    let g = read_graph(input)?;
    let red = r.stage("coloring-to-setsplit", || match ColoringInstance::new(g.clone()).and_then(|ci| color_to_setsplit(&ci)) {
        Ok(red) => {
            let d = json!({"ground_set": red.instance.ground_set().len(), "subsets": red.instance.collection().len()});
            (StageStatus::Done, d, Some(red))
        }
        Err(e) => (StageStatus::Error, json!(e.to_string()), None),
    });
    let Some(red) = red else { return Ok(exit::ERROR) };
    if !check_instance(r, &red.instance) {
        return Ok(exit::ERROR);
    }
    let Some(gg) = gadget_stage(r, &red.instance) else { return Ok(exit::ERROR) };
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        write(&dir.join("instance.json"), &red.instance.to_json())?;
        write_gadget(&gg, &dir.join("gadget.txt"), None)?;
    }

    let coloring = r.stage("3-coloring", || {
        let f = find_3_coloring(&g);
        (StageStatus::Done, json!({"colorable": f.is_some()}), f)
    });
    let Some(f) = coloring else {
        return match solve_graph(r, &gg.graph, limits.budget_nodes, None)? {
            SolveOutcome::NoRoot => Ok(exit::OK),
            SolveOutcome::Root(_) => {
                r.record("expect-no-root", StageStatus::Fail, json!("uncolourable input gave a rooted gadget"));
                Ok(exit::CHECK_FAILED)
            }
            SolveOutcome::Inconclusive(_) => Ok(exit::INCONCLUSIVE),
        };
    };

    let p = extend_coloring(&red, &f).and_then(|full| coloring_to_partition(&red, &full));
    let p = match p {
        Ok(p) => {
            let ok = verify_partition(&red.instance, &p).unwrap_or(false);
            r.record("lift-to-partition", pass_fail(ok), json!({"part_sizes": p.parts.each_ref().map(|s| s.len())}));
            p
        }
        Err(e) => {
            r.record("lift-to-partition", StageStatus::Error, json!(e.to_string()));
            return Ok(exit::ERROR);
        }
    };
    let h = r.stage("partition-to-root", || match partition_to_root(&gg, &p) {
        Ok(h) => (StageStatus::Done, sizes(&h), Some(h)),
        Err(e) => (StageStatus::Error, json!(e.to_string()), None),
    });
    let Some(h) = h else { return Ok(exit::ERROR) };
    if let Some(dir) = out_dir {
        write(&dir.join("root.txt"), &write_edge_list(&h))?;
        write(&dir.join("partition.json"), &p.to_json())?;
    }
    r.stage("verify-square-root", || {
        let ok = sqroot_core::verify_square_root(&h, &gg.graph).unwrap_or(false);
        (pass_fail(ok), json!(null), ())
    });
    r.stage("verify-apex", || {
        let cert = is_apex_with(&h, &APEX_LABELS).expect("gadget has the apex labels");
        (pass_fail(cert.remainder_planar), serde_json::to_value(&cert).unwrap(), ())
    });
    r.stage("root-to-partition", || match root_to_partition(&gg, &h) {
        Ok(back) => {
            let agree = back.parts[0] == p.parts[0] && back.parts[1] == p.parts[1];
            let coloring_ok = partition_to_coloring(&red, &back).is_ok();
            (pass_fail(agree && coloring_ok), json!({"parts_1_2_agree": agree, "coloring_recovered": coloring_ok}), ())
        }
        Err(e) => (StageStatus::Fail, json!(e.to_string()), ()),
    });
    Ok(exit::OK)
}

fn cmd_export_dot(input: &Path, roles: Option<&Path>, output: Option<&Path>) -> Outcome {
    let g = read_graph(input)?;
    let roles = match roles {
        Some(p) => Some(RoleMap::from_json(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?),
        None => None,
    };
    let out = to_dot(&g, roles.as_ref());
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    write_or_stdout(output, &out.text)?;
    Ok(exit::OK)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Square { .. } => "square",
        Command::Reduce { .. } => "reduce",
        Command::Solve { .. } => "solve",
        Command::Verify { .. } => "verify",
        Command::Roundtrip { .. } => "roundtrip",
        Command::ExportDot { .. } => "export-dot",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut r = PipelineReport::new(command_name(&cli.command));
    let outcome = match &cli.command {
        Command::Square { input, output } => cmd_square(&mut r, input, output.as_deref()),
        Command::Reduce { kind, input, output, roles, instance_out } => {
            cmd_reduce(&mut r, *kind, input, output, roles.as_deref(), instance_out.as_deref())
        }
        Command::Solve { kind, input, output, limits, transcript } => {
            cmd_solve(&mut r, *kind, input, output.as_deref(), *limits, transcript.as_deref())
        }
        Command::Verify { kind } => cmd_verify(&mut r, kind),
        Command::Roundtrip { input, limits, out_dir } => cmd_roundtrip(&mut r, input, *limits, out_dir.as_deref()),
        Command::ExportDot { input, roles, output } => cmd_export_dot(input, roles.as_deref(), output.as_deref()),
    };
    let code = match outcome {
        Ok(verdict) => r.finish(verdict),
        Err(msg) => {
            eprintln!("error: {msg}");
            r.record("input", StageStatus::Error, json!(msg));
            r.finish(exit::ERROR)
        }
    };
    if !cli.quiet && !r.stages.is_empty() {
        eprint!("{}", r.to_text());
    }
    if let Some(path) = &cli.report {
        if let Err(e) = write(path, &r.to_json()) {
            eprintln!("error: {e}");
            return ExitCode::from(exit::ERROR as u8);
        }
    }
    ExitCode::from(code as u8)
}
