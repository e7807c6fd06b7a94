//! Command-line front end. Exit codes: 0 success, 1 failed verification,
//! 2 usage or input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::autgroup::{aut_stabilizer, cayley_isomorphic};
use crate::cayley::{build_digraph, build_graph, decode_graph6, CayleyGraph, ExportFormat};
use crate::census::{run_census, space_size, verify_theorem, CensusError, CensusMode, CensusSpec};
use crate::classify::{certificate_for, graph_profile, profile_from_stabilizer, solve_eqs, Certificate, EqSystem};
use crate::families::{Family, FamilyParams};
use crate::graphauto::isomorphism;
use crate::pgroup::{format_set, parse_set, symmetrize, GroupDescriptor, GroupKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "hatp3", version, about = "Half-arc-transitive Cayley graphs of order p^3")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Group: g1 (metacyclic) or g2 (Heisenberg).
    #[arg(long)]
    group: GroupKind,
    #[arg(long)]
    p: u32,
}

#[derive(Debug, Args)]
struct SetArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Comma-separated words such as "a,b,a^2*b*c^-1"; inverses are added.
    #[arg(long)]
    set: String,
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// gamma (Γ^{j,k} on G1) or gamma4 (Γ_{4,k} on G2).
    #[arg(long)]
    family: Family,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    j: Option<u32>,
    #[arg(long)]
    k: u32,
    /// Override e (gamma) or lambda (gamma4).
    #[arg(long)]
    unit: Option<u32>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named family graph.
    Family {
        #[command(flatten)]
        params: FamilyArgs,
        /// Also emit the graph in this format.
        #[arg(long)]
        export: Option<String>,
    },
    /// Build Cay(G,S) from connection-set words.
    Build {
        #[command(flatten)]
        set: SetArgs,
        /// Build the Cayley digraph on the given words instead.
        #[arg(long)]
        directed: bool,
    },
    /// Transitivity profile of a Cayley graph or a graph6 file.
    Classify {
        #[arg(long, conflicts_with_all = ["group", "p", "set"])]
        graph6: Option<PathBuf>,
        #[arg(long, requires_all = ["p", "set"])]
        group: Option<GroupKind>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        set: Option<String>,
    },
    /// Decide whether two connection sets give isomorphic Cayley graphs.
    Iso {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        set1: String,
        #[arg(long)]
        set2: String,
    },
    /// Brute-force the congruence systems over Z_p^3.
    Solve {
        #[arg(long)]
        p: u32,
        /// v6, v8_klein or v8_cyclic; all three if omitted.
        #[arg(long)]
        system: Option<EqSystem>,
    },
    /// Exhaustive or family-only census for one group.
    Census {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        valency: usize,
        /// Search the full space instead of normalized connection sets.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        families_only: bool,
        #[arg(long, env = "HATP3_JOBS")]
        jobs: Option<usize>,
        /// Allow candidate spaces above the default size threshold.
        #[arg(long)]
        big: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Re-decide every n-th certified candidate with the graph oracle.
        #[arg(long)]
        cross_check: Option<usize>,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
        /// Write the report here as well as to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the existence and class-count claims at (p, valency).
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        valency: usize,
        #[arg(long)]
        big: bool,
        #[arg(long, env = "HATP3_JOBS")]
        jobs: Option<usize>,
    },
    /// Write a Cayley graph as graph6, DOT or JSON.
    Export {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long = "as", default_value = "graph6")]
        as_format: String,
        #[arg(long)]
        directed: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

type Outcome = Result<(Value, String, bool), Failure>;

fn descriptor(g: &GroupArgs) -> Result<GroupDescriptor, Failure> {
    GroupDescriptor::new(g.group, g.p).map_err(|e| usage(format!("--p: {e}")))
}

fn read_set(desc: &GroupDescriptor, words: &str, flag: &str) -> Result<Vec<crate::pgroup::GroupElement>, Failure> {
    parse_set(desc, words).map_err(|e| usage(format!("{flag}: {e}")))
}

fn undirected(desc: GroupDescriptor, words: &str, flag: &str) -> Result<CayleyGraph, Failure> {
    let set = read_set(&desc, words, flag)?;
    build_graph(desc, &symmetrize(&set)).map_err(|e| usage(format!("{flag}: {e}")))
}

fn graph_summary(g: &CayleyGraph) -> Value {
    json!({
        "group": g.descriptor().kind,
        "p": g.descriptor().p,
        "connection_set": format_set(g.connection_set()),
        "vertices": g.n(),
        "edges": g.graph().edge_count(),
        "valency": g.graph().regular_degree(),
        "directed": g.is_directed(),
        "connected": g.is_connected(),
    })
}

fn family(params: &FamilyArgs, export: Option<&str>) -> Outcome {
    let f = match params.family {
        Family::GammaJk => {
            let j = params.j.ok_or_else(|| usage("--j is required for --family gamma"))?;
            FamilyParams::gamma_jk(params.p, j, params.k, params.unit)
        }
        Family::Gamma4k => FamilyParams::gamma4k(params.p, params.k, params.unit),
    }
    .map_err(|e| usage(format!("--k/--j/--unit: {e}")))?;
    let g = f.graph();
    let mut v = graph_summary(&g);
    v["family"] = json!(f.to_string());
    v["params"] = json!(f);
    v["oriented_set"] = json!(format_set(&f.oriented_set()));
    let mut text = format!(
        "{f}: {} vertices, valency 2*{}\nS = {{{}}}\n",
        g.n(),
        f.oriented_set().len(),
        format_set(g.connection_set()).join(", ")
    );
    if let Some(fmt) = export {
        let fmt: ExportFormat = fmt.parse().map_err(|e| usage(format!("--export: {e}")))?;
        let s = g.export(fmt).map_err(|e| usage(format!("--export: {e}")))?;
        text.push_str(&s);
        if !s.ends_with('\n') {
            text.push('\n');
        }
        v["export"] = json!(s);
    }
    Ok((v, text, true))
}

fn classify(graph6: Option<&PathBuf>, group: Option<GroupKind>, p: Option<u32>, set: Option<&str>) -> Outcome {
    if let Some(path) = graph6 {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("--graph6 {}: {e}", path.display())))?;
        let graph = decode_graph6(&text).map_err(|e| usage(format!("--graph6: {e}")))?;
        let (profile, group) = graph_profile(&graph).map_err(usage)?;
        let v = json!({"profile": profile, "aut_order": group.order().to_string(), "vertices": graph.n()});
        let t = format!(
            "{}, |Aut| = {}, orbits (vertices, edges, arcs) = {:?}\n",
            profile.class,
            group.order(),
            profile.triple()
        );
        return Ok((v, t, true));
    }
    let (Some(kind), Some(p), Some(words)) = (group, p, set) else {
        return Err(usage("classify needs --graph6 FILE or --group, --p and --set"));
    };
    let desc = GroupDescriptor::new(kind, p).map_err(|e| usage(format!("--p: {e}")))?;
    let g = undirected(desc, words, "--set")?;
    let (profile, aut) = graph_profile(g.graph()).map_err(usage)?;
    let mut v = graph_summary(&g);
    v["profile"] = json!(profile);
    v["aut_order"] = json!(aut.order().to_string());
    let mut text = format!(
        "{}, |Aut| = {}, orbits (vertices, edges, arcs) = {:?}\n",
        profile.class,
        aut.order(),
        profile.triple()
    );
    if g.is_connected() {
        let stab = aut_stabilizer(desc, g.connection_set()).map_err(usage)?;
        let cert = certificate_for(desc, stab.base_set.len(), stab.order);
        v["aut_gs_order"] = json!(stab.order);
        v["certificate"] = json!(cert);
        text.push_str(&format!("|Aut(G,S)| = {}, certificate: {:?}\n", stab.order, cert));
        if cert == Certificate::NormalByCertificate {
            let normal = profile_from_stabilizer(&stab);
            v["normal_path_agrees"] = json!(normal == profile);
            if normal != profile {
                return Ok((v, text + "normal path DISAGREES with the graph oracle\n", false));
            }
        }
    }
    Ok((v, text, true))
}

fn iso(group: &GroupArgs, set1: &str, set2: &str) -> Outcome {
    let desc = descriptor(group)?;
    let s = symmetrize(&read_set(&desc, set1, "--set1")?);
    let t = symmetrize(&read_set(&desc, set2, "--set2")?);
    let gs = build_graph(desc, &s).map_err(|e| usage(format!("--set1: {e}")))?;
    let gt = build_graph(desc, &t).map_err(|e| usage(format!("--set2: {e}")))?;
    if s.len() != t.len() {
        return Ok((
            json!({"isomorphic": false, "method": "valency"}),
            "not isomorphic (valencies differ)\n".into(),
            true,
        ));
    }
    if s.len() < 2 * desc.p as usize && desc.generates(&s) && desc.generates(&t) {
        let witness = cayley_isomorphic(desc, &s, &t).map_err(usage)?;
        return Ok(match witness {
            Some(alpha) => {
                let (ia, ib) = (alpha.image_a().to_string(), alpha.image_b().to_string());
                (
                    json!({"isomorphic": true, "method": "group_automorphism", "witness": {"a": ia, "b": ib}}),
                    format!("isomorphic via a -> {ia}, b -> {ib}\n"),
                    true,
                )
            }
            None => (
                json!({"isomorphic": false, "method": "group_automorphism"}),
                "not isomorphic (no automorphism of G maps S to T)\n".into(),
                true,
            ),
        });
    }
    if !gs.is_connected() || !gt.is_connected() {
        return Err(usage("iso needs generating connection sets"));
    }
    let found = isomorphism(gs.graph(), gt.graph()).map_err(usage)?;
    Ok(match found {
        Some(perm) => (
            json!({"isomorphic": true, "method": "graph", "witness": perm}),
            "isomorphic (graph-level search)\n".into(),
            true,
        ),
        None => (
            json!({"isomorphic": false, "method": "graph"}),
            "not isomorphic (graph-level search)\n".into(),
            true,
        ),
    })
}

fn solve(p: u32, system: Option<EqSystem>) -> Outcome {
    let systems: Vec<EqSystem> = system.map_or(EqSystem::ALL.to_vec(), |s| vec![s]);
    let mut sets = vec![];
    let mut text = String::new();
    for s in systems {
        let sol = solve_eqs(p, s).map_err(|e| usage(format!("--p: {e}")))?;
        text.push_str(&format!("{} at p = {}: {} solutions\n", s, p, sol.solutions.len()));
        for (i, j, k) in &sol.solutions {
            text.push_str(&format!("  (i, j, k) = ({i}, {j}, {k})\n"));
        }
        sets.push(sol);
    }
    let v = if sets.len() == 1 { json!(sets[0]) } else { json!(sets) };
    Ok((v, text, true))
}

#[allow(clippy::too_many_arguments)]
fn census(
    group: &GroupArgs,
    valency: usize,
    full: bool,
    families_only: bool,
    jobs: Option<usize>,
    big: bool,
    checkpoint: Option<PathBuf>,
    cross_check: Option<usize>,
    timing: bool,
    out: Option<&PathBuf>,
) -> Outcome {
    let desc = descriptor(group)?;
    let mut spec = CensusSpec::new(desc, valency);
    spec.normalize = !full;
    spec.mode = if families_only {
        CensusMode::FamiliesOnly
    } else {
        CensusMode::Exhaustive
    };
    spec.jobs = jobs;
    spec.big = big;
    spec.checkpoint = checkpoint;
    if cross_check == Some(0) {
        return Err(usage("--cross-check must be at least 1"));
    }
    spec.cross_check_every = cross_check;
    space_size(&spec).map_err(|e| usage(format!("--valency: {e}")))?;
    let mut report = run_census(&spec).map_err(|e| match e {
        CensusError::NeedsBig { .. } => usage(format!("{e}; rerun with --big")),
        e => usage(e),
    })?;
    if !timing {
        report.timing = None;
    }
    let v = json!(report);
    if let Some(path) = out {
        std::fs::write(path, serde_json::to_string_pretty(&v).expect("json") + "\n")
            .map_err(|e| usage(format!("--out {}: {e}", path.display())))?;
    }
    let mut text = format!(
        "{}({}) valency {}: {} candidates, {} half-arc-transitive sets, {} classes (predicted {})\n",
        desc.kind,
        desc.p,
        valency,
        report.candidates,
        report.hat_found.len(),
        report.hat_classes.len(),
        report.verdict.predicted_classes
    );
    let st = report.decision_path_stats;
    text.push_str(&format!(
        "decided by filter {}, certificate {}, oracle {}\n",
        st.filter, st.certificate, st.oracle
    ));
    for c in &report.hat_classes {
        text.push_str(&format!(
            "  {{{}}} |Aut| = {} matches {}\n",
            c.connection_set.join(", "),
            c.aut_order,
            c.matched_family
        ));
    }
    if let Some(t) = &report.timing {
        text.push_str(&format!("{:.2} s\n", t.seconds));
    }
    Ok((v, text, report.verdict.pass))
}

fn verify(p: u32, valency: usize, big: bool, jobs: Option<usize>) -> Outcome {
    if valency != 6 && valency != 8 {
        return Err(usage(format!("--valency: must be 6 or 8, got {valency}")));
    }
    GroupDescriptor::g1(p).map_err(|e| usage(format!("--p: {e}")))?;
    let r = verify_theorem(p, valency, big, jobs).map_err(|e| usage(e.to_string()))?;
    let total: usize = r.reports.iter().map(|x| x.verdict.found_classes).sum();
    let mut text = String::new();
    for c in &r.claims {
        text.push_str(&format!(
            "[{}] {}: {}\n",
            if c.pass { "pass" } else { "FAIL" },
            c.claim,
            c.detail
        ));
    }
    let summary = if total == 0 {
        "no HAT graphs".to_string()
    } else {
        format!("{total} HAT classes")
    };
    text.push_str(&format!(
        "verdict: {} ({summary})\n",
        if r.pass { "pass" } else { "FAIL" }
    ));
    let v = json!({"p": p, "valency": valency, "pass": r.pass, "summary": summary, "claims": r.claims, "reports": r.reports});
    Ok((v, text, r.pass))
}

fn export(set: &SetArgs, as_format: &str, directed: bool, out: Option<&PathBuf>) -> Outcome {
    let desc = descriptor(&set.group)?;
    let fmt: ExportFormat = as_format.parse().map_err(|e| usage(format!("--as: {e}")))?;
    let g = if directed {
        build_digraph(desc, &read_set(&desc, &set.set, "--set")?).map_err(|e| usage(format!("--set: {e}")))?
    } else {
        undirected(desc, &set.set, "--set")?
    };
    let s = g.export(fmt).map_err(|e| usage(format!("--as: {e}")))?;
    if let Some(path) = out {
        std::fs::write(path, &s).map_err(|e| usage(format!("--out {}: {e}", path.display())))?;
    }
    let mut text = s.clone();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok((json!({"format": as_format, "data": s}), text, true))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Family { params, export } => family(&params, export.as_deref()),
        Command::Build { set, directed } => {
            let desc = descriptor(&set.group)?;
            let g = if directed {
                build_digraph(desc, &read_set(&desc, &set.set, "--set")?).map_err(|e| usage(format!("--set: {e}")))?
            } else {
                undirected(desc, &set.set, "--set")?
            };
            let v = graph_summary(&g);
            let text = format!(
                "Cay({}({}), S): {} vertices, {} {}, connected: {}\nS = {{{}}}\n",
                desc.kind,
                desc.p,
                g.n(),
                g.graph().edge_count(),
                if directed { "arcs" } else { "edges" },
                g.is_connected(),
                format_set(g.connection_set()).join(", ")
            );
            Ok((v, text, true))
        }
        Command::Classify { graph6, group, p, set } => classify(graph6.as_ref(), group, p, set.as_deref()),
        Command::Iso { group, set1, set2 } => iso(&group, &set1, &set2),
        Command::Solve { p, system } => solve(p, system),
        Command::Census {
            group,
            valency,
            full,
            families_only,
            jobs,
            big,
            checkpoint,
            cross_check,
            timing,
            out,
        } => census(
            &group,
            valency,
            full,
            families_only,
            jobs,
            big,
            checkpoint,
            cross_check,
            timing,
            out.as_ref(),
        ),
        Command::Verify { p, valency, big, jobs } => verify(p, valency, big, jobs),
        Command::Export {
            set,
            as_format,
            directed,
            out,
        } => export(&set, &as_format, directed, out.as_ref()),
    }
}

/// Parse `args` (including the program name), run the command and write its
/// output to `out` and errors to `err`. Returns the process exit code.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok((value, text, ok)) => {
            let body = match format {
                OutputFormat::Json => serde_json::to_string_pretty(&value).expect("json") + "\n",
                OutputFormat::Text => text,
            };
            let _ = out.write_all(body.as_bytes());
            if ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
