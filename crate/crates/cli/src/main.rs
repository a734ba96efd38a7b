//! `tg` — build token graphs, find same-neighbour 2-cuts, materialize the
//! flip-map automorphisms they generate, and verify the structural claims
//! about the resulting groups.

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tg_core::cuts::{find_cuts, TupleUniverse};
use tg_core::graph::Graph;
use tg_core::group::DEFAULT_CLOSURE_CAP;
use tg_core::oracle::{brute_force_aut, reduce_generators};
use tg_core::report::{prepare, summarize, ClaimStatus, Pipeline, Summary, CLAIM_IDS, SCHEMA_VERSION};
use tg_core::symmetry::{is_automorphism, phi, psi, AlphaSet, BetaSet, Permutation};
use tg_core::token::{build_token_graph_with_cap, TokenGraph};

/// `println!` that dies quietly when the reader goes away (e.g. `tg ... | head`)
/// instead of panicking, and reports any other write failure.
macro_rules! outln {
    ($($arg:tt)*) => {
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: cannot write output: {e}");
            std::process::exit(1);
        }
    };
}

macro_rules! out {
    ($($arg:tt)*) => {
        if let Err(e) = write!(std::io::stdout(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            eprintln!("error: cannot write output: {e}");
            std::process::exit(1);
        }
    };
}

#[derive(Parser)]
#[command(
    name = "tg",
    version,
    about = "Token graphs, same-neighbour 2-cuts, and the automorphisms they generate"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Ceiling for enumeration (token-graph vertices, group closure, oracle
    /// elements); defaults to $TG_CAP or 1048576
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the k-token graph and print it
    Build(BuildArgs),
    /// List the same-neighbour 2-cuts with components and tuple counts
    Cuts(CutsArgs),
    /// Print one cut's flip map in cycle notation
    Phi(PhiArgs),
    /// Print the all-cuts flip product for a chosen flip set
    Psi(PsiArgs),
    /// Predicted vs materialized order of the generated group
    Order(OrderArgs),
    /// Brute-force the base graph's automorphism group
    Oracle(OracleArgs),
    /// Run the named structural checks
    Verify(VerifyArgs),
    /// Full numeric summary of the cut/flip analysis
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Edgelist,
    Dot,
}

#[derive(Args)]
struct BuildArgs {
    /// Edge-list file (one edge per line, `#` comments)
    file: String,
    /// Tokens per configuration
    #[arg(short)]
    k: usize,
    /// Output format
    #[arg(long, value_enum, default_value = "edgelist")]
    emit: Emit,
}

#[derive(Args)]
struct CutsArgs {
    file: String,
    /// Tokens per configuration; adds per-cut tuple counts when given
    #[arg(short)]
    k: Option<usize>,
}

#[derive(Args)]
struct PhiArgs {
    file: String,
    #[arg(short)]
    k: usize,
    /// Cut index, 1-based in the order `cuts` prints
    #[arg(long)]
    cut: usize,
    /// Flip set: comma-separated tuples with dash-joined entries
    /// (e.g. `0-1,1-0`), or `all` / `none`
    #[arg(long)]
    alpha: String,
}

#[derive(Args)]
struct PsiArgs {
    file: String,
    #[arg(short)]
    k: usize,
    /// Flip set: comma-separated `cut:tuple` items with 1-based cut index
    /// and dash-joined entries (e.g. `1:0-1,2:0-1`; `2:all` takes a whole
    /// cut), or `none`
    #[arg(long)]
    beta: String,
}

#[derive(Args)]
struct OrderArgs {
    file: String,
    #[arg(short)]
    k: usize,
    /// Also brute-force the token graph's full automorphism group
    #[arg(long)]
    compare_oracle: bool,
}

#[derive(Args)]
struct OracleArgs {
    file: String,
}

#[derive(Args)]
struct VerifyArgs {
    file: String,
    #[arg(short)]
    k: usize,
    /// Run only the named claims (repeatable); see `--list` for ids
    #[arg(long = "claim", conflicts_with = "all")]
    claims: Vec<String>,
    /// Run every claim in the registry (the default)
    #[arg(long)]
    all: bool,
    /// List the claim ids and exit
    #[arg(long, conflicts_with_all = ["claims", "all"])]
    list: bool,
}

#[derive(Args)]
struct ReportArgs {
    file: String,
    #[arg(short)]
    k: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = match resolve_cap(cli.cap) {
        Ok(c) => c,
        Err(msg) => return usage_error(&msg),
    };
    let result = match &cli.cmd {
        Cmd::Build(a) => cmd_build(a, cap, cli.json),
        Cmd::Cuts(a) => cmd_cuts(a, cli.json),
        Cmd::Phi(a) => cmd_phi(a, cap, cli.json),
        Cmd::Psi(a) => cmd_psi(a, cap, cli.json),
        Cmd::Order(a) => cmd_order(a, cap, cli.json),
        Cmd::Oracle(a) => cmd_oracle(a, cap, cli.json),
        Cmd::Verify(a) => cmd_verify(a, cap, cli.json),
        Cmd::Report(a) => cmd_report(a, cap, cli.json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => usage_error(&msg),
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn resolve_cap(flag: Option<usize>) -> Result<usize, String> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("TG_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("TG_CAP must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

fn load_graph(path: &str) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    Graph::parse(&text).map_err(|e| format!("{path}: {e}"))
}

fn load_pipeline(path: &str, k: usize, cap: usize) -> Result<Pipeline, String> {
    let g = load_graph(path)?;
    prepare(g, k, cap).map_err(|e| format!("{path}: {e}"))
}

fn cmd_build(a: &BuildArgs, cap: usize, as_json: bool) -> Result<u8, String> {
    let g = load_graph(&a.file)?;
    let tg = build_token_graph_with_cap(&g, a.k, cap).map_err(|e| e.to_string())?;
    if as_json {
        let vertices: Vec<String> = (0..tg.len()).map(|i| tg.label(i)).collect();
        let edges: Vec<(String, String)> = edge_labels(&tg);
        outln!(
            "{}",
            json!({
                "schema": SCHEMA_VERSION,
                "n": g.n(),
                "k": a.k,
                "vertices": vertices,
                "edges": edges,
            })
        );
        return Ok(0);
    }
    match a.emit {
        Emit::Edgelist => {
            outln!("# {}-token graph: {} configurations, {} edges", a.k, tg.len(), tg.edge_count());
            for (u, v) in edge_labels(&tg) {
                outln!("{u} {v}");
            }
        }
        Emit::Dot => {
            outln!("graph tokens {{");
            for i in 0..tg.len() {
                outln!("  \"{}\";", tg.label(i));
            }
            for (u, v) in edge_labels(&tg) {
                outln!("  \"{u}\" -- \"{v}\";");
            }
            outln!("}}");
        }
    }
    Ok(0)
}

fn edge_labels(tg: &TokenGraph) -> Vec<(String, String)> {
    let mut out = Vec::with_capacity(tg.edge_count());
    for i in 0..tg.len() {
        for &j in tg.neighbours(i) {
            if i < j {
                out.push((tg.label(i), tg.label(j)));
            }
        }
    }
    out
}

fn cmd_cuts(a: &CutsArgs, as_json: bool) -> Result<u8, String> {
    let g = load_graph(&a.file)?;
    let fam = find_cuts(&g).map_err(|e| e.to_string())?;
    let uni = match a.k {
        Some(k) => Some(TupleUniverse::new(&fam, k).map_err(|e| e.to_string())?),
        None => None,
    };
    if as_json {
        let cuts: Vec<_> = fam
            .cuts
            .iter()
            .enumerate()
            .map(|(i, c)| {
                json!({
                    "x": g.label(c.x),
                    "y": g.label(c.y),
                    "components": c.components.iter()
                        .map(|comp| comp.iter().map(|&v| g.label(v)).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                    "component_sizes": c.sizes(),
                    "tuple_count": uni.as_ref().map(|u| u.per_cut[i].len()),
                })
            })
            .collect();
        outln!(
            "{}",
            json!({
                "schema": SCHEMA_VERSION,
                "q": fam.len(),
                "k": a.k,
                "cuts": cuts,
                "tuple_total": uni.as_ref().map(|u| u.len()),
            })
        );
        return Ok(0);
    }
    outln!("{} same-neighbour 2-cut(s)", fam.len());
    for (i, c) in fam.cuts.iter().enumerate() {
        let comps: Vec<String> = c
            .components
            .iter()
            .map(|comp| {
                let labels: Vec<&str> = comp.iter().map(|&v| g.label(v)).collect();
                format!("[{}]", labels.join(" "))
            })
            .collect();
        let tuples = uni
            .as_ref()
            .map(|u| format!("  tuples: {}", u.per_cut[i].len()))
            .unwrap_or_default();
        outln!(
            "cut {}: {{{}, {}}}  components: {}{tuples}",
            i + 1,
            g.label(c.x),
            g.label(c.y),
            comps.join(" ")
        );
    }
    if let Some(u) = &uni {
        outln!("total tuple classes at k={}: {}", a.k.unwrap(), u.len());
    }
    Ok(0)
}

/// Parse a dash-joined tuple (`0-1`) into its local index in one cut's
/// tuple list.
fn parse_tuple(uni: &TupleUniverse, cut: usize, text: &str) -> Result<usize, String> {
    let entries: Vec<u32> = text
        .split('-')
        .map(|p| p.trim().parse::<u32>().map_err(|_| bad_tuple(uni, cut, text)))
        .collect::<Result<_, _>>()?;
    uni.per_cut[cut]
        .iter()
        .position(|t| t == &entries)
        .ok_or_else(|| bad_tuple(uni, cut, text))
}

fn bad_tuple(uni: &TupleUniverse, cut: usize, text: &str) -> String {
    let valid: Vec<String> = uni.per_cut[cut].iter().map(|t| tuple_text(t)).collect();
    format!(
        "tuple {text:?} is not a distribution for cut {}; valid: {}",
        cut + 1,
        valid.join(", ")
    )
}

fn tuple_text(t: &[u32]) -> String {
    t.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("-")
}

fn check_cut_index(fam_len: usize, one_based: usize) -> Result<usize, String> {
    if one_based == 0 || one_based > fam_len {
        return Err(format!(
            "cut index {one_based} out of range; this graph has {fam_len} cut(s), numbered from 1"
        ));
    }
    Ok(one_based - 1)
}

fn parse_alpha(uni: &TupleUniverse, cut: usize, text: &str) -> Result<AlphaSet, String> {
    match text.trim() {
        "none" => return Ok(AlphaSet::empty(cut)),
        "all" => {
            return Ok(AlphaSet {
                cut,
                bits: (1u64 << uni.per_cut[cut].len()) - 1,
            })
        }
        _ => {}
    }
    let mut bits = 0u64;
    for item in text.split(',') {
        bits |= 1 << parse_tuple(uni, cut, item)?;
    }
    Ok(AlphaSet { cut, bits })
}

fn parse_beta(uni: &TupleUniverse, fam_len: usize, text: &str) -> Result<BetaSet, String> {
    if text.trim() == "none" {
        return Ok(BetaSet::empty());
    }
    let mut beta = BetaSet::empty();
    for item in text.split(',') {
        let (cut_text, tuple_text) = item
            .split_once(':')
            .ok_or_else(|| format!("flip-set item {item:?} must look like cut:tuple"))?;
        let cut_no: usize = cut_text
            .trim()
            .parse()
            .map_err(|_| format!("bad cut index in {item:?}"))?;
        let cut = check_cut_index(fam_len, cut_no)?;
        if tuple_text.trim() == "all" {
            let block = uni.block(cut);
            for gidx in block {
                beta = beta.union(&BetaSet::singleton(gidx));
            }
        } else {
            let local = parse_tuple(uni, cut, tuple_text)?;
            beta = beta.union(&BetaSet::singleton(uni.block(cut).start + local));
        }
    }
    Ok(beta)
}

fn print_permutation(
    tg: &TokenGraph,
    p: &Permutation,
    headline: &str,
    as_json: bool,
    extra: serde_json::Value,
) {
    let cycles: Vec<Vec<String>> = p
        .cycles()
        .iter()
        .map(|cyc| cyc.iter().map(|&i| tg.label(i)).collect())
        .collect();
    let moved: usize = cycles.iter().map(|c| c.len()).sum();
    if as_json {
        let mut obj = json!({
            "schema": SCHEMA_VERSION,
            "cycles": cycles,
            "moved": moved,
            "configurations": tg.len(),
            "is_automorphism": is_automorphism(p, tg),
        });
        if let (Some(o), Some(e)) = (obj.as_object_mut(), extra.as_object()) {
            for (k, v) in e {
                o.insert(k.clone(), v.clone());
            }
        }
        outln!("{obj}");
        return;
    }
    outln!("{headline}");
    outln!("{}", p.format_cycles(|i| tg.label(i)));
    outln!("moves {moved} of {} configurations", tg.len());
}

fn cmd_phi(a: &PhiArgs, cap: usize, as_json: bool) -> Result<u8, String> {
    let p = load_pipeline(&a.file, a.k, cap)?;
    let cut = check_cut_index(p.fam.len(), a.cut)?;
    let alpha = parse_alpha(&p.uni, cut, &a.alpha)?;
    let perm = phi(&p.tg, &p.fam, &p.uni, &alpha);
    let chosen: Vec<String> = (0..p.uni.per_cut[cut].len())
        .filter(|&t| alpha.contains(t))
        .map(|t| tuple_text(&p.uni.per_cut[cut][t]))
        .collect();
    print_permutation(
        &p.tg,
        &perm,
        &format!(
            "flip map of cut {} over tuple(s) {{{}}}",
            a.cut,
            chosen.join(", ")
        ),
        as_json,
        json!({"cut": a.cut, "alpha": chosen}),
    );
    Ok(0)
}

fn cmd_psi(a: &PsiArgs, cap: usize, as_json: bool) -> Result<u8, String> {
    let p = load_pipeline(&a.file, a.k, cap)?;
    let beta = parse_beta(&p.uni, p.fam.len(), &a.beta)?;
    let perm = psi(&p.tg, &p.fam, &p.uni, &beta);
    let members: Vec<String> = beta
        .members()
        .iter()
        .map(|&gidx| {
            let (cut, entries) = p.uni.tuple(gidx);
            format!("{}:{}", cut + 1, tuple_text(entries))
        })
        .collect();
    print_permutation(
        &p.tg,
        &perm,
        &format!("flip product over {{{}}}", members.join(", ")),
        as_json,
        json!({"beta": members}),
    );
    Ok(0)
}

fn render_summary(s: &Summary) -> String {
    let mut out = String::new();
    let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    out.push_str(&format!(
        "n = {}, k = {}; token graph: {} configurations, {} edges{}\n",
        s.n,
        s.k,
        s.token_vertices,
        s.token_edges,
        if s.half_filling { " (half filling)" } else { "" },
    ));
    out.push_str(&format!("same-neighbour 2-cuts: {}\n", s.q));
    for (i, c) in s.cuts.iter().enumerate() {
        out.push_str(&format!(
            "  cut {}: {{{}, {}}}  component sizes {:?}  tuples {}\n",
            i + 1,
            c.x,
            c.y,
            c.component_sizes,
            c.tuple_count
        ));
    }
    out.push_str(&format!("total tuple classes: {}\n", s.tuple_total));
    out.push_str(&format!("base automorphisms: {}\n", opt(s.aut_order)));
    out.push_str(&format!("x-label stabilizer: {}\n", opt(s.stab_order)));
    out.push_str(&format!(
        "predicted order: {}\n",
        s.predicted.clone().unwrap_or_else(|| "-".into())
    ));
    out.push_str(&format!("closure order: {}\n", opt(s.closure)));
    if let Some(t) = s.token_aut_order {
        out.push_str(&format!("token-graph automorphisms (oracle): {t}\n"));
    }
    out
}

fn cmd_order(a: &OrderArgs, cap: usize, as_json: bool) -> Result<u8, String> {
    let p = load_pipeline(&a.file, a.k, cap)?;
    let s = summarize(&p, a.compare_oracle);
    if as_json {
        outln!("{}", serde_json::to_string(&s).expect("summary serializes"));
    } else {
        out!("{}", render_summary(&s));
        if a.compare_oracle && s.token_aut_order.is_none() {
            outln!("token-graph automorphisms (oracle): unavailable at this size/cap");
        }
    }
    Ok(0)
}

fn cmd_oracle(a: &OracleArgs, cap: usize, as_json: bool) -> Result<u8, String> {
    let g = load_graph(&a.file)?;
    let auts = brute_force_aut(&g, cap).map_err(|e| e.to_string())?;
    let gens = reduce_generators(&auts);
    let gen_text: Vec<String> = gens
        .iter()
        .map(|p| p.format_cycles(|v| g.label(v).to_string()))
        .collect();
    if as_json {
        outln!(
            "{}",
            json!({
                "schema": SCHEMA_VERSION,
                "order": auts.order(),
                "generators": gen_text,
            })
        );
    } else {
        outln!("|Aut| = {}", auts.order());
        outln!("generators:");
        for t in &gen_text {
            outln!("  {t}");
        }
    }
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, cap: usize, as_json: bool) -> Result<u8, String> {
    if a.list {
        for id in CLAIM_IDS {
            outln!("{id}");
        }
        return Ok(0);
    }
    for c in &a.claims {
        if !CLAIM_IDS.contains(&c.as_str()) {
            return Err(format!(
                "unknown claim id {c:?}; valid ids: {}",
                CLAIM_IDS.join(", ")
            ));
        }
    }
    let p = load_pipeline(&a.file, a.k, cap)?;
    let filter = if a.claims.is_empty() { None } else { Some(a.claims.as_slice()) };
    let run = p.run(filter);
    if as_json {
        outln!("{}", serde_json::to_string(&run).expect("report serializes"));
    } else {
        outln!(
            "n = {}, k = {}, cuts = {}{}{}",
            run.n,
            run.k,
            run.q,
            if run.half_filling { ", half filling" } else { "" },
            if run.four_cycle { ", degenerate 4-cycle" } else { "" },
        );
        for c in &run.claims {
            let status = match c.status {
                ClaimStatus::Pass => "pass",
                ClaimStatus::Fail => "FAIL",
                ClaimStatus::Vacuous => "vacuous",
                ClaimStatus::Exempt => "exempt",
                ClaimStatus::Skipped => "skipped",
            };
            outln!("{status:<8} {:<26} {}", c.id, c.detail);
        }
        let count = |s: ClaimStatus| run.claims.iter().filter(|c| c.status == s).count();
        outln!(
            "{} claims: {} pass, {} fail, {} vacuous, {} exempt, {} skipped",
            run.claims.len(),
            count(ClaimStatus::Pass),
            count(ClaimStatus::Fail),
            count(ClaimStatus::Vacuous),
            count(ClaimStatus::Exempt),
            count(ClaimStatus::Skipped),
        );
    }
    Ok(run.exit_code() as u8)
}

fn cmd_report(a: &ReportArgs, cap: usize, as_json: bool) -> Result<u8, String> {
    let p = load_pipeline(&a.file, a.k, cap)?;
    let s = summarize(&p, true);
    if as_json {
        outln!("{}", serde_json::to_string(&s).expect("summary serializes"));
    } else {
        out!("{}", render_summary(&s));
    }
    Ok(0)
}
