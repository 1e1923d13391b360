//! Command implementations behind the `permsnark` binary. Each command returns
//! its report; the binary prints it and maps `overall` to the exit code.

pub mod sidecar;

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use permsnark::connectivity::{
    cyclic_edge_connectivity, essential_edge_connectivity, even_cut_parity_check, CutBound,
    EvenCutReport,
};
use permsnark::construction::{
    assemble_h, build_block, build_family, canonical_anchor, contract_spokes, discover_gluing,
    gluing_candidate, petersen, Block, Certify, GluingTable, CANDIDATE_COUNT,
    CANONICAL_TABLE_JSON, RETAINED,
};
use permsnark::cover::{
    cdc_route, find_any_cdc, find_cdc_containing, three_edge_coloring, Budget, ReductionRoute,
    SearchStats, Status, VerdictJson,
};
use permsnark::factor::{find_permutation_2factors, verify_permutation_structure};
use permsnark::graph::{emit_dot, emit_graph6, parse_graph6, Highlight};
use permsnark::{Error, Graph, PermutationGraph, Subgraph, TwoFactor};

use sidecar::{Certification, Sidecar};

pub const TOOL_VERSION: &str = concat!("permsnark ", env!("CARGO_PKG_VERSION"));

/// Environment variable read for the worker count when no flag is given.
pub const WORKERS_ENV: &str = "PERMSNARK_WORKERS";

/// Largest cubic order searched without a node budget unless one is given.
pub const UNBUDGETED_ORDER: usize = 34;

/// Node budget applied above [`UNBUDGETED_ORDER`] when none is given.
pub const LARGE_DEFAULT_NODES: u64 = 1_000_000;

pub const CHECK_NAMES: &[&str] = &[
    "cubic",
    "perm2f",
    "snark",
    "lambda_c",
    "cdc_contains",
    "cdc_contains:F",
    "any_cdc",
    "girth",
];

pub fn fixture_version() -> u32 {
    GluingTable::canonical().version
}

pub fn fixture_sha256() -> String {
    sha256_hex(CANONICAL_TABLE_JSON.as_bytes())
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Sizes the global rayon pool from `flag`, else from [`WORKERS_ENV`].
pub fn configure_workers(flag: Option<usize>) -> anyhow::Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var(WORKERS_ENV) {
            Ok(s) => Some(s.trim().parse().with_context(|| format!("{WORKERS_ENV}={s:?}"))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Node budget given on the command line: a count or `unlimited`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetArg {
    Nodes(u64),
    Unlimited,
}

impl FromStr for BudgetArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "unlimited" {
            return Ok(BudgetArg::Unlimited);
        }
        s.parse()
            .map(BudgetArg::Nodes)
            .map_err(|_| format!("expected a node count or \"unlimited\", got {s:?}"))
    }
}

/// Budget for a search on a cubic graph of order `order`.
pub fn resolve_budget(arg: Option<BudgetArg>, order: usize) -> Budget {
    match arg {
        Some(BudgetArg::Nodes(n)) => Budget::nodes(n),
        Some(BudgetArg::Unlimited) => Budget::UNLIMITED,
        None if order <= UNBUDGETED_ORDER => Budget::UNLIMITED,
        None => Budget::nodes(LARGE_DEFAULT_NODES),
    }
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    let mut s = text.to_owned();
    if !s.ends_with('\n') {
        s.push('\n');
    }
    std::fs::write(path, s).with_context(|| format!("writing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    write_text(path, &serde_json::to_string_pretty(value)?)
}

pub fn read_graph6(path: &Path) -> anyhow::Result<(Graph, String)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let line = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .ok_or_else(|| anyhow!("{} is empty", path.display()))?
        .trim()
        .to_owned();
    let g = parse_graph6(&line).with_context(|| format!("parsing {}", path.display()))?;
    Ok((g, line))
}

fn read_sidecar(g6: &Path, explicit: Option<&Path>) -> anyhow::Result<Option<Sidecar>> {
    match explicit {
        Some(p) => Sidecar::read(p).map(Some),
        None => {
            let p = sidecar::default_path(g6);
            if p.exists() {
                Sidecar::read(&p).map(Some)
            } else {
                Ok(None)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputIdentity {
    pub path: String,
    pub graph6: String,
    pub order: usize,
    pub size: usize,
}

impl InputIdentity {
    fn new(path: &Path, graph6: &str, g: &Graph) -> Self {
        Self {
            path: path.display().to_string(),
            graph6: graph6.into(),
            order: g.order(),
            size: g.size(),
        }
    }
}

// ---------------------------------------------------------------- build

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildReport {
    pub tool_version: String,
    pub n: usize,
    pub order: usize,
    pub graph6_path: String,
    pub sidecar_path: String,
    pub certification: Option<Certification>,
    pub overall: bool,
}

/// Writes `H_n` to `out` as graph6 and its sidecar to `out.json`.
pub fn cmd_build(n: usize, out: &Path, certify: Certify) -> anyhow::Result<BuildReport> {
    let requested = serde_json::to_value(certify)?.as_str().unwrap_or_default().to_owned();
    let (h, certification) = match build_family(n, certify) {
        Ok(h) => {
            let cert = (certify != Certify::None).then(|| Certification {
                requested: requested.clone(),
                passed: true,
                error: None,
                levels: h.certificates.clone(),
            });
            (h, cert)
        }
        Err(e @ Error::Certification { .. }) => {
            let h = build_family(n, Certify::None)?;
            let cert = Certification {
                requested,
                passed: false,
                error: Some(e.to_string()),
                levels: Vec::new(),
            };
            (h, Some(cert))
        }
        Err(e) => return Err(e.into()),
    };
    let g6 = emit_graph6(&h.permutation.graph);
    write_text(out, &g6)?;
    let side = Sidecar::from_member(&h, &g6, certification.clone());
    let side_path = sidecar::default_path(out);
    write_json(&side_path, &side)?;
    Ok(BuildReport {
        tool_version: TOOL_VERSION.into(),
        n,
        order: h.permutation.order(),
        graph6_path: out.display().to_string(),
        sidecar_path: side_path.display().to_string(),
        overall: certification.as_ref().is_none_or(|c| c.passed),
        certification,
    })
}

// ---------------------------------------------------------------- verify

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<serde_json::Value>,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<SearchStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_path: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub fixture_version: u32,
    pub fixture_sha256: String,
    pub input: InputIdentity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sidecar: Option<String>,
    pub budget_nodes: Option<u64>,
    pub checks: Vec<CheckReport>,
    pub overall: bool,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub budget: Option<BudgetArg>,
    pub sidecar: Option<PathBuf>,
    /// Report destination; witnesses are written next to it.
    pub json: Option<PathBuf>,
}

/// Splits a comma-separated check list, rejecting unknown names.
pub fn parse_checks(list: &str) -> anyhow::Result<Vec<String>> {
    let checks: Vec<String> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_owned)
        .collect();
    if checks.is_empty() {
        bail!("no checks requested");
    }
    if let Some(bad) = checks.iter().find(|c| !CHECK_NAMES.contains(&c.as_str())) {
        bail!("unknown check {bad:?} (known: {})", CHECK_NAMES.join(", "));
    }
    Ok(checks)
}

struct Outcome {
    report: CheckReport,
    witness: Option<serde_json::Value>,
}

impl Outcome {
    fn plain(check: &str, passed: bool, detail: String) -> Self {
        Self {
            report: CheckReport {
                check: check.into(),
                passed,
                status: None,
                value: None,
                detail,
                stats: None,
                witness_path: None,
            },
            witness: None,
        }
    }
}

struct Subject<'a> {
    g: &'a Graph,
    side: Option<&'a Sidecar>,
    budget: Budget,
}

impl Subject<'_> {
    /// The sidecar factor, or the first permutation 2-factor found by search.
    fn factor(&self) -> anyhow::Result<(TwoFactor, &'static str)> {
        if let Some(s) = self.side {
            return Ok((s.factor(self.g)?, "sidecar"));
        }
        let mut found = find_permutation_2factors(self.g, 1)?;
        match found.pop() {
            Some(f) => Ok((f, "search")),
            None => bail!("graph has no permutation 2-factor"),
        }
    }
}

fn run_check(name: &str, s: &Subject<'_>) -> anyhow::Result<Outcome> {
    let g = s.g;
    Ok(match name {
        "cubic" => Outcome::plain(name, g.is_cubic(), format!("max degree {}", g.max_degree())),
        "girth" => {
            let girth = g.girth();
            let mut o = Outcome::plain(
                name,
                girth.is_some_and(|x| x >= 5),
                girth.map_or("acyclic".into(), |x| format!("girth {x}")),
            );
            o.report.value = Some(serde_json::to_value(girth)?);
            o
        }
        "perm2f" => {
            if !g.is_cubic() {
                return Ok(Outcome::plain(name, false, "graph is not cubic".into()));
            }
            let (f, source) = match s.factor() {
                Ok(x) => x,
                Err(e) => return Ok(Outcome::plain(name, false, e.to_string())),
            };
            let r = verify_permutation_structure(g, &f)?;
            let lens: Vec<usize> = f.circuits().iter().map(Vec::len).collect();
            let mut o = Outcome::plain(
                name,
                r.overall,
                format!("factor from {source}, circuit lengths {lens:?}, {} spokes", f.spokes().len()),
            );
            o.report.value = Some(serde_json::to_value(r)?);
            o
        }
        "snark" => {
            if !g.is_cubic() {
                return Ok(Outcome::plain(name, false, "graph is not cubic".into()));
            }
            let v = three_edge_coloring(g, s.budget)?;
            let j = v.to_json();
            let detail = match v.status() {
                Status::Sat => "3-edge-colorable".into(),
                Status::Unsat => "no proper 3-edge-coloring".into(),
                Status::Indeterminate => "budget exhausted".into(),
            };
            search_outcome(name, v.is_unsat(), detail, j)
        }
        "lambda_c" => match cyclic_edge_connectivity(g, 6) {
            Ok(r) => {
                let detail = match &r.bound {
                    CutBound::Exact { value, .. } => format!("lambda_c = {value}"),
                    CutBound::AtLeast { value } => format!("lambda_c >= {value}"),
                };
                let mut o = Outcome::plain(name, r.bound.value() >= 5, detail);
                o.report.value = Some(serde_json::json!({
                    "value": r.bound.value(),
                    "exact": r.bound.exact().is_some(),
                    "cap": r.cap,
                    "subsets_examined": r.subsets_examined,
                }));
                o.witness = r.bound.witness().map(serde_json::to_value).transpose()?;
                o
            }
            Err(e @ Error::CyclicConnectivityUndefined) => Outcome::plain(name, false, e.to_string()),
            Err(e) => return Err(e.into()),
        },
        "cdc_contains" | "cdc_contains:F" => {
            let (f, source) = match s.factor() {
                Ok(x) => x,
                Err(e) => return Ok(Outcome::plain(name, false, e.to_string())),
            };
            let d = f.edges(g)?;
            let route = cdc_route(g, &d)?;
            let v = find_cdc_containing(g, &d, None, s.budget)?;
            let route = match route {
                ReductionRoute::SpokeContraction => "spoke contraction",
                ReductionRoute::Direct => "direct",
            };
            let detail = format!("factor from {source}, route {route}, {:?}", v.status());
            search_outcome(name, v.is_unsat(), detail, v.to_json())
        }
        "any_cdc" => {
            let v = find_any_cdc(g, s.budget)?;
            let detail = format!("{:?}, {} members", v.status(), v.witness().map_or(0, |w| w.circuit_count()));
            search_outcome(name, v.is_sat(), detail, v.to_json())
        }
        other => bail!("unknown check {other:?}"),
    })
}

fn search_outcome(name: &str, passed: bool, detail: String, j: VerdictJson) -> Outcome {
    let mut o = Outcome::plain(name, passed, detail);
    o.report.status = Some(j.status);
    o.report.stats = Some(SearchStats {
        nodes_expanded: j.nodes_expanded,
        search_space: j.search_space.clone(),
        wall_time_ms: j.wall_time_ms,
    });
    if j.status == Status::Sat {
        o.witness = serde_json::to_value(&j).ok();
    }
    o
}

fn witness_path(report: &Path, check: &str) -> PathBuf {
    let stem = report.file_stem().map_or("report".into(), |s| s.to_string_lossy().into_owned());
    let file = format!("{stem}.{}.witness.json", check.replace(':', "_"));
    report.with_file_name(file)
}

pub fn cmd_verify(path: &Path, checks: &[String], opts: &VerifyOptions) -> anyhow::Result<VerificationReport> {
    let (g, g6) = read_graph6(path)?;
    let side = read_sidecar(path, opts.sidecar.as_deref())?;
    let side_path = side.as_ref().map(|_| {
        opts.sidecar
            .clone()
            .unwrap_or_else(|| sidecar::default_path(path))
            .display()
            .to_string()
    });
    let budget = resolve_budget(opts.budget, g.order());
    let subject = Subject {
        g: &g,
        side: side.as_ref(),
        budget,
    };
    let mut reports = Vec::new();
    for name in checks {
        let mut o = run_check(name, &subject)?;
        if let (Some(w), Some(json)) = (&o.witness, &opts.json) {
            let p = witness_path(json, name);
            write_json(&p, w)?;
            o.report.witness_path = Some(p.display().to_string());
        }
        reports.push(o.report);
    }
    let report = VerificationReport {
        tool_version: TOOL_VERSION.into(),
        fixture_version: fixture_version(),
        fixture_sha256: fixture_sha256(),
        input: InputIdentity::new(path, &g6, &g),
        sidecar: side_path,
        budget_nodes: budget.max_nodes,
        overall: reports.iter().all(|r| r.passed),
        checks: reports,
    };
    if let Some(json) = &opts.json {
        write_json(json, &report)?;
    }
    Ok(report)
}

// ---------------------------------------------------------------- contract

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialSummary {
    pub value: usize,
    pub exact: bool,
    pub cap: usize,
    pub subsets_examined: u64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractReport {
    pub tool_version: String,
    pub fixture_version: u32,
    pub fixture_sha256: String,
    pub input: InputIdentity,
    pub output: String,
    pub order: usize,
    pub size: usize,
    pub essential: EssentialSummary,
    pub even_cuts: EvenCutReport,
    pub ccd: VerdictJson,
    pub overall: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ContractOptions {
    pub ccd_budget: Option<BudgetArg>,
    pub sidecar: Option<PathBuf>,
    /// Destination of the transitioned graph; defaults to `PATH.4reg.json`.
    pub out: Option<PathBuf>,
    pub json: Option<PathBuf>,
}

/// Cap used for essential connectivity and the even-cut census.
pub const CONTRACT_CUT_CAP: usize = 7;

pub fn cmd_contract(path: &Path, opts: &ContractOptions) -> anyhow::Result<ContractReport> {
    let (g, g6) = read_graph6(path)?;
    let side = read_sidecar(path, opts.sidecar.as_deref())?
        .ok_or_else(|| anyhow!("contract needs the sidecar with the permutation 2-factor"))?;
    let pg = side.permutation_graph(&g)?;
    let t = contract_spokes(&pg)?;
    let out = opts.out.clone().unwrap_or_else(|| {
        let mut s = path.as_os_str().to_owned();
        s.push(".4reg.json");
        PathBuf::from(s)
    });
    write_json(&out, &t)?;

    let four = t.graph()?;
    let ess = essential_edge_connectivity(&four, CONTRACT_CUT_CAP)?;
    let essential = EssentialSummary {
        value: ess.bound.value(),
        exact: ess.bound.exact().is_some(),
        cap: ess.cap,
        subsets_examined: ess.subsets_examined,
        passed: ess.bound.value() >= 6,
    };
    let even_cuts = even_cut_parity_check(&t, CONTRACT_CUT_CAP);
    let budget = resolve_budget(opts.ccd_budget, g.order());
    let ccd = permsnark::cover::ccd_search(&t, budget).to_json();
    let report = ContractReport {
        tool_version: TOOL_VERSION.into(),
        fixture_version: fixture_version(),
        fixture_sha256: fixture_sha256(),
        input: InputIdentity::new(path, &g6, &g),
        output: out.display().to_string(),
        order: t.order(),
        size: t.edges().len(),
        overall: essential.passed && even_cuts.all_even && ccd.status == Status::Unsat,
        essential,
        even_cuts,
        ccd,
    };
    if let Some(json) = &opts.json {
        write_json(json, &report)?;
    }
    Ok(report)
}

// ---------------------------------------------------------------- export-dot

/// DOT text for the graph at `path` with the named highlights
/// (`F`, `spokes`, `alpha`).
pub fn cmd_export_dot(path: &Path, highlights: &[String], sidecar: Option<&Path>) -> anyhow::Result<String> {
    let (g, _) = read_graph6(path)?;
    let side = read_sidecar(path, sidecar)?;
    let mut sets: Vec<(String, Subgraph)> = Vec::new();
    for name in highlights {
        let side = side
            .as_ref()
            .ok_or_else(|| anyhow!("highlight {name:?} needs the sidecar"))?;
        let sub = match name.as_str() {
            "F" => side.factor(&g)?.edges(&g)?,
            "spokes" => Subgraph::new(&g, side.factor(&g)?.spokes().iter().copied())?,
            "alpha" => {
                let [a, b] = side.alpha.ok_or_else(|| anyhow!("sidecar records no alpha edge"))?;
                let e = g
                    .edge_between(permsnark::VertexId(a), permsnark::VertexId(b))
                    .ok_or_else(|| anyhow!("alpha ends {a} and {b} are not adjacent"))?;
                Subgraph::new(&g, [e])?
            }
            other => bail!("unknown highlight {other:?} (known: F, spokes, alpha)"),
        };
        sets.push((name.clone(), sub));
    }
    let hs: Vec<Highlight<'_>> = sets
        .iter()
        .map(|(name, edges)| Highlight { name, edges })
        .collect();
    Ok(emit_dot(&g, &hs))
}

// ---------------------------------------------------------------- discover-gluing

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub index: u8,
    pub assembles: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscoveryReport {
    pub tool_version: String,
    pub candidates: Vec<CandidateReport>,
    pub chosen: Option<u8>,
    pub out: String,
    pub sha256: Option<String>,
    pub overall: bool,
}

fn petersen_blocks() -> anyhow::Result<[Block; 4]> {
    let p = petersen();
    let a = canonical_anchor(&p)?;
    Ok([
        build_block(&p, &a, RETAINED[0])?,
        build_block(&p, &a, RETAINED[1])?,
        build_block(&p, &a, RETAINED[2])?,
        build_block(&p, &a, RETAINED[3])?,
    ])
}

/// Structure, non-colorability, cyclic connectivity 5 and non-extendability
/// of `F`; the first failing check is named in the error.
fn certify_assembled(pg: &PermutationGraph) -> anyhow::Result<Result<(), String>> {
    if !pg.verify()?.overall {
        return Ok(Err("perm2f".into()));
    }
    if !three_edge_coloring(&pg.graph, Budget::UNLIMITED)?.is_unsat() {
        return Ok(Err("snark".into()));
    }
    let lc = cyclic_edge_connectivity(&pg.graph, 6)?;
    if lc.bound.exact() != Some(5) {
        return Ok(Err(format!("lambda_c {}", lc.bound.value())));
    }
    let f = pg.factor.edges(&pg.graph)?;
    if !find_cdc_containing(&pg.graph, &f, None, Budget::UNLIMITED)?.is_unsat() {
        return Ok(Err("cdc_contains:F".into()));
    }
    Ok(Ok(()))
}

/// Assembles every skeleton candidate on Petersen blocks and writes the first
/// surviving (and, with `certify`, certified) table to `out`.
pub fn cmd_discover_gluing(out: &Path, certify: bool) -> anyhow::Result<DiscoveryReport> {
    let blocks = petersen_blocks()?;
    let survivors: Vec<u8> = match discover_gluing(&blocks) {
        Ok(s) => s.into_iter().map(|(i, _)| i).collect(),
        Err(Error::Construction(_)) => Vec::new(),
        Err(e) => return Err(e.into()),
    };
    let mut candidates = Vec::new();
    for index in 0..CANDIDATE_COUNT {
        let assembles = survivors.contains(&index);
        let mut c = CandidateReport {
            index,
            assembles,
            certified: None,
            detail: String::new(),
        };
        if assembles && certify {
            let h = assemble_h(&blocks, &gluing_candidate(index))?;
            match certify_assembled(&h.permutation)? {
                Ok(()) => c.certified = Some(true),
                Err(check) => {
                    c.certified = Some(false);
                    c.detail = format!("failed {check}");
                }
            }
        }
        candidates.push(c);
    }
    let chosen = candidates
        .iter()
        .find(|c| c.assembles && c.certified != Some(false))
        .map(|c| c.index);
    let sha256 = match chosen {
        Some(i) => {
            let text = gluing_candidate(i).to_json_pretty();
            write_text(out, &text)?;
            Some(sha256_hex(text.as_bytes()))
        }
        None => None,
    };
    Ok(DiscoveryReport {
        tool_version: TOOL_VERSION.into(),
        candidates,
        chosen,
        out: out.display().to_string(),
        sha256,
        overall: chosen.is_some(),
    })
}
