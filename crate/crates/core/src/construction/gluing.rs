use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::block::{Block, Retained};
use crate::error::{Error, Result};
use crate::factor::{verify_permutation_structure, PermutationGraph, TwoFactor};
use crate::graph::{EdgeId, Graph, Subgraph, VertexId};

/// Pendant edge `e{label}` of block `block` (both 1-based). Serialized as
/// `[block, "e{label}"]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(u8, String)", into = "(u8, String)")]
pub struct PendantRef {
    pub block: u8,
    pub label: u8,
}

impl PendantRef {
    pub const fn new(block: u8, label: u8) -> Self {
        Self { block, label }
    }
}

impl TryFrom<(u8, String)> for PendantRef {
    type Error = String;

    fn try_from((block, label): (u8, String)) -> std::result::Result<Self, String> {
        let k = label
            .strip_prefix('e')
            .and_then(|d| d.parse::<u8>().ok())
            .filter(|k| (1..=6).contains(k))
            .ok_or_else(|| format!("bad pendant label {label:?}"))?;
        if !(1..=4).contains(&block) {
            return Err(format!("block index {block} out of range 1..=4"));
        }
        Ok(Self { block, label: k })
    }
}

impl From<PendantRef> for (u8, String) {
    fn from(r: PendantRef) -> Self {
        (r.block, format!("e{}", r.label))
    }
}

/// Which pendant edges of four blocks merge, and which retained end-edges
/// meet at the two ends of `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GluingTable {
    pub version: u32,
    pub pairs: Vec<[PendantRef; 2]>,
    pub alpha_groups: [[PendantRef; 2]; 2],
}

pub const CANONICAL_TABLE_JSON: &str = include_str!("../../fixtures/gluing_table_v1.json");

/// Number of orientation choices over the four two-edge connections.
pub const CANDIDATE_COUNT: u8 = 16;

const fn r(block: u8, label: u8) -> PendantRef {
    PendantRef::new(block, label)
}

// {a, b} <-> {c, d}
const DOUBLES: [[PendantRef; 4]; 4] = [
    [r(1, 1), r(1, 3), r(4, 4), r(4, 5)],
    [r(4, 1), r(4, 2), r(3, 4), r(3, 5)],
    [r(3, 1), r(3, 3), r(2, 4), r(2, 5)],
    [r(2, 1), r(2, 2), r(1, 4), r(1, 5)],
];
const SINGLES: [[PendantRef; 2]; 2] = [[r(1, 6), r(3, 6)], [r(2, 6), r(4, 6)]];
const ALPHA_GROUPS: [[PendantRef; 2]; 2] = [[r(1, 2), r(3, 2)], [r(2, 3), r(4, 3)]];
/// Retained end-edge of each block, in block order.
pub const RETAINED: [Retained; 4] = [Retained::E2, Retained::E3, Retained::E2, Retained::E3];

/// Candidate `index` in `0..16`: bit `k` set crosses the `k`-th two-edge
/// connection (`a-d, b-c` instead of `a-c, b-d`).
pub fn gluing_candidate(index: u8) -> GluingTable {
    assert!(index < CANDIDATE_COUNT, "candidate index out of range");
    let mut pairs = Vec::new();
    for (k, [a, b, c, d]) in DOUBLES.into_iter().enumerate() {
        if index & (1 << k) == 0 {
            pairs.push([a, c]);
            pairs.push([b, d]);
        } else {
            pairs.push([a, d]);
            pairs.push([b, c]);
        }
    }
    pairs.extend(SINGLES);
    GluingTable {
        version: 1,
        pairs,
        alpha_groups: ALPHA_GROUPS,
    }
}

impl GluingTable {
    pub fn canonical() -> Self {
        Self::from_json(CANONICAL_TABLE_JSON).expect("bundled fixture parses")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let t: Self = serde_json::from_str(s).map_err(|e| Error::Fixture(e.to_string()))?;
        t.check_labels(&RETAINED)?;
        Ok(t)
    }

    pub fn to_json_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Index of this table among the skeleton candidates, if it is one.
    pub fn candidate_index(&self) -> Option<u8> {
        (0..CANDIDATE_COUNT).find(|&c| {
            let t = gluing_candidate(c);
            t.pairs == self.pairs && t.alpha_groups == self.alpha_groups
        })
    }

    /// Every non-retained label appears in exactly one pair, every retained
    /// label in exactly one alpha group.
    fn check_labels(&self, retained: &[Retained; 4]) -> Result<()> {
        let mut count = [[0u8; 6]; 4];
        let mut in_alpha = [[false; 6]; 4];
        for p in self.pairs.iter().flatten() {
            count[p.block as usize - 1][p.label as usize - 1] += 1;
        }
        for p in self.alpha_groups.iter().flatten() {
            count[p.block as usize - 1][p.label as usize - 1] += 1;
            in_alpha[p.block as usize - 1][p.label as usize - 1] = true;
        }
        for (i, ret) in retained.iter().enumerate() {
            for k in 0..6 {
                let is_ret = k + 1 == ret.label() as usize;
                if count[i][k] != 1 || in_alpha[i][k] != is_ret {
                    return Err(Error::Fixture(format!(
                        "label e{} of block {} is used {} times (retained: {is_ret})",
                        k + 1,
                        i + 1,
                        count[i][k]
                    )));
                }
            }
        }
        for [a, b] in &self.pairs {
            if a.block == b.block {
                return Err(Error::Fixture(format!("pair joins block {} to itself", a.block)));
            }
        }
        Ok(())
    }
}

/// Where a vertex of an assembled graph came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Interior vertex of block `block` (1-based), copied from `source` of its host.
    Block { block: u8, source: VertexId },
    /// Identified pendant ends of alpha group `group` (0 or 1).
    AlphaEnd { group: u8 },
}

/// Result of gluing four blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assembly {
    /// The glued graph with `F`; circuit 0 of `F` holds the first alpha end.
    pub permutation: PermutationGraph,
    pub alpha: EdgeId,
    pub alpha_ends: [VertexId; 2],
    pub origins: Vec<Origin>,
    pub table: GluingTable,
}

/// Glues four blocks along `t`.
pub fn assemble_h(blocks: &[Block; 4], t: &GluingTable) -> Result<Assembly> {
    let retained = [0, 1, 2, 3].map(|i| blocks[i].retained);
    t.check_labels(&retained)
        .map_err(|e| Error::Assembly(e.to_string()))?;
    for (i, b) in blocks.iter().enumerate() {
        b.validate().map_err(|e| Error::Assembly(format!("block {}: {e}", i + 1)))?;
    }

    let mut h = Graph::new();
    let mut origins = Vec::new();
    let mut vmap: Vec<Vec<Option<VertexId>>> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let mut m = vec![None; b.graph.vertex_bound()];
        for v in b.graph.vertices().filter(|&v| !b.graph.is_pendant(v)) {
            let label = b.graph.vertex_label(v).map_or_else(|| v.0.to_string(), str::to_owned);
            m[v.index()] = Some(h.add_labeled_vertex(format!("{}:{label}", i + 1)));
            origins.push(Origin::Block {
                block: i as u8 + 1,
                source: b.source_vertex[v.index()].expect("interior vertex has a source"),
            });
        }
        vmap.push(m);
    }
    let v = h.add_labeled_vertex("v");
    let w = h.add_labeled_vertex("w");
    origins.push(Origin::AlphaEnd { group: 0 });
    origins.push(Origin::AlphaEnd { group: 1 });

    let glue_err = |e: Error| Error::Assembly(format!("gluing is not simple: {e}"));
    let mut emap: Vec<Vec<Option<EdgeId>>> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let mut m = vec![None; b.graph.edge_bound()];
        for (e, [a, c]) in b.graph.edges() {
            if let (Some(na), Some(nc)) = (vmap[i][a.index()], vmap[i][c.index()]) {
                let label = b.graph.edge_label(e).map_or_else(|| e.0.to_string(), str::to_owned);
                m[e.index()] = Some(h.add_labeled_edge(na, nc, format!("{}:{label}", i + 1)).map_err(glue_err)?);
            }
        }
        emap.push(m);
    }
    let attach = |p: PendantRef| {
        let b = &blocks[p.block as usize - 1];
        vmap[p.block as usize - 1][b.attachment(p.label).index()].expect("interior")
    };
    let image = |p: PendantRef, e: EdgeId, emap: &mut Vec<Vec<Option<EdgeId>>>| {
        let b = &blocks[p.block as usize - 1];
        emap[p.block as usize - 1][b.pendant_edge(p.label).index()] = Some(e);
    };
    for &[a, b] in &t.pairs {
        let label = format!("{}.e{}~{}.e{}", a.block, a.label, b.block, b.label);
        let e = h.add_labeled_edge(attach(a), attach(b), label).map_err(glue_err)?;
        image(a, e, &mut emap);
        image(b, e, &mut emap);
    }
    for (g, group) in t.alpha_groups.iter().enumerate() {
        let end = [v, w][g];
        for &p in group {
            let e = h
                .add_labeled_edge(attach(p), end, format!("{}.e{}", p.block, p.label))
                .map_err(glue_err)?;
            image(p, e, &mut emap);
        }
    }
    let alpha = h.add_labeled_edge(v, w, "alpha").map_err(glue_err)?;

    let mut f_edges = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        for sub in b.path_subgraphs()? {
            f_edges.extend(sub.edges().iter().map(|e| emap[i][e.index()].expect("mapped")));
        }
    }
    let f_sub = Subgraph::new(&h, f_edges)?;
    if f_sub.contains(alpha) {
        return Err(Error::Assembly("alpha lies on F".into()));
    }
    let mut circuits = f_sub
        .circuits(&h)
        .map_err(|_| Error::Assembly("path images do not form a 2-factor".into()))?;
    if circuits.len() != 2 {
        return Err(Error::Assembly(format!("F has {} circuits", circuits.len())));
    }
    if !circuits[0].contains(&v) {
        circuits.swap(0, 1);
    }
    if circuits[0].contains(&w) {
        return Err(Error::Assembly("both alpha ends lie on one F-circuit".into()));
    }
    let factor = TwoFactor::new(&h, circuits)?;
    let report = verify_permutation_structure(&h, &factor)?;
    if !report.overall {
        return Err(Error::Assembly(format!("F is not a permutation 2-factor: {report:?}")));
    }
    Ok(Assembly {
        permutation: PermutationGraph::new(h, factor),
        alpha,
        alpha_ends: [v, w],
        origins,
        table: t.clone(),
    })
}

/// All skeleton candidates whose assembly succeeds with a permutation
/// 2-factor that splits the alpha ends, in candidate order.
pub fn discover_gluing(blocks: &[Block; 4]) -> Result<Vec<(u8, GluingTable)>> {
    let survivors: Vec<(u8, GluingTable)> = (0..CANDIDATE_COUNT)
        .into_par_iter()
        .filter_map(|c| {
            let t = gluing_candidate(c);
            assemble_h(blocks, &t).ok().map(|_| (c, t))
        })
        .collect();
    if survivors.is_empty() {
        return Err(Error::Construction("no gluing candidate survives".into()));
    }
    Ok(survivors)
}
