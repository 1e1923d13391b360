use serde::{Deserialize, Serialize};

use super::anchor::canonical_anchor;
use super::block::build_block;
use super::gluing::{assemble_h, Assembly, GluingTable, RETAINED};
use super::petersen;
use crate::connectivity::cyclic_edge_connectivity;
use crate::cover::{find_cdc_containing, three_edge_coloring, Budget};
use crate::error::{Error, Result};
use crate::factor::PermutationGraph;

/// Levels up to this index are certified by search; larger ones by theorem.
pub const DESK_CERTIFY_LIMIT: usize = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Certify {
    #[default]
    None,
    /// Structure, non-colorability and cyclic connectivity 5.
    Fast,
    /// Fast checks plus non-extendability of `F` to a CDC.
    Full,
}

impl std::str::FromStr for Certify {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "none" => Ok(Certify::None),
            "fast" => Ok(Certify::Fast),
            "full" => Ok(Certify::Full),
            _ => Err(format!("unknown certification level {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCertificate {
    pub level: usize,
    pub order: usize,
    /// Empty when the level was certified by theorem.
    pub checks: Vec<CheckOutcome>,
    pub by_theorem: bool,
}

/// `H_n` with the assembly that produced it (absent for `H_0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub n: usize,
    pub permutation: PermutationGraph,
    pub assembly: Option<Assembly>,
    pub certificates: Vec<LevelCertificate>,
}

fn certify_level(level: usize, pg: &PermutationGraph, how: Certify) -> Result<LevelCertificate> {
    let mut checks = Vec::new();
    let mut push = |check: &str, passed: bool, detail: String| -> Result<()> {
        checks.push(CheckOutcome {
            check: check.into(),
            passed,
            detail: detail.clone(),
        });
        if passed {
            Ok(())
        } else {
            Err(Error::Certification {
                level,
                check: format!("{check}: {detail}"),
            })
        }
    };
    let report = pg.verify()?;
    push("perm2f", report.overall, format!("{report:?}"))?;
    let col = three_edge_coloring(&pg.graph, Budget::UNLIMITED)?;
    push(
        "snark",
        col.is_unsat(),
        format!("coloring {:?}, {} nodes", col.status(), col.stats().nodes_expanded),
    )?;
    let lc = cyclic_edge_connectivity(&pg.graph, 6)?;
    push("lambda_c", lc.bound.exact() == Some(5), format!("{:?}", lc.bound.value()))?;
    if how == Certify::Full {
        let f = pg.factor.edges(&pg.graph)?;
        let v = find_cdc_containing(&pg.graph, &f, None, Budget::UNLIMITED)?;
        push(
            "cdc_contains:F",
            v.is_unsat(),
            format!("{:?}, {} nodes", v.status(), v.stats().nodes_expanded),
        )?;
    }
    Ok(LevelCertificate {
        level,
        order: pg.order(),
        checks,
        by_theorem: false,
    })
}

/// `H_0` is the Petersen graph; `H_n` glues blocks of `H_{n-1}` and three
/// Petersen graphs with canonical anchors and the canonical gluing table.
pub fn build_family(n: usize, certify: Certify) -> Result<FamilyMember> {
    let table = GluingTable::canonical();
    let p10 = petersen();
    let p_anchor = canonical_anchor(&p10)?;
    let mut current = p10.clone();
    let mut assembly = None;
    let mut certificates = Vec::new();
    for level in 0..=n {
        if level > 0 {
            let a = canonical_anchor(&current)?;
            let blocks = [
                build_block(&current, &a, RETAINED[0])?,
                build_block(&p10, &p_anchor, RETAINED[1])?,
                build_block(&p10, &p_anchor, RETAINED[2])?,
                build_block(&p10, &p_anchor, RETAINED[3])?,
            ];
            let h = assemble_h(&blocks, &table)?;
            current = h.permutation.clone();
            assembly = Some(h);
        }
        if certify != Certify::None {
            certificates.push(if level <= DESK_CERTIFY_LIMIT {
                certify_level(level, &current, certify)?
            } else {
                LevelCertificate {
                    level,
                    order: current.order(),
                    checks: Vec::new(),
                    by_theorem: true,
                }
            });
        }
    }
    Ok(FamilyMember {
        n,
        permutation: current,
        assembly,
        certificates,
    })
}
