//! JSON sidecar written next to a graph6 file.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use permsnark::construction::{FamilyMember, LevelCertificate, Origin};
use permsnark::factor::{verify_permutation_structure, PermutationGraph, TwoFactor};
use permsnark::{Graph, VertexId};

use crate::{fixture_sha256, fixture_version, TOOL_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub requested: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub levels: Vec<LevelCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub tool_version: String,
    pub fixture_version: u32,
    pub fixture_sha256: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub order: usize,
    pub graph6: String,
    /// The permutation 2-factor as two cyclic vertex sequences.
    pub circuits: Vec<Vec<u32>>,
    pub spokes: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<[u32; 2]>,
    /// Origin of every vertex; empty for the base graph.
    #[serde(default)]
    pub provenance: Vec<Origin>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certification: Option<Certification>,
}

/// Default sidecar location for a graph6 path: the same path with `.json` appended.
pub fn default_path(g6: &Path) -> PathBuf {
    let mut s = g6.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

impl Sidecar {
    pub fn from_member(h: &FamilyMember, graph6: &str, certification: Option<Certification>) -> Self {
        let pg = &h.permutation;
        let g = &pg.graph;
        Self {
            tool_version: TOOL_VERSION.into(),
            fixture_version: fixture_version(),
            fixture_sha256: fixture_sha256(),
            n: Some(h.n),
            order: pg.order(),
            graph6: graph6.into(),
            circuits: pg
                .factor
                .circuits()
                .iter()
                .map(|c| c.iter().map(|v| v.0).collect())
                .collect(),
            spokes: pg
                .factor
                .spokes()
                .iter()
                .map(|&e| g.endpoints(e).map(|v| v.0))
                .collect(),
            alpha: h.assembly.as_ref().map(|a| a.alpha_ends.map(|v| v.0)),
            provenance: h.assembly.as_ref().map(|a| a.origins.clone()).unwrap_or_default(),
            certification,
        }
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing sidecar {}", path.display()))
    }

    /// The recorded 2-factor on `g`, checked against the recorded spokes.
    pub fn factor(&self, g: &Graph) -> anyhow::Result<TwoFactor> {
        let circuits = self
            .circuits
            .iter()
            .map(|c| c.iter().map(|&v| VertexId(v)).collect())
            .collect();
        let f = TwoFactor::new(g, circuits)?;
        let mut recorded: Vec<[u32; 2]> = self.spokes.iter().map(|&[a, b]| [a.min(b), a.max(b)]).collect();
        recorded.sort_unstable();
        let mut derived: Vec<[u32; 2]> = f.spokes().iter().map(|&e| g.endpoints(e).map(|v| v.0)).collect();
        derived.sort_unstable();
        if recorded != derived {
            bail!("sidecar spokes do not match the complement of its circuits");
        }
        Ok(f)
    }

    /// `g` with the recorded factor, after a structural check.
    pub fn permutation_graph(&self, g: &Graph) -> anyhow::Result<PermutationGraph> {
        let f = self.factor(g)?;
        let report = verify_permutation_structure(g, &f)?;
        if !report.overall {
            bail!("sidecar factor is not a permutation 2-factor: {report:?}");
        }
        Ok(PermutationGraph::new(g.clone(), f))
    }
}
