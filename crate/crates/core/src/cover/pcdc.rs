use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::strand::{Control, StrandModel};
use super::{Budget, Component, ComponentKind, CoverSolution, Member, SearchStats};
use crate::construction::Block;
use crate::error::Result;

/// A PCDC of a block. Member 0 is `A = A1 ∪ A2 ∪ A3`; every other member is a
/// single circuit or end-to-end path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcdcSolution {
    pub cover: CoverSolution,
    /// `brackets[k]` is the member other than `A` covering pendant edge `e{k+1}`.
    pub brackets: [usize; 6],
}

impl PcdcSolution {
    /// Member index of `[e_k]` for `k` in 1..=6.
    pub fn bracket(&self, k: usize) -> usize {
        self.brackets[k - 1]
    }

    pub fn properties(&self) -> PendantProperties {
        let b = |k| self.bracket(k);
        PendantProperties {
            e2_ne_e3: b(2) != b(3),
            e4_ne_e5: b(4) != b(5),
            e1_apart_from_e2_e3: b(1) != b(2) && b(1) != b(3),
        }
    }
}

/// Bracket relations between the pendant edges of one PCDC.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendantProperties {
    pub e2_ne_e3: bool,
    pub e4_ne_e5: bool,
    pub e1_apart_from_e2_e3: bool,
}

impl PendantProperties {
    /// `[e1] ∉ {[e2],[e3]}` whenever `[e4] ≠ [e5]`.
    pub fn first_holds(&self) -> bool {
        !self.e4_ne_e5 || self.e1_apart_from_e2_e3
    }

    /// `[e2] ≠ [e3]`.
    pub fn second_holds(&self) -> bool {
        self.e2_ne_e3
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcdcEnumeration {
    pub solutions: Vec<PcdcSolution>,
    /// False when the node budget ran out before the space was exhausted.
    pub complete: bool,
    pub stats: SearchStats,
}

/// Enumerates every PCDC of the block's fragment that contains `A` as a
/// member. Edges of `A` need one further covering trail, all others two.
pub fn pcdc_enumerate(b: &Block, budget: Budget) -> Result<PcdcEnumeration> {
    b.validate()?;
    let g = &b.graph;
    let started = Instant::now();
    let mut demand = vec![2u8; g.edge_bound()];
    let a_components: Vec<Component> = b
        .paths
        .iter()
        .map(|p| Component {
            kind: ComponentKind::Path,
            vertices: p.clone(),
            edges: p
                .windows(2)
                .map(|w| g.edge_between(w[0], w[1]).expect("path edge"))
                .collect(),
        })
        .collect();
    for c in &a_components {
        for e in &c.edges {
            demand[e.index()] = 1;
        }
    }
    let a = Member {
        components: a_components,
    };
    let mut solutions = Vec::new();
    let Some(model) = StrandModel::build(g, &demand)? else {
        return Ok(PcdcEnumeration {
            solutions,
            complete: true,
            stats: SearchStats::new(0, "PCDC completions: demands locally infeasible", started),
        });
    };
    let space = format!(
        "all 2^{} strand pairings over demand-2 edges of the block fragment",
        model.choice_count()
    );
    let outcome = model.search(budget, &mut |picked| {
        let mut members = vec![a.clone()];
        members.extend(model.components(picked).into_iter().map(Member::single));
        let brackets = b.pendant_edges.map(|e| {
            (1..members.len())
                .find(|&i| members[i].contains(e))
                .expect("pendant edge covered twice")
        });
        solutions.push(PcdcSolution {
            cover: CoverSolution { members },
            brackets,
        });
        Control::Continue
    });
    Ok(PcdcEnumeration {
        solutions,
        complete: !outcome.budget_exhausted,
        stats: SearchStats::new(outcome.nodes, space, started),
    })
}
