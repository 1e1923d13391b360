use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::ccd::ccd_search_with;
use super::coloring::three_edge_coloring;
use super::strand::{Control, StrandModel};
use super::{
    bfs_edge_order, find_bridge, Budget, Component, ComponentKind, CoverSolution, Member,
    SearchStats, Verdict,
};
use crate::construction::contract_spokes_multigraph;
use crate::error::{Error, Result};
use crate::factor::{PermutationGraph, TwoFactor};
use crate::graph::{EdgeId, Graph, Subgraph, VertexId};

/// Which search decided a CDC-containment question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionRoute {
    /// Spanning two-circuit 2-factor: spokes contracted, CCD searched.
    SpokeContraction,
    /// Demand-based circuit cover search on the cubic graph itself.
    Direct,
}

pub(crate) fn circuit_component(g: &Graph, cycle: &[VertexId]) -> Component {
    let n = cycle.len();
    let edges = (0..n)
        .map(|i| g.edge_between(cycle[i], cycle[(i + 1) % n]).expect("cycle edge"))
        .collect();
    Component {
        kind: ComponentKind::Circuit,
        vertices: cycle.to_vec(),
        edges,
    }
}

fn check_bridgeless_cubic(g: &Graph) -> Result<()> {
    g.check_regular(3)?;
    match find_bridge(g) {
        Some(e) => Err(Error::Bridge(e)),
        None => Ok(()),
    }
}

/// Any circuit double cover.
///
/// If the graph is 3-edge-colorable the three bicolored 2-factors are returned
/// as three even members. Otherwise the demand-2 strand search runs and every
/// circuit is its own member.
pub fn find_any_cdc(g: &Graph, budget: Budget) -> Result<Verdict<CoverSolution>> {
    check_bridgeless_cubic(g)?;
    let started = Instant::now();
    let coloring = three_edge_coloring(g, budget)?;
    let mut nodes = coloring.stats().nodes_expanded;
    if let Some(c) = coloring.witness() {
        let members = (0..3)
            .map(|k| {
                let pair = Subgraph::new(
                    g,
                    c.classes[k]
                        .iter()
                        .chain(&c.classes[(k + 1) % 3])
                        .copied(),
                )
                .expect("edges exist");
                Member {
                    components: pair
                        .circuits(g)
                        .expect("bicolored subgraph is 2-regular")
                        .iter()
                        .map(|cy| circuit_component(g, cy))
                        .collect(),
                }
            })
            .collect();
        let stats = SearchStats::new(nodes, "3-edge-coloring; bicolored 2-factors", started);
        return Ok(Verdict::Sat {
            witness: CoverSolution { members },
            stats,
        });
    }
    if matches!(coloring, Verdict::Indeterminate { .. }) {
        return Ok(Verdict::Indeterminate {
            stats: coloring.stats().clone(),
        });
    }
    let remaining = Budget {
        max_nodes: budget.max_nodes.map(|m| m.saturating_sub(nodes)),
    };
    let demand = vec![2u8; g.edge_bound()];
    let v = strand_cover(g, &demand, remaining, None, &[], started, "circuit double covers")?;
    nodes += v.stats().nodes_expanded;
    Ok(with_nodes(v, nodes))
}

fn with_nodes<W>(v: Verdict<W>, nodes: u64) -> Verdict<W> {
    let fix = |mut s: SearchStats| {
        s.nodes_expanded = nodes;
        s
    };
    match v {
        Verdict::Sat { witness, stats } => Verdict::Sat {
            witness,
            stats: fix(stats),
        },
        Verdict::Unsat { stats } => Verdict::Unsat { stats: fix(stats) },
        Verdict::Indeterminate { stats } => Verdict::Indeterminate { stats: fix(stats) },
    }
}

/// Runs the strand search for the given demands. `fixed` circuits are
/// prepended to the witness as members of their own.
fn strand_cover(
    g: &Graph,
    demand: &[u8],
    budget: Budget,
    k_max: Option<usize>,
    fixed: &[Vec<VertexId>],
    started: Instant,
    what: &str,
) -> Result<Verdict<CoverSolution>> {
    let Some(model) = StrandModel::build(g, demand)? else {
        let stats = SearchStats::new(0, format!("{what}: demands locally infeasible"), started);
        return Ok(Verdict::Unsat { stats });
    };
    let space = format!(
        "{what}: 2^{} strand pairings over demand-2 edges in BFS order",
        model.choice_count()
    );
    let mut found = None;
    let outcome = model.search(budget, &mut |picked| {
        let comps = model.components(picked);
        if k_max.is_some_and(|k| comps.len() + fixed.len() > k) {
            return Control::Continue;
        }
        found = Some(comps);
        Control::Stop
    });
    let stats = SearchStats::new(outcome.nodes, space, started);
    Ok(match found {
        Some(comps) => {
            let mut members: Vec<Member> = fixed
                .iter()
                .map(|c| Member::single(circuit_component(g, c)))
                .collect();
            members.extend(comps.into_iter().map(Member::single));
            Verdict::Sat {
                witness: CoverSolution { members },
                stats,
            }
        }
        None if outcome.budget_exhausted => Verdict::Indeterminate { stats },
        None => Verdict::Unsat { stats },
    })
}

fn validate_containment_input(g: &Graph, d: &Subgraph) -> Result<Vec<Vec<VertexId>>> {
    check_bridgeless_cubic(g)?;
    if !d.is_two_regular(g) {
        return Err(Error::NotTwoRegular(format!(
            "prescribed subgraph with {} edges",
            d.len()
        )));
    }
    d.circuits(g)
}

/// The route [`find_cdc_containing`] takes for `d`: spoke contraction when `d`
/// is a spanning 2-factor of exactly two circuits whose complementary edges
/// all join the two circuits, the direct search otherwise.
pub fn cdc_route(g: &Graph, d: &Subgraph) -> Result<ReductionRoute> {
    let circuits = validate_containment_input(g, d)?;
    if circuits.len() != 2 || d.vertices(g).len() != g.order() {
        return Ok(ReductionRoute::Direct);
    }
    let f = TwoFactor::new(g, circuits)?;
    let crossing = f.spokes().iter().all(|&e| {
        let [a, b] = g.endpoints(e);
        f.circuit_of(a) != f.circuit_of(b)
    });
    Ok(if crossing {
        ReductionRoute::SpokeContraction
    } else {
        ReductionRoute::Direct
    })
}

/// Searches for a CDC in which every circuit of `d` is a member, with at most
/// `k_max` circuit members when given.
pub fn find_cdc_containing(
    g: &Graph,
    d: &Subgraph,
    k_max: Option<usize>,
    budget: Budget,
) -> Result<Verdict<CoverSolution>> {
    match cdc_route(g, d)? {
        ReductionRoute::SpokeContraction => {
            let f = TwoFactor::from_subgraph(g, d)?;
            find_cdc_via_ccd(g, &f, k_max, budget)
        }
        ReductionRoute::Direct => find_cdc_containing_direct(g, d, k_max, budget),
    }
}

/// Direct demand search: edges of `d` need one more covering circuit, all
/// others two. Valid for every 2-regular `d`, including spanning ones.
pub fn find_cdc_containing_direct(
    g: &Graph,
    d: &Subgraph,
    k_max: Option<usize>,
    budget: Budget,
) -> Result<Verdict<CoverSolution>> {
    let circuits = validate_containment_input(g, d)?;
    let started = Instant::now();
    let mut demand = vec![2u8; g.edge_bound()];
    for &e in d.edges() {
        demand[e.index()] = 1;
    }
    strand_cover(
        g,
        &demand,
        budget,
        k_max,
        &circuits,
        started,
        "circuit covers completing a prescribed 2-regular subgraph",
    )
}

/// CDCs containing both circuits of a permutation-style 2-factor, decided on
/// the spoke-contracted 4-regular graph: a compatible cycle decomposition
/// there lifts to the missing circuits (each contracted vertex re-expands to
/// its spoke) and vice versa.
pub fn find_cdc_via_ccd(
    g: &Graph,
    f: &TwoFactor,
    k_max: Option<usize>,
    budget: Budget,
) -> Result<Verdict<CoverSolution>> {
    if f.circuits().len() != 2 {
        return Err(Error::Precondition("reduction needs a two-circuit 2-factor".into()));
    }
    let pg = PermutationGraph::new(g.clone(), f.clone());
    let t = contract_spokes_multigraph(&pg)?;
    let prov = t.provenance().expect("contraction records provenance").clone();
    let accept = |s: &super::CcdSolution| k_max.is_none_or(|k| s.circuits.len() + 2 <= k);
    let verdict = ccd_search_with(&t, budget, &accept);
    Ok(verdict.map(|sol| {
        let mut members: Vec<Member> = f
            .circuits()
            .iter()
            .map(|c| Member::single(circuit_component(g, c)))
            .collect();
        for c in &sol.circuits {
            let mut edges: Vec<EdgeId> = c.edges.iter().map(|&e| prov.edge_source[e]).collect();
            edges.extend(c.vertices.iter().map(|&v| prov.vertex_spoke[v as usize]));
            let sub = Subgraph::new(g, edges).expect("lifted edges exist");
            let cycles = sub.circuits(g).expect("lift of a circuit is a circuit");
            debug_assert_eq!(cycles.len(), 1);
            members.push(Member::single(circuit_component(g, &cycles[0])));
        }
        CoverSolution { members }
    }))
}

/// Searches for a CDC with at most four even members, one of which is `d`
/// itself. Requires a 3-edge-colorable cubic graph.
pub fn lemma_2_3_check(g: &Graph, d: &Subgraph, budget: Budget) -> Result<Verdict<CoverSolution>> {
    g.check_regular(3)?;
    if !d.is_two_regular(g) {
        return Err(Error::NotTwoRegular(format!("{} edges", d.len())));
    }
    if !three_edge_coloring(g, Budget::UNLIMITED)?.is_sat() {
        return Err(Error::Precondition("graph is not 3-edge-colorable".into()));
    }
    let started = Instant::now();
    let order = bfs_edge_order(g, |_| true);
    // member masks: bit 0 is D
    const ON_D: [u8; 3] = [0b0011, 0b0101, 0b1001];
    const OFF_D: [u8; 3] = [0b0110, 0b1010, 0b1100];

    struct S<'a> {
        g: &'a Graph,
        d: &'a Subgraph,
        order: &'a [EdgeId],
        mask: Vec<u8>,
        parity: Vec<u8>,
        filled: Vec<u8>,
        nodes: u64,
        budget: Budget,
        aborted: bool,
    }
    impl S<'_> {
        fn distinct_members(&self) -> bool {
            let sets: Vec<Vec<EdgeId>> = (0..4)
                .map(|k| {
                    self.order
                        .iter()
                        .copied()
                        .filter(|e| self.mask[e.index()] & (1 << k) != 0)
                        .collect::<Vec<_>>()
                })
                .filter(|s| !s.is_empty())
                .map(|mut s| {
                    s.sort_unstable();
                    s
                })
                .collect();
            (0..sets.len()).all(|i| (i + 1..sets.len()).all(|j| sets[i] != sets[j]))
        }

        fn run(&mut self, i: usize) -> bool {
            if i == self.order.len() {
                return self.distinct_members();
            }
            let e = self.order[i];
            let options = if self.d.contains(e) { ON_D } else { OFF_D };
            let [a, b] = self.g.endpoints(e);
            for m in options {
                self.nodes += 1;
                if self.budget.exceeded(self.nodes) {
                    self.aborted = true;
                    return false;
                }
                let ok = [a, b].iter().all(|v| {
                    self.filled[v.index()] < 2 || (self.parity[v.index()] ^ m) == 0
                });
                if !ok {
                    continue;
                }
                self.mask[e.index()] = m;
                for v in [a, b] {
                    self.parity[v.index()] ^= m;
                    self.filled[v.index()] += 1;
                }
                if self.run(i + 1) {
                    return true;
                }
                for v in [a, b] {
                    self.parity[v.index()] ^= m;
                    self.filled[v.index()] -= 1;
                }
                self.mask[e.index()] = 0;
                if self.aborted {
                    return false;
                }
            }
            false
        }
    }

    let mut s = S {
        g,
        d,
        order: &order,
        mask: vec![0; g.edge_bound()],
        parity: vec![0; g.vertex_bound()],
        filled: vec![0; g.vertex_bound()],
        nodes: 0,
        budget,
        aborted: false,
    };
    let found = s.run(0);
    let stats = SearchStats::new(
        s.nodes,
        format!(
            "assignments of two of four even members per edge (member 0 = D) over {} edges",
            g.size()
        ),
        started,
    );
    if !found {
        return Ok(if s.aborted {
            Verdict::Indeterminate { stats }
        } else {
            Verdict::Unsat { stats }
        });
    }
    let mut members = Vec::new();
    for k in 0..4 {
        let edges: Vec<EdgeId> = g
            .edge_ids()
            .filter(|e| s.mask[e.index()] & (1 << k) != 0)
            .collect();
        if edges.is_empty() {
            continue;
        }
        let sub = Subgraph::new(g, edges)?;
        let comps = sub
            .circuits(g)?
            .iter()
            .map(|c| circuit_component(g, c))
            .collect();
        members.push(Member { components: comps });
    }
    Ok(Verdict::Sat {
        witness: CoverSolution { members },
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::petersen;

    fn prism() -> Graph {
        Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    fn triangle(g: &Graph, vs: [u32; 3]) -> Subgraph {
        Subgraph::from_cycle(g, &vs.map(VertexId)).unwrap()
    }

    #[test]
    fn prism_one_triangle_extends() {
        let g = prism();
        let d = triangle(&g, [0, 1, 2]);
        assert_eq!(cdc_route(&g, &d).unwrap(), ReductionRoute::Direct);
        let v = find_cdc_containing(&g, &d, None, Budget::UNLIMITED).unwrap();
        let w = v.witness().expect("SAT");
        w.validate(&g).unwrap();
        assert_eq!(w.members[0].edges(), d.edges());
    }

    #[test]
    fn non_two_regular_rejected() {
        let g = prism();
        let d = Subgraph::new(&g, [EdgeId(0)]).unwrap();
        assert!(matches!(
            find_cdc_containing(&g, &d, None, Budget::UNLIMITED),
            Err(Error::NotTwoRegular(_))
        ));
    }

    #[test]
    fn bridge_detected() {
        // two K4s, each with edge 0-1 subdivided, joined at the subdivision vertices
        let mut edges = Vec::new();
        for o in [0, 5] {
            edges.extend([(o, o + 2), (o, o + 3), (o + 1, o + 2), (o + 1, o + 3), (o + 2, o + 3)]);
            edges.extend([(o, o + 4), (o + 1, o + 4)]);
        }
        edges.push((4, 9));
        let g = Graph::from_edges(10, &edges).unwrap();
        assert!(g.is_cubic());
        assert!(matches!(find_any_cdc(&g, Budget::UNLIMITED), Err(Error::Bridge(_))));
    }

    #[test]
    fn petersen_any_cdc_is_valid() {
        let p = petersen();
        let v = find_any_cdc(&p.graph, Budget::UNLIMITED).unwrap();
        v.witness().expect("SAT").validate(&p.graph).unwrap();
    }

    #[test]
    fn member_bound_respected() {
        let g = prism();
        let d = triangle(&g, [0, 1, 2]);
        let v = find_cdc_containing(&g, &d, Some(4), Budget::UNLIMITED).unwrap();
        if let Some(w) = v.witness() {
            assert!(w.circuit_count() <= 4);
        }
        let none = find_cdc_containing(&g, &d, Some(1), Budget::UNLIMITED).unwrap();
        assert!(none.is_unsat());
    }
}
