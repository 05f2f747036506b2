//! Positive dependency graph, strongly connected components, and the
//! external/internal split of a component's defining rules.

use std::collections::{BTreeMap, BTreeSet};

use crate::program::{AtomId, Program};

/// Edge `(b, a)` records that some rule with head `a` has `b` in its
/// positive body. Choice, cardinality and weight rules contribute edges
/// from every positive body atom to every head atom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepGraph {
    pub vertices: Vec<AtomId>,
    pub edges: BTreeSet<(AtomId, AtomId)>,
}

pub fn build_depgraph(p: &Program) -> DepGraph {
    let vertices: Vec<AtomId> = p.herbrand_base().into_iter().collect();
    let mut edges = BTreeSet::new();
    for rule in &p.rules {
        for &b in &rule.pos_body {
            for &a in &rule.heads {
                edges.insert((b, a));
            }
        }
    }
    DepGraph { vertices, edges }
}

/// SCC decomposition of a [`DepGraph`]. Component indices follow the
/// order Tarjan's algorithm finishes them (every component appears before
/// any component that can reach it), which is deterministic for a fixed
/// vertex order. `width` is the number of bits needed to rank the atoms
/// of a nontrivial component: ceil(log2(|S| + 1)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccInfo {
    pub components: Vec<Vec<AtomId>>,
    pub component_of: BTreeMap<AtomId, usize>,
    pub nontrivial: Vec<bool>,
    pub widths: Vec<u32>,
}

impl SccInfo {
    pub fn component_index(&self, atom: AtomId) -> Option<usize> {
        self.component_of.get(&atom).copied()
    }

    pub fn same_component(&self, a: AtomId, b: AtomId) -> bool {
        match (self.component_of.get(&a), self.component_of.get(&b)) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    pub fn is_nontrivial_atom(&self, atom: AtomId) -> bool {
        self.component_index(atom).map(|i| self.nontrivial[i]).unwrap_or(false)
    }

    /// Ranking-vector width for the atom's component.
    pub fn width_of(&self, atom: AtomId) -> Option<u32> {
        self.component_index(atom).map(|i| self.widths[i])
    }

    /// One component per line, sorted ids, for debugging.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for comp in &self.components {
            let ids: Vec<String> = comp.iter().map(u32::to_string).collect();
            out.push_str(&ids.join(" "));
            out.push('\n');
        }
        out
    }
}

fn ceil_log2(n: u64) -> u32 {
    debug_assert!(n >= 1);
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

pub fn compute_sccs(g: &DepGraph) -> SccInfo {
    let mut out_edges: BTreeMap<AtomId, Vec<AtomId>> = BTreeMap::new();
    for &(b, a) in &g.edges {
        out_edges.entry(b).or_default().push(a);
    }

    // Iterative Tarjan, vertices visited in ascending order.
    let mut index: BTreeMap<AtomId, usize> = BTreeMap::new();
    let mut lowlink: BTreeMap<AtomId, usize> = BTreeMap::new();
    let mut on_stack: BTreeSet<AtomId> = BTreeSet::new();
    let mut stack: Vec<AtomId> = Vec::new();
    let mut counter = 0usize;
    let mut components: Vec<Vec<AtomId>> = Vec::new();
    let empty: Vec<AtomId> = Vec::new();

    for &root in &g.vertices {
        if index.contains_key(&root) {
            continue;
        }
        let mut frames: Vec<(AtomId, usize)> = vec![(root, 0)];
        index.insert(root, counter);
        lowlink.insert(root, counter);
        counter += 1;
        stack.push(root);
        on_stack.insert(root);

        while let Some(&mut (v, ref mut next)) = frames.last_mut() {
            let succ = out_edges.get(&v).unwrap_or(&empty);
            if *next < succ.len() {
                let w = succ[*next];
                *next += 1;
                if let Some(&wi) = index.get(&w) {
                    if on_stack.contains(&w) {
                        let low = lowlink[&v].min(wi);
                        lowlink.insert(v, low);
                    }
                } else {
                    index.insert(w, counter);
                    lowlink.insert(w, counter);
                    counter += 1;
                    stack.push(w);
                    on_stack.insert(w);
                    frames.push((w, 0));
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    let low = lowlink[&parent].min(lowlink[&v]);
                    lowlink.insert(parent, low);
                }
                if lowlink[&v] == index[&v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack.remove(&w);
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    components.push(comp);
                }
            }
        }
    }

    let mut component_of = BTreeMap::new();
    for (i, comp) in components.iter().enumerate() {
        for &a in comp {
            component_of.insert(a, i);
        }
    }
    let nontrivial: Vec<bool> = components.iter().map(|c| c.len() > 1).collect();
    let widths: Vec<u32> = components.iter().map(|c| ceil_log2(c.len() as u64 + 1)).collect();
    SccInfo { components, component_of, nontrivial, widths }
}

/// Split the defining rules of a component into external rules (positive
/// body disjoint from the component) and internal rules (the rest).
/// Returns rule indices into `p.rules`; the two lists are disjoint and
/// together cover every rule with a head in the component.
pub fn partition_defining_rules(p: &Program, component: &[AtomId]) -> (Vec<usize>, Vec<usize>) {
    let members: BTreeSet<AtomId> = component.iter().copied().collect();
    let mut external = Vec::new();
    let mut internal = Vec::new();
    for (i, rule) in p.rules.iter().enumerate() {
        if !rule.heads.iter().any(|h| members.contains(h)) {
            continue;
        }
        if rule.pos_body.iter().any(|b| members.contains(b)) {
            internal.push(i);
        } else {
            external.push(i);
        }
    }
    (external, internal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::sample_program;
    use crate::program::{Program, Rule};

    #[test]
    fn sample_edges() {
        let g = build_depgraph(&sample_program());
        let expected: BTreeSet<(AtomId, AtomId)> =
            [(3, 2), (4, 2), (5, 2), (2, 3)].into_iter().collect();
        assert_eq!(g.edges, expected);
    }

    #[test]
    fn facts_only_graph_has_no_edges() {
        let mut p = Program::new(3);
        p.add_rule(Rule::fact(1));
        p.add_rule(Rule::fact(2));
        assert!(build_depgraph(&p).edges.is_empty());
    }

    #[test]
    fn weight_rule_contributes_positive_edges_only() {
        // a1 <- 1 <= {a2=1, not a3=1}
        let mut p = Program::new(3);
        p.add_rule(Rule::weight(1, 1, vec![(2, 1)], vec![(3, 1)]));
        let g = build_depgraph(&p);
        assert_eq!(g.edges, [(2, 1)].into_iter().collect());
    }

    #[test]
    fn sample_sccs() {
        let sccs = compute_sccs(&build_depgraph(&sample_program()));
        assert_eq!(sccs.components, vec![vec![2, 3], vec![4], vec![5]]);
        assert_eq!(sccs.nontrivial, vec![true, false, false]);
        assert_eq!(sccs.widths[0], 2);
    }

    #[test]
    fn edgeless_graph_gives_singletons() {
        let g = DepGraph { vertices: vec![1, 2, 3, 4], edges: BTreeSet::new() };
        let sccs = compute_sccs(&g);
        assert_eq!(sccs.components.len(), 4);
        assert!(sccs.nontrivial.iter().all(|n| !n));
    }

    #[test]
    fn three_cycle_width() {
        let g = DepGraph {
            vertices: vec![1, 2, 3],
            edges: [(1, 2), (2, 3), (3, 1)].into_iter().collect(),
        };
        let sccs = compute_sccs(&g);
        assert_eq!(sccs.components, vec![vec![1, 2, 3]]);
        assert_eq!(sccs.widths[0], 2);
    }

    #[test]
    fn sample_partition() {
        let p = sample_program();
        let (external, internal) = partition_defining_rules(&p, &[2, 3]);
        // External support for {a,b} is the single rule "a :- d".
        assert_eq!(external, vec![1]);
        assert_eq!(internal, vec![0, 2, 3]);
    }

    #[test]
    fn singleton_fact_partition() {
        let mut p = Program::new(1);
        p.add_rule(Rule::fact(1));
        let (external, internal) = partition_defining_rules(&p, &[1]);
        assert_eq!(external, vec![0]);
        assert!(internal.is_empty());
    }

    #[test]
    fn two_cycle_partition_is_all_internal() {
        let mut p = Program::new(2);
        p.add_rule(Rule::normal(1, vec![2], vec![]));
        p.add_rule(Rule::normal(2, vec![1], vec![]));
        let (external, internal) = partition_defining_rules(&p, &[1, 2]);
        assert!(external.is_empty());
        assert_eq!(internal, vec![0, 1]);
    }

    #[test]
    fn partition_covers_and_is_disjoint_on_corpus() {
        for seed in 0..30u64 {
            let p = crate::corpus::random_program(seed, &Default::default());
            let sccs = compute_sccs(&build_depgraph(&p));
            for comp in &sccs.components {
                let (ext, int) = partition_defining_rules(&p, comp);
                let ext_set: BTreeSet<usize> = ext.iter().copied().collect();
                let int_set: BTreeSet<usize> = int.iter().copied().collect();
                assert!(ext_set.is_disjoint(&int_set));
                let members: BTreeSet<AtomId> = comp.iter().copied().collect();
                let def: BTreeSet<usize> = p
                    .rules
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r.heads.iter().any(|h| members.contains(h)))
                    .map(|(i, _)| i)
                    .collect();
                assert_eq!(def, ext_set.union(&int_set).copied().collect());
            }
        }
    }

    #[test]
    fn sccs_invariant_under_rule_reordering() {
        for seed in 0..20u64 {
            let p = crate::corpus::random_program(seed, &Default::default());
            let mut reversed = p.clone();
            reversed.rules.reverse();
            let a = compute_sccs(&build_depgraph(&p));
            let b = compute_sccs(&build_depgraph(&reversed));
            let sa: BTreeSet<Vec<AtomId>> = a.components.into_iter().collect();
            let sb: BTreeSet<Vec<AtomId>> = b.components.into_iter().collect();
            assert_eq!(sa, sb, "seed {seed}");
        }
    }

    #[test]
    fn dump_lists_components() {
        let sccs = compute_sccs(&build_depgraph(&sample_program()));
        assert_eq!(sccs.dump(), "2 3\n4\n5\n");
    }

    #[test]
    fn intra_component_edges_imply_nontrivial_or_self_loop() {
        for seed in 0..30u64 {
            let p = crate::corpus::random_program(seed, &Default::default());
            let g = build_depgraph(&p);
            let sccs = compute_sccs(&g);
            for &(b, a) in &g.edges {
                if sccs.same_component(b, a) {
                    assert!(
                        sccs.is_nontrivial_atom(a) || b == a,
                        "seed {seed}: edge ({b},{a}) inside a trivial component"
                    );
                }
            }
        }
    }
}
