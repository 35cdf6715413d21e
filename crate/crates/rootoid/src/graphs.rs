//! Graph protorootoids, rainbow graphs and protomeshes.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::groupoid::{pair_groupoid_from_graph, GroupoidError, Mor, Obj, SimpleGraph, System};
use crate::order::{rootoid_check, WeakOrder};
use crate::proto::{build_from_c0, HalfSpaces, ProtoError, Protorootoid};
use crate::ring::{RingError, Universe};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("cycle condition fails at edge {0}-{1}")]
    CycleCondition(String, String),
    #[error("edge {0}-{1} is not an edge of the graph")]
    BadEdge(String, String),
    #[error("edge {0}-{1} is labelled twice")]
    DuplicateLabel(String, String),
    #[error("edge {0}-{1} has no label")]
    MissingLabel(String, String),
    #[error("given edges do not form a maximal subforest")]
    NotMaximalForest,
    #[error("label lives in the wrong ring")]
    WrongRing,
    #[error("protomesh family is empty")]
    EmptyFamily,
    #[error("protomesh family repeats a member")]
    RepeatedMember,
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Proto(#[from] ProtoError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// `X_(a,b) = {x : d(b,x) > d(a,x)}` as a vertex set.
pub fn half_space(graph: &SimpleGraph, a: usize, b: usize) -> FixedBitSet {
    let da = graph.distances(a);
    let db = graph.distances(b);
    let mut out = FixedBitSet::with_capacity(graph.vertex_count());
    for x in 0..graph.vertex_count() {
        if let (Some(p), Some(q)) = (da[x], db[x]) {
            if q > p {
                out.insert(x);
            }
        }
    }
    out
}

pub fn vertex_names(graph: &SimpleGraph, set: &FixedBitSet) -> Vec<String> {
    set.ones().map(|v| graph.name(v).to_string()).collect()
}

/// Breadth-first spanning forest, edges as sorted pairs.
pub fn spanning_forest(graph: &SimpleGraph) -> Vec<(usize, usize)> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut q = VecDeque::from([root]);
        while let Some(x) = q.pop_front() {
            for &y in graph.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    out.push(edge_key(x, y));
                    q.push_back(y);
                }
            }
        }
    }
    out.sort();
    out
}

/// Parent pointers of a forest; roots point to themselves.
fn forest_parents(n: usize, forest: &[(usize, usize)]) -> Option<(Vec<usize>, Vec<u32>)> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in forest {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0u32; n];
    let mut reached = 0;
    for root in 0..n {
        if parent[root] != usize::MAX {
            continue;
        }
        parent[root] = root;
        let mut q = VecDeque::from([root]);
        while let Some(x) = q.pop_front() {
            reached += 1;
            for &y in &adj[x] {
                if y == parent[x] && x != root {
                    continue;
                }
                if parent[y] != usize::MAX {
                    // second route into y: a cycle
                    return None;
                }
                parent[y] = x;
                depth[y] = depth[x] + 1;
                q.push_back(y);
            }
        }
    }
    (reached == n).then_some((parent, depth))
}

/// Fundamental cycle of a non-forest edge, as a closed vertex walk.
pub fn fundamental_cycles(
    graph: &SimpleGraph,
    forest: &[(usize, usize)],
) -> Result<Vec<Vec<usize>>, GraphError> {
    let (parent, depth) =
        forest_parents(graph.vertex_count(), forest).ok_or(GraphError::NotMaximalForest)?;
    let in_forest: std::collections::HashSet<(usize, usize)> = forest.iter().copied().collect();
    let mut out = Vec::new();
    for (a, b) in graph.edges() {
        if in_forest.contains(&(a, b)) {
            continue;
        }
        let (mut x, mut y) = (a, b);
        let mut left = vec![x];
        let mut right = vec![y];
        while x != y {
            if depth[x] >= depth[y] {
                if parent[x] == x {
                    return Err(GraphError::NotMaximalForest);
                }
                x = parent[x];
                left.push(x);
            } else {
                if parent[y] == y {
                    return Err(GraphError::NotMaximalForest);
                }
                y = parent[y];
                right.push(y);
            }
        }
        right.pop();
        right.reverse();
        left.extend(right);
        left.push(a);
        out.push(left);
    }
    Ok(out)
}

/// Graph with edge labels in `℘(colours)`, zero around every cycle.
#[derive(Debug, Clone)]
pub struct RainbowGraph {
    graph: SimpleGraph,
    colours: Arc<Universe>,
    labels: HashMap<(usize, usize), FixedBitSet>,
    /// Sum of labels along forest paths from a component root.
    potential: Vec<FixedBitSet>,
}

impl RainbowGraph {
    /// Labels every edge; checks the cycle condition.
    pub fn new(
        graph: SimpleGraph,
        colours: Arc<Universe>,
        labels: Vec<((usize, usize), FixedBitSet)>,
    ) -> Result<Self, GraphError> {
        let map = Self::label_map(&graph, &colours, labels)?;
        for (a, b) in graph.edges() {
            if !map.contains_key(&(a, b)) {
                return Err(GraphError::MissingLabel(
                    graph.name(a).into(),
                    graph.name(b).into(),
                ));
            }
        }
        let potential = Self::potential(&graph, &colours, &map);
        let r = RainbowGraph {
            graph,
            colours,
            labels: map,
            potential,
        };
        if let Some((a, b)) = r.cycle_violation() {
            return Err(GraphError::CycleCondition(
                r.graph.name(a).into(),
                r.graph.name(b).into(),
            ));
        }
        Ok(r)
    }

    /// Unique extension of labels on a maximal subforest.
    pub fn from_forest(
        graph: SimpleGraph,
        colours: Arc<Universe>,
        forest: Vec<((usize, usize), FixedBitSet)>,
    ) -> Result<Self, GraphError> {
        let mut map = Self::label_map(&graph, &colours, forest)?;
        let edges: Vec<(usize, usize)> = map.keys().copied().collect();
        forest_parents(graph.vertex_count(), &edges).ok_or(GraphError::NotMaximalForest)?;
        // a maximal forest spans each component
        let mut tree_edges = 0;
        for c in graph.components() {
            tree_edges += c.len() - 1;
        }
        if edges.len() != tree_edges {
            return Err(GraphError::NotMaximalForest);
        }
        let mut sorted = edges.clone();
        sorted.sort();
        for cycle in fundamental_cycles(&graph, &sorted)? {
            // closing edge is the last step of the walk
            let k = cycle.len();
            let (a, b) = edge_key(cycle[k - 2], cycle[k - 1]);
            let mut sum = FixedBitSet::with_capacity(colours.len());
            for w in cycle[..k - 1].windows(2) {
                sum.symmetric_difference_with(&map[&edge_key(w[0], w[1])]);
            }
            map.insert((a, b), sum);
        }
        Self::new(graph, colours, map.into_iter().collect())
    }

    fn label_map(
        graph: &SimpleGraph,
        colours: &Universe,
        labels: Vec<((usize, usize), FixedBitSet)>,
    ) -> Result<HashMap<(usize, usize), FixedBitSet>, GraphError> {
        let mut map = HashMap::new();
        for ((a, b), l) in labels {
            if a >= graph.vertex_count() || b >= graph.vertex_count() || !graph.has_edge(a, b) {
                return Err(GraphError::BadEdge(a.to_string(), b.to_string()));
            }
            if l.len() != colours.len() {
                return Err(GraphError::WrongRing);
            }
            if map.insert(edge_key(a, b), l).is_some() {
                return Err(GraphError::DuplicateLabel(
                    graph.name(a).into(),
                    graph.name(b).into(),
                ));
            }
        }
        Ok(map)
    }

    fn potential(
        graph: &SimpleGraph,
        colours: &Universe,
        labels: &HashMap<(usize, usize), FixedBitSet>,
    ) -> Vec<FixedBitSet> {
        let n = graph.vertex_count();
        let mut pot: Vec<Option<FixedBitSet>> = vec![None; n];
        for root in 0..n {
            if pot[root].is_some() {
                continue;
            }
            pot[root] = Some(FixedBitSet::with_capacity(colours.len()));
            let mut q = VecDeque::from([root]);
            while let Some(x) = q.pop_front() {
                for &y in graph.neighbors(x) {
                    if pot[y].is_none() {
                        let mut p = pot[x].clone().expect("visited");
                        if let Some(l) = labels.get(&edge_key(x, y)) {
                            p.symmetric_difference_with(l);
                        }
                        pot[y] = Some(p);
                        q.push_back(y);
                    }
                }
            }
        }
        pot.into_iter().map(|p| p.expect("all reached")).collect()
    }

    /// An edge whose label differs from the potential difference.
    pub fn cycle_violation(&self) -> Option<(usize, usize)> {
        self.graph.edges().into_iter().find(|&(a, b)| {
            let mut d = self.potential[a].clone();
            d.symmetric_difference_with(&self.potential[b]);
            d != self.labels[&(a, b)]
        })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn colours(&self) -> &Arc<Universe> {
        &self.colours
    }

    pub fn label(&self, a: usize, b: usize) -> Option<&FixedBitSet> {
        self.labels.get(&edge_key(a, b))
    }

    pub fn label_names(&self, a: usize, b: usize) -> Option<Vec<String>> {
        self.label(a, b).map(|l| {
            l.ones()
                .map(|i| self.colours.label(i).to_string())
                .collect()
        })
    }

    /// Sum of labels along a vertex walk.
    pub fn walk_sum(&self, walk: &[usize]) -> Option<FixedBitSet> {
        let mut sum = FixedBitSet::with_capacity(self.colours.len());
        for w in walk.windows(2) {
            sum.symmetric_difference_with(self.label(w[0], w[1])?);
        }
        Some(sum)
    }

    /// Constant carrier, trivial action, `N(a,b)` the label sum of any path.
    pub fn protorootoid(&self) -> Result<(System, Protorootoid), GraphError> {
        let (sys, _) = pair_groupoid_from_graph(&self.graph)?;
        let g = sys.groupoid();
        let k = self.colours.len();
        let carriers = vec![self.colours.clone(); g.object_count()];
        let identity: Vec<u32> = (0..k as u32).collect();
        let action = vec![identity; g.morphism_count()];
        let n = g
            .morphisms()
            .map(|m| {
                let mut v = self.potential[g.cod(m).idx()].clone();
                v.symmetric_difference_with(&self.potential[g.dom(m).idx()]);
                v
            })
            .collect();
        let pr = Protorootoid::new(g.clone(), carriers, action, n)?;
        Ok((sys, pr))
    }
}

/// Both models of a graph protorootoid, with the even variants when the
/// graph is bipartite.
#[derive(Debug, Clone)]
pub struct GraphRootoid {
    pub graph: SimpleGraph,
    pub half_spaces: HalfSpaces,
    /// Distinct sets `X_s`, in order of first appearance over `S`.
    pub x_sets: Vec<FixedBitSet>,
    pub rainbow: RainbowGraph,
    pub rainbow_pr: Protorootoid,
    pub even: Option<EvenGraph>,
}

#[derive(Debug, Clone)]
pub struct EvenGraph {
    pub pr: Protorootoid,
    /// Partitions `{X_s, X_s*}` by their first member.
    pub partitions: Vec<(FixedBitSet, FixedBitSet)>,
    pub rainbow: RainbowGraph,
    pub rainbow_pr: Protorootoid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphAgreement {
    pub sizes_match: bool,
    pub orders_equal: bool,
    pub even_sizes_match: Option<bool>,
    pub even_orders_equal: Option<bool>,
    /// Rainbow sizes are twice the even rainbow sizes.
    pub halving: Option<bool>,
}

impl GraphAgreement {
    pub fn holds(&self) -> bool {
        self.sizes_match
            && self.orders_equal
            && self.even_sizes_match.unwrap_or(true)
            && self.even_orders_equal.unwrap_or(true)
            && self.halving.unwrap_or(true)
    }
}

fn set_label(graph: &SimpleGraph, s: &FixedBitSet) -> String {
    format!("{{{}}}", vertex_names(graph, s).join(","))
}

pub fn graph_protorootoid(graph: &SimpleGraph) -> Result<GraphRootoid, GraphError> {
    let (sys, _) = pair_groupoid_from_graph(graph)?;
    let half_spaces = build_from_c0(&sys)?;
    let edges = graph.edges();
    let mut x_sets: Vec<FixedBitSet> = Vec::new();
    let mut x_names = Vec::new();
    for &(a, b) in &edges {
        for (p, q) in [(a, b), (b, a)] {
            let x = half_space(graph, p, q);
            if !x_sets.contains(&x) {
                x_names.push(format!("X({},{})", graph.name(p), graph.name(q)));
                x_sets.push(x);
            }
        }
    }
    let colours = Universe::new(x_names)?;
    let separates = |set: &FixedBitSet, a: usize, b: usize| set.contains(a) != set.contains(b);
    let labels: Vec<((usize, usize), FixedBitSet)> = edges
        .iter()
        .map(|&(a, b)| {
            let mut l = FixedBitSet::with_capacity(x_sets.len());
            for (i, x) in x_sets.iter().enumerate() {
                if separates(x, a, b) {
                    l.insert(i);
                }
            }
            ((a, b), l)
        })
        .collect();
    let rainbow = RainbowGraph::new(graph.clone(), colours, labels)?;
    let (_, rainbow_pr) = rainbow.protorootoid()?;
    let even = if sys.is_even() {
        let ev = half_spaces.even_variant()?;
        let mut partitions: Vec<(FixedBitSet, FixedBitSet)> = Vec::new();
        let mut names = Vec::new();
        for &(a, b) in &edges {
            let x = half_space(graph, a, b);
            let y = half_space(graph, b, a);
            if !partitions
                .iter()
                .any(|(p, q)| (p == &x && q == &y) || (p == &y && q == &x))
            {
                names.push(format!("{}|{}", set_label(graph, &x), set_label(graph, &y)));
                partitions.push((x, y));
            }
        }
        let colours = Universe::new(names)?;
        let labels: Vec<((usize, usize), FixedBitSet)> = edges
            .iter()
            .map(|&(a, b)| {
                let mut l = FixedBitSet::with_capacity(partitions.len());
                for (i, (p, q)) in partitions.iter().enumerate() {
                    if separates(p, a, b) && separates(q, a, b) {
                        l.insert(i);
                    }
                }
                ((a, b), l)
            })
            .collect();
        let r = RainbowGraph::new(graph.clone(), colours, labels)?;
        let (_, rpr) = r.protorootoid()?;
        Some(EvenGraph {
            pr: ev.pr,
            partitions,
            rainbow: r,
            rainbow_pr: rpr,
        })
    } else {
        None
    };
    Ok(GraphRootoid {
        graph: graph.clone(),
        half_spaces,
        x_sets,
        rainbow,
        rainbow_pr,
        even,
    })
}

fn same_orders(a: &Protorootoid, b: &Protorootoid) -> bool {
    a.groupoid()
        .objects()
        .all(|o| WeakOrder::new(a, o).poset == WeakOrder::new(b, o).poset)
}

impl GraphRootoid {
    pub fn system(&self) -> &System {
        &self.half_spaces.system
    }

    pub fn pr(&self) -> &Protorootoid {
        &self.half_spaces.pr
    }

    /// `X_(a,b)` for an edge, by vertex names.
    pub fn x_set(&self, a: &str, b: &str) -> Option<Vec<String>> {
        let (a, b) = (self.graph.vertex(a)?, self.graph.vertex(b)?);
        self.graph
            .has_edge(a, b)
            .then(|| vertex_names(&self.graph, &half_space(&self.graph, a, b)))
    }

    /// Every `X_s` over `S`, keyed by `(a,b)` names.
    pub fn x_table(&self) -> Vec<((String, String), Vec<String>)> {
        let mut out = Vec::new();
        for (a, b) in self.graph.edges() {
            for (p, q) in [(a, b), (b, a)] {
                out.push((
                    (
                        self.graph.name(p).to_string(),
                        self.graph.name(q).to_string(),
                    ),
                    vertex_names(&self.graph, &half_space(&self.graph, p, q)),
                ));
            }
        }
        out
    }

    pub fn is_c1(&self) -> bool {
        self.half_spaces.wec_check().holds
    }

    pub fn morphism(&self, a: &str, b: &str) -> Option<Mor> {
        self.pr().groupoid().morphism_by_name(&format!("({a},{b})"))
    }

    pub fn agreement(&self) -> GraphAgreement {
        let g = self.pr().groupoid();
        let sizes_match = g
            .morphisms()
            .all(|m| self.pr().rank(m) == self.rainbow_pr.rank(m));
        let orders_equal = same_orders(self.pr(), &self.rainbow_pr);
        let (even_sizes_match, even_orders_equal, halving) = match &self.even {
            Some(e) => (
                Some(g.morphisms().all(|m| e.pr.rank(m) == e.rainbow_pr.rank(m))),
                Some(same_orders(&e.pr, &e.rainbow_pr)),
                Some(
                    g.morphisms()
                        .all(|m| self.rainbow_pr.rank(m) == 2 * e.rainbow_pr.rank(m)),
                ),
            ),
            None => (None, None, None),
        };
        GraphAgreement {
            sizes_match,
            orders_equal,
            even_sizes_match,
            even_orders_equal,
            halving,
        }
    }

    /// Even variant if available, else the full one.
    pub fn preferred(&self) -> &Protorootoid {
        self.even.as_ref().map_or(self.pr(), |e| &e.pr)
    }
}

/// Boolean ring `℘(E)` with a nonempty family `L`.
#[derive(Debug, Clone)]
pub struct Protomesh {
    pub universe: Arc<Universe>,
    pub family: Vec<FixedBitSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeshVerdict {
    pub mesh: bool,
    pub complete: bool,
    pub ideal: bool,
    /// Splitting test; only meaningful for ideals.
    pub splitting: Option<bool>,
}

impl Protomesh {
    pub fn new(universe: Arc<Universe>, family: Vec<FixedBitSet>) -> Result<Self, GraphError> {
        if family.is_empty() {
            return Err(GraphError::EmptyFamily);
        }
        if family.iter().any(|f| f.len() != universe.len()) {
            return Err(GraphError::WrongRing);
        }
        let distinct: std::collections::HashSet<&FixedBitSet> = family.iter().collect();
        if distinct.len() != family.len() {
            return Err(GraphError::RepeatedMember);
        }
        Ok(Protomesh { universe, family })
    }

    /// All subsets of `base` as the family.
    pub fn powerset_ideal(universe: Arc<Universe>, base: &FixedBitSet) -> Result<Self, GraphError> {
        let members: Vec<usize> = base.ones().collect();
        let family = (0u64..1 << members.len())
            .map(|mask| {
                let mut f = FixedBitSet::with_capacity(universe.len());
                for (i, &m) in members.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        f.insert(m);
                    }
                }
                f
            })
            .collect();
        Self::new(universe, family)
    }

    fn member_name(&self, f: &FixedBitSet) -> String {
        if f.is_clear() {
            "∅".into()
        } else {
            format!(
                "{{{}}}",
                f.ones()
                    .map(|i| self.universe.label(i))
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }

    /// Complete graph on `L` labelled by `A + B`.
    pub fn rainbow(&self) -> Result<RainbowGraph, GraphError> {
        let k = self.family.len();
        let names: Vec<String> = self.family.iter().map(|f| self.member_name(f)).collect();
        let edges: Vec<(usize, usize)> = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .collect();
        let graph = SimpleGraph::new(names, &edges)?;
        let labels = edges
            .iter()
            .map(|&(a, b)| {
                let mut l = self.family[a].clone();
                l.symmetric_difference_with(&self.family[b]);
                ((a, b), l)
            })
            .collect();
        RainbowGraph::new(graph, self.universe.clone(), labels)
    }

    pub fn protorootoid(&self) -> Result<Protorootoid, GraphError> {
        Ok(self.rainbow()?.protorootoid()?.1)
    }

    /// Closed under `+` and under intersection with anything.
    pub fn is_ideal(&self) -> bool {
        let set: std::collections::HashSet<&FixedBitSet> = self.family.iter().collect();
        self.family.iter().all(|a| {
            let below = (0u64..1 << a.count_ones(..).min(20)).all(|mask| {
                let ones: Vec<usize> = a.ones().collect();
                let mut f = FixedBitSet::with_capacity(self.universe.len());
                for (i, &m) in ones.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        f.insert(m);
                    }
                }
                set.contains(&f)
            });
            below
                && self.family.iter().all(|b| {
                    let mut s = a.clone();
                    s.symmetric_difference_with(b);
                    set.contains(&s)
                })
        })
    }

    /// For `A ≠ ∅`, some `∅ ≠ X ⊆ A` in `L` lies inside or outside `B`.
    pub fn splitting_test(&self) -> bool {
        self.family.iter().filter(|a| !a.is_clear()).all(|a| {
            self.family.iter().all(|b| {
                self.family.iter().any(|x| {
                    !x.is_clear() && x.is_subset(a) && (x.is_subset(b) || x.is_disjoint(b))
                })
            })
        })
    }

    pub fn mesh_check(&self) -> Result<MeshVerdict, GraphError> {
        let v = rootoid_check(&self.protorootoid()?);
        let ideal = self.is_ideal();
        Ok(MeshVerdict {
            mesh: v.rootoid,
            complete: v.complete,
            ideal,
            splitting: ideal.then(|| self.splitting_test()),
        })
    }
}

/// Star of a vertex in a graph protorootoid, by name.
pub fn star_object(pr: &Protorootoid, name: &str) -> Option<Obj> {
    pr.groupoid().object_by_name(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::preprincipal_check;

    fn bits(n: usize, on: &[usize]) -> FixedBitSet {
        let mut b = FixedBitSet::with_capacity(n);
        for &i in on {
            b.insert(i);
        }
        b
    }

    #[test]
    fn evenness() {
        assert!(SimpleGraph::cycle(6).is_even());
        assert!(!SimpleGraph::cycle(5).is_even());
        assert!(SimpleGraph::path(4).is_even());
    }

    #[test]
    fn triangle_extension() {
        let g = SimpleGraph::cycle(3);
        let colours = Universe::new(["b1", "b2"]).unwrap();
        let r = RainbowGraph::from_forest(
            g,
            colours,
            vec![((0, 1), bits(2, &[0])), ((1, 2), bits(2, &[1]))],
        )
        .unwrap();
        assert_eq!(r.label(0, 2).unwrap(), &bits(2, &[0, 1]));
    }

    #[test]
    fn square_extension() {
        let g = SimpleGraph::cycle(4);
        let colours = Universe::new(["x", "y", "z"]).unwrap();
        let forest = vec![
            ((0, 1), bits(3, &[0])),
            ((1, 2), bits(3, &[1])),
            ((2, 3), bits(3, &[2])),
        ];
        let r = RainbowGraph::from_forest(g, colours, forest).unwrap();
        assert_eq!(r.label(3, 0).unwrap(), &bits(3, &[0, 1, 2]));
    }

    #[test]
    fn forest_extension_is_identity_and_errors() {
        let g = SimpleGraph::path(3);
        let colours = Universe::new(["c"]).unwrap();
        let r = RainbowGraph::from_forest(
            g.clone(),
            colours.clone(),
            vec![((0, 1), bits(1, &[0])), ((1, 2), bits(1, &[]))],
        )
        .unwrap();
        assert_eq!(r.label(0, 1).unwrap(), &bits(1, &[0]));
        assert!(
            RainbowGraph::from_forest(g, colours.clone(), vec![((0, 1), bits(1, &[0]))]).is_err()
        );
        let tri = SimpleGraph::cycle(3);
        let bad = vec![
            ((0, 1), bits(1, &[0])),
            ((1, 2), bits(1, &[0])),
            ((0, 2), bits(1, &[0])),
        ];
        assert!(matches!(
            RainbowGraph::new(tri, colours, bad),
            Err(GraphError::CycleCondition(..))
        ));
    }

    #[test]
    fn single_edge() {
        let g = SimpleGraph::path(2);
        let gr = graph_protorootoid(&g).unwrap();
        let e = gr.even.as_ref().unwrap();
        let wo = WeakOrder::new(&e.pr, Obj(0));
        assert_eq!(wo.elems.len(), 2);
        assert!(gr.agreement().holds());
        let colours = Universe::new(["c"]).unwrap();
        let r = RainbowGraph::new(g, colours, vec![((0, 1), bits(1, &[0]))]).unwrap();
        let (_, pr) = r.protorootoid().unwrap();
        let m = pr.groupoid().morphism_by_name("(v1,v0)").unwrap();
        assert_eq!(pr.n(m), &bits(1, &[0]));
    }

    #[test]
    fn cycles() {
        let six = graph_protorootoid(&SimpleGraph::cycle(6)).unwrap();
        assert!(six.agreement().holds());
        let v = rootoid_check(six.preferred());
        assert!(v.rootoid && v.complete);
        assert!(preprincipal_check(six.preferred()).unwrap().holds);
        let five = graph_protorootoid(&SimpleGraph::cycle(5)).unwrap();
        assert!(five.agreement().holds());
        let v = rootoid_check(five.pr());
        assert!(v.rootoid && !v.complete);
        assert!(!preprincipal_check(five.pr()).unwrap().holds);
    }

    #[test]
    fn meshes() {
        let u = Universe::new(["1", "2", "3"]).unwrap();
        let ideal = Protomesh::powerset_ideal(u.clone(), &bits(3, &[0, 1])).unwrap();
        let v = ideal.mesh_check().unwrap();
        assert!(v.mesh && v.ideal && v.splitting == Some(true));
        let trivial = Protomesh::new(u.clone(), vec![bits(3, &[])]).unwrap();
        assert!(trivial.mesh_check().unwrap().mesh);
        let xyz = Universe::new(["x", "y", "z"]).unwrap();
        let singles = Protomesh::new(
            xyz,
            vec![bits(3, &[]), bits(3, &[0]), bits(3, &[1]), bits(3, &[2])],
        )
        .unwrap();
        assert!(singles.mesh_check().unwrap().mesh);
        assert!(Protomesh::new(u, vec![]).is_err());
    }
}
