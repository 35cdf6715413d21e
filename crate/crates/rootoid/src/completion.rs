//! Galois connections, gluing, join-closed ideal completion and
//! orthocomplemented extensions of weak orders.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::groupoid::Obj;
use crate::order::{jop_check_at, Poset, WeakOrder, DEFAULT_JOP_WIDTH};
use crate::proto::Protorootoid;

/// Cap on enumerated join-closed ideals.
pub const IDEAL_BOUND: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("not a Galois connection at x = {x}, y = {y}")]
    NotGalois { x: usize, y: usize },
    #[error("map has wrong length")]
    BadMap,
    #[error("poset has no minimum")]
    NoMinimum,
    #[error("not a meet semilattice: {0} and {1} have no meet")]
    NotMeetSemilattice(usize, usize),
    #[error("relation not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("row of {0} is not a nonempty join-closed order ideal")]
    BadRow(usize),
    #[error("{0} is orthogonal to itself but is not the minimum")]
    SelfOrthogonal(usize),
    #[error("more than {0} join-closed ideals")]
    Bound(usize),
}

/// Order-reversing pair with `y ≤ α(x) ⟺ x ≤ β(y)`.
#[derive(Debug, Clone)]
pub struct GaloisConnection {
    pub x: Poset,
    pub y: Poset,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GaloisFacts {
    pub antitone: bool,
    pub adjunction: bool,
    pub closure: bool,
    pub stable_is_image: bool,
    pub joins_to_meets: bool,
    pub stable_bijection: bool,
}

impl GaloisFacts {
    pub fn all(&self) -> bool {
        self.antitone
            && self.adjunction
            && self.closure
            && self.stable_is_image
            && self.joins_to_meets
            && self.stable_bijection
    }
}

impl GaloisConnection {
    pub fn new(
        x: Poset,
        y: Poset,
        alpha: Vec<usize>,
        beta: Vec<usize>,
    ) -> Result<Self, CompletionError> {
        if alpha.len() != x.len() || beta.len() != y.len() {
            return Err(CompletionError::BadMap);
        }
        if alpha.iter().any(|&v| v >= y.len()) || beta.iter().any(|&v| v >= x.len()) {
            return Err(CompletionError::BadMap);
        }
        for i in 0..x.len() {
            for j in 0..y.len() {
                if y.le(j, alpha[i]) != x.le(i, beta[j]) {
                    return Err(CompletionError::NotGalois { x: i, y: j });
                }
            }
        }
        Ok(GaloisConnection { x, y, alpha, beta })
    }

    /// Stable elements of `X`.
    pub fn stable_x(&self) -> Vec<usize> {
        (0..self.x.len())
            .filter(|&i| self.beta[self.alpha[i]] == i)
            .collect()
    }

    pub fn stable_y(&self) -> Vec<usize> {
        (0..self.y.len())
            .filter(|&j| self.alpha[self.beta[j]] == j)
            .collect()
    }

    /// The standard facts, checked exhaustively on both sides.
    pub fn facts(&self) -> GaloisFacts {
        let flipped = GaloisConnection {
            x: self.y.clone(),
            y: self.x.clone(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        };
        let a = self.one_sided();
        let b = flipped.one_sided();
        GaloisFacts {
            antitone: a.antitone && b.antitone,
            adjunction: a.adjunction && b.adjunction,
            closure: a.closure && b.closure,
            stable_is_image: a.stable_is_image && b.stable_is_image,
            joins_to_meets: a.joins_to_meets && b.joins_to_meets,
            stable_bijection: a.stable_bijection && b.stable_bijection,
        }
    }

    fn one_sided(&self) -> GaloisFacts {
        let (x, y, al, be) = (&self.x, &self.y, &self.alpha, &self.beta);
        let nx = x.len();
        let ny = y.len();
        let antitone = (0..nx).all(|i| (0..nx).all(|k| !x.le(i, k) || y.le(al[k], al[i])));
        let adjunction = (0..nx).all(|i| (0..ny).all(|j| !y.le(j, al[i]) || x.le(i, be[j])));
        let closure = (0..nx).all(|i| x.le(i, be[al[i]]) && al[be[al[i]]] == al[i]);
        let mut image: Vec<usize> = be.clone();
        image.sort();
        image.dedup();
        let stable = self.stable_x();
        let stable_is_image = image == stable;
        let lattices = x.is_lattice() && y.is_lattice();
        let mut joins_to_meets = true;
        if lattices {
            // empty family, then pairs; larger families follow by iteration
            joins_to_meets &= x
                .minimum()
                .zip(y.maximum())
                .is_some_and(|(bot, top)| al[bot] == top);
            for i in 0..nx {
                for k in i..nx {
                    let j = x.join(&[i, k]).expect("lattice");
                    joins_to_meets &= y.meet(&[al[i], al[k]]) == Some(al[j]);
                }
            }
        }
        let mut stable_bijection = true;
        if lattices {
            let sy = self.stable_y();
            let mut mapped: Vec<usize> = stable.iter().map(|&i| al[i]).collect();
            mapped.sort();
            stable_bijection &= mapped == sy;
            stable_bijection &= stable.iter().all(|&i| be[al[i]] == i);
            // meets of stable elements stay stable
            for (p, &i) in stable.iter().enumerate() {
                for &k in &stable[p..] {
                    stable_bijection &= x.meet(&[i, k]).is_some_and(|m| stable.contains(&m));
                }
            }
        }
        GaloisFacts {
            antitone,
            adjunction,
            closure,
            stable_is_image,
            joins_to_meets,
            stable_bijection,
        }
    }
}

/// Which copy an element of the glued poset comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Tag {
    Lower(usize),
    Upper(usize),
}

#[derive(Debug, Clone)]
pub struct Glued {
    pub poset: Poset,
    pub tags: Vec<Tag>,
    /// Present when `X = Y`, `α = β` and `x ∧ α(x) = 0` for every `x`.
    pub complement: Option<Vec<usize>>,
}

impl Glued {
    pub fn lower(&self, i: usize) -> usize {
        i
    }

    pub fn upper(&self, j: usize) -> usize {
        self.tags
            .iter()
            .position(|&t| t == Tag::Upper(j))
            .expect("upper copy")
    }

    pub fn labels(&self) -> Vec<String> {
        self.tags
            .iter()
            .map(|t| match t {
                Tag::Lower(i) => format!("i0({i})"),
                Tag::Upper(j) => format!("i1({j})"),
            })
            .collect()
    }
}

/// Lower copy of `X`, reversed copy of `Y` on top, `i0(x) ≤ i1(y)` iff `y ≤ α(x)`.
pub fn galois_glue(gc: &GaloisConnection) -> Glued {
    let nx = gc.x.len();
    let ny = gc.y.len();
    let mut tags: Vec<Tag> = (0..nx).map(Tag::Lower).collect();
    tags.extend((0..ny).map(Tag::Upper));
    let poset = Poset::new_unchecked(nx + ny, |p, q| match (tags[p], tags[q]) {
        (Tag::Lower(a), Tag::Lower(b)) => gc.x.le(a, b),
        (Tag::Upper(a), Tag::Upper(b)) => gc.y.le(b, a),
        (Tag::Upper(_), Tag::Lower(_)) => false,
        (Tag::Lower(a), Tag::Upper(b)) => gc.y.le(b, gc.alpha[a]),
    });
    let symmetric = gc.x == gc.y && gc.alpha == gc.beta;
    let ortho = symmetric
        && gc
            .x
            .minimum()
            .is_some_and(|bot| (0..nx).all(|i| gc.x.meet(&[i, gc.alpha[i]]) == Some(bot)));
    let complement = ortho.then(|| {
        (0..nx + ny)
            .map(|p| if p < nx { p + nx } else { p - nx })
            .collect()
    });
    Glued {
        poset,
        tags,
        complement,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrthoReport {
    pub lattice: bool,
    pub involution: bool,
    pub antitone: bool,
    pub joins_to_top: bool,
    pub meets_to_bottom: bool,
}

impl OrthoReport {
    pub fn holds(&self) -> bool {
        self.lattice
            && self.involution
            && self.antitone
            && self.joins_to_top
            && self.meets_to_bottom
    }
}

pub fn ortho_check(poset: &Poset, complement: &[usize]) -> OrthoReport {
    let n = poset.len();
    let lattice = poset.is_lattice();
    let involution = complement.len() == n && (0..n).all(|i| complement[complement[i]] == i);
    let antitone = involution
        && (0..n)
            .all(|i| (0..n).all(|j| !poset.le(i, j) || poset.le(complement[j], complement[i])));
    let top = poset.maximum();
    let bot = poset.minimum();
    let joins_to_top =
        involution && (0..n).all(|i| poset.join(&[i, complement[i]]) == top && top.is_some());
    let meets_to_bottom =
        involution && (0..n).all(|i| poset.meet(&[i, complement[i]]) == bot && bot.is_some());
    OrthoReport {
        lattice,
        involution,
        antitone,
        joins_to_top,
        meets_to_bottom,
    }
}

/// Nonempty join-closed order ideals ordered by inclusion.
#[derive(Debug, Clone)]
pub struct IdealCompletion {
    pub ideals: Vec<FixedBitSet>,
    pub poset: Poset,
    /// Principal ideal of each element.
    pub embed: Vec<usize>,
}

impl IdealCompletion {
    pub fn index_of(&self, set: &FixedBitSet) -> Option<usize> {
        self.ideals.iter().position(|i| i == set)
    }

    /// `i′(L)` is an order ideal and `i′` preserves and reflects order.
    pub fn embedding_ok(&self, l: &Poset) -> bool {
        let n = l.len();
        let reflects = (0..n)
            .all(|a| (0..n).all(|b| l.le(a, b) == self.poset.le(self.embed[a], self.embed[b])));
        let image: Vec<usize> = self.embed.clone();
        let ideal = image
            .iter()
            .all(|&p| self.poset.down(p).ones().all(|q| image.contains(&q)));
        reflects && ideal
    }
}

fn ideal_closure(l: &Poset, seed: &FixedBitSet) -> FixedBitSet {
    let mut cur = FixedBitSet::with_capacity(l.len());
    for i in seed.ones() {
        cur.union_with(l.down(i));
    }
    loop {
        let members: Vec<usize> = cur.ones().collect();
        let mut grew = false;
        for (p, &i) in members.iter().enumerate() {
            for &j in &members[p + 1..] {
                if let Some(k) = l.join(&[i, j]) {
                    if !cur.contains(k) {
                        cur.union_with(l.down(k));
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return cur;
        }
    }
}

/// Join-closed ideals by lectic enumeration of the closure system.
pub fn ideal_completion(l: &Poset, bound: usize) -> Result<IdealCompletion, CompletionError> {
    let n = l.len();
    let bot = l.minimum().ok_or(CompletionError::NoMinimum)?;
    if let Some((i, j)) = l.meet_failure() {
        return Err(CompletionError::NotMeetSemilattice(i, j));
    }
    let mut start = FixedBitSet::with_capacity(n);
    start.insert(bot);
    let mut cur = ideal_closure(l, &start);
    let mut ideals = vec![cur.clone()];
    // next closure in lectic order
    'next: loop {
        for i in (0..n).rev() {
            if cur.contains(i) {
                continue;
            }
            let mut seed = FixedBitSet::with_capacity(n);
            for j in cur.ones().filter(|&j| j < i) {
                seed.insert(j);
            }
            seed.insert(i);
            seed.insert(bot);
            let cl = ideal_closure(l, &seed);
            if (0..i).all(|j| cl.contains(j) == cur.contains(j)) {
                cur = cl;
                ideals.push(cur.clone());
                if ideals.len() > bound {
                    return Err(CompletionError::Bound(bound));
                }
                continue 'next;
            }
        }
        break;
    }
    let poset = Poset::new_unchecked(ideals.len(), |p, q| ideals[p].is_subset(&ideals[q]));
    let index: HashMap<Vec<usize>, usize> = ideals
        .iter()
        .enumerate()
        .map(|(p, s)| (s.ones().collect(), p))
        .collect();
    let embed = (0..n)
        .map(|y| index[&l.down(y).ones().collect::<Vec<_>>()])
        .collect();
    Ok(IdealCompletion {
        ideals,
        poset,
        embed,
    })
}

/// Orthogonality relation given by rows `P[x] = {y : (x, y) ∈ P}`.
pub fn check_orthogonality(l: &Poset, rows: &[FixedBitSet]) -> Result<(), CompletionError> {
    let n = l.len();
    let bot = l.minimum().ok_or(CompletionError::NoMinimum)?;
    for x in 0..n {
        for y in rows[x].ones() {
            if !rows[y].contains(x) {
                return Err(CompletionError::NotSymmetric(x, y));
            }
        }
    }
    for x in 0..n {
        let row = &rows[x];
        let down_closed = row.ones().all(|y| l.down(y).is_subset(row));
        if row.is_clear() || !down_closed || &ideal_closure(l, row) != row {
            return Err(CompletionError::BadRow(x));
        }
        if row.contains(x) && x != bot {
            return Err(CompletionError::SelfOrthogonal(x));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct OrthoEmbedding {
    pub completion: IdealCompletion,
    pub glued: Glued,
    /// `L → V`.
    pub embedding: Vec<usize>,
    pub facts: GaloisFacts,
    pub report: OrthoReport,
    /// Image of `L` is an order ideal of `V` and the map is an order embedding.
    pub ideal_embedding: bool,
}

pub fn ortho_embed(
    l: &Poset,
    rows: &[FixedBitSet],
    bound: usize,
) -> Result<OrthoEmbedding, CompletionError> {
    check_orthogonality(l, rows)?;
    let completion = ideal_completion(l, bound)?;
    let n = l.len();
    let theta: Vec<usize> = completion
        .ideals
        .iter()
        .map(|ideal| {
            let mut dag = FixedBitSet::with_capacity(n);
            dag.insert_range(..);
            for x in ideal.ones() {
                dag.intersect_with(&rows[x]);
            }
            completion
                .index_of(&dag)
                .expect("duals of ideals are join-closed ideals")
        })
        .collect();
    let lp = completion.poset.clone();
    let gc = GaloisConnection::new(lp.clone(), lp, theta.clone(), theta)?;
    let facts = gc.facts();
    let glued = galois_glue(&gc);
    let report = match &glued.complement {
        Some(c) => ortho_check(&glued.poset, c),
        None => OrthoReport {
            lattice: glued.poset.is_lattice(),
            involution: false,
            antitone: false,
            joins_to_top: false,
            meets_to_bottom: false,
        },
    };
    let embedding: Vec<usize> = completion.embed.iter().map(|&p| glued.lower(p)).collect();
    let ideal_embedding = (0..n)
        .all(|a| (0..n).all(|b| l.le(a, b) == glued.poset.le(embedding[a], embedding[b])))
        && embedding
            .iter()
            .all(|&p| glued.poset.down(p).ones().all(|q| embedding.contains(&q)));
    Ok(OrthoEmbedding {
        completion,
        glued,
        embedding,
        facts,
        report,
        ideal_embedding,
    })
}

#[derive(Debug, Clone)]
pub struct RootoidOrtho {
    pub object: Obj,
    pub weak: WeakOrder,
    /// Disjointness rows are join-closed.
    pub jop: bool,
    pub embedding: OrthoEmbedding,
}

/// Disjointness of cocycle values on the weak order at `a`.
pub fn rootoid_ortho_embed(
    pr: &Protorootoid,
    a: Obj,
    bound: usize,
) -> Result<RootoidOrtho, CompletionError> {
    let weak = WeakOrder::new(pr, a);
    let jop = jop_check_at(&weak, DEFAULT_JOP_WIDTH).holds;
    let n = weak.elems.len();
    let rows: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut row = FixedBitSet::with_capacity(n);
            for y in 0..n {
                if weak.values[x].is_disjoint(&weak.values[y]) {
                    row.insert(y);
                }
            }
            row
        })
        .collect();
    let embedding = ortho_embed(&weak.poset, &rows, bound)?;
    Ok(RootoidOrtho {
        object: a,
        weak,
        jop,
        embedding,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGroup;
    use crate::graphs::graph_protorootoid;
    use crate::groupoid::SimpleGraph;

    fn chain(n: usize) -> Poset {
        Poset::new(n, |i, j| i <= j).unwrap()
    }

    fn boolean_square() -> Poset {
        Poset::new(4, |i, j| i & j == i).unwrap()
    }

    #[test]
    fn glue_two_chain() {
        let gc = GaloisConnection::new(chain(2), chain(2), vec![1, 0], vec![1, 0]).unwrap();
        assert!(gc.facts().all());
        let v = galois_glue(&gc);
        assert!(v.poset.is_isomorphic(&boolean_square()));
        assert!(ortho_check(&v.poset, v.complement.as_ref().unwrap()).holds());
    }

    #[test]
    fn glue_point() {
        let gc = GaloisConnection::new(chain(1), chain(1), vec![0], vec![0]).unwrap();
        let v = galois_glue(&gc);
        assert!(v.poset.is_isomorphic(&chain(2)));
        assert!(ortho_check(&v.poset, v.complement.as_ref().unwrap()).holds());
    }

    #[test]
    fn bad_galois_rejected() {
        // identity is not order reversing on a 2-chain
        assert!(GaloisConnection::new(chain(2), chain(2), vec![0, 1], vec![0, 1]).is_err());
    }

    #[test]
    fn ideal_completions() {
        let c = ideal_completion(&chain(4), IDEAL_BOUND).unwrap();
        assert!(c.poset.is_isomorphic(&chain(4)));
        assert!(c.embedding_ok(&chain(4)));
        let v = ideal_completion(&chain(1), IDEAL_BOUND).unwrap();
        assert_eq!(v.ideals.len(), 1);
        // 0 below an antichain of two
        let vee = Poset::new(3, |i, j| i == j || i == 0).unwrap();
        let c = ideal_completion(&vee, IDEAL_BOUND).unwrap();
        assert_eq!(c.ideals.len(), 4);
        assert!(c.embedding_ok(&vee));
    }

    #[test]
    fn orthogonality_errors() {
        let l = chain(2);
        let mut rows = vec![FixedBitSet::with_capacity(2); 2];
        rows[0].insert_range(..);
        rows[1].insert(0);
        rows[1].insert(1);
        rows[0].insert(1);
        assert_eq!(
            check_orthogonality(&l, &rows),
            Err(CompletionError::SelfOrthogonal(1))
        );
        let single = chain(1);
        let mut r = vec![FixedBitSet::with_capacity(1)];
        r[0].insert(0);
        let e = ortho_embed(&single, &r, IDEAL_BOUND).unwrap();
        assert!(e.glued.poset.is_isomorphic(&chain(2)));
        assert!(e.report.holds());
    }

    #[test]
    fn weak_order_pipelines() {
        let cg = CoxeterGroup::from_preset("I2(4)").unwrap();
        let pr = cg.reflection_cocycle().unwrap();
        let r = rootoid_ortho_embed(&pr, Obj(0), IDEAL_BOUND).unwrap();
        assert!(
            r.jop
                && r.embedding.report.holds()
                && r.embedding.ideal_embedding
                && r.embedding.facts.all()
        );
        assert_eq!(r.embedding.glued.poset.len(), 16);

        let c2 = CoxeterGroup::from_preset("A1")
            .unwrap()
            .reflection_cocycle()
            .unwrap();
        let r = rootoid_ortho_embed(&c2, Obj(0), IDEAL_BOUND).unwrap();
        assert!(r.embedding.glued.poset.is_isomorphic(&boolean_square()));

        let hex = graph_protorootoid(&SimpleGraph::cycle(6)).unwrap();
        let pr = hex.preferred();
        for a in pr.groupoid().objects() {
            let r = rootoid_ortho_embed(pr, a, IDEAL_BOUND).unwrap();
            assert!(r.embedding.report.holds() && r.embedding.ideal_embedding);
        }
    }

    #[test]
    fn three_atom_mesh() {
        // ∅ below {x}, {y}, {z}
        let l = Poset::new(4, |i, j| i == j || i == 0).unwrap();
        let rows: Vec<FixedBitSet> = (0..4)
            .map(|x| {
                let mut row = FixedBitSet::with_capacity(4);
                for y in 0..4 {
                    if x == 0 || y == 0 || x != y {
                        row.insert(y);
                    }
                }
                row
            })
            .collect();
        let e = ortho_embed(&l, &rows, IDEAL_BOUND).unwrap();
        assert!(e.report.holds() && e.ideal_embedding);
    }
}
