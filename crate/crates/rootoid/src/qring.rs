//! Protorootoid freely attached to a groupoid with a preorder on each star.
//!
//! At object `a` the ring is presented by generators `(a, x, y)` with
//! `cod x = a`, `cod y = dom x`, modulo
//! `(a,x,yz) + (a,x,y) + (a,xy,z)` and `(a,x,y)(a,x,z) + (a,x,y)` for `y ≤ z`.
//! Atoms are the nonempty generator assignments killing every relator.

use std::collections::{BTreeSet, HashMap};

use fixedbitset::FixedBitSet;

use crate::groupoid::{Groupoid, Mor, Obj};
use crate::proto::{ProtoError, Protorootoid};
use crate::ring::{RingError, Universe, DEFAULT_FREE_BOUND};

/// Result of the construction with its generator bookkeeping.
#[derive(Debug, Clone)]
pub struct QConstruction {
    pub pr: Protorootoid,
    /// Per object, generator list `(x, y)`.
    pub generators: Vec<Vec<(Mor, Mor)>>,
    /// Per object, atom assignments as generator bitmasks.
    pub atoms: Vec<Vec<u32>>,
}

fn gen_label(g: &Groupoid, a: Obj, x: Mor, y: Mor) -> String {
    format!("({},{},{})", g.obj_name(a), g.name(x), g.name(y))
}

/// Builds the presented protorootoid. `leq(y, z)` is the preorder on a star.
pub fn q_construction<F>(g: &Groupoid, leq: F, bound: usize) -> Result<QConstruction, ProtoError>
where
    F: Fn(Mor, Mor) -> bool,
{
    let bound = bound.min(24);
    let mut generators = Vec::with_capacity(g.object_count());
    let mut gen_index: Vec<HashMap<(Mor, Mor), usize>> = Vec::with_capacity(g.object_count());
    for a in g.objects() {
        let mut list = Vec::new();
        let mut idx = HashMap::new();
        for &x in g.star(a) {
            for &y in g.star(g.dom(x)) {
                idx.insert((x, y), list.len());
                list.push((x, y));
            }
        }
        if list.len() > bound {
            return Err(RingError::TooManyGenerators {
                got: list.len(),
                bound,
            }
            .into());
        }
        generators.push(list);
        gen_index.push(idx);
    }
    let mut atoms: Vec<Vec<u32>> = Vec::with_capacity(g.object_count());
    for a in g.objects() {
        let idx = &gen_index[a.idx()];
        // relators as index triples (xor) and implications
        let mut xor3 = Vec::new();
        let mut implies = Vec::new();
        for &x in g.star(a) {
            let b = g.dom(x);
            for &y in g.star(b) {
                for &z in g.star(g.dom(y)) {
                    xor3.push((idx[&(x, g.mul(y, z))], idx[&(x, y)], idx[&(g.mul(x, y), z)]));
                }
                for &z in g.star(b) {
                    if leq(y, z) {
                        implies.push((idx[&(x, y)], idx[&(x, z)]));
                    }
                }
            }
        }
        let n = generators[a.idx()].len();
        let bit = |m: u32, i: usize| (m >> i) & 1;
        let found: Vec<u32> = (1u32..(1u32 << n))
            .filter(|&m| {
                xor3.iter()
                    .all(|&(i, j, k)| bit(m, i) ^ bit(m, j) ^ bit(m, k) == 0)
                    && implies.iter().all(|&(i, j)| bit(m, i) <= bit(m, j))
            })
            .collect();
        atoms.push(found);
    }
    let carriers = g
        .objects()
        .map(|a| {
            let gens = &generators[a.idx()];
            let labels = atoms[a.idx()].iter().map(|&m| {
                let on: Vec<String> = (0..gens.len())
                    .filter(|&i| m >> i & 1 == 1)
                    .map(|i| gen_label(g, a, gens[i].0, gens[i].1))
                    .collect();
                format!("e{{{}}}", on.join(","))
            });
            Universe::new(labels).map_err(ProtoError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let atom_pos: Vec<HashMap<u32, usize>> = atoms
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, &m)| (m, i)).collect())
        .collect();
    let mut action = Vec::with_capacity(g.morphism_count());
    for x in g.morphisms() {
        let (b, a) = (g.dom(x), g.cod(x));
        let xi = g.inv(x);
        let mut map = Vec::with_capacity(atoms[b.idx()].len());
        for &mb in &atoms[b.idx()] {
            // Y_a(a, u, y) = Y_b(b, x*u, y)
            let mut ma = 0u32;
            for (i, &(u, y)) in generators[a.idx()].iter().enumerate() {
                let j = gen_index[b.idx()][&(g.mul(xi, u), y)];
                if mb >> j & 1 == 1 {
                    ma |= 1 << i;
                }
            }
            let k = atom_pos[a.idx()]
                .get(&ma)
                .ok_or_else(|| ProtoError::Internal("action leaves the atom set".into()))?;
            map.push(*k as u32);
        }
        action.push(map);
    }
    let n = g
        .morphisms()
        .map(|x| {
            let a = g.cod(x);
            let i = gen_index[a.idx()][&(g.id(a), x)];
            let mut v = FixedBitSet::with_capacity(atoms[a.idx()].len());
            for (k, &m) in atoms[a.idx()].iter().enumerate() {
                if m >> i & 1 == 1 {
                    v.insert(k);
                }
            }
            v
        })
        .collect();
    let pr = Protorootoid::new(g.clone(), carriers, action, n)?;
    Ok(QConstruction {
        pr,
        generators,
        atoms,
    })
}

/// Antichain preorder: only reflexive relations.
pub fn antichain(y: Mor, z: Mor) -> bool {
    y == z
}

/// Construction with the default generator bound.
pub fn q_construction_default<F: Fn(Mor, Mor) -> bool>(
    g: &Groupoid,
    leq: F,
) -> Result<QConstruction, ProtoError> {
    q_construction(g, leq, DEFAULT_FREE_BOUND)
}

/// Comparison with the explicit model on a connected, simply connected
/// groupoid: the ring generated by `b + c` inside the free ring on objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModelReport {
    /// Atom count of the model ring.
    pub model_atoms: usize,
    /// Atom count at each object of the construction.
    pub atoms: Vec<usize>,
    /// Atom signatures agree at every object.
    pub rings_match: bool,
    /// Transport along every morphism is the identity on model atoms.
    pub action_matches: bool,
}

impl FreeModelReport {
    pub fn holds(&self) -> bool {
        self.rings_match && self.action_matches
    }
}

/// Model atoms are classes `{σ, V∖σ}` of proper nonempty subsets `σ ⊆ V`,
/// with signature `(b,c) ↦ σ(b) + σ(c)`; construction atoms have signature
/// `(b,c) ↦ Y(a, (a,b), (b,c))`.
pub fn compare_with_free_model(q: &QConstruction) -> Result<FreeModelReport, ProtoError> {
    let g = q.pr.groupoid();
    let k = g.object_count();
    if k > 20 {
        return Err(ProtoError::Shape("too many objects for the model".into()));
    }
    let mut hom = vec![vec![None; k]; k];
    for m in g.morphisms() {
        let slot = &mut hom[g.cod(m).idx()][g.dom(m).idx()];
        if slot.is_some() {
            return Err(ProtoError::Shape("groupoid is not simply connected".into()));
        }
        *slot = Some(m);
    }
    if hom.iter().flatten().any(Option::is_none) {
        return Err(ProtoError::Shape("groupoid is not connected".into()));
    }
    let hom = |b: usize, c: usize| hom[b][c].expect("checked");
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|b| (0..k).map(move |c| (b, c))).collect();
    let mut model: BTreeSet<Vec<bool>> = BTreeSet::new();
    for sigma in 0u32..(1 << k) {
        let sig: Vec<bool> = pairs
            .iter()
            .map(|&(b, c)| (sigma >> b & 1) != (sigma >> c & 1))
            .collect();
        if sig.iter().any(|&v| v) {
            model.insert(sig);
        }
    }
    let signature = |a: Obj, mask: u32| -> Vec<bool> {
        let gens = &q.generators[a.idx()];
        pairs
            .iter()
            .map(|&(b, c)| {
                let key = (hom(a.idx(), b), hom(b, c));
                let i = gens
                    .iter()
                    .position(|&p| p == key)
                    .expect("generator present");
                mask >> i & 1 == 1
            })
            .collect()
    };
    let mut rings_match = true;
    let mut sigs: Vec<Vec<Vec<bool>>> = Vec::with_capacity(k);
    for a in g.objects() {
        let s: Vec<Vec<bool>> = q.atoms[a.idx()].iter().map(|&m| signature(a, m)).collect();
        let set: BTreeSet<Vec<bool>> = s.iter().cloned().collect();
        if set != model || set.len() != s.len() {
            rings_match = false;
        }
        sigs.push(s);
    }
    let mut action_matches = true;
    for x in g.morphisms() {
        let (b, a) = (g.dom(x), g.cod(x));
        for (i, s) in sigs[b.idx()].iter().enumerate() {
            if sigs[a.idx()][q.pr.act_point(x, i)] != *s {
                action_matches = false;
            }
        }
    }
    Ok(FreeModelReport {
        model_atoms: model.len(),
        atoms: q.atoms.iter().map(Vec::len).collect(),
        rings_match,
        action_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{close, pair_groupoid_from_graph, SimpleGraph};

    fn complete_pair(n: usize) -> Groupoid {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .collect();
        let g = SimpleGraph::new(names, &edges).unwrap();
        pair_groupoid_from_graph(&g).unwrap().0.groupoid().clone()
    }

    #[test]
    fn trivial_groupoid_gives_zero_ring() {
        let g = close::<u8, _, _>(vec!["a".into()], &[], |_| 0, |_, _| 0, 4).unwrap();
        let q = q_construction_default(&g, antichain).unwrap();
        assert_eq!(q.pr.carrier_len(Obj(0)), 0);
    }

    #[test]
    fn two_objects_match_model() {
        let g = complete_pair(2);
        let q = q_construction_default(&g, antichain).unwrap();
        q.pr.check_cocycle().unwrap();
        q.pr.check_action().unwrap();
        let r = compare_with_free_model(&q).unwrap();
        assert!(r.holds());
        assert_eq!(r.model_atoms, 1);
    }

    #[test]
    fn three_objects_match_model() {
        let g = complete_pair(3);
        let q = q_construction_default(&g, antichain).unwrap();
        q.pr.check_cocycle().unwrap();
        let r = compare_with_free_model(&q).unwrap();
        assert!(r.holds());
        // free non-unital ring on two generators
        assert_eq!(r.model_atoms, 3);
        assert_eq!(r.atoms, vec![3, 3, 3]);
    }

    #[test]
    fn generator_bound() {
        let g = complete_pair(5);
        assert!(matches!(
            q_construction(&g, antichain, 16),
            Err(ProtoError::Ring(RingError::TooManyGenerators { .. }))
        ));
    }

    #[test]
    fn chain_preorder_adds_relations() {
        // on a two-element group, ordering 1 ≤ x forces N(1) below N(x), which is automatic
        let g = crate::groupoid::perm_group(&[("x", vec![1, 0])], 4).unwrap();
        let free = q_construction_default(&g, antichain).unwrap();
        let ordered = q_construction_default(&g, |y, z| y == z || g.is_identity(y)).unwrap();
        assert!(ordered.pr.carrier_len(Obj(0)) <= free.pr.carrier_len(Obj(0)));
        ordered.pr.check_cocycle().unwrap();
    }
}
