//! Protorootoids: a groupoid acting on finite carriers plus a cocycle
//! `N(g) ⊆ carrier(cod g)` with `N(gh) = N(g) + g·N(h)`.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupoid::{Groupoid, GroupoidError, GroupoidHom, Mor, Obj, System};
use crate::ring::{subring_generated, RingElem, RingError, SignedUniverse, Universe};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProtoError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("action of `{0}` is not a bijection")]
    NotBijective(String),
    #[error("action is not functorial at ({0}, {1})")]
    NotFunctorial(String, String),
    #[error("cocycle law fails at ({0}, {1})")]
    Cocycle(String, String),
    #[error("not faithful: `{0}` has empty cocycle value")]
    NotFaithful(String),
    #[error("system is not even")]
    NotEven,
    #[error("bad generating set: {0}")]
    BadGenerators(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Groupoid, carriers, action and cocycle.
#[derive(Debug, Clone)]
pub struct Protorootoid {
    groupoid: Groupoid,
    carriers: Vec<Arc<Universe>>,
    // action[g][i] = image in carrier(cod g) of position i of carrier(dom g)
    action: Vec<Vec<u32>>,
    n: Vec<FixedBitSet>,
    // N-value to morphism, per object; None when some star repeats a value
    index: Vec<Option<HashMap<FixedBitSet, Mor>>>,
}

impl Protorootoid {
    pub fn new(
        groupoid: Groupoid,
        carriers: Vec<Arc<Universe>>,
        action: Vec<Vec<u32>>,
        n: Vec<FixedBitSet>,
    ) -> Result<Self, ProtoError> {
        if carriers.len() != groupoid.object_count() {
            return Err(ProtoError::Shape("one carrier per object".into()));
        }
        if action.len() != groupoid.morphism_count() || n.len() != groupoid.morphism_count() {
            return Err(ProtoError::Shape(
                "one action and one value per morphism".into(),
            ));
        }
        for g in groupoid.morphisms() {
            let src = carriers[groupoid.dom(g).idx()].len();
            let tgt = carriers[groupoid.cod(g).idx()].len();
            let a = &action[g.idx()];
            if a.len() != src || src != tgt {
                return Err(ProtoError::NotBijective(groupoid.name(g).into()));
            }
            let mut seen = vec![false; tgt];
            for &i in a {
                if i as usize >= tgt || seen[i as usize] {
                    return Err(ProtoError::NotBijective(groupoid.name(g).into()));
                }
                seen[i as usize] = true;
            }
            if n[g.idx()].len() != tgt {
                return Err(ProtoError::Shape(format!(
                    "value of `{}` has wrong width",
                    groupoid.name(g)
                )));
            }
        }
        let index = groupoid
            .objects()
            .map(|a| {
                let mut m = HashMap::new();
                for &g in groupoid.star(a) {
                    if m.insert(n[g.idx()].clone(), g).is_some() {
                        return None;
                    }
                }
                Some(m)
            })
            .collect();
        Ok(Protorootoid {
            groupoid,
            carriers,
            action,
            n,
            index,
        })
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn carrier(&self, a: Obj) -> &Arc<Universe> {
        &self.carriers[a.idx()]
    }

    pub fn carrier_len(&self, a: Obj) -> usize {
        self.carriers[a.idx()].len()
    }

    pub fn n(&self, g: Mor) -> &FixedBitSet {
        &self.n[g.idx()]
    }

    pub fn n_elem(&self, g: Mor) -> RingElem {
        RingElem::from_bits(self.carrier(self.groupoid.cod(g)), self.n[g.idx()].clone())
    }

    pub fn rank(&self, g: Mor) -> usize {
        self.n[g.idx()].count_ones(..)
    }

    /// Image of carrier position `i` of `dom g`.
    pub fn act_point(&self, g: Mor, i: usize) -> usize {
        self.action[g.idx()][i] as usize
    }

    pub fn action_of(&self, g: Mor) -> &[u32] {
        &self.action[g.idx()]
    }

    /// `g·X` for `X ⊆ carrier(dom g)`.
    pub fn act(&self, g: Mor, x: &FixedBitSet) -> FixedBitSet {
        let len = self.carrier_len(self.groupoid.cod(g));
        let mut out = FixedBitSet::with_capacity(len);
        for i in x.ones() {
            out.insert(self.action[g.idx()][i] as usize);
        }
        out
    }

    /// The unique `g ∈ star(a)` with `N(g) = value`, when stars are separated.
    pub fn lookup(&self, a: Obj, value: &FixedBitSet) -> Option<Mor> {
        self.index[a.idx()]
            .as_ref()
            .and_then(|m| m.get(value).copied())
    }

    /// Whether `N` separates each star.
    pub fn star_injective(&self) -> bool {
        self.index.iter().all(Option::is_some)
    }

    /// `N(g*) ∩ N(h) = ∅`, i.e. `l(gh) = l(g) + l(h)` in rank.
    pub fn compatible(&self, g: Mor, h: Mor) -> bool {
        self.groupoid.composable(g, h) && self.n(self.groupoid.inv(g)).is_disjoint(self.n(h))
    }

    /// Pairwise compatibility of a composable word, checked via ranks.
    pub fn compatible_word(&self, word: &[Mor]) -> bool {
        match self.groupoid.product(word) {
            Ok(Some(p)) => self.rank(p) == word.iter().map(|&g| self.rank(g)).sum::<usize>(),
            Ok(None) => true,
            Err(_) => false,
        }
    }

    pub fn check_action(&self) -> Result<(), ProtoError> {
        let g = &self.groupoid;
        for a in g.objects() {
            let e = g.id(a);
            if self.action[e.idx()]
                .iter()
                .enumerate()
                .any(|(i, &j)| i != j as usize)
            {
                return Err(ProtoError::NotFunctorial(
                    g.name(e).into(),
                    g.name(e).into(),
                ));
            }
        }
        for x in g.morphisms() {
            for &y in g.star(g.dom(x)) {
                let xy = g.mul(x, y);
                let ok = (0..self.carrier_len(g.dom(y)))
                    .all(|i| self.act_point(xy, i) == self.act_point(x, self.act_point(y, i)));
                if !ok {
                    return Err(ProtoError::NotFunctorial(
                        g.name(x).into(),
                        g.name(y).into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive check of `N(gh) = N(g) + g·N(h)` over composable pairs.
    pub fn check_cocycle(&self) -> Result<(), ProtoError> {
        let g = &self.groupoid;
        for x in g.morphisms() {
            for &y in g.star(g.dom(x)) {
                let mut rhs = self.act(x, self.n(y));
                rhs.symmetric_difference_with(self.n(x));
                if rhs != *self.n(g.mul(x, y)) {
                    return Err(ProtoError::Cocycle(g.name(x).into(), g.name(y).into()));
                }
            }
        }
        Ok(())
    }

    /// Non-identity morphism with empty value, if any.
    pub fn faithful_witness(&self) -> Option<Mor> {
        self.groupoid
            .morphisms()
            .find(|&g| !self.groupoid.is_identity(g) && self.n(g).is_clear())
    }

    pub fn is_faithful(&self) -> bool {
        self.faithful_witness().is_none()
    }

    pub fn require_faithful(&self) -> Result<(), ProtoError> {
        match self.faithful_witness() {
            Some(g) => Err(ProtoError::NotFaithful(self.groupoid.name(g).into())),
            None => Ok(()),
        }
    }

    /// `N ∘ θ` on the source of `θ`.
    pub fn pullback(
        &self,
        source: &Groupoid,
        theta: &GroupoidHom,
    ) -> Result<Protorootoid, ProtoError> {
        theta.validate(source, &self.groupoid)?;
        let carriers = source
            .objects()
            .map(|b| self.carriers[theta.obj(b).idx()].clone())
            .collect();
        let action = source
            .morphisms()
            .map(|h| self.action[theta.apply(h).idx()].clone())
            .collect();
        let n = source
            .morphisms()
            .map(|h| self.n[theta.apply(h).idx()].clone())
            .collect();
        Protorootoid::new(source.clone(), carriers, action, n)
    }

    /// Replace each carrier by the atoms of the subring generated by the
    /// values on its star.
    pub fn abridge(&self) -> Result<Abridged, ProtoError> {
        let g = &self.groupoid;
        let mut atoms: Vec<Vec<FixedBitSet>> = Vec::with_capacity(g.object_count());
        let mut atom_of: Vec<Vec<u32>> = Vec::with_capacity(g.object_count());
        let mut carriers = Vec::with_capacity(g.object_count());
        for a in g.objects() {
            let u = self.carrier(a);
            let gens: Vec<RingElem> = g.star(a).iter().map(|&x| self.n_elem(x)).collect();
            let sr = subring_generated(u, &gens);
            let mut which = vec![u32::MAX; u.len()];
            let mut labels = Vec::with_capacity(sr.atom_count());
            for (k, at) in sr.atoms().iter().enumerate() {
                for p in at.ones() {
                    which[p] = k as u32;
                }
                let names: Vec<&str> = at.ones().map(|p| u.label(p)).collect();
                labels.push(format!("[{}]", names.join(" ")));
            }
            carriers.push(Universe::new(labels)?);
            atoms.push(sr.atoms().to_vec());
            atom_of.push(which);
        }
        let mut action = Vec::with_capacity(g.morphism_count());
        for x in g.morphisms() {
            let (b, a) = (g.dom(x), g.cod(x));
            let mut map = Vec::with_capacity(atoms[b.idx()].len());
            for at in &atoms[b.idx()] {
                let img = self.act(x, at);
                let first = img
                    .ones()
                    .next()
                    .ok_or_else(|| ProtoError::Internal("empty atom".into()))?;
                let k = atom_of[a.idx()][first];
                if k == u32::MAX || atoms[a.idx()][k as usize] != img {
                    return Err(ProtoError::Internal(format!(
                        "`{}` does not map atoms to atoms",
                        g.name(x)
                    )));
                }
                map.push(k);
            }
            action.push(map);
        }
        let n = g
            .morphisms()
            .map(|x| {
                let a = g.cod(x);
                let mut v = FixedBitSet::with_capacity(atoms[a.idx()].len());
                for (k, at) in atoms[a.idx()].iter().enumerate() {
                    if at.is_subset(self.n(x)) {
                        v.insert(k);
                    }
                }
                v
            })
            .collect();
        let pr = Protorootoid::new(g.clone(), carriers, action, n)?;
        Ok(Abridged { pr, atoms })
    }

    pub fn dump(&self) -> ProtoDump {
        let g = &self.groupoid;
        ProtoDump {
            objects: g
                .objects()
                .map(|a| ObjDump {
                    name: g.obj_name(a).into(),
                    carrier: self.carrier(a).labels().to_vec(),
                })
                .collect(),
            morphisms: g
                .morphisms()
                .map(|x| MorDump {
                    name: g.name(x).into(),
                    dom: g.obj_name(g.dom(x)).into(),
                    cod: g.obj_name(g.cod(x)).into(),
                    n: self
                        .n(x)
                        .ones()
                        .map(|p| self.carrier(g.cod(x)).label(p).to_string())
                        .collect(),
                })
                .collect(),
        }
    }
}

/// Abridged protorootoid and, per object, the atoms in the old carrier.
#[derive(Debug, Clone)]
pub struct Abridged {
    pub pr: Protorootoid,
    pub atoms: Vec<Vec<FixedBitSet>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjDump {
    pub name: String,
    pub carrier: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorDump {
    pub name: String,
    pub dom: String,
    pub cod: String,
    #[serde(rename = "N")]
    pub n: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtoDump {
    pub objects: Vec<ObjDump>,
    pub morphisms: Vec<MorDump>,
}

/// Half-space protorootoid of a generating set.
#[derive(Debug, Clone)]
pub struct HalfSpaces {
    pub system: System,
    pub pr: Protorootoid,
    /// Per object, carrier elements as subsets of star positions.
    pub sets: Vec<Vec<FixedBitSet>>,
    /// Per object, carrier positions of the sets containing the identity.
    pub positive: Vec<FixedBitSet>,
    /// Carrier position of `H(s)` in `carrier(cod s)`, indexed by morphism.
    basic: HashMap<Mor, usize>,
}

/// `H(s) = {g ∈ star(cod s) : l(s*g) > l(g)}` as star positions.
pub fn basic_half_space(sys: &System, s: Mor) -> FixedBitSet {
    let g = sys.groupoid();
    let a = g.cod(s);
    let si = g.inv(s);
    let mut out = FixedBitSet::with_capacity(g.star(a).len());
    for (p, &x) in g.star(a).iter().enumerate() {
        if sys.length(g.mul(si, x)) > sys.length(x) {
            out.insert(p);
        }
    }
    out
}

fn translate(g: &Groupoid, x: Mor, set: &FixedBitSet) -> FixedBitSet {
    // set ⊆ star(dom x) → x·set ⊆ star(cod x)
    let src = g.star(g.dom(x));
    let mut out = FixedBitSet::with_capacity(g.star(g.cod(x)).len());
    for p in set.ones() {
        out.insert(g.star_pos(g.mul(x, src[p])));
    }
    out
}

/// Half-space construction on a generating set.
pub fn build_from_c0(sys: &System) -> Result<HalfSpaces, ProtoError> {
    let g = sys.groupoid();
    if sys.gens().iter().any(|&s| g.is_identity(s)) {
        return Err(ProtoError::BadGenerators(
            "identity in generating set".into(),
        ));
    }
    let basic_sets: HashMap<Mor, FixedBitSet> = sys
        .gens()
        .iter()
        .map(|&s| (s, basic_half_space(sys, s)))
        .collect();
    let mut sets: Vec<Vec<FixedBitSet>> = Vec::with_capacity(g.object_count());
    let mut lookup: Vec<HashMap<FixedBitSet, usize>> = Vec::with_capacity(g.object_count());
    let mut labels: Vec<Vec<String>> = Vec::with_capacity(g.object_count());
    for a in g.objects() {
        let mut list = Vec::new();
        let mut idx = HashMap::new();
        let mut lab = Vec::new();
        for &x in g.star(a) {
            for s in sys.gens_at(g.dom(x)) {
                let t = translate(g, x, &basic_sets[&s]);
                if !idx.contains_key(&t) {
                    idx.insert(t.clone(), list.len());
                    list.push(t);
                    lab.push(if g.is_identity(x) {
                        format!("H({})", g.name(s))
                    } else {
                        format!("{}·H({})", g.name(x), g.name(s))
                    });
                }
            }
        }
        sets.push(list);
        lookup.push(idx);
        labels.push(lab);
    }
    let mut basic = HashMap::new();
    for &s in sys.gens() {
        basic.insert(s, lookup[g.cod(s).idx()][&basic_sets[&s]]);
    }
    let positive: Vec<FixedBitSet> = g
        .objects()
        .map(|a| {
            let id_pos = g.star_pos(g.id(a));
            let mut p = FixedBitSet::with_capacity(sets[a.idx()].len());
            for (k, set) in sets[a.idx()].iter().enumerate() {
                if set.contains(id_pos) {
                    p.insert(k);
                }
            }
            p
        })
        .collect();
    let mut action = Vec::with_capacity(g.morphism_count());
    for x in g.morphisms() {
        let b = g.dom(x);
        let a = g.cod(x);
        let mut map = Vec::with_capacity(sets[b.idx()].len());
        for set in &sets[b.idx()] {
            let t = translate(g, x, set);
            let k = lookup[a.idx()]
                .get(&t)
                .ok_or_else(|| ProtoError::Internal("translate left the orbit".into()))?;
            map.push(*k as u32);
        }
        action.push(map);
    }
    let carriers: Vec<Arc<Universe>> = labels
        .into_iter()
        .map(|l| Universe::new(l).map_err(ProtoError::from))
        .collect::<Result<_, _>>()?;
    let n: Vec<FixedBitSet> = g
        .morphisms()
        .map(|x| {
            let mut v = FixedBitSet::with_capacity(sets[g.cod(x).idx()].len());
            for p in positive[g.dom(x).idx()].ones() {
                v.insert(action[x.idx()][p] as usize);
            }
            v.symmetric_difference_with(&positive[g.cod(x).idx()]);
            v
        })
        .collect();
    let pr = Protorootoid::new(g.clone(), carriers, action, n)?;
    Ok(HalfSpaces {
        system: sys.clone(),
        pr,
        sets,
        positive,
        basic,
    })
}

impl HalfSpaces {
    /// Carrier position of `H(s)`.
    pub fn basic(&self, s: Mor) -> usize {
        self.basic[&s]
    }

    /// Weak exchange condition with the equivalent forms cross-checked.
    pub fn wec_check(&self) -> WecReport {
        let sys = &self.system;
        let g = sys.groupoid();
        let pr = &self.pr;
        let witness = g
            .morphisms()
            .find(|&x| pr.rank(x) != 2 * sys.length(x) as usize);
        let cond_ii = sys.gens().iter().all(|&s| pr.rank(s) == 2);
        let cond_iii = g.morphisms().all(|x| {
            let mut v = pr.n(x).clone();
            v.intersect_with(&self.positive[g.cod(x).idx()]);
            v.count_ones(..) == sys.length(x) as usize
        });
        let mut cond_iv = true;
        let mut cond_v = true;
        for x in g.morphisms() {
            for r in sys.gens_at(g.dom(x)) {
                let xr = g.mul(x, r);
                let image = pr.act_point(x, self.basic(r));
                for &s in sys.gens() {
                    if g.dom(s) != g.cod(x) {
                        continue;
                    }
                    let sx = g.mul(s, x);
                    let sxr = g.mul(s, xr);
                    let premise =
                        sys.length(xr) > sys.length(x) && sys.length(sxr) <= sys.length(sx);
                    let equal = image == self.basic(g.inv(s));
                    if premise && !equal {
                        cond_iv = false;
                    }
                    if premise != equal {
                        cond_v = false;
                    }
                }
            }
        }
        let holds = witness.is_none();
        let consistent = [cond_ii, cond_iii, cond_iv, cond_v]
            .iter()
            .all(|&c| c == holds);
        WecReport {
            holds,
            witness,
            cond_ii,
            cond_iii,
            cond_iv,
            cond_v,
            consistent,
        }
    }

    /// Even variant: carrier of `±` pairs, each named by its positive member.
    pub fn even_variant(&self) -> Result<EvenVariant, ProtoError> {
        if !self.system.is_even() {
            return Err(ProtoError::NotEven);
        }
        let g = self.system.groupoid();
        let mut signed = Vec::with_capacity(g.object_count());
        let mut projection = Vec::with_capacity(g.object_count());
        let mut carriers = Vec::with_capacity(g.object_count());
        for a in g.objects() {
            let sets = &self.sets[a.idx()];
            let len = g.star(a).len();
            let pos: HashMap<&FixedBitSet, usize> =
                sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
            let mut negation = Vec::with_capacity(sets.len());
            for s in sets {
                let mut c = s.clone();
                c.toggle_range(..len);
                let j = pos.get(&c).ok_or_else(|| {
                    ProtoError::Internal("complement of a half-space is missing".into())
                })?;
                negation.push(*j);
            }
            let positives = self.positive[a.idx()].clone();
            let su = SignedUniverse::new(
                self.pr.carrier(a).clone(),
                negation.clone(),
                positives.clone(),
            )?;
            // pair index = rank of the positive member among positives
            let mut pair_of_pos = vec![u32::MAX; sets.len()];
            let mut labels = Vec::new();
            for (k, p) in positives.ones().enumerate() {
                pair_of_pos[p] = k as u32;
                labels.push(format!("±{}", self.pr.carrier(a).label(p)));
            }
            let proj: Vec<u32> = (0..sets.len())
                .map(|i| {
                    if positives.contains(i) {
                        pair_of_pos[i]
                    } else {
                        pair_of_pos[negation[i]]
                    }
                })
                .collect();
            carriers.push(Universe::new(labels)?);
            signed.push(su);
            projection.push(proj);
        }
        let mut action = Vec::with_capacity(g.morphism_count());
        for x in g.morphisms() {
            let b = g.dom(x);
            let a = g.cod(x);
            let map: Vec<u32> = self.positive[b.idx()]
                .ones()
                .map(|p| projection[a.idx()][self.pr.act_point(x, p)])
                .collect();
            action.push(map);
        }
        let n: Vec<FixedBitSet> = g
            .morphisms()
            .map(|x| {
                let a = g.cod(x);
                let mut v = FixedBitSet::with_capacity(carriers[a.idx()].len());
                for p in self.pr.n(x).ones() {
                    v.insert(projection[a.idx()][p] as usize);
                }
                v
            })
            .collect();
        let pr = Protorootoid::new(g.clone(), carriers, action, n)?;
        for x in g.morphisms() {
            if self.pr.rank(x) != 2 * pr.rank(x) {
                return Err(ProtoError::Internal(format!(
                    "halving fails at `{}`",
                    g.name(x)
                )));
            }
        }
        Ok(EvenVariant {
            pr,
            signed,
            projection,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WecReport {
    pub holds: bool,
    pub witness: Option<Mor>,
    pub cond_ii: bool,
    pub cond_iii: bool,
    pub cond_iv: bool,
    pub cond_v: bool,
    /// All equivalent forms agree with the main verdict.
    pub consistent: bool,
}

#[derive(Debug, Clone)]
pub struct EvenVariant {
    pub pr: Protorootoid,
    pub signed: Vec<SignedUniverse>,
    /// Per object, carrier position ↦ pair index.
    pub projection: Vec<Vec<u32>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{perm_group, DEFAULT_MORPHISM_BOUND};

    fn cyclic_system(n: u32) -> System {
        let p: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
        let q: Vec<u32> = (0..n).map(|i| (i + n - 1) % n).collect();
        let g = perm_group(&[("x", p), ("y", q)], DEFAULT_MORPHISM_BOUND).unwrap();
        let gens = vec![
            g.morphism_by_name("x").unwrap(),
            g.morphism_by_name("y").unwrap(),
        ];
        System::new(g, gens).unwrap()
    }

    // direct evaluation of the half-space definitions on the cyclic group
    #[test]
    fn cyclic_four_half_spaces() {
        let sys = cyclic_system(4);
        let g = sys.groupoid();
        let x = g.morphism_by_name("x").unwrap();
        let y = g.morphism_by_name("y").unwrap();
        let one = g.id(Obj(0));
        let hx = basic_half_space(&sys, x);
        let members: Vec<Mor> = hx.ones().map(|p| g.star(Obj(0))[p]).collect();
        let mut expect = vec![one, y];
        expect.sort();
        let mut got = members.clone();
        got.sort();
        assert_eq!(got, expect);
        let j = build_from_c0(&sys).unwrap();
        assert_eq!(j.pr.carrier_len(Obj(0)), 4);
        assert_eq!(j.pr.rank(x), 2);
        assert!(j.pr.n(one).is_clear());
        // N(x) = {H(x), x·H(x*)} = {{1,x³},{x,x²}}
        let hx_pos = j.basic(x);
        let xhx = j.pr.act_point(x, j.basic(y));
        assert_eq!(
            j.sets[0][xhx]
                .ones()
                .map(|p| g.star(Obj(0))[p])
                .collect::<std::collections::BTreeSet<_>>(),
            [x, g.mul(x, x)].into_iter().collect()
        );
        assert!(j.pr.n(x).contains(hx_pos) && j.pr.n(x).contains(xhx));
        j.pr.check_cocycle().unwrap();
        j.pr.check_action().unwrap();
        assert!(j.pr.is_faithful());
        let w = j.wec_check();
        assert!(w.holds && w.consistent);
        let ev = j.even_variant().unwrap();
        assert_eq!(ev.pr.carrier_len(Obj(0)), 2);
        assert_eq!(ev.pr.rank(x), 1);
        ev.pr.check_cocycle().unwrap();
    }

    #[test]
    fn identity_in_and_out_of_basic_half_space() {
        for n in [3u32, 4, 5, 6] {
            let sys = cyclic_system(n);
            let g = sys.groupoid();
            for &s in sys.gens() {
                let h = basic_half_space(&sys, s);
                assert!(h.contains(g.star_pos(g.id(Obj(0)))));
                assert!(!h.contains(g.star_pos(s)));
            }
        }
    }

    #[test]
    fn odd_cyclic_is_not_even() {
        let j = build_from_c0(&cyclic_system(3)).unwrap();
        assert_eq!(j.even_variant().unwrap_err(), ProtoError::NotEven);
    }

    #[test]
    fn all_non_identity_generators() {
        // every non-identity element as generator: values pairwise incomparable
        let sys = cyclic_system(5);
        let g = sys.groupoid().clone();
        let gens: Vec<Mor> = g.morphisms().filter(|&m| !g.is_identity(m)).collect();
        let all = System::new(g.clone(), gens).unwrap();
        let j = build_from_c0(&all).unwrap();
        j.pr.check_cocycle().unwrap();
        let w = j.wec_check();
        assert!(w.holds && w.consistent);
    }

    #[test]
    fn constant_zero_is_not_faithful() {
        let g = perm_group(&[("x", vec![1, 0])], 10).unwrap();
        let u = Universe::new(["p"]).unwrap();
        let pr = Protorootoid::new(
            g.clone(),
            vec![u],
            g.morphisms().map(|_| vec![0]).collect(),
            g.morphisms()
                .map(|_| FixedBitSet::with_capacity(1))
                .collect(),
        )
        .unwrap();
        pr.check_cocycle().unwrap();
        assert!(!pr.is_faithful());
    }

    #[test]
    fn abridgement_is_idempotent_and_matches_even() {
        let j = build_from_c0(&cyclic_system(4)).unwrap();
        let a1 = j.pr.abridge().unwrap();
        let a2 = a1.pr.abridge().unwrap();
        assert_eq!(a1.pr.carrier_len(Obj(0)), a2.pr.carrier_len(Obj(0)));
        for g in a1.pr.groupoid().morphisms() {
            assert_eq!(a1.pr.n(g), a2.pr.n(g));
        }
        let ev = j.even_variant().unwrap();
        let ae = ev.pr.abridge().unwrap();
        assert_eq!(ae.pr.carrier_len(Obj(0)), a1.pr.carrier_len(Obj(0)));
        a1.pr.check_cocycle().unwrap();
    }

    #[test]
    fn pullback_along_identity() {
        let j = build_from_c0(&cyclic_system(4)).unwrap();
        let g = j.pr.groupoid().clone();
        let p = j.pr.pullback(&g, &GroupoidHom::identity(&g)).unwrap();
        for m in g.morphisms() {
            assert_eq!(p.n(m), j.pr.n(m));
        }
    }

    #[test]
    fn dump_shape() {
        let j = build_from_c0(&cyclic_system(4)).unwrap();
        let d = j.pr.dump();
        assert_eq!(d.objects.len(), 1);
        assert_eq!(d.morphisms.len(), 4);
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"N\""));
    }
}
