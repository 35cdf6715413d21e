//! Finite groupoids with full composition tables.
//!
//! Stars are codomain stars: `star(a) = {g : cod g = a}`. A product `gh`
//! is defined when `dom g = cod h` and means "apply `h`, then `g`".

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of morphisms produced by a closure.
pub const DEFAULT_MORPHISM_BOUND: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Obj(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Mor(pub u32);

impl Obj {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl Mor {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("closure exceeded {bound} morphisms")]
    SizeBound { bound: usize },
    #[error("inconsistent structure: {0}")]
    Inconsistent(String),
    #[error("morphisms `{0}` and `{1}` are not composable")]
    NotComposable(String, String),
    #[error("groupoid is not connected")]
    NotConnected,
    #[error("bad generating set: {0}")]
    BadGenerators(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("not a homomorphism: {0}")]
    BadHom(String),
}

#[derive(Clone)]
pub struct Groupoid {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    inv: Vec<Mor>,
    ident: Vec<Mor>,
    stars: Vec<Vec<Mor>>,
    star_pos: Vec<u32>,
    // table[g][star_pos[h]] = gh for h in star(dom g)
    table: Vec<Vec<Mor>>,
}

impl fmt::Debug for Groupoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Groupoid")
            .field("objects", &self.obj_names.len())
            .field("morphisms", &self.mor_names.len())
            .finish()
    }
}

impl Groupoid {
    /// Build from an explicit morphism list and a composition rule.
    ///
    /// `compose(g, h)` is only called with `dom g == cod h`.
    pub fn from_parts<F>(
        obj_names: Vec<String>,
        mor_names: Vec<String>,
        dom: Vec<Obj>,
        cod: Vec<Obj>,
        mut compose: F,
    ) -> Result<Self, GroupoidError>
    where
        F: FnMut(Mor, Mor) -> Mor,
    {
        let n = mor_names.len();
        if dom.len() != n || cod.len() != n {
            return Err(GroupoidError::Inconsistent(
                "dom/cod lengths differ from morphism count".into(),
            ));
        }
        let k = obj_names.len();
        if dom.iter().chain(cod.iter()).any(|o| o.idx() >= k) {
            return Err(GroupoidError::Inconsistent(
                "object index out of range".into(),
            ));
        }
        let mut stars = vec![Vec::new(); k];
        let mut star_pos = vec![0u32; n];
        for g in 0..n {
            let c = cod[g].idx();
            star_pos[g] = stars[c].len() as u32;
            stars[c].push(Mor(g as u32));
        }
        let mut table = Vec::with_capacity(n);
        for g in 0..n {
            let d = dom[g].idx();
            let mut row = Vec::with_capacity(stars[d].len());
            for &h in &stars[d] {
                let gh = compose(Mor(g as u32), h);
                if gh.idx() >= n || dom[gh.idx()] != dom[h.idx()] || cod[gh.idx()] != cod[g] {
                    return Err(GroupoidError::Inconsistent(format!(
                        "product of `{}` and `{}` has wrong ends",
                        mor_names[g],
                        mor_names[h.idx()]
                    )));
                }
                row.push(gh);
            }
            table.push(row);
        }
        let mut ident = vec![Mor(u32::MAX); k];
        for a in 0..k {
            for &e in &stars[a] {
                if dom[e.idx()].idx() == a && table[e.idx()][star_pos[e.idx()] as usize] == e {
                    ident[a] = e;
                    break;
                }
            }
            if ident[a].0 == u32::MAX {
                return Err(GroupoidError::Inconsistent(format!(
                    "object `{}` has no identity",
                    obj_names[a]
                )));
            }
        }
        let mut inv = vec![Mor(u32::MAX); n];
        for g in 0..n {
            let d = dom[g].idx();
            let target = ident[cod[g].idx()];
            if let Some(pos) = table[g].iter().position(|&x| x == target) {
                inv[g] = stars[d][pos];
            } else {
                return Err(GroupoidError::Inconsistent(format!(
                    "`{}` has no inverse",
                    mor_names[g]
                )));
            }
        }
        Ok(Groupoid {
            obj_names,
            mor_names,
            dom,
            cod,
            inv,
            ident,
            stars,
            star_pos,
            table,
        })
    }

    pub fn object_count(&self) -> usize {
        self.obj_names.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.mor_names.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> {
        (0..self.obj_names.len() as u32).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> {
        (0..self.mor_names.len() as u32).map(Mor)
    }

    pub fn obj_name(&self, a: Obj) -> &str {
        &self.obj_names[a.idx()]
    }

    pub fn obj_names(&self) -> &[String] {
        &self.obj_names
    }

    pub fn name(&self, g: Mor) -> &str {
        &self.mor_names[g.idx()]
    }

    pub fn object_by_name(&self, name: &str) -> Option<Obj> {
        self.obj_names
            .iter()
            .position(|n| n == name)
            .map(|i| Obj(i as u32))
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<Mor> {
        self.mor_names
            .iter()
            .position(|n| n == name)
            .map(|i| Mor(i as u32))
    }

    pub fn dom(&self, g: Mor) -> Obj {
        self.dom[g.idx()]
    }

    pub fn cod(&self, g: Mor) -> Obj {
        self.cod[g.idx()]
    }

    pub fn inv(&self, g: Mor) -> Mor {
        self.inv[g.idx()]
    }

    pub fn id(&self, a: Obj) -> Mor {
        self.ident[a.idx()]
    }

    pub fn is_identity(&self, g: Mor) -> bool {
        self.ident[self.cod[g.idx()].idx()] == g
    }

    pub fn star(&self, a: Obj) -> &[Mor] {
        &self.stars[a.idx()]
    }

    /// Position of `g` inside `star(cod g)`.
    pub fn star_pos(&self, g: Mor) -> usize {
        self.star_pos[g.idx()] as usize
    }

    /// Morphisms with domain `a`.
    pub fn dom_star(&self, a: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.stars[a.idx()].iter().map(move |&g| self.inv(g))
    }

    /// Loops at `a`.
    pub fn vertex_group(&self, a: Obj) -> Vec<Mor> {
        self.stars[a.idx()]
            .iter()
            .copied()
            .filter(|&g| self.dom(g) == a)
            .collect()
    }

    pub fn composable(&self, g: Mor, h: Mor) -> bool {
        self.dom(g) == self.cod(h)
    }

    pub fn compose(&self, g: Mor, h: Mor) -> Option<Mor> {
        if self.composable(g, h) {
            Some(self.table[g.idx()][self.star_pos(h)])
        } else {
            None
        }
    }

    /// `gh`; panics when not composable.
    pub fn mul(&self, g: Mor, h: Mor) -> Mor {
        self.compose(g, h).unwrap_or_else(|| {
            panic!(
                "`{}` and `{}` are not composable",
                self.name(g),
                self.name(h)
            )
        })
    }

    pub fn try_mul(&self, g: Mor, h: Mor) -> Result<Mor, GroupoidError> {
        self.compose(g, h)
            .ok_or_else(|| GroupoidError::NotComposable(self.name(g).into(), self.name(h).into()))
    }

    /// Product `w[0] w[1] … w[n-1]`; `None` for the empty word.
    pub fn product(&self, word: &[Mor]) -> Result<Option<Mor>, GroupoidError> {
        let mut it = word.iter().rev();
        let Some(&first) = it.next() else {
            return Ok(None);
        };
        let mut acc = first;
        for &g in it {
            acc = self.try_mul(g, acc)?;
        }
        Ok(Some(acc))
    }

    /// Connected components as object lists, in order of first object.
    pub fn components(&self) -> Vec<Vec<Obj>> {
        let k = self.object_count();
        let mut seen = vec![false; k];
        let mut out = Vec::new();
        for a in 0..k {
            if seen[a] {
                continue;
            }
            let comp: Vec<Obj> = {
                let mut objs: Vec<Obj> = self.stars[a]
                    .iter()
                    .map(|&g| self.dom(g))
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect();
                objs.sort();
                objs
            };
            for o in &comp {
                seen[o.idx()] = true;
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Exhaustive check of the groupoid axioms.
    pub fn check_axioms(&self) -> Result<(), GroupoidError> {
        for g in self.morphisms() {
            let gi = self.inv(g);
            if self.inv(gi) != g || self.cod(gi) != self.dom(g) {
                return Err(GroupoidError::Inconsistent(format!(
                    "inverse of `{}`",
                    self.name(g)
                )));
            }
            if self.mul(g, gi) != self.id(self.cod(g)) || self.mul(gi, g) != self.id(self.dom(g)) {
                return Err(GroupoidError::Inconsistent(format!(
                    "`{}` times inverse",
                    self.name(g)
                )));
            }
            if self.mul(self.id(self.cod(g)), g) != g || self.mul(g, self.id(self.dom(g))) != g {
                return Err(GroupoidError::Inconsistent(format!(
                    "identity law at `{}`",
                    self.name(g)
                )));
            }
            for &h in self.star(self.dom(g)) {
                let gh = self.mul(g, h);
                if self.inv(gh) != self.mul(self.inv(h), gi) {
                    return Err(GroupoidError::Inconsistent("inverse of product".into()));
                }
                for &k in self.star(self.dom(h)) {
                    if self.mul(gh, k) != self.mul(g, self.mul(h, k)) {
                        return Err(GroupoidError::Inconsistent(format!(
                            "associativity at ({}, {}, {})",
                            self.name(g),
                            self.name(h),
                            self.name(k)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Sub-groupoid spanned by a morphism set closed under products and inverses.
    ///
    /// Returns the sub-groupoid and its inclusion. Objects are those touched.
    pub fn restrict(&self, mors: &[Mor]) -> Result<(Groupoid, GroupoidHom), GroupoidError> {
        let mut member = vec![false; self.morphism_count()];
        for &g in mors {
            member[g.idx()] = true;
        }
        let mut objs: Vec<Obj> = mors
            .iter()
            .flat_map(|&g| [self.dom(g), self.cod(g)])
            .collect();
        objs.sort();
        objs.dedup();
        let mut obj_index = HashMap::new();
        for (i, &o) in objs.iter().enumerate() {
            obj_index.insert(o, i as u32);
        }
        let mut list: Vec<Mor> = mors.to_vec();
        list.sort();
        list.dedup();
        let mut pos = HashMap::new();
        for (i, &g) in list.iter().enumerate() {
            pos.insert(g, i as u32);
        }
        for &g in &list {
            if !member[self.inv(g).idx()] {
                return Err(GroupoidError::Inconsistent(format!(
                    "`{}` lacks its inverse",
                    self.name(g)
                )));
            }
            for &h in &list {
                if self.composable(g, h) && !member[self.mul(g, h).idx()] {
                    return Err(GroupoidError::Inconsistent(format!(
                        "product of `{}` and `{}` escapes",
                        self.name(g),
                        self.name(h)
                    )));
                }
            }
        }
        for &o in &objs {
            if !member[self.id(o).idx()] {
                return Err(GroupoidError::Inconsistent(format!(
                    "missing identity at `{}`",
                    self.obj_name(o)
                )));
            }
        }
        let sub = Groupoid::from_parts(
            objs.iter().map(|&o| self.obj_name(o).to_string()).collect(),
            list.iter().map(|&g| self.name(g).to_string()).collect(),
            list.iter().map(|&g| Obj(obj_index[&self.dom(g)])).collect(),
            list.iter().map(|&g| Obj(obj_index[&self.cod(g)])).collect(),
            |g, h| Mor(pos[&self.mul(list[g.idx()], list[h.idx()])]),
        )?;
        let hom = GroupoidHom {
            obj_map: objs,
            mor_map: list,
        };
        Ok((sub, hom))
    }
}

/// Generator description for [`close`].
#[derive(Debug, Clone)]
pub struct GenSpec<K> {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
    pub key: K,
}

/// Closure of generators under composition.
///
/// Morphisms are interned by `(dom, cod, key)`. `mul(kg, kh)` must return
/// the key of `gh`. Morphisms are named by a shortest word in the
/// generators, built by breadth-first left multiplication.
pub fn close<K, I, M>(
    obj_names: Vec<String>,
    gens: &[GenSpec<K>],
    identity_key: I,
    mul: M,
    bound: usize,
) -> Result<Groupoid, GroupoidError>
where
    K: Clone + Eq + Hash,
    I: Fn(usize) -> K,
    M: Fn(&K, &K) -> K,
{
    let k = obj_names.len();
    for g in gens {
        if g.dom >= k || g.cod >= k {
            return Err(GroupoidError::UnknownObject(g.name.clone()));
        }
    }
    let short = gens.iter().all(|g| g.name.chars().count() == 1);
    let join_word = |w: &[usize]| -> String {
        let parts: Vec<&str> = w.iter().map(|&i| gens[i].name.as_str()).collect();
        if short {
            parts.concat()
        } else {
            parts.join("·")
        }
    };
    let mut index: HashMap<(usize, usize, K), u32> = HashMap::new();
    let mut keys: Vec<K> = Vec::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    for a in 0..k {
        let key = identity_key(a);
        index.insert((a, a, key.clone()), keys.len() as u32);
        keys.push(key);
        dom.push(a);
        cod.push(a);
        words.push(Vec::new());
        queue.push_back(keys.len() - 1);
    }
    while let Some(h) = queue.pop_front() {
        for (si, s) in gens.iter().enumerate() {
            if s.dom != cod[h] {
                continue;
            }
            let key = mul(&s.key, &keys[h]);
            let full = (dom[h], s.cod, key);
            if index.contains_key(&full) {
                continue;
            }
            if keys.len() >= bound {
                return Err(GroupoidError::SizeBound { bound });
            }
            index.insert(full.clone(), keys.len() as u32);
            keys.push(full.2);
            dom.push(dom[h]);
            cod.push(s.cod);
            let mut w = vec![si];
            w.extend_from_slice(&words[h]);
            words.push(w);
            queue.push_back(keys.len() - 1);
        }
    }
    let names: Vec<String> = words
        .iter()
        .enumerate()
        .map(|(i, w)| {
            if w.is_empty() {
                if k == 1 {
                    "1".to_string()
                } else {
                    format!("1_{}", obj_names[dom[i]])
                }
            } else {
                join_word(w)
            }
        })
        .collect();
    let mut missing = None;
    let g = Groupoid::from_parts(
        obj_names,
        names,
        dom.iter().map(|&d| Obj(d as u32)).collect(),
        cod.iter().map(|&c| Obj(c as u32)).collect(),
        |g, h| {
            let key = mul(&keys[g.idx()], &keys[h.idx()]);
            match index.get(&(dom[h.idx()], cod[g.idx()], key)) {
                Some(&m) => Mor(m),
                None => {
                    missing = Some((g, h));
                    g
                }
            }
        },
    );
    if let Some((a, b)) = missing {
        return Err(GroupoidError::Inconsistent(format!(
            "product of `{}` and `{}` not reached by closure (generators not closed under inverse?)",
            join_word(&words[a.idx()]),
            join_word(&words[b.idx()])
        )));
    }
    g
}

/// Permutation closure for a single-object group.
pub fn perm_group(gens: &[(&str, Vec<u32>)], bound: usize) -> Result<Groupoid, GroupoidError> {
    let n = gens.first().map_or(0, |g| g.1.len());
    if gens.iter().any(|g| g.1.len() != n) {
        return Err(GroupoidError::BadGenerators(
            "permutations of different degrees".into(),
        ));
    }
    let specs: Vec<GenSpec<Vec<u32>>> = gens
        .iter()
        .map(|(name, p)| GenSpec {
            name: name.to_string(),
            dom: 0,
            cod: 0,
            key: p.clone(),
        })
        .collect();
    close(
        vec!["a".into()],
        &specs,
        |_| (0..n as u32).collect(),
        |s, h| compose_perm(s, h),
        bound,
    )
}

/// `(s ∘ h)(i) = s(h(i))`.
pub fn compose_perm(s: &[u32], h: &[u32]) -> Vec<u32> {
    h.iter().map(|&i| s[i as usize]).collect()
}

/// Groupoid with a distinguished generating set and its length function.
#[derive(Debug, Clone)]
pub struct System {
    groupoid: Groupoid,
    gens: Vec<Mor>,
    is_gen: Vec<bool>,
    length: Vec<u32>,
    word: Vec<Vec<Mor>>,
}

impl System {
    /// Checks `S = S*`, no identities, and that `S` generates.
    pub fn new(groupoid: Groupoid, gens: Vec<Mor>) -> Result<Self, GroupoidError> {
        let mut gens = gens;
        gens.sort();
        gens.dedup();
        let mut is_gen = vec![false; groupoid.morphism_count()];
        for &s in &gens {
            is_gen[s.idx()] = true;
        }
        for &s in &gens {
            if groupoid.is_identity(s) {
                return Err(GroupoidError::BadGenerators(format!(
                    "`{}` is an identity",
                    groupoid.name(s)
                )));
            }
            if !is_gen[groupoid.inv(s).idx()] {
                return Err(GroupoidError::BadGenerators(format!(
                    "inverse of `{}` missing",
                    groupoid.name(s)
                )));
            }
        }
        let n = groupoid.morphism_count();
        let mut length = vec![u32::MAX; n];
        let mut word: Vec<Vec<Mor>> = vec![Vec::new(); n];
        let mut queue = VecDeque::new();
        for a in groupoid.objects() {
            let e = groupoid.id(a);
            length[e.idx()] = 0;
            queue.push_back(e);
        }
        while let Some(h) = queue.pop_front() {
            for &s in &gens {
                if let Some(sh) = groupoid.compose(s, h) {
                    if length[sh.idx()] == u32::MAX {
                        length[sh.idx()] = length[h.idx()] + 1;
                        let mut w = vec![s];
                        w.extend_from_slice(&word[h.idx()]);
                        word[sh.idx()] = w;
                        queue.push_back(sh);
                    }
                }
            }
        }
        if let Some(g) = length.iter().position(|&l| l == u32::MAX) {
            return Err(GroupoidError::BadGenerators(format!(
                "`{}` not generated",
                groupoid.name(Mor(g as u32))
            )));
        }
        Ok(System {
            groupoid,
            gens,
            is_gen,
            length,
            word,
        })
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn gens(&self) -> &[Mor] {
        &self.gens
    }

    pub fn is_gen(&self, g: Mor) -> bool {
        self.is_gen[g.idx()]
    }

    /// Generators with codomain `a`.
    pub fn gens_at(&self, a: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.gens
            .iter()
            .copied()
            .filter(move |&s| self.groupoid.cod(s) == a)
    }

    pub fn length(&self, g: Mor) -> u32 {
        self.length[g.idx()]
    }

    /// A shortest word; its product is `g`.
    pub fn word(&self, g: Mor) -> &[Mor] {
        &self.word[g.idx()]
    }

    pub fn word_string(&self, g: Mor) -> String {
        let parts: Vec<&str> = self
            .word(g)
            .iter()
            .map(|&s| self.groupoid.name(s))
            .collect();
        if parts.is_empty() {
            self.groupoid.name(g).to_string()
        } else if parts.iter().all(|p| p.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join("·")
        }
    }

    /// Parity of `l` when every generator flips it; `None` if some edge of
    /// the Cayley graph joins equal parities.
    pub fn sign_character(&self) -> Option<Vec<bool>> {
        for h in self.groupoid.morphisms() {
            for &s in &self.gens {
                if let Some(sh) = self.groupoid.compose(s, h) {
                    if self.length(sh) % 2 == self.length(h) % 2 {
                        return None;
                    }
                }
            }
        }
        Some(self.length.iter().map(|l| l % 2 == 1).collect())
    }

    pub fn is_even(&self) -> bool {
        self.sign_character().is_some()
    }

    /// Largest length and an element attaining it in `star(a)`.
    pub fn longest_in_star(&self, a: Obj) -> Mor {
        *self
            .groupoid
            .star(a)
            .iter()
            .max_by_key(|&&g| (self.length(g), std::cmp::Reverse(g)))
            .expect("stars are nonempty")
    }
}

/// Structure-preserving map between finite groupoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidHom {
    pub obj_map: Vec<Obj>,
    pub mor_map: Vec<Mor>,
}

impl GroupoidHom {
    pub fn identity(g: &Groupoid) -> Self {
        GroupoidHom {
            obj_map: g.objects().collect(),
            mor_map: g.morphisms().collect(),
        }
    }

    pub fn obj(&self, a: Obj) -> Obj {
        self.obj_map[a.idx()]
    }

    pub fn apply(&self, g: Mor) -> Mor {
        self.mor_map[g.idx()]
    }

    pub fn validate(&self, src: &Groupoid, tgt: &Groupoid) -> Result<(), GroupoidError> {
        if self.obj_map.len() != src.object_count() || self.mor_map.len() != src.morphism_count() {
            return Err(GroupoidError::BadHom(
                "map sizes differ from the source".into(),
            ));
        }
        for g in src.morphisms() {
            let fg = self.apply(g);
            if fg.idx() >= tgt.morphism_count() {
                return Err(GroupoidError::BadHom("morphism index out of range".into()));
            }
            if tgt.dom(fg) != self.obj(src.dom(g)) || tgt.cod(fg) != self.obj(src.cod(g)) {
                return Err(GroupoidError::BadHom(format!("ends of `{}`", src.name(g))));
            }
            for &h in src.star(src.dom(g)) {
                if self.apply(src.mul(g, h)) != tgt.mul(fg, self.apply(h)) {
                    return Err(GroupoidError::BadHom(format!(
                        "product of `{}` and `{}`",
                        src.name(g),
                        src.name(h)
                    )));
                }
            }
        }
        for a in src.objects() {
            if self.apply(src.id(a)) != tgt.id(self.obj(a)) {
                return Err(GroupoidError::BadHom("identity not preserved".into()));
            }
        }
        Ok(())
    }

    /// Injective on every codomain star.
    pub fn star_injective(&self, src: &Groupoid) -> bool {
        src.objects().all(|a| {
            let mut img: Vec<Mor> = src.star(a).iter().map(|&g| self.apply(g)).collect();
            img.sort();
            let n = img.len();
            img.dedup();
            img.len() == n
        })
    }

    pub fn injective(&self) -> bool {
        let mut img = self.mor_map.clone();
        img.sort();
        img.dedup();
        img.len() == self.mor_map.len()
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &GroupoidHom) -> GroupoidHom {
        GroupoidHom {
            obj_map: first.obj_map.iter().map(|&o| self.obj(o)).collect(),
            mor_map: first.mor_map.iter().map(|&g| self.apply(g)).collect(),
        }
    }
}

/// Action of a group `(H, R)` on a system `(G, S)`, by permutations of
/// the morphisms of `G`, one per generator of `H`.
pub struct GroupAction<'a> {
    pub group: &'a System,
    pub on: &'a System,
    pub generator_perms: Vec<(Mor, Vec<Mor>)>,
}

/// Semidirect product with generators `(s, 1)` and `(1_a, r)`.
///
/// Morphism `(δ, h)` has `cod = cod δ` and `dom = h⁻¹(dom δ)`; products are
/// `(δ,h)(γ,h′) = (δ·h(γ), hh′)`.
pub fn semidirect_product(action: &GroupAction<'_>, bound: usize) -> Result<System, GroupoidError> {
    let hs = action.group;
    let h_grp = hs.groupoid();
    let gs = action.on;
    let g_grp = gs.groupoid();
    if h_grp.object_count() != 1 {
        return Err(GroupoidError::BadGenerators(
            "acting groupoid must be a group".into(),
        ));
    }
    let n = g_grp.morphism_count();
    let mut gen_perm: HashMap<Mor, Vec<Mor>> = HashMap::new();
    for (r, p) in &action.generator_perms {
        if p.len() != n {
            return Err(GroupoidError::BadHom(
                "action permutation has wrong size".into(),
            ));
        }
        gen_perm.insert(*r, p.clone());
    }
    for &r in hs.gens() {
        if !gen_perm.contains_key(&r) {
            return Err(GroupoidError::BadHom(format!(
                "no action given for `{}`",
                h_grp.name(r)
            )));
        }
    }
    // action of every h via a shortest word
    let ident: Vec<Mor> = g_grp.morphisms().collect();
    let mut act: Vec<Vec<Mor>> = Vec::with_capacity(h_grp.morphism_count());
    for h in h_grp.morphisms() {
        let mut p = ident.clone();
        for &r in hs.word(h).iter().rev() {
            let pr = &gen_perm[&r];
            p = p.iter().map(|&g| pr[g.idx()]).collect();
        }
        act.push(p);
    }
    for h in h_grp.morphisms() {
        for h2 in h_grp.morphisms() {
            let hh = h_grp.mul(h, h2);
            for g in g_grp.morphisms() {
                if act[hh.idx()][g.idx()] != act[h.idx()][act[h2.idx()][g.idx()].idx()] {
                    return Err(GroupoidError::BadHom("action is not a homomorphism".into()));
                }
            }
        }
    }
    let obj_act = |h: Mor, a: Obj| -> Obj { g_grp.cod(act[h.idx()][g_grp.id(a).idx()]) };
    for h in h_grp.morphisms() {
        let p = &act[h.idx()];
        let m = GroupoidHom {
            obj_map: g_grp.objects().map(|a| obj_act(h, a)).collect(),
            mor_map: p.clone(),
        };
        m.validate(g_grp, g_grp)?;
        for &s in gs.gens() {
            if !gs.is_gen(p[s.idx()]) {
                return Err(GroupoidError::BadHom(format!(
                    "action does not preserve generator `{}`",
                    g_grp.name(s)
                )));
            }
        }
    }
    let e = h_grp.id(Obj(0));
    let obj_of = |delta: Mor, h: Mor| -> usize { obj_act(h_grp.inv(h), g_grp.dom(delta)).idx() };
    let mut specs = Vec::new();
    for &s in gs.gens() {
        specs.push(GenSpec {
            name: g_grp.name(s).to_string(),
            dom: g_grp.dom(s).idx(),
            cod: g_grp.cod(s).idx(),
            key: (s, e),
        });
    }
    for &r in hs.gens() {
        for a in g_grp.objects() {
            let key = (g_grp.id(a), r);
            let name = if g_grp.object_count() == 1 {
                h_grp.name(r).to_string()
            } else {
                format!("{}@{}", h_grp.name(r), g_grp.obj_name(a))
            };
            specs.push(GenSpec {
                name,
                dom: obj_of(key.0, r),
                cod: a.idx(),
                key,
            });
        }
    }
    let k = close(
        g_grp.obj_names().to_vec(),
        &specs,
        |a| (g_grp.id(Obj(a as u32)), e),
        |&(d, h), &(c, h2)| (g_grp.mul(d, act[h.idx()][c.idx()]), h_grp.mul(h, h2)),
        bound,
    )?;
    let gens: Vec<Mor> = specs
        .iter()
        .map(|sp| {
            // generators are reached at distance one, so their names are unique words
            k.morphism_by_name(&sp.name).unwrap_or(Mor(0))
        })
        .collect();
    let expect = n * h_grp.morphism_count();
    if k.morphism_count() != expect {
        return Err(GroupoidError::Inconsistent(format!(
            "semidirect product has {} morphisms, expected {expect}",
            k.morphism_count()
        )));
    }
    System::new(k, gens)
}

/// Finite simple graph on labelled vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    names: Vec<String>,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new<S: Into<String>>(
        vertices: Vec<S>,
        edges: &[(usize, usize)],
    ) -> Result<Self, GroupoidError> {
        let names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(GroupoidError::UnknownObject(format!("{a}-{b}")));
            }
            if a == b {
                return Err(GroupoidError::Inconsistent(format!(
                    "loop at `{}`",
                    names[a]
                )));
            }
            if adj[a].contains(&b) {
                return Err(GroupoidError::Inconsistent(format!(
                    "repeated edge {}-{}",
                    names[a], names[b]
                )));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(SimpleGraph { names, adj })
    }

    /// Graph from names; edges given by vertex names.
    pub fn from_names(vertices: &[&str], edges: &[(&str, &str)]) -> Result<Self, GroupoidError> {
        let pos = |v: &str| {
            vertices
                .iter()
                .position(|x| *x == v)
                .ok_or_else(|| GroupoidError::UnknownObject(v.to_string()))
        };
        let e: Vec<(usize, usize)> = edges
            .iter()
            .map(|(a, b)| Ok((pos(a)?, pos(b)?)))
            .collect::<Result<_, _>>()?;
        SimpleGraph::new(vertices.to_vec(), &e)
    }

    pub fn cycle(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::new(names, &edges).expect("cycles are simple for n >= 3")
    }

    pub fn path(n: usize) -> Self {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph::new(names, &edges).expect("paths are simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, l) in self.adj.iter().enumerate() {
            for &b in l {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    /// BFS distances from `v`; `None` when unreachable.
    pub fn distances(&self, v: usize) -> Vec<Option<u32>> {
        let mut d = vec![None; self.vertex_count()];
        d[v] = Some(0);
        let mut q = VecDeque::from([v]);
        while let Some(x) = q.pop_front() {
            for &y in &self.adj[x] {
                if d[y].is_none() {
                    d[y] = Some(d[x].unwrap() + 1);
                    q.push_back(y);
                }
            }
        }
        d
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            if seen[v] {
                continue;
            }
            let comp: Vec<usize> = self
                .distances(v)
                .iter()
                .enumerate()
                .filter(|(_, d)| d.is_some())
                .map(|(i, _)| i)
                .collect();
            for &c in &comp {
                seen[c] = true;
            }
            out.push(comp);
        }
        out
    }

    /// Two-colouring per component; `None` if some cycle is odd.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut colour = vec![None; self.vertex_count()];
        for comp in self.components() {
            let root = comp[0];
            for (v, d) in self.distances(root).iter().enumerate() {
                if let Some(d) = d {
                    colour[v] = Some(d % 2 == 1);
                }
            }
        }
        let colour: Vec<bool> = colour.into_iter().map(|c| c.unwrap_or(false)).collect();
        for (a, b) in self.edges() {
            if colour[a] == colour[b] {
                return None;
            }
        }
        Some(colour)
    }

    pub fn is_even(&self) -> bool {
        self.bipartition().is_some()
    }
}

/// Pair groupoid of a graph: one morphism `(a, b): b → a` per ordered pair
/// in a common component. Edge pairs generate.
pub fn pair_groupoid_from_graph(
    graph: &SimpleGraph,
) -> Result<(System, Vec<Vec<Option<Mor>>>), GroupoidError> {
    let n = graph.vertex_count();
    let mut comp_of = vec![0usize; n];
    for (ci, c) in graph.components().iter().enumerate() {
        for &v in c {
            comp_of[v] = ci;
        }
    }
    let mut pair_mor = vec![vec![None; n]; n];
    let mut names = Vec::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if comp_of[a] == comp_of[b] {
                pair_mor[a][b] = Some(Mor(names.len() as u32));
                names.push(format!("({},{})", graph.name(a), graph.name(b)));
                dom.push(Obj(b as u32));
                cod.push(Obj(a as u32));
                pairs.push((a, b));
            }
        }
    }
    let g = Groupoid::from_parts(graph.names().to_vec(), names, dom, cod, |x, y| {
        let (a, _) = pairs[x.idx()];
        let (_, c) = pairs[y.idx()];
        pair_mor[a][c].expect("same component")
    })?;
    let mut gens = Vec::new();
    for (a, b) in graph.edges() {
        gens.push(pair_mor[a][b].unwrap());
        gens.push(pair_mor[b][a].unwrap());
    }
    Ok((System::new(g, gens)?, pair_mor))
}

/// `(vertex group, star with free left action, basepoint)`, abstractly.
#[derive(Debug, Clone)]
pub struct BasedDatum {
    /// `group_mul[u][v] = uv`.
    pub group_mul: Vec<Vec<u32>>,
    pub group_identity: u32,
    /// `action[v][x] = v·x`.
    pub action: Vec<Vec<u32>>,
    pub base: u32,
}

/// Datum of `(G, a)` with the morphism lists realising its indices.
#[derive(Debug, Clone)]
pub struct DatumOf {
    pub datum: BasedDatum,
    pub vertex_group: Vec<Mor>,
    pub star: Vec<Mor>,
}

pub fn datum_of_based_groupoid(g: &Groupoid, a: Obj) -> Result<DatumOf, GroupoidError> {
    if !g.is_connected() {
        return Err(GroupoidError::NotConnected);
    }
    let vg = g.vertex_group(a);
    let star = g.star(a).to_vec();
    let vpos: HashMap<Mor, u32> = vg.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
    let group_mul = vg
        .iter()
        .map(|&u| vg.iter().map(|&v| vpos[&g.mul(u, v)]).collect())
        .collect();
    let action = vg
        .iter()
        .map(|&v| {
            star.iter()
                .map(|&x| g.star_pos(g.mul(v, x)) as u32)
                .collect()
        })
        .collect();
    let datum = BasedDatum {
        group_mul,
        group_identity: vpos[&g.id(a)],
        action,
        base: g.star_pos(g.id(a)) as u32,
    };
    Ok(DatumOf {
        datum,
        vertex_group: vg,
        star,
    })
}

impl BasedDatum {
    pub fn validate(&self) -> Result<(), GroupoidError> {
        let n = self.group_mul.len();
        let m = self.action.first().map_or(0, Vec::len);
        if self.action.len() != n || self.base as usize >= m {
            return Err(GroupoidError::Inconsistent("datum sizes".into()));
        }
        for v in 0..n {
            for x in 0..m {
                let vx = self.action[v][x];
                if v as u32 != self.group_identity && vx as usize == x {
                    return Err(GroupoidError::Inconsistent("action is not free".into()));
                }
                for u in 0..n {
                    if self.action[u][vx as usize] != self.action[self.group_mul[u][v] as usize][x]
                    {
                        return Err(GroupoidError::Inconsistent("not an action".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Objects are orbits of the star; morphisms are diagonal orbits of
    /// pairs `(y, x)`, read as `y*x`. Returns the groupoid, the base object
    /// and, per morphism, the normalised pair `(y, x)` with `x` an orbit
    /// representative.
    pub fn reconstruct(&self) -> Result<(Groupoid, Obj, Vec<(u32, u32)>), GroupoidError> {
        self.validate()?;
        let n = self.group_mul.len();
        let m = self.action.first().map_or(0, Vec::len);
        // orbit representatives, base orbit first
        let mut orbit = vec![u32::MAX; m];
        let mut reps: Vec<u32> = Vec::new();
        // to_rep[x] = v with v·x = rep(orbit x)
        let mut to_rep = vec![0u32; m];
        let order: Vec<u32> = std::iter::once(self.base)
            .chain((0..m as u32).filter(|&x| x != self.base))
            .collect();
        for x in order {
            if orbit[x as usize] != u32::MAX {
                continue;
            }
            let oi = reps.len() as u32;
            reps.push(x);
            for v in 0..n {
                let vx = self.action[v][x as usize] as usize;
                orbit[vx] = oi;
                // v·x = vx, so v⁻¹·vx = x
                let vinv = (0..n)
                    .find(|&u| self.group_mul[u][v] == self.group_identity)
                    .expect("group inverse") as u32;
                to_rep[vx] = vinv;
            }
        }
        let mut pair_index: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = Vec::new();
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        for &r in &reps {
            for y in 0..m as u32 {
                pair_index.insert((y, r), pairs.len() as u32);
                pairs.push((y, r));
                dom.push(Obj(orbit[r as usize]));
                cod.push(Obj(orbit[y as usize]));
            }
        }
        let normalise = |y: u32, x: u32| -> u32 {
            let v = to_rep[x as usize] as usize;
            pair_index[&(self.action[v][y as usize], self.action[v][x as usize])]
        };
        let names: Vec<String> = pairs.iter().map(|(y, x)| format!("[{y},{x}]")).collect();
        let obj_names: Vec<String> = reps.iter().map(|r| format!("O{r}")).collect();
        let g = Groupoid::from_parts(obj_names, names, dom, cod, |p, q| {
            // p = [(z, y')] with y' a representative, q = [(y, x)]; move p so its second entry is y
            let (z, yr) = pairs[p.idx()];
            let (y, x) = pairs[q.idx()];
            let back = to_rep[y as usize] as usize;
            let v = (0..n)
                .find(|&u| self.group_mul[u][back] == self.group_identity)
                .expect("inverse");
            debug_assert_eq!(self.action[v][yr as usize], y);
            Mor(normalise(self.action[v][z as usize], x))
        })?;
        Ok((g, Obj(0), pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: u32) -> Groupoid {
        let p: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
        let q: Vec<u32> = (0..n).map(|i| (i + n - 1) % n).collect();
        perm_group(&[("x", p), ("y", q)], DEFAULT_MORPHISM_BOUND).unwrap()
    }

    #[test]
    fn cyclic_closure() {
        let g = cyclic(4);
        assert_eq!(g.morphism_count(), 4);
        g.check_axioms().unwrap();
    }

    #[test]
    fn trivial_closure() {
        let g = close::<u8, _, _>(vec!["a".into()], &[], |_| 0, |_, _| 0, 10).unwrap();
        assert_eq!(g.morphism_count(), 1);
        assert!(g.is_identity(Mor(0)));
    }

    #[test]
    fn size_bound() {
        let g = perm_group(&[("x", vec![1, 2, 3, 0]), ("y", vec![3, 0, 1, 2])], 3);
        assert_eq!(g.unwrap_err(), GroupoidError::SizeBound { bound: 3 });
    }

    #[test]
    fn lengths_in_cyclic() {
        let g = cyclic(4);
        let x = g.morphism_by_name("x").unwrap();
        let y = g.morphism_by_name("y").unwrap();
        let s = System::new(g.clone(), vec![x, y]).unwrap();
        let x2 = g.mul(x, x);
        assert_eq!(s.length(x2), 2);
        assert_eq!(s.length(g.id(Obj(0))), 0);
        assert!(s.is_even());
        let c3 = cyclic(3);
        let gens: Vec<Mor> = c3.morphisms().filter(|&m| !c3.is_identity(m)).collect();
        assert!(!System::new(c3, gens).unwrap().is_even());
    }

    #[test]
    fn dihedral_lengths() {
        // symmetries of a square acting on corners
        let r = vec![1, 0, 3, 2];
        let s = vec![0, 3, 2, 1];
        let g = perm_group(&[("r", r), ("s", s)], 100).unwrap();
        assert_eq!(g.morphism_count(), 8);
        let r = g.morphism_by_name("r").unwrap();
        let sm = g.morphism_by_name("s").unwrap();
        let sys = System::new(g.clone(), vec![r, sm]).unwrap();
        let rsr = g.product(&[r, sm, r]).unwrap().unwrap();
        assert_eq!(sys.length(rsr), 3);
    }

    #[test]
    fn bad_generators() {
        let g = cyclic(4);
        let x = g.morphism_by_name("x").unwrap();
        assert!(matches!(
            System::new(g.clone(), vec![x]),
            Err(GroupoidError::BadGenerators(_))
        ));
        assert!(matches!(
            System::new(g.clone(), vec![g.id(Obj(0))]),
            Err(GroupoidError::BadGenerators(_))
        ));
    }

    #[test]
    fn pair_groupoids() {
        let (s, _) = pair_groupoid_from_graph(&SimpleGraph::cycle(6)).unwrap();
        assert_eq!(s.groupoid().morphism_count(), 36);
        s.groupoid().check_axioms().unwrap();
        let (p, _) = pair_groupoid_from_graph(&SimpleGraph::path(3)).unwrap();
        assert_eq!(p.groupoid().morphism_count(), 9);
        assert_eq!(p.gens().len(), 4);
        let single = SimpleGraph::new(vec!["v"], &[]).unwrap();
        assert_eq!(
            pair_groupoid_from_graph(&single)
                .unwrap()
                .0
                .groupoid()
                .morphism_count(),
            1
        );
        let two =
            SimpleGraph::new(vec!["a", "b", "c", "d", "e"], &[(0, 1), (2, 3), (3, 4)]).unwrap();
        let (t, _) = pair_groupoid_from_graph(&two).unwrap();
        assert_eq!(t.groupoid().morphism_count(), 13);
        assert_eq!(t.groupoid().components().len(), 2);
    }

    #[test]
    fn evenness_of_graphs() {
        assert!(SimpleGraph::cycle(6).is_even());
        assert!(!SimpleGraph::cycle(5).is_even());
        assert!(SimpleGraph::path(5).is_even());
    }

    #[test]
    fn semidirect_klein_by_swap() {
        // C2 x C2 on four points
        let a = vec![1, 0, 3, 2];
        let b = vec![2, 3, 0, 1];
        let g = perm_group(&[("a", a), ("b", b)], 100).unwrap();
        let am = g.morphism_by_name("a").unwrap();
        let bm = g.morphism_by_name("b").unwrap();
        let gs = System::new(g.clone(), vec![am, bm]).unwrap();
        let h = perm_group(&[("w", vec![1, 0])], 10).unwrap();
        let w = h.morphism_by_name("w").unwrap();
        let hs = System::new(h, vec![w]).unwrap();
        let swap: Vec<Mor> = g
            .morphisms()
            .map(|m| {
                let word: Vec<Mor> = gs
                    .word(m)
                    .iter()
                    .map(|&s| if s == am { bm } else { am })
                    .collect();
                g.product(&word).unwrap().unwrap_or(g.id(Obj(0)))
            })
            .collect();
        let k = semidirect_product(
            &GroupAction {
                group: &hs,
                on: &gs,
                generator_perms: vec![(w, swap)],
            },
            1000,
        )
        .unwrap();
        assert_eq!(k.groupoid().morphism_count(), 8);
        assert_eq!(k.gens().len(), 3);
        k.groupoid().check_axioms().unwrap();
    }

    #[test]
    fn semidirect_trivial_group() {
        let g = cyclic(4);
        let gens: Vec<Mor> = ["x", "y"]
            .iter()
            .map(|n| g.morphism_by_name(n).unwrap())
            .collect();
        let gs = System::new(g.clone(), gens).unwrap();
        let h = close::<u8, _, _>(vec!["a".into()], &[], |_| 0, |_, _| 0, 10).unwrap();
        let hs = System::new(h, vec![]).unwrap();
        let k = semidirect_product(
            &GroupAction {
                group: &hs,
                on: &gs,
                generator_perms: vec![],
            },
            100,
        )
        .unwrap();
        assert_eq!(k.groupoid().morphism_count(), 4);
        assert_eq!(k.gens().len(), 2);
    }

    fn check_round_trip(g: &Groupoid, a: Obj) {
        let d = datum_of_based_groupoid(g, a).unwrap();
        let (r, base, pairs) = d.datum.reconstruct().unwrap();
        r.check_axioms().unwrap();
        assert_eq!(r.morphism_count(), g.morphism_count());
        assert_eq!(r.object_count(), g.object_count());
        // [(y, x)] ↦ y* x
        let mor_map: Vec<Mor> = pairs
            .iter()
            .map(|&(y, x)| g.mul(g.inv(d.star[y as usize]), d.star[x as usize]))
            .collect();
        let obj_map: Vec<Obj> = r.objects().map(|o| g.dom(mor_map[r.id(o).idx()])).collect();
        let iso = GroupoidHom { obj_map, mor_map };
        iso.validate(&r, g).unwrap();
        assert!(iso.injective());
        assert_eq!(iso.obj(base), a);
    }

    #[test]
    fn datum_round_trips() {
        check_round_trip(&cyclic(5), Obj(0));
        let (p, _) = pair_groupoid_from_graph(&SimpleGraph::path(3)).unwrap();
        let d = datum_of_based_groupoid(p.groupoid(), Obj(1)).unwrap();
        assert_eq!(d.datum.group_mul.len(), 1);
        assert_eq!(d.star.len(), 3);
        for a in p.groupoid().objects() {
            check_round_trip(p.groupoid(), a);
        }
        let triv = close::<u8, _, _>(vec!["a".into()], &[], |_| 0, |_, _| 0, 10).unwrap();
        check_round_trip(&triv, Obj(0));
    }

    #[test]
    fn datum_needs_connected() {
        let two = SimpleGraph::new(vec!["a", "b"], &[]).unwrap();
        let (p, _) = pair_groupoid_from_graph(&two).unwrap();
        assert_eq!(
            datum_of_based_groupoid(p.groupoid(), Obj(0)).unwrap_err(),
            GroupoidError::NotConnected
        );
    }

    #[test]
    fn restriction_to_subgroup() {
        let g = cyclic(6);
        let x = g.morphism_by_name("x").unwrap();
        let x2 = g.mul(x, x);
        let sub: Vec<Mor> = vec![g.id(Obj(0)), x2, g.mul(x2, x2)];
        let (h, inc) = g.restrict(&sub).unwrap();
        assert_eq!(h.morphism_count(), 3);
        inc.validate(&h, &g).unwrap();
        assert!(g.restrict(&[g.id(Obj(0)), x]).is_err());
    }
}
