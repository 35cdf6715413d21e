//! Normalizer groupoids, square functor groupoids, duals and stable sets.

use std::collections::{BTreeSet, HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

use crate::groupoid::{Groupoid, GroupoidError, GroupoidHom, Mor, Obj, System};
use crate::order::{preprincipal_unchecked, WeakOrder};
use crate::proto::{ProtoError, Protorootoid};
use crate::squares::{complete_face, complete_square};

/// Default cap on morphisms of a constructed component.
pub const COMPONENT_BOUND: usize = 200_000;

#[derive(Debug, Error)]
pub enum FunctorError {
    #[error("protorootoid is not faithful")]
    NotFaithful,
    #[error("presented groupoid is not connected")]
    Disconnected,
    #[error("bad presentation: {0}")]
    BadPresentation(String),
    #[error("not a functor: {0}")]
    NotFunctor(String),
    #[error("component exceeds {0} morphisms")]
    Bound(usize),
    #[error("normalizer seed: {0}")]
    BadSeed(String),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Proto(#[from] ProtoError),
}

/// Builds a groupoid from object keys and morphisms `(dom, cod, g)` where
/// composition follows `g`.
fn component_groupoid(
    g: &Groupoid,
    obj_names: Vec<String>,
    obj_base: Vec<Obj>,
    mors: &[(usize, usize, Mor)],
) -> Result<(Groupoid, GroupoidHom), FunctorError> {
    let index: HashMap<(usize, Mor), u32> = mors
        .iter()
        .enumerate()
        .map(|(i, &(d, _, m))| ((d, m), i as u32))
        .collect();
    let names: Vec<String> = mors
        .iter()
        .map(|&(d, _, m)| format!("{}@{}", g.name(m), obj_names[d]))
        .collect();
    let dom = mors.iter().map(|&(d, _, _)| Obj(d as u32)).collect();
    let cod = mors.iter().map(|&(_, c, _)| Obj(c as u32)).collect();
    let mut missing = false;
    let out = Groupoid::from_parts(obj_names, names, dom, cod, |x, y| {
        let (d, _, my) = mors[y.idx()];
        let (_, _, mx) = mors[x.idx()];
        match index.get(&(d, g.mul(mx, my))) {
            Some(&i) => Mor(i),
            None => {
                missing = true;
                x
            }
        }
    });
    if missing {
        return Err(FunctorError::BadPresentation(
            "component not closed under composition".into(),
        ));
    }
    let out = out?;
    let hom = GroupoidHom {
        obj_map: obj_base,
        mor_map: mors.iter().map(|m| m.2).collect(),
    };
    Ok((out, hom))
}

// ---------------------------------------------------------------- normalizer

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalizerObject {
    pub base: Obj,
    /// Sorted members of the cod-star of `base`.
    pub set: Vec<Mor>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ComponentStats {
    pub objects: usize,
    pub star_sizes: Vec<usize>,
    pub atoms: Vec<usize>,
    /// Largest generator length in each star.
    pub longest_length: Vec<u32>,
    /// Largest `|N|` in each star.
    pub longest_rank: Vec<usize>,
}

impl ComponentStats {
    fn of(pr: &Protorootoid) -> Self {
        let g = pr.groupoid();
        let pp = preprincipal_unchecked(pr);
        let mut gens: Vec<Mor> = pp
            .all_atoms()
            .into_iter()
            .flat_map(|r| [r, g.inv(r)])
            .collect();
        gens.sort();
        gens.dedup();
        let sys = System::new(g.clone(), gens).ok();
        ComponentStats {
            objects: g.object_count(),
            star_sizes: g.objects().map(|a| g.star(a).len()).collect(),
            atoms: pp.atoms.iter().map(Vec::len).collect(),
            longest_length: g
                .objects()
                .map(|a| {
                    sys.as_ref().map_or(0, |s| {
                        g.star(a).iter().map(|&m| s.length(m)).max().unwrap_or(0)
                    })
                })
                .collect(),
            longest_rank: g
                .objects()
                .map(|a| g.star(a).iter().map(|&m| pr.rank(m)).max().unwrap_or(0))
                .collect(),
        }
    }
}

pub struct Component<K> {
    pub keys: Vec<K>,
    pub groupoid: Groupoid,
    pub theta: GroupoidHom,
    pub pullback: Protorootoid,
}

impl<K> Component<K> {
    pub fn stats(&self) -> ComponentStats {
        ComponentStats::of(&self.pullback)
    }
}

fn set_name(g: &Groupoid, base: Obj, set: &[Mor]) -> String {
    let inner: Vec<&str> = set.iter().map(|&m| g.name(m)).collect();
    if g.object_count() == 1 {
        format!("{{{}}}", inner.join(","))
    } else {
        format!("({}:{{{}}})", g.obj_name(base), inner.join(","))
    }
}

/// Target of `g` out of `(a, X)`, if `g` is a normalizer morphism.
pub fn normalizer_step(
    pr: &Protorootoid,
    obj: &NormalizerObject,
    g: Mor,
) -> Option<NormalizerObject> {
    let gp = pr.groupoid();
    if gp.dom(g) != obj.base {
        return None;
    }
    let mut image = Vec::with_capacity(obj.set.len());
    for &x in &obj.set {
        let q = complete_square(pr, g, x)?;
        image.push(gp.inv(q[3]));
    }
    image.sort();
    image.dedup();
    (image.len() == obj.set.len()).then(|| NormalizerObject {
        base: gp.cod(g),
        set: image,
    })
}

/// Component of the normalizer groupoid through `seed`.
pub fn normalizer_component(
    pr: &Protorootoid,
    seed: NormalizerObject,
    bound: usize,
) -> Result<Component<NormalizerObject>, FunctorError> {
    let gp = pr.groupoid();
    if !pr.is_faithful() {
        return Err(FunctorError::NotFaithful);
    }
    if seed.set.iter().any(|&x| gp.cod(x) != seed.base) {
        return Err(FunctorError::BadSeed("member outside the star".into()));
    }
    let mut seed = seed;
    seed.set.sort();
    seed.set.dedup();
    let mut index: HashMap<NormalizerObject, usize> = HashMap::new();
    let mut keys = vec![seed.clone()];
    index.insert(seed, 0);
    let mut mors = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let obj = keys[i].clone();
        for g in gp.dom_star(obj.base) {
            let Some(next) = normalizer_step(pr, &obj, g) else {
                continue;
            };
            let j = *index.entry(next.clone()).or_insert_with(|| {
                keys.push(next);
                queue.push_back(keys.len() - 1);
                keys.len() - 1
            });
            mors.push((i, j, g));
            if mors.len() > bound {
                return Err(FunctorError::Bound(bound));
            }
        }
    }
    let names = keys.iter().map(|k| set_name(gp, k.base, &k.set)).collect();
    let base = keys.iter().map(|k| k.base).collect();
    let (groupoid, theta) = component_groupoid(gp, names, base, &mors)?;
    let pullback = pr.pullback(&groupoid, &theta)?;
    Ok(Component {
        keys,
        groupoid,
        theta,
        pullback,
    })
}

// ------------------------------------------------------- presented groupoids

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HGen {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// Groupoid given by generators and relators; a relator is a word of
/// `(generator, inverted)` letters whose product must be an identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PresentedH {
    pub objects: Vec<String>,
    pub gens: Vec<HGen>,
    pub relators: Vec<Vec<(usize, bool)>>,
    pub base: usize,
}

impl PresentedH {
    pub fn point() -> Self {
        PresentedH {
            objects: vec!["b".into()],
            gens: Vec::new(),
            relators: Vec::new(),
            base: 0,
        }
    }

    /// One object with one free loop.
    pub fn loop_datum() -> Self {
        PresentedH {
            objects: vec!["b".into()],
            gens: vec![HGen {
                name: "h".into(),
                dom: 0,
                cod: 0,
            }],
            relators: Vec::new(),
            base: 0,
        }
    }

    /// Two objects and one arrow into the base.
    pub fn arrow_datum() -> Self {
        PresentedH {
            objects: vec!["b".into(), "c".into()],
            gens: vec![HGen {
                name: "h".into(),
                dom: 1,
                cod: 0,
            }],
            relators: Vec::new(),
            base: 0,
        }
    }

    /// Tree with one arrow into the base per leaf.
    pub fn star_tree(leaves: usize) -> Self {
        let mut objects = vec!["b".to_string()];
        let mut gens = Vec::new();
        for i in 0..leaves {
            objects.push(format!("c{i}"));
            gens.push(HGen {
                name: format!("h{i}"),
                dom: i + 1,
                cod: 0,
            });
        }
        PresentedH {
            objects,
            gens,
            relators: Vec::new(),
            base: 0,
        }
    }

    /// Every non-identity morphism as a generator, with the multiplication
    /// table as relators.
    pub fn from_groupoid(g: &Groupoid, base: Obj) -> Self {
        let gen_of: HashMap<Mor, usize> = g
            .morphisms()
            .filter(|&m| !g.is_identity(m))
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut gens: Vec<(usize, Mor)> = gen_of.iter().map(|(&m, &i)| (i, m)).collect();
        gens.sort();
        let mut relators = Vec::new();
        for &(_, x) in &gens {
            for &y in g.star(g.dom(x)) {
                if g.is_identity(y) {
                    continue;
                }
                let xy = g.mul(x, y);
                let mut word = vec![(gen_of[&x], false), (gen_of[&y], false)];
                if !g.is_identity(xy) {
                    word.insert(0, (gen_of[&xy], true));
                }
                relators.push(word);
            }
        }
        PresentedH {
            objects: g.obj_names().to_vec(),
            gens: gens
                .iter()
                .map(|&(_, m)| HGen {
                    name: g.name(m).to_string(),
                    dom: g.dom(m).idx(),
                    cod: g.cod(m).idx(),
                })
                .collect(),
            relators,
            base: base.idx(),
        }
    }

    pub fn validate(&self) -> Result<(), FunctorError> {
        let k = self.objects.len();
        if self.base >= k || self.gens.iter().any(|h| h.dom >= k || h.cod >= k) {
            return Err(FunctorError::BadPresentation(
                "object index out of range".into(),
            ));
        }
        for rel in &self.relators {
            if rel.is_empty() || rel.iter().any(|&(i, _)| i >= self.gens.len()) {
                return Err(FunctorError::BadPresentation("bad relator".into()));
            }
            let ends = |&(i, inv): &(usize, bool)| {
                let h = &self.gens[i];
                if inv {
                    (h.cod, h.dom)
                } else {
                    (h.dom, h.cod)
                }
            };
            // leftmost letter applied last
            for w in rel.windows(2) {
                if ends(&w[0]).0 != ends(&w[1]).1 {
                    return Err(FunctorError::BadPresentation(
                        "relator not composable".into(),
                    ));
                }
            }
            if ends(&rel[0]).1 != ends(rel.last().expect("nonempty")).0 {
                return Err(FunctorError::BadPresentation("relator not closed".into()));
            }
        }
        if self.tree().len() + 1 != k {
            return Err(FunctorError::Disconnected);
        }
        Ok(())
    }

    /// Spanning tree from the base: `(generator, forward)` in visiting order;
    /// forward means the generator's codomain is known first.
    fn tree(&self) -> Vec<(usize, bool)> {
        let mut seen = vec![false; self.objects.len()];
        if self.base < seen.len() {
            seen[self.base] = true;
        }
        let mut order = Vec::new();
        let mut grew = true;
        while grew {
            grew = false;
            for (i, h) in self.gens.iter().enumerate() {
                if seen[h.dom] && !seen[h.cod] {
                    seen[h.cod] = true;
                    order.push((i, false));
                    grew = true;
                } else if seen[h.cod] && !seen[h.dom] {
                    seen[h.dom] = true;
                    order.push((i, true));
                    grew = true;
                }
            }
        }
        order
    }
}

/// Object images and generator images of a functor `H → G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctorObj {
    pub objects: Vec<Obj>,
    pub images: Vec<Mor>,
}

impl FunctorObj {
    pub fn validate(&self, h: &PresentedH, g: &Groupoid) -> Result<(), FunctorError> {
        if self.objects.len() != h.objects.len() || self.images.len() != h.gens.len() {
            return Err(FunctorError::NotFunctor("wrong arity".into()));
        }
        for (gen, &m) in h.gens.iter().zip(&self.images) {
            if g.dom(m) != self.objects[gen.dom] || g.cod(m) != self.objects[gen.cod] {
                return Err(FunctorError::NotFunctor(format!("ends of `{}`", gen.name)));
            }
        }
        for rel in &h.relators {
            let word: Vec<Mor> = rel
                .iter()
                .map(|&(i, inv)| {
                    if inv {
                        g.inv(self.images[i])
                    } else {
                        self.images[i]
                    }
                })
                .collect();
            match g.product(&word) {
                Ok(Some(p)) if g.is_identity(p) => {}
                _ => {
                    return Err(FunctorError::NotFunctor(
                        "relator not sent to an identity".into(),
                    ))
                }
            }
        }
        Ok(())
    }

    /// The functor on the loop datum sending the loop to `x`.
    pub fn loop_at(x: Mor, g: &Groupoid) -> Self {
        FunctorObj {
            objects: vec![g.cod(x)],
            images: vec![x],
        }
    }

    /// The functor on the arrow datum sending the arrow to `x`.
    pub fn arrow_at(x: Mor, g: &Groupoid) -> Self {
        FunctorObj {
            objects: vec![g.cod(x), g.dom(x)],
            images: vec![x],
        }
    }
}

/// Natural transformation with `ν_b = t`, if every generator square is a
/// commutative square of the protorootoid.
pub fn extend_transformation(
    pr: &Protorootoid,
    h: &PresentedH,
    f: &FunctorObj,
    t: Mor,
) -> Option<(Vec<Mor>, FunctorObj)> {
    let g = pr.groupoid();
    if g.dom(t) != f.objects[h.base] {
        return None;
    }
    let mut nu: Vec<Option<Mor>> = vec![None; h.objects.len()];
    nu[h.base] = Some(t);
    for (i, forward) in h.tree() {
        let gen = &h.gens[i];
        let fh = f.images[i];
        if forward {
            // ν_cod known
            let q = complete_square(pr, nu[gen.cod]?, fh)?;
            nu[gen.dom] = Some(g.inv(q[2]));
        } else {
            let (x, _) = complete_face(pr, nu[gen.dom]?, fh)?;
            nu[gen.cod] = Some(x);
        }
    }
    let nu: Vec<Mor> = nu.into_iter().collect::<Option<_>>()?;
    let mut images = Vec::with_capacity(h.gens.len());
    for (i, gen) in h.gens.iter().enumerate() {
        let (x, z) = complete_face(pr, nu[gen.dom], f.images[i])?;
        if x != nu[gen.cod] {
            return None;
        }
        images.push(z);
    }
    let objects = nu.iter().map(|&m| g.cod(m)).collect();
    Some((nu, FunctorObj { objects, images }))
}

/// Component `G^H_□[F]` with all transformation components.
pub struct FunctorComponent {
    pub presentation: PresentedH,
    pub inner: Component<FunctorObj>,
    /// `nu[m][o]`: component at `H`-object `o` of morphism `m`.
    pub nu: Vec<Vec<Mor>>,
}

impl FunctorComponent {
    pub fn groupoid(&self) -> &Groupoid {
        &self.inner.groupoid
    }

    /// Evaluation at the base object.
    pub fn rho(&self) -> &GroupoidHom {
        &self.inner.theta
    }

    pub fn pullback(&self) -> &Protorootoid {
        &self.inner.pullback
    }

    /// Evaluation at another object of `H`.
    pub fn rho_at(&self, o: usize) -> GroupoidHom {
        GroupoidHom {
            obj_map: self.inner.keys.iter().map(|k| k.objects[o]).collect(),
            mor_map: self.nu.iter().map(|v| v[o]).collect(),
        }
    }

    /// `χ(e(F))` for the base functor.
    pub fn chi(&self) -> Chi {
        let gc = &self.inner.groupoid;
        let f0 = Obj(0);
        let vertex = gc
            .vertex_group(f0)
            .into_iter()
            .map(|m| self.rho().apply(m))
            .collect();
        let star = gc.star(f0).iter().map(|&m| self.rho().apply(m)).collect();
        Chi::new(vertex, star)
    }
}

pub fn square_component(
    pr: &Protorootoid,
    h: &PresentedH,
    f: &FunctorObj,
    bound: usize,
) -> Result<FunctorComponent, FunctorError> {
    let g = pr.groupoid();
    if !pr.is_faithful() {
        return Err(FunctorError::NotFaithful);
    }
    h.validate()?;
    f.validate(h, g)?;
    let mut index: HashMap<FunctorObj, usize> = HashMap::from([(f.clone(), 0)]);
    let mut keys = vec![f.clone()];
    let mut mors = Vec::new();
    let mut nus = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let cur = keys[i].clone();
        for t in g.dom_star(cur.objects[h.base]) {
            let Some((nu, next)) = extend_transformation(pr, h, &cur, t) else {
                continue;
            };
            let j = *index.entry(next.clone()).or_insert_with(|| {
                keys.push(next);
                queue.push_back(keys.len() - 1);
                keys.len() - 1
            });
            mors.push((i, j, t));
            nus.push(nu);
            if mors.len() > bound {
                return Err(FunctorError::Bound(bound));
            }
        }
    }
    let names = keys
        .iter()
        .map(|k| {
            let parts: Vec<&str> = k.images.iter().map(|&m| g.name(m)).collect();
            if parts.is_empty() {
                format!("[{}]", g.obj_name(k.objects[h.base]))
            } else {
                format!("[{}]", parts.join(","))
            }
        })
        .collect::<Vec<_>>();
    let mut names = names;
    let mut seen: HashMap<String, usize> = HashMap::new();
    for n in names.iter_mut() {
        let c = seen.entry(n.clone()).or_insert(0);
        *c += 1;
        if *c > 1 {
            n.push_str(&format!("#{c}"));
        }
    }
    let base = keys.iter().map(|k| k.objects[h.base]).collect();
    let (groupoid, theta) = component_groupoid(g, names, base, &mors)?;
    let pullback = pr.pullback(&groupoid, &theta)?;
    Ok(FunctorComponent {
        presentation: h.clone(),
        inner: Component {
            keys,
            groupoid,
            theta,
            pullback,
        },
        nu: nus,
    })
}

// ------------------------------------------------------------------- chi

/// Subset of `ₐG_a ⊔ ₐG`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Chi {
    #[serde(skip)]
    pub vertex: Vec<Mor>,
    #[serde(skip)]
    pub star: Vec<Mor>,
}

impl Chi {
    pub fn new(mut vertex: Vec<Mor>, mut star: Vec<Mor>) -> Self {
        vertex.sort();
        vertex.dedup();
        star.sort();
        star.dedup();
        Chi { vertex, star }
    }

    pub fn names(&self, g: &Groupoid) -> (Vec<String>, Vec<String>) {
        let f = |v: &[Mor]| v.iter().map(|&m| g.name(m).to_string()).collect();
        (f(&self.vertex), f(&self.star))
    }
}

/// `χ(F)`: images of the vertex group and cod-star at the base.
pub fn chi_of(g: &Groupoid, h: &PresentedH, f: &FunctorObj) -> Chi {
    let a = f.objects[h.base];
    // states (H-object o, image of a path o → base)
    let mut seen: BTreeSet<(usize, Mor)> = BTreeSet::new();
    let mut queue = VecDeque::from([(h.base, g.id(a))]);
    seen.insert((h.base, g.id(a)));
    while let Some((o, m)) = queue.pop_front() {
        for (i, gen) in h.gens.iter().enumerate() {
            let fh = f.images[i];
            let mut push = |o2: usize, m2: Mor| {
                if seen.insert((o2, m2)) {
                    queue.push_back((o2, m2));
                }
            };
            if gen.cod == o {
                push(gen.dom, g.mul(m, fh));
            }
            if gen.dom == o {
                push(gen.cod, g.mul(m, g.inv(fh)));
            }
        }
    }
    let vertex = seen
        .iter()
        .filter(|(o, _)| *o == h.base)
        .map(|p| p.1)
        .collect();
    let star = seen.iter().map(|p| p.1).collect();
    Chi::new(vertex, star)
}

/// `χ(e(F))` from the transformations out of `F` alone.
pub fn dual_chi(pr: &Protorootoid, h: &PresentedH, f: &FunctorObj) -> Chi {
    let g = pr.groupoid();
    let mut vertex = Vec::new();
    let mut star = Vec::new();
    for t in g.dom_star(f.objects[h.base]) {
        if let Some((_, next)) = extend_transformation(pr, h, f, t) {
            star.push(g.inv(t));
            if &next == f {
                vertex.push(t);
            }
        }
    }
    Chi::new(vertex, star)
}

// ------------------------------------------------------------- stable sets

#[derive(Debug, Clone)]
pub struct StableFamily {
    pub base: Obj,
    /// Ground set: vertex group, then cod-star.
    pub vertex: Vec<Mor>,
    pub star: Vec<Mor>,
    /// Duals of singletons, in ground order.
    pub singleton_duals: Vec<FixedBitSet>,
    pub members: Vec<FixedBitSet>,
}

impl StableFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ground_len(&self) -> usize {
        self.vertex.len() + self.star.len()
    }

    pub fn to_bits(&self, chi: &Chi) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(self.ground_len());
        for m in &chi.vertex {
            if let Ok(i) = self.vertex.binary_search(m) {
                bits.insert(i);
            }
        }
        for m in &chi.star {
            if let Ok(i) = self.star.binary_search(m) {
                bits.insert(self.vertex.len() + i);
            }
        }
        bits
    }

    pub fn to_chi(&self, bits: &FixedBitSet) -> Chi {
        let k = self.vertex.len();
        Chi::new(
            bits.ones()
                .filter(|&i| i < k)
                .map(|i| self.vertex[i])
                .collect(),
            bits.ones()
                .filter(|&i| i >= k)
                .map(|i| self.star[i - k])
                .collect(),
        )
    }

    /// `A^†` as the intersection of singleton duals.
    pub fn dagger(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.ground_len());
        out.insert_range(..);
        for i in set.ones() {
            out.intersect_with(&self.singleton_duals[i]);
        }
        out
    }

    pub fn contains(&self, set: &FixedBitSet) -> bool {
        self.members.contains(set)
    }
}

pub fn stable_sets(pr: &Protorootoid, a: Obj) -> Result<StableFamily, FunctorError> {
    let g = pr.groupoid();
    if !pr.is_faithful() {
        return Err(FunctorError::NotFaithful);
    }
    let mut vertex = g.vertex_group(a);
    vertex.sort();
    let mut star = g.star(a).to_vec();
    star.sort();
    let mut fam = StableFamily {
        base: a,
        vertex,
        star,
        singleton_duals: Vec::new(),
        members: Vec::new(),
    };
    let loop_h = PresentedH::loop_datum();
    let arrow_h = PresentedH::arrow_datum();
    let mut duals = Vec::with_capacity(fam.ground_len());
    for &x in &fam.vertex {
        duals.push(fam.to_bits(&dual_chi(pr, &loop_h, &FunctorObj::loop_at(x, g))));
    }
    for &x in &fam.star {
        duals.push(fam.to_bits(&dual_chi(pr, &arrow_h, &FunctorObj::arrow_at(x, g))));
    }
    fam.singleton_duals = duals;
    let mut top = FixedBitSet::with_capacity(fam.ground_len());
    top.insert_range(..);
    let mut members: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut list = vec![top];
    members.insert(list[0].ones().collect());
    for d in &fam.singleton_duals {
        if members.insert(d.ones().collect()) {
            list.push(d.clone());
        }
    }
    let mut k = 0;
    while k < list.len() {
        for j in 0..k {
            let mut m = list[k].clone();
            m.intersect_with(&list[j]);
            if members.insert(m.ones().collect()) {
                list.push(m);
            }
        }
        k += 1;
    }
    fam.members = list;
    Ok(fam)
}

// ------------------------------------------------------- functor assertions

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    pub objects: usize,
    pub morphisms: usize,
    pub rootoid: bool,
    pub preprincipal: bool,
    pub star_injective: bool,
    pub aop: bool,
    /// Weak orders agree across every evaluation object.
    pub basepoint_invariant: bool,
}

/// Rootoid, preprincipality, local embedding and basepoint checks on a
/// functor component.
pub fn functor_report(
    pr: &Protorootoid,
    comp: &FunctorComponent,
) -> Result<FunctorReport, FunctorError> {
    use crate::aop::LocalEmbedding;
    use crate::order::rootoid_check;
    let verdict = rootoid_check(comp.pullback());
    let pp = preprincipal_unchecked(comp.pullback());
    let star_injective = comp.rho().star_injective(comp.groupoid());
    let aop = LocalEmbedding::new(pr, comp.groupoid().clone(), comp.rho().clone())
        .ok()
        .and_then(|le| le.aop_check().ok())
        .is_some_and(|r| r.holds);
    let mut basepoint_invariant = true;
    let base_orders: Vec<WeakOrder> = comp
        .groupoid()
        .objects()
        .map(|o| WeakOrder::new(comp.pullback(), o))
        .collect();
    for o in 0..comp.presentation.objects.len() {
        let other = pr.pullback(comp.groupoid(), &comp.rho_at(o))?;
        for (x, wo) in comp.groupoid().objects().zip(&base_orders) {
            basepoint_invariant &= WeakOrder::new(&other, x).poset.is_isomorphic(&wo.poset);
        }
    }
    Ok(FunctorReport {
        objects: comp.groupoid().object_count(),
        morphisms: comp.groupoid().morphism_count(),
        rootoid: verdict.rootoid,
        preprincipal: verdict.rootoid && pp.holds,
        star_injective,
        aop,
        basepoint_invariant,
    })
}
