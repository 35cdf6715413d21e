//! Finite Coxeter systems: construction, reflection cocycle, half-space
//! cross-check, parabolics and folding by diagram automorphisms.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groupoid::{
    perm_group, Groupoid, GroupoidError, GroupoidHom, Mor, Obj, System, DEFAULT_MORPHISM_BOUND,
};
use crate::order::{preprincipal_unchecked, rootoid_check, WeakOrder};
use crate::proto::{build_from_c0, ProtoError, Protorootoid};
use crate::ring::Universe;

/// Cap on the number of roots produced by closure.
pub const ROOT_BOUND: usize = 20_000;

#[derive(Debug, Error)]
pub enum CoxeterError {
    #[error("bad Coxeter matrix: {0}")]
    BadMatrix(String),
    #[error("not finite: {0}")]
    NotFinite(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("not a diagram automorphism: {0}")]
    NotDiagramAutomorphism(String),
    #[error("internal: {0}")]
    Internal(String),
    #[error("parabolic subgroup has no unique longest element")]
    NoLongest,
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Proto(#[from] ProtoError),
}

/// Symmetric matrix of orders `m(r,s)`; `m(r,r) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterMatrix {
    pub gens: Vec<String>,
    pub m: Vec<Vec<u32>>,
}

fn letters(n: usize) -> Vec<String> {
    if n <= 4 {
        ["r", "s", "t", "u"][..n]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (1..=n).map(|i| format!("s{i}")).collect()
    }
}

impl CoxeterMatrix {
    pub fn new(gens: Vec<String>, m: Vec<Vec<u32>>) -> Result<Self, CoxeterError> {
        let n = gens.len();
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(CoxeterError::BadMatrix(
                "matrix shape does not match generators".into(),
            ));
        }
        if gens.iter().collect::<HashSet<_>>().len() != n {
            return Err(CoxeterError::BadMatrix("repeated generator name".into()));
        }
        for i in 0..n {
            if m[i][i] != 1 {
                return Err(CoxeterError::BadMatrix(format!(
                    "diagonal entry at `{}` is not 1",
                    gens[i]
                )));
            }
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(CoxeterError::BadMatrix("not symmetric".into()));
                }
                if i != j && m[i][j] < 2 {
                    return Err(CoxeterError::BadMatrix(format!(
                        "entry ({},{}) below 2",
                        gens[i], gens[j]
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { gens, m })
    }

    /// From a Coxeter graph: unlisted pairs commute.
    pub fn from_edges(
        gens: Vec<String>,
        edges: &[(usize, usize, u32)],
    ) -> Result<Self, CoxeterError> {
        let n = gens.len();
        let mut m = vec![vec![2; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, v) in edges {
            if i >= n || j >= n || i == j {
                return Err(CoxeterError::BadMatrix("edge out of range".into()));
            }
            m[i][j] = v;
            m[j][i] = v;
        }
        Self::new(gens, m)
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn type_a(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 3)).collect();
        Self::from_edges(letters(n), &edges).expect("valid")
    }

    pub fn type_b(n: usize) -> Self {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i, 3)).collect();
        if let Some(last) = edges.last_mut() {
            last.2 = 4;
        }
        Self::from_edges(letters(n), &edges).expect("valid")
    }

    /// Branch node is the second generator.
    pub fn type_d(n: usize) -> Self {
        assert!(n >= 4, "type D needs rank at least 4");
        let mut edges = vec![(0, 1, 3)];
        for i in 2..n - 1 {
            edges.push((i - 1, i, 3));
        }
        edges.push((1, n - 1, 3));
        // path r - s - t..., extra leaf on s
        Self::from_edges(letters(n), &edges).expect("valid")
    }

    pub fn dihedral(m: u32) -> Self {
        Self::from_edges(letters(2), &[(0, 1, m)]).expect("m ≥ 2")
    }

    pub fn type_h3() -> Self {
        Self::from_edges(letters(3), &[(0, 1, 5), (1, 2, 3)]).expect("valid")
    }

    /// `A3`, `B3`, `D4`, `H3`, `I2(6)` and friends.
    pub fn preset(name: &str) -> Result<Self, CoxeterError> {
        let unknown = || CoxeterError::UnknownPreset(name.to_string());
        let name = name.trim();
        if let Some(rest) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
            let m: u32 = rest.parse().map_err(|_| unknown())?;
            if m < 2 {
                return Err(unknown());
            }
            return Ok(Self::dihedral(m));
        }
        let (kind, n) = name.split_at(1);
        let n: usize = n.parse().map_err(|_| unknown())?;
        match (kind, n) {
            ("A", 1..=8) => Ok(Self::type_a(n)),
            ("B", 2..=6) => Ok(Self::type_b(n)),
            ("D", 4..=6) => Ok(Self::type_d(n)),
            ("H", 3) => Ok(Self::type_h3()),
            _ => Err(unknown()),
        }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut k = 0;
            while k < comp.len() {
                let i = comp[k];
                for j in 0..n {
                    if !seen[j] && self.m[i][j] >= 3 {
                        seen[j] = true;
                        comp.push(j);
                    }
                }
                k += 1;
            }
            comp.sort();
            out.push(comp);
        }
        out
    }
}

/// `(a + b√d) / 2` with integer `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Quad {
    a: i64,
    b: i64,
}

impl Quad {
    const ZERO: Quad = Quad { a: 0, b: 0 };

    fn int(k: i64) -> Self {
        Quad { a: 2 * k, b: 0 }
    }

    fn add(self, o: Quad) -> Quad {
        Quad {
            a: self.a + o.a,
            b: self.b + o.b,
        }
    }

    fn neg(self) -> Quad {
        Quad {
            a: -self.a,
            b: -self.b,
        }
    }

    fn mul(self, o: Quad, d: i64) -> Option<Quad> {
        let x = self.a * o.a + self.b * o.b * d;
        let y = self.a * o.b + self.b * o.a;
        (x % 2 == 0 && y % 2 == 0).then_some(Quad { a: x / 2, b: y / 2 })
    }
}

/// `2cos(π/m)` as a quadratic number together with its radicand.
fn two_cos(m: u32) -> Option<(Quad, i64)> {
    match m {
        2 => Some((Quad::ZERO, 0)),
        3 => Some((Quad::int(1), 0)),
        4 => Some((Quad { a: 0, b: 2 }, 2)),
        5 => Some((Quad { a: 1, b: 1 }, 5)),
        6 => Some((Quad { a: 0, b: 2 }, 3)),
        _ => None,
    }
}

/// Simple reflections of one irreducible component of rank ≥ 3 as
/// permutations of its root system.
fn root_permutations(mat: &CoxeterMatrix, comp: &[usize]) -> Result<Vec<Vec<u32>>, CoxeterError> {
    let k = comp.len();
    let edges = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| mat.m[comp[i]][comp[j]] >= 3)
        .count();
    if edges >= k {
        return Err(CoxeterError::NotFinite("Coxeter graph has a cycle".into()));
    }
    let mut radicand = 0;
    let mut c = vec![vec![Quad::ZERO; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let m = mat.m[comp[i]][comp[j]];
            let (v, d) = two_cos(m)
                .ok_or_else(|| CoxeterError::NotFinite(format!("entry {m} in rank {k}")))?;
            if d != 0 {
                if radicand != 0 && radicand != d {
                    return Err(CoxeterError::NotFinite("incompatible edge labels".into()));
                }
                radicand = d;
            }
            c[i][j] = v;
        }
    }
    let reflect = |i: usize, v: &[Quad]| -> Option<Vec<Quad>> {
        let mut coef = v[i].neg();
        for j in 0..k {
            if j != i {
                coef = coef.add(c[i][j].mul(v[j], radicand)?);
            }
        }
        let mut out = v.to_vec();
        out[i] = coef;
        Some(out)
    };
    let mut roots: Vec<Vec<Quad>> = Vec::new();
    let mut index: HashMap<Vec<Quad>, usize> = HashMap::new();
    for i in 0..k {
        let mut e = vec![Quad::ZERO; k];
        e[i] = Quad::int(1);
        index.insert(e.clone(), roots.len());
        roots.push(e);
    }
    let mut head = 0;
    while head < roots.len() {
        for i in 0..k {
            let img = reflect(i, &roots[head])
                .ok_or_else(|| CoxeterError::Internal("non-integral root".into()))?;
            if !index.contains_key(&img) {
                if roots.len() >= ROOT_BOUND {
                    return Err(CoxeterError::NotFinite(format!(
                        "more than {ROOT_BOUND} roots"
                    )));
                }
                index.insert(img.clone(), roots.len());
                roots.push(img);
            }
        }
        head += 1;
    }
    (0..k)
        .map(|i| {
            roots
                .iter()
                .map(|r| {
                    let img = reflect(i, r)
                        .ok_or_else(|| CoxeterError::Internal("non-integral root".into()))?;
                    Ok(index[&img] as u32)
                })
                .collect()
        })
        .collect()
}

/// Finite Coxeter group as a one-object groupoid.
#[derive(Debug, Clone)]
pub struct CoxeterGroup {
    pub matrix: CoxeterMatrix,
    system: System,
    simple: Vec<Mor>,
    reflections: Vec<Mor>,
}

impl fmt::Display for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Coxeter group of order {} on {{{}}}",
            self.order(),
            self.matrix.gens.join(",")
        )
    }
}

/// Permutation model: root permutations per irreducible component, an
/// `m`-gon for rank two, a transposition for rank one.
pub fn build_coxeter(matrix: &CoxeterMatrix, bound: usize) -> Result<CoxeterGroup, CoxeterError> {
    let n = matrix.rank();
    // (offset, local permutation) per generator
    let mut blocks: Vec<(u32, Vec<u32>)> = vec![(0, Vec::new()); n];
    let mut offset = 0u32;
    for comp in matrix.components() {
        let local: Vec<Vec<u32>> = match comp.len() {
            1 => vec![vec![1, 0]],
            2 => {
                let m = matrix.m[comp[0]][comp[1]];
                let r = (0..m).map(|i| (m - i) % m).collect();
                let s = (0..m).map(|i| (m + 1 - i) % m).collect();
                vec![r, s]
            }
            _ => root_permutations(matrix, &comp)?,
        };
        let width = local[0].len() as u32;
        for (k, &i) in comp.iter().enumerate() {
            blocks[i] = (offset, local[k].clone());
        }
        offset += width;
    }
    let padded: Vec<Vec<u32>> = blocks
        .iter()
        .map(|(start, p)| {
            let mut full: Vec<u32> = (0..offset).collect();
            for (pos, &img) in p.iter().enumerate() {
                full[*start as usize + pos] = start + img;
            }
            full
        })
        .collect();
    let named: Vec<(&str, Vec<u32>)> = matrix.gens.iter().map(String::as_str).zip(padded).collect();
    let g = perm_group(&named, bound)?;
    let simple: Vec<Mor> = matrix
        .gens
        .iter()
        .map(|s| g.morphism_by_name(s).expect("generator present"))
        .collect();
    if simple.iter().collect::<HashSet<_>>().len() != n {
        return Err(CoxeterError::BadMatrix("generators collapse".into()));
    }
    let system = System::new(g, simple.clone())?;
    let g = system.groupoid();
    let mut reflections: Vec<Mor> = Vec::new();
    for w in g.morphisms() {
        for &s in &simple {
            let t = g.mul(g.mul(w, s), g.inv(w));
            if !reflections.contains(&t) {
                reflections.push(t);
            }
        }
    }
    reflections.sort_by_key(|&t| (system.length(t), t));
    Ok(CoxeterGroup {
        matrix: matrix.clone(),
        system,
        simple,
        reflections,
    })
}

impl CoxeterGroup {
    pub fn from_preset(name: &str) -> Result<Self, CoxeterError> {
        build_coxeter(&CoxeterMatrix::preset(name)?, DEFAULT_MORPHISM_BOUND)
    }

    pub fn system(&self) -> &System {
        &self.system
    }

    pub fn groupoid(&self) -> &Groupoid {
        self.system.groupoid()
    }

    pub fn order(&self) -> usize {
        self.groupoid().morphism_count()
    }

    /// Simple reflections in matrix order.
    pub fn simple(&self) -> &[Mor] {
        &self.simple
    }

    pub fn gen(&self, name: &str) -> Option<Mor> {
        self.matrix
            .gens
            .iter()
            .position(|g| g == name)
            .map(|i| self.simple[i])
    }

    pub fn reflections(&self) -> &[Mor] {
        &self.reflections
    }

    pub fn length(&self, w: Mor) -> u32 {
        self.system.length(w)
    }

    /// Element from a word over generator names; `""` is the identity.
    pub fn element(&self, word: &str) -> Option<Mor> {
        let g = self.groupoid();
        let mut w = g.id(Obj(0));
        let mut rest = word;
        while !rest.is_empty() {
            let (name, tail) = self
                .matrix
                .gens
                .iter()
                .filter(|n| rest.starts_with(n.as_str()))
                .max_by_key(|n| n.len())
                .map(|n| (n.as_str(), &rest[n.len()..]))?;
            w = g.mul(w, self.gen(name)?);
            rest = tail.trim_start_matches('·');
        }
        Some(w)
    }

    /// Reflection cocycle: carrier `T`, conjugation action,
    /// `N(w) = {t : l(tw) < l(w)}`.
    pub fn reflection_cocycle(&self) -> Result<Protorootoid, CoxeterError> {
        let g = self.groupoid();
        let pos: HashMap<Mor, usize> = self
            .reflections
            .iter()
            .enumerate()
            .map(|(i, &t)| (t, i))
            .collect();
        let labels = self.reflections.iter().map(|&t| g.name(t).to_string());
        let carrier = Universe::new(labels).map_err(ProtoError::from)?;
        let mut action = Vec::with_capacity(g.morphism_count());
        let mut n = Vec::with_capacity(g.morphism_count());
        for w in g.morphisms() {
            let wi = g.inv(w);
            action.push(
                self.reflections
                    .iter()
                    .map(|&t| pos[&g.mul(g.mul(w, t), wi)] as u32)
                    .collect(),
            );
            let mut v = FixedBitSet::with_capacity(self.reflections.len());
            for (i, &t) in self.reflections.iter().enumerate() {
                if self.length(g.mul(t, w)) < self.length(w) {
                    v.insert(i);
                }
            }
            n.push(v);
        }
        Ok(Protorootoid::new(g.clone(), vec![carrier], action, n)?)
    }

    /// Even half-space rootoid of `(W, S)`.
    pub fn half_space_rootoid(&self) -> Result<Protorootoid, CoxeterError> {
        Ok(build_from_c0(&self.system)?.even_variant()?.pr)
    }

    /// Elements of the standard parabolic subgroup on `j`.
    pub fn parabolic(&self, j: &[Mor]) -> Vec<Mor> {
        let g = self.groupoid();
        let e = g.id(Obj(0));
        let mut seen = HashSet::from([e]);
        let mut out = vec![e];
        let mut q = VecDeque::from([e]);
        while let Some(h) = q.pop_front() {
            for &s in j {
                let sh = g.mul(s, h);
                if seen.insert(sh) {
                    out.push(sh);
                    q.push_back(sh);
                }
            }
        }
        out.sort();
        out
    }

    /// Unique element of maximal length in `W_J`; an involution.
    pub fn longest_element(&self, j: &[Mor]) -> Result<Mor, CoxeterError> {
        let elems = self.parabolic(j);
        let top = elems.iter().map(|&w| self.length(w)).max().unwrap_or(0);
        let tops: Vec<Mor> = elems
            .into_iter()
            .filter(|&w| self.length(w) == top)
            .collect();
        match tops.as_slice() {
            [w] if self.groupoid().mul(*w, *w) == self.groupoid().id(Obj(0)) => Ok(*w),
            _ => Err(CoxeterError::NoLongest),
        }
    }

    /// Cross-check of the half-space model against the reflection cocycle.
    pub fn halfspace_oracle(&self) -> Result<HalfSpaceReport, CoxeterError> {
        let g = self.groupoid();
        let a = Obj(0);
        let hs = build_from_c0(&self.system)?;
        let even = hs.even_variant()?;
        let refl = self.reflection_cocycle()?;
        let len = g.star(a).len();
        let sets = &hs.sets[0];
        let set_pos: HashMap<&FixedBitSet, usize> =
            sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
        let mut images = Vec::new();
        let mut claim_b = true;
        let mut pair_of_t = Vec::with_capacity(self.reflections.len());
        let mut all_found = true;
        for &t in &self.reflections {
            let mut plus = FixedBitSet::with_capacity(len);
            for (p, &w) in g.star(a).iter().enumerate() {
                if self.length(g.mul(t, w)) > self.length(w) {
                    plus.insert(p);
                }
            }
            let mut minus = plus.clone();
            minus.toggle_range(..len);
            let id_pos = g.star_pos(g.id(a));
            claim_b &= plus.contains(id_pos) && !minus.contains(id_pos);
            match (set_pos.get(&plus), set_pos.get(&minus)) {
                (Some(&p), Some(_)) => pair_of_t.push(even.projection[0][p]),
                _ => {
                    all_found = false;
                    pair_of_t.push(u32::MAX);
                }
            }
            images.push(plus);
            images.push(minus);
        }
        let distinct = images.iter().collect::<HashSet<_>>().len() == images.len();
        let bijection = all_found && distinct && images.len() == sets.len();
        let mut matches_cocycle = bijection;
        let mut sizes_match = true;
        if bijection {
            for w in g.morphisms() {
                let mut mapped = FixedBitSet::with_capacity(even.pr.carrier_len(a));
                for t in refl.n(w).ones() {
                    mapped.insert(pair_of_t[t] as usize);
                }
                matches_cocycle &= &mapped == even.pr.n(w);
            }
        }
        for w in g.morphisms() {
            sizes_match &=
                refl.rank(w) == self.length(w) as usize && even.pr.rank(w) == refl.rank(w);
        }
        let wo_refl = WeakOrder::new(&refl, a);
        let wo_half = WeakOrder::new(&even.pr, a);
        let weak_orders_equal = wo_refl.poset == wo_half.poset;
        Ok(HalfSpaceReport {
            reflections: self.reflections.len(),
            half_spaces: sets.len(),
            distinct,
            claim_b,
            bijection,
            matches_cocycle,
            sizes_match,
            weak_orders_equal,
        })
    }

    /// Automorphism of `W` induced by a permutation of the generators.
    pub fn extend_diagram_automorphism(&self, perm: &[usize]) -> Result<Vec<Mor>, CoxeterError> {
        let n = self.matrix.rank();
        let bad = |m: &str| CoxeterError::NotDiagramAutomorphism(m.to_string());
        if perm.len() != n
            || perm.iter().collect::<HashSet<_>>().len() != n
            || perm.iter().any(|&p| p >= n)
        {
            return Err(bad("not a permutation of the generators"));
        }
        for i in 0..n {
            for j in 0..n {
                if self.matrix.m[perm[i]][perm[j]] != self.matrix.m[i][j] {
                    return Err(bad("Coxeter matrix not preserved"));
                }
            }
        }
        let g = self.groupoid();
        let gen_img: HashMap<Mor, Mor> = (0..n)
            .map(|i| (self.simple[i], self.simple[perm[i]]))
            .collect();
        let mut img: Vec<Option<Mor>> = vec![None; g.morphism_count()];
        let e = g.id(Obj(0));
        img[e.idx()] = Some(e);
        let mut q = VecDeque::from([e]);
        while let Some(h) = q.pop_front() {
            for &s in &self.simple {
                let sh = g.mul(s, h);
                let v = g.mul(gen_img[&s], img[h.idx()].expect("visited"));
                match img[sh.idx()] {
                    None => {
                        img[sh.idx()] = Some(v);
                        q.push_back(sh);
                    }
                    Some(old) if old != v => return Err(bad("generator map does not extend")),
                    _ => {}
                }
            }
        }
        Ok(img.into_iter().map(|m| m.expect("generated")).collect())
    }

    /// Fixed points of a group of diagram automorphisms and the pulled
    /// back rootoid on them.
    pub fn fold_fixed_subgroup(
        &self,
        generators: &[Vec<usize>],
    ) -> Result<FoldReport, CoxeterError> {
        let n = self.matrix.rank();
        let g = self.groupoid();
        // close the generating permutations under composition
        let mut group: Vec<Vec<usize>> = vec![(0..n).collect()];
        let mut k = 0;
        while k < group.len() {
            for p in generators {
                let q: Vec<usize> = group[k].iter().map(|&i| p[i]).collect();
                if !group.contains(&q) {
                    group.push(q);
                }
            }
            k += 1;
        }
        let autos: Vec<Vec<Mor>> = group
            .iter()
            .map(|p| self.extend_diagram_automorphism(p))
            .collect::<Result<_, _>>()?;
        let fixed: Vec<Mor> = g
            .morphisms()
            .filter(|&w| autos.iter().all(|s| s[w.idx()] == w))
            .collect();
        let refl = self.reflection_cocycle()?;
        let wo = WeakOrder::new(&refl, Obj(0));
        let is_fixed = |w: Mor| fixed.binary_search(&w).is_ok();
        let perp = |w: Mor| -> Option<Mor> {
            let above: Vec<Mor> = fixed.iter().copied().filter(|&u| wo.le(w, u)).collect();
            above
                .iter()
                .copied()
                .find(|&u| above.iter().all(|&v| wo.le(u, v)))
        };
        let mut join_formula = true;
        for w in g.morphisms() {
            let orbit: Vec<Mor> = autos.iter().map(|s| s[w.idx()]).collect();
            join_formula &= perp(w).is_some() && perp(w) == wo.join(&orbit);
        }
        let mut closed = true;
        for (i, &u) in fixed.iter().enumerate() {
            for &v in &fixed[i..] {
                closed &= wo.join(&[u, v]).map_or(true, is_fixed)
                    && wo.meet(&[u, v]).map_or(true, is_fixed);
            }
        }
        let (sub, hom) = g.restrict(&fixed)?;
        let pullback = refl.pullback(&sub, &hom)?;
        let verdict = rootoid_check(&pullback);
        let pp = preprincipal_unchecked(&pullback);
        let mut atoms: Vec<Mor> = pp.all_atoms().into_iter().map(|m| hom.apply(m)).collect();
        atoms.sort();
        let mut perp_simple: Vec<Mor> = self.simple.iter().filter_map(|&s| perp(s)).collect();
        perp_simple.sort();
        perp_simple.dedup();
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let mut o: Vec<usize> = group.iter().map(|p| p[i]).collect();
            o.sort();
            o.dedup();
            if !orbits.contains(&o) {
                orbits.push(o);
            }
        }
        let mut tits: Vec<Mor> = orbits
            .iter()
            .map(|o| self.longest_element(&o.iter().map(|&i| self.simple[i]).collect::<Vec<_>>()))
            .collect::<Result<_, _>>()?;
        tits.sort();
        Ok(FoldReport {
            group_order: group.len(),
            atoms_match: atoms == perp_simple,
            tits_match: atoms == tits,
            fixed,
            atoms,
            perp_simple,
            tits,
            join_formula,
            closed,
            rootoid: verdict.rootoid,
            preprincipal: verdict.rootoid && pp.holds,
            sub,
            hom,
            pullback,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfSpaceReport {
    pub reflections: usize,
    pub half_spaces: usize,
    pub distinct: bool,
    /// `1 ∈ W_(t,ε)` iff `ε = +`.
    pub claim_b: bool,
    pub bijection: bool,
    pub matches_cocycle: bool,
    pub sizes_match: bool,
    pub weak_orders_equal: bool,
}

impl HalfSpaceReport {
    pub fn holds(&self) -> bool {
        self.distinct
            && self.claim_b
            && self.bijection
            && self.matches_cocycle
            && self.sizes_match
            && self.weak_orders_equal
    }
}

#[derive(Debug, Clone)]
pub struct FoldReport {
    pub group_order: usize,
    pub fixed: Vec<Mor>,
    /// Atoms of the fixed subgroup, as elements of `W`.
    pub atoms: Vec<Mor>,
    pub perp_simple: Vec<Mor>,
    /// Longest elements of orbit parabolics.
    pub tits: Vec<Mor>,
    pub atoms_match: bool,
    pub tits_match: bool,
    pub join_formula: bool,
    /// Joins and meets of fixed elements stay fixed.
    pub closed: bool,
    pub rootoid: bool,
    pub preprincipal: bool,
    pub sub: Groupoid,
    pub hom: GroupoidHom,
    pub pullback: Protorootoid,
}

pub fn universe_of_reflections(cg: &CoxeterGroup) -> Result<Arc<Universe>, CoxeterError> {
    Ok(cg.reflection_cocycle()?.carrier(Obj(0)).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{n_complete_check, preprincipal_check};

    #[test]
    fn orders() {
        for (name, order) in [
            ("I2(2)", 4),
            ("I2(3)", 6),
            ("I2(4)", 8),
            ("I2(6)", 12),
            ("A3", 24),
            ("B3", 48),
            ("D4", 192),
            ("H3", 120),
        ] {
            assert_eq!(
                CoxeterGroup::from_preset(name).unwrap().order(),
                order,
                "{name}"
            );
        }
    }

    #[test]
    fn infinite_rejected() {
        let tri =
            CoxeterMatrix::from_edges(letters(3), &[(0, 1, 3), (1, 2, 3), (0, 2, 3)]).unwrap();
        assert!(matches!(
            build_coxeter(&tri, 10_000),
            Err(CoxeterError::NotFinite(_))
        ));
        let hyper = CoxeterMatrix::from_edges(letters(3), &[(0, 1, 7), (1, 2, 3)]).unwrap();
        assert!(matches!(
            build_coxeter(&hyper, 10_000),
            Err(CoxeterError::NotFinite(_))
        ));
        let affine_b = CoxeterMatrix::from_edges(letters(3), &[(0, 1, 4), (1, 2, 4)]).unwrap();
        assert!(build_coxeter(&affine_b, 10_000).is_err());
        assert!(CoxeterMatrix::new(letters(2), vec![vec![1, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn reflection_cocycle_values() {
        let cg = CoxeterGroup::from_preset("I2(4)").unwrap();
        let pr = cg.reflection_cocycle().unwrap();
        pr.check_cocycle().unwrap();
        assert_eq!(cg.reflections().len(), 4);
        let w0 = cg.longest_element(cg.simple()).unwrap();
        assert_eq!(cg.length(w0), 4);
        assert_eq!(pr.rank(w0), 4);
        for &s in cg.simple() {
            let only: Vec<usize> = pr.n(s).ones().collect();
            assert_eq!(
                only,
                vec![cg.reflections().iter().position(|&t| t == s).unwrap()]
            );
        }
        let a3 = CoxeterGroup::from_preset("A3").unwrap();
        let w0 = a3.longest_element(a3.simple()).unwrap();
        assert_eq!(a3.reflection_cocycle().unwrap().rank(w0), 6);
    }

    #[test]
    fn oracle_agrees() {
        for name in ["I2(3)", "I2(4)", "A3", "B3"] {
            let cg = CoxeterGroup::from_preset(name).unwrap();
            let r = cg.halfspace_oracle().unwrap();
            assert!(r.holds(), "{name}: {r:?}");
        }
    }

    #[test]
    fn longest_flips_a3() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let g = cg.groupoid();
        let w0 = cg.longest_element(cg.simple()).unwrap();
        let (r, t) = (cg.gen("r").unwrap(), cg.gen("t").unwrap());
        assert_eq!(g.mul(g.mul(w0, r), w0), t);
        assert_eq!(cg.longest_element(&[r]).unwrap(), r);
    }

    #[test]
    fn a3_rootoid_and_complete() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let pr = cg.half_space_rootoid().unwrap();
        let v = rootoid_check(&pr);
        assert!(v.rootoid && v.complete);
        assert!(n_complete_check(&pr, 3));
        let pp = preprincipal_check(&pr).unwrap();
        assert_eq!(pp.all_atoms(), cg.system().gens().to_vec());
    }

    #[test]
    fn fold_a3() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let f = cg.fold_fixed_subgroup(&[vec![2, 1, 0]]).unwrap();
        assert_eq!(f.fixed.len(), 8);
        assert!(f.atoms_match && f.tits_match && f.join_formula && f.closed && f.preprincipal);
        let trivial = cg.fold_fixed_subgroup(&[]).unwrap();
        assert_eq!(trivial.fixed.len(), 24);
        assert!(cg.fold_fixed_subgroup(&[vec![1, 0, 2]]).is_err());
    }

    #[test]
    fn words() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let sr = cg.element("sr").unwrap();
        assert_eq!(cg.length(sr), 2);
        assert_eq!(cg.element("").unwrap(), cg.groupoid().id(Obj(0)));
        assert_eq!(cg.element("rr").unwrap(), cg.groupoid().id(Obj(0)));
    }
}
