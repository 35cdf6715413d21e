//! Braid presentation data of even systems and the word algorithm.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::groupoid::{Mor, Obj, System};
use crate::order::WeakOrder;
use crate::proto::Protorootoid;

/// Cap on words visited while exploring a braid class.
pub const CLASS_CAP: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("join of `{r}` and `{s}` has {count} reduced expressions, expected 2")]
    ReducedCount { r: String, s: String, count: usize },
    #[error("word is not composable at position {0}")]
    NotComposable(usize),
    #[error("letter `{0}` is not a generator")]
    NotGenerator(String),
    #[error("braid class exceeds {0} words")]
    Overflow(usize),
    #[error("not 2-complete: no join of `{0}` and `{1}`")]
    NotTwoComplete(String, String),
}

/// `[left] = [right]`, both words running from `b` to `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidRelation {
    pub cod: Obj,
    pub dom: Obj,
    pub left: Vec<Mor>,
    pub right: Vec<Mor>,
}

#[derive(Debug, Clone)]
pub struct BraidData {
    /// Per object: `m(r,s)` for generators `r,s` with that codomain; `None` when no join.
    pub matrices: Vec<BTreeMap<(Mor, Mor), Option<u32>>>,
    /// `π_r(t)`, keyed by `(r, t)`.
    pub pi: HashMap<(Mor, Mor), Mor>,
    /// One relation per ordered pair `(r, s)` of distinct generators with a join.
    pub relations: Vec<BraidRelation>,
}

/// Reduced words of `w`, capped.
pub fn reduced_words(sys: &System, w: Mor, cap: usize) -> Result<Vec<Vec<Mor>>, BraidError> {
    let g = sys.groupoid();
    let l = sys.length(w);
    if l == 0 {
        return Ok(vec![Vec::new()]);
    }
    let mut out = Vec::new();
    for s in sys.gens_at(g.cod(w)) {
        let rest = g.mul(g.inv(s), w);
        if sys.length(rest) + 1 == l {
            for tail in reduced_words(sys, rest, cap)? {
                let mut word = vec![s];
                word.extend(tail);
                out.push(word);
                if out.len() > cap {
                    return Err(BraidError::Overflow(cap));
                }
            }
        }
    }
    Ok(out)
}

fn name_word(sys: &System, w: &[Mor]) -> String {
    let g = sys.groupoid();
    let parts: Vec<&str> = w.iter().map(|&m| g.name(m)).collect();
    format!("[{}]", parts.join(","))
}

/// Coxeter matrices, `π` maps and braid relations from the weak orders.
pub fn braid_data(sys: &System, pr: &Protorootoid) -> Result<BraidData, BraidError> {
    let g = sys.groupoid();
    let mut matrices = Vec::with_capacity(g.object_count());
    let mut pi = HashMap::new();
    let mut relations = Vec::new();
    for a in g.objects() {
        let wo = WeakOrder::new(pr, a);
        let gens: Vec<Mor> = sys.gens_at(a).collect();
        let mut m = BTreeMap::new();
        for &r in &gens {
            for &s in &gens {
                if r == s {
                    m.insert((r, s), Some(1));
                    continue;
                }
                let Some(j) = wo.join(&[r, s]) else {
                    m.insert((r, s), None);
                    continue;
                };
                m.insert((r, s), Some(sys.length(j)));
                let words = reduced_words(sys, j, CLASS_CAP)?;
                let from_r: Vec<&Vec<Mor>> = words.iter().filter(|w| w[0] == r).collect();
                let from_s: Vec<&Vec<Mor>> = words.iter().filter(|w| w[0] == s).collect();
                if words.len() != 2 || from_r.len() != 1 || from_s.len() != 1 {
                    return Err(BraidError::ReducedCount {
                        r: g.name(r).into(),
                        s: g.name(s).into(),
                        count: words.len(),
                    });
                }
                let (left, right) = (from_r[0].clone(), from_s[0].clone());
                pi.insert((r, left[1]), right[0]);
                relations.push(BraidRelation {
                    cod: a,
                    dom: g.dom(j),
                    left,
                    right,
                });
            }
        }
        matrices.push(m);
    }
    for &r in sys.gens() {
        pi.insert((r, g.inv(r)), r);
    }
    relations.sort();
    Ok(BraidData {
        matrices,
        pi,
        relations,
    })
}

impl BraidData {
    pub fn entry(&self, sys: &System, r: Mor, s: Mor) -> Option<u32> {
        let a = sys.groupoid().cod(r);
        self.matrices[a.idx()].get(&(r, s)).copied().flatten()
    }

    pub fn pi(&self, r: Mor, t: Mor) -> Option<Mor> {
        self.pi.get(&(r, t)).copied()
    }

    pub fn is_two_complete(&self) -> bool {
        self.matrices
            .iter()
            .all(|m| m.values().all(Option::is_some))
    }

    fn contains(&self, left: &[Mor], right: &[Mor]) -> bool {
        self.relations.iter().any(|rel| {
            (rel.left == left && rel.right == right) || (rel.left == right && rel.right == left)
        })
    }

    /// Inverses and cyclic shifts of relations are relations, and the
    /// matrix entries they carry agree.
    pub fn shift_check(&self, sys: &System) -> ShiftReport {
        let g = sys.groupoid();
        let inv = |w: &[Mor]| -> Vec<Mor> { w.iter().rev().map(|&m| g.inv(m)).collect() };
        let mut inverses = true;
        let mut shifts = true;
        let mut entries = true;
        for rel in &self.relations {
            let (r, s) = (&rel.left, &rel.right);
            let n = r.len();
            inverses &= self.contains(&inv(r), &inv(s));
            let mut left = vec![g.inv(s[0])];
            left.extend_from_slice(&r[..n - 1]);
            let mut right = s[1..].to_vec();
            right.push(g.inv(r[n - 1]));
            shifts &= self.contains(&left, &right);
            let m0 = self.entry(sys, r[0], s[0]);
            let m1 = self.entry(sys, g.inv(r[n - 1]), g.inv(s[n - 1]));
            let m2 = self.entry(sys, g.inv(s[0]), s[1]);
            entries &= m0 == m1 && m1 == m2;
        }
        let mut bijective = true;
        for &r in sys.gens() {
            let ri = g.inv(r);
            for t in sys.gens_at(g.dom(r)) {
                if let Some(s) = self.pi(r, t) {
                    bijective &= self.pi(ri, s) == Some(t);
                }
            }
        }
        ShiftReport {
            inverses,
            shifts,
            entries,
            bijective,
        }
    }

    /// Braid relations as name lists, for display.
    pub fn relation_strings(&self, sys: &System) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| format!("{} = {}", name_word(sys, &r.left), name_word(sys, &r.right)))
            .collect()
    }

    /// `π_r` as `(t, π_r(t))` name pairs.
    pub fn pi_table(&self, sys: &System) -> Vec<(String, Vec<(String, String)>)> {
        let g = sys.groupoid();
        sys.gens()
            .iter()
            .map(|&r| {
                let mut pairs: Vec<(String, String)> = sys
                    .gens_at(g.dom(r))
                    .filter_map(|t| {
                        self.pi(r, t)
                            .map(|s| (g.name(t).to_string(), g.name(s).to_string()))
                    })
                    .collect();
                pairs.sort();
                (g.name(r).to_string(), pairs)
            })
            .collect()
    }

    pub fn to_json(&self, sys: &System) -> serde_json::Value {
        let g = sys.groupoid();
        let matrices: Vec<serde_json::Value> = g
            .objects()
            .map(|a| {
                let gens: Vec<Mor> = sys.gens_at(a).collect();
                let rows: Vec<Vec<Option<u32>>> = gens
                    .iter()
                    .map(|&r| gens.iter().map(|&s| self.entry(sys, r, s)).collect())
                    .collect();
                serde_json::json!({
                    "object": g.obj_name(a),
                    "gens": gens.iter().map(|&s| g.name(s)).collect::<Vec<_>>(),
                    "m": rows,
                })
            })
            .collect();
        let trivial: Vec<String> = sys
            .gens()
            .iter()
            .map(|&s| format!("{}^-1 = {}", g.name(s), g.name(g.inv(s))))
            .collect();
        serde_json::json!({
            "generators": sys.gens().iter().map(|&s| g.name(s)).collect::<Vec<_>>(),
            "trivial_relations": trivial,
            "braid_relations": self.relation_strings(sys),
            "matrices": matrices,
            "pi": self.pi_table(sys).into_iter().map(|(r, p)| serde_json::json!({"r": r, "map": p})).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    pub inverses: bool,
    pub shifts: bool,
    pub entries: bool,
    /// `π_{r*}` inverts `π_r`.
    pub bijective: bool,
}

impl ShiftReport {
    pub fn holds(&self) -> bool {
        self.inverses && self.shifts && self.entries && self.bijective
    }
}

/// Representation on generators, if the `π_r` extend to a functor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveHalves {
    pub holds: bool,
    /// `images[g]` lists `π(g)(t)` for `t` in `gens_at(dom g)` order.
    pub images: Option<Vec<Vec<Mor>>>,
}

pub fn five_halves_check(sys: &System, bd: &BraidData) -> Result<FiveHalves, BraidError> {
    let g = sys.groupoid();
    for (a, m) in bd.matrices.iter().enumerate() {
        if let Some(((r, s), _)) = m.iter().find(|(_, v)| v.is_none()) {
            let _ = a;
            return Err(BraidError::NotTwoComplete(
                g.name(*r).into(),
                g.name(*s).into(),
            ));
        }
    }
    let at: Vec<Vec<Mor>> = g.objects().map(|a| sys.gens_at(a).collect()).collect();
    let pi_of = |r: Mor| -> Vec<Mor> {
        at[g.dom(r).idx()]
            .iter()
            .map(|&t| bd.pi(r, t).expect("2-complete"))
            .collect()
    };
    // compose π(s) after a map out of star b
    let apply = |s: Mor, img: &[Mor]| -> Vec<Mor> {
        let ps = pi_of(s);
        let src = &at[g.dom(s).idx()];
        img.iter()
            .map(|t| ps[src.iter().position(|x| x == t).expect("in star")])
            .collect()
    };
    let mut images: Vec<Option<Vec<Mor>>> = vec![None; g.morphism_count()];
    let mut q = VecDeque::new();
    for a in g.objects() {
        images[g.id(a).idx()] = Some(at[a.idx()].clone());
        q.push_back(g.id(a));
    }
    let mut holds = true;
    while let Some(h) = q.pop_front() {
        let img = images[h.idx()].clone().expect("visited");
        for s in sys.gens_at(g.cod(h)) {
            let sh = g.mul(s, h);
            let v = apply(s, &img);
            match &images[sh.idx()] {
                None => {
                    images[sh.idx()] = Some(v);
                    q.push_back(sh);
                }
                Some(old) if *old != v => holds = false,
                _ => {}
            }
        }
    }
    Ok(FiveHalves {
        holds,
        images: holds.then(|| images.into_iter().map(|i| i.expect("generated")).collect()),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitsResult {
    pub reduced: Vec<Mor>,
    pub element: Mor,
    /// Braid class of the reduced word, when requested.
    pub class: Option<Vec<Vec<Mor>>>,
}

fn check_word(sys: &System, word: &[Mor]) -> Result<(), BraidError> {
    let g = sys.groupoid();
    for (i, &m) in word.iter().enumerate() {
        if !sys.is_gen(m) {
            return Err(BraidError::NotGenerator(g.name(m).into()));
        }
        if i + 1 < word.len() && g.dom(m) != g.cod(word[i + 1]) {
            return Err(BraidError::NotComposable(i));
        }
    }
    Ok(())
}

/// Words reachable by braid moves alone.
pub fn braid_class(bd: &BraidData, word: &[Mor], cap: usize) -> Result<Vec<Vec<Mor>>, BraidError> {
    let mut seen: HashSet<Vec<Mor>> = HashSet::from([word.to_vec()]);
    let mut order = vec![word.to_vec()];
    let mut q = VecDeque::from([word.to_vec()]);
    while let Some(w) = q.pop_front() {
        for rel in &bd.relations {
            let n = rel.left.len();
            if n > w.len() {
                continue;
            }
            for i in 0..=w.len() - n {
                if w[i..i + n] == rel.left[..] {
                    let mut v = w.clone();
                    v[i..i + n].copy_from_slice(&rel.right);
                    if seen.insert(v.clone()) {
                        if seen.len() > cap {
                            return Err(BraidError::Overflow(cap));
                        }
                        order.push(v.clone());
                        q.push_back(v);
                    }
                }
            }
        }
    }
    order.sort();
    Ok(order)
}

/// Braid moves plus deletion of `s s*` until none applies.
pub fn tits_reduce(
    sys: &System,
    bd: &BraidData,
    word: &[Mor],
    with_class: bool,
) -> Result<TitsResult, BraidError> {
    check_word(sys, word)?;
    let g = sys.groupoid();
    let element = if word.is_empty() {
        // empty word has no object; callers use the identity of their choice
        g.id(Obj(0))
    } else {
        g.product(word)
            .ok()
            .flatten()
            .ok_or(BraidError::NotComposable(0))?
    };
    let mut current = word.to_vec();
    'outer: loop {
        let class = braid_class(bd, &current, CLASS_CAP)?;
        for w in &class {
            if let Some(i) = w.windows(2).position(|p| p[1] == g.inv(p[0])) {
                let mut v = w.clone();
                v.drain(i..i + 2);
                current = v;
                continue 'outer;
            }
        }
        let class = with_class.then_some(class);
        return Ok(TitsResult {
            reduced: current,
            element,
            class,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGroup;
    use crate::groupoid::{perm_group, DEFAULT_MORPHISM_BOUND};
    use crate::proto::build_from_c0;

    fn even_pr(sys: &System) -> Protorootoid {
        build_from_c0(sys).unwrap().even_variant().unwrap().pr
    }

    fn cyclic(m: u32) -> System {
        let p: Vec<u32> = (0..m).map(|i| (i + 1) % m).collect();
        let q: Vec<u32> = (0..m).map(|i| (i + m - 1) % m).collect();
        let g = perm_group(&[("x", p), ("y", q)], DEFAULT_MORPHISM_BOUND).unwrap();
        let gens = vec![
            g.morphism_by_name("x").unwrap(),
            g.morphism_by_name("y").unwrap(),
        ];
        System::new(g, gens).unwrap()
    }

    #[test]
    fn cyclic_six_braid() {
        let sys = cyclic(6);
        let bd = braid_data(&sys, &even_pr(&sys)).unwrap();
        let g = sys.groupoid();
        let (x, y) = (
            g.morphism_by_name("x").unwrap(),
            g.morphism_by_name("y").unwrap(),
        );
        assert_eq!(bd.entry(&sys, x, y), Some(3));
        assert!(bd
            .relations
            .iter()
            .any(|r| r.left == vec![x, x, x] && r.right == vec![y, y, y]));
        assert_eq!(bd.pi(x, x), Some(y));
        assert_eq!(bd.pi(x, y), Some(x));
        assert!(bd.shift_check(&sys).holds());
        assert!(five_halves_check(&sys, &bd).unwrap().holds);
    }

    #[test]
    fn coxeter_presentation() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let sys = cg.system();
        let bd = braid_data(sys, &cg.half_space_rootoid().unwrap()).unwrap();
        let (r, s, t) = (
            cg.gen("r").unwrap(),
            cg.gen("s").unwrap(),
            cg.gen("t").unwrap(),
        );
        assert_eq!(bd.entry(sys, r, s), Some(3));
        assert_eq!(bd.entry(sys, r, t), Some(2));
        for &a in cg.simple() {
            for &b in cg.simple() {
                if a != b {
                    assert_eq!(bd.pi(a, b), Some(b));
                }
            }
        }
        assert!(bd.shift_check(sys).holds());
        let fh = five_halves_check(sys, &bd).unwrap();
        assert!(fh.holds);
    }

    #[test]
    fn dihedral_commuting() {
        let cg = CoxeterGroup::from_preset("I2(2)").unwrap();
        let sys = cg.system();
        let bd = braid_data(sys, &cg.half_space_rootoid().unwrap()).unwrap();
        assert_eq!(bd.relations.len(), 2);
        assert!(bd.shift_check(sys).holds());
    }

    #[test]
    fn tits() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let sys = cg.system();
        let bd = braid_data(sys, &cg.half_space_rootoid().unwrap()).unwrap();
        let (r, s) = (cg.gen("r").unwrap(), cg.gen("s").unwrap());
        let out = tits_reduce(sys, &bd, &[s, s], false).unwrap();
        assert!(out.reduced.is_empty());
        let out = tits_reduce(sys, &bd, &[r, s, r, s], false).unwrap();
        assert_eq!(out.reduced.len(), 2);
        assert_eq!(
            sys.groupoid().product(&out.reduced).unwrap(),
            Some(cg.element("sr").unwrap())
        );
        let w0 = cg.longest_element(cg.simple()).unwrap();
        let word = sys.word(w0).to_vec();
        let out = tits_reduce(sys, &bd, &word, true).unwrap();
        assert_eq!(out.class.unwrap().len(), 16);
        assert_eq!(reduced_words(sys, w0, CLASS_CAP).unwrap().len(), 16);
    }
}
