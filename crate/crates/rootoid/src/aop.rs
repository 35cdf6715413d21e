//! Local embeddings, partially defined adjoints and the AOP.

use serde::Serialize;
use thiserror::Error;

use crate::groupoid::{Groupoid, GroupoidError, GroupoidHom, Mor, Obj};
use crate::order::{preprincipal_unchecked, rootoid_check, WeakOrder};
use crate::proto::{ProtoError, Protorootoid};

#[derive(Debug, Error)]
pub enum AopError {
    #[error("star map at object {0} is not injective")]
    NotStarInjective(String),
    #[error("no minimum above {0} in the source star")]
    NoMinimum(String),
    #[error("generator set is empty or contains an identity")]
    BadGenerators,
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error(transparent)]
    Proto(#[from] ProtoError),
}

/// Star-injective homomorphism into a protorootoid, with its pullback.
pub struct LocalEmbedding<'a> {
    codomain: &'a Protorootoid,
    source: Groupoid,
    theta: GroupoidHom,
    pullback: Protorootoid,
    weak: Vec<WeakOrder>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AopReport {
    pub holds: bool,
    /// `(w', w)` in codomain names.
    pub witness: Option<(String, String)>,
    /// `w ≤ θ(θ^⊥(w))` and monotonicity on the ideal.
    pub galois: bool,
    /// Existing joins of image elements stay in the image.
    pub join_closed: bool,
}

impl<'a> LocalEmbedding<'a> {
    pub fn new(
        codomain: &'a Protorootoid,
        source: Groupoid,
        theta: GroupoidHom,
    ) -> Result<Self, AopError> {
        theta.validate(&source, codomain.groupoid())?;
        if !theta.star_injective(&source) {
            let bad = source
                .objects()
                .find(|&a| {
                    let mut img: Vec<Mor> =
                        source.star(a).iter().map(|&m| theta.apply(m)).collect();
                    img.sort();
                    img.dedup();
                    img.len() != source.star(a).len()
                })
                .map(|a| source.obj_name(a).to_string())
                .unwrap_or_default();
            return Err(AopError::NotStarInjective(bad));
        }
        let pullback = codomain.pullback(&source, &theta)?;
        let weak = codomain
            .groupoid()
            .objects()
            .map(|b| WeakOrder::new(codomain, b))
            .collect();
        Ok(Self {
            codomain,
            source,
            theta,
            pullback,
            weak,
        })
    }

    /// Inclusion of the subgroupoid generated by `gens`.
    pub fn generated(codomain: &'a Protorootoid, gens: &[Mor]) -> Result<Self, AopError> {
        let g = codomain.groupoid();
        if gens.is_empty() || gens.iter().any(|&m| g.is_identity(m)) {
            return Err(AopError::BadGenerators);
        }
        let elems = generated_closure(g, gens);
        let (source, theta) = g.restrict(&elems)?;
        Self::new(codomain, source, theta)
    }

    pub fn source(&self) -> &Groupoid {
        &self.source
    }

    pub fn theta(&self) -> &GroupoidHom {
        &self.theta
    }

    pub fn pullback(&self) -> &Protorootoid {
        &self.pullback
    }

    pub fn codomain(&self) -> &Protorootoid {
        self.codomain
    }

    fn wo(&self, a: Obj) -> &WeakOrder {
        &self.weak[self.theta.obj(a).idx()]
    }

    /// Codomain elements below some image element, at source object `a`.
    pub fn ideal(&self, a: Obj) -> Vec<Mor> {
        let wo = self.wo(a);
        let img: Vec<Mor> = self
            .source
            .star(a)
            .iter()
            .map(|&u| self.theta.apply(u))
            .collect();
        wo.elems
            .iter()
            .copied()
            .filter(|&w| img.iter().any(|&t| wo.le(w, t)))
            .collect()
    }

    /// Least `u` in the star of `a` with `w ≤ θ(u)`; `None` outside the ideal.
    pub fn theta_perp(&self, a: Obj, w: Mor) -> Result<Option<Mor>, AopError> {
        let wo = self.wo(a);
        let above: Vec<Mor> = self
            .source
            .star(a)
            .iter()
            .copied()
            .filter(|&u| wo.le(w, self.theta.apply(u)))
            .collect();
        if above.is_empty() {
            return Ok(None);
        }
        above
            .iter()
            .copied()
            .find(|&u| {
                above
                    .iter()
                    .all(|&v| wo.le(self.theta.apply(u), self.theta.apply(v)))
            })
            .map(Some)
            .ok_or_else(|| AopError::NoMinimum(self.codomain.groupoid().name(w).to_string()))
    }

    pub fn aop_check(&self) -> Result<AopReport, AopError> {
        let cg = self.codomain.groupoid();
        let mut report = AopReport {
            holds: true,
            witness: None,
            galois: true,
            join_closed: true,
        };
        for a in self.source.objects() {
            let wo = self.wo(a);
            let ideal = self.ideal(a);
            let mut perp = Vec::with_capacity(ideal.len());
            for &w in &ideal {
                let u = self.theta_perp(a, w)?.expect("ideal member");
                perp.push(self.theta.apply(u));
                report.galois &= wo.le(w, self.theta.apply(u));
            }
            for (i, &w) in ideal.iter().enumerate() {
                for (j, &v) in ideal.iter().enumerate() {
                    if wo.le(w, v) && !wo.le(perp[i], perp[j]) {
                        report.galois = false;
                    }
                }
            }
            let star = self.source.star(a);
            for &src in star {
                let img = self.theta.apply(src);
                let n_img = self.codomain.n(img);
                for (i, &w) in ideal.iter().enumerate() {
                    if n_img.is_disjoint(self.codomain.n(w))
                        && !n_img.is_disjoint(self.codomain.n(perp[i]))
                    {
                        report.holds = false;
                        report.witness.get_or_insert_with(|| {
                            (cg.name(img).to_string(), cg.name(w).to_string())
                        });
                    }
                }
            }
            let image: Vec<Mor> = star.iter().map(|&u| self.theta.apply(u)).collect();
            for (i, &x) in image.iter().enumerate() {
                for &y in &image[i + 1..] {
                    if let Some(j) = wo.join(&[x, y]) {
                        report.join_closed &= image.contains(&j);
                    }
                }
            }
        }
        Ok(report)
    }

    /// `{θ^⊥(s)}` over codomain atoms in the ideal, as codomain elements.
    pub fn perp_of_atoms(&self) -> Result<Vec<Mor>, AopError> {
        let mut out = Vec::new();
        for a in self.source.objects() {
            for s in self.wo(a).atoms() {
                if let Some(u) = self.theta_perp(a, s)? {
                    out.push(self.theta.apply(u));
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Pullback atoms, as codomain elements.
    pub fn pullback_atoms(&self) -> Vec<Mor> {
        let mut out: Vec<Mor> = preprincipal_unchecked(&self.pullback)
            .all_atoms()
            .into_iter()
            .map(|m| self.theta.apply(m))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Conditions (i)–(iii) for a generating set `gens` of the source, given
    /// as source morphisms.
    pub fn generator_conditions(&self, gens: &[Mor]) -> Result<GeneratorConditions, AopError> {
        let src = &self.source;
        let cod = self.codomain;
        if gens.is_empty() || gens.iter().any(|&m| src.is_identity(m)) {
            return Err(AopError::BadGenerators);
        }
        let th = |m: Mor| self.theta.apply(m);
        // (i)
        let mut compat = true;
        for &r in gens {
            for &w in src.star(src.dom(r)) {
                let w2 = src.mul(r, w);
                compat &= cod.compatible(th(r), th(w)) || cod.compatible(th(src.inv(r)), th(w2));
            }
        }
        // (ii)
        let mut join_ok = true;
        for a in src.objects() {
            let wo = self.wo(a);
            let local: Vec<Mor> = gens.iter().copied().filter(|&r| src.cod(r) == a).collect();
            let image: Vec<Mor> = src.star(a).iter().map(|&u| th(u)).collect();
            for (i, &r) in local.iter().enumerate() {
                for &s in &local[i + 1..] {
                    if let Some(j) = wo.join(&[th(r), th(s)]) {
                        join_ok &= image.contains(&j);
                    }
                }
            }
        }
        // (iii)
        let mut hat_ok = true;
        let mut r_prime = Vec::new();
        for a in src.objects() {
            let wo = self.wo(a);
            let local: Vec<Mor> = gens.iter().copied().filter(|&r| src.cod(r) == a).collect();
            for s in wo.atoms() {
                let ns = cod.n(s);
                let star = src.star(a);
                let above: Vec<Mor> = star
                    .iter()
                    .copied()
                    .filter(|&w| ns.is_subset(cod.n(th(w))))
                    .collect();
                if above.is_empty() {
                    continue;
                }
                let hat = local.iter().copied().find(|&h| {
                    let nh = cod.n(th(h));
                    let first = above
                        .iter()
                        .all(|&w| ns.is_subset(nh) && nh.is_subset(cod.n(th(w))));
                    let second = star
                        .iter()
                        .filter(|&&w| ns.is_disjoint(cod.n(th(w))))
                        .all(|&w| cod.n(th(w)).is_disjoint(nh));
                    first && second
                });
                match hat {
                    Some(h) => r_prime.push(h),
                    None => hat_ok = false,
                }
            }
        }
        r_prime.sort();
        r_prime.dedup();
        let mut out = GeneratorConditions {
            compatibility: compat,
            join_closure: join_ok,
            atoms: hat_ok,
            r_prime: r_prime.clone(),
            pullback_preprincipal: None,
            atoms_are_r_prime: None,
        };
        if join_ok && hat_ok {
            let verdict = rootoid_check(&self.pullback);
            let pp = preprincipal_unchecked(&self.pullback);
            out.pullback_preprincipal = Some(verdict.rootoid && pp.holds);
            out.atoms_are_r_prime = Some(pp.all_atoms() == r_prime);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorConditions {
    pub compatibility: bool,
    pub join_closure: bool,
    pub atoms: bool,
    /// Source morphisms selected as hatted atoms.
    #[serde(skip)]
    pub r_prime: Vec<Mor>,
    /// Only evaluated when (ii) and (iii) hold.
    pub pullback_preprincipal: Option<bool>,
    pub atoms_are_r_prime: Option<bool>,
}

impl GeneratorConditions {
    /// The conclusion holds whenever the hypotheses do.
    pub fn consistent(&self) -> bool {
        !(self.join_closure && self.atoms)
            || (self.pullback_preprincipal == Some(true) && self.atoms_are_r_prime == Some(true))
    }
}

/// Closure of `gens` together with identities at their ends.
pub fn generated_closure(g: &Groupoid, gens: &[Mor]) -> Vec<Mor> {
    let mut seen = vec![false; g.morphism_count()];
    let mut queue: Vec<Mor> = Vec::new();
    for &m in gens {
        for e in [g.id(g.dom(m)), g.id(g.cod(m))] {
            if !seen[e.idx()] {
                seen[e.idx()] = true;
                queue.push(e);
            }
        }
    }
    let mut k = 0;
    while k < queue.len() {
        let e = queue[k];
        k += 1;
        for &r in gens {
            if let Some(p) = g.compose(r, e) {
                if !seen[p.idx()] {
                    seen[p.idx()] = true;
                    queue.push(p);
                }
            }
        }
    }
    queue.sort();
    queue
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGroup;

    fn els(cg: &CoxeterGroup, words: &[&str]) -> Vec<Mor> {
        words.iter().map(|w| cg.element(w).unwrap()).collect()
    }

    #[test]
    fn parabolic_inclusion() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let pr = cg.reflection_cocycle().unwrap();
        let le = LocalEmbedding::generated(&pr, &els(&cg, &["r", "s"])).unwrap();
        assert_eq!(le.source().morphism_count(), 6);
        let a = Obj(0);
        for w in pr.groupoid().morphisms() {
            let p = le.theta_perp(a, w).unwrap().map(|u| le.theta().apply(u));
            let inside = cg.parabolic(&els(&cg, &["r", "s"])).contains(&w);
            assert_eq!(p, inside.then_some(w));
        }
        let rep = le.aop_check().unwrap();
        assert!(rep.holds && rep.galois && rep.join_closed);
        assert_eq!(
            le.theta_perp(a, pr.groupoid().id(Obj(0))).unwrap(),
            Some(le.source().id(a))
        );
    }

    #[test]
    fn rotation_subgroups() {
        for (m, closed) in [(3, false), (4, true)] {
            let cg = CoxeterGroup::from_preset(&format!("I2({m})")).unwrap();
            let pr = cg.reflection_cocycle().unwrap();
            let rot = cg.element("rs").unwrap();
            let le = LocalEmbedding::generated(&pr, &[rot, pr.groupoid().inv(rot)]).unwrap();
            let rep = le.aop_check().unwrap();
            // odd m: N(rs) misses N(s) but meets N(sr) = N(θ^⊥(s))
            assert_eq!(rep.holds, closed, "m = {m}");
            assert_eq!(rep.witness.is_some(), !closed);
            assert_eq!(rep.join_closed, closed, "m = {m}");
            let pp =
                preprincipal_unchecked(le.pullback()).holds && rootoid_check(le.pullback()).rootoid;
            assert_eq!(pp, closed);
        }
    }

    #[test]
    fn folding_and_coxeter_elements() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let pr = cg.reflection_cocycle().unwrap();
        let fold = cg.fold_fixed_subgroup(&[vec![2, 1, 0]]).unwrap();
        let le = LocalEmbedding::new(&pr, fold.sub.clone(), fold.hom.clone()).unwrap();
        let rep = le.aop_check().unwrap();
        assert!(rep.holds && rep.galois && rep.join_closed);
        assert_eq!(le.perp_of_atoms().unwrap(), le.pullback_atoms());

        let gens = els(&cg, &["rt", "s"]);
        let le = LocalEmbedding::generated(&pr, &gens).unwrap();
        assert_eq!(le.source().morphism_count(), 8);
        let src_gens: Vec<Mor> = le
            .source()
            .morphisms()
            .filter(|&m| gens.contains(&le.theta().apply(m)))
            .collect();
        let c = le.generator_conditions(&src_gens).unwrap();
        assert!(c.compatibility && c.join_closure && c.atoms && c.consistent());
        assert_eq!(c.r_prime, src_gens);

        let cox = cg.element("rts").unwrap();
        let gens = [cox, pr.groupoid().inv(cox)];
        let le = LocalEmbedding::generated(&pr, &gens).unwrap();
        assert_eq!(le.source().morphism_count(), 4);
        let src_gens: Vec<Mor> = le
            .source()
            .morphisms()
            .filter(|&m| gens.contains(&le.theta().apply(m)))
            .collect();
        let c = le.generator_conditions(&src_gens).unwrap();
        assert!(c.compatibility && c.join_closure && c.atoms && c.consistent());
    }

    #[test]
    fn empty_generators_rejected() {
        let cg = CoxeterGroup::from_preset("A2").unwrap();
        let pr = cg.reflection_cocycle().unwrap();
        assert!(matches!(
            LocalEmbedding::generated(&pr, &[]),
            Err(AopError::BadGenerators)
        ));
    }
}
