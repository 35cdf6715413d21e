//! Oriented and commutative squares, pasting, and cubes.

use serde::Serialize;
use thiserror::Error;

use crate::groupoid::{Mor, Obj};
use crate::proto::Protorootoid;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SquareError {
    #[error("composite of the quadruple is undefined")]
    Undefined,
    #[error("composite of the quadruple is not an identity")]
    NotIdentity,
}

/// `(q0, q1, q2, q3)` with `q0 q1 q2 q3` an identity.
pub type Quad = [Mor; 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SquareCheck {
    /// Four consecutive compatible expressions.
    pub by_definition: bool,
    /// `q0·N(q1) = N(q3*)` and `N(q1) ∩ N(q0*) = ∅`.
    pub by_criterion: bool,
}

impl SquareCheck {
    pub fn holds(&self) -> bool {
        self.by_definition && self.by_criterion
    }
}

fn composite(pr: &Protorootoid, q: &Quad) -> Result<Mor, SquareError> {
    pr.groupoid()
        .product(q)
        .ok()
        .flatten()
        .ok_or(SquareError::Undefined)
}

pub fn check_oriented(pr: &Protorootoid, q: &Quad) -> Result<SquareCheck, SquareError> {
    let g = pr.groupoid();
    let c = composite(pr, q)?;
    if !g.is_identity(c) {
        return Err(SquareError::NotIdentity);
    }
    let by_definition = (0..4).all(|i| pr.compatible(q[i], q[(i + 1) % 4]));
    let image = pr.act(q[0], pr.n(q[1]));
    let by_criterion = &image == pr.n(g.inv(q[3])) && pr.n(q[1]).is_disjoint(pr.n(g.inv(q[0])));
    Ok(SquareCheck {
        by_definition,
        by_criterion,
    })
}

/// Criterion verdict; errors read as `false`.
pub fn is_oriented_square(pr: &Protorootoid, q: &Quad) -> bool {
    check_oriented(pr, q)
        .map(|c| c.by_criterion)
        .unwrap_or(false)
}

/// Commutative square with top `x`, left `w`, bottom `u`, right `z`:
/// `xw = zu` and `(x, w, u*, z*)` oriented.
pub fn is_commutative_square(pr: &Protorootoid, x: Mor, w: Mor, u: Mor, z: Mor) -> bool {
    let g = pr.groupoid();
    is_oriented_square(pr, &[x, w, g.inv(u), g.inv(z)])
}

/// The unique oriented square starting `(x, w, …)`, if any.
pub fn complete_square(pr: &Protorootoid, x: Mor, w: Mor) -> Option<Quad> {
    let g = pr.groupoid();
    if g.dom(x) != g.cod(w) || !pr.n(w).is_disjoint(pr.n(g.inv(x))) {
        return None;
    }
    let image = pr.act(x, pr.n(w));
    let y_star = pr.lookup(g.cod(x), &image)?;
    let y = g.inv(y_star);
    // x w v y = 1
    let v = g.mul(g.mul(g.inv(w), g.inv(x)), y_star);
    let q = [x, w, v, y];
    is_oriented_square(pr, &q).then_some(q)
}

/// All rotations and the reflection of an oriented square.
pub fn dihedral_images(pr: &Protorootoid, q: &Quad) -> Vec<Quad> {
    let g = pr.groupoid();
    let rot = |q: &Quad| [q[1], q[2], q[3], q[0]];
    let flip = |q: &Quad| [g.inv(q[3]), g.inv(q[2]), g.inv(q[1]), g.inv(q[0])];
    let mut out = Vec::with_capacity(8);
    let mut cur = *q;
    for _ in 0..4 {
        out.push(cur);
        out.push(flip(&cur));
        cur = rot(&cur);
    }
    out
}

/// Every oriented square, by completion of composable pairs.
pub fn enumerate_squares(pr: &Protorootoid) -> Vec<Quad> {
    let g = pr.groupoid();
    let mut out = Vec::new();
    for x in g.morphisms() {
        for w in g.star(g.dom(x)) {
            if let Some(q) = complete_square(pr, x, *w) {
                out.push(q);
            }
        }
    }
    out
}

/// Diagram
/// ```text
///   . <-a- . <-e- .
///   ^d     ^b     ^f
///   . <-c- . <-g- .
/// ```
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    pub a: Mor,
    pub b: Mor,
    pub c: Mor,
    pub d: Mor,
    pub e: Mor,
    pub f: Mor,
    pub g: Mor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PasteReport {
    pub left: bool,
    pub right: bool,
    pub outer: bool,
}

impl PasteReport {
    /// Never exactly two of three.
    pub fn consistent(&self) -> bool {
        [self.left, self.right, self.outer]
            .iter()
            .filter(|&&b| b)
            .count()
            != 2
    }
}

pub fn paste_check(pr: &Protorootoid, grid: &Grid) -> Result<PasteReport, SquareError> {
    let gp = pr.groupoid();
    let i = |m| gp.inv(m);
    let ae = gp.compose(grid.a, grid.e).ok_or(SquareError::Undefined)?;
    let gc = gp
        .compose(i(grid.g), i(grid.c))
        .ok_or(SquareError::Undefined)?;
    let test = |q: Quad| -> Result<bool, SquareError> { Ok(check_oriented(pr, &q)?.by_criterion) };
    Ok(PasteReport {
        left: test([grid.a, grid.b, i(grid.c), i(grid.d)])?,
        right: test([grid.e, grid.f, i(grid.g), i(grid.b)])?,
        outer: test([ae, grid.f, gc, i(grid.d)])?,
    })
}

/// Face through base edges `u: p → q` and `w: p → r`; returns `(x, z)`
/// with `x: r → s`, `z: q → s`, `xw = zu`.
pub fn complete_face(pr: &Protorootoid, u: Mor, w: Mor) -> Option<(Mor, Mor)> {
    let g = pr.groupoid();
    // rotate (x, w, u*, z*) to (w, u*, z*, x)
    let q = complete_square(pr, w, g.inv(u))?;
    Some((q[3], g.inv(q[2])))
}

/// Commutative cube given by its edges out of one corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    pub base: Obj,
    pub dim: usize,
    /// `edges[v][i]` for vertex bitmask `v` without bit `i`.
    pub edges: Vec<Vec<Option<Mor>>>,
}

impl Cube {
    pub fn edge(&self, v: usize, i: usize) -> Option<Mor> {
        self.edges[v][i]
    }

    pub fn is_nontrivial(&self, pr: &Protorootoid) -> bool {
        let g = pr.groupoid();
        self.edges
            .iter()
            .flatten()
            .flatten()
            .all(|&m| !g.is_identity(m))
    }
}

/// Propagates base edges through every face; `None` if some face fails.
pub fn build_cube(pr: &Protorootoid, base: Obj, gens: &[Mor]) -> Option<Cube> {
    let g = pr.groupoid();
    let n = gens.len();
    if gens.iter().any(|&m| g.dom(m) != base) {
        return None;
    }
    let mut edges: Vec<Vec<Option<Mor>>> = vec![vec![None; n]; 1 << n];
    for (i, &m) in gens.iter().enumerate() {
        edges[0][i] = Some(m);
    }
    let mut order: Vec<usize> = (0..1usize << n).collect();
    order.sort_by_key(|v| v.count_ones());
    for &v in &order {
        for i in 0..n {
            if v >> i & 1 == 1 || edges[v][i].is_some() {
                continue;
            }
            let j = (0..n).find(|&j| v >> j & 1 == 1).expect("v ≠ 0");
            let p = v & !(1 << j);
            let (u, w) = (edges[p][i]?, edges[p][j]?);
            let (x, z) = complete_face(pr, u, w)?;
            edges[v][i] = Some(x);
            match edges[p | 1 << i][j] {
                Some(old) if old != z => return None,
                _ => edges[p | 1 << i][j] = Some(z),
            }
        }
    }
    let cube = Cube {
        base,
        dim: n,
        edges,
    };
    cube.face_verdicts(pr).iter().all(|f| f.1).then_some(cube)
}

/// Face at vertex `v` spanned by directions `i < j`.
pub type Face = (usize, usize, usize);

impl Cube {
    /// Cube from an explicit edge table; missing edges are an error.
    pub fn from_table(base: Obj, dim: usize, edges: Vec<Vec<Option<Mor>>>) -> Option<Self> {
        if edges.len() != 1 << dim || edges.iter().any(|row| row.len() != dim) {
            return None;
        }
        for (v, row) in edges.iter().enumerate() {
            for (i, e) in row.iter().enumerate() {
                if (v >> i & 1 == 0) != e.is_some() {
                    return None;
                }
            }
        }
        Some(Cube { base, dim, edges })
    }

    /// Every 2-face with its commutative-square verdict.
    pub fn face_verdicts(&self, pr: &Protorootoid) -> Vec<(Face, bool)> {
        let n = self.dim;
        let mut out = Vec::new();
        for v in 0..1usize << n {
            for i in 0..n {
                for j in i + 1..n {
                    if v >> i & 1 == 1 || v >> j & 1 == 1 {
                        continue;
                    }
                    let get = |v: usize, i: usize| self.edges[v][i].expect("edge present");
                    let u = get(v, i);
                    let w = get(v, j);
                    let x = get(v | 1 << j, i);
                    let z = get(v | 1 << i, j);
                    out.push(((v, i, j), is_commutative_square(pr, x, w, u, z)));
                }
            }
        }
        out
    }
}

/// Largest `n` with a nontrivial `n`-cube, searched by growing cliques of
/// base edges; `cap` bounds the dimension tried.
pub fn max_nontrivial_cube(pr: &Protorootoid, cap: usize) -> usize {
    let g = pr.groupoid();
    let mut best = 0;
    for a in g.objects() {
        let out: Vec<Mor> = g
            .morphisms()
            .filter(|&m| g.dom(m) == a && !g.is_identity(m))
            .collect();
        if out.is_empty() {
            continue;
        }
        best = best.max(1);
        let k = out.len();
        let mut ok = vec![vec![false; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let good =
                    build_cube(pr, a, &[out[i], out[j]]).is_some_and(|c| c.is_nontrivial(pr));
                ok[i][j] = good;
                ok[j][i] = good;
            }
        }
        let mut stack: Vec<Vec<usize>> = (0..k).map(|i| vec![i]).collect();
        while let Some(clique) = stack.pop() {
            let dim = clique.len();
            if dim >= 2 {
                let gens: Vec<Mor> = clique.iter().map(|&i| out[i]).collect();
                if dim > 2 && !build_cube(pr, a, &gens).is_some_and(|c| c.is_nontrivial(pr)) {
                    continue;
                }
                best = best.max(dim);
            }
            if dim >= cap {
                continue;
            }
            let last = *clique.last().expect("nonempty");
            for j in last + 1..k {
                if clique.iter().all(|&i| ok[i][j]) {
                    let mut next = clique.clone();
                    next.push(j);
                    stack.push(next);
                }
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterGroup;
    use crate::graphs::graph_protorootoid;
    use crate::groupoid::SimpleGraph;

    #[test]
    fn identity_square() {
        let cg = CoxeterGroup::from_preset("I2(3)").unwrap();
        let pr = cg.reflection_cocycle().unwrap();
        let e = pr.groupoid().id(Obj(0));
        assert!(check_oriented(&pr, &[e, e, e, e]).unwrap().holds());
        assert_eq!(complete_square(&pr, e, e), Some([e, e, e, e]));
    }

    #[test]
    fn criterion_matches_definition_a3() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let pr = cg.reflection_cocycle().unwrap();
        let g = pr.groupoid();
        for x in g.morphisms() {
            for w in g.morphisms() {
                for v in [g.id(Obj(0)), cg.simple()[0], cg.simple()[1]] {
                    let y = g.inv(g.mul(g.mul(x, w), v));
                    let c = check_oriented(&pr, &[x, w, v, y]).unwrap();
                    assert_eq!(c.by_definition, c.by_criterion);
                }
            }
        }
        let all = enumerate_squares(&pr);
        for q in &all {
            for d in dihedral_images(&pr, q) {
                assert!(is_oriented_square(&pr, &d));
            }
        }
    }

    #[test]
    fn a3_named_squares() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let pr = cg.reflection_cocycle().unwrap();
        let g = pr.groupoid();
        let q = ["sr", "tsrt", "st", "srst"].map(|w| cg.element(w).unwrap());
        assert!(check_oriented(&pr, &q).unwrap().holds());
        let simple = cg.simple().to_vec();
        for mask in 0..8u32 {
            let j: Vec<Mor> = (0..3)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| simple[i])
                .collect();
            let top = cg.longest_element(&j).unwrap();
            for x in cg.parabolic(&j) {
                let q = [
                    x,
                    g.mul(g.inv(x), top),
                    g.mul(g.mul(top, x), top),
                    g.mul(top, g.inv(x)),
                ];
                assert!(
                    check_oriented(&pr, &q).unwrap().holds(),
                    "{mask} {}",
                    g.name(x)
                );
            }
        }
    }

    fn named_cube(cg: &CoxeterGroup, h: &str, v: [&str; 2], d: [&str; 4]) -> Cube {
        let e = |w: &str| Some(cg.element(w).unwrap());
        let mut edges = vec![vec![None; 3]; 8];
        for p in [0, 2, 4, 6] {
            edges[p][0] = e(h);
        }
        for (p, w) in [(0, v[0]), (1, v[1]), (4, v[0]), (5, v[1])] {
            edges[p][1] = e(w);
        }
        for (p, w) in [0, 1, 2, 3].into_iter().zip(d) {
            edges[p][2] = e(w);
        }
        Cube::from_table(Obj(0), 3, edges).unwrap()
    }

    #[test]
    fn a3_displayed_cubes() {
        let cg = CoxeterGroup::from_preset("A3").unwrap();
        let pr = cg.reflection_cocycle().unwrap();
        for cube in [
            named_cube(&cg, "rst", ["sr", "ts"], ["s", "t", "r", "s"]),
            named_cube(&cg, "srts", ["r", "t"], ["t", "r", "t", "r"]),
        ] {
            let faces = cube.face_verdicts(&pr);
            assert_eq!(faces.len(), 6);
            assert!(faces.iter().all(|f| f.1), "{faces:?}");
        }
    }

    #[test]
    fn cubes() {
        let a3 = CoxeterGroup::from_preset("A3")
            .unwrap()
            .reflection_cocycle()
            .unwrap();
        assert_eq!(max_nontrivial_cube(&a3, 8), 3);
        let i24 = CoxeterGroup::from_preset("I2(4)")
            .unwrap()
            .reflection_cocycle()
            .unwrap();
        assert_eq!(max_nontrivial_cube(&i24, 8), 2);
        let tree =
            SimpleGraph::from_names(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("b", "d")])
                .unwrap();
        let gr = graph_protorootoid(&tree).unwrap();
        assert_eq!(max_nontrivial_cube(gr.preferred(), 8), 1);
    }
}
