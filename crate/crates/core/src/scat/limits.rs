//! Degreewise limits and colimits.

use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::scat::map::SimplicialMap;
use crate::scat::sset::{Keyed, SimplicialSet};

fn same_dim(a: &SimplicialSet, b: &SimplicialSet) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// A pullback `A ×_C B`, keyed by pairs `(a, b)` with `f(a) = g(b)`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub keyed: Keyed<(usize, usize)>,
    pub first: SimplicialMap,
    pub second: SimplicialMap,
}

impl Pullback {
    pub fn sset(&self) -> &SimplicialSet {
        &self.keyed.sset
    }

    pub fn pair(&self, n: usize, x: usize) -> (usize, usize) {
        *self.keyed.key(n, x)
    }

    pub fn id(&self, n: usize, a: usize, b: usize) -> Option<usize> {
        self.keyed.id(n, &(a, b))
    }
}

/// Pullback of `f : A → C` and `g : B → C`.
pub fn pullback(a: &SimplicialSet, f: &SimplicialMap, b: &SimplicialSet, g: &SimplicialMap) -> Result<Pullback> {
    same_dim(a, b)?;
    if f.dim() != a.dim() || g.dim() != b.dim() {
        return Err(Error::DimMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    let dim = a.dim();
    let levels = (0..=dim)
        .map(|n| {
            let mut by_image: std::collections::HashMap<usize, Vec<usize>> = Default::default();
            for y in b.simplices(n) {
                by_image.entry(g.apply(n, y)).or_default().push(y);
            }
            let mut level = Vec::new();
            for x in a.simplices(n) {
                if let Some(ys) = by_image.get(&f.apply(n, x)) {
                    level.extend(ys.iter().map(|&y| (x, y)));
                }
            }
            level
        })
        .collect();
    pair_set(a, b, dim, levels)
}

pub fn product(a: &SimplicialSet, b: &SimplicialSet) -> Result<Pullback> {
    same_dim(a, b)?;
    let dim = a.dim();
    let levels = (0..=dim)
        .map(|n| a.simplices(n).flat_map(|x| b.simplices(n).map(move |y| (x, y))).collect())
        .collect();
    pair_set(a, b, dim, levels)
}

fn pair_set(a: &SimplicialSet, b: &SimplicialSet, dim: usize, levels: Vec<Vec<(usize, usize)>>) -> Result<Pullback> {
    let keyed = Keyed::build(
        dim,
        levels,
        |n, i, &(x, y)| (a.face(n, i, x), b.face(n, i, y)),
        |n, j, &(x, y)| (a.degen(n, j, x), b.degen(n, j, y)),
        |n, &(x, y)| format!("({},{})", a.label(n, x), b.label(n, y)),
    )?;
    let first = SimplicialMap::new((0..=dim).map(|n| keyed.keys(n).iter().map(|p| p.0).collect()).collect());
    let second = SimplicialMap::new((0..=dim).map(|n| keyed.keys(n).iter().map(|p| p.1).collect()).collect());
    Ok(Pullback { keyed, first, second })
}

/// A coproduct keyed by `(summand, simplex)`.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub keyed: Keyed<(usize, usize)>,
    pub injections: Vec<SimplicialMap>,
}

impl Coproduct {
    pub fn sset(&self) -> &SimplicialSet {
        &self.keyed.sset
    }
}

pub fn coproduct_many(parts: &[&SimplicialSet]) -> Result<Coproduct> {
    let dim = parts
        .first()
        .map(|p| p.dim())
        .ok_or_else(|| Error::Invalid("empty coproduct".into()))?;
    for p in parts {
        same_dim(parts[0], p)?;
    }
    let levels = (0..=dim)
        .map(|n| {
            parts
                .iter()
                .enumerate()
                .flat_map(|(t, p)| p.simplices(n).map(move |x| (t, x)))
                .collect()
        })
        .collect();
    let keyed = Keyed::build(
        dim,
        levels,
        |n, i, &(t, x)| (t, parts[t].face(n, i, x)),
        |n, j, &(t, x)| (t, parts[t].degen(n, j, x)),
        |n, &(t, x)| format!("{t}.{}", parts[t].label(n, x)),
    )?;
    let injections = (0..parts.len())
        .map(|t| {
            SimplicialMap::new(
                (0..=dim)
                    .map(|n| parts[t].simplices(n).map(|x| keyed.id(n, &(t, x)).unwrap()).collect())
                    .collect(),
            )
        })
        .collect();
    Ok(Coproduct { keyed, injections })
}

pub fn coproduct(a: &SimplicialSet, b: &SimplicialSet) -> Result<Coproduct> {
    coproduct_many(&[a, b])
}

/// A colimit: the quotient of a coproduct with the induced injections.
#[derive(Debug, Clone)]
pub struct Colimit {
    pub sset: SimplicialSet,
    pub injections: Vec<SimplicialMap>,
}

/// Colimit of the diagram with the given objects and arrows
/// `(source, target, map)`: the coproduct of the objects quotiented
/// degreewise by `x ∼ map(x)`.
///
/// The generating relation is closed under faces and degeneracies because
/// every arrow is a simplicial map, so the degreewise quotients assemble
/// into a simplicial set. Classes are numbered by their least member.
pub fn colimit(objects: &[&SimplicialSet], arrows: &[(usize, usize, &SimplicialMap)]) -> Result<Colimit> {
    let coprod = coproduct_many(objects)?;
    let total = coprod.sset();
    let dim = total.dim();
    let inj = &coprod.injections;
    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(dim + 1);
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(dim + 1);
    for n in 0..=dim {
        let mut uf = UnionFind::<usize>::new(total.count(n));
        for &(s, t, m) in arrows {
            for x in objects[s].simplices(n) {
                uf.union(inj[s].apply(n, x), inj[t].apply(n, m.apply(n, x)));
            }
        }
        let mut class = vec![usize::MAX; total.count(n)];
        let mut rep_ids = Vec::new();
        let mut root_class = vec![usize::MAX; total.count(n)];
        for x in total.simplices(n) {
            let r = uf.find(x);
            if root_class[r] == usize::MAX {
                root_class[r] = rep_ids.len();
                rep_ids.push(x);
            }
            class[x] = root_class[r];
        }
        class_of.push(class);
        reps.push(rep_ids);
    }
    let mut faces = vec![Vec::new(); dim + 1];
    let mut degens = vec![Vec::new(); dim + 1];
    for n in 0..=dim {
        if n >= 1 {
            for i in 0..=n {
                faces[n].push(reps[n].iter().map(|&x| class_of[n - 1][total.face(n, i, x)]).collect());
            }
        }
        if n < dim {
            for j in 0..=n {
                degens[n].push(reps[n].iter().map(|&x| class_of[n + 1][total.degen(n, j, x)]).collect());
            }
        }
    }
    let labels = (0..=dim)
        .map(|n| reps[n].iter().map(|&x| total.label(n, x).to_string()).collect())
        .collect();
    let counts = reps.iter().map(|r| r.len()).collect();
    let sset = SimplicialSet::from_tables(dim, counts, faces, degens, Some(labels))?;
    let injections = inj
        .iter()
        .map(|m| {
            SimplicialMap::new(
                m.components
                    .iter()
                    .enumerate()
                    .map(|(n, c)| c.iter().map(|&x| class_of[n][x]).collect())
                    .collect(),
            )
        })
        .collect();
    Ok(Colimit { sset, injections })
}

/// Pushout of `f : C → A` and `g : C → B`; injections are `A → P`, `B → P`.
pub fn pushout(c: &SimplicialSet, f: &SimplicialMap, a: &SimplicialSet, g: &SimplicialMap, b: &SimplicialSet) -> Result<Colimit> {
    same_dim(c, a)?;
    same_dim(c, b)?;
    let mut col = colimit(&[a, b, c], &[(2, 0, f), (2, 1, g)])?;
    col.injections.truncate(2);
    Ok(col)
}

/// Connected components: the vertex set modulo the relation generated by
/// edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    /// Component of each vertex; components are numbered by least vertex.
    pub component_of: Vec<usize>,
    pub count: usize,
}

pub fn pi0(s: &SimplicialSet) -> Components {
    let nv = s.count(0);
    let mut uf = UnionFind::<usize>::new(nv);
    if s.dim() >= 1 {
        for e in s.simplices(1) {
            uf.union(s.face(1, 0, e), s.face(1, 1, e));
        }
    }
    let mut root_class = vec![usize::MAX; nv];
    let mut component_of = vec![0; nv];
    let mut count = 0;
    for v in 0..nv {
        let r = uf.find(v);
        if root_class[r] == usize::MAX {
            root_class[r] = count;
            count += 1;
        }
        component_of[v] = root_class[r];
    }
    Components { component_of, count }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scat::report::Validate;
    use crate::scat::standard;

    #[test]
    fn product_with_point_is_first_factor() {
        let d1 = standard::delta(1, 3);
        let p = product(&d1, &standard::point(3)).unwrap();
        assert!(p.first.is_bijective_onto(&d1));
        assert!(p.sset().validate().is_ok());
    }

    #[test]
    fn pullback_of_identities() {
        let s = standard::j(2);
        let id = SimplicialMap::identity(&s);
        let p = pullback(&s, &id, &s, &id).unwrap();
        assert!(p.first.is_bijective_onto(&s));
    }

    #[test]
    fn boundary_collapse_pushout_is_a_loop() {
        let n = 2;
        let two = coproduct(&standard::point(n), &standard::point(n)).unwrap();
        let d1 = standard::delta(1, n);
        // endpoints 0 and 1 of Δ[1]
        let incl = SimplicialMap::new(
            (0..=n)
                .map(|k| {
                    two.keyed
                        .keys(k)
                        .iter()
                        .map(|&(t, _)| {
                            let v = crate::scat::monotone::MonotoneMap::constant(k, 1, t);
                            standard::delta_keyed(1, n).id(k, &v).unwrap()
                        })
                        .collect()
                })
                .collect(),
        );
        assert!(incl.check(two.sset(), &d1).is_ok());
        let collapse = SimplicialMap::to_point(two.sset());
        let po = pushout(two.sset(), &incl, &d1, &collapse, &standard::point(n)).unwrap();
        assert!(po.sset.validate().is_ok());
        assert_eq!(po.sset.count(0), 1);
        assert_eq!(po.sset.count(1), 2);
        assert_eq!(po.sset.nondegenerate(1).len(), 1);
        assert_eq!(pi0(&po.sset).count, 1);
    }

    #[test]
    fn components_of_two_points() {
        let two = coproduct(&standard::point(1), &standard::point(1)).unwrap();
        assert_eq!(pi0(two.sset()).count, 2);
        assert_eq!(pi0(&standard::delta(3, 3)).count, 1);
    }

    #[test]
    fn dim_mismatch_is_an_error() {
        assert!(matches!(
            product(&standard::point(1), &standard::point(2)),
            Err(Error::DimMismatch { .. })
        ));
    }
}
