use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::category::{validate_functor, Arrow, FiniteCategory, FunctorData};
use super::profunctor::as_category_error;
use crate::error::Result;
use crate::simplicial::{Issue, ValidationReport};

/// A strict functor `F : A -> Cat` with finite values.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    pub base: Arc<FiniteCategory>,
    /// `F(a)` for each object of the base.
    pub fibers: Vec<Arc<FiniteCategory>>,
    /// `F(f)` for each arrow of the base.
    pub functors: Vec<FunctorData>,
}

impl CatDiagram {
    /// The constant diagram at the terminal category.
    pub fn terminal(base: Arc<FiniteCategory>) -> Self {
        let t = Arc::new(FiniteCategory::terminal());
        CatDiagram {
            fibers: vec![t.clone(); base.object_count()],
            functors: vec![FunctorData::identity(t); base.arrow_count()],
            base,
        }
    }
}

pub fn validate_diagram(d: &CatDiagram) -> ValidationReport {
    let a = &d.base;
    let mut issues = Vec::new();
    if d.fibers.len() != a.object_count() || d.functors.len() != a.arrow_count() {
        issues.push(Issue::Structure { detail: "diagram does not cover the base".into() });
        return ValidationReport { issues };
    }
    for (k, f) in d.functors.iter().enumerate() {
        let arr = a.arrow(k);
        if !f.src.same_shape(&d.fibers[arr.src]) || !f.tgt.same_shape(&d.fibers[arr.tgt]) {
            issues.push(Issue::Structure { detail: format!("F({}) has the wrong endpoints", arr.name) });
            continue;
        }
        for i in validate_functor(f).issues {
            issues.push(Issue::Structure { detail: format!("F({}): {i}", arr.name) });
        }
    }
    if !issues.is_empty() {
        return ValidationReport { issues };
    }
    for (o, &i) in a.ids().iter().enumerate() {
        let f = &d.functors[i];
        let trivial = f.objects.iter().enumerate().all(|(k, &v)| k == v) && f.arrows.iter().enumerate().all(|(k, &v)| k == v);
        if !trivial {
            issues.push(Issue::Structure { detail: format!("F(id_{}) is not the identity", a.objects()[o]) });
        }
    }
    for (g, f, gf) in a.composites() {
        let (fg, ff, fgf) = (&d.functors[g], &d.functors[f], &d.functors[gf]);
        let objects_ok = ff.objects.iter().enumerate().all(|(x, &y)| fg.objects[y] == fgf.objects[x]);
        let arrows_ok = ff.arrows.iter().enumerate().all(|(x, &y)| fg.arrows[y] == fgf.arrows[x]);
        if !objects_ok || !arrows_ok {
            issues.push(Issue::Structure {
                detail: format!("F({}) ∘ F({}) differs from F({})", a.arrow(g).name, a.arrow(f).name, a.arrow(gf).name),
            });
        }
    }
    ValidationReport { issues }
}

/// `Gro(F)` with its projection to the base. Objects are pairs `(a, x)`,
/// arrows are triples `(f, x, α)` with `α : F(f)(x) -> y` in `F(b)`.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    pub category: Arc<FiniteCategory>,
    pub projection: FunctorData,
    pub objects: Vec<(usize, usize)>,
    pub arrows: Vec<(usize, usize, usize)>,
    object_index: HashMap<(usize, usize), usize>,
    arrow_index: HashMap<(usize, usize, usize), usize>,
}

impl Grothendieck {
    pub fn object(&self, a: usize, x: usize) -> usize {
        self.object_index[&(a, x)]
    }

    pub fn arrow(&self, f: usize, x: usize, alpha: usize) -> usize {
        self.arrow_index[&(f, x, alpha)]
    }
}

pub fn grothendieck(d: &CatDiagram) -> Result<Grothendieck> {
    validate_diagram(d).into_result("diagram").map_err(as_category_error)?;
    let a = &d.base;
    let mut objects = Vec::new();
    for (o, fib) in d.fibers.iter().enumerate() {
        for x in 0..fib.object_count() {
            objects.push((o, x));
        }
    }
    let object_index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut arrows = Vec::new();
    for (f, arr) in a.arrows().iter().enumerate() {
        let (ff, fb) = (&d.functors[f], &d.fibers[arr.tgt]);
        for x in 0..d.fibers[arr.src].object_count() {
            for alpha in 0..fb.arrow_count() {
                if fb.arrow(alpha).src == ff.objects[x] {
                    arrows.push((f, x, alpha));
                }
            }
        }
    }
    let arrow_index: HashMap<(usize, usize, usize), usize> = arrows.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let names: Vec<String> = objects.iter().map(|&(o, x)| format!("({},{})", a.objects()[o], d.fibers[o].objects()[x])).collect();
    let arrow_data: Vec<Arrow> = arrows
        .iter()
        .map(|&(f, x, alpha)| {
            let arr = a.arrow(f);
            let fb = &d.fibers[arr.tgt];
            Arrow {
                name: format!("({},{})@{}", arr.name, fb.arrow(alpha).name, d.fibers[arr.src].objects()[x]),
                src: object_index[&(arr.src, x)],
                tgt: object_index[&(arr.tgt, fb.arrow(alpha).tgt)],
            }
        })
        .collect();
    let ids: Vec<usize> = objects.iter().map(|&(o, x)| arrow_index[&(a.id(o), x, d.fibers[o].id(x))]).collect();
    // (g, β) ∘ (f, α) = (g f, β ∘ F(g)(α))
    let (all, index) = (&arrows, &arrow_index);
    let composites: Vec<(usize, usize, usize)> = arrows
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k1, &(f, x, alpha))| {
            let b = a.arrow(f).tgt;
            let y = d.fibers[b].arrow(alpha).tgt;
            all.iter()
                .enumerate()
                .filter(move |(_, &(g, y2, _))| a.arrow(g).src == b && y2 == y)
                .map(move |(k2, &(g, _, beta))| {
                    let gf = a.comp(g, f);
                    let c = a.arrow(g).tgt;
                    let composite = d.fibers[c].comp(beta, d.functors[g].arrows[alpha]);
                    (k2, k1, index[&(gf, x, composite)])
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let category = Arc::new(FiniteCategory::new(names, arrow_data, ids, &composites)?);
    let projection = FunctorData {
        src: category.clone(),
        tgt: a.clone(),
        objects: objects.iter().map(|p| p.0).collect(),
        arrows: arrows.iter().map(|p| p.0).collect(),
    };
    Ok(Grothendieck { category, projection, objects, arrows, object_index, arrow_index })
}

/// Outcome of the fibration test, with the pairs `(f, x)` admitting no
/// lift through which every other lift factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckVerdict {
    pub holds: bool,
    pub failures: Vec<(String, String)>,
}

/// Tests the lifting property: for every `f : a -> b` and `x` over `a` there
/// is a lift `x -> x̄` of `f` through which every lift `x -> y` of `f`
/// factors uniquely by an arrow `x̄ -> y` over `id_b`.
pub fn is_grothendieck_fibration(p: &FunctorData) -> GrothendieckVerdict {
    let (x, a) = (&p.src, &p.tgt);
    let mut failures: Vec<(String, String)> = (0..a.arrow_count())
        .into_par_iter()
        .flat_map_iter(|f| {
            let arr = a.arrow(f);
            let id_b = a.id(arr.tgt);
            let mut out = Vec::new();
            for o in (0..x.object_count()).filter(|&o| p.objects[o] == arr.src) {
                let lifts: Vec<usize> = (0..x.arrow_count()).filter(|&l| x.arrow(l).src == o && p.arrows[l] == f).collect();
                let universal = lifts.iter().any(|&l| {
                    lifts.iter().all(|&h| {
                        x.hom(x.arrow(l).tgt, x.arrow(h).tgt)
                            .iter()
                            .filter(|&&u| p.arrows[u] == id_b && x.comp(u, l) == h)
                            .count()
                            == 1
                    })
                });
                if !universal {
                    out.push((arr.name.clone(), x.objects()[o].clone()));
                }
            }
            out
        })
        .collect();
    failures.sort();
    GrothendieckVerdict { holds: failures.is_empty(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::profunctor::{collage, Element, Profunctor};

    #[test]
    fn terminal_diagram_recovers_the_base() {
        let a = Arc::new(FiniteCategory::ordinal(2));
        let g = grothendieck(&CatDiagram::terminal(a.clone())).unwrap();
        assert!(g.category.same_shape(&a));
        assert!(is_grothendieck_fibration(&g.projection).holds);
    }

    #[test]
    fn arrow_counts_by_definition() {
        // F(0) = {x}, F(1) = (u -> v), F(f)(x) = u
        let a = Arc::new(FiniteCategory::ordinal(1));
        let f0 = Arc::new(FiniteCategory::terminal());
        let f1 = Arc::new(FiniteCategory::ordinal(1));
        let up = a.hom(0, 1)[0];
        let mut functors = vec![FunctorData::identity(f0.clone()); a.arrow_count()];
        functors[a.id(1)] = FunctorData::identity(f1.clone());
        functors[up] = FunctorData::new(f0.clone(), f1.clone(), vec![0], vec![f1.id(0)]).unwrap();
        let g = grothendieck(&CatDiagram { base: a, fibers: vec![f0, f1], functors }).unwrap();
        assert_eq!(g.category.object_count(), 3);
        // oracle: |hom((0,x),(1,y))| = |F(1)(u, y)|
        let x = g.object(0, 0);
        assert_eq!(g.category.hom(x, g.object(1, 0)).len(), 1);
        assert_eq!(g.category.hom(x, g.object(1, 1)).len(), 1);
        assert_eq!(g.category.arrow_count(), 1 + 3 + 2);
        assert!(is_grothendieck_fibration(&g.projection).holds);
    }

    #[test]
    fn collage_with_two_parallel_elements_is_not_a_fibration() {
        let t = Arc::new(FiniteCategory::terminal());
        let elements = vec![Element { name: "x1".into(), src: 0, tgt: 0 }, Element { name: "x2".into(), src: 0, tgt: 0 }];
        let left = [(0, 0, 0), (0, 1, 1)];
        let right = [(0, 0, 0), (1, 0, 1)];
        let u = Profunctor::new(t.clone(), t, elements, &left, &right).unwrap();
        let verdict = is_grothendieck_fibration(&collage(&u).projection);
        assert!(!verdict.holds);
        assert_eq!(verdict.failures, vec![("0<1".to_string(), "0.*".to_string())]);
    }

    #[test]
    fn identity_is_a_fibration() {
        let c = Arc::new(FiniteCategory::ordinal(2));
        assert!(is_grothendieck_fibration(&FunctorData::identity(c)).holds);
    }
}
