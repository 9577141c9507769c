use std::collections::HashMap;
use std::sync::Arc;

use super::category::{validate_functor, Arrow, FiniteCategory, FunctorData};
use super::grothendieck::{grothendieck, CatDiagram};
use super::profunctor::{
    as_category_error, check_profunctor_iso, companion, companion_pairs, hom, validate_profunctor, Profunctor,
};
use crate::error::{CoreError, Result};
use crate::simplicial::{Issue, ValidationReport};

/// A normal lax functor `A -> Prof`: categories `φ(a)`, profunctors
/// `φ(f) : φ(a) -|-> φ(b)`, and laxity maps `μ_{g,f} : φ(g) ⊗ φ(f) -> φ(gf)`
/// given on pairs of elements.
#[derive(Clone, Debug)]
pub struct LaxProfDiagram {
    pub base: Arc<FiniteCategory>,
    pub fibers: Vec<Arc<FiniteCategory>>,
    pub profunctors: Vec<Profunctor>,
    laxity: HashMap<(usize, usize, usize, usize), usize>,
}

impl LaxProfDiagram {
    /// `entries` lists `(g, f, η, ξ, μ_{g,f}(η, ξ))`.
    pub fn new(
        base: Arc<FiniteCategory>,
        fibers: Vec<Arc<FiniteCategory>>,
        profunctors: Vec<Profunctor>,
        entries: impl IntoIterator<Item = (usize, usize, usize, usize, usize)>,
    ) -> Self {
        let laxity = entries.into_iter().map(|(g, f, eta, xi, out)| ((g, f, eta, xi), out)).collect();
        LaxProfDiagram { base, fibers, profunctors, laxity }
    }

    /// `μ_{g,f}(η, ξ)`.
    pub fn mu(&self, g: usize, f: usize, eta: usize, xi: usize) -> Option<usize> {
        self.laxity.get(&(g, f, eta, xi)).copied()
    }

    /// All laxity entries, sorted.
    pub fn entries(&self) -> Vec<(usize, usize, usize, usize, usize)> {
        let mut out: Vec<_> = self.laxity.iter().map(|(&(g, f, eta, xi), &o)| (g, f, eta, xi, o)).collect();
        out.sort_unstable();
        out
    }

    /// Whether `φ(id_a)` is the hom profunctor of `φ(a)` for every `a`.
    pub fn is_normal(&self) -> bool {
        self.base.ids().iter().enumerate().all(|(a, &i)| {
            let p = &self.profunctors[i];
            let h = hom(&self.fibers[a]);
            p.len() == h.len() && check_profunctor_iso(p, &h, &(0..h.len()).collect::<Vec<_>>(), None).is_ok()
        })
    }
}

pub fn validate_lax(d: &LaxProfDiagram) -> ValidationReport {
    let a = &d.base;
    let mut issues = Vec::new();
    let push = |issues: &mut Vec<Issue>, detail: String| issues.push(Issue::Structure { detail });
    if d.fibers.len() != a.object_count() || d.profunctors.len() != a.arrow_count() {
        push(&mut issues, "diagram does not cover the base".into());
        return ValidationReport { issues };
    }
    for (f, p) in d.profunctors.iter().enumerate() {
        let arr = a.arrow(f);
        if !p.src.same_shape(&d.fibers[arr.src]) || !p.tgt.same_shape(&d.fibers[arr.tgt]) {
            push(&mut issues, format!("φ({}) has the wrong endpoints", arr.name));
            continue;
        }
        for i in validate_profunctor(p).issues {
            push(&mut issues, format!("φ({}): {i}", arr.name));
        }
    }
    if !issues.is_empty() {
        return ValidationReport { issues };
    }
    if !d.is_normal() {
        push(&mut issues, "diagram is not normal".into());
        return ValidationReport { issues };
    }
    let composable: Vec<(usize, usize, usize)> = a.composites();
    for &(g, f, gf) in &composable {
        let (pg, pf, pgf) = (&d.profunctors[g], &d.profunctors[f], &d.profunctors[gf]);
        let name = format!("μ({}, {})", a.arrow(g).name, a.arrow(f).name);
        for (eta, e) in pg.elements().iter().enumerate() {
            for (xi, x) in pf.elements().iter().enumerate() {
                if x.tgt != e.src {
                    continue;
                }
                match d.mu(g, f, eta, xi) {
                    None => push(&mut issues, format!("{name} is undefined at ({}, {})", e.name, x.name)),
                    Some(o) if o >= pgf.len() || pgf.element(o).src != x.src || pgf.element(o).tgt != e.tgt => {
                        push(&mut issues, format!("{name} at ({}, {}) lands in the wrong set", e.name, x.name))
                    }
                    _ => {}
                }
            }
        }
    }
    if !issues.is_empty() {
        return ValidationReport { issues };
    }
    let mu = |g, f, eta, xi| d.mu(g, f, eta, xi).unwrap();
    for &(g, f, _) in &composable {
        let (pg, pf) = (&d.profunctors[g], &d.profunctors[f]);
        let (fb, fa, fc) = (&d.fibers[a.arrow(f).tgt], &d.fibers[a.arrow(f).src], &d.fibers[a.arrow(g).tgt]);
        let gf = a.comp(g, f);
        let pgf = &d.profunctors[gf];
        let name = format!("μ({}, {})", a.arrow(g).name, a.arrow(f).name);
        for (eta, e) in pg.elements().iter().enumerate() {
            for (xi, x) in pf.elements().iter().enumerate() {
                if x.tgt != e.src {
                    continue;
                }
                let here = mu(g, f, eta, xi);
                // balanced: μ(η · k, ξ) = μ(η, k · ξ) for k : y -> y'
                for k in 0..fb.arrow_count() {
                    let ka = fb.arrow(k);
                    if ka.src != x.tgt {
                        continue;
                    }
                    for (eta2, e2) in pg.elements().iter().enumerate() {
                        if e2.src == ka.tgt && e2.tgt == e.tgt && pg.act_right(eta2, k) == eta {
                            let other = mu(g, f, eta2, pf.act_left(k, xi));
                            if other != here {
                                push(&mut issues, format!("{name} is not balanced at ({}, {}, {})", e2.name, ka.name, x.name));
                            }
                        }
                    }
                }
                for h in 0..fc.arrow_count() {
                    if fc.arrow(h).src == e.tgt && mu(g, f, pg.act_left(h, eta), xi) != pgf.act_left(h, here) {
                        push(&mut issues, format!("{name} does not commute with the left action at ({}, {})", e.name, x.name));
                    }
                }
                for k in 0..fa.arrow_count() {
                    if fa.arrow(k).tgt == x.src && mu(g, f, eta, pf.act_right(xi, k)) != pgf.act_right(here, k) {
                        push(&mut issues, format!("{name} does not commute with the right action at ({}, {})", e.name, x.name));
                    }
                }
                if a.is_identity(g) && here != pf.act_left(eta, xi) {
                    push(&mut issues, format!("{name} is not the left action at ({}, {})", e.name, x.name));
                }
                if a.is_identity(f) && here != pg.act_right(eta, xi) {
                    push(&mut issues, format!("{name} is not the right action at ({}, {})", e.name, x.name));
                }
            }
        }
    }
    // μ(μ(ζ, η), ξ) = μ(ζ, μ(η, ξ))
    for &(h, g, hg) in &composable {
        for &(g2, f, gf) in &composable {
            if g2 != g {
                continue;
            }
            let (ph, pg, pf) = (&d.profunctors[h], &d.profunctors[g], &d.profunctors[f]);
            for (zeta, z) in ph.elements().iter().enumerate() {
                for (eta, e) in pg.elements().iter().enumerate() {
                    if e.tgt != z.src {
                        continue;
                    }
                    for (xi, x) in pf.elements().iter().enumerate() {
                        if x.tgt != e.src {
                            continue;
                        }
                        let lhs = mu(hg, f, mu(h, g, zeta, eta), xi);
                        let rhs = mu(h, gf, zeta, mu(g, f, eta, xi));
                        if lhs != rhs {
                            push(
                                &mut issues,
                                format!(
                                    "laxity is not associative at ({}, {}, {}) over ({}, {}, {})",
                                    z.name,
                                    e.name,
                                    x.name,
                                    a.arrow(h).name,
                                    a.arrow(g).name,
                                    a.arrow(f).name
                                ),
                            );
                        }
                    }
                }
            }
        }
    }
    ValidationReport { issues }
}

/// The double colimit of a normal lax diagram: the category with objects
/// `(a, x)` and arrows `(f, ξ)` for `ξ ∈ φ(f)(x, y)`, composed by `μ`.
#[derive(Clone, Debug)]
pub struct DoubleColimitCat {
    pub category: Arc<FiniteCategory>,
    pub projection: FunctorData,
    pub objects: Vec<(usize, usize)>,
    pub arrows: Vec<(usize, usize)>,
}

pub fn dcolim_prof(d: &LaxProfDiagram) -> Result<DoubleColimitCat> {
    if d.fibers.len() == d.base.object_count() && d.profunctors.len() == d.base.arrow_count() && !d.is_normal() {
        return Err(CoreError::Unsupported("double colimits are computed for normal lax diagrams only".into()));
    }
    validate_lax(d).into_result("lax diagram").map_err(as_category_error)?;
    let a = &d.base;
    let mut objects = Vec::new();
    for (o, fib) in d.fibers.iter().enumerate() {
        objects.extend((0..fib.object_count()).map(|x| (o, x)));
    }
    let object_index: HashMap<(usize, usize), usize> = objects.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut arrows = Vec::new();
    for (f, p) in d.profunctors.iter().enumerate() {
        arrows.extend((0..p.len()).map(|xi| (f, xi)));
    }
    let arrow_index: HashMap<(usize, usize), usize> = arrows.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let names = objects.iter().map(|&(o, x)| format!("({},{})", a.objects()[o], d.fibers[o].objects()[x])).collect();
    let arrow_data = arrows
        .iter()
        .map(|&(f, xi)| {
            let arr = a.arrow(f);
            let e = d.profunctors[f].element(xi);
            Arrow {
                name: format!("({},{})", arr.name, e.name),
                src: object_index[&(arr.src, e.src)],
                tgt: object_index[&(arr.tgt, e.tgt)],
            }
        })
        .collect();
    // φ(id_a) = hom φ(a), whose elements are the arrows of φ(a)
    let ids = objects.iter().map(|&(o, x)| arrow_index[&(a.id(o), d.fibers[o].id(x))]).collect();
    let composites: Vec<(usize, usize, usize)> = d
        .entries()
        .into_iter()
        .map(|(g, f, eta, xi, out)| (arrow_index[&(g, eta)], arrow_index[&(f, xi)], arrow_index[&(a.comp(g, f), out)]))
        .collect();
    let category = Arc::new(FiniteCategory::new(names, arrow_data, ids, &composites)?);
    let projection = FunctorData {
        src: category.clone(),
        tgt: a.clone(),
        objects: objects.iter().map(|p| p.0).collect(),
        arrows: arrows.iter().map(|p| p.0).collect(),
    };
    Ok(DoubleColimitCat { category, projection, objects, arrows })
}

/// The lax diagram classifying `F : X -> A`, with the embeddings of the
/// fibers and of the profunctor elements into `X`.
#[derive(Clone, Debug)]
pub struct ClassifiedCat {
    pub diagram: LaxProfDiagram,
    /// Object `k` of `φ(a)` is `fiber_objects[a][k]` in `X`.
    pub fiber_objects: Vec<Vec<usize>>,
    /// Element `k` of `φ(f)` is the arrow `element_arrows[f][k]` of `X`.
    pub element_arrows: Vec<Vec<usize>>,
}

pub fn classifying_diagram_cat(f: &FunctorData) -> Result<ClassifiedCat> {
    validate_functor(f).into_result("functor").map_err(as_category_error)?;
    let (x, a) = (&f.src, &f.tgt);
    let mut fibers = Vec::new();
    let mut fiber_objects = Vec::new();
    let mut fiber_arrows = Vec::new();
    for o in 0..a.object_count() {
        let (cat, objs, arrs) = f.fiber(o)?;
        fibers.push(Arc::new(cat));
        fiber_objects.push(objs);
        fiber_arrows.push(arrs);
    }
    let inv = |t: &[usize]| -> HashMap<usize, usize> { t.iter().enumerate().map(|(k, &v)| (v, k)).collect() };
    let obj_inv: Vec<HashMap<usize, usize>> = fiber_objects.iter().map(|t| inv(t)).collect();
    let mut profunctors = Vec::new();
    let mut element_arrows = Vec::new();
    for (k, arr) in a.arrows().iter().enumerate() {
        if a.is_identity(k) {
            profunctors.push(hom(&fibers[arr.src]));
            element_arrows.push(fiber_arrows[arr.src].clone());
            continue;
        }
        let elems: Vec<usize> = (0..x.arrow_count()).filter(|&xi| f.arrows[xi] == k).collect();
        let el = inv(&elems);
        let data = elems
            .iter()
            .map(|&xi| {
                let xa = x.arrow(xi);
                super::profunctor::Element {
                    name: xa.name.clone(),
                    src: obj_inv[arr.src][&xa.src],
                    tgt: obj_inv[arr.tgt][&xa.tgt],
                }
            })
            .collect();
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (e, &xi) in elems.iter().enumerate() {
            for (kg, &g) in fiber_arrows[arr.tgt].iter().enumerate() {
                if let Some(gx) = x.compose(g, xi) {
                    left.push((kg, e, el[&gx]));
                }
            }
            for (kh, &h) in fiber_arrows[arr.src].iter().enumerate() {
                if let Some(xh) = x.compose(xi, h) {
                    right.push((e, kh, el[&xh]));
                }
            }
        }
        profunctors.push(Profunctor::new(fibers[arr.src].clone(), fibers[arr.tgt].clone(), data, &left, &right)?);
        element_arrows.push(elems);
    }
    let el_inv: Vec<HashMap<usize, usize>> = element_arrows.iter().map(|t| inv(t)).collect();
    let mut entries = Vec::new();
    for (g, fa, gf) in a.composites() {
        for (eta, &xe) in element_arrows[g].iter().enumerate() {
            for (xi, &xx) in element_arrows[fa].iter().enumerate() {
                if let Some(c) = x.compose(xe, xx) {
                    entries.push((g, fa, eta, xi, el_inv[gf][&c]));
                }
            }
        }
    }
    let diagram = LaxProfDiagram::new(a.clone(), fibers, profunctors, entries);
    Ok(ClassifiedCat { diagram, fiber_objects, element_arrows })
}

/// The comparison `dcolim φ_F -> X` over `A` and whether it is an
/// isomorphism of categories.
#[derive(Clone, Debug)]
pub struct CatRoundTrip {
    pub comparison: FunctorData,
    pub is_iso: bool,
    pub over_base: bool,
}

impl CatRoundTrip {
    pub fn holds(&self) -> bool {
        self.is_iso && self.over_base
    }
}

pub fn roundtrip_cat(f: &FunctorData) -> Result<CatRoundTrip> {
    let classified = classifying_diagram_cat(f)?;
    let colim = dcolim_prof(&classified.diagram)?;
    let comparison = FunctorData {
        src: colim.category.clone(),
        tgt: f.src.clone(),
        objects: colim.objects.iter().map(|&(a, x)| classified.fiber_objects[a][x]).collect(),
        arrows: colim.arrows.iter().map(|&(g, xi)| classified.element_arrows[g][xi]).collect(),
    };
    let is_iso = validate_functor(&comparison).is_valid() && comparison.is_isomorphism();
    let over_base = comparison.objects.iter().enumerate().all(|(k, &o)| f.objects[o] == colim.projection.objects[k])
        && comparison.arrows.iter().enumerate().all(|(k, &g)| f.arrows[g] == colim.projection.arrows[k]);
    Ok(CatRoundTrip { comparison, is_iso, over_base })
}

/// The other direction: classifying the double colimit of a normal lax
/// diagram gives back the diagram, up to the canonical isomorphisms.
pub fn lax_roundtrip(d: &LaxProfDiagram) -> Result<std::result::Result<(), String>> {
    let colim = dcolim_prof(d)?;
    let back = classifying_diagram_cat(&colim.projection)?;
    let a = &d.base;
    // fiber functors φ(a) -> φ'(a)
    let mut on_fibers = Vec::new();
    for o in 0..a.object_count() {
        let objs: HashMap<usize, usize> = back.fiber_objects[o].iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let arrs: HashMap<usize, usize> = back.element_arrows[a.id(o)].iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let obj_index: HashMap<(usize, usize), usize> = colim.objects.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let arr_index: HashMap<(usize, usize), usize> = colim.arrows.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let fib = &d.fibers[o];
        on_fibers.push(FunctorData {
            src: fib.clone(),
            tgt: back.diagram.fibers[o].clone(),
            objects: (0..fib.object_count()).map(|x| objs[&obj_index[&(o, x)]]).collect(),
            arrows: (0..fib.arrow_count()).map(|g| arrs[&arr_index[&(a.id(o), g)]]).collect(),
        });
    }
    let arr_index: HashMap<(usize, usize), usize> = colim.arrows.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut phis = Vec::new();
    for (f, arr) in a.arrows().iter().enumerate() {
        let els: HashMap<usize, usize> = back.element_arrows[f].iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let phi: Vec<usize> = (0..d.profunctors[f].len()).map(|xi| els[&arr_index[&(f, xi)]]).collect();
        if let Err(e) = check_profunctor_iso(
            &d.profunctors[f],
            &back.diagram.profunctors[f],
            &phi,
            Some((&on_fibers[arr.src], &on_fibers[arr.tgt])),
        ) {
            return Ok(Err(format!("φ({}): {e}", arr.name)));
        }
        phis.push(phi);
    }
    for (g, f, eta, xi, out) in d.entries() {
        if back.diagram.mu(g, f, phis[g][eta], phis[f][xi]) != Some(phis[a.comp(g, f)][out]) {
            return Ok(Err(format!("laxity differs over ({}, {})", a.arrow(g).name, a.arrow(f).name)));
        }
    }
    Ok(Ok(()))
}

/// The lax diagram `F_*` obtained by taking companions of a strict diagram;
/// identities go to hom profunctors.
pub fn companion_diagram(d: &CatDiagram) -> Result<LaxProfDiagram> {
    let a = &d.base;
    let codes: Vec<HashMap<(usize, usize), usize>> = (0..a.arrow_count()).map(|f| element_codes(d, f)).collect();
    let decode: Vec<Vec<(usize, usize)>> = codes
        .iter()
        .map(|m| {
            let mut v = vec![(0, 0); m.len()];
            for (&p, &k) in m {
                v[k] = p;
            }
            v
        })
        .collect();
    let profunctors: Vec<Profunctor> = (0..a.arrow_count())
        .map(|f| if a.is_identity(f) { hom(&d.fibers[a.arrow(f).src]) } else { companion(&d.functors[f]) })
        .collect();
    let mut entries = Vec::new();
    for (g, f, gf) in a.composites() {
        let fc = &d.fibers[a.arrow(g).tgt];
        for (eta, &(_, beta)) in decode[g].iter().enumerate() {
            let y = profunctors[g].element(eta).src;
            for (xi, &(x, alpha)) in decode[f].iter().enumerate() {
                if profunctors[f].element(xi).tgt != y {
                    continue;
                }
                let composite = fc.comp(beta, d.functors[g].arrows[alpha]);
                entries.push((g, f, eta, xi, codes[gf][&(x, composite)]));
            }
        }
    }
    Ok(LaxProfDiagram::new(a.clone(), d.fibers.clone(), profunctors, entries))
}

/// Elements of `φ(f)` as pairs `(x, α : F(f)(x) -> y)`.
fn element_codes(d: &CatDiagram, f: usize) -> HashMap<(usize, usize), usize> {
    let a = &d.base;
    if a.is_identity(f) {
        let fib = &d.fibers[a.arrow(f).src];
        (0..fib.arrow_count()).map(|g| ((fib.arrow(g).src, g), g)).collect()
    } else {
        companion_pairs(&d.functors[f]).into_iter().enumerate().map(|(k, p)| (p, k)).collect()
    }
}

/// Compares `dcolim(F_*)` with `Gro(F)` over the base.
#[derive(Clone, Debug)]
pub struct GroComparison {
    pub comparison: FunctorData,
    pub holds: bool,
}

pub fn gro_vs_dcolim(d: &CatDiagram) -> Result<GroComparison> {
    let gro = grothendieck(d)?;
    let lax = companion_diagram(d)?;
    let colim = dcolim_prof(&lax)?;
    let a = &d.base;
    let decode: Vec<HashMap<usize, (usize, usize)>> =
        (0..a.arrow_count()).map(|f| element_codes(d, f).into_iter().map(|(p, k)| (k, p)).collect()).collect();
    let comparison = FunctorData {
        src: colim.category.clone(),
        tgt: gro.category.clone(),
        objects: colim.objects.iter().map(|&(o, x)| gro.object(o, x)).collect(),
        arrows: colim
            .arrows
            .iter()
            .map(|&(f, xi)| {
                let (x, alpha) = decode[f][&xi];
                gro.arrow(f, x, alpha)
            })
            .collect(),
    };
    let over = comparison.objects.iter().enumerate().all(|(k, &o)| gro.projection.objects[o] == colim.projection.objects[k])
        && comparison.arrows.iter().enumerate().all(|(k, &g)| gro.projection.arrows[g] == colim.projection.arrows[k]);
    let holds = over && validate_functor(&comparison).is_valid() && comparison.is_isomorphism();
    Ok(GroComparison { comparison, holds })
}
