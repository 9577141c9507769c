use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::category::{FiniteCategory, FunctorData};
use super::nerve::{fundamental_category, nerve, nerve_map, Nerve};
use super::profunctor::{check_profunctor_iso, collage, companion, companion_pairs, from_collage, hom, Element, Profunctor};
use crate::error::{CoreError, Result};
use crate::simplicial::{pullback, pushout, CellId, SimplexRef, SimplicialMap};

/// `v ⊗ u` for `u : C -|-> D` and `v : D -|-> E`, as a coend: pairs `(y, x)`
/// with `y ∈ v(d, e)`, `x ∈ u(c, d)`, modulo `(y · g, x) ~ (y, g · x)`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub profunctor: Profunctor,
    /// Class of each pair `(y, x)`.
    pub class_of: HashMap<(usize, usize), usize>,
    /// Lexicographically least pair of each class.
    pub representatives: Vec<(usize, usize)>,
}

pub fn tensor_coend(v: &Profunctor, u: &Profunctor) -> Result<Tensor> {
    if !u.tgt.same_shape(&v.src) {
        return Err(CoreError::Mismatch("profunctors are not composable".into()));
    }
    let d = &u.tgt;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (y, ey) in v.elements().iter().enumerate() {
        for (x, ex) in u.elements().iter().enumerate() {
            if ex.tgt == ey.src {
                pairs.push((y, x));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut uf = UnionFind::<usize>::new(pairs.len());
    for g in 0..d.arrow_count() {
        let a = d.arrow(g);
        for (y, ey) in v.elements().iter().enumerate() {
            if ey.src != a.tgt {
                continue;
            }
            for (x, ex) in u.elements().iter().enumerate() {
                if ex.tgt == a.src {
                    uf.union(index[&(v.act_right(y, g), x)], index[&(y, u.act_left(g, x))]);
                }
            }
        }
    }
    // pairs are generated in lexicographic order, so the first member of a
    // class is its least element
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut class_of = HashMap::new();
    for (k, &p) in pairs.iter().enumerate() {
        let root = uf.find(k);
        let class = *class_of_root.entry(root).or_insert_with(|| {
            representatives.push(p);
            representatives.len() - 1
        });
        class_of.insert(p, class);
    }
    let elements = representatives
        .iter()
        .map(|&(y, x)| Element {
            name: format!("{}⊗{}", v.element(y).name, u.element(x).name),
            src: u.element(x).src,
            tgt: v.element(y).tgt,
        })
        .collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (k, &(y, x)) in representatives.iter().enumerate() {
        for h in 0..v.tgt.arrow_count() {
            if v.tgt.arrow(h).src == v.element(y).tgt {
                left.push((h, k, class_of[&(v.act_left(h, y), x)]));
            }
        }
        for f in 0..u.src.arrow_count() {
            if u.src.arrow(f).tgt == u.element(x).src {
                right.push((k, f, class_of[&(y, u.act_right(x, f))]));
            }
        }
    }
    let profunctor = Profunctor::new(u.src.clone(), v.tgt.clone(), elements, &left, &right)?;
    Ok(Tensor { profunctor, class_of, representatives })
}

impl Tensor {
    /// The map out of the coend induced by a function on pairs, checked to be
    /// constant on classes.
    pub fn induced(&self, f: impl Fn(usize, usize) -> usize) -> std::result::Result<Vec<usize>, String> {
        let mut out: Vec<Option<usize>> = vec![None; self.representatives.len()];
        for (&(y, x), &class) in &self.class_of {
            let img = f(y, x);
            match out[class] {
                None => out[class] = Some(img),
                Some(prev) if prev != img => return Err(format!("map is not balanced on class {class}")),
                _ => {}
            }
        }
        Ok(out.into_iter().map(|o| o.expect("classes are inhabited")).collect())
    }
}

/// `hom_D ⊗ u ≅ u` via `[g, x] ↦ g · x`.
pub fn left_unit_iso(u: &Profunctor) -> std::result::Result<Vec<usize>, String> {
    let t = tensor_coend(&hom(&u.tgt), u).map_err(|e| e.to_string())?;
    let phi = t.induced(|g, x| u.act_left(g, x))?;
    check_profunctor_iso(&t.profunctor, u, &phi, None)?;
    Ok(phi)
}

/// `u ⊗ hom_C ≅ u` via `[x, f] ↦ x · f`.
pub fn right_unit_iso(u: &Profunctor) -> std::result::Result<Vec<usize>, String> {
    let t = tensor_coend(u, &hom(&u.src)).map_err(|e| e.to_string())?;
    let phi = t.induced(|x, f| u.act_right(x, f))?;
    check_profunctor_iso(&t.profunctor, u, &phi, None)?;
    Ok(phi)
}

/// `(w ⊗ v) ⊗ u ≅ w ⊗ (v ⊗ u)` via `[[z, y], x] ↦ [z, [y, x]]`.
pub fn associator_iso(w: &Profunctor, v: &Profunctor, u: &Profunctor) -> std::result::Result<Vec<usize>, String> {
    let e = |e: CoreError| e.to_string();
    let wv = tensor_coend(w, v).map_err(e)?;
    let vu = tensor_coend(v, u).map_err(e)?;
    let lhs = tensor_coend(&wv.profunctor, u).map_err(e)?;
    let rhs = tensor_coend(w, &vu.profunctor).map_err(e)?;
    // every member (t, x) must give the same class, whichever (z, y) in t
    let mut members: Vec<Vec<(usize, usize)>> = vec![Vec::new(); wv.representatives.len()];
    for (&p, &class) in &wv.class_of {
        members[class].push(p);
    }
    let mut phi: Vec<Option<usize>> = vec![None; lhs.representatives.len()];
    for (&(t, x), &class) in &lhs.class_of {
        for &(z, y) in &members[t] {
            let img = rhs.class_of[&(z, vu.class_of[&(y, x)])];
            match phi[class] {
                None => phi[class] = Some(img),
                Some(prev) if prev != img => return Err("associator is not well defined".into()),
                _ => {}
            }
        }
    }
    let phi: Vec<usize> = phi.into_iter().map(Option::unwrap).collect();
    check_profunctor_iso(&lhs.profunctor, &rhs.profunctor, &phi, None)?;
    Ok(phi)
}

/// `(G F)_* ≅ G_* ⊗ F_*` via `[(d, b), (c, a)] ↦ (c, b ∘ G a)`.
pub fn companion_composition_iso(f: &FunctorData, g: &FunctorData) -> std::result::Result<Vec<usize>, String> {
    let gf = g.compose(f).map_err(|e| e.to_string())?;
    let (fs, gs, gfs) = (companion(f), companion(g), companion(&gf));
    let t = tensor_coend(&gs, &fs).map_err(|e| e.to_string())?;
    let (fp, gp) = (companion_pairs(f), companion_pairs(g));
    let index: HashMap<(usize, usize), usize> = companion_pairs(&gf).into_iter().enumerate().map(|(k, p)| (p, k)).collect();
    let e = &g.tgt;
    let phi = t.induced(|y, x| {
        let ((_, b), (c, a)) = (gp[y], fp[x]);
        index[&(c, e.comp(b, g.arrows[a]))]
    })?;
    check_profunctor_iso(&t.profunctor, &gfs, &phi, None)?;
    Ok(phi)
}

/// `v ⊗ u` computed geometrically: glue the collages of `u` and `v` along
/// the nerve of `D` over `Δ^2`, take the fundamental category, and pull
/// back along `d^1 : [1] -> [2]`. The result is compared with the coend by
/// an explicit isomorphism.
#[derive(Clone, Debug)]
pub struct GeometricTensor {
    pub profunctor: Profunctor,
    pub on_src: FunctorData,
    pub on_tgt: FunctorData,
    /// Coend class ↦ element of [`GeometricTensor::profunctor`].
    pub comparison: Vec<usize>,
    pub agrees: std::result::Result<(), String>,
}

pub fn tensor_geometric(v: &Profunctor, u: &Profunctor) -> Result<GeometricTensor> {
    let coend = tensor_coend(v, u)?;
    let (c, d, e) = (&u.src, &u.tgt, &v.tgt);
    let (cu, cv) = (collage(u), collage(v));
    let nu = nerve(&cu.category, Some(2))?;
    let nv = nerve(&cv.category, Some(2))?;
    let nd = nerve(d, Some(2))?;
    // D sits in the collage of u over 1 and in that of v over 0
    let d_in_u = FunctorData {
        src: d.clone(),
        tgt: cu.category.clone(),
        objects: (0..d.object_count()).map(|o| o + c.object_count()).collect(),
        arrows: (0..d.arrow_count()).map(|a| a + c.arrow_count()).collect(),
    };
    let d_in_v = FunctorData {
        src: d.clone(),
        tgt: cv.category.clone(),
        objects: (0..d.object_count()).collect(),
        arrows: (0..d.arrow_count()).collect(),
    };
    let (glued, inl, inr) = pushout(&nerve_map(&d_in_u, &nd, &nu)?, &nerve_map(&d_in_v, &nd, &nv)?)?;
    let pi = fundamental_category(&glued, 3)?;
    let w = &pi.category;

    // the functor to [2]: C ↦ 0, D ↦ 1, E ↦ 2
    let simplex2 = Arc::new(FiniteCategory::ordinal(2));
    let mut level = vec![usize::MAX; w.object_count()];
    for o in 0..cu.category.object_count() {
        level[pi.object_of(inl.image_of_cell(CellId(o)).cell)] = cu.projection.objects[o];
    }
    for o in 0..cv.category.object_count() {
        level[pi.object_of(inr.image_of_cell(CellId(o)).cell)] = cv.projection.objects[o] + 1;
    }
    let arrows = w.arrows().iter().map(|a| simplex2.hom(level[a.src], level[a.tgt])[0]).collect();
    let to_simplex = FunctorData::new(w.clone(), simplex2.clone(), level, arrows)?;

    // pull back the nerve along d^1 and read off the collage again
    let nw = nerve(w, Some(2))?;
    let n2 = nerve(&simplex2, None)?;
    let interval = Arc::new(FiniteCategory::ordinal(1));
    let n1 = nerve(&interval, None)?;
    let d1 = FunctorData::new(
        interval.clone(),
        simplex2.clone(),
        vec![0, 2],
        vec![simplex2.id(0), simplex2.hom(0, 2)[0], simplex2.id(2)],
    )?;
    let pb = pullback(&nerve_map(&to_simplex, &nw, &n2)?, &nerve_map(&d1, &n1, &n2)?)?;
    let pi2 = fundamental_category(&pb.set, 2)?;
    let over = pi2.category.clone();
    let objects: Vec<usize> = pi2.vertices.iter().map(|&vx| pb.right.image_of_cell(vx).cell.0).collect();
    let arrows =
        (0..over.arrow_count()).map(|a| interval.hom(objects[over.arrow(a).src], objects[over.arrow(a).tgt])[0]).collect();
    let projection = FunctorData::new(over.clone(), interval.clone(), objects, arrows)?;
    let parts = from_collage(&projection)?;

    // trace objects and arrows of W through the pullback
    let inv = |t: &[usize]| -> HashMap<usize, usize> { t.iter().enumerate().map(|(k, &x)| (x, k)).collect() };
    let side_vertex = |side: usize| SimplexRef::cell(CellId(side));
    let trace_object = |o: usize, side: usize| -> usize {
        let vx = pb.lift(SimplexRef::cell(CellId(o)), side_vertex(side)).expect("object lies over its side");
        pi2.object_of(vx.cell)
    };
    let edge_over = |from: usize, to: usize| -> SimplexRef { n1.simplex(from, &[interval.hom(from, to)[0]]).unwrap() };
    let trace_arrow = |a: usize, from: usize, to: usize| -> usize {
        let x = pb.lift(nw.arrow_simplex(a), edge_over(from, to)).expect("arrow lies over its side");
        pi2.arrow_of(&x)
    };
    let w_object_u = |o: usize| pi.object_of(inl.image_of_cell(CellId(o)).cell);
    let w_object_v = |o: usize| pi.object_of(inr.image_of_cell(CellId(o)).cell);
    let w_arrow = |n: &Nerve, m: &SimplicialMap, a: usize| pi.arrow_of(&m.apply(&n.arrow_simplex(a)));

    let (c_obj, c_arr) = (inv(&parts.src_objects), inv(&parts.src_arrows));
    let (e_obj, e_arr) = (inv(&parts.tgt_objects), inv(&parts.tgt_arrows));
    let elem = inv(&parts.elements);
    let geo = &parts.profunctor;
    let on_src = FunctorData {
        src: c.clone(),
        tgt: geo.src.clone(),
        objects: (0..c.object_count()).map(|o| c_obj[&trace_object(w_object_u(o), 0)]).collect(),
        arrows: (0..c.arrow_count()).map(|a| c_arr[&trace_arrow(w_arrow(&nu, &inl, a), 0, 0)]).collect(),
    };
    let nc = cv.category.object_count() - e.object_count();
    let ac = cv.category.arrow_count() - e.arrow_count() - v.len();
    let on_tgt = FunctorData {
        src: e.clone(),
        tgt: geo.tgt.clone(),
        objects: (0..e.object_count()).map(|o| e_obj[&trace_object(w_object_v(o + nc), 1)]).collect(),
        arrows: (0..e.arrow_count()).map(|a| e_arr[&trace_arrow(w_arrow(&nv, &inr, a + ac), 1, 1)]).collect(),
    };
    let u_off = c.arrow_count() + d.arrow_count();
    let v_off = d.arrow_count() + e.arrow_count();
    let comparison: Vec<usize> = coend
        .representatives
        .iter()
        .map(|&(y, x)| {
            let composite = w.comp(w_arrow(&nv, &inr, y + v_off), w_arrow(&nu, &inl, x + u_off));
            elem[&trace_arrow(composite, 0, 1)]
        })
        .collect();
    let agrees = check_profunctor_iso(&coend.profunctor, geo, &comparison, Some((&on_src, &on_tgt)));
    Ok(GeometricTensor { profunctor: parts.profunctor, on_src, on_tgt, comparison, agrees })
}
