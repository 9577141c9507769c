use std::collections::HashMap;
use std::sync::Arc;

use super::category::{validate_functor, Arrow, FiniteCategory, FunctorData};
use crate::error::{CoreError, Result};
use crate::simplicial::{Issue, ValidationReport};

/// An element of `u(c, d)`, drawn as an arrow `c -> d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A profunctor `u : C -|-> D`, i.e. a functor `C^op × D -> Set`, stored as
/// its set of elements with a left action of `D` and a right action of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profunctor {
    pub src: Arc<FiniteCategory>,
    pub tgt: Arc<FiniteCategory>,
    elements: Vec<Element>,
    /// `left[g * |elements| + x] = g · x`
    left: Vec<Option<usize>>,
    /// `right[x * |arrows C| + f] = x · f`
    right: Vec<Option<usize>>,
    by_pair: HashMap<(usize, usize), Vec<usize>>,
}

impl Profunctor {
    /// Assembles the tables without checking the laws; see
    /// [`validate_profunctor`].
    pub fn from_parts(
        src: Arc<FiniteCategory>,
        tgt: Arc<FiniteCategory>,
        elements: Vec<Element>,
        left: &[(usize, usize, usize)],
        right: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = elements.len();
        for e in &elements {
            if e.src >= src.object_count() || e.tgt >= tgt.object_count() {
                return Err(CoreError::InvalidCategory(format!("element {} has a missing endpoint", e.name)));
            }
        }
        let mut l = vec![None; tgt.arrow_count() * n];
        for &(g, x, y) in left {
            if g >= tgt.arrow_count() || x >= n || y >= n {
                return Err(CoreError::InvalidCategory("left action refers to missing data".into()));
            }
            l[g * n + x] = Some(y);
        }
        let m = src.arrow_count();
        let mut r = vec![None; n * m];
        for &(x, f, y) in right {
            if f >= m || x >= n || y >= n {
                return Err(CoreError::InvalidCategory("right action refers to missing data".into()));
            }
            r[x * m + f] = Some(y);
        }
        let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, e) in elements.iter().enumerate() {
            by_pair.entry((e.src, e.tgt)).or_default().push(k);
        }
        Ok(Profunctor { src, tgt, elements, left: l, right: r, by_pair })
    }

    pub fn new(
        src: Arc<FiniteCategory>,
        tgt: Arc<FiniteCategory>,
        elements: Vec<Element>,
        left: &[(usize, usize, usize)],
        right: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let u = Profunctor::from_parts(src, tgt, elements, left, right)?;
        validate_profunctor(&u).into_result("profunctor").map_err(as_category_error)?;
        Ok(u)
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, x: usize) -> &Element {
        &self.elements[x]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `u(c, d)`.
    pub fn between(&self, c: usize, d: usize) -> &[usize] {
        self.by_pair.get(&(c, d)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// `g · x` for `g : d -> d'` in the target category.
    pub fn act_left(&self, g: usize, x: usize) -> usize {
        self.left[g * self.elements.len() + x].expect("left action is total on composable pairs")
    }

    /// `x · f` for `f : c' -> c` in the source category.
    pub fn act_right(&self, x: usize, f: usize) -> usize {
        self.right[x * self.src.arrow_count() + f].expect("right action is total on composable pairs")
    }

    /// Left and right action tables as triples.
    pub fn actions(&self) -> (Vec<(usize, usize, usize)>, Vec<(usize, usize, usize)>) {
        let n = self.elements.len();
        let m = self.src.arrow_count();
        let left = self.left.iter().enumerate().filter_map(|(k, y)| y.map(|y| (k / n, k % n, y))).collect();
        let right = self.right.iter().enumerate().filter_map(|(k, y)| y.map(|y| (k / m, k % m, y))).collect();
        (left, right)
    }
}

pub(crate) fn as_category_error(e: CoreError) -> CoreError {
    match e {
        CoreError::InvalidPresentation(s) => CoreError::InvalidCategory(s),
        other => other,
    }
}

pub fn validate_profunctor(u: &Profunctor) -> ValidationReport {
    let (c, d) = (&u.src, &u.tgt);
    let n = u.elements.len();
    let mut issues = Vec::new();
    let name = |x: usize| u.elements[x].name.clone();
    for x in 0..n {
        let e = &u.elements[x];
        for g in 0..d.arrow_count() {
            if d.arrow(g).src != e.tgt {
                continue;
            }
            match u.left[g * n + x] {
                None => issues.push(Issue::Structure { detail: format!("{} · {} is missing", d.arrow(g).name, name(x)) }),
                Some(y) if u.elements[y].src != e.src || u.elements[y].tgt != d.arrow(g).tgt => {
                    issues.push(Issue::Structure { detail: format!("{} · {} lies in the wrong set", d.arrow(g).name, name(x)) })
                }
                _ => {}
            }
        }
        for f in 0..c.arrow_count() {
            if c.arrow(f).tgt != e.src {
                continue;
            }
            match u.right[x * c.arrow_count() + f] {
                None => issues.push(Issue::Structure { detail: format!("{} · {} is missing", name(x), c.arrow(f).name) }),
                Some(y) if u.elements[y].tgt != e.tgt || u.elements[y].src != c.arrow(f).src => {
                    issues.push(Issue::Structure { detail: format!("{} · {} lies in the wrong set", name(x), c.arrow(f).name) })
                }
                _ => {}
            }
        }
    }
    if !issues.is_empty() {
        return ValidationReport { issues };
    }
    for x in 0..n {
        let e = &u.elements[x];
        if u.act_left(d.id(e.tgt), x) != x || u.act_right(x, c.id(e.src)) != x {
            issues.push(Issue::Structure { detail: format!("identities do not act trivially on {}", name(x)) });
        }
    }
    for (g2, g1, g) in d.composites() {
        for &x in u.by_pair.iter().filter(|((_, t), _)| *t == d.arrow(g1).src).flat_map(|(_, v)| v) {
            if u.act_left(g, x) != u.act_left(g2, u.act_left(g1, x)) {
                issues.push(Issue::Structure {
                    detail: format!(
                        "left action is not associative at ({}, {}, {})",
                        d.arrow(g2).name,
                        d.arrow(g1).name,
                        name(x)
                    ),
                });
            }
        }
    }
    for (f2, f1, f) in c.composites() {
        for &x in u.by_pair.iter().filter(|((s, _), _)| *s == c.arrow(f2).tgt).flat_map(|(_, v)| v) {
            if u.act_right(x, f) != u.act_right(u.act_right(x, f2), f1) {
                issues.push(Issue::Structure {
                    detail: format!(
                        "right action is not associative at ({}, {}, {})",
                        name(x),
                        c.arrow(f2).name,
                        c.arrow(f1).name
                    ),
                });
            }
        }
    }
    for x in 0..n {
        let e = &u.elements[x];
        for g in 0..d.arrow_count() {
            if d.arrow(g).src != e.tgt {
                continue;
            }
            for f in 0..c.arrow_count() {
                if c.arrow(f).tgt == e.src && u.act_right(u.act_left(g, x), f) != u.act_left(g, u.act_right(x, f)) {
                    issues.push(Issue::Structure {
                        detail: format!("actions do not commute at ({}, {}, {})", d.arrow(g).name, name(x), c.arrow(f).name),
                    });
                }
            }
        }
    }
    issues.sort_by_key(|i| i.to_string());
    issues.dedup();
    ValidationReport { issues }
}

/// The hom profunctor `C(-, -)`; its elements are the arrows of `C` in order.
pub fn hom(c: &Arc<FiniteCategory>) -> Profunctor {
    let elements = c.arrows().iter().map(|a| Element { name: a.name.clone(), src: a.src, tgt: a.tgt }).collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (g, f, gf) in c.composites() {
        left.push((g, f, gf));
        right.push((g, f, gf));
    }
    Profunctor::from_parts(c.clone(), c.clone(), elements, &left, &right).expect("hom tables are well formed")
}

/// Elements of the companion `F_*(c, d) = D(Fc, d)` as pairs `(c, a)` with
/// `a : Fc -> d`, in the order used by [`companion`].
pub fn companion_pairs(f: &FunctorData) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for c in 0..f.src.object_count() {
        for a in 0..f.tgt.arrow_count() {
            if f.tgt.arrow(a).src == f.objects[c] {
                out.push((c, a));
            }
        }
    }
    out
}

/// The companion `F_*(c, d) = D(Fc, d)` of a functor `F : C -> D`.
pub fn companion(f: &FunctorData) -> Profunctor {
    let (c, d) = (&f.src, &f.tgt);
    let pairs = companion_pairs(f);
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let elements = pairs
        .iter()
        .map(|&(o, a)| Element { name: format!("{}:{}", c.objects()[o], d.arrow(a).name), src: o, tgt: d.arrow(a).tgt })
        .collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (k, &(o, a)) in pairs.iter().enumerate() {
        for g in 0..d.arrow_count() {
            if let Some(ga) = d.compose(g, a) {
                left.push((g, k, index[&(o, ga)]));
            }
        }
        for h in 0..c.arrow_count() {
            if c.arrow(h).tgt == o {
                right.push((k, h, index[&(c.arrow(h).src, d.comp(a, f.arrows[h]))]));
            }
        }
    }
    Profunctor::from_parts(c.clone(), d.clone(), elements, &left, &right).expect("companion tables are well formed")
}

/// Checks that `phi` is an isomorphism `u ≅ v` lying over the category
/// isomorphisms `on_src : C_u -> C_v` and `on_tgt : D_u -> D_v` (identities
/// when `None`, in which case the categories must agree).
pub fn check_profunctor_iso(
    u: &Profunctor,
    v: &Profunctor,
    phi: &[usize],
    along: Option<(&FunctorData, &FunctorData)>,
) -> std::result::Result<(), String> {
    let owned;
    let (fc, fd) = match along {
        Some(pair) => pair,
        None => {
            if !u.src.same_shape(&v.src) || !u.tgt.same_shape(&v.tgt) {
                return Err("profunctors live over different categories".into());
            }
            owned = (FunctorData::identity(u.src.clone()), FunctorData::identity(u.tgt.clone()));
            (&owned.0, &owned.1)
        }
    };
    for (what, f) in [("source", fc), ("target", fd)] {
        if !validate_functor(f).is_valid() || !f.is_isomorphism() {
            return Err(format!("{what} comparison is not an isomorphism of categories"));
        }
    }
    if phi.len() != u.len() || u.len() != v.len() {
        return Err(format!("{} elements against {}", u.len(), v.len()));
    }
    let mut seen = vec![false; v.len()];
    for (x, &y) in phi.iter().enumerate() {
        if y >= v.len() || std::mem::replace(&mut seen[y], true) {
            return Err("element map is not a bijection".into());
        }
        let (ex, ey) = (u.element(x), v.element(y));
        if fc.objects[ex.src] != ey.src || fd.objects[ex.tgt] != ey.tgt {
            return Err(format!("{} is sent to the wrong set", ex.name));
        }
    }
    let (left, right) = u.actions();
    for (g, x, gx) in left {
        if phi[gx] != v.act_left(fd.arrows[g], phi[x]) {
            return Err(format!("left action is not preserved at ({}, {})", u.tgt.arrow(g).name, u.element(x).name));
        }
    }
    for (x, f, xf) in right {
        if phi[xf] != v.act_right(phi[x], fc.arrows[f]) {
            return Err(format!("right action is not preserved at ({}, {})", u.element(x).name, u.src.arrow(f).name));
        }
    }
    Ok(())
}

/// The collage of `u : C -|-> D`: objects of `C` then `D`, arrows of `C`,
/// then `D`, then the elements of `u`; with its projection to `[1]`.
#[derive(Clone, Debug)]
pub struct Collage {
    pub category: Arc<FiniteCategory>,
    pub projection: FunctorData,
}

pub fn collage(u: &Profunctor) -> Collage {
    let (c, d) = (&u.src, &u.tgt);
    let (nc, ac, ad) = (c.object_count(), c.arrow_count(), d.arrow_count());
    let mut objects: Vec<String> = c.objects().iter().map(|o| format!("0.{o}")).collect();
    objects.extend(d.objects().iter().map(|o| format!("1.{o}")));
    let mut arrows: Vec<Arrow> = c.arrows().iter().map(|a| Arrow { name: format!("0.{}", a.name), ..a.clone() }).collect();
    arrows.extend(d.arrows().iter().map(|a| Arrow { name: format!("1.{}", a.name), src: a.src + nc, tgt: a.tgt + nc }));
    arrows.extend(u.elements().iter().map(|e| Arrow { name: format!("u.{}", e.name), src: e.src, tgt: e.tgt + nc }));
    let mut ids: Vec<usize> = c.ids().to_vec();
    ids.extend(d.ids().iter().map(|&i| i + ac));
    let mut composites: Vec<(usize, usize, usize)> = c.composites();
    composites.extend(d.composites().into_iter().map(|(g, f, gf)| (g + ac, f + ac, gf + ac)));
    let (left, right) = u.actions();
    let off = ac + ad;
    composites.extend(left.into_iter().map(|(g, x, y)| (g + ac, x + off, y + off)));
    composites.extend(right.into_iter().map(|(x, f, y)| (x + off, f, y + off)));
    let category =
        Arc::new(FiniteCategory::from_parts(objects, arrows, ids, &composites).expect("collage tables are well formed"));
    let interval = Arc::new(FiniteCategory::ordinal(1));
    let up = interval.hom(0, 1)[0];
    let mut on_objects = vec![0; nc];
    on_objects.extend(std::iter::repeat_n(1, d.object_count()));
    let mut on_arrows = vec![interval.id(0); ac];
    on_arrows.extend(std::iter::repeat_n(interval.id(1), ad));
    on_arrows.extend(std::iter::repeat_n(up, u.len()));
    let projection = FunctorData { src: category.clone(), tgt: interval, objects: on_objects, arrows: on_arrows };
    Collage { category, projection }
}

/// How the profunctor read off a category over `[1]` sits inside it.
#[derive(Clone, Debug)]
pub struct CollageParts {
    pub profunctor: Profunctor,
    pub src_objects: Vec<usize>,
    pub src_arrows: Vec<usize>,
    pub tgt_objects: Vec<usize>,
    pub tgt_arrows: Vec<usize>,
    /// The arrow of the total category underlying each element.
    pub elements: Vec<usize>,
}

/// The profunctor classified by a functor `p : X -> [1]`: the fibers over
/// `0` and `1`, related by the arrows over `0 -> 1`.
pub fn from_collage(p: &FunctorData) -> Result<CollageParts> {
    let interval = FiniteCategory::ordinal(1);
    if !p.tgt.same_shape(&interval) {
        return Err(CoreError::Mismatch("collage projection must land in [1]".into()));
    }
    validate_functor(p).into_result("collage projection").map_err(as_category_error)?;
    let x = &p.src;
    let up = p.tgt.hom(0, 1)[0];
    let (c, src_objects, src_arrows) = p.fiber(0)?;
    let (d, tgt_objects, tgt_arrows) = p.fiber(1)?;
    let (c, d) = (Arc::new(c), Arc::new(d));
    let inv = |table: &[usize]| -> HashMap<usize, usize> { table.iter().enumerate().map(|(k, &v)| (v, k)).collect() };
    let (c_obj, d_obj) = (inv(&src_objects), inv(&tgt_objects));
    let elements: Vec<usize> = (0..x.arrow_count()).filter(|&a| p.arrows[a] == up).collect();
    let el = inv(&elements);
    let data = elements
        .iter()
        .map(|&a| {
            let arr = x.arrow(a);
            Element { name: arr.name.clone(), src: c_obj[&arr.src], tgt: d_obj[&arr.tgt] }
        })
        .collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (k, &a) in elements.iter().enumerate() {
        for (kg, &g) in tgt_arrows.iter().enumerate() {
            if let Some(ga) = x.compose(g, a) {
                left.push((kg, k, el[&ga]));
            }
        }
        for (kf, &f) in src_arrows.iter().enumerate() {
            if let Some(af) = x.compose(a, f) {
                right.push((k, kf, el[&af]));
            }
        }
    }
    let profunctor = Profunctor::new(c, d, data, &left, &right)?;
    Ok(CollageParts { profunctor, src_objects, src_arrows, tgt_objects, tgt_arrows, elements })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_arrows() -> Arc<FiniteCategory> {
        let objects: Vec<String> = ["a", "b"].iter().map(|s| s.to_string()).collect();
        let edges = vec![("p".to_string(), 0, 1), ("q".to_string(), 0, 1)];
        Arc::new(FiniteCategory::free(objects, &edges).unwrap())
    }

    #[test]
    fn hom_and_companions_are_valid() {
        let c = two_arrows();
        assert!(validate_profunctor(&hom(&c)).is_valid());
        let d = Arc::new(FiniteCategory::ordinal(2));
        let f =
            FunctorData::new(Arc::new(FiniteCategory::ordinal(1)), d.clone(), vec![0, 2], vec![d.id(0), d.hom(0, 2)[0], d.id(2)])
                .unwrap();
        let fs = companion(&f);
        assert!(validate_profunctor(&fs).is_valid());
        // D(F0, d) has 3 elements, D(F1, d) has 1
        assert_eq!(fs.len(), 4);
    }

    #[test]
    fn collage_roundtrip() {
        let c = two_arrows();
        let u = hom(&c);
        let col = collage(&u);
        assert!(crate::cat::validate_category(&col.category).is_valid());
        assert!(validate_functor(&col.projection).is_valid());
        let back = from_collage(&col.projection).unwrap();
        let phi: Vec<usize> = (0..u.len()).collect();
        check_profunctor_iso(&u, &back.profunctor, &phi, None).unwrap();
    }

    #[test]
    fn broken_action_is_reported() {
        let c = two_arrows();
        let u = hom(&c);
        let (mut left, right) = u.actions();
        // let id_b send p to q
        let p = c.arrow_index("p").unwrap();
        let q = c.arrow_index("q").unwrap();
        let idb = c.id(1);
        for t in left.iter_mut() {
            if t.0 == idb && t.1 == p {
                t.2 = q;
            }
        }
        let bad = Profunctor::from_parts(c.clone(), c, u.elements().to_vec(), &left, &right).unwrap();
        let report = validate_profunctor(&bad);
        assert!(report.issues.iter().any(|i| i.to_string() == "identities do not act trivially on p"));
    }
}
