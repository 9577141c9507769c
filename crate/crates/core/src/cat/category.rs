use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::simplicial::{Issue, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A finite category given by its composition table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    ids: Vec<usize>,
    /// `comp[g * |arrows| + f] = g ∘ f` when `tgt f = src g`.
    comp: Vec<Option<usize>>,
    homs: HashMap<(usize, usize), Vec<usize>>,
}

impl fmt::Debug for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteCategory")
            .field("objects", &self.objects)
            .field("arrows", &self.arrows.iter().map(|a| &a.name).collect::<Vec<_>>())
            .finish()
    }
}

impl FiniteCategory {
    /// Assembles the tables without checking the category laws; see
    /// [`validate_category`]. Fails only on data that cannot be tabulated.
    pub fn from_parts(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        ids: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = arrows.len();
        if ids.len() != objects.len() {
            return Err(CoreError::InvalidCategory(format!("{} objects but {} identities", objects.len(), ids.len())));
        }
        for a in &arrows {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(CoreError::InvalidCategory(format!("arrow {} has a missing endpoint", a.name)));
            }
        }
        if let Some(&bad) = ids.iter().find(|&&i| i >= n) {
            return Err(CoreError::InvalidCategory(format!("identity refers to missing arrow {bad}")));
        }
        let mut comp = vec![None; n * n];
        for &(g, f, gf) in composites {
            if g >= n || f >= n || gf >= n {
                return Err(CoreError::InvalidCategory(format!("composite ({g}, {f}, {gf}) refers to a missing arrow")));
            }
            if arrows[f].tgt != arrows[g].src {
                return Err(CoreError::InvalidCategory(format!(
                    "composite {} ∘ {} of non-composable arrows",
                    arrows[g].name, arrows[f].name
                )));
            }
            comp[g * n + f] = Some(gf);
        }
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (k, a) in arrows.iter().enumerate() {
            homs.entry((a.src, a.tgt)).or_default().push(k);
        }
        Ok(FiniteCategory { objects, arrows, ids, comp, homs })
    }

    /// Assembles and validates.
    pub fn new(objects: Vec<String>, arrows: Vec<Arrow>, ids: Vec<usize>, composites: &[(usize, usize, usize)]) -> Result<Self> {
        let cat = FiniteCategory::from_parts(objects, arrows, ids, composites)?;
        validate_category(&cat).into_result("category")?;
        Ok(cat)
    }

    pub fn terminal() -> Self {
        FiniteCategory::new(vec!["*".into()], vec![Arrow { name: "id_*".into(), src: 0, tgt: 0 }], vec![0], &[(0, 0, 0)]).unwrap()
    }

    /// The poset on `names` with `le[i][j]` meaning `i <= j`.
    pub fn poset(names: Vec<String>, le: &[Vec<bool>]) -> Result<Self> {
        let n = names.len();
        for i in 0..n {
            if !le[i][i] {
                return Err(CoreError::InvalidCategory(format!("relation is not reflexive at {}", names[i])));
            }
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(CoreError::InvalidCategory("relation is not antisymmetric".into()));
                }
                for k in 0..n {
                    if le[i][j] && le[j][k] && !le[i][k] {
                        return Err(CoreError::InvalidCategory("relation is not transitive".into()));
                    }
                }
            }
        }
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if le[i][j] {
                    index.insert((i, j), arrows.len());
                    let name = if i == j { format!("id_{}", names[i]) } else { format!("{}<{}", names[i], names[j]) };
                    arrows.push(Arrow { name, src: i, tgt: j });
                }
            }
        }
        let ids = (0..n).map(|i| index[&(i, i)]).collect();
        let mut composites = Vec::new();
        for (&(i, j), &f) in &index {
            for k in 0..n {
                if let Some(&g) = index.get(&(j, k)) {
                    composites.push((g, f, index[&(i, k)]));
                }
            }
        }
        FiniteCategory::new(names, arrows, ids, &composites)
    }

    /// The ordinal `[n] = {0 < 1 < … < n}`.
    pub fn ordinal(n: usize) -> Self {
        let names = (0..=n).map(|i| i.to_string()).collect();
        let le: Vec<Vec<bool>> = (0..=n).map(|i| (0..=n).map(|j| i <= j).collect()).collect();
        FiniteCategory::poset(names, &le).unwrap()
    }

    /// The free category on a finite acyclic graph; arrows are paths.
    pub fn free(objects: Vec<String>, edges: &[(String, usize, usize)]) -> Result<Self> {
        let n = objects.len();
        // paths as edge sequences, in order of traversal
        let mut paths: Vec<(usize, usize, Vec<usize>)> = (0..n).map(|o| (o, o, vec![])).collect();
        let mut frontier: Vec<usize> = (0..n).collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in frontier {
                let (src, end) = (paths[p].0, paths[p].1);
                for (e, edge) in edges.iter().enumerate() {
                    if edge.1 == end {
                        let mut seq = paths[p].2.clone();
                        seq.push(e);
                        if seq.len() > edges.len() {
                            return Err(CoreError::InvalidCategory("graph has a cycle".into()));
                        }
                        paths.push((src, edge.2, seq));
                        next.push(paths.len() - 1);
                    }
                }
            }
            frontier = next;
        }
        let index: HashMap<Vec<usize>, usize> =
            paths.iter().enumerate().filter(|(_, p)| !p.2.is_empty()).map(|(k, p)| (p.2.clone(), k)).collect();
        let arrows: Vec<Arrow> = paths
            .iter()
            .map(|(s, t, seq)| {
                let name = if seq.is_empty() {
                    format!("id_{}", objects[*s])
                } else {
                    seq.iter().rev().map(|&e| edges[e].0.clone()).collect::<Vec<_>>().join(".")
                };
                Arrow { name, src: *s, tgt: *t }
            })
            .collect();
        let ids: Vec<usize> = (0..n).collect();
        let mut composites = Vec::new();
        for (f, pf) in paths.iter().enumerate() {
            for (g, pg) in paths.iter().enumerate() {
                if pf.1 != pg.0 {
                    continue;
                }
                let gf = if pf.2.is_empty() {
                    g
                } else if pg.2.is_empty() {
                    f
                } else {
                    let mut seq = pf.2.clone();
                    seq.extend_from_slice(&pg.2);
                    index[&seq]
                };
                composites.push((g, f, gf));
            }
        }
        FiniteCategory::new(objects, arrows, ids, &composites)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn id(&self, object: usize) -> usize {
        self.ids[object]
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_identity(&self, a: usize) -> bool {
        self.ids[self.arrows[a].src] == a
    }

    /// `g ∘ f`, if defined.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.arrows.len() + f]
    }

    /// `g ∘ f` for arrows known to be composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).unwrap_or_else(|| panic!("{} ∘ {} is not defined", self.arrows[g].name, self.arrows[f].name))
    }

    pub fn hom(&self, src: usize, tgt: usize) -> &[usize] {
        self.homs.get(&(src, tgt)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All composable pairs `(g, f)` with their composite.
    pub fn composites(&self) -> Vec<(usize, usize, usize)> {
        let n = self.arrows.len();
        let mut out = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(gf) = self.comp[g * n + f] {
                    out.push((g, f, gf));
                }
            }
        }
        out
    }

    /// Same tables, ignoring names.
    pub fn same_shape(&self, other: &FiniteCategory) -> bool {
        self.objects.len() == other.objects.len()
            && self.ids == other.ids
            && self.comp == other.comp
            && self.arrows.iter().zip(&other.arrows).all(|(a, b)| a.src == b.src && a.tgt == b.tgt)
            && self.arrows.len() == other.arrows.len()
    }

    /// Whether some non-identity arrows form a cycle (then the nerve has
    /// nondegenerate simplices in every dimension).
    pub fn has_cycles(&self) -> bool {
        let n = self.objects.len();
        let mut reach = vec![vec![false; n]; n];
        for (k, a) in self.arrows.iter().enumerate() {
            if !self.is_identity(k) {
                if a.src == a.tgt {
                    return true;
                }
                reach[a.src][a.tgt] = true;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        (0..n).any(|i| reach[i][i])
    }

    /// The subcategory on the given objects and arrows, which must contain
    /// the identities and be closed under composition. Returns the inclusion
    /// as index maps.
    pub fn subcategory(&self, objects: &[usize], arrows: &[usize]) -> Result<(FiniteCategory, Vec<usize>, Vec<usize>)> {
        let obj_index: HashMap<usize, usize> = objects.iter().enumerate().map(|(k, &o)| (o, k)).collect();
        let arr_index: HashMap<usize, usize> = arrows.iter().enumerate().map(|(k, &a)| (a, k)).collect();
        let sub_arrows = arrows
            .iter()
            .map(|&a| {
                let arr = &self.arrows[a];
                match (obj_index.get(&arr.src), obj_index.get(&arr.tgt)) {
                    (Some(&s), Some(&t)) => Ok(Arrow { name: arr.name.clone(), src: s, tgt: t }),
                    _ => Err(CoreError::InvalidCategory(format!("arrow {} leaves the subcategory", arr.name))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let ids = objects
            .iter()
            .map(|&o| {
                arr_index
                    .get(&self.ids[o])
                    .copied()
                    .ok_or_else(|| CoreError::InvalidCategory(format!("identity of {} is missing", self.objects[o])))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut composites = Vec::new();
        for (kg, &g) in arrows.iter().enumerate() {
            for (kf, &f) in arrows.iter().enumerate() {
                if let Some(gf) = self.compose(g, f) {
                    let k = arr_index
                        .get(&gf)
                        .ok_or_else(|| CoreError::InvalidCategory("subcategory is not closed under composition".into()))?;
                    composites.push((kg, kf, *k));
                }
            }
        }
        let names = objects.iter().map(|&o| self.objects[o].clone()).collect();
        let sub = FiniteCategory::from_parts(names, sub_arrows, ids, &composites)?;
        Ok((sub, objects.to_vec(), arrows.to_vec()))
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// Exhaustive check of the category laws.
pub fn validate_category(c: &FiniteCategory) -> ValidationReport {
    let mut issues = Vec::new();
    let n = c.arrows.len();
    let name = |a: usize| c.arrows[a].name.clone();
    for (o, &i) in c.ids.iter().enumerate() {
        if c.arrows[i].src != o || c.arrows[i].tgt != o {
            issues.push(Issue::Structure { detail: format!("identity of {} is not an endomorphism of it", c.objects[o]) });
        }
    }
    for g in 0..n {
        for f in 0..n {
            if c.arrows[f].tgt != c.arrows[g].src {
                continue;
            }
            match c.compose(g, f) {
                None => issues.push(Issue::Structure { detail: format!("composite {} ∘ {} is missing", name(g), name(f)) }),
                Some(gf) => {
                    if c.arrows[gf].src != c.arrows[f].src || c.arrows[gf].tgt != c.arrows[g].tgt {
                        issues.push(Issue::Structure {
                            detail: format!("composite {} ∘ {} has the wrong endpoints", name(g), name(f)),
                        });
                    }
                }
            }
        }
    }
    if !issues.is_empty() {
        return ValidationReport { issues };
    }
    for f in 0..n {
        let a = &c.arrows[f];
        if c.comp(f, c.ids[a.src]) != f || c.comp(c.ids[a.tgt], f) != f {
            issues.push(Issue::Structure { detail: format!("unit law fails at {}", name(f)) });
        }
    }
    let mut into = vec![Vec::new(); c.objects.len()];
    for (k, a) in c.arrows.iter().enumerate() {
        into[a.tgt].push(k);
    }
    let assoc: Vec<Issue> = (0..n)
        .into_par_iter()
        .flat_map_iter(|h| {
            let mut out = Vec::new();
            for &g in &into[c.arrows[h].src] {
                for &f in &into[c.arrows[g].src] {
                    let lhs = c.comp(c.comp(h, g), f);
                    let rhs = c.comp(h, c.comp(g, f));
                    if lhs != rhs {
                        out.push(Issue::Structure {
                            detail: format!("associativity fails at ({}, {}, {})", name(h), name(g), name(f)),
                        });
                    }
                }
            }
            out
        })
        .collect();
    issues.extend(assoc);
    ValidationReport { issues }
}

/// A functor given by its object and arrow maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorData {
    pub src: Arc<FiniteCategory>,
    pub tgt: Arc<FiniteCategory>,
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl FunctorData {
    pub fn new(src: Arc<FiniteCategory>, tgt: Arc<FiniteCategory>, objects: Vec<usize>, arrows: Vec<usize>) -> Result<Self> {
        let f = FunctorData { src, tgt, objects, arrows };
        validate_functor(&f).into_result("functor")?;
        Ok(f)
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        FunctorData { objects: (0..c.object_count()).collect(), arrows: (0..c.arrow_count()).collect(), src: c.clone(), tgt: c }
    }

    /// The constant functor at an object.
    pub fn constant(src: Arc<FiniteCategory>, tgt: Arc<FiniteCategory>, object: usize) -> Self {
        let id = tgt.id(object);
        FunctorData { objects: vec![object; src.object_count()], arrows: vec![id; src.arrow_count()], src, tgt }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FunctorData) -> Result<FunctorData> {
        if inner.tgt.as_ref() != self.src.as_ref() {
            return Err(CoreError::Mismatch("functors are not composable".into()));
        }
        Ok(FunctorData {
            src: inner.src.clone(),
            tgt: self.tgt.clone(),
            objects: inner.objects.iter().map(|&o| self.objects[o]).collect(),
            arrows: inner.arrows.iter().map(|&a| self.arrows[a]).collect(),
        })
    }

    /// Whether the functor is bijective on objects and on arrows.
    pub fn is_isomorphism(&self) -> bool {
        let bij = |map: &[usize], n: usize| {
            let mut seen = vec![false; n];
            map.len() == n && map.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        };
        bij(&self.objects, self.tgt.object_count()) && bij(&self.arrows, self.tgt.arrow_count())
    }

    /// The fiber over an object `a`: objects over `a` and arrows over `id_a`.
    pub fn fiber(&self, a: usize) -> Result<(FiniteCategory, Vec<usize>, Vec<usize>)> {
        let objs: Vec<usize> = (0..self.src.object_count()).filter(|&o| self.objects[o] == a).collect();
        let id = self.tgt.id(a);
        let arrs: Vec<usize> = (0..self.src.arrow_count()).filter(|&f| self.arrows[f] == id).collect();
        self.src.subcategory(&objs, &arrs)
    }
}

pub fn validate_functor(f: &FunctorData) -> ValidationReport {
    let mut issues = Vec::new();
    let (c, d) = (&f.src, &f.tgt);
    if f.objects.len() != c.object_count() || f.arrows.len() != c.arrow_count() {
        issues.push(Issue::Structure { detail: "functor tables have the wrong length".into() });
        return ValidationReport { issues };
    }
    if f.objects.iter().any(|&o| o >= d.object_count()) || f.arrows.iter().any(|&a| a >= d.arrow_count()) {
        issues.push(Issue::Structure { detail: "functor refers to missing objects or arrows".into() });
        return ValidationReport { issues };
    }
    for (k, a) in c.arrows().iter().enumerate() {
        let img = d.arrow(f.arrows[k]);
        if img.src != f.objects[a.src] || img.tgt != f.objects[a.tgt] {
            issues.push(Issue::Structure { detail: format!("image of {} has the wrong endpoints", a.name) });
        }
    }
    if !issues.is_empty() {
        return ValidationReport { issues };
    }
    for (o, &i) in c.ids().iter().enumerate() {
        if f.arrows[i] != d.id(f.objects[o]) {
            issues.push(Issue::Structure { detail: format!("identity of {} is not preserved", c.objects()[o]) });
        }
    }
    for (g, h, gh) in c.composites() {
        if d.comp(f.arrows[g], f.arrows[h]) != f.arrows[gh] {
            issues.push(Issue::Structure {
                detail: format!("composite {} ∘ {} is not preserved", c.arrow(g).name, c.arrow(h).name),
            });
        }
    }
    ValidationReport { issues }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terminal_is_valid() {
        assert!(validate_category(&FiniteCategory::terminal()).is_valid());
    }

    #[test]
    fn broken_associativity_is_reported() {
        // free category on a → b → c → d with one composite redirected
        let objects: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let edges = vec![("f".to_string(), 0, 1), ("g".to_string(), 1, 2), ("h".to_string(), 2, 3)];
        let free = FiniteCategory::free(objects.clone(), &edges).unwrap();
        let mut composites = free.composites();
        let (f, g, h) = (free.arrow_index("f").unwrap(), free.arrow_index("g").unwrap(), free.arrow_index("h").unwrap());
        let hg = free.comp(h, g);
        let gf = free.comp(g, f);
        // add a second arrow a → d and send (h∘g)∘f there
        let mut arrows = free.arrows().to_vec();
        arrows.push(Arrow { name: "k".into(), src: 0, tgt: 3 });
        let k = arrows.len() - 1;
        for entry in composites.iter_mut() {
            if entry.0 == hg && entry.1 == f {
                entry.2 = k;
            }
        }
        let a_id = free.id(0);
        let d_id = free.id(3);
        composites.push((k, a_id, k));
        composites.push((d_id, k, k));
        let broken = FiniteCategory::from_parts(objects, arrows, free.ids().to_vec(), &composites).unwrap();
        let report = validate_category(&broken);
        let details: Vec<String> = report.issues.iter().map(|i| i.to_string()).collect();
        assert_eq!(details, vec![format!("associativity fails at (h, g, f)")]);
        assert_eq!(broken.comp(h, gf), free.comp(h, gf));
    }

    #[test]
    fn ordinals_and_free_categories() {
        let c = FiniteCategory::ordinal(2);
        assert_eq!((c.object_count(), c.arrow_count()), (3, 6));
        let objects: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let edges = vec![("p".to_string(), 0, 1), ("q".to_string(), 0, 1), ("r".to_string(), 1, 2)];
        let free = FiniteCategory::free(objects, &edges).unwrap();
        assert_eq!(free.hom(0, 2).len(), 2);
        assert!(!free.has_cycles());
    }

    #[test]
    fn functor_checks() {
        let c = Arc::new(FiniteCategory::ordinal(1));
        let t = Arc::new(FiniteCategory::terminal());
        let to_t = FunctorData::constant(c.clone(), t, 0);
        assert!(validate_functor(&to_t).is_valid());
        let swap = FunctorData { src: c.clone(), tgt: c.clone(), objects: vec![1, 0], arrows: vec![2, 1, 0] };
        assert!(!validate_functor(&swap).is_valid());
        assert!(FunctorData::identity(c).is_isomorphism());
    }
}
