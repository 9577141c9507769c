//! Seeded random instances. Every generator is valid by construction; the
//! same configuration always yields the same value.

use std::collections::HashMap;
use std::sync::Arc;

use corrkit_core::cat::{validate_diagram, CatDiagram, Element, FiniteCategory, FunctorData, Profunctor};
use corrkit_core::correspondences::Correspondence;
use corrkit_core::simplicial::{Cell, FiniteSimplicialSet, OrderedComplex, SimplexRef, SimplicialMap};
use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Chooses between posets and free categories per instance.
    Mixed,
    Poset,
    Free,
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mixed" => Ok(Strategy::Mixed),
            "poset" => Ok(Strategy::Poset),
            "free" => Ok(Strategy::Free),
            _ => Err(format!("unknown strategy {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub max_dim: usize,
    pub max_cells: usize,
    pub max_objects: usize,
    pub max_arrows: usize,
    pub strategy: Strategy,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 0, max_dim: 3, max_cells: 25, max_objects: 8, max_arrows: 40, strategy: Strategy::Mixed }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.max_dim > 3 {
            return Err(format!("max_dim is {} but at most 3 is supported", self.max_dim));
        }
        if self.max_cells == 0 || self.max_objects == 0 || self.max_arrows < self.max_objects {
            return Err("size bounds must be positive, with max_arrows >= max_objects".into());
        }
        Ok(())
    }

    /// The configuration for case `index` of a suite: same bounds, seed drawn
    /// from an independent stream.
    pub fn case(&self, index: u64) -> GenConfig {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(index);
        GenConfig { seed: r.next_u64(), ..self.clone() }
    }
}

pub fn gen_sset(cfg: &GenConfig) -> FiniteSimplicialSet {
    Generator::new(cfg).sset()
}

pub fn gen_map_over(cfg: &GenConfig, a: &Arc<FiniteSimplicialSet>) -> SimplicialMap {
    Generator::new(cfg).map_over(a)
}

pub fn gen_category(cfg: &GenConfig) -> FiniteCategory {
    Generator::new(cfg).category()
}

pub fn gen_functor_over(cfg: &GenConfig, a: &Arc<FiniteCategory>) -> FunctorData {
    Generator::new(cfg).functor_over(a)
}

pub fn gen_cat_diagram(cfg: &GenConfig, a: &Arc<FiniteCategory>) -> CatDiagram {
    Generator::new(cfg).cat_diagram(a)
}

pub fn gen_profunctor(cfg: &GenConfig, c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>) -> Profunctor {
    Generator::new(cfg).profunctor(c, d)
}

/// A stateful generator; successive calls draw from one stream.
pub struct Generator {
    pub cfg: GenConfig,
    rng: ChaCha8Rng,
}

const ATTEMPTS: usize = 200;

fn apply(images: &[SimplexRef], s: &SimplexRef) -> SimplexRef {
    images[s.cell.0].degenerate(s.word)
}

fn is_thin(c: &FiniteCategory) -> bool {
    (0..c.object_count()).all(|x| (0..c.object_count()).all(|y| c.hom(x, y).len() <= 1))
}

fn transitive_closure(le: &mut [Vec<bool>]) {
    let n = le.len();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|k| format!("{prefix}{k}")).collect()
}

impl Generator {
    pub fn new(cfg: &GenConfig) -> Self {
        Generator { cfg: cfg.clone(), rng: ChaCha8Rng::seed_from_u64(cfg.seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Dimensions of new cells, biased toward small ones.
    fn dim(&mut self, cap: usize) -> usize {
        let weights = [4u32, 3, 2];
        let cap = cap.clamp(1, 3);
        let total: u32 = weights[..cap].iter().sum();
        let mut t = self.rng.gen_range(0..total);
        for (d, &w) in weights[..cap].iter().enumerate() {
            if t < w {
                return d + 1;
            }
            t -= w;
        }
        cap
    }

    /// Shuffles candidates, mostly keeping nondegenerate ones in front.
    fn order(&mut self, mut v: Vec<SimplexRef>) -> Vec<SimplexRef> {
        v.shuffle(&mut self.rng);
        if self.rng.gen_bool(0.85) {
            v.sort_by_key(|s| !s.is_nondegenerate());
        }
        v
    }

    /// Attaches cells to a growing complex, optionally over a base. Faces of
    /// a new `d`-cell are chosen one at a time among `(d-1)`-simplices that
    /// satisfy `d_a F_i = d_{i-1} F_a` for `a < i` and lie over the matching
    /// face of the chosen image.
    fn grow(&mut self, base: Option<&FiniteSimplicialSet>) -> (Vec<Cell>, Vec<SimplexRef>) {
        let max_cells = self.cfg.max_cells;
        let mut cells: Vec<Cell> = Vec::new();
        let mut images: Vec<SimplexRef> = Vec::new();
        let vertex = |k: usize| Cell { dim: 0, faces: vec![], label: Some(format!("x{k}")) };
        match base {
            Some(a) => {
                for v in a.cells_of_dim(0) {
                    let copies = [0, 1, 1, 1, 1, 1, 2, 2, 2, 1][self.rng.gen_range(0..10)];
                    for _ in 0..copies {
                        if cells.len() < max_cells {
                            cells.push(vertex(cells.len()));
                            images.push(SimplexRef::cell(v));
                        }
                    }
                }
                if cells.is_empty() {
                    if let Some(&v) = a.cells_of_dim(0).first() {
                        cells.push(vertex(0));
                        images.push(SimplexRef::cell(v));
                    }
                }
            }
            None => {
                let n = self.rng.gen_range(1..=max_cells.min(3));
                cells.extend((0..n).map(vertex));
            }
        }
        if cells.is_empty() {
            return (cells, images);
        }
        let target = self.rng.gen_range(cells.len()..=max_cells.max(cells.len()));
        let mut attempts = 0;
        while cells.len() < target && attempts < ATTEMPTS && self.cfg.max_dim > 0 {
            attempts += 1;
            let x = FiniteSimplicialSet::new(cells.clone()).expect("generated cells are well formed");
            let d = self.dim(self.cfg.max_dim.min(x.dim().unwrap_or(0) + 1));
            let tau = match base {
                Some(a) => {
                    let pool = self.order(a.enumerate_simplices(d));
                    let nondeg: Vec<_> = pool.iter().filter(|s| s.is_nondegenerate()).copied().collect();
                    let pick = if !nondeg.is_empty() && self.rng.gen_bool(0.5) { nondeg } else { pool };
                    match pick.choose(&mut self.rng) {
                        Some(t) => Some(*t),
                        None => continue,
                    }
                }
                None => None,
            };
            let candidates = x.enumerate_simplices(d - 1);
            let mut faces: Vec<SimplexRef> = Vec::new();
            let mut budget = 2000usize;
            let found = self.choose_faces(&x, base, tau, images.as_slice(), &candidates, d, &mut faces, &mut budget);
            if found {
                let k = cells.len();
                cells.push(Cell { dim: d, faces, label: Some(format!("x{k}")) });
                if let Some(t) = tau {
                    images.push(t);
                }
            }
        }
        (cells, images)
    }

    #[allow(clippy::too_many_arguments)]
    fn choose_faces(
        &mut self,
        x: &FiniteSimplicialSet,
        base: Option<&FiniteSimplicialSet>,
        tau: Option<SimplexRef>,
        images: &[SimplexRef],
        candidates: &[SimplexRef],
        d: usize,
        faces: &mut Vec<SimplexRef>,
        budget: &mut usize,
    ) -> bool {
        let i = faces.len();
        if i == d + 1 {
            return true;
        }
        let over = match (base, tau) {
            (Some(a), Some(t)) => Some(a.face(&t, i)),
            _ => None,
        };
        let fitting: Vec<SimplexRef> = candidates
            .iter()
            .filter(|s| over.is_none_or(|o| apply(images, s) == o))
            .filter(|s| d < 2 || (0..i).all(|a| x.face(s, a) == x.face(&faces[a], i - 1)))
            .copied()
            .collect();
        for s in self.order(fitting) {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            faces.push(s);
            if self.choose_faces(x, base, tau, images, candidates, d, faces, budget) {
                return true;
            }
            faces.pop();
        }
        false
    }

    pub fn sset(&mut self) -> FiniteSimplicialSet {
        let (cells, _) = self.grow(None);
        FiniteSimplicialSet::new(cells).expect("generated cells are well formed")
    }

    /// A map into `a`, built cell by cell: each new cell picks its image
    /// first and then faces lying over the faces of that image.
    pub fn map_over(&mut self, a: &Arc<FiniteSimplicialSet>) -> SimplicialMap {
        let (cells, images) = self.grow(Some(a));
        let x = Arc::new(FiniteSimplicialSet::new(cells).expect("generated cells are well formed"));
        SimplicialMap::checked(x, a.clone(), images).expect("generated maps commute with faces")
    }

    pub fn correspondence(&mut self, n: usize) -> Correspondence {
        let delta = OrderedComplex::simplex(n).set;
        let f = self.map_over(&delta);
        Correspondence::new(f.source().clone(), n, f).expect("generated over a standard simplex")
    }

    fn poset_relation(&mut self, n: usize, p: f64) -> Vec<Vec<bool>> {
        let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for i in 0..n {
            for j in i + 1..n {
                if self.rng.gen_bool(p) {
                    le[i][j] = true;
                }
            }
        }
        transitive_closure(&mut le);
        le
    }

    pub fn poset(&mut self, max_objects: usize) -> FiniteCategory {
        let n = self.rng.gen_range(max_objects.div_ceil(2)..=max_objects);
        let mut p = 0.5;
        for _ in 0..ATTEMPTS {
            let le = self.poset_relation(n, p);
            let c = FiniteCategory::poset(names("o", n), &le).expect("closure of an acyclic relation");
            if c.arrow_count() <= self.cfg.max_arrows {
                return c;
            }
            p *= 0.8;
        }
        FiniteCategory::poset(names("o", n), &self.poset_relation(n, 0.0)).expect("discrete poset")
    }

    /// The free category on a random acyclic graph, parallel edges allowed.
    pub fn free(&mut self, max_objects: usize) -> FiniteCategory {
        let n = self.rng.gen_range(max_objects.div_ceil(2)..=max_objects);
        for _ in 0..ATTEMPTS {
            let m = if n > 1 { self.rng.gen_range(n - 1..=n + 1) } else { 0 };
            let edges: Vec<(String, usize, usize)> = (0..m)
                .map(|k| {
                    let i = self.rng.gen_range(0..n - 1);
                    let j = self.rng.gen_range(i + 1..n);
                    (format!("e{k}"), i, j)
                })
                .collect();
            let c = FiniteCategory::free(names("o", n), &edges).expect("acyclic graph");
            if c.arrow_count() <= self.cfg.max_arrows {
                return c;
            }
        }
        FiniteCategory::free(names("o", n), &[]).expect("discrete category")
    }

    fn use_poset(&mut self) -> bool {
        match self.cfg.strategy {
            Strategy::Poset => true,
            Strategy::Free => false,
            Strategy::Mixed => self.rng.gen_bool(0.5),
        }
    }

    pub fn category(&mut self) -> FiniteCategory {
        let max = self.cfg.max_objects;
        if self.use_poset() {
            self.poset(max)
        } else {
            self.free(max)
        }
    }

    /// A functor into `a` whose source is a poset (when `a` is thin) or a
    /// free category on a graph with edges sent to arrows of `a`.
    pub fn functor_over(&mut self, a: &Arc<FiniteCategory>) -> FunctorData {
        let n = self.rng.gen_range(self.cfg.max_objects.div_ceil(2)..=self.cfg.max_objects);
        let objects: Vec<usize> = (0..n).map(|_| self.rng.gen_range(0..a.object_count())).collect();
        let thin = is_thin(a);
        for _ in 0..ATTEMPTS {
            let f = if thin && self.use_poset() { self.poset_over(a, &objects) } else { self.free_over(a, &objects) };
            if f.src.arrow_count() <= self.cfg.max_arrows {
                return f;
            }
        }
        let src = Arc::new(FiniteCategory::free(names("x", n), &[]).expect("discrete category"));
        let arrows = objects.iter().map(|&o| a.id(o)).collect();
        FunctorData::new(src, a.clone(), objects, arrows).expect("discrete functor")
    }

    fn poset_over(&mut self, a: &Arc<FiniteCategory>, objects: &[usize]) -> FunctorData {
        let n = objects.len();
        let mut le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for i in 0..n {
            for j in i + 1..n {
                if !a.hom(objects[i], objects[j]).is_empty() && self.rng.gen_bool(0.6) {
                    le[i][j] = true;
                }
            }
        }
        transitive_closure(&mut le);
        let src = Arc::new(FiniteCategory::poset(names("x", n), &le).expect("closure of an acyclic relation"));
        let arrows = src.arrows().iter().map(|r| a.hom(objects[r.src], objects[r.tgt])[0]).collect();
        FunctorData::new(src, a.clone(), objects.to_vec(), arrows).expect("monotone maps of posets are functors")
    }

    fn free_over(&mut self, a: &Arc<FiniteCategory>, objects: &[usize]) -> FunctorData {
        let n = objects.len();
        let m = if n > 1 { self.rng.gen_range(n - 1..=n + 2) } else { 0 };
        let mut edges = Vec::new();
        let mut edge_images = HashMap::new();
        for _ in 0..m {
            let i = self.rng.gen_range(0..n);
            let j = self.rng.gen_range(0..n);
            let (i, j) = (i.min(j), i.max(j));
            let hom = a.hom(objects[i], objects[j]);
            if i == j || hom.is_empty() {
                continue;
            }
            let name = format!("e{}", edges.len());
            edge_images.insert(name.clone(), *hom.choose(&mut self.rng).unwrap());
            edges.push((name, i, j));
        }
        let src = Arc::new(FiniteCategory::free(names("x", n), &edges).expect("acyclic graph"));
        // arrow names spell paths as `e2.e1`, composites read right to left
        let arrows = src
            .arrows()
            .iter()
            .map(|r| {
                if r.src == r.tgt && r.name.starts_with("id_") {
                    return a.id(objects[r.src]);
                }
                r.name.split('.').map(|e| edge_images[e]).reduce(|g, f| a.comp(g, f)).unwrap()
            })
            .collect();
        FunctorData::new(src, a.clone(), objects.to_vec(), arrows).expect("free categories have no relations")
    }

    /// A random monotone map between posets whose object order is a linear
    /// extension, or `None` if a greedy choice gets stuck.
    fn monotone(&mut self, p: &Arc<FiniteCategory>, q: &Arc<FiniteCategory>) -> Option<FunctorData> {
        let le = |c: &FiniteCategory, x: usize, y: usize| !c.hom(x, y).is_empty();
        let mut objects: Vec<usize> = Vec::new();
        for x in 0..p.object_count() {
            let lower: Vec<usize> = (0..x).filter(|&w| le(p, w, x)).map(|w| objects[w]).collect();
            let allowed: Vec<usize> = (0..q.object_count()).filter(|&y| lower.iter().all(|&l| le(q, l, y))).collect();
            objects.push(*allowed.choose(&mut self.rng)?);
        }
        let arrows = p.arrows().iter().map(|r| q.hom(objects[r.src], objects[r.tgt])[0]).collect();
        FunctorData::new(p.clone(), q.clone(), objects, arrows).ok()
    }

    /// A strict diagram of small posets over `a`: indecomposable arrows get
    /// random monotone maps, composites are composed. Falls back to constant
    /// functors if `a` imposes relations the random choice misses.
    pub fn cat_diagram(&mut self, a: &Arc<FiniteCategory>) -> CatDiagram {
        let fiber_size = self.cfg.max_objects.min(3);
        let fibers: Vec<Arc<FiniteCategory>> = (0..a.object_count()).map(|_| Arc::new(self.poset(fiber_size))).collect();
        let mut splits: HashMap<usize, (usize, usize)> = HashMap::new();
        for (g, f, gf) in a.composites() {
            if !a.is_identity(g) && !a.is_identity(f) {
                splits.entry(gf).or_insert((g, f));
            }
        }
        for _ in 0..8 {
            let mut functors: Vec<Option<FunctorData>> = vec![None; a.arrow_count()];
            let mut ok = true;
            for k in 0..a.arrow_count() {
                ok &= self.diagram_arrow(a, &fibers, &splits, &mut functors, k);
            }
            if ok {
                let d = CatDiagram {
                    base: a.clone(),
                    fibers: fibers.clone(),
                    functors: functors.into_iter().map(Option::unwrap).collect(),
                };
                if validate_diagram(&d).is_valid() {
                    return d;
                }
            }
        }
        // constant at a chosen object of each target fiber; strict because
        // generated bases have no nontrivial endomorphisms
        let anchors: Vec<usize> = fibers.iter().map(|c| self.rng.gen_range(0..c.object_count())).collect();
        let functors = a
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, r)| {
                if a.is_identity(k) {
                    FunctorData::identity(fibers[r.src].clone())
                } else {
                    FunctorData::constant(fibers[r.src].clone(), fibers[r.tgt].clone(), anchors[r.tgt])
                }
            })
            .collect();
        CatDiagram { base: a.clone(), fibers, functors }
    }

    fn diagram_arrow(
        &mut self,
        a: &FiniteCategory,
        fibers: &[Arc<FiniteCategory>],
        splits: &HashMap<usize, (usize, usize)>,
        functors: &mut Vec<Option<FunctorData>>,
        k: usize,
    ) -> bool {
        if functors[k].is_some() {
            return true;
        }
        let r = a.arrow(k);
        let f = if a.is_identity(k) {
            Some(FunctorData::identity(fibers[r.src].clone()))
        } else if let Some(&(g, h)) = splits.get(&k) {
            if !self.diagram_arrow(a, fibers, splits, functors, g) || !self.diagram_arrow(a, fibers, splits, functors, h) {
                return false;
            }
            functors[g].as_ref().unwrap().compose(functors[h].as_ref().unwrap()).ok()
        } else {
            self.monotone(&fibers[r.src], &fibers[r.tgt])
        };
        let done = f.is_some();
        functors[k] = f;
        done
    }

    /// A profunctor `c -|-> d`: a sum of representables
    /// `d(d_k, -) × c(-, c_k)`, or for thin categories sometimes an
    /// up-closed relation.
    pub fn profunctor(&mut self, c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>) -> Profunctor {
        if is_thin(c) && is_thin(d) && self.rng.gen_bool(0.3) {
            return self.relation(c, d);
        }
        let summands = self.rng.gen_range(1..=2);
        let mut elements = Vec::new();
        let mut index = HashMap::new();
        for k in 0..summands {
            let (ck, dk) = (self.rng.gen_range(0..c.object_count()), self.rng.gen_range(0..d.object_count()));
            for g in (0..d.arrow_count()).filter(|&g| d.arrow(g).src == dk) {
                for f in (0..c.arrow_count()).filter(|&f| c.arrow(f).tgt == ck) {
                    index.insert((k, g, f), elements.len());
                    let name = format!("{k}:{}|{}", d.arrow(g).name, c.arrow(f).name);
                    elements.push(Element { name, src: c.arrow(f).src, tgt: d.arrow(g).tgt });
                }
            }
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (&(k, g, f), &x) in &index {
            for h in (0..d.arrow_count()).filter(|&h| d.arrow(h).src == d.arrow(g).tgt) {
                left.push((h, x, index[&(k, d.comp(h, g), f)]));
            }
            for e in (0..c.arrow_count()).filter(|&e| c.arrow(e).tgt == c.arrow(f).src) {
                right.push((x, e, index[&(k, g, c.comp(f, e))]));
            }
        }
        Profunctor::new(c.clone(), d.clone(), elements, &left, &right).expect("sums of representables are profunctors")
    }

    fn relation(&mut self, c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>) -> Profunctor {
        let (n, m) = (c.object_count(), d.object_count());
        let mut rel = vec![vec![false; m]; n];
        for _ in 0..self.rng.gen_range(1..=2) {
            let (x, y) = (self.rng.gen_range(0..n), self.rng.gen_range(0..m));
            for (x2, row) in rel.iter_mut().enumerate() {
                for (y2, cell) in row.iter_mut().enumerate() {
                    if !c.hom(x2, x).is_empty() && !d.hom(y, y2).is_empty() {
                        *cell = true;
                    }
                }
            }
        }
        let mut elements = Vec::new();
        let mut at = HashMap::new();
        for (x, row) in rel.iter().enumerate() {
            for (y, &r) in row.iter().enumerate() {
                if r {
                    at.insert((x, y), elements.len());
                    elements.push(Element { name: format!("{}~{}", c.objects()[x], d.objects()[y]), src: x, tgt: y });
                }
            }
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (&(x, y), &e) in &at {
            for h in (0..d.arrow_count()).filter(|&h| d.arrow(h).src == y) {
                left.push((h, e, at[&(x, d.arrow(h).tgt)]));
            }
            for f in (0..c.arrow_count()).filter(|&f| c.arrow(f).tgt == x) {
                right.push((e, f, at[&(c.arrow(f).src, y)]));
            }
        }
        Profunctor::new(c.clone(), d.clone(), elements, &left, &right).expect("up-closed relations are profunctors")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use corrkit_core::cat::{validate_category, validate_profunctor};
    use corrkit_core::simplicial::{validate_map, validate_sset};

    #[test]
    fn generated_values_validate() {
        for seed in 0..40 {
            let cfg = GenConfig { seed, ..GenConfig::default() };
            let mut g = Generator::new(&cfg);
            let x = g.sset();
            assert!(validate_sset(&x).is_valid(), "seed {seed}");
            let a = Arc::new(g.sset());
            let f = g.map_over(&a);
            assert!(validate_map(&f).is_valid(), "seed {seed}");
            let c = Arc::new(g.category());
            assert!(validate_category(&c).is_valid());
            let d = Arc::new(g.category());
            assert!(validate_profunctor(&g.profunctor(&c, &d)).is_valid());
            let _ = g.functor_over(&c);
            let _ = g.cat_diagram(&c);
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let cfg = GenConfig { seed: 7, ..GenConfig::default() };
        assert_eq!(gen_sset(&cfg), gen_sset(&cfg));
        assert_ne!(gen_sset(&cfg), gen_sset(&cfg.case(1)));
    }

    #[test]
    fn one_cell_is_a_point() {
        for seed in 0..20 {
            let x = gen_sset(&GenConfig { seed, max_cells: 1, ..GenConfig::default() });
            assert_eq!(x.cell_counts(), vec![1]);
        }
    }

    #[test]
    fn profunctors_between_points_are_sets() {
        let t = Arc::new(FiniteCategory::terminal());
        for seed in 0..10 {
            let u = gen_profunctor(&GenConfig { seed, ..GenConfig::default() }, &t, &t);
            assert!(!u.is_empty());
            assert!((0..u.len()).all(|x| u.act_left(0, x) == x && u.act_right(x, 0) == x));
        }
    }
}
