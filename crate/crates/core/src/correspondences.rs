//! Correspondences over standard simplices: fibers of maps, faces and
//! degeneracies by pullback, classifying diagrams and their double colimits.

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{CoreError, Result};
use crate::simplicial::{
    compare_into, delta_map_between, product, pullback, simplex_map, validate_map, Budget, Colimit, DeltaMap,
    FiniteSimplicialSet, IsoCheck, JointIndex, MapSearch, Operator, OrderedComplex, SSetDiagram, SimplexRef, SimplicialMap,
};

/// A simplicial set with a structure map to `Δ^n`.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub total: Arc<FiniteSimplicialSet>,
    pub n: usize,
    pub structure: SimplicialMap,
    delta: OrderedComplex,
}

impl Correspondence {
    pub fn new(total: Arc<FiniteSimplicialSet>, n: usize, structure: SimplicialMap) -> Result<Self> {
        let delta = OrderedComplex::simplex(n);
        if structure.target().as_ref() != delta.set.as_ref() {
            return Err(CoreError::InvalidMap(format!("structure map does not land in Δ^{n}")));
        }
        if structure.source().as_ref() != total.as_ref() {
            return Err(CoreError::InvalidMap("structure map does not start at the total space".into()));
        }
        if let Some(issue) = validate_map(&structure).issues.first() {
            return Err(CoreError::InvalidMap(issue.to_string()));
        }
        let structure = structure.with_target(delta.set.clone()).with_source(total.clone());
        Ok(Correspondence { total, n, structure, delta })
    }

    /// `Δ^n` over itself.
    pub fn simplex(n: usize) -> Self {
        let delta = OrderedComplex::simplex(n);
        let structure = SimplicialMap::identity(delta.set.clone());
        Correspondence { total: delta.set.clone(), n, structure, delta }
    }

    /// The cylinder `Y × Δ^n` over `Δ^n`.
    pub fn cylinder(y: &Arc<FiniteSimplicialSet>, n: usize) -> Self {
        let delta = OrderedComplex::simplex(n);
        let prod = product(y, &delta.set);
        Correspondence { total: prod.set.clone(), n, structure: prod.right, delta }
    }

    pub fn delta(&self) -> &OrderedComplex {
        &self.delta
    }

    /// The vertices of `Δ^n` under the vertices of a simplex of the total space.
    pub fn vertex_images(&self, x: &SimplexRef) -> Vec<usize> {
        self.delta.vertices_of(&self.structure.apply(x))
    }

    /// `X_i`, the fiber over the vertex `i`, with its inclusion.
    pub fn vertex_fiber(&self, i: usize) -> (Arc<FiniteSimplicialSet>, SimplicialMap) {
        let keep: Vec<_> =
            self.total.ids().filter(|&c| self.vertex_images(&SimplexRef::cell(c)).iter().all(|&v| v == i)).collect();
        self.total.subcomplex(keep)
    }
}

/// A correspondence built from a parent simplicial set, with its map to that
/// parent. Together with the structure map this map is jointly monic.
#[derive(Clone, Debug)]
pub struct Derived {
    pub corr: Correspondence,
    pub to_parent: SimplicialMap,
}

impl Derived {
    /// A correspondence regarded as derived from its own total space.
    pub fn root(corr: &Correspondence) -> Self {
        Derived { corr: corr.clone(), to_parent: SimplicialMap::identity(corr.total.clone()) }
    }

    pub fn face(&self, i: usize) -> Result<Derived> {
        let next = corr_face(&self.corr, i)?;
        self.then(next)
    }

    pub fn degeneracy(&self, i: usize) -> Result<Derived> {
        let next = corr_degeneracy(&self.corr, i)?;
        self.then(next)
    }

    fn then(&self, next: Derived) -> Result<Derived> {
        let to_parent = self.to_parent.compose(&next.to_parent)?;
        Ok(Derived { corr: next.corr, to_parent })
    }

    /// The canonical comparison `self -> other` over the common parent and
    /// over `Δ^n`, together with the verdict on whether it is invertible.
    pub fn compare(&self, other: &Derived) -> Result<(SimplicialMap, IsoCheck)> {
        if self.corr.n != other.corr.n {
            return Err(CoreError::Mismatch("correspondences of different dimensions".into()));
        }
        let index = JointIndex::from_pair(&other.to_parent, &other.corr.structure)?;
        let u = self.to_parent.with_target(other.to_parent.target().clone());
        let v = self.corr.structure.with_target(other.corr.structure.target().clone());
        let map = compare_into(&index, &u, &v, &other.corr.total)?;
        let iso = map.is_iso();
        Ok((map, iso))
    }
}

/// The fiber of `f : X -> A` over an `n`-simplex `σ`: the pullback along
/// `σ : Δ^n -> A`.
pub fn fiber(f: &SimplicialMap, sigma: &SimplexRef) -> Result<Derived> {
    let a = f.target();
    if sigma.cell.0 >= a.len() {
        return Err(CoreError::Mismatch(format!("simplex {sigma} is not in the base")));
    }
    let n = a.simplex_dim(sigma);
    let delta = OrderedComplex::simplex(n);
    let chi = simplex_map(a, sigma, &delta);
    let pb = pullback(f, &chi)?;
    let corr = Correspondence { total: pb.set.clone(), n, structure: pb.right.clone(), delta };
    Ok(Derived { corr, to_parent: pb.left })
}

/// `d_i X`: the pullback of `X` along `δ^i : Δ^{n-1} -> Δ^n`.
pub fn corr_face(x: &Correspondence, i: usize) -> Result<Derived> {
    if x.n == 0 || i > x.n {
        return Err(CoreError::Unsupported(format!("face d{i} of a {}-correspondence", x.n)));
    }
    let lower = OrderedComplex::simplex(x.n - 1);
    let delta_i = delta_map_between(&DeltaMap::coface(i, x.n), &lower, &x.delta);
    let pb = pullback(&x.structure, &delta_i)?;
    let corr = Correspondence { total: pb.set.clone(), n: x.n - 1, structure: pb.right.clone(), delta: lower };
    Ok(Derived { corr, to_parent: pb.left })
}

/// The map `ι_i = (s^i, χ_{>i}) : Δ^{n+1} -> Δ^n × Δ^1`.
fn iota(i: usize, n: usize, upper: &OrderedComplex, cyl: &crate::simplicial::Pullback) -> SimplicialMap {
    let base = OrderedComplex::simplex(n);
    let interval = OrderedComplex::simplex(1);
    let assignment = upper
        .set
        .ids()
        .map(|c| {
            let vs = upper.vertices_of(&SimplexRef::cell(c));
            let s: Vec<usize> = vs.iter().map(|&j| if j <= i { j } else { j - 1 }).collect();
            let chi: Vec<usize> = vs.iter().map(|&j| usize::from(j > i)).collect();
            cyl.lift(base.simplex_of(&s).unwrap(), interval.simplex_of(&chi).unwrap()).expect("ι_i lands in Δ^n × Δ^1")
        })
        .collect();
    SimplicialMap::new(upper.set.clone(), cyl.set.clone(), assignment).expect("ι_i")
}

/// `s_i X`: the pullback of `X × Δ^1 -> Δ^n × Δ^1` along `ι_i`.
pub fn corr_degeneracy(x: &Correspondence, i: usize) -> Result<Derived> {
    if i > x.n {
        return Err(CoreError::Unsupported(format!("degeneracy s{i} of a {}-correspondence", x.n)));
    }
    let interval = OrderedComplex::simplex(1);
    let upper = OrderedComplex::simplex(x.n + 1);
    let x_cyl = product(&x.total, &interval.set);
    let base_cyl = product(&x.delta.set, &interval.set);
    // p × id : X × Δ^1 -> Δ^n × Δ^1
    let p_times = compare_into(
        &base_cyl.index,
        &x.structure.compose(&x_cyl.left)?,
        &x_cyl.right.with_target(base_cyl.right.target().clone()),
        &base_cyl.set,
    )?;
    let iota_i = iota(i, x.n, &upper, &base_cyl);
    let pb = pullback(&p_times, &iota_i)?;
    let to_parent = x_cyl.left.compose(&pb.left)?;
    let corr = Correspondence { total: pb.set.clone(), n: x.n + 1, structure: pb.right.clone(), delta: upper };
    Ok(Derived { corr, to_parent })
}

/// The map to `Δ^m` determined by where vertices go; `None` when some cell
/// would not be sent monotonically.
fn map_by_vertices(
    set: &Arc<FiniteSimplicialSet>,
    vertex: impl Fn(crate::simplicial::CellId) -> usize,
    delta: &OrderedComplex,
) -> Option<SimplicialMap> {
    let assignment = set
        .ids()
        .map(|c| {
            let vs: Vec<usize> = set.vertices(&SimplexRef::cell(c)).into_iter().map(&vertex).collect();
            delta.simplex_of(&vs)
        })
        .collect::<Option<Vec<_>>>()?;
    SimplicialMap::new(set.clone(), delta.set.clone(), assignment).ok()
}

/// `X - X_i`: the cells of `X` with no vertex over `i`, as an
/// `(n-1)`-correspondence.
pub fn face_by_deletion(x: &Correspondence, i: usize) -> Result<Derived> {
    if x.n == 0 || i > x.n {
        return Err(CoreError::Unsupported(format!("face d{i} of a {}-correspondence", x.n)));
    }
    let keep: Vec<_> = x.total.ids().filter(|&c| !x.vertex_images(&SimplexRef::cell(c)).contains(&i)).collect();
    let (sub, incl) = x.total.subcomplex(keep);
    let lower = OrderedComplex::simplex(x.n - 1);
    let structure = map_by_vertices(
        &sub,
        |v| {
            let j = x.vertex_images(&incl.image_of_cell(v))[0];
            if j > i {
                j - 1
            } else {
                j
            }
        },
        &lower,
    )
    .ok_or_else(|| CoreError::Mismatch("deleted face is not over Δ^{n-1}".into()))?;
    let corr = Correspondence { total: sub, n: x.n - 1, structure, delta: lower };
    Ok(Derived { corr, to_parent: incl })
}

/// `X × Δ^1` with `(X_j, 1)` removed for `j < i` and `(X_j, 0)` removed for
/// `j > i`, as an `(n+1)`-correspondence.
pub fn degeneracy_by_deletion(x: &Correspondence, i: usize) -> Result<Derived> {
    if i > x.n {
        return Err(CoreError::Unsupported(format!("degeneracy s{i} of a {}-correspondence", x.n)));
    }
    let interval = OrderedComplex::simplex(1);
    let cyl = product(&x.total, &interval.set);
    let vertex_of = |v: crate::simplicial::CellId| {
        let j = x.vertex_images(&cyl.left.image_of_cell(v))[0];
        let e = cyl.right.image_of_cell(v).cell.0;
        (j, e)
    };
    let keep: Vec<_> = cyl
        .set
        .ids()
        .filter(|&c| {
            cyl.set.cell_vertices(c).iter().all(|&v| {
                let (j, e) = vertex_of(v);
                !((j < i && e == 1) || (j > i && e == 0))
            })
        })
        .collect();
    let (sub, incl) = cyl.set.subcomplex(keep);
    let upper = OrderedComplex::simplex(x.n + 1);
    let structure = map_by_vertices(
        &sub,
        |v| {
            let (j, e) = vertex_of(incl.image_of_cell(v).cell);
            match j.cmp(&i) {
                std::cmp::Ordering::Less => j,
                std::cmp::Ordering::Greater => j + 1,
                std::cmp::Ordering::Equal => i + e,
            }
        },
        &upper,
    )
    .ok_or_else(|| CoreError::Mismatch("deleted cylinder is not over Δ^{n+1}".into()))?;
    let to_parent = cyl.left.compose(&incl)?;
    let corr = Correspondence { total: sub, n: x.n + 1, structure, delta: upper };
    Ok(Derived { corr, to_parent })
}

/// One generating action of a diagram: `from` is `d_i` or `s_j` of `to`, and
/// `map` goes from the total space at `from` to the one at `to`, over the
/// corresponding coface or codegeneracy.
#[derive(Clone, Debug)]
pub struct Action {
    pub op: Operator,
    pub from: usize,
    pub to: usize,
    pub map: SimplicialMap,
}

impl Action {
    fn delta_map(&self, to_dim: usize) -> DeltaMap {
        match self.op {
            Operator::Face(i) => DeltaMap::coface(i, to_dim),
            Operator::Degeneracy(j) => DeltaMap::codegeneracy(j, to_dim),
        }
    }
}

/// A diagram of correspondences indexed by the simplices of a base up to a
/// truncation level.
#[derive(Clone, Debug)]
pub struct CorrDiagram {
    pub base: Arc<FiniteSimplicialSet>,
    pub level: usize,
    pub entries: Vec<(SimplexRef, Correspondence)>,
    pub actions: Vec<Action>,
}

/// Simplices of `a` of dimension at most `level`, by dimension.
fn simplices_up_to(a: &FiniteSimplicialSet, level: usize) -> Vec<SimplexRef> {
    (0..=level).flat_map(|m| a.enumerate_simplices(m)).collect()
}

/// The generating actions between the given simplices of `a`.
fn generating_arrows(a: &FiniteSimplicialSet, simplices: &[SimplexRef]) -> Vec<(Operator, usize, usize)> {
    let position: HashMap<SimplexRef, usize> = simplices.iter().enumerate().map(|(k, s)| (*s, k)).collect();
    let mut out = Vec::new();
    for (to, s) in simplices.iter().enumerate() {
        let m = a.simplex_dim(s);
        if m > 0 {
            for i in 0..=m {
                out.push((Operator::Face(i), position[&a.face(s, i)], to));
            }
        }
        for j in 0..=m {
            if let Some(&from) = position.get(&a.degeneracy(s, j)) {
                out.push((Operator::Degeneracy(j), from, to));
            }
        }
    }
    out
}

impl CorrDiagram {
    pub fn position(&self, sigma: &SimplexRef) -> Option<usize> {
        self.entries.iter().position(|(s, _)| s == sigma)
    }

    /// Checks the action squares and every relation between generators of
    /// length at most two (which covers the simplicial identities, including
    /// `d_i s_i = d_{i+1} s_i = id`).
    pub fn validate(&self) -> Result<()> {
        for (k, (s, corr)) in self.entries.iter().enumerate() {
            if self.base.simplex_dim(s) != corr.n {
                return Err(CoreError::NotFunctorial(format!("entry {k} has the wrong dimension")));
            }
        }
        let mut arrows: Vec<(usize, usize, DeltaMap, SimplicialMap)> = Vec::new();
        for act in &self.actions {
            let (from, to) = (&self.entries[act.from], &self.entries[act.to]);
            let expected = match act.op {
                Operator::Face(i) => self.base.face(&to.0, i),
                Operator::Degeneracy(j) => self.base.degeneracy(&to.0, j),
            };
            if expected != from.0 {
                return Err(CoreError::NotFunctorial(format!("action {} does not relate its simplices", act.op)));
            }
            if act.map.source().as_ref() != from.1.total.as_ref() || act.map.target().as_ref() != to.1.total.as_ref() {
                return Err(CoreError::NotFunctorial(format!("action {} has the wrong endpoints", act.op)));
            }
            if let Some(issue) = validate_map(&act.map).issues.first() {
                return Err(CoreError::NotFunctorial(format!("action {}: {issue}", act.op)));
            }
            let theta = act.delta_map(to.1.n);
            let over = delta_map_between(&theta, from.1.delta(), to.1.delta());
            let lhs = to.1.structure.compose(&act.map.with_target(to.1.total.clone()))?;
            let rhs = over.compose(&from.1.structure.with_target(over.source().clone()))?;
            if lhs.assignment() != rhs.assignment() {
                return Err(CoreError::NotFunctorial(format!("square of action {} does not commute", act.op)));
            }
            arrows.push((act.from, act.to, theta, act.map.clone()));
        }
        let mut paths: Vec<(usize, usize, DeltaMap, Vec<crate::simplicial::SimplexRef>)> = Vec::new();
        for (k, (_, corr)) in self.entries.iter().enumerate() {
            paths.push((k, k, DeltaMap::identity(corr.n), SimplicialMap::identity(corr.total.clone()).assignment().to_vec()));
        }
        for (f, t, theta, map) in &arrows {
            paths.push((*f, *t, theta.clone(), map.assignment().to_vec()));
        }
        let mut outgoing: HashMap<usize, Vec<usize>> = HashMap::new();
        for (k, a) in arrows.iter().enumerate() {
            outgoing.entry(a.0).or_default().push(k);
        }
        for first in &arrows {
            for &k in outgoing.get(&first.1).into_iter().flatten() {
                let second = &arrows[k];
                let theta = second.2.compose(&first.2);
                let map = second.3.compose(&first.3.with_target(second.3.source().clone()))?;
                paths.push((first.0, second.1, theta, map.assignment().to_vec()));
            }
        }
        let mut seen: HashMap<(usize, usize, DeltaMap), Vec<crate::simplicial::SimplexRef>> = HashMap::new();
        for (f, t, theta, assignment) in paths {
            match seen.get(&(f, t, theta.clone())) {
                Some(prev) if *prev != assignment => {
                    return Err(CoreError::NotFunctorial(format!(
                        "two composites over {theta} from entry {f} to entry {t} differ"
                    )));
                }
                Some(_) => {}
                None => {
                    seen.insert((f, t, theta), assignment);
                }
            }
        }
        Ok(())
    }
}

/// The classifying diagram `σ ↦ f^{-1}(σ)` of `f : X -> A`, with the
/// inclusion of every fiber into `X`.
#[derive(Clone, Debug)]
pub struct Classified {
    pub diagram: CorrDiagram,
    pub inclusions: Vec<SimplicialMap>,
}

/// Default truncation level: one above the dimension of the base.
pub fn default_level(a: &FiniteSimplicialSet) -> usize {
    a.dim().map_or(0, |d| d + 1)
}

pub fn classifying_diagram(f: &SimplicialMap, level: usize) -> Result<Classified> {
    let a = f.target();
    let simplices = simplices_up_to(a, level);
    let fibers: Vec<Derived> = simplices.par_iter().map(|s| fiber(f, s)).collect::<Result<Vec<_>>>()?;
    let pullbacks: Vec<crate::simplicial::Pullback> = fibers
        .iter()
        .map(|d| JointIndex::from_pair(&d.to_parent, &d.corr.structure).map(|index| (d, index)))
        .map(|r| {
            r.map(|(d, index)| crate::simplicial::Pullback {
                set: d.corr.total.clone(),
                left: d.to_parent.clone(),
                right: d.corr.structure.clone(),
                index,
                bound: 0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut actions = Vec::new();
    for (op, from, to) in generating_arrows(a, &simplices) {
        let (src, tgt) = (&fibers[from], &fibers[to]);
        let theta = match op {
            Operator::Face(i) => DeltaMap::coface(i, tgt.corr.n),
            Operator::Degeneracy(j) => DeltaMap::codegeneracy(j, tgt.corr.n),
        };
        let over = delta_map_between(&theta, src.corr.delta(), tgt.corr.delta());
        let v = over.compose(&src.corr.structure.with_target(over.source().clone()))?;
        let map = pullbacks[to].mediate(&src.to_parent, &v.with_target(tgt.corr.structure.target().clone()))?;
        actions.push(Action { op, from, to, map });
    }
    let inclusions = fibers.iter().map(|d| d.to_parent.clone()).collect();
    let entries = simplices.into_iter().zip(fibers.into_iter().map(|d| d.corr)).collect();
    Ok(Classified { diagram: CorrDiagram { base: a.clone(), level, entries, actions }, inclusions })
}

/// A cocone from a diagram of correspondences to a simplicial set, with
/// components `(leg, structure)` into `target × Δ^{dim σ}`.
#[derive(Clone, Debug)]
pub struct VerticalTransformationS {
    pub target: Arc<FiniteSimplicialSet>,
    pub components: Vec<(SimplicialMap, SimplicialMap)>,
}

#[derive(Clone, Debug)]
pub struct DoubleColimit {
    pub set: Arc<FiniteSimplicialSet>,
    pub transformation: VerticalTransformationS,
    pub colimit: Colimit,
    pub level: usize,
}

/// The cotabulator of a correspondence: its total space, with the cocone
/// `(id, structure)`.
pub fn cotabulator(x: &Correspondence) -> (Arc<FiniteSimplicialSet>, VerticalTransformationS) {
    let t = VerticalTransformationS {
        target: x.total.clone(),
        components: vec![(SimplicialMap::identity(x.total.clone()), x.structure.clone())],
    };
    (x.total.clone(), t)
}

/// The colimit of the cotabulators over the truncated category of simplices.
pub fn double_colimit(d: &CorrDiagram) -> Result<DoubleColimit> {
    d.validate()?;
    let diagram = SSetDiagram {
        objects: d.entries.iter().map(|(_, c)| c.total.clone()).collect(),
        arrows: d
            .actions
            .iter()
            .map(|a| {
                (a.from, a.to, a.map.with_source(d.entries[a.from].1.total.clone()).with_target(d.entries[a.to].1.total.clone()))
            })
            .collect(),
        commutes: vec![],
    };
    let colimit = diagram.colimit()?;
    let set = colimit.set().clone();
    let components =
        colimit.cocone.iter().zip(&d.entries).map(|(leg, (_, corr))| (leg.clone(), corr.structure.clone())).collect();
    Ok(DoubleColimit {
        set: set.clone(),
        transformation: VerticalTransformationS { target: set, components },
        colimit,
        level: d.level,
    })
}

/// The outcome of comparing `dcolim(φ_f)` with `X`.
#[derive(Clone, Debug)]
pub struct RoundTrip {
    pub comparison: SimplicialMap,
    pub is_iso: bool,
    pub over_base: bool,
    pub level: usize,
    pub detail: Option<String>,
}

impl RoundTrip {
    pub fn holds(&self) -> bool {
        self.is_iso && self.over_base
    }
}

/// Builds the canonical comparison `dcolim(φ_f) -> X` from the fiber
/// inclusions and tests whether it is an isomorphism over `A`.
pub fn roundtrip_check(f: &SimplicialMap, level: usize) -> Result<RoundTrip> {
    let classified = classifying_diagram(f, level)?;
    let dcolim = double_colimit(&classified.diagram)?;
    let x = f.source();
    if classified.inclusions.is_empty() {
        // empty base: X is empty too
        let comparison = SimplicialMap::new(dcolim.set.clone(), x.clone(), vec![])?;
        let iso = comparison.is_iso();
        return Ok(RoundTrip { comparison, is_iso: iso.holds(), over_base: true, level, detail: None });
    }
    let legs: Vec<SimplicialMap> = classified.inclusions.iter().map(|m| m.with_target(x.clone())).collect();
    let comparison = dcolim.colimit.factor(&legs)?;
    let iso = comparison.is_iso();
    // the map to A assembled from the characteristic maps of the simplices
    let a = f.target();
    let base_legs: Vec<SimplicialMap> = classified
        .diagram
        .entries
        .iter()
        .map(|(s, corr)| simplex_map(a, s, corr.delta()).compose(&corr.structure))
        .collect::<Result<Vec<_>>>()?;
    let to_base = dcolim.colimit.factor(&base_legs)?;
    let over_base = f.compose(&comparison)?.assignment() == to_base.assignment();
    let detail = match &iso {
        IsoCheck::No(why) => Some(why.clone()),
        IsoCheck::Yes(_) => None,
    };
    Ok(RoundTrip { comparison, is_iso: iso.holds(), over_base, level, detail })
}

/// Compares the double colimits at truncation `level` and `level + 1`
/// through the canonical map between them.
pub fn stabilization_check(f: &SimplicialMap, level: usize) -> Result<bool> {
    let low = classifying_diagram(f, level)?;
    let high = classifying_diagram(f, level + 1)?;
    let q_low = double_colimit(&low.diagram)?;
    let q_high = double_colimit(&high.diagram)?;
    if low.diagram.entries.is_empty() {
        return Ok(q_high.set.is_empty());
    }
    let legs: Vec<SimplicialMap> = low
        .diagram
        .entries
        .iter()
        .map(|(s, corr)| {
            let k = high.diagram.position(s).expect("lower truncation is contained in the higher one");
            q_high.colimit.cocone[k].with_source(corr.total.clone())
        })
        .collect();
    let cmp = q_low.colimit.factor(&legs)?;
    Ok(cmp.is_iso().holds())
}

/// Counts both sides of `Hom_{/Δ^n}(X, Y × Δ^n) ≅ Hom(X, Y)`.
pub fn hom_bijection_counts(x: &Correspondence, y: &Arc<FiniteSimplicialSet>, budget: Budget) -> Result<(u64, u64)> {
    let cyl = product(y, &x.delta.set);
    let structure = &x.structure;
    let proj = &cyl.right;
    let over = MapSearch::new(&x.total, &cyl.set, budget)
        .with_constraint(|c, cand| proj.apply(cand) == structure.image_of_cell(c))
        .count()?;
    let plain = MapSearch::new(&x.total, y, budget).count()?;
    Ok((over, plain))
}

/// `sSet♯_n(s^n X, s^n Y)`: maps `X × Δ^n -> Y × Δ^n` over `Δ^n`, matched
/// against the maps `X × Δ^n -> Y`.
#[derive(Clone, Debug)]
pub struct VerticalMappingSpace {
    pub vertical: Vec<SimplicialMap>,
    pub level: Vec<SimplicialMap>,
    pub bijection_verified: bool,
}

pub fn vertical_mapping_space(
    x: &Arc<FiniteSimplicialSet>,
    y: &Arc<FiniteSimplicialSet>,
    n: usize,
    budget: Budget,
) -> Result<VerticalMappingSpace> {
    let sx = Correspondence::cylinder(x, n);
    let sy = Correspondence::cylinder(y, n);
    let y_cyl = product(y, &sy.delta.set);
    let proj = &y_cyl.right;
    let structure = &sx.structure;
    let vertical = MapSearch::new(&sx.total, &y_cyl.set, budget)
        .with_constraint(|c, cand| proj.apply(cand) == structure.image_of_cell(c))
        .collect()?;
    let level = MapSearch::new(&sx.total, y, budget).collect()?;
    // h ↦ pr_Y ∘ h, and back through the product
    let forward: Vec<Vec<SimplexRef>> =
        vertical.iter().map(|h| y_cyl.left.compose(h).map(|m| m.assignment().to_vec())).collect::<Result<Vec<_>>>()?;
    let mut targets: HashMap<Vec<SimplexRef>, usize> = HashMap::new();
    for (k, g) in level.iter().enumerate() {
        targets.insert(g.assignment().to_vec(), k);
    }
    let mut hit = vec![false; level.len()];
    let mut ok = vertical.len() == level.len();
    for (h, image) in vertical.iter().zip(&forward) {
        match targets.get(image) {
            Some(&k) if !hit[k] => {
                hit[k] = true;
                let back = y_cyl.mediate(&level[k], structure)?;
                ok &= back.assignment() == h.assignment();
            }
            _ => ok = false,
        }
    }
    Ok(VerticalMappingSpace { vertical, level, bijection_verified: ok && hit.iter().all(|&b| b) })
}

/// One weak simplicial identity, checked by a canonical comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub identity: String,
    pub holds: bool,
}

/// Checks every applicable identity between faces and degeneracies of `x`
/// up to canonical isomorphism.
pub fn weak_simplicial_identities_check(x: &Correspondence) -> Result<Vec<IdentityCheck>> {
    let root = Derived::root(x);
    let n = x.n;
    let mut jobs: Vec<(String, Vec<Operator>, Vec<Operator>)> = Vec::new();
    use Operator::{Degeneracy as S, Face as D};
    // words listed in order of application
    if n >= 2 {
        for j in 1..=n {
            for i in 0..j {
                jobs.push((format!("d{i} d{j} = d{} d{i}", j - 1), vec![D(j), D(i)], vec![D(i), D(j - 1)]));
            }
        }
    }
    for j in 0..=n {
        for i in 0..=n + 1 {
            if i < j {
                jobs.push((format!("d{i} s{j} = s{} d{i}", j - 1), vec![S(j), D(i)], vec![D(i), S(j - 1)]));
            } else if i == j || i == j + 1 {
                jobs.push((format!("d{i} s{j} = id"), vec![S(j), D(i)], vec![]));
            } else if n >= 1 {
                jobs.push((format!("d{i} s{j} = s{j} d{}", i - 1), vec![S(j), D(i)], vec![D(i - 1), S(j)]));
            }
        }
    }
    for j in 0..=n {
        for i in 0..=j {
            jobs.push((format!("s{i} s{j} = s{} s{i}", j + 1), vec![S(j), S(i)], vec![S(i), S(j + 1)]));
        }
    }
    let apply = |word: &[Operator]| -> Result<Derived> {
        let mut cur = root.clone();
        for op in word {
            cur = match *op {
                Operator::Face(i) => cur.face(i)?,
                Operator::Degeneracy(j) => cur.degeneracy(j)?,
            };
        }
        Ok(cur)
    };
    jobs.par_iter()
        .map(|(name, lhs, rhs)| {
            let (l, r) = (apply(lhs)?, apply(rhs)?);
            let (_, iso) = l.compare(&r)?;
            Ok(IdentityCheck { identity: name.clone(), holds: iso.holds() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{standard_simplex, Cell, CellId};

    /// Δ² with vertices a, b, c over Δ¹, sending a to 0 and b, c to 1.
    fn triangle_over_interval() -> SimplicialMap {
        let d2 = OrderedComplex::simplex(2);
        let d1 = OrderedComplex::simplex(1);
        let mut cells = d2.set.cells().to_vec();
        for (k, name) in ["a", "b", "c"].iter().enumerate() {
            cells[k].label = Some(name.to_string());
        }
        let x = Arc::new(FiniteSimplicialSet::new(cells).unwrap());
        let assignment = d2
            .set
            .ids()
            .map(|c| {
                let vs: Vec<usize> = d2.vertices_of(&SimplexRef::cell(c)).iter().map(|&v| usize::from(v > 0)).collect();
                d1.simplex_of(&vs).unwrap()
            })
            .collect();
        SimplicialMap::checked(x, d1.set.clone(), assignment).unwrap()
    }

    fn as_corr(f: &SimplicialMap) -> Correspondence {
        Correspondence::new(f.source().clone(), 1, f.clone()).unwrap()
    }

    #[test]
    fn fibers_of_the_triangle() {
        let f = triangle_over_interval();
        let over0 = fiber(&f, &SimplexRef::cell(CellId(0))).unwrap();
        let over1 = fiber(&f, &SimplexRef::cell(CellId(1))).unwrap();
        assert_eq!(over0.corr.total.cell_counts(), vec![1]);
        assert_eq!(over1.corr.total.cell_counts(), vec![2, 1]);
        let edge = fiber(&f, &SimplexRef::cell(CellId(2))).unwrap();
        assert!(edge.to_parent.is_iso().holds());
    }

    #[test]
    fn faces_of_the_triangle() {
        let x = as_corr(&triangle_over_interval());
        let d0 = corr_face(&x, 0).unwrap();
        let d1 = corr_face(&x, 1).unwrap();
        assert_eq!(d0.corr.total.cell_counts(), vec![2, 1]);
        assert_eq!(d1.corr.total.cell_counts(), vec![1]);
        for i in 0..2 {
            let pulled = corr_face(&x, i).unwrap();
            let deleted = face_by_deletion(&x, i).unwrap();
            assert!(pulled.compare(&deleted).unwrap().1.holds());
        }
    }

    #[test]
    fn degeneracies_of_the_triangle() {
        let x = as_corr(&triangle_over_interval());
        let s0 = corr_degeneracy(&x, 0).unwrap();
        assert_eq!(s0.corr.total.cell_counts(), vec![4, 6, 4, 1]);
        let s1 = corr_degeneracy(&x, 1).unwrap();
        assert_eq!(s1.corr.total.cell_counts(), vec![5, 9, 7, 2]);
        for i in 0..2 {
            let pulled = corr_degeneracy(&x, i).unwrap();
            let deleted = degeneracy_by_deletion(&x, i).unwrap();
            assert_eq!(pulled.corr.total.cell_counts(), deleted.corr.total.cell_counts());
            assert!(pulled.compare(&deleted).unwrap().1.holds());
        }
    }

    #[test]
    fn degeneracy_of_a_zero_correspondence_is_the_cylinder() {
        let y = OrderedComplex::horn(2, 1).set;
        let x = Correspondence::cylinder(&y, 0);
        let s0 = corr_degeneracy(&x, 0).unwrap();
        let cyl = Derived {
            corr: Correspondence::cylinder(&y, 1),
            to_parent: {
                let c = product(&y, &OrderedComplex::simplex(1).set);
                let back = product(&y, &OrderedComplex::simplex(0).set);
                let pt = SimplicialMap::to_point(c.set.clone(), back.right.target().clone());
                back.mediate(&c.left, &pt).unwrap()
            },
        };
        assert!(s0.compare(&cyl).unwrap().1.holds());
    }

    #[test]
    fn classifying_diagram_of_the_triangle() {
        let f = triangle_over_interval();
        let classified = classifying_diagram(&f, 2).unwrap();
        classified.diagram.validate().unwrap();
        let d = &classified.diagram;
        let at = |c: usize| &d.entries[d.position(&SimplexRef::cell(CellId(c))).unwrap()].1;
        assert_eq!(at(0).total.cell_counts(), vec![1]);
        assert_eq!(at(1).total.cell_counts(), vec![2, 1]);
        assert_eq!(at(2).total.cell_counts(), vec![3, 3, 1]);
        let dc = double_colimit(d).unwrap();
        assert_eq!(dc.set.cell_counts(), vec![3, 3, 1]);
    }

    #[test]
    fn roundtrips() {
        let f = triangle_over_interval();
        assert!(roundtrip_check(&f, 2).unwrap().holds());
        let id = SimplicialMap::identity(Arc::new(standard_simplex(2)));
        assert!(roundtrip_check(&id, 3).unwrap().holds());
        // restriction to the boundary
        let boundary = f.source().clone();
        let keep: Vec<_> = boundary.ids().filter(|c| boundary.cell(*c).dim < 2).collect();
        let (sub, incl) = boundary.subcomplex(keep);
        let g = f.compose(&incl).unwrap();
        assert_eq!(sub.cell_counts(), vec![3, 3]);
        assert!(roundtrip_check(&g, 2).unwrap().holds());
    }

    #[test]
    fn disjoint_fibers_over_two_points() {
        let pts = Arc::new(
            FiniteSimplicialSet::new(vec![
                Cell { dim: 0, faces: vec![], label: None },
                Cell { dim: 0, faces: vec![], label: None },
            ])
            .unwrap(),
        );
        let (sum, inj) = crate::simplicial::coproduct(&[Arc::new(standard_simplex(1)), OrderedComplex::horn(2, 0).set]);
        let mut assignment = vec![SimplexRef::cell(CellId(0)); sum.len()];
        for c in inj[1].assignment() {
            let dim = sum.cell(c.cell).dim;
            assignment[c.cell.0] = SimplexRef::new(crate::simplicial::DegeneracyWord::from_mask((1 << dim) - 1), CellId(1));
        }
        for c in inj[0].assignment() {
            let dim = sum.cell(c.cell).dim;
            assignment[c.cell.0] = SimplexRef::new(crate::simplicial::DegeneracyWord::from_mask((1 << dim) - 1), CellId(0));
        }
        let f = SimplicialMap::checked(sum, pts, assignment).unwrap();
        let rt = roundtrip_check(&f, 1).unwrap();
        assert!(rt.holds());
    }

    #[test]
    fn weak_identities_on_simplices_and_the_example() {
        for n in 0..3 {
            let checks = weak_simplicial_identities_check(&Correspondence::simplex(n)).unwrap();
            assert!(checks.iter().all(|c| c.holds), "{checks:?}");
        }
        let checks = weak_simplicial_identities_check(&as_corr(&triangle_over_interval())).unwrap();
        for name in ["d0 s0 = id", "d1 s0 = id"] {
            assert!(checks.iter().any(|c| c.identity == name && c.holds));
        }
        assert!(checks.iter().all(|c| c.holds));
        let empty = Arc::new(FiniteSimplicialSet::empty());
        let delta = OrderedComplex::simplex(1);
        let structure = SimplicialMap::new(empty.clone(), delta.set.clone(), vec![]).unwrap();
        let checks = weak_simplicial_identities_check(&Correspondence::new(empty, 1, structure).unwrap()).unwrap();
        assert!(checks.iter().all(|c| c.holds));
    }

    #[test]
    fn vertical_maps_match_function_complex() {
        let pt = Arc::new(standard_simplex(0));
        let y = OrderedComplex::horn(2, 1).set;
        for n in 0..3 {
            let space = vertical_mapping_space(&pt, &y, n, Budget::DEFAULT).unwrap();
            assert_eq!(space.vertical.len(), y.enumerate_simplices(n).len());
            assert!(space.bijection_verified);
        }
        let d1 = Arc::new(standard_simplex(1));
        let space = vertical_mapping_space(&d1, &d1, 1, Budget::DEFAULT).unwrap();
        let cyl = product(&d1, &d1);
        let direct = crate::simplicial::count_maps(&cyl.set, &d1, Budget::DEFAULT).unwrap();
        assert_eq!(space.vertical.len() as u64, direct);
        assert!(space.bijection_verified);
        assert_eq!(vertical_mapping_space(&pt, &pt, 2, Budget::DEFAULT).unwrap().vertical.len(), 1);
    }

    #[test]
    fn cotabulator_hom_bijection() {
        let x = Correspondence::simplex(1);
        let y = Arc::new(standard_simplex(1));
        let (over, plain) = hom_bijection_counts(&x, &y, Budget::DEFAULT).unwrap();
        assert_eq!(over, plain);
        assert_eq!(plain, 3);
        let (total, t) = cotabulator(&as_corr(&triangle_over_interval()));
        assert_eq!(total.cell_counts(), vec![3, 3, 1]);
        assert!(t.components[0].0.is_iso().holds());
    }

    #[test]
    fn stabilization_on_the_example() {
        assert!(stabilization_check(&triangle_over_interval(), 1).unwrap());
        assert!(stabilization_check(&triangle_over_interval(), 2).unwrap());
    }
}
