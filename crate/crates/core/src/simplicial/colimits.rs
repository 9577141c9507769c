use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::map::{same_set, SimplicialMap};
use super::sset::{Cell, CellId, FiniteSimplicialSet, SimplexRef};
use crate::error::{CoreError, Result};

/// `B / ~` for the congruence generated by a family of related pairs, with
/// the quotient map.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub set: Arc<FiniteSimplicialSet>,
    pub projection: SimplicialMap,
    /// Highest dimension in which identifications were resolved.
    pub bound: usize,
}

impl Quotient {
    /// The map out of the quotient induced by `h : B -> T`, provided `h`
    /// respects the identifications.
    pub fn factor(&self, h: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_set(h.source(), self.projection.source()) {
            return Err(CoreError::Mismatch("map does not start at the quotiented set".into()));
        }
        let b = h.source();
        let mut assignment: Vec<Option<SimplexRef>> = vec![None; self.set.len()];
        for c in b.ids() {
            let img = self.projection.image_of_cell(c);
            if img.is_nondegenerate() && assignment[img.cell.0].is_none() {
                assignment[img.cell.0] = Some(h.image_of_cell(c));
            }
        }
        let assignment = assignment
            .into_iter()
            .map(|x| x.ok_or_else(|| CoreError::Mismatch("quotient cell without a preimage".into())))
            .collect::<Result<Vec<_>>>()?;
        let out = SimplicialMap::new(self.set.clone(), h.target().clone(), assignment)?;
        for c in b.ids() {
            if out.apply(&self.projection.image_of_cell(c)) != h.image_of_cell(c) {
                return Err(CoreError::Mismatch(format!("map does not respect the identification of cell {}", b.label(c))));
            }
        }
        Ok(out)
    }
}

/// The quotient of `b` by the congruence generated by `relations`. The family
/// must be closed under faces up to the relation itself, which holds for
/// the pairs `(f(c), g(c))` of two maps over all cells `c` of their source.
pub fn quotient(b: &Arc<FiniteSimplicialSet>, relations: &[(SimplexRef, SimplexRef)]) -> Result<Quotient> {
    let top = b.dim();
    let mut by_dim: Vec<Vec<(SimplexRef, SimplexRef)>> = vec![Vec::new(); top.map_or(0, |d| d + 1)];
    for &(r, s) in relations {
        let (dr, ds) = (b.simplex_dim(&r), b.simplex_dim(&s));
        if dr != ds {
            return Err(CoreError::Mismatch(format!("related simplices have dimensions {dr} and {ds}")));
        }
        by_dim[dr].push((r, s));
    }
    // image of every cell of b in the quotient
    let mut image: Vec<SimplexRef> = vec![SimplexRef::cell(CellId(usize::MAX)); b.len()];
    let mut cells: Vec<Cell> = Vec::new();
    for (n, rels) in by_dim.iter().enumerate() {
        let fresh: Vec<CellId> = b.cells_of_dim(n);
        let slot: HashMap<CellId, usize> = fresh.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut classes = UnionFind::<usize>::new(fresh.len());
        let mut collapsed: Vec<Option<SimplexRef>> = vec![None; fresh.len()];
        let resolve = |s: &SimplexRef, image: &[SimplexRef]| -> Resolved {
            if s.is_nondegenerate() {
                Resolved::Fresh(slot[&s.cell])
            } else {
                Resolved::Old(image[s.cell.0].degenerate(s.word))
            }
        };
        for (r, s) in rels {
            let lhs = settle(resolve(r, &image), &mut classes, &collapsed);
            let rhs = settle(resolve(s, &image), &mut classes, &collapsed);
            match (lhs, rhs) {
                (Resolved::Fresh(i), Resolved::Fresh(j)) => {
                    let (ri, rj) = (classes.find_mut(i), classes.find_mut(j));
                    classes.union(ri, rj);
                }
                (Resolved::Fresh(i), Resolved::Old(x)) | (Resolved::Old(x), Resolved::Fresh(i)) => {
                    let root = classes.find_mut(i);
                    collapsed[root] = Some(x);
                }
                (Resolved::Old(x), Resolved::Old(y)) => {
                    if x != y {
                        return Err(CoreError::Mismatch(format!("relations in dimension {n} are not closed under faces")));
                    }
                }
            }
        }
        // surviving classes become cells of the quotient
        let mut class_cell: HashMap<usize, CellId> = HashMap::new();
        for (i, &c) in fresh.iter().enumerate() {
            let root = classes.find_mut(i);
            if let Some(x) = collapsed[root] {
                image[c.0] = x;
                continue;
            }
            let id = *class_cell.entry(root).or_insert_with(|| {
                let src = b.cell(fresh[root]);
                let faces = src.faces.iter().map(|f| image[f.cell.0].degenerate(f.word)).collect();
                cells.push(Cell { dim: n, faces, label: Some(b.label(fresh[root])) });
                CellId(cells.len() - 1)
            });
            image[c.0] = SimplexRef::cell(id);
        }
    }
    let set = Arc::new(FiniteSimplicialSet::new(cells)?);
    let projection = SimplicialMap::new(b.clone(), set.clone(), image)?;
    if let Some(issue) = super::validate_map(&projection).issues.first() {
        return Err(CoreError::Mismatch(format!("identifications are not compatible with faces: {issue}")));
    }
    Ok(Quotient { set, projection, bound: top.unwrap_or(0) })
}

#[derive(Clone, Copy)]
enum Resolved {
    Fresh(usize),
    Old(SimplexRef),
}

fn settle(r: Resolved, classes: &mut UnionFind<usize>, collapsed: &[Option<SimplexRef>]) -> Resolved {
    match r {
        Resolved::Fresh(i) => match collapsed[classes.find_mut(i)] {
            Some(x) => Resolved::Old(x),
            None => Resolved::Fresh(i),
        },
        old => old,
    }
}

/// The disjoint union with its injections; cells of the `k`-th summand come
/// in order after those of earlier summands.
pub fn coproduct(parts: &[Arc<FiniteSimplicialSet>]) -> (Arc<FiniteSimplicialSet>, Vec<SimplicialMap>) {
    let mut cells = Vec::new();
    let mut offsets = Vec::with_capacity(parts.len());
    for part in parts {
        let offset = cells.len();
        offsets.push(offset);
        for c in part.cells() {
            cells.push(Cell {
                dim: c.dim,
                faces: c.faces.iter().map(|f| SimplexRef::new(f.word, CellId(f.cell.0 + offset))).collect(),
                label: c.label.clone(),
            });
        }
    }
    let sum = Arc::new(FiniteSimplicialSet::new(cells).expect("disjoint union of valid presentations"));
    let injections = parts
        .iter()
        .zip(&offsets)
        .map(|(part, &offset)| {
            let assignment = part.ids().map(|c| SimplexRef::cell(CellId(c.0 + offset))).collect();
            SimplicialMap::new(part.clone(), sum.clone(), assignment).expect("injection")
        })
        .collect();
    (sum, injections)
}

/// A finite diagram of simplicial sets: objects and generating arrows, with
/// optional commutation constraints between paths of arrows.
#[derive(Clone, Debug, Default)]
pub struct SSetDiagram {
    pub objects: Vec<Arc<FiniteSimplicialSet>>,
    pub arrows: Vec<(usize, usize, SimplicialMap)>,
    /// Pairs of arrow paths (listed in order of application) with a common
    /// source and target that must compose to the same map.
    pub commutes: Vec<(Vec<usize>, Vec<usize>)>,
}

/// The colimit of a diagram with its cocone.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub quotient: Quotient,
    pub cocone: Vec<SimplicialMap>,
}

impl Colimit {
    pub fn set(&self) -> &Arc<FiniteSimplicialSet> {
        &self.quotient.set
    }

    /// The map out of the colimit induced by a cocone `legs[i] : D(i) -> T`.
    pub fn factor(&self, legs: &[SimplicialMap]) -> Result<SimplicialMap> {
        if legs.len() != self.cocone.len() {
            return Err(CoreError::Mismatch("cocone has the wrong number of legs".into()));
        }
        let Some(first) = legs.first() else {
            return Err(CoreError::Unsupported("factoring out of an empty colimit needs a target".into()));
        };
        let target = first.target().clone();
        let sum = self.quotient.projection.source();
        let mut assignment = Vec::with_capacity(sum.len());
        for leg in legs {
            if !same_set(leg.target(), &target) {
                return Err(CoreError::Mismatch("cocone legs have different targets".into()));
            }
            assignment.extend_from_slice(leg.assignment());
        }
        let h = SimplicialMap::new(sum.clone(), target, assignment)?;
        self.quotient.factor(&h)
    }
}

impl SSetDiagram {
    pub fn validate(&self) -> Result<()> {
        for (k, (from, to, map)) in self.arrows.iter().enumerate() {
            let (Some(src), Some(tgt)) = (self.objects.get(*from), self.objects.get(*to)) else {
                return Err(CoreError::NotFunctorial(format!("arrow {k} has a missing endpoint")));
            };
            if !same_set(map.source(), src) || !same_set(map.target(), tgt) {
                return Err(CoreError::NotFunctorial(format!("arrow {k} does not match its endpoints")));
            }
            if let Some(issue) = super::validate_map(map).issues.first() {
                return Err(CoreError::NotFunctorial(format!("arrow {k}: {issue}")));
            }
        }
        for (p, q) in &self.commutes {
            let lhs = self.compose_path(p)?;
            let rhs = self.compose_path(q)?;
            if lhs != rhs {
                return Err(CoreError::NotFunctorial(format!("paths {p:?} and {q:?} give different maps")));
            }
        }
        Ok(())
    }

    fn compose_path(&self, path: &[usize]) -> Result<SimplicialMap> {
        let mut acc: Option<SimplicialMap> = None;
        for &k in path {
            let (_, _, map) =
                self.arrows.get(k).ok_or_else(|| CoreError::NotFunctorial(format!("path uses missing arrow {k}")))?;
            acc = Some(match acc {
                None => map.clone(),
                Some(prev) => {
                    map.compose(&prev).map_err(|_| CoreError::NotFunctorial(format!("path {path:?} is not composable")))?
                }
            });
        }
        acc.ok_or_else(|| CoreError::NotFunctorial("empty path".into()))
    }

    /// The colimit, computed as a quotient of the disjoint union by the
    /// pairs `(c, D(α)(c))` for every generating arrow `α` and cell `c`.
    pub fn colimit(&self) -> Result<Colimit> {
        self.validate()?;
        let (sum, injections) = coproduct(&self.objects);
        let mut relations = Vec::new();
        for (from, to, map) in &self.arrows {
            for c in map.source().ids() {
                relations.push((injections[*from].image_of_cell(c), injections[*to].apply(&map.image_of_cell(c))));
            }
        }
        let quotient = quotient(&sum, &relations)?;
        let cocone = injections.iter().map(|inj| quotient.projection.compose(inj)).collect::<Result<Vec<_>>>()?;
        Ok(Colimit { quotient, cocone })
    }
}

/// The pushout of `f : C -> X` and `g : C -> Y`, with injections.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<(Arc<FiniteSimplicialSet>, SimplicialMap, SimplicialMap)> {
    if !same_set(f.source(), g.source()) {
        return Err(CoreError::Mismatch("pushout of maps with different domains".into()));
    }
    let diagram = SSetDiagram {
        objects: vec![f.source().clone(), f.target().clone(), g.target().clone()],
        arrows: vec![(0, 1, f.clone()), (0, 2, g.clone())],
        commutes: vec![],
    };
    let colim = diagram.colimit()?;
    let set = colim.set().clone();
    Ok((set, colim.cocone[1].clone(), colim.cocone[2].clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{delta_map_between, DeltaMap, OrderedComplex};

    fn coface(i: usize, n: usize) -> SimplicialMap {
        delta_map_between(&DeltaMap::coface(i, n), &OrderedComplex::simplex(n - 1), &OrderedComplex::simplex(n))
    }

    #[test]
    fn pushout_over_empty_is_disjoint_union() {
        let empty = Arc::new(FiniteSimplicialSet::empty());
        let x = OrderedComplex::simplex(2).set;
        let y = OrderedComplex::simplex(1).set;
        let f = SimplicialMap::new(empty.clone(), x, vec![]).unwrap();
        let g = SimplicialMap::new(empty, y, vec![]).unwrap();
        let (set, _, _) = pushout(&f, &g).unwrap();
        assert_eq!(set.cell_counts(), vec![5, 4, 1]);
    }

    #[test]
    fn wedge_of_intervals() {
        // glue endpoint 1 of the first interval to endpoint 0 of the second
        let (set, i, j) = pushout(&coface(0, 1), &coface(1, 1)).unwrap();
        assert_eq!(set.cell_counts(), vec![3, 2]);
        assert!(crate::simplicial::validate_map(&i).is_valid() && crate::simplicial::validate_map(&j).is_valid());
        // the comparison to Δ² via d², d⁰ misses the top cell
        let d2 = OrderedComplex::simplex(2);
        let d1 = OrderedComplex::simplex(1);
        let legs = [delta_map_between(&DeltaMap::coface(2, 2), &d1, &d2), delta_map_between(&DeltaMap::coface(0, 2), &d1, &d2)];
        let diagram = SSetDiagram {
            objects: vec![OrderedComplex::simplex(0).set, d1.set.clone(), d1.set.clone()],
            arrows: vec![(0, 1, coface(0, 1)), (0, 2, coface(1, 1))],
            commutes: vec![],
        };
        let colim = diagram.colimit().unwrap();
        let point_leg = legs[0].compose(&coface(0, 1)).unwrap();
        let cmp = colim.factor(&[point_leg, legs[0].clone(), legs[1].clone()]).unwrap();
        assert!(!cmp.is_iso().holds());
    }

    #[test]
    fn gluing_triangles_along_an_edge() {
        // oracle: vertex/edge/triangle sets of the union of {0,1,2} and {0,1,3}
        let tri1 = [0usize, 1, 2];
        let tri2 = [0usize, 1, 3];
        let mut verts = std::collections::BTreeSet::new();
        let mut edges = std::collections::BTreeSet::new();
        for t in [tri1, tri2] {
            for a in 0..3 {
                verts.insert(t[a]);
                for b in a + 1..3 {
                    edges.insert((t[a], t[b]));
                }
            }
        }
        let (set, _, _) = pushout(&coface(2, 2), &coface(2, 2)).unwrap();
        assert_eq!(set.cell_counts(), vec![verts.len(), edges.len(), 2]);
    }

    #[test]
    fn collapsing_an_edge_makes_the_triangle_degenerate_on_that_side() {
        // Δ² with edge 01 collapsed to a point
        let d2 = OrderedComplex::simplex(2);
        let d1 = OrderedComplex::simplex(1);
        let e01 = delta_map_between(&DeltaMap::coface(2, 2), &d1, &d2);
        let collapse = SimplicialMap::to_point(d1.set.clone(), OrderedComplex::simplex(0).set);
        let (set, _, _) = pushout(&e01, &collapse).unwrap();
        assert_eq!(set.cell_counts(), vec![2, 2, 1]);
        assert!(crate::simplicial::validate_sset(&set).is_valid());
        let tri = set.cells_of_dim(2)[0];
        assert!(!set.cell(tri).faces[2].is_nondegenerate());
    }

    #[test]
    fn one_object_colimit() {
        let x = OrderedComplex::horn(3, 1).set;
        let d = SSetDiagram { objects: vec![x.clone()], arrows: vec![], commutes: vec![] };
        let colim = d.colimit().unwrap();
        assert!(colim.cocone[0].is_iso().holds());
    }

    #[test]
    fn tautological_diagram_over_interval() {
        // σ ↦ Δ^{dim σ} over the simplices of Δ¹ up to dimension 2
        let d1 = OrderedComplex::simplex(1);
        let mut objects = Vec::new();
        let mut simplices = Vec::new();
        for m in 0..=2 {
            for s in d1.set.enumerate_simplices(m) {
                simplices.push(s);
                objects.push(OrderedComplex::simplex(m).set);
            }
        }
        let mut arrows = Vec::new();
        for (to, s) in simplices.iter().enumerate() {
            let m = d1.set.simplex_dim(s);
            for i in 0..=m {
                if m == 0 {
                    break;
                }
                let f = d1.set.face(s, i);
                let from = simplices.iter().position(|t| *t == f).unwrap();
                arrows.push((from, to, coface(i, m)));
            }
            if m < 2 {
                for j in 0..=m {
                    let s_j = d1.set.degeneracy(s, j);
                    let from = simplices.iter().position(|t| *t == s_j).unwrap();
                    let sigma = delta_map_between(
                        &DeltaMap::codegeneracy(j, m),
                        &OrderedComplex::simplex(m + 1),
                        &OrderedComplex::simplex(m),
                    );
                    arrows.push((from, to, sigma));
                }
            }
        }
        let diagram = SSetDiagram { objects, arrows, commutes: vec![] };
        let colim = diagram.colimit().unwrap();
        // canonical comparison: each σ maps to Δ¹ by its characteristic map
        let legs: Vec<SimplicialMap> = simplices
            .iter()
            .map(|s| crate::simplicial::simplex_map(&d1.set, s, &OrderedComplex::simplex(d1.set.simplex_dim(s))))
            .collect();
        let cmp = colim.factor(&legs).unwrap();
        assert!(cmp.is_iso().holds());
    }
}
