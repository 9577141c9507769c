use std::collections::HashMap;
use std::sync::Arc;

use super::map::{same_set, SimplicialMap};
use super::sset::{describe, masks_of_size, Cell, CellId, FiniteSimplicialSet, OrderedComplex, SimplexRef};
use super::{DegeneracyWord, DeltaMap};
use crate::error::{CoreError, Result};

/// Lookup of simplices of `P` by their images under a jointly monic pair
/// `a : P -> X`, `b : P -> Y`.
#[derive(Clone, Debug, Default)]
pub struct JointIndex {
    table: HashMap<(SimplexRef, SimplexRef), CellId>,
}

impl JointIndex {
    pub fn from_pair(a: &SimplicialMap, b: &SimplicialMap) -> Result<Self> {
        if !same_set(a.source(), b.source()) {
            return Err(CoreError::Mismatch("the two legs have different sources".into()));
        }
        let mut table = HashMap::with_capacity(a.source().len());
        for c in a.source().ids() {
            let key = (a.image_of_cell(c), b.image_of_cell(c));
            if key.0.word.mask() & key.1.word.mask() != 0 || table.insert(key, c).is_some() {
                return Err(CoreError::Mismatch(format!("the legs are not jointly monic at cell {}", a.source().label(c))));
            }
        }
        Ok(JointIndex { table })
    }

    /// The simplex of `P` with images `x` and `y`, if there is one.
    pub fn lift(&self, x: SimplexRef, y: SimplexRef) -> Option<SimplexRef> {
        let common = x.word.mask() & y.word.mask();
        let key = (SimplexRef::new(strip(x.word, common), x.cell), SimplexRef::new(strip(y.word, common), y.cell));
        self.table.get(&key).map(|&c| SimplexRef::new(DegeneracyWord::from_mask(common), c))
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// The word `w'` with `w = s_common w'`, for `common ⊆ w`.
fn strip(word: DegeneracyWord, common: u32) -> DegeneracyWord {
    let rest = word.mask() & !common;
    let mut mask = 0u32;
    for j in 0..32 {
        if rest & (1 << j) != 0 {
            let below = (common & ((1u32 << j) - 1)).count_ones();
            mask |= 1 << (j as u32 - below);
        }
    }
    DegeneracyWord::from_mask(mask)
}

/// The map `W -> P` determined by `u : W -> X` and `v : W -> Y`, where `P`
/// is presented through the jointly monic pair behind `index`.
pub fn compare_into(
    index: &JointIndex,
    u: &SimplicialMap,
    v: &SimplicialMap,
    target: &Arc<FiniteSimplicialSet>,
) -> Result<SimplicialMap> {
    if !same_set(u.source(), v.source()) {
        return Err(CoreError::Mismatch("cone legs have different sources".into()));
    }
    let w = u.source();
    let assignment = w
        .ids()
        .map(|c| {
            index.lift(u.image_of_cell(c), v.image_of_cell(c)).ok_or_else(|| {
                CoreError::Mismatch(format!("cell {} has no matching simplex in the comparison target", w.label(c)))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(w.clone(), target.clone(), assignment)
}

/// A chosen pullback `X ×_C Y` with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub set: Arc<FiniteSimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    pub index: JointIndex,
    /// Dimension bound used for the enumeration of nondegenerate pairs.
    pub bound: usize,
}

impl Pullback {
    /// The mediating map of a cone `u : W -> X`, `v : W -> Y`.
    pub fn mediate(&self, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
        compare_into(&self.index, u, v, &self.set)
    }

    pub fn lift(&self, x: SimplexRef, y: SimplexRef) -> Option<SimplexRef> {
        self.index.lift(x, y)
    }
}

/// The pullback of `f : X -> C` and `g : Y -> C`. A nondegenerate
/// `k`-simplex is a pair `(s_a x, s_b y)` of nondegenerate cells with
/// disjoint degeneracy words and equal images in `C`.
pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pullback> {
    if !same_set(f.target(), g.target()) {
        return Err(CoreError::Mismatch("pullback of maps with different codomains".into()));
    }
    let (x, y) = (f.source(), g.source());
    // pairs can only match when both images share their nondegenerate root
    let mut by_root: HashMap<CellId, Vec<CellId>> = HashMap::new();
    for c in y.ids() {
        by_root.entry(g.image_of_cell(c).cell).or_default().push(c);
    }
    let mut pairs: Vec<(usize, SimplexRef, SimplexRef)> = Vec::new();
    for cx in x.ids() {
        let fx = f.image_of_cell(cx);
        let Some(partners) = by_root.get(&fx.cell) else { continue };
        let p = x.cell(cx).dim;
        for &cy in partners {
            let gy = g.image_of_cell(cy);
            let q = y.cell(cy).dim;
            for k in p.max(q)..=p + q {
                for ma in masks_of_size(k, k - p) {
                    let left = fx.degenerate(DegeneracyWord::from_mask(ma));
                    for mb in masks_of_size(k, k - q) {
                        if ma & mb != 0 {
                            continue;
                        }
                        if left == gy.degenerate(DegeneracyWord::from_mask(mb)) {
                            pairs.push((
                                k,
                                SimplexRef::new(DegeneracyWord::from_mask(ma), cx),
                                SimplexRef::new(DegeneracyWord::from_mask(mb), cy),
                            ));
                        }
                    }
                }
            }
        }
    }
    pairs.sort();
    let mut index = JointIndex::default();
    let mut cells = Vec::with_capacity(pairs.len());
    for &(k, sx, sy) in &pairs {
        let faces = if k == 0 {
            vec![]
        } else {
            (0..=k).map(|i| index.lift(x.face(&sx, i), y.face(&sy, i)).expect("faces of a pair are earlier pairs")).collect()
        };
        index.table.insert((sx, sy), CellId(cells.len()));
        cells.push(Cell { dim: k, faces, label: Some(format!("({},{})", describe(x, &sx), describe(y, &sy))) });
    }
    let set = Arc::new(FiniteSimplicialSet::new(cells)?);
    let left = SimplicialMap::new(set.clone(), x.clone(), pairs.iter().map(|p| p.1).collect())?;
    let right = SimplicialMap::new(set.clone(), y.clone(), pairs.iter().map(|p| p.2).collect())?;
    let bound = x.dim().unwrap_or(0) + y.dim().unwrap_or(0);
    Ok(Pullback { set, left, right, index, bound })
}

/// The product `X × Y`, as the pullback over the point.
pub fn product(x: &Arc<FiniteSimplicialSet>, y: &Arc<FiniteSimplicialSet>) -> Pullback {
    let point = Arc::new(FiniteSimplicialSet::point());
    let f = SimplicialMap::to_point(x.clone(), point.clone());
    let g = SimplicialMap::to_point(y.clone(), point);
    pullback(&f, &g).expect("maps to the point share a codomain")
}

/// The map `Δ^m -> Δ^n` induced by a monotone `θ : [m] -> [n]`.
pub fn delta_map_between(theta: &DeltaMap, src: &OrderedComplex, tgt: &OrderedComplex) -> SimplicialMap {
    let assignment = src
        .set
        .ids()
        .map(|c| {
            let vs: Vec<usize> = src.vertices_of(&SimplexRef::cell(c)).iter().map(|&v| theta.apply(v)).collect();
            tgt.simplex_of(&vs).expect("image of a face of Δ^m lies in Δ^n")
        })
        .collect();
    SimplicialMap::new(src.set.clone(), tgt.set.clone(), assignment).expect("monotone maps induce simplicial maps")
}

/// The map `Δ^n -> A` classifying an `n`-simplex `σ` of `A`.
pub fn simplex_map(a: &Arc<FiniteSimplicialSet>, sigma: &SimplexRef, delta: &OrderedComplex) -> SimplicialMap {
    let n = a.simplex_dim(sigma);
    let assignment = delta
        .set
        .ids()
        .map(|c| {
            let vs = delta.vertices_of(&SimplexRef::cell(c));
            a.apply(sigma, &DeltaMap::new(vs, n).expect("vertex subset"))
        })
        .collect();
    SimplicialMap::new(delta.set.clone(), a.clone(), assignment).expect("simplex map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{enumerate_maps, standard_simplex, validate_map, Budget};

    /// Strictly increasing chains of length `k+1` in the poset `[p] × [q]`.
    fn chains(p: usize, q: usize, k: usize) -> usize {
        let pts: Vec<(usize, usize)> = (0..=p).flat_map(|a| (0..=q).map(move |b| (a, b))).collect();
        fn go(pts: &[(usize, usize)], last: Option<(usize, usize)>, left: usize) -> usize {
            if left == 0 {
                return 1;
            }
            pts.iter()
                .filter(|&&pt| match last {
                    None => true,
                    Some(l) => pt != l && pt.0 >= l.0 && pt.1 >= l.1,
                })
                .map(|&pt| go(pts, Some(pt), left - 1))
                .sum()
        }
        go(&pts, None, k + 1)
    }

    fn arc(n: usize) -> Arc<FiniteSimplicialSet> {
        Arc::new(standard_simplex(n))
    }

    #[test]
    fn product_of_simplices_matches_chain_count() {
        for (p, q) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
            let prod = product(&arc(p), &arc(q));
            let counts = prod.set.cell_counts();
            for (k, &c) in counts.iter().enumerate() {
                assert_eq!(c, chains(p, q, k), "Δ{p}×Δ{q} in dim {k}");
            }
            assert_eq!(counts.len(), p + q + 1);
            assert!(validate_map(&prod.left).is_valid() && validate_map(&prod.right).is_valid());
        }
        assert_eq!(product(&arc(1), &arc(1)).set.cell_counts(), vec![4, 5, 2]);
        assert_eq!(product(&arc(2), &arc(1)).set.cell_counts()[3], 3);
    }

    #[test]
    fn product_is_dimensionwise() {
        let x = Arc::new(OrderedComplex::horn(2, 1).set.as_ref().clone());
        let y = arc(1);
        let prod = product(&x, &y);
        for n in 0..=4 {
            assert_eq!(prod.set.enumerate_simplices(n).len(), x.enumerate_simplices(n).len() * y.enumerate_simplices(n).len());
        }
    }

    #[test]
    fn point_is_a_unit() {
        let y = arc(2);
        let prod = product(&Arc::new(FiniteSimplicialSet::point()), &y);
        assert!(prod.right.is_iso().holds());
    }

    #[test]
    fn pullback_along_identity() {
        let d1 = OrderedComplex::simplex(1);
        let d2 = OrderedComplex::simplex(2);
        let coface = delta_map_between(&DeltaMap::coface(1, 2), &d1, &d2);
        let id = SimplicialMap::identity(d2.set.clone());
        let pb = pullback(&coface, &id).unwrap();
        assert_eq!(pb.set.cell_counts(), vec![2, 1]);
        assert!(pb.left.is_iso().holds());
    }

    #[test]
    fn fiber_of_cylinder_projection() {
        let d2 = arc(2);
        let d1 = OrderedComplex::simplex(1);
        let prod = product(&d2, &d1.set);
        let pt = OrderedComplex::simplex(0);
        let v0 = delta_map_between(&DeltaMap::vertex(0, 1), &pt, &d1);
        let pb = pullback(&prod.right, &v0).unwrap();
        assert_eq!(pb.set.cell_counts(), vec![3, 3, 1]);
        // the composite to Δ² is an isomorphism
        assert!(prod.left.compose(&pb.left).unwrap().is_iso().holds());
    }

    #[test]
    fn mediating_maps_exist_and_are_unique() {
        // cone over Δ¹ → Δ⁰ ← Δ¹ from W = Δ¹ with legs (id, swap-free constant)
        let d1 = arc(1);
        let prod = product(&d1, &d1);
        let maps = enumerate_maps(&d1, &d1, Budget::new(1000)).unwrap();
        for u in &maps {
            for v in &maps {
                let h = prod.mediate(u, v).unwrap();
                assert!(validate_map(&h).is_valid());
                assert_eq!(prod.left.compose(&h).unwrap(), *u);
                assert_eq!(prod.right.compose(&h).unwrap(), *v);
                let all = enumerate_maps(&d1, &prod.set, Budget::new(10_000)).unwrap();
                let agreeing =
                    all.iter().filter(|k| prod.left.compose(k).unwrap() == *u && prod.right.compose(k).unwrap() == *v).count();
                assert_eq!(agreeing, 1);
            }
        }
    }

    #[test]
    fn strip_common_degeneracies() {
        // s1 s0 = s_{01}; stripping s0 leaves s0
        assert_eq!(strip(DegeneracyWord::from_mask(0b11), 0b01), DegeneracyWord::from_mask(0b1));
        assert_eq!(strip(DegeneracyWord::from_mask(0b101), 0b001), DegeneracyWord::from_mask(0b10));
        let w = DegeneracyWord::from_mask(0b1010);
        let common = 0b0010;
        assert_eq!(DegeneracyWord::from_mask(common).after(strip(w, common)), w);
    }
}
