use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::sset::{describe, FiniteSimplicialSet, Issue, SimplexRef, ValidationReport};
use super::CellId;
use crate::error::{CoreError, Result};

/// A map of simplicial sets given by the image of every nondegenerate cell.
#[derive(Clone)]
pub struct SimplicialMap {
    source: Arc<FiniteSimplicialSet>,
    target: Arc<FiniteSimplicialSet>,
    assignment: Vec<SimplexRef>,
}

impl fmt::Debug for SimplicialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimplicialMap").field("assignment", &self.assignment).finish()
    }
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.assignment == other.assignment && same_set(&self.source, &other.source) && same_set(&self.target, &other.target)
    }
}

pub(crate) fn same_set(a: &Arc<FiniteSimplicialSet>, b: &Arc<FiniteSimplicialSet>) -> bool {
    Arc::ptr_eq(a, b) || a.as_ref() == b.as_ref()
}

impl SimplicialMap {
    /// Checks image dimensions and targets; face compatibility is checked by
    /// [`validate_map`].
    pub fn new(source: Arc<FiniteSimplicialSet>, target: Arc<FiniteSimplicialSet>, assignment: Vec<SimplexRef>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(CoreError::InvalidMap(format!(
                "assignment covers {} cells but the source has {}",
                assignment.len(),
                source.len()
            )));
        }
        for (id, img) in assignment.iter().enumerate() {
            if img.cell.0 >= target.len() {
                return Err(CoreError::InvalidMap(format!(
                    "cell {} is sent to missing target cell {}",
                    source.label(CellId(id)),
                    img.cell
                )));
            }
            let want = source.cell(CellId(id)).dim;
            let got = target.simplex_dim(img);
            if want != got || img.word.highest() > got {
                return Err(CoreError::InvalidMap(format!(
                    "cell {} of dimension {want} is sent to a simplex of dimension {got}",
                    source.label(CellId(id))
                )));
            }
        }
        Ok(SimplicialMap { source, target, assignment })
    }

    /// Builds a map and rejects it unless it commutes with faces.
    pub fn checked(
        source: Arc<FiniteSimplicialSet>,
        target: Arc<FiniteSimplicialSet>,
        assignment: Vec<SimplexRef>,
    ) -> Result<Self> {
        let map = SimplicialMap::new(source, target, assignment)?;
        let report = validate_map(&map);
        if let Some(first) = report.issues.first() {
            return Err(CoreError::InvalidMap(first.to_string()));
        }
        Ok(map)
    }

    pub fn identity(x: Arc<FiniteSimplicialSet>) -> Self {
        let assignment = x.ids().map(SimplexRef::cell).collect();
        SimplicialMap { source: x.clone(), target: x, assignment }
    }

    /// The unique map to `Δ^0`.
    pub fn to_point(x: Arc<FiniteSimplicialSet>, point: Arc<FiniteSimplicialSet>) -> Self {
        assert_eq!(point.len(), 1, "target must be the point");
        let assignment =
            x.cells().iter().map(|c| SimplexRef::new(super::DegeneracyWord::from_mask((1u32 << c.dim) - 1), CellId(0))).collect();
        SimplicialMap { source: x, target: point, assignment }
    }

    pub fn source(&self) -> &Arc<FiniteSimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteSimplicialSet> {
        &self.target
    }

    pub fn assignment(&self) -> &[SimplexRef] {
        &self.assignment
    }

    pub fn image_of_cell(&self, c: CellId) -> SimplexRef {
        self.assignment[c.0]
    }

    pub fn apply(&self, x: &SimplexRef) -> SimplexRef {
        self.assignment[x.cell.0].degenerate(x.word)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_set(inner.target(), &self.source) {
            return Err(CoreError::Mismatch("maps are not composable".into()));
        }
        let assignment = inner.assignment.iter().map(|x| self.apply(x)).collect();
        Ok(SimplicialMap { source: inner.source.clone(), target: self.target.clone(), assignment })
    }

    pub fn with_target(&self, target: Arc<FiniteSimplicialSet>) -> SimplicialMap {
        debug_assert!(same_set(&self.target, &target));
        SimplicialMap { source: self.source.clone(), target, assignment: self.assignment.clone() }
    }

    pub fn with_source(&self, source: Arc<FiniteSimplicialSet>) -> SimplicialMap {
        debug_assert!(same_set(&self.source, &source));
        SimplicialMap { source, target: self.target.clone(), assignment: self.assignment.clone() }
    }

    /// Decides whether this map is an isomorphism; on success the inverse is
    /// returned as a witness.
    pub fn is_iso(&self) -> IsoCheck {
        let src_counts = self.source.cell_counts();
        let tgt_counts = self.target.cell_counts();
        if src_counts != tgt_counts {
            return IsoCheck::No(format!("cell counts differ: {src_counts:?} vs {tgt_counts:?}"));
        }
        let mut inverse: Vec<Option<SimplexRef>> = vec![None; self.target.len()];
        for (id, img) in self.assignment.iter().enumerate() {
            if !img.is_nondegenerate() {
                return IsoCheck::No(format!("cell {} is sent to a degenerate simplex", self.source.label(CellId(id))));
            }
            if let Some(prev) = inverse[img.cell.0] {
                return IsoCheck::No(format!(
                    "cells {} and {} have the same image",
                    self.source.label(prev.cell),
                    self.source.label(CellId(id))
                ));
            }
            inverse[img.cell.0] = Some(SimplexRef::cell(CellId(id)));
        }
        let assignment: Vec<SimplexRef> = inverse.into_iter().map(|x| x.expect("bijective on cells")).collect();
        let inv = SimplicialMap { source: self.target.clone(), target: self.source.clone(), assignment };
        if !validate_map(&inv).is_valid() {
            return IsoCheck::No("inverse on cells does not commute with faces".into());
        }
        IsoCheck::Yes(inv)
    }

    /// Lifts this map through a monomorphism `m` with the same target.
    pub fn factor_through_mono(&self, m: &SimplicialMap) -> Result<SimplicialMap> {
        if !same_set(&self.target, &m.target) {
            return Err(CoreError::Mismatch("maps have different targets".into()));
        }
        let mut preimage: HashMap<CellId, CellId> = HashMap::new();
        for (id, img) in m.assignment.iter().enumerate() {
            if !img.is_nondegenerate() || preimage.insert(img.cell, CellId(id)).is_some() {
                return Err(CoreError::Mismatch("factoring map is not a monomorphism".into()));
            }
        }
        let assignment = self
            .assignment
            .iter()
            .enumerate()
            .map(|(id, img)| {
                preimage
                    .get(&img.cell)
                    .map(|&c| SimplexRef::new(img.word, c))
                    .ok_or_else(|| CoreError::Mismatch(format!("cell {} leaves the image", self.source.label(CellId(id)))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap { source: self.source.clone(), target: m.source.clone(), assignment })
    }

    /// Whether distinct nondegenerate cells go to distinct nondegenerate cells.
    pub fn is_mono(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.assignment.iter().all(|img| img.is_nondegenerate() && seen.insert(img.cell))
    }
}

#[derive(Clone, Debug)]
pub enum IsoCheck {
    Yes(SimplicialMap),
    No(String),
}

impl IsoCheck {
    pub fn holds(&self) -> bool {
        matches!(self, IsoCheck::Yes(_))
    }
}

/// Checks `f(d_i c) = d_i f(c)` on every generator `c`.
pub fn validate_map(f: &SimplicialMap) -> ValidationReport {
    let mut report = ValidationReport::default();
    let (x, y) = (f.source(), f.target());
    for id in x.ids() {
        let cell = x.cell(id);
        let img = f.image_of_cell(id);
        let got = y.simplex_dim(&img);
        if got != cell.dim {
            report.issues.push(Issue::DimensionMismatch { cell: x.label(id), expected: cell.dim, found: got });
            continue;
        }
        if cell.dim == 0 {
            continue;
        }
        for (i, face) in cell.faces.iter().enumerate() {
            let lhs = f.apply(face);
            let rhs = y.face(&img, i);
            if lhs != rhs {
                report.issues.push(Issue::FaceMismatch {
                    cell: x.label(id),
                    face: i,
                    expected: describe(y, &rhs),
                    found: describe(y, &lhs),
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{standard_simplex, OrderedComplex};

    #[test]
    fn identity_and_terminal_maps_are_valid() {
        let d2 = Arc::new(standard_simplex(2));
        assert!(validate_map(&SimplicialMap::identity(d2.clone())).is_valid());
        let pt = Arc::new(standard_simplex(0));
        assert!(validate_map(&SimplicialMap::to_point(d2, pt)).is_valid());
    }

    #[test]
    fn swapping_vertex_images_breaks_faces() {
        let d1 = Arc::new(standard_simplex(1));
        // cells: 0, 1, 01
        let assignment = vec![SimplexRef::cell(CellId(1)), SimplexRef::cell(CellId(0)), SimplexRef::cell(CellId(2))];
        let f = SimplicialMap::new(d1.clone(), d1, assignment).unwrap();
        let report = validate_map(&f);
        assert_eq!(report.issues.len(), 2);
        assert!(report.issues.iter().all(|i| matches!(i, Issue::FaceMismatch { cell, .. } if cell == "01")));
    }

    #[test]
    fn iso_detection() {
        let d1 = Arc::new(standard_simplex(1));
        assert!(SimplicialMap::identity(d1.clone()).is_iso().holds());
        let pt = Arc::new(standard_simplex(0));
        match SimplicialMap::to_point(d1, pt).is_iso() {
            IsoCheck::No(why) => assert!(why.contains("cell counts")),
            IsoCheck::Yes(_) => panic!("Δ¹ → Δ⁰ is not an iso"),
        }
    }

    #[test]
    fn composition_of_coface_maps() {
        let d1 = OrderedComplex::simplex(1);
        let d2 = OrderedComplex::simplex(2);
        // δ^2 : Δ¹ → Δ² as the edge 01
        let assignment = d1
            .set
            .ids()
            .map(|c| {
                let vs = d1.vertices_of(&SimplexRef::cell(c));
                d2.simplex_of(&vs).unwrap()
            })
            .collect();
        let f = SimplicialMap::checked(d1.set.clone(), d2.set.clone(), assignment).unwrap();
        let id = SimplicialMap::identity(d2.set.clone());
        assert_eq!(id.compose(&f).unwrap(), f);
        assert!(f.is_mono());
    }
}
