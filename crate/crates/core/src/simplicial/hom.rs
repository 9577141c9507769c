use std::collections::HashMap;
use std::sync::Arc;

use super::limits::product;
use super::map::SimplicialMap;
use super::sset::{CellId, FiniteSimplicialSet, OrderedComplex, SimplexRef};
use crate::error::{CoreError, Result};

/// Upper bound on candidate assignments tried by an exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Budget {
    pub const DEFAULT: Budget = Budget { limit: 1_000_000 };

    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

type Constraint<'a> = Box<dyn Fn(CellId, &SimplexRef) -> bool + Sync + 'a>;

/// Backtracking enumeration of simplicial maps `X -> Y`: cells are assigned
/// in order of dimension, and each cell may only go to simplices whose
/// faces are the images of its faces.
pub struct MapSearch<'a> {
    source: Arc<FiniteSimplicialSet>,
    target: Arc<FiniteSimplicialSet>,
    budget: Budget,
    constraint: Option<Constraint<'a>>,
}

impl<'a> MapSearch<'a> {
    pub fn new(source: &Arc<FiniteSimplicialSet>, target: &Arc<FiniteSimplicialSet>, budget: Budget) -> Self {
        MapSearch { source: source.clone(), target: target.clone(), budget, constraint: None }
    }

    /// Restricts the admissible image of each cell.
    pub fn with_constraint(mut self, allowed: impl Fn(CellId, &SimplexRef) -> bool + Sync + 'a) -> Self {
        self.constraint = Some(Box::new(allowed));
        self
    }

    /// Calls `visit` on the assignment of every map; returns the number of
    /// candidates tried.
    pub fn for_each(&self, mut visit: impl FnMut(&[SimplexRef])) -> Result<u64> {
        let x = &self.source;
        let mut order: Vec<CellId> = x.ids().collect();
        order.sort_by_key(|c| (x.cell(*c).dim, *c));
        let mut index: HashMap<usize, HashMap<Vec<SimplexRef>, Vec<SimplexRef>>> = HashMap::new();
        for c in &order {
            let d = x.cell(*c).dim;
            index.entry(d).or_insert_with(|| {
                let mut by_faces: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
                for s in self.target.enumerate_simplices(d) {
                    by_faces.entry(self.target.faces(&s)).or_default().push(s);
                }
                by_faces
            });
        }
        let mut assignment = vec![SimplexRef::cell(CellId(usize::MAX)); x.len()];
        let mut tried = 0u64;
        self.search(0, &order, &index, &mut assignment, &mut tried, &mut visit)?;
        Ok(tried)
    }

    fn search(
        &self,
        depth: usize,
        order: &[CellId],
        index: &HashMap<usize, HashMap<Vec<SimplexRef>, Vec<SimplexRef>>>,
        assignment: &mut Vec<SimplexRef>,
        tried: &mut u64,
        visit: &mut impl FnMut(&[SimplexRef]),
    ) -> Result<()> {
        let Some(&c) = order.get(depth) else {
            visit(assignment);
            return Ok(());
        };
        let cell = self.source.cell(c);
        let key: Vec<SimplexRef> = cell.faces.iter().map(|f| assignment[f.cell.0].degenerate(f.word)).collect();
        let Some(candidates) = index[&cell.dim].get(&key) else { return Ok(()) };
        for cand in candidates {
            *tried += 1;
            if *tried > self.budget.limit {
                return Err(CoreError::BudgetExceeded { limit: self.budget.limit });
            }
            if let Some(allowed) = &self.constraint {
                if !allowed(c, cand) {
                    continue;
                }
            }
            assignment[c.0] = *cand;
            self.search(depth + 1, order, index, assignment, tried, visit)?;
        }
        Ok(())
    }

    pub fn collect(&self) -> Result<Vec<SimplicialMap>> {
        let mut out = Vec::new();
        self.for_each(|a| out.push(a.to_vec()))?;
        Ok(out
            .into_iter()
            .map(|a| SimplicialMap::new(self.source.clone(), self.target.clone(), a).expect("search yields maps"))
            .collect())
    }

    pub fn count(&self) -> Result<u64> {
        let mut n = 0u64;
        self.for_each(|_| n += 1)?;
        Ok(n)
    }
}

pub fn enumerate_maps(x: &Arc<FiniteSimplicialSet>, y: &Arc<FiniteSimplicialSet>, budget: Budget) -> Result<Vec<SimplicialMap>> {
    MapSearch::new(x, y, budget).collect()
}

pub fn count_maps(x: &Arc<FiniteSimplicialSet>, y: &Arc<FiniteSimplicialSet>, budget: Budget) -> Result<u64> {
    MapSearch::new(x, y, budget).count()
}

/// The `n`-simplices of the function complex `Map(X, Y)`, i.e. all maps
/// `X × Δ^n -> Y`.
pub fn function_complex_level(
    x: &Arc<FiniteSimplicialSet>,
    y: &Arc<FiniteSimplicialSet>,
    n: usize,
    budget: Budget,
) -> Result<Vec<SimplicialMap>> {
    let cyl = product(x, &OrderedComplex::simplex(n).set);
    enumerate_maps(&cyl.set, y, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{standard_simplex, validate_map};

    fn arc(n: usize) -> Arc<FiniteSimplicialSet> {
        Arc::new(standard_simplex(n))
    }

    #[test]
    fn maps_from_a_point_are_simplices() {
        let y = Arc::new(OrderedComplex::horn(3, 1).set.as_ref().clone());
        for n in 0..4 {
            let maps = function_complex_level(&arc(0), &y, n, Budget::DEFAULT).unwrap();
            assert_eq!(maps.len(), y.enumerate_simplices(n).len());
        }
    }

    #[test]
    fn self_maps_of_the_interval() {
        let maps = function_complex_level(&arc(1), &arc(1), 0, Budget::DEFAULT).unwrap();
        assert_eq!(maps.len(), 3);
        assert!(maps.iter().all(|m| validate_map(m).is_valid()));
    }

    #[test]
    fn maps_to_the_point_are_unique() {
        let x = Arc::new(OrderedComplex::horn(2, 1).set.as_ref().clone());
        for n in 0..3 {
            assert_eq!(function_complex_level(&x, &arc(0), n, Budget::DEFAULT).unwrap().len(), 1);
        }
    }

    #[test]
    fn maps_between_simplices_are_monotone_maps() {
        // oracle: simplicial maps Δ^m → Δ^n are monotone maps [m] → [n]
        for m in 0..3 {
            for n in 0..3 {
                let expected = crate::simplicial::DeltaMap::all(m, n).len() as u64;
                assert_eq!(count_maps(&arc(m), &arc(n), Budget::DEFAULT).unwrap(), expected);
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = count_maps(&arc(2), &arc(3), Budget::new(5)).unwrap_err();
        assert_eq!(err, CoreError::BudgetExceeded { limit: 5 });
    }
}
