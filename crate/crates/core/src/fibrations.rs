//! Inner horn filling: quasi-categories, inner fibrations and the fiberwise
//! criterion, each checked up to a dimension bound with explicit witnesses.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::correspondences::fiber;
use crate::error::{CoreError, Result};
use crate::simplicial::{Budget, CellId, FiniteSimplicialSet, OrderedComplex, SimplexRef, SimplicialMap};

/// A horn `Λ^n_k -> X`, given by its faces `x_i` for `i ≠ k`, optionally
/// lying over an `n`-simplex of a base.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HornProblem {
    pub n: usize,
    pub k: usize,
    /// `faces[i]` is `None` exactly at `i = k`.
    pub faces: Vec<Option<SimplexRef>>,
    pub base: Option<SimplexRef>,
}

impl HornProblem {
    /// Reads the faces off a map out of the horn `Λ^n_k`.
    pub fn from_map(horn_map: &SimplicialMap, n: usize, k: usize, base: Option<SimplexRef>) -> Result<Self> {
        if !(0 < k && k < n) {
            return Err(CoreError::Unsupported(format!("Λ^{n}_{k} is not an inner horn")));
        }
        let horn = OrderedComplex::horn(n, k);
        if horn_map.source().as_ref() != horn.set.as_ref() {
            return Err(CoreError::Mismatch(format!("map does not start at Λ^{n}_{k}")));
        }
        let faces = (0..=n)
            .map(|i| {
                (i != k).then(|| {
                    let vs: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
                    horn_map.image_of_cell(horn.cell_of(&vs).expect("face of the horn"))
                })
            })
            .collect();
        Ok(HornProblem { n, k, faces, base })
    }

    fn matches(&self, x: &FiniteSimplicialSet, candidate: &SimplexRef) -> bool {
        self.faces.iter().enumerate().all(|(i, f)| f.is_none_or(|f| x.face(candidate, i) == f))
    }
}

/// All `n`-simplices of `X` filling the horn (and lying over the base
/// simplex when a map `p` is given), found by scanning `X_n`.
pub fn horn_fillers(x: &FiniteSimplicialSet, p: Option<&SimplicialMap>, pr: &HornProblem) -> Vec<SimplexRef> {
    x.enumerate_simplices(pr.n)
        .into_iter()
        .filter(|c| pr.matches(x, c))
        .filter(|c| match (p, pr.base) {
            (Some(p), Some(b)) => p.apply(c) == b,
            _ => true,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FibrationReport {
    pub verdict: bool,
    /// Inclusive range of horn dimensions examined.
    pub checked_dims: (usize, usize),
    #[serde(skip)]
    pub failures: Vec<HornProblem>,
    pub failure_count: u64,
    pub horns_checked: u64,
    pub budget_exhausted: bool,
}

/// At most this many unfillable horns are kept as witnesses.
const WITNESS_LIMIT: usize = 32;

/// Per-dimension lookup tables of simplices by their faces.
struct FaceIndex {
    /// `by_face[a][d_a x]` lists the `(n-1)`-simplices `x` with that face.
    by_face: Vec<HashMap<SimplexRef, Vec<SimplexRef>>>,
}

impl FaceIndex {
    fn new(x: &FiniteSimplicialSet, m: usize) -> Self {
        let mut by_face = vec![HashMap::new(); m + 1];
        for s in x.enumerate_simplices(m) {
            for (a, table) in by_face.iter_mut().enumerate() {
                table.entry(x.face(&s, a)).or_insert_with(Vec::new).push(s);
            }
        }
        FaceIndex { by_face }
    }
}

/// Key of an `n`-simplex by all its faces except the `k`-th.
fn horn_key(x: &FiniteSimplicialSet, s: &SimplexRef, k: usize) -> Vec<SimplexRef> {
    let n = x.simplex_dim(s);
    (0..=n).filter(|&i| i != k).map(|i| x.face(s, i)).collect()
}

struct Checker<'a> {
    x: &'a FiniteSimplicialSet,
    p: Option<&'a SimplicialMap>,
    a: &'a FiniteSimplicialSet,
    budget: Budget,
    used: AtomicU64,
}

struct Outcome {
    failures: Vec<HornProblem>,
    failure_count: u64,
    horns: u64,
    exhausted: bool,
}

impl Checker<'_> {
    fn spend(&self, amount: u64) -> bool {
        self.used.fetch_add(amount, Ordering::Relaxed) + amount <= self.budget.limit
    }

    fn check(&self, n: usize, k: usize, lower: &FaceIndex) -> Outcome {
        let x = self.x;
        let mut fillers: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
        for s in x.enumerate_simplices(n) {
            fillers.entry(horn_key(x, &s, k)).or_default().push(s);
        }
        let mut bases: HashMap<Vec<SimplexRef>, Vec<SimplexRef>> = HashMap::new();
        if self.p.is_some() {
            for s in self.a.enumerate_simplices(n) {
                bases.entry(horn_key(self.a, &s, k)).or_default().push(s);
            }
        }
        let slots: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
        let mut out = Outcome { failures: Vec::new(), failure_count: 0, horns: 0, exhausted: false };
        let mut chosen: Vec<SimplexRef> = Vec::with_capacity(n);
        let all: Vec<SimplexRef> = x.enumerate_simplices(n - 1);
        self.extend(n, k, &slots, &all, lower, &mut chosen, &fillers, &bases, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        n: usize,
        k: usize,
        slots: &[usize],
        all: &[SimplexRef],
        lower: &FaceIndex,
        chosen: &mut Vec<SimplexRef>,
        fillers: &HashMap<Vec<SimplexRef>, Vec<SimplexRef>>,
        bases: &HashMap<Vec<SimplexRef>, Vec<SimplexRef>>,
        out: &mut Outcome,
    ) {
        if out.exhausted {
            return;
        }
        let depth = chosen.len();
        if depth == slots.len() {
            out.horns += 1;
            self.resolve(n, k, chosen, fillers, bases, out);
            return;
        }
        let b = slots[depth];
        // x_b must satisfy d_a x_b = d_{b-1} x_a for every earlier slot a
        let candidates: &[SimplexRef] = match depth {
            0 => all,
            _ => {
                let a0 = slots[0];
                let want = self.x.face(&chosen[0], b - 1);
                match lower.by_face[a0].get(&want) {
                    Some(v) => v,
                    None => return,
                }
            }
        };
        if !self.spend(candidates.len() as u64) {
            out.exhausted = true;
            return;
        }
        for cand in candidates {
            let ok = slots[..depth].iter().zip(chosen.iter()).all(|(&a, xa)| self.x.face(cand, a) == self.x.face(xa, b - 1));
            if ok {
                chosen.push(*cand);
                self.extend(n, k, slots, all, lower, chosen, fillers, bases, out);
                chosen.pop();
                if out.exhausted {
                    return;
                }
            }
        }
    }

    fn resolve(
        &self,
        n: usize,
        k: usize,
        chosen: &[SimplexRef],
        fillers: &HashMap<Vec<SimplexRef>, Vec<SimplexRef>>,
        bases: &HashMap<Vec<SimplexRef>, Vec<SimplexRef>>,
        out: &mut Outcome,
    ) {
        let found = fillers.get(chosen).map(Vec::as_slice).unwrap_or(&[]);
        let faces = |chosen: &[SimplexRef]| {
            let mut faces: Vec<Option<SimplexRef>> = chosen.iter().copied().map(Some).collect();
            faces.insert(k, None);
            faces
        };
        let record = |base: Option<SimplexRef>, out: &mut Outcome| {
            out.failure_count += 1;
            if out.failures.len() < WITNESS_LIMIT {
                out.failures.push(HornProblem { n, k, faces: faces(chosen), base });
            }
        };
        match self.p {
            None => {
                if found.is_empty() {
                    record(None, out);
                }
            }
            Some(p) => {
                let key: Vec<SimplexRef> = chosen.iter().map(|x| p.apply(x)).collect();
                for sigma in bases.get(&key).into_iter().flatten() {
                    if !found.iter().any(|f| p.apply(f) == *sigma) {
                        record(Some(*sigma), out);
                    }
                }
            }
        }
    }
}

fn run(
    x: &FiniteSimplicialSet,
    p: Option<&SimplicialMap>,
    a: &FiniteSimplicialSet,
    max_n: usize,
    budget: Budget,
) -> FibrationReport {
    let checker = Checker { x, p, a, budget, used: AtomicU64::new(0) };
    let problems: Vec<(usize, usize)> = (2..=max_n).flat_map(|n| (1..n).map(move |k| (n, k))).collect();
    let indexes: HashMap<usize, FaceIndex> =
        (2..=max_n).collect::<Vec<_>>().into_par_iter().map(|n| (n, FaceIndex::new(x, n - 1))).collect();
    let outcomes: Vec<Outcome> = problems.par_iter().map(|&(n, k)| checker.check(n, k, &indexes[&n])).collect();
    let mut failures = Vec::new();
    let (mut failure_count, mut horns, mut exhausted) = (0, 0, false);
    for o in outcomes {
        failures.extend(o.failures);
        failure_count += o.failure_count;
        horns += o.horns;
        exhausted |= o.exhausted;
    }
    failures.sort();
    failures.truncate(WITNESS_LIMIT);
    FibrationReport {
        verdict: failure_count == 0 && !exhausted,
        checked_dims: (2, max_n),
        failures,
        failure_count,
        horns_checked: horns,
        budget_exhausted: exhausted,
    }
}

/// Default horn dimension bound: two above the dimension of `X`.
pub fn default_max_n(x: &FiniteSimplicialSet) -> usize {
    x.dim().map_or(2, |d| d + 2)
}

pub fn is_quasi_category(x: &FiniteSimplicialSet, max_n: usize, budget: Budget) -> FibrationReport {
    run(x, None, x, max_n, budget)
}

pub fn is_inner_fibration(p: &SimplicialMap, max_n: usize, budget: Budget) -> FibrationReport {
    run(p.source(), Some(p), p.target(), max_n, budget)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberwiseReport {
    pub total: FibrationReport,
    /// Verdicts for the fibers over the nondegenerate simplices of the base.
    pub fibers: Vec<(usize, FibrationReport)>,
    pub total_verdict: bool,
    pub fibers_verdict: bool,
    pub agreement: bool,
}

/// Compares the inner fibration check on `p` with the checks on its fibers
/// `p^{-1}(σ) -> Δ^{dim σ}` over nondegenerate `σ`.
pub fn fiberwise_criterion(p: &SimplicialMap, max_n: usize, budget: Budget) -> Result<FiberwiseReport> {
    let total = is_inner_fibration(p, max_n, budget);
    let a: &Arc<FiniteSimplicialSet> = p.target();
    let fibers = a
        .ids()
        .collect::<Vec<CellId>>()
        .par_iter()
        .map(|&c| {
            let f = fiber(p, &SimplexRef::cell(c))?;
            Ok((c.0, is_inner_fibration(&f.corr.structure, max_n, budget)))
        })
        .collect::<Result<Vec<_>>>()?;
    let total_verdict = total.verdict;
    let fibers_verdict = fibers.iter().all(|(_, r)| r.verdict);
    let exhausted = total.budget_exhausted || fibers.iter().any(|(_, r)| r.budget_exhausted);
    Ok(FiberwiseReport { agreement: exhausted || total_verdict == fibers_verdict, total, fibers, total_verdict, fibers_verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::{delta_map_between, standard_simplex, DeltaMap};

    #[test]
    fn simplices_are_quasi_categories() {
        for n in 0..=4 {
            let x = standard_simplex(n);
            let report = is_quasi_category(&x, default_max_n(&x), Budget::DEFAULT);
            assert!(report.verdict, "Δ^{n}");
        }
    }

    #[test]
    fn horn_and_boundary_are_not() {
        let horn = OrderedComplex::horn(2, 1);
        let report = is_quasi_category(&horn.set, 4, Budget::DEFAULT);
        assert!(!report.verdict);
        // the identity horn is among the witnesses
        let e12 = SimplexRef::cell(horn.cell_of(&[1, 2]).unwrap());
        let e01 = SimplexRef::cell(horn.cell_of(&[0, 1]).unwrap());
        let witness = HornProblem { n: 2, k: 1, faces: vec![Some(e12), None, Some(e01)], base: None };
        assert!(report.failures.contains(&witness));
        assert!(horn_fillers(&horn.set, None, &witness).is_empty());
        let boundary = standard_simplex(2);
        let keep: Vec<_> = boundary.ids().filter(|c| boundary.cell(*c).dim < 2).collect();
        let (sub, _) = Arc::new(boundary).subcomplex(keep);
        assert!(!is_quasi_category(&sub, 4, Budget::DEFAULT).verdict);
    }

    #[test]
    fn identity_horn_into_a_triangle() {
        let d2 = OrderedComplex::simplex(2);
        let horn = OrderedComplex::horn(2, 1);
        let incl = delta_map_between(&DeltaMap::identity(2), &horn, &d2);
        let pr = HornProblem::from_map(&incl, 2, 1, None).unwrap();
        assert_eq!(horn_fillers(&d2.set, None, &pr), vec![SimplexRef::cell(d2.cell_of(&[0, 1, 2]).unwrap())]);
        let id = SimplicialMap::identity(horn.set.clone());
        let pr = HornProblem::from_map(&id, 2, 1, None).unwrap();
        assert!(horn_fillers(&horn.set, None, &pr).is_empty());
    }

    #[test]
    fn horn_inclusion_is_not_an_inner_fibration() {
        let d2 = OrderedComplex::simplex(2);
        let horn = OrderedComplex::horn(2, 1);
        let incl = delta_map_between(&DeltaMap::identity(2), &horn, &d2);
        let report = is_inner_fibration(&incl, 3, Budget::DEFAULT);
        assert!(!report.verdict);
        let top = SimplexRef::cell(d2.cell_of(&[0, 1, 2]).unwrap());
        assert!(report.failures.iter().any(|f| f.n == 2 && f.base == Some(top)));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let x = standard_simplex(3);
        let report = is_quasi_category(&x, 5, Budget::new(10));
        assert!(report.budget_exhausted && !report.verdict);
    }
}
