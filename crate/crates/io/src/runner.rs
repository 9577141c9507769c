//! Seeded property suites for the main comparisons, run case-parallel with
//! greedy shrinking of failures.

use std::str::FromStr;
use std::sync::Arc;

use corrkit_core::cat::{
    gro_vs_dcolim, left_unit_iso, right_unit_iso, roundtrip_cat, tensor_coend, tensor_geometric, CatDiagram, FiniteCategory,
    FunctorData, Profunctor,
};
use corrkit_core::correspondences::{
    default_level, hom_bijection_counts, roundtrip_check, stabilization_check, weak_simplicial_identities_check, Correspondence,
};
use corrkit_core::fibrations::{default_max_n, fiberwise_criterion};
use corrkit_core::simplicial::{Budget, FiniteSimplicialSet, SimplicialMap};
use corrkit_core::CoreError;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::IoError;
use crate::gen::{GenConfig, Generator};
use crate::json::{cat_diagram_doc, corr_doc, functor_doc, map_doc, profunctor_doc, sset_doc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    RoundtripSset,
    RoundtripCat,
    TensorEquivalence,
    Fiberwise,
    GroDcolim,
    WeakIdentities,
    Stabilization,
    HomBijection,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::RoundtripSset,
        Suite::RoundtripCat,
        Suite::TensorEquivalence,
        Suite::Fiberwise,
        Suite::GroDcolim,
        Suite::WeakIdentities,
        Suite::Stabilization,
        Suite::HomBijection,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::RoundtripSset => "roundtrip-sset",
            Suite::RoundtripCat => "roundtrip-cat",
            Suite::TensorEquivalence => "tensor-equivalence",
            Suite::Fiberwise => "fiberwise",
            Suite::GroDcolim => "gro-dcolim",
            Suite::WeakIdentities => "weak-identities",
            Suite::Stabilization => "stabilization",
            Suite::HomBijection => "hom-bijection",
        }
    }
}

impl FromStr for Suite {
    type Err = IoError;

    fn from_str(s: &str) -> Result<Self, IoError> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| IoError::UnknownSuite(s.to_string()))
    }
}

/// One generated input.
#[derive(Clone, Debug)]
pub enum Instance {
    Map(SimplicialMap),
    Functor(FunctorData),
    Profunctors { u: Profunctor, v: Profunctor },
    Diagram(CatDiagram),
    Corr(Correspondence),
    CorrAndSet(Correspondence, Arc<FiniteSimplicialSet>),
}

impl Instance {
    pub fn to_json(&self) -> Value {
        fn doc<T: Serialize>(x: &T) -> Value {
            serde_json::to_value(x).expect("documents serialize")
        }
        match self {
            Instance::Map(f) => doc(&map_doc(f)),
            Instance::Functor(f) => doc(&functor_doc(f)),
            Instance::Profunctors { u, v: w } => json!({ "u": doc(&profunctor_doc(u)), "v": doc(&profunctor_doc(w)) }),
            Instance::Diagram(d) => doc(&cat_diagram_doc(d)),
            Instance::Corr(c) => doc(&corr_doc(c)),
            Instance::CorrAndSet(c, y) => json!({ "x": doc(&corr_doc(c)), "y": doc(&sset_doc(y)) }),
        }
    }

    /// A size measure: cells of the total space or objects of the source.
    pub fn size(&self) -> usize {
        match self {
            Instance::Map(f) => f.source().len(),
            Instance::Functor(f) => f.src.object_count(),
            Instance::Profunctors { u, v } => u.len() + v.len(),
            Instance::Diagram(d) => d.fibers.iter().map(|c| c.object_count()).sum(),
            Instance::Corr(c) | Instance::CorrAndSet(c, _) => c.total.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    /// The check could not finish, e.g. an exhausted budget.
    Error(String),
}

fn verdict(r: corrkit_core::Result<Verdict>) -> Verdict {
    r.unwrap_or_else(|e: CoreError| Verdict::Error(e.to_string()))
}

fn pass_if(ok: bool, why: impl FnOnce() -> String) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail(why())
    }
}

/// Draws the instance for one case. Bases are kept small; the spaces over
/// them use the full bounds of `cfg`.
pub fn generate(suite: Suite, cfg: &GenConfig) -> Instance {
    let mut g = Generator::new(cfg);
    let small = |g: &mut Generator, cells: usize, objects: usize| {
        g.cfg.max_cells = cfg.max_cells.min(cells);
        g.cfg.max_objects = cfg.max_objects.min(objects);
    };
    let restore = |g: &mut Generator| g.cfg = cfg.clone();
    match suite {
        Suite::RoundtripSset | Suite::Stabilization | Suite::Fiberwise => {
            small(&mut g, 6, usize::MAX);
            let a = Arc::new(g.sset());
            restore(&mut g);
            Instance::Map(g.map_over(&a))
        }
        Suite::RoundtripCat => {
            small(&mut g, usize::MAX, 4);
            let a = Arc::new(g.category());
            restore(&mut g);
            Instance::Functor(g.functor_over(&a))
        }
        Suite::TensorEquivalence => {
            small(&mut g, usize::MAX, 3);
            g.cfg.max_arrows = 10;
            let cats: Vec<Arc<FiniteCategory>> = (0..3).map(|_| Arc::new(g.category())).collect();
            let u = g.profunctor(&cats[0], &cats[1]);
            let v = g.profunctor(&cats[1], &cats[2]);
            Instance::Profunctors { u, v }
        }
        Suite::GroDcolim => {
            small(&mut g, usize::MAX, 3);
            let a = Arc::new(g.category());
            Instance::Diagram(g.cat_diagram(&a))
        }
        Suite::WeakIdentities => {
            let n = g.rng().gen_range(0..=cfg.max_dim);
            small(&mut g, 12, usize::MAX);
            Instance::Corr(g.correspondence(n))
        }
        Suite::HomBijection => {
            let n = g.rng().gen_range(0..=cfg.max_dim.min(2));
            small(&mut g, 7, usize::MAX);
            let x = g.correspondence(n);
            small(&mut g, 4, usize::MAX);
            let y = Arc::new(g.sset());
            Instance::CorrAndSet(x, y)
        }
    }
}

pub fn check(suite: Suite, inst: &Instance, budget: Budget) -> Verdict {
    match (suite, inst) {
        (Suite::RoundtripSset, Instance::Map(f)) => verdict(roundtrip_check(f, default_level(f.target())).map(|r| {
            pass_if(r.holds(), || {
                format!(
                    "comparison is_iso={} over_base={}{}",
                    r.is_iso,
                    r.over_base,
                    r.detail.map(|d| format!(": {d}")).unwrap_or_default()
                )
            })
        })),
        (Suite::Stabilization, Instance::Map(f)) => {
            verdict(stabilization_check(f, default_level(f.target())).map(|ok| pass_if(ok, || "truncations disagree".into())))
        }
        (Suite::Fiberwise, Instance::Map(f)) => verdict(fiberwise_criterion(f, default_max_n(f.source()), budget).map(|r| {
            if r.total.budget_exhausted || r.fibers.iter().any(|(_, x)| x.budget_exhausted) {
                Verdict::Error("horn budget exhausted".into())
            } else {
                pass_if(r.agreement, || format!("total says {} but fibers say {}", r.total_verdict, r.fibers_verdict))
            }
        })),
        (Suite::RoundtripCat, Instance::Functor(f)) => verdict(
            roundtrip_cat(f).map(|r| pass_if(r.holds(), || format!("comparison is_iso={} over_base={}", r.is_iso, r.over_base))),
        ),
        (Suite::TensorEquivalence, Instance::Profunctors { u, v }) => verdict((|| {
            tensor_coend(v, u)?;
            let geo = tensor_geometric(v, u)?;
            if let Err(e) = geo.agrees {
                return Ok(Verdict::Fail(format!("coend and geometric composite differ: {e}")));
            }
            for (name, w) in [("u", u), ("v", v)] {
                if let Err(e) = left_unit_iso(w) {
                    return Ok(Verdict::Fail(format!("hom ⊗ {name}: {e}")));
                }
                if let Err(e) = right_unit_iso(w) {
                    return Ok(Verdict::Fail(format!("{name} ⊗ hom: {e}")));
                }
            }
            Ok(Verdict::Pass)
        })()),
        (Suite::GroDcolim, Instance::Diagram(d)) => {
            verdict(gro_vs_dcolim(d).map(|r| pass_if(r.holds, || "comparison is not an isomorphism over the base".into())))
        }
        (Suite::WeakIdentities, Instance::Corr(x)) => verdict(weak_simplicial_identities_check(x).map(|checks| {
            let bad: Vec<String> = checks.into_iter().filter(|c| !c.holds).map(|c| c.identity).collect();
            pass_if(bad.is_empty(), || format!("failing identities: {}", bad.join(", ")))
        })),
        (Suite::HomBijection, Instance::CorrAndSet(x, y)) => verdict(
            hom_bijection_counts(x, y, budget)
                .map(|(over, plain)| pass_if(over == plain, || format!("{over} maps over the base, {plain} plain"))),
        ),
        _ => Verdict::Error("instance does not match the suite".into()),
    }
}

/// Smaller instances: the total space minus one maximal cell, or the source
/// category minus one object.
fn shrink_candidates(inst: &Instance) -> Vec<Instance> {
    let without = |x: &Arc<FiniteSimplicialSet>| -> Vec<(Arc<FiniteSimplicialSet>, SimplicialMap)> {
        let max = x.maximal_cells();
        max.iter().map(|&c| x.subcomplex(x.ids().filter(|&k| k != c))).collect()
    };
    match inst {
        Instance::Map(f) => without(f.source()).into_iter().filter_map(|(_, i)| f.compose(&i).ok()).map(Instance::Map).collect(),
        Instance::Corr(c) | Instance::CorrAndSet(c, _) => without(&c.total)
            .into_iter()
            .filter_map(|(sub, i)| Correspondence::new(sub, c.n, c.structure.compose(&i).ok()?).ok())
            .map(|c2| match inst {
                Instance::CorrAndSet(_, y) => Instance::CorrAndSet(c2, y.clone()),
                _ => Instance::Corr(c2),
            })
            .collect(),
        Instance::Functor(f) => (0..f.src.object_count())
            .filter_map(|drop| {
                let objs: Vec<usize> = (0..f.src.object_count()).filter(|&o| o != drop).collect();
                let arrs: Vec<usize> =
                    (0..f.src.arrow_count()).filter(|&a| f.src.arrow(a).src != drop && f.src.arrow(a).tgt != drop).collect();
                let (sub, objs, arrs) = f.src.subcategory(&objs, &arrs).ok()?;
                FunctorData::new(
                    Arc::new(sub),
                    f.tgt.clone(),
                    objs.iter().map(|&o| f.objects[o]).collect(),
                    arrs.iter().map(|&a| f.arrows[a]).collect(),
                )
                .ok()
            })
            .map(Instance::Functor)
            .collect(),
        _ => vec![],
    }
}

/// Greedily replaces `inst` by smaller instances on which `fails` still
/// holds, removing one maximal cell or object at a time.
pub fn shrink_by(mut inst: Instance, fails: impl Fn(&Instance) -> bool) -> (Instance, usize) {
    let mut steps = 0;
    'outer: loop {
        for cand in shrink_candidates(&inst) {
            if fails(&cand) {
                inst = cand;
                steps += 1;
                continue 'outer;
            }
        }
        return (inst, steps);
    }
}

pub fn shrink(suite: Suite, inst: Instance, budget: Budget) -> (Instance, usize) {
    shrink_by(inst, |c| matches!(check(suite, c, budget), Verdict::Fail(_)))
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseFailure {
    pub index: u64,
    pub seed: u64,
    pub detail: String,
    pub shrink_steps: usize,
    pub counterexample: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub config: GenConfig,
    pub cases: u64,
    pub passed: u64,
    pub failed: u64,
    pub errors: u64,
    pub failures: Vec<CaseFailure>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.passed == self.cases
    }

    /// 0 when every case passes, 1 on a property failure, 2 when a case
    /// could not be decided.
    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            1
        } else if self.errors > 0 {
            2
        } else {
            0
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {}/{} passed, {} failed, {} undecided (seed {})",
            self.suite.name(),
            self.passed,
            self.cases,
            self.failed,
            self.errors,
            self.config.seed
        );
        for f in &self.failures {
            s.push_str(&format!("\n  case {} (seed {}): {}", f.index, f.seed, f.detail));
        }
        s
    }
}

/// Runs `cases` seeded cases concurrently; the report lists them in case
/// order whatever the scheduling.
pub fn run_suite(suite: Suite, cases: u64, cfg: &GenConfig, budget: Budget) -> SuiteReport {
    let outcomes: Vec<(u64, u64, Verdict, Instance)> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let case = cfg.case(i);
            let inst = generate(suite, &case);
            (i, case.seed, check(suite, &inst, budget), inst)
        })
        .collect();
    let mut report = SuiteReport { suite, config: cfg.clone(), cases, passed: 0, failed: 0, errors: 0, failures: vec![] };
    for (index, seed, v, inst) in outcomes {
        match v {
            Verdict::Pass => report.passed += 1,
            Verdict::Fail(detail) => {
                report.failed += 1;
                let (small, shrink_steps) = shrink(suite, inst, budget);
                let detail = match check(suite, &small, budget) {
                    Verdict::Fail(d) => d,
                    _ => detail,
                };
                report.failures.push(CaseFailure { index, seed, detail, shrink_steps, counterexample: small.to_json() });
            }
            Verdict::Error(detail) => {
                report.errors += 1;
                report.failures.push(CaseFailure { index, seed, detail, shrink_steps: 0, counterexample: inst.to_json() });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_roundtrip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn shrinking_keeps_the_failure() {
        let cfg = GenConfig { seed: 3, ..GenConfig::default() };
        let Instance::Map(f) = generate(Suite::RoundtripSset, &cfg) else { unreachable!() };
        assert!(f.source().cell_counts().len() > 1);
        let cands = shrink_candidates(&Instance::Map(f.clone()));
        assert!(cands.iter().all(|c| c.size() < f.source().len()));
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = GenConfig { seed: 11, ..GenConfig::default() };
        let a = run_suite(Suite::GroDcolim, 4, &cfg, Budget::DEFAULT);
        let b = run_suite(Suite::GroDcolim, 4, &cfg, Budget::DEFAULT);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(a.all_passed(), "{}", a.summary());
    }
}
