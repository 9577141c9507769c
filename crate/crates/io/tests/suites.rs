use corrkit_core::correspondences::hom_bijection_counts;
use corrkit_core::fibrations::{default_max_n, fiberwise_criterion};
use corrkit_core::simplicial::Budget;
use corrkit_io::gen::GenConfig;
use corrkit_io::runner::{generate, run_suite, shrink_by, Instance, Suite};

#[test]
fn fiberwise_cases_cover_both_verdicts() {
    let cfg = GenConfig::default();
    let mut verdicts = [0usize; 2];
    for i in 0..30 {
        let Instance::Map(f) = generate(Suite::Fiberwise, &cfg.case(i)) else { unreachable!() };
        let r = fiberwise_criterion(&f, default_max_n(f.source()), Budget::DEFAULT).unwrap();
        verdicts[r.total_verdict as usize] += 1;
    }
    assert!(verdicts[0] > 0 && verdicts[1] > 0, "{verdicts:?}");
}

#[test]
fn hom_bijection_cases_are_not_all_trivial() {
    let cfg = GenConfig::default();
    let counts: Vec<u64> = (0..20)
        .map(|i| {
            let Instance::CorrAndSet(x, y) = generate(Suite::HomBijection, &cfg.case(i)) else { unreachable!() };
            hom_bijection_counts(&x, &y, Budget::new(1_000_000)).unwrap().1
        })
        .collect();
    assert!(counts.iter().filter(|&&c| c > 1).count() >= 10, "{counts:?}");
}

#[test]
fn shrinking_reaches_a_minimal_instance() {
    let has_triangle = |inst: &Instance| match inst {
        Instance::Map(f) => f.source().cells().iter().any(|c| c.dim >= 2),
        _ => false,
    };
    let cfg = GenConfig::default();
    let inst =
        (0..).map(|i| generate(Suite::RoundtripSset, &cfg.case(i))).find(|inst| has_triangle(inst) && inst.size() > 10).unwrap();
    let before = inst.size();
    let (small, steps) = shrink_by(inst, has_triangle);
    let Instance::Map(f) = &small else { unreachable!() };
    assert!(has_triangle(&small));
    assert!(steps > 0 && small.size() < before);
    // one maximal cell of dimension at least 2, everything else its faces
    let x = f.source();
    assert_eq!(x.maximal_cells().len(), 1);
    assert!(x.cell(x.maximal_cells()[0]).dim >= 2);
}

#[test]
fn reports_do_not_depend_on_scheduling() {
    let cfg = GenConfig { seed: 9, ..GenConfig::default() };
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| serde_json::to_string(&run_suite(Suite::RoundtripSset, 12, &cfg, Budget::DEFAULT)).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert!(!one.contains("time") && !one.contains("elapsed"));
}
