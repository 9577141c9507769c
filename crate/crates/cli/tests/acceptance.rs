//! One line per acceptance criterion. Suites go through the binary exactly as
//! a user would run them; each criterion also carries an oracle computed here
//! without the library's algorithm for the same quantity.

use std::collections::HashMap;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use corrkit_core::cat::{grothendieck, nerve, nerve_map, tensor_coend, FiniteCategory, Profunctor};
use corrkit_core::fibrations::{default_max_n, is_inner_fibration, is_quasi_category};
use corrkit_core::simplicial::{standard, Budget, DegeneracyWord, FiniteSimplicialSet, SimplexRef, Standard};
use corrkit_io::gen::{GenConfig, Generator};
use corrkit_io::runner::{generate, Instance, Suite};
use serde_json::Value;

const FIXTURE: &str = "fixtures/triangle_over_interval.json";

fn corrkit(args: &[&str]) -> (i32, Value) {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let out = Command::new(env!("CARGO_BIN_EXE_corrkit")).args(args).current_dir(root).output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), json)
}

fn counts(v: &Value) -> Vec<usize> {
    v.as_array().expect("counts").iter().map(|c| c.as_u64().unwrap() as usize).collect()
}

/// `passed/cases` of a suite run, or the reason it did not complete.
fn suite(name: &str, cases: u64, global: &[&str], local: &[&str]) -> Result<(), String> {
    let n = cases.to_string();
    let mut args = global.to_vec();
    args.extend(["proptest", name, "--cases", &n]);
    args.extend(local);
    let (code, r) = corrkit(&args);
    let passed = r["passed"].as_u64().unwrap_or(0);
    if code == 0 && passed == cases {
        Ok(())
    } else {
        Err(format!("{name}: {passed}/{cases}, exit {code}, failures {}", r["failures"]))
    }
}

/// Strict chains of a finite poset, counted by length.
fn chain_counts(n: usize, lt: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut ending = vec![vec![1usize; n]];
    loop {
        let last = ending.last().unwrap();
        let next: Vec<usize> = (0..n).map(|y| (0..n).filter(|&x| lt(x, y)).map(|x| last[x]).sum()).collect();
        if next.iter().all(|&c| c == 0) {
            break;
        }
        ending.push(next);
    }
    ending.iter().map(|r| r.iter().sum()).collect()
}

/// Pulling the ordinal map `f : [p] -> [q]` back along `g : [r] -> [q]` gives
/// the nerve of the poset `{(x, y) : f x = g y}`.
fn fiber_product_counts(f: &[usize], g: &[usize]) -> Vec<usize> {
    let pts: Vec<(usize, usize)> =
        (0..f.len()).flat_map(|x| (0..g.len()).map(move |y| (x, y))).filter(|&(x, y)| f[x] == g[y]).collect();
    chain_counts(pts.len(), |a, b| a != b && pts[a].0 <= pts[b].0 && pts[a].1 <= pts[b].1)
}

fn criterion_1() -> Result<(), String> {
    // a -> 0, b and c -> 1
    let f = [0, 1, 1];
    let (_, fibers) = corrkit(&["fiber", FIXTURE, "--cell", "0", "--cell", "1"]);
    let got: Vec<Vec<usize>> = fibers.as_array().ok_or("no fibers")?.iter().map(|x| counts(&x["counts"])).collect();
    let want = vec![fiber_product_counts(&f, &[0]), fiber_product_counts(&f, &[1])];
    if got != want || got[0][0] != 1 || got[1][0] != 2 {
        return Err(format!("fibers {got:?}, expected {want:?}"));
    }
    // faces pull back along cofaces [0] -> [1], degeneracies along [2] -> [1]
    let cases: [(&str, &str, &[usize]); 4] =
        [("face", "0", &[1]), ("face", "1", &[0]), ("degeneracy", "0", &[0, 0, 1]), ("degeneracy", "1", &[0, 1, 1])];
    for (op, i, along) in cases {
        let want = fiber_product_counts(&f, along);
        for route in [None, Some("--by-deletion")] {
            let mut args = vec![op, FIXTURE, i];
            args.extend(route);
            let (code, r) = corrkit(&args);
            let got = counts(&r["counts"]);
            if code != 0 || got != want {
                return Err(format!("{op} {i} {route:?}: {got:?}, expected {want:?}"));
            }
        }
    }
    // Δ¹, Δ⁰, Δ³ and the 5/9/7/2 complex
    let literal = [vec![2, 1], vec![1], vec![4, 6, 4, 1], vec![5, 9, 7, 2]];
    for ((op, i, along), want) in cases.iter().zip(literal) {
        if fiber_product_counts(&f, along) != want {
            return Err(format!("{op} {i}: oracle disagrees with {want:?}"));
        }
    }
    Ok(())
}

/// Coend cardinalities by a union-find over `Σ_d V(d, e) × U(c, d)`.
fn coend_sizes(v: &Profunctor, u: &Profunctor) -> HashMap<(usize, usize), usize> {
    let pairs: Vec<(usize, usize)> = (0..v.len())
        .flat_map(|y| (0..u.len()).map(move |x| (y, x)))
        .filter(|&(y, x)| v.element(y).src == u.element(x).tgt)
        .collect();
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    let mid = &u.tgt;
    for h in 0..mid.arrow_count() {
        let arrow = mid.arrow(h);
        for x in (0..u.len()).filter(|&x| u.element(x).tgt == arrow.src) {
            for y in (0..v.len()).filter(|&y| v.element(y).src == arrow.tgt) {
                // (y, h x) ~ (y h, x)
                let a = index[&(y, u.act_left(h, x))];
                let b = index[&(v.act_right(y, h), x)];
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra] = rb;
            }
        }
    }
    let mut classes: HashMap<(usize, usize), std::collections::HashSet<usize>> = HashMap::new();
    for (k, &(y, x)) in pairs.iter().enumerate() {
        let r = find(&mut parent, k);
        classes.entry((u.element(x).src, v.element(y).tgt)).or_default().insert(r);
    }
    classes.into_iter().map(|(k, s)| (k, s.len())).collect()
}

fn criterion_4() -> Result<(), String> {
    suite("tensor-equivalence", 50, &[], &[])?;
    let cfg = GenConfig::default();
    for i in 0..50 {
        let Instance::Profunctors { u, v } = generate(Suite::TensorEquivalence, &cfg.case(i)) else { unreachable!() };
        let t = tensor_coend(&v, &u).map_err(|e| e.to_string())?;
        let oracle = coend_sizes(&v, &u);
        for c in 0..u.src.object_count() {
            for e in 0..v.tgt.object_count() {
                let (got, want) = (t.profunctor.between(c, e).len(), oracle.get(&(c, e)).copied().unwrap_or(0));
                if got != want {
                    return Err(format!("case {i}: |(v ⊗ u)({c}, {e})| = {got}, oracle {want}"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_5() -> Result<(), String> {
    suite("fiberwise", 50, &[], &[])?;
    let cfg = GenConfig { max_objects: 3, ..GenConfig::default() };
    for i in 0..20 {
        let mut g = Generator::new(&cfg.case(i));
        let base = Arc::new(g.category());
        let d = g.cat_diagram(&base);
        let gro = grothendieck(&d).map_err(|e| e.to_string())?;
        let total = nerve(&gro.category, None).map_err(|e| e.to_string())?;
        let down = nerve(&base, None).map_err(|e| e.to_string())?;
        let p = nerve_map(&gro.projection, &total, &down).map_err(|e| e.to_string())?;
        let r = is_inner_fibration(&p, default_max_n(&total.set), Budget::DEFAULT);
        if !r.verdict || r.budget_exhausted {
            return Err(format!("Grothendieck case {i}: inner fibration verdict {}", r.verdict));
        }
    }
    Ok(())
}

/// All `k`-simplices of `y`, degenerate ones included, listed from masks.
fn all_simplices(y: &FiniteSimplicialSet, k: usize) -> Vec<SimplexRef> {
    let mut out = vec![];
    for c in y.ids() {
        let j = y.cell(c).dim;
        if j > k {
            continue;
        }
        for mask in 0u32..(1 << k) {
            if mask.count_ones() as usize == k - j {
                out.push(SimplexRef::new(DegeneracyWord::from_mask(mask), c));
            }
        }
    }
    out
}

/// Backtracking count of simplicial maps `x -> y`, one cell at a time in
/// dimension order.
fn brute_force_maps(x: &FiniteSimplicialSet, y: &FiniteSimplicialSet) -> u64 {
    let mut order: Vec<_> = x.ids().collect();
    order.sort_by_key(|&c| x.cell(c).dim);
    let candidates: Vec<Vec<SimplexRef>> = order.iter().map(|&c| all_simplices(y, x.cell(c).dim)).collect();
    fn go(
        k: usize,
        x: &FiniteSimplicialSet,
        y: &FiniteSimplicialSet,
        order: &[corrkit_core::simplicial::CellId],
        cands: &[Vec<SimplexRef>],
        img: &mut HashMap<corrkit_core::simplicial::CellId, SimplexRef>,
    ) -> u64 {
        if k == order.len() {
            return 1;
        }
        let cell = x.cell(order[k]);
        let mut total = 0;
        for s in &cands[k] {
            let fits = cell.faces.iter().enumerate().all(|(i, face)| {
                let base = img[&face.cell];
                let want = y.apply(&base, &face.word.surjection(y.simplex_dim(&base)));
                y.face(s, i) == want
            });
            if fits {
                img.insert(order[k], *s);
                total += go(k + 1, x, y, order, cands, img);
            }
        }
        total
    }
    go(0, x, y, &order, &candidates, &mut HashMap::new())
}

fn criterion_8() -> Result<(), String> {
    suite("hom-bijection", 20, &["--budget", "1000000"], &[])?;
    let cfg = GenConfig::default();
    for i in 0..20 {
        let Instance::CorrAndSet(x, y) = generate(Suite::HomBijection, &cfg.case(i)) else { unreachable!() };
        let (over, plain) =
            corrkit_core::correspondences::hom_bijection_counts(&x, &y, Budget::new(1_000_000)).map_err(|e| e.to_string())?;
        let oracle = brute_force_maps(&x.total, &y);
        if over != oracle || plain != oracle {
            return Err(format!("case {i}: {over} over the base, {plain} plain, brute force {oracle}"));
        }
    }
    Ok(())
}

fn quasicat_table() -> Result<(), String> {
    let mut shapes: Vec<(String, FiniteSimplicialSet, bool)> = vec![];
    for n in 0..=4 {
        shapes.push((format!("Δ^{n}"), standard(Standard::Simplex(n)).unwrap(), true));
    }
    shapes.push(("Λ²₁".into(), standard(Standard::Horn(2, 1)).unwrap(), false));
    shapes.push(("∂Δ²".into(), standard(Standard::Boundary(2)).unwrap(), false));
    let cfg = GenConfig::default();
    for i in 0..10 {
        let c: Arc<FiniteCategory> = Arc::new(Generator::new(&cfg.case(i)).category());
        let nv = nerve(&c, None).map_err(|e| e.to_string())?;
        shapes.push((format!("N(C{i})"), (*nv.set).clone(), true));
    }
    for (name, x, want) in shapes {
        let r = is_quasi_category(&x, default_max_n(&x), Budget::DEFAULT);
        if r.budget_exhausted || r.verdict != want {
            return Err(format!("{name}: verdict {}, expected {want}", r.verdict));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    type Check = Box<dyn Fn() -> Result<(), String>>;
    let criteria: Vec<(&str, Duration, Check)> = vec![
        ("1 worked example: fibers, faces, degeneracies", Duration::from_secs(1), Box::new(criterion_1)),
        ("2 roundtrip-sset 100/100", Duration::from_secs(60), Box::new(|| suite("roundtrip-sset", 100, &[], &[]))),
        (
            "3 roundtrip-cat 100/100",
            Duration::from_secs(60),
            Box::new(|| suite("roundtrip-cat", 100, &[], &["--max-objects", "8"])),
        ),
        ("4 tensor-equivalence 50/50, coend sizes", Duration::from_secs(60), Box::new(criterion_4)),
        ("5 fiberwise 50/50, 20 Grothendieck nerves", Duration::from_secs(120), Box::new(criterion_5)),
        ("6 gro-dcolim 50/50", Duration::from_secs(60), Box::new(|| suite("gro-dcolim", 50, &[], &[]))),
        ("7 weak simplicial identities 25/25", Duration::from_secs(60), Box::new(|| suite("weak-identities", 25, &[], &[]))),
        ("8 hom bijection 20/20, brute-force counts", Duration::from_secs(120), Box::new(criterion_8)),
        ("9 truncation stabilization 25/25", Duration::from_secs(60), Box::new(|| suite("stabilization", 25, &[], &[]))),
        ("quasi-category table", Duration::from_secs(60), Box::new(quasicat_table)),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let outcome = match result {
            Ok(()) if took <= limit => Ok(()),
            Ok(()) => Err(format!("took {took:?}, limit {limit:?}")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(()) => println!("[PASS] {name} ({} ms, limit {} s)", took.as_millis(), limit.as_secs()),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {name} ({} ms): {e}", took.as_millis());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
