use std::io::{Read, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use corrkit_core::cat::{
    collage, companion, gro_vs_dcolim, grothendieck, is_grothendieck_fibration, nerve, nerve_map, roundtrip_cat, tensor_coend,
    tensor_geometric, FiniteCategory, FunctorData,
};
use corrkit_core::correspondences::{
    classifying_diagram, corr_degeneracy, corr_face, cotabulator, default_level, degeneracy_by_deletion, double_colimit,
    face_by_deletion, fiber, roundtrip_check, Correspondence, Derived,
};
use corrkit_core::fibrations::{
    default_max_n, fiberwise_criterion, is_inner_fibration, is_quasi_category, FibrationReport, HornProblem,
};
use corrkit_core::simplicial::{Budget, FiniteSimplicialSet, SimplexRef, SimplicialMap};
use corrkit_io::gen::{Generator, Strategy};
use corrkit_io::json::{
    cell_ids, corr_doc, functor_doc, map_doc, parse_document, profunctor_doc, sset_doc, to_canonical, Document,
};
use corrkit_io::runner::{run_suite, Suite};
use corrkit_io::{GenConfig, IoError};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "corrkit", version, about = "Simplicial sets, correspondences and profunctors on finite data")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 3)]
    max_dim: usize,
    /// Enumeration budget for map searches and horn checks.
    #[arg(long, global = true, env = "CORRKIT_BUDGET")]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Summary,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a document of any kind.
    Validate { file: String },
    /// Fibers of a map over cells of its base (all cells by default).
    Fiber {
        file: String,
        #[arg(long = "cell")]
        cells: Vec<String>,
    },
    /// The i-th face of a correspondence.
    Face {
        file: String,
        i: usize,
        /// Compute by vertex deletion instead of pullback.
        #[arg(long)]
        by_deletion: bool,
    },
    /// The j-th degeneracy of a correspondence.
    Degeneracy {
        file: String,
        j: usize,
        #[arg(long)]
        by_deletion: bool,
    },
    /// The cotabulator of a correspondence.
    Cotab { file: String },
    /// The double colimit of a diagram of correspondences, or of the
    /// classifying diagram of a map.
    Dcolim {
        file: String,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Compares a map with the double colimit of its classifying diagram.
    Roundtrip {
        file: String,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Inner horn filling for a simplicial set or the nerve of a category.
    IsQuasicat {
        file: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        witnesses: bool,
    },
    /// Inner horn lifting for a map or the nerve of a functor.
    IsInnerFib {
        file: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        witnesses: bool,
    },
    /// The inner fibration check on a map against the checks on its fibers.
    Fiberwise {
        file: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        witnesses: bool,
    },
    /// The nerve of a category.
    Nerve {
        file: String,
        #[arg(long)]
        up_to: Option<usize>,
    },
    /// Profunctor operations.
    Prof {
        #[command(subcommand)]
        op: ProfOp,
    },
    /// The Grothendieck construction of a diagram of categories.
    Gro { file: String },
    /// Compares the Grothendieck construction with the double colimit of
    /// the companion diagram.
    GroVsDcolim { file: String },
    /// Category-level operations.
    Cat {
        #[command(subcommand)]
        op: CatOp,
    },
    /// A seeded random instance.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 25)]
        max_cells: usize,
        #[arg(long, default_value_t = 8)]
        max_objects: usize,
        #[arg(long, default_value_t = 40)]
        max_arrows: usize,
        #[arg(long, default_value = "mixed")]
        strategy: Strategy,
        /// Base dimension of a generated correspondence.
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Runs a seeded property suite.
    Proptest {
        suite: String,
        #[arg(long, default_value_t = 100)]
        cases: u64,
        #[arg(long, default_value_t = 25)]
        max_cells: usize,
        #[arg(long, default_value_t = 8)]
        max_objects: usize,
    },
}

#[derive(Subcommand)]
enum ProfOp {
    /// The collage of a profunctor with its projection to [1].
    Collage { file: String },
    /// `v ⊗ u` for `u : C -|-> D` and `v : D -|-> E`.
    Tensor {
        v: String,
        u: String,
        #[arg(long, value_enum, default_value_t = TensorMethod::Coend)]
        method: TensorMethod,
    },
    /// The companion profunctor of a functor.
    Companion { file: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TensorMethod {
    Coend,
    Geometric,
}

#[derive(Subcommand)]
enum CatOp {
    /// Compares a functor with the double colimit of its classifying diagram.
    Roundtrip { file: String },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Sset,
    Map,
    Correspondence,
    Category,
    Functor,
    Profunctor,
    CatDiagram,
}

/// The result of a command: JSON, a one-line summary and an exit code.
struct Output {
    json: Value,
    summary: String,
    code: u8,
}

impl Output {
    fn ok(json: Value, summary: impl Into<String>) -> Self {
        Output { json, summary: summary.into(), code: 0 }
    }

    fn verdict(json: Value, summary: impl Into<String>, holds: bool) -> Self {
        Output { json, summary: summary.into(), code: if holds { 0 } else { 1 } }
    }
}

type Res = Result<Output, IoError>;

fn read(file: &str) -> Result<Document, IoError> {
    let text = if file == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|source| IoError::File { path: "-".into(), source })?;
        s
    } else {
        std::fs::read_to_string(file).map_err(|source| IoError::File { path: file.into(), source })?
    };
    parse_document(&text)
}

fn wrong_kind(doc: &Document, want: &str) -> IoError {
    IoError::Schema { path: "$".into(), message: format!("expected a {want}, found a {}", doc.kind()) }
}

/// A correspondence counts as its structure map.
fn read_map(file: &str) -> Result<SimplicialMap, IoError> {
    match read(file)? {
        Document::Map(f) => Ok(f),
        Document::Correspondence(c) => Ok(c.structure),
        other => Err(wrong_kind(&other, "map")),
    }
}

fn read_corr(file: &str) -> Result<Correspondence, IoError> {
    match read(file)? {
        Document::Correspondence(c) => Ok(c),
        other => Err(wrong_kind(&other, "correspondence")),
    }
}

fn read_category(file: &str) -> Result<FiniteCategory, IoError> {
    match read(file)? {
        Document::Category(c) => Ok(c),
        other => Err(wrong_kind(&other, "category")),
    }
}

fn read_functor(file: &str) -> Result<FunctorData, IoError> {
    match read(file)? {
        Document::Functor(f) => Ok(f),
        other => Err(wrong_kind(&other, "functor")),
    }
}

fn doc_value<T: serde::Serialize>(doc: &T) -> Value {
    serde_json::to_value(doc).expect("documents serialize")
}

fn counts(x: &FiniteSimplicialSet) -> Vec<usize> {
    x.cell_counts()
}

fn horn_json(x: &FiniteSimplicialSet, h: &HornProblem) -> Value {
    let ids = cell_ids(x);
    let face = |s: &SimplexRef| json!([s.word.indices(), ids[s.cell.0]]);
    json!({
        "n": h.n,
        "k": h.k,
        "faces": h.faces.iter().map(|f| f.as_ref().map(face)).collect::<Vec<_>>(),
    })
}

fn fibration_json(x: &FiniteSimplicialSet, r: &FibrationReport, witnesses: bool) -> Value {
    let mut v = doc_value(r);
    if witnesses {
        v["witnesses"] = Value::Array(r.failures.iter().map(|h| horn_json(x, h)).collect());
    }
    v
}

fn derived_output(d: &Derived, what: String) -> Output {
    let c = counts(&d.corr.total);
    Output::ok(json!({ "counts": c, "correspondence": doc_value(&corr_doc(&d.corr)) }), format!("{what}: cell counts {c:?}"))
}

fn run(cli: Cli) -> Res {
    let budget = cli.budget.map(Budget::new).unwrap_or(Budget::DEFAULT);
    match cli.command {
        Command::Validate { file } => {
            let doc = read(&file)?;
            let id = corrkit_io::workspace::content_id(&doc.to_canonical());
            Ok(Output::ok(json!({ "kind": doc.kind(), "valid": true, "id": id }), format!("valid {} ({id})", doc.kind())))
        }
        Command::Fiber { file, cells } => {
            let f = match read(&file)? {
                Document::Map(f) => f,
                Document::Correspondence(c) => c.structure,
                other => return Err(wrong_kind(&other, "map or correspondence")),
            };
            let a = f.target();
            let ids = cell_ids(a);
            let chosen: Vec<usize> = if cells.is_empty() {
                (0..a.len()).collect()
            } else {
                cells
                    .iter()
                    .map(|c| {
                        ids.iter()
                            .position(|i| i == c)
                            .ok_or_else(|| IoError::Schema { path: "--cell".into(), message: format!("no base cell {c:?}") })
                    })
                    .collect::<Result<_, _>>()?
            };
            let mut out = Vec::new();
            let mut lines = Vec::new();
            for k in chosen {
                let d = fiber(&f, &SimplexRef::cell(corrkit_core::simplicial::CellId(k)))?;
                let c = counts(&d.corr.total);
                lines.push(format!("fiber over {}: cell counts {c:?}", ids[k]));
                out.push(json!({ "cell": ids[k], "counts": c, "fiber": doc_value(&corr_doc(&d.corr)) }));
            }
            Ok(Output::ok(Value::Array(out), lines.join("\n")))
        }
        Command::Face { file, i, by_deletion } => {
            let x = read_corr(&file)?;
            let d = if by_deletion { face_by_deletion(&x, i)? } else { corr_face(&x, i)? };
            Ok(derived_output(&d, format!("d{i}")))
        }
        Command::Degeneracy { file, j, by_deletion } => {
            let x = read_corr(&file)?;
            let d = if by_deletion { degeneracy_by_deletion(&x, j)? } else { corr_degeneracy(&x, j)? };
            Ok(derived_output(&d, format!("s{j}")))
        }
        Command::Cotab { file } => {
            let x = read_corr(&file)?;
            let (set, t) = cotabulator(&x);
            let c = counts(&set);
            Ok(Output::ok(
                json!({ "set": doc_value(&sset_doc(&set)), "structure": doc_value(&map_doc(&t.components[0].1)) }),
                format!("cotabulator: cell counts {c:?}"),
            ))
        }
        Command::Dcolim { file, level } => {
            let d = match read(&file)? {
                Document::CorrDiagram(d) => d,
                Document::Map(f) | Document::Correspondence(Correspondence { structure: f, .. }) => {
                    classifying_diagram(&f, level.unwrap_or_else(|| default_level(f.target())))?.diagram
                }
                other => return Err(wrong_kind(&other, "corr-diagram or map")),
            };
            let q = double_colimit(&d)?;
            let c = counts(&q.set);
            Ok(Output::ok(
                json!({ "level": q.level, "set": doc_value(&sset_doc(&q.set)) }),
                format!("double colimit: cell counts {c:?}"),
            ))
        }
        Command::Roundtrip { file, level } => {
            let f = read_map(&file)?;
            let r = roundtrip_check(&f, level.unwrap_or_else(|| default_level(f.target())))?;
            let v =
                json!({ "holds": r.holds(), "is_iso": r.is_iso, "over_base": r.over_base, "level": r.level, "detail": r.detail });
            Ok(Output::verdict(
                v,
                format!("roundtrip at level {}: {}", r.level, if r.holds() { "isomorphic over the base" } else { "fails" }),
                r.holds(),
            ))
        }
        Command::IsQuasicat { file, max_n, witnesses } => {
            let x = match read(&file)? {
                Document::SSet(x) => Arc::new(x),
                Document::Category(c) => nerve(&Arc::new(c), None)?.set,
                other => return Err(wrong_kind(&other, "sset or category")),
            };
            let r = is_quasi_category(&x, max_n.unwrap_or_else(|| default_max_n(&x)), budget);
            fibration_output(&x, &r, witnesses, "quasi-category")
        }
        Command::IsInnerFib { file, max_n, witnesses } => {
            let p = match read(&file)? {
                Document::Map(f) | Document::Correspondence(Correspondence { structure: f, .. }) => f,
                Document::Functor(f) => {
                    let (ns, nt) = (nerve(&f.src, None)?, nerve(&f.tgt, None)?);
                    nerve_map(&f, &ns, &nt)?
                }
                other => return Err(wrong_kind(&other, "map or functor")),
            };
            let r = is_inner_fibration(&p, max_n.unwrap_or_else(|| default_max_n(p.source())), budget);
            fibration_output(p.source(), &r, witnesses, "inner fibration")
        }
        Command::Fiberwise { file, max_n, witnesses } => {
            let p = read_map(&file)?;
            let r = fiberwise_criterion(&p, max_n.unwrap_or_else(|| default_max_n(p.source())), budget)?;
            let mut v = doc_value(&r);
            v["total"] = fibration_json(p.source(), &r.total, witnesses);
            let s = format!(
                "total {} / fibers {}: {}",
                r.total_verdict,
                r.fibers_verdict,
                if r.agreement { "agree" } else { "disagree" }
            );
            Ok(Output::verdict(v, s, r.agreement))
        }
        Command::Nerve { file, up_to } => {
            let c = Arc::new(read_category(&file)?);
            let n = nerve(&c, up_to)?;
            let k = counts(&n.set);
            Ok(Output::ok(doc_value(&sset_doc(&n.set)), format!("nerve: cell counts {k:?}")))
        }
        Command::Prof { op } => prof(op),
        Command::Gro { file } => {
            let d = match read(&file)? {
                Document::CatDiagram(d) => d,
                other => return Err(wrong_kind(&other, "cat-diagram")),
            };
            let g = grothendieck(&d)?;
            let verdict = is_grothendieck_fibration(&g.projection);
            let v = json!({ "projection": doc_value(&functor_doc(&g.projection)), "fibration": verdict.holds });
            let s = format!(
                "Gro: {} objects, {} arrows; fibration: {}",
                g.category.object_count(),
                g.category.arrow_count(),
                verdict.holds
            );
            Ok(Output::ok(v, s))
        }
        Command::GroVsDcolim { file } => {
            let d = match read(&file)? {
                Document::CatDiagram(d) => d,
                other => return Err(wrong_kind(&other, "cat-diagram")),
            };
            let r = gro_vs_dcolim(&d)?;
            let v = json!({ "holds": r.holds, "comparison": doc_value(&functor_doc(&r.comparison)) });
            Ok(Output::verdict(
                v,
                format!("dcolim vs Gro: {}", if r.holds { "isomorphic over the base" } else { "differ" }),
                r.holds,
            ))
        }
        Command::Cat { op: CatOp::Roundtrip { file } } => {
            let f = read_functor(&file)?;
            let r = roundtrip_cat(&f)?;
            let v = json!({ "holds": r.holds(), "is_iso": r.is_iso, "over_base": r.over_base });
            Ok(Output::verdict(
                v,
                format!("functor roundtrip: {}", if r.holds() { "isomorphic over the base" } else { "fails" }),
                r.holds(),
            ))
        }
        Command::Gen { kind, max_cells, max_objects, max_arrows, strategy, n } => {
            let cfg = GenConfig { seed: cli.seed, max_dim: cli.max_dim, max_cells, max_objects, max_arrows, strategy };
            cfg.validate().map_err(|message| IoError::Schema { path: "config".into(), message })?;
            let mut g = Generator::new(&cfg);
            let doc = match kind {
                GenKind::Sset => Document::SSet(g.sset()),
                GenKind::Map => {
                    let base = GenConfig { max_cells: max_cells.min(6), ..cfg.clone() };
                    let a = Arc::new(Generator::new(&base).sset());
                    Document::Map(g.map_over(&a))
                }
                GenKind::Correspondence => Document::Correspondence(g.correspondence(n)),
                GenKind::Category => Document::Category(g.category()),
                GenKind::Functor => {
                    let a = Arc::new(g.category());
                    Document::Functor(g.functor_over(&a))
                }
                GenKind::Profunctor => {
                    let (c, d) = (Arc::new(g.category()), Arc::new(g.category()));
                    Document::Profunctor(g.profunctor(&c, &d))
                }
                GenKind::CatDiagram => {
                    g.cfg.max_objects = max_objects.min(3);
                    let a = Arc::new(g.category());
                    Document::CatDiagram(g.cat_diagram(&a))
                }
            };
            let text = doc.to_canonical();
            let id = corrkit_io::workspace::content_id(&text);
            let value: Value = serde_json::from_str(&text).expect("canonical text is JSON");
            Ok(Output::ok(value, format!("generated {} ({id})", doc.kind())))
        }
        Command::Proptest { suite, cases, max_cells, max_objects } => {
            let suite: Suite = suite.parse()?;
            let cfg = GenConfig { seed: cli.seed, max_dim: cli.max_dim, max_cells, max_objects, ..GenConfig::default() };
            cfg.validate().map_err(|message| IoError::Schema { path: "config".into(), message })?;
            let report = run_suite(suite, cases, &cfg, budget);
            Ok(Output { json: doc_value(&report), summary: report.summary(), code: report.exit_code() as u8 })
        }
    }
}

fn fibration_output(x: &FiniteSimplicialSet, r: &FibrationReport, witnesses: bool, what: &str) -> Res {
    let v = fibration_json(x, r, witnesses);
    let s = format!(
        "{what}: {} (horn dims {}..={}, {} horns, {} unfillable{})",
        if r.verdict { "yes" } else { "no" },
        r.checked_dims.0,
        r.checked_dims.1,
        r.horns_checked,
        r.failure_count,
        if r.budget_exhausted { ", budget exhausted" } else { "" }
    );
    Ok(Output {
        json: v,
        summary: s,
        code: if r.budget_exhausted {
            2
        } else if r.verdict {
            0
        } else {
            1
        },
    })
}

fn prof(op: ProfOp) -> Res {
    let read_prof = |file: &str| match read(file)? {
        Document::Profunctor(u) => Ok(u),
        other => Err(wrong_kind(&other, "profunctor")),
    };
    match op {
        ProfOp::Collage { file } => {
            let u = read_prof(&file)?;
            let c = collage(&u);
            let s = format!("collage: {} objects, {} arrows", c.category.object_count(), c.category.arrow_count());
            Ok(Output::ok(json!({ "projection": doc_value(&functor_doc(&c.projection)) }), s))
        }
        ProfOp::Tensor { v, u, method } => {
            let (v, u) = (read_prof(&v)?, read_prof(&u)?);
            let (p, agrees) = match method {
                TensorMethod::Coend => (tensor_coend(&v, &u)?.profunctor, None),
                TensorMethod::Geometric => {
                    let g = tensor_geometric(&v, &u)?;
                    (g.profunctor, Some(g.agrees.err()))
                }
            };
            let mut out = json!({ "tensor": doc_value(&profunctor_doc(&p)) });
            let mut s = format!("v ⊗ u: {} elements", p.len());
            let mut holds = true;
            if let Some(err) = agrees {
                holds = err.is_none();
                out["agrees_with_coend"] = json!(holds);
                out["detail"] = json!(err);
                s.push_str(if holds { "; isomorphic to the coend" } else { "; differs from the coend" });
            }
            Ok(Output::verdict(out, s, holds))
        }
        ProfOp::Companion { file } => {
            let f = read_functor(&file)?;
            let p = companion(&f);
            Ok(Output::ok(doc_value(&profunctor_doc(&p)), format!("companion: {} elements", p.len())))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            let text = match format {
                Format::Json => to_canonical(&out.json),
                Format::Summary => out.summary,
            };
            // a closed pipe downstream is not our failure
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
