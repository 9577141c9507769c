//! JSON documents for every value type, with canonical serialization.
//!
//! Cells, objects, arrows and elements are referred to by string ids. Words
//! are arrays of degeneracy indices in presentation order.

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;
use std::sync::Arc;

use corrkit_core::cat::{
    validate_category, validate_diagram, Arrow, CatDiagram, Element, FiniteCategory, FunctorData, Profunctor,
};
use corrkit_core::correspondences::{Action, CorrDiagram, Correspondence};
use corrkit_core::simplicial::{
    validate_map, validate_sset, Cell, CellId, DegeneracyWord, FiniteSimplicialSet, Operator, OrderedComplex, SimplexRef,
    SimplicialMap,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{IoError, Result};

pub type Word = Vec<usize>;
pub type Assignment = BTreeMap<String, (Word, String)>;
type Triples = Vec<(String, String, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDoc {
    pub id: String,
    pub dim: usize,
    pub faces: Vec<(Word, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetDoc {
    pub cells: Vec<CellDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: SSetDoc,
    pub target: SSetDoc,
    pub assignment: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrDoc {
    pub total: SSetDoc,
    pub n: usize,
    pub structure: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub simplex: (Word, String),
    pub correspondence: CorrDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub word: String,
    pub from: usize,
    pub to: usize,
    pub map: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrDiagramDoc {
    pub base: SSetDoc,
    pub level: usize,
    pub entries: Vec<EntryDoc>,
    pub actions: Vec<ActionDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
    pub comp: Triples,
    pub ids: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorMapsDoc {
    pub objects: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDoc {
    pub source: CategoryDoc,
    pub target: CategoryDoc,
    pub objects: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementsDoc {
    pub c: String,
    pub d: String,
    pub xs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfunctorDoc {
    pub src: CategoryDoc,
    pub tgt: CategoryDoc,
    pub elements: Vec<ElementsDoc>,
    pub lact: Triples,
    pub ract: Triples,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatDiagramDoc {
    pub base: CategoryDoc,
    pub fibers: BTreeMap<String, CategoryDoc>,
    pub functors: BTreeMap<String, FunctorMapsDoc>,
}

/// Compact JSON with keys in sorted order.
pub fn to_canonical<T: Serialize>(value: &T) -> String {
    // serde_json's map type is ordered unless `preserve_order` is enabled
    let v = serde_json::to_value(value).expect("documents serialize");
    serde_json::to_string(&v).expect("values serialize")
}

fn schema(path: impl Into<String>, message: impl Into<String>) -> IoError {
    IoError::Schema { path: path.into(), message: message.into() }
}

/// Deserializes with the JSON path of the first schema violation.
pub fn from_value<T: DeserializeOwned>(value: Value) -> Result<T> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let path = e.path().to_string();
        schema(if path == "." { "$".to_string() } else { format!("$.{path}") }, e.into_inner().to_string())
    })
}

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| schema("$", format!("not JSON: {e}")))
}

fn index_of(ids: &[String], path: &str) -> Result<HashMap<String, usize>> {
    let mut out = HashMap::new();
    for (k, id) in ids.iter().enumerate() {
        if out.insert(id.clone(), k).is_some() {
            return Err(schema(format!("{path}[{k}]"), format!("duplicate id {id:?}")));
        }
    }
    Ok(out)
}

fn lookup(index: &HashMap<String, usize>, id: &str, path: &str) -> Result<usize> {
    index.get(id).copied().ok_or_else(|| schema(path, format!("unknown id {id:?}")))
}

fn word(w: &[usize], path: &str) -> Result<DegeneracyWord> {
    DegeneracyWord::from_indices(w).map_err(|e| schema(path, e.to_string()))
}

// ---- simplicial sets -------------------------------------------------------

/// Cell ids: labels when they are present and distinct, else `#k`.
pub fn cell_ids(x: &FiniteSimplicialSet) -> Vec<String> {
    let labels: Vec<Option<String>> = x.cells().iter().map(|c| c.label.clone()).collect();
    let mut seen = std::collections::HashSet::new();
    if labels.iter().all(|l| matches!(l, Some(s) if !s.is_empty() && !s.starts_with('#') && seen.insert(s.clone()))) {
        labels.into_iter().map(Option::unwrap).collect()
    } else {
        (0..labels.len()).map(|k| format!("#{k}")).collect()
    }
}

fn simplex_doc(ids: &[String], s: &SimplexRef) -> (Word, String) {
    (s.word.indices(), ids[s.cell.0].clone())
}

pub fn sset_doc(x: &FiniteSimplicialSet) -> SSetDoc {
    let ids = cell_ids(x);
    let cells = x
        .cells()
        .iter()
        .enumerate()
        .map(|(k, c)| CellDoc { id: ids[k].clone(), dim: c.dim, faces: c.faces.iter().map(|f| simplex_doc(&ids, f)).collect() })
        .collect();
    SSetDoc { cells }
}

pub fn sset_from_doc(doc: &SSetDoc, path: &str) -> Result<FiniteSimplicialSet> {
    let ids: Vec<String> = doc.cells.iter().map(|c| c.id.clone()).collect();
    let index = index_of(&ids, &format!("{path}.cells"))?;
    let mut cells = Vec::with_capacity(doc.cells.len());
    for (k, c) in doc.cells.iter().enumerate() {
        let faces = c
            .faces
            .iter()
            .enumerate()
            .map(|(i, (w, id))| {
                let p = format!("{path}.cells[{k}].faces[{i}]");
                Ok(SimplexRef::new(word(w, &p)?, CellId(lookup(&index, id, &p)?)))
            })
            .collect::<Result<Vec<_>>>()?;
        cells.push(Cell { dim: c.dim, faces, label: Some(c.id.clone()) });
    }
    let x = FiniteSimplicialSet::new(cells).map_err(|e| schema(path, e.to_string()))?;
    validate_sset(&x).into_result("simplicial set").map_err(|e| schema(path, e.to_string()))?;
    Ok(x)
}

fn assignment_doc(src_ids: &[String], tgt_ids: &[String], images: &[SimplexRef]) -> Assignment {
    images.iter().enumerate().map(|(k, s)| (src_ids[k].clone(), simplex_doc(tgt_ids, s))).collect()
}

fn assignment_from_doc(
    doc: &Assignment,
    source: &FiniteSimplicialSet,
    target: &FiniteSimplicialSet,
    path: &str,
) -> Result<Vec<SimplexRef>> {
    let src_ids = cell_ids(source);
    let tgt_index = index_of(&cell_ids(target), path)?;
    if let Some(extra) = doc.keys().find(|k| !src_ids.contains(k)) {
        return Err(schema(format!("{path}.{extra}"), "not a cell of the source"));
    }
    src_ids
        .iter()
        .map(|id| {
            let p = format!("{path}.{id}");
            let (w, t) = doc.get(id).ok_or_else(|| schema(path, format!("cell {id:?} has no image")))?;
            Ok(SimplexRef::new(word(w, &p)?, CellId(lookup(&tgt_index, t, &p)?)))
        })
        .collect()
}

pub fn map_doc(f: &SimplicialMap) -> MapDoc {
    let (s, t) = (cell_ids(f.source()), cell_ids(f.target()));
    MapDoc { source: sset_doc(f.source()), target: sset_doc(f.target()), assignment: assignment_doc(&s, &t, f.assignment()) }
}

pub fn map_from_doc(doc: &MapDoc, path: &str) -> Result<SimplicialMap> {
    let source = Arc::new(sset_from_doc(&doc.source, &format!("{path}.source"))?);
    let target = Arc::new(sset_from_doc(&doc.target, &format!("{path}.target"))?);
    map_between(&doc.assignment, source, target, &format!("{path}.assignment"))
}

fn map_between(
    doc: &Assignment,
    source: Arc<FiniteSimplicialSet>,
    target: Arc<FiniteSimplicialSet>,
    path: &str,
) -> Result<SimplicialMap> {
    let images = assignment_from_doc(doc, &source, &target, path)?;
    let f = SimplicialMap::new(source, target, images).map_err(|e| schema(path, e.to_string()))?;
    validate_map(&f).into_result("simplicial map").map_err(|e| schema(path, e.to_string()))?;
    Ok(f)
}

// ---- correspondences -------------------------------------------------------

pub fn corr_doc(x: &Correspondence) -> CorrDoc {
    let (s, t) = (cell_ids(&x.total), cell_ids(x.structure.target()));
    CorrDoc { total: sset_doc(&x.total), n: x.n, structure: assignment_doc(&s, &t, x.structure.assignment()) }
}

pub fn corr_from_doc(doc: &CorrDoc, path: &str) -> Result<Correspondence> {
    let total = Arc::new(sset_from_doc(&doc.total, &format!("{path}.total"))?);
    let delta = OrderedComplex::simplex(doc.n).set;
    let structure = map_between(&doc.structure, total.clone(), delta, &format!("{path}.structure"))?;
    Correspondence::new(total, doc.n, structure).map_err(|e| schema(path, e.to_string()))
}

pub fn corr_diagram_doc(d: &CorrDiagram) -> CorrDiagramDoc {
    let base_ids = cell_ids(&d.base);
    let entries =
        d.entries.iter().map(|(s, c)| EntryDoc { simplex: simplex_doc(&base_ids, s), correspondence: corr_doc(c) }).collect();
    let actions = d
        .actions
        .iter()
        .map(|a| {
            let (s, t) = (cell_ids(&d.entries[a.from].1.total), cell_ids(&d.entries[a.to].1.total));
            ActionDoc { word: a.op.to_string(), from: a.from, to: a.to, map: assignment_doc(&s, &t, a.map.assignment()) }
        })
        .collect();
    CorrDiagramDoc { base: sset_doc(&d.base), level: d.level, entries, actions }
}

pub fn corr_diagram_from_doc(doc: &CorrDiagramDoc, path: &str) -> Result<CorrDiagram> {
    let base = Arc::new(sset_from_doc(&doc.base, &format!("{path}.base"))?);
    let base_index = index_of(&cell_ids(&base), &format!("{path}.base"))?;
    let mut entries = Vec::new();
    for (k, e) in doc.entries.iter().enumerate() {
        let p = format!("{path}.entries[{k}]");
        let s = SimplexRef::new(word(&e.simplex.0, &p)?, CellId(lookup(&base_index, &e.simplex.1, &format!("{p}.simplex"))?));
        entries.push((s, corr_from_doc(&e.correspondence, &format!("{p}.correspondence"))?));
    }
    let mut actions = Vec::new();
    for (k, a) in doc.actions.iter().enumerate() {
        let p = format!("{path}.actions[{k}]");
        let op = Operator::from_str(&a.word).map_err(|e| schema(format!("{p}.word"), e.to_string()))?;
        let (from, to) = (entries.get(a.from), entries.get(a.to));
        let (Some(from), Some(to)) = (from, to) else {
            return Err(schema(p, "action refers to a missing entry"));
        };
        let map = map_between(&a.map, from.1.total.clone(), to.1.total.clone(), &format!("{p}.map"))?;
        actions.push(Action { op, from: a.from, to: a.to, map });
    }
    let d = CorrDiagram { base, level: doc.level, entries, actions };
    d.validate().map_err(|e| schema(path, e.to_string()))?;
    Ok(d)
}

// ---- categories ------------------------------------------------------------

pub fn category_doc(c: &FiniteCategory) -> CategoryDoc {
    let name = |a: usize| c.arrow(a).name.clone();
    CategoryDoc {
        objects: c.objects().to_vec(),
        arrows: c
            .arrows()
            .iter()
            .map(|a| ArrowDoc { id: a.name.clone(), src: c.objects()[a.src].clone(), tgt: c.objects()[a.tgt].clone() })
            .collect(),
        comp: c.composites().into_iter().map(|(g, f, gf)| (name(g), name(f), name(gf))).collect(),
        ids: c.ids().iter().enumerate().map(|(o, &i)| (c.objects()[o].clone(), name(i))).collect(),
    }
}

pub fn category_from_doc(doc: &CategoryDoc, path: &str) -> Result<FiniteCategory> {
    let objects = index_of(&doc.objects, &format!("{path}.objects"))?;
    let arrow_ids: Vec<String> = doc.arrows.iter().map(|a| a.id.clone()).collect();
    let arrows = index_of(&arrow_ids, &format!("{path}.arrows"))?;
    let data = doc
        .arrows
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let p = format!("{path}.arrows[{k}]");
            Ok(Arrow {
                name: a.id.clone(),
                src: lookup(&objects, &a.src, &format!("{p}.src"))?,
                tgt: lookup(&objects, &a.tgt, &format!("{p}.tgt"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ids = doc
        .objects
        .iter()
        .map(|o| {
            let a = doc.ids.get(o).ok_or_else(|| schema(format!("{path}.ids"), format!("object {o:?} has no identity")))?;
            lookup(&arrows, a, &format!("{path}.ids.{o}"))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(extra) = doc.ids.keys().find(|k| !objects.contains_key(*k)) {
        return Err(schema(format!("{path}.ids.{extra}"), "not an object"));
    }
    let comp = doc
        .comp
        .iter()
        .enumerate()
        .map(|(k, (g, f, gf))| {
            let p = format!("{path}.comp[{k}]");
            Ok((lookup(&arrows, g, &p)?, lookup(&arrows, f, &p)?, lookup(&arrows, gf, &p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = FiniteCategory::from_parts(doc.objects.clone(), data, ids, &comp).map_err(|e| schema(path, e.to_string()))?;
    validate_category(&c).into_result("category").map_err(|e| schema(path, e.to_string()))?;
    Ok(c)
}

fn maps_doc(f: &FunctorData) -> FunctorMapsDoc {
    FunctorMapsDoc {
        objects: f.objects.iter().enumerate().map(|(k, &o)| (f.src.objects()[k].clone(), f.tgt.objects()[o].clone())).collect(),
        arrows: f.arrows.iter().enumerate().map(|(k, &a)| (f.src.arrow(k).name.clone(), f.tgt.arrow(a).name.clone())).collect(),
    }
}

fn functor_between(doc: &FunctorMapsDoc, src: Arc<FiniteCategory>, tgt: Arc<FiniteCategory>, path: &str) -> Result<FunctorData> {
    let resolve = |map: &BTreeMap<String, String>, from: Vec<String>, to: Vec<String>, what: &str| -> Result<Vec<usize>> {
        let to_index = index_of(&to, path)?;
        if let Some(extra) = map.keys().find(|k| !from.contains(k)) {
            return Err(schema(format!("{path}.{what}.{extra}"), "not in the source"));
        }
        from.iter()
            .map(|k| {
                let v = map.get(k).ok_or_else(|| schema(format!("{path}.{what}"), format!("{k:?} has no image")))?;
                lookup(&to_index, v, &format!("{path}.{what}.{k}"))
            })
            .collect()
    };
    let objects = resolve(&doc.objects, src.objects().to_vec(), tgt.objects().to_vec(), "objects")?;
    let names = |c: &FiniteCategory| c.arrows().iter().map(|a| a.name.clone()).collect::<Vec<_>>();
    let arrows = resolve(&doc.arrows, names(&src), names(&tgt), "arrows")?;
    FunctorData::new(src, tgt, objects, arrows).map_err(|e| schema(path, e.to_string()))
}

pub fn functor_doc(f: &FunctorData) -> FunctorDoc {
    let m = maps_doc(f);
    FunctorDoc { source: category_doc(&f.src), target: category_doc(&f.tgt), objects: m.objects, arrows: m.arrows }
}

pub fn functor_from_doc(doc: &FunctorDoc, path: &str) -> Result<FunctorData> {
    let src = Arc::new(category_from_doc(&doc.source, &format!("{path}.source"))?);
    let tgt = Arc::new(category_from_doc(&doc.target, &format!("{path}.target"))?);
    let maps = FunctorMapsDoc { objects: doc.objects.clone(), arrows: doc.arrows.clone() };
    functor_between(&maps, src, tgt, path)
}

// by name, so the text does not depend on element order
fn sorted(mut v: Triples) -> Triples {
    v.sort();
    v
}

pub fn profunctor_doc(u: &Profunctor) -> ProfunctorDoc {
    let mut groups: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for e in u.elements() {
        groups.entry((e.src, e.tgt)).or_default().push(e.name.clone());
    }
    let elements = groups
        .into_iter()
        .map(|((c, d), xs)| ElementsDoc { c: u.src.objects()[c].clone(), d: u.tgt.objects()[d].clone(), xs })
        .collect();
    let (left, right) = u.actions();
    let el = |x: usize| u.element(x).name.clone();
    ProfunctorDoc {
        src: category_doc(&u.src),
        tgt: category_doc(&u.tgt),
        elements,
        lact: sorted(left.into_iter().map(|(g, x, y)| (u.tgt.arrow(g).name.clone(), el(x), el(y))).collect()),
        ract: sorted(right.into_iter().map(|(x, f, y)| (el(x), u.src.arrow(f).name.clone(), el(y))).collect()),
    }
}

pub fn profunctor_from_doc(doc: &ProfunctorDoc, path: &str) -> Result<Profunctor> {
    let c = Arc::new(category_from_doc(&doc.src, &format!("{path}.src"))?);
    let d = Arc::new(category_from_doc(&doc.tgt, &format!("{path}.tgt"))?);
    let c_obj = index_of(c.objects(), path)?;
    let d_obj = index_of(d.objects(), path)?;
    let mut elements = Vec::new();
    for (k, g) in doc.elements.iter().enumerate() {
        let p = format!("{path}.elements[{k}]");
        let (src, tgt) = (lookup(&c_obj, &g.c, &format!("{p}.c"))?, lookup(&d_obj, &g.d, &format!("{p}.d"))?);
        elements.extend(g.xs.iter().map(|x| Element { name: x.clone(), src, tgt }));
    }
    let names: Vec<String> = elements.iter().map(|e| e.name.clone()).collect();
    let el = index_of(&names, &format!("{path}.elements"))?;
    let arrow_index = |cat: &FiniteCategory| -> HashMap<String, usize> {
        cat.arrows().iter().enumerate().map(|(k, a)| (a.name.clone(), k)).collect()
    };
    let (c_arr, d_arr) = (arrow_index(&c), arrow_index(&d));
    let left = doc
        .lact
        .iter()
        .enumerate()
        .map(|(k, (g, x, y))| {
            let p = format!("{path}.lact[{k}]");
            Ok((lookup(&d_arr, g, &p)?, lookup(&el, x, &p)?, lookup(&el, y, &p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let right = doc
        .ract
        .iter()
        .enumerate()
        .map(|(k, (x, f, y))| {
            let p = format!("{path}.ract[{k}]");
            Ok((lookup(&el, x, &p)?, lookup(&c_arr, f, &p)?, lookup(&el, y, &p)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Profunctor::new(c, d, elements, &left, &right).map_err(|e| schema(path, e.to_string()))
}

pub fn cat_diagram_doc(d: &CatDiagram) -> CatDiagramDoc {
    CatDiagramDoc {
        base: category_doc(&d.base),
        fibers: d.fibers.iter().enumerate().map(|(o, c)| (d.base.objects()[o].clone(), category_doc(c))).collect(),
        functors: d.functors.iter().enumerate().map(|(a, f)| (d.base.arrow(a).name.clone(), maps_doc(f))).collect(),
    }
}

pub fn cat_diagram_from_doc(doc: &CatDiagramDoc, path: &str) -> Result<CatDiagram> {
    let base = Arc::new(category_from_doc(&doc.base, &format!("{path}.base"))?);
    let fibers = base
        .objects()
        .iter()
        .map(|o| {
            let c = doc.fibers.get(o).ok_or_else(|| schema(format!("{path}.fibers"), format!("object {o:?} has no fiber")))?;
            Ok(Arc::new(category_from_doc(c, &format!("{path}.fibers.{o}"))?))
        })
        .collect::<Result<Vec<_>>>()?;
    let functors = base
        .arrows()
        .iter()
        .map(|a| {
            let m = doc
                .functors
                .get(&a.name)
                .ok_or_else(|| schema(format!("{path}.functors"), format!("arrow {:?} has no functor", a.name)))?;
            functor_between(m, fibers[a.src].clone(), fibers[a.tgt].clone(), &format!("{path}.functors.{}", a.name))
        })
        .collect::<Result<Vec<_>>>()?;
    let d = CatDiagram { base, fibers, functors };
    validate_diagram(&d).into_result("diagram").map_err(|e| schema(path, e.to_string()))?;
    Ok(d)
}

// ---- documents of unknown kind --------------------------------------------

/// Any parsed value, recognized by its top-level keys.
#[derive(Clone, Debug)]
pub enum Document {
    SSet(FiniteSimplicialSet),
    Map(SimplicialMap),
    Correspondence(Correspondence),
    CorrDiagram(CorrDiagram),
    Category(FiniteCategory),
    Functor(FunctorData),
    Profunctor(Profunctor),
    CatDiagram(CatDiagram),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::SSet(_) => "sset",
            Document::Map(_) => "map",
            Document::Correspondence(_) => "correspondence",
            Document::CorrDiagram(_) => "corr-diagram",
            Document::Category(_) => "category",
            Document::Functor(_) => "functor",
            Document::Profunctor(_) => "profunctor",
            Document::CatDiagram(_) => "cat-diagram",
        }
    }

    pub fn to_canonical(&self) -> String {
        match self {
            Document::SSet(x) => to_canonical(&sset_doc(x)),
            Document::Map(f) => to_canonical(&map_doc(f)),
            Document::Correspondence(c) => to_canonical(&corr_doc(c)),
            Document::CorrDiagram(d) => to_canonical(&corr_diagram_doc(d)),
            Document::Category(c) => to_canonical(&category_doc(c)),
            Document::Functor(f) => to_canonical(&functor_doc(f)),
            Document::Profunctor(u) => to_canonical(&profunctor_doc(u)),
            Document::CatDiagram(d) => to_canonical(&cat_diagram_doc(d)),
        }
    }
}

pub fn detect_kind(v: &Value) -> Option<&'static str> {
    let obj = v.as_object()?;
    let has = |k: &str| obj.contains_key(k);
    Some(if has("cells") {
        "sset"
    } else if has("assignment") {
        "map"
    } else if has("total") {
        "correspondence"
    } else if has("entries") && has("actions") {
        "corr-diagram"
    } else if has("comp") {
        "category"
    } else if has("source") && has("objects") {
        "functor"
    } else if has("elements") {
        "profunctor"
    } else if has("fibers") && has("functors") {
        "cat-diagram"
    } else {
        return None;
    })
}

pub fn parse_document(text: &str) -> Result<Document> {
    let v = parse_value(text)?;
    let kind = detect_kind(&v).ok_or_else(|| schema("$", "unrecognized document kind"))?;
    parse_as(v, kind)
}

pub fn parse_as(v: Value, kind: &str) -> Result<Document> {
    Ok(match kind {
        "sset" => Document::SSet(sset_from_doc(&from_value(v)?, "$")?),
        "map" => Document::Map(map_from_doc(&from_value(v)?, "$")?),
        "correspondence" => Document::Correspondence(corr_from_doc(&from_value(v)?, "$")?),
        "corr-diagram" => Document::CorrDiagram(corr_diagram_from_doc(&from_value(v)?, "$")?),
        "category" => Document::Category(category_from_doc(&from_value(v)?, "$")?),
        "functor" => Document::Functor(functor_from_doc(&from_value(v)?, "$")?),
        "profunctor" => Document::Profunctor(profunctor_from_doc(&from_value(v)?, "$")?),
        "cat-diagram" => Document::CatDiagram(cat_diagram_from_doc(&from_value(v)?, "$")?),
        other => return Err(schema("$", format!("unknown document kind {other:?}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use corrkit_core::simplicial::standard_simplex;

    #[test]
    fn interval_roundtrip_is_byte_stable() {
        let text = to_canonical(&sset_doc(&standard_simplex(1)));
        assert_eq!(
            text,
            r#"{"cells":[{"dim":0,"faces":[],"id":"0"},{"dim":0,"faces":[],"id":"1"},{"dim":1,"faces":[[[],"1"],[[],"0"]],"id":"01"}]}"#
        );
        let back = parse_document(&text).unwrap();
        assert_eq!(back.to_canonical(), text);
    }

    #[test]
    fn face_arity_errors_name_the_cell() {
        let text = r#"{"cells":[{"id":"a","dim":0,"faces":[]},{"id":"e","dim":1,"faces":[[[],"a"]]}]}"#;
        let err = parse_document(text).unwrap_err().to_string();
        assert!(err.contains("cell e"), "{err}");
    }

    #[test]
    fn schema_errors_carry_a_path() {
        let text = r#"{"cells":[{"id":"a","dim":"zero","faces":[]}]}"#;
        let err = parse_document(text).unwrap_err().to_string();
        assert!(err.starts_with("$.cells[0].dim"), "{err}");
        let text = r#"{"cells":[{"id":"a","dim":0,"faces":[]},{"id":"e","dim":1,"faces":[[[],"a"],[[],"b"]]}]}"#;
        let err = parse_document(text).unwrap_err().to_string();
        assert!(err.starts_with("$.cells[1].faces[1]"), "{err}");
    }
}
