use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::delta::{DegeneracyWord, DeltaMap};
use crate::error::{CoreError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CellId(pub usize);

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A simplex in Eilenberg–Zilber form: a degeneracy word applied to a
/// nondegenerate cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexRef {
    pub word: DegeneracyWord,
    pub cell: CellId,
}

impl SimplexRef {
    pub fn cell(cell: CellId) -> Self {
        SimplexRef { word: DegeneracyWord::IDENTITY, cell }
    }

    pub fn new(word: DegeneracyWord, cell: CellId) -> Self {
        SimplexRef { word, cell }
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.word.is_identity()
    }

    /// `s_word` applied to this simplex.
    pub fn degenerate(self, word: DegeneracyWord) -> Self {
        SimplexRef { word: word.after(self.word), cell: self.cell }
    }
}

impl fmt::Display for SimplexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_identity() {
            write!(f, "{}", self.cell)
        } else {
            write!(f, "{} {}", self.word, self.cell)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub dim: usize,
    /// `d_0 … d_n` for a cell of dimension `n >= 1`; empty for vertices.
    pub faces: Vec<SimplexRef>,
    pub label: Option<String>,
}

/// A finite simplicial set presented by its nondegenerate cells, each
/// carrying its faces in Eilenberg–Zilber form.
#[derive(Default)]
pub struct FiniteSimplicialSet {
    cells: Vec<Cell>,
    vertex_cache: OnceLock<Vec<Vec<CellId>>>,
}

impl Clone for FiniteSimplicialSet {
    fn clone(&self) -> Self {
        FiniteSimplicialSet { cells: self.cells.clone(), vertex_cache: OnceLock::new() }
    }
}

impl PartialEq for FiniteSimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for FiniteSimplicialSet {}

impl fmt::Debug for FiniteSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSimplicialSet").field("cells", &self.cells).finish()
    }
}

impl FiniteSimplicialSet {
    /// Builds a presentation after checking face arity, targets and
    /// dimensions. Simplicial identities are checked by [`validate_sset`].
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        for (id, cell) in cells.iter().enumerate() {
            let name = cell.label.clone().unwrap_or_else(|| format!("#{id}"));
            let expected = if cell.dim == 0 { 0 } else { cell.dim + 1 };
            if cell.faces.len() != expected {
                return Err(CoreError::InvalidPresentation(format!(
                    "cell {name} of dimension {} has {} faces, expected {expected}",
                    cell.dim,
                    cell.faces.len()
                )));
            }
            for (i, face) in cell.faces.iter().enumerate() {
                let target = cells.get(face.cell.0).ok_or_else(|| {
                    CoreError::InvalidPresentation(format!("face d{i} of cell {name} refers to missing cell {}", face.cell))
                })?;
                if target.dim + face.word.len() != cell.dim - 1 {
                    return Err(CoreError::InvalidPresentation(format!(
                        "face d{i} of cell {name} has dimension {}, expected {}",
                        target.dim + face.word.len(),
                        cell.dim - 1
                    )));
                }
                if face.word.highest() > cell.dim - 1 {
                    return Err(CoreError::InvalidPresentation(format!(
                        "face d{i} of cell {name} uses a degeneracy index out of range"
                    )));
                }
            }
        }
        Ok(FiniteSimplicialSet { cells, vertex_cache: OnceLock::new() })
    }

    pub fn empty() -> Self {
        FiniteSimplicialSet::default()
    }

    /// The terminal simplicial set `Δ^0`.
    pub fn point() -> Self {
        FiniteSimplicialSet::new(vec![Cell { dim: 0, faces: vec![], label: Some("*".into()) }]).unwrap()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id.0]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = CellId> + '_ {
        (0..self.cells.len()).map(CellId)
    }

    /// Highest dimension of a nondegenerate cell; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.cells.iter().map(|c| c.dim).max()
    }

    pub fn cells_of_dim(&self, n: usize) -> Vec<CellId> {
        self.ids().filter(|&c| self.cells[c.0].dim == n).collect()
    }

    /// Number of nondegenerate cells per dimension.
    pub fn cell_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim().map_or(0, |d| d + 1)];
        for c in &self.cells {
            counts[c.dim] += 1;
        }
        counts
    }

    pub fn label(&self, id: CellId) -> String {
        self.cells[id.0].label.clone().unwrap_or_else(|| format!("#{}", id.0))
    }

    pub fn simplex_dim(&self, x: &SimplexRef) -> usize {
        self.cells[x.cell.0].dim + x.word.len()
    }

    /// `θ^* x` for a monotone map `θ : [m] -> [dim x]`.
    pub fn apply(&self, x: &SimplexRef, theta: &DeltaMap) -> SimplexRef {
        let base = self.cells[x.cell.0].dim;
        debug_assert_eq!(theta.codomain_dim(), base + x.word.len());
        let eta = x.word.surjection(base);
        let composite = eta.compose(theta);
        let (epi, mono) = composite.factor();
        self.restrict(x.cell, &mono).degenerate(epi)
    }

    /// `μ^* c` for an injective `μ` into the cell's dimension.
    fn restrict(&self, cell: CellId, mono: &DeltaMap) -> SimplexRef {
        let dim = self.cells[cell.0].dim;
        if mono.domain_dim() == dim {
            return SimplexRef::cell(cell);
        }
        let missing = (0..=dim).find(|v| !mono.values().contains(v)).expect("non-identity mono misses a vertex");
        // μ = δ^missing ∘ μ'
        let inner: Vec<usize> = mono.values().iter().map(|&v| if v > missing { v - 1 } else { v }).collect();
        let face = self.cells[cell.0].faces[missing];
        self.apply(&face, &DeltaMap::from_raw(inner, dim - 1))
    }

    pub fn face(&self, x: &SimplexRef, i: usize) -> SimplexRef {
        let n = self.simplex_dim(x);
        assert!(n >= 1 && i <= n, "face d{i} of a simplex of dimension {n}");
        if x.word.is_identity() {
            return self.cells[x.cell.0].faces[i];
        }
        self.apply(x, &DeltaMap::coface(i, n))
    }

    pub fn faces(&self, x: &SimplexRef) -> Vec<SimplexRef> {
        let n = self.simplex_dim(x);
        if n == 0 {
            return vec![];
        }
        (0..=n).map(|i| self.face(x, i)).collect()
    }

    pub fn degeneracy(&self, x: &SimplexRef, j: usize) -> SimplexRef {
        let n = self.simplex_dim(x);
        assert!(j <= n, "degeneracy s{j} of a simplex of dimension {n}");
        x.degenerate(DegeneracyWord::from_mask(1 << j))
    }

    fn vertex_table(&self) -> &Vec<Vec<CellId>> {
        self.vertex_cache.get_or_init(|| {
            self.cells
                .iter()
                .enumerate()
                .map(|(id, cell)| {
                    (0..=cell.dim).map(|v| self.restrict(CellId(id), &DeltaMap::vertex(v, cell.dim)).cell).collect()
                })
                .collect()
        })
    }

    /// The vertices of a simplex in order (with repetitions for degenerate
    /// simplices).
    pub fn vertices(&self, x: &SimplexRef) -> Vec<CellId> {
        let table = &self.vertex_table()[x.cell.0];
        let eta = x.word.surjection(self.cells[x.cell.0].dim);
        eta.values().iter().map(|&v| table[v]).collect()
    }

    pub fn cell_vertices(&self, c: CellId) -> &[CellId] {
        &self.vertex_table()[c.0]
    }

    /// All `n`-simplices: every `(word, cell)` with `dim cell + |word| = n`.
    pub fn enumerate_simplices(&self, n: usize) -> Vec<SimplexRef> {
        let mut out = Vec::new();
        for (id, cell) in self.cells.iter().enumerate() {
            if cell.dim > n {
                continue;
            }
            for mask in masks_of_size(n, n - cell.dim) {
                out.push(SimplexRef::new(DegeneracyWord::from_mask(mask), CellId(id)));
            }
        }
        out
    }

    /// The sub-simplicial set generated by `keep`, closed under faces, with
    /// its inclusion. Cell order follows the original.
    pub fn subcomplex(
        self: &Arc<Self>,
        keep: impl IntoIterator<Item = CellId>,
    ) -> (Arc<FiniteSimplicialSet>, super::SimplicialMap) {
        let mut included = vec![false; self.len()];
        let mut stack: Vec<CellId> = keep.into_iter().collect();
        while let Some(c) = stack.pop() {
            if included[c.0] {
                continue;
            }
            included[c.0] = true;
            for f in &self.cells[c.0].faces {
                stack.push(f.cell);
            }
        }
        let mut renumber = vec![usize::MAX; self.len()];
        let mut kept = Vec::new();
        for (id, &inc) in included.iter().enumerate() {
            if inc {
                renumber[id] = kept.len();
                kept.push(id);
            }
        }
        let cells = kept
            .iter()
            .map(|&id| {
                let cell = &self.cells[id];
                Cell {
                    dim: cell.dim,
                    faces: cell.faces.iter().map(|f| SimplexRef::new(f.word, CellId(renumber[f.cell.0]))).collect(),
                    label: cell.label.clone(),
                }
            })
            .collect();
        let sub = Arc::new(FiniteSimplicialSet::new(cells).expect("subcomplex of a valid presentation"));
        let assignment = kept.iter().map(|&id| SimplexRef::cell(CellId(id))).collect();
        let inclusion = super::SimplicialMap::new(sub.clone(), self.clone(), assignment).expect("inclusion");
        (sub, inclusion)
    }

    /// Cells that are not a face of any other cell.
    pub fn maximal_cells(&self) -> Vec<CellId> {
        let mut is_face = vec![false; self.len()];
        for cell in &self.cells {
            for f in &cell.faces {
                is_face[f.cell.0] = true;
            }
        }
        self.ids().filter(|c| !is_face[c.0]).collect()
    }
}

/// All bitmasks on `n` positions with exactly `k` bits set, ascending.
pub(crate) fn masks_of_size(n: usize, k: usize) -> Vec<u32> {
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    fn go(start: usize, n: usize, k: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            go(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    go(0, n, k, 0, &mut out);
    out.sort_unstable();
    out
}

/// A violated condition in a presentation or a map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Issue {
    SimplicialIdentity { cell: String, i: usize, j: usize, lhs: String, rhs: String },
    FaceMismatch { cell: String, face: usize, expected: String, found: String },
    DimensionMismatch { cell: String, expected: usize, found: usize },
    Structure { detail: String },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::SimplicialIdentity { cell, i, j, lhs, rhs } => {
                write!(f, "at {cell}: d{i} d{j} = {lhs} but d{} d{i} = {rhs}", j - 1)
            }
            Issue::FaceMismatch { cell, face, expected, found } => {
                write!(f, "at {cell}: image of d{face} is {found}, but d{face} of the image is {expected}")
            }
            Issue::DimensionMismatch { cell, expected, found } => {
                write!(f, "at {cell}: image has dimension {found}, expected {expected}")
            }
            Issue::Structure { detail } => write!(f, "{detail}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn into_result(self, what: &str) -> Result<()> {
        match self.issues.first() {
            None => Ok(()),
            Some(first) => Err(CoreError::InvalidPresentation(format!(
                "{what}: {first}{}",
                if self.issues.len() > 1 { format!(" (and {} more)", self.issues.len() - 1) } else { String::new() }
            ))),
        }
    }
}

/// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every generator.
pub fn validate_sset(x: &FiniteSimplicialSet) -> ValidationReport {
    let mut report = ValidationReport::default();
    for id in x.ids() {
        let cell = x.cell(id);
        if cell.dim < 2 {
            continue;
        }
        let top = SimplexRef::cell(id);
        for j in 1..=cell.dim {
            for i in 0..j {
                let lhs = x.face(&x.face(&top, j), i);
                let rhs = x.face(&x.face(&top, i), j - 1);
                if lhs != rhs {
                    report.issues.push(Issue::SimplicialIdentity {
                        cell: x.label(id),
                        i,
                        j,
                        lhs: describe(x, &lhs),
                        rhs: describe(x, &rhs),
                    });
                }
            }
        }
    }
    report
}

pub(crate) fn describe(x: &FiniteSimplicialSet, s: &SimplexRef) -> String {
    if s.word.is_identity() {
        x.label(s.cell)
    } else {
        format!("{} {}", s.word, x.label(s.cell))
    }
}

/// A simplicial set whose nondegenerate simplices are a face-closed family
/// of vertex subsets of `[n]`, such as `Δ^n`, its boundary, and its horns.
#[derive(Clone, Debug)]
pub struct OrderedComplex {
    pub set: Arc<FiniteSimplicialSet>,
    pub vertex_count: usize,
    index: HashMap<u64, CellId>,
}

impl OrderedComplex {
    /// Builds the complex generated by the given vertex subsets (as sorted
    /// vertex lists). Cells are ordered by dimension, then lexicographically.
    pub fn from_subsets(vertex_count: usize, generators: &[Vec<usize>]) -> Self {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in generators {
            let mut g = g.clone();
            g.sort_unstable();
            g.dedup();
            let k = g.len();
            for mask in 1u32..(1 << k) {
                all.insert((0..k).filter(|b| mask & (1 << b) != 0).map(|b| g[b]).collect());
            }
        }
        let mut ordered: Vec<Vec<usize>> = all.into_iter().collect();
        ordered.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let mut index = HashMap::new();
        let mut cells = Vec::with_capacity(ordered.len());
        for s in &ordered {
            let faces = if s.len() == 1 {
                vec![]
            } else {
                (0..s.len())
                    .map(|i| {
                        let mut f = s.clone();
                        f.remove(i);
                        SimplexRef::cell(index[&subset_mask(&f)])
                    })
                    .collect()
            };
            index.insert(subset_mask(s), CellId(cells.len()));
            let label = s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("");
            cells.push(Cell { dim: s.len() - 1, faces, label: Some(label) });
        }
        OrderedComplex { set: Arc::new(FiniteSimplicialSet::new(cells).expect("ordered complex")), vertex_count, index }
    }

    /// The standard simplex `Δ^n`.
    pub fn simplex(n: usize) -> Self {
        OrderedComplex::from_subsets(n + 1, &[(0..=n).collect()])
    }

    /// The boundary `∂Δ^n`.
    pub fn boundary(n: usize) -> Self {
        let gens: Vec<Vec<usize>> = (0..=n).map(|i| (0..=n).filter(|&v| v != i).collect()).collect();
        OrderedComplex::from_subsets(n + 1, &gens)
    }

    /// The horn `Λ^n_k`: the boundary without the `k`-th face.
    pub fn horn(n: usize, k: usize) -> Self {
        assert!(k <= n);
        let gens: Vec<Vec<usize>> = (0..=n).filter(|&i| i != k).map(|i| (0..=n).filter(|&v| v != i).collect()).collect();
        OrderedComplex::from_subsets(n + 1, &gens)
    }

    pub fn cell_of(&self, vertices: &[usize]) -> Option<CellId> {
        self.index.get(&subset_mask(vertices)).copied()
    }

    /// The simplex with the given weakly increasing vertex sequence.
    pub fn simplex_of(&self, vertices: &[usize]) -> Option<SimplexRef> {
        if vertices.windows(2).any(|w| w[0] > w[1]) {
            return None;
        }
        let mut distinct = vertices.to_vec();
        distinct.dedup();
        let cell = self.cell_of(&distinct)?;
        let mut mask = 0u32;
        for (j, w) in vertices.windows(2).enumerate() {
            if w[0] == w[1] {
                mask |= 1 << j;
            }
        }
        Some(SimplexRef::new(DegeneracyWord::from_mask(mask), cell))
    }

    /// The vertex sequence of a simplex.
    pub fn vertices_of(&self, x: &SimplexRef) -> Vec<usize> {
        self.set.vertices(x).iter().map(|v| self.set.cell(*v).label.as_ref().unwrap().parse().unwrap()).collect()
    }
}

fn subset_mask(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0u64, |m, &v| m | (1 << v))
}

pub fn standard_simplex(n: usize) -> FiniteSimplicialSet {
    OrderedComplex::simplex(n).set.as_ref().clone()
}
