use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::category::{Arrow, FiniteCategory, FunctorData};
use crate::error::{CoreError, Result};
use crate::simplicial::{Cell, CellId, DegeneracyWord, FiniteSimplicialSet, SimplexRef, SimplicialMap};

/// The nerve of a finite category, possibly truncated. Nondegenerate
/// `k`-simplices are strings of `k` composable non-identity arrows;
/// identities in a string become degeneracies.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub set: Arc<FiniteSimplicialSet>,
    pub category: Arc<FiniteCategory>,
    pub up_to: Option<usize>,
    strings: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, CellId>,
}

/// Builds the nerve up to dimension `up_to`, or all of it when `None`
/// (which requires the category to have no cycles).
pub fn nerve(c: &Arc<FiniteCategory>, up_to: Option<usize>) -> Result<Nerve> {
    if up_to.is_none() && c.has_cycles() {
        return Err(CoreError::Unsupported("the full nerve of a category with cycles is infinite".into()));
    }
    let mut nerve = Nerve {
        set: Arc::new(FiniteSimplicialSet::empty()),
        category: c.clone(),
        up_to,
        strings: Vec::new(),
        index: HashMap::new(),
    };
    let mut cells: Vec<Cell> = c.objects().iter().map(|name| Cell { dim: 0, faces: vec![], label: Some(name.clone()) }).collect();
    nerve.strings = vec![Vec::new(); cells.len()];
    let non_identity: Vec<usize> = (0..c.arrow_count()).filter(|&a| !c.is_identity(a)).collect();
    let mut layer: Vec<Vec<usize>> = non_identity.iter().map(|&a| vec![a]).collect();
    let mut k = 1;
    while !layer.is_empty() && up_to.is_none_or(|m| k <= m) {
        let mut next = Vec::new();
        for s in layer {
            let faces = (0..=k)
                .map(|i| {
                    let (start, arrows) = face_string(c, &s, i);
                    nerve.simplex(start, &arrows).expect("faces are shorter strings")
                })
                .collect();
            let names: Vec<&str> = s.iter().map(|&a| c.arrow(a).name.as_str()).collect();
            let id = CellId(cells.len());
            cells.push(Cell { dim: k, faces, label: Some(format!("[{}]", names.join(","))) });
            nerve.index.insert(s.clone(), id);
            nerve.strings.push(s.clone());
            let end = c.arrow(*s.last().unwrap()).tgt;
            for &a in &non_identity {
                if c.arrow(a).src == end {
                    let mut longer = s.clone();
                    longer.push(a);
                    next.push(longer);
                }
            }
        }
        layer = next;
        k += 1;
    }
    nerve.set = Arc::new(FiniteSimplicialSet::new(cells)?);
    Ok(nerve)
}

/// The `i`-th face of a string `c_0 -> … -> c_k`, as a start object and a
/// string that may contain identities.
fn face_string(c: &FiniteCategory, s: &[usize], i: usize) -> (usize, Vec<usize>) {
    let k = s.len();
    if i == 0 {
        (c.arrow(s[0]).tgt, s[1..].to_vec())
    } else if i == k {
        (c.arrow(s[0]).src, s[..k - 1].to_vec())
    } else {
        let mut out = s[..i - 1].to_vec();
        out.push(c.comp(s[i], s[i - 1]));
        out.extend_from_slice(&s[i + 1..]);
        (c.arrow(s[0]).src, out)
    }
}

impl Nerve {
    /// The simplex of a string starting at `start`; `None` if it is longer
    /// than the truncation after removing identities.
    pub fn simplex(&self, start: usize, arrows: &[usize]) -> Option<SimplexRef> {
        let c = &self.category;
        let mut mask = 0u32;
        let mut kept = Vec::new();
        for (i, &a) in arrows.iter().enumerate() {
            if c.is_identity(a) {
                mask |= 1 << i;
            } else {
                kept.push(a);
            }
        }
        let word = DegeneracyWord::from_mask(mask);
        if kept.is_empty() {
            return Some(SimplexRef::new(word, CellId(start)));
        }
        self.index.get(&kept).map(|&cell| SimplexRef::new(word, cell))
    }

    /// The edge of an arrow (degenerate for identities).
    pub fn arrow_simplex(&self, a: usize) -> SimplexRef {
        let src = self.category.arrow(a).src;
        self.simplex(src, &[a]).expect("edges are always present")
    }

    /// The nondegenerate string of a cell; empty for vertices.
    pub fn string(&self, cell: CellId) -> &[usize] {
        &self.strings[cell.0]
    }
}

/// The nerve of a functor between the given nerves.
pub fn nerve_map(f: &FunctorData, src: &Nerve, tgt: &Nerve) -> Result<SimplicialMap> {
    let assignment = src
        .set
        .ids()
        .map(|cell| {
            let s = src.string(cell);
            let start = if s.is_empty() { cell.0 } else { src.category.arrow(s[0]).src };
            let arrows: Vec<usize> = s.iter().map(|&a| f.arrows[a]).collect();
            tgt.simplex(f.objects[start], &arrows)
                .ok_or_else(|| CoreError::Mismatch("target nerve is truncated below the source".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(src.set.clone(), tgt.set.clone(), assignment)
}

/// The fundamental category of a simplicial set, computed from paths of
/// nondegenerate edges of length at most `max_len` modulo the relations
/// `d_1 σ = d_0 σ ∘ d_2 σ` of the 2-simplices. Fails when the bound is too
/// small to compose two classes.
#[derive(Clone, Debug)]
pub struct Fundamental {
    pub category: Arc<FiniteCategory>,
    /// Object `k` is the vertex `vertices[k]`.
    pub vertices: Vec<CellId>,
    object_of: HashMap<CellId, usize>,
    edge_arrow: HashMap<CellId, usize>,
}

impl Fundamental {
    pub fn object_of(&self, vertex: CellId) -> usize {
        self.object_of[&vertex]
    }

    /// The arrow of an edge; degenerate edges give identities.
    pub fn arrow_of(&self, edge: &SimplexRef) -> usize {
        if edge.word.is_identity() {
            self.edge_arrow[&edge.cell]
        } else {
            self.category.id(self.object_of[&edge.cell])
        }
    }
}

pub fn fundamental_category(x: &FiniteSimplicialSet, max_len: usize) -> Result<Fundamental> {
    let vertices = x.cells_of_dim(0);
    let object_of: HashMap<CellId, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let edges = x.cells_of_dim(1);
    let edge_no: HashMap<CellId, usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let ends: Vec<(usize, usize)> = edges
        .iter()
        .map(|&e| {
            let f = &x.cell(e).faces;
            (object_of[&f[1].cell], object_of[&f[0].cell])
        })
        .collect();
    let mut out_edges = vec![Vec::new(); vertices.len()];
    for (k, &(s, _)) in ends.iter().enumerate() {
        out_edges[s].push(k);
    }

    let mut paths: Vec<(usize, Vec<usize>)> = (0..vertices.len()).map(|v| (v, vec![])).collect();
    let mut frontier: Vec<usize> = (0..paths.len()).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in frontier {
            let (start, seq) = paths[p].clone();
            let end = seq.last().map_or(start, |&e| ends[e].1);
            for &e in &out_edges[end] {
                let mut longer = seq.clone();
                longer.push(e);
                paths.push((start, longer));
                next.push(paths.len() - 1);
            }
        }
        frontier = next;
    }
    let path_id: HashMap<(usize, Vec<usize>), usize> = paths.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();

    let as_path = |s: &SimplexRef| -> Vec<usize> {
        if s.word.is_identity() {
            vec![edge_no[&s.cell]]
        } else {
            vec![]
        }
    };
    // pattern -> (vertex, replacement); relations are used in both directions
    let mut rewrites: HashMap<Vec<usize>, Vec<(usize, Vec<usize>)>> = HashMap::new();
    for sigma in x.cells_of_dim(2) {
        let f = &x.cell(sigma).faces;
        let mut lhs = as_path(&f[2]);
        lhs.extend(as_path(&f[0]));
        let rhs = as_path(&f[1]);
        let v = object_of[&x.vertices(&SimplexRef::cell(sigma))[0]];
        if lhs != rhs {
            rewrites.entry(lhs.clone()).or_default().push((v, rhs.clone()));
            rewrites.entry(rhs).or_default().push((v, lhs));
        }
    }
    let mut classes = UnionFind::<usize>::new(paths.len());
    for (p, (start, seq)) in paths.iter().enumerate() {
        for pos in 0..=seq.len() {
            let here = if pos == 0 { *start } else { ends[seq[pos - 1]].1 };
            for len in 0..=(seq.len() - pos) {
                let Some(options) = rewrites.get(&seq[pos..pos + len]) else { continue };
                for (v, repl) in options {
                    if *v != here || seq.len() - len + repl.len() > max_len {
                        continue;
                    }
                    let mut new = seq[..pos].to_vec();
                    new.extend_from_slice(repl);
                    new.extend_from_slice(&seq[pos + len..]);
                    classes.union(p, path_id[&(*start, new)]);
                }
            }
        }
    }

    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for p in 0..paths.len() {
        members.entry(classes.find(p)).or_default().push(p);
    }
    let mut order: Vec<(usize, Vec<usize>)> = members.into_values().map(|m| (m[0], m)).collect();
    let key = |p: usize| (paths[p].1.len(), paths[p].0, paths[p].1.clone());
    for (rep, m) in order.iter_mut() {
        *rep = *m.iter().min_by_key(|&&p| key(p)).unwrap();
    }
    order.sort_by_key(|(rep, _)| key(*rep));
    let mut arrow_of_path = vec![0usize; paths.len()];
    for (k, (_, m)) in order.iter().enumerate() {
        for &p in m {
            arrow_of_path[p] = k;
        }
    }
    let end_of = |p: usize| paths[p].1.last().map_or(paths[p].0, |&e| ends[e].1);
    let arrows: Vec<Arrow> = order
        .iter()
        .map(|(rep, _)| {
            let (start, seq) = &paths[*rep];
            let name = if seq.is_empty() {
                format!("id_{}", x.label(vertices[*start]))
            } else {
                seq.iter().rev().map(|&e| x.label(edges[e])).collect::<Vec<_>>().join(".")
            };
            Arrow { name, src: *start, tgt: end_of(*rep) }
        })
        .collect();
    let ids: Vec<usize> = (0..vertices.len()).map(|v| arrow_of_path[v]).collect();

    let mut composites = Vec::new();
    for (kf, (_, mf)) in order.iter().enumerate() {
        for (kg, (_, mg)) in order.iter().enumerate() {
            if arrows[kf].tgt != arrows[kg].src {
                continue;
            }
            let mut found: Option<usize> = None;
            for &pf in mf {
                for &pg in mg {
                    if paths[pf].1.len() + paths[pg].1.len() > max_len {
                        continue;
                    }
                    let mut seq = paths[pf].1.clone();
                    seq.extend_from_slice(&paths[pg].1);
                    let class = arrow_of_path[path_id[&(paths[pf].0, seq)]];
                    match found {
                        None => found = Some(class),
                        Some(c) if c != class => {
                            return Err(CoreError::Unsupported(format!(
                                "path bound {max_len} is too small to identify composites"
                            )))
                        }
                        _ => {}
                    }
                }
            }
            let Some(gf) = found else {
                return Err(CoreError::Unsupported(format!("path bound {max_len} is too small to compose")));
            };
            composites.push((kg, kf, gf));
        }
    }
    let names = vertices.iter().map(|&v| x.label(v)).collect();
    let category = Arc::new(FiniteCategory::new(names, arrows, ids, &composites)?);
    let edge_arrow = edges.iter().enumerate().map(|(k, &e)| (e, arrow_of_path[path_id[&(ends[k].0, vec![k])]])).collect();
    Ok(Fundamental { category, vertices, object_of, edge_arrow })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::category::validate_functor;
    use crate::simplicial::{validate_map, validate_sset, OrderedComplex};

    #[test]
    fn nerve_of_an_ordinal_is_a_simplex() {
        let c = Arc::new(FiniteCategory::ordinal(3));
        let n = nerve(&c, None).unwrap();
        assert!(validate_sset(&n.set).is_valid());
        assert_eq!(n.set.cell_counts(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn truncated_nerve_of_a_category_with_a_loop() {
        // one object, e ∘ e = e
        let arrows = vec![Arrow { name: "id".into(), src: 0, tgt: 0 }, Arrow { name: "e".into(), src: 0, tgt: 0 }];
        let c = Arc::new(
            FiniteCategory::new(vec!["x".into()], arrows, vec![0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)]).unwrap(),
        );
        assert!(nerve(&c, None).is_err());
        let n = nerve(&c, Some(3)).unwrap();
        assert!(validate_sset(&n.set).is_valid());
        assert_eq!(n.set.cell_counts(), vec![1, 1, 1, 1]);
        let pi = fundamental_category(&n.set, 2).unwrap();
        assert!(pi.category.same_shape(&c));
    }

    #[test]
    fn fundamental_category_of_a_nerve_recovers_the_category() {
        let objects: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let edges = vec![("f".to_string(), 0, 1), ("g".to_string(), 1, 2), ("h".to_string(), 0, 1)];
        let c = Arc::new(FiniteCategory::free(objects, &edges).unwrap());
        let n = nerve(&c, Some(2)).unwrap();
        let pi = fundamental_category(&n.set, 2).unwrap();
        let f = FunctorData {
            src: c.clone(),
            tgt: pi.category.clone(),
            objects: (0..c.object_count()).map(|o| pi.object_of(CellId(o))).collect(),
            arrows: (0..c.arrow_count()).map(|a| pi.arrow_of(&n.arrow_simplex(a))).collect(),
        };
        assert!(validate_functor(&f).is_valid());
        assert!(f.is_isomorphism());
    }

    #[test]
    fn fundamental_category_of_a_horn() {
        // Λ^2_1 has a free composite; ∂Δ^2 has two parallel arrows 0 → 2
        let horn = OrderedComplex::horn(2, 1);
        assert_eq!(fundamental_category(&horn.set, 2).unwrap().category.hom(0, 2).len(), 1);
        let boundary = OrderedComplex::boundary(2);
        assert_eq!(fundamental_category(&boundary.set, 2).unwrap().category.hom(0, 2).len(), 2);
        let full = OrderedComplex::simplex(2);
        assert_eq!(fundamental_category(&full.set, 2).unwrap().category.hom(0, 2).len(), 1);
    }

    #[test]
    fn nerve_of_a_functor() {
        let c = Arc::new(FiniteCategory::ordinal(2));
        let d = Arc::new(FiniteCategory::ordinal(1));
        // 0, 1 ↦ 0 and 2 ↦ 1
        let obj = vec![0, 0, 1];
        let arrows = (0..c.arrow_count()).map(|a| d.hom(obj[c.arrow(a).src], obj[c.arrow(a).tgt])[0]).collect();
        let f = FunctorData::new(c.clone(), d.clone(), obj, arrows).unwrap();
        let (nc, nd) = (nerve(&c, None).unwrap(), nerve(&d, None).unwrap());
        let m = nerve_map(&f, &nc, &nd).unwrap();
        assert!(validate_map(&m).is_valid());
    }
}
