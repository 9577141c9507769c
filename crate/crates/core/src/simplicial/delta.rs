//! The simplex category: monotone maps between finite ordinals, degeneracy
//! words in Eilenberg–Zilber normal form, and words in the face and
//! degeneracy operators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};

/// A monotone map `[m] -> [n]`, stored by its values.
///
/// A simplex `x` of dimension `n` pulls back along such a map to a simplex
/// `θ^* x` of dimension `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaMap {
    values: Vec<usize>,
    codomain: usize,
}

impl DeltaMap {
    pub fn new(values: Vec<usize>, codomain: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(CoreError::Mismatch("a monotone map needs a non-empty domain".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(CoreError::Mismatch(format!("{values:?} is not monotone")));
        }
        if values.iter().any(|&v| v > codomain) {
            return Err(CoreError::Mismatch(format!("{values:?} leaves [{codomain}]")));
        }
        Ok(DeltaMap { values, codomain })
    }

    pub(crate) fn from_raw(values: Vec<usize>, codomain: usize) -> Self {
        debug_assert!(!values.is_empty());
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        debug_assert!(values.iter().all(|&v| v <= codomain));
        DeltaMap { values, codomain }
    }

    pub fn identity(n: usize) -> Self {
        DeltaMap::from_raw((0..=n).collect(), n)
    }

    /// The coface `δ^i : [n-1] -> [n]` skipping `i`.
    pub fn coface(i: usize, n: usize) -> Self {
        assert!(n >= 1 && i <= n, "coface δ^{i} into [{n}] out of range");
        DeltaMap::from_raw((0..n).map(|v| if v < i { v } else { v + 1 }).collect(), n)
    }

    /// The codegeneracy `σ^j : [n+1] -> [n]` hitting `j` twice.
    pub fn codegeneracy(j: usize, n: usize) -> Self {
        assert!(j <= n, "codegeneracy σ^{j} onto [{n}] out of range");
        DeltaMap::from_raw((0..=n + 1).map(|v| if v <= j { v } else { v - 1 }).collect(), n)
    }

    pub fn vertex(v: usize, n: usize) -> Self {
        assert!(v <= n);
        DeltaMap::from_raw(vec![v], n)
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn domain_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn codomain_dim(&self) -> usize {
        self.codomain
    }

    pub fn apply(&self, v: usize) -> usize {
        self.values[v]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &DeltaMap) -> DeltaMap {
        assert_eq!(inner.codomain, self.domain_dim(), "composing non-composable monotone maps");
        DeltaMap::from_raw(inner.values.iter().map(|&v| self.values[v]).collect(), self.codomain)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && *self.values.last().unwrap() == self.codomain && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.codomain == self.domain_dim() && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Epi-mono factorization `self = mono ∘ epi`, with the epi returned as
    /// its degeneracy word.
    pub fn factor(&self) -> (DegeneracyWord, DeltaMap) {
        let mut image = self.values.clone();
        image.dedup();
        let mut mask = 0u32;
        for (j, w) in self.values.windows(2).enumerate() {
            if w[0] == w[1] {
                mask |= 1 << j;
            }
        }
        (DegeneracyWord(mask), DeltaMap::from_raw(image, self.codomain))
    }

    /// Values of `[n]` not hit by the map, ascending.
    pub fn missing(&self) -> Vec<usize> {
        (0..=self.codomain).filter(|v| !self.values.contains(v)).collect()
    }

    /// Every monotone map `[m] -> [n]` in lexicographic order.
    pub fn all(m: usize, n: usize) -> Vec<DeltaMap> {
        let mut out = Vec::new();
        let mut cur = vec![0usize; m + 1];
        loop {
            out.push(DeltaMap::from_raw(cur.clone(), n));
            // advance to the next weakly increasing sequence
            let mut pos = m as isize;
            while pos >= 0 && cur[pos as usize] == n {
                pos -= 1;
            }
            if pos < 0 {
                return out;
            }
            let p = pos as usize;
            cur[p] += 1;
            let fill = cur[p];
            for slot in cur.iter_mut().skip(p + 1) {
                *slot = fill;
            }
        }
    }
}

impl fmt::Display for DeltaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]->[{}]", self.codomain)
    }
}

/// A composite `s_{i_k} ··· s_{i_1}` of degeneracy operators with
/// `i_k > … > i_1`, stored as the bitmask of its indices.
///
/// The indices are exactly the positions `j` where the corresponding
/// surjection `η` satisfies `η(j) = η(j+1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegeneracyWord(pub(crate) u32);

impl DegeneracyWord {
    pub const IDENTITY: DegeneracyWord = DegeneracyWord(0);

    /// Builds a word from indices listed left to right, which must be
    /// strictly decreasing.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] <= w[1]) {
            return Err(CoreError::MalformedWord {
                position: 0,
                detail: format!("degeneracy indices {indices:?} are not strictly decreasing"),
            });
        }
        let mut mask = 0u32;
        for &i in indices {
            if i >= 31 {
                return Err(CoreError::MalformedWord { position: 0, detail: format!("index {i} too large") });
            }
            mask |= 1 << i;
        }
        Ok(DegeneracyWord(mask))
    }

    pub fn from_mask(mask: u32) -> Self {
        DegeneracyWord(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    /// Indices in presentation order (strictly decreasing).
    pub fn indices(self) -> Vec<usize> {
        (0..32).rev().filter(|&i| self.0 & (1 << i) != 0).collect()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    /// Largest index plus one; the word is defined on simplices of dimension
    /// `m` only if `m + len >= highest`.
    pub fn highest(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// The surjection `[n] -> [n - len]` the word encodes, for `n = base + len`.
    pub fn surjection(self, base_dim: usize) -> DeltaMap {
        let n = base_dim + self.len();
        let values = (0..=n).map(|v| v - (self.0 & ((1u32 << v) - 1)).count_ones() as usize).collect();
        DeltaMap::from_raw(values, base_dim)
    }

    /// The word of a surjection; `None` if the map is not surjective.
    pub fn from_surjection(eta: &DeltaMap) -> Option<Self> {
        if !eta.is_surjective() {
            return None;
        }
        Some(eta.factor().0)
    }

    /// The word of `s_self (s_inner x)`: apply `inner` first, then `self`.
    pub fn after(self, inner: DegeneracyWord) -> DegeneracyWord {
        if inner.0 == 0 {
            return self;
        }
        if self.0 == 0 {
            return inner;
        }
        // outer surjection η_inner ∘ η_self; j repeats iff it repeats in η_self
        // or η_self(j) repeats in η_inner.
        let mut mask = self.0;
        let top = self.highest().max(inner.highest() + self.len()) + 1;
        let mut image = 0usize;
        for j in 0..top {
            if self.0 & (1 << j) == 0 {
                if inner.0 & (1 << image) != 0 {
                    mask |= 1 << j;
                }
                image += 1;
            }
        }
        DegeneracyWord(mask)
    }
}

impl fmt::Display for DegeneracyWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.indices().iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(""))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Operator {
    Face(usize),
    Degeneracy(usize),
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Face(i) => write!(f, "d{i}"),
            Operator::Degeneracy(j) => write!(f, "s{j}"),
        }
    }
}

impl std::str::FromStr for Operator {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || CoreError::MalformedWord { position: 0, detail: format!("cannot parse operator {s:?}") };
        let (kind, idx) = s.split_at(1.min(s.len()));
        let idx: usize = idx.trim_start_matches('_').parse().map_err(|_| bad())?;
        match kind {
            "d" => Ok(Operator::Face(idx)),
            "s" => Ok(Operator::Degeneracy(idx)),
            _ => Err(bad()),
        }
    }
}

/// A composite of face and degeneracy operators acting on simplices of
/// dimension `source_dim`. Written in functional order: the last operator
/// is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OperatorWord {
    pub source_dim: usize,
    pub ops: Vec<Operator>,
}

impl OperatorWord {
    pub fn new(source_dim: usize, ops: Vec<Operator>) -> Self {
        OperatorWord { source_dim, ops }
    }

    pub fn parse(source_dim: usize, text: &str) -> Result<Self> {
        let ops = text
            .split(|c: char| c.is_whitespace() || c == '∘' || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(OperatorWord { source_dim, ops })
    }

    /// Checks index ranges and returns the dimension of the result.
    pub fn target_dim(&self) -> Result<usize> {
        let mut dim = self.source_dim;
        for (pos, op) in self.ops.iter().enumerate().rev() {
            match *op {
                Operator::Face(i) => {
                    if dim == 0 || i > dim {
                        return Err(CoreError::MalformedWord {
                            position: pos,
                            detail: format!("d{i} applied to a simplex of dimension {dim}"),
                        });
                    }
                    dim -= 1;
                }
                Operator::Degeneracy(j) => {
                    if j > dim {
                        return Err(CoreError::MalformedWord {
                            position: pos,
                            detail: format!("s{j} applied to a simplex of dimension {dim}"),
                        });
                    }
                    dim += 1;
                }
            }
        }
        Ok(dim)
    }

    /// The monotone map `θ` with `word(x) = θ^* x`.
    pub fn to_delta_map(&self) -> Result<DeltaMap> {
        self.target_dim()?;
        let mut theta = DeltaMap::identity(self.source_dim);
        let mut dim = self.source_dim;
        for op in self.ops.iter().rev() {
            match *op {
                Operator::Face(i) => {
                    theta = theta.compose(&DeltaMap::coface(i, dim));
                    dim -= 1;
                }
                Operator::Degeneracy(j) => {
                    theta = theta.compose(&DeltaMap::codegeneracy(j, dim));
                    dim += 1;
                }
            }
        }
        Ok(theta)
    }

    /// Canonical word of a monotone map: decreasing degeneracies followed by
    /// increasing faces.
    pub fn from_delta_map(theta: &DeltaMap) -> Self {
        let (epi, mono) = theta.factor();
        let mut ops: Vec<Operator> = epi.indices().into_iter().map(Operator::Degeneracy).collect();
        ops.extend(mono.missing().into_iter().map(Operator::Face));
        OperatorWord { source_dim: theta.codomain_dim(), ops }
    }

    pub fn is_normal(&self) -> bool {
        let split = self.ops.iter().position(|op| matches!(op, Operator::Face(_))).unwrap_or(self.ops.len());
        let (degs, faces) = self.ops.split_at(split);
        let degs_ok = degs.windows(2).all(|w| match (w[0], w[1]) {
            (Operator::Degeneracy(a), Operator::Degeneracy(b)) => a > b,
            _ => false,
        });
        let faces_ok = faces.iter().all(|op| matches!(op, Operator::Face(_)))
            && faces.windows(2).all(|w| match (w[0], w[1]) {
                (Operator::Face(a), Operator::Face(b)) => a < b,
                _ => false,
            });
        degs_ok && faces_ok
    }

    /// Rewrites the word with the simplicial identities until it has the
    /// form `s … s d … d` with decreasing degeneracy indices and increasing
    /// face indices.
    pub fn normalize(&self) -> Result<OperatorWord> {
        self.target_dim()?;
        let mut ops = self.ops.clone();
        loop {
            let mut changed = false;
            let mut k = 0;
            while k + 1 < ops.len() {
                let rewrite: Option<Vec<Operator>> = match (ops[k], ops[k + 1]) {
                    // d_i d_j = d_j d_{i+1} for i >= j
                    (Operator::Face(i), Operator::Face(j)) if i >= j => Some(vec![Operator::Face(j), Operator::Face(i + 1)]),
                    // s_i s_j = s_{j+1} s_i for i <= j
                    (Operator::Degeneracy(i), Operator::Degeneracy(j)) if i <= j => {
                        Some(vec![Operator::Degeneracy(j + 1), Operator::Degeneracy(i)])
                    }
                    (Operator::Face(i), Operator::Degeneracy(j)) => Some(if i < j {
                        vec![Operator::Degeneracy(j - 1), Operator::Face(i)]
                    } else if i == j || i == j + 1 {
                        vec![]
                    } else {
                        vec![Operator::Degeneracy(j), Operator::Face(i - 1)]
                    }),
                    _ => None,
                };
                if let Some(rep) = rewrite {
                    ops.splice(k..k + 2, rep);
                    changed = true;
                    k = k.saturating_sub(1);
                } else {
                    k += 1;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(OperatorWord { source_dim: self.source_dim, ops })
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ops.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.ops.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ∘ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(dim: usize, text: &str) -> OperatorWord {
        OperatorWord::parse(dim, text).unwrap()
    }

    // Oracle: compose the explicit monotone maps, then refactor.
    fn oracle(w: &OperatorWord) -> DeltaMap {
        let mut dim = w.source_dim;
        let mut theta: Vec<usize> = (0..=dim).collect();
        for op in w.ops.iter().rev() {
            let step: Vec<usize> = match *op {
                Operator::Face(i) => (0..dim).map(|v| if v < i { v } else { v + 1 }).collect(),
                Operator::Degeneracy(j) => (0..=dim + 1).map(|v| if v <= j { v } else { v - 1 }).collect(),
            };
            theta = step.iter().map(|&v| theta[v]).collect();
            dim = step.len() - 1;
        }
        DeltaMap::new(theta, w.source_dim).unwrap()
    }

    #[test]
    fn face_of_matching_degeneracy_is_identity() {
        let n = word(1, "d1 s1").normalize().unwrap();
        assert!(n.ops.is_empty());
    }

    #[test]
    fn face_past_degeneracy() {
        let w = word(1, "d0 s1");
        let n = w.normalize().unwrap();
        assert_eq!(n, word(1, "s0 d0"));
        assert_eq!(oracle(&w), oracle(&n));
    }

    #[test]
    fn composite_of_faces_sorts_increasing() {
        // δ^3 δ^1 = δ^1 δ^2 as maps [1] -> [3]; on 3-simplices that map acts
        // as d1 d3 = d2 d1.
        let w = word(3, "d2 d1");
        let n = w.normalize().unwrap();
        assert_eq!(n, word(3, "d1 d3"));
        assert_eq!(oracle(&w).values(), &[0, 2]);
        assert_eq!(oracle(&n), oracle(&w));
        // in operator reading d3 cannot act on the 2-simplex produced by d1
        assert!(matches!(word(3, "d3 d1").normalize(), Err(CoreError::MalformedWord { .. })));
    }

    #[test]
    fn out_of_range_index_is_malformed() {
        assert!(word(0, "d0").normalize().is_err());
        assert!(word(1, "s2").normalize().is_err());
    }

    #[test]
    fn canonical_word_round_trips() {
        for m in 0..4 {
            for n in 0..4 {
                for theta in DeltaMap::all(m, n) {
                    let w = OperatorWord::from_delta_map(&theta);
                    assert!(w.is_normal(), "{w}");
                    assert_eq!(w.to_delta_map().unwrap(), theta);
                    assert_eq!(oracle(&w), theta);
                }
            }
        }
    }

    #[test]
    fn monotone_map_count() {
        // C(m+n+1, m+1)
        assert_eq!(DeltaMap::all(2, 2).len(), 10);
        assert_eq!(DeltaMap::all(3, 1).len(), 5);
    }

    #[test]
    fn word_composition_matches_surjections() {
        for a in 0u32..16 {
            for b in 0u32..8 {
                let outer = DegeneracyWord(a);
                let inner = DegeneracyWord(b);
                let base = 3;
                if inner.highest() > base + inner.len() {
                    continue;
                }
                let mid = base + inner.len();
                if outer.highest() > mid + outer.len() {
                    continue;
                }
                let composite = inner.surjection(base).compose(&outer.surjection(mid));
                assert_eq!(DegeneracyWord::from_surjection(&composite).unwrap(), outer.after(inner));
            }
        }
    }

    use proptest::prelude::*;

    fn arb_word() -> impl Strategy<Value = OperatorWord> {
        (0usize..4, prop::collection::vec((any::<bool>(), 0usize..5), 0..7)).prop_map(|(dim, raw)| {
            // clamp indices so the word is well formed
            let mut d = dim;
            let mut ops = Vec::new();
            for (face, idx) in raw {
                if face && d > 0 {
                    ops.push(Operator::Face(idx % (d + 1)));
                    d -= 1;
                } else {
                    ops.push(Operator::Degeneracy(idx % (d + 1)));
                    d += 1;
                }
            }
            ops.reverse();
            OperatorWord::new(dim, ops)
        })
    }

    proptest! {
        #[test]
        fn normalization_agrees_with_monotone_maps(w in arb_word()) {
            let n = w.normalize().unwrap();
            prop_assert!(n.is_normal());
            prop_assert_eq!(oracle(&n), oracle(&w));
            prop_assert_eq!(&n, &OperatorWord::from_delta_map(&oracle(&w)));
        }
    }
}
