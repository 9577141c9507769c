mod colimits;
mod delta;
mod hom;
mod limits;
mod map;
mod sset;

pub use colimits::{coproduct, pushout, quotient, Colimit, Quotient, SSetDiagram};
pub use delta::{DegeneracyWord, DeltaMap, Operator, OperatorWord};
pub use hom::{count_maps, enumerate_maps, function_complex_level, Budget, MapSearch};
pub use limits::{compare_into, delta_map_between, product, pullback, simplex_map, JointIndex, Pullback};
pub use map::{validate_map, IsoCheck, SimplicialMap};
pub use sset::{
    standard_simplex, validate_sset, Cell, CellId, FiniteSimplicialSet, Issue, OrderedComplex, SimplexRef, ValidationReport,
};

/// The standard shapes: simplices, boundaries and horns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Standard {
    Simplex(usize),
    Horn(usize, usize),
    Boundary(usize),
}

pub fn standard(kind: Standard) -> crate::Result<FiniteSimplicialSet> {
    let complex = match kind {
        Standard::Simplex(n) => OrderedComplex::simplex(n),
        Standard::Boundary(n) => OrderedComplex::boundary(n),
        Standard::Horn(n, k) => {
            if k > n {
                return Err(crate::CoreError::Unsupported(format!("horn ({n},{k}) needs k <= n")));
            }
            OrderedComplex::horn(n, k)
        }
    };
    Ok(complex.set.as_ref().clone())
}
