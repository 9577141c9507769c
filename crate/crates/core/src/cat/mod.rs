//! Finite categories, profunctors and their simplicial shadows.

mod category;
mod grothendieck;
mod lax;
mod nerve;
mod profunctor;
mod tensor;

pub use category::{validate_category, validate_functor, Arrow, FiniteCategory, FunctorData};
pub use grothendieck::{
    grothendieck, is_grothendieck_fibration, validate_diagram, CatDiagram, Grothendieck, GrothendieckVerdict,
};
pub use lax::{
    classifying_diagram_cat, companion_diagram, dcolim_prof, gro_vs_dcolim, lax_roundtrip, roundtrip_cat, validate_lax,
    CatRoundTrip, ClassifiedCat, DoubleColimitCat, GroComparison, LaxProfDiagram,
};
pub use nerve::{fundamental_category, nerve, nerve_map, Fundamental, Nerve};
pub use profunctor::{
    check_profunctor_iso, collage, companion, companion_pairs, from_collage, hom, validate_profunctor, Collage, CollageParts,
    Element, Profunctor,
};
pub use tensor::{
    associator_iso, companion_composition_iso, left_unit_iso, right_unit_iso, tensor_coend, tensor_geometric, GeometricTensor,
    Tensor,
};
