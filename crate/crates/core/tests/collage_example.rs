//! The collage of a profunctor between two arrows `c' -f-> c` and
//! `d -g-> d'`, with `u(c, d) = {x}` and everything else forced by the
//! actions.

use std::sync::Arc;

use corrkit_core::cat::{
    check_profunctor_iso, collage, from_collage, is_grothendieck_fibration, nerve, nerve_map, Element, FiniteCategory, Profunctor,
};
use corrkit_core::fibrations::{fiberwise_criterion, is_inner_fibration, is_quasi_category};
use corrkit_core::simplicial::Budget;

fn arrow(src: &str, name: &str, tgt: &str) -> Arc<FiniteCategory> {
    Arc::new(FiniteCategory::free(vec![src.into(), tgt.into()], &[(name.into(), 0, 1)]).unwrap())
}

fn example() -> Profunctor {
    let c = arrow("c'", "f", "c");
    let d = arrow("d", "g", "d'");
    let (f, g) = (c.arrow_index("f").unwrap(), d.arrow_index("g").unwrap());
    let el = |name: &str, src, tgt| Element { name: name.into(), src, tgt };
    // x : c -> d, g x : c -> d', x f : c' -> d, (f,g)(x) : c' -> d'
    let elements = vec![el("x", 1, 0), el("g.x", 1, 1), el("x.f", 0, 0), el("(f,g)(x)", 0, 1)];
    let mut left = vec![(g, 0, 1), (g, 2, 3)];
    let mut right = vec![(0, f, 2), (1, f, 3)];
    for x in 0..4 {
        let e = &elements[x];
        left.push((d.id(e.tgt), x, x));
        right.push((x, c.id(e.src), x));
    }
    Profunctor::new(c, d, elements, &left, &right).unwrap()
}

#[test]
fn collage_has_four_objects_and_ten_arrows() {
    let u = example();
    let col = collage(&u);
    let x = &col.category;
    assert_eq!((x.object_count(), x.arrow_count()), (4, 10));
    // the dashed arrow is both g (x f) and (g x) f
    let name = |a: usize| x.arrow(a).name.clone();
    let idx = |n: &str| x.arrow_index(n).unwrap();
    let (f, g, e) = (idx("0.f"), idx("1.g"), idx("u.x"));
    assert_eq!(name(x.comp(g, x.comp(e, f))), "u.(f,g)(x)");
    assert_eq!(x.comp(x.comp(g, e), f), x.comp(g, x.comp(e, f)));
    // nothing goes back from D to C
    assert!(x.hom(2, 0).is_empty() && x.hom(3, 1).is_empty());
}

#[test]
fn collage_projection_recovers_the_profunctor() {
    let u = example();
    let col = collage(&u);
    let parts = from_collage(&col.projection).unwrap();
    let phi: Vec<usize> = (0..u.len()).collect();
    let c = corrkit_core::cat::FunctorData::identity(u.src.clone());
    let d = corrkit_core::cat::FunctorData::identity(u.tgt.clone());
    assert_eq!(check_profunctor_iso(&u, &parts.profunctor, &phi, Some((&c, &d))), Ok(()));
    // u(c, -) and u(c', -) are corepresented by d
    assert!(is_grothendieck_fibration(&col.projection).holds);
}

#[test]
fn nerve_of_the_projection_is_an_inner_fibration() {
    let col = collage(&example());
    let (nx, na) = (nerve(&col.category, None).unwrap(), nerve(&col.projection.tgt, None).unwrap());
    // composable chains of the six non-identity arrows: (f,x) (f,gx) (x,g) (xf,g) and (f,x,g)
    assert_eq!(nx.set.cell_counts(), vec![4, 6, 4, 1]);
    assert!(is_quasi_category(&nx.set, 5, Budget::DEFAULT).verdict);
    let p = nerve_map(&col.projection, &nx, &na).unwrap();
    assert!(is_inner_fibration(&p, 5, Budget::DEFAULT).verdict);
    let fw = fiberwise_criterion(&p, 5, Budget::DEFAULT).unwrap();
    assert!(fw.agreement && fw.fibers_verdict);
}
