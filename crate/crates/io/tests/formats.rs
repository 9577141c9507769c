use std::sync::Arc;

use corrkit_core::correspondences::fiber;
use corrkit_core::simplicial::{CellId, SimplexRef};
use corrkit_io::gen::{gen_category, gen_sset, GenConfig, Generator};
use corrkit_io::json::{parse_document, Document};
use corrkit_io::workspace::Workspace;

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

#[test]
fn triangle_fixture_has_the_expected_fibers() {
    let Document::Correspondence(x) = parse_document(&fixture("triangle_over_interval.json")).unwrap() else {
        panic!("fixture is a correspondence")
    };
    let vertices: Vec<usize> =
        (0..2).map(|v| fiber(&x.structure, &SimplexRef::cell(CellId(v))).unwrap().corr.total.cell_counts()[0]).collect();
    assert_eq!(vertices, vec![1, 2]);
}

#[test]
fn seed_zero_matches_the_golden_files() {
    let cfg = GenConfig::default();
    let sset = Document::SSet(gen_sset(&cfg)).to_canonical();
    assert_eq!(sset, fixture("golden/seed0_sset.json").trim_end());
    let cat = Document::Category(gen_category(&cfg)).to_canonical();
    assert_eq!(cat, fixture("golden/seed0_category.json").trim_end());
}

#[test]
fn canonical_text_is_a_fixed_point() {
    for seed in 0..12 {
        let mut g = Generator::new(&GenConfig { seed, max_cells: 12, max_objects: 4, ..GenConfig::default() });
        let a = Arc::new(g.sset());
        let c = Arc::new(g.category());
        let d = Arc::new(g.category());
        let docs = [
            Document::Map(g.map_over(&a)),
            Document::Correspondence(g.correspondence(2)),
            Document::Functor(g.functor_over(&c)),
            Document::Profunctor(g.profunctor(&c, &d)),
            Document::CatDiagram(g.cat_diagram(&c)),
        ];
        for doc in docs {
            let text = doc.to_canonical();
            let back = parse_document(&text).unwrap_or_else(|e| panic!("seed {seed} {}: {e}", doc.kind()));
            assert_eq!(back.kind(), doc.kind());
            assert_eq!(back.to_canonical(), text, "seed {seed} {}", doc.kind());
        }
    }
}

#[test]
fn errors_point_at_the_offending_node() {
    let no_identity = r#"{"objects":["a"],"arrows":[{"id":"f","src":"a","tgt":"a"}],"comp":[["f","f","f"]],"ids":{}}"#;
    let err = parse_document(no_identity).unwrap_err().to_string();
    assert!(err.starts_with("$.ids: object \"a\" has no identity"), "{err}");

    let not_assoc = r#"{"objects":["a"],"arrows":[{"id":"1","src":"a","tgt":"a"},{"id":"f","src":"a","tgt":"a"}],
        "comp":[["1","1","1"],["1","f","f"],["f","1","f"],["f","f","1"]],"ids":{"a":"1"}}"#;
    assert!(parse_document(not_assoc).is_ok(), "f f = 1 is a valid group");

    let unknown = r#"{"src":{"objects":["a"],"arrows":[{"id":"1","src":"a","tgt":"a"}],"comp":[["1","1","1"]],"ids":{"a":"1"}},
        "tgt":{"objects":["a"],"arrows":[{"id":"1","src":"a","tgt":"a"}],"comp":[["1","1","1"]],"ids":{"a":"1"}},
        "elements":[{"c":"a","d":"a","xs":["x"]}],"lact":[["1","y","x"]],"ract":[["x","1","x"]]}"#;
    let err = parse_document(unknown).unwrap_err().to_string();
    assert!(err.starts_with("$.lact[0]: unknown id \"y\""), "{err}");

    let err = parse_document(r#"{"points":[]}"#).unwrap_err().to_string();
    assert!(err.contains("unrecognized"), "{err}");
}

#[test]
fn workspace_is_content_addressed() {
    let cfg = GenConfig { seed: 5, ..GenConfig::default() };
    let mut ws = Workspace::new();
    let id = ws.insert(&Document::SSet(gen_sset(&cfg)));
    assert_eq!(ws.insert(&Document::SSet(gen_sset(&cfg))), id);
    ws.insert(&Document::Category(gen_category(&cfg)));
    assert_eq!(ws.len(), 2);
    assert!(ws.insert_text(r#"{"cells":[{"id":"e","dim":1,"faces":[]}]}"#).is_err());

    let dir = std::env::temp_dir().join(format!("corrkit-ws-{}", std::process::id()));
    ws.save(&dir).unwrap();
    let back = Workspace::load(&dir).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    let ids = |w: &Workspace| w.ids().map(|(k, e)| (k.clone(), e.clone())).collect::<Vec<_>>();
    assert_eq!(ids(&back), ids(&ws));
    assert_eq!(back.get(&id).unwrap().kind(), "sset");
}
