use std::collections::BTreeMap;
use std::sync::Arc;

use pgdeg::action::{self, canonical_action, compact_action};
use pgdeg::corpus::{self, Presentation};
use pgdeg::degree::{self, DegreeOptions, DegreeReport};
use pgdeg::io;
use pgdeg::registry;
use pgdeg::symcore::{validate, PartialGroupoid};
use pgdeg::Error;

fn both(spec: &str) -> DegreeReport {
    degree::degree(&corpus::make(spec).unwrap(), &DegreeOptions::default()).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

#[test]
fn named_degrees() {
    assert_eq!(both("na").degree, 3);
    assert_eq!(both("reduced-na").degree, 3);
    for n in 1..=4 {
        for m in 1..=n {
            assert_eq!(both(&format!("skeleton:{},{n}", m - 1)).degree, m, "sk_{} of the {n}-simplex", m - 1);
        }
    }
    for g in ["S3", "D4", "Q8"] {
        assert_eq!(both(&format!("bcom:{g}")).degree, 2, "{g}");
    }
    for g in ["C4", "V4", "C6"] {
        assert_eq!(both(&format!("bcom:{g}")).degree, 1, "{g}");
    }
}

#[test]
fn helly_witness_replays_and_brute_witness_sits_below() {
    for spec in ["na", "boundary:3", "bcom:S3", "lsg:2", "weyl:B2"] {
        let r = both(spec);
        let pg = corpus::make(spec).unwrap().partial_groupoid().unwrap().clone();
        assert_eq!(r.agree, Some(true));
        let h = r.helly.as_ref().unwrap();
        let crit = h.critical.as_ref().unwrap();
        assert_eq!(crit.generators.len(), r.degree);
        assert!(h.witness.as_ref().unwrap().replay(&pg).unwrap(), "{spec}");
        let b = r.brute.as_ref().unwrap();
        if r.degree > 1 {
            assert!(b.witness.as_ref().unwrap().replay(&pg).unwrap(), "{spec}");
        }
    }
}

#[test]
fn checkers_agree_on_spiny_inputs() {
    let checkers = registry::segal_checkers();
    for spec in ["na", "skeleton:1,3", "bcom:S3", "weyl:A2"] {
        let p = corpus::make(spec).unwrap();
        for k in 1..=3 {
            let v = pgdeg::segal::SegalVariant::LowerOdd(k);
            let verdicts: Vec<bool> = ["generic", "spiny", "words"].iter().map(|c| checkers.get(c).unwrap().check(&p, v, 5).unwrap().passed()).collect();
            assert!(verdicts.iter().all(|&x| x == verdicts[0]), "{spec} k={k}: {verdicts:?}");
        }
    }
}

#[test]
fn function_family_degree_by_search() {
    let r = both("sphere:1");
    assert_eq!(r.degree, 2);
    assert!(r.helly.is_none());
    let helly = DegreeOptions { method: "helly".into(), ..Default::default() };
    assert!(matches!(degree::degree(&corpus::make("sphere:1").unwrap(), &helly), Err(Error::Unsupported(_))));
}

#[test]
fn two_object_groupoid() {
    let pg = corpus::make("representable:1").unwrap().partial_groupoid().unwrap().clone();
    assert_eq!(pg.object_count(), 2);
    assert!(pg.is_groupoid());
    for act in [canonical_action(&pg, 100_000).unwrap(), compact_action(&pg, 100_000).unwrap()] {
        assert_eq!(act.closure_space().helly_number().unwrap().helly_number, 2);
    }
    let r = both("representable:1");
    assert_eq!((r.degree, r.groupoid, r.group), (1, true, false));
}

#[test]
fn group_has_nonclosed_empty_set() {
    let pg = corpus::make("group:S3").unwrap().partial_groupoid().unwrap().clone();
    let act = canonical_action(&pg, 100_000).unwrap();
    assert!(matches!(act.closure_space().helly_number(), Err(Error::EmptyNotClosed)));
    let r = both("group:S3");
    assert_eq!((r.degree, r.group), (1, true));
}

#[test]
fn empty_partial_groupoid() {
    let pg = Arc::new(PartialGroupoid::from_words(Vec::new(), Vec::new(), Vec::new(), Vec::new(), BTreeMap::new()).unwrap());
    let act = canonical_action(&pg, 100).unwrap();
    assert_eq!(act.closure_space().helly_number().unwrap().helly_number, 0);
    let r = degree::degree_of(&pg, &DegreeOptions::default()).unwrap();
    assert!(r.empty);
    assert_eq!(r.degree, 1);
}

#[test]
fn supplied_action_is_cross_checked() {
    let pg = corpus::make("bcom:S3").unwrap().partial_groupoid().unwrap().clone();
    let canonical = canonical_action(&pg, 100_000).unwrap();
    let p = Presentation::Groupoid { pg: pg.clone(), action: Some(Arc::new(canonical)) };
    let r = degree::degree(&p, &DegreeOptions::default()).unwrap();
    assert_eq!(r.degree, 2);
    let h = r.helly.unwrap();
    assert_eq!((h.action.as_str(), h.compact_helly), ("supplied", Some(2)));
    // every element multiplies the identity, so the empty set is not closed
    let mult = action::multiplication_action(&pg).unwrap();
    let p = Presentation::Groupoid { pg, action: Some(Arc::new(mult)) };
    assert!(matches!(degree::degree(&p, &DegreeOptions::default()), Err(Error::EmptyNotClosed)));
}

#[test]
fn unknown_registry_names_are_format_errors() {
    let bad = DegreeOptions { method: "guess".into(), ..Default::default() };
    let e = degree::degree(&corpus::make("na").unwrap(), &bad).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert!(registry::helly_strategies().get("nope").is_err());
}

#[test]
fn documents_round_trip() {
    for spec in ["na", "reduced-na", "skeleton:2,4", "boundary:3", "bcom:Q8", "group:S3", "lsg:3", "weyl:A2", "representable:2"] {
        let p = corpus::make(spec).unwrap();
        let text = io::to_json(&io::presentation_document(&p, 1_000_000).unwrap()).unwrap();
        let loaded = io::interpret(&io::parse(&text).unwrap(), None).unwrap();
        let again = loaded.presentation().unwrap();
        let pg = again.partial_groupoid().unwrap();
        assert!(validate(pg).is_empty(), "{spec}");
        assert_eq!(io::to_json(&io::presentation_document(&again, 1_000_000).unwrap()).unwrap(), text, "{spec}");
        assert_eq!(both(spec).degree, degree::degree(&again, &DegreeOptions::default()).unwrap().degree, "{spec}");
    }
}

#[test]
fn handwritten_documents() {
    let pga = r#"{"kind":"partial-group-action",
        "group":{"permutation_generators":[[1,0,2],[0,2,1]]},
        "carrier":["a","b"],
        "maps":{"0 1 2":[["a","a"],["b","b"]],"1 0 2":[["a","b"],["b","a"]]}}"#;
    match io::interpret(&io::parse(pga).unwrap(), None).unwrap() {
        io::Loaded::PartialAction(pa) => assert!(pa.validate().is_empty()),
        _ => panic!("expected a partial action"),
    }
    let closure = r#"{"kind":"closure-space","ground":["x","y","z"],"generators":[["x","y"],["y","z"],["x","z"],["x"],["y"],["z"],[]]}"#;
    match io::interpret(&io::parse(closure).unwrap(), None).unwrap() {
        io::Loaded::Closure { space, .. } => assert_eq!(space.helly_number().unwrap().helly_number, 3),
        _ => panic!("expected a closure space"),
    }
    let embedded = r#"{"kind":"group-embedded",
        "group":{"elements":["e","a","b"],"table":[[0,1,2],[1,2,0],[2,0,1]]},
        "elements":["e","a","b"],
        "simplices":{"2":[["e","e"],["e","a"],["a","e"],["e","b"],["b","e"],["a","b"],["b","a"]]}}"#;
    let loaded = io::interpret(&io::parse(embedded).unwrap(), None).unwrap();
    let p = loaded.presentation().unwrap();
    let pg = p.partial_groupoid().unwrap();
    assert!(validate(pg).is_empty());
    assert!(!pg.is_groupoid());
    let bad = r#"{"kind":"closure-space","ground":["x"],"generators":[["y"]]}"#;
    assert!(matches!(io::interpret(&io::parse(bad).unwrap(), None), Err(Error::Format(_))));
    assert!(io::parse(r#"{"kind":"mystery"}"#).is_err());
}

#[test]
fn corpus_reference_as_base() {
    let doc = r#"{"kind":"characteristic-action","base":"corpus:bcom:S3","carrier":["p"],"anchor":{"p":"*"},"edge_action":{}}"#;
    // an action that acts nowhere cannot be characteristic; loading still succeeds
    match io::interpret(&io::parse(doc).unwrap(), None) {
        Ok(io::Loaded::Groupoid { action: Some(a), .. }) => assert!(!action::validate_action(&a, 50, false).is_empty()),
        Ok(_) => panic!("expected an action"),
        Err(e) => assert!(matches!(e, Error::Format(_) | Error::Invalid(_)), "{e}"),
    }
}
