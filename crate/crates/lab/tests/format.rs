use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schanuel_core::exactlin::Prime;
use schanuel_core::extstruct::{ext_class_of, realize, ExtSpace};
use schanuel_core::quivalg::random_algebra;
use schanuel_core::repcat::random_representation_with;
use schanuel_lab::instance::NamedConflation;
use schanuel_lab::{parse_instance, InstanceError, InstanceFile};

const FIXTURES: [(&str, &str); 3] = [
    ("semisimple", include_str!("../fixtures/semisimple.json")),
    ("a2", include_str!("../fixtures/a2.json")),
    ("loop", include_str!("../fixtures/loop.json")),
];

fn validation_errors(text: &str) -> Vec<String> {
    match parse_instance(text) {
        Err(InstanceError::Validation(v)) => v.iter().map(|e| e.to_string()).collect(),
        Err(other) => panic!("expected a validation error, got {other}"),
        Ok(_) => panic!("expected a validation error, got a valid instance"),
    }
}

#[test]
fn fixtures_round_trip_byte_identically() {
    for (name, text) in FIXTURES {
        let inst = parse_instance(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(inst.to_canonical_string(), text, "{name} is not canonical");
    }
}

#[test]
fn minimal_one_vertex_instance_is_valid() {
    let inst =
        parse_instance(r#"{"field_p": 2, "quiver": {"vertices": 1, "arrows": []}, "max_path_length": 2}"#).unwrap();
    assert_eq!(inst.algebra.dim(), 1);
}

#[test]
fn entry_at_least_p_is_named() {
    let text = FIXTURES[1].1.replace(r#""a": [[1]]"#, r#""a": [[2]]"#);
    let errs = validation_errors(&text);
    // The rejected module also leaves the conflation using it unresolved.
    assert!(errs[1].contains("unknown module `I2`"), "{errs:?}");
    assert!(errs[0].contains("modules[2].arrow_maps.a[0][0]"), "{}", errs[0]);
    assert!(errs[0].contains("entry 2"), "{}", errs[0]);
    assert!(errs[0].starts_with("line "), "{}", errs[0]);
}

#[test]
fn negative_entries_reduce_mod_p() {
    let text = FIXTURES[1].1.replace(r#""a": [[1]]"#, r#""a": [[-1]]"#);
    let inst = parse_instance(&text).unwrap();
    assert_eq!(inst.module("I2").unwrap().arrow_maps()[0].get(0, 0), 1);
    assert_eq!(inst.to_canonical_string(), FIXTURES[1].1);
}

#[test]
fn non_composable_relation_is_rejected() {
    let text = r#"{
  "field_p": 2,
  "quiver": {"vertices": 3, "arrows": [{"label": "a", "source": 1, "target": 2}, {"label": "b", "source": 3, "target": 1}]},
  "relations": [[{"coeff": 1, "path": ["a", "b"]}]],
  "max_path_length": 2
}"#;
    let errs = validation_errors(text);
    assert!(errs.iter().any(|e| e.contains("relations[0][0].path") && e.contains("not composable")), "{errs:?}");
}

#[test]
fn short_and_unknown_relation_paths_are_rejected() {
    let base = FIXTURES[2].1;
    let short = base.replace(r#""path": ["a", "a"]"#, r#""path": ["a"]"#);
    assert!(validation_errors(&short).iter().any(|e| e.contains("length at least 2")));
    let unknown = base.replace(r#""path": ["a", "a"]"#, r#""path": ["a", "z"]"#);
    assert!(validation_errors(&unknown).iter().any(|e| e.contains("unknown arrow `z`")));
}

#[test]
fn relations_must_be_admissible_within_the_bound() {
    let text = FIXTURES[2].1.replace(
        "\"relations\": [\n    [\n      {\"coeff\": 1, \"path\": [\"a\", \"a\"]}\n    ]\n  ]",
        "\"relations\": []",
    );
    assert!(text.contains("\"relations\": []"));
    let errs = validation_errors(&text);
    assert!(errs.iter().any(|e| e.contains("relations")), "{errs:?}");
}

#[test]
fn syntax_errors_carry_a_line() {
    let text = FIXTURES[1].1.replacen("\"dims\": [1, 0],", "\"dims\": [1, 0]", 1);
    match parse_instance(&text) {
        Err(InstanceError::Parse(l)) => assert!(l.line.is_some_and(|n| n > 1), "{l}"),
        other => panic!("expected a parse error, got {other:?}"),
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let text = FIXTURES[0].1.replacen("\"field_p\": 3,", "\"field_p\": 3,\n  \"extra\": 1,", 1);
    assert!(matches!(parse_instance(&text), Err(InstanceError::Parse(_))));
}

#[test]
fn bad_modules_and_conflations_are_located() {
    let a2 = FIXTURES[1].1;
    let wrong_dims = a2.replacen("\"dims\": [0, 1]", "\"dims\": [0, 1, 1]", 1);
    assert!(validation_errors(&wrong_dims).iter().any(|e| e.contains("modules[1].dims")));
    let unknown = a2.replace("\"b\": \"I2\"", "\"b\": \"nope\"");
    assert!(validation_errors(&unknown).iter().any(|e| e.contains("conflations[0].b") && e.contains("`nope`")));
    let not_exact = a2.replace("\"y\": [[[1]], []]", "\"y\": [[[0]], []]");
    assert!(validation_errors(&not_exact)
        .iter()
        .any(|e| e.contains("conflations[0]") && e.contains("not a conflation")));
    let missing = a2.replacen("\"arrow_maps\": {\n        \"a\": [[1]]\n      }", "\"arrow_maps\": {}", 1);
    assert!(validation_errors(&missing).iter().any(|e| e.contains("missing arrow map")));
}

#[test]
fn bad_prime_and_vertices_are_rejected() {
    let text = FIXTURES[0].1.replacen("\"field_p\": 3", "\"field_p\": 4", 1);
    assert!(validation_errors(&text).iter().any(|e| e.contains("field_p")));
    let text = FIXTURES[1].1.replace("\"target\": 2}", "\"target\": 5}");
    assert!(validation_errors(&text).iter().any(|e| e.contains("quiver.arrows[0]")));
}

#[test]
fn hash_is_stable_under_round_trip() {
    for (_, text) in FIXTURES {
        let a = parse_instance(text).unwrap();
        let b = parse_instance(&a.to_canonical_string()).unwrap();
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}

fn random_instance(seed: u64) -> InstanceFile {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = Prime::new([2u64, 3, 5][rng.random_range(0..3)]).unwrap();
    let alg = random_algebra(&mut rng, p, 8);
    let a = random_representation_with(&alg, 3, &mut rng).unwrap();
    let c = random_representation_with(&alg, 3, &mut rng).unwrap();
    let delta = ExtSpace::new(&c, &a).unwrap().random_class(&mut rng);
    let conf = realize(&delta);
    InstanceFile {
        algebra: alg,
        modules: vec![("A".into(), a), ("B".into(), conf.b().clone()), ("C".into(), c)],
        conflations: vec![NamedConflation {
            name: "t".into(),
            a: "A".into(),
            b: "B".into(),
            c: "C".into(),
            conflation: conf,
        }],
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_instances_round_trip(seed in any::<u64>()) {
        let inst = random_instance(seed);
        let text = inst.to_canonical_string();
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(back.to_canonical_string(), text);
        for ((_, m), (_, n)) in inst.modules.iter().zip(&back.modules) {
            prop_assert_eq!(m.dims(), n.dims());
            prop_assert_eq!(m.arrow_maps(), n.arrow_maps());
        }
        let before = ext_class_of(&inst.conflations[0].conflation).unwrap();
        let after = ext_class_of(&back.conflations[0].conflation).unwrap();
        prop_assert_eq!(before.coords(), after.coords());
    }
}

/// Checks `required` and `additionalProperties: false` of the shipped schema
/// against a document, following `properties`, `items` and local `$ref`s.
fn conforms(
    schema: &serde_json::Value,
    root: &serde_json::Value,
    doc: &serde_json::Value,
    at: &str,
) -> Result<(), String> {
    let schema = match schema.get("$ref").and_then(|r| r.as_str()) {
        Some(r) => root.pointer(r.trim_start_matches('#')).ok_or(format!("{at}: dangling {r}"))?,
        None => schema,
    };
    if let (Some(props), Some(obj)) = (schema.get("properties").and_then(|p| p.as_object()), doc.as_object()) {
        for req in schema.get("required").and_then(|r| r.as_array()).into_iter().flatten() {
            let key = req.as_str().unwrap();
            if !obj.contains_key(key) {
                return Err(format!("{at}: missing `{key}`"));
            }
        }
        for (k, v) in obj {
            match props.get(k) {
                Some(s) => conforms(s, root, v, &format!("{at}.{k}"))?,
                None if schema["additionalProperties"] == false => return Err(format!("{at}: unexpected `{k}`")),
                None => {}
            }
        }
    }
    if let (Some(obj), Some(extra)) = (doc.as_object(), schema.get("additionalProperties").filter(|a| a.is_object())) {
        for (k, v) in obj {
            conforms(extra, root, v, &format!("{at}.{k}"))?;
        }
    }
    if let (Some(items), Some(arr)) = (schema.get("items"), doc.as_array()) {
        for (i, v) in arr.iter().enumerate() {
            conforms(items, root, v, &format!("{at}[{i}]"))?;
        }
    }
    Ok(())
}

#[test]
fn fixtures_conform_to_the_shipped_schema() {
    let schema: serde_json::Value = serde_json::from_str(include_str!("../docs/instance.schema.json")).unwrap();
    for (name, text) in FIXTURES {
        let doc: serde_json::Value = serde_json::from_str(text).unwrap();
        conforms(&schema, &schema, &doc, "$").unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    let mut extra: serde_json::Value = serde_json::from_str(FIXTURES[1].1).unwrap();
    extra["modules"][0]["colour"] = serde_json::json!(1);
    assert!(conforms(&schema, &schema, &extra, "$").is_err());
    assert!(matches!(parse_instance(&extra.to_string()), Err(InstanceError::Parse(_))));
}
