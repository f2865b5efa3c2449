use std::path::Path;

use ordtop::finstruct::{
    parse_any, parse_json, parse_structure, Carrier, FinQoset, FinTopology, ParseError, PointSet, Relation, Structure,
};
use proptest::prelude::*;

const NAMES: [&str; 6] = ["a", "b2", "top", "x_1", "Bot", "m"];

fn structure() -> impl Strategy<Value = Structure> {
    (1usize..=6).prop_flat_map(|n| {
        let sets = prop::collection::vec(0u32..1 << n, 0..5);
        let pairs = prop::collection::vec((0..n, 0..n), 0..6);
        (
            Just(n),
            prop::option::of(sets),
            prop::option::of(pairs.clone()),
            prop::option::of(pairs),
            any::<bool>(),
        )
            .prop_map(|(n, sets, order, rel, standard)| {
                let carrier = if standard {
                    Carrier::standard(n)
                } else {
                    Carrier::new(NAMES[..n].to_vec()).unwrap()
                };
                Structure {
                    topology: sets
                        .map(|s| FinTopology::generated_by(carrier.clone(), s.into_iter().map(PointSet::from_bits))),
                    order: order.map(|p| FinQoset::generated(carrier.clone(), p)),
                    relation: rel.map(|p| Relation::from_pairs(n, p)),
                    carrier,
                }
            })
    })
}

proptest! {
    #[test]
    fn text_round_trip(s in structure()) {
        let text = s.to_text();
        let back = parse_structure(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_text(), text);
    }

    #[test]
    fn json_round_trip(s in structure()) {
        let json = s.to_json();
        let back = parse_json(&json).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_json(), json);
        prop_assert_eq!(parse_any(&back.to_json()).unwrap(), s);
    }

    #[test]
    fn parsers_never_panic(text in "[a-z{}:,<=>#\\- \n\\[\\]\"]{0,60}") {
        let _ = parse_structure(&text);
        let _ = parse_json(&text);
        let _ = parse_any(&text);
    }
}

#[test]
fn errors_carry_positions() {
    let err = parse_structure("points: a b\nopens: {a}, {b}\n").unwrap_err();
    assert!(matches!(err, ParseError::NotATopology { .. }), "{err}");
    assert!(err.to_string().starts_with("line 2"), "{err}");
    let err = parse_structure("points: a b\norder: a<=c\n").unwrap_err();
    assert!(err.to_string().contains("`c`"), "{err}");
    assert!(matches!(parse_structure("# nothing\n"), Err(ParseError::MissingPoints)));
    let err = parse_structure("opens: {}\n").unwrap_err();
    assert!(err.to_string().contains("`points` must come first"), "{err}");
}

#[test]
fn fuzz_seeds_do_not_panic() {
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let mut seen = 0;
    for target in ["parse_text", "parse_json", "parse_any"] {
        for entry in std::fs::read_dir(corpus.join(target)).unwrap() {
            let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
            let _ = parse_structure(&text);
            let _ = parse_json(&text);
            let _ = parse_any(&text);
            seen += 1;
        }
    }
    assert!(seen >= 10);
}
