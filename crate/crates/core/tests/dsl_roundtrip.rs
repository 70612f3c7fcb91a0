mod common;

use common::laws;
use pedal_core::dsl::pretty::guard;
use pedal_core::dsl::{parse_guard, DiagCode};
use pedal_core::fixtures::{self, RandomModelConfig};
use pedal_core::{parse, pretty_print};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, ..ProptestConfig::default() })]

    #[test]
    fn random_models_round_trip(seed in any::<u64>()) {
        let model = fixtures::random_model(seed, RandomModelConfig::default());
        let text = pretty_print(&model);
        let back = parse(&text).map_err(|d| TestCaseError::fail(d.to_string()))?;
        prop_assert_eq!(&back, &model);
        prop_assert_eq!(pretty_print(&back), text);
    }

    #[test]
    fn random_bodies_round_trip(body in laws::body()) {
        let mut model = parse(laws::LAW_MODEL).unwrap();
        model.rules[0].body = body;
        let back = parse(&pretty_print(&model)).map_err(|d| TestCaseError::fail(d.to_string()))?;
        prop_assert_eq!(back, model);
    }

    #[test]
    fn guards_round_trip(g in laws::guard()) {
        let text = guard(&g);
        prop_assert_eq!(parse_guard(&text).unwrap(), g);
    }
}

#[test]
fn bundled_models_round_trip() {
    for (name, src) in fixtures::BUNDLED {
        let model = parse(src).unwrap_or_else(|d| panic!("{name}: {d}"));
        assert_eq!(parse(&pretty_print(&model)).unwrap(), model, "{name}");
    }
}

#[test]
fn duplicate_rule_reported_with_position() {
    let src = "InActions A\nBoolVars v\nInit v = false\nRule A: guard v do v := true end\nRule A: guard v do v := false end\n";
    let diags = parse(src).unwrap_err();
    assert_eq!(diags.codes(), vec![DiagCode::DuplicateRule]);
    assert!(
        diags.render("m.phdsl").starts_with("m.phdsl:5:"),
        "{}",
        diags.render("m.phdsl")
    );
}

#[test]
fn comments_and_whitespace_are_ignored() {
    let plain = parse(fixtures::ONE_RULE).unwrap();
    let noisy = format!(
        "// header\n\n{}\n// trailer\n",
        fixtures::ONE_RULE.replace('\n', "  \n")
    );
    assert_eq!(parse(&noisy).unwrap(), plain);
}
