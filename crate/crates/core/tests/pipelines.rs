mod common;

use netccs::ccs::build_ccs_lts;
use netccs::encode::{encode_2tau, encode_as, encode_ccs_net, EncodingClass};
use netccs::equivalence::{has_divergent_path, strong_bisim, weak_bisim};
use netccs::io::{parse_ccs, parse_net_text, parse_pnml, print_ccs, read_aut, write_aut};
use netccs::petri::classify;
use netccs::transform::TransformOptions;
use netccs::{Error, ExplorationLimits, Marking};

use common::fixture;

fn load(name: &str) -> (netccs::PetriNet, Marking) {
    parse_net_text(&fixture(name)).unwrap()
}

#[test]
fn ccs_fixture_is_bisimilar_to_sync_net() {
    let (net, m0) = load("sync_net.pn");
    let (q, defs) = parse_ccs(&fixture("sync_net.ccs")).unwrap();
    let lim = ExplorationLimits::default();
    let lhs = net.build_lts(&m0, &lim).unwrap();
    let rhs = build_ccs_lts(&q, &defs, &lim).unwrap();
    assert!(strong_bisim(&lhs, &rhs).verdict);
}

#[test]
fn sync_net_lts_matches_aut_fixture() {
    let (net, m0) = load("sync_net.pn");
    let lts = net.build_lts(&m0, &ExplorationLimits::default()).unwrap();
    assert_eq!(write_aut(&lts), fixture("sync_net.aut"));
    assert!(strong_bisim(&lts, &read_aut(&fixture("sync_net.aut")).unwrap()).verdict);
}

#[test]
fn mutated_encoding_is_caught() {
    let (net, m0) = load("sync_net.pn");
    let (q, defs) = parse_ccs(&fixture("sync_net_mutated.ccs")).unwrap();
    let lim = ExplorationLimits::default();
    let report = strong_bisim(
        &net.build_lts(&m0, &lim).unwrap(),
        &build_ccs_lts(&q, &defs, &lim).unwrap(),
    );
    assert!(!report.verdict);
    assert!(report.distinguisher.is_some());
}

#[test]
fn generator_golden() {
    let (net, m0) = load("generator.pn");
    let enc = encode_2tau(&net, &m0).unwrap();
    assert_eq!(print_ccs(&enc), "X_t1\nX_p1 = 0\nX_t1 = b.(X_t1 | X_p1)\n");
    // the net is unbounded; so is its encoding
    let lim = ExplorationLimits::new(100);
    assert!(matches!(
        net.build_lts(&m0, &lim),
        Err(Error::ResourceLimit { .. })
    ));
    assert!(matches!(
        build_ccs_lts(&enc.process, &enc.defs, &lim),
        Err(Error::ResourceLimit { .. })
    ));
}

#[test]
fn workflow_fixture_pipeline() {
    let (net, m0) = load("fcwf.pn");
    assert_eq!(EncodingClass::narrowest(&net), Some(EncodingClass::Fcwf));
    let out = encode_as(EncodingClass::Fcwf, &net, &m0, TransformOptions::default()).unwrap();
    assert_eq!(out.trace.len(), 2);
    let lim = ExplorationLimits::default();
    let lhs = net.build_lts(&m0, &lim).unwrap();
    let rhs = build_ccs_lts(&out.encoding.process, &out.encoding.defs, &lim).unwrap();
    assert!(weak_bisim(&lhs, &rhs).verdict);
    assert!(!strong_bisim(&lhs, &rhs).verdict);
    assert_eq!(has_divergent_path(&lhs), has_divergent_path(&rhs));
}

#[test]
fn pnml_twin_classifies_like_text() {
    let (a, ma) = parse_pnml(&fixture("fcwf.pnml")).unwrap();
    let (b, mb) = load("fcwf.pn");
    assert_eq!(classify(&a), classify(&b));
    assert_eq!((a, ma), (b, mb));
}

#[test]
fn shared_pair_group_choice_pipeline() {
    let (net, m0) = load("shared_pair.pn");
    let c = classify(&net);
    assert!(c.is_group_choice && !c.is_free_choice);
    let out = encode_as(EncodingClass::Gc, &net, &m0, TransformOptions::default()).unwrap();
    let lim = ExplorationLimits::default();
    let lhs = net.build_lts(&m0, &lim).unwrap();
    let rhs = build_ccs_lts(&out.encoding.process, &out.encoding.defs, &lim).unwrap();
    assert!(weak_bisim(&lhs, &rhs).verdict);
}

#[test]
fn overlap_is_rejected() {
    let (net, m0) = load("overlap.pn");
    assert_eq!(EncodingClass::narrowest(&net), None);
    for class in [EncodingClass::Gc, EncodingClass::Fc, EncodingClass::Ccs] {
        assert!(matches!(
            encode_as(class, &net, &m0, TransformOptions::default()),
            Err(Error::Precondition(_))
        ));
    }
}

#[test]
fn forced_pipeline_still_runs() {
    // shared_pair is not free-choice, but preset reduction only needs the
    // presets, so forcing it through still yields a 2-tau net
    let (net, m0) = load("shared_pair.pn");
    let opts = TransformOptions {
        force: true,
        ..TransformOptions::default()
    };
    let out = encode_as(EncodingClass::Fc, &net, &m0, opts).unwrap();
    assert!(classify(&out.net).is_2tau_sync);
}

#[test]
fn encoding_rejects_nets_outside_the_class() {
    let (net, m0) = load("join3.pn");
    assert!(matches!(
        encode_ccs_net(&net, &m0),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        encode_2tau(&net, &m0),
        Err(Error::Precondition(_))
    ));
}
