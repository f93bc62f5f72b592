//! Every claim anchor in the registry is exercised by some suite item, every
//! suite item points at a registered anchor, and item ids are unique within
//! each report.

use std::collections::BTreeSet;

use flab_core::anchors;
use flab_core::group::DEFAULT_CAP;
use flab_core::report::CheckReport;
use flab_core::suites;

fn cheap_reports() -> Vec<CheckReport> {
    vec![
        suites::suite_prop2_1(3, None, DEFAULT_CAP, 0).unwrap(),
        suites::suite_prop2_3(3, DEFAULT_CAP, 0).unwrap(),
        suites::suite_lemma5_1(3, 4, DEFAULT_CAP, 0).unwrap(),
        suites::suite_symmetric(&[3, 9], 3, DEFAULT_CAP, 0).unwrap(),
        suites::suite_fusion_examples(DEFAULT_CAP, 0).unwrap(),
    ]
}

#[test]
fn anchors_and_suites_cover_each_other() {
    let registry: BTreeSet<&str> = anchors::anchor_keys().collect();
    let mut used: BTreeSet<String> = BTreeSet::new();
    for report in cheap_reports() {
        for item in &report.items {
            assert!(
                anchors::anchor_text(&item.anchor).is_some(),
                "item {} in suite {} uses unregistered anchor {}",
                item.id,
                report.suite,
                item.anchor,
            );
            used.insert(item.anchor.clone());
        }
    }
    let used: BTreeSet<&str> = used.iter().map(|a| a.as_str()).collect();
    let unused: Vec<&&str> = registry.difference(&used).collect();
    assert!(unused.is_empty(), "anchors never exercised by any suite: {unused:?}");
    assert_eq!(used, registry);
}

#[test]
fn item_ids_are_unique_within_each_report() {
    for report in cheap_reports() {
        let mut seen = BTreeSet::new();
        for item in &report.items {
            assert!(
                seen.insert(item.id.clone()),
                "duplicate item id {} in suite {}",
                item.id,
                report.suite,
            );
        }
    }
}

#[test]
fn rendered_text_names_every_item() {
    for report in cheap_reports() {
        let text = report.render_text();
        for item in &report.items {
            assert!(
                text.lines().any(|line| line.contains(&item.id)),
                "render_text for {} omits item {}",
                report.suite,
                item.id,
            );
        }
        assert!(text.contains("result:"));
    }
}
