mod common;

use std::collections::BTreeSet;

use tenseq::kernel::RuleId;

#[test]
fn every_table_row_agrees_with_the_checker() {
    let failures: Vec<String> = common::rule_table().iter().filter_map(|c| common::run_case(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn table_covers_each_rule_both_ways() {
    let table = common::rule_table();
    let pos: BTreeSet<RuleId> = table.iter().filter(|c| c.expect.is_none()).map(|c| c.rule).collect();
    let neg: BTreeSet<RuleId> = table.iter().filter(|c| c.expect.is_some()).map(|c| c.rule).collect();
    for &r in RuleId::ALL {
        if r != RuleId::ConStruct {
            assert!(pos.contains(&r), "no valid instance of {r}");
        }
        assert!(neg.contains(&r), "no invalid instance of {r}");
    }
    assert!(table.len() >= 40);
}
