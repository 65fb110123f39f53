mod common;

use common::{check_golden, GOLDEN_CASES};

#[test]
fn json_output_matches_goldens() {
    let failures: Vec<String> = GOLDEN_CASES
        .iter()
        .filter_map(|(name, args, code)| check_golden(name, args, *code).err())
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
