use std::path::PathBuf;
use std::process::Command;

use pellcf::OutputRecord;

/// Golden name, arguments (without `--json`), expected exit code.
pub const GOLDEN_CASES: &[(&str, &[&str], i32)] = &[
    ("cf_21_terms_6", &["cf", "21", "--terms", "6"], 0),
    ("cf_4", &["cf", "4"], 2),
    ("cf_414_terms_4", &["cf", "414", "--terms", "4"], 0),
    ("pell_21_count_2", &["pell", "21", "--count", "2"], 0),
    (
        "pellgen_21_4_all",
        &["pellgen", "21", "4", "--count", "2", "--imprimitive", "--trivial"],
        0,
    ),
    ("pellgen_7_5", &["pellgen", "7", "5"], 1),
    ("ab_18_23_count_1", &["ab", "18", "23", "--count", "1"], 0),
    ("ab_16_19", &["ab", "16", "19"], 1),
    ("ab_18_24", &["ab", "18", "24"], 2),
    ("oracle_ab_25_19", &["oracle", "ab", "25", "19", "--bound", "100"], 0),
    ("oracle_thue_6_5_3", &["oracle", "thue", "6", "5", "3", "--bound", "1000"], 0),
    ("oracle_pellgen_21_m3", &["oracle", "pellgen", "21", "-3", "--bound", "100"], 0),
];

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
        .join(format!("{name}.json"))
}

/// Runs the binary with `--json` and compares stdout with the stored golden.
/// With `UPDATE_GOLDENS=1` the golden is rewritten instead.
pub fn check_golden(name: &str, args: &[&str], code: i32) -> Result<(), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pellcf"))
        .arg("--json")
        .args(args)
        .output()
        .map_err(|e| format!("{name}: cannot run binary: {e}"))?;
    if out.status.code() != Some(code) {
        return Err(format!("{name}: exit {:?}, expected {code}", out.status.code()));
    }
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::write(&path, &out.stdout).map_err(|e| e.to_string())?;
    }
    let want = std::fs::read(&path).map_err(|e| format!("{name}: {e}"))?;
    if want != out.stdout {
        return Err(format!(
            "{name}: output differs from golden\n--- got\n{}",
            String::from_utf8_lossy(&out.stdout)
        ));
    }
    // the record must survive a parse/serialize round trip unchanged
    let text = String::from_utf8(want).map_err(|e| e.to_string())?;
    let record: OutputRecord = serde_json::from_str(&text).map_err(|e| format!("{name}: {e}"))?;
    if record.to_json() != text {
        return Err(format!("{name}: record does not round-trip"));
    }
    Ok(())
}
