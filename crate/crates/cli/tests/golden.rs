//! Reports must match the checked-in golden files byte for byte. Set
//! `PBWFORGE_BLESS=1` to rewrite them after an intended change.

mod common;

use common::{golden_cases, golden_dir, pbwforge};

#[test]
fn reports_match_golden_files() {
    let bless = std::env::var_os("PBWFORGE_BLESS").is_some();
    let mut mismatched = Vec::new();
    for (name, args) in golden_cases() {
        let first = pbwforge(&args).stdout;
        let second = pbwforge(&args).stdout;
        assert_eq!(first, second, "{name}: output differs between runs");
        let path = golden_dir().join(&name);
        if bless {
            std::fs::write(&path, &first).unwrap();
            continue;
        }
        let want = std::fs::read(&path).unwrap_or_else(|e| panic!("{name}: {e}"));
        if want != first {
            mismatched.push(name);
        }
    }
    assert!(mismatched.is_empty(), "outputs differ from golden files: {mismatched:?}");
}
