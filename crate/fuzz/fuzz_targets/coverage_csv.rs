#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rows) = tailel::parse_coverage_csv(text) {
        for row in rows {
            assert!(row.coverage.is_finite());
            assert!(row.mc_std_err.is_finite());
        }
    }
});
