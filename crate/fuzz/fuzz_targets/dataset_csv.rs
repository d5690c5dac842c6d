#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // Must never panic; on success every accepted value is finite and
    // strictly positive and the counters are consistent.
    if let Ok(dataset) = tailel::parse_dataset(text) {
        assert_eq!(dataset.parsed, dataset.values.len());
        assert!(dataset.values.iter().all(|v| v.is_finite() && *v > 0.0));
        let sample = dataset.sample().expect("accepted values form a sample");
        assert_eq!(sample.n(), dataset.parsed);
        assert_eq!(sample.rejected(), 0);
    }
});
