#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(methods) = tailel::parse_methods(text) {
        assert!(!methods.is_empty());
        // duplicates are collapsed
        for (i, m) in methods.iter().enumerate() {
            assert!(!methods[..i].contains(m));
        }
    }
});
