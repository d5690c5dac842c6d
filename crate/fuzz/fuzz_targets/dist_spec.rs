#![no_main]

use libfuzzer_sys::fuzz_target;
use tailel::DistributionSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = text.parse::<DistributionSpec>() {
        spec.validate().expect("parser only accepts valid specs");
        assert!(spec.true_gamma().unwrap() > 0.0);
        // canonical form re-parses to the same spec
        let again: DistributionSpec = spec.to_string().parse().expect("display re-parses");
        assert_eq!(again, spec);
    }
});
