#![no_main]

use libfuzzer_sys::fuzz_target;
use tailel::KGrid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = text.parse::<KGrid>() {
        assert!(grid.min >= 1 && grid.min <= grid.max && grid.step >= 1);
        // only materialize grids of sane size; parsing itself is O(1)
        if (grid.max - grid.min) / grid.step <= 10_000 {
            let values = grid.values();
            assert!(!values.is_empty());
            assert!(values.windows(2).all(|w| w[1] == w[0] + grid.step));
        }
        let again: KGrid = grid.to_string().parse().expect("display re-parses");
        assert_eq!(again, grid);
    }
});
