#![no_main]

use libfuzzer_sys::fuzz_target;
use tailel::HillPlotTable;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(table) = HillPlotTable::parse_csv(text) {
        for row in &table.rows {
            assert!(row.hill.is_finite());
            assert_eq!(row.bounds.len(), table.methods.len());
        }
        // re-emission parses back to the same shape
        let again = HillPlotTable::parse_csv(&table.to_csv()).expect("emitted CSV re-parses");
        assert_eq!(again.methods, table.methods);
        assert_eq!(again.rows.len(), table.rows.len());
    }
});
