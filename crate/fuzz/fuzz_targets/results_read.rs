//! Results decoding must be total over arbitrary text, and accepted
//! files must round-trip through the writer byte-for-byte in content.

#![no_main]

use lab::{read_results_str, results_to_string};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok((rows, config)) = read_results_str(text) else {
        return;
    };
    let rendered = results_to_string(&rows, config.as_ref());
    let (rows_again, config_again) =
        read_results_str(&rendered).expect("rendered results must parse");
    assert_eq!(rows_again, rows);
    assert_eq!(config_again, config);
});
