//! Config parsing must be total over arbitrary text, and accepted
//! configs must round-trip through their own TOML rendering.

#![no_main]

use lab::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(config) = ExperimentConfig::from_toml_str(text) else {
        return;
    };
    let rendered = config.to_toml_string().expect("validated config must serialize");
    let reparsed = ExperimentConfig::from_toml_str(&rendered)
        .expect("rendered config must parse and validate");
    assert_eq!(reparsed, config);
});
