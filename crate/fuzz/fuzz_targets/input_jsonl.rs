#![no_main]

use editsimp_cli::input::parse_input;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(inputs) = parse_input(data) {
        assert!(inputs.iter().all(|i| !i.sentence.is_empty()));
    }
});
