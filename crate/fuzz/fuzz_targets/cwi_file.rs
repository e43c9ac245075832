#![no_main]

use editsimp::metrics::{parse_cwi, write_cwi};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(sentences) = parse_cwi(data) {
        assert_eq!(parse_cwi(&write_cwi(&sentences)).expect("written file parses"), sentences);
    }
});
