#![no_main]

use editsimp::backends::mock::{parse_synonyms, parse_word_list};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(words) = parse_word_list(data) {
        assert!(words.iter().all(|w| !w.is_empty() && !w.contains(char::is_whitespace)));
    }
    if let Ok(table) = parse_synonyms(data) {
        assert!(table.iter().all(|(k, v)| !k.is_empty() && !v.is_empty()));
    }
});
