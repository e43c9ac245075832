#![no_main]

use editsimp::text::{detokenize, tokenize_str};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let tokens = tokenize_str(data);
    let surface = detokenize(&tokens);
    assert_eq!(tokenize_str(&surface), tokens);
    let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    assert_eq!(strip(&surface), strip(data));
});
