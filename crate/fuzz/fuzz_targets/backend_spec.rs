#![no_main]

use editsimp_cli::spec::BackendSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = data.parse::<BackendSpec>();
});
