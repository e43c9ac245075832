#![no_main]

use editsimp::{EngineConfig, TraceRecord};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    for line in data.lines() {
        if let Ok(rec) = TraceRecord::from_json_line(line) {
            let _ = rec.replay(&EngineConfig::default());
            let again = TraceRecord::from_json_line(&rec.to_json_line()).expect("written record parses");
            assert_eq!(again.steps.len(), rec.steps.len());
        }
    }
});
