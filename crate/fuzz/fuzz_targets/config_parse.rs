#![no_main]

use editsimp::EngineConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(cfg) = data.parse::<EngineConfig>() {
        let again: EngineConfig = cfg.to_config_string().parse().expect("rendered config parses");
        assert_eq!(again, cfg);
    }
});
