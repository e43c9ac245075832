#![no_main]

use editsimp::backends::tree::check_well_nested;
use editsimp::backends::Tree;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let Ok(tree) = Tree::parse(data) else { return };
    let leaves: Vec<String> = tree.leaves().into_iter().map(str::to_owned).collect();
    if let Ok(spans) = tree.constituents(&leaves) {
        check_well_nested(&spans, leaves.len()).expect("aligned spans are well nested");
    }
});
