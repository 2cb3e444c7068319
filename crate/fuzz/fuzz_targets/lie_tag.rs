#![no_main]

use lawforge::LieTypeTag;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = data.parse::<LieTypeTag>();
    let _ = LieTypeTag::parse_any_rank(data);
});
