#![no_main]

use lawforge::Caps;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = data.parse::<Caps>();
});
