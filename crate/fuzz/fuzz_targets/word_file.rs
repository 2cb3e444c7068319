#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    let _ = lawforge::freeword::parse_word_lines(data);
});
