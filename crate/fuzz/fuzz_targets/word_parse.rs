#![no_main]

use lawforge::Word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(w) = data.parse::<Word>() {
        let again: Word = w.to_string().parse().expect("display output parses");
        assert_eq!(again, w);
    }
});
