#![no_main]

use lawforge::verify::LawCertificate;
use lawforge::Word;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let _ = serde_json::from_slice::<Word>(data);
    if let Ok(c) = serde_json::from_slice::<LawCertificate>(data) {
        let out = serde_json::to_vec(&c).unwrap();
        assert_eq!(serde_json::from_slice::<LawCertificate>(&out).unwrap(), c);
    }
});
