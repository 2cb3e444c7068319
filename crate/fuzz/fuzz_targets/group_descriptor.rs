#![no_main]

use lawforge::{Caps, Group, GroupDescriptor};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(d) = data.parse::<GroupDescriptor>() {
        let again: GroupDescriptor = d.to_string().parse().expect("display output parses");
        assert_eq!(again, d);
        // small caps keep construction cheap
        let caps = Caps { enumeration: 4096, closure: 4096, field_order: 64, ..Caps::default() };
        let _ = Group::new(&d, &caps);
    }
});
