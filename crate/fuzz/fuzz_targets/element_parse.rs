#![no_main]

use std::sync::OnceLock;

use lawforge::{Caps, Group};
use libfuzzer_sys::fuzz_target;

fn groups() -> &'static [Group] {
    static G: OnceLock<Vec<Group>> = OnceLock::new();
    G.get_or_init(|| {
        ["C(12)", "Sym(5)", "GL(2,4)", "PSL(2,9)", "SU(3,2)", "C(2)xSym(3)", "C7:C3"]
            .iter()
            .map(|s| Group::parse(s, &Caps::default()).unwrap())
            .collect()
    })
}

fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let Ok(s) = std::str::from_utf8(rest) else { return };
    let g = &groups()[sel as usize % groups().len()];
    if let Ok(e) = g.parse_element(s) {
        assert_eq!(g.parse_element(&g.format_element(&e)).unwrap(), e);
    }
});
