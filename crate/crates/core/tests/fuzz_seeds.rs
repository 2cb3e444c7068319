//! Replays the checked-in fuzz corpus through the parsers with the same
//! round-trip assertions the fuzz targets make.

use std::fs;
use std::path::PathBuf;

use lawforge::verify::LawCertificate;
use lawforge::{Caps, Group, GroupDescriptor, LieTypeTag, Word};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut paths: Vec<_> =
        fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())).map(|e| e.unwrap().path()).collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds for {target}");
    paths.into_iter().map(|p| fs::read(p).unwrap()).collect()
}

fn text_seeds(target: &str) -> Vec<String> {
    seeds(target).into_iter().map(|b| String::from_utf8(b).unwrap()).collect()
}

#[test]
fn word_seeds() {
    let mut ok = 0;
    for s in text_seeds("word_parse") {
        if let Ok(w) = s.parse::<Word>() {
            assert_eq!(w.to_string().parse::<Word>().unwrap(), w, "{s:?}");
            ok += 1;
        }
    }
    assert!(ok >= 5);
    let parsed: Vec<bool> =
        text_seeds("word_file").iter().map(|s| lawforge::freeword::parse_word_lines(s).is_ok()).collect();
    assert_eq!(parsed, [true, true, true, false]);
}

#[test]
fn descriptor_seeds() {
    let caps = Caps { enumeration: 4096, closure: 4096, field_order: 64, ..Caps::default() };
    let mut ok = 0;
    for s in text_seeds("group_descriptor") {
        if let Ok(d) = s.parse::<GroupDescriptor>() {
            assert_eq!(d.to_string().parse::<GroupDescriptor>().unwrap(), d, "{s:?}");
            let _ = Group::new(&d, &caps);
            ok += 1;
        }
    }
    assert!(ok >= 12, "{ok}");
}

#[test]
fn tag_and_caps_seeds() {
    let tags = text_seeds("lie_tag");
    assert!(tags.iter().filter(|s| LieTypeTag::parse_any_rank(s).is_ok()).count() >= 8);
    for s in &tags {
        let _ = s.parse::<LieTypeTag>();
    }
    let caps: Vec<bool> = text_seeds("caps_parse").iter().map(|s| s.parse::<Caps>().is_ok()).collect();
    assert_eq!(caps, [true, true, false, false, true]);
}

#[test]
fn element_seeds() {
    let groups: Vec<Group> = ["C(12)", "Sym(5)", "GL(2,4)", "PSL(2,9)", "SU(3,2)", "C(2)xSym(3)", "C7:C3"]
        .iter()
        .map(|s| Group::parse(s, &Caps::default()).unwrap())
        .collect();
    let mut ok = 0;
    for data in seeds("element_parse") {
        let (&sel, rest) = data.split_first().unwrap();
        let Ok(s) = std::str::from_utf8(rest) else { continue };
        let g = &groups[sel as usize % groups.len()];
        if let Ok(e) = g.parse_element(s) {
            assert_eq!(g.parse_element(&g.format_element(&e)).unwrap(), e, "{s:?}");
            ok += 1;
        }
    }
    assert!(ok >= 8, "{ok}");
}

#[test]
fn certificate_seeds() {
    let mut ok = 0;
    for data in seeds("certificate_json") {
        let _ = serde_json::from_slice::<Word>(&data);
        if let Ok(c) = serde_json::from_slice::<LawCertificate>(&data) {
            let out = serde_json::to_vec(&c).unwrap();
            assert_eq!(serde_json::from_slice::<LawCertificate>(&out).unwrap(), c);
            ok += 1;
        }
    }
    assert_eq!(ok, 2);
}
