//! Root data shipped with the crate.

use crate::root_datum::{RootDatum, RootDatumJson};

pub const SL2_JSON: &str = include_str!("../fixtures/sl2.json");
pub const SP4_JSON: &str = include_str!("../fixtures/sp4.json");
pub const A1A1_JSON: &str = include_str!("../fixtures/a1a1.json");

fn parse(s: &str) -> RootDatumJson {
    serde_json::from_str(s).expect("bundled fixture parses")
}

pub fn sl2_json() -> RootDatumJson {
    parse(SL2_JSON)
}

pub fn sp4_json() -> RootDatumJson {
    parse(SP4_JSON)
}

pub fn a1a1_json() -> RootDatumJson {
    parse(A1A1_JSON)
}

pub fn sl2() -> RootDatum {
    RootDatum::from_json(&sl2_json()).expect("bundled fixture is valid")
}

pub fn sp4() -> RootDatum {
    RootDatum::from_json(&sp4_json()).expect("bundled fixture is valid")
}

pub fn a1a1() -> RootDatum {
    RootDatum::from_json(&a1a1_json()).expect("bundled fixture is valid")
}

/// Fixture by name: `sl2`, `sp4` or `a1a1`.
pub fn by_name(name: &str) -> Option<RootDatum> {
    match name.to_ascii_lowercase().trim_end_matches(".json") {
        "sl2" => Some(sl2()),
        "sp4" => Some(sp4()),
        "a1a1" => Some(a1a1()),
        _ => None,
    }
}
