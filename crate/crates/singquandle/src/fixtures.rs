//! Embedded copies of the example structures and shadows shipped under
//! `fixtures/`. The command line accepts either paths to such files or
//! these names directly.

use crate::algebra::{self, FiniteSingquandle};
use crate::shadow::{self, ShadowStructure};

const STRUCTURES: [(&str, &str); 6] = [
    ("z4_a3b2c3", include_str!("../fixtures/z4_a3b2c3.json")),
    ("z6_a5b2c1", include_str!("../fixtures/z6_a5b2c1.json")),
    ("z8_a5b3c4", include_str!("../fixtures/z8_a5b3c4.json")),
    ("z8_a3b7c6", include_str!("../fixtures/z8_a3b7c6.json")),
    ("z10_a3b4c6", include_str!("../fixtures/z10_a3b4c6.json")),
    ("z12_a5b5c10", include_str!("../fixtures/z12_a5b5c10.json")),
];

const SHADOWS: [(&str, &str); 6] = [
    (
        "shadow_z6_z2",
        include_str!("../fixtures/shadow_z6_z2.json"),
    ),
    (
        "shadow_z8_z4",
        include_str!("../fixtures/shadow_z8_z4.json"),
    ),
    ("shadow_z8_w", include_str!("../fixtures/shadow_z8_w.json")),
    (
        "shadow_z8_z6",
        include_str!("../fixtures/shadow_z8_z6.json"),
    ),
    (
        "shadow_z10_z4",
        include_str!("../fixtures/shadow_z10_z4.json"),
    ),
    (
        "shadow_z12_z8",
        include_str!("../fixtures/shadow_z12_z8.json"),
    ),
];

pub fn structure_names() -> Vec<&'static str> {
    STRUCTURES.iter().map(|(n, _)| *n).collect()
}

pub fn shadow_names() -> Vec<&'static str> {
    SHADOWS.iter().map(|(n, _)| *n).collect()
}

/// Source text of an embedded structure file, usable as a host resolver
/// for shadow files.
pub fn structure_text(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    STRUCTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| *text)
}

pub fn structure(name: &str) -> Option<FiniteSingquandle> {
    let text = structure_text(name)?;
    Some(algebra::from_json_str(text).expect("embedded structure fixtures parse"))
}

pub fn shadow(name: &str) -> Option<ShadowStructure> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    let (_, text) = SHADOWS.iter().find(|(n, _)| *n == name)?;
    Some(
        shadow::from_json_str(text, &|host| {
            structure_text(host)
                .map(String::from)
                .ok_or_else(|| format!("unknown embedded structure `{host}`"))
        })
        .expect("embedded shadow fixtures parse"),
    )
}

pub fn all_structures() -> Vec<FiniteSingquandle> {
    structure_names()
        .into_iter()
        .map(|n| structure(n).unwrap())
        .collect()
}

pub fn all_shadows() -> Vec<ShadowStructure> {
    shadow_names()
        .into_iter()
        .map(|n| shadow(n).unwrap())
        .collect()
}
