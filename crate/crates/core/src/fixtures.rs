//! Small named presentations used throughout the tests and the CLI docs.

const FIXTURES: &[(&str, &str)] = &[
    ("z3r2", include_str!("../fixtures/z3r2.quiver")),
    ("z2r3", include_str!("../fixtures/z2r3.quiver")),
    ("lin", include_str!("../fixtures/lin.quiver")),
    ("her", include_str!("../fixtures/her.quiver")),
    ("z6r3", include_str!("../fixtures/z6r3.quiver")),
    ("glu", include_str!("../fixtures/glu.quiver")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

pub fn text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parses a bundled fixture; panics on unknown names.
pub fn load(name: &str) -> crate::MonomialPresentation {
    let text = text(name).unwrap_or_else(|| panic!("no fixture named {name}"));
    crate::MonomialPresentation::parse(text).expect("bundled fixtures parse")
}
