//! Commutator identities checked in the free group on `a, b, c`.

use serde::Serialize;

use super::parse_word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

fn check(name: &str, lhs: &str, rhs: &str) -> IdentityCheck {
    let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let l = parse_word(lhs, &names).expect("identity lhs parses");
    let r = parse_word(rhs, &names).expect("identity rhs parses");
    IdentityCheck { name: name.to_string(), lhs: lhs.to_string(), rhs: rhs.to_string(), pass: l == r }
}

/// Compares free normal forms of both sides of the commutator expansion
/// identities. The last entry is a deliberately wrong variant and must fail.
pub fn verify_free_identities() -> Vec<IdentityCheck> {
    vec![
        check("commutator-left-expansion", "[a, b c]", "[a,c] [a,b]^c"),
        check("commutator-right-expansion", "[a b, c]", "[a,c]^b [b,c]"),
        check("perturbed-left-expansion", "[a, b c]", "[a,b] [a,c]^b"),
    ]
}
