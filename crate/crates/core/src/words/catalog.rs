//! Built-in presentations.
//!
//! `Zstar`, `Xstar` and `Ystar` present the groups of shape 3^{1+2}:2^2 and
//! AGL2(3) that form the amalgam; `F` is their amalgamated product; `F1`-`F4`
//! add one of the four candidate commutator relator pairs in `x = r^(p r)`,
//! `y = s^(p r)`.

use thiserror::Error;

use super::parse::{parse_presentation, parse_relators_with, parse_word};
use super::{amalgamated_presentation, Presentation, Word};

const R_Z: &str = "
    a^3 = b^3 = [a,b]^3 = [a,[a,b]] = [b,[a,b]] = 1;
    t^2 = u^2 = [t,u] = 1;
    a^u = a;  b^u = b^-1;  a^t = a^-1;  b^t = b
";

const R_X: &str = "
    p^4 = q^4 = 1;
    p^2 = q^2 = t;
    q^p = q^-1;
    a^p = [a^-1, b];
    [a,b]^q = [b,a] a;
    p^u = p^-1;  p^b = p q;  q^b = p;  p^(b^2) = q
";

const R_Y: &str = "
    r^4 = s^4 = 1;
    r^2 = s^2 = u;
    s^r = s^-1;
    [a^-1, b]^r = b;
    [a,b]^s = b^-1 [b,a];
    r^t = r^-1;  s^t = s r;  r^a = r s;  s^a = r;  r^(a^2) = s
";

/// The four candidate relator pairs, as (first, second) right-hand sides.
const QUOTIENT_RHS: [(&str, &str); 4] = [("1", "1"), ("t", "1"), ("1", "t"), ("t", "t")];

const NAMES: [&str; 10] = ["Zstar", "Xstar", "Ystar", "F", "F1", "F2", "F3", "F4", "C3test", "AGL23"];

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown catalog entry `{0}`")]
pub struct UnknownEntry(pub String);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub presentation: Presentation,
    /// Default subgroup for coset enumeration; empty means the trivial subgroup.
    pub subgroup_words: Vec<Word>,
}

pub fn catalog_names() -> &'static [&'static str] {
    &NAMES
}

fn build(gens: &str, blocks: &[&str]) -> Presentation {
    let src = format!("gens {gens}; rels {}", blocks.join(";"));
    parse_presentation(&src).expect("built-in presentation parses")
}

pub(crate) fn zstar() -> Presentation {
    build("a, b, t, u", &[R_Z])
}

pub(crate) fn xstar() -> Presentation {
    build("a, b, t, u, p, q", &[R_Z, R_X])
}

pub(crate) fn ystar() -> Presentation {
    build("a, b, t, u, r, s", &[R_Z, R_Y])
}

pub(crate) fn f_universal() -> Presentation {
    amalgamated_presentation(&xstar(), &ystar(), &["a", "b", "t", "u"]).expect("shared generators present")
}

/// `F_i` for `i` in 1..=4.
fn f_quotient(i: usize) -> Presentation {
    let f = f_universal();
    let names = f.generators().to_vec();
    let pr = parse_word("p r", &names).unwrap();
    let x = f.gen("r").unwrap().conjugate(&pr);
    let y = f.gen("s").unwrap().conjugate(&pr);
    let abbr = vec![("x".to_string(), x), ("y".to_string(), y)];
    let (rhs1, rhs2) = QUOTIENT_RHS[i - 1];
    let src = format!("[x,q][p,y] = {rhs1}; [q,x][x y, p q] = {rhs2}");
    let extra = parse_relators_with(&src, &names, &abbr).expect("quotient relators parse");
    f.with_relators(extra).unwrap()
}

/// Looks up a built-in presentation by name.
pub fn catalog(name: &str) -> Result<CatalogEntry, UnknownEntry> {
    let (name, presentation, subgroup_words) = match name {
        "Zstar" => ("Zstar", zstar(), vec![]),
        "Xstar" => ("Xstar", xstar(), vec![]),
        "Ystar" => ("Ystar", ystar(), vec![]),
        "F" => ("F", f_universal(), vec![]),
        "F1" => ("F1", f_quotient(1), vec![]),
        "F2" => ("F2", f_quotient(2), vec![]),
        "F3" => ("F3", f_quotient(3), vec![]),
        "F4" => ("F4", f_quotient(4), vec![]),
        "C3test" => ("C3test", build("a", &["a^3"]), vec![]),
        "AGL23" => {
            // X* with the complement C(t) = <p, q, b, u>; its 9 cosets carry the affine action.
            let p = xstar();
            let h = ["p", "q", "b", "u"].iter().map(|g| p.gen(g).unwrap()).collect();
            ("AGL23", p, h)
        }
        other => return Err(UnknownEntry(other.to_string())),
    };
    Ok(CatalogEntry { name, presentation, subgroup_words })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zstar_shape() {
        let e = catalog("Zstar").unwrap();
        assert_eq!(e.presentation.generators(), &["a", "b", "t", "u"]);
        assert_eq!(e.presentation.relators().len(), 12);
    }

    #[test]
    fn relator_block_sizes() {
        assert_eq!(xstar().relators().len(), 12 + 11);
        assert_eq!(ystar().relators().len(), 12 + 12);
        let f = f_universal();
        assert_eq!(f.generator_count(), 8);
        assert_eq!(f.relators().len(), 12 + 11 + 12);
    }

    #[test]
    fn f1_adds_two_relators() {
        let f = catalog("F").unwrap().presentation;
        for n in ["F1", "F2", "F3", "F4"] {
            let e = catalog(n).unwrap();
            assert_eq!(e.presentation.generators(), f.generators());
            assert_eq!(e.presentation.relators().len(), f.relators().len() + 2);
            assert_eq!(&e.presentation.relators()[..f.relators().len()], f.relators());
        }
    }

    #[test]
    fn f_matches_hand_written_source() {
        let src = format!("gens a, b, t, u, p, q, r, s; rels {R_Z}; {R_X}; {R_Y}");
        assert_eq!(parse_presentation(&src).unwrap(), catalog("F").unwrap().presentation);
    }

    #[test]
    fn f2_second_relator_spelled_out() {
        // [x,q][xy,pq] with x = r^(pr), y = s^(pr), written without abbreviations.
        let e = catalog("F2").unwrap();
        let g = e.presentation.generators().to_vec();
        let x = "(r^(p r))";
        let y = "(s^(p r))";
        let first = parse_word(&format!("[{x},q][p,{y}] t^-1"), &g).unwrap();
        let second = parse_word(&format!("[q,{x}][{x} {y}, p q]"), &g).unwrap();
        let n = e.presentation.relators().len();
        assert_eq!(e.presentation.relators()[n - 2], first);
        assert_eq!(e.presentation.relators()[n - 1], second);
    }

    #[test]
    fn unknown_name() {
        assert_eq!(catalog("nosuch").unwrap_err(), UnknownEntry("nosuch".into()));
    }

    #[test]
    fn every_entry_round_trips_and_has_nonempty_relators() {
        for &n in catalog_names() {
            let e = catalog(n).unwrap();
            assert!(e.presentation.relators().iter().all(|r| !r.is_empty()), "{n}");
            let text = e.presentation.to_text();
            assert_eq!(parse_presentation(&text).unwrap(), e.presentation, "{n}");
        }
    }
}
