//! Orders of Schur multipliers of finite simple groups, as frozen data.
//!
//! Nothing here is computed from a presentation. Linear and unitary groups
//! outside the exception lists follow the generic gcd formulas.

use crate::error::{HgError, Result};

/// Every multiplier order outside the linear and unitary families lies here.
pub const SMALL_MULTIPLIERS: [u64; 6] = [1, 2, 3, 4, 6, 12];

/// `(n, q, m)` for linear groups whose multiplier is not `gcd(n, q - 1)`.
const PSL_EXCEPTIONS: [(u64, u64, u64); 5] = [(2, 4, 2), (2, 9, 6), (3, 2, 2), (3, 4, 48), (4, 2, 2)];

/// `(n, q, m)` for unitary groups whose multiplier is not `gcd(n, q + 1)`.
const PSU_EXCEPTIONS: [(u64, u64, u64); 3] = [(4, 2, 2), (4, 3, 36), (6, 2, 12)];

/// Sporadic groups and the Tits group, from the ATLAS.
const SPORADIC: [(&str, u64); 27] = [
    ("M11", 1),
    ("M12", 2),
    ("M22", 12),
    ("M23", 1),
    ("M24", 1),
    ("J1", 1),
    ("J2", 2),
    ("J3", 3),
    ("J4", 1),
    ("HS", 2),
    ("MCL", 3),
    ("HE", 1),
    ("RU", 2),
    ("SUZ", 6),
    ("ON", 3),
    ("CO1", 2),
    ("CO2", 1),
    ("CO3", 1),
    ("FI22", 6),
    ("FI23", 1),
    ("FI24'", 3),
    ("HN", 1),
    ("LY", 1),
    ("TH", 1),
    ("B", 2),
    ("M", 1),
    ("2F4(2)'", 1),
];

/// A parsed simple-group label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleLabel {
    Cyclic(u64),
    Alt(u64),
    Psl(u64, u64),
    Psu(u64, u64),
    Sporadic(&'static str),
}

impl SimpleLabel {
    /// Accepts `A6`, `alt(6)`, `PSL3(4)`, `PSL(3,4)`, `L3(4)`, `PSU4(3)`,
    /// `U4(3)`, `C5`, and sporadic names such as `M11` or `Co1`.
    pub fn parse(label: &str) -> Result<Self> {
        let unknown = || HgError::UnknownLabel(label.to_string());
        let s: String = label.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_uppercase();
        let s = s.replace("O'N", "ON");
        if let Some(&(name, _)) = SPORADIC.iter().find(|(n, _)| *n == s) {
            return Ok(SimpleLabel::Sporadic(name));
        }
        let parsed = if let Some(rest) = s.strip_prefix("ALT(") {
            rest.strip_suffix(')').and_then(num).map(SimpleLabel::Alt)
        } else if let Some(rest) = s.strip_prefix("PSL").or_else(|| s.strip_prefix('L')) {
            lie_params(rest).map(|(n, q)| SimpleLabel::Psl(n, q))
        } else if let Some(rest) = s.strip_prefix("PSU").or_else(|| s.strip_prefix('U')) {
            lie_params(rest).map(|(n, q)| SimpleLabel::Psu(n, q))
        } else if let Some(rest) = s.strip_prefix('A') {
            num(rest).map(SimpleLabel::Alt)
        } else if let Some(rest) = s.strip_prefix('C').or_else(|| s.strip_prefix('Z')) {
            num(rest).map(SimpleLabel::Cyclic)
        } else {
            None
        };
        let parsed = parsed.ok_or_else(unknown)?;
        if parsed.is_simple() {
            Ok(parsed)
        } else {
            Err(unknown())
        }
    }

    fn is_simple(&self) -> bool {
        match *self {
            SimpleLabel::Cyclic(p) => is_prime(p),
            SimpleLabel::Alt(n) => n >= 5,
            SimpleLabel::Psl(n, q) => prime_power(q).is_some() && n >= 2 && !(n == 2 && q <= 3),
            SimpleLabel::Psu(n, q) => prime_power(q).is_some() && n >= 3 && !(n == 3 && q == 2),
            SimpleLabel::Sporadic(_) => true,
        }
    }

    /// Order of the Schur multiplier.
    pub fn multiplier(&self) -> u64 {
        match *self {
            SimpleLabel::Cyclic(_) => 1,
            SimpleLabel::Alt(n) => match n {
                6 | 7 => 6,
                _ => 2,
            },
            SimpleLabel::Psl(n, q) => PSL_EXCEPTIONS
                .iter()
                .find(|e| (e.0, e.1) == (n, q))
                .map_or_else(|| gcd(n, q - 1), |e| e.2),
            SimpleLabel::Psu(n, q) => PSU_EXCEPTIONS
                .iter()
                .find(|e| (e.0, e.1) == (n, q))
                .map_or_else(|| gcd(n, q + 1), |e| e.2),
            SimpleLabel::Sporadic(name) => SPORADIC.iter().find(|e| e.0 == name).map_or(1, |e| e.1),
        }
    }

    /// True when the multiplier comes from the generic gcd formula.
    pub fn non_exceptional(&self) -> bool {
        match *self {
            SimpleLabel::Psl(n, q) => !PSL_EXCEPTIONS.iter().any(|e| (e.0, e.1) == (n, q)),
            SimpleLabel::Psu(n, q) => !PSU_EXCEPTIONS.iter().any(|e| (e.0, e.1) == (n, q)),
            _ => false,
        }
    }
}

/// Schur multiplier order of the simple group named by `label`.
pub fn schur_lookup(label: &str) -> Result<u64> {
    Ok(SimpleLabel::parse(label)?.multiplier())
}

fn num(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `n(q)` or `(n,q)`.
fn lie_params(s: &str) -> Option<(u64, u64)> {
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (n, q) = inner.split_once(',')?;
        return Some((num(n)?, num(q)?));
    }
    let (n, rest) = s.split_once('(')?;
    Some((num(n)?, num(rest.strip_suffix(')')?)?))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `(p, a)` with `q = p^a`, `a ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut r = q;
    let mut a = 0;
    while r % p == 0 {
        r /= p;
        a += 1;
    }
    (r == 1).then_some((p, a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_values() {
        assert_eq!(schur_lookup("A6").unwrap(), 6);
        assert_eq!(schur_lookup("A7").unwrap(), 6);
        assert_eq!(schur_lookup("A5").unwrap(), 2);
        assert_eq!(schur_lookup("A8").unwrap(), 2);
        assert_eq!(schur_lookup("PSL3(4)").unwrap(), 48);
        assert_eq!(schur_lookup("PSU4(3)").unwrap(), 36);
        assert_eq!(schur_lookup("PSL2(11)").unwrap(), 2);
        assert_eq!(schur_lookup("PSU4(2)").unwrap(), 2);
        assert_eq!(schur_lookup("PSL2(4)").unwrap(), 2);
        assert_eq!(schur_lookup("PSL3(2)").unwrap(), 2);
        assert_eq!(schur_lookup("M11").unwrap(), 1);
        assert_eq!(schur_lookup("M23").unwrap(), 1);
        assert_eq!(schur_lookup("M22").unwrap(), 12);
    }

    #[test]
    fn formula_entries() {
        assert_eq!(schur_lookup("PSL5(11)").unwrap(), 5);
        assert_eq!(schur_lookup("PSL(5,11)").unwrap(), 5);
        assert_eq!(schur_lookup("PSL2(7)").unwrap(), 2);
        assert_eq!(schur_lookup("U3(5)").unwrap(), 3);
        assert!(SimpleLabel::parse("PSL5(11)").unwrap().non_exceptional());
        assert!(!SimpleLabel::parse("PSL3(4)").unwrap().non_exceptional());
    }

    #[test]
    fn unknown_labels() {
        for l in ["A4", "PSL2(3)", "PSL2(6)", "Foo", "C4", "PSU3(2)", ""] {
            assert!(matches!(schur_lookup(l), Err(HgError::UnknownLabel(_))), "{l}");
        }
    }

    #[test]
    fn outside_linear_families_values_are_small() {
        for (name, m) in SPORADIC {
            assert!(SMALL_MULTIPLIERS.contains(&m), "{name}");
        }
        for n in 5..40 {
            assert!(SMALL_MULTIPLIERS.contains(&SimpleLabel::Alt(n).multiplier()));
        }
    }

    #[test]
    fn exceptions_are_small_or_listed() {
        for &(n, q, m) in PSL_EXCEPTIONS.iter() {
            assert!(SMALL_MULTIPLIERS.contains(&m) || (n, q) == (3, 4));
        }
        for &(n, q, m) in PSU_EXCEPTIONS.iter() {
            assert!(SMALL_MULTIPLIERS.contains(&m) || (n, q) == (4, 3));
        }
    }
}
