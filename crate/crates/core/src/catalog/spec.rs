use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::constructors as cons;
use super::format::parse_group_file;
use crate::error::{HgError, Result};
use crate::group::{GroupTable, TABLE_CAP};

/// A constructor expression for a group, e.g. `direct(alt(5),cyclic(2))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Abelian(Vec<usize>),
    Dihedral(usize),
    Dicyclic(usize),
    Sym(usize),
    Alt(usize),
    Sl2(usize),
    Psl2(usize),
    Pgl2(usize),
    Direct(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect(Box<GroupSpec>, Box<GroupSpec>, Action),
    File(PathBuf),
}

/// Named actions for semidirect products. Both act through a generator of the
/// (cyclic) acting group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    /// The generator inverts every element of an abelian normal factor.
    Inversion,
    /// The generator raises every element of a cyclic normal factor to the
    /// `k`-th power.
    Power(usize),
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Inversion => write!(f, "inversion"),
            Action::Power(k) => write!(f, "pow{k}"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::Abelian(ds) => {
                let parts: Vec<String> = ds.iter().map(|d| d.to_string()).collect();
                write!(f, "abelian({})", parts.join(","))
            }
            GroupSpec::Dihedral(n) => write!(f, "dihedral({n})"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic({n})"),
            GroupSpec::Sym(n) => write!(f, "sym({n})"),
            GroupSpec::Alt(n) => write!(f, "alt({n})"),
            GroupSpec::Sl2(q) => write!(f, "SL2({q})"),
            GroupSpec::Psl2(q) => write!(f, "PSL2({q})"),
            GroupSpec::Pgl2(q) => write!(f, "PGL2({q})"),
            GroupSpec::Direct(a, b) => write!(f, "direct({a},{b})"),
            GroupSpec::Semidirect(a, b, act) => write!(f, "semidirect({a},{b},{act})"),
            GroupSpec::File(p) => write!(f, "file({})", p.display()),
        }
    }
}

const PRIME_POWERS: [usize; 8] = [2, 3, 4, 5, 7, 8, 9, 11];

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl GroupSpec {
    /// Predicted order, or `None` for file specs.
    pub fn order(&self) -> Option<usize> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n,
            GroupSpec::Abelian(ds) => ds.iter().product(),
            GroupSpec::Dihedral(n) => 2 * n,
            GroupSpec::Dicyclic(n) => 4 * n,
            GroupSpec::Sym(n) => factorial(*n),
            GroupSpec::Alt(n) => factorial(*n).div_ceil(2),
            GroupSpec::Sl2(q) | GroupSpec::Pgl2(q) => q * (q * q - 1),
            GroupSpec::Psl2(q) => q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 },
            GroupSpec::Direct(a, b) | GroupSpec::Semidirect(a, b, _) => a.order()? * b.order()?,
            GroupSpec::File(_) => return None,
        })
    }

    fn check_range(&self) -> Result<()> {
        let bad = |m: String| Err(HgError::SpecOutOfRange(m));
        match self {
            GroupSpec::Cyclic(0) | GroupSpec::Dihedral(0) | GroupSpec::Dicyclic(0) => {
                return bad(format!("{self}: parameter must be positive"))
            }
            GroupSpec::Abelian(ds) if ds.is_empty() || ds.contains(&0) => {
                return bad(format!("{self}: factors must be positive"))
            }
            GroupSpec::Sym(n) | GroupSpec::Alt(n) if *n == 0 || *n > 7 => {
                return bad(format!("{self}: degree must be 1..=7"))
            }
            GroupSpec::Sl2(q) | GroupSpec::Psl2(q) | GroupSpec::Pgl2(q)
                if !PRIME_POWERS.contains(q) =>
            {
                return bad(format!("{self}: q must be a prime power <= 11"))
            }
            GroupSpec::Direct(a, b) | GroupSpec::Semidirect(a, b, _) => {
                a.check_range()?;
                b.check_range()?;
            }
            _ => {}
        }
        if let Some(n) = self.order() {
            if n > TABLE_CAP {
                return bad(format!("{self}: order {n} exceeds the table cap {TABLE_CAP}"));
            }
        }
        Ok(())
    }

    /// Builds the validated group table. The label is the spec's own text.
    pub fn build(&self) -> Result<GroupTable> {
        self.check_range()?;
        let g = match self {
            GroupSpec::Cyclic(n) => cons::cyclic(*n)?,
            GroupSpec::Abelian(ds) => cons::abelian(ds)?,
            GroupSpec::Dihedral(n) => cons::dihedral(*n)?,
            GroupSpec::Dicyclic(n) => cons::dicyclic(*n)?,
            GroupSpec::Sym(n) => cons::sym(*n)?,
            GroupSpec::Alt(n) => cons::alt(*n)?,
            GroupSpec::Sl2(q) => cons::sl2(*q)?,
            GroupSpec::Psl2(q) => cons::psl2(*q)?,
            GroupSpec::Pgl2(q) => cons::pgl2(*q)?,
            GroupSpec::Direct(a, b) => cons::product(&a.build()?, &b.build()?, None)?,
            GroupSpec::Semidirect(a, b, act) => {
                let (ga, gb) = (a.build()?, b.build()?);
                let alpha = named_automorphism(&ga, act)?;
                let action = cons::cyclic_action(&gb, &alpha)?;
                cons::product(&ga, &gb, Some(&action))?
            }
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| HgError::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                return parse_group_file(&text);
            }
        };
        Ok(g.with_label(self.to_string()))
    }
}

fn named_automorphism(a: &GroupTable, act: &Action) -> Result<Vec<usize>> {
    let alpha: Vec<usize> = match act {
        Action::Inversion => {
            if !a.is_abelian() {
                return Err(HgError::BadAction("inversion needs an abelian factor".into()));
            }
            (0..a.order()).map(|x| a.inv(x)).collect()
        }
        Action::Power(k) => {
            let u = cons::cyclic_generator(a)
                .ok_or_else(|| HgError::BadAction("pow<k> needs a cyclic factor".into()))?;
            let mut alpha = vec![0; a.order()];
            let uk = a.pow(u, *k);
            let (mut x, mut y) = (0, 0);
            for _ in 0..a.order() {
                alpha[x] = y;
                x = a.mul(x, u);
                y = a.mul(y, uk);
            }
            alpha
        }
    };
    let mut hit = vec![false; a.order()];
    for &v in &alpha {
        if std::mem::replace(&mut hit[v], true) {
            return Err(HgError::BadAction(format!("{act} is not a bijection")));
        }
    }
    Ok(alpha)
}

impl FromStr for GroupSpec {
    type Err = HgError;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> HgError {
        HgError::ParseError {
            line: 1,
            message: format!("{msg} at column {}", self.pos + 1),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected an integer"))
    }

    fn ints(&mut self) -> Result<Vec<usize>> {
        let mut out = vec![self.int()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            out.push(self.int()?);
        }
        Ok(out)
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let name = self.ident()?;
        self.expect(b'(')?;
        let lower = name.to_ascii_lowercase();
        let spec = match lower.as_str() {
            "cyclic" => GroupSpec::Cyclic(self.int()?),
            "abelian" => GroupSpec::Abelian(self.ints()?),
            "dihedral" => GroupSpec::Dihedral(self.int()?),
            "dicyclic" => GroupSpec::Dicyclic(self.int()?),
            "sym" => GroupSpec::Sym(self.int()?),
            "alt" => GroupSpec::Alt(self.int()?),
            "sl2" => GroupSpec::Sl2(self.int()?),
            "psl2" => GroupSpec::Psl2(self.int()?),
            "pgl2" => GroupSpec::Pgl2(self.int()?),
            "direct" => {
                let a = self.spec()?;
                self.expect(b',')?;
                let b = self.spec()?;
                GroupSpec::Direct(Box::new(a), Box::new(b))
            }
            "semidirect" => {
                let a = self.spec()?;
                self.expect(b',')?;
                let b = self.spec()?;
                self.expect(b',')?;
                let act = self.ident()?;
                let action = match act.as_str() {
                    "inversion" | "inv" => Action::Inversion,
                    s if s.starts_with("pow") => Action::Power(
                        s[3..].parse().map_err(|_| self.err("bad pow<k> action"))?,
                    ),
                    _ => return Err(self.err(&format!("unknown action {act:?}"))),
                };
                GroupSpec::Semidirect(Box::new(a), Box::new(b), action)
            }
            "file" => {
                // path runs to the matching ')'
                self.skip_ws();
                let start = self.pos;
                let mut depth = 0usize;
                while self.pos < self.s.len() {
                    match self.s[self.pos] {
                        b'(' => depth += 1,
                        b')' if depth == 0 => break,
                        b')' => depth -= 1,
                        _ => {}
                    }
                    self.pos += 1;
                }
                let path = String::from_utf8_lossy(&self.s[start..self.pos]).trim().to_string();
                GroupSpec::File(PathBuf::from(path))
            }
            _ => return Err(self.err(&format!("unknown constructor {name:?}"))),
        };
        self.expect(b')')?;
        Ok(spec)
    }
}

/// Parses and builds in one step.
pub fn build(spec: &str) -> Result<GroupTable> {
    spec.parse::<GroupSpec>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip_display() {
        for s in [
            "cyclic(15)",
            "abelian(2,2,3)",
            "SL2(5)",
            "direct(alt(5),cyclic(2))",
            "semidirect(cyclic(7),cyclic(3),pow2)",
            "semidirect(cyclic(3),cyclic(2),inversion)",
        ] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn parse_is_case_insensitive_and_tolerates_spaces() {
        let spec: GroupSpec = " direct( sl2(5) , CYCLIC(2) ) ".parse().unwrap();
        assert_eq!(spec.to_string(), "direct(SL2(5),cyclic(2))");
    }

    #[test]
    fn parse_errors() {
        assert!("cyclic(".parse::<GroupSpec>().is_err());
        assert!("foo(3)".parse::<GroupSpec>().is_err());
        assert!("cyclic(3) x".parse::<GroupSpec>().is_err());
        assert!("semidirect(cyclic(3),cyclic(2),twist)".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn out_of_range_specs() {
        for s in ["SL2(6)", "SL2(13)", "sym(8)", "alt(0)", "cyclic(0)", "direct(sym(7),cyclic(2))"] {
            let err = build(s).unwrap_err();
            assert!(matches!(err, HgError::SpecOutOfRange(_)), "{s}: {err:?}");
        }
    }

    #[test]
    fn predicted_orders_match() {
        for s in [
            "cyclic(15)",
            "dihedral(4)",
            "dicyclic(2)",
            "sym(4)",
            "alt(5)",
            "SL2(4)",
            "SL2(9)",
            "PSL2(7)",
            "PSL2(8)",
            "PGL2(5)",
            "direct(SL2(3),cyclic(2))",
        ] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.build().unwrap().order(), spec.order().unwrap(), "{s}");
        }
    }
}
