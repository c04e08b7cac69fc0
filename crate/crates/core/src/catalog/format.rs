//! Text formats for group data.
//!
//! `gtab 1` stores a Cayley table: the header line, the order `n`, then `n`
//! rows of `n` whitespace-separated indices with the identity at 0.
//!
//! `pgen 1` stores permutation generators: the header line, the degree `d`,
//! then one generator per line, either as `d` image values or in cycle
//! notation such as `(0 1 2)(3 4)`. A line `table` (or a trailing `table` on
//! the header) converts the closure to an abstract table; without it the
//! closure must act regularly and element `x` is the permutation sending 0
//! to `x`.
//!
//! In both formats blank lines and lines starting with `#` are ignored, except
//! that `# label: <text>` sets the group label.

use super::constructors::{perm_closure, table_from_perms};
use crate::error::{HgError, Result};
use crate::group::{GroupTable, TABLE_CAP};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    label: Option<String>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            label: None,
        }
    }

    /// Next significant line with its 1-based number.
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.inner.by_ref() {
            let line = raw.trim();
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(l) = rest.trim().strip_prefix("label:") {
                    self.label = Some(l.trim().to_string());
                }
                continue;
            }
            if !line.is_empty() {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn perr(line: usize, message: impl Into<String>) -> HgError {
    HgError::ParseError {
        line,
        message: message.into(),
    }
}

fn parse_usize(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| perr(line, format!("expected a non-negative integer, found {tok:?}")))
}

/// Parses either format, dispatching on the header line.
pub fn parse_group_file(text: &str) -> Result<GroupTable> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next_line().ok_or_else(|| perr(1, "empty input"))?;
    let mut words = header.split_whitespace();
    let kind = words.next().unwrap_or("");
    let version = words.next();
    if version != Some("1") {
        return Err(perr(ln, format!("unsupported header {header:?}")));
    }
    let tagged = match words.next() {
        None => false,
        Some("table") => true,
        Some(other) => return Err(perr(ln, format!("unexpected {other:?} in header"))),
    };
    match kind {
        "gtab" if !tagged => parse_gtab(&mut lines),
        "pgen" => parse_pgen(&mut lines, tagged),
        _ => Err(perr(ln, format!("unsupported header {header:?}"))),
    }
}

fn parse_gtab(lines: &mut Lines<'_>) -> Result<GroupTable> {
    let (ln, first) = lines.next_line().ok_or_else(|| perr(2, "missing order line"))?;
    let n = parse_usize(ln, first)?;
    if n == 0 {
        return Err(perr(ln, "order must be positive"));
    }
    if n > TABLE_CAP {
        return Err(HgError::cap("table order", TABLE_CAP as u64));
    }
    let mut rows = Vec::with_capacity(n);
    let mut last = ln;
    for r in 0..n {
        let (ln, line) = lines
            .next_line()
            .ok_or_else(|| perr(last + 1, format!("expected {n} rows, found {r}")))?;
        let row = line
            .split_whitespace()
            .map(|t| parse_usize(ln, t))
            .collect::<Result<Vec<_>>>()?;
        if row.len() != n {
            return Err(perr(ln, format!("row has {} entries, expected {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&v| v >= n) {
            return Err(perr(ln, format!("entry {bad} out of range")));
        }
        rows.push(row);
        last = ln;
    }
    if let Some((ln, _)) = lines.next_line() {
        return Err(perr(ln, "trailing data after table"));
    }
    if (0..n).any(|x| rows[0][x] != x || rows[x][0] != x) {
        return Err(perr(last, "identity must be element 0"));
    }
    let label = lines.label.take().unwrap_or_else(|| format!("gtab({n})"));
    GroupTable::build_table(&rows, label)
}

fn parse_cycles(ln: usize, line: &str, degree: usize) -> Result<Vec<u16>> {
    let mut perm: Vec<u16> = (0..degree as u16).collect();
    let mut rest = line;
    while let Some(open) = rest.find('(') {
        if !rest[..open].trim().is_empty() {
            return Err(perr(ln, "junk between cycles"));
        }
        let close = rest[open..]
            .find(')')
            .ok_or_else(|| perr(ln, "unclosed cycle"))?
            + open;
        let pts = rest[open + 1..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| parse_usize(ln, t))
            .collect::<Result<Vec<_>>>()?;
        for (i, &p) in pts.iter().enumerate() {
            if p >= degree {
                return Err(perr(ln, format!("point {p} exceeds degree {degree}")));
            }
            if pts[..i].contains(&p) {
                return Err(perr(ln, format!("point {p} repeated in a cycle")));
            }
        }
        // cycles on one line are applied left to right
        let mut cycle = vec![0u16; degree];
        for (x, c) in cycle.iter_mut().enumerate() {
            *c = x as u16;
        }
        for i in 0..pts.len() {
            cycle[pts[i]] = pts[(i + 1) % pts.len()] as u16;
        }
        perm = perm.iter().map(|&x| cycle[x as usize]).collect();
        rest = &rest[close + 1..];
    }
    if !rest.trim().is_empty() {
        return Err(perr(ln, "junk after cycles"));
    }
    Ok(perm)
}

fn parse_images(ln: usize, line: &str, degree: usize) -> Result<Vec<u16>> {
    let imgs = line
        .split_whitespace()
        .map(|t| parse_usize(ln, t))
        .collect::<Result<Vec<_>>>()?;
    if imgs.len() != degree {
        return Err(perr(ln, format!("generator has {} images, expected {degree}", imgs.len())));
    }
    let mut hit = vec![false; degree];
    for &v in &imgs {
        if v >= degree || std::mem::replace(&mut hit[v], true) {
            return Err(perr(ln, "generator is not a permutation"));
        }
    }
    Ok(imgs.into_iter().map(|v| v as u16).collect())
}

fn parse_pgen(lines: &mut Lines<'_>, mut tagged: bool) -> Result<GroupTable> {
    let mut degree = None;
    let mut gens = Vec::new();
    let mut last = 1;
    while let Some((ln, line)) = lines.next_line() {
        last = ln;
        if line == "table" {
            tagged = true;
            continue;
        }
        match degree {
            None => {
                let d = parse_usize(ln, line)?;
                if d == 0 || d > u16::MAX as usize {
                    return Err(perr(ln, "degree out of range"));
                }
                degree = Some(d);
            }
            Some(d) if line.starts_with('(') => gens.push(parse_cycles(ln, line, d)?),
            Some(d) => gens.push(parse_images(ln, line, d)?),
        }
    }
    let degree = degree.ok_or_else(|| perr(last + 1, "missing degree line"))?;
    if gens.is_empty() {
        gens.push((0..degree as u16).collect());
    }
    let elements = perm_closure(&gens, TABLE_CAP)?;
    let label = lines
        .label
        .take()
        .unwrap_or_else(|| format!("pgen({degree},{})", elements.len()));
    if tagged {
        return table_from_perms(elements, label);
    }
    regular_table(elements, degree, label)
}

fn regular_table(elements: Vec<Vec<u16>>, degree: usize, label: String) -> Result<GroupTable> {
    let n = elements.len();
    if n != degree {
        return Err(HgError::NotAGroup {
            reason: format!(
                "closure of order {n} does not act regularly on {degree} points (tag it `table`)"
            ),
            witness: (0, 0, 0),
        });
    }
    let mut by_image = vec![usize::MAX; n];
    for (i, p) in elements.iter().enumerate() {
        let x = p[0] as usize;
        if by_image[x] != usize::MAX {
            return Err(HgError::NotAGroup {
                reason: "closure is not regular: two elements send 0 to the same point".into(),
                witness: (by_image[x], i, 0),
            });
        }
        by_image[x] = i;
    }
    let mut mul = vec![0u32; n * n];
    for x in 0..n {
        let p = &elements[by_image[x]];
        for y in 0..n {
            // (p_x * p_y)(0) = p_x(y)
            mul[x * n + y] = p[y] as u32;
        }
    }
    GroupTable::from_flat(n, mul, label, false)
}

/// Renders `g` in `gtab 1` format, preserving its label.
pub fn serialize(g: &GroupTable) -> String {
    let n = g.order();
    let mut out = String::with_capacity(n * n * 4 + 64);
    out.push_str("gtab 1\n");
    out.push_str(&format!("# label: {}\n", g.label()));
    out.push_str(&format!("{n}\n"));
    for x in 0..n {
        let row: Vec<String> = g.row(x).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
