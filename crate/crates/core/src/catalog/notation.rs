//! Parser for labels written in compact-algebra notation.

use crate::rootsys::{SimpleType, TypeLabel};

/// Parses `su6+sp1`, `so(10)+R+R`, `s(u(4)+u(2))+sp1`, `3·sp1+so2`, `e6+R`,
/// or Dynkin notation such as `A5+A1+T1`.
pub fn parse_label(text: &str) -> Result<TypeLabel, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty label".into());
    }
    if s == "0" {
        return Ok(TypeLabel::default());
    }
    let mut out = TypeLabel::default();
    for term in split_top(&s, '+') {
        out = out.plus(&parse_term(term).map_err(|e| format!("`{text}`: {e}"))?);
    }
    Ok(out)
}

fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn number(s: &str) -> Result<usize, String> {
    let inner = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(s);
    inner.parse().map_err(|_| format!("bad number `{s}`"))
}

fn parse_term(t: &str) -> Result<TypeLabel, String> {
    if t.is_empty() {
        return Err("empty term".into());
    }
    // multiplicity prefix: 3·sp1 or 3*sp1
    if let Some(pos) = t.find(['·', '*']) {
        let n: usize = t[..pos].parse().map_err(|_| format!("bad multiplicity in `{t}`"))?;
        let sep_len = t[pos..].chars().next().map_or(1, char::len_utf8);
        let one = parse_term(&t[pos + sep_len..])?;
        return Ok((0..n).fold(TypeLabel::default(), |acc, _| acc.plus(&one)));
    }
    if t == "R" {
        return Ok(TypeLabel::torus(1));
    }
    if let Some(n) = t.strip_prefix('T').filter(|r| r.chars().all(|c| c.is_ascii_digit()) && !r.is_empty()) {
        return Ok(TypeLabel::torus(number(n)?));
    }
    if t.chars().next().is_some_and(|c| c.is_ascii_uppercase()) {
        let st: SimpleType = t.parse().map_err(|e| format!("{e}"))?;
        return Ok(TypeLabel::simple(st));
    }
    if let Some(inner) = t.strip_prefix("s(").and_then(|r| r.strip_suffix(')')) {
        let mut out = TypeLabel::default();
        let parts = split_top(inner, '+');
        let mut nonzero = 0;
        for p in &parts {
            let n = number(p.strip_prefix('u').ok_or_else(|| format!("expected u(n) in `{t}`"))?)?;
            out = out.plus(&TypeLabel::su(n));
            nonzero += usize::from(n > 0);
        }
        // s(u(p1)+...+u(pk)) has a center of rank (number of nonzero blocks) - 1
        return Ok(out.plus(&TypeLabel::torus(nonzero.saturating_sub(1))));
    }
    for (prefix, f) in [
        ("su", TypeLabel::su as fn(usize) -> TypeLabel),
        ("so", TypeLabel::so),
        ("sp", TypeLabel::sp),
        ("u", TypeLabel::u),
    ] {
        if let Some(rest) = t.strip_prefix(prefix) {
            return Ok(f(number(rest)?));
        }
    }
    match t {
        "e6" | "e7" | "e8" | "f4" | "g2" => Ok(TypeLabel::simple(t.parse().map_err(|e| format!("{e}"))?)),
        _ => Err(format!("unknown term `{t}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> TypeLabel {
        parse_label(s).unwrap()
    }

    #[test]
    fn notation() {
        assert_eq!(p("su6 + sp1").to_string(), "A1+A5");
        assert_eq!(p("so(10)+R+R"), p("D5+T2"));
        assert_eq!(p("s(u(4)+u(2))+sp1").dim(), 22);
        assert_eq!(p("s(u(6)+u(0))"), p("su6"));
        assert_eq!(p("u6+R").dim(), 37);
        assert_eq!(p("3·sp1+so2"), p("A1+A1+A1+T1"));
        assert_eq!(p("so3+u2"), p("2*A1+T1"));
        assert_eq!(p("e7+sp1").dim(), 136);
        assert_eq!(p("R+R"), TypeLabel::torus(2));
        assert_eq!(p("so4+so4"), p("4·sp1"));
        assert!(parse_label("xx7").is_err());
        assert!(parse_label("").is_err());
    }
}
