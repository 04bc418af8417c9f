//! Symmetric pairs, their symmetric subalgebras, containment facts, and the
//! dimension bookkeeping built on them.

mod notation;
mod symmetric;
pub mod tables;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use thiserror::Error;

use crate::rootsys::{SimpleType, TypeLabel};

pub use notation::parse_label;
pub use symmetric::{classical_symmetric, symmetric_subalgebras};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown class `{class}` for {algebra}")]
    UnknownClass { algebra: String, class: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEntry {
    pub algebra: String,
    pub class: String,
    pub h: TypeLabel,
    pub h_text: String,
    pub outer: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSymEntry {
    pub algebra: String,
    pub h: TypeLabel,
    pub h_text: String,
    pub k: TypeLabel,
    pub k_text: String,
}

impl SubSymEntry {
    pub fn c(&self) -> i64 {
        c_value(&self.h, &self.k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainmentFact {
    pub k: TypeLabel,
    pub h: TypeLabel,
    pub holds: bool,
    pub justification: String,
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub pairs: Vec<PairEntry>,
    pub subsym: Vec<SubSymEntry>,
    pub facts: Vec<ContainmentFact>,
}

/// `c(h, k) = dim h - 2 dim k`
pub fn c_value(h: &TypeLabel, k: &TypeLabel) -> i64 {
    h.dim() as i64 - 2 * k.dim() as i64
}

/// Dimension of a top-level algebra name (`e6`, `so8`, ...).
pub fn algebra_label(name: &str) -> Result<TypeLabel, CatalogError> {
    parse_label(name).map_err(|_| CatalogError::UnknownAlgebra(name.into()))
}

/// `E II` for `EII`, `Spin6·Spin2` unchanged.
pub fn display_class(class: &str) -> String {
    match class.char_indices().nth(1) {
        Some((i, _)) if (class.starts_with('E') || class.starts_with('F')) && class[i..].chars().all(|c| "IVX".contains(c)) => {
            format!("{} {}", &class[..i], &class[i..])
        }
        _ => class.to_string(),
    }
}

/// Row name for a tuple of classes of one algebra: `E I-I-II`, `F II-II`,
/// `G`, `Spin7 / Spin7`.
pub fn display_tuple(classes: &[impl AsRef<str>]) -> String {
    let first = classes[0].as_ref();
    if classes.iter().all(|c| c.as_ref() == "G") {
        return "G".into();
    }
    if first.starts_with('E') || first.starts_with('F') {
        let letter = &first[..1];
        let numerals: Vec<&str> = classes.iter().map(|c| &c.as_ref()[1..]).collect();
        return format!("{letter} {}", numerals.join("-"));
    }
    classes.iter().map(|c| c.as_ref()).collect::<Vec<_>>().join(" / ")
}

fn tokenize(line: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut rest = line.trim();
    while !rest.is_empty() {
        if let Some(r) = rest.strip_prefix('"') {
            let end = r.find('"').ok_or("unterminated quote")?;
            out.push(r[..end].to_string());
            rest = r[end + 1..].trim_start();
        } else {
            let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
            out.push(rest[..end].to_string());
            rest = rest[end..].trim_start();
        }
    }
    Ok(out)
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut cat = Catalog::default();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |msg: String| CatalogError::Parse { line, msg };
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let toks = tokenize(trimmed).map_err(|m| err(m.to_string()))?;
            let label = |s: &str| parse_label(s).map_err(err);
            match toks.iter().map(String::as_str).collect::<Vec<_>>().as_slice() {
                ["pair", g, class, h, flag] => {
                    algebra_label(g).map_err(|e| err(e.to_string()))?;
                    let outer = match *flag {
                        "inner" => false,
                        "outer" => true,
                        other => return Err(err(format!("expected inner|outer, got `{other}`"))),
                    };
                    if cat.pairs.iter().any(|p| p.algebra == *g && p.class == *class) {
                        return Err(err(format!("duplicate class {class} for {g}")));
                    }
                    cat.pairs.push(PairEntry {
                        algebra: g.to_string(),
                        class: class.to_string(),
                        h: label(h)?,
                        h_text: h.to_string(),
                        outer,
                    });
                }
                ["subsym", g, h, k] => {
                    algebra_label(g).map_err(|e| err(e.to_string()))?;
                    cat.subsym.push(SubSymEntry {
                        algebra: g.to_string(),
                        h: label(h)?,
                        h_text: h.to_string(),
                        k: label(k)?,
                        k_text: k.to_string(),
                    });
                }
                ["fact", k, h, truth, note] => {
                    let holds = match *truth {
                        "yes" => true,
                        "no" => false,
                        other => return Err(err(format!("expected yes|no, got `{other}`"))),
                    };
                    if note.trim().is_empty() {
                        return Err(err("fact without justification".into()));
                    }
                    cat.facts.push(ContainmentFact {
                        k: label(k)?,
                        h: label(h)?,
                        holds,
                        justification: note.to_string(),
                    });
                }
                _ => return Err(err(format!("unrecognized line `{trimmed}`"))),
            }
        }
        Ok(cat)
    }

    pub fn builtin() -> &'static Catalog {
        static CAT: OnceLock<Catalog> = OnceLock::new();
        CAT.get_or_init(|| {
            Catalog::parse(include_str!("../../data/catalog.txt")).expect("bundled catalog parses")
        })
    }

    /// Algebras with pair data, in file order.
    pub fn algebras(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for p in &self.pairs {
            if !out.contains(&p.algebra.as_str()) {
                out.push(&p.algebra);
            }
        }
        out
    }

    pub fn classes(&self, algebra: &str) -> Vec<&PairEntry> {
        self.pairs.iter().filter(|p| p.algebra == algebra).collect()
    }

    pub fn pair(&self, algebra: &str, class: &str) -> Result<&PairEntry, CatalogError> {
        self.pairs
            .iter()
            .find(|p| p.algebra == algebra && p.class == class)
            .ok_or_else(|| CatalogError::UnknownClass {
                algebra: algebra.into(),
                class: class.into(),
            })
    }

    /// Class whose fixed algebra has the given dimension.
    pub fn class_by_dim(&self, algebra: &str, dim: usize) -> Option<&PairEntry> {
        self.pairs.iter().find(|p| p.algebra == algebra && p.h.dim() == dim)
    }

    /// Position of a class in file order, used to sort triples.
    pub fn class_order(&self, algebra: &str, class: &str) -> usize {
        self.classes(algebra)
            .iter()
            .position(|p| p.class == class)
            .unwrap_or(usize::MAX)
    }

    pub fn sort_classes(&self, algebra: &str, classes: &mut [String]) {
        classes.sort_by_key(|c| self.class_order(algebra, c));
    }

    /// `d = dim g - dim g^sigma - dim g^tau`
    pub fn d_value(&self, algebra: &str, a: &str, b: &str) -> Result<i64, CatalogError> {
        let g = algebra_label(algebra)?;
        let (ha, hb) = (self.pair(algebra, a)?, self.pair(algebra, b)?);
        Ok(g.dim() as i64 - ha.h.dim() as i64 - hb.h.dim() as i64)
    }

    /// Fixed algebras of the nontrivial involutions of a simple algebra.
    pub fn simple_symmetric(&self, t: SimpleType) -> Vec<TypeLabel> {
        use crate::rootsys::Family;
        if matches!(t.family, Family::E | Family::F | Family::G) {
            let name = t.algebra_name();
            let mut v: Vec<TypeLabel> = self.classes(&name).iter().map(|p| p.h.clone()).collect();
            v.sort();
            v.dedup();
            v
        } else {
            classical_symmetric(t)
        }
    }

    pub fn symmetric_in(&self, h: &TypeLabel) -> BTreeSet<TypeLabel> {
        symmetric_subalgebras(h, &|t| self.simple_symmetric(t))
    }

    pub fn is_symmetric_in(&self, k: &TypeLabel, h: &TypeLabel) -> bool {
        self.symmetric_in(h).contains(k)
    }

    /// Table rows `(h, k)` for the class of `sigma tau` with `c(h, k) = d(sigma, tau)`
    /// and `k` symmetric in both `g^sigma` and `g^tau`.
    pub fn candidates(&self, algebra: &str, a: &str, b: &str) -> Result<Vec<(String, TypeLabel)>, CatalogError> {
        let d = self.d_value(algebra, a, b)?;
        let (ha, hb) = (&self.pair(algebra, a)?.h, &self.pair(algebra, b)?.h);
        let (sa, sb) = (self.symmetric_in(ha), self.symmetric_in(hb));
        let mut out = Vec::new();
        for pair in self.classes(algebra) {
            for row in self.subsym.iter().filter(|r| r.algebra == algebra && r.h == pair.h) {
                if row.c() == d && sa.contains(&row.k) && sb.contains(&row.k) {
                    out.push((pair.class.clone(), row.k.clone()));
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Types `k` with the right dimension that are symmetric in all three
    /// fixed algebras of a class triple.
    pub fn triple_candidates(&self, algebra: &str, triple: &[String; 3]) -> Result<Vec<TypeLabel>, CatalogError> {
        let g = algebra_label(algebra)?;
        let hs: Vec<&TypeLabel> = triple
            .iter()
            .map(|c| self.pair(algebra, c).map(|p| &p.h))
            .collect::<Result<_, _>>()?;
        let twice: i64 = hs.iter().map(|h| h.dim() as i64).sum::<i64>() - g.dim() as i64;
        if twice < 0 || twice % 2 != 0 {
            return Ok(Vec::new());
        }
        let dim = (twice / 2) as usize;
        let mut sets = hs.iter().map(|h| self.symmetric_in(h));
        let first = sets.next().expect("three classes");
        let mut common: BTreeSet<TypeLabel> = first.into_iter().filter(|k| k.dim() == dim).collect();
        for s in sets {
            common.retain(|k| s.contains(k));
        }
        Ok(common.into_iter().collect())
    }

    /// A fact stating `k` is not contained in `h`.
    pub fn refutation(&self, k: &TypeLabel, h: &TypeLabel) -> Option<&ContainmentFact> {
        self.facts.iter().find(|f| !f.holds && f.k == *k && f.h == *h)
    }

    /// All sorted class triples (with repetition) of an algebra.
    pub fn triples(&self, algebra: &str) -> Vec<[String; 3]> {
        let cls: Vec<String> = self.classes(algebra).iter().map(|p| p.class.clone()).collect();
        let mut out = Vec::new();
        for i in 0..cls.len() {
            for j in i..cls.len() {
                for k in j..cls.len() {
                    out.push([cls[i].clone(), cls[j].clone(), cls[k].clone()]);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> &'static Catalog {
        Catalog::builtin()
    }

    fn l(s: &str) -> TypeLabel {
        parse_label(s).unwrap()
    }

    #[test]
    fn fixed_dims_distinct_per_algebra() {
        for g in cat().algebras() {
            let mut dims: Vec<usize> = cat().classes(g).iter().map(|p| p.h.dim()).collect();
            let n = dims.len();
            dims.sort();
            dims.dedup();
            assert_eq!(dims.len(), n, "{g}");
        }
        let dims = |g: &str| -> Vec<usize> { cat().classes(g).iter().map(|p| p.h.dim()).collect() };
        assert_eq!(dims("e6"), vec![36, 38, 46, 52]);
        assert_eq!(dims("e7"), vec![63, 69, 79]);
        assert_eq!(dims("e8"), vec![120, 136]);
        assert_eq!(dims("so8"), vec![21, 16, 13, 12]);
    }

    #[test]
    fn d_values() {
        assert_eq!(cat().d_value("e6", "EI", "EI").unwrap(), 6);
        assert_eq!(cat().d_value("e8", "EVIII", "EIX").unwrap(), -8);
        assert_eq!(cat().d_value("so8", "Spin6·Spin2", "Spin5·Spin3").unwrap(), -1);
        assert!(cat().d_value("e6", "EV", "EI").is_err());
    }

    #[test]
    fn c_values() {
        assert_eq!(c_value(&l("f4"), &l("so9")), -20);
        assert_eq!(c_value(&l("e7+sp1"), &l("e7+R")), -132);
        assert_eq!(c_value(&l("so6+so2"), &l("u3+u1")), -4);
        let h = l("su6+sp1");
        assert_eq!(c_value(&h, &h), -(h.dim() as i64));
    }

    #[test]
    fn every_table_row_is_symmetric_in_its_h() {
        for row in &cat().subsym {
            assert!(cat().is_symmetric_in(&row.k, &row.h), "{} in {}", row.k_text, row.h_text);
        }
    }

    #[test]
    fn table_rows_are_complete_up_to_the_bare_simple_factor() {
        // The generator also yields e6 inside e6+R, which the rows omit.
        let mut hs: Vec<(&str, &TypeLabel)> = cat().subsym.iter().map(|r| (r.algebra.as_str(), &r.h)).collect();
        hs.dedup();
        for (g, h) in hs {
            let rows: BTreeSet<TypeLabel> = cat()
                .subsym
                .iter()
                .filter(|r| r.algebra == g && r.h == *h)
                .map(|r| r.k.clone())
                .collect();
            let gen = cat().symmetric_in(h);
            let extra: Vec<String> = gen.difference(&rows).map(|k| k.compact_name()).collect();
            if *h == l("e6+R") {
                assert_eq!(extra, vec!["e6"]);
            } else {
                assert!(extra.is_empty(), "{h}: {extra:?}");
            }
        }
    }

    #[test]
    fn pair_candidates() {
        // d = -12: only sp3+sp1 in sp4 fits, so the third class must be E I.
        let c = cat().candidates("e6", "EII", "EIV").unwrap();
        assert_eq!(c, vec![("EI".to_string(), l("sp3+sp1"))]);
        assert!(c.iter().all(|(h, _)| h != "EIV"));
        let g2 = cat().candidates("g2", "G", "G").unwrap();
        assert_eq!(g2, vec![("G".to_string(), l("R+R"))]);
        let e7 = cat().candidates("e7", "EVII", "EVII").unwrap();
        let ks: BTreeSet<TypeLabel> = e7.iter().map(|c| c.1.clone()).collect();
        assert_eq!(ks, [l("so(10)+R+R"), l("f4")].into_iter().collect());
    }

    #[test]
    fn e6_triple_ambiguity() {
        let t = ["EII".to_string(), "EII".to_string(), "EII".to_string()];
        let c = cat().triple_candidates("e6", &t).unwrap();
        let want: BTreeSet<TypeLabel> = [l("s(u(3)+u(3))+R"), l("so6+sp1")].into_iter().collect();
        assert_eq!(c.into_iter().collect::<BTreeSet<_>>(), want);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = Catalog::parse("pair e6 EI sp4 outer\nbogus line\n").unwrap_err();
        assert_eq!(e, CatalogError::Parse { line: 2, msg: "unrecognized line `bogus line`".into() });
        assert!(matches!(Catalog::parse("fact sp3 so9 no \"\"").unwrap_err(), CatalogError::Parse { line: 1, .. }));
        assert!(matches!(Catalog::parse("pair e6 EI sp4 sideways").unwrap_err(), CatalogError::Parse { .. }));
    }

    #[test]
    fn display_names() {
        assert_eq!(display_class("EVII"), "E VII");
        assert_eq!(display_tuple(&["EI", "EII", "EIV"]), "E I-II-IV");
        assert_eq!(display_tuple(&["G", "G", "G"]), "G");
        assert_eq!(display_tuple(&["FII", "FII"]), "F II-II");
    }
}
