use std::fmt::Write as _;

use super::{ChevalleyError, Convention, LieAlgebra};
use crate::rootsys::{RootSystem, SimpleType};

const MAGIC: &str = "chevalley-cache v1";

/// Text dump: header line, then `b i j k c` for every nonzero constant,
/// sorted by `(i, j, k)`.
pub fn write_cache(alg: &LieAlgebra) -> String {
    let dim = alg.dim();
    let mut s = format!("{MAGIC} {} {} {}\n", alg.cartan_type(), alg.rank(), dim);
    for i in 0..dim {
        for j in 0..dim {
            for &(k, c) in alg.bracket_basis(i, j) {
                let _ = writeln!(s, "b {i} {j} {k} {c}");
            }
        }
    }
    s
}

pub fn read_cache(text: &str) -> Result<LieAlgebra, ChevalleyError> {
    let bad = |m: String| ChevalleyError::Cache(m);
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty file".into()))?;
    let rest = header
        .strip_prefix(MAGIC)
        .ok_or_else(|| bad(format!("unexpected header `{header}`")))?;
    let fields: Vec<&str> = rest.split_whitespace().collect();
    let [ty, rank, dim] = fields.as_slice() else {
        return Err(bad(format!("unexpected header `{header}`")));
    };
    let ty: SimpleType = ty.parse()?;
    let rank: usize = rank.parse().map_err(|_| bad("bad rank".into()))?;
    let dim: usize = dim.parse().map_err(|_| bad("bad dim".into()))?;
    if ty.rank != rank || ty.dim() != dim {
        return Err(bad(format!("header does not describe {ty}")));
    }
    let mut table = vec![Vec::new(); dim * dim];
    let mut last = None;
    for (n, line) in lines.enumerate() {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let parsed = match parts.as_slice() {
            ["b", i, j, k, c] => (|| Some((i.parse::<usize>().ok()?, j.parse::<usize>().ok()?, k.parse::<usize>().ok()?, c.parse::<i64>().ok()?)))(),
            _ => None,
        };
        let (i, j, k, c) = parsed.ok_or_else(|| bad(format!("line {}: `{line}`", n + 2)))?;
        if i >= dim || j >= dim || k >= dim || c == 0 {
            return Err(bad(format!("line {}: out of range", n + 2)));
        }
        if last.is_some_and(|l| l >= (i, j, k)) {
            return Err(bad(format!("line {}: not sorted", n + 2)));
        }
        last = Some((i, j, k));
        table[i * dim + j].push((k, c));
    }
    LieAlgebra::from_table(RootSystem::new(ty), Convention::Standard, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::algebra;

    #[test]
    fn roundtrip() {
        let a = algebra("g2".parse().unwrap());
        let text = write_cache(&a);
        assert!(text.starts_with("chevalley-cache v1 G2 2 14\n"));
        let b = read_cache(&text).unwrap();
        assert_eq!(a.table(), b.table());
        assert_eq!(write_cache(&b), text);
    }

    #[test]
    fn corrupted_constant_rejected() {
        let a = algebra("a2".parse().unwrap());
        let text = write_cache(&a).replacen(" 1\n", " 2\n", 1);
        assert!(read_cache(&text).is_err());
    }
}
