use num_bigint::BigInt;
use tfa_core::bases::BasisRecord;
use tfa_core::decomp::PartitionRecord;
use tfa_core::group::GroupRep;
use tfa_core::linalg::rational::RationalVector;
use tfa_core::linalg::RationalMatrix;
use tfa_core::text::{self, NamedGroup};

pub type CliResult<T> = std::result::Result<T, String>;

fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

/// Every group of a description file.
pub fn groups_in(path: &str) -> CliResult<Vec<NamedGroup>> {
    text::parse_groups(&read(path)?).map_err(|e| format!("{path}: {e}"))
}

/// `FILE` (its first group) or `FILE#NAME`.
pub fn group(spec: &str) -> CliResult<GroupRep> {
    let (path, name) = match spec.rsplit_once('#') {
        Some((p, n)) => (p, Some(n)),
        None => (spec, None),
    };
    let all = groups_in(path)?;
    let found = match name {
        Some(n) => all.into_iter().find(|g| g.name == n),
        None => all.into_iter().next(),
    };
    found.map(|g| g.group).ok_or_else(|| match name {
        Some(n) => format!("{path}: no group named {n}"),
        None => format!("{path}: no groups"),
    })
}

/// Every group of a file, or the single group `FILE#NAME`.
pub fn summands(spec: &str) -> CliResult<Vec<GroupRep>> {
    if spec.contains('#') {
        return Ok(vec![group(spec)?]);
    }
    Ok(groups_in(spec)?.into_iter().map(|g| g.group).collect())
}

pub fn vector(g: &GroupRep, s: &str) -> CliResult<RationalVector> {
    let v = text::parse_vector(s).map_err(|e| e.to_string())?;
    if v.dim() != g.ambient_dim() {
        return Err(format!("{s} has {} entries, the group lives in dimension {}", v.dim(), g.ambient_dim()));
    }
    Ok(v)
}

pub fn vectors(g: &GroupRep, s: &str) -> CliResult<Vec<RationalVector>> {
    let vs = text::parse_vectors(s).map_err(|e| e.to_string())?;
    if let Some(v) = vs.iter().find(|v| v.dim() != g.ambient_dim()) {
        return Err(format!("{v} has {} entries, the group lives in dimension {}", v.dim(), g.ambient_dim()));
    }
    Ok(vs)
}

pub fn basis(g: &GroupRep, s: &str) -> CliResult<BasisRecord> {
    BasisRecord::new(g, vectors(g, s)?).map_err(|e| e.to_string())
}

pub fn partition(b: &BasisRecord, s: &str) -> CliResult<PartitionRecord> {
    let blocks = text::parse_partition(s).map_err(|e| e.to_string())?;
    PartitionRecord::new(b.clone(), blocks).map_err(|e| e.to_string())
}

pub fn matrix(g: &GroupRep, s: &str) -> CliResult<RationalMatrix> {
    let m = text::parse_matrix(s).map_err(|e| e.to_string())?;
    let n = g.ambient_dim();
    if m.shape() != (n, n) {
        return Err(format!("expected a {n}x{n} matrix, found {}x{}", m.shape().0, m.shape().1));
    }
    Ok(m)
}

/// Blocks of integer vectors: `"1,0;0,1|0,2"`.
pub fn int_blocks(s: &str) -> CliResult<Vec<Vec<Vec<BigInt>>>> {
    s.split('|')
        .map(|block| {
            block
                .split(';')
                .filter(|v| !v.trim().is_empty())
                .map(|v| {
                    text::parse_vector(v)
                        .map_err(|e| e.to_string())?
                        .to_integers()
                        .ok_or_else(|| format!("{v}: expected integer entries"))
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_blocks() {
        let b = int_blocks("1,0;0,1|0,2").unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(b[0].len(), 2);
        assert_eq!(b[1][0], vec![BigInt::from(0), BigInt::from(2)]);
        assert!(int_blocks("1/2").is_err());
    }

    #[test]
    fn missing_files_are_reported() {
        assert!(group("/nonexistent/g.grp").unwrap_err().contains("/nonexistent/g.grp"));
    }
}
