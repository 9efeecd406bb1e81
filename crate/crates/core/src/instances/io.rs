//! Text instance files.
//!
//! The first line holds `n` and, optionally, `m`. The rest is one of:
//!
//! * `n (n - 1) / 2` numbers: the upper triangle, row by row;
//! * `3 n (n - 1) / 2` numbers: `i j d` triples, 0- or 1-based (1-based when
//!   some index equals `n`).
//!
//! [`write_instance`] always emits 0-based triples with `i < j`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use log::warn;

use crate::error::{Error, Result};
use crate::model::{check_cardinality, Instance};
use crate::scalar::Scalar;

/// Reads an instance file. `m_override` wins over the header's `m`.
pub fn read_instance<T: Scalar>(path: impl AsRef<Path>, m_override: Option<usize>) -> Result<Instance<T>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    parse_instance(&text, m_override, path)
}

/// Parses instance text; `origin` only labels errors.
pub fn parse_instance<T: Scalar>(text: &str, m_override: Option<usize>, origin: &Path) -> Result<Instance<T>> {
    let fail = |message: String| Error::Parse { path: origin.to_path_buf(), message };

    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| fail("empty file".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.is_empty() || head.len() > 2 {
        return Err(fail(format!("header must be \"n\" or \"n m\", got {header:?}")));
    }
    let n: usize = head[0].parse().map_err(|_| fail(format!("bad element count {:?}", head[0])))?;
    let header_m = match head.get(1) {
        Some(tok) => Some(tok.parse::<usize>().map_err(|_| fail(format!("bad subset size {tok:?}")))?),
        None => None,
    };
    let m = m_override
        .or(header_m)
        .ok_or_else(|| Error::MissingCardinality(origin.to_path_buf()))?;
    check_cardinality(n, m).map_err(|e| fail(e.to_string()))?;

    let tokens: Vec<&str> = lines.flat_map(str::split_whitespace).collect();
    let pairs = n * (n - 1) / 2;
    let mut dist = vec![T::zero(); n * n];
    let mut set = |i: usize, j: usize, raw: &str| -> Result<()> {
        let x: f64 = raw.parse().map_err(|_| fail(format!("bad distance {raw:?}")))?;
        let d = T::from_f64_checked(x).ok_or_else(|| fail(format!("distance {raw} is not representable")))?;
        if d.partial_cmp(&T::zero()).is_none_or(|o| o.is_lt()) {
            return Err(fail(format!("negative distance {raw} between {i} and {j}")));
        }
        dist[i * n + j] = d;
        dist[j * n + i] = d;
        Ok(())
    };

    if tokens.len() == pairs {
        let mut it = tokens.iter();
        for i in 0..n {
            for j in (i + 1)..n {
                set(i, j, it.next().expect("token count checked"))?;
            }
        }
    } else if tokens.len() == 3 * pairs {
        let mut triples = Vec::with_capacity(pairs);
        for t in tokens.chunks_exact(3) {
            let i: usize = t[0].parse().map_err(|_| fail(format!("bad index {:?}", t[0])))?;
            let j: usize = t[1].parse().map_err(|_| fail(format!("bad index {:?}", t[1])))?;
            triples.push((i, j, t[2]));
        }
        let one_based = triples.iter().any(|&(i, j, _)| i == n || j == n);
        let mut seen = vec![false; n * n];
        for (i, j, raw) in triples {
            let (i, j) = if one_based {
                if i == 0 || j == 0 {
                    return Err(fail("index 0 in a 1-based file".into()));
                }
                (i - 1, j - 1)
            } else {
                (i, j)
            };
            if i >= n || j >= n {
                return Err(fail(format!("index pair ({i}, {j}) out of range for n = {n}")));
            }
            if i == j {
                continue;
            }
            let key = i.min(j) * n + i.max(j);
            if seen[key] {
                return Err(fail(format!("pair ({i}, {j}) listed twice")));
            }
            seen[key] = true;
            set(i, j, raw)?;
        }
        let missing = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).filter(|&(i, j)| !seen[i * n + j]).count();
        if missing > 0 {
            warn!("{}: {missing} pair(s) missing, taken as distance 0", origin.display());
        }
    } else {
        return Err(fail(format!(
            "expected {pairs} values (upper triangle) or {} values (i j d triples) for n = {n}, found {}",
            3 * pairs,
            tokens.len()
        )));
    }

    Instance::new(n, m, dist).map_err(|e| fail(e.to_string()))
}

/// Canonical text form: `n m`, then `i j d` for every `i < j`.
pub fn format_instance<T: Scalar>(instance: &Instance<T>) -> String {
    let n = instance.n();
    let mut out = String::with_capacity(16 * n * n / 2 + 16);
    writeln!(out, "{} {}", n, instance.m()).expect("writing to a String");
    for i in 0..n {
        let row = instance.row(i);
        for (j, d) in row.iter().enumerate().skip(i + 1) {
            // Display of floats is the shortest string that reads back exactly
            writeln!(out, "{i} {j} {d}").expect("writing to a String");
        }
    }
    out
}

pub fn write_instance<T: Scalar>(instance: &Instance<T>, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format_instance(instance))?;
    Ok(())
}

/// File stem used as the instance name in reports.
pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| PathBuf::from(path).display().to_string())
}
