//! Generators for the standard test lattices.

use super::{transitive_closure, Elem, Oml};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog lattice `{0}` (expected boolean, mo, chain2 or o6)")]
    UnknownName(String),
    #[error("parameter {k} out of range for `{name}` (allowed {lo}..={hi})")]
    OutOfBounds {
        name: String,
        k: usize,
        lo: usize,
        hi: usize,
    },
}

const ATOM_LETTERS: [char; 10] = ['p', 'q', 'r', 's', 't', 'u', 'v', 'w', 'x', 'y'];
const MO_LETTERS: [char; 8] = ['a', 'b', 'c', 'd', 'e', 'f', 'g', 'h'];

/// Build a catalog lattice.
///
/// * `boolean`, `k` in `0..=10`: the power set of `k` atoms, labelled by the
///   atoms it contains (`"pq"`), with `"0"` and `"1"` for the extremes.
/// * `mo`, `k` in `1..=8`: `k` Boolean blocks `{0, a, a', 1}` glued at 0 and 1.
/// * `chain2`: the two-element chain (`k` ignored).
/// * `o6`: the hexagon `0 < a < b < 1`, `0 < b' < a' < 1`, which is an
///   ortholattice but not orthomodular (`k` ignored).
pub fn catalog(name: &str, k: usize) -> Result<Oml, CatalogError> {
    let bounds = |lo: usize, hi: usize| {
        if (lo..=hi).contains(&k) {
            Ok(())
        } else {
            Err(CatalogError::OutOfBounds {
                name: name.to_string(),
                k,
                lo,
                hi,
            })
        }
    };
    match name {
        "boolean" => {
            bounds(0, 10)?;
            Ok(boolean(k))
        }
        "mo" => {
            bounds(1, 8)?;
            Ok(mo(k))
        }
        "chain2" => Ok(boolean(1)
            .relabeled(vec!["0".into(), "1".into()])
            .with_name("chain2")),
        "o6" => Ok(o6()),
        other => Err(CatalogError::UnknownName(other.to_string())),
    }
}

fn boolean(k: usize) -> Oml {
    let n = 1usize << k;
    let full = n - 1;
    let names: Vec<String> = (0..n)
        .map(|s| {
            if s == 0 {
                "0".to_string()
            } else if s == full {
                "1".to_string()
            } else {
                (0..k)
                    .filter(|b| s >> b & 1 == 1)
                    .map(|b| ATOM_LETTERS[b])
                    .collect()
            }
        })
        .collect();
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| i & !j == 0).collect())
        .collect();
    // Set operations give the tables directly; the generic glb scan is
    // quadratic in bitset width and slow at 1024 elements.
    let meet: Vec<Elem> = (0..n * n).map(|ij| (ij / n) & (ij % n)).collect();
    let join: Vec<Elem> = (0..n * n).map(|ij| (ij / n) | (ij % n)).collect();
    let perp: Vec<Elem> = (0..n).map(|s| full & !s).collect();
    Oml::from_raw_parts(format!("B{k}"), names, &leq, meet, join, perp, 0, full)
        .expect("power set tables are well sized")
}

fn mo(k: usize) -> Oml {
    let n = 2 * k + 2;
    let mut names = vec!["0".to_string()];
    for &c in &MO_LETTERS[..k] {
        names.push(c.to_string());
        names.push(format!("{c}'"));
    }
    names.push("1".to_string());
    let top = n - 1;
    let mut leq = vec![vec![false; n]; n];
    for (x, row) in leq.iter_mut().enumerate() {
        row[top] = true;
        row[x] = true;
    }
    leq[0].fill(true);
    transitive_closure(&mut leq);
    let mut perp = vec![0; n];
    perp[0] = top;
    perp[top] = 0;
    for i in 0..k {
        perp[1 + 2 * i] = 2 + 2 * i;
        perp[2 + 2 * i] = 1 + 2 * i;
    }
    Oml::from_order(format!("MO{k}"), names, &leq, perp).expect("MOk is a lattice")
}

fn o6() -> Oml {
    let names: Vec<String> = ["0", "a", "b", "b'", "a'", "1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut leq = vec![vec![false; 6]; 6];
    for (x, y) in [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)] {
        leq[x][y] = true;
    }
    transitive_closure(&mut leq);
    Oml::from_order("O6", names, &leq, vec![5, 4, 3, 2, 1, 0]).expect("hexagon is a lattice")
}
