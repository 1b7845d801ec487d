//! Enumeration of small pointed racks up to isomorphism.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::permutations;
use crate::rack::FiniteRack;

/// Default largest order [`enumerate_pointed_racks`] accepts.
pub const DEFAULT_ENUMERATION_BOUND: usize = 4;

/// Hard ceiling for any configured bound.
pub const MAX_ENUMERATION_BOUND: usize = 6;

/// Canonical table: relabel so the basepoint is 0 and take the
/// lexicographically least table over all orderings of the other elements.
pub fn canonical_form(r: &FiniteRack) -> Vec<usize> {
    let n = r.size();
    let others: Vec<usize> = (0..n).filter(|&x| x != r.basepoint()).collect();
    let mut best: Option<Vec<usize>> = None;
    let mut relabel = vec![0; n];
    let mut table = vec![0; n * n];
    for p in permutations(n - 1) {
        relabel[r.basepoint()] = 0;
        for (i, &x) in others.iter().enumerate() {
            relabel[x] = p[i] + 1;
        }
        for a in 0..n {
            for b in 0..n {
                table[relabel[a] * n + relabel[b]] = relabel[r.op(a, b)];
            }
        }
        if best.as_ref().is_none_or(|b| table < *b) {
            best = Some(table.clone());
        }
    }
    best.expect("at least one ordering")
}

pub fn enumerate_pointed_racks(n: usize) -> Result<Vec<FiniteRack>> {
    enumerate_pointed_racks_with_bound(n, DEFAULT_ENUMERATION_BOUND)
}

/// All pointed racks of order `n` up to isomorphism, each in canonical
/// form, sorted by canonical table.
///
/// The search fixes the basepoint at 0, so column 0 is the identity and
/// every other column is a permutation fixing 0. Columns are chosen in
/// order and self-distributivity is checked on every triple whose columns
/// are already fixed.
pub fn enumerate_pointed_racks_with_bound(n: usize, bound: usize) -> Result<Vec<FiniteRack>> {
    let bound = bound.min(MAX_ENUMERATION_BOUND);
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    if n == 0 {
        return Err(Error::EmptyCarrier);
    }
    let mut table = vec![usize::MAX; n * n];
    for a in 0..n {
        table[a * n] = a;
        table[a] = 0;
    }
    let column_choices: Vec<Vec<usize>> = permutations(n - 1)
        .into_iter()
        .map(|p| std::iter::once(0).chain(p.into_iter().map(|x| x + 1)).collect())
        .collect();
    let mut found = BTreeMap::new();
    fill_column(n, 1, &mut table, &column_choices, &mut found);
    Ok(found.into_values().collect())
}

fn fill_column(
    n: usize,
    col: usize,
    table: &mut [usize],
    choices: &[Vec<usize>],
    found: &mut BTreeMap<Vec<usize>, FiniteRack>,
) {
    if col == n {
        if let Ok(rack) = FiniteRack::new(n, table.to_vec(), 0) {
            let canon = canonical_form(&rack);
            found
                .entry(canon.clone())
                .or_insert_with(|| FiniteRack::new(n, canon, 0).expect("relabelled rack"));
        }
        return;
    }
    for column in choices {
        for a in 0..n {
            table[a * n + col] = column[a];
        }
        if partial_self_distributive(n, col, table) {
            fill_column(n, col + 1, table, choices, found);
        }
    }
    for a in 0..n {
        table[a * n + col] = usize::MAX;
    }
}

/// Self-distributivity on triples involving column `last` whose every
/// lookup lands in a filled column `≤ last`.
fn partial_self_distributive(n: usize, last: usize, table: &[usize]) -> bool {
    let op = |x: usize, y: usize| table[x * n + y];
    for b in 0..=last {
        for c in 0..=last {
            if b != last && c != last {
                continue;
            }
            let bc = op(b, c);
            if bc > last {
                continue;
            }
            for a in 0..n {
                let ab = op(a, b);
                if op(ab, c) != op(op(a, c), bc) {
                    return false;
                }
            }
        }
    }
    true
}
