//! The fourteen extremal rational types and their canonical configurations.
//!
//! Each row lists the fiber types `(l0, m0, n0)` and vanishing cycles with the
//! least possible intersection numbers with the boundary curve `C = u`.
//!
//! Four rows of the classical table do not satisfy the extremal identity as
//! usually printed and are stored corrected here:
//!
//! * row 4: the printed cycles `v+3u, 2v+u, v` satisfy the mirror-image
//!   identity; the registry stores their mirror `v-3u, 2v-u, v`.
//! * row 6: the printed cycles repeat row 1 (`v-3u, v, v+3u`), which fails for
//!   powers `(3,3,3)`; the solution keeping `C2 = v` is `v-u, v, v+u`.
//! * row 9: the printed `C2 = C3 = v` is impossible (their pairing must be
//!   nonzero); the solution keeping `C1`, `C2` is `2v-u, v, v+u`.
//! * row 12: the printed powers `(2,2,8)` sum to 12, which makes the
//!   Markov-type coefficient vanish; `(1,2,8)` is the unique power assignment
//!   on the printed cycles that satisfies the identity.
//!
//! The derivations are replayed in this module's tests.

use std::sync::OnceLock;

use serde::Serialize;

use super::{check_extremal, Factorization, TwistFactor};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::lattice::{pairing, HomologyClass};

/// Fiber types of the fourteen rows, in row order.
pub const EXTREMAL_POWERS: [[u32; 3]; 14] = [
    [1, 1, 1],
    [1, 1, 2],
    [1, 2, 3],
    [1, 1, 5],
    [2, 2, 4],
    [3, 3, 3],
    [1, 2, 6],
    [1, 1, 8],
    [2, 4, 4],
    [1, 3, 6],
    [1, 1, 9],
    [1, 2, 8],
    [2, 3, 6],
    [1, 5, 5],
];

// (p, q) of C1, C2, C3 for each row, as stored.
const CYCLES: [[(i64, i64); 3]; 14] = [
    [(1, -3), (1, 0), (1, 3)],
    [(1, -4), (1, 0), (1, 2)],
    [(1, -3), (1, 0), (1, 1)],
    [(1, -3), (2, -1), (1, 0)],
    [(1, -2), (1, 0), (1, 1)],
    [(1, -1), (1, 0), (1, 1)],
    [(2, -3), (1, 0), (1, 1)],
    [(2, -3), (2, -1), (1, 0)],
    [(2, -1), (1, 0), (1, 1)],
    [(3, -2), (1, 0), (1, 1)],
    [(3, -2), (3, -1), (1, 0)],
    [(4, -3), (2, -1), (1, 0)],
    [(3, -2), (2, -1), (1, 0)],
    [(5, -3), (2, -1), (1, 0)],
];

// The table as it is usually printed, kept for the correction tests.
const PRINTED_POWERS_12: [u32; 3] = [2, 2, 8];
const PRINTED_CYCLES: [(usize, [(i64, i64); 3]); 3] = [
    (4, [(1, 3), (2, 1), (1, 0)]),
    (6, [(1, -3), (1, 0), (1, 3)]),
    (9, [(2, -1), (1, 0), (1, 0)]),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalRow {
    pub row: usize,
    pub powers: [u32; 3],
    pub cycles: [HomologyClass; 3],
    pub boundary: HomologyClass,
}

impl CanonicalRow {
    pub fn factorization(&self) -> Factorization {
        let factors = self
            .cycles
            .iter()
            .zip(self.powers)
            .map(|(c, n)| TwistFactor::new(c.clone(), n))
            .collect();
        Factorization::new(factors, self.boundary.clone()).expect("registry cycles are primitive")
    }

    /// Pairings `(x, y, z)` of the boundary with the three cycles.
    pub fn minimum_triple(&self) -> [Int; 3] {
        [0, 1, 2].map(|i| pairing(&self.boundary, &self.cycles[i]))
    }
}

fn build(row: usize, powers: [u32; 3], cycles: [(i64, i64); 3]) -> CanonicalRow {
    CanonicalRow {
        row,
        powers,
        cycles: cycles.map(|(p, q)| HomologyClass::new(p, q)),
        boundary: HomologyClass::u(),
    }
}

fn validate(rows: Vec<CanonicalRow>) -> Result<Vec<CanonicalRow>> {
    for r in &rows {
        let ok = check_extremal(&r.factorization()).map_err(|e| Error::Registry {
            row: r.row,
            reason: e.to_string(),
        })?;
        if !ok {
            return Err(Error::Registry {
                row: r.row,
                reason: "product of twists differs from delta * tau_C^(l+m+n-12)".into(),
            });
        }
    }
    Ok(rows)
}

/// Builds and validates the registry without caching.
pub fn load_registry() -> Result<Vec<CanonicalRow>> {
    let rows = (0..14).map(|i| build(i + 1, EXTREMAL_POWERS[i], CYCLES[i])).collect();
    validate(rows)
}

/// The validated registry. Panics if any row fails the extremal identity.
pub fn canonical_registry() -> &'static [CanonicalRow] {
    static REGISTRY: OnceLock<Vec<CanonicalRow>> = OnceLock::new();
    REGISTRY.get_or_init(|| match load_registry() {
        Ok(rows) => rows,
        Err(e) => panic!("canonical registry failed validation: {e}"),
    })
}

pub fn registry_row(row: usize) -> Result<&'static CanonicalRow> {
    if (1..=14).contains(&row) {
        Ok(&canonical_registry()[row - 1])
    } else {
        Err(Error::UnknownRow(row))
    }
}

/// The fourteen rows exactly as usually printed (unvalidated).
pub fn printed_table() -> Vec<CanonicalRow> {
    (0..14)
        .map(|i| {
            let row = i + 1;
            let powers = if row == 12 {
                PRINTED_POWERS_12
            } else {
                EXTREMAL_POWERS[i]
            };
            let cycles = PRINTED_CYCLES
                .iter()
                .find(|(r, _)| *r == row)
                .map_or(CYCLES[i], |(_, c)| *c);
            build(row, powers, cycles)
        })
        .collect()
}
