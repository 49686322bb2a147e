//! Bi-graded character tables: cell-by-cell dimensions of a family over a
//! finite window, and exact comparison of tables.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{EngineError, Result};
use crate::modules::{quotient_cell, Engine, GradedCell, ModuleSpec};

/// A finite window of cells: all charges in [charge_min, charge_max] and
/// all degrees from the family's per-charge floor up to max_degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub max_degree: i64,
    pub charge_min: i64,
    pub charge_max: i64,
}

impl Window {
    pub fn new(max_degree: i64, charge_min: i64, charge_max: i64) -> Self {
        assert!(charge_min <= charge_max, "empty charge window");
        Window {
            max_degree,
            charge_min,
            charge_max,
        }
    }
}

/// Cell dimensions of one family over a window. Deterministic given
/// (spec, window); cells below the graded support are omitted (their
/// dimension is zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub spec: ModuleSpec,
    pub window: Window,
    pub cells: BTreeMap<(i64, i64), usize>,
}

impl CharacterTable {
    pub fn dim(&self, degree: i64, charge: i64) -> usize {
        self.cells.get(&(degree, charge)).copied().unwrap_or(0)
    }

    /// Total dimension of one degree across the window's charges.
    pub fn degree_total(&self, degree: i64) -> usize {
        (self.window.charge_min..=self.window.charge_max)
            .map(|q| self.dim(degree, q))
            .sum()
    }
}

/// The cells a window covers for a family.
pub fn window_cells(spec: &ModuleSpec, window: Window) -> Vec<GradedCell> {
    let mut out = Vec::new();
    for q in window.charge_min..=window.charge_max {
        match spec {
            ModuleSpec::H4Verma { .. } => {
                if q <= 0 {
                    out.push(GradedCell::new(0, q));
                }
            }
            ModuleSpec::H4Intermediate { .. } => out.push(GradedCell::new(0, q)),
            _ => {
                if let Some(floor) = spec.cell_floor(q) {
                    for d in floor..=window.max_degree {
                        out.push(GradedCell::new(d, q));
                    }
                }
            }
        }
    }
    out
}

/// Fills a character table, computing independent cells in parallel.
pub fn character(engine: &Engine, spec: &ModuleSpec, window: Window) -> Result<CharacterTable> {
    spec.validate()?;
    let cells = window_cells(spec, window);
    let computed: Vec<((i64, i64), usize)> = cells
        .par_iter()
        .map(|cell| {
            let dim = match spec {
                ModuleSpec::Quotient { .. } => quotient_cell(engine, spec, *cell)?.0,
                _ => engine.cell_dim(spec, *cell)?,
            };
            Ok(((cell.degree, cell.charge), dim))
        })
        .collect::<Result<_>>()?;
    Ok(CharacterTable {
        spec: spec.clone(),
        window,
        cells: computed.into_iter().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompareOutcome {
    Equal,
    Differs {
        cell: GradedCell,
        left: usize,
        right: usize,
    },
}

/// Exact cell-wise comparison of two tables over the same window. Cells
/// absent from one table count as zero-dimensional.
pub fn compare_characters(a: &CharacterTable, b: &CharacterTable) -> Result<CompareOutcome> {
    if a.window != b.window {
        return Err(EngineError::WindowMismatch);
    }
    let mut keys: Vec<(i64, i64)> = a.cells.keys().chain(b.cells.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    for (d, q) in keys {
        let left = a.dim(d, q);
        let right = b.dim(d, q);
        if left != right {
            return Ok(CompareOutcome::Differs {
                cell: GradedCell::new(d, q),
                left,
                right,
            });
        }
    }
    Ok(CompareOutcome::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    #[test]
    fn vacuum_degree_totals() {
        let engine = Engine::default();
        let spec = ModuleSpec::vacuum0();
        let table = character(&engine, &spec, Window::new(3, -3, 3)).unwrap();
        assert_eq!(table.degree_total(0), 1);
        assert_eq!(table.degree_total(1), 4);
        assert_eq!(table.degree_total(2), 14);
        assert_eq!(table.degree_total(3), 40);
    }

    #[test]
    fn tables_are_deterministic() {
        let engine = Engine::default();
        let spec = ModuleSpec::Gv1 {
            m: 1,
            c0: Scalar::zero(),
            d0: Scalar::new(1, 2),
        };
        let t1 = character(&engine, &spec, Window::new(3, -2, 2)).unwrap();
        let t2 = character(&Engine::default(), &spec, Window::new(3, -2, 2)).unwrap();
        assert_eq!(t1, t2);
        assert_eq!(compare_characters(&t1, &t2).unwrap(), CompareOutcome::Equal);
    }

    #[test]
    fn window_mismatch_is_an_error() {
        let engine = Engine::default();
        let spec = ModuleSpec::vacuum0();
        let t1 = character(&engine, &spec, Window::new(2, -2, 2)).unwrap();
        let t2 = character(&engine, &spec, Window::new(3, -2, 2)).unwrap();
        assert_eq!(
            compare_characters(&t1, &t2).unwrap_err(),
            EngineError::WindowMismatch
        );
    }

    #[test]
    fn generator_cell_of_first_class() {
        let engine = Engine::default();
        let spec = ModuleSpec::Gv0 {
            c0: 2,
            d0: Scalar::new(1, 3),
        };
        let table = character(&engine, &spec, Window::new(2, -2, 2)).unwrap();
        assert_eq!(table.dim(0, 0), 1);
        // negative-degree cells are part of the support for c0 = 2
        assert_eq!(table.dim(-1, -1), 1);
        assert_eq!(table.dim(-2, -2), 1);
    }
}
