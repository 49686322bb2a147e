//! Enumeration of the PBW basis of a bi-graded cell.
//!
//! Finiteness comes from the charge: with #a - #b pinned, the per-mode
//! degree lower bounds force #b <= f(degree, charge) because the minimal
//! a-degree plus the minimal b-degree is strictly positive in every
//! family. c- and d-parts are plain partitions.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::{Gen, Mode};
use crate::error::{EngineError, Result};
use crate::modules::{BaseLabel, GradedCell, ModuleSpec, PbwWord, Term};

pub const DEFAULT_CELL_BUDGET: usize = 20_000;

/// Shared computation context: the cell-dimension cap and the memoized
/// basis cache (shared-read / exclusive-write).
pub struct Engine {
    budget: usize,
    cache: RwLock<HashMap<(ModuleSpec, GradedCell), Arc<Vec<Term>>>>,
    word_cache: RwLock<HashMap<(ModuleSpec, GradedCell), Arc<Vec<PbwWord>>>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::with_budget(DEFAULT_CELL_BUDGET)
    }
}

impl Engine {
    pub fn with_budget(budget: usize) -> Self {
        Engine {
            budget,
            cache: RwLock::new(HashMap::new()),
            word_cache: RwLock::new(HashMap::new()),
        }
    }

    /// Canonical free-lowering words of a given family degree and word
    /// charge, memoized. Used for submodule spanning.
    pub(crate) fn lowering_words(
        &self,
        spec: &ModuleSpec,
        want: GradedCell,
    ) -> Result<Arc<Vec<PbwWord>>> {
        let key = (spec.clone(), want);
        if let Some(hit) = self.word_cache.read().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let words = match spec {
            ModuleSpec::H4Verma { .. } => {
                if want.degree == 0 && want.charge <= 0 {
                    vec![PbwWord::new(vec![Mode::b(0); (-want.charge) as usize])?]
                } else {
                    Vec::new()
                }
            }
            _ => enumerate_words(spec, want.degree, want.charge, self.budget, &want)?,
        };
        let words = Arc::new(words);
        self.word_cache
            .write()
            .unwrap()
            .insert(key, Arc::clone(&words));
        Ok(words)
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// The complete, duplicate-free PBW basis of a cell, in lexicographic
    /// order, memoized per (family, cell).
    pub fn graded_basis(&self, spec: &ModuleSpec, cell: GradedCell) -> Result<Arc<Vec<Term>>> {
        spec.validate()?;
        let key = (spec.clone(), cell);
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let basis = Arc::new(self.compute_basis(spec, cell)?);
        self.cache
            .write()
            .unwrap()
            .insert(key, Arc::clone(&basis));
        Ok(basis)
    }

    pub fn cell_dim(&self, spec: &ModuleSpec, cell: GradedCell) -> Result<usize> {
        Ok(self.graded_basis(spec, cell)?.len())
    }

    fn compute_basis(&self, spec: &ModuleSpec, cell: GradedCell) -> Result<Vec<Term>> {
        let mut out: Vec<Term> = match spec {
            ModuleSpec::H4Verma { .. } => {
                if cell.degree == 0 && cell.charge <= 0 {
                    let word = vec![Mode::b(0); (-cell.charge) as usize];
                    vec![Term::new(PbwWord::new(word)?, BaseLabel::Hw)]
                } else {
                    Vec::new()
                }
            }
            ModuleSpec::H4Intermediate { .. } => {
                if cell.degree == 0 {
                    vec![Term::base_only(BaseLabel::Idx(cell.charge))]
                } else {
                    Vec::new()
                }
            }
            ModuleSpec::Quotient { .. } => {
                return Err(EngineError::Unsupported(
                    "quotient cells are dimensioned via quotient_cell".into(),
                ));
            }
            ModuleSpec::Third { .. } => {
                let mut out = Vec::new();
                // every word charge q picks the unique base v_{Q - q}
                for q in -cell.degree..=cell.degree {
                    for word in enumerate_words(spec, cell.degree, q, self.budget, &cell)? {
                        out.push(Term::new(word, BaseLabel::Idx(cell.charge - q)));
                        if out.len() > self.budget {
                            return Err(EngineError::CellBudgetExceeded {
                                cell,
                                cap: self.budget,
                            });
                        }
                    }
                }
                out
            }
            _ => enumerate_words(spec, cell.degree, cell.charge, self.budget, &cell)?
                .into_iter()
                .map(|w| Term::new(w, BaseLabel::Hw))
                .collect(),
        };
        if out.len() > self.budget {
            return Err(EngineError::CellBudgetExceeded {
                cell,
                cap: self.budget,
            });
        }
        out.sort();
        Ok(out)
    }
}

/// All canonical words of the given family degree and word charge.
fn enumerate_words(
    spec: &ModuleSpec,
    degree: i64,
    word_charge: i64,
    budget: usize,
    cell: &GradedCell,
) -> Result<Vec<PbwWord>> {
    let ma = spec_min_free_deg(spec, Gen::A);
    let mb = spec_min_free_deg(spec, Gen::B);
    debug_assert!(ma + mb > 0, "per-mode degree bounds must sum positively");

    let mut words = Vec::new();
    let mut ib = word_charge.min(0).abs();
    loop {
        let ia = word_charge + ib;
        let lb = ia * ma + ib * mb;
        if lb > degree {
            break;
        }
        for ta in ia * ma..=degree - ib * mb {
            for tb in ib * mb..=degree - ta {
                let tcd = degree - ta - tb;
                if tcd < 0 {
                    continue;
                }
                let a_parts = multisets_fixed(ia as usize, ta, ma);
                if a_parts.is_empty() {
                    continue;
                }
                let b_parts = multisets_fixed(ib as usize, tb, mb);
                if b_parts.is_empty() {
                    continue;
                }
                for td in 0..=tcd {
                    let d_parts = partitions_min1(td);
                    let c_parts = partitions_min1(tcd - td);
                    for dp in &d_parts {
                        for cp in &c_parts {
                            for ap in &a_parts {
                                for bp in &b_parts {
                                    let mut modes = Vec::with_capacity(
                                        dp.len() + cp.len() + ap.len() + bp.len(),
                                    );
                                    push_modes(spec, Gen::D, dp, &mut modes);
                                    push_modes(spec, Gen::C, cp, &mut modes);
                                    push_modes(spec, Gen::A, ap, &mut modes);
                                    push_modes(spec, Gen::B, bp, &mut modes);
                                    words.push(PbwWord::new(modes)?);
                                    if words.len() > budget {
                                        return Err(EngineError::CellBudgetExceeded {
                                            cell: *cell,
                                            cap: budget,
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        ib += 1;
    }
    Ok(words)
}

fn spec_min_free_deg(spec: &ModuleSpec, g: Gen) -> i64 {
    spec.min_free_deg(g)
        .expect("word enumeration needs free modes for every generator")
}

/// Converts a descending list of mode degrees into modes with ascending
/// indices, via famdeg g(n) = -n + shift.
fn push_modes(spec: &ModuleSpec, g: Gen, degs: &[i64], out: &mut Vec<Mode>) {
    for &deg in degs {
        let shift = spec.famdeg(g, 0);
        out.push(Mode::H(g, shift - deg));
    }
}

/// Weakly decreasing sequences of `k` integers each >= `min`, summing to
/// `total`.
fn multisets_fixed(k: usize, total: i64, min: i64) -> Vec<Vec<i64>> {
    fn rec(k: usize, total: i64, min: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if k == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // remaining parts are each in [min, max] and must sum to total
        let lo = min.max(total - (k as i64 - 1) * max);
        let hi = max.min(total - (k as i64 - 1) * min);
        let mut p = hi;
        while p >= lo {
            cur.push(p);
            rec(k - 1, total - p, min, p, cur, out);
            cur.pop();
            p -= 1;
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let max = total - (k as i64 - 1) * min;
    if max < min {
        return out;
    }
    let mut cur = Vec::new();
    rec(k, total, min, max, &mut cur, &mut out);
    out
}

/// All partitions of `t` into parts >= 1, largest part first.
fn partitions_min1(t: i64) -> Vec<Vec<i64>> {
    fn rec(t: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if t == 0 {
            out.push(cur.clone());
            return;
        }
        let mut p = max.min(t);
        while p >= 1 {
            cur.push(p);
            rec(t - p, p, cur, out);
            cur.pop();
            p -= 1;
        }
    }
    let mut out = Vec::new();
    if t < 0 {
        return out;
    }
    let mut cur = Vec::new();
    rec(t, t.max(1), &mut cur, &mut out);
    out
}
