//! Cells of the submodule generated by homogeneous vectors, and quotient
//! cell dimensions.
//!
//! Spanning uses the PBW factorization adapted to the family: ordered
//! monomials in the annihilator subalgebra are applied first (they only
//! lower degree, so pruning on actual vanishing terminates), the chain
//! steps a(-m), b(m) of the intermediate-series family walk the base in
//! the middle, and free lowering words complete the path into the target
//! cell. The middle walk has no a-priori length bound, so it is saturated
//! well past the window with a stabilization margin.

use std::collections::HashMap;

use crate::algebra::Mode;
use crate::error::{EngineError, Result};
use crate::linalg;
use crate::modules::{
    act, apply_word, Engine, GradedCell, ModuleSpec, ModuleVector, Term,
};
use crate::scalar::Scalar;

/// Extra chain-walk steps beyond the window-derived bound; the walk's
/// contribution to the span stabilizes after at most the number of word
/// strata in a degree row, which the window bound already covers.
const CHAIN_SATURATION_MARGIN: i64 = 6;

/// A row-reduced basis of the intersection of the submodule generated by
/// `generators` with the given cell.
pub fn submodule_cell(
    engine: &Engine,
    spec: &ModuleSpec,
    generators: &[ModuleVector],
    cell: GradedCell,
) -> Result<Vec<ModuleVector>> {
    let (rows, basis) = submodule_rows(engine, spec, generators, cell)?;
    let mut rows = rows;
    linalg::rref(&mut rows);
    Ok(rows
        .iter()
        .map(|row| {
            let mut v = ModuleVector::zero();
            for (term, coeff) in basis.iter().zip(row.iter()) {
                v.add_term(term.clone(), coeff.clone());
            }
            v
        })
        .collect())
}

/// Dimension and representative basis of a quotient cell: representatives
/// are the inner basis elements away from the submodule's pivot columns.
pub fn quotient_cell(
    engine: &Engine,
    spec: &ModuleSpec,
    cell: GradedCell,
) -> Result<(usize, Vec<Term>)> {
    let ModuleSpec::Quotient { inner, generators } = spec else {
        return Err(EngineError::Unsupported(
            "quotient_cell needs a quotient family".into(),
        ));
    };
    let (mut rows, basis) = submodule_rows(engine, inner, generators, cell)?;
    let pivots = linalg::rref(&mut rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.into_iter().collect();
    let reps: Vec<Term> = basis
        .iter()
        .enumerate()
        .filter(|(i, _)| !pivot_set.contains(i))
        .map(|(_, t)| t.clone())
        .collect();
    Ok((reps.len(), reps))
}

fn supported_for_submodules(spec: &ModuleSpec) -> Result<()> {
    match spec {
        ModuleSpec::Gv0 { c0, .. } if *c0 != 0 => Err(EngineError::Unsupported(
            "submodule cells of the first-class family: its annihilator set \
             contains degree-raising operators, and the module is irreducible"
                .into(),
        )),
        ModuleSpec::H4Intermediate { .. } => Err(EngineError::Unsupported(
            "the intermediate-series base has no raising/lowering split".into(),
        )),
        ModuleSpec::Quotient { .. } => Err(EngineError::Unsupported(
            "nested quotients are not supported".into(),
        )),
        _ => Ok(()),
    }
}

fn submodule_rows(
    engine: &Engine,
    spec: &ModuleSpec,
    generators: &[ModuleVector],
    cell: GradedCell,
) -> Result<(Vec<Vec<Scalar>>, Vec<Term>)> {
    supported_for_submodules(spec)?;
    let basis = engine.graded_basis(spec, cell)?;
    let index: HashMap<Term, usize> = basis
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for gen in generators {
        if gen.is_zero() {
            continue;
        }
        let gen_cell = gen
            .cell(spec)?
            .expect("nonzero generator has a cell");
        let mut reached: Vec<ModuleVector> = Vec::new();
        raising_closure(spec, gen.clone(), Mode::K, &mut reached)?;
        for v1 in reached {
            chain_and_lower(engine, spec, &v1, gen_cell.degree, cell, &index, &mut rows)?;
        }
    }
    Ok((rows, basis.as_ref().clone()))
}

/// Depth-first closure of a homogeneous vector under ordered monomials in
/// the annihilator set. Every such mode has non-positive family degree
/// for the supported families, and any infinite path exits the module's
/// graded support, so pruning on vanishing terminates.
fn raising_closure(
    spec: &ModuleSpec,
    v: ModuleVector,
    min_mode: Mode,
    out: &mut Vec<ModuleVector>,
) -> Result<()> {
    let cell = v
        .cell(spec)?
        .expect("raising closure runs on nonzero homogeneous vectors");
    let candidates = spec.raising_modes_for_cell(cell);
    out.push(v.clone());
    for mode in candidates {
        if min_mode != Mode::K && mode < min_mode {
            continue;
        }
        let next = act(spec, mode, &v)?;
        if !next.is_zero() {
            raising_closure(spec, next, mode, out)?;
        }
    }
    Ok(())
}

/// Middle chain walk (intermediate-series families only) followed by free
/// lowering words landing exactly in the target cell.
fn chain_and_lower(
    engine: &Engine,
    spec: &ModuleSpec,
    v1: &ModuleVector,
    gen_degree: i64,
    target: GradedCell,
    index: &HashMap<Term, usize>,
    rows: &mut Vec<Vec<Scalar>>,
) -> Result<()> {
    let Some(c1) = v1.cell(spec)? else {
        return Ok(());
    };
    if c1.degree > target.degree {
        return Ok(());
    }
    let saturation = match spec {
        ModuleSpec::Third { .. } => {
            (target.degree + gen_degree).max(0) + CHAIN_SATURATION_MARGIN
        }
        _ => 0,
    };
    let (step_down, step_up) = match spec {
        ModuleSpec::Third { m, .. } => (Some(Mode::b(*m)), Some(Mode::a(-m))),
        _ => (None, None),
    };
    let mut down = v1.clone();
    for q in 0..=saturation {
        if q > 0 {
            match step_down {
                Some(mode) => {
                    down = act(spec, mode, &down)?;
                    if down.is_zero() {
                        break;
                    }
                }
                None => break,
            }
        }
        let mut cur = down.clone();
        for p in 0..=saturation {
            if p > 0 {
                match step_up {
                    Some(mode) => {
                        cur = act(spec, mode, &cur)?;
                        if cur.is_zero() {
                            break;
                        }
                    }
                    None => break,
                }
            }
            let mid_cell = GradedCell::new(c1.degree, c1.charge - q + p);
            lower_into(engine, spec, &cur, mid_cell, target, index, rows)?;
        }
        if step_down.is_none() {
            break;
        }
    }
    Ok(())
}

fn lower_into(
    engine: &Engine,
    spec: &ModuleSpec,
    v: &ModuleVector,
    from: GradedCell,
    target: GradedCell,
    index: &HashMap<Term, usize>,
    rows: &mut Vec<Vec<Scalar>>,
) -> Result<()> {
    let want = GradedCell::new(target.degree - from.degree, target.charge - from.charge);
    // free lowering words are exactly the basis words of the family, so
    // reuse the cell enumerator on a throwaway highest-weight relabeling
    let words = engine.lowering_words(spec, want)?;
    for word in words.iter() {
        let moved = apply_word(spec, word.modes(), v)?;
        if moved.is_zero() {
            continue;
        }
        let mut row = vec![Scalar::zero(); index.len()];
        for (term, coeff) in moved.iter() {
            let col = index
                .get(term)
                .expect("homogeneous image lands in the target cell");
            row[*col] = &row[*col] + coeff;
        }
        rows.push(row);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Mode;
    use crate::modules::PbwWord;
    use crate::scalar::Scalar;

    fn gv1_degenerate() -> ModuleSpec {
        // c(0)-eigenvalue m - 1: the epsilon = 1 family with the
        // degree-2 singular vector c(-1)b(1).1 + b(0).1
        ModuleSpec::Gv1 {
            m: 1,
            c0: Scalar::zero(),
            d0: Scalar::new(1, 2),
        }
    }

    fn u1(spec: &ModuleSpec) -> ModuleVector {
        let mut v = ModuleVector::zero();
        v.add_term(
            Term::new(
                PbwWord::new(vec![Mode::c(-1), Mode::b(1)]).unwrap(),
                crate::modules::BaseLabel::Hw,
            ),
            Scalar::one(),
        );
        v.add_term(
            Term::new(
                PbwWord::new(vec![Mode::b(0)]).unwrap(),
                crate::modules::BaseLabel::Hw,
            ),
            Scalar::one(),
        );
        assert_eq!(
            v.cell(spec).unwrap(),
            Some(GradedCell::new(2, -1)),
            "sanity"
        );
        v
    }

    #[test]
    fn generator_cell_is_one_dimensional() {
        let engine = Engine::default();
        let spec = gv1_degenerate();
        let u = u1(&spec);
        let basis = submodule_cell(&engine, &spec, &[u.clone()], GradedCell::new(2, -1)).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0].normalized(), u.normalized());
    }

    #[test]
    fn empty_generators_span_nothing() {
        let engine = Engine::default();
        let spec = gv1_degenerate();
        assert!(submodule_cell(&engine, &spec, &[], GradedCell::new(2, -1))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn one_degree_above_matches_direct_lowerings() {
        // the generator is singular, so the cell one degree above is
        // spanned by the lowering words of net (degree 1, charge 0):
        // c(-1), d(-1), and the two-mode word a(-2)b(1) (a(-2) has
        // degree 0 in this family's grading)
        let engine = Engine::default();
        let spec = gv1_degenerate();
        let u = u1(&spec);
        let target = GradedCell::new(3, -1);
        let basis = submodule_cell(&engine, &spec, &[u.clone()], target).unwrap();

        let mut rows = Vec::new();
        let cell_basis = engine.graded_basis(&spec, target).unwrap();
        let index: HashMap<Term, usize> = cell_basis
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let words: [&[Mode]; 3] = [
            &[Mode::c(-1)],
            &[Mode::d(-1)],
            &[Mode::a(-2), Mode::b(1)],
        ];
        for word in words {
            let moved = apply_word(&spec, word, &u).unwrap();
            let mut row = vec![Scalar::zero(); index.len()];
            for (t, c) in moved.iter() {
                row[index[t]] = c.clone();
            }
            rows.push(row);
        }
        let expected_rank = crate::linalg::rank(rows);
        assert_eq!(expected_rank, 3);
        assert_eq!(basis.len(), expected_rank);
    }

    #[test]
    fn quotient_dimensions_subtract() {
        let engine = Engine::default();
        let spec = gv1_degenerate();
        let u = u1(&spec);
        let quotient = ModuleSpec::Quotient {
            inner: Box::new(spec.clone()),
            generators: vec![u],
        };
        let cell = GradedCell::new(2, -1);
        let inner_dim = engine.cell_dim(&spec, cell).unwrap();
        let (q_dim, reps) = quotient_cell(&engine, &quotient, cell).unwrap();
        assert_eq!(q_dim, inner_dim - 1);
        assert_eq!(reps.len(), q_dim);

        // quotient by the zero submodule leaves the inner dimensions
        let trivial = ModuleSpec::Quotient {
            inner: Box::new(spec.clone()),
            generators: vec![],
        };
        let (t_dim, _) = quotient_cell(&engine, &trivial, cell).unwrap();
        assert_eq!(t_dim, inner_dim);
    }

    #[test]
    fn first_class_submodules_are_rejected() {
        let engine = Engine::default();
        let spec = ModuleSpec::Gv0 {
            c0: 2,
            d0: Scalar::zero(),
        };
        let gen = ModuleVector::base_vector(crate::modules::BaseLabel::Hw);
        let err = submodule_cell(&engine, &spec, &[gen], GradedCell::new(1, 0)).unwrap_err();
        assert!(matches!(err, EngineError::Unsupported(_)));
    }
}
