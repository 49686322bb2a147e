//! Vertex-operator structure of the vacuum module: field modes of
//! arbitrary vacuum vectors on any restricted level-1 family via
//! normal-ordered products, the conformal vector and its Virasoro
//! operators, and the commutator-identity check harness.
//!
//! A word h(-p) u compiles to the normal-ordered iterate
//!   (h(-p)u)_n = sum_{k<0} C(-k-1, p-1) h(k) (u)_{n-k-p}
//!             + sum_{k>=0} C(-k-1, p-1) (u)_{n-k-p} h(k),
//! evaluated against the target with both sums truncated by the target
//! module's graded support.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::algebra::{Gen, Mode};
use crate::character::{window_cells, Window};
use crate::error::{EngineError, Result};
use crate::modules::{
    ActTable, BaseLabel, Engine, GradedCell, ModuleSpec, ModuleVector, PbwWord, Term,
};
use crate::scalar::{binomial, Scalar};

/// The conformal vector at level 1:
/// a(-1)b(-1)1 + d(-1)c(-1)1 - 1/2 c(-2)1 - 1/2 c(-1)^2 1.
pub fn omega() -> ModuleVector {
    let half = Scalar::new(1, 2);
    let mut v = ModuleVector::zero();
    v.add_term(
        Term::new(
            PbwWord::new(vec![Mode::a(-1), Mode::b(-1)]).unwrap(),
            BaseLabel::Hw,
        ),
        Scalar::one(),
    );
    v.add_term(
        Term::new(
            PbwWord::new(vec![Mode::d(-1), Mode::c(-1)]).unwrap(),
            BaseLabel::Hw,
        ),
        Scalar::one(),
    );
    v.add_term(
        Term::new(PbwWord::new(vec![Mode::c(-2)]).unwrap(), BaseLabel::Hw),
        -half.clone(),
    );
    v.add_term(
        Term::new(
            PbwWord::new(vec![Mode::c(-1), Mode::c(-1)]).unwrap(),
            BaseLabel::Hw,
        ),
        -half,
    );
    v
}

/// Natural conformal weight of a vacuum word (sum of -index).
fn word_weight(word: &[Mode]) -> i64 {
    word.iter()
        .map(|m| match m {
            Mode::H(_, n) => -n,
            Mode::K => 0,
        })
        .sum()
}

fn word_charge(word: &[Mode]) -> i64 {
    word.iter()
        .map(|m| match m {
            Mode::H(g, _) => g.charge(),
            Mode::K => 0,
        })
        .sum()
}

/// Sum of the per-generator index shifts of the word's modes in the
/// target family's grading.
fn word_sigma(spec: &ModuleSpec, word: &[Mode]) -> i64 {
    word.iter()
        .map(|m| match m {
            Mode::H(g, _) => spec.index_shift(*g),
            Mode::K => 0,
        })
        .sum()
}

/// Largest j for which (u)_j can act nontrivially on the given cell: the
/// image cell (degree + weight(u) - j - 1 + sigma, charge + charge(u))
/// must not sit below the family's graded support.
fn mode_truncation(spec: &ModuleSpec, word: &[Mode], cell: GradedCell) -> Option<i64> {
    let floor = spec.cell_floor(cell.charge + word_charge(word))?;
    Some(word_weight(word) - 1 + word_sigma(spec, word) + cell.degree - floor)
}

/// Largest index k for which the Lie mode g(k) can act nontrivially on
/// the given cell.
fn lie_truncation(spec: &ModuleSpec, g: Gen, cell: GradedCell) -> Option<i64> {
    let floor = spec.cell_floor(cell.charge + g.charge())?;
    Some(cell.degree + spec.index_shift(g) - floor)
}

fn require_vacuum_vector(v: &ModuleVector) -> Result<()> {
    for (t, _) in v.iter() {
        if t.base != BaseLabel::Hw {
            return Err(EngineError::Parse(
                "field operands live in the vacuum module".into(),
            ));
        }
    }
    Ok(())
}

/// The n-th field mode of a vacuum vector acting on a vector of any
/// restricted level-1 family; linear in both arguments.
pub fn field_mode(
    spec: &ModuleSpec,
    v: &ModuleVector,
    n: i64,
    w: &ModuleVector,
) -> Result<ModuleVector> {
    field_mode_with(&ActTable::new(spec), v, n, w)
}

/// Like `field_mode`, but straightening goes through a shared memo table
/// (the table's family is the target module).
pub fn field_mode_with(
    table: &ActTable,
    v: &ModuleVector,
    n: i64,
    w: &ModuleVector,
) -> Result<ModuleVector> {
    let spec = table.spec();
    if !spec.is_affine() {
        return Err(EngineError::Unsupported(
            "field modes need a restricted level-1 family".into(),
        ));
    }
    require_vacuum_vector(v)?;
    let mut out = ModuleVector::zero();
    for (vt, vc) in v.iter() {
        for (wt, wc) in w.iter() {
            let part = word_field_mode(table, vt.word.modes(), n, wt)?;
            out.add_scaled(&part, &(vc * wc));
        }
    }
    Ok(out)
}

fn field_mode_on_term(
    table: &ActTable,
    word: &[Mode],
    n: i64,
    w: &ModuleVector,
) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero();
    for (wt, wc) in w.iter() {
        let part = word_field_mode(table, word, n, wt)?;
        out.add_scaled(&part, wc);
    }
    Ok(out)
}

fn word_field_mode(
    table: &ActTable,
    word: &[Mode],
    n: i64,
    w: &Term,
) -> Result<ModuleVector> {
    let spec = table.spec();
    let Some((head, tail)) = word.split_first() else {
        // Y(1, x) = id
        return Ok(if n == -1 {
            ModuleVector::single(w.clone(), Scalar::one())
        } else {
            ModuleVector::zero()
        });
    };
    let (g, p) = match head {
        Mode::H(g, idx) => {
            debug_assert!(*idx <= -1, "vacuum words have negative indices");
            (*g, -idx)
        }
        Mode::K => unreachable!("K cannot appear in a PBW word"),
    };
    let w_cell = spec.term_cell(w);
    let w_vec = ModuleVector::single(w.clone(), Scalar::one());

    // single-mode words collapse: (g(-p)1)_n = C(p-n-2, p-1) g(n-p+1)
    if tail.is_empty() {
        let k = n - p + 1;
        let coeff = binomial(-k - 1, (p - 1) as u32);
        if coeff.is_zero() {
            return Ok(ModuleVector::zero());
        }
        let moved = table.apply(Mode::H(g, k), &w_vec)?;
        return Ok(moved.scale(&coeff));
    }

    let mut out = ModuleVector::zero();

    // annihilation side: (u)_{n-k-p} (g(k) w) for k >= 0
    if let Some(k_max) = lie_truncation(spec, g, w_cell) {
        for k in 0..=k_max {
            let coeff = binomial(-k - 1, (p - 1) as u32);
            if coeff.is_zero() {
                continue;
            }
            let moved = table.apply(Mode::H(g, k), &w_vec)?;
            if moved.is_zero() {
                continue;
            }
            let inner = field_mode_on_term(table, tail, n - k - p, &moved)?;
            out.add_scaled(&inner, &coeff);
        }
    }

    // creation side: g(k) (u)_{n-k-p} w for k <= -1; (u)_j w dies for
    // j above the tail's truncation bound
    if let Some(j_max) = mode_truncation(spec, tail, w_cell) {
        let k_low = n - p - j_max;
        let mut k = -1;
        while k >= k_low {
            let coeff = binomial(-k - 1, (p - 1) as u32);
            if !coeff.is_zero() {
                let inner = word_field_mode(table, tail, n - k - p, w)?;
                if !inner.is_zero() {
                    let moved = table.apply(Mode::H(g, k), &inner)?;
                    out.add_scaled(&moved, &coeff);
                }
            }
            k -= 1;
        }
    }
    Ok(out)
}

/// L(n) = the (n+1)-st field mode of the conformal vector.
pub fn virasoro(spec: &ModuleSpec, n: i64, w: &ModuleVector) -> Result<ModuleVector> {
    field_mode(spec, &omega(), n + 1, w)
}

/// A fixed vacuum vector with memoized field-mode applications, for check
/// harnesses that hit the same (mode index, basis element) pairs over and
/// over.
pub struct FieldOp {
    table: Arc<ActTable>,
    v: ModuleVector,
    memo: RwLock<HashMap<(i64, Term), ModuleVector>>,
}

impl FieldOp {
    pub fn new(spec: &ModuleSpec, v: ModuleVector) -> Result<Self> {
        FieldOp::with_table(Arc::new(ActTable::new(spec)), v)
    }

    /// Shares a straightening table with other operators over the same
    /// family.
    pub fn with_table(table: Arc<ActTable>, v: ModuleVector) -> Result<Self> {
        require_vacuum_vector(&v)?;
        Ok(FieldOp {
            table,
            v,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn vector(&self) -> &ModuleVector {
        &self.v
    }

    pub fn apply(&self, n: i64, w: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (wt, wc) in w.iter() {
            let key = (n, wt.clone());
            let hit = self.memo.read().unwrap().get(&key).cloned();
            let part = match hit {
                Some(p) => p,
                None => {
                    let single = ModuleVector::single(wt.clone(), Scalar::one());
                    let p = field_mode_with(&self.table, &self.v, n, &single)?;
                    self.memo.write().unwrap().insert(key, p.clone());
                    p
                }
            };
            out.add_scaled(&part, wc);
        }
        Ok(out)
    }
}

/// Outcome of an exact identity check over a finite window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub relation: String,
    pub window: String,
    pub ok: bool,
    pub counterexample: Option<String>,
}

impl CheckReport {
    fn pass(relation: impl Into<String>, window: impl Into<String>) -> Self {
        CheckReport {
            relation: relation.into(),
            window: window.into(),
            ok: true,
            counterexample: None,
        }
    }

    fn fail(
        relation: impl Into<String>,
        window: impl Into<String>,
        counterexample: String,
    ) -> Self {
        CheckReport {
            relation: relation.into(),
            window: window.into(),
            ok: false,
            counterexample: Some(counterexample),
        }
    }
}

/// Verifies the commutator consequence of the Jacobi identity,
///   [u_p, v_q] w = sum_{i >= 0} C(p, i) (u_i v)_{p+q-i} w,
/// on every basis vector of the cell. Returns the first counterexample.
pub fn borcherds_check(
    engine: &Engine,
    spec: &ModuleSpec,
    u: &ModuleVector,
    v: &ModuleVector,
    p: i64,
    q: i64,
    cell: GradedCell,
) -> Result<CheckReport> {
    let relation = format!("[u_{p}, v_{q}] = sum_i C({p},i) (u_i v)_({p}+{q}-i)");
    let window = format!("cell ({}, {})", cell.degree, cell.charge);
    let table = Arc::new(ActTable::new(spec));
    let u_op = FieldOp::with_table(Arc::clone(&table), u.clone())?;
    let v_op = FieldOp::with_table(Arc::clone(&table), v.clone())?;

    // i-range: u_i v vanishes once i exceeds the vacuum truncation bound
    let vacuum = ModuleSpec::vacuum0();
    let mut products: Vec<(i64, ModuleVector)> = Vec::new();
    let mut i_max: i64 = -1;
    for (vt, _) in v.iter() {
        let c = vacuum.term_cell(vt);
        for (ut, _) in u.iter() {
            if let Some(j) = mode_truncation(&vacuum, ut.word.modes(), c) {
                i_max = i_max.max(j);
            }
        }
    }
    for i in 0..=i_max {
        let prod = field_mode(&vacuum, u, i, v)?;
        if !prod.is_zero() {
            products.push((i, prod));
        }
    }

    for w_term in engine.graded_basis(spec, cell)?.iter() {
        let w = ModuleVector::single(w_term.clone(), Scalar::one());
        let lhs = u_op
            .apply(p, &v_op.apply(q, &w)?)?
            .sub(&v_op.apply(q, &u_op.apply(p, &w)?)?);
        let mut rhs = ModuleVector::zero();
        for (i, prod) in &products {
            let coeff = binomial(p, *i as u32);
            if coeff.is_zero() {
                continue;
            }
            let part = field_mode_with(&table, prod, p + q - i, &w)?;
            rhs.add_scaled(&part, &coeff);
        }
        if lhs != rhs {
            return Ok(CheckReport::fail(
                relation,
                window,
                format!("w = {w_term}: lhs = {lhs}, rhs = {rhs}"),
            ));
        }
    }
    Ok(CheckReport::pass(relation, window))
}

/// Verifies the Virasoro relation
///   [L(m), L(n)] = (m - n) L(m+n) + delta_{m+n,0} (m^3 - m)/12 * 4
/// on every basis vector of the window, for all m, n in
/// [-index_bound, index_bound]. Central charge 4, exactly.
pub fn virasoro_check(
    engine: &Engine,
    spec: &ModuleSpec,
    window: Window,
    index_bound: i64,
) -> Result<CheckReport> {
    let relation = "[L(m), L(n)] = (m-n) L(m+n) + d_{m+n,0} (m^3-m)/3".to_string();
    let window_desc = format!(
        "degree <= {}, charge in [{}, {}], m,n in [-{index_bound}, {index_bound}]",
        window.max_degree, window.charge_min, window.charge_max
    );
    let om = FieldOp::new(spec, omega())?;
    let mut jobs = Vec::new();
    for cell in window_cells(spec, window) {
        for w_term in engine.graded_basis(spec, cell)?.iter() {
            jobs.push(w_term.clone());
        }
    }
    let failure = jobs
        .par_iter()
        .map(|w_term| -> Result<Option<String>> {
            let w = ModuleVector::single(w_term.clone(), Scalar::one());
            for m in -index_bound..=index_bound {
                // both sides are antisymmetric in (m, n) by construction,
                // so m < n covers the window exactly
                for n in (m + 1)..=index_bound {
                    let lhs = om
                        .apply(m + 1, &om.apply(n + 1, &w)?)?
                        .sub(&om.apply(n + 1, &om.apply(m + 1, &w)?)?);
                    let mut rhs = om.apply(m + n + 1, &w)?.scale(&Scalar::from_int(m - n));
                    if m + n == 0 {
                        rhs.add_scaled(&w, &Scalar::new(m * m * m - m, 3));
                    }
                    if lhs != rhs {
                        return Ok(Some(format!(
                            "m = {m}, n = {n}, w = {w_term}: lhs = {lhs}, rhs = {rhs}"
                        )));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(match failure {
        Some(ce) => CheckReport::fail(relation, window_desc, ce),
        None => CheckReport::pass(relation, window_desc),
    })
}

/// Verifies [h(n), L(m)] = n h(m+n) for all four generators on every
/// basis vector of the window, m, n in [-index_bound, index_bound].
pub fn mixed_commutator_check(
    engine: &Engine,
    spec: &ModuleSpec,
    window: Window,
    index_bound: i64,
) -> Result<CheckReport> {
    let relation = "[h(n), L(m)] = n h(m+n)".to_string();
    let window_desc = format!(
        "degree <= {}, charge in [{}, {}], m,n in [-{index_bound}, {index_bound}]",
        window.max_degree, window.charge_min, window.charge_max
    );
    let table = Arc::new(ActTable::new(spec));
    let om = FieldOp::with_table(Arc::clone(&table), omega())?;
    let mut jobs = Vec::new();
    for cell in window_cells(spec, window) {
        for w_term in engine.graded_basis(spec, cell)?.iter() {
            jobs.push(w_term.clone());
        }
    }
    let failure = jobs
        .par_iter()
        .map(|w_term| -> Result<Option<String>> {
            let w = ModuleVector::single(w_term.clone(), Scalar::one());
            for g in Gen::ALL {
                for n in -index_bound..=index_bound {
                    for m in -index_bound..=index_bound {
                        let hn_lm = table.apply(Mode::H(g, n), &om.apply(m + 1, &w)?)?;
                        let lm_hn = om.apply(m + 1, &table.apply(Mode::H(g, n), &w)?)?;
                        let lhs = hn_lm.sub(&lm_hn);
                        let rhs =
                            table.apply(Mode::H(g, m + n), &w)?.scale(&Scalar::from_int(n));
                        if lhs != rhs {
                            return Ok(Some(format!(
                                "h = {}, n = {n}, m = {m}, w = {w_term}: lhs = {lhs}, rhs = {rhs}",
                                g.letter()
                            )));
                        }
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(match failure {
        Some(ce) => CheckReport::fail(relation, window_desc, ce),
        None => CheckReport::pass(relation, window_desc),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::act;

    fn vac() -> ModuleSpec {
        ModuleSpec::vacuum0()
    }

    fn single(word: Vec<Mode>) -> ModuleVector {
        ModuleVector::single(
            Term::new(PbwWord::new(word).unwrap(), BaseLabel::Hw),
            Scalar::one(),
        )
    }

    fn one() -> ModuleVector {
        ModuleVector::base_vector(BaseLabel::Hw)
    }

    #[test]
    fn single_mode_words_recover_the_lie_action() {
        let spec = vac();
        for g in Gen::ALL {
            for n in -3..=3 {
                let v = single(vec![Mode::H(g, -1)]);
                let w = single(vec![Mode::a(-1), Mode::b(-2)]);
                let direct = act(&spec, Mode::H(g, n), &w).unwrap();
                let via_field = field_mode(&spec, &v, n, &w).unwrap();
                assert_eq!(direct, via_field, "h = {g:?}, n = {n}");
            }
        }
    }

    #[test]
    fn vacuum_weights() {
        let spec = vac();
        // L(0) is zero on the vacuum and degree on degree-d words
        assert!(virasoro(&spec, 0, &one()).unwrap().is_zero());
        let w = single(vec![Mode::c(-2)]);
        assert_eq!(virasoro(&spec, 0, &w).unwrap(), w.scale(&Scalar::from_int(2)));
        let w = single(vec![Mode::a(-1)]);
        assert_eq!(virasoro(&spec, 0, &w).unwrap(), w);
    }

    #[test]
    fn translation_kills_vacuum_and_shifts_modes() {
        let spec = vac();
        assert!(virasoro(&spec, -1, &one()).unwrap().is_zero());
        let got = virasoro(&spec, -1, &single(vec![Mode::a(-1)])).unwrap();
        assert_eq!(got, single(vec![Mode::a(-2)]));
    }

    #[test]
    fn central_charge_is_four() {
        // L(2) omega = (c/2) 1 = 2.1, i.e. omega_3 omega = 2.1
        let spec = vac();
        let got = field_mode(&spec, &omega(), 3, &omega()).unwrap();
        assert_eq!(got, one().scale(&Scalar::from_int(2)));

        // [L(2), L(-2)] 1 = 2.1
        let l22 = virasoro(&spec, 2, &virasoro(&spec, -2, &one()).unwrap()).unwrap();
        let l22b = virasoro(&spec, -2, &virasoro(&spec, 2, &one()).unwrap()).unwrap();
        assert_eq!(l22.sub(&l22b), one().scale(&Scalar::from_int(2)));
    }

    #[test]
    fn omega_field_on_vacuum_unit() {
        let spec = vac();
        // L(-1) 1 = 0 is the n = 0 field mode of omega
        assert!(field_mode(&spec, &omega(), 0, &one()).unwrap().is_zero());
        // L(-2) 1 = omega itself
        let got = field_mode(&spec, &omega(), -1, &one()).unwrap();
        assert_eq!(got, omega());
    }

    #[test]
    fn virasoro_window_smoke() {
        let engine = Engine::default();
        let spec = vac();
        let report = virasoro_check(&engine, &spec, Window::new(2, -2, 2), 2).unwrap();
        assert!(report.ok, "{:?}", report.counterexample);
    }

    #[test]
    fn borcherds_on_generators() {
        let engine = Engine::default();
        let spec = vac();
        let u = single(vec![Mode::a(-1)]);
        let v = single(vec![Mode::b(-1)]);
        let report =
            borcherds_check(&engine, &spec, &u, &v, 1, -1, GradedCell::new(0, 0)).unwrap();
        assert!(report.ok, "{:?}", report.counterexample);

        let c1 = single(vec![Mode::c(-1)]);
        for p in -2..=2 {
            for q in -2..=2 {
                let report =
                    borcherds_check(&engine, &spec, &c1, &c1, p, q, GradedCell::new(2, 1))
                        .unwrap();
                assert!(report.ok, "{:?}", report.counterexample);
            }
        }
    }

    #[test]
    fn mixed_commutator_with_omega() {
        // [h(n), L(m)] = n h(m+n) on a small sample
        let engine = Engine::default();
        let spec = vac();
        let om = FieldOp::new(&spec, omega()).unwrap();
        for g in Gen::ALL {
            let h1 = single(vec![Mode::H(g, -1)]);
            let h_op = FieldOp::new(&spec, h1).unwrap();
            for n in -2..=2 {
                for m in -2..=2 {
                    for w_term in engine
                        .graded_basis(&spec, GradedCell::new(2, 0))
                        .unwrap()
                        .iter()
                    {
                        let w = ModuleVector::single(w_term.clone(), Scalar::one());
                        // h(n) = (h(-1)1)_n and L(m) = omega_{m+1}
                        let lhs = h_op
                            .apply(n, &om.apply(m + 1, &w).unwrap())
                            .unwrap()
                            .sub(&om.apply(m + 1, &h_op.apply(n, &w).unwrap()).unwrap());
                        let rhs = act(&spec, Mode::H(g, m + n), &w)
                            .unwrap()
                            .scale(&Scalar::from_int(n));
                        assert_eq!(lhs, rhs, "h = {g:?}, n = {n}, m = {m}");
                    }
                }
            }
        }
    }
}
