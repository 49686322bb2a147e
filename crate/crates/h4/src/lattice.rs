//! The lattice layer over L = Zc + Zd: the 2-cocycle, the exponential
//! operators E+/E-, the spectral-flow twist Delta(alpha, z), flowed module
//! actions, flow profiles against the predicted target family, and the
//! extension vertex operators on C[L] (x) W.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Gen, Mode, ModeCombination};
use crate::character::{window_cells, CharacterTable, CompareOutcome, Window};
use crate::error::{EngineError, Result};
use crate::linalg;
use crate::modules::{
    act_comb, BaseLabel, Engine, GradedCell, ModuleSpec, ModuleVector, Term,
};
use crate::scalar::Scalar;
use crate::voa::field_mode;

/// An element m1 c + m2 d of the lattice L = Zc + Zd. The form is
/// (alpha, beta) = m1 n2 + m2 n1, which is even on the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticeElement {
    pub m1: i64,
    pub m2: i64,
}

impl LatticeElement {
    pub fn new(m1: i64, m2: i64) -> Self {
        LatticeElement { m1, m2 }
    }

    pub fn c() -> Self {
        LatticeElement::new(1, 0)
    }

    pub fn d() -> Self {
        LatticeElement::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.m1 == 0 && self.m2 == 0
    }

    pub fn neg(&self) -> Self {
        LatticeElement::new(-self.m1, -self.m2)
    }

    pub fn add(&self, other: &LatticeElement) -> Self {
        LatticeElement::new(self.m1 + other.m1, self.m2 + other.m2)
    }

    pub fn pairing(&self, other: &LatticeElement) -> i64 {
        self.m1 * other.m2 + self.m2 * other.m1
    }

    /// The mode alpha(n) = m1 c(n) + m2 d(n) as a combination.
    pub fn mode(&self, n: i64) -> ModeCombination {
        let mut out = ModeCombination::zero();
        out.add_term(Mode::c(n), Scalar::from_int(self.m1));
        out.add_term(Mode::d(n), Scalar::from_int(self.m2));
        out
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}c+{}d", self.m1, self.m2)
    }
}

/// The bimultiplicative 2-cocycle fixed by eps(c,c) = eps(d,d) = 1,
/// eps(c,d) = -1, eps(d,c) = +1: eps(alpha, beta) = (-1)^(m1 n2).
pub fn cocycle(alpha: &LatticeElement, beta: &LatticeElement) -> i64 {
    if (alpha.m1 * beta.m2) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A Laurent-polynomial-valued vector: finitely many z-exponents, each
/// carrying a module vector. Keys are true z-exponents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentVector(BTreeMap<i64, ModuleVector>);

impl LaurentVector {
    pub fn zero() -> Self {
        LaurentVector(BTreeMap::new())
    }

    pub fn single(exponent: i64, v: ModuleVector) -> Self {
        let mut out = LaurentVector::zero();
        out.add(exponent, v);
        out
    }

    pub fn add(&mut self, exponent: i64, v: ModuleVector) {
        if v.is_zero() {
            return;
        }
        let slot = self.0.entry(exponent).or_default();
        let sum = slot.add(&v);
        if sum.is_zero() {
            self.0.remove(&exponent);
        } else {
            *slot = sum;
        }
    }

    pub fn component(&self, exponent: i64) -> ModuleVector {
        self.0.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &ModuleVector)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpSign {
    Plus,
    Minus,
}

/// E+-(alpha, z) v = exp(sum_{n>=1} alpha(+-n)/(+-n) z^(-+n)) v.
///
/// The raising-side exponential is globally finite (alpha(n), n >= 1 are
/// locally nilpotent) and ignores the window; the lowering side is an
/// infinite series and needs an exponent window [0 ..= hi].
pub fn exp_operator(
    spec: &ModuleSpec,
    sign: ExpSign,
    alpha: &LatticeElement,
    v: &ModuleVector,
    window: Option<i64>,
) -> Result<LaurentVector> {
    match sign {
        ExpSign::Plus => exp_plus(spec, alpha, v),
        ExpSign::Minus => {
            let hi = window.ok_or(EngineError::WindowRequired)?;
            exp_minus(spec, alpha, v, hi)
        }
    }
}

fn exp_plus(spec: &ModuleSpec, alpha: &LatticeElement, v: &ModuleVector) -> Result<LaurentVector> {
    // X = sum_{n>=1} alpha(n)/n z^(-n); exp(X) terminates because each
    // application strictly lowers the degree toward the graded floor
    let apply_x = |lv: &LaurentVector| -> Result<LaurentVector> {
        let mut out = LaurentVector::zero();
        for (e, vec) in lv.iter() {
            for (term, coeff) in vec.iter() {
                let cell = spec.term_cell(term);
                let n_max = [Gen::C, Gen::D]
                    .iter()
                    .filter_map(|g| {
                        spec.cell_floor(cell.charge)
                            .map(|f| cell.degree + spec.index_shift(*g) - f)
                    })
                    .max()
                    .unwrap_or(-1);
                let single = ModuleVector::single(term.clone(), coeff.clone());
                for n in 1..=n_max {
                    let moved = act_comb(spec, &alpha.mode(n), &single)?;
                    if !moved.is_zero() {
                        out.add(e - n, moved.scale(&Scalar::new(1, n)));
                    }
                }
            }
        }
        Ok(out)
    };
    let mut out = LaurentVector::single(0, v.clone());
    let mut term = LaurentVector::single(0, v.clone());
    let mut k: i64 = 1;
    loop {
        let next = apply_x(&term)?;
        if next.is_zero() {
            break;
        }
        term = LaurentVector::zero();
        for (e, vec) in next.iter() {
            term.add(*e, vec.scale(&Scalar::new(1, k)));
        }
        for (e, vec) in term.iter() {
            out.add(*e, vec.clone());
        }
        k += 1;
    }
    Ok(out)
}

fn exp_minus(
    spec: &ModuleSpec,
    alpha: &LatticeElement,
    v: &ModuleVector,
    hi: i64,
) -> Result<LaurentVector> {
    // X = -sum_{n>=1} alpha(-n)/n z^n, truncated past exponent hi
    let apply_x = |lv: &LaurentVector| -> Result<LaurentVector> {
        let mut out = LaurentVector::zero();
        for (e, vec) in lv.iter() {
            for n in 1..=(hi - e) {
                let moved = act_comb(spec, &alpha.mode(-n), vec)?;
                if !moved.is_zero() {
                    out.add(e + n, moved.scale(&Scalar::new(-1, n)));
                }
            }
        }
        Ok(out)
    };
    let mut out = LaurentVector::single(0, v.clone());
    let mut term = LaurentVector::single(0, v.clone());
    let mut k: i64 = 1;
    loop {
        let next = apply_x(&term)?;
        if next.is_zero() {
            break;
        }
        term = LaurentVector::zero();
        for (e, vec) in next.iter() {
            term.add(*e, vec.scale(&Scalar::new(1, k)));
        }
        for (e, vec) in term.iter() {
            out.add(*e, vec.clone());
        }
        k += 1;
    }
    Ok(out)
}

/// Delta(alpha, z) v = z^(alpha(0)) E+(-alpha, -z) v on the vacuum module:
/// the exponent shift is the integer alpha(0)-eigenvalue per charge
/// component, and substituting -z flips the sign of each odd-exponent
/// correction.
pub fn delta_apply(alpha: &LatticeElement, v: &ModuleVector) -> Result<LaurentVector> {
    let vacuum = ModuleSpec::vacuum0();
    let mut out = LaurentVector::zero();
    for (term, coeff) in v.iter() {
        if term.base != BaseLabel::Hw {
            return Err(EngineError::Parse(
                "spectral flow twists vacuum vectors".into(),
            ));
        }
        let charge = vacuum.term_cell(term).charge;
        let eig = alpha.m2 * charge; // c(0) acts as 0 on the vacuum module
        let single = ModuleVector::single(term.clone(), coeff.clone());
        let plus = exp_plus(&vacuum, &alpha.neg(), &single)?;
        for (e, vec) in plus.iter() {
            // e <= 0; the (-z) substitution contributes (-1)^(-e)
            let sign = if (-e) % 2 == 0 {
                Scalar::one()
            } else {
                Scalar::from_int(-1)
            };
            out.add(e + eig, vec.scale(&sign));
        }
    }
    Ok(out)
}

/// The flowed field mode u_(alpha, n) w: expand Delta(alpha, z) u into
/// exponent components and sum the shifted field modes.
pub fn flowed_mode(
    spec: &ModuleSpec,
    alpha: &LatticeElement,
    u: &ModuleVector,
    n: i64,
    w: &ModuleVector,
) -> Result<ModuleVector> {
    let twisted = delta_apply(alpha, u)?;
    let mut out = ModuleVector::zero();
    for (e, u_e) in twisted.iter() {
        let part = field_mode(spec, u_e, n + e, w)?;
        out.add_assign(&part);
    }
    Ok(out)
}

/// The family a flowed module is predicted to be isomorphic to.
pub fn flow_target(spec: &ModuleSpec, alpha: &LatticeElement) -> Result<ModuleSpec> {
    let m1 = Scalar::from_int(alpha.m1);
    Ok(match spec {
        ModuleSpec::Vacuum { d0 } => {
            if alpha.m2 == 0 {
                ModuleSpec::Vacuum { d0: d0 + &m1 }
            } else {
                ModuleSpec::Gv0 {
                    c0: alpha.m2,
                    d0: d0 + &m1,
                }
            }
        }
        ModuleSpec::Gv0 { c0, d0 } => {
            if c0 + alpha.m2 == 0 {
                ModuleSpec::Vacuum { d0: d0 + &m1 }
            } else {
                ModuleSpec::Gv0 {
                    c0: c0 + alpha.m2,
                    d0: d0 + &m1,
                }
            }
        }
        ModuleSpec::Gv1 { m, c0, d0 } => ModuleSpec::Gv1 {
            m: m + alpha.m2,
            c0: c0 + &Scalar::from_int(alpha.m2),
            d0: d0 + &m1,
        },
        ModuleSpec::Third { lambda, mu, nu, m } => ModuleSpec::Third {
            lambda: lambda + &m1,
            mu: mu.clone(),
            nu: nu.clone(),
            m: m + alpha.m2,
        },
        _ => {
            return Err(EngineError::Unsupported(
                "spectral flow applies to the affine families".into(),
            ))
        }
    })
}

/// Flowed annihilation thresholds and eigenvalues on the distinguished
/// generator, plus the bi-graded character of the flowed action, all
/// compared against the predicted target family.
#[derive(Debug, Clone)]
pub struct FlowProfile {
    pub alpha: LatticeElement,
    pub target: ModuleSpec,
    /// Smallest index t with flowed a(n) generator = 0 for all scanned
    /// n >= t, and likewise for b.
    pub a_threshold: i64,
    pub b_threshold: i64,
    pub a_threshold_expected: i64,
    pub b_threshold_expected: i64,
    pub c0: Scalar,
    pub d0: Scalar,
    pub c0_expected: Scalar,
    pub d0_expected: Scalar,
    pub flowed_table: CharacterTable,
    pub target_table: CharacterTable,
    pub character_outcome: CompareOutcome,
}

impl FlowProfile {
    pub fn matches(&self) -> bool {
        self.a_threshold == self.a_threshold_expected
            && self.b_threshold == self.b_threshold_expected
            && self.c0 == self.c0_expected
            && self.d0 == self.d0_expected
            && self.character_outcome == CompareOutcome::Equal
    }
}

fn generator_base(spec: &ModuleSpec) -> BaseLabel {
    match spec {
        ModuleSpec::Third { .. } | ModuleSpec::H4Intermediate { .. } => BaseLabel::Idx(0),
        _ => BaseLabel::Hw,
    }
}

fn h_vector(g: Gen) -> ModuleVector {
    ModuleVector::single(
        Term::new(
            crate::modules::PbwWord::new(vec![Mode::H(g, -1)]).unwrap(),
            BaseLabel::Hw,
        ),
        Scalar::one(),
    )
}

/// Expected first annihilating index of the flowed g-modes on the target
/// generator (above the policy steps of the intermediate-series family).
fn expected_threshold(target: &ModuleSpec, g: Gen) -> i64 {
    match (target, g) {
        (ModuleSpec::Vacuum { .. }, _) => 0,
        (ModuleSpec::Gv0 { c0, .. }, Gen::A) => -c0,
        (ModuleSpec::Gv0 { c0, .. }, Gen::B) => *c0,
        (ModuleSpec::Gv1 { m, .. }, Gen::A) => -m,
        (ModuleSpec::Gv1 { m, .. }, Gen::B) => m + 1,
        (ModuleSpec::Third { m, .. }, Gen::A) => -m + 1,
        (ModuleSpec::Third { m, .. }, Gen::B) => m + 1,
        _ => unreachable!(),
    }
}

pub fn flow_profile(
    engine: &Engine,
    spec: &ModuleSpec,
    alpha: &LatticeElement,
    window: Window,
) -> Result<FlowProfile> {
    spec.validate()?;
    if !spec.is_affine() {
        return Err(EngineError::Unsupported(
            "spectral flow applies to the affine families".into(),
        ));
    }
    let target = flow_target(spec, alpha)?;
    let gen = ModuleVector::base_vector(generator_base(spec));

    // measured thresholds: scan around the prediction and find the first
    // index from which everything scanned vanishes
    let scan = 3;
    let measure = |g: Gen| -> Result<i64> {
        let expected = expected_threshold(&target, g);
        let mut last_nonzero = expected - scan - 1;
        for n in (expected - scan)..=(expected + scan) {
            let moved = flowed_mode(spec, alpha, &h_vector(g), n, &gen)?;
            if !moved.is_zero() {
                last_nonzero = n;
            }
        }
        Ok(last_nonzero + 1)
    };
    let a_threshold = measure(Gen::A)?;
    let b_threshold = measure(Gen::B)?;

    // flowed zero-mode eigenvalues on the generator
    let eig_of = |g: Gen| -> Result<Scalar> {
        let moved = flowed_mode(spec, alpha, &h_vector(g), 0, &gen)?;
        let gen_term = gen.first().expect("generator term").0.clone();
        let s = moved.coeff(&gen_term);
        if moved != gen.scale(&s) {
            return Err(EngineError::NonIntegralEigenvalue(format!(
                "flowed {}-zero-mode does not act diagonally on the generator",
                g.letter()
            )));
        }
        Ok(s)
    };
    let c0 = eig_of(Gen::C)?;
    let d0 = eig_of(Gen::D)?;
    let c0_expected = target.c0_scalar();
    let d0_expected = target.d0_base(&generator_base(&target))?;

    // the flowed character: ranks of flowed target-shaped words applied
    // through the full Delta machinery
    let target_table = crate::character::character(engine, &target, window)?;
    let mut flowed_cells = BTreeMap::new();
    for cell in window_cells(&target, window) {
        let basis = engine.graded_basis(&target, cell)?;
        let mut vectors: Vec<ModuleVector> = Vec::new();
        for term in basis.iter() {
            let start = ModuleVector::base_vector(term.base);
            let mut cur = start;
            for mode in term.word.modes().iter().rev() {
                let Mode::H(g, k) = mode else { unreachable!() };
                cur = flowed_mode(spec, alpha, &h_vector(*g), *k, &cur)?;
                if cur.is_zero() {
                    break;
                }
            }
            if !cur.is_zero() {
                vectors.push(cur);
            }
        }
        let mut columns: BTreeMap<Term, usize> = BTreeMap::new();
        for v in &vectors {
            for (t, _) in v.iter() {
                let next = columns.len();
                columns.entry(t.clone()).or_insert(next);
            }
        }
        let rows: Vec<Vec<Scalar>> = vectors
            .iter()
            .map(|v| {
                let mut row = vec![Scalar::zero(); columns.len()];
                for (t, c) in v.iter() {
                    row[columns[t]] = c.clone();
                }
                row
            })
            .collect();
        flowed_cells.insert((cell.degree, cell.charge), linalg::rank(rows));
    }
    let flowed_table = CharacterTable {
        spec: spec.clone(),
        window,
        cells: flowed_cells,
    };
    let character_outcome = crate::character::compare_characters(&flowed_table, &target_table)?;

    Ok(FlowProfile {
        alpha: *alpha,
        target,
        a_threshold,
        b_threshold,
        a_threshold_expected: expected_threshold(
            &flow_target(spec, alpha)?,
            Gen::A,
        ),
        b_threshold_expected: expected_threshold(
            &flow_target(spec, alpha)?,
            Gen::B,
        ),
        c0,
        d0,
        c0_expected,
        d0_expected,
        flowed_table,
        target_table,
        character_outcome,
    })
}

/// A sum of lattice-group elements e^alpha tensored with module vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExtensionVector {
    pub components: BTreeMap<LatticeElement, ModuleVector>,
}

impl ExtensionVector {
    pub fn zero() -> Self {
        ExtensionVector::default()
    }

    pub fn single(alpha: LatticeElement, v: ModuleVector) -> Self {
        let mut out = ExtensionVector::zero();
        out.add(alpha, v);
        out
    }

    pub fn add(&mut self, alpha: LatticeElement, v: ModuleVector) {
        if v.is_zero() {
            return;
        }
        let slot = self.components.entry(alpha).or_default();
        let sum = slot.add(&v);
        if sum.is_zero() {
            self.components.remove(&alpha);
        } else {
            *slot = sum;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, alpha: &LatticeElement) -> ModuleVector {
        self.components.get(alpha).cloned().unwrap_or_default()
    }
}

/// The d(0)-eigenvalue of a cell: base reference value plus charge.
fn d0_eig_of_cell(spec: &ModuleSpec, cell: GradedCell) -> Scalar {
    let reference = match spec {
        ModuleSpec::Third { lambda, .. } | ModuleSpec::H4Intermediate { lambda, .. } => {
            lambda.clone()
        }
        ModuleSpec::Vacuum { d0 }
        | ModuleSpec::Gv0 { d0, .. }
        | ModuleSpec::Gv1 { d0, .. }
        | ModuleSpec::H4Verma { d0, .. } => d0.clone(),
        ModuleSpec::Quotient { .. } => unreachable!("extension acts on concrete families"),
    };
    reference + Scalar::from_int(cell.charge)
}

/// Integer alpha(0)-eigenvalue on a cell, or the integrality error.
fn alpha0_eigenvalue(
    spec: &ModuleSpec,
    alpha: &LatticeElement,
    cell: GradedCell,
) -> Result<i64> {
    let eig = Scalar::from_int(alpha.m1) * spec.c0_scalar()
        + Scalar::from_int(alpha.m2) * d0_eig_of_cell(spec, cell);
    eig.to_i64().ok_or_else(|| {
        EngineError::NonIntegralEigenvalue(format!(
            "alpha(0) = {eig} on cell ({}, {})",
            cell.degree, cell.charge
        ))
    })
}

/// One mode of the extension vertex operator
///   Y(e^alpha (x) u, z)(e^beta (x) w)
///     = eps(alpha, beta) e^(alpha+beta) (x)
///       z^((alpha,beta)) E-(-alpha, z) Y(Delta(beta, z) u, z)
///       E+(-alpha, z) (-z)^(alpha(0)) w,
/// extracted at x^(-n-1). The lowering exponential is truncated to
/// exactly the exponents that can contribute.
pub fn extension_mode(
    spec: &ModuleSpec,
    alpha: &LatticeElement,
    u: &ModuleVector,
    n: i64,
    beta: &LatticeElement,
    w: &ModuleVector,
) -> Result<ExtensionVector> {
    if !spec.is_affine() {
        return Err(EngineError::Unsupported(
            "extension modes act on restricted level-1 families".into(),
        ));
    }
    let eps = Scalar::from_int(cocycle(alpha, beta));
    let pairing = alpha.pairing(beta);
    let neg_alpha = alpha.neg();

    // stage 1: (-z)^(alpha(0)) w, as exponent components with signs
    let mut staged = LaurentVector::zero();
    for (term, coeff) in w.iter() {
        let cell = spec.term_cell(term);
        let e = alpha0_eigenvalue(spec, alpha, cell)?;
        let sign = if e % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        };
        staged.add(
            e,
            ModuleVector::single(term.clone(), coeff * &sign),
        );
    }

    // stage 2: E+(-alpha, z)
    let mut plus_staged = LaurentVector::zero();
    for (e, vec) in staged.iter() {
        let expanded = exp_plus(spec, &neg_alpha, vec)?;
        for (e2, v2) in expanded.iter() {
            plus_staged.add(e + e2, v2.clone());
        }
    }

    // stage 3: Y(Delta(beta, z) u, z), then stage 4: E-(-alpha, z),
    // keeping only exponents that can hit z^(-n-1) overall
    let twisted = delta_apply(beta, u)?;
    let mut total = ModuleVector::zero();
    for (e_d, u_e) in twisted.iter() {
        for (e_x, x) in plus_staged.iter() {
            let j_lo = n + pairing + e_d + e_x;
            let mut j_hi = j_lo - 1;
            for (ut, _) in u_e.iter() {
                for (xt, _) in x.iter() {
                    if let Some(j) =
                        field_truncation(spec, ut.word.modes(), spec.term_cell(xt))
                    {
                        j_hi = j_hi.max(j);
                    }
                }
            }
            for j in j_lo..=j_hi {
                let y = field_mode(spec, u_e, j, x)?;
                if y.is_zero() {
                    continue;
                }
                let t = j - j_lo;
                let lowered = exp_minus(spec, &neg_alpha, &y, t)?;
                total.add_assign(&lowered.component(t));
            }
        }
    }
    Ok(ExtensionVector::single(
        alpha.add(beta),
        total.scale(&eps),
    ))
}

/// Largest field-mode index of a vacuum word that can act nontrivially on
/// a cell (re-exported from the field engine's truncation rule).
fn field_truncation(spec: &ModuleSpec, word: &[Mode], cell: GradedCell) -> Option<i64> {
    let weight: i64 = word
        .iter()
        .map(|m| match m {
            Mode::H(_, i) => -i,
            Mode::K => 0,
        })
        .sum();
    let charge: i64 = word
        .iter()
        .map(|m| match m {
            Mode::H(g, _) => g.charge(),
            Mode::K => 0,
        })
        .sum();
    let sigma: i64 = word
        .iter()
        .map(|m| match m {
            Mode::H(g, _) => spec.index_shift(*g),
            Mode::K => 0,
        })
        .sum();
    let floor = spec.cell_floor(cell.charge + charge)?;
    Some(weight - 1 + sigma + cell.degree - floor)
}

/// A module dressed with the extension action of C[L] (x) V(1,0) on
/// C[L] (x) W; construction checks that every alpha(0) has integer
/// eigenvalues.
#[derive(Debug, Clone)]
pub struct ExtensionHandle {
    spec: ModuleSpec,
}

impl ExtensionHandle {
    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn act(
        &self,
        alpha: &LatticeElement,
        u: &ModuleVector,
        n: i64,
        beta: &LatticeElement,
        w: &ModuleVector,
    ) -> Result<ExtensionVector> {
        extension_mode(&self.spec, alpha, u, n, beta, w)
    }
}

/// Builds the extension-module handle for a family, rejecting families
/// whose generator eigenvalues make some alpha(0) non-integral.
pub fn build_wl(spec: &ModuleSpec) -> Result<ExtensionHandle> {
    spec.validate()?;
    if !spec.is_affine() {
        return Err(EngineError::Unsupported(
            "extension modules are built over restricted level-1 families".into(),
        ));
    }
    let c0 = spec.c0_scalar();
    if !c0.is_integer() {
        return Err(EngineError::NonIntegralEigenvalue(format!(
            "c(0) acts as {c0} on the generator"
        )));
    }
    let d0 = d0_eig_of_cell(spec, GradedCell::new(0, 0));
    if !d0.is_integer() {
        return Err(EngineError::NonIntegralEigenvalue(format!(
            "d(0) acts as {d0} on the generator line"
        )));
    }
    Ok(ExtensionHandle { spec: spec.clone() })
}
