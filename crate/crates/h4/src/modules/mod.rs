//! Module families over the affine algebra: base-vector action policies,
//! PBW words, bi-graded cells, and the vectors that live in them.
//!
//! Every family fixes, per generator, which modes act freely (and index a
//! PBW basis), which annihilate the base, and which act by a policy
//! (eigenvalue or a step along an intermediate-series chain). All linear
//! algebra happens inside bi-graded cells (degree, charge); fixing the
//! charge is what keeps cells finite-dimensional.

mod act;
mod enumerate;
mod submodule;

pub use act::{act, act_comb, apply_word, ActTable};
pub use enumerate::Engine;
pub use submodule::{quotient_cell, submodule_cell};

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Gen, Mode};
use crate::error::{EngineError, Result};
use crate::scalar::Scalar;

/// A (degree, charge) cell of the bi-grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GradedCell {
    pub degree: i64,
    pub charge: i64,
}

impl GradedCell {
    pub fn new(degree: i64, charge: i64) -> Self {
        GradedCell { degree, charge }
    }
}

/// Label of a base vector: the distinguished generator of a highest-weight
/// family, or the n-th vector of an intermediate-series chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseLabel {
    Hw,
    Idx(i64),
}

impl fmt::Display for BaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseLabel::Hw => write!(f, "1"),
            BaseLabel::Idx(j) => write!(f, "v[{j}]"),
        }
    }
}

/// A PBW word: modes in the canonical order d < c < a < b, indices weakly
/// increasing within each generator. Stored sorted; repeated modes encode
/// powers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwWord(Vec<Mode>);

impl PbwWord {
    pub fn empty() -> Self {
        PbwWord(Vec::new())
    }

    /// Wraps a mode sequence, checking canonical order (and that K does
    /// not appear).
    pub fn new(modes: Vec<Mode>) -> Result<Self> {
        for w in modes.windows(2) {
            if w[0] > w[1] {
                return Err(EngineError::Parse(format!(
                    "word not in canonical order: {} after {}",
                    w[1], w[0]
                )));
            }
        }
        if modes.contains(&Mode::K) {
            return Err(EngineError::Parse("K cannot appear in a PBW word".into()));
        }
        Ok(PbwWord(modes))
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Charge contribution of the word alone: #a-modes - #b-modes.
    pub fn charge(&self) -> i64 {
        self.0
            .iter()
            .map(|m| match m {
                Mode::H(g, _) => g.charge(),
                Mode::K => 0,
            })
            .sum()
    }

    fn prepended(&self, x: Mode) -> PbwWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(x);
        v.extend_from_slice(&self.0);
        PbwWord(v)
    }
}

impl fmt::Display for PbwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// One basis element of a module: a PBW word applied to a base vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub word: PbwWord,
    pub base: BaseLabel,
}

impl Term {
    pub fn new(word: PbwWord, base: BaseLabel) -> Self {
        Term { word, base }
    }

    pub fn base_only(base: BaseLabel) -> Self {
        Term {
            word: PbwWord::empty(),
            base,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{} {}", self.word, self.base)
        }
    }
}

/// A finite rational-linear combination of basis elements of one module.
/// No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ModuleVector {
    terms: BTreeMap<Term, Scalar>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        ModuleVector::default()
    }

    pub fn single(term: Term, coeff: Scalar) -> Self {
        let mut v = ModuleVector::zero();
        v.add_term(term, coeff);
        v
    }

    /// The base vector itself (empty word).
    pub fn base_vector(base: BaseLabel) -> Self {
        ModuleVector::single(Term::base_only(base), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, term: Term, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(term.clone()).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&term);
        }
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &ModuleVector) {
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &ModuleVector, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        for (t, c) in &other.terms {
            self.add_term(t.clone(), c * s);
        }
    }

    pub fn scale(&self, s: &Scalar) -> ModuleVector {
        let mut out = ModuleVector::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn neg(&self) -> ModuleVector {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, term: &Term) -> Scalar {
        self.terms.get(term).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn first(&self) -> Option<(&Term, &Scalar)> {
        self.terms.iter().next()
    }

    /// Rescales so the lexicographically first coefficient is 1.
    pub fn normalized(&self) -> ModuleVector {
        match self.first() {
            None => ModuleVector::zero(),
            Some((_, c)) => self.scale(&c.inv()),
        }
    }

    /// The common cell of all terms, or `None` for the zero vector.
    /// Mixed cells are an error.
    pub fn cell(&self, spec: &ModuleSpec) -> Result<Option<GradedCell>> {
        let mut found: Option<GradedCell> = None;
        for (term, _) in self.iter() {
            let cell = spec.term_cell(term);
            match found {
                None => found = Some(cell),
                Some(c) if c == cell => {}
                Some(_) => return Err(EngineError::NotHomogeneous),
            }
        }
        Ok(found)
    }
}

impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*{t}")?;
        }
        Ok(())
    }
}

/// Tagged description of a module family, level fixed at 1.
///
/// `H4Verma` and `H4Intermediate` are modules of the finite algebra
/// (index-0 modes only); the rest are induced modules of the affine
/// algebra. `Gv0` is the generalized Verma family with epsilon = 0 and
/// integer c(0)-eigenvalue; `Gv1` the epsilon = 1 family; `Third` the
/// family induced from an intermediate-series base.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModuleSpec {
    H4Verma {
        c0: Scalar,
        d0: Scalar,
    },
    H4Intermediate {
        lambda: Scalar,
        mu: Scalar,
        nu: Scalar,
    },
    Vacuum {
        d0: Scalar,
    },
    Gv0 {
        c0: i64,
        d0: Scalar,
    },
    Gv1 {
        m: i64,
        c0: Scalar,
        d0: Scalar,
    },
    Third {
        lambda: Scalar,
        mu: Scalar,
        nu: Scalar,
        m: i64,
    },
    Quotient {
        inner: Box<ModuleSpec>,
        generators: Vec<ModuleVector>,
    },
}

impl ModuleSpec {
    pub fn vacuum0() -> Self {
        ModuleSpec::Vacuum { d0: Scalar::zero() }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ModuleSpec::Third { lambda, mu, nu, .. } => {
                if mu.is_zero() {
                    return Err(EngineError::InvalidBase(
                        "intermediate-series base needs mu != 0".into(),
                    ));
                }
                if (lambda + nu).is_integer() {
                    return Err(EngineError::InvalidBase(
                        "intermediate-series base needs lambda + nu not an integer".into(),
                    ));
                }
                Ok(())
            }
            ModuleSpec::Quotient { inner, generators } => {
                inner.validate()?;
                for g in generators {
                    g.cell(inner)?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// True for the affine families induced from a one-dimensional base.
    pub fn is_hw_family(&self) -> bool {
        matches!(
            self,
            ModuleSpec::Vacuum { .. } | ModuleSpec::Gv0 { .. } | ModuleSpec::Gv1 { .. }
        )
    }

    pub fn is_finite_family(&self) -> bool {
        matches!(
            self,
            ModuleSpec::H4Verma { .. } | ModuleSpec::H4Intermediate { .. }
        )
    }

    /// True for families that are restricted level-1 modules of the affine
    /// algebra (and hence carry vertex-operator field actions).
    pub fn is_affine(&self) -> bool {
        matches!(
            self,
            ModuleSpec::Vacuum { .. }
                | ModuleSpec::Gv0 { .. }
                | ModuleSpec::Gv1 { .. }
                | ModuleSpec::Third { .. }
        )
    }

    pub fn base_valid(&self, base: &BaseLabel) -> bool {
        match self {
            ModuleSpec::H4Intermediate { .. } | ModuleSpec::Third { .. } => {
                matches!(base, BaseLabel::Idx(_))
            }
            ModuleSpec::Quotient { inner, .. } => inner.base_valid(base),
            _ => matches!(base, BaseLabel::Hw),
        }
    }

    /// Annihilation thresholds: g(n) kills the base for n >= threshold(g),
    /// leaving out the index-0 eigen/policy entries, which are handled by
    /// `base_act`. Only meaningful for the affine families.
    fn threshold(&self, g: Gen) -> i64 {
        match (self, g) {
            (ModuleSpec::Vacuum { .. }, Gen::A) => 0,
            (ModuleSpec::Vacuum { .. }, Gen::B) => 0,
            (ModuleSpec::Gv0 { c0, .. }, Gen::A) => -c0,
            (ModuleSpec::Gv0 { c0, .. }, Gen::B) => *c0,
            (ModuleSpec::Gv1 { m, .. }, Gen::A) => -m,
            (ModuleSpec::Gv1 { m, .. }, Gen::B) => m + 1,
            (ModuleSpec::Third { m, .. }, Gen::A) => -m + 1,
            (ModuleSpec::Third { m, .. }, Gen::B) => m + 1,
            (_, Gen::C) | (_, Gen::D) => 1,
            _ => unreachable!("threshold on non-affine family"),
        }
    }

    /// Index-0-like policy modes of the intermediate-series family: a(-m)
    /// and b(m) step along the base chain.
    fn third_policy(&self, g: Gen, n: i64) -> bool {
        match (self, g) {
            (ModuleSpec::Third { m, .. }, Gen::A) => n == -m,
            (ModuleSpec::Third { m, .. }, Gen::B) => n == *m,
            _ => false,
        }
    }

    /// Whether a mode indexes PBW words of this family.
    pub fn is_free_lowering(&self, mode: &Mode) -> bool {
        let (g, n) = match mode {
            Mode::K => return false,
            Mode::H(g, n) => (*g, *n),
        };
        match self {
            ModuleSpec::H4Verma { .. } => g == Gen::B && n == 0,
            ModuleSpec::H4Intermediate { .. } => false,
            ModuleSpec::Quotient { inner, .. } => inner.is_free_lowering(mode),
            _ => match g {
                Gen::C | Gen::D => n <= -1,
                _ => n < self.threshold(g) && !self.third_policy(g, n),
            },
        }
    }

    /// Family degree of a mode. Charges are a: +1, b: -1 (see `Gen::charge`).
    pub fn famdeg(&self, g: Gen, n: i64) -> i64 {
        -n + self.index_shift(g)
    }

    /// The per-generator index shift s_g with famdeg g(n) = -n + s_g.
    pub(crate) fn index_shift(&self, g: Gen) -> i64 {
        match (self, g) {
            (ModuleSpec::Gv1 { m, .. }, Gen::A) => -(m + 1),
            (ModuleSpec::Gv1 { m, .. }, Gen::B) => m + 1,
            (ModuleSpec::Third { m, .. }, Gen::A) => -m,
            (ModuleSpec::Third { m, .. }, Gen::B) => *m,
            (ModuleSpec::Quotient { inner, .. }, g) => inner.index_shift(g),
            _ => 0,
        }
    }

    pub fn mode_degree(&self, mode: &Mode) -> i64 {
        match mode {
            Mode::K => 0,
            Mode::H(g, n) => self.famdeg(*g, *n),
        }
    }

    pub fn mode_charge(&self, mode: &Mode) -> i64 {
        match mode {
            Mode::K => 0,
            Mode::H(g, _) => g.charge(),
        }
    }

    /// Minimal family degree of a free mode of generator g, `None` if the
    /// family has no free modes for g.
    pub(crate) fn min_free_deg(&self, g: Gen) -> Option<i64> {
        match self {
            ModuleSpec::H4Verma { .. } => (g == Gen::B).then_some(0),
            ModuleSpec::H4Intermediate { .. } => None,
            ModuleSpec::Quotient { inner, .. } => inner.min_free_deg(g),
            _ => {
                let max_free = match g {
                    Gen::C | Gen::D => -1,
                    _ => {
                        let mut idx = self.threshold(g) - 1;
                        if self.third_policy(g, idx) {
                            idx -= 1;
                        }
                        idx
                    }
                };
                Some(self.famdeg(g, max_free))
            }
        }
    }

    /// Minimal degree of a PBW word with the given word charge, `None` if
    /// no such word exists.
    pub fn word_floor(&self, word_charge: i64) -> Option<i64> {
        match self {
            ModuleSpec::H4Verma { .. } => (word_charge <= 0).then_some(0),
            ModuleSpec::H4Intermediate { .. } => (word_charge == 0).then_some(0),
            ModuleSpec::Quotient { inner, .. } => inner.word_floor(word_charge),
            _ => {
                let ma = self.min_free_deg(Gen::A).unwrap();
                let mb = self.min_free_deg(Gen::B).unwrap();
                Some(if word_charge >= 0 {
                    word_charge * ma
                } else {
                    -word_charge * mb
                })
            }
        }
    }

    /// Minimal degree of a nonempty cell at the given charge (`None` if
    /// every cell of that charge is empty).
    pub fn cell_floor(&self, charge: i64) -> Option<i64> {
        match self {
            ModuleSpec::H4Intermediate { .. } => Some(0),
            ModuleSpec::Third { .. } => Some(0),
            ModuleSpec::Quotient { inner, .. } => inner.cell_floor(charge),
            _ => self.word_floor(charge),
        }
    }

    pub fn cell_nonempty(&self, cell: GradedCell) -> bool {
        match self {
            ModuleSpec::H4Verma { .. } => cell.degree == 0 && cell.charge <= 0,
            ModuleSpec::H4Intermediate { .. } => cell.degree == 0,
            _ => match self.cell_floor(cell.charge) {
                None => false,
                Some(f) => cell.degree >= f,
            },
        }
    }

    pub fn base_charge(&self, base: &BaseLabel) -> i64 {
        match base {
            BaseLabel::Hw => 0,
            BaseLabel::Idx(j) => *j,
        }
    }

    /// The cell a single basis element lives in.
    pub fn term_cell(&self, term: &Term) -> GradedCell {
        let degree: i64 = term.word.modes().iter().map(|m| self.mode_degree(m)).sum();
        let charge = self.base_charge(&term.base) + term.word.charge();
        GradedCell::new(degree, charge)
    }

    /// The scalar by which the central c(0) acts on the whole module.
    pub fn c0_scalar(&self) -> Scalar {
        match self {
            ModuleSpec::H4Verma { c0, .. } => c0.clone(),
            ModuleSpec::H4Intermediate { mu, .. } => mu.clone(),
            ModuleSpec::Vacuum { .. } => Scalar::zero(),
            ModuleSpec::Gv0 { c0, .. } => Scalar::from_int(*c0),
            ModuleSpec::Gv1 { c0, .. } => c0.clone(),
            ModuleSpec::Third { mu, m, .. } => mu + &Scalar::from_int(*m),
            ModuleSpec::Quotient { inner, .. } => inner.c0_scalar(),
        }
    }

    /// The d(0)-eigenvalue on a base vector.
    pub fn d0_base(&self, base: &BaseLabel) -> Result<Scalar> {
        match (self, base) {
            (ModuleSpec::H4Verma { d0, .. }, BaseLabel::Hw) => Ok(d0.clone()),
            (ModuleSpec::H4Intermediate { lambda, .. }, BaseLabel::Idx(j))
            | (ModuleSpec::Third { lambda, .. }, BaseLabel::Idx(j)) => {
                Ok(lambda + &Scalar::from_int(*j))
            }
            (ModuleSpec::Vacuum { d0 }, BaseLabel::Hw)
            | (ModuleSpec::Gv0 { d0, .. }, BaseLabel::Hw)
            | (ModuleSpec::Gv1 { d0, .. }, BaseLabel::Hw) => Ok(d0.clone()),
            _ => Err(EngineError::InvalidBase(format!(
                "base {base} is not valid for this family"
            ))),
        }
    }

    /// Action of a single mode on a base vector.
    pub fn base_act(&self, x: Mode, base: &BaseLabel) -> Result<ModuleVector> {
        if !self.base_valid(base) {
            return Err(EngineError::InvalidBase(format!(
                "base {base} is not valid for this family"
            )));
        }
        let (g, n) = match x {
            // level 1 everywhere
            Mode::K => return Ok(ModuleVector::base_vector(*base)),
            Mode::H(g, n) => (g, n),
        };
        match self {
            ModuleSpec::H4Verma { c0, d0 } => {
                if n != 0 {
                    return Err(EngineError::Unsupported(
                        "finite-algebra family accepts only index-0 modes".into(),
                    ));
                }
                Ok(match g {
                    Gen::A => ModuleVector::zero(),
                    Gen::B => ModuleVector::single(
                        Term::new(PbwWord::new(vec![Mode::b(0)]).unwrap(), *base),
                        Scalar::one(),
                    ),
                    Gen::C => ModuleVector::base_vector(*base).scale(c0),
                    Gen::D => ModuleVector::base_vector(*base).scale(d0),
                })
            }
            ModuleSpec::H4Intermediate { lambda, mu, nu } => {
                if n != 0 {
                    return Err(EngineError::Unsupported(
                        "finite-algebra family accepts only index-0 modes".into(),
                    ));
                }
                let j = match base {
                    BaseLabel::Idx(j) => *j,
                    BaseLabel::Hw => unreachable!(),
                };
                Ok(match g {
                    Gen::A => ModuleVector::base_vector(BaseLabel::Idx(j + 1)).scale(&-mu),
                    Gen::B => ModuleVector::base_vector(BaseLabel::Idx(j - 1))
                        .scale(&(lambda + nu + &Scalar::from_int(j))),
                    Gen::C => ModuleVector::base_vector(*base).scale(mu),
                    Gen::D => {
                        ModuleVector::base_vector(*base).scale(&(lambda + &Scalar::from_int(j)))
                    }
                })
            }
            ModuleSpec::Quotient { .. } => Err(EngineError::Unsupported(
                "actions on quotients go through representatives of the inner module".into(),
            )),
            _ => {
                if self.is_free_lowering(&x) {
                    return Ok(ModuleVector::single(
                        Term::new(PbwWord::new(vec![x]).unwrap(), *base),
                        Scalar::one(),
                    ));
                }
                match self {
                    ModuleSpec::Third { lambda, mu, nu, m } => {
                        let j = match base {
                            BaseLabel::Idx(j) => *j,
                            BaseLabel::Hw => unreachable!(),
                        };
                        match (g, n) {
                            (Gen::C, 0) => Ok(ModuleVector::base_vector(*base)
                                .scale(&(mu + &Scalar::from_int(*m)))),
                            (Gen::D, 0) => Ok(ModuleVector::base_vector(*base)
                                .scale(&(lambda + &Scalar::from_int(j)))),
                            (Gen::A, s) if s == -m => {
                                Ok(ModuleVector::base_vector(BaseLabel::Idx(j + 1)).scale(&-mu))
                            }
                            (Gen::B, r) if r == *m => {
                                Ok(ModuleVector::base_vector(BaseLabel::Idx(j - 1))
                                    .scale(&(lambda + nu + &Scalar::from_int(j))))
                            }
                            _ => Ok(ModuleVector::zero()),
                        }
                    }
                    _ => match (g, n) {
                        (Gen::C, 0) => {
                            Ok(ModuleVector::base_vector(*base).scale(&self.c0_scalar()))
                        }
                        (Gen::D, 0) => {
                            Ok(ModuleVector::base_vector(*base).scale(&self.d0_base(base)?))
                        }
                        _ => Ok(ModuleVector::zero()),
                    },
                }
            }
        }
    }

    /// The raising set whose joint kernel defines singular vectors, as the
    /// finite list of modes that can act nontrivially out of the given
    /// cell (all others annihilate it by grading).
    pub fn raising_modes_for_cell(&self, cell: GradedCell) -> Vec<Mode> {
        let mut out = Vec::new();
        match self {
            ModuleSpec::H4Verma { .. } => {
                if self.cell_nonempty(cell) {
                    out.push(Mode::a(0));
                }
            }
            ModuleSpec::H4Intermediate { .. } => {}
            ModuleSpec::Quotient { inner, .. } => {
                return inner.raising_modes_for_cell(cell);
            }
            _ => {
                for g in Gen::ALL {
                    let start = match g {
                        Gen::C | Gen::D => 1,
                        _ => self.threshold(g),
                    };
                    let mut n = start;
                    loop {
                        let image = GradedCell::new(
                            cell.degree + self.famdeg(g, n),
                            cell.charge + g.charge(),
                        );
                        match self.cell_floor(image.charge) {
                            Some(f) if image.degree >= f => {
                                out.push(Mode::H(g, n));
                                n += 1;
                            }
                            // famdeg decreases with n, so no larger index
                            // can land in a nonempty cell either
                            _ => break,
                        }
                    }
                }
            }
        }
        out
    }
}
