//! The Nappi-Witten algebra H4 = span{a, b, c, d} with [a,b] = c,
//! [d,a] = a, [d,b] = -b, c central, bilinear form (a,b) = (c,d) = 1,
//! and its affinization on modes h(n) = h (x) t^n plus a central K.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{EngineError, Result};
use crate::scalar::Scalar;

/// One of the four generators. The declaration order d < c < a < b is the
/// canonical basis order used by PBW words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    D,
    C,
    A,
    B,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::D, Gen::C, Gen::A, Gen::B];

    pub fn letter(self) -> char {
        match self {
            Gen::A => 'a',
            Gen::B => 'b',
            Gen::C => 'c',
            Gen::D => 'd',
        }
    }

    pub fn from_letter(ch: char) -> Option<Gen> {
        match ch {
            'a' => Some(Gen::A),
            'b' => Some(Gen::B),
            'c' => Some(Gen::C),
            'd' => Some(Gen::D),
            _ => None,
        }
    }

    /// The symmetric bilinear form: (a,b) = (b,a) = (c,d) = (d,c) = 1,
    /// everything else 0.
    pub fn pairing(self, other: Gen) -> i64 {
        match (self, other) {
            (Gen::A, Gen::B) | (Gen::B, Gen::A) => 1,
            (Gen::C, Gen::D) | (Gen::D, Gen::C) => 1,
            _ => 0,
        }
    }

    /// Contribution of one mode of this generator to the charge grading
    /// (the d(0)-eigenvalue offset): a-modes +1, b-modes -1.
    pub fn charge(self) -> i64 {
        match self {
            Gen::A => 1,
            Gen::B => -1,
            _ => 0,
        }
    }

    /// Finite bracket [self, other] as an optional (coefficient, generator).
    fn finite_bracket(self, other: Gen) -> Option<(i64, Gen)> {
        match (self, other) {
            (Gen::A, Gen::B) => Some((1, Gen::C)),
            (Gen::B, Gen::A) => Some((-1, Gen::C)),
            (Gen::D, Gen::A) => Some((1, Gen::A)),
            (Gen::A, Gen::D) => Some((-1, Gen::A)),
            (Gen::D, Gen::B) => Some((-1, Gen::B)),
            (Gen::B, Gen::D) => Some((1, Gen::B)),
            _ => None,
        }
    }
}

/// A mode of the affine algebra: either a generator at a Fourier index,
/// or the central element K.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    H(Gen, i64),
    K,
}

impl Mode {
    pub fn a(n: i64) -> Mode {
        Mode::H(Gen::A, n)
    }
    pub fn b(n: i64) -> Mode {
        Mode::H(Gen::B, n)
    }
    pub fn c(n: i64) -> Mode {
        Mode::H(Gen::C, n)
    }
    pub fn d(n: i64) -> Mode {
        Mode::H(Gen::D, n)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::H(g, n) => write!(f, "{}({})", g.letter(), n),
            Mode::K => write!(f, "K"),
        }
    }
}

/// A finite rational-linear combination of modes. No zero coefficients
/// are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModeCombination(BTreeMap<Mode, Scalar>);

impl ModeCombination {
    pub fn zero() -> Self {
        ModeCombination(BTreeMap::new())
    }

    pub fn single(mode: Mode, coeff: Scalar) -> Self {
        let mut m = ModeCombination::zero();
        m.add_term(mode, coeff);
        m
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, mode: Mode, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.0.entry(mode).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.0.remove(&mode);
        }
    }

    pub fn add(&self, other: &ModeCombination) -> ModeCombination {
        let mut out = self.clone();
        for (m, c) in &other.0 {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> ModeCombination {
        let mut out = ModeCombination::zero();
        for (m, c) in &self.0 {
            out.add_term(*m, c * s);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mode, &Scalar)> {
        self.0.iter()
    }

    pub fn coeff(&self, mode: &Mode) -> Scalar {
        self.0.get(mode).cloned().unwrap_or_else(Scalar::zero)
    }
}

impl FromIterator<(Mode, Scalar)> for ModeCombination {
    fn from_iter<I: IntoIterator<Item = (Mode, Scalar)>>(iter: I) -> Self {
        let mut out = ModeCombination::zero();
        for (m, c) in iter {
            out.add_term(m, c);
        }
        out
    }
}

/// The affine bracket
/// [h1(m), h2(n)] = [h1,h2](m+n) + m (h1,h2) delta_{m+n,0} K,
/// with K central.
pub fn bracket(x: Mode, y: Mode) -> ModeCombination {
    match (x, y) {
        (Mode::K, _) | (_, Mode::K) => ModeCombination::zero(),
        (Mode::H(g1, m), Mode::H(g2, n)) => {
            let mut out = ModeCombination::zero();
            if let Some((coeff, g)) = g1.finite_bracket(g2) {
                out.add_term(Mode::H(g, m + n), Scalar::from_int(coeff));
            }
            if m + n == 0 {
                out.add_term(Mode::K, Scalar::from_int(m * g1.pairing(g2)));
            }
            out
        }
    }
}

/// Bracket extended bilinearly to combinations.
pub fn bracket_comb(x: &ModeCombination, y: &ModeCombination) -> ModeCombination {
    let mut out = ModeCombination::zero();
    for (mx, cx) in x.iter() {
        for (my, cy) in y.iter() {
            for (m, c) in bracket(*mx, *my).iter() {
                out.add_term(*m, c * &(cx * cy));
            }
        }
    }
    out
}

/// The involutive automorphism swapping a and b and negating c and d:
/// a(n) -> b(n), b(n) -> a(n), c(n) -> -c(n), d(n) -> -d(n), K -> K.
pub fn sigma(x: Mode) -> ModeCombination {
    match x {
        Mode::K => ModeCombination::single(Mode::K, Scalar::one()),
        Mode::H(g, n) => {
            let (coeff, g2) = match g {
                Gen::A => (1, Gen::B),
                Gen::B => (1, Gen::A),
                Gen::C => (-1, Gen::C),
                Gen::D => (-1, Gen::D),
            };
            ModeCombination::single(Mode::H(g2, n), Scalar::from_int(coeff))
        }
    }
}

pub fn sigma_comb(x: &ModeCombination) -> ModeCombination {
    let mut out = ModeCombination::zero();
    for (m, c) in x.iter() {
        for (m2, c2) in sigma(*m).iter() {
            out.add_term(*m2, c2 * c);
        }
    }
    out
}

/// The level-rescaling map on a PBW monomial: at level `ell` (which must
/// be the square of a rational) the word picks up the coefficient
/// sqrt(ell)^(#a + #b) * ell^(#c); the word itself is unchanged.
pub fn rho(ell: &Scalar, word: &[Mode]) -> Result<(Scalar, Vec<Mode>)> {
    if ell.is_zero() {
        return Err(EngineError::NotARationalSquare);
    }
    let root = ell.sqrt_exact()?;
    let mut n_ab = 0u32;
    let mut n_c = 0u32;
    for mode in word {
        match mode {
            Mode::H(Gen::A, _) | Mode::H(Gen::B, _) => n_ab += 1,
            Mode::H(Gen::C, _) => n_c += 1,
            _ => {}
        }
    }
    Ok((root.pow(n_ab) * ell.pow(n_c), word.to_vec()))
}
