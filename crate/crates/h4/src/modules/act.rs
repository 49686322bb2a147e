//! The module action by PBW straightening: a mode is commuted rightward
//! through a canonical word using the affine bracket (each swap leaves a
//! bracket term with a strictly shorter word) until it either slots into
//! its canonical position or reaches the base vector, where the family
//! policy applies.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::algebra::{bracket, Mode, ModeCombination};
use crate::error::Result;
use crate::modules::{BaseLabel, ModuleSpec, ModuleVector, PbwWord, Term};
use crate::scalar::Scalar;

/// The Lie action of a single mode on a vector, in canonical PBW form.
/// K acts as 1 (all families here have level 1).
pub fn act(spec: &ModuleSpec, x: Mode, v: &ModuleVector) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero();
    for (term, coeff) in v.iter() {
        let part = act_term(spec, x, term.word.modes(), &term.base)?;
        out.add_scaled(&part, coeff);
    }
    Ok(out)
}

/// Bilinear extension to a combination of modes.
pub fn act_comb(spec: &ModuleSpec, xs: &ModeCombination, v: &ModuleVector) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero();
    for (mode, coeff) in xs.iter() {
        let part = act(spec, *mode, v)?;
        out.add_scaled(&part, coeff);
    }
    Ok(out)
}

/// Applies a sequence of modes right-to-left (the rightmost mode acts
/// first), so `apply_word(&[x, y], v) = x . (y . v)`.
pub fn apply_word(spec: &ModuleSpec, modes: &[Mode], v: &ModuleVector) -> Result<ModuleVector> {
    let mut cur = v.clone();
    for x in modes.iter().rev() {
        cur = act(spec, *x, &cur)?;
        if cur.is_zero() {
            return Ok(cur);
        }
    }
    Ok(cur)
}

fn act_term(spec: &ModuleSpec, x: Mode, word: &[Mode], base: &BaseLabel) -> Result<ModuleVector> {
    if x == Mode::K {
        return Ok(ModuleVector::single(
            Term::new(crate::modules::PbwWord::new(word.to_vec())?, *base),
            Scalar::one(),
        ));
    }
    match word.first() {
        None => spec.base_act(x, base),
        Some(&head) => {
            if spec.is_free_lowering(&x) && x <= head {
                let term = Term::new(
                    crate::modules::PbwWord::new(word.to_vec())?.prepended(x),
                    *base,
                );
                return Ok(ModuleVector::single(term, Scalar::one()));
            }
            let rest = &word[1..];
            // x . head = head . x + [x, head]
            let inner = act_term(spec, x, rest, base)?;
            let mut out = act(spec, head, &inner)?;
            for (y, c) in bracket(x, head).iter() {
                if *y == Mode::K {
                    out.add_term(
                        Term::new(crate::modules::PbwWord::new(rest.to_vec())?, *base),
                        c.clone(),
                    );
                } else {
                    let part = act_term(spec, *y, rest, base)?;
                    out.add_scaled(&part, c);
                }
            }
            Ok(out)
        }
    }
}

/// A memoizing view of the module action. Straightening decomposes into
/// (mode, shorter term) subproblems that repeat heavily across field-mode
/// evaluations, so the table pays off whenever many modes hit the same
/// cells.
pub struct ActTable {
    spec: ModuleSpec,
    memo: RwLock<HashMap<(Mode, Term), Arc<ModuleVector>>>,
}

impl ActTable {
    pub fn new(spec: &ModuleSpec) -> Self {
        ActTable {
            spec: spec.clone(),
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn apply(&self, x: Mode, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (term, coeff) in v.iter() {
            let part = self.apply_term(x, term)?;
            out.add_scaled(&part, coeff);
        }
        Ok(out)
    }

    pub fn apply_term(&self, x: Mode, term: &Term) -> Result<Arc<ModuleVector>> {
        let key = (x, term.clone());
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let out = self.compute(x, term)?;
        let out = Arc::new(out);
        self.memo
            .write()
            .unwrap()
            .insert(key, Arc::clone(&out));
        Ok(out)
    }

    fn compute(&self, x: Mode, term: &Term) -> Result<ModuleVector> {
        let spec = &self.spec;
        if x == Mode::K {
            return Ok(ModuleVector::single(term.clone(), Scalar::one()));
        }
        let word = term.word.modes();
        match word.first() {
            None => spec.base_act(x, &term.base),
            Some(&head) => {
                if spec.is_free_lowering(&x) && x <= head {
                    return Ok(ModuleVector::single(
                        Term::new(term.word.prepended(x), term.base),
                        Scalar::one(),
                    ));
                }
                let rest = Term::new(PbwWord::new(word[1..].to_vec())?, term.base);
                let inner = self.apply_term(x, &rest)?;
                let mut out = self.apply(head, &inner)?;
                for (y, c) in bracket(x, head).iter() {
                    if *y == Mode::K {
                        out.add_term(rest.clone(), c.clone());
                    } else {
                        let part = self.apply_term(*y, &rest)?;
                        out.add_scaled(&part, c);
                    }
                }
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::PbwWord;

    fn single(word: Vec<Mode>, base: BaseLabel) -> ModuleVector {
        ModuleVector::single(
            Term::new(PbwWord::new(word).unwrap(), base),
            Scalar::one(),
        )
    }

    #[test]
    fn eigenvalue_after_one_bracket() {
        // d(0) on b(-1).1 gives (d0 - 1) b(-1).1
        let spec = ModuleSpec::Gv1 {
            m: 0,
            c0: Scalar::new(1, 3),
            d0: Scalar::new(5, 2),
        };
        let v = single(vec![Mode::b(-1)], BaseLabel::Hw);
        let out = act(&spec, Mode::d(0), &v).unwrap();
        assert_eq!(out, v.scale(&(Scalar::new(5, 2) - Scalar::one())));
    }

    #[test]
    fn raising_creates_central_term() {
        // a(0) on b(-1).1 in the c0 = 1 first-class module: just c(-1).1
        let spec = ModuleSpec::Gv0 {
            c0: 1,
            d0: Scalar::zero(),
        };
        let v = single(vec![Mode::b(-1)], BaseLabel::Hw);
        let out = act(&spec, Mode::a(0), &v).unwrap();
        assert_eq!(out, single(vec![Mode::c(-1)], BaseLabel::Hw));

        // a(1) on b(-1).1 in the vacuum: c(0) + K acts as 0 + 1
        let spec = ModuleSpec::vacuum0();
        let out = act(&spec, Mode::a(1), &v).unwrap();
        assert_eq!(out, ModuleVector::base_vector(BaseLabel::Hw));
    }

    #[test]
    fn canonical_insertion() {
        // c(-1) applied to d(-1).1 must commute to the canonical slot
        let spec = ModuleSpec::vacuum0();
        let v = single(vec![Mode::d(-1)], BaseLabel::Hw);
        let out = act(&spec, Mode::c(-1), &v).unwrap();
        assert_eq!(out, single(vec![Mode::d(-1), Mode::c(-1)], BaseLabel::Hw));

        // and the reverse order needs a swap with zero bracket correction
        let v = single(vec![Mode::c(-1)], BaseLabel::Hw);
        let out = act(&spec, Mode::d(-1), &v).unwrap();
        assert_eq!(out, single(vec![Mode::d(-1), Mode::c(-1)], BaseLabel::Hw));
    }

    #[test]
    fn policy_step_commutes_through_words() {
        // a(-m) passes freely through c-words and steps the chain
        let spec = ModuleSpec::Third {
            lambda: Scalar::new(1, 5),
            mu: Scalar::new(3, 2),
            nu: Scalar::new(1, 7),
            m: 1,
        };
        let v = single(vec![Mode::c(-1)], BaseLabel::Idx(0));
        let out = act(&spec, Mode::a(-1), &v).unwrap();
        assert_eq!(
            out,
            single(vec![Mode::c(-1)], BaseLabel::Idx(1)).scale(&Scalar::new(-3, 2))
        );
    }

    #[test]
    fn power_merging() {
        let spec = ModuleSpec::vacuum0();
        let v = single(vec![Mode::b(-2)], BaseLabel::Hw);
        let out = act(&spec, Mode::b(-2), &v).unwrap();
        assert_eq!(out, single(vec![Mode::b(-2), Mode::b(-2)], BaseLabel::Hw));
    }
}
