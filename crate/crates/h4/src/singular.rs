//! Singular vectors: the closed-form partition-indexed linear systems for
//! the degenerate parameter lines of the epsilon = 1 and
//! intermediate-series families, a brute-force oracle computing the joint
//! kernel of all raising operators on a cell, and certification of
//! candidates.

use std::collections::BTreeMap;

use crate::algebra::Mode;
use crate::error::{EngineError, Result};
use crate::linalg;
use crate::modules::{
    act, apply_word, BaseLabel, Engine, GradedCell, ModuleSpec, ModuleVector, Term,
};
use crate::scalar::Scalar;

/// A partition in multiplicity form: strictly decreasing parts with
/// positive multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<(i64, u32)>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds from a weakly decreasing list of positive parts.
    pub fn from_desc(parts: &[i64]) -> Self {
        let mut out: Vec<(i64, u32)> = Vec::new();
        for &p in parts {
            assert!(p >= 1, "partition parts are positive");
            match out.last_mut() {
                Some((q, mult)) if *q == p => *mult += 1,
                _ => out.push((p, 1)),
            }
        }
        debug_assert!(out.windows(2).all(|w| w[0].0 > w[1].0));
        Partition { parts: out }
    }

    pub fn weight(&self) -> i64 {
        self.parts.iter().map(|(p, q)| p * (*q as i64)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Distinct parts with multiplicities, largest first.
    pub fn distinct(&self) -> &[(i64, u32)] {
        &self.parts
    }

    /// The partition with one copy of `part` removed, or `None` if absent.
    pub fn without(&self, part: i64) -> Option<Partition> {
        let mut out = self.parts.clone();
        let pos = out.iter().position(|(p, _)| *p == part)?;
        if out[pos].1 == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some(Partition { parts: out })
    }

    /// The partition with one copy of `part` added.
    pub fn with_part(&self, part: i64) -> Partition {
        assert!(part >= 1);
        let mut out = self.parts.clone();
        match out.iter_mut().find(|(p, _)| *p == part) {
            Some((_, q)) => *q += 1,
            None => {
                out.push((part, 1));
                out.sort_by(|a, b| b.0.cmp(&a.0));
            }
        }
        Partition { parts: out }
    }

    /// Multiplicity of a part.
    pub fn multiplicity(&self, part: i64) -> u32 {
        self.parts
            .iter()
            .find(|(p, _)| *p == part)
            .map_or(0, |(_, q)| *q)
    }

    /// Parts expanded with multiplicity, largest first.
    pub fn expanded(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for (p, q) in &self.parts {
            for _ in 0..*q {
                out.push(*p);
            }
        }
        out
    }
}

/// All partitions of weight n, in reverse-lexicographic order
/// ((n) first, (1^n) last).
pub fn partitions(n: i64) -> Vec<Partition> {
    assert!(n >= 1, "partitions of a positive weight");
    fn rec(t: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
        if t == 0 {
            out.push(Partition::from_desc(cur));
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
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

fn partitions_or_empty(n: i64) -> Vec<Partition> {
    if n == 0 {
        vec![Partition::empty()]
    } else {
        partitions(n)
    }
}

/// Which side of the degeneracy the system sits on: the b-shifted vectors
/// (lowering side) or the a-shifted vectors (raising side).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularSide {
    BSide,
    ASide,
}

/// Unknowns of the singular system: one `Whole` coefficient per partition
/// (b-side only) and one `Split` coefficient per (partition minus a part,
/// part) pair.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Unknown {
    Whole(Partition),
    Split(Partition, i64),
}

/// The exact linear system whose one-dimensional solution space carries
/// the singular-vector coefficients. The shift parameter enters the
/// diagonal factor (shift + part); the degenerate parameter lines of both
/// families calibrate to shift = -n.
///
/// Both sides carry `Whole` unknowns for the chain-step terms
/// c(-lambda) b(m) resp. c(-lambda) a(-m). On the a-side those terms
/// vanish in the highest-weight family (a(-m) annihilates the generator)
/// but are forced by the zero-mode raising conditions on the
/// intermediate-series chain, where a(-m) steps the base.
pub struct SingularSystem {
    side: SingularSide,
    columns: BTreeMap<Unknown, usize>,
    rows: Vec<Vec<Scalar>>,
}

impl SingularSystem {
    pub fn new(side: SingularSide, n: i64, shift: &Scalar) -> Self {
        let mut columns = BTreeMap::new();
        let lams = partitions(n);
        for lam in &lams {
            columns.insert(Unknown::Whole(lam.clone()), 0);
        }
        for p in 1..=n {
            for mu in partitions_or_empty(n - p) {
                columns.insert(Unknown::Split(mu, p), 0);
            }
        }
        for (i, (_, v)) in columns.iter_mut().enumerate() {
            *v = i;
        }
        let ncols = columns.len();
        let mut rows = Vec::new();
        let mut push_row = |entries: Vec<(usize, Scalar)>| {
            let mut row = vec![Scalar::zero(); ncols];
            for (c, s) in entries {
                row[c] = &row[c] + &s;
            }
            rows.push(row);
        };
        let col = |u: &Unknown| -> usize { *columns.get(u).expect("unknown in table") };
        match side {
            SingularSide::BSide => {
                for lam in &lams {
                    let distinct = lam.distinct().to_vec();
                    for &(li, qi) in &distinct {
                        let mu_i = lam.without(li).unwrap();
                        // a_lam * qi*li - b_{lam - li, li} = 0
                        push_row(vec![
                            (
                                col(&Unknown::Whole(lam.clone())),
                                Scalar::from_int(qi as i64 * li),
                            ),
                            (
                                col(&Unknown::Split(mu_i.clone(), li)),
                                Scalar::from_int(-1),
                            ),
                        ]);
                        // b_{lam - li, li}(shift + li)
                        //   + sum_j b_{lam - li - lj, li + lj} = 0,
                        // terms with the j-th part exhausted are dropped
                        let mut entries = vec![(
                            col(&Unknown::Split(mu_i.clone(), li)),
                            shift + &Scalar::from_int(li),
                        )];
                        for &(lj, _) in &distinct {
                            if let Some(mu_ij) = mu_i.without(lj) {
                                entries.push((
                                    col(&Unknown::Split(mu_ij, li + lj)),
                                    Scalar::one(),
                                ));
                            }
                        }
                        push_row(entries);
                    }
                }
            }
            SingularSide::ASide => {
                // zero-mode (d-raising) conditions against the chain step:
                // a~_lam * q_lam(r) r + c_{lam - r, r} = 0
                for lam in &lams {
                    for &(r, q) in lam.distinct().to_vec().iter() {
                        let mu = lam.without(r).unwrap();
                        push_row(vec![
                            (
                                col(&Unknown::Whole(lam.clone())),
                                Scalar::from_int(q as i64 * r),
                            ),
                            (col(&Unknown::Split(mu, r)), Scalar::one()),
                        ]);
                    }
                }
                // d-raising between split shapes:
                // (q_rho(r) + 1) r c_{rho + r, p} + c_{rho, p + r} = 0
                for r in 1..=n - 1 {
                    for p in 1..=n - r {
                        for rho in partitions_or_empty(n - r - p) {
                            let q = rho.multiplicity(r) as i64 + 1;
                            push_row(vec![
                                (
                                    col(&Unknown::Split(rho.with_part(r), p)),
                                    Scalar::from_int(q * r),
                                ),
                                (
                                    col(&Unknown::Split(rho.clone(), p + r)),
                                    Scalar::one(),
                                ),
                            ]);
                        }
                    }
                }
                // b-raising conditions:
                // c_{mu, s}(shift + s) - sum_t c_{mu - t, t + s} = 0
                for s in 1..=n {
                    for mu in partitions_or_empty(n - s) {
                        let mut entries = vec![(
                            col(&Unknown::Split(mu.clone(), s)),
                            shift + &Scalar::from_int(s),
                        )];
                        for &(t, _) in mu.distinct().to_vec().iter() {
                            entries.push((
                                col(&Unknown::Split(mu.without(t).unwrap(), t + s)),
                                Scalar::from_int(-1),
                            ));
                        }
                        push_row(entries);
                    }
                }
            }
        }
        SingularSystem {
            side,
            columns,
            rows,
        }
    }

    /// Solves the system exactly; the solution space must be
    /// one-dimensional up to scalar.
    pub fn solve(&self) -> Result<BTreeMap<Unknown, Scalar>> {
        let sols = linalg::nullspace(&self.rows, self.columns.len());
        if sols.len() != 1 {
            return Err(EngineError::AmbiguousSolution { dim: sols.len() });
        }
        let sol = &sols[0];
        Ok(self
            .columns
            .iter()
            .map(|(u, &i)| (u.clone(), sol[i].clone()))
            .collect())
    }

    /// The solved coefficients as (scalar, mode word) pairs; words apply
    /// right-to-left. The mode shift `m` fixes b(-part + m) / a(-part - m).
    fn expression(&self, m: i64) -> Result<Vec<(Scalar, Vec<Mode>)>> {
        let solution = self.solve()?;
        let mut out = Vec::new();
        for (unknown, coeff) in &solution {
            if coeff.is_zero() {
                continue;
            }
            let (mu, tail) = match unknown {
                Unknown::Whole(lam) => (
                    lam.clone(),
                    match self.side {
                        SingularSide::BSide => Mode::b(m),
                        SingularSide::ASide => Mode::a(-m),
                    },
                ),
                Unknown::Split(mu, p) => (
                    mu.clone(),
                    match self.side {
                        SingularSide::BSide => Mode::b(-p + m),
                        SingularSide::ASide => Mode::a(-p - m),
                    },
                ),
            };
            let mut modes: Vec<Mode> = mu.expanded().iter().map(|&p| Mode::c(-p)).collect();
            modes.push(tail);
            out.push((coeff.clone(), modes));
        }
        Ok(out)
    }
}

/// A candidate singular vector with its cell and the raising-mode
/// certificate: verified iff every in-range raising mode returns zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularVector {
    pub vector: ModuleVector,
    pub cell: GradedCell,
    pub certificate: Vec<(Mode, bool)>,
}

impl SingularVector {
    pub fn verified(&self) -> bool {
        self.certificate.iter().all(|(_, z)| *z)
    }
}

fn degeneracy_check(spec: &ModuleSpec, side: SingularSide, n: i64) -> Result<i64> {
    match spec {
        ModuleSpec::Gv1 { m, c0, .. } => {
            let want = match side {
                SingularSide::BSide => Scalar::from_int(m - n),
                SingularSide::ASide => Scalar::from_int(m + n),
            };
            if *c0 == want {
                Ok(*m)
            } else {
                Err(EngineError::NoDegeneracy(format!(
                    "c(0)-eigenvalue {c0} does not sit on the degenerate line (expected {want})"
                )))
            }
        }
        ModuleSpec::Third { mu, m, .. } => {
            let want = match side {
                SingularSide::BSide => Scalar::from_int(-n),
                SingularSide::ASide => Scalar::from_int(n),
            };
            if *mu == want {
                Ok(*m)
            } else {
                Err(EngineError::NoDegeneracy(format!(
                    "mu = {mu} does not sit on the degenerate line (expected {want})"
                )))
            }
        }
        _ => Err(EngineError::NoDegeneracy(
            "closed-form singular systems exist only for the epsilon = 1 \
             and intermediate-series families"
                .into(),
        )),
    }
}

/// Builds and solves the closed-form system, assembles the degree-n
/// singular vector, raises it to the k-th power (all occurring modes
/// commute pairwise), and certifies the result. The solution is
/// normalized so its lexicographically first coefficient is 1.
pub fn solve_closed_form(
    spec: &ModuleSpec,
    side: SingularSide,
    n: i64,
    k: u32,
    base: BaseLabel,
    shift: Option<Scalar>,
) -> Result<SingularVector> {
    if n < 1 || k < 1 {
        return Err(EngineError::Parse("need n >= 1 and k >= 1".into()));
    }
    spec.validate()?;
    if !spec.base_valid(&base) {
        return Err(EngineError::InvalidBase(format!(
            "base {base} is not valid for this family"
        )));
    }
    let m = degeneracy_check(spec, side, n)?;
    let shift = shift.unwrap_or_else(|| Scalar::from_int(-n));
    let system = SingularSystem::new(side, n, &shift);
    let expression = system.expression(m)?;

    let mut u = ModuleVector::base_vector(base);
    for _ in 0..k {
        let mut next = ModuleVector::zero();
        for (coeff, modes) in &expression {
            let part = apply_word(spec, modes, &u)?;
            next.add_scaled(&part, coeff);
        }
        u = next;
    }
    let u = u.normalized();
    verify_singular(spec, &u)
}

/// Exact basis of the singular subspace of a cell: the joint kernel of
/// every raising mode that can act nontrivially out of the cell. The
/// kernel is refined one raising mode at a time, which keeps the matrices
/// small in the typical (empty) case.
pub fn oracle_singular(
    engine: &Engine,
    spec: &ModuleSpec,
    cell: GradedCell,
) -> Result<Vec<ModuleVector>> {
    let basis = engine.graded_basis(spec, cell)?;
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let mut kernel: Vec<ModuleVector> = basis
        .iter()
        .map(|t| ModuleVector::single(t.clone(), Scalar::one()))
        .collect();
    for mode in spec.raising_modes_for_cell(cell) {
        if kernel.is_empty() {
            break;
        }
        let images: Vec<ModuleVector> = kernel
            .iter()
            .map(|v| act(spec, mode, v))
            .collect::<Result<_>>()?;
        let mut image_terms: BTreeMap<Term, usize> = BTreeMap::new();
        for img in &images {
            for (t, _) in img.iter() {
                let next = image_terms.len();
                image_terms.entry(t.clone()).or_insert(next);
            }
        }
        if image_terms.is_empty() {
            continue; // this mode kills the whole current kernel
        }
        let mut rows = vec![vec![Scalar::zero(); kernel.len()]; image_terms.len()];
        for (j, img) in images.iter().enumerate() {
            for (t, coeff) in img.iter() {
                rows[image_terms[t]][j] = coeff.clone();
            }
        }
        let combos = linalg::nullspace(&rows, kernel.len());
        kernel = combos
            .iter()
            .map(|combo| {
                let mut v = ModuleVector::zero();
                for (old, coeff) in kernel.iter().zip(combo.iter()) {
                    v.add_scaled(old, coeff);
                }
                v
            })
            .collect();
    }
    Ok(kernel.into_iter().map(|v| v.normalized()).collect())
}

/// Applies every in-range raising mode to a homogeneous candidate and
/// records which ones vanish.
pub fn verify_singular(spec: &ModuleSpec, candidate: &ModuleVector) -> Result<SingularVector> {
    let cell = candidate
        .cell(spec)?
        .ok_or_else(|| EngineError::Parse("cannot certify the zero vector".into()))?;
    let mut certificate = Vec::new();
    for mode in spec.raising_modes_for_cell(cell) {
        let image = act(spec, mode, candidate)?;
        certificate.push((mode, image.is_zero()));
    }
    Ok(SingularVector {
        vector: candidate.clone(),
        cell,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::PbwWord;

    #[test]
    fn partition_order_and_counts() {
        let p1 = partitions(1);
        assert_eq!(p1, vec![Partition::from_desc(&[1])]);
        let p2 = partitions(2);
        assert_eq!(
            p2,
            vec![Partition::from_desc(&[2]), Partition::from_desc(&[1, 1])]
        );
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(7).len(), 15);
    }

    #[test]
    fn partition_surgery() {
        let lam = Partition::from_desc(&[3, 1, 1]);
        assert_eq!(lam.weight(), 5);
        assert_eq!(lam.without(1), Some(Partition::from_desc(&[3, 1])));
        assert_eq!(lam.without(2), None);
        assert_eq!(
            Partition::from_desc(&[1]).without(1),
            Some(Partition::empty())
        );
    }

    fn gv1_b(m: i64, n: i64) -> ModuleSpec {
        ModuleSpec::Gv1 {
            m,
            c0: Scalar::from_int(m - n),
            d0: Scalar::new(1, 2),
        }
    }

    #[test]
    fn degree_one_b_side_vector() {
        // c(-1)b(m).1 + b(m-1).1
        let spec = gv1_b(1, 1);
        let sv =
            solve_closed_form(&spec, SingularSide::BSide, 1, 1, BaseLabel::Hw, None).unwrap();
        assert!(sv.verified());
        assert_eq!(sv.cell, GradedCell::new(2, -1));
        let mut expect = ModuleVector::zero();
        expect.add_term(
            Term::new(
                PbwWord::new(vec![Mode::c(-1), Mode::b(1)]).unwrap(),
                BaseLabel::Hw,
            ),
            Scalar::one(),
        );
        expect.add_term(
            Term::new(PbwWord::new(vec![Mode::b(0)]).unwrap(), BaseLabel::Hw),
            Scalar::one(),
        );
        assert_eq!(sv.vector, expect);
    }

    #[test]
    fn degree_two_b_side_coefficients() {
        // coefficients (1, 1, 2, 2) on c(-2)b(m), c(-1)^2 b(m),
        // c(-1)b(m-1), b(m-2)
        let spec = gv1_b(3, 2);
        let sv =
            solve_closed_form(&spec, SingularSide::BSide, 2, 1, BaseLabel::Hw, None).unwrap();
        assert!(sv.verified());
        let coeff_of = |modes: Vec<Mode>| {
            sv.vector
                .coeff(&Term::new(PbwWord::new(modes).unwrap(), BaseLabel::Hw))
        };
        assert_eq!(coeff_of(vec![Mode::c(-2), Mode::b(3)]), Scalar::one());
        assert_eq!(
            coeff_of(vec![Mode::c(-1), Mode::c(-1), Mode::b(3)]),
            Scalar::one()
        );
        assert_eq!(coeff_of(vec![Mode::c(-1), Mode::b(2)]), Scalar::from_int(2));
        assert_eq!(coeff_of(vec![Mode::b(1)]), Scalar::from_int(2));
        assert_eq!(sv.vector.len(), 4);
    }

    #[test]
    fn degree_one_a_side_is_single_mode() {
        let spec = ModuleSpec::Gv1 {
            m: 1,
            c0: Scalar::from_int(2),
            d0: Scalar::zero(),
        };
        let sv =
            solve_closed_form(&spec, SingularSide::ASide, 1, 1, BaseLabel::Hw, None).unwrap();
        assert!(sv.verified());
        let expect = ModuleVector::single(
            Term::new(PbwWord::new(vec![Mode::a(-2)]).unwrap(), BaseLabel::Hw),
            Scalar::one(),
        );
        assert_eq!(sv.vector, expect);
        assert_eq!(sv.cell, GradedCell::new(0, 1));
    }

    #[test]
    fn no_degeneracy_is_reported() {
        let spec = ModuleSpec::Gv1 {
            m: 1,
            c0: Scalar::new(1, 2),
            d0: Scalar::zero(),
        };
        let err = solve_closed_form(&spec, SingularSide::BSide, 1, 1, BaseLabel::Hw, None)
            .unwrap_err();
        assert!(matches!(err, EngineError::NoDegeneracy(_)));
    }

    #[test]
    fn partial_vector_fails_certification() {
        // b(m-1).1 alone is not singular: a(-m) leaves a c-term
        let spec = gv1_b(1, 1);
        let candidate = ModuleVector::single(
            Term::new(PbwWord::new(vec![Mode::b(0)]).unwrap(), BaseLabel::Hw),
            Scalar::one(),
        );
        let sv = verify_singular(&spec, &candidate).unwrap();
        assert!(!sv.verified());
        let offending: Vec<&Mode> = sv
            .certificate
            .iter()
            .filter(|(_, z)| !z)
            .map(|(m, _)| m)
            .collect();
        assert!(offending.contains(&&Mode::a(-1)));
    }

    #[test]
    fn generator_reports_itself() {
        let engine = Engine::default();
        let spec = ModuleSpec::Gv1 {
            m: 0,
            c0: Scalar::new(1, 2),
            d0: Scalar::zero(),
        };
        let sing = oracle_singular(&engine, &spec, GradedCell::new(0, 0)).unwrap();
        assert_eq!(sing.len(), 1);
        assert_eq!(sing[0], ModuleVector::base_vector(BaseLabel::Hw));
    }

    #[test]
    fn oracle_matches_closed_form_at_degree_one() {
        let engine = Engine::default();
        let spec = gv1_b(1, 1);
        let sing = oracle_singular(&engine, &spec, GradedCell::new(2, -1)).unwrap();
        assert_eq!(sing.len(), 1);
        let sv =
            solve_closed_form(&spec, SingularSide::BSide, 1, 1, BaseLabel::Hw, None).unwrap();
        assert_eq!(sing[0], sv.vector);
    }

    #[test]
    fn third_family_degree_one_b_side() {
        // mu = -1 puts the intermediate-series family on the degenerate
        // line; the vector mixes the two neighboring base labels
        let spec = ModuleSpec::Third {
            lambda: Scalar::new(1, 5),
            mu: Scalar::from_int(-1),
            nu: Scalar::new(1, 7),
            m: 0,
        };
        let sv =
            solve_closed_form(&spec, SingularSide::BSide, 1, 1, BaseLabel::Idx(0), None).unwrap();
        assert!(sv.verified());
        assert_eq!(sv.cell, GradedCell::new(1, -1));
    }
}
