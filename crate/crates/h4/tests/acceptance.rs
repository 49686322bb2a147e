//! Acceptance suite: one test per criterion, each an exact check (all
//! arithmetic rational, tolerance identically zero). Every test prints a
//! PASS line with the window it covered.

use std::collections::BTreeMap;

use h4::algebra::{Gen, Mode};
use h4::character::{character, compare_characters, window_cells, CompareOutcome, Window};
use h4::lattice::{extension_mode, flow_profile, LatticeElement};
use h4::modules::{
    act, apply_word, quotient_cell, BaseLabel, Engine, GradedCell, ModuleSpec, ModuleVector,
    PbwWord, Term,
};
use h4::scalar::Scalar;
use h4::singular::{oracle_singular, solve_closed_form, verify_singular, SingularSide};
use h4::voa::{field_mode, mixed_commutator_check, omega, virasoro, virasoro_check, FieldOp};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn vacuum() -> ModuleSpec {
    ModuleSpec::vacuum0()
}

fn one() -> ModuleVector {
    ModuleVector::base_vector(BaseLabel::Hw)
}

fn vac_word(modes: Vec<Mode>) -> ModuleVector {
    ModuleVector::single(
        Term::new(PbwWord::new(modes).unwrap(), BaseLabel::Hw),
        Scalar::one(),
    )
}

fn generator_vectors() -> Vec<(&'static str, ModuleVector)> {
    vec![
        ("a", vac_word(vec![Mode::a(-1)])),
        ("b", vac_word(vec![Mode::b(-1)])),
        ("c", vac_word(vec![Mode::c(-1)])),
        ("d", vac_word(vec![Mode::d(-1)])),
        ("omega", omega()),
    ]
}

#[test]
fn criterion_01_virasoro_central_charge() {
    let engine = Engine::default();
    let spec = vacuum();
    // every cell of degree <= 5 has |charge| <= 5, so this window is the
    // complete degree-<= 5 subspace
    let report = virasoro_check(&engine, &spec, Window::new(5, -5, 5), 3).unwrap();
    assert!(report.ok, "{:?}", report.counterexample);

    // [L(2), L(-2)] 1 = 2.1 in particular
    let lhs = virasoro(&spec, 2, &virasoro(&spec, -2, &one()).unwrap())
        .unwrap()
        .sub(&virasoro(&spec, -2, &virasoro(&spec, 2, &one()).unwrap()).unwrap());
    assert_eq!(lhs, one().scale(&s(2)));
    println!("criterion 01 PASS: Virasoro relations with central charge 4 on all 416 basis vectors of degree <= 5, m,n in [-3,3]; [L(2),L(-2)]1 = 2.1");
}

#[test]
fn criterion_02_mixed_commutator() {
    let engine = Engine::default();
    // the vacuum window covers every degree-<= 4 cell (|charge| <= degree
    // there); the epsilon=1 family has degree-<= 4 cells at every charge,
    // so a finite charge window is part of the desk-scale statement
    let report =
        mixed_commutator_check(&engine, &vacuum(), Window::new(4, -4, 4), 3).unwrap();
    assert!(report.ok, "vacuum: {:?}", report.counterexample);
    let gv1 = ModuleSpec::Gv1 {
        m: 1,
        c0: s(0),
        d0: Scalar::new(1, 2),
    };
    let report = mixed_commutator_check(&engine, &gv1, Window::new(4, -2, 2), 3).unwrap();
    assert!(report.ok, "gv1(1, 0, 1/2): {:?}", report.counterexample);
    println!("criterion 02 PASS: [h(n), L(m)] = n h(m+n) for n,m in [-3,3], all four h, on all degree <= 4 vectors of the vacuum and on degree <= 4, charge in [-2,2] of gv1(1, 0, 1/2)");
}

#[test]
fn criterion_03_borcherds_commutators() {
    let engine = Engine::default();
    let families: Vec<(&str, ModuleSpec)> = vec![
        ("vacuum", vacuum()),
        (
            "gv0(2, 1/3)",
            ModuleSpec::Gv0 {
                c0: 2,
                d0: Scalar::new(1, 3),
            },
        ),
        (
            "gv1(1, 0, 0)",
            ModuleSpec::Gv1 {
                m: 1,
                c0: s(0),
                d0: s(0),
            },
        ),
        (
            "third(1/5, 3/2, 1/7, 0)",
            ModuleSpec::Third {
                lambda: Scalar::new(1, 5),
                mu: Scalar::new(3, 2),
                nu: Scalar::new(1, 7),
                m: 0,
            },
        ),
    ];
    let operands = generator_vectors();
    let vac = vacuum();
    let mut checked = 0usize;
    for (name, spec) in &families {
        let window = Window::new(3, -2, 2);
        let table = std::sync::Arc::new(h4::modules::ActTable::new(spec));
        let ops: Vec<FieldOp> = operands
            .iter()
            .map(|(_, v)| {
                FieldOp::with_table(std::sync::Arc::clone(&table), v.clone()).unwrap()
            })
            .collect();
        // nonzero products u_i v with their field operators
        let mut products: BTreeMap<(usize, usize, i64), FieldOp> = BTreeMap::new();
        for (iu, (_, u)) in operands.iter().enumerate() {
            for (iv, (_, v)) in operands.iter().enumerate() {
                for i in 0..=4 {
                    let prod = field_mode(&vac, u, i, v).unwrap();
                    if !prod.is_zero() {
                        products.insert(
                            (iu, iv, i),
                            FieldOp::with_table(std::sync::Arc::clone(&table), prod).unwrap(),
                        );
                    }
                }
                // beyond weight(u) + weight(v) - 1 <= 3 everything vanishes
                for i in 5..=7 {
                    assert!(field_mode(&vac, u, i, v).unwrap().is_zero());
                }
            }
        }
        let mut jobs = Vec::new();
        for cell in window_cells(spec, window) {
            jobs.extend(engine.graded_basis(spec, cell).unwrap().iter().cloned());
        }
        use rayon::prelude::*;
        let counted: usize = jobs
            .par_iter()
            .map(|w_term| {
                let w = ModuleVector::single(w_term.clone(), Scalar::one());
                let mut local = 0usize;
                for (iu, u_op) in ops.iter().enumerate() {
                    for (iv, v_op) in ops.iter().enumerate() {
                        for p in -2..=2 {
                            for q in -2..=2 {
                                let lhs = u_op
                                    .apply(p, &v_op.apply(q, &w).unwrap())
                                    .unwrap()
                                    .sub(&v_op.apply(q, &u_op.apply(p, &w).unwrap()).unwrap());
                                let mut rhs = ModuleVector::zero();
                                for i in 0..=4i64 {
                                    let coeff = h4::scalar::binomial(p, i as u32);
                                    if coeff.is_zero() {
                                        continue;
                                    }
                                    if let Some(op) = products.get(&(iu, iv, i)) {
                                        rhs.add_scaled(
                                            &op.apply(p + q - i, &w).unwrap(),
                                            &coeff,
                                        );
                                    }
                                }
                                assert_eq!(
                                    lhs, rhs,
                                    "family {name}, u = {}, v = {}, p = {p}, q = {q}, w = {w_term}",
                                    operands[iu].0, operands[iv].0
                                );
                                local += 1;
                            }
                        }
                    }
                }
                local
            })
            .sum();
        checked += counted;
    }
    println!("criterion 03 PASS: Borcherds commutator identity on {checked} (family, u, v, p, q, w) instances, u,v in {{a,b,c,d,omega}}, p,q in [-2,2], degree <= 3 cells with charge in [-2,2]");
}

#[test]
fn criterion_04_closed_form_matches_displayed_vectors() {
    // n = 1: c(-1)b(m)1 + b(-1+m)1, here with m = 1
    let spec = ModuleSpec::Gv1 {
        m: 1,
        c0: s(0),
        d0: Scalar::new(1, 2),
    };
    let sv = solve_closed_form(&spec, SingularSide::BSide, 1, 1, BaseLabel::Hw, None).unwrap();
    assert!(sv.verified());
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

    // n = 2: coefficients (1, 1, 2, 2) on c(-2)b(m), c(-1)^2 b(m),
    // c(-1)b(-1+m), b(-2+m), here with m = 2
    let spec = ModuleSpec::Gv1 {
        m: 2,
        c0: s(0),
        d0: s(0),
    };
    let sv = solve_closed_form(&spec, SingularSide::BSide, 2, 1, BaseLabel::Hw, None).unwrap();
    assert!(sv.verified());
    let coeff = |modes: Vec<Mode>| {
        sv.vector
            .coeff(&Term::new(PbwWord::new(modes).unwrap(), BaseLabel::Hw))
    };
    assert_eq!(coeff(vec![Mode::c(-2), Mode::b(2)]), s(1));
    assert_eq!(coeff(vec![Mode::c(-1), Mode::c(-1), Mode::b(2)]), s(1));
    assert_eq!(coeff(vec![Mode::c(-1), Mode::b(1)]), s(2));
    assert_eq!(coeff(vec![Mode::b(0)]), s(2));
    assert_eq!(sv.vector.len(), 4);
    println!("criterion 04 PASS: closed-form singular vectors match the displayed n=1 two-term and n=2 four-term vectors with coefficients (1,1,2,2)");
}

#[test]
fn criterion_05_closed_form_vs_oracle() {
    let engine = Engine::default();
    // epsilon = 1 family, both degenerate lines, n in {1,2,3}
    for n in 1..=3i64 {
        for (side, c0, cell) in [
            (SingularSide::BSide, s(1 - n), GradedCell::new(n + 1, -1)),
            (SingularSide::ASide, s(1 + n), GradedCell::new(n - 1, 1)),
        ] {
            let spec = ModuleSpec::Gv1 {
                m: 1,
                c0,
                d0: Scalar::new(1, 2),
            };
            let sv = solve_closed_form(&spec, side, n, 1, BaseLabel::Hw, None).unwrap();
            assert!(sv.verified());
            assert_eq!(sv.cell, cell);
            let kernel = oracle_singular(&engine, &spec, cell).unwrap();
            assert_eq!(kernel.len(), 1, "side {side:?}, n = {n}");
            assert_eq!(kernel[0], sv.vector.normalized());
        }
    }
    // intermediate-series family at the calibrated mu-degeneracies,
    // n in {1,2}, base v_0
    for n in 1..=2i64 {
        for (side, mu, cell) in [
            (SingularSide::BSide, s(-n), GradedCell::new(n, -1)),
            (SingularSide::ASide, s(n), GradedCell::new(n, 1)),
        ] {
            let spec = ModuleSpec::Third {
                lambda: Scalar::new(1, 5),
                mu,
                nu: Scalar::new(1, 7),
                m: 0,
            };
            let sv = solve_closed_form(&spec, side, n, 1, BaseLabel::Idx(0), None).unwrap();
            assert!(sv.verified());
            assert_eq!(sv.cell, cell);
            let kernel = oracle_singular(&engine, &spec, cell).unwrap();
            assert_eq!(kernel.len(), 1, "third side {side:?}, n = {n}");
            assert_eq!(kernel[0], sv.vector.normalized());
        }
    }
    // powers u^2 and u^3 at n = 1 certify
    for k in 2..=3u32 {
        let spec = ModuleSpec::Gv1 {
            m: 1,
            c0: s(0),
            d0: Scalar::new(1, 2),
        };
        assert!(
            solve_closed_form(&spec, SingularSide::BSide, 1, k, BaseLabel::Hw, None)
                .unwrap()
                .verified()
        );
        let spec = ModuleSpec::Gv1 {
            m: 1,
            c0: s(2),
            d0: Scalar::new(1, 2),
        };
        assert!(
            solve_closed_form(&spec, SingularSide::ASide, 1, k, BaseLabel::Hw, None)
                .unwrap()
                .verified()
        );
    }
    println!("criterion 05 PASS: oracle kernels are one-dimensional and span the closed forms (epsilon=1: n in 1..3 both sides; intermediate-series: n in 1..2 both sides); u^2, u^3 at n=1 certify");
}

#[test]
fn criterion_06_irreducibility_evidence() {
    let engine = Engine::default();
    let families: Vec<(&str, ModuleSpec)> = vec![
        (
            "gv0(2, 1/3)",
            ModuleSpec::Gv0 {
                c0: 2,
                d0: Scalar::new(1, 3),
            },
        ),
        (
            "gv0(-1, 1/3)",
            ModuleSpec::Gv0 {
                c0: -1,
                d0: Scalar::new(1, 3),
            },
        ),
        (
            "gv1(0, 1/2, 0)",
            ModuleSpec::Gv1 {
                m: 0,
                c0: Scalar::new(1, 2),
                d0: s(0),
            },
        ),
        (
            "third(1/5, 3/2, 1/7, 0)",
            ModuleSpec::Third {
                lambda: Scalar::new(1, 5),
                mu: Scalar::new(3, 2),
                nu: Scalar::new(1, 7),
                m: 0,
            },
        ),
    ];
    let mut cells_checked = 0usize;
    for (name, spec) in &families {
        for q in -3..=3i64 {
            let floor = spec.cell_floor(q).unwrap();
            for d in floor.max(1)..=5 {
                let kernel = oracle_singular(&engine, spec, GradedCell::new(d, q)).unwrap();
                assert!(
                    kernel.is_empty(),
                    "family {name} has a singular vector in cell ({d}, {q}): {}",
                    kernel[0]
                );
                cells_checked += 1;
            }
        }
    }
    println!("criterion 06 PASS: oracle singular spaces are empty on all {cells_checked} cells of degree 1..5, charge in [-3,3], for the two first-class, the non-degenerate epsilon=1, and the non-degenerate intermediate-series families");
}

#[test]
fn criterion_07_quotient_isomorphism() {
    // the epsilon = 1 family with m = c(0)-eigenvalue = 2, modulo the
    // singular vector b(2).1, against the first-class family gv0(2, 0).
    // The two canonical gradings differ by the shear
    // (epsilon=1 degree) = (natural degree) - (m+1) * charge
    // on PBW words, so cells are compared along that alignment.
    let engine = Engine::default();
    let m = 2i64;
    let inner = ModuleSpec::Gv1 {
        m,
        c0: s(2),
        d0: s(0),
    };
    let u = apply_word(&inner, &[Mode::b(2)], &one()).unwrap();
    assert!(verify_singular(&inner, &u).unwrap().verified());
    let quotient = ModuleSpec::Quotient {
        inner: Box::new(inner.clone()),
        generators: vec![u],
    };
    let target = ModuleSpec::Gv0 { c0: 2, d0: s(0) };
    let mut nontrivial = 0usize;
    for q in -2..=2i64 {
        for d1 in inner.cell_floor(q).unwrap()..=3 {
            let (quot_dim, _) = quotient_cell(&engine, &quotient, GradedCell::new(d1, q)).unwrap();
            let d0 = d1 + (m + 1) * q;
            let gv0_dim = if target.cell_nonempty(GradedCell::new(d0, q)) {
                engine.cell_dim(&target, GradedCell::new(d0, q)).unwrap()
            } else {
                0
            };
            assert_eq!(
                quot_dim, gv0_dim,
                "mismatch at epsilon=1 cell ({d1}, {q}) vs first-class cell ({d0}, {q})"
            );
            if quot_dim > 0 {
                nontrivial += 1;
            }
        }
    }
    assert!(nontrivial >= 10);
    println!("criterion 07 PASS: the quotient of the epsilon=1 family (m = c0 = 2) by b(2).1 matches gv0(2,0) cell-by-cell on degree <= 3, charge in [-2,2], along the grading shear deg - (m+1)q");
}

#[test]
fn criterion_08_spectral_flow_of_the_vacuum() {
    let engine = Engine::default();
    let window = Window::new(4, -2, 2);
    // flow by k.c sends the vacuum family at d0 to d0 + k
    for k in -2..=2i64 {
        for d0 in [s(0), Scalar::new(1, 3)] {
            let spec = ModuleSpec::Vacuum { d0: d0.clone() };
            let profile = flow_profile(&engine, &spec, &LatticeElement::new(k, 0), window).unwrap();
            assert!(profile.matches(), "alpha = {k}c, d0 = {d0}");
            assert_eq!(
                profile.target,
                ModuleSpec::Vacuum { d0: d0 + s(k) },
                "flow by {k}c"
            );
        }
    }
    // general lattice flow of the level-1 vacuum lands on gv0(m2, m1)
    for m1 in -2..=2i64 {
        for m2 in -2..=2i64 {
            let profile = flow_profile(
                &engine,
                &vacuum(),
                &LatticeElement::new(m1, m2),
                window,
            )
            .unwrap();
            assert!(profile.matches(), "alpha = ({m1}, {m2})");
            if m2 != 0 {
                assert_eq!(
                    profile.target,
                    ModuleSpec::Gv0 {
                        c0: m2,
                        d0: s(m1)
                    }
                );
            }
        }
    }
    println!("criterion 08 PASS: vacuum flow profiles (thresholds, zero-mode eigenvalues, characters on degree <= 4) match V(1, d0+k) for alpha = kc, k in [-2,2], and gv0(m2, m1) for |mi| <= 2");
}

#[test]
fn criterion_09_spectral_flow_of_families() {
    let engine = Engine::default();
    let window = Window::new(4, -2, 2);
    let alphas = [
        LatticeElement::new(1, 0),
        LatticeElement::new(0, 1),
        LatticeElement::new(1, 1),
        LatticeElement::new(0, -1),
    ];
    let gv1 = ModuleSpec::Gv1 {
        m: 1,
        c0: Scalar::new(1, 2),
        d0: Scalar::new(1, 3),
    };
    let third = ModuleSpec::Third {
        lambda: Scalar::new(1, 5),
        mu: Scalar::new(3, 2),
        nu: Scalar::new(1, 7),
        m: 0,
    };
    for alpha in &alphas {
        let profile = flow_profile(&engine, &gv1, alpha, window).unwrap();
        assert!(profile.matches(), "epsilon=1 flow by {alpha}");
        assert_eq!(
            profile.target,
            ModuleSpec::Gv1 {
                m: 1 + alpha.m2,
                c0: Scalar::new(1, 2) + s(alpha.m2),
                d0: Scalar::new(1, 3) + s(alpha.m1),
            }
        );
        let profile = flow_profile(&engine, &third, alpha, window).unwrap();
        assert!(profile.matches(), "intermediate-series flow by {alpha}");
        assert_eq!(
            profile.target,
            ModuleSpec::Third {
                lambda: Scalar::new(1, 5) + s(alpha.m1),
                mu: Scalar::new(3, 2),
                nu: Scalar::new(1, 7),
                m: alpha.m2,
            }
        );
    }
    println!("criterion 09 PASS: epsilon=1 and intermediate-series flow profiles match gv1(m+m2, c0+m2, d0+m1) and third(lambda+m1, mu, nu, m+m2) on degree <= 4, charge in [-2,2], for alpha in {{c, d, c+d, -d}}");
}

#[test]
fn criterion_10_extension_grading_and_collapse() {
    let engine = Engine::default();
    let spec = vacuum();
    let zero = LatticeElement::new(0, 0);

    // L(0) on e^(k1 c + k2 d) (x) (word).1 equals
    // k1 k2 + (sum of mode depths) + k2 (#a - #b)
    let mut monomials = 0usize;
    'outer: for k1 in [-2i64, -1, 1, 2] {
        for k2 in [-2i64, 1, 2] {
            let gamma = LatticeElement::new(k1, k2);
            for d in 0..=3i64 {
                for q in -1..=1i64 {
                    for term in engine
                        .graded_basis(&spec, GradedCell::new(d, q))
                        .unwrap()
                        .iter()
                        .take(1)
                    {
                        let w = ModuleVector::single(term.clone(), Scalar::one());
                        let n_a = term
                            .word
                            .modes()
                            .iter()
                            .filter(|m| matches!(m, Mode::H(Gen::A, _)))
                            .count() as i64;
                        let n_b = term
                            .word
                            .modes()
                            .iter()
                            .filter(|m| matches!(m, Mode::H(Gen::B, _)))
                            .count() as i64;
                        let expected = s(k1 * k2 + d + k2 * (n_a - n_b));
                        let got = extension_mode(&spec, &zero, &omega(), 1, &gamma, &w).unwrap();
                        assert_eq!(
                            got.component(&gamma),
                            w.scale(&expected),
                            "L(0) on e^({k1},{k2}) (x) {term}"
                        );
                        monomials += 1;
                        if monomials >= 24 {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    assert!(monomials >= 20);

    // alpha = beta = 0 collapses to plain field modes; 50 deterministic
    // pseudo-random triples
    let mut pool = Vec::new();
    for d in 0..=2i64 {
        for q in -2..=2i64 {
            pool.extend(
                engine
                    .graded_basis(&spec, GradedCell::new(d, q))
                    .unwrap()
                    .iter()
                    .cloned(),
            );
        }
    }
    let mut state = 0x2545f4914f6cdd1du64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    for trial in 0..50 {
        let u = ModuleVector::single(
            pool[(next() % pool.len() as u64) as usize].clone(),
            Scalar::one(),
        );
        let w = ModuleVector::single(
            pool[(next() % pool.len() as u64) as usize].clone(),
            Scalar::one(),
        );
        let n = (next() % 5) as i64 - 2;
        let ext = extension_mode(&spec, &zero, &u, n, &zero, &w).unwrap();
        let direct = field_mode(&spec, &u, n, &w).unwrap();
        assert_eq!(ext.component(&zero), direct, "trial {trial}");
    }

    // cocycle table and commutator relation on |mi| <= 3
    use h4::lattice::cocycle;
    assert_eq!(cocycle(&LatticeElement::c(), &LatticeElement::c()), 1);
    assert_eq!(cocycle(&LatticeElement::c(), &LatticeElement::d()), -1);
    assert_eq!(cocycle(&LatticeElement::d(), &LatticeElement::d()), 1);
    for m1 in -3..=3 {
        for m2 in -3..=3 {
            for n1 in -3..=3 {
                for n2 in -3..=3 {
                    let a = LatticeElement::new(m1, m2);
                    let b = LatticeElement::new(n1, n2);
                    let lhs = cocycle(&a, &b) * cocycle(&b, &a);
                    let rhs = if a.pairing(&b) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
    println!("criterion 10 PASS: extension L(0)-eigenvalue formula on {monomials} monomials (|k1|,|k2| <= 2, degree <= 3); alpha=beta=0 collapse on 50 pseudo-random triples; cocycle table and commutator relation on |mi| <= 3");
}

#[test]
fn criterion_11_finite_algebra_verma_sanity() {
    let engine = Engine::default();
    // c0 = 0: b.v0 is singular
    let spec = ModuleSpec::H4Verma {
        c0: s(0),
        d0: Scalar::new(2, 7),
    };
    let bv = act(&spec, Mode::b(0), &one()).unwrap();
    let sv = verify_singular(&spec, &bv).unwrap();
    assert!(sv.verified());

    // c0 = 3: no singular vector among b-powers of depth <= 6
    let spec = ModuleSpec::H4Verma {
        c0: s(3),
        d0: Scalar::new(2, 7),
    };
    for depth in 1..=6i64 {
        let kernel = oracle_singular(&engine, &spec, GradedCell::new(0, -depth)).unwrap();
        assert!(kernel.is_empty(), "depth {depth}");
    }
    println!("criterion 11 PASS: in the finite-algebra Verma family, b.v0 is singular iff c(0) = 0 (checked to depth 6 for c(0) = 3)");
}

#[test]
fn criterion_12_character_oracle() {
    // independent oracle: coefficients of prod_(n>=1) (1 - q^n)^(-4),
    // built from the plain partition-counting recurrence and two
    // convolutions — no PBW enumeration involved
    let nmax = 5usize;
    let mut p1 = vec![0u64; nmax + 1];
    p1[0] = 1;
    for part in 1..=nmax {
        for t in part..=nmax {
            p1[t] += p1[t - part];
        }
    }
    let convolve = |a: &[u64], b: &[u64]| {
        let mut out = vec![0u64; nmax + 1];
        for i in 0..=nmax {
            for j in 0..=nmax - i {
                out[i + j] += a[i] * b[j];
            }
        }
        out
    };
    let p2 = convolve(&p1, &p1);
    let p4 = convolve(&p2, &p2);
    assert_eq!(p4, vec![1, 4, 14, 40, 105, 252]);

    let engine = Engine::default();
    let table = character(&engine, &vacuum(), Window::new(5, -5, 5)).unwrap();
    for d in 0..=nmax {
        assert_eq!(
            table.degree_total(d as i64),
            p4[d] as usize,
            "degree {d} total"
        );
    }
    // determinism: a fresh engine reproduces the table exactly
    let again = character(&Engine::default(), &vacuum(), Window::new(5, -5, 5)).unwrap();
    assert_eq!(compare_characters(&table, &again).unwrap(), CompareOutcome::Equal);
    println!("criterion 12 PASS: vacuum character degree totals equal [1, 4, 14, 40, 105, 252], the four-color partition generating function computed independently");
}
