//! Acceptance gate: one test per criterion, each printing a single pass
//! line.  Criteria with pinned runtimes assert them; the experimental zero
//! arrow comparison reports counterexamples instead of failing the build.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use krc_core::bijection::{
    delta, fill_row, fill_two_rows, left_box_split, left_split, phi, phi_inv,
};
use krc_core::crystal::{self, CrystalElement};
use krc_core::kleber::virtual_hw_rcs;
use krc_core::rc::{enumerate_hw, hw_b1_family, hw_b2_family, rc_b1_crystal, TwoRowParams};
use krc_core::statistics::{
    classically_highest, component_multiplicity, lead_cell_r_images, m_polynomials,
    m_polynomials_refined, r_matrix, tensor_elements, x_polynomials, GradeQuadruple, Poly,
};
use krc_core::tableaux::{b1_crystal, psi};
use krc_core::virtualization::{psi_embed, rc_virtualize, virtual_cocharge, virtual_e, virtual_f};
use krc_core::{CartanType, KrTableau, Letter, RiggedConfig, TensorProduct, TensorShape, Weight};

fn shape(factors: &[(u8, u8)]) -> TensorShape {
    TensorShape::new(CartanType::G2, factors.to_vec())
}

fn rc(shape: &TensorShape, parts: &[&[i64]], rigs: &[&[i64]]) -> RiggedConfig {
    let parts: Vec<Vec<i64>> = parts.iter().map(|p| p.to_vec()).collect();
    let rigs: Vec<Vec<i64>> = rigs.iter().map(|r| r.to_vec()).collect();
    RiggedConfig::from_rows(shape.clone(), &parts, &rigs)
}

fn pass(criterion: u32, what: &str) {
    println!("criterion {criterion:02}: pass - {what}");
}

/// The tensor products every bijection criterion ranges over.
fn product_family() -> Vec<Vec<(u8, u8)>> {
    vec![
        vec![(1, 1)],
        vec![(1, 1); 2],
        vec![(1, 1); 3],
        vec![(1, 1); 4],
        vec![(1, 1), (2, 1), (1, 2)],
        vec![(2, 1), (2, 1)],
        vec![(1, 3), (1, 2)],
        vec![(1, 2)],
        vec![(1, 3)],
        vec![(1, 4)],
        vec![(2, 1)],
        vec![(2, 2)],
        vec![(2, 3)],
    ]
}

#[test]
fn criterion_01_affine_letter_crystal() {
    let start = Instant::now();
    let sh = shape(&[(1, 1)]);
    let nodes: BTreeSet<TensorProduct> = tensor_elements(&sh).into_iter().collect();
    assert_eq!(nodes.len(), 8, "the letter crystal has eight elements");

    let mut edges = BTreeSet::new();
    for x in &nodes {
        for a in [0u8, 1, 2] {
            if let Some(y) = x.f(a) {
                edges.insert((x.to_string(), y.to_string(), a));
            }
        }
    }
    let expected: BTreeSet<(String, String, u8)> = [
        ("[[1]]", "[[2]]", 1),
        ("[[2]]", "[[3]]", 2),
        ("[[3]]", "[[0]]", 1),
        ("[[0]]", "[[-3]]", 1),
        ("[[-3]]", "[[-2]]", 2),
        ("[[-2]]", "[[-1]]", 1),
        ("[[E]]", "[[1]]", 0),
        ("[[-1]]", "[[E]]", 0),
        ("[[-3]]", "[[2]]", 0),
        ("[[-2]]", "[[3]]", 0),
    ]
    .into_iter()
    .map(|(a, b, i)| (a.to_string(), b.to_string(), i))
    .collect();
    assert_eq!(edges, expected, "the affine edge set is pinned");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1s");
    pass(
        1,
        "the width one affine crystal has 8 elements and the pinned 10 edges",
    );
}

#[test]
fn criterion_02_highest_weight_enumeration() {
    let start = Instant::now();
    for s in 1..=6u8 {
        let sh = shape(&[(1, s)]);
        let family: Vec<RiggedConfig> = hw_b1_family(s);
        let as_set: BTreeSet<RiggedConfig> = family.iter().cloned().collect();
        assert_eq!(
            as_set.len(),
            family.len(),
            "closed form family is duplicate free at (1,{s})"
        );
        assert_eq!(as_set.len(), s as usize + 1);
        let brute = enumerate_hw(&sh);
        assert_eq!(brute, as_set, "closed form vs direct search at (1,{s})");
        assert_eq!(
            brute,
            virtual_hw_rcs(&sh),
            "direct search vs ambient tree at (1,{s})"
        );
    }
    for s in 1..=4u8 {
        let sh = shape(&[(2, s)]);
        let family: Vec<RiggedConfig> = hw_b2_family(s);
        let as_set: BTreeSet<RiggedConfig> = family.iter().cloned().collect();
        assert_eq!(
            as_set.len(),
            family.len(),
            "closed form family is duplicate free at (2,{s})"
        );
        let brute = enumerate_hw(&sh);
        assert_eq!(brute, as_set, "closed form vs direct search at (2,{s})");
        assert_eq!(
            brute,
            virtual_hw_rcs(&sh),
            "direct search vs ambient tree at (2,{s})"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}, budget 30s");
    pass(
        2,
        "closed form, direct, and ambient tree enumerations agree up to widths 6 and 4",
    );
}

#[test]
fn criterion_03_decomposition_and_grading() {
    for s in 1..=4u8 {
        let family = TwoRowParams::all(s);

        let mut by_lambda: BTreeMap<Weight, i64> = BTreeMap::new();
        for p in &family {
            *by_lambda.entry(p.lambda(s)).or_insert(0) += 1;
        }
        for m1 in 0..=s as i64 {
            for m2 in 0..=s as i64 {
                let lam = Weight::new(CartanType::G2, &[m1, m2]);
                assert_eq!(
                    by_lambda.get(&lam).copied().unwrap_or(0),
                    component_multiplicity(s, &lam),
                    "multiplicity of {lam} at width {s}"
                );
            }
        }

        let mut cc_side: BTreeMap<Weight, Poly> = BTreeMap::new();
        for p in &family {
            *cc_side.entry(p.lambda(s)).or_default() += &Poly::q_power(p.cocharge());
        }
        let mut grade_side: BTreeMap<Weight, Poly> = BTreeMap::new();
        for g in GradeQuadruple::all(s) {
            *grade_side.entry(g.weight(s)).or_default() += &Poly::q_power(g.grade());
        }
        assert_eq!(cc_side, grade_side, "graded multiplicities at width {s}");
    }
    pass(
        3,
        "two-row multiplicities and their gradings match the closed formulas up to width 4",
    );
}

#[test]
fn criterion_04_peeling_golden_vectors() {
    let sh = shape(&[(1, 1), (2, 1), (1, 2)]);
    let rest = shape(&[(2, 1), (1, 2)]);

    let (b, out) = delta(&rc(&sh, &[&[4, 1], &[4]], &[&[3, 1], &[-2]]));
    assert_eq!(b, Letter::Three);
    assert_eq!(out, rc(&rest, &[&[4], &[3]], &[&[3], &[-2]]));
    assert_eq!(out.vacancies(), vec![vec![3], vec![-2]]);

    let (b, out) = delta(&rc(&sh, &[&[4, 1], &[4]], &[&[5, 1], &[-2]]));
    assert_eq!(b, Letter::TwoBar);
    assert_eq!(out, rc(&rest, &[&[2], &[2]], &[&[4], &[-1]]));

    let (b, out) = delta(&rc(
        &sh,
        &[&[2, 2, 2, 1, 1], &[2, 1, 1]],
        &[&[-1, -1, -1, 1, -1], &[1, 0, 0]],
    ));
    assert_eq!(b, Letter::OneBar);
    assert_eq!(
        out,
        rc(&rest, &[&[2, 1, 1], &[1, 1]], &[&[-1, 1, -1], &[0, 0]])
    );
    assert_eq!(out.vacancies(), vec![vec![0, 1, 1], vec![0, 0]]);

    // The full chain on the running configuration, intermediate states
    // included.
    let start = rc(&sh, &[&[4, 1], &[4]], &[&[3, 1], &[-2]]);

    let (b, step1) = delta(&start);
    assert_eq!(b, Letter::Three);
    assert_eq!(step1, rc(&rest, &[&[4], &[3]], &[&[3], &[-2]]));

    let step2 = left_box_split(&step1);
    assert_eq!(
        step2,
        rc(
            &shape(&[(1, 1), (1, 1), (1, 2)]),
            &[&[4, 1], &[3]],
            &[&[3, 2], &[-2]]
        )
    );

    let (b, step3) = delta(&step2);
    assert_eq!(b, Letter::ThreeBar);
    assert_eq!(
        step3,
        rc(&shape(&[(1, 1), (1, 2)]), &[&[2], &[2]], &[&[5], &[-2]])
    );

    let (b, step4) = delta(&step3);
    assert_eq!(b, Letter::Three);
    assert_eq!(step4, rc(&shape(&[(1, 2)]), &[&[1], &[1]], &[&[2], &[-1]]));

    let step5 = left_split(&step4);
    let (b, step6) = delta(&step5);
    assert_eq!(b, Letter::One);
    assert_eq!(step6, rc(&shape(&[(1, 1)]), &[&[1], &[1]], &[&[2], &[-1]]));

    let (b, step7) = delta(&step6);
    assert_eq!(b, Letter::Three);
    assert!(step7.nu().iter().all(|v| v.is_empty()));

    let product = phi(&start);
    assert_eq!(
        product.to_string(),
        "[[3]] \u{2297} [[3],[-3]] \u{2297} [[1,3]]"
    );
    assert_eq!(phi_inv(&product), start);

    pass(
        4,
        "the three peeling vectors and the full chain reproduce bit for bit",
    );
}

#[test]
fn criterion_05_bijectivity_and_inversion() {
    for factors in product_family() {
        let sh = shape(&factors);
        let hw = enumerate_hw(&sh);
        let mut images = BTreeSet::new();
        for rc in &hw {
            let t = phi(rc);
            assert_eq!(t.weight(), rc.weight(), "weight preserved on {rc}");
            assert!(
                t.e(1).is_none() && t.e(2).is_none(),
                "image of {rc} is classically highest"
            );
            assert_eq!(phi_inv(&t), *rc, "inversion on {rc}");
            images.insert(t);
        }
        assert_eq!(images.len(), hw.len(), "injectivity on {sh}");
        let targets: BTreeSet<TensorProduct> = classically_highest(&sh).into_iter().collect();
        assert_eq!(images, targets, "surjectivity on {sh}");
    }
    pass(5, "the correspondence is a weight preserving bijection with two-sided inverse on all 13 products");
}

#[test]
fn criterion_06_classical_intertwining() {
    let mut total = 0usize;
    for factors in product_family() {
        let sh = shape(&factors);
        let elements = tensor_elements(&sh);
        assert!(elements.len() <= 100_000, "node cap exceeded on {sh}");
        total += elements.len();
        for x in &elements {
            let rc = phi_inv(x);
            for a in [1u8, 2] {
                assert_eq!(x.f(a).map(|y| phi_inv(&y)), rc.f(a), "lowering {a} at {x}");
                assert_eq!(x.e(a).map(|y| phi_inv(&y)), rc.e(a), "raising {a} at {x}");
            }
        }
    }
    pass(
        6,
        &format!("classical operators commute with the correspondence on all {total} elements"),
    );
}

#[test]
fn criterion_07_filling_tables() {
    use Letter::*;
    let col = |cells: &[&[Letter]]| {
        KrTableau::new(
            2,
            cells[0].len() as u8,
            cells.iter().map(|r| r.to_vec()).collect(),
        )
    };
    let params = |k1, k2, k3, k4| TwoRowParams { k1, k2, k3, k4 };

    // Width one: the four columns.
    let table1: Vec<(TwoRowParams, KrTableau)> = vec![
        (params(0, 0, 0, 0), col(&[&[One], &[Two]])),
        (params(0, 1, 0, 0), col(&[&[One], &[Zero]])),
        (params(0, 1, 0, 1), col(&[&[One], &[Empty]])),
        (params(1, 0, 0, 0), col(&[&[Empty], &[Empty]])),
    ];
    // Width two: the eleven fillings.
    let table2: Vec<(TwoRowParams, KrTableau)> = vec![
        (params(0, 0, 0, 0), col(&[&[One, One], &[Two, Two]])),
        (params(0, 1, 0, 0), col(&[&[One, One], &[Two, Zero]])),
        (params(0, 1, 0, 1), col(&[&[One, One], &[Two, Empty]])),
        (params(1, 0, 0, 0), col(&[&[One, Empty], &[Two, Empty]])),
        (params(0, 2, 1, 0), col(&[&[Three, One], &[ThreeBar, Two]])),
        (params(2, 0, 0, 0), col(&[&[Zero, One], &[OneBar, Empty]])),
        (params(0, 2, 0, 0), col(&[&[Two, One], &[Three, Empty]])),
        (params(0, 2, 0, 1), col(&[&[Three, One], &[Zero, Two]])),
        (params(0, 2, 0, 2), col(&[&[One, One], &[TwoBar, Two]])),
        (params(1, 1, 0, 0), col(&[&[Zero, One], &[Zero, Zero]])),
        (params(1, 1, 0, 1), col(&[&[Two, One], &[TwoBar, Zero]])),
    ];
    for (s, table) in [(1u8, &table1), (2u8, &table2)] {
        assert_eq!(TwoRowParams::all(s).len(), table.len());
        for (p, expected) in table {
            assert_eq!(
                fill_two_rows(s, p),
                *expected,
                "filling of {p:?} at width {s}"
            );
        }
    }

    // Long partial rows close with the alternating tail, padded by the
    // blank when a cell is left over.
    let head = [Three, Zero, TwoBar, TwoBar, OneBar];
    assert_eq!(
        KrTableau::from_partial_row(9, &head).to_string(),
        "[[3,0,-2,-2,-1,-1,1,-1,1]]"
    );
    assert_eq!(
        KrTableau::from_partial_row(8, &head).to_string(),
        "[[3,0,-2,-2,-1,-1,1,E]]"
    );

    // The filling is the correspondence composed with the parameter
    // indexing of highest configurations.
    for s in 1..=3u8 {
        for p in TwoRowParams::all(s) {
            let filled = fill_two_rows(s, &p);
            assert_eq!(
                phi(&p.rc(s)).factors(),
                &[filled],
                "filling vs correspondence at {p:?}, width {s}"
            );
        }
        for (k, member) in hw_b1_family(s).iter().enumerate() {
            assert_eq!(phi(member).factors(), &[fill_row(s, k as u8)]);
        }
    }
    pass(
        7,
        "both filling tables, the long row examples, and the correspondence identity hold",
    );
}

#[test]
fn criterion_08_r_matrix() {
    for s in 1..=5u8 {
        for (input, image) in lead_cell_r_images(s) {
            assert_eq!(
                r_matrix(&input, 0),
                image,
                "leading cell image at width {s}"
            );
        }
    }

    // R against the correspondence on the mixed pair: a weight preserving
    // classical isomorphism squaring to the identity.
    let sh = shape(&[(1, 1), (2, 1)]);
    for x in tensor_elements(&sh) {
        let once = r_matrix(&x, 0);
        assert_eq!(once.shape(), [(2, 1), (1, 1)]);
        assert_eq!(once.weight(), x.weight());
        assert_eq!(r_matrix(&once, 0), x, "involution at {x}");
        for a in [1u8, 2] {
            assert_eq!(
                x.f(a).map(|y| r_matrix(&y, 0)),
                once.f(a),
                "lowering {a} at {x}"
            );
        }
    }

    // Involution on classically highest pairs of rows.
    for s1 in 1..=4u8 {
        for s2 in 1..=4u8 {
            if s1 + s2 > 5 {
                continue;
            }
            let sh = shape(&[(1, s1), (1, s2)]);
            for x in classically_highest(&sh) {
                let once = r_matrix(&x, 0);
                assert_eq!(once.weight(), x.weight());
                assert_eq!(r_matrix(&once, 0), x, "involution at {x}");
            }
        }
    }
    pass(
        8,
        "the leading cell table holds to width 5 and R is a classical involution",
    );
}

#[test]
fn criterion_09_graded_character_identity() {
    let start = Instant::now();
    let cases = [
        vec![(1, 1)],
        vec![(1, 1); 2],
        vec![(1, 1); 3],
        vec![(1, 1); 4],
        vec![(1, 2), (1, 1)],
        vec![(1, 2), (1, 2)],
        vec![(1, 3), (1, 2)],
    ];
    for factors in cases {
        let sh = shape(&factors);
        let x = x_polynomials(&sh);
        let m = m_polynomials(&sh);
        let mb = m_polynomials_refined(&sh);
        assert_eq!(m, mb, "both fermionic routes agree on {sh}");
        assert_eq!(x, m, "graded characters agree on {sh}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}, budget 5min");
    pass(
        9,
        "one-dimensional sums equal both fermionic sums on all seven products",
    );
}

#[test]
fn criterion_10_cocharge_shift_and_invariance() {
    // The box split's cocharge shift.  Configuration data is independent of
    // the factor order, so the mixed product is taken with its column
    // factor leading.
    for factors in [
        vec![(2, 1), (1, 1), (1, 2)],
        vec![(2, 1), (2, 1)],
        vec![(2, 1)],
    ] {
        let sh = shape(&factors);
        let rows = factors.iter().filter(|&&(r, _)| r == 1).count() as i64;
        for rc in enumerate_hw(&sh) {
            assert_eq!(
                left_box_split(&rc).cocharge(),
                rc.cocharge() + 1 + rows,
                "shift at {rc}"
            );
        }
    }

    // Classical invariance of the cocharge over full crystals.
    for factors in [
        vec![(1, 1)],
        vec![(1, 2)],
        vec![(1, 3)],
        vec![(2, 1)],
        vec![(2, 2)],
        vec![(2, 3)],
    ] {
        let sh = shape(&factors);
        let closure = crystal::generate_closure(enumerate_hw(&sh), &[1, 2]);
        for x in &closure {
            for a in [1u8, 2] {
                if let Some(y) = x.f(a) {
                    assert_eq!(y.cocharge(), x.cocharge(), "invariance along {a} at {x}");
                }
            }
        }
    }
    pass(
        10,
        "the box split shifts the cocharge as predicted and the cocharge is classically invariant",
    );
}

#[test]
fn criterion_11_virtualization() {
    let survey = |set: &BTreeSet<RiggedConfig>| {
        for rc in set {
            let image = rc_virtualize(rc);
            assert_eq!(
                image.weight(),
                psi_embed(&rc.weight()),
                "folded weight at {rc}"
            );
            assert_eq!(virtual_cocharge(rc), rc.cocharge(), "cocharge at {rc}");
            for a in [1u8, 2] {
                assert_eq!(
                    rc.f(a).map(|y| rc_virtualize(&y)),
                    virtual_f(a, &image),
                    "lowering {a} at {rc}"
                );
                assert_eq!(
                    rc.e(a).map(|y| rc_virtualize(&y)),
                    virtual_e(a, &image),
                    "raising {a} at {rc}"
                );
            }
        }
    };
    let mut total = 0usize;
    for s in 1..=3u8 {
        let set = rc_b1_crystal(s);
        total += set.len();
        survey(&set);
    }
    for s in 1..=2u8 {
        let set = crystal::generate_closure(hw_b2_family(s), &[1, 2]);
        total += set.len();
        survey(&set);
    }
    pass(11, &format!("the ambient embedding folds weights, operators, and cocharge on all {total} configurations"));
}

#[test]
fn criterion_12_experimental_zero_arrows() {
    // Conjectural: mismatches are reported as counterexamples, never as
    // test failures.
    let mut counterexamples = Vec::new();
    for s in 1..=2u8 {
        for rc in rc_b1_crystal(s).iter() {
            let t = phi(rc);
            let cases = [
                ("f", t.f(0), rc.affine_f0().map(|y| phi(&y))),
                ("e", t.e(0), rc.affine_e0().map(|y| phi(&y))),
            ];
            for (dir, coordinate, experimental) in cases {
                if coordinate != experimental {
                    counterexamples.push(format!("zero {dir} differs at {rc}"));
                }
            }
        }
    }

    // Width one graph comparison through the correspondence.
    let edge_set = |edges: Vec<(TensorProduct, TensorProduct, u8)>| -> BTreeSet<_> {
        edges.into_iter().collect()
    };
    let rc_edges = edge_set(
        rc_b1_crystal(1)
            .iter()
            .flat_map(|rc| {
                [0u8, 1, 2].into_iter().filter_map(|a| {
                    let image = if a == 0 { rc.affine_f0() } else { rc.f(a) };
                    image.map(|y| (phi(rc), phi(&y), a))
                })
            })
            .collect(),
    );
    let tableau_edges = edge_set(
        tensor_elements(&shape(&[(1, 1)]))
            .iter()
            .flat_map(|x| {
                [0u8, 1, 2]
                    .into_iter()
                    .filter_map(|a| x.f(a).map(|y| (x.clone(), y, a)))
            })
            .collect(),
    );
    if rc_edges != tableau_edges {
        counterexamples.push("the width one graphs differ".to_string());
    }

    if counterexamples.is_empty() {
        pass(
            12,
            "experimental zero arrows agree with the coordinate model at widths 1 and 2",
        );
    } else {
        for c in &counterexamples {
            println!("criterion 12: CONJECTURE-FAIL - {c}");
        }
        println!(
            "criterion 12: {} conjecture counterexamples reported (not a build error)",
            counterexamples.len()
        );
    }
}

#[test]
fn criterion_13_bar_involution() {
    let mut total = 0usize;
    for s in 1..=3u8 {
        for b in b1_crystal(s) {
            let image = psi(&b);
            assert_eq!(
                image.weight(),
                Weight::zero(CartanType::G2) - b.weight(),
                "weight negation at {b}"
            );
            for a in [1u8, 2] {
                assert_eq!(image.eps(a), b.phi(a), "statistic swap at {b}");
                assert_eq!(image.phi(a), b.eps(a), "statistic swap at {b}");
                assert_eq!(b.f(a).map(|y| psi(&y)), image.e(a), "operator swap at {b}");
            }
            total += 1;
        }
    }
    pass(
        13,
        &format!("the bar involution swaps the statistics pointwise on all {total} rows"),
    );
}
