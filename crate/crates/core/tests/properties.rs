use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use pi1sl2::gamma::{circle_degree_pair, complex_product};
use pi1sl2::ring::{invert_unit, nilradical_reduce};
use pi1sl2::sample;
use pi1sl2::winding::oracle::sampled_sign_changes;
use pi1sl2::winding::{winding_details, UniPoly};
use pi1sl2::{
    basepoint_shift_homotopy, complete_row, free_homotopy_h, gamma_product, generator_loop,
    graded_homotopy, isolate_real_roots, lift_loop_mod_nil, loop_product, parse_poly,
    print_canonical, run_job, verify_homotopy, verify_loop, winding_number, Elem, HomotopyCert,
    JobOptions, LoopRep, Mat2, MultiPoly, Ring, RingElement,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn q() -> Ring {
    Ring::rationals()
}

fn localized() -> Ring {
    let base = Ring::polynomial(q(), &["y"]).unwrap();
    Ring::localization(base, Elem::Poly(parse_poly("y", &q()).unwrap())).unwrap()
}

fn rings() -> Vec<Ring> {
    vec![
        Ring::integers(),
        q(),
        Ring::dual(3).unwrap(),
        Ring::polynomial(q(), &["y"]).unwrap(),
        Ring::circle(),
        localized(),
        Ring::product(q(), Ring::dual(2).unwrap()),
    ]
}

/// A random element of `ring`, built from coordinates and small rationals.
fn element(r: &mut ChaCha8Rng, ring: &Ring) -> RingElement {
    use pi1sl2::ring::RingDescriptor as D;
    match ring.descriptor() {
        D::Integers => RingElement::from_i64(ring, r.gen_range(-20..=20)),
        D::Localization { base, .. } => {
            let num = element(r, base).into_value();
            RingElement::new(
                ring,
                Elem::Frac {
                    num: Box::new(num),
                    power: r.gen_range(0..=2),
                },
            )
        }
        D::Product(a, b) => RingElement::new(
            ring,
            Elem::Pair(Box::new(element(r, a).into_value()), Box::new(element(r, b).into_value())),
        ),
        _ => {
            let names = ring.coordinate_names();
            let vars: Vec<&str> = names.iter().map(String::as_str).collect();
            let p = sample::poly(r, &q(), &vars, 3, 3);
            let lifted = parse_poly(&print_canonical(&p), ring).unwrap();
            RingElement::new(ring, lifted.constant_value().unwrap())
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        for ring in rings() {
            let (a, b, c) = (element(&mut r, &ring), element(&mut r, &ring), element(&mut r, &ring));
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn reduction_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ring = Ring::dual(4).unwrap();
        let (a, b) = (element(&mut r, &ring), element(&mut r, &ring));
        let lhs = nilradical_reduce(&a.mul(&b).unwrap()).unwrap();
        let rhs = nilradical_reduce(&a).unwrap().mul(&nilradical_reduce(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quotient_canonical_form_is_idempotent(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ring = Ring::circle();
        let raw = sample::poly(&mut r, &q(), &["x", "y"], 5, 5);
        let once = ring.canonical(Elem::Poly(raw));
        prop_assert_eq!(ring.canonical(once.clone()), once);
    }

    #[test]
    fn loops_have_unit_determinant_and_identity_ends(seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = sample::elementary_loop(&mut r, &q(), "T", &["X"], 3);
        prop_assert!(l.matrix().det().is_one());
        prop_assert!(l.matrix().at("T", 0).is_identity());
        prop_assert!(l.matrix().at("T", 1).is_identity());
    }

    #[test]
    fn mutated_certificates_are_rejected(seed in any::<u64>(), i in 0usize..2, j in 0usize..2) {
        let mut r = rng(seed);
        let a = sample::elementary_loop(&mut r, &q(), "T", &["X"], 2);
        let cert = basepoint_shift_homotopy(&a, "X", "S").unwrap();
        prop_assert!(verify_homotopy(&cert).is_ok());
        let ring = cert.matrix.ring().clone();
        let ts = &MultiPoly::var(&ring, "T") * &MultiPoly::var(&ring, "S");
        let mut rows = cert.matrix.rows().clone();
        rows[i][j] = &rows[i][j] + &ts;
        let bad = HomotopyCert::new(Mat2::from_rows(rows).unwrap(), "T", "S", cert.start.clone(), cert.end.clone());
        prop_assert!(!verify_homotopy(&bad).is_ok());
    }

    #[test]
    fn loop_product_is_associative_with_unit(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ls: Vec<LoopRep> = (0..3).map(|_| sample::elementary_loop(&mut r, &q(), "T", &[], 2)).collect();
        let left = loop_product(&loop_product(&ls[0], &ls[1]).unwrap(), &ls[2]).unwrap();
        let right = loop_product(&ls[0], &loop_product(&ls[1], &ls[2]).unwrap()).unwrap();
        prop_assert_eq!(left.matrix(), right.matrix());
        let one = LoopRep::constant(&q(), "T");
        prop_assert_eq!(loop_product(&one, &ls[0]).unwrap().into_matrix(), ls[0].matrix().clone());
        prop_assert_eq!(loop_product(&ls[0], &one).unwrap().into_matrix(), ls[0].matrix().clone());
    }

    #[test]
    fn substitution_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ring = q();
        let a = sample::poly(&mut r, &ring, &["X", "T"], 4, 4);
        let b = sample::poly(&mut r, &ring, &["X", "T"], 4, 4);
        let v = sample::poly(&mut r, &ring, &["T", "S"], 2, 3);
        prop_assert_eq!((&a * &b).subs("X", &v), &a.subs("X", &v) * &b.subs("X", &v));
    }

    #[test]
    fn lifting_then_reducing_is_the_identity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let target = Ring::dual(3).unwrap();
        let bar = sample::elementary_loop(&mut r, &q(), "X", &[], 2);
        let eps = MultiPoly::constant(&target, target.coordinate("eps").unwrap());
        let emb = bar.matrix().embed(&target).unwrap();
        let chosen = emb.map(|p| p + &(&eps * &sample::poly(&mut rng(seed ^ 1), &target, &["X"], 2, 2)));
        let lifted = lift_loop_mod_nil(&bar, &target, &chosen).unwrap();
        prop_assert_eq!(&lifted.matrix().reduce_nil(), bar.matrix());
    }

    #[test]
    fn graded_and_basepoint_boundaries(seed in any::<u64>()) {
        let mut r = rng(seed);
        let b = sample::elementary_loop(&mut r, &q(), "X", &["x1"], 2);
        let (cert, beta0) = graded_homotopy(&b, &["x1"], "T").unwrap();
        prop_assert_eq!(&cert.matrix.at("T", 1), b.matrix());
        prop_assert!(!beta0.matrix().vars().iter().any(|v| v == "x1"));
        let a = sample::elementary_loop(&mut r, &q(), "T", &["X"], 2);
        let shift = basepoint_shift_homotopy(&a, "X", "S").unwrap();
        prop_assert_eq!(&shift.matrix.at("S", 1), a.matrix());
    }

    #[test]
    fn walk_closes_in_whole_turns(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (w, _) = sample::generator_word(&mut r);
        let d = winding_details(&pi1sl2::PlaneLoop::first_column(&w).unwrap()).unwrap();
        prop_assert_eq!(d.quarter_turns % 4, 0);
        prop_assert_eq!(d.quarter_turns / 4, d.winding);
    }

    #[test]
    fn free_homotopy_preserves_winding(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, _) = sample::generator_word(&mut r);
        let b = if r.gen_bool(0.5) { generator_loop() } else { sample::elementary_loop(&mut r, &q(), "T", &[], 1) };
        let h = free_homotopy_h(&a, &b, "s").unwrap();
        prop_assert!(h.report.is_ok());
        if let (Ok(l0), Ok(l1)) = (h.at(0), h.at(1)) {
            if let (Ok(w0), Ok(w1)) = (winding_number(&l0), winding_number(&l1)) {
                prop_assert_eq!(w0, w1);
            }
        }
    }

    #[test]
    fn sturm_counts_match_dense_sampling(roots in proptest::collection::btree_set(1u32..40, 0..6), lead in 1i64..5) {
        let ring = q();
        let mut text = lead.to_string();
        for k in &roots {
            text.push_str(&format!("*(T - {k}/40)"));
        }
        let p = parse_poly(&text, &ring).unwrap();
        let iso = isolate_real_roots(&p, "T").unwrap();
        let u = UniPoly::from_multi(&p, "T").unwrap();
        prop_assert_eq!(iso.sturm_count(), roots.len());
        prop_assert_eq!(sampled_sign_changes(&u, 4096), roots.len());
    }

    #[test]
    fn completion_and_gamma_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (sample::unimodular_row(&mut r, "T"), sample::unimodular_row(&mut r, "T"));
        let c = complete_row(&x);
        prop_assert!(c.det().is_one());
        prop_assert_eq!(c.column(0), (x.a.clone(), x.b.clone()));
        let id = pi1sl2::UnimodRow::identity(&q());
        let left = gamma_product(&id, &x).unwrap();
        let right = gamma_product(&x, &id).unwrap();
        prop_assert_eq!((&left.a, &left.b), (&x.a, &x.b));
        prop_assert_eq!((&right.a, &right.b), (&x.a, &x.b));
        let (m, n) = (complete_row(&x), complete_row(&y));
        let first = (
            &(m.get(0, 0) * n.get(0, 0)) + &(m.get(0, 1) * n.get(1, 0)),
            &(m.get(1, 0) * n.get(0, 0)) + &(m.get(1, 1) * n.get(1, 0)),
        );
        let prod = gamma_product(&x, &y).unwrap();
        prop_assert_eq!((prod.a, prod.b), first);
    }
}

#[test]
fn units_invert() {
    let mut r = rng(11);
    let dual = Ring::dual(4).unwrap();
    let loc = localized();
    let y = RingElement::new(&loc, Elem::Frac { num: Box::new(Elem::Poly(parse_poly("y", &q()).unwrap())), power: 0 });
    for i in 0..500 {
        let mut c = sample::small_rational(&mut r);
        if c == num_rational::BigRational::from_integer(0.into()) {
            c = num_rational::BigRational::from_integer((i % 7 + 1).into());
        }
        let units = [
            RingElement::from_rational(&q(), &c).unwrap(),
            RingElement::from_i64(&Ring::integers(), if i % 2 == 0 { 1 } else { -1 }),
            {
                let e = element(&mut r, &dual);
                let nil = e.sub(&RingElement::from_rational(&dual, &dual_constant(&e)).unwrap()).unwrap();
                RingElement::from_rational(&dual, &c).unwrap().add(&nil).unwrap()
            },
            {
                let mut u = RingElement::from_rational(&loc, &c).unwrap();
                for _ in 0..(i % 4) {
                    u = u.mul(&y).unwrap();
                }
                u
            },
        ];
        for u in units {
            let inv = invert_unit(&u).unwrap();
            assert!(u.mul(&inv).unwrap().ring().is_one(u.mul(&inv).unwrap().value()), "{u}");
        }
    }
}

fn dual_constant(e: &RingElement) -> num_rational::BigRational {
    match e.value() {
        Elem::Dual(c) => c[0].clone(),
        other => panic!("not a dual number: {other:?}"),
    }
}

#[test]
fn circle_degree_adds_over_powers() {
    let a = Ring::circle();
    let (x, y) = (parse_poly("x", &a).unwrap(), parse_poly("y", &a).unwrap());
    let mut powers = vec![(parse_poly("1", &a).unwrap(), parse_poly("0", &a).unwrap())];
    for k in 1..=3 {
        let (p, q) = powers.last().unwrap().clone();
        powers.push(complex_product((&p, &q), (&x, &y)));
        assert_eq!(circle_degree_pair(&powers[k].0, &powers[k].1).unwrap(), k as i64);
    }
    for i in 0..=3 {
        for j in 0..=3 - i {
            let (p, q) = complex_product((&powers[i].0, &powers[i].1), (&powers[j].0, &powers[j].1));
            assert_eq!(circle_degree_pair(&p, &q).unwrap(), (i + j) as i64);
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let job = json!({
        "command": "verify-loop",
        "matrix": [["1", "T*(T-1)"], ["0", "1 + T"]],
        "loop_var": "T"
    });
    let a = run_job(&job, &JobOptions::default()).to_json();
    let b = run_job(&job, &JobOptions::default()).to_json();
    assert_eq!(a, b);
    assert_eq!(a["exit_code"], 1);
    let suite = json!({ "command": "paper-suite" });
    assert_eq!(
        run_job(&suite, &JobOptions::default()).to_json(),
        run_job(&suite, &JobOptions::default()).to_json()
    );
}

#[test]
fn verified_loop_round_trip() {
    let l = generator_loop();
    assert!(verify_loop(l.matrix(), "T").is_ok());
}
