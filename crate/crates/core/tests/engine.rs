mod common;

use common::*;
use distinction_core::engine::strata;
use distinction_core::sweep::{sweep_universe, Window};
use distinction_core::{
    classify_ladder, classify_standard, key_lemma_check, matching_involutions, mult_one_bound,
    stratum_hom_bound, CosetInvolution, Error, KeyLemmaVerdict, Kind, MsOp, Multisegment,
    Realization, Segment, Universe, Verdict, Q,
};
use proptest::prelude::*;

// Jacquet pieces read straight off the support, top down.
fn brute_pieces(u: &Universe, r: &Realization, w: &CosetInvolution) -> Vec<Option<Segment>> {
    let mut out = Vec::new();
    for (s, parts) in r.segments().iter().zip(w.refinement()) {
        let d = u.degree(s.tower()) as usize;
        if parts.iter().any(|p| p % d != 0) {
            out.extend(parts.iter().map(|_| None));
            continue;
        }
        let mut top = s.b();
        for p in parts {
            let n = (p / d) as i64;
            let bottom = top - Q::from_integer(n - 1);
            out.push(Some(Segment::new(s.tower(), bottom, top).unwrap()));
            top = bottom - Q::from_integer(1);
        }
    }
    out
}

fn brute_bound(u: &Universe, r: &Realization, w: &CosetInvolution) -> u32 {
    let pieces = brute_pieces(u, r, w);
    if pieces.iter().any(|p| p.is_none()) {
        return 0;
    }
    let pieces: Vec<Segment> = pieces.into_iter().flatten().collect();
    for i in 0..pieces.len() {
        let e = w.eps(i);
        let p = pieces[i];
        // Galois-contragredient: tower gd, endpoints (-b, -a)
        let gd = Segment::new(u.gd(p.tower()), -p.b(), -p.a()).unwrap();
        if e == i {
            let fixed = gd == p;
            let trivial = u.gamma_of_line(&p.line()) == Some(0);
            if !(fixed && trivial) {
                return 0;
            }
        } else if pieces[e] != gd {
            return 0;
        }
    }
    1
}

fn small_ms() -> impl Strategy<Value = (usize, Multisegment)> {
    (0..3usize).prop_flat_map(|i| {
        let u = universe_of(i);
        (Just(i), multisegment_in(declared(&u), 3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn strata_match_brute_force((i, m) in small_ms()) {
        let u = universe_of(i);
        let r = m.realization();
        let table = strata(&u, &r).unwrap();
        let mut total = 0;
        for s in &table {
            prop_assert_eq!(&s.pieces, &brute_pieces(&u, &r, &s.w));
            prop_assert_eq!(s.hom_bound, brute_bound(&u, &r, &s.w));
            prop_assert_eq!(s.matched, s.hom_bound == 1);
            prop_assert_eq!(s.failure_reason.is_none(), s.matched);
            total += s.hom_bound as usize;
        }
        prop_assert_eq!(mult_one_bound(&u, &r).unwrap(), total);
    }

    #[test]
    fn standard_verdicts_are_sound((i, m) in any_ms(6)) {
        let u = universe_of(i);
        let rep = match classify_standard(&u, &m) {
            Ok(r) => r,
            Err(Error::GammaUndefined(_)) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        for k in Kind::BOTH {
            if rep.verdict(k) == Verdict::Yes {
                prop_assert!(!matching_involutions(&u, &m, k).unwrap().is_empty());
            }
        }
        if m.is_conjugate_selfdual(&u) {
            prop_assert!(rep.verdict(Kind::Trivial) != Verdict::Unknown || rep.verdict(Kind::Eta) != Verdict::Unknown);
        }
        // chi exchanges the two kinds
        let chi = classify_standard(&u, &m.apply(&u, MsOp::Chi)).unwrap();
        prop_assert_eq!((chi.dist, chi.eta), (rep.eta, rep.dist));
    }

    #[test]
    fn symmetric_ladders_follow_the_parity_law((g, l) in symmetric_ladder_on_t()) {
        let u = sweep_universe(g);
        let shape = l.ladder_shape().unwrap();
        let k = shape.proper_decomposition().len();
        let t = l.len() as i64;
        let gamma = u.gamma_of_line(&shape.line()).unwrap() as i64;
        let rep = classify_ladder(&u, &l).unwrap();
        if k % 2 == 0 {
            prop_assert_eq!((rep.dist, rep.eta), (Verdict::Yes, Verdict::Yes));
        } else {
            let yes = Kind::from_parity(gamma + t + 1);
            prop_assert_eq!(rep.verdict(yes), Verdict::Yes);
            prop_assert_eq!(rep.verdict(yes.other()), Verdict::No);
        }
        let chi = classify_ladder(&u, &l.apply(&u, MsOp::Chi)).unwrap();
        prop_assert_eq!((chi.dist, chi.eta), (rep.eta, rep.dist));
    }

    #[test]
    fn ladder_yes_never_meets_standard_no((g, l) in prop_oneof![ladder_on_t(), symmetric_ladder_on_t()]) {
        let u = sweep_universe(g);
        let lad = classify_ladder(&u, &l).unwrap();
        let std = classify_standard(&u, &l).unwrap();
        for k in Kind::BOTH {
            if lad.verdict(k) == Verdict::Yes {
                prop_assert!(std.verdict(k) != Verdict::No, "{} {k}", l.display(&u));
            }
            if std.verdict(k) == Verdict::No {
                prop_assert_eq!(lad.verdict(k), Verdict::No);
            }
        }
    }

    #[test]
    fn key_lemma_on_wider_windows((i, m) in small_ms()) {
        let u = universe_of(i);
        let r = m.realization();
        prop_assert_eq!(key_lemma_check(&u, &r).unwrap(), KeyLemmaVerdict::Pass);
    }
}

#[test]
fn multiplicity_two_for_a_repeated_segment() {
    let u = sweep_universe(0);
    let t = u.lookup("T").unwrap();
    let s = Segment::new(t, Q::from_integer(-1), Q::from_integer(1)).unwrap();
    let r = Realization::new(vec![s, s]);
    assert_eq!(mult_one_bound(&u, &r).unwrap(), 2);
    let _ = Window::default();
    let w = &distinction_core::enumerate_w2(&r.composition(&u), None)[0];
    assert!(stratum_hom_bound(&u, &r, w).is_ok());
}

#[test]
fn deriv_consistency_on_a_wider_window() {
    use distinction_core::deriv_consistency_check;
    use distinction_core::sweep::{ladders, window_segments};
    use distinction_core::DerivVerdict;
    let w = Window {
        radius: 4,
        max_span: 3,
        halves: true,
    };
    let mut passed = 0;
    for g in [0, 1] {
        let u = sweep_universe(g);
        let t = u.lookup("T").unwrap();
        for l in ladders(&window_segments(&[t], &w), 5) {
            match deriv_consistency_check(&u, &l).unwrap() {
                DerivVerdict::Fail(why) => panic!("{why}"),
                DerivVerdict::Pass => passed += 1,
                DerivVerdict::NotApplicable => {}
            }
        }
    }
    assert!(passed > 100);
}
