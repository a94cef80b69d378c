use colsig::algebra::{CMat, TorusPoint};
use colsig::braid::{BraidWord, Coloring};
use colsig::cover::{braid_action, build_cover, eigenspace_form};
use colsig::gassner::{reduced_burau, xi_form};
use colsig::linalg::inverse;
use colsig::linksig::{braid_signature, seifert_signature, unlinking_bound};
use colsig::maslov::{meyer, meyer_via_maslov, UnitaryPair};
use colsig::verify::{random_coloring, random_endomorphism, random_point};
use colsig::{Ctx, Error};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(w: &str, c: &str) -> BraidWord {
    BraidWord::parse(w, &Coloring::parse(c, None).unwrap()).unwrap()
}

fn pt(s: &str) -> TorusPoint {
    TorusPoint::parse(s).unwrap()
}

#[test]
fn trefoil_meyer_values_from_cover_and_gassner() {
    let ctx = Ctx::default();
    let c = Coloring::parse("1,1", None).unwrap();
    for w in ["1/5", "2/5", "3/5", "4/5"] {
        let p = pt(w);
        let cov = build_cover(&c, &p).unwrap();
        let form = eigenspace_form(&cov, &ctx).unwrap().form;
        let s = word("1", "1,1");
        let s2 = word("1 1", "1,1");
        let from_cover = UnitaryPair::new(form, braid_action(&cov, &s, &ctx).unwrap(), braid_action(&cov, &s2, &ctx).unwrap(), &ctx).unwrap();
        let from_burau = UnitaryPair::new(
            xi_form(&c, &p, &ctx).unwrap().matrix,
            reduced_burau(&s, &p, &ctx).unwrap().matrix,
            reduced_burau(&s2, &p, &ctx).unwrap().matrix,
            &ctx,
        )
        .unwrap();
        let a = meyer(&from_cover, &ctx).unwrap();
        assert_eq!(a, meyer(&from_burau, &ctx).unwrap(), "{w}");
        assert_eq!(a.signature(), meyer_via_maslov(&from_cover, &ctx).unwrap().signature());
    }
}

#[test]
fn signature_errors() {
    let ctx = Ctx::default();
    let not_endo = word("1", "1,2");
    assert!(matches!(braid_signature(&not_endo, &pt("1/2,1/3"), false, &ctx), Err(Error::NotEndomorphism)));
    assert!(matches!(braid_signature(&word("1 1", "1,1"), &pt("1/2,1/3"), false, &ctx), Err(Error::VarMismatch(1, 2))));
    // orders 2 and 4 are not coprime
    assert!(matches!(braid_signature(&word("1 1", "1,2"), &pt("1/2,1/4"), false, &ctx), Err(Error::OutsideGuarantee(_))));
    let forced = braid_signature(&word("1 1", "1,2"), &pt("1/2,1/4"), true, &ctx).unwrap();
    assert!(!forced.guaranteed);
    assert!(matches!(braid_signature(&word("1 1", "1,2"), &pt("0,1/3"), true, &ctx), Err(Error::EvaluationAtOne(1))));
}

#[test]
fn result_json_round_trips() {
    let r = braid_signature(&word("1 1 1", "1,1"), &pt("1/5"), false, &Ctx::default()).unwrap();
    let text = r.to_json().to_string();
    let back: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r.to_json());
    assert_eq!(back["signature"], -2);
    assert_eq!(back["method"], "meyer_algorithm");
}

#[test]
fn connected_sum_of_trefoils() {
    // σ₁³σ₂³ closes to the granny knot
    let ctx = Ctx::default();
    let w = word("1 1 1 2 2 2", "1,1,1");
    let p = pt("2/5");
    let s = braid_signature(&w, &p, false, &ctx).unwrap().signature;
    assert_eq!(s, 2 * braid_signature(&word("1 1 1", "1,1"), &p, false, &ctx).unwrap().signature);
    assert_eq!(s, seifert_signature(&w, &p, &ctx).unwrap().signature);
    assert_eq!(unlinking_bound(&w, &p, false, &ctx).unwrap().1, 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn reflection_inverts_burau(seed in 0u64..1000) {
        let ctx = Ctx::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_coloring(&mut rng, 4, 2, true);
        let w = random_endomorphism(&mut rng, &c, 10, false);
        let p = random_point(&mut rng, 2, 11);
        let b = reduced_burau(&w, &p, &ctx).unwrap().matrix;
        let r = reduced_burau(&w.reflect(), &p, &ctx).unwrap().matrix;
        prop_assert!(r.max_abs_diff(&inverse(&b, &ctx).unwrap()) < 1e-25);
        let id = w.compose(&w.reflect()).unwrap();
        let bid = reduced_burau(&id, &p, &ctx).unwrap().matrix;
        prop_assert!(bid.max_abs_diff(&CMat::identity(3, ctx.bits)) < 1e-25);
    }

    #[test]
    fn signature_of_mirror_is_negated(seed in 0u64..1000) {
        let ctx = Ctx::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_coloring(&mut rng, 3, 1, false);
        let w = random_endomorphism(&mut rng, &c, 8, false);
        let mirror = w.with_letters(w.letters().iter().map(|l| l.inverse()).collect()).unwrap();
        let p = random_point(&mut rng, 1, 13);
        let a = braid_signature(&w, &p, false, &ctx).unwrap().signature;
        let b = braid_signature(&mirror, &p, false, &ctx).unwrap().signature;
        prop_assert_eq!(a, -b);
    }
}
