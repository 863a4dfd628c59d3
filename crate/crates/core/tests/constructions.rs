mod common;

use std::collections::HashSet;
use std::sync::Arc;

use common::{all_tuples, to_naive, Coeffs, NaiveField};
use mds_selfdual::constructions::{
    self, build_set, character_profile, corollary1_extend, lemma2_self_dual, lemma3_extended_self_dual,
    lemma4_self_orthogonal, lemma5_extended_self_orthogonal, predicted_character, self_dual, theorem3, theorem4,
    Branch, CharacterVariant,
};
use mds_selfdual::grs::{self, Construction, CosetPart, PointTag};
use mds_selfdual::mds::{mds_check, minimum_distance};
use mds_selfdual::{
    ConstructionParams, Error, EvaluationSet, FieldElement, FiniteField, MdsBudget, MdsVerdict, Polynomial,
    ProfileSummary, Sign,
};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn gf(q: u64) -> Arc<FiniteField> {
    Arc::new(FiniteField::with_order(q).unwrap())
}

/// The coset union rebuilt with naive arithmetic from its defining formula.
fn oracle_set(nf: &NaiveField, theta: &[u64], p: &ConstructionParams, branch: Branch) -> Vec<Coeffs> {
    let q1 = nf.q() - 1;
    let (a, b) = (p.a(), p.b());
    let pw = |e: u64| nf.pow(theta, e);
    let (alpha, beta) = (pw(a), pw(b));
    let mut out = Vec::new();
    let mut union = |base: &Coeffs, gen: &Coeffs, count: u64| {
        for j in 1..=count {
            out.push(nf.mul(base, &nf.pow(gen, j)));
        }
    };
    match branch {
        Branch::S => {
            for i in 0..p.s() {
                union(&nf.pow(&beta, i), &alpha, q1 / a);
            }
            for j in 0..p.t() {
                union(&pw(a / 2 * (2 * j + 1)), &beta, q1 / b);
            }
        }
        Branch::T => {
            for i in 0..p.t() {
                union(&nf.pow(&alpha, i), &beta, q1 / b);
            }
            for j in 0..p.s() {
                union(&pw(b / 2 * (2 * j + 1)), &alpha, q1 / a);
            }
        }
    }
    out
}

#[test]
fn coset_unions_match_naive_oracle_and_character_forms() {
    for q in [25u64, 49, 81] {
        let f = gf(q);
        let nf = NaiveField::mirror(&f);
        let theta = to_naive(&f, f.theta());
        for params in all_tuples(&f) {
            let branch = params.branch().unwrap();
            let set = build_set(&params).unwrap();
            let oracle = oracle_set(&nf, &theta, &params, branch);
            let got: Vec<Coeffs> = set.points().iter().map(|&x| to_naive(&f, x)).collect();
            assert_eq!(got, oracle);
            assert_eq!(oracle.iter().collect::<HashSet<_>>().len(), oracle.len());
            assert_eq!(set.len() as u64, params.set_size());

            for (i, &tag) in set.tags().iter().enumerate() {
                let PointTag::Coset { part, .. } = tag else { panic!("untagged point") };
                let d = got.iter().enumerate().filter(|&(j, _)| j != i).fold(nf.one(), |acc, (_, x)| {
                    nf.mul(&acc, &nf.sub(&got[i], x))
                });
                let predicted = predicted_character(&params, part, branch).unwrap();
                assert_eq!(nf.euler(&d), predicted.as_i8(), "q = {q}, {params:?}, point {i}");
            }
        }
    }
}

#[test]
fn shifted_case_sign_conditions_hold() {
    for q in [25u64, 49, 81, 121] {
        let f = gf(q);
        for params in all_tuples(&f) {
            if params.is_plain(params.branch().unwrap()) {
                continue;
            }
            let set = build_set(&params).unwrap();
            let prof = character_profile(&f, &set, CharacterVariant::NegPointDelta).unwrap();
            assert_eq!(prof.summary, ProfileSummary::Constant(Sign::Plus), "{params:?}");
            let prod = f.product(set.points().iter().copied());
            assert_eq!(f.quadratic_character(f.neg(prod)).unwrap(), Sign::Plus);
        }
    }
}

#[test]
fn every_small_tuple_is_self_dual() {
    for q in [25u64, 49, 81, 121, 169] {
        let f = gf(q);
        for params in all_tuples(&f) {
            let branch = params.branch().unwrap();
            let code = self_dual(&params).unwrap();
            let n = params.set_size() as usize;
            let plain = params.is_plain(branch);
            assert_eq!(code.length(), if plain { n } else { n + 2 });
            assert_eq!(2 * code.dimension(), code.length());
            assert!(code.is_self_dual(), "{params:?}");
            let expected = match (branch, plain) {
                (Branch::S, true) => Construction::Theorem1Even,
                (Branch::S, false) => Construction::Theorem1Odd,
                (Branch::T, true) => Construction::Theorem2Odd,
                (Branch::T, false) => Construction::Theorem2Even,
            };
            assert_eq!(code.recipe().construction, expected);
        }
    }
}

#[test]
fn self_dual_codes_up_to_length_14_are_mds() {
    for q in [25u64, 49] {
        let f = gf(q);
        for params in all_tuples(&f) {
            let code = self_dual(&params).unwrap();
            if code.length() > 14 {
                continue;
            }
            assert!(matches!(mds_check(&code, &MdsBudget::default()), MdsVerdict::Proven { .. }));
            if let Some(d) = minimum_distance(&code, 10_000_000) {
                assert_eq!(d, code.length() - code.dimension() + 1);
            }
        }
    }
}

#[test]
fn branch_mismatch_is_rejected() {
    let f = gf(25);
    let params = ConstructionParams::new(f, 6, 4, 2, 1).unwrap();
    assert!(matches!(constructions::theorem2(&params), Err(Error::InvalidParams(_))));
    assert!(matches!(constructions::build_t(&params), Err(Error::InvalidParams(_))));
    assert!(constructions::theorem1(&params).is_ok());
    assert!(matches!(ConstructionParams::new(gf(27), 2, 2, 1, 1), Err(Error::InvalidParams(_))));
}

#[test]
fn largest_tuple_reaches_q_plus_one() {
    for q in [25u64, 49, 81, 121, 169] {
        let f = gf(q);
        let params = ConstructionParams::largest(f).unwrap();
        let code = self_dual(&params).unwrap();
        assert_eq!(code.length() as u64, q + 1);
        assert!(code.is_self_dual());
    }
}

fn find_subset(f: &FiniteField, size: usize, want: impl Fn(&ProfileSummary) -> bool) -> EvaluationSet {
    let elems: Vec<FieldElement> = f.elements().collect();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let set = EvaluationSet::new(f, idx.iter().map(|&i| elems[i]).collect(), false).unwrap();
        if want(&character_profile(f, &set, CharacterVariant::Delta).unwrap().summary) {
            return set;
        }
        let mut i = size;
        loop {
            i -= 1;
            if idx[i] < elems.len() - size + i {
                idx[i] += 1;
                for j in i + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
            assert!(i > 0, "no subset found");
        }
    }
}

#[test]
fn lemma2_needs_constant_profile() {
    let f = gf(25);
    let mixed = find_subset(&f, 4, |s| *s == ProfileSummary::Mixed);
    assert!(matches!(lemma2_self_dual(&f, &mixed), Err(Error::Precondition(_))));

    let minus = find_subset(&f, 4, |s| *s == ProfileSummary::Constant(Sign::Minus));
    let code = lemma2_self_dual(&f, &minus).unwrap();
    assert!(code.is_self_dual());
    let d = grs::deltas(&f, &minus);
    for (v, d) in code.twist().iter().zip(d) {
        assert_eq!(f.mul(f.mul(*v, *v), d), f.theta());
    }

    let odd = EvaluationSet::new(&f, vec![f.theta(), f.theta_pow(2), f.theta_pow(3)], false).unwrap();
    assert!(matches!(lemma2_self_dual(&f, &odd), Err(Error::Precondition(_))));
}

#[test]
fn lemma2_on_square_subgroup_agrees_with_lemma4() {
    let f = gf(25);
    let set = grs::subgroup(&f, 4).unwrap();
    let profile = character_profile(&f, &set, CharacterVariant::Delta).unwrap();
    assert_eq!(profile.summary, ProfileSummary::Constant(Sign::Plus));
    let l2 = lemma2_self_dual(&f, &set).unwrap();
    let l4 = lemma4_self_orthogonal(&f, &set, 2, &Polynomial::constant(FieldElement::ONE)).unwrap();
    assert_eq!(l2.twist(), l4.twist());
    assert!(l4.is_self_dual());
}

#[test]
fn lemma3_singletons() {
    let f = gf(25);
    let zero = EvaluationSet::new(&f, vec![FieldElement::ZERO], false).unwrap();
    let code = lemma3_extended_self_dual(&f, &zero).unwrap();
    assert_eq!((code.length(), code.dimension()), (2, 1));
    let v = code.twist()[0];
    assert_eq!(f.mul(v, v), f.minus_one());
    assert!(code.is_self_dual());

    let f7 = gf(7);
    let one = EvaluationSet::new(&f7, vec![FieldElement::ONE], false).unwrap();
    assert!(matches!(lemma3_extended_self_dual(&f7, &one), Err(Error::Precondition(_))));
    let even = EvaluationSet::new(&f, vec![f.theta(), f.theta_pow(2)], false).unwrap();
    assert!(matches!(lemma3_extended_self_dual(&f, &even), Err(Error::Precondition(_))));
    assert!(matches!(lemma3_extended_self_dual(&f, &zero.clone().with_infinity()), Err(Error::Precondition(_))));
}

#[test]
fn corollary1_works_for_every_shift() {
    let f = gf(25);
    let params = ConstructionParams::new(f.clone(), 6, 4, 1, 1).unwrap();
    let set = build_set(&params).unwrap();
    let n = set.len();
    for alpha in f.elements() {
        let code = corollary1_extend(&f, &set, Some(alpha)).unwrap();
        assert_eq!(code.length(), n + 2);
        assert!(code.is_self_dual());
        let ev = code.evaluation();
        assert_eq!(ev.points()[n], alpha);
        assert_eq!(ev.tags()[n], PointTag::Shift);
        for (i, &a) in set.points().iter().enumerate() {
            assert_eq!(ev.points()[i], f.add(alpha, a));
        }
    }
    let with_zero = EvaluationSet::new(&f, vec![FieldElement::ZERO, FieldElement::ONE], false).unwrap();
    assert!(matches!(corollary1_extend(&f, &with_zero, None), Err(Error::Precondition(_))));
}

#[test]
fn lemma4_and_lemma5_reject_bad_omega() {
    let f = gf(25);
    let set = grs::subgroup(&f, 8).unwrap();
    let x2 = Polynomial::monomial(FieldElement::ONE, 2);
    assert!(matches!(lemma4_self_orthogonal(&f, &set, 4, &x2), Err(Error::Precondition(_))));
    assert!(matches!(lemma4_self_orthogonal(&f, &set, 5, &Polynomial::constant(FieldElement::ONE)), Err(Error::Precondition(_))));
    assert!(matches!(lemma4_self_orthogonal(&f, &set, 2, &Polynomial::new(vec![])), Err(Error::Precondition(_))));
    let x = Polynomial::monomial(FieldElement::ONE, 1);
    assert!(matches!(lemma5_extended_self_orthogonal(&f, &set, 4, &x), Err(Error::Precondition(_))));
    let neg_x = Polynomial::monomial(f.minus_one(), 1);
    assert!(matches!(lemma5_extended_self_orthogonal(&f, &set, 3, &neg_x), Err(Error::Precondition(_))));
    let with_zero = EvaluationSet::new(&f, vec![FieldElement::ZERO, FieldElement::ONE, f.theta(), f.theta_pow(5)], false).unwrap();
    assert!(matches!(lemma4_self_orthogonal(&f, &with_zero, 1, &x), Err(Error::Precondition(_))));
}

#[test]
fn theorem3_and_theorem4_over_small_fields() {
    for q in [25u64, 49] {
        let f = gf(q);
        for params in all_tuples(&f) {
            let n = params.set_size() as usize;
            for k in 1..n / 2 {
                let code = theorem3(&params, k).unwrap();
                assert_eq!((code.length(), code.dimension()), (n, k));
                assert!(code.is_self_orthogonal(), "{params:?} k = {k}");
            }
            assert!(matches!(theorem3(&params, n / 2), Err(Error::InvalidParams(_))));
            assert!(matches!(theorem3(&params, 0), Err(Error::InvalidParams(_))));
            let branch = params.branch().unwrap();
            match theorem4(&params) {
                Ok(code) => {
                    assert!(!params.is_plain(branch));
                    assert_eq!((code.length(), code.dimension()), (n + 1, n / 2));
                    assert!(code.is_self_orthogonal());
                    assert_eq!(code.length() - code.dimension(), code.dimension() + 1);
                }
                Err(e) => {
                    assert!(params.is_plain(branch));
                    assert!(matches!(e, Error::InvalidParams(_)));
                }
            }
        }
    }
}

fn arb_subset(q: u64, sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<u32>> {
    subsequence((0..q as u32).collect::<Vec<_>>(), sizes).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn lemma2_succeeds_iff_profile_constant(idx in arb_subset(49, 1..=12)) {
        let f = gf(49);
        let mut idx = idx;
        if idx.len() % 2 == 1 { idx.pop(); }
        prop_assume!(!idx.is_empty());
        let set = EvaluationSet::new(&f, idx.iter().map(|&i| f.from_index(i)).collect(), false).unwrap();
        let constant = character_profile(&f, &set, CharacterVariant::Delta).unwrap().constant().is_some();
        match lemma2_self_dual(&f, &set) {
            Ok(code) => { prop_assert!(constant); prop_assert!(code.is_self_dual()); }
            Err(e) => { prop_assert!(!constant); prop_assert!(matches!(e, Error::Precondition(_)), "{}", e); }
        }
    }

    #[test]
    fn lemma3_succeeds_iff_neg_delta_square(idx in arb_subset(25, 1..=11)) {
        let f = gf(25);
        let mut idx = idx;
        if idx.len() % 2 == 0 { idx.pop(); }
        let set = EvaluationSet::new(&f, idx.iter().map(|&i| f.from_index(i)).collect(), false).unwrap();
        let ok = character_profile(&f, &set, CharacterVariant::NegDelta).unwrap().summary
            == ProfileSummary::Constant(Sign::Plus);
        match lemma3_extended_self_dual(&f, &set) {
            Ok(code) => { prop_assert!(ok); prop_assert!(code.is_self_dual()); }
            Err(e) => { prop_assert!(!ok); prop_assert!(matches!(e, Error::Precondition(_)), "{}", e); }
        }
    }

    #[test]
    fn lemma4_succeeds_iff_omega_delta_square(
        idx in arb_subset(27, 2..=12),
        omega in proptest::collection::vec(0u32..27, 1..4),
        k in 1usize..6,
    ) {
        let f = gf(27);
        let set = EvaluationSet::new(&f, idx.iter().map(|&i| f.from_index(i)).collect(), false).unwrap();
        let n = set.len();
        prop_assume!(2 * k <= n);
        let poly = Polynomial::new(omega.iter().map(|&i| f.from_index(i)).collect());
        prop_assume!(poly.degree().is_some_and(|d| d <= n - 2 * k));
        let d = grs::deltas(&f, &set);
        let ok = set.points().iter().zip(&d).all(|(&a, &da)| {
            let w = poly.eval(&f, a);
            !w.is_zero() && f.is_square(f.mul(w, da))
        });
        match lemma4_self_orthogonal(&f, &set, k, &poly) {
            Ok(code) => { prop_assert!(ok); prop_assert!(code.is_self_orthogonal()); }
            Err(e) => { prop_assert!(!ok); prop_assert!(matches!(e, Error::Precondition(_)), "{}", e); }
        }
    }

    #[test]
    fn predicted_character_covers_both_parts(i in 0usize..1000) {
        let f = gf(121);
        let tuples = all_tuples(&f);
        let params = &tuples[i % tuples.len()];
        let branch = params.branch().unwrap();
        let set = build_set(params).unwrap();
        let prof = character_profile(&f, &set, CharacterVariant::Delta).unwrap();
        for (sign, tag) in prof.signs.iter().zip(set.tags()) {
            let PointTag::Coset { part, .. } = *tag else { unreachable!() };
            prop_assert_eq!(*sign, predicted_character(params, part, branch).unwrap());
        }
        let parts: HashSet<CosetPart> = set.tags().iter().filter_map(|t| match t {
            PointTag::Coset { part, .. } => Some(*part),
            _ => None,
        }).collect();
        prop_assert_eq!(parts.len(), 2);
    }
}
