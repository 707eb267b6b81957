use asmkit::algebra::{BigInt, BigRational, Poly, Ring};
use asmkit::refined::{
    asm_ratio, asm_refined, asm_total, au_first, au_refined, av_refined, av_total, check_identity,
    vsasm_ratio, IdentityId, Verdict,
};
use asmkit::verify::{run_suite, Suite};
use proptest::prelude::*;

proptest! {
    #[test]
    fn refined_asm_counts_sum_and_mirror(n in 1usize..=12) {
        let rows: Vec<BigInt> = (1..=n).map(|r| asm_refined(n, r).unwrap()).collect();
        prop_assert_eq!(rows.iter().fold(BigInt::zero(), |a, b| a + b), asm_total(n));
        let mut rev = rows.clone();
        rev.reverse();
        prop_assert_eq!(rows[0].clone(), asm_total(n - 1));
        prop_assert_eq!(rev, rows);
    }

    #[test]
    fn ratios_telescope(n in 1usize..=12) {
        prop_assert_eq!(
            asm_ratio(n).unwrap() * BigRational::from(asm_total(n - 1)),
            BigRational::from(asm_total(n))
        );
        prop_assert_eq!(
            vsasm_ratio(n).unwrap() * BigRational::from(av_total(n - 1)),
            BigRational::from(av_total(n))
        );
    }

    #[test]
    fn refined_vsasm_counts_sum_to_total(n in 1usize..=8) {
        let sum = (1..=2 * n).fold(BigRational::zero(), |a, r| a + av_refined(n, r).unwrap());
        prop_assert_eq!(sum, BigRational::from(av_total(n)));
    }

    #[test]
    fn refined_uasm_counts_sum_to_total(n in 1usize..=6) {
        let sum = (1..=2 * n).fold(Poly::zero(), |a, r| a + au_refined(n, r).unwrap());
        prop_assert_eq!(sum, au_first(n).map(|c| BigRational::from(c.clone())));
    }

    #[test]
    fn identity_verdicts_do_not_depend_on_the_seed(seed in any::<u64>(), pick in 0usize..IdentityId::ALL.len()) {
        let id = IdentityId::ALL[pick];
        let r = check_identity(id, 2, 2, seed).unwrap();
        prop_assert_eq!(r.verdict, Verdict::Pass, "{} with seed {}: {:?}", id, seed, r.witness);
    }
}

#[test]
fn out_of_range_rows_are_errors() {
    assert!(asm_refined(3, 0).is_err());
    assert!(asm_refined(3, 4).is_err());
    assert!(av_refined(2, 5).is_err());
    assert!(au_refined(0, 1).is_err());
}

#[test]
fn tags_parse_back() {
    for id in IdentityId::ALL {
        assert_eq!(IdentityId::parse(id.tag()), Some(id));
        assert_eq!(IdentityId::parse(&id.tag().to_lowercase()), Some(id));
    }
    assert_eq!(IdentityId::parse("EQ2"), None);
}

#[test]
fn suite_reports_are_reproducible() {
    let a = run_suite(Suite::Identities, 2, 3, 9).unwrap();
    let b = run_suite(Suite::Identities, 2, 3, 9).unwrap();
    assert_eq!(a, b);
    assert!(a.iter().all(|r| r.passed()), "{a:?}");
    let json = serde_json::to_string(&a).unwrap();
    assert!(json.contains("\"verdict\":\"pass\""));
}
