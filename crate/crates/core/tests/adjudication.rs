use layered_heap::oracle::{
    diff, enumerate_scripts, gen_random_script, minimal_counterexample, shrink, Op, OpScript, Pattern,
};
use layered_heap::{FaithfulHeap64, FaithfulViolationKind, LayeredHeap64, PopMode};

fn faithful(k: usize, mode: PopMode) -> impl Fn(usize) -> FaithfulHeap64 + Sync {
    move |m| FaithfulHeap64::new(m.max(1), Some(k), mode).unwrap()
}

fn ops_of(text: &str) -> Vec<Op<i64>> {
    text.split_whitespace().map(|t| if t == "P" { Op::Pop } else { Op::Insert(t[1..].parse().unwrap()) }).collect()
}

#[test]
fn faithful_minimal_counterexample_k3() {
    for mode in [PopMode::Sift, PopMode::NoSift] {
        let (script, result) = minimal_counterexample(faithful(3, mode), 8).unwrap().expect("faithful diverges");
        assert_eq!(script.ops, ops_of("I1 I3 I4 I2 P P P P"), "{mode}");
        let d = result.divergence.unwrap();
        assert_eq!((d.op_index, d.expected, d.actual), (5, 3, Ok(2)));
    }
}

#[test]
fn counterexample_insert_leaves_group_misordered() {
    // 4 climbs out of slot 2 by k-parent swaps; the 1 it displaced into the
    // group top is never re-sifted against the 3 below it.
    let mut h = FaithfulHeap64::new(4, Some(3), PopMode::Sift).unwrap();
    for k in [1, 3, 4, 2] {
        h.insert(k).unwrap();
    }
    assert_eq!(h.as_slice(), &[4, 2, 3, 1]);
    let report = h.check();
    assert_eq!(report.first_violation, Some((FaithfulViolationKind::GroupLocalOrder, 2)));
    assert_eq!(h.pop(), Ok(4));
    assert_eq!(h.pop(), Ok(2));
}

#[test]
fn faithful_correct_up_to_three_keys() {
    for k in 2..=8 {
        for mode in [PopMode::Sift, PopMode::NoSift] {
            assert!(minimal_counterexample(faithful(k, mode), 3).unwrap().is_none(), "k={k} {mode}");
        }
    }
}

#[test]
fn faithful_diverges_within_k_plus_one_keys() {
    for k in 3..=6 {
        let (script, _) = minimal_counterexample(faithful(k, PopMode::Sift), k + 1).unwrap().expect("diverges");
        assert_eq!(script.ops, ops_of("I1 I3 I4 I2 P P P P"), "k={k}");
    }
    assert!(minimal_counterexample(faithful(2, PopMode::Sift), 3).unwrap().is_none());
}

#[test]
fn layered_has_no_counterexample() {
    for layers in [1, 2, 3] {
        for k in [2, 3, 4] {
            let found = minimal_counterexample(|m| LayeredHeap64::new(layers, m, Some(k)).unwrap(), 7).unwrap();
            assert!(found.is_none(), "M={layers} k={k}: {found:?}");
        }
    }
}

#[test]
fn enumeration_counts() {
    assert_eq!(enumerate_scripts(4, Pattern::InsertAllThenPopAll).unwrap().count(), 24);
    let s: Vec<OpScript<i64>> = enumerate_scripts(4, Pattern::Interleaved).unwrap().collect();
    assert_eq!(s.len(), 24 * 2);
    assert!(s.iter().all(|x| x.is_well_formed() && x.len() == 8));
    assert!(enumerate_scripts(10, Pattern::Interleaved).is_err());
}

#[test]
fn shrink_reaches_a_short_failure() {
    let fails = |s: &OpScript<i64>| {
        let mut h = FaithfulHeap64::new(s.max_live().max(1), Some(3), PopMode::Sift).unwrap();
        !diff(&mut h, s).matches()
    };
    let big = (0..200)
        .map(|seed| gen_random_script(seed, 80, 0..=50, 0.3).unwrap())
        .find(|s| fails(s))
        .expect("some random script breaks the faithful heap");
    let small = shrink(&big, fails);
    assert!(fails(&small));
    assert!(small.is_well_formed());
    assert!(small.len() <= 10, "{small}");
}

#[test]
fn full_faithful_reports_divergence_not_panic() {
    let script = OpScript::new(ops_of("I1 I2 I3"), "t");
    let mut h = FaithfulHeap64::new(2, Some(2), PopMode::Sift).unwrap();
    let d = diff(&mut h, &script).divergence.unwrap();
    assert_eq!(d.op_index, 2);
    assert!(d.actual.is_err());
    assert_eq!(h.len(), 2);
}
