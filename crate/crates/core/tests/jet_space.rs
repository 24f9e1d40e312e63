use proptest::prelude::*;
use varseq::jet_space::{count_multiindices, multiindices_of_length};
use varseq::{JetSpace, MultiIndex};

fn multi_index(n: usize) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(0..n, 0..5).prop_map(MultiIndex::new)
}

proptest! {
    #[test]
    fn append_commutes(n in 1usize..4, seed in multi_index(3), i in 0usize..3, j in 0usize..3) {
        let (i, j) = (i % n, j % n);
        let seed = MultiIndex::new(seed.entries().iter().map(|e| e % n).collect());
        prop_assert_eq!(seed.append(i).append(j), seed.append(j).append(i));
    }

    #[test]
    fn multi_indices_stay_sorted(raw in prop::collection::vec(0usize..4, 0..6), i in 0usize..4) {
        let j = MultiIndex::new(raw.clone()).append(i);
        prop_assert!(j.entries().windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(j.len(), raw.len() + 1);
    }

    #[test]
    fn enumeration_extends_by_prefix(n in 1usize..4, m in 1usize..4, r in 0usize..4) {
        let base: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let fibre: Vec<String> = (0..m).map(|s| format!("y{s}")).collect();
        let space = JetSpace::new(base, fibre).unwrap();
        let low = space.enumerate_coordinates(r);
        let high = space.enumerate_coordinates(r + 1);
        prop_assert_eq!(&high[..low.len()], &low[..]);
        let added = m * count_multiindices(n, r + 1);
        prop_assert_eq!(high.len(), low.len() + added);
        prop_assert_eq!(multiindices_of_length(n, r + 1).len(), count_multiindices(n, r + 1));
    }
}

#[test]
fn invalid_spaces_are_rejected() {
    assert!(JetSpace::new(Vec::<String>::new(), vec!["q".to_string()]).is_err());
    assert!(JetSpace::new(["t"], Vec::<&str>::new()).is_err());
    assert!(JetSpace::new(["t", "q"], ["q"]).is_err());
    assert!(MultiIndex::empty().try_append(2, 2).is_err());
}
