use proptest::prelude::*;
use treeseries::coeff::RingValue;
use treeseries::io::{format_series, parse_series, series_from_json, series_to_json, Shape};
use treeseries::operad::{Instance, Multiplicative};
use treeseries::series::{Carrier, GradedSeries};
use treeseries::tree::{enumerate_trees, trees_up_to, Tree};

fn tree(order: usize, pick: usize) -> Tree {
    let all = enumerate_trees(order);
    all[pick % all.len()].clone()
}

fn series(monoid: bool, n: usize, coeffs: &[(i64, i64)]) -> GradedSeries {
    let carrier = if monoid { Carrier::Monoid(Multiplicative::dup_under()) } else { Carrier::Operad(Instance::Dup) };
    let shift = usize::from(!monoid);
    let trees: Vec<Tree> = trees_up_to(n + shift).into_iter().filter(|t| t.order() >= shift).collect();
    let terms = trees
        .iter()
        .zip(coeffs)
        .map(|(t, &(p, q))| (t.clone(), RingValue::from(num_rational::BigRational::new(p.into(), q.into()))));
    GradedSeries::from_trees(carrier, n, terms).unwrap()
}

proptest! {
    #[test]
    fn tree_codes_round_trip(order in 0usize..=8, pick in any::<usize>()) {
        let t = tree(order, pick);
        prop_assert_eq!(Tree::from_code(&t.to_string()).unwrap(), t.clone());
        prop_assert_eq!(Tree::parse(t.code()).unwrap(), t);
    }

    #[test]
    fn series_text_round_trips(
        monoid in any::<bool>(),
        n in 1usize..=5,
        coeffs in prop::collection::vec((-9i64..=9, 1i64..=4), 0..40),
    ) {
        let s = series(monoid, n, &coeffs);
        let shape = if monoid { Shape::Monoid(Some("under".into())) } else { Shape::Operad };
        let text = format_series(&s);
        prop_assert_eq!(parse_series(&text, &shape, Instance::Dup, Some(n)).unwrap(), s.clone());
        prop_assert_eq!(series_from_json(&series_to_json(&s)).unwrap(), s);
    }
}
