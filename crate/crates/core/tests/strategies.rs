use proptest::prelude::*;
use rivercross::strategy::{Rule, Violation};
use rivercross::*;

#[test]
fn applicable_strategies_imply_solvable() {
    for m in 1..=9 {
        for c in 1..=9 {
            for b in 2..=5 {
                for d in 0..=2 {
                    let Ok(p) = McParams::new(m, c, b, d) else {
                        continue;
                    };
                    if applicability(&p).is_empty() {
                        continue;
                    }
                    let (g, idx) = mc_graph(&p);
                    let shortest = shortest_distance(&g, idx.source(), idx.sink()).unwrap();
                    assert!(shortest.is_some(), "{p} has a strategy but no solution");
                }
            }
        }
    }
}

#[test]
fn strategies_are_never_shorter_than_search() {
    for (m, c, b, d) in [
        (8, 3, 2, 1),
        (6, 2, 4, 1),
        (9, 4, 5, 1),
        (5, 3, 2, 0),
        (7, 7, 4, 0),
    ] {
        let p = McParams::new(m, c, b, d).unwrap();
        let (g, idx) = mc_graph(&p);
        let best = shortest_distance(&g, idx.source(), idx.sink())
            .unwrap()
            .unwrap();
        for s in applicability(&p) {
            let ms = build_strategy(&p, s).unwrap();
            assert!(ms.len() >= best, "{s} on {p} beats the shortest solution");
        }
    }
}

#[test]
fn split_cannibals_boundary_is_not_attempted() {
    // B = floor(C/2) + d + 1 with C odd.
    let p = McParams::new(10, 5, 4, 1).unwrap();
    assert!(!applicability(&p).contains(&StrategyName::SplitCannibals));
    assert!(build_strategy(&p, StrategyName::SplitCannibals).is_err());
}

#[test]
fn search_solutions_pass_the_validator() {
    let p = McParams::new(5, 5, 3, 0).unwrap();
    for sol in solve_mc(&p).unwrap().solutions {
        let ms = MoveSequence::from_path(&sol);
        assert_eq!(validate_solution(&p, &ms), Ok(()));
        assert_eq!(ms.to_path(&p), sol);
    }
}

#[test]
fn truncated_script_is_unfinished() {
    let p = McParams::new(8, 3, 2, 1).unwrap();
    let mut ms = build_strategy(&p, StrategyName::TwoBoat).unwrap();
    ms.0.pop();
    assert_eq!(
        validate_solution(&p, &ms),
        Err(Violation {
            index: ms.len(),
            rule: Rule::Unfinished
        })
    );
}

proptest! {
    #[test]
    fn every_applicable_strategy_validates(m in 1u32..=40, c in 1u32..=40, b in 2u32..=15, d in 0u32..=4) {
        prop_assume!(m >= c + d);
        let p = McParams::new(m, c, b, d).unwrap();
        for s in applicability(&p) {
            let ms = build_strategy(&p, s).unwrap();
            prop_assert_eq!(validate_solution(&p, &ms), Ok(()), "{} on {}", s, p);
        }
    }
}
