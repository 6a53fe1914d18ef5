mod common;

use proptest::prelude::*;

use common::{brute_clique_number, brute_colorable, brute_is_chordal, brute_is_split};
use reconfig_core::format::{
    parse_certificate, parse_graph, parse_instance, parse_ncl, write_certificate, write_graph, write_instance,
    write_ncl,
};
use reconfig_core::generate;
use reconfig_core::graph::{chromatic_leq, clique_number_chordal, elimination_order, split_partition};
use reconfig_core::model::{validate_sequence, Move, MoveSequence, ReconfigInstance, Rule};
use reconfig_core::oracle::{reconfig_oracle, OracleOptions};
use reconfig_core::solver::solve;
use reconfig_core::{Graph, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn set_of(n: usize, bits: u64) -> VertexSet {
    VertexSet::from_slice(n, &(0..n).filter(|&v| bits >> v & 1 == 1).collect::<Vec<_>>())
}

/// Small instance with equal-size colorable source and target, or `None`.
fn instance(g: Graph, c: usize, rule: Rule, a: u64, b: u64) -> Option<ReconfigInstance> {
    let n = g.n();
    let s = set_of(n, a);
    let t = set_of(n, b);
    (s.len() == t.len() && brute_colorable(&g, &s, c) && brute_colorable(&g, &t, c)).then(|| ReconfigInstance {
        graph: g,
        colors: c,
        rule,
        source: s,
        target: t,
    })
}

fn oracle(inst: &ReconfigInstance) -> Option<MoveSequence> {
    reconfig_oracle(inst, None, &OracleOptions::default()).unwrap().witness
}

/// Picks equal-size sets by rank among the subsets of one size.
fn same_size(n: usize, size: usize, i: usize, j: usize) -> (u64, u64) {
    let all: Vec<u64> = (0u64..1 << n).filter(|b| b.count_ones() as usize == size).collect();
    (all[i % all.len()], all[j % all.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn split_iff_chordal_and_cochordal(g in graph(7)) {
        let split = split_partition(&g);
        prop_assert_eq!(split.is_some(), brute_is_split(&g));
        prop_assert_eq!(
            split.is_some(),
            elimination_order(&g).is_some() && elimination_order(&g.complement()).is_some()
        );
        if let Some(p) = split {
            prop_assert!(p.is_valid_for(&g));
        }
    }

    #[test]
    fn chordality_matches_induced_cycles(g in graph(7)) {
        let ord = elimination_order(&g);
        prop_assert_eq!(ord.is_some(), brute_is_chordal(&g));
        if let Some(ord) = ord {
            prop_assert!(ord.is_perfect_for(&g));
            prop_assert_eq!(clique_number_chordal(&g, &ord).unwrap(), brute_clique_number(&g));
        }
    }

    #[test]
    fn colorability_matches_backtracking(g in graph(7), bits in any::<u64>(), c in 0usize..4) {
        let s = set_of(g.n(), bits);
        prop_assert_eq!(chromatic_leq(&g, &s, c), brute_colorable(&g, &s, c));
    }

    #[test]
    fn oracle_is_symmetric(g in graph(6), size in 1usize..4, i in any::<usize>(), j in any::<usize>(), c in 1usize..3) {
        let n = g.n();
        prop_assume!(size <= n);
        let (a, b) = same_size(n, size, i, j);
        let Some(inst) = instance(g, c, Rule::TokenSliding, a, b) else { return Ok(()) };
        let fwd = oracle(&inst);
        let back = oracle(&inst.swapped());
        prop_assert_eq!(fwd.is_some(), back.is_some());
        if let Some(w) = fwd {
            prop_assert!(validate_sequence(&inst, &w).is_valid());
            // shortest witnesses have equal length both ways, and reversal is a witness
            prop_assert_eq!(w.len(), back.unwrap().len());
            prop_assert!(validate_sequence(&inst.swapped(), &w.reversed()).is_valid());
        }
    }

    #[test]
    fn filter_only_removes_paths(g in graph(6), size in 1usize..4, i in any::<usize>(), j in any::<usize>(), banned in any::<u64>()) {
        let n = g.n();
        prop_assume!(size <= n);
        let (a, b) = same_size(n, size, i, j);
        let Some(inst) = instance(g, 2, Rule::TokenSliding, a, b) else { return Ok(()) };
        let banned = set_of(n, banned);
        let filter = |s: &VertexSet| s.intersection_count(&banned) <= 1;
        if !filter(&inst.source) || !filter(&inst.target) {
            return Ok(());
        }
        let filtered = reconfig_oracle(&inst, Some(&filter), &OracleOptions::default()).unwrap();
        if filtered.reachable {
            prop_assert!(oracle(&inst).is_some());
            let w = filtered.witness.unwrap();
            prop_assert!(w.trace(&inst.source).iter().all(filter));
        }
    }

    #[test]
    fn jumping_extends_sliding(g in graph(6), size in 1usize..4, i in any::<usize>(), j in any::<usize>(), c in 1usize..3) {
        let n = g.n();
        prop_assume!(size <= n);
        let (a, b) = same_size(n, size, i, j);
        let Some(ts) = instance(g.clone(), c, Rule::TokenSliding, a, b) else { return Ok(()) };
        let tj = instance(g, c, Rule::TokenJumping, a, b).unwrap();
        let slide = oracle(&ts);
        let jump = oracle(&tj);
        if let Some(w) = &slide {
            prop_assert!(jump.is_some());
            prop_assert!(jump.unwrap().len() <= w.len());
        }
    }

    #[test]
    fn oracle_witness_is_no_longer_than_solver(seed in any::<u64>(), n in 3usize..9, c in 2usize..4, tokens in 1usize..5) {
        let mut p = generate::SplitParams::new(n, c, tokens.min(n));
        p.clique = (n / 2).max(1);
        let Ok(inst) = generate::split_instance(&mut generate::rng(seed), &p) else { return Ok(()) };
        let sol = solve(&inst).unwrap();
        let shortest = oracle(&inst);
        prop_assert_eq!(sol.reachable, shortest.is_some());
        if let (Some(w), Some(s)) = (sol.witness, shortest) {
            prop_assert!(s.len() <= w.len());
        }
    }

    #[test]
    fn moves_are_reversible(g in graph(7), bits in any::<u64>(), picks in proptest::collection::vec(any::<(usize, usize)>(), 0..12)) {
        let n = g.n();
        let inst = ReconfigInstance {
            graph: g.clone(),
            colors: n,
            rule: Rule::TokenSliding,
            source: set_of(n, bits),
            target: set_of(n, bits),
        };
        // random legal slides along edges
        let mut seq = MoveSequence::new();
        let mut state = inst.source.clone();
        for (x, y) in picks {
            let (u, v) = match g.edges().get(x % g.m().max(1)) {
                Some(&(u, v)) if y % 2 == 0 => (u, v),
                Some(&(u, v)) => (v, u),
                None => break,
            };
            if state.contains(u) && !state.contains(v) {
                seq.push(Move::Slide { from: u, to: v });
                state.remove(u);
                state.insert(v);
            }
        }
        let end = ReconfigInstance { target: state.clone(), ..inst.clone() };
        prop_assert!(validate_sequence(&end, &seq).is_valid());
        let back = ReconfigInstance { source: state, target: inst.source.clone(), ..inst };
        prop_assert!(validate_sequence(&back, &seq.reversed()).is_valid());
    }

    #[test]
    fn formats_round_trip(g in graph(8), size in 0usize..4, i in any::<usize>(), j in any::<usize>(), c in 1usize..4, jump in any::<bool>()) {
        prop_assert_eq!(&parse_graph(&write_graph(&g)).unwrap(), &g);
        let n = g.n();
        prop_assume!(size <= n);
        let (a, b) = same_size(n, size, i, j);
        let rule = if jump { Rule::TokenJumping } else { Rule::TokenSliding };
        let Some(inst) = instance(g, c, rule, a, b) else { return Ok(()) };
        prop_assert_eq!(&parse_instance(&write_instance(&inst)).unwrap(), &inst);
        if let Some(w) = oracle(&inst) {
            prop_assert_eq!(parse_certificate(&write_certificate(&w)).unwrap(), w);
        }
    }

    #[test]
    fn ncl_format_round_trips(seed in any::<u64>(), shape in 0usize..3) {
        let (ands, ors) = [(2, 0), (0, 2), (4, 0)][shape];
        let ncl = generate::ncl_instance(&mut generate::rng(seed), ands, ors).unwrap();
        prop_assert_eq!(parse_ncl(&write_ncl(&ncl)).unwrap(), ncl);
    }
}
