use icover::cover::{minimal_covering_set, solid_prefix_occurrences};
use icover::generate::{instance_rng, random_cnf, random_istring, InstanceParams};
use icover::lcp::occurrences;
use icover::oracle::{brute_sat, brute_shortest_cover, brute_universal_mismatch, is_cover, naive_occurrences};
use icover::reduction::{cnf_to_mismatch, decode_cover, encode_cover, mismatch_to_cnf, Tri};
use icover::{
    ambiguous_positions, fpt_solve_general, maxgap, odot_prefix_solve, shortest_cover_restricted,
    GapList, IString, LcpIndex, Limits, SolidColumnTable, TestCover,
};
use proptest::prelude::*;

fn arb_istring(max_n: usize, max_k: usize, max_sigma: usize) -> impl Strategy<Value = IString> {
    (1..=max_n, 0..=max_k, 2..=max_sigma, any::<bool>(), 0usize..=4, any::<u64>()).prop_map(
        |(n, k, sigma, partial, period, seed)| {
            let params = InstanceParams {
                period: (period > 0).then_some(period),
                ..InstanceParams::new(n, k.min(n), sigma, partial)
            };
            random_istring(&params, &mut instance_rng(seed, 0)).unwrap()
        },
    )
}

fn naive_match(a: &IString, i: usize, b: &IString, j: usize) -> bool {
    a.cell(i).intersects(&b.cell(j))
}

fn naive_lcp(t: &IString, i: usize, j: usize) -> usize {
    let n = t.len();
    (0..).take_while(|&d| i + d <= n && j + d <= n && naive_match(t, i + d, t, j + d)).count()
}

/// Number of length-`m` occurrences from `set` covering each position.
fn coverage(n: usize, m: usize, set: &[usize]) -> Vec<usize> {
    let mut hits = vec![0; n + 1];
    for &i in set {
        hits[i..i + m].iter_mut().for_each(|h| *h += 1);
    }
    hits
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symbols_match_is_set_intersection(t in arb_istring(30, 10, 5)) {
        for i in 1..=t.len() {
            for j in 1..=t.len() {
                prop_assert_eq!(t.symbols_match(i, j).unwrap(), naive_match(&t, i, &t, j));
            }
        }
    }

    #[test]
    fn odot_matches_both_factors(t in arb_istring(20, 8, 4), m in 1usize..=20) {
        let m = m.min(t.len());
        for i in 1..=t.len() + 1 - m {
            match t.odot(m, i) {
                Ok(u) => {
                    prop_assert!(t.match_factors(1, i, m).unwrap());
                    prop_assert!((1..=m).all(|z| naive_match(&u, z, &t, z)));
                    prop_assert!((1..=m).all(|z| naive_match(&u, z, &t, i + z - 1)));
                    prop_assert!((1..=m).all(|z| u.cell(z).is_subset(&t.cell(z))));
                }
                Err(_) => prop_assert!(!t.match_factors(1, i, m).unwrap()),
            }
        }
    }

    #[test]
    fn reverse_is_an_involution(t in arb_istring(30, 10, 5)) {
        let back = t.reverse().reverse();
        prop_assert_eq!(back.cells(), t.cells());
    }

    #[test]
    fn text_round_trips(t in arb_istring(30, 10, 5)) {
        let back = IString::parse_with(&t.to_text(), &icover::ParseOptions {
            alphabet: Some(t.alphabet().clone()),
            ..Default::default()
        }).unwrap();
        prop_assert_eq!(back.cells(), t.cells());
        prop_assert_eq!(back.to_text(), t.to_text());
    }

    #[test]
    fn lcp_equals_naive_scan(t in arb_istring(200, 12, 4)) {
        let idx = LcpIndex::build(&t);
        let n = t.len();
        let step = (n / 40).max(1);
        for i in (1..=n).step_by(step) {
            for j in 1..=n {
                let l = idx.lcp(i, j);
                prop_assert_eq!(l, naive_lcp(&t, i, j), "lcp({}, {})", i, j);
                prop_assert_eq!(l, idx.lcp(j, i));
            }
        }
    }

    #[test]
    fn occurrences_equal_naive_matching(t in arb_istring(60, 8, 3), seed in any::<u64>(), m in 1usize..=6) {
        let sigma = t.sigma();
        let params = InstanceParams::new(m, (m / 2).min(2), sigma, seed % 2 == 0);
        let s = random_istring(&params, &mut instance_rng(seed, 1)).unwrap();
        let expected: Vec<usize> = (1..=(t.len() + 1).saturating_sub(m))
            .filter(|&j| (1..=m).all(|z| naive_match(&s, z, &t, j + z - 1)))
            .collect();
        prop_assert_eq!(occurrences(&s, &t).unwrap(), expected);
    }

    #[test]
    fn nonsolid_occurrences_are_ambiguous(t in arb_istring(40, 8, 3), b in 1usize..=40) {
        let n = t.len();
        let b = b.min(n);
        let holes = t.nonsolid_positions();
        let e = holes.iter().find(|&&z| z > b).map_or(n, |&z| z - 1);
        let idx = LcpIndex::build(&t);
        let c = idx.classify_prefix_occurrences(b, e).unwrap();
        let ambiguous = ambiguous_positions(&t);
        for j in &c.nonsolid {
            prop_assert!(ambiguous.binary_search(j).is_ok(), "{} not ambiguous", j);
        }
        for class in &c.classes {
            for &j in &class.members {
                prop_assert!(class.reach >= idx.lcp(1, j).min(e));
            }
            prop_assert_eq!(class.reach, idx.lcp(1, class.representative).min(e));
        }
    }

    #[test]
    fn gap_list_tracks_maxgap(
        raw in proptest::collection::btree_set(1usize..200, 2..40),
        order in proptest::collection::vec(any::<prop::sample::Index>(), 0..60),
    ) {
        let positions: Vec<usize> = raw.into_iter().collect();
        let mut list = GapList::new(&positions).unwrap();
        let mut last = list.maxgap();
        prop_assert_eq!(last, maxgap(&positions).unwrap());
        for ix in order {
            let x = *ix.get(&positions);
            list.remove(x);
            let now = list.maxgap();
            prop_assert_eq!(now, maxgap(&list.to_vec()).unwrap());
            prop_assert!(now >= last);
            last = now;
        }
        prop_assert_eq!(list.first(), positions[0]);
        prop_assert_eq!(*list.to_vec().last().unwrap(), *positions.last().unwrap());
    }

    #[test]
    fn restricted_search_on_solid_text_is_classical(t in arb_istring(40, 0, 3)) {
        let idx = LcpIndex::build(&t);
        let all: Vec<usize> = (1..=t.len()).collect();
        let s = t.solid_ranks().unwrap();
        let got = shortest_cover_restricted(&idx, &s, &all).unwrap();
        let oracle = brute_shortest_cover(&t, Limits::default().oracle_budget).unwrap();
        prop_assert_eq!(got, Some(oracle.shortest.length));
    }

    #[test]
    fn restricted_search_matches_brute_force(
        t in arb_istring(18, 4, 3),
        keep in proptest::collection::vec(any::<bool>(), 18),
        seed in any::<u64>(),
    ) {
        use rand::Rng;
        let n = t.len();
        let mut rng = instance_rng(seed, 2);
        let s: Vec<u8> = (1..=n)
            .map(|z| {
                let options: Vec<u8> = t.cell(z).iter().collect();
                options[rng.gen_range(0..options.len())]
            })
            .collect();
        let l: Vec<usize> = (1..=n).filter(|&i| i == 1 || keep[i - 1]).collect();
        let expected = (1..=n).find(|&m| {
            let occ: Vec<usize> = naive_occurrences(&s[..m], &t)
                .into_iter()
                .filter(|i| l.binary_search(i).is_ok())
                .collect();
            occ.first() == Some(&1)
                && occ.last() == Some(&(n + 1 - m))
                && occ.windows(2).all(|w| w[1] - w[0] <= m)
        });
        let idx = LcpIndex::build(&t);
        prop_assert_eq!(shortest_cover_restricted(&idx, &s, &l).unwrap(), expected);
    }

    #[test]
    fn greedy_covering_sets_overlap_at_most_twice(t in arb_istring(16, 4, 3)) {
        let idx = LcpIndex::build(&t);
        let r = fpt_solve_general(&idx, &Limits::default()).unwrap();
        let n = t.len();
        prop_assert!(is_cover(&r.witness, &t));
        prop_assert!(maxgap(&[&r.covering_set[..], &[n + 1]].concat()).unwrap() <= r.length);
        let hits = coverage(n, r.length, &r.covering_set);
        prop_assert!(hits[1..].iter().all(|&h| (1..=2).contains(&h)), "{:?}", hits);
        for &i in &r.covering_set {
            prop_assert!(naive_occurrences(&r.witness, &t).contains(&i));
        }
    }

    #[test]
    fn ambiguous_positions_match_definition(t in arb_istring(40, 8, 3)) {
        let n = t.len();
        let holes = t.nonsolid_positions();
        let expected: Vec<usize> = (1..=n)
            .filter(|&j| (0..n).any(|l| {
                j + l <= n && holes.contains(&(1 + l)) && holes.contains(&(j + l))
            }))
            .collect();
        prop_assert_eq!(ambiguous_positions(&t), expected);
    }

    #[test]
    fn column_table_matches_direct_intersection(t in arb_istring(30, 8, 5), masks in proptest::collection::vec(any::<u16>(), 20)) {
        let k = t.k();
        let table = SolidColumnTable::build(&t, 20).unwrap();
        let holes = t.nonsolid_positions();
        for raw in masks {
            let mask = raw as usize & ((1usize << k) - 1);
            let chosen: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| holes[b]).collect();
            let direct = chosen
                .iter()
                .fold(t.alphabet().full_set(), |acc, &z| acc.intersect(&t.cell(z)))
                .first();
            prop_assert_eq!(table.common_symbol(&chosen).unwrap(), direct);
        }
    }

    #[test]
    fn test_cover_witnesses_are_valid(t in arb_istring(16, 5, 3), picks in proptest::collection::vec(any::<bool>(), 16)) {
        let n = t.len();
        let idx = LcpIndex::build(&t);
        let limits = Limits::default();
        let p: Vec<usize> = (1..=n).filter(|&i| i == 1 || picks[i - 1]).collect();
        let fast = TestCover::prepare(&idx, &limits).test(&p).unwrap();
        let direct = TestCover::direct(&idx).test(&p).unwrap();
        prop_assert_eq!(&fast, &direct);
        let m = n + 1 - p[p.len() - 1];
        match fast {
            Some(w) => {
                prop_assert_eq!(w.len(), m);
                let occ = naive_occurrences(&w, &t);
                prop_assert!(p.iter().all(|i| occ.contains(i)));
                prop_assert!(p.windows(2).all(|x| x[1] - x[0] <= m));
                prop_assert!(is_cover(&w, &t));
            }
            None => {
                // no string of length m occurs at all of P with P covering T
                let gaps_ok = p[0] == 1 && p.windows(2).all(|x| x[1] - x[0] <= m);
                if gaps_ok {
                    let oracle = icover::oracle::covers_of_length(&t, m, limits.oracle_budget).unwrap();
                    for w in oracle {
                        let occ = naive_occurrences(&w, &t);
                        prop_assert!(!p.iter().all(|i| occ.contains(i)));
                    }
                }
            }
        }
    }

    #[test]
    fn non_odot_covers_have_small_ambiguous_certificates(t in arb_istring(14, 4, 3)) {
        let idx = LcpIndex::build(&t);
        let oracle = brute_shortest_cover(&t, Limits::default().oracle_budget).unwrap();
        let odot = odot_prefix_solve(&idx).unwrap().unwrap();
        if odot.length > oracle.shortest.length {
            let (n, m) = (t.len(), oracle.shortest.length);
            let a = ambiguous_positions(&t);
            let certified = oracle.shortest_witnesses.iter().any(|w| {
                let occ: Vec<usize> = naive_occurrences(w, &t)
                    .into_iter()
                    .filter(|i| a.binary_search(i).is_ok())
                    .collect();
                minimal_covering_set(n, m, &occ).is_some_and(|set| set.len() <= 2 * t.k())
            });
            prop_assert!(certified, "{}", t.to_text());
        }
    }

    #[test]
    fn fast_results_pass_the_oracle_check(t in arb_istring(40, 6, 4)) {
        let idx = LcpIndex::build(&t);
        let r = fpt_solve_general(&idx, &Limits::default()).unwrap();
        prop_assert!(is_cover(&r.witness, &t));
        let occ = solid_prefix_occurrences(&idx, &r.witness);
        prop_assert_eq!(occ, naive_occurrences(&r.witness, &t));
    }

    #[test]
    fn mismatch_and_sat_agree(p in 1usize..=6, m in 0usize..=6, width in 1usize..=3, seed in any::<u64>()) {
        let formula = random_cnf(p, m, width, &mut instance_rng(seed, 3)).unwrap();
        let inst = cnf_to_mismatch(&formula).unwrap();
        let solutions = brute_universal_mismatch(&inst.words, inst.p, 1 << 20).unwrap();
        prop_assert_eq!(!solutions.is_empty(), brute_sat(&formula).unwrap());
        let back = mismatch_to_cnf(&inst);
        prop_assert_eq!(back.clauses(), formula.clauses());
        for v in solutions {
            prop_assert!(formula.evaluate(&icover::reduction::vector_to_assignment(&v)));
            prop_assert_eq!(decode_cover(&encode_cover(&v), p), Some(v));
        }
    }

    #[test]
    fn tri_words_round_trip(v in proptest::collection::vec(0u8..3, 0..8)) {
        let v: Vec<Tri> = v.into_iter().map(|x| [Tri::Zero, Tri::One, Tri::Hole][x as usize]).collect();
        prop_assert_eq!(Tri::parse_word(&Tri::render_word(&v)).unwrap(), v.clone());
        prop_assert_eq!(decode_cover(&encode_cover(&v), v.len()), Some(v));
    }
}
