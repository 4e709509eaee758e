//! Acceptance suite: end-to-end checks of the worked examples, the
//! cross-pipeline equivalences and the scaling families. Each test
//! prints one pass line; run with `--nocapture` to see them.

mod common;

use std::collections::BTreeSet;

use common::brute_force_mts_of;
use ht_core::enumerate::{enumerate, Backend};
use ht_core::fd::{
    agree_sets, attribute_hypergraph, cmax_sets, concise_cover, conditional_fds, expand_cover,
    max_sets, minimal_cover, parse_relation,
};
use ht_core::genbench::{bench_csv, bench_run, gen_random, gen_worst_case, BenchAlgo, RandomSpec};
use ht_core::hypergraph::{min_reduce, parse_hypergraph, Hypergraph, MtSet, VertexSet};
use ht_core::irredundant::{
    build_irredundant, compaction_rate, expand_mts, imt_extract, search_substitution,
};
use ht_core::localgen::{enumerate_local, enumerate_local_detailed};
use ht_core::tmm::{extract_tmm, recouvrement, TmmMode};
use ht_core::transversality::{exact_tau, greedy_transversality};

const FOUR_EDGE_SAMPLE: &str = "1 2\n2 3 4\n3 4 5 6 7\n7 8 9\n";
const COMMUNITY_SAMPLE: &str = "1 2\n2 3 7\n3 4 5\n4 6\n6 7 8\n7\n";

const REL_CSV: &str = "\
A,B,C,D,E
1,100,1,2,50
4,101,1,2,50
1,102,2,2,70
1,200,1,2,50
2,101,3,3,100
2,200,1,3,70
1,100,3,2,50
";

fn sets(rows: &[&[u32]]) -> MtSet {
    rows.iter().map(|r| VertexSet::from(*r)).collect()
}

fn random_instance(seed: u64) -> Hypergraph {
    let spec = RandomSpec {
        n: 5 + (seed % 16) as u32, // at most 20
        m: 2 + (seed % 14) as u32, // at most 15
        p_l: 0.1,
        p_u: 0.4,
        seed,
    };
    gen_random(&spec).unwrap()
}

#[test]
fn criterion_1_irredundant_pipeline_on_main_example() {
    let h = parse_hypergraph(FOUR_EDGE_SAMPLE).unwrap();

    let gn = search_substitution(&h);
    assert_eq!(gn.groups.len(), 6);
    assert_eq!(gn.representatives(), VertexSet::from([1, 2, 3, 5, 7, 8]));

    let hi = build_irredundant(&h, &gn).unwrap();
    let edges: Vec<&[u32]> = hi.edges().collect();
    assert_eq!(
        edges,
        vec![&[1, 2][..], &[2, 3][..], &[3, 5, 7][..], &[7, 8][..]]
    );

    let r = imt_extract(&h, Backend::Mmcs).unwrap();
    assert_eq!(
        r.irredundant_mts,
        sets(&[&[2, 7], &[1, 3, 7], &[1, 3, 8], &[2, 3, 8], &[2, 5, 8]])
    );

    let full = expand_mts(&r.irredundant_mts, &gn).unwrap();
    let expected = sets(&[
        &[2, 7],
        &[1, 3, 7],
        &[1, 4, 7],
        &[1, 3, 8],
        &[1, 4, 8],
        &[1, 3, 9],
        &[1, 4, 9],
        &[2, 3, 8],
        &[2, 4, 8],
        &[2, 3, 9],
        &[2, 4, 9],
        &[2, 5, 8],
        &[2, 5, 9],
        &[2, 6, 8],
        &[2, 6, 9],
    ]);
    assert_eq!(full, expected);
    assert_eq!(full.len(), 15);

    assert!((r.compaction - 2.0 / 3.0).abs() < 1e-12);
    println!("criterion 1: PASS (irredundant pipeline reproduces the 4-edge example)");
}

#[test]
fn criterion_2_multimember_reproduction() {
    let h = parse_hypergraph(COMMUNITY_SAMPLE).unwrap();

    let m2d = extract_tmm(&h, TmmMode::M2d).unwrap();
    let om2d = extract_tmm(&h, TmmMode::Om2d).unwrap();
    assert_eq!(m2d, om2d, "modes must agree exactly");

    assert_eq!(om2d.tau, 3);
    assert_eq!(om2d.smallest_mts, sets(&[&[1, 4, 7], &[2, 4, 7]]));
    assert_eq!(recouvrement(&h, &VertexSet::from([1, 4, 7])).unwrap(), 8);
    assert_eq!(recouvrement(&h, &VertexSet::from([2, 4, 7])).unwrap(), 10);
    assert_eq!(om2d.coverage[&VertexSet::from([1, 4, 7])], 8);
    assert_eq!(om2d.coverage[&VertexSet::from([2, 4, 7])], 10);
    assert_eq!(om2d.tmms, sets(&[&[2, 4, 7]]));

    // byte-identical rendering of both modes
    let render = |r: &ht_core::tmm::TmmResult| {
        let mut s = format!("{}\n", r.tau);
        for t in r.tmms.iter() {
            s.push_str(&format!("{t}\n"));
        }
        s
    };
    assert_eq!(render(&m2d), render(&om2d));
    println!("criterion 2: PASS (multi-member extraction reproduces tau=3, coverage 8/10)");
}

#[test]
fn criterion_3_functional_dependency_reproduction() {
    let r = parse_relation(REL_CSV).unwrap();
    let schema = r.attributes().to_vec();
    let pos = |name: &str| schema.iter().position(|s| s == name).unwrap() as u32;
    let attrs = |names: &[&str]| -> VertexSet { names.iter().map(|n| pos(n)).collect() };

    // agree sets: the eleven non-empty sets of the worked table (fully
    // disagreeing pairs additionally produce the empty set, recorded)
    let ag = agree_sets(&r).unwrap();
    let nonempty: BTreeSet<VertexSet> = ag.sets().filter(|s| !s.is_empty()).cloned().collect();
    let expected: BTreeSet<VertexSet> = [
        attrs(&["C", "D", "E"]),
        attrs(&["A", "D"]),
        attrs(&["D"]),
        attrs(&["A", "C", "D", "E"]),
        attrs(&["B"]),
        attrs(&["C"]),
        attrs(&["E"]),
        attrs(&["B", "C"]),
        attrs(&["A", "B", "D", "E"]),
        attrs(&["D", "E"]),
        attrs(&["A", "D", "E"]),
    ]
    .into_iter()
    .collect();
    assert_eq!(nonempty, expected);

    // max and cmax per attribute
    let check = |a: &str, max_expected: &[&[&str]], cmax_expected: &[&[&str]]| {
        let maxs = max_sets(&ag, pos(a)).unwrap();
        let got: BTreeSet<VertexSet> = maxs.iter().cloned().collect();
        let want: BTreeSet<VertexSet> = max_expected.iter().map(|n| attrs(n)).collect();
        assert_eq!(got, want, "max sets of {a}");
        let cmax = cmax_sets(&maxs, pos(a), r.attribute_count());
        let got: BTreeSet<VertexSet> = cmax.into_iter().collect();
        let want: BTreeSet<VertexSet> = cmax_expected.iter().map(|n| attrs(n)).collect();
        assert_eq!(got, want, "cmax sets of {a}");
    };
    check(
        "A",
        &[&["C", "D", "E"], &["B", "C"]],
        &[&["B"], &["D", "E"]],
    );
    check(
        "D",
        &[&["E"], &["B", "C"]],
        &[&["A", "B", "C"], &["A", "E"]],
    );
    check(
        "E",
        &[&["A", "D"], &["B", "C"]],
        &[&["B", "C"], &["A", "D"]],
    );

    // B and C admit no determining premise
    for a in ["B", "C"] {
        let maxs = max_sets(&ag, pos(a)).unwrap();
        let cmax = cmax_sets(&maxs, pos(a), r.attribute_count());
        assert!(attribute_hypergraph(&cmax).is_none(), "{a} must be skipped");
    }

    // minimal cover: nine dependencies
    let full = minimal_cover(&r, Backend::Mmcs).unwrap();
    assert_eq!(
        full.rendered_lines(&schema),
        vec![
            "A -> D", "A,B -> E", "A,C -> E", "B,D -> A", "B,D -> E", "B,E -> A", "B,E -> D",
            "C,D -> E", "C,E -> D",
        ]
    );

    // concise cover: four dependencies; expansion recovers all nine
    let concise = concise_cover(&r, Backend::Mmcs).unwrap();
    assert_eq!(
        concise.rendered_lines(&schema),
        vec!["A -> D", "A,B -> E", "B,D -> A", "B,E -> D"]
    );
    assert_eq!(expand_cover(&concise).unwrap().fds, full.fds);

    // conditional dependencies
    let gn_map = concise.per_attribute_gn.as_ref().unwrap();
    let conds_a = conditional_fds(&r, pos("A"), &gn_map[&pos("A")], &ag).unwrap();
    assert_eq!(conds_a.len(), 1);
    assert_eq!(conds_a[0].fd.render(&schema), "E -> D");
    assert_eq!(conds_a[0].support_tuples, vec![0, 1, 3, 5]); // t1 t2 t4 t6
    assert!(conds_a[0].holds);

    let conds_e = conditional_fds(&r, pos("E"), &gn_map[&pos("E")], &ag).unwrap();
    let rendered: BTreeSet<String> = conds_e.iter().map(|c| c.fd.render(&schema)).collect();
    assert_eq!(
        rendered,
        ["C -> B".to_string(), "D -> A".to_string()]
            .into_iter()
            .collect()
    );
    println!("criterion 3: PASS (functional-dependency study reproduced end to end)");
}

#[test]
fn criterion_4_cross_backend_equivalence() {
    let mut mismatches = 0;
    for seed in 0..200u64 {
        let h = min_reduce(&random_instance(seed));
        let reference = enumerate(&h, Backend::Mmcs).unwrap();
        let berge = enumerate(&h, Backend::Berge).unwrap();
        let mtminer = enumerate(&h, Backend::MtMiner).unwrap();
        let local = enumerate_local(&h, Backend::Mmcs).unwrap();
        let imt = imt_extract(&h, Backend::Mmcs).unwrap();
        let expanded = expand_mts(&imt.irredundant_mts, &imt.generalized).unwrap();
        if berge != reference || mtminer != reference || local != reference || expanded != reference
        {
            mismatches += 1;
        }
    }
    assert_eq!(
        mismatches, 0,
        "all five pipelines must agree on 200 instances"
    );
    println!("criterion 4: PASS (berge = mtminer = mmcs = local = expand(imt) on 200 seeds)");
}

#[test]
fn criterion_5_worst_case_scaling() {
    let h = gen_worst_case(6, 3).unwrap();
    let mts = enumerate(&h, Backend::Mmcs).unwrap();
    assert_eq!(mts.len(), 729);

    let imt = imt_extract(&h, Backend::Mmcs).unwrap();
    assert_eq!(imt.irredundant_mts.len(), 1);
    assert!((imt.compaction - 728.0 / 729.0).abs() < 1e-12);
    assert!(
        (compaction_rate(729, 1).unwrap() - imt.compaction).abs() < 1e-15,
        "pipeline compaction must match the rate of its counts"
    );
    assert_eq!(exact_tau(&h), 6);

    let (local, _, stats) = enumerate_local_detailed(&h, Backend::Mmcs).unwrap();
    assert_eq!(local, mts);
    assert_eq!(stats.accepted_without_test, 729);
    assert_eq!(stats.tested, 0);
    println!("criterion 5: PASS (6x3 worst case: 729 traverses, 1 irredundant, all skips)");
}

#[test]
fn criterion_6_exponential_family() {
    for n in 2..=10u32 {
        let h = gen_worst_case(n, 2).unwrap();
        let mts = enumerate(&h, Backend::Mmcs).unwrap();
        assert_eq!(mts.len(), 2usize.pow(n), "n = {n}");
    }
    println!("criterion 6: PASS (n disjoint pairs yield exactly 2^n traverses, n = 2..=10)");
}

#[test]
fn criterion_7_duality_involution() {
    for seed in 1000..1050u64 {
        let spec = RandomSpec {
            n: 4 + (seed % 9) as u32, // at most 12
            m: 2 + (seed % 8) as u32,
            p_l: 0.2,
            p_u: 0.5,
            seed,
        };
        let h = min_reduce(&gen_random(&spec).unwrap());
        let mts = enumerate(&h, Backend::Mmcs).unwrap();
        let transversal =
            Hypergraph::new(mts.iter().map(|t| t.iter().collect()).collect()).unwrap();
        assert!(transversal.is_simple(), "traverse sets form an antichain");
        let back = enumerate(&transversal, Backend::Mmcs).unwrap();
        let original: MtSet = h.edges().map(VertexSet::from).collect();
        assert_eq!(back, original, "seed {seed}");
    }
    println!("criterion 7: PASS (traverses of the traverses restore the reduced edge set)");
}

#[test]
fn criterion_8_transversality() {
    // greedy never underestimates, and is tight on the worked examples
    let h = parse_hypergraph(FOUR_EDGE_SAMPLE).unwrap();
    let (k, _) = greedy_transversality(&h);
    assert_eq!((k, exact_tau(&h)), (2, 2));
    let h = parse_hypergraph(COMMUNITY_SAMPLE).unwrap();
    let (k, _) = greedy_transversality(&h);
    assert_eq!((k, exact_tau(&h)), (3, 3));

    for seed in 0..120u64 {
        let h = min_reduce(&random_instance(seed));
        let (k, t) = greedy_transversality(&h);
        let tau = exact_tau(&h);
        assert!(k >= tau, "greedy below exact on seed {seed}");
        assert_eq!(t.len(), k);
        if h.vertex_count() <= 15 {
            let min_size = brute_force_mts_of(&h)
                .iter()
                .map(|t| t.len())
                .min()
                .unwrap();
            assert_eq!(tau, min_size, "exact tau vs oracle on seed {seed}");
        }
    }
    println!("criterion 8: PASS (greedy >= exact everywhere; tight on the worked examples)");
}

#[test]
fn criterion_9_bench_smoke() {
    let instances = vec![
        (
            "main".to_string(),
            parse_hypergraph(FOUR_EDGE_SAMPLE).unwrap(),
        ),
        ("wc4x2".to_string(), gen_worst_case(4, 2).unwrap()),
    ];
    let rows = bench_run(
        &instances,
        &[BenchAlgo::Backend(Backend::Mmcs), BenchAlgo::Local],
        true,
    );
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert!(row.error.is_none());
        let mt = row.mt_count.unwrap();
        let irr = row.irr_count.unwrap();
        let theta = row.theta.unwrap();
        assert!(
            (theta - compaction_rate(mt, irr).unwrap()).abs() < 1e-12,
            "theta column must equal the rate of the two count columns"
        );
    }
    let csv = bench_csv(&rows, &[]);
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("id,n,m,backend,mt_count,irr_count,theta,tau,ms")
    );
    // recompute theta from the emitted text
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        let mt: u64 = cols[4].parse().unwrap();
        let irr: u64 = cols[5].parse().unwrap();
        let theta: f64 = cols[6].parse().unwrap();
        assert!((theta - compaction_rate(mt, irr).unwrap()).abs() < 1e-6);
    }
    println!("criterion 9: PASS (bench CSV internally consistent; larger tables out of scope)");
}
