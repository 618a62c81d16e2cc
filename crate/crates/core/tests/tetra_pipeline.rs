use symcov::families::px_graph;
use symcov::graph::are_isomorphic;
use symcov::tetra::{
    analyze_stabilizer, construct_pseudocover, exhaustive_pseudocovers, first_variant_matches, is_d16_pair,
    psl2_example, variant_subgroups, LocalBranch,
};

#[test]
fn c263_output_against_c261_and_c265() {
    let pc = construct_pseudocover(&px_graph(2, 6, 3).unwrap()).unwrap();
    let gamma = pc.pair.gamma().graph();
    let c261 = px_graph(2, 6, 1).unwrap();
    let c265 = px_graph(2, 6, 5).unwrap();
    let vs1 = are_isomorphic(gamma, c261.graph()).unwrap();
    let vs5 = are_isomorphic(gamma, c265.graph()).unwrap();
    println!("construction on C(2,6,3): {} vertices; ≅ C(2,6,1): {vs1}; ≅ C(2,6,5): {vs5}", gamma.vertex_count());
    assert!(!vs1);
    assert!(vs5);
}

#[test]
fn first_variant_against_gamma() {
    for (r, s) in [(6usize, 3usize), (6, 2), (7, 3)] {
        let sigma = px_graph(2, r, s).unwrap();
        let pc = construct_pseudocover(&sigma).unwrap();
        let vars = variant_subgroups(&sigma, &pc.data).unwrap();
        let iso = first_variant_matches(&pc, &vars).unwrap();
        let conn: Vec<bool> = vars.iter().map(|v| v.connected).collect();
        println!("C(2,{r},{s}): Γ1 ≅ Γ: {iso}; connected L1..L4: {conn:?}");
        assert!(iso);
        assert_eq!(conn, vec![true, false, false, false]);
    }
}

#[test]
fn applied_twice_to_c271() {
    let sigma = px_graph(2, 7, 1).unwrap();
    let first = construct_pseudocover(&sigma).unwrap();
    let second = construct_pseudocover(first.pair.gamma()).unwrap();
    assert_eq!(
        (sigma.vertex_count(), first.pair.gamma().vertex_count(), second.pair.gamma().vertex_count()),
        (14, 56, 224)
    );
    assert!(second.report.is_pseudocover);
}

#[test]
fn psl2_17() {
    let ex = psl2_example(17).unwrap();
    assert!(is_d16_pair(&ex.a, &ex.b));
    assert_eq!(ex.sigma.vertex_count(), 153);
    assert_eq!(ex.sigma.valency().unwrap(), 4);
    assert!(ex.sigma.is_connected().unwrap());
    assert_eq!(ex.arc_stab.order(), 4);
    let d = analyze_stabilizer(&ex.sigma).unwrap();
    assert_eq!((d.branch, d.vertex_stab.order()), (LocalBranch::D8, 16));
    let pc = construct_pseudocover(&ex.sigma).unwrap();
    assert_eq!(pc.pair.gamma().vertex_count(), 612);
    assert!(pc.report.is_pseudocover && pc.pair.gamma().is_connected().unwrap());
    let small = ex.small_pair().unwrap();
    let r = small.classify().unwrap();
    println!(
        "PSL(2,17): a = {}, b = {}, g = {}; L = <a^4, ab>: pseudocover {}, connected {}",
        ex.a,
        ex.b,
        ex.flip,
        r.is_pseudocover,
        small.gamma().is_connected().unwrap()
    );
    assert!(r.is_pseudocover);
}

#[test]
fn no_connected_pseudocover_below_16() {
    for (r, s) in [(4usize, 2usize), (4, 3), (5, 3), (5, 4), (6, 4), (6, 5)] {
        let sigma = px_graph(2, r, s).unwrap();
        assert!(sigma.stabilizer().order() <= 8);
        assert!(exhaustive_pseudocovers(&sigma).unwrap().is_empty(), "C(2,{r},{s})");
    }
    // at 16 the search does find one
    assert!(!exhaustive_pseudocovers(&px_graph(2, 6, 3).unwrap()).unwrap().is_empty());
}
