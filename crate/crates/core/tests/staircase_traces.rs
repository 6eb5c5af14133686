use octcover::generate::script;
use octcover::staircase::{color_points, color_points_audited, Op, Role, StaircaseState};
use octcover::verify::{check_edge_witness, verify_prefix_wedges};

fn ops(name: &str, n: usize) -> Vec<(usize, Op)> {
    let run = color_points(&script(name, n).unwrap()).unwrap();
    run.state.trace().iter().map(|e| (e.time, e.op)).collect()
}

#[test]
fn comparable_script() {
    assert_eq!(ops("comparable", 0), [(2, Op::Comparable { p: 0, q: 1 })]);
}

#[test]
fn incomparable_script() {
    assert_eq!(ops("incomparable", 0), [(4, Op::Incomparable { q: [0, 1, 2, 3] })]);
}

#[test]
fn box_script() {
    assert_eq!(ops("box", 0), [(4, Op::Incomparable { q: [0, 1, 2, 3] }), (5, Op::Box { s1: 1, s2: 2, p: 4 })]);
    let run = color_points(&script("box", 0).unwrap()).unwrap();
    assert_eq!(run.state.staircase(), [1, 4, 2]);
}

#[test]
fn above_script() {
    assert_eq!(ops("above", 0), [(4, Op::Incomparable { q: [0, 1, 2, 3] }), (5, Op::Above { p: 4, s: 1 })]);
    let run = color_points(&script("above", 0).unwrap()).unwrap();
    assert_eq!(run.state.role(4), Role::Above);
    assert_eq!(run.state.staircase(), [1, 2]);
}

#[test]
fn chain_needs_one_edge() {
    assert_eq!(ops("chain", 12), [(2, Op::Comparable { p: 0, q: 1 })]);
}

#[test]
fn edges_are_properly_colored() {
    for name in ["box", "above", "incomparable"] {
        let run = color_points(&script(name, 0).unwrap()).unwrap();
        for e in run.state.edges() {
            assert_ne!(run.coloring.get(e.a), run.coloring.get(e.b), "{name}");
        }
    }
}

#[test]
fn long_scripts_verify() {
    for name in ["chain", "staircase"] {
        for n in [9, 20, 64] {
            let set = script(name, n).unwrap();
            let (run, _) = color_points_audited(&set).unwrap();
            assert!(verify_prefix_wedges(&set, &run.coloring, 9).unwrap().ok);
            assert!(check_edge_witness(&set, run.state.edges(), 9).unwrap().ok);
        }
    }
}

#[test]
fn stepping_matches_batch() {
    let set = script("box", 0).unwrap();
    let mut st = StaircaseState::<i64>::new();
    let mut fired = Vec::new();
    for p in set.points() {
        st.insert(p.x.numer().try_into().unwrap(), p.y.numer().try_into().unwrap()).unwrap();
        while let Some(op) = st.step().unwrap() {
            fired.push(op);
        }
    }
    let batch: Vec<Op> = ops("box", 0).into_iter().map(|(_, op)| op).collect();
    assert_eq!(fired, batch);
    assert!(st.next_op().is_none());
}
