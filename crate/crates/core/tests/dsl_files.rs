//! The shipped `.usm` examples and the statement forms of the grammar.

use std::fs;
use std::path::Path;

use usmod::dsl::{run_source, Program, Status};
use usmod::error::Error;

#[test]
fn shipped_examples_pass() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples");
    let mut seen = 0;
    for entry in fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "usm") {
            let session = run_source(&fs::read_to_string(&path).unwrap()).unwrap();
            assert!(session.all_pass(), "{}: {:?}", path.display(), session.results);
            seen += 1;
        }
    }
    assert!(seen >= 3);
}

#[test]
fn every_statement_form() {
    let src = "\
ring A = zmod 4
ring B = zmod 3
ring P = product A B
ring Q = quotient A {2}
module N over A = regular
ring T = trivext A N
mset U over A = units
mset One over A = trivial
ring R = zmod 6
mset S over R = closure {4}
mset C over R = complement_prime {3}
module M over R = regular
module Z over R = zero
sub K of M = gens {2}
sub H of M = torsion S
sub W of M = whole
sub O of M = zero
module KM = sub K
module MQ = quot M H
module D = dsum M KM
hom i : KM -> M = inclusion
hom q : M -> MQ = natural
hom f : M -> M = images {1: 4}
hom t : M -> M = scalar 3
hom g : M -> M = scalar 2
hom e : M -> M = identity
hom z : M -> Z = zero
assert size(P) == 12
assert size(Q) == 2
assert size(T) == 16
assert size(D) == 18
assert regular(U)
assert size(One) == 1
assert u_s_essential(K, S)
assert u_s_essential(K, C)
assert counterexample(H, S) != {}
assert s_torsion(M, S) == {0, 3}
assert kernel(f) == {0, 3}
assert image(g) == {0, 2, 4}
assert u_s_mono(f, S)
assert u_s_epi(q, S) == true
assert u_s_iso(i, S)
assert u_s_split(i, S)
assert u_s_essential_mono(i, S)
assert u_s_preenvelope(i, S)
assert u_s_envelope(i, S)
assert u_s_exact(t, g, S)
assert u_s_iso_exists(KM, M, S)
assert injective(M)
assert u_s_injective(D, S)
assert prime(M) == false
assert u_s_noetherian(R, S)
assert u_s_torsion(O, S)
assert u_s_torsion(W, S) == false
assert witness_s(K, S) == 4
assert essential_counterexample(K) == {0, 3}
assert u_s_mono(z, S) == false
assert u_s_mono(e, S)
";
    let session = run_source(src).unwrap();
    let bad: Vec<_> = session.results.iter().filter(|r| r.status != Status::Pass).collect();
    assert!(bad.is_empty(), "{bad:?}");
    assert_eq!(session.results.len(), src.lines().filter(|l| l.starts_with("assert")).count());
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let src = "# header\n\nring R = zmod 2   # trailing\nmodule M over R = regular\n\nassert size(M) == 2 # two\n";
    Program::parse(src).unwrap();
    let session = run_source(src).unwrap();
    assert_eq!(session.results.len(), 1);
    assert_eq!(session.results[0].line, 6);
}

#[test]
fn errors_carry_line_numbers() {
    for (src, line) in [
        ("ring R = zmod 6\nmodule M over R = regulr\n", 2),
        ("ring R = zmod 6\nsub K of M = gens {2}\n", 2),
        ("ring R = zmod 4\nmset S over R = closure {2\n", 2),
        ("ring R = zmod 6\nmodule M over R = regular\nsub K of M = gens {2}\nassert u_s_essential(K, S\n", 4),
        ("frobnicate\n", 1),
    ] {
        match run_source(src) {
            Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{src}"),
            other => panic!("{src}: expected a parse error, got {other:?}"),
        }
    }
}

#[test]
fn failing_assertions_report_the_actual_value() {
    let session = run_source("ring R = zmod 6\nmodule M over R = regular\nsub K of M = gens {2}\nassert essential(K)\n").unwrap();
    assert!(!session.all_pass());
    assert_eq!(session.results[0].status, Status::Fail);
    assert_eq!(session.results[0].actual, "false");
}
