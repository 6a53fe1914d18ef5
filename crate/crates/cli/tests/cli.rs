use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

use reconfig_core::format::{parse_certificate, parse_instance, parse_ncl, write_instance};
use reconfig_core::graph::{elimination_order, split_partition};
use reconfig_core::model::validate_sequence;
use reconfig_core::{Graph, ReconfigInstance, Rule};

fn reconfig(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_reconfig")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// Value of `key: value` in a report.
fn field(o: &Output, key: &str) -> Option<String> {
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")).map(str::to_owned))
}

struct Dir(TempDir);

impl Dir {
    fn new() -> Self {
        Dir(tempfile::tempdir().unwrap())
    }

    fn path(&self, name: &str) -> PathBuf {
        self.0.path().join(name)
    }

    fn file(&self, name: &str, text: &str) -> String {
        let p = self.path(name);
        fs::write(&p, text).unwrap();
        s(&p)
    }
}

fn s(p: &Path) -> String {
    p.to_str().unwrap().to_owned()
}

fn star(c: usize, source: &[usize], target: &[usize]) -> String {
    let g = Graph::star(3);
    let inst = ReconfigInstance::from_sets(g.clone(), c, Rule::TokenSliding, g.vertex_set(source), g.vertex_set(target))
        .unwrap();
    write_instance(&inst)
}

#[test]
fn solve_star_writes_a_two_move_certificate() {
    let d = Dir::new();
    let inst = d.file("star.inst", &star(2, &[1, 2], &[2, 3]));
    let cert = s(&d.path("w.cert"));
    let o = reconfig(&["solve", &inst, "--cert", &cert]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(field(&o, "reachable").as_deref(), Some("yes"));
    assert_eq!(field(&o, "length").as_deref(), Some("2"));
    let w = parse_certificate(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(w.len(), 2);
    let v = reconfig(&["verify", &inst, &cert]);
    assert_eq!(code(&v), 0);
}

#[test]
fn solve_rejects_color_bound_one() {
    let d = Dir::new();
    let inst = d.file("star.inst", &star(1, &[1, 2], &[2, 3]));
    let o = reconfig(&["solve", &inst]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("PSPACE-complete"), "{}", stderr(&o));
}

#[test]
fn solve_equal_sets_gives_empty_certificate() {
    let d = Dir::new();
    let inst = d.file("same.inst", &star(2, &[1, 2], &[1, 2]));
    let cert = s(&d.path("w.cert"));
    let o = reconfig(&["solve", &inst, "--cert", &cert]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(&cert).unwrap().trim(), "");
}

#[test]
fn solve_rejects_non_split_and_garbage() {
    let d = Dir::new();
    let c4 = d.file("c4.inst", "p inst\nc 2\nrule ts\np graph 4 4\ne 0 1\ne 1 2\ne 2 3\ne 0 3\ns 0\nt 2\n");
    assert_eq!(code(&reconfig(&["solve", &c4])), 2);
    let bad = d.file("bad.inst", "p inst\nc two\nrule ts\np graph 1 0\ns 0\nt 0\n");
    let o = reconfig(&["solve", &bad]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    assert_eq!(code(&reconfig(&["solve"])), 2);
}

#[test]
fn oracle_reports_reachability() {
    let d = Dir::new();
    let p3 = d.file("p3.inst", "p inst\nc 1\nrule ts\np graph 3 2\ne 0 1\ne 1 2\ns 0\nt 2\n");
    let o = reconfig(&["oracle", &p3]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&o, "length").as_deref(), Some("2"));
    assert!(stderr(&o).contains("reachable l=2"));

    let star1 = d.file("star1.inst", &star(1, &[1, 2], &[2, 3]));
    let o = reconfig(&["oracle", &star1]);
    assert_eq!(code(&o), 1);
    assert_eq!(field(&o, "reachable").as_deref(), Some("no"));
    assert!(stderr(&o).contains("unreachable"));

    let o = reconfig(&["oracle", &p3, "--max-states", "1"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn verify_reports_first_bad_move() {
    let d = Dir::new();
    let inst = d.file("star.inst", &star(2, &[1, 2], &[2, 3]));
    let short = d.file("short.cert", "sl 1 0\n");
    let o = reconfig(&["verify", &inst, &short]);
    assert_eq!(code(&o), 1);
    assert_eq!(field(&o, "index").as_deref(), Some("1"));

    let other = d.file("other.inst", &star(2, &[1, 2], &[1, 3]));
    let cert = d.file("w.cert", "sl 1 0\nsl 0 3\n");
    assert_eq!(code(&reconfig(&["verify", &other, &cert])), 1);
    let off_edge = d.file("off.cert", "sl 1 3\n");
    let o = reconfig(&["verify", &inst, &off_edge]);
    assert_eq!(field(&o, "index").as_deref(), Some("0"));
}

#[test]
fn ncl_to_split_pipeline() {
    let d = Dir::new();
    let ncl = s(&d.path("m.ncl"));
    assert_eq!(code(&reconfig(&["gen", "ncl", "--seed", "4", "--ors", "2", "--ands", "0", "-o", &ncl])), 0);
    let machine = parse_ncl(&fs::read_to_string(&ncl).unwrap()).unwrap();
    assert_eq!(machine.m(), 6);

    let gb = s(&d.path("gb.inst"));
    let o = reconfig(&["reduce", "ncl-to-split", &ncl, "--stage", "gb", "-o", &gb]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(d.path("gb.map").exists());
    let gb_cert = s(&d.path("gb.cert"));
    let map = s(&d.path("gb.map"));
    let o = reconfig(&["oracle", &gb, "--filter", "no-both-selectors", "--map", &map, "--cert", &gb_cert]);
    let machine_reachable = code(&reconfig(&["oracle", &ncl]));
    assert_eq!(code(&o), machine_reachable);

    let gf = s(&d.path("gf.inst"));
    let gf_cert = s(&d.path("gf.cert"));
    let mut args = vec!["reduce", "ncl-to-split", ncl.as_str(), "--stage", "gf", "-o", gf.as_str()];
    if code(&o) == 0 {
        args.extend(["--lift", gb_cert.as_str(), "--cert-out", gf_cert.as_str()]);
    }
    let o = reconfig(&args);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(field(&o, "copies").as_deref(), Some("10"));
    let amp = parse_instance(&fs::read_to_string(&gf).unwrap()).unwrap();
    assert!(split_partition(&amp.graph).is_some());
    if machine_reachable == 0 {
        assert_eq!(code(&reconfig(&["verify", &gf, &gf_cert])), 0);
        let back = s(&d.path("back.cert"));
        let o = reconfig(&["reduce", "ncl-to-split", &ncl, "--stage", "gf", "-o", &gf, "--project", &gf_cert, "--cert-out", &back]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_eq!(code(&reconfig(&["verify", &gb, &back])), 0);
    }
}

#[test]
fn lift_on_gb_certificate_verifies_on_gf() {
    // seeds are scanned until a reachable machine turns up
    let d = Dir::new();
    for seed in 0..20 {
        let ncl = s(&d.path("m.ncl"));
        reconfig(&["gen", "ncl", "--seed", &seed.to_string(), "--ands", "0", "--ors", "2", "-o", &ncl]);
        let gb = s(&d.path("gb.inst"));
        reconfig(&["reduce", "ncl-to-split", &ncl, "--stage", "gb", "-o", &gb]);
        let gb_cert = s(&d.path("gb.cert"));
        let map = s(&d.path("gb.map"));
        let o = reconfig(&["oracle", &gb, "--filter", "no-both-selectors", "--map", &map, "--cert", &gb_cert]);
        if code(&o) != 0 || field(&o, "length").as_deref() == Some("0") {
            continue;
        }
        let (gf, gf_cert) = (s(&d.path("gf.inst")), s(&d.path("gf.cert")));
        let o = reconfig(&["reduce", "ncl-to-split", &ncl, "-o", &gf, "--lift", &gb_cert, "--cert-out", &gf_cert]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_eq!(code(&reconfig(&["verify", &gf, &gf_cert])), 0);
        return;
    }
    panic!("no reachable machine among the seeds");
}

#[test]
fn split_to_chordal_output_is_chordal() {
    let d = Dir::new();
    let p3 = d.file("p3.inst", "p inst\nc 1\nrule ts\np graph 3 2\ne 0 1\ne 1 2\ns 0\nt 2\n");
    let out = s(&d.path("ch.inst"));
    let o = reconfig(&["reduce", "split-to-chordal", &p3, "--c", "2", "-o", &out]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let inst = parse_instance(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(elimination_order(&inst.graph).is_some());
    assert_eq!(inst.graph.n(), 3 + 2 * 3);
    assert_eq!(code(&reconfig(&["oracle", &out])), 0);
    let map = fs::read_to_string(d.path("ch.map")).unwrap();
    assert!(map.contains("# map 3 attach 0 0 0"));
    assert_eq!(code(&reconfig(&["reduce", "split-to-chordal", &p3, "--c", "1"])), 2);
}

#[test]
fn dsr_to_split_and_ds_oracle_agree() {
    let d = Dir::new();
    let ds = s(&d.path("g.ds"));
    assert_eq!(code(&reconfig(&["gen", "ds", "--seed", "3", "--n", "5", "--bound", "2", "--size", "2", "--rule", "tj", "-o", &ds])), 0);
    let truth = code(&reconfig(&["oracle", &ds]));
    for rule in ["ts", "tj", "tar"] {
        let out = s(&d.path(&format!("{rule}.inst")));
        assert_eq!(code(&reconfig(&["reduce", "dsr-to-split", &ds, "--rule", rule, "-o", &out])), 0);
        assert_eq!(code(&reconfig(&["oracle", &out])), truth, "rule {rule}");
    }
}

#[test]
fn gen_is_deterministic_and_valid() {
    let d = Dir::new();
    let a = reconfig(&["gen", "split", "--seed", "9", "--n", "14", "--colors", "3", "--tokens", "5"]);
    let b = reconfig(&["gen", "split", "--seed", "9", "--n", "14", "--colors", "3", "--tokens", "5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let inst = parse_instance(&stdout(&a)).unwrap();
    assert!(split_partition(&inst.graph).is_some());
    let path = d.file("gen.inst", &stdout(&a));
    let cert = s(&d.path("gen.cert"));
    let o = reconfig(&["solve", &path, "--cert", &cert, "--jobs", "2"]);
    if code(&o) == 0 {
        let w = parse_certificate(&fs::read_to_string(&cert).unwrap()).unwrap();
        assert!(validate_sequence(&inst, &w).is_valid());
    } else {
        assert_eq!(code(&o), 1);
    }

    let n1 = reconfig(&["gen", "ncl", "--seed", "2", "--ands", "4"]);
    let ncl = parse_ncl(&stdout(&n1)).unwrap();
    assert!(ncl.orientation_valid(&ncl.initial) && ncl.orientation_valid(&ncl.target));
    assert_eq!(code(&reconfig(&["gen", "ncl", "--ands", "1", "--ors", "1"])), 2);
    assert_eq!(code(&reconfig(&["gen", "split", "--n", "4", "--clique", "4", "--tokens", "4", "--colors", "2"])), 2);
}

#[test]
fn inspect_reports_and_draws() {
    let d = Dir::new();
    let inst = d.file("star.inst", &star(2, &[1, 2], &[2, 3]));
    let o = reconfig(&["inspect", &inst]);
    assert_eq!(field(&o, "split").as_deref(), Some("yes"));
    assert_eq!(field(&o, "clique_number").as_deref(), Some("2"));
    let ncl = s(&d.path("m.ncl"));
    reconfig(&["gen", "ncl", "-o", &ncl]);
    let o = reconfig(&["inspect", &ncl, "--dot"]);
    assert!(stdout(&o).starts_with("graph G {"));
    assert!(stdout(&o).contains("shape=box"));
}
