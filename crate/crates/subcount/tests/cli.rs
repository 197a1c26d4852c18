use std::fs;
use std::path::Path;
use std::process::Command;

use subcount::formats::write_edgelist;
use subcount_core::generators as gen;
use subcount_core::oracle::oracle_cycles;
use subcount_core::Graph;
use tempfile::TempDir;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn subcount(args: &[&str]) -> Out {
    let out = Command::new(env!("CARGO_BIN_EXE_subcount")).args(args).output().unwrap();
    Out {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, g: &Graph) -> String {
    let p = dir.join(name);
    fs::write(&p, write_edgelist(g)).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn count_six_cycle_rows() {
    let dir = TempDir::new().unwrap();
    let c6 = write(dir.path(), "c6.el", &gen::cycle(6).unwrap());
    let out = subcount(&["count", "--input", &c6, "--substructure", "cycle6", "--level", "node"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let rows: Vec<_> = out.stdout.lines().skip(2).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.ends_with(",cycle6,1")));
}

#[test]
fn rook_triangles_match_oracle() {
    let dir = TempDir::new().unwrap();
    let rook = gen::rook4x4();
    let path = write(dir.path(), "rook.el", &rook);
    let out = subcount(&["count", "--input", &path, "--substructure", "cycle3", "--level", "graph"]);
    assert_eq!(out.code, 0);
    let want = oracle_cycles(&rook, 3).unwrap().graph;
    assert_eq!(out.stdout.lines().last(), Some(format!("cycle3,{want}").as_str()));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let c6 = write(dir.path(), "c6.el", &gen::cycle(6).unwrap());
    let out = subcount(&["count", "--input", &c6, "--substructure", "cycle6", "--hops", "2"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("at least 3 hops"), "{}", out.stderr);

    let bad = dir.path().join("loop.el");
    fs::write(&bad, "2 1\n0 0\n").unwrap();
    let out = subcount(&["count", "--input", bad.to_str().unwrap(), "--substructure", "cycle3"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("self-loop"), "{}", out.stderr);

    let out = subcount(&["oracle", "--input", &c6, "--substructure", "cycle9"]);
    assert_eq!(out.code, 2);
    let out = subcount(&["count", "--input", "/nonexistent.el", "--substructure", "cycle3"]);
    assert_eq!(out.code, 2);
    let out = subcount(&["oracle", "--input", &c6, "--substructure", "cycle6", "--budget", "1"]);
    assert_eq!(out.code, 3);
    assert_eq!(subcount(&["--help"]).code, 0);
}

#[test]
fn count_and_oracle_outputs_are_identical() {
    let dir = TempDir::new().unwrap();
    for seed in 0..3 {
        let g = write(dir.path(), &format!("r{seed}.el"), &gen::random(12, 0.35, seed).unwrap());
        for kind in ["path3", "cycle5", "cycle6", "clique4", "triangle_rectangle"] {
            for level in ["node", "graph"] {
                let args = ["--input", &g, "--substructure", kind, "--level", level, "--verbose"];
                let a = subcount(&[&["count"][..], &args].concat());
                let b = subcount(&[&["oracle"][..], &args].concat());
                assert_eq!(a.code, 0);
                assert_eq!(a.stdout, b.stdout, "{kind} {level}");
            }
        }
    }
}

#[test]
fn oracle_on_empty_graph() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "empty.el", &Graph::empty(0));
    let out = subcount(&["oracle", "--input", &g, "--substructure", "cycle4"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "# subcount-report v1\nnode,substructure,count\n");
}

#[test]
fn thread_count_does_not_change_output() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "r.el", &gen::random(30, 0.2, 9).unwrap());
    let one = subcount(&["--threads", "1", "count", "--input", &g, "--substructure", "cycle6", "--verbose"]);
    let four = subcount(&["--threads", "4", "count", "--input", &g, "--substructure", "cycle6", "--verbose"]);
    assert_eq!(one.code, 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn report_to_file() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "k4.el", &gen::complete(4));
    let out_path = dir.path().join("out.csv");
    let out = subcount(&["count", "--input", &g, "--substructure", "clique4", "--out", out_path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert!(fs::read_to_string(out_path).unwrap().ends_with("3,clique4,1\n"));
}

#[test]
fn distinguish_verdicts() {
    let dir = TempDir::new().unwrap();
    let rook = write(dir.path(), "rook.el", &gen::rook4x4());
    let shrik = write(dir.path(), "shrik.el", &gen::shrikhande());
    let run = |method: &str, a: &str, b: &str| subcount(&["distinguish", "--method", method, a, b]).stdout;
    assert_eq!(run("i2_wl", &rook, &shrik), "distinguished\n");
    assert_eq!(run("subgraph_wl", &rook, &shrik), "not_distinguished\n");
    assert_eq!(run("wl1", &rook, &rook), "not_distinguished\n");
    let out = subcount(&["distinguish", "--method", "i2_wl", "--hops", "1", "--exact-compare", &rook, &shrik]);
    assert_eq!(out.stdout, "distinguished\n");
    assert_eq!(subcount(&["distinguish", &rook]).code, 2);
}

#[test]
fn distinguish_corpus_table() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("pair.g6");
    // K3 and the 3-node path
    fs::write(&p, "Bw\nBo\n").unwrap();
    let out = subcount(&["distinguish", "--corpus", "--method", "wl1", p.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let last = out.stdout.lines().last().unwrap();
    assert!(last.ends_with(",wl1,2,1,1,100.0%"), "{last}");
}

#[test]
fn gen_outputs() {
    let dir = TempDir::new().unwrap();
    let rook = dir.path().join("rook.el");
    assert_eq!(subcount(&["gen", "rook", "--out", rook.to_str().unwrap()]).code, 0);
    assert!(fs::read_to_string(rook).unwrap().starts_with("16 48\n"));
    assert_eq!(subcount(&["gen", "cycle", "--L", "6"]).stdout, write_edgelist(&gen::cycle(6).unwrap()));
    let coned = subcount(&["gen", "coned", "--L", "3", "--variant", "joined"]).stdout;
    assert_eq!(coned, write_edgelist(&gen::coned_cycles(3).unwrap().0));
    assert_eq!(subcount(&["gen", "cycle", "--L", "2"]).code, 2);
}

#[test]
fn stats_over_corpora() {
    let dir = TempDir::new().unwrap();
    let c6s = dir.path().join("c6s");
    fs::create_dir(&c6s).unwrap();
    for k in 0..10 {
        write(&c6s, &format!("{k}.el"), &gen::cycle(6).unwrap());
    }
    let mixed = dir.path().join("mixed");
    fs::create_dir(&mixed).unwrap();
    write(&mixed, "a.el", &gen::complete(3));
    write(&mixed, "b.el", &gen::cycle(4).unwrap());
    fs::write(mixed.join("c.el"), "3 1\n0 9\n").unwrap();
    let empty = dir.path().join("empty");
    fs::create_dir(&empty).unwrap();
    let out = subcount(&[
        "stats",
        c6s.to_str().unwrap(),
        mixed.to_str().unwrap(),
        empty.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0);
    let rows: Vec<_> = out.stdout.lines().collect();
    assert_eq!(rows[0], "corpus,graphs,cycle3,cycle4,cycle5,cycle6");
    assert!(rows[1].ends_with(",10,0.0000,0.0000,0.0000,1.0000"));
    assert!(rows[2].ends_with(",2,0.5000,0.5000,0.0000,0.0000"));
    assert!(rows[3].ends_with(",0,0.0000,0.0000,0.0000,0.0000"));
    assert_eq!(out.stderr.lines().count(), 1);
    assert!(out.stderr.contains("c.el"));
}

#[test]
fn bench_table() {
    let out = subcount(&["bench", "--sizes", "0,40,80", "--repeats", "1"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let rows: Vec<_> = out.stdout.lines().collect();
    assert_eq!(rows[0], "nodes,edges,extraction_ms,message_passing_ms,readout_ms,total_ms,ratio");
    assert_eq!(rows.len(), 4);
    assert!(rows[1].starts_with("0,0,"));
    assert!(rows[3].starts_with("80,160,"));
}
