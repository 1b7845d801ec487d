use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rackxmod::corpus;
use rackxmod::format::{emit_document, group_doc, group_hom_doc, group_xmod_doc, rack_doc, rack_hom_doc, rack_xmod_doc, Document};
use rackxmod::rack::conj_hom;

fn rackxmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rackxmod"))
        .args(args)
        .env_remove("RACKXMOD_CORPUS_BOUND")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn put(dir: &Path, name: &str, doc: &Document) -> String {
    let path = dir.join(name);
    fs::write(&path, emit_document(doc)).unwrap();
    path.to_str().unwrap().to_string()
}

fn rack_xmod(name: &str) -> rackxmod::xmod::RackXMod {
    corpus::rack_xmods().into_iter().find(|x| x.name == name).unwrap().value
}

fn group_xmod(name: &str) -> rackxmod::group_xmod::GroupXMod {
    corpus::group_xmods().into_iter().find(|x| x.name == name).unwrap().value
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = put(dir.path(), "cs3.toml", &rack_doc(&corpus::cs3()));
    let out = rackxmod(&["check", &good]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    // dihedral quandle on three points, basepoint 0: columns and
    // self-distributivity hold but 0 ◁ 1 = 2
    let dihedral = dir.path().join("r3.toml");
    fs::write(
        &dihedral,
        "format-version = 1\nkind = \"rack\"\nsize = 3\nbasepoint = 0\ntable = [\n  [0, 2, 1],\n  [2, 1, 0],\n  [1, 0, 2],\n]\n",
    )
    .unwrap();
    let out = rackxmod(&["check", dihedral.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("fail"), "{}", stdout(&out));

    let truncated = dir.path().join("cut.toml");
    let text = emit_document(&rack_doc(&corpus::cs3()));
    fs::write(&truncated, &text[..text.len() / 2]).unwrap();
    assert_eq!(code(&rackxmod(&["check", truncated.to_str().unwrap()])), 2);

    assert_eq!(code(&rackxmod(&["check", dir.path().join("missing.toml").to_str().unwrap()])), 2);
}

#[test]
fn check_writes_a_report_with_input_hashes() {
    let dir = tempfile::tempdir().unwrap();
    let good = put(dir.path(), "cs3.toml", &rack_doc(&corpus::cs3()));
    let report = dir.path().join("report.toml");
    let out = rackxmod(&["check", &good, "--report", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(report).unwrap();
    assert!(text.contains("kind = \"certificate\""));
    assert!(text.contains("verdict = \"pass\""));
    assert!(!text.contains("elapsed-ms"));
    let digest = rackxmod::format::sha256_hex(fs::read(&good).unwrap().as_slice());
    assert!(text.contains(&digest));
}

#[test]
fn construct_conj_matches_the_library() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = put(dir.path(), "s3.toml", &group_doc(&corpus::s3()));
    let out_path = dir.path().join("cs3.toml");
    let out = rackxmod(&["construct", "conj", "--group", &s3, "--out", out_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(fs::read_to_string(&out_path).unwrap(), emit_document(&rack_doc(&corpus::cs3())));
}

#[test]
fn construct_product_and_pullback() {
    let dir = tempfile::tempdir().unwrap();
    let t2 = put(dir.path(), "t2.toml", &rack_doc(&corpus::t2()));
    let cz2 = put(dir.path(), "cz2.toml", &rack_doc(&corpus::cz2()));
    let out = rackxmod(&["construct", "product", &t2, &cz2]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("size = 4"));

    let x = put(dir.path(), "x.toml", &rack_xmod_doc(&rack_xmod("1->CZ2")));
    let sgn = put(dir.path(), "sgn.toml", &rack_hom_doc(&conj_hom(&corpus::sgn())));
    let pb = dir.path().join("pb.toml");
    let out = rackxmod(&["construct", "pullback", "--xmod", &x, "--hom", &sgn, "--out", pb.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(code(&rackxmod(&["check", pb.to_str().unwrap()])), 0);
    assert!(fs::read_to_string(&pb).unwrap().contains("kind = \"rack-xmod\""));

    // a hom into another base fails validation; a file of the wrong kind is an input error
    let id_cs3 = put(dir.path(), "idcs3.toml", &rack_hom_doc(&rackxmod::RackHom::identity(&corpus::cs3())));
    assert_eq!(code(&rackxmod(&["construct", "pullback", "--xmod", &x, "--hom", &id_cs3])), 1);
    assert_eq!(code(&rackxmod(&["construct", "pullback", "--xmod", &t2, "--hom", &sgn])), 2);
}

#[test]
fn certify_universal_and_adjunction() {
    let dir = tempfile::tempdir().unwrap();
    let x = put(dir.path(), "x.toml", &rack_xmod_doc(&rack_xmod("1->CZ2")));
    let sgn = put(dir.path(), "sgn.toml", &rack_hom_doc(&conj_hom(&corpus::sgn())));
    let out = rackxmod(&["certify", "universal", "--xmod", &x, "--hom", &sgn]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("verdict = \"pass\""));
    assert!(text.contains("carrier = 3"));

    let t2 = put(dir.path(), "t2.toml", &rack_doc(&corpus::t2()));
    let s3 = put(dir.path(), "s3.toml", &group_doc(&corpus::s3()));
    let out = rackxmod(&["certify", "adjunction", "--rack", &t2, "--group", &s3, "--timing"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("rack-homs = 6"), "{text}");
    assert!(text.contains("group-homs = 6"), "{text}");
    assert!(text.contains("elapsed-ms"));

    let a3r = put(dir.path(), "a3r.toml", &rack_xmod_doc(&rack_xmod("A3r->CS3")));
    let a3 = put(dir.path(), "a3.toml", &group_xmod_doc(&group_xmod("A3<S3")));
    let out = rackxmod(&["certify", "xmod-adjunction", "--xmod", &a3r, "--gxmod", &a3]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
}

#[test]
fn certify_conj_preserves() {
    let dir = tempfile::tempdir().unwrap();
    let a3 = put(dir.path(), "a3.toml", &group_xmod_doc(&group_xmod("A3<S3")));
    let psi = put(dir.path(), "psi.toml", &group_hom_doc(&corpus::psi()));
    let report = dir.path().join("cert.toml");
    let out = rackxmod(&["certify", "conj-preserves", "--gxmod", &a3, "--ghom", &psi, "--report", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let text = fs::read_to_string(report).unwrap();
    assert!(text.contains("carrier = 3"));
    assert!(text.contains("f1 = "));
}

fn tree(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.push((p.strip_prefix(dir).unwrap().to_path_buf(), fs::read(&p).unwrap()));
            }
        }
    }
    out.sort();
    out
}

#[test]
fn corpus_is_deterministic_and_every_file_checks() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for n in ["1", "2", "3"] {
        assert_eq!(code(&rackxmod(&["corpus", n, "--out", a.path().to_str().unwrap()])), 0);
    }
    assert_eq!(code(&rackxmod(&["corpus", "3", "--out", b.path().to_str().unwrap()])), 0);
    let (ta, tb) = (tree(a.path()), tree(b.path()));
    assert_eq!(ta, tb);
    let racks = ta.iter().filter(|(p, _)| p.starts_with("racks")).count();
    assert_eq!(racks, 4);
    for (p, _) in ta.iter().filter(|(p, _)| !p.starts_with("requests")) {
        let full = a.path().join(p);
        let out = rackxmod(&["check", full.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}: {}", p.display(), stdout(&out));
    }
}

#[test]
fn corpus_bound_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = rackxmod(&["corpus", "5", "--out", dir.path().to_str().unwrap(), "--bound", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn emitted_files_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let docs = [
        rack_doc(&corpus::r3_plus()),
        group_doc(&corpus::s3()),
        group_hom_doc(&corpus::psi()),
        rack_xmod_doc(&rack_xmod("A3r->CS3")),
        group_xmod_doc(&group_xmod("A3<S3")),
    ];
    for (i, doc) in docs.iter().enumerate() {
        let text = emit_document(doc);
        let parsed = rackxmod::format::parse_document(&text, "round trip").unwrap();
        assert_eq!(emit_document(&parsed), text);
        let path = put(dir.path(), &format!("{i}.toml"), doc);
        assert_eq!(code(&rackxmod(&["check", &path])), 0);
    }
}
