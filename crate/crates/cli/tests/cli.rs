use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn lzend(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lzend"))
        .args(args)
        .output()
        .expect("spawn lzend")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn compress_decompress_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (raw, arc, back) = (dir.path().join("in"), dir.path().join("in.lze"), dir.path().join("out"));
    let text = b"it was the best of times, it was the worst of times".repeat(20);
    fs::write(&raw, &text).unwrap();
    assert_eq!(code(&lzend(&["compress", p(&raw), p(&arc)])), 0);
    assert!(fs::read(&arc).unwrap().starts_with(b"LZE1"));
    assert!(fs::metadata(&arc).unwrap().len() < text.len() as u64);
    assert_eq!(code(&lzend(&["decompress", p(&arc), p(&back)])), 0);
    assert_eq!(fs::read(&back).unwrap(), text);
}

#[test]
fn empty_input_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (raw, arc, back) = (dir.path().join("in"), dir.path().join("a"), dir.path().join("out"));
    fs::write(&raw, b"").unwrap();
    assert_eq!(code(&lzend(&["compress", p(&raw), p(&arc)])), 0);
    assert_eq!(fs::read(&arc).unwrap(), b"LZE1\x01\x00\x00\x00");
    assert_eq!(code(&lzend(&["decompress", p(&arc), p(&back)])), 0);
    assert!(fs::read(&back).unwrap().is_empty());
}

#[test]
fn extract_to_stdout_and_file() {
    let dir = tempfile::tempdir().unwrap();
    let (raw, arc, part) = (dir.path().join("in"), dir.path().join("a"), dir.path().join("part"));
    fs::write(&raw, b"abcabdabcabd").unwrap();
    lzend(&["compress", p(&raw), p(&arc)]);
    let out = lzend(&["extract", p(&arc), "--start", "3", "--len", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(out.stdout, b"abdab");
    assert_eq!(code(&lzend(&["extract", p(&arc), "--start", "10", "--len", "2", "--out", p(&part)])), 0);
    assert_eq!(fs::read(&part).unwrap(), b"bd");
    // past the end is an argument error
    assert_eq!(code(&lzend(&["extract", p(&arc), "--start", "10", "--len", "3"])), 2);
}

#[test]
fn edit_variants() {
    let dir = tempfile::tempdir().unwrap();
    let (raw, arc, back, ins) = (
        dir.path().join("in"),
        dir.path().join("a"),
        dir.path().join("out"),
        dir.path().join("ins"),
    );
    fs::write(&raw, b"abcabd").unwrap();
    lzend(&["compress", p(&raw), p(&arc)]);

    assert_eq!(code(&lzend(&["edit", p(&arc), "--at", "2", "--end", "3", "--insert-hex", "78"])), 0);
    lzend(&["decompress", p(&arc), p(&back)]);
    assert_eq!(fs::read(&back).unwrap(), b"abxabd");

    fs::write(&ins, b"QQ").unwrap();
    assert_eq!(code(&lzend(&["edit", p(&arc), "--at", "6", "--end", "6", "--insert-file", p(&ins)])), 0);
    assert_eq!(code(&lzend(&["edit", p(&arc), "--at", "0", "--end", "2", "--empty"])), 0);
    lzend(&["decompress", p(&arc), p(&back)]);
    assert_eq!(fs::read(&back).unwrap(), b"xabdQQ");
}

#[test]
fn edit_argument_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (raw, arc) = (dir.path().join("in"), dir.path().join("a"));
    fs::write(&raw, b"abcabd").unwrap();
    lzend(&["compress", p(&raw), p(&arc)]);
    // no payload choice, two payload choices, bad hex, range past the end
    assert_eq!(code(&lzend(&["edit", p(&arc), "--at", "0", "--end", "1"])), 2);
    assert_eq!(
        code(&lzend(&["edit", p(&arc), "--at", "0", "--end", "1", "--empty", "--insert-hex", "61"])),
        2
    );
    assert_eq!(code(&lzend(&["edit", p(&arc), "--at", "0", "--end", "1", "--insert-hex", "6"])), 2);
    assert_eq!(code(&lzend(&["edit", p(&arc), "--at", "2", "--end", "9", "--empty"])), 2);
    assert_eq!(code(&lzend(&["edit", p(&arc), "--at", "3", "--end", "2", "--empty"])), 2);
    // the archive is untouched by failed edits
    assert_eq!(fs::read(&arc).unwrap(), {
        let out = dir.path().join("again");
        lzend(&["compress", p(&raw), p(&out)]);
        fs::read(&out).unwrap()
    });
}

#[test]
fn corrupt_archives_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let (bad, out) = (dir.path().join("bad"), dir.path().join("out"));
    fs::write(&bad, b"not an archive").unwrap();
    assert_eq!(code(&lzend(&["decompress", p(&bad), p(&out)])), 3);
    assert_eq!(code(&lzend(&["extract", p(&bad), "--start", "0", "--len", "1"])), 3);
    assert_eq!(code(&lzend(&["edit", p(&bad), "--at", "0", "--end", "0", "--empty"])), 3);
    // truncated real archive
    fs::write(&bad, b"LZE1\x01\x01\x06\x04\x00\x01a").unwrap();
    assert_eq!(code(&lzend(&["decompress", p(&bad), p(&out)])), 3);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&lzend(&[])), 2);
    assert_eq!(code(&lzend(&["compress", "only-one-arg"])), 2);
    assert_eq!(code(&lzend(&["frobnicate"])), 2);
    assert_eq!(code(&lzend(&["compress", "/nonexistent/input", "/tmp/x"])), 2);
}

#[test]
fn gen_writes_named_files() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("cal");
    let args = [
        "gen", "--bytes", "100", "--count", "3", "--xi", "0.001", "--c", "0.5", "--seed", "7", "--out-dir",
        p(&out_dir),
    ];
    assert_eq!(code(&lzend(&args)), 0);
    for i in 0..3 {
        let f = out_dir.join(format!("cal_xi0.001_{i}.bin"));
        assert_eq!(fs::read(&f).unwrap().len(), 100);
    }
    let first = fs::read(out_dir.join("cal_xi0.001_0.bin")).unwrap();
    let again = dir.path().join("again");
    let mut args2 = args;
    args2[12] = p(&again);
    assert_eq!(code(&lzend(&args2)), 0);
    assert_eq!(fs::read(again.join("cal_xi0.001_0.bin")).unwrap(), first);

    let fir = dir.path().join("fir");
    let out = lzend(&[
        "gen", "--bytes", "10", "--count", "1", "--xi", "0.01", "--c", "0.5", "--seed", "1", "--fir", "--out-dir",
        p(&fir),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(code(&lzend(&["gen", "--bytes", "10", "--count", "1", "--xi", "0.01", "--c", "2", "--seed", "1", "--out-dir", p(&fir)])), 2);
}

#[test]
fn eval_positions_writes_deterministic_csv() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    fs::create_dir(&corpus).unwrap();
    fs::write(corpus.join("a.txt"), b"a".repeat(2000)).unwrap();
    fs::write(corpus.join("b.txt"), b"the quick brown fox jumps over the lazy dog. ".repeat(40)).unwrap();
    let (csv1, csv2) = (dir.path().join("1.csv"), dir.path().join("2.csv"));
    for csv in [&csv1, &csv2] {
        let out = lzend(&["eval", "positions", "--corpus", p(&corpus), "--seed", "3", "--out", p(csv)]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text = fs::read_to_string(&csv1).unwrap();
    assert_eq!(text, fs::read_to_string(&csv2).unwrap());
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("file,operation,payload,parameter,mr"));
    // 2 files x 3 operations x 19 positions; 10-byte edits have no medium class
    assert_eq!(lines.count(), 2 * 3 * 2 * 19);
    assert!(!text.contains(",medium,"));
    assert!(text.contains("a.txt,delete,high,0.050000,"));
}

#[test]
fn eval_needs_a_corpus_source() {
    assert_eq!(code(&lzend(&["eval", "sizes", "--seed", "1", "--out", "/tmp/x.csv"])), 2);
    assert_eq!(code(&lzend(&["eval", "bogus", "--corpus", ".", "--seed", "1", "--out", "/tmp/x.csv"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    assert_eq!(code(&lzend(&["eval", "sizes", "--corpus", p(dir.path()), "--seed", "1", "--out", p(&out)])), 2);
}
