use std::process::{Command, Output};

fn ddp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddp")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ddp(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> Option<i32> {
    ddp(args).status.code()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "one-ascents", "5", "--method", "closed"]), "10\n");
    assert_eq!(stdout(&["count", "paths", "4", "--method", "brute"]), "6\n");
    assert_eq!(stdout(&["count", "right", "0", "--method", "closed"]), "0\n");
    assert_eq!(stdout(&["count", "k-ascents", "4", "--k", "2", "--method", "brute"]), "1\n");
    assert_eq!(stdout(&["count", "k-ascents", "4", "--k", "1"]), "5\n");
}

#[test]
fn count_methods_agree() {
    let stats = ["paths", "dyck", "up", "down", "right", "one-ascents"];
    for n in 0..=14 {
        let n = n.to_string();
        for stat in stats {
            let closed = stdout(&["count", stat, &n, "--method", "closed"]);
            let brute = stdout(&["count", stat, &n, "--method", "brute"]);
            assert_eq!(closed, brute, "{stat} at n={n}");
            if stat == "paths" || stat == "dyck" {
                assert_eq!(closed, stdout(&["count", stat, &n, "--method", "dp"]));
            }
        }
        assert_eq!(
            stdout(&["count", "k-ascents", &n, "--k", "1", "--method", "brute"]),
            stdout(&["count", "one-ascents", &n])
        );
    }
}

#[test]
fn count_errors() {
    let out = ddp(&["count", "k-ascents", "6", "--k", "2", "--method", "closed"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no closed form (open problem)"));
    assert_eq!(code(&["count", "k-ascents", "6"]), Some(2));
    assert_eq!(code(&["count", "paths", "6", "--k", "2"]), Some(2));
    assert_eq!(code(&["count", "right", "6", "--method", "dp"]), Some(2));
    assert_eq!(code(&["count", "paths", "27", "--method", "brute"]), Some(2));
    assert_eq!(code(&["count", "paths", "8", "--method", "brute", "--cap", "7"]), Some(2));
    assert_eq!(code(&["count", "bogus", "6"]), Some(2));
}

#[test]
fn enumerate_orders_and_formats() {
    assert_eq!(stdout(&["enumerate", "3"]), "UDR\nRUD\nRRR\n");
    assert_eq!(stdout(&["enumerate", "2", "--family", "dyck"]), "UD\n");
    assert_eq!(stdout(&["enumerate", "1", "--family", "plain"]), "D\n");
    assert_eq!(stdout(&["enumerate", "3", "--format", "json"]), "[\"UDR\",\"RUD\",\"RRR\"]\n");
    assert_eq!(code(&["enumerate", "3", "--format", "bfile"]), Some(2));
    assert_eq!(code(&["enumerate", "30"]), Some(2));
}

#[test]
fn path_inspection() {
    assert_eq!(stdout(&["classify", "UDR"]), "DispersedDyck\n");
    assert_eq!(stdout(&["classify", "UUDD"]), "Dyck\n");
    assert_eq!(stdout(&["classify", "DU"]), "PlainPath\n");
    assert_eq!(stdout(&["classify", ""]), "Dyck\n");
    assert_eq!(stdout(&["classify", "UU"]), "Invalid\n");
    assert_eq!(
        stdout(&["stats", "UUDD"]),
        "{\"n\":4,\"ups\":2,\"downs\":2,\"rights\":0,\"k_ascents\":{\"2\":1}}\n"
    );
    let out = ddp(&["stats", "UXD"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 1"));
}

#[test]
fn bijection_records() {
    assert_eq!(
        stdout(&["bijection", "reflection", "DDU"]),
        "{\"input\":\"DDU\",\"output\":\"RUD\",\"slot\":null}\n"
    );
    assert_eq!(
        stdout(&["bijection", "reflection-inv", "RUD"]),
        "{\"input\":\"RUD\",\"output\":\"DDU\",\"slot\":null}\n"
    );
    assert_eq!(
        stdout(&["bijection", "updown", "RRRUD"]),
        "{\"input\":\"RRRUD\",\"output\":\"RRRR\",\"slot\":null}\n"
    );
    assert_eq!(
        stdout(&["bijection", "updown-inv", "UDRR"]),
        "{\"input\":\"UDRR\",\"output\":\"UDRUD\",\"slot\":null}\n"
    );
    assert_eq!(
        stdout(&["bijection", "ascent-remove", "RUD", "--pos", "1"]),
        "{\"input\":\"RUD\",\"output\":\"R\",\"slot\":{\"kind\":\"RightStep\",\"index\":0}}\n"
    );
    assert_eq!(
        stdout(&["bijection", "ascent-insert", "UD", "--slot", "down:1"]),
        "{\"input\":\"UD\",\"output\":\"UDUD\",\"slot\":{\"kind\":\"DownStep\",\"index\":1}}\n"
    );
    assert_eq!(code(&["bijection", "updown-inv", "UUDD"]), Some(2));
    assert_eq!(code(&["bijection", "ascent-remove", "RUD"]), Some(2));
    assert_eq!(code(&["bijection", "ascent-insert", "UD", "--slot", "up:0"]), Some(2));
    assert_eq!(code(&["bijection", "reflection", "UDR"]), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = stdout(&["verify", "THM1", "--max-n", "6"]);
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["overall"], true);
    assert_eq!(report["checks"][0]["comparisons"], 5);

    assert_eq!(code(&["verify", "bogus-id"]), Some(2));
    assert_eq!(code(&["verify", "THM1", "--max-n", "27"]), Some(2));
    assert_eq!(code(&["verify", "THM1", "CONV", "--max-n", "12"]), Some(0));
    assert_eq!(code(&["verify", "--max-n", "0"]), Some(0));

    let out = ddp(&["verify", "THM1", "--max-n", "6", "--inject-fault", "a-closed"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["checks"][0]["counterexample"]["at"], 2);
    assert_eq!(code(&["verify", "--inject-fault", "nope"]), Some(2));
}

#[test]
fn sequence_examples_and_offset() {
    assert_eq!(stdout(&["sequence", "one-ascents", "--terms", "7"]), "0 0 1 2 5 10 23\n");
    assert_eq!(stdout(&["sequence", "right-steps", "--terms", "5"]), "0 1 2 5 10\n");
    assert_eq!(stdout(&["sequence", "ddp-count", "--terms", "5"]), "1 1 2 3 6\n");
    // offset relabels only
    assert_eq!(
        stdout(&["sequence", "ddp-count", "--terms", "3", "--offset", "5", "--format", "bfile"]),
        "5 1\n6 1\n7 2\n"
    );
    assert_eq!(
        stdout(&["sequence", "right-steps", "--terms", "3", "--format", "csv"]),
        "index,value\n0,0\n1,1\n2,2\n"
    );
    assert_eq!(
        stdout(&["sequence", "one-ascents", "--terms", "3", "--format", "json"]),
        "[{\"index\":0,\"value\":0},{\"index\":1,\"value\":0},{\"index\":2,\"value\":1}]\n"
    );
    assert_eq!(code(&["sequence", "one-ascents", "--terms", "0"]), Some(2));
    assert_eq!(code(&["sequence", "fibonacci"]), Some(2));
    // deterministic
    let a = stdout(&["sequence", "convolution", "--terms", "40", "--format", "bfile"]);
    assert_eq!(a, stdout(&["sequence", "convolution", "--terms", "40", "--format", "bfile"]));
    assert_eq!(a, stdout(&["sequence", "right-steps", "--terms", "40", "--format", "bfile"]));
}

#[test]
fn table_and_distribution() {
    let closed = stdout(&["table", "12"]);
    assert_eq!(closed, stdout(&["table", "12", "--method", "brute"]));
    assert!(closed.starts_with("n,dD,dyck,U,D,R,A\n0,1,1,0,0,0,0\n"));
    assert!(closed.contains("\n4,6,2,7,7,10,5\n"));
    let json = stdout(&["table", "2", "--format", "json"]);
    assert_eq!(json.lines().nth(2), Some(r#"{"n":2,"dD":2,"dyck":1,"U":1,"D":1,"R":2,"A":1}"#));
    assert_eq!(stdout(&["distribution", "4"]), "0 2\n1 3\n2 1\n");
}

#[test]
fn asymptotic_table() {
    let out = stdout(&["asymptotic", "10", "100", "1000", "10000"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("m log2_exact log2_estimate ratio"));
    let ratios: Vec<f64> = lines.map(|l| l.split(' ').nth(3).unwrap().parse().unwrap()).collect();
    assert_eq!(ratios.len(), 4);
    assert!(ratios.iter().all(|r| r.is_finite() && *r > 0.0));
    assert!((ratios[2] - 1.0).abs() <= 0.01);
    let devs: Vec<f64> = ratios[1..].iter().map(|r| (r - 1.0).abs()).collect();
    assert!(devs.windows(2).all(|w| w[1] <= w[0]), "{devs:?}");
    assert_eq!(code(&["asymptotic", "1"]), Some(2));
}
