use dncodes::cli::{run, Outcome};

fn invoke(args: &str) -> Outcome {
    run(std::iter::once("dncodes").chain(args.split_whitespace()))
}

const DETERMINISTIC: [&str; 5] = [
    "search --q 5 --n 3 --sign minus --family lcd --mode random --trials 40 --seed 7",
    "search --q 5 --n 2 --sign plus --family sd --mode exhaustive",
    "enumerate --q 3 --n 2 --sign plus --family all",
    "count --q 5 --n 2 --sign plus --family lcd --oracle",
    "verify-tables --table 2 --max-n 4",
];

#[test]
fn output_does_not_depend_on_worker_count() {
    for cmd in DETERMINISTIC {
        let one = invoke(&format!("{cmd} --workers 1"));
        assert_eq!(one.code, 0, "{cmd}: {}", one.stderr);
        for workers in [2, 4] {
            let many = invoke(&format!("{cmd} --workers {workers}"));
            assert_eq!(one.stdout, many.stdout, "{cmd} with {workers} workers");
        }
        assert_eq!(one.stdout, invoke(&format!("{cmd} --workers 1")).stdout, "{cmd} repeated");
    }
}

#[test]
fn seeds_change_random_search() {
    let outputs: Vec<String> = (0..4)
        .map(|s| invoke(&format!("search --q 5 --n 3 --sign minus --family lcd --trials 5 --seed {s}")).stdout)
        .collect();
    assert!(outputs.iter().any(|o| o != &outputs[0]));
}

#[test]
fn search_result_satisfies_its_family() {
    let out = invoke("search --q 5 --n 3 --sign minus --family sd --trials 10");
    assert_eq!(out.code, 0, "{}", out.stderr);
    let report: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let a1 = report["a1"].as_str().unwrap();
    let a2 = report["a2"].as_str().unwrap();
    let check = run(["dncodes", "check", "--q", "5", "--sign", "minus", "--a1", a1, "--a2", a2]);
    assert_eq!(check.code, 0, "{}", check.stderr);
    let verdict: serde_json::Value = serde_json::from_str(&check.stdout).unwrap();
    assert_eq!(verdict["self_dual"], true, "{verdict}");
}

#[test]
fn exit_codes() {
    assert_eq!(invoke("factor --q 6 --n 3 --sign minus").code, 2);
    assert_eq!(invoke("enumerate --q 5 --n 6 --sign plus --budget 100").code, 3);
    assert_eq!(invoke("verify-tables --table 3").code, 2);
    assert_eq!(invoke("frobnicate").code, 2);
    assert_eq!(invoke("verify-tables --table 1 --max-n 3 --budget 1e7").code, 0);
    assert_eq!(invoke("verify-tables --table 1 --max-n 3 --budget lots").code, 2);
    assert_eq!(invoke("count --q 5 --n 3 --sign minus --family sd").code, 0);
}
