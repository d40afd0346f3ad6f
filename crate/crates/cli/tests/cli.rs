use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
        .display()
        .to_string()
}

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

fn logtrop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logtrop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Golden jobs: (golden file, arguments with corpus file names).
const GOLDEN: &[(&str, &[&str])] = &[
    ("spec_square", &["spec", "@square_cone.json"]),
    ("cone_complex_n2", &["cone-complex", "@n2.json"]),
    (
        "trop_line",
        &["trop", "hypersurface", "@tropical_line.json"],
    ),
    ("trop_two_lines", &["trop", "prevariety", "@two_lines.json"]),
    (
        "trop_restrict_quadrant",
        &[
            "trop",
            "restrict",
            "--trop",
            "@tropical_line.json",
            "--fan",
            "@quadrant_fan.json",
        ],
    ),
    (
        "trop_dimension_drop",
        &[
            "trop",
            "restrict",
            "--trop",
            "@binomial_rank1.json",
            "--fan",
            "@half_line_fan.json",
            "--dim-y",
            "1",
        ],
    ),
    (
        "check_proper_quadrant",
        &[
            "check-proper",
            "--trop",
            "@tropical_line.json",
            "--fan",
            "@quadrant_fan.json",
            "--complete",
            "@p2_fan.json",
        ],
    ),
    (
        "check_dims_ray",
        &[
            "check-dims",
            "--trop",
            "@tropical_line.json",
            "--fan",
            "@ray_fan.json",
            "--dim-y",
            "1",
        ],
    ),
    (
        "compactify_line",
        &["compactify", "--trop", "@tropical_line.json"],
    ),
    (
        "compactify_rotated",
        &[
            "compactify",
            "--trop",
            "@rotated_line.json",
            "--complete",
            "@p2_fan.json",
        ],
    ),
    ("link_p3", &["link", "--fan", "@p3_fan.json"]),
    (
        "cohomology_triangle",
        &["cohomology", "--complex", "@triangle_boundary.json"],
    ),
    (
        "pipeline_line",
        &["pipeline", "--trop", "@tropical_line.json"],
    ),
    (
        "pipeline_binomial",
        &["pipeline", "--trop", "@binomial_rank1.json"],
    ),
    (
        "pipeline_two_lines",
        &["pipeline", "--trop", "@two_lines.json"],
    ),
];

fn expand(args: &[&str]) -> Vec<String> {
    args.iter()
        .map(|a| match a.strip_prefix('@') {
            Some(file) => corpus(file),
            None => a.to_string(),
        })
        .collect()
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("LOGTROP_BLESS").is_some();
    for (name, args) in GOLDEN {
        let args = expand(args);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = logtrop(&refs);
        assert!(
            out.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        let path = golden_dir().join(format!("{name}.json"));
        if bless {
            fs::create_dir_all(golden_dir()).unwrap();
            fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {path:?}"));
        assert_eq!(
            String::from_utf8_lossy(&out.stdout),
            expected,
            "{name} differs from golden"
        );
    }
}

#[test]
fn reports_are_deterministic() {
    let args = expand(&[
        "compactify",
        "--trop",
        "@rotated_line.json",
        "--complete",
        "@p2_fan.json",
    ]);
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    assert_eq!(logtrop(&refs).stdout, logtrop(&refs).stdout);
}

#[test]
fn compactify_tropical_line() {
    let v = json(&logtrop(&[
        "compactify",
        "--trop",
        &corpus("tropical_line.json"),
    ]));
    assert_eq!(v["rays"], serde_json::json!([[1, 0], [0, 1], [-1, -1]]));
    assert_eq!(v["report"]["proper"], true);
}

#[test]
fn cohomology_of_triangle_boundary() {
    let v = json(&logtrop(&[
        "cohomology",
        "--complex",
        &corpus("triangle_boundary.json"),
    ]));
    assert_eq!(v["reduced_betti"], serde_json::json!([0, 0, 1]));
}

#[test]
fn pipeline_values() {
    let v = json(&logtrop(&[
        "pipeline",
        "--trop",
        &corpus("tropical_line.json"),
    ]));
    assert_eq!(v["cohomology"]["w0_hc"][1], 2);
    assert!(v.get("caveat").is_none());

    let v = json(&logtrop(&[
        "pipeline",
        "--trop",
        &corpus("binomial_rank1.json"),
    ]));
    assert_eq!(v["cohomology"]["w0_hc"], serde_json::json!([1]));

    let v = json(&logtrop(&["pipeline", "--trop", &corpus("two_lines.json")]));
    assert_eq!(v["cohomology"]["w0_hc"], serde_json::json!([1]));
    assert!(v["caveat"].is_string());
}

#[test]
fn malformed_json_exits_with_2() {
    let out = logtrop(&["link", "--fan", &corpus("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed JSON"));
}

#[test]
fn io_and_schema_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    let out = logtrop(&["link", "--fan", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let wrong = dir.path().join("v2.json");
    fs::write(
        &wrong,
        r#"{"format":"logtrop/2","ambient_dim":1,"rays":[],"cones":[]}"#,
    )
    .unwrap();
    let out = logtrop(&["link", "--fan", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unsupported format"));

    let out = logtrop(&["trop", "hypersurface", &corpus("two_lines.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_with_1() {
    let dir = tempfile::tempdir().unwrap();
    let line = dir.path().join("line.json");
    fs::write(
        &line,
        r#"{"format":"logtrop/1","ambient_dim":1,"rays":[[1],[-1]],"cones":[[0,1]]}"#,
    )
    .unwrap();
    let out = logtrop(&["link", "--fan", line.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not strictly convex"));

    let out = logtrop(&[
        "check-proper",
        "--trop",
        &corpus("tropical_line.json"),
        "--fan",
        &corpus("quadrant_fan.json"),
        "--complete",
        &corpus("quadrant_fan.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = logtrop(&["trop", "hypersurface", &corpus("double_point.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lineality"));
}

#[test]
fn out_dir_receives_report_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = logtrop(&[
        "cohomology",
        "--complex",
        &corpus("triangle_boundary.json"),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let report = fs::read_to_string(dir.path().join("cohomology.json")).unwrap();
    let table = fs::read_to_string(dir.path().join("cohomology.txt")).unwrap();
    assert!(report.contains("\"reduced_betti\""));
    assert_eq!(String::from_utf8_lossy(&out.stdout), table);
}

#[test]
fn pipeline_equals_manual_composition() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = logtrop(&[
        "pipeline",
        "--trop",
        &corpus("tropical_line.json"),
        "--out",
        d.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let read = |name: &str| fs::read_to_string(d.join(name)).unwrap();

    let step = logtrop(&[
        "compactify",
        "--trop",
        d.join("trop.json").to_str().unwrap(),
    ]);
    assert_eq!(
        String::from_utf8_lossy(&step.stdout),
        read("compactify.json")
    );
    let step = logtrop(&["link", "--fan", d.join("compactify.json").to_str().unwrap()]);
    assert_eq!(String::from_utf8_lossy(&step.stdout), read("link.json"));
    let step = logtrop(&[
        "cohomology",
        "--complex",
        d.join("link.json").to_str().unwrap(),
    ]);
    assert_eq!(
        String::from_utf8_lossy(&step.stdout),
        read("cohomology.json")
    );
}

#[test]
fn kato_fan_output_feeds_cone_complex_and_link() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert!(logtrop(&[
        "spec",
        &corpus("square_cone.json"),
        "--out",
        d.to_str().unwrap()
    ])
    .status
    .success());
    let kato = d.join("spec.json");
    let v = json(&logtrop(&["cone-complex", kato.to_str().unwrap()]));
    assert_eq!(v["cells"].as_array().unwrap().len(), 10);
    assert_eq!(v["order_reversing"], true);
    let v = json(&logtrop(&["link", "--fan", kato.to_str().unwrap()]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
}
