use std::path::PathBuf;

use snul::cli::run;

fn snul(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("snul").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("snul-cli-{}-{name}", std::process::id()))
}

#[test]
fn verify_table_small() {
    let (code, out, err) = snul(&["verify-table", "--rho", "golden", "--K", "20000", "--N", "12"]);
    assert_eq!(code, 0, "{err}");
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "n,a_n,b_n,eps_2n1,iota_2n1,eps_2n,iota_2n,computed,predicted,rel_err"
    );
    assert_eq!(lines.len(), 14);
    assert_eq!(lines[1], "0,,0.2361,,,,,,,");
    assert!(
        lines[2].starts_with("1,0.4247,-0.5451,0.6180,0.3820,0.2361,0.3820,1.177"),
        "{}",
        lines[2]
    );
}

#[test]
fn verify_table_full_precision_and_json() {
    let (_, out, _) = snul(&[
        "verify-table",
        "--rho",
        "golden",
        "--K",
        "2000",
        "--N",
        "3",
        "--full-precision",
    ]);
    let row: Vec<&str> = out.lines().nth(2).unwrap().split(',').collect();
    assert!(row[1].len() >= 17, "{row:?}");
    let (_, out, _) = snul(&[
        "--format",
        "json",
        "verify-table",
        "--rho",
        "golden",
        "--K",
        "2000",
        "--N",
        "3",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows[0]["a_n"].is_null());
    let keys: Vec<&String> = rows[1].as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "n",
            "a_n",
            "b_n",
            "eps_2n1",
            "iota_2n1",
            "eps_2n",
            "iota_2n",
            "computed",
            "predicted",
            "rel_err"
        ]
    );
}

#[test]
fn moments_p_zero() {
    let (code, out, _) = snul(&["moments", "--rho", "golden", "--pmax", "0"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("0,9.8696"));
}

#[test]
fn approx_sqrt2_ends_with_eta_41() {
    let (code, out, _) = snul(&["approx", "--rho", "sqrt2", "--upto", "41"]);
    assert_eq!(code, 0);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("41,eta,41,"), "{last}");
}

#[test]
fn lattice_chebyshev_points() {
    let theta: f64 = 0.7;
    let (b, f) = (-(theta / 2.0).cos(), -(theta / 2.0).sin().powi(2));
    let conic = format!("1,{b},1,0,0,{f}");
    let (code, out, err) = snul(&["lattice", "--conic", &conic, "--s1", "1", "--count", "3"]);
    assert_eq!(code, 0, "{err}");
    let rows: Vec<Vec<f64>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!((r[1] - (r[0] * theta).cos()).abs() < 1e-14);
        assert!((r[2] - ((r[0] - 0.5) * theta).cos()).abs() < 1e-14);
    }
}

#[test]
fn lattice_rejects_degenerate_conic() {
    let (code, _, err) = snul(&["lattice", "--conic", "1,0.5,0,0,1,1", "--s1", "0", "--count", "2"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn diffop_mean() {
    let (code, out, _) = snul(&[
        "diffop",
        "--conic",
        "1,-0.5,1,0,0,-0.75",
        "--poly",
        "0,1",
        "--op",
        "mean",
    ]);
    assert_eq!(code, 0);
    // M x = -(Bx + D)/A = 0.5 x
    assert_eq!(out, "k,coeff\n0,0\n1,0.50000000000000000\n");
}

#[test]
fn pn_coefficients_and_values() {
    let (code, out, _) = snul(&["pn", "--rho", "golden", "--n", "0"]);
    assert_eq!(code, 0);
    assert!(out.lines().nth(1).unwrap().starts_with("0,0.3183098861837906"));
    let (code, out, _) = snul(&["pn", "--rho", "golden", "--n", "3", "--eval", "-0.5,0.25"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
    assert!(out.starts_with("x,value\n-0.5"));
}

#[test]
fn recurrence_rows() {
    let (code, out, _) = snul(&["recurrence", "--rho", "golden", "--K", "20000", "--N", "2"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,a_n,b_n,gamma_ratio");
    assert_eq!(lines.len(), 4);
    let a1: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((a1 - 0.4247).abs() < 5e-5, "{}", lines[2]);
}

#[test]
fn pearson_from_ratio_table() {
    let path = temp_path("ratios.csv");
    std::fs::write(&path, "k,ratio\n0,inf\n1,2\n2,0.5\n3,0\n").unwrap();
    let (code, out, err) = snul(&[
        "pearson",
        "--ratio-table",
        path.to_str().unwrap(),
        "--seed",
        "1",
        "--range",
        "1:3",
    ]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(
        out,
        "k,mass\n1,1.0000000000000000\n2,2.0000000000000000\n3,1.0000000000000000\n"
    );
    std::fs::write(&path, "k,ratio\n1,-1\n2,1\n").unwrap();
    let (code, _, err) = snul(&[
        "pearson",
        "--ratio-table",
        path.to_str().unwrap(),
        "--seed",
        "1",
        "--range",
        "1:3",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("positive") || err.contains("mass"), "{err}");
    let (code, _, _) = snul(&[
        "pearson",
        "--ratio-table",
        path.to_str().unwrap(),
        "--seed",
        "1",
        "--range",
        "1-3",
    ]);
    assert_eq!(code, 1);
    std::fs::remove_file(&path).ok();
}

#[test]
fn output_file_and_determinism() {
    let path = temp_path("approx.csv");
    let args = [
        "approx",
        "--rho",
        "golden",
        "--upto",
        "500",
        "--output",
        path.to_str().unwrap(),
    ];
    let (code, out, _) = snul(&args);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let first = std::fs::read(&path).unwrap();
    snul(&args);
    assert_eq!(first, std::fs::read(&path).unwrap());
    std::fs::remove_file(&path).ok();
    let a = snul(&["moments", "--rho", "sqrt2", "--pmax", "30"]).1;
    let b = snul(&["moments", "--rho", "sqrt2", "--pmax", "30"]).1;
    assert_eq!(a, b);
}

#[test]
fn usage_errors() {
    assert_eq!(snul(&["frobnicate"]).0, 2);
    assert_eq!(snul(&["moments", "--rho", "golden"]).0, 2);
    assert_eq!(
        snul(&["--format", "xml", "moments", "--rho", "golden", "--pmax", "1"]).0,
        2
    );
    assert_eq!(snul(&["--help"]).0, 0);
}
