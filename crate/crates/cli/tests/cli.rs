use endohecke::fixtures;
use endohecke::hecke::HeckeElt;
use endohecke::root_datum::RootDatum;
use endohecke::soergel::poly::{Poly, RingAction, Z};
use endohecke::soergel::Bimodule;
use serde_json::Value;
use std::process::{Command, Output};
use std::sync::Arc;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endohecke")).args(args).output().expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn theta_dump_matches_golden_file() {
    let out = run(&["dump", "theta", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let golden = include_str!("golden/theta_sp4_n1.json");
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim_end(), golden.trim_end());
    // four blocks, each the minimal element and its four S_H neighbours
    let v: Value = serde_json::from_str(golden).unwrap();
    let blocks = v.as_array().unwrap();
    assert_eq!(blocks.len(), 4);
    for b in blocks {
        assert_eq!(b["terms"].as_array().unwrap().len(), 5);
    }
}

#[test]
fn output_is_deterministic() {
    let a = run(&["gauge", "--bound", "3", "--seed", "11"]).stdout;
    let b = run(&["gauge", "--bound", "3", "--seed", "11"]).stdout;
    assert_eq!(a, b);
}

#[test]
fn hecke_dump_round_trips() {
    let v = stdout_json(&["dump", "hecke", "--word", "s1,s3,s1"]);
    let h: HeckeElt = serde_json::from_value(v.clone()).unwrap();
    assert_eq!(serde_json::to_value(&h).unwrap(), v);
    // support is the Bruhat interval below s1 s3 s1 in an infinite dihedral group
    assert_eq!(h.len(), 6);
}

fn sp4() -> RootDatum {
    fixtures::sp4()
}

#[test]
fn b_s_dump_satisfies_its_defining_relations() {
    let v = stdout_json(&["dump", "bimodule", "--word", "s3"]);
    let m: Bimodule = serde_json::from_value(v).unwrap();
    m.validate().unwrap();
    assert_eq!(m.degrees, vec![-1, 1]);
    let e = endohecke::endoscopy::Endoscopy::new(Arc::new(sp4()), "1/2,1/2".parse().unwrap()).unwrap();
    let g = e.system().generators()[2].clone();
    let alpha = Poly::character(&g.root.root, 2);
    let s = RingAction::new(e.datum(), &g.elem, true);
    let vars = [0, 1, Z];
    // the right action of a linear form, assembled from the per-variable operators
    let rho = |f: &Poly| -> Vec<Vec<Poly>> {
        let mut out = vec![vec![Poly::zero(), Poly::zero()], vec![Poly::zero(), Poly::zero()]];
        for (k, &x) in vars.iter().enumerate() {
            let mut mono = [0u8; 5];
            mono[x] = 1;
            let c = f.coeff(&mono);
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] = &out[i][j] + &m.ops[k][i][j].scale(&c);
                }
            }
        }
        out
    };
    // c_1 · α = c_α and c_α · α = α² c_1
    let ra = rho(&alpha);
    assert_eq!(ra, vec![vec![Poly::zero(), Poly::one()], vec![&alpha * &alpha, Poly::zero()]]);
    // s-invariant forms act by scalars
    for &x in &vars {
        let f = &Poly::var(x) + &s.apply(&Poly::var(x));
        assert_eq!(rho(&f), vec![vec![f.clone(), Poly::zero()], vec![Poly::zero(), f.clone()]]);
    }
}

#[test]
fn endoscope_reports_the_fixture_shape() {
    let v = stdout_json(&["endoscope", "--datum", "sp4", "--char", "1/2,1/2"]);
    assert_eq!(v["components"], serde_json::json!(["A1", "A1"]));
    assert_eq!(v["simple_system"].as_array().unwrap().len(), 4);
    let t = stdout_json(&["endoscope", "--datum", "sl2", "--char", "1/2"]);
    assert_eq!(t["warnings"].as_array().unwrap().len(), 1);
    let s = stdout_json(&["endoscope", "--datum", "sl2", "--char", "0"]);
    assert_eq!(s["components"], serde_json::json!(["A1"]));
}

#[test]
fn shipped_fixture_files_load() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures/");
    let v = stdout_json(&["blocks", "--datum", &format!("{dir}sp4.json"), "--char", "1/2,1/2", "--bound", "4"]);
    assert_eq!(v["count"], 4);
}

#[test]
fn exit_codes() {
    let dir = std::env::temp_dir().join("endohecke-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"name":"bad","rank":2,"simple_roots":[[1,0],[0,1]],"simple_coroots":[[2,0],[0,3]]}"#).unwrap();
    assert_eq!(run(&["endoscope", "--datum", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["verify-all", "--datum", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(run(&["endoscope", "--char", "3/2,0"]).status.code(), Some(1));
    assert_eq!(run(&["verify-all", "--datum", "sl2", "--bound", "3"]).status.code(), Some(0));
    assert_eq!(run(&["verify-all", "--datum", "sp4", "--char", "1/2,1/2", "--bound", "2"]).status.code(), Some(0));
}
