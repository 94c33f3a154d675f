use opgf_core::arith::{int, rat};
use opgf_core::registry::{
    build, default_grid, parse_config, parse_point, registry_list, run_all, verify_identity,
    BatchConfig, BatchOutput, Params, Perturbation, RegistryError, Status,
};

fn params(text: &str) -> Params {
    parse_point(text).unwrap()
}

#[test]
fn catalog_lists_every_identity() {
    let list = registry_list();
    assert!(list.len() >= 28);
    let h2 = list.iter().find(|d| d.id == "H2").unwrap();
    assert_eq!(h2.params, ["rho", "alpha1"]);
    assert!(list.iter().find(|d| d.id == "B1").unwrap().formal_only);
    assert!(list.iter().find(|d| d.id == "U22").unwrap().derived);
    let mut ids: Vec<_> = list.iter().map(|d| d.id).collect();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), list.len(), "duplicate ids");
}

#[test]
fn every_default_grid_point_builds() {
    for d in registry_list() {
        let grid = default_grid(d.id).unwrap();
        assert!(!grid.is_empty(), "{}", d.id);
        for p in grid {
            build(d.id, &p, 4).unwrap_or_else(|e| panic!("{}: {e}", d.id));
        }
    }
}

#[test]
fn ultraspherical_half_passes() {
    let report = verify_identity("Ultra1", &params("lambda=1/2"), 12, None).unwrap();
    assert_eq!(report.status, Status::Pass, "{report:?}");
    assert!(report.checks.iter().any(|c| c.name == "prop3"));
    assert!(report.first_mismatch.is_none());
}

#[test]
fn invalid_parameters_are_rejected() {
    let err = verify_identity("Ultra2", &params("lambda=0"), 8, None).unwrap_err();
    assert!(
        matches!(err, RegistryError::InvalidParameters { .. }),
        "{err}"
    );
    let err = verify_identity("Ultra1", &params("mu=1"), 8, None).unwrap_err();
    assert!(
        matches!(err, RegistryError::InvalidParameters { .. }),
        "{err}"
    );
    let err = verify_identity("Nope", &Params::new(), 8, None).unwrap_err();
    assert_eq!(err, RegistryError::UnknownIdentity("Nope".into()));
}

#[test]
fn missing_parameters_take_defaults() {
    let report = verify_identity("H2", &Params::new(), 6, None).unwrap();
    assert!(report.passed());
    assert_eq!(report.params.len(), 2);
}

#[test]
fn perturbation_is_detected_at_its_index() {
    let p: Perturbation = "R:3:1".parse().unwrap();
    let report = verify_identity("H1", &Params::new(), 10, Some(&p)).unwrap();
    assert_eq!(report.status, Status::Fail);
    let m = report.first_mismatch.expect("mismatch recorded");
    assert!(m.n >= 3, "{m:?}");

    let p: Perturbation = "A:2:1/2".parse().unwrap();
    let report = verify_identity("Ultra1", &params("lambda=1/2"), 10, Some(&p)).unwrap();
    assert!(!report.passed());
}

#[test]
fn malformed_perturbations_are_rejected() {
    assert!("Q:1:1".parse::<Perturbation>().is_err());
    assert!("A:x:1".parse::<Perturbation>().is_err());
    assert!("A:1".parse::<Perturbation>().is_err());
    let p: Perturbation = "F:99:1".parse().unwrap();
    assert!(verify_identity("H1", &Params::new(), 4, Some(&p)).is_err());
}

#[test]
fn order_zero_is_trivially_consistent() {
    let report = verify_identity("L2", &params("alpha=1/2"), 0, None).unwrap();
    assert!(report.passed(), "{report:?}");
}

fn small_batch() -> BatchConfig {
    parse_config(
        "order = 8\n\
         ids = H1, Ultra1, L2, F415\n\
         grid.Ultra1 = lambda=1/2; lambda=3\n",
    )
    .unwrap()
}

fn strip_timing(mut out: BatchOutput) -> BatchOutput {
    out.summary.elapsed = Default::default();
    for r in &mut out.reports {
        r.elapsed = Default::default();
    }
    out
}

#[test]
fn batch_is_deterministic_across_thread_counts() {
    let mut one = small_batch();
    one.jobs = 1;
    let mut four = small_batch();
    four.jobs = 4;
    let a = strip_timing(run_all(&one).unwrap());
    let b = strip_timing(run_all(&four).unwrap());
    assert_eq!(a, b);
    assert!(a.all_passed());
    assert_eq!(a.summary.total, a.reports.len());
    assert_eq!(a.reports[1].params["lambda"], "1/2");
}

#[test]
fn report_json_round_trips() {
    let out = run_all(&small_batch()).unwrap();
    let json = serde_json::to_string_pretty(&out).unwrap();
    let back: BatchOutput = serde_json::from_str(&json).unwrap();
    assert_eq!(back, out);
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), json);
}

#[test]
fn config_errors_name_the_line() {
    let cases = [
        ("order = x", "line 1"),
        ("order = 4\nbogus = 1", "line 2"),
        ("ids = H1, Nope", "line 1"),
        ("order = 4\norder = 5", "duplicate"),
        ("ids = H1\ngrid.L2 = alpha=1", "not among"),
        ("grid.H2 = alpha1", "line 1"),
        ("no equals sign", "line 1"),
    ];
    for (text, needle) in cases {
        let err = parse_config(text).unwrap_err();
        assert!(matches!(err, RegistryError::Config(_)));
        assert!(err.to_string().contains(needle), "{text:?}: {err}");
    }
}

#[test]
fn config_defaults_and_comments() {
    let c = parse_config("# nothing but a comment\n\n").unwrap();
    assert_eq!(c, BatchConfig::default());
    let c = parse_config("ids = all  # everything\njobs = 2").unwrap();
    assert_eq!(c.jobs, 2);
    assert_eq!(c.ids.len(), registry_list().len());
}

#[test]
fn invalid_grid_point_aborts_batch() {
    let c = parse_config("ids = Ultra2\ngrid.Ultra2 = lambda=0").unwrap();
    assert!(matches!(
        run_all(&c),
        Err(RegistryError::InvalidParameters { .. })
    ));
}

#[test]
fn point_parsing() {
    let p = params("alpha1 = 3, rho=-1/2");
    assert_eq!(p["alpha1"], int(3));
    assert_eq!(p["rho"], rat(-1, 2));
    assert!(parse_point("a=1, a=2").is_err());
    assert!(parse_point("a=1/0").is_err());
}

#[test]
fn symmetric_family_with_uneven_prefactor_skips_parity() {
    use opgf_core::rainville::compute_s_r;
    let inst = build("U3", &params("a_choice=1"), 8).unwrap();
    let gf = inst.as_gf().unwrap();
    let c = compute_s_r(&gf.data.a, &gf.data.r).unwrap();
    assert_ne!(c.s[2], int(0));
    let report = opgf_core::registry::verify_instance(&inst);
    assert!(report.passed());
    assert!(report.checks.iter().all(|c| c.name != "parity"));
}
