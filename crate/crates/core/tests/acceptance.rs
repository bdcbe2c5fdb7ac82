//! One `[PASS]`/`[FAIL]` line per acceptance criterion.
//!
//! Runs without the libtest harness so the report is always printed:
//! `cargo test -p livsic --test acceptance`.

mod common;

use common::*;
use livsic::bezoutian::{
    bezout_matrix, common_zero_residual, fundamental_identity_residual, u_vector, verify_common_zero, Divisor, Side,
};
use livsic::cli::run_args;
use livsic::curves::{
    builtin_curve, builtin_example, construct_gamma, containment_check, normalize_coordinates, NormalizeMode,
};
use livsic::detrep::{
    degree, is_very_reasonable, pencil_commutation_report, schubert_det_profile, vr_struct_residual, Tolerances,
};
use livsic::exterior::{contract_subspace, plucker_coords};
use livsic::hyperbolicity::{
    grassmann_distance, is_witness_definite, is_witness_exact, kappa_pair, lmi_export, sampled_section_reality,
    slice_pencil_scan, PlaneSpec,
};
use livsic::io::{self, CurveFile, GammaFile, Number};
use livsic::linalg::{self, c, CMat, CVec, C64};
use livsic::ratfunc::{is_dividing, RationalFunction};
use livsic::GammaTensor;
use rand::Rng;

type Criterion = (&'static str, &'static str, fn() -> Verdict);

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict { pass, detail: detail.into() }
}

fn int_matrix(rows: &[&[i32]]) -> CMat {
    CMat::from_fn(rows.len(), rows.len(), |i, j| c(rows[i][j] as f64))
}

fn run(args: &[&str]) -> livsic::cli::Outcome {
    run_args(std::iter::once("livsic").chain(args.iter().copied()))
}

fn ac1() -> Verdict {
    let printed: [(&[usize], &[&[i32]]); 6] = [
        (&[0, 1], &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
        (&[0, 2], &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]),
        (&[0, 3], &[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]),
        (&[1, 2], &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
        (&[1, 3], &[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]),
        (&[2, 3], &[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]]),
    ];
    let out = run(&["examples", "twisted_cubic"]);
    let file: GammaFile = serde_json::from_value(out.output).unwrap();
    let verbatim = out.code == 0
        && file.entries.len() == 6
        && printed.iter().all(|(idx, rows)| {
            file.entries.iter().any(|e| e.indices == *idx && io::parse_vectors(&e.matrix) == int_matrix(rows).row_iter().map(|r| r.transpose()).collect::<Vec<CVec>>())
        });
    let gamma = file.to_gamma().unwrap();
    let check = containment_check(&builtin_curve("twisted_cubic").unwrap(), &gamma, 25, 1, 1e-8).unwrap();
    let tol = Tolerances::default();
    let deg = degree(&gamma, 8, 1, &tol).unwrap().degree;
    let vr = is_very_reasonable(&gamma, 8, 1, &tol).unwrap();
    let pass = verbatim && check.pass && check.min_kernel_dim == 1 && check.max_kernel_dim == 1 && deg == 3 && vr;
    verdict(
        pass,
        format!(
            "verbatim={verbatim} containment={:.1e} kernel_dim={}..{} degree={deg} vr={vr}",
            check.max_residual, check.min_kernel_dim, check.max_kernel_dim
        ),
    )
}

fn ac2() -> Verdict {
    let gamma = builtin_example("monomial_quintic").unwrap();
    let check = containment_check(&builtin_curve("monomial_quintic").unwrap(), &gamma, 25, 1, 1e-8).unwrap();
    verdict(
        check.pass,
        format!(
            "containment of (1,t^3,t^4,t^5) max residual {:.1e} (the printed matrices vanish on (1,t^3,-t^4,t^5))",
            check.max_residual
        ),
    )
}

fn ac3() -> Verdict {
    let cubic = builtin_curve("twisted_cubic").unwrap();
    let tol = Tolerances::default();
    let (mut worst_cont, mut worst_comm, mut worst_struct) = (0.0f64, 0.0f64, 0.0f64);
    let mut all_vr = true;
    for seed in 1..=5 {
        let norm = normalize_coordinates(&cubic, seed, &NormalizeMode::Generic).unwrap();
        let report = construct_gamma(&norm.curve, seed).unwrap();
        all_vr &= report.vr;
        worst_cont = worst_cont.max(report.containment_residual);
        let mut r = rng(1000 + seed);
        for _ in 0..5 {
            let basis = real_basis(&mut r, 3, 2);
            let u = linalg::random_real_vec(&mut r, 4);
            worst_comm = worst_comm.max(pencil_commutation_report(&report.gamma, &basis, &u, &tol).unwrap().commutator);
            worst_struct = worst_struct.max(vr_struct_residual(&report.gamma, &basis, &tol).unwrap().residual);
        }
    }
    let pass = all_vr && worst_cont < 1e-8 && worst_comm < 1e-9 && worst_struct < 1e-9;
    verdict(pass, format!("vr={all_vr} containment={worst_cont:.1e} commutator={worst_comm:.1e} struct={worst_struct:.1e}"))
}

fn ac4() -> Verdict {
    let close = |m: &CMat, rows: &[&[i32]]| (m - int_matrix(rows)).norm() < 1e-12;
    // f = 1: residue 0, constant 1; g = 1/t: residue 1, constant 0; b_00 = 1·1 − 0·0
    let one = RationalFunction::constant(c(1.0));
    let inv_t = RationalFunction::from_real(&[1.0], &[0.0, 1.0]).unwrap();
    let d0 = Divisor::real(&[0.0]).unwrap();
    let first = close(&bezout_matrix(&one, &inv_t, &d0).unwrap().matrix, &[&[1]]);

    // f = 1/t: (a, b) = (1, 0) at 0 and (0, 1) at 1; g = 1/(t−1): (0, −1) at 0 and (1, 0) at 1
    // b_00 = 0·0 − 1·(−1) = 1, b_11 = 1·1 − 0·0 = 1, b_01 = (1·1 − 0·0)/(0 − 1) = −1
    let inv_t1 = RationalFunction::from_real(&[1.0], &[-1.0, 1.0]).unwrap();
    let d01 = Divisor::real(&[0.0, 1.0]).unwrap();
    let b = bezout_matrix(&inv_t, &inv_t1, &d01).unwrap();
    let second = close(&b.matrix, &[&[1, -1], &[-1, 1]]);
    // (f(2)g(3) − f(3)g(2))/(3 − 2) = 1/4 − 1/3 = −1/12
    let (p, q) = (c(2.0), c(3.0));
    let ul = u_vector(&d01, p, Side::Left).unwrap().entries;
    let ur = u_vector(&d01, q, Side::Right).unwrap().entries;
    let value = (ul.transpose() * &b.matrix * ur)[(0, 0)];
    let identity = (value - c(-1.0 / 12.0)).norm() < 1e-12
        && fundamental_identity_residual(&b, &inv_t, &inv_t1, p, q).unwrap() < 1e-12;

    // f = (t−2)/t, g = (t−2)/(t−1): f has (a, b) = (−2, 1) at 0 and (0, −1) at 1,
    // g has (0, 2) at 0 and (−1, 0) at 1, so B = [[4, −2], [−2, 1]]; u_right(2) = (1/2, 1)
    let f = RationalFunction::from_real(&[-2.0, 1.0], &[0.0, 1.0]).unwrap();
    let g = RationalFunction::from_real(&[-2.0, 1.0], &[-1.0, 1.0]).unwrap();
    let bz = bezout_matrix(&f, &g, &d01).unwrap().matrix;
    let third = close(&bz, &[&[4, -2], &[-2, 1]])
        && verify_common_zero(&f, &g, &d01, c(2.0)).unwrap() < 1e-12
        && common_zero_residual(&f, &g, &d01, c(3.0)).unwrap() > 1e-3
        && verify_common_zero(&f, &g, &d01, c(3.0)).is_err();

    let pass = first && second && identity && third;
    verdict(pass, format!("B(1,1/t)={first} B(1/t,1/(t-1))={second} identity(2,3)={identity} common_zero={third}"))
}

fn ac5() -> Verdict {
    let pick = builtin_curve("pick").unwrap();
    let v23 = PlaneSpec::coordinate(3, &[2, 3]).unwrap();
    let exact = is_witness_exact(&pick, &v23, 1e-9).unwrap().witness;
    // λ_1 = (1 − 3t²)/(t³ − t) = −1/t − 1/(t−1) − 1/(t+1), so γ(V) = B(1, λ_1) = −I
    let gamma = construct_gamma(&pick, 1).unwrap().gamma;
    let gv = contract_subspace(&gamma, v23.basis()).unwrap();
    let minus_identity = linalg::max_abs(&(gv + CMat::identity(3, 3))) < 1e-12;
    let stats = sampled_section_reality(&pick, &v23, 200, 1, 1e-8).unwrap();
    let sections = stats.all_real == 200 && stats.max_imag < 1e-8;

    let cubic = builtin_curve("twisted_cubic").unwrap();
    let v12 = PlaneSpec::coordinate(3, &[1, 2]).unwrap();
    let cubic_exact = is_witness_exact(&cubic, &v12, 1e-9).unwrap();
    let cubic_gamma = builtin_example("twisted_cubic").unwrap();
    let ev = linalg::hermitian_eigenvalues(&contract_subspace(&cubic_gamma, v12.basis()).unwrap());
    let indefinite = ev[0] < -1e-9 && ev[ev.len() - 1] > 1e-9
        && is_witness_definite(&cubic_gamma, &v12, 1e-9).unwrap().is_none();
    let cubic_stats = sampled_section_reality(&cubic, &v12, 200, 1, 1e-8).unwrap();
    let negative = cubic_exact.disjoint && !cubic_exact.witness && indefinite && cubic_stats.all_real < 200;

    let pass = exact && minus_identity && sections && negative;
    verdict(
        pass,
        format!(
            "pick: exact={exact} gamma(V)=-I={minus_identity} real sections {}/200 (max |Im| {:.1e}); cubic: witness={} eigenvalues {:?} real sections {}/200",
            stats.all_real, stats.max_imag, cubic_exact.witness, ev, cubic_stats.all_real
        ),
    )
}

fn divisor_points(r: &mut impl Rng, m: usize) -> Vec<f64> {
    let mut pts: Vec<f64> = Vec::new();
    while pts.len() < m {
        let p = r.gen_range(-3.0..3.0);
        if pts.iter().all(|q: &f64| (q - p).abs() > 0.3) {
            pts.push(p);
        }
    }
    pts
}

fn element(r: &mut impl Rng, pts: &[f64]) -> RationalFunction {
    let terms: Vec<(C64, C64)> =
        pts.iter().map(|&p| (C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)), c(p))).collect();
    RationalFunction::from_partial_fractions(C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)), &terms).unwrap()
}

fn off_axis(r: &mut impl Rng) -> C64 {
    C64::new(r.gen_range(-3.0..3.0), r.gen_range(0.2..2.0) * if r.gen_bool(0.5) { 1.0 } else { -1.0 })
}

fn rel(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(1.0)
}

fn vr_tensors() -> Vec<GammaTensor> {
    vec![
        builtin_example("twisted_cubic").unwrap(),
        builtin_example("rational_p3").unwrap(),
        construct_gamma(&builtin_curve("pick").unwrap(), 1).unwrap().gamma,
    ]
}

fn ac6() -> Verdict {
    let mut r = rng(6);
    let mut failures: Vec<&str> = Vec::new();

    let mut ok = true;
    for i in 0..100 {
        let pts = divisor_points(&mut r, 1 + i % 5);
        let d = Divisor::real(&pts).unwrap();
        let (f, g) = (element(&mut r, &pts), element(&mut r, &pts));
        let [a1, b1, a2, b2]: [f64; 4] = std::array::from_fn(|_| r.gen_range(-2.0..2.0));
        let u = RationalFunction::linear_combination(&[(c(a1), &f), (c(b1), &g)]).unwrap();
        let v = RationalFunction::linear_combination(&[(c(a2), &f), (c(b2), &g)]).unwrap();
        let bfg = bezout_matrix(&f, &g, &d).unwrap().matrix;
        let buv = bezout_matrix(&u, &v, &d).unwrap().matrix;
        let bgf = bezout_matrix(&g, &f, &d).unwrap().matrix;
        ok &= rel(&buv, &(&bfg * c(a1 * b2 - a2 * b1))) < 1e-12
            && rel(&bgf, &(-&bfg)) < 1e-12
            && rel(&bfg, &bfg.transpose()) < 1e-12;
    }
    if !ok {
        failures.push("bilinear");
    }

    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let pts = divisor_points(&mut r, 1 + i % 5);
        let d = Divisor::real(&pts).unwrap();
        let (f, g) = (element(&mut r, &pts), element(&mut r, &pts));
        let b = bezout_matrix(&f, &g, &d).unwrap();
        let (p, q) = (off_axis(&mut r), off_axis(&mut r));
        worst = worst.max(fundamental_identity_residual(&b, &f, &g, p, q).unwrap());
    }
    if worst >= 1e-10 {
        failures.push("identity");
    }

    let pick = builtin_curve("pick").unwrap();
    let built = construct_gamma(&pick, 1).unwrap();
    let mut bridge: f64 = 0.0;
    for _ in 0..100 {
        let plane = PlaneSpec::new(real_basis(&mut r, 3, 2)).unwrap();
        let (k0, k1) = kappa_pair(&pick, &plane).unwrap();
        let b = bezout_matrix(&k0, &k1, &built.divisor).unwrap().matrix;
        bridge = bridge.max((contract_subspace(&built.gamma, plane.basis()).unwrap() - b).norm());
    }
    if bridge >= 1e-9 {
        failures.push("bridge");
    }

    let tensors = vr_tensors();
    let mut schubert = true;
    for g in &tensors {
        for _ in 0..20 {
            let u = linalg::random_real_vec(&mut r, 4);
            let basis = real_basis(&mut r, 3, 2);
            let prof = schubert_det_profile(g, std::slice::from_ref(&u), &basis[0], &basis[1], 2 * g.n() + 2).unwrap();
            schubert &= prof.poly.degree() == Some(g.n());
        }
    }
    if !schubert {
        failures.push("schubert");
    }

    let mut lmi: f64 = 0.0;
    for g in &tensors {
        let export = lmi_export(g).unwrap();
        for _ in 0..100 {
            let basis = real_basis(&mut r, 3, 2);
            let direct = contract_subspace(g, &basis).unwrap();
            lmi = lmi.max((export.evaluate(&plucker_coords(&basis).unwrap()) - &direct).norm() / direct.norm().max(1.0));
        }
    }
    if lmi >= 1e-12 {
        failures.push("lmi");
    }

    let mut gaps = 0;
    for g in &tensors {
        for _ in 0..20 {
            let v0 = real_basis(&mut r, 3, 1);
            let (w1, w2) = (linalg::random_real_vec(&mut r, 4), linalg::random_real_vec(&mut r, 4));
            gaps += slice_pencil_scan(g, &v0, &w1, &w2, 1000, 1e-9).unwrap().has_gaps() as usize;
        }
    }
    if gaps > 0 {
        failures.push("scan");
    }

    let mut metric = true;
    for i in 0..100 {
        let dim = 1 + i % 3;
        let planes: Vec<Vec<CVec>> = (0..3).map(|_| (0..dim).map(|_| cvec(&mut r, 5)).collect()).collect();
        let d = |a: usize, b: usize| grassmann_distance(&planes[a], &planes[b]).unwrap();
        metric &= d(0, 0) < 1e-12 && (d(0, 1) - d(1, 0)).abs() < 1e-12 && d(0, 2) <= d(0, 1) + d(1, 2) + 1e-12 && d(0, 1) > 0.0;
    }
    if !metric {
        failures.push("metric");
    }

    verdict(
        failures.is_empty(),
        format!(
            "identity={worst:.1e} bridge={bridge:.1e} lmi={lmi:.1e} scan gaps={gaps} schubert={schubert} metric={metric} failed={failures:?}"
        ),
    )
}

fn ac7() -> Verdict {
    let dir = tempfile::TempDir::new().unwrap();
    let mut flipped = 0;
    let mut total = 0;
    for (name, gamma) in [
        ("twisted_cubic", builtin_example("twisted_cubic").unwrap()),
        ("pick", construct_gamma(&builtin_curve("pick").unwrap(), 1).unwrap().gamma),
    ] {
        let curve = dir.path().join(format!("{name}.json"));
        io::write_json(&curve, &CurveFile::from_curve(&builtin_curve(name).unwrap())).unwrap();
        let file = GammaFile::from_gamma(&gamma);
        let original = dir.path().join("original.json");
        io::write_json(&original, &file).unwrap();
        let baseline = run(&["verify", original.to_str().unwrap(), curve.to_str().unwrap(), "--seed", "1"]).code;
        if baseline != 0 {
            return verdict(false, format!("{name} does not verify before tampering"));
        }
        for e in 0..file.entries.len() {
            for i in 0..gamma.n() {
                for j in 0..gamma.n() {
                    let mut bad = file.clone();
                    let z = bad.entries[e].matrix[i][j].value() + c(1.0);
                    bad.entries[e].matrix[i][j] = Number::pair(z);
                    let path = dir.path().join("tampered.json");
                    io::write_json(&path, &bad).unwrap();
                    total += 1;
                    if run(&["verify", path.to_str().unwrap(), curve.to_str().unwrap(), "--seed", "1"]).code == 1 {
                        flipped += 1;
                    }
                }
            }
        }
    }

    // B/A for the twisted cubic and span{e1, e2}, plus a mixed-sign residue function
    let cubic = builtin_curve("twisted_cubic").unwrap();
    let plane = PlaneSpec::coordinate(3, &[1, 2]).unwrap();
    let (a, b) = plane.dual_pair();
    let ratio = RationalFunction::new(cubic.pullback(b).unwrap(), cubic.pullback(a).unwrap()).unwrap().reduce().unwrap();
    let mixed = RationalFunction::from_partial_fractions(c(0.0), &[(c(1.0), c(0.0)), (c(-1.0), c(1.0))]).unwrap();
    let mut witnessed = 0;
    for f in [&ratio, &mixed] {
        let v = is_dividing(f, 1e-9).unwrap();
        if let (false, Some(w)) = (v.is_dividing, v.failure_witness) {
            let fiber = f.num() - &f.den().scale(c(w));
            let roots = fiber.roots().unwrap();
            if roots.iter().any(|z| z.im.abs() > 1e-6 * (1.0 + z.norm())) {
                witnessed += 1;
            }
        }
    }
    verdict(flipped == total && witnessed == 2, format!("tampered {flipped}/{total} rejected; non-real fibers verified {witnessed}/2"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("AC1", "twisted cubic example", ac1),
        ("AC2", "monomial quintic example", ac2),
        ("AC3", "Bezoutian construction", ac3),
        ("AC4", "Bezoutian unit identities", ac4),
        ("AC5", "hyperbolicity round trip", ac5),
        ("AC6", "property suites", ac6),
        ("AC7", "failure detection", ac7),
    ];
    // the printed quintic matrices carry a sign slip and are expected to fail
    let known_failures = ["AC2"];
    let mut unexpected = Vec::new();
    for (id, title, check) in criteria {
        let v = check();
        println!("[{}] {id} {title}: {}", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        if !v.pass && !known_failures.contains(&id) {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("failing criteria: {unexpected:?}");
        std::process::exit(1);
    }
}
