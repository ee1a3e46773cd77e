//! One PASS/FAIL line per acceptance criterion. All comparisons are exact; the only
//! tolerances are the wall-clock limits below.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use ncalg::algebra::center::{center_algebra, center_to_ambient};
use ncalg::algebra::idempotents::extension_idempotents_are_constant;
use ncalg::algebra::membership::evaluate_certificate;
use ncalg::algebra::{
    central_idempotents, direct_sum, field_algebra, is_unit, jacobson_radical, matrix_algebra, poly_extension,
    quaternion_algebra, radical_report, subalgebra_membership, truncated_polynomial, Membership,
};
use ncalg::azudisc::{corner_order, discriminant, extension_invariance_check, fiber_at, is_central_simple, non_azumaya_poly};
use ncalg::derivations::{ad, exp_automorphism, lowering_hasse_maps, ml_over_family, FamilyMember, HigherDerivation};
use ncalg::exactnum::{parse_ring_tag, Field, Poly, Scalar, Subspace};
use ncalg::io::{OrderFile, WitnessFile};
use ncalg::quiver::{center_bruteforce, center_closed_form, Growth, Quiver, Shape};
use ncalg::witness::{check_detectability, check_retraction, verify_iso, Verdict};
use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

const CENTER_LIMIT: Duration = Duration::from_secs(10);
const DISCRIMINANT_LIMIT: Duration = Duration::from_secs(1);
const PROPERTY_CASES: u64 = 100;

/// Criteria that cannot hold as stated; they still print FAIL but do not fail the run.
const UNATTAINABLE: &[u32] = &[6];

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run_cli(args: &[&str]) -> Result<(i32, Value), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("report.json");
    let status = Command::new(env!("CARGO_BIN_EXE_ncalg"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .output()
        .map_err(|e| e.to_string())?
        .status
        .code()
        .unwrap_or(-1);
    let text = std::fs::read_to_string(&out).map_err(|e| format!("no report for {args:?}: {e}"))?;
    Ok((status, serde_json::from_str(&text).map_err(|e| e.to_string())?))
}

fn random_connected_noncycle(rng: &mut StdRng) -> Quiver {
    loop {
        let n = rng.gen_range(2..=5);
        let m = rng.gen_range(1..=6);
        let mut q = Quiver::new();
        for i in 0..n {
            q.add_vertex(&format!("v{i}")).unwrap();
        }
        for j in 0..m {
            let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            q.add_arrow(&format!("a{j}"), &format!("v{s}"), &format!("v{t}")).unwrap();
        }
        let shape = q.detect_shape();
        if shape.connected && !matches!(shape.components[0].1, Shape::Cycle(_)) {
            return q;
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in 2..=6usize {
        let mut text = String::new();
        for i in 0..n {
            text.push_str(&format!("vertex v{i}\n"));
        }
        for i in 0..n {
            text.push_str(&format!("arrow a{i}: v{i} -> v{}\n", (i + 1) % n));
        }
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let path = dir.path().join(format!("c{n}.quiver"));
        std::fs::write(&path, text).map_err(|e| e.to_string())?;
        let d = (3 * n).to_string();
        let (status, report) = run_cli(&["center", path.to_str().unwrap(), "--closed-form", "--degree", &d])?;
        let res = &report["result"];
        check(status == 0, || format!("C_{n}: exit {status}"))?;
        check(res["closed_form"] == "k[w]", || format!("C_{n}: closed form {}", res["closed_form"]))?;
        check(res["agreement"] == true, || format!("C_{n}: brute force disagrees"))?;
        let expected: Vec<Value> = (0..=3 * n).map(|k| Value::from(u64::from(k % n == 0))).collect();
        check(res["bruteforce"]["dimensions"] == Value::Array(expected), || {
            format!("C_{n}: dimensions {}", res["bruteforce"]["dimensions"])
        })?;
    }
    let mut rng = StdRng::seed_from_u64(1);
    for k in 0..25 {
        let q = Arc::new(random_connected_noncycle(&mut rng));
        let closed = center_closed_form(&q);
        check(closed.to_string() == "k", || format!("random quiver {k}: closed form {closed}"))?;
        let target = 2 * q.num_vertices() + 2;
        let mut bound = 0;
        while bound < target && q.closed_path_count(bound + 1) <= BigUint::from(20000u32) {
            bound += 1;
        }
        let dims = center_bruteforce(&q, bound, Field::Rationals).dimensions();
        let mut expected = vec![0; bound + 1];
        expected[0] = 1;
        check(dims == expected, || format!("random quiver {k}: brute force {dims:?}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < CENTER_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("C_2..C_6 give k[w] with agreement to degree 3n; 25 random quivers give k; {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let ring = parse_ring_tag("QQ[x]").unwrap();
    for f in ["x", "x - 1", "x*(x - 1)", "x^2 + 1"] {
        let fp = Poly::parse(f, &ring).map_err(|e| e.to_string())?;
        let d = discriminant(&corner_order(&ring, &fp).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let sq = &fp * &fp;
        check(d.raw == sq.scale(&ring.field().from_i64(-16)), || format!("f = {f}: raw {}", d.raw))?;
        check(d.normalized == sq, || format!("f = {f}: normalized {}", d.normalized))?;
        check(d.squarefree == fp, || format!("f = {f}: squarefree {}", d.squarefree))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < DISCRIMINANT_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("raw -16 f^2, normalized f^2, squarefree f for all four f; {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let ring = parse_ring_tag("QQ[x]").unwrap();
    let f = Poly::parse("x*(x - 2)", &ring).unwrap();
    let a = corner_order(&ring, &f).map_err(|e| e.to_string())?;
    let q = Field::Rationals;
    for (pts, expect) in [(&[0i64, 2][..], false), (&[1, -1, 3, 5][..], true)] {
        for &p in pts {
            let cs = is_central_simple(&fiber_at(&a, &q.from_i64(p)).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            check(cs == expect, || format!("fiber at {p}: central simple = {cs}"))?;
        }
    }
    let na = non_azumaya_poly(&a, 4, 7).map_err(|e| e.to_string())?;
    check(na.poly == f, || format!("non-Azumaya polynomial {}", na.poly))?;
    check(na.consistent(), || "root/fiber checks inconsistent".into())?;
    Ok(format!("fibers fail at 0, 2 and pass at 1, -1, 3, 5; N(A) = {}", na.poly))
}

fn criterion_4() -> Outcome {
    let mut names = Vec::new();
    for name in ["corner_x.json", "corner_x_xm2.json", "m2_order.json"] {
        let text = std::fs::read_to_string(fixture(name)).map_err(|e| e.to_string())?;
        let a = OrderFile::parse(&text).and_then(|o| o.build()).map_err(|e| e.to_string())?;
        for n in 1..=3 {
            let holds = extension_invariance_check(&a, n).map_err(|e| e.to_string())?;
            check(holds, || format!("{name}: fails for n = {n}"))?;
        }
        names.push(name);
    }
    Ok(format!("invariant for n = 1, 2, 3 on {}", names.join(", ")))
}

fn criterion_5() -> Outcome {
    let text = std::fs::read_to_string(fixture("example33_witness.json")).map_err(|e| e.to_string())?;
    let file = WitnessFile::parse(&text).map_err(|e| e.to_string())?;
    let w = file.build().map_err(|e| e.to_string())?;
    check(verify_iso(&w).is_iso(), || format!("witness: {}", verify_iso(&w)))?;
    let r = check_retraction(&w).map_err(|e| e.to_string())?;
    check(matches!(&r, Verdict::No { witness, .. } if witness == "y"), || format!("retraction: {r}"))?;
    let det = check_detectability(&w, 1).map_err(|e| e.to_string())?;
    check(det.len() == 1 && matches!(det[0].1, Membership::Member { length: 1, .. }), || format!("detectability {det:?}"))?;
    let a = file.source.build().map_err(|e| e.to_string())?;
    let ci = central_idempotents(&a).map_err(|e| e.to_string())?;
    check(ci == vec![a.zero(), a.identity().to_vec()], || format!("CI has {} elements", ci.len()))?;
    let j = Subspace::span(a.field(), a.dim(), &jacobson_radical(&a).map_err(|e| e.to_string())?);
    let xy = Subspace::span(a.field(), a.dim(), &[a.basis_vector(1), a.basis_vector(2)]);
    check(j == xy, || "radical is not span{x, y}".into())?;
    // the CLI reproduces the same verdicts
    let (status, report) = run_cli(&["witness", fixture("example33_witness.json").to_str().unwrap(), "--detect-bound", "1"])?;
    check(status == 0 && report["result"]["detectability"]["s"]["status"] == "certificate", || {
        format!("cli exit {status}")
    })?;
    Ok("ISO; retraction No with witness y; s = phi(t) at length 1; CI = {0, 1}; J = span{x, y}".into())
}

fn criterion_6() -> Outcome {
    let q = Field::Rationals;
    let a = Arc::new(matrix_algebra(q, 2));
    let e = |l: &str| a.basis_vector(a.label_index(l).unwrap());
    let d12 = ad(&a, &e("e12"));
    check(d12.nilpotency_index() == Some(3), || format!("ad_e12 index {:?}", d12.nilpotency_index()))?;
    check(!ad(&a, &e("e11")).is_locally_nilpotent(), || "ad_e11 is locally nilpotent".into())?;
    let w = exp_automorphism(&d12, "t").map_err(|e| e.to_string())?;
    let ext = w.forward.source().clone();
    let t = Poly::var(ext.ring(), 0);
    let u = ext.one().add(&ext.from_vector(&e("e12")).scale_poly(&t));
    let uinv = ext.one().sub(&ext.from_vector(&e("e12")).scale_poly(&t));
    for i in 0..a.dim() {
        let b = ext.basis_element(i);
        let img = w.forward.apply(&b).map_err(|e| e.to_string())?;
        check(img == u.mul(&b).mul(&uinv), || format!("exp differs from conjugation on {}", a.labels()[i]))?;
    }
    let derivation_part = "ad_e12 LND of index 3, ad_e11 not LND, exp(ad_e12) = conjugation by 1 + t*e12";

    // d_i(x^m) = C(m, i) x^(m - i) on F_2[x]/(x^4)
    let f2 = Field::prime(2).unwrap();
    let b = Arc::new(truncated_polynomial(f2, "x", 4).unwrap());
    let maps = lowering_hasse_maps(f2, 4);
    let bext = poly_extension(&b, &["t"]).unwrap();
    let bt = Poly::var(bext.ring(), 0);
    let mut gx = bext.zero();
    for n in 0..=maps.len() {
        let v = if n == 0 { b.basis_vector(1) } else { maps[n - 1][1].clone() };
        gx = gx.add(&bext.from_vector(&v).scale_poly(&bt.pow(n as u32)));
    }
    let gx_ok = gx == bext.parse("x + t").unwrap();
    match HigherDerivation::new(&b, &maps) {
        Ok(_) if gx_ok => Ok(format!("{derivation_part}; Hasse-Schmidt fixture passes with G(x) = x + t")),
        Ok(_) => Err(format!("{derivation_part}; G(x) = {gx}")),
        Err(err) => Err(format!(
            "{derivation_part} all hold, but the Hasse-Schmidt fixture fails: {err}; G(x) = {gx} would send x^4 = 0 to t^4 != 0"
        )),
    }
}

fn criterion_7() -> Outcome {
    let q = Field::Rationals;
    let mut counts = [0u64; 6];
    for seed in 0..PROPERTY_CASES {
        let mut rng = StdRng::seed_from_u64(seed);
        let field = if seed % 2 == 0 { q } else { Field::prime(5).unwrap() };
        let a = common::random_algebra(field, seed, 10);

        // CI(A[t]) = CI(A): the first-order ansatz admits only constant solutions
        let ci = central_idempotents(&a).map_err(|e| e.to_string())?;
        check(extension_idempotents_are_constant(&a, &ci), || format!("seed {seed}: nonconstant idempotent"))?;
        counts[0] += 1;

        // CI(A) = CI(Z(A))
        let (z, zspace) = center_algebra(&a).map_err(|e| e.to_string())?;
        let mut via: Vec<Vec<Scalar>> = central_idempotents(&z)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|e| center_to_ambient(&zspace, e))
            .collect();
        via.sort();
        check(via == ci, || format!("seed {seed}: CI(Z(A)) differs"))?;
        counts[1] += 1;

        // J nilpotent, A/J semisimple
        let r = radical_report(&a).map_err(|e| e.to_string())?;
        let mut power = r.radical.clone();
        for _ in 1..r.nilpotency_index {
            power = a.product_space(&power, &r.radical);
        }
        check(power.is_zero() && r.quotient_semisimple && a.is_ideal(&r.radical), || format!("seed {seed}: radical certificate"))?;
        counts[2] += 1;

        // units of (sum of division rings)[t] have t-degree 0
        let h = quaternion_algebra(q, &q.from_i64(-1), &q.from_i64(-1));
        let k = field_algebra(q);
        let ds = Arc::new(direct_sum(&[&k, &h]).unwrap());
        let ext = poly_extension(&ds, &["t"]).unwrap();
        let t = Poly::var(ext.ring(), 0);
        let c0 = ext.from_vector(&common::random_vector(&ds, &mut rng));
        let c1 = ext.from_vector(&common::random_vector(&ds, &mut rng)).scale_poly(&t.pow(rng.gen_range(1..3)));
        let x = c0.add(&c1);
        if is_unit(&x).is_unit() {
            check(x.t_degree() == 0, || format!("seed {seed}: unit {x} has positive t-degree"))?;
        }
        check(is_unit(&c0).is_unit() == !ds_has_zero_component(&c0), || format!("seed {seed}: constant unit test"))?;
        counts[3] += 1;

        // membership certificates re-evaluate to their targets
        let small = Arc::new(common::random_algebra(q, seed, 6));
        let sext = poly_extension(&small, &["t"]).unwrap();
        let st = Poly::var(sext.ring(), 0);
        let g = sext.from_vector(&common::random_vector(&small, &mut rng)).scale_poly(&st);
        let hh = sext.from_vector(&common::random_vector(&small, &mut rng)).add(&sext.one().scale_poly(&st.pow(2)));
        let gens = vec![g.clone(), hh.clone()];
        let target = g.mul(&hh).add(&hh.scale(&q.from_i64(3)));
        match subalgebra_membership(&target, &gens, 3) {
            Membership::Member { certificate, .. } => {
                check(evaluate_certificate(&certificate, &gens, &target) == target, || format!("seed {seed}: certificate"))?
            }
            other => return Err(format!("seed {seed}: expected membership, got {other:?}")),
        }
        counts[4] += 1;

        // ML shrinks as the family grows
        let qa = Arc::new(common::random_algebra(q, seed, 9));
        let j = jacobson_radical(&qa).map_err(|e| e.to_string())?;
        let fam: Vec<FamilyMember> = (0..4)
            .map(|_| {
                let mut x = qa.zero();
                for v in &j {
                    x = qa.add(&x, &qa.scale(&q.from_i64(rng.gen_range(-2..=2)), v));
                }
                FamilyMember::Ordinary(ad(&qa, &x))
            })
            .collect();
        let cut = rng.gen_range(0..=fam.len());
        let sub = ml_over_family(&qa, &fam[..cut]).map_err(|e| e.to_string())?;
        let all = ml_over_family(&qa, &fam).map_err(|e| e.to_string())?;
        check(sub.ml.contains_subspace(&all.ml) && sub.ml_z.contains_subspace(&all.ml_z), || {
            format!("seed {seed}: ML not monotone")
        })?;
        counts[5] += 1;
    }
    Ok(format!("{counts:?} cases for CI(A[t]), CI(Z), radical, units, membership, ML"))
}

/// Whether a constant of `Q + H` has a zero summand.
fn ds_has_zero_component(x: &ncalg::algebra::AlgElement) -> bool {
    let v = x.constant_vector().unwrap();
    v[0].is_zero() || v[1..].iter().all(Scalar::is_zero)
}

fn criterion_8() -> Outcome {
    for n in 1..=8 {
        let c = Quiver::cycle(n);
        for d in 0..=20 {
            check(c.path_count(d) == BigUint::from(n), || format!("path_count(C_{n}, {d}) = {}", c.path_count(d)))?;
        }
    }
    check(Quiver::loops(2).growth_class(20) == Growth::Exponential, || "two loops not exponential".into())?;
    let mut acyclic = vec![Quiver::kronecker(), Quiver::linear(4)];
    for name in ["a3.quiver", "kronecker.quiver"] {
        let text = std::fs::read_to_string(fixture(name)).map_err(|e| e.to_string())?;
        acyclic.push(Quiver::parse(&text).map_err(|e| e.to_string())?);
    }
    for q in &acyclic {
        check(q.growth_class(20) == Growth::FiniteDimensional, || format!("acyclic quiver: {}", q.growth_class(20)))?;
    }
    let (_, report) = run_cli(&["growth", fixture("two_loops.quiver").to_str().unwrap()])?;
    check(report["result"]["growth"]["class"] == "exponential", || "cli growth class".into())?;
    Ok("path_count(C_n, d) = n for n <= 8, d <= 20; two loops Exponential; acyclic FiniteDimensional".into())
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "path-algebra centers", criterion_1),
        (2, "corner discriminants", criterion_2),
        (3, "Azumaya locus", criterion_3),
        (4, "extension invariance", criterion_4),
        (5, "local algebra end-to-end", criterion_5),
        (6, "derivation suite", criterion_6),
        (7, "property suites", criterion_7),
        (8, "growth", criterion_8),
    ];
    let mut unexpected = 0;
    for (n, name, f) in criteria {
        let outcome = f();
        match &outcome {
            Ok(detail) => println!("criterion {n} ({name}): PASS: {detail}"),
            Err(detail) => {
                let note = if UNATTAINABLE.contains(&n) { " [unattainable as stated]" } else { "" };
                println!("criterion {n} ({name}): FAIL{note}: {detail}");
                if !UNATTAINABLE.contains(&n) {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
