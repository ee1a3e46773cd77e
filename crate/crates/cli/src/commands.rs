use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Map, Value};

use ncalg::algebra::membership::format_certificate;
use ncalg::algebra::{
    center_basis, central_idempotents_with, is_unit, poly_extension, radical_report, Membership, StructAlgebra,
};
use ncalg::azudisc::{extension_invariance_check, non_azumaya_poly, pi_degree_estimate, sample_fibers};
use ncalg::derivations::{exp_automorphism, hs_automorphism, ml_over_family, FamilyMember};
use ncalg::exactnum::{parse_scalar, Field, Scalar, Subspace};
use ncalg::io::{AlgebraFile, DerivationFile, OrderFile, WitnessFile};
use ncalg::quiver::{center_bruteforce, center_closed_form, Growth, Quiver};
use ncalg::witness::{check_detectability, check_retraction, check_z_retraction, verify_iso, Verdict};

use crate::report::{Failure, Input, Outcome, INCONCLUSIVE, INTERNAL, OK, REFUTED};

fn vectors(a: &StructAlgebra, vs: &[Vec<Scalar>]) -> Vec<String> {
    vs.iter().map(|v| a.format_vector(v)).collect()
}

fn span(a: &StructAlgebra, s: &Subspace) -> Vec<String> {
    vectors(a, s.basis())
}

fn show_span(items: &[String]) -> String {
    if items.is_empty() {
        "0".into()
    } else {
        format!("span{{{}}}", items.join(", "))
    }
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Yes => json!({"verdict": "yes"}),
        Verdict::No { witness, reason } => json!({"verdict": "no", "witness": witness, "reason": reason}),
    }
}

pub struct CenterOptions {
    pub degree: Option<usize>,
    pub closed_form: bool,
    pub field: Field,
}

pub fn center(input: &Input, opts: &CenterOptions) -> Result<Outcome, Failure> {
    if looks_like_json(&input.text) {
        let a = AlgebraFile::parse(&input.text)?.build()?;
        let basis = vectors(&a, &center_basis(&a));
        let summary = vec![format!("center of a {}-dimensional algebra: dimension {}, {}", a.dim(), basis.len(), show_span(&basis))];
        return Ok(Outcome {
            result: json!({"kind": "algebra", "dimension": a.dim(), "center": {"dimension": basis.len(), "basis": basis}}),
            summary,
            status: OK,
        });
    }
    let q = Arc::new(Quiver::parse(&input.text)?);
    let closed = opts.closed_form || opts.degree.is_none();
    let mut result = Map::new();
    let mut summary = Vec::new();
    result.insert("kind".into(), json!("quiver"));
    let shape = q.detect_shape();
    result.insert(
        "components".into(),
        json!(shape.components.iter().map(|(_, s)| s.to_string()).collect::<Vec<_>>()),
    );
    let closed_form = center_closed_form(&q);
    if closed {
        result.insert("closed_form".into(), json!(closed_form.to_string()));
        summary.push(format!("closed form: Z(kQ) = {closed_form}"));
    }
    let mut status = OK;
    if let Some(d) = opts.degree {
        let z = center_bruteforce(&q, d, opts.field);
        let degrees: Vec<Value> = z
            .degrees
            .iter()
            .enumerate()
            .map(|(i, b)| json!({"degree": i, "basis": b.iter().map(|e| e.to_string()).collect::<Vec<_>>()}))
            .collect();
        result.insert("bruteforce".into(), json!({"bound": d, "field": opts.field.tag(), "dimensions": z.dimensions(), "degrees": degrees}));
        summary.push(format!("brute force up to degree {d}: dimensions {:?}", z.dimensions()));
        if closed {
            let agree = closed_form.dimensions(d) == z.dimensions();
            result.insert("agreement".into(), json!(agree));
            summary.push(format!("agreement: {agree}"));
            if !agree {
                status = INTERNAL;
                summary.push("closed form and brute force disagree".into());
            }
        }
    }
    Ok(Outcome {
        result: Value::Object(result),
        summary,
        status,
    })
}

pub struct AnalyzeOptions {
    pub radical: bool,
    pub idempotents: bool,
    pub units_probe: bool,
    pub cap: usize,
    pub seed: u64,
}

pub fn analyze(input: &Input, opts: &AnalyzeOptions) -> Result<Outcome, Failure> {
    let a = Arc::new(AlgebraFile::parse(&input.text)?.build()?);
    let all = !(opts.radical || opts.idempotents || opts.units_probe);
    let mut result = Map::new();
    let mut summary = vec![format!("algebra of dimension {} over {}", a.dim(), a.field().tag())];
    result.insert("dimension".into(), json!(a.dim()));
    result.insert("field".into(), json!(a.field().tag()));
    if all || opts.radical {
        let r = radical_report(&a)?;
        let basis = span(&a, &r.radical);
        summary.push(format!(
            "radical J = {} (dimension {}), J^{} = 0, A/J of dimension {} is semisimple",
            show_span(&basis),
            basis.len(),
            r.nilpotency_index,
            r.quotient_dim
        ));
        result.insert(
            "radical".into(),
            json!({
                "basis": basis,
                "dimension": r.radical.dimension(),
                "nilpotency_index": r.nilpotency_index,
                "quotient_dimension": r.quotient_dim,
                "quotient_semisimple": r.quotient_semisimple,
            }),
        );
    }
    if all || opts.idempotents {
        let rep = central_idempotents_with(&a, opts.cap, opts.seed)?;
        let r = rep.primitive.len();
        let certified = rep.all.len() == 1usize << r;
        if !certified {
            return Err(Failure::internal(format!("{} central idempotents from {r} primitive ones", rep.all.len())));
        }
        let all_ci = vectors(&a, &rep.all);
        summary.push(format!("{} central idempotents ({} primitive): {{{}}}", all_ci.len(), r, all_ci.join(", ")));
        result.insert(
            "idempotents".into(),
            json!({
                "primitive": vectors(&a, &rep.primitive),
                "all": all_ci,
                "count": rep.all.len(),
                "certificate": format!("2^{r}"),
            }),
        );
    }
    if all || opts.units_probe {
        let ext = poly_extension(&a, &["t"])?;
        let t = ext.var(0);
        let mut probes = Vec::new();
        let mut nonconstant = Vec::new();
        for (i, label) in a.labels().iter().enumerate() {
            let u = ext.one().add(&t.mul(&ext.basis_element(i)));
            let rep = is_unit(&u);
            let entry = match &rep.inverse {
                Some(inv) => {
                    nonconstant.push(u.to_string());
                    json!({"element": u.to_string(), "unit": true, "inverse": inv.to_string(), "inverse_t_degree": inv.t_degree()})
                }
                None => json!({"element": u.to_string(), "unit": false, "determinant": rep.determinant.to_string()}),
            };
            probes.push((label.clone(), entry));
        }
        summary.push(if nonconstant.is_empty() {
            "units probe: no unit of the form 1 + t*b".to_string()
        } else {
            format!("units probe: nonconstant units {}", nonconstant.join(", "))
        });
        result.insert(
            "units_probe".into(),
            json!({"probes": probes.into_iter().collect::<Map<_, _>>(), "nonconstant_units": nonconstant}),
        );
    }
    Ok(Outcome {
        result: Value::Object(result),
        summary,
        status: OK,
    })
}

pub struct AzumayaOptions {
    pub sample_points: Vec<String>,
    pub extension_check: Option<usize>,
    pub samples: usize,
    pub seed: u64,
}

pub fn azumaya(input: &Input, opts: &AzumayaOptions) -> Result<Outcome, Failure> {
    let a = OrderFile::parse(&input.text)?.build()?;
    let na = non_azumaya_poly(&a, opts.samples, opts.seed)?;
    let d = &na.discriminant;
    let mut status = OK;
    let mut summary = vec![
        format!("order of rank {} over {}", a.rank(), a.ring().tag()),
        format!("discriminant {d}"),
        format!("non-Azumaya polynomial {}", na.poly),
    ];
    let fiber = |c: &ncalg::azudisc::FiberVerdict| {
        json!({"point": c.point.to_string(), "central_simple": c.central_simple, "root": c.on_locus})
    };
    let mut result = Map::new();
    result.insert("rank".into(), json!(a.rank()));
    result.insert("ring".into(), json!(a.ring().tag()));
    result.insert(
        "discriminant".into(),
        json!({
            "raw": d.raw.to_string(),
            "unit": d.unit.to_string(),
            "normalized": d.normalized.to_string(),
            "squarefree": d.squarefree.to_string(),
        }),
    );
    result.insert("non_azumaya_poly".into(), json!(na.poly.to_string()));
    result.insert("generic_point".into(), json!(na.generic_point.to_string()));
    result.insert("checks".into(), json!(na.checks.iter().map(fiber).collect::<Vec<_>>()));
    result.insert("checks_consistent".into(), json!(na.consistent()));
    if !na.consistent() {
        status = INTERNAL;
        summary.push("fiber checks disagree with the discriminant".into());
    }
    if let Ok(n) = pi_degree_estimate(&a, opts.seed) {
        result.insert("pi_degree".into(), json!(n));
        summary.push(format!("PI degree {n}"));
    }
    if !opts.sample_points.is_empty() {
        let pts = opts
            .sample_points
            .iter()
            .map(|p| parse_scalar(p, a.field()))
            .collect::<ncalg::Result<Vec<_>>>()?;
        let fibers = sample_fibers(&a, &na.poly, &pts)?;
        let locus: Vec<String> = fibers.iter().filter(|f| !f.central_simple).map(|f| f.point.to_string()).collect();
        let consistent = fibers.iter().all(|f| f.central_simple != f.on_locus);
        for f in &fibers {
            summary.push(format!(
                "fiber at {}: {}",
                f.point,
                if f.central_simple { "central simple" } else { "not central simple" }
            ));
        }
        summary.push(format!("non-Azumaya points among samples: {{{}}}", locus.join(", ")));
        result.insert(
            "sample_points".into(),
            json!({"fibers": fibers.iter().map(fiber).collect::<Vec<_>>(), "non_azumaya": locus, "consistent": consistent}),
        );
        if !consistent {
            status = INTERNAL;
        }
    }
    if let Some(n) = opts.extension_check {
        let holds = extension_invariance_check(&a, n)?;
        summary.push(if holds {
            format!("extension check with {n} variables: invariant holds")
        } else {
            format!("extension check with {n} variables: invariant fails")
        });
        result.insert("extension_check".into(), json!({"variables": n, "holds": holds}));
        if !holds {
            status = INTERNAL;
        }
    }
    Ok(Outcome {
        result: Value::Object(result),
        summary,
        status,
    })
}

pub fn witness(input: &Input, detect_bound: usize) -> Result<Outcome, Failure> {
    let w = WitnessFile::parse(&input.text)?.build()?;
    let iso = verify_iso(&w);
    let mut result = Map::new();
    let mut summary = Vec::new();
    result.insert("homomorphism".into(), json!(iso.forward.is_hom()));
    result.insert("inverse_supplied".into(), json!(w.inverse.is_some()));
    result.insert("isomorphism".into(), json!(iso.is_iso()));
    if !iso.forward.is_hom() {
        let pairs: Vec<Value> = iso.forward.multiplicative_failures.iter().map(|(a, b)| json!([a, b])).collect();
        result.insert("failures".into(), json!(pairs));
        result.insert("report".into(), json!(iso.to_string()));
        summary.push(format!("refuted: not a homomorphism ({})", iso.forward));
        return Ok(Outcome {
            result: Value::Object(result),
            summary,
            status: REFUTED,
        });
    }
    if w.inverse.is_some() && !iso.is_iso() {
        result.insert("report".into(), json!(iso.to_string()));
        summary.push(format!("refuted: not an isomorphism ({iso})"));
        return Ok(Outcome {
            result: Value::Object(result),
            summary,
            status: REFUTED,
        });
    }
    summary.push(if iso.is_iso() {
        "ISO: isomorphism witnessed".to_string()
    } else {
        "HOM: homomorphism witnessed, no inverse supplied".to_string()
    });
    let retraction = check_retraction(&w)?;
    let z_retraction = check_z_retraction(&w)?;
    summary.push(format!("retraction for this witness: {retraction}"));
    summary.push(format!("Z-retraction for this witness: {z_retraction}"));
    result.insert("retraction".into(), verdict_json(&retraction));
    result.insert("z_retraction".into(), verdict_json(&z_retraction));
    let target = w.forward.target();
    let labels = target.algebra().labels().to_vec();
    let gen_names: Vec<String> = w.forward.source().ring().vars().iter().map(|v| format!("phi({v})")).collect();
    let mut detect = Map::new();
    let mut inconclusive = false;
    for (var, m) in check_detectability(&w, detect_bound)? {
        let entry = match &m {
            Membership::Member { length, certificate } => {
                let expr = format_certificate(certificate, &labels, &gen_names);
                summary.push(format!("detectability of {var}: certificate {var} = {expr} (words of length <= {length})"));
                json!({"status": "certificate", "length": length, "expression": expr})
            }
            Membership::NotFoundUpTo { bound, closed: true } => {
                summary.push(format!("detectability of {var}: refuted, the generated subalgebra closes at length {bound}"));
                json!({"status": "refuted", "bound": bound})
            }
            Membership::NotFoundUpTo { bound, closed: false } => {
                inconclusive = true;
                summary.push(format!("detectability of {var}: inconclusive up to length {bound}"));
                json!({"status": "inconclusive", "bound": bound})
            }
        };
        detect.insert(var, entry);
    }
    result.insert("detectability".into(), Value::Object(detect));
    Ok(Outcome {
        result: Value::Object(result),
        summary,
        status: if inconclusive { INCONCLUSIVE } else { OK },
    })
}

pub struct DerivationOptions<'a> {
    pub exp: bool,
    pub ml_family: bool,
    pub var: String,
    pub witness_out: Option<&'a Path>,
}

pub fn derivation(input: &Input, opts: &DerivationOptions) -> Result<Outcome, Failure> {
    let (a, family) = DerivationFile::parse(&input.text)?.build()?;
    let mut members = Map::new();
    let mut summary = vec![format!("{} derivations on an algebra of dimension {}", family.len(), a.dim())];
    let mut certified = Vec::new();
    let mut excluded = Vec::new();
    let mut witnesses = Map::new();
    for (name, m) in &family {
        let (entry, lnd) = match m {
            FamilyMember::Ordinary(d) => {
                let index = d.nilpotency_index();
                summary.push(match index {
                    Some(k) => format!("{name}: Leibniz verified, locally nilpotent with index {k}"),
                    None => format!("{name}: Leibniz verified, not locally nilpotent"),
                });
                (
                    json!({"kind": "ordinary", "leibniz": true, "locally_nilpotent": index.is_some(), "index": index, "kernel": span(&a, &d.kernel())}),
                    index.is_some(),
                )
            }
            FamilyMember::Higher(h) => {
                let rep = hs_automorphism(h, &opts.var)?;
                let lnd = rep.is_locally_nilpotent();
                summary.push(format!(
                    "{name}: Hasse-Schmidt identity verified up to length {}, {}",
                    h.length(),
                    if lnd { "locally nilpotent" } else { "not locally nilpotent" }
                ));
                (
                    json!({"kind": "higher", "length": h.length(), "hasse_schmidt": true, "automorphism": rep.automorphism, "locally_nilpotent": lnd, "kernel": span(&a, &h.kernel())}),
                    lnd,
                )
            }
        };
        members.insert(name.clone(), entry);
        if lnd {
            certified.push(m.clone());
        } else {
            excluded.push(name.clone());
        }
        if let (true, FamilyMember::Ordinary(d), true) = (opts.exp, m, lnd) {
            let w = exp_automorphism(d, &opts.var)?;
            let iso = verify_iso(&w).is_iso();
            let file = WitnessFile::from_witness(&w);
            if let Some(dir) = opts.witness_out {
                let path = dir.join(format!("{name}.json"));
                std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, file.to_json() + "\n")).map_err(|e| {
                    Failure::input(format!("cannot write {}: {e}", path.display()))
                })?;
                summary.push(format!("exp({name}) written to {}", path.display()));
            }
            summary.push(format!("exp({name}): {}", if iso { "ISO verified" } else { "verification failed" }));
            if !iso {
                return Err(Failure::internal(format!("exp({name}) failed verification")));
            }
            witnesses.insert(name.clone(), serde_json::to_value(&file).expect("serializable"));
        }
    }
    let mut result = Map::new();
    result.insert("dimension".into(), json!(a.dim()));
    result.insert("derivations".into(), Value::Object(members));
    if opts.exp {
        result.insert("exp".into(), Value::Object(witnesses));
    }
    if opts.ml_family {
        let ml = ml_over_family(&a, &certified)?;
        let basis = span(&a, &ml.ml);
        let basis_z = span(&a, &ml.ml_z);
        summary.push(format!("ML relative to family: {}", show_span(&basis)));
        summary.push(format!("ML_Z relative to family: {}", show_span(&basis_z)));
        if !excluded.is_empty() {
            summary.push(format!("excluded (not locally nilpotent): {}", excluded.join(", ")));
        }
        result.insert(
            "ml_relative_to_family".into(),
            json!({"ml": basis, "ml_z": basis_z, "excluded": excluded}),
        );
    }
    Ok(Outcome {
        result: Value::Object(result),
        summary,
        status: OK,
    })
}

pub fn growth(input: &Input, degree: usize, probe_depth: usize) -> Result<Outcome, Failure> {
    let q = Quiver::parse(&input.text)?;
    let g = q.growth_class(probe_depth);
    let counts: Vec<String> = (0..=degree).map(|d| q.path_count(d).to_string()).collect();
    let class = match &g {
        Growth::FiniteDimensional => json!({"class": "finite_dimensional"}),
        Growth::Polynomial { degree, empirical } => json!({"class": "polynomial", "degree": degree, "empirical": empirical}),
        Growth::Exponential => json!({"class": "exponential"}),
    };
    let summary = vec![format!("growth: {g}"), format!("path counts 0..={degree}: {}", counts.join(", "))];
    Ok(Outcome {
        result: json!({"growth": class, "path_counts": counts, "acyclic": q.is_acyclic()}),
        summary,
        status: OK,
    })
}
