use opmod::json::{matrix_to_json, poly_to_json, scalar_to_json};
use opmod::{
    diagonal_example_report, DiagonalExampleReport, FieldTag, Matrix, OperatorModule, Poly, RelationSubspace, Scalar,
    TensorElement, TensorKind,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::{poly_list, Checks, CliError, CliResult, Report, Text};

pub struct DemoArgs {
    pub random: bool,
    pub seed: u64,
}

fn random_scalar(rng: &mut ChaCha8Rng, tag: FieldTag) -> Scalar {
    match tag {
        FieldTag::Rational => Scalar::from_i64(tag, rng.gen_range(-5..=5)),
        FieldTag::GaussianRational => {
            let re = Scalar::from_i64(tag, rng.gen_range(-3..=3));
            let im = Scalar::from_i64(tag, rng.gen_range(-3..=3));
            &re + &(&Scalar::i() * &im)
        }
        FieldTag::Prime(p) => Scalar::from_i64(tag, rng.gen_range(0..p as i64)),
    }
}

fn random_poly(rng: &mut ChaCha8Rng, tag: FieldTag, max_degree: usize) -> Poly {
    let d = rng.gen_range(0..=max_degree);
    let coeffs = (0..=d).map(|_| random_scalar(rng, tag)).collect();
    Poly::from_coeffs(tag, coeffs).expect("uniform tag")
}

fn strings(v: &[Scalar]) -> String {
    let items: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("({})", items.join(", "))
}

fn scalars_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

/// The two sides agree in the quotient exactly when their difference has no
/// component on a basis tensor `e_i ⊗ f_j` with matching eigenvalues.
fn matched_positions_vanish(r: &DiagonalExampleReport) -> bool {
    let diff = r.lhs.sub(&r.rhs).expect("same dims");
    (0..2).all(|i| {
        (0..2).all(|j| r.a.get(i, i) != r.b.get(j, j) || diff.coords()[i * 2 + j].is_zero())
    })
}

fn example_json(r: &DiagonalExampleReport) -> Value {
    json!({
        "a": matrix_to_json(&r.a),
        "b": matrix_to_json(&r.b),
        "pi": poly_to_json(&r.pi),
        "x": scalars_json(&r.x),
        "y": scalars_json(&r.y),
        "lhs": scalars_json(r.lhs.coords()),
        "rhs": scalars_json(r.rhs.coords()),
        "relation_rank": r.relation_rank,
        "quotient_dim": r.quotient_dim,
        "difference_in_relations": r.difference_in_relations,
        "classes_equal": r.classes_equal(),
        "standard_equal": r.standard_equal,
    })
}

fn example_text(text: &mut Text, r: &DiagonalExampleReport) {
    text.field("A", format!("diag{}", strings(&[r.a.get(0, 0).clone(), r.a.get(1, 1).clone()])))
        .field("B", format!("diag{}", strings(&[r.b.get(0, 0).clone(), r.b.get(1, 1).clone()])))
        .field("pi", &r.pi)
        .field("x", strings(&r.x))
        .field("y", strings(&r.y))
        .field("(pi(A) x) ⊗ y", strings(r.lhs.coords()))
        .field("x ⊗ (pi(B) y)", strings(r.rhs.coords()))
        .field("relation rank", r.relation_rank)
        .field("quotient dimension", r.quotient_dim)
        .field("difference lies in W", r.difference_in_relations)
        .field("classes equal in the operator quotient", r.classes_equal())
        .field("equal in the standard product", r.standard_equal);
}

pub fn example61(tag: FieldTag, args: &DemoArgs, fault: bool) -> CliResult<Report> {
    let s = |v: i64| Scalar::from_i64(tag, v);
    let mut checks = Checks::new(fault);
    // one matched eigenvalue pair (a = c) so the quotient is nonzero
    let golden = diagonal_example_report(
        &s(2),
        &s(3),
        &s(2),
        &s(5),
        &Poly::from_i64s(tag, &[1, 0, 1]),
        &s(1),
        &s(2),
        &s(3),
        &s(-1),
    )?;
    checks.check("golden_difference_in_w", golden.difference_in_relations);
    checks.check("golden_classes_equal", golden.classes_equal());
    checks.check("golden_matched_positions_vanish", matched_positions_vanish(&golden));
    // with pi = x and distinct eigenvalues the standard product keeps the sides apart
    let generic = diagonal_example_report(
        &s(2),
        &s(3),
        &s(5),
        &s(7),
        &Poly::xi(tag),
        &s(1),
        &s(1),
        &s(1),
        &s(1),
    )?;
    let generic_ok = !generic.standard_equal && generic.all_checks_pass();
    checks.check("generic_standard_not_equal", generic_ok);

    let mut randoms = Vec::new();
    if args.random {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for _ in 0..5 {
            let [a, b, c, d, u, v, w, z] = std::array::from_fn(|_| random_scalar(&mut rng, tag));
            let pi = random_poly(&mut rng, tag, 3);
            let r = diagonal_example_report(&a, &b, &c, &d, &pi, &u, &v, &w, &z)?;
            checks.check(&format!("random_{}_all", randoms.len()), r.all_checks_pass() && matched_positions_vanish(&r));
            randoms.push(r);
        }
    }
    let checks = checks.finish()?;

    let json = json!({
        "command": "demo",
        "demo": "example61",
        "golden": example_json(&golden),
        "generic": example_json(&generic),
        "random": Value::Array(randoms.iter().map(example_json).collect()),
        "seed": if args.random { json!(args.seed) } else { Value::Null },
        "checks": checks,
    });
    let mut text = Text::default();
    text.line("diagonal operator pair on K^2 ⊗ K^2").field("field", tag).line("").line("golden instance:");
    example_text(&mut text, &golden);
    text.line("").line("generic instance with pi = x:");
    example_text(&mut text, &generic);
    if args.random {
        text.line("").line(format!("random instances (seed {}):", args.seed));
        for (k, r) in randoms.iter().enumerate() {
            text.line(format!(
                "  #{k}: pi = {}, quotient dim {}, difference in W {}, classes equal {}, standard equal {}",
                r.pi,
                r.quotient_dim,
                r.difference_in_relations,
                r.classes_equal(),
                r.standard_equal
            ));
        }
    }
    text.line("").checks(&checks);
    Ok(Report { json, human: text.finish() })
}

pub fn branching(tag: FieldTag, args: &DemoArgs, fault: bool) -> CliResult<Report> {
    let mut scales: Vec<Scalar> = vec![
        Scalar::from_i64(tag, 1),
        Scalar::from_i64(tag, 0),
        Scalar::from_i64(tag, 2),
        Scalar::from_i64(tag, -1),
    ];
    if tag.characteristic() != 2 {
        scales.push(Scalar::from_fraction(tag, 1, 2)?);
    }
    if args.random {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        scales.extend((0..3).map(|_| random_scalar(&mut rng, tag)));
    }
    let mut checks = Checks::new(fault);
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for a in &scales {
        let kind = TensorKind::ScaledBranching { scale: a.clone() };
        let w = RelationSubspace::new(kind.clone(), tag, 1, 1)?;
        let expected = usize::from(a.is_one());
        checks.check(&format!("dim_for_a_{}", rows.len()), w.quotient_dim() == expected);
        let caveat = kind.caveat();
        checks.check(
            &format!("caveat_for_a_{}", rows.len()),
            caveat.is_some() == (!a.is_zero() && !a.is_one()),
        );
        lines.push(format!(
            "a = {a}: relation rank {}, quotient dimension {}{}",
            w.rank(),
            w.quotient_dim(),
            if caveat.is_some() { " (g is not a ring homomorphism)" } else { "" }
        ));
        rows.push(json!({
            "a": scalar_to_json(a),
            "relation_rank": w.rank(),
            "quotient_dim": w.quotient_dim(),
            "caveat": caveat,
        }));
    }
    let checks = checks.finish()?;
    let json = json!({
        "command": "demo",
        "demo": "branching",
        "relation": "(c x, y) ~ (x, a c y)",
        "n": 1,
        "m": 1,
        "cases": rows,
        "seed": if args.random { json!(args.seed) } else { Value::Null },
        "checks": checks,
    });
    let mut text = Text::default();
    text.line("literal branching relation (c x, y) ~ (x, a c y) on K ⊗ K")
        .field("field", tag);
    for l in &lines {
        text.line(l);
    }
    text.line("for a outside {0, 1} the map g(c) = a*c is not multiplicative; the relation is used as stated")
        .checks(&checks);
    Ok(Report { json, human: text.finish() })
}

pub fn register(tag: FieldTag, args: &DemoArgs, fault: bool) -> CliResult<Report> {
    let one = Scalar::one(tag);
    let zero = Scalar::zero(tag);
    let minus = -&one;
    // Pauli-Z-like operators on both qubits
    let z = Matrix::diagonal(tag, &[one.clone(), minus.clone()])?;
    let mut states: Vec<(String, TensorElement, Option<usize>)> = vec![
        ("|00>".into(), TensorElement::simple(&[one.clone(), zero.clone()], &[one.clone(), zero.clone()])?, Some(1)),
        ("(|0>+|1>)|0>".into(), TensorElement::simple(&[one.clone(), one.clone()], &[one.clone(), zero.clone()])?, Some(1)),
        (
            "|00>+|11>".into(),
            TensorElement::from_coords(tag, 2, 2, vec![one.clone(), zero.clone(), zero.clone(), one.clone()])?,
            Some(2),
        ),
        (
            "|01>-|10>".into(),
            TensorElement::from_coords(tag, 2, 2, vec![zero.clone(), one.clone(), minus.clone(), zero.clone()])?,
            Some(2),
        ),
        ("0".into(), TensorElement::zero(tag, 2, 2), Some(0)),
    ];
    if args.random {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        for k in 0..3 {
            let x: Vec<Scalar> = (0..2).map(|_| random_scalar(&mut rng, tag)).collect();
            let y: Vec<Scalar> = (0..2).map(|_| random_scalar(&mut rng, tag)).collect();
            let t = TensorElement::simple(&x, &y)?;
            let bound = usize::from(!t.is_zero());
            states.push((format!("random product #{k}"), t, Some(bound)));
            let coords = (0..4).map(|_| random_scalar(&mut rng, tag)).collect();
            states.push((format!("random state #{k}"), TensorElement::from_coords(tag, 2, 2, coords)?, None));
        }
    }
    let w = RelationSubspace::new(TensorKind::OperatorPair { a: z.clone(), b: z.clone() }, tag, 2, 2)?;
    let induced = w.induced_operator()?;
    let mut checks = Checks::new(fault);
    checks.check("induced_left_equals_right", induced == w.induced_operator_right()?);
    let dec = if induced.rows() == 0 {
        None
    } else {
        Some(OperatorModule::new(induced.clone())?.decompose()?)
    };
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for (k, (name, t, expected)) in states.iter().enumerate() {
        let rank = t.schmidt_rank();
        if let Some(e) = expected {
            checks.check(&format!("state_{k}_rank"), rank == *e);
        }
        let class = w.project(t)?;
        let moved = w.project(&t.apply_local(&z, &Matrix::identity(tag, 2))?)?;
        checks.check(
            &format!("state_{k}_induced_commutes"),
            moved.canonical == induced.apply(&class.canonical)?,
        );
        let kind = match rank {
            0 => "zero",
            1 => "product",
            _ => "entangled",
        };
        lines.push(format!(
            "{name}: coords {}, schmidt rank {rank} ({kind}), class {}",
            strings(t.coords()),
            strings(&class.canonical)
        ));
        rows.push(json!({
            "name": name,
            "coords": scalars_json(t.coords()),
            "schmidt_rank": rank,
            "class": kind,
            "quotient_class": scalars_json(&class.canonical),
        }));
    }
    let checks = checks.finish()?;
    let factors = dec.as_ref().map(|d| d.invariant_factors.clone()).unwrap_or_default();
    let json = json!({
        "command": "demo",
        "demo": "register",
        "a": matrix_to_json(&z),
        "b": matrix_to_json(&z),
        "relation_rank": w.rank(),
        "quotient_dim": w.quotient_dim(),
        "canonical_basis": w.canonical_basis(),
        "induced_operator": matrix_to_json(&induced),
        "induced_invariant_factors": Value::Array(factors.iter().map(poly_to_json).collect()),
        "states": rows,
        "seed": if args.random { json!(args.seed) } else { Value::Null },
        "checks": checks,
    });
    let mut text = Text::default();
    text.line("two-qubit register K^2 ⊗ K^2 = K^4")
        .field("field", tag)
        .field("A = B", "diag(1, -1)");
    for l in &lines {
        text.line(l);
    }
    text.field("relation rank of the operator quotient", w.rank())
        .field("quotient dimension", w.quotient_dim())
        .field("canonical basis", format!("{:?}", w.canonical_basis()))
        .matrix("induced operator", &induced)
        .field("induced invariant factors", poly_list(&factors))
        .checks(&checks);
    Ok(Report { json, human: text.finish() })
}

pub fn run(name: &str, tag: Option<FieldTag>, args: &DemoArgs, fault: bool) -> CliResult<Report> {
    match name {
        "example61" => example61(tag.unwrap_or(FieldTag::Rational), args, fault),
        "branching" => branching(tag.unwrap_or(FieldTag::Rational), args, fault),
        "register" => register(tag.unwrap_or(FieldTag::GaussianRational), args, fault),
        other => Err(CliError::Input(format!(
            "unknown demo {other:?}; expected example61, branching or register"
        ))),
    }
}
