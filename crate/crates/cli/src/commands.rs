use opmod::json::{
    field_to_json, matrix_to_json, poly_from_json, poly_matrix_from_json, poly_matrix_to_json, poly_to_json,
    scalar_from_json, scalar_to_json,
};
use opmod::{
    parse_expression, smith_normal_form, FieldTag, FormalSequence, Matrix, ModuleDecomposition, OperatorModule, Poly,
    PolyMatrix, PresentedModule, RelationSubspace, RuleSet, TensorElement, TensorKind,
};
use serde_json::{json, Value};

use crate::payload::{self, missing};
use crate::report::{poly_list, Checks, CliError, CliResult, Report, Text};

fn polys_json(polys: &[Poly]) -> Value {
    Value::Array(polys.iter().map(poly_to_json).collect())
}

pub fn snf(tag: FieldTag, input: &Value, fault: bool) -> CliResult<Report> {
    // a bare matrix, {"matrix": …}, or a previous report's {"d": …}
    let (value, path) = if input.get("entries").is_some() {
        (input, "")
    } else if let Some(m) = input.get("matrix") {
        (m, "/matrix")
    } else if let Some(d) = input.get("d") {
        (d, "/d")
    } else {
        return Err(missing("/matrix"));
    };
    let p = poly_matrix_from_json(value, tag, path)?;
    let snf = smith_normal_form(&p)?;
    let mut checks = Checks::new(fault);
    checks.check("upv_equals_d", snf.verify(&p)?);
    let checks = checks.finish()?;

    let json = json!({
        "command": "snf",
        "u": poly_matrix_to_json(&snf.u),
        "d": poly_matrix_to_json(&snf.d),
        "v": poly_matrix_to_json(&snf.v),
        "diagonal": polys_json(&snf.nonzero_diagonal()),
        "invariant_factors": polys_json(&snf.invariant_factors()),
        "self_check": true,
        "checks": checks,
    });
    let human = Text::default()
        .field("field", tag)
        .poly_matrix("P", &p)
        .poly_matrix("U", &snf.u)
        .poly_matrix("D", &snf.d)
        .poly_matrix("V", &snf.v)
        .field("nonzero diagonal", poly_list(&snf.nonzero_diagonal()))
        .field("invariant factors", poly_list(&snf.invariant_factors()))
        .checks(&checks)
        .finish();
    Ok(Report { json, human })
}

/// `R^s ⊕ R/(a_1) ⊕ …` over `R = K[x]`.
fn structure_string(dec: &ModuleDecomposition) -> String {
    let mut parts = Vec::new();
    match dec.free_rank {
        0 => {}
        1 => parts.push("R".to_string()),
        s => parts.push(format!("R^{s}")),
    }
    parts.extend(dec.invariant_factors.iter().map(|a| format!("R/({a})")));
    if parts.is_empty() {
        "M ≅ 0".to_string()
    } else {
        format!("M ≅ {}", parts.join(" ⊕ "))
    }
}

/// Rebuilds a presentation from a decomposition report: the relation
/// matrix is `diag(a_1, …, a_r)` inside `R^{s+r}`.
fn presentation_from_report(tag: FieldTag, input: &Value) -> CliResult<PolyMatrix> {
    let free = payload::dim(input, "free_rank").or_else(|_| {
        input
            .get("free_rank")
            .and_then(Value::as_u64)
            .map(|v| Some(v as usize))
            .ok_or_else(|| CliError::Input("invalid JSON at /free_rank: expected an integer".to_string()))
    })?;
    let free = free.unwrap_or(0);
    let factors = input
        .get("invariant_factors")
        .and_then(Value::as_array)
        .ok_or_else(|| missing("/invariant_factors"))?
        .iter()
        .enumerate()
        .map(|(k, v)| poly_from_json(v, tag, &format!("/invariant_factors/{k}")))
        .collect::<opmod::Result<Vec<_>>>()?;
    let r = factors.len();
    let mut p = PolyMatrix::from_rows_with_cols(tag, vec![vec![Poly::zero(tag); r]; free + r], free + r, r)?;
    for (k, a) in factors.into_iter().enumerate() {
        p.set(free + k, k, a);
    }
    Ok(p)
}

pub fn decompose(tag: FieldTag, input: &Value, primary: bool, fault: bool) -> CliResult<Report> {
    let mut checks = Checks::new(fault);
    let (dec, source, operator) = if input.get("operator").is_some() {
        let a = payload::matrix(input, "operator", tag)?;
        let module = OperatorModule::new(a.clone())?;
        let dec = module.decompose()?;
        let charpoly = module.characteristic_polynomial()?;
        checks.check("product_equals_charpoly", Poly::product(tag, &dec.invariant_factors) == charpoly);
        let last = dec.invariant_factors.last().cloned().unwrap_or_else(|| Poly::one(tag));
        checks.check("last_factor_annihilates", last.eval_operator(&a)?.is_zero());
        (dec, "operator", Some(a))
    } else {
        let p = if let Some(v) = input.get("presentation") {
            poly_matrix_from_json(v, tag, "/presentation")?
        } else if input.get("invariant_factors").is_some() {
            presentation_from_report(tag, input)?
        } else {
            return Err(missing("/operator"));
        };
        let dec = PresentedModule::new(p)?.decompose()?;
        (dec, "presentation", None)
    };
    checks.check("canonical_chain", dec.is_canonical());
    let flags = dec.torsion_info();
    checks.check("free_iff_torsion_free", flags.is_free == flags.is_torsion_free);

    let mut primary_json = Value::Null;
    let mut warning = None;
    let mut primary_lines = Vec::new();
    if primary {
        match dec.primary_decomposition() {
            Ok(pd) => {
                checks.check("crt_recombination", pd.recombine(tag) == dec.invariant_factors);
                primary_json = Value::Array(
                    pd.components
                        .iter()
                        .map(|c| json!({"prime": poly_to_json(&c.prime), "exponents": c.exponents}))
                        .collect(),
                );
                for c in &pd.components {
                    let exps: Vec<String> = c.exponents.iter().map(u32::to_string).collect();
                    primary_lines.push(format!("  prime ({}): exponents [{}]", c.prime, exps.join(", ")));
                }
                let divisors = pd.elementary_divisors();
                primary_lines.push(format!("  elementary divisors: {}", poly_list(&divisors)));
            }
            Err(e @ opmod::AlgebraError::FactorizationIncomplete { .. }) => {
                warning = Some(e.to_string());
            }
            Err(e) => return Err(e.into()),
        }
    }
    let checks = checks.finish()?;

    let mut json = json!({
        "command": "decompose",
        "source": source,
        "free_rank": dec.free_rank,
        "invariant_factors": polys_json(&dec.invariant_factors),
        "minimal_generators": dec.minimal_generator_count(),
        "flags": {
            "is_torsion": flags.is_torsion,
            "is_torsion_free": flags.is_torsion_free,
            "is_free": flags.is_free,
        },
        "structure": structure_string(&dec),
        "checks": checks,
    });
    if primary {
        json["primary"] = primary_json;
        json["warning"] = warning.clone().map_or(Value::Null, Value::String);
    }
    if let Some(a) = &operator {
        json["operator"] = matrix_to_json(a);
    }

    let mut text = Text::default();
    text.field("field", tag);
    if let Some(a) = &operator {
        text.matrix("operator A", a);
    }
    text.field("ring", format!("R = {tag}[x]"))
        .line(structure_string(&dec))
        .field("free rank", dec.free_rank)
        .field("invariant factors", poly_list(&dec.invariant_factors))
        .field("minimal number of generators", dec.minimal_generator_count())
        .field("torsion", flags.is_torsion)
        .field("torsion free", flags.is_torsion_free)
        .field("free", flags.is_free);
    if primary {
        match &warning {
            Some(w) => {
                text.line(format!("warning: primary decomposition unavailable: {w}"));
            }
            None => {
                text.line("primary decomposition:");
                for l in &primary_lines {
                    text.line(l);
                }
            }
        }
    }
    text.checks(&checks);
    Ok(Report { json, human: text.finish() })
}

fn kind_echo(kind: &TensorKind, n: usize, m: usize) -> Value {
    let mut v = json!({"n": n, "m": m});
    match kind {
        TensorKind::Standard => {}
        TensorKind::OperatorPair { a, b } => {
            v["a"] = matrix_to_json(a);
            v["b"] = matrix_to_json(b);
        }
        TensorKind::Subring { a, b, generator } => {
            v["a"] = matrix_to_json(a);
            v["b"] = matrix_to_json(b);
            v["generator"] = poly_to_json(generator);
        }
        TensorKind::Branching { a, b, phi, psi } => {
            v["a"] = matrix_to_json(a);
            v["b"] = matrix_to_json(b);
            v["phi"] = poly_to_json(phi);
            v["psi"] = poly_to_json(psi);
        }
        TensorKind::ScaledBranching { scale } => {
            v["scale"] = scalar_to_json(scale);
        }
    }
    v
}

/// Decomposition of the module given by an operator on a possibly zero space.
fn decompose_operator(a: &Matrix) -> CliResult<ModuleDecomposition> {
    if a.rows() == 0 {
        return Ok(ModuleDecomposition { free_rank: 0, invariant_factors: Vec::new() });
    }
    Ok(OperatorModule::new(a.clone())?.decompose()?)
}

pub fn tensor(
    tag: FieldTag,
    kind_name: &str,
    input: Option<&Value>,
    scale: Option<&str>,
    decompose: bool,
    fault: bool,
) -> CliResult<Report> {
    let (kind, n, m) = payload::tensor_kind(kind_name, input, scale, tag)?;
    let w = RelationSubspace::new(kind.clone(), tag, n, m)?;
    let mut checks = Checks::new(fault);
    checks.check("rank_plus_dim", w.rank() + w.quotient_dim() == n * m);
    let standard = RelationSubspace::new(TensorKind::Standard, tag, n, m)?;
    checks.check("standard_relations_contained", standard.is_subspace_of(&w)?);
    let induced = match kind {
        TensorKind::OperatorPair { .. } => {
            let left = w.induced_operator()?;
            checks.check("induced_left_equals_right", left == w.induced_operator_right()?);
            Some(left)
        }
        _ => None,
    };
    let decomposition = match (&induced, decompose) {
        (Some(op), true) => Some(decompose_operator(op)?),
        (None, true) => {
            return Err(CliError::Input("--decompose needs --kind opair".to_string()));
        }
        _ => None,
    };
    let checks = checks.finish()?;

    let mut json = json!({
        "command": "tensor",
        "kind": kind.name(),
        "n": n,
        "m": m,
        "relation_rank": w.rank(),
        "quotient_dim": w.quotient_dim(),
        "canonical_basis": w.canonical_basis(),
        "checks": checks,
    });
    if let Value::Object(extra) = kind_echo(&kind, n, m) {
        for (k, v) in extra {
            json[k] = v;
        }
    }
    json["field"] = field_to_json(tag)["field"].clone();
    if let FieldTag::Prime(p) = tag {
        json["p"] = p.into();
    }
    if let Some(op) = &induced {
        json["induced_operator"] = matrix_to_json(op);
    }
    if let Some(c) = kind.caveat() {
        json["caveat"] = c.into();
    }
    if let Some(dec) = &decomposition {
        json["decomposition"] = json!({
            "free_rank": dec.free_rank,
            "invariant_factors": polys_json(&dec.invariant_factors),
        });
    }

    let mut text = Text::default();
    text.field("field", tag)
        .field("kind", kind.name())
        .field("factor dimensions", format!("n = {n}, m = {m}"));
    if let TensorKind::ScaledBranching { scale } = &kind {
        text.field("relation", format!("(c x, y) ~ (x, {scale}*c y)"));
    }
    text.field("relation rank", w.rank())
        .field("quotient dimension", w.quotient_dim())
        .field("canonical basis (flat indices i*m + j)", format!("{:?}", w.canonical_basis()));
    if let Some(op) = &induced {
        text.matrix("induced operator", op);
    }
    if let Some(dec) = &decomposition {
        text.field("induced module", structure_string(dec))
            .field("induced invariant factors", poly_list(&dec.invariant_factors));
    }
    if let Some(c) = kind.caveat() {
        text.field("caveat", c);
    }
    text.checks(&checks);
    Ok(Report { json, human: text.finish() })
}

fn parse_side(text: &str, tag: FieldTag, flag: &str) -> CliResult<FormalSequence> {
    parse_expression(text, tag).map_err(|e| CliError::Input(format!("{flag}: {e}")))
}

pub struct EquivArgs<'a> {
    pub rules: &'a str,
    pub lhs: &'a str,
    pub rhs: &'a str,
    pub scale: Option<&'a str>,
}

pub fn equiv(tag: FieldTag, args: EquivArgs<'_>, input: Option<&Value>, fault: bool) -> CliResult<Report> {
    let lhs = parse_side(args.lhs, tag, "--lhs")?;
    let rhs = parse_side(args.rhs, tag, "--rhs")?;
    let (n, m) = lhs.dims();
    if rhs.dims() != (n, m) {
        let (n2, m2) = rhs.dims();
        return Err(CliError::Input(format!(
            "dimension mismatch: lhs pairs are in K^{n} x K^{m}, rhs pairs in K^{n2} x K^{m2}"
        )));
    }
    let (kind, kn, km) = if args.rules == "standard" {
        (TensorKind::Standard, n, m)
    } else {
        payload::tensor_kind(args.rules, input, args.scale, tag)?
    };
    let kind = match kind {
        TensorKind::ScaledBranching { scale } => {
            // the scaled relation is defined for any factor dimensions
            return equiv_with(tag, TensorKind::ScaledBranching { scale }, &lhs, &rhs, fault);
        }
        k => k,
    };
    if (kn, km) != (n, m) {
        return Err(CliError::Input(format!(
            "dimension mismatch: operators act on K^{kn} and K^{km}, expressions live in K^{n} x K^{m}"
        )));
    }
    equiv_with(tag, kind, &lhs, &rhs, fault)
}

fn equiv_with(tag: FieldTag, kind: TensorKind, lhs: &FormalSequence, rhs: &FormalSequence, fault: bool) -> CliResult<Report> {
    let (n, m) = lhs.dims();
    let rules = RuleSet::new(kind, 1);
    let decided = opmod::decide_equiv(lhs, rhs, &rules)?;
    let standard = opmod::decide_equiv(lhs, rhs, &RuleSet::new(TensorKind::Standard, 0))?;
    let w = rules.relation_subspace(tag, n, m)?;
    let lhs_class = w.project(&lhs.linearize())?;
    let rhs_class = w.project(&rhs.linearize())?;
    let mut checks = Checks::new(fault);
    checks.check("decision_matches_classes", decided == (lhs_class == rhs_class));
    checks.check("standard_implies_rules", !standard || decided);
    let checks = checks.finish()?;
    let asymmetry = decided && !standard;
    let note = if asymmetry {
        Some(format!(
            "equivalent under {} rules but not under standard rules: the operator relations identify tensors the standard product keeps apart",
            rules.kind.name()
        ))
    } else {
        None
    };
    let coords = |t: &TensorElement| Value::Array(t.coords().iter().map(scalar_to_json).collect());
    let difference = lhs.linearize().sub(&rhs.linearize())?;
    let json = json!({
        "command": "equiv",
        "rules": rules.kind.name(),
        "lhs": lhs.to_string(),
        "rhs": rhs.to_string(),
        "equivalent": decided,
        "standard_equivalent": standard,
        "operator_only": asymmetry,
        "difference": coords(&difference),
        "lhs_class": Value::Array(lhs_class.canonical.iter().map(scalar_to_json).collect()),
        "rhs_class": Value::Array(rhs_class.canonical.iter().map(scalar_to_json).collect()),
        "checks": checks,
    });
    let mut text = Text::default();
    text.field("field", tag)
        .field("rules", rules.kind.name())
        .field("lhs", lhs)
        .field("rhs", rhs)
        .field("linearized difference", format!("{:?}", difference.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>()))
        .field("equivalent", decided)
        .field("equivalent under standard rules", standard);
    if let Some(note) = &note {
        text.line(note);
    }
    text.checks(&checks);
    Ok(Report { json, human: text.finish() })
}

fn classify(rank: usize) -> &'static str {
    match rank {
        0 => "zero",
        1 => "product",
        _ => "entangled",
    }
}

pub fn schmidt(tag: FieldTag, expr: Option<&str>, input: Option<&Value>, fault: bool) -> CliResult<Report> {
    let t = match (expr, input) {
        (Some(e), _) => parse_side(e, tag, "--expr")?.linearize(),
        (None, Some(v)) => {
            let n = payload::dim(v, "n")?.ok_or_else(|| missing("/n"))?;
            let m = payload::dim(v, "m")?.ok_or_else(|| missing("/m"))?;
            let coords = v
                .get("coords")
                .and_then(Value::as_array)
                .ok_or_else(|| missing("/coords"))?
                .iter()
                .enumerate()
                .map(|(k, c)| scalar_from_json(c, tag, &format!("/coords/{k}")))
                .collect::<opmod::Result<Vec<_>>>()?;
            TensorElement::from_coords(tag, n, m, coords)?
        }
        (None, None) => return Err(CliError::Input("schmidt needs --expr or an input payload".to_string())),
    };
    let (n, m) = t.dims();
    let rank = t.schmidt_rank();
    let mut checks = Checks::new(fault);
    checks.check("rank_bounded", rank <= n.min(m));
    checks.check("rank_transpose_invariant", t.as_matrix().transpose().rank() == rank);
    let checks = checks.finish()?;
    let json = json!({
        "command": "schmidt",
        "n": n,
        "m": m,
        "coords": Value::Array(t.coords().iter().map(scalar_to_json).collect()),
        "schmidt_rank": rank,
        "class": classify(rank),
        "checks": checks,
    });
    let human = Text::default()
        .field("field", tag)
        .matrix("coefficient matrix", &t.as_matrix())
        .field("schmidt rank", rank)
        .field("class", classify(rank))
        .checks(&checks)
        .finish();
    Ok(Report { json, human })
}
