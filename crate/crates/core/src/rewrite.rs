//! Formal sequences of pairs, their rewriting rules, and equivalence.
//!
//! A [`FormalSequence`] is a nonempty list of pairs `(x, y) ∈ E × F`, kept
//! verbatim (concatenation is not commutative). The rules are:
//!
//! * permute the pairs;
//! * split `(x + x', y)` into `(x, y)(x', y)`, and the same in `y`;
//! * move a scalar across a pair: `(M x, y) ↔ (x, N y)` where `(M, N)` is
//!   the action of a ring element on both sides, as fixed by the
//!   [`TensorKind`].
//!
//! Every rule is applicable in both directions. Equivalence is decided by
//! linearizing both sides into `E ⊗ F` and testing whether the difference
//! lies in the relation subspace; [`closure_oracle`] enumerates the rules
//! literally over a prime field and serves as an independent check.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::{FieldTag, Scalar};
use crate::tensor::{RelationSubspace, TensorElement, TensorKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalPair {
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSequence {
    pairs: Vec<FormalPair>,
}

impl FormalSequence {
    pub fn new(pairs: Vec<FormalPair>) -> Result<Self> {
        let first = pairs.first().ok_or(AlgebraError::EmptySequence)?;
        let (n, m) = (first.x.len(), first.y.len());
        if n == 0 || m == 0 {
            return Err(AlgebraError::DimensionMismatch { expected: 1, found: 0 });
        }
        let tag = first.x[0].tag();
        for p in &pairs {
            if p.x.len() != n {
                return Err(AlgebraError::DimensionMismatch { expected: n, found: p.x.len() });
            }
            if p.y.len() != m {
                return Err(AlgebraError::DimensionMismatch { expected: m, found: p.y.len() });
            }
            for s in p.x.iter().chain(&p.y) {
                tag.ensure_same(s.tag())?;
            }
        }
        Ok(FormalSequence { pairs })
    }

    pub fn single(x: Vec<Scalar>, y: Vec<Scalar>) -> Result<Self> {
        Self::new(vec![FormalPair { x, y }])
    }

    pub fn pairs(&self) -> &[FormalPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn tag(&self) -> FieldTag {
        self.pairs[0].x[0].tag()
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.pairs[0].x.len(), self.pairs[0].y.len())
    }

    /// `self γ other`: the pairs of `self` followed by those of `other`.
    pub fn concatenate(&self, other: &FormalSequence) -> Result<FormalSequence> {
        if self.dims() != other.dims() {
            let (n, m) = self.dims();
            let (n2, m2) = other.dims();
            return Err(AlgebraError::DimensionMismatch {
                expected: n * m,
                found: n2 * m2,
            });
        }
        self.tag().ensure_same(other.tag())?;
        let mut pairs = self.pairs.clone();
        pairs.extend(other.pairs.iter().cloned());
        Ok(FormalSequence { pairs })
    }

    /// `Σ x_i ⊗ y_i`.
    pub fn linearize(&self) -> TensorElement {
        let (n, m) = self.dims();
        self.pairs.iter().fold(TensorElement::zero(self.tag(), n, m), |acc, p| {
            acc.add(&TensorElement::simple(&p.x, &p.y).expect("validated pair"))
                .expect("validated dims")
        })
    }

    /// Applies one rewrite step, checking that it is applicable.
    pub fn apply(&self, step: &RewriteStep, rules: &RuleSet) -> Result<FormalSequence> {
        let mut pairs = self.pairs.clone();
        let len = pairs.len();
        let in_range = |k: usize| {
            if k < len {
                Ok(())
            } else {
                Err(AlgebraError::RuleNotApplicable("position out of range"))
            }
        };
        match step {
            RewriteStep::Swap { i, j } => {
                in_range(*i)?;
                in_range(*j)?;
                pairs.swap(*i, *j);
            }
            RewriteStep::SplitLeft { pos, part } => {
                in_range(*pos)?;
                let p = pairs[*pos].clone();
                check_len(part, p.x.len(), p.x[0].tag())?;
                let rest = sub_vec(&p.x, part);
                pairs[*pos] = FormalPair { x: part.clone(), y: p.y.clone() };
                pairs.insert(pos + 1, FormalPair { x: rest, y: p.y });
            }
            RewriteStep::SplitRight { pos, part } => {
                in_range(*pos)?;
                let p = pairs[*pos].clone();
                check_len(part, p.y.len(), p.y[0].tag())?;
                let rest = sub_vec(&p.y, part);
                pairs[*pos] = FormalPair { x: p.x.clone(), y: part.clone() };
                pairs.insert(pos + 1, FormalPair { x: p.x, y: rest });
            }
            RewriteStep::MergeLeft { pos } => {
                in_range(pos + 1)?;
                let (a, b) = (&pairs[*pos], &pairs[pos + 1]);
                if a.y != b.y {
                    return Err(AlgebraError::RuleNotApplicable("second components differ"));
                }
                let merged = FormalPair { x: add_vec(&a.x, &b.x), y: a.y.clone() };
                pairs[*pos] = merged;
                pairs.remove(pos + 1);
            }
            RewriteStep::MergeRight { pos } => {
                in_range(pos + 1)?;
                let (a, b) = (&pairs[*pos], &pairs[pos + 1]);
                if a.x != b.x {
                    return Err(AlgebraError::RuleNotApplicable("first components differ"));
                }
                let merged = FormalPair { x: a.x.clone(), y: add_vec(&a.y, &b.y) };
                pairs[*pos] = merged;
                pairs.remove(pos + 1);
            }
            RewriteStep::ShiftRight { pos, element, preimage } => {
                in_range(*pos)?;
                let (left, right) = rules.action_of(element, self.dims())?;
                let p = &pairs[*pos];
                if left.apply(preimage)? != p.x {
                    return Err(AlgebraError::RuleNotApplicable("preimage does not map onto x"));
                }
                pairs[*pos] = FormalPair { x: preimage.clone(), y: right.apply(&p.y)? };
            }
            RewriteStep::ShiftLeft { pos, element, preimage } => {
                in_range(*pos)?;
                let (left, right) = rules.action_of(element, self.dims())?;
                let p = &pairs[*pos];
                if right.apply(preimage)? != p.y {
                    return Err(AlgebraError::RuleNotApplicable("preimage does not map onto y"));
                }
                pairs[*pos] = FormalPair { x: left.apply(&p.x)?, y: preimage.clone() };
            }
        }
        Ok(FormalSequence { pairs })
    }
}

fn check_len(v: &[Scalar], len: usize, tag: FieldTag) -> Result<()> {
    if v.len() != len {
        return Err(AlgebraError::DimensionMismatch { expected: len, found: v.len() });
    }
    v.iter().try_for_each(|s| tag.ensure_same(s.tag()))
}

fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl fmt::Display for FormalSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Scalar]| v.iter().map(Scalar::to_string).collect::<Vec<_>>().join(",");
        for (k, p) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ";")?;
            }
            write!(f, "([{}],[{}])", join(&p.x), join(&p.y))?;
        }
        Ok(())
    }
}

/// One application of a rule, with the data that pins it down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteStep {
    Swap { i: usize, j: usize },
    /// `(x, y) → (part, y)(x − part, y)`
    SplitLeft { pos: usize, part: Vec<Scalar> },
    /// `(x, y) → (x, part)(x, y − part)`
    SplitRight { pos: usize, part: Vec<Scalar> },
    /// `(x, y)(x', y) → (x + x', y)`
    MergeLeft { pos: usize },
    /// `(x, y)(x, y') → (x, y + y')`
    MergeRight { pos: usize },
    /// `(M x', y) → (x', N y)` where `(M, N)` is the action of `element`.
    ShiftRight { pos: usize, element: Poly, preimage: Vec<Scalar> },
    /// `(x, N y') → (M x, y')`.
    ShiftLeft { pos: usize, element: Poly, preimage: Vec<Scalar> },
}

/// The rule family of one tensor kind. `degree_bound` limits the ring
/// elements the closure oracle enumerates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub kind: TensorKind,
    pub degree_bound: usize,
}

impl RuleSet {
    pub fn new(kind: TensorKind, degree_bound: usize) -> Self {
        RuleSet { kind, degree_bound }
    }

    /// How the ring element `element` acts on `E` and on `F`.
    ///
    /// Standard and scaled rules only admit scalars (constant polynomials).
    /// For the subring and branching kinds `element` is a polynomial in the
    /// subring generator, resp. in the variable mapped by `φ` and `ψ`.
    pub fn action_of(&self, element: &Poly, (n, m): (usize, usize)) -> Result<(Matrix, Matrix)> {
        let tag = element.tag();
        let constant = || -> Result<Scalar> {
            match element.degree() {
                None => Ok(Scalar::zero(tag)),
                Some(0) => Ok(element.coeff(0)),
                Some(_) => Err(AlgebraError::RuleNotApplicable("only scalars act under these rules")),
            }
        };
        Ok(match &self.kind {
            TensorKind::Standard => {
                let c = constant()?;
                (Matrix::identity(tag, n).scale(&c), Matrix::identity(tag, m).scale(&c))
            }
            TensorKind::ScaledBranching { scale } => {
                let c = constant()?;
                (Matrix::identity(tag, n).scale(&c), Matrix::identity(tag, m).scale(&(&c * scale)))
            }
            kind => {
                let (left, right) = kind
                    .operator_pair(tag, n, m)?
                    .expect("operator kinds have a pair");
                (element.eval_operator(&left)?, element.eval_operator(&right)?)
            }
        })
    }

    pub fn relation_subspace(&self, tag: FieldTag, n: usize, m: usize) -> Result<RelationSubspace> {
        RelationSubspace::new(self.kind.clone(), tag, n, m)
    }
}

/// Decides equivalence under a fixed rule set by subspace membership.
#[derive(Debug, Clone)]
pub struct EquivalenceDecider {
    relations: RelationSubspace,
}

impl EquivalenceDecider {
    pub fn new(rules: &RuleSet, tag: FieldTag, n: usize, m: usize) -> Result<Self> {
        Ok(EquivalenceDecider { relations: rules.relation_subspace(tag, n, m)? })
    }

    pub fn relations(&self) -> &RelationSubspace {
        &self.relations
    }

    pub fn decide(&self, s: &FormalSequence, t: &FormalSequence) -> Result<bool> {
        let (n, m) = self.relations.dims();
        for seq in [s, t] {
            if seq.dims() != (n, m) {
                let (a, b) = seq.dims();
                return Err(AlgebraError::DimensionMismatch { expected: n * m, found: a * b });
            }
        }
        let diff = s.linearize().sub(&t.linearize())?;
        self.relations.contains(diff.coords())
    }
}

/// `linearize(s) − linearize(t) ∈ W(rules)`.
pub fn decide_equiv(s: &FormalSequence, t: &FormalSequence, rules: &RuleSet) -> Result<bool> {
    let (n, m) = s.dims();
    if t.dims() != (n, m) {
        let (a, b) = t.dims();
        return Err(AlgebraError::DimensionMismatch { expected: n * m, found: a * b });
    }
    s.tag().ensure_same(t.tag())?;
    EquivalenceDecider::new(rules, s.tag(), n, m)?.decide(s, t)
}

/// Limits for [`closure_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Breadth-first depth: number of rule applications.
    pub max_applications: usize,
    /// Splits beyond this sequence length are not explored.
    pub max_length: usize,
    /// Reported as `BudgetExceeded` when the closure grows past this.
    pub max_states: usize,
}

/// Every sequence reachable from `s` by at most `max_applications` rule
/// applications in either direction. Ring elements range over all
/// polynomials of degree `≤ rules.degree_bound` with `F_p` coefficients.
pub fn closure_oracle(
    s: &FormalSequence,
    rules: &RuleSet,
    budget: OracleBudget,
) -> Result<BTreeSet<FormalSequence>> {
    let tag = s.tag();
    if tag.modulus().is_none() {
        return Err(AlgebraError::NotFinite(tag));
    }
    let (n, m) = s.dims();
    let moves = MoveTable::new(rules, tag, n, m)?;
    let mut seen = BTreeSet::new();
    seen.insert(s.clone());
    let mut frontier = VecDeque::from([(s.clone(), 0usize)]);
    while let Some((seq, depth)) = frontier.pop_front() {
        if depth == budget.max_applications {
            continue;
        }
        for next in moves.neighbors(&seq, budget.max_length) {
            if seen.insert(next.clone()) {
                if seen.len() > budget.max_states {
                    return Err(AlgebraError::BudgetExceeded { states: seen.len() });
                }
                frontier.push_back((next, depth + 1));
            }
        }
    }
    Ok(seen)
}

/// Precomputed neighbor generation over a finite field.
struct MoveTable {
    left_vectors: Vec<Vec<Scalar>>,
    right_vectors: Vec<Vec<Scalar>>,
    /// For each distinct action `(M, N)`: the images `M v` and `N w` of every vector.
    actions: Vec<(Vec<Vec<Scalar>>, Vec<Vec<Scalar>>)>,
}

impl MoveTable {
    fn new(rules: &RuleSet, tag: FieldTag, n: usize, m: usize) -> Result<Self> {
        let field = tag.elements().ok_or(AlgebraError::NotFinite(tag))?;
        let left_vectors = all_vectors(&field, n);
        let right_vectors = all_vectors(&field, m);
        let degree = match rules.kind {
            TensorKind::Standard | TensorKind::ScaledBranching { .. } => 0,
            _ => rules.degree_bound,
        };
        let mut pairs: Vec<(Matrix, Matrix)> = Vec::new();
        for coeffs in all_vectors(&field, degree + 1) {
            let element = Poly::from_coeffs(tag, coeffs)?;
            let pair = rules.action_of(&element, (n, m))?;
            if !pairs.contains(&pair) {
                pairs.push(pair);
            }
        }
        let actions = pairs
            .iter()
            .map(|(left, right)| {
                let l = left_vectors.iter().map(|v| left.apply(v)).collect::<Result<Vec<_>>>()?;
                let r = right_vectors.iter().map(|v| right.apply(v)).collect::<Result<Vec<_>>>()?;
                Ok((l, r))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MoveTable { left_vectors, right_vectors, actions })
    }

    fn neighbors(&self, seq: &FormalSequence, max_length: usize) -> Vec<FormalSequence> {
        let pairs = &seq.pairs;
        let len = pairs.len();
        let mut out = Vec::new();
        let with = |pairs: Vec<FormalPair>| FormalSequence { pairs };
        for i in 0..len {
            for j in i + 1..len {
                let mut p = pairs.clone();
                p.swap(i, j);
                out.push(with(p));
            }
        }
        if len < max_length {
            for pos in 0..len {
                let FormalPair { x, y } = &pairs[pos];
                for part in &self.left_vectors {
                    let mut p = pairs.clone();
                    p[pos] = FormalPair { x: part.clone(), y: y.clone() };
                    p.insert(pos + 1, FormalPair { x: sub_vec(x, part), y: y.clone() });
                    out.push(with(p));
                }
                for part in &self.right_vectors {
                    let mut p = pairs.clone();
                    p[pos] = FormalPair { x: x.clone(), y: part.clone() };
                    p.insert(pos + 1, FormalPair { x: x.clone(), y: sub_vec(y, part) });
                    out.push(with(p));
                }
            }
        }
        for pos in 0..len.saturating_sub(1) {
            let (a, b) = (&pairs[pos], &pairs[pos + 1]);
            if a.y == b.y {
                let mut p = pairs.clone();
                p[pos] = FormalPair { x: add_vec(&a.x, &b.x), y: a.y.clone() };
                p.remove(pos + 1);
                out.push(with(p));
            }
            if a.x == b.x {
                let mut p = pairs.clone();
                p[pos] = FormalPair { x: a.x.clone(), y: add_vec(&a.y, &b.y) };
                p.remove(pos + 1);
                out.push(with(p));
            }
        }
        for pos in 0..len {
            let FormalPair { x, y } = &pairs[pos];
            let xi = self.left_vectors.iter().position(|v| v == x).expect("enumerated");
            let yi = self.right_vectors.iter().position(|v| v == y).expect("enumerated");
            for (left, right) in &self.actions {
                // (M x', y) -> (x', N y)
                for (k, image) in left.iter().enumerate() {
                    if *image == *x {
                        let mut p = pairs.clone();
                        p[pos] = FormalPair { x: self.left_vectors[k].clone(), y: right[yi].clone() };
                        out.push(with(p));
                    }
                }
                // (x, N y') -> (M x, y')
                for (k, image) in right.iter().enumerate() {
                    if *image == *y {
                        let mut p = pairs.clone();
                        p[pos] = FormalPair { x: left[xi].clone(), y: self.right_vectors[k].clone() };
                        out.push(with(p));
                    }
                }
            }
        }
        out
    }
}

/// All vectors of length `len` over a finite field, lexicographic order.
pub fn all_vectors(field: &[Scalar], len: usize) -> Vec<Vec<Scalar>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                field.iter().map(move |s| {
                    let mut w = v.clone();
                    w.push(s.clone());
                    w
                })
            })
            .collect();
    }
    out
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    tag: FieldTag,
}

impl Parser {
    fn new(text: &str, tag: FieldTag) -> Self {
        Parser { chars: text.chars().collect(), pos: 0, tag }
    }

    fn location(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..at.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, at: usize, message: String) -> AlgebraError {
        let (line, column) = self.location(at);
        AlgebraError::Syntax { line, column, message }
    }

    fn error(&self, message: String) -> AlgebraError {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected {want:?}, found {c:?}"))),
            None => Err(self.error(format!("expected {want:?}, found end of input"))),
        }
    }

    fn sequence(&mut self) -> Result<FormalSequence> {
        let mut pairs = vec![self.pair()?];
        loop {
            self.skip_ws();
            if self.peek() != Some(';') {
                break;
            }
            self.pos += 1;
            pairs.push(self.pair()?);
        }
        Ok(FormalSequence { pairs })
    }

    fn pair(&mut self) -> Result<FormalPair> {
        self.expect('(')?;
        let x = self.vector()?;
        self.expect(',')?;
        let y = self.vector()?;
        self.expect(')')?;
        Ok(FormalPair { x, y })
    }

    fn vector(&mut self) -> Result<Vec<Scalar>> {
        self.expect('[')?;
        let mut out = vec![self.scalar()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    out.push(self.scalar()?);
                }
                Some(']') => {
                    self.pos += 1;
                    return Ok(out);
                }
                Some(c) => return Err(self.error(format!("expected ',' or ']', found {c:?}"))),
                None => return Err(self.error("unterminated vector".to_string())),
            }
        }
    }

    fn scalar(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| !matches!(c, ',' | ']' | '[' | '(' | ')' | ';'))
        {
            self.pos += 1;
        }
        let token: String = self.chars[start..self.pos].iter().collect();
        if token.trim().is_empty() {
            return Err(self.error_at(start, "expected a scalar".to_string()));
        }
        // "1 2" is two numbers missing a separator, not one
        let mut prev: Option<char> = None;
        let mut gap = false;
        for (k, c) in token.chars().enumerate() {
            if c.is_whitespace() {
                gap = prev.is_some();
                continue;
            }
            if gap && c.is_alphanumeric() && prev.is_some_and(char::is_alphanumeric) {
                return Err(self.error_at(start + k, "expected ',' or ']'".to_string()));
            }
            prev = Some(c);
            gap = false;
        }
        Scalar::parse(&token, self.tag).map_err(|e| self.error_at(start, e.to_string()))
    }
}

/// Parses a formal sequence expression. Dimension disagreements between
/// pairs are reported as [`AlgebraError::DimensionMismatch`].
pub fn parse_expression(text: &str, tag: FieldTag) -> Result<FormalSequence> {
    let mut p = Parser::new(text, tag);
    let seq = p.sequence()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected {c:?} after sequence")));
    }
    FormalSequence::new(seq.pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldTag = FieldTag::Rational;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(Q, v)
    }

    #[test]
    fn parse_examples() {
        let e = parse_expression("([1,0],[0,1])", Q).unwrap();
        assert_eq!(e.pairs(), &[FormalPair { x: vec![s(1), s(0)], y: vec![s(0), s(1)] }]);
        let bell = parse_expression("([1,0],[1,0]);([0,1],[0,1])", Q).unwrap();
        assert_eq!(bell.len(), 2);
        let e = parse_expression(" ( [ 1/2 , \u{2212}3 ] , [0,1] ) ", Q).unwrap();
        assert_eq!(e.pairs()[0].x, vec![Scalar::from_fraction(Q, 1, 2).unwrap(), s(-3)]);
        assert_eq!(parse_expression(&e.to_string(), Q).unwrap(), e);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_expression("([1,0],[0,1]);\n([1,0] [1])", Q) {
            Err(AlgebraError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 8)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_expression("([1,0],[0,1]);([1],[1])", Q),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
        assert!(matches!(parse_expression("([x],[1])", Q), Err(AlgebraError::Syntax { .. })));
        match parse_expression("([1,0],[0 1])", Q) {
            Err(AlgebraError::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 11)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_expression("([1 + 2i],[1])", FieldTag::GaussianRational).is_ok());
        assert!(matches!(parse_expression("", Q), Err(AlgebraError::Syntax { .. })));
    }

    #[test]
    fn concatenation_and_linearization() {
        let a = parse_expression("([1,2],[3,4])", Q).unwrap();
        let b = parse_expression("([0,1],[1,-1])", Q).unwrap();
        let ab = a.concatenate(&b).unwrap();
        let ba = b.concatenate(&a).unwrap();
        assert_eq!(ab.len(), 2);
        assert_ne!(ab, ba);
        assert_eq!(ab.linearize(), a.linearize().add(&b.linearize()).unwrap());
        let rules = RuleSet::new(TensorKind::Standard, 0);
        assert!(decide_equiv(&ab, &ba, &rules).unwrap());
        let neg = parse_expression("([1,2],[3,4]);([-1,-2],[3,4])", Q).unwrap();
        assert!(neg.linearize().is_zero());
        let bell = parse_expression("([1,0],[1,0]);([0,1],[0,1])", Q).unwrap();
        assert_eq!(bell.linearize().coords(), &[s(1), s(0), s(0), s(1)]);
        let other = parse_expression("([1],[1])", Q).unwrap();
        assert!(a.concatenate(&other).is_err());
    }

    #[test]
    fn steps_preserve_linearization() {
        let rules = RuleSet::new(TensorKind::Standard, 0);
        let seq = parse_expression("([1,2],[3,4]);([5,6],[7,8])", Q).unwrap();
        let lin = seq.linearize();
        let steps = [
            RewriteStep::Swap { i: 0, j: 1 },
            RewriteStep::SplitLeft { pos: 0, part: vec![s(9), s(-1)] },
            RewriteStep::SplitRight { pos: 1, part: vec![s(2), s(2)] },
            RewriteStep::ShiftRight { pos: 0, element: Poly::constant(s(2)), preimage: vec![Scalar::from_fraction(Q, 1, 2).unwrap(), s(1)] },
        ];
        for step in steps {
            let out = seq.apply(&step, &rules).unwrap();
            assert_eq!(out.linearize(), lin, "{step:?}");
        }
        let split = seq.apply(&RewriteStep::SplitLeft { pos: 0, part: vec![s(1), s(1)] }, &rules).unwrap();
        assert_eq!(split.apply(&RewriteStep::MergeLeft { pos: 0 }, &rules).unwrap(), seq);
        assert!(seq.apply(&RewriteStep::MergeLeft { pos: 0 }, &rules).is_err());
        let bad_shift = RewriteStep::ShiftRight { pos: 0, element: Poly::xi(Q), preimage: vec![s(1), s(2)] };
        assert!(seq.apply(&bad_shift, &rules).is_err());
    }

    #[test]
    fn operator_rules_decide() {
        let a = Matrix::diagonal(Q, &[s(2), s(3)]).unwrap();
        let b = Matrix::diagonal(Q, &[s(-1), s(5)]).unwrap();
        let opair = RuleSet::new(TensorKind::OperatorPair { a: a.clone(), b: b.clone() }, 1);
        let standard = RuleSet::new(TensorKind::Standard, 0);
        let x = vec![s(1), s(4)];
        let y = vec![s(-2), s(7)];
        let lhs = FormalSequence::single(a.apply(&x).unwrap(), y.clone()).unwrap();
        let rhs = FormalSequence::single(x, b.apply(&y).unwrap()).unwrap();
        assert!(decide_equiv(&lhs, &rhs, &opair).unwrap());
        assert!(!decide_equiv(&lhs, &rhs, &standard).unwrap());
        assert!(decide_equiv(&lhs, &lhs, &standard).unwrap());
    }

    #[test]
    fn oracle_small_cases() {
        let f2 = FieldTag::prime(2).unwrap();
        let one = Scalar::one(f2);
        let seed = FormalSequence::single(vec![one.clone()], vec![one.clone()]).unwrap();
        let rules = RuleSet::new(TensorKind::Standard, 0);
        let none = OracleBudget { max_applications: 0, max_length: 3, max_states: 100 };
        assert_eq!(closure_oracle(&seed, &rules, none).unwrap(), BTreeSet::from([seed.clone()]));
        let single = OracleBudget { max_applications: 4, max_length: 1, max_states: 100 };
        let closure = closure_oracle(&seed, &rules, single).unwrap();
        assert!(closure.len() <= 4);
        assert!(closure.iter().all(|t| t.len() == 1));
        assert!(closure.iter().all(|t| decide_equiv(&seed, t, &rules).unwrap()));
        let tight = OracleBudget { max_applications: 4, max_length: 3, max_states: 3 };
        assert!(matches!(
            closure_oracle(&seed, &rules, tight),
            Err(AlgebraError::BudgetExceeded { .. })
        ));
        let q_seed = FormalSequence::single(vec![s(1)], vec![s(1)]).unwrap();
        assert_eq!(closure_oracle(&q_seed, &rules, none), Err(AlgebraError::NotFinite(Q)));
    }

    #[test]
    fn zero_pairs_are_interchangeable() {
        // (0, y) -> (x, 0) via the scalar rule with c = 0
        let f2 = FieldTag::prime(2).unwrap();
        let (zero, one) = (Scalar::zero(f2), Scalar::one(f2));
        let seed = FormalSequence::single(vec![zero.clone(), zero.clone()], vec![one.clone(), zero.clone()]).unwrap();
        let target = FormalSequence::single(vec![one.clone(), one.clone()], vec![zero.clone(), zero.clone()]).unwrap();
        let rules = RuleSet::new(TensorKind::Standard, 0);
        let budget = OracleBudget { max_applications: 1, max_length: 1, max_states: 1000 };
        assert!(closure_oracle(&seed, &rules, budget).unwrap().contains(&target));
    }
}
