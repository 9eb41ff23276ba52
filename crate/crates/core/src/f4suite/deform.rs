//! Admissible elements f ∈ rad²R(F4) and the deformed presentations Λ^f(F4).

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use crate::exactcoeff::{parse_poly, FieldSpec, PolyScalar, Ring, RingRef, Scalar};
use crate::pathcore::{Element, Presentation};
use crate::report::VerificationReport;

use super::{eval_letters, letters, F4Error};

/// The monomials carrying θ₀..θ₈, in slot order.
pub const MONOMIALS: [&str; 9] = ["xx", "xy", "yx", "xxx", "xxy", "yxx", "xxxx", "xxxy", "xxxxx"];

const GENERIC: [&str; 9] = ["t0", "t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8"];

/// Which coefficient regime a substitution is checked in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Rationals with θ₁, θ₃, θ₄, θ₆, θ₈ free.
    Char0Symbolic,
    /// F₂ with θ₁, θ₃, θ₄, θ₆, θ₇, θ₈ free.
    Char2Symbolic,
    /// Every θ is a field element.
    Ground,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Char0Symbolic => "char0-symbolic",
            Mode::Char2Symbolic => "char2-symbolic",
            Mode::Ground => "ground",
        })
    }
}

/// f = Σ θᵢ·mᵢ over the monomials in [`MONOMIALS`].
#[derive(Debug, Clone, PartialEq)]
pub struct DeformationF4 {
    theta: Vec<PolyScalar>,
}

impl DeformationF4 {
    pub fn new(theta: Vec<PolyScalar>) -> Result<Self, F4Error> {
        if theta.len() != 9 {
            return Err(F4Error::BadTheta(format!("expected 9 coefficients, got {}", theta.len())));
        }
        let ring = theta[0].ring().clone();
        if theta.iter().any(|t| !crate::exactcoeff::same_ring(t.ring(), &ring)) {
            return Err(F4Error::BadTheta("coefficients live in different rings".into()));
        }
        Ok(DeformationF4 { theta })
    }

    pub fn zero(ring: &RingRef) -> Self {
        DeformationF4 {
            theta: vec![PolyScalar::zero(ring); 9],
        }
    }

    pub fn ground(field: FieldSpec, values: &[i64]) -> Result<Self, F4Error> {
        let ring = Ring::ground(field);
        Self::new(values.iter().map(|&v| PolyScalar::from_i64(&ring, v)).collect())
    }

    /// Fully generic θ₀..θ₈ as parameters `t0..t8`.
    pub fn generic(field: FieldSpec) -> Self {
        let ring = Ring::new(field, &GENERIC).expect("distinct names");
        DeformationF4 {
            theta: (0..9).map(|i| PolyScalar::var(&ring, i)).collect(),
        }
    }

    /// Names of the free coefficients once the admissibility constraints are solved.
    pub fn free_names(field: FieldSpec) -> &'static [&'static str] {
        if field.characteristic() == 2 {
            &["t1", "t3", "t4", "t6", "t7", "t8"]
        } else {
            &["t1", "t3", "t4", "t6", "t8"]
        }
    }

    /// The admissible f with the given free coefficients (see [`Self::free_names`]);
    /// θ₀, θ₂, θ₅ and (outside characteristic 2) θ₇ are derived.
    pub fn normalized(ring: &RingRef, free: &BTreeMap<String, PolyScalar>) -> Result<Self, F4Error> {
        let field = ring.field();
        let get = |n: &str| -> Result<PolyScalar, F4Error> {
            free.get(n)
                .cloned()
                .ok_or_else(|| F4Error::BadTheta(format!("missing free coefficient {n}")))
        };
        let t1 = get("t1")?;
        let t3 = get("t3")?;
        let t4 = get("t4")?;
        let t6 = get("t6")?;
        let t8 = get("t8")?;
        let c = |v: i64| PolyScalar::from_i64(ring, v);
        let t5 = &(&(&c(2) * &t3) - &t4) + &t1.pow(2);
        let t7 = if field.characteristic() == 2 {
            get("t7")?
        } else {
            &(&t6 - &t1.pow(3)) + &(&(&c(2) * &t1) * &(&t4 - &t3))
        };
        Self::new(vec![c(0), t1.clone(), -&t1, t3, t4, t5, t6, t7, t8])
    }

    /// Constraint-normalized f with free coefficients as ring parameters.
    pub fn normalized_symbolic(field: FieldSpec) -> Self {
        let names = Self::free_names(field);
        let ring = Ring::new(field, names).expect("distinct names");
        let free = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.to_string(), PolyScalar::var(&ring, i)))
            .collect();
        Self::normalized(&ring, &free).expect("all free names bound")
    }

    /// Parses `v0,v1,...,v8` (nine values in slot order) or `t1=1, t2=-1`.
    pub fn parse(field: FieldSpec, text: &str) -> Result<Self, F4Error> {
        let ring = Ring::ground(field);
        let value = |s: &str| parse_poly(s.trim(), &ring).map_err(|e| F4Error::BadTheta(format!("`{}`: {e}", s.trim())));
        if text.contains('=') {
            let mut theta = vec![PolyScalar::zero(&ring); 9];
            for part in text.split(',').filter(|s| !s.trim().is_empty()) {
                let (k, v) = part
                    .split_once('=')
                    .ok_or_else(|| F4Error::BadTheta(format!("expected name=value, got `{}`", part.trim())))?;
                let k = k.trim();
                let idx = k
                    .strip_prefix("theta")
                    .or_else(|| k.strip_prefix('θ'))
                    .or_else(|| k.strip_prefix('t'))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&i| i < 9)
                    .ok_or_else(|| F4Error::BadTheta(format!("unknown coefficient `{k}` (use t0..t8)")))?;
                theta[idx] = value(v)?;
            }
            Self::new(theta)
        } else {
            let vals: Vec<&str> = text.split(',').collect();
            if vals.len() != 9 {
                return Err(F4Error::BadTheta(format!("expected 9 comma-separated values, got {}", vals.len())));
            }
            Self::new(vals.into_iter().map(value).collect::<Result<_, _>>()?)
        }
    }

    pub fn theta(&self, i: usize) -> &PolyScalar {
        &self.theta[i]
    }

    pub fn thetas(&self) -> &[PolyScalar] {
        &self.theta
    }

    pub fn ring(&self) -> &RingRef {
        self.theta[0].ring()
    }

    pub fn field(&self) -> FieldSpec {
        self.ring().field()
    }

    pub fn is_zero(&self) -> bool {
        self.theta.iter().all(PolyScalar::is_zero)
    }

    pub fn is_ground(&self) -> bool {
        self.theta.iter().all(PolyScalar::is_constant)
    }

    pub fn mode(&self) -> Mode {
        if self.is_ground() {
            Mode::Ground
        } else if self.field().characteristic() == 2 {
            Mode::Char2Symbolic
        } else {
            Mode::Char0Symbolic
        }
    }

    /// The same f with coefficients moved into `ring`.
    pub fn embed(&self, ring: &RingRef) -> Result<Self, F4Error> {
        Self::new(self.theta.iter().map(|t| t.embed(ring)).collect::<Result<_, _>>()?)
    }

    /// f(x, y) evaluated at elements `x`, `y` sharing a closed endpoint pair.
    pub fn evaluate_at(&self, x: &Element, y: &Element) -> Result<Element, F4Error> {
        let mut acc = Element::zero(x.quiver(), x.ring());
        for (m, t) in MONOMIALS.iter().zip(&self.theta) {
            if t.is_zero() {
                continue;
            }
            let first = if m.starts_with('x') { x } else { y };
            let w = eval_letters(&m[1..], x, y, first)?;
            acc = acc.try_add(&w.scale(t)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for DeformationF4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, t) in MONOMIALS.iter().zip(&self.theta) {
            if t.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if t.constant_value().is_some_and(|v| v.is_one()) {
                write!(f, "{m}")?;
            } else {
                write!(f, "({t})*{m}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Λ^f(F4): the canonical quiver with the nine deformed relations.
pub fn lambda_f_f4(f: &DeformationF4, field: FieldSpec) -> Result<Presentation, F4Error> {
    if f.field() != field {
        return Err(F4Error::FieldMismatch(f.field().to_string(), field.to_string()));
    }
    let adm = is_admissible(f)?;
    if let Some((word, coefficient)) = adm.violated {
        return Err(F4Error::NotAdmissible {
            word,
            coefficient: coefficient.to_string(),
        });
    }
    let base = super::lambda_f4(field, &[])?;
    let q = base.quiver().clone();
    let ring = f.ring().clone();
    let p = |s: &str| crate::pathcore::parse_element(&q, &ring, s);
    let (x, y) = (p("ab2*a3")?, p("ab3*a2")?);
    let vertex0 = p("ab1*a1 + ab3*a2 + ab2*a3")?.try_add(&f.evaluate_at(&x, &y)?)?;
    let relations = vec![
        p("a1*ab1")?,
        p("ab2*a3*ab3*a2*ab2*a3")?,
        p("ab3*a2*ab2*a3*ab3*a2")?,
        p("(ab2*a3 + ab3*a2)^2")?,
        vertex0,
        p("a2*ab2 + ab4*a5")?,
        p("a3*ab3 + ab5*a4")?,
        p("a4*ab4")?,
        p("a5*ab5")?,
    ];
    Ok(Presentation::new("lambda_f_f4", q, ring, relations)?)
}

/// Coefficients of (x + y + f)² in R(F4) for fully generic θ₀..θ₈ (`t0..t8`),
/// keyed by basis word.
pub fn admissibility_system(field: FieldSpec) -> Result<BTreeMap<String, PolyScalar>, F4Error> {
    let ctx = R4::new(field)?;
    ctx.square_coefficients(&DeformationF4::generic(field))
}

/// Result of an admissibility test; `violated` names the first nonzero coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Admissibility {
    pub admissible: bool,
    pub violated: Option<(String, PolyScalar)>,
}

/// Evaluates the admissibility system at `f`. Symbolic `f` is admissible
/// when every coefficient vanishes identically.
pub fn is_admissible(f: &DeformationF4) -> Result<Admissibility, F4Error> {
    let system = admissibility_system(f.field())?;
    let binds: BTreeMap<String, PolyScalar> = GENERIC
        .iter()
        .zip(f.thetas())
        .map(|(n, t)| (n.to_string(), t.clone()))
        .collect();
    for (word, c) in system {
        let v = c.substitute(&binds, f.ring())?;
        if !v.is_zero() {
            return Ok(Admissibility {
                admissible: false,
                violated: Some((word, v)),
            });
        }
    }
    Ok(Admissibility {
        admissible: true,
        violated: None,
    })
}

/// R(F4) completed once, over a given field.
pub(crate) struct R4 {
    sys: crate::rewrite::RewriteSystem,
    pres: Presentation,
}

impl R4 {
    pub(crate) fn new(field: FieldSpec) -> Result<Self, F4Error> {
        let pres = super::r_f4(field, &[])?;
        let sys = crate::rewrite::complete(&pres, 12)?;
        Ok(R4 { sys, pres })
    }

    /// Normal form of (x + y + f(x, y))², as coefficients per basis word.
    pub(crate) fn square_coefficients(&self, f: &DeformationF4) -> Result<BTreeMap<String, PolyScalar>, F4Error> {
        let q = self.pres.quiver();
        let ring = f.ring();
        let x = crate::pathcore::parse_element(q, ring, "x")?;
        let y = crate::pathcore::parse_element(q, ring, "y")?;
        let s = x.try_add(&y)?.try_add(&f.evaluate_at(&x, &y)?)?;
        let nf = self.sys.normal_form(&s.try_mul(&s)?)?;
        let mut out = BTreeMap::new();
        for w in self.sys.irreducible_words(12) {
            out.insert(letters(q, &w), nf.coeff(&w));
        }
        out.retain(|w, c| !c.is_zero() || w.len() >= 3);
        Ok(out)
    }
}

/// The displayed form of the coefficient system, per basis word.
pub(crate) fn displayed_system(ring: &RingRef) -> Result<Vec<(&'static str, PolyScalar)>, F4Error> {
    let p = |s: &str| parse_poly(s, ring);
    Ok(vec![
        ("xxx", p("2*t0 - t1 - t2")?),
        ("xxy", p("t0")?),
        ("yxx", p("t0")?),
        ("xxxx", p("2*t3 - t4 - t5 + t0^2 - t1*t2")?),
        ("xxxy", p("2*t3 - t4 - t5 + t0*t1 + t0*t2 - t1*t2")?),
        ("xxxxx", p("2*t6 - 2*t7 + 2*t0*t3 - 2*t1*t5 - 2*t2*t4")?),
    ])
}

/// Solves equations triangularly for the preferred pivots, in order.
/// Returns the solved variables (in terms of the rest) and the equations
/// that could not be used as pivots and did not vanish.
fn triangular(eqs: &[PolyScalar], pivots: &[usize]) -> (BTreeMap<usize, PolyScalar>, Vec<PolyScalar>) {
    let ring = eqs[0].ring().clone();
    let mut solved: BTreeMap<usize, PolyScalar> = BTreeMap::new();
    let mut leftover = Vec::new();
    for e in eqs {
        let e = apply(&solved, e, &ring);
        if e.is_zero() {
            continue;
        }
        let pick = pivots
            .iter()
            .filter(|i| !solved.contains_key(i))
            .find_map(|&i| e.linear_in(i).filter(|(c, _)| !c.is_zero()).map(|(c, rest)| (i, c, rest)));
        match pick {
            Some((i, c, rest)) => {
                let inv: Scalar = c.inv().expect("nonzero");
                let sol = rest.scale(&-&inv);
                let single = BTreeMap::from([(i, sol.clone())]);
                for v in solved.values_mut() {
                    *v = apply(&single, v, &ring);
                }
                solved.insert(i, sol);
            }
            None => leftover.push(e),
        }
    }
    (solved, leftover)
}

fn apply(solved: &BTreeMap<usize, PolyScalar>, e: &PolyScalar, ring: &RingRef) -> PolyScalar {
    if solved.is_empty() {
        return e.clone();
    }
    let binds = solved
        .iter()
        .map(|(&i, v)| (GENERIC[i].to_string(), v.clone()))
        .collect();
    e.substitute(&binds, ring).expect("same ring")
}

/// Checks that the computed coefficient system (A) and the solved constraint
/// list (B) cut out the same θ's, by triangular elimination in both directions.
pub fn constraint_equivalence_check(field: FieldSpec) -> Result<VerificationReport, F4Error> {
    let t = Instant::now();
    let mut rep = VerificationReport::new("constraint-equivalence", field);
    let r4 = R4::new(field)?;
    let generic = DeformationF4::generic(field);
    let ring = generic.ring().clone();
    let computed = r4.square_coefficients(&generic)?;
    for (word, shown) in displayed_system(&ring)? {
        let got = computed.get(word).cloned().unwrap_or_else(|| PolyScalar::zero(&ring));
        rep.check(
            &format!("system.{word}"),
            &format!("coefficient of {word} in (x+y+f)^2 matches the displayed polynomial {shown}"),
            &got - &shown,
            Some(t),
        );
    }
    let extra: Vec<&String> = computed
        .iter()
        .filter(|(w, c)| !c.is_zero() && !["xxx", "xxy", "yxx", "xxxx", "xxxy", "xxxxx"].contains(&w.as_str()))
        .map(|(w, _)| w)
        .collect();
    rep.check_bool(
        "system.support",
        "no other basis word carries a nonzero coefficient",
        extra.is_empty(),
        if extra.is_empty() { "0".to_string() } else { format!("{extra:?}") },
        Some(t),
    );

    let p = |s: &str| parse_poly(s, &ring);
    let sys_a: Vec<PolyScalar> = ["xxy", "xxx", "xxxx", "xxxy", "xxxxx", "yxx"]
        .iter()
        .map(|w| computed.get(*w).cloned().unwrap_or_else(|| PolyScalar::zero(&ring)))
        .collect();
    let sys_b = vec![
        p("t0")?,
        p("t2 + t1")?,
        p("t5 - (2*t3 - t4 + t1^2)")?,
        p("2*t7 - 2*(t6 - t1^3 + 2*t1*(t4 - t3))")?,
    ];
    let pivots = [0, 2, 5, 7];
    let (sol_a, left_a) = triangular(&sys_a, &pivots);
    let (sol_b, left_b) = triangular(&sys_b, &pivots);
    rep.check_bool(
        "A.triangular",
        "computed system solves triangularly for theta0, theta2, theta5, theta7",
        left_a.is_empty(),
        if left_a.is_empty() { "0".to_string() } else { format!("{:?}", left_a.iter().map(|e| e.to_string()).collect::<Vec<_>>()) },
        Some(t),
    );
    rep.check_bool(
        "B.triangular",
        "constraint list solves triangularly",
        left_b.is_empty(),
        if left_b.is_empty() { "0".to_string() } else { format!("{:?}", left_b.iter().map(|e| e.to_string()).collect::<Vec<_>>()) },
        Some(t),
    );
    for (label, from, to) in [("A=>B", &sol_a, &sys_b), ("B=>A", &sol_b, &sys_a)] {
        for (k, e) in to.iter().enumerate() {
            rep.check(
                &format!("{label}.eq{}", k + 1),
                &format!("equation {} of the other system vanishes on the solved form", k + 1),
                apply(from, e, &ring),
                Some(t),
            );
        }
    }
    let same_pivots = sol_a.keys().eq(sol_b.keys());
    rep.check_bool(
        "pivots",
        "both systems determine the same coefficients",
        same_pivots,
        format!(
            "{:?} vs {:?}",
            sol_a.keys().map(|i| GENERIC[*i]).collect::<Vec<_>>(),
            sol_b.keys().map(|i| GENERIC[*i]).collect::<Vec<_>>()
        ),
        Some(t),
    );
    for (i, s) in &sol_a {
        rep.fact(&format!("solved.{}", GENERIC[*i]), s);
    }
    let free7 = !sol_a.contains_key(&7);
    let expect_free = field.characteristic() == 2;
    rep.check_bool(
        "theta7",
        "theta7 is free exactly in characteristic 2",
        free7 == expect_free,
        if free7 { "free" } else { "determined" },
        Some(t),
    );
    Ok(rep)
}
