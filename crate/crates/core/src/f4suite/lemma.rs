//! Basis and reduction identities of R(F4), and its realization as the
//! corner e₀Λ(F4)e₀.

use std::time::Instant;

use crate::exactcoeff::Ring;
use crate::linalg::{Echelon, SparseRow};
use crate::pathcore::{Element, Word};
use crate::report::VerificationReport;

use super::{eval_letters, letters, F4Context, F4Error};

/// The expected basis of R(F4), by degree.
pub const BASIS_B: [&str; 12] = [
    "1", "x", "y", "xx", "xy", "yx", "xxx", "xxy", "yxx", "xxxx", "xxxy", "xxxxx",
];

/// Displayed reductions: each chain is a list of expressions asserted equal.
const IDENTITIES: &[(&str, &[&str])] = &[
    ("yy", &["y*y", "y*y - (x + y)^2", "-(x*x + x*y + y*x)"]),
    (
        "xyy",
        &["x*y*y", "-x*(x*x + x*y + y*x)", "-(x*x*x + x*x*y) - x*y*x", "-(x*x*x + x*x*y)"],
    ),
    ("yyx", &["y*y*x", "-(x*x + x*y + y*x)*x", "-(x*x*x + y*x*x)"]),
    (
        "yyy",
        &[
            "y*y*y",
            "-y*(x*x + x*y + y*x)",
            "-(y*x*x + y*y*x)",
            "-(y*x*x - (x*x*x + y*x*x))",
            "x*x*x",
        ],
    ),
    (
        "xyyy",
        &["x*y*y*y", "-x*(y*x*x + y*y*x)", "-x*y*y*x", "x*(x*x*x + y*x*x)", "x*x*x*x"],
    ),
    ("yyyx", &["y*y*y*x", "-(x*y*y + x*x*y)*x", "-x*y*y*x", "x*x*x*x"]),
    (
        "yyyy",
        &[
            "y*y*y*y",
            "y*x*x*x",
            "-y*(x*y*y + x*x*y)",
            "-y*x*x*y",
            "(x*x*x + y*y*x)*y",
            "x*x*x*y",
        ],
    ),
    ("xxyy", &["x*x*y*y", "-x*(x*x*x + x*x*y)", "-(x*x*x*x + x*x*x*y)"]),
    (
        "yyxx",
        &["y*y*x*x", "-(x*x*x + y*x*x)*x", "-(x*x*x*x + y*x*x*x)", "-(x*x*x*x + x*x*x*y)"],
    ),
];

const CHAIN_MINUS: [&str; 6] = ["yyyyy", "yyxxx", "yxxxy", "xxxyy", "xyyxx", "xxyyx"];
const CHAIN_PLUS: [&str; 5] = ["yyxxy", "yxxyy", "yyyxx", "xyyyx", "xxyyy"];

const VANISHING: &[(&str, &[&str])] = &[
    ("x_w", &["x*(x*x*x*x*x)", "0"]),
    ("w_x", &["(x*x*x*x*x)*x", "(y*y*x*x*y)*x", "y*y*x*(x*y*x)", "0"]),
    ("w_y", &["(x*x*x*x*x)*y", "(x*y*y*y*x)*y", "x*y*y*(y*x*y)", "0"]),
    ("y_w", &["y*(x*x*x*x*x)", "y*(x*y*y*y*x)", "(y*x*y)*y*y*x", "0"]),
];

fn star(word: &str) -> String {
    word.chars().map(|c| c.to_string()).collect::<Vec<_>>().join("*")
}

/// Checks the basis, every displayed reduction and the vanishing of rad⁶ in R(F4).
pub fn verify_lemma_basis(ctx: &F4Context) -> Result<VerificationReport, F4Error> {
    let t = Instant::now();
    let mut rep = VerificationReport::new("f4-lemma", ctx.field);
    let sys = &ctx.r_sys;
    let q = ctx.r.quiver();
    let ring = ctx.r.ring().clone();

    let basis = sys.basis()?;
    let words: Vec<String> = basis.words.iter().map(|w| letters(q, w)).collect();
    let expected: Vec<String> = BASIS_B.iter().map(|s| s.to_string()).collect();
    rep.check_bool(
        "basis.words",
        "irreducible words are exactly B",
        words == expected,
        words.join(" "),
        Some(t),
    );
    rep.check_bool(
        "basis.dim",
        "dimension 12 with graded dimensions [1, 2, 3, 3, 2, 1]",
        basis.dim() == 12 && basis.graded == [1, 2, 3, 3, 2, 1],
        format!("{} {:?}", basis.dim(), basis.graded),
        Some(t),
    );

    let nf_diff = |a: &str, b: &str| -> Result<Element, F4Error> {
        let d = ctx.r_elem(&ring, a)?.try_sub(&ctx.r_elem(&ring, b)?)?;
        ctx.r_nf(&d)
    };
    for (name, chain) in IDENTITIES {
        let last = chain[chain.len() - 1];
        rep.check(
            &format!("identity.{name}"),
            &format!("{} = {}", chain[0], last),
            nf_diff(chain[0], last)?,
            Some(t),
        );
        for k in 1..chain.len() - 1 {
            rep.check(
                &format!("identity.{name}.step{k}"),
                &format!("{} = {}", chain[k - 1], chain[k]),
                nf_diff(chain[k - 1], chain[k])?,
                Some(t),
            );
        }
    }
    for (words, target) in [(&CHAIN_MINUS[..], "-x*x*x*x*x"), (&CHAIN_PLUS[..], "x*x*x*x*x")] {
        for w in words {
            rep.check(
                &format!("chain.{w}"),
                &format!("{w} = {}", target.replace('*', "")),
                nf_diff(&star(w), target)?,
                Some(t),
            );
        }
        for pair in words.windows(2) {
            rep.check(
                &format!("chain.{}={}", pair[0], pair[1]),
                &format!("{} = {}", pair[0], pair[1]),
                nf_diff(&star(pair[0]), &star(pair[1]))?,
                Some(t),
            );
        }
    }
    for (name, chain) in VANISHING {
        rep.check(
            &format!("vanish.{name}"),
            &format!("{} = 0", chain[0]),
            ctx.r_nf(&ctx.r_elem(&ring, chain[0])?)?,
            Some(t),
        );
        for k in 1..chain.len() - 1 {
            rep.check(
                &format!("vanish.{name}.step{k}"),
                &format!("{} = {}", chain[k - 1], chain[k]),
                nf_diff(chain[k - 1], chain[k])?,
                Some(t),
            );
        }
    }
    let rad6 = sys.radical_power_is_zero(6)?;
    let rad5 = sys.radical_power_is_zero(5)?;
    rep.check_bool("rad6", "rad^6 R(F4) = 0", rad6, rad6, Some(t));
    rep.check_bool("rad5", "rad^5 R(F4) != 0", !rad5, !rad5, Some(t));
    Ok(rep)
}

/// Checks that x ↦ ab2*a3, y ↦ ab3*a2 realizes R(F4) as e₀Λ(F4)e₀.
pub fn corner_check(ctx: &F4Context) -> Result<VerificationReport, F4Error> {
    let t = Instant::now();
    let mut rep = VerificationReport::new("f4-corner", ctx.field);
    let q = ctx.quiver();
    let ring = Ring::ground(ctx.field);
    let basis = ctx.lambda_sys.basis()?;
    let v0 = q.vertex_id("0").expect("vertex 0");
    let graded = basis.graded_pair(v0, v0);
    let dim: usize = graded.iter().sum();
    rep.check_bool("corner.dim", "dim e0 L e0 = 12", dim == 12, dim, Some(t));
    rep.check_bool(
        "corner.graded",
        "graded dimensions of e0 L e0 in even degrees are [1, 2, 3, 3, 2, 1]",
        even_part(&graded) == [1, 2, 3, 3, 2, 1],
        format!("{:?}", even_part(&graded)),
        Some(t),
    );
    rep.fact("lambda.dim", basis.dim());

    let (x, y) = ctx.corner_generators(&ring)?;
    let e0 = Element::from_word(q, &ring, Word::trivial(v0));
    for (id, w) in [("xyx", "xyx"), ("yxy", "yxy")] {
        rep.check(
            &format!("corner.{id}"),
            &format!("image of {w} reduces to 0"),
            ctx.nf(&eval_letters(w, &x, &y, &e0)?)?,
            Some(t),
        );
    }
    let s = x.try_add(&y)?;
    rep.check(
        "corner.square",
        "image of (x+y)^2 reduces to 0",
        ctx.nf(&s.try_mul(&s)?)?,
        Some(t),
    );

    let mut index: std::collections::BTreeMap<Word, usize> = Default::default();
    let mut ech = Echelon::new(ctx.field);
    let mut independent = true;
    for w in BASIS_B {
        let img = ctx.nf(&eval_letters(w, &x, &y, &e0)?)?;
        let mut row = SparseRow::new();
        for (u, c) in img.terms() {
            let n = index.len();
            let col = *index.entry(u.clone()).or_insert(n);
            row.insert(col, c.constant_value().expect("ground coefficients"));
        }
        independent &= ech.add_row(row);
    }
    rep.check_bool(
        "corner.independent",
        "the 12 images of B are linearly independent",
        independent && ech.rank() == 12,
        format!("rank {}", ech.rank()),
        Some(t),
    );
    Ok(rep)
}

fn even_part(graded: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = graded.iter().step_by(2).copied().collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}
