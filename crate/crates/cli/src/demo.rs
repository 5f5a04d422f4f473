//! Replays of the worked examples: upper triangular GL_3, GL_3 along
//! (-2,-1,-2,2,1,2), unipotent GL_4 along (1,2,3,1,2,1), and the maximal
//! cell factorizations at n = 3.

use std::fmt::Write;

use clap::ValueEnum;
use qbruhat::factorize::{
    factor_w0_v, product_map, recover_params, sample_params, sample_torus, verify_double_ratios,
};
use qbruhat::fixtures::{borel3_params, gl3_params, gl3_word, sl4_params, sl4_word, symbolic_matrix};
use qbruhat::skewfield::sampler;
use qbruhat::{FactorizationOutput, Matrix, Quaternion, RatFunc, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Fixture {
    Borel,
    Gl3,
    Sl4,
    Maximal,
    All,
}

/// Returns the report and whether every numeric check held.
pub fn run(fixture: Fixture) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut ok = true;
    let all = fixture == Fixture::All;
    if all || fixture == Fixture::Borel {
        ok &= borel(&mut out)?;
    }
    if all || fixture == Fixture::Gl3 {
        ok &= gl3(&mut out)?;
    }
    if all || fixture == Fixture::Sl4 {
        ok &= sl4(&mut out)?;
    }
    if all || fixture == Fixture::Maximal {
        ok &= maximal(&mut out)?;
    }
    Ok((out, ok))
}

fn triangular(n: usize) -> Matrix<RatFunc> {
    Matrix::from_fn(n, n, |i, j| if i <= j { RatFunc::var(&format!("x{i}{j}")) } else { RatFunc::zero() })
}

fn unitriangular(n: usize) -> Matrix<RatFunc> {
    Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => RatFunc::var(&format!("x{i}{j}")),
        std::cmp::Ordering::Equal => RatFunc::one(),
        std::cmp::Ordering::Greater => RatFunc::zero(),
    })
}

fn check_line(out: &mut String, what: &str, ok: bool) {
    let verdict = if ok { "exact" } else { "MISMATCH" };
    writeln!(out, "  quaternion check ({what}): {verdict}").unwrap();
}

fn borel(out: &mut String) -> Result<bool> {
    writeln!(out, "upper triangular GL_3, word (1,2,1)").unwrap();
    let t = borel3_params(&triangular(3))?;
    for (name, v) in ["t12", "t13", "t23"].iter().zip(&t) {
        writeln!(out, "  {name} = {v}").unwrap();
    }
    Ok(true)
}

fn gl3(out: &mut String) -> Result<bool> {
    writeln!(out, "GL_3, word (-2,-1,-2,2,1,2)").unwrap();
    let f = gl3_params(&symbolic_matrix(3, "x"))?;
    for (k, v) in f.h.iter().enumerate() {
        writeln!(out, "  h{} = {v}", k + 1).unwrap();
    }
    for (k, v) in f.t.iter().enumerate() {
        writeln!(out, "  t{} = {v}", k + 1).unwrap();
    }
    let mut rng = sampler(0);
    let h: Vec<Quaternion> = sample_torus(&mut rng, 3, 3);
    let t: Vec<Quaternion> = sample_params(&mut rng, 6, 3);
    let x = product_map(&gl3_word(), &t, Some(&h))?;
    let expected = FactorizationOutput { h, t };
    let ok = gl3_params(&x)? == expected && recover_params(&x, &gl3_word())? == expected;
    check_line(out, "seed 0", ok);
    Ok(ok)
}

fn sl4(out: &mut String) -> Result<bool> {
    writeln!(out, "unipotent GL_4, word (1,2,3,1,2,1)").unwrap();
    let t = sl4_params(&unitriangular(4))?;
    for (name, v) in ["t12", "t13", "t14", "t23", "t24", "t34"].iter().zip(&t) {
        writeln!(out, "  {name} = {v}").unwrap();
    }
    let mut rng = sampler(0);
    let t: Vec<Quaternion> = sample_params(&mut rng, 6, 3);
    let x = product_map(&sl4_word(), &t, None)?;
    let ok = sl4_params(&x)? == t && recover_params(&x, &sl4_word())?.t == t;
    check_line(out, "seed 0", ok);
    Ok(ok)
}

fn maximal(out: &mut String) -> Result<bool> {
    writeln!(out, "G^{{w0,v}} at n = 3 (generic x): x = h x_-^(2) x_-^(1) x_+").unwrap();
    let f = factor_w0_v(&symbolic_matrix(3, "x"))?;
    for (k, v) in f.h.iter().enumerate() {
        writeln!(out, "  h{} = {v}", k + 1).unwrap();
    }
    for ((m, k), v) in &f.tau {
        writeln!(out, "  tau{m}{k} = {v}").unwrap();
    }
    let mut rng = sampler(0);
    let x: Matrix<Quaternion> = Matrix::from_fn(3, 3, |_, _| Quaternion::sample(&mut rng, 3));
    let report = verify_double_ratios(&x, false)?;
    let mut ok = factor_w0_v(&x)?.replay()? == x;
    for fam in &report.families {
        let held = fam.checks.iter().filter(|c| c.holds).count();
        writeln!(out, "  double ratios {}: {held}/{} hold", fam.name, fam.checks.len()).unwrap();
        ok &= fam.passed();
    }
    check_line(out, "seed 0", ok);
    Ok(ok)
}
