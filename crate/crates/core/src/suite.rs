//! Identity verification run shared by the command line tool and the tests.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::context::QContext;
use crate::error::{invalid, Result};
use crate::qbargmann::{
    bargmann_unitarity_gram, tensor_forward, tensor_unitarity_gram, BargmannKernelTable, JacksonFunction,
    TensorFockElement, TensorJacksonFunction,
};
use crate::qcomplex::{
    complex_hermite, dz, dzbar, elliptic_family_gram, gaussian_inner, mixed_basis_gram, modulus_domination_check,
    monomial_gram, qgrid_generate, reference_seed_set, zq_expansion_coeffs, zq_in_zbar, zq_monomial, zq_value,
    BivarPoly, HermiteSeries, ZBarBasisPoly,
};
use crate::qcore::{
    jackson_integral, q_binomial, q_bracket_gap, q_derivative, q_exp, q_gamma, q_gamma_integral, q_gamma_moment_check,
    q_number, JacksonQuadrature, QExpVariant,
};
use crate::qfock::{adjoint_check, commutator_check, kernel_eval, kernel_section, ladder_adjoint_gap, FockElement};
use crate::qhermite::{
    classical_limit_gap, qhermite_annihilate, qhermite_create, qhermite_eigencheck, qhermite_explicit,
    qhermite_functions, qhermite_gram, qhermite_recurrence, weight_relation_check, JacksonNodes, RealPoly,
};
use crate::util::factorial;

/// Artifact format of the command line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

/// Parameters of a run; every artifact is a function of this value alone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub q: f64,
    /// Hermite modes `M` kept by the Bargmann transform.
    pub modes: usize,
    /// Jackson node depth `J`.
    pub depth: usize,
    /// When set, replaces the tolerance of every verification entry.
    pub tol: Option<f64>,
    pub format: OutputFormat,
    /// Seed of the sampled checks.
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { q: 0.5, modes: 16, depth: 400, tol: None, format: OutputFormat::Csv, seed: 42 }
    }
}

impl RunConfig {
    pub fn validated(self) -> Result<Self> {
        self.context()?;
        if self.modes == 0 {
            return Err(invalid("modes must be at least 1"));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0) {
                return Err(invalid(format!("tolerance must be positive, got {t}")));
            }
        }
        Ok(self)
    }

    pub fn context(&self) -> Result<QContext> {
        QContext::new(self.q)?.with_quad_level(self.depth)
    }
}

/// One checked identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub name: String,
    /// The identity in formula form.
    pub anchor: String,
    /// Largest observed defect; absent for skipped entries.
    pub residual: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Outcome of a full verification run, entries sorted by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationSuiteResult {
    pub config: RunConfig,
    pub results: Vec<SuiteEntry>,
    pub pass: bool,
}

impl VerificationSuiteResult {
    pub fn failures(&self) -> impl Iterator<Item = &SuiteEntry> {
        self.results.iter().filter(|e| !e.pass)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,anchor,residual,tol,pass,note\n");
        for e in &self.results {
            let residual = e.residual.map(|r| format!("{r:e}")).unwrap_or_default();
            out.push_str(&format!(
                "{},\"{}\",{},{:e},{},\"{}\"\n",
                e.name,
                e.anchor.replace('"', "'"),
                residual,
                e.tol,
                e.pass,
                e.note.as_deref().unwrap_or("").replace('"', "'")
            ));
        }
        out
    }
}

#[derive(Default)]
struct Outcome {
    residual: Option<f64>,
    note: Option<String>,
    /// The entry passes when the residual exceeds the tolerance.
    lower_bound: bool,
}

impl Outcome {
    fn value(r: f64) -> Self {
        Self { residual: Some(r), ..Self::default() }
    }

    fn skipped(why: impl Into<String>) -> Self {
        Self { note: Some(why.into()), ..Self::default() }
    }
}

struct Env {
    cfg: RunConfig,
    ctx: QContext,
}

impl Env {
    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        r.set_stream(stream);
        r
    }

    fn at(&self, q: f64) -> Result<QContext> {
        self.ctx.with_q(q)
    }
}

type Body = fn(&Env) -> Result<Outcome>;

struct Check {
    name: &'static str,
    anchor: &'static str,
    tol: f64,
    body: Body,
}

fn max_of(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, f64::max)
}

fn ctx_list(env: &Env, qs: &[f64]) -> Result<Vec<QContext>> {
    qs.iter().map(|&q| env.at(q)).collect()
}

fn random_real_poly(rng: &mut ChaCha8Rng, degree: usize) -> RealPoly {
    RealPoly::from_coeffs((0..=degree).map(|_| rng.random_range(-1.0..1.0)).collect())
}

fn random_complex(rng: &mut ChaCha8Rng, r: f64) -> Complex64 {
    Complex64::new(rng.random_range(-r..r), rng.random_range(-r..r))
}

fn random_bivar(rng: &mut ChaCha8Rng, degree: u32) -> BivarPoly {
    let mut terms = Vec::new();
    for a in 0..=degree {
        for b in 0..=degree - a {
            terms.push(((a, b), random_complex(rng, 1.0)));
        }
    }
    BivarPoly::from_terms(terms)
}

fn random_fock(rng: &mut ChaCha8Rng, degree: usize, ctx: &QContext) -> FockElement {
    FockElement::new((0..=degree).map(|_| random_complex(rng, 1.0)).collect(), ctx)
}

// ---- scalar q-calculus

fn q_number_sum(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for c in ctx_list(env, &[0.3, 0.5, 0.9, env.ctx.q()])? {
        for n in 0..=50 {
            let direct: f64 = (0..n).map(|m| c.q().powi(m)).sum();
            let v = q_number(n as f64, &c);
            worst = worst.max((v - direct).abs() / direct.max(1.0));
        }
    }
    Ok(Outcome::value(worst))
}

fn bracket_gap(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    Ok(Outcome::value(max_of((0..=30).map(|n| (q_bracket_gap(n, &c) - c.q().powi(n as i32)).abs()))))
}

fn q_number_limit(env: &Env) -> Result<Outcome> {
    let c = env.at(1.0 - 1e-6)?;
    // relative: the absolute gap at n = 20 is n (n - 1) / 2 * 1e-6 ~ 1.9e-4
    Ok(Outcome::value(max_of((1..=20).map(|n| (q_number(n as f64, &c) - n as f64).abs() / n as f64))))
}

fn binomial_pascal(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let q = c.q();
    let n_max = 20;
    // q-Pascal rule [n, k] = [n-1, k-1] + q^k [n-1, k]
    let mut row = vec![1.0];
    let mut worst: f64 = 0.0;
    for n in 1..=n_max {
        let mut next = vec![1.0; n + 1];
        for k in 1..n {
            next[k] = row[k - 1] + q.powi(k as i32) * row[k];
        }
        for (k, v) in next.iter().enumerate() {
            worst = worst.max((q_binomial(n, k, &c)? - v).abs() / v);
        }
        row = next;
    }
    Ok(Outcome::value(worst))
}

fn jackson_ftc(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut rng = env.rng(1);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let degree = rng.random_range(0..=8);
        let p = random_real_poly(&mut rng, degree);
        let dp = p.q_derivative(c.q());
        let a = rng.random_range(0.0..1.0);
        let b = rng.random_range(a..2.0);
        let v = jackson_integral(|t| dp.eval(t), &JacksonQuadrature::new(a, b, &c));
        worst = worst.max((v - (p.eval(b) - p.eval(a))).abs());
    }
    Ok(Outcome::value(worst))
}

fn exp_inverse(env: &Env) -> Result<Outcome> {
    let mut rng = env.rng(2);
    let mut worst: f64 = 0.0;
    for c in ctx_list(env, &[0.3, 0.5, env.ctx.q()])? {
        let big = QExpVariant::big(c.q())?;
        let small = QExpVariant::small(c.q())?;
        let r = 0.9 / (1.0 - c.q());
        for _ in 0..20 {
            let t = rng.random_range(-r..r);
            worst = worst.max((q_exp(&big, t, &c)? * q_exp(&small, -t, &c)? - 1.0).abs());
        }
    }
    Ok(Outcome::value(worst))
}

fn exp_derivative(env: &Env) -> Result<Outcome> {
    let mut rng = env.rng(3);
    let mut worst: f64 = 0.0;
    for c in ctx_list(env, &[0.3, 0.5, env.ctx.q()])? {
        let q = c.q();
        let big = QExpVariant::big(q)?;
        let small = QExpVariant::small(q)?;
        let r = 0.9 / (1.0 - q);
        for _ in 0..20 {
            let x = rng.random_range(0.05..r) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let big_d = q_derivative(|s| q_exp(&big, s, &c).unwrap_or(f64::NAN), x, &c)?;
            let big_v = q_exp(&big, x, &c)?;
            let small_d = q_derivative(|s| q_exp(&small, s, &c).unwrap_or(f64::NAN), x, &c)?;
            let small_v = q_exp(&small, q * x, &c)?;
            worst = worst
                .max((big_d - big_v).abs() / big_v.abs().max(1.0))
                .max((small_d - small_v).abs() / small_v.abs().max(1.0));
        }
    }
    Ok(Outcome::value(worst))
}

fn exp_zeros(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for c in ctx_list(env, &[0.3, 0.5, env.ctx.q()])? {
        let q = c.q();
        let small = QExpVariant::small(q)?;
        for k in 0..=3 {
            worst = worst.max(q_exp(&small, q.powi(-k) / (q - 1.0), &c)?.abs());
        }
    }
    Ok(Outcome::value(worst))
}

fn gamma_functional(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut rng = env.rng(4);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let t = rng.random_range(0.1..5.0);
        let next = q_gamma(t + 1.0, &c)?;
        worst = worst.max((next - q_number(t, &c) * q_gamma(t, &c)?).abs() / next);
    }
    Ok(Outcome::value(worst))
}

fn gamma_integral(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut worst: f64 = 0.0;
    for z in [0.5, 1.0, 1.5, 2.0, 3.0] {
        let p = q_gamma(z, &c)?;
        worst = worst.max((q_gamma_integral(z, &c)? - p).abs() / p);
    }
    Ok(Outcome::value(worst))
}

fn gamma_moment(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for nu in [1.0, 3.0, 5.0] {
        worst = worst.max(q_gamma_moment_check(nu, &env.ctx)?.rel_gap.unwrap_or(f64::INFINITY));
    }
    Ok(Outcome::value(worst))
}

fn gamma_moment_even(env: &Env) -> Result<Outcome> {
    let m = q_gamma_moment_check(2.0, &env.ctx)?;
    Ok(Outcome::skipped(m.skipped.unwrap_or_default()))
}

// ---- q-analytic polynomials

fn analytic_contexts(env: &Env) -> Result<Vec<QContext>> {
    ctx_list(env, &[0.3, 0.5, 0.9, env.ctx.q()])
}

fn dzbar_annihilates(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for c in analytic_contexts(env)? {
        for n in 0..=30 {
            let p = zq_monomial(n, &c);
            let scale = dz(&p, &c).max_abs().max(1.0);
            worst = worst.max(dzbar(&p, &c).max_abs() / scale);
        }
    }
    Ok(Outcome::value(worst))
}

fn dz_lowers(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for c in analytic_contexts(env)? {
        let mut prev = zq_monomial(0, &c);
        for n in 1..=30 {
            let p = zq_monomial(n, &c);
            let expected = prev.scale(q_number(n as f64, &c).into());
            worst = worst.max(dz(&p, &c).max_abs_diff(&expected) / expected.max_abs());
            prev = p;
        }
    }
    Ok(Outcome::value(worst))
}

fn derivative_linearity(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut rng = env.rng(5);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let f = random_bivar(&mut rng, 8);
        let g = random_bivar(&mut rng, 8);
        let alpha = random_complex(&mut rng, 2.0);
        let combo = &f.scale(alpha) + &g;
        let lhs = dz(&combo, &c);
        let rhs = &dz(&f, &c).scale(alpha) + &dz(&g, &c);
        let lhs_bar = dzbar(&combo, &c);
        let rhs_bar = &dzbar(&f, &c).scale(alpha) + &dzbar(&g, &c);
        worst = worst.max(lhs.max_abs_diff(&rhs)).max(lhs_bar.max_abs_diff(&rhs_bar));
    }
    Ok(Outcome::value(worst))
}

fn expansion_vs_product(env: &Env) -> Result<Outcome> {
    let mut rng = env.rng(6);
    let mut worst: f64 = 0.0;
    for c in ctx_list(env, &[0.3, env.ctx.q()])? {
        for n in 0..=12 {
            let e = zq_in_zbar(n, &c);
            for _ in 0..10 {
                let z = random_complex(&mut rng, 1.5);
                let scale = z.norm().powi(n as i32).max(1e-300);
                worst = worst.max((e.eval(z) - zq_value(n, z, &c)).norm() / scale);
            }
        }
    }
    Ok(Outcome::value(worst))
}

fn expansion_sum(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let one = Complex64::new(1.0, 0.0);
    Ok(Outcome::value(max_of((1..=15).map(|n| {
        let s: Complex64 = zq_expansion_coeffs(n, &c).terms().map(|(_, v)| v).sum();
        (s - one).norm()
    }))))
}

fn domination(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut rng = env.rng(7);
    let samples: Vec<(f64, f64)> =
        (0..1000).map(|_| (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))).collect();
    let mut excess: f64 = 0.0;
    let mut violations = 0;
    for n in 0..=10 {
        let r = modulus_domination_check(n, &samples, &c);
        excess = excess.max(r.max_ratio - 1.0);
        violations += r.violations;
    }
    let mut o = Outcome::value(excess.max(0.0));
    o.note = Some(format!("{violations} violations in 11000 samples"));
    Ok(o)
}

fn bivar_roundtrip(env: &Env) -> Result<Outcome> {
    let mut rng = env.rng(8);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let degree = rng.random_range(0..=10);
        let p = random_bivar(&mut rng, degree);
        worst = worst.max(p.to_zbar().to_bivar().max_abs_diff(&p));
    }
    Ok(Outcome::value(worst))
}

fn complex_hermite_orthogonality(_: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for p in 0..=6 {
        for r in 0..=6 {
            let a = complex_hermite(p, r);
            let norm = PI * factorial(p) * factorial(r);
            for m in 0..=6 {
                for n in 0..=6 {
                    let want = if (p, r) == (m, n) { norm } else { 0.0 };
                    let v = gaussian_inner(&a, &complex_hermite(m, n));
                    worst = worst.max((v - want).norm() / norm);
                }
            }
        }
    }
    Ok(Outcome::value(worst))
}

fn hermite_roundtrip(_: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for d in 0..=6 {
        for p in 0..=d {
            let m = ZBarBasisPoly::monomial(p, d - p, Complex64::new(1.0, 0.0));
            worst = worst.max(HermiteSeries::from_poly(&m).to_poly().max_abs_diff(&m));
        }
    }
    Ok(Outcome::value(worst))
}

fn mixed_gram_rank(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for c in analytic_contexts(env)? {
        for n in 1..=6 {
            let g = mixed_basis_gram(n, &c);
            worst = worst.max(g.trace / g.min_eigenvalue.max(f64::MIN_POSITIVE));
        }
    }
    Ok(Outcome::value(worst))
}

fn mixed_gram_limit(env: &Env) -> Result<Outcome> {
    let g = mixed_basis_gram(3, &env.at(0.999)?);
    let classical = monomial_gram(3);
    let m = &classical.matrix;
    let mut worst: f64 = 0.0;
    let mut worst_abs: f64 = 0.0;
    for (i, (r, s)) in g.matrix.iter().zip(m).enumerate() {
        for (j, (a, b)) in r.iter().zip(s).enumerate() {
            let scale = (m[i][i].re * m[j][j].re).sqrt();
            worst = worst.max((a - b).norm() / scale);
            worst_abs = worst_abs.max((a - b).norm());
        }
    }
    let mut o = Outcome::value(worst);
    o.note = Some(format!("entrywise gap scaled by sqrt(G_ii G_jj); unscaled {worst_abs:.3e}"));
    Ok(o)
}

fn elliptic_independence(_: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for p in [0.3, 0.5, 0.9, 2.0] {
        for n in 1..=6 {
            let g = elliptic_family_gram(n, p)?;
            worst = worst.max(g.trace / g.min_eigenvalue.max(f64::MIN_POSITIVE));
        }
    }
    Ok(Outcome::value(worst))
}

fn grid_count(_: &Env) -> Result<Outcome> {
    let c = QContext::new(0.6)?;
    let g = qgrid_generate(&reference_seed_set(), 6, &c);
    let mut o = Outcome::value((g.raw_count() as f64 - 9.0 * 49.0).abs());
    o.note = Some(format!("{} distinct points", g.len()));
    Ok(o)
}

// ---- q-Hermite polynomials

fn hermite_contexts(env: &Env) -> Result<Vec<QContext>> {
    ctx_list(env, &[0.3, 0.5, 0.9, env.ctx.q()])
}

fn explicit_vs_recurrence(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for c in hermite_contexts(env)? {
        for h in qhermite_recurrence(12, &c) {
            let e = qhermite_explicit(h.k, &c);
            for (a, b) in h.coefficients().iter().zip(e.coefficients()) {
                worst = worst.max((a - b).abs() / b.abs());
            }
        }
    }
    Ok(Outcome::value(worst))
}

fn annihilation(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for c in hermite_contexts(env)? {
        for k in 1..=10 {
            worst = worst.max(qhermite_annihilate(k, &c).relative);
        }
    }
    Ok(Outcome::value(worst))
}

fn creation(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for c in hermite_contexts(env)? {
        for k in 1..=10 {
            let (a, b) = qhermite_create(k, &c);
            worst = worst.max(a.relative).max(b.relative);
        }
    }
    Ok(Outcome::value(worst))
}

fn eigen_equation(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for c in hermite_contexts(env)? {
        for k in 0..=10 {
            worst = worst.max(qhermite_eigencheck(k, &c).relative);
        }
    }
    Ok(Outcome::value(worst))
}

fn parity(env: &Env) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for h in qhermite_recurrence(12, &env.ctx) {
        let sign = if h.k % 2 == 0 { 1.0 } else { -1.0 };
        worst = worst.max(h.poly.reflect().max_abs_diff(&h.poly.scale(sign)));
    }
    Ok(Outcome::value(worst))
}

fn hermite_orthogonality(env: &Env) -> Result<Outcome> {
    let g = qhermite_gram(8, &env.ctx);
    Ok(Outcome::value(g.deviation.map(|d| d.max_normalized).unwrap_or(f64::INFINITY)))
}

fn weight_relation(env: &Env) -> Result<Outcome> {
    Ok(Outcome::value(max_of((1..=6).map(|k| weight_relation_check(k, &env.ctx)))))
}

fn weight_endpoint(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let series = q_exp(&QExpVariant::hermite_weight(&c), -c.lambda() * c.lambda(), &c)?;
    let nodes = JacksonNodes::new(&c);
    Ok(Outcome::value(series.abs().max(nodes.hermite_weight[0].abs()).max(nodes.hermite_weight[1].abs())))
}

fn classical_limit(env: &Env) -> Result<Outcome> {
    let c = env.at(1.0 - 1e-6)?;
    Ok(Outcome::value(max_of((0..=5).map(|k| classical_limit_gap(k, &c).relative))))
}

fn hermite_functions_orthonormal(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let nodes = JacksonNodes::new(&c);
    let f = qhermite_functions(env.cfg.modes - 1, &nodes, &c);
    let mut worst: f64 = 0.0;
    for a in &f {
        for b in &f {
            let want = if a.k == b.k { 1.0 } else { 0.0 };
            worst = worst.max((nodes.integrate_product(&a.values, &b.values) - want).abs());
        }
    }
    Ok(Outcome::value(worst))
}

// ---- q-Fock space

fn basis_orthogonality(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut worst: f64 = 0.0;
    for n in 0..=20 {
        let a = FockElement::basis(n, &c);
        let norm = crate::qcore::q_factorial(n, &c);
        for m in 0..=20 {
            let want = if n == m { norm } else { 0.0 };
            worst = worst.max((a.fischer_inner(&FockElement::basis(m, &c)) - want).norm() / norm);
        }
    }
    Ok(Outcome::value(worst))
}

fn fischer_positivity(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut rng = env.rng(9);
    let mut smallest = f64::INFINITY;
    for _ in 0..100 {
        let degree = rng.random_range(0..=10);
        let f = random_fock(&mut rng, degree, &c);
        let n2 = f.norm_sq();
        let c2: f64 = f.coeffs.iter().map(|a| a.norm_sqr()).sum();
        smallest = smallest.min(n2 / c2);
    }
    let mut o = Outcome::value(smallest);
    o.lower_bound = true;
    o.note = Some("smallest <f,f> / sum |a_n|^2 over 100 samples".into());
    Ok(o)
}

fn reproducing(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut rng = env.rng(10);
    let r = 0.99 / (1.0 - c.q());
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let f = random_fock(&mut rng, 8, &c);
        let w = Complex64::from_polar(rng.random_range(0.0..r), rng.random_range(0.0..2.0 * PI));
        let k = kernel_section(w, 40, &c)?;
        let fw = f.eval(w);
        worst = worst.max((f.fischer_inner(&k) - fw).norm() / fw.norm().max(1.0));
    }
    Ok(Outcome::value(worst))
}

fn operators_vs_polynomials(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut rng = env.rng(11);
    let mut worst: f64 = 0.0;
    for n in 0..=10 {
        let e = FockElement::basis(n, &c);
        let p = e.to_poly();
        let pos = crate::qcomplex::position_poly(&p, &c);
        let mom = dz(&p, &c).scale(Complex64::new(0.0, -1.0));
        for _ in 0..5 {
            let z = random_complex(&mut rng, 1.0);
            let scale = z.norm().max(1.0).powi(n as i32 + 1) * q_number(n as f64, &c).max(1.0);
            worst = worst
                .max((e.position().eval(z) - pos.eval(z.re, z.im)).norm() / scale)
                .max((e.momentum().eval(z) - mom.eval(z.re, z.im)).norm() / scale);
        }
    }
    Ok(Outcome::value(worst))
}

fn commutator(env: &Env) -> Result<Outcome> {
    Ok(Outcome::value(max_of((0..=20).map(|n| commutator_check(n, &env.ctx).gap()))))
}

fn adjointness(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut rng = env.rng(12);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let r = random_fock(&mut rng, 10, &c);
        let q = random_fock(&mut rng, 10, &c);
        worst = worst.max(adjoint_check(&r, &q).gap);
    }
    Ok(Outcome::value(worst))
}

fn ladder_not_adjoint(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let g = ladder_adjoint_gap(&FockElement::basis(1, &c), &FockElement::basis(2, &c));
    let mut o = Outcome::value(g.gap);
    o.lower_bound = true;
    o.note = Some("R = z_q, Q = z_q^2".into());
    Ok(o)
}

fn kernel_origin(env: &Env) -> Result<Outcome> {
    let c = env.ctx;
    let mut rng = env.rng(13);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let z = random_complex(&mut rng, 3.0);
        worst = worst.max((kernel_eval(z, Complex64::new(0.0, 0.0), &c)?.value - 1.0).norm());
    }
    Ok(Outcome::value(worst))
}

fn kernel_limit(env: &Env) -> Result<Outcome> {
    let c = env.at(0.999)?;
    let grid: Vec<Complex64> = (0..5)
        .flat_map(|i| (0..5).map(move |j| Complex64::new(-0.35 + 0.175 * i as f64, -0.35 + 0.175 * j as f64)))
        .collect();
    let mut worst: f64 = 0.0;
    for &z in &grid {
        for &w in &grid {
            worst = worst.max((kernel_eval(z, w, &c)?.value - (z * w.conj()).exp()).norm());
        }
    }
    Ok(Outcome::value(worst))
}

// ---- q-Bargmann transform

fn table(env: &Env) -> Result<BargmannKernelTable> {
    BargmannKernelTable::new(env.cfg.modes, &env.ctx)
}

fn bargmann_basis(env: &Env) -> Result<Outcome> {
    let t = table(env)?;
    let mut worst: f64 = 0.0;
    for m in 0..t.modes.min(11) {
        let b = t.forward(&t.hermite_function(m));
        for n in 0..t.modes {
            let want = if n == m { t.fock_scale[m] } else { 0.0 };
            worst = worst.max((b.coeff(n) - want).norm());
        }
    }
    Ok(Outcome::value(worst))
}

fn bargmann_unitarity(env: &Env) -> Result<Outcome> {
    let g = bargmann_unitarity_gram(env.cfg.modes.min(9), &env.ctx)?;
    Ok(Outcome::value(g.deviation.map(|d| d.max_abs).unwrap_or(f64::INFINITY)))
}

fn random_span(rng: &mut ChaCha8Rng, t: &BargmannKernelTable) -> JacksonFunction {
    let mut f = JacksonFunction::zero(&t.nodes);
    for m in 0..t.modes {
        f = f.add(&t.hermite_function(m).scale(random_complex(rng, 1.0)));
    }
    f
}

fn parseval(env: &Env) -> Result<Outcome> {
    let t = table(env)?;
    let mut rng = env.rng(14);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let f = random_span(&mut rng, &t);
        worst = worst.max((t.forward(&f).norm() - f.norm(&t.nodes)).abs());
    }
    Ok(Outcome::value(worst))
}

fn bargmann_linearity(env: &Env) -> Result<Outcome> {
    let t = table(env)?;
    let mut rng = env.rng(15);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let f = JacksonFunction::new((0..t.nodes.len()).map(|_| random_complex(&mut rng, 1.0)).collect());
        let g = JacksonFunction::new((0..t.nodes.len()).map(|_| random_complex(&mut rng, 1.0)).collect());
        let alpha = random_complex(&mut rng, 2.0);
        let joint = t.forward(&f.scale(alpha).add(&g));
        let split = t.forward(&f).scale(alpha).add(&t.forward(&g));
        worst = worst.max(joint.max_abs_diff(&split));
    }
    Ok(Outcome::value(worst))
}

fn coherent_coefficients(env: &Env) -> Result<Outcome> {
    let t = table(env)?;
    let mut rng = env.rng(16);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let z = random_complex(&mut rng, 0.7);
        let phi = t.coherent_state(z);
        for n in 0..t.modes {
            let v = phi.inner(&t.hermite_function(n), &t.nodes);
            worst = worst.max((v - zq_value(n, z, &t.ctx) * t.fock_scale[n]).norm());
        }
    }
    Ok(Outcome::value(worst))
}

fn coherent_overlap(env: &Env) -> Result<Outcome> {
    let t = table(env)?;
    let mut rng = env.rng(17);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let z = random_complex(&mut rng, 0.35);
        let w = random_complex(&mut rng, 0.35);
        let overlap = t.coherent_state(z).inner(&t.coherent_state(w), &t.nodes);
        worst = worst.max((overlap - kernel_eval(z, w, &t.ctx)?.value).norm());
    }
    Ok(Outcome::value(worst))
}

fn tensor_table(env: &Env) -> Result<BargmannKernelTable> {
    BargmannKernelTable::new(env.cfg.modes.min(5), &env.ctx)
}

fn tensor_basis(env: &Env) -> Result<Outcome> {
    let t = tensor_table(env)?;
    let mut worst: f64 = 0.0;
    // off-diagonal pairs only; the diagonal ones are covered by the Gram entry
    for (k, h) in [(0, 4), (1, 3), (4, 2)] {
        if k.max(h) >= t.modes {
            continue;
        }
        let f = TensorJacksonFunction::product(&t.hermite_function(k), &t.hermite_function(h));
        let c = tensor_forward(&f, &t);
        for (i, row) in c.coeffs.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let want = if (i, j) == (k, h) { 1.0 } else { 0.0 };
                worst = worst.max((v - want).norm());
            }
        }
    }
    Ok(Outcome::value(worst))
}

fn tensor_unitarity(env: &Env) -> Result<Outcome> {
    let g = tensor_unitarity_gram(&tensor_table(env)?);
    Ok(Outcome::value(g.deviation.map(|d| d.max_abs).unwrap_or(f64::INFINITY)))
}

fn tensor_factorization(env: &Env) -> Result<Outcome> {
    let t = tensor_table(env)?;
    let mut rng = env.rng(18);
    let u = JacksonFunction::new((0..t.nodes.len()).map(|_| random_complex(&mut rng, 1.0)).collect());
    let v = JacksonFunction::new((0..t.nodes.len()).map(|_| random_complex(&mut rng, 1.0)).collect());
    let joint = tensor_forward(&TensorJacksonFunction::product(&u, &v), &t);
    let split = TensorFockElement::from_product(&t.forward(&u), &t.forward(&v));
    Ok(Outcome::value(joint.max_abs_diff(&split)))
}

const CHECKS: &[Check] = &[
    Check { name: "qcore.bracket-gap", anchor: "[n+1]_q - [n]_q = q^n, n <= 30", tol: 1e-14, body: bracket_gap },
    Check { name: "qcore.q-number-sum", anchor: "[n]_q = sum_{m<n} q^m, n <= 50", tol: 1e-12, body: q_number_sum },
    Check { name: "qcore.q-number-limit", anchor: "|[n]_q - n| / n -> 0 at q = 1 - 1e-6, n <= 20", tol: 1e-4, body: q_number_limit },
    Check { name: "qcore.q-binomial-pascal", anchor: "[n,k]_q = [n-1,k-1]_q + q^k [n-1,k]_q", tol: 1e-12, body: binomial_pascal },
    Check { name: "qcore.jackson-ftc", anchor: "int_a^b D_q p d_q t = p(b) - p(a), deg p <= 8", tol: 1e-9, body: jackson_ftc },
    Check { name: "qcore.q-exp-inverse", anchor: "E_q(t) e_q(-t) = 1", tol: 1e-8, body: exp_inverse },
    Check { name: "qcore.q-exp-derivative", anchor: "D_q E_q = E_q, D_q e_q(x) = e_q(q x)", tol: 1e-8, body: exp_derivative },
    Check { name: "qcore.q-exp-zeros", anchor: "e_q(q^-k/(q-1)) = 0, k <= 3", tol: 1e-6, body: exp_zeros },
    Check { name: "qcore.gamma-functional", anchor: "Gamma_q(t+1) = [t]_q Gamma_q(t)", tol: 1e-9, body: gamma_functional },
    Check { name: "qcore.gamma-integral", anchor: "Gamma_q(z) = int_0^{1/(1-q)} t^(z-1) e_q(-q t) d_q t", tol: 1e-5, body: gamma_integral },
    Check { name: "qcore.gamma-moment", anchor: "int t^(nu-1) e_{q^2}(-t^2) d_q t = 2/(q+1) q^nu Gamma_{q^2}(nu/2), nu = 1,3,5", tol: 1e-5, body: gamma_moment },
    Check { name: "qcore.gamma-moment-even", anchor: "moment identity at even nu", tol: 1e-5, body: gamma_moment_even },
    Check { name: "qcomplex.dzbar-annihilates", anchor: "D_zbar z_q^n = 0, n <= 30", tol: 1e-12, body: dzbar_annihilates },
    Check { name: "qcomplex.dz-lowers", anchor: "D_z z_q^n = [n]_q z_q^(n-1), n <= 30", tol: 1e-12, body: dz_lowers },
    Check { name: "qcomplex.derivative-linearity", anchor: "D_z(a f + g) = a D_z f + D_z g", tol: 1e-12, body: derivative_linearity },
    Check { name: "qcomplex.expansion-vs-product", anchor: "z_q^(n+1) = z sum C_ij z^i zbar^j, n <= 12", tol: 1e-12, body: expansion_vs_product },
    Check { name: "qcomplex.expansion-sum", anchor: "sum_{i+j=n} C_ij = 1, n <= 15", tol: 1e-12, body: expansion_sum },
    Check { name: "qcomplex.modulus-domination", anchor: "|z_q^n| <= |z|^n", tol: 1e-12, body: domination },
    Check { name: "qcomplex.bivariate-roundtrip", anchor: "p(x, y) -> p(z, zbar) -> p(x, y)", tol: 1e-12, body: bivar_roundtrip },
    Check { name: "qcomplex.hermite-orthogonality", anchor: "<H_pr, H_mn> = pi p! r! d_pm d_rn, p,r,m,n <= 6", tol: 1e-12, body: complex_hermite_orthogonality },
    Check { name: "qcomplex.hermite-roundtrip", anchor: "z^p zbar^r -> sum c H_ij -> z^p zbar^r, p+r <= 6", tol: 1e-10, body: hermite_roundtrip },
    Check { name: "qcomplex.mixed-gram-rank", anchor: "trace / min eig of Gram{z_q^k zbar_q^h : k+h <= N}, N <= 6", tol: 1e10, body: mixed_gram_rank },
    Check { name: "qcomplex.mixed-gram-limit", anchor: "Gram{z_q^k zbar_q^h} -> Gram{z^k zbar^h} at q = 0.999, N = 3, scaled entrywise", tol: 1e-2, body: mixed_gram_limit },
    Check { name: "qcomplex.elliptic-independence", anchor: "trace / min eig of Gram{w^j wbar^k : j+k = n}, w = x + i p y", tol: 1e10, body: elliptic_independence },
    Check { name: "qcomplex.grid-count", anchor: "|seeds| (depth+1)^2 points before deduplication", tol: 0.5, body: grid_count },
    Check { name: "qhermite.explicit-vs-recurrence", anchor: "closed-form a_k^j = three-term recurrence, k <= 12", tol: 1e-10, body: explicit_vs_recurrence },
    Check { name: "qhermite.annihilation", anchor: "D_q H_k = (q+1) [k]_q H_(k-1), k <= 10", tol: 1e-10, body: annihilation },
    Check { name: "qhermite.creation", anchor: "H_k = ((q+1)t - q^k D_q) H_(k-1), H_k(qt) = q^k ((q+1)t - D_q) H_(k-1)", tol: 1e-10, body: creation },
    Check { name: "qhermite.eigen-equation", anchor: "(D_q^2 - (q+1) t D_q) H_k = -(q+1) [k]_q q^-k H_k(q t)", tol: 1e-9, body: eigen_equation },
    Check { name: "qhermite.parity", anchor: "H_k(-t) = (-1)^k H_k(t)", tol: 1e-15, body: parity },
    Check { name: "qhermite.orthogonality", anchor: "int H_k H_l e_{q^2}(-t^2) d_q t = d_kl Lambda_k, k,l <= 8", tol: 1e-6, body: hermite_orthogonality },
    Check { name: "qhermite.weight-relation", anchor: "H_k(qt) e_{q^2}(-q^2 t^2) = -q^k D_q[H_(k-1) e_{q^2}(-t^2)]", tol: 1e-7, body: weight_relation },
    Check { name: "qhermite.weight-endpoint", anchor: "e_{q^2}(-lambda^2) = 0", tol: 1e-6, body: weight_endpoint },
    Check { name: "qhermite.classical-limit", anchor: "H_k -> physicists' Hermite at q = 1 - 1e-6, k <= 5", tol: 1e-3, body: classical_limit },
    Check { name: "qhermite.functions-orthonormal", anchor: "int H~_k H~_l d_q t = d_kl, k,l < M", tol: 1e-6, body: hermite_functions_orthonormal },
    Check { name: "qfock.basis-orthogonality", anchor: "<z_q^n, z_q^m>_F = [n]_q! d_nm, n,m <= 20", tol: 1e-14, body: basis_orthogonality },
    Check { name: "qfock.fischer-positivity", anchor: "<f, f>_F > 0 for f != 0", tol: 0.0, body: fischer_positivity },
    Check { name: "qfock.reproducing", anchor: "<f, K_q(., w)>_F = f(w_q)", tol: 1e-8, body: reproducing },
    Check { name: "qfock.operators-vs-polynomials", anchor: "X_q = z o M_q^y, P_q = -i D_z on z_q^n, n <= 10", tol: 1e-12, body: operators_vs_polynomials },
    Check { name: "qfock.commutator", anchor: "[a, a+] z_q^n = [D_z, X_q] z_q^n = q^n z_q^n, n <= 20", tol: 1e-12, body: commutator },
    Check { name: "qfock.adjoint", anchor: "<D_z R, Q>_F = <R, X_q Q>_F", tol: 1e-10, body: adjointness },
    Check { name: "qfock.ladder-not-adjoint", anchor: "<a R, Q>_F != <R, a+ Q>_F", tol: 1e-3, body: ladder_not_adjoint },
    Check { name: "qfock.kernel-origin", anchor: "K_q(z, 0) = 1", tol: 1e-15, body: kernel_origin },
    Check { name: "qfock.kernel-limit", anchor: "K_q(z, w) -> exp(z wbar) at q = 0.999, |z|,|w| <= 0.5", tol: 1e-3, body: kernel_limit },
    Check { name: "qbargmann.basis-images", anchor: "B_q H~_m = z_q^m / sqrt([m]_q!), m <= 10", tol: 1e-7, body: bargmann_basis },
    Check { name: "qbargmann.unitarity", anchor: "<B_q H~_m, B_q H~_n>_F = d_mn, m,n <= 8", tol: 1e-7, body: bargmann_unitarity },
    Check { name: "qbargmann.parseval", anchor: "||B_q f||_F = ||f||_{L^2_q} on span{H~_m : m < M}", tol: 1e-7, body: parseval },
    Check { name: "qbargmann.linearity", anchor: "B_q(a f + g) = a B_q f + B_q g", tol: 1e-10, body: bargmann_linearity },
    Check { name: "qbargmann.coherent-coefficients", anchor: "<Phi_z, H~_n> = z_q^n / sqrt([n]_q!)", tol: 1e-7, body: coherent_coefficients },
    Check { name: "qbargmann.coherent-overlap", anchor: "<Phi_z, Phi_w> = K_q(z, w)", tol: 1e-6, body: coherent_overlap },
    Check { name: "qbargmann.tensor-basis", anchor: "B_q2(H~_k (x) H~_h) = e_kh", tol: 1e-7, body: tensor_basis },
    Check { name: "qbargmann.tensor-unitarity", anchor: "Gram of B_q2(H~_k (x) H~_h), k,h <= 4, is the identity", tol: 1e-6, body: tensor_unitarity },
    Check { name: "qbargmann.tensor-factorization", anchor: "B_q2(u (x) v) = B_q u (x) B_q v", tol: 1e-8, body: tensor_factorization },
];

/// Names of all suite entries, sorted.
pub fn suite_entry_names() -> Vec<&'static str> {
    let mut v: Vec<_> = CHECKS.iter().map(|c| c.name).collect();
    v.sort_unstable();
    v
}

fn run_check(check: &Check, env: &Env) -> SuiteEntry {
    let tol = env.cfg.tol.unwrap_or(check.tol);
    let (residual, pass, note) = match (check.body)(env) {
        Ok(o) => {
            let pass = match o.residual {
                None => true,
                Some(r) if o.lower_bound => r > tol,
                Some(r) => r <= tol,
            };
            let note = match (o.lower_bound, o.note) {
                (true, Some(n)) => Some(format!("lower bound; {n}")),
                (true, None) => Some("lower bound".into()),
                (false, n) => n.or_else(|| o.residual.is_none().then(|| "skipped".into())),
            };
            (o.residual, pass, note)
        }
        Err(e) => (None, false, Some(format!("error: {e}"))),
    };
    SuiteEntry { name: check.name.into(), anchor: check.anchor.into(), residual, tol, pass, note }
}

/// Run every identity check. Entries run on scoped threads; the report is
/// sorted by name and independent of scheduling.
pub fn run_verification(cfg: &RunConfig) -> Result<VerificationSuiteResult> {
    let cfg = cfg.validated()?;
    let env = Env { cfg, ctx: cfg.context()? };
    let mut results: Vec<SuiteEntry> = std::thread::scope(|s| {
        let handles: Vec<_> = CHECKS.iter().map(|c| s.spawn(|| run_check(c, &env))).collect();
        handles.into_iter().map(|h| h.join().expect("suite entry panicked")).collect()
    });
    results.sort_by(|a, b| a.name.cmp(&b.name));
    let pass = results.iter().all(|e| e.pass);
    Ok(VerificationSuiteResult { config: cfg, results, pass })
}

/// Run the entries whose name starts with `prefix`.
pub fn run_verification_subset(cfg: &RunConfig, prefix: &str) -> Result<VerificationSuiteResult> {
    let cfg = cfg.validated()?;
    let env = Env { cfg, ctx: cfg.context()? };
    let mut results: Vec<SuiteEntry> = CHECKS
        .iter()
        .filter(|c| c.name.starts_with(prefix))
        .map(|c| run_check(c, &env))
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    let pass = results.iter().all(|e| e.pass);
    Ok(VerificationSuiteResult { config: cfg, results, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        let names = suite_entry_names();
        let mut d = names.clone();
        d.dedup();
        assert_eq!(names.len(), d.len());
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig { q: 1.0, ..RunConfig::default() }.validated().is_err());
        assert!(RunConfig { modes: 0, ..RunConfig::default() }.validated().is_err());
        assert!(RunConfig { tol: Some(-1.0), ..RunConfig::default() }.validated().is_err());
        let json = r#"{"q": 0.3, "format": "json"}"#;
        let c: RunConfig = serde_json::from_str(json).unwrap();
        assert_eq!((c.q, c.modes, c.format), (0.3, 16, OutputFormat::Json));
    }

    #[test]
    fn scalar_entries_pass() {
        let r = run_verification_subset(&RunConfig::default(), "qcore").unwrap();
        for e in &r.results {
            assert!(e.pass, "{e:?}");
        }
        let skipped = r.results.iter().find(|e| e.name == "qcore.gamma-moment-even").unwrap();
        assert!(skipped.residual.is_none() && skipped.note.as_deref().unwrap().contains("even"));
    }
}
