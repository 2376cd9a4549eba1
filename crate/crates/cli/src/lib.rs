//! Command-line front end for `riemcurv`.
//!
//! Exit codes: 0 on success, 1 when a verification suite fails, 2 on usage
//! or input errors, 3 when a conversion needs an invertible curvature and
//! `lambda = 0` was given.

pub mod render;
pub mod spec;

use std::fmt;

use clap::{Parser, Subcommand, ValueEnum};
use riemcurv::hermitian::{self, c_from_tilde, lk_in_tilde_delta, t_lambda_act_closed, tilde_from_c};
use riemcurv::riemannian::lk_normalization;
use riemcurv::sphere::{self, globalize_on_sphere, sphere_intrinsic_volumes, Curvature};
use riemcurv::verify::{self, SuiteReport};
use riemcurv::{ExactScalar, HermitianBasis, HermitianElement, RElement, Rat, RelBasis};

use render::{pretty, series_to_json_string, ElementView, TableView};
use spec::{parse_element, Element};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<riemcurv::Error> for CliError {
    fn from(e: riemcurv::Error) -> Self {
        match e {
            riemcurv::Error::SingularCurvature => CliError::Domain(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Curvature parameter: the symbol `lambda` or an exact rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaArg {
    Symbolic,
    Value(Rat),
}

impl LambdaArg {
    pub fn scalar(&self) -> ExactScalar {
        self.curvature().as_scalar()
    }

    pub fn curvature(&self) -> Curvature {
        match self {
            LambdaArg::Symbolic => Curvature::Symbolic,
            LambdaArg::Value(v) => Curvature::Value(v.clone()),
        }
    }

    /// The curvature as an invertible scalar, for the hermitian conversions.
    fn invertible(&self) -> Result<ExactScalar, CliError> {
        let s = self.scalar();
        if s.is_zero() {
            return Err(CliError::Domain(
                "the hermitian basis change needs lambda != 0".into(),
            ));
        }
        Ok(s)
    }
}

impl fmt::Display for LambdaArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaArg::Symbolic => f.write_str("symbolic"),
            LambdaArg::Value(v) => write!(f, "{v}"),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rat, String> {
    let v: ExactScalar = s.parse().map_err(|e| format!("{e}"))?;
    v.as_rat().ok_or_else(|| format!("`{s}` is not a rational number"))
}

fn parse_lambda(s: &str) -> Result<LambdaArg, String> {
    if s == "symbolic" {
        return Ok(LambdaArg::Symbolic);
    }
    parse_rational(s).map(LambdaArg::Value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    /// The generating series as JSON (elements stored as series only).
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExpandKind {
    Lk,
    LkNormalized,
    Basis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetBasis {
    C,
    Gamma,
    Tau,
    TildeDelta,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    /// `phi^k` in the `tau` basis.
    PhiTau,
    /// `t^k` in the `tau` basis.
    TTau,
    /// `t^k` in the `phi` basis.
    TPhi,
    /// `TD_kp` in the `C` basis, per degree.
    TildeC,
    /// `C_kp` in the `TD` basis, per degree.
    CTilde,
}

#[derive(Debug, Parser)]
#[command(name = "riemcurv", version, about = "Exact calculus of Riemannian curvature measures")]
pub struct Cli {
    /// Truncation order: every coefficient of degree <= N is exact.
    #[arg(
        long,
        global = true,
        env = "RIEMCURV_ORDER",
        default_value_t = 12,
        value_parser = clap::value_parser!(u32).range(1..)
    )]
    pub order: u32,

    /// Curvature: `symbolic` or a rational such as `1` or `3/4`.
    #[arg(long, global = true, default_value = "symbolic", value_parser = parse_lambda)]
    pub lambda: LambdaArg,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a Lipschitz-Killing element or a basis element.
    Expand {
        #[arg(value_enum)]
        kind: ExpandKind,
        #[arg(long)]
        k: u32,
        /// Second index, for `basis`.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, value_enum, default_value_t = TargetBasis::C)]
        basis: TargetBasis,
    },
    /// Apply `t`, `t^i` or the hermitian `t_lambda` to an element.
    Act {
        #[command(subcommand)]
        action: Action,
    },
    /// Rewrite an element in another basis.
    Convert {
        /// Element spec, e.g. `C:3,1` or `1/2*TD:2,1 + TD:2,0`.
        #[arg(long)]
        on: String,
        #[arg(long, value_enum)]
        to: TargetBasis,
    },
    /// Run verification suites (all by default).
    Verify {
        #[arg(long = "suite", value_delimiter = ',')]
        suites: Vec<String>,
    },
    /// Intrinsic volumes of the round n-sphere of radius R.
    OracleMu {
        #[arg(long)]
        n: u32,
        #[arg(long = "R", value_parser = parse_rational)]
        radius: Rat,
    },
    /// Conversion tables up to the truncation order.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        /// Restrict hermitian tables to one degree.
        #[arg(long)]
        k: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Action {
    /// Multiplication by `t` on the `C` basis.
    T {
        #[arg(long)]
        on: String,
    },
    /// Multiplication by `t^i` on the `C` basis.
    TPower {
        i: u32,
        #[arg(long)]
        on: String,
    },
    /// Multiplication by `t` on the hermitian `TD` or `D` basis.
    TLambda {
        #[arg(long)]
        on: String,
    },
}

/// Rendered output and whether the command succeeded.
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            success: true,
        }
    }
}

/// An element ready for rendering, with its generating series if it has one.
struct Rendered {
    view: ElementView,
    series: Option<riemcurv::GradedSeries>,
}

impl Rendered {
    fn r(e: &RElement) -> Self {
        Rendered {
            view: ElementView::from_r(e),
            series: Some(e.series().clone()),
        }
    }

    fn hermitian(e: &HermitianElement) -> Self {
        Rendered {
            view: ElementView::from_hermitian(e),
            series: None,
        }
    }

    fn element(e: &Element) -> Self {
        match e {
            Element::Riemannian(r) => Self::r(r),
            Element::Relative(r) => Rendered {
                view: ElementView::from_rel(r),
                series: Some(r.series().clone()),
            },
            Element::Hermitian(h) => Self::hermitian(h),
        }
    }

    fn sphere(e: &riemcurv::SphereElement, lambda: &LambdaArg) -> Result<Self, CliError> {
        let curvature = lambda.curvature();
        let view = ElementView::from_sphere(e).try_map_coefficients(|c| curvature.specialize(c))?;
        let series = match lambda {
            LambdaArg::Symbolic => Some(e.to_series()),
            LambdaArg::Value(_) => None,
        };
        Ok(Rendered { view, series })
    }

    fn emit(&self, format: Format) -> Result<String, CliError> {
        Ok(match format {
            Format::Text => format!("{}\n", self.view.to_text()),
            Format::Json => self.view.to_json(),
            Format::Csv => self.view.to_csv(),
            Format::Series => match &self.series {
                Some(s) => series_to_json_string(s),
                None => {
                    return Err(CliError::Usage(format!(
                        "no series form for the {} basis here",
                        self.view.basis
                    )))
                }
            },
        })
    }
}

fn expect_r(e: Element, what: &str) -> Result<RElement, CliError> {
    match e {
        Element::Riemannian(r) => Ok(r),
        _ => Err(CliError::Usage(format!("{what} needs an element of the C basis (C:k,p)"))),
    }
}

fn r_in_basis(e: &RElement, basis: TargetBasis, lambda: &LambdaArg) -> Result<Rendered, CliError> {
    match basis {
        TargetBasis::C => Ok(Rendered::r(e)),
        TargetBasis::Tau => Rendered::sphere(&globalize_on_sphere(e), lambda),
        TargetBasis::TildeDelta => Ok(Rendered::hermitian(&tilde_from_c(e, &lambda.invertible()?)?)),
        TargetBasis::Delta => {
            let t = tilde_from_c(e, &lambda.invertible()?)?;
            Ok(Rendered::hermitian(&t.tilde_to_delta()?))
        }
        TargetBasis::Gamma => Err(CliError::Usage(
            "the Gamma basis is for relative measures (C:k,p,l)".into(),
        )),
    }
}

fn cmd_expand(
    cli: &Cli,
    kind: ExpandKind,
    k: u32,
    p: Option<u32>,
    basis: TargetBasis,
) -> Result<Rendered, CliError> {
    let n = cli.order;
    match kind {
        ExpandKind::Basis => {
            let p = p.ok_or_else(|| CliError::Usage("`expand basis` needs --p".into()))?;
            let e = RElement::basis_element(k, p, n)?;
            r_in_basis(&e, basis, &cli.lambda)
        }
        ExpandKind::Lk | ExpandKind::LkNormalized => {
            let scale = match kind {
                ExpandKind::LkNormalized => lk_normalization(k),
                _ => ExactScalar::one(),
            };
            if basis == TargetBasis::TildeDelta {
                let lambda = cli.lambda.invertible()?;
                return Ok(Rendered::hermitian(&lk_in_tilde_delta(k, &lambda, n).scale(&scale)));
            }
            r_in_basis(&RElement::lk_bar(k, n).scale(&scale), basis, &cli.lambda)
        }
    }
}

fn cmd_act(cli: &Cli, action: &Action) -> Result<Rendered, CliError> {
    let n = cli.order;
    match action {
        Action::T { on } => Ok(Rendered::r(&expect_r(parse_element(on, n)?, "t")?.t_act())),
        Action::TPower { i, on } => {
            Ok(Rendered::r(&expect_r(parse_element(on, n)?, "t-power")?.t_power_act(*i)))
        }
        Action::TLambda { on } => {
            let Element::Hermitian(e) = parse_element(on, n)? else {
                return Err(CliError::Usage("t-lambda needs a TD or D element".into()));
            };
            let lambda = cli.lambda.invertible()?;
            match e.basis() {
                HermitianBasis::TildeDelta => {
                    Ok(Rendered::hermitian(&t_lambda_act_closed(&e, &lambda)?))
                }
                HermitianBasis::Delta => {
                    let t = t_lambda_act_closed(&e.delta_to_tilde()?, &lambda)?;
                    Ok(Rendered::hermitian(&t.tilde_to_delta()?))
                }
            }
        }
    }
}

fn cmd_convert(cli: &Cli, on: &str, to: TargetBasis) -> Result<Rendered, CliError> {
    let e = parse_element(on, cli.order)?;
    let unsupported = |from: &str| {
        Err(CliError::Usage(format!("cannot convert a {from} element to {to:?}")))
    };
    match e {
        Element::Riemannian(r) => r_in_basis(&r, to, &cli.lambda),
        Element::Relative(r) => match (r.basis(), to) {
            (RelBasis::C, TargetBasis::C) | (RelBasis::Gamma, TargetBasis::Gamma) => {
                Ok(Rendered::element(&Element::Relative(r)))
            }
            (RelBasis::C, TargetBasis::Gamma) => {
                Ok(Rendered::element(&Element::Relative(r.c_to_gamma()?)))
            }
            (RelBasis::Gamma, TargetBasis::C) => {
                Ok(Rendered::element(&Element::Relative(r.gamma_to_c()?)))
            }
            _ => unsupported("relative"),
        },
        Element::Hermitian(h) => {
            let tilde = match h.basis() {
                HermitianBasis::TildeDelta => h.clone(),
                HermitianBasis::Delta => h.delta_to_tilde()?,
            };
            match to {
                TargetBasis::TildeDelta => Ok(Rendered::hermitian(&tilde)),
                TargetBasis::Delta => Ok(Rendered::hermitian(&tilde.tilde_to_delta()?)),
                TargetBasis::C => Ok(Rendered::r(&c_from_tilde(&tilde, &cli.lambda.invertible()?)?)),
                _ => unsupported("hermitian"),
            }
        }
    }
}

/// Runs the suites concurrently; the report keeps the requested order.
pub fn run_suites(names: &[String], order: u32) -> Result<Vec<SuiteReport>, CliError> {
    for name in names {
        if !verify::SUITES.contains(&name.as_str()) {
            return Err(CliError::Usage(format!(
                "unknown suite `{name}`; available: {}",
                verify::SUITES.join(", ")
            )));
        }
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|name| scope.spawn(move || verify::run_suite(name, order)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked").map_err(CliError::from))
            .collect()
    })
}

fn report_json(reports: &[SuiteReport]) -> String {
    let suites: Vec<_> = reports
        .iter()
        .map(|r| {
            let checks: Vec<_> = r
                .checks
                .iter()
                .map(|c| serde_json::json!({"label": c.label, "passed": c.passed, "detail": c.detail}))
                .collect();
            serde_json::json!({"suite": r.name, "order": r.order, "passed": r.passed(), "checks": checks})
        })
        .collect();
    pretty(&serde_json::json!({
        "passed": reports.iter().all(SuiteReport::passed),
        "suites": suites,
    }))
}

fn report_text(reports: &[SuiteReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let ok = r.checks.iter().filter(|c| c.passed).count();
        let status = if r.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{status} {} (order {}): {ok}/{} checks\n",
            r.name,
            r.order,
            r.checks.len()
        ));
        for c in r.failures() {
            out.push_str(&format!("  failed: {}: {}\n", c.label, c.detail.as_deref().unwrap_or("")));
        }
    }
    out
}

fn report_csv(reports: &[SuiteReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["suite", "order", "label", "passed", "detail"]).expect("in-memory write");
    for r in reports {
        for c in &r.checks {
            w.write_record([
                r.name.as_str(),
                &r.order.to_string(),
                &c.label,
                if c.passed { "true" } else { "false" },
                c.detail.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

fn cmd_verify(cli: &Cli, suites: &[String]) -> Result<Outcome, CliError> {
    let names: Vec<String> = if suites.is_empty() || suites.iter().any(|s| s == "all") {
        verify::SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        suites.to_vec()
    };
    let reports = run_suites(&names, cli.order)?;
    let output = match cli.format {
        Format::Text => report_text(&reports),
        Format::Json => report_json(&reports),
        Format::Csv => report_csv(&reports),
        Format::Series => return Err(CliError::Usage("verify has no series output".into())),
    };
    Ok(Outcome {
        output,
        success: reports.iter().all(SuiteReport::passed),
    })
}

fn cmd_oracle_mu(format: Format, n: u32, radius: &Rat) -> Result<String, CliError> {
    if *radius <= riemcurv::scalar::int(0) {
        return Err(CliError::Usage("the radius R must be positive".into()));
    }
    let mu = sphere_intrinsic_volumes(n, &ExactScalar::from_rat(radius.clone()));
    Ok(match format {
        Format::Text => (0..=n).map(|j| format!("mu_{j} = {}\n", mu.get(j))).collect(),
        Format::Json => {
            let values: Vec<_> = (0..=n)
                .map(|j| serde_json::json!({"j": j, "value": mu.get(j).to_string()}))
                .collect();
            pretty(&serde_json::json!({"n": n, "R": radius.to_string(), "mu": values}))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["j", "coeff_rational", "pi_exp", "lambda_half_exp"])
                .expect("in-memory write");
            for j in 0..=n {
                for (pi, lh, c) in mu.get(j).terms() {
                    w.write_record([j.to_string(), c.to_string(), pi.to_string(), lh.to_string()])
                        .expect("in-memory write");
                }
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
        }
        Format::Series => return Err(CliError::Usage("oracle-mu has no series output".into())),
    })
}

fn cmd_table(cli: &Cli, kind: TableKind, only: Option<u32>) -> Result<String, CliError> {
    let n = cli.order;
    let lambda = &cli.lambda;
    let curvature = lambda.curvature();
    let specialize = |v: ElementView| v.try_map_coefficients(|c| curvature.specialize(c));
    let degrees: Vec<u32> = match only {
        Some(k) if k > n => {
            return Err(CliError::Usage(format!("degree {k} exceeds the truncation order {n}")))
        }
        Some(k) => vec![k],
        None => (0..=n).collect(),
    };
    let mut rows = Vec::new();
    let name = match kind {
        TableKind::PhiTau => {
            for (k, e) in sphere::phi_to_tau_table(n).iter().enumerate() {
                rows.push((format!("phi^{k}"), specialize(ElementView::from_sphere(e))?));
            }
            "phi-tau"
        }
        TableKind::TTau => {
            for (k, e) in sphere::t_to_tau_table(n).iter().enumerate() {
                rows.push((format!("t^{k}"), specialize(ElementView::from_sphere(e))?));
            }
            "t-tau"
        }
        TableKind::TPhi => {
            for (k, f) in sphere::t_to_phi_table(n).iter().enumerate() {
                rows.push((format!("t^{k}"), specialize(ElementView::from_univariate("phi", f))?));
            }
            "t-phi"
        }
        TableKind::TildeC => {
            let l = lambda.invertible()?;
            for k in degrees {
                for p in 0..=k / 2 {
                    let td = HermitianElement::basis_element(k, p, HermitianBasis::TildeDelta, n)?;
                    rows.push((format!("TD[{k},{p}]"), ElementView::from_r(&c_from_tilde(&td, &l)?)));
                }
                if !hermitian::is_unitriangular_shape(&hermitian::tilde_to_c_matrix(k, &l)?) {
                    return Err(CliError::Domain(format!("degree {k} matrix is singular")));
                }
            }
            "tilde-c"
        }
        TableKind::CTilde => {
            let l = lambda.invertible()?;
            for k in degrees {
                for j in 0..=k / 2 {
                    let c = RElement::basis_element(k, j, n)?;
                    rows.push((format!("C[{k},{j}]"), ElementView::from_hermitian(&tilde_from_c(&c, &l)?)));
                }
            }
            "c-tilde"
        }
    };
    let table = TableView {
        name: name.into(),
        order: n,
        lambda: lambda.to_string(),
        rows,
    };
    Ok(match cli.format {
        Format::Text => table.to_text(),
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
        Format::Series => return Err(CliError::Usage("tables have no series output".into())),
    })
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Expand { kind, k, p, basis } => {
            let r = cmd_expand(cli, *kind, *k, *p, *basis)?;
            Ok(Outcome::ok(r.emit(cli.format)?))
        }
        Command::Act { action } => Ok(Outcome::ok(cmd_act(cli, action)?.emit(cli.format)?)),
        Command::Convert { on, to } => Ok(Outcome::ok(cmd_convert(cli, on, *to)?.emit(cli.format)?)),
        Command::Verify { suites } => cmd_verify(cli, suites),
        Command::OracleMu { n, radius } => Ok(Outcome::ok(cmd_oracle_mu(cli.format, *n, radius)?)),
        Command::Table { kind, k } => Ok(Outcome::ok(cmd_table(cli, *kind, *k)?)),
    }
}
