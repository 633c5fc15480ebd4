mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use weylriordan::flows::{
    check_group_law, conjugacy_prefunction, lambda_samples, prefunction_general, substitution_factor,
    verify_equiv, EquivReport, Flow, Variant,
};
use weylriordan::rational::{format_rational, int, parse_rational};
use weylriordan::riordan::{named, RiordanArray, Triangle};
use weylriordan::series::counting::{self, CountingFamily};
use weylriordan::striped::{
    self, qmul, sg_assoc_report, sgmul, weak_assoc_witness, AssocReport, GClass, StripedElement,
    WeakAssocReport,
};
use weylriordan::weyl::{gen_stirling, parse_omega, parse_word, GSTable, Mode, NormalForm};
use weylriordan::{Error, Rational, RefSeq, Series};

use output::{csv_rows, emit, join, table, verdict, Format, Render};

#[derive(Parser)]
#[command(name = "weylriordan", version, about = "Normal ordering, Stirling tables, flows and Riordan arrays over exact rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Truncation order of every series.
    #[arg(long, global = true, default_value_t = 32)]
    trunc: usize,
    /// Flow parameter.
    #[arg(long, global = true, default_value = "1/7", value_parser = rational_arg)]
    lambda: Rational,
    /// Reference sequence for user-supplied arrays.
    #[arg(long = "ref", global = true, value_enum, default_value_t = RefArg::Ogf)]
    refseq: RefArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum RefArg {
    Ogf,
    Egf,
}

impl RefArg {
    fn seq(self) -> RefSeq {
        match self {
            RefArg::Ogf => RefSeq::Ordinary,
            RefArg::Egf => RefSeq::Exponential,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Normal-order a boson word such as "a a+^2".
    Order {
        word: String,
        /// Keep the central element instead of setting it to 1.
        #[arg(long)]
        central: bool,
    },
    /// Generalized Stirling table of an operator such as "X2D + X".
    Stirling {
        omega: String,
        /// Last row.
        #[arg(long, default_value_t = 6)]
        n: usize,
    },
    /// Triangle of a named array (pascal, pascal-exp, stirling1, stirling2,
    /// identity) or of `custom` with --g and --f.
    Riordan {
        spec: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Coefficients of g, e.g. "1,1/2,3".
        #[arg(long, value_parser = rational_list)]
        g: Option<Coeffs>,
        /// Coefficients of f, starting with 0.
        #[arg(long, value_parser = rational_list)]
        f: Option<Coeffs>,
        /// Append the A- and Z-sequences.
        #[arg(long)]
        az: bool,
    },
    /// Integrate a one-parameter group into a substitution with prefunction.
    Flow {
        #[command(subcommand)]
        kind: FlowKind,
    },
    /// Striped arrays and their products.
    Striped {
        #[command(subcommand)]
        op: StripedOp,
    },
    /// Counting sequences n! [z^n] (1 - a z^e)^(-b), by product formula and by
    /// series expansion, against the listed prefixes.
    Seq {
        /// One of d1, d2, d3, quad, even.
        family: Option<String>,
        /// Use (1 - d z)^(-1/d) instead of a listed family.
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Cross-module checks.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum FlowKind {
    /// exp(lambda x^n d/dx): the substitution alone.
    Subst {
        #[arg(long)]
        n: i64,
    },
    /// exp(lambda x^r (x^(n-1) (x d/dx + r)) x^(-r)) by conjugacy.
    Conj {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "0", value_parser = rational_arg)]
        r: Rational,
    },
    /// The flow of the bracket of x^k (x d/dx + r) and x^l (x d/dx + s).
    Bracket {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_parser = rational_arg)]
        r: Rational,
        #[arg(long, value_parser = rational_arg)]
        s: Rational,
        /// Use the scalar part -(rk + sl).
        #[arg(long)]
        minus: bool,
    },
}

#[derive(Subcommand)]
enum StripedOp {
    /// Rows of (g^rho, x g) with g = (1 - mu n lambda x^n)^(-1/n).
    Materialize {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        rho: Rational,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        mu: Rational,
        #[arg(long, default_value_t = 8)]
        rows: usize,
    },
    /// Quasigroup product of two elements given as "n,rho,mu".
    Qmul { a: String, b: String },
    /// Both nestings of three elements under the quasigroup product.
    Witness { a: String, b: String, c: String },
    /// Semigroup product of classes "n,rho,mu"; a third class reports
    /// both nestings.
    Sgmul {
        a: String,
        b: String,
        c: Option<String>,
    },
}

#[derive(Clone, Subcommand)]
enum Suite {
    /// Stirling table as Sheffer matrix versus the action of exp(lambda w).
    Prop45 {
        #[arg(long)]
        omega: String,
        #[arg(long, default_value_t = 5)]
        pmax: usize,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
    /// Group law of the conjugacy flow on trunc+1 parameter samples.
    Grouplaw {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value = "0", value_parser = rational_arg)]
        r: Rational,
    },
    /// Stripe condition of the generator of stripe n and of its products.
    Stripe {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1", value_parser = rational_arg)]
        rho: Rational,
    },
    /// The standard weak-associativity witness (1,1), (2,1), (4,1).
    Witness,
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text.trim()).map_err(|e| e.to_string())
}

/// A comma-separated coefficient list, kept as one argument value.
#[derive(Clone)]
struct Coeffs(Vec<Rational>);

fn rational_list(text: &str) -> Result<Coeffs, String> {
    text.split(',').map(rational_arg).collect::<Result<_, _>>().map(Coeffs)
}

fn element(text: &str, lambda: &Rational) -> Result<StripedElement, Error> {
    let parts: Vec<&str> = text.split(',').collect();
    let [n, rho, mu] = parts[..] else {
        return Err(Error::Invalid(format!("expected n,rho,mu but got {text:?}")));
    };
    let n = n
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("bad stripe {n:?}")))?;
    StripedElement::new(n, parse_rational(rho.trim())?, parse_rational(mu.trim())?, lambda.clone())
}

fn class(text: &str) -> Result<GClass, Error> {
    let e = element(text, &int(1))?;
    Ok(GClass { n: e.n, rho: e.rho, mu: e.mu })
}

impl Render for NormalForm {
    fn pretty(&self) -> String {
        self.to_string()
    }

    fn csv(&self) -> String {
        let mut out = String::from("i,j,m,coeff\n");
        for (&(i, j, m), c) in self.terms().iter().rev() {
            out += &format!("{i},{j},{m},{}\n", format_rational(c));
        }
        out
    }
}

impl Render for GSTable {
    fn pretty(&self) -> String {
        table(self.rows())
    }

    fn csv(&self) -> String {
        csv_rows(self.rows())
    }
}

#[derive(Serialize)]
struct AzOut {
    a: Series,
    z: Series,
}

#[derive(Serialize)]
struct RiordanOut {
    #[serde(flatten)]
    triangle: Triangle,
    #[serde(skip_serializing_if = "Option::is_none", flatten)]
    az: Option<AzOut>,
}

impl Render for RiordanOut {
    fn pretty(&self) -> String {
        let mut out = table(&self.triangle.rows);
        if let Some(az) = &self.az {
            out += &format!("\nA: {}\nZ: {}", az.a, az.z);
        }
        out
    }

    fn csv(&self) -> String {
        self.triangle.to_csv()
    }
}

#[derive(Serialize)]
struct FlowOut {
    #[serde(with = "weylriordan::rational::serde_str")]
    lambda: Rational,
    s: Series,
    g: Series,
}

impl From<Flow> for FlowOut {
    fn from(f: Flow) -> Self {
        FlowOut { lambda: f.lambda, s: f.s, g: f.g }
    }
}

impl Render for FlowOut {
    fn pretty(&self) -> String {
        format!("s(x) = {}\ng(x) = {}", self.s, self.g)
    }

    fn csv(&self) -> String {
        let mut out = String::from("n,s,g\n");
        for n in 0..=self.s.trunc().min(self.g.trunc()) {
            out += &format!("{n},{},{}\n", format_rational(self.s.coeff(n)), format_rational(self.g.coeff(n)));
        }
        out
    }
}

fn element_line(e: &StripedElement) -> String {
    format!(
        "n={} rho={} mu={} lambda={}",
        e.n,
        format_rational(&e.rho),
        format_rational(&e.mu),
        format_rational(&e.lambda)
    )
}

impl Render for StripedElement {
    fn pretty(&self) -> String {
        element_line(self)
    }

    fn csv(&self) -> String {
        format!(
            "n,rho,mu,lambda\n{},{},{},{}",
            self.n,
            format_rational(&self.rho),
            format_rational(&self.mu),
            format_rational(&self.lambda)
        )
    }
}

#[derive(Serialize)]
struct MaterializeOut {
    element: StripedElement,
    striped: bool,
    triangle: Triangle,
}

impl Render for MaterializeOut {
    fn pretty(&self) -> String {
        format!("{}\n{}", element_line(&self.element), table(&self.triangle.rows))
    }

    fn csv(&self) -> String {
        self.triangle.to_csv()
    }
}

impl Render for WeakAssocReport {
    fn pretty(&self) -> String {
        format!(
            "L1 (L2 L3): {}\n(L1 L2) L3: {}\n(i) nestings differ: {}\n(ii) predicted stripe and exponents: {}\n(iii) exponents differ: {}",
            element_line(&self.right_nested),
            element_line(&self.left_nested),
            self.cond_i,
            self.cond_ii,
            self.cond_iii
        )
    }

    fn csv(&self) -> String {
        format!("cond_i,cond_ii,cond_iii\n{},{},{}", self.cond_i, self.cond_ii, self.cond_iii)
    }
}

fn class_line(c: &GClass) -> String {
    if c.is_identity() {
        return "identity".into();
    }
    format!("G({}, {}; {})", c.n, format_rational(&c.rho), format_rational(&c.mu))
}

impl Render for GClass {
    fn pretty(&self) -> String {
        class_line(self)
    }

    fn csv(&self) -> String {
        format!("n,rho,mu\n{},{},{}", self.n, format_rational(&self.rho), format_rational(&self.mu))
    }
}

impl Render for AssocReport {
    fn pretty(&self) -> String {
        format!(
            "C1 (C2 C3): {}\n(C1 C2) C3: {}\nassociative: {}",
            class_line(&self.right_nested),
            class_line(&self.left_nested),
            self.associative
        )
    }

    fn csv(&self) -> String {
        format!("associative\n{}", self.associative)
    }
}

#[derive(Serialize)]
struct SeqRow {
    n: usize,
    #[serde(with = "weylriordan::rational::serde_str")]
    product: Rational,
    #[serde(with = "weylriordan::rational::serde_str")]
    series: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected: Option<i64>,
}

#[derive(Serialize)]
struct SeqOut {
    family: String,
    #[serde(skip_serializing_if = "str::is_empty")]
    tag: String,
    rows: Vec<SeqRow>,
    pass: bool,
}

impl Render for SeqOut {
    fn pretty(&self) -> String {
        let values: Vec<Rational> = self.rows.iter().map(|r| r.product.clone()).collect();
        let tag = if self.tag.is_empty() { String::new() } else { format!(" ({})", self.tag) };
        format!("{}{tag}: {}\n{}", self.family, join(&values, ", "), verdict(self.pass))
    }

    fn csv(&self) -> String {
        let mut out = String::from("n,product,series,expected\n");
        for r in &self.rows {
            let exp = r.expected.map(|e| e.to_string()).unwrap_or_default();
            out += &format!("{},{},{},{exp}\n", r.n, format_rational(&r.product), format_rational(&r.series));
        }
        out
    }
}

impl Render for EquivReport {
    fn pretty(&self) -> String {
        format!(
            "excess {}\ng(t) = {}\nphi(t) = {}\nStirling table is Sheffer: {}\naction matches: {}\n{}",
            self.excess,
            self.g,
            self.phi,
            self.matrix_condition,
            self.action_condition,
            verdict(self.equivalent)
        )
    }

    fn csv(&self) -> String {
        format!(
            "excess,matrix_condition,action_condition,equivalent\n{},{},{},{}",
            self.excess, self.matrix_condition, self.action_condition, self.equivalent
        )
    }
}

#[derive(Serialize)]
struct CheckOut {
    suite: &'static str,
    detail: String,
    pass: bool,
}

impl Render for CheckOut {
    fn pretty(&self) -> String {
        format!("{} {}: {}", self.suite, self.detail, verdict(self.pass))
    }

    fn csv(&self) -> String {
        format!("suite,detail,pass\n{},{},{}", self.suite, self.detail, self.pass)
    }
}

fn named_array(spec: &str, n: usize, g: Option<Coeffs>, f: Option<Coeffs>, c: RefSeq) -> Result<RiordanArray, Error> {
    match spec {
        "pascal" => Ok(named::pascal(n)),
        "pascal-exp" => Ok(named::pascal_exp(n)),
        "stirling2" => Ok(named::stirling2(n)),
        "stirling1" => Ok(named::stirling1(n)),
        "identity" => Ok(named::identity(n, c)),
        "custom" => {
            let (Some(Coeffs(g)), Some(Coeffs(f))) = (g, f) else {
                return Err(Error::Invalid("custom needs --g and --f".into()));
            };
            // Listed coefficients are exact; missing ones are zero.
            let fit = |mut v: Vec<Rational>| {
                v.resize(v.len().max(n + 1), Rational::default());
                Series::new(v).truncate(n)
            };
            RiordanArray::make(fit(g), fit(f), c)
        }
        other => Err(Error::Invalid(format!("unknown array {other:?}"))),
    }
}

fn seq(family: Option<String>, d: Option<i64>, count: Option<usize>, format: Format) -> Result<bool, Error> {
    let fam: CountingFamily = match (family.as_deref(), d) {
        (_, Some(d)) if d >= 1 => counting::d_family(d),
        (_, Some(d)) => return Err(Error::Invalid(format!("d must be positive, got {d}"))),
        (Some(name), None) => counting::family(name)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("unknown family {name:?}")))?,
        (None, None) => return Err(Error::Invalid("give a family name or --d".into())),
    };
    let count = count.unwrap_or(if fam.expected.is_empty() { 13 } else { fam.expected.len() });
    if !fam.expected.is_empty() && count > fam.expected.len() {
        return Err(Error::Invalid(format!("at most {} listed values", fam.expected.len())));
    }
    let idx = fam.indices(count);
    let egf = fam.egf_values(idx.last().copied().unwrap_or(0))?;
    let rows: Vec<SeqRow> = idx
        .iter()
        .enumerate()
        .map(|(i, &n)| SeqRow {
            n,
            product: fam.product_formula(n),
            series: egf[n].clone(),
            expected: fam.expected.get(i).copied(),
        })
        .collect();
    let pass = rows.iter().all(|r| {
        r.product == r.series && r.expected.is_none_or(|e| r.product == int(e))
    });
    let name = if d.is_some() { format!("d={}", fam.a) } else { fam.name.to_string() };
    emit(&SeqOut { family: name, tag: fam.tag.to_string(), rows, pass }, format);
    Ok(pass)
}

fn verify(suite: Suite, cli: &Cli) -> Result<bool, Error> {
    let trunc = cli.trunc;
    match suite {
        Suite::Prop45 { omega, pmax, samples } => {
            let w = parse_omega(&omega)?;
            let report = verify_equiv(&w, &lambda_samples(samples), pmax, trunc)?;
            let pass = report.equivalent;
            emit(&report, cli.format);
            Ok(pass)
        }
        Suite::Grouplaw { n, r } => {
            let samples = lambda_samples(trunc + 1);
            let pass = check_group_law(|l| conjugacy_prefunction(n, &r, l, trunc), &samples)?;
            let detail = format!("n={n} r={} trunc={trunc} samples={}", format_rational(&r), trunc + 1);
            emit(&CheckOut { suite: "grouplaw", detail, pass }, cli.format);
            Ok(pass)
        }
        Suite::Stripe { n, rho } => {
            let one = int(1);
            let base = StripedElement::new(n, rho.clone(), one.clone(), cli.lambda.clone())?;
            let mut pass = striped::stripe_check(&base.materialize(trunc, RefSeq::Ordinary)?, n)?;
            for k in 1..n {
                let a = StripedElement::new(k, rho.clone(), one.clone(), cli.lambda.clone())?;
                let b = StripedElement::new(n - k, rho.clone(), one.clone(), cli.lambda.clone())?;
                let q = qmul(&a, &b)?;
                pass &= striped::stripe_check(&q.materialize(trunc, RefSeq::Ordinary)?, n)?;
            }
            let detail = format!("n={n} rho={} trunc={trunc}", format_rational(&rho));
            emit(&CheckOut { suite: "stripe", detail, pass }, cli.format);
            Ok(pass)
        }
        Suite::Witness => {
            let one = int(1);
            let el = |n| StripedElement::new(n, one.clone(), one.clone(), cli.lambda.clone());
            let report = weak_assoc_witness(&el(1)?, &el(2)?, &el(4)?)?;
            let pass = report.cond_i && report.cond_ii;
            emit(&report, cli.format);
            Ok(pass)
        }
    }
}

/// `Ok(false)` when a check ran and failed.
fn run(cli: &Cli) -> Result<bool, Error> {
    let trunc = cli.trunc;
    let lambda = &cli.lambda;
    match &cli.command {
        Command::Order { word, central } => {
            let mode = if *central { Mode::Env } else { Mode::Hw };
            emit(&parse_word(word)?.normal_order(mode), cli.format);
        }
        Command::Stirling { omega, n } => {
            emit(&gen_stirling(&parse_omega(omega)?, *n)?, cli.format);
        }
        Command::Riordan { spec, n, g, f, az } => {
            let t = named_array(spec, *n, g.clone(), f.clone(), cli.refseq.seq())?;
            let az = if *az {
                let pair = t.az_sequences()?;
                Some(AzOut { a: pair.a, z: pair.z })
            } else {
                None
            };
            emit(&RiordanOut { triangle: t.triangle(*n)?, az }, cli.format);
        }
        Command::Flow { kind } => {
            let flow = match kind {
                FlowKind::Subst { n } => Flow {
                    s: substitution_factor(*n, lambda, trunc)?,
                    g: Series::one(trunc),
                    lambda: lambda.clone(),
                },
                FlowKind::Conj { n, r } => conjugacy_prefunction(*n, r, lambda, trunc)?,
                FlowKind::Bracket { k, l, r, s, minus } => {
                    let v = if *minus { Variant::Minus } else { Variant::Plus };
                    prefunction_general(*k, *l, r, s, lambda, v, trunc)?
                }
            };
            emit(&FlowOut::from(flow), cli.format);
        }
        Command::Striped { op } => match op {
            StripedOp::Materialize { n, rho, mu, rows } => {
                let e = StripedElement::new(*n, rho.clone(), mu.clone(), lambda.clone())?;
                let t = e.materialize(*rows, cli.refseq.seq())?;
                let striped = striped::stripe_check(&t, *n)?;
                emit(&MaterializeOut { element: e, striped, triangle: t.triangle(*rows)? }, cli.format);
            }
            StripedOp::Qmul { a, b } => {
                emit(&qmul(&element(a, lambda)?, &element(b, lambda)?)?, cli.format);
            }
            StripedOp::Witness { a, b, c } => {
                let r = weak_assoc_witness(&element(a, lambda)?, &element(b, lambda)?, &element(c, lambda)?)?;
                emit(&r, cli.format);
            }
            StripedOp::Sgmul { a, b, c } => {
                let (a, b) = (class(a)?, class(b)?);
                match c {
                    Some(c) => emit(&sg_assoc_report(&a, &b, &class(c)?), cli.format),
                    None => emit(&sgmul(&a, &b), cli.format),
                }
            }
        },
        Command::Seq { family, d, count } => return seq(family.clone(), *d, *count, cli.format),
        Command::Verify { suite } => {
            return verify(suite.clone(), cli);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
