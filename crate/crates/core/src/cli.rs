//! Command-line front end. [`run`] never exits the process, so every
//! subcommand is testable in-process.

use std::ffi::OsString;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::bubbles::{
    char2_consistency, hom_dim_series, matchings, parse_sequence, realize, solve_fake_bubbles,
    xi_series, XiMode,
};
use crate::cyclotomic::{parse_ef_word, quotient_dims, WeightModule};
use crate::error::{Error, Result};
use crate::onh::{
    decomposition_prediction, e_idempotent, graded_dim_left_ideal, graded_dim_onh,
    normal_form_combination,
};
use crate::parse::{
    infer_rank, parse_canonical, parse_onh_combination, parse_onh_word, parse_scalar,
    parse_skewpoly,
};
use crate::perm::Permutation;
use crate::scalars::{geom_inverse, qbinom, qfact, qint, CoveringScalar, TruncatedSeries};
use crate::udot::{
    bilinear_form, multiply, oracle_equal, sesquilinear_form, sesquilinear_form_right,
    CanonicalElement,
};
use crate::verify;

/// Exit status and output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    /// 0 ok, 1 user error, 2 internal assertion failure.
    pub status: i32,
    pub payload: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "oddsl2",
    version,
    about = "Covering sl2, odd nilHecke algebras and bubbles, exactly"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// (q, pi)-integers, factorials, binomials and the bar involution.
    #[command(subcommand)]
    Scalars(ScalarsCmd),
    /// Skew polynomials and odd divided differences.
    #[command(subcommand)]
    Skew(SkewCmd),
    /// The odd nilHecke algebra.
    #[command(subcommand)]
    Onh(OnhCmd),
    /// Cyclotomic quotients and the modules V^Lambda.
    #[command(subcommand)]
    Cyc(CycCmd),
    /// The idempotented covering algebra in its canonical basis.
    #[command(subcommand)]
    Udot(UdotCmd),
    /// Bubble series and fake bubbles.
    #[command(subcommand)]
    Bubbles(BubblesCmd),
    /// Graded dimensions of 2-hom spaces.
    #[command(subcommand)]
    Hom(HomCmd),
    /// Run the invariant suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Args, Debug)]
struct CutoffArg {
    /// Series cutoff (q-degree); defaults to ODDSL2_CUTOFF_DEFAULT or 20.
    #[arg(long, allow_hyphen_values = true)]
    cutoff: Option<i64>,
}

impl CutoffArg {
    fn get(&self) -> i64 {
        self.cutoff.unwrap_or_else(crate::default_cutoff)
    }
}

#[derive(Subcommand, Debug)]
enum ScalarsCmd {
    /// The (q, pi)-integer [n].
    Qint {
        #[arg(short, long, allow_hyphen_values = true)]
        n: i64,
    },
    /// The (q, pi)-factorial [n]!.
    Qfact {
        #[arg(short, long)]
        n: u32,
    },
    /// The (q, pi)-binomial [n; a].
    Qbinom {
        #[arg(short, long, allow_hyphen_values = true)]
        n: i64,
        #[arg(short, long)]
        a: u32,
    },
    /// Normalize a scalar expression.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Apply the bar involution q -> pi q^-1.
    Bar {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Set pi to +1 or -1 and optionally q to a rational.
    Specialize {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        pi: i8,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Expand (1 - pi^p q^{2s})^-1.
    Geom {
        #[arg(short, long)]
        s: u32,
        #[arg(long, default_value_t = 0)]
        pi_power: u8,
        #[command(flatten)]
        cutoff: CutoffArg,
    },
}

#[derive(Args, Debug)]
struct RankArg {
    /// Number of variables; inferred from the input when omitted.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum SkewCmd {
    /// Normalize a polynomial.
    Eval {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Multiply two polynomials.
    Mul {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Act by a permutation given in one-line notation, e.g. `2,1,3`.
    Act {
        #[arg(long)]
        perm: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Apply the odd divided difference d_i.
    Partial {
        #[command(flatten)]
        rank: RankArg,
        #[arg(short, long)]
        i: usize,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Use the closed formula instead of the Leibniz rule.
        #[arg(long)]
        closed: bool,
    },
    /// Test odd symmetry (killed by every d_i).
    Symmetric {
        #[command(flatten)]
        rank: RankArg,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
}

#[derive(Subcommand, Debug)]
enum OnhCmd {
    /// Normal form of a word or integer combination of words.
    Nf {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Product of two combinations, in normal form.
    Mul {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// Act by a word on a skew polynomial.
    Act {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// The idempotent e_n.
    Idempotent {
        #[arg(long)]
        n: usize,
    },
    /// Graded dimension of ONH_n.
    Grdim {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        cutoff: CutoffArg,
    },
    /// Graded dimension of the left ideal ONH_n e_n.
    Ideal {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        cutoff: CutoffArg,
    },
    /// Compare ONH_n with [n]! shifted copies of ONH_n e_n.
    Decomp {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        cutoff: CutoffArg,
    },
}

#[derive(Subcommand, Debug)]
enum CycCmd {
    /// Graded dimensions of ONH_n^Lambda.
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lambda: usize,
    },
    /// The action matrices of V^Lambda.
    Module {
        #[arg(long)]
        lambda: usize,
    },
    /// Apply a word in E, F to v_k (rightmost letter first).
    Act {
        #[arg(long)]
        lambda: usize,
        #[arg(long)]
        word: String,
        #[arg(short, long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum UdotCmd {
    /// Rewrite an element in the canonical basis.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Multiply canonical elements (`left` after `right`).
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    /// The bar involution.
    Bar {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// The anti-automorphism rho.
    Rho {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// The anti-automorphism tau.
    Tau {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// The sesquilinear form (or the bilinear form with --bilinear).
    Form {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[command(flatten)]
        cutoff: CutoffArg,
        /// Reduce by stripping from the right argument instead.
        #[arg(long)]
        from_right: bool,
        #[arg(long)]
        bilinear: bool,
    },
    /// Compare two elements by their action on V^Lambda, Lambda <= lambda-max.
    Oracle {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, default_value_t = 12)]
        lambda_max: usize,
    },
}

#[derive(Subcommand, Debug)]
enum BubblesCmd {
    /// Solve for the fake bubbles B_0..B_m.
    Fake {
        #[arg(short, long)]
        m: u32,
    },
    /// The bubble series xi.
    Xi {
        #[arg(long, default_value = "char2")]
        mode: String,
        #[command(flatten)]
        cutoff: CutoffArg,
    },
}

#[derive(Args, Debug)]
struct HomArgs {
    /// Bottom sequence over `+-o`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    lower: String,
    /// Top sequence over `+-o`.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    upper: String,
    /// Weight of the rightmost region.
    #[arg(long, allow_hyphen_values = true)]
    lam: i64,
    #[command(flatten)]
    cutoff: CutoffArg,
}

#[derive(Subcommand, Debug)]
enum HomCmd {
    /// Graded dimension as (even part, pi part).
    Dims {
        #[command(flatten)]
        args: HomArgs,
        #[arg(long, default_value = "char2")]
        mode: String,
    },
    /// List the matchings with the degree of their minimal diagram.
    Diagrams {
        #[command(flatten)]
        args: HomArgs,
    },
    /// Adjunction, reflection and parity checks of the enumerator.
    Check {
        #[command(flatten)]
        args: HomArgs,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Run every check and print a pass/fail matrix.
    All {
        /// Smaller problem sizes.
        #[arg(long)]
        quick: bool,
        /// Only these check keys.
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
    },
    /// List check keys.
    List,
}

struct Out {
    text: String,
    json: Value,
    status: i32,
}

impl Out {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self {
            text: text.into(),
            json,
            status: 0,
        }
    }
}

/// Run one command line (`argv[0]` is the program name).
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 1 } else { 0 };
            return CommandResult {
                status,
                payload: e.render().to_string(),
            };
        }
    };
    let json = cli.json;
    let res = catch_unwind(AssertUnwindSafe(|| dispatch(cli.cmd)));
    match res {
        Ok(Ok(out)) => CommandResult {
            status: out.status,
            payload: if json {
                serde_json::to_string_pretty(&out.json).expect("json")
            } else {
                out.text
            },
        },
        Ok(Err((e, input))) => {
            let status = if e.is_internal() { 2 } else { 1 };
            let mut payload = format!("error: {e}");
            if let (Error::Parse { span, .. }, Some(src)) = (&e, input) {
                payload.push_str(&format!(
                    "\n  {src}\n  {}{}",
                    " ".repeat(span.0),
                    "^".repeat((span.1 - span.0).max(1))
                ));
            }
            if json {
                payload = json!({"error": e.to_string(), "status": status}).to_string();
            }
            CommandResult { status, payload }
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "internal assertion failed".into());
            CommandResult {
                status: 2,
                payload: format!("internal error: {msg}"),
            }
        }
    }
}

type Failure = (Error, Option<String>);

/// Attach the input text to parse errors so the span can be shown.
fn with_src<T>(src: &str, r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| (e, Some(src.to_string())))
}

fn plain<T>(r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| (e, None))
}

fn series_pair_json(even: &TruncatedSeries, odd: &TruncatedSeries) -> Value {
    json!({"even": even.to_json(), "pi": odd.to_json()})
}

fn dispatch(cmd: Cmd) -> std::result::Result<Out, Failure> {
    match cmd {
        Cmd::Scalars(c) => scalars(c),
        Cmd::Skew(c) => skew(c),
        Cmd::Onh(c) => onh(c),
        Cmd::Cyc(c) => cyc(c),
        Cmd::Udot(c) => udot(c),
        Cmd::Bubbles(c) => bubbles(c),
        Cmd::Hom(c) => hom(c),
        Cmd::Verify(c) => verify_cmd(c),
    }
}

fn scalar_out(s: &CoveringScalar) -> Out {
    Out::new(s.to_string(), s.to_json())
}

fn series_out(s: &TruncatedSeries) -> Out {
    Out::new(s.to_string(), s.to_json())
}

fn scalars(c: ScalarsCmd) -> std::result::Result<Out, Failure> {
    Ok(match c {
        ScalarsCmd::Qint { n } => scalar_out(&qint(n)),
        ScalarsCmd::Qfact { n } => scalar_out(&qfact(n)),
        ScalarsCmd::Qbinom { n, a } => scalar_out(&plain(qbinom(n, a))?),
        ScalarsCmd::Eval { expr } => scalar_out(&with_src(&expr, parse_scalar(&expr))?),
        ScalarsCmd::Bar { expr } => scalar_out(&with_src(&expr, parse_scalar(&expr))?.bar()),
        ScalarsCmd::Specialize { expr, pi, q } => {
            if pi != 1 && pi != -1 {
                return Err((Error::InvalidArgument("--pi must be 1 or -1".into()), None));
            }
            let s = with_src(&expr, parse_scalar(&expr))?;
            let qv = match q {
                Some(t) => Some(t.trim().parse::<BigRational>().map_err(|_| {
                    (
                        Error::InvalidArgument(format!("not a rational: {t:?}")),
                        None,
                    )
                })?),
                None => None,
            };
            if qv.as_ref().is_some_and(num_traits::Zero::is_zero) {
                return Err((Error::InvalidArgument("q must be nonzero".into()), None));
            }
            let v = s.specialize(pi, qv.as_ref());
            Out::new(v.to_string(), v.to_json())
        }
        ScalarsCmd::Geom {
            s,
            pi_power,
            cutoff,
        } => series_out(&plain(geom_inverse(s, pi_power & 1, cutoff.get()))?),
    })
}

fn skew_rank(rank: &RankArg, inputs: &[&str]) -> usize {
    rank.n
        .unwrap_or_else(|| inputs.iter().map(|s| infer_rank(s)).max().unwrap_or(1))
}

fn skew(c: SkewCmd) -> std::result::Result<Out, Failure> {
    let poly_out = |p: &crate::skewpoly::SkewPoly| Out::new(p.to_string(), p.to_json());
    Ok(match c {
        SkewCmd::Eval { rank, poly } => {
            let n = skew_rank(&rank, &[&poly]);
            poly_out(&with_src(&poly, parse_skewpoly(&poly, n))?)
        }
        SkewCmd::Mul { rank, left, right } => {
            let n = skew_rank(&rank, &[&left, &right]);
            let a = with_src(&left, parse_skewpoly(&left, n))?;
            let b = with_src(&right, parse_skewpoly(&right, n))?;
            poly_out(&plain(a.mul(&b))?)
        }
        SkewCmd::Act { perm, poly } => {
            let line: Vec<usize> = perm
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| {
                    (
                        Error::InvalidArgument(format!("bad permutation {perm:?}")),
                        None,
                    )
                })?;
            let w = plain(Permutation::from_one_line(&line))?;
            let f = with_src(&poly, parse_skewpoly(&poly, w.n()))?;
            poly_out(&plain(f.act(&w))?)
        }
        SkewCmd::Partial {
            rank,
            i,
            poly,
            closed,
        } => {
            let n = skew_rank(&rank, &[&poly]).max(i + 1);
            let f = with_src(&poly, parse_skewpoly(&poly, n))?;
            let g = if closed {
                f.oddpartial_closed(i)
            } else {
                f.oddpartial(i)
            };
            poly_out(&plain(g)?)
        }
        SkewCmd::Symmetric { rank, poly } => {
            let n = skew_rank(&rank, &[&poly]);
            let f = with_src(&poly, parse_skewpoly(&poly, n))?;
            let b = f.is_odd_symmetric();
            Out::new(b.to_string(), json!({"odd_symmetric": b}))
        }
    })
}

fn onh_rank(n: Option<usize>, inputs: &[&str]) -> usize {
    n.unwrap_or_else(|| inputs.iter().map(|s| infer_rank(s)).max().unwrap_or(1))
}

fn onh(c: OnhCmd) -> std::result::Result<Out, Failure> {
    let elem_out = |e: &crate::onh::OnhElement| Out::new(e.to_string(), e.to_json());
    Ok(match c {
        OnhCmd::Nf { n, word } => {
            let n = onh_rank(n, &[&word]);
            let combo = with_src(&word, parse_onh_combination(&word, n))?;
            elem_out(&plain(normal_form_combination(n, &combo))?)
        }
        OnhCmd::Mul { n, left, right } => {
            let n = onh_rank(n, &[&left, &right]);
            let a = with_src(&left, parse_onh_combination(&left, n))?;
            let b = with_src(&right, parse_onh_combination(&right, n))?;
            let a = plain(normal_form_combination(n, &a))?;
            let b = plain(normal_form_combination(n, &b))?;
            elem_out(&plain(a.mul(&b))?)
        }
        OnhCmd::Act { n, word, poly } => {
            let n = onh_rank(n, &[&word, &poly]);
            let w = with_src(&word, parse_onh_word(&word, n))?;
            let f = with_src(&poly, parse_skewpoly(&poly, n))?;
            let g = plain(w.act(&f))?;
            Out::new(g.to_string(), g.to_json())
        }
        OnhCmd::Idempotent { n } => {
            if n == 0 {
                return Err((Error::InvalidArgument("n must be at least 1".into()), None));
            }
            elem_out(&e_idempotent(n))
        }
        OnhCmd::Grdim { n, cutoff } => series_out(&graded_dim_onh(n, cutoff.get())),
        OnhCmd::Ideal { n, cutoff } => {
            if n == 0 {
                return Err((Error::InvalidArgument("n must be at least 1".into()), None));
            }
            series_out(&plain(graded_dim_left_ideal(
                &e_idempotent(n),
                cutoff.get(),
            ))?)
        }
        OnhCmd::Decomp { n, cutoff } => {
            if n == 0 {
                return Err((Error::InvalidArgument("n must be at least 1".into()), None));
            }
            let cut = cutoff.get();
            let c2 = (n * (n - 1) / 2) as i64;
            let ideal = plain(graded_dim_left_ideal(&e_idempotent(n), cut + 2 * c2))?;
            let pred = decomposition_prediction(n, &ideal).truncate(cut);
            let full = graded_dim_onh(n, cut);
            let agree = pred.agrees_through(&full, cut);
            let mut out = Out::new(
                format!("ONH_{n}:      {full}\nprediction: {pred}\nagree: {agree}"),
                json!({"onh": full.to_json(), "prediction": pred.to_json(), "agree": agree}),
            );
            if !agree {
                out.status = 2;
            }
            out
        }
    })
}

fn cyc(c: CycCmd) -> std::result::Result<Out, Failure> {
    Ok(match c {
        CycCmd::Dims { n, lambda } => {
            let q = plain(quotient_dims(n, lambda))?;
            let mut text = String::from("degree  dim\n");
            for (d, v) in &q.dims {
                text.push_str(&format!("{d:>6}  {v}\n"));
            }
            text.push_str(&format!("total {}", q.total()));
            Out::new(text, q.to_json())
        }
        CycCmd::Module { lambda } => {
            let m = plain(WeightModule::new(lambda))?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for k in 0..=lambda {
                text.push_str(&format!(
                    "v_{k} (weight {}): E -> {}, F -> {}\n",
                    m.weight(k),
                    m.e_coeff(k),
                    m.f_coeff(k)
                ));
                rows.push(json!({"k": k, "weight": m.weight(k), "e": m.e_coeff(k).to_json(), "f": m.f_coeff(k).to_json()}));
            }
            Out::new(text.trim_end(), json!({"lambda": lambda, "basis": rows}))
        }
        CycCmd::Act { lambda, word, k } => {
            let m = plain(WeightModule::new(lambda))?;
            let w = with_src(&word, parse_ef_word(&word))?;
            let v = plain(m.act_word(&w, k))?;
            let parts: Vec<String> = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| {
                    if c.is_one() {
                        format!("v_{j}")
                    } else {
                        format!("({c})*v_{j}")
                    }
                })
                .collect();
            let text = if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            };
            Out::new(
                text,
                json!({"coords": v.iter().map(|c| c.to_json()).collect::<Vec<_>>()}),
            )
        }
    })
}

fn canon(s: &str) -> std::result::Result<CanonicalElement, Failure> {
    with_src(s, parse_canonical(s))
}

fn udot(c: UdotCmd) -> std::result::Result<Out, Failure> {
    let elem_out = |e: &CanonicalElement| Out::new(e.to_string(), e.to_json());
    Ok(match c {
        UdotCmd::Eval { x } => elem_out(&canon(&x)?),
        UdotCmd::Mul { left, right } => {
            elem_out(&plain(multiply(&canon(&left)?, &canon(&right)?))?)
        }
        UdotCmd::Bar { x } => elem_out(&canon(&x)?.bar()),
        UdotCmd::Rho { x } => elem_out(&canon(&x)?.rho()),
        UdotCmd::Tau { x } => elem_out(&canon(&x)?.tau()),
        UdotCmd::Form {
            left,
            right,
            cutoff,
            from_right,
            bilinear,
        } => {
            let (x, y, cut) = (canon(&left)?, canon(&right)?, cutoff.get());
            let s = if bilinear {
                bilinear_form(&x, &y, cut)
            } else if from_right {
                sesquilinear_form_right(&x, &y, cut)
            } else {
                sesquilinear_form(&x, &y, cut)
            };
            series_out(&plain(s)?)
        }
        UdotCmd::Oracle {
            left,
            right,
            lambda_max,
        } => {
            let b = oracle_equal(&canon(&left)?, &canon(&right)?, lambda_max);
            Out::new(b.to_string(), json!({"equal": b, "lambda_max": lambda_max}))
        }
    })
}

fn mode(s: &str) -> std::result::Result<XiMode, Failure> {
    plain(XiMode::parse(s))
}

fn bubbles(c: BubblesCmd) -> std::result::Result<Out, Failure> {
    Ok(match c {
        BubblesCmd::Fake { m } => {
            let b = solve_fake_bubbles(m);
            let text: Vec<String> = b
                .iter()
                .enumerate()
                .map(|(j, e)| format!("B_{j} = {e}"))
                .collect();
            let js: Vec<Value> = b
                .iter()
                .enumerate()
                .map(|(j, e)| json!({"m": j, "expr": e.to_json(), "text": e.to_string()}))
                .collect();
            Out::new(text.join("\n"), json!({"fake_bubbles": js}))
        }
        BubblesCmd::Xi { mode: m, cutoff } => {
            let md = mode(&m)?;
            let s = xi_series(md, cutoff.get());
            let mut out = series_out(&s);
            if md == XiMode::CharNot2 {
                out.text.push_str("\n(conjectural in this mode)");
                out.json = json!({"series": s.to_json(), "mode": md.name(), "conjectural": true});
            }
            out
        }
    })
}

fn hom(c: HomCmd) -> std::result::Result<Out, Failure> {
    let seqs = |a: &HomArgs| -> std::result::Result<_, Failure> {
        Ok((
            with_src(&a.lower, parse_sequence(&a.lower))?,
            with_src(&a.upper, parse_sequence(&a.upper))?,
        ))
    };
    Ok(match c {
        HomCmd::Dims { args, mode: m } => {
            let md = mode(&m)?;
            let (lo, up) = seqs(&args)?;
            let (even, odd) = hom_dim_series(&lo, &up, args.lam, md, args.cutoff.get());
            let mut text = format!("even: {even}\npi:   {odd}");
            if md == XiMode::CharNot2 {
                text.push_str("\n(conjectural in this mode)");
            }
            let mut js = series_pair_json(&even, &odd);
            js["mode"] = json!(md.name());
            Out::new(text, js)
        }
        HomCmd::Diagrams { args } => {
            let (lo, up) = seqs(&args)?;
            let mut text = Vec::new();
            let mut js = Vec::new();
            for m in matchings(&lo.signs, &up.signs) {
                let d = realize(&lo.signs, &up.signs, args.lam, &m);
                let pairs: Vec<String> = m.iter().map(|(a, b)| format!("{a:?}-{b:?}")).collect();
                text.push(format!(
                    "{}  crossings {}  degree {}  parity {}",
                    pairs.join(" "),
                    d.crossings,
                    d.degree,
                    d.parity
                ));
                js.push(json!({"pairs": pairs, "crossings": d.crossings, "degree": d.degree, "parity": d.parity}));
            }
            let text = if text.is_empty() {
                "no matchings".to_string()
            } else {
                text.join("\n")
            };
            Out::new(text, json!({"diagrams": js}))
        }
        HomCmd::Check { args } => {
            let (lo, up) = seqs(&args)?;
            let r = char2_consistency(&lo.signs, &up.signs, args.lam, args.cutoff.get());
            let mut out = Out::new(
                format!(
                    "adjunction: {}\nreflection: {}\nclosed bubbles even: {}\nodd endpoint count gives 0: {}",
                    r.adjunction.map_or("n/a".to_string(), |b| b.to_string()),
                    r.reflection,
                    r.closed_even,
                    r.odd_zero
                ),
                json!({"adjunction": r.adjunction, "reflection": r.reflection, "closed_even": r.closed_even, "odd_zero": r.odd_zero, "ok": r.ok()}),
            );
            if !r.ok() {
                out.status = 2;
            }
            out
        }
    })
}

fn verify_cmd(c: VerifyCmd) -> std::result::Result<Out, Failure> {
    Ok(match c {
        VerifyCmd::All { quick, only } => {
            let known = verify::keys();
            if let Some(bad) = only.iter().find(|k| !known.contains(&k.as_str())) {
                return plain(Err(Error::InvalidArgument(format!(
                    "unknown check {bad:?}; see `verify list`"
                ))));
            }
            let checks = verify::run(verify::Scale { full: !quick }, &only);
            let mut out = Out::new(verify::render(&checks), verify::to_json(&checks));
            if checks.iter().any(|c| !c.passed) {
                out.status = 2;
            }
            out
        }
        VerifyCmd::List => {
            let k = verify::keys();
            Out::new(k.join("\n"), json!(k))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> String {
        let mut argv = vec!["oddsl2"];
        argv.extend_from_slice(args);
        let r = run(argv);
        assert_eq!(r.status, 0, "{}", r.payload);
        r.payload
    }

    #[test]
    fn examples() {
        assert_eq!(run_ok(&["scalars", "qint", "-n", "2"]), "q^-1 + pi*q");
        assert_eq!(
            run_ok(&["onh", "nf", "--n", "2", "--word", "x2 d1"]),
            "1 - d1 x1"
        );
        assert_eq!(
            run_ok(&[
                "udot",
                "form",
                "--left",
                "F(1)@lam=3",
                "--right",
                "F(1)@lam=3",
                "--cutoff",
                "8"
            ]),
            "1 + pi q^2 + q^4 + pi q^6 + q^8"
        );
    }

    #[test]
    fn errors() {
        let r = run(["oddsl2", "scalars", "qint", "--bogus"]);
        assert_eq!(r.status, 1);
        let r = run(["oddsl2", "scalars", "eval", "--expr", "q + * 2"]);
        assert_eq!(r.status, 1);
        assert!(r.payload.contains('^'), "{}", r.payload);
        let r = run(["oddsl2", "frobnicate"]);
        assert_eq!(r.status, 1);
    }
}
