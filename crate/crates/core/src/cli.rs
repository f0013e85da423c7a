//! Command-line front end: argument parsing, subcommand dispatch, and text
//! or JSON output. Every subcommand writes to a caller-supplied sink so the
//! whole surface can be exercised in-process.

use crate::combinatorial::{order_divisors, OrderInput, SimplicialComplex};
use crate::diagram::{
    divide, hilbert_samuel_from_diagram, hs_hypersurface_closed_form, initial_exponent, Diagram, MonomialOrder,
};
use crate::error::{Error, Result};
use crate::invariant::{fmt_mu, fmt_tuple, inv_at_point, newton_profile, InvResult, PointContext};
use crate::poly::{fmt_rational, parse_point, parse_polynomial, parse_rational, vars_of, Polynomial, Rational, Vars};
use crate::resolution::{certify_normal_crossings, certify_smooth, run as run_driver, Mode, Options, Resolver, TreeRecord};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::io::Write;

#[derive(Parser, Debug)]
#[command(name = "invres", version, about = "Desingularization invariant, resolution and formal division over Q")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Toggle {
    On,
    Off,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Strict,
    Weak,
}

/// Flags shared by the subcommands that take a polynomial.
#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Point as comma-separated rationals, e.g. `0,1/2,-3`.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Variable order, e.g. `x1,x2,x3`; defaults to order of first appearance.
    #[arg(long)]
    pub vars: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = TraceFormat::Text)]
    pub trace: TraceFormat,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The invariant at a point, its value of mu_X and the terminal locus.
    Inv {
        polynomial: Option<String>,
        #[command(flatten)]
        common: Common,
        /// A saved resolution tree (JSON) whose charts supply the history.
        #[arg(long)]
        history: Option<String>,
        /// Chart of the history tree containing the point.
        #[arg(long)]
        chart: Option<String>,
    },
    /// Resolve a hypersurface by blowings-up.
    Resolve {
        polynomial: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Monomialize a principal ideal by weak transforms.
    Monomialize {
        polynomial: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        run: RunFlags,
    },
    /// Formal division by a marked basis, truncated at a total degree.
    Divide {
        polynomial: String,
        /// A divisor of the basis; repeat for several.
        #[arg(long = "by", required = true)]
        by: Vec<String>,
        /// `standard`, `saturation` or `weighted:w1,w2,...`.
        #[arg(long, default_value = "standard")]
        order: String,
        #[arg(long, default_value_t = 12)]
        trunc_degree: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Hilbert–Samuel function: of a hypersurface of order `nu` in `n`
    /// variables, or of the diagram of a polynomial when one is given.
    Hilbert {
        polynomial: Option<String>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        nu: Option<u64>,
        #[arg(long)]
        ell: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Orders of the successive Newton-polyhedron profile of a polynomial.
    Newton {
        polynomial: String,
        #[command(flatten)]
        common: Common,
    },
    /// Blow up a simplicial complex until divisor functions are locally
    /// totally ordered. Reads JSON from a file, or stdin for `-`.
    SimplicialOrder {
        input: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_blowups: usize,
        #[arg(long, value_enum, default_value_t = TraceFormat::Text)]
        trace: TraceFormat,
    },
    /// Smoothness and normal-crossings certificates for a hypersurface.
    Certify {
        polynomial: String,
        /// Coordinate divisors, as variable names, e.g. `x1,x2`.
        #[arg(long)]
        divisors: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

/// Flags of the blow-up driver.
#[derive(Args, Debug, Clone, Serialize)]
pub struct RunFlags {
    #[arg(long, default_value_t = 32)]
    pub max_years: usize,
    #[arg(long, value_enum, default_value_t = Toggle::On)]
    pub certify: Toggle,
    /// Defaults to `strict` for `resolve` and `weak` for `monomialize`.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Also write the resolution tree as JSON to this file.
    #[arg(long)]
    pub output: Option<String>,
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect()
}

fn parse_with(text: &str, common: &Common) -> Result<Polynomial> {
    match &common.vars {
        Some(v) => parse_polynomial(text, Some(&vars_of(&split_list(v)))),
        None => parse_polynomial(text, None),
    }
}

fn point_or_origin(common: &Common, n: usize) -> Result<Vec<Rational>> {
    match &common.point {
        Some(p) => parse_point(p),
        None => Ok(vec![Rational::from_integer(0.into()); n]),
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| Error::Io(e.to_string()))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> Result<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    emit(out, &format!("{s}\n"))
}

fn parse_order(s: &str, n: usize) -> Result<MonomialOrder> {
    match s {
        "standard" => Ok(MonomialOrder::StandardLocal),
        "saturation" => Ok(MonomialOrder::SaturationLocal),
        _ => match s.strip_prefix("weighted:") {
            Some(w) => {
                let w = w.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
                if w.len() != n {
                    return Err(Error::Usage(format!("{} weights given for {n} variables", w.len())));
                }
                Ok(MonomialOrder::WeightedLocal(w))
            }
            None => Err(Error::Usage(format!("unknown order '{s}'"))),
        },
    }
}

fn inv_json(r: &InvResult, vars: &Vars) -> serde_json::Value {
    let locus: Vec<serde_json::Value> = r
        .locus
        .components
        .iter()
        .map(|c| {
            json!({
                "ideal": c.ideal.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "centre": c.centre.as_ref().map(|s| s.fmt_with(vars)),
                "labels": c.labels(),
            })
        })
        .collect();
    json!({
        "inv": r.inv.to_string(),
        "mu_x": r.mu_x.as_ref().map(fmt_rational),
        "locus": locus,
        "selected": r.selected,
        "trail": r.trail,
    })
}

fn inv_text(r: &InvResult, vars: &Vars) -> String {
    let mut s = format!("{}\nmu_X = {}\n", r.inv, fmt_mu(r.mu_x.as_ref()));
    for (i, c) in r.locus.components.iter().enumerate() {
        let ideal: Vec<String> = c.ideal.iter().map(|p| p.to_string()).collect();
        let mark = if i == r.selected { " (selected)" } else { "" };
        let centre = c.centre.as_ref().map(|s| s.fmt_with(vars)).unwrap_or_else(|| format!("V({})", ideal.join(", ")));
        s.push_str(&format!("locus: {centre}, labels {:?}{mark}\n", c.labels()));
    }
    s
}

fn cmd_inv(
    polynomial: &Option<String>,
    common: &Common,
    history: &Option<String>,
    chart: &Option<String>,
    out: &mut dyn Write,
) -> Result<()> {
    let (r, vars) = match history {
        Some(path) => {
            let text = read_input(path)?;
            let tree: TreeRecord =
                serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("history file: {e}")))?;
            let mut resolver = Resolver::from_tree(&tree)?;
            let id = chart.clone().unwrap_or_else(|| "U".to_string());
            let node = tree.node(&id).ok_or_else(|| Error::Usage(format!("no chart named {id}")))?;
            if let Some(p) = polynomial {
                let given = parse_polynomial(p, Some(&vars_of(&node.vars)))?;
                if given.to_string() != node.defining_poly {
                    return Err(Error::Usage(format!(
                        "polynomial does not match the defining polynomial {} of chart {id}",
                        node.defining_poly
                    )));
                }
            }
            let point = point_or_origin(common, node.vars.len())?;
            (resolver.inv_in_chart(&id, &point)?, vars_of(&node.vars))
        }
        None => {
            if chart.is_some() {
                return Err(Error::Usage("--chart needs --history".into()));
            }
            let text = polynomial
                .as_ref()
                .ok_or_else(|| Error::Usage("a polynomial or --history is required".into()))?;
            let g = parse_with(text, common)?;
            let point = point_or_origin(common, g.nvars())?;
            let ctx = PointContext {
                g: &g,
                point: &point,
                year: 0,
                divisors: vec![],
                ancestors: vec![],
            };
            (inv_at_point(&ctx)?, g.vars().clone())
        }
    };
    match common.trace {
        TraceFormat::Text => emit(out, &inv_text(&r, &vars)),
        TraceFormat::Json => {
            let mut v = inv_json(&r, &vars);
            v["config"] = json!({
                "subcommand": "inv",
                "polynomial": polynomial,
                "common": common,
                "history": history,
                "chart": chart,
            });
            emit_json(out, &v)
        }
    }
}

fn cmd_run(polynomial: &str, common: &Common, flags: &RunFlags, default: Mode, out: &mut dyn Write) -> Result<()> {
    let g = parse_with(polynomial, common)?;
    let mode = match flags.mode {
        Some(ModeArg::Strict) => Mode::Strict,
        Some(ModeArg::Weak) => Mode::Weak,
        None => default,
    };
    let opts = Options {
        mode,
        max_years: flags.max_years,
        certify: flags.certify == Toggle::On,
        points: match &common.point {
            Some(p) => vec![parse_point(p)?],
            None => vec![],
        },
    };
    let res = run_driver(&g, &opts);
    let json = serde_json::to_string_pretty(&res.tree).map_err(|e| Error::Internal(e.to_string()))?;
    if let Some(path) = &flags.output {
        std::fs::write(path, format!("{json}\n")).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    }
    match common.trace {
        TraceFormat::Text => emit(out, &res.tree.trace_text())?,
        TraceFormat::Json => emit(out, &format!("{json}\n"))?,
    }
    match res.error {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn exps(e: &crate::poly::Exponent) -> Vec<u32> {
    e.0.clone()
}

fn cmd_divide(
    polynomial: &str,
    by: &[String],
    order: &str,
    trunc: u64,
    common: &Common,
    out: &mut dyn Write,
) -> Result<()> {
    let f = parse_with(polynomial, common)?;
    // the dividend fixes the variables unless --vars did, so every divisor
    // must use a subset of them
    let vars = f.vars().clone();
    let order = parse_order(order, vars.len())?;
    let basis = by
        .iter()
        .map(|t| {
            let g = parse_polynomial(t, Some(&vars))?;
            let e = initial_exponent(&g, &order)?;
            Ok((g, e))
        })
        .collect::<Result<Vec<_>>>()?;
    let d = divide(&f, &basis, &order, trunc)?;
    let diagram = Diagram::new(vars.len(), &basis.iter().map(|(_, e)| e.clone()).collect::<Vec<_>>())?;
    match common.trace {
        TraceFormat::Text => {
            let mut s = String::new();
            for (i, ((g, e), q)) in basis.iter().zip(&d.quotients).enumerate() {
                s.push_str(&format!("Q_{} = {q}    (G_{} = {g}, marked {:?})\n", i + 1, i + 1, e.0));
            }
            s.push_str(&format!("R = {}\n", d.remainder));
            s.push_str(&format!("diagram vertices: {:?}\n", diagram.vertices().iter().map(exps).collect::<Vec<_>>()));
            emit(out, &s)
        }
        TraceFormat::Json => emit_json(
            out,
            &json!({
                "config": {"subcommand": "divide", "polynomial": polynomial, "by": by, "order": order_name(&order),
                           "trunc_degree": trunc, "common": common},
                "vars": vars.as_ref(),
                "quotients": d.quotients.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                "remainder": d.remainder.to_string(),
                "marked": basis.iter().map(|(_, e)| exps(e)).collect::<Vec<_>>(),
                "diagram": diagram.vertices().iter().map(exps).collect::<Vec<_>>(),
            }),
        ),
    }
}

fn order_name(o: &MonomialOrder) -> String {
    match o {
        MonomialOrder::StandardLocal => "standard".into(),
        MonomialOrder::SaturationLocal => "saturation".into(),
        MonomialOrder::WeightedLocal(w) => {
            format!("weighted:{}", w.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
        }
        MonomialOrder::GlobalDegLex => "global".into(),
    }
}

fn cmd_hilbert(
    polynomial: &Option<String>,
    n: Option<u64>,
    nu: Option<u64>,
    ell: u64,
    common: &Common,
    out: &mut dyn Write,
) -> Result<()> {
    let value = match polynomial {
        Some(t) => {
            if n.is_some() || nu.is_some() {
                return Err(Error::Usage("give either a polynomial or --n and --nu".into()));
            }
            let f = parse_with(t, common)?;
            let e = initial_exponent(&f, &MonomialOrder::StandardLocal)?;
            hilbert_samuel_from_diagram(&Diagram::new(f.nvars(), &[e])?, ell)
        }
        None => match (n, nu) {
            (Some(n), Some(nu)) => hs_hypersurface_closed_form(n, nu, ell)?,
            _ => return Err(Error::Usage("--n and --nu are required without a polynomial".into())),
        },
    };
    match common.trace {
        TraceFormat::Text => emit(out, &format!("{value}\n")),
        TraceFormat::Json => emit_json(
            out,
            &json!({
                "config": {"subcommand": "hilbert", "polynomial": polynomial, "n": n, "nu": nu, "ell": ell, "common": common},
                "value": value.to_string(),
            }),
        ),
    }
}

fn cmd_newton(polynomial: &str, common: &Common, out: &mut dyn Write) -> Result<()> {
    let f = parse_with(polynomial, common)?;
    let p = newton_profile(&f)?;
    match common.trace {
        TraceFormat::Text => emit(out, &format!("{}\n", fmt_tuple(&p))),
        TraceFormat::Json => emit_json(
            out,
            &json!({
                "config": {"subcommand": "newton", "polynomial": polynomial, "common": common},
                "profile": p.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
            }),
        ),
    }
}

fn cmd_simplicial(input: &str, max_blowups: usize, trace: TraceFormat, out: &mut dyn Write) -> Result<()> {
    let text = read_input(input)?;
    let data: OrderInput = serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("input: {e}")))?;
    let m = SimplicialComplex::new(&data.vertices, &data.simplices)?;
    let r = order_divisors(&m, &data.functions, max_blowups)?;
    match trace {
        TraceFormat::Text => {
            let mut s = String::new();
            for round in &r.rounds {
                s.push_str(&format!(
                    "pair {:?}: max (nu1,mu2) {:?} -> {:?}\n",
                    round.pair, round.max_before, round.max_after
                ));
                for st in &round.steps {
                    s.push_str(&format!(
                        "  blow up {:?} -> vertex {}, value {:?} -> {:?}\n",
                        st.centre, st.new_vertex, st.value, st.value_after
                    ));
                }
            }
            s.push_str(&format!("maximal simplices: {:?}\n", r.complex.maximal_simplices()));
            for (i, f) in r.functions.iter().enumerate() {
                s.push_str(&format!("D_{} = {:?}\n", i + 1, f));
            }
            emit(out, &s)
        }
        TraceFormat::Json => emit_json(
            out,
            &json!({
                "config": {"subcommand": "simplicial-order", "input": input, "max_blowups": max_blowups},
                "rounds": r.rounds,
                "maximal_simplices": r.complex.maximal_simplices(),
                "complex": r.complex,
                "functions": r.functions,
            }),
        ),
    }
}

fn cmd_certify(polynomial: &str, divisors: &Option<String>, common: &Common, out: &mut dyn Write) -> Result<()> {
    let g = parse_with(polynomial, common)?;
    let dv = match divisors {
        Some(d) => split_list(d)
            .iter()
            .map(|name| {
                g.vars()
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| Error::Usage(format!("unknown divisor variable '{name}'")))
            })
            .collect::<Result<Vec<_>>>()?,
        None => vec![],
    };
    let smooth = certify_smooth(&g);
    let nc = certify_normal_crossings(&g, &dv)?;
    match common.trace {
        TraceFormat::Text => emit(out, &format!("smooth: {smooth}\nnormal crossings: {nc}\n")),
        TraceFormat::Json => emit_json(
            out,
            &json!({
                "config": {"subcommand": "certify", "polynomial": polynomial, "divisors": divisors, "common": common},
                "smooth": smooth,
                "normal_crossings": nc,
            }),
        ),
    }
}

/// Run a parsed command; the error decides the exit code.
pub fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Inv {
            polynomial,
            common,
            history,
            chart,
        } => cmd_inv(polynomial, common, history, chart, out),
        Command::Resolve { polynomial, common, run } => cmd_run(polynomial, common, run, Mode::Strict, out),
        Command::Monomialize { polynomial, common, run } => cmd_run(polynomial, common, run, Mode::Weak, out),
        Command::Divide {
            polynomial,
            by,
            order,
            trunc_degree,
            common,
        } => cmd_divide(polynomial, by, order, *trunc_degree, common, out),
        Command::Hilbert {
            polynomial,
            n,
            nu,
            ell,
            common,
        } => cmd_hilbert(polynomial, *n, *nu, *ell, common, out),
        Command::Newton { polynomial, common } => cmd_newton(polynomial, common, out),
        Command::SimplicialOrder {
            input,
            max_blowups,
            trace,
        } => cmd_simplicial(input, *max_blowups, *trace, out),
        Command::Certify {
            polynomial,
            divisors,
            common,
        } => cmd_certify(polynomial, divisors, common, out),
    }
}

/// Parse `args` (including the program name), run, and return the exit
/// code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["invres"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn inv_and_hilbert_examples() {
        let (c, s) = call(&["inv", "x3^3 - x1*x2", "--point", "0,0,0"]);
        assert_eq!(c, 0);
        assert_eq!(s.lines().next(), Some("(2,0,1,0,3/2,0,inf)"));
        assert_eq!(call(&["hilbert", "--n", "3", "--nu", "2", "--ell", "5"]), (0, "36\n".into()));
        assert_eq!(call(&["hilbert", "x^2+y^3+z^7", "--ell", "5"]).1, "36\n");
        assert_eq!(call(&["newton", "x^2+y^3"]).1, "(2,3)\n");
    }

    #[test]
    fn usage_and_parse_errors_exit_one() {
        assert_eq!(call(&["inv", "2 x"]).0, 1);
        assert_eq!(call(&["frobnicate"]).0, 1);
        assert_eq!(call(&["inv", "x", "--point", "0,0"]).0, 1);
        assert_eq!(call(&["simplicial-order", "/nonexistent/file.json"]).0, 10);
    }

    #[test]
    fn year_cap_exit_code() {
        let (c, s) = call(&["resolve", "x3^2 - x1^2*x2^3", "--max-years", "1"]);
        assert_eq!(c, 4);
        assert!(s.starts_with("Year 0: chart U, g_0 = "), "{s}");
        assert!(s.contains("error: "));
    }

    #[test]
    fn divide_text() {
        let (c, s) = call(&["divide", "x^2 + x*y", "--by", "x", "--trunc-degree", "4"]);
        assert_eq!(c, 0);
        assert!(s.starts_with("Q_1 = "));
        assert!(s.contains("R = 0"));
    }

    #[test]
    fn certify_cusp() {
        assert_eq!(call(&["certify", "y^2 - x^3"]).1, "smooth: false\nnormal crossings: false\n");
        assert_eq!(call(&["certify", "y - x^2"]).1, "smooth: true\nnormal crossings: true\n");
    }
}
