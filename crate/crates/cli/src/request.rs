use clap::{Args, Subcommand};
use serde::{Deserialize, Serialize};

/// Everything a run depends on. Reports echo this verbatim, with defaults
/// filled in, so feeding a report back through `--request` reproduces it.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Request {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
    /// Second ideal(s): the divisor of a colon, the other intersectands.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub with: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
    /// Lift of `r ∈ S/I`, or the polynomial `f` of `uniform-e`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nvars: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    /// ε as a valuation threshold, `a` or `a/b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub enumerate: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub points: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    /// Default Laurent precision in effect for the run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<i64>,
}

#[derive(Debug, Args)]
pub struct RingIdeal {
    /// Ring header, e.g. "GF(2)[x,y]".
    #[arg(long)]
    pub ring: String,
    /// Generators separated by ';'.
    #[arg(long)]
    pub ideal: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis.
    Gb {
        #[command(flatten)]
        input: RingIdeal,
        /// grevlex (default) or lex.
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
    /// (I : J).
    Colon {
        #[command(flatten)]
        input: RingIdeal,
        /// The divisor J.
        #[arg(long)]
        by: String,
    },
    /// Intersection of --ideal with every --with.
    Intersect {
        #[command(flatten)]
        input: RingIdeal,
        #[arg(long = "with", required = true)]
        with: Vec<String>,
        /// Also check (∩ I_i)^[q] = ∩ I_i^[q] for this e.
        #[arg(long)]
        flatness_e: Option<u32>,
    },
    /// Bracket power I^[p^e].
    Bracket {
        #[command(flatten)]
        input: RingIdeal,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Frobenius root I^[1/p^e].
    Frobroot {
        #[command(flatten)]
        input: RingIdeal,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Trace ideal, optionally with every projection functional's image.
    Trace {
        #[command(flatten)]
        input: RingIdeal,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[arg(long)]
        enumerate: bool,
    },
    /// Fedder purity test at a rational point.
    Fedder {
        #[command(flatten)]
        input: RingIdeal,
        /// Coordinates, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Vec<i64>,
        /// Lift of r (default 1).
        #[arg(long, default_value = "1")]
        r: String,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Non-pure locus of R -> F^e_* R, 1 -> r.
    FpureLocus {
        #[command(flatten)]
        input: RingIdeal,
        #[arg(long, default_value = "1")]
        r: String,
        #[arg(long, default_value_t = 1)]
        e: u32,
        /// Tabulate every rational point of V(I).
        #[arg(long)]
        points: bool,
    },
    /// Whether R -> F^e_* R, 1 -> r splits, with a certificate.
    SplitTest {
        #[command(flatten)]
        input: RingIdeal,
        #[arg(long, default_value = "1")]
        r: String,
        #[arg(long, default_value_t = 1)]
        e: u32,
    },
    /// Monomial filtration of S/(x_1^b..x_c^b).
    FiltrationCheck {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        p: u32,
    },
    /// Smallest e with (f)^[1/p^e] = (1).
    UniformE {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 20)]
        cap: u32,
    },
    /// Gauss valuation of a restricted series, and of a product.
    GaussNorm {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: Option<String>,
    },
    /// Division with remainder in T_1.
    T1Div {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Trace approximant g_ε of a series over F_p((t^(1/p))).
    TateSplit {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long)]
        f: String,
        /// Valuation threshold: coefficients with v <= w are kept.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Seeded randomized self-checks.
    Selftest {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub p: u32,
    /// Number of variables; defaults to the largest index used.
    #[arg(long)]
    pub nvars: Option<usize>,
    /// Ramification d of F_p((t^(1/d))); inferred from exponents if absent.
    #[arg(long)]
    pub d: Option<u32>,
}

impl Command {
    pub fn into_request(self, seed: u64, precision: i64) -> Request {
        let mut req = Request {
            seed,
            precision: Some(precision),
            ..Request::default()
        };
        let set_input = |req: &mut Request, input: RingIdeal| {
            req.ring = Some(input.ring);
            req.ideal = Some(input.ideal);
        };
        let set_series = |req: &mut Request, s: SeriesArgs| {
            req.p = Some(s.p);
            req.nvars = s.nvars;
            req.d = s.d;
        };
        match self {
            Command::Gb { input, order } => {
                req.command = "gb".into();
                set_input(&mut req, input);
                req.order = Some(order);
            }
            Command::Colon { input, by } => {
                req.command = "colon".into();
                set_input(&mut req, input);
                req.with = vec![by];
            }
            Command::Intersect {
                input,
                with,
                flatness_e,
            } => {
                req.command = "intersect".into();
                set_input(&mut req, input);
                req.with = with;
                req.e = flatness_e;
            }
            Command::Bracket { input, e } => {
                req.command = "bracket".into();
                set_input(&mut req, input);
                req.e = Some(e);
            }
            Command::Frobroot { input, e } => {
                req.command = "frobroot".into();
                set_input(&mut req, input);
                req.e = Some(e);
            }
            Command::Trace {
                input,
                e,
                enumerate,
            } => {
                req.command = "trace".into();
                set_input(&mut req, input);
                req.e = Some(e);
                req.enumerate = enumerate;
            }
            Command::Fedder { input, point, r, e } => {
                req.command = "fedder".into();
                set_input(&mut req, input);
                req.point = Some(point);
                req.poly = Some(r);
                req.e = Some(e);
            }
            Command::FpureLocus {
                input,
                r,
                e,
                points,
            } => {
                req.command = "fpure-locus".into();
                set_input(&mut req, input);
                req.poly = Some(r);
                req.e = Some(e);
                req.points = points;
            }
            Command::SplitTest { input, r, e } => {
                req.command = "split-test".into();
                set_input(&mut req, input);
                req.poly = Some(r);
                req.e = Some(e);
            }
            Command::FiltrationCheck { c, b, p } => {
                req.command = "filtration-check".into();
                req.c = Some(c);
                req.b = Some(b);
                req.p = Some(p);
            }
            Command::UniformE { ring, f, cap } => {
                req.command = "uniform-e".into();
                req.ring = Some(ring);
                req.poly = Some(f);
                req.cap = Some(cap);
            }
            Command::GaussNorm { series, f, g } => {
                req.command = "gauss-norm".into();
                set_series(&mut req, series);
                req.f = Some(f);
                req.g = g;
            }
            Command::T1Div { series, f, g } => {
                req.command = "t1-div".into();
                set_series(&mut req, series);
                req.f = Some(f);
                req.g = Some(g);
            }
            Command::TateSplit { series, f, w } => {
                req.command = "tate-split".into();
                set_series(&mut req, series);
                req.f = Some(f);
                req.w = Some(w);
            }
            Command::Selftest { count } => {
                req.command = "selftest".into();
                req.count = Some(count);
            }
        }
        req
    }
}
