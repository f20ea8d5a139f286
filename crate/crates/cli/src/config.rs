//! Option surface: one flat set of flags shared by every subcommand, a
//! key=value config file merged underneath them, and the value parsers.

use anyhow::{anyhow, bail, Context, Result};
use cubic_shapes::exactnum::parse_decimal;
use cubic_shapes::sweeps::SweepConfig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::fs;

#[derive(clap::Args, Clone, Debug, Default)]
pub struct Opts {
    /// Family parameter a (sweep-alpha schedules it instead)
    #[arg(long)]
    pub a: Option<String>,
    /// Family parameter b, default 1
    #[arg(long)]
    pub b: Option<String>,
    /// t value, comma list, or geometric grid "10^3..10^12 step ^3"
    #[arg(long)]
    pub t: Option<String>,
    /// Comma list of alphas as fractions, e.g. "1/6,1/10"
    #[arg(long)]
    pub alpha: Option<String>,
    /// Schedule constant c in (0, 1), default 9/10
    #[arg(long)]
    pub c: Option<String>,
    /// Target width for reduced shape coordinates, default 2^-30
    #[arg(long)]
    pub eps: Option<String>,
    /// Working precision for the gap diagnostics columns, default 128
    #[arg(long = "precision-bits")]
    pub precision_bits: Option<String>,
    /// Write records here instead of stdout
    #[arg(long)]
    pub out: Option<String>,
    /// Also write a scatter of reduced shapes to this SVG file
    #[arg(long)]
    pub svg: Option<String>,
    /// Emit records as JSON instead of CSV
    #[arg(long)]
    pub json: bool,
    /// Exit 3 when any certificate is Inconclusive
    #[arg(long)]
    pub strict: bool,
    /// key=value file supplying defaults; command-line flags override it
    #[arg(long)]
    pub config: Option<String>,
}

/// Merge config-file values under the flags: a flag that was given wins,
/// booleans combine with or. Unknown keys are an error.
pub fn merge_config_file(mut opts: Opts) -> Result<Opts> {
    let Some(path) = opts.config.clone() else {
        return Ok(opts);
    };
    let text = fs::read_to_string(&path).with_context(|| format!("reading config {path}"))?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("{path}:{}: expected key=value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim().to_string());
        match key {
            "a" => opts.a.get_or_insert(value),
            "b" => opts.b.get_or_insert(value),
            "t" => opts.t.get_or_insert(value),
            "alpha" => opts.alpha.get_or_insert(value),
            "c" => opts.c.get_or_insert(value),
            "eps" => opts.eps.get_or_insert(value),
            "precision-bits" => opts.precision_bits.get_or_insert(value),
            "out" => opts.out.get_or_insert(value),
            "svg" => opts.svg.get_or_insert(value),
            "json" => {
                opts.json |= parse_bool(&value)
                    .with_context(|| format!("{path}:{}: key json", lineno + 1))?;
                continue;
            }
            "strict" => {
                opts.strict |= parse_bool(&value)
                    .with_context(|| format!("{path}:{}: key strict", lineno + 1))?;
                continue;
            }
            other => bail!("{path}:{}: unknown key `{other}`", lineno + 1),
        };
    }
    Ok(opts)
}

fn parse_bool(s: &str) -> Result<bool> {
    match s {
        "true" | "1" => Ok(true),
        "false" | "0" => Ok(false),
        other => bail!("expected true/false/1/0, got `{other}`"),
    }
}

/// Integer in plain, scientific (1e12), or power (10^12) notation.
pub fn parse_integer(s: &str) -> Result<BigInt> {
    let s = s.trim();
    if let Some(exp) = s.strip_prefix("10^") {
        let e: u32 = exp.trim().parse().with_context(|| format!("exponent in `{s}`"))?;
        return Ok(BigInt::from(10u32).pow(e));
    }
    let v = parse_decimal(s).ok_or_else(|| anyhow!("not a number: `{s}`"))?;
    if !v.denom().is_one() {
        bail!("`{s}` is not an integer");
    }
    Ok(v.numer().clone())
}

/// Rational given as p/q or in decimal notation.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse().with_context(|| format!("numerator of `{s}`"))?;
        let den: BigInt = q.trim().parse().with_context(|| format!("denominator of `{s}`"))?;
        if den.is_zero() {
            bail!("zero denominator in `{s}`");
        }
        return Ok(BigRational::new(num, den));
    }
    parse_decimal(s).ok_or_else(|| anyhow!("not a rational: `{s}`"))
}

use num_traits::Zero;

/// t grid: either "10^a..10^b step ^s" (multiply by 10^s each step) or a
/// comma list of integers. Must come out strictly increasing.
pub fn parse_t_grid(s: &str) -> Result<Vec<BigInt>> {
    let s = s.trim();
    let grid = if let Some((lo, rest)) = s.split_once("..") {
        let (hi, step) = rest
            .split_once("step")
            .ok_or_else(|| anyhow!("geometric grid needs `step ^s`: `{s}`"))?;
        let a = power_exponent(lo)?;
        let b = power_exponent(hi)?;
        let st: u32 = step
            .trim()
            .strip_prefix('^')
            .ok_or_else(|| anyhow!("step must be written `^s`: `{s}`"))?
            .trim()
            .parse()
            .with_context(|| format!("step in `{s}`"))?;
        if st == 0 {
            bail!("step must be positive: `{s}`");
        }
        if b < a {
            bail!("grid runs backwards: `{s}`");
        }
        let mut out = Vec::new();
        let mut e = a;
        while e <= b {
            out.push(BigInt::from(10u32).pow(e));
            e += st;
        }
        out
    } else {
        s.split(',')
            .map(parse_integer)
            .collect::<Result<Vec<_>>>()?
    };
    if grid.is_empty() {
        bail!("empty t grid");
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        bail!("t grid must be strictly increasing");
    }
    Ok(grid)
}

fn power_exponent(s: &str) -> Result<u32> {
    s.trim()
        .strip_prefix("10^")
        .ok_or_else(|| anyhow!("grid endpoints must be powers `10^e`, got `{s}`"))?
        .trim()
        .parse()
        .with_context(|| format!("exponent in `{s}`"))
}

impl Opts {
    pub fn param_a(&self) -> Result<BigInt> {
        let s = self.a.as_deref().ok_or_else(|| anyhow!("--a is required"))?;
        parse_integer(s)
    }

    pub fn param_b(&self) -> Result<BigInt> {
        match self.b.as_deref() {
            Some(s) => parse_integer(s),
            None => Ok(BigInt::one()),
        }
    }

    /// The t grid, or the default sweep grid when absent.
    pub fn grid_t(&self) -> Result<Vec<BigInt>> {
        match self.t.as_deref() {
            Some(s) => parse_t_grid(s),
            None => Ok(SweepConfig::default().t_grid),
        }
    }

    /// Exactly one t value; lists are for the sweep subcommands.
    pub fn single_t(&self) -> Result<BigInt> {
        let s = self.t.as_deref().ok_or_else(|| anyhow!("--t is required"))?;
        let grid = parse_t_grid(s)?;
        if grid.len() != 1 {
            bail!("this subcommand takes a single t, got {} values", grid.len());
        }
        Ok(grid.into_iter().next().unwrap())
    }

    pub fn alphas(&self) -> Result<Vec<BigRational>> {
        match self.alpha.as_deref() {
            Some(s) => s.split(',').map(parse_rational).collect(),
            None => Ok(SweepConfig::default().alphas),
        }
    }

    pub fn schedule_c(&self) -> Result<BigRational> {
        match self.c.as_deref() {
            Some(s) => parse_rational(s),
            None => Ok(SweepConfig::default().c),
        }
    }

    pub fn shape_eps(&self) -> Result<BigRational> {
        let eps = match self.eps.as_deref() {
            Some(s) => parse_rational(s)?,
            None => SweepConfig::default().eps,
        };
        if !eps.is_positive() {
            bail!("eps must be positive");
        }
        Ok(eps)
    }

    pub fn bits(&self) -> Result<u32> {
        match self.precision_bits.as_deref() {
            Some(s) => {
                let bits: u32 = s.trim().parse().with_context(|| format!("precision-bits `{s}`"))?;
                if bits < 32 {
                    bail!("precision-bits must be at least 32");
                }
                Ok(bits)
            }
            None => Ok(cubic_shapes::sweeps::DEFAULT_RECORD_BITS),
        }
    }
}
