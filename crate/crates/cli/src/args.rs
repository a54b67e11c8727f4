// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use realforms::lie::{RealFormSpec, Series, SeriesTag};
use realforms::{Error, Result, Tolerances};

#[derive(Debug, Parser)]
#[command(name = "realforms", version, about = "Real forms of classical Lie algebras and their orbits on P^n and Q_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// key = value file supplying defaults for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit label of a point.
    Classify {
        #[command(flatten)]
        form: FormArgs,
        /// Homogeneous coordinates, e.g. "1:0:i" or "1/2:-3+i:0".
        #[arg(long)]
        point: Option<String>,
        /// Classify in floating point instead of exact arithmetic.
        #[arg(long)]
        float: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Model manifolds for an admissible (form, n).
    ClassifyManifolds {
        #[command(flatten)]
        form: FormArgs,
    },
    /// Real dimension of the orbit through a point.
    OrbitDim {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        float: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Stabilizer dimensions of the model subspaces and the maximal classes.
    ParabolicTable {
        #[arg(long)]
        series: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact bracket check of the triality map and the so(5,3) condition audit.
    VerifyTriality,
    /// Monte Carlo orbit census.
    Explore {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        samples: Option<usize>,
        /// Flowed copies of each base point of a lower-dimensional orbit.
        #[arg(long)]
        constructed: Option<usize>,
        #[arg(long, env = "REALFORMS_SEED")]
        seed: Option<u64>,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Conditions (>) and (=) for (form, n).
    CheckConditions {
        #[command(flatten)]
        form: FormArgs,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct FormArgs {
    /// su, sl_r, sl_h, sp, sp_r, so, so_star, complex.
    #[arg(long)]
    pub form: Option<String>,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    /// Matrix size; derived from n when omitted.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Triality twist j for p + q = 8.
    #[arg(long)]
    pub twist: Option<u8>,
    /// Series of the complex algebra for `--form complex`.
    #[arg(long)]
    pub series: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TolArgs {
    /// A form value counts as zero when |s| <= zero_form * |z|^2.
    #[arg(long)]
    pub zero_form: Option<f64>,
    /// Relative singular-value cutoff for float ranks.
    #[arg(long)]
    pub rank_tol: Option<f64>,
}

/// Flat view of a config file.
#[derive(Debug, Default)]
pub struct Config(toml::Table);

impl Config {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        text.parse::<toml::Table>().map(Config).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
    }

    pub fn str(&self, key: &str) -> Option<String> {
        self.0.get(key).and_then(|v| v.as_str()).map(str::to_owned)
    }

    pub fn int(&self, key: &str) -> Option<i64> {
        self.0.get(key).and_then(|v| v.as_integer())
    }

    pub fn usize(&self, key: &str) -> Option<usize> {
        self.int(key).and_then(|v| usize::try_from(v).ok())
    }

    pub fn bool(&self, key: &str) -> bool {
        self.0.get(key).and_then(|v| v.as_bool()).unwrap_or(false)
    }

    pub fn float(&self, key: &str) -> Option<f64> {
        self.0.get(key).and_then(|v| v.as_float().or_else(|| v.as_integer().map(|i| i as f64)))
    }

    pub fn check_keys(&self) -> Result<()> {
        const KNOWN: [&str; 15] = [
            "form", "p", "q", "k", "n", "twist", "series", "point", "seed", "samples", "constructed", "format",
            "zero_form", "rank_tol", "float",
        ];
        match self.0.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            Some(k) => Err(Error::Parse(format!("unknown config key `{k}`"))),
            None => Ok(()),
        }
    }
}

impl FormArgs {
    pub fn merge(mut self, cfg: &Config) -> Self {
        self.form = self.form.or_else(|| cfg.str("form"));
        self.p = self.p.or_else(|| cfg.usize("p"));
        self.q = self.q.or_else(|| cfg.usize("q"));
        self.k = self.k.or_else(|| cfg.usize("k"));
        self.n = self.n.or_else(|| cfg.usize("n"));
        self.twist = self.twist.or_else(|| cfg.int("twist").and_then(|t| u8::try_from(t).ok()));
        self.series = self.series.or_else(|| cfg.str("series"));
        self
    }

    fn need<T>(v: Option<T>, flag: &str, form: &str) -> Result<T> {
        v.ok_or_else(|| Error::Domain(format!("--form {form} needs --{flag}")))
    }

    /// Matrix size for families named by k alone.
    fn size(&self, form: &str, offset: usize) -> Result<usize> {
        match (self.k, self.n) {
            (Some(k), Some(n)) if k != n + offset => {
                Err(Error::Domain(format!("--k {k} and --n {n} disagree for --form {form}")))
            }
            (Some(k), _) => Ok(k),
            (None, Some(n)) => Ok(n + offset),
            (None, None) => Err(Error::Domain(format!("--form {form} needs --k or --n"))),
        }
    }

    pub fn spec(&self) -> Result<RealFormSpec> {
        let form = self.form.as_deref().ok_or_else(|| Error::Domain("missing --form".into()))?;
        let pq = || -> Result<(usize, usize)> { Ok((Self::need(self.p, "p", form)?, Self::need(self.q, "q", form)?)) };
        let spec = match form {
            "su" => {
                let (p, q) = pq()?;
                RealFormSpec::Su { p, q }
            }
            "sl_r" => RealFormSpec::SlReal { k: self.size(form, 1)? },
            "sl_h" => RealFormSpec::SlQuat { k: self.size(form, 1)? },
            "sp" => {
                let (p, q) = pq()?;
                RealFormSpec::SpPq { p, q }
            }
            "sp_r" => RealFormSpec::SpReal { k: self.size(form, 1)? },
            "so" => {
                let (p, q) = pq()?;
                RealFormSpec::So { p, q, twist: self.twist.unwrap_or(0) }
            }
            "so_star" => RealFormSpec::SoStar { k: self.size(form, 2)? },
            "complex" => {
                let series: Series = Self::need(self.series.clone(), "series", form)?.parse()?;
                let k = self.size(form, if series.is_projective() { 1 } else { 2 })?;
                RealFormSpec::ComplexAsReal { tag: SeriesTag::normalized(series, k)? }
            }
            other => return Err(Error::Parse(format!("unknown --form `{other}`"))),
        };
        if self.twist.is_some_and(|t| t != 0) && form != "so" {
            return Err(Error::Domain("--twist applies only to --form so".into()));
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| Error::Domain("missing --n".into()))
    }
}

impl TolArgs {
    pub fn merge(mut self, cfg: &Config) -> Self {
        self.zero_form = self.zero_form.or_else(|| cfg.float("zero_form"));
        self.rank_tol = self.rank_tol.or_else(|| cfg.float("rank_tol"));
        self
    }

    pub fn tolerances(&self) -> Result<Tolerances> {
        let mut t = Tolerances::default();
        if let Some(z) = self.zero_form {
            t.zero_form = z;
        }
        if let Some(r) = self.rank_tol {
            t.rank = r;
        }
        if !(t.zero_form > 0.0 && t.rank > 0.0) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        Ok(t)
    }
}
