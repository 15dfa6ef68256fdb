use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use spinotto::config::{load_config, ConfigMap};
use spinotto::local::{local_temperatures, LocalFigure, ReducedEndpoints};
use spinotto::plot::{emit_plot_script, FigureKind};
use spinotto::sweep::{format_scalar, run_sweep, write_csv, BaseParams, SweepSpec, SweptParam};
use spinotto::{
    analytic_spectrum, closed_form_ratio, diagonalize, local_efficiency, run_cycle, run_generalized_cycle,
    EngineConfig, Error, GeneralizedConfig, PairOperators, SpinQuantumNumber,
};

const CONFIG_KEYS: &[&str] = &[
    "s",
    "J",
    "J1",
    "J2",
    "B",
    "B1",
    "B2",
    "T1",
    "T2",
    "out",
    "workers",
    "refine-pwc",
    "param",
    "min",
    "max",
    "steps",
    "s-list",
    "matrix",
];

#[derive(Parser)]
#[command(name = "spinotto", version, about = "Quantum Otto engine with a spin-1/2 coupled to a spin-s")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues of the pair Hamiltonian, numerical next to closed form.
    Spectrum {
        #[command(flatten)]
        common: Common,
        /// Field (defaults to --B1).
        #[arg(long = "B", allow_negative_numbers = true)]
        b: Option<f64>,
        /// Dump the Hamiltonian matrix instead of its spectrum.
        #[arg(long)]
        matrix: bool,
    },
    /// Global heat, work and efficiency of one field-driven cycle.
    Cycle {
        #[command(flatten)]
        common: Common,
    },
    /// Per-spin heats, works, figures of merit and temperatures.
    Local {
        #[command(flatten)]
        common: Common,
    },
    /// Cycle with coupling J1 -> J2 -> J1: mean-field and cooperative work.
    Coop {
        #[command(flatten)]
        common: Common,
    },
    /// Scan J, B2 or T2 for a list of spins and write one CSV row per point.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        param: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        min: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// Comma-separated spins, e.g. "1/2,1,3/2".
        #[arg(long = "s-list")]
        s_list: Option<String>,
    },
    /// Write a gnuplot script rendering a figure from a sweep CSV.
    PlotScript {
        #[arg(long)]
        csv: PathBuf,
        /// fig1 .. fig6
        #[arg(long)]
        figure: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Spin of particle B: "3/2" or "1.5".
    #[arg(long = "s")]
    s: Option<String>,
    #[arg(long = "J", allow_negative_numbers = true)]
    j: Option<f64>,
    #[arg(long = "J1", allow_negative_numbers = true)]
    j1: Option<f64>,
    #[arg(long = "J2", allow_negative_numbers = true)]
    j2: Option<f64>,
    #[arg(long = "B1", allow_negative_numbers = true)]
    b1: Option<f64>,
    #[arg(long = "B2", allow_negative_numbers = true)]
    b2: Option<f64>,
    #[arg(long = "T1", allow_negative_numbers = true)]
    t1: Option<f64>,
    #[arg(long = "T2", allow_negative_numbers = true)]
    t2: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat key = value file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    /// Append bisected positive-work boundaries to sweep output.
    #[arg(long = "refine-pwc")]
    refine_pwc: bool,
}

enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self::Io(e)
    }
}

/// Flag values layered over an optional config file.
struct Settings {
    common: Common,
    file: ConfigMap,
}

impl Settings {
    fn new(common: Common) -> Result<Self, Error> {
        let file = match &common.config {
            Some(path) => load_config(path)?,
            None => ConfigMap::new(),
        };
        if let Some(key) = file.keys().find(|k| !CONFIG_KEYS.contains(&k.as_str())) {
            return Err(Error::Parse(format!("unknown config key {key:?}")));
        }
        Ok(Self { common, file })
    }

    fn raw(&self, key: &str) -> Option<&str> {
        self.file.get(key).map(String::as_str)
    }

    fn number(&self, flag: Option<f64>, key: &str) -> Result<Option<f64>, Error> {
        if flag.is_some() {
            return Ok(flag);
        }
        self.raw(key)
            .map(|v| v.parse::<f64>().map_err(|_| Error::Parse(format!("{key}: not a number: {v:?}"))))
            .transpose()
    }

    fn required(&self, flag: Option<f64>, key: &str) -> Result<f64, Error> {
        self.number(flag, key)?.ok_or_else(|| Error::InvalidConfig(format!("missing --{key}")))
    }

    fn or_default(&self, flag: Option<f64>, key: &str, default: f64) -> Result<f64, Error> {
        Ok(self.number(flag, key)?.unwrap_or(default))
    }

    fn spin(&self) -> Result<Option<SpinQuantumNumber>, Error> {
        self.common.s.as_deref().or(self.raw("s")).map(str::parse).transpose()
    }

    fn required_spin(&self) -> Result<SpinQuantumNumber, Error> {
        self.spin()?.ok_or_else(|| Error::InvalidConfig("missing --s".into()))
    }

    fn flag(&self, set: bool, key: &str) -> Result<bool, Error> {
        if set {
            return Ok(true);
        }
        match self.raw(key) {
            None | Some("false") | Some("0") => Ok(false),
            Some("true") | Some("1") | Some("") => Ok(true),
            Some(v) => Err(Error::Parse(format!("{key}: expected true/false, got {v:?}"))),
        }
    }

    fn out(&self) -> Option<PathBuf> {
        self.common.out.clone().or_else(|| self.raw("out").map(PathBuf::from))
    }

    fn workers(&self) -> Result<usize, Error> {
        match self.common.workers {
            Some(n) => Ok(n),
            None => match self.raw("workers") {
                Some(v) => v.parse().map_err(|_| Error::Parse(format!("workers: not an integer: {v:?}"))),
                None => Ok(spinotto::sweep::default_workers()),
            },
        }
    }

    fn base(&self) -> Result<BaseParams, Error> {
        let d = BaseParams::default();
        let j = self.number(self.common.j, "J")?;
        Ok(BaseParams {
            j1: self.number(self.common.j1, "J1")?.or(j).unwrap_or(d.j1),
            j2: self.number(self.common.j2, "J2")?.or(j).unwrap_or(d.j2),
            b1: self.or_default(self.common.b1, "B1", d.b1)?,
            b2: self.or_default(self.common.b2, "B2", d.b2)?,
            t1: self.or_default(self.common.t1, "T1", d.t1)?,
            t2: self.or_default(self.common.t2, "T2", d.t2)?,
        })
    }

    fn engine(&self) -> Result<EngineConfig, Error> {
        let s = self.required_spin()?;
        let j = self.required(self.common.j, "J")?;
        let b = self.base()?;
        EngineConfig::new(s, j, b.b1, b.b2, b.t1, b.t2)
    }
}

fn open_output(path: Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn f(x: f64) -> String {
    format_scalar(x)
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "nan".into(), format_scalar)
}

fn figure_fields(fig: LocalFigure) -> (String, String) {
    match fig {
        LocalFigure::Efficiency(e) => (f(e), "nan".into()),
        LocalFigure::Cop(c) => ("nan".into(), f(c)),
        LocalFigure::Undefined => ("nan".into(), "nan".into()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Spectrum { common, b, matrix } => {
            let set = Settings::new(common)?;
            let s = set.required_spin()?;
            let j = set.required(set.common.j, "J")?;
            let b = match set.number(b, "B")? {
                Some(b) => b,
                None => set.or_default(set.common.b1, "B1", BaseParams::default().b1)?,
            };
            let ops = PairOperators::new(s);
            let h = ops.hamiltonian(j, b)?;
            let mut out = open_output(set.out())?;
            if set.flag(matrix, "matrix")? {
                let d = h.matrix.dim();
                let cols: Vec<String> = (0..d).map(|c| c.to_string()).collect();
                writeln!(out, "row,{}", cols.join(","))?;
                for r in 0..d {
                    let vals: Vec<String> = (0..d).map(|c| f(h.matrix.get(r, c))).collect();
                    writeln!(out, "{r},{}", vals.join(","))?;
                }
            } else {
                let spec = diagonalize(&h)?;
                writeln!(out, "n,energy,closed_form,sector,m")?;
                for (n, (e, level)) in spec.energies.iter().zip(analytic_spectrum(s, j, b)).enumerate() {
                    let sector = match level.sector {
                        spinotto::spin::Sector::Upper => "upper",
                        spinotto::spin::Sector::Lower => "lower",
                    };
                    writeln!(out, "{n},{},{},{sector},{}", f(*e), f(level.energy), f64::from(level.twice_m) / 2.0)?;
                }
            }
            out.flush()?;
        }
        Command::Cycle { common } => {
            let set = Settings::new(common)?;
            let cfg = set.engine()?;
            let r = run_cycle(&cfg)?;
            let mut out = open_output(set.out())?;
            writeln!(out, "s,J,B1,B2,T1,T2,W,Q1,Q2,eta,eta_bound,eta_carnot,eta_uncoupled,mode")?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                cfg.s.value(),
                f(cfg.j),
                f(cfg.b1),
                f(cfg.b2),
                f(cfg.t1),
                f(cfg.t2),
                f(r.w),
                f(r.q1),
                f(r.q2),
                opt(r.eta),
                opt(r.eta_bound),
                f(r.eta_carnot),
                f(r.eta_uncoupled),
                r.mode.as_str()
            )?;
            out.flush()?;
        }
        Command::Local { common } => {
            let set = Settings::new(common)?;
            let cfg = set.engine()?;
            let ops = PairOperators::new(cfg.s);
            let ends = cfg.endpoints(&ops)?;
            let red = ReducedEndpoints::new(&ends)?;
            let lr = spinotto::local::local_from_endpoints(&ops, &ends, &red);
            let temps = local_temperatures(&ends, &red)?;
            let (fa, fb) = local_efficiency(&lr, cfg.b1, cfg.b2);
            let (eta_a, cop_a) = figure_fields(fa);
            let (eta_b, cop_b) = figure_fields(fb);
            let mut out = open_output(set.out())?;
            writeln!(
                out,
                "s,J,B1,B2,T1,T2,wA,wB,q1A,q2A,q1B,q2B,Ps,modeA,modeB,etaA,etaB,copA,copB,\
                 TA_hot,TA_cold,B_thermal_hot,B_thermal_cold,B_spread_hot,B_spread_cold"
            )?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                cfg.s.value(),
                f(cfg.j),
                f(cfg.b1),
                f(cfg.b2),
                f(cfg.t1),
                f(cfg.t2),
                f(lr.wa),
                f(lr.wb),
                f(lr.q1a),
                f(lr.q2a),
                f(lr.q1b),
                f(lr.q2b),
                f(lr.ps),
                lr.mode_a.as_str(),
                lr.mode_b.as_str(),
                eta_a,
                eta_b,
                cop_a,
                cop_b,
                f(temps.a_hot.temperature.to_f64()),
                f(temps.a_cold.temperature.to_f64()),
                u8::from(temps.b_hot.is_thermal),
                u8::from(temps.b_cold.is_thermal),
                f(temps.b_hot.spread),
                f(temps.b_cold.spread),
            )?;
            out.flush()?;
        }
        Command::Coop { common } => {
            let set = Settings::new(common)?;
            let s = set.required_spin()?;
            let b = set.base()?;
            let j = set.number(set.common.j, "J")?;
            let has_j1 = set.number(set.common.j1, "J1")?.is_some() || j.is_some();
            let has_j2 = set.number(set.common.j2, "J2")?.is_some() || j.is_some();
            if !(has_j1 && has_j2) {
                return Err(Error::InvalidConfig("coop needs --J1 and --J2 (or --J)".into()).into());
            }
            let cfg = GeneralizedConfig::new(s, b.j1, b.j2, b.b1, b.b2, b.t1, b.t2)?;
            let cr = run_generalized_cycle(&cfg)?;
            let mut out = open_output(set.out())?;
            writeln!(
                out,
                "s,J1,J2,B1,B2,T1,T2,W,wA,wB,Ps,residual,wA_mf,wB_mf,w_coop,cov1,cov2,ratio,ratio_closed_form"
            )?;
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                s.value(),
                f(cfg.j1),
                f(cfg.j2),
                f(cfg.b1),
                f(cfg.b2),
                f(cfg.t1),
                f(cfg.t2),
                f(cr.w),
                f(cr.wa_simple),
                f(cr.wb_simple),
                f(cr.ps),
                f(cr.residual),
                f(cr.wa_mf),
                f(cr.wb_mf),
                f(cr.w_coop),
                f(cr.cov1),
                f(cr.cov2),
                f(cr.ratio.to_f64()),
                f(if cfg.b1 == cfg.b2 { closed_form_ratio(&cr).to_f64() } else { f64::NAN }),
            )?;
            out.flush()?;
        }
        Command::Sweep { common, param, min, max, steps, s_list } => {
            let set = Settings::new(common)?;
            let param: SweptParam = match param.as_deref().or(set.raw("param")) {
                Some(p) => p.parse()?,
                None => SweptParam::J,
            };
            let defaults = SweepSpec::fig1();
            let s_list = match s_list.as_deref().or(set.raw("s-list")) {
                Some(list) => list.split(',').map(str::parse).collect::<Result<Vec<SpinQuantumNumber>, _>>()?,
                None => match set.spin()? {
                    Some(s) => vec![s],
                    None => defaults.s_list.clone(),
                },
            };
            let steps = match steps {
                Some(n) => n,
                None => match set.raw("steps") {
                    Some(v) => v.parse().map_err(|_| Error::Parse(format!("steps: not an integer: {v:?}")))?,
                    None => defaults.steps,
                },
            };
            let (dmin, dmax) = match param {
                SweptParam::J => (defaults.min, defaults.max),
                SweptParam::B2 => (0.5, 3.5),
                SweptParam::T2 => (0.05, 0.95),
            };
            let spec = SweepSpec {
                param,
                min: set.or_default(min, "min", dmin)?,
                max: set.or_default(max, "max", dmax)?,
                steps,
                s_list,
                base: set.base()?,
                refine_pwc: set.flag(set.common.refine_pwc, "refine-pwc")?,
                workers: set.workers()?,
            };
            let rows = run_sweep(&spec)?;
            let mut out = open_output(set.out())?;
            write_csv(&mut out, param, &rows)?;
            out.flush()?;
        }
        Command::PlotScript { csv, figure, out } => {
            let kind: FigureKind = figure.parse()?;
            let script = emit_plot_script(&csv, kind)?;
            let mut w = open_output(out)?;
            w.write_all(script.as_bytes())?;
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e @ Error::NotConverged(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
