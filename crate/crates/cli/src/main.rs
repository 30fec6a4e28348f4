use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use mharm::coeffs::{c_pq_auto, continued, harm_coeff, Pole};
use mharm::harmonics::{peter_weyl_all, project, Projection};
use mharm::kernels::{gram_matrix, min_eigenvalue, truncated_kernel, KernelFamily};
use mharm::polyalg::{ComplexPoly, RealPoly};
use mharm::sampling::{ball_points, real_ball_points, DEFAULT_SEED};
use mharm::seminorms::{
    dirichlet_cici, dirichlet_circ, dirichlet_sq, hardy_norm, norm_s, radial_seminorm, tangential_sum, theorem_ph_sums,
    theorem_pj_sums, SeminormReport,
};
use mharm::specfun::pochhammer;
use mharm::verify::{self, Suite, VerifyConfig};
use mharm::{Error, Result};

#[derive(Parser)]
#[command(name = "mharm", version, about = "M-harmonic Dirichlet spaces: coefficients, kernels, seminorms and verification suites")]
struct Cli {
    /// write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// C_pq(s) table as CSV: n,p,q,s,value,error
    Coeffs {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        p: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        q: Vec<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        s: Vec<f64>,
    },
    /// pole ledger of C_pq as JSON
    Residues {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Gram matrix of a truncated kernel as JSON {values, min_eig}
    Kernel(KernelArgs),
    /// Peter-Weyl projection of a polynomial file
    Project {
        #[arg(long)]
        input: PathBuf,
        /// pi0 | hol | antihol | P | Q
        #[arg(long)]
        which: String,
    },
    /// a seminorm of a polynomial file as JSON
    Seminorm(SeminormArgs),
    /// (n/2)_p/(n/2+s+1)_p table as CSV: n,p,s,value,error
    HarmCoeffs {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        p_max: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        s: Vec<f64>,
    },
    /// run a named suite; exits nonzero when any check fails
    Verify(VerifyArgs),
}

#[derive(Args)]
struct KernelArgs {
    /// mharmonic_s | cici | circ | harmonic_s
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long, default_value_t = 8)]
    cutoff: usize,
    /// CSV, one point per line: re,im pairs (complex families) or coordinates (harmonic_s)
    #[arg(long)]
    points_file: Option<PathBuf>,
    #[arg(long, default_value_t = 15)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct SeminormArgs {
    #[arg(long)]
    input: PathBuf,
    /// norm_s | hardy | cici | circ | tangential | radial | ph | sq | harm_s | pj
    #[arg(long)]
    name: String,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// pf | pk | ph | pi | pj | pc | psd | limits
    suite: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long = "a", value_delimiter = ',')]
    a_list: Option<Vec<f64>>,
    #[arg(long)]
    degree: Option<usize>,
    /// cells as "p,q;p,q"
    #[arg(long)]
    cells: Option<String>,
    #[arg(long)]
    p_max: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

const SCHEMA: u32 = 1;

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("a readable file {}: {e}", path.display())))
}

fn require_nonempty<T>(v: &[T], name: &str) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidInput(format!("a nonempty --{name} list")));
    }
    Ok(())
}

fn coeffs(n: usize, ps: &[usize], qs: &[usize], ss: &[f64]) -> Result<String> {
    require_nonempty(ps, "p")?;
    require_nonempty(qs, "q")?;
    require_nonempty(ss, "s")?;
    let mut out = String::from("n,p,q,s,value,error\n");
    for &p in ps {
        for &q in qs {
            for &s in ss {
                let (v, e) = c_pq_auto(n, p, q, s)?;
                out.push_str(&format!("{n},{p},{q},{s},{v:.17e},{e:.3e}\n"));
            }
        }
    }
    Ok(out)
}

/// Simple poles of (n)_p/(n+s+1)_p at s = −n−1−j, j < p.
fn closed_form_poles(n: usize, p: usize) -> Vec<Pole> {
    (0..p)
        .map(|j| {
            let others: f64 = (0..p).filter(|&i| i != j).map(|i| i as f64 - j as f64).product();
            Pole { location: -((n + 1 + j) as f64), order: 1, strength: pochhammer(n as f64, p) / others }
        })
        .collect()
}

fn residues(n: usize, p: usize, q: usize) -> Result<String> {
    let poles = if p * q == 0 { closed_form_poles(n, p + q) } else { continued(n, p, q)?.pole_ledger() };
    Ok(pretty(&json!({"schema": SCHEMA, "n": n, "p": p, "q": q, "poles": poles})))
}

fn parse_points(text: &str, n: usize, complex: bool) -> Result<Vec<Vec<Complex64>>> {
    let width = if complex { 2 * n } else { n };
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: Vec<f64> = line
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() }))
            .collect::<Result<_>>()?;
        if v.len() != width {
            return Err(Error::Parse { line: i + 1, msg: format!("expected {width} numbers, got {}", v.len()) });
        }
        out.push(if complex {
            v.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
        } else {
            v.into_iter().map(|x| Complex64::new(x, 0.0)).collect()
        });
    }
    Ok(out)
}

fn kernel(args: &KernelArgs) -> Result<String> {
    let family: KernelFamily = args.family.parse()?;
    let k = truncated_kernel(family, args.n, args.s, args.cutoff)?;
    let complex = family != KernelFamily::HarmonicS;
    let points = match &args.points_file {
        Some(path) => parse_points(&read(path)?, args.n, complex)?,
        None if complex => ball_points(args.n, args.count, args.seed, 0.9),
        None => real_ball_points(args.n, args.count, args.seed, 0.9)
            .into_iter()
            .map(|x| x.into_iter().map(|v| Complex64::new(v, 0.0)).collect())
            .collect(),
    };
    let g = gram_matrix(&k, &points)?;
    let values: Vec<Vec<[f64; 2]>> = (0..g.nrows()).map(|i| (0..g.ncols()).map(|j| [g[(i, j)].re, g[(i, j)].im]).collect()).collect();
    let report = json!({
        "schema": SCHEMA,
        "family": family.to_string(),
        "n": args.n,
        "s": args.s,
        "cutoff": args.cutoff,
        "seed": if args.points_file.is_some() { None } else { Some(args.seed) },
        "points": points.len(),
        "values": values,
        "min_eig": min_eigenvalue(&g),
    });
    Ok(pretty(&report))
}

fn project_cmd(input: &PathBuf, which: &str) -> Result<String> {
    let f = ComplexPoly::parse(&read(input)?, None)?;
    let which: Projection = which.parse()?;
    let pw = project(&peter_weyl_all(&f), which);
    let mut out = String::new();
    for ((p, q), norm) in pw.cell_norms() {
        out.push_str(&format!("# ({p},{q}): {:.17e}\n", norm.re));
    }
    out.push_str(&pw.to_poly().pruned(1e-15).to_string());
    Ok(out)
}

fn need<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidInput(format!("a --{name} value")))
}

fn seminorm(args: &SeminormArgs) -> Result<String> {
    let text = read(&args.input)?;
    let report: SeminormReport = match args.name.as_str() {
        "sq" | "harm_s" | "pj" => {
            let f = RealPoly::parse(&text, None)?;
            match args.name.as_str() {
                "sq" => dirichlet_sq(&f)?,
                "harm_s" => mharm::realharm::harm_norm_s(&f, need(args.s, "s")?)?,
                _ => theorem_pj_sums(&f, need(args.m, "m")?)?,
            }
        }
        name => {
            let f = ComplexPoly::parse(&text, None)?;
            let pw = peter_weyl_all(&f);
            match name {
                "norm_s" => norm_s(&pw, need(args.s, "s")?)?,
                "hardy" => hardy_norm(&pw),
                "cici" => dirichlet_cici(&pw)?,
                "circ" => dirichlet_circ(&pw),
                "tangential" => tangential_sum(&f, need(args.m, "m")?)?,
                "radial" => radial_seminorm(&pw, need(args.m, "m")?)?,
                "ph" => {
                    let r = theorem_ph_sums(&pw, need(args.k, "k")?)?;
                    return Ok(pretty(&json!({"schema": SCHEMA, "hardy": r.hardy, "weighted": r.weighted})));
                }
                other => return Err(Error::InvalidInput(format!("a seminorm name, got {other}"))),
            }
        }
    };
    Ok(pretty(&json!({"schema": SCHEMA, "report": report})))
}

fn harm_coeffs(n: usize, p_max: usize, ss: &[f64]) -> Result<String> {
    require_nonempty(ss, "s")?;
    let mut out = String::from("n,p,s,value,error\n");
    for &s in ss {
        for p in 0..=p_max {
            let v = harm_coeff(n, p, s)?;
            let e = 4.0 * f64::EPSILON * (p as f64 + 1.0) * v.abs();
            out.push_str(&format!("{n},{p},{s},{v:.17e},{e:.3e}\n"));
        }
    }
    Ok(out)
}

fn parse_cells(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(';')
        .filter(|c| !c.trim().is_empty())
        .map(|c| {
            let (p, q) = c.split_once(',').ok_or_else(|| Error::InvalidInput(format!("a cell \"p,q\", got {c:?}")))?;
            let num = |x: &str| x.trim().parse::<usize>().map_err(|e| Error::InvalidInput(format!("a cell index: {e}")));
            Ok((num(p)?, num(q)?))
        })
        .collect()
}

fn verify_cmd(args: &VerifyArgs) -> Result<(String, bool)> {
    let suite: Suite = args.suite.parse()?;
    let cfg = VerifyConfig {
        seed: args.seed,
        n: args.n,
        p: args.p,
        q: args.q,
        a_list: args.a_list.clone(),
        degree: args.degree,
        cells: args.cells.as_deref().map(parse_cells).transpose()?,
        p_max: args.p_max,
    };
    let r = verify::run(suite, &cfg)?;
    Ok((r.to_json() + "\n", r.pass))
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

fn dispatch(cli: &Cli) -> Result<(String, bool)> {
    let ok = |s: String| Ok((s, true));
    match &cli.command {
        Command::Coeffs { n, p, q, s } => ok(coeffs(*n, p, q, s)?),
        Command::Residues { n, p, q } => ok(residues(*n, *p, *q)?),
        Command::Kernel(a) => ok(kernel(a)?),
        Command::Project { input, which } => ok(project_cmd(input, which)?),
        Command::Seminorm(a) => ok(seminorm(a)?),
        Command::HarmCoeffs { n, p_max, s } => ok(harm_coeffs(*n, *p_max, s)?),
        Command::Verify(a) => verify_cmd(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((text, pass)) => {
            match &cli.output {
                Some(path) => {
                    if let Err(e) = fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
