//! `h2r` command-line front end.
//!
//! Every subcommand reads `key = value` settings from an optional
//! `--config FILE` and from trailing `KEY=VALUE` arguments, the latter taking
//! precedence. Outputs go to `out_dir`, defaulting to `$H2R_OUT_DIR` and then
//! the current directory. Exit codes: 0 success, 1 property or convergence
//! failure, 2 usage or configuration error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::ambient::DomainPoint;
use crate::catalog::{list_expected_properties, Family, SolutionSpec};
use crate::error::{Error, Result};
use crate::exec::{max_abs, Exec};
use crate::io::{csv, fmt_f64, parse_kv, write_atomic, JobConfig, Mesh};
use crate::pde::{solve_dirichlet, GridField, SolveOptions};
use crate::sampling::Rect;
use crate::shape::{
    codazzi_identity_residual, cylinder_ode_residual, gauss_map, gauss_pca_rank, gauss_rank_with,
    minimal_residual, pca_spread_ratio, surface_data, totally_geodesic_residual,
    umbilicity_residual, vertical_plane_data, vertical_surface_data, GraphField, PCA_PATCH_RADIUS,
};
use crate::variational::{area_comparison, area_grid, area_with, sine_bump, STANDARD_BUMP_MODES};

pub const OUT_DIR_ENV: &str = "H2R_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "h2r", version, about = "Minimal and umbilical graphs in H²×R")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the expected properties of a catalog family on a region
    Verify(JobArgs),
    /// Solve the minimal-surface Dirichlet problem on a rectangle
    Solve(JobArgs),
    /// Dump fundamental forms, mean curvature and normal on a sample grid
    Curvature(JobArgs),
    /// Area of a catalog graph or of a solved grid, with bump comparisons
    Area(JobArgs),
    /// Sample the Gauss map
    Gaussmap(JobArgs),
    /// Triangulated OBJ mesh of a surface
    Export(JobArgs),
}

#[derive(Args, Debug)]
struct JobArgs {
    /// Settings file with `key = value` lines
    #[arg(long)]
    config: Option<PathBuf>,
    /// Settings overriding the file
    #[arg(value_name = "KEY=VALUE")]
    settings: Vec<String>,
}

const COMMON_KEYS: &[&str] = &[
    "family", "a", "b", "c", "c1", "c2", "c3", "region", "out_dir", "name",
];

fn command_keys(cmd: &Cmd) -> (&'static str, &'static [&'static str]) {
    match cmd {
        Cmd::Verify(_) => ("verify", &["points", "tol", "rank_samples"]),
        Cmd::Solve(_) => (
            "solve",
            &[
                "nx", "ny", "tol", "max_iter", "bottom", "top", "left", "right", "exec",
            ],
        ),
        Cmd::Curvature(_) => ("curvature", &["n"]),
        Cmd::Area(_) => ("area", &["n", "input", "compare", "eps"]),
        Cmd::Gaussmap(_) => ("gaussmap", &["n", "rmin", "rmax"]),
        Cmd::Export(_) => ("export", &["nx", "ny", "rmin", "rmax", "v0", "v1", "input"]),
    }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match dispatch(&cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonConvergence(_) | Error::SingularJacobian { .. } => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cmd: &Cmd, out: &mut dyn Write) -> Result<i32> {
    let (name, extra) = command_keys(cmd);
    let args = match cmd {
        Cmd::Verify(a)
        | Cmd::Solve(a)
        | Cmd::Curvature(a)
        | Cmd::Area(a)
        | Cmd::Gaussmap(a)
        | Cmd::Export(a) => a,
    };
    let file = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
            parse_kv(&text)?
        }
        None => Vec::new(),
    };
    let flags = args
        .settings
        .iter()
        .map(|s| {
            s.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Config(format!("expected KEY=VALUE, got {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let allowed: Vec<&str> = COMMON_KEYS.iter().chain(extra).copied().collect();
    let cfg = JobConfig::build(&allowed, [file.as_slice(), flags.as_slice()])?;
    let job = Job { cfg, name };
    match cmd {
        Cmd::Verify(_) => job.verify(out),
        Cmd::Solve(_) => job.solve(out),
        Cmd::Curvature(_) => job.curvature(out),
        Cmd::Area(_) => job.area(out),
        Cmd::Gaussmap(_) => job.gaussmap(out),
        Cmd::Export(_) => job.export(out),
    }
}

struct Job {
    cfg: JobConfig,
    name: &'static str,
}

impl Job {
    fn spec(&self) -> Result<SolutionSpec> {
        let family: Family = self
            .cfg
            .require("family")?
            .parse()
            .map_err(|e: Error| Error::Config(e.to_string()))?;
        let mut values = Vec::new();
        for k in ["a", "b", "c", "c1", "c2", "c3"] {
            if let Some(v) = self.cfg.parsed::<f64>(k)? {
                values.push((k, v));
            }
        }
        SolutionSpec::from_named(family, &values).map_err(|e| Error::Config(e.to_string()))
    }

    fn region(&self, default: &str) -> Result<Rect> {
        self.cfg
            .get("region")
            .unwrap_or(default)
            .parse()
            .map_err(|e: Error| Error::Config(e.to_string()))
    }

    fn output_path(&self, suffix: &str) -> PathBuf {
        let dir = self
            .cfg
            .get("out_dir")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        let stem = self.cfg.get("name").unwrap_or(self.name);
        dir.join(format!("{stem}{suffix}"))
    }

    fn emit(&self, out: &mut dyn Write, suffix: &str, contents: &str) -> Result<PathBuf> {
        let path = self.output_path(suffix);
        write_atomic(&path, contents.as_bytes())?;
        writeln!(out, "wrote {}", path.display())?;
        Ok(path)
    }

    fn annulus(&self) -> Result<impl Fn(f64, f64) -> bool> {
        let rmin = self.cfg.parsed_or("rmin", 0.0_f64)?;
        let rmax = self.cfg.parsed_or("rmax", f64::INFINITY)?;
        if !(rmin >= 0.0 && rmin < rmax) {
            return Err(Error::Config(format!(
                "need 0 <= rmin < rmax, got {rmin}, {rmax}"
            )));
        }
        Ok(move |x: f64, y: f64| {
            let r = x.hypot(y);
            r >= rmin && r <= rmax
        })
    }

    fn verify(&self, out: &mut dyn Write) -> Result<i32> {
        let spec = self.spec()?;
        let region = self.region("[1,2]x[1,2]")?;
        let n = self.cfg.parsed_or("points", 500usize)?;
        let tol = self.cfg.parsed_or("tol", 1e-9_f64)?;
        let rank_samples = self.cfg.parsed_or("rank_samples", 9usize)?;
        let exp = list_expected_properties(&spec);
        let exec = Exec::default();
        let mut checks: Vec<(String, String, String, bool)> = Vec::new();
        let mut num = |name: &str, v: f64, tol: f64| {
            checks.push((
                name.into(),
                format!("{v:.3e}"),
                format!("{tol:.1e}"),
                v <= tol,
            ));
        };

        match spec.family() {
            Family::GeodesicCylinder => {
                let (u0, u1) = spec.profile_interval().expect("valid cylinder");
                let pad = 0.05 * (u1 - u0);
                let us: Vec<f64> = (0..n)
                    .map(|k| u0 + pad + (u1 - u0 - 2.0 * pad) * (k as f64 + 0.5) / n as f64)
                    .collect();
                let data = exec.try_map(us.len(), |k| {
                    let vp = spec.profile(us[k])?;
                    Ok::<_, Error>((
                        cylinder_ode_residual(&vp).abs(),
                        vertical_surface_data(&vp, us[k])?,
                    ))
                })?;
                num("profile_ode", data.iter().fold(0.0, |m, d| m.max(d.0)), tol);
                num(
                    "second_form",
                    data.iter().fold(0.0, |m, d| m.max(d.1.max_second_form())),
                    tol,
                );
                num(
                    "mean_curvature",
                    data.iter().fold(0.0, |m, d| m.max(d.1.h.abs())),
                    tol,
                );
            }
            Family::VerticalPlane => {
                let c = spec.vertical_plane_offset().expect("vertical plane");
                let us: Vec<f64> = (0..n)
                    .map(|k| region.y0 + region.height() * (k as f64 + 0.5) / n as f64)
                    .collect();
                let data = exec.try_map(us.len(), |k| vertical_plane_data(c, us[k]))?;
                num(
                    "second_form",
                    data.iter().fold(0.0, |m, d| m.max(d.max_second_form())),
                    tol,
                );
            }
            _ => {
                let pts = region.halton_filtered(n, |p| spec.admissible(p))?;
                let jets = exec.try_map(pts.len(), |k| spec.jet2(pts[k]))?;
                let max_over = |f: &dyn Fn(DomainPoint, &crate::Jet2) -> f64| {
                    pts.iter()
                        .zip(&jets)
                        .fold(0.0_f64, |m, (p, j)| m.max(f(*p, j).abs()))
                };
                if exp.minimal {
                    num(
                        "minimal_residual",
                        max_over(&|p, j| minimal_residual(p, j)),
                        tol,
                    );
                }
                if exp.totally_geodesic {
                    num(
                        "totally_geodesic",
                        max_over(&|p, j| totally_geodesic_residual(p, j)),
                        tol,
                    );
                }
                if exp.umbilical {
                    num(
                        "umbilicity",
                        max_over(&|p, j| umbilicity_residual(p, j)),
                        tol,
                    );
                }
                if let Some(u) = spec.umbilical_params() {
                    let r = pts
                        .iter()
                        .map(|p| codazzi_identity_residual(*p, &u))
                        .collect::<Result<Vec<_>>>()?;
                    num("y2w_identity", max_abs(&r), tol);
                }
                if let Some(expected) = exp.gauss_rank {
                    let g = gauss_rank_with(&spec, region, rank_samples, exec)?;
                    checks.push((
                        "gauss_rank".into(),
                        g.rank.to_string(),
                        expected.to_string(),
                        g.rank == expected,
                    ));
                }
            }
        }

        writeln!(out, "{spec} on {region}")?;
        writeln!(out, "{:<18} {:>12} {:>10}  result", "check", "value", "tol")?;
        for (name, v, t, ok) in &checks {
            writeln!(
                out,
                "{name:<18} {v:>12} {t:>10}  {}",
                if *ok { "PASS" } else { "FAIL" }
            )?;
        }
        let all = checks.iter().all(|c| c.3);
        writeln!(out, "overall: {}", if all { "PASS" } else { "FAIL" })?;
        Ok(if all { EXIT_OK } else { EXIT_FAILURE })
    }

    fn solve(&self, out: &mut dyn Write) -> Result<i32> {
        let region = self.region("[1,2]x[0.5,1.5]")?;
        let edges: Vec<Option<Vec<f64>>> = ["bottom", "top", "left", "right"]
            .iter()
            .map(|k| self.cfg.float_list(k))
            .collect::<Result<_>>()?;
        let (grid, oracle) = if edges.iter().any(Option::is_some) {
            if self.cfg.get("family").is_some() || edges.iter().any(Option::is_none) {
                return Err(Error::Config(
                    "explicit boundary needs all of bottom, top, left, right and no family".into(),
                ));
            }
            let e: Vec<&[f64]> = edges.iter().map(|v| v.as_deref().unwrap()).collect();
            let g = GridField::from_edges(region, e[0], e[1], e[2], e[3])
                .map_err(|err| Error::Config(err.to_string()))?;
            (g, None)
        } else {
            let spec = self.spec()?;
            let nx = self.cfg.parsed_or("nx", 33usize)?;
            let ny = self.cfg.parsed_or("ny", nx)?;
            let g = GridField::boundary_trace(region, nx, ny, &spec)
                .map_err(|e| Error::Config(e.to_string()))?;
            (g, Some(spec))
        };
        let exec = match self.cfg.get("exec").unwrap_or("parallel") {
            "parallel" => Exec::Parallel,
            "sequential" => Exec::Sequential,
            other => {
                return Err(Error::Config(format!(
                    "exec must be parallel or sequential, got {other:?}"
                )))
            }
        };
        let opts = SolveOptions {
            tol: self.cfg.parsed_or("tol", 1e-10)?,
            max_iter: self.cfg.parsed_or("max_iter", 50usize)?,
            exec,
        };
        match solve_dirichlet(&grid, &opts) {
            Ok((sol, rep)) => {
                self.emit(out, ".csv", &sol.to_csv())?;
                self.emit(out, "_report.txt", &rep.to_kv())?;
                writeln!(out, "{rep}")?;
                writeln!(
                    out,
                    "max_principle_excess={}",
                    fmt_f64(sol.max_principle_excess())
                )?;
                if let Some(spec) = oracle {
                    if let Ok(e) = sol.max_error(&spec) {
                        writeln!(out, "max_error_vs_analytic={}", fmt_f64(e))?;
                    }
                }
                Ok(EXIT_OK)
            }
            Err(Error::NonConvergence(rep)) => {
                self.emit(out, "_report.txt", &rep.to_kv())?;
                writeln!(out, "{rep}")?;
                Ok(EXIT_FAILURE)
            }
            Err(Error::SingularJacobian { iterate, report }) => {
                self.emit(out, ".csv", &iterate.to_csv())?;
                self.emit(out, "_report.txt", &report.to_kv())?;
                writeln!(out, "singular Jacobian: {report}")?;
                Ok(EXIT_FAILURE)
            }
            Err(e) => Err(e),
        }
    }

    fn curvature(&self, out: &mut dyn Write) -> Result<i32> {
        let spec = self.spec()?;
        let region = self.region("[1,2]x[1,2]")?;
        let n = self.cfg.parsed_or("n", 11usize)?.max(1);
        let body = match spec.family() {
            Family::GeodesicCylinder | Family::VerticalPlane => {
                let (u0, u1) = spec.profile_interval().unwrap_or((region.y0, region.y1));
                let rows = (0..n)
                    .map(|k| {
                        let u = u0 + (u1 - u0) * (k as f64 + 0.5) / n as f64;
                        let (x, y, d) = match spec.vertical_plane_offset() {
                            Some(c) => (c, u, vertical_plane_data(c, u)?),
                            None => {
                                let vp = spec.profile(u)?;
                                (u, vp.a, vertical_surface_data(&vp, u)?)
                            }
                        };
                        Ok([
                            x,
                            y,
                            d.e,
                            d.f,
                            d.g,
                            d.l,
                            d.m,
                            d.n,
                            d.h,
                            d.normal.c1,
                            d.normal.c2,
                            d.normal.c3,
                        ]
                        .iter()
                        .map(|v| fmt_f64(*v))
                        .collect())
                    })
                    .collect::<Result<Vec<Vec<String>>>>()?;
                csv(
                    &[
                        "x", "y", "E", "F", "G", "L", "M", "N", "H", "xi1", "xi2", "xi3",
                    ],
                    rows,
                )
            }
            _ => {
                let rows = region
                    .interior_grid(n)
                    .into_iter()
                    .filter(|p| spec.admissible(*p))
                    .map(|p| {
                        let j = spec.jet2(p)?;
                        let d = surface_data(p, &j);
                        Ok([
                            p.x(),
                            p.y(),
                            d.e,
                            d.f,
                            d.g,
                            d.l,
                            d.m,
                            d.n,
                            d.w,
                            d.mean_curvature(),
                            d.normal.c1,
                            d.normal.c2,
                            d.normal.c3,
                            minimal_residual(p, &j),
                        ]
                        .iter()
                        .map(|v| fmt_f64(*v))
                        .collect())
                    })
                    .collect::<Result<Vec<Vec<String>>>>()?;
                csv(
                    &[
                        "x", "y", "E", "F", "G", "L", "M", "N", "w", "H", "xi1", "xi2", "xi3",
                        "residual",
                    ],
                    rows,
                )
            }
        };
        self.emit(out, ".csv", &body)?;
        Ok(EXIT_OK)
    }

    fn area(&self, out: &mut dyn Write) -> Result<i32> {
        if let Some(path) = self.cfg.get("input") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
            let gf = GridField::from_csv(&text).map_err(|e| Error::Config(e.to_string()))?;
            let base = area_grid(&gf);
            let mut rows = vec![vec![
                "base".into(),
                "0".into(),
                "0".into(),
                fmt_f64(0.0),
                fmt_f64(base.area),
                fmt_f64(0.0),
            ]];
            let mut all_positive = true;
            if self.cfg.parsed_or("compare", false)? {
                let eps = self
                    .cfg
                    .float_list("eps")?
                    .unwrap_or_else(|| vec![-0.1, -0.01, 0.01, 0.1]);
                for (k, l) in STANDARD_BUMP_MODES {
                    let cmp = area_comparison(&gf, &sine_bump(&gf, k, l), &eps)?;
                    for r in &cmp.rows {
                        all_positive &= r.eps == 0.0 || r.diff > 0.0;
                        rows.push(vec![
                            "bump".into(),
                            k.to_string(),
                            l.to_string(),
                            fmt_f64(r.eps),
                            fmt_f64(r.area),
                            fmt_f64(r.diff),
                        ]);
                    }
                }
            }
            writeln!(
                out,
                "area={} ({}, {} cells)",
                fmt_f64(base.area),
                base.rule,
                base.resolution
            )?;
            self.emit(
                out,
                ".csv",
                &csv(&["kind", "k", "l", "eps", "area", "diff"], rows),
            )?;
            if !all_positive {
                writeln!(out, "some perturbation did not increase the area")?;
                return Ok(EXIT_FAILURE);
            }
            return Ok(EXIT_OK);
        }
        let spec = self.spec()?;
        let region = self.region("[1,2]x[1,2]")?;
        let n = self.cfg.parsed_or("n", 128usize)?;
        let rep = area_with(&spec, region, n, Exec::default())?;
        writeln!(
            out,
            "area={} ({}, n={}, est. error {:.2e})",
            fmt_f64(rep.area),
            rep.rule,
            rep.resolution,
            rep.estimated_error
        )?;
        let row = vec![
            fmt_f64(rep.area),
            rep.rule.to_string(),
            rep.resolution.to_string(),
            fmt_f64(rep.estimated_error),
        ];
        self.emit(
            out,
            ".csv",
            &csv(&["area", "rule", "resolution", "estimated_error"], [row]),
        )?;
        Ok(EXIT_OK)
    }

    fn gaussmap(&self, out: &mut dyn Write) -> Result<i32> {
        let spec = self.spec()?;
        if !spec.family().is_graph() {
            return Err(Error::Config(format!("{} is not a graph", spec.family())));
        }
        let region = self.region("[1,2]x[1,2]")?;
        let n = self.cfg.parsed_or("n", 64usize)?.max(2);
        let inside = self.annulus()?;
        let mut rows = Vec::new();
        let mut masked = Vec::new();
        for j in 0..n {
            for i in 0..n {
                let p = region.at(i as f64 / (n - 1) as f64, j as f64 / (n - 1) as f64);
                if !spec.admissible(p) {
                    continue;
                }
                let xi = gauss_map(p, &spec.jet2(p)?);
                let m = inside(p.x(), p.y());
                if m {
                    masked.push(xi);
                }
                rows.push(vec![
                    fmt_f64(p.x()),
                    fmt_f64(p.y()),
                    fmt_f64(xi.c1),
                    fmt_f64(xi.c2),
                    fmt_f64(xi.c3),
                    (m as u8).to_string(),
                ]);
            }
        }
        self.emit(
            out,
            ".csv",
            &csv(&["x", "y", "xi1", "xi2", "xi3", "mask"], rows),
        )?;
        let (ratio, spread) = pca_spread_ratio(&masked);
        writeln!(
            out,
            "global_pca_ratio={} spread={}",
            fmt_f64(ratio),
            fmt_f64(spread)
        )?;
        if let Ok(local) = gauss_pca_rank(&spec, region, 5, 5, PCA_PATCH_RADIUS, Exec::default()) {
            let r = local
                .rank
                .map_or("undetermined".to_string(), |r| r.to_string());
            writeln!(
                out,
                "local_pca_rank={r} max_ratio={}",
                fmt_f64(local.max_ratio)
            )?;
        }
        Ok(EXIT_OK)
    }

    fn export(&self, out: &mut dyn Write) -> Result<i32> {
        let nx = self.cfg.parsed_or("nx", 41usize)?;
        let ny = self.cfg.parsed_or("ny", nx)?;
        if nx < 2 || ny < 2 {
            return Err(Error::Config(format!(
                "export needs nx, ny >= 2, got {nx} x {ny}"
            )));
        }
        let inside = self.annulus()?;
        let lerp = |a: f64, b: f64, i: usize, n: usize| a + (b - a) * i as f64 / (n - 1) as f64;
        let mesh = if let Some(path) = self.cfg.get("input") {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
            let gf = GridField::from_csv(&text).map_err(|e| Error::Config(e.to_string()))?;
            Mesh::from_grid(gf.nx(), gf.ny(), |i, j| {
                inside(gf.x(i), gf.y(j)).then(|| [gf.x(i), gf.y(j), gf.get(i, j)])
            })?
        } else {
            let spec = self.spec()?;
            let region = self.region("[1,2]x[1,2]")?;
            let v0 = self.cfg.parsed_or("v0", -1.0_f64)?;
            let v1 = self.cfg.parsed_or("v1", 1.0_f64)?;
            match spec.family() {
                Family::GeodesicCylinder => {
                    let (u0, u1) = spec.profile_interval().expect("valid cylinder");
                    // stay off the endpoints, where a(u) reaches the domain margin
                    let pad = 1e-3 * (u1 - u0);
                    let (u0, u1) = (u0 + pad, u1 - pad);
                    let a: Vec<f64> = (0..nx)
                        .map(|i| spec.profile(lerp(u0, u1, i, nx)).map(|p| p.a))
                        .collect::<Result<_>>()?;
                    Mesh::from_grid(nx, ny, |i, j| {
                        Some([lerp(u0, u1, i, nx), a[i], lerp(v0, v1, j, ny)])
                    })?
                }
                Family::VerticalPlane => {
                    let c = spec.vertical_plane_offset().expect("vertical plane");
                    Mesh::from_grid(nx, ny, |i, j| {
                        Some([c, lerp(region.y0, region.y1, i, nx), lerp(v0, v1, j, ny)])
                    })?
                }
                _ => {
                    let vals: Vec<Option<[f64; 3]>> = (0..nx * ny)
                        .map(|k| {
                            let p = region.at(
                                (k % nx) as f64 / (nx - 1) as f64,
                                (k / nx) as f64 / (ny - 1) as f64,
                            );
                            if spec.admissible(p) && inside(p.x(), p.y()) {
                                spec.value(p).map(|z| Some([p.x(), p.y(), z]))
                            } else {
                                Ok(None)
                            }
                        })
                        .collect::<Result<_>>()?;
                    Mesh::from_grid(nx, ny, |i, j| vals[j * nx + i])?
                }
            }
        };
        writeln!(
            out,
            "{} vertices, {} triangles",
            mesh.vertices().len(),
            mesh.faces().len()
        )?;
        self.emit(out, ".obj", &mesh.to_obj())?;
        Ok(EXIT_OK)
    }
}
