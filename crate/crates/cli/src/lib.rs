//! Library side of the `parrep` command: configuration, suites, reports and the three commands.

pub mod config;
pub mod report;
pub mod suites;

use std::fmt;
use std::path::{Path, PathBuf};
use std::time::Instant;

use parrep_core::glob::build_glob;
use parrep_core::group::FiniteGroup;
use parrep_core::hopf::group_hopf;
use parrep_core::io::{algebra_text, map_table, resolve_hopf_ref, to_json, AlgebraFile, HopfFile, PartialModuleFile, RawPartialModule};
use parrep_core::pargroup::build_hpar;
use parrep_core::exact::Vector;

use config::{Format, RunConfig};
use report::{GroupInfo, Report};
use suites::Context;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Order guard refused the input.
    Guard(String),
    Parse(String),
    Io(String),
    /// A construction failed; reported as a verification failure.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Guard(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Guard(m) => write!(f, "refused: {m}"),
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Failure(m) => write!(f, "construction failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<parrep_core::Error> for CliError {
    fn from(e: parrep_core::Error) -> Self {
        use parrep_core::Error as E;
        match e {
            E::OrderLimit { .. } => CliError::Guard(e.to_string()),
            E::Parse(_) | E::InvalidGroup(_) => CliError::Parse(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;

fn group_info(cfg: &RunConfig, g: &FiniteGroup) -> GroupInfo {
    GroupInfo { spec: cfg.group.to_string(), name: g.name().to_string(), order: g.order(), elements: g.labels().to_vec() }
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// Constructs every object and reports the dimension table.
pub fn build(cfg: &RunConfig) -> Result<Report, CliError> {
    let t = Instant::now();
    let g = cfg.load_group(false)?;
    let mut rep = Report::new("build", group_info(cfg, &g));
    let hp = build_hpar(&g)?;
    let gg = build_glob(hp.apar())?;
    for (k, v) in [
        ("apar", hp.apar().dim()),
        ("hpar", hp.dim()),
        ("gamma", hp.groupoid().num_arrows()),
        ("B", gg.semilattice.dim()),
        ("Abar", gg.standard.dim()),
        ("homAA", gg.hom_aa.dim()),
        ("hglob", gg.hglob.dim()),
        ("gammaGlob", gg.gamma_glob.num_arrows()),
    ] {
        rep.dims.insert(k.into(), v);
    }
    rep.timing.total_ms = elapsed_ms(t);
    Ok(rep)
}

/// Reads a partial-module file without validating the axioms.
pub fn read_module_file(path: &Path) -> Result<RawPartialModule, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let file: PartialModuleFile = parrep_core::io::from_json(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let hopf = resolve_hopf_ref(&file.hopf_ref, path.parent()).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    file.to_raw(hopf).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// Runs the selected suites; the report status is `fail` if any suite fails.
pub fn verify(cfg: &RunConfig) -> Result<Report, CliError> {
    let t = Instant::now();
    let g = cfg.load_group(true)?;
    let extra = cfg.module.as_deref().map(read_module_file).transpose()?;
    let mut rep = Report::new("verify", group_info(cfg, &g));
    let ctx = Context::new(g, extra, &cfg.suites)?;
    for &s in &cfg.suites {
        let ts = Instant::now();
        rep.suites.push(ctx.run(s));
        rep.timing.suites_ms.insert(s.name().into(), elapsed_ms(ts));
    }
    rep.settle();
    rep.timing.total_ms = elapsed_ms(t);
    Ok(rep)
}

fn write_file(dir: &Path, name: &str, text: &str, files: &mut Vec<String>) -> Result<(), CliError> {
    let p = dir.join(name);
    std::fs::write(&p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
    files.push(name.to_string());
    Ok(())
}

pub fn default_export_dir() -> PathBuf {
    PathBuf::from("parrep-export")
}

/// Writes the algebras and modules for the group into `cfg.out` (a directory).
pub fn export(cfg: &RunConfig) -> Result<Report, CliError> {
    let t = Instant::now();
    let g = cfg.load_group(false)?;
    let dir = cfg.out.clone().unwrap_or_else(default_export_dir);
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut rep = Report::new("export", group_info(cfg, &g));
    let hp = build_hpar(&g)?;
    let gg = build_glob(hp.apar())?;
    let ap = hp.apar();
    let hopf_ref = cfg.group.hopf_ref();
    let mut files = Vec::new();
    write_file(&dir, "hopf.json", &to_json(&HopfFile::from_hopf(&group_hopf(&g))), &mut files)?;
    let algebras = [
        ("apar", ap.algebra()),
        ("hpar", hp.algebra()),
        ("B", gg.semilattice.algebra()),
        ("homAA", gg.hom_aa.algebra()),
        ("hglob", &gg.hglob),
    ];
    for (name, a) in algebras {
        match cfg.format {
            Format::Json => write_file(&dir, &format!("{name}.json"), &to_json(&AlgebraFile::from_algebra(a)), &mut files)?,
            Format::Text => write_file(&dir, &format!("{name}.txt"), &algebra_text(a), &mut files)?,
        }
        rep.dims.insert(name.into(), a.dim());
    }
    write_file(&dir, "apar-module.json", &to_json(&PartialModuleFile::from_module(ap.module(), &hopf_ref)), &mut files)?;
    write_file(&dir, "hpar-module.json", &to_json(&PartialModuleFile::from_module(&hp.regular_partial(), &hopf_ref)), &mut files)?;
    // {A_par, A_par} as partially linear maps H → A_par
    let haa = &gg.hom_aa;
    let hspace = hp.hopf().space();
    let tables: Vec<_> = (0..haa.dim())
        .map(|i| map_table(haa.algebra().space().label(i), hspace, ap.algebra().space(), &haa.psi_map(&Vector::basis(haa.dim(), i))))
        .collect();
    write_file(&dir, "homAA-maps.json", &to_json(&tables), &mut files)?;
    rep.files = files;
    rep.timing.total_ms = elapsed_ms(t);
    Ok(rep)
}

/// Serializes the report in the configured format and writes it to `--out` or returns it for stdout.
pub fn render(cfg: &RunConfig, rep: &Report) -> String {
    match cfg.format {
        Format::Json => rep.to_json(),
        Format::Text => rep.to_text(),
    }
}
