//! Run configuration: group source, suite selection and guards.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use parrep_core::group::FiniteGroup;

use crate::CliError;

/// Orders above this need `--extended`.
pub const STANDARD_TIER_ORDER: usize = 4;
pub const DEFAULT_MAX_ORDER: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSource {
    Builtin(String),
    File(PathBuf),
}

impl FromStr for GroupSource {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.strip_prefix("file:") {
            Some("") => Err("file: needs a path".into()),
            Some(p) => Ok(GroupSource::File(PathBuf::from(p))),
            None if s.is_empty() => Err("empty group spec".into()),
            None => Ok(GroupSource::Builtin(s.to_string())),
        }
    }
}

impl fmt::Display for GroupSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSource::Builtin(s) => f.write_str(s),
            GroupSource::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl GroupSource {
    pub fn load(&self) -> Result<FiniteGroup, CliError> {
        match self {
            GroupSource::Builtin(s) => FiniteGroup::builtin(s).map_err(|e| CliError::Parse(e.to_string())),
            GroupSource::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
                let name = p.file_stem().and_then(|s| s.to_str()).unwrap_or("table");
                FiniteGroup::from_table_text(name, &text).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))
            }
        }
    }

    /// How an exported module file refers to this group's Hopf algebra; table groups point at the exported `hopf.json`.
    pub fn hopf_ref(&self) -> String {
        match self {
            GroupSource::Builtin(s) => format!("group:{s}"),
            GroupSource::File(_) => "hopf.json".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    PrAxioms,
    Hpar,
    Dilation,
    HomObjects,
    Xi,
    Yd,
    Morita,
    CorollaryChain,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::PrAxioms, Suite::Hpar, Suite::Dilation, Suite::HomObjects, Suite::Xi, Suite::Yd, Suite::Morita, Suite::CorollaryChain];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PrAxioms => "pr-axioms",
            Suite::Hpar => "hpar",
            Suite::Dilation => "dilation",
            Suite::HomObjects => "hom-objects",
            Suite::Xi => "xi",
            Suite::Yd => "yd",
            Suite::Morita => "morita",
            Suite::CorollaryChain => "corollary-chain",
        }
    }

    /// Whether the suite reads the globalization objects.
    pub fn needs_glob(self) -> bool {
        matches!(self, Suite::HomObjects | Suite::Yd | Suite::Morita | Suite::CorollaryChain)
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected one of {}", Suite::ALL.map(Suite::name).join(", ")))
    }
}

/// Comma-separated suite names or `all`; result is sorted and deduplicated.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>, String> {
    if s.trim() == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out = s.split(',').map(|x| x.trim().parse()).collect::<Result<Vec<Suite>, _>>()?;
    if out.is_empty() {
        return Err("no suites given".into());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format {s:?}; expected json or text")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub group: GroupSource,
    pub suites: Vec<Suite>,
    pub max_order: usize,
    pub extended: bool,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Extra partial module added to the corpus.
    pub module: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(group: &str) -> Result<Self, String> {
        Ok(RunConfig {
            group: group.parse()?,
            suites: Suite::ALL.to_vec(),
            max_order: DEFAULT_MAX_ORDER,
            extended: false,
            format: Format::Json,
            out: None,
            module: None,
        })
    }

    /// Order guard. `tiered` runs also require `--extended` above the standard tier.
    pub fn guard(&self, name: &str, n: usize, tiered: bool) -> Result<(), CliError> {
        if n > self.max_order {
            return Err(CliError::Guard(format!("group {name} has order {n}, above --max-order {}; subset lattices grow as 2^n", self.max_order)));
        }
        if tiered && n > STANDARD_TIER_ORDER && !self.extended {
            return Err(CliError::Guard(format!("group {name} has order {n}; orders above {STANDARD_TIER_ORDER} need --extended")));
        }
        Ok(())
    }

    /// Loads the group; built-in groups are guarded before their table is built.
    pub fn load_group(&self, tiered: bool) -> Result<FiniteGroup, CliError> {
        if let GroupSource::Builtin(s) = &self.group {
            let n = FiniteGroup::builtin_order(s).map_err(|e| CliError::Parse(e.to_string()))?;
            self.guard(s, n, tiered)?;
        }
        let g = self.group.load()?;
        self.guard(g.name(), g.order(), tiered)?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_lists() {
        assert_eq!(parse_suites("all").unwrap().len(), 8);
        assert_eq!(parse_suites("xi,pr-axioms,xi").unwrap(), vec![Suite::PrAxioms, Suite::Xi]);
        assert!(parse_suites("xi,nope").unwrap_err().contains("nope"));
    }

    #[test]
    fn group_sources() {
        assert_eq!("cyclic:3".parse::<GroupSource>().unwrap(), GroupSource::Builtin("cyclic:3".into()));
        assert_eq!("file:t.txt".parse::<GroupSource>().unwrap(), GroupSource::File("t.txt".into()));
        assert!("file:".parse::<GroupSource>().is_err());
        assert!(matches!(GroupSource::Builtin("cyclic:x".into()).load(), Err(CliError::Parse(_))));
        assert!(matches!(GroupSource::File("/nonexistent/t.txt".into()).load(), Err(CliError::Io(_))));
    }

    #[test]
    fn guard_tiers() {
        let cfg = RunConfig::new("symmetric:3").unwrap();
        assert_eq!(cfg.load_group(false).unwrap().order(), 6);
        assert!(matches!(cfg.load_group(true), Err(CliError::Guard(_))));
        let ext = RunConfig { extended: true, ..cfg.clone() };
        assert!(ext.load_group(true).is_ok());
        let low = RunConfig { max_order: 4, ..ext };
        assert!(matches!(low.load_group(false), Err(CliError::Guard(_))));
        // refused before the table would be built
        assert!(matches!(RunConfig::new("cyclic:100000000").unwrap().load_group(false), Err(CliError::Guard(_))));
    }
}
