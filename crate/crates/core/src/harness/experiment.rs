use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::expect::Expectations;
use super::verify::SuiteName;
use crate::complexity::SearchConfig;
use crate::decompose::ClassifyOptions;
use crate::generators::GeneratorSpec;
use crate::seqcore::literal::literal_source;
use crate::seqcore::SequenceSource;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Complexity,
    Decompose,
    Classify,
    Verify,
    SharedWindow,
    Recurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::Parse(format!("format {other:?}: expected json, csv or text"))),
        }
    }
}

/// Inclusive range of window sizes, written `MIN..MAX` or `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct KRange {
    pub min: usize,
    pub max: usize,
}

impl KRange {
    pub fn new(min: usize, max: usize) -> Result<Self> {
        if min == 0 || min > max {
            return Err(Error::InvalidArgument(format!("k range {min}..{max} must satisfy 1 <= min <= max")));
        }
        Ok(KRange { min, max })
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        self.min..=self.max
    }
}

impl Default for KRange {
    fn default() -> Self {
        KRange { min: 1, max: 6 }
    }
}

impl FromStr for KRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("k range {s:?}: expected MIN..MAX or K")));
        match s.split_once("..") {
            Some((a, b)) => KRange::new(num(a)?, num(b.trim_start_matches('='))?),
            None => {
                let k = num(s)?;
                KRange::new(k, k)
            }
        }
    }
}

impl fmt::Display for KRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.min, self.max)
    }
}

impl TryFrom<String> for KRange {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<KRange> for String {
    fn from(k: KRange) -> String {
        k.to_string()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum SourceDef {
    Generator(Box<GeneratorSpec>),
    Literal(String),
}

/// A sequence description plus the label used in reports.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceInput {
    label: String,
    def: SourceDef,
}

impl SourceInput {
    pub fn generator(label: impl Into<String>, spec: GeneratorSpec) -> Self {
        SourceInput { label: label.into(), def: SourceDef::Generator(Box::new(spec)) }
    }

    pub fn literal(label: impl Into<String>, text: impl Into<String>) -> Self {
        SourceInput { label: label.into(), def: SourceDef::Literal(text.into()) }
    }

    /// A named family; `ell` only matters for `example-6.1`.
    pub fn named(name: &str, ell: Option<usize>) -> Self {
        let mut spec = GeneratorSpec::named(name);
        spec.ell = ell;
        let label = match ell {
            Some(l) => format!("{name}(ell={l})"),
            None => name.to_string(),
        };
        SourceInput::generator(label, spec)
    }

    /// `.toml` files hold generator specs; anything else is a literal prefix.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read source file {}: {e}", path.display())))?;
        let label = path.display().to_string();
        if path.extension().is_some_and(|e| e == "toml") {
            Ok(SourceInput::generator(label, GeneratorSpec::from_toml(&text)?))
        } else {
            Ok(SourceInput::literal(label, text))
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn build(&self) -> Result<SequenceSource> {
        match &self.def {
            SourceDef::Generator(spec) => spec.build(),
            SourceDef::Literal(text) => Ok(literal_source(text)?.into_source()),
        }
    }
}

/// Defaults that a `--config` file may override.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HarnessConfig {
    pub search: SearchConfig,
    pub classify: ClassifyOptions,
    pub k: KRange,
    pub format: OutputFormat,
    pub l_max: usize,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            search: SearchConfig::default(),
            classify: ClassifyOptions::default(),
            k: KRange::default(),
            format: OutputFormat::Json,
            l_max: 8,
        }
    }
}

impl HarnessConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read config file {}: {e}", path.display())))?;
        HarnessConfig::from_toml(&text)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub task: Task,
    pub source: Option<SourceInput>,
    /// Second source for shared-window searches.
    pub partner: Option<SourceInput>,
    pub suite: Option<SuiteName>,
    pub k: KRange,
    pub search: SearchConfig,
    pub classify: ClassifyOptions,
    pub l_max: usize,
    pub format: OutputFormat,
    pub expect: Option<Expectations>,
    pub with_words: bool,
}

impl ExperimentSpec {
    pub fn new(task: Task, config: &HarnessConfig) -> Self {
        ExperimentSpec {
            task,
            source: None,
            partner: None,
            suite: None,
            k: config.k,
            search: config.search.clone(),
            classify: config.classify,
            l_max: config.l_max,
            format: config.format,
            expect: None,
            with_words: false,
        }
    }

    pub fn with_source(mut self, source: SourceInput) -> Self {
        self.source = Some(source);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k.min == 0 || self.k.min > self.k.max {
            return Err(Error::InvalidArgument(format!("k range {} is empty", self.k)));
        }
        self.search.validate()?;
        match self.task {
            Task::Verify => {
                if self.suite.is_none() {
                    return Err(Error::InvalidArgument("verify needs a suite name".into()));
                }
            }
            Task::SharedWindow => {
                if self.source.is_none() || self.partner.is_none() {
                    return Err(Error::InvalidArgument("shared-window needs two sources".into()));
                }
            }
            _ => {
                if self.source.is_none() {
                    return Err(Error::InvalidArgument(format!("{:?} needs a source", self.task).to_lowercase()));
                }
            }
        }
        if self.task == Task::Complexity {
            self.search.validate_for(self.k.max)?;
        }
        Ok(())
    }
}
