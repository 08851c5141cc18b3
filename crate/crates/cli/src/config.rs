//! Run configuration: a JSON file merged with command-line flags.
//!
//! ```json
//! { "n": 3, "poly": "1011", "net": "qec", "state": "qec_logical_0",
//!   "format": "csv", "output": "grid.csv", "seed": 7 }
//! ```
//!
//! The net source is one of `net` (preset name or net file), `signs` (net
//! file) or `covariant: true`. Flags replace the matching config fields.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;

use gfwigner::net::{self, NetConfig, NetMode, QuantumNet};
use gfwigner::{FieldSpec, PolyTable, Polynomial};

use crate::args::{Common, NetArgs};
use crate::{CliError, CliResult};

#[derive(Deserialize, Debug, Default, Clone)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub n: Option<usize>,
    pub poly: Option<String>,
    pub net: Option<String>,
    pub signs: Option<PathBuf>,
    pub covariant: Option<bool>,
    pub state: Option<String>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = read_file(path)?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NetSource {
    Preset(String),
    File(PathBuf),
    Covariant,
}

/// Everything a command needs after merging flags and config.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub spec: Arc<FieldSpec>,
    pub net_source: Option<NetSource>,
    pub state: Option<String>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))
}

fn net_source_of(net: Option<&str>, signs: Option<&Path>, covariant: bool, origin: &str) -> CliResult<Option<NetSource>> {
    let mut found = Vec::new();
    if let Some(name) = net {
        found.push(if net::PRESET_NAMES.contains(&name) {
            NetSource::Preset(name.to_string())
        } else {
            NetSource::File(PathBuf::from(name))
        });
    }
    if let Some(path) = signs {
        found.push(NetSource::File(path.to_path_buf()));
    }
    if covariant {
        found.push(NetSource::Covariant);
    }
    match found.len() {
        0 => Ok(None),
        1 => Ok(found.pop()),
        _ => Err(CliError::Validation(format!("{origin} gives more than one of net, signs and covariant"))),
    }
}

impl RunConfig {
    /// Merge flags over the config file. `fixed_n` is the size a command
    /// requires, used when neither source names one.
    pub fn resolve(common: &Common, net_args: Option<&NetArgs>, fixed_n: Option<usize>) -> CliResult<Self> {
        let file = match &common.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let flag_source = match net_args {
            Some(a) => net_source_of(a.net.as_deref(), a.signs.as_deref(), a.covariant, "the command line")?,
            None => None,
        };
        let file_source =
            net_source_of(file.net.as_deref(), file.signs.as_deref(), file.covariant.unwrap_or(false), "the config file")?;
        let net_source = flag_source.or(file_source);

        let poly = common.poly.clone().or(file.poly);
        let n = common.n.or(file.n);
        let spec = build_field(n.or(fixed_n), poly.as_deref())?;
        if let Some(required) = fixed_n {
            if spec.n() != required {
                return Err(CliError::Validation(format!("this command needs n = {required}, got n = {}", spec.n())));
            }
        }
        Ok(RunConfig {
            spec: Arc::new(spec),
            net_source,
            state: file.state,
            format: file.format,
            output: common.output.clone().or(file.output),
            seed: file.seed,
        })
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    /// The configured net, or the named preset when none was given.
    pub fn net(&self, default_preset: &str) -> CliResult<QuantumNet> {
        let source = self.net_source.clone().unwrap_or_else(|| NetSource::Preset(default_preset.to_string()));
        match source {
            NetSource::Preset(name) => Ok(net::preset(&name, self.spec.clone())?),
            NetSource::Covariant => Ok(QuantumNet::covariant_all_plus(self.spec.clone())),
            NetSource::File(path) => {
                let cfg = parse_net_file(&read_file(&path)?, self.n())
                    .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
                if let Some(p) = &cfg.poly {
                    let poly = Polynomial::parse(p)?;
                    if poly != self.spec.polynomial() {
                        return Err(CliError::Validation(format!(
                            "net file uses polynomial {p}, field uses {}",
                            self.spec.polynomial().to_bit_string()
                        )));
                    }
                }
                Ok(cfg.build_on(self.spec.clone())?)
            }
        }
    }

    /// Format from the flag, then the config file, then the command default.
    pub fn format<F>(&self, flag: Option<F>, default: F) -> CliResult<F>
    where
        F: clap::ValueEnum,
    {
        match (flag, &self.format) {
            (Some(f), _) => Ok(f),
            (None, Some(name)) => F::from_str(name, true)
                .map_err(|_| CliError::Validation(format!("config format {name:?} is not valid here"))),
            (None, None) => Ok(default),
        }
    }
}

/// A full net description, or just a map from striation label to sign string
/// (an independent net on the current field).
fn parse_net_file(text: &str, n: usize) -> Result<NetConfig, String> {
    if let Ok(cfg) = NetConfig::from_json(text) {
        return Ok(cfg);
    }
    let signs: BTreeMap<String, String> =
        serde_json::from_str(text).map_err(|e| format!("neither a net description nor a sign map: {e}"))?;
    Ok(NetConfig { name: None, n, poly: None, mode: NetMode::Independent, signs, assumptions: None })
}

pub fn build_field(n: Option<usize>, poly: Option<&str>) -> CliResult<FieldSpec> {
    match (n, poly) {
        (n, Some(bits)) => {
            let poly = Polynomial::parse(bits)?;
            if let Some(n) = n {
                if poly.degree() != n {
                    return Err(CliError::Validation(format!(
                        "--poly {bits} has degree {}, but n = {n}",
                        poly.degree()
                    )));
                }
            }
            Ok(FieldSpec::with_polynomial(poly)?)
        }
        (Some(n), None) => Ok(FieldSpec::from_table(n, &PolyTable::from_env()?)?),
        (None, None) => Err(CliError::Validation("--n is required".into())),
    }
}
