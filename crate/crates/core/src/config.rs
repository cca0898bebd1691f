//! Plain-text domain configuration.
//!
//! A config is a list of whitespace-separated `key=value` tokens, spread over
//! any number of lines. Tuples are comma-separated and `#` starts a comment.
//!
//! ```text
//! # cubic bump seen from its center
//! kind=radial_fourier a0=1 cos3=0.05
//! o=0,0 phi_p=0.3
//! ```
//!
//! Keys per kind (optional ones with their defaults):
//!
//! | kind             | keys                                                   |
//! |------------------|--------------------------------------------------------|
//! | `disk`           | `radius`, `center=0,0`                                 |
//! | `ellipse`        | `semi_axes=a,b`, `center=0,0`, `rotation=0`            |
//! | `radial_fourier` | `a0`, `cosK=…`, `sinK=…` (K ≥ 1), `center=0,0`         |
//! | `ball3`          | `radius`, `center=0,0,0`, `u=1,0,0`, `v=0,1,0`         |
//! | `ellipsoid3`     | `semi_axes=a,b,c`, `center=0,0,0`, `u=1,0,0`, `v=0,1,0` |
//!
//! Every kind takes `o` (an interior point, three coordinates for the solid
//! kinds) and an optional `phi_p=0`, the polar angle at `o` of the
//! distinguished boundary point. Solid kinds are cut by the plane through `o`
//! spanned by `u` and `v`; the section is described in that frame, with `o`
//! at the origin and angle zero along `u`.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::geometry::{ConvexBody3, ConvexDomain2};
use crate::Vec2;

#[derive(Clone, Debug, PartialEq)]
pub enum DomainKind {
    Disk {
        radius: f64,
        center: [f64; 2],
    },
    Ellipse {
        semi_axes: [f64; 2],
        center: [f64; 2],
        rotation: f64,
    },
    RadialFourier {
        a0: f64,
        cos: Vec<f64>,
        sin: Vec<f64>,
        center: [f64; 2],
    },
    Ball3 {
        radius: f64,
        center: [f64; 3],
        u: [f64; 3],
        v: [f64; 3],
    },
    Ellipsoid3 {
        semi_axes: [f64; 3],
        center: [f64; 3],
        u: [f64; 3],
        v: [f64; 3],
    },
}

impl DomainKind {
    pub fn name(&self) -> &'static str {
        match self {
            DomainKind::Disk { .. } => "disk",
            DomainKind::Ellipse { .. } => "ellipse",
            DomainKind::RadialFourier { .. } => "radial_fourier",
            DomainKind::Ball3 { .. } => "ball3",
            DomainKind::Ellipsoid3 { .. } => "ellipsoid3",
        }
    }

    pub fn is_solid(&self) -> bool {
        matches!(self, DomainKind::Ball3 { .. } | DomainKind::Ellipsoid3 { .. })
    }

    /// Disks and ellipses, where circle curvatures are `coth r`.
    pub fn is_klein(&self) -> bool {
        !matches!(self, DomainKind::RadialFourier { .. })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DomainConfig {
    pub kind: DomainKind,
    /// Two coordinates, or three for solid kinds.
    pub o: Vec<f64>,
    pub phi_p: f64,
}

/// A built config: the planar domain with its radial function about `o`.
#[derive(Clone, Debug)]
pub struct Setup {
    pub domain: ConvexDomain2,
    pub o: Vec2,
    pub phi_p: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError {
    /// 1-based line number, 0 when the problem is not tied to a line.
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConfigErrors(pub Vec<ConfigError>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            if e.line > 0 {
                write!(f, "line {}: {}", e.line, e.message)?;
            } else {
                write!(f, "{}", e.message)?;
            }
        }
        Ok(())
    }
}

impl std::error::Error for ConfigErrors {}

impl From<ConfigErrors> for Error {
    fn from(e: ConfigErrors) -> Self {
        Error::InvalidInput(e.to_string())
    }
}

struct Entry {
    line: usize,
    value: String,
    used: bool,
}

struct Fields {
    map: BTreeMap<String, Entry>,
    errors: Vec<ConfigError>,
    kind_line: usize,
}

impl Fields {
    fn error(&mut self, line: usize, message: String) {
        self.errors.push(ConfigError { line, message });
    }

    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.map.get_mut(key).map(|e| {
            e.used = true;
            (e.line, e.value.clone())
        })
    }

    fn tuple(&mut self, key: &str, len: usize, default: Option<&[f64]>) -> Vec<f64> {
        let fallback = || default.map(|d| d.to_vec()).unwrap_or_else(|| vec![f64::NAN; len]);
        match self.take(key) {
            None => {
                if default.is_none() {
                    let line = self.kind_line;
                    self.error(line, format!("missing field '{key}'"));
                }
                fallback()
            }
            Some((line, raw)) => {
                let parts: std::result::Result<Vec<f64>, _> =
                    raw.split(',').map(|s| s.trim().parse::<f64>()).collect();
                match parts {
                    Ok(v) if v.len() == len && v.iter().all(|x| x.is_finite()) => v,
                    Ok(v) if v.len() != len => {
                        self.error(
                            line,
                            format!("'{key}' needs {len} value(s), got {}", v.len()),
                        );
                        fallback()
                    }
                    _ => {
                        self.error(line, format!("'{key}' has a non-numeric value '{raw}'"));
                        fallback()
                    }
                }
            }
        }
    }

    fn scalar(&mut self, key: &str, default: Option<f64>) -> f64 {
        self.tuple(key, 1, default.as_ref().map(std::slice::from_ref))[0]
    }

    fn pair(&mut self, key: &str, default: Option<[f64; 2]>) -> [f64; 2] {
        let v = self.tuple(key, 2, default.as_ref().map(|d| &d[..]));
        [v[0], v[1]]
    }

    fn triple(&mut self, key: &str, default: Option<[f64; 3]>) -> [f64; 3] {
        let v = self.tuple(key, 3, default.as_ref().map(|d| &d[..]));
        [v[0], v[1], v[2]]
    }

    /// `cos1=…, cos2=…` as a dense coefficient list.
    fn series(&mut self, prefix: &str) -> Vec<f64> {
        let keys: Vec<(usize, String)> = self
            .map
            .keys()
            .filter_map(|k| {
                k.strip_prefix(prefix)
                    .and_then(|n| n.parse::<usize>().ok())
                    .filter(|&n| n >= 1)
                    .map(|n| (n, k.clone()))
            })
            .collect();
        let len = keys.iter().map(|(n, _)| *n).max().unwrap_or(0);
        let mut out = vec![0.0; len];
        for (n, key) in keys {
            out[n - 1] = self.scalar(&key, None);
        }
        out
    }
}

fn tokenize(text: &str) -> (Fields, Option<(usize, String)>) {
    let mut fields = Fields {
        map: BTreeMap::new(),
        errors: Vec::new(),
        kind_line: 0,
    };
    let mut kind = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        for token in content.split_whitespace() {
            let Some((key, value)) = token.split_once('=') else {
                fields.error(line, format!("expected key=value, got '{token}'"));
                continue;
            };
            if key.is_empty() || value.is_empty() {
                fields.error(line, format!("empty key or value in '{token}'"));
                continue;
            }
            if key == "kind" {
                if kind.is_some() {
                    fields.error(line, "duplicate field 'kind'".into());
                } else {
                    kind = Some((line, value.to_string()));
                    fields.kind_line = line;
                }
                continue;
            }
            if fields.map.contains_key(key) {
                fields.error(line, format!("duplicate field '{key}'"));
                continue;
            }
            fields.map.insert(
                key.to_string(),
                Entry {
                    line,
                    value: value.to_string(),
                    used: false,
                },
            );
        }
    }
    (fields, kind)
}

/// Parses and validates a config. Validation builds the domain, so
/// non-convex parameters and exterior centers are reported here.
pub fn parse_domain_config(text: &str) -> std::result::Result<DomainConfig, ConfigErrors> {
    let (mut f, kind) = tokenize(text);
    let Some((kind_line, kind)) = kind else {
        f.error(0, "missing field 'kind'".into());
        return Err(ConfigErrors(f.errors));
    };
    let solid = matches!(kind.as_str(), "ball3" | "ellipsoid3");
    let kind = match kind.as_str() {
        "disk" => DomainKind::Disk {
            radius: f.scalar("radius", None),
            center: f.pair("center", Some([0.0, 0.0])),
        },
        "ellipse" => DomainKind::Ellipse {
            semi_axes: f.pair("semi_axes", None),
            center: f.pair("center", Some([0.0, 0.0])),
            rotation: f.scalar("rotation", Some(0.0)),
        },
        "radial_fourier" => DomainKind::RadialFourier {
            a0: f.scalar("a0", None),
            cos: f.series("cos"),
            sin: f.series("sin"),
            center: f.pair("center", Some([0.0, 0.0])),
        },
        "ball3" => DomainKind::Ball3 {
            radius: f.scalar("radius", None),
            center: f.triple("center", Some([0.0; 3])),
            u: f.triple("u", Some([1.0, 0.0, 0.0])),
            v: f.triple("v", Some([0.0, 1.0, 0.0])),
        },
        "ellipsoid3" => DomainKind::Ellipsoid3 {
            semi_axes: f.triple("semi_axes", None),
            center: f.triple("center", Some([0.0; 3])),
            u: f.triple("u", Some([1.0, 0.0, 0.0])),
            v: f.triple("v", Some([0.0, 1.0, 0.0])),
        },
        other => {
            f.error(kind_line, format!("unknown kind '{other}'"));
            return Err(ConfigErrors(f.errors));
        }
    };
    let o = f.tuple("o", if solid { 3 } else { 2 }, None);
    let phi_p = f.scalar("phi_p", Some(0.0));
    let extra: Vec<(usize, String)> = f
        .map
        .iter()
        .filter(|(_, e)| !e.used)
        .map(|(k, e)| (e.line, k.clone()))
        .collect();
    for (line, key) in extra {
        f.error(line, format!("unexpected field '{key}' for kind {}", kind.name()));
    }
    if !f.errors.is_empty() {
        f.errors.sort_by_key(|e| e.line);
        return Err(ConfigErrors(f.errors));
    }
    let config = DomainConfig { kind, o, phi_p };
    if let Err(e) = config.build() {
        return Err(ConfigErrors(vec![ConfigError {
            line: kind_line,
            message: e.to_string(),
        }]));
    }
    Ok(config)
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl DomainConfig {
    /// Renders the config with every field explicit, one group per line.
    pub fn render(&self) -> String {
        let mut out = format!("kind={}\n", self.kind.name());
        match &self.kind {
            DomainKind::Disk { radius, center } => {
                out += &format!("radius={radius} center={}\n", join(center));
            }
            DomainKind::Ellipse {
                semi_axes,
                center,
                rotation,
            } => {
                out += &format!(
                    "semi_axes={} center={} rotation={rotation}\n",
                    join(semi_axes),
                    join(center)
                );
            }
            DomainKind::RadialFourier { a0, cos, sin, center } => {
                out += &format!("a0={a0} center={}\n", join(center));
                let terms: Vec<String> = cos
                    .iter()
                    .enumerate()
                    .map(|(k, c)| format!("cos{}={c}", k + 1))
                    .chain(sin.iter().enumerate().map(|(k, s)| format!("sin{}={s}", k + 1)))
                    .collect();
                if !terms.is_empty() {
                    out += &terms.join(" ");
                    out.push('\n');
                }
            }
            DomainKind::Ball3 { radius, center, u, v } => {
                out += &format!(
                    "radius={radius} center={}\nu={} v={}\n",
                    join(center),
                    join(u),
                    join(v)
                );
            }
            DomainKind::Ellipsoid3 {
                semi_axes,
                center,
                u,
                v,
            } => {
                out += &format!(
                    "semi_axes={} center={}\nu={} v={}\n",
                    join(semi_axes),
                    join(center),
                    join(u),
                    join(v)
                );
            }
        }
        out += &format!("o={} phi_p={}\n", join(&self.o), self.phi_p);
        out
    }

    /// Builds the planar domain, with its radial function about `o`.
    pub fn build(&self) -> Result<Setup> {
        let v2 = |a: &[f64; 2]| Vec2::new(a[0], a[1]);
        let v3 = |a: &[f64; 3]| Vector3::new(a[0], a[1], a[2]);
        let want = if self.kind.is_solid() { 3 } else { 2 };
        if self.o.len() != want {
            return Err(Error::InvalidInput(format!(
                "o needs {want} coordinates for kind {}",
                self.kind.name()
            )));
        }
        if !self.phi_p.is_finite() {
            return Err(Error::InvalidInput("phi_p must be finite".into()));
        }
        let (domain, o) = match &self.kind {
            DomainKind::Disk { radius, center } => {
                (ConvexDomain2::disk(v2(center), *radius)?, v2(&[self.o[0], self.o[1]]))
            }
            DomainKind::Ellipse {
                semi_axes,
                center,
                rotation,
            } => (
                ConvexDomain2::ellipse(v2(center), *semi_axes, *rotation)?,
                v2(&[self.o[0], self.o[1]]),
            ),
            DomainKind::RadialFourier { a0, cos, sin, center } => (
                ConvexDomain2::radial_fourier(v2(center), *a0, cos.clone(), sin.clone())?,
                v2(&[self.o[0], self.o[1]]),
            ),
            DomainKind::Ball3 { radius, center, u, v } => {
                let body = ConvexBody3::ball(v3(center), *radius)?;
                let o = Vector3::new(self.o[0], self.o[1], self.o[2]);
                (body.planar_section(o, v3(u), v3(v))?, Vec2::zeros())
            }
            DomainKind::Ellipsoid3 {
                semi_axes,
                center,
                u,
                v,
            } => {
                let body = ConvexBody3::ellipsoid(v3(center), *semi_axes)?;
                let o = Vector3::new(self.o[0], self.o[1], self.o[2]);
                (body.planar_section(o, v3(u), v3(v))?, Vec2::zeros())
            }
        };
        let domain = if domain.base_point() == o {
            domain
        } else {
            domain.with_base(o)?
        };
        Ok(Setup {
            domain,
            o,
            phi_p: self.phi_p,
        })
    }
}
