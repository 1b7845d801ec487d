//! TOML interchange documents.
//!
//! Every file carries `format-version` and a `kind` tag. Constituent
//! structures are either inlined as sub-tables or referenced with
//! `{ path = "..." }`, resolved relative to the referencing file. All
//! indices are 0-based and tables are row-major, `table[a][b] = a ◁ b`.
//!
//! ```toml
//! format-version = 1
//! kind = "rack"
//! size = 2
//! basepoint = 0
//! table = [
//!     [0, 0],
//!     [1, 1],
//! ]
//! ```
//!
//! Emission is canonical: fields in a fixed order and one table row per
//! line, so `emit(parse(text)) == text` for any emitted text.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::group::{FiniteGroup, GroupHom};
use crate::group_xmod::GroupXMod;
use crate::rack::{FiniteRack, RackHom, UnpointedRack};
use crate::xmod::{RackAction, RackXMod, RackXModMorphism};

pub const FORMAT_VERSION: i64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{context}: {message}")]
    Syntax { context: String, message: String },
    #[error("{context}: unsupported format-version {found} (expected {FORMAT_VERSION})")]
    Version { context: String, found: i64 },
    #[error("{context}: expected {expected}, found {found}")]
    Kind {
        context: String,
        expected: String,
        found: String,
    },
    #[error("{context}: {source}")]
    Invalid {
        context: String,
        #[source]
        source: Error,
    },
}

impl FormatError {
    /// True for structures that parsed but failed a validator.
    pub fn is_axiom_failure(&self) -> bool {
        matches!(self, FormatError::Invalid { .. })
    }

    pub fn axiom_error(&self) -> Option<&Error> {
        match self {
            FormatError::Invalid { source, .. } => Some(source),
            _ => None,
        }
    }
}

type FResult<T> = std::result::Result<T, FormatError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Rack(RackDoc),
    UnpointedRack(UnpointedRackDoc),
    Group(GroupDoc),
    Hom(HomDoc),
    Action(ActionDoc),
    RackXmod(XModDoc),
    GroupXmod(XModDoc),
    XmodMorphism(MorphismDoc),
    PullbackRequest(PullbackRequestDoc),
    Certificate(CertificateDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Rack(_) => "rack",
            Document::UnpointedRack(_) => "unpointed-rack",
            Document::Group(_) => "group",
            Document::Hom(_) => "hom",
            Document::Action(_) => "action",
            Document::RackXmod(_) => "rack-xmod",
            Document::GroupXmod(_) => "group-xmod",
            Document::XmodMorphism(_) => "xmod-morphism",
            Document::PullbackRequest(_) => "pullback-request",
            Document::Certificate(_) => "certificate",
        }
    }
}

/// A constituent structure, inline or by file reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref {
    Path { path: String },
    Inline(Box<Document>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RackDoc {
    pub size: usize,
    pub basepoint: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnpointedRackDoc {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub size: usize,
    pub identity: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

/// A rack hom or a group hom, depending on what `dom` and `cod` are.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDoc {
    pub map: Vec<usize>,
    pub dom: Ref,
    pub cod: Ref,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub table: Vec<Vec<usize>>,
    pub actee: Ref,
    pub actor: Ref,
}

/// Shared by `rack-xmod` and `group-xmod`; `action[x][y] = x·y` with `x`
/// in the domain and `y` in the codomain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XModDoc {
    pub boundary: Vec<usize>,
    pub action: Vec<Vec<usize>>,
    pub domain: Ref,
    pub codomain: Ref,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub f1: Vec<usize>,
    pub f0: Vec<usize>,
    pub source: Ref,
    pub target: Ref,
}

/// Pullback of `xmod` along `hom`. `test` optionally names a morphism
/// `(f, hom)` into `xmod` for universal-property certification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullbackRequestDoc {
    pub xmod: Ref,
    pub hom: Ref,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test: Option<Ref>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub check: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "elapsed-ms")]
    pub elapsed_ms: Option<u64>,
    #[serde(default)]
    pub counts: BTreeMap<String, u64>,
    #[serde(default)]
    pub witnesses: Vec<String>,
    /// Input path to SHA-256 of its bytes.
    #[serde(default)]
    pub inputs: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    #[default]
    Fail,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses a document, checking `format-version` and the kind tag.
pub fn parse_document(text: &str, context: &str) -> FResult<Document> {
    let syntax = |e: toml::de::Error| FormatError::Syntax {
        context: context.to_string(),
        message: e.to_string().trim_end().to_string(),
    };
    let mut table: toml::Table = toml::from_str(text).map_err(syntax)?;
    match table.remove("format-version") {
        Some(toml::Value::Integer(FORMAT_VERSION)) => {}
        Some(toml::Value::Integer(found)) => {
            return Err(FormatError::Version {
                context: context.to_string(),
                found,
            })
        }
        Some(other) => {
            return Err(FormatError::Syntax {
                context: context.to_string(),
                message: format!("format-version must be an integer, found {other}"),
            })
        }
        None => {
            return Err(FormatError::Syntax {
                context: context.to_string(),
                message: "missing field `format-version`".into(),
            })
        }
    }
    Document::deserialize(table).map_err(syntax)
}

/// Canonical text of a document.
pub fn emit_document(doc: &Document) -> String {
    let body = toml::to_string(doc).expect("documents serialize");
    let mut out = format!("format-version = {FORMAT_VERSION}\n");
    for line in body.lines() {
        match split_matrix(line) {
            Some((key, rows)) => {
                let _ = writeln!(out, "{key} = [");
                for row in rows {
                    let _ = writeln!(out, "    {row},");
                }
                out.push_str("]\n");
            }
            None => {
                out.push_str(line);
                out.push('\n');
            }
        }
    }
    out
}

/// `key = [[a, b], [c, d]]` into its key and `[a, b]`-style rows.
fn split_matrix(line: &str) -> Option<(&str, Vec<&str>)> {
    let (key, value) = line.split_once(" = ")?;
    let inner = value.strip_prefix("[[")?.strip_suffix("]]")?;
    if inner.contains('"') {
        return None;
    }
    let rows = inner.split("], [").collect::<Vec<_>>();
    let bodies = rows.iter().map(|r| {
        let start = r.as_ptr() as usize - value.as_ptr() as usize - 1;
        &value[start..start + r.len() + 2]
    });
    Some((key, bodies.collect()))
}

/// A fully resolved and validated structure.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Structure {
    Rack(FiniteRack),
    UnpointedRack(UnpointedRack),
    Group(FiniteGroup),
    RackHom(RackHom),
    GroupHom(GroupHom),
    Action(RackAction),
    RackXMod(RackXMod),
    GroupXMod(GroupXMod),
    XModMorphism(RackXModMorphism),
    PullbackRequest(PullbackRequest),
    Certificate(CertificateDoc),
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum PullbackRequest {
    Rack {
        xmod: RackXMod,
        phi: RackHom,
        test: Option<RackXModMorphism>,
    },
    Group {
        xmod: GroupXMod,
        phi: GroupHom,
    },
}

impl Structure {
    pub fn kind(&self) -> &'static str {
        match self {
            Structure::Rack(_) => "rack",
            Structure::UnpointedRack(_) => "unpointed-rack",
            Structure::Group(_) => "group",
            Structure::RackHom(_) => "hom (racks)",
            Structure::GroupHom(_) => "hom (groups)",
            Structure::Action(_) => "action",
            Structure::RackXMod(_) => "rack-xmod",
            Structure::GroupXMod(_) => "group-xmod",
            Structure::XModMorphism(_) => "xmod-morphism",
            Structure::PullbackRequest(_) => "pullback-request",
            Structure::Certificate(_) => "certificate",
        }
    }
}

/// Loads and validates a file, following references.
pub fn load(path: &Path) -> FResult<Structure> {
    let text = read(path)?;
    let context = path.display().to_string();
    let doc = parse_document(&text, &context)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    Resolver { base, context }.build(&doc)
}

/// Validates a document whose references resolve against `base`.
pub fn build(doc: &Document, base: &Path, context: &str) -> FResult<Structure> {
    Resolver {
        base: base.to_path_buf(),
        context: context.to_string(),
    }
    .build(doc)
}

fn read(path: &Path) -> FResult<String> {
    std::fs::read_to_string(path).map_err(|e| FormatError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

struct Resolver {
    base: PathBuf,
    context: String,
}

macro_rules! expect_kind {
    ($self:ident, $s:expr, $variant:ident, $expected:expr) => {
        match $s {
            Structure::$variant(v) => Ok(v),
            other => Err($self.kind_error($expected, other.kind())),
        }
    };
}

impl Resolver {
    fn invalid(&self, source: Error) -> FormatError {
        FormatError::Invalid {
            context: self.context.clone(),
            source,
        }
    }

    fn kind_error(&self, expected: &str, found: &str) -> FormatError {
        FormatError::Kind {
            context: self.context.clone(),
            expected: expected.into(),
            found: found.into(),
        }
    }

    fn resolve(&self, r: &Ref) -> FResult<Structure> {
        match r {
            Ref::Inline(doc) => self.build(doc),
            Ref::Path { path } => {
                let full = self.base.join(path);
                let text = read(&full)?;
                let context = full.display().to_string();
                let doc = parse_document(&text, &context)?;
                let base = full.parent().map(Path::to_path_buf).unwrap_or_default();
                Resolver { base, context }.build(&doc)
            }
        }
    }

    fn rack(&self, r: &Ref) -> FResult<FiniteRack> {
        expect_kind!(self, self.resolve(r)?, Rack, "rack")
    }

    fn group(&self, r: &Ref) -> FResult<FiniteGroup> {
        expect_kind!(self, self.resolve(r)?, Group, "group")
    }

    fn rack_xmod(&self, r: &Ref) -> FResult<RackXMod> {
        expect_kind!(self, self.resolve(r)?, RackXMod, "rack-xmod")
    }

    fn build(&self, doc: &Document) -> FResult<Structure> {
        let v = |r: crate::Result<Structure>| r.map_err(|e| self.invalid(e));
        match doc {
            Document::Rack(d) => v(rack_from_doc(d).map(Structure::Rack)),
            Document::UnpointedRack(d) => {
                let mut r = UnpointedRack::from_rows(&d.table).and_then(|r| check_size(d.size, r.size()).map(|_| r));
                if let (Ok(rack), Some(l)) = (&r, &d.labels) {
                    r = rack.clone().with_labels(l.clone());
                }
                v(r.map(Structure::UnpointedRack))
            }
            Document::Group(d) => v(group_from_doc(d).map(Structure::Group)),
            Document::Hom(d) => match (self.resolve(&d.dom)?, self.resolve(&d.cod)?) {
                (Structure::Rack(a), Structure::Rack(b)) => {
                    v(RackHom::new(a, b, d.map.clone()).map(Structure::RackHom))
                }
                (Structure::Group(a), Structure::Group(b)) => {
                    v(GroupHom::new(a, b, d.map.clone()).map(Structure::GroupHom))
                }
                (a, b) => Err(self.kind_error(
                    "two racks or two groups",
                    &format!("{} and {}", a.kind(), b.kind()),
                )),
            },
            Document::Action(d) => {
                let (s, r) = (self.rack(&d.actee)?, self.rack(&d.actor)?);
                v(flatten(&d.table, s.size(), r.size())
                    .and_then(|t| RackAction::new(s, r, t))
                    .map(Structure::Action))
            }
            Document::RackXmod(d) => {
                let (p, r) = (self.rack(&d.domain)?, self.rack(&d.codomain)?);
                v(rack_xmod_from_parts(p, r, &d.boundary, &d.action).map(Structure::RackXMod))
            }
            Document::GroupXmod(d) => {
                let (m, n) = (self.group(&d.domain)?, self.group(&d.codomain)?);
                v(flatten(&d.action, m.size(), n.size())
                    .and_then(|t| {
                        let boundary = GroupHom::new(m, n, d.boundary.clone())?;
                        GroupXMod::new(boundary, t)
                    })
                    .map(Structure::GroupXMod))
            }
            Document::XmodMorphism(d) => {
                let (src, dst) = (self.rack_xmod(&d.source)?, self.rack_xmod(&d.target)?);
                v(RackXModMorphism::new(&src, &dst, d.f1.clone(), d.f0.clone())
                    .map(Structure::XModMorphism))
            }
            Document::PullbackRequest(d) => {
                let req = match (self.resolve(&d.xmod)?, self.resolve(&d.hom)?) {
                    (Structure::RackXMod(xmod), Structure::RackHom(phi)) => {
                        let test = match &d.test {
                            Some(t) => Some(expect_kind!(self, self.resolve(t)?, XModMorphism, "xmod-morphism")?),
                            None => None,
                        };
                        PullbackRequest::Rack { xmod, phi, test }
                    }
                    (Structure::GroupXMod(xmod), Structure::GroupHom(phi)) => {
                        PullbackRequest::Group { xmod, phi }
                    }
                    (a, b) => {
                        return Err(self.kind_error(
                            "a rack-xmod with a rack hom, or a group-xmod with a group hom",
                            &format!("{} and {}", a.kind(), b.kind()),
                        ))
                    }
                };
                Ok(Structure::PullbackRequest(req))
            }
            Document::Certificate(c) => Ok(Structure::Certificate(c.clone())),
        }
    }
}

fn check_size(declared: usize, actual: usize) -> crate::Result<()> {
    if declared != actual {
        return Err(Error::TableShape {
            expected: declared * declared,
            found: actual * actual,
        });
    }
    Ok(())
}

/// Row-major flattening with a shape check.
fn flatten(rows: &[Vec<usize>], height: usize, width: usize) -> crate::Result<Vec<usize>> {
    let found: usize = rows.iter().map(Vec::len).sum();
    if rows.len() != height || rows.iter().any(|r| r.len() != width) {
        return Err(Error::TableShape {
            expected: height * width,
            found,
        });
    }
    Ok(rows.concat())
}

fn rack_from_doc(d: &RackDoc) -> crate::Result<FiniteRack> {
    let r = FiniteRack::new(d.size, flatten(&d.table, d.size, d.size)?, d.basepoint)?;
    match &d.labels {
        Some(l) => r.with_labels(l.clone()),
        None => Ok(r),
    }
}

fn group_from_doc(d: &GroupDoc) -> crate::Result<FiniteGroup> {
    let g = FiniteGroup::new(d.size, flatten(&d.table, d.size, d.size)?, d.identity)?;
    match &d.labels {
        Some(l) => g.with_labels(l.clone()),
        None => Ok(g),
    }
}

fn rack_xmod_from_parts(
    p: FiniteRack,
    r: FiniteRack,
    boundary: &[usize],
    action: &[Vec<usize>],
) -> crate::Result<RackXMod> {
    let table = flatten(action, p.size(), r.size())?;
    let boundary = RackHom::new(p.clone(), r.clone(), boundary.to_vec())?;
    RackXMod::new(boundary, RackAction::new(p, r, table)?)
}

fn inline(doc: Document) -> Ref {
    Ref::Inline(Box::new(doc))
}

pub fn rack_doc(r: &FiniteRack) -> Document {
    Document::Rack(RackDoc {
        size: r.size(),
        basepoint: r.basepoint(),
        labels: r.labels().map(<[String]>::to_vec),
        table: r.rows(),
    })
}

pub fn unpointed_rack_doc(r: &UnpointedRack) -> Document {
    Document::UnpointedRack(UnpointedRackDoc {
        size: r.size(),
        labels: r.labels().map(<[String]>::to_vec),
        table: r.rows(),
    })
}

pub fn group_doc(g: &FiniteGroup) -> Document {
    Document::Group(GroupDoc {
        size: g.size(),
        identity: g.identity(),
        labels: g.labels().map(<[String]>::to_vec),
        table: g.rows(),
    })
}

pub fn rack_hom_doc(f: &RackHom) -> Document {
    Document::Hom(HomDoc {
        map: f.map().to_vec(),
        dom: inline(rack_doc(f.dom())),
        cod: inline(rack_doc(f.cod())),
    })
}

pub fn group_hom_doc(f: &GroupHom) -> Document {
    Document::Hom(HomDoc {
        map: f.map().to_vec(),
        dom: inline(group_doc(f.dom())),
        cod: inline(group_doc(f.cod())),
    })
}

pub fn action_doc(a: &RackAction) -> Document {
    Document::Action(ActionDoc {
        table: a.rows(),
        actee: inline(rack_doc(a.actee())),
        actor: inline(rack_doc(a.actor())),
    })
}

pub fn rack_xmod_doc(x: &RackXMod) -> Document {
    Document::RackXmod(XModDoc {
        boundary: x.boundary().map().to_vec(),
        action: x.action().rows(),
        domain: inline(rack_doc(x.domain())),
        codomain: inline(rack_doc(x.codomain())),
    })
}

pub fn group_xmod_doc(x: &GroupXMod) -> Document {
    Document::GroupXmod(XModDoc {
        boundary: x.boundary().map().to_vec(),
        action: x.action_rows(),
        domain: inline(group_doc(x.domain())),
        codomain: inline(group_doc(x.codomain())),
    })
}

pub fn morphism_doc(m: &RackXModMorphism) -> Document {
    Document::XmodMorphism(MorphismDoc {
        f1: m.f1().map().to_vec(),
        f0: m.f0().map().to_vec(),
        source: inline(rack_xmod_doc(m.source())),
        target: inline(rack_xmod_doc(m.target())),
    })
}

/// Document for any resolved structure, with every reference inlined.
pub fn to_document(s: &Structure) -> Document {
    match s {
        Structure::Rack(r) => rack_doc(r),
        Structure::UnpointedRack(r) => unpointed_rack_doc(r),
        Structure::Group(g) => group_doc(g),
        Structure::RackHom(f) => rack_hom_doc(f),
        Structure::GroupHom(f) => group_hom_doc(f),
        Structure::Action(a) => action_doc(a),
        Structure::RackXMod(x) => rack_xmod_doc(x),
        Structure::GroupXMod(x) => group_xmod_doc(x),
        Structure::XModMorphism(m) => morphism_doc(m),
        Structure::PullbackRequest(PullbackRequest::Rack { xmod, phi, test }) => {
            Document::PullbackRequest(PullbackRequestDoc {
                xmod: inline(rack_xmod_doc(xmod)),
                hom: inline(rack_hom_doc(phi)),
                test: test.as_ref().map(|t| inline(morphism_doc(t))),
            })
        }
        Structure::PullbackRequest(PullbackRequest::Group { xmod, phi }) => {
            Document::PullbackRequest(PullbackRequestDoc {
                xmod: inline(group_xmod_doc(xmod)),
                hom: inline(group_hom_doc(phi)),
                test: None,
            })
        }
        Structure::Certificate(c) => Document::Certificate(c.clone()),
    }
}
