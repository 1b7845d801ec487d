//! The `rackxmod` command line.
//!
//! Exit codes: 0 when the input is valid or the certification passes, 1
//! when a validator or verifier reports a failure, 2 when an input cannot
//! be read or parsed or a command is used with the wrong kinds.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::corpus;
use crate::enumerate::DEFAULT_ENUMERATION_BOUND;
use crate::error::Error;
use crate::format::{
    self, emit_document, group_doc, group_hom_doc, group_xmod_doc, rack_doc, rack_xmod_doc,
    sha256_hex, to_document, unpointed_rack_doc, CertificateDoc, Document, FormatError,
    PullbackRequest, Structure, Verdict,
};
use crate::functors::{check_adjunction_bijection, check_xmod_adjunction};
use crate::group::{FiniteGroup, GroupHom};
use crate::group_xmod::GroupXMod;
use crate::pullback::{
    check_conj_preserves_pullback, fiber_product, fiber_product_xmod, group_pullback_xmod,
    pullback_xmod, verify_universal_property, PullbackXMod,
};
use crate::rack::{adjoin_basepoint, conj_rack, core_rack, product_rack, FiniteRack, RackHom};
use crate::xmod::{hemi_semidirect, RackAction, RackXMod, RackXModMorphism};

#[derive(Parser, Debug)]
#[command(name = "rackxmod", version, about = "Finite pointed racks, crossed modules and pullbacks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a structure file of any kind.
    Check {
        path: PathBuf,
        /// Also write the report to this file.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Build a structure and write it as a canonical document.
    Construct {
        #[command(subcommand)]
        what: Construct,
        /// Output file; standard output when absent.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Run a verifier and print a certificate.
    Certify {
        #[command(subcommand)]
        what: Certify,
        /// Also write the certificate to this file.
        #[arg(long, global = true)]
        report: Option<PathBuf>,
        /// Record wall-clock time in the certificate.
        #[arg(long, global = true)]
        timing: bool,
    },
    /// Write the enumerated racks of order up to N together with the named
    /// groups, homs and crossed modules.
    Corpus {
        n: usize,
        #[arg(long)]
        out: PathBuf,
        /// Largest order the enumerator accepts.
        #[arg(long, env = "RACKXMOD_CORPUS_BOUND", default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Conjugation rack of a group.
    Conj {
        #[arg(long)]
        group: PathBuf,
    },
    /// Core rack of a group, unpointed unless `--adjoin` is given.
    Core {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        adjoin: bool,
    },
    /// Adjoin a fresh basepoint to an unpointed rack.
    Adjoin { rack: PathBuf },
    /// Product of two racks.
    Product { left: PathBuf, right: PathBuf },
    /// Hemi-semi-direct product of a rack action.
    Hemisemi {
        #[arg(long)]
        action: PathBuf,
    },
    /// Fiber product of two homs, or of two crossed modules over one rack.
    Fiber { left: PathBuf, right: PathBuf },
    /// Pullback crossed module of racks.
    Pullback {
        #[arg(long, conflicts_with = "request")]
        xmod: Option<PathBuf>,
        #[arg(long, requires = "xmod")]
        hom: Option<PathBuf>,
        #[arg(long)]
        request: Option<PathBuf>,
    },
    /// Pullback crossed module of groups.
    GroupPullback {
        #[arg(long)]
        gxmod: PathBuf,
        #[arg(long)]
        ghom: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Certify {
    /// Existence and uniqueness of mediating morphisms for a pullback.
    /// Without a test morphism, every test object from the built-in
    /// crossed modules over the base is tried.
    Universal {
        #[arg(long, conflicts_with = "request")]
        xmod: Option<PathBuf>,
        #[arg(long, requires = "xmod")]
        hom: Option<PathBuf>,
        #[arg(long)]
        test: Option<PathBuf>,
        #[arg(long)]
        request: Option<PathBuf>,
    },
    /// Hom(As(X), G) against Hom(X, Conj(G)).
    Adjunction {
        #[arg(long)]
        rack: PathBuf,
        #[arg(long)]
        group: PathBuf,
    },
    /// The crossed module version of the adjunction.
    XmodAdjunction {
        #[arg(long)]
        xmod: PathBuf,
        #[arg(long)]
        gxmod: PathBuf,
    },
    /// Conj of a group pullback against the pullback of Conj.
    ConjPreserves {
        #[arg(long)]
        gxmod: PathBuf,
        #[arg(long)]
        ghom: PathBuf,
    },
}

/// A command failure and the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Input(String),
    Axiom(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        if e.is_axiom_failure() {
            Failure::Axiom(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Axiom(e.to_string())
    }
}

type CliResult<T> = Result<T, Failure>;

pub fn main() -> ExitCode {
    run(Cli::parse())
}

pub fn run(cli: Cli) -> ExitCode {
    let outcome = match cli.command {
        Command::Check { path, report } => check(&path, report.as_deref()),
        Command::Construct { what, out } => construct(what, out.as_deref()),
        Command::Certify {
            what,
            report,
            timing,
        } => certify(what, report.as_deref(), timing),
        Command::Corpus { n, out, bound } => write_corpus(n, &out, bound),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Axiom(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> CliResult<Structure> {
    Ok(format::load(path)?)
}

fn wrong_kind(path: &Path, expected: &str, found: &Structure) -> Failure {
    Failure::Input(format!(
        "{}: expected {expected}, found {}",
        path.display(),
        found.kind()
    ))
}

macro_rules! loader {
    ($name:ident, $variant:ident, $ty:ty, $expected:expr) => {
        fn $name(path: &Path) -> CliResult<$ty> {
            match load(path)? {
                Structure::$variant(v) => Ok(v),
                other => Err(wrong_kind(path, $expected, &other)),
            }
        }
    };
}

loader!(load_rack, Rack, FiniteRack, "rack");
loader!(load_group, Group, FiniteGroup, "group");
loader!(load_rack_hom, RackHom, RackHom, "hom between racks");
loader!(load_group_hom, GroupHom, GroupHom, "hom between groups");
loader!(load_action, Action, RackAction, "action");
loader!(load_rack_xmod, RackXMod, RackXMod, "rack-xmod");
loader!(load_group_xmod, GroupXMod, GroupXMod, "group-xmod");
loader!(load_morphism, XModMorphism, RackXModMorphism, "xmod-morphism");

fn write_output(text: &str, out: Option<&Path>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn digests(paths: &[&Path]) -> BTreeMap<String, String> {
    paths
        .iter()
        .filter_map(|p| {
            fs::read(p)
                .ok()
                .map(|bytes| (p.display().to_string(), sha256_hex(&bytes)))
        })
        .collect()
}

fn finish_report(mut cert: CertificateDoc, inputs: &[&Path], report: Option<&Path>) -> CliResult<ExitCode> {
    cert.inputs = digests(inputs);
    let text = emit_document(&Document::Certificate(cert.clone()));
    write_output(&text, None)?;
    if report.is_some() {
        write_output(&text, report)?;
    }
    Ok(ExitCode::from(match cert.verdict {
        Verdict::Pass => 0,
        Verdict::Fail => 1,
    }))
}

fn check(path: &Path, report: Option<&Path>) -> CliResult<ExitCode> {
    let mut cert = CertificateDoc {
        check: "check".into(),
        ..Default::default()
    };
    match format::load(path) {
        Ok(s) => {
            cert.verdict = Verdict::Pass;
            cert.detail = Some(format!("valid {}", s.kind()));
            cert.counts = structure_counts(&s);
        }
        Err(e) if e.is_axiom_failure() => {
            cert.verdict = Verdict::Fail;
            cert.detail = Some("validator rejected the structure".into());
            cert.witnesses = vec![e.axiom_error().map(Error::to_string).unwrap_or_default()];
        }
        Err(e) => return Err(e.into()),
    }
    finish_report(cert, &[path], report)
}

fn structure_counts(s: &Structure) -> BTreeMap<String, u64> {
    let pairs: Vec<(&str, usize)> = match s {
        Structure::Rack(r) => vec![("size", r.size()), ("orbits", r.orbits().len())],
        Structure::UnpointedRack(r) => vec![("size", r.size())],
        Structure::Group(g) => vec![("size", g.size())],
        Structure::RackHom(f) => vec![("domain", f.dom().size()), ("codomain", f.cod().size())],
        Structure::GroupHom(f) => vec![("domain", f.dom().size()), ("codomain", f.cod().size())],
        Structure::Action(a) => vec![("actee", a.actee().size()), ("actor", a.actor().size())],
        Structure::RackXMod(x) => vec![("domain", x.domain().size()), ("codomain", x.codomain().size())],
        Structure::GroupXMod(x) => vec![("domain", x.domain().size()), ("codomain", x.codomain().size())],
        Structure::XModMorphism(m) => vec![
            ("source-domain", m.source().domain().size()),
            ("target-domain", m.target().domain().size()),
        ],
        Structure::PullbackRequest(_) | Structure::Certificate(_) => vec![],
    };
    pairs.into_iter().map(|(k, v)| (k.to_string(), v as u64)).collect()
}

fn construct(what: Construct, out: Option<&Path>) -> CliResult<ExitCode> {
    let doc = match what {
        Construct::Conj { group } => rack_doc(&conj_rack(&load_group(&group)?)),
        Construct::Core { group, adjoin } => {
            let core = core_rack(&load_group(&group)?);
            if adjoin {
                rack_doc(&adjoin_basepoint(&core))
            } else {
                unpointed_rack_doc(&core)
            }
        }
        Construct::Adjoin { rack } => match load(&rack)? {
            Structure::UnpointedRack(r) => rack_doc(&adjoin_basepoint(&r)),
            other => return Err(wrong_kind(&rack, "unpointed-rack", &other)),
        },
        Construct::Product { left, right } => {
            rack_doc(&product_rack(&load_rack(&left)?, &load_rack(&right)?))
        }
        Construct::Hemisemi { action } => rack_doc(&hemi_semidirect(&load_action(&action)?)?),
        Construct::Fiber { left, right } => match (load(&left)?, load(&right)?) {
            (Structure::RackHom(a), Structure::RackHom(b)) => {
                rack_doc(fiber_product(&a, &b)?.carrier())
            }
            (Structure::RackXMod(a), Structure::RackXMod(b)) => {
                rack_xmod_doc(&fiber_product_xmod(&a, &b)?)
            }
            (a, b) => {
                return Err(Failure::Input(format!(
                    "fiber needs two rack homs or two rack-xmods, found {} and {}",
                    a.kind(),
                    b.kind()
                )))
            }
        },
        Construct::Pullback { xmod, hom, request } => {
            let (x, phi, _) = rack_pullback_inputs(xmod, hom, request)?;
            rack_xmod_doc(pullback_xmod(&x, &phi)?.xmod())
        }
        Construct::GroupPullback { gxmod, ghom } => {
            let pb = group_pullback_xmod(&load_group_xmod(&gxmod)?, &load_group_hom(&ghom)?)?;
            group_xmod_doc(pb.xmod())
        }
    };
    // re-validate what is about to be written
    format::build(&doc, Path::new("."), "constructed output")?;
    write_output(&emit_document(&doc), out)?;
    Ok(ExitCode::SUCCESS)
}

type RackPullbackInputs = (RackXMod, RackHom, Option<RackXModMorphism>);

fn rack_pullback_inputs(
    xmod: Option<PathBuf>,
    hom: Option<PathBuf>,
    request: Option<PathBuf>,
) -> CliResult<RackPullbackInputs> {
    if let Some(req) = request {
        return match load(&req)? {
            Structure::PullbackRequest(PullbackRequest::Rack { xmod, phi, test }) => {
                Ok((xmod, phi, test))
            }
            other => Err(wrong_kind(&req, "pullback-request over racks", &other)),
        };
    }
    match (xmod, hom) {
        (Some(x), Some(h)) => Ok((load_rack_xmod(&x)?, load_rack_hom(&h)?, None)),
        _ => Err(Failure::Input(
            "give either --request or both --xmod and --hom".into(),
        )),
    }
}

fn certify(what: Certify, report: Option<&Path>, timing: bool) -> CliResult<ExitCode> {
    let start = Instant::now();
    let (mut cert, inputs) = match what {
        Certify::Universal {
            xmod,
            hom,
            test,
            request,
        } => {
            let inputs: Vec<PathBuf> = [&xmod, &hom, &test, &request]
                .into_iter()
                .flatten()
                .cloned()
                .collect();
            let (x, phi, mut test_morphism) = rack_pullback_inputs(xmod, hom, request)?;
            if let Some(t) = test {
                test_morphism = Some(load_morphism(&t)?);
            }
            (certify_universal(&x, &phi, test_morphism)?, inputs)
        }
        Certify::Adjunction { rack, group } => {
            let (x, g) = (load_rack(&rack)?, load_group(&group)?);
            let mut cert = named_cert("adjunction");
            match check_adjunction_bijection(&x, &g) {
                Ok(r) => {
                    cert.verdict = Verdict::Pass;
                    cert.counts = counts(&[("rack-homs", r.rack_homs), ("group-homs", r.group_homs)]);
                    cert.witnesses = r.matching.iter().map(|m| format!("{m:?}")).collect();
                }
                Err(e) => cert.witnesses = vec![e.to_string()],
            }
            (cert, vec![rack, group])
        }
        Certify::XmodAdjunction { xmod, gxmod } => {
            let (x, g) = (load_rack_xmod(&xmod)?, load_group_xmod(&gxmod)?);
            let mut cert = named_cert("xmod-adjunction");
            match check_xmod_adjunction(&x, &g) {
                Ok(r) => {
                    cert.verdict = Verdict::Pass;
                    cert.counts = counts(&[
                        ("rack-morphisms", r.rack_morphisms),
                        ("group-morphisms", r.group_morphisms),
                    ]);
                    cert.witnesses = r
                        .matching
                        .iter()
                        .map(|(f1, f0)| format!("f1 = {f1:?}, f0 = {f0:?}"))
                        .collect();
                }
                Err(e) => cert.witnesses = vec![e.to_string()],
            }
            (cert, vec![xmod, gxmod])
        }
        Certify::ConjPreserves { gxmod, ghom } => {
            let (x, phi) = (load_group_xmod(&gxmod)?, load_group_hom(&ghom)?);
            let mut cert = named_cert("conj-preserves");
            match check_conj_preserves_pullback(&x, &phi) {
                Ok(r) => {
                    cert.verdict = Verdict::Pass;
                    cert.counts = counts(&[
                        ("carrier", r.conj_of_pullback.domain().size()),
                        ("base", r.conj_of_pullback.codomain().size()),
                    ]);
                    cert.witnesses = vec![
                        format!("f1 = {:?}", r.isomorphism.f1().map()),
                        format!("f0 = {:?}", r.isomorphism.f0().map()),
                    ];
                }
                Err(e) => cert.witnesses = vec![e.to_string()],
            }
            (cert, vec![gxmod, ghom])
        }
    };
    if timing {
        cert.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    let inputs: Vec<&Path> = inputs.iter().map(PathBuf::as_path).collect();
    finish_report(cert, &inputs, report)
}

fn named_cert(check: &str) -> CertificateDoc {
    CertificateDoc {
        check: check.into(),
        verdict: Verdict::Fail,
        ..Default::default()
    }
}

fn counts(pairs: &[(&str, usize)]) -> BTreeMap<String, u64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v as u64)).collect()
}

fn certify_universal(
    x: &RackXMod,
    phi: &RackHom,
    test: Option<RackXModMorphism>,
) -> CliResult<CertificateDoc> {
    let pb: PullbackXMod = pullback_xmod(x, phi)?;
    let tests = match test {
        Some(t) => vec![t],
        None => corpus::universal_tests(&pb),
    };
    let mut cert = named_cert("universal");
    let mut largest = 0u128;
    let mut certified = 0;
    for (i, t) in tests.iter().enumerate() {
        match verify_universal_property(&pb, t) {
            Ok(c) => {
                certified += 1;
                largest = largest.max(c.search_space);
                cert.witnesses.push(format!(
                    "test {i}: f* = {:?}, unique among {} maps",
                    c.mediating.f1().map(),
                    c.search_space
                ));
            }
            Err(e) => cert.witnesses.push(format!("test {i}: {e}")),
        }
    }
    cert.verdict = if certified == tests.len() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    cert.counts = counts(&[
        ("carrier", pb.carrier().size()),
        ("tests", tests.len()),
        ("certified", certified),
    ]);
    cert.counts
        .insert("largest-search-space".into(), largest.min(u64::MAX as u128) as u64);
    Ok(cert)
}

fn write_corpus(n: usize, out: &Path, bound: usize) -> CliResult<ExitCode> {
    let racks = corpus::enumerated_racks(n, bound).map_err(|e| Failure::Input(e.to_string()))?;
    let mut files: Vec<(String, Document)> = Vec::new();
    for r in racks {
        files.push((format!("racks/{}.toml", r.name), rack_doc(&r.value)));
    }
    for r in corpus::named_racks() {
        files.push((format!("named/{}.toml", file_name(&r.name)), rack_doc(&r.value)));
    }
    for g in corpus::groups() {
        files.push((format!("groups/{}.toml", g.name), group_doc(&g.value)));
    }
    for h in corpus::group_homs() {
        files.push((format!("group-homs/{}.toml", file_name(&h.name)), group_hom_doc(&h.value)));
    }
    for x in corpus::group_xmods() {
        files.push((format!("group-xmods/{}.toml", file_name(&x.name)), group_xmod_doc(&x.value)));
    }
    for x in corpus::rack_xmods() {
        files.push((format!("rack-xmods/{}.toml", file_name(&x.name)), rack_xmod_doc(&x.value)));
    }
    for (name, x, phi) in corpus::group_pullback_instances() {
        let req = Structure::PullbackRequest(PullbackRequest::Group { xmod: x, phi });
        files.push((format!("requests/{}.toml", file_name(&name)), to_document(&req)));
    }
    for (name, doc) in &files {
        let path = out.join(name);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        }
        write_output(&emit_document(doc), Some(&path))?;
    }
    println!("wrote {} files to {}", files.len(), out.display());
    Ok(ExitCode::SUCCESS)
}

/// Names like `A3<S3` or `Z3->Z2` as portable file names.
fn file_name(name: &str) -> String {
    name.replace("->", "_to_")
        .replace('<', "_in_")
        .replace(['(', ')'], "")
        .replace('+', "plus")
        .replace(' ', "_")
}
