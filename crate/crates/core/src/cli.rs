//! The `lfcheck` command line.
//!
//! Factorization commands read JSON files (stdin when no path or `-` is
//! given). Builders and `fibersum` write factorization JSON to stdout, so
//! `lfcheck build theorem1 --g 3 | lfcheck verify` works. Exit codes: 0 all
//! checks pass, 1 a check is refuted, 2 undecided or unreadable input.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::braid::{self, BraidWord, MarkedCurve, DEFAULT_BUDGET};
use crate::fibration::builders::{self, Theorem3Data};
use crate::fibration::certificate::{self, CertificateReport};
use crate::fibration::commlen;
use crate::fibration::cover::{self, CoverSpec};
use crate::fibration::{self, io, Engine, Factorization, FibrationError};
use crate::homology;
use crate::raag::{self, CommGraph, EqualityOracle};
use crate::report::{batch_exit_code, Report, Verdict};
use crate::surface::{SurfaceContext, UtContext};
use crate::words::{Alphabet, GenMap, Target, Word};

#[derive(Parser, Debug)]
#[command(name = "lfcheck", version, about = "Check monodromy factorizations of Lefschetz fibrations and surface bundles")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Number of sampled kernel loops in certificates.
    #[arg(long, default_value_t = 1000, global = true)]
    pub samples: usize,
    /// Evaluate in this engine instead of the file's own; only `symplectic` is a valid switch.
    #[arg(long, global = true)]
    pub engine: Option<String>,
    /// Worker threads across input files.
    #[arg(long, default_value_t = 1, global = true)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The factors multiply to the identity.
    Verify(Inputs),
    /// The monodromy lies in the Torelli group.
    Torelli(Inputs),
    /// The fibration is relatively minimal.
    Minimal(Inputs),
    /// First homology of the total space.
    H1(Inputs),
    /// Indecomposability certificate in the push model.
    Certify(Inputs),
    /// Pull back along a finite cover of the base.
    Pullback(PullbackArgs),
    /// Fiber sum of two factorizations.
    Fibersum(FibersumArgs),
    /// Commutator length bounds for a power of a separating twist.
    #[command(name = "cl-bounds")]
    ClBounds {
        #[arg(long)]
        g: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 2)]
        g0: usize,
    },
    /// Build one of the standard families.
    #[command(subcommand)]
    Build(BuildCmd),
    #[command(subcommand)]
    Braid(BraidCmd),
    #[command(subcommand)]
    Raag(RaagCmd),
    #[command(subcommand)]
    Word(WordCmd),
}

#[derive(Args, Debug)]
pub struct Inputs {
    /// Factorization files; stdin when empty or `-`.
    pub files: Vec<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PullbackArgs {
    /// Factorization file; stdin when absent.
    pub file: Option<PathBuf>,
    /// Cover file with 1-based permutations.
    #[arg(long, conflicts_with_all = ["cyclic", "random"])]
    pub cover: Option<PathBuf>,
    /// Cyclic cover of this degree.
    #[arg(long, conflicts_with = "random")]
    pub cyclic: Option<usize>,
    /// Random transitive cover of this degree (uses `--seed`).
    #[arg(long)]
    pub random: Option<usize>,
    /// Also run the certificate on the pulled-back push model.
    #[arg(long)]
    pub certify: bool,
}

#[derive(Args, Debug)]
pub struct FibersumArgs {
    pub first: PathBuf,
    pub second: PathBuf,
    /// Gluing class file.
    #[arg(long)]
    pub gluing: Option<PathBuf>,
    /// Report on the seam subfactorization instead of printing the sum.
    #[arg(long)]
    pub seam: bool,
}

#[derive(Subcommand, Debug)]
pub enum BuildCmd {
    Theorem1 {
        #[arg(long)]
        g: usize,
    },
    Xn {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: u32,
        /// Class of `d` as comma-separated coordinates (default `a_g`).
        #[arg(long)]
        d_class: Option<String>,
    },
    /// Product bundle over a genus-h base.
    Trivial {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        h: usize,
        /// Attach a push model over this genus with all images trivial.
        #[arg(long)]
        g0: Option<usize>,
    },
    /// Surface bundle pipeline checks; the full monodromy needs `--phi`.
    Theorem3 {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        p: i64,
        /// Map file `a1 -> v1 v3 ...` from the surface group to the RAAG.
        #[arg(long)]
        phi: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum BraidCmd {
    Equal {
        #[arg(long)]
        n: usize,
        a: String,
        b: String,
    },
    Pure {
        #[arg(long)]
        n: usize,
        word: String,
    },
    /// Keep the listed strands of a pure braid.
    Delete {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        keep: String,
        word: String,
    },
    /// Twist about a round curve enclosing consecutive points.
    Twist {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        points: String,
        #[arg(long, default_value_t = 1)]
        power: i64,
        #[arg(long)]
        half: bool,
    },
    Linking {
        #[arg(long)]
        n: usize,
        word: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum RaagCmd {
    /// Normal form in `A(Γ)`; `Γ` defaults to the complement of the n-cycle.
    Nf {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        graph: Option<String>,
        word: String,
    },
    /// Check that a map file defines a homomorphism out of `A(Γ)`.
    HomCheck {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        source_n: usize,
        #[arg(long)]
        graph: Option<String>,
        /// `braid:N`, `raag:N`, `ut:G0`, `surface:H` or `omega:G`.
        #[arg(long)]
        target: String,
        /// Also require non-edges to go to non-commuting elements.
        #[arg(long)]
        exact: bool,
    },
    ForgetfulCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum WordCmd {
    /// Dehn reduction in the closed surface group of genus h.
    Reduce {
        #[arg(long)]
        genus: usize,
        word: String,
    },
    /// Canonical form in the unit tangent bundle group.
    UtReduce {
        #[arg(long)]
        g0: usize,
        word: String,
    },
}

enum Output {
    Reports(Vec<Report>),
    Data(String),
}

type CliResult<T> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    2
                }
            };
            return code;
        }
    };
    match dispatch(&cli, stdin) {
        Ok(Output::Data(text)) => {
            let _ = writeln!(stdout, "{text}");
            0
        }
        Ok(Output::Reports(reports)) => {
            match cli.format {
                Format::Text => {
                    for r in &reports {
                        let _ = write!(stdout, "{}", r.to_text());
                    }
                }
                Format::Json => {
                    let value = if reports.len() == 1 {
                        reports[0].to_json()
                    } else {
                        serde_json::Value::Array(reports.iter().map(Report::to_json).collect())
                    };
                    let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&value).expect("json value"));
                }
            }
            batch_exit_code(reports.iter().map(Report::exit_code))
        }
        Err(message) => {
            let _ = writeln!(stderr, "error: {message}");
            2
        }
    }
}

fn read_path(path: Option<&PathBuf>, stdin: &mut dyn Read) -> CliResult<(String, String)> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            Ok((p.display().to_string(), text))
        }
        _ => {
            let mut text = String::new();
            stdin.read_to_string(&mut text).map_err(err)?;
            Ok(("stdin".to_string(), text))
        }
    }
}

fn read_inputs(files: &[PathBuf], stdin: &mut dyn Read) -> CliResult<Vec<(String, String)>> {
    if files.is_empty() {
        return Ok(vec![read_path(None, stdin)?]);
    }
    files.iter().map(|p| read_path(Some(p), stdin)).collect()
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> CliResult<Output> {
    let requested = cli.engine.as_deref().map(str::parse::<Engine>).transpose().map_err(err)?;
    let ctx = Ctx { requested, seed: cli.seed, samples: cli.samples };
    match &cli.command {
        Command::Verify(i) => per_file(&ctx, read_inputs(&i.files, stdin)?, cli.jobs, Verb::Verify),
        Command::Torelli(i) => per_file(&ctx, read_inputs(&i.files, stdin)?, cli.jobs, Verb::Torelli),
        Command::Minimal(i) => per_file(&ctx, read_inputs(&i.files, stdin)?, cli.jobs, Verb::Minimal),
        Command::H1(i) => per_file(&ctx, read_inputs(&i.files, stdin)?, cli.jobs, Verb::H1),
        Command::Certify(i) => per_file(&ctx, read_inputs(&i.files, stdin)?, cli.jobs, Verb::Certify),
        Command::Pullback(a) => pullback_cmd(&ctx, a, stdin),
        Command::Fibersum(a) => fibersum_cmd(a, stdin),
        Command::ClBounds { g, k, g0 } => {
            let b = commlen::cl_bounds_with_g0(*g, *k, *g0).map_err(err)?;
            let mut r = Report::new("cl-bounds");
            let upper = b.upper.map_or("unknown".to_string(), |u| u.to_string());
            r.value = Some(format!("lower = {}, upper = {upper}", b.lower));
            for n in b.notes {
                r.note(n);
            }
            Ok(Output::Reports(vec![r]))
        }
        Command::Build(b) => build_cmd(b),
        Command::Braid(b) => braid_cmd(b),
        Command::Raag(r) => raag_cmd(r),
        Command::Word(w) => word_cmd(w),
    }
}

struct Ctx {
    requested: Option<Engine>,
    seed: u64,
    samples: usize,
}

#[derive(Clone, Copy)]
enum Verb {
    Verify,
    Torelli,
    Minimal,
    H1,
    Certify,
}

impl Verb {
    fn name(self) -> &'static str {
        match self {
            Verb::Verify => "verify",
            Verb::Torelli => "torelli",
            Verb::Minimal => "minimal",
            Verb::H1 => "h1",
            Verb::Certify => "certify",
        }
    }
}

fn per_file(ctx: &Ctx, inputs: Vec<(String, String)>, jobs: usize, verb: Verb) -> CliResult<Output> {
    let run_one = |(source, text): &(String, String)| -> Report {
        let mut r = match analyze(ctx, text, verb) {
            Ok(r) => r,
            Err(message) => {
                let mut r = Report::new(verb.name());
                r.check("input", Verdict::Undecided, None, "input parses as a factorization", message);
                r
            }
        };
        r.source = Some(source.clone());
        r
    };
    let jobs = jobs.max(1).min(inputs.len().max(1));
    let reports = if jobs == 1 {
        inputs.iter().map(run_one).collect()
    } else {
        let chunk = inputs.len().div_ceil(jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = inputs
                .chunks(chunk)
                .map(|part| s.spawn(move || part.iter().map(run_one).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        })
    };
    Ok(Output::Reports(reports))
}

fn engine_for(f: &Factorization, requested: Option<Engine>) -> CliResult<Engine> {
    match requested {
        None => Ok(f.engine),
        Some(e) if e == f.engine || e == Engine::Symplectic => Ok(e),
        Some(e) => Err(format!("cannot switch a {} factorization to {e}: only downgrades to symplectic", f.engine)),
    }
}

const ST_RELATION_UT: &str = "the factors multiply to the identity in the push image of the unit tangent bundle group (exact)";
const ST_RELATION_SP: &str = "the factors act trivially on H1 of the fiber (identity in homology, necessary only)";
const ST_RELATION_BRAID: &str = "the braid images multiply to the identity (exact in the braid group)";
const ST_TORELLI: &str =
    "monodromy in the Torelli group: every vanishing cycle separating, every commutator entry acting trivially on homology";
const ST_MINIMAL: &str =
    "relatively minimal iff no vanishing cycle is nullhomotopic; in the push model every puncture maps to t^(+-1)";
const ST_H1: &str = "H1(X) = H1(base) + H1(fiber)/<(M - I)x, vanishing cycles> for a fibration with a section";

fn relation_check(r: &mut Report, f: &Factorization, engine: Engine) -> CliResult<bool> {
    let value = f.evaluate(engine).map_err(err)?;
    let ok = value.is_identity().map_err(err)?;
    let (statement, wording) = match engine {
        Engine::UtModel => (ST_RELATION_UT, "identity in the UT model"),
        Engine::Symplectic => (ST_RELATION_SP, "identity in homology"),
        Engine::BraidInduced => (ST_RELATION_BRAID, "identity in the braid group"),
    };
    let detail = if ok { wording.to_string() } else { format!("product is {}", value.render()) };
    r.check("relation", Verdict::from_bool(ok), Some(engine.to_string()), statement, detail);
    Ok(ok)
}

fn analyze(ctx: &Ctx, text: &str, verb: Verb) -> CliResult<Report> {
    let f = io::factorization_from_json_unverified(text).map_err(err)?;
    let engine = engine_for(&f, ctx.requested)?;
    let mut r = Report::new(verb.name());
    let related = relation_check(&mut r, &f, engine)?;
    match verb {
        Verb::Verify => {
            if engine == Engine::Symplectic && f.engine != Engine::Symplectic {
                r.note("downgraded to the symplectic engine: this does not decide the mapping class relation");
            }
        }
        Verb::Torelli => {
            let ok = f.is_torelli_factorization().map_err(err)?;
            r.check("torelli", Verdict::from_bool(ok), Some("symplectic".into()), ST_TORELLI, if ok {
                "all twist curves separating, commutator entries in Torelli"
            } else {
                "a twist curve is nonseparating or a commutator entry acts nontrivially"
            });
        }
        Verb::Minimal => match f.is_relatively_minimal() {
            Ok(ok) => {
                r.check("minimal", Verdict::from_bool(ok), Some(f.engine.to_string()), ST_MINIMAL, if ok {
                    "every vanishing cycle is witnessed essential"
                } else {
                    "a vanishing cycle is trivial or a puncture does not map to t^(+-1)"
                });
            }
            Err(FibrationError::UnwitnessedCurve(c)) => {
                r.check("minimal", Verdict::Undecided, None, ST_MINIMAL, format!("curve `{c}` has no witness"));
            }
            Err(e) => return Err(err(e)),
        },
        Verb::H1 => {
            if !related {
                r.note("the relation fails, so no fibration is described");
            }
            let h1 = f.h1_total_space().map_err(err)?;
            r.value = Some(h1.to_string());
            r.check("h1", Verdict::Pass, Some("symplectic".into()), ST_H1, format!("{h1}, b1 = {}", h1.betti()));
            let minimal = f.is_relatively_minimal().unwrap_or(false);
            if homology::noncomplex_flag(&h1, f.fiber_genus, f.base_genus, minimal) {
                r.note(format!(
                    "b1 = {} is odd: by the cited classification such a relatively minimal fibration carries no complex structure",
                    h1.betti()
                ));
            }
        }
        Verb::Certify => {
            let cert = certificate::certify_indecomposable(&f, ctx.samples, ctx.seed).map_err(err)?;
            certificate_checks(&mut r, &cert);
        }
    }
    Ok(r)
}

fn certificate_checks(r: &mut Report, cert: &CertificateReport) {
    let statements = [
        ("well-defined", "the surface relator maps to the identity, so the push model is a homomorphism"),
        ("peripherals", "each puncture loop maps to t^(+-1)"),
        ("kernel loops", "products of conjugated puncture loops lie in the filling kernel and map to a nonzero power of t"),
        ("projection", "the push model projects to the filled base map in the closed surface group"),
    ];
    for item in &cert.items {
        let statement = statements.iter().find(|(n, _)| *n == item.name).map_or("", |(_, s)| s);
        r.check(item.name.clone(), Verdict::from_bool(item.passed), Some("ut-model".into()), statement, item.detail.clone());
    }
    r.note(format!("seed {}, {} samples", cert.seed, cert.samples));
    if let Some(c) = cert.conclusion() {
        r.note(c);
    }
}

fn load_factorization(path: Option<&PathBuf>, stdin: &mut dyn Read) -> CliResult<Factorization> {
    let (_, text) = read_path(path, stdin)?;
    io::factorization_from_json(&text).map_err(err)
}

fn pullback_cmd(ctx: &Ctx, a: &PullbackArgs, stdin: &mut dyn Read) -> CliResult<Output> {
    let f = load_factorization(a.file.as_ref(), stdin)?;
    let cover = match (&a.cover, a.cyclic, a.random) {
        (Some(p), _, _) => io::cover_from_json(&read_path(Some(p), stdin)?.1).map_err(err)?,
        (None, Some(m), _) => CoverSpec::cyclic(f.base_genus, m).map_err(err)?,
        (None, None, Some(m)) => {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(ctx.seed);
            CoverSpec::random_transitive(f.base_genus, m, &mut rng).map_err(err)?
        }
        (None, None, None) => return Err("pullback needs --cover, --cyclic or --random".into()),
    };
    let p = cover::pullback(&f, &cover).map_err(err)?;
    let mut r = Report::new("pullback");
    let (m, k) = (cover.degree, f.critical_points());
    r.value = Some(format!("base genus {}, {} critical points", p.base_genus, p.critical_points()));
    r.check(
        "critical points",
        Verdict::from_bool(p.critical_points() == m * k),
        None,
        "a degree-m pullback of a fibration with n critical points has mn critical points",
        format!("{} = {m} x {k}", p.critical_points()),
    );
    if p.ut.is_some() {
        let ok = p.verify_peripherals().map_err(err)?;
        let images: BTreeSet<String> = p.peripheral_images().map_err(err)?.iter().map(|x| x.render()).collect();
        r.check(
            "conjugates",
            Verdict::from_bool(ok),
            Some("ut-model".into()),
            "each pulled-back puncture monodromy is a transversal conjugate of an original twist",
            format!("images {}", images.into_iter().collect::<Vec<_>>().join(", ")),
        );
    } else {
        r.check("conjugates", Verdict::Undecided, None, "pulled-back puncture monodromies", "no push model");
    }
    match p.h1_total_space() {
        Ok(h) => {
            r.note(format!("H1 of the pulled-back total space: {h}"));
        }
        Err(e) => {
            r.note(format!("H1 not computed: {e}"));
        }
    }
    if a.certify {
        let ut = p.ut.as_ref().ok_or("no push model to certify")?;
        let cert = certificate::certify(ut, ctx.samples, ctx.seed).map_err(err)?;
        certificate_checks(&mut r, &cert);
    }
    Ok(Output::Reports(vec![r]))
}

fn fibersum_cmd(a: &FibersumArgs, stdin: &mut dyn Read) -> CliResult<Output> {
    let f1 = load_factorization(Some(&a.first), stdin)?;
    let f2 = load_factorization(Some(&a.second), stdin)?;
    let gluing = match &a.gluing {
        Some(p) => {
            let g0 = f1.ut_model.as_ref().map_or(2, |m| m.g0);
            io::gluing_from_json(&read_path(Some(p), stdin)?.1, g0).map_err(err)?
        }
        None => fibration::Gluing::identity(),
    };
    let sum = fibration::fiber_sum(&f1, &f2, &gluing).map_err(err)?;
    if !a.seam {
        return Ok(Output::Data(io::factorization_to_json(&sum)));
    }
    let v = fibration::check_subfactorization(&sum, &fibration::seam_selection(&f1)).map_err(err)?;
    let mut r = Report::new("fibersum");
    r.value = Some(format!("base genus {}, {} critical points", sum.base_genus, sum.critical_points()));
    r.check(
        "seam",
        Verdict::from_bool(v.is_witness()),
        Some(v.engine.to_string()),
        "a proper subproduct equal to the identity with 1 <= 2m + n < 2h + l witnesses a fiber sum decomposition",
        format!("m = {}, n = {}, identity = {}, contiguous = {}", v.commutators, v.twists, v.identity, v.admissible),
    );
    Ok(Output::Reports(vec![r]))
}

fn build_cmd(b: &BuildCmd) -> CliResult<Output> {
    let f = match b {
        BuildCmd::Theorem1 { g } => builders::build_theorem1(*g),
        BuildCmd::Xn { g, n, d_class: None } => builders::build_xn(*g, *n),
        BuildCmd::Xn { g, n, d_class: Some(c) } => builders::build_xn_with_d(*g, *n, homology::H1Class::new(parse_list(c)?)),
        BuildCmd::Trivial { g, h, g0 } => builders::build_trivial_bundle(*g, *h, *g0),
        BuildCmd::Theorem3 { g, p, phi } => {
            let phi = match phi {
                Some(path) => Some(parse_phi(&std::fs::read_to_string(path).map_err(err)?, *g + 1)?),
                None => None,
            };
            let data = builders::build_theorem3(*g, *p, phi).map_err(err)?;
            return Ok(Output::Reports(vec![theorem3_report(&data)?]));
        }
    }
    .map_err(err)?;
    Ok(Output::Data(io::factorization_to_json(&f)))
}

fn parse_list(text: &str) -> CliResult<Vec<i64>> {
    text.split(',').map(|x| x.trim().parse::<i64>().map_err(err)).collect()
}

fn parse_phi(text: &str, n: usize) -> CliResult<GenMap> {
    let lines = text.lines().filter(|l| !l.trim().is_empty() && !l.trim().starts_with('#')).count();
    GenMap::parse(text, &Alphabet::surface(lines / 2), &Alphabet::raag(n), Target::Raag(n)).map_err(err)
}

fn theorem3_report(d: &Theorem3Data) -> CliResult<Report> {
    let n = d.g + 1;
    let mut r = Report::new("build theorem3");
    r.value = Some(format!("fiber genus {}, braid group on {} strands, p = {}", d.g, 2 * n - 1, d.p));
    let braid = Some("braid-induced".to_string());
    r.check("raag hom", Verdict::from_bool(d.raag_hom), braid.clone(), "adjacent vertices of the complement of the n-cycle map to commuting twists", "");
    r.check("non-edges", Verdict::from_bool(d.pattern_exact), braid.clone(), "non-adjacent vertices map to non-commuting twists", "");
    r.check("forgetful", Verdict::from_bool(d.forgetful), braid, "forgetting the even strands turns the map into the 4p-power map on n strands", "");
    let torelli = d.omega_torelli.iter().all(|&b| b);
    r.check(
        "omega torelli",
        Verdict::from_bool(torelli),
        Some("symplectic".into()),
        "squared twists about curves enclosing an odd number of points act trivially on homology",
        format!("{}/{} vertex images", d.omega_torelli.iter().filter(|&&b| b).count(), d.omega_torelli.len()),
    );
    if let Some(x) = d.xi_hom {
        r.check("xi hom", Verdict::from_bool(x), Some("raag".into()), "the iterated commutator map respects the RAAG relations", "");
    }
    match d.phi_valid {
        Some(ok) => {
            r.check("phi", Verdict::from_bool(ok), Some("raag".into()), "the supplied surface group map respects the surface relation", "");
            let mats = d.full_monodromy().map_err(err)?;
            let ok = mats.iter().all(|m| m.is_identity());
            r.check("full monodromy", Verdict::from_bool(ok), Some("symplectic".into()), "the bundle monodromy acts trivially on homology", format!("{} generators", mats.len()));
        }
        None => {
            r.note("full monodromy pending: supply a surface group map with --phi");
        }
    }
    Ok(r)
}

fn parse_points(text: &str) -> CliResult<BTreeSet<usize>> {
    text.split(',').map(|x| x.trim().parse::<usize>().map_err(err)).collect()
}

fn value_report(command: &str, value: String) -> Output {
    let mut r = Report::new(command);
    r.value = Some(value);
    Output::Reports(vec![r])
}

fn braid_cmd(b: &BraidCmd) -> CliResult<Output> {
    match b {
        BraidCmd::Equal { n, a, b } => {
            let (x, y) = (BraidWord::parse(*n, a).map_err(err)?, BraidWord::parse(*n, b).map_err(err)?);
            let eq = braid::braid_equal(&x, &y).map_err(err)?;
            let mut r = Report::new("braid equal");
            r.value = Some(if eq { "equal" } else { "not equal" }.into());
            r.check("equal", Verdict::from_bool(eq), Some("braid-induced".into()), "equal Artin actions on the free group", "");
            Ok(Output::Reports(vec![r]))
        }
        BraidCmd::Pure { n, word } => {
            let x = BraidWord::parse(*n, word).map_err(err)?;
            let pure = braid::is_pure(&x);
            let mut r = Report::new("braid pure");
            r.value = Some(format!("permutation {:?}", braid::permutation(&x)));
            r.check("pure", Verdict::from_bool(pure), None, "the induced permutation is trivial", "");
            Ok(Output::Reports(vec![r]))
        }
        BraidCmd::Delete { n, keep, word } => {
            let x = BraidWord::parse(*n, word).map_err(err)?;
            let y = braid::delete_strands(&x, &parse_points(keep)?).map_err(err)?;
            Ok(value_report("braid delete", y.display()))
        }
        BraidCmd::Twist { n, points, power, half } => {
            let c = MarkedCurve::from_points(*n, &parse_points(points)?).map_err(err)?;
            let t = if *half { braid::half_twist(&c) } else { braid::full_twist(&c) };
            Ok(value_report("braid twist", t.pow(*power).display()))
        }
        BraidCmd::Linking { n, word } => {
            let x = BraidWord::parse(*n, word).map_err(err)?;
            let l = braid::linking_numbers(&x).map_err(err)?;
            let rows: Vec<String> = l.iter().map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")).collect();
            Ok(value_report("braid linking", rows.join("\n")))
        }
    }
}

fn parse_word(text: &str, alphabet: &Alphabet) -> CliResult<Word> {
    let text = text.trim();
    if text.is_empty() || text == "1" {
        return Ok(Word::identity());
    }
    Word::parse(text, alphabet).map_err(err)
}

fn graph_for(n: usize, graph: &Option<String>) -> CliResult<CommGraph> {
    match graph {
        Some(g) => g.parse().map_err(err),
        None => raag::complement_cycle(n).map_err(err),
    }
}

fn raag_cmd(r: &RaagCmd) -> CliResult<Output> {
    match r {
        RaagCmd::Nf { n, graph, word } => {
            let graph = graph_for(*n, graph)?;
            let alphabet = Alphabet::raag(graph.vertices());
            let w = parse_word(word, &alphabet)?;
            Ok(value_report("raag nf", raag::raag_normal_form(&w, &graph).display(&alphabet).to_string()))
        }
        RaagCmd::HomCheck { map, source_n, graph, target, exact } => {
            let source = graph_for(*source_n, graph)?;
            let (kind, size) = target.split_once(':').ok_or("target must look like braid:9")?;
            let size: usize = size.parse().map_err(err)?;
            let (alphabet, tgt, oracle): (Alphabet, Target, Box<dyn EqualityOracle>) = match kind {
                "braid" => (Alphabet::braid(size), Target::Braid(size), Box::new(raag::BraidOracle { strands: size, budget: DEFAULT_BUDGET })),
                "raag" => (Alphabet::raag(size), Target::Raag(size), Box::new(raag::RaagOracle(raag::complement_cycle(size).map_err(err)?))),
                "ut" => (Alphabet::unit_tangent(size, 0), Target::UnitTangent(size), Box::new(raag::UtOracle(UtContext::new(size).map_err(err)?))),
                "surface" => (Alphabet::surface(size), Target::Surface(size), Box::new(raag::SurfaceOracle(SurfaceContext::new(size).map_err(err)?))),
                "omega" => (Alphabet::braid(2 * size + 1), Target::Braid(2 * size + 1), Box::new(raag::omega_oracle(size))),
                other => return Err(format!("unknown target kind `{other}`")),
            };
            let text = std::fs::read_to_string(map).map_err(err)?;
            let f = GenMap::parse(&text, &Alphabet::raag(source.vertices()), &alphabet, tgt).map_err(err)?;
            let hom = raag::check_raag_hom(&f, &source, oracle.as_ref()).map_err(err)?;
            let mut rep = Report::new("raag hom-check");
            rep.check("hom", Verdict::from_bool(hom), Some(kind.to_string()), "images of adjacent vertices commute", "");
            if *exact {
                let g = raag::commutation_graph(&f, source.vertices(), oracle.as_ref()).map_err(err)?;
                rep.check("exact", Verdict::from_bool(g == source), Some(kind.to_string()), "images of non-adjacent vertices do not commute", format!("commutation graph {g}"));
            }
            Ok(Output::Reports(vec![rep]))
        }
        RaagCmd::ForgetfulCheck { n, p } => {
            let ok = raag::check_forgetful_composition(*n, *p).map_err(err)?;
            let mut rep = Report::new("raag forgetful-check");
            rep.check("forgetful", Verdict::from_bool(ok), Some("braid-induced".into()), "forgetting the even strands of the twist map on 2n-1 strands gives the 4p-power map on n strands", "");
            Ok(Output::Reports(vec![rep]))
        }
    }
}

fn word_cmd(w: &WordCmd) -> CliResult<Output> {
    match w {
        WordCmd::Reduce { genus, word } => {
            let ctx = SurfaceContext::new(*genus).map_err(err)?;
            let alphabet = ctx.alphabet();
            let x = ctx.dehn_reduce(&parse_word(word, &alphabet)?).map_err(err)?;
            Ok(value_report("word reduce", x.display(&alphabet).to_string()))
        }
        WordCmd::UtReduce { g0, word } => {
            let (x, _) = fibration::parse_ut_word(word, *g0).map_err(err)?;
            let ctx = UtContext::new(*g0).map_err(err)?;
            Ok(value_report("word ut-reduce", ctx.reduce(&x).render()))
        }
    }
}
