//! The `infostruct` command line.
//!
//! Exit codes: 0 on success, 1 when the input is well formed but has no
//! reduction, no felicitous reading or no valid comparison, 2 for malformed
//! input, missing files and unknown words.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::intonation::{self, merge_categorical, AnnotatedSentence, IntonationError, Role, SentenceMeaning};
use crate::lexicon::{cosine_flat, Lexicon, LexiconError};
use crate::pregroup::{parse_type, reduce, PregroupType, ReductionDiagram, ReductionError};
use crate::selfcheck;
use crate::tensor::{ComposeError, Tensor};
use crate::truth::{TruthError, World};

#[derive(Debug, Parser)]
#[command(name = "infostruct", version, about = "Pregroup reductions, tensor meanings and intonation")]
pub struct Cli {
    /// Lexicon file (distributional mode).
    #[arg(long, global = true, conflicts_with = "universe")]
    pub lexicon: Option<PathBuf>,
    /// Universe file (truth mode).
    #[arg(long, global = true)]
    pub universe: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Relative tolerance for reported equalities.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Also render each reduction as a diagram.
    #[arg(long, global = true, value_enum)]
    pub emit_diagram: Option<DiagramFormat>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DiagramFormat {
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a type sequence, or a sentence with --lexicon.
    Reduce {
        /// Types such as "n n.r s n.l n", or words, or an annotated sentence.
        input: String,
        #[arg(long, default_value = "s")]
        target: String,
    },
    /// Meaning of an annotated sentence such as "{T Mary likes} {R musicals}".
    Meaning { sentence: String },
    /// Cosine and distance between two sentence meanings.
    Compare { first: String, second: String },
    /// Answer a query such as "John likes {R Mary}" against a universe.
    Truth { query: String },
    /// Run the Frobenius, spider and snake-equation checks.
    Selfcheck,
}

/// Which model the invocation runs against.
#[derive(Debug, Clone, PartialEq)]
pub enum Mode {
    Plain,
    Distributional(PathBuf),
    Truth(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub format: Format,
    pub tolerance: f64,
    pub emit_diagram: Option<DiagramFormat>,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self, Failure> {
        let mode = match (&cli.lexicon, &cli.universe) {
            (Some(_), Some(_)) => return Err(Failure::input("--lexicon and --universe are mutually exclusive")),
            (Some(p), None) => Mode::Distributional(p.clone()),
            (None, Some(p)) => Mode::Truth(p.clone()),
            (None, None) => Mode::Plain,
        };
        if !(cli.tolerance.is_finite() && cli.tolerance >= 0.0) {
            return Err(Failure::input(format!("bad tolerance {}", cli.tolerance)));
        }
        Ok(RunConfig {
            mode,
            format: cli.format,
            tolerance: cli.tolerance,
            emit_diagram: cli.emit_diagram,
        })
    }

    fn lexicon(&self) -> Result<Lexicon, Failure> {
        match &self.mode {
            Mode::Distributional(path) => Ok(Lexicon::load(path)?.with_intonation()),
            _ => Err(Failure::input("this command needs --lexicon")),
        }
    }

    fn world(&self) -> Result<World, Failure> {
        match &self.mode {
            Mode::Truth(path) => Ok(World::load(path)?),
            _ => Err(Failure::input("this command needs --universe")),
        }
    }
}

/// A failed command: the message and its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn semantic(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<LexiconError> for Failure {
    fn from(e: LexiconError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<TruthError> for Failure {
    fn from(e: TruthError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::NoReduction { .. } => Failure::semantic(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

impl From<ComposeError> for Failure {
    fn from(e: ComposeError) -> Self {
        Failure::semantic(e.to_string())
    }
}

impl From<IntonationError> for Failure {
    fn from(e: IntonationError) -> Self {
        match e {
            IntonationError::Annotation(_) | IntonationError::Lexicon(_) | IntonationError::NotShared => {
                Failure::input(e.to_string())
            }
            _ => Failure::semantic(e.to_string()),
        }
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// report to `out`, diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let _ = out.write_all(report.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

/// Runs a parsed command line and returns the report text.
pub fn execute(cli: &Cli) -> Result<String, Failure> {
    let config = RunConfig::from_cli(cli)?;
    match &cli.command {
        Command::Reduce { input, target } => cmd_reduce(&config, input, target),
        Command::Meaning { sentence } => cmd_meaning(&config, sentence),
        Command::Compare { first, second } => cmd_compare(&config, first, second),
        Command::Truth { query } => cmd_truth(&config, query),
        Command::Selfcheck => cmd_selfcheck(&config),
    }
}

/// A float written with 17 significant digits, which reads back bitwise.
struct Num(f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(S::Error::custom(format!("non-finite value {}", self.0)));
        }
        RawValue::from_string(format!("{:.16e}", self.0))
            .map_err(S::Error::custom)?
            .serialize(s)
    }
}

#[derive(Serialize)]
struct TensorOut {
    shape: Vec<usize>,
    data: Vec<Num>,
}

impl From<&Tensor> for TensorOut {
    fn from(t: &Tensor) -> Self {
        TensorOut {
            shape: t.shape().to_vec(),
            data: t.data().iter().map(|&x| Num(x)).collect(),
        }
    }
}

#[derive(Serialize)]
struct DiagramOut {
    links: Vec<[usize; 2]>,
    survivors: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dot: Option<String>,
}

impl DiagramOut {
    fn new(diagram: &ReductionDiagram, types: &[PregroupType], config: &RunConfig) -> Self {
        let factors = PregroupType::flatten(types).factors;
        DiagramOut {
            links: diagram.links().iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
            survivors: diagram.survivors().iter().map(|&k| k + 1).collect(),
            dot: config.emit_diagram.map(|DiagramFormat::Dot| diagram.to_dot(&factors)),
        }
    }

    fn text(&self) -> String {
        let links: Vec<String> = self.links.iter().map(|[i, j]| format!("({i},{j})")).collect();
        let survivors: Vec<String> = self.survivors.iter().map(usize::to_string).collect();
        let links = if links.is_empty() { "none".to_owned() } else { links.join(" ") };
        let mut s = format!("links {links} survivors [{}]", survivors.join(", "));
        if let Some(dot) = &self.dot {
            s.push('\n');
            s.push_str(dot.trim_end());
        }
        s
    }
}

fn to_json(value: &impl Serialize) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure::semantic(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn type_texts(types: &[PregroupType]) -> Vec<String> {
    types.iter().map(ToString::to_string).collect()
}

fn tensor_text(t: &Tensor) -> String {
    let cells: Vec<String> = t.data().iter().map(|x| format!("{x}")).collect();
    format!("shape {:?} [{}]", t.shape(), cells.join(", "))
}

#[derive(Serialize)]
struct ReductionOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    role: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    words: Option<Vec<String>>,
    types: Vec<String>,
    target: String,
    reduction: DiagramOut,
}

#[derive(Serialize)]
struct ReduceReport {
    input: String,
    grammatical: bool,
    reductions: Vec<ReductionOut>,
}

pub fn cmd_reduce(config: &RunConfig, input: &str, target: &str) -> Result<String, Failure> {
    let target_ty = parse_type(target).map_err(|e| Failure::input(format!("bad target {target:?}: {e}")))?;
    let mut reductions = Vec::new();
    match &config.mode {
        Mode::Truth(_) => return Err(Failure::input("reduce takes --lexicon, not --universe")),
        Mode::Plain => {
            let ty = parse_type(input).map_err(|e| Failure::input(format!("bad type {input:?}: {e}")))?;
            let types = vec![ty];
            for diagram in reduce(&types, &target_ty)? {
                reductions.push(ReductionOut {
                    role: None,
                    words: None,
                    types: type_texts(&types),
                    target: target_ty.to_string(),
                    reduction: DiagramOut::new(&diagram, &types, config),
                });
            }
        }
        Mode::Distributional(_) => {
            let lexicon = config.lexicon()?;
            if input.contains(['{', '}']) {
                // each span must reach its role type; `target` does not apply
                let sentence = AnnotatedSentence::parse(input).map_err(|e| Failure::input(e.to_string()))?;
                let spans = intonation::type_spans(&sentence, &lexicon)?;
                for derivation in spans.iter().flatten() {
                    reductions.push(ReductionOut {
                        role: Some(derivation.role.name()),
                        words: Some(derivation.tokens.clone()),
                        types: type_texts(&derivation.types),
                        target: derivation.value.ty().to_string(),
                        reduction: DiagramOut::new(&derivation.diagram, &derivation.types, config),
                    });
                }
            } else {
                let words: Vec<&str> = input.split_whitespace().collect();
                if words.is_empty() {
                    return Err(Failure::input("empty sentence"));
                }
                let parses = lexicon.parses(&words, &target_ty)?;
                if parses.is_empty() {
                    return Err(ReductionError::NoReduction {
                        target: target_ty.pretty(),
                    }
                    .into());
                }
                for parse in parses {
                    reductions.push(ReductionOut {
                        role: None,
                        words: Some(words.iter().map(|w| w.to_string()).collect()),
                        types: type_texts(&parse.types),
                        target: target_ty.to_string(),
                        reduction: DiagramOut::new(&parse.diagram, &parse.types, config),
                    });
                }
            }
        }
    }
    let report = ReduceReport {
        input: input.to_owned(),
        grammatical: true,
        reductions,
    };
    match config.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = String::new();
            for r in &report.reductions {
                let head = match (&r.role, &r.words) {
                    (Some(role), Some(words)) => format!("{role} \"{}\": ", words.join(" ")),
                    _ => String::new(),
                };
                let _ = writeln!(s, "{head}{} -> {}", r.types.join(" | "), r.target);
                let _ = writeln!(s, "  {}", r.reduction.text().replace('\n', "\n  "));
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct SpanOut {
    role: &'static str,
    words: Vec<String>,
    types: Vec<String>,
    reduction: DiagramOut,
    #[serde(rename = "type")]
    ty: String,
    value: TensorOut,
}

#[derive(Serialize)]
struct AgreementOut {
    relative_distance: Num,
    within_tolerance: bool,
}

#[derive(Serialize)]
struct DerivationOut {
    pattern: &'static str,
    meaning: TensorOut,
    spans: Vec<SpanOut>,
    categorical: AgreementOut,
}

#[derive(Serialize)]
struct MeaningReport {
    sentence: String,
    derivations: Vec<DerivationOut>,
}

fn derivation_out(m: &SentenceMeaning, config: &RunConfig) -> Result<DerivationOut, Failure> {
    let parts: Vec<&Tensor> = m.span_tensors();
    let categorical = merge_categorical(m.pattern, &parts)?;
    let distance = m.tensor.relative_distance(&categorical);
    Ok(DerivationOut {
        pattern: m.pattern.tag(),
        meaning: (&m.tensor).into(),
        spans: m
            .spans
            .iter()
            .map(|s| SpanOut {
                role: s.role.name(),
                words: s.tokens.clone(),
                types: type_texts(&s.types),
                reduction: DiagramOut::new(&s.diagram, &s.types, config),
                ty: s.value.ty().to_string(),
                value: s.value.tensor().into(),
            })
            .collect(),
        categorical: AgreementOut {
            relative_distance: Num(distance),
            within_tolerance: distance <= config.tolerance,
        },
    })
}

pub fn cmd_meaning(config: &RunConfig, sentence: &str) -> Result<String, Failure> {
    let lexicon = config.lexicon()?;
    let annotated = AnnotatedSentence::parse(sentence).map_err(|e| Failure::input(e.to_string()))?;
    let all = intonation::meanings(&annotated, &lexicon)?;
    let derivations = all
        .iter()
        .map(|m| derivation_out(m, config))
        .collect::<Result<Vec<_>, _>>()?;
    let report = MeaningReport {
        sentence: annotated.to_string(),
        derivations,
    };
    match config.format {
        Format::Json => to_json(&report),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}", report.sentence);
            for (k, m) in all.iter().enumerate() {
                let _ = writeln!(s, "derivation {}: {}", k + 1, m.pattern);
                let _ = writeln!(s, "  meaning {}", tensor_text(&m.tensor));
                for (span, out) in m.spans.iter().zip(&report.derivations[k].spans) {
                    let _ = writeln!(
                        s,
                        "  {} \"{}\" : {} = {}",
                        span.role.name(),
                        span.tokens.join(" "),
                        span.value.ty().pretty(),
                        tensor_text(span.value.tensor())
                    );
                    let _ = writeln!(s, "    {}", out.reduction.text().replace('\n', "\n    "));
                }
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
struct CompareReport {
    first: String,
    second: String,
    first_pattern: &'static str,
    second_pattern: &'static str,
    order: usize,
    cosine: Num,
    distance: Num,
    equal: bool,
}

pub fn cmd_compare(config: &RunConfig, first: &str, second: &str) -> Result<String, Failure> {
    let lexicon = config.lexicon()?;
    let parse = |text: &str| AnnotatedSentence::parse(text).map_err(|e| Failure::input(e.to_string()));
    let (a, b) = (parse(first)?, parse(second)?);
    let ma = intonation::meaning(&a, &lexicon)?;
    let mb = intonation::meaning(&b, &lexicon)?;
    if ma.tensor.order() != mb.tensor.order() {
        return Err(Failure::semantic(format!(
            "cannot compare an order-{} meaning ({}) with an order-{} meaning ({}): they live in different spaces",
            ma.tensor.order(),
            ma.pattern,
            mb.tensor.order(),
            mb.pattern
        )));
    }
    let cosine = cosine_flat(&ma.tensor, &mb.tensor).map_err(|e| Failure::semantic(e.to_string()))?;
    let distance = ma.tensor.sub(&mb.tensor).map_err(|e| Failure::semantic(e.to_string()))?.norm();
    let report = CompareReport {
        first: a.to_string(),
        second: b.to_string(),
        first_pattern: ma.pattern.tag(),
        second_pattern: mb.pattern.tag(),
        order: ma.tensor.order(),
        cosine: Num(cosine),
        distance: Num(distance),
        equal: ma.tensor.approx_eq(&mb.tensor, config.tolerance),
    };
    match config.format {
        Format::Json => to_json(&report),
        Format::Text => Ok(format!(
            "cosine {cosine}\ndistance {distance}\nequal within {:e}: {}\n",
            config.tolerance, report.equal
        )),
    }
}

#[derive(Serialize)]
struct TruthReport {
    query: String,
    subject: String,
    relation: String,
    rheme: String,
    theme: TensorOut,
    alternatives: Vec<String>,
    membership: u8,
    intersection: TensorOut,
    answer: Vec<String>,
}

fn set_text(names: &[String]) -> String {
    if names.is_empty() {
        "∅".to_owned()
    } else {
        format!("{{{}}}", names.join(", "))
    }
}

pub fn cmd_truth(config: &RunConfig, query: &str) -> Result<String, Failure> {
    let world = config.world()?;
    let sentence = AnnotatedSentence::parse(query).map_err(|e| Failure::input(e.to_string()))?;
    let (subject, relation, rheme) = match sentence.spans() {
        [t, r] if t.role == Role::Theme && r.role == Role::Rheme && t.tokens.len() == 2 && r.tokens.len() == 1 => {
            (&t.tokens[0], &t.tokens[1], &r.tokens[0])
        }
        _ => {
            return Err(Failure::input(format!(
                "expected a query like \"John likes {{R Mary}}\", got {query:?}"
            )))
        }
    };
    let answer = world.answer(subject, relation, rheme)?;
    let report = TruthReport {
        query: sentence.to_string(),
        subject: subject.clone(),
        relation: relation.clone(),
        rheme: rheme.clone(),
        theme: (&answer.theme).into(),
        alternatives: answer.alternatives.clone(),
        membership: answer.member,
        intersection: (&answer.vector).into(),
        answer: answer.answer.clone(),
    };
    match config.format {
        Format::Json => to_json(&report),
        Format::Text => Ok(format!(
            "{}\nmembership {}\nalternatives {}\n",
            set_text(&answer.answer),
            answer.member,
            set_text(&answer.alternatives)
        )),
    }
}

pub fn cmd_selfcheck(config: &RunConfig) -> Result<String, Failure> {
    let checks = selfcheck::run_all(config.tolerance.max(1e-12));
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let report = match config.format {
        Format::Json => to_json(&checks)?,
        Format::Text => checks
            .iter()
            .map(|c| format!("{} {}: {}\n", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail))
            .collect(),
    };
    if failed.is_empty() {
        Ok(report)
    } else {
        Err(Failure::semantic(format!("{report}failed: {}", failed.join(", "))))
    }
}
