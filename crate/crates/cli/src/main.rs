//! `monodromy` — exact homology computations for surface bundles over the
//! circle, driven by JSON monodromy specs.
//!
//! Exit codes: 0 when the command succeeded and every requested certificate
//! passed, 2 when a command ran but a certificate did not pass
//! (not-certified, failed checks, or a stored certificate that no longer
//! matches), 1 on operational errors (unreadable files, malformed specs,
//! validation failures).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use monodromy::certify::Verdict;
use monodromy::jsonio::bigint_vec;
use monodromy::{
    betti_one, build_extension, certify_pseudo_anosov, integral_h1, verify_extension,
    ExtensionDocument, ExtensionRequest, IntMatrix, MappingClass, PACertificate,
};

const TOOL: &str = "monodromy";
const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status for "ran fine, but a requested certificate did not pass".
const EXIT_UNCERTIFIED: u8 = 2;

#[derive(Parser)]
#[command(name = TOOL, version, about = "Exact first-homology invariants of surface bundles over the circle")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the machine-readable JSON report to stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Suppress the human-readable report (JSON output still prints).
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Betti number and torsion of the mapping torus of a monodromy.
    Betti {
        /// Monodromy spec file: {"genus", "word"?, "matrix"?}.
        #[arg(long)]
        spec: PathBuf,
    },
    /// Extend a monodromy to a higher-genus surface and certify the result.
    Extend {
        #[arg(long)]
        spec: PathBuf,
        /// Target genus (must exceed the spec's genus).
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::EqualBetti)]
        variant: VariantArg,
        /// Twist exponent for the one-handle block (genus difference 1).
        #[arg(long)]
        k: Option<u64>,
        /// Comma-separated twist multiplicities (genus difference >= 2).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mults: Option<Vec<i64>>,
        /// Output file for the extension document.
        #[arg(long)]
        out: PathBuf,
    },
    /// Pseudo-Anosov certificate for a monodromy.
    Certify {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Re-verify a saved extension document against fresh computations.
    Verify {
        /// Extension document produced by `extend --out`.
        #[arg(long)]
        extension: PathBuf,
    },
    /// Smith normal form of an integer matrix (JSON array of rows).
    Snf {
        #[arg(long)]
        matrix: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    #[value(name = "equal-betti")]
    EqualBetti,
    #[value(name = "naive")]
    Naive,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let output = Output {
        json: cli.json,
        quiet: cli.quiet,
    };
    match cli.command {
        Command::Betti { spec } => cmd_betti(&spec, output),
        Command::Extend {
            spec,
            genus,
            variant,
            k,
            mults,
            out,
        } => cmd_extend(&spec, genus, variant, k, mults, &out, output),
        Command::Certify { spec } => cmd_certify(&spec, output),
        Command::Verify { extension } => cmd_verify(&extension, output),
        Command::Snf { matrix } => cmd_snf(&matrix, output),
    }
}

#[derive(Clone, Copy)]
struct Output {
    json: bool,
    quiet: bool,
}

impl Output {
    fn emit<T: Serialize>(&self, report: &Report<T>, human: String) -> anyhow::Result<()> {
        if self.json {
            println!(
                "{}",
                serde_json::to_string_pretty(report).context("serializing report")?
            );
        }
        if !self.quiet && !self.json {
            print!("{human}");
        }
        Ok(())
    }
}

/// Deterministic report envelope: inputs echoed, results per command, tool
/// version. No timestamps, so identical inputs give identical bytes.
#[derive(Serialize)]
struct Report<T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    input: serde_json::Value,
    result: T,
}

fn load_spec(path: &PathBuf) -> anyhow::Result<MappingClass> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading monodromy spec {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing monodromy spec {}", path.display()))
}

fn cmd_betti(spec: &PathBuf, output: Output) -> anyhow::Result<ExitCode> {
    let f = load_spec(spec)?;
    let homology = integral_h1(&f).context("computing mapping-torus homology")?;

    #[derive(Serialize)]
    struct BettiResult {
        betti_one: usize,
        #[serde(with = "bigint_vec")]
        torsion: Vec<BigInt>,
    }
    let report = Report {
        tool: TOOL,
        version: VERSION,
        command: "betti",
        input: serde_json::to_value(&f)?,
        result: BettiResult {
            betti_one: homology.betti_one,
            torsion: homology.torsion.clone(),
        },
    };
    let human = format!(
        "mapping torus of a genus-{} monodromy\n  betti_one = {}\n  torsion   = {}\n  \
         convention: H_1 = coker(I - f_#) (+) Z; torsion lives in the cokernel\n",
        f.genus(),
        homology.betti_one,
        render_torsion(&homology.torsion),
    );
    output.emit(&report, human)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(spec: &PathBuf, output: Output) -> anyhow::Result<ExitCode> {
    let f = load_spec(spec)?;
    let certificate = certify_pseudo_anosov(&f);
    let report = Report {
        tool: TOOL,
        version: VERSION,
        command: "certify",
        input: serde_json::to_value(&f)?,
        result: &certificate,
    };
    output.emit(&report, render_certificate(&f, &certificate))?;
    Ok(match certificate.verdict {
        Verdict::CertifiedPseudoAnosov => ExitCode::SUCCESS,
        _ => ExitCode::from(EXIT_UNCERTIFIED),
    })
}

fn cmd_extend(
    spec: &PathBuf,
    genus: usize,
    variant: VariantArg,
    k: Option<u64>,
    mults: Option<Vec<i64>>,
    out: &PathBuf,
    output: Output,
) -> anyhow::Result<ExitCode> {
    let f_t = load_spec(spec)?;
    let request = match variant {
        VariantArg::EqualBetti => ExtensionRequest::EqualBetti {
            k,
            multiplicities: mults.clone(),
        },
        VariantArg::Naive => {
            anyhow::ensure!(
                k.is_none() && mults.is_none(),
                "--k and --mults do not apply to the naive variant"
            );
            ExtensionRequest::Naive
        }
    };
    let result = build_extension(&f_t, genus, &request).context("building the extension")?;
    let certificate = verify_extension(&result);
    let passed = certificate.claims_hold(&result.parameters);
    let doc = ExtensionDocument::new(result, certificate);
    fs::write(out, doc.to_json_string())
        .with_context(|| format!("writing extension document {}", out.display()))?;

    let betti_t = betti_one(&doc.result.f_t).context("betti of the input")?;
    let betti_s = betti_one(&doc.result.f_s).context("betti of the extension")?;
    let input = serde_json::json!({
        "spec": serde_json::to_value(&f_t)?,
        "genus": genus,
        "variant": doc.result.parameters.variant_name(),
    });
    let report = Report {
        tool: TOOL,
        version: VERSION,
        command: "extend",
        input,
        result: serde_json::to_value(&doc)?,
    };
    let human = format!(
        "extension genus {} -> genus {} ({})\n  betti_one: target = {}, extension = {}\n{}  document written to {}\n  verdict: {}\n",
        doc.result.g_t(),
        doc.result.g_s(),
        doc.result.parameters.variant_name(),
        betti_t,
        betti_s,
        render_extension_checks(&doc),
        out.display(),
        if passed { "all requested checks pass" } else { "CHECKS FAILED" },
    );
    output.emit(&report, human)?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_UNCERTIFIED)
    })
}

fn cmd_verify(extension: &PathBuf, output: Output) -> anyhow::Result<ExitCode> {
    let text = fs::read_to_string(extension)
        .with_context(|| format!("reading extension document {}", extension.display()))?;
    let doc = ExtensionDocument::from_json_str(&text)
        .with_context(|| format!("parsing extension document {}", extension.display()))?;
    let recomputed = verify_extension(&doc.result);
    let matches_stored = recomputed == doc.certificate;
    let passed = matches_stored && recomputed.claims_hold(&doc.result.parameters);

    #[derive(Serialize)]
    struct VerifyResult<'a> {
        certificate: &'a monodromy::ExtensionCertificate,
        matches_stored: bool,
        claims_hold: bool,
    }
    let input = serde_json::json!({
        "extension": extension.display().to_string(),
        "variant": doc.result.parameters.variant_name(),
        "g_t": doc.result.g_t(),
        "g_s": doc.result.g_s(),
    });
    let report = Report {
        tool: TOOL,
        version: VERSION,
        command: "verify",
        input,
        result: VerifyResult {
            certificate: &recomputed,
            matches_stored,
            claims_hold: recomputed.claims_hold(&doc.result.parameters),
        },
    };
    let human = format!(
        "re-verified {} ({}, genus {} -> {})\n{}  stored certificate {}\n  verdict: {}\n",
        extension.display(),
        doc.result.parameters.variant_name(),
        doc.result.g_t(),
        doc.result.g_s(),
        {
            let fresh = ExtensionDocument::new(doc.result.clone(), recomputed.clone());
            render_extension_checks(&fresh)
        },
        if matches_stored { "matches" } else { "DOES NOT MATCH" },
        if passed { "all requested checks pass" } else { "CHECKS FAILED" },
    );
    output.emit(&report, human)?;
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_UNCERTIFIED)
    })
}

fn cmd_snf(matrix: &PathBuf, output: Output) -> anyhow::Result<ExitCode> {
    let text = fs::read_to_string(matrix)
        .with_context(|| format!("reading matrix file {}", matrix.display()))?;
    let m: IntMatrix = serde_json::from_str(&text)
        .with_context(|| format!("parsing matrix file {}", matrix.display()))?;
    let form = m.smith_normal_form();

    #[derive(Serialize)]
    struct SnfResult {
        #[serde(with = "bigint_vec")]
        diagonal: Vec<BigInt>,
        rank: usize,
        left: IntMatrix,
        right: IntMatrix,
    }
    let report = Report {
        tool: TOOL,
        version: VERSION,
        command: "snf",
        input: serde_json::to_value(&m)?,
        result: SnfResult {
            diagonal: form.diagonal.clone(),
            rank: form.rank(),
            left: form.left.clone(),
            right: form.right.clone(),
        },
    };
    let human = format!(
        "smith normal form of a {}x{} matrix\n  diagonal = {}\n  rank     = {}\n",
        m.rows(),
        m.cols(),
        render_torsion(&form.diagonal),
        form.rank(),
    );
    output.emit(&report, human)?;
    Ok(ExitCode::SUCCESS)
}

fn render_torsion(values: &[BigInt]) -> String {
    if values.is_empty() {
        "(none)".to_string()
    } else {
        format!(
            "({})",
            values
                .iter()
                .map(BigInt::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )
    }
}

fn render_certificate(f: &MappingClass, cert: &PACertificate) -> String {
    let mut text = format!(
        "pseudo-Anosov certificate for a genus-{} monodromy\n  verdict: {}\n",
        f.genus(),
        verdict_name(cert.verdict),
    );
    for check in &cert.checks {
        text.push_str(&format!(
            "  [{}] {}: {}\n",
            if check.passed { "ok" } else { "--" },
            check.name,
            check.detail
        ));
    }
    if cert.one_sided {
        text.push_str(
            "  note: for genus >= 2 this test is one-sided; a failed check means\n  \
             \"undecided from homology\", not a refutation.\n",
        );
    }
    text
}

fn verdict_name(verdict: Verdict) -> &'static str {
    match verdict {
        Verdict::CertifiedPseudoAnosov => "certified-pA",
        Verdict::CertifiedNotPseudoAnosov => "certified-not-pA",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn render_extension_checks(doc: &ExtensionDocument) -> String {
    let c = &doc.certificate;
    let line = |name: &str, ok: bool| {
        format!("  [{}] {}\n", if ok { "ok" } else { "--" }, name)
    };
    let mut text = String::new();
    text.push_str(&line("block form f_s = diag(f_t, A)", c.block_form_ok));
    text.push_str(&line("f_s symplectic", c.symplectic_ok));
    text.push_str(&line("commuting square P f_s = f_t P", c.square_commutes_ok));
    text.push_str(&line("I - A nondegenerate", c.i_minus_a_nondegenerate));
    text.push_str(&line("equal first Betti numbers", c.betti_equal));
    text.push_str(&format!(
        "  [pa] verdict: {}\n",
        verdict_name(c.pa_certificate.verdict)
    ));
    text
}
