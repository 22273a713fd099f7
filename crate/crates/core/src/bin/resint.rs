//! Command line front end.
//!
//! Exit codes: 0 on success, 1 when inputs are malformed or a stated
//! hypothesis fails, 2 when a computation contradicts an expected value
//! (a table comparison with differences, homology where exactness was
//! claimed, a power regularity off its predicted value).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use resint::bipoly::{Bidegree, BiPoly, RingDims, RingSpec};
use resint::bkm::{ab_max_sequences, bkm_betti_table, bkm_shifts};
use resint::diagonal::{
    cm_certificate, depth_lower_bound, koszul_certificate, quotient_diag_hilbert,
    shifted_diag_is_cm, shifted_diag_reg, DiagonalSpec, Verdict,
};
use resint::en::{eagon_northcott, LinearMatrixY};
use resint::field::{Field, FieldSpec, Fp, Rationals, DEFAULT_PRIME};
use resint::formats::{
    betti_rows, ideal_from_file, phi_from_file, phi_to_file, presentation_from_file,
    read_json_file, BettiRow, IdealFile, MatrixFile, RingHeader,
};
use resint::freecomplex::{ExactnessReport, FreeComplexDescriptor};
use resint::oracle::TorComputer;
use resint::rees::{rees_model, romer_regularity_bound, ReesCertificates};
use resint::Error;

#[derive(Parser)]
#[command(
    name = "resint",
    version,
    about = "Exact bigraded Betti data, diagonal certificates, and Rees algebra \
             reports for ideals built from matrices of linear forms"
)]
struct Cli {
    /// Coefficient field: a prime, or "Q" for the rationals. Overrides the
    /// field declared in input files.
    #[arg(long, global = true)]
    field: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Seed for --random-phi.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form resolution shifts and Betti table for the quotient by
    /// the pairing forms plus maximal minors of a generic n x m matrix.
    Bkm(BkmArgs),
    /// Build the minor resolution of a y-linear matrix and optionally check
    /// its exactness through a degree window.
    En(EnArgs),
    /// Recompute a Betti window directly from ideal generators.
    Oracle(OracleArgs),
    /// Full report for the Rees algebra of the ideal presented by a matrix
    /// of x-linear forms.
    Rees(ReesArgs),
    /// Diagonal subalgebra certificates from the closed-form shift data.
    Diag(DiagArgs),
    /// The x-degree strand of the Koszul complex on the pairing forms of a
    /// y-linear matrix.
    Strand(StrandArgs),
}

#[derive(Args)]
struct BkmArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Number of y-variables; enables diagonal certificates together with
    /// --c and --e.
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    c: Option<i64>,
    #[arg(long)]
    e: Option<i64>,
    /// Krull dimension of the diagonal quotient, if known; enables the
    /// Cohen-Macaulay verdict.
    #[arg(long)]
    dim: Option<i64>,
}

#[derive(Args)]
struct EnArgs {
    /// Matrix file for the y-linear matrix.
    #[arg(long, conflicts_with = "random_phi", required_unless_present = "random_phi")]
    phi: Option<PathBuf>,
    /// Generate a random y-linear matrix instead: "n,m,p".
    #[arg(long, value_name = "N,M,P")]
    random_phi: Option<String>,
    /// Check exactness in positions >= 1 through this total degree.
    #[arg(long)]
    check_through: Option<i64>,
}

#[derive(Args)]
struct OracleArgs {
    /// Ideal file.
    #[arg(long)]
    ideal: PathBuf,
    #[arg(long)]
    i_max: usize,
    #[arg(long)]
    a_max: i64,
    #[arg(long)]
    b_max: i64,
    /// Compare against the closed-form table for these parameters: "n,m".
    #[arg(long, value_name = "N,M")]
    expect_bkm: Option<String>,
}

#[derive(Args)]
struct ReesArgs {
    /// Presentation matrix file (p rows of x-linear forms).
    #[arg(long)]
    presentation: PathBuf,
    #[arg(long)]
    c: i64,
    #[arg(long)]
    e: i64,
    /// Verify power regularity against its predicted value for s = 1..=S.
    #[arg(long)]
    powers: Option<usize>,
    /// Also check exactness of the minor resolution through this degree.
    #[arg(long)]
    check_through: Option<i64>,
}

#[derive(Args)]
struct DiagArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    c: i64,
    #[arg(long)]
    e: i64,
    /// Krull dimension of the diagonal quotient, if known.
    #[arg(long)]
    dim: Option<i64>,
    /// Also list Hilbert function values of the diagonal quotient for
    /// steps 0..=T.
    #[arg(long, value_name = "T")]
    hilbert_through: Option<i64>,
}

#[derive(Args)]
struct StrandArgs {
    /// Matrix file for the y-linear matrix.
    #[arg(long)]
    phi: PathBuf,
    #[arg(long)]
    x_degree: i64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::IdentityCheck(_)
                | Error::ComposeNonzero { .. }
                | Error::NegativeDimension(_) => 2,
                _ => 1,
            })
        }
    }
}

fn run(cli: &Cli) -> resint::Result<u8> {
    match &cli.command {
        Command::Bkm(args) => cmd_bkm(args, cli.format),
        Command::En(args) => dispatch_en(args, cli),
        Command::Oracle(args) => dispatch_oracle(args, cli),
        Command::Rees(args) => dispatch_rees(args, cli),
        Command::Diag(args) => cmd_diag(args, cli.format),
        Command::Strand(args) => dispatch_strand(args, cli),
    }
}

/// The field for a file-backed command: the --field flag wins, otherwise
/// whatever the file declares.
fn effective_spec(declared: FieldSpec, flag: &Option<String>) -> resint::Result<FieldSpec> {
    match flag {
        None => Ok(declared),
        Some(s) => FieldSpec::parse(s),
    }
}

fn emit<T: Serialize>(format: OutputFormat, report: &T, table: String) -> resint::Result<()> {
    match format {
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(report)?),
        OutputFormat::Table => print!("{table}"),
    }
    Ok(())
}

/// Column-aligned text rows, two spaces between columns.
fn aligned(header: &[&str], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width = vec![0usize; cols];
    for (c, h) in header.iter().enumerate() {
        width[c] = h.len();
    }
    for row in rows {
        for (c, cell) in row.iter().enumerate() {
            width[c] = width[c].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut push_row = |cells: Vec<String>| {
        let line: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = width[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    push_row(header.iter().map(|s| s.to_string()).collect());
    for row in rows {
        push_row(row.clone());
    }
    out
}

#[derive(Serialize)]
struct ShiftCount {
    a: i64,
    b: i64,
    mult: u64,
}

fn shift_counts(shifts: &[Bidegree]) -> Vec<ShiftCount> {
    let mut counts: BTreeMap<Bidegree, u64> = BTreeMap::new();
    for &s in shifts {
        *counts.entry(s).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(d, mult)| ShiftCount { a: d.a, b: d.b, mult })
        .collect()
}

fn shift_counts_text(counts: &[ShiftCount]) -> String {
    counts
        .iter()
        .map(|s| {
            let base = format!("S({},{})", -s.a, -s.b);
            if s.mult == 1 {
                base
            } else {
                format!("{base}^{}", s.mult)
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Serialize)]
struct TermReport {
    position: usize,
    rank: usize,
    shifts: Vec<ShiftCount>,
}

fn term_reports<F: Field>(complex: &FreeComplexDescriptor<F>) -> Vec<TermReport> {
    complex
        .terms()
        .iter()
        .enumerate()
        .map(|(position, t)| TermReport {
            position,
            rank: t.rank(),
            shifts: shift_counts(&t.shifts),
        })
        .collect()
}

fn betti_rows_text(rows: &[BettiRow]) -> String {
    aligned(
        &["i", "a", "b", "mult"],
        &rows
            .iter()
            .map(|r| {
                vec![
                    r.i.to_string(),
                    r.a.to_string(),
                    r.b.to_string(),
                    r.mult.to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    )
}

// ---------------------------------------------------------------- bkm

#[derive(Serialize)]
struct BkmReport {
    n: usize,
    m: usize,
    positions: Vec<TermReport>,
    betti: Vec<BettiRow>,
    regularity: Bidegree,
    a_max: Vec<i64>,
    b_max: Vec<i64>,
    diagonal: Option<DiagReport>,
}

fn cmd_bkm(args: &BkmArgs, format: OutputFormat) -> resint::Result<u8> {
    let shifts = bkm_shifts(args.n, args.m)?;
    let table = shifts.to_betti_table();
    let (a_max, b_max) = ab_max_sequences(args.n, args.m)?;
    let diagonal = match (args.p, args.c, args.e) {
        (None, None, None) => None,
        (Some(p), Some(c), Some(e)) => {
            Some(diagonal_report(args.n, args.m, p, c, e, args.dim)?)
        }
        _ => {
            return Err(Error::OutOfRange(
                "certificates need --p, --c, and --e together".into(),
            ))
        }
    };
    let report = BkmReport {
        n: args.n,
        m: args.m,
        positions: (0..=shifts.m)
            .map(|i| TermReport {
                position: i,
                rank: shifts.rank_at(i) as usize,
                shifts: shift_counts(&shifts.shifts_at(i)),
            })
            .collect(),
        betti: betti_rows(&table),
        regularity: table.reg_xy(),
        a_max,
        b_max,
        diagonal,
    };
    let mut text = format!("resolution shifts for n = {}, m = {}\n", report.n, report.m);
    for t in &report.positions {
        text.push_str(&format!(
            "  position {}: rank {}  {}\n",
            t.position,
            t.rank,
            shift_counts_text(&t.shifts)
        ));
    }
    text.push_str(&format!(
        "regularity ({}, {})\n",
        report.regularity.a, report.regularity.b
    ));
    text.push_str(&format!("a_max {:?}\nb_max {:?}\n", report.a_max, report.b_max));
    text.push_str(&betti_rows_text(&report.betti));
    if let Some(d) = &report.diagonal {
        text.push_str(&diag_text(d));
    }
    emit(format, &report, text)?;
    Ok(0)
}

// ---------------------------------------------------------------- diag

#[derive(Serialize)]
struct CertificateOut {
    verdict: Verdict,
    bound: Option<i64>,
    hypotheses: Vec<String>,
}

#[derive(Serialize)]
struct PerShiftDiag {
    i: usize,
    a: i64,
    b: i64,
    mult: u64,
    cm: bool,
    reg: i64,
}

#[derive(Serialize)]
struct DiagReport {
    n: usize,
    m: usize,
    p: usize,
    c: i64,
    e: i64,
    per_shift: Vec<PerShiftDiag>,
    cm: CertificateOut,
    koszul: CertificateOut,
    meets_e_threshold: bool,
    hilbert: Option<Vec<u64>>,
}

fn diagonal_report(
    n: usize,
    m: usize,
    p: usize,
    c: i64,
    e: i64,
    dim: Option<i64>,
) -> resint::Result<DiagReport> {
    let shifts = bkm_shifts(n, m)?;
    let dims = RingDims::new(n, p)?;
    let diag = DiagonalSpec::new(c, e)?;
    let per_shift = shifts
        .by_position
        .iter()
        .enumerate()
        .flat_map(|(i, at)| {
            at.iter().map(move |(&d, &mult)| PerShiftDiag {
                i,
                a: d.a,
                b: d.b,
                mult,
                cm: shifted_diag_is_cm(dims, d, diag),
                reg: shifted_diag_reg(d, diag),
            })
        })
        .collect();
    let mut cm_hypotheses = vec![
        "the quotient is resolved by the closed-form complex for these parameters".to_string(),
    ];
    let cm = match dim {
        Some(dim_value) => {
            cm_hypotheses.push("the dimension value is supplied, not computed".to_string());
            let cert = cm_certificate(dim_value, &shifts, diag, dims);
            CertificateOut {
                verdict: cert.verdict,
                bound: cert.depth_bound,
                hypotheses: cm_hypotheses,
            }
        }
        None => {
            let bound = depth_lower_bound(&shifts, diag, dims).ok().map(|d| d.bound);
            CertificateOut {
                verdict: Verdict::Inconclusive {
                    reason: "no dimension value supplied (--dim)".into(),
                },
                bound,
                hypotheses: cm_hypotheses,
            }
        }
    };
    let k = koszul_certificate(n, m, diag)?;
    let hilbert = None;
    Ok(DiagReport {
        n,
        m,
        p,
        c,
        e,
        per_shift,
        cm,
        koszul: CertificateOut {
            verdict: k.verdict,
            bound: Some(k.slack),
            hypotheses: vec![
                "regularity slack computed from the closed-form shift maxima".to_string(),
            ],
        },
        meets_e_threshold: k.meets_e_threshold,
        hilbert,
    })
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Certified => "certified".to_string(),
        Verdict::Inconclusive { reason } => format!("inconclusive ({reason})"),
    }
}

fn diag_text(d: &DiagReport) -> String {
    let mut text = format!(
        "diagonal (c, e) = ({}, {}) over n = {}, m = {}, p = {}\n",
        d.c, d.e, d.n, d.m, d.p
    );
    text.push_str(&aligned(
        &["i", "a", "b", "mult", "cm", "reg"],
        &d.per_shift
            .iter()
            .map(|s| {
                vec![
                    s.i.to_string(),
                    s.a.to_string(),
                    s.b.to_string(),
                    s.mult.to_string(),
                    s.cm.to_string(),
                    s.reg.to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    ));
    text.push_str(&format!(
        "cohen-macaulay: {}{}\n",
        verdict_text(&d.cm.verdict),
        d.cm
            .bound
            .map(|b| format!(", depth bound {b}"))
            .unwrap_or_default()
    ));
    text.push_str(&format!(
        "koszul: {}, regularity slack {}, e threshold met: {}\n",
        verdict_text(&d.koszul.verdict),
        d.koszul.bound.unwrap_or_default(),
        d.meets_e_threshold
    ));
    if let Some(h) = &d.hilbert {
        text.push_str(&format!("hilbert values {h:?}\n"));
    }
    text
}

fn cmd_diag(args: &DiagArgs, format: OutputFormat) -> resint::Result<u8> {
    let mut report = diagonal_report(args.n, args.m, args.p, args.c, args.e, args.dim)?;
    if let Some(t) = args.hilbert_through {
        let shifts = bkm_shifts(args.n, args.m)?;
        let dims = RingDims::new(args.n, args.p)?;
        let diag = DiagonalSpec::new(args.c, args.e)?;
        let values = (0..=t.max(0))
            .map(|i| quotient_diag_hilbert(&shifts, dims, diag, i))
            .collect::<resint::Result<Vec<u64>>>()?;
        report.hilbert = Some(values);
    }
    let text = diag_text(&report);
    emit(format, &report, text)?;
    Ok(0)
}

// ---------------------------------------------------------------- en

#[derive(Serialize)]
struct MinorReport {
    cols: Vec<usize>,
    poly: String,
}

#[derive(Serialize)]
struct EnReport {
    ring: RingHeader,
    rows: usize,
    cols: usize,
    terms: Vec<TermReport>,
    minors: Vec<MinorReport>,
    compose_zero: bool,
    generated_phi: Option<MatrixFile>,
    exactness: Option<ExactnessReport>,
}

fn dispatch_en(args: &EnArgs, cli: &Cli) -> resint::Result<u8> {
    let declared = match &args.phi {
        Some(path) => read_json_file::<MatrixFile>(path)?.field,
        None => FieldSpec::Prime(DEFAULT_PRIME),
    };
    match effective_spec(declared, &cli.field)? {
        FieldSpec::Prime(q) => cmd_en(args, cli, Fp::new(q)?),
        FieldSpec::Rational => cmd_en(args, cli, Rationals),
    }
}

fn load_or_random_phi<F: Field>(
    args: &EnArgs,
    cli: &Cli,
    field: F,
) -> resint::Result<(LinearMatrixY<F>, Option<MatrixFile>)> {
    match (&args.phi, &args.random_phi) {
        (Some(path), None) => {
            let mut file: MatrixFile = read_json_file(path)?;
            file.field = field.spec();
            Ok((phi_from_file(&file, field)?, None))
        }
        (None, Some(spec)) => {
            let phi = random_phi(spec, cli.seed, field)?;
            let echo = phi_to_file(&phi);
            Ok((phi, Some(echo)))
        }
        _ => Err(Error::OutOfRange(
            "exactly one of --phi and --random-phi must be given".into(),
        )),
    }
}

fn cmd_en<F: Field>(args: &EnArgs, cli: &Cli, field: F) -> resint::Result<u8> {
    let (phi, generated_phi) = load_or_random_phi(args, cli, field)?;
    let en = eagon_northcott(&phi)?;
    let exactness = match args.check_through {
        None => None,
        Some(d) => {
            if d < 0 {
                return Err(Error::OutOfRange(format!(
                    "--check-through must be nonnegative, got {d}"
                )));
            }
            let positions: Vec<usize> = (1..en.complex.len()).collect();
            Some(en.complex.exactness_report(d, &positions)?)
        }
    };
    let report = EnReport {
        ring: RingHeader::of(phi.ring()),
        rows: phi.rows(),
        cols: phi.cols(),
        terms: term_reports(&en.complex),
        minors: en
            .minors
            .iter()
            .map(|(cols, poly)| MinorReport {
                cols: cols.iter().map(|c| c + 1).collect(),
                poly: poly.to_string(),
            })
            .collect(),
        compose_zero: true,
        generated_phi,
        exactness,
    };
    let mut text = format!(
        "minor resolution of a {} x {} matrix\n",
        report.rows, report.cols
    );
    for t in &report.terms {
        text.push_str(&format!(
            "  position {}: rank {}  {}\n",
            t.position,
            t.rank,
            shift_counts_text(&t.shifts)
        ));
    }
    text.push_str("maximal minors:\n");
    for m in &report.minors {
        text.push_str(&format!("  cols {:?}: {}\n", m.cols, m.poly));
    }
    text.push_str("differentials compose to zero\n");
    let mut code = 0;
    if let Some(rep) = &report.exactness {
        if rep.nonzero.is_empty() {
            text.push_str(&format!(
                "exact in positions >= 1 through total degree {}\n",
                rep.max_total_degree
            ));
        } else {
            let first = &rep.nonzero[0];
            text.push_str(&format!(
                "homology of dimension {} at position {} in bidegree ({}, {})\n",
                first.dim, first.position, first.bidegree.a, first.bidegree.b
            ));
            code = 2;
        }
    }
    emit(cli.format, &report, text)?;
    Ok(code)
}

// ---------------------------------------------------------------- oracle

#[derive(Serialize)]
struct DiffRow {
    i: usize,
    a: i64,
    b: i64,
    computed: u64,
    expected: u64,
}

#[derive(Serialize)]
struct ComparisonReport {
    n: usize,
    m: usize,
    matches: bool,
    differences: Vec<DiffRow>,
}

#[derive(Serialize)]
struct OracleReport {
    ring: RingHeader,
    i_max: usize,
    a_max: i64,
    b_max: i64,
    betti: Vec<BettiRow>,
    regularity: Bidegree,
    comparison: Option<ComparisonReport>,
}

fn parse_pair(text: &str, what: &str) -> resint::Result<(usize, usize)> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("{what} expects \"n,m\", got {text:?}")));
    }
    let n = parts[0]
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("{what}: {e}")))?;
    let m = parts[1]
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("{what}: {e}")))?;
    Ok((n, m))
}

fn dispatch_oracle(args: &OracleArgs, cli: &Cli) -> resint::Result<u8> {
    let file: IdealFile = read_json_file(&args.ideal)?;
    match effective_spec(file.ring.field, &cli.field)? {
        FieldSpec::Prime(q) => cmd_oracle(args, cli, file, Fp::new(q)?),
        FieldSpec::Rational => cmd_oracle(args, cli, file, Rationals),
    }
}

fn cmd_oracle<F: Field>(
    args: &OracleArgs,
    cli: &Cli,
    mut file: IdealFile,
    field: F,
) -> resint::Result<u8> {
    file.ring.field = field.spec();
    let ideal = ideal_from_file(&file, field)?;
    let tor = TorComputer::bigraded(ideal, args.a_max, args.b_max)?;
    let table = tor.betti_window(args.i_max)?;
    let comparison = match &args.expect_bkm {
        None => None,
        Some(spec) => {
            let (n, m) = parse_pair(spec, "--expect-bkm")?;
            let expected = bkm_betti_table(n, m)?.window(args.i_max, args.a_max, args.b_max);
            let differences: Vec<DiffRow> = table
                .diff(&expected)
                .into_iter()
                .map(|(i, d, computed, expected)| DiffRow {
                    i,
                    a: d.a,
                    b: d.b,
                    computed,
                    expected,
                })
                .collect();
            Some(ComparisonReport {
                n,
                m,
                matches: differences.is_empty(),
                differences,
            })
        }
    };
    let report = OracleReport {
        ring: file.ring,
        i_max: args.i_max,
        a_max: args.a_max,
        b_max: args.b_max,
        betti: betti_rows(&table),
        regularity: table.reg_xy(),
        comparison,
    };
    let mut text = format!(
        "betti window i <= {}, a <= {}, b <= {}\n",
        report.i_max, report.a_max, report.b_max
    );
    text.push_str(&betti_rows_text(&report.betti));
    text.push_str(&format!(
        "regularity in window ({}, {})\n",
        report.regularity.a, report.regularity.b
    ));
    let mut code = 0;
    if let Some(cmp) = &report.comparison {
        if cmp.matches {
            text.push_str(&format!(
                "matches the closed-form table for n = {}, m = {}\n",
                cmp.n, cmp.m
            ));
        } else {
            let first = &cmp.differences[0];
            text.push_str(&format!(
                "differs from the closed-form table for n = {}, m = {}: first at \
                 i = {}, ({}, {}): computed {}, expected {}\n",
                cmp.n, cmp.m, first.i, first.a, first.b, first.computed, first.expected
            ));
            code = 2;
        }
    }
    emit(cli.format, &report, text)?;
    Ok(code)
}

// ---------------------------------------------------------------- rees

#[derive(Serialize)]
struct PowerReport {
    s: usize,
    degree_bound: i64,
    regularity: Option<i64>,
    matches_bound: Option<bool>,
}

#[derive(Serialize)]
struct ReesReport {
    ring: RingHeader,
    phi: MatrixFile,
    generators: Vec<String>,
    ideal_generators: Vec<String>,
    assumptions: Vec<String>,
    exactness: Option<ExactnessReport>,
    certificates: ReesCertificates,
    powers: Vec<PowerReport>,
}

fn dispatch_rees(args: &ReesArgs, cli: &Cli) -> resint::Result<u8> {
    let file: MatrixFile = read_json_file(&args.presentation)?;
    match effective_spec(file.field, &cli.field)? {
        FieldSpec::Prime(q) => cmd_rees(args, cli, file, Fp::new(q)?),
        FieldSpec::Rational => cmd_rees(args, cli, file, Rationals),
    }
}

fn cmd_rees<F: Field>(
    args: &ReesArgs,
    cli: &Cli,
    mut file: MatrixFile,
    field: F,
) -> resint::Result<u8> {
    file.field = field.spec();
    let pres = presentation_from_file(&file, field)?;
    let model = rees_model(&pres, args.check_through)?;
    let diag = DiagonalSpec::new(args.c, args.e)?;
    let certificates = model.certificates(diag)?;
    let p = model.ring().p;
    let n = model.ring().n;
    let s_reg = args.powers.unwrap_or(0);
    let mut powers = Vec::new();
    let mut code = 0;
    for s in 1..=s_reg.max(2) {
        let degree_bound = romer_regularity_bound(s as i64, p);
        let (regularity, matches_bound) = if s <= s_reg {
            let reg = model.power_regularity(s, n, degree_bound + n as i64 + 1)?;
            if reg != degree_bound {
                code = 2;
            }
            (Some(reg), Some(reg == degree_bound))
        } else {
            (None, None)
        };
        powers.push(PowerReport {
            s,
            degree_bound,
            regularity,
            matches_bound,
        });
    }
    let report = ReesReport {
        ring: RingHeader::of(model.ring()),
        phi: phi_to_file(&model.phi),
        generators: model.generators.iter().map(BiPoly::to_string).collect(),
        ideal_generators: model.ideal.gens().iter().map(BiPoly::to_string).collect(),
        assumptions: model.report.assumptions.clone(),
        exactness: model.report.exactness.clone(),
        certificates,
        powers,
    };
    let mut text = format!(
        "rees algebra of the ideal presented by a {} x {} matrix over {} x-variables\n",
        p,
        file.matrix.cols,
        n
    );
    text.push_str(&format!("ideal generators ({}):\n", report.generators.len()));
    for g in &report.generators {
        text.push_str(&format!("  {g}\n"));
    }
    text.push_str(&format!(
        "defining ideal of the bigraded model: {} generators\n",
        report.ideal_generators.len()
    ));
    text.push_str("assumptions:\n");
    for a in &report.assumptions {
        text.push_str(&format!("  {a}\n"));
    }
    if let Some(rep) = &report.exactness {
        text.push_str(&format!(
            "minor resolution exact in positions >= 1 through total degree {}\n",
            rep.max_total_degree
        ));
    }
    text.push_str(&format!(
        "diagonal ({}, {}): dimension {}, cohen-macaulay {}, threshold c > {}, koszul {}\n",
        args.c,
        args.e,
        report.certificates.dim,
        verdict_text(&report.certificates.cm),
        report.certificates.cm_threshold,
        verdict_text(&report.certificates.koszul.verdict),
    ));
    text.push_str(&aligned(
        &["s", "degree bound", "regularity", "matches"],
        &report
            .powers
            .iter()
            .map(|p| {
                vec![
                    p.s.to_string(),
                    p.degree_bound.to_string(),
                    p.regularity.map_or("-".into(), |r| r.to_string()),
                    p.matches_bound.map_or("-".into(), |m| m.to_string()),
                ]
            })
            .collect::<Vec<_>>(),
    ));
    emit(cli.format, &report, text)?;
    Ok(code)
}

// ---------------------------------------------------------------- strand

#[derive(Serialize)]
struct LabelReport {
    origin: usize,
    monomial: String,
}

#[derive(Serialize)]
struct StrandReport {
    ring: RingHeader,
    x_degree: i64,
    terms: Vec<TermReport>,
    labels: Vec<Vec<LabelReport>>,
    differentials: Vec<Vec<Vec<String>>>,
}

fn dispatch_strand(args: &StrandArgs, cli: &Cli) -> resint::Result<u8> {
    let file: MatrixFile = read_json_file(&args.phi)?;
    match effective_spec(file.field, &cli.field)? {
        FieldSpec::Prime(q) => cmd_strand(args, cli, file, Fp::new(q)?),
        FieldSpec::Rational => cmd_strand(args, cli, file, Rationals),
    }
}

fn cmd_strand<F: Field>(
    args: &StrandArgs,
    cli: &Cli,
    mut file: MatrixFile,
    field: F,
) -> resint::Result<u8> {
    file.field = field.spec();
    let phi = phi_from_file(&file, field)?;
    let koszul = FreeComplexDescriptor::koszul(phi.ring(), &phi.z_sequence())?;
    let (strand, labels) = koszul.x_strand_labeled(args.x_degree)?;
    let differentials = (1..strand.len())
        .map(|k| {
            let d = strand.differential(k).expect("interior differential");
            (0..d.rows())
                .map(|r| (0..d.cols()).map(|c| d.entry(r, c).to_string()).collect())
                .collect()
        })
        .collect();
    let report = StrandReport {
        ring: RingHeader::of(phi.ring()),
        x_degree: args.x_degree,
        terms: term_reports(&strand),
        labels: labels
            .iter()
            .map(|at| {
                at.iter()
                    .map(|(origin, mono)| LabelReport {
                        origin: *origin,
                        monomial: mono.to_string(),
                    })
                    .collect()
            })
            .collect(),
        differentials,
    };
    let mut text = format!("x-degree {} strand of the pairing koszul complex\n", args.x_degree);
    for t in &report.terms {
        text.push_str(&format!(
            "  position {}: rank {}  {}\n",
            t.position,
            t.rank,
            shift_counts_text(&t.shifts)
        ));
    }
    for (k, at) in report.labels.iter().enumerate() {
        let lab: Vec<String> = at
            .iter()
            .map(|l| format!("{}:{}", l.origin, l.monomial))
            .collect();
        text.push_str(&format!("  labels {k}: {}\n", lab.join(", ")));
    }
    emit(cli.format, &report, text)?;
    Ok(0)
}

// ---------------------------------------------------------------- random phi

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn random_phi<F: Field>(spec: &str, seed: u64, field: F) -> resint::Result<LinearMatrixY<F>> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "--random-phi expects \"n,m,p\", got {spec:?}"
        )));
    }
    let dims: Vec<usize> = parts
        .iter()
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|e| Error::Parse(format!("--random-phi: {e}")))
        })
        .collect::<resint::Result<Vec<usize>>>()?;
    let (n, m, p) = (dims[0], dims[1], dims[2]);
    let ring = RingSpec::new(n, p, field)?;
    let mut state = seed;
    let mut entries = Vec::with_capacity(n * m);
    for _ in 0..n * m {
        let mut e = BiPoly::zero(&ring);
        for j in 0..p {
            let v = (splitmix64(&mut state) % 19) as i64 - 9;
            if v != 0 {
                let c = ring.field.from_i64(v);
                e = e.add(&BiPoly::var(&ring, resint::bipoly::Var::Y(j))?.scale(&c))?;
            }
        }
        entries.push(e);
    }
    LinearMatrixY::new(&ring, m, entries)
}
