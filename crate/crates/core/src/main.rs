use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use latpath::format::{self, Footer, OutputFormat};
use latpath::oracle::{Oracle, WordFilter, CAP_ENV, DEFAULT_CAP};
use latpath::verifier::{Domain, IdentityId, IdentitySpec, Verifier};
use latpath::{dp, Cell, Error, Family, Step, TableDims};

/// Exact counts of lattice paths inside an m x n table with steps u=(1,1), r=(1,0), d=(1,-1).
#[derive(Debug, Parser)]
#[command(name = "latpath", version)]
struct Cli {
    /// Longest word the brute-force oracle will enumerate.
    #[arg(long, global = true, env = CAP_ENV, default_value_t = DEFAULT_CAP)]
    cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// Number of rows (m).
    #[arg(short = 'm', long = "rows")]
    rows: usize,
    /// Number of columns (n).
    #[arg(short = 'n', long = "cols")]
    cols: usize,
}

impl TableArgs {
    fn dims(&self) -> latpath::Result<TableDims> {
        TableDims::new(self.rows, self.cols)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a whole count family: d1, d, h over the m x n table; a over the n x n table.
    Table {
        #[arg(long)]
        kind: Family,
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, default_value = "markdown")]
        format: OutputFormat,
    },
    /// Count confined paths between two cells.
    Count {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        from_col: usize,
        #[arg(long)]
        from_row: usize,
        #[arg(long)]
        to_col: usize,
        #[arg(long)]
        to_row: usize,
    },
    /// List I_m(1..max-n) or the bottom-row edge D^1(1..max-n, 1).
    Sequence {
        #[arg(long, value_parser = ["imn-fixed-m", "d1-bottom-row"])]
        target: String,
        #[arg(short = 'm', long = "rows")]
        rows: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long)]
        format: Option<OutputFormat>,
    },
    /// Check identities against the DP and the oracle.
    Verify {
        /// Identity id, or "all".
        #[arg(long, default_value = "all")]
        identity: String,
        #[arg(long)]
        min_m: Option<usize>,
        #[arg(long)]
        max_m: Option<usize>,
        #[arg(long)]
        min_n: Option<usize>,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_y: Option<usize>,
        /// Also map the validity region of H-SQUARE, S2 and D-BOUNDARY-PRINTED.
        #[arg(long)]
        calibrate: bool,
        #[arg(long, default_value = "markdown")]
        format: OutputFormat,
    },
    /// Enumerate lattice words by brute force.
    Words {
        #[arg(long)]
        length: usize,
        /// Confine rows to [1, m].
        #[arg(short = 'm', long = "rows")]
        rows: Option<usize>,
        /// Table width; only checked for consistency with the length.
        #[arg(short = 'n', long = "cols")]
        cols: Option<usize>,
        #[arg(long)]
        start: Option<i64>,
        #[arg(long)]
        end_row: Option<i64>,
        #[arg(long)]
        net: Option<i64>,
        /// Forbid rows below 1 without a ceiling.
        #[arg(long)]
        floor: bool,
        /// Letters to use, e.g. "ud".
        #[arg(long, default_value = "urd")]
        alphabet: String,
        /// Print the visited rows (e.g. 121) instead of letters.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        format: Option<OutputFormat>,
    },
}

/// Exit status: usage or resource problems.
const EXIT_USAGE: u8 = 1;
/// Exit status: an identity did not meet its expected verdict.
const EXIT_MISMATCH: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

fn run(cli: Cli) -> latpath::Result<ExitCode> {
    let oracle = Oracle::new(cli.cap);
    match cli.command {
        Command::Table { kind, table, format } => {
            let dims = table.dims()?;
            let matrix = match kind {
                Family::Di(i) => dp::di_table(dims, i)?,
                Family::D => dp::d_table(dims),
                Family::A => dp::a_table(dims.cols())?,
                Family::H => dp::h_table(dims),
            };
            // H(s,s) under a D^1 table, capped at the top row
            let footer = (kind == Family::Di(1)).then(|| {
                let h = dp::h_table(dims);
                Footer {
                    label: "H(s,s)".into(),
                    values: (1..=dims.cols()).map(|s| h[(s, s.min(dims.rows()))].clone()).collect(),
                }
            });
            emit(&format::render_table(&matrix, format, footer.as_ref()));
        }
        Command::Count { table, from_col, from_row, to_col, to_row } => {
            let count = dp::bounded_pair_count(table.dims()?, Cell::new(from_col, from_row), Cell::new(to_col, to_row))?;
            emit(&format!("{count}\n"));
        }
        Command::Sequence { target, rows, max_n, format } => {
            if rows == 0 || max_n == 0 {
                return Err(Error::Domain("m and max-n must be at least 1".into()));
            }
            let values = match target.as_str() {
                "imn-fixed-m" => dp::imn_sequence(rows, max_n),
                _ => {
                    let d1 = dp::di_table(TableDims::new(rows, max_n)?, 1)?;
                    (1..=max_n).map(|s| d1[(s, 1)].clone()).collect()
                }
            };
            emit(&format::render_sequence(&target, rows, &values, format));
        }
        Command::Verify { identity, min_m, max_m, min_n, max_n, max_y, calibrate, format } => {
            let ids: Vec<IdentityId> = if identity.eq_ignore_ascii_case("all") {
                IdentityId::ALL.to_vec()
            } else {
                vec![identity.parse()?]
            };
            let specs: Vec<IdentitySpec> = ids
                .iter()
                .map(|&id| {
                    let spec = IdentitySpec::default_for(id);
                    let d = spec.domain;
                    spec.with_domain(Domain {
                        min_m: min_m.unwrap_or(d.min_m),
                        max_m: max_m.unwrap_or(d.max_m),
                        min_n: min_n.unwrap_or(d.min_n),
                        max_n: max_n.unwrap_or(d.max_n),
                        max_y: max_y.unwrap_or(d.max_y),
                    })
                })
                .collect();
            let verifier = Verifier::new(oracle);
            let reports = verifier.run_suite(&specs)?;
            let mut calibrations = Vec::new();
            if calibrate {
                let boxes = [
                    (IdentityId::HSquare, Domain::new(5, 12, 0)),
                    (IdentityId::S2, Domain::new(4, 9, 0)),
                    (IdentityId::DBoundaryPrinted, Domain::new(6, 12, 0)),
                ];
                for (id, search) in boxes {
                    if ids.contains(&id) {
                        calibrations.push(verifier.calibrate_domain(id, search)?);
                    }
                }
            }
            emit(&format::render_reports(&reports, &calibrations, format));
            if !reports.iter().all(|r| r.met_expectation()) {
                return Ok(ExitCode::from(EXIT_MISMATCH));
            }
        }
        Command::Words { length, rows, cols, start, end_row, net, floor, alphabet, trace, format } => {
            let mut filter = WordFilter::default();
            if let Some(m) = rows {
                let n = cols.unwrap_or(length + 1);
                if n < length + 1 {
                    return Err(Error::Domain(format!("{length}-step words do not fit in {n} columns")));
                }
                filter = WordFilter::confined(TableDims::new(m, n)?);
            }
            let steps = alphabet
                .chars()
                .map(|c| Step::from_letter(c).ok_or_else(|| Error::Parse(format!("bad step letter {c:?}"))))
                .collect::<latpath::Result<Vec<_>>>()?;
            filter = filter.alphabet(&steps);
            filter.start_row = start;
            filter.end_row = end_row;
            filter.net_displacement = net;
            filter.floor = floor;
            let words: Vec<_> = oracle.enumerate_words(length, filter)?.collect();
            let show = |w: &latpath::LatticeWord| if trace { w.row_word() } else { w.to_string() };
            let text = match format {
                None | Some(OutputFormat::Markdown) => words.iter().map(|w| format!("{}\n", show(w))).collect(),
                Some(OutputFormat::Csv) => {
                    let mut s = String::from("start_row,word,rows\n");
                    for w in &words {
                        s.push_str(&format!("{},{},{}\n", w.start_row, w, w.row_word()));
                    }
                    s
                }
                Some(OutputFormat::Json) => {
                    let doc: Vec<_> = words
                        .iter()
                        .map(|w| serde_json::json!({"start_row": w.start_row, "word": w.to_string(), "rows": w.row_trace()}))
                        .collect();
                    format!("{}\n", serde_json::to_string_pretty(&doc).expect("plain data serializes"))
                }
            };
            emit(&text);
        }
    }
    Ok(ExitCode::SUCCESS)
}

