//! The `degen` command: build, verify and benchmark subset rank/select structures.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use degen_core::bounds::{lower_bound, space_audit};
use degen_core::container;
use degen_core::workload::CSV_HEADER;
use degen_core::{
    generate, run_bench, verify, Base, BenchConfig, BenchResult, DegenerateString, Format, Profile,
    QueryKind, Sample, StructureKind, SubsetIndex, SubsetRankSelect, VerifyReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "degen",
    version,
    about = "Subset rank and select on degenerate strings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a structure from a text input and write it as a container.
    Build {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        structure: StructureArgs,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Check a structure against the brute-force oracle.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Check this container instead of a freshly built structure.
        #[arg(long)]
        container: Option<PathBuf>,
        #[command(flatten)]
        structure: StructureArgs,
        /// Ask every query instead of a random sample.
        #[arg(long)]
        exhaustive: bool,
        /// Number of random rank (and as many select) queries when sampling.
        #[arg(long, default_value_t = 100_000)]
        queries: usize,
        #[arg(long, env = "DEGEN_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Time random queries; the input may be a container or a text file.
    Bench(BenchArgs),
    /// Print the counting lower bound for size N over sigma symbols.
    Lowerbound {
        #[arg(long = "size", short = 'N')]
        size: usize,
        #[arg(long)]
        sigma: usize,
    },
    /// Generate a random degenerate string.
    Gen {
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, default_value_t = Format::SetsText)]
        format: Format,
        /// Defaults to standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print instance statistics, and a space audit when a structure is given.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        structure: Option<StructureKind>,
        #[arg(long, default_value_t = Base::Wavelet)]
        base: Base,
        #[arg(long)]
        block_words: Option<usize>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, default_value_t = Format::SetsText)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct StructureArgs {
    #[arg(long, default_value_t = StructureKind::ReductionIII)]
    pub structure: StructureKind,
    /// `wavelet`, `bitplane` or `bitplane(i)`.
    #[arg(long, default_value_t = Base::Wavelet)]
    pub base: Base,
    /// Bit-plane block parameter `i`; implies the bit-plane base.
    #[arg(long)]
    pub block_words: Option<usize>,
}

impl StructureArgs {
    pub fn spec(&self) -> Result<(StructureKind, Base)> {
        Ok((self.structure, resolve_base(self.base, self.block_words)?))
    }
}

fn resolve_base(base: Base, block_words: Option<usize>) -> Result<Base> {
    match (base, block_words) {
        (base, None) => Ok(base),
        (Base::BitPlane(_), Some(i)) => Ok(Base::BitPlane(i)),
        (Base::Wavelet, Some(_)) => bail!("--block-words applies only to the bitplane base"),
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// Number of sets.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub sigma: usize,
    /// `genomic-like`, `uniform` or `uniform:w0,w1,...` (weights of set sizes 0, 1, ...).
    #[arg(long, default_value = "genomic-like")]
    pub profile: Profile,
    #[arg(long, env = "DEGEN_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Container or text input; containers are recognized by their header.
    #[arg(long, short, conflicts_with = "n")]
    pub input: Option<PathBuf>,
    #[arg(long, default_value_t = Format::SetsText)]
    pub format: Format,
    /// Generate the input instead of reading it.
    #[arg(long, required_unless_present = "input")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub sigma: usize,
    #[arg(long, default_value = "genomic-like")]
    pub profile: Profile,
    /// Ignored for containers, which fix their own structure.
    #[command(flatten)]
    pub structure: StructureArgs,
    #[arg(long, default_value_t = degen_core::workload::DEFAULT_QUERY_COUNT)]
    pub queries: usize,
    #[arg(long, default_value_t = degen_core::workload::DEFAULT_REPEATS)]
    pub repeats: usize,
    #[arg(long, env = "DEGEN_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "rank")]
    pub query_kind: QueryKind,
    /// Print a CSV header and row instead of a table.
    #[arg(long)]
    pub csv: bool,
}

/// Result of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    VerificationFailed,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::VerificationFailed => 1,
        }
    }
}

pub fn read_input(path: &Path, format: Format) -> Result<DegenerateString> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    DegenerateString::parse(&bytes, format).with_context(|| format!("parsing {}", path.display()))
}

pub fn load_container(path: &Path) -> Result<SubsetIndex> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    container::decode(&bytes).with_context(|| format!("decoding {}", path.display()))
}

fn write_audit(out: &mut dyn Write, x: &DegenerateString, idx: &SubsetIndex) -> Result<()> {
    writeln!(out, "structure\t{}", idx.kind())?;
    writeln!(out, "base\t{}", idx.base())?;
    for part in idx.components() {
        writeln!(out, "component {}\t{} bits", part.name, part.bits)?;
    }
    match space_audit(idx.size_bits(), &x.stats()) {
        Ok(audit) => write!(out, "{audit}")?,
        Err(_) => writeln!(out, "total_bits\t{}", idx.size_bits())?,
    }
    Ok(())
}

pub fn cmd_build(
    input: &Path,
    format: Format,
    kind: StructureKind,
    base: Base,
    output: &Path,
    out: &mut dyn Write,
) -> Result<()> {
    let x = read_input(input, format)?;
    let idx = SubsetIndex::build(&x, kind, base)?;
    fs::write(output, container::encode(&idx))
        .with_context(|| format!("writing {}", output.display()))?;
    write_audit(out, &x, &idx)
}

/// Which structure `cmd_verify` checks.
pub enum VerifyTarget<'a> {
    Container(&'a Path),
    Fresh(StructureKind, Base),
}

pub fn cmd_verify(
    input: &Path,
    format: Format,
    target: VerifyTarget<'_>,
    sample: Sample,
    out: &mut dyn Write,
) -> Result<Outcome> {
    let x = read_input(input, format)?;
    let idx = match target {
        VerifyTarget::Fresh(kind, base) => SubsetIndex::build(&x, kind, base)?,
        VerifyTarget::Container(path) => match load_container(path) {
            Ok(idx) => idx,
            Err(e) => {
                writeln!(out, "FAIL: container does not load: {e:#}")?;
                return Ok(Outcome::VerificationFailed);
            }
        },
    };
    let VerifyReport {
        checked,
        first_mismatch,
    } = verify(&x, &idx, sample);
    match first_mismatch {
        None => {
            writeln!(
                out,
                "ok: {} {} agrees with the oracle on {checked} queries",
                idx.kind(),
                idx.base()
            )?;
            Ok(Outcome::Ok)
        }
        Some(m) => {
            writeln!(out, "FAIL after {checked} queries")?;
            writeln!(out, "counterexample: {m}")?;
            Ok(Outcome::VerificationFailed)
        }
    }
}

pub fn cmd_bench(args: &BenchArgs) -> Result<BenchResult> {
    let config = BenchConfig {
        query_count: args.queries,
        repeats: args.repeats,
        seed: args.seed,
        query_kind: args.query_kind,
    };
    config.validate()?;
    let idx = match (&args.input, args.n) {
        (Some(path), _) => {
            let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
            if container::is_container(&bytes) {
                container::decode(&bytes).with_context(|| format!("decoding {}", path.display()))?
            } else {
                let x = DegenerateString::parse(&bytes, args.format)
                    .with_context(|| format!("parsing {}", path.display()))?;
                let (kind, base) = args.structure.spec()?;
                SubsetIndex::build(&x, kind, base)?
            }
        }
        (None, Some(n)) => {
            let x = generate(args.seed, n, args.sigma, &args.profile)?;
            let (kind, base) = args.structure.spec()?;
            SubsetIndex::build(&x, kind, base)?
        }
        (None, None) => bail!("bench needs --input or --n"),
    };
    Ok(run_bench(&idx, &config)?)
}

pub fn write_bench(out: &mut dyn Write, r: &BenchResult, csv: bool) -> Result<()> {
    if csv {
        writeln!(out, "{CSV_HEADER}")?;
        writeln!(out, "{}", r.to_csv_row())?;
    } else {
        writeln!(out, "structure\t{}", r.structure)?;
        writeln!(out, "base\t{}", r.base)?;
        writeln!(
            out,
            "n\t{}\nN\t{}\nn0\t{}\nsigma\t{}",
            r.n, r.size, r.n0, r.sigma
        )?;
        writeln!(out, "query_kind\t{}", r.query_kind)?;
        writeln!(out, "ns_per_query\t{:.2}", r.ns_per_query)?;
        writeln!(out, "bits_per_symbol\t{:.4}", r.bits_per_symbol)?;
        writeln!(out, "checksum\t{}", r.checksum)?;
    }
    Ok(())
}

pub fn cmd_lowerbound(size: usize, sigma: usize, out: &mut dyn Write) -> Result<()> {
    write!(out, "{}", lower_bound(size, sigma)?)?;
    Ok(())
}

pub fn cmd_gen(
    gen: &GenArgs,
    format: Format,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let x = generate(gen.seed, gen.n, gen.sigma, &gen.profile)?;
    let bytes = x.serialize(format)?;
    match output {
        Some(path) => {
            fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?
        }
        None => out.write_all(&bytes)?,
    }
    Ok(())
}

pub fn cmd_stats(
    input: &Path,
    format: Format,
    structure: Option<(StructureKind, Base)>,
    out: &mut dyn Write,
) -> Result<()> {
    let x = read_input(input, format)?;
    write!(out, "{}", x.stats())?;
    if let Some((kind, base)) = structure {
        write_audit(out, &x, &SubsetIndex::build(&x, kind, base)?)?;
    }
    Ok(())
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Outcome> {
    match cli.command {
        Command::Build {
            input,
            structure,
            output,
        } => {
            let (kind, base) = structure.spec()?;
            cmd_build(&input.input, input.format, kind, base, &output, out)?;
        }
        Command::Verify {
            input,
            container,
            structure,
            exhaustive,
            queries,
            seed,
        } => {
            let target = match &container {
                Some(path) => VerifyTarget::Container(path),
                None => {
                    let (kind, base) = structure.spec()?;
                    VerifyTarget::Fresh(kind, base)
                }
            };
            let sample = if exhaustive {
                Sample::Exhaustive
            } else {
                Sample::Random {
                    count: queries,
                    seed,
                }
            };
            return cmd_verify(&input.input, input.format, target, sample, out);
        }
        Command::Bench(args) => {
            let result = cmd_bench(&args)?;
            write_bench(out, &result, args.csv)?;
        }
        Command::Lowerbound { size, sigma } => cmd_lowerbound(size, sigma, out)?,
        Command::Gen {
            gen,
            format,
            output,
        } => cmd_gen(&gen, format, output.as_deref(), out)?,
        Command::Stats {
            input,
            structure,
            base,
            block_words,
        } => {
            let spec = match structure {
                Some(kind) => Some((kind, resolve_base(base, block_words)?)),
                None => None,
            };
            cmd_stats(&input.input, input.format, spec, out)?;
        }
    }
    Ok(Outcome::Ok)
}
