//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use degen_cli::{cmd_bench, BenchArgs, StructureArgs};
use degen_core::bounds::lower_bound;
use degen_core::container;
use degen_core::degenerate::DNA_LETTERS;
use degen_core::oracle::{oracle_rank, oracle_select};
use degen_core::{
    Base, DegenerateString, Format, Profile, QueryKind, ReductionI, StringIndex, StructureKind,
    SubsetIndex, SubsetRankSelect, SymbolRankSelect,
};
use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const BASES: [Base; 5] = [
    Base::Wavelet,
    Base::BitPlane(4),
    Base::BitPlane(8),
    Base::BitPlane(16),
    Base::BitPlane(32),
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every in-range rank answer plus select answers for `j` up to one past the last occurrence.
#[derive(Debug, PartialEq, Eq)]
struct Answers {
    rank: Vec<usize>,
    select: Vec<Option<usize>>,
}

impl Answers {
    fn of(idx: &dyn SubsetRankSelect, totals: &[usize]) -> Self {
        let (n, sigma) = (idx.len(), idx.sigma());
        let mut rank = Vec::with_capacity(sigma * (n + 1));
        let mut select = Vec::new();
        for (c, &total) in totals.iter().enumerate() {
            rank.extend((0..=n).map(|i| idx.subset_rank(i, c).expect("in-range rank")));
            select.extend((1..=total + 1).map(|j| idx.subset_select(j, c).ok()));
        }
        Self { rank, select }
    }

    fn of_oracle(x: &DegenerateString) -> Self {
        let (n, sigma) = (x.len(), x.sigma());
        let mut rank = Vec::with_capacity(sigma * (n + 1));
        let mut select = Vec::new();
        for c in 0..sigma {
            rank.extend((0..=n).map(|i| oracle_rank(x, i, c).unwrap()));
            let total = rank[rank.len() - 1];
            select.extend((1..=total + 1).map(|j| oracle_select(x, j, c).ok()));
        }
        Self { rank, select }
    }

    fn totals(&self, n: usize) -> Vec<usize> {
        self.rank.chunks(n + 1).map(|r| r[n]).collect()
    }

    fn first_difference(&self, other: &Self) -> Option<String> {
        if let Some(k) = (0..self.rank.len()).find(|&k| self.rank.get(k) != other.rank.get(k)) {
            return Some(format!(
                "rank answer #{k}: {:?} vs {:?}",
                self.rank[k],
                other.rank.get(k)
            ));
        }
        if let Some(k) = (0..self.select.len()).find(|&k| self.select.get(k) != other.select.get(k))
        {
            return Some(format!(
                "select answer #{k}: {:?} vs {:?}",
                self.select[k],
                other.select.get(k)
            ));
        }
        (self.rank.len() != other.rank.len() || self.select.len() != other.select.len())
            .then(|| "answer counts differ".to_string())
    }
}

/// `n` sets with `round(empty_fraction * n)` of them empty; nonempty sets in random order.
fn random_instance(
    rng: &mut ChaCha8Rng,
    n: usize,
    sigma: usize,
    empty_fraction: f64,
) -> DegenerateString {
    let n0 = (empty_fraction * n as f64).round() as usize;
    let mut empty = vec![false; n];
    for i in sample(rng, n, n0) {
        empty[i] = true;
    }
    let sets: Vec<Vec<u32>> = empty
        .iter()
        .map(|&e| {
            if e {
                return Vec::new();
            }
            let k = if rng.random_bool(0.5) {
                rng.random_range(1..=sigma.min(4))
            } else {
                rng.random_range(1..=sigma)
            };
            sample(rng, sigma, k)
                .into_iter()
                .map(|s| s as u32)
                .collect()
        })
        .collect();
    DegenerateString::from_sets(sigma, sets).unwrap()
}

fn supported(x: &DegenerateString) -> Vec<(StructureKind, Base)> {
    StructureKind::ALL
        .iter()
        .flat_map(|&k| BASES.iter().map(move |&b| (k, b)))
        .filter(|&(k, b)| k.supports(x, b))
        .collect()
}

fn running_example_golden() -> Check {
    let start = Instant::now();
    let x = DegenerateString::parse(b"4 4\n0 1 2\n0 3\n1\n3 2\n", Format::SetsText).unwrap();
    let red = ReductionI::build(&x, Base::Wavelet).map_err(|e| e.to_string())?;
    let s = red.string_index();
    let r = red.indicator();
    let s_text: String = (0..s.len())
        .map(|k| DNA_LETTERS[s.access(k).unwrap()] as char)
        .collect();
    let r_text: String = (0..r.len())
        .map(|k| if r.get(k) { '1' } else { '0' })
        .collect();
    let (a, g) = (0, 2);
    // 1-based positions and set numbers are the 0-based results plus one
    let got = [
        ("select_R(3)", r.select1(3).unwrap() + 1, 6),
        ("rank_S(5, A)", s.rank(5, a).unwrap(), 2),
        ("select_S(2, G)", s.select(2, g).unwrap() + 1, 8),
        ("rank_R(8)", r.rank1(8), 4),
        ("subset_rank(2, A)", red.subset_rank(2, a).unwrap(), 2),
        (
            "subset_select(2, G)",
            red.subset_select(2, g).unwrap() + 1,
            4,
        ),
    ];
    let elapsed = start.elapsed();
    ensure(s_text == "ACGATCTG", || format!("S = {s_text}"))?;
    ensure(r_text == "100101101", || format!("R = {r_text}"))?;
    for (what, value, expected) in got {
        ensure(value == expected, || {
            format!("{what} = {value}, expected {expected}")
        })?;
    }
    ensure(elapsed.as_secs_f64() < 1e-3, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "S = ACGATCTG, R = 100101101, all 6 values exact in {elapsed:?}"
    ))
}

fn oracle_sweep() -> Check {
    const SIGMAS: [usize; 5] = [2, 4, 8, 16, 64];
    const EMPTY_FRACTIONS: [f64; 4] = [0.0, 0.1, 0.5, 1.0];
    let start = Instant::now();
    let mut structures = 0;
    let mut queries = 0;
    for k in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(k);
        let sigma = SIGMAS[k as usize % 5];
        let frac = EMPTY_FRACTIONS[(k as usize / 5) % 4];
        let n = match k {
            0..=19 if k % 2 == 0 => 1,
            0..=19 => 256,
            _ => rng.random_range(1..=256),
        };
        let x = random_instance(&mut rng, n, sigma, frac);
        let expected = Answers::of_oracle(&x);
        let totals = expected.totals(n);
        for (kind, base) in supported(&x) {
            let idx = SubsetIndex::build(&x, kind, base).map_err(|e| e.to_string())?;
            let got = Answers::of(&idx, &totals);
            if let Some(d) = expected.first_difference(&got) {
                return Err(format!(
                    "instance {k} (n={n}, sigma={sigma}) {kind}/{base}: {d}"
                ));
            }
            structures += 1;
            queries += got.rank.len() + got.select.len();
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed.as_secs() < 300, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "1000 instances, {structures} structures, {queries} queries, 0 mismatches in {:.1}s",
        elapsed.as_secs_f64()
    ))
}

fn string_answers(s: &StringIndex, sigma: usize) -> (Vec<usize>, Vec<Option<usize>>, Vec<usize>) {
    let len = s.len();
    let access = (0..len).map(|i| s.access(i).unwrap()).collect();
    let mut rank = Vec::new();
    let mut select = Vec::new();
    for c in 0..sigma {
        rank.extend((0..=len).map(|i| s.rank(i, c).unwrap()));
        let total = rank[rank.len() - 1];
        select.extend((1..=total + 1).map(|j| s.select(j, c).ok()));
    }
    (rank, select, access)
}

fn cross_structure() -> Check {
    let mut pairs = 0;
    for k in 0..600u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(10_000 + k);
        let sigma = [2, 3, 4, 8, 64][k as usize % 5];
        let n = rng.random_range(1..=256);
        let frac = [0.1, 0.5, 1.0][(k as usize / 5) % 3];
        let x = random_instance(&mut rng, n, sigma, frac);
        let totals = Answers::of_oracle(&x).totals(n);
        for base in BASES {
            let kinds = [StructureKind::ReductionII, StructureKind::ReductionIII];
            if !kinds.iter().all(|k| k.supports(&x, base)) {
                continue;
            }
            let two = SubsetIndex::build(&x, kinds[0], base).unwrap();
            let three = SubsetIndex::build(&x, kinds[1], base).unwrap();
            if let Some(d) =
                Answers::of(&two, &totals).first_difference(&Answers::of(&three, &totals))
            {
                return Err(format!("reduction II vs III on instance {k}/{base}: {d}"));
            }
            pairs += 1;
        }
    }
    let mut lengths: Vec<usize> = (0..=256).collect();
    lengths.extend([511, 512, 513, 1023, 1024, 1025, 1535, 2047, 2048]);
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    lengths.extend((0..60).map(|_| rng.random_range(257..=2048)));
    let mut strings = 0;
    for sigma in 1..=4usize {
        for &len in &lengths {
            let skew = rng.random_bool(0.3);
            let symbols: Vec<u32> = (0..len)
                .map(|_| {
                    if skew && rng.random_bool(0.9) {
                        0
                    } else {
                        rng.random_range(0..sigma as u32)
                    }
                })
                .collect();
            let reference = string_answers(
                &StringIndex::build(&symbols, sigma, Base::Wavelet).unwrap(),
                sigma,
            );
            for base in &BASES[1..] {
                let got =
                    string_answers(&StringIndex::build(&symbols, sigma, *base).unwrap(), sigma);
                if got != reference {
                    return Err(format!(
                        "{base} differs from wavelet at sigma={sigma}, length={len}"
                    ));
                }
            }
            strings += 1;
        }
    }
    Ok(format!(
        "{pairs} reduction II/III pairs agree; {strings} strings agree across 4 block parameters"
    ))
}

fn space_budget() -> Check {
    const N: usize = 10_000_000;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let weights = [0.80, 0.12, 0.05, 0.03];
    let mut remaining = N;
    let sets = std::iter::from_fn(|| {
        if remaining == 0 {
            return None;
        }
        let u: f64 = rng.random();
        let mut k = 1 + weights
            .iter()
            .scan(0.0, |acc, w| {
                *acc += w;
                Some(*acc)
            })
            .take_while(|&acc| u >= acc)
            .count();
        k = k.min(4).min(remaining);
        remaining -= k;
        Some(
            sample(&mut rng, 4, k)
                .into_iter()
                .map(|s| s as u32)
                .collect::<Vec<u32>>(),
        )
    });
    let x = DegenerateString::from_sets(4, sets).unwrap();
    ensure(x.size() == N && x.empty_sets() == 0, || {
        "instance shape".into()
    })?;
    let idx = SubsetIndex::build(&x, StructureKind::ReductionI, Base::BitPlane(8)).unwrap();
    let bits = idx.size_bits() as f64;
    let limit = 1.25 * (N as f64 * 2.0 + N as f64);
    ensure(bits <= limit, || format!("{bits} bits exceeds {limit}"))?;
    Ok(format!(
        "n={}, N={N}: {bits} bits = {:.4} bits/symbol <= {:.4}",
        x.len(),
        bits / N as f64,
        limit / N as f64
    ))
}

fn big_log2(v: &BigUint) -> f64 {
    let bits = v.bits();
    let shift = bits.saturating_sub(64);
    let top: u64 = (v >> shift).try_into().unwrap();
    (top as f64).log2() + shift as f64
}

fn lower_bound_exact() -> Check {
    let report = lower_bound(1 << 16, 1024).map_err(|e| e.to_string())?;
    let mut binom = BigUint::from(1u32);
    for t in 0..16u32 {
        binom *= 1024 - t;
    }
    for t in 1..=16u32 {
        binom /= t;
    }
    let expected = 4096.0 * big_log2(&binom);
    let rel = (report.exact_bits - expected).abs() / expected;
    ensure(rel <= 1e-6, || {
        format!(
            "exact {} vs big-integer {expected}, rel {rel:e}",
            report.exact_bits
        )
    })?;
    ensure(report.exact_bits >= report.relaxed_bits, || {
        format!(
            "exact {} < relaxed {}",
            report.exact_bits, report.relaxed_bits
        )
    })?;
    Ok(format!(
        "exact {:.3} vs big-integer {expected:.3} (rel {rel:.1e}); relaxed {:.3}",
        report.exact_bits, report.relaxed_bits
    ))
}

fn succinctness_trend() -> Check {
    let ratios: Vec<f64> = [6, 8, 10, 12, 14]
        .iter()
        .map(|&e| {
            let r = lower_bound(1 << 16, 1 << e).unwrap();
            r.exact_bits / r.headline_bits
        })
        .collect();
    ensure(ratios.windows(2).all(|w| w[0] < w[1]), || {
        format!("ratios {ratios:?}")
    })?;
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.4}")).collect();
    Ok(format!("exact/(N log sigma) = {}", shown.join(" < ")))
}

fn bench_args(
    input: Option<std::path::PathBuf>,
    n: Option<usize>,
    base: Base,
    kind: QueryKind,
) -> BenchArgs {
    BenchArgs {
        input,
        format: Format::SetsText,
        n,
        sigma: 4,
        profile: Profile::GenomicLike,
        structure: StructureArgs {
            structure: StructureKind::Dsd,
            base,
            block_words: None,
        },
        queries: 1_000_000,
        repeats: 1,
        seed: 2024,
        query_kind: kind,
        csv: true,
    }
}

fn block_parameter_ordering() -> Check {
    let mut rows = Vec::new();
    for kind in [QueryKind::Rank, QueryKind::Select] {
        let results: Vec<_> = [4, 8, 16, 32]
            .iter()
            .map(|&i| cmd_bench(&bench_args(None, Some(1_000_000), Base::BitPlane(i), kind)))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(
            results.windows(2).all(|w| w[0].checksum == w[1].checksum),
            || format!("{kind} checksums differ"),
        )?;
        ensure(
            results
                .windows(2)
                .all(|w| w[0].bits_per_symbol > w[1].bits_per_symbol),
            || {
                format!(
                    "bits/symbol not decreasing: {:?}",
                    results
                        .iter()
                        .map(|r| r.bits_per_symbol)
                        .collect::<Vec<_>>()
                )
            },
        )?;
        if kind == QueryKind::Rank {
            rows = results
                .iter()
                .map(|r| format!("{:.4}", r.bits_per_symbol))
                .collect();
        }
    }
    Ok(format!(
        "bits/symbol for i=4,8,16,32: {}; checksums equal",
        rows.join(" > ")
    ))
}

fn persistence_round_trip() -> Check {
    let mut queries = 0;
    for k in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(20_000 + k);
        let sigma = [2, 3, 4, 8, 16, 64][k as usize % 6];
        let n = rng.random_range(1..=256);
        let frac = [0.0, 0.1, 0.5, 1.0][rng.random_range(0..4)];
        let x = random_instance(&mut rng, n, sigma, frac);
        let options = supported(&x);
        let (kind, base) = options[k as usize % options.len()];
        let fresh = SubsetIndex::build(&x, kind, base).unwrap();
        let bytes = container::encode(&fresh);
        let loaded = container::decode(&bytes).map_err(|e| format!("instance {k}: {e}"))?;
        ensure(container::encode(&loaded) == bytes, || {
            format!("instance {k}: re-encoding differs")
        })?;
        let expected = Answers::of_oracle(&x);
        let totals = expected.totals(n);
        let from_fresh = Answers::of(&fresh, &totals);
        let from_loaded = Answers::of(&loaded, &totals);
        if let Some(d) = from_loaded.first_difference(&from_fresh) {
            return Err(format!("instance {k} {kind}/{base}: loaded vs fresh: {d}"));
        }
        if let Some(d) = expected.first_difference(&from_loaded) {
            return Err(format!("instance {k} {kind}/{base}: oracle vs loaded: {d}"));
        }
        queries += from_loaded.rank.len() + from_loaded.select.len();
    }
    Ok(format!(
        "100 containers reload; {queries} queries match fresh builds and the oracle"
    ))
}

fn bench_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("bench.dgrs");
    let x = degen_core::generate(9, 100_000, 4, &Profile::GenomicLike).unwrap();
    let idx = SubsetIndex::build(&x, StructureKind::Dsd, Base::BitPlane(8)).unwrap();
    std::fs::write(&path, container::encode(&idx)).map_err(|e| e.to_string())?;
    let mut sums = Vec::new();
    for kind in [QueryKind::Rank, QueryKind::Select] {
        let args = bench_args(Some(path.clone()), None, Base::Wavelet, kind);
        let a = cmd_bench(&args).map_err(|e| e.to_string())?;
        let b = cmd_bench(&args).map_err(|e| e.to_string())?;
        ensure(a.checksum == b.checksum, || {
            format!("{kind}: {} vs {}", a.checksum, b.checksum)
        })?;
        sums.push(format!("{kind} {:#018x}", a.checksum));
    }
    Ok(format!(
        "repeated runs on one container agree: {}",
        sums.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("running-example golden values", running_example_golden),
        ("oracle equivalence sweep", oracle_sweep),
        ("cross-structure agreement", cross_structure),
        ("space budget at N = 10^7", space_budget),
        ("lower-bound calculator", lower_bound_exact),
        ("succinctness trend", succinctness_trend),
        ("block-parameter ordering", block_parameter_ordering),
        ("persistence round trip", persistence_round_trip),
        ("benchmark determinism", bench_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
