//! Command line front end over the library operations.
//!
//! Every command is a thin adapter: it parses inputs, calls one library
//! operation, and formats the result. Reports are deterministic for
//! fixed inputs; there are no timestamps and no environment-dependent
//! output.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use memgen_core::{
    classify, find_one_bit_generators, fixed_point_census, local_spread_census,
    minimal_prefix_generator, one_bit_capacity, ordered_recall, recall, seed_first_ascending,
    spread_then_recall_with, BipolarVector, Coordinates, Fragment, GeneratorRecord,
    InterconnectionGraph, MemorySet, RecallTrace, SelectionPolicy, Sign, SpreadMatrix,
    UpdateOrder, WeightMatrix, DEFAULT_ENUMERATION_CAP, DEFAULT_SEARCH_CAP,
};

#[derive(Parser)]
#[command(
    name = "memgen",
    version,
    about = "Hebbian associative memory: train, recall from fragments, search for generators"
)]
struct Cli {
    /// Write the report to a file instead of standard output
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MemoriesArg {
    /// Memory file: one pattern per line of 1 / +1 / -1 tokens,
    /// `#` comments allowed
    #[arg(long)]
    memories: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Train the weight matrix from a memory file and print it
    Train {
        #[command(flatten)]
        memories: MemoriesArg,
        /// Also print the lower triangular spread matrix
        #[arg(long)]
        decomposition: bool,
    },
    /// Check which memories pass the storage test
    Verify {
        #[command(flatten)]
        memories: MemoriesArg,
    },
    /// Complete a clamped fragment by sequential recall
    Recall {
        #[command(flatten)]
        memories: MemoriesArg,
        /// Fragment literal: prefix values like "1 -1", or pairs like 4:-1
        #[arg(long, allow_hyphen_values = true)]
        fragment: String,
        /// Update order like (4)1325; omitted means ascending prefix recall
        #[arg(long)]
        order: Option<String>,
    },
    /// Report the smallest prefix fragment recalling each memory
    Generators {
        #[command(flatten)]
        memories: MemoriesArg,
        /// Restrict to one memory, 1-based
        #[arg(long)]
        target: Option<usize>,
    },
    /// Exhaustive single-seed searches: generators, capacity, or classes
    Onebit {
        #[command(flatten)]
        memories: MemoriesArg,
        /// Restrict the generator search to one memory, 1-based
        #[arg(long)]
        target: Option<usize>,
        /// Cap on the factorial order search
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        max_n: usize,
        /// Report the 2n-entry single-seed capacity map instead
        #[arg(long)]
        capacity: bool,
        /// Report canonical state classes reachable from single seeds instead
        #[arg(long)]
        classes: bool,
        /// Also dump generator records as CSV to this path
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Enumerate all 2^n states and classify the fixed points
    Census {
        #[command(flatten)]
        memories: MemoriesArg,
        /// Cap on the enumeration dimension
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        max_n: usize,
    },
    /// Grow a fragment from one neuron by local spreading, then recall
    Spread {
        #[command(flatten)]
        memories: MemoriesArg,
        /// Seed neuron, 1-based
        #[arg(long)]
        seed: usize,
        /// Seed value: 1, +1, or -1
        #[arg(long, default_value = "+1", allow_hyphen_values = true)]
        value: String,
        /// Fragment size to grow before recall
        #[arg(long, default_value_t = 1)]
        size: usize,
        /// Coordinates file (`index x y` lines) enabling proximity selection
        #[arg(long)]
        coords: Option<PathBuf>,
    },
    /// Export the interconnection graph as Graphviz DOT
    Graph {
        #[command(flatten)]
        memories: MemoriesArg,
    },
}

fn main() {
    let cli = Cli::parse();
    let output = cli.output.clone();
    match run(cli.command) {
        Ok(report) => {
            if let Some(path) = output {
                if let Err(e) = std::fs::write(&path, &report)
                    .with_context(|| format!("writing {}", path.display()))
                {
                    eprintln!("error: {e:#}");
                    std::process::exit(1);
                }
            } else {
                print!("{report}");
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Train {
            memories,
            decomposition,
        } => {
            let set = load_memories(&memories.memories)?;
            let t = WeightMatrix::train(&set);
            let mut report = format!(
                "neurons: {}\nmemories: {}\nT:\n{t}\n",
                set.n(),
                set.count()
            );
            if decomposition {
                let b = SpreadMatrix::decompose(&t);
                let _ = write!(report, "B:\n{b}\n");
            }
            Ok(report)
        }
        Command::Verify { memories } => {
            let set = load_memories(&memories.memories)?;
            let t = WeightMatrix::train(&set);
            let mut report = String::new();
            let mut stored = 0usize;
            for (i, memory) in set.iter().enumerate() {
                let ok = t.is_stored(memory)?;
                stored += usize::from(ok);
                let _ = writeln!(
                    report,
                    "memory#{}  {memory}  {}",
                    i + 1,
                    if ok { "stored" } else { "not stored" }
                );
            }
            let _ = writeln!(report, "stored: {stored}/{}", set.count());
            Ok(report)
        }
        Command::Recall {
            memories,
            fragment,
            order,
        } => {
            let set = load_memories(&memories.memories)?;
            let t = WeightMatrix::train(&set);
            let fragment = Fragment::parse(&fragment, set.n())
                .map_err(|e| anyhow!("fragment literal: {e}"))?;
            let (order, result, trace) = match order {
                Some(literal) => {
                    let order =
                        UpdateOrder::parse(&literal).map_err(|e| anyhow!("order literal: {e}"))?;
                    let (result, trace) = ordered_recall(&t, &fragment, &order)?;
                    (order, result, trace)
                }
                None => {
                    let b = SpreadMatrix::decompose(&t);
                    let (result, trace) = recall(&b, &fragment)?;
                    let order = UpdateOrder::identity(set.n(), fragment.len())?;
                    (order, result, trace)
                }
            };
            let mut report = format!("fragment: {fragment}\norder: {}\n", order.notation());
            render_trace(&mut report, &trace);
            let _ = writeln!(report, "result: {result}");
            let _ = writeln!(report, "class: {}", classify(&t, &set, &result)?);
            Ok(report)
        }
        Command::Generators { memories, target } => {
            let set = load_memories(&memories.memories)?;
            let t = WeightMatrix::train(&set);
            let b = SpreadMatrix::decompose(&t);
            let targets = select_targets(&set, target)?;
            let mut records = Vec::new();
            for &i in &targets {
                records.push((i, minimal_prefix_generator(&b, set.get(i))?));
            }
            let mut report = records
                .iter()
                .map(|(_, r)| r.notation())
                .collect::<Vec<_>>()
                .join(", ");
            report.push('\n');
            for (i, record) in &records {
                let _ = writeln!(report, "{}", record_line(*i, record));
            }
            Ok(report)
        }
        Command::Onebit {
            memories,
            target,
            max_n,
            capacity,
            classes,
            csv,
        } => {
            let set = load_memories(&memories.memories)?;
            let t = WeightMatrix::train(&set);
            if capacity && classes {
                bail!("--capacity and --classes are mutually exclusive");
            }
            if capacity {
                return capacity_report(&t, &set);
            }
            if classes {
                let class_list = local_spread_census(&t, max_n)?;
                let mut report = format!(
                    "canonical classes reachable from single seeds: {}\n",
                    class_list.len()
                );
                for class in &class_list {
                    let _ = writeln!(report, "{class}");
                }
                return Ok(report);
            }
            let targets = select_targets(&set, target)?;
            let mut report = String::new();
            let mut all_records = Vec::new();
            for &i in &targets {
                let records = find_one_bit_generators(&t, set.get(i), max_n)?;
                let _ = writeln!(report, "memory#{}: {} generators", i + 1, records.len());
                for record in &records {
                    let _ = writeln!(report, "{}", record_line(i, record));
                }
                all_records.push((i, records));
            }
            if let Some(path) = csv {
                write_csv(&path, &all_records)?;
            }
            Ok(report)
        }
        Command::Census { memories, max_n } => {
            let set = load_memories(&memories.memories)?;
            let t = WeightMatrix::train(&set);
            let census = fixed_point_census(&t, &set, max_n)?;
            let mut report = format!(
                "neurons: {}, states: {}, fixed points: {}\n",
                set.n(),
                1u64 << set.n(),
                census.fixed_point_count()
            );
            let annotate_stored = |v: &BipolarVector| {
                set.position_of(v)
                    .map(|i| format!("memory#{}", i + 1))
                    .unwrap_or_default()
            };
            let annotate_complement = |v: &BipolarVector| {
                set.position_of(&v.complement())
                    .map(|i| format!("complement-of-memory#{}", i + 1))
                    .unwrap_or_default()
            };
            render_state_list(&mut report, "stored", &census.stored, annotate_stored);
            render_state_list(
                &mut report,
                "complements",
                &census.complements,
                annotate_complement,
            );
            render_state_list(&mut report, "spurious", &census.spurious, |_| String::new());
            render_state_list(
                &mut report,
                "nonfixed-trained",
                &census.nonfixed_trained,
                annotate_stored,
            );
            Ok(report)
        }
        Command::Spread {
            memories,
            seed,
            value,
            size,
            coords,
        } => {
            let set = load_memories(&memories.memories)?;
            let t = WeightMatrix::train(&set);
            if seed == 0 || seed > set.n() {
                bail!("seed neuron {seed} is out of range 1..={}", set.n());
            }
            let value = Sign::from_token(&value)
                .ok_or_else(|| anyhow!("invalid --value '{value}'; expected 1, +1, or -1"))?;
            let coordinates = match &coords {
                Some(path) => Some(load_coordinates(path)?),
                None => None,
            };
            let policy = match &coordinates {
                Some(c) => SelectionPolicy::Proximity(c),
                None => SelectionPolicy::Strength,
            };
            let outcome = spread_then_recall_with(&t, seed - 1, value, size, policy)?;
            let visits = outcome
                .spread
                .visit_order
                .iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ");
            let mut report = format!(
                "seed: {seed}  value: {}  size: {size}\nvisit order: {visits}\nfragment: {}\nstalled: {}\n",
                match value {
                    Sign::Plus => "+1",
                    Sign::Minus => "-1",
                },
                outcome.spread.fragment,
                if outcome.spread.stalled { "yes" } else { "no" }
            );
            render_trace(&mut report, &outcome.trace);
            let _ = writeln!(report, "result: {}", outcome.result);
            let _ = writeln!(report, "class: {}", classify(&t, &set, &outcome.result)?);
            Ok(report)
        }
        Command::Graph { memories } => {
            let set = load_memories(&memories.memories)?;
            let t = WeightMatrix::train(&set);
            Ok(InterconnectionGraph::build(&t).to_dot())
        }
    }
}

fn load_memories(path: &Path) -> Result<MemorySet> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    MemorySet::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn load_coordinates(path: &Path) -> Result<Coordinates> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))?;
    Coordinates::parse(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

/// 0-based indices of the memories a command operates on.
fn select_targets(set: &MemorySet, target: Option<usize>) -> Result<Vec<usize>> {
    match target {
        None => Ok((0..set.count()).collect()),
        Some(0) => bail!("memory indices are 1-based"),
        Some(k) if k > set.count() => {
            bail!("memory #{k} does not exist; the set has {} memories", set.count())
        }
        Some(k) => Ok(vec![k - 1]),
    }
}

fn record_line(memory: usize, record: &GeneratorRecord) -> String {
    let mut line = format!(
        "memory#{}  {}  minimal={}",
        memory + 1,
        record.notation(),
        if record.minimal { "yes" } else { "no" }
    );
    if !record.proper {
        line.push_str("  full-fragment");
    }
    line
}

fn render_trace(report: &mut String, trace: &RecallTrace) {
    report.push_str("trace:\n");
    for line in trace.render_steps() {
        let _ = writeln!(report, "  {line}");
    }
}

fn render_state_list(
    report: &mut String,
    label: &str,
    states: &[BipolarVector],
    annotate: impl Fn(&BipolarVector) -> String,
) {
    let _ = writeln!(report, "{label} ({}):", states.len());
    for state in states {
        let note = annotate(state);
        if note.is_empty() {
            let _ = writeln!(report, "  {state}");
        } else {
            let _ = writeln!(report, "  {state}  {note}");
        }
    }
}

fn capacity_report(t: &WeightMatrix, set: &MemorySet) -> Result<String> {
    let report = one_bit_capacity(t, set, seed_first_ascending)?;
    let mut out = String::from("policy: seed-first-ascending\n");
    for entry in &report.entries {
        let _ = writeln!(
            out,
            "seed={} value={}  ->  {}  [{}]",
            entry.seed + 1,
            match entry.value {
                Sign::Plus => "+1",
                Sign::Minus => "-1",
            },
            entry.result,
            entry.class
        );
    }
    let _ = writeln!(
        out,
        "distinct results: {} (bound {})",
        report.distinct_count, report.bound
    );
    Ok(out)
}

fn write_csv(path: &Path, records: &[(usize, Vec<GeneratorRecord>)]) -> Result<()> {
    let mut out = String::from("target,seed,value,order,minimal\n");
    for (memory, list) in records {
        for record in list {
            let &(seed, value) = &record.fragment.assignments()[0];
            let _ = writeln!(
                out,
                "memory#{},{},{},\"{}\",{}",
                memory + 1,
                seed + 1,
                match value {
                    Sign::Plus => "+1",
                    Sign::Minus => "-1",
                },
                record.notation(),
                if record.minimal { "yes" } else { "no" }
            );
        }
    }
    std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
