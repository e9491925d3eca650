use std::io;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use pgonal::boundary_graph::{
    boundary_set, build_graph, connected_components, isolation_report, BoundaryPoint,
};
use pgonal::connector::{arrange, case_formula, connector_surface, ConnectorError, Leftover};
use pgonal::degeneration::{collar_bound, p_class, NodalSurface};
use pgonal::monodromy::{admissible_mplus_set, branch_count, genus_of, MonodromyTuple};
use pgonal::oracle::{decode_tuple, orbit_classes_bruteforce, pclass_orbit_bruteforce};
use pgonal::residue::{PrimeModulus, Residue};
use pgonal::strata::{classify_r4_type, enumerate_strata, StratumClass};

use crate::dot;
use crate::report::{significant, Report};

#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Verification(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Parser)]
#[command(name = "pgonal", version, about = "Exact engine for cyclic p-gonal strata, \
their stable degenerations, and connectivity of the locus")]
pub struct Cli {
    /// Worker threads for brute-force verification (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
pub enum Command {
    /// Enumerate equisymmetric strata of the cyclic p-gonal locus.
    Strata {
        /// Odd prime degree of the cover.
        #[arg(long)]
        p: u64,
        /// Number of branch points (r >= 3).
        #[arg(long, conflicts_with = "genus")]
        r: Option<u64>,
        /// Genus of the covering surface; resolved to r.
        #[arg(long)]
        genus: Option<u64>,
    },
    /// Boundary nodal classes of the one-dimensional (r = 4) strata.
    Boundary {
        #[arg(long)]
        p: u64,
    },
    /// Incidence graph of r = 4 strata and their boundary points.
    Graph {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// The common nodal surface in the closure of every trigonal stratum.
    Connector {
        /// Genus of the trigonal surfaces (>= 5).
        #[arg(long)]
        genus: u64,
        /// Also report the branch arrangement for this stratum index.
        #[arg(long)]
        mplus: Option<u64>,
    },
    /// Isolation verdicts for all r = 4 strata, with stabilizer evidence.
    Isolation {
        #[arg(long)]
        p: u64,
    },
    /// Collar length lower bound at a cone point of an order-d automorphism.
    Collar {
        #[arg(long)]
        order: u64,
    },
    /// Cross-check canonical forms and piece classes against brute force.
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        r: u64,
    },
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    if cli.threads > 0 {
        // ignore the error if a pool was already installed
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    let out = cli.out.as_deref();
    match cli.command {
        Command::Strata { p, r, genus } => cmd_strata(p, r, genus, out),
        Command::Boundary { p } => cmd_boundary(p, out),
        Command::Graph { p, format } => cmd_graph(p, format, out),
        Command::Connector { genus, mplus } => cmd_connector(genus, mplus, out),
        Command::Isolation { p } => cmd_isolation(p, out),
        Command::Collar { order } => cmd_collar(order, out),
        Command::Verify { p, r } => cmd_verify(p, r, out),
    }
}

fn prime(p: u64) -> Result<PrimeModulus, CliError> {
    PrimeModulus::new(p).map_err(|e| CliError::Domain(format!("p = {p}: {e}")))
}

fn values(s: &StratumClass) -> Vec<u64> {
    s.canonical().iter().map(|e| e.value()).collect()
}

#[derive(Serialize)]
struct BoundaryRow {
    pieces: [u64; 2],
    multiplicity: u64,
    display: String,
}

impl From<&BoundaryPoint> for BoundaryRow {
    fn from(b: &BoundaryPoint) -> Self {
        BoundaryRow {
            pieces: [b.pieces.0, b.pieces.1],
            multiplicity: b.multiplicity,
            display: b.to_string(),
        }
    }
}

#[derive(Serialize)]
struct StratumRow {
    canonical: Vec<u64>,
    display: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    r4_type: Option<String>,
}

fn stratum_row(s: &StratumClass) -> StratumRow {
    StratumRow {
        canonical: values(s),
        display: s.to_string(),
        r4_type: classify_r4_type(s).ok().map(|t| t.to_string()),
    }
}

fn cmd_strata(
    p: u64,
    r: Option<u64>,
    genus: Option<u64>,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let pm = prime(p)?;
    let r = match (r, genus) {
        (Some(r), None) => r,
        (None, Some(g)) => {
            branch_count(pm, g).map_err(|e| CliError::Domain(format!("genus {g}: {e}")))?
        }
        (None, None) => return Err(CliError::Domain("pass --r or --genus".into())),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    if r < 3 {
        return Err(CliError::Domain(format!("need r >= 3, got r = {r}")));
    }
    if (p - 1).checked_pow(r as u32).is_none_or(|t| t > 100_000_000) {
        return Err(CliError::Domain(format!(
            "instance (p = {p}, r = {r}) exceeds the enumeration guard"
        )));
    }

    #[derive(Serialize)]
    struct Params {
        p: u64,
        r: u64,
        genus: u64,
    }
    #[derive(Serialize)]
    struct Results {
        count: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        admissible_mplus: Option<Vec<u64>>,
        strata: Vec<StratumRow>,
    }

    let g = genus_of(pm, r);
    let strata = enumerate_strata(pm, r);
    let results = Results {
        count: strata.len(),
        admissible_mplus: (p == 3 && g >= 2).then(|| admissible_mplus_set(g)),
        strata: strata.iter().map(stratum_row).collect(),
    };
    Report::new("strata", Params { p, r, genus: g }, results, false).emit(out)?;
    Ok(())
}

#[derive(Serialize)]
struct BoundaryStratumRow {
    #[serde(flatten)]
    stratum: StratumRow,
    boundary: Vec<BoundaryRow>,
}

#[derive(Serialize)]
struct PParams {
    p: u64,
}

fn boundary_rows(p: PrimeModulus) -> Vec<BoundaryStratumRow> {
    enumerate_strata(p, 4)
        .iter()
        .map(|s| BoundaryStratumRow {
            stratum: stratum_row(s),
            boundary: boundary_set(s)
                .expect("r = 4 by construction")
                .iter()
                .map(BoundaryRow::from)
                .collect(),
        })
        .collect()
}

fn cmd_boundary(p: u64, out: Option<&Path>) -> Result<(), CliError> {
    let pm = prime(p)?;
    if p < 5 {
        return Err(CliError::Domain("boundary tables need p >= 5".into()));
    }

    #[derive(Serialize)]
    struct Results {
        genus: u64,
        strata: Vec<BoundaryStratumRow>,
        /// Strata indices grouped by boundary-mediated adjacency.
        components: Vec<Vec<usize>>,
    }

    let graph = build_graph(pm);
    let results = Results {
        genus: genus_of(pm, 4),
        strata: boundary_rows(pm),
        components: connected_components(&graph),
    };
    Report::new("boundary", PParams { p }, results, false).emit(out)?;
    Ok(())
}

fn cmd_graph(p: u64, format: GraphFormat, out: Option<&Path>) -> Result<(), CliError> {
    let pm = prime(p)?;
    if p < 5 {
        return Err(CliError::Domain("incidence graphs need p >= 5".into()));
    }
    let graph = build_graph(pm);

    if format == GraphFormat::Dot {
        let body = dot::render(&graph);
        match out {
            Some(path) => std::fs::write(path, body)?,
            None => {
                use io::Write;
                io::stdout().write_all(body.as_bytes())?;
            }
        }
        return Ok(());
    }

    #[derive(Serialize)]
    struct Results {
        strata: Vec<StratumRow>,
        boundary_points: Vec<BoundaryRow>,
        /// Per stratum, indices into boundary_points.
        incidence: Vec<Vec<usize>>,
        components: Vec<Vec<usize>>,
    }

    let results = Results {
        strata: graph.strata.iter().map(stratum_row).collect(),
        boundary_points: graph.boundary_points.iter().map(BoundaryRow::from).collect(),
        incidence: graph.incidence.clone(),
        components: connected_components(&graph),
    };
    Report::new("graph", PParams { p }, results, false).emit(out)?;
    Ok(())
}

#[derive(Serialize)]
struct ComponentRow {
    genus: u64,
    cusps: u64,
    label: String,
}

fn component_rows(s: &NodalSurface) -> Vec<ComponentRow> {
    s.components
        .iter()
        .map(|c| ComponentRow {
            genus: c.genus,
            cusps: c.cusps,
            label: c.label.to_string(),
        })
        .collect()
}

fn cmd_connector(genus: u64, mplus: Option<u64>, out: Option<&Path>) -> Result<(), CliError> {
    let (surface, chain) = connector_surface(genus).map_err(|e| match e {
        ConnectorError::IndependenceViolated { .. } => CliError::Verification(e.to_string()),
        _ => CliError::Domain(e.to_string()),
    })?;
    let r = genus + 2;

    #[derive(Serialize)]
    struct ArrangementRow {
        m_plus: u64,
        m_minus: u64,
        ordering: Vec<u64>,
        triple_count: u64,
        leftover: &'static str,
    }
    #[derive(Serialize)]
    struct Params {
        genus: u64,
        r: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        mplus: Option<u64>,
    }
    #[derive(Serialize)]
    struct Results {
        admissible_mplus: Vec<u64>,
        chain: String,
        components: Vec<ComponentRow>,
        node_multiplicities: Vec<u64>,
        arithmetic_genus: u64,
        formula: Vec<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        arrangement: Option<ArrangementRow>,
    }

    let arrangement = match mplus {
        None => None,
        Some(k) => {
            let a = arrange(genus, k).map_err(|e| CliError::Domain(e.to_string()))?;
            Some(ArrangementRow {
                m_plus: a.m_plus,
                m_minus: a.m_minus,
                ordering: a.ordering.exponents().iter().map(|e| e.value()).collect(),
                triple_count: a.triple_count,
                leftover: match a.leftover {
                    Leftover::None => "NONE",
                    Leftover::OneOne => "ONE_ONE",
                    Leftover::TwoTwo => "TWO_TWO",
                },
            })
        }
    };

    let results = Results {
        admissible_mplus: admissible_mplus_set(genus),
        chain,
        components: component_rows(&surface),
        node_multiplicities: surface.node_bundles.iter().map(|&(_, _, m)| m).collect(),
        arithmetic_genus: surface.arithmetic_genus(),
        formula: case_formula(r).iter().map(|l| l.to_string()).collect(),
        arrangement,
    };
    Report::new("connector", Params { genus, r, mplus }, results, false).emit(out)?;
    Ok(())
}

fn cmd_isolation(p: u64, out: Option<&Path>) -> Result<(), CliError> {
    let pm = prime(p)?;
    if p < 5 {
        return Err(CliError::Domain("isolation reports need p >= 5".into()));
    }

    #[derive(Serialize)]
    struct StabilizerRow {
        cone_pair: [u64; 2],
        p_label: u64,
        /// (scalar, swap) symmetries fixing the ordered pair.
        stabilizer: Vec<(u64, bool)>,
    }
    #[derive(Serialize)]
    struct OverlapRow {
        stratum: usize,
        shared: Vec<BoundaryRow>,
    }
    #[derive(Serialize)]
    struct EntryRow {
        #[serde(flatten)]
        stratum: StratumRow,
        boundary: Vec<BoundaryRow>,
        isolated: bool,
        overlaps: Vec<OverlapRow>,
        piece_stabilizers: Vec<StabilizerRow>,
    }
    #[derive(Serialize)]
    struct Results {
        entries: Vec<EntryRow>,
        type5_count: u64,
        type5_all_isolated: bool,
    }

    let report = isolation_report(pm);
    let mut t5_count = 0u64;
    let mut t5_all_isolated = true;
    let entries: Vec<EntryRow> = report
        .iter()
        .map(|e| {
            if e.tag.family() == "T5" {
                t5_count += 1;
                t5_all_isolated &= e.isolated;
            }
            EntryRow {
                stratum: stratum_row(&e.stratum),
                boundary: e.boundary.iter().map(BoundaryRow::from).collect(),
                isolated: e.isolated,
                overlaps: e
                    .overlaps
                    .iter()
                    .map(|(j, shared)| OverlapRow {
                        stratum: *j,
                        shared: shared.iter().map(BoundaryRow::from).collect(),
                    })
                    .collect(),
                piece_stabilizers: e
                    .piece_stabilizers
                    .iter()
                    .map(|st| StabilizerRow {
                        cone_pair: [st.cone_pair.0, st.cone_pair.1],
                        p_label: st.p_label,
                        stabilizer: st.stabilizer.clone(),
                    })
                    .collect(),
            }
        })
        .collect();

    let results = Results {
        entries,
        type5_count: t5_count,
        type5_all_isolated: t5_all_isolated,
    };
    Report::new("isolation", PParams { p }, results, false).emit(out)?;
    Ok(())
}

fn cmd_collar(order: u64, out: Option<&Path>) -> Result<(), CliError> {
    let bound = collar_bound(order).map_err(|e| CliError::Domain(e.to_string()))?;

    #[derive(Serialize)]
    struct Params {
        order: u64,
    }
    #[derive(Serialize)]
    struct Results {
        /// 2 arccosh(1 / sin(2 pi / order)), 12 significant digits.
        bound: String,
    }

    let results = Results {
        bound: significant(bound, 12),
    };
    Report::new("collar", Params { order }, results, false).emit(out)?;
    Ok(())
}

fn cmd_verify(p: u64, r: u64, out: Option<&Path>) -> Result<(), CliError> {
    let pm = prime(p)?;
    if r < 3 {
        return Err(CliError::Domain(format!("need r >= 3, got r = {r}")));
    }
    let part = orbit_classes_bruteforce(pm, r)
        .map_err(|e| CliError::Domain(format!("(p = {p}, r = {r}): {e}")))?;

    // canonical form per orbit member, in parallel
    let canon: Vec<StratumClass> = part
        .members
        .par_iter()
        .map(|&code| {
            let exps: Vec<i64> = decode_tuple(code, p, r).iter().map(|&e| e as i64).collect();
            let t = MonodromyTuple::validate(pm, &exps).expect("oracle members are valid");
            pgonal::strata::canonical_form(&t)
        })
        .collect();

    let mut block_class: Vec<Option<&StratumClass>> = vec![None; part.block_count];
    let mut strata_agree = true;
    for (idx, class) in canon.iter().enumerate() {
        let b = part.block_of[idx] as usize;
        match block_class[b] {
            None => block_class[b] = Some(class),
            Some(prev) => strata_agree &= prev == class,
        }
    }
    let mut classes: Vec<&StratumClass> = block_class
        .iter()
        .map(|c| c.expect("every block has a member"))
        .collect();
    classes.sort_unstable();
    classes.dedup();
    strata_agree &= classes.len() == part.block_count;
    let enumerated = enumerate_strata(pm, r);
    strata_agree &= classes
        .iter()
        .map(|c| (*c).clone())
        .eq(enumerated.iter().cloned());

    // piece classes: scan all nonzero pairs against the independent orbits
    let ppart = pclass_orbit_bruteforce(pm)
        .map_err(|e| CliError::Domain(format!("p = {p}: {e}")))?;
    let mut block_label: Vec<Option<u64>> = vec![None; ppart.block_count];
    let mut pclass_agree = ppart.block_count as u64 == p.div_ceil(2);
    for (idx, &code) in ppart.members.iter().enumerate() {
        let pair = decode_tuple(code, p, 2);
        let a = Residue::normalize(pair[0] as i64, pm);
        let b = Residue::normalize(pair[1] as i64, pm);
        let label = p_class(a, b).expect("nonzero pair");
        let blk = ppart.block_of[idx] as usize;
        match block_label[blk] {
            None => block_label[blk] = Some(label),
            Some(prev) => pclass_agree &= prev == label,
        }
    }
    let mut labels: Vec<u64> = block_label.iter().map(|l| l.expect("nonempty")).collect();
    labels.sort_unstable();
    labels.dedup();
    pclass_agree &= labels.len() == ppart.block_count;

    #[derive(Serialize)]
    struct Params {
        p: u64,
        r: u64,
    }
    #[derive(Serialize)]
    struct Results {
        tuples_checked: usize,
        oracle_blocks: usize,
        engine_classes: usize,
        strata_agree: bool,
        pclass_pairs_checked: usize,
        pclass_blocks: usize,
        pclass_expected: u64,
        pclass_agree: bool,
    }

    let ok = strata_agree && pclass_agree;
    let results = Results {
        tuples_checked: part.members.len(),
        oracle_blocks: part.block_count,
        engine_classes: enumerated.len(),
        strata_agree,
        pclass_pairs_checked: ppart.members.len(),
        pclass_blocks: ppart.block_count,
        pclass_expected: p.div_ceil(2),
        pclass_agree,
    };
    Report::new("verify", Params { p, r }, results, ok).emit(out)?;
    if !ok {
        return Err(CliError::Verification(format!(
            "brute force disagrees at p = {p}, r = {r} (strata: {strata_agree}, pieces: {pclass_agree})"
        )));
    }
    Ok(())
}
