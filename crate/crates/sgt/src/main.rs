use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use sgt::assembly::{analyze, is_assembly};
use sgt::census::{classify, enumerate_bands, enumerate_semigroups, CensusFlags};
use sgt::constructions::{
    chain_assembly, coset_assembly, cyclic_group, left_zero_band, load_group, rees_matrix,
    rees_paper, right_zero_band, with_zero, ReesSpec,
};
use sgt::format::{parse_file, render, Kind};
use sgt::morphisms::{
    components, enumerate_homomorphisms, image, is_injective_hom, kernel, HomMap, HomVerdict,
};
use sgt::report::{json_report, text_report};
use sgt::substructures::{centre, is_subassembly, SubassemblyVerdict};
use sgt::table::{
    are_isomorphic, direct_product, power_semigroup, ElementId, GroupTable, SubsetRef, TableRef,
};
use sgt::{Caps, Error};

#[derive(Parser)]
#[command(
    name = "sgt",
    version,
    about = "Finite semigroup tables: validation, assembly analysis, constructions, census"
)]
struct Cli {
    /// Raise or lower every order cap (products, powers, isomorphism, groups, bands)
    #[arg(long, global = true, value_name = "N")]
    cap_order: Option<usize>,
    /// Guard on the number of candidate maps a homomorphism search may visit
    #[arg(long, global = true, value_name = "N")]
    cap_maps: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

impl Cli {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(n) = self.cap_order {
            caps.product_order = n;
            caps.power_base = n;
            caps.iso_order = n;
            caps.group_order = n;
            caps.band_search_order = n;
            caps.band_pool_order = n;
        }
        if let Some(m) = self.cap_maps {
            caps.hom_candidates = m;
        }
        caps
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a table file and check associativity (and the group laws for kind: group)
    Validate { file: PathBuf },
    /// Run the axiom analysis on a table file
    Analyze {
        file: PathBuf,
        /// Report format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build a table and print it (or write it with -o)
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Count, list, or check homomorphisms between two tables
    Hom {
        source: PathBuf,
        target: PathBuf,
        /// Check one map given as "x->u,y->v" over the source element names
        #[arg(long, value_name = "MAP", conflicts_with_all = ["all", "count"])]
        map: Option<String>,
        /// Print every homomorphism, one per line
        #[arg(long, conflicts_with = "count")]
        all: bool,
        /// Print only the number of homomorphisms (the default)
        #[arg(long)]
        count: bool,
    },
    /// Decide whether a set of elements forms a subassembly
    Sub {
        file: PathBuf,
        /// Comma separated element names
        #[arg(long, value_name = "NAMES")]
        subset: String,
    },
    /// Print the elements that commute with everything
    Centre { file: PathBuf },
    /// Search for an isomorphism between two tables
    Iso { a: PathBuf, b: PathBuf },
    /// Enumerate all multiplication tables up to isomorphism, order by order
    Census {
        /// Largest order to enumerate (semigroups to 5 with --slow, bands to 6)
        #[arg(long, value_name = "N")]
        max_order: usize,
        /// Attach axiom and structure flags to every class
        #[arg(long)]
        classify: bool,
        /// Write each class to DIR as a table file
        #[arg(long, value_name = "DIR")]
        emit: Option<PathBuf>,
        /// Allow the expensive order 5 semigroup run
        #[arg(long)]
        slow: bool,
        /// Enumerate bands (idempotent tables) instead of all semigroups
        #[arg(long)]
        bands: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutArg {
    /// Write the table here instead of printing it
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// Cyclic group of order n
    Cyclic {
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Chain of idempotents: x * y = min(x, y)
    Chain {
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Left zero band: x * y = x
    LeftZero {
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Right zero band: x * y = y
    RightZero {
        n: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Append a fresh absorbing element to a table
    WithZero {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Componentwise direct product of two tables
    Product {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Non-empty subsets of a table under setwise product
    Power {
        file: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Rees matrix semigroup over a group, sandwich rows given as "a,b;c,d"
    Rees {
        group: PathBuf,
        /// Sandwich matrix: rows separated by ';', entries by ','
        matrix: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// The eight element Rees example over {1,-1} with sandwich [[1,-1],[1,1]]
    ReesPaper {
        #[command(flatten)]
        out: OutArg,
    },
    /// Union of the quotients of a group by each of its normal subgroups
    CosetAssembly {
        group: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Direct product of a semilattice (commutative band) with a group
    SemilatticeGroup {
        semilattice: PathBuf,
        group: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion => 0u8,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let caps = cli.caps();
    match run(cli.cmd, &caps) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cmd: Cmd, caps: &Caps) -> sgt::Result<()> {
    match cmd {
        Cmd::Validate { file } => {
            let parsed = parse_file(&file)?;
            parsed.table.require_associative()?;
            println!(
                "ok: {} of order {}",
                parsed.kind.label(),
                parsed.table.order()
            );
            Ok(())
        }
        Cmd::Analyze { file, format } => {
            let parsed = parse_file(&file)?;
            let a = analyze(&parsed.table)?;
            match format {
                Format::Json => print!("{}", json_report(parsed.kind, &a)),
                Format::Text => print!("{}", text_report(parsed.kind, &a)),
            }
            Ok(())
        }
        Cmd::Construct(what) => construct(what, caps),
        Cmd::Hom {
            source,
            target,
            map,
            all,
            count: _,
        } => hom_cmd(&source, &target, map, all, caps),
        Cmd::Sub { file, subset } => sub_cmd(&file, &subset),
        Cmd::Centre { file } => {
            let t = parse_file(&file)?.table;
            let c = centre(&t)?;
            if c.is_empty() {
                println!("empty");
            } else {
                println!("{}", c.names().join(" "));
            }
            Ok(())
        }
        Cmd::Iso { a, b } => {
            let ta = parse_file(&a)?.table;
            let tb = parse_file(&b)?.table;
            match are_isomorphic(&ta, &tb, caps)? {
                Some(m) => {
                    let desc = ta
                        .elements()
                        .map(|x| format!("{}->{}", ta.name(x), tb.name(m[x.0])))
                        .collect::<Vec<_>>()
                        .join(" ");
                    println!("isomorphic: {desc}");
                }
                None => println!("not isomorphic"),
            }
            Ok(())
        }
        Cmd::Census {
            max_order,
            classify: do_classify,
            emit,
            slow,
            bands,
        } => census_cmd(max_order, do_classify, emit, slow, bands),
    }
}

fn emit_table(text: &str, path: Option<&Path>) -> sgt::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::InvalidTable(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_matrix(g: &GroupTable, spec: &str) -> sgt::Result<Vec<Vec<ElementId>>> {
    let base = g.base();
    let mut rows = Vec::new();
    for row in spec.split(';') {
        let mut cells = Vec::new();
        for cell in row.split(',') {
            let name = cell.trim();
            match base.element(name) {
                Some(x) => cells.push(x),
                None => {
                    return Err(Error::Precondition(format!(
                        "{name:?} is not an element of the group"
                    )))
                }
            }
        }
        rows.push(cells);
    }
    Ok(rows)
}

fn construct(what: ConstructCmd, caps: &Caps) -> sgt::Result<()> {
    let (kind, table, out) = match what {
        ConstructCmd::Cyclic { n, out } => (Kind::Group, cyclic_group(n)?, out),
        ConstructCmd::Chain { n, out } => (Kind::Semigroup, chain_assembly(n)?, out),
        ConstructCmd::LeftZero { n, out } => (Kind::Semigroup, left_zero_band(n)?, out),
        ConstructCmd::RightZero { n, out } => (Kind::Semigroup, right_zero_band(n)?, out),
        ConstructCmd::WithZero { file, out } => {
            let t = parse_file(&file)?.table;
            (Kind::Semigroup, with_zero(&t)?, out)
        }
        ConstructCmd::Product { a, b, out } => {
            let ta = parse_file(&a)?.table;
            let tb = parse_file(&b)?.table;
            (Kind::Semigroup, direct_product(&ta, &tb, caps)?, out)
        }
        ConstructCmd::Power { file, out } => {
            let t = parse_file(&file)?.table;
            (Kind::Semigroup, power_semigroup(&t, caps)?, out)
        }
        ConstructCmd::Rees { group, matrix, out } => {
            let g = load_group(&group)?;
            let matrix = parse_matrix(&g, &matrix)?;
            let spec = ReesSpec { group: g, matrix };
            (Kind::Semigroup, rees_matrix(&spec)?, out)
        }
        ConstructCmd::ReesPaper { out } => (Kind::Semigroup, rees_paper()?, out),
        ConstructCmd::CosetAssembly { group, out } => {
            let g = load_group(&group)?;
            (Kind::Semigroup, coset_assembly(&g, caps)?.table, out)
        }
        ConstructCmd::SemilatticeGroup {
            semilattice,
            group,
            out,
        } => {
            let s = parse_file(&semilattice)?.table;
            s.require_associative()?;
            if !s.is_semilattice() {
                return Err(Error::Precondition(
                    "the first operand must be a semilattice (commutative, all idempotent)".into(),
                ));
            }
            let g = load_group(&group)?;
            (Kind::Semigroup, direct_product(&s, g.base(), caps)?, out)
        }
    };
    emit_table(&render(kind, &table), out.output.as_deref())
}

fn parse_map(s: &TableRef, t: &TableRef, spec: &str) -> sgt::Result<Vec<ElementId>> {
    let mut assigned: Vec<Option<ElementId>> = vec![None; s.order()];
    for pair in spec.split(',') {
        let pair = pair.trim();
        if pair.is_empty() {
            continue;
        }
        let (from, to) = pair.split_once("->").ok_or_else(|| {
            Error::Precondition(format!("map entry {pair:?} is not of the form x->y"))
        })?;
        let from = from.trim();
        let to = to.trim();
        let x = s.element(from).ok_or_else(|| {
            Error::Precondition(format!("{from:?} is not an element of the source"))
        })?;
        let v = t.element(to).ok_or_else(|| {
            Error::Precondition(format!("{to:?} is not an element of the target"))
        })?;
        if assigned[x.0].is_some() {
            return Err(Error::Precondition(format!("{from:?} is mapped twice")));
        }
        assigned[x.0] = Some(v);
    }
    let mut map = Vec::with_capacity(s.order());
    for (i, slot) in assigned.into_iter().enumerate() {
        match slot {
            Some(v) => map.push(v),
            None => {
                return Err(Error::Precondition(format!(
                    "source element {} has no image",
                    s.name(ElementId(i))
                )))
            }
        }
    }
    Ok(map)
}

fn hom_cmd(
    source: &Path,
    target: &Path,
    map: Option<String>,
    all: bool,
    caps: &Caps,
) -> sgt::Result<()> {
    let s = parse_file(source)?.table;
    let t = parse_file(target)?.table;
    if let Some(spec) = map {
        let hom = HomMap::new(&s, &t, parse_map(&s, &t, &spec)?)?;
        for line in describe_hom(&hom)? {
            println!("{line}");
        }
        return Ok(());
    }
    let homs = enumerate_homomorphisms(&s, &t, caps)?;
    if all {
        for h in &homs {
            println!("{}", h.describe());
        }
    } else {
        println!("{}", homs.len());
    }
    Ok(())
}

// Collected before printing so an inconsistency aborts with no partial output.
fn describe_hom(hom: &HomMap) -> sgt::Result<Vec<String>> {
    let s = &hom.source;
    if let HomVerdict::FailsAt(x, y) = hom.verify()? {
        return Ok(vec![format!(
            "not a homomorphism: first failure at ({},{})",
            s.name(x),
            s.name(y)
        )]);
    }
    let mut lines = vec!["homomorphism".to_string()];
    if is_assembly(&hom.source)? && is_assembly(&hom.target)? {
        lines.push(format!("kernel: {}", kernel(hom)?.names().join(" ")));
        lines.push(format!("image: {}", image(hom)?.names().join(" ")));
        for c in components(hom)? {
            lines.push(format!(
                "component {} -> {}: {}",
                s.name(c.source_idempotent),
                hom.target.name(c.target_idempotent),
                if c.injective { "injective" } else { "collapsing" }
            ));
        }
        lines.push(format!(
            "injective: {}",
            if is_injective_hom(hom)? { "yes" } else { "no" }
        ));
    }
    Ok(lines)
}

fn sub_cmd(file: &Path, members: &str) -> sgt::Result<()> {
    let t = parse_file(file)?.table;
    let a = analyze(&t)?;
    let list: Vec<&str> = members
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let subset = SubsetRef::by_names(&t, &list)?;
    match is_subassembly(&a, &subset)? {
        SubassemblyVerdict::Yes => println!("subassembly"),
        SubassemblyVerdict::Escapes(x, y) => {
            let s = a.s_map.as_ref().expect("assembly has an s map");
            println!(
                "not a subassembly: {} * s({}) = {} escapes",
                t.name(x),
                t.name(y),
                t.name(t.product(x, s[y.0]))
            );
        }
    }
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn census_cmd(
    max_order: usize,
    do_classify: bool,
    emit: Option<PathBuf>,
    slow: bool,
    bands: bool,
) -> sgt::Result<()> {
    if let Some(dir) = &emit {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::InvalidTable(format!("cannot create {}: {e}", dir.display())))?;
    }
    for n in 1..=max_order {
        let mut census = if bands {
            enumerate_bands(n)?
        } else {
            enumerate_semigroups(n, slow)?
        };
        if do_classify {
            classify(&mut census)?;
        }
        println!(
            "order {}: {} classes, {} labelled",
            n,
            census.classes(),
            census.labeled
        );
        if do_classify {
            let count = |pick: fn(&CensusFlags) -> bool| {
                census
                    .records
                    .iter()
                    .filter(|r| pick(&r.flags.expect("classified")))
                    .count()
            };
            println!(
                "  assemblies {} (strong {}), union of groups {}, bands {}, commutative {}, groups {}",
                count(|f| f.assembly),
                count(|f| f.strong == Some(true)),
                count(|f| f.union_of_groups),
                count(|f| f.band),
                count(|f| f.commutative),
                count(|f| f.group),
            );
        }
        if let Some(dir) = &emit {
            for (i, rec) in census.records.iter().enumerate() {
                let mut text = format!("# class {i} of order {n}\n");
                if let Some(f) = &rec.flags {
                    text.push_str(&format!("# band: {}\n", yes_no(f.band)));
                    text.push_str(&format!("# commutative: {}\n", yes_no(f.commutative)));
                    text.push_str(&format!("# group: {}\n", yes_no(f.group)));
                    text.push_str(&format!("# assembly: {}\n", yes_no(f.assembly)));
                    if let Some(strong) = f.strong {
                        text.push_str(&format!("# strong: {}\n", yes_no(strong)));
                    }
                }
                text.push_str(&render(Kind::Semigroup, &rec.table));
                let name = format!("{}{}-{:03}.sgt", if bands { "b" } else { "s" }, n, i);
                let path = dir.join(name);
                std::fs::write(&path, text).map_err(|e| {
                    Error::InvalidTable(format!("cannot write {}: {e}", path.display()))
                })?;
            }
        }
    }
    Ok(())
}
