//! `gr-braid`: apply braid maps and crystal operators, translate
//! between the three pictures, inspect and mutate cluster seeds, and
//! run the verification suites.
//!
//! Exit codes: 0 success / all checks pass, 1 verification failure,
//! 2 usage error (including malformed input files).

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gr_braid_core::braid_sigma::sigma_word;
use gr_braid_core::cluster_seed::{initial_seed, Seed};
use gr_braid_core::ext_crystal::ExtElement;
use gr_braid_core::grothendieck::{locate, rank2_braid, DominantMonomial, FundIndex, KPoly};
use gr_braid_core::ms_crystal::{Multisegment, OpKind};
use gr_braid_core::pluecker::{eq_mod, EqOpts, MinorIndex, PlueckerPoly, P61};
use gr_braid_core::translation::{
    commute_check, crystal_commute_check, example63_suite, ext_to_monomial, fund_to_seg,
    monomial_to_ext, phi, phi_of_simple, phi_tuple, seg_to_fund, CommuteReport,
};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gr-braid", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Copy)]
struct OracleArgs {
    /// Trials for the randomized equality oracle
    #[arg(long, default_value_t = 8)]
    trials: usize,
    /// Prime modulus for evaluation
    #[arg(long, default_value_t = P61)]
    prime: u64,
    /// Base seed for the random configurations
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

impl OracleArgs {
    fn opts(self) -> EqOpts {
        EqOpts { trials: self.trials, prime: self.prime, seed: self.seed }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CrystalOp {
    Stats,
    F,
    E,
    Fstar,
    Estar,
    Saito,
    SaitoStar,
    TildeSaito,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtOp {
    EpsHat,
    F,
    E,
    R,
    Embed,
    GradeShift,
}

#[derive(Clone, Copy, ValueEnum)]
enum KringOp {
    T,
    T1,
    Shift,
    Dual,
    Locate,
    Rank2r,
}

#[derive(Clone, Copy, ValueEnum)]
enum TranslateOp {
    Phi,
    PhiTuple,
    Seg2fund,
    Fund2seg,
    Ext2monomial,
    Monomial2ext,
}

#[derive(Subcommand)]
enum Command {
    /// Multisegment crystal statistics and operators
    Crystal {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum)]
        op: CrystalOp,
        /// Crystal index in [1, rank]
        #[arg(long)]
        i: usize,
        /// Multisegment JSON file ('-' for stdin); empty element when omitted
        #[arg(long)]
        input: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Extended crystal operators and braid maps
    Extcrystal {
        #[arg(long)]
        rank: usize,
        #[arg(long, value_enum)]
        op: ExtOp,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        k: Option<i64>,
        /// Grade translation for grade-shift
        #[arg(long)]
        t: Option<i64>,
        /// Element JSON file ('-' for stdin); for embed: a multisegment
        #[arg(long)]
        input: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Apply a braid word to a Plücker polynomial
    Sigma {
        #[arg(long)]
        m: usize,
        /// Braid word applied left to right, e.g. "1 2 1"
        #[arg(long)]
        word: String,
        /// Single variable as a comma list, e.g. 1,3,4
        #[arg(long)]
        var: Option<String>,
        /// Polynomial JSON file ('-' for stdin)
        #[arg(long)]
        input: Option<String>,
        /// Print the raw expansion without recognizing single variables
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Grothendieck-ring side: shifts, duals, braid maps, index bookkeeping
    Kring {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        op: KringOp,
        #[arg(long)]
        i: Option<usize>,
        /// Spectral parameter (for locate)
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        /// Polynomial (list of {coeff, monomial}) or monomial JSON ('-' for stdin)
        #[arg(long)]
        input: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Dictionaries between crystals, classes and Plücker coordinates
    Translate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        op: TranslateOp,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
        #[arg(long)]
        k: Option<i64>,
        #[arg(long)]
        input: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Cluster seeds: initial data and mutation
    Seed {
        #[command(subcommand)]
        cmd: SeedCmd,
    },
    /// Verification suites; exit 1 on any failed check
    Verify {
        #[command(subcommand)]
        cmd: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum SeedCmd {
    /// Print the initial seed for the given grid
    Show {
        #[arg(long)]
        m: usize,
        #[arg(long = "N")]
        n_cols: usize,
    },
    /// Mutate along a path of vertices, e.g. --path "1,1 2,2"
    Mutate {
        #[arg(long)]
        m: usize,
        #[arg(long = "N")]
        n_cols: usize,
        #[arg(long)]
        path: String,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// The rank-2 worked-identity suite
    Example63 {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Ring-side commuting diagram on a window of fundamentals
    Commute {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        /// Spectral window, two integers: LO HI
        #[arg(long, num_args = 2)]
        window: Vec<i64>,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Crystal-side commuting diagram on elements with known images
    CrystalCommute {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        /// Optional JSON array of extended-crystal elements
        #[arg(long)]
        input: Option<String>,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn parse_word(word: &str, max: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in word.split([' ', ',']).filter(|t| !t.is_empty()) {
        let i: usize = tok.parse().with_context(|| format!("braid letter {tok:?}"))?;
        if i < 1 || i > max {
            bail!("braid letter {i} out of range [1,{max}]");
        }
        out.push(i);
    }
    Ok(out)
}

fn require<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("missing required flag --{flag} for this operation"))
}

/// Parse the bare-list polynomial format, wrapping it with the rank.
fn parse_kpoly(text: &str, n: usize) -> Result<KPoly> {
    let terms: serde_json::Value = serde_json::from_str(text).context("polynomial JSON")?;
    let wrapped = serde_json::json!({ "rank": n, "terms": terms });
    Ok(serde_json::from_value(wrapped)?)
}

fn kpoly_to_bare_json(p: &KPoly) -> Result<serde_json::Value> {
    let v = serde_json::to_value(p)?;
    Ok(v.get("terms").cloned().unwrap_or(serde_json::Value::Array(vec![])))
}

/// Parse a monomial as a JSON list of {i, a, exp}.
fn parse_monomial(text: &str, n: usize) -> Result<DominantMonomial> {
    let vars: serde_json::Value = serde_json::from_str(text).context("monomial JSON")?;
    let arr = vars.as_array().ok_or_else(|| anyhow!("monomial JSON must be an array"))?;
    let mut triples = Vec::new();
    for v in arr {
        let field = |key: &str| {
            v.get(key).cloned().ok_or_else(|| anyhow!("monomial entry missing {key:?}"))
        };
        let i = field("i")?.as_u64().ok_or_else(|| anyhow!("\"i\" must be a positive integer"))?;
        let a = field("a")?.as_i64().ok_or_else(|| anyhow!("\"a\" must be an integer"))?;
        let e = field("exp")?
            .as_u64()
            .ok_or_else(|| anyhow!("\"exp\" must be a positive integer"))?;
        triples.push((i as usize, a, e as u32));
    }
    Ok(DominantMonomial::from_vars(n, &triples)?)
}

fn monomial_to_bare_json(m: &DominantMonomial) -> serde_json::Value {
    let vars: Vec<serde_json::Value> = m
        .vars()
        .map(|(f, e)| serde_json::json!({ "i": f.i, "a": f.a, "exp": e }))
        .collect();
    serde_json::Value::Array(vars)
}

/// Try to recognize the polynomial as `±P_K` (or a constant) in the
/// quotient; used by the text output of `sigma`.
fn recognize(p: &PlueckerPoly, opts: EqOpts) -> Result<Option<String>> {
    if p.is_zero() {
        return Ok(Some("0".to_string()));
    }
    if p.num_terms() == 1 && p.degree() == 0 {
        return Ok(Some(p.constant_term().to_string()));
    }
    let m = p.width();
    let (lo, hi) = match p.index_hull() {
        Some(h) => h,
        None => return Ok(None),
    };
    let (lo, hi) = (lo - m as i64, hi + m as i64);
    if (hi - lo) as usize > m + 24 {
        return Ok(None);
    }
    let probe = EqOpts { trials: 1, ..opts };
    let mut stack: Vec<i64> = Vec::new();
    let mut found: Option<String> = None;
    fn rec(
        next: i64,
        hi: i64,
        m: usize,
        stack: &mut Vec<i64>,
        p: &PlueckerPoly,
        probe: EqOpts,
        full: EqOpts,
        found: &mut Option<String>,
    ) -> Result<()> {
        if found.is_some() {
            return Ok(());
        }
        if stack.len() == m {
            let idx = MinorIndex::new(stack.clone()).expect("increasing");
            if idx.is_frozen() {
                return Ok(());
            }
            let cand = PlueckerPoly::var(idx);
            for (sign, c) in [("", cand.clone()), ("-", cand.neg())] {
                if eq_mod(p, &c, probe)? && eq_mod(p, &c, full)? {
                    *found = Some(format!("{sign}{c}"));
                    return Ok(());
                }
            }
            return Ok(());
        }
        let need = (m - stack.len()) as i64;
        for x in next..=(hi - need + 1) {
            stack.push(x);
            rec(x + 1, hi, m, stack, p, probe, full, found)?;
            stack.pop();
            if found.is_some() {
                return Ok(());
            }
        }
        Ok(())
    }
    rec(lo, hi, m, &mut stack, p, probe, opts, &mut found)?;
    Ok(found)
}

fn print_report(report: &CommuteReport, format: Format, label: &str) -> i32 {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(report).expect("report JSON"));
        }
        Format::Text => {
            for case in &report.cases {
                if case.equal {
                    println!("PASS {label} {}", case.case);
                } else {
                    println!("FAIL {label} {} (lhs={}, rhs={})", case.case, case.lhs, case.rhs);
                    if let Some(w) = &case.witness {
                        println!(
                            "     witness: trial {} seed {} range [{},{}] p={} lhs={} rhs={}",
                            w.trial, w.config_seed, w.lo, w.hi, w.prime, w.lhs, w.rhs
                        );
                    }
                }
            }
            let total = report.cases.len();
            let passed = report.cases.iter().filter(|c| c.equal).count();
            println!("{passed}/{total} checks passed (trials={}, prime={}, seed={})",
                report.trials, report.prime, report.seed);
        }
    }
    if report.all_equal() {
        0
    } else {
        1
    }
}

/// Curated crystal-commute cases: graded segments and the rank-2
/// composites, filtered to elements whose images are known on both
/// sides of the diagram.
fn curated_crystal_cases(n: usize, i: usize) -> Result<Vec<ExtElement>> {
    let mut candidates = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            for k in [0i64, 1] {
                candidates.push(ExtElement::segment_at(a, b, k, n)?);
            }
        }
    }
    if n == 2 {
        let dual_pair = {
            let mut e = ExtElement::segment_at(1, 1, 0, 2)?;
            let mut entry = e.entry(1);
            entry.add(gr_braid_core::ms_crystal::Segment::new(1, 1, 2)?, 1);
            e.set(1, entry)?;
            e
        };
        let single = ExtElement::segment_at(1, 1, 0, 2)?;
        candidates.push(single.braid_r(2)?);
        candidates.push(dual_pair.clone());
        candidates.push(dual_pair.braid_r(2)?);
    }
    let mut kept = Vec::new();
    for b in candidates {
        let before = ext_to_monomial(&b)?;
        let after = ext_to_monomial(&b.braid_r(i)?)?;
        if phi_of_simple(&before)?.is_some() && phi_of_simple(&after)?.is_some() {
            kept.push(b);
        }
    }
    Ok(kept)
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Crystal { rank, op, i, input, format } => {
            let m = match input {
                Some(path) => serde_json::from_str::<Multisegment>(&read_input(&path)?)
                    .context("multisegment JSON")?,
                None => Multisegment::one(rank)?,
            };
            if m.rank() != rank {
                bail!("input rank {} does not match --rank {rank}", m.rank());
            }
            match op {
                CrystalOp::Stats => {
                    let st = m.stats(i)?;
                    let value = serde_json::json!({
                        "eps": st.eps,
                        "eps_star": st.eps_star,
                        "phi": st.phi,
                        "phi_star": st.phi_star,
                        "wt_i": st.wt_i,
                    });
                    match format {
                        Format::Json => println!("{value}"),
                        Format::Text => println!(
                            "eps={} eps*={} phi={} phi*={} <h_i,wt>={}",
                            st.eps, st.eps_star, st.phi, st.phi_star, st.wt_i
                        ),
                    }
                }
                CrystalOp::F | CrystalOp::E | CrystalOp::Fstar | CrystalOp::Estar => {
                    let kind = match op {
                        CrystalOp::F => OpKind::F,
                        CrystalOp::E => OpKind::E,
                        CrystalOp::Fstar => OpKind::FStar,
                        CrystalOp::Estar => OpKind::EStar,
                        _ => unreachable!(),
                    };
                    match m.apply(kind, i)? {
                        Some(out) => match format {
                            Format::Json => println!("{}", serde_json::to_string(&out)?),
                            Format::Text => println!("{out}"),
                        },
                        None => match format {
                            Format::Json => println!("null"),
                            Format::Text => println!("0"),
                        },
                    }
                }
                CrystalOp::Saito | CrystalOp::SaitoStar | CrystalOp::TildeSaito => {
                    let out = match op {
                        CrystalOp::Saito => m.saito(i)?,
                        CrystalOp::SaitoStar => m.saito_star(i)?,
                        CrystalOp::TildeSaito => m.tilde_saito(i)?,
                        _ => unreachable!(),
                    };
                    match format {
                        Format::Json => println!("{}", serde_json::to_string(&out)?),
                        Format::Text => println!("{out}"),
                    }
                }
            }
            Ok(0)
        }
        Command::Extcrystal { rank, op, i, k, t, input, format } => {
            let print_elem = |b: &ExtElement| -> Result<()> {
                match format {
                    Format::Json => println!("{}", serde_json::to_string(b)?),
                    Format::Text => println!("{b}"),
                }
                Ok(())
            };
            match op {
                ExtOp::Embed => {
                    let ms = match input {
                        Some(path) => serde_json::from_str::<Multisegment>(&read_input(&path)?)
                            .context("multisegment JSON")?,
                        None => Multisegment::one(rank)?,
                    };
                    print_elem(&ExtElement::embed(ms, require(k, "k")?))?;
                }
                _ => {
                    let b = match input {
                        Some(path) => serde_json::from_str::<ExtElement>(&read_input(&path)?)
                            .context("extended element JSON")?,
                        None => ExtElement::one(rank)?,
                    };
                    if b.rank() != rank {
                        bail!("input rank {} does not match --rank {rank}", b.rank());
                    }
                    match op {
                        ExtOp::EpsHat => {
                            println!("{}", b.eps_hat(require(i, "i")?, require(k, "k")?)?)
                        }
                        ExtOp::F => {
                            print_elem(&b.f_op(require(i, "i")?, require(k, "k")?)?)?
                        }
                        ExtOp::E => match b.e_op(require(i, "i")?, require(k, "k")?)? {
                            Some(out) => print_elem(&out)?,
                            None => match format {
                                Format::Json => println!("null"),
                                Format::Text => println!("0"),
                            },
                        },
                        ExtOp::R => print_elem(&b.braid_r(require(i, "i")?)?)?,
                        ExtOp::GradeShift => print_elem(&b.grade_shift(require(t, "t")?))?,
                        ExtOp::Embed => unreachable!(),
                    }
                }
            }
            Ok(0)
        }
        Command::Sigma { m, word, var, input, raw, oracle, format } => {
            if m < 2 {
                bail!("--m must be at least 2");
            }
            let p = match (var, input) {
                (Some(v), None) => {
                    let entries: Vec<i64> = v
                        .split(',')
                        .map(|t| t.trim().parse().with_context(|| format!("index {t:?}")))
                        .collect::<Result<_>>()?;
                    if entries.len() != m {
                        bail!("--var must list exactly m={m} indices");
                    }
                    PlueckerPoly::var(MinorIndex::new(entries).map_err(|e| anyhow!("{e}"))?)
                }
                (None, Some(path)) => {
                    let p: PlueckerPoly = serde_json::from_str(&read_input(&path)?)
                        .context("polynomial JSON")?;
                    if p.width() != m {
                        bail!("input width {} does not match --m {m}", p.width());
                    }
                    p
                }
                _ => bail!("exactly one of --var or --input is required"),
            };
            let word = parse_word(&word, m - 1)?;
            let out = sigma_word(&word, &p)?;
            match format {
                Format::Json => println!("{}", serde_json::to_string(&out)?),
                Format::Text => {
                    if !raw {
                        if let Some(s) = recognize(&out, oracle.opts())? {
                            println!("{s}");
                            return Ok(0);
                        }
                    }
                    println!("{out}");
                }
            }
            Ok(0)
        }
        Command::Kring { n, op, i, a, k, input, format } => {
            match op {
                KringOp::Locate => {
                    let f = FundIndex::new(require(i, "i")?, require(a, "a")?, n)?;
                    let (pow, base) = locate(f, n);
                    match format {
                        Format::Json => println!(
                            "{}",
                            serde_json::json!({ "k": pow, "base": { "i": base.i, "a": base.a } })
                        ),
                        Format::Text => println!("D^{pow} of Y_{{{},{}}}", base.i, base.a),
                    }
                }
                KringOp::Rank2r => {
                    let text = read_input(&require(input, "input")?)?;
                    let mono = parse_monomial(&text, n)?;
                    let out = rank2_braid(require(i, "i")?, &mono)?;
                    match format {
                        Format::Json => println!("{}", monomial_to_bare_json(&out)),
                        Format::Text => println!("{out}"),
                    }
                }
                KringOp::T | KringOp::T1 | KringOp::Shift | KringOp::Dual => {
                    let text = read_input(&require(input, "input")?)?;
                    let p = parse_kpoly(&text, n)?;
                    let out = match op {
                        KringOp::T => p.braid_t(require(i, "i")?)?,
                        KringOp::T1 => p.braid_t1()?,
                        KringOp::Shift => p.shift(require(k, "k")?),
                        KringOp::Dual => p.dual(),
                        _ => unreachable!(),
                    };
                    match format {
                        Format::Json => println!("{}", kpoly_to_bare_json(&out)?),
                        Format::Text => println!("{out}"),
                    }
                }
            }
            Ok(0)
        }
        Command::Translate { n, op, i, a, b, k, input, format } => {
            match op {
                TranslateOp::PhiTuple => {
                    let f = FundIndex::new(require(i, "i")?, require(a, "a")?, n)?;
                    let idx = phi_tuple(f, n)?;
                    match format {
                        Format::Json => println!("{}", serde_json::to_string(idx.entries())?),
                        Format::Text => println!("{idx}"),
                    }
                }
                TranslateOp::Phi => {
                    let text = read_input(&require(input, "input")?)?;
                    let p = parse_kpoly(&text, n)?;
                    let out = phi(&p)?;
                    match format {
                        Format::Json => println!("{}", serde_json::to_string(&out)?),
                        Format::Text => println!("{out}"),
                    }
                }
                TranslateOp::Seg2fund => {
                    let (sa, sb) = (require(a, "a")?, require(b, "b")?);
                    if sa < 1 || sb < 1 {
                        bail!("segment bounds must be positive");
                    }
                    let f = seg_to_fund(sa as usize, sb as usize, k.unwrap_or(0), n)?;
                    match format {
                        Format::Json => {
                            println!("{}", serde_json::json!({ "i": f.i, "a": f.a }))
                        }
                        Format::Text => println!("{f}"),
                    }
                }
                TranslateOp::Fund2seg => {
                    let f = FundIndex::new(require(i, "i")?, require(a, "a")?, n)?;
                    let (sa, sb, sk) = fund_to_seg(f, n)?;
                    match format {
                        Format::Json => {
                            println!("{}", serde_json::json!({ "a": sa, "b": sb, "k": sk }))
                        }
                        Format::Text => {
                            if sa == sb {
                                println!("[{sa}]_{{{sk}}}")
                            } else {
                                println!("[{sa},{sb}]_{{{sk}}}")
                            }
                        }
                    }
                }
                TranslateOp::Ext2monomial => {
                    let text = read_input(&require(input, "input")?)?;
                    let e: ExtElement =
                        serde_json::from_str(&text).context("extended element JSON")?;
                    if e.rank() != n {
                        bail!("input rank {} does not match --n {n}", e.rank());
                    }
                    let mono = ext_to_monomial(&e)?;
                    match format {
                        Format::Json => println!("{}", monomial_to_bare_json(&mono)),
                        Format::Text => println!("{mono}"),
                    }
                }
                TranslateOp::Monomial2ext => {
                    let text = read_input(&require(input, "input")?)?;
                    let mono = parse_monomial(&text, n)?;
                    let e = monomial_to_ext(&mono)?;
                    match format {
                        Format::Json => println!("{}", serde_json::to_string(&e)?),
                        Format::Text => println!("{e}"),
                    }
                }
            }
            Ok(0)
        }
        Command::Seed { cmd } => {
            match cmd {
                SeedCmd::Show { m, n_cols } => {
                    let s = initial_seed(m, n_cols)?;
                    println!("{}", serde_json::to_string_pretty(&s)?);
                }
                SeedCmd::Mutate { m, n_cols, path } => {
                    let mut s: Seed = initial_seed(m, n_cols)?;
                    for tok in path.split_whitespace() {
                        let (a, b) = tok
                            .split_once(',')
                            .ok_or_else(|| anyhow!("vertex {tok:?}: expected a,b"))?;
                        let v = (
                            a.trim().parse::<i64>().with_context(|| format!("vertex {tok:?}"))?,
                            b.trim().parse::<i64>().with_context(|| format!("vertex {tok:?}"))?,
                        );
                        s = s.mutate(v)?;
                    }
                    println!("{}", serde_json::to_string_pretty(&s)?);
                }
            }
            Ok(0)
        }
        Command::Verify { cmd } => match cmd {
            VerifyCmd::Example63 { oracle, format } => {
                let report = example63_suite(oracle.opts())?;
                Ok(print_report(&report, format, "example63"))
            }
            VerifyCmd::Commute { n, i, window, oracle, format } => {
                let (lo, hi) = (window[0], window[1]);
                if lo > hi {
                    bail!("window LO must not exceed HI");
                }
                let report = commute_check(i, n, (lo, hi), oracle.opts())?;
                Ok(print_report(&report, format, "commute"))
            }
            VerifyCmd::CrystalCommute { n, i, input, oracle, format } => {
                let cases = match input {
                    Some(path) => serde_json::from_str::<Vec<ExtElement>>(&read_input(&path)?)
                        .context("case list JSON")?,
                    None => curated_crystal_cases(n, i)?,
                };
                let report = crystal_commute_check(i, n, &cases, oracle.opts())?;
                Ok(print_report(&report, format, "crystal-commute"))
            }
        },
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(0) => ExitCode::SUCCESS,
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
