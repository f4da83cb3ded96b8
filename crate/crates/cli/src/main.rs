use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde_json::{json, Value};

use monohecke::cells_jring::{hecke_full, verify_axioms, Analysis, AxiomCheck, BasedAlgebra, Label, MatrixChain};
use monohecke::hecke::HeckeAlgebra;
use monohecke::reps::{
    correspondence_identities, extension_identities, hecke_identities, hecke_products, jring_identities, rep_identities, IdentityCheck, IdentityOptions, RepInvariants, RepModel,
    DEFAULT_GROUP_CAP, IDENTITY_NAMES,
};
use monohecke::torus_chars::{CharSpace, TorusChar};
use monohecke::weyl::{Flavor, RootDatum, WeylElt, WeylGroup};

/// Extended Hecke algebras with monodromy: groups, KL polynomials,
/// canonical bases, cells, the ring J and representation invariants.
#[derive(Parser, Debug)]
#[command(name = "monohecke", version)]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Hash)]
struct Config {
    /// Cartan type preset: A1-A4, B2, B3, C3, D4, G2.
    #[arg(long = "type", global = true)]
    cartan_type: Option<String>,
    /// `adjoint`, `sc`, or `file:<path>` for a root datum in JSON.
    #[arg(long, global = true, default_value = "adjoint")]
    lattice: String,
    /// Order of the torsion subgroup of the torus.
    #[arg(long, global = true, default_value_t = 1)]
    n: u32,
    /// Coordinates of λ in X/nX, comma separated; the trivial character by default.
    #[arg(long, global = true)]
    lambda: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; all cores by default.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest group or algebra dimension to build.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP)]
    cap: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
enum AlgebraKind {
    /// H with basis c_{w·λ}.
    Hecke,
    /// The Hecke algebra of W_λ.
    WLambda,
    /// H'_λ = H_λ ⊗ A[Ω_λ].
    Extended,
    /// 1_λ H 1_λ.
    Corner,
    /// The matrix algebra over 1_λ H 1_λ indexed by the orbit of λ.
    Matrix,
    /// H_𝔬 for the orbit of λ.
    Orbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum)]
enum GroupKind {
    /// W ⋉ T_n.
    Full,
    /// W'_λ.
    Stabilizer,
    /// W_λ.
    Reflection,
}

#[derive(Subcommand, Debug, Hash)]
enum Command {
    /// Order, rank, ν and degrees of W.
    Group,
    /// Characters of T_n, their orbits and the groups W_λ, W'_λ, Ω_λ.
    Chars,
    /// KL polynomials of W_λ.
    Kl,
    /// Canonical basis elements in the basis T̂_w 1_λ, or one product.
    Hecke {
        /// Two basis indices `i,j`: print c_i c_j in the canonical basis.
        #[arg(long)]
        product: Option<String>,
    },
    /// a-function, left and two-sided cells, distinguished elements.
    Cells {
        #[arg(long, value_enum, default_value_t = AlgebraKind::Hecke)]
        algebra: AlgebraKind,
    },
    /// Structure constants of J and the set I₀.
    Jring {
        #[arg(long, value_enum, default_value_t = AlgebraKind::Hecke)]
        algebra: AlgebraKind,
    },
    /// Q1-Q11 report.
    Axioms {
        #[arg(long, value_enum, default_value_t = AlgebraKind::Hecke)]
        algebra: AlgebraKind,
    },
    /// Invariant table of the irreducible representations.
    Reps {
        #[arg(long, value_enum, default_value_t = GroupKind::Full)]
        group: GroupKind,
    },
    /// The identity suite on H and the representations of W ⋉ T_n, W'_λ, W_λ.
    Identities {
        /// Run only the named checks (repeatable).
        #[arg(long)]
        only: Vec<String>,
        /// Random tuples per sampled check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Print the check names and exit.
        #[arg(long)]
        list: bool,
    },
}

struct Outcome {
    value: Value,
    pass: bool,
    /// Rows for CSV output, header first.
    table: Option<Vec<Vec<String>>>,
}

impl Outcome {
    fn data(value: Value) -> Self {
        Self { value, pass: true, table: None }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<monohecke::Error> for Failure {
    fn from(e: monohecke::Error) -> Self {
        match e {
            monohecke::Error::UnknownPreset(_) | monohecke::Error::InvalidDatum(_) | monohecke::Error::Io(_) | monohecke::Error::Json(_) => Failure::Usage(e.to_string()),
            e => Failure::Internal(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).format_timestamp(None).init();
    let cli = Cli::parse();
    if let Some(t) = cli.config.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let cache = cache_path(&cli);
    if let Some(path) = cache.as_ref().filter(|p| p.exists()) {
        if let Ok(text) = std::fs::read_to_string(path) {
            info!("using cached output {}", path.display());
            print!("{text}");
            return ExitCode::SUCCESS;
        }
    }
    match run(&cli) {
        Ok(out) => {
            let text = match render(&cli.config, &out) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            print!("{text}");
            if out.pass {
                if let Some(path) = cache {
                    if let Err(e) = std::fs::create_dir_all(path.parent().expect("cache file has a parent")).and_then(|_| std::fs::write(&path, &text)) {
                        log::warn!("could not write cache {}: {e}", path.display());
                    }
                }
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}\n\nRun with --help for usage.");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal failure: {m}");
            ExitCode::from(1)
        }
    }
}

/// Output cache keyed by subcommand and configuration (not thread count),
/// under `MONOHECKE_CACHE_DIR`.
fn cache_path(cli: &Cli) -> Option<PathBuf> {
    let dir = std::env::var_os("MONOHECKE_CACHE_DIR")?;
    if matches!(cli.command, Command::Identities { list: true, .. }) {
        return None;
    }
    let mut h = DefaultHasher::new();
    let c = &cli.config;
    (&c.cartan_type, &c.lattice, c.n, &c.lambda, c.format, c.cap, &cli.command).hash(&mut h);
    if let Some(path) = c.lattice.strip_prefix("file:") {
        std::fs::read(path).ok()?.hash(&mut h);
    }
    Some(PathBuf::from(dir).join(format!("{:016x}.out", h.finish())))
}

fn datum(c: &Config) -> Result<RootDatum, Failure> {
    if let Some(path) = c.lattice.strip_prefix("file:") {
        return Ok(RootDatum::from_file(path)?);
    }
    let flavor = match c.lattice.as_str() {
        "adjoint" | "ad" => Flavor::Adjoint,
        "sc" | "simply-connected" => Flavor::SimplyConnected,
        other => return Err(Failure::Usage(format!("unknown lattice `{other}`; expected adjoint, sc or file:<path>"))),
    };
    let t = c.cartan_type.as_deref().ok_or_else(|| Failure::Usage("--type is required unless --lattice file:<path> is given".into()))?;
    Ok(RootDatum::preset(t, flavor)?)
}

fn space(c: &Config) -> Result<Arc<CharSpace>, Failure> {
    if c.n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    let g = Arc::new(WeylGroup::with_cap(datum(c)?, c.cap)?);
    let sp = Arc::new(CharSpace::new(g, c.n)?);
    if sp.len() * sp.group().order() > c.cap.max(DEFAULT_GROUP_CAP) * 4 {
        return Err(Failure::Usage(format!("W ⋉ T_n has order {}, above the cap", sp.len() * sp.group().order())));
    }
    Ok(sp)
}

fn lambda(c: &Config, sp: &CharSpace) -> Result<TorusChar, Failure> {
    let Some(text) = &c.lambda else { return Ok(sp.trivial()) };
    let coords: Vec<i64> = text.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<_, _>>().map_err(|e| Failure::Usage(format!("--lambda: {e}")))?;
    if coords.len() != sp.group().rank() {
        return Err(Failure::Usage(format!("--lambda needs {} coordinates", sp.group().rank())));
    }
    Ok(sp.checked_index(&coords)?)
}

fn word(g: &WeylGroup, w: WeylElt) -> Vec<usize> {
    g.coxeter().reduced_word(w).iter().map(|s| s + 1).collect()
}

fn label_json(sp: &CharSpace, l: Label) -> Value {
    let g = sp.group();
    match l {
        Label::Coxeter { w } => json!({ "w": word(g, w) }),
        Label::Extended { w, x } => json!({ "w": word(g, w), "x": word(g, x) }),
        Label::Hecke { w, lam } => json!({ "w": word(g, w), "lambda": sp.coords(lam) }),
        Label::Matrix { w, from, to } => json!({ "w": word(g, w), "from": sp.coords(from), "to": sp.coords(to) }),
    }
}

fn label_text(sp: &CharSpace, l: Label) -> String {
    let g = sp.group();
    let w = |w: WeylElt| {
        let s: Vec<String> = word(g, w).iter().map(|s| s.to_string()).collect();
        if s.is_empty() {
            "1".to_string()
        } else {
            format!("s{}", s.join("s"))
        }
    };
    let c = |lam: TorusChar| sp.coords(lam).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    match l {
        Label::Coxeter { w: x } => w(x),
        Label::Extended { w: a, x } => format!("{}⊗{}", w(a), w(x)),
        Label::Hecke { w: x, lam } => format!("{}·({})", w(x), c(lam)),
        Label::Matrix { w: x, from, to } => format!("{}[({}),({})]", w(x), c(from), c(to)),
    }
}

struct Built {
    algebra: BasedAlgebra,
    analysis: Analysis,
    chain: Option<MatrixChain>,
}

fn build(sp: &Arc<CharSpace>, lam: TorusChar, kind: AlgebraKind, cap: usize) -> Result<Built, Failure> {
    info!("building {kind:?} algebra");
    let (algebra, chain) = match kind {
        AlgebraKind::Hecke => {
            let dim = sp.len() * sp.group().order();
            if dim > cap {
                return Err(Failure::Usage(format!("H has dimension {dim}, above the cap {cap}")));
            }
            let h = HeckeAlgebra::new(sp.clone());
            let alg = hecke_full(&h, h.h_table())?;
            (alg, None)
        }
        _ => {
            let chain = MatrixChain::new(sp, lam)?;
            let alg = match kind {
                AlgebraKind::WLambda => chain.coxeter.clone(),
                AlgebraKind::Extended => chain.extended.clone(),
                AlgebraKind::Corner => chain.corner.clone(),
                AlgebraKind::Matrix => chain.matrix.clone(),
                AlgebraKind::Orbit => chain.transported(sp)?,
                AlgebraKind::Hecke => unreachable!(),
            };
            (alg, Some(chain))
        }
    };
    info!("analysing cells of {} (dimension {})", algebra.name(), algebra.dim());
    let analysis = algebra.analyze();
    Ok(Built { algebra, analysis, chain })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let c = &cli.config;
    if let Command::Identities { list: true, .. } = cli.command {
        return Ok(Outcome::data(json!(IDENTITY_NAMES)));
    }
    let sp = space(c)?;
    let lam = lambda(c, &sp)?;
    let header = json!({ "datum": sp.group().datum().name, "n": sp.n() });
    let body = match &cli.command {
        Command::Group => cmd_group(&sp)?,
        Command::Chars => cmd_chars(&sp),
        Command::Kl => cmd_kl(&sp, lam),
        Command::Hecke { product } => cmd_hecke(&sp, product.as_deref())?,
        Command::Cells { algebra } => cmd_cells(&sp, &build(&sp, lam, *algebra, c.cap)?),
        Command::Jring { algebra } => cmd_jring(&sp, &build(&sp, lam, *algebra, c.cap)?),
        Command::Axioms { algebra } => cmd_axioms(&sp, &build(&sp, lam, *algebra, c.cap)?),
        Command::Reps { group } => cmd_reps(&sp, lam, *group, c.cap)?,
        Command::Identities { only, samples, seed, .. } => {
            for name in only {
                if !IDENTITY_NAMES.contains(&name.as_str()) {
                    return Err(Failure::Usage(format!("unknown check `{name}`; see `identities --list`")));
                }
            }
            let opts = IdentityOptions { seed: *seed, samples: *samples, only: (!only.is_empty()).then(|| only.clone()), ..Default::default() };
            cmd_identities(&sp, c.cap, &opts)?
        }
    };
    let mut value = header;
    if let Value::Object(m) = body.value {
        value.as_object_mut().expect("object").extend(m);
    }
    Ok(Outcome { value, pass: body.pass, table: body.table })
}

fn cmd_group(sp: &CharSpace) -> Result<Outcome, Failure> {
    let g = sp.group();
    let d = g.datum();
    Ok(Outcome::data(json!({
        "rank": g.rank(),
        "order": g.order(),
        "nu": g.nu(),
        "degrees": g.degrees()?,
        "cartan": d.cartan,
        "simple_roots": d.simple_roots,
        "simple_coroots": d.simple_coroots,
    })))
}

fn cmd_chars(sp: &CharSpace) -> Outcome {
    let g = sp.group();
    let orbits: Vec<Value> = sp
        .orbits()
        .iter()
        .map(|o| {
            let subs = sp.subgroups(o[0]);
            json!({
                "representative": sp.coords(o[0]),
                "members": o.iter().map(|&l| sp.coords(l)).collect::<Vec<_>>(),
                "roots": sp.r_lambda_roots(o[0]).len(),
                "w_lambda": subs.w_lambda.size(),
                "w_prime": subs.w_prime.len(),
                "omega": subs.omega.iter().map(|&x| word(g, x)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut rows = vec![vec!["representative".into(), "orbit".into(), "w_lambda".into(), "w_prime".into(), "omega".into()]];
    for o in sp.orbits() {
        let subs = sp.subgroups(o[0]);
        rows.push(vec![format!("{:?}", sp.coords(o[0])), o.len().to_string(), subs.w_lambda.size().to_string(), subs.w_prime.len().to_string(), subs.omega.len().to_string()]);
    }
    Outcome { value: json!({ "characters": sp.len(), "orbits": orbits }), pass: true, table: Some(rows) }
}

fn cmd_kl(sp: &CharSpace, lam: TorusChar) -> Outcome {
    let wl = sp.w_lambda(lam);
    let g = sp.group();
    let cox = wl.coxeter();
    let mut pairs = Vec::new();
    let mut rows = vec![vec!["y".into(), "w".into(), "P".into(), "mu".into()]];
    for w in 0..wl.size() {
        for y in 0..wl.size() {
            if cox.bruhat_leq(y, w) {
                let p = wl.kl().p(y, w);
                let mu = wl.kl().mu(y, w);
                pairs.push(json!({ "y": word(g, wl.element(y)), "w": word(g, wl.element(w)), "p": p.to_string(), "mu": mu.to_string() }));
                rows.push(vec![label_text(sp, Label::Coxeter { w: wl.element(y) }), label_text(sp, Label::Coxeter { w: wl.element(w) }), p.to_string(), mu.to_string()]);
            }
        }
    }
    Outcome { value: json!({ "lambda": sp.coords(lam), "w_lambda": wl.size(), "pairs": pairs }), pass: true, table: Some(rows) }
}

fn cmd_hecke(sp: &Arc<CharSpace>, product: Option<&str>) -> Result<Outcome, Failure> {
    let h = HeckeAlgebra::new(sp.clone());
    let g = sp.group();
    let elt_json = |e: &monohecke::hecke::HeckeElt| -> Vec<Value> { e.terms().map(|(&(w, l), f)| json!({ "w": word(g, w), "lambda": sp.coords(l), "coeff": f.to_string() })).collect() };
    if let Some(p) = product {
        let idx: Vec<usize> = p.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<_, _>>().map_err(|e| Failure::Usage(format!("--product: {e}")))?;
        let [i, j] = idx[..] else { return Err(Failure::Usage("--product takes two indices i,j".into())) };
        if i >= h.dim() || j >= h.dim() {
            return Err(Failure::Usage(format!("indices must be below {}", h.dim())));
        }
        let (a, b) = (h.unindex(i), h.unindex(j));
        let prod = h.h_constants(a, b);
        return Ok(Outcome::data(json!({
            "left": label_json(sp, Label::Hecke { w: a.0, lam: a.1 }),
            "right": label_json(sp, Label::Hecke { w: b.0, lam: b.1 }),
            "product_in_c": elt_json(&prod),
        })));
    }
    let basis: Vec<Value> = (0..h.dim())
        .map(|k| {
            let (w, lam) = h.unindex(k);
            json!({ "index": k, "label": label_json(sp, Label::Hecke { w, lam }), "in_t_hat": elt_json(&h.canonical(w, lam)) })
        })
        .collect();
    Ok(Outcome::data(json!({ "dim": h.dim(), "canonical_basis": basis })))
}

fn cmd_cells(sp: &CharSpace, b: &Built) -> Outcome {
    let (alg, an) = (&b.algebra, &b.analysis);
    let cells = &an.cells;
    let labels: Vec<Value> = (0..alg.dim()).map(|i| label_json(sp, alg.label(i))).collect();
    let two: Vec<Value> = cells
        .two_sided_cells
        .iter()
        .map(|m| {
            let lefts: Vec<&Vec<usize>> = cells.left_cells.iter().filter(|l| cells.two_sided_cell_of[l[0]] == cells.two_sided_cell_of[m[0]]).collect();
            json!({ "a": cells.a[m[0]], "members": m, "left_cells": lefts, "distinguished": m.iter().filter(|&&i| alg.in_i0(i)).collect::<Vec<_>>() })
        })
        .collect();
    let mut rows = vec![vec!["index".into(), "label".into(), "a".into(), "left_cell".into(), "two_sided_cell".into(), "distinguished".into()]];
    for i in 0..alg.dim() {
        rows.push(vec![i.to_string(), label_text(sp, alg.label(i)), cells.a[i].to_string(), cells.left_cell_of[i].to_string(), cells.two_sided_cell_of[i].to_string(), alg.in_i0(i).to_string()]);
    }
    Outcome {
        value: json!({ "algebra": alg.name(), "dim": alg.dim(), "labels": labels, "a": cells.a, "two_sided_cells": two }),
        pass: true,
        table: Some(rows),
    }
}

fn cmd_jring(sp: &CharSpace, b: &Built) -> Outcome {
    let (alg, an) = (&b.algebra, &b.analysis);
    let entries: Vec<Value> = an.jring.hstar_entries().into_iter().map(|(i, ip, j, c)| json!([i, ip, j, c.to_string()])).collect();
    let mut rows = vec![vec!["i".into(), "i'".into(), "j".into(), "h*".into()]];
    for (i, ip, j, c) in an.jring.hstar_entries() {
        rows.push(vec![label_text(sp, alg.label(i)), label_text(sp, alg.label(ip)), label_text(sp, alg.label(j)), c.to_string()]);
    }
    Outcome {
        value: json!({
            "algebra": alg.name(),
            "dim": alg.dim(),
            "labels": (0..alg.dim()).map(|i| label_json(sp, alg.label(i))).collect::<Vec<_>>(),
            "bang": (0..alg.dim()).map(|i| alg.bang(i)).collect::<Vec<_>>(),
            "i0": alg.i0().collect::<Vec<_>>(),
            "hstar": entries,
        }),
        pass: true,
        table: Some(rows),
    }
}

fn check_rows(scope: &str, checks: &[AxiomCheck]) -> Vec<Vec<String>> {
    checks.iter().map(|c| vec![scope.to_string(), c.name.clone(), c.pass.to_string(), c.checked.to_string(), c.witness.clone().unwrap_or_default()]).collect()
}

fn cmd_axioms(sp: &CharSpace, b: &Built) -> Outcome {
    info!("checking Q1-Q11 on {}", b.algebra.name());
    let report = verify_axioms(&b.algebra, &b.analysis);
    let mut pass = report.all_pass();
    let mut value = json!({ "report": report });
    if let (Some(chain), true) = (&b.chain, b.algebra.name().starts_with("H_")) {
        info!("checking the matrix isomorphism");
        let h = HeckeAlgebra::new(Arc::new(CharSpace::new(sp.group().clone(), sp.n()).expect("valid space")));
        let r = chain.verify(&h);
        pass &= r.all_pass();
        value["matrix_isomorphism"] = json!(r);
    }
    let mut rows = vec![vec!["algebra".into(), "check".into(), "pass".into(), "checked".into(), "witness".into()]];
    rows.extend(check_rows(b.algebra.name(), &report.checks));
    Outcome { value, pass, table: Some(rows) }
}

fn model(sp: &Arc<CharSpace>, lam: TorusChar, kind: GroupKind, cap: usize) -> Result<RepModel, Failure> {
    info!("building the {kind:?} model");
    Ok(match kind {
        GroupKind::Full => {
            let h = HeckeAlgebra::new(sp.clone());
            let alg = hecke_full(&h, h.h_table())?;
            RepModel::full(sp.clone(), &h, alg, cap)?
        }
        GroupKind::Stabilizer => RepModel::stabilizer(sp.clone(), lam, cap)?,
        GroupKind::Reflection => RepModel::reflection(sp.clone(), lam, cap)?,
    })
}

fn rep_rows(invs: &[RepInvariants]) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["E".into(), "dim".into(), "b".into(), "a".into(), "cell".into(), "special".into(), "univalent".into()]];
    for r in invs {
        rows.push(vec![r.index.to_string(), r.dim.to_string(), r.b.to_string(), r.a.to_string(), r.cell.to_string(), r.special.to_string(), r.univalent.to_string()]);
    }
    rows
}

fn cmd_reps(sp: &Arc<CharSpace>, lam: TorusChar, kind: GroupKind, cap: usize) -> Result<Outcome, Failure> {
    let m = model(sp, lam, kind, cap)?;
    info!("computing invariants of {} representations", m.table().len());
    let invs = m.invariants()?;
    let specials = m.special_reps(&invs)?;
    Ok(Outcome {
        value: json!({
            "group": m.kind(),
            "order": m.group().order(),
            "classes": m.group().num_classes(),
            "characters": m.table().chars(),
            "representations": invs,
            "special_per_cell": specials,
        }),
        pass: true,
        table: Some(rep_rows(&invs)),
    })
}

fn cmd_identities(sp: &Arc<CharSpace>, cap: usize, opts: &IdentityOptions) -> Result<Outcome, Failure> {
    let mut scopes: Vec<(String, Vec<IdentityCheck>)> = Vec::new();
    let dim = sp.len() * sp.group().order();
    if dim > cap {
        return Err(Failure::Usage(format!("H has dimension {dim}, above the cap {cap}")));
    }
    info!("building H");
    let h = HeckeAlgebra::new(sp.clone());
    let alg = hecke_full(&h, h.h_table())?;
    let an = alg.analyze();
    info!("identities of H and J");
    {
        let products = hecke_products(&h, &alg);
        scopes.push(("H".into(), jring_identities(&alg, &an, Some(sp), &products, opts)));
    }
    scopes.push(("H".into(), hecke_identities(&h).into_iter().filter(|c| opts.selected(&c.name)).collect()));
    info!("representations of W ⋉ T_n");
    let full = RepModel::full(sp.clone(), &h, alg, cap)?;
    scopes.push(("W⋉T".into(), rep_identities(&full)));
    let mut stabs = Vec::new();
    for o in sp.orbits() {
        let coords = format!("{:?}", sp.coords(o[0]));
        info!("representations of W'_λ and W_λ for λ = {coords}");
        let s = RepModel::stabilizer(sp.clone(), o[0], cap)?;
        scopes.push((format!("W'_λ {coords}"), rep_identities(&s)));
        stabs.push(s);
        let r = RepModel::reflection(sp.clone(), o[0], cap)?;
        scopes.push((format!("W_λ {coords}"), rep_identities(&r)));
        scopes.push((format!("W_λ {coords}"), vec![extension_identities(sp, o[0], cap)?]));
    }
    scopes.push(("W⋉T".into(), correspondence_identities(&full, &stabs)));
    let mut flat: Vec<(String, IdentityCheck)> = Vec::new();
    for (scope, checks) in scopes {
        for c in checks {
            if opts.selected(&c.name) {
                flat.push((scope.clone(), c));
            }
        }
    }
    let pass = flat.iter().all(|(_, c)| c.pass);
    let checks: Vec<Value> = flat.iter().map(|(s, c)| json!({ "scope": s, "name": c.name, "pass": c.pass, "checked": c.checked, "witness": c.witness })).collect();
    let mut rows = vec![vec!["scope".into(), "check".into(), "pass".into(), "checked".into(), "witness".into()]];
    for (s, c) in &flat {
        rows.extend(check_rows(s, std::slice::from_ref(c)));
    }
    Ok(Outcome { value: json!({ "pass": pass, "checks": checks }), pass, table: Some(rows) })
}

fn render(c: &Config, out: &Outcome) -> Result<String, String> {
    match c.format {
        Format::Json => Ok(serde_json::to_string_pretty(&out.value).expect("serializable") + "\n"),
        Format::Csv => {
            let rows = out.table.as_ref().ok_or("csv output is not available for this subcommand")?;
            Ok(rows.iter().map(|r| r.iter().map(|x| csv_field(x)).collect::<Vec<_>>().join(",") + "\n").collect())
        }
        Format::Text => Ok(match &out.table {
            Some(rows) => {
                let widths: Vec<usize> = (0..rows[0].len()).map(|k| rows.iter().map(|r| r[k].chars().count()).max().unwrap_or(0)).collect();
                rows.iter()
                    .map(|r| r.iter().zip(&widths).map(|(x, w)| format!("{x:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string() + "\n")
                    .collect()
            }
            None => serde_json::to_string_pretty(&out.value).expect("serializable") + "\n",
        }),
    }
}

fn csv_field(x: &str) -> String {
    if x.contains([',', '"', '\n']) {
        format!("\"{}\"", x.replace('"', "\"\""))
    } else {
        x.to_string()
    }
}
