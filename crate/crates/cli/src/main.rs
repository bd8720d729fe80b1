use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use satake::hecke::{minimal_scalar_ring, HeckeElement, SignConvention, SphericalHecke, SphericalOptions};
use satake::root_datum::{fmt_tuple, parse_tuple, DominantCocharacter, RootDatum};
use satake::satake_k0::{self, ICClass, K0Element};
use satake::verify::{self, VerifyConfig};
use satake::LaurentPoly;

/// Exact computations in spherical Hecke algebras and the Satake isomorphism.
#[derive(Parser, Debug)]
#[command(name = "satake", version)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RunConfig {
    /// Catalog group: GL(n), SL(n), PGL(n), Sp(4), torus(n), or a product AxB.
    #[arg(long, global = true, env = "SATAKE_GROUP", default_value = "PGL(2)")]
    group: String,
    /// Largest <2 rho, mu> considered.
    #[arg(long, global = true, env = "SATAKE_BOUND", default_value_t = 6)]
    bound: i64,
    /// Use the alternating trace sigma(mu) = (-1)^<2 rho, mu>.
    #[arg(long, global = true, env = "SATAKE_SIGNED_TRACE")]
    signed_trace: bool,
    /// Emit JSON instead of text.
    #[arg(long, global = true, env = "SATAKE_JSON")]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, env = "SATAKE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root datum, dual datum, 2 rho, pi_1 and the modified dual group.
    Describe,
    /// Products of T-basis elements, e.g. `s1*s1` or `t[1]*s0s1`.
    HeckeMul {
        expr: String,
        /// Also test associativity on this many random triples.
        #[arg(long, default_value_t = 0)]
        assoc_trials: usize,
    },
    /// Decomposition of IC_mu(n) ⋆ IC_lam(m).
    IcConvolve {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        lam: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i64,
    },
    /// f_{IC_mu} in the c-basis for all mu up to the bound, with Satake images.
    SatakeTable,
    /// Runs the acceptance criteria on the configured group.
    Verify {
        /// Perturb the q-analogs (negative control; the run must fail).
        #[arg(long, env = "SATAKE_CORRUPT_Q_ANALOG")]
        corrupt_q_analog: bool,
        /// Random triples for the associativity check.
        #[arg(long, default_value_t = 200)]
        triples: usize,
    },
}

const SCHEMA_VERSION: u32 = 1;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn options(c: &RunConfig) -> SphericalOptions {
    SphericalOptions {
        sign: if c.signed_trace { SignConvention::Signed } else { SignConvention::Unsigned },
        corrupt_q_analog: false,
    }
}

fn spherical(c: &RunConfig, opts: SphericalOptions) -> Result<SphericalHecke> {
    let rd = RootDatum::from_id(&c.group).with_context(|| format!("group `{}`", c.group))?;
    Ok(SphericalHecke::for_datum(rd, opts)?)
}

fn emit(c: &RunConfig, kind: &str, mut body: Value, text: String) {
    let out = if c.json {
        let obj = body.as_object_mut().expect("JSON bodies are objects");
        obj.insert("schema".into(), json!(format!("satake/{kind}/v{SCHEMA_VERSION}")));
        serde_json::to_string_pretty(&body).expect("serializable") + "\n"
    } else {
        text
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn run(cli: &Cli) -> Result<bool> {
    let c = &cli.config;
    if c.bound < 0 {
        bail!("--bound must be nonnegative");
    }
    match &cli.command {
        Command::Describe => describe(c),
        Command::HeckeMul { expr, assoc_trials } => hecke_mul(c, expr, *assoc_trials),
        Command::IcConvolve { mu, n, lam, m } => ic_convolve(c, mu, *n, lam, *m),
        Command::SatakeTable => satake_table(c),
        Command::Verify { corrupt_q_analog, triples } => run_verify(c, *corrupt_q_analog, *triples),
    }
}

fn describe(c: &RunConfig) -> Result<bool> {
    let rd = RootDatum::from_id(&c.group).with_context(|| format!("group `{}`", c.group))?;
    let g1 = rd.g1_data();
    let pi1 = rd.pi1_order().map_or_else(|| "infinite".to_string(), |n| n.to_string());
    let structure = g1.structure();
    let text = table(&[
        vec!["group".into(), rd.name().into()],
        vec!["dual group".into(), g1.dual_datum.name().into()],
        vec!["rank".into(), rd.rank().to_string()],
        vec!["positive roots".into(), rd.positive_roots().len().to_string()],
        vec!["2rho".into(), fmt_tuple(rd.two_rho())],
        vec!["2rho^".into(), fmt_tuple(rd.two_rho_check())],
        vec!["|pi_1|".into(), pi1.clone()],
        vec!["epsilon trivial".into(), g1.epsilon_trivial.to_string()],
        vec!["Ĝ₁".into(), structure.clone()],
    ]);
    let body = json!({
        "group": rd.name(),
        "root_datum": rd.to_json(),
        "dual": g1.dual_datum.to_json(),
        "two_rho": rd.two_rho(),
        "two_rho_check": rd.two_rho_check(),
        "pi1_order": rd.pi1_order(),
        "epsilon_trivial": g1.epsilon_trivial,
        "direct_product": g1.direct_product,
        "g1_structure": structure,
    });
    emit(c, "describe", body, text);
    Ok(true)
}

fn hecke_mul(c: &RunConfig, expr: &str, trials: usize) -> Result<bool> {
    let sph = spherical(c, options(c))?;
    let iw = sph.iwahori();
    let g = iw.group();
    let mut acc = iw.unit();
    for factor in expr.split('*') {
        let w = g.parse_element(factor)?;
        acc = iw.mul(&acc, &HeckeElement::basis(w))?;
    }
    let mut ok = true;
    let mut text = format!("{} = {}\n", expr, iw.format(&acc)?);
    let mut assoc = Value::Null;
    if trials > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
        let mut passed = 0;
        for _ in 0..trials {
            let [a, b, d] = [0; 3].map(|_| HeckeElement::basis(verify::random_element(&sph, &mut rng, 6)));
            if iw.mul(&iw.mul(&a, &b)?, &d)? == iw.mul(&a, &iw.mul(&b, &d)?)? {
                passed += 1;
            }
        }
        ok = passed == trials;
        text.push_str(&format!("associativity: {passed}/{trials} random triples\n"));
        assoc = json!({ "trials": trials, "passed": passed });
    }
    let body = json!({ "expr": expr, "product": iw.hecke_json(&acc)?, "associativity": assoc });
    emit(c, "hecke-mul", body, text);
    Ok(ok)
}

fn parse_dominant(rd: &RootDatum, s: &str) -> Result<DominantCocharacter> {
    Ok(rd.dominant(parse_tuple(s)?)?)
}

fn ic_convolve(c: &RunConfig, mu: &str, n: i64, lam: &str, m: i64) -> Result<bool> {
    let sph = spherical(c, options(c))?;
    let rd = sph.root_datum();
    let a = ICClass { mu: parse_dominant(rd, mu)?, n };
    let b = ICClass { mu: parse_dominant(rd, lam)?, n: m };
    let prod = satake_k0::convolve_ic(sph.reps(), &a, &b)?;
    let rows = satake_k0::decomposition_rows(rd, &prod);
    let expected_weight = satake_k0::purity_weight(rd, &a) + satake_k0::purity_weight(rd, &b);
    let additive = rows.iter().all(|r| r.weight == expected_weight);
    let mut cells = vec![vec!["nu".to_string(), "N".into(), "twist".into(), "weight".into()]];
    for r in &rows {
        cells.push(vec![r.nu.to_string(), r.multiplicity.to_string(), r.twist.to_string(), r.weight.to_string()]);
    }
    let text = format!(
        "{a} ⋆ {b} = {}\n{}weights additive: {additive}\n",
        satake_k0::format_k0(&prod),
        table(&cells)
    );
    let body = json!({ "left": a, "right": b, "rows": rows, "weights_additive": additive });
    emit(c, "ic-convolve", body, text);
    Ok(additive)
}

fn satake_table(c: &RunConfig) -> Result<bool> {
    let sph = spherical(c, options(c))?;
    let rd = sph.root_datum();
    let mut cells = vec![vec!["class".to_string(), "f in c-basis".into(), "Satake image".into(), "scalars".into()]];
    let mut rows = Vec::new();
    let zero = rd.zero();
    let mut classes: Vec<ICClass> = rd.dominant_up_to(c.bound).into_iter().map(|mu| ICClass { mu, n: 0 }).collect();
    classes.push(ICClass { mu: zero, n: -1 });
    let mut diagonal_ok = true;
    for class in classes {
        let f = sph.ic_function(&class.mu, class.n)?;
        let lead = f.coeff(&class.mu);
        let unit = LaurentPoly::q_pow(-class.n);
        diagonal_ok &= lead == unit || lead == -unit;
        let image = sph.satake_transform(&f)?;
        let ring = minimal_scalar_ring(f.iter().map(|(_, p)| p));
        cells.push(vec![class.to_string(), sph.format(&f), satake::rep_ring::format_g1(&image), ring.to_string()]);
        let image_terms: Vec<Value> = image
            .iter()
            .map(|(k, p)| json!({ "mu": k.mu, "k": k.k, "poly": p }))
            .collect();
        rows.push(json!({
            "class": class,
            "function": sph.satake_json(&f),
            "image": image_terms,
            "scalar_ring": ring,
        }));
    }
    let k0_unit = K0Element::basis(ICClass { mu: rd.zero(), n: 0 });
    let unit_trace = satake_k0::trace_to_hecke(&sph, &k0_unit)?;
    diagonal_ok &= unit_trace == sph.unit();
    let text = format!("{}diagonal entries are units: {diagonal_ok}\n", table(&cells));
    let body = json!({
        "group": rd.name(),
        "bound": c.bound,
        "sign_convention": sph.options().sign,
        "rows": rows,
        "diagonal_units": diagonal_ok,
    });
    emit(c, "satake-table", body, text);
    Ok(diagonal_ok)
}

fn run_verify(c: &RunConfig, corrupt: bool, triples: usize) -> Result<bool> {
    let mut opts = options(c);
    opts.corrupt_q_analog = corrupt;
    let config = VerifyConfig { bound: c.bound, seed: c.seed, triples, options: opts, ..Default::default() };
    let results = verify::run_all(&[c.group.as_str()], &config)?;
    let ok = results.iter().all(|r| r.passed());
    let mut text: String = results.iter().map(|r| format!("{r}\n")).collect();
    text.push_str(if ok { "all criteria passed\n" } else { "verification FAILED\n" });
    let body = json!({
        "group": c.group,
        "bound": c.bound,
        "seed": c.seed,
        "corrupt_q_analog": corrupt,
        "results": results,
        "passed": ok,
    });
    emit(c, "verify", body, text);
    Ok(ok)
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(j, s)| format!("{s}{}", " ".repeat(widths[j] - s.chars().count())))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
