//! Command-line front end. `run` never exits the process; it returns the
//! exit code (0 success, 1 validation or usage error, 2 internal failure).

mod check;
mod instance;

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::combinat::bidegree_table;
use crate::error::{Error, Result};
use crate::generators::{
    almost_linear_generators, recursion_generators, slice_generators, trim_slice, GeneratorRecord,
    Provenance, Tag,
};
use crate::oracle::{bigraded_hilbert, buchberger, minimal_generators, saturate_m, GeneratorCount};
use crate::ring::{Field, FieldSpec, PrimeField, Rationals, Ring};
use crate::syzygy::scroll_matrix;
use crate::tower::{Presentation, TowerLevel};

pub use check::{all_recursion_records, check_instance, CheckLine};
pub use instance::{default_field, format_renamed, random_instance, InstanceFile, FIELD_ENV};

#[derive(Parser, Debug)]
#[command(name = "rees", version, about = "Defining equations of Rees algebras of height-two ideals in k[x0,x1]")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Hilbert,
    Mingens,
    Membership,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountMode {
    Ideal,
    Slice,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Column degrees, maximal minors and the height check.
    Info { file: PathBuf },
    /// σ-invariants of level m (all levels when omitted).
    Sigmas {
        file: PathBuf,
        #[arg(short)]
        m: Option<usize>,
    },
    /// Predicted bidegrees of minimal generators in x-degree >= d_{n-2}.
    Bidegrees {
        file: PathBuf,
        /// Number of T-degree rows in the grid.
        #[arg(long)]
        rows: Option<i64>,
    },
    /// Recursion generators h_α for level m (all levels when omitted).
    Generators {
        file: PathBuf,
        #[arg(short)]
        m: Option<usize>,
        /// Full generating set for d1 = ... = d_{n-2} = 1.
        #[arg(long)]
        almost_linear: bool,
    },
    /// Generators of the x-degree slice of the defining ideal (n = 3).
    Slice {
        file: PathBuf,
        #[arg(long)]
        xdeg: i64,
        /// Drop records generated by the others over k[T].
        #[arg(long)]
        trim: bool,
    },
    /// The scroll matrix Γ of level m and its 2x2 minors.
    Scroll {
        file: PathBuf,
        #[arg(short)]
        m: usize,
    },
    /// Gröbner-basis ground truth for the saturation of the symmetric equations.
    Oracle {
        file: PathBuf,
        #[arg(long)]
        max_x: i64,
        #[arg(long)]
        max_t: i64,
        #[arg(long, value_enum, default_value_t = What::Hilbert)]
        what: What,
        /// Module structure for `--what mingens`.
        #[arg(long, value_enum, default_value_t = CountMode::Ideal)]
        count: CountMode,
    },
    /// Structural checks, certificates and oracle normal forms.
    Check {
        file: PathBuf,
        /// Also check this many random instances of the same shape.
        #[arg(long, default_value_t = 0)]
        seeds: u64,
        #[arg(long)]
        no_oracle: bool,
    },
    /// Random height-two instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        degrees: Vec<i64>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A generator record as it appears in `--json` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub level: usize,
    pub tag: Tag,
    pub bidegree: (i64, i64),
    pub poly: String,
    pub provenance: Provenance,
    pub image: String,
    pub certified: bool,
}

impl RecordJson {
    pub fn new<F: Field>(level: &TowerLevel<F>, r: &GeneratorRecord<F>) -> Self {
        RecordJson {
            level: level.m,
            tag: r.tag.clone(),
            bidegree: r.bidegree,
            poly: level.s_ring().format(&r.poly),
            provenance: r.provenance,
            image: level.scroll_ring().format(&r.image),
            certified: r.certify(level),
        }
    }
}

struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, ok: true }
    }
}

macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Prime { p } => {
                let $f = PrimeField::new(p as u64)?;
                $body
            }
            FieldSpec::Rational => {
                let $f = Rationals;
                $body
            }
        }
    };
}

fn load(path: &Path) -> Result<(InstanceFile, FieldSpec)> {
    let inst = InstanceFile::load(path)?;
    let spec = inst.field_spec()?;
    Ok((inst, spec))
}

fn levels_for(m: Option<usize>, top: usize) -> Result<Vec<usize>> {
    match m {
        Some(m) if m == 0 || m > top => Err(Error::Precondition(format!("need 1 <= m <= {top}"))),
        Some(m) => Ok(vec![m]),
        None => Ok((1..=top).collect()),
    }
}

fn tag_label(tag: &Tag) -> String {
    match tag {
        Tag::Alpha { alpha } => format!("h{alpha:?}"),
        Tag::B { j, k, alpha } => format!("B x0^{j}x1^{k} w^{alpha:?}"),
        Tag::G1 { j, k } => format!("g1 x0^{j}x1^{k}"),
        Tag::G2 { j, k } => format!("g2 x0^{j}x1^{k}"),
        Tag::P { ell, index, alpha } => format!("p[{ell},{index}] w^{alpha:?}"),
        Tag::G2Times { monomial } => format!("g2*{monomial}"),
        Tag::Minor { a, b } => format!("minor({a},{b})"),
        Tag::Sym { j } => format!("g{j}"),
    }
}

fn render_records(records: &[RecordJson]) -> (String, bool) {
    let mut text = String::new();
    let mut ok = true;
    for r in records {
        ok &= r.certified;
        let _ = writeln!(
            text,
            "m={} ({},{}) {:<24} [{}] {}",
            r.level,
            r.bidegree.0,
            r.bidegree.1,
            tag_label(&r.tag),
            if r.certified { "ok" } else { "FAILED" },
            r.poly
        );
    }
    (text, ok)
}

fn records_output(records: Vec<RecordJson>) -> Output {
    let (text, ok) = render_records(&records);
    Output {
        text,
        json: serde_json::to_value(&records).expect("records serialize"),
        ok,
    }
}

fn cmd_info<F: Field>(p: &Presentation<F>) -> Output {
    let r = Ring::R;
    let minors: Vec<String> = p.minors.iter().map(|f| r.format(f)).collect();
    let d: i64 = p.col_degrees.iter().sum();
    let mut text = format!("n = {}\ncol_degrees = {:?}\ndegree of minors = {d}\n", p.n, p.col_degrees);
    for (k, f) in minors.iter().enumerate() {
        let _ = writeln!(text, "f{} = {f}", k + 1);
    }
    text.push_str("height 2: yes (minors have no common factor)\n");
    Output::new(
        text,
        json!({"n": p.n, "col_degrees": p.col_degrees, "degree": d, "minors": minors, "height_two": true}),
    )
}

fn cmd_sigmas<F: Field>(p: &Presentation<F>, m: Option<usize>) -> Result<Output> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for m in levels_for(m, p.n - 1)? {
        let s = p.level(m)?.sigma;
        let _ = writeln!(text, "m={m}: sigma={:?} r={} s={}", s.sigma, s.r, s.s);
        rows.push(json!({"m": m, "sigma": s.sigma, "r": s.r, "s": s.s}));
    }
    Ok(Output::new(text, Value::Array(rows)))
}

fn cmd_bidegrees<F: Field>(p: &Presentation<F>, rows: Option<i64>) -> Result<Output> {
    let n = p.n;
    let level = p.level(n - 2)?;
    let table = bidegree_table(&p.col_degrees, &level.sigma)?;
    let max_t = table.counts.keys().map(|k| k.1).max().unwrap_or(1);
    let text = table.render(
        rows.unwrap_or(max_t).max(1),
        p.col_degrees[n - 2],
        p.col_degrees[n - 3] - 1,
    );
    let cells: Vec<Value> = table
        .counts
        .iter()
        .map(|(&(x, t), &c)| json!({"x": x, "t": t, "count": c}))
        .collect();
    Ok(Output::new(
        text,
        json!({"sigma": level.sigma.sigma, "total": table.total(), "bidegrees": cells}),
    ))
}

fn cmd_generators<F: Field>(p: &Presentation<F>, m: Option<usize>, almost_linear: bool) -> Result<Output> {
    let mut records = Vec::new();
    if almost_linear {
        let level = p.level(p.n - 2)?;
        for r in almost_linear_generators(p)? {
            records.push(RecordJson::new(&level, &r));
        }
        return Ok(records_output(records));
    }
    let g = p.sym_equations();
    for m in levels_for(m, p.n - 2)? {
        let level = p.level(m)?;
        for r in recursion_generators(&level, &g[m])? {
            records.push(RecordJson::new(&level, &r));
        }
    }
    Ok(records_output(records))
}

fn cmd_slice<F: Field>(p: &Presentation<F>, xdeg: i64, trim: bool) -> Result<Output> {
    let level = p.level(1)?;
    let mut recs = slice_generators(p, xdeg)?;
    if trim {
        recs = trim_slice(recs, p.n);
    }
    Ok(records_output(recs.iter().map(|r| RecordJson::new(&level, r)).collect()))
}

fn cmd_scroll<F: Field>(p: &Presentation<F>, m: usize) -> Result<Output> {
    if m == 0 || m >= p.n {
        return Err(Error::Precondition(format!("need 1 <= m <= {}", p.n - 1)));
    }
    let level = p.level(m)?;
    let sm = scroll_matrix(&p.field, &level.sigma);
    let names: Vec<String> = sm.vars.iter().map(|(i, j)| format!("v{i}_{j}")).collect();
    let fmt = |q| format_renamed(q, &names);
    let gamma: Vec<Vec<String>> = sm.gamma.iter().map(|row| row.iter().map(fmt).collect()).collect();
    let minors: Vec<String> = sm.minors.iter().map(fmt).collect();
    let mut text = format!("sigma = {:?}\nGamma =\n", level.sigma.sigma);
    for row in &gamma {
        let _ = writeln!(text, "  [{}]", row.join(", "));
    }
    let _ = writeln!(text, "{} minors:", minors.len());
    for q in &minors {
        let _ = writeln!(text, "  {q}");
    }
    Ok(Output::new(
        text,
        json!({"sigma": level.sigma.sigma, "gamma": gamma, "minors": minors}),
    ))
}

fn cmd_oracle<F: Field>(p: &Presentation<F>, max_x: i64, max_t: i64, what: What, count: CountMode) -> Result<Output> {
    let g = p.sym_equations();
    let k = saturate_m(&buchberger(&p.field, p.n, &g))?;
    match what {
        What::Hilbert => {
            let h = bigraded_hilbert(&k, (0, max_x), (0, max_t));
            let mut text = String::new();
            for t in (0..=max_t).rev() {
                let _ = write!(text, "{t:>3} |");
                for x in 0..=max_x {
                    let _ = write!(text, " {:>4}", h[&(x, t)]);
                }
                text.push('\n');
            }
            let _ = write!(text, "    |");
            for x in 0..=max_x {
                let _ = write!(text, " {x:>4}");
            }
            text.push('\n');
            let cells: Vec<Value> = h.iter().map(|(&(x, t), &d)| json!({"x": x, "t": t, "dim": d})).collect();
            Ok(Output::new(text, json!({"gb_size": k.len(), "dims": cells})))
        }
        What::Mingens => {
            let mode = match count {
                CountMode::Ideal => GeneratorCount::Ideal,
                CountMode::Slice => GeneratorCount::Slice,
            };
            let table = minimal_generators(&k, (0, max_x), (0, max_t), mode);
            let text = format!("{}total = {}\n", table.render(max_t.max(1), max_x, -1), table.total());
            let cells: Vec<Value> = table
                .counts
                .iter()
                .map(|(&(x, t), &c)| json!({"x": x, "t": t, "count": c}))
                .collect();
            Ok(Output::new(text, json!({"total": table.total(), "bidegrees": cells})))
        }
        What::Membership => {
            let mut text = String::new();
            let mut rows = Vec::new();
            let mut ok = true;
            let ring = p.ring();
            for (m, r) in all_recursion_records(p)? {
                let inside = k.contains(&r.poly);
                ok &= inside;
                let _ = writeln!(
                    text,
                    "m={m} {:<24} {}",
                    tag_label(&r.tag),
                    if inside { "in K" } else { "NOT in K" }
                );
                rows.push(json!({"level": m, "tag": r.tag, "poly": ring.format(&r.poly), "in_ideal": inside}));
            }
            Ok(Output {
                text,
                json: Value::Array(rows),
                ok,
            })
        }
    }
}

fn check_lines_output(groups: Vec<(String, Vec<CheckLine>)>) -> Output {
    let mut text = String::new();
    let mut ok = true;
    let mut js = Vec::new();
    for (label, lines) in groups {
        let _ = writeln!(text, "{label}");
        for l in &lines {
            ok &= l.ok;
            let _ = writeln!(text, "  {} {:<22} {}", if l.ok { "PASS" } else { "FAIL" }, l.name, l.detail);
        }
        js.push(json!({"instance": label, "checks": lines}));
    }
    let _ = writeln!(text, "{}", if ok { "all checks passed" } else { "some checks FAILED" });
    Output {
        text,
        json: json!({"ok": ok, "instances": js}),
        ok,
    }
}

fn cmd_check<F: Field>(inst: &InstanceFile, field: &F, seeds: u64, oracle: bool) -> Result<Output> {
    let p = inst.presentation(field)?;
    let mut groups = vec![("instance".to_string(), check_instance(&p, oracle)?)];
    for seed in 0..seeds {
        let r = random_instance(field, p.n, &p.col_degrees, seed)?;
        let q = r.presentation(field)?;
        groups.push((format!("random seed {seed}"), check_instance(&q, oracle)?));
    }
    Ok(check_lines_output(groups))
}

fn with_instance(path: &Path, cmd: &Cmd) -> Result<Output> {
    let (inst, spec) = load(path)?;
    with_field!(spec, f => {
        if let Cmd::Check { seeds, no_oracle, .. } = cmd {
            return cmd_check(&inst, &f, *seeds, !no_oracle);
        }
        let p = inst.presentation(&f)?;
        match cmd {
            Cmd::Info { .. } => Ok(cmd_info(&p)),
            Cmd::Sigmas { m, .. } => cmd_sigmas(&p, *m),
            Cmd::Bidegrees { rows, .. } => cmd_bidegrees(&p, *rows),
            Cmd::Generators { m, almost_linear, .. } => cmd_generators(&p, *m, *almost_linear),
            Cmd::Slice { xdeg, trim, .. } => cmd_slice(&p, *xdeg, *trim),
            Cmd::Scroll { m, .. } => cmd_scroll(&p, *m),
            Cmd::Oracle { max_x, max_t, what, count, .. } => cmd_oracle(&p, *max_x, *max_t, *what, *count),
            Cmd::Check { .. } | Cmd::Random { .. } => unreachable!("handled elsewhere"),
        }
    })
}

fn cmd_random(n: usize, degrees: &[i64], seed: u64, out: Option<&Path>) -> Result<Output> {
    let spec = default_field()?;
    let inst = with_field!(spec, f => random_instance(&f, n, degrees, seed)?);
    let text = inst.to_json();
    if let Some(path) = out {
        std::fs::write(path, format!("{text}\n")).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        return Ok(Output::new(
            format!("wrote {}\n", path.display()),
            json!({"written": path.display().to_string()}),
        ));
    }
    let json = serde_json::to_value(&inst).expect("instance serializes");
    Ok(Output::new(format!("{text}\n"), json))
}

fn dispatch(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Random { n, degrees, seed, out } => cmd_random(*n, degrees, *seed, out.as_deref()),
        Cmd::Info { file }
        | Cmd::Sigmas { file, .. }
        | Cmd::Bidegrees { file, .. }
        | Cmd::Generators { file, .. }
        | Cmd::Slice { file, .. }
        | Cmd::Scroll { file, .. }
        | Cmd::Oracle { file, .. }
        | Cmd::Check { file, .. } => with_instance(file, &cli.cmd),
    }
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    1
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(out) => {
            let _ = if cli.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("json output"))
            } else {
                write!(stdout, "{}", out.text)
            };
            if out.ok {
                0
            } else {
                let _ = writeln!(stderr, "error: a certificate or check failed");
                2
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_validation() {
                1
            } else {
                2
            }
        }
    }
}
