use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schmidt::arrangement::{
    brute_force_parallelogram_count, enumerate_arrangement_with, ghost_circle, ghost_separation,
    parallelogram_count, reduced_bound_from_absolute, tangency_graph, tangency_path, Window,
};
use schmidt::lattice::{class_number_hf, class_number_hk, residue_count};
use schmidt::render::{fmt_num, render_svg, RenderSpec};
use schmidt::{Discriminant, Error, Int, Matrix2};

#[derive(Parser)]
#[command(name = "schmidt", version, about = "Schmidt arrangements of imaginary quadratic fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Field {
    /// Fundamental discriminant (negative)
    #[arg(allow_negative_numbers = true)]
    delta_pos: Option<i64>,
    /// Fundamental discriminant, as a flag
    #[arg(long = "delta", allow_negative_numbers = true)]
    delta: Option<i64>,
}

impl Field {
    fn disc(&self) -> Result<Discriminant, Failure> {
        let d = self
            .delta
            .or(self.delta_pos)
            .ok_or_else(|| Failure::input("a discriminant is required"))?;
        Ok(Discriminant::new(d)?)
    }
}

#[derive(Args, Clone)]
struct Selection {
    /// Largest reduced curvature |b| to include
    #[arg(long, default_value_t = 10)]
    bound: Int,
    /// Bound the absolute curvature |b| sqrt(-D) instead
    #[arg(long)]
    absolute_bound: Option<f64>,
    /// `x0,x1,y0,y1` (y in units of sqrt(-D)/2) or `fund`
    #[arg(long, default_value = "fund", allow_hyphen_values = true)]
    window: String,
    /// Include the lines of the arrangement
    #[arg(long)]
    include_lines: bool,
    /// Keep the two orientations of a circle apart
    #[arg(long)]
    oriented: bool,
}

impl Selection {
    fn bound(&self, disc: Discriminant) -> Int {
        match self.absolute_bound {
            Some(b) => reduced_bound_from_absolute(disc, b),
            None => self.bound,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Svg,
    Jsonl,
    Table,
    Edges,
}

#[derive(Subcommand)]
enum Command {
    /// Field data: units, Euclidean flag, class number, ghost circle
    Info {
        #[command(flatten)]
        field: Field,
    },
    /// Translation classes of circles per reduced curvature against the class numbers
    Count {
        #[command(flatten)]
        field: Field,
        /// Largest reduced curvature
        #[arg(long = "fmax", default_value_t = 6)]
        fmax_flag: Int,
        #[arg(allow_negative_numbers = true)]
        fmax: Option<Int>,
    },
    /// Draw the arrangement as SVG
    Render {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        sel: Selection,
        /// Overlay the ghost circle
        #[arg(long)]
        ghost: bool,
        /// Colour circles by reduced curvature
        #[arg(long)]
        color: bool,
        /// Output file (standard output when absent)
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
    },
    /// Certify that every enumerated circle misses the ghost circle
    GhostCheck {
        #[command(flatten)]
        field: Field,
        #[arg(long, default_value_t = 30)]
        bound: Int,
        #[arg(long, default_value = "-2,3,-2,3", allow_hyphen_values = true)]
        window: String,
    },
    /// Tangency chain between the circles of two matrices
    Path {
        #[arg(allow_negative_numbers = true)]
        delta: i64,
        m1: String,
        m2: String,
    },
    /// List the circles meeting a window
    Enumerate {
        #[command(flatten)]
        field: Field,
        #[command(flatten)]
        sel: Selection,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Failure { code: 2, message: msg.into() }
    }

    fn check(msg: impl Into<String>) -> Self {
        Failure { code: 3, message: msg.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CertificateFailure(_) | Error::SearchExhausted(_) | Error::NonIntegerResult(_) => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

fn emit(output: &Option<PathBuf>, text: &str) -> Outcome {
    match output {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_info(field: &Field) -> Outcome {
    let k = field.disc()?;
    let units: Vec<String> = k.units().iter().map(|u| u.to_string()).collect();
    let tau = k.tau();
    println!("discriminant: {}", k.value());
    if k.trace_tau() == 0 {
        println!("t = sqrt({})/2, t^2 = {}", k.value(), tau * tau);
    } else {
        println!("t = (1 + sqrt({}))/2, t^2 = {}", k.value(), tau * tau);
    }
    println!("units: {}", units.join(", "));
    println!("euclidean: {}", if k.is_euclidean() { "yes" } else { "no" });
    println!("h_K: {}", class_number_hk(k));
    println!("u: {}", k.unit_index());
    match ghost_circle(k) {
        Some(g) => println!("ghost: B^2 = {} (B = {})", g.curvature_sq, fmt_num(g.curvature())),
        None => println!("ghost: none"),
    }
    Ok(())
}

fn cmd_count(field: &Field, fmax: Int) -> Outcome {
    let k = field.disc()?;
    if fmax < 1 {
        return Err(Failure::input("fmax must be at least 1"));
    }
    let hk = class_number_hk(k);
    println!("D = {}, h_K = {hk}", k.value());
    println!(
        "{:>4} {:>9} {:>6} {:>9} {:>9} {:>10} {:>11}  note",
        "f", "residues", "h_f", "h_f/h_K", "2h_f", "enumerated", "brute-force"
    );
    let mut inconsistent = Vec::new();
    let mut prediction_misses = 0;
    for f in 1..=fmax {
        let hf = class_number_hf(k, f)?;
        let residues = residue_count(k, f)?;
        let geometric = parallelogram_count(k, f)? as Int;
        let oracle = brute_force_parallelogram_count(k, f)? as Int;
        let predicted = if k.value() == -4 && f == 1 { 1 } else { 2 * hf };
        let ratio = if hf % hk == 0 { (hf / hk).to_string() } else { format!("{hf}/{hk}") };
        let mut note = String::new();
        if geometric != oracle {
            note.push_str("ENUMERATION DISAGREES WITH ORACLE ");
            inconsistent.push(f);
        }
        if geometric != predicted {
            prediction_misses += 1;
            note.push_str("differs from 2h_f");
        }
        println!(
            "{f:>4} {residues:>9} {hf:>6} {ratio:>9} {predicted:>9} {geometric:>10} {oracle:>11}  {note}"
        );
    }
    if prediction_misses > 0 {
        eprintln!(
            "warning: {prediction_misses} row(s) differ from the 2h_f prediction; \
             the enumerated counts agree with the brute-force oracle"
        );
    }
    if inconsistent.is_empty() {
        Ok(())
    } else {
        Err(Failure::check(format!("enumeration and oracle disagree for f in {inconsistent:?}")))
    }
}

fn selection_set(
    k: Discriminant,
    sel: &Selection,
) -> Result<(schmidt::arrangement::CircleSet, Window), Failure> {
    let win = Window::parse(k, &sel.window)?;
    let set = enumerate_arrangement_with(k, sel.bound(k), &win, sel.include_lines, sel.oriented)?;
    Ok((set, win))
}

fn table(set: &schmidt::arrangement::CircleSet) -> String {
    let mut s = format!("{:>6} {:>8} {:>16} {:>14} {:>14} {:>12}\n", "curv", "cocurv", "zeta", "centre_x", "centre_y", "radius");
    for c in set.iter() {
        let (x, y) = c
            .centre()
            .map(|p| p.to_f64(set.disc))
            .map(|(x, y)| (fmt_num(x), fmt_num(y)))
            .unwrap_or(("line".into(), "line".into()));
        let r = c.radius().map(fmt_num).unwrap_or_else(|| "inf".into());
        s.push_str(&format!(
            "{:>6} {:>8} {:>16} {:>14} {:>14} {:>12}\n",
            c.curv,
            c.cocurv,
            c.zeta.to_string(),
            x,
            y,
            r
        ));
    }
    s
}

fn format_set(
    set: &schmidt::arrangement::CircleSet,
    win: Window,
    format: Format,
    ghost: bool,
    color: bool,
) -> String {
    match format {
        Format::Jsonl => set.to_jsonl(),
        Format::Table => table(set),
        Format::Edges => tangency_graph(set).edge_list(),
        Format::Svg => {
            let mut spec = RenderSpec::new(win);
            spec.color_by_curvature = color;
            if ghost {
                spec.ghost = ghost_circle(set.disc);
            }
            render_svg(set, &spec)
        }
    }
}

fn cmd_render(
    field: &Field,
    sel: &Selection,
    ghost: bool,
    color: bool,
    output: &Option<PathBuf>,
    format: Format,
) -> Outcome {
    let k = field.disc()?;
    let (set, win) = selection_set(k, sel)?;
    emit(output, &format_set(&set, win, format, ghost, color))?;
    eprintln!("rendered {} circles (D = {}, bound {})", set.len(), k.value(), sel.bound(k));
    Ok(())
}

fn cmd_ghost_check(field: &Field, bound: Int, window: &str) -> Outcome {
    let k = field.disc()?;
    let g = ghost_circle(k).ok_or(Error::NoGhostCircle(k.value()))?;
    let win = Window::parse(k, window)?;
    let set = enumerate_arrangement_with(k, bound, &win, true, false)?;
    println!("{g}");
    let mut min: Option<(f64, String)> = None;
    for c in set.iter() {
        let cert = ghost_separation(c, &g).map_err(|e| {
            Failure::check(format!("certificate failure for {c}: {e}"))
        })?;
        let v = cert.product.abs();
        if min.as_ref().is_none_or(|(m, _)| v < *m) {
            min = Some((v, format!("{c}: {cert}")));
        }
    }
    println!("all {} circles separated", set.len());
    if let Some((v, who)) = min {
        println!("min |<G,C>| = {} at {who}", fmt_num(v));
    }
    Ok(())
}

fn cmd_path(delta: i64, m1: &str, m2: &str) -> Outcome {
    let k = Discriminant::new(delta)?;
    let a = Matrix2::parse(k, m1)?;
    let b = Matrix2::parse(k, m2)?;
    let path = tangency_path(&a, &b)?;
    for c in &path {
        println!("{}", c.to_json());
    }
    println!("verified: {} circles, {} tangencies", path.len(), path.len() - 1);
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Info { field } => cmd_info(field),
        Command::Count { field, fmax_flag, fmax } => cmd_count(field, fmax.unwrap_or(*fmax_flag)),
        Command::Render { field, sel, ghost, color, output, format } => {
            cmd_render(field, sel, *ghost, *color, output, *format)
        }
        Command::GhostCheck { field, bound, window } => cmd_ghost_check(field, *bound, window),
        Command::Path { delta, m1, m2 } => cmd_path(*delta, m1, m2),
        Command::Enumerate { field, sel, format, output } => {
            let k = field.disc()?;
            let (set, win) = selection_set(k, sel)?;
            emit(output, &format_set(&set, win, *format, false, false))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
