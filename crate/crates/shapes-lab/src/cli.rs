//! Command-line entry point.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cone::cocycle::{area_form, cocycle_basis};
use crate::cone::darts::dart_decomposition;
use crate::cone::delaunay::delaunay;
use crate::cone::geodesic::cut_to_star;
use crate::cone::sample::random_surface;
use crate::cone::star::{build_from_star, regular_polygon};
use crate::cone::ConeSurface;
use crate::eisenstein::EisensteinInt as Eis;
use crate::error::{Error, Result};
use crate::fmt::sig12;
use crate::hexagon::{enumerate_weighted, HexagonParams};
use crate::mesh::TriangulationMesh;
use crate::octahedral::{gen_p2x6, OctahedronParams};
use crate::orbifolds;
use crate::triangulations::{enumerate_p3333, gen_p3333, gen_p345, gen_p444, shapes_csv};

pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_MISMATCH: u8 = 2;
pub const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "shapes-lab",
    version,
    about = "Flat cone metrics, lattice triangulations and the orbifold table"
)]
pub struct Cli {
    /// Worker threads; falls back to SHAPES_LAB_JOBS, then to all cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hexagon moduli: weighted counts and reduction.
    #[command(subcommand)]
    Hexagons(HexagonCmd),
    /// Lattice triangulations of the sphere.
    #[command(subcommand)]
    Triangulate(TriangulateCmd),
    /// Cone surfaces: construction, checks and analysis.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// The orbifold table.
    #[command(subcommand)]
    Orbifolds(OrbifoldCmd),
}

#[derive(Subcommand, Debug)]
pub enum HexagonCmd {
    /// Weighted counts of fundamental hexagons by area.
    Count {
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 49)]
        window: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fundamental representative and move word of (n, p1, p2, p3).
    #[command(allow_negative_numbers = true)]
    Reduce { n: i64, p1: i64, p2: i64, p3: i64 },
}

#[derive(Args, Debug)]
pub struct MeshOut {
    /// Write the mesh as OFF.
    #[arg(long)]
    pub off: Option<PathBuf>,
    /// Use vertex labels only, without flattened coordinates.
    #[arg(long)]
    pub combinatorial: bool,
    /// Write the mesh as a cone surface text file.
    #[arg(long)]
    pub surface: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum TriangulateCmd {
    /// Three cone points of curvature 4pi/3.
    P444 {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Eis,
        #[command(flatten)]
        out: MeshOut,
    },
    /// Cone points of curvature pi, 4pi/3 and 5pi/3.
    P345 {
        #[arg(long, allow_hyphen_values = true)]
        alpha: Eis,
        #[command(flatten)]
        out: MeshOut,
    },
    /// Four cone points of curvature pi: all sublattice shapes of index n/2, or one mesh with --basis.
    P3333 {
        #[arg(long)]
        n: Option<i64>,
        /// Hermite normal form a,b,c of one sublattice.
        #[arg(long, value_parser = parse_list::<i64, 3>, allow_hyphen_values = true)]
        basis: Option<[i64; 3]>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        out: MeshOut,
    },
    /// Six cone points of curvature 2pi/3, from four Eisenstein parameters.
    P2x6 {
        /// Four parameters, comma separated.
        #[arg(long, value_parser = parse_list::<Eis, 4>, allow_hyphen_values = true)]
        alpha: [Eis; 4],
        #[command(flatten)]
        out: MeshOut,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConeCmd {
    /// Glue a star from a base polygon and notch curvatures.
    BuildStar {
        /// Base polygon as "x,y;x,y;...", counterclockwise.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "regular")]
        polygon: Option<String>,
        /// Use the regular polygon with this many vertices.
        #[arg(long)]
        regular: Option<usize>,
        /// Curvature at each notch apex, comma separated.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            allow_hyphen_values = true
        )]
        alpha: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a surface file.
    Check { file: PathBuf },
    /// Retriangulate on the cone points.
    Delaunay {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Signature and own value of the area form.
    Areaform {
        file: PathBuf,
        /// Also print the eigenvalues.
        #[arg(long)]
        eigen: bool,
    },
    /// Cut along shortest paths from a vertex and print the star.
    Cut {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
    /// Darts of the star cut from a vertex, as CSV.
    Darts {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        vertex: usize,
    },
    /// Area form signature on random surfaces.
    SignatureRun {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Subcommand, Debug)]
pub enum OrbifoldCmd {
    /// All orbifold tuples with denominators up to qmax.
    Table {
        #[arg(long, default_value_t = 999)]
        qmax: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Markdown)]
        format: TableFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare against a golden table (markdown, CSV or whitespace rows).
        #[arg(long)]
        verify: Option<PathBuf>,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    Mismatch,
    Invalid,
}

/// Writes through a temporary sibling and a rename.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path).inspect_err(|_| {
        let _ = std::fs::remove_file(&tmp);
    })
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            write_atomic(p, text).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load_surface(path: &Path) -> Result<ConeSurface> {
    ConeSurface::from_text(&read(path)?)
}

/// Exactly `N` comma-separated values.
fn parse_list<T: std::str::FromStr<Err: std::fmt::Display>, const N: usize>(
    s: &str,
) -> std::result::Result<[T; N], String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<T>().map_err(|e| e.to_string()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let got = v.len();
    v.try_into()
        .map_err(|_| format!("expected {N} comma-separated values, got {got}"))
}

fn parse_polygon(s: &str) -> Result<Vec<Complex64>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let v: Vec<f64> = p
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(p.into()))?;
            match v[..] {
                [x, y] => Ok(Complex64::new(x, y)),
                _ => Err(Error::Parse(p.into())),
            }
        })
        .collect()
}

fn mesh_summary(m: &TriangulationMesh) -> String {
    let v: Vec<String> = m.valence_profile().iter().map(|x| x.to_string()).collect();
    format!(
        "triangles {}\nvertices {}\nvalences {}\n",
        m.face_count(),
        m.vertex_count,
        v.join(" ")
    )
}

fn write_mesh(m: &TriangulationMesh, out: &MeshOut) -> Result<Outcome> {
    let report = m.validate();
    if !report.passed() {
        eprintln!("{report}");
        return Ok(Outcome::Invalid);
    }
    if let Some(p) = &out.off {
        let text = if out.combinatorial {
            m.to_off_combinatorial()
        } else {
            m.to_off_flattened()
        };
        emit(&Some(p.clone()), &text)?;
    }
    if let Some(p) = &out.surface {
        emit(&Some(p.clone()), &ConeSurface::from_mesh(m).to_text())?;
    }
    print!("{}", mesh_summary(m));
    Ok(Outcome::Ok)
}

fn hexagons(cmd: HexagonCmd) -> Result<Outcome> {
    match cmd {
        HexagonCmd::Count { max, window, out } => {
            if max == 0 || window == 0 {
                return Err(Error::Invalid("--max and --window must be positive".into()));
            }
            emit(&out, &enumerate_weighted(max).to_csv(window))?;
        }
        HexagonCmd::Reduce { n, p1, p2, p3 } => {
            let (h, word) = HexagonParams::new(n, p1, p2, p3).reduce()?;
            let w: Vec<String> = word.iter().map(|s| s.to_string()).collect();
            println!("fundamental {h}\nword {}", w.join(" "));
        }
    }
    Ok(Outcome::Ok)
}

fn triangulate(cmd: TriangulateCmd) -> Result<Outcome> {
    match cmd {
        TriangulateCmd::P444 { alpha, out } => write_mesh(&gen_p444(alpha)?, &out),
        TriangulateCmd::P345 { alpha, out } => write_mesh(&gen_p345(alpha)?, &out),
        TriangulateCmd::P3333 { n, basis, csv, out } => {
            if let Some(b) = basis {
                return write_mesh(&gen_p3333(b[0], b[1], b[2])?, &out);
            }
            let n = n.ok_or_else(|| Error::Invalid("p3333 needs --n or --basis".into()))?;
            emit(&csv, &shapes_csv(&enumerate_p3333(n)?))?;
            Ok(Outcome::Ok)
        }
        TriangulateCmd::P2x6 { alpha, out } => {
            let p = OctahedronParams::new(alpha[0], alpha[1], alpha[2], alpha[3]);
            write_mesh(&gen_p2x6(&p)?, &out)
        }
    }
}

fn star_text(s: &crate::cone::star::StarPolygon) -> String {
    let mut t = String::new();
    for (i, z) in s.vertices.iter().enumerate() {
        let kind = if i % 2 == 0 { "tip" } else { "inner" };
        match &s.exact {
            Some(e) => writeln!(t, "{kind} {}", e[i]).unwrap(),
            None => writeln!(t, "{kind} {} {}", sig12(z.re), sig12(z.im)).unwrap(),
        }
    }
    t
}

fn cone(cmd: ConeCmd) -> Result<Outcome> {
    match cmd {
        ConeCmd::BuildStar {
            polygon,
            regular,
            alpha,
            out,
        } => {
            let p = match (polygon, regular) {
                (Some(p), None) => parse_polygon(&p)?,
                (None, Some(k)) => regular_polygon(k),
                _ => return Err(Error::Invalid("give --polygon or --regular".into())),
            };
            let s = build_from_star(&p, &alpha)?;
            emit(&out, &s.to_text())?;
        }
        ConeCmd::Check { file } => {
            let s = load_surface(&file)?;
            let r = s.validate();
            print!("{r}");
            if !r.to_string().ends_with('\n') {
                println!();
            }
            if !r.passed() {
                return Ok(Outcome::Invalid);
            }
        }
        ConeCmd::Delaunay { file, out } => {
            let s = load_surface(&file)?;
            emit(&out, &delaunay(&s)?.to_text())?;
        }
        ConeCmd::Areaform { file, eigen } => {
            let s = load_surface(&file)?;
            let f = area_form(&cocycle_basis(&s)?)?;
            let b = cocycle_basis(&s)?;
            let (p, q) = f.signature();
            println!("dimension {}", b.dimension());
            println!("signature {p} {q}");
            println!("own_value {}", sig12(f.eval(&b.own_leaders())));
            println!("area {}", sig12(s.area()));
            if eigen {
                let e: Vec<String> = f.eigenvalues().iter().map(|x| sig12(*x)).collect();
                println!("eigenvalues {}", e.join(" "));
            }
        }
        ConeCmd::Cut { file, vertex } => {
            let c = cut_to_star(&load_surface(&file)?, vertex)?;
            print!("{}", star_text(&c.star));
        }
        ConeCmd::Darts { file, vertex } => {
            let c = cut_to_star(&load_surface(&file)?, vertex)?;
            let d = dart_decomposition(&c.star)?;
            let mut t = String::from("tip_a,tip_b,theta,area\n");
            for x in &d.darts {
                writeln!(
                    t,
                    "{},{},{},{}",
                    x.chord.0,
                    x.chord.1,
                    sig12(x.theta),
                    sig12(x.area())
                )
                .unwrap();
            }
            writeln!(
                t,
                "# angle_sum {} dual_tree {}",
                sig12(d.angle_sum()),
                d.dual_is_tree()
            )
            .unwrap();
            print!("{t}");
        }
        ConeCmd::SignatureRun { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut all = true;
            println!("index,n,positive,negative,relative_area_error");
            for i in 0..count {
                let n = 4 + i % 6;
                let s = random_surface(&mut rng, n)?;
                let b = cocycle_basis(&s)?;
                let f = area_form(&b)?;
                let (p, q) = f.signature();
                let err = (f.eval(&b.own_leaders()) - s.area()).abs() / s.area();
                all &= (p, q) == (1, n - 3) && err < 1e-9;
                println!("{i},{n},{p},{q},{:.3e}", err);
            }
            if !all {
                return Ok(Outcome::Mismatch);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn parse_golden(text: &str) -> Result<Vec<orbifolds::OrbifoldRow>> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with('|') {
        orbifolds::parse_markdown(text)
    } else if first.contains(',') {
        let body: Vec<String> = text.lines().skip(1).map(|l| l.replace(',', " ")).collect();
        orbifolds::parse_rows(&body.join("\n"))
    } else {
        orbifolds::parse_rows(text)
    }
}

fn orbifold(cmd: OrbifoldCmd) -> Result<Outcome> {
    let OrbifoldCmd::Table {
        qmax,
        format,
        out,
        verify,
    } = cmd;
    if qmax == 0 {
        return Err(Error::Invalid("--qmax must be positive".into()));
    }
    let rows = orbifolds::enumerate(qmax);
    let text = match format {
        TableFormat::Csv => orbifolds::to_csv(&rows),
        TableFormat::Markdown => orbifolds::to_markdown(&rows),
    };
    emit(&out, &text)?;
    eprintln!("{} rows", rows.len());
    if let Some(g) = verify {
        let want = parse_golden(&read(&g)?)?;
        let diff = orbifolds::diff_rows(&rows, &want);
        for d in &diff {
            eprintln!("{d}");
        }
        if !diff.is_empty() {
            return Ok(Outcome::Mismatch);
        }
        eprintln!("verified against {} golden rows", want.len());
    }
    Ok(Outcome::Ok)
}

fn configure_jobs(jobs: Option<usize>) -> Result<()> {
    let env = std::env::var("SHAPES_LAB_JOBS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok());
    if let Some(n) = jobs.or(env) {
        if n == 0 {
            return Err(Error::Invalid("--jobs must be positive".into()));
        }
        // a pool configured earlier in the same process is kept
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    Ok(())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = configure_jobs(cli.jobs).and_then(|_| match cli.command {
        Command::Hexagons(c) => hexagons(c),
        Command::Triangulate(c) => triangulate(c),
        Command::Cone(c) => cone(c),
        Command::Orbifolds(c) => orbifold(c),
    });
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Invalid) => ExitCode::from(EXIT_DOMAIN),
        Ok(Outcome::Mismatch) => ExitCode::from(EXIT_MISMATCH),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_DOMAIN)
        }
    }
}
