//! The subcommands.

use std::path::{Path as FsPath, PathBuf};

use dgql_core::barkoszul::{arrow_counts_by_degree, bar_complex, dual_bar, dual_bar_quiver, AugmentedFiniteAlgebra};
use dgql_core::dgalg::{CohomologyTable, DGQuiverAlgebra};
use dgql_core::frobenius::{check_self_injective, describe_dims, FDModule, SelfInjectiveAlgebra};
use dgql_core::ginzburg::{ginzburg_dg, jacobian};
use dgql_core::trivext::{
    cy_symmetry_check, trivial_extension, twisted_dual, verify_iso, walk_rescale_iso, RadSquareZeroAlgebra,
    TrivialExtensionAlgebra,
};
use dgql_core::{random, Error, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::parse::{self, TwistedTree};
use crate::report::{list, Report};
use crate::{CliError, Job};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Command {
    D2Check,
    Cohomology,
    Jacobian,
    Ginzburg,
    Bar,
    DualBar,
    TrivextIso,
    CyCheck,
    SelfInjCheck,
    StableHom,
    ShiftedHom,
}

impl Command {
    pub const ALL: [Command; 11] = [
        Command::D2Check,
        Command::Cohomology,
        Command::Jacobian,
        Command::Ginzburg,
        Command::Bar,
        Command::DualBar,
        Command::TrivextIso,
        Command::CyCheck,
        Command::SelfInjCheck,
        Command::StableHom,
        Command::ShiftedHom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::D2Check => "d2check",
            Command::Cohomology => "cohomology",
            Command::Jacobian => "jacobian",
            Command::Ginzburg => "ginzburg",
            Command::Bar => "bar",
            Command::DualBar => "dualbar",
            Command::TrivextIso => "trivext-iso",
            Command::CyCheck => "cy-check",
            Command::SelfInjCheck => "selfinj-check",
            Command::StableHom => "stable-hom",
            Command::ShiftedHom => "shifted-hom",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }

    fn arity(self) -> usize {
        match self {
            Command::StableHom | Command::ShiftedHom => 2,
            _ => 1,
        }
    }
}

type Failure = (Option<PathBuf>, CliError);

fn read(path: &FsPath) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| {
        (
            Some(path.to_path_buf()),
            CliError::Precondition(format!("cannot read input: {e}")),
        )
    })
}

fn extension(path: &FsPath) -> &str {
    path.extension().and_then(|e| e.to_str()).unwrap_or("")
}

fn at<T>(path: &FsPath, r: Result<T, CliError>) -> Result<T, Failure> {
    r.map_err(|e| (Some(path.to_path_buf()), e))
}

fn wrong_kind(path: &FsPath, want: &str) -> Failure {
    (
        Some(path.to_path_buf()),
        CliError::Precondition(format!("expected {want} input, found `.{}`", extension(path))),
    )
}

fn core(e: Error) -> Failure {
    (None, CliError::from_core(e))
}

/// A dg algebra from `.dgq`, `.qpot` (its Ginzburg algebra) or `.aug` (its dual bar).
fn load_dg(path: &FsPath, n: u32) -> Result<DGQuiverAlgebra, Failure> {
    let text = read(path)?;
    match extension(path) {
        "dgq" => at(path, parse::parse_dgq(&text, n)),
        "qpot" => {
            let w = at(path, parse::parse_qpot(&text, n))?;
            at(path, ginzburg_dg(&w).map_err(CliError::from_core))
        }
        "aug" => {
            let a = at(path, parse::parse_aug(&text))?;
            at(path, dual_bar(&a, n).map_err(CliError::from_core))
        }
        _ => Err(wrong_kind(path, "`.dgq`, `.qpot` or `.aug`")),
    }
}

fn load_aug(path: &FsPath) -> Result<AugmentedFiniteAlgebra, Failure> {
    if extension(path) != "aug" {
        return Err(wrong_kind(path, "`.aug`"));
    }
    let text = read(path)?;
    at(path, parse::parse_aug(&text))
}

fn load_tree(path: &FsPath) -> Result<TwistedTree, Failure> {
    if extension(path) != "tree" {
        return Err(wrong_kind(path, "`.tree`"));
    }
    let text = read(path)?;
    at(path, parse::parse_tree(&text))
}

/// Twists from the file; arrows without a `twist` line get random values
/// under `--seed` and 1 otherwise.
fn twists(t: &TwistedTree, seed: Option<u64>) -> (Vec<Scalar>, Vec<Scalar>) {
    let m = t.quiver.num_arrows();
    let (rl, ru) = match seed {
        Some(s) => random::twists(&mut ChaCha8Rng::seed_from_u64(s), t.field, m),
        None => (vec![t.field.one(); m], vec![t.field.one(); m]),
    };
    t.twists
        .iter()
        .enumerate()
        .map(|(k, x)| x.clone().unwrap_or_else(|| (rl[k].clone(), ru[k].clone())))
        .unzip()
}

fn extension_of(t: &TwistedTree, l: Vec<Scalar>, u: Vec<Scalar>, d: i32) -> Result<TrivialExtensionAlgebra, Failure> {
    let r = RadSquareZeroAlgebra::new(t.quiver.clone(), t.field);
    let m = twisted_dual(&r, l, u).map_err(core)?;
    trivial_extension(&m, d).map_err(core)
}

/// The algebra of a `.alg` file, or the trivial extension of a `.tree` file.
fn load_algebra(path: &FsPath, job: &Job) -> Result<dgql_core::algebra::FiniteAlgebra, Failure> {
    match extension(path) {
        "alg" => {
            let text = read(path)?;
            at(path, parse::parse_alg(&text, job.truncation))
        }
        "tree" => {
            let t = load_tree(path)?;
            let (l, u) = twists(&t, job.seed);
            Ok(extension_of(&t, l, u, job.d)?.algebra().clone())
        }
        _ => Err(wrong_kind(path, "`.alg` or `.tree`")),
    }
}

fn load_modules(path: &FsPath, l: &SelfInjectiveAlgebra) -> Result<Vec<(String, FDModule)>, Failure> {
    if extension(path) != "mod" {
        return Err(wrong_kind(path, "`.mod`"));
    }
    let text = read(path)?;
    at(path, parse::parse_modules(&text, l.algebra()))
}

fn self_injective(path: &FsPath, job: &Job) -> Result<SelfInjectiveAlgebra, Failure> {
    let alg = load_algebra(path, job)?;
    check_self_injective(&alg).map_err(|e| (Some(path.to_path_buf()), CliError::Precondition(e.to_string())))
}

/// Runs the job; the flag is false when a verification failed.
pub fn run(job: &Job) -> Result<(Report, bool), Failure> {
    let want = job.command.arity();
    if job.inputs.len() != want {
        return Err((
            None,
            CliError::Precondition(format!(
                "`{}` takes {want} input file(s), got {}",
                job.command.name(),
                job.inputs.len()
            )),
        ));
    }
    let input = job.inputs[0].as_path();
    let n = job.truncation;
    let mut r = Report::new();
    r.set("command", job.command.name());
    r.set("truncation", n);
    let passed = match job.command {
        Command::D2Check => {
            let a = load_dg(input, n)?;
            d2_report(&a, &mut r)
        }
        Command::Cohomology => {
            let a = load_dg(input, n)?;
            if !d2_report(&a, &mut r) {
                return Ok((r, false));
            }
            let degrees = job.degrees.unwrap_or((-2, 0));
            let h = a.cohomology_dims(degrees, n).map_err(core)?;
            cohomology_report(&a, &h, &mut r);
            true
        }
        Command::Jacobian => {
            if extension(input) != "qpot" {
                return Err(wrong_kind(input, "`.qpot`"));
            }
            let text = read(input)?;
            let w = at(input, parse::parse_qpot(&text, n))?;
            let j = jacobian(&w, n).map_err(core)?;
            let dims = &j.dims;
            let last = dims.by_weight.iter().rposition(|&d| d > 0).unwrap_or(0);
            for (wt, d) in dims.by_weight.iter().enumerate().take(last + 1) {
                r.both(&format!("weight.{wt:02}"), &format!("weight {wt}"), d);
            }
            let finite = if dims.likely_finite { "likely" } else { "not certified" };
            r.line(format!("total: {} (finite: {finite})", dims.total));
            r.set("total", dims.total);
            r.set("finite", dims.likely_finite);
            if !j.vanishing.is_empty() {
                r.both("vanishing", "vanishing derivatives", list(&j.vanishing));
            }
            r.set("rules", j.quotient.rules().len());
            true
        }
        Command::Ginzburg => {
            if extension(input) != "qpot" {
                return Err(wrong_kind(input, "`.qpot`"));
            }
            let text = read(input)?;
            let w = at(input, parse::parse_qpot(&text, n))?;
            let g = ginzburg_dg(&w).map_err(core)?;
            for l in dgq_text(&g).lines() {
                r.line(l);
            }
            let q = g.quiver();
            r.set("field", g.field());
            r.set("vertices", list(q.vertices()));
            for (k, a) in q.arrows().iter().enumerate() {
                r.set(
                    format!("arrow.{}", a.name),
                    format!(
                        "{} {} {} {}",
                        q.vertex_name(a.source),
                        q.vertex_name(a.target),
                        a.degree,
                        a.weight
                    ),
                );
                if !g.differential(k).is_zero() {
                    r.set(format!("d.{}", a.name), g.differential(k).format());
                }
            }
            true
        }
        Command::Bar => {
            let a = load_aug(input)?;
            let b = bar_complex(&a, n as usize).map_err(core)?;
            for ((len, deg), d) in b.dims() {
                r.both(&format!("dim.{len}.{deg}"), &format!("length {len}, degree {deg}"), d);
            }
            let name = |c: &[usize]| list(c.iter().map(|&k| a.basis()[k].name.as_str()));
            let sq = b.check_d_squared();
            let co = b.check_coderivation();
            let verdict = |x: &Option<Vec<usize>>| match x {
                None => "ok".to_string(),
                Some(c) => format!("fails on {}", name(c)),
            };
            r.both("d_squared", "d²", verdict(&sq));
            r.both("coderivation", "coderivation", verdict(&co));
            if a.n_max() > 2 {
                r.line("note: signs for m_n with n >= 3 follow the Koszul convention fixed by d² = 0");
            }
            sq.is_none() && co.is_none()
        }
        Command::DualBar => {
            let a = load_aug(input)?;
            let e = dual_bar(&a, n).map_err(core)?;
            if let Ok(q) = dual_bar_quiver(&a) {
                for (deg, c) in arrow_counts_by_degree(&q) {
                    r.both(&format!("arrows.{deg}"), &format!("arrows in degree {deg}"), c);
                }
            } else {
                r.line("input is not positive minimal; quiver shape not certified");
                for (deg, c) in arrow_counts_by_degree(e.quiver()) {
                    r.both(&format!("arrows.{deg}"), &format!("arrows in degree {deg}"), c);
                }
            }
            for (k, arrow) in e.quiver().arrows().iter().enumerate() {
                r.both(
                    &format!("d.{}", arrow.name),
                    &format!("d({})", arrow.name),
                    e.differential(k).format(),
                );
            }
            if !d2_report(&e, &mut r) {
                return Ok((r, false));
            }
            let degrees = job.degrees.unwrap_or((0, 0));
            let h = e.cohomology_dims(degrees, n).map_err(core)?;
            cohomology_report(&e, &h, &mut r);
            true
        }
        Command::TrivextIso => {
            let t = load_tree(input)?;
            let (l, u) = twists(&t, job.seed);
            let m = t.quiver.num_arrows();
            let twisted = extension_of(&t, l.clone(), u.clone(), job.d)?;
            let plain = extension_of(&t, vec![t.field.one(); m], vec![t.field.one(); m], job.d)?;
            let phi = walk_rescale_iso(&t.quiver, t.field, &l, &u).map_err(core)?;
            let basis = twisted.algebra().basis();
            let scales: Vec<String> = (0..basis.len())
                .filter(|&k| !phi.get(k, k).is_one())
                .map(|k| format!("{}={}", basis[k].name, phi.get(k, k)))
                .collect();
            for (k, a) in t.quiver.arrows().iter().enumerate() {
                r.set(format!("twist.{}", a.name), format!("{} {}", l[k], u[k]));
            }
            r.both(
                "rescaled",
                "rescaled basis elements",
                if scales.is_empty() { "none".into() } else { list(scales) },
            );
            let report = verify_iso(&phi, &twisted, &plain);
            let tables = twisted.graded_table() == plain.graded_table();
            r.both("graded_tables_equal", "graded tables equal", tables);
            match &report.failure {
                None => r.both("iso", "isomorphism onto A(Q,1,1)", "verified"),
                Some(f) => r.both("iso", "isomorphism onto A(Q,1,1)", format!("fails: {f}")),
            }
            report.passed() && tables
        }
        Command::CyCheck => {
            let t = load_tree(input)?;
            let (l, u) = twists(&t, job.seed);
            let b = extension_of(&t, l, u, job.d)?;
            let rep = cy_symmetry_check(b.algebra(), job.d);
            let v = b.algebra().vertex_names();
            r.set("d", job.d);
            for ((i, j, p), dim) in &rep.table {
                r.both(
                    &format!("dim.{}.{}.{p}", v[*i], v[*j]),
                    &format!("e_{} B^{p} e_{}", v[*i], v[*j]),
                    dim,
                );
            }
            let bad: Vec<String> = rep
                .violations
                .iter()
                .map(|(i, j, p)| format!("{}:{}:{p}", v[*i], v[*j]))
                .collect();
            r.both(
                "violations",
                "violations",
                if bad.is_empty() { "none".into() } else { list(bad) },
            );
            rep.passed()
        }
        Command::SelfInjCheck => {
            let alg = load_algebra(input, job)?;
            r.set("dim", alg.dim());
            match check_self_injective(&alg) {
                Ok(l) => {
                    let v = alg.vertex_names();
                    let perm = l
                        .nakayama()
                        .iter()
                        .enumerate()
                        .map(|(i, &j)| format!("{}->{}", v[i], v[j]));
                    r.both("self_injective", "self-injective", true);
                    r.both("nakayama", "Nakayama permutation", list(perm));
                    true
                }
                Err(Error::NotSelfInjective(why)) => {
                    r.both("self_injective", "self-injective", false);
                    r.both("reason", "reason", why);
                    false
                }
                Err(e) => return Err(core(e)),
            }
        }
        Command::StableHom | Command::ShiftedHom => {
            let l = self_injective(input, job)?;
            let mods = load_modules(&job.inputs[1], &l)?;
            let alg = l.algebra();
            for (name, m) in &mods {
                r.both(
                    &format!("module.{name}"),
                    &format!("module {name}"),
                    describe_dims(alg, m),
                );
            }
            let shifts: Vec<i64> = if job.command == Command::StableHom {
                vec![0]
            } else {
                let (a, b) = job.degrees.unwrap_or((-3, 3));
                (a as i64..=b as i64).collect()
            };
            let mut ok = true;
            for (a, m) in &mods {
                for (b, x) in &mods {
                    if job.command == Command::StableHom {
                        let s = l.stable_hom(m, x).map_err(core)?;
                        r.both(&format!("stable.{a}.{b}"), &format!("stable Hom({a}, {b})"), s.dim);
                        continue;
                    }
                    let mut row = Vec::new();
                    for &s in &shifts {
                        match l.shifted_hom(m, x, s) {
                            Ok(d) => {
                                r.set(format!("shifted.{a}.{b}.{s}"), d);
                                row.push(d.to_string());
                            }
                            Err(Error::Internal(why)) => {
                                r.set(format!("shifted.{a}.{b}.{s}"), "mismatch");
                                r.line(format!("cross-check mismatch for ({a}, {b}, {s}): {why}"));
                                row.push("?".into());
                                ok = false;
                            }
                            Err(e) => return Err(core(e)),
                        }
                    }
                    r.line(format!(
                        "Hom({a}, Σ^n {b}) for n = {}..{}: {}",
                        shifts[0],
                        shifts[shifts.len() - 1],
                        list(row)
                    ));
                }
            }
            ok
        }
    };
    Ok((r, passed))
}

fn d2_report(a: &DGQuiverAlgebra, r: &mut Report) -> bool {
    let rep = a.check_d_squared();
    match &rep.failure {
        None => {
            r.both("d_squared", "d²", format!("0 up to weight {}", a.truncation()));
            true
        }
        Some(f) => {
            let q = a.quiver();
            r.both(
                "d_squared",
                "d²",
                format!("nonzero on {} at weight {}", f.arrow, f.weight),
            );
            r.set("offending_arrow", &f.arrow);
            r.both(
                "offending_block",
                &format!(
                    "d²({}) from {} to {}",
                    f.arrow,
                    q.vertex_name(f.source),
                    q.vertex_name(f.target)
                ),
                f.block.format(),
            );
            false
        }
    }
}

fn cohomology_report(a: &DGQuiverAlgebra, h: &CohomologyTable, r: &mut Report) {
    let q = a.quiver();
    r.both(
        "mode",
        "mode",
        if h.exact { "exact" } else { "approximate at truncation" },
    );
    if let Some(w) = &h.assignment {
        let ws = q
            .arrows()
            .iter()
            .zip(&w.weights)
            .map(|(x, w)| format!("{}={w}", x.name));
        r.both("weights", "weights", list(ws));
        r.both("weights_minimal", "weights certified minimal", w.certified_minimal);
    }
    for p in h.degrees.0..=h.degrees.1 {
        if h.exact {
            r.both(
                &format!("h.{p}.by_weight"),
                &format!("H^{p} by weight 0..{}", h.truncation),
                list(h.by_weight(p)),
            );
        } else {
            let blocks: Vec<String> = h
                .dims
                .iter()
                .filter(|(k, _)| k.degree == p)
                .map(|(k, d)| format!("{}->{}:{d}", q.vertex_name(k.source), q.vertex_name(k.target)))
                .collect();
            r.both(
                &format!("h.{p}.blocks"),
                &format!("H^{p} blocks"),
                if blocks.is_empty() { "none".into() } else { list(blocks) },
            );
        }
        r.both(&format!("h.{p}.total"), &format!("H^{p} total"), h.total_in_degree(p));
    }
}

/// `.dgq` text for a dg algebra; the inverse of [`parse::parse_dgq`].
pub fn dgq_text(a: &DGQuiverAlgebra) -> String {
    let q = a.quiver();
    let mut out = format!("field {}\n", a.field());
    for v in q.vertices() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for x in q.arrows() {
        out.push_str(&format!(
            "arrow {} {} {} {} {}\n",
            x.name,
            q.vertex_name(x.source),
            q.vertex_name(x.target),
            x.degree,
            x.weight
        ));
    }
    for (k, x) in q.arrows().iter().enumerate() {
        let d = a.differential(k);
        if !d.is_zero() {
            out.push_str(&format!("d {} = {}\n", x.name, d.format()));
        }
    }
    out
}
