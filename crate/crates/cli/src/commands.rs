//! One function per subcommand: resolve parameters, run the computation,
//! persist deterministic CSV/JSON outputs.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use hurwitz_core::braid::{self, RingContext, DEFAULT_STATE_BUDGET};
use hurwitz_core::cl::{self, PartitionType};
use hurwitz_core::ff::census;
use hurwitz_core::group::{self, Group, DEFAULT_GROUP_CAP};
use hurwitz_core::homology;
use hurwitz_core::kcomplex::{self, DegreeBound, GradedModule};

use crate::config::{parse_targets, Config, Params};
use crate::reports::{envelope, fmt_f64, to_json, Csv, OutputSet};
use crate::{computation, validation, CliResult};

/// Everything the global flags provide to a subcommand.
pub struct Ctx {
    pub config: Config,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub out_dir: PathBuf,
    pub force: bool,
}

impl Ctx {
    pub fn resolve_seed(&self, p: &mut Params) -> CliResult<u64> {
        p.u64("seed", self.seed, Some(0))
    }

    pub fn resolve_jobs(&self, p: &mut Params) -> CliResult<usize> {
        let j = p.usize("jobs", self.jobs, Some(1))?;
        // Parallelism is an execution detail, not part of the experiment:
        // keep it out of the config echo so serial and parallel runs of the
        // same experiment produce byte-identical reports.
        p.resolved.remove("jobs");
        if j == 0 {
            return Err(validation("jobs must be at least 1"));
        }
        Ok(j)
    }
}

/// Run `body` against a fresh output set; on failure remove anything it
/// already wrote so no partial outputs survive.
fn with_outputs<F>(ctx: &Ctx, body: F) -> CliResult<Vec<PathBuf>>
where
    F: FnOnce(&mut OutputSet) -> CliResult<()>,
{
    let mut out = OutputSet::new(&ctx.out_dir, ctx.force)?;
    match body(&mut out) {
        Ok(()) => Ok(out.written_paths().to_vec()),
        Err(e) => {
            out.abandon();
            Err(e)
        }
    }
}

/// `S3`-style preset name, inline `preset:`/`perm:` spec text, or
/// `@path` to a spec file.
fn load_group(spec: &str) -> CliResult<Group> {
    let text = if let Some(path) = spec.strip_prefix('@') {
        std::fs::read_to_string(Path::new(path))
            .map_err(|e| validation(format!("cannot read group file {path}: {e}")))?
    } else if spec.contains(':') {
        spec.replace(';', "\n")
    } else {
        format!("preset: {spec}")
    };
    group::parse_group_spec(&text, DEFAULT_GROUP_CAP)
        .map_err(|e| validation(format!("bad group spec {spec:?}: {e}")))
}

fn load_pair(p: &mut Params, group_flag: Option<&str>, rep_flag: Option<&str>) -> CliResult<(Group, group::ConjClass)> {
    let gspec = p.string("group", group_flag, None)?;
    let rep = p.string("class_rep", rep_flag, None)?;
    let g = load_group(&gspec)?;
    let e = group::resolve_class_rep(&g, &rep)
        .map_err(|e| validation(format!("bad class rep {rep:?}: {e}")))?;
    let class = group::conjugacy_class(&g, e);
    Ok((g, class))
}

fn tuple_tag(t: &[usize]) -> String {
    t.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("|")
}

/// Comma-free partition tag for CSV fields: `trivial`, `2`, `1+1`.
pub fn target_tag(a: &PartitionType) -> String {
    if a.partition.is_empty() {
        "trivial".to_string()
    } else {
        a.partition
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }
}

// ---------------------------------------------------------------- orbits

#[derive(Serialize)]
struct OrbitsSummary {
    group_order: usize,
    class_size: usize,
    nonsplitting: bool,
    rational: bool,
    orbit_counts: Vec<usize>,
    total_rows: usize,
}

pub fn orbits(ctx: &Ctx, group: Option<&str>, rep: Option<&str>, n_max: Option<usize>) -> CliResult<Vec<PathBuf>> {
    let mut p = Params::new(&ctx.config);
    let (g, class) = load_pair(&mut p, group, rep)?;
    let n_max = p.usize("n_max", n_max, None)?;
    let subs = group::subgroups(&g);
    let (nonsplit, _) = group::is_nonsplitting(&g, &class);
    let rational = group::is_rational_class(&g, &class);

    let mut csv = Csv::new(&[
        "degree",
        "orbit_id",
        "size",
        "canonical_rep",
        "boundary",
        "monodromy_order",
        "nielsen_id",
    ]);
    let mut counts = Vec::new();
    let mut total = 0usize;
    for n in 0..=n_max {
        let table = braid::enumerate_orbits_with_subgroups(&g, &class, n, DEFAULT_STATE_BUDGET, &subs)
            .map_err(|e| computation(format!("degree {n}: {e}")))?;
        counts.push(table.orbit_count());
        for (id, rec) in table.orbits.iter().enumerate() {
            csv.row(&[
                n.to_string(),
                id.to_string(),
                rec.size.to_string(),
                tuple_tag(&rec.canonical_rep),
                rec.boundary_elt.to_string(),
                subs.subgroups[rec.monodromy_subgroup_id].len().to_string(),
                rec.nielsen_id.to_string(),
            ]);
            total += 1;
        }
    }
    let summary = OrbitsSummary {
        group_order: g.order,
        class_size: class.members.len(),
        nonsplitting: nonsplit,
        rational,
        orbit_counts: counts,
        total_rows: total,
    };
    let env = envelope(
        "orbits",
        "braid-orbit decomposition with boundary, monodromy, and Nielsen invariants",
        p.resolved,
        None,
        Some("exact".to_string()),
        summary,
    );
    with_outputs(ctx, |out| {
        out.write("orbits.csv", &csv.into_bytes())?;
        out.write("orbits.json", &to_json(&env)?)?;
        Ok(())
    })
}

// ------------------------------------------------------------------ ring

#[derive(Serialize)]
struct RingSummary {
    d: usize,
    deg_u: usize,
    verified_from: usize,
    n_max: usize,
    quotient_dims: Vec<usize>,
    dims: Vec<usize>,
    tail_orbit_periodicity: bool,
}

pub fn ring(
    ctx: &Ctx,
    group: Option<&str>,
    rep: Option<&str>,
    n_max: Option<usize>,
    d_max: Option<usize>,
) -> CliResult<Vec<PathBuf>> {
    let mut p = Params::new(&ctx.config);
    let (g, class) = load_pair(&mut p, group, rep)?;
    let n_max = p.usize("n_max", n_max, Some(12))?;
    let d_max = p.usize("d_max", d_max, Some(4))?;
    let rc = RingContext::new(&g, class, n_max, DEFAULT_STATE_BUDGET)
        .map_err(|e| computation(format!("orbit enumeration: {e}")))?;
    let desc = braid::find_stabilizer_u(&rc, d_max, n_max)
        .map_err(|e| computation(format!("stabilizer search: {e}")))?;
    let dims: Vec<usize> = (0..=n_max).map(|n| rc.dim(n)).collect();
    // On the verified tail the orbit count repeats with period deg U.
    let periodic = (desc.verified_from..=n_max.saturating_sub(desc.deg_u))
        .all(|n| rc.dim(n) == rc.dim(n + desc.deg_u));

    let mut csv = Csv::new(&["n", "dim", "quotient_dim"]);
    for n in 0..=n_max {
        csv.row(&[
            n.to_string(),
            dims[n].to_string(),
            desc.quotient_dims[n].to_string(),
        ]);
    }
    let summary = RingSummary {
        d: desc.d,
        deg_u: desc.deg_u,
        verified_from: desc.verified_from,
        n_max: desc.n_max,
        quotient_dims: desc.quotient_dims.clone(),
        dims,
        tail_orbit_periodicity: periodic,
    };
    let env = envelope(
        "ring",
        "central stabilizer element with eventually vanishing quotient",
        p.resolved,
        None,
        Some("exact".to_string()),
        summary,
    );
    with_outputs(ctx, |out| {
        out.write("ring.csv", &csv.into_bytes())?;
        out.write("ring.json", &to_json(&env)?)?;
        Ok(())
    })
}

// -------------------------------------------------------------- kcomplex

#[derive(Serialize)]
struct KSummary {
    module: String,
    n_max: usize,
    /// dims[n][q] = dim H_q at total degree n.
    dims: Vec<Vec<usize>>,
    /// per q: "vanishing", "attained:<n>", or "censored:<n>".
    degree_of_hq: Vec<String>,
    max_hq_minus_q: Option<i64>,
    any_censored: bool,
    identities_checked: bool,
}

fn degree_tag(b: DegreeBound) -> String {
    match b {
        DegreeBound::Vanishing => "vanishing".to_string(),
        DegreeBound::Attained(n) => format!("attained:{n}"),
        DegreeBound::CensoredAtWindow(n) => format!("censored:{n}"),
    }
}

pub fn kcomplex(
    ctx: &Ctx,
    group: Option<&str>,
    rep: Option<&str>,
    n_max: Option<usize>,
    module: Option<&str>,
) -> CliResult<Vec<PathBuf>> {
    let mut p = Params::new(&ctx.config);
    let (g, class) = load_pair(&mut p, group, rep)?;
    let n_max = p.usize("n_max", n_max, None)?;
    let module_spec = p.string("module", module, Some("ring"))?;
    // Homotopy checks look one total degree past the window.
    let rc = RingContext::new(&g, class, n_max + 1, DEFAULT_STATE_BUDGET)
        .map_err(|e| computation(format!("orbit enumeration: {e}")))?;
    let gm = if module_spec == "ring" {
        GradedModule::ring(&rc)
    } else if let Some(k) = module_spec.strip_prefix("free:") {
        let k: usize = k
            .parse()
            .map_err(|_| validation(format!("bad module spec {module_spec:?}")))?;
        GradedModule::free_power(&rc, k)
    } else {
        return Err(validation(format!(
            "bad module spec {module_spec:?}: expected `ring` or `free:<k>`"
        )));
    };
    let builder = kcomplex::KComplexBuilder::new(&rc, &gm);
    for n in 0..=n_max {
        builder
            .build(n)
            .map_err(|e| computation(format!("degree {n}: {e}")))?;
        for q in 0..=n {
            for pos in 0..rc.class.members.len() {
                builder
                    .homotopy_check(rc.class.members[pos], n, q)
                    .map_err(|e| computation(format!("homotopy at (n={n}, q={q}): {e}")))?;
            }
        }
    }
    let report = kcomplex::k_homology(&rc, &gm, n_max)
        .map_err(|e| computation(format!("homology: {e}")))?;

    let mut csv = Csv::new(&["n", "q", "dim_hq"]);
    for n in 0..=n_max {
        for q in 0..report.dims[n].len() {
            csv.row(&[n.to_string(), q.to_string(), report.dims[n][q].to_string()]);
        }
    }
    let summary = KSummary {
        module: report.module_tag.clone(),
        n_max,
        dims: report.dims.clone(),
        degree_of_hq: (0..=n_max).map(|q| degree_tag(report.degree_of_hq(q))).collect(),
        max_hq_minus_q: report.max_hq_minus_q(),
        any_censored: report.any_censored(),
        identities_checked: true,
    };
    let env = envelope(
        "kcomplex",
        "Koszul-type complex: boundary squares to zero, contracting homotopy, bounded homology degrees",
        p.resolved,
        None,
        Some(report.mode.label().to_string()),
        summary,
    );
    with_outputs(ctx, |out| {
        out.write("kcomplex.csv", &csv.into_bytes())?;
        out.write("kcomplex.json", &to_json(&env)?)?;
        Ok(())
    })
}

// -------------------------------------------------------------- homology

#[derive(Serialize)]
pub struct HomologySummary {
    pub p: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub deg_u: usize,
    pub betti: Vec<usize>,
    pub g_invariant_betti: Vec<usize>,
    pub u_map_ranks: Vec<usize>,
    pub u_map_bijective: Vec<bool>,
    pub observed_n0: Option<usize>,
}

pub fn homology(
    ctx: &Ctx,
    group: Option<&str>,
    rep: Option<&str>,
    p_deg: Option<usize>,
    n_min: Option<usize>,
    n_max: Option<usize>,
    d_max: Option<usize>,
) -> CliResult<Vec<PathBuf>> {
    let mut prm = Params::new(&ctx.config);
    let (g, class) = load_pair(&mut prm, group, rep)?;
    let p_deg = prm.usize("p", p_deg, Some(0))?;
    let n_min = prm.usize("n_min", n_min, Some(2))?;
    let n_max = prm.usize("n_max", n_max, None)?;
    let d_max = prm.usize("d_max", d_max, Some(4))?;
    let ring_window = prm.usize("ring_window", None, Some(12))?;
    if p_deg > 1 {
        return Err(validation("p must be 0 or 1"));
    }
    if n_min < 2 || n_min > n_max {
        return Err(validation("need 2 <= n_min <= n_max"));
    }
    let rc = RingContext::new(&g, class.clone(), ring_window, DEFAULT_STATE_BUDGET)
        .map_err(|e| computation(format!("orbit enumeration: {e}")))?;
    let desc = braid::find_stabilizer_u(&rc, d_max, ring_window)
        .map_err(|e| computation(format!("stabilizer search: {e}")))?;
    let rep_out = homology::stability_report(&g, &class, p_deg, n_min, n_max, &desc, DEFAULT_STATE_BUDGET)
        .map_err(|e| computation(format!("stability window: {e}")))?;

    let mut csv = Csv::new(&["n", "betti", "g_invariant_betti", "u_rank", "u_bijective"]);
    for (i, n) in (n_min..=n_max).enumerate() {
        let (ur, ub) = if i < rep_out.u_map_ranks.len() {
            (
                rep_out.u_map_ranks[i].to_string(),
                rep_out.u_map_bijective[i].to_string(),
            )
        } else {
            ("-".to_string(), "-".to_string())
        };
        csv.row(&[
            n.to_string(),
            rep_out.betti[i].to_string(),
            rep_out.g_invariant_betti[i].to_string(),
            ur,
            ub,
        ]);
    }
    let summary = HomologySummary {
        p: rep_out.p,
        n_min: rep_out.n_min,
        n_max: rep_out.n_max,
        deg_u: rep_out.deg_u,
        betti: rep_out.betti.clone(),
        g_invariant_betti: rep_out.g_invariant_betti.clone(),
        u_map_ranks: rep_out.u_map_ranks.clone(),
        u_map_bijective: rep_out.u_map_bijective.clone(),
        observed_n0: rep_out.observed_n0,
    };
    let env = envelope(
        "homology",
        "first two homology groups stabilize under the central multiplication map",
        prm.resolved,
        None,
        Some(rep_out.mode.label().to_string()),
        summary,
    );
    with_outputs(ctx, |out| {
        out.write("homology.csv", &csv.into_bytes())?;
        out.write("homology.json", &to_json(&env)?)?;
        Ok(())
    })
}

// ------------------------------------------------------------- cl-sample

#[derive(Serialize)]
pub struct ClTargetRow {
    pub target: String,
    pub mean: f64,
    pub std_err: f64,
    pub z_score_vs_one: f64,
}

#[derive(Serialize)]
pub struct ClSampleSummary {
    pub l: u64,
    pub matrix_n: usize,
    pub samples: usize,
    pub e_cap: u32,
    pub targets: Vec<ClTargetRow>,
    pub p_trivial: f64,
    pub reference_p_trivial: f64,
}

/// The measure's mass at the trivial group: ∏_{i≥1}(1 − ℓ^{-i}).
pub fn reference_trivial_mass(l: u64) -> f64 {
    let (m, _) = cl::mu_mass(&PartitionType::trivial(l), 400);
    m
}

pub fn cl_sample(
    ctx: &Ctx,
    l: Option<u64>,
    matrix_n: Option<usize>,
    samples: Option<usize>,
    e_cap: Option<u32>,
    targets: Option<&str>,
) -> CliResult<Vec<PathBuf>> {
    let mut p = Params::new(&ctx.config);
    let l = p.u64("l", l, Some(3))?;
    if l < 2 {
        return Err(validation("l must be at least 2"));
    }
    let matrix_n = p.usize("matrix_n", matrix_n, Some(8))?;
    let samples = p.usize("samples", samples, Some(100_000))?;
    let e_cap = p.u32("e_cap", e_cap, Some(4))?;
    let tspec = p.string("targets", targets, None)?;
    let seed = ctx.resolve_seed(&mut p)?;
    let targets = parse_targets(l, &tspec)?;

    let mut rows = Vec::new();
    let mut p_trivial = 0.0;
    for a in &targets {
        let est = cl::moment_estimate(a, matrix_n, samples, e_cap, seed)
            .map_err(|e| computation(format!("target {}: {e}", a.label())))?;
        p_trivial = est.p_trivial;
        rows.push(ClTargetRow {
            target: target_tag(a),
            mean: est.mean,
            std_err: est.std_err,
            z_score_vs_one: if est.std_err > 0.0 {
                (est.mean - 1.0) / est.std_err
            } else {
                0.0
            },
        });
    }
    let mut csv = Csv::new(&["target", "mean", "std_err", "z_score_vs_one"]);
    for r in &rows {
        csv.row(&[
            r.target.clone(),
            fmt_f64(r.mean),
            fmt_f64(r.std_err),
            fmt_f64(r.z_score_vs_one),
        ]);
    }
    let summary = ClSampleSummary {
        l,
        matrix_n,
        samples,
        e_cap,
        targets: rows,
        p_trivial,
        reference_p_trivial: reference_trivial_mass(l),
    };
    let env = envelope(
        "cl-sample",
        "random-matrix cokernel moments: expected surjection counts equal one",
        p.resolved,
        Some(seed),
        None,
        summary,
    );
    with_outputs(ctx, |out| {
        out.write("cl-sample.csv", &csv.into_bytes())?;
        out.write("cl-sample.json", &to_json(&env)?)?;
        Ok(())
    })
}

// -------------------------------------------------------------- sp-check

#[derive(Serialize)]
struct SpSummary {
    g: usize,
    l: u64,
    e: u32,
    target: String,
    q_residue: u64,
    sp_order: usize,
    o_size: usize,
    orbit_count: usize,
    transitive: bool,
    nonempty: bool,
}

pub fn sp_check(
    ctx: &Ctx,
    g: Option<usize>,
    l: Option<u64>,
    target: Option<&str>,
    q_residue: Option<u64>,
) -> CliResult<Vec<PathBuf>> {
    let mut p = Params::new(&ctx.config);
    let g = p.usize("genus", g, Some(2))?;
    let l = p.u64("l", l, Some(3))?;
    let e = p.u32("e", None, Some(1))?;
    let tspec = p.string("target", target, Some("1"))?;
    let q_residue = p.u64("q_residue", q_residue, None)?;
    if e != 1 {
        return Err(validation("only modulus exponent e = 1 is supported"));
    }
    let ts = parse_targets(l, &tspec)?;
    if ts.len() != 1 {
        return Err(validation("sp-check takes exactly one target"));
    }
    if q_residue % l == 0 || (q_residue + l - 1) % l == 0 {
        return Err(validation("need q(q-1) invertible modulo l"));
    }
    let check = cl::symplectic_orbit_check(g, l, e, &ts[0], q_residue)
        .map_err(|e| computation(format!("orbit check: {e}")))?;
    let summary = SpSummary {
        g,
        l,
        e,
        target: target_tag(&ts[0]),
        q_residue,
        sp_order: check.sp_order,
        o_size: check.o_size,
        orbit_count: check.orbit_count,
        transitive: check.transitive,
        nonempty: check.nonempty,
    };
    let env = envelope(
        "sp-check",
        "symplectic group acts transitively on similitude-fixed surjections",
        p.resolved,
        None,
        Some("exact".to_string()),
        summary,
    );
    with_outputs(ctx, |out| {
        out.write("sp-check.json", &to_json(&env)?)?;
        Ok(())
    })
}

// ------------------------------------------------------------- ff-census

#[derive(Serialize)]
pub struct CensusSummary {
    pub q: u64,
    pub n: usize,
    pub l: u64,
    pub nonsquare_c0: usize,
    pub curve_count: usize,
    pub targets: Vec<String>,
    pub avg_m_a: Vec<f64>,
    pub distribution: BTreeMap<String, usize>,
    pub mu_masses: BTreeMap<String, f64>,
    pub tv_distance_to_mu: f64,
    pub warnings: Vec<String>,
    pub failure_count: usize,
}

pub fn ff_census(
    ctx: &Ctx,
    q: Option<u64>,
    n: Option<usize>,
    l: Option<u64>,
    targets: Option<&str>,
) -> CliResult<Vec<PathBuf>> {
    let mut p = Params::new(&ctx.config);
    let q = p.u64("q", q, None)?;
    let n = p.usize("n", n, None)?;
    let l = p.u64("l", l, Some(3))?;
    let tspec = p.string("targets", targets, Some("1"))?;
    let seed = ctx.resolve_seed(&mut p)?;
    let jobs = ctx.resolve_jobs(&mut p)?;
    if n % 2 == 0 {
        return Err(validation("n must be odd (ramified place at infinity)"));
    }
    if l < 3 || l % 2 == 0 {
        return Err(validation("l must be an odd prime"));
    }
    if q % l == 0 {
        return Err(validation("l must not divide q"));
    }
    let ts = parse_targets(l, &tspec)?;
    let report = census::cl_census(q, n, l, &ts, seed, jobs)
        .map_err(|e| computation(format!("census: {e}")))?;

    let mut header: Vec<String> = vec![
        "curve_id".into(),
        "f".into(),
        "h".into(),
        "l_part".into(),
    ];
    for t in &report.targets {
        header.push(format!("m_{}", target_tag(t)));
    }
    let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
    let mut csv = Csv::new(&header_refs);
    for r in &report.records {
        let mut row: Vec<String> = vec![
            r.curve_id.to_string(),
            r.f.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("|"),
            r.h.to_string(),
            target_tag(&r.l_part),
        ];
        for m in &r.m_a {
            row.push(m.to_string());
        }
        csv.row(&row);
    }
    let summary = CensusSummary {
        q: report.q,
        n: report.n,
        l: report.l,
        nonsquare_c0: report.nonsquare_c0,
        curve_count: report.curve_count,
        targets: report.targets.iter().map(target_tag).collect(),
        avg_m_a: report.avg_m_a.clone(),
        distribution: report.distribution.clone(),
        mu_masses: report.mu_masses.clone(),
        tv_distance_to_mu: report.tv_distance_to_mu,
        warnings: report.warnings.clone(),
        failure_count: report.failures.len(),
    };
    let env = envelope(
        "ff-census",
        "class-group surjection moments over an exhaustive family of hyperelliptic curves",
        p.resolved,
        Some(seed),
        Some("exact".to_string()),
        summary,
    );
    with_outputs(ctx, |out| {
        out.write("ff-census.csv", &csv.into_bytes())?;
        out.write("ff-census.json", &to_json(&env)?)?;
        Ok(())
    })
}
