use std::collections::BTreeSet;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use logfman::algebra::linalg::Matrix;
use logfman::algebra::poly::{Exponents, Poly};
use logfman::deform::curve::{compute_mf_spacecurve, DeterminantalCurveFamily};
use logfman::deform::icis::{compute_mf_icis, ICISFamily};
use logfman::deform::node::{tprime_matrix, EpsLift, NodeFamily, NodeField};
use logfman::deform::unfolding::unfolding_basis;
use logfman::fmanifold::curve::build_fstructure_curve;
use logfman::fmanifold::node::build_fstructure_node_at;
use logfman::fmanifold::semisimple::semisimplicity_at;
use logfman::fmanifold::stratum::restrict_to_stratum;
use logfman::fmanifold::structure::FStructure;
use logfman::frobenius::euler::{euler_check, weight_check};
use logfman::frobenius::fiber::{fiber_restrict, SIGMA_INFINITY_1, SIGMA_INFINITY_2};
use logfman::frobenius::flat::{default_truncation, flat_coordinates, flat_pairing_check, FlatChartReport};
use logfman::frobenius::pairing::{hankel_block, matrix_strings, pairing_matrix, residue_theorem_check, reverse_indices, PairingReport};
use logfman::parse::parse_polys;
use logfman::quotient::groebner::groebner_basis;
use logfman::sample::Sampler;
use logfman::scalar::{parse_rational, rational_string, Field, Rational};

use crate::report::{Check, Kind, Report, RunConfig, Suite};
use crate::CliError;

pub const TRUNC_ENV: &str = "LOGFMAN_TRUNC";

type Section = (Vec<Check>, Vec<(String, Value)>);

fn require(v: Option<usize>, name: &str) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{name}")))
}

pub fn parse_base(items: &[String]) -> Result<Vec<Rational>, CliError> {
    items
        .iter()
        .map(|s| parse_rational(s).ok_or_else(|| CliError::Usage(format!("not an exact rational: `{s}`"))))
        .collect()
}

/// Explicit `--trunc`, else the environment override, else the default.
pub fn resolve_truncation(explicit: Option<i64>, p: usize, q: usize) -> Result<i64, CliError> {
    if let Some(n) = explicit {
        return Ok(n);
    }
    match std::env::var(TRUNC_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| CliError::Usage(format!("{TRUNC_ENV} must be an integer, got `{v}`"))),
        Err(_) => Ok(default_truncation(p, q)),
    }
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

fn monomial_string(vars: &[String], e: &Exponents) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn run_sections(jobs: Vec<Box<dyn Fn() -> Result<Section, CliError> + Send + Sync + '_>>, report: &mut Report) -> Result<(), CliError> {
    let results: Vec<Result<Section, CliError>> = jobs.par_iter().map(|j| j()).collect();
    for r in results {
        let (checks, artifacts) = r?;
        report.checks.extend(checks);
        report.artifacts.extend(artifacts);
    }
    Ok(())
}

fn fstructure_checks(prefix: &str, fs: &FStructure<Rational>, mutate: bool) -> Result<Vec<Check>, CliError> {
    let ax = fs.check_axioms();
    let mut fs = fs.clone();
    if mutate {
        fs.euler = fs.euler.iter().map(|x| x * Rational::from_int(2)).collect();
        fs.deuler = fs.deuler.iter().map(|r| r.iter().map(|x| x * Rational::from_int(2)).collect()).collect();
    }
    let integ = fs.check_integrability()?;
    Ok(vec![
        Check::new(format!("{prefix}axioms"), ax.ok()).witness(json!(ax.failures)),
        Check::new(format!("{prefix}euler_lie"), fs.check_euler()?),
        Check::new(format!("{prefix}integrability"), integ.ok())
            .detail(format!("{} pairs", integ.pairs_checked))
            .witness(json!(integ.violations)),
    ])
}

fn node_conventions(report: &mut Report, fam: &NodeFamily) {
    let c = &mut report.conventions;
    c.insert("frame".into(), fam.frame().iter().map(|u| u.name()).collect::<Vec<_>>().join(", "));
    c.insert("eps_lift".into(), "(x*d/dx + y*d/dy)/2".into());
    c.insert("fibre".into(), "x = s, y = eps/s; infinity1 at s = 0, infinity2 at s = oo".into());
    c.insert(
        "residue_form".into(),
        format!("alpha = dz/z in the coordinate vanishing at each puncture: {SIGMA_INFINITY_1:+}*ds/s at infinity1, {SIGMA_INFINITY_2:+}*ds/s at infinity2"),
    );
    c.insert("pairing".into(), "-Res_infinity1(gh/H alpha) + Res_infinity2(gh/H alpha)".into());
    c.insert("flat_branch".into(), "t0 = s0 = log(1) = 0".into());
}

/// Checks of the pairing at one base point.
fn pairing_section(fam: &NodeFamily, base: &[Rational]) -> Result<Section, CliError> {
    let (p, q) = (fam.p, fam.q);
    let n = p + q;
    let fm = fiber_restrict(fam, base)?;
    let pm = pairing_matrix(&fm)?;
    let a: Vec<usize> = (1..p).collect();
    let b: Vec<usize> = (p..n - 1).collect();
    let zero = |m: &Matrix<Rational>, r: &[usize], c: &[usize]| m.submatrix(r, c).to_rows().iter().flatten().all(|x| x.is_zero());
    let c_row_ok = (0..n - 1).filter(|&k| k != 0).all(|k| pm.total[(n - 1, k)].is_zero()) && pm.total[(n - 1, n - 1)].is_zero();
    let pattern = zero(&pm.total, &a, &b)
        && zero(&pm.infinity1, &a, &a)
        && zero(&pm.infinity2, &b, &b)
        && zero(&pm.total, &[0], &a)
        && zero(&pm.total, &[0], &b)
        && c_row_ok;
    let ha = reverse_indices(&pm.infinity2.submatrix(&a, &a)).mul(&hankel_block(&base[1..p], p)) == Matrix::identity(p - 1);
    let hb = reverse_indices(&pm.infinity1.submatrix(&b, &b)).mul(&hankel_block(&base[p..n - 1], q)) == Matrix::identity(q - 1);
    let mut bad_pairs = vec![];
    for u in 0..n {
        for v in u..n {
            if !residue_theorem_check(&fm, u, v)? {
                bad_pairs.push((u, v));
            }
        }
    }
    let corner = pm.total[(0, n - 1)].clone();
    let checks = vec![
        Check::new("pairing_symmetric", pm.total.is_symmetric()),
        Check::new("pairing_zero_pattern", pattern),
        Check::new("pairing_hankel_inverse_blocks", ha && hb),
        Check::new("pairing_corner_total", corner == Rational::from_int(1))
            .detail(format!(
                "<eps d/deps, d/dc> = {} = {} + {}",
                rational_string(&corner),
                rational_string(&pm.infinity1[(0, n - 1)]),
                rational_string(&pm.infinity2[(0, n - 1)])
            )),
        Check::new("residue_theorem", bad_pairs.is_empty()).witness(json!(bad_pairs)),
    ];
    let frame = fam.frame().iter().map(|u| u.name()).collect();
    Ok((checks, vec![("pairing".into(), json!(PairingReport::new(frame, &pm)))]))
}

fn flat_section(fam: &NodeFamily, base: &[Rational], trunc: i64) -> Result<Section, CliError> {
    let chart = flat_coordinates(fam, base, trunc)?;
    let chk = flat_pairing_check(fam, base, trunc)?;
    let checks = vec![
        Check::new("flat_routes_agree", chk.routes_agree()),
        Check::new("flat_gram_constant", chk.matches_expected()).witness(json!(matrix_strings(&chk.transported))),
    ];
    let artifacts = vec![
        ("flat_chart".into(), json!(FlatChartReport::new(&chart))),
        ("flat_pairing_t".into(), json!(matrix_strings(&chk.local_t))),
        ("flat_pairing_s".into(), json!(matrix_strings(&chk.local_s))),
        ("flat_gram".into(), json!(matrix_strings(&chk.transported))),
    ];
    Ok((checks, artifacts))
}

fn node_fmanifold_section(fam: &NodeFamily, base: &[Rational], extra: &[Vec<Rational>], mutate: bool) -> Result<Section, CliError> {
    let fs = build_fstructure_node_at(fam, base)?;
    let mut checks = fstructure_checks("", &fs, mutate)?;
    let g = pairing_matrix(&fiber_restrict(fam, base)?)?.total;
    checks.push(Check::new("frobenius_compatible", fs.is_frobenius(&g)));
    let mut failed = vec![];
    for pt in extra {
        if !build_fstructure_node_at(fam, pt)?.check_integrability()?.ok() {
            failed.push(strings(pt));
        }
    }
    checks.push(
        Check::new("integrability_samples", failed.is_empty()).detail(format!("{} points", extra.len())).witness(json!(failed)),
    );
    let c = fam.frame_position(NodeField::DC);
    let unit_is_dc = fs.unit == c;
    checks.push(Check::new("unit_is_d/dc", unit_is_dc));
    Ok((checks, vec![("semisimplicity".into(), json!(semisimplicity_at(&fs)))]))
}

fn stratum_section(fam: &NodeFamily, base: &[Rational]) -> Result<Section, CliError> {
    let fs = restrict_to_stratum(fam, "eps", &base[1..])?;
    let ax = fs.check_axioms();
    let checks = vec![
        Check::new("stratum_dimension", fs.dim() == fam.p + fam.q - 1).detail(format!("{}", fs.dim())),
        Check::new("stratum_axioms", ax.ok()).witness(json!(ax.failures)),
        Check::new("stratum_euler_lie", fs.check_euler()?),
    ];
    Ok((checks, vec![("stratum_frame".into(), json!(fs.frame))]))
}

fn symbolic_section(fam: &NodeFamily) -> Result<Section, CliError> {
    let w = weight_check(fam)?;
    let checks = vec![
        Check::new("euler_maps_to_f", euler_check(fam)?),
        Check::new("quasi_homogeneous_blocks", w.ok).witness(json!(w.entries.iter().filter(|e| !e.ok).collect::<Vec<_>>())),
    ];
    Ok((checks, vec![("lie_euler_eigenvalue".into(), json!(w.lie_eigenvalue))]))
}

pub fn cmd_node(config: &RunConfig) -> Result<Report, CliError> {
    let (p, q) = (require(config.p, "p")?, require(config.q, "q")?);
    let fam = NodeFamily::new(p, q)?;
    let mut sampler = Sampler::new(config.seed);
    let base = match &config.base {
        Some(b) => parse_base(b)?,
        None => sampler.node_point(&fam)?,
    };
    if base.len() != fam.base_dim() {
        return Err(logfman::Error::BadBasePoint { expected: fam.base_dim(), got: base.len() }.into());
    }
    if base[0].is_zero() {
        return Err(logfman::Error::OnDiscriminant.into());
    }
    fiber_restrict(&fam, &base)?;
    let trunc = resolve_truncation(config.trunc, p, q)?;
    let extra: Vec<Vec<Rational>> = (0..config.samples).map(|_| sampler.node_point(&fam)).collect::<Result<_, _>>()?;

    let mut report = Report::new(config);
    node_conventions(&mut report, &fam);
    report.artifacts.insert("base".into(), json!(strings(&base)));
    report.artifacts.insert("truncation".into(), json!(trunc));
    let t = tprime_matrix(&fam, &base, EpsLift::Symmetric)?;
    report.checks.push(Check::new("tprime_invertible", !t.det().is_zero()).detail(format!("{n}x{n}", n = t.nrows())));
    report.artifacts.insert("tprime_matrix".into(), json!(matrix_strings(&t)));
    let (f, b) = (&fam, &base[..]);
    run_sections(
        vec![
            Box::new(move || pairing_section(f, b)),
            Box::new(move || flat_section(f, b, trunc)),
            Box::new(move || symbolic_section(f)),
            Box::new(|| node_fmanifold_section(f, b, &extra, config.mutate)),
            Box::new(move || stratum_section(f, b)),
        ],
        &mut report,
    )?;
    Ok(report)
}

/// The exponents of `∂F/∂a_i, ∂F/∂b_j, ∂F/∂c_k, ∂F/∂d` over `x, y, z`.
pub fn expected_unfolding(p: usize, q: usize, r: usize) -> BTreeSet<Exponents> {
    let mut out = BTreeSet::new();
    for (k, e) in [p, q, r].into_iter().enumerate() {
        for i in 1..e {
            let mut m = vec![0; 3];
            m[k] = (e - i) as u32;
            out.insert(m);
        }
    }
    out.insert(vec![0, 0, 0]);
    out
}

fn curve_pointwise_section(fam: &DeterminantalCurveFamily, point: &[Rational], mutate: bool) -> Result<Section, CliError> {
    let fs = build_fstructure_curve(fam, point)?;
    let mut checks = vec![Check::new("unit_is_d/dd", fs.frame[fs.unit] == "d/dd")];
    checks.extend(fstructure_checks("point_", &fs, mutate)?);
    let ss = semisimplicity_at(&fs);
    Ok((checks, vec![("point".into(), json!(strings(point))), ("semisimplicity".into(), json!(ss))]))
}

pub fn cmd_curve(config: &RunConfig) -> Result<Report, CliError> {
    let (p, q, r) = (require(config.p, "p")?, require(config.q, "q")?, require(config.r, "r")?);
    let fam = DeterminantalCurveFamily::axes(p, q, r)?;
    let point = match &config.base {
        Some(b) => parse_base(b)?,
        None => Sampler::new(config.seed).curve_point(&fam)?,
    };
    let mut report = Report::new(config);
    report.conventions.insert("matrix".into(), "((x, y, l1), (l2, y + l3, z))".into());
    report.conventions.insert("frame".into(), fam.parameters.iter().map(|s| format!("d/d{s}")).collect::<Vec<_>>().join(", "));
    report.conventions.insert("algebra".into(), "Q[x,y,z]/(minors, V(F)) on standard monomials, grevlex".into());

    let mf = compute_mf_spacecurve(&fam)?;
    let xyz = fam.coordinate_vars();
    let ideal: Vec<Poly> = fam.minors.iter().map(|m| m.restrict(&xyz)).collect::<Result<_, _>>()?;
    let f = fam.f.restrict(&xyz)?;
    let unf = unfolding_basis(&mf, &ideal, &f, None)?;
    let found: BTreeSet<Exponents> = unf.monomials.iter().cloned().collect();
    report.checks.push(Check::new("mf_dimension", mf.dimension() == p + q + r + 1).detail(format!("{}", mf.dimension())));
    report.checks.push(
        Check::new("unfolding_monomials", found == expected_unfolding(p, q, r) && unf.monomials.len() == p + q + r - 2)
            .detail(format!("{} monomials", unf.monomials.len())),
    );
    let gb = groebner_basis(&ideal, None)?;
    let mut untangent = vec![];
    for v in fam.tangent_fields()? {
        for m in &fam.minors {
            if !gb.contains(&v.apply(m)?.restrict(&xyz)?)? {
                untangent.push(v.to_string());
            }
        }
    }
    report.checks.push(Check::new("tangency", untangent.is_empty()).witness(json!(untangent)));
    report.artifacts.insert("mf_dimension".into(), json!(mf.dimension()));
    report.artifacts.insert("mf_basis".into(), json!(mf.basis().iter().map(|e| monomial_string(&xyz, e)).collect::<Vec<_>>()));
    report.artifacts.insert(
        "unfolding_monomials".into(),
        json!(unf.monomials.iter().map(|e| monomial_string(&xyz, e)).collect::<Vec<_>>()),
    );
    report.artifacts.insert("tangent_fields".into(), json!(fam.tangent_fields()?));
    let (checks, artifacts) = curve_pointwise_section(&fam, &point, config.mutate)?;
    report.checks.extend(checks);
    report.artifacts.extend(artifacts);
    Ok(report)
}

pub fn cmd_icis(config: &RunConfig) -> Result<Report, CliError> {
    let f = config.f.as_deref().ok_or_else(|| CliError::Usage("missing --f".into()))?;
    if config.g.is_empty() {
        return Err(CliError::Usage("at least one --g is required".into()));
    }
    let mut inputs: Vec<&str> = config.g.iter().map(|s| s.as_str()).collect();
    inputs.push(f);
    let (vars, mut polys) = parse_polys(&inputs)?;
    let f = polys.pop().unwrap();
    let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let fam = ICISFamily::new(&names, polys, f)?;
    let mut report = Report::new(config);
    report.conventions.insert("coordinates".into(), names.join(", "));
    report.conventions.insert("mf".into(), "O/((g) + maximal minors of the Jacobian of (f, g))".into());
    let fields = fam.tangent_fields()?;
    let gb = groebner_basis(&fam.g, None)?;
    let mut untangent = vec![];
    for v in &fields {
        for g in &fam.g {
            if !gb.contains(&v.apply(g)?)? {
                untangent.push(v.to_string());
            }
        }
    }
    report.checks.push(Check::new("tangency", untangent.is_empty()).witness(json!(untangent)));
    let mf = compute_mf_icis(&fam)?;
    report.artifacts.insert("mf_dimension".into(), json!(mf.dimension()));
    report.artifacts.insert("mf_basis".into(), json!(mf.basis().iter().map(|e| monomial_string(&vars, e)).collect::<Vec<_>>()));
    report.artifacts.insert("tangent_fields".into(), json!(fields));
    report.artifacts.insert("g".into(), json!(fam.g.iter().map(|g| g.to_string()).collect::<Vec<_>>()));
    report.artifacts.insert("f".into(), json!(fam.f.to_string()));
    Ok(report)
}

pub const NODE_SUITE: &[(usize, usize)] = &[(2, 2), (2, 3), (3, 3), (2, 5)];
pub const CURVE_SUITE: &[(usize, usize, usize)] = &[(2, 2, 2), (3, 2, 2)];
/// `(g, f, dim M_f)` for smooth ambient spaces.
pub const ICIS_SUITE: &[(&str, &str, usize)] = &[("y", "x^3", 2), ("y - x^2", "x^4", 3), ("x^2 + y^2 + z^2", "z", 2)];

pub fn cmd_verify(config: &RunConfig) -> Result<Report, CliError> {
    let mut report = Report::new(config);
    let sub = |prefix: String, r: Report, report: &mut Report| {
        for mut c in r.checks {
            c.name = format!("{prefix}/{}", c.name);
            report.checks.push(c);
        }
    };
    if config.suite != Suite::CurveOnly {
        for &(p, q) in NODE_SUITE {
            let mut c = RunConfig::new(Kind::Node);
            c.p = Some(p);
            c.q = Some(q);
            c.seed = config.seed;
            c.samples = config.samples;
            c.mutate = config.mutate;
            sub(format!("node({p},{q})"), cmd_node(&c)?, &mut report);
        }
    }
    if config.suite != Suite::NodeOnly {
        for &(p, q, r) in CURVE_SUITE {
            let mut c = RunConfig::new(Kind::Curve);
            (c.p, c.q, c.r) = (Some(p), Some(q), Some(r));
            c.seed = config.seed;
            c.mutate = config.mutate;
            sub(format!("curve({p},{q},{r})"), cmd_curve(&c)?, &mut report);
        }
        for &(g, f, dim) in ICIS_SUITE {
            let mut c = RunConfig::new(Kind::Icis);
            c.g = vec![g.into()];
            c.f = Some(f.into());
            let r = cmd_icis(&c)?;
            let found = r.artifacts["mf_dimension"].as_u64().unwrap_or(0) as usize;
            let name = format!("icis({g}; {f})");
            sub(name.clone(), r, &mut report);
            report.checks.push(Check::new(format!("{name}/mf_dimension"), found == dim).detail(format!("{found}")));
        }
    }
    let passed = report.checks.iter().filter(|c| c.pass).count();
    report.artifacts.insert("passed".into(), json!(passed));
    report.artifacts.insert("total".into(), json!(report.checks.len()));
    Ok(report)
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    match config.kind {
        Kind::Node => cmd_node(config),
        Kind::Curve => cmd_curve(config),
        Kind::Icis => cmd_icis(config),
        Kind::Verify => cmd_verify(config),
    }
}
