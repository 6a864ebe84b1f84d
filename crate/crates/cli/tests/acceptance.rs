//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion other than the documented known failure fails.
//!
//! All comparisons are exact rational equalities; the only tolerances are
//! wall-clock bounds, pinned below.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use logfman::deform::curve::{compute_mf_spacecurve, DeterminantalCurveFamily};
use logfman::deform::icis::{compute_mf_icis, ICISFamily};
use logfman::deform::node::{tprime_matrix, EpsLift, NodeFamily};
use logfman::deform::unfolding::unfolding_basis;
use logfman::fmanifold::curve::curve_multiplication_at;
use logfman::fmanifold::node::{build_fstructure_node, build_fstructure_node_at};
use logfman::fmanifold::semisimple::semisimplicity_at;
use logfman::fmanifold::stratum::restrict_to_stratum;
use logfman::frobenius::euler::{euler_check, weight_check};
use logfman::frobenius::fiber::fiber_restrict;
use logfman::frobenius::flat::{default_truncation, flat_pairing_check};
use logfman::frobenius::pairing::{hankel_block, pairing_matrix, residue_theorem_check, reverse_indices};
use logfman::parse::parse_polys;
use logfman::sample::Sampler;
use logfman::scalar::{rat, rational_string, Field};
use logfman::{Matrix, Poly, Rational};

const FAMILIES: &[(usize, usize)] = &[(2, 2), (2, 3), (3, 3), (2, 5)];
const SEED: u64 = 2024;

const RANK_BUDGET: Duration = Duration::from_secs(5);
const RESIDUE_BUDGET: Duration = Duration::from_secs(10);
const CURVE_BUDGET: Duration = Duration::from_secs(30);

/// Criteria whose target value cannot be reached; see `corner_entries`.
const KNOWN_FAILURES: &[u32] = &[2];

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn zero() -> Rational {
    Rational::from_int(0)
}

fn node_points(fam: &NodeFamily, n: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut s = Sampler::new(seed);
    (0..n).map(|_| s.node_point(fam).unwrap()).collect()
}

fn rank_p_plus_q() -> Outcome {
    let mut notes = vec![];
    for &(p, q) in FAMILIES {
        let fam = NodeFamily::new(p, q).map_err(|e| e.to_string())?;
        let start = Instant::now();
        for b in node_points(&fam, 20, SEED) {
            let t = tprime_matrix(&fam, &b, EpsLift::Symmetric).map_err(|e| e.to_string())?;
            if t.nrows() != p + q || t.ncols() != p + q || t.det() == zero() {
                return Err(format!("({p},{q}) singular at {b:?}"));
            }
        }
        let dt = start.elapsed();
        if dt > RANK_BUDGET {
            return Err(format!("({p},{q}) took {dt:.2?}"));
        }
        notes.push(format!("({p},{q}) {dt:.2?}"));
    }
    Ok(format!("20 points each, {}", notes.join(", ")))
}

/// Shape of the pairing: zero blocks, Hankel inverse blocks and the corner
/// entry of each of the two summands, which the target puts at 1/4.
fn corner_entries() -> Outcome {
    let quarter = rat(1, 4);
    let mut corners = BTreeSet::new();
    let mut shape_ok = 0;
    let mut total = 0;
    for &(p, q) in FAMILIES {
        let fam = NodeFamily::new(p, q).unwrap();
        let n = p + q;
        let a: Vec<usize> = (1..p).collect();
        let b: Vec<usize> = (p..n - 1).collect();
        for pt in node_points(&fam, 5, SEED + 1) {
            let pm = pairing_matrix(&fiber_restrict(&fam, &pt).unwrap()).unwrap();
            let is_zero = |m: &Matrix, r: &[usize], c: &[usize]| m.submatrix(r, c).to_rows().iter().flatten().all(|x| *x == zero());
            let pattern = is_zero(&pm.total, &a, &b) && is_zero(&pm.infinity1, &a, &a) && is_zero(&pm.infinity2, &b, &b);
            let ha = reverse_indices(&pm.infinity2.submatrix(&a, &a)).mul(&hankel_block(&pt[1..p], p)) == Matrix::identity(p - 1);
            let hb = reverse_indices(&pm.infinity1.submatrix(&b, &b)).mul(&hankel_block(&pt[p..n - 1], q)) == Matrix::identity(q - 1);
            if pattern && ha && hb {
                shape_ok += 1;
            }
            corners.insert(rational_string(&pm.infinity1[(0, n - 1)]));
            corners.insert(rational_string(&pm.infinity2[(0, n - 1)]));
            total += 1;
        }
    }
    let detail = format!(
        "zero pattern and Hankel inverse blocks at {shape_ok}/{total} points; corner per summand {{{}}}, target {}",
        corners.iter().cloned().collect::<Vec<_>>().join(", "),
        rational_string(&quarter)
    );
    if shape_ok == total && corners.len() == 1 && corners.contains(&rational_string(&quarter)) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn residue_theorem() -> Outcome {
    let mut pairs = 0;
    for &(p, q) in FAMILIES {
        let fam = NodeFamily::new(p, q).unwrap();
        let start = Instant::now();
        for pt in node_points(&fam, 5, SEED + 1) {
            let fm = fiber_restrict(&fam, &pt).unwrap();
            for u in 0..p + q {
                for v in u..p + q {
                    if !residue_theorem_check(&fm, u, v).map_err(|e| e.to_string())? {
                        return Err(format!("({p},{q}) pair ({u},{v}) at {pt:?}"));
                    }
                    pairs += 1;
                }
            }
        }
        if start.elapsed() > RESIDUE_BUDGET {
            return Err(format!("({p},{q}) took {:.2?}", start.elapsed()));
        }
    }
    Ok(format!("{pairs} pair evaluations sum to 0"))
}

fn flat_pairing() -> Outcome {
    for &(p, q) in FAMILIES {
        let fam = NodeFamily::new(p, q).unwrap();
        let n = default_truncation(p, q);
        // p·δ_{i+j,p} and q·δ_{i+j,q}
        let t_block = Matrix::from_fn(p - 1, p - 1, |i, j| if i + j + 2 == p { Rational::from_int(p as i64) } else { zero() });
        let s_block = Matrix::from_fn(q - 1, q - 1, |i, j| if i + j + 2 == q { Rational::from_int(q as i64) } else { zero() });
        for pt in node_points(&fam, 3, SEED + 2) {
            let chk = flat_pairing_check(&fam, &pt, n).map_err(|e| e.to_string())?;
            let m = p - 1;
            let cross = chk.transported.submatrix(&(1..p).collect::<Vec<_>>(), &(p..p + q - 1).collect::<Vec<_>>());
            let ok = chk.local_t == t_block
                && chk.local_s == s_block
                && chk.routes_agree()
                && cross.to_rows().iter().flatten().all(|x| *x == zero())
                && chk.transported[(0, p + q - 1)] == Rational::from_int(1)
                && chk.transported.submatrix(&(1..p).collect::<Vec<_>>(), &(1..p).collect::<Vec<_>>()) == reverse_rows(&t_block, m);
            if !ok {
                return Err(format!("({p},{q}) at {pt:?}"));
            }
        }
    }
    Ok("series route and chain-rule route agree at 3 points per family, N = p+q+4".into())
}

/// The transported gram lists `∂t` in descending index order.
fn reverse_rows(m: &Matrix, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| m[(n - 1 - i, n - 1 - j)].clone())
}

fn euler_field() -> Outcome {
    for &(p, q) in FAMILIES {
        let fam = NodeFamily::new(p, q).unwrap();
        if !euler_check(&fam).map_err(|e| e.to_string())? {
            return Err(format!("({p},{q}) t'F(E) differs from [F]"));
        }
        if !build_fstructure_node(&fam).and_then(|fs| fs.check_euler()).map_err(|e| e.to_string())? {
            return Err(format!("({p},{q}) Lie_E of the product"));
        }
        let w = weight_check(&fam).map_err(|e| e.to_string())?;
        if !w.ok {
            return Err(format!("({p},{q}) weights {:?}", w.entries.iter().filter(|e| !e.ok).collect::<Vec<_>>()));
        }
    }
    Ok("symbolic for all four families".into())
}

fn fmanifold_axioms() -> Outcome {
    let mut points = 0;
    for &(p, q) in FAMILIES {
        let fam = NodeFamily::new(p, q).unwrap();
        let fs = build_fstructure_node(&fam).map_err(|e| e.to_string())?;
        let ax = fs.check_axioms();
        if !ax.ok() {
            return Err(format!("({p},{q}) {:?}", ax.failures));
        }
        for pt in node_points(&fam, 5, SEED + 3) {
            let fs = build_fstructure_node_at(&fam, &pt).map_err(|e| e.to_string())?;
            let rep = fs.check_integrability().map_err(|e| e.to_string())?;
            if !rep.ok() {
                return Err(format!("({p},{q}) at {pt:?}: {:?}", rep.violations));
            }
            points += 1;
        }
    }
    Ok(format!("axioms symbolic, integrability at {points} points"))
}

/// `dim O/(I + m^D)` from the rank of the Macaulay matrix in degrees `< D`.
fn macaulay_colength(gens: &[Poly], d: u32) -> usize {
    let n = gens[0].nvars();
    let mut monos: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        monos = monos.into_iter().flat_map(|m| (0..d).map(move |k| [m.clone(), vec![k]].concat())).collect();
    }
    monos.retain(|m| m.iter().sum::<u32>() < d);
    let mut rows = vec![];
    for g in gens {
        for m in &monos {
            let mut row = vec![zero(); monos.len()];
            for (e, c) in g.terms() {
                let shifted: Vec<u32> = e.iter().zip(m).map(|(a, b)| a + b).collect();
                if let Some(j) = monos.iter().position(|x| *x == shifted) {
                    row[j] = c.clone();
                }
            }
            rows.push(row);
        }
    }
    monos.len() - Matrix::from_rows(rows).rank()
}

fn space_curves() -> Outcome {
    let mut computed = vec![];
    let start = Instant::now();
    for p in 2..=4 {
        for q in 2..=4 {
            for r in 2..=4 {
                let fam = DeterminantalCurveFamily::axes(p, q, r).map_err(|e| e.to_string())?;
                let mf = compute_mf_spacecurve(&fam).map_err(|e| e.to_string())?;
                let xyz = fam.coordinate_vars();
                let ideal: Vec<Poly> = fam.minors.iter().map(|m| m.restrict(&xyz).unwrap()).collect();
                let unf = unfolding_basis(&mf, &ideal, &fam.f.restrict(&xyz).unwrap(), None).map_err(|e| e.to_string())?;
                computed.push(((p, q, r), mf.dimension(), unf.monomials, fam.mf_ideal().unwrap()));
            }
        }
    }
    let dt = start.elapsed();
    for ((p, q, r), dim, monomials, gens) in &computed {
        let (p, q, r) = (*p, *q, *r);
        let d = (p.max(q).max(r) + 2) as u32;
        let oracle = macaulay_colength(gens, d);
        if oracle != macaulay_colength(gens, d + 1) || *dim != oracle || oracle != p + q + r + 1 {
            return Err(format!("({p},{q},{r}) dim {dim}, oracle {oracle}"));
        }
        let mut expected: BTreeSet<Vec<u32>> = BTreeSet::from([vec![0, 0, 0]]);
        for i in 1..p as u32 {
            expected.insert(vec![i, 0, 0]);
        }
        for i in 1..q as u32 {
            expected.insert(vec![0, i, 0]);
        }
        for i in 1..r as u32 {
            expected.insert(vec![0, 0, i]);
        }
        let got: BTreeSet<Vec<u32>> = monomials.iter().cloned().collect();
        if got != expected || monomials.len() != p + q + r - 2 || oracle != monomials.len() + 3 {
            return Err(format!("({p},{q},{r}) unfolding {monomials:?}"));
        }
    }
    if dt > CURVE_BUDGET {
        return Err(format!("took {dt:.2?}"));
    }
    Ok(format!("27 curves in {dt:.2?}"))
}

fn icis_sanity() -> Outcome {
    for (g, f, mu) in [("y", "x^3", 2), ("y - x^2", "x^4", 3)] {
        let (vars, mut ps) = parse_polys(&[g, f]).unwrap();
        let fp = ps.pop().unwrap();
        let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let fam = ICISFamily::new(&names, ps, fp).map_err(|e| e.to_string())?;
        let got = compute_mf_icis(&fam).map_err(|e| e.to_string())?.dimension();
        if got != mu {
            return Err(format!("{f} on {g} = 0 gives {got}"));
        }
    }
    Ok("x^3 -> 2, x^4 on y = x^2 -> 3".into())
}

fn semisimplicity() -> Outcome {
    let fam = NodeFamily::new(2, 3).unwrap();
    let node_hits = node_points(&fam, 20, SEED + 4)
        .iter()
        .filter(|b| semisimplicity_at(&build_fstructure_node_at(&fam, b).unwrap()).squarefree)
        .count();
    let curve = DeterminantalCurveFamily::axes(2, 2, 2).unwrap();
    let mut s = Sampler::new(SEED + 4);
    let mut curve_hits = 0;
    for _ in 0..20 {
        let pt = s.curve_point(&curve).map_err(|e| e.to_string())?;
        if semisimplicity_at(&curve_multiplication_at(&curve, &pt).map_err(|e| e.to_string())?).squarefree {
            curve_hits += 1;
        }
    }
    let detail = format!("node (2,3) {node_hits}/20, curve (2,2,2) {curve_hits}/20 squarefree");
    if node_hits >= 19 && curve_hits >= 19 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn stratum() -> Outcome {
    for &(p, q) in FAMILIES {
        let fam = NodeFamily::new(p, q).unwrap();
        let mut s = Sampler::new(SEED + 5);
        for _ in 0..3 {
            let pt = s.point(p + q - 1);
            let fs = restrict_to_stratum(&fam, "eps", &pt).map_err(|e| e.to_string())?;
            if fs.dim() != p + q - 1 || !fs.check_axioms().ok() {
                return Err(format!("({p},{q}) at {pt:?}"));
            }
        }
    }
    Ok("dimension p+q-1, unital commutative associative".into())
}

fn determinism() -> Outcome {
    let runs: &[&[&str]] = &[
        &["node", "--p", "2", "--q", "3", "--seed", "7", "--samples", "2"],
        &["curve", "--p", "2", "--q", "2", "--r", "2", "--seed", "7"],
        &["icis", "--g", "y - x^2", "--f", "x^4"],
    ];
    for args in runs {
        let go = || Command::new(env!("CARGO_BIN_EXE_logfman")).args(*args).env_remove("LOGFMAN_TRUNC").output().unwrap();
        let (a, b) = (go(), go());
        if a.status.code() != Some(0) || a.stdout.is_empty() || a.stdout != b.stdout {
            return Err(format!("{args:?}"));
        }
    }
    Ok(format!("{} configurations byte-identical", runs.len()))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (1, "t'F rank p+q", rank_p_plus_q),
        (2, "pairing shape with corner 1/4 per summand", corner_entries),
        (3, "residue theorem", residue_theorem),
        (4, "flat pairing", flat_pairing),
        (5, "Euler field", euler_field),
        (6, "F-manifold axioms and integrability", fmanifold_axioms),
        (7, "space curves 2 <= p,q,r <= 4", space_curves),
        (8, "ICIS Milnor numbers", icis_sanity),
        (9, "generic semisimplicity", semisimplicity),
        (10, "stratum eps = 0", stratum),
        (11, "determinism", determinism),
    ];
    let mut unexpected = vec![];
    for (n, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let dt = start.elapsed();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        let known = if outcome.is_err() && KNOWN_FAILURES.contains(&n) { " [known]" } else { "" };
        println!("{tag} {n:>2} {name}: {detail} ({dt:.2?}){known}");
        if outcome.is_err() != KNOWN_FAILURES.contains(&n) {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        println!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
