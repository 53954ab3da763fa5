//! One line per acceptance criterion. Failing criteria are printed as FAIL
//! with the measured data; set `ACCEPTANCE_STRICT=1` to turn any gating
//! failure into a nonzero exit.

use std::sync::Arc;
use std::time::Instant;

use num_traits::Zero;
use uqsp6::contraform::{c_brute, gauge_character, norm_table, y_norm_factor, y_orthogonality, GramTable, NORM_EXPONENT};
use uqsp6::highest::{base_module_m, build_irreducible, char_product_formula, pseudo_parabolic};
use uqsp6::linalg::Mat;
use uqsp6::projector::{
    crosscheck_theorem, invertibility_scan, p_factor_v, probe_points, root_vectors, theta_family_check,
};
use uqsp6::rootsys::{offsets_of_height, Weight, NORMAL_ORDER, SIMPLE};
use uqsp6::tensorcat::{build_v, char_identity_check, decompose, index_range};
use uqsp6::uqneg::{catalog_keys, jacobi_fuzz, verify_identity, SerreQuotient};
use uqsp6::{QField, QLevel, QScalar};

struct Line {
    n: u32,
    pass: bool,
    gating: bool,
    text: String,
}

fn field() -> QField<QScalar> {
    QField::generic()
}

fn alg(n: i32) -> Arc<SerreQuotient<QScalar>> {
    Arc::new(SerreQuotient::new(field(), n))
}

fn c1() -> (bool, String) {
    let e = SerreQuotient::new(field(), 10);
    let mut bad = Vec::new();
    let mut total = 0;
    for key in catalog_keys() {
        let r = verify_identity(&e, key).expect("catalog entry");
        total += 1;
        // The section-2 coefficient is the misprinted variant kept for comparison.
        if r.holds == (key == "f1_delta_theta_section2") {
            bad.push(key);
        }
    }
    let solved = verify_identity(&e, "f1_delta_theta_solved").unwrap().detail;
    (bad.is_empty(), format!("{} of {total} entries as expected; oracle coefficient {solved}; printed c = 1 variant fails{}", total - bad.len(), if bad.is_empty() { String::new() } else { format!("; unexpected: {bad:?}") }))
}

fn c2() -> (bool, String) {
    let (zero, count) = jacobi_fuzz(&field(), 100, 0x5eed);
    (zero == count, format!("{zero}/{count} random instances reduce to 0"))
}

fn c3() -> (bool, String) {
    let l = build_irreducible(field(), Weight::lambda_plus([0, 0, 0]), 20);
    let g = GramTable::new(&l);
    let cells = norm_table(&g, 4, 4, NORM_EXPONENT).unwrap();
    let ct = cells.iter().filter(|c| c.ctilde_match()).count();
    let gauge = gauge_character(&cells);
    let ok = ct == 25 && gauge.is_some();
    let (a, b) = gauge.map(|(a, b)| (a.to_string(), b.to_string())).unwrap_or_default();
    (ok, format!("c~ recurrence = closed = brute on {ct}/25 cells; exponent variant {}; c brute = a^l b^k c closed with (a, b) = ({a}, {b})", NORM_EXPONENT.name()))
}

fn c4() -> (bool, String) {
    let m = base_module_m(alg(8), 8).unwrap();
    let g = GramTable::new(&m);
    let r = y_orthogonality(&g, 8).unwrap();
    let f = field();
    let (mut printed, mut derived) = (0, 0);
    for (key, d) in &r.diagonal {
        let [l, k, i, j] = *key;
        let c = c_brute(&g, l, k).unwrap();
        let ij = f.qint(i as i64, QLevel::ONE) * &f.qint(j as i64, QLevel::ONE);
        if *d == c.clone() * &ij * &ij {
            printed += 1;
        }
        if *d == c * &y_norm_factor(&f, l, i, j) {
            derived += 1;
        }
    }
    let n = r.diagonal.len();
    let diag = r.off_diagonal_nonzero == 0;
    (
        diag && printed == n,
        format!(
            "{} vectors, off-diagonal nonzero {}; diagonal = c([i][j])^2 on {printed}/{n}; diagonal = c times sl2 string norms on {derived}/{n}",
            r.vectors, r.off_diagonal_nonzero
        ),
    )
}

fn c5() -> (bool, String) {
    let m = base_module_m(alg(8), 8).unwrap();
    let ch = m.character(8).unwrap();
    let pf = char_product_formula(8);
    let offs: Vec<_> = (0..=8).flat_map(offsets_of_height).collect();
    let good = offs.iter().filter(|o| ch.get(*o).copied().unwrap_or(0) as u64 == pf.get(*o).copied().unwrap_or(0)).count();
    (good == offs.len(), format!("{good}/{} offsets of height <= 8 match", offs.len()))
}

fn c6() -> (bool, String) {
    let m = base_module_m(alg(8), 8).unwrap();
    let sing: usize = (1..=8).flat_map(offsets_of_height).map(|o| m.singular_vectors(o).unwrap().len()).sum();
    let rad = GramTable::new(&m).radical(8).unwrap().len();
    (sing == 0 && rad == 0, format!("singular vectors below the top: {sing}; radical dimension: {rad}"))
}

fn c7() -> (bool, String) {
    let v = build_v(&field()).unwrap();
    let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
    let mut bad = Vec::new();
    let mut compared = 0;
    let mut misprint = true;
    for i in index_range(9).into_iter().filter(|i| i.iter().all(|&x| x <= 3)) {
        let r = theta_family_check(&v, &rvs, i).unwrap();
        compared += r.compared;
        misprint &= r.misprinted_value_is_one;
        if !r.holds() {
            bad.push(i);
        }
    }
    let inv = invertibility_scan(&v, &rvs, 3).unwrap();
    let ok = bad.is_empty() && inv.holds();
    (
        ok,
        format!(
            "{compared} displayed entries checked over 64 indices, failures {bad:?}; {} factors nonzero, poles only outside V+: {}; entry printed at -e3 read at -e2 (formula is 1 at -e3: {misprint})",
            inv.factors,
            inv.poles_inside_v_plus.is_empty()
        ),
    )
}

fn c8() -> (bool, String) {
    let v = build_v(&field()).unwrap();
    let mut bad = Vec::new();
    let idx = index_range(2);
    for &i in &idx {
        if !decompose(&v, i, 6).unwrap().holds() {
            bad.push(i);
        }
    }
    (bad.is_empty(), format!("{} indices, observed = predicted, |I| = dim V+, Gram det nonzero; failures {bad:?}", idx.len()))
}

fn c9() -> (bool, String) {
    let mut bad = Vec::new();
    let mut compared = 0;
    for i in index_range(2) {
        let r = char_identity_check(&field(), i, 6).unwrap();
        compared += r.compared;
        if !r.holds() {
            bad.push(i);
        }
    }
    (bad.is_empty(), format!("{compared} weights compared over 10 indices; failures {bad:?}"))
}

fn c10() -> (bool, String) {
    let probes = probe_points(3, 10);
    let mut out = Vec::new();
    let mut global = true;
    let mut twisted = true;
    let mut nondeg = true;
    for i in [[0, 0, 0], [1, 0, 0]] {
        let r = crosscheck_theorem(i, 6, &probes, false).unwrap();
        global &= r.agrees();
        twisted &= r.agrees_up_to_k2rho();
        nondeg &= r.nondegenerate();
        out.push(format!("{i:?}: ratios {:?}", r.probes[0].ratios));
    }
    let exact = crosscheck_theorem([1, 0, 0], 6, &[], true).unwrap();
    (
        global,
        format!(
            "probes {}; one global unit: {global}; agreement after the diagonal twist q^(2rho, wt - e1): {twisted}; pullback nondegenerate: {nondeg}; {}; exact ratios at (1,0,0): {:?}",
            probes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "),
            out.join("; "),
            exact.probes[0].ratios
        ),
    )
}

fn c11() -> (bool, String) {
    let v = build_v(&field()).unwrap();
    let rvs = root_vectors(&v, &NORMAL_ORDER).unwrap();
    let mut ok = true;
    for g in SIMPLE {
        let p = p_factor_v(&v, &rvs[&g], Weight::integral([0, 0, 0])).unwrap();
        let e = v.op_matrix(&rvs[&g].e);
        let fm = v.op_matrix(&rvs[&g].f);
        ok &= p.mul(&p) == p && e.mul(&p).is_zero() && p.mul(&fm).is_zero();
        ok &= p != Mat::identity(6);
    }
    (ok, "p^2 = p, e p = 0, p f = 0 on V for alpha1, alpha2, alpha3".into())
}

fn c12() -> (bool, String) {
    let mut dims = Vec::new();
    for i in index_range(1) {
        let (m, _) = pseudo_parabolic(alg(5), i, 5).unwrap();
        dims.push((i, GramTable::new(&m).radical(5).unwrap().len()));
    }
    let empty = dims.iter().all(|(_, d)| d.is_zero());
    (empty, format!("radical dimensions to height 5: {dims:?}"))
}

fn main() {
    let start = Instant::now();
    let criteria: Vec<(u32, &str, bool, fn() -> (bool, String))> = vec![
        (1, "identity suite", true, c1),
        (2, "Jacobi fuzz", true, c2),
        (3, "norm triple agreement", true, c3),
        (4, "y-basis orthogonality and normalization", true, c4),
        (5, "character of M", true, c5),
        (6, "irreducibility scan", true, c6),
        (7, "theta tables", true, c7),
        (8, "branching", true, c8),
        (9, "character identity", true, c9),
        (10, "pullback form vs inverse shifted projector", true, c10),
        (11, "sl2 projector", true, c11),
        (12, "radical scans (informational)", false, c12),
    ];
    let mut lines = Vec::new();
    for (n, name, gating, f) in criteria {
        let t = Instant::now();
        let (pass, detail) = f();
        let line = Line { n, pass, gating, text: format!("{name}: {detail} [{:.1}s]", t.elapsed().as_secs_f64()) };
        let tag = match (line.gating, line.pass) {
            (true, true) => "PASS",
            (true, false) => "FAIL",
            (false, true) => "INFO ok",
            (false, false) => "INFO nonempty",
        };
        println!("criterion {:>2} {tag}: {}", line.n, line.text);
        lines.push(line);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| l.gating && !l.pass).map(|l| l.n).collect();
    let gating = lines.iter().filter(|l| l.gating).count();
    println!("acceptance: {}/{gating} gating criteria pass; failing: {failed:?}; total {:.1}s", gating - failed.len(), start.elapsed().as_secs_f64());
    if !failed.is_empty() && std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        std::process::exit(1);
    }
}
