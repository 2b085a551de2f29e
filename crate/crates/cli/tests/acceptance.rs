//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_traits::One;

use padic_periods::arith::{
    eisenstein_d, is_prime, p_adic_valuation, Fp2Context, ResidualClass, Q,
};
use padic_periods::pairing::{
    build_pairing_matrix, determinant, eisenstein_check, frobenius_equivariance_check,
    is_positive_definite, pair_divisors, rationality_check, valuation_gram, DivisorOnS,
    PairingMatrix,
};
use padic_periods::qseries::{
    correspondence_pullback, fiber_sum, lambda_eta_quotient, lambda_expansion, level_three_table,
    level_two_relations, standard_maps, u_expansion, verify_fourier_mu, Cyclo, Gamma0Cusp, Level,
    Variable,
};
use padic_periods::schottky::{genus_two_example, tate_example, Word};
use padic_periods::supersingular::supersingular_lambdas;
use padic_periods::theta::{self, drinfeld_pairing, PeriodPairingResult};

type Outcome = Result<String, String>;

fn primes(lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi).filter(|&p| is_prime(p)).collect()
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: f64) -> Result<f64, String> {
    let t = start.elapsed().as_secs_f64();
    ensure(t < limit, || format!("took {t:.2}s, limit {limit}s"))?;
    Ok(t)
}

fn c1() -> Outcome {
    let start = Instant::now();
    let ps = primes(5, 500);
    for &p in &ps {
        let n = supersingular_lambdas(p).map_err(|e| e.to_string())?.len() as u64;
        ensure(n == (p - 1) / 2, || format!("p={p}: {n} roots"))?;
    }
    let t = within(start, 10.0)?;
    Ok(format!("{} primes, {t:.2}s", ps.len()))
}

/// Minimal `F_p[x]/(x^2 - n)` for the scan oracle.
#[derive(Clone, Copy, PartialEq)]
struct F2 {
    a: u64,
    b: u64,
    p: u64,
    n: u64,
}

impl F2 {
    fn add(self, o: F2) -> F2 {
        F2 {
            a: (self.a + o.a) % self.p,
            b: (self.b + o.b) % self.p,
            ..self
        }
    }
    fn mul(self, o: F2) -> F2 {
        let p = self.p;
        let a = (self.a * o.a + self.b * o.b % p * self.n) % p;
        let b = (self.a * o.b + self.b * o.a) % p;
        F2 { a, b, ..self }
    }
}

/// Coefficient of `x^{p-1}` in `(x(x-1)(x-λ))^{(p-1)/2}`.
fn hasse_invariant(lam: F2) -> F2 {
    let (p, n) = (lam.p, lam.n);
    let c = |v: u64| F2 {
        a: v % p,
        b: 0,
        p,
        n,
    };
    let neg = |x: F2| F2 {
        a: (p - x.a) % p,
        b: (p - x.b) % p,
        p,
        n,
    };
    // x(x-1)(x-λ) = x^3 - (1+λ)x^2 + λx
    let cubic = [c(0), lam, neg(c(1).add(lam)), c(1)];
    let mut acc = vec![c(1)];
    for _ in 0..(p - 1) / 2 {
        let mut next = vec![c(0); acc.len() + 3];
        for (i, x) in acc.iter().enumerate() {
            for (j, y) in cubic.iter().enumerate() {
                next[i + j] = next[i + j].add(x.mul(*y));
            }
        }
        acc = next;
    }
    acc[(p - 1) as usize]
}

fn scan_oracle(p: u64) -> BTreeSet<[u64; 2]> {
    let n = Fp2Context::new(p).unwrap().nonresidue();
    let mut out = BTreeSet::new();
    for a in 0..p {
        for b in 0..p {
            let lam = F2 { a, b, p, n };
            if (b == 0 && a <= 1) || hasse_invariant(lam) != (F2 { a: 0, b: 0, p, n }) {
                continue;
            }
            out.insert([a, b]);
        }
    }
    out
}

fn c2() -> Outcome {
    let roots = |p: u64| -> Result<BTreeSet<[u64; 2]>, String> {
        let s = supersingular_lambdas(p).map_err(|e| e.to_string())?;
        Ok(s.lambdas().iter().map(|l| l.coords()).collect())
    };
    ensure(
        roots(7)? == BTreeSet::from([[2, 0], [4, 0], [6, 0]]),
        || "p=7 roots".into(),
    )?;
    let s5 = supersingular_lambdas(5).map_err(|e| e.to_string())?;
    ensure(s5.ctx().nonresidue() == 2, || "p=5 nonresidue".into())?;
    ensure(roots(5)? == BTreeSet::from([[3, 2], [3, 3]]), || {
        "p=5 roots".into()
    })?;
    for (i, l) in s5.lambdas().iter().enumerate() {
        let j = s5.frobenius_perm()[i];
        ensure(j != i && l.frobenius() == s5.lambdas()[j], || {
            "p=5 Frobenius".into()
        })?;
    }
    let checked = primes(5, 30);
    for &p in &checked {
        ensure(roots(p)? == scan_oracle(p), || {
            format!("p={p}: differs from scan")
        })?;
    }
    Ok(format!(
        "exact; scan oracle agrees for p < 30 ({} primes)",
        checked.len()
    ))
}

fn c3(mats: &mut Vec<PairingMatrix>) -> Outcome {
    let start = Instant::now();
    for p in primes(5, 500) {
        let m = build_pairing_matrix(p).map_err(|e| e.to_string())?;
        let n = m.size();
        let p_class = ResidualClass::of_p(m.basis().ctx());
        for i in 0..n {
            let row = pair_divisors(&m, &DivisorOnS::point(n, i), &DivisorOnS::eisenstein(n));
            ensure(row == p_class, || format!("p={p} row {i}: {row:?}"))?;
        }
        ensure(eisenstein_check(&m), || format!("p={p}"))?;
        mats.push(m);
    }
    let t = within(start, 60.0)?;
    Ok(format!("{} primes, {t:.2}s", mats.len()))
}

fn c4(mats: &[PairingMatrix]) -> Outcome {
    for m in mats {
        let p = m.p();
        let all_rational = m
            .entries()
            .iter()
            .flatten()
            .all(|e| e.res().in_prime_field() && !e.res().is_zero());
        ensure(all_rational && rationality_check(m), || {
            format!("p={p}: residue outside F_p^x")
        })?;
        ensure(frobenius_equivariance_check(m), || {
            format!("p={p}: equivariance")
        })?;
    }
    Ok(format!("{} primes", mats.len()))
}

fn c5(mats: &[PairingMatrix]) -> Outcome {
    for m in mats {
        let (p, n, g) = (m.p(), m.size(), m.genus());
        let gram = valuation_gram(m);
        for i in 0..g {
            for j in 0..g {
                let want = if i == j { 2 } else { 1 };
                let direct = pair_divisors(
                    m,
                    &DivisorOnS::difference(n, i + 1, 0),
                    &DivisorOnS::difference(n, j + 1, 0),
                )
                .val();
                ensure(gram[i][j] == want && direct == want, || {
                    format!("p={p} ({i},{j})")
                })?;
            }
        }
        let det = determinant(&gram);
        ensure(det == (g as i64 + 1).into(), || format!("p={p}: det {det}"))?;
    }
    Ok(format!("{} primes", mats.len()))
}

fn c6() -> Outcome {
    let class = |r: ResidualClass| (r.val(), r.res().coords());
    let m5 = build_pairing_matrix(5).map_err(|e| e.to_string())?;
    let want = [[(1, [2, 0]), (0, [3, 0])], [(0, [3, 0]), (1, [2, 0])]];
    for i in 0..2 {
        for j in 0..2 {
            ensure(class(m5.entry(i, j)) == want[i][j], || {
                format!("p=5 ({i},{j})")
            })?;
        }
    }
    let d = DivisorOnS::difference(2, 1, 0);
    ensure(class(pair_divisors(&m5, &d, &d)) == (2, [1, 0]), || {
        "p=5 e1-e0".into()
    })?;
    let m7 = build_pairing_matrix(7).map_err(|e| e.to_string())?;
    ensure(class(m7.entry(0, 0)) == (1, [1, 0]), || "p=7 (0,0)".into())?;
    ensure(class(m7.entry(0, 1)) == (0, [4, 0]), || "p=7 (0,1)".into())?;
    Ok("exact".into())
}

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn agreement(x: &Q, y: &Q) -> i64 {
    p_adic_valuation(&(x / y - Q::one()), 5).unwrap_or(i64::MAX)
}

fn c7() -> Outcome {
    let start = Instant::now();
    let tate = tate_example(5);
    let r = drinfeld_pairing(&tate, &w("g1"), &w("g1"), 10).map_err(|e| e.to_string())?;
    ensure(r.value.valuation() == 1, || {
        format!("v = {}", r.value.valuation())
    })?;
    let profile: Vec<Option<i64>> = r.truncation.profile_valuations()[1..].to_vec();
    let increasing = profile.len() >= 5
        && profile.iter().all(Option::is_some)
        && profile.windows(2).all(|x| x[0] < x[1]);
    ensure(increasing, || format!("profile {profile:?}"))?;
    let t = within(start, 5.0)?;

    let g2 = genus_two_example();
    let phi = |a: &str, b: &str| -> Result<PeriodPairingResult, String> {
        drinfeld_pairing(&g2, &w(a), &w(b), 5).map_err(|e| e.to_string())
    };
    let mut min_prec = i64::MAX;
    for (a, b) in [("g1", "g2"), ("g1", "g1"), ("g2", "g2")] {
        let (x, y) = (phi(a, b)?, phi(b, a)?);
        let prec = x.precision_estimate.min(y.precision_estimate);
        min_prec = min_prec.min(prec);
        ensure(prec >= 4, || format!("{a},{b}: precision {prec}"))?;
        ensure(
            agreement(&x.truncation.exact, &y.truncation.exact) >= prec,
            || format!("symmetry {a},{b}"),
        )?;
    }
    for (a, b, d) in [
        ("g1", "g2", "g1"),
        ("g2", "g2", "g1"),
        ("g1", "g1^-1", "g2"),
    ] {
        let ab = w(a).mul(&w(b)).to_string();
        let (lhs, r1, r2) = (phi(&ab, d)?, phi(a, d)?, phi(b, d)?);
        let prec = lhs
            .precision_estimate
            .min(r1.precision_estimate)
            .min(r2.precision_estimate);
        let rhs = &r1.truncation.exact * &r2.truncation.exact;
        ensure(
            agreement(&lhs.truncation.exact, &rhs) >= prec.min(4),
            || format!("bilinearity {ab},{d}"),
        )?;
    }
    let gram = theta::valuation_gram(&g2, 5).map_err(|e| e.to_string())?;
    ensure(is_positive_definite(&gram), || format!("gram {gram:?}"))?;
    for (i, m) in g2.generators().iter().enumerate() {
        let len = m.translation_length(5).map_err(|e| e.to_string())?;
        ensure(gram[i][i] == len, || format!("gram diagonal {i}"))?;
    }
    let profile: Vec<i64> = profile.into_iter().flatten().collect();
    Ok(format!(
        "Tate profile {profile:?} in {t:.2}s; genus 2 precision >= {min_prec}, gram {gram:?}"
    ))
}

fn c8() -> Outcome {
    let start = Instant::now();
    let l = lambda_expansion(40);
    for (k, c) in [(1, 16), (2, -128), (3, 704)] {
        ensure(l.coefficient(&qi(k)) == Some(Cyclo::int(c)), || {
            format!("λ coefficient {k}")
        })?;
    }
    let quotient = lambda_eta_quotient().expansion(&Variable::q_over(2), 40);
    let diff = l.sub(&quotient).map_err(|e| e.to_string())?;
    ensure(diff.valuation().is_none() && diff.order() >= qi(40), || {
        "η-quotient identity".into()
    })?;
    for p in primes(5, 20) {
        let d = eisenstein_d(p) as i64;
        let (e, _) = u_expansion(p, 6)
            .map_err(|e| e.to_string())?
            .leading()
            .ok_or("u = 0")?;
        ensure(e == qi((p as i64 - 1) / d), || {
            format!("u exponent p={p}: {e}")
        })?;
    }
    for p in [5u64, 7, 11, 13] {
        let d = eisenstein_d(p) as i64;
        let r = verify_fourier_mu(p).map_err(|e| e.to_string())?;
        let want = num_traits::pow(qi(p as i64), (12 / d) as usize).recip();
        ensure(r.coefficient == want, || {
            format!("fourier μ coefficient p={p}")
        })?;
        ensure(r.q1_exponent == -6 * (p as i64 - 1) / d, || {
            format!("fourier μ exponent p={p}")
        })?;
    }
    let t = within(start, 30.0)?;
    Ok(format!("{t:.2}s"))
}

/// `[SL_2(Z/n) : matrices diagonal mod n]`, by enumeration.
fn diagonal_index(n: i64) -> i64 {
    let (mut all, mut diag) = (0, 0);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if (a * d - b * c - 1).rem_euclid(n) == 0 {
                        all += 1;
                        diag += i64::from(b == 0 && c == 0);
                    }
                }
            }
        }
    }
    all / diag
}

fn c9() -> Outcome {
    let ps = primes(5, 60);
    for &p in &ps {
        for r in level_two_relations(p).map_err(|e| e.to_string())? {
            ensure(r.matches(), || format!("p={p}: {} at {}", r.map, r.cusp))?;
        }
        let pb = correspondence_pullback(p).map_err(|e| e.to_string())?;
        let want = [(format!("1/{p}"), 6), ("1".to_string(), -6)]
            .into_iter()
            .collect();
        ensure(pb == want, || format!("p={p}: pullback {pb:?}"))?;
    }
    for (level, n) in [(Level::Two, 2), (Level::Three, 3)] {
        let degree = diagonal_index(n);
        for &p in &ps {
            for (name, m) in standard_maps(level) {
                for target in [Gamma0Cusp::Zero, Gamma0Cusp::Infinity] {
                    let s = fiber_sum(level, p, &m, target).map_err(|e| e.to_string())?;
                    ensure(s == degree, || {
                        format!("N={n} p={p} {name}: {s} != {degree}")
                    })?;
                }
            }
        }
    }
    let mut findings = BTreeSet::new();
    for p in ps.iter().copied().filter(|p| p % 3 == 1) {
        let table = level_three_table(p).map_err(|e| e.to_string())?;
        for j in 0..5 {
            let sum: i64 = table.iter().map(|row| row.computed[j]).sum();
            ensure(sum == diagonal_index(3), || {
                format!("p={p} column {j} sums to {sum}")
            })?;
        }
        for row in table.iter().filter(|r| !r.matches()) {
            findings.insert(format!(
                "cusp {} computed {:?} published {:?}",
                row.cusp, row.computed, row.published
            ));
        }
    }
    let report = if findings.is_empty() {
        "table matches".to_string()
    } else {
        format!(
            "table finding: {}",
            findings.into_iter().collect::<Vec<_>>().join("; ")
        )
    };
    Ok(format!("{} primes; {report}", ps.len()))
}

fn suite_bytes() -> Result<Vec<u8>, String> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let file = |n: &str| dir.join(n).to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = [
        vec!["supersingular", "--prime", "5"],
        vec!["supersingular", "--prime", "97", "--format", "csv"],
        vec!["pairing", "--prime", "7", "--powered"],
        vec!["pairing", "--prime", "101"],
        vec!["qseries", "--prime", "7"],
        vec!["qseries", "--prime", "13", "--order", "30"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .chain([
        vec![
            "theta".into(),
            "--generators".into(),
            file("tate5.json"),
            "--alpha".into(),
            "g1".into(),
            "--beta".into(),
            "g1".into(),
            "--max-length".into(),
            "10".into(),
        ],
        vec![
            "theta".into(),
            "--generators".into(),
            file("genus2.json"),
            "--alpha".into(),
            "g1".into(),
            "--beta".into(),
            "g2".into(),
            "--max-length".into(),
            "5".into(),
        ],
    ])
    .collect();
    let mut out = Vec::new();
    for args in runs {
        let o = Command::new(env!("CARGO_BIN_EXE_padic-periods"))
            .env_remove("PADIC_PERIODS_CACHE")
            .args(&args)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.success(), || {
            format!("{args:?} exited {:?}", o.status.code())
        })?;
        out.extend(o.stdout);
    }
    Ok(out)
}

fn c10() -> Outcome {
    let (a, b) = (suite_bytes()?, suite_bytes()?);
    ensure(a == b, || "outputs differ".into())?;
    Ok(format!("{} bytes identical", a.len()))
}

fn main() -> ExitCode {
    let mut mats = Vec::new();
    let outcomes = [
        c1(),
        c2(),
        c3(&mut mats),
        c4(&mats),
        c5(&mats),
        c6(),
        c7(),
        c8(),
        c9(),
        c10(),
    ];
    let mut failed = 0;
    for (i, o) in outcomes.iter().enumerate() {
        match o {
            Ok(detail) => println!("criterion {}: PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({why})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
