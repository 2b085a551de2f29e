//! One function per subcommand, each producing a [`Report`].

use std::path::Path;

use serde_json::{json, Value};

use padic_periods::arith::{eisenstein_d, is_prime, Q};
use padic_periods::pairing::{
    determinant, eisenstein_check, frobenius_equivariance_check, is_positive_definite,
    rationality_check, twelfth_power_table, valuation_gram, PairingMatrix,
};
use padic_periods::qseries::{
    correspondence_pullback, cusp_data, cusps, fiber_sum, h3_expansion, lambda_eta_quotient,
    lambda_expansion, level_three_table, level_two_relations, map_degree, mu3_divisor,
    mu3_expansion, mu_divisor, mu_expansion, standard_maps, u_expansion, verify_fourier_mu,
    verify_functional_equation_mu, verify_functional_equation_u, CuspDivisor,
    FunctionalEquationCertificate, Gamma0Cusp, Level, QExpansion, QSeriesError, Variable,
};
use padic_periods::schottky::{verify_good_position, SchottkyError, Word};
use padic_periods::supersingular::deuring_polynomial;
use padic_periods::theta::{drinfeld_pairing, ThetaError};

use crate::cache::load_or_compute;
use crate::generators::GeneratorsFile;
use crate::report::{
    cyclo_json, fp2_json, padic_json, q_json, residual_json, series_json, CheckResult, Report,
    Status,
};
use crate::CliError;

fn check_prime(p: u64) -> Result<(), CliError> {
    if p < 5 || !is_prime(p) {
        return Err(CliError::Usage(format!("{p} is not a prime >= 5")));
    }
    Ok(())
}

pub fn supersingular(p: u64, cache_dir: Option<&Path>) -> Result<Report, CliError> {
    check_prime(p)?;
    let set = load_or_compute(cache_dir, p)?;
    let deuring = deuring_polynomial(p).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut r = Report::new("supersingular");
    r.meta.field = Some(set.ctx().into());
    r.param("prime", p);
    r.push(CheckResult::new(
        "supersingular.lambdas",
        Status::Info,
        json!({
            "order_key": set.order_key(),
            "lambdas": set.lambdas().iter().map(fp2_json).collect::<Vec<_>>(),
            "frobenius_perm": set.frobenius_perm(),
            "deuring_coefficients": deuring.coeffs(),
        }),
    ));
    let want = (p - 1) / 2;
    r.push(CheckResult::new(
        "supersingular.count",
        Status::from_bool(set.len() as u64 == want),
        json!({ "count": set.len(), "expected": want }),
    ));
    Ok(r)
}

fn matrix_json(m: &[Vec<padic_periods::arith::ResidualClass>]) -> Value {
    m.iter()
        .map(|row| row.iter().map(residual_json).collect::<Vec<_>>())
        .collect()
}

pub fn pairing(p: u64, powered: bool, cache_dir: Option<&Path>) -> Result<Report, CliError> {
    check_prime(p)?;
    let m = PairingMatrix::from_basis(load_or_compute(cache_dir, p)?);
    let mut r = Report::new("pairing");
    r.meta.field = Some(m.basis().ctx().into());
    r.param("prime", p).param("powered", powered);
    let mut values = json!({
        "d": m.d(),
        "genus": m.genus(),
        "lambdas": m.basis().lambdas().iter().map(fp2_json).collect::<Vec<_>>(),
        "matrix": matrix_json(m.entries()),
    });
    if powered {
        values["powered_exponent"] = json!(12 / m.d());
        values["powered_matrix"] = matrix_json(&twelfth_power_table(&m));
    }
    r.push(CheckResult::new("pairing.matrix", Status::Info, values));
    r.push(CheckResult::new(
        "pairing.eisenstein",
        Status::from_bool(eisenstein_check(&m)),
        json!({}),
    ));
    r.push(CheckResult::new(
        "pairing.rationality",
        Status::from_bool(rationality_check(&m)),
        json!({}),
    ));
    r.push(CheckResult::new(
        "pairing.frobenius_equivariance",
        Status::from_bool(frobenius_equivariance_check(&m)),
        json!({}),
    ));
    let gram = valuation_gram(&m);
    let g = gram.len();
    let expected: Vec<Vec<i64>> = (0..g)
        .map(|i| (0..g).map(|j| if i == j { 2 } else { 1 }).collect())
        .collect();
    r.push(CheckResult::new(
        "pairing.valuation_gram",
        Status::from_bool(gram == expected),
        json!({ "gram": gram }),
    ));
    let det = determinant(&gram);
    let det_ok = det == (g as i64 + 1).into() && is_positive_definite(&gram);
    r.push(CheckResult::new(
        "pairing.determinant",
        Status::from_bool(det_ok),
        json!({ "determinant": det.to_string(), "expected": g + 1 }),
    ));
    Ok(r)
}

fn theta_error(e: ThetaError) -> CliError {
    match e {
        ThetaError::InsufficientStabilization { profile } => CliError::Precision(format!(
            "product has not stabilized: shell changes {profile:?}"
        )),
        ThetaError::Schottky(SchottkyError::ParseWord(_) | SchottkyError::UnknownGenerator(_)) => {
            CliError::Usage(e.to_string())
        }
        e => CliError::Geometry(e.to_string()),
    }
}

pub fn theta(
    file: &GeneratorsFile,
    alpha: &str,
    beta: &str,
    max_len: usize,
) -> Result<Report, CliError> {
    if file.p < 3 || !is_prime(file.p) {
        return Err(CliError::Usage(format!("{} is not an odd prime", file.p)));
    }
    let g = file.group()?;
    let parse = |s: &str| {
        s.parse::<Word>()
            .map_err(|e| CliError::Usage(e.to_string()))
    };
    let (a, b) = (parse(alpha)?, parse(beta)?);
    let gp = verify_good_position(&g).map_err(|e| CliError::Usage(e.to_string()))?;
    if !gp.passed() {
        return Err(CliError::Geometry(format!(
            "ball system is not in good position: overlapping {:?}, alpha(P1 - B) = C {:?}, \
             alpha^-1(P1 - C) = B {:?}",
            gp.overlapping, gp.maps_complement_b_to_c, gp.inverse_maps_complement_c_to_b
        )));
    }
    let res = drinfeld_pairing(&g, &a, &b, max_len).map_err(theta_error)?;
    let mut r = Report::new("theta");
    r.meta.field = Some(res.value.ctx().into());
    r.param("prime", file.p)
        .param("alpha", a.to_string())
        .param("beta", b.to_string())
        .param("max_length", max_len);
    r.push(CheckResult::new(
        "theta.good_position",
        Status::Pass,
        json!({}),
    ));
    let residual = res
        .value
        .residual()
        .map_err(|e| CliError::Precision(e.to_string()))?;
    let profile: Vec<Value> = res
        .truncation
        .stabilization_profile
        .iter()
        .map(|s| json!({ "length": s.length, "valuation": s.valuation }))
        .collect();
    r.push(CheckResult::new(
        "theta.pairing",
        Status::Pass,
        json!({
            "value": padic_json(&res.value),
            "valuation": res.value.valuation(),
            "residual": residual_json(&residual),
            "precision_estimate": res.precision_estimate,
            "witnesses": [res.witnesses.0.to_string(), res.witnesses.1.to_string()],
            "stabilization_profile": profile,
        }),
    ));
    Ok(r)
}

/// Which q-series checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QCheck {
    All,
    Lambda,
    U,
    Mu,
    FourierMu,
    FunctionalEq,
    Ramify,
    N3,
}

impl QCheck {
    pub const NAMES: [&'static str; 8] = [
        "all",
        "lambda",
        "u",
        "mu",
        "fourier-mu",
        "functional-eq",
        "ramify",
        "n3",
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "all" => QCheck::All,
            "lambda" => QCheck::Lambda,
            "u" => QCheck::U,
            "mu" => QCheck::Mu,
            "fourier-mu" => QCheck::FourierMu,
            "functional-eq" => QCheck::FunctionalEq,
            "ramify" => QCheck::Ramify,
            "n3" => QCheck::N3,
            _ => return None,
        })
    }

    fn needs_prime(self) -> bool {
        self != QCheck::Lambda
    }
}

fn qs(e: QSeriesError) -> CliError {
    CliError::Usage(e.to_string())
}

fn qi(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// `f · f^{-1} = 1` to the known order.
fn is_unit_identity(f: &QExpansion) -> Result<bool, CliError> {
    let one = f.mul(&f.inv().map_err(qs)?).map_err(qs)?;
    let ok = one
        .terms()
        .all(|(e, c)| if e == qi(0) { c.is_one() } else { c.is_zero() });
    Ok(ok)
}

fn check_lambda(order: usize) -> Result<Vec<CheckResult>, CliError> {
    let l = lambda_expansion(order);
    let quotient = lambda_eta_quotient().expansion(&Variable::q_over(2), order);
    let diff = l.sub(&quotient).map_err(qs)?;
    let first: Vec<Value> = (1..=3)
        .map(|k| l.coefficient(&qi(k)).map(|c| cyclo_json(&c)).into())
        .collect();
    let leading_ok = first == [json!(16), json!(-128), json!(704)];
    let identity_ok = diff.valuation().is_none();
    Ok(vec![
        CheckResult::new(
            "lambda.coefficients",
            Status::from_bool(leading_ok),
            json!({ "first": first, "series": series_json(&l) }),
        ),
        CheckResult::new(
            "lambda.eta_quotient_identity",
            Status::from_bool(identity_ok),
            json!({ "compared_to_order": q_json(&diff.order()) }),
        ),
    ])
}

fn check_u(p: u64, order: usize) -> Result<Vec<CheckResult>, CliError> {
    let d = eisenstein_d(p) as i64;
    let u = u_expansion(p, order).map_err(qs)?;
    let (e, c) = u.leading().ok_or_else(|| qs(QSeriesError::ZeroSeries))?;
    let ok = e == qi((p as i64 - 1) / d) && c.is_one();
    Ok(vec![CheckResult::new(
        "u.leading",
        Status::from_bool(ok),
        json!({
            "d": d,
            "leading_exponent": q_json(&e),
            "expected_exponent": (p as i64 - 1) / d,
            "leading_coefficient": cyclo_json(&c),
            "series": series_json(&u),
        }),
    )])
}

fn check_mu(p: u64, order: usize) -> Result<Vec<CheckResult>, CliError> {
    let mu = mu_expansion(p, order).map_err(qs)?;
    let (e, c) = mu.leading().ok_or_else(|| qs(QSeriesError::ZeroSeries))?;
    Ok(vec![
        CheckResult::new(
            "mu.leading",
            Status::from_bool(e == qi(0)),
            json!({
                "leading_exponent": q_json(&e),
                "leading_coefficient": cyclo_json(&c),
                "series": series_json(&mu),
            }),
        ),
        CheckResult::new(
            "mu.inverse",
            Status::from_bool(is_unit_identity(&mu)?),
            json!({}),
        ),
    ])
}

fn check_fourier_mu(p: u64) -> Result<Vec<CheckResult>, CliError> {
    let d = eisenstein_d(p) as i64;
    let f = verify_fourier_mu(p).map_err(qs)?;
    let want = Q::from_integer(p.into()).pow((12 / d) as i32).recip();
    let ok = f.p_exponent == -12 / d
        && f.coefficient == want
        && f.q1_exponent == -6 * (p as i64 - 1) / d;
    Ok(vec![CheckResult::new(
        "fourier_mu.leading",
        Status::from_bool(ok),
        json!({
            "coefficient": f.coefficient_label(),
            "coefficient_value": q_json(&f.coefficient),
            "exponent": f.q1_exponent,
            "expected": [format!("{p}^{}", -12 / d), -6 * (p as i64 - 1) / d],
            "local_parameter": f.expansion.var().to_string(),
        }),
    )])
}

fn certificate_json(c: &FunctionalEquationCertificate) -> Value {
    json!({
        "p_power": c.p_power,
        "p_exponent": q_json(&c.p_exponent),
        "lhs": c.lhs.to_string(),
        "rhs": c.rhs.to_string(),
        "trace": c.trace,
    })
}

fn check_functional_eq(p: u64) -> Result<Vec<CheckResult>, CliError> {
    let d = eisenstein_d(p) as i64;
    let u = verify_functional_equation_u(p).map_err(qs)?;
    let mu = verify_functional_equation_mu(p).map_err(qs)?;
    Ok(vec![
        CheckResult::new(
            "functional_eq.u",
            Status::from_bool(u.holds() && u.p_exponent == qi(-12 / d)),
            certificate_json(&u),
        ),
        CheckResult::new(
            "functional_eq.mu",
            Status::from_bool(mu.holds()),
            certificate_json(&mu),
        ),
    ])
}

fn divisor_json(d: &CuspDivisor) -> Value {
    d.iter()
        .map(|(k, v)| (k.clone(), json!(v)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn cusp_table(level: Level, p: u64) -> Result<Value, CliError> {
    let rows = cusps(level, p)
        .iter()
        .map(|x| {
            let c = cusp_data(level, p, x).map_err(qs)?;
            Ok(json!({
                "cusp": x.to_string(),
                "width": c.width,
                "local_parameter": c.local_parameter,
            }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(rows.into())
}

fn fiber_sums(level: Level, p: u64) -> Result<CheckResult, CliError> {
    let degree = map_degree(level, p).map_err(qs)?;
    let mut ok = true;
    let mut sums = Vec::new();
    for (name, m) in standard_maps(level) {
        for target in [Gamma0Cusp::Zero, Gamma0Cusp::Infinity] {
            let s = fiber_sum(level, p, &m, target).map_err(qs)?;
            ok &= s == degree;
            sums.push(json!({ "map": name, "target": target.to_string(), "sum": s }));
        }
    }
    let n = match level {
        Level::Two => "n2",
        Level::Three => "n3",
    };
    Ok(CheckResult::new(
        format!("ramify.fiber_sums.{n}"),
        Status::from_bool(ok),
        json!({ "degree": degree, "sums": sums }),
    ))
}

fn check_ramify(p: u64) -> Result<Vec<CheckResult>, CliError> {
    let mut out = vec![CheckResult::new(
        "ramify.cusps.n2",
        Status::Info,
        json!({ "cusps": cusp_table(Level::Two, p)? }),
    )];
    let rel = level_two_relations(p).map_err(qs)?;
    let rows: Vec<Value> = rel
        .iter()
        .map(|r| {
            json!({
                "cusp": r.cusp.to_string(),
                "map": r.map,
                "target": r.relation.target.to_string(),
                "index": r.relation.index,
                "expected_target": r.expected_target.to_string(),
                "expected_index": r.expected_index,
                "root_of_unity": q_json(&r.relation.root_of_unity),
                "status": Status::from_bool(r.matches()),
            })
        })
        .collect();
    out.push(CheckResult::new(
        "ramify.relations",
        Status::from_bool(rel.iter().all(|r| r.matches())),
        json!({ "relations": rows }),
    ));
    let pb = correspondence_pullback(p).map_err(qs)?;
    let want: CuspDivisor = [(format!("1/{p}"), 6), ("1".to_string(), -6)]
        .into_iter()
        .collect();
    out.push(CheckResult::new(
        "ramify.pullback",
        Status::from_bool(pb == want),
        json!({ "computed": divisor_json(&pb), "expected": divisor_json(&want) }),
    ));
    let mu = mu_divisor(p).map_err(qs)?;
    out.push(CheckResult::new(
        "ramify.mu_divisor",
        Status::from_bool(mu.values().sum::<i64>() == 0),
        json!({ "divisor": divisor_json(&mu) }),
    ));
    out.push(fiber_sums(Level::Two, p)?);
    if p % 3 == 1 {
        out.push(fiber_sums(Level::Three, p)?);
        out.push(table_one(p)?);
    } else {
        out.push(CheckResult::new(
            "ramify.table1",
            Status::Info,
            json!({ "skipped": "the level-3 table needs p = 1 mod 3" }),
        ));
    }
    Ok(out)
}

fn table_one(p: u64) -> Result<CheckResult, CliError> {
    let rows = level_three_table(p).map_err(qs)?;
    let maps: Vec<&str> = standard_maps(Level::Three)
        .iter()
        .map(|(n, _)| *n)
        .collect();
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "cusp": r.cusp.to_string(),
                "local_parameter": r.local_parameter,
                "computed": r.computed,
                "published": r.published,
                "matches": r.matches(),
            })
        })
        .collect();
    // the computed columns must add up to the degree over [0]
    let degree = map_degree(Level::Three, p).map_err(qs)?;
    let consistent =
        (0..maps.len()).all(|j| rows.iter().map(|r| r.computed[j]).sum::<i64>() == degree);
    let status = if !consistent {
        Status::Fail
    } else if rows.iter().all(|r| r.matches()) {
        Status::Pass
    } else {
        Status::Finding
    };
    Ok(CheckResult::new(
        "ramify.table1",
        status,
        json!({ "maps": maps, "rows": json_rows, "degree": degree, "fiber_sums_consistent": consistent }),
    ))
}

fn check_n3(p: u64, order: usize) -> Result<Vec<CheckResult>, CliError> {
    let h = h3_expansion(order);
    let h_ok = h.valuation() == Some(qi(-1)) && h.rational_coeffs().is_ok();
    let mu3 = mu3_expansion(p, order, 12).map_err(qs)?;
    let (e, c) = mu3.leading().ok_or_else(|| qs(QSeriesError::ZeroSeries))?;
    let div = mu3_divisor(p).map_err(qs)?;
    Ok(vec![
        CheckResult::new(
            "n3.h",
            Status::from_bool(h_ok),
            json!({ "series": series_json(&h) }),
        ),
        CheckResult::new(
            "n3.mu3",
            Status::from_bool(e == qi(0) && mu3.conductor() == 3 && is_unit_identity(&mu3)?),
            json!({
                "conductor": mu3.conductor(),
                "leading_coefficient": cyclo_json(&c),
                "series": series_json(&mu3),
            }),
        ),
        CheckResult::new(
            "n3.mu3_divisor",
            Status::from_bool(div.values().sum::<i64>() == 0),
            json!({ "divisor": divisor_json(&div), "cusps": cusp_table(Level::Three, p)? }),
        ),
    ])
}

pub fn qseries(p: Option<u64>, check: QCheck, order: usize) -> Result<Report, CliError> {
    if order == 0 {
        return Err(CliError::Usage("--order must be at least 1".into()));
    }
    let need = |c: QCheck| check == QCheck::All || check == c;
    let prime = match p {
        Some(p) => {
            check_prime(p)?;
            Some(p)
        }
        None if check.needs_prime() => {
            return Err(CliError::Usage("this check needs --prime".into()))
        }
        None => None,
    };
    let mut r = Report::new("qseries");
    if let Some(p) = prime {
        r.param("prime", p);
    }
    r.param("check", QCheck::NAMES[check as usize])
        .param("order", order);
    let mut results = Vec::new();
    if need(QCheck::Lambda) {
        results.extend(check_lambda(order)?);
    }
    if let Some(p) = prime {
        if need(QCheck::U) {
            results.extend(check_u(p, order)?);
        }
        if need(QCheck::Mu) {
            results.extend(check_mu(p, order)?);
        }
        if need(QCheck::FourierMu) {
            results.extend(check_fourier_mu(p)?);
        }
        if need(QCheck::FunctionalEq) {
            results.extend(check_functional_eq(p)?);
        }
        if need(QCheck::Ramify) {
            results.extend(check_ramify(p)?);
        }
        if need(QCheck::N3) {
            results.extend(check_n3(p, order)?);
        }
    }
    for c in results {
        r.push(c);
    }
    Ok(r)
}
