//! One function per subcommand. Each returns a [`Report`] carrying both
//! renderings; `main` picks one and maps `passed` to the exit status.

use std::fmt::Write as _;
use std::path::Path;

use aperylab_core::deresonate::{grassmann_apery_limit, pac_limit};
use aperylab_core::holonomic::{
    apery_limit, apery_pair, mukai_operator, op_to_recurrence, pair_from_recurrence,
    tabulated_constant, ApproxLimit, Normalization, SeqPair, Variety,
};
use aperylab_core::modular::{l_f_3, verify_phi_identity, verify_ratio_identity};
use aperylab_core::monodromy::{
    infinity_monodromy_eigencheck, is_admissible, wedge_coefficient_identity, HypFrame,
};
use aperylab_core::precision::{parse_decimal_rational, pi};
use aperylab_core::{Rational, Real};
use serde_json::{json, Value};

use crate::cache::{Cache, CacheKey};
use crate::config::{RunConfig, DEFAULT_TERMS};
use crate::error::{CliError, Result};
use crate::formats::{
    parse_rational, rational_to_string, status, ApproxLimitJson, IdentityReportJson,
    MonodromyReportJson, RecurrenceJson, SeqPairJson,
};

/// Terms for the Grassmannian pair when `--terms` is not given: its
/// coefficients `a_{Nn}` grow like `(N^N)^n`, so 400 would be far too
/// many.
pub const DEFAULT_GRASSMANN_TERMS: usize = 40;
pub const DEFAULT_ORDER: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub passed: bool,
    pub text: String,
    pub json: Value,
}

impl Report {
    pub fn render(&self, cfg: &RunConfig) -> String {
        if cfg.json() {
            serde_json::to_string_pretty(&self.json).expect("report JSON serializes")
        } else {
            self.text.clone()
        }
    }
}

/// `all` or a comma-separated list of labels.
pub fn parse_varieties(s: &str, allowed: &[Variety]) -> Result<Vec<Variety>> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(allowed.to_vec());
    }
    s.split(',')
        .map(|t| {
            let v: Variety = t.parse()?;
            if allowed.contains(&v) {
                Ok(v)
            } else {
                Err(CliError::Input(format!("{v} is not supported here")))
            }
        })
        .collect()
}

/// `p/q` or a decimal literal.
pub fn parse_parameter(s: &str) -> Result<Rational> {
    parse_rational(s).or_else(|_| {
        parse_decimal_rational(s)
            .ok_or_else(|| CliError::Input(format!("`{s}` is neither p/q nor a decimal")))
    })
}

/// The Apery pair through `n_max`, reusing any cached prefix that is at
/// least as long.
pub fn cached_pair(v: Variety, n_max: usize, cache: Option<&Cache>) -> Result<SeqPair> {
    let key = CacheKey::new("seqpair", v.label(), n_max);
    if let Some(c) = cache {
        if let Some((_, j)) = c.get_at_least::<SeqPairJson>(&key) {
            if let Ok(p) = j.to_pair() {
                if p.len() > n_max {
                    return Ok(p.truncated(n_max));
                }
            }
        }
    }
    let pair = apery_pair(v, n_max)?;
    if let Some(c) = cache {
        c.put(&key, &SeqPairJson::from_pair(&pair))?;
    }
    Ok(pair)
}

fn threshold(cfg: &RunConfig) -> u32 {
    cfg.digits.saturating_sub(10)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn limit_line(l: &ApproxLimit) -> String {
    let cd = l.certified_digits();
    format!(
        "{} (±{:.3}, {cd} digits)",
        l.value.to_sci_string(cd.clamp(1, 60)),
        l.error_estimate
    )
}

pub fn cmd_constants(
    varieties: &[Variety],
    cfg: &RunConfig,
    cache: Option<&Cache>,
) -> Result<Report> {
    let terms = cfg.terms_or(DEFAULT_TERMS);
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for &v in varieties {
        let pair = cached_pair(v, terms, cache)?;
        let lim = apery_limit(&pair, cfg.digits)?;
        let table = tabulated_constant(v);
        let oracle = table.value(cfg.digits + 10)?;
        let agree = lim.value.agreement_digits(&oracle).min(cfg.digits + 10);
        let ok = agree >= threshold(cfg) && lim.certified_digits() >= threshold(cfg);
        all &= ok;
        writeln!(
            text,
            "{v}  {:<12} limit {}  oracle {}  agree {agree}  {}",
            table.describe(),
            limit_line(&lim),
            oracle.to_sci_string(cfg.digits.min(60)),
            mark(ok)
        )
        .unwrap();
        rows.push(json!({
            "variety": v.label(),
            "constant": table.describe(),
            "limit": ApproxLimitJson::from_limit(&lim),
            "oracle": oracle.to_sci_string(cfg.digits),
            "agreement_digits": agree,
            "status": status(ok),
        }));
    }
    Ok(Report {
        passed: all,
        text,
        json: json!({
            "digits": cfg.digits,
            "terms": terms,
            "rows": rows,
            "status": status(all),
        }),
    })
}

/// Apery limit of a recurrence read from a JSON file with a
/// `normalization` block.
pub fn cmd_limit(file: &Path, cfg: &RunConfig) -> Result<Report> {
    let text = std::fs::read_to_string(file).map_err(|e| CliError::io(file, e))?;
    let rj: RecurrenceJson = serde_json::from_str(&text)?;
    let norm = rj
        .normalization
        .as_ref()
        .ok_or_else(|| CliError::Input("recurrence file has no `normalization` block".into()))?
        .to_normalization()?;
    let rec = rj.to_recurrence()?;
    let label = rj.label.clone().unwrap_or_else(|| "file".into());
    let pair = pair_from_recurrence(&rec, &norm, &label, cfg.terms_or(DEFAULT_TERMS))?;
    let lim = apery_limit(&pair, cfg.digits)?;
    let j = ApproxLimitJson::from_limit(&lim);
    Ok(Report {
        passed: true,
        text: format!("{label}: {}\n", limit_line(&lim)),
        json: serde_json::to_value(j)?,
    })
}

/// The recurrence of a Mukai threefold with the standard normalization,
/// in the format `limit` reads.
pub fn cmd_export(v: Variety) -> Result<Report> {
    let rec = op_to_recurrence(&mukai_operator(v));
    let mut rj = RecurrenceJson::from_recurrence(&rec, Some(&Normalization::standard()));
    rj.label = Some(v.label().to_string());
    let json = serde_json::to_value(&rj)?;
    let text = serde_json::to_string_pretty(&rj)? + "\n";
    Ok(Report {
        passed: true,
        text,
        json,
    })
}

/// `π²/(N²(N+1))` at `p` digits.
pub fn grassmann_target(n: usize, p: u32) -> Real {
    let nn = n as i64;
    let pi_sq = pi(p + 5).square();
    pi_sq.div_i64(nn * nn * (nn + 1)).with_digits(p)
}

/// The Grassmannian constant from the integral pair and, independently,
/// as the resonance limit of the perturbed constant.
pub fn cmd_grassmann(n: usize, cfg: &RunConfig) -> Result<Report> {
    let terms = cfg.terms_or(DEFAULT_GRASSMANN_TERMS);
    let lim = grassmann_apery_limit(n, terms, cfg.digits)?;
    let pac = pac_limit(n, cfg.digits)?;
    let target = grassmann_target(n, cfg.digits + 10);
    let agree = lim.value.agreement_digits(&target);
    let pac_agree = pac.value.agreement_digits(&lim.value);
    let t = threshold(cfg);
    let ok = agree >= t && lim.certified_digits() >= t && pac_agree >= t;
    let nn = n * n * (n + 1);
    let text = format!(
        "G(2,{n})  limit {}\n         π²/{nn} {}  agree {agree}\n         resonance limit {}  agree {pac_agree}\n{}\n",
        limit_line(&lim),
        target.to_sci_string(cfg.digits.min(60)),
        limit_line(&pac),
        mark(ok)
    );
    Ok(Report {
        passed: ok,
        text,
        json: json!({
            "N": n,
            "terms": terms,
            "limit": ApproxLimitJson::from_limit(&lim),
            "target": format!("pi^2/{nn}"),
            "agreement_digits": agree,
            "resonance_limit": ApproxLimitJson::from_limit(&pac),
            "resonance_agreement_digits": pac_agree,
            "status": status(ok),
        }),
    })
}

/// Both modular identities through `q^order` and the closed-form `L(F,3)`
/// against the tabulated constant.
pub fn cmd_modular(varieties: &[Variety], order: usize, cfg: &RunConfig) -> Result<Report> {
    let mut reports = Vec::new();
    let mut lvalues = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for &v in varieties {
        for r in [
            verify_phi_identity(v, order)?,
            verify_ratio_identity(v, order)?,
        ] {
            all &= r.passed();
            let j = IdentityReportJson::from_report(&r);
            match &j.first_mismatch {
                None => writeln!(
                    text,
                    "{v}  {:<6} through q^{}  pass",
                    j.identity, j.order_checked
                ),
                Some(m) => writeln!(
                    text,
                    "{v}  {:<6} FAIL at q^{}: {} vs {}",
                    j.identity, m.power, m.lhs, m.rhs
                ),
            }
            .unwrap();
            reports.push(j);
        }
        let lf = l_f_3(v, cfg.digits)?;
        let table = tabulated_constant(v);
        let agree = lf.agreement_digits(&table.value(cfg.digits)?);
        let ok = agree >= threshold(cfg);
        all &= ok;
        writeln!(
            text,
            "{v}  L(F,3) {}  = {}  agree {agree}  {}",
            lf.to_sci_string(cfg.digits.min(60)),
            table.describe(),
            mark(ok)
        )
        .unwrap();
        lvalues.push(json!({
            "variety": v.label(),
            "l_f_3": lf.to_sci_string(cfg.digits),
            "constant": table.describe(),
            "agreement_digits": agree,
            "status": status(ok),
        }));
    }
    Ok(Report {
        passed: all,
        text,
        json: json!({
            "identities": reports,
            "l_values": lvalues,
            "status": status(all),
        }),
    })
}

/// The eigencheck of `M_∞` and the wedge coefficient identity on the
/// deresonated frame of rank `n`.
pub fn cmd_monodromy(n: usize, e: &Rational, u: &Rational, cfg: &RunConfig) -> Result<Report> {
    if !is_admissible(n, e, u) {
        return Err(CliError::Input(format!(
            "(e, u) = ({e}, {u}) is not admissible for N = {n}: need 0 < |e|, |u| < 1/4, \
             distinct exponents and no N·α_i an integer"
        )));
    }
    let p = cfg.digits;
    let frame = HypFrame::deresonated(n, e, u, p)?;
    let eig = infinity_monodromy_eigencheck(&frame, p)?;
    let wedge = wedge_coefficient_identity(&frame, e, u, p)?;
    let ok = eig.passed() && wedge.passed(threshold(cfg));
    let mut residuals: Vec<&Real> = eig.residuals.iter().collect();
    residuals.push(&wedge.ratio_residual);
    residuals.push(&wedge.combination_residual);
    residuals.extend(wedge.route_gap.iter());
    let report = MonodromyReportJson {
        n,
        e: rational_to_string(e),
        u: rational_to_string(u),
        ordering: eig.ordering.clone(),
        power: eig.power,
        residuals: residuals.iter().map(|r| r.to_sci_string(3)).collect(),
        status: status(ok),
    };
    let text = format!(
        "N={n} e={} u={}\n  M_∞ = R_{} ⋯ R_{} (first applied first: {:?}), λ_i = z_i^{}\n  worst eigen-residual {:.3} (tolerance {:.3})\n  κ12/κ34 vs sin2πe/sin2πu: {:.3}, route gap {}\n{}\n",
        report.e,
        report.u,
        eig.ordering.last().copied().unwrap_or(0),
        eig.ordering.first().copied().unwrap_or(0),
        eig.ordering,
        eig.power,
        Real::max_abs(eig.residuals.iter()).unwrap_or_else(|| Real::zero(p)),
        eig.tolerance,
        wedge.ratio_residual,
        wedge
            .route_gap
            .as_ref()
            .map_or_else(|| "n/a (singular form)".to_string(), |g| format!("{g:.3}")),
        mark(ok)
    );
    Ok(Report {
        passed: ok,
        text,
        json: serde_json::to_value(report)?,
    })
}
