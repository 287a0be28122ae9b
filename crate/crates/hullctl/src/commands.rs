use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use chainhull::bruteforce::{verify_case, CaseSummary, DEFAULT_BRUTE_BUDGET};
use chainhull::cosetlab::{in_nq, CosetAtlas};
use chainhull::grarith::{Coefficients, GaloisRing, OmegaTable};
use chainhull::hullcount::{
    average_dim, bnq, bounds, count_hulls, exact_enumeration, HullReport, HullSetting, Method, RationalRepr,
    DEFAULT_BUDGET,
};
use chainhull::io::{parse_grid, parse_multiset_text, parse_ring};
use chainhull::serialcodes::CodeSpace;
use chainhull::Error;
use serde::{Deserialize, Serialize};

use crate::output::{csv_rows, json, CliError, Output};
use crate::{Cli, Command, MethodArg};

pub fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match &cli.command {
        Command::Cosets { n, q } => cosets(*n, *q),
        Command::Factor { n, ring } => factor(*n, ring),
        Command::Code { ring, multiset, n, ell } => code(ring, multiset, *n, *ell),
        Command::EnumerateHulls { ring, n, method, ell } => {
            let method = match method {
                MethodArg::Algorithm1 => Method::Algorithm1,
                MethodArg::Exact => Method::Exact,
                MethodArg::Both => Method::Both,
            };
            let report = HullReport::build(parse_ring(ring)?, *n, method, *ell, budget)?;
            Ok(Output {
                json: report.to_json()?,
                table: report.to_table(),
                csv: report.to_csv()?,
                failed: false,
            })
        }
        Command::Average { ring, n, check_exact } => average(ring, *n, *check_exact, budget),
        Command::Count { ring, n, tau } => count(ring, *n, *tau),
        Command::Verify { grid } => verify(grid, cli.budget, cli.seed),
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CosetView {
    rep: u32,
    elements: Vec<u32>,
    divisor: u64,
    symmetric: bool,
    partner_rep: Option<u32>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CosetsView {
    n: u64,
    q: u64,
    omega: usize,
    self_reciprocal_degree: u64,
    in_nq: bool,
    cosets: Vec<CosetView>,
}

fn cosets(n: u64, q: u64) -> Result<Output, CliError> {
    let atlas = CosetAtlas::build(n, q)?;
    let view = CosetsView {
        n,
        q,
        omega: atlas.omega,
        self_reciprocal_degree: atlas.self_reciprocal_degree(),
        in_nq: in_nq(n, q)?,
        cosets: atlas
            .cosets
            .iter()
            .map(|c| CosetView {
                rep: c.rep,
                elements: c.elements.clone(),
                divisor: c.divisor,
                symmetric: c.symmetric,
                partner_rep: c.partner_rep,
            })
            .collect(),
    };
    let list = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let mut table = format!("n = {n} q = {q} omega = {}\n", atlas.omega);
    for c in &view.cosets {
        let kind = match c.partner_rep {
            None => "symmetric".to_string(),
            Some(p) => format!("paired with C_{p}"),
        };
        let _ = writeln!(table, "C_{} = {{{}}}  divisor {}  {kind}", c.rep, list(&c.elements), c.divisor);
    }
    let csv = csv_rows(
        &["rep", "size", "divisor", "symmetric", "partner", "elements"],
        view.cosets.iter().map(|c| {
            vec![
                c.rep.to_string(),
                c.elements.len().to_string(),
                c.divisor.to_string(),
                c.symmetric.to_string(),
                c.partner_rep.map(|p| p.to_string()).unwrap_or_default(),
                list(&c.elements),
            ]
        }),
    )?;
    Ok(Output {
        json: json(&view)?,
        table,
        csv,
        failed: false,
    })
}

fn factor(n: u64, ring: &str) -> Result<Output, CliError> {
    let spec = parse_ring(ring)?;
    let gr = GaloisRing::new(spec.p, spec.a, spec.r)?;
    let atlas = CosetAtlas::build(n, spec.q())?;
    let export = OmegaTable::build(&gr, &atlas)?.export();
    let coeffs = |c: &Coefficients| match c {
        Coefficients::Flat(v) => v.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
        Coefficients::Nested(v) => v.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(" "),
    };
    let mut table = format!("X^{n} - 1 over GR({}^{}, {})\n", spec.p, spec.a, spec.r);
    for f in &export.factors {
        let _ = writeln!(table, "C_{:<4} degree {:<3} {}", f.coset_rep, f.degree, coeffs(&f.coefficients));
    }
    let csv = csv_rows(
        &["cosetRep", "divisor", "degree", "coefficients"],
        export.factors.iter().map(|f| {
            vec![
                f.coset_rep.to_string(),
                f.divisor.to_string(),
                f.degree.to_string(),
                coeffs(&f.coefficients),
            ]
        }),
    )?;
    Ok(Output {
        json: json(&export)?,
        table,
        csv,
        failed: false,
    })
}

fn read_inline_or_file(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if !arg.trim_start().starts_with(['[', '{']) && path.is_file() {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(arg.to_string())
    }
}

fn code(ring: &str, multiset: &str, n: Option<u64>, ell: u32) -> Result<Output, CliError> {
    let spec = parse_ring(ring)?;
    let input = parse_multiset_text(&read_inline_or_file(multiset)?)?;
    let n = n
        .or(input.n)
        .ok_or_else(|| CliError::Usage("--n is required when the multiset does not name its length".into()))?;
    let space = CodeSpace::new(spec, n)?;
    let m = input.resolve(Arc::clone(space.atlas()), spec.s)?;
    let report = space.code(m)?.report(ell)?;
    let value = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    let mut table = String::new();
    let mut rows = Vec::new();
    if let serde_json::Value::Object(map) = &value {
        for (k, v) in map {
            let _ = writeln!(table, "{k:<18} {v}");
            rows.push(vec![k.clone(), v.to_string()]);
        }
    }
    Ok(Output {
        json: json(&report)?,
        table,
        csv: csv_rows(&["field", "value"], rows)?,
        failed: false,
    })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct ExactCheck {
    codes: String,
    average: RationalRepr,
    matches: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct AverageView {
    ring: chainhull::ringpoly::RingSpec,
    n: u64,
    average: RationalRepr,
    #[serde(rename = "Bnq")]
    bnq: u64,
    in_nq: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    lower: Option<RationalRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    upper: Option<RationalRepr>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<ExactCheck>,
}

fn average(ring: &str, n: u64, check_exact: bool, budget: u128) -> Result<Output, CliError> {
    let spec = parse_ring(ring)?;
    let setting = HullSetting::new(spec, n)?;
    let e = average_dim(&setting)?;
    let self_reciprocal = in_nq(n, setting.q)?;
    let band = (!self_reciprocal).then(|| bounds(n, spec.s));
    let exact = if check_exact {
        let tally = exact_enumeration(&setting, 0, budget)?;
        let avg = tally.average();
        Some(ExactCheck {
            codes: tally.codes.to_string(),
            matches: avg == e,
            average: (&avg).into(),
        })
    } else {
        None
    };
    let failed = exact.as_ref().is_some_and(|x| !x.matches);
    let view = AverageView {
        ring: spec,
        n,
        average: (&e).into(),
        bnq: bnq(&setting),
        in_nq: self_reciprocal,
        lower: band.as_ref().map(|b| (&b.lower).into()),
        upper: band.as_ref().map(|b| (&b.upper).into()),
        exact,
    };
    let mut table = format!("E = {e}\nB_nq = {}\n", view.bnq);
    if let Some(b) = &band {
        let _ = writeln!(table, "bounds: {} <= E <= {}", b.lower, b.upper);
    }
    if let Some(x) = &view.exact {
        let verdict = if x.matches { "pass" } else { "FAIL" };
        let _ = writeln!(table, "exact over {} codes: {}/{} {verdict}", x.codes, x.average.num, x.average.den);
    }
    let csv = csv_rows(
        &["ring", "n", "num", "den", "Bnq", "exact_check"],
        [vec![
            spec.to_string(),
            n.to_string(),
            view.average.num.clone(),
            view.average.den.clone(),
            view.bnq.to_string(),
            view.exact.as_ref().map(|x| x.matches.to_string()).unwrap_or_default(),
        ]],
    )?;
    Ok(Output {
        json: json(&view)?,
        table,
        csv,
        failed,
    })
}

#[derive(Serialize)]
struct CountView {
    ring: chainhull::ringpoly::RingSpec,
    n: u64,
    tau: u64,
    count: String,
}

fn count(ring: &str, n: u64, tau: u64) -> Result<Output, CliError> {
    let spec = parse_ring(ring)?;
    let c = count_hulls(&HullSetting::new(spec, n)?, tau)?;
    let view = CountView {
        ring: spec,
        n,
        tau,
        count: c.to_string(),
    };
    Ok(Output {
        json: json(&view)?,
        table: format!("codes of length {n} with hull q-dimension {tau}: {c}\n"),
        csv: csv_rows(&["ring", "n", "tau", "count"], [vec![spec.to_string(), n.to_string(), tau.to_string(), view.count.clone()]])?,
        failed: false,
    })
}

#[derive(Serialize)]
struct VerifyView {
    passed: bool,
    cases: Vec<CaseSummary>,
}

fn verify(grid: &Path, budget: Option<u128>, seed: u64) -> Result<Output, CliError> {
    let cases = parse_grid(&std::fs::read_to_string(grid)?)?;
    let scan_budget = budget.map_or(DEFAULT_BRUTE_BUDGET, |b| b.min(u64::MAX as u128) as u64);
    let mut out = Vec::new();
    for case in &cases {
        for &n in &case.n {
            for &ell in &case.ell {
                out.push(verify_case(case.spec, n, ell, scan_budget, seed)?);
            }
        }
    }
    let passed = out.iter().all(|c| c.mismatches.is_empty());
    let mut table = String::new();
    for c in &out {
        let verdict = if c.mismatches.is_empty() { "ok" } else { "MISMATCH" };
        let _ = writeln!(table, "{} n={} ell={} codes={} {verdict}", c.ring, c.n, c.ell, c.codes);
        for m in &c.mismatches {
            let _ = writeln!(table, "  {}", serde_json::to_string(m).unwrap_or_default());
        }
    }
    let csv = csv_rows(
        &["ring", "n", "ell", "codes", "mismatches"],
        out.iter().map(|c| {
            vec![
                c.ring.to_string(),
                c.n.to_string(),
                c.ell.to_string(),
                c.codes.to_string(),
                c.mismatches.len().to_string(),
            ]
        }),
    )?;
    let view = VerifyView { passed, cases: out };
    Ok(Output {
        json: json(&view)?,
        table,
        csv,
        failed: !passed,
    })
}
