use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use asmkit::algebra::{rational_to_string, BigInt, BigRational, Cyclo6, Field, Poly, Ring};
use asmkit::asm::{census, check_cap, enumerate_class, AsmClass, Statistic};
use asmkit::formulas::{uturn_divisor, z_ik, z_o_p, z_o_pf, z_p, z_u_det, z_u_p};
use asmkit::ice::{enumerate_states, partition_sum, Boundary, SpectralAssignment, DEFAULT_STATE_CAP};
use asmkit::refined::{asm_refined, asm_total, au_first, au_refined, av_refined, av_total};
use asmkit::sampling::{rational, rationals, resample, rng_for};
use asmkit::verify::{run_suite, CheckReport, Suite};

use crate::args::{BoundaryArg, Crossing, EnumerateArgs, PartitionArgs, RefineArgs, TableArgs, VerifyArgs};
use crate::cache::{Cache, CacheKey};
use crate::output::{text_table, yes_no, Count, Output};
use crate::{Cli, CliError, Command, SCHEMA};

type Result<T> = std::result::Result<T, CliError>;

pub fn dispatch(cli: &Cli) -> Result<Output> {
    let cache = Cache::open(cli.cache_dir.as_deref())?;
    match &cli.command {
        Command::Enumerate(a) => enumerate(a, &cache),
        Command::Refine(a) => refine(a, &cache),
        Command::Partition(a) => partition(a),
        Command::Verify(a) => verify(a),
        Command::Table(a) => table(a, &cache),
    }
}

fn size(n: u64) -> Result<usize> {
    usize::try_from(n).map_err(|_| CliError::Usage(format!("size {n} is too large")))
}

fn boundary_of(b: BoundaryArg, n: usize) -> Boundary {
    match b {
        BoundaryArg::Dwbc => Boundary::Dwbc(n),
        BoundaryArg::Uturn => Boundary::UTurn(n),
        BoundaryArg::Os => Boundary::Os(n),
    }
}

fn q(v: &BigInt) -> BigRational {
    BigRational::from(v.clone())
}

fn parse_count(s: &str) -> Result<BigInt> {
    s.parse()
        .map_err(|_| CliError::Cache(format!("`{s}` is not a decimal count")))
}

// ---- enumerate ----

#[derive(Serialize)]
struct EnumerateDoc<'a> {
    schema: &'a str,
    command: &'a str,
    kind: &'a str,
    target: &'a str,
    n: usize,
    count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<String>>,
}

fn enumerate(args: &EnumerateArgs, cache: &Cache) -> Result<Output> {
    let n = size(args.n)?;
    let (kind, target, count, members) = match (args.class, args.boundary) {
        (Some(c), _) => {
            let class = AsmClass::from(c);
            check_cap(class, n)?;
            if args.list {
                let all = enumerate_class(class, n)?;
                let listed: Vec<String> = all.iter().map(|m| m.to_signed_digits()).collect();
                ("class", class.name(), all.len().to_string(), Some(listed))
            } else {
                let key = CacheKey::new("enumerate", class.name(), args.n, "none");
                let count: String =
                    cache.get_or_compute(&key, || Ok(census(class, n)?.total().to_string()))?;
                ("class", class.name(), count, None)
            }
        }
        (None, Some(b)) => {
            let boundary = boundary_of(b, n);
            if args.list {
                let all = enumerate_states(boundary, DEFAULT_STATE_CAP)?;
                let listed: Vec<String> = all.iter().map(|s| s.dump()).collect();
                ("boundary", boundary.name(), all.len().to_string(), Some(listed))
            } else {
                let key = CacheKey::new("enumerate", boundary.name(), args.n, "none");
                let count: String = cache.get_or_compute(&key, || {
                    Ok(enumerate_states(boundary, DEFAULT_STATE_CAP)?.len().to_string())
                })?;
                ("boundary", boundary.name(), count, None)
            }
        }
        (None, None) => return Err(CliError::Usage("give --class or --boundary".into())),
    };

    let mut text = format!("{target} n={n}: {count}\n");
    let (header, rows): (&[&str], Vec<Vec<String>>) = match &members {
        Some(list) => {
            for m in list {
                text += m;
                text.push('\n');
            }
            (
                &["index", "member"],
                list.iter()
                    .enumerate()
                    .map(|(i, m)| vec![(i + 1).to_string(), m.clone()])
                    .collect(),
            )
        }
        None => (
            &["kind", "target", "n", "count"],
            vec![vec![kind.into(), target.into(), n.to_string(), count.clone()]],
        ),
    };
    let doc = EnumerateDoc {
        schema: SCHEMA,
        command: "enumerate",
        kind,
        target,
        n,
        count,
        members,
    };
    Output::new(&doc, header, rows, text, true)
}

// ---- refine ----

/// Multiplicity of members with `k` entries −1 and `l` upward U-turns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Cell {
    k: usize,
    l: usize,
    count: String,
}

/// `rows[r-1]` holds the cells of members whose statistic sits in row r.
fn row_cells(class: AsmClass, n: usize, statistic: Statistic) -> Result<Vec<Vec<Cell>>> {
    check_cap(class, n)?;
    let c = census(class, n)?;
    let mut rows: Vec<BTreeMap<(usize, usize), u64>> = vec![BTreeMap::new(); c.rows];
    for (s, &m) in &c.counts {
        let r = match statistic {
            Statistic::FirstColumn => s.r,
            Statistic::LastColumn => s.r_last.ok_or_else(|| {
                CliError::Usage(format!(
                    "the last column of a {} can hold several nonzero entries",
                    class.name()
                ))
            })?,
        };
        *rows[r - 1].entry((s.k, s.l.unwrap_or(0))).or_default() += m;
    }
    Ok(rows
        .into_iter()
        .map(|m| {
            m.into_iter()
                .map(|((k, l), count)| Cell {
                    k,
                    l,
                    count: count.to_string(),
                })
                .collect()
        })
        .collect())
}

/// Sum of the cells as a polynomial in y, with x substituted.
fn weigh(cells: &[Cell], class: AsmClass, n: usize, x: Option<&BigRational>) -> Result<Poly<BigRational>> {
    let mut p = Poly::zero();
    for c in cells {
        let mut w = q(&parse_count(&c.count)?);
        if let Some(x) = x {
            // a VSASM's −1 entries are n on the centre column plus a mirrored pair for each one to its left
            let e = if class == AsmClass::Vsasm {
                (c.k - n) / 2
            } else {
                c.k
            };
            w *= x.pow_u(e as u64);
        }
        p = p + Poly::monomial(w, c.l);
    }
    Ok(p)
}

/// Closed-form refined counts, where one is known for the class and column.
fn refined_formula(
    class: AsmClass,
    n: usize,
    statistic: Statistic,
) -> Result<Option<Vec<Poly<BigRational>>>> {
    let konst = |v: BigRational| Poly::constant(v);
    Ok(match (class, statistic) {
        // left-right reflection swaps the two boundary columns
        (AsmClass::Asm, _) => Some(
            (1..=n)
                .map(|r| asm_refined(n, r).map(|v| konst(q(&v))))
                .collect::<asmkit::Result<_>>()?,
        ),
        (AsmClass::Vsasm, _) | (AsmClass::Osasm, Statistic::FirstColumn) => {
            let mut rows: Vec<_> = (1..=2 * n)
                .map(|r| av_refined(n, r).map(konst))
                .collect::<asmkit::Result<_>>()?;
            if class == AsmClass::Vsasm {
                rows.push(Poly::zero());
            }
            Some(rows)
        }
        (AsmClass::Uasm, Statistic::FirstColumn) => Some(
            (1..=2 * n)
                .map(|r| au_refined(n, r))
                .collect::<asmkit::Result<_>>()?,
        ),
        _ => None,
    })
}

fn at_y(p: Poly<BigRational>, y: Option<&BigRational>) -> Poly<BigRational> {
    match y {
        Some(y) => Poly::constant(p.eval(y)),
        None => p,
    }
}

#[derive(Serialize)]
struct RefineDoc<'a> {
    schema: &'a str,
    command: &'a str,
    class: &'a str,
    n: usize,
    shape: [usize; 2],
    statistic: &'a str,
    y: Option<String>,
    x: Option<String>,
    counts: Vec<Count>,
    total: Count,
    formula: Option<Vec<Count>>,
    agrees: Option<bool>,
}

fn refine(args: &RefineArgs, cache: &Cache) -> Result<Output> {
    let class = AsmClass::from(args.class);
    let statistic = Statistic::from(args.statistic);
    let n = size(args.n)?;
    if args.y.is_some() && class != AsmClass::Uasm {
        return Err(CliError::Usage("--y applies to the uasm class only".into()));
    }
    check_cap(class, n)?;
    let key = CacheKey::new("refine", class.name(), args.n, statistic.name());
    let cells: Vec<Vec<Cell>> = cache.get_or_compute(&key, || row_cells(class, n, statistic))?;

    let y = args.y.as_ref();
    let as_poly = class == AsmClass::Uasm && y.is_none();
    let counts: Vec<Poly<BigRational>> = cells
        .iter()
        .map(|c| weigh(c, class, n, args.x.as_ref()).map(|p| at_y(p, y)))
        .collect::<Result<_>>()?;
    let total = counts.iter().cloned().fold(Poly::zero(), |a, b| a + b);

    let x_is_one = args.x.as_ref().is_none_or(|x| x.is_one());
    let formula = if x_is_one {
        refined_formula(class, n, statistic)?
            .map(|rows| rows.into_iter().map(|p| at_y(p, y)).collect::<Vec<_>>())
    } else {
        None
    };
    let agrees = formula.as_ref().map(|f| *f == counts);

    let header = ["r", "count", "formula"];
    let rows: Vec<Vec<String>> = counts
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let f = formula
                .as_ref()
                .map_or(String::new(), |f| Count::of(&f[i], as_poly).cell());
            vec![(i + 1).to_string(), Count::of(c, as_poly).cell(), f]
        })
        .collect();
    let mut text = format!("{} n={n} {}\n", class.name(), statistic.name());
    text += &text_table(&header, &rows);
    text += &format!("total  {}\n", Count::of(&total, as_poly).cell());
    if let Some(a) = agrees {
        text += &format!("formula agrees: {}\n", yes_no(a));
    }

    let (r, c) = class.shape(n);
    let doc = RefineDoc {
        schema: SCHEMA,
        command: "refine",
        class: class.name(),
        n,
        shape: [r, c],
        statistic: statistic.name(),
        y: y.map(rational_to_string),
        x: args.x.as_ref().map(rational_to_string),
        counts: counts.iter().map(|p| Count::of(p, as_poly)).collect(),
        total: Count::of(&total, as_poly),
        formula: formula
            .as_ref()
            .map(|f| f.iter().map(|p| Count::of(p, as_poly)).collect()),
        agrees,
    };
    Output::new(&doc, &header, rows, text, agrees != Some(false))
}

// ---- partition ----

#[derive(Serialize)]
struct FormulaValue {
    name: &'static str,
    value: String,
    agrees: bool,
}

#[derive(Serialize)]
struct PartitionDoc<'a> {
    schema: &'a str,
    command: &'a str,
    boundary: &'a str,
    n: usize,
    a: String,
    b: Option<String>,
    u: Vec<String>,
    seed: Option<u64>,
    state_sum: String,
    formulas: Vec<FormulaValue>,
    agrees: bool,
}

struct Evaluation {
    state_sum: String,
    formulas: Vec<FormulaValue>,
}

fn compare<F: Ring>(z: &F, named: Vec<(&'static str, F)>) -> Evaluation {
    Evaluation {
        state_sum: z.to_string(),
        formulas: named
            .into_iter()
            .map(|(name, v)| FormulaValue {
                name,
                agrees: v == *z,
                value: v.to_string(),
            })
            .collect(),
    }
}

fn closed_forms<F: Field>(
    boundary: Boundary,
    p: &SpectralAssignment<F>,
) -> asmkit::Result<Vec<(&'static str, F)>> {
    Ok(match boundary {
        Boundary::Dwbc(_) => vec![("determinant", z_ik(p)?)],
        Boundary::UTurn(_) => vec![("uturn-determinant", z_u_det(p)?)],
        Boundary::Os(_) => vec![("pfaffian", z_o_pf(&p.a, &p.u)?)],
    })
}

fn evaluate(
    boundary: Boundary,
    a: &Crossing,
    u: &[BigRational],
    b: Option<&BigRational>,
) -> asmkit::Result<Evaluation> {
    match a {
        Crossing::Rational(a) => {
            let p = SpectralAssignment::unified(a.clone(), b.cloned(), u.to_vec());
            let z = partition_sum(boundary, &p)?;
            Ok(compare(&z, closed_forms(boundary, &p)?))
        }
        Crossing::Zeta6 => {
            let uc: Vec<Cyclo6> = u.iter().cloned().map(Cyclo6::rational).collect();
            let p = SpectralAssignment::unified(Cyclo6::a(), b.cloned().map(Cyclo6::rational), uc.clone());
            let z = partition_sum(boundary, &p)?;
            let mut named = closed_forms(boundary, &p)?;
            named.push(match boundary {
                Boundary::Dwbc(_) => ("zeta6-determinant", z_p(&uc)?),
                Boundary::UTurn(_) => ("zeta6-determinant", z_u_p(&uc)? * uturn_divisor(&p)?),
                Boundary::Os(_) => ("zeta6-determinant", z_o_p(&uc)?),
            });
            Ok(compare(&z, named))
        }
    }
}

fn partition(args: &PartitionArgs) -> Result<Output> {
    let n = size(args.n)?;
    let boundary = boundary_of(args.boundary, n);
    let uturn = args.boundary == BoundaryArg::Uturn;
    if args.b.is_some() && !uturn {
        return Err(CliError::Usage("--b applies to the uturn boundary only".into()));
    }
    if let Some(u) = &args.u {
        if u.len() != 2 * n {
            return Err(CliError::Usage(format!(
                "--u needs {} values, got {}",
                2 * n,
                u.len()
            )));
        }
    }

    let (u, b, eval, seeded) = match &args.u {
        Some(u) => {
            if uturn && args.b.is_none() {
                return Err(CliError::Usage("--u on the uturn boundary also needs --b".into()));
            }
            let eval = evaluate(boundary, &args.a, u, args.b.as_ref()).map_err(pole_is_usage)?;
            (u.clone(), args.b.clone(), eval, false)
        }
        None => {
            let mut rng = rng_for(args.seed, &format!("partition-{}", boundary.name()), n);
            let (u, b, eval) = resample(&mut rng, |rng| {
                let u = rationals(rng, 2 * n);
                let b = if uturn {
                    Some(args.b.clone().unwrap_or_else(|| rational(rng)))
                } else {
                    None
                };
                let eval = evaluate(boundary, &args.a, &u, b.as_ref())?;
                Ok((u, b, eval))
            })?;
            (u, b, eval, true)
        }
    };

    let agrees = eval.formulas.iter().all(|f| f.agrees);
    let a = match &args.a {
        Crossing::Zeta6 => "zeta6".to_string(),
        Crossing::Rational(a) => rational_to_string(a),
    };
    let u: Vec<String> = u.iter().map(rational_to_string).collect();
    let b = b.as_ref().map(rational_to_string);

    let header = ["quantity", "value", "agrees"];
    let mut rows = vec![vec![
        "state-sum".to_string(),
        eval.state_sum.clone(),
        String::new(),
    ]];
    rows.extend(
        eval.formulas
            .iter()
            .map(|f| vec![f.name.to_string(), f.value.clone(), yes_no(f.agrees)]),
    );
    let mut text = format!("{} n={n} a={a} u=({})", boundary.name(), u.join(", "));
    if let Some(b) = &b {
        text += &format!(" b={b}");
    }
    text.push('\n');
    text += &text_table(&header, &rows);

    let doc = PartitionDoc {
        schema: SCHEMA,
        command: "partition",
        boundary: boundary.name(),
        n,
        a,
        b,
        u,
        seed: seeded.then_some(args.seed),
        state_sum: eval.state_sum,
        formulas: eval.formulas,
        agrees,
    };
    Output::new(&doc, &header, rows, text, agrees)
}

/// A pole at user-supplied parameters is a bad argument, not a crash.
fn pole_is_usage(e: asmkit::Error) -> CliError {
    match e {
        asmkit::Error::Pole(_) | asmkit::Error::DivisionByZero => {
            CliError::Usage(format!("the parameters hit a pole: {e}"))
        }
        other => other.into(),
    }
}

// ---- verify ----

#[derive(Serialize)]
struct VerifyDoc<'a> {
    schema: &'a str,
    command: &'a str,
    suite: &'a str,
    max_n: u64,
    seed: u64,
    samples: u64,
    passed: usize,
    failed: usize,
    reports: Vec<CheckReport>,
}

fn verify(args: &VerifyArgs) -> Result<Output> {
    let suite = Suite::from(args.suite);
    let reports = run_suite(suite, size(args.max_n)?, size(args.samples)?, args.seed)?;
    let passed = reports.iter().filter(|r| r.passed()).count();
    let failed = reports.len() - passed;

    let header = [
        "suite", "tag", "n_min", "n_max", "samples", "verdict", "witness", "note",
    ];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.suite.clone(),
                r.tag.clone(),
                r.n_range[0].to_string(),
                r.n_range[1].to_string(),
                r.samples.to_string(),
                if r.passed() { "pass" } else { "fail" }.to_string(),
                r.witness.clone().unwrap_or_default(),
                r.note.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let mut text = String::new();
    for r in &reports {
        let verdict = if r.passed() { "PASS" } else { "FAIL" };
        text += &format!(
            "{verdict}  {:<10} {:<22} n={}..{}",
            r.suite, r.tag, r.n_range[0], r.n_range[1]
        );
        if let Some(w) = &r.witness {
            text += &format!("  witness: {w}");
        }
        text.push('\n');
    }
    text += &format!("{passed} passed, {failed} failed\n");

    let doc = VerifyDoc {
        schema: SCHEMA,
        command: "verify",
        suite: suite.name(),
        max_n: args.max_n,
        seed: args.seed,
        samples: args.samples,
        passed,
        failed,
        reports,
    };
    Output::new(&doc, &header, rows, text, failed == 0)
}

// ---- table ----

#[derive(Serialize)]
struct TableRow {
    n: usize,
    shape: [usize; 2],
    enumerated: Count,
    formula: Count,
    agrees: bool,
}

#[derive(Serialize)]
struct TableDoc<'a> {
    schema: &'a str,
    command: &'a str,
    class: &'a str,
    max_n: u64,
    y: Option<String>,
    rows: Vec<TableRow>,
    agrees: bool,
}

/// Enumerated total as coefficients of a polynomial in y.
fn enumerated_total(class: AsmClass, n: usize) -> Result<Vec<String>> {
    let c = census(class, n)?;
    let mut by_l: BTreeMap<usize, u64> = BTreeMap::new();
    for (s, &m) in &c.counts {
        *by_l.entry(s.l.unwrap_or(0)).or_default() += m;
    }
    let deg = by_l.keys().next_back().copied().unwrap_or(0);
    let mut coeffs = vec!["0".to_string(); deg + 1];
    for (l, m) in by_l {
        coeffs[l] = m.to_string();
    }
    Ok(coeffs)
}

fn formula_total(class: AsmClass, n: usize) -> Poly<BigRational> {
    match class {
        AsmClass::Asm => Poly::constant(q(&asm_total(n))),
        // refined OSASM and VSASM counts agree row by row, hence in total
        AsmClass::Vsasm | AsmClass::Osasm => Poly::constant(q(&av_total(n))),
        AsmClass::Uasm => au_first(n).map(q),
    }
}

fn table(args: &TableArgs, cache: &Cache) -> Result<Output> {
    let class = AsmClass::from(args.class);
    if args.y.is_some() && class != AsmClass::Uasm {
        return Err(CliError::Usage("--y applies to the uasm class only".into()));
    }
    let max_n = size(args.max_n)?;
    check_cap(class, max_n)?;
    let y = args.y.as_ref();
    let as_poly = class == AsmClass::Uasm && y.is_none();

    let mut rows = Vec::new();
    for n in 1..=max_n {
        let key = CacheKey::new("table", class.name(), n as u64, "none");
        let coeffs: Vec<String> = cache.get_or_compute(&key, || enumerated_total(class, n))?;
        let e = Poly::new(
            coeffs
                .iter()
                .map(|c| parse_count(c).map(|v| q(&v)))
                .collect::<Result<_>>()?,
        );
        let e = at_y(e, y);
        let f = at_y(formula_total(class, n), y);
        let (r, c) = class.shape(n);
        rows.push(TableRow {
            n,
            shape: [r, c],
            agrees: e == f,
            enumerated: Count::of(&e, as_poly),
            formula: Count::of(&f, as_poly),
        });
    }
    let agrees = rows.iter().all(|r| r.agrees);

    let header = ["n", "shape", "enumerated", "formula", "agrees"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                format!("{}x{}", r.shape[0], r.shape[1]),
                r.enumerated.cell(),
                r.formula.cell(),
                yes_no(r.agrees),
            ]
        })
        .collect();
    let text = format!("{} totals\n", class.name()) + &text_table(&header, &cells);

    let doc = TableDoc {
        schema: SCHEMA,
        command: "table",
        class: class.name(),
        max_n: args.max_n,
        y: y.map(rational_to_string),
        rows,
        agrees,
    };
    Output::new(&doc, &header, cells, text, agrees)
}
