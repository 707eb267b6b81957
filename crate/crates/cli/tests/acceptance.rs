//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails. Every comparison is exact.

use std::process::{Command, ExitCode};
use std::time::Instant;

use asmkit::algebra::{BigInt, BigRational, Poly, Ring};
use asmkit::asm::{census, enumerate_class, enumerate_vsasm_direct, AsmClass, Statistic};
use asmkit::formulas::z_ik;
use asmkit::ice::{enumerate_states, partition_sum_brute, Boundary, SpectralAssignment, DEFAULT_STATE_CAP};
use asmkit::refined::{
    asm_refined, asm_refined_ratio, asm_total, au_refined, av_total, check_identity, IdentityId,
};
use asmkit::sampling::{rational, rationals, resample, rng_for};
use asmkit::verify::{jobs, Suite};
use asmkit_cli::{run_args, EXIT_OK};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

const SEED: u64 = 42;
const SAMPLES: usize = 20;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn core<T>(r: asmkit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn rows(class: AsmClass, n: usize) -> Result<Vec<Poly<BigInt>>, String> {
    Ok(core(core(census(class, n))?.refined(Statistic::FirstColumn))?.counts)
}

fn constants(class: AsmClass, n: usize) -> Result<Vec<BigInt>, String> {
    let c = core(census(class, n))?;
    core(core(c.refined(Statistic::FirstColumn))?.constants())
}

fn cli_json(args: &[&str]) -> Result<serde_json::Value, String> {
    let out = run_args(std::iter::once("asmkit").chain(args.iter().copied()));
    if out.code != EXIT_OK {
        return Err(format!("{args:?} exited {}: {}", out.code, out.stderr));
    }
    serde_json::from_str(&out.stdout).map_err(|e| e.to_string())
}

fn cli_counts(args: &[&str]) -> Result<Vec<String>, String> {
    let v = cli_json(args)?;
    if v["agrees"] != true {
        return Err(format!("{args:?}: formula disagrees"));
    }
    Ok(v["counts"]
        .as_array()
        .ok_or("counts missing")?
        .iter()
        .map(|c| c.as_str().unwrap_or("?").to_string())
        .collect())
}

/// Run named verification jobs and require a pass over n = 1..=n_max.
fn run_jobs(tags: &[(&str, usize)]) -> Check {
    let all: Vec<_> = [Suite::Formulas, Suite::Functions]
        .iter()
        .flat_map(|s| jobs(*s))
        .collect();
    for &(tag, n_max) in tags {
        let job = all
            .iter()
            .find(|j| j.tag() == tag)
            .ok_or(format!("no job {tag}"))?;
        let r = core(job.run(n_max, SAMPLES, SEED))?;
        ensure(r.passed(), || format!("{tag} failed: {:?}", r.witness))?;
        ensure(r.n_range == [1, n_max], || {
            format!("{tag} covered {:?}", r.n_range)
        })?;
    }
    Ok(())
}

fn totals() -> Check {
    let want = ints(&[1, 2, 7, 42, 429, 7436]);
    for (i, w) in want.iter().enumerate() {
        let n = i + 1;
        let e = BigInt::from(core(census(AsmClass::Asm, n))?.total());
        ensure(e == *w, || format!("enumerated A({n}) = {e}"))?;
        ensure(asm_total(n) == *w, || {
            format!("product formula A({n}) = {}", asm_total(n))
        })?;
    }
    Ok(())
}

fn refined_asm() -> Check {
    let listed = ints(&[7, 14, 14, 7]);
    ensure(constants(AsmClass::Asm, 4)? == listed, || {
        "A(4, r) enumeration".into()
    })?;
    let a3 = BigRational::from(asm_total(3));
    for (r, w) in listed.iter().enumerate() {
        let v = core(asm_refined_ratio(4, r + 1))? * a3.clone();
        ensure(v == BigRational::from(w.clone()), || {
            format!("ratio formula at r = {}: {v}", r + 1)
        })?;
    }
    ensure(
        cli_counts(&["refine", "--class", "asm", "--n", "4"])? == ["7", "14", "14", "7"],
        || "CLI refine asm 4".into(),
    )?;
    for n in 1..=6 {
        let e = constants(AsmClass::Asm, n)?;
        for r in 1..=n {
            let f = core(asm_refined(n, r))?;
            ensure(f == e[r - 1], || {
                format!("A({n}, {r}): formula {f}, enumerated {}", e[r - 1])
            })?;
        }
    }
    Ok(())
}

fn uasm_table() -> Check {
    ensure(
        cli_counts(&["refine", "--class", "uasm", "--n", "2", "--y", "1"])? == ["2", "4", "4", "2"],
        || "A_U(4, r; 1, 1)".into(),
    )?;
    let one_plus_y = Poly::new(ints(&[1, 1]));
    let total: Poly<BigInt> = rows(AsmClass::Uasm, 1)?
        .into_iter()
        .fold(Poly::zero(), |a, b| a + b);
    ensure(total == one_plus_y, || format!("A_U(2; 1, y) = {total}"))?;
    for n in 1..=3 {
        let e = rows(AsmClass::Uasm, n)?;
        for r in 1..=2 * n {
            let f = core(au_refined(n, r))?;
            let er = e[r - 1].map(|c| BigRational::from(c.clone()));
            ensure(f == er, || {
                format!("A_U({}, {r}): formula {f}, enumerated {er}", 2 * n)
            })?;
        }
    }
    Ok(())
}

fn vsasm() -> Check {
    let want = ints(&[1, 3, 26, 646]);
    for (i, w) in want.iter().enumerate() {
        let n = i + 1;
        ensure(av_total(n) == *w, || {
            format!("formula A_V({}) = {}", 2 * n + 1, av_total(n))
        })?;
        // through the U-turn bijection, and by a direct search as an independent check
        let via = core(enumerate_class(AsmClass::Vsasm, n))?;
        let direct = core(enumerate_vsasm_direct(n))?;
        ensure(BigInt::from(via.len()) == *w, || {
            format!("bijection count {} at order {}", via.len(), 2 * n + 1)
        })?;
        ensure(via.len() == direct.len(), || {
            format!("direct count {} at order {}", direct.len(), 2 * n + 1)
        })?;
        let mut a: Vec<String> = via.iter().map(|m| m.to_signed_digits()).collect();
        let mut b: Vec<String> = direct.iter().map(|m| m.to_signed_digits()).collect();
        a.sort();
        b.sort();
        ensure(a == b, || format!("member sets differ at order {}", 2 * n + 1))?;
    }
    Ok(())
}

fn kutin_yuen() -> Check {
    for n in 1..=4 {
        let o = constants(AsmClass::Osasm, n)?;
        let v = constants(AsmClass::Vsasm, n)?;
        ensure(o[..] == v[..2 * n], || format!("2n = {}: {o:?} vs {v:?}", 2 * n))?;
        if n == 2 {
            ensure(o == ints(&[0, 1, 1, 1]), || format!("2n = 4 gives {o:?}"))?;
        }
    }
    Ok(())
}

fn dwbc_oracle() -> Check {
    // an independent sampling stream on top of the library's own jobs
    for n in 1..=4 {
        let mut rng = rng_for(SEED, "acceptance-dwbc", n);
        for _ in 0..SAMPLES {
            let (z, brute) = core(resample(&mut rng, |rng| {
                let a = rational(rng);
                let p = SpectralAssignment::dwbc(a, rationals(rng, n), rationals(rng, n));
                Ok((z_ik(&p)?, partition_sum_brute(Boundary::Dwbc(n), &p)?))
            }))?;
            ensure(z == brute, || {
                format!("n = {n}: determinant {z}, state sum {brute}")
            })?;
        }
    }
    run_jobs(&[("Z_IK_STATESUM", 4), ("DWBC_RECURRENCE", 4)])
}

fn zeta6_forms() -> Check {
    run_jobs(&[
        ("Z_P_EQ_Z_IK", 4),
        ("Z_U_P_EQ_Z_U_PRIME", 3),
        ("Z_O_P_EQ_Z_O_PF", 3),
        ("Z_O_PF_STATESUM", 3),
        ("Z_O_EQ_Z_U_PRIME", 3),
    ])
}

fn uturn_determinant() -> Check {
    let states = core(enumerate_states(Boundary::UTurn(1), DEFAULT_STATE_CAP))?;
    ensure(states.len() == 2, || {
        format!("U-turn n = 1 has {} states", states.len())
    })?;
    run_jobs(&[("UTURN_TWO_STATES", 1), ("Z_U_DET_STATESUM", 3)])
}

fn function_battery() -> Check {
    run_jobs(&[
        ("PHI_NORMALIZED", 12),
        ("BINOMIAL_IDENTITY", 12),
        ("F_BATTERY", 4),
        ("F_U_BATTERY", 4),
        ("F_O_BATTERY", 4),
        ("F_PROPORTIONAL", 4),
        ("F_U_PROPORTIONAL", 3),
        ("F_O_PROPORTIONAL", 3),
        ("ROTATION_F", 3),
        ("ROTATION_F_U", 3),
        ("ROTATION_F_O", 3),
    ])
}

fn identity_battery() -> Check {
    for id in IdentityId::ALL {
        let r = core(check_identity(id, id.n_cap(), SAMPLES, SEED))?;
        ensure(r.verdict == asmkit::refined::Verdict::Pass, || {
            format!("{id} failed: {:?}", r.witness)
        })?;
        ensure(r.n_range[1] == id.n_cap(), || {
            format!("{id} stopped at {:?}", r.n_range)
        })?;
    }
    // A_U(4; 1, 1)/A_U(2; 1, 1) = 12/2 and A(4)/A(3) = 42/7
    let at_one = |n| -> Result<BigInt, String> {
        Ok(rows(AsmClass::Uasm, n)?
            .iter()
            .map(|p| p.eval(&BigInt::one()))
            .fold(BigInt::zero(), |a, b| a + b))
    };
    let (u4, u2) = (at_one(2)?, at_one(1)?);
    ensure(u4 == BigInt::from(12) && u2 == BigInt::from(2), || {
        format!("A_U(4) = {u4}, A_U(2) = {u2}")
    })?;
    let six = BigRational::from_i64(6);
    ensure(BigRational::new(u4, u2) == six, || {
        "A_U(4)/A_U(2) is not 6".into()
    })?;
    ensure(BigRational::new(asm_total(4), asm_total(3)) == six, || {
        "A(4)/A(3) is not 6".into()
    })
}

fn determinism() -> Check {
    let verify = ["verify", "--suite", "all", "--max-n", "3", "--seed", "42"];
    let mut outs = Vec::new();
    for threads in ["1", "4"] {
        let mut args = vec!["asmkit", "--threads", threads];
        args.extend_from_slice(&verify);
        let out = run_args(args);
        ensure(out.code == EXIT_OK, || {
            format!("threads {threads}: exit {} {}", out.code, out.stderr)
        })?;
        outs.push(out.stdout);
    }
    // separate processes start with cold memo tables
    for threads in ["2", "0"] {
        let out = Command::new(env!("CARGO_BIN_EXE_asmkit"))
            .args(["--threads", threads])
            .args(verify)
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(EXIT_OK), || {
            format!("binary exit {:?}", out.status)
        })?;
        outs.push(String::from_utf8(out.stdout).map_err(|e| e.to_string())?);
    }
    ensure(outs.windows(2).all(|w| w[0] == w[1]), || {
        "verify output differs between runs".into()
    })?;
    let v: serde_json::Value = serde_json::from_str(&outs[0]).map_err(|e| e.to_string())?;
    ensure(v["failed"] == 0, || format!("{} checks failed", v["failed"]))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("ASM totals for n = 1..6", totals),
        ("refined ASM counts for n <= 6", refined_asm),
        ("UASM refined table for 2n <= 6", uasm_table),
        ("VSASM totals for orders 3..9", vsasm),
        ("OSASM and VSASM refined counts for 2n <= 8", kutin_yuen),
        ("domain-wall determinant and recurrence, n <= 4", dwbc_oracle),
        ("determinant and Pfaffian forms at zeta6", zeta6_forms),
        ("U-turn determinant against state sums", uturn_determinant),
        ("function battery", function_battery),
        ("identity battery at the caps", identity_battery),
        ("verify output is deterministic", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2}: PASS  {name}  ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}  ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
