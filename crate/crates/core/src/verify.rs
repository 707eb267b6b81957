//! Verification suites: the formula oracles, the function battery and the
//! identity battery, run as independent jobs with reports in a fixed order.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{rational_to_string, BigRational, Cyclo6, Ring};
use crate::error::{Error, Result};
use crate::formulas::{
    det_p_recurrence_sides, det_p_u_recurrence_sides, dwbc_recurrence_sides, z_ik, z_o_p, z_o_pf, z_p,
    z_u_det, z_u_p, z_u_prime,
};
use crate::ice::{enumerate_states, partition_sum_brute, Boundary, SpectralAssignment, DEFAULT_STATE_CAP};
use crate::refined::{check_identity, IdentityId, Verdict};
use crate::sampling::{cyclos, rational, rationals, resample, rng_for};
use crate::special::{
    binomial_identity_sides, f_exponent, f_o_exponent, f_u_exponent, function_battery, phi,
    proportionality_sides, rotation_sum,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Formulas,
    Functions,
    Identities,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "formulas" => Some(Suite::Formulas),
            "functions" => Some(Suite::Functions),
            "identities" => Some(Suite::Identities),
            "all" => Some(Suite::All),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Formulas => "formulas",
            Suite::Functions => "functions",
            Suite::Identities => "identities",
            Suite::All => "all",
        }
    }
}

/// Outcome of one check. Contains no timing, so equal inputs give equal
/// reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub tag: String,
    pub n_range: [usize; 2],
    pub samples: usize,
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

type Sample = (bool, String);
type SampleFn = fn(usize, &mut ChaCha8Rng) -> Result<Sample>;
type ExactFn = fn(usize) -> Result<Option<String>>;

#[derive(Clone, Copy)]
enum Kind {
    Sampled(SampleFn),
    Exact(ExactFn),
    Identity(IdentityId),
}

/// One schedulable check.
#[derive(Clone, Copy)]
pub struct Job {
    suite: Suite,
    tag: &'static str,
    n_min: usize,
    n_cap: usize,
    kind: Kind,
    note: Option<&'static str>,
}

impl Job {
    pub fn tag(&self) -> &'static str {
        self.tag
    }

    pub fn suite(&self) -> Suite {
        self.suite
    }

    pub fn run(&self, n_max: usize, samples: usize, seed: u64) -> Result<CheckReport> {
        if let Kind::Identity(id) = self.kind {
            let r = check_identity(id, n_max, samples, seed)?;
            return Ok(CheckReport {
                suite: self.suite.name().into(),
                tag: id.tag().into(),
                n_range: r.n_range,
                samples: r.samples,
                verdict: r.verdict,
                witness: r.witness,
                note: r.note,
            });
        }
        let hi = n_max.min(self.n_cap);
        if hi < self.n_min {
            return Err(Error::OutOfRange(format!(
                "{} needs n_max of at least {}",
                self.tag, self.n_min
            )));
        }
        let mut used = 0;
        let mut witness = None;
        for n in self.n_min..=hi {
            let failure = match self.kind {
                Kind::Exact(f) => f(n)?,
                Kind::Sampled(f) => {
                    let mut rng = rng_for(seed, self.tag, n);
                    let mut found = None;
                    for _ in 0..samples {
                        used += 1;
                        let (ok, point) = resample(&mut rng, |r| f(n, r))?;
                        if !ok {
                            found = Some(point);
                            break;
                        }
                    }
                    found
                }
                Kind::Identity(_) => unreachable!(),
            };
            if let Some(w) = failure {
                witness = Some(format!("n={n} {w}"));
                break;
            }
        }
        Ok(CheckReport {
            suite: self.suite.name().into(),
            tag: self.tag.into(),
            n_range: [self.n_min, hi],
            samples: used,
            verdict: if witness.is_none() {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            witness,
            note: self.note.map(str::to_string),
        })
    }
}

fn sampled(tag: &'static str, n_min: usize, n_cap: usize, f: SampleFn) -> Job {
    Job {
        suite: Suite::Formulas,
        tag,
        n_min,
        n_cap,
        kind: Kind::Sampled(f),
        note: None,
    }
}

fn show_q(v: &[BigRational]) -> String {
    v.iter().map(rational_to_string).collect::<Vec<_>>().join(",")
}

fn show_c(v: &[Cyclo6]) -> String {
    v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn zeta6() -> Cyclo6 {
    Cyclo6::a()
}

// ---- formula oracles ----

fn z_ik_vs_statesum(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let (a, x, y) = (rational(rng), rationals(rng, n), rationals(rng, n));
    let p = SpectralAssignment::dwbc(a.clone(), x.clone(), y.clone());
    let ok = z_ik(&p)? == partition_sum_brute(Boundary::Dwbc(n), &p)?;
    Ok((
        ok,
        format!("a={} x={} y={}", rational_to_string(&a), show_q(&x), show_q(&y)),
    ))
}

fn dwbc_recurrence(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let (a, x, y) = (rational(rng), rationals(rng, n), rationals(rng, n - 1));
    let (l, r) = dwbc_recurrence_sides(&a, &x, &y)?;
    // the right side also has to match the state sums directly
    let mut yf = y.clone();
    yf.push(&a * &x[n - 1]);
    let big = partition_sum_brute(
        Boundary::Dwbc(n),
        &SpectralAssignment::dwbc(a.clone(), x.clone(), yf),
    )?;
    let small = if n == 1 {
        BigRational::one()
    } else {
        let p = SpectralAssignment::dwbc(a.clone(), x[..n - 1].to_vec(), y.clone());
        partition_sum_brute(Boundary::Dwbc(n - 1), &p)?
    };
    let ok = l == r && big == r * small;
    Ok((
        ok,
        format!("a={} x={} y={}", rational_to_string(&a), show_q(&x), show_q(&y)),
    ))
}

fn z_p_vs_z_ik(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let u = cyclos(rng, 2 * n);
    let ok = z_p(&u)? == z_ik(&SpectralAssignment::unified(zeta6(), None, u.clone()))?;
    Ok((ok, format!("u={}", show_c(&u))))
}

fn z_u_det_vs_statesum(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let (a, b, x, y) = (rational(rng), rational(rng), rationals(rng, n), rationals(rng, n));
    let p = SpectralAssignment::uturn(a.clone(), b.clone(), x.clone(), y.clone());
    let ok = z_u_det(&p)? == partition_sum_brute(Boundary::UTurn(n), &p)?;
    let point = format!(
        "a={} b={} x={} y={}",
        rational_to_string(&a),
        rational_to_string(&b),
        show_q(&x),
        show_q(&y)
    );
    Ok((ok, point))
}

fn uturn_two_states(n: usize) -> Result<Option<String>> {
    debug_assert_eq!(n, 1);
    let states = enumerate_states(Boundary::UTurn(1), DEFAULT_STATE_CAP)?;
    let ups = states.iter().filter(|s| s.upward_uturns() == 1).count();
    Ok((states.len() != 2 || ups != 1)
        .then(|| format!("{} states, {} with an upward U-turn", states.len(), ups)))
}

fn z_u_p_vs_z_u_prime(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let u = cyclos(rng, 2 * n);
    let b1 = Cyclo6::rational(rational(rng));
    let b2 = Cyclo6::rational(rational(rng));
    let d = z_u_p(&u)?;
    let z1 = z_u_prime(&SpectralAssignment::unified(zeta6(), Some(b1), u.clone()))?;
    let z2 = z_u_prime(&SpectralAssignment::unified(zeta6(), Some(b2), u.clone()))?;
    Ok((d == z1 && z1 == z2, format!("u={}", show_c(&u))))
}

fn z_o_pf_vs_statesum(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let (a, u) = (rational(rng), rationals(rng, 2 * n));
    let ok = z_o_pf(&a, &u)?
        == partition_sum_brute(Boundary::Os(n), &SpectralAssignment::os(a.clone(), u.clone()))?;
    Ok((ok, format!("a={} u={}", rational_to_string(&a), show_q(&u))))
}

fn z_o_p_vs_pf(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let u = cyclos(rng, 2 * n);
    Ok((z_o_p(&u)? == z_o_pf(&zeta6(), &u)?, format!("u={}", show_c(&u))))
}

fn z_o_vs_z_u_prime(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let u = cyclos(rng, 2 * n);
    let b = Cyclo6::rational(rational(rng));
    let zu = z_u_prime(&SpectralAssignment::unified(zeta6(), Some(b), u.clone()))?;
    Ok((z_o_pf(&zeta6(), &u)? == zu, format!("u={}", show_c(&u))))
}

fn det_p_recurrence(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let u = cyclos(rng, 2 * n - 1);
    let (l, r) = det_p_recurrence_sides(&u)?;
    Ok((l == r, format!("u={}", show_c(&u))))
}

fn det_p_u_recurrence(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let u = cyclos(rng, 2 * n - 1);
    let (l, r) = det_p_u_recurrence_sides(&u)?;
    Ok((l == r, format!("u={}", show_c(&u))))
}

fn rotation(boundary: Boundary, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let n = boundary.n();
    let u = cyclos(rng, 2 * n);
    let b = Cyclo6::rational(rational(rng));
    let mu = rng.gen_range(0..2 * n);
    let z = rotation_sum(boundary, &u, Some(&b), mu)?;
    Ok((z.is_zero(), format!("mu={} u={}", mu + 1, show_c(&u))))
}

fn rotation_f(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    rotation(Boundary::Dwbc(n), rng)
}

fn rotation_f_u(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    rotation(Boundary::UTurn(n), rng)
}

fn rotation_f_o(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    rotation(Boundary::Os(n), rng)
}

// ---- functions ----

fn phi_normalized(n: usize) -> Result<Option<String>> {
    let v = phi(n)?.eval(&zeta6()).ok_or(Error::DivisionByZero)?;
    Ok((!v.is_one()).then(|| format!("phi(a) = {v}")))
}

fn binomial_identity(n: usize) -> Result<Option<String>> {
    let (l, r) = binomial_identity_sides(n)?;
    Ok((l != r).then(|| format!("{l} != {r}")))
}

fn battery(boundary: Boundary) -> Result<Option<String>> {
    let b = Cyclo6::rational(BigRational::new(5.into(), 3.into()));
    let bat = function_battery(boundary, Some(&b))?;
    Ok((!bat.all()).then(|| format!("{bat:?}")))
}

fn battery_f(n: usize) -> Result<Option<String>> {
    battery(Boundary::Dwbc(n))
}

fn battery_f_u(n: usize) -> Result<Option<String>> {
    battery(Boundary::UTurn(n))
}

fn battery_f_o(n: usize) -> Result<Option<String>> {
    battery(Boundary::Os(n))
}

fn proportional(boundary: Boundary, e: i64, rng: &mut ChaCha8Rng) -> Result<Sample> {
    let uq = rational(rng);
    let bq = rational(rng);
    let (u, b) = (Cyclo6::rational(uq.clone()), Cyclo6::rational(bq.clone()));
    let (l, r) = proportionality_sides(boundary, &u, Some(&b), e)?;
    Ok((
        l == r,
        format!("u={} b={}", rational_to_string(&uq), rational_to_string(&bq)),
    ))
}

fn proportional_f(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    proportional(Boundary::Dwbc(n), f_exponent(n), rng)
}

fn proportional_f_u(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    proportional(Boundary::UTurn(n), f_u_exponent(n), rng)
}

fn proportional_f_o(n: usize, rng: &mut ChaCha8Rng) -> Result<Sample> {
    proportional(Boundary::Os(n), f_o_exponent(n), rng)
}

/// Every job of a suite, in report order.
pub fn jobs(suite: Suite) -> Vec<Job> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Formulas | Suite::All) {
        out.extend([
            sampled("Z_IK_STATESUM", 1, 4, z_ik_vs_statesum),
            sampled("DWBC_RECURRENCE", 1, 4, dwbc_recurrence),
            sampled("Z_P_EQ_Z_IK", 1, 4, z_p_vs_z_ik),
            Job {
                suite: Suite::Formulas,
                tag: "UTURN_TWO_STATES",
                n_min: 1,
                n_cap: 1,
                kind: Kind::Exact(uturn_two_states),
                note: None,
            },
            sampled("Z_U_DET_STATESUM", 1, 3, z_u_det_vs_statesum),
            sampled("Z_U_P_EQ_Z_U_PRIME", 1, 3, z_u_p_vs_z_u_prime),
            sampled("Z_O_PF_STATESUM", 1, 3, z_o_pf_vs_statesum),
            sampled("Z_O_P_EQ_Z_O_PF", 1, 3, z_o_p_vs_pf),
            sampled("Z_O_EQ_Z_U_PRIME", 1, 3, z_o_vs_z_u_prime),
            sampled("DET_P_RECURRENCE", 1, 4, det_p_recurrence),
            Job {
                note: Some("right side uses cubed factors sigma(u^3 v^3)"),
                ..sampled("DET_P_U_RECURRENCE", 1, 4, det_p_u_recurrence)
            },
            sampled("ROTATION_F", 1, 3, rotation_f),
            sampled("ROTATION_F_U", 1, 3, rotation_f_u),
            sampled("ROTATION_F_O", 1, 3, rotation_f_o),
        ]);
    }
    if matches!(suite, Suite::Functions | Suite::All) {
        let exact = |tag, n_cap, f: ExactFn| Job {
            suite: Suite::Functions,
            tag,
            n_min: 1,
            n_cap,
            kind: Kind::Exact(f),
            note: None,
        };
        let samp = |tag, n_cap, f: SampleFn| Job {
            suite: Suite::Functions,
            ..sampled(tag, 1, n_cap, f)
        };
        out.extend([
            exact("PHI_NORMALIZED", 12, phi_normalized),
            exact("BINOMIAL_IDENTITY", 12, binomial_identity),
            exact("F_BATTERY", 4, battery_f),
            exact("F_U_BATTERY", 4, battery_f_u),
            exact("F_O_BATTERY", 4, battery_f_o),
            samp("F_PROPORTIONAL", 4, proportional_f),
            samp("F_U_PROPORTIONAL", 3, proportional_f_u),
            Job {
                note: Some("sigma(a) exponent 2n^2+3n-1"),
                ..samp("F_O_PROPORTIONAL", 3, proportional_f_o)
            },
        ]);
    }
    if matches!(suite, Suite::Identities | Suite::All) {
        out.extend(IdentityId::ALL.into_iter().map(|id| Job {
            suite: Suite::Identities,
            tag: id.tag(),
            n_min: 1,
            n_cap: id.n_cap(),
            kind: Kind::Identity(id),
            note: None,
        }));
    }
    out
}

/// Run a suite on the current rayon pool; reports keep the job order.
pub fn run_suite(suite: Suite, n_max: usize, samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    jobs(suite)
        .par_iter()
        .map(|j| j.run(n_max, samples, seed))
        .collect()
}
