//! Built-in checks: the worked two-point example, the Dirac extension, the
//! diameter bound, and randomized invariants for a given seed.

use imetric_core::distances::{d_i_fast, d_i_oracle, rho_i_fast, rho_i_oracle, ORACLE_PAIR_LIMIT};
use imetric_core::sample;
use imetric_core::{check_admissible, Coupling, FiniteMetricSpace, IdempotentMeasure, MaxPlus};
use std::sync::Arc;

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub fn run(seed: u64, instances: usize, tolerance: f64) -> Vec<Check> {
    vec![
        example_one(),
        dirac_extension(seed, instances),
        diameter(seed, instances),
        rho_i_axioms(seed, instances, tolerance),
        d_i_axioms(seed, instances, tolerance),
        oracle_agreement(seed, instances, tolerance),
        constructions(seed, instances),
    ]
}

fn check(name: &'static str, failures: usize, detail: String) -> Check {
    Check { name, pass: failures == 0, detail }
}

fn example_one() -> Check {
    let space = Arc::new(
        FiniteMetricSpace::new(vec!["x".into(), "y".into()], vec![vec![0.0, 1.0], vec![1.0, 0.0]]).expect("valid"),
    );
    let mu1 = IdempotentMeasure::new(space.clone(), vec![MaxPlus::ONE, MaxPlus::lit(-2.0)]).expect("valid");
    let mu2 = IdempotentMeasure::new(space, vec![MaxPlus::ONE, MaxPlus::lit(-4.0)]).expect("valid");
    let values = [
        d_i_fast(&mu1, &mu2).map(|r| r.value),
        d_i_oracle(&mu1, &mu2).map(|r| r.value),
        rho_i_fast(&mu1, &mu2).map(|r| r.value),
        rho_i_oracle(&mu1, &mu2).map(|r| r.value),
    ];
    let gamma = vec![vec![MaxPlus::ONE, MaxPlus::lit(-4.0)], vec![MaxPlus::lit(-2.0), MaxPlus::NegInf]];
    let cost = Coupling::new(gamma, mu1, mu2).map(|xi| xi.transport_cost());
    let ok = values == [Ok(0.0), Ok(0.0), Ok(1.0), Ok(1.0)] && cost == Ok(0.0);
    check(
        "example-one",
        usize::from(!ok),
        "dI = 0 and rhoI = 1 by both methods; the written coupling is admissible with cost 0".into(),
    )
}

fn dirac_extension(seed: u64, instances: usize) -> Check {
    let mut rng = sample::rng(seed);
    let mut bad = 0;
    for i in 0..instances {
        let n = 1 + i % 6;
        let s = sample::space(&mut rng, n);
        for x in 0..n {
            for y in 0..n {
                let d = rho_i_fast(&IdempotentMeasure::dirac(s.clone(), x), &IdempotentMeasure::dirac(s.clone(), y));
                bad += usize::from(d.map(|r| r.value) != Ok(s.rho(x, y)));
            }
        }
    }
    check("dirac-extension", bad, format!("{instances} spaces, {bad} point pairs with rhoI(dx, dy) != rho(x, y)"))
}

fn diameter(seed: u64, instances: usize) -> Check {
    let mut rng = sample::rng(seed.wrapping_add(1));
    let mut bad = 0;
    for i in 0..instances {
        let n = 2 + i % 5;
        let s = sample::space(&mut rng, n);
        let (x, y) = s.diametral_pair();
        let top = rho_i_fast(&IdempotentMeasure::dirac(s.clone(), x), &IdempotentMeasure::dirac(s.clone(), y));
        bad += usize::from(top.map(|r| r.value) != Ok(s.diam()));
        for _ in 0..20 {
            let a = sample::measure(&mut rng, &s, 0.25);
            let b = sample::measure(&mut rng, &s, 0.25);
            bad += usize::from(rho_i_fast(&a, &b).map(|r| r.value > s.diam()) != Ok(false));
        }
    }
    check("diameter", bad, format!("{instances} spaces, {bad} violations of rhoI <= diam or of attainment"))
}

fn rho_i_axioms(seed: u64, instances: usize, tol: f64) -> Check {
    let mut rng = sample::rng(seed.wrapping_add(2));
    let mut bad = 0;
    for i in 0..instances {
        let n = 2 + i % 5;
        let s = sample::space(&mut rng, n);
        let a = sample::measure(&mut rng, &s, 0.25);
        let b = if i % 5 == 0 { a.clone() } else { sample::measure(&mut rng, &s, 0.25) };
        let c = sample::measure(&mut rng, &s, 0.25);
        let d = |p: &IdempotentMeasure, q: &IdempotentMeasure| rho_i_fast(p, q).expect("same space").value;
        let (ab, ba, bc, ac) = (d(&a, &b), d(&b, &a), d(&b, &c), d(&a, &c));
        let ok = ab >= 0.0 && (ab - ba).abs() <= tol && ac <= ab + bc + tol && (ab <= tol) == (a == b);
        bad += usize::from(!ok);
    }
    check("rhoI-metric", bad, format!("{instances} triples, {bad} axiom violations"))
}

// The triangle inequality is left out: it fails for d_I on some inputs.
fn d_i_axioms(seed: u64, instances: usize, tol: f64) -> Check {
    let mut rng = sample::rng(seed.wrapping_add(3));
    let mut bad = 0;
    for i in 0..instances {
        let n = 1 + i % 6;
        let s = sample::space(&mut rng, n);
        let a = sample::measure(&mut rng, &s, 0.25);
        let b = sample::measure(&mut rng, &s, 0.25);
        let ab = d_i_fast(&a, &b).expect("same space").value;
        let ba = d_i_fast(&b, &a).expect("same space").value;
        let aa = d_i_fast(&a, &a).expect("same space").value;
        let r = rho_i_fast(&a, &b).expect("same space").value;
        let ok = ab >= 0.0 && (ab - ba).abs() <= tol && aa.abs() <= tol && ab <= r + tol;
        bad += usize::from(!ok);
    }
    check("dI-pseudometric", bad, format!("{instances} pairs, {bad} violations of d >= 0, symmetry, d(a, a) = 0, dI <= rhoI"))
}

fn oracle_agreement(seed: u64, instances: usize, tol: f64) -> Check {
    let mut rng = sample::rng(seed.wrapping_add(4));
    let (mut bad, mut compared) = (0, 0);
    for i in 0..instances {
        let n = 1 + i % 4;
        let s = sample::space(&mut rng, n);
        let a = sample::measure(&mut rng, &s, 0.25);
        let b = sample::measure(&mut rng, &s, 0.25);
        if a.support().len() * b.support().len() > ORACLE_PAIR_LIMIT {
            continue;
        }
        compared += 1;
        let pairs = [
            (d_i_fast(&a, &b), d_i_oracle(&a, &b)),
            (rho_i_fast(&a, &b), rho_i_oracle(&a, &b)),
        ];
        for (fast, oracle) in pairs {
            let agree = matches!((fast, oracle), (Ok(f), Ok(o)) if (f.value - o.value).abs() <= tol);
            bad += usize::from(!agree);
        }
    }
    check("fast-vs-oracle", bad, format!("{compared} instances, {bad} disagreements"))
}

fn constructions(seed: u64, instances: usize) -> Check {
    let mut rng = sample::rng(seed.wrapping_add(5));
    let mut bad = 0;
    for i in 0..instances {
        let n = 1 + i % 6;
        let s = sample::space(&mut rng, n);
        let a = sample::measure(&mut rng, &s, 0.25);
        let b = sample::measure(&mut rng, &s, 0.25);
        let built = [Coupling::xi_zero(&a, &b), Coupling::tensor(&a, &b), rho_i_fast(&a, &b).map(|r| r.witness)];
        for xi in built {
            bad += usize::from(!matches!(xi, Ok(xi) if check_admissible(&xi.rows(), &a, &b).is_ok()));
        }
    }
    check("couplings", bad, format!("{instances} pairs, {bad} inadmissible xi0, tensor or witness couplings"))
}
