//! Acceptance criteria. Prints one line per criterion and exits nonzero if
//! any fails.

use std::f64::consts::PI;
use std::time::Instant;

use colsig::algebra::{CMat, Complex, TorusPoint};
use colsig::braid::{BraidWord, Coloring};
use colsig::gassner::xi_symbolic;
use colsig::linksig::{additivity_defect, braid_signature, ccomplex_signature, seifert_signature, CComplexData};
use colsig::maslov::{meyer, meyer_via_maslov, UnitaryPair};
use colsig::verify::{self, run_suite, Suite, SuiteReport};
use colsig::Ctx;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;
/// Relative deviation allowed in Bᵀ ξ B̄ = ξ.
const UNITARITY_TOL: f64 = 1e-9;
/// Relative deviation allowed in the cover/ξ entrywise ratio.
const RATIO_TOL: f64 = 1e-8;
/// Signs of closed-form reals closer to 0 than this count as 0.
const SIGN_TOL: f64 = 1e-12;

const HOPF_TWO_COLORS: &str = include_str!("../../../data/hopf_two_colors.json");
const TORUS_LINK_2_4: &str = include_str!("../../../data/torus_link_2_4.json");

fn sgn(x: f64) -> i64 {
    if x.abs() < SIGN_TOL {
        0
    } else {
        x.signum() as i64
    }
}

fn word(w: &str, c: &str) -> BraidWord {
    BraidWord::parse(w, &Coloring::parse(c, None).unwrap()).unwrap()
}

fn angle(a: u64, b: u64) -> f64 {
    2.0 * PI * a as f64 / b as f64
}

/// Re[(1−ω₁)(1−ω₂)] and Re[(1−ω₁)(1−ω₂)(1−ω₁ω₂)] in floating point.
fn re_products(t1: f64, t2: f64) -> (f64, f64) {
    let one_minus = |t: f64| (1.0 - t.cos(), -t.sin());
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let two = mul(one_minus(t1), one_minus(t2));
    (two.0, mul(two, one_minus(t1 + t2)).0)
}

struct Check {
    failures: Vec<String>,
}

impl Check {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }
}

fn criterion(num: usize, name: &str, all: &mut bool, f: impl FnOnce(&mut Check) -> String) {
    let start = Instant::now();
    let mut c = Check { failures: Vec::new() };
    let detail = f(&mut c);
    let ok = c.failures.is_empty();
    *all &= ok;
    println!(
        "criterion {num:>2} {} {name}: {detail} ({:.1}s)",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    for f in &c.failures {
        println!("    counterexample: {f}");
    }
}

fn suite(c: &mut Check, reports: Vec<SuiteReport>) -> String {
    let mut parts = Vec::new();
    for r in reports {
        c.expect(r.ok(), || format!("{}: {}", r.suite, r.first_failure.clone().unwrap_or_default()));
        parts.push(format!("{} {}/{}", r.suite, r.passed, r.trials));
    }
    parts.join(", ")
}

fn one_by_one(z: Complex) -> CMat {
    CMat::from_fn(1, 1, z.precision(), |_, _| z.clone())
}

fn main() {
    let ctx = Ctx::default();
    let mut all = true;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);

    criterion(1, "Hopf link", &mut all, |c| {
        let hopf = word("1 1", "1,1");
        let mut n = 0;
        for b in [3u64, 5, 7] {
            for a in 1..b {
                let s = braid_signature(&hopf, &TorusPoint::new(vec![(a, b)]), false, &ctx).unwrap().signature;
                c.expect(s == -1, || format!("σ₁² at {a}/{b} gave {s}"));
                n += 1;
            }
        }
        let data = CComplexData::from_json(HOPF_TWO_COLORS).unwrap();
        for _ in 0..25 {
            let p = TorusPoint::new(vec![(rng.gen_range(1..11), 11), (rng.gen_range(1..13), 13)]);
            let s = ccomplex_signature(&data, &p, &ctx).unwrap().signature;
            c.expect(s == 0, || format!("two-colored Hopf at {p} gave {s}"));
        }
        format!("{n} one-colored points, 25 two-colored points")
    });

    criterion(2, "trefoil", &mut all, |c| {
        let t = word("1 1 1", "1,1");
        let mut n = 0;
        for b in [5u64, 7, 11] {
            for a in 1..b {
                let p = TorusPoint::new(vec![(a, b)]);
                let want = -1 + sgn(2.0 * angle(a, b).cos() - 1.0);
                let s = braid_signature(&t, &p, false, &ctx).unwrap().signature;
                let o = seifert_signature(&t, &p, &ctx).unwrap().signature;
                c.expect(s == want && o == want, || format!("{p}: recursion {s}, Seifert {o}, closed form {want}"));
                n += 1;
            }
        }
        format!("{n} points, recursion and Seifert agree with the closed form")
    });

    criterion(3, "two-variable torus link", &mut all, |c| {
        let w = word("1 1 1 1", "1,2");
        let data = CComplexData::from_json(TORUS_LINK_2_4).unwrap();
        let mut n = 0;
        for (k1, k2) in [(2u64, 3u64), (2, 5), (3, 5)] {
            for a1 in 1..k1 {
                for a2 in 1..k2 {
                    let p = TorusPoint::new(vec![(a1, k1), (a2, k2)]);
                    let (two, three) = re_products(angle(a1, k1), angle(a2, k2));
                    let s = braid_signature(&w, &p, false, &ctx).unwrap().signature;
                    let cc = ccomplex_signature(&data, &p, &ctx).unwrap().signature;
                    c.expect(s == -sgn(three), || format!("{p}: recursion {s}, closed form {}", -sgn(three)));
                    c.expect(cc == -sgn(two) && cc == s, || format!("{p}: C-complex {cc}, closed form {}, recursion {s}", -sgn(two)));
                    n += 1;
                }
            }
        }
        format!("{n} points")
    });

    criterion(4, "Meyer closed forms", &mut all, |c| {
        let prec = ctx.bits;
        let sample = |rng: &mut ChaCha8Rng| {
            let b = rng.gen_range(2..40u64);
            (rng.gen_range(1..b), b)
        };
        let both = |p: &UnitaryPair| (meyer(p, &ctx).unwrap().signature(), meyer_via_maslov(p, &ctx).unwrap().signature());
        // single half twist, including ω = ±1
        let mut pts: Vec<(u64, u64)> = vec![(0, 1), (1, 2)];
        pts.extend((0..48).map(|_| sample(&mut rng)));
        for &(a, b) in &pts {
            let om = TorusPoint::new(vec![(a, b)]).value(0, prec);
            let g = one_by_one(-&om);
            let p = UnitaryPair::new(one_by_one(&om - &om.conj()), g.clone(), g, &ctx).unwrap();
            let want = if 2 * a == b || a == 0 { 0 } else { 1 };
            let got = both(&p);
            c.expect(got == (want, want), || format!("half twist at {a}/{b}: {got:?}, want {want}"));
        }
        // two strands of the same color
        for _ in 0..50 {
            let (a, b) = sample(&mut rng);
            let om = TorusPoint::new(vec![(a, b)]).value(0, prec);
            let one = Complex::one(prec);
            let d = &om - &om.conj();
            let form = CMat::from_fn(2, 2, prec, |i, j| match (i, j) {
                (0, 1) => &one - &om,
                (1, 0) => &om.conj() - &one,
                _ => d.clone(),
            });
            let g1 = CMat::from_fn(2, 2, prec, |i, j| match (i, j) {
                (0, 0) => -&om,
                (1, 0) => Complex::zero(prec),
                _ => one.clone(),
            });
            let g2 = g1.mul(&g1);
            let p = UnitaryPair::new(form, g1, g2, &ctx).unwrap();
            let want = sgn(1.0 - 2.0 * angle(a, b).cos());
            let got = both(&p);
            c.expect(got == (want, want), || format!("two strands at {a}/{b}: {got:?}, want {want}"));
        }
        // two colors, full twist acting by ω₁ω₂
        let mut n3 = 0;
        while n3 < 50 {
            let (p1, p2) = (sample(&mut rng), sample(&mut rng));
            let pt = TorusPoint::new(vec![p1, p2]);
            let (t1, t2) = (angle(p1.0, p1.1), angle(p2.0, p2.1));
            if ((t1 + t2) / (2.0 * PI)).fract().abs() < 1e-12 {
                continue;
            }
            n3 += 1;
            let (w1, w2) = (pt.value(0, prec), pt.value(1, prec));
            let w12 = &w1 * &w2;
            let xi = &(&(&w1 - &w1.conj()) + &(&w2 - &w2.conj())) - &(&w12 - &w12.conj());
            let g = one_by_one(w12);
            let p = UnitaryPair::new(one_by_one(xi), g.clone(), g, &ctx).unwrap();
            let want = sgn(re_products(t1, t2).1);
            let got = both(&p);
            c.expect(got == (want, want), || format!("two colors at {pt}: {got:?}, want {want}"));
        }
        "50 points each for the three closed forms, E-space and Maslov definitions".into()
    });

    criterion(5, "definition equivalence", &mut all, |c| suite(c, run_suite(Suite::MaslovDefs, 1000, SEED, &ctx)));

    criterion(6, "additivity theorem", &mut all, |c| {
        let reports = run_suite(Suite::Theorem, 300, SEED, &ctx);
        let detail = suite(c, reports.into_iter().filter(|r| r.suite == "theorem").collect());
        let s = word("1", "1,1");
        let d = additivity_defect(&s, &s, &TorusPoint::new(vec![(1, 2)]), true, &ctx).unwrap();
        c.expect((d.lhs, d.rhs, d.guaranteed) == (-1, 0, false), || format!("ω = −1: lhs {}, rhs {}", d.lhs, d.rhs));
        format!("{detail}; ω = −1 gives lhs {} vs rhs {} outside the guarantee", d.lhs, d.rhs)
    });

    criterion(7, "Seifert oracle", &mut all, |c| suite(c, run_suite(Suite::Oracle, 300, SEED, &ctx)));

    criterion(8, "unitarity and forms", &mut all, |c| {
        c.expect(verify::UNITARITY_TOL <= UNITARITY_TOL && verify::RATIO_TOL <= RATIO_TOL, || "suite tolerances are looser than pinned".into());
        let mut reports = run_suite(Suite::Unitarity, 200, SEED, &ctx);
        reports.extend(run_suite(Suite::Forms, 60, SEED, &ctx));
        format!("{} (tolerances {UNITARITY_TOL:e}, {RATIO_TOL:e})", suite(c, reports))
    });

    criterion(9, "structural bounds", &mut all, |c| {
        let reports = run_suite(Suite::Theorem, 100, SEED + 1, &ctx);
        suite(c, reports.into_iter().filter(|r| r.suite == "theorem/bounds").collect())
    });

    criterion(10, "degenerate conventions", &mut all, |c| {
        let zero = xi_symbolic(&Coloring::parse("1,-1", None).unwrap());
        c.expect(zero[(0, 0)].is_zero(), || format!("ξ for (1,−1) is {}", zero[(0, 0)]));
        format!("ξ(1,−1) = 0; {}", suite(c, run_suite(Suite::Padding, 100, SEED, &ctx)))
    });

    if !all {
        std::process::exit(1);
    }
}
