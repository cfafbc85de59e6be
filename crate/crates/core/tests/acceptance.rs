//! End-to-end acceptance run: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hurwitz_core::closedform::closed_form;
use hurwitz_core::exactarith::{int, rat};
use hurwitz_core::partitions::partitions_of;
use hurwitz_core::{
    evaluate, monotone_closed_form, monotone_generating, oracle_hurwitz, simple_closed_form,
    simple_generating, structure_checks, FactoredRationalFunction, GenusClosedForm, Kind,
    Partition, Polynomial, Rational,
};

type Outcome = Result<(), String>;

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn expect_terms(form: &GenusClosedForm, expected: &[(i64, u32, Rational)]) -> Outcome {
    let got: Vec<(i64, u32, Rational)> =
        form.terms.iter().map(|t| (t.k, t.i, t.coeff.clone())).collect();
    if got == expected {
        Ok(())
    } else {
        Err(format!("{}: expected {expected:?}, got {got:?}", form.mu))
    }
}

/// `c * hbar^shift * num(hbar^2) / (prod_{i in singles} (1 - i^2 hbar^2) * prod_{i in doubles} (1 - i^2 hbar^2)^2)`.
fn even_rational(
    c: i64,
    shift: usize,
    num_in_h2: &[i64],
    singles: &[i64],
    doubles: &[i64],
) -> FactoredRationalFunction {
    let mut coeffs = vec![int(0); shift + 2 * num_in_h2.len()];
    for (j, &a) in num_in_h2.iter().enumerate() {
        coeffs[shift + 2 * j] = int(a * c);
    }
    let mut den = std::collections::BTreeMap::new();
    for &i in singles {
        den.insert(i, 1);
        den.insert(-i, 1);
    }
    for &i in doubles {
        den.insert(i, 2);
        den.insert(-i, 2);
    }
    FactoredRationalFunction::new(Polynomial::from_coeffs(coeffs), den)
}

fn check_generating(mu: &Partition, expected: FactoredRationalFunction) -> Outcome {
    let got = monotone_generating(mu).map_err(|e| e.to_string())?;
    if got == expected {
        Ok(())
    } else {
        Err(format!("{mu}: generating function {got:?} differs from {expected:?}"))
    }
}

fn criterion_1() -> Outcome {
    let mu5 = p(&[5]);
    let form = monotone_closed_form(&mu5).map_err(|e| e.to_string())?;
    expect_terms(
        &form,
        &[
            (4, 1, rat(8, 45)),
            (3, 1, rat(-9, 20)),
            (2, 1, rat(14, 45)),
            (1, 1, rat(-7, 180)),
        ],
    )?;
    check_generating(&mu5, even_rational(14, 4, &[1], &[1, 2, 3, 4], &[]))?;
    let mu10 = p(&[10]);
    let form = monotone_closed_form(&mu10).map_err(|e| e.to_string())?;
    expect_terms(
        &form,
        &[
            (9, 1, rat(59049, 100352000)),
            (8, 1, rat(-16384, 4465125)),
            (7, 1, rat(14000231, 1492992000)),
            (6, 1, rat(-153, 12250)),
            (5, 1, rat(1328125, 146313216)),
            (4, 1, rat(-2176, 637875)),
            (3, 1, rat(1989, 3584000)),
            (2, 1, rat(-221, 8930250)),
            (1, 1, rat(2431, 36578304000)),
        ],
    )?;
    check_generating(&mu10, even_rational(4862, 9, &[1], &[1, 2, 3, 4, 5, 6, 7, 8, 9], &[]))
}

fn criterion_2() -> Outcome {
    let cases: [(&[u32], Vec<(i64, u32, Rational)>, FactoredRationalFunction); 3] = [
        (
            &[3, 3],
            vec![
                (5, 1, rat(125, 1728)),
                (4, 1, rat(-32, 135)),
                (3, 1, rat(81, 320)),
                (2, 2, rat(-2, 9)),
                (2, 1, rat(92, 135)),
                (1, 2, rat(-17, 72)),
                (1, 1, rat(-1663, 2160)),
            ],
            even_rational(60, 6, &[5, -65, 264], &[3, 4, 5], &[1, 2]),
        ),
        (
            &[5, 3],
            vec![
                (7, 1, rat(16807, 2073600)),
                (6, 1, rat(-27, 700)),
                (5, 1, rat(40625, 580608)),
                (4, 1, rat(-176, 2025)),
                (3, 1, rat(5373, 25600)),
                (2, 2, rat(-1, 10)),
                (2, 1, rat(-1013, 11340)),
                (1, 2, rat(-37, 2880)),
                (1, 1, rat(-23593, 322560)),
            ],
            even_rational(315, 8, &[15, -395, 3932], &[3, 4, 5, 6, 7], &[1, 2]),
        ),
        (
            &[3, 2, 1],
            vec![
                (5, 1, rat(125, 1728)),
                (4, 1, rat(-8, 27)),
                (3, 1, rat(99, 320)),
                (2, 2, rat(-2, 9)),
                (2, 1, rat(182, 135)),
                (1, 2, rat(-55, 72)),
                (1, 1, rat(-43, 27)),
            ],
            even_rational(240, 7, &[6, -71, 230], &[3, 4, 5], &[1, 2]),
        ),
    ];
    for (parts, terms, generating) in cases {
        let mu = p(parts);
        let form = monotone_closed_form(&mu).map_err(|e| e.to_string())?;
        expect_terms(&form, &terms)?;
        check_generating(&mu, generating)?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let cases: [(&[u32], &[(i64, i64)]); 4] = [
        (&[5], &[(10, 1), (5, -4)]),
        (&[10], &[(45, 1), (35, -9), (25, 36), (15, -84), (5, 126)]),
        (
            &[5, 2],
            &[(21, 1), (14, -6), (11, -21), (9, 35), (6, 70), (4, -84), (1, -105)],
        ),
        (
            &[3, 2, 1],
            &[
                (15, 1),
                (10, -6),
                (7, -15),
                (6, -20),
                (5, 39),
                (4, 120),
                (3, 35),
                (2, -150),
                (1, -210),
            ],
        ),
    ];
    for (parts, coeffs) in cases {
        let mu = p(parts);
        let form = simple_closed_form(&mu).map_err(|e| e.to_string())?;
        let expected: Vec<_> = coeffs.iter().map(|&(k, c)| (k, 1, int(c))).collect();
        expect_terms(&form, &expected)?;
        // the full two-sided sum, scaled by d! * prod(mu)
        let sum = simple_generating(&mu).map_err(|e| e.to_string())?;
        let scale = Rational::from_integer(mu.parts_product().into())
            * (1..=i64::from(mu.size())).fold(int(1), |a, k| a * int(k));
        let eps = if (mu.size() as usize + mu.len()).is_multiple_of(2) { 1 } else { -1 };
        for &(k, c) in coeffs {
            if sum.coefficient(k) * &scale != int(c) || sum.coefficient(-k) * &scale != int(eps * c)
            {
                return Err(format!("{mu}: exponential sum coefficient at k=+-{k} is off"));
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let mut triples = 0;
    for d in 2..=5 {
        for mu in partitions_of(d) {
            for kind in [Kind::Simple, Kind::Monotone] {
                let form = closed_form(kind, &mu).map_err(|e| e.to_string())?;
                let mut g = 0;
                while form.branch_points(g) <= 6 {
                    let oracle = oracle_hurwitz(&mu, g, kind).map_err(|e| e.to_string())?;
                    let engine = evaluate(&form, g);
                    if oracle != engine {
                        return Err(format!(
                            "{kind} {mu} g={g}: oracle {oracle}, closed form {engine}"
                        ));
                    }
                    triples += 1;
                    g += 1;
                }
            }
        }
    }
    println!("    {triples} (mu, g, kind) triples compared");
    Ok(())
}

fn sweep() -> impl Iterator<Item = Partition> {
    (2..=8).flat_map(partitions_of)
}

fn criterion_5() -> Outcome {
    for mu in sweep() {
        // integrality is enforced by construction and reported as an error
        let form = simple_closed_form(&mu).map_err(|e| format!("{mu}: {e}"))?;
        let report = structure_checks(&form);
        let d = mu.size();
        if !report.passed() {
            return Err(format!("{mu}: {report:?}"));
        }
        if d > 2 && report.second_coefficient.is_none() {
            return Err(format!("{mu}: second coefficient not checked"));
        }
        if form.terms.iter().any(|t| !t.coeff.is_integer()) {
            return Err(format!("{mu}: non-integer coefficient"));
        }
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for mu in sweep() {
        let form = monotone_closed_form(&mu).map_err(|e| format!("{mu}: {e}"))?;
        let report = structure_checks(&form);
        if !report.passed() {
            return Err(format!("{mu}: {report:?}"));
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for mu in sweep() {
        let d = i64::from(mu.size());
        let l = mu.len() as u32;
        let eps = if (d as usize + mu.len()).is_multiple_of(2) { int(1) } else { int(-1) };
        let m = monotone_generating(&mu).map_err(|e| e.to_string())?;
        if m.reflect() != m.scale(&eps) {
            return Err(format!("{mu}: monotone generating function has the wrong parity"));
        }
        for (&k, &e) in m.denominator_factors() {
            let bound = l.min(((d - 1) / k.abs()) as u32);
            if e > bound {
                return Err(format!("{mu}: pole order {e} at k={k} exceeds {bound}"));
            }
        }
        let s = simple_generating(&mu).map_err(|e| e.to_string())?;
        if s.reflect() != s.scale(&eps) {
            return Err(format!("{mu}: exponential sum has the wrong parity"));
        }
        if let Some((&k, _)) = s.terms().iter().find(|(k, _)| k.abs() > d * (d - 1) / 2) {
            return Err(format!("{mu}: exponential term at k={k} outside the support"));
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for mu in sweep() {
        let norm = Rational::new(1.into(), mu.parts_product().into());
        let monotone = monotone_closed_form(&mu).map_err(|e| e.to_string())?;
        let simple = simple_closed_form(&mu).map_err(|e| e.to_string())?;
        let max_b = monotone.branch_points(6) as usize;
        let m_series = monotone_generating(&mu).map_err(|e| e.to_string())?.taylor_coefficients(max_b);
        let s_sum = simple_generating(&mu).map_err(|e| e.to_string())?;
        for g in 0..=6 {
            let b = monotone.branch_points(g);
            let from_series = &m_series[b as usize] * &norm;
            if from_series != evaluate(&monotone, g) {
                return Err(format!("monotone {mu} g={g}: series {from_series}"));
            }
            // b! [hbar^b] of an exponential sum is its b-th moment
            let from_sum = s_sum.moment(b);
            if from_sum != evaluate(&simple, g) {
                return Err(format!("simple {mu} g={g}: series {from_sum}"));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("monotone one-point reference coefficients", criterion_1, Duration::from_secs(5)),
        ("monotone multi-point reference coefficients", criterion_2, Duration::from_secs(10)),
        ("simple reference coefficients", criterion_3, Duration::from_secs(10)),
        ("oracle equivalence, |mu| <= 5, b <= 6", criterion_4, Duration::from_secs(120)),
        ("simple structure sweep, d <= 8", criterion_5, Duration::from_secs(60)),
        ("monotone leading-term sweep, d <= 8", criterion_6, Duration::from_secs(60)),
        ("parity and support, d <= 8", criterion_7, Duration::from_secs(60)),
        ("series round trip, d <= 8, g <= 6", criterion_8, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (n, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= *budget {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({elapsed:.2?})", n + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {why}", n + 1);
            }
        }
    }
    println!("acceptance: {}/8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
