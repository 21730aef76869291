//! The `verify` sweep: runs every identity check over a parameter range and
//! collects the results into a [`VerificationReport`].

use std::fmt::Display;

use paley_core::census::{
    count_k4_brute, count_triangles_brute, evans_k4, k3_formula, k4_formula, lemma_s_pair,
    theorem2_trace, ENUMERATION_LIMIT,
};
use paley_core::characters::{
    count_chi_one_minus_x2, jacobi_k, jacobi_sum, jacobi_symbol, lemma_k_double_sum,
    reduced_jacobi_sum, sum_chi_shifted_pair, sum_chi_x2_minus_a,
};
use paley_core::properties::{
    decomposition_report, degree_profile, is_complete, is_connected, is_cycle,
    self_complementary_edge_test,
};
use paley_core::residue::{
    check_binomial_divisibility, is_admissible, is_prime, is_unit, unit_squares, Modulus,
};
use paley_core::{CharacterFamily, Graph, PrimePowerModulus, Result};
use serde::Serialize;

/// Largest p^α for the brute K4 oracle inside a sweep.
pub const K4_BRUTE_LIMIT: u64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub params: String,
    pub pass: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    fn push(&mut self, name: String, params: String, expected: impl Display, actual: impl Display) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let pass = expected == actual;
        if pass {
            self.summary.pass += 1;
        } else {
            self.summary.fail += 1;
        }
        self.checks.push(Check {
            name,
            params,
            pass,
            expected,
            actual,
        });
    }

    /// Records a check whose evaluation already verified its own closed form.
    fn push_result<T: Display>(&mut self, name: String, params: String, result: Result<T>) {
        match result {
            Ok(_) => self.push(name, params, "ok", "ok"),
            Err(e) => self.push(name, params, "ok", e),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!(
                "{} {} [{}] expected={} actual={}\n",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.params,
                c.expected,
                c.actual
            ));
        }
        out.push_str(&format!(
            "summary: {} passed, {} failed\n",
            self.summary.pass, self.summary.fail
        ));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepParams {
    pub max_n: u64,
    pub max_prime: Option<u64>,
    pub alphas: Vec<u32>,
}

fn brute_has_sqrt_minus_one(n: u64) -> bool {
    (1..n).any(|x| is_unit(x as i64, n) && (x * x + 1) % n == 0)
}

fn sweep_admissibility(report: &mut VerificationReport, max_n: u64) {
    for n in 3..=max_n {
        report.push(
            format!("admissible({n})"),
            format!("n={n}"),
            brute_has_sqrt_minus_one(n),
            is_admissible(n),
        );
    }
}

fn sweep_structure(report: &mut VerificationReport, max_n: u64) {
    for n in (3..=max_n).filter(|&n| is_admissible(n)) {
        let m = Modulus::admissible(n).expect("filtered admissible");
        let params = format!("n={n}");
        let degree = m.phi() >> m.k();
        let g = Graph::paley(n).expect("admissible");
        report.push(
            format!("unit-squares-size({n})"),
            params.clone(),
            degree,
            unit_squares(n).len(),
        );
        report.push(
            format!("regular({n})"),
            params.clone(),
            format!("({degree}, {degree})"),
            format!("{:?}", degree_profile(&g)),
        );
        report.push(
            format!("connected({n})"),
            params.clone(),
            true,
            is_connected(&g),
        );
        report.push(
            format!("not-complete({n})"),
            params.clone(),
            false,
            is_complete(&g),
        );
        report.push(
            format!("cycle({n})"),
            params.clone(),
            n == 5 || n == 10,
            is_cycle(&g),
        );
        report.push(
            format!("self-complementary-edge-test({n})"),
            params,
            is_prime(n),
            self_complementary_edge_test(n).map_or_else(|e| e.to_string(), |b| b.to_string()),
        );
    }
}

/// Searches Z_65^* for a unit with Jacobi symbol 1 that is not a square.
pub fn jacobi_symbol_witness(n: u64) -> Option<u64> {
    let squares = unit_squares(n);
    (1..n)
        .find(|&a| is_unit(a as i64, n) && jacobi_symbol(a as i64, n) == 1 && !squares.contains(&a))
}

/// Searches for units a, b with a, b and ab all non-squares.
pub fn non_square_pair_witness(n: u64) -> Option<(u64, u64)> {
    let squares = unit_squares(n);
    let non_squares: Vec<u64> = (1..n)
        .filter(|&a| is_unit(a as i64, n) && !squares.contains(&a))
        .collect();
    non_squares.iter().find_map(|&a| {
        non_squares
            .iter()
            .find(|&&b| !squares.contains(&(a * b % n)))
            .map(|&b| (a, b))
    })
}

fn sweep_witnesses(report: &mut VerificationReport, max_n: u64) {
    if max_n < 65 {
        return;
    }
    let w = jacobi_symbol_witness(65);
    report.push(
        "jacobi-symbol-witness(65)".into(),
        "n=65".into(),
        "found",
        w.map_or("none".to_string(), |_| "found".to_string()),
    );
    let w = non_square_pair_witness(65);
    report.push(
        "non-square-pair-witness(65)".into(),
        "n=65".into(),
        "found",
        w.map_or("none".to_string(), |_| "found".to_string()),
    );
}

fn shifted_pair_samples(p: u64, n: u64) -> Vec<(i64, i64)> {
    let mut values: Vec<i64> = vec![
        0,
        1,
        2,
        p as i64,
        2 * p as i64,
        (p + 1) as i64,
        (n - 1) as i64,
    ];
    values.extend((0..12).map(|i| ((i * 7919 + 3) % n) as i64));
    values.sort_unstable();
    values.dedup();
    let mut pairs: Vec<(i64, i64)> = Vec::new();
    for &a in &values {
        for &b in &values {
            pairs.push((a, b));
        }
        // b ≡ a (mod p) boundary case
        pairs.push((a, (a + p as i64) % n as i64));
    }
    pairs
}

fn sweep_prime_power(report: &mut VerificationReport, p: u64, alpha: u32) {
    let Some(n) = p.checked_pow(alpha) else {
        return;
    };
    let params = format!("p={p},alpha={alpha}");
    let tag = |name: &str| format!("{name}({p}^{alpha})");

    report.push(
        tag("binomial-divisibility"),
        params.clone(),
        true,
        check_binomial_divisibility(p, alpha),
    );

    let k3 = k3_formula(p, alpha);
    let k4 = k4_formula(p, alpha);
    if n <= ENUMERATION_LIMIT {
        let g = Graph::paley(n).expect("p^alpha is admissible");
        report.push(
            tag("k3-formula-vs-brute"),
            params.clone(),
            count_triangles_brute(&g),
            k3.as_ref()
                .map_or_else(|e| e.to_string(), |v| v.to_string()),
        );
        if n <= K4_BRUTE_LIMIT {
            report.push(
                tag("k4-formula-vs-brute"),
                params.clone(),
                count_k4_brute(&g),
                k4.as_ref()
                    .map_or_else(|e| e.to_string(), |v| v.to_string()),
            );
        }
    }
    if alpha == 1 {
        report.push(
            tag("k4-formula-vs-evans"),
            params.clone(),
            evans_k4(p).map_or_else(|e| e.to_string(), |v| v.to_string()),
            k4.as_ref()
                .map_or_else(|e| e.to_string(), |v| v.to_string()),
        );
    }

    if n > ENUMERATION_LIMIT {
        return;
    }
    let m = PrimePowerModulus::new(p, alpha).expect("validated prime");
    let fam = match CharacterFamily::new(&m) {
        Ok(f) => f,
        Err(e) => {
            report.push(tag("characters"), params, "ok", e);
            return;
        }
    };

    let units = (1..n as i64).filter(|a| a % p as i64 != 0);
    let first_err = units
        .clone()
        .map(|a| sum_chi_x2_minus_a(&fam, a))
        .find_map(|r| r.err());
    report.push(
        tag("sum-chi-x2-minus-a"),
        params.clone(),
        "ok",
        first_err.map_or("ok".to_string(), |e| e.to_string()),
    );
    report.push_result(
        tag("count-chi-one-minus-x2"),
        params.clone(),
        count_chi_one_minus_x2(&fam),
    );
    let first_err = shifted_pair_samples(p, n)
        .into_iter()
        .map(|(a, b)| sum_chi_shifted_pair(&fam, a, b))
        .find_map(|r| r.err());
    report.push(
        tag("shifted-pair"),
        params.clone(),
        "ok",
        first_err.map_or("ok".to_string(), |e| e.to_string()),
    );
    report.push_result(tag("lemma-k"), params.clone(), lemma_k_double_sum(&fam));
    report.push_result(
        tag("s-pair"),
        params.clone(),
        lemma_s_pair(&fam).map(|(s, s0)| format!("{s},{s0}")),
    );
    report.push_result(
        tag("theorem2-trace"),
        params.clone(),
        theorem2_trace(p, alpha).map(|t| t.f),
    );

    let ni = n as i64;
    let periodic = (0..ni).all(|x| {
        (0..ni / p as i64).all(|k| {
            fam.quadratic.value(x) == fam.quadratic.value(x + k * p as i64)
                && fam.quartic.value(x) == fam.quartic.value(x + k * p as i64)
        })
    });
    report.push(tag("periodicity"), params.clone(), true, periodic);
    let multiplicative = (0..ni).all(|a| {
        (0..ni)
            .all(|b| fam.quartic.value(a * b % ni) == fam.quartic.value(a) * fam.quartic.value(b))
    });
    report.push(
        tag("multiplicativity"),
        params.clone(),
        true,
        multiplicative,
    );
    let squared =
        (0..ni).all(|x| fam.quartic.value(x) * fam.quartic.value(x) == fam.quadratic.value(x));
    report.push(tag("psi-squared-is-chi"), params.clone(), true, squared);
    report.push(
        tag("orthogonality"),
        params.clone(),
        "0+0i,0+0i",
        format!("{},{}", fam.quadratic.total(), fam.quartic.total()),
    );

    match jacobi_sum(&fam.quartic, &fam.quadratic) {
        Ok(j) => {
            let reduced = reduced_jacobi_sum(&fam);
            report.push(
                tag("jacobi-lift"),
                params.clone(),
                reduced.scale(m.p_pow_alpha_minus_one() as i64),
                j,
            );
            if alpha == 1 {
                report.push(tag("jacobi-norm"), params.clone(), p, j.norm());
            }
            report.push(
                tag("jacobi-k-conjugate-invariant"),
                params.clone(),
                jacobi_k(j),
                jacobi_sum(&fam.quartic.conj(), &fam.quadratic).map_or(i64::MIN, jacobi_k),
            );
        }
        Err(e) => report.push(tag("jacobi-sum"), params.clone(), "ok", e),
    }

    match decomposition_report(p, alpha) {
        Ok(r) => report.push(tag("decomposition"), params, true, r.passes()),
        Err(e) => report.push(tag("decomposition"), params, "ok", e),
    }
}

/// Runs the sweep sequentially; check order is canonical for given parameters.
pub fn run_sweep(params: &SweepParams) -> VerificationReport {
    let mut report = VerificationReport::default();
    sweep_admissibility(&mut report, params.max_n);
    sweep_structure(&mut report, params.max_n);
    sweep_witnesses(&mut report, params.max_n);
    if let Some(max_prime) = params.max_prime {
        let mut alphas = params.alphas.clone();
        alphas.sort_unstable();
        alphas.dedup();
        for p in (5..=max_prime).filter(|&p| p % 4 == 1 && is_prime(p)) {
            for &alpha in alphas.iter().filter(|&&a| a > 0) {
                sweep_prime_power(&mut report, p, alpha);
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witnesses_exist_mod_65() {
        let a = jacobi_symbol_witness(65).unwrap();
        assert_eq!(jacobi_symbol(a as i64, 65), 1);
        let (a, b) = non_square_pair_witness(65).unwrap();
        let sq = unit_squares(65);
        assert!(!sq.contains(&a) && !sq.contains(&b) && !sq.contains(&(a * b % 65)));
    }

    #[test]
    fn no_witness_on_prime_power() {
        // χ_1 agrees with squareness mod a prime
        assert_eq!(jacobi_symbol_witness(13), None);
    }

    #[test]
    fn degenerate_sweep_only_checks_n3() {
        let r = run_sweep(&SweepParams {
            max_n: 3,
            max_prime: None,
            alphas: vec![1],
        });
        assert_eq!(r.checks.len(), 1);
        assert_eq!(r.checks[0].name, "admissible(3)");
        assert!(r.all_pass());
    }

    #[test]
    fn small_sweep_passes() {
        let r = run_sweep(&SweepParams {
            max_n: 70,
            max_prime: Some(13),
            alphas: vec![1, 2],
        });
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:#?}");
        assert!(r
            .checks
            .iter()
            .any(|c| c.name == "admissible(10)" && c.expected == "true"));
        assert!(r.checks.iter().any(|c| c.name == "theorem2-trace(13^2)"));
    }

    #[test]
    fn report_is_deterministic() {
        let params = SweepParams {
            max_n: 30,
            max_prime: Some(5),
            alphas: vec![2, 1],
        };
        assert_eq!(run_sweep(&params), run_sweep(&params));
    }
}
