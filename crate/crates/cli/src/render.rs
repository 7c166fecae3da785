use std::fmt::Write;

use chernorder::bernoulli::NkValue;
use chernorder::bounds::reference::Comparison;
use chernorder::bounds::{Ledger, Mechanism};
use chernorder::graded_ring::{format_rational, ExponentVector, GradedPoly};
use chernorder::verify::VerifyReport;
use chernorder::arith::Rational;
use num_traits::Zero;
use serde_json::json;

use crate::Format;

pub(crate) fn nk_table(rows: &[(NkValue, Rational)], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("k,n_k,factorization,B_2k\n");
            for (nk, b) in rows {
                writeln!(out, "{},{},{},{}", nk.k, nk.value.value(), nk.value.compact(), format_rational(b)).unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(nk, b)| {
                    json!({
                        "k": nk.k,
                        "n_k": nk.value.value().to_string(),
                        "factorization": nk.value.compact(),
                        "B_2k": format_rational(b),
                        "provenance": nk.provenance,
                    })
                })
                .collect();
            out = crate::json_line(&serde_json::Value::Array(rows));
        }
        Format::Text => {
            writeln!(out, "{:>3}  {:>8}  {:<18}  B_2k", "k", "n_k", "factorization").unwrap();
            for (nk, b) in rows {
                writeln!(out, "{:>3}  {:>8}  {:<18}  {}", nk.k, nk.value.value().to_string(), nk.value.to_string(), format_rational(b))
                    .unwrap();
            }
        }
    }
    out
}

pub(crate) fn todd(td: &GradedPoly, monomial: Option<&ExponentVector>, format: Format) -> String {
    match (monomial, format) {
        (None, Format::Json) => {
            crate::json_line(&json!({ "truncation": td.truncation(), "todd": td.to_text("c") }))
        }
        (None, _) => format!("{}\n", td.to_text("c")),
        (Some(m), _) => {
            let q = td.coefficient(m);
            let name = GradedPoly::monomial(m.weight(), m.clone(), Rational::from_integer(1.into())).to_text("c");
            let verdict = if q.is_zero() { "zero" } else { "nonzero" };
            if format == Format::Json {
                crate::json_line(&json!({
                    "truncation": td.truncation(),
                    "monomial": name,
                    "coefficient": format_rational(&q),
                    "verdict": verdict,
                }))
            } else {
                format!("{name} = {} ({verdict})\n", format_rational(&q))
            }
        }
    }
}

pub(crate) fn derham_newton(g: u32, classes: &[(u32, GradedPoly)], format: Format) -> String {
    if format == Format::Json {
        let entries: Vec<_> =
            classes.iter().map(|(k, c)| json!({ "class": format!("c{k}(H)"), "newton": c.to_text("N") })).collect();
        return crate::json_line(&json!({ "g": g, "basis": "newton", "classes": entries }));
    }
    let mut out = String::new();
    for (k, c) in classes {
        writeln!(out, "c{k}(H) = {}", c.to_text("N")).unwrap();
    }
    out
}

fn mechanism(m: Mechanism) -> &'static str {
    match m {
        Mechanism::LambdaTodd => "lambda-todd",
        Mechanism::Fzip => "fzip",
        Mechanism::EvdgTop => "evdg-top",
    }
}

pub(crate) fn ledger(ledger: &Ledger) -> String {
    let ctx = &ledger.context;
    let mut out = String::new();
    write!(out, "g = {}, d = {}, threshold 2g+d+1 = {}", ctx.g, ctx.d, ctx.threshold).unwrap();
    match ctx.char_p {
        Some(p) => write!(out, ", characteristic {p}").unwrap(),
        None => out.push_str(", characteristic 0"),
    }
    if let Some(n) = ctx.level_n {
        write!(out, ", level {n}").unwrap();
    }
    out.push('\n');
    for e in &ledger.entries {
        let indices: Vec<String> = e.bernoulli_indices.iter().map(|n| n.to_string()).collect();
        let prime = if e.annihilator.is_prime() { " (prime)" } else { "" };
        writeln!(
            out,
            "c_{}(H)  i = {}  B_n for n in {{{}}}  annihilator {} = {}{}",
            2 * e.i,
            e.i,
            indices.join(", "),
            e.annihilator.value(),
            e.annihilator,
            prime
        )
        .unwrap();
        for pb in &e.primes {
            write!(out, "    {}: bound {} via {} (lambda-todd {}", pb.ell, pb.bound, mechanism(pb.source), pb.lambda_todd)
                .unwrap();
            if let Some(f) = pb.fzip {
                write!(out, ", fzip {f}").unwrap();
            }
            if let Some(t) = pb.evdg_top {
                write!(out, ", top class {t}").unwrap();
            }
            out.push(')');
            if let Some(c) = &pb.order_condition {
                let rel = if c.divides { "divides" } else { "does not divide" };
                write!(out, "; ord_{}({}) = {} {rel} {} (gcd(2i, q-1) = {})", c.q, c.p, c.order, c.two_i, c.gcd).unwrap();
            }
            out.push('\n');
        }
        if let Some(f) = &e.fzip {
            write!(out, "    p^{} - 1 = {} = {}", 2 * e.i, f.value, f.factors).unwrap();
            for c in &f.composites {
                write!(out, " · [{c}]").unwrap();
            }
            out.push('\n');
        }
        let [a, b] = &e.evdg.candidates;
        write!(out, "    order candidates n_{} = {}, n_{}/2 = {}", e.i, a.value(), e.i, b.value()).unwrap();
        if let Some(t) = &e.evdg.top_class {
            write!(out, "; top class divisor {}", t).unwrap();
        }
        out.push('\n');
        if let Some(mr) = &e.mr {
            if !mr.is_empty() {
                let parts: Vec<String> = mr.iter().map(|m| format!("{}^{}", m.ell, m.bound)).collect();
                writeln!(out, "    mr: {}", parts.join(", ")).unwrap();
            }
        }
    }
    for n in &ledger.notes {
        match n.i {
            Some(i) => writeln!(out, "note [{}] i = {}: {}", n.code, i, n.text).unwrap(),
            None => writeln!(out, "note [{}]: {}", n.code, n.text).unwrap(),
        }
    }
    out
}

pub(crate) fn comparison(c: &Comparison) -> String {
    let mut out = String::new();
    out.push_str("\ncomparison with the worked example\n");
    let same = if c.threshold_immaterial { "identical" } else { "different" };
    writeln!(
        out,
        "threshold: as printed in paper {}, strict Proposition {}; annihilators {same} at both",
        c.listed_threshold, c.threshold
    )
    .unwrap();
    for r in &c.rows {
        let factors: Vec<String> = r.listed_factors.iter().map(|f| f.to_string()).collect();
        let listed = match r.listed_index {
            Some(n) => format!("num(B_{n}) = {} = {}", r.listed_numerator, factors.join("·")),
            None => format!("{} = {}", r.listed_numerator, factors.join("·")),
        };
        let actual = match r.actual_index {
            Some(n) => format!("num(B_{n})"),
            None => "no B_n".to_string(),
        };
        let fac = if r.factorization_correct { "factorization correct" } else { "factorization WRONG" };
        let verdict = if r.agrees { "agrees" } else { "shifted" };
        writeln!(
            out,
            "c_{}(H): as printed in paper {listed} [{actual}, {fac}]; strict Proposition num(B_{}) = {}, annihilator {}; {verdict}",
            2 * r.i,
            2 * r.i,
            r.strict_numerator,
            r.strict_annihilator.value()
        )
        .unwrap();
    }
    let cands: Vec<String> = c.top_candidates.iter().map(|q| q.to_string()).collect();
    writeln!(out, "top-class candidates as printed in paper: {}", cands.join(", ")).unwrap();
    let t = &c.top_class;
    let closed = if t.listed_closed_form_correct { "equal" } else { "not equal" };
    writeln!(
        out,
        "top-class divisor: as printed in paper {} = {} ({closed} to {}); strict Proposition {} = {}{}",
        t.listed_formula,
        t.listed_value.value(),
        t.listed_closed_form,
        t.theorem_formula,
        t.theorem_value.value(),
        if t.conflict { "; conflict" } else { "" }
    )
    .unwrap();
    out
}

pub(crate) fn verify(report: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{mark} {} {}: {}", c.suite, c.name, c.detail).unwrap();
        if let Some(ce) = &c.counterexample {
            writeln!(out, "    counterexample: {ce}").unwrap();
        }
    }
    let passed = report.checks.iter().filter(|c| c.passed).count();
    writeln!(out, "{passed}/{} checks passed", report.checks.len()).unwrap();
    out
}
