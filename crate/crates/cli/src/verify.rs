use clap::ValueEnum;

use mvlab::agn::{a_alt, a_direct, build_table, check_reference, Method};
use mvlab::exact::{int, ipow};
use mvlab::genus::{
    agn_from_series, coeffs_c, kazarian_c, u_direct, u_from_tilde, verify_functional_eqs,
};
use mvlab::volumes::{cg_seq, lambda_g_value, volume, volume_closed_g0, volume_closed_g1};

use crate::values::{Case, VerifyOut};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Published a_{g,n}, g <= 4, n <= 6.
    Table1,
    /// Direct, alternating and series a_{g,n} agree; both u recursions agree.
    Paths,
    /// Functional equations on a truncated window.
    Funceq,
    /// Closed forms of genus-0 and genus-1 volumes.
    Closed,
    /// C_{g,g} against the lambda_g formula.
    Lambda,
    /// C_{g,0} against the c_g recursion.
    Iz,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Paths => "paths",
            Suite::Funceq => "funceq",
            Suite::Closed => "closed",
            Suite::Lambda => "lambda",
            Suite::Iz => "iz",
        }
    }

    fn default_gmax(self) -> usize {
        match self {
            Suite::Table1 => 4,
            Suite::Paths => 15,
            Suite::Funceq => 4,
            Suite::Closed => 1,
            Suite::Lambda | Suite::Iz => 20,
        }
    }
}

fn case(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Case {
    Case {
        detail: detail.into(),
        name: name.into(),
        pass,
    }
}

pub fn run(suite: Suite, gmax: Option<usize>, nmax: Option<usize>) -> anyhow::Result<VerifyOut> {
    let gmax = gmax.unwrap_or(suite.default_gmax());
    let mut cases = Vec::new();
    let summary = match suite {
        Suite::Table1 => {
            let table = build_table(4, 6, Method::Direct)?;
            let (ok, total) = check_reference(&table);
            cases.push(case(
                "a_{g,n}, g <= 4, n <= 6",
                ok == total,
                format!("{ok}/{total}"),
            ));
            format!("{ok}/{total} entries match")
        }
        Suite::Paths => {
            let nmax = nmax.unwrap_or(8);
            for g in 0..=gmax {
                for n in 0..=nmax {
                    let d = a_direct(g, n);
                    let s = agn_from_series(g, n);
                    let mut pass = d == s;
                    let mut detail = format!("direct {d}, series {s}");
                    if n >= 2 {
                        let a = a_alt(g, n)?;
                        pass &= a == d;
                        detail.push_str(&format!(", alt {a}"));
                    }
                    cases.push(case(format!("a_{{{g},{n}}}"), pass, detail));
                }
                let same_u = u_direct(g) == u_from_tilde(g);
                cases.push(case(format!("u^[{g}]"), same_u, "direct vs. via u~"));
                if g >= 1 {
                    let u = u_from_tilde(g);
                    let gi = g as i64;
                    let expected: Vec<_> = (0..=gi).map(|j| u.coeff(-(5 * gi - 1 - j))).collect();
                    let pass = kazarian_c(g)? == expected;
                    cases.push(case(
                        format!("kazarian c_{{{g},j}}"),
                        pass,
                        "vs. coefficients of u",
                    ));
                }
            }
            passed_summary(&cases)
        }
        Suite::Funceq => {
            let nx = nmax.unwrap_or(8);
            let report = verify_functional_eqs(nx, gmax)?;
            for r in &report.residuals {
                cases.push(case(
                    format!("{} x^{} eps^{}", r.equation, r.x_pow, r.eps_pow),
                    false,
                    format!("residual {}", r.value),
                ));
            }
            cases.push(case(
                format!("window x^0..x^{nx}, eps up to genus {gmax}"),
                report.pass,
                format!("{} coefficients per equation", report.checked),
            ));
            format!(
                "{} nonzero residuals among {} coefficients per equation",
                report.residuals.len(),
                report.checked
            )
        }
        Suite::Closed => {
            let nmax = nmax.unwrap_or(15);
            for n in 3..=nmax {
                let (v, c) = (volume(0, n)?, volume_closed_g0(n)?);
                cases.push(case(format!("Vol(0,{n})"), v == c, v.to_string()));
            }
            for n in 1..=nmax {
                let (v, c) = (volume(1, n)?, volume_closed_g1(n)?);
                cases.push(case(format!("Vol(1,{n})"), v == c, v.to_string()));
            }
            passed_summary(&cases)
        }
        Suite::Lambda => {
            for g in 2..=gmax.max(2) {
                let (l, c) = (lambda_g_value(g)?, coeffs_c(g)?.c[g].clone());
                cases.push(case(format!("C_{{{g},{g}}}"), l == c, l.to_string()));
            }
            passed_summary(&cases)
        }
        Suite::Iz => {
            cases.push(case("c_2", cg_seq(2) == int(98), cg_seq(2).to_string()));
            cases.push(case("c_3", cg_seq(3) == int(19600), cg_seq(3).to_string()));
            for g in 2..=gmax.max(2) {
                let gi = g as i64;
                let iz = cg_seq(g) / (ipow(24, gi) * int((5 * gi - 3) * (5 * gi - 5)));
                let c = coeffs_c(g)?.c[0].clone();
                cases.push(case(format!("C_{{{g},0}}"), iz == c, iz.to_string()));
            }
            passed_summary(&cases)
        }
    };
    let pass = cases.iter().all(|c| c.pass);
    Ok(VerifyOut {
        cases,
        pass,
        suite: suite.name().to_string(),
        summary,
    })
}

fn passed_summary(cases: &[Case]) -> String {
    let ok = cases.iter().filter(|c| c.pass).count();
    format!("{ok}/{} checks pass", cases.len())
}
