//! Structured command output: one report shape shared by every subcommand,
//! rendered either as JSON or as aligned text.

use hyperct::bounds::BoundReport;
use hyperct::reduction::ResidualForm;
use hyperct::rnf::KernelShell;
use hyperct::telescoping::Telescoper;
use serde::Serialize;

/// Shift-reduced kernel numerator and denominator.
#[derive(Serialize)]
pub struct KernelJson {
    pub u: String,
    pub v: String,
}

/// The `a/b + q/v` part of the additive decomposition.
#[derive(Serialize)]
pub struct ResidualJson {
    pub a: String,
    pub b: String,
    pub q: String,
}

/// The operator `L = e_0 + e_1 S_x + ... + e_r S_x^r`.
#[derive(Serialize)]
pub struct TelescoperJson {
    pub order: usize,
    pub coefficients: Vec<String>,
}

/// Order bounds; entries are absent when the route does not apply.
#[derive(Serialize)]
pub struct BoundsJson {
    pub lower: Option<usize>,
    pub upper: usize,
    pub upper_closed_form: i64,
    pub b_az: Option<usize>,
    pub b_al: Option<usize>,
}

/// Everything a subcommand reports about one term.
#[derive(Serialize)]
pub struct Report {
    pub input: String,
    pub kernel: KernelJson,
    pub shell: String,
    pub residual: ResidualJson,
    pub telescoper: Option<TelescoperJson>,
    pub certificate: Option<String>,
    pub bounds: Option<BoundsJson>,
    pub status: String,
}

impl Report {
    /// Base report with the kernel, shell, and residual of a term; the
    /// telescoper, certificate, and bounds start empty and the status must
    /// still be chosen.
    pub fn new(input: String, ks: &KernelShell, r: &ResidualForm) -> Report {
        Report {
            input,
            kernel: KernelJson {
                u: format!("{}", ks.u),
                v: format!("{}", ks.v),
            },
            shell: format!("{}", ks.s),
            residual: ResidualJson {
                a: format!("{}", r.a),
                b: format!("{}", r.b),
                q: format!("{}", r.q),
            },
            telescoper: None,
            certificate: None,
            bounds: None,
            status: String::new(),
        }
    }

    pub fn set_telescoper(&mut self, tel: &Telescoper) {
        self.telescoper = Some(TelescoperJson {
            order: tel.order,
            coefficients: tel
                .coefficients
                .iter()
                .map(|c| format!("{c}"))
                .collect(),
        });
        self.certificate = Some(format!("{}", tel.certificate));
    }

    pub fn set_bounds(&mut self, b: &BoundReport) {
        self.bounds = Some(BoundsJson {
            lower: b.lower,
            upper: b.upper,
            upper_closed_form: b.upper_closed_form,
            b_az: b.apagodu_zeilberger,
            b_al: b.abramov_le,
        });
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            serde_json::to_string_pretty(self).expect("reports are plain data")
        } else {
            self.render_text()
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let mut line = |label: &str, value: String| {
            out.push_str(&format!("{label:<13}{value}\n"));
        };
        line("input:", self.input.clone());
        line(
            "kernel:",
            format!("u = {}, v = {}", self.kernel.u, self.kernel.v),
        );
        line("shell:", self.shell.clone());
        line(
            "residual:",
            format!(
                "a = {}, b = {}, q = {}",
                self.residual.a, self.residual.b, self.residual.q
            ),
        );
        if let Some(tel) = &self.telescoper {
            line(
                "telescoper:",
                format!(
                    "order {}, coefficients [{}]",
                    tel.order,
                    tel.coefficients.join(", ")
                ),
            );
        }
        if let Some(cert) = &self.certificate {
            line("certificate:", cert.clone());
        }
        if let Some(b) = &self.bounds {
            line(
                "bounds:",
                format!(
                    "lower {}, upper {} (closed form {}), b_az {}, b_al {}",
                    opt(b.lower),
                    b.upper,
                    b.upper_closed_form,
                    opt(b.b_az),
                    opt(b.b_al)
                ),
            );
        }
        line("status:", self.status.clone());
        out
    }
}

fn opt(v: Option<usize>) -> String {
    match v {
        Some(n) => n.to_string(),
        None => "-".into(),
    }
}
