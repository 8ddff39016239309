//! Tampered certificates are refused with a named reason and the run state
//! stays at clock 0 with the zero flow.

use transflow::constructions::{euclid_pattern, euclidean_network, Side};
use transflow::engine::{
    run, Decision, PhaseCertificate, RunOptions, RunState, Strategy, StrategyError,
};
use transflow::exactfield::QuadValue;
use transflow::flownet::{Flow, Network};

struct Submit(Option<PhaseCertificate>);

impl Strategy for Submit {
    fn name(&self) -> String {
        "submit".into()
    }
    fn decide(&mut self, _: &RunState<'_>) -> Result<Decision, StrategyError> {
        Ok(self
            .0
            .take()
            .map_or(Decision::Stop, |c| Decision::LimitPhase(Box::new(c))))
    }
}

fn attempt(label: &str, n: &Network, cert: PhaseCertificate) {
    let r = run(
        n,
        &Flow::zero(n),
        &mut Submit(Some(cert)),
        &RunOptions::default(),
    )
    .unwrap();
    let untouched = r.final_flow == Flow::zero(n) && r.final_clock.is_zero();
    println!(
        "{label:<22} {}  (zero flow at clock 0: {untouched})",
        r.halt.describe()
    );
}

fn main() {
    let (a, b) = (QuadValue::golden(), QuadValue::one(5));
    let (n, g) = euclidean_network(&a, &b).unwrap();
    let pattern = euclid_pattern(&n, &g, Side::A, &a, &b).unwrap();
    let good = PhaseCertificate::from_pattern(&Flow::zero(&n), pattern).unwrap();
    let nudge = QuadValue::frac(1, 1000, 5);

    attempt("honest", &n, good.clone());

    let mut c = good.clone();
    let v = c.declared_limit.get(g.e_a) - &nudge;
    c.declared_limit.set(g.e_a, v);
    attempt("limit off by 1/1000", &n, c);

    let mut c = good.clone();
    c.declared_limit.set(g.e_a, &n.arc(g.e_a).cap + &nudge);
    attempt("limit over capacity", &n, c);

    let mut c = good.clone();
    c.pattern.ratio = QuadValue::one(5);
    attempt("ratio 1", &n, c);

    let mut c = good.clone();
    c.pattern.ratio = QuadValue::golden().recip().unwrap();
    attempt("ratio 1/phi", &n, c);

    let mut c = good;
    c.probe_rounds = 1;
    attempt("one probe round", &n, c);
}
