//! Exact arithmetic in Q(√5): the golden ratio, its powers, exact order and
//! the commensurability test that decides whether Euclid halts.

use transflow::exactfield::QuadValue;

fn main() {
    let phi = QuadValue::golden();
    let one = QuadValue::one(5);
    println!("phi          = {phi}  (~{})", phi.to_decimal(20));
    println!("phi^2        = {}", &phi * &phi);
    println!("phi + 1      = {}", &phi + &one);
    println!("1/phi        = {}", phi.recip().unwrap());
    println!("phi^-10      = {}", phi.pow(-10));
    println!("conjugate    = {}  norm {}", phi.conjugate(), phi.norm());

    // Fibonacci ratios approach phi from alternating sides; comparisons are
    // exact, never floating point.
    let (mut a, mut b) = (1i64, 1i64);
    for _ in 0..8 {
        let r = QuadValue::frac(b, a, 5);
        let side = if r < phi { "below" } else { "above" };
        println!("F(n+1)/F(n) = {b}/{a} is {side} phi");
        (a, b) = (b, a + b);
    }

    let sum = QuadValue::parse("3 + 1*sqrt(5)", 5).unwrap();
    println!(
        "2*phi^2 == 3+sqrt5: {}",
        (&(&phi * &phi) + &(&phi * &phi)) == sum
    );
    println!("phi, 1 commensurable: {}", phi.commensurable(&one).unwrap());
    let eight = QuadValue::int(8, 5);
    println!(
        "8, 5 commensurable:   {}",
        eight.commensurable(&QuadValue::int(5, 5)).unwrap()
    );
    match QuadValue::parse("1 2", 5) {
        Ok(v) => println!("unexpected parse: {v}"),
        Err(e) => println!("\"1 2\" rejected: {e}"),
    }
}
