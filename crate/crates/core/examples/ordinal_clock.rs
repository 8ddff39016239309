//! Ordinals below ω^ω as run clocks: successor steps, limit jumps, and why
//! addition is not commutative.

use transflow::ordinals::Ordinal;

fn main() {
    let w = Ordinal::omega();
    let one = Ordinal::one();
    println!("1 + w = {}", one.add(&w));
    println!("w + 1 = {}", w.add(&one));

    // A clock that takes three successor steps, jumps to the next limit,
    // then jumps by w^2.
    let mut clock = Ordinal::zero();
    for _ in 0..3 {
        clock = clock.successor();
        println!("step  -> {clock}");
    }
    clock = clock.add(&w);
    println!("limit -> {clock}  (finite prefix absorbed)");
    clock = clock.add(&Ordinal::omega_pow(2));
    println!("w^2   -> {clock}");
    clock = clock.add(&Ordinal::finite(5));
    println!("+5    -> {clock}  degree {}", clock.degree());

    let parsed: Ordinal = "w^3*2 + w + 7".parse().unwrap();
    println!(
        "parsed {parsed}: terms {:?}, limit? {}",
        parsed.terms(),
        parsed.is_limit()
    );
    for k in 1..=4 {
        let bound = Ordinal::omega_pow(k);
        println!(
            "w^{k}: is a power of w with exponent {:?}; {} < {}: {}",
            bound.is_omega_power(),
            parsed,
            bound,
            parsed < bound
        );
    }
}
