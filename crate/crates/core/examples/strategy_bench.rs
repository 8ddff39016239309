//! Every strategy on every standard network, as the `bench` subcommand
//! prints it, followed by the clock-degree table for the glued family.

use transflow::cli::{bench_rows, StrategyName};

fn main() {
    let specs: Vec<String> = [
        "euclidean:phi:1",
        "euclidean:8:5",
        "glued:1:phi:1",
        "glued:2:phi:1",
        "glued:3:phi:1",
    ]
    .map(String::from)
    .to_vec();
    let strategies = [
        StrategyName::Euclidean,
        StrategyName::ShortestPath,
        StrategyName::MaxBottleneck,
        StrategyName::SeededRandom,
        StrategyName::Glued,
    ];
    let table = bench_rows(&specs, &strategies, 0, 5_000, false, false).expect("standard suite");
    print!("{}", table.to_text());
}
