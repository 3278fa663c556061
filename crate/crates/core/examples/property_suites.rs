//! A short seeded run of the property suites over random data.

fn main() {
    let cases = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(20);
    let report = neron_toric::verify::run_suites(1, cases);
    print!("{}", report.to_text());
}
