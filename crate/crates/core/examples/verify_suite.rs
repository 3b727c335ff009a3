//! Run a verification suite from code and print its JSON-lines report.

use morava_s2::cli::{verify, Config};

fn main() -> Result<(), morava_s2::Error> {
    let suite = std::env::args().nth(1).unwrap_or_else(|| "lie".to_string());
    let cfg = Config { trials: 50, ..Config::default() };
    let report = verify(&suite, &cfg)?;
    print!("{}", report.to_jsonl(&suite));
    Ok(())
}
