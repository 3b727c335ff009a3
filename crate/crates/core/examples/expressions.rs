//! Parse, print and evaluate expressions over the order.

use morava_s2::cli::{expand, parse_expr};

fn main() -> Result<(), morava_s2::Error> {
    let inputs = ["alpha", "(1+2*w)^-1 * (1 - alpha*S)", "comm(i, alpha)", "conj(w, i) - j", "-i^2", "pi^-1"];
    for src in inputs {
        let ast = parse_expr(src)?;
        println!("{src:<30} parses as {ast:<30} = {}", expand(src, 8)?);
    }
    if let Err(e) = parse_expr("alpha * (i + ") {
        println!("error: {e}");
    }
    Ok(())
}
