//! Residual of every catalogued closed form against every traveling-wave reduction.

use solitonlab::twode::consistency_matrix;

fn main() -> solitonlab::Result<()> {
    for vbar in [0.0, 0.5] {
        print!("{}", consistency_matrix(vbar)?.to_text());
        println!();
    }
    Ok(())
}
