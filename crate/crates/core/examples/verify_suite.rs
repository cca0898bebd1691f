//! Runs the verification suite on a config given inline.

use hilbert_lab::{parse_domain_config, run_suite, Check, SuiteOptions};

fn main() -> hilbert_lab::Result<()> {
    let config = parse_domain_config(
        "# x^2/2 + (y-1)^2 < 1, normalized at the origin
         kind=ellipse semi_axes=1.4142135623730951,1 center=0,1
         o=0,1 phi_p=-1.5707963267948966",
    )?;
    println!("{}", config.render());
    let out = run_suite(&config, &Check::ALL, &SuiteOptions::default(), None)?;
    print!("{}", out.report.render_text());
    Ok(())
}
