//! Isotrivial family with fiber the genus-2 Jacobian of y^5 = x^2(x-1)^2 over
//! the Ceva (Z/5)^5 cover: no character orbit is shared, so the rank is 0.

use albankit::arrangements::{albanese, corpus, AlbaneseOptions};
use albankit::mordell::{mw_rank_report, mw_rank_zero_test, OrbitSet};

fn main() -> albankit::Result<()> {
    let ceva = corpus::ceva();
    let alb = albanese(&ceva, &ceva.full_spec(5)?, &AlbaneseOptions::default())?;
    let alb_orbits = OrbitSet::from_albanese(&alb, &ceva.lines)?;

    // the first five summands act on the curve through ζ, the sixth trivially
    let mut action = OrbitSet::new(5, ceva.lines.clone());
    for a in 1..5 {
        action.add(&[a, a, a, a, a, 0], 1, None, None)?;
    }
    println!("rank zero: {}", mw_rank_zero_test(&alb_orbits, &action)?);
    print!("{}", mw_rank_report(&alb_orbits, &action)?);

    // an action through a character of the quadric pencil does meet Alb
    let mut shared = OrbitSet::new(5, ceva.lines.clone());
    shared.add(&[1, 1, 3, 1, 1, 3], 1, None, None)?;
    print!("{}", mw_rank_report(&alb_orbits, &shared)?);
    Ok(())
}
