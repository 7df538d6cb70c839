//! The dual of the Hesse configuration: the diagonal character of order 3 sits
//! on four pencils with depth 2, so two of the sixteen E0 copies are removed.

use albankit::arrangements::{albanese, corpus, AlbaneseOptions};

fn main() -> albankit::Result<()> {
    let mut df = corpus::dual_flex();
    for n in [3, 5] {
        let alb = albanese(&df, &df.full_spec(n)?, &AlbaneseOptions::default())?;
        println!("n = {n}: q = {}, {}", alb.q, alb.class.render_named());
    }

    // without the jumping table every pencil counts its own copy
    df.jumping.clear();
    let naive = albanese(&df, &df.full_spec(3)?, &AlbaneseOptions::default())?;
    println!("ignoring the jump: {}", naive.class.render_named());
    Ok(())
}
