//! Irregularity of the (Z/5)^5 cover of the plane branched over the Ceva
//! arrangement, by pencils and by summing depths over all 5^5 characters.

use albankit::arrangements::{albanese, corpus, AlbaneseOptions};

fn main() -> albankit::Result<()> {
    let ceva = corpus::ceva();
    let spec = ceva.full_spec(5)?;
    let opts = AlbaneseOptions {
        exhaustive: true,
        ..AlbaneseOptions::default()
    };
    let alb = albanese(&ceva, &spec, &opts)?;
    println!("q = {}", alb.q);
    println!("class: {}", alb.class.render());
    if let Some(ex) = &alb.exhaustive {
        println!("exhaustive: {} characters, q = {}", ex.characters, ex.q);
    }
    println!("{} character orbits of positive depth:", alb.orbits.len());
    for o in &alb.orbits {
        println!(
            "  {:?} -> {} on {}",
            o.representative,
            o.block,
            o.pencils.join(", ")
        );
    }
    Ok(())
}
