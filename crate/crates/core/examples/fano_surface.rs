//! The Albanese of the Fano surface of lines on the Fermat cubic threefold is
//! E0^5; the Z/3 cover branched over the Ceva arrangement has the same class.
//! Local Albanese varieties of non-reduced triple points are blocks too.

use albankit::arrangements::{albanese_class, corpus, Granularity};
use albankit::p1covers::local_albanese_block;

fn main() -> albankit::Result<()> {
    let ceva = corpus::ceva();
    let (q, class, _) = albanese_class(&ceva, &ceva.full_spec(3)?, Granularity::Fine)?;
    println!("Ceva, Z/3: q = {q}, {}", class.render_named());

    for (a, n) in [([1, 1, 1], 3), ([1, 1, 3], 5), ([1, 2, 4], 7)] {
        let b = local_albanese_block(a[0], a[1], a[2], n)?;
        println!(
            "triple point with multiplicities {a:?}, n = {n}: {b} of dimension {}",
            b.dimension()
        );
    }
    Ok(())
}
