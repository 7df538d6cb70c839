//! Jacobians of Fermat curves x^n + y^n = z^n, viewed as (Z/n)^2-covers of the
//! line branched at three points, split into cyclic blocks.

use albankit::charkit::{numbered_sites, GroupSpec};
use albankit::oracle::euler_genus_oracle;
use albankit::p1covers::decompose_abelian_cover;

fn main() -> albankit::Result<()> {
    for n in [3, 4, 5, 6, 7] {
        let spec = GroupSpec::full(n, numbered_sites(3))?;
        let class = decompose_abelian_cover(&spec)?;
        let genus = euler_genus_oracle(&spec)?;
        println!("n = {n}: genus {genus}");
        println!("  {}", class.render_named());
        for (factor, mult) in class.entries() {
            if let Some(name) = factor.as_block().and_then(|b| b.name()) {
                println!("  {} x{mult}: {name}", factor.label());
            }
        }
        assert_eq!(class.dimension(), genus);
    }
    Ok(())
}
