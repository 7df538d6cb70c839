//! Hesse arrangement, Z/3 cover: ten pencils with four fibers each give a
//! genus-10 Jacobian, 54 pencils with three fibers give E0.

use albankit::arrangements::{albanese_class, corpus, Granularity};
use albankit::charkit::{numbered_sites, GroupSpec};
use albankit::oracle::euler_genus_oracle;

fn main() -> albankit::Result<()> {
    let hesse = corpus::hesse();
    let spec = hesse.full_spec(3)?;
    let (q, coarse, _) = albanese_class(&hesse, &spec, Granularity::Coarse)?;
    println!("coarse: {} (dimension {q})", coarse.render_named());
    let (_, fine, _) = albanese_class(&hesse, &spec, Granularity::Fine)?;
    println!("fine: {} distinct factors", fine.len());
    let four_points = GroupSpec::full(3, numbered_sites(4))?;
    println!(
        "genus of the 4-point Z/3 cover: {}",
        euler_genus_oracle(&four_points)?
    );
    Ok(())
}
