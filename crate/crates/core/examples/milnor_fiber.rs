//! Milnor fiber of the Ceva arrangement: the cyclic cover w^6 = Π l_i of the
//! complement has a semi-abelian Albanese 0 -> (C*)^5 -> Alb -> E0 -> 0.

use albankit::arrangements::{corpus, semiabelian_albanese, unramified_h1_rank};

fn main() -> albankit::Result<()> {
    let ceva = corpus::ceva();
    let spec = ceva.diagonal_spec(6)?;
    println!("b1 = {}", unramified_h1_rank(&ceva, &spec)?);
    println!("{}", semiabelian_albanese(&ceva, &spec)?);

    let df = corpus::dual_flex();
    let spec = df.diagonal_spec(3)?;
    println!("dual-flex, Z/3: {}", semiabelian_albanese(&df, &spec)?);
    Ok(())
}
