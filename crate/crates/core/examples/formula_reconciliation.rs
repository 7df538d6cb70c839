//! Three ways to count holomorphic forms in an eigenspace of a cyclic cover:
//! the fractional-part formula, floor(M/n) over the affine branch points, and
//! the support-restricted formula used everywhere else.

use albankit::p1covers::{eigenspace_table, h10_affine_floor, h10_cyclic_archinard, h10_exponents};

fn main() -> albankit::Result<()> {
    let (n, affine) = (5, [2u64, 2]);
    println!("y^{n} = x^2 (x-1)^2");
    for i in 1..n {
        let frac = h10_cyclic_archinard(n, &affine, i)?;
        let mut j: Vec<u64> = affine.iter().map(|&a| (n - i * a % n) % n).collect();
        j.push((n - j.iter().sum::<u64>() % n) % n);
        let floor = h10_affine_floor(n, &j[..2]);
        println!(
            "  i = {i}: fractional {frac}, floor {floor}, unified {}",
            h10_exponents(n, &j)
        );
    }
    for row in eigenspace_table(7, &[1, 2, 4])? {
        println!(
            "  Klein quartic, i = {}: h10 = {}, h01 = {}",
            row.i, row.h10, row.h01
        );
    }
    // unbranched over infinity: the fractional-part formula does not apply
    println!("{:?}", h10_cyclic_archinard(5, &[2, 3], 1).err());
    Ok(())
}
