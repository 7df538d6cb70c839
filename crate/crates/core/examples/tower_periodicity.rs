//! Albanese classes along the tower w^n = Π l_i are periodic in n, with period
//! the lcm of the orders of torsion points of the ray lying on components.

use albankit::arrangements::corpus;
use albankit::towers::{alexander_period, periodicity_violations, tower_levels, tower_period, Ray};

fn main() -> albankit::Result<()> {
    for arr in [corpus::ceva(), corpus::dual_flex(), corpus::hesse()] {
        let ray = Ray::diagonal(&arr);
        let period = tower_period(&ray)?;
        let levels = tower_levels(&ray, 3 * period.max(4))?;
        println!("{}: period {period}", arr.name.as_deref().unwrap_or("?"));
        for l in levels.iter().take(period as usize + 1) {
            println!("  n = {:<2} {}", l.n, l.semiabelian);
        }
        assert!(periodicity_violations(&levels, period).is_empty());
    }
    let alex = alexander_period(&[(3, 2)])?;
    println!(
        "roots of order 3 twice: period {}, table {:?}",
        alex.period,
        alex.table()
    );
    Ok(())
}
