//! Exact rational series of the scalar special functions, their mod-4
//! support patterns, and the exactly-zero residuals of their differential
//! systems.
//!
//! ```bash
//! cargo run --example scalar_series
//! ```

use dynlforge::catalog::{scalar_ode_residual, scalar_series, OdeSystem, SeriesName};

fn main() {
    let order = 24;
    for (label, name, rem) in [
        ("F ", SeriesName::F, 3usize),
        ("G ", SeriesName::G, 1),
        ("H ", SeriesName::H, 3),
        ("F*", SeriesName::FStar, 1),
        ("G*", SeriesName::GStar, 2),
        ("H*", SeriesName::HStar, 3),
    ] {
        let s = scalar_series(name, order);
        println!(
            "{label}: support {:?} (all ≡ {rem} mod 4: {})",
            s.support(),
            s.support_is_mod4(rem)
        );
    }

    let cothm = scalar_series(SeriesName::Cothm, 6);
    println!(
        "\ncoth z − 1/z = ({:?})z + ({:?})z³ + ({:?})z⁵ + ...",
        cothm.coeff(1).c,
        cothm.coeff(3).c,
        cothm.coeff(5).c
    );

    println!("\ndifferential-system residuals through order {order} (exact rational):");
    for (name, sys) in [
        ("F/G/H      ", OdeSystem::Fgh),
        ("F*/G*/H*   ", OdeSystem::FghStar),
        ("coth(x − a)", OdeSystem::EvCoth),
        ("1/(coth−a) ", OdeSystem::EvLmatrix),
    ] {
        println!("  {name}: {}", scalar_ode_residual(sys, order));
    }
}
