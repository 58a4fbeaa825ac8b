//! Scratch probe for paper computations (development aid, not shipped API).

use omega1_core::algebra::Rat;
use omega1_core::geometry::{
    ad_closure, cauchy_characteristics, derived_flag, reduce_along, Distribution, FlagKind,
    VectorField,
};
use omega1_core::jet::{catalog, CatalogParams};

fn main() {
    let kp = |k: usize| CatalogParams {
        k: Some(k),
        ..Default::default()
    };
    let kmp = |k: usize, m: usize| CatalogParams {
        k: Some(k),
        m: Some(m),
        ..Default::default()
    };

    // --- E_3: Cauchy characteristic and reduction growth ---
    let e3 = catalog("ek", &kp(3)).unwrap();
    let eq = e3.equation().unwrap();
    let c = eq.cartan_distribution().unwrap();
    let ch = cauchy_characteristics(&c).unwrap();
    println!("E3 Cauchy rank = {}", ch.generic_rank());
    for g in ch.generators() {
        println!("  xi = {g}");
    }
    let red = reduce_along(&c, &ch, &vec![("y".into(), Rat::zero())]).unwrap();
    println!("E3 reduction chart: {}", red.chart);
    let weak = derived_flag(&red.distribution, FlagKind::Weak, 12).unwrap();
    let strong = derived_flag(&red.distribution, FlagKind::Strong, 12).unwrap();
    println!("E3 weak growth {:?} strong {:?}", weak.growth_vector, strong.growth_vector);

    // --- Goursat pair ---
    let gp = catalog("s2-goursat", &CatalogParams::default()).unwrap();
    let eq = gp.equation().unwrap();
    let c = eq.cartan_distribution().unwrap();
    let ch = cauchy_characteristics(&c).unwrap();
    println!("\nGoursat Cauchy rank = {}", ch.generic_rank());
    let red = reduce_along(&c, &ch, &vec![("y".into(), Rat::zero())]).unwrap();
    let weak = derived_flag(&red.distribution, FlagKind::Weak, 12).unwrap();
    let strong = derived_flag(&red.distribution, FlagKind::Strong, 12).unwrap();
    println!("Goursat weak {:?} strong {:?}", weak.growth_vector, strong.growth_vector);

    // --- E2+E3 pinned instance ---
    let m = catalog("s3-e2e3-generic", &CatalogParams::default()).unwrap();
    let eq = m.equation().unwrap();
    let c = eq.cartan_distribution().unwrap();
    let ch = cauchy_characteristics(&c).unwrap();
    println!("\nE2E3 Cauchy rank = {}", ch.generic_rank());
    for g in ch.generators() {
        println!("  xi = {g}");
    }
    let red = reduce_along(&c, &ch, &vec![("y".into(), Rat::zero())]).unwrap();
    let weak = derived_flag(&red.distribution, FlagKind::Weak, 12).unwrap();
    let strong = derived_flag(&red.distribution, FlagKind::Strong, 12).unwrap();
    println!(
        "E2E3(F=s^2/2,A=s,B=0) weak {:?} strong {:?} (chart dim {})",
        weak.growth_vector,
        strong.growth_vector,
        red.chart.dim()
    );

    // --- R_3^2 pipeline ---
    let r32 = catalog("rkm", &kmp(3, 2)).unwrap();
    let eq = r32.equation().unwrap();
    let c = eq.cartan_distribution().unwrap();
    let chart = eq.chart().clone();
    let pi = Distribution::new(
        &chart,
        vec![
            VectorField::coordinate(&chart, "zeta1").unwrap(),
            VectorField::coordinate(&chart, "zeta2").unwrap(),
        ],
    )
    .unwrap();
    let closure = ad_closure(&c, &pi, 12).unwrap();
    println!("\nR32 C rank {} closure rank {}", c.generic_rank(), closure.generic_rank());
    let red = reduce_along(
        &closure,
        &pi,
        &vec![("zeta1".into(), Rat::zero()), ("zeta2".into(), Rat::zero())],
    )
    .unwrap();
    println!("R32 tilde chart dim {} rank {}", red.chart.dim(), red.distribution.generic_rank());
    // xi = Dy - lam Dx on the quotient: compute from the reduced generators.
    let tilde = &red.distribution;
    let tchart = red.chart.clone();
    // Build Dx, Dy on the quotient directly.
    let dx = red.projector.push(&eq.total_derivative(0).unwrap()).unwrap();
    let dy = red.projector.push(&eq.total_derivative(1).unwrap()).unwrap();
    let lam = tchart.coord_fun("lam").unwrap();
    let xi = dy.sub(&dx.scale(&lam)).unwrap();
    // Is xi Cauchy for tilde?
    let mut all_in = true;
    for g in tilde.generators() {
        let b = xi.lie_bracket(g).unwrap();
        if !tilde.contains(&b).unwrap() {
            all_in = false;
            println!("  [xi, g] escapes for g = {g}");
            println!("    bracket = {b}");
        }
    }
    println!("R32 xi Cauchy for tilde: {all_in}");
    let ch_tilde = cauchy_characteristics(tilde).unwrap();
    println!("R32 Ch(tilde) rank = {}", ch_tilde.generic_rank());
    // xi-closure then quotient:
    let xi_dist = Distribution::new(&tchart, vec![xi.clone()]).unwrap();
    let closed = ad_closure(tilde, &xi_dist, 12).unwrap();
    println!("R32 xi-closure rank = {}", closed.generic_rank());
    let mut all_in2 = true;
    for g in closed.generators() {
        let b = xi.lie_bracket(g).unwrap();
        if !closed.contains(&b).unwrap() {
            all_in2 = false;
        }
    }
    println!("R32 xi Cauchy for xi-closure: {all_in2}");
    let red2 = reduce_along(&closed, &xi_dist, &vec![("y".into(), Rat::zero())]).unwrap();
    println!(
        "R32 Delta_+ chart dim {} rank {}",
        red2.chart.dim(),
        red2.distribution.generic_rank()
    );
    // Mechanical slice of tilde itself (the spec example): rank?
    let red3 = reduce_along(tilde, &xi_dist, &vec![("y".into(), Rat::zero())]).unwrap();
    println!("R32 mechanical slice rank = {}", red3.distribution.generic_rank());
    // Compare with 2nd derived of Delta = <Dx|, dlam>.
    let dxs = red2.projector.push(&dx).unwrap();
    let dlam = VectorField::coordinate(&red2.chart, "lam").unwrap();
    let delta = Distribution::new(&red2.chart, vec![dxs, dlam]).unwrap();
    let wf = derived_flag(&delta, FlagKind::Weak, 4).unwrap();
    println!(
        "Delta weak ranks {:?}; Delta_+ == Delta_3: {}",
        wf.ranks(),
        red2.distribution.spans_equal(&wf.steps[2]).unwrap()
    );
}
