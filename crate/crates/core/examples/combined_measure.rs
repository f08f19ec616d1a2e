//! How the gated combination reacts to each component.

use relmix::combine::{ew, ewc, sigmoid, CombineParams, PairFeatures};

fn main() {
    let p = CombineParams::tuned_ewc();
    println!("params {:?}", p.to_array());
    println!("gate at m: {:.3}", sigmoid(p.m, p.m, p.s));

    println!("{:>6} {:>6} {:>6} {:>8} {:>8}", "esa", "wnp", "cxi", "ew", "ewc");
    for (esa, wnp, cxi) in [(0.05, 0.1, 0.0), (0.05, 1.0, 0.0), (0.05, 0.1, 0.2), (0.3, 0.5, 0.05), (0.6, 1.0, 0.3)] {
        println!(
            "{esa:>6.2} {wnp:>6.2} {cxi:>6.2} {:>8.4} {:>8.4}",
            ew(esa, wnp, &p),
            ewc(esa, wnp, cxi, &p)
        );
    }

    let f = PairFeatures { esa: 0.2, wnp: 0.5, colloc_direct: 0.04, colloc_inverse: 0.01 };
    println!("features {f:?}: C_xi {:.4}, ewc {:.4}", f.cxi(p.xi), f.ewc(&p));
    println!("identity ewc equals esa: {}", f.ewc(&CombineParams::identity()) == f.esa);
}
