use curvelab::fillingsystem::*;
use curvelab::surgery::*;
fn main() {
    let g = genus2_std();
    let d = &g.deco;
    let v = g.pushoff(1, 0).unwrap();
    let tw = dehn_twist(d, &v, "u", 1).unwrap();
    let k = geometric_intersection(d, &tw, &v).unwrap();
    println!("k = {k}");
    match zero_edge_path(d, &tw, &v) {
        Ok(p) => println!("path len {}", p.length()),
        Err(e) => println!("ERR: {e}"),
    }
}
