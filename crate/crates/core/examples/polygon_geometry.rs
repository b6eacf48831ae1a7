//! Lattice polygons: hulls, Pick accounting and unimodular equivalence.

use toric_codes::lattice::{convex_hull, lattice_equivalent, parse_polygon, LatticePoint, LatticePolygon};

fn main() {
    let pts: Vec<LatticePoint> =
        [(0, 0), (3, 1), (1, 2), (2, 1), (1, 1), (0, 2)].iter().map(|&(x, y)| LatticePoint::new(x, y)).collect();
    let hull = convex_hull(&pts).unwrap();
    println!("hull of {} points: {hull}", pts.len());

    let p = parse_polygon("[[0,0],[4,0],[2,1]]").unwrap();
    let d = p.pick_accounting();
    println!("{p}: {} lattice points, area2 {}, boundary {}, interior {}", d.sharp, d.area2, d.boundary, d.interior);
    let listed: Vec<String> = p.lattice_points().iter().map(|v| v.to_string()).collect();
    println!("  points: {}", listed.join(" "));

    let q = LatticePolygon::from_points(&[(0, 0), (4, 0), (0, 1)]).unwrap();
    match lattice_equivalent(&p, &q) {
        Some(m) => println!("{p} ~ {q} via {m}, det {}", m.determinant()),
        None => println!("{p} and {q} are not equivalent"),
    }

    let r = LatticePolygon::from_points(&[(0, 0), (2, 0), (0, 2)]).unwrap();
    let s = LatticePolygon::from_points(&[(0, 0), (2, 0), (2, 1), (0, 1)]).unwrap();
    println!("{r} ~ {s}: {}", lattice_equivalent(&r, &s).is_some());
}
