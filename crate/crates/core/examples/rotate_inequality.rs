//! Rotates a facet of S_5 into a facet of P_5 and lists the family of
//! rotated faces at a point of the polar.

use tspoly::artifacts::Artifacts;
use tspoly::parsimony::facet_label;
use tspoly::rotation::{rotated_face, rotated_family};

fn main() -> tspoly::Result<()> {
    let art = Artifacts::for_n(5)?;
    let inst = art.inst();
    let polar = art.polar()?;
    let dl = art.dl_complex()?;
    let v = dl
        .faces
        .iter()
        .find(|f| f.dim == 0)
        .expect("dl has vertices");
    let a = polar.chart.to_edge(&dl.points[v.points[0]]);
    let all: Vec<usize> = (0..inst.n()).collect();
    let top = rotated_face(&art, &a, &all)?;
    println!(
        "maximal rotated inequality: {}",
        facet_label(inst, &top.inequality)
    );
    println!(
        "face of P has dimension {}",
        art.p_hull()?.lattice.faces[top.face].dim
    );
    let edge = dl.faces.iter().find(|f| f.dim == 1).expect("dl has edges");
    let mid = polar.chart.to_edge(&dl.relint_point(edge));
    let fam = rotated_family(&art, &mid)?;
    println!(
        "at an edge midpoint: {} distinct rotated faces, shortcut sets match: {}",
        fam.distinct_faces(),
        fam.shortcuts_match()
    );
    Ok(())
}
