//! Exact rational LP with certificates: a tiny diet problem and an
//! infeasible system with its Farkas vector.

use tspoly::exactcore::{LinearProgram, LpStatus, QVector, Rat};

fn main() {
    // minimize 3x + 2y  s.t.  x + y >= 4, x + 3y >= 6, x, y >= 0
    let lp = LinearProgram::new(QVector::from_ints(&[3, 2]))
        .all_nonneg()
        .ge(QVector::from_ints(&[1, 1]), Rat::from_int(4))
        .ge(QVector::from_ints(&[1, 3]), Rat::from_int(6));
    let res = lp.solve();
    println!(
        "status {:?}, value {}, x = {}",
        res.status,
        res.value.clone().unwrap(),
        res.primal
    );
    println!("dual {} verifies: {}", res.dual, res.verify(&lp));

    let bad = LinearProgram::new(QVector::zeros(1))
        .ge(QVector::from_ints(&[1]), Rat::from_int(2))
        .ge(QVector::from_ints(&[-1]), Rat::from_int(-1));
    let res = bad.solve();
    assert_eq!(res.status, LpStatus::Infeasible);
    println!(
        "x >= 2 and x <= 1: Farkas vector {} verifies: {}",
        res.dual,
        res.verify(&bad)
    );
}
