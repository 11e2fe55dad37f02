//! Hilbert function of the Milnor algebra and the relation module of the
//! generic four-line arrangement.

use linarr::arrangement::{defining_polynomial, Arrangement};
use linarr::syzygy::{self, jacobian, vector_to_triple, Backend};

fn main() {
    let arr = Arrangement::from_int_lines(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]], None).unwrap();
    let k = arr.number_field();
    let j = jacobian(&k, &defining_polynomial(&arr));
    let profile = syzygy::milnor_algebra_profile(&j, Backend::Exact).unwrap();
    println!("Hilbert function {:?}, tau = {}", profile.hilbert, profile.tau_stable);

    let data = syzygy::graded_syzygy_data(&j, None, Backend::Exact).unwrap();
    for s in &data.degrees {
        println!("degree {}: dim {} new generators {}", s.k, s.dim, s.new_generators);
    }
    let r = syzygy::mdr(&j).unwrap();
    for v in syzygy::syzygy_space(&j, r) {
        let [a, b, c] = vector_to_triple(&k, &v, r);
        println!("relation: {} terms, {} terms, {} terms", a.num_terms(), b.num_terms(), c.num_terms());
    }
    println!("{}", syzygy::resolution_shape(&j, arr.degree()).unwrap());
}
