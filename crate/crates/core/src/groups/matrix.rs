//! 2×2 matrices over a cyclotomic field.

use num_rational::BigRational;

use crate::arith::{Cyclotomic, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2 {
    /// Row-major entries.
    pub e: [Cyclotomic; 4],
}

impl Mat2 {
    pub fn new(e: [Cyclotomic; 4]) -> Self {
        Mat2 { e }
    }

    pub fn identity(field: u32) -> Self {
        let one = Cyclotomic::from_i64(1).lift_to(field);
        let zero = Cyclotomic::from_i64(0).lift_to(field);
        Mat2::new([one.clone(), zero.clone(), zero, one])
    }

    pub fn scalar(c: &Cyclotomic) -> Self {
        let z = Cyclotomic::from_i64(0).lift_to(c.order());
        Mat2::new([c.clone(), z.clone(), z, c.clone()])
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &o.e;
        Mat2::new([
            a.mul(p).add(&b.mul(r)),
            a.mul(q).add(&b.mul(s)),
            c.mul(p).add(&d.mul(r)),
            c.mul(q).add(&d.mul(s)),
        ])
    }

    pub fn det(&self) -> Cyclotomic {
        self.e[0].mul(&self.e[3]).sub(&self.e[1].mul(&self.e[2]))
    }

    pub fn trace(&self) -> Cyclotomic {
        self.e[0].add(&self.e[3])
    }

    /// Inverse of a determinant-one matrix.
    pub fn adjugate(&self) -> Mat2 {
        let [a, b, c, d] = &self.e;
        Mat2::new([d.clone(), b.neg(), c.neg(), a.clone()])
    }

    /// Lifts all entries into Q(ζ_field).
    pub fn lift_to(&self, field: u32) -> Mat2 {
        Mat2::new(self.e.clone().map(|x| x.lift_to(field)))
    }

    /// Hashable key of a matrix whose entries lie in Q(ζ_field).
    pub fn key(&self, field: u32) -> Vec<BigRational> {
        self.e.iter().flat_map(|x| x.lift_to(field).coeffs()).collect()
    }
}
