//! Filtered vector spaces: strictness, the image/coimage factorization and the Day tensor.

use fper::filtered::{coimage, day_tensor, factorization, image, is_strict, FiltMorphism, FiltObject};
use fper::linalg::{BaseRing, Matrix};

fn main() {
    let k = BaseRing::PrimeField(3);
    // the identity R(0) → R(1) is a bijection that is not strict
    let (a, b) = (FiltObject::twisted_unit(k, 0), FiltObject::twisted_unit(k, 1));
    let f = FiltMorphism::from_pi(&a, &b, &Matrix::identity(k, 1)).unwrap();
    let (im, _) = image(&f);
    let (coim, _) = coimage(&f);
    println!("strict: {}, image gr {:?}, coimage gr {:?}", is_strict(&f), im.gr_dims().0, coim.gr_dims().0);

    let fac = factorization(&f).unwrap();
    println!("middle map is an iso: {}", fac.middle.is_iso());

    let x = FiltObject::split(k, &[0, 2]);
    let y = FiltObject::split(k, &[-1, 1]);
    println!("gr(x ⊗ y) = {:?}", day_tensor(&x, &y).gr_dims().0);
}
