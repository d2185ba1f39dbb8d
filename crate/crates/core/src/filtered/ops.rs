use super::object::{FiltMorphism, FiltObject};
use super::seq::{annihilator, coords, intersect, section, span, SeqMorphism, SeqObject};
use crate::error::Result;
use crate::linalg::Matrix;

/// The reflector `κ`: `κ(a)_n = img(a_n → a_lo)`, with the unit `η: a → ικ(a)`.
pub fn kappa(a: &SeqObject) -> (FiltObject, SeqMorphism) {
    let ring = a.ring();
    let chain: Vec<Matrix> = (a.lo()..=a.hi()).map(|n| a.to_pi(n)).collect();
    let k = FiltObject::from_subspace_chain(ring, a.lo(), &chain).expect("images form a chain");
    let eta = SeqMorphism::from_fn(a, &k, |n| coords(&k.level(n), &a.to_pi(n))).expect("unit of κ");
    (k, eta)
}

/// The Rees object `λ(a)_n = ⊕_{n ≤ m ≤ hi} a_m` (truncated at the window) and the counit `ε: ιλ(a) → a`.
pub fn rees_lambda(a: &SeqObject) -> (FiltObject, SeqMorphism) {
    let ring = a.ring();
    let (lo, hi) = (a.lo(), a.hi());
    let offsets: Vec<usize> = (lo..=hi)
        .scan(0, |acc, m| {
            let o = *acc;
            *acc += a.dim(m);
            Some(o)
        })
        .collect();
    let total: usize = (lo..=hi).map(|m| a.dim(m)).sum();
    let chain: Vec<Matrix> = (lo..=hi)
        .map(|n| {
            let start = offsets[(n - lo) as usize];
            let keep: Vec<usize> = (start..total).collect();
            Matrix::identity(ring, total).columns(&keep)
        })
        .collect();
    let lam = FiltObject::from_subspace_chain(ring, lo, &chain).expect("coordinate chain");
    let eps = SeqMorphism::from_fn(&lam, a, |n| {
        let n = n.max(lo);
        let parts: Vec<Matrix> = (n..=hi).map(|m| a.composite(n, m)).collect();
        let refs: Vec<&Matrix> = parts.iter().collect();
        Matrix::hstack(ring, a.dim(n), &refs)
    })
    .expect("counit of λ");
    (lam, eps)
}

/// The two-term resolution `ker(ε) → λ(a)` computing `Lκ(a)`.
#[derive(Clone, Debug)]
pub struct LKappa {
    pub kernel: FiltObject,
    pub lambda: FiltObject,
    pub inclusion: FiltMorphism,
    pub counit: SeqMorphism,
}

impl LKappa {
    /// `H^0`: the cokernel of the inclusion, isomorphic to `κ(a)`.
    pub fn h0(&self) -> FiltObject {
        cokernel(&self.inclusion).0
    }
}

pub fn lkappa_resolution(a: &SeqObject) -> LKappa {
    let (lambda, counit) = rees_lambda(a);
    let (kernel, inclusion) = levelwise_kernel(&lambda, &counit);
    LKappa { kernel, lambda, inclusion, counit }
}

/// Kernel of a map out of a filtered object; it is a filtered subobject.
fn levelwise_kernel(a: &FiltObject, f: &SeqMorphism) -> (FiltObject, FiltMorphism) {
    let ring = a.ring();
    let chain: Vec<Matrix> = (f.lo()..=f.hi()).map(|n| span(&(&a.level(n) * &f.at(n).nullspace()))).collect();
    let (k, emb) = FiltObject::from_chain_embedded(ring, f.lo(), &chain).expect("kernels form a chain");
    let incl = FiltMorphism::from_pi(&k, a, &emb).expect("inclusion");
    (k, incl)
}

pub fn kernel(f: &FiltMorphism) -> (FiltObject, FiltMorphism) {
    levelwise_kernel(&f.source(), f.seq())
}

fn pi_image(f: &FiltMorphism) -> Matrix {
    span(&f.pi())
}

/// The categorical image `img(πf) ∩ b_n`, with its strict inclusion into `b`.
pub fn image(f: &FiltMorphism) -> (FiltObject, FiltMorphism) {
    let b = f.target();
    let im = pi_image(f);
    let chain: Vec<Matrix> = (f.lo()..=f.hi()).map(|n| intersect(&im, &b.level(n))).collect();
    let (i, emb) = FiltObject::from_chain_embedded(b.ring(), f.lo(), &chain).expect("chain");
    let incl = FiltMorphism::from_pi(&i, &b, &emb).expect("inclusion");
    (i, incl)
}

/// The coimage `κ(a / ker f)`, realized as `img(f_n)` inside `π(b)`, with `a → coim(f)`.
pub fn coimage(f: &FiltMorphism) -> (FiltObject, FiltMorphism) {
    let (a, b) = (f.source(), f.target());
    let chain: Vec<Matrix> = (f.lo()..=f.hi()).map(|n| span(&(&b.level(n) * &f.at(n)))).collect();
    let (c, emb) = FiltObject::from_chain_embedded(b.ring(), f.lo(), &chain).expect("chain");
    let pi = coords(&emb, &f.pi());
    let e = FiltMorphism::from_pi(&a, &c, &pi).expect("coimage projection");
    (c, e)
}

/// `κ` of the levelwise cokernel, with the projection `b → coker(f)`.
pub fn cokernel(f: &FiltMorphism) -> (FiltObject, FiltMorphism) {
    let b = f.target();
    let ring = b.ring();
    let (lo, hi) = (f.lo(), f.hi());
    let qs: Vec<Matrix> = (lo..=hi).map(|n| annihilator(&span(&f.at(n)))).collect();
    let dims: Vec<usize> = qs.iter().map(Matrix::rows).collect();
    let trans: Vec<Matrix> = (lo..hi)
        .map(|n| {
            let i = (n - lo) as usize;
            &(&qs[i] * &b.transition(n)) * &section(&qs[i + 1])
        })
        .collect();
    let c = SeqObject::new(ring, lo, dims, trans).expect("levelwise cokernel");
    let (k, eta) = kappa(&c);
    let proj = SeqMorphism::from_fn(&b, &k, |n| &eta.at(n) * &qs[(n - lo) as usize]).expect("projection");
    (k, FiltMorphism::from_seq(proj).expect("filtered"))
}

/// `coim(f) → img(f)` is an isomorphism; levelwise `dim(img(πf) ∩ b_n) = rank f_n`.
pub fn is_strict(f: &FiltMorphism) -> bool {
    let b = f.target();
    let im = pi_image(f);
    (f.lo()..=f.hi()).all(|n| intersect(&im, &b.level(n)).cols() == f.at(n).rank())
}

pub fn is_mono(f: &FiltMorphism) -> bool {
    f.pi().rank() == f.pi().cols()
}

/// Epimorphisms of filtered objects are the maps with dense, i.e. surjective, `π`.
pub fn is_epi(f: &FiltMorphism) -> bool {
    f.pi().rank() == f.pi().rows()
}

/// `f = mono ∘ middle ∘ epi` with strict outer factors and a bimorphism in the middle.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub coimage: FiltObject,
    pub image: FiltObject,
    pub epi: FiltMorphism,
    pub middle: FiltMorphism,
    pub mono: FiltMorphism,
}

pub fn factorization(f: &FiltMorphism) -> Result<Factorization> {
    let (coim, epi) = coimage(f);
    let (im, mono) = image(f);
    // both sit inside π(b); the middle map is the inclusion img(f_n) ⊆ img(πf) ∩ b_n
    let mid = coords(&mono.pi(), &(&f.pi() * &section(&epi.pi())));
    let middle = FiltMorphism::from_pi(&coim, &im, &mid)?;
    Ok(Factorization { coimage: coim, image: im, epi, middle, mono })
}

/// `(a ⊗ b)_n = Σ_{p+q=n} img(a_p ⊗ b_q)` inside `π(a) ⊗ π(b)`.
pub fn day_tensor(a: &FiltObject, b: &FiltObject) -> FiltObject {
    let ring = a.ring();
    let amb = a.pi_dim() * b.pi_dim();
    let (lo, hi) = (a.lo() + b.lo(), a.hi() + b.hi());
    let chain: Vec<Matrix> = (lo..=hi)
        .map(|n| {
            let parts: Vec<Matrix> = (a.lo().max(n - b.hi())..=a.hi().min(n - b.lo())).map(|p| a.level(p).kron(&b.level(n - p))).collect();
            let refs: Vec<&Matrix> = parts.iter().collect();
            span(&Matrix::hstack(ring, amb, &refs))
        })
        .collect();
    FiltObject::from_subspace_chain(ring, lo, &chain).expect("tensor chain")
}

/// `π(a) ⊗ π(b) → π(b) ⊗ π(a)`, `x ⊗ y ↦ y ⊗ x`.
pub fn swap_matrix(ring: crate::linalg::BaseRing, pa: usize, pb: usize) -> Matrix {
    let mut m = Matrix::zeros(ring, pa * pb, pa * pb);
    for i in 0..pa {
        for j in 0..pb {
            m.set(j * pa + i, i * pb + j, ring.one());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::BaseRing;

    const F3: BaseRing = BaseRing::PrimeField(3);

    fn one() -> Matrix {
        Matrix::identity(F3, 1)
    }

    fn beta() -> FiltMorphism {
        FiltMorphism::from_pi(&FiltObject::twisted_unit(F3, 0), &FiltObject::twisted_unit(F3, 1), &one()).unwrap()
    }

    fn zero_transition() -> SeqObject {
        SeqObject::new(F3, 0, vec![1, 1], vec![Matrix::zeros(F3, 1, 1)]).unwrap()
    }

    #[test]
    fn kappa_examples() {
        let (k, _) = kappa(&zero_transition());
        assert_eq!(k.dims(), &[1, 0]);
        let a = SeqObject::new(F3, 0, vec![1, 1, 1], vec![Matrix::zeros(F3, 1, 1), Matrix::zeros(F3, 1, 1)]).unwrap();
        assert_eq!(kappa(&a).0.dims(), &[1, 0, 0]);
        let f = FiltObject::split(F3, &[0, 2, 1]);
        let (kf, eta) = kappa(&f);
        assert!(kf.is_isomorphic(&f) && eta.is_iso());
        let (kk, _) = kappa(&kf);
        assert_eq!(kk.dims(), kf.dims());
    }

    #[test]
    fn rees_examples() {
        let (lam, eps) = rees_lambda(&zero_transition());
        assert_eq!(lam.dims(), &[2, 1]);
        assert!(eps.components().iter().all(|c| c.rank() == c.rows()));
        let (lu, eu) = rees_lambda(&FiltObject::twisted_unit(F3, 0));
        assert_eq!(lu.dims(), &[1]);
        assert!(eu.is_iso());
        let (lz, ez) = rees_lambda(&SeqObject::zero(F3));
        assert!(lz.is_zero() && ez.is_zero());
    }

    #[test]
    fn lkappa_of_zero_transition() {
        let r = lkappa_resolution(&zero_transition());
        assert_eq!(r.kernel.dims(), &[1, 0]);
        assert_eq!(r.h0().gr_dims(), kappa(&zero_transition()).0.gr_dims());
    }

    #[test]
    fn beta_kernel_cokernel_strictness() {
        let b = beta();
        assert!(kernel(&b).0.is_zero());
        assert!(cokernel(&b).0.is_zero());
        assert!(!is_strict(&b));
        assert!(is_mono(&b) && is_epi(&b));
    }

    #[test]
    fn identity_and_zero() {
        let a = FiltObject::split(F3, &[0, 1]);
        let id = FiltMorphism::identity(&a);
        assert!(kernel(&id).0.is_zero());
        assert!(image(&id).0.is_isomorphic(&a));
        assert!(is_strict(&id));
        let b = FiltObject::split(F3, &[2]);
        let z = FiltMorphism::zero(&a, &b);
        assert!(kernel(&z).0.is_isomorphic(&a));
        assert!(cokernel(&z).0.is_isomorphic(&b));
    }

    #[test]
    fn split_inclusion_is_strict() {
        let k1 = FiltObject::twisted_unit(F3, 1);
        let s = FiltObject::split(F3, &[1, 0]);
        let inc = FiltMorphism::from_pi(&k1, &s, &Matrix::from_i64(F3, &[vec![1], vec![0]])).unwrap();
        assert!(is_strict(&inc));
    }

    #[test]
    fn factorization_of_beta() {
        let b = beta();
        let fac = factorization(&b).unwrap();
        assert!(is_strict(&fac.epi) && is_strict(&fac.mono));
        assert!(is_mono(&fac.middle) && is_epi(&fac.middle));
        let back = fac.mono.compose(&fac.middle.compose(&fac.epi).unwrap()).unwrap();
        assert_eq!(back.pi(), b.pi());
    }

    #[test]
    fn tensor_examples() {
        let t = day_tensor(&FiltObject::twisted_unit(F3, 2), &FiltObject::twisted_unit(F3, -1));
        assert!(t.is_isomorphic(&FiltObject::twisted_unit(F3, 1)));
        let line = Matrix::from_i64(F3, &[vec![1], vec![2]]);
        let a = FiltObject::from_subspace_chain(F3, 0, &[Matrix::identity(F3, 2), line]).unwrap();
        let aa = day_tensor(&a, &a);
        assert_eq!(aa.dims(), &[4, 3, 1]);
        let u = day_tensor(&a, &FiltObject::twisted_unit(F3, 0));
        assert_eq!(u.gr_dims(), a.gr_dims());
    }

    #[test]
    fn swap_is_an_iso_of_tensors() {
        let a = FiltObject::split(F3, &[0, 1]);
        let b = FiltObject::split(F3, &[2, 0, 0]);
        let (ab, ba) = (day_tensor(&a, &b), day_tensor(&b, &a));
        let s = FiltMorphism::from_pi(&ab, &ba, &swap_matrix(F3, 2, 3)).unwrap();
        assert!(s.is_iso());
    }
}
