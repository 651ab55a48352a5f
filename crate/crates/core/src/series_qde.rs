//! The `Z₂` case end to end: ancestor J-function of the resolution, its
//! quantum differential equation, specialization at `q = -1`, the mirror map
//! `t¹ = 2i·arcsin(x/2)`, the orbifold I-function, and the hypergeometric
//! series `f₁..f₄` with their Wronskian identities.
//!
//! Coefficients of `(t¹)^k` are finite Laurent polynomials in `z` over
//! rational functions of `λ₁, λ₂, q`.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;

use crate::arith::series::arcsin_series;
use crate::arith::{Cyclotomic, LaurentZ, RatFun, Ring, TruncSeries, Var};
use crate::error::{Error, Result};

pub type Coeff = RatFun<BigRational>;
pub type ZCoeff = LaurentZ<Coeff>;
/// Coefficients over `Q(i)`.
pub type GCoeff = RatFun<Cyclotomic>;
pub type ZGCoeff = LaurentZ<GCoeff>;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn var(v: Var) -> Coeff {
    Coeff::var(v)
}

fn zc(c: Coeff, k: i32) -> ZCoeff {
    LaurentZ::monomial(c, k)
}

/// `(1+q)/(1-q)`.
pub fn q_ratio() -> Coeff {
    let q = var(Var::Q);
    Coeff::one().add(&q).div(&Coeff::one().sub(&q)).expect("1 - q is nonzero")
}

/// Small quantum product on `H*(Y)` with basis `γ₀ = 1, γ₁`:
/// `γ₁ ⋆ γ₁ = -λ₁λ₂ γ₀ - (1+q)/(1-q) (λ₁+λ₂) γ₁`.
#[derive(Clone, Debug)]
pub struct QuantumProduct {
    /// `γ₁⋆γ₁` on `γ₀`.
    pub c0: Coeff,
    /// `γ₁⋆γ₁` on `γ₁`.
    pub c1: Coeff,
}

impl Default for QuantumProduct {
    fn default() -> Self {
        let l1 = var(Var::L1);
        let l2 = var(Var::L2);
        QuantumProduct { c0: l1.mul(&l2).neg(), c1: q_ratio().mul(&l1.add(&l2)).neg() }
    }
}

impl QuantumProduct {
    /// The product at `q = 0`.
    pub fn classical() -> Self {
        let p = Self::default();
        QuantumProduct {
            c0: p.c0,
            c1: p.c1.subst(Var::Q, &BigRational::from_integer(0.into())).expect("regular at q = 0"),
        }
    }

    /// `(a γ₀ + b γ₁) ⋆ (c γ₀ + d γ₁)`.
    pub fn mul<C: Ring>(&self, x: [&C; 2], y: [&C; 2], lift: impl Fn(&Coeff) -> C) -> [C; 2] {
        let bd = x[1].mul(y[1]);
        [
            x[0].mul(y[0]).add(&bd.mul(&lift(&self.c0))),
            x[0].mul(y[1]).add(&x[1].mul(y[0])).add(&bd.mul(&lift(&self.c1))),
        ]
    }

    /// `γ₁ ⋆ (a γ₀ + b γ₁)`.
    pub fn gamma1<C: Ring>(&self, v: [&C; 2], lift: impl Fn(&Coeff) -> C) -> [C; 2] {
        [v[1].mul(&lift(&self.c0)), v[0].add(&v[1].mul(&lift(&self.c1)))]
    }
}

fn lift_z(c: &Coeff) -> ZCoeff {
    LaurentZ::constant(c.clone())
}

/// `q ∂/∂q` applied coefficientwise.
pub fn q_derivative(x: &ZCoeff) -> ZCoeff {
    let q = var(Var::Q);
    x.map(|c| c.derivative(Var::Q).mul(&q))
}

/// Components `Φ₀, Φ₁` of a J-function, stored as coefficients of `(t¹)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct JSeries {
    pub phi: [Vec<ZCoeff>; 2],
}

impl JSeries {
    pub fn order(&self) -> usize {
        self.phi[0].len() - 1
    }

    pub fn coeff(&self, component: usize, k: usize) -> &ZCoeff {
        &self.phi[component][k]
    }

    pub fn truncate(&self, n: usize) -> JSeries {
        JSeries { phi: [self.phi[0][..=n].to_vec(), self.phi[1][..=n].to_vec()] }
    }
}

/// `(A + B)^k · 1` with `A = q∂/∂q`, `B = γ₁⋆/z`, for `k = 0..=n`; the
/// coefficient of `(t¹)^k` in `exp(t¹(A+B))1` is this divided by `k!`.
pub fn operator_powers(n: usize, product: &QuantumProduct) -> Vec<[ZCoeff; 2]> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = [ZCoeff::one(), ZCoeff::zero()];
    out.push(cur.clone());
    for _ in 0..n {
        let star = product.gamma1([&cur[0], &cur[1]], lift_z);
        cur = [
            q_derivative(&cur[0]).add(&star[0].shift(-1)),
            q_derivative(&cur[1]).add(&star[1].shift(-1)),
        ];
        out.push(cur.clone());
    }
    out
}

fn cf(n: i64) -> Coeff {
    Coeff::from_rational(&rat(n, 1))
}

fn laurent(terms: &[(i32, Coeff)]) -> ZCoeff {
    terms.iter().fold(ZCoeff::zero(), |acc, (e, c)| acc.add(&zc(c.clone(), *e)))
}

/// The hand expansion of `exp(t¹(q∂_q + γ₁⋆/z))·1` through `(t¹)^4` as
/// usually displayed: coefficient `k` is `(A + B)^k·1`, without the `1/k!`
/// and without the overall `z`. Indexed `[component][k]`.
pub fn hand_expansion() -> [Vec<ZCoeff>; 2] {
    let (q, s, p) = (var(Var::Q), var(Var::L1).add(&var(Var::L2)), var(Var::L1).mul(&var(Var::L2)));
    let omq = cf(1).sub(&q);
    let div = |a: &Coeff, b: &Coeff| a.div(b).expect("1 - q is nonzero");
    let c = q_ratio();
    let c2s2_p = c.mul(&c).mul(&s).mul(&s).sub(&p);
    let four_q = div(&q.scale_rational(&rat(4, 1)), &omq.mul(&omq));
    let two_q = div(&q.scale_rational(&rat(2, 1)), &omq.mul(&omq));
    let cube = omq.mul(&omq).mul(&omq);
    let q1q = q.mul(&cf(1).add(&q));
    let phi0 = vec![
        ZCoeff::one(),
        ZCoeff::zero(),
        laurent(&[(-2, p.neg())]),
        laurent(&[(-3, c.mul(&s).mul(&p))]),
        laurent(&[(-3, four_q.mul(&s).mul(&p)), (-4, c2s2_p.mul(&p).neg())]),
    ];
    let phi1 = vec![
        ZCoeff::zero(),
        laurent(&[(-1, cf(1))]),
        laurent(&[(-2, c.mul(&s).neg())]),
        laurent(&[(-2, two_q.mul(&s).neg()), (-3, c2s2_p.clone())]),
        laurent(&[
            (-2, div(&q1q.scale_rational(&rat(-2, 1)), &cube).mul(&s)),
            (-3, div(&q1q.scale_rational(&rat(6, 1)), &cube).mul(&s).mul(&s)),
            (-4, c.mul(&s).mul(&p).scale_rational(&rat(2, 1)).sub(&c.mul(&c).mul(&c).mul(&s).mul(&s).mul(&s))),
        ]),
    ];
    [phi0, phi1]
}

/// `z · exp(t¹ q∂/∂q + (t¹/z) γ₁⋆) 1` through `(t¹)^n`.
pub fn ancestor_j(n: usize) -> JSeries {
    ancestor_j_with(n, &QuantumProduct::default())
}

pub fn ancestor_j_with(n: usize, product: &QuantumProduct) -> JSeries {
    let powers = operator_powers(n, product);
    let mut phi = [Vec::with_capacity(n + 1), Vec::with_capacity(n + 1)];
    let mut fact = BigInt::from(1);
    for (k, p) in powers.into_iter().enumerate() {
        if k > 0 {
            fact *= k;
        }
        let inv = BigRational::new(1.into(), fact.clone());
        for (j, x) in p.into_iter().enumerate() {
            phi[j].push(x.shift(1).map(|c| c.scale_rational(&inv)));
        }
    }
    JSeries { phi }
}

/// Checks
/// `q∂_q Φ₀ = ∂_t Φ₀ + (λ₁λ₂/z) Φ₁` and
/// `q∂_q Φ₁ = -Φ₀/z + ∂_t Φ₁ + (1+q)(λ₁+λ₂)/((1-q)z) Φ₁`
/// coefficientwise through `(t¹)^{N-1}`. Returns the number of equations.
pub fn verify_qde(j: &JSeries) -> Result<usize> {
    let p = var(Var::L1).mul(&var(Var::L2));
    let cs = q_ratio().mul(&var(Var::L1).add(&var(Var::L2)));
    let n = j.order();
    let mut count = 0;
    for k in 0..n {
        let next = |c: usize| j.phi[c][k + 1].map(|x| x.scale_rational(&rat(k as i64 + 1, 1)));
        let (f0, f1) = (&j.phi[0][k], &j.phi[1][k]);
        let lhs0 = q_derivative(f0);
        let rhs0 = next(0).add(&f1.mul(&zc(p.clone(), -1)));
        let lhs1 = q_derivative(f1);
        let rhs1 = next(1).sub(&f0.shift(-1)).add(&f1.mul(&zc(cs.clone(), -1)));
        if lhs0 != rhs0 {
            return Err(Error::MismatchAt(format!("QDE row 0 at (t¹)^{k}: {lhs0} vs {rhs0}")));
        }
        if lhs1 != rhs1 {
            return Err(Error::MismatchAt(format!("QDE row 1 at (t¹)^{k}: {lhs1} vs {rhs1}")));
        }
        count += 2;
    }
    Ok(count)
}

fn at_minus_one(c: &Coeff) -> Result<Coeff> {
    c.subst(Var::Q, &BigRational::from_integer((-1).into()))
}

/// Every coefficient is regular at `q = -1`. Returns the first offending
/// term otherwise.
pub fn regular_at_minus_one(j: &JSeries) -> std::result::Result<(), String> {
    for (c, comp) in j.phi.iter().enumerate() {
        for (k, x) in comp.iter().enumerate() {
            for (e, f) in x.terms() {
                if at_minus_one(f).is_err() {
                    return Err(format!("Φ{c} (t¹)^{k} z^{e}: {f}"));
                }
            }
        }
    }
    Ok(())
}

/// Coefficientwise evaluation at `q = value`.
pub fn specialize_q(j: &JSeries, value: &BigRational) -> Result<JSeries> {
    let map = |v: &Vec<ZCoeff>| -> Result<Vec<ZCoeff>> {
        v.iter().map(|x| x.try_map(|c| c.subst(Var::Q, value))).collect()
    };
    Ok(JSeries { phi: [map(&j.phi[0])?, map(&j.phi[1])?] })
}

pub fn specialize_q_minus1(j: &JSeries) -> Result<JSeries> {
    specialize_q(j, &BigRational::from_integer((-1).into()))
}

/// `Π (λ/z - s)` factor as a Laurent polynomial.
fn shifted(v: Var, s: &BigRational) -> ZCoeff {
    zc(var(v), -1).sub(&ZCoeff::from_rational(s))
}

/// The orbifold I-function on the basis `(δ₀, δ_{1/2})`, as series in `x`.
pub fn orbifold_i(n: usize) -> [TruncSeries<ZCoeff>; 2] {
    let l12 = var(Var::L1).mul(&var(Var::L2));
    let mut d0 = vec![ZCoeff::zero(); n + 1];
    let mut d1 = vec![ZCoeff::zero(); n + 1];
    d0[0] = zc(Coeff::one(), 1);
    if n >= 1 {
        d1[1] = ZCoeff::one();
    }
    // δ₀: (λ₁λ₂/z) Π_{r=1}^{k-1} (λ₁/z - r)(λ₂/z - r) x^{2k}/(2k)!, k ≥ 1.
    let mut prod = zc(l12, -1);
    let mut fact = BigInt::from(1);
    for m in 1..=n {
        fact *= m;
        if m % 2 == 0 {
            let k = m / 2;
            if k >= 2 {
                let r = rat(k as i64 - 1, 1);
                prod = prod.mul(&shifted(Var::L1, &r)).mul(&shifted(Var::L2, &r));
            }
            d0[m] = prod.map(|c| c.scale_rational(&BigRational::new(1.into(), fact.clone())));
        }
    }
    // δ_{1/2}: Π_{r=0}^{k-1} (λ₁/z - r - ½)(λ₂/z - r - ½) x^{2k+1}/(2k+1)!.
    let mut prod = ZCoeff::one();
    let mut fact = BigInt::from(1);
    for m in 1..=n {
        fact *= m;
        if m % 2 == 1 && m >= 3 {
            let k = (m - 1) / 2;
            let r = rat(2 * k as i64 - 1, 2);
            prod = prod.mul(&shifted(Var::L1, &r)).mul(&shifted(Var::L2, &r));
            d1[m] = prod.map(|c| c.scale_rational(&BigRational::new(1.into(), fact.clone())));
        }
    }
    [TruncSeries::new("x", n, d0), TruncSeries::new("x", n, d1)]
}

fn gauss(c: &Coeff) -> GCoeff {
    c.map_coeffs(Cyclotomic::rational)
}

fn lift_g(x: &ZCoeff) -> ZGCoeff {
    x.map(gauss)
}

fn i_unit() -> ZGCoeff {
    LaurentZ::constant(GCoeff::constant(Cyclotomic::i()))
}

/// `t¹ = 2i·arcsin(x/2)` through `x^n`.
pub fn mirror_map(n: usize) -> TruncSeries<ZGCoeff> {
    let a: TruncSeries<BigRational> = arcsin_series("x", n);
    let two_i = i_unit().add(&i_unit());
    TruncSeries::from_fn("x", n, |k| {
        let c = a.coeff(k) / BigRational::from_integer(BigInt::from(2).pow(k as u32));
        two_i.mul(&ZGCoeff::from_rational(&c))
    })
}

/// Result of the coefficient comparison of the continued J-function with
/// the I-function.
#[derive(Clone, Debug, PartialEq)]
pub struct TowerMatchReport {
    pub order: usize,
    /// `[δ₀, δ_{1/2}]` components of `J_Y` after continuation and mirror map.
    pub continued: [TruncSeries<ZGCoeff>; 2],
    pub terms_compared: usize,
}

/// Sign `s` in `γ₁ = s·(-i)·δ_{1/2}`; `1` is the literal convention.
pub fn tower_match(n: usize) -> Result<TowerMatchReport> {
    tower_match_with_sign(n, 1)
}

pub fn tower_match_with_sign(n: usize, sign: i64) -> Result<TowerMatchReport> {
    if n < 1 {
        return Err(Error::InvalidParameter("order must be at least 1".into()));
    }
    let j = ancestor_j(n);
    let jm = specialize_q_minus1(&j)?;
    let t = mirror_map(n);
    let compose = |c: usize| -> Result<TruncSeries<ZGCoeff>> {
        let s = TruncSeries::new("t", n, jm.phi[c].iter().map(lift_g).collect());
        s.compose(&t)
    };
    let d0 = compose(0)?;
    let minus_i = i_unit().neg().mul(&ZGCoeff::from_rational(&rat(sign, 1)));
    let d1 = compose(1)?.scale(&minus_i);
    let [i0, i1] = orbifold_i(n);
    let mut terms = 0;
    for (name, lhs, rhs) in [("δ0", &d0, &i0), ("δ1/2", &d1, &i1)] {
        for k in 0..=n {
            let r = lift_g(&rhs.coeff(k));
            if lhs.coeff(k) != r {
                return Err(Error::MismatchAt(format!("x^{k} {name}: J gives {} but I gives {r}", lhs.coeff(k))));
            }
            terms += 1;
        }
    }
    Ok(TowerMatchReport { order: n, continued: [d0, d1], terms_compared: terms })
}

/// The four hypergeometric series
/// `f₁ = Σ x^{2k}/(2k)! Π_{r=1}^k (a+r-1)(b+r-1)`,
/// `f₂ = Σ x^{2k+1}/(2k+1)! Π_{r=1}^k (a+r-½)(b+r-½)`,
/// `f₃ = Σ x^{2k}/(2k)! Π_{r=1}^k (a-r+1)(b-r+1)`,
/// `f₄ = Σ x^{2k+1}/(2k+1)! Π_{r=1}^k (a-r+½)(b-r+½)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HypergeomQuad<C> {
    pub f: [TruncSeries<C>; 4],
}

impl<C: Ring> HypergeomQuad<C> {
    pub fn new(n: usize, a: &C, b: &C) -> Self {
        let series = |odd: bool, sign: i64, shift: BigRational| {
            let mut c = vec![C::zero(); n + 1];
            let mut prod = C::one();
            let mut fact = BigInt::from(1);
            let start = odd as usize;
            for m in 1..=n {
                fact *= m;
                if m % 2 == start % 2 {
                    let r = ((m - start) / 2) as i64;
                    if r >= 1 {
                        // (a + s·r + shift)(b + s·r + shift)
                        let off = C::from_rational(&(rat(sign * r, 1) + &shift));
                        prod = prod.mul(&a.add(&off)).mul(&b.add(&off));
                    }
                    c[m] = prod.scale(&BigRational::new(1.into(), fact.clone()));
                }
            }
            if !odd {
                c[0] = C::one();
            }
            TruncSeries::new("x", n, c)
        };
        HypergeomQuad {
            f: [
                series(false, 1, rat(-1, 1)),
                series(true, 1, rat(-1, 2)),
                series(false, -1, rat(1, 1)),
                series(true, -1, rat(1, 2)),
            ],
        }
    }

    /// `f₂′f₁ - f₁′f₂`.
    pub fn wronskian(&self) -> TruncSeries<C> {
        let [f1, f2, ..] = &self.f;
        f2.derivative().mul(f1).sub(&f1.derivative().mul(f2))
    }
}

/// Symbolic `(a, b)` as polynomial variables.
pub fn symbolic_quad(n: usize) -> HypergeomQuad<Coeff> {
    HypergeomQuad::new(n, &var(Var::A), &var(Var::B))
}

fn first_mismatch<C: Ring>(lhs: &TruncSeries<C>, rhs: &TruncSeries<C>, what: &str) -> Result<usize> {
    match lhs.first_difference(rhs) {
        Some(k) => Err(Error::MismatchAt(format!("{what} at x^{k}: {} vs {}", lhs.coeff(k), rhs.coeff(k)))),
        None => Ok(lhs.order().min(rhs.order()) + 1),
    }
}

/// `x d/dx (x d/dx - 1) - x² (a - (x/2) d/dx)(b - (x/2) d/dx)` applied to `f`.
pub fn hypergeometric_operator<C: Ring>(f: &TruncSeries<C>, a: &C, b: &C) -> TruncSeries<C> {
    TruncSeries::from_fn("x", f.order(), |k| {
        let head = f.coeff(k).mul(&C::from_int((k * (k.saturating_sub(1))) as i64));
        if k < 2 {
            return head;
        }
        let h = C::from_rational(&rat(k as i64 - 2, 2));
        head.sub(&f.coeff(k - 2).mul(&a.sub(&h)).mul(&b.sub(&h)))
    })
}

/// `x² ((x²/4 - 1) d²/dx² + (1/4 - (a+b)/2) x d/dx + ab)` applied to `f`.
pub fn second_order_form<C: Ring>(f: &TruncSeries<C>, a: &C, b: &C) -> TruncSeries<C> {
    let lin = C::from_rational(&rat(1, 4)).sub(&a.add(b).scale(&rat(1, 2)));
    TruncSeries::from_fn("x", f.order(), |k| {
        let head = f.coeff(k).mul(&C::from_int((k * (k.saturating_sub(1))) as i64)).neg();
        if k < 2 {
            return head;
        }
        let m = k as i64 - 2;
        let w = C::from_rational(&rat(m * (m - 1), 4)).add(&lin.mul(&C::from_int(m))).add(&a.mul(b));
        head.add(&f.coeff(k - 2).mul(&w))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WronskianReport {
    pub order: usize,
    pub identity_f3_terms: usize,
    pub identity_f4_terms: usize,
    pub annihilator_terms: usize,
}

/// `(f₂′f₁ - f₁′f₂) f₃ = f₂′`, `ab (f₂′f₁ - f₁′f₂) f₄ = f₁′` and the
/// hypergeometric operator killing `f₃`, through `x^{n-1}` (`x^n` for the
/// operator).
pub fn wronskian_identities(n: usize) -> Result<WronskianReport> {
    wronskian_identities_at(n, &var(Var::A), &var(Var::B))
}

pub fn wronskian_identities_at<C: Ring>(n: usize, a: &C, b: &C) -> Result<WronskianReport> {
    if n < 2 {
        return Err(Error::InvalidParameter("order must be at least 2".into()));
    }
    let h = HypergeomQuad::new(n, a, b);
    let w = h.wronskian();
    let [_, f2, f3, f4] = &h.f;
    let f1 = &h.f[0];
    let t24 = first_mismatch(&w.mul(&f3.truncate(n - 1)), &f2.derivative(), "identity (f₂′f₁ - f₁′f₂) f₃ = f₂′")?;
    let ab = a.mul(b);
    let t25 = first_mismatch(&w.mul(&f4.truncate(n - 1)).scale(&ab), &f1.derivative(), "identity ab (f₂′f₁ - f₁′f₂) f₄ = f₁′")?;
    let ann = hypergeometric_operator(f3, a, b);
    let t3 = first_mismatch(&ann, &TruncSeries::zero("x", n), "hypergeometric operator on f₃")?;
    Ok(WronskianReport { order: n, identity_f3_terms: t24, identity_f4_terms: t25, annihilator_terms: t3 })
}

/// `Φ₀ = Σ c_k y^k` from `c_{k+2} = (k/2 + a)(k/2 + b) c_k / ((k+2)(k+1))`
/// with `a = λ₁/z`, `b = λ₂/z`, and
/// `Φ₁ = -(z/λ₁λ₂) √(y²/4 - 1) dΦ₀/dy` with the branch
/// `√(y²/4 - 1) = i √(1 - y²/4)`.
pub fn qde_series_solution(n: usize, c0: &GCoeff, c1: &GCoeff) -> Result<[TruncSeries<GCoeff>; 2]> {
    if n < 2 {
        return Err(Error::InvalidParameter("order must be at least 2".into()));
    }
    let phi0 = qde_phi0_series(n, &GCoeff::var(Var::A), &GCoeff::var(Var::B), c0, c1);
    let phi1 = sqrt_prefactor(n - 1)?.mul(&phi0.derivative()).scale(&minus_z_over_l12());
    Ok([phi0, phi1])
}

/// The `Φ₀` recursion alone, at any parameters.
pub fn qde_phi0_series<C: Ring>(n: usize, a: &C, b: &C, c0: &C, c1: &C) -> TruncSeries<C> {
    let mut c = vec![C::zero(); n + 1];
    c[0] = c0.clone();
    if n >= 1 {
        c[1] = c1.clone();
    }
    for k in 0..n.saturating_sub(1) {
        let h = C::from_rational(&rat(k as i64, 2));
        let num = h.add(a).mul(&h.add(b));
        c[k + 2] = c[k].mul(&num).scale(&rat(1, ((k + 2) * (k + 1)) as i64));
    }
    TruncSeries::new("y", n, c)
}

/// `-(z/λ₁λ₂) = -1/(a b z)`.
fn minus_z_over_l12() -> GCoeff {
    let abz = GCoeff::var(Var::A).mul(&GCoeff::var(Var::B)).mul(&GCoeff::var(Var::Z));
    GCoeff::one().neg().div(&abz).expect("nonzero")
}

/// `√(y²/4 - 1) = i √(1 - y²/4)` through `y^n`.
pub fn sqrt_prefactor(n: usize) -> Result<TruncSeries<GCoeff>> {
    let base: TruncSeries<GCoeff> =
        TruncSeries::new("y", n, vec![GCoeff::one(), GCoeff::zero(), GCoeff::from_rational(&rat(-1, 4))]);
    Ok(base.sqrt_unit()?.scale(&GCoeff::constant(Cyclotomic::i())))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryReport {
    pub order: usize,
    /// `Φ₀|_{y=0}`, to be compared with `z f₃`.
    pub phi0_at_zero: TruncSeries<GCoeff>,
    /// `Φ₁|_{y=0}`, to be compared with `i f₄`.
    pub phi1_at_zero: TruncSeries<GCoeff>,
}

/// Solves for `c₀, c₁, C` as series in `x` from `Φ₁|_{y=x} = 0`,
/// `Φ₀|_{y=x} = z`, checks both conditions, and checks the values at `y = 0`
/// (that is `q = -1`) against `z f₃` and `i f₄`.
pub fn qde_boundary_values(n: usize) -> Result<BoundaryReport> {
    if n < 2 {
        return Err(Error::InvalidParameter("order must be at least 2".into()));
    }
    let (a, b) = (GCoeff::var(Var::A), GCoeff::var(Var::B));
    let z = GCoeff::var(Var::Z);
    let h = HypergeomQuad::new(n + 1, &a, &b);
    let [f1, f2, f3, f4] = &h.f;
    let (d1, d2) = (f1.derivative(), f2.derivative());
    let w = h.wronskian();
    let cz = w.inverse_unit()?.scale(&z);
    let c0 = cz.mul(&d2);
    let c1 = cz.mul(&d1).neg();
    let m = n.min(c0.order());
    let zs = TruncSeries::constant("x", m, z.clone());
    first_mismatch(&c0.mul(&f1.truncate(m)).add(&c1.mul(&f2.truncate(m))).truncate(m), &zs, "Φ₀ at y = x")?;
    first_mismatch(&c0.mul(&d1).add(&c1.mul(&d2)).truncate(m), &TruncSeries::zero("x", m), "Φ₁ at y = x")?;
    // At y = 0: Φ₀ = c₀ and Φ₁ = -(z/λ₁λ₂)·i·c₁ (f₁′(0) = 0, f₂′(0) = 1).
    let i = GCoeff::constant(Cyclotomic::i());
    let phi0 = c0.truncate(m);
    let phi1 = c1.truncate(m).scale(&minus_z_over_l12().mul(&i));
    first_mismatch(&phi0, &f3.truncate(m).scale(&z), "Φ₀ at y = 0 against z f₃")?;
    first_mismatch(&phi1, &f4.truncate(m).scale(&i), "Φ₁ at y = 0 against i f₄")?;
    Ok(BoundaryReport { order: m, phi0_at_zero: phi0, phi1_at_zero: phi1 })
}

/// Signed Stirling numbers of the first kind `s(j, m)`, `j ≤ n`.
fn stirling1(n: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::from(0); n + 1]; n + 1];
    s[0][0] = BigInt::from(1);
    for j in 1..=n {
        for m in 1..=j {
            s[j][m] = &s[j - 1][m - 1] - BigInt::from(j as i64 - 1) * &s[j - 1][m];
        }
    }
    s
}

/// Taylor coefficients at `q = -1` of the `(t¹)^k` coefficients of `J`,
/// indexed `[component][k][j]` for `j + k ≤ order`.
pub type TaylorTable = [Vec<Vec<ZCoeff>>; 2];

/// Taylor coefficients by differentiating the closed forms in `q`.
pub fn taylor_direct(j: &JSeries, depth: usize) -> Result<TaylorTable> {
    let n = j.order();
    let mut out: TaylorTable = [Vec::new(), Vec::new()];
    for (c, comp) in j.phi.iter().enumerate() {
        for (k, x) in comp.iter().enumerate() {
            let mut row = Vec::new();
            let mut d = x.clone();
            let mut fact = BigInt::from(1);
            for jj in 0..=depth.min(n - k) {
                if jj > 0 {
                    d = d.map(|f| f.derivative(Var::Q));
                    fact *= jj;
                }
                let inv = BigRational::new(1.into(), fact.clone());
                row.push(d.try_map(at_minus_one)?.map(|f| f.scale_rational(&inv)));
            }
            out[c].push(row);
        }
    }
    Ok(out)
}

/// Taylor coefficients from the values at `q = -1` alone, by iterating the
/// divisor equation `q∂_q Φ_k = (k+1) Φ_{k+1} + M Φ_k` and converting powers
/// of `q∂_q` to derivatives with Stirling numbers.
pub fn taylor_from_divisor_equation(at_minus1: &JSeries, depth: usize) -> Result<TaylorTable> {
    let n = at_minus1.order();
    let p = var(Var::L1).mul(&var(Var::L2));
    let s = var(Var::L1).add(&var(Var::L2));
    // (q∂_q)^r of (1+q)/(1-q) at q = -1.
    let q = var(Var::Q);
    let mut cr = Vec::with_capacity(depth + 1);
    let mut c = q_ratio();
    for _ in 0..=depth {
        cr.push(at_minus_one(&c)?);
        c = c.derivative(Var::Q).mul(&q);
    }
    // v[m][comp][k] = (q∂_q)^m Φ_k at q = -1, for k + m ≤ n.
    let mut v: Vec<[Vec<ZCoeff>; 2]> = vec![at_minus1.phi.clone()];
    let binom = |a: usize, b: usize| -> BigRational {
        BigRational::from_integer(crate::arith::binomial(a as u32, b as u32))
    };
    for m in 1..=depth {
        let mut next: [Vec<ZCoeff>; 2] = [Vec::new(), Vec::new()];
        for k in 0..=n.saturating_sub(m) {
            let kk = BigRational::from_integer(BigInt::from(k + 1));
            let mut r0 = v[m - 1][0][k + 1].map(|f| f.scale_rational(&kk));
            let mut r1 = v[m - 1][1][k + 1].map(|f| f.scale_rational(&kk));
            for r in 0..m {
                let w = binom(m - 1, r);
                let (a0, a1) = (&v[m - 1 - r][0][k], &v[m - 1 - r][1][k]);
                if r == 0 {
                    r0 = r0.add(&a1.mul(&zc(p.clone(), -1)));
                    r1 = r1.sub(&a0.shift(-1));
                }
                let entry = zc(cr[r].mul(&s).scale_rational(&w), -1);
                r1 = r1.add(&a1.mul(&entry));
            }
            next[0].push(r0);
            next[1].push(r1);
        }
        v.push(next);
    }
    let st = stirling1(depth);
    let mut out: TaylorTable = [Vec::new(), Vec::new()];
    for comp in 0..2 {
        for k in 0..=n {
            let mut row = Vec::new();
            let mut fact = BigInt::from(1);
            for jj in 0..=depth.min(n - k) {
                if jj > 0 {
                    fact *= jj;
                }
                // D^j f(-1) = (-1)^j Σ_m s(j,m) (q∂_q)^m f(-1).
                let mut acc = ZCoeff::zero();
                for (m, sjm) in st[jj].iter().enumerate().take(jj + 1) {
                    if sjm.sign() != Sign::NoSign {
                        acc = acc.add(&v[m][comp][k].map(|f| f.scale_rational(&BigRational::from_integer(sjm.clone()))));
                    }
                }
                let sign = if jj % 2 == 0 { 1 } else { -1 };
                row.push(acc.map(|f| f.scale_rational(&BigRational::new(sign.into(), fact.clone()))));
            }
            out[comp].push(row);
        }
    }
    Ok(out)
}

/// Compares both Taylor tables. Returns the number of coefficients checked.
pub fn taylor_reconstruction(n: usize, depth: usize) -> Result<usize> {
    let j = ancestor_j(n);
    let direct = taylor_direct(&j, depth)?;
    let rebuilt = taylor_from_divisor_equation(&specialize_q_minus1(&j)?, depth)?;
    let mut count = 0;
    for comp in 0..2 {
        for (k, (a, b)) in direct[comp].iter().zip(&rebuilt[comp]).enumerate() {
            for (jj, (x, y)) in a.iter().zip(b).enumerate() {
                if x != y {
                    return Err(Error::MismatchAt(format!(
                        "Φ{comp} (t¹)^{k}, Taylor order {jj} at q = -1: {x} vs {y}"
                    )));
                }
                count += 1;
            }
        }
    }
    Ok(count)
}
