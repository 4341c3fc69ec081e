//! Spaces of quasi-exponentials and of polynomials, their difference
//! operators and coefficient functions, and the discrete Wronski map.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bethe::{exponent_set, fundamental_operator, kernel_quasiexp, BetheProblem, BetheRoots, KernelShape};
use crate::error::{Error, Result};
use crate::ratfun::{
    discrete_wronskian, poly_determinant, tau_basis_change, tau_basis_restore, DiffOp, Poly, QuasiExp, RatFun,
    SeriesUinv,
};
use crate::scalar::Scalar;

/// A point of the space of quasi-exponentials: the span of
/// `q_i^u (u^{λ_i} + p_{i,1} u^{λ_i - 1} + .. + p_{i,λ_i})`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiExpSpacePoint<S> {
    pub q: Vec<S>,
    pub lambda: Vec<usize>,
    /// `coords[i][j - 1] = p_{i,j}`.
    pub coords: Vec<Vec<S>>,
}

/// A point of the space of polynomials: the span of
/// `u^{d_i} + sum_j f_{i,j} u^{d_i - j}` with `d_i = λ_i + N - i`, where
/// the coefficients at exponents `d_l` are absent.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySpacePoint<S> {
    pub lambda: Vec<usize>,
    /// `coords[i][j - 1] = f_{i,j}`; zero whenever `d_i - j` is some `d_l`.
    pub coords: Vec<Vec<S>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpacePoint<S> {
    QuasiExp(QuasiExpSpacePoint<S>),
    Poly(PolySpacePoint<S>),
}

/// What a coefficient table needs to know to rebuild a point.
#[derive(Clone, Debug, PartialEq)]
pub enum SpaceShape<S> {
    QuasiExp { q: Vec<S>, lambda: Vec<usize> },
    Poly { lambda: Vec<usize> },
}

impl<S: Scalar> QuasiExpSpacePoint<S> {
    pub fn new(q: Vec<S>, lambda: Vec<usize>, coords: Vec<Vec<S>>) -> Result<Self> {
        if q.len() != lambda.len() || coords.len() != lambda.len() {
            return Err(Error::Invalid("q, lambda and coordinates must have one entry per colour".into()));
        }
        if coords.iter().zip(&lambda).any(|(c, &l)| c.len() != l) {
            return Err(Error::Invalid("colour i carries lambda_i coordinates".into()));
        }
        if q.iter().any(|x| x.is_zero()) {
            return Err(Error::ZeroQ);
        }
        Ok(QuasiExpSpacePoint { q, lambda, coords })
    }

    pub fn basis(&self) -> Vec<QuasiExp<S>> {
        self.q
            .iter()
            .zip(&self.coords)
            .map(|(q, c)| {
                let mut poly: Vec<S> = c.iter().rev().cloned().collect();
                poly.push(S::one());
                QuasiExp::new(q.clone(), Poly::new(poly))
            })
            .collect()
    }
}

impl<S: Scalar> PolySpacePoint<S> {
    pub fn new(lambda: Vec<usize>, coords: Vec<Vec<S>>) -> Result<Self> {
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!("{lambda:?} is not a partition")));
        }
        let d = exponent_set(&lambda);
        if coords.len() != d.len() || coords.iter().zip(&d).any(|(c, &di)| c.len() != di) {
            return Err(Error::Invalid("colour i carries d_i coordinates".into()));
        }
        for (c, &di) in coords.iter().zip(&d) {
            for (j, x) in c.iter().enumerate() {
                if d.contains(&(di - j - 1)) && !x.is_zero() {
                    return Err(Error::Invalid(format!("coefficient of u^{} must vanish", di - j - 1)));
                }
            }
        }
        Ok(PolySpacePoint { lambda, coords })
    }

    pub fn basis(&self) -> Vec<QuasiExp<S>> {
        self.coords
            .iter()
            .map(|c| {
                let mut poly: Vec<S> = c.iter().rev().cloned().collect();
                poly.push(S::one());
                QuasiExp::polynomial(Poly::new(poly))
            })
            .collect()
    }
}

impl<S: Scalar> SpacePoint<S> {
    pub fn basis(&self) -> Vec<QuasiExp<S>> {
        match self {
            SpacePoint::QuasiExp(x) => x.basis(),
            SpacePoint::Poly(x) => x.basis(),
        }
    }

    pub fn lambda(&self) -> &[usize] {
        match self {
            SpacePoint::QuasiExp(x) => &x.lambda,
            SpacePoint::Poly(x) => &x.lambda,
        }
    }

    pub fn shape(&self) -> SpaceShape<S> {
        match self {
            SpacePoint::QuasiExp(x) => SpaceShape::QuasiExp { q: x.q.clone(), lambda: x.lambda.clone() },
            SpacePoint::Poly(x) => SpaceShape::Poly { lambda: x.lambda.clone() },
        }
    }

    /// Coordinates in the order `p_{1,1}, .., p_{1,λ_1}, p_{2,1}, ..`
    /// (resp. only the present `f_{i,j}`).
    pub fn flat_coords(&self) -> Vec<S> {
        match self {
            SpacePoint::QuasiExp(x) => x.coords.iter().flatten().cloned().collect(),
            SpacePoint::Poly(x) => {
                let d = exponent_set(&x.lambda);
                let mut out = Vec::new();
                for (c, &di) in x.coords.iter().zip(&d) {
                    for (j, v) in c.iter().enumerate() {
                        if !d.contains(&(di - j - 1)) {
                            out.push(v.clone());
                        }
                    }
                }
                out
            }
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SpacePoint<T> {
        let coords = |c: &Vec<Vec<S>>| c.iter().map(|r| r.iter().map(&f).collect()).collect();
        match self {
            SpacePoint::QuasiExp(x) => SpacePoint::QuasiExp(QuasiExpSpacePoint {
                q: x.q.iter().map(&f).collect(),
                lambda: x.lambda.clone(),
                coords: coords(&x.coords),
            }),
            SpacePoint::Poly(x) => SpacePoint::Poly(PolySpacePoint { lambda: x.lambda.clone(), coords: coords(&x.coords) }),
        }
    }
}

/// Monic polynomial part of `Wr(f_1(u - 1), .., f_N(u - 1))`.
pub fn monic_wronskian<S: Scalar>(fs: &[QuasiExp<S>]) -> Result<Poly<S>> {
    let shifted: Vec<QuasiExp<S>> = fs.iter().map(|f| f.shifted(1)).collect();
    let w = discrete_wronskian(&shifted).poly;
    if w.is_zero() {
        return Err(Error::DegenerateSpace);
    }
    Ok(w.monic())
}

/// The discrete Wronski map: `(a_1, .., a_n)` with the monic polynomial part
/// of the Wronskian equal to `u^n + sum (-1)^s a_s u^{n-s}`.
pub fn wronski_map<S: Scalar>(x: &SpacePoint<S>) -> Result<Vec<S>> {
    let w = monic_wronskian(&x.basis())?;
    let n = w.degree().unwrap_or(0);
    Ok((1..=n).map(|s| if s % 2 == 0 { w.coeff(n - s) } else { -w.coeff(n - s) }).collect())
}

/// The monic difference operator of order `N` killing the space: the row
/// determinant of `[f_i(u - m)]` over a last row `τ^m`, expanded along that
/// row and divided by its `τ^0` coefficient.
pub fn space_diffop<S: Scalar>(x: &SpacePoint<S>) -> Result<DiffOp<S>> {
    let fs = x.basis();
    let n = fs.len();
    // entries with the common factor q_i^u stripped from row i
    let rows: Vec<Vec<Poly<S>>> = fs.iter().map(|f| (0..=n).map(|m| f.shifted(m as i64).poly).collect()).collect();
    let cofactor = |m: usize| {
        let minor: Vec<Vec<Poly<S>>> =
            rows.iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != m).map(|(_, p)| p.clone()).collect()).collect();
        let det = poly_determinant(&minor);
        if (n + m) % 2 == 0 {
            det
        } else {
            -det
        }
    };
    let lead = cofactor(0);
    if lead.is_zero() {
        return Err(Error::DegenerateSpace);
    }
    Ok(DiffOp::from_terms((0..=n).map(|m| (m as i64, RatFun::new(cofactor(m), lead.clone())))))
}

/// Coefficient series of the operator `sum (-1)^k F_k(u) τ^k` to order
/// `order`; the polynomial case returns the rebased `G_k` instead.
pub fn extract_coeffs<S: Scalar>(x: &SpacePoint<S>, order: usize) -> Result<Vec<SeriesUinv<S>>> {
    let d = space_diffop(x)?;
    let n = x.basis().len();
    let f: Vec<SeriesUinv<S>> = (0..=n)
        .map(|k| {
            let c = d.coeff(k as i64);
            let c = if k % 2 == 1 { c.neg() } else { c };
            SeriesUinv::from_ratfun(&c, order)
        })
        .collect::<Result<_>>()?;
    Ok(match x {
        SpacePoint::QuasiExp(_) => f,
        SpacePoint::Poly(_) => tau_basis_change(&f),
    })
}

/// `∏_s (x - λ_s - N + s)`, whose roots are the exponents `d_s`.
pub fn chi_polynomial<S: Scalar>(lambda: &[usize]) -> Poly<S> {
    let d: Vec<S> = exponent_set(lambda).iter().map(|&x| S::from_i64(x as i64)).collect();
    Poly::from_roots(&d)
}

/// Coefficient of `u^e` in `sum_k (-1)^k F_k(u) base^-k p(u - k)`.
fn laurent_coeff<S: Scalar>(f: &[SeriesUinv<S>], base: &S, p: &Poly<S>, e: i64) -> Result<S> {
    let mut acc = S::zero();
    for (k, fk) in f.iter().enumerate() {
        let shifted = p.shift_int(k as i64).scale(&base.powi(-(k as i64)));
        let Some(deg) = shifted.degree() else { continue };
        let mut term = S::zero();
        for r in 0..=deg {
            let s = r as i64 - e;
            if s < 0 {
                continue;
            }
            if s as usize > fk.order() {
                return Err(Error::SeriesTooShort { have: fk.order(), need: s as usize });
            }
            term = term + fk.coeff(s as usize).clone() * shifted.coeff(r);
        }
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    Ok(acc)
}

/// Solves for the coordinate `j` of a monic polynomial whose lower
/// coordinates are known: the Laurent coefficient at `u^e` is affine in it.
fn solve_coordinate<S: Scalar>(
    f: &[SeriesUinv<S>],
    base: &S,
    coeffs: &mut [S],
    slot: usize,
    e: i64,
) -> Result<()> {
    coeffs[slot] = S::zero();
    let c0 = laurent_coeff(f, base, &Poly::new(coeffs.to_vec()), e)?;
    coeffs[slot] = S::one();
    let c1 = laurent_coeff(f, base, &Poly::new(coeffs.to_vec()), e)?;
    let slope = c1 - c0.clone();
    if slope.is_zero() {
        return Err(Error::DivisionByZero(format!("coordinate at u^{slot} is not determined")));
    }
    coeffs[slot] = -c0 / slope;
    Ok(())
}

/// Rebuilds the space point from its coefficient table, one coordinate at a
/// time in increasing `j`.
pub fn recover_coordinates<S: Scalar>(table: &[SeriesUinv<S>], shape: &SpaceShape<S>) -> Result<SpacePoint<S>> {
    match shape {
        SpaceShape::QuasiExp { q, lambda } => {
            if let Some((i, j)) = repeated(q) {
                return Err(Error::RepeatedQ { i, j });
            }
            let mut coords = Vec::with_capacity(lambda.len());
            for (qi, &l) in q.iter().zip(lambda) {
                let mut c = vec![S::zero(); l + 1];
                c[l] = S::one();
                for j in 1..=l {
                    solve_coordinate(table, qi, &mut c, l - j, l as i64 - j as i64 - 1)?;
                }
                coords.push((1..=l).map(|j| c[l - j].clone()).collect());
            }
            Ok(SpacePoint::QuasiExp(QuasiExpSpacePoint::new(q.clone(), lambda.clone(), coords)?))
        }
        SpaceShape::Poly { lambda } => {
            let f = tau_basis_restore(table);
            let n = lambda.len() as i64;
            let d = exponent_set(lambda);
            let mut coords = Vec::with_capacity(lambda.len());
            for &di in &d {
                let mut c = vec![S::zero(); di + 1];
                c[di] = S::one();
                for j in 1..=di {
                    if d.contains(&(di - j)) {
                        continue;
                    }
                    solve_coordinate(&f, &S::one(), &mut c, di - j, di as i64 - j as i64 - n)?;
                }
                coords.push((1..=di).map(|j| c[di - j].clone()).collect());
            }
            Ok(SpacePoint::Poly(PolySpacePoint::new(lambda.clone(), coords)?))
        }
    }
}

fn repeated<S: Scalar>(q: &[S]) -> Option<(usize, usize)> {
    (0..q.len()).flat_map(|i| (i + 1..q.len()).map(move |j| (i, j))).find(|&(i, j)| q[i] == q[j])
}

/// The space point spanned by the kernel of the fundamental operator of a
/// Bethe solution.
pub fn fiber_from_bethe<S: Scalar>(t: &BetheRoots<S>, prob: &BetheProblem<S>, eps: f64) -> Result<SpacePoint<S>> {
    let d = fundamental_operator(t, prob);
    let kernel = kernel_quasiexp(&d, prob, eps)?;
    let coords = |f: &QuasiExp<S>| {
        let deg = f.poly.degree().unwrap_or(0);
        (1..=deg).map(|j| f.poly.coeff(deg - j)).collect::<Vec<S>>()
    };
    Ok(match KernelShape::for_problem(prob)? {
        KernelShape::QuasiExp => SpacePoint::QuasiExp(QuasiExpSpacePoint::new(
            prob.q.clone(),
            prob.lambda.clone(),
            kernel.iter().map(coords).collect(),
        )?),
        KernelShape::Polynomial => {
            SpacePoint::Poly(PolySpacePoint { lambda: prob.lambda.clone(), coords: kernel.iter().map(coords).collect() })
        }
    })
}
