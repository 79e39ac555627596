//! Exact partial-fraction algebra for the second-order reductions.
//!
//! Every ODE coefficient in this crate is a rational function with at most
//! double poles. We carry them as explicit tables
//!
//! ```text
//! constant + sum_i [ c1_i/(z - p_i) + c2_i/(z - p_i)^2 ],
//! ```
//!
//! so singular-point locations, residues, and indicial data are read off
//! exactly instead of being hunted numerically. The module provides the
//! closed algebra needed to eliminate one component of a first-order 2x2
//! system (producing `y'' + p y' + q y = 0`), to apply power/exponential
//! substitutions `y = prod (z-a_i)^{s_i} e^{bz} phi`, to rescale the
//! independent variable, and to derive Frobenius exponents.

use crate::domain::{Error, Result};

/// One pole: simple part `c1/(z-location)` plus double part `c2/(z-location)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub location: f64,
    pub c1: f64,
    pub c2: f64,
}

/// A rational function in partial-fraction form. Pole locations are merged
/// by exact f64 equality: all construction paths derive coinciding locations
/// from the same shared constants, so bitwise equality is the right notion.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PoleTable {
    pub constant: f64,
    pub poles: Vec<Pole>,
}

impl PoleTable {
    pub fn constant(value: f64) -> Self {
        Self {
            constant: value,
            poles: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds `constant + sum c1_i/(z - loc_i)` from (location, residue) pairs.
    pub fn with_simple_poles(constant: f64, simple: &[(f64, f64)]) -> Self {
        let mut t = Self::constant(constant);
        for &(loc, c1) in simple {
            t.add_c1(loc, c1);
        }
        t
    }

    pub fn add_c1(&mut self, location: f64, c1: f64) {
        if c1 == 0.0 {
            return;
        }
        match self.poles.iter_mut().find(|p| p.location == location) {
            Some(p) => p.c1 += c1,
            None => self.poles.push(Pole {
                location,
                c1,
                c2: 0.0,
            }),
        }
    }

    pub fn add_c2(&mut self, location: f64, c2: f64) {
        if c2 == 0.0 {
            return;
        }
        match self.poles.iter_mut().find(|p| p.location == location) {
            Some(p) => p.c2 += c2,
            None => self.poles.push(Pole {
                location,
                c1: 0.0,
                c2,
            }),
        }
    }

    pub fn c1_at(&self, location: f64) -> f64 {
        self.poles
            .iter()
            .find(|p| p.location == location)
            .map_or(0.0, |p| p.c1)
    }

    pub fn c2_at(&self, location: f64) -> f64 {
        self.poles
            .iter()
            .find(|p| p.location == location)
            .map_or(0.0, |p| p.c2)
    }

    pub fn is_purely_simple(&self) -> bool {
        self.poles.iter().all(|p| p.c2 == 0.0)
    }

    /// Largest absolute coefficient; the natural scale for relative checks.
    pub fn magnitude(&self) -> f64 {
        let mut m = self.constant.abs();
        for p in &self.poles {
            m = m.max(p.c1.abs()).max(p.c2.abs());
        }
        m
    }

    pub fn eval(&self, z: f64) -> f64 {
        let mut v = self.constant;
        for p in &self.poles {
            let d = z - p.location;
            v += p.c1 / d + p.c2 / (d * d);
        }
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant += other.constant;
        for p in &other.poles {
            out.add_c1(p.location, p.c1);
            out.add_c2(p.location, p.c2);
        }
        out.drop_null_poles();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, k: f64) -> Self {
        let mut out = self.clone();
        out.constant *= k;
        for p in &mut out.poles {
            p.c1 *= k;
            p.c2 *= k;
        }
        out.drop_null_poles();
        out
    }

    fn drop_null_poles(&mut self) {
        self.poles.retain(|p| p.c1 != 0.0 || p.c2 != 0.0);
    }

    /// Product of two tables with only simple poles. The result has at most
    /// double poles, which keeps the algebra closed: cross terms use
    ///   1/((z-p)(z-q)) = [1/(z-p) - 1/(z-q)]/(p-q).
    pub fn mul(&self, other: &Self) -> Self {
        assert!(
            self.is_purely_simple() && other.is_purely_simple(),
            "products are only defined between simple-pole tables"
        );
        let mut out = Self::constant(self.constant * other.constant);
        for p in &other.poles {
            out.add_c1(p.location, self.constant * p.c1);
        }
        for p in &self.poles {
            out.add_c1(p.location, other.constant * p.c1);
        }
        for a in &self.poles {
            for b in &other.poles {
                if a.location == b.location {
                    out.add_c2(a.location, a.c1 * b.c1);
                } else {
                    let k = a.c1 * b.c1 / (a.location - b.location);
                    out.add_c1(a.location, k);
                    out.add_c1(b.location, -k);
                }
            }
        }
        out.drop_null_poles();
        out
    }

    /// d/dz of a simple-pole table: c1/(z-p) -> -c1/(z-p)^2.
    pub fn derivative(&self) -> Self {
        assert!(
            self.is_purely_simple(),
            "derivative is only needed for simple-pole tables"
        );
        let mut out = Self::zero();
        for p in &self.poles {
            out.add_c2(p.location, -p.c1);
        }
        out
    }

    /// Coefficients (ascending) of the numerator polynomial of this table
    /// over the common denominator prod (z - p_i). Requires simple poles.
    pub fn numerator_coefficients(&self) -> Vec<f64> {
        assert!(self.is_purely_simple());
        // constant * prod_j (z - p_j) + sum_i c1_i * prod_{j != i} (z - p_j)
        let mut num = vec![self.constant];
        for p in &self.poles {
            num = poly_mul(&num, &[-p.location, 1.0]);
        }
        for (i, pi) in self.poles.iter().enumerate() {
            let mut term = vec![pi.c1];
            for (j, pj) in self.poles.iter().enumerate() {
                if i != j {
                    term = poly_mul(&term, &[-pj.location, 1.0]);
                }
            }
            num = poly_add(&num, &term);
        }
        trim_poly(num)
    }

    /// Logarithmic derivative b'/b as a pole table: +1/(z - r) at each
    /// numerator root r, -1/(z - p) at each pole p. Numerator degree must be
    /// <= 2 (always true for the systems in this crate); complex numerator
    /// roots surface as `ComplexAuxiliaryPoints`.
    pub fn log_derivative(&self) -> Result<Self> {
        let num = self.numerator_coefficients();
        if num.iter().all(|&c| c == 0.0) {
            return Err(Error::Domain(
                "logarithmic derivative of the zero function (coupling vanishes identically)"
                    .into(),
            ));
        }
        let roots = real_roots(&num)?;
        let mut out = Self::zero();
        for &r in &roots {
            // A numerator root colliding with a pole means the "pole" was
            // removable and the table misrepresents the function.
            for p in &self.poles {
                if (r - p.location).abs() <= 1e-9 * (1.0 + p.location.abs()) {
                    return Err(Error::Domain(format!(
                        "numerator root {r} collides with pole {}: coupling degenerates",
                        p.location
                    )));
                }
            }
            out.add_c1(r, 1.0);
        }
        for p in &self.poles {
            out.add_c1(p.location, -1.0);
        }
        Ok(out)
    }
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn poly_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len().max(b.len())];
    for (i, &ai) in a.iter().enumerate() {
        out[i] += ai;
    }
    for (i, &bi) in b.iter().enumerate() {
        out[i] += bi;
    }
    out
}

/// Drops a leading coefficient that is pure rounding debris relative to the
/// polynomial's scale, so the degree reflects the actual function.
fn trim_poly(mut c: Vec<f64>) -> Vec<f64> {
    let scale = c.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    while c.len() > 1 {
        let last = *c.last().unwrap();
        if last == 0.0 || last.abs() < 1e-12 * scale {
            c.pop();
        } else {
            break;
        }
    }
    c
}

/// Real roots of a polynomial of degree <= 2 (ascending coefficients).
/// Degree-2 roots use the cancellation-stable quadratic formula.
pub fn real_roots(coeffs: &[f64]) -> Result<Vec<f64>> {
    match coeffs.len() {
        0 | 1 => Ok(Vec::new()),
        2 => Ok(vec![-coeffs[0] / coeffs[1]]),
        3 => {
            let (c, b, a) = (coeffs[0], coeffs[1], coeffs[2]);
            let disc = b * b - 4.0 * a * c;
            if disc < 0.0 {
                return Err(Error::ComplexAuxiliaryPoints { discriminant: disc });
            }
            let sq = disc.sqrt();
            let qv = if b >= 0.0 {
                -0.5 * (b + sq)
            } else {
                -0.5 * (b - sq)
            };
            if qv == 0.0 {
                // b = 0 and disc = 0: double root at the origin shift.
                return Ok(vec![0.0, 0.0]);
            }
            Ok(vec![qv / a, c / qv])
        }
        n => Err(Error::Domain(format!(
            "numerator degree {} unsupported (only <= 2 occurs in these systems)",
            n - 1
        ))),
    }
}

/// Eliminates v from  u' = a u + b v,  v' = c u + d v,  yielding
/// u'' + p u' + q u = 0 with
///   p = -(a + d + b'/b),
///   q = a d - b c - a' + a (b'/b).
/// The logarithmic derivative introduces the "additional" singular points at
/// the numerator roots of b.
pub fn eliminate(
    a: &PoleTable,
    b: &PoleTable,
    c: &PoleTable,
    d: &PoleTable,
) -> Result<(PoleTable, PoleTable)> {
    let ld = b.log_derivative()?;
    let p = a.add(d).add(&ld).scaled(-1.0);
    let q = a
        .mul(d)
        .sub(&b.mul(c))
        .sub(&a.derivative())
        .add(&a.mul(&ld));
    Ok((p, q))
}

/// Applies y = prod_i (z - loc_i)^{s_i} * e^{rate*z} * phi to
/// y'' + p y' + q y = 0, returning the (p, q) of the phi-equation:
///   L = sum s_i/(z - loc_i) + rate,
///   p_new = p + 2L,  q_new = q + pL + L^2 + L'.
/// At each loc_i the double-pole part of q_new is
/// q2 + s(s-1) + p1*s — exactly the indicial polynomial — so choosing an
/// indicial root s_i cancels that double pole.
pub fn shift_substitution(
    p: &PoleTable,
    q: &PoleTable,
    factors: &[(f64, f64)],
    rate: f64,
) -> (PoleTable, PoleTable) {
    let mut l = PoleTable::constant(rate);
    for &(loc, s) in factors {
        l.add_c1(loc, s);
    }
    let p_new = p.add(&l.scaled(2.0));
    let q_new = q.add(&p.mul(&l)).add(&l.mul(&l)).add(&l.derivative());
    (p_new, q_new)
}

/// Rewrites a coefficient under z = scale * x (old variable = scale * new).
/// `order` is the derivative order the coefficient multiplies when the ODE is
/// written as y'' + p y' + q y: p transforms with order 1, q with order 2.
pub fn scale_variable(t: &PoleTable, scale: f64, order: i32) -> PoleTable {
    let pow = |k: i32| scale.powi(k);
    let mut out = PoleTable::constant(t.constant * pow(order));
    for p in &t.poles {
        let loc = p.location / scale;
        out.add_c1(loc, p.c1 * pow(order - 1));
        out.add_c2(loc, p.c2 * pow(order - 2));
    }
    out
}

/// Where a singular point sits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    Finite(f64),
    Infinity,
}

/// The two Frobenius exponents at a regular singular point, or a marker that
/// the point is irregular (rank >= 1, no power-law pair).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentPair {
    Real(f64, f64),
    /// Complex-conjugate pair re +/- i*im (im > 0). Not a bound-state branch.
    Complex {
        re: f64,
        im: f64,
    },
    Irregular,
}

impl ExponentPair {
    /// Roots of s^2 + (p1 - 1) s + q2 = 0, the indicial polynomial at a
    /// finite regular singular point with simple p-residue p1 and double
    /// q-coefficient q2.
    pub fn from_indicial(p1: f64, q2: f64) -> Self {
        let b = p1 - 1.0;
        let disc = b * b - 4.0 * q2;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            let s = if b >= 0.0 {
                -0.5 * (b + sq)
            } else {
                -0.5 * (b - sq)
            };
            if s == 0.0 {
                return ExponentPair::Real(0.0, 0.0);
            }
            let (r1, r2) = (s, q2 / s);
            if r1 <= r2 {
                ExponentPair::Real(r1, r2)
            } else {
                ExponentPair::Real(r2, r1)
            }
        } else {
            ExponentPair::Complex {
                re: -b / 2.0,
                im: (-disc).sqrt() / 2.0,
            }
        }
    }

    /// Residual of the indicial polynomial at both members of the pair;
    /// ~0 certifies that the pair really consists of its roots.
    pub fn indicial_residual(&self, p1: f64, q2: f64) -> f64 {
        let poly = |s: f64| s * s + (p1 - 1.0) * s + q2;
        match *self {
            ExponentPair::Real(r1, r2) => poly(r1).abs().max(poly(r2).abs()),
            ExponentPair::Complex { re, im } => {
                // |(re + i im)^2 + (p1-1)(re + i im) + q2|
                let real = re * re - im * im + (p1 - 1.0) * re + q2;
                let imag = 2.0 * re * im + (p1 - 1.0) * im;
                real.hypot(imag)
            }
            ExponentPair::Irregular => f64::INFINITY,
        }
    }
}

/// A singular point plus its exponents and the bound-state branch note.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularPointProfile {
    pub location: Location,
    pub exponents: ExponentPair,
    /// Which exponent carries the physical (bound-state) branch, and why;
    /// empty when the point is apparent or off the physical domain.
    pub physical_branch: String,
}

/// A second-order linear ODE y'' + p(z) y' + q(z) y = 0 with rational
/// coefficients, plus its analyzed singular-point list and a human-readable
/// note on how its variable relates to the physical radial coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct SecondOrderODE {
    pub p: PoleTable,
    pub q: PoleTable,
    pub singular_points: Vec<SingularPointProfile>,
    pub variable_map: String,
}

impl SecondOrderODE {
    /// Builds the ODE and analyzes every finite pole location plus infinity.
    pub fn new(p: PoleTable, q: PoleTable, variable_map: impl Into<String>) -> Self {
        let singular_points = analyze_singular_points(&p, &q);
        Self {
            p,
            q,
            singular_points,
            variable_map: variable_map.into(),
        }
    }

    /// y'' + p y' + q y at a point, given the jet (y, y', y'').
    pub fn residual(&self, z: f64, y: f64, dy: f64, d2y: f64) -> f64 {
        d2y + self.p.eval(z) * dy + self.q.eval(z) * y
    }

    /// Residual normalized by the largest participating term.
    pub fn relative_residual(&self, z: f64, y: f64, dy: f64, d2y: f64) -> f64 {
        let t1 = d2y;
        let t2 = self.p.eval(z) * dy;
        let t3 = self.q.eval(z) * y;
        let scale = t1.abs().max(t2.abs()).max(t3.abs()).max(f64::MIN_POSITIVE);
        (t1 + t2 + t3).abs() / scale
    }

    /// The same equation in x = z / scale (new variable x, old z = scale*x).
    pub fn rescaled(&self, scale: f64, variable_map: impl Into<String>) -> Self {
        Self::new(
            scale_variable(&self.p, scale, 1),
            scale_variable(&self.q, scale, 2),
            variable_map,
        )
    }

    pub fn profile_at(&self, location: f64) -> Option<&SingularPointProfile> {
        self.singular_points.iter().find(|s| match s.location {
            Location::Finite(l) => l == location,
            Location::Infinity => false,
        })
    }

    pub fn profile_at_infinity(&self) -> Option<&SingularPointProfile> {
        self.singular_points
            .iter()
            .find(|s| s.location == Location::Infinity)
    }
}

/// Indicial analysis of every pole of (p, q) and of the point at infinity.
///
/// Finite points: exponents solve s(s-1) + p1 s + q2 = 0.
/// Infinity is regular iff p and q decay (no constants, q residues summing
/// to zero); then with p_inf = sum of p-residues and
/// q_inf = sum (c2_i + c1_i * loc_i), exponents solve
/// s^2 + (1 - p_inf) s + q_inf = 0. Otherwise infinity is irregular
/// (the confluent case).
pub fn analyze_singular_points(p: &PoleTable, q: &PoleTable) -> Vec<SingularPointProfile> {
    let mut locations: Vec<f64> = Vec::new();
    for pole in p.poles.iter().chain(q.poles.iter()) {
        if !locations.contains(&pole.location) {
            locations.push(pole.location);
        }
    }
    locations.sort_by(|a, b| a.partial_cmp(b).unwrap());

    let mut out: Vec<SingularPointProfile> = Vec::new();
    for loc in locations {
        let exponents = if p.c2_at(loc) != 0.0 {
            // A double pole in p exceeds Fuchs' bound: irregular point.
            ExponentPair::Irregular
        } else {
            ExponentPair::from_indicial(p.c1_at(loc), q.c2_at(loc))
        };
        out.push(SingularPointProfile {
            location: Location::Finite(loc),
            exponents,
            physical_branch: String::new(),
        });
    }

    let scale = p.magnitude().max(q.magnitude()).max(1e-300);
    let q_c1_sum: f64 = q.poles.iter().map(|pl| pl.c1).sum();
    let regular_at_inf = p.constant.abs() <= 1e-10 * scale
        && q.constant.abs() <= 1e-10 * scale
        && q_c1_sum.abs() <= 1e-10 * scale;
    let exponents = if regular_at_inf {
        let p_inf: f64 = p.poles.iter().map(|pl| pl.c1).sum();
        let q_inf: f64 = q.poles.iter().map(|pl| pl.c2 + pl.c1 * pl.location).sum();
        // At infinity the indicial polynomial is s^2 + (1 - p_inf) s + q_inf,
        // i.e. from_indicial with p1 replaced by 2 - p_inf.
        ExponentPair::from_indicial(2.0 - p_inf, q_inf)
    } else {
        ExponentPair::Irregular
    };
    out.push(SingularPointProfile {
        location: Location::Infinity,
        exponents,
        physical_branch: String::new(),
    });
    out
}
