//! Exact linear algebra over `Q`: echelon forms, kernels, solving,
//! characteristic polynomials, simultaneous generalized eigenspaces and
//! idempotent search in small matrix algebras.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rat::{common_denominator, Q};

/// Dense row-major matrix with exact entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn scalar(n: usize, c: &Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Q::from_int(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Q) {
        let k = i * self.cols + j;
        self.data[k] += v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let orow = other.row(k);
                let base = i * out.cols;
                for (j, b) in orow.iter().enumerate() {
                    if !b.is_zero() {
                        out.data[base + j].add_mul(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_mul(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn trace(&self) -> Q {
        let mut t = Q::zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    pub fn pow(&self, e: u32) -> RatMatrix {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rows stacked: `[self; other]`.
    pub fn vstack(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        RatMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        Echelon::of_rows(self.row_vecs(), self.cols).pivots.len()
    }

    pub fn kernel(&self) -> SubspaceBasis {
        kernel(self)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form of a list of rows.
struct Echelon {
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn of_rows(mut rows: Vec<Vec<Q>>, ncols: usize) -> Echelon {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            // Prefer a pivot with a small representation to limit growth.
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(r) {
                if !row[c].is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if matches!(rows[b][c], Q::Big(_)) && matches!(row[c], Q::Small(..)) {
                                best = Some(i);
                            }
                        }
                    }
                    if row[c].is_one() {
                        best = Some(i);
                        break;
                    }
                }
            }
            let Some(p) = best else { continue };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            if !inv.is_one() {
                for x in rows[r][c..].iter_mut() {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let (head, tail) = rows.split_at_mut(r);
            let (prow, rest) = tail.split_first_mut().unwrap();
            for other in head.iter_mut().chain(rest.iter_mut()) {
                if other[c].is_zero() {
                    continue;
                }
                let f = -other[c].clone();
                for j in c..ncols {
                    if !prow[j].is_zero() {
                        other[j].add_mul(&f, &prow[j]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Echelon { rows, pivots }
    }
}

/// A subspace of `Q^ambient` stored as the rows of a reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubspaceBasis {
    ambient: usize,
    rows: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::from_vectors(ambient, (0..ambient).map(|i| unit(ambient, i)).collect())
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(ambient: usize, vecs: Vec<Vec<Q>>) -> Self {
        assert!(vecs.iter().all(|v| v.len() == ambient), "vector length mismatch");
        let e = Echelon::of_rows(vecs, ambient);
        SubspaceBasis { ambient, rows: e.rows, pivots: e.pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduce `v` modulo the subspace; the result vanishes on every pivot.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = -v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    x.add_mul(&f, r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(Q::is_zero)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Coordinates without the membership check.
    pub fn coords_unchecked(&self, v: &[Q]) -> Vec<Q> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coeffs: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.ambient];
        for (c, row) in coeffs.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    o.add_mul(c, r);
                }
            }
        }
        out
    }

    /// Add a vector; returns true if the dimension grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        let r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else { return false };
        let inv = r[p].recip();
        let r: Vec<Q> = r.iter().map(|x| x * &inv).collect();
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = -row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                if !y.is_zero() {
                    x.add_mul(&f, y);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }

    pub fn sum(&self, other: &SubspaceBasis) -> SubspaceBasis {
        let mut s = self.clone();
        for v in other.vectors() {
            s.insert(v);
        }
        s
    }

    pub fn intersect(&self, other: &SubspaceBasis) -> SubspaceBasis {
        // Solve a·A = b·B over the concatenated bases.
        if self.is_zero() || other.is_zero() {
            return SubspaceBasis::zero(self.ambient);
        }
        let n = self.dim();
        let mut cols: Vec<Vec<Q>> = self.rows.clone();
        cols.extend(other.rows.iter().map(|v| v.iter().map(|x| -x.clone()).collect()));
        let m = RatMatrix::from_columns(self.ambient, &cols);
        let k = kernel(&m);
        let vecs = k.vectors().iter().map(|c| self.combine(&c[..n])).collect();
        SubspaceBasis::from_vectors(self.ambient, vecs)
    }

    pub fn contains_space(&self, other: &SubspaceBasis) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    /// Matrix whose columns are the basis vectors.
    pub fn as_columns(&self) -> RatMatrix {
        RatMatrix::from_columns(self.ambient, &self.rows)
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Null space of `m`.
pub fn kernel(m: &RatMatrix) -> SubspaceBasis {
    let e = Echelon::of_rows(m.row_vecs(), m.cols());
    let mut is_pivot = vec![false; m.cols()];
    for &p in &e.pivots {
        is_pivot[p] = true;
    }
    let mut vecs = Vec::new();
    for f in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Q::zero(); m.cols()];
        v[f] = Q::one();
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if !row[f].is_zero() {
                v[p] = -row[f].clone();
            }
        }
        vecs.push(v);
    }
    SubspaceBasis::from_vectors(m.cols(), vecs)
}

pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}

/// Column space of `m` as a subspace of `Q^rows`.
pub fn column_space(m: &RatMatrix) -> SubspaceBasis {
    SubspaceBasis::from_vectors(m.rows(), m.transpose().row_vecs())
}

/// Some `x` with `m x = b`, or `None` if the system is inconsistent.
pub fn solve(m: &RatMatrix, b: &[Q]) -> Option<Vec<Q>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length mismatch");
    let rows: Vec<Vec<Q>> = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let e = Echelon::of_rows(rows, m.cols() + 1);
    if e.pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![Q::zero(); m.cols()];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[m.cols()].clone();
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Polynomials (coefficients lowest degree first).

pub type Poly = Vec<Q>;

pub fn poly_trim(p: &mut Poly) {
    while p.last().is_some_and(Q::is_zero) {
        p.pop();
    }
}

pub fn poly_to_string(p: &Poly) -> String {
    let mut terms = Vec::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        terms.push(match i {
            0 => format!("{c}"),
            1 => format!("({c})x"),
            _ => format!("({c})x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j].add_mul(x, y);
        }
    }
    poly_trim(&mut out);
    out
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    poly_trim(&mut out);
    out
}

fn poly_divrem(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut r = a.clone();
    poly_trim(&mut r);
    let mut b = b.clone();
    poly_trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Q::zero(); r.len() - b.len() + 1];
    let lead_inv = b.last().unwrap().recip();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * &lead_inv;
        for (i, y) in b.iter().enumerate() {
            let t = &c * y;
            r[i + shift] -= &t;
        }
        q[shift] = c;
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    (q, r)
}

/// Extended Euclid: returns `(g, u, v)` with `u a + v b = g`, `g` monic.
fn poly_gcd_ext(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Poly, Poly) = (vec![Q::one()], Vec::new());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![Q::one()]);
    poly_trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = r0.last().expect("gcd of zero polynomials").recip();
    let scale = |p: &Poly| -> Poly { p.iter().map(|x| x * &inv).collect() };
    (scale(&r0), scale(&s0), scale(&t0))
}

/// Characteristic polynomial `det(xI - m)` via Hessenberg reduction.
pub fn charpoly(m: &RatMatrix) -> Poly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut h: Vec<Vec<Q>> = m.row_vecs();
    for col in 0..n.saturating_sub(2) {
        let piv_row = col + 1;
        let Some(i) = (piv_row..n).find(|&i| !h[i][col].is_zero()) else { continue };
        if i != piv_row {
            h.swap(i, piv_row);
            for row in h.iter_mut() {
                row.swap(i, piv_row);
            }
        }
        let inv = h[piv_row][col].recip();
        for i in piv_row + 1..n {
            if h[i][col].is_zero() {
                continue;
            }
            let u = &h[i][col] * &inv;
            let neg_u = -u.clone();
            #[allow(clippy::needless_range_loop)]
            for j in 0..n {
                if !h[piv_row][j].is_zero() {
                    let t = h[piv_row][j].clone();
                    h[i][j].add_mul(&neg_u, &t);
                }
            }
            for row in h.iter_mut() {
                if !row[i].is_zero() {
                    let t = row[i].clone();
                    row[piv_row].add_mul(&u, &t);
                }
            }
        }
    }
    // p_k(x) = (x - h_kk) p_{k-1} - sum_i h_{k-i,k} (prod subdiagonal) p_{k-i-1}
    let mut ps: Vec<Poly> = vec![vec![Q::one()]];
    for k in 0..n {
        let mut p = poly_mul(&vec![-h[k][k].clone(), Q::one()], &ps[k]);
        let mut t = Q::one();
        for i in 1..=k {
            t = &t * &h[k - i + 1][k - i];
            if t.is_zero() {
                break;
            }
            let c = &h[k - i][k] * &t;
            if c.is_zero() {
                continue;
            }
            let scaled: Poly = ps[k - i].iter().map(|x| x * &c).collect();
            p = poly_sub(&p, &scaled);
        }
        if p.is_empty() {
            p = Vec::new();
        }
        ps.push(p);
    }
    let mut out = ps.pop().unwrap();
    out.resize(n + 1, Q::zero());
    out
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn synthetic_div_int(p: &[BigInt], r: &BigInt) -> Vec<BigInt> {
    let n = p.len();
    let mut q = vec![BigInt::zero(); n - 1];
    let mut carry = BigInt::zero();
    for i in (1..n).rev() {
        carry = &carry * r + &p[i];
        q[i - 1] = carry.clone();
    }
    q
}

/// Rational roots with multiplicity of a polynomial whose roots are the
/// eigenvalues of a matrix with infinity norm at most `bound`.
///
/// The polynomial is rescaled by `denom` (`x = y / denom`) so that the roots
/// become algebraic integers and hence, when rational, integers in
/// `[-bound*denom, bound*denom]`. Returns the roots and the unresolved cofactor.
fn rational_roots_bounded(p: &Poly, denom: &BigInt, bound: &Q) -> (Vec<(Q, usize)>, Poly) {
    let mut p = p.clone();
    poly_trim(&mut p);
    let deg = p.len() - 1;
    // q(y) = denom^deg p(y/denom), monic with integer coefficients when p is a
    // characteristic polynomial of a matrix with denominators dividing denom.
    let lead = p[deg].clone();
    let mut q: Vec<Q> = Vec::with_capacity(deg + 1);
    let d = Q::from_bigint(denom.clone());
    for (i, c) in p.iter().enumerate() {
        q.push(&(c / &lead) * &d.pow((deg - i) as u32));
    }
    let cd = common_denominator(q.iter());
    let mut qi: Vec<BigInt> = q.iter().map(|c| (c * &Q::from_bigint(cd.clone())).numer()).collect();
    let mut roots: Vec<(Q, usize)> = Vec::new();
    // zero roots
    let mut zmult = 0;
    while qi.len() > 1 && qi[0].is_zero() {
        qi.remove(0);
        zmult += 1;
    }
    if zmult > 0 {
        roots.push((Q::zero(), zmult));
    }
    let bound_int = (bound * &d).abs();
    let b = bound_int.numer() / bound_int.denom() + BigInt::from(1);
    let b = b.to_i64().unwrap_or(i64::MAX);
    let mut r: i64 = -b;
    while r <= b && qi.len() > 1 {
        if r != 0 {
            let rb = BigInt::from(r);
            if (&qi[0] % &rb).is_zero() {
                let mut mult = 0;
                while qi.len() > 1 && eval_int(&qi, &rb).is_zero() {
                    qi = synthetic_div_int(&qi, &rb);
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((&Q::from_int(r) / &d, mult));
                }
            }
        }
        r += 1;
    }
    // Convert the remaining cofactor back to x.
    let rest_deg = qi.len() - 1;
    let mut rest: Poly = qi
        .iter()
        .enumerate()
        .map(|(i, c)| &Q::from_bigint(c.clone()) / &d.pow((rest_deg - i) as u32))
        .collect();
    poly_trim(&mut rest);
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    (roots, rest)
}

fn infinity_norm(m: &RatMatrix) -> Q {
    (0..m.rows())
        .map(|i| m.row(i).iter().fold(Q::zero(), |acc, x| acc + x.abs()))
        .max()
        .unwrap_or_default()
}

/// Eigenvalues with algebraic multiplicity; errors if the characteristic
/// polynomial does not split over `Q`.
pub fn rational_eigenvalues(m: &RatMatrix) -> Result<Vec<(Q, usize)>> {
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    let p = charpoly(m);
    let den = common_denominator(m.entries().iter());
    let (roots, rest) = rational_roots_bounded(&p, &den, &infinity_norm(m));
    if rest.len() > 1 {
        return Err(Error::IrrationalEigenvalue(poly_to_string(&rest)));
    }
    Ok(roots)
}

/// Generalized eigenspace of `m` for the eigenvalue `r` with algebraic
/// multiplicity `mult`.
pub fn generalized_eigenspace(m: &RatMatrix, r: &Q, mult: usize) -> SubspaceBasis {
    let n = m.rows();
    let shifted = m.sub(&RatMatrix::scalar(n, r));
    let mut power = shifted.clone();
    let mut k = kernel(&power);
    while k.dim() < mult {
        power = power.mul(&shifted);
        k = kernel(&power);
    }
    k
}

/// Matrix of `m` restricted to the invariant subspace `s`, in the echelon basis of `s`.
pub fn restrict_to(m: &RatMatrix, s: &SubspaceBasis) -> RatMatrix {
    let cols: Vec<Vec<Q>> = s.vectors().iter().map(|v| s.coords_unchecked(&m.mul_vec(v))).collect();
    RatMatrix::from_columns(s.dim(), &cols)
}

/// Simultaneous generalized eigenspaces of a commuting family.
///
/// Returns `(eigenvalue tuple, subspace)` pairs sorted by tuple; the
/// subspaces form a direct-sum decomposition of the ambient space.
pub fn generalized_eigenspaces(ms: &[RatMatrix]) -> Result<Vec<(Vec<Q>, SubspaceBasis)>> {
    let Some(first) = ms.first() else { return Ok(Vec::new()) };
    let n = first.rows();
    for m in ms {
        assert!(m.is_square() && m.rows() == n, "family must be square and of equal size");
    }
    let mut out = Vec::new();
    split_family(ms, &SubspaceBasis::full(n), Vec::new(), &mut out)?;
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn split_family(
    ms: &[RatMatrix],
    space: &SubspaceBasis,
    prefix: Vec<Q>,
    out: &mut Vec<(Vec<Q>, SubspaceBasis)>,
) -> Result<()> {
    if space.is_zero() {
        return Ok(());
    }
    let Some((m, rest)) = ms.split_first() else {
        out.push((prefix, space.clone()));
        return Ok(());
    };
    let local = restrict_to(m, space);
    for (r, mult) in rational_eigenvalues(&local)? {
        let sub = generalized_eigenspace(&local, &r, mult);
        let vecs = sub.vectors().iter().map(|c| space.combine(c)).collect();
        let sub = SubspaceBasis::from_vectors(space.ambient(), vecs);
        let mut key = prefix.clone();
        key.push(r);
        split_family(rest, &sub, key, out)?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Block-diagonal matrices and idempotents.

/// Block-diagonal square matrix, the shape of weight-preserving endomorphisms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BlockMat {
    pub blocks: Vec<RatMatrix>,
}

impl BlockMat {
    pub fn new(blocks: Vec<RatMatrix>) -> Self {
        assert!(blocks.iter().all(RatMatrix::is_square));
        BlockMat { blocks }
    }

    pub fn identity_like(&self) -> BlockMat {
        BlockMat::new(self.blocks.iter().map(|b| RatMatrix::identity(b.rows())).collect())
    }

    pub fn zero_like(&self) -> BlockMat {
        BlockMat::new(self.blocks.iter().map(|b| RatMatrix::zeros(b.rows(), b.rows())).collect())
    }

    pub fn mul(&self, o: &BlockMat) -> BlockMat {
        BlockMat::new(self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.mul(b)).collect())
    }

    pub fn add(&self, o: &BlockMat) -> BlockMat {
        BlockMat::new(self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, o: &BlockMat) -> BlockMat {
        BlockMat::new(self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, c: &Q) -> BlockMat {
        BlockMat::new(self.blocks.iter().map(|a| a.scale(c)).collect())
    }

    pub fn trace(&self) -> Q {
        self.blocks.iter().fold(Q::zero(), |acc, b| acc + b.trace())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(RatMatrix::is_zero)
    }

    pub fn flatten(&self) -> Vec<Q> {
        self.blocks.iter().flat_map(|b| b.entries().iter().cloned()).collect()
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(RatMatrix::rows).sum()
    }

    fn infinity_norm(&self) -> Q {
        self.blocks.iter().map(infinity_norm).max().unwrap_or_default()
    }

    fn common_denominator(&self) -> BigInt {
        common_denominator(self.blocks.iter().flat_map(|b| b.entries().iter()))
    }

    fn eval_poly(&self, p: &Poly) -> BlockMat {
        let mut acc = self.zero_like();
        for c in p.iter().rev() {
            acc = acc.mul(self).add(&self.identity_like().scale(c));
        }
        acc
    }

    /// Minimal polynomial (monic, lowest degree first).
    pub fn minimal_polynomial(&self) -> Poly {
        let mut powers: Vec<Vec<Q>> = Vec::new();
        let mut cur = self.identity_like();
        loop {
            let flat = cur.flatten();
            if !powers.is_empty() {
                let m = RatMatrix::from_columns(flat.len(), &powers);
                if let Some(c) = solve(&m, &flat) {
                    let mut p: Poly = c.into_iter().map(|x| -x).collect();
                    p.push(Q::one());
                    return p;
                }
            }
            powers.push(flat);
            cur = cur.mul(self);
        }
    }
}

impl From<RatMatrix> for BlockMat {
    fn from(m: RatMatrix) -> Self {
        BlockMat::new(vec![m])
    }
}

/// Outcome of an idempotent search in a unital matrix algebra.
#[derive(Clone, Debug)]
pub struct IdempotentReport {
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub idempotent: Option<BlockMat>,
}

/// Search for a nontrivial idempotent in the algebra spanned by `basis`.
///
/// The Jacobson radical is the kernel of the trace form; when the semisimple
/// quotient is one-dimensional the algebra is local. Otherwise elements of the
/// algebra are tried until one has a minimal polynomial with a rational root
/// of partial multiplicity, from which the spectral projector is built.
pub fn idempotent_search(basis: &[BlockMat]) -> Result<IdempotentReport> {
    let Some(first) = basis.first() else {
        return Err(Error::NotUnital);
    };
    let flat: Vec<Vec<Q>> = basis.iter().map(BlockMat::flatten).collect();
    let len = flat[0].len();
    let span = SubspaceBasis::from_vectors(len, flat.clone());
    // independent subset of the given elements
    let mut indep: Vec<BlockMat> = Vec::new();
    let mut probe = SubspaceBasis::zero(len);
    for (b, f) in basis.iter().zip(&flat) {
        if probe.insert(f) {
            indep.push(b.clone());
        }
    }
    if !span.contains(&first.identity_like().flatten()) {
        return Err(Error::NotUnital);
    }
    for a in &indep {
        for b in &indep {
            if !span.contains(&a.mul(b).flatten()) {
                return Err(Error::NotClosed);
            }
        }
    }
    let n = indep.len();
    let mut tf = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            tf.set(i, j, indep[i].mul(&indep[j]).trace());
        }
    }
    let radical_dim = kernel(&tf).dim();
    let quotient_dim = n - radical_dim;
    let mut report = IdempotentReport { algebra_dim: n, radical_dim, idempotent: None };
    if quotient_dim <= 1 {
        return Ok(report);
    }
    for a in candidate_elements(&indep) {
        let mp = a.minimal_polynomial();
        let den = a.common_denominator();
        let (roots, rest) = rational_roots_bounded(&mp, &den, &a.infinity_norm());
        let degree = mp.len() - 1;
        if roots.is_empty() && degree == quotient_dim && rest.len() == mp.len() {
            // a generates a field of full dimension modulo the radical: local.
            if is_irreducible_guess(&mp) {
                return Ok(report);
            }
        }
        for (r, k) in roots {
            if k == degree {
                continue;
            }
            let f = pow_linear(&r, k);
            let (g, _) = poly_divrem(&mp, &f);
            let (_, _u, v) = poly_gcd_ext(&f, &g);
            let proj = poly_mul(&v, &g);
            let e = a.eval_poly(&proj);
            debug_assert!(e.mul(&e) == e);
            if e.mul(&e) == e && !e.is_zero() && e != e.identity_like() {
                report.idempotent = Some(e);
                return Ok(report);
            }
        }
    }
    Err(Error::Undecided(quotient_dim))
}

fn pow_linear(r: &Q, k: usize) -> Poly {
    let mut p: Poly = vec![Q::one()];
    for _ in 0..k {
        p = poly_mul(&p, &vec![-r.clone(), Q::one()]);
    }
    p
}

/// Irreducibility over Q is only claimed for degree <= 3 with no rational root.
fn is_irreducible_guess(p: &Poly) -> bool {
    p.len() - 1 <= 3
}

fn candidate_elements(basis: &[BlockMat]) -> Vec<BlockMat> {
    let mut out: Vec<BlockMat> = basis.to_vec();
    let n = basis.len();
    for i in 0..n {
        for j in i + 1..n {
            out.push(basis[i].add(&basis[j].scale(&Q::from_int(2))));
        }
    }
    // deterministic pseudo-random integer combinations
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15;
    for _ in 0..32 {
        let mut acc = basis[0].zero_like();
        for b in basis {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let c = ((state >> 33) % 11) as i64 - 5;
            acc = acc.add(&b.scale(&Q::from_int(c)));
        }
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&RatMatrix::zeros(3, 3)).dim(), 3);
        assert_eq!(kernel(&RatMatrix::identity(3)).dim(), 0);
        let k = kernel(&RatMatrix::from_ints(&[&[1, 1], &[2, 2]]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[q(1), q(-1)]));
    }

    #[test]
    fn solve_examples() {
        let b = vec![q(4), q(-2), Q::new(1, 3)];
        assert_eq!(solve(&RatMatrix::identity(3), &b), Some(b.clone()));
        assert_eq!(solve(&RatMatrix::from_ints(&[&[2]]), &[q(3)]), Some(vec![Q::new(3, 2)]));
        assert_eq!(solve(&RatMatrix::from_ints(&[&[1], &[1]]), &[q(1), q(2)]), None);
    }

    #[test]
    fn charpoly_of_companion() {
        // x^3 - 6x^2 + 11x - 6 = (x-1)(x-2)(x-3)
        let m = RatMatrix::from_ints(&[&[0, 0, 6], &[1, 0, -11], &[0, 1, 6]]);
        assert_eq!(charpoly(&m), vec![q(-6), q(11), q(-6), q(1)]);
        let ev = rational_eigenvalues(&m).unwrap();
        assert_eq!(ev, vec![(q(1), 1), (q(2), 1), (q(3), 1)]);
    }

    #[test]
    fn irrational_eigenvalue_is_an_error() {
        let m = RatMatrix::from_ints(&[&[0, 2], &[1, 0]]);
        assert!(matches!(rational_eigenvalues(&m), Err(Error::IrrationalEigenvalue(_))));
    }

    #[test]
    fn eigenspace_examples() {
        let d = RatMatrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let es = generalized_eigenspaces(&[d]).unwrap();
        assert_eq!(es.len(), 2);
        assert_eq!((es[0].0.clone(), es[0].1.dim()), (vec![q(1)], 2));
        assert_eq!((es[1].0.clone(), es[1].1.dim()), (vec![q(2)], 1));

        let n = RatMatrix::from_ints(&[&[0, 1], &[0, 0]]);
        let es = generalized_eigenspaces(&[n]).unwrap();
        assert_eq!(es.len(), 1);
        assert_eq!(es[0].1.dim(), 2);

        let a = RatMatrix::from_ints(&[&[1, 0], &[0, 1]]);
        let b = RatMatrix::from_ints(&[&[2, 0], &[0, 3]]);
        let es = generalized_eigenspaces(&[a, b]).unwrap();
        let keys: Vec<Vec<Q>> = es.iter().map(|e| e.0.clone()).collect();
        assert_eq!(keys, vec![vec![q(1), q(2)], vec![q(1), q(3)]]);
        assert!(es.iter().all(|e| e.1.dim() == 1));
    }

    #[test]
    fn idempotent_examples() {
        let id = BlockMat::from(RatMatrix::identity(2));
        assert!(idempotent_search(std::slice::from_ref(&id)).unwrap().idempotent.is_none());

        let p = BlockMat::from(RatMatrix::from_ints(&[&[1, 0], &[0, 0]]));
        let e = idempotent_search(&[id.clone(), p]).unwrap().idempotent.unwrap();
        assert_eq!(e.mul(&e), e);
        assert!(!e.is_zero() && e != id);

        let n = BlockMat::from(RatMatrix::from_ints(&[&[0, 1], &[0, 0]]));
        let r = idempotent_search(&[id.clone(), n]).unwrap();
        assert!(r.idempotent.is_none());
        assert_eq!(r.radical_dim, 1);

        // Q(i) inside 2x2 matrices is a field: local.
        let j = BlockMat::from(RatMatrix::from_ints(&[&[0, -1], &[1, 0]]));
        assert!(idempotent_search(&[id.clone(), j]).unwrap().idempotent.is_none());

        // not closed
        let e12 = BlockMat::from(RatMatrix::from_ints(&[&[0, 1], &[0, 0]]));
        let e21 = BlockMat::from(RatMatrix::from_ints(&[&[0, 0], &[1, 0]]));
        assert_eq!(idempotent_search(&[id, e12, e21]).unwrap_err(), Error::NotClosed);
    }

    #[test]
    fn full_matrix_algebra_splits() {
        let mut basis = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut m = RatMatrix::zeros(2, 2);
                m.set(i, j, q(1));
                basis.push(BlockMat::from(m));
            }
        }
        let e = idempotent_search(&basis).unwrap().idempotent.unwrap();
        assert_eq!(e.mul(&e), e);
        assert_eq!(e.trace(), q(1));
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
                RatMatrix::from_rows(v.chunks(c).map(|ch| ch.iter().map(|&x| q(x)).collect()).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel(&m);
            prop_assert_eq!(rank(&m) + k.dim(), m.cols());
            for v in k.vectors() {
                prop_assert!(m.mul_vec(v).iter().all(Q::is_zero));
            }
        }

        #[test]
        fn eigenspaces_are_direct(diag in proptest::collection::vec(-3i64..4, 1..6), upper in proptest::collection::vec(-2i64..3, 15)) {
            // upper triangular integer matrices have rational spectrum
            let n = diag.len();
            let mut m = RatMatrix::zeros(n, n);
            let mut k = 0;
            #[allow(clippy::needless_range_loop)]
            for i in 0..n {
                m.set(i, i, q(diag[i]));
                for j in i + 1..n {
                    m.set(i, j, q(upper[k % upper.len()]));
                    k += 1;
                }
            }
            let es = generalized_eigenspaces(&[m]).unwrap();
            let mut all = SubspaceBasis::zero(n);
            let mut total = 0;
            for (_, s) in &es {
                total += s.dim();
                for v in s.vectors() { all.insert(v); }
            }
            prop_assert_eq!(total, n);
            prop_assert_eq!(all.dim(), n);
        }
    }
}
