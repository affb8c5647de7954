//! Root data, Chevalley bases and Weyl groups for types A1 and A2.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rat::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A1,
    A2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A1 => 1,
            CartanType::A2 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CartanType::A1 => "A1",
            CartanType::A2 => "A2",
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A1" | "a1" | "sl2" => Ok(CartanType::A1),
            "A2" | "a2" | "sl3" => Ok(CartanType::A2),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Q>);

impl Weight {
    pub fn new(coords: Vec<Q>) -> Self {
        Weight(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| Q::from_int(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Q::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    /// `<self, alpha_i^vee>`.
    pub fn pairing(&self, i: usize) -> &Q {
        &self.0[i]
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Q::is_integer)
    }

    pub fn int_coords(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| if c.is_integer() { c.to_i64() } else { None }).collect()
    }

    pub fn scale(&self, c: i64) -> Weight {
        let c = Q::from_int(c);
        Weight(self.0.iter().map(|x| x * &c).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Q::is_zero)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a.clone()).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        weight_json(self).serialize(s)
    }
}

/// Integer coordinates serialize as numbers, others as `"p/q"` strings.
pub fn weight_json(w: &Weight) -> serde_json::Value {
    serde_json::Value::Array(
        w.coords()
            .iter()
            .map(|c| match c.to_i64() {
                Some(n) if c.is_integer() => serde_json::Value::from(n),
                _ => serde_json::Value::from(c.to_string()),
            })
            .collect(),
    )
}

impl FromStr for Weight {
    type Err = Error;

    /// Parses `"a,b"` or `"[a,b]"` with rational entries.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let coords = t
            .split(',')
            .map(|p| p.trim().parse::<Q>().map_err(|_| Error::Spec(format!("bad weight `{s}`"))))
            .collect::<Result<Vec<Q>>>()?;
        Ok(Weight(coords))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EltKind {
    Lower,
    Cartan,
    Raise,
}

/// One element of the Chevalley basis, with its matrix in the defining representation.
#[derive(Clone, Debug)]
pub struct BasisElt {
    pub name: &'static str,
    pub kind: EltKind,
    /// Weight of the element in simple-root coordinates.
    pub root: [i32; 2],
    /// Simple root index for `x_i`, `y_i`, `h_i`.
    pub simple: Option<usize>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct PositiveRoot {
    pub root: [i32; 2],
    pub weight: Weight,
    pub height: u32,
}

/// Weyl group element: reduced word (applied right to left) and its matrix on
/// fundamental coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElt {
    pub word: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElt {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        let n = self.matrix.len();
        Weight::new(
            (0..n)
                .map(|i| {
                    let mut acc = Q::zero();
                    for j in 0..n {
                        acc.add_mul(&Q::from_int(self.matrix[i][j]), w.pairing(j));
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn name(&self) -> String {
        if self.word.is_empty() {
            return "e".into();
        }
        self.word.iter().map(|&i| format!("s{}", i + 1)).collect::<Vec<_>>().join("")
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub ty: CartanType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub simple_roots: Vec<Weight>,
    pub positive_roots: Vec<PositiveRoot>,
    pub rho: Weight,
    pub weyl_group: Vec<WeylElt>,
    /// Chevalley basis in normal order: lowering (highest first), Cartan, raising.
    pub basis: Vec<BasisElt>,
    brackets: Vec<Vec<Vec<(usize, i64)>>>,
    tau: Vec<(usize, i64)>,
}

fn unit_matrix(n: usize, i: usize, j: usize, s: i64) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; n]; n];
    m[i][j] = s;
    m
}

fn commutator(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
        }
    }
    c
}

fn basis_for(ty: CartanType) -> Vec<BasisElt> {
    use EltKind::*;
    match ty {
        CartanType::A1 => vec![
            BasisElt { name: "y", kind: Lower, root: [-1, 0], simple: Some(0), matrix: unit_matrix(2, 1, 0, 1) },
            BasisElt {
                name: "h",
                kind: Cartan,
                root: [0, 0],
                simple: Some(0),
                matrix: vec![vec![1, 0], vec![0, -1]],
            },
            BasisElt { name: "x", kind: Raise, root: [1, 0], simple: Some(0), matrix: unit_matrix(2, 0, 1, 1) },
        ],
        CartanType::A2 => {
            let xa = unit_matrix(3, 0, 1, 1);
            let xb = unit_matrix(3, 1, 2, 1);
            let ya = unit_matrix(3, 1, 0, 1);
            let yb = unit_matrix(3, 2, 1, 1);
            let xab = commutator(&xa, &xb);
            let yab = commutator(&ya, &yb);
            vec![
                BasisElt { name: "y_ab", kind: Lower, root: [-1, -1], simple: None, matrix: yab },
                BasisElt { name: "y_b", kind: Lower, root: [0, -1], simple: Some(1), matrix: yb },
                BasisElt { name: "y_a", kind: Lower, root: [-1, 0], simple: Some(0), matrix: ya },
                BasisElt {
                    name: "h_a",
                    kind: Cartan,
                    root: [0, 0],
                    simple: Some(0),
                    matrix: vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 0]],
                },
                BasisElt {
                    name: "h_b",
                    kind: Cartan,
                    root: [0, 0],
                    simple: Some(1),
                    matrix: vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, -1]],
                },
                BasisElt { name: "x_a", kind: Raise, root: [1, 0], simple: Some(0), matrix: xa },
                BasisElt { name: "x_b", kind: Raise, root: [0, 1], simple: Some(1), matrix: xb },
                BasisElt { name: "x_ab", kind: Raise, root: [1, 1], simple: None, matrix: xab },
            ]
        }
    }
}

/// Coordinates of a traceless defining-representation matrix in the basis.
fn decompose(basis: &[BasisElt], m: &[Vec<i64>]) -> Vec<(usize, i64)> {
    let n = m.len();
    let mut out = Vec::new();
    let mut partial = 0;
    for (k, b) in basis.iter().enumerate() {
        match b.kind {
            EltKind::Cartan => {
                let idx = b.simple.unwrap();
                partial += m[idx][idx];
                if partial != 0 {
                    out.push((k, partial));
                }
            }
            _ => {
                let (i, j, s) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find_map(|(i, j)| (b.matrix[i][j] != 0).then(|| (i, j, b.matrix[i][j])))
                    .unwrap();
                if m[i][j] != 0 {
                    out.push((k, m[i][j] * s));
                }
            }
        }
    }
    out
}

fn weyl_group_for(cartan: &[Vec<i64>]) -> Vec<WeylElt> {
    let n = cartan.len();
    let reflection = |i: usize| -> Vec<Vec<i64>> {
        // s_i(lambda) = lambda - lambda_i alpha_i, alpha_i = row i of the Cartan matrix
        let mut m = vec![vec![0; n]; n];
        for (j, row) in m.iter_mut().enumerate() {
            row[j] = 1;
            row[i] -= cartan[i][j];
        }
        m
    };
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    };
    let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut group = vec![WeylElt { word: Vec::new(), matrix: id }];
    let mut frontier = 0;
    while frontier < group.len() {
        let cur = group[frontier].clone();
        for i in 0..n {
            let m = mul(&reflection(i), &cur.matrix);
            if group.iter().all(|g| g.matrix != m) {
                let mut word = vec![i];
                word.extend(&cur.word);
                group.push(WeylElt { word, matrix: m });
            }
        }
        frontier += 1;
    }
    group
}

impl RootDatum {
    fn build(ty: CartanType) -> RootDatum {
        let cartan = match ty {
            CartanType::A1 => vec![vec![2]],
            CartanType::A2 => vec![vec![2, -1], vec![-1, 2]],
        };
        let rank = ty.rank();
        let simple_roots: Vec<Weight> = cartan.iter().map(|row| Weight::from_ints(row)).collect();
        let roots: Vec<[i32; 2]> = match ty {
            CartanType::A1 => vec![[1, 0]],
            CartanType::A2 => vec![[1, 0], [0, 1], [1, 1]],
        };
        let mut datum = RootDatum {
            ty,
            rank,
            weyl_group: weyl_group_for(&cartan),
            cartan,
            simple_roots,
            positive_roots: Vec::new(),
            rho: Weight::from_ints(&vec![1; rank]),
            basis: basis_for(ty),
            brackets: Vec::new(),
            tau: Vec::new(),
        };
        datum.positive_roots = roots
            .iter()
            .map(|&r| PositiveRoot { root: r, weight: datum.root_to_weight(r), height: (r[0] + r[1]) as u32 })
            .collect();
        let nb = datum.basis.len();
        datum.brackets = (0..nb)
            .map(|a| {
                (0..nb)
                    .map(|b| decompose(&datum.basis, &commutator(&datum.basis[a].matrix, &datum.basis[b].matrix)))
                    .collect()
            })
            .collect();
        datum.tau = (0..nb)
            .map(|a| {
                let m = &datum.basis[a].matrix;
                let t: Vec<Vec<i64>> = (0..m.len()).map(|i| (0..m.len()).map(|j| m[j][i]).collect()).collect();
                let d = decompose(&datum.basis, &t);
                assert_eq!(d.len(), 1, "transpose of a root vector is a multiple of a basis element");
                d[0]
            })
            .collect();
        datum
    }

    /// `[e_a, e_b]` as a combination of basis elements.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.brackets[a][b]
    }

    /// The transpose anti-involution on basis elements.
    pub fn tau(&self, a: usize) -> (usize, i64) {
        self.tau[a]
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    /// Index of the basis element with the given weight (in root coordinates) and kind.
    pub fn element_with_root(&self, root: [i32; 2]) -> Option<usize> {
        self.basis.iter().position(|b| b.root == root && b.kind != EltKind::Cartan)
    }

    pub fn x(&self, i: usize) -> usize {
        self.basis.iter().position(|b| b.kind == EltKind::Raise && b.simple == Some(i)).unwrap()
    }

    pub fn y(&self, i: usize) -> usize {
        self.basis.iter().position(|b| b.kind == EltKind::Lower && b.simple == Some(i)).unwrap()
    }

    pub fn h(&self, i: usize) -> usize {
        self.basis.iter().position(|b| b.kind == EltKind::Cartan && b.simple == Some(i)).unwrap()
    }

    /// Structure constants `N_{r,s}` with `[e_r, e_s] = N_{r,s} e_{r+s}` for root pairs.
    pub fn chevalley_constants(&self) -> BTreeMap<([i32; 2], [i32; 2]), i64> {
        let mut out = BTreeMap::new();
        for (a, ea) in self.basis.iter().enumerate() {
            for (b, eb) in self.basis.iter().enumerate() {
                if ea.kind == EltKind::Cartan || eb.kind == EltKind::Cartan {
                    continue;
                }
                let sum = [ea.root[0] + eb.root[0], ea.root[1] + eb.root[1]];
                if let Some(c) = self.element_with_root(sum) {
                    let n = self.bracket(a, b).iter().find(|t| t.0 == c).map_or(0, |t| t.1);
                    out.insert((ea.root, eb.root), n);
                }
            }
        }
        out
    }

    pub fn root_to_weight(&self, r: [i32; 2]) -> Weight {
        let coeffs: Vec<Q> = (0..self.rank)
            .map(|j| Q::from_int((0..self.rank).map(|i| i64::from(r[i]) * self.cartan[i][j]).sum()))
            .collect();
        Weight::new(coeffs)
    }

    /// Simple-root coordinates of a weight.
    pub fn to_root_coords(&self, w: &Weight) -> Vec<Q> {
        match self.ty {
            CartanType::A1 => vec![w.pairing(0) / &Q::from_int(2)],
            CartanType::A2 => {
                let (a, b) = (w.pairing(0), w.pairing(1));
                let three = Q::from_int(3);
                let two = Q::from_int(2);
                vec![&(&(&two * a) + b) / &three, &(a + &(&two * b)) / &three]
            }
        }
    }

    pub fn from_root_coords(&self, r: &[Q]) -> Weight {
        Weight::new(
            (0..self.rank)
                .map(|j| {
                    let mut acc = Q::zero();
                    for (i, ri) in r.iter().enumerate() {
                        acc.add_mul(ri, &Q::from_int(self.cartan[i][j]));
                    }
                    acc
                })
                .collect(),
        )
    }

    /// Root coordinates as integers, padded to length 2, if integral.
    pub fn int_root_coords(&self, w: &Weight) -> Option<[i32; 2]> {
        let r = self.to_root_coords(w);
        let mut out = [0i32; 2];
        for (i, c) in r.iter().enumerate() {
            if !c.is_integer() {
                return None;
            }
            out[i] = i32::try_from(c.to_i64()?).ok()?;
        }
        Some(out)
    }

    pub fn height(&self, w: &Weight) -> Q {
        self.to_root_coords(w).into_iter().fold(Q::zero(), |a, b| a + b)
    }

    pub fn check_rank(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::Spec(format!("weight {w} has wrong rank for {}", self.ty)));
        }
        Ok(())
    }

    pub fn identity(&self) -> &WeylElt {
        &self.weyl_group[0]
    }

    pub fn longest(&self) -> &WeylElt {
        self.weyl_group.iter().max_by_key(|w| w.length()).unwrap()
    }

    /// The element whose reduced word (applied right to left) is `word`.
    pub fn weyl_element(&self, word: &[usize]) -> Option<WeylElt> {
        let mut w = Weight::new((0..self.rank).map(|i| Q::from_int(1 + 10 * i as i64)).collect());
        for &i in word.iter().rev() {
            w = self.reflect(i, &w);
        }
        let probe = Weight::new((0..self.rank).map(|i| Q::from_int(1 + 10 * i as i64)).collect());
        self.weyl_group.iter().find(|g| g.apply(&probe) == w).cloned()
    }

    pub fn inverse(&self, w: &WeylElt) -> WeylElt {
        let word: Vec<usize> = w.word.iter().rev().copied().collect();
        self.weyl_element(&word).expect("inverse exists")
    }

    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let c = w.pairing(i).clone();
        let coords = (0..self.rank).map(|j| w.pairing(j) - &(&c * &Q::from_int(self.cartan[i][j]))).collect();
        Weight::new(coords)
    }

    /// `w . lambda = w(lambda + rho) - rho`.
    pub fn dot_action(&self, w: &WeylElt, lambda: &Weight) -> Weight {
        &w.apply(&(lambda + &self.rho)) - &self.rho
    }

    /// `mu <= lambda`: `lambda - mu` is a nonnegative integer combination of simple roots.
    pub fn leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.to_root_coords(&(lambda - mu)).iter().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn linkage_class(&self, lambda: &Weight) -> Result<Vec<Weight>> {
        self.check_rank(lambda)?;
        if !lambda.is_integral() {
            return Err(Error::NonIntegral(lambda.to_string()));
        }
        let set: BTreeSet<Weight> = self.weyl_group.iter().map(|w| self.dot_action(w, lambda)).collect();
        Ok(set.into_iter().collect())
    }

    /// The element `mu` of the dot orbit with `mu + rho` dominant.
    pub fn linkage_rep(&self, lambda: &Weight) -> Result<Weight> {
        let class = self.linkage_class(lambda)?;
        Ok(class
            .into_iter()
            .find(|mu| (mu + &self.rho).coords().iter().all(|c| !c.is_negative()))
            .expect("every integral dot orbit meets the shifted dominant chamber"))
    }

    pub fn is_dominant_integral(&self, lambda: &Weight) -> bool {
        lambda.is_integral() && lambda.coords().iter().all(|c| !c.is_negative())
    }

    /// Number of ways to write `nu` as a sum of positive roots.
    pub fn kostant_partition(&self, nu: &Weight) -> u64 {
        let Some(r) = self.int_root_coords(nu) else { return 0 };
        self.kostant_root(r)
    }

    pub fn kostant_root(&self, r: [i32; 2]) -> u64 {
        if r[0] < 0 || r[1] < 0 {
            return 0;
        }
        fn count(roots: &[PositiveRoot], rem: [i32; 2]) -> u64 {
            let Some((first, rest)) = roots.split_first() else {
                return u64::from(rem == [0, 0]);
            };
            let mut total = 0;
            let mut left = rem;
            loop {
                total += count(rest, left);
                left = [left[0] - first.root[0], left[1] - first.root[1]];
                if left[0] < 0 || left[1] < 0 {
                    break;
                }
            }
            total
        }
        count(&self.positive_roots, r)
    }
}

/// Build a root datum from a type tag such as `"A1"` or `"A2"`.
pub fn build_root_datum(tag: &str) -> Result<RootDatum> {
    Ok(RootDatum::build(tag.parse()?))
}

/// Shared immutable root datum.
pub fn root_datum(ty: CartanType) -> &'static RootDatum {
    static A1: OnceLock<RootDatum> = OnceLock::new();
    static A2: OnceLock<RootDatum> = OnceLock::new();
    match ty {
        CartanType::A1 => A1.get_or_init(|| RootDatum::build(ty)),
        CartanType::A2 => A2.get_or_init(|| RootDatum::build(ty)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> &'static RootDatum {
        root_datum(CartanType::A2)
    }

    fn rw(r: [i32; 2]) -> Weight {
        a2().root_to_weight(r)
    }

    #[test]
    fn datum_examples() {
        let a1 = build_root_datum("A1").unwrap();
        assert_eq!(a1.rank, 1);
        assert_eq!(a1.positive_roots.len(), 1);
        assert_eq!(a1.rho, Weight::from_ints(&[1]));
        let a2 = build_root_datum("A2").unwrap();
        assert_eq!(a2.positive_roots.len(), 3);
        assert_eq!(a2.positive_roots[2].height, 2);
        assert_eq!(a2.rho, rw([1, 1]));
        assert!(matches!(build_root_datum("B2"), Err(Error::UnsupportedType(_))));
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for ty in [CartanType::A1, CartanType::A2] {
            let d = root_datum(ty);
            let mut sum = Weight::zero(d.rank);
            for r in &d.positive_roots {
                sum = &sum + &r.weight;
            }
            assert_eq!(sum, d.rho.scale(2));
        }
    }

    #[test]
    fn chevalley_conventions() {
        let d = a2();
        let (xa, xb, ya, yb) = (d.x(0), d.x(1), d.y(0), d.y(1));
        let xab = d.element_with_root([1, 1]).unwrap();
        let yab = d.element_with_root([-1, -1]).unwrap();
        assert_eq!(d.bracket(xa, xb), &[(xab, 1)]);
        assert_eq!(d.bracket(ya, yb), &[(yab, 1)]);
        assert_eq!(d.bracket(xa, ya), &[(d.h(0), 1)]);
        assert_eq!(d.tau(xab), (yab, -1));
        assert_eq!(d.tau(xa), (ya, 1));
        let n = d.chevalley_constants();
        assert_eq!(n[&([1, 0], [0, 1])], 1);
        assert_eq!(n[&([-1, 0], [0, -1])], 1);
    }

    #[test]
    fn jacobi_identity() {
        let d = a2();
        let nb = d.basis_len();
        let br = |u: &[i64], v: &[i64]| -> Vec<i64> {
            let mut out = vec![0; nb];
            #[allow(clippy::needless_range_loop)]
            for a in 0..nb {
                for b in 0..nb {
                    if u[a] == 0 || v[b] == 0 {
                        continue;
                    }
                    for &(c, k) in d.bracket(a, b) {
                        out[c] += u[a] * v[b] * k;
                    }
                }
            }
            out
        };
        let e = |i: usize| -> Vec<i64> { (0..nb).map(|j| i64::from(i == j)).collect() };
        for a in 0..nb {
            for b in 0..nb {
                for c in 0..nb {
                    let t1 = br(&e(a), &br(&e(b), &e(c)));
                    let t2 = br(&e(b), &br(&e(c), &e(a)));
                    let t3 = br(&e(c), &br(&e(a), &e(b)));
                    assert!((0..nb).all(|k| t1[k] + t2[k] + t3[k] == 0));
                }
            }
        }
    }

    #[test]
    fn dot_action_examples() {
        let d = a2();
        let zero = Weight::zero(2);
        assert_eq!(d.dot_action(d.identity(), &rw([2, 1])), rw([2, 1]));
        let sa = d.weyl_element(&[0]).unwrap();
        assert_eq!(d.dot_action(&sa, &zero), rw([-1, 0]));
        assert_eq!(d.dot_action(d.longest(), &zero), rw([-2, -2]));
        assert_eq!(d.longest().length(), 3);
        assert_eq!(d.weyl_group.len(), 6);
    }

    #[test]
    fn leq_examples() {
        let d = a2();
        let zero = Weight::zero(2);
        assert!(d.leq(&zero, &zero));
        assert!(d.leq(&rw([-1, 0]), &zero));
        assert!(!d.leq(&Weight::from_ints(&[1, 0]), &zero));
    }

    #[test]
    fn linkage_examples() {
        let a1 = root_datum(CartanType::A1);
        assert_eq!(
            a1.linkage_class(&Weight::zero(1)).unwrap(),
            vec![Weight::from_ints(&[-2]), Weight::from_ints(&[0])]
        );
        let d = a2();
        let class = d.linkage_class(&Weight::zero(2)).unwrap();
        let expected: BTreeSet<Weight> =
            [[0, 0], [-1, 0], [0, -1], [-2, -1], [-1, -2], [-2, -2]].iter().map(|&r| rw(r)).collect();
        assert_eq!(class.into_iter().collect::<BTreeSet<_>>(), expected);
        assert_eq!(d.linkage_class(&(-&d.rho)).unwrap(), vec![-&d.rho]);
        let half = Weight::new(vec![Q::new(1, 2), Q::zero()]);
        assert!(matches!(d.linkage_class(&half), Err(Error::NonIntegral(_))));
    }

    #[test]
    fn kostant_examples() {
        let d = a2();
        assert_eq!(d.kostant_partition(&Weight::zero(2)), 1);
        assert_eq!(d.kostant_partition(&rw([1, 0])), 1);
        assert_eq!(d.kostant_partition(&rw([1, 1])), 2);
        assert_eq!(d.kostant_partition(&rw([-1, 0])), 0);
        assert_eq!(d.kostant_partition(&Weight::from_ints(&[1, 0])), 0);
    }

    #[test]
    fn kostant_matches_exponent_enumeration() {
        // independent count: exponent triples (a, b, c) of alpha, beta, alpha+beta
        let d = a2();
        for p in 0..=12 {
            for q in 0..=(12 - p) {
                let mut brute = 0;
                for c in 0..=p.min(q) {
                    for a in 0..=p {
                        for b in 0..=q {
                            if a + c == p && b + c == q {
                                brute += 1;
                            }
                        }
                    }
                }
                assert_eq!(d.kostant_root([p, q]), brute);
            }
        }
    }

    fn weight_strategy() -> impl Strategy<Value = Weight> {
        (-6i64..7, -6i64..7).prop_map(|(a, b)| Weight::from_ints(&[a, b]))
    }

    proptest! {
        #[test]
        fn root_coordinate_roundtrip(a in -20i64..20, b in -20i64..20, den in 1i64..5) {
            let d = a2();
            let w = Weight::new(vec![Q::new(a, den), Q::new(b, den)]);
            prop_assert_eq!(d.from_root_coords(&d.to_root_coords(&w)), w);
        }

        #[test]
        fn dot_action_inverse(w in weight_strategy(), k in 0usize..6) {
            let d = a2();
            let g = &d.weyl_group[k];
            let inv = d.inverse(g);
            prop_assert_eq!(d.dot_action(g, &d.dot_action(&inv, &w)), w);
        }

        #[test]
        fn leq_partial_order(a in weight_strategy(), b in weight_strategy(), c in weight_strategy()) {
            let d = a2();
            prop_assert!(d.leq(&a, &a));
            if d.leq(&a, &b) && d.leq(&b, &a) { prop_assert_eq!(&a, &b); }
            if d.leq(&a, &b) && d.leq(&b, &c) { prop_assert!(d.leq(&a, &c)); }
        }

        #[test]
        fn orbit_size_divides_group_order(w in weight_strategy()) {
            let d = a2();
            prop_assert_eq!(6 % d.linkage_class(&w).unwrap().len(), 0);
        }

        #[test]
        fn reflections_are_involutions(w in weight_strategy(), i in 0usize..2) {
            let d = a2();
            prop_assert_eq!(d.reflect(i, &d.reflect(i, &w)), w);
        }
    }

    #[test]
    fn longest_element_flips_dominant_cone() {
        let d = a2();
        let w0 = d.longest();
        for (a, b) in [(1, 0), (0, 1), (2, 3)] {
            assert_eq!(w0.apply(&Weight::from_ints(&[a, b])), Weight::from_ints(&[-b, -a]));
        }
    }
}
