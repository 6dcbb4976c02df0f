//! ℝ⁷ cross product and products of 7-sphere points.
//!
//! The multiplication table is a [`CrossTable`]: seven oriented Fano-plane
//! lines `(i, j, k, sign)` meaning `êᵢ × êⱼ = sign · êₖ`, extended cyclically and
//! antisymmetrically. Everything downstream takes the table by reference so a
//! result can be recomputed under a different choice.

use std::ops::{Add, Index, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga3::{HiddenVariable, Vec3};
use crate::tolerances;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec7(pub [f64; 7]);

impl Vec7 {
    pub const ZERO: Vec7 = Vec7([0.0; 7]);

    /// Basis vector êᵢ, 1-based.
    pub fn basis(i: usize) -> Vec7 {
        assert!((1..=7).contains(&i), "basis index {i} outside 1..=7");
        let mut c = [0.0; 7];
        c[i - 1] = 1.0;
        Vec7(c)
    }

    pub fn dot(&self, o: &Vec7) -> f64 {
        self.0.iter().zip(o.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, k: f64) -> Vec7 {
        Vec7(self.0.map(|c| k * c))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn ensure_unit(&self) -> Result<()> {
        if !self.is_finite() {
            return Err(Error::NonFinite);
        }
        let n = self.norm();
        if (n - 1.0).abs() > tolerances::UNIT_INPUT {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, o: &Vec7) -> f64 {
        self.0
            .iter()
            .zip(o.0.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for Vec7 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for Vec7 {
    type Output = Vec7;
    fn add(self, o: Vec7) -> Vec7 {
        Vec7(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Vec7 {
    type Output = Vec7;
    fn sub(self, o: Vec7) -> Vec7 {
        Vec7(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Vec7 {
    type Output = Vec7;
    fn neg(self) -> Vec7 {
        self.scale(-1.0)
    }
}

/// One oriented line of the table: `êᵢ × êⱼ = sign · êₖ` (1-based indices).
pub type SignedTriple = (u8, u8, u8, i8);

/// Serialized form of a [`CrossTable`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossTableSpec {
    pub id: String,
    pub triples: Vec<SignedTriple>,
}

/// Structure constants of a 7-dimensional cross product.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossTable {
    spec: CrossTableSpec,
    /// `product[i][j] = (k, sign)` for êᵢ × êⱼ = sign·êₖ, 0-based; `None` on the diagonal.
    product: [[Option<(usize, f64)>; 7]; 7],
}

impl Default for CrossTable {
    fn default() -> Self {
        Self::fano_cyclic()
    }
}

impl CrossTable {
    /// Default table: cyclic lines {124, 235, 346, 457, 561, 672, 713}.
    pub fn fano_cyclic() -> Self {
        let triples = (0..7u8)
            .map(|s| (s % 7 + 1, (s + 1) % 7 + 1, (s + 3) % 7 + 1, 1))
            .collect();
        Self::from_spec(CrossTableSpec {
            id: "fano-cyclic".into(),
            triples,
        })
        .expect("built-in table is valid")
    }

    /// Cayley–Dickson table: {123, 145, 176, 246, 257, 347, 365}.
    pub fn cayley_dickson() -> Self {
        let lines = [
            (1, 2, 3),
            (1, 4, 5),
            (1, 7, 6),
            (2, 4, 6),
            (2, 5, 7),
            (3, 4, 7),
            (3, 6, 5),
        ];
        Self::from_spec(CrossTableSpec {
            id: "cayley-dickson".into(),
            triples: lines.iter().map(|&(i, j, k)| (i, j, k, 1)).collect(),
        })
        .expect("built-in table is valid")
    }

    pub fn builtin(id: &str) -> Option<Self> {
        match id {
            "fano-cyclic" => Some(Self::fano_cyclic()),
            "cayley-dickson" => Some(Self::cayley_dickson()),
            _ => None,
        }
    }

    pub fn id(&self) -> &str {
        &self.spec.id
    }

    pub fn spec(&self) -> &CrossTableSpec {
        &self.spec
    }

    /// Validates a list of oriented lines and builds the table.
    ///
    /// Every unordered pair of distinct indices must lie on exactly one line,
    /// and the induced product must satisfy the norm identity.
    pub fn from_spec(spec: CrossTableSpec) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidCrossTable(m));
        if spec.triples.len() != 7 {
            return bad(format!("expected 7 lines, got {}", spec.triples.len()));
        }
        let mut product = [[None; 7]; 7];
        for &(i, j, k, sign) in &spec.triples {
            if ![i, j, k].iter().all(|v| (1..=7).contains(v)) {
                return bad(format!("index outside 1..=7 in ({i},{j},{k})"));
            }
            if i == j || j == k || i == k {
                return bad(format!("repeated index in ({i},{j},{k})"));
            }
            if sign != 1 && sign != -1 {
                return bad(format!("sign must be ±1, got {sign}"));
            }
            let (i, j, k) = (i as usize - 1, j as usize - 1, k as usize - 1);
            let s = sign as f64;
            for (p, q, r) in [(i, j, k), (j, k, i), (k, i, j)] {
                if product[p][q].is_some() {
                    return bad(format!("pair ({},{}) appears on two lines", p + 1, q + 1));
                }
                product[p][q] = Some((r, s));
                product[q][p] = Some((r, -s));
            }
        }
        let table = CrossTable { spec, product };
        table.check_norm_identity()?;
        Ok(table)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_spec(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.spec)?)
    }

    /// `f_{ijk}` with 1-based indices.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        match self.product[i - 1][j - 1] {
            Some((r, s)) if r == k - 1 => s,
            _ => 0.0,
        }
    }

    pub fn cross(&self, x: &Vec7, y: &Vec7) -> Vec7 {
        // pairing (i, j) with (j, i) makes x×y = −(y×x) and x×x = 0 exact
        let mut out = [0.0; 7];
        for i in 0..7 {
            for j in (i + 1)..7 {
                if let Some((k, s)) = self.product[i][j] {
                    out[k] += s * (x.0[i] * y.0[j] - x.0[j] * y.0[i]);
                }
            }
        }
        Vec7(out)
    }

    fn check_norm_identity(&self) -> Result<()> {
        // basis pairs, then sums of basis pairs, which catch inconsistent orientations
        let probes: Vec<Vec7> = (1..=7)
            .map(Vec7::basis)
            .chain((1..=7).flat_map(|i| ((i + 1)..=7).map(move |j| Vec7::basis(i) + Vec7::basis(j))))
            .collect();
        for x in &probes {
            for y in &probes {
                let c = self.cross(x, y);
                let lhs = c.norm_sq();
                let rhs = x.norm_sq() * y.norm_sq() - x.dot(y).powi(2);
                if (lhs - rhs).abs() > 1e-12 {
                    return Err(Error::InvalidCrossTable(format!(
                        "norm identity fails: |x×y|² = {lhs}, expected {rhs}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Cross product under the given table.
pub fn cross7(x: &Vec7, y: &Vec7, table: &CrossTable) -> Vec7 {
    table.cross(x, y)
}

/// A point `a + X` of ℝ⁸; a point of S⁷ when `a² + |X|² = 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SevenPoint {
    pub a: f64,
    pub x: Vec7,
}

impl SevenPoint {
    pub const ONE: SevenPoint = SevenPoint {
        a: 1.0,
        x: Vec7::ZERO,
    };

    pub const fn new(a: f64, x: Vec7) -> Self {
        Self { a, x }
    }

    pub fn norm_sq(&self) -> f64 {
        self.a * self.a + self.x.norm_sq()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Conjugate `a − X`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a, -self.x)
    }

    pub fn max_abs_diff(&self, o: &SevenPoint) -> f64 {
        (self.a - o.a).abs().max(self.x.max_abs_diff(&o.x))
    }
}

/// `(a + X)(b + Y) = (ab − X·Y) + aY + bX − X×Y`.
pub fn oct_product(p: &SevenPoint, q: &SevenPoint, table: &CrossTable) -> SevenPoint {
    let xy = table.cross(&p.x, &q.x);
    SevenPoint::new(
        p.a * q.a - p.x.dot(&q.x),
        q.x.scale(p.a) + p.x.scale(q.a) - xy,
    )
}

/// [`oct_product`] in the frame of handedness `lambda`; the left-handed frame
/// multiplies in the opposite order.
pub fn handed_oct_product(
    p: &SevenPoint,
    q: &SevenPoint,
    lambda: HiddenVariable,
    table: &CrossTable,
) -> SevenPoint {
    match lambda {
        HiddenVariable::Right => oct_product(p, q, table),
        HiddenVariable::Left => oct_product(q, p, table),
    }
}

/// The equatorial point `(0, λN)`.
pub fn beable7(n: &Vec7, lambda: HiddenVariable) -> Result<SevenPoint> {
    n.ensure_unit()?;
    Ok(SevenPoint::new(0.0, n.scale(lambda.sign())))
}

/// `Z = N₂×(N₃×N₄) − N₃(N₂·N₄) + N₄(N₂·N₃)`.
pub fn z_deviation(n2: &Vec7, n3: &Vec7, n4: &Vec7, table: &CrossTable) -> Vec7 {
    table.cross(n2, &table.cross(n3, n4)) - n3.scale(n2.dot(n4)) + n4.scale(n2.dot(n3))
}

/// `(N₁×N₂)·(N₃×N₄) − [(N₁·N₃)(N₂·N₄) − (N₁·N₄)(N₂·N₃) + N₁·Z]`.
pub fn lagrange_residual(n1: &Vec7, n2: &Vec7, n3: &Vec7, n4: &Vec7, table: &CrossTable) -> f64 {
    let lhs = table.cross(n1, n2).dot(&table.cross(n3, n4));
    let z = z_deviation(n2, n3, n4, table);
    lhs - (n1.dot(n3) * n2.dot(n4) - n1.dot(n4) * n2.dot(n3) + n1.dot(&z))
}

/// The postulated deviation vector `ê₃·(p) + ê₇·f` with `p` a product of z-components.
pub fn postulated_z(z_product: f64, f: f64) -> Vec7 {
    let mut c = [0.0; 7];
    c[2] = z_product;
    c[6] = f;
    Vec7(c)
}

/// GHZ-4 embedding of four measurement directions into ℝ⁷.
pub fn embed_ghz4(n1: &Vec3, n2: &Vec3, n3: &Vec3, n4: &Vec3) -> Result<[Vec7; 4]> {
    for n in [n1, n2, n3, n4] {
        n.ensure_unit()?;
    }
    Ok([
        Vec7([-n1.x, n1.y, -n1.z, 0.0, 0.0, 0.0, 0.0]),
        Vec7([n2.x, n2.y, 0.0, n2.z, 0.0, 0.0, 0.0]),
        Vec7([n3.x, n3.y, 0.0, 0.0, n3.z, 0.0, 0.0]),
        Vec7([n4.x, -n4.y, 0.0, 0.0, 0.0, -n4.z, 0.0]),
    ])
}

/// Reference direction of the GHZ-3 state, `n₀ = (sinα cosδ, sinα sinδ, cosα)`.
pub fn ghz3_reference(alpha: f64, delta: f64) -> Vec3 {
    Vec3::spherical(alpha, delta)
}

/// GHZ-3 embedding `(N₀, N₁, N₂, N₃)` including the reference direction.
pub fn embed_ghz3(n1: &Vec3, n2: &Vec3, n3: &Vec3, alpha: f64, delta: f64) -> Result<[Vec7; 4]> {
    for n in [n1, n2, n3] {
        n.ensure_unit()?;
    }
    let n0 = ghz3_reference(alpha, delta);
    Ok([
        Vec7([-n0.x, n0.y, -n0.z, 0.0, 0.0, 0.0, 0.0]),
        Vec7([n1.x, n1.y, 0.0, n1.z, 0.0, 0.0, 0.0]),
        Vec7([n2.x, -n2.y, 0.0, 0.0, -n2.z, 0.0, 0.0]),
        Vec7([-n3.x, -n3.y, 0.0, 0.0, 0.0, n3.z, 0.0]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn arb_vec7() -> impl Strategy<Value = Vec7> {
        prop::array::uniform7(-1.0f64..1.0).prop_map(Vec7)
    }

    fn arb_unit7() -> impl Strategy<Value = Vec7> {
        arb_vec7()
            .prop_filter("nonzero", |v| v.norm() > 1e-3)
            .prop_map(|v| v.scale(1.0 / v.norm()))
    }

    fn arb_unit3() -> impl Strategy<Value = Vec3> {
        (0.0f64..PI, -PI..PI).prop_map(|(t, p)| Vec3::spherical(t, p))
    }

    fn tables() -> [CrossTable; 2] {
        [CrossTable::fano_cyclic(), CrossTable::cayley_dickson()]
    }

    #[test]
    fn cyclic_table_lines() {
        let t = CrossTable::fano_cyclic();
        let lines: Vec<_> = t.spec().triples.iter().map(|&(i, j, k, _)| (i, j, k)).collect();
        assert_eq!(
            lines,
            vec![(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)]
        );
        assert_eq!(cross7(&Vec7::basis(1), &Vec7::basis(2), &t), Vec7::basis(4));
        assert_eq!(cross7(&Vec7::basis(2), &Vec7::basis(1), &t), -Vec7::basis(4));
        assert_eq!(cross7(&Vec7::basis(4), &Vec7::basis(1), &t), Vec7::basis(2));
    }

    #[test]
    fn structure_constants_antisymmetric() {
        for t in tables() {
            for i in 1..=7 {
                for j in 1..=7 {
                    for k in 1..=7 {
                        assert_eq!(t.structure_constant(i, j, k), -t.structure_constant(j, i, k));
                    }
                }
            }
        }
    }

    #[test]
    fn inconsistent_tables_rejected() {
        let mut spec = CrossTable::fano_cyclic().spec().clone();
        spec.triples[0] = (1, 2, 3, 1);
        assert!(CrossTable::from_spec(spec).is_err());

        // flipping one orientation of the cyclic table breaks the norm identity
        let mut spec = CrossTable::fano_cyclic().spec().clone();
        spec.triples[0].3 = -1;
        assert!(matches!(CrossTable::from_spec(spec), Err(Error::InvalidCrossTable(_))));

        let mut spec = CrossTable::fano_cyclic().spec().clone();
        spec.triples.pop();
        assert!(CrossTable::from_spec(spec).is_err());
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        for t in tables() {
            let text = t.to_json().unwrap();
            let back = CrossTable::from_json(&text).unwrap();
            assert_eq!(back, t);
            assert_eq!(back.to_json().unwrap(), text);
        }
    }

    #[test]
    fn identity_point() {
        let t = CrossTable::default();
        let q = SevenPoint::new(0.3, Vec7([0.1, -0.2, 0.3, 0.4, 0.0, 0.5, -0.6]));
        assert_eq!(oct_product(&SevenPoint::ONE, &q, &t), q);
    }

    #[test]
    fn z_vanishes_on_associative_triple() {
        let t = CrossTable::fano_cyclic();
        // span{ê₁, ê₂, ê₄} is a quaternionic subalgebra under the cyclic table
        let (e1, e2, e4) = (Vec7::basis(1), Vec7::basis(2), Vec7::basis(4));
        let n2 = e1.scale(0.6) + e2.scale(0.8);
        let n3 = e2.scale(-0.3) + e4.scale(0.2) + e1.scale(0.5);
        let n4 = e4.scale(0.9) + e1.scale(-0.1);
        assert!(z_deviation(&n2, &n3, &n4, &t).norm() < 1e-15);
    }

    #[test]
    fn jacobi_fails_for_some_triple() {
        let t = CrossTable::fano_cyclic();
        let (x, y, z) = (Vec7::basis(1), Vec7::basis(2), Vec7::basis(3));
        let jac = t.cross(&x, &t.cross(&y, &z)) + t.cross(&y, &t.cross(&z, &x)) + t.cross(&z, &t.cross(&x, &y));
        assert!(jac.norm() > 0.1, "jacobiator {}", jac.norm());
    }

    #[test]
    fn ghz4_embedding_signs() {
        let [n1, ..] = embed_ghz4(&Vec3::Z, &Vec3::X, &Vec3::X, &Vec3::X).unwrap();
        assert_eq!(n1, Vec7([0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0]));
        let [_, n2, ..] = embed_ghz4(&Vec3::Z, &Vec3::X, &Vec3::X, &Vec3::X).unwrap();
        assert_eq!(n2, Vec7([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
        let [.., n4] = embed_ghz4(&Vec3::Z, &Vec3::Z, &Vec3::Z, &Vec3::new(0.0, 0.6, 0.8)).unwrap();
        assert_eq!(n4, Vec7([0.0, -0.6, 0.0, 0.0, 0.0, -0.8, 0.0]));
        assert!(embed_ghz4(&Vec3::new(1.0, 1.0, 0.0), &Vec3::Z, &Vec3::Z, &Vec3::Z).is_err());
    }

    #[test]
    fn ghz3_reference_direction() {
        let [n0, ..] = embed_ghz3(&Vec3::Z, &Vec3::Z, &Vec3::Z, 0.0, 1.3).unwrap();
        assert!(n0.max_abs_diff(&Vec7([0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 0.0])) < 1e-16);
        let [n0, ..] = embed_ghz3(&Vec3::Z, &Vec3::Z, &Vec3::Z, FRAC_PI_2, 0.0).unwrap();
        assert!(n0.max_abs_diff(&Vec7([-1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])) < 1e-16);
        let [_, n1, n2, n3] = embed_ghz3(&Vec3::X, &Vec3::Y, &Vec3::Z, 0.0, 0.0).unwrap();
        assert_eq!(n1, Vec7::basis(1));
        assert_eq!(n2, -Vec7::basis(2));
        assert_eq!(n3, Vec7::basis(6));
    }

    proptest! {
        #[test]
        fn cross_properties(x in arb_vec7(), y in arb_vec7(), z in arb_vec7(), k in -2.0f64..2.0) {
            for t in tables() {
                let xy = t.cross(&x, &y);
                prop_assert!((xy + t.cross(&y, &x)).norm() == 0.0);
                prop_assert!(t.cross(&x, &x).norm() == 0.0);
                prop_assert!(x.dot(&xy).abs() < 1e-12);
                let lhs = xy.norm_sq();
                let rhs = x.norm_sq() * y.norm_sq() - x.dot(&y).powi(2);
                prop_assert!((lhs - rhs).abs() < 1e-12);
                prop_assert!((xy.dot(&z) - x.dot(&t.cross(&y, &z))).abs() < 1e-12);
                let lin = t.cross(&(x.scale(k) + z), &y) - (xy.scale(k) + t.cross(&z, &y));
                prop_assert!(lin.norm() < 1e-12);
            }
        }

        #[test]
        fn oct_product_preserves_norm(p in arb_unit7(), q in arb_unit7(), th in 0.0f64..PI, ph in 0.0f64..PI) {
            let t = CrossTable::default();
            let p = SevenPoint::new(th.cos(), p.scale(th.sin()));
            let q = SevenPoint::new(ph.cos(), q.scale(ph.sin()));
            prop_assert!((oct_product(&p, &q, &t).norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn pure_vector_product(n1 in arb_unit7(), n2 in arb_unit7()) {
            let t = CrossTable::default();
            let r = oct_product(&SevenPoint::new(0.0, n1), &SevenPoint::new(0.0, n2), &t);
            prop_assert!(r.max_abs_diff(&SevenPoint::new(-n1.dot(&n2), -t.cross(&n1, &n2))) < 1e-15);
        }

        #[test]
        fn beable7_squares_to_minus_one(n in arb_unit7()) {
            let t = CrossTable::default();
            for lambda in HiddenVariable::BOTH {
                let b = beable7(&n, lambda).unwrap();
                prop_assert_eq!(b.a, 0.0);
                prop_assert!(b.x.max_abs_diff(&n.scale(lambda.sign())) == 0.0);
                let sq = handed_oct_product(&b, &b, lambda, &t);
                prop_assert!(sq.max_abs_diff(&SevenPoint::new(-1.0, Vec7::ZERO)) < 1e-15);
            }
        }

        #[test]
        fn left_frame_is_conjugate_of_right(n1 in arb_unit7(), n2 in arb_unit7()) {
            let t = CrossTable::default();
            let r = handed_oct_product(
                &beable7(&n1, HiddenVariable::Right).unwrap(),
                &beable7(&n2, HiddenVariable::Right).unwrap(),
                HiddenVariable::Right, &t);
            let l = handed_oct_product(
                &beable7(&n1, HiddenVariable::Left).unwrap(),
                &beable7(&n2, HiddenVariable::Left).unwrap(),
                HiddenVariable::Left, &t);
            prop_assert!(l.max_abs_diff(&r.conjugate()) < 1e-15);
        }

        #[test]
        fn z_deviation_orthogonality(n2 in arb_vec7(), n3 in arb_vec7(), n4 in arb_vec7()) {
            for t in tables() {
                let z = z_deviation(&n2, &n3, &n4, &t);
                prop_assert!(z.dot(&n2).abs() < 1e-12);
                prop_assert!(z.dot(&n3).abs() < 1e-12);
                prop_assert!(z.dot(&n4).abs() < 1e-12);
                prop_assert!(z.dot(&t.cross(&n3, &n4)).abs() < 1e-12);
                prop_assert!(z_deviation(&n2, &n3, &n3, &t).norm() < 1e-15);
            }
        }

        #[test]
        fn generalized_lagrange_identity(n1 in arb_vec7(), n2 in arb_vec7(), n3 in arb_vec7(), n4 in arb_vec7()) {
            for t in tables() {
                prop_assert!(lagrange_residual(&n1, &n2, &n3, &n4, &t).abs() < 1e-12);
                prop_assert!(lagrange_residual(&n1, &n1, &n1, &n1, &t).abs() < 1e-15);
            }
        }

        #[test]
        fn embeddings_are_unit(a in arb_unit3(), b in arb_unit3(), c in arb_unit3(), d in arb_unit3(),
                               alpha in 0.0f64..PI, delta in -PI..PI) {
            for n in embed_ghz4(&a, &b, &c, &d).unwrap() {
                prop_assert!((n.norm() - 1.0).abs() < 1e-12);
            }
            for n in embed_ghz3(&a, &b, &c, alpha, delta).unwrap() {
                prop_assert!((n.norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}
