//! Splitting a product point into a λ-independent scalar `f` and an oriented
//! part `g·(beable about N)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ga3::{self, HiddenVariable, Multivector3, Vec3};
use crate::sphere7::{self, CrossTable, SevenPoint, Vec7};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Space {
    S3,
    S7,
}

/// A point on S³ or S⁷, as produced by the `ga3`/`sphere7` constructors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Beable {
    S3(Multivector3),
    S7(SevenPoint),
}

impl Beable {
    pub fn space(&self) -> Space {
        match self {
            Beable::S3(_) => Space::S3,
            Beable::S7(_) => Space::S7,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Axis {
    S3(Vec3),
    S7(Vec7),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub f: f64,
    pub g: f64,
    /// Unit axis, oriented as at λ = +1; zero when `g` vanishes.
    pub n: Axis,
    pub space: Space,
    pub lambda: HiddenVariable,
}

impl DecompositionResult {
    /// `f + g·(beable about N)` in the frame of the stored λ.
    pub fn reconstruct(&self) -> Beable {
        let l = self.lambda.sign();
        match self.n {
            Axis::S3(n) => Beable::S3(Multivector3::even(self.f, n.scale(self.g * l))),
            Axis::S7(n) => Beable::S7(SevenPoint::new(self.f, n.scale(self.g * l))),
        }
    }

    /// Largest component difference between the reconstruction and `point`.
    pub fn reconstruction_error(&self, point: &Beable) -> f64 {
        match (self.reconstruct(), point) {
            (Beable::S3(r), Beable::S3(p)) => r.max_abs_diff(p),
            (Beable::S7(r), Beable::S7(p)) => r.max_abs_diff(p),
            _ => f64::INFINITY,
        }
    }
}

/// Decomposes an even S³ point. Vector and trivector parts are ignored.
pub fn decompose_s3(point: &Multivector3, lambda: HiddenVariable) -> DecompositionResult {
    let g = point.b.norm();
    let n = if g > 0.0 {
        point.b.scale(lambda.sign() / g)
    } else {
        Vec3::ZERO
    };
    DecompositionResult {
        f: point.s,
        g,
        n: Axis::S3(n),
        space: Space::S3,
        lambda,
    }
}

pub fn decompose_s7(point: &SevenPoint, lambda: HiddenVariable) -> DecompositionResult {
    let g = point.x.norm();
    let n = if g > 0.0 {
        point.x.scale(lambda.sign() / g)
    } else {
        Vec7::ZERO
    };
    DecompositionResult {
        f: point.a,
        g,
        n: Axis::S7(n),
        space: Space::S7,
        lambda,
    }
}

/// Multiplies S⁷ points pairwise from the left, then folds the partial
/// products: `[A,B,C,D]` becomes `(AB)(CD)`.
pub fn grouped_oct_product(points: &[SevenPoint], lambda: HiddenVariable, table: &CrossTable) -> Result<SevenPoint> {
    if points.is_empty() {
        return Err(Error::EmptyProduct);
    }
    let pairs: Vec<SevenPoint> = points
        .chunks(2)
        .map(|c| match c {
            [p, q] => sphere7::handed_oct_product(p, q, lambda, table),
            [p] => *p,
            _ => unreachable!(),
        })
        .collect();
    Ok(pairs[1..]
        .iter()
        .fold(pairs[0], |acc, p| sphere7::handed_oct_product(&acc, p, lambda, table)))
}

/// The product point of `beables`, grouped as in [`grouped_oct_product`] for S⁷.
pub fn product_point(
    beables: &[Beable],
    space: Space,
    lambda: HiddenVariable,
    table: &CrossTable,
) -> Result<Beable> {
    if beables.is_empty() {
        return Err(Error::EmptyProduct);
    }
    match space {
        Space::S3 => {
            let pts = beables
                .iter()
                .map(|b| match b {
                    Beable::S3(m) => Ok(*m),
                    Beable::S7(_) => Err(Error::MixedSpaces),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Beable::S3(ga3::product_chain(&pts, lambda)?))
        }
        Space::S7 => {
            let pts = beables
                .iter()
                .map(|b| match b {
                    Beable::S7(p) => Ok(*p),
                    Beable::S3(_) => Err(Error::MixedSpaces),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Beable::S7(grouped_oct_product(&pts, lambda, table)?))
        }
    }
}

/// Multiplies the beables (constructed at handedness `lambda`) and splits the
/// product into `f`, `g = |oriented part|` and the axis `N`.
pub fn canonical_decomposition(
    beables: &[Beable],
    space: Space,
    lambda: HiddenVariable,
    table: &CrossTable,
) -> Result<DecompositionResult> {
    Ok(match product_point(beables, space, lambda, table)? {
        Beable::S3(m) => decompose_s3(&m, lambda),
        Beable::S7(p) => decompose_s7(&p, lambda),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ga3::bivector_beable;
    use crate::sphere7::beable7;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn arb_unit() -> impl Strategy<Value = Vec3> {
        (0.0f64..PI, -PI..PI).prop_map(|(t, p)| Vec3::spherical(t, p))
    }

    fn arb_unit7() -> impl Strategy<Value = Vec7> {
        prop::array::uniform7(-1.0f64..1.0)
            .prop_filter("nonzero", |c| Vec7(*c).norm() > 1e-3)
            .prop_map(|c| {
                let v = Vec7(c);
                v.scale(1.0 / v.norm())
            })
    }

    #[test]
    fn singlet_pair() {
        let table = CrossTable::fano_cyclic();
        let a = Vec3::Z;
        let b = Vec3::spherical(1.0, 0.3);
        for l in HiddenVariable::BOTH {
            let d = canonical_decomposition(
                &[
                    Beable::S3(bivector_beable(&a, l).unwrap()),
                    Beable::S3(bivector_beable(&b, l).unwrap()),
                ],
                Space::S3,
                l,
                &table,
            )
            .unwrap();
            assert!((d.f + a.dot(&b)).abs() < 1e-15);
            assert!((d.g - 1.0f64.sin()).abs() < 1e-15);
            let Axis::S3(n) = d.n else { panic!() };
            // antiparallel to a×b, the same for both λ
            let c = a.cross(&b).scale(1.0 / 1.0f64.sin());
            assert!(n.max_abs_diff(&c.scale(-1.0)) < 1e-15);
        }
    }

    #[test]
    fn single_beable() {
        let table = CrossTable::fano_cyclic();
        let n = Vec7::basis(5);
        let d = canonical_decomposition(
            &[Beable::S7(beable7(&n, HiddenVariable::Left).unwrap())],
            Space::S7,
            HiddenVariable::Left,
            &table,
        )
        .unwrap();
        assert_eq!((d.f, d.g), (0.0, 1.0));
        assert_eq!(d.n, Axis::S7(n));
    }

    #[test]
    fn mixed_and_empty_rejected() {
        let table = CrossTable::fano_cyclic();
        let l = HiddenVariable::Right;
        let mixed = [
            Beable::S3(bivector_beable(&Vec3::X, l).unwrap()),
            Beable::S7(beable7(&Vec7::basis(1), l).unwrap()),
        ];
        assert!(matches!(
            canonical_decomposition(&mixed, Space::S3, l, &table),
            Err(Error::MixedSpaces)
        ));
        assert!(matches!(
            canonical_decomposition(&mixed, Space::S7, l, &table),
            Err(Error::MixedSpaces)
        ));
        assert!(matches!(
            canonical_decomposition(&[], Space::S7, l, &table),
            Err(Error::EmptyProduct)
        ));
    }

    #[test]
    fn grouping_is_pairwise() {
        let table = CrossTable::fano_cyclic();
        let l = HiddenVariable::Right;
        let p: Vec<SevenPoint> = [1, 2, 3, 5]
            .iter()
            .map(|&i| beable7(&Vec7::basis(i), l).unwrap())
            .collect();
        let ab = sphere7::oct_product(&p[0], &p[1], &table);
        let cd = sphere7::oct_product(&p[2], &p[3], &table);
        let expected = sphere7::oct_product(&ab, &cd, &table);
        assert_eq!(grouped_oct_product(&p, l, &table).unwrap(), expected);
    }

    proptest! {
        #[test]
        fn reconstruction_s3(ns in prop::collection::vec(arb_unit(), 1..5), right in any::<bool>()) {
            let l = if right { HiddenVariable::Right } else { HiddenVariable::Left };
            let bs: Vec<Beable> = ns.iter().map(|n| Beable::S3(bivector_beable(n, l).unwrap())).collect();
            let table = CrossTable::fano_cyclic();
            let point = product_point(&bs, Space::S3, l, &table).unwrap();
            let d = canonical_decomposition(&bs, Space::S3, l, &table).unwrap();
            prop_assert!(d.reconstruction_error(&point) < 1e-12);
            prop_assert!((d.f * d.f + d.g * d.g - 1.0).abs() < 1e-12);
        }

        #[test]
        fn reconstruction_s7(ns in prop::collection::vec(arb_unit7(), 1..6), right in any::<bool>()) {
            let l = if right { HiddenVariable::Right } else { HiddenVariable::Left };
            let table = CrossTable::fano_cyclic();
            let bs: Vec<Beable> = ns.iter().map(|n| Beable::S7(beable7(n, l).unwrap())).collect();
            let point = product_point(&bs, Space::S7, l, &table).unwrap();
            let d = canonical_decomposition(&bs, Space::S7, l, &table).unwrap();
            prop_assert!(d.reconstruction_error(&point) < 1e-12);
        }

        #[test]
        fn scalar_is_lambda_independent(ns in prop::collection::vec(arb_unit7(), 1..6)) {
            let table = CrossTable::fano_cyclic();
            let run = |l| {
                let bs: Vec<Beable> = ns.iter().map(|n| Beable::S7(beable7(n, l).unwrap())).collect();
                canonical_decomposition(&bs, Space::S7, l, &table).unwrap()
            };
            let (r, l) = (run(HiddenVariable::Right), run(HiddenVariable::Left));
            prop_assert!((r.f - l.f).abs() < 1e-12);
            prop_assert!((r.g - l.g).abs() < 1e-12);
        }
    }
}
