//! Exact coordinates and the point types built on them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Axis, Error, Result};

/// An exact rational coordinate.
///
/// All geometric predicates in this crate compare `Coord`s exactly; there is
/// no floating point anywhere on the decision path.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coord(BigRational);

impl Coord {
    pub fn new(value: BigRational) -> Self {
        Coord(value)
    }

    pub fn int(value: i64) -> Self {
        Coord(BigRational::from_integer(BigInt::from(value)))
    }

    /// `num / den`, reduced. Panics if `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        Coord(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Coord(BigRational::new(num, den)))
        }
    }

    pub fn zero() -> Self {
        Coord(BigRational::zero())
    }

    pub fn one() -> Self {
        Coord(BigRational::one())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_inner(self) -> BigRational {
        self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Coord(self.0.abs())
    }

    pub fn signum(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    /// Lossy conversion, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min_of(a: &Coord, b: &Coord) -> Coord {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max_of(a: &Coord, b: &Coord) -> Coord {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Midpoint of two coordinates.
    pub fn midpoint(a: &Coord, b: &Coord) -> Coord {
        Coord((&a.0 + &b.0) / BigRational::from_integer(BigInt::from(2)))
    }
}

/// Least common multiple of the denominators of `coords`.
pub fn common_denominator<'a>(coords: impl IntoIterator<Item = &'a Coord>) -> BigInt {
    coords.into_iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// `c * den` as an integer. `den` must be a multiple of `c`'s denominator.
pub fn scaled_integer(c: &Coord, den: &BigInt) -> BigInt {
    let scaled = &c.0 * BigRational::from_integer(den.clone());
    debug_assert!(scaled.is_integer());
    scaled.to_integer()
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Coord {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let parse = |t: &str| BigInt::from_str(t.trim()).map_err(|e| format!("bad integer {t:?}: {e}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                Coord::from_bigints(parse(n)?, d).ok_or_else(|| format!("zero denominator in {s:?}"))
            }
            None => Ok(Coord(BigRational::from_integer(parse(s)?))),
        }
    }
}

impl From<i64> for Coord {
    fn from(v: i64) -> Self {
        Coord::int(v)
    }
}

impl From<BigRational> for Coord {
    fn from(v: BigRational) -> Self {
        Coord(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Coord> for &Coord {
            type Output = Coord;
            fn $m(self, rhs: &Coord) -> Coord {
                Coord($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $tr<Coord> for Coord {
            type Output = Coord;
            fn $m(self, rhs: Coord) -> Coord {
                Coord($tr::$m(self.0, rhs.0))
            }
        }
        impl $tr<&Coord> for Coord {
            type Output = Coord;
            fn $m(self, rhs: &Coord) -> Coord {
                Coord($tr::$m(self.0, &rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-self.0)
    }
}

impl Neg for &Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        Coord(-&self.0)
    }
}

// Wire format: a JSON integer when the value is an integer that fits in i64,
// otherwise a `[numerator, denominator]` pair. Components that overflow i64
// are written as decimal strings.
fn bigint_to_json<S: Serializer>(v: &BigInt, seq: &mut S::SerializeSeq) -> std::result::Result<(), S::Error> {
    match v.to_i64() {
        Some(i) => seq.serialize_element(&i),
        None => seq.serialize_element(&v.to_string()),
    }
}

impl Serialize for Coord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(i) = self.0.numer().to_i64() {
                return serializer.serialize_i64(i);
            }
        }
        let mut seq = serializer.serialize_seq(Some(2))?;
        bigint_to_json::<S>(self.0.numer(), &mut seq)?;
        bigint_to_json::<S>(self.0.denom(), &mut seq)?;
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Int(i64),
    Str(String),
}

impl IntRepr {
    fn into_bigint<E: de::Error>(self) -> std::result::Result<BigInt, E> {
        match self {
            IntRepr::Int(i) => Ok(BigInt::from(i)),
            IntRepr::Str(s) => BigInt::from_str(&s).map_err(E::custom),
        }
    }
}

impl<'de> Deserialize<'de> for Coord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct CoordVisitor;

        impl<'de> Visitor<'de> for CoordVisitor {
            type Value = Coord;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer, a \"num/den\" string, or a [num, den] pair")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Coord, E> {
                Ok(Coord::int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Coord, E> {
                Ok(Coord(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, _: f64) -> std::result::Result<Coord, E> {
                Err(E::custom("floating-point coordinates are not accepted"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Coord, E> {
                Coord::from_str(v).map_err(E::custom)
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Coord, A::Error> {
                let num: IntRepr = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let den: IntRepr = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Coord::from_bigints(num.into_bigint()?, den.into_bigint()?)
                    .ok_or_else(|| de::Error::custom("zero denominator"))
            }
        }

        deserializer.deserialize_any(CoordVisitor)
    }
}

/// A planar point carrying its vertex index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point2 {
    pub x: Coord,
    pub y: Coord,
    pub id: usize,
}

impl Point2 {
    pub fn new(x: impl Into<Coord>, y: impl Into<Coord>, id: usize) -> Self {
        Point2 { x: x.into(), y: y.into(), id }
    }
}

/// A point in 3-space carrying its vertex index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point3 {
    pub x: Coord,
    pub y: Coord,
    pub z: Coord,
    pub id: usize,
}

impl Point3 {
    pub fn new(x: impl Into<Coord>, y: impl Into<Coord>, z: impl Into<Coord>, id: usize) -> Self {
        Point3 { x: x.into(), y: y.into(), z: z.into(), id }
    }

    pub fn coords(&self) -> [&Coord; 3] {
        [&self.x, &self.y, &self.z]
    }
}

/// Returns the first pair of indices sharing a value, scanning in index order.
fn find_duplicate<'a>(values: impl Iterator<Item = &'a Coord>) -> Option<(usize, usize)> {
    let mut seen: Vec<(&Coord, usize)> = values.enumerate().map(|(i, c)| (c, i)).collect();
    seen.sort();
    let mut best: Option<(usize, usize)> = None;
    for w in seen.windows(2) {
        if w[0].0 == w[1].0 {
            let pair = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
            if best.is_none_or(|b| pair < b) {
                best = Some(pair);
            }
        }
    }
    best
}

/// Checks that no two points share an x or a y coordinate.
pub fn check_distinct_2d(points: &[Point2]) -> Result<()> {
    if let Some((a, b)) = find_duplicate(points.iter().map(|p| &p.x)) {
        return Err(Error::CoordinateCollision { axis: Axis::X, first: points[a].id, second: points[b].id });
    }
    if let Some((a, b)) = find_duplicate(points.iter().map(|p| &p.y)) {
        return Err(Error::CoordinateCollision { axis: Axis::Y, first: points[a].id, second: points[b].id });
    }
    Ok(())
}

/// Checks that no two points share a coordinate on any of the three axes.
pub fn check_distinct_3d(points: &[Point3]) -> Result<()> {
    for (axis, k) in [(Axis::X, 0), (Axis::Y, 1), (Axis::Z, 2)] {
        if let Some((a, b)) = find_duplicate(points.iter().map(|p| p.coords()[k])) {
            return Err(Error::CoordinateCollision { axis, first: points[a].id, second: points[b].id });
        }
    }
    Ok(())
}

/// Ranks of `values` (0-based), ties broken by index.
pub fn ranks_by<T: Ord>(values: &[T]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].cmp(&values[b]).then(a.cmp(&b)));
    let mut rank = vec![0u32; values.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r as u32;
    }
    rank
}

/// A finite planar point set together with its arrival order.
///
/// Point `i` of `points()` arrives at time `i + 1` and has `id == i`.
/// All x coordinates are pairwise distinct, and so are all y coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OrderedPointSet {
    points: Vec<Point2>,
}

impl OrderedPointSet {
    /// Builds the set from coordinates in arrival order, rejecting collisions.
    pub fn new(coords: Vec<(Coord, Coord)>) -> Result<Self> {
        let points: Vec<Point2> = coords.into_iter().enumerate().map(|(id, (x, y))| Point2 { x, y, id }).collect();
        check_distinct_2d(&points)?;
        Ok(OrderedPointSet { points })
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| (Coord::int(x), Coord::int(y))).collect())
    }

    /// Maps arbitrary coordinates to rank space, breaking ties by arrival
    /// index, so the result always satisfies the distinctness invariant.
    ///
    /// A tie `x_i == x_j` with `i < j` resolves as `x_i < x_j`.
    pub fn normalized(coords: &[(Coord, Coord)]) -> Self {
        let xs: Vec<&Coord> = coords.iter().map(|c| &c.0).collect();
        let ys: Vec<&Coord> = coords.iter().map(|c| &c.1).collect();
        let rx = ranks_by(&xs);
        let ry = ranks_by(&ys);
        let points =
            (0..coords.len()).map(|i| Point2::new(Coord::int(rx[i] as i64), Coord::int(ry[i] as i64), i)).collect();
        OrderedPointSet { points }
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, id: usize) -> &Point2 {
        &self.points[id]
    }

    /// The first `t` arrivals.
    pub fn prefix(&self, t: usize) -> &[Point2] {
        &self.points[..t]
    }

    /// Rank-space coordinates `(x rank, y rank)` of every point.
    pub fn ranks(&self) -> Vec<(u32, u32)> {
        let xs: Vec<&Coord> = self.points.iter().map(|p| &p.x).collect();
        let ys: Vec<&Coord> = self.points.iter().map(|p| &p.y).collect();
        let rx = ranks_by(&xs);
        let ry = ranks_by(&ys);
        rx.into_iter().zip(ry).collect()
    }
}

impl<'de> Deserialize<'de> for OrderedPointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            points: Vec<Point2>,
        }
        let raw = Raw::deserialize(deserializer)?;
        OrderedPointSet::new(raw.points.into_iter().map(|p| (p.x, p.y)).collect()).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_prints_rationals() {
        let c: Coord = "6/4".parse().unwrap();
        assert_eq!(c, Coord::ratio(3, 2));
        assert_eq!(c.to_string(), "3/2");
        assert_eq!(Coord::int(-7).to_string(), "-7");
        assert!("1/0".parse::<Coord>().is_err());
    }

    #[test]
    fn collisions_are_rejected() {
        let err = OrderedPointSet::from_ints(&[(0, 0), (1, 2), (3, 2)]).unwrap_err();
        assert_eq!(err, Error::CoordinateCollision { axis: Axis::Y, first: 1, second: 2 });
        assert!(OrderedPointSet::from_ints(&[(0, 0), (1, 1)]).is_ok());
    }

    #[test]
    fn normalization_breaks_ties_by_arrival() {
        let c = |x: i64, y: i64| (Coord::int(x), Coord::int(y));
        let set = OrderedPointSet::normalized(&[c(5, 1), c(5, 0), c(2, 1)]);
        let got: Vec<(Coord, Coord)> = set.points().iter().map(|p| (p.x.clone(), p.y.clone())).collect();
        assert_eq!(got, vec![c(1, 1), c(2, 0), c(0, 2)]);
    }

    #[test]
    fn ranks_follow_coordinates() {
        let set = OrderedPointSet::from_ints(&[(10, -3), (-4, 8), (7, 0)]).unwrap();
        assert_eq!(set.ranks(), vec![(2, 0), (0, 2), (1, 1)]);
    }
}
