//! Compact surfaces as classification data, and game positions built from them.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Genus;

/// Orientability of a compact surface. Orientable sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientability {
    #[serde(rename = "o")]
    Orientable,
    #[serde(rename = "n")]
    Nonorientable,
}

impl Orientability {
    /// Notation letter: `o` or `n`.
    pub fn letter(self) -> char {
        match self {
            Orientability::Orientable => 'o',
            Orientability::Nonorientable => 'n',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'o' => Some(Orientability::Orientable),
            'n' => Some(Orientability::Nonorientable),
            _ => None,
        }
    }
}

impl fmt::Display for Orientability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientability::Orientable => f.write_str("orientable"),
            Orientability::Nonorientable => f.write_str("nonorientable"),
        }
    }
}

/// A compact surface: the sphere, a connected sum of `genus` tori, or a
/// connected sum of `genus` projective planes.
///
/// The sphere is always stored as orientable genus 0, so `n0` and `o0`
/// compare equal once constructed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surface {
    kind: Orientability,
    genus: Genus,
}

impl Surface {
    pub fn new(kind: Orientability, genus: Genus) -> Self {
        let kind = if genus == 0 {
            Orientability::Orientable
        } else {
            kind
        };
        Surface { kind, genus }
    }

    pub fn sphere() -> Self {
        Surface::new(Orientability::Orientable, 0)
    }

    /// `og`, the connected sum of `genus` tori.
    pub fn orientable(genus: Genus) -> Self {
        Surface::new(Orientability::Orientable, genus)
    }

    /// `ng`, the connected sum of `genus` projective planes.
    pub fn nonorientable(genus: Genus) -> Self {
        Surface::new(Orientability::Nonorientable, genus)
    }

    pub fn kind(&self) -> Orientability {
        self.kind
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn is_sphere(&self) -> bool {
        self.genus == 0
    }

    pub fn is_orientable(&self) -> bool {
        self.kind == Orientability::Orientable
    }

    /// Normal form of the connected sum, or `None` if the genus overflows.
    ///
    /// A torus summed with a projective plane is three projective planes,
    /// so each torus counts as two cross-caps once any cross-cap is present.
    pub fn checked_connected_sum(self, other: Surface) -> Option<Surface> {
        use Orientability::*;
        let (o, n) = match (self.kind, other.kind) {
            (Orientable, Orientable) => {
                return self.genus.checked_add(other.genus).map(Surface::orientable)
            }
            (Nonorientable, Nonorientable) => {
                return self
                    .genus
                    .checked_add(other.genus)
                    .map(Surface::nonorientable)
            }
            (Orientable, Nonorientable) => (self, other),
            (Nonorientable, Orientable) => (other, self),
        };
        o.genus
            .checked_mul(2)
            .and_then(|g| g.checked_add(n.genus))
            .map(Surface::nonorientable)
    }

    /// Normal form of the connected sum.
    ///
    /// # Panics
    ///
    /// Panics if the resulting genus does not fit in [`Genus`].
    pub fn connected_sum(self, other: Surface) -> Surface {
        self.checked_connected_sum(other)
            .expect("connected sum genus overflow")
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.genus)
    }
}

#[derive(Serialize, Deserialize)]
struct SurfaceRepr {
    kind: char,
    genus: Genus,
}

impl Serialize for Surface {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SurfaceRepr {
            kind: self.kind.letter(),
            genus: self.genus,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Surface {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SurfaceRepr::deserialize(deserializer)?;
        let kind = Orientability::from_letter(repr.kind).ok_or_else(|| {
            serde::de::Error::custom(format!("unknown surface kind {:?}", repr.kind))
        })?;
        Ok(Surface::new(kind, repr.genus))
    }
}

/// A game position: a multiset of non-sphere surfaces in canonical order
/// (orientable before nonorientable, genus ascending within each kind).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    components: Vec<Surface>,
}

impl Position {
    /// Builds a canonical position. Spheres are dropped.
    pub fn new(surfaces: impl IntoIterator<Item = Surface>) -> Self {
        let mut components: Vec<Surface> =
            surfaces.into_iter().filter(|s| !s.is_sphere()).collect();
        components.sort_unstable();
        Position { components }
    }

    pub fn empty() -> Self {
        Position::default()
    }

    pub fn components(&self) -> &[Surface] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn total_genus(&self) -> Genus {
        self.components.iter().map(Surface::genus).sum()
    }

    /// Distinct components with their multiplicities, in canonical order.
    pub fn counts(&self) -> Vec<(Surface, usize)> {
        let mut out: Vec<(Surface, usize)> = Vec::new();
        for &s in &self.components {
            match out.last_mut() {
                Some((last, n)) if *last == s => *n += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    /// The position with one copy of `component` replaced by `results`.
    /// Returns `None` if `component` is not present.
    pub fn replace(&self, component: Surface, results: &[Surface]) -> Option<Position> {
        let i = self.components.iter().position(|&s| s == component)?;
        let mut rest = self.components.clone();
        rest.remove(i);
        rest.extend_from_slice(results);
        Some(Position::new(rest))
    }
}

#[derive(Serialize, Deserialize)]
struct PositionRepr {
    #[serde(default)]
    text: String,
    components: Vec<Surface>,
}

/// Serialized as `{"text": <canonical notation>, "components": [...]}`;
/// deserialization rebuilds the position from `components`.
impl Serialize for Position {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PositionRepr {
            text: self.to_string(),
            components: self.components.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PositionRepr::deserialize(deserializer)?;
        Ok(Position::new(repr.components))
    }
}

impl FromIterator<Surface> for Position {
    fn from_iter<I: IntoIterator<Item = Surface>>(iter: I) -> Self {
        Position::new(iter)
    }
}
