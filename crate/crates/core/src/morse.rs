//! Equivariant gradient degree from the critical orbits of a special Morse function.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euler::EulerSO2;

/// A non-degenerate critical orbit: its isotropy class and the negative index of
/// the Hessian block on the fixed-point slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitDatum {
    #[serde(rename = "class")]
    pub isotropy_class: String,
    pub morse_index: u64,
}

impl OrbitDatum {
    pub fn new(class: impl Into<String>, morse_index: u64) -> Self {
        Self {
            isotropy_class: class.into(),
            morse_index,
        }
    }
}

/// Integer coordinates of a degree, indexed by class label. Absent classes are 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "BTreeMap<String, i64>", into = "BTreeMap<String, i64>")]
pub struct ClassDegree(BTreeMap<String, i64>);

impl From<BTreeMap<String, i64>> for ClassDegree {
    fn from(mut m: BTreeMap<String, i64>) -> Self {
        m.retain(|_, v| *v != 0);
        Self(m)
    }
}

impl From<ClassDegree> for BTreeMap<String, i64> {
    fn from(d: ClassDegree) -> Self {
        d.0
    }
}

impl ClassDegree {
    pub fn get(&self, class: &str) -> i64 {
        self.0.get(class).copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &BTreeMap<String, i64> {
        &self.0
    }

    pub fn add_to(&mut self, class: &str, n: i64) {
        let v = self.0.entry(class.to_string()).or_default();
        *v += n;
        if *v == 0 {
            self.0.remove(class);
        }
    }

    pub fn sum(&self, other: &ClassDegree) -> ClassDegree {
        let mut out = self.clone();
        for (c, &n) in &other.0 {
            out.add_to(c, n);
        }
        out
    }

    /// Reads the classes of SO(2) as an element of U(SO(2)): "SO(2)" (or "full")
    /// is the unit, "Z_k" (or "Zk") the cyclic class χ_k.
    pub fn to_euler_so2(&self) -> Result<EulerSO2> {
        let mut unit = 0i64;
        let mut cyclic = Vec::new();
        for (class, &n) in &self.0 {
            match class.as_str() {
                "SO(2)" | "full" => unit += n,
                c => {
                    let k = c
                        .strip_prefix("Z_")
                        .or_else(|| c.strip_prefix('Z'))
                        .and_then(|k| k.parse::<u64>().ok())
                        .filter(|&k| k >= 1)
                        .ok_or_else(|| {
                            Error::Validation(format!(
                                "{c:?} is not a closed subgroup class of SO(2)"
                            ))
                        })?;
                    cyclic.push((k, n));
                }
            }
        }
        let mut out = EulerSO2::from_unit(unit);
        for (k, n) in cyclic {
            out += &EulerSO2::chi(k).scale(n);
        }
        Ok(out)
    }
}

/// Σ over orbits of class (K) of (−1)^{morse index}.
pub fn degree_from_orbits(data: &[OrbitDatum]) -> ClassDegree {
    let mut out = ClassDegree::default();
    for d in data {
        out.add_to(
            &d.isotropy_class,
            if d.morse_index % 2 == 0 { 1 } else { -1 },
        );
    }
    out
}

/// Map from slice-group classes to ambient-group classes.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassTable(pub BTreeMap<String, String>);

impl ClassTable {
    pub fn identity<'a>(classes: impl IntoIterator<Item = &'a str>) -> Self {
        Self(
            classes
                .into_iter()
                .map(|c| (c.to_string(), c.to_string()))
                .collect(),
        )
    }

    /// Injectivity of the table, i.e. admissibility of the group pair.
    pub fn check_injective(&self) -> Result<()> {
        let mut seen: BTreeMap<&str, &str> = BTreeMap::new();
        for (h, g) in &self.0 {
            if let Some(prev) = seen.insert(g, h) {
                return Err(Error::NonInjectiveTable(format!(
                    "{prev:?} and {h:?} both map to {g:?}"
                )));
            }
        }
        Ok(())
    }
}

/// Relabels H-coordinates as G-coordinates.
pub fn lift_degree(deg: &ClassDegree, table: &ClassTable) -> Result<ClassDegree> {
    table.check_injective()?;
    let mut out = ClassDegree::default();
    for (h, &n) in deg.coefficients() {
        let g = table
            .0
            .get(h)
            .ok_or_else(|| Error::MissingClass(h.clone()))?;
        out.add_to(g, n);
    }
    Ok(out)
}

/// Whether the two degrees differ; under an admissible pair, so do their lifts.
pub fn compare_orbit_degrees(a: &ClassDegree, b: &ClassDegree, table: &ClassTable) -> Result<bool> {
    let la = lift_degree(a, table)?;
    let lb = lift_degree(b, table)?;
    debug_assert_eq!(a != b, la != lb);
    Ok(a != b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(pairs: &[(&str, &str)]) -> ClassTable {
        ClassTable(
            pairs
                .iter()
                .map(|(h, g)| (h.to_string(), g.to_string()))
                .collect(),
        )
    }

    #[test]
    fn signed_counts() {
        let d = degree_from_orbits(&[OrbitDatum::new("SO(2)", 0)]);
        assert_eq!(d.to_euler_so2().unwrap(), EulerSO2::unit());

        let d = degree_from_orbits(&[OrbitDatum::new("Z_2", 1)]);
        assert_eq!(d.get("Z_2"), -1);

        let d = degree_from_orbits(&[
            OrbitDatum::new("Z_3", 1),
            OrbitDatum::new("Z_3", 2),
            OrbitDatum::new("SO(2)", 0),
        ]);
        assert_eq!(d.get("Z_3"), 0);
        assert_eq!(d.get("SO(2)"), 1);
        assert_eq!(d.coefficients().len(), 1);
    }

    #[test]
    fn lifting() {
        let d = degree_from_orbits(&[OrbitDatum::new("Z_2", 1), OrbitDatum::new("SO(2)", 0)]);
        let id = ClassTable::identity(["Z_2", "SO(2)"]);
        assert_eq!(lift_degree(&d, &id).unwrap(), d);

        let merging = table(&[("Z_2", "G"), ("SO(2)", "G")]);
        assert!(matches!(
            lift_degree(&d, &merging),
            Err(Error::NonInjectiveTable(_))
        ));

        let product = table(&[("Z_2", "{e}×Z_2"), ("SO(2)", "{e}×SO(2)")]);
        let lifted = lift_degree(&d, &product).unwrap();
        assert_eq!(lifted.get("{e}×Z_2"), -1);
        assert_eq!(lifted.get("{e}×SO(2)"), 1);

        let partial = table(&[("SO(2)", "SO(2)")]);
        assert!(matches!(
            lift_degree(&d, &partial),
            Err(Error::MissingClass(_))
        ));
    }

    #[test]
    fn comparison() {
        let t = ClassTable::identity(["Z_2"]);
        let a = degree_from_orbits(&[OrbitDatum::new("Z_2", 1)]);
        let b = degree_from_orbits(&[OrbitDatum::new("Z_2", 0)]);
        assert!(!compare_orbit_degrees(&a, &a, &t).unwrap());
        assert!(compare_orbit_degrees(&a, &b, &t).unwrap());

        let c = degree_from_orbits(&[OrbitDatum::new("Z_5", 0)]);
        assert!(matches!(
            compare_orbit_degrees(&a, &c, &t),
            Err(Error::MissingClass(_))
        ));
    }

    #[test]
    fn documents() {
        let data: Vec<OrbitDatum> =
            serde_json::from_str(r#"[{"class": "Z_2", "morse_index": 3}]"#).unwrap();
        assert_eq!(data, vec![OrbitDatum::new("Z_2", 3)]);
        let t: ClassTable = serde_json::from_str(r#"{"Z_2": "Γ×Z_2"}"#).unwrap();
        assert_eq!(t.0["Z_2"], "Γ×Z_2");
        assert!(ClassDegree::from(BTreeMap::from([("x".to_string(), 0)]))
            .coefficients()
            .is_empty());
        assert!(degree_from_orbits(&[OrbitDatum::new("Q8", 0)])
            .to_euler_so2()
            .is_err());
    }
}
