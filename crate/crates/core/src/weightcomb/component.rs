use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Context {
    #[serde(rename = "G_r")]
    Gr,
    #[serde(rename = "G_rT")]
    GrT,
}

/// What is known about a module in the component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// A module of complexity 1 whose period is `2 p^s`.
    Periodic { s: u32 },
    /// A non-projective simple of complexity 2.
    SimpleCx2 { r: u32, sl2: bool },
    /// A baby Verma module with rank variety of the given dimension.
    Verma { rank_variety_dim: u32 },
    Generic,
}

/// Stable Auslander-Reiten component shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ComponentShape {
    ZAInf,
    ZAInfInf,
    ZDInf,
    /// `Z[A_∞]/<τ^{p^s}>`, stored as the tube rank `p^s`.
    Tube(u64),
    ZATilde12,
}

impl fmt::Display for ComponentShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentShape::ZAInf => write!(f, "Z[A_inf]"),
            ComponentShape::ZAInfInf => write!(f, "Z[A_inf^inf]"),
            ComponentShape::ZDInf => write!(f, "Z[D_inf]"),
            ComponentShape::Tube(rank) => write!(f, "Z[A_inf]/<tau^{rank}>"),
            ComponentShape::ZATilde12 => write!(f, "Z[~A_12]"),
        }
    }
}

impl Serialize for ComponentShape {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

const WILD_TREES: [ComponentShape; 3] = [ComponentShape::ZAInf, ComponentShape::ZAInfInf, ComponentShape::ZDInf];

/// Shapes permitted for the component containing the described module.
/// Evidence that pins nothing down yields the three tree classes.
pub fn classify_component(p: u32, context: Context, evidence: Evidence) -> Vec<ComponentShape> {
    use ComponentShape::*;
    match (context, evidence) {
        (Context::Gr, Evidence::Periodic { s }) => vec![Tube((p as u64).pow(s))],
        (Context::Gr, Evidence::SimpleCx2 { r: 1, sl2: true }) => vec![ZATilde12],
        (Context::Gr, Evidence::SimpleCx2 { .. }) => vec![ZAInf, ZATilde12],
        (Context::GrT, Evidence::SimpleCx2 { .. }) => vec![ZAInf, ZAInfInf],
        (Context::GrT, Evidence::Verma { rank_variety_dim: 1 }) => vec![ZAInf],
        _ => WILD_TREES.to_vec(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(
            classify_component(3, Context::Gr, Evidence::Periodic { s: 1 }),
            vec![ComponentShape::Tube(3)]
        );
        assert_eq!(classify_component(3, Context::GrT, Evidence::Generic), WILD_TREES.to_vec());
        assert_eq!(
            classify_component(3, Context::Gr, Evidence::SimpleCx2 { r: 1, sl2: true }),
            vec![ComponentShape::ZATilde12]
        );
        assert_eq!(
            classify_component(3, Context::GrT, Evidence::Verma { rank_variety_dim: 1 }),
            vec![ComponentShape::ZAInf]
        );
        assert!(classify_component(5, Context::GrT, Evidence::Verma { rank_variety_dim: 2 })
            .contains(&ComponentShape::ZDInf));
        assert_eq!(serde_json::to_string(&ComponentShape::Tube(9)).unwrap(), "\"Z[A_inf]/<tau^9>\"");
    }
}
