use serde::{Deserialize, Serialize};

use super::Diagram;
use crate::{skein, vinv};

/// Invariants a rule may be registered as preserving.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Jones,
    Conway,
    Homfly,
    Arf,
    OddWrithe,
    IndexPolynomial,
    LinkingMatrix,
    LinkingSymmetric,
    Wriggles,
    LinkingMod2,
}

impl Invariant {
    pub const ALL: [Invariant; 10] = [
        Invariant::Jones,
        Invariant::Conway,
        Invariant::Homfly,
        Invariant::Arf,
        Invariant::OddWrithe,
        Invariant::IndexPolynomial,
        Invariant::LinkingMatrix,
        Invariant::LinkingSymmetric,
        Invariant::Wriggles,
        Invariant::LinkingMod2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Jones => "jones",
            Invariant::Conway => "conway",
            Invariant::Homfly => "homfly",
            Invariant::Arf => "arf",
            Invariant::OddWrithe => "odd_writhe",
            Invariant::IndexPolynomial => "index_polynomial",
            Invariant::LinkingMatrix => "linking_matrix",
            Invariant::LinkingSymmetric => "lk_symmetric",
            Invariant::Wriggles => "wriggles",
            Invariant::LinkingMod2 => "lk_mod2",
        }
    }

    /// The value as text, or `None` where the invariant is not defined
    /// (skein polynomials off planar diagrams, knot invariants on links).
    /// The Jones polynomial is also evaluated on Gauss diagrams, where the
    /// bracket state sum gives its virtual extension.
    pub fn evaluate(self, d: &Diagram) -> Option<String> {
        let g = d.gauss();
        match self {
            Invariant::Jones => Some(match d {
                Diagram::Planar(p) => skein::jones(p).render(),
                Diagram::Gauss(g) => skein::jones_of_gauss(g).render(),
            }),
            Invariant::Conway => match d {
                Diagram::Planar(p) => Some(skein::conway(p).render()),
                Diagram::Gauss(_) => None,
            },
            Invariant::Homfly => match d {
                Diagram::Planar(p) => Some(skein::homfly(p).render()),
                Diagram::Gauss(_) => None,
            },
            Invariant::Arf => match d {
                Diagram::Planar(p) => skein::arf(p).ok().map(|a| a.to_string()),
                Diagram::Gauss(_) => None,
            },
            Invariant::OddWrithe => vinv::odd_writhe(g).ok().map(|j| j.to_string()),
            Invariant::IndexPolynomial => vinv::index_polynomial(g).ok().map(|w| w.render()),
            // diagrams are compared up to relabeling of their components
            Invariant::LinkingMatrix => Some(format!("{:?}", vinv::linking_matrix(g).unlabeled(|m| m.lk.clone()))),
            Invariant::LinkingSymmetric => {
                Some(format!("{:?}", vinv::linking_matrix(g).unlabeled(|m| m.symmetric_part())))
            }
            Invariant::Wriggles => Some(format!("{:?}", vinv::linking_matrix(g).unlabeled(|m| m.wriggles()))),
            Invariant::LinkingMod2 => Some(format!("{:?}", vinv::linking_matrix(g).unlabeled(|m| m.mod2_invariants()))),
        }
    }
}
