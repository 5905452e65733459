//! Link invariants with values in `Z[A, A^-1]`, and the singular invariants
//! derived from them by `f(L×) = F(L+) - F(L-)`.

mod bracket;
mod vassiliev;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::moves::{resolve, ResolutionSign};
use crate::ring::RingElem;

pub use bracket::{
    bracket_with_pairings, delta, jones_a, jones_a_capped, kauffman_bracket, kauffman_bracket_capped, DEFAULT_CAP,
};
pub use vassiliev::{conway_skein, v2_gauss, v2_skein_oracle, DEFAULT_SKEIN_BUDGET};

/// How a link invariant's invariance is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    ProvenByConstruction,
    TestVerified,
}

pub trait LinkInvariant: Send + Sync {
    fn name(&self) -> String;
    fn certificate(&self) -> Certificate;
    fn eval(&self, d: &Diagram) -> Result<RingElem>;
}

/// Invariant of order-1 singular diagrams.
pub trait SingularInvariant: Send + Sync {
    fn name(&self) -> String;
    fn eval(&self, d: &Diagram) -> Result<RingElem>;
}

#[derive(Clone, Debug)]
pub struct Jones {
    pub cap: usize,
}

impl Default for Jones {
    fn default() -> Self {
        Self { cap: DEFAULT_CAP }
    }
}

impl LinkInvariant for Jones {
    fn name(&self) -> String {
        "jones".into()
    }
    fn certificate(&self) -> Certificate {
        Certificate::ProvenByConstruction
    }
    fn eval(&self, d: &Diagram) -> Result<RingElem> {
        jones_a_capped(d, self.cap)
    }
}

/// v2 on knots, extended by 0 to links with more than one component.
#[derive(Clone, Debug, Default)]
pub struct V2Extended;

impl LinkInvariant for V2Extended {
    fn name(&self) -> String {
        "v2".into()
    }
    fn certificate(&self) -> Certificate {
        Certificate::TestVerified
    }
    fn eval(&self, d: &Diagram) -> Result<RingElem> {
        d.require_link()?;
        if d.components() != 1 {
            return Ok(RingElem::zero());
        }
        Ok(RingElem::from_int(v2_gauss(d)?))
    }
}

/// v2 by the skein recursion; fails on links.
#[derive(Clone, Debug)]
pub struct V2Skein {
    pub budget: usize,
}

impl LinkInvariant for V2Skein {
    fn name(&self) -> String {
        "v2-skein".into()
    }
    fn certificate(&self) -> Certificate {
        Certificate::ProvenByConstruction
    }
    fn eval(&self, d: &Diagram) -> Result<RingElem> {
        Ok(RingElem::from_int(v2_skein_oracle(d, self.budget)?))
    }
}

/// The same value on every link.
#[derive(Clone, Debug)]
pub struct ConstantLink(pub RingElem);

impl LinkInvariant for ConstantLink {
    fn name(&self) -> String {
        "const".into()
    }
    fn certificate(&self) -> Certificate {
        Certificate::ProvenByConstruction
    }
    fn eval(&self, d: &Diagram) -> Result<RingElem> {
        d.require_link()?;
        Ok(self.0.clone())
    }
}

fn unique_double_point(d: &Diagram) -> Result<u32> {
    match d.singular_ids().as_slice() {
        [p] => Ok(*p),
        other => Err(Error::WrongOrder {
            expected: 1,
            got: other.len(),
        }),
    }
}

/// `f(L×) = F(L+) - F(L-)`.
#[derive(Clone)]
pub struct Derived {
    pub base: Arc<dyn LinkInvariant>,
}

pub fn derive_singular(base: Arc<dyn LinkInvariant>) -> Derived {
    Derived { base }
}

impl SingularInvariant for Derived {
    fn name(&self) -> String {
        format!("derive({})", self.base.name())
    }
    fn eval(&self, d: &Diagram) -> Result<RingElem> {
        let p = unique_double_point(d)?;
        let plus = self.base.eval(&resolve(d, p, ResolutionSign::Plus)?)?;
        let minus = self.base.eval(&resolve(d, p, ResolutionSign::Minus)?)?;
        Ok(plus - minus)
    }
}

/// `f(L×) = F(L+)`: no difference taken. A control that breaks condition (1).
#[derive(Clone)]
pub struct PlusOnly {
    pub base: Arc<dyn LinkInvariant>,
}

impl SingularInvariant for PlusOnly {
    fn name(&self) -> String {
        format!("plus({})", self.base.name())
    }
    fn eval(&self, d: &Diagram) -> Result<RingElem> {
        let p = unique_double_point(d)?;
        self.base.eval(&resolve(d, p, ResolutionSign::Plus)?)
    }
}

/// The same value on every order-1 diagram.
#[derive(Clone, Debug)]
pub struct ConstantSingular(pub RingElem);

impl SingularInvariant for ConstantSingular {
    fn name(&self) -> String {
        "one".into()
    }
    fn eval(&self, d: &Diagram) -> Result<RingElem> {
        unique_double_point(d)?;
        Ok(self.0.clone())
    }
}

/// Built-in link invariants by name.
pub fn link_invariant(name: &str) -> Option<Arc<dyn LinkInvariant>> {
    let f: Arc<dyn LinkInvariant> = match name {
        "jones" => Arc::new(Jones::default()),
        "v2" => Arc::new(V2Extended),
        "v2-skein" => Arc::new(V2Skein {
            budget: DEFAULT_SKEIN_BUDGET,
        }),
        "const" => Arc::new(ConstantLink(RingElem::one())),
        _ => return None,
    };
    Some(f)
}

pub const SINGULAR_NAMES: [&str; 5] = ["jones", "v2", "const", "one", "jonesplus"];

/// Built-in singular invariants by name: `jones`, `v2` and `const` are
/// derived from the link invariants of the same name; `one` is the constant
/// 1 and `jonesplus` is the Jones value of the positive resolution.
pub fn singular_invariant(name: &str) -> Option<Arc<dyn SingularInvariant>> {
    let f: Arc<dyn SingularInvariant> = match name {
        "jones" | "v2" | "const" => Arc::new(derive_singular(link_invariant(name)?)),
        "one" => Arc::new(ConstantSingular(RingElem::one())),
        "jonesplus" => Arc::new(PlusOnly {
            base: Arc::new(Jones::default()),
        }),
        _ => return None,
    };
    Some(f)
}

/// Jones values of all `2^k` full resolutions of an order-k diagram, sorted.
/// Equivalent singular diagrams have equal multisets.
pub fn resolution_jones_multiset(d: &Diagram, cap: usize) -> Result<Vec<RingElem>> {
    let ids = d.singular_ids();
    let mut out = Vec::with_capacity(1 << ids.len());
    for mask in 0u32..(1 << ids.len()) {
        let mut r = d.clone();
        for (i, &p) in ids.iter().enumerate() {
            let s = if mask >> i & 1 == 0 {
                ResolutionSign::Plus
            } else {
                ResolutionSign::Minus
            };
            r = resolve(&r, p, s)?;
        }
        out.push(jones_a_capped(&r, cap)?);
    }
    out.sort();
    Ok(out)
}
