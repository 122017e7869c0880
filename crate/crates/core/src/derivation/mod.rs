//! Templates and derivations: the partition-sequence view of clique-width.
//!
//! A template pairs a partition into components with a finer partition into
//! groups. A derivation is a sequence of templates that starts from all
//! singletons, coarsens step by step, and ends in one component. It models a
//! graph when every pair merged into a group respects the graph's
//! adjacencies, which [`check_models`] tests.

mod partition;
mod properties;
mod transform;

pub use partition::{is_refinement, Partition};
pub use properties::{check_models, validate_derivation, Property, PropertyReport, Violation};
pub use transform::{k_length, make_strict, shorten};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Template {
    pub cmp: Partition,
    pub grp: Partition,
}

impl Template {
    /// Pairs two partitions of the same universe. Group-within-component
    /// consistency is not enforced here; [`validate_derivation`] reports it.
    pub fn new(cmp: Partition, grp: Partition) -> Result<Self> {
        if cmp.universe() != grp.universe() {
            return Err(Error::UniverseMismatch { left: cmp.universe(), right: grp.universe() });
        }
        Ok(Template { cmp, grp })
    }

    pub fn singletons(n: usize) -> Self {
        Template { cmp: Partition::singletons(n), grp: Partition::singletons(n) }
    }

    pub fn universe(&self) -> usize {
        self.cmp.universe()
    }

    /// Largest number of groups inside a single component.
    pub fn width(&self) -> usize {
        let mut per_component = vec![0usize; self.cmp.len()];
        for g in self.grp.blocks() {
            per_component[self.cmp.block_of(g[0])] += 1;
        }
        per_component.into_iter().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DerivationJson", into = "DerivationJson")]
pub struct Derivation {
    templates: Vec<Template>,
}

impl Derivation {
    /// Wraps a nonempty template sequence over one universe. The D-conditions
    /// are checked separately by [`validate_derivation`].
    pub fn new(templates: Vec<Template>) -> Result<Self> {
        let first = templates
            .first()
            .ok_or_else(|| Error::InvalidArgument("a derivation needs at least one template".into()))?;
        let n = first.universe();
        if let Some(t) = templates.iter().find(|t| t.universe() != n) {
            return Err(Error::UniverseMismatch { left: n, right: t.universe() });
        }
        Ok(Derivation { templates })
    }

    /// Singletons, then one component whose groups are singletons.
    pub fn trivial(n: usize) -> Self {
        let mut templates = vec![Template::singletons(n)];
        if n > 1 {
            templates.push(Template { cmp: Partition::single_block(n), grp: Partition::singletons(n) });
        }
        Derivation { templates }
    }

    pub fn universe(&self) -> usize {
        self.templates[0].universe()
    }

    /// Number of steps `t`; there are `t + 1` templates.
    pub fn len(&self) -> usize {
        self.templates.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn templates(&self) -> &[Template] {
        &self.templates
    }

    pub fn into_templates(self) -> Vec<Template> {
        self.templates
    }

    pub fn width(&self) -> usize {
        self.templates.iter().map(Template::width).max().unwrap_or(0)
    }

    /// Component counts strictly decrease along the sequence.
    pub fn is_strict(&self) -> bool {
        self.templates.windows(2).all(|w| w[0].cmp.len() > w[1].cmp.len())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("derivation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Serialize, Deserialize)]
struct DerivationJson {
    universe: usize,
    templates: Vec<Template>,
}

impl TryFrom<DerivationJson> for Derivation {
    type Error = Error;

    fn try_from(raw: DerivationJson) -> Result<Self> {
        let d = Derivation::new(raw.templates)?;
        if d.universe() != raw.universe {
            return Err(Error::UniverseMismatch { left: raw.universe, right: d.universe() });
        }
        Ok(d)
    }
}

impl From<Derivation> for DerivationJson {
    fn from(d: Derivation) -> Self {
        DerivationJson { universe: d.universe(), templates: d.templates }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(abcd_derivation().width(), 3);
        assert_eq!(Template::singletons(5).width(), 1);
        let t = Template::new(Partition::single_block(4), Partition::singletons(4)).unwrap();
        assert_eq!(t.width(), 4);
    }

    #[test]
    fn json_round_trip() {
        let d = abcd_derivation();
        let text = d.to_json();
        assert!(text.starts_with(r#"{"universe":4,"templates":[{"cmp":[[0],[1],[2],[3]]"#));
        assert_eq!(Derivation::from_json(&text).unwrap(), d);
        assert!(Derivation::from_json(r#"{"universe":3,"templates":[{"cmp":[[0],[1]],"grp":[[0],[1]]}]}"#).is_err());
        assert!(Derivation::from_json(r#"{"universe":0,"templates":[]}"#).is_err());
    }

    #[test]
    fn trivial_is_strict() {
        let d = Derivation::trivial(5);
        assert!(d.is_strict());
        assert_eq!((d.len(), d.width()), (1, 5));
        assert!(validate_derivation(&d).ok);
        assert_eq!(Derivation::trivial(1).len(), 0);
    }
}
