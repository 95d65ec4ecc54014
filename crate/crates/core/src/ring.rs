use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::order::MonomialOrder;

/// A polynomial ring `k[x_1, ..., x_n]` together with its term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    field: FieldSpec,
    order: MonomialOrder,
}

pub type RingRef = Arc<Ring>;

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        field: FieldSpec,
        order: MonomialOrder,
    ) -> Result<RingRef> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(Error::DuplicateVariable(name.clone()));
            }
        }
        if !order.fits(names.len()) {
            return Err(Error::OrderShape(names.len()));
        }
        Ok(Arc::new(Ring {
            names,
            field,
            order,
        }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and field under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<RingRef> {
        Ring::new(self.names.clone(), self.field, order)
    }

    /// A name not yet used by this ring: `base`, or `base` followed by
    /// enough underscores to avoid every name in `taken` as well.
    pub fn fresh_name(&self, base: &str, taken: &[String]) -> String {
        let mut name = base.to_string();
        while self.names.contains(&name) || taken.contains(&name) {
            name.push('_');
        }
        name
    }
}

pub(crate) fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}] ({})",
            self.field,
            self.names.join(", "),
            self.order
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_names() {
        let q = FieldSpec::Rationals;
        assert!(Ring::new(["x", "y_1", "Z2"], q, MonomialOrder::GrevLex).is_ok());
        assert_eq!(
            Ring::new(["x", "x"], q, MonomialOrder::GrevLex),
            Err(Error::DuplicateVariable("x".into()))
        );
        assert_eq!(
            Ring::new(["1x"], q, MonomialOrder::GrevLex),
            Err(Error::InvalidName("1x".into()))
        );
        assert_eq!(
            Ring::new(["x", "y"], q, MonomialOrder::Weighted(vec![1])),
            Err(Error::OrderShape(2))
        );
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let r = Ring::new(
            ["t1", "t1_", "x"],
            FieldSpec::Rationals,
            MonomialOrder::GrevLex,
        )
        .unwrap();
        assert_eq!(r.fresh_name("t1", &[]), "t1__");
        assert_eq!(r.fresh_name("t2", &[]), "t2");
        assert_eq!(r.fresh_name("u", &["u".into()]), "u_");
    }
}
