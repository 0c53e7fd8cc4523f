use std::collections::HashSet;

use super::{AttributeSet, FcaError};

/// A formal context: named objects, named attributes and a total incidence
/// relation stored as one attribute row per object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<AttributeSet>,
}

impl FormalContext {
    pub fn new(attributes: Vec<String>) -> Result<Self, FcaError> {
        ensure_unique("attribute", &attributes)?;
        Ok(Self {
            objects: Vec::new(),
            attributes,
            rows: Vec::new(),
        })
    }

    pub fn from_rows(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<AttributeSet>,
    ) -> Result<Self, FcaError> {
        let mut ctx = Self::new(attributes)?;
        if objects.len() != rows.len() {
            return Err(FcaError::Input(format!(
                "{} objects but {} incidence rows",
                objects.len(),
                rows.len()
            )));
        }
        for (name, row) in objects.into_iter().zip(rows) {
            ctx.add_object(name, row)?;
        }
        Ok(ctx)
    }

    pub fn add_object(&mut self, name: String, row: AttributeSet) -> Result<(), FcaError> {
        if row.universe() != self.attributes.len() {
            return Err(FcaError::Input(format!(
                "row for {name} spans {} attributes, context has {}",
                row.universe(),
                self.attributes.len()
            )));
        }
        if self.objects.contains(&name) {
            return Err(FcaError::Input(format!("duplicate object {name}")));
        }
        self.objects.push(name);
        self.rows.push(row);
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn rows(&self) -> &[AttributeSet] {
        &self.rows
    }

    pub fn row(&self, object: usize) -> &AttributeSet {
        &self.rows[object]
    }

    pub fn universe(&self) -> usize {
        self.attributes.len()
    }

    pub fn incidence(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attributes.iter().position(|a| a == name)
    }

    /// Attribute set from names.
    pub fn attribute_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AttributeSet, FcaError> {
        let mut set = AttributeSet::empty(self.universe());
        for name in names {
            let name = name.as_ref();
            let i = self
                .attribute_index(name)
                .ok_or_else(|| FcaError::UnknownAttribute(name.to_owned()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn attribute_names(&self, set: &AttributeSet) -> Vec<&str> {
        set.iter().map(|i| self.attributes[i].as_str()).collect()
    }

    /// Attributes shared by every object in `objects` (all of M for no objects).
    pub fn intent_of(&self, objects: &[usize]) -> AttributeSet {
        let mut intent = AttributeSet::full(self.universe());
        for &g in objects {
            intent.intersect_with(&self.rows[g]);
        }
        intent
    }

    /// Objects having every attribute of `attrs`.
    pub fn extent_of(&self, attrs: &AttributeSet) -> Vec<usize> {
        (0..self.objects.len())
            .filter(|&g| attrs.is_subset(&self.rows[g]))
            .collect()
    }

    /// The closure `attrs''`.
    pub fn attribute_closure(&self, attrs: &AttributeSet) -> AttributeSet {
        let mut intent = AttributeSet::full(self.universe());
        for row in &self.rows {
            if attrs.is_subset(row) {
                intent.intersect_with(row);
            }
        }
        intent
    }

    pub fn derive_intent<S: AsRef<str>>(&self, objects: &[S]) -> Result<AttributeSet, FcaError> {
        let indices = objects
            .iter()
            .map(|o| {
                self.object_index(o.as_ref())
                    .ok_or_else(|| FcaError::UnknownObject(o.as_ref().to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.intent_of(&indices))
    }

    pub fn derive_extent(&self, attrs: &AttributeSet) -> Result<Vec<&str>, FcaError> {
        if attrs.universe() != self.universe() {
            return Err(FcaError::Input(format!(
                "attribute set over {} attributes, context has {}",
                attrs.universe(),
                self.universe()
            )));
        }
        Ok(self
            .extent_of(attrs)
            .into_iter()
            .map(|g| self.objects[g].as_str())
            .collect())
    }
}

pub(crate) fn ensure_unique(kind: &str, names: &[String]) -> Result<(), FcaError> {
    let mut seen = HashSet::new();
    for n in names {
        if !seen.insert(n.as_str()) {
            return Err(FcaError::Input(format!("duplicate {kind} {n}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fca::testing::table3_context;

    #[test]
    fn france_intent() {
        let ctx = table3_context();
        let intent = ctx.derive_intent(&["France"]).unwrap();
        assert_eq!(
            ctx.attribute_names(&intent),
            ["EU", "European", "G8", "Mediterranean"]
        );
    }

    #[test]
    fn european_extent_over_table1_rows() {
        let ctx = table3_context();
        let european = ctx.attribute_set(&["European"]).unwrap();
        let extent = ctx.derive_extent(&european).unwrap();
        let table1 = ["Syria", "Turkey", "France", "Germany", "Switzerland", "USA"];
        let table1_part: Vec<_> = extent.into_iter().filter(|o| table1.contains(o)).collect();
        assert_eq!(table1_part, ["Turkey", "France", "Germany", "Switzerland"]);
    }

    #[test]
    fn empty_derivations() {
        let ctx = table3_context();
        assert!(ctx.derive_intent::<&str>(&[]).unwrap().is_full());
        let all = ctx.derive_extent(&AttributeSet::empty(5)).unwrap();
        assert_eq!(all.len(), ctx.objects().len());
    }

    #[test]
    fn unknown_names_are_input_errors() {
        let ctx = table3_context();
        assert!(matches!(
            ctx.derive_intent(&["Atlantis"]),
            Err(FcaError::UnknownObject(_))
        ));
        assert!(matches!(
            ctx.attribute_set(&["Arctic"]),
            Err(FcaError::UnknownAttribute(_))
        ));
        assert!(ctx.derive_extent(&AttributeSet::empty(3)).is_err());
    }
}
