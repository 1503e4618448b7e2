//! Structural summary of a finite quandle.

use std::fmt;

use crate::error::Result;
use crate::groups::{automorphism_group, inner_group, transvection_group, Catalog, PermGroup};
use crate::quandle::FiniteQuandle;

/// A computed group together with the catalog names it matched.
#[derive(Debug)]
pub struct GroupSummary {
    pub group: PermGroup,
    /// Empty when the catalog has no isomorphic entry.
    pub names: Vec<String>,
}

impl GroupSummary {
    pub fn new(group: PermGroup, catalog: &Catalog) -> Result<GroupSummary> {
        let names = catalog
            .identify(&group)?
            .map(|e| e.names().iter().map(ToString::to_string).collect())
            .unwrap_or_default();
        Ok(GroupSummary { group, names })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// The first catalog name, or `unrecognized`.
    pub fn name(&self) -> &str {
        self.names.first().map_or("unrecognized", String::as_str)
    }

    /// Every catalog name, joined with ` = `.
    pub fn all_names(&self) -> String {
        if self.names.is_empty() {
            "unrecognized".to_string()
        } else {
            self.names.join(" = ")
        }
    }
}

#[derive(Debug)]
pub struct Analysis {
    pub size: usize,
    pub component_sizes: Vec<usize>,
    pub aut: GroupSummary,
    pub inn: GroupSummary,
    pub trans: GroupSummary,
    pub medial: bool,
}

pub fn analyze(q: &FiniteQuandle, catalog: &Catalog) -> Result<Analysis> {
    Ok(Analysis {
        size: q.size(),
        component_sizes: q.components().iter().map(Vec::len).collect(),
        aut: GroupSummary::new(automorphism_group(q), catalog)?,
        inn: GroupSummary::new(inner_group(q), catalog)?,
        trans: GroupSummary::new(transvection_group(q), catalog)?,
        medial: q.is_medial(),
    })
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sizes: Vec<String> = self.component_sizes.iter().map(ToString::to_string).collect();
        writeln!(f, "elements: {}", self.size)?;
        writeln!(f, "components: {} (sizes {})", self.component_sizes.len(), sizes.join(", "))?;
        for (label, g) in [("Aut", &self.aut), ("Inn", &self.inn), ("Trans", &self.trans)] {
            writeln!(f, "{label}: order {}, {}", g.order(), g.all_names())?;
        }
        writeln!(f, "medial: {}", if self.medial { "yes" } else { "no" })
    }
}
