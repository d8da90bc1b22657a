//! Opaque string identifiers for vertices, arrows and ribbon-graph pieces.

use std::borrow::Borrow;
use std::fmt;

use serde::{Deserialize, Serialize};

macro_rules! string_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                Self(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                Self(s.to_owned())
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                Self(s)
            }
        }

        impl Borrow<str> for $name {
            fn borrow(&self) -> &str {
                &self.0
            }
        }
    };
}

string_id!(
    /// A quiver vertex (equivalently, an edge of the associated Brauer graph).
    VertexId
);
string_id!(
    /// A quiver arrow (equivalently, a half-edge of the associated Brauer graph).
    ArrowId
);
string_id!(
    /// A vertex of a ribbon graph.
    RibbonVertexId
);
string_id!(EdgeId);
string_id!(HalfEdgeId);

/// Wraps an identifier in parentheses unless it is a plain alphanumeric atom,
/// so that suffixes and prefixes added by the constructions stay unambiguous
/// when they are applied repeatedly.
pub(crate) fn atom(id: &str) -> String {
    if !id.is_empty() && id.chars().all(char::is_alphanumeric) {
        id.to_owned()
    } else {
        format!("({id})")
    }
}
