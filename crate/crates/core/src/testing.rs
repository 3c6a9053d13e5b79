use proptest::prelude::*;

use crate::lattice::{is_primitive, HomologyClass};

pub(crate) fn arb_primitive(bound: i64) -> impl Strategy<Value = HomologyClass> {
    (-bound..=bound, -bound..=bound)
        .prop_map(|(p, q)| HomologyClass::new(p, q))
        .prop_filter("primitive", is_primitive)
}
