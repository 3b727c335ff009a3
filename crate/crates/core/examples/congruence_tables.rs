//! The congruence, determinant, quaternion, commutator and deep-filtration tables.

use morava_s2::catalog::{
    commutator_table, congruence_table, deep_filtration, determinant_facts, quaternion_relations, Identity,
};

fn show(title: &str, ids: &[Identity]) {
    println!("{title}");
    for id in ids {
        println!("  [{}] {}  ({})", if id.holds { "ok" } else { "FAIL" }, id.label, id.detail);
    }
}

fn main() {
    show("leading terms", &congruence_table(12));
    show("determinants", &determinant_facts());
    show("quaternion relations", &quaternion_relations(16));
    show("commutators", &commutator_table(12));
    show("deep filtration", &deep_filtration(12));
}
