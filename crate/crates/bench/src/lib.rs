//! Workloads shared by the criterion benches.

use std::sync::Arc;

use hopfcat::catmod::{direct_sum, representable};
use hopfcat::equivariant::equivariant_direct_sum;
use hopfcat::fixtures;
use hopfcat::{CatModule, EquivModule, HCategory, Side};

/// `T`, `R` and `sign⊗T` over C2fix together with the sum `R ⊕ T ⊕ sign⊗T`.
pub fn c2fix_workload() -> (Arc<HCategory>, Vec<EquivModule>) {
    let c = fixtures::c2fix();
    let mut mods = fixtures::c2fix_modules(&c);
    let refs: Vec<&EquivModule> = mods.iter().collect();
    let sum = equivariant_direct_sum(&c, &[refs[1], refs[0], refs[2]]).expect("same category");
    mods.push(sum);
    (c, mods)
}

/// `k` copies of the representable module over the arrow category.
pub fn arrow_sum(field: hopfcat::Field, k: usize) -> CatModule {
    let cats = hopfcat::catmod::CategoryPair::new(fixtures::arrow_category(field));
    let p = representable(&cats, 0, Side::Left);
    let parts = vec![&p; k];
    direct_sum(&cats, Side::Left, &parts).expect("same category").module
}
