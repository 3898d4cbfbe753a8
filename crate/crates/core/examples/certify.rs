//! Minimal library walk-through: enclose a growth rate, then run the full
//! covering-construction verification and print the summary table.

fn main() {
    let seq = growthlab::growth::EnumSequence::parse("1,1,2,3,5,7;8").unwrap();
    let gr = growthlab::growth::growth_rate(&seq, 40).unwrap();
    println!(
        "gr(⊕(1,1,2,3,5,7,8,8,…)) = {}  (poly {})",
        gr.decimal(6),
        gr.poly.to_desc_string()
    );

    let report = growthlab::families::verify_theorem2(40).unwrap();
    println!("family   interval                feasible");
    for f in &report.families {
        println!(
            "{:8} [{}, {}]  {}",
            f.name,
            f.gr_lo.decimal(6),
            f.gr_hi.decimal(6),
            f.feasible
        );
    }
    println!("all certified: {}", report.all_certified);
}
