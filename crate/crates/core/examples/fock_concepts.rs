//! Membership weights of concept combinations: classification against the
//! classical bounds and the two-sector Fock model that reproduces them.

use qcog::fock::{
    classify_extension, fock_combination_weight, kolmogorov_representable, solve_fock_parameters,
    Combination, FockSolution, MembershipRecord,
};

fn main() -> qcog::Result<()> {
    let records = [
        MembershipRecord::new("mint", 0.87, 0.81, 0.9, Combination::Conjunction)?,
        MembershipRecord::new("apple", 0.96, 0.42, 0.41, Combination::Conjunction)?,
        MembershipRecord::new("ashtray", 0.3, 0.7, 0.25, Combination::Disjunction)?,
        MembershipRecord::new("tomato", 0.7, 0.7, 0.8, Combination::Disjunction)?,
    ];
    for r in &records {
        let rep = kolmogorov_representable(r);
        print!(
            "{:<8} {:<12} {:<22} classical: {:<5}",
            r.item,
            r.combination.as_str(),
            classify_extension(r).as_str(),
            rep.representable
        );
        match solve_fock_parameters(r) {
            FockSolution::Solved(p) => {
                let w = fock_combination_weight(r.mu_a, r.mu_b, &p, r.combination).value;
                println!("  theta {:.4}  m^2 {:.4}  weight {w:.4}", p.theta(), p.m2());
            }
            FockSolution::Infeasible => println!("  no Fock solution"),
        }
    }
    Ok(())
}
