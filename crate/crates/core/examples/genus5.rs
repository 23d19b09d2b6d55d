//! The trigonal chain of genus 5: ranks of K − iE, their tableaux, and the
//! certified map to the Hirzebruch surface.

use kgonal::genus5::genus5_report;

fn main() -> kgonal::Result<()> {
    let r = genus5_report()?;
    println!("profile {:?}", kgonal::genus5::genus5_chain().profile());
    for row in &r.ranks {
        let t = row.tableau.as_ref().map(|t| format!("{:?}", t.row_slices())).unwrap_or("-".into());
        println!("{:5} deg {:2} rank {:2} tableau {t} contained {:?}", row.label, row.degree, row.rank, row.in_torus);
    }
    println!("pencil tableau {:?}, psi_0 bridge slopes {:?}", r.pencil_tableau.row_slices(), r.pencil_slopes);
    println!("cycle spans {:?}, superabundant {}", r.cycle_dims, r.assumptions.superabundant);
    for t in &r.tuning.tuned {
        println!("cycle {}: tree edge {} set to {}", t.cycle, t.edge, t.len);
    }
    println!("naively well-spaced after tuning: {}", r.tuning.report.naively_well_spaced);
    Ok(())
}
