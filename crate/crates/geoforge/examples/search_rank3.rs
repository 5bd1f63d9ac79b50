//! The involution-pair search for rank-3 polytopes: fix an involution t,
//! sweep candidate pairs by the commuting/order filters, and return the
//! first triple generating the whole group with the intersection property.

use geoforge::cgroups::{coxeter_diagram, search_rank3_polytope};
use geoforge::groupcore::{FiniteGroup, GroupElement, Permutation};

fn main() -> geoforge::Result<()> {
    for (n, t_text) in [(4usize, "(1,2)"), (5, "(1,2)"), (6, "(1,2)")] {
        let gens = (1..n as u32)
            .map(|i| {
                Ok((
                    format!("s{i}"),
                    Permutation::from_cycles(&[vec![i, i + 1]], n)?,
                ))
            })
            .collect::<geoforge::Result<Vec<_>>>()?;
        let group = FiniteGroup::permutation(format!("Sym({n})"), n, gens)?;
        let t = GroupElement::Perm(Permutation::parse(t_text, n)?);
        match search_rank3_polytope(&group, &t, None) {
            Ok(found) => {
                let triple: Vec<String> = found
                    .generators()
                    .iter()
                    .map(|(_, g)| g.to_string())
                    .collect();
                println!(
                    "Sym({n}), t = {t_text}: ({})  diagram {}",
                    triple.join(", "),
                    coxeter_diagram(&found)?.to_text()
                );
            }
            Err(e) => println!("Sym({n}), t = {t_text}: {e}"),
        }
    }
    Ok(())
}
