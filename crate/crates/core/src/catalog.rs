//! Named small groups used by tests, benchmarks and the command line.

use std::sync::OnceLock;

use crate::error::Result;
use crate::group::{find_isomorphism, FiniteGroup, GroupInvariants, Subgroup};

fn c(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n)
}

fn prod(fs: &[FiniteGroup]) -> FiniteGroup {
    FiniteGroup::direct_product(fs)
}

fn semi(n: &FiniteGroup, a: &FiniteGroup, act: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let action: Vec<Vec<usize>> = (0..a.order()).map(|k| (0..n.order()).map(|x| act(k, x)).collect()).collect();
    FiniteGroup::semidirect(n, a, &action).expect("catalog actions are valid")
}

fn meta(n: usize, m: usize, t: usize) -> FiniteGroup {
    FiniteGroup::metacyclic(n, m, t).expect("catalog parameters are valid")
}

fn perms(degree: usize, gens: &[&[usize]]) -> FiniteGroup {
    let gens: Vec<Vec<usize>> = gens.iter().map(|g| g.to_vec()).collect();
    FiniteGroup::from_permutations(degree, &gens).expect("catalog permutations are valid")
}

/// 2×2 matrices over 𝔽₃ acting on row vectors `a + 3b`.
fn mat3(m: [[usize; 2]; 2]) -> Vec<usize> {
    (0..9)
        .map(|v| {
            let (a, b) = (v % 3, v / 3);
            let x = (a * m[0][0] + b * m[1][0]) % 3;
            let y = (a * m[0][1] + b * m[1][1]) % 3;
            x + 3 * y
        })
        .collect()
}

fn a4() -> FiniteGroup {
    perms(4, &[&[1, 2, 0, 3], &[1, 0, 3, 2]])
}

fn s4() -> FiniteGroup {
    perms(4, &[&[1, 2, 3, 0], &[1, 0, 2, 3]])
}

/// The central product `C4 ∘ D8`.
fn pauli() -> FiniteGroup {
    let p = prod(&[c(4), FiniteGroup::dihedral(4)]);
    // (2, r²) has index 2 + 4·2
    let z = Subgroup::generated(&p, &[10]);
    p.quotient(&z).expect("central subgroup")
}

/// `ℤ/3 × ℤ/3 ⋊ ℤ/3` with `(a, b) ↦ (a, b + k·a)`.
fn heisenberg27() -> FiniteGroup {
    let n = prod(&[c(3), c(3)]);
    semi(&n, &c(3), |k, x| {
        let (a, b) = (x % 3, x / 3);
        a + 3 * ((b + k * a) % 3)
    })
}

fn klein_by_c4() -> FiniteGroup {
    let n = prod(&[c(2), c(2)]);
    semi(&n, &c(4), |k, x| if k % 2 == 1 { (x % 2) * 2 + x / 2 } else { x })
}

const NAMES: &[&str] = &[
    "C1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3", "C7", "C8", "C2xC4", "C2xC2xC2", "D8", "Q8", "C9",
    "C3xC3", "C10", "D10", "C11", "C12", "C2xC6", "D12", "Dic12", "A4", "C13", "C14", "D14", "C15", "C16",
    "C4xC4", "C2xC8", "C2xC2xC4", "C2xC2xC2xC2", "D16", "Q16", "SD16", "M16", "C4:C4", "C2xD8", "C2xQ8",
    "Pauli", "C2xC2:C4", "C17", "C18", "C3xC6", "D18", "C3xS3", "C3xC3:C2", "C19", "C20", "C2xC10", "D20",
    "Dic20", "F20", "C21", "C7:C3", "C22", "D22", "C23", "C24", "C2xC12", "C2xC2xC6", "S4", "SL23", "D24",
    "Dic24", "C2xA4", "C3:C8", "C3xD8", "C3xQ8", "C4xS3", "C2xD12", "C2xDic12", "He27", "C3xA4", "C7:C6",
    "C2xS4", "GL23", "C4xA4",
];

/// Looks up a group by name, e.g. `C4`, `C2xC2`, `D8` (order 8), `Q8`, `A4`, `SL23`.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    let d = FiniteGroup::dihedral;
    let dic = FiniteGroup::dicyclic;
    let g = match name {
        "S3" => d(3),
        "D8" => d(4),
        "Q8" => dic(2),
        "D10" => d(5),
        "D12" => d(6),
        "Dic12" => dic(3),
        "A4" => a4(),
        "D14" => d(7),
        "D16" => d(8),
        "Q16" => dic(4),
        "SD16" => meta(8, 2, 3),
        "M16" => meta(8, 2, 5),
        "C4:C4" => meta(4, 4, 3),
        "C2xD8" => prod(&[c(2), d(4)]),
        "C2xQ8" => prod(&[c(2), dic(2)]),
        "Pauli" => pauli(),
        "C2xC2:C4" => klein_by_c4(),
        "D18" => d(9),
        "C3xS3" => prod(&[c(3), d(3)]),
        "C3xC3:C2" => semi(&prod(&[c(3), c(3)]), &c(2), |k, x| if k == 1 { (3 - x % 3) % 3 + 3 * ((3 - x / 3) % 3) } else { x }),
        "D20" => d(10),
        "Dic20" => dic(5),
        "F20" => meta(5, 4, 2),
        "C7:C3" => meta(7, 3, 2),
        "D22" => d(11),
        "S4" => s4(),
        "SL23" => perms(9, &[&mat3([[1, 1], [0, 1]]), &mat3([[1, 0], [1, 1]])]),
        "GL23" => perms(9, &[&mat3([[1, 1], [0, 1]]), &mat3([[1, 0], [1, 1]]), &mat3([[2, 0], [0, 1]])]),
        "D24" => d(12),
        "Dic24" => dic(6),
        "C2xA4" => prod(&[c(2), a4()]),
        "C3:C8" => meta(3, 8, 2),
        "C3xD8" => prod(&[c(3), d(4)]),
        "C3xQ8" => prod(&[c(3), dic(2)]),
        "C4xS3" => prod(&[c(4), d(3)]),
        "C2xD12" => prod(&[c(2), d(6)]),
        "C2xDic12" => prod(&[c(2), dic(3)]),
        "He27" => heisenberg27(),
        "C3xA4" => prod(&[c(3), a4()]),
        "C7:C6" => meta(7, 6, 3),
        "C2xS4" => prod(&[c(2), s4()]),
        "C4xA4" => prod(&[c(4), a4()]),
        _ => {
            let factors: Option<Vec<usize>> = name
                .split('x')
                .map(|f| f.strip_prefix('C').and_then(|n| n.parse().ok()).filter(|&n: &usize| n >= 1))
                .collect();
            let factors = factors?;
            if factors.len() == 1 {
                c(factors[0])
            } else {
                prod(&factors.into_iter().map(c).collect::<Vec<_>>())
            }
        }
    };
    Some(g)
}

/// Catalog entries of order at most `max_order`, in catalog order.
pub fn small_groups(max_order: usize) -> Vec<(&'static str, FiniteGroup)> {
    NAMES
        .iter()
        .filter_map(|&n| {
            let g = by_name(n).expect("catalog name");
            (g.order() <= max_order).then_some((n, g))
        })
        .collect()
}

struct Entry {
    name: &'static str,
    group: FiniteGroup,
    invariants: GroupInvariants,
}

fn indexed() -> &'static [Entry] {
    static CACHE: OnceLock<Vec<Entry>> = OnceLock::new();
    CACHE.get_or_init(|| {
        small_groups(usize::MAX)
            .into_iter()
            .map(|(name, group)| Entry {
                name,
                invariants: GroupInvariants::of(&group).expect("catalog group"),
                group,
            })
            .collect()
    })
}

/// The catalog name of a group isomorphic to `g`, if the catalog has one.
pub fn identify(g: &FiniteGroup) -> Result<Option<&'static str>> {
    let inv = GroupInvariants::of(g)?;
    for e in indexed().iter().filter(|e| e.invariants == inv) {
        if find_isomorphism(g, &e.group)?.is_some() {
            return Ok(Some(e.name));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_names() {
        let expect = [
            ("S3", 6), ("Q8", 8), ("A4", 12), ("Pauli", 16), ("SL23", 24), ("GL23", 48), ("He27", 27),
            ("C2xC2xC2xC2", 16), ("C7:C6", 42), ("C2xS4", 48),
        ];
        for (n, o) in expect {
            assert_eq!(by_name(n).unwrap().order(), o, "{n}");
        }
        assert!(by_name("bogus").is_none());
        assert!(by_name("C0").is_none());
    }

    #[test]
    fn nonabelian_entries_are_nonabelian() {
        for (n, g) in small_groups(48) {
            let abelian = n.split('x').all(|f| f.starts_with('C') && f[1..].parse::<usize>().is_ok());
            assert_eq!(g.is_abelian(), abelian, "{n}");
        }
    }

    #[test]
    fn distinguishable_order_16() {
        use crate::group::GroupInvariants;
        let names = ["D16", "Q16", "SD16", "M16", "C4:C4", "C2xD8", "C2xQ8", "Pauli", "C2xC2:C4"];
        let inv: Vec<_> = names.iter().map(|n| GroupInvariants::of(&by_name(n).unwrap()).unwrap()).collect();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                let same = inv[i] == inv[j]
                    && crate::group::find_isomorphism(&by_name(names[i]).unwrap(), &by_name(names[j]).unwrap())
                        .unwrap()
                        .is_some();
                assert!(!same, "{} ≅ {}", names[i], names[j]);
            }
        }
    }
}
