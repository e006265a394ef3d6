//! Graded homomorphism spaces, solved as a linear system in the
//! coefficients of an unknown polynomial matrix.

use super::bimodule::{pm_zero, Bimodule, BimoduleMap};
use super::linalg::{Echelon, SparseRow};
use super::poly::{monomials, Mono, Poly, Q};
use crate::error::{Error, Result};
use num_traits::Zero;
use std::collections::HashMap;

/// Bound on the number of unknown coefficients of a single solve.
pub const MAX_UNKNOWNS: usize = 20_000;

struct Unknown {
    i: usize,
    j: usize,
    mono: Mono,
}

/// A `Q`-basis of the degree-`degree` bimodule maps `M → N`.
pub fn hom_space(m: &Bimodule, n: &Bimodule, degree: i32) -> Result<Vec<BimoduleMap>> {
    if m.ring != n.ring {
        return Err(Error::Precondition("modules over different rings".into()));
    }
    let vars = m.ring.left_vars();
    let mut unknowns = Vec::new();
    let mut mono_cache: HashMap<i32, Vec<Mono>> = HashMap::new();
    for i in 0..m.rank() {
        for j in 0..n.rank() {
            let pd = m.degrees[i] + degree - n.degrees[j];
            if pd < 0 || pd % 2 != 0 {
                continue;
            }
            let ms = mono_cache.entry(pd).or_insert_with(|| monomials(&vars, (pd / 2) as u32));
            unknowns.extend(ms.iter().map(|&mono| Unknown { i, j, mono }));
        }
    }
    if unknowns.len() > MAX_UNKNOWNS {
        return Err(Error::BoundExceeded { what: "hom-space unknowns".into(), bound: MAX_UNKNOWNS });
    }
    if unknowns.is_empty() {
        return Ok(vec![]);
    }
    // equation (op, i, j, monomial) of ρ_M(a) Φ - Φ ρ_N(a)
    let mut eqs: HashMap<(usize, usize, usize, Mono), SparseRow> = HashMap::new();
    let mut push = |key: (usize, usize, usize, Mono), u: usize, c: Q| {
        let row = eqs.entry(key).or_default();
        let e = row.entry(u).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            row.remove(&u);
        }
    };
    for (a, (ra, rb)) in m.ops.iter().zip(&n.ops).enumerate() {
        for (u, unk) in unknowns.iter().enumerate() {
            // Φ_{kj} = mono contributes ρ_M(a)_{ik} mono to entry (i, j)
            for (i, row) in ra.iter().enumerate() {
                for (mm, c) in row[unk.i].terms() {
                    push((a, i, unk.j, mono_add(mm, &unk.mono)), u, c.clone());
                }
            }
            // Φ_{ik} = mono contributes -mono ρ_N(a)_{kj} to entry (i, j)
            for (j, x) in rb[unk.j].iter().enumerate() {
                for (mm, c) in x.terms() {
                    push((a, unk.i, j, mono_add(mm, &unk.mono)), u, -c.clone());
                }
            }
        }
    }
    let mut ech = Echelon::new();
    for (_, row) in eqs {
        if !row.is_empty() {
            ech.insert(row);
        }
    }
    let basis = ech.nullspace(unknowns.len());
    Ok(basis
        .into_iter()
        .map(|v| {
            let mut mat = pm_zero(m.rank(), n.rank());
            for (u, c) in v.iter().enumerate() {
                if !c.is_zero() {
                    let unk = &unknowns[u];
                    let mut p = Poly::zero();
                    p.add_term(unk.mono, c.clone());
                    mat[unk.i][unk.j] += &p;
                }
            }
            BimoduleMap { degree, mat }
        })
        .collect())
}

fn mono_add(a: &Mono, b: &Mono) -> Mono {
    std::array::from_fn(|k| a[k] + b[k])
}

/// `dim Hom^d(M, N)` for each `d` in `degrees`.
pub fn hom_dims(m: &Bimodule, n: &Bimodule, degrees: impl IntoIterator<Item = i32>) -> Result<Vec<(i32, usize)>> {
    degrees.into_iter().map(|d| Ok((d, hom_space(m, n, d)?.len()))).collect()
}
