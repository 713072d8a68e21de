//! Quasi-Frobenius detection, carried out inside `G`: normal subgroups of
//! `Q = G/Z(G)` are the normal subgroups of `G` containing `Z(G)`, and
//! `C_Q(kZ)` pulls back to `{g : k^g ∈ kZ}`.

use serde::Serialize;

use crate::permgroup::{Group, PrimeSet};

use super::{hall_pi_subgroup, Analysis, HallOutcome, NormalSubgroup, StructureError};

#[derive(Clone, Debug)]
pub struct FrobeniusParts {
    /// Preimage of the Frobenius kernel of `G/Z(G)`.
    pub kernel: Group,
    /// Preimage of one Frobenius complement.
    pub complement: Group,
    pub kernel_abelian: bool,
    pub complement_abelian: bool,
    pub kernel_bar_order: u64,
    pub complement_bar_order: u64,
    pub center_order: u64,
}

#[derive(Clone, Debug)]
pub struct FrobeniusAnalysis {
    pub is_quasi_frobenius: bool,
    pub parts: Option<FrobeniusParts>,
}

/// Serializable order summary of an analysis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusSummary {
    pub is_quasi_frobenius: bool,
    pub kernel_order: Option<u64>,
    pub complement_order: Option<u64>,
    pub kernel_bar_order: Option<u64>,
    pub complement_bar_order: Option<u64>,
    pub kernel_abelian: Option<bool>,
    pub complement_abelian: Option<bool>,
}

impl FrobeniusAnalysis {
    pub fn abelian_kernel_and_complements(&self) -> bool {
        self.parts
            .as_ref()
            .is_some_and(|p| p.kernel_abelian && p.complement_abelian)
    }

    pub fn summary(&self) -> FrobeniusSummary {
        let p = self.parts.as_ref();
        FrobeniusSummary {
            is_quasi_frobenius: self.is_quasi_frobenius,
            kernel_order: p.map(|p| p.kernel.order()),
            complement_order: p.map(|p| p.complement.order()),
            kernel_bar_order: p.map(|p| p.kernel_bar_order),
            complement_bar_order: p.map(|p| p.complement_bar_order),
            kernel_abelian: p.map(|p| p.kernel_abelian),
            complement_abelian: p.map(|p| p.complement_abelian),
        }
    }
}

/// Whether `C_Q(kZ) ≤ N/Z` for every `k ∈ N \ Z`, checked on class representatives.
fn centralizers_inside(a: &Analysis, n: &NormalSubgroup, z: &NormalSubgroup) -> bool {
    let t = a.table();
    let g = a.group();
    let z_elems = t.elements_of(&z.classes);
    let mut in_n = vec![false; g.len()];
    for e in t.elements_of(&n.classes) {
        in_n[e] = true;
    }
    n.classes.difference(&z.classes).all(|c| {
        let k = &t.class(c).rep;
        let k_inv = k.inverse();
        g.elements().enumerate().all(|(i, x)| {
            if in_n[i] {
                return true;
            }
            let q = g.index_of(&k.conjugate_by(x).mul(&k_inv)).expect("closed");
            z_elems.binary_search(&q).is_err()
        })
    })
}

pub fn quasi_frobenius_analysis(
    a: &Analysis,
    budget: u64,
) -> Result<FrobeniusAnalysis, StructureError> {
    let not_qf = FrobeniusAnalysis {
        is_quasi_frobenius: false,
        parts: None,
    };
    let z_set = a.center_set();
    let z = NormalSubgroup {
        order: a.table().set_order(&z_set),
        classes: z_set,
    };
    let order = a.order();
    let mut kernel: Option<&NormalSubgroup> = None;
    for n in a.normal_lattice() {
        if n.order == z.order || n.order == order || !n.classes.is_superset(&z.classes) {
            continue;
        }
        let k_bar = n.order / z.order;
        let m = order / n.order;
        if num_integer::gcd(k_bar, m) != 1 || !centralizers_inside(a, n, &z) {
            continue;
        }
        if let Some(first) = kernel {
            return Err(StructureError::FrobeniusKernelNotUnique {
                first: first.order,
                second: n.order,
            });
        }
        kernel = Some(n);
    }
    let Some(kernel) = kernel else {
        return Ok(not_qf);
    };
    let m = order / kernel.order;
    // the preimage of a complement is Z·T for a Hall π(m)-subgroup T of G
    let tau = PrimeSet::of(m);
    let hall = match hall_pi_subgroup(a, &tau, budget) {
        HallOutcome::Found(h) => h,
        HallOutcome::BudgetExhausted { .. } => {
            return Err(StructureError::ComplementSearchExhausted { budget })
        }
        HallOutcome::DoesNotExist => return Err(StructureError::MissingComplement { order: m }),
    };
    let center = a.center();
    let complement = a.group().join(&hall, &center);
    if complement.order() != m * z.order {
        return Err(StructureError::MissingComplement { order: m });
    }
    let kernel_group = a.subgroup(&kernel.classes);
    Ok(FrobeniusAnalysis {
        is_quasi_frobenius: true,
        parts: Some(FrobeniusParts {
            kernel_abelian: kernel_group.is_abelian(),
            complement_abelian: complement.is_abelian(),
            kernel_bar_order: kernel.order / z.order,
            complement_bar_order: m,
            center_order: z.order,
            kernel: kernel_group,
            complement,
        }),
    })
}
