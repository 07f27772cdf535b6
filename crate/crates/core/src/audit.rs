//! Structural audit of the finite subgroups `N`, `SN`, `W_n`, `SW_n`, `T`
//! and the element `Δ` of `Aut(F_n)`.

use serde::Serialize;
use thiserror::Error;

use crate::ablin::{is_special, MatrixError};
use crate::aut::{
    closure, inversion_generators, rotation_generators, signed_permutation_generators, AutError,
    Automorphism, GroupTable, Order,
};

/// Enumeration cap used by the audit. `|W_6| = 46080` so the general
/// [`crate::aut::DEFAULT_CAP`] is too small here.
pub const AUDIT_CAP: usize = 65_536;

/// One line of an audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        CheckRecord {
            name: name.into(),
            pass: expected == actual,
            expected,
            actual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub rank: usize,
    pub checks: Vec<CheckRecord>,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("rank {0} outside the supported audit range 3..=6")]
    Rank(usize),
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

fn special_part(table: &GroupTable) -> Result<GroupTable, AuditError> {
    let mut flags = Vec::with_capacity(table.order());
    for f in table.elements() {
        flags.push(is_special(f)?);
    }
    let mut it = flags.into_iter();
    Ok(table.filter(|_| it.next().unwrap_or(false)))
}

fn normal_in(sub: &GroupTable, ambient: &GroupTable) -> Result<bool, AutError> {
    for s in ambient.elements() {
        for t in sub.elements() {
            if !sub.contains_images(&s.conjugate_images(t)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn order_of(f: &Automorphism) -> Result<String, AutError> {
    Ok(match f.order(12)? {
        Order::Finite(k) => k.to_string(),
        Order::CapExceeded => "infinite?".to_string(),
    })
}

/// Runs the audit for `3 ≤ rank ≤ 6`. `cap` bounds every enumeration.
pub fn audit_torsion(rank: usize, cap: usize) -> Result<AuditReport, AuditError> {
    if !(3..=6).contains(&rank) {
        return Err(AuditError::Rank(rank));
    }
    let mut checks = Vec::new();
    let factorial: usize = (1..=rank).product();
    let m = rank / 2;

    let inversions = inversion_generators(rank);
    let rotations = rotation_generators(rank);
    for (i, e) in inversions.iter().enumerate() {
        checks.push(CheckRecord::new(
            format!("order(e{})", i + 1),
            2,
            order_of(e)?,
        ));
    }
    for (i, r) in rotations.iter().enumerate() {
        checks.push(CheckRecord::new(
            format!("order(R{})", i + 1),
            3,
            order_of(r)?,
        ));
    }
    let mut commute = true;
    for (i, a) in rotations.iter().enumerate() {
        for b in &rotations[i + 1..] {
            commute &= a.compose(b)? == b.compose(a)?;
        }
    }
    checks.push(CheckRecord::new("rotations_commute", true, commute));

    let t = closure(&rotations, cap)?;
    checks.push(CheckRecord::new("|T|", 3usize.pow(m as u32), t.order()));
    checks.push(CheckRecord::new(
        "T_in_SAut",
        t.order(),
        special_part(&t)?.order(),
    ));

    let n_group = closure(&inversions, cap)?;
    let sn = special_part(&n_group)?;
    checks.push(CheckRecord::new("|N|", 1usize << rank, n_group.order()));
    checks.push(CheckRecord::new("|SN|", 1usize << (rank - 1), sn.order()));

    let w = closure(&signed_permutation_generators(rank), cap)?;
    let sw = special_part(&w)?;
    checks.push(CheckRecord::new(
        "|W_n|",
        (1usize << rank) * factorial,
        w.order(),
    ));
    checks.push(CheckRecord::new(
        "|SW_n|",
        (1usize << (rank - 1)) * factorial,
        sw.order(),
    ));

    let delta = Automorphism::delta(rank);
    let mut central = true;
    for s in w.elements() {
        central &= s.compose(&delta)? == delta.compose(s)?;
    }
    checks.push(CheckRecord::new("Delta_central_in_W_n", true, central));
    checks.push(CheckRecord::new(
        "Delta_in_SAut",
        rank.is_multiple_of(2),
        is_special(&delta)?,
    ));

    checks.push(CheckRecord::new(
        "SN_normal_in_SW_n",
        true,
        normal_in(&sn, &sw)?,
    ));
    if rank.is_multiple_of(2) {
        let delta_group = closure(std::slice::from_ref(&delta), cap)?;
        checks.push(CheckRecord::new("|<Delta>|", 2, delta_group.order()));
        checks.push(CheckRecord::new(
            "<Delta>_normal_in_SW_n",
            true,
            normal_in(&delta_group, &sw)?,
        ));
    }

    // Faithfulness: the identity is the only enumerated element fixing every a_i.
    let trivial_in_sn = sn.elements().iter().filter(|f| f.is_identity()).count();
    let trivial_in_t = t.elements().iter().filter(|f| f.is_identity()).count();
    checks.push(CheckRecord::new("trivially_acting_in_SN", 1, trivial_in_sn));
    checks.push(CheckRecord::new("trivially_acting_in_T", 1, trivial_in_t));

    Ok(AuditReport { rank, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn audit_rank_4() {
        let report = audit_torsion(4, AUDIT_CAP).unwrap();
        assert!(report.all_pass(), "{report:#?}");
        assert_eq!(report.get("|T|").unwrap().actual, "9");
        assert_eq!(report.get("|SN|").unwrap().actual, "8");
        assert_eq!(report.get("|SW_n|").unwrap().actual, "192");
        assert_eq!(report.get("Delta_in_SAut").unwrap().actual, "true");
    }

    #[test]
    fn audit_rank_3() {
        let report = audit_torsion(3, AUDIT_CAP).unwrap();
        assert!(report.all_pass(), "{report:#?}");
        assert_eq!(report.get("Delta_in_SAut").unwrap().actual, "false");
        assert_eq!(report.get("|SW_n|").unwrap().actual, "24");
        assert!(report.get("<Delta>_normal_in_SW_n").is_none());
    }

    #[test]
    fn audit_rank_out_of_range() {
        assert_eq!(
            audit_torsion(2, AUDIT_CAP).unwrap_err(),
            AuditError::Rank(2)
        );
        assert_eq!(
            audit_torsion(7, AUDIT_CAP).unwrap_err(),
            AuditError::Rank(7)
        );
    }

    #[test]
    fn audit_cap_is_enforced() {
        assert!(matches!(
            audit_torsion(4, 100),
            Err(AuditError::Aut(AutError::CapExceeded { cap: 100 }))
        ));
    }
}
