use super::{db_to_transmission, Component, ComponentKind, LossTarget};

/// Uniform insertion-loss budget along the photon path.
#[derive(Clone, Debug, PartialEq)]
pub struct LossBudget {
    /// (index in the netlist, dB) for every component counted.
    pub per_component: Vec<(usize, f64)>,
    pub total_db: f64,
    pub transmission: f64,
}

/// Sums insertion losses along the path.
///
/// Rail-specific `Loss` components are not uniform over rails and so are
/// excluded; the simulator applies them to the amplitudes instead.
pub fn loss_budget(netlist: &[Component]) -> LossBudget {
    let per_component: Vec<(usize, f64)> = netlist
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            !matches!(
                c.kind,
                ComponentKind::Loss {
                    target: LossTarget::Rail(_)
                }
            )
        })
        .map(|(i, c)| (i, c.insertion_loss_db))
        .collect();
    let total_db = per_component.iter().map(|(_, db)| db).sum();
    LossBudget {
        per_component,
        total_db,
        transmission: db_to_transmission(total_db),
    }
}
