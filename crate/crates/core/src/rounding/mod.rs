//! Primal rounding: greedy additive edge contraction refined by
//! Kernighan–Lin with joins, on both original and reparameterized costs.

mod gaec;
mod klj;

pub use self::gaec::{gaec, gaec_from};
pub use self::klj::{klj, MAX_OUTER_PASSES};

use crate::factors::FactorGraph;
use crate::instance::{EdgeLabeling, MulticutInstance, Partition};
use crate::message_passing::edge_receive_sweep;

/// `klj(gaec(instance))`.
pub fn local_search(instance: &MulticutInstance) -> Partition {
    klj(instance, &gaec(instance))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rounding {
    /// Labeling of the original instance; always a multicut.
    pub labeling: EdgeLabeling,
    /// Its cost under the original edge costs.
    pub cost: f64,
    /// Whether the reparameterized run produced the returned labeling.
    pub from_reparameterized: bool,
}

/// Runs the local search twice, on the input costs and on the current
/// reparameterized edge costs, and keeps the cheaper result under the input
/// costs. The reparameterized result then warm-starts `gaec_from` and `klj`
/// on the input costs, since edges the dual leaves at exactly zero are never
/// contracted on their own.
/// Triangle preferences are pulled onto the edges beforehand, which is a
/// valid message-passing step and changes `state` accordingly.
pub fn round_solution(state: &mut FactorGraph) -> Rounding {
    edge_receive_sweep(state);
    let original = state.original();
    let plain = local_search(original);
    let reparameterized = state
        .graph()
        .with_costs(state.edge_costs())
        .expect("one cost per edge");
    let guided = klj(
        original,
        &gaec_from(original, &local_search(&reparameterized)),
    );

    let evaluate = |p: &Partition| {
        let labeling = original
            .partition_to_labeling(p)
            .expect("partition covers all nodes");
        let cost = original.labeling_cost(&labeling).expect("labeling matches");
        (labeling, cost)
    };
    let (plain_labeling, plain_cost) = evaluate(&plain);
    let (guided_labeling, guided_cost) = evaluate(&guided);
    if guided_cost < plain_cost {
        Rounding {
            labeling: guided_labeling,
            cost: guided_cost,
            from_reparameterized: true,
        }
    } else {
        Rounding {
            labeling: plain_labeling,
            cost: plain_cost,
            from_reparameterized: false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_before_message_passing() {
        let inst = MulticutInstance::from_edges(
            5,
            [
                (0, 1, 1.0),
                (1, 2, -1.5),
                (2, 3, 0.5),
                (3, 4, -0.2),
                (0, 4, 0.7),
                (1, 3, 0.3),
            ],
        )
        .unwrap();
        let mut fg = FactorGraph::new(inst.clone());
        let r = round_solution(&mut fg);
        assert!(!r.from_reparameterized);
        let direct = local_search(&inst);
        assert_eq!(r.cost, inst.partition_cost(&direct));
        assert_eq!(r.cost, inst.labeling_cost(&r.labeling).unwrap());
        assert!(inst.is_multicut(&r.labeling).unwrap());
    }
}
