//! The 13-action space over resource configurations.
//!
//! CPU reductions subtract absolute quarter-core steps; memory and disk
//! reductions subtract a quarter-fraction of one quarter of the current
//! capacity, i.e. they scale the capacity by `1 - q/16`. Applicability is
//! decided against the resource floor: an action is admitted only if the
//! configuration it produces stays at or above the floor.

use std::fmt;

use crate::error::ActionError;
use crate::sut::ResourceConfig;

/// Number of distinct actions.
pub const ACTION_COUNT: usize = 13;

/// One resource-reduction operation; `q` counts quarter steps in 1..=4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    NoAction,
    ReduceCpu(u8),
    ReduceMem(u8),
    ReduceDisk(u8),
}

impl Action {
    /// Every action in canonical order: NoAction, ReduceCpu 1-4,
    /// ReduceMem 1-4, ReduceDisk 1-4.
    pub const ALL: [Action; ACTION_COUNT] = [
        Action::NoAction,
        Action::ReduceCpu(1),
        Action::ReduceCpu(2),
        Action::ReduceCpu(3),
        Action::ReduceCpu(4),
        Action::ReduceMem(1),
        Action::ReduceMem(2),
        Action::ReduceMem(3),
        Action::ReduceMem(4),
        Action::ReduceDisk(1),
        Action::ReduceDisk(2),
        Action::ReduceDisk(3),
        Action::ReduceDisk(4),
    ];

    /// Position in canonical order.
    pub fn index(&self) -> usize {
        match *self {
            Action::NoAction => 0,
            Action::ReduceCpu(q) => q as usize,
            Action::ReduceMem(q) => 4 + q as usize,
            Action::ReduceDisk(q) => 8 + q as usize,
        }
    }

    pub fn from_index(index: usize) -> Option<Action> {
        Action::ALL.get(index).copied()
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Action::NoAction => write!(f, "no-action"),
            Action::ReduceCpu(q) => write!(f, "reduce-cpu-{q}/4"),
            Action::ReduceMem(q) => write!(f, "reduce-mem-{q}/4"),
            Action::ReduceDisk(q) => write!(f, "reduce-disk-{q}/4"),
        }
    }
}

/// Action semantics plus applicability filtering against a resource floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionSpace {
    floor: ResourceConfig,
}

impl ActionSpace {
    pub fn new(floor: ResourceConfig) -> Self {
        Self { floor }
    }

    pub fn floor(&self) -> &ResourceConfig {
        &self.floor
    }

    /// Raw arithmetic of an action, ignoring the floor.
    fn apply_unchecked(current: &ResourceConfig, action: Action) -> ResourceConfig {
        let mut next = *current;
        match action {
            Action::NoAction => {}
            Action::ReduceCpu(q) => next.cpu = current.cpu - f64::from(q) / 4.0,
            Action::ReduceMem(q) => next.mem = current.mem * (1.0 - f64::from(q) / 16.0),
            Action::ReduceDisk(q) => next.disk = current.disk * (1.0 - f64::from(q) / 16.0),
        }
        next
    }

    /// Every action whose application keeps the configuration at or above the
    /// floor, in canonical order. Always contains NoAction when `current`
    /// itself meets the floor.
    pub fn enumerate(&self, current: &ResourceConfig) -> Vec<Action> {
        Action::ALL
            .iter()
            .copied()
            .filter(|&a| Self::apply_unchecked(current, a).meets_floor(&self.floor))
            .collect()
    }

    /// Applies an action, rejecting any that would cross the floor.
    pub fn apply(
        &self,
        current: &ResourceConfig,
        action: Action,
    ) -> Result<ResourceConfig, ActionError> {
        let next = Self::apply_unchecked(current, action);
        if next.meets_floor(&self.floor) {
            Ok(next)
        } else {
            Err(ActionError::Inapplicable {
                action,
                current: *current,
                floor: self.floor,
            })
        }
    }
}

impl Default for ActionSpace {
    fn default() -> Self {
        Self::new(crate::sut::DEFAULT_RESOURCE_FLOOR)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn config(cpu: f64, mem: f64, disk: f64) -> ResourceConfig {
        ResourceConfig::new(cpu, mem, disk).unwrap()
    }

    #[test]
    fn canonical_order_and_index_round_trip() {
        assert_eq!(Action::ALL.len(), ACTION_COUNT);
        for (i, action) in Action::ALL.iter().enumerate() {
            assert_eq!(action.index(), i);
            assert_eq!(Action::from_index(i), Some(*action));
        }
        assert_eq!(Action::from_index(13), None);
    }

    #[test]
    fn ample_resources_admit_all_actions() {
        let space = ActionSpace::default();
        let actions = space.enumerate(&config(10.0, 50.0, 1000.0));
        assert_eq!(actions.len(), 13);
        assert_eq!(actions[0], Action::NoAction);
    }

    #[test]
    fn cpu_near_floor_filters_every_cpu_reduction() {
        let space = ActionSpace::default();
        let actions = space.enumerate(&config(0.3, 50.0, 1000.0));
        assert!(actions.iter().all(|a| !matches!(a, Action::ReduceCpu(_))));
        assert!(actions.contains(&Action::NoAction));
        assert_eq!(actions.len(), 9);
    }

    #[test]
    fn mem_near_floor_filters_only_large_steps() {
        // 0.33 * (1 - 1/4) = 0.2475 crosses the floor; 0.33 * (1 - 1/16) stays above.
        let space = ActionSpace::default();
        let actions = space.enumerate(&config(10.0, 0.33, 1000.0));
        assert!(!actions.contains(&Action::ReduceMem(4)));
        assert!(actions.contains(&Action::ReduceMem(1)));
    }

    #[test]
    fn apply_matches_hand_computed_amounts() {
        let space = ActionSpace::default();
        let start = config(4.0, 16.0, 100.0);
        assert_eq!(
            space.apply(&start, Action::ReduceCpu(4)).unwrap(),
            config(3.0, 16.0, 100.0)
        );
        assert_eq!(
            space.apply(&start, Action::ReduceMem(4)).unwrap(),
            config(4.0, 12.0, 100.0)
        );
        assert_eq!(
            space.apply(&start, Action::ReduceDisk(2)).unwrap(),
            config(4.0, 16.0, 87.5)
        );
        assert_eq!(space.apply(&start, Action::NoAction).unwrap(), start);
    }

    #[test]
    fn inapplicable_action_is_rejected() {
        let space = ActionSpace::default();
        let err = space.apply(&config(0.3, 50.0, 1000.0), Action::ReduceCpu(1));
        assert!(matches!(err, Err(ActionError::Inapplicable { .. })));
    }

    proptest! {
        #[test]
        fn enumerated_actions_never_cross_the_floor(
            cpu in 0.25f64..10.0,
            mem in 0.25f64..50.0,
            disk in 1.0f64..1000.0,
        ) {
            let space = ActionSpace::default();
            let current = config(cpu, mem, disk);
            let actions = space.enumerate(&current);
            prop_assert!(actions.contains(&Action::NoAction));
            prop_assert!(actions.len() <= ACTION_COUNT);
            for action in actions {
                let next = space.apply(&current, action).unwrap();
                prop_assert!(next.meets_floor(space.floor()));
            }
        }

        #[test]
        fn mem_reduction_is_an_exact_scale(
            mem in 0.5f64..50.0,
            q in 1u8..=4,
        ) {
            let space = ActionSpace::default();
            let current = config(10.0, mem, 1000.0);
            if let Ok(next) = space.apply(&current, Action::ReduceMem(q)) {
                prop_assert_eq!(next.mem, mem * (1.0 - f64::from(q) / 16.0));
                prop_assert!(next.mem > 0.0);
            }
        }
    }
}
