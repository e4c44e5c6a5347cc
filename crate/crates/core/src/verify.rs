//! End-to-end reduction verification: generate an instance, run the
//! independent oracle and the matcher, and compare verdicts. A record never
//! claims agreement when either side was cut off by a cap.

use std::fmt;
use std::time::{Duration, Instant};

use crate::debruijn::validate_de_bruijn;
use crate::matcher::{
    check_witness, min_graph_substitutions_capped, pattern_substitution_cost, MatchError,
};
use crate::oracle::{hamiltonian_oracle, ov_oracle, OracleError};
use crate::reduce::ham::{
    build_npc_instance, build_npc_instance_direct, check_npc_structure, HamInstance,
};
use crate::reduce::ov::{build_seth_instance, OvInstance};
use crate::reduce::ReduceError;

#[derive(Clone, Debug)]
pub struct VerificationRecord {
    pub descriptor: String,
    /// None when the oracle hit its cap.
    pub oracle_verdict: Option<bool>,
    /// None when the matcher hit its expansion cap.
    pub matcher_verdict: Option<bool>,
    pub validator_violations: usize,
    pub structure_violations: usize,
    pub witness_ok: bool,
    pub oracle_time: Duration,
    pub matcher_time: Duration,
}

impl VerificationRecord {
    /// Agreement is only defined when both sides answered.
    pub fn agreement(&self) -> Option<bool> {
        match (self.oracle_verdict, self.matcher_verdict) {
            (Some(o), Some(m)) => Some(o == m),
            _ => None,
        }
    }

    pub fn indeterminate(&self) -> bool {
        self.oracle_verdict.is_none() || self.matcher_verdict.is_none()
    }

    pub fn passed(&self) -> bool {
        self.agreement() == Some(true)
            && self.validator_violations == 0
            && self.structure_violations == 0
            && self.witness_ok
    }
}

impl fmt::Display for VerificationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: Option<bool>| match v {
            Some(true) => "yes",
            Some(false) => "no",
            None => "indeterminate",
        };
        write!(
            f,
            "instance={} oracle={} matcher={} agree={} validator_violations={} structure_violations={} witness_ok={} oracle_ms={} matcher_ms={}",
            self.descriptor,
            show(self.oracle_verdict),
            show(self.matcher_verdict),
            match self.agreement() {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "indeterminate",
            },
            self.validator_violations,
            self.structure_violations,
            self.witness_ok,
            self.oracle_time.as_millis(),
            self.matcher_time.as_millis(),
        )
    }
}

/// Full pipeline for a Hamiltonian-cycle input: build the bundle (with or
/// without the 2-cycle gadget), validate the graph, check the structural
/// facts, then compare the Hamiltonicity oracle against the budgeted
/// graph-substitution matcher.
pub fn verify_npc(
    g: &HamInstance,
    skip_gadget: bool,
    ham_cap: usize,
    expansion_cap: u64,
) -> Result<VerificationRecord, ReduceError> {
    let bundle = if skip_gadget {
        build_npc_instance_direct(g)?
    } else {
        build_npc_instance(g)?
    };
    let validator_violations = validate_de_bruijn(&bundle.graph).violations.len();
    let structure_violations = check_npc_structure(&bundle).violations.len();

    let t0 = Instant::now();
    let oracle_verdict = match hamiltonian_oracle(&bundle.source, ham_cap) {
        Ok((yes, _)) => Some(yes),
        Err(OracleError::CapExceeded { .. }) => None,
        Err(OracleError::Match(e)) => return Err(ReduceError::Match(e)),
    };
    let oracle_time = t0.elapsed();

    let t1 = Instant::now();
    let mut witness_ok = true;
    let matcher_verdict = match min_graph_substitutions_capped(
        bundle.graph.base(),
        &bundle.pattern,
        bundle.delta,
        expansion_cap,
    ) {
        Ok(result) => {
            if result.feasible {
                witness_ok = check_witness(bundle.graph.base(), &bundle.pattern, &result).is_ok();
            }
            Some(result.feasible)
        }
        Err(MatchError::Indeterminate { .. }) => None,
        Err(e) => return Err(ReduceError::Match(e)),
    };
    let matcher_time = t1.elapsed();

    Ok(VerificationRecord {
        descriptor: format!(
            "npc n={} edges={} delta={}",
            bundle.params.n,
            bundle.source.graph().edge_count(),
            bundle.delta
        ),
        oracle_verdict,
        matcher_verdict,
        validator_violations,
        structure_violations,
        witness_ok,
        oracle_time,
        matcher_time,
    })
}

/// Full pipeline for an OV input: build the bundle, validate the graph, and
/// compare the quadratic-scan oracle against `DP cost <= delta`.
pub fn verify_seth(ov: &OvInstance) -> Result<VerificationRecord, ReduceError> {
    let bundle = build_seth_instance(ov)?;
    let validator_violations = validate_de_bruijn(&bundle.graph).violations.len();

    let t0 = Instant::now();
    let (oracle_yes, _) = ov_oracle(ov);
    let oracle_time = t0.elapsed();

    let t1 = Instant::now();
    let cost = pattern_substitution_cost(bundle.graph.base(), &bundle.pattern)?;
    let matcher_verdict = Some(cost.value().is_some_and(|c| c <= bundle.delta));
    let matcher_time = t1.elapsed();

    Ok(VerificationRecord {
        descriptor: format!(
            "seth N={} d={} delta={} cost={}",
            bundle.params.n, bundle.params.d, bundle.delta, cost
        ),
        oracle_verdict: Some(oracle_yes),
        matcher_verdict,
        validator_violations,
        structure_violations: 0,
        witness_ok: true,
        oracle_time,
        matcher_time,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn npc_pipeline_on_triangle() {
        let g = HamInstance::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let record = verify_npc(&g, true, 12, 100_000_000).unwrap();
        assert_eq!(record.oracle_verdict, Some(true));
        assert_eq!(record.matcher_verdict, Some(true));
        assert!(record.passed(), "{record}");
    }

    #[test]
    fn seth_pipeline_on_orthogonal_and_non_orthogonal() {
        let yes =
            OvInstance::new(vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]).unwrap();
        let record = verify_seth(&yes).unwrap();
        assert_eq!(record.oracle_verdict, Some(true));
        assert!(record.passed(), "{record}");

        let no =
            OvInstance::new(vec![vec![1, 1], vec![1, 1]], vec![vec![1, 1], vec![1, 1]]).unwrap();
        let record = verify_seth(&no).unwrap();
        assert_eq!(record.oracle_verdict, Some(false));
        assert_eq!(record.matcher_verdict, Some(false));
        assert!(record.passed(), "{record}");
    }

    #[test]
    fn indeterminate_never_agrees() {
        let g = HamInstance::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let record = verify_npc(&g, true, 12, 10).unwrap();
        assert_eq!(record.matcher_verdict, None);
        assert_eq!(record.agreement(), None);
        assert!(!record.passed());
    }
}
