//! Pure and mixed states of identical particles and numerical evaluation of
//! graph invariants by tensor contraction.

mod contract;
mod eval;
mod state;

pub use contract::{DEFAULT_CONTRACT_BUDGET, Tensor, contract_network, contract_pair, plan};
pub use eval::{
    EvalRecord, RANK_PROBE_THRESHOLD, density_rank, evaluate, evaluate_all, evaluate_mixed, evaluate_perm_tuple,
    evaluate_raw, product_check, purify, rank_probe, reference_value,
};
pub use state::{
    DensityTensor, Entry, LoadedState, StateFile, StateTensor, minimal_dims, random_state, random_unitary,
    reference_separable, symmetrize,
};
