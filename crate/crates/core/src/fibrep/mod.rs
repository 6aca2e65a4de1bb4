//! Fibonacci representations: construction, verification, closed forms and
//! the surrounding structural checks.

mod binomial;
mod checks;
mod examples;
mod operator;
mod sum_identities;
mod transport;

pub use binomial::{
    binomial, binomial_plan, closed_form_iterate, recursion_iterates, BinomialPlan, BinomialTerm,
    Part,
};
pub use checks::{
    check_mn_equivalence, containment_check, injectivity_check, injectivity_sides,
    invariant_subspace_witness, norm_bound_check, norm_bound_check_with, range_check,
    shifted_representation, uniqueness_check, InvariantSubspace,
};
pub use examples::{
    companion_operator, e123e1_operator, e1e1_operator, e2e2_operator, example, half_f3_operator,
    literal_onb_pair, ExampleOutcome, EXAMPLE_NAMES,
};
pub use operator::{
    construct, construct_alternating, construct_half_f3, verify, ConstructOutcome, Extension,
    ExtensionPolicy, FibOperator, Inconsistency, Method,
};
pub use sum_identities::{
    check_alternating_identity, check_independence_from_sums, check_span_identity,
    check_sum_identities, check_sums_independent,
};
pub use transport::{transport, transport_adjoint, transport_gram, Transported};
