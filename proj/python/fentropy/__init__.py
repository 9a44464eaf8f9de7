"""k-body reduced density matrices and entropies of fermionic pure states.

Thin re-export of the compiled core. States live in the wedge basis of
N-particle antisymmetric space over d modes; see the project README for the
conventions (lexicographic subset ranks, 0-based modes).
"""

from ._core import (
    WedgeState,
    apply_one_body_unitary,
    binomial,
    embed_full,
    entropy_gradient,
    entropy_profile,
    minimize_entropy,
    random_state,
    rdm,
    read_state_file,
    relative_entropy,
    run_suite,
    slater,
    slater_proximity,
    subset_rank,
    subset_unrank,
    support_dimension,
    von_neumann,
    write_state_file,
)

__all__ = [
    "WedgeState",
    "apply_one_body_unitary",
    "binomial",
    "embed_full",
    "entropy_gradient",
    "entropy_profile",
    "minimize_entropy",
    "random_state",
    "rdm",
    "read_state_file",
    "relative_entropy",
    "run_suite",
    "slater",
    "slater_proximity",
    "subset_rank",
    "subset_unrank",
    "support_dimension",
    "von_neumann",
    "write_state_file",
]

__version__ = "0.1.0"
