"""Computable graph-limit tools: exact densities, stability witnesses,
recursive blow-ups and the approximate Erdős–Hajnal decision for Forb(F)."""

from .aehp import AehpVerdict, decide_aehp, persistent_member
from .canon import CanonicalForm, canonical_form, enumerate_iso_classes, is_isomorphic
from .density import aut_order, count_embeddings, p_density, tind
from .graph import (
    BudgetExceeded,
    Graph,
    GraphError,
    complement,
    complete,
    cycle,
    empty,
    from_graph6,
    induced,
    path,
    to_graph6,
)
from .limits import (
    StepGraphon,
    c4_step_approx,
    half_graphon_step,
    permuton_agreement_density,
    phi_c4_anticlique,
    phi_c4_clique,
    rescale_subgraphon,
    root_decay,
    tind_graphon,
)
from .stability import find_half_graph, find_tree, max_half_graph_order, max_tree_height
from .structure import (
    C4Embedding,
    CographTree,
    clique_empty_halfgraph,
    embed_into_c4,
    is_in_CC,
    modular_decomposition,
    recursive_blowup,
    substitute,
    verify_embedding,
)

__version__ = "0.1.0"
