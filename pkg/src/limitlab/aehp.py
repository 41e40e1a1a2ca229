"""Approximate Erdős–Hajnal property for graph theories given by forbidden induced subgraphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graph import Graph, to_graph6, to_json_obj
from .structure import C4Embedding, CographTree, embed_into_c4, is_in_CC


@dataclass
class AehpVerdict:
    holds: bool
    witness: Graph | None = None
    witness_index: int | None = None
    tree: CographTree | None = None
    embedding: C4Embedding | None = None

    @property
    def ehp_corollary(self) -> bool:
        # AEHP implies EHP; the implication is not constructive
        return self.holds

    def to_json(self) -> dict:
        obj = {"holds": self.holds, "ehp_corollary": self.ehp_corollary}
        if self.witness is not None:
            obj["witness"] = {
                "index": self.witness_index,
                "graph6": to_graph6(self.witness),
                "graph": to_json_obj(self.witness),
                "tree": self.tree.to_json(),
                "embedding": self.embedding.to_json(),
            }
        return obj


def persistent_member(G: Graph) -> bool:
    """Positive density in every limit without trivial sub-objects, i.e. membership in 𝒞_C."""
    return is_in_CC(G)[0]


def decide_aehp(forbidden: Iterable[Graph]) -> AehpVerdict:
    """The theory Forb(forbidden) has AEHP iff some forbidden graph embeds in a recursive C4 blow-up.

    The witness is the first such graph in input order.
    """
    for i, F in enumerate(forbidden):
        member, tree = is_in_CC(F)
        if member:
            return AehpVerdict(True, F, i, tree, embed_into_c4(F))
    return AehpVerdict(False)
