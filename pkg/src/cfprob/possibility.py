"""Possibility models: ranked worlds, belief sets, and the induced revision.

A model assigns each world a possibility degree in [0, 1].  Degree 1 marks
the epistemically possible worlds (the belief state), degree 0 the impossible
ones.  Worlds with equal degree form a rank; degrees are compared by exact
float equality, so two worlds share a rank only if their parsed values are
identical.
"""

from __future__ import annotations

import enum
from typing import Mapping

from .logic import (
    Formula,
    Not,
    Vocabulary,
    World,
    models_mask,
)


class ModelInvariantError(ValueError):
    """A model violates a structural invariant."""


class EpistemicStatus(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    INDETERMINATE = "indeterminate"

    def __str__(self) -> str:
        return self.value


def _normalize_pi(
    vocab: Vocabulary, pi: Mapping[World, float] | Mapping[int, float]
) -> dict[int, float]:
    out: dict[int, float] = {}
    for key, value in pi.items():
        index = key.index if isinstance(key, World) else int(key)
        if isinstance(key, World) and key.vocab != vocab:
            raise ModelInvariantError("world belongs to a different vocabulary")
        if not 0 <= index < vocab.world_count:
            raise ModelInvariantError(f"world index {index} out of range")
        if index in out:
            raise ModelInvariantError(f"duplicate entry for world index {index}")
        if not 0.0 <= value <= 1.0:
            raise ModelInvariantError(
                f"possibility degree {value!r} outside [0, 1]"
            )
        out[index] = float(value)
    return out


class PossibilityModel:
    """Worlds with possibility degrees; unlisted worlds are impossible.

    Requires a nonempty set of possible worlds and at least one world at
    degree 1, so the induced belief set is consistent.
    """

    def __init__(
        self, vocab: Vocabulary, pi: Mapping[World, float] | Mapping[int, float]
    ):
        self.vocab = vocab
        entries = _normalize_pi(vocab, pi)
        self._pi = {i: v for i, v in entries.items() if v > 0.0}
        if not self._pi:
            raise ModelInvariantError("no possible world (every degree is 0)")
        if not any(v == 1.0 for v in self._pi.values()):
            raise ModelInvariantError("no world with possibility degree 1")
        self.w_mask = 0
        for i in self._pi:
            self.w_mask |= 1 << i
        # ranks: distinct positive degrees, most possible first
        self.rank_values: tuple[float, ...] = tuple(
            sorted(set(self._pi.values()), reverse=True)
        )
        rank_index = {v: r for r, v in enumerate(self.rank_values)}
        masks = [0] * len(self.rank_values)
        for i, v in self._pi.items():
            masks[rank_index[v]] |= 1 << i
        self.rank_masks: tuple[int, ...] = tuple(masks)
        self.top_mask = self.rank_masks[0]

    @property
    def complete(self) -> bool:
        """True when every world is possible (V = W)."""
        return self.w_mask == self.vocab.full_mask

    def pi(self, world: World | int) -> float:
        index = world.index if isinstance(world, World) else world
        return self._pi.get(index, 0.0)

    def possible_worlds(self) -> frozenset[World]:
        return self.vocab.worlds_of_mask(self.w_mask)

    def pi_items(self) -> list[tuple[World, float]]:
        """(world, degree) pairs for possible worlds, ordered by index."""
        return [
            (World(self.vocab, i), self._pi[i]) for i in sorted(self._pi)
        ]

    # -- mask-level core ---------------------------------------------------

    def pl_split(self, a_mask: int) -> tuple[int, float]:
        """(most-possible A-worlds, their degree) for an A given as a mask.

        Falls through to the impossible (degree-0) A-worlds when no possible
        world satisfies A; returns (0, 0.0) when A is unsatisfiable.
        """
        for value, rank_mask in zip(self.rank_values, self.rank_masks):
            hit = rank_mask & a_mask
            if hit:
                return hit, value
        return a_mask & ~self.w_mask & self.vocab.full_mask, 0.0

    def pl_mask(self, a_mask: int) -> int:
        return self.pl_split(a_mask)[0]

    def pi_of_mask(self, a_mask: int) -> float:
        return self.pl_split(a_mask)[1]

    # -- public queries ------------------------------------------------------

    def belief_worlds(self) -> frozenset[World]:
        """The epistemically possible worlds (degree exactly 1)."""
        return self.vocab.worlds_of_mask(self.top_mask)

    def believes(self, a: Formula) -> bool:
        return self.top_mask & ~models_mask(a, self.vocab) == 0

    def pl(self, a: Formula) -> frozenset[World]:
        """The most possible A-worlds; empty only when A is unsatisfiable."""
        return self.vocab.worlds_of_mask(self.pl_mask(models_mask(a, self.vocab)))

    def pi_measure(self, a: Formula) -> float:
        """Degree of possibility: max degree over the A-worlds (0 if none)."""
        return self.pi_of_mask(models_mask(a, self.vocab))

    def necessity(self, a: Formula) -> float:
        """Degree of entrenchment: 1 - possibility of the negation."""
        return 1.0 - self.pi_measure(Not(a))

    def conditional(self, a: Formula, b: Formula) -> bool:
        """True iff B holds at every most-possible A-world.

        Vacuously true when A has possibility 0: a conditional consults only
        possible worlds, so an impossible antecedent supports everything.
        """
        pl, value = self.pl_split(models_mask(a, self.vocab))
        if value == 0.0:
            return True
        return pl & ~models_mask(b, self.vocab) == 0

    def revised_belief_worlds(self, a: Formula) -> frozenset[World]:
        """Worlds characterizing the belief set after revision by A.

        When A has possibility 0 but is satisfiable, this is the set of
        impossible A-worlds (a below-W revision); callers that need a
        probabilistic reading must treat that case as undefined.
        """
        return self.pl(a)

    def status(self, a: Formula) -> EpistemicStatus:
        a_mask = models_mask(a, self.vocab)
        if self.top_mask & ~a_mask == 0:
            return EpistemicStatus.ACCEPTED
        if self.top_mask & a_mask == 0:
            return EpistemicStatus.REJECTED
        return EpistemicStatus.INDETERMINATE

    def __repr__(self) -> str:
        return (
            f"PossibilityModel({self.vocab!r}, {len(self._pi)} possible worlds, "
            f"{len(self.rank_values)} ranks)"
        )


def possibility_model(
    vocab: Vocabulary, pi: Mapping[str, float]
) -> PossibilityModel:
    """Build a model from signed-literal world patterns, e.g. {'~A B': 1.0}."""
    from .logic import world_from_literals

    return PossibilityModel(
        vocab,
        {world_from_literals(pattern, vocab): v for pattern, v in pi.items()},
    )
