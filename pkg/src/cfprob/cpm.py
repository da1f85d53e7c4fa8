"""Probability-weighted possibility models and counterfactual revision.

Weights live on the possible worlds only and are never globally normalized:
every probability this module reports is a ratio of weight sums inside one
selected set of worlds, so rescaling all weights (or all weights within a
single rank) changes nothing observable.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .logic import Formula, Vocabulary, World, models_mask, _iter_bits
from .possibility import ModelInvariantError, PossibilityModel

DEFAULT_DEMOTION = 0.5


class UndefinedProbabilityError(ArithmeticError):
    """A probability query with no defined value."""


class ImpossibleConditionError(UndefinedProbabilityError):
    """Conditioning sentence has possibility degree 0."""


class ZeroProbabilityConditionError(UndefinedProbabilityError):
    """Bayes conditioning on a sentence of factual probability 0."""


class WorldDistribution:
    """Nonnegative weights on worlds with a positive total.

    Sentence-level queries divide by the total, so the induced function is a
    probability function regardless of the scale of the weights.
    """

    def __init__(
        self, vocab: Vocabulary, mass: Mapping[World, float] | Mapping[int, float]
    ):
        self.vocab = vocab
        self._mass: dict[int, float] = {}
        for key, value in mass.items():
            index = key.index if isinstance(key, World) else int(key)
            if value < 0:
                raise ModelInvariantError(f"negative mass {value!r}")
            if value > 0:
                self._mass[index] = self._mass.get(index, 0.0) + float(value)
        self._items = sorted(self._mass.items())
        self.total = sum(m for _, m in self._items)
        if self.total <= 0:
            raise ModelInvariantError("distribution has no mass")
        self.support_mask = 0
        for i in self._mass:
            self.support_mask |= 1 << i

    def mass(self, world: World | int) -> float:
        index = world.index if isinstance(world, World) else world
        return self._mass.get(index, 0.0)

    def mass_of_mask(self, mask: int) -> float:
        # ascending world index, so equal mask arguments sum identically
        mask &= self.support_mask
        total = 0.0
        table = self._mass
        while mask:
            low = mask & -mask
            total += table[low.bit_length() - 1]
            mask ^= low
        return total

    def prob(self, b: Formula) -> float:
        """Normalized probability of a sentence."""
        return self.mass_of_mask(models_mask(b, self.vocab)) / self.total

    def prob_of_mask(self, b_mask: int) -> float:
        return self.mass_of_mask(b_mask) / self.total

    def items(self) -> list[tuple[World, float]]:
        return [(World(self.vocab, i), m) for i, m in self._items]

    def normalized(self) -> "WorldDistribution":
        return WorldDistribution(
            self.vocab, {i: m / self.total for i, m in self._mass.items()}
        )

    def __repr__(self) -> str:
        return f"WorldDistribution({len(self._mass)} worlds, total={self.total!r})"


class CpmModel:
    """A possibility model plus strictly positive weights on its possible worlds."""

    def __init__(
        self,
        base: PossibilityModel,
        weights: Mapping[World, float] | Mapping[int, float],
    ):
        self.base = base
        self.vocab = base.vocab
        self._weight: dict[int, float] = {}
        for key, value in weights.items():
            index = key.index if isinstance(key, World) else int(key)
            if not base.w_mask >> index & 1:
                raise ModelInvariantError(
                    f"weight given for impossible world index {index}"
                )
            if index in self._weight:
                raise ModelInvariantError(f"duplicate weight for world index {index}")
            if not value > 0:
                raise ModelInvariantError(f"weight must be positive, got {value!r}")
            self._weight[index] = float(value)
        missing = base.w_mask & ~_mask_of_indices(self._weight)
        if missing:
            raise ModelInvariantError(
                f"missing weights for possible world indices {list(_iter_bits(missing))}"
            )
        # per-rank weight tables, in world-index order
        self._rank_entries: list[list[tuple[int, float]]] = []
        self._rank_totals: list[float] = []
        for rank_mask in base.rank_masks:
            entries = [(i, self._weight[i]) for i in _iter_bits(rank_mask)]
            self._rank_entries.append(entries)
            self._rank_totals.append(sum(w for _, w in entries))

    def weight(self, world: World | int) -> float:
        index = world.index if isinstance(world, World) else world
        return self._weight.get(index, 0.0)

    def weight_items(self) -> list[tuple[World, float]]:
        return [(World(self.vocab, i), self._weight[i]) for i in sorted(self._weight)]

    # -- mask-level core -----------------------------------------------------

    def _select_rank(self, a_mask: int) -> int | None:
        """Index of the most possible rank meeting A, or None if A is impossible."""
        for r, rank_mask in enumerate(self.base.rank_masks):
            if rank_mask & a_mask:
                return r
        return None

    def cf_prob_mask(self, b_mask: int, a_mask: int) -> float:
        r = self._select_rank(a_mask)
        if r is None:
            raise ImpossibleConditionError(
                "condition has possibility 0; counterfactual probability undefined"
            )
        rank_mask = self.base.rank_masks[r]
        pl_mask = rank_mask & a_mask
        hit = pl_mask & b_mask
        num = 0.0
        if pl_mask == rank_mask:
            den = self._rank_totals[r]
        else:
            den = 0.0
            for i, w in self._rank_entries[r]:
                if pl_mask >> i & 1:
                    den += w
        for i, w in self._rank_entries[r]:
            if hit >> i & 1:
                num += w
        return num / den

    def revise_mask(self, a_mask: int) -> WorldDistribution:
        r = self._select_rank(a_mask)
        if r is None:
            raise ImpossibleConditionError(
                "condition has possibility 0; revision undefined"
            )
        pl_mask = self.base.rank_masks[r] & a_mask
        return WorldDistribution(
            self.vocab,
            {i: w for i, w in self._rank_entries[r] if pl_mask >> i & 1},
        )

    # -- public queries --------------------------------------------------------

    def counterfactual_prob(self, b: Formula, a: Formula) -> float:
        """Relative weight of B-worlds among the most possible A-worlds.

        Defined whenever A has positive possibility, even if its factual
        probability is 0; raises ImpossibleConditionError otherwise.
        """
        return self.cf_prob_mask(
            models_mask(b, self.vocab), models_mask(a, self.vocab)
        )

    def factual_prob(self, a: Formula) -> float:
        """Degree of belief in A: relative weight of A-worlds at the top rank."""
        return self.cf_prob_mask(models_mask(a, self.vocab), self.vocab.full_mask)

    def conditional_prob(self, b: Formula, a: Formula) -> float:
        """Bayes conditioning: P(A and B) / P(A), for P(A) > 0."""
        pa = self.factual_prob(a)
        if pa <= 0.0:
            raise ZeroProbabilityConditionError(
                "condition has factual probability 0; conditioning undefined"
            )
        a_mask = models_mask(a, self.vocab)
        b_mask = models_mask(b, self.vocab)
        return self.cf_prob_mask(a_mask & b_mask, self.vocab.full_mask) / pa

    def revise(self, a: Formula) -> WorldDistribution:
        """The revised factual distribution: weights restricted to Pl(A).

        Sentence queries on the result give the counterfactual probability of
        the sentence given A.
        """
        return self.revise_mask(models_mask(a, self.vocab))

    def factual_distribution(self) -> WorldDistribution:
        """Weights on the top rank (revision by the tautology)."""
        return self.revise_mask(self.vocab.full_mask)

    def natural_revision(
        self, a: Formula, demotion: float = DEFAULT_DEMOTION
    ) -> "CpmModel":
        """Promote Pl(A) to the top rank, keeping all else in relative order.

        Every world outside Pl(A) has its degree scaled by the demotion
        factor, which preserves the strict possibility ordering among those
        worlds while leaving Pl(A) strictly most possible.  Weights are
        unchanged, so the new factual probabilities agree with revise(A).
        """
        if not 0.0 < demotion < 1.0:
            raise ValueError(f"demotion factor must be in (0, 1), got {demotion!r}")
        a_mask = models_mask(a, self.vocab)
        r = self._select_rank(a_mask)
        if r is None:
            raise ImpossibleConditionError(
                "condition has possibility 0; natural revision undefined"
            )
        pl_mask = self.base.rank_masks[r] & a_mask
        new_pi = {
            i: 1.0 if pl_mask >> i & 1 else demotion * v
            for i, v in self.base._pi.items()
        }
        return CpmModel(PossibilityModel(self.vocab, new_pi), dict(self._weight))

    def __repr__(self) -> str:
        return f"CpmModel({self.base!r})"


def _mask_of_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def cpm_model(
    vocab: Vocabulary, worlds: Mapping[str, tuple[float, float]]
) -> CpmModel:
    """Build a model from signed-literal patterns mapped to (degree, weight)."""
    from .logic import world_from_literals

    pi: dict[int, float] = {}
    weights: dict[int, float] = {}
    for pattern, (degree, weight) in worlds.items():
        w = world_from_literals(pattern, vocab)
        pi[w.index] = degree
        if degree > 0:
            weights[w.index] = weight
    return CpmModel(PossibilityModel(vocab, pi), weights)
