"""Two reductions of counterfactual revision to ordinary conditioning.

Both start from the same weighted model but take independent routes to the
revised probability: one conditions a per-rank probability function, the
other conditions a single function on the conjunction of the update with the
rank's characterizing sentence.  Together with the direct definition they
give a three-way cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cpm import CpmModel, ImpossibleConditionError, WorldDistribution
from .logic import Formula, Vocabulary, _iter_bits, dnf_of_mask, models_mask
from .possibility import ModelInvariantError


@dataclass(frozen=True)
class SequenceEntry:
    rank: float
    dist: WorldDistribution


class AdmissibleSequence:
    """One probability function per possibility rank, supports disjoint."""

    def __init__(self, vocab: Vocabulary, entries: list[SequenceEntry]):
        self.vocab = vocab
        self.entries = list(entries)
        if sorted((e.rank for e in self.entries), reverse=True) != [
            e.rank for e in self.entries
        ]:
            raise ModelInvariantError("sequence entries must be ordered by rank")
        seen = 0
        for entry in self.entries:
            if entry.dist.support_mask & seen:
                raise ModelInvariantError(
                    "sequence supports overlap; not admissible"
                )
            seen |= entry.dist.support_mask

    @classmethod
    def from_model(cls, model: CpmModel) -> "AdmissibleSequence":
        entries = [
            SequenceEntry(
                rank=value,
                dist=WorldDistribution(
                    model.vocab, {i: model.weight(i) for i in _iter_bits(mask)}
                ),
            )
            for value, mask in zip(model.base.rank_values, model.base.rank_masks)
        ]
        return cls(model.vocab, entries)

    def select_entry(self, a_mask: int) -> SequenceEntry | None:
        """The most possible function giving the condition positive mass."""
        for entry in self.entries:
            if entry.dist.support_mask & a_mask:
                return entry
        return None

    def most_possible_function(self, a: Formula) -> float | None:
        """Rank of the first entry giving A positive mass; None if no entry does."""
        entry = self.select_entry(models_mask(a, self.vocab))
        return None if entry is None else entry.rank

    def revise(self, a: Formula, b: Formula) -> float:
        """Condition the most possible function for A on A, then query B."""
        a_mask = models_mask(a, self.vocab)
        entry = self.select_entry(a_mask)
        if entry is None:
            raise ImpossibleConditionError(
                "no function in the sequence gives the condition positive mass"
            )
        hit = entry.dist.support_mask & a_mask
        num = entry.dist.mass_of_mask(hit & models_mask(b, self.vocab))
        return num / entry.dist.mass_of_mask(hit)


def build_sequence(model: CpmModel) -> AdmissibleSequence:
    return AdmissibleSequence.from_model(model)


@dataclass(frozen=True)
class FamilyEntry:
    rank: float
    alpha: Formula


class CharacterizingFamily:
    """Per-rank characterizing sentences over a single weight function.

    The single function has no epistemic reading of its own (it gives full
    beliefs probability below 1); conditioning on the right characterizing
    sentence is what recovers the revised probabilities.
    """

    def __init__(
        self,
        vocab: Vocabulary,
        entries: list[FamilyEntry],
        single_dist: WorldDistribution,
    ):
        self.vocab = vocab
        self.entries = list(entries)
        self.single_dist = single_dist
        self._alpha_masks = tuple(
            models_mask(entry.alpha, vocab) for entry in self.entries
        )
        seen = 0
        for mask in self._alpha_masks:
            if mask & seen:
                raise ModelInvariantError("characterizing sentences overlap")
            seen |= mask

    @classmethod
    def from_model(cls, model: CpmModel) -> "CharacterizingFamily":
        entries = [
            FamilyEntry(rank=value, alpha=dnf_of_mask(mask, model.vocab))
            for value, mask in zip(model.base.rank_values, model.base.rank_masks)
        ]
        single = WorldDistribution(
            model.vocab, {w: wt for w, wt in model.weight_items()}
        )
        return cls(model.vocab, entries, single)

    def alpha_mask(self, rank_index: int) -> int:
        return self._alpha_masks[rank_index]

    def condition_mask(self, a_mask: int) -> int | None:
        """Model set of (A and most-possible characterizing sentence), or None."""
        for mask in self._alpha_masks:
            if mask & a_mask:
                return mask & a_mask
        return None

    def alpha_for(self, a: Formula) -> Formula | None:
        """Most possible characterizing sentence consistent with A, or None."""
        a_mask = models_mask(a, self.vocab)
        for entry, mask in zip(self.entries, self._alpha_masks):
            if mask & a_mask:
                return entry.alpha
        return None

    def revise(self, a: Formula, b: Formula) -> float:
        """Condition the single function on A and its characterizing sentence."""
        cond = self.condition_mask(models_mask(a, self.vocab))
        if cond is None:
            raise ImpossibleConditionError(
                "every characterizing sentence contradicts the condition"
            )
        num = self.single_dist.mass_of_mask(cond & models_mask(b, self.vocab))
        return num / self.single_dist.mass_of_mask(cond)


def build_family(model: CpmModel) -> CharacterizingFamily:
    return CharacterizingFamily.from_model(model)
