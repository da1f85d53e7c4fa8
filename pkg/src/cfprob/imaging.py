"""Generalized imaging: selection functions and mass transport.

Imaging an update ships each world's probability mass to the worlds its
selection function picks, split in proportion to the model's weight
function.  With the built-in selection policies this reproduces the model's
own revision operation, which is what verify_revision_equivalence checks.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .cpm import CpmModel, ImpossibleConditionError, WorldDistribution
from .logic import Formula, World, _iter_bits, models_mask, print_formula
from .possibility import ModelInvariantError

DEFAULT_TOLERANCE = 1e-9


class SelectionError(ValueError):
    pass


class EmptySelectionError(SelectionError):
    """No world can be selected for the condition."""


class ZeroShareDenominatorError(SelectionError):
    """A selected set carries zero total weight, so shares are undefined."""


class SelectionKind(enum.Enum):
    PL_UNIFORM = "pl_uniform"
    CENTERED = "centered"
    EXPLICIT = "explicit"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class SelectionPolicy:
    """How each source world chooses its set of condition-worlds.

    Explicit tables are keyed by (source world index, canonical formula
    print); two spellings of the same condition are distinct keys.
    """

    kind: SelectionKind
    table: Mapping[tuple[int, str], int] = field(default_factory=dict)

    @classmethod
    def pl_uniform(cls) -> "SelectionPolicy":
        return cls(SelectionKind.PL_UNIFORM)

    @classmethod
    def centered(cls) -> "SelectionPolicy":
        return cls(SelectionKind.CENTERED)

    @classmethod
    def explicit(cls, table: Mapping[tuple[int, str], int]) -> "SelectionPolicy":
        return cls(SelectionKind.EXPLICIT, dict(table))


def select_mask(
    policy: SelectionPolicy, model: CpmModel, v_index: int, a: Formula
) -> int:
    a_mask = models_mask(a, model.vocab)
    if a_mask == 0:
        raise EmptySelectionError("condition is unsatisfiable")
    if policy.kind is SelectionKind.PL_UNIFORM:
        return model.base.pl_mask(a_mask)
    if policy.kind is SelectionKind.CENTERED:
        if a_mask >> v_index & 1:
            return 1 << v_index
        return model.base.pl_mask(a_mask)
    key = (v_index, print_formula(a))
    try:
        selected = policy.table[key]
    except KeyError:
        raise EmptySelectionError(
            f"no table entry for world index {v_index} and condition {key[1]!r}"
        ) from None
    if selected == 0:
        raise EmptySelectionError(
            f"table entry for world index {v_index} is empty"
        )
    if selected & ~a_mask:
        raise ModelInvariantError(
            "explicit selection contains worlds outside the condition"
        )
    return selected


def select(
    policy: SelectionPolicy, model: CpmModel, v: World, a: Formula
) -> frozenset[World]:
    """The worlds that source world v ships mass to when imaging by a."""
    return model.vocab.worlds_of_mask(select_mask(policy, model, v.index, a))


def image(
    dist: WorldDistribution,
    policy: SelectionPolicy,
    model: CpmModel,
    a: Formula,
) -> WorldDistribution:
    """Ship every source world's mass to its selected worlds.

    Each recipient takes a share proportional to its weight in the model.
    Total mass is conserved and the result is supported on the condition's
    worlds.
    """
    out: dict[int, float] = {}
    for world, mass in dist.items():
        selected = select_mask(policy, model, world.index, a)
        den = 0.0
        for j in _iter_bits(selected):
            den += model.weight(j)
        if den == 0.0:
            raise ZeroShareDenominatorError(
                f"selection for world index {world.index} has zero total weight"
            )
        for j in _iter_bits(selected):
            out[j] = out.get(j, 0.0) + mass * (model.weight(j) / den)
    return WorldDistribution(model.vocab, out)


@dataclass
class ImagingReport:
    condition: str
    policy: str
    max_deviation: float
    mass_in: float
    mass_out: float
    passed: bool
    deviations: list[tuple[str, float, float]]  # (world, imaged, revised)

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "policy": self.policy,
            "max_deviation": self.max_deviation,
            "mass_in": self.mass_in,
            "mass_out": self.mass_out,
            "passed": self.passed,
            "worlds": [
                {"world": w, "imaged": a, "revised": b}
                for w, a, b in self.deviations
            ],
        }


def load_policy_table(text: str, vocab) -> SelectionPolicy:
    """Parse an explicit selection table.

    One rule per line ('#' starts a comment):

        select <world-literals> | <formula> -> <world-literals>[, <world-literals>]*

    The formula is parsed and re-printed, so any spelling of the same
    canonical form addresses the same table entry.
    """
    from .logic import parse_formula, world_from_literals

    table: dict[tuple[int, str], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.startswith("select"):
            raise SelectionError(f"line {lineno}: expected a select rule")
        body = line[len("select"):].strip()
        source_part, sep, rest = body.partition("|")
        if not sep:
            raise SelectionError(f"line {lineno}: missing '|' separator")
        # the formula may itself contain '->'; targets cannot, so split last
        formula_part, arrow, targets_part = rest.rpartition("->")
        if not arrow:
            raise SelectionError(f"line {lineno}: missing '->' separator")
        source = world_from_literals(source_part.strip(), vocab)
        formula = parse_formula(formula_part.strip(), vocab)
        mask = 0
        for chunk in targets_part.split(","):
            mask |= 1 << world_from_literals(chunk.strip(), vocab).index
        key = (source.index, print_formula(formula))
        if key in table:
            raise SelectionError(f"line {lineno}: duplicate rule for {key}")
        table[key] = mask
    return SelectionPolicy.explicit(table)


def verify_revision_equivalence(
    model: CpmModel,
    a: Formula,
    policy: SelectionPolicy,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ImagingReport:
    """Compare imaging the factual distribution against direct revision.

    Both results are normalized and compared world by world; the report
    passes when the largest absolute deviation is within tolerance.
    """
    a_mask = models_mask(a, model.vocab)
    if model.base.pi_of_mask(a_mask) == 0.0:
        raise ImpossibleConditionError(
            "condition has possibility 0; revision undefined"
        )
    factual = model.factual_distribution()
    imaged = image(factual, policy, model, a)
    revised = model.revise(a)
    union = imaged.support_mask | revised.support_mask
    deviations = []
    max_dev = 0.0
    for i in _iter_bits(union):
        left = imaged.mass(i) / imaged.total
        right = revised.mass(i) / revised.total
        deviations.append((str(World(model.vocab, i)), left, right))
        max_dev = max(max_dev, abs(left - right))
    return ImagingReport(
        condition=print_formula(a),
        policy=str(policy.kind),
        max_deviation=max_dev,
        mass_in=factual.total,
        mass_out=imaged.total,
        passed=max_dev <= tolerance,
        deviations=deviations,
    )
