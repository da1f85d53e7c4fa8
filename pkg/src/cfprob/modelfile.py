"""Line-oriented model files: parsing, validation, and canonical dumps.

Format (UTF-8, '#' starts a comment):

    atoms A B C
    world ~A B C pi=1.0 p=0.5
    world A B C pi=0.6 p=0.08

One signed literal per declared atom, each atom exactly once, any order.
Unlisted worlds are impossible (degree 0).  Files without any p field load
as plain possibility models; once any world carries a weight, every possible
world must.
"""

from __future__ import annotations

from pathlib import Path

from .cpm import CpmModel
from .logic import (
    DEFAULT_MAX_ATOMS,
    UnknownAtomError,
    Vocabulary,
    VocabularyError,
    world_from_literals,
)
from .possibility import ModelInvariantError, PossibilityModel


class ModelParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class ModelValidationError(ValueError):
    pass


def loads_model(
    text: str, max_atoms: int = DEFAULT_MAX_ATOMS
) -> CpmModel | PossibilityModel:
    """Parse and validate a model from file text.

    Returns a weighted model when probability weights are present, a plain
    possibility model when none are.
    """
    vocab: Vocabulary | None = None
    entries: list[tuple[int, int, float, float | None]] = []  # line, idx, pi, p
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        keyword = fields[0]
        if keyword == "atoms":
            if vocab is not None:
                raise ModelParseError(lineno, "duplicate atoms line")
            try:
                vocab = Vocabulary(fields[1:], max_atoms=max_atoms)
            except VocabularyError as exc:
                raise ModelParseError(lineno, str(exc)) from exc
        elif keyword == "world":
            if vocab is None:
                raise ModelParseError(lineno, "world line before atoms line")
            literals = [f for f in fields[1:] if "=" not in f]
            assigns = [f for f in fields[1:] if "=" in f]
            try:
                world = world_from_literals(" ".join(literals), vocab)
            except (VocabularyError, UnknownAtomError) as exc:
                raise ModelParseError(lineno, str(exc)) from exc
            pi_value: float | None = None
            p_value: float | None = None
            for assign in assigns:
                key, _, value = assign.partition("=")
                try:
                    number = float(value)
                except ValueError:
                    raise ModelParseError(
                        lineno, f"invalid number {value!r} for {key}"
                    ) from None
                if key == "pi":
                    if pi_value is not None:
                        raise ModelParseError(lineno, "duplicate pi field")
                    pi_value = number
                elif key == "p":
                    if p_value is not None:
                        raise ModelParseError(lineno, "duplicate p field")
                    p_value = number
                else:
                    raise ModelParseError(lineno, f"unknown field {key!r}")
            if pi_value is None:
                raise ModelParseError(lineno, "world line missing pi field")
            entries.append((lineno, world.index, pi_value, p_value))
        else:
            raise ModelParseError(lineno, f"unknown directive {keyword!r}")
    if vocab is None:
        raise ModelValidationError("no atoms line")

    seen: dict[int, int] = {}
    for lineno, index, _, _ in entries:
        if index in seen:
            raise ModelValidationError(
                f"line {lineno}: duplicate world (first listed on line {seen[index]})"
            )
        seen[index] = lineno
    for lineno, _, pi_value, _ in entries:
        if not 0.0 <= pi_value <= 1.0:
            raise ModelValidationError(f"line {lineno}: pi={pi_value!r} outside [0, 1]")
    if not any(pi_value == 1.0 for _, _, pi_value, _ in entries):
        raise ModelValidationError("no world with pi=1")

    has_p = any(p_value is not None for _, _, _, p_value in entries)
    pi_map = {index: pi_value for _, index, pi_value, _ in entries}
    base = PossibilityModel(vocab, pi_map)
    if not has_p:
        return base
    weights: dict[int, float] = {}
    for lineno, index, pi_value, p_value in entries:
        if pi_value > 0.0:
            if p_value is None:
                raise ModelValidationError(
                    f"line {lineno}: possible world missing p "
                    "(weights must cover every possible world once any appears)"
                )
            if not p_value > 0.0:
                raise ModelValidationError(
                    f"line {lineno}: p={p_value!r} must be positive"
                )
            weights[index] = p_value
        elif p_value is not None:
            raise ModelValidationError(
                f"line {lineno}: impossible world cannot carry a weight"
            )
    try:
        return CpmModel(base, weights)
    except ModelInvariantError as exc:
        raise ModelValidationError(str(exc)) from exc


def load_model(
    path: str | Path, max_atoms: int = DEFAULT_MAX_ATOMS
) -> CpmModel | PossibilityModel:
    return loads_model(Path(path).read_text(encoding="utf-8"), max_atoms=max_atoms)


def dumps_model(model: CpmModel | PossibilityModel) -> str:
    """Canonical dump: worlds by index, shortest round-trip float literals."""
    base = model.base if isinstance(model, CpmModel) else model
    lines = ["atoms " + " ".join(base.vocab.atoms)]
    for world, pi_value in base.pi_items():
        line = f"world {world.literals()} pi={pi_value!r}"
        if isinstance(model, CpmModel):
            line += f" p={model.weight(world)!r}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def dump_model(model: CpmModel | PossibilityModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")
