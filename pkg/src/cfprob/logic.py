"""Propositional language: formula AST, parser, world enumeration, entailment.

Worlds over a vocabulary of n atoms are indexed 0..2^n-1; bit i of the index
is the truth value of atom i in the vocabulary's declared order.  World sets
are handled internally as integer bitmasks over those indices, which keeps
model enumeration cheap at the scales this package targets.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

DEFAULT_MAX_ATOMS = 20

_ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class VocabularyError(ValueError):
    """Invalid vocabulary (bad name, duplicate, empty)."""


class VocabularyTooLargeError(VocabularyError):
    """Vocabulary exceeds the world-enumeration limit."""


class UnknownAtomError(ValueError):
    def __init__(self, name: str):
        super().__init__(f"unknown atom {name!r}")
        self.name = name


class FormulaSyntaxError(ValueError):
    def __init__(self, position: int, expected: str, found: str = ""):
        detail = f"expected {expected}" + (f", found {found!r}" if found else "")
        super().__init__(f"syntax error at position {position}: {detail}")
        self.position = position
        self.expected = expected


class Vocabulary:
    """An ordered, validated set of atom names.

    The order fixes the world indexing used everywhere downstream, so two
    vocabularies are interchangeable only if their atom tuples are equal.
    """

    __slots__ = ("atoms", "_index", "_atom_masks")

    def __init__(self, atoms: Iterable[str], max_atoms: int = DEFAULT_MAX_ATOMS):
        atoms = tuple(atoms)
        if not atoms:
            raise VocabularyError("vocabulary must declare at least one atom")
        seen = set()
        for name in atoms:
            if not _ATOM_RE.match(name):
                raise VocabularyError(f"invalid atom name {name!r}")
            if name in seen:
                raise VocabularyError(f"duplicate atom {name!r}")
            if name in ("true", "false"):
                raise VocabularyError(f"atom name {name!r} is reserved")
            seen.add(name)
        if len(atoms) > max_atoms:
            raise VocabularyTooLargeError(
                f"{len(atoms)} atoms exceeds the limit of {max_atoms}"
            )
        self.atoms = atoms
        self._index = {name: i for i, name in enumerate(atoms)}
        self._atom_masks: list[int] | None = None

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def world_count(self) -> int:
        return 1 << len(self.atoms)

    @property
    def full_mask(self) -> int:
        return (1 << self.world_count) - 1

    def atom_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownAtomError(name) from None

    def atom_mask(self, i: int) -> int:
        """Bitmask of all world indices in which atom i is true."""
        if self._atom_masks is None:
            self._atom_masks = [self._build_atom_mask(i) for i in range(self.size)]
        return self._atom_masks[i]

    def _build_atom_mask(self, i: int) -> int:
        # One period is 2^(i+1) worlds: 2^i with the atom false, then 2^i true.
        # Multiplying the single-period pattern by a repunit stamps it across
        # the whole index space without a per-world loop.
        half = 1 << i
        period = half << 1
        pattern = ((1 << half) - 1) << half
        repunit = ((1 << self.world_count) - 1) // ((1 << period) - 1)
        return pattern * repunit

    def world(self, index: int) -> "World":
        if not 0 <= index < self.world_count:
            raise IndexError(f"world index {index} out of range")
        return World(self, index)

    def worlds(self) -> Iterator["World"]:
        return (World(self, i) for i in range(self.world_count))

    def worlds_of_mask(self, mask: int) -> frozenset["World"]:
        return frozenset(World(self, i) for i in _iter_bits(mask))

    def mask_of_worlds(self, worlds: Iterable["World"]) -> int:
        mask = 0
        for w in worlds:
            if w.vocab != self:
                raise VocabularyError("world belongs to a different vocabulary")
            mask |= 1 << w.index
        return mask

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __repr__(self) -> str:
        return f"Vocabulary({list(self.atoms)!r})"


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class World:
    """A total truth assignment, identified by its index in the vocabulary."""

    vocab: Vocabulary
    index: int

    def truth(self, atom: str) -> bool:
        return bool(self.index >> self.vocab.atom_index(atom) & 1)

    def satisfies(self, formula: "Formula") -> bool:
        return evaluate(self, formula)

    def literals(self) -> str:
        """Signed-literal rendering, e.g. '~A B C'."""
        return " ".join(
            name if self.index >> i & 1 else "~" + name
            for i, name in enumerate(self.vocab.atoms)
        )

    def __str__(self) -> str:
        return self.literals()


# --- formula AST ---------------------------------------------------------

class Formula:
    """Base class for propositional AST nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)


@dataclass(frozen=True, eq=True)
class Atom(Formula):
    __slots__ = ("name",)
    name: str


@dataclass(frozen=True, eq=True)
class Top(Formula):
    __slots__ = ()


@dataclass(frozen=True, eq=True)
class Bottom(Formula):
    __slots__ = ()


@dataclass(frozen=True, eq=True)
class Not(Formula):
    __slots__ = ("child",)
    child: Formula


@dataclass(frozen=True, eq=True)
class And(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=True)
class Or(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=True)
class Imp(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula


@dataclass(frozen=True, eq=True)
class Iff(Formula):
    __slots__ = ("left", "right")
    left: Formula
    right: Formula


TRUE = Top()
FALSE = Bottom()


# --- printer -------------------------------------------------------------

# Binding strength; parenthesization below follows the grammar so that
# parse(print(f)) reproduces f node for node.
_LEVEL_IFF, _LEVEL_IMP, _LEVEL_OR, _LEVEL_AND, _LEVEL_UNARY = 1, 2, 3, 4, 5


def print_formula(f: Formula) -> str:
    """Render a formula in the canonical ASCII grammar."""
    return _render(f, _LEVEL_IFF)


def _level(f: Formula) -> int:
    if isinstance(f, Iff):
        return _LEVEL_IFF
    if isinstance(f, Imp):
        return _LEVEL_IMP
    if isinstance(f, Or):
        return _LEVEL_OR
    if isinstance(f, And):
        return _LEVEL_AND
    return _LEVEL_UNARY


def _render(f: Formula, min_level: int) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Not):
        return "~" + _render(f.child, _LEVEL_UNARY)
    if isinstance(f, Iff):
        s = _render(f.left, _LEVEL_IFF) + " <-> " + _render(f.right, _LEVEL_IMP)
    elif isinstance(f, Imp):
        # right-associative: the right child may be another implication
        s = _render(f.left, _LEVEL_OR) + " -> " + _render(f.right, _LEVEL_IMP)
    elif isinstance(f, Or):
        s = _render(f.left, _LEVEL_OR) + " | " + _render(f.right, _LEVEL_AND)
    elif isinstance(f, And):
        s = _render(f.left, _LEVEL_AND) + " & " + _render(f.right, _LEVEL_UNARY)
    else:
        raise TypeError(f"not a formula node: {f!r}")
    if _level(f) < min_level:
        return "(" + s + ")"
    return s


# --- parser --------------------------------------------------------------

_UNICODE_ALIASES = {
    "¬": "~",
    "∧": "&",
    "∨": "|",
    "→": "->",
    "↔": "<->",
    "⊤": "true",
    "⊥": "false",
}


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _UNICODE_ALIASES:
            alias = _UNICODE_ALIASES[c]
            kind = {"~": "not", "&": "and", "|": "or", "->": "imp",
                    "<->": "iff", "true": "true", "false": "false"}[alias]
            tokens.append(_Token(kind, c, i))
            i += 1
            continue
        if c == "~":
            tokens.append(_Token("not", c, i))
            i += 1
        elif c == "&":
            tokens.append(_Token("and", c, i))
            i += 1
        elif c == "|":
            tokens.append(_Token("or", c, i))
            i += 1
        elif c == "(":
            tokens.append(_Token("lparen", c, i))
            i += 1
        elif c == ")":
            tokens.append(_Token("rparen", c, i))
            i += 1
        elif text.startswith("<->", i):
            tokens.append(_Token("iff", "<->", i))
            i += 3
        elif text.startswith("->", i):
            tokens.append(_Token("imp", "->", i))
            i += 2
        elif c.isalpha():
            m = re.match(r"[A-Za-z][A-Za-z0-9_]*", text[i:])
            word = m.group(0)
            if word == "true":
                tokens.append(_Token("true", word, i))
            elif word == "false":
                tokens.append(_Token("false", word, i))
            else:
                tokens.append(_Token("atom", word, i))
            i += len(word)
        else:
            raise FormulaSyntaxError(i, "a formula token", c)
    tokens.append(_Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], vocab: Vocabulary):
        self.tokens = tokens
        self.pos = 0
        self.vocab = vocab

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, expected: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise FormulaSyntaxError(tok.pos, expected, tok.text or "end of input")
        return self.take()

    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        node = self.imp()
        while self.peek().kind == "iff":
            self.take()
            node = Iff(node, self.imp())
        return node

    def imp(self) -> Formula:
        parts = [self.or_()]
        while self.peek().kind == "imp":
            self.take()
            parts.append(self.or_())
        node = parts[-1]
        for part in reversed(parts[:-1]):
            node = Imp(part, node)
        return node

    def or_(self) -> Formula:
        node = self.and_()
        while self.peek().kind == "or":
            self.take()
            node = Or(node, self.and_())
        return node

    def and_(self) -> Formula:
        node = self.unary()
        while self.peek().kind == "and":
            self.take()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "not":
            self.take()
            return Not(self.unary())
        if tok.kind == "atom":
            self.take()
            self.vocab.atom_index(tok.text)  # raises UnknownAtomError
            return Atom(tok.text)
        if tok.kind == "true":
            self.take()
            return TRUE
        if tok.kind == "false":
            self.take()
            return FALSE
        if tok.kind == "lparen":
            self.take()
            node = self.formula()
            self.expect("rparen", "')'")
            return node
        raise FormulaSyntaxError(tok.pos, "a formula", tok.text or "end of input")


def parse_formula(text: str, vocab: Vocabulary) -> Formula:
    """Parse the canonical grammar (with unicode connective aliases).

    Precedence ~ > & > | > -> > <->, with -> right-associative.  Atom
    references are resolved against the vocabulary at parse time.
    """
    if not text.strip():
        raise FormulaSyntaxError(0, "a nonempty formula")
    parser = _Parser(_tokenize(text), vocab)
    node = parser.formula()
    tok = parser.peek()
    if tok.kind != "eof":
        raise FormulaSyntaxError(tok.pos, "end of input", tok.text)
    return node


# --- semantics -----------------------------------------------------------

def evaluate(world: World, formula: Formula) -> bool:
    """Classical truth value of a formula at one world."""
    if isinstance(formula, Atom):
        return world.truth(formula.name)
    if isinstance(formula, Top):
        return True
    if isinstance(formula, Bottom):
        return False
    if isinstance(formula, Not):
        return not evaluate(world, formula.child)
    if isinstance(formula, And):
        return evaluate(world, formula.left) and evaluate(world, formula.right)
    if isinstance(formula, Or):
        return evaluate(world, formula.left) or evaluate(world, formula.right)
    if isinstance(formula, Imp):
        return not evaluate(world, formula.left) or evaluate(world, formula.right)
    if isinstance(formula, Iff):
        return evaluate(world, formula.left) == evaluate(world, formula.right)
    raise TypeError(f"not a formula node: {formula!r}")


def models_mask(formula: Formula, vocab: Vocabulary) -> int:
    """Bitmask of the world indices satisfying the formula."""
    full = vocab.full_mask
    if isinstance(formula, Atom):
        return vocab.atom_mask(vocab.atom_index(formula.name))
    if isinstance(formula, Top):
        return full
    if isinstance(formula, Bottom):
        return 0
    if isinstance(formula, Not):
        return full ^ models_mask(formula.child, vocab)
    left = models_mask(formula.left, vocab)
    right = models_mask(formula.right, vocab)
    if isinstance(formula, And):
        return left & right
    if isinstance(formula, Or):
        return left | right
    if isinstance(formula, Imp):
        return (full ^ left) | right
    if isinstance(formula, Iff):
        return full ^ (left ^ right)
    raise TypeError(f"not a formula node: {formula!r}")


def models(formula: Formula, vocab: Vocabulary) -> frozenset[World]:
    """The set of worlds satisfying the formula."""
    return vocab.worlds_of_mask(models_mask(formula, vocab))


def entails(worlds: Iterable[World], formula: Formula) -> bool:
    """True iff every world in the set satisfies the formula.

    Vacuously true for the empty set, which realizes sentence membership in
    an inconsistent (world-free) belief state.
    """
    return all(w.satisfies(formula) for w in worlds)


def entails_mask(mask: int, formula_mask: int) -> bool:
    return mask & ~formula_mask == 0


def dnf_of_worlds(worlds: Iterable[World], vocab: Vocabulary) -> Formula:
    """A formula whose models are exactly the given worlds.

    Canonical form: disjunction of full literal conjunctions, one per world,
    ordered by world index; the empty set maps to 'false'.
    """
    mask = vocab.mask_of_worlds(worlds)
    return dnf_of_mask(mask, vocab)


def dnf_of_mask(mask: int, vocab: Vocabulary) -> Formula:
    terms = []
    for index in _iter_bits(mask):
        term: Formula | None = None
        for i, name in enumerate(vocab.atoms):
            lit: Formula = Atom(name) if index >> i & 1 else Not(Atom(name))
            term = lit if term is None else And(term, lit)
        terms.append(term)
    if not terms:
        return FALSE
    node = terms[0]
    for term in terms[1:]:
        node = Or(node, term)
    return node


def world_from_literals(text: str, vocab: Vocabulary) -> World:
    """Parse a signed-literal world pattern such as '~A B C'.

    Every atom of the vocabulary must appear exactly once, in any order.
    """
    index = 0
    seen: set[str] = set()
    for token in text.split():
        negated = token.startswith("~")
        name = token[1:] if negated else token
        i = vocab.atom_index(name)
        if name in seen:
            raise VocabularyError(f"atom {name!r} repeated in world pattern")
        seen.add(name)
        if not negated:
            index |= 1 << i
    missing = set(vocab.atoms) - seen
    if missing:
        raise VocabularyError(
            "world pattern missing atoms: " + " ".join(sorted(missing))
        )
    return World(vocab, index)
