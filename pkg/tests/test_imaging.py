import pytest

from cfprob.cpm import ImpossibleConditionError, WorldDistribution
from cfprob.imaging import (
    EmptySelectionError,
    SelectionError,
    SelectionPolicy,
    ZeroShareDenominatorError,
    image,
    load_policy_table,
    select,
    verify_revision_equivalence,
)
from cfprob.logic import models_mask, world_from_literals
from cfprob.possibility import ModelInvariantError

TOL = 1e-9


def _w(vocab, pattern):
    return world_from_literals(pattern, vocab)


def test_select_centered(example_model, vocab, p):
    centered = SelectionPolicy.centered()
    picked = select(centered, example_model, _w(vocab, "A B C"), p("A"))
    assert {w.literals() for w in picked} == {"A B C"}
    picked = select(centered, example_model, _w(vocab, "~A B C"), p("A"))
    assert {w.literals() for w in picked} == {"A B C", "A B ~C"}


def test_select_pl_uniform(example_model, vocab, p):
    uniform = SelectionPolicy.pl_uniform()
    for pattern in ("A B C", "~A B C", "~A ~B ~C"):
        picked = select(uniform, example_model, _w(vocab, pattern), p("A"))
        assert {w.literals() for w in picked} == {"A B C", "A B ~C"}


def test_select_unsatisfiable(example_model, vocab, p):
    with pytest.raises(EmptySelectionError):
        select(SelectionPolicy.pl_uniform(), example_model, _w(vocab, "A B C"), p("false"))


def test_image_factual_by_rejected_sentence(example_model, vocab, p):
    factual = example_model.factual_distribution().normalized()
    imaged = image(factual, SelectionPolicy.pl_uniform(), example_model, p("A"))
    masses = {w.literals(): m for w, m in imaged.items()}
    assert masses["A B C"] == pytest.approx(2 / 3, abs=TOL)
    assert masses["A B ~C"] == pytest.approx(1 / 3, abs=TOL)
    assert imaged.total == pytest.approx(factual.total, rel=1e-12)


def test_image_centered_keeps_satisfying_mass(example_model, vocab, p):
    factual = example_model.factual_distribution().normalized()
    imaged = image(factual, SelectionPolicy.centered(), example_model, p("~A"))
    assert {w.literals(): m for w, m in imaged.items()} == pytest.approx(
        {w.literals(): m for w, m in factual.items()}
    )


def test_image_point_mass(example_model, vocab, p):
    point = WorldDistribution(vocab, {_w(vocab, "~A B ~C"): 1.0})
    imaged = image(point, SelectionPolicy.pl_uniform(), example_model, p("A & C"))
    assert {(w.literals(), m) for w, m in imaged.items()} == {("A B C", 1.0)}


def test_image_mass_conservation(example_model, vocab, p):
    dist = WorldDistribution(vocab, {6: 0.123, 2: 4.5, 3: 0.01})
    for policy in (SelectionPolicy.pl_uniform(), SelectionPolicy.centered()):
        for condition in ("A", "B", "C", "A & C", "~A"):
            imaged = image(dist, policy, example_model, p(condition))
            assert imaged.total == pytest.approx(dist.total, rel=1e-12)
            assert imaged.support_mask & ~models_mask(p(condition), vocab) == 0


def test_image_zero_share_denominator(example_model, vocab, p):
    # shipping mass into the impossible zone has no defined shares
    dist = WorldDistribution(vocab, {_w(vocab, "A ~B ~C"): 1.0})
    with pytest.raises(ZeroShareDenominatorError):
        image(dist, SelectionPolicy.centered(), example_model, p("~B & ~C"))


def test_image_idempotent(example_model, vocab, p):
    factual = example_model.factual_distribution()
    for policy in (SelectionPolicy.pl_uniform(), SelectionPolicy.centered()):
        once = image(factual, policy, example_model, p("A"))
        twice = image(once, policy, example_model, p("A"))
        for w, m in once.items():
            assert twice.mass(w) == pytest.approx(m, abs=TOL)


def test_verify_revision_equivalence(example_model, p):
    report = verify_revision_equivalence(example_model, p("A"), SelectionPolicy.pl_uniform())
    assert report.passed and report.max_deviation <= TOL
    report = verify_revision_equivalence(example_model, p("~A"), SelectionPolicy.centered())
    assert report.passed
    report = verify_revision_equivalence(example_model, p("A"), SelectionPolicy.centered())
    assert report.passed
    with pytest.raises(ImpossibleConditionError):
        verify_revision_equivalence(example_model, p("~B & ~C"), SelectionPolicy.centered())


def test_explicit_policy_table(example_model, vocab, p):
    table_text = """
    # ship the top worlds to chosen A-worlds
    select ~A  B  C | A -> A B C
    select ~A  B ~C | A -> A B C, A B ~C
    """
    policy = load_policy_table(table_text, vocab)
    picked = select(policy, example_model, _w(vocab, "~A B C"), p("A"))
    assert {w.literals() for w in picked} == {"A B C"}
    factual = example_model.factual_distribution()
    imaged = image(factual, policy, example_model, p("A"))
    # 0.5 lands on ABC; 0.3 splits 0.08:0.04 between ABC and AB~C
    masses = {w.literals(): m for w, m in imaged.items()}
    assert masses["A B C"] == pytest.approx(0.5 + 0.3 * (0.08 / 0.12), abs=TOL)
    assert masses["A B ~C"] == pytest.approx(0.3 * (0.04 / 0.12), abs=TOL)


def test_explicit_policy_is_print_keyed(example_model, vocab, p):
    policy = load_policy_table("select ~A B C | A -> A B C", vocab)
    # same canonical print, different input spelling
    picked = select(policy, example_model, _w(vocab, "~A B C"), p("(A)"))
    assert {w.literals() for w in picked} == {"A B C"}
    # a semantically equivalent but differently printed condition is a miss
    with pytest.raises(EmptySelectionError):
        select(policy, example_model, _w(vocab, "~A B C"), p("~~A"))


def test_explicit_policy_must_stay_inside_condition(example_model, vocab, p):
    policy = load_policy_table("select ~A B C | A -> ~A B C", vocab)
    with pytest.raises(ModelInvariantError):
        select(policy, example_model, _w(vocab, "~A B C"), p("A"))


def test_policy_table_parse_errors(vocab):
    with pytest.raises(SelectionError):
        load_policy_table("choose ~A B C | A -> A B C", vocab)
    with pytest.raises(SelectionError):
        load_policy_table("select ~A B C A -> A B C", vocab)
    with pytest.raises(SelectionError):
        load_policy_table("select ~A B C | A : A B C", vocab)


def test_policy_table_formula_may_contain_connectives(example_model, vocab, p):
    # the rule separator is the last arrow, so conditions can use -> and |
    policy = load_policy_table("select ~A B C | B -> C -> A B C", vocab)
    picked = select(policy, example_model, _w(vocab, "~A B C"), p("B -> C"))
    assert {w.literals() for w in picked} == {"A B C"}
    policy = load_policy_table("select ~A B C | A | ~B -> A B C", vocab)
    picked = select(policy, example_model, _w(vocab, "~A B C"), p("A | ~B"))
    assert {w.literals() for w in picked} == {"A B C"}
