import pytest

from cfprob.cpm import (
    CpmModel,
    ImpossibleConditionError,
    WorldDistribution,
    ZeroProbabilityConditionError,
    cpm_model,
)
from cfprob.possibility import ModelInvariantError, PossibilityModel

TOL = 1e-9


def test_counterfactual_prob_golden(example_model, p):
    # hand summation over the two degree-0.6 worlds: 0.08 and 0.04
    assert example_model.counterfactual_prob(p("B"), p("A")) == 1.0
    assert example_model.counterfactual_prob(p("C"), p("A")) == pytest.approx(
        0.08 / 0.12, abs=TOL
    )
    with pytest.raises(ImpossibleConditionError):
        example_model.counterfactual_prob(p("C"), p("~B & ~C"))


def test_factual_prob_golden(example_model, p):
    # top rank carries 0.5 + 0.3; the C-world share is 0.5
    assert example_model.factual_prob(p("C")) == pytest.approx(0.5 / 0.8, abs=TOL)
    assert example_model.factual_prob(p("B")) == 1.0
    assert example_model.factual_prob(p("A")) == 0.0


def test_conditional_prob(example_model, p):
    assert example_model.conditional_prob(p("C"), p("B")) == pytest.approx(0.625, abs=TOL)
    assert example_model.conditional_prob(p("C"), p("C")) == 1.0
    # the motivating gap: P(C|A) undefined although P(C given-A-revision) exists
    with pytest.raises(ZeroProbabilityConditionError):
        example_model.conditional_prob(p("C"), p("A"))
    assert example_model.counterfactual_prob(p("C"), p("A")) == pytest.approx(
        2 / 3, abs=TOL
    )


def test_revise(example_model, p):
    dist = example_model.revise(p("A"))
    assert {(w.literals(), m) for w, m in dist.items()} == {
        ("A B C", 0.08),
        ("A B ~C", 0.04),
    }
    assert dist.prob(p("C")) == pytest.approx(2 / 3, abs=TOL)
    with pytest.raises(ImpossibleConditionError):
        example_model.revise(p("~B & ~C"))


def test_revise_by_tautology_is_factual(example_model, p):
    dist = example_model.revise(p("true"))
    assert {(w.literals(), m) for w, m in dist.items()} == {
        ("~A B C", 0.5),
        ("~A B ~C", 0.3),
    }
    assert dist.prob(p("C")) == pytest.approx(0.625, abs=TOL)


def test_revise_consistent_matches_conditioning(example_model, p):
    # P(~A) = 1 > 0, so revision must agree with Bayes conditioning
    dist = example_model.revise(p("~A"))
    assert dist.prob(p("C")) == pytest.approx(
        example_model.conditional_prob(p("C"), p("~A")), abs=TOL
    )
    assert dist.prob(p("C")) == pytest.approx(0.625, abs=TOL)


def test_natural_revision_golden(example_model, p):
    revised = example_model.natural_revision(p("A"))
    degrees = {w.literals(): v for w, v in revised.base.pi_items()}
    assert degrees == {
        "A B C": 1.0,
        "A B ~C": 1.0,
        "~A B C": 0.5,
        "~A B ~C": 0.5,
        "A ~B C": pytest.approx(0.2),
        "~A ~B C": pytest.approx(0.2),
    }
    assert revised.factual_prob(p("C")) == pytest.approx(2 / 3, abs=TOL)
    # weights unchanged
    assert revised.weight_items() == example_model.weight_items()


def test_natural_revision_by_tautology_keeps_state(example_model, p):
    revised = example_model.natural_revision(p("true"))
    assert revised.base.belief_worlds() == example_model.base.belief_worlds()
    for f in ("A", "B", "C", "A & C", "B | ~C"):
        assert revised.factual_prob(p(f)) == pytest.approx(
            example_model.factual_prob(p(f)), abs=TOL
        )


def test_natural_revision_iterates(example_model, p):
    twice = example_model.natural_revision(p("A")).natural_revision(p("~A"))
    assert twice.base.believes(p("~A"))
    assert not twice.base.believes(p("A"))


def test_natural_revision_preserves_order(example_model, p):
    revised = example_model.natural_revision(p("A"))
    base, new = example_model.base, revised.base
    pl_mask = base.pl_mask(0b10101010)  # models of atom A
    for u, pu in base.pi_items():
        for v, pv in base.pi_items():
            if pl_mask >> u.index & 1 or pl_mask >> v.index & 1:
                continue
            if pu < pv:
                assert new.pi(u) < new.pi(v)
    # promoted worlds strictly top
    for w, value in new.pi_items():
        if not pl_mask >> w.index & 1:
            assert value < 1.0


def test_natural_revision_impossible(example_model, p):
    with pytest.raises(ImpossibleConditionError):
        example_model.natural_revision(p("~B & ~C"))
    with pytest.raises(ValueError):
        example_model.natural_revision(p("A"), demotion=1.0)


def test_world_distribution_normalizes(vocab):
    dist = WorldDistribution(vocab, {0: 2.0, 3: 6.0})
    assert dist.total == 8.0
    assert dist.prob_of_mask(0b1000) == pytest.approx(0.75)
    normalized = dist.normalized()
    assert normalized.total == pytest.approx(1.0)
    assert normalized.mass(3) == pytest.approx(0.75)


def test_world_distribution_requires_mass(vocab):
    with pytest.raises(ModelInvariantError):
        WorldDistribution(vocab, {})
    with pytest.raises(ModelInvariantError):
        WorldDistribution(vocab, {0: -1.0})


def test_cpm_weight_validation(vocab):
    base = PossibilityModel(vocab, {0: 1.0, 1: 0.5})
    with pytest.raises(ModelInvariantError):
        CpmModel(base, {0: 1.0})  # world 1 missing
    with pytest.raises(ModelInvariantError):
        CpmModel(base, {0: 1.0, 1: 0.0})  # nonpositive
    with pytest.raises(ModelInvariantError):
        CpmModel(base, {0: 1.0, 1: 0.2, 2: 0.3})  # weight off W
    CpmModel(base, {0: 1.0, 1: 0.2})


def test_probabilities_are_scale_free(vocab, example_model, p):
    scaled = cpm_model(
        vocab,
        {
            pattern: (degree, weight * 37.0)
            for pattern, (degree, weight) in {
                "~A  B  C": (1.0, 0.5),
                "~A  B ~C": (1.0, 0.3),
                " A  B  C": (0.6, 0.08),
                " A  B ~C": (0.6, 0.04),
                " A ~B  C": (0.4, 0.05),
                "~A ~B  C": (0.4, 0.03),
            }.items()
        },
    )
    for f in ("A", "C", "A & C", "B -> C"):
        assert scaled.factual_prob(p(f)) == pytest.approx(
            example_model.factual_prob(p(f)), abs=TOL
        )
        assert scaled.counterfactual_prob(p(f), p("A")) == pytest.approx(
            example_model.counterfactual_prob(p(f), p("A")), abs=TOL
        )
