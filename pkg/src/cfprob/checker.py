"""Mechanical verification of the model theory on concrete finite models.

Every claim the engine relies on (revision postulates, probability-function
structure, agreement of the revision routes, imaging equivalence, the
possibility-measure identities) is checked by brute enumeration over a
deterministic formula pool.  Reports carry one auditable claim id per check
and a reproducible instantiation for every failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .cpm import CpmModel, ImpossibleConditionError
from .imaging import SelectionPolicy, verify_revision_equivalence
from .logic import (
    FALSE,
    TRUE,
    And,
    Atom,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    Vocabulary,
    dnf_of_mask,
    models_mask,
    print_formula,
)
from .possibility import PossibilityModel
from .simulation import build_family, build_sequence

TOLERANCE = 1e-9
CERTAINTY_TOLERANCE = 1e-12
MASS_CONSERVATION_RTOL = 1e-12

AGM_CLAIMS = (
    "agm.closure",
    "agm.success",
    "agm.inclusion",
    "agm.vacuity",
    "agm.consistency",
    "agm.extensionality",
    "agm.superexpansion",
    "agm.subexpansion",
)

THEOREM_CLAIMS = (
    "possibility.max_axiom",
    "possibility.necessity_duality",
    "possibility.conditional_inequality",
    "possibility.acceptance_identity",
    "factual.is_probability",
    "factual.full_belief_iff_one",
    "revised.is_probability",
    "revision.conditional_iff_certain",
    "revision.extends_conditioning",
    "revision.sequence_agrees",
    "revision.single_function_agrees",
    "revision.undefined_together",
    "imaging.matches_revision.pl_uniform",
    "imaging.matches_revision.centered",
    "imaging.mass_conserved",
    "weights.rank_rescaling_invariant",
)


@dataclass
class CheckRecord:
    claim: str
    instantiation: str
    expected: str
    actual: str
    deviation: float
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "instantiation": self.instantiation,
            "expected": self.expected,
            "actual": self.actual,
            "deviation": self.deviation,
            "passed": self.passed,
            "note": self.note,
        }


@dataclass
class CheckReport:
    """Outcome of one check suite on one model.

    Failure records are always retained; passing records only when the suite
    was run with keep_passes (counts cover everything either way).
    """

    suite: str
    seed: int | None
    runs: dict[str, int] = field(default_factory=dict)
    failures: dict[str, int] = field(default_factory=dict)
    records: list[CheckRecord] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def total_runs(self) -> int:
        return sum(self.runs.values())

    @property
    def total_failures(self) -> int:
        return sum(self.failures.values())

    @property
    def passed(self) -> bool:
        return self.total_failures == 0

    def finalize(self) -> "CheckReport":
        self.records.sort(key=lambda r: (r.claim, r.instantiation))
        self.notes.sort()
        return self

    def to_dict(self) -> dict:
        """Machine-readable tree: claim id -> counts and retained records."""
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "checks_run": self.total_runs,
            "checks_failed": self.total_failures,
            "claims": {
                claim: {
                    "run": self.runs.get(claim, 0),
                    "failed": self.failures.get(claim, 0),
                    "records": [
                        r.to_dict() for r in self.records if r.claim == claim
                    ],
                }
                for claim in sorted(self.runs)
            },
            "notes": list(self.notes),
        }

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}"]
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        width = max((len(c) for c in self.runs), default=10) + 2
        lines.append(f"{'claim'.ljust(width)}{'run':>8}{'failed':>8}")
        for claim in sorted(self.runs):
            lines.append(
                f"{claim.ljust(width)}{self.runs.get(claim, 0):>8}"
                f"{self.failures.get(claim, 0):>8}"
            )
        lines.append(
            f"result: {'PASS' if self.passed else 'FAIL'} "
            f"({self.total_runs} checks, {self.total_failures} failures)"
        )
        for note in self.notes:
            lines.append(f"note: {note}")
        for record in self.records:
            if not record.passed:
                lines.append(
                    f"FAIL {record.claim} [{record.instantiation}] "
                    f"expected {record.expected}, got {record.actual}"
                    + (f" ({record.note})" if record.note else "")
                )
        return "\n".join(lines)


class _Collector:
    """Accumulates check outcomes with cheap bookkeeping on the hot path."""

    def __init__(self, suite: str, seed: int | None, keep_passes: bool):
        self.report = CheckReport(suite=suite, seed=seed)
        self.keep_passes = keep_passes

    def ok(self, claim: str, instantiation: str = "", note: str = ""):
        runs = self.report.runs
        runs[claim] = runs.get(claim, 0) + 1
        if self.keep_passes:
            self.report.records.append(
                CheckRecord(claim, instantiation, "", "", 0.0, True, note)
            )

    def fail(
        self,
        claim: str,
        instantiation: str,
        expected: str,
        actual: str,
        deviation: float = 0.0,
        note: str = "",
    ):
        runs, fails = self.report.runs, self.report.failures
        runs[claim] = runs.get(claim, 0) + 1
        fails[claim] = fails.get(claim, 0) + 1
        self.report.records.append(
            CheckRecord(claim, instantiation, expected, actual, deviation, False, note)
        )

    def check(
        self,
        claim: str,
        passed: bool,
        instantiation: str,
        expected: str = "",
        actual: str = "",
        deviation: float = 0.0,
        note: str = "",
    ):
        if passed:
            self.ok(claim, instantiation, note)
        else:
            self.fail(claim, instantiation, expected, actual, deviation, note)

    def note(self, text: str):
        if text not in self.report.notes:
            self.report.notes.append(text)

    def done(self) -> CheckReport:
        return self.report.finalize()


# --- formula pool ----------------------------------------------------------


def formula_pool(
    vocab: Vocabulary, depth: int = 2, seed: int = 0, count: int = 12
) -> list[Formula]:
    """Deterministic quantification pool, deduplicated by model set.

    Contains the constants and all literals; from depth 2 also every
    pairwise conjunction and disjunction of distinct literals; plus `count`
    seeded random formulas of at most the given depth.
    """
    if depth > 4:
        raise ValueError("pool depth is capped at 4")
    literals: list[Formula] = []
    for name in vocab.atoms:
        literals.append(Atom(name))
        literals.append(Not(Atom(name)))
    pool: list[Formula] = [TRUE, FALSE, *literals]
    if depth >= 2:
        for i in range(len(literals)):
            for j in range(i + 1, len(literals)):
                pool.append(And(literals[i], literals[j]))
        for i in range(len(literals)):
            for j in range(i + 1, len(literals)):
                pool.append(Or(literals[i], literals[j]))
    rng = random.Random(seed)
    for _ in range(count):
        pool.append(_random_formula(rng, vocab, depth))
    seen: set[int] = set()
    out: list[Formula] = []
    for f in pool:
        mask = models_mask(f, vocab)
        if mask not in seen:
            seen.add(mask)
            out.append(f)
    return out


def _random_formula(rng: random.Random, vocab: Vocabulary, depth: int) -> Formula:
    if depth <= 1 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.03:
            return TRUE
        if roll < 0.06:
            return FALSE
        atom = Atom(rng.choice(vocab.atoms))
        return Not(atom) if rng.random() < 0.5 else atom
    kind = rng.choice(("not", "and", "or", "imp", "iff"))
    if kind == "not":
        return Not(_random_formula(rng, vocab, depth - 1))
    left = _random_formula(rng, vocab, depth - 1)
    right = _random_formula(rng, vocab, depth - 1)
    ctor = {"and": And, "or": Or, "imp": Imp, "iff": Iff}[kind]
    return ctor(left, right)


# --- random models ----------------------------------------------------------


def random_cpm(
    seed: int,
    n_atoms: int = 4,
    n_ranks: int = 3,
    completeness: bool = False,
) -> CpmModel:
    """A seeded random model: deterministic, valid, every rank inhabited.

    Rank values decrease strictly from 1.0; weights are drawn from (0, 1].
    Without the completeness flag, part of the world space may be assigned
    possibility 0.
    """
    if not 1 <= n_atoms <= 10:
        raise ValueError("n_atoms must be in 1..10")
    if not 1 <= n_ranks <= 6:
        raise ValueError("n_ranks must be in 1..6")
    if n_ranks > 1 << n_atoms:
        raise ValueError("more ranks than worlds")
    rng = random.Random(seed)
    vocab = Vocabulary(tuple("ABCDEFGHIJ"[:n_atoms]))
    values = [1.0]
    while len(values) < n_ranks:
        v = rng.random()
        if 0.0 < v < 1.0 and v not in values:
            values.append(v)
    values = [values[0]] + sorted(values[1:], reverse=True)
    indices = list(range(vocab.world_count))
    rng.shuffle(indices)
    pi: dict[int, float] = {}
    for r in range(n_ranks):
        pi[indices[r]] = values[r]
    n_choices = n_ranks if completeness else n_ranks + 1
    for index in indices[n_ranks:]:
        choice = rng.randrange(n_choices)
        if choice < n_ranks:
            pi[index] = values[choice]
    weights = {i: 1.0 - rng.random() for i in sorted(pi)}
    return CpmModel(PossibilityModel(vocab, pi), weights)


# --- AGM postulate suite -----------------------------------------------------


def check_agm(
    model: PossibilityModel | CpmModel,
    pool: list[Formula],
    keep_passes: bool = False,
) -> CheckReport:
    """Verify the revision postulates over the pool.

    Belief sets are world sets, so theory inclusion is checked as reverse
    world-set inclusion and expansion by A as intersection with the A-worlds.
    On incomplete models the consistency postulate is applied in the weakened
    form: the revised state contains no possible world iff the condition has
    possibility 0 (such cases are noted as below-W revisions).
    """
    base = model.base if isinstance(model, CpmModel) else model
    vocab = base.vocab
    col = _Collector("agm", None, keep_passes)
    masks = [models_mask(f, vocab) for f in pool]
    pls = [base.pl_mask(m) for m in masks]
    k_mask = base.top_mask
    w_mask = base.w_mask
    complete = base.complete

    for f, a_mask, pl in zip(pool, masks, pls):
        inst = f"A={print_formula(f)}"
        # closure: the world set determines a deductively closed theory;
        # check it is exactly recoverable from a characterizing formula
        char = dnf_of_mask(pl, vocab)
        col.check(
            "agm.closure",
            models_mask(char, vocab) == pl,
            inst,
            "revised worlds recoverable from characterizing formula",
            "mismatch",
        )
        col.check(
            "agm.success",
            pl & ~a_mask == 0,
            inst,
            "revised worlds satisfy the new sentence",
            "some revised world fails it",
        )
        expansion = k_mask & a_mask
        col.check(
            "agm.inclusion",
            expansion & ~pl == 0,
            inst,
            "expansion worlds within revised worlds",
            "outside",
        )
        if expansion:
            col.check(
                "agm.vacuity",
                pl & ~expansion == 0,
                inst,
                "revision equals expansion when consistent",
                "differs",
            )
        else:
            col.ok("agm.vacuity", inst, note="inapplicable: negation believed")
        if complete:
            col.check(
                "agm.consistency",
                (pl == 0) == (a_mask == 0),
                inst,
                "revision inconsistent iff sentence unsatisfiable",
                f"pl empty={pl == 0}, unsat={a_mask == 0}",
            )
        else:
            below_w = a_mask != 0 and pl & w_mask == 0
            if below_w:
                col.note(f"below-W revision for {inst} (possibility 0, satisfiable)")
            col.check(
                "agm.consistency",
                (pl & w_mask == 0) == (base.pi_of_mask(a_mask) == 0.0),
                inst,
                "no possible revised world iff possibility 0",
                "mismatch",
                note="below-W revision" if below_w else "",
            )
        variants = (Not(Not(f)), And(f, f), Or(f, f))
        col.check(
            "agm.extensionality",
            all(base.pl_mask(models_mask(g, vocab)) == pl for g in variants),
            inst,
            "equivalent reformulations revise identically",
            "variant disagrees",
        )

    for i, (a_mask, pl_a) in enumerate(zip(masks, pls)):
        for j, b_mask in enumerate(masks):
            meet = pl_a & b_mask
            pl_ab = base.pl_mask(a_mask & b_mask)
            if meet & ~pl_ab == 0:
                col.ok("agm.superexpansion")
            else:
                col.fail(
                    "agm.superexpansion",
                    f"A={print_formula(pool[i])}, B={print_formula(pool[j])}",
                    "conjunctive revision within expanded revision",
                    "outside",
                )
            if meet:
                if pl_ab & ~meet == 0:
                    col.ok("agm.subexpansion")
                else:
                    col.fail(
                        "agm.subexpansion",
                        f"A={print_formula(pool[i])}, B={print_formula(pool[j])}",
                        "expanded revision within conjunctive revision",
                        "outside",
                    )
            else:
                col.ok("agm.subexpansion")
    return col.done()


# --- theorem battery ---------------------------------------------------------


def check_theorems(
    model: CpmModel,
    pool: list[Formula],
    seed: int = 0,
    keep_passes: bool = False,
    additivity_pairs: int = 200,
    perturbation_trials: int = 3,
) -> CheckReport:
    """Run the full claim battery over all pool pairs at tolerance 1e-9.

    Covers the possibility-measure identities, probability-function
    structure of the factual and revised functions, certainty/Bayes
    compatibility of revision, three-way agreement of the revision routes,
    imaging equivalence, and invariance of revision under rescaling the
    weights of any rank the revision does not select.
    """
    base = model.base
    vocab = model.vocab
    rng = random.Random(seed)
    col = _Collector("theorems", seed, keep_passes)
    masks = [models_mask(f, vocab) for f in pool]
    prints = [print_formula(f) for f in pool]
    pis = [base.pi_of_mask(m) for m in masks]
    sequence = build_sequence(model)
    family = build_family(model)

    _check_possibility_identities(col, model, pool, masks, prints, pis)
    _check_probability_structure(
        col, model, masks, prints, pis, rng, additivity_pairs
    )
    _check_revision_agreement(col, model, sequence, family, pool, masks, prints, pis)
    _check_imaging(col, model, pool, masks, prints, pis)
    _check_rank_rescaling(col, model, pool, masks, prints, pis, rng, perturbation_trials)
    return col.done()


def _check_possibility_identities(col, model, pool, masks, prints, pis):
    base = model.base
    vocab = model.vocab
    full = vocab.full_mask
    col.check(
        "possibility.max_axiom",
        base.pi_of_mask(full) == 1.0 and base.pi_of_mask(0) == 0.0,
        "constants",
        "possibility 1 for the tautology and 0 for the contradiction",
        f"top={base.pi_of_mask(full)!r}, bottom={base.pi_of_mask(0)!r}",
    )
    for i, (a_mask, pi_a) in enumerate(zip(masks, pis)):
        neg_mask = full ^ a_mask
        pi_neg = base.pi_of_mask(neg_mask)
        n_a = 1.0 - pi_neg
        inst = f"A={prints[i]}"
        col.check(
            "possibility.necessity_duality",
            base.necessity(pool[i]) == n_a,
            inst,
            "necessity equals one minus possibility of the negation",
            f"{base.necessity(pool[i])!r} vs {n_a!r}",
        )
        believed = base.top_mask & ~a_mask == 0
        ok = (believed == (n_a > 0.0)) and (believed == (pi_neg < 1.0))
        indeterminate = (not believed) and (base.top_mask & a_mask != 0)
        ok = ok and (indeterminate == (pi_a == 1.0 and pi_neg == 1.0))
        col.check(
            "possibility.acceptance_identity",
            ok,
            inst,
            "acceptance iff positive necessity iff negation not fully possible",
            f"believed={believed}, N={n_a!r}, Pi(neg)={pi_neg!r}",
        )
        pl_a = base.pl_mask(a_mask)
        for j, (b_mask, pi_b) in enumerate(zip(masks, pis)):
            pi_or = base.pi_of_mask(a_mask | b_mask)
            if pi_or == max(pi_a, pi_b):
                col.ok("possibility.max_axiom")
            else:
                col.fail(
                    "possibility.max_axiom",
                    f"A={prints[i]}, B={prints[j]}",
                    f"{max(pi_a, pi_b)!r}",
                    f"{pi_or!r}",
                    abs(pi_or - max(pi_a, pi_b)),
                )
            holds = pi_a == 0.0 or pl_a & ~b_mask == 0
            rhs = (
                base.pi_of_mask(a_mask & b_mask)
                > base.pi_of_mask(a_mask & ~b_mask & full)
                or pi_a == 0.0
            )
            if holds == rhs:
                col.ok("possibility.conditional_inequality")
            else:
                col.fail(
                    "possibility.conditional_inequality",
                    f"A={prints[i]}, B={prints[j]}",
                    f"conditional={holds}",
                    f"inequality={rhs}",
                )


def _check_probability_structure(col, model, masks, prints, pis, rng, pair_budget):
    base = model.base
    full = model.vocab.full_mask
    p_top = model.cf_prob_mask(full, full)
    p_bottom = model.cf_prob_mask(0, full)
    col.check(
        "factual.is_probability",
        p_top == 1.0 and p_bottom == 0.0,
        "constants",
        "1 for the tautology, 0 for the contradiction",
        f"{p_top!r}, {p_bottom!r}",
    )
    for i, a_mask in enumerate(masks):
        p_a = model.cf_prob_mask(a_mask, full)
        believed = base.top_mask & ~a_mask == 0
        is_one = p_a > 1.0 - CERTAINTY_TOLERANCE
        col.check(
            "factual.full_belief_iff_one",
            is_one == believed,
            f"A={prints[i]}",
            f"believed={believed}",
            f"P={p_a!r}",
        )
    revisable = [i for i, pi in enumerate(pis) if pi > 0.0]
    for i in revisable:
        dist = model.revise_mask(masks[i])
        top = dist.prob_of_mask(full)
        bottom = dist.prob_of_mask(0)
        col.check(
            "revised.is_probability",
            top == 1.0 and bottom == 0.0,
            f"A={prints[i]}, normalization",
            "1 for the tautology, 0 for the contradiction",
            f"{top!r}, {bottom!r}",
        )
    # additivity over seeded disjoint pairs, for the factual function and a
    # seeded revised function per pair
    for n in range(pair_budget):
        g_mask = masks[rng.randrange(len(masks))]
        h_mask = masks[rng.randrange(len(masks))]
        left_mask = g_mask & h_mask
        right_mask = g_mask & ~h_mask & full
        union_mask = g_mask
        p_l = model.cf_prob_mask(left_mask, full)
        p_r = model.cf_prob_mask(right_mask, full)
        p_u = model.cf_prob_mask(union_mask, full)
        dev = abs(p_u - (p_l + p_r))
        col.check(
            "factual.is_probability",
            dev <= TOLERANCE,
            f"additivity trial {n}",
            f"{p_l + p_r!r}",
            f"{p_u!r}",
            dev,
        )
        if revisable:
            a_i = revisable[rng.randrange(len(revisable))]
            dist = model.revise_mask(masks[a_i])
            q_l = dist.prob_of_mask(left_mask)
            q_r = dist.prob_of_mask(right_mask)
            q_u = dist.prob_of_mask(union_mask)
            dev = abs(q_u - (q_l + q_r))
            col.check(
                "revised.is_probability",
                dev <= TOLERANCE,
                f"A={prints[a_i]}, additivity trial {n}",
                f"{q_l + q_r!r}",
                f"{q_u!r}",
                dev,
            )


def _check_revision_agreement(col, model, sequence, family, pool, masks, prints, pis):
    vocab = model.vocab
    full = vocab.full_mask
    base = model.base
    single = family.single_dist
    for i, (a_mask, pi_a) in enumerate(zip(masks, pis)):
        entry = sequence.select_entry(a_mask)
        cond = family.condition_mask(a_mask)
        if pi_a == 0.0:
            direct_undef = True
            try:
                model.cf_prob_mask(full, a_mask)
                direct_undef = False
            except ImpossibleConditionError:
                pass
            col.check(
                "revision.undefined_together",
                direct_undef and entry is None and cond is None,
                f"A={prints[i]}",
                "all three revision routes undefined",
                f"direct={not direct_undef}, sequence={entry is not None}, "
                f"single={cond is not None}",
            )
            continue
        col.check(
            "revision.undefined_together",
            entry is not None and cond is not None,
            f"A={prints[i]}",
            "all three revision routes defined",
            "a route reports undefined",
        )
        if entry is None or cond is None:
            continue
        seq_hit = entry.dist.support_mask & a_mask
        seq_den = entry.dist.mass_of_mask(seq_hit)
        single_den = single.mass_of_mask(cond)
        pl_a = base.pl_mask(a_mask)
        p_a = model.cf_prob_mask(a_mask, full)
        for j, b_mask in enumerate(masks):
            star = model.cf_prob_mask(b_mask, a_mask)
            holds = pl_a & ~b_mask == 0
            if holds == (abs(star - 1.0) <= CERTAINTY_TOLERANCE):
                col.ok("revision.conditional_iff_certain")
            else:
                col.fail(
                    "revision.conditional_iff_certain",
                    f"A={prints[i]}, B={prints[j]}",
                    f"conditional={holds}",
                    f"revised probability {star!r}",
                    abs(star - 1.0),
                )
            if p_a > 0.0:
                bayes = model.cf_prob_mask(a_mask & b_mask, full) / p_a
                dev = abs(star - bayes)
                if dev <= TOLERANCE:
                    col.ok("revision.extends_conditioning")
                else:
                    col.fail(
                        "revision.extends_conditioning",
                        f"A={prints[i]}, B={prints[j]}",
                        f"{bayes!r}",
                        f"{star!r}",
                        dev,
                    )
            via_seq = entry.dist.mass_of_mask(seq_hit & b_mask) / seq_den
            dev = abs(star - via_seq)
            if dev <= TOLERANCE:
                col.ok("revision.sequence_agrees")
            else:
                col.fail(
                    "revision.sequence_agrees",
                    f"A={prints[i]}, B={prints[j]}",
                    f"{star!r}",
                    f"{via_seq!r}",
                    dev,
                )
            via_single = single.mass_of_mask(cond & b_mask) / single_den
            dev = abs(star - via_single)
            if dev <= TOLERANCE:
                col.ok("revision.single_function_agrees")
            else:
                col.fail(
                    "revision.single_function_agrees",
                    f"A={prints[i]}, B={prints[j]}",
                    f"{star!r}",
                    f"{via_single!r}",
                    dev,
                )


def _check_imaging(col, model, pool, masks, prints, pis):
    policies = (
        ("imaging.matches_revision.pl_uniform", SelectionPolicy.pl_uniform()),
        ("imaging.matches_revision.centered", SelectionPolicy.centered()),
    )
    for i, pi_a in enumerate(pis):
        if pi_a == 0.0 or masks[i] == 0:
            continue
        for claim, policy in policies:
            report = verify_revision_equivalence(model, pool[i], policy)
            col.check(
                claim,
                report.passed,
                f"A={prints[i]}",
                "imaging equals revision after normalization",
                f"max deviation {report.max_deviation!r}",
                report.max_deviation,
            )
            rel = abs(report.mass_out - report.mass_in) / report.mass_in
            col.check(
                "imaging.mass_conserved",
                rel <= MASS_CONSERVATION_RTOL,
                f"A={prints[i]}, policy={report.policy}",
                f"{report.mass_in!r}",
                f"{report.mass_out!r}",
                rel,
            )


def _check_rank_rescaling(col, model, pool, masks, prints, pis, rng, trials):
    base = model.base
    revisable = [i for i, pi in enumerate(pis) if pi > 0.0 and masks[i] != 0]
    if not revisable or len(base.rank_values) < 2:
        return
    for _ in range(trials):
        i = revisable[rng.randrange(len(revisable))]
        a_mask = masks[i]
        selected = next(
            r for r, mask in enumerate(base.rank_masks) if mask & a_mask
        )
        others = [r for r in range(len(base.rank_values)) if r != selected]
        if not others:
            continue
        target = others[rng.randrange(len(others))]
        factor = 10.0 * (1.0 - rng.random())  # (0, 10]
        scaled = {
            w.index: wt * factor if base.rank_masks[target] >> w.index & 1 else wt
            for w, wt in model.weight_items()
        }
        perturbed = CpmModel(base, scaled)
        worst = 0.0
        for b_mask in masks:
            before = model.cf_prob_mask(b_mask, a_mask)
            after = perturbed.cf_prob_mask(b_mask, a_mask)
            worst = max(worst, abs(before - after))
        col.check(
            "weights.rank_rescaling_invariant",
            worst <= TOLERANCE,
            f"A={prints[i]}, rank={base.rank_values[target]!r}, factor={factor!r}",
            "revision answers unchanged",
            f"max change {worst!r}",
            worst,
        )
