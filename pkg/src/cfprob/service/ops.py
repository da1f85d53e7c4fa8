"""Operation handlers behind the HTTP endpoints; the CLI calls them directly.

Every handler takes a request model and returns a response model.  Queries
whose value is genuinely undefined (impossible or zero-probability
conditions) come back with defined=False and a reason rather than an error:
that outcome is an answer, not a failure.
"""

from __future__ import annotations

import hashlib
import threading

from ..checker import check_agm, check_theorems, formula_pool, random_cpm
from ..cpm import (
    CpmModel,
    UndefinedProbabilityError,
    WorldDistribution,
    ZeroProbabilityConditionError,
)
from ..imaging import (
    SelectionError,
    SelectionPolicy,
    image,
    load_policy_table,
)
from ..logic import Vocabulary, models_mask, parse_formula, world_from_literals
from ..modelfile import dumps_model, loads_model
from ..possibility import PossibilityModel
from . import schemas


class OperationError(ValueError):
    """Request cannot be served as posed (bad combination of inputs)."""


class UnknownModelError(KeyError):
    def __init__(self, model_id: str):
        super().__init__(model_id)
        self.model_id = model_id


class ModelStore:
    """In-memory, content-addressed registry of loaded models."""

    def __init__(self):
        self._lock = threading.Lock()
        self._models: dict[str, tuple[CpmModel | PossibilityModel, str, str | None]] = {}

    def put(self, text: str, name: str | None = None) -> schemas.ModelSummary:
        model = loads_model(text)
        model_id = "m" + hashlib.sha256(text.encode("utf-8")).hexdigest()[:10]
        with self._lock:
            self._models[model_id] = (model, text, name)
        return summarize(model, model_id=model_id, name=name)

    def get(self, model_id: str) -> CpmModel | PossibilityModel:
        with self._lock:
            try:
                return self._models[model_id][0]
            except KeyError:
                raise UnknownModelError(model_id) from None

    def delete(self, model_id: str) -> None:
        with self._lock:
            if model_id not in self._models:
                raise UnknownModelError(model_id)
            del self._models[model_id]

    def list(self) -> list[schemas.ModelSummary]:
        with self._lock:
            items = list(self._models.items())
        return [
            summarize(model, model_id=model_id, name=name)
            for model_id, (model, _, name) in sorted(items)
        ]


def summarize(
    model: CpmModel | PossibilityModel,
    model_id: str | None = None,
    name: str | None = None,
) -> schemas.ModelSummary:
    base = model.base if isinstance(model, CpmModel) else model
    return schemas.ModelSummary(
        id=model_id,
        name=name,
        kind="cpm" if isinstance(model, CpmModel) else "possibility",
        atoms=list(base.vocab.atoms),
        possible_worlds=len(base.pi_items()),
        ranks=list(base.rank_values),
        complete=base.complete,
    )


def resolve_model(
    ref: schemas.ModelRef, store: ModelStore | None = None
) -> CpmModel | PossibilityModel:
    if (ref.text is None) == (ref.id is None):
        raise OperationError("provide exactly one of model text or model id")
    if ref.text is not None:
        if ref.max_atoms is not None:
            return loads_model(ref.text, max_atoms=ref.max_atoms)
        return loads_model(ref.text)
    if store is None:
        raise OperationError("model ids require a running service with a store")
    return store.get(ref.id)


def _require_weights(model: CpmModel | PossibilityModel) -> CpmModel:
    if not isinstance(model, CpmModel):
        raise OperationError(
            "model has no probability weights; this operation needs p fields"
        )
    return model


def _base(model: CpmModel | PossibilityModel) -> PossibilityModel:
    return model.base if isinstance(model, CpmModel) else model


def parse_op(req: schemas.ParseRequest) -> schemas.ParseResponse:
    if (req.atoms is None) == (req.model is None):
        raise OperationError("provide exactly one of atoms or model")
    if req.atoms is not None:
        vocab = Vocabulary(req.atoms)
    else:
        vocab = _base(resolve_model(req.model)).vocab
    formula = parse_formula(req.formula, vocab)
    return schemas.ParseResponse(canonical=str(formula), atoms=list(vocab.atoms))


def worlds_op(
    req: schemas.WorldsRequest, store: ModelStore | None = None
) -> schemas.WorldsResponse:
    model = resolve_model(req.model, store)
    base = _base(model)
    weighted = isinstance(model, CpmModel)
    rows = []
    if req.of is None:
        for world, pi_value in base.pi_items():
            rows.append(
                schemas.WorldRow(
                    world=world.literals(),
                    pi=pi_value,
                    p=model.weight(world) if weighted else None,
                )
            )
    else:
        mask = models_mask(parse_formula(req.of, base.vocab), base.vocab)
        for world in sorted(base.vocab.worlds_of_mask(mask), key=lambda w: w.index):
            weight = model.weight(world) if weighted else None
            rows.append(
                schemas.WorldRow(
                    world=world.literals(),
                    pi=base.pi(world),
                    p=weight if weighted and base.pi(world) > 0 else None,
                )
            )
    return schemas.WorldsResponse(atoms=list(base.vocab.atoms), worlds=rows)


def query_op(
    req: schemas.QueryRequest, store: ModelStore | None = None
) -> schemas.QueryResponse:
    model = resolve_model(req.model, store)
    base = _base(model)
    vocab = base.vocab
    formula = parse_formula(req.formula, vocab)
    needs_given = req.kind in ("cond", "cf", "conditional")
    if needs_given and req.given is None:
        raise OperationError(f"query kind {req.kind!r} needs a condition")
    if not needs_given and req.given is not None:
        raise OperationError(f"query kind {req.kind!r} takes no condition")
    given = parse_formula(req.given, vocab) if req.given is not None else None
    out = schemas.QueryResponse(kind=req.kind, formula=req.formula, given=req.given)
    if req.kind == "believes":
        out.truth = base.believes(formula)
    elif req.kind == "status":
        out.status = str(base.status(formula))
    elif req.kind == "pi":
        out.value = base.pi_measure(formula)
    elif req.kind == "necessity":
        out.value = base.necessity(formula)
    elif req.kind == "conditional":
        out.truth = base.conditional(given, formula)
    elif req.kind == "p":
        out.value = _require_weights(model).factual_prob(formula)
    elif req.kind == "cond":
        try:
            out.value = _require_weights(model).conditional_prob(formula, given)
        except ZeroProbabilityConditionError as exc:
            out.defined = False
            out.reason = str(exc)
    elif req.kind == "cf":
        try:
            out.value = _require_weights(model).counterfactual_prob(formula, given)
        except UndefinedProbabilityError as exc:
            out.defined = False
            out.reason = str(exc)
    return out


def revise_op(
    req: schemas.ReviseRequest, store: ModelStore | None = None
) -> schemas.ReviseResponse:
    model = _require_weights(resolve_model(req.model, store))
    by = parse_formula(req.by, model.vocab)
    out = schemas.ReviseResponse(by=req.by)
    try:
        if req.natural:
            revised = model.natural_revision(by, demotion=req.demotion)
            dist = revised.factual_distribution()
            out.belief = [str(w) for w in sorted(
                revised.base.belief_worlds(), key=lambda w: w.index)]
            out.model_text = dumps_model(revised)
        else:
            dist = model.revise(by)
            out.belief = [str(w) for w in sorted(
                model.base.revised_belief_worlds(by), key=lambda w: w.index)]
    except UndefinedProbabilityError as exc:
        out.defined = False
        out.reason = str(exc)
        return out
    out.distribution = [
        schemas.DistributionRow(world=str(w), mass=m) for w, m in dist.items()
    ]
    out.total = dist.total
    return out


def _policy_from_request(req: schemas.ImageRequest, vocab) -> SelectionPolicy:
    if req.policy == "pl_uniform":
        return SelectionPolicy.pl_uniform()
    if req.policy == "centered":
        return SelectionPolicy.centered()
    if req.table is None:
        raise OperationError("explicit policy needs a selection table")
    return load_policy_table(req.table, vocab)


def image_op(
    req: schemas.ImageRequest, store: ModelStore | None = None
) -> schemas.ImageResponse:
    model = _require_weights(resolve_model(req.model, store))
    by = parse_formula(req.by, model.vocab)
    policy = _policy_from_request(req, model.vocab)
    if req.source is None:
        dist = model.factual_distribution()
    else:
        dist = WorldDistribution(
            model.vocab,
            {
                world_from_literals(row.world, model.vocab): row.mass
                for row in req.source
            },
        )
    out = schemas.ImageResponse(by=req.by, policy=req.policy)
    try:
        imaged = image(dist, policy, model, by)
    except (SelectionError, UndefinedProbabilityError) as exc:
        out.defined = False
        out.reason = str(exc)
        return out
    out.distribution = [
        schemas.DistributionRow(world=str(w), mass=m) for w, m in imaged.items()
    ]
    out.total = imaged.total
    return out


def simulate_op(
    req: schemas.SimulateRequest, store: ModelStore | None = None
) -> schemas.SimulateResponse:
    from ..simulation import build_family, build_sequence

    model = _require_weights(resolve_model(req.model, store))
    by = parse_formula(req.by, model.vocab)
    of = parse_formula(req.of, model.vocab)
    out = schemas.SimulateResponse(by=req.by, of=req.of)
    sequence = build_sequence(model)
    family = build_family(model)
    rank = sequence.most_possible_function(by)
    alpha = family.alpha_for(by)
    try:
        out.direct = model.counterfactual_prob(of, by)
    except UndefinedProbabilityError as exc:
        out.defined = False
        out.reason = str(exc)
        out.agree = rank is None and alpha is None
        return out
    out.rank = rank
    out.alpha = str(alpha) if alpha is not None else None
    out.via_sequence = sequence.revise(by, of)
    out.via_single = family.revise(by, of)
    out.max_disagreement = max(
        abs(out.direct - out.via_sequence), abs(out.direct - out.via_single)
    )
    out.agree = out.max_disagreement <= 1e-9
    return out


def check_op(
    req: schemas.CheckRequest, store: ModelStore | None = None
) -> schemas.CheckResponse:
    model = resolve_model(req.model, store)
    base = _base(model)
    pool = formula_pool(base.vocab, depth=req.depth, seed=req.seed, count=req.count)
    if req.suite == "theorems":
        _require_weights(model)
    reports = []
    if req.suite in ("agm", "all"):
        reports.append(check_agm(model, pool, keep_passes=req.keep_passes))
    if req.suite in ("theorems", "all") and isinstance(model, CpmModel):
        reports.append(
            check_theorems(model, pool, seed=req.seed, keep_passes=req.keep_passes)
        )
    return schemas.CheckResponse(
        passed=all(r.passed for r in reports),
        checks_run=sum(r.total_runs for r in reports),
        checks_failed=sum(r.total_failures for r in reports),
        reports=[r.to_dict() for r in reports],
    )


def generate_op(req: schemas.GenerateRequest) -> schemas.GenerateResponse:
    model = random_cpm(
        req.seed, n_atoms=req.atoms, n_ranks=req.ranks, completeness=req.complete
    )
    return schemas.GenerateResponse(
        model_text=dumps_model(model), summary=summarize(model)
    )
