"""Instance generators, brute-force witness search, end-to-end pipelines.

A pipeline run builds the instance for its configuration, evaluates the
matching coloring, searches a witness, runs the extractor, verifies
descent, subterm provenance and the colour contract, and records it all in
a trace.  Traces are plain dicts with a fixed key order and deterministic
content, so identical configurations produce byte-identical JSON.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Optional

from .colorings import (
    BaseColor,
    ColoringInstance,
    color_to_json,
    color_triple,
    color_tuple,
)
from .epsilon_terms import (
    EpsilonOf,
    EpsilonSpace,
    EpsilonTerm,
    OmegaPow,
    eterm_to_json,
)
from .errors import (
    ArityError,
    ColourMismatchError,
    NotDescendingWitnessError,
    RamwopError,
)
from .extraction import (
    HomogeneousWitness,
    extract_epsilon_b_path,
    extract_large,
    extract_rt3,
    extract_rtn,
    subterm_check,
    witness_holds,
)
from .hindman import (
    Exhausted,
    build_f,
    check_property_p,
    extract_hindman,
    find_monochromatic_blocks,
    flatten,
)
from .omega_terms import OmegaSpace, OmegaTerm, nest, term_to_json
from .orders import (
    DescendingSequence,
    LinearOrder,
    builtin_order,
    element_to_json,
    verify_descending,
)

PIPELINES = ("rt3", "rtn", "large", "hindman")

RT_KINDS = ("constant-delta", "staircase")
LARGE_KINDS = ("omega-power", "pure-epsilon", "shallow-power")


@dataclass
class PipelineConfig:
    pipeline: str
    order: str
    kind: str
    h: int = 2
    n: int = 3
    k: int = 2
    window: int = 100
    size: int = 10
    count: int = 8
    budget: int = 200000
    seed: int = 0  # reserved; affects nothing semantic

    def validate(self) -> None:
        if self.pipeline not in PIPELINES:
            raise ArityError(f"unknown pipeline {self.pipeline!r}")
        kinds = LARGE_KINDS if self.pipeline == "large" else RT_KINDS
        if self.kind not in kinds:
            raise ArityError(f"kind {self.kind!r} not valid for pipeline {self.pipeline}")
        if self.pipeline == "rtn" and self.h < 2:
            raise ArityError(f"iterated pipeline needs h >= 2, got {self.h}")
        for name in ("window", "size", "count", "budget"):
            if getattr(self, name) < 0:
                raise ArityError(f"{name} must be non-negative")


def _witness_for(order: LinearOrder):
    if order.witness is None:
        raise NotDescendingWitnessError(f"order {order.name} has no descending witness")
    return order.witness


def _rt_term_at(order: LinearOrder, kind: str, i: int) -> OmegaTerm:
    w = _witness_for(order)
    if kind == "constant-delta":
        return OmegaTerm(order, 1, (w(0), w(i + 1)))
    if kind == "staircase":
        t, r = divmod(i, 3)
        if r == 0:
            entries = (w(t), w(2 * t), w(4 * t))
        elif r == 1:
            entries = (w(t), w(2 * t), w(4 * t + 1))
        else:
            entries = (w(t), w(2 * t + 1), w(4 * t + 2))
        return OmegaTerm(order, 1, entries)
    raise ArityError(f"unknown instance kind {kind!r}")


def _layered_term(order: LinearOrder, s: int, n: int) -> EpsilonTerm:
    w = _witness_for(order)
    if s == n:
        return EpsilonTerm(order, (EpsilonOf(w(n)), EpsilonOf(w(n))))
    return EpsilonTerm(order, (EpsilonOf(w(s)), OmegaPow(_layered_term(order, s + 1, n))))


def _large_term_at(order: LinearOrder, kind: str, i: int) -> EpsilonTerm:
    w = _witness_for(order)
    if kind == "pure-epsilon":
        return EpsilonTerm(order, (EpsilonOf(w(i)),))
    if kind == "omega-power":
        return _layered_term(order, 0, i)
    if kind == "shallow-power":
        inner = EpsilonTerm(order, (EpsilonOf(w(0)), EpsilonOf(w(i + 1))))
        return EpsilonTerm(order, (OmegaPow(inner),))
    raise ArityError(f"unknown instance kind {kind!r}")


def gen_instance(pipeline: str, order_name: str, kind: str, h: int = 2) -> DescendingSequence:
    """Build the descending-sequence instance for a pipeline and kind; the
    base order must carry a descending witness."""
    order = builtin_order(order_name)
    _witness_for(order)
    label = f"{pipeline}:{kind}:{order_name}"
    if pipeline in ("rt3", "hindman"):
        return DescendingSequence(
            OmegaSpace(order, 1), lambda i: _rt_term_at(order, kind, i), label
        )
    if pipeline == "rtn":
        if h < 2:
            raise ArityError(f"iterated instances need h >= 2, got {h}")
        return DescendingSequence(
            OmegaSpace(order, h),
            lambda i: nest(_rt_term_at(order, kind, i), h - 1),
            label,
        )
    if pipeline == "large":
        return DescendingSequence(
            EpsilonSpace(order), lambda i: _large_term_at(order, kind, i), label
        )
    raise ArityError(f"unknown pipeline {pipeline!r}")


def find_homogeneous(
    color_fn,
    n: int,
    window: int,
    size: int,
    budget: int,
    variant: str = "",
    stats: Optional[dict] = None,
):
    """Lexicographically least homogeneous subset of [0, window) of the
    requested size, by deterministic backtracking; Exhausted when the budget
    runs out or no such set exists."""
    if size < n:
        raise ArityError(f"witness size {size} below arity {n}")
    if stats is None:
        stats = {}
    memo: dict = {}
    spent = [0]

    class _BudgetExceeded(Exception):
        pass

    def colour_of(tup):
        if tup not in memo:
            if spent[0] >= budget:
                raise _BudgetExceeded
            spent[0] += 1
            memo[tup] = color_fn(*tup)
        return memo[tup]

    def extend(chosen: list, colour):
        if len(chosen) == size:
            return list(chosen), colour
        start = chosen[-1] + 1 if chosen else 0
        for cand in range(start, window):
            if window - cand < size - len(chosen):
                break
            new_colour = colour
            consistent = True
            if len(chosen) + 1 >= n:
                for prev in combinations(chosen, n - 1):
                    c = colour_of((*prev, cand))
                    if new_colour is None:
                        new_colour = c
                    elif c != new_colour:
                        consistent = False
                        break
            if not consistent:
                continue
            chosen.append(cand)
            found = extend(chosen, new_colour)
            if found is not None:
                return found
            chosen.pop()
        return None

    result = None
    exhausted_reason = "space"
    if size <= window:
        try:
            result = extend([], None)
        except _BudgetExceeded:
            exhausted_reason = "budget"
    stats["colour_evaluations"] = spent[0]
    if result is None:
        return Exhausted(spent[0], exhausted_reason)
    indices, colour = result
    return HomogeneousWitness(tuple(indices), colour, n, variant)


def _render_term(t) -> object:
    if isinstance(t, OmegaTerm):
        return term_to_json(t)
    return eterm_to_json(t)


def _descent_verdict(order: LinearOrder, elements: list) -> dict:
    if len(elements) < 2:
        return {"status": "ok", "index": None}
    v = verify_descending(order, elements, len(elements))
    return {"status": v.status, "index": v.index}


def _new_trace(cfg: PipelineConfig) -> dict:
    return {
        "pipeline": cfg.pipeline,
        "config": asdict(cfg),
        "instance_prefix": [],
        "witness": None,
        "colour": None,
        "extracted": [],
        "verdicts": {
            "search": None,
            "witness_verified": None,
            "descending": None,
            "subterm": None,
            "colour_contract": None,
            "property_p": None,
            "error": None,
            "verified": False,
        },
        "stats": {},
    }


def run_pipeline(cfg: PipelineConfig) -> dict:
    """Run one reduction end to end and record everything in a trace dict.
    Errors surface as the `error` verdict, never silently."""
    cfg.validate()
    trace = _new_trace(cfg)
    verdicts = trace["verdicts"]
    try:
        if cfg.pipeline == "hindman":
            _run_hindman(cfg, trace)
        else:
            _run_ramsey(cfg, trace)
    except RamwopError as exc:
        verdicts["error"] = f"{type(exc).__name__}: {exc}"
        verdicts["verified"] = False
    return trace


def _run_ramsey(cfg: PipelineConfig, trace: dict) -> None:
    verdicts = trace["verdicts"]
    stats = trace["stats"]
    alpha = gen_instance(cfg.pipeline, cfg.order, cfg.kind, cfg.h)
    order = builtin_order(cfg.order)
    inst = ColoringInstance.from_sequence(alpha)

    if cfg.pipeline == "rtn":
        arity = cfg.h + 2
        color_fn = lambda *tup: color_tuple(inst, cfg.h, tup)
    else:
        arity = 3
        color_fn = lambda i, j, k: color_triple(inst, i, j, k)

    search_stats: dict = {}
    found = find_homogeneous(
        color_fn, arity, cfg.window, cfg.size, cfg.budget, cfg.pipeline, search_stats
    )
    stats.update(search_stats)
    if isinstance(found, Exhausted):
        verdicts["search"] = "exhausted"
        stats["exhausted_reason"] = found.reason
        return
    verdicts["search"] = "found"
    prefix_len = found.indices[-1] + 1
    trace["instance_prefix"] = [_render_term(alpha.term(i)) for i in range(prefix_len)]
    trace["witness"] = {
        "indices": list(found.indices),
        "colour": color_to_json(found.colour),
        "arity": found.arity,
    }
    trace["colour"] = color_to_json(found.colour)
    verdicts["witness_verified"] = witness_holds(color_fn, found)

    if cfg.pipeline == "rt3":
        extracted = extract_rt3(alpha, found, cfg.count)
    elif cfg.pipeline == "rtn":
        extracted = extract_rtn(alpha, cfg.h, found, cfg.count)
    else:
        extracted, path = _run_large_extraction(alpha, found, cfg.count)
        stats["extractor"] = path
    trace["extracted"] = [element_to_json(x) for x in extracted]
    verdicts["colour_contract"] = True
    verdicts["descending"] = _descent_verdict(order, extracted)
    verdicts["subterm"] = subterm_check(alpha, extracted, prefix_len)
    verdicts["verified"] = bool(
        verdicts["witness_verified"]
        and verdicts["descending"]["status"] == "ok"
        and verdicts["subterm"]
        and len(extracted) >= cfg.count
    )


def _run_large_extraction(alpha, witness: HomogeneousWitness, count: int):
    if witness.colour is BaseColor.B_DROP:
        return extract_epsilon_b_path(alpha, witness, count), "b-path"
    if witness.colour is BaseColor.GOOD:
        return extract_large(alpha, witness, count), "large"
    raise ColourMismatchError(f"no extractor handles witness colour {witness.colour!r}")


def _run_hindman(cfg: PipelineConfig, trace: dict) -> None:
    verdicts = trace["verdicts"]
    stats = trace["stats"]
    alpha = gen_instance("hindman", cfg.order, cfg.kind)
    order = builtin_order(cfg.order)
    F = flatten(alpha, 2 * cfg.window + 20)
    trace["instance_prefix"] = [_render_term(alpha.term(i)) for i in range(len(F.term_lengths))]

    blocks = find_monochromatic_blocks(F, cfg.n, cfg.k, cfg.size, cfg.window, cfg.budget)
    if isinstance(blocks, Exhausted):
        verdicts["search"] = "exhausted"
        stats["g_evaluations"] = blocks.evaluations
        stats["exhausted_reason"] = blocks.reason
        return
    verdicts["search"] = "found"

    f = build_f(F, blocks, cfg.n, cfg.k)
    trace["witness"] = {"blocks": blocks.to_json(), "colour": f.colour}
    trace["colour"] = {"g": f.colour}
    verdicts["witness_verified"] = True

    pp = check_property_p(F, f, 2 * cfg.window // 3)
    verdicts["property_p"] = {"status": pp.status, "index": pp.index}

    extracted = extract_hindman(F, f, cfg.count)
    trace["extracted"] = [element_to_json(x) for x in extracted]
    verdicts["colour_contract"] = True
    verdicts["descending"] = _descent_verdict(order, extracted)
    verdicts["subterm"] = subterm_check(alpha, extracted, len(F.term_lengths))
    verdicts["verified"] = bool(
        pp
        and verdicts["descending"]["status"] == "ok"
        and verdicts["subterm"]
        and len(extracted) >= cfg.count
    )


def trace_to_json(trace: dict) -> str:
    return json.dumps(trace, indent=2, sort_keys=False) + "\n"


def verify_trace_text(text: str) -> int:
    """Re-run the embedded configuration and insist on byte-identical output.
    Returns the exit code the embedded outcome warrants, or 1 on mismatch."""
    try:
        data = json.loads(text)
        cfg = PipelineConfig(**data["config"])
    except (ValueError, TypeError, KeyError):
        return 1
    fresh = run_pipeline(cfg)
    if trace_to_json(fresh) != text:
        return 1
    verdicts = data.get("verdicts", {})
    if verdicts.get("verified"):
        return 0
    if verdicts.get("search") == "exhausted":
        return 2
    return 1


def exit_code_for(trace: dict) -> int:
    verdicts = trace["verdicts"]
    if verdicts["verified"]:
        return 0
    if verdicts["search"] == "exhausted":
        return 2
    return 1
