"""Benchmark families and the timing harness.

Each family generates monomials through the expression frontend, so a
benchmark case is exactly what a user would type.  Cases are
deterministic in (family, size, trial): the PRNG is ``random.Random``
(Mersenne Twister) seeded per case.

Families, parameterized by size k:

* ``sym-frees``      — one totally symmetric rank-k tensor with
                       shuffled free indices;
* ``nosym-dummies``  — one rank-2k tensor with no symmetry and k dummy
                       pairs wired at random;
* ``cyclic-dummies`` — two rank-k cyclically symmetric tensors, the k
                       dummies contracted between them at random;
* ``riemann``        — k factors with Riemann-tensor slot symmetries,
                       all 4k slots contracted by a uniformly random
                       perfect matching with random leg orientation;
* ``totalsym-frustrated`` / ``totalsym-random`` — two totally symmetric
                       rank-k tensors, contracted pairwise in a fixed
                       shuffled wiring (frustrated) or by a random
                       matching over all slots (random);
* ``pairwise-frustrated`` / ``pairwise-random`` — the same wirings but
                       with the weaker pairwise symmetry
                       +(1,3)(2,4), +(3,5)(4,6), ... on each factor.
"""

from __future__ import annotations

import csv
import hashlib
import random
import sys
import time
from dataclasses import dataclass

import numpy as np

from .canon_baseline import butler_portugal
from .canon_fast import EngineTimeout
from .frontend import Registry, parse, build_problem, render
from .oracle import enumerate_group, enumerate_label_group, brute_force_canonicalize

FAMILIES = [
    "sym-frees",
    "nosym-dummies",
    "cyclic-dummies",
    "riemann",
    "totalsym-frustrated",
    "totalsym-random",
    "pairwise-frustrated",
    "pairwise-random",
]

CSV_COLUMNS = ["family", "n", "trial", "seed", "engine", "is_zero", "result_digest", "elapsed_us", "max_configs"]


@dataclass
class BenchCase:
    family: str
    size: int
    trial: int
    seed: int
    expression: str
    declarations: str
    registry: Registry
    monomial: object
    problem: object


def _names(count, prefix="x"):
    width = len(str(count))
    return [f"{prefix}{i:0{width}d}" for i in range(1, count + 1)]


def _pairwise_gens_text(k):
    cycles = []
    for j in range(1, k - 2, 2):
        cycles.append(f"+({j},{j + 2})({j + 1},{j + 3})")
    return ",".join(cycles)


def _matched_expression(rng, ranks, matching_slots=None):
    """Contract the slots of len(ranks) factors by a random perfect matching.

    Returns (factor index strings).  ``matching_slots`` restricts the
    matching to a precomputed list of (slot, slot) global pairs.
    """
    total = sum(ranks)
    if matching_slots is None:
        slots = list(range(total))
        rng.shuffle(slots)
        matching_slots = [(slots[2 * i], slots[2 * i + 1]) for i in range(total // 2)]
    names = _names(total // 2, "d")
    tokens = [None] * total
    for name, (a, b) in zip(names, matching_slots):
        if rng.random() < 0.5:
            a, b = b, a
        tokens[a] = (name, "d")
        tokens[b] = (name, "u")
    return tokens


def _tokens_to_factor(name, tokens):
    piece = name
    run_var, run = None, []
    for tok, var in tokens:
        if var != run_var:
            if run:
                piece += ("_{" if run_var == "d" else "^{") + " ".join(run) + "}"
            run_var, run = var, []
        run.append(tok)
    if run:
        piece += ("_{" if run_var == "d" else "^{") + " ".join(run) + "}"
    return piece


def generate(family, size, trial=0):
    """Build one deterministic benchmark case."""
    seed = int.from_bytes(hashlib.sha256(f"{family}/{size}/{trial}".encode()).digest()[:4], "big")
    rng = random.Random(seed)
    k = size
    if family == "sym-frees":
        decls = f"tensor T rank={k} sym=1..{k}"
        names = _names(k, "f")
        rng.shuffle(names)
        expr = "T_{" + " ".join(names) + "}"
    elif family == "nosym-dummies":
        decls = f"tensor T rank={2 * k}"
        tokens = _matched_expression(rng, [2 * k])
        expr = _tokens_to_factor("T", tokens)
    elif family == "cyclic-dummies":
        cyc = "+(" + ",".join(str(i) for i in range(1, k + 1)) + ")"
        decls = f'tensor T rank={k} gens="{cyc}"\ntensor U rank={k} gens="{cyc}"'
        names = _names(k, "d")
        pi1 = list(names)
        pi2 = list(names)
        rng.shuffle(pi1)
        rng.shuffle(pi2)
        expr = "T_{" + " ".join(pi1) + "} U^{" + " ".join(pi2) + "}"
    elif family == "riemann":
        decls = 'tensor R rank=4 gens="-(1,2),+(1,3)(2,4),-(3,4)"'
        tokens = _matched_expression(rng, [4] * k)
        parts = [_tokens_to_factor("R", tokens[4 * i : 4 * i + 4]) for i in range(k)]
        expr = " ".join(parts)
    elif family in ("totalsym-frustrated", "totalsym-random", "pairwise-frustrated", "pairwise-random"):
        if family.startswith("totalsym"):
            decls = f"tensor T rank={k} sym=1..{k}\ntensor U rank={k} sym=1..{k}"
        else:
            gens = _pairwise_gens_text(k)
            gopt = f' gens="{gens}"' if gens else ""
            decls = f"tensor T rank={k}{gopt}\ntensor U rank={k}{gopt}"
        if family.endswith("frustrated"):
            # every dummy has one leg on each factor, in shuffled order
            pi1 = list(range(k))
            pi2 = list(range(k))
            rng.shuffle(pi1)
            rng.shuffle(pi2)
            matching = [(pi1[i], k + pi2[i]) for i in range(k)]
            tokens = _matched_expression(rng, [k, k], matching_slots=matching)
        else:
            tokens = _matched_expression(rng, [k, k])
        expr = _tokens_to_factor("T", tokens[:k]) + " " + _tokens_to_factor("U", tokens[k:])
    else:
        raise ValueError(f"unknown family {family!r}")
    registry = Registry()
    registry.declare_all(decls)
    monomial = parse(expr, registry)
    problem = build_problem(monomial, registry)
    return BenchCase(family, size, trial, seed, expr, decls, registry, monomial, problem)


def run_case(case, engine, time_budget=None):
    """Time one engine on one case; returns a CSV row dict.

    With a ``time_budget`` (seconds) the engine aborts once the budget
    is exhausted, raising :class:`EngineTimeout`.
    """
    problem = case.problem
    trace = {}
    if engine == "fast":
        t0 = time.perf_counter()
        deadline = None if time_budget is None else time.monotonic() + time_budget
        result = problem.canonicalize(trace=trace, deadline=deadline)
        elapsed = time.perf_counter() - t0
    elif engine == "baseline":
        L = problem.label_bsgs()
        t0 = time.perf_counter()
        deadline = None if time_budget is None else time.monotonic() + time_budget
        result = butler_portugal(problem.g_init, problem.S, L, trace=trace, deadline=deadline)
        elapsed = time.perf_counter() - t0
    else:
        raise ValueError(f"unknown engine {engine!r}")
    digest = result_digest(result, case)
    return {
        "family": case.family,
        "n": case.problem.n,
        "trial": case.trial,
        "seed": case.seed,
        "engine": engine,
        "is_zero": int(result.is_zero),
        "result_digest": digest,
        "elapsed_us": int(elapsed * 1e6),
        "max_configs": trace.get("max_configs", 1),
    }, result


def result_digest(result, case):
    text = render(result, case.monomial, case.registry)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def oracle_result(case, cap=10**6):
    """Brute-force result, or None when the groups are too big."""
    problem = case.problem
    try:
        S_enum = enumerate_group(problem.S, cap=cap)
        L_enum = enumerate_label_group(problem.classes, problem.n, cap=max(1, cap // max(1, len(S_enum))))
    except ValueError:
        return None
    return brute_force_canonicalize(problem.g_init, S_enum, L_enum)


def fit_exponent(sizes, times):
    """Least-squares slope of log(time) vs log(size), largest half of sizes."""
    pts = sorted(zip(sizes, times))
    half = pts[len(pts) // 2 :]
    if len(half) < 2:
        return float("nan")
    xs = np.log([p[0] for p in half])
    ys = np.log([max(p[1], 1e-9) for p in half])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def run_bench(families, sizes, trials, engines, out, time_budget=10.0, verbose=True):
    """Run the benchmark grid and write CSV rows to the stream ``out``.

    An engine that exceeds ``time_budget`` seconds on any trial of a
    size is aborted mid-run and skipped for all larger sizes of that
    family.  Returns the fitted per-(family, engine) scaling exponents.
    """
    out.write("# tensor-monomial canonicalization benchmark\n")
    out.write("# prng: python random.Random (Mersenne Twister), seed = sha256(family/size/trial)[:4]\n")
    out.write("# riemann contraction: uniform random perfect matching over all slots, leg orientation uniform per pair\n")
    writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    skipped = set()  # (family, engine)
    series = {}  # (family, engine) -> (sizes, times)
    for family in families:
        for size in sizes:
            cases = [generate(family, size, t) for t in range(trials)]
            for engine in engines:
                if (family, engine) in skipped:
                    continue
                worst = 0.0
                timed_out = False
                for case in cases:
                    try:
                        row, _ = run_case(case, engine, time_budget=time_budget)
                    except EngineTimeout:
                        timed_out = True
                        break
                    writer.writerow(row)
                    worst = max(worst, row["elapsed_us"] / 1e6)
                if not timed_out:
                    sizes_l, times_l = series.setdefault((family, engine), ([], []))
                    sizes_l.append(size)
                    times_l.append(worst)
                if timed_out or worst > time_budget:
                    skipped.add((family, engine))
                    if verbose:
                        print(f"# {family}/{engine}: over {time_budget:.1f}s at size {size}, skipping larger sizes", file=sys.stderr)
    exponents = {}
    for key, (ss, ts) in series.items():
        if len(ss) >= 2:
            exponents[key] = fit_exponent(ss, ts)
    return exponents
