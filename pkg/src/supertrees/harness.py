"""Claim-by-claim numerical verification over parameter grids.

Each claim maps to a checker that builds instances, evaluates the claimed
inequality or identity on every one of them and returns a :class:`Report`.
A strict inequality ``a > b`` counts as certified only when
``a.lower - b.upper > 10 * tolerance``; a certified reversal is a failure and
anything in between is inconclusive.
"""

from __future__ import annotations

import itertools
import random
import re
import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import families as fam
from .enumeration import (
    GUARD_RAIL,
    SupertreeClass,
    enumerate_supertrees,
    filter_class,
    rank_by_q,
)
from .errors import (
    BadParams,
    ResultHasDuplicateEdge,
    TooLarge,
    UnknownClaim,
)
from .hypergraph import (
    Hypergraph,
    Supertree,
    build,
    canonical_code,
    diameter,
    is_supertree,
    non_pendent_vertices,
    validate_supertree,
)
from .spectral import SolverOptions, SpectralResult, spectral_radius
from .surgery import (
    attach_paths,
    branch_collapse,
    edge_release,
    graft_step,
    is_branch_edge,
    is_non_pendent_edge,
    move_edges,
    two_switch,
)

PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"
CONSISTENT, COUNTEREXAMPLE = "CONSISTENT", "COUNTEREXAMPLE"

EXIT_CODES = {PASS: 0, CONSISTENT: 0, FAIL: 1, COUNTEREXAMPLE: 1, INCONCLUSIVE: 2}


@dataclass
class Report:
    claim_id: str
    params: dict
    rows: list[dict] = field(default_factory=list)
    verdict: str = INCONCLUSIVE
    runtime: float = 0.0
    solver: dict = field(default_factory=dict)
    seed: int | None = None

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = defaultdict(int)
        for row in self.rows:
            out[row.get("verdict", "")] += 1
        return dict(out)

    def to_dict(self) -> dict:
        return {"claim_id": self.claim_id, "params": self.params, "verdict": self.verdict,
                "runtime": self.runtime, "solver": self.solver, "seed": self.seed,
                "counts": self.counts(), "rows": self.rows}

    def summary(self) -> str:
        counts = ", ".join(f"{k}={v}" for k, v in sorted(self.counts().items()))
        return f"{self.claim_id}: {self.verdict} ({len(self.rows)} rows: {counts}; {self.runtime:.1f}s)"


def combine(verdicts: Iterable[str], empty: str = INCONCLUSIVE) -> str:
    verdicts = list(verdicts)
    if not verdicts:
        return empty
    if FAIL in verdicts:
        return FAIL
    if INCONCLUSIVE in verdicts:
        return INCONCLUSIVE
    return PASS


class Context:
    """Solver options, RNG and a per-run cache of spectral results keyed by code."""

    def __init__(self, opts: SolverOptions, seed: int):
        self.opts = opts
        self.seed = seed
        self.rng = random.Random(seed)
        self.margin = 10.0 * opts.tolerance
        self._cache: dict = {}

    def solve_vec(self, G: Hypergraph) -> SpectralResult:
        """Fresh solve; eigenvector entries follow this labeling of ``G``."""
        res = spectral_radius(G, "Q", self.opts)
        if is_supertree(G):
            self._cache.setdefault(canonical_code(G), res)
        return res

    def value(self, G: Hypergraph) -> SpectralResult:
        """Cached by isomorphism class; use the value and bracket only."""
        key = canonical_code(G) if is_supertree(G) else (G.k, G.n, G.edges)
        if key not in self._cache:
            self._cache[key] = spectral_radius(G, "Q", self.opts)
        return self._cache[key]

    def strictly_greater(self, a: SpectralResult, b: SpectralResult) -> tuple[str, float]:
        """Verdict for ``a > b`` plus the certified margin ``a.lower - b.upper``."""
        margin = a.lower - b.upper
        if margin > self.margin:
            return PASS, margin
        if b.lower - a.upper > self.margin:
            return FAIL, margin
        return INCONCLUSIVE, margin


# -- random instances -------------------------------------------------------


def random_supertree(m: int, k: int, rng: random.Random) -> Supertree:
    """Grow ``m`` edges, each at a uniformly chosen existing vertex."""
    edges = [list(range(k))]
    n = k
    for _ in range(m - 1):
        anchor = rng.randrange(n)
        edges.append([anchor, *range(n, n + k - 1)])
        n += k - 1
    return validate_supertree(build(k, n, edges))


def _pick_shape(rng, ks, m_min, m_max):
    return rng.choice(list(ks)), rng.randint(m_min, m_max)


def _ints(params: dict, key: str, default) -> list[int]:
    return parse_values(params.get(key, default))


def _int(params: dict, key: str, default: int) -> int:
    values = _ints(params, key, default)
    if len(values) != 1:
        raise BadParams(f"{key} takes a single value, got {values}")
    return values[0]


def _lemma_params(params: dict) -> tuple[int, tuple[int, ...], int]:
    instances = _int(params, "instances", 200)
    ks = tuple(_ints(params, "k", "2..4"))
    m_max = _int(params, "m_max", 6)
    if not ks or min(ks) < 2 or m_max < 1:
        raise BadParams("lemma grids need k >= 2 and m_max >= 1")
    if m_max * (max(ks) - 1) > GUARD_RAIL:
        raise TooLarge("instance sizes exceed the guard rail")
    return instances, ks, m_max


def _draw(ctx: Context, count: int, make: Callable[[], dict | None], budget: int = 200) -> list[dict]:
    rows = []
    attempts = 0
    while len(rows) < count:
        attempts += 1
        if attempts > budget * count:
            raise BadParams(f"could only build {len(rows)} of {count} valid instances")
        row = make()
        if row is not None:
            row["instance"] = len(rows)
            rows.append(row)
    return rows


def _gdesc(G: Hypergraph) -> str:
    return str(canonical_code(G))


def check_lem_2_4(ctx: Context, params: dict) -> list[dict]:
    """Moving edges onto a vertex with the largest eigenvector entry raises q."""
    count, ks, m_max = _lemma_params(params)
    rng = ctx.rng

    def make():
        k, m = _pick_shape(rng, ks, 2, m_max)
        G = random_supertree(m, k, rng)
        x = ctx.solve_vec(G)
        u = rng.randrange(G.n)
        outside = [j for j in range(G.m) if u not in G.edges[j]]
        if not outside:
            return None
        chosen = rng.sample(outside, rng.randint(1, min(3, len(outside))))
        moves = []
        for j in chosen:
            ok = [v for v in G.edges[j] if x.eigenvector[u] >= x.eigenvector[v]]
            if not ok:
                return None
            moves.append((j, rng.choice(ok)))
        try:
            H = move_edges(G, u, moves)
        except ResultHasDuplicateEdge:
            return None
        if not H.is_connected():
            return None
        before, after = x, ctx.value(H)
        verdict, margin = ctx.strictly_greater(after, before)
        return {"k": k, "m": m, "u": u, "moves": moves, "graph": _gdesc(G), "result": _gdesc(H),
                "q_before": before.value, "q_after": after.value, "margin": margin, "verdict": verdict}

    return _draw(ctx, count, make)


def _release_instances(G: Supertree):
    for j in range(G.m):
        if is_non_pendent_edge(G, j):
            for u in G.edges[j]:
                yield j, u


def check_lem_2_6_2_7(ctx: Context, params: dict, which: str) -> list[dict]:
    """Edge-releasing raises q (2.6) and never raises the diameter (2.7)."""
    mode = params.get("mode", "random")
    rows = []

    def evaluate(G, j, u, k, m):
        H = edge_release(G, j, u)
        row = {"k": k, "m": m, "edge": j, "u": u, "graph": _gdesc(G), "result": _gdesc(H)}
        if which == "lem2.6":
            before, after = ctx.value(G), ctx.value(H)
            verdict, margin = ctx.strictly_greater(after, before)
            row.update(q_before=before.value, q_after=after.value, margin=margin, verdict=verdict)
        else:
            d0, d1 = diameter(G), diameter(H)
            row.update(d_before=d0, d_after=d1, verdict=PASS if d1 <= d0 else FAIL)
        return row

    if mode == "exhaustive":
        ks = _ints(params, "k", 3)
        m_max = _int(params, "m_max", 5)
        for k in ks:
            for m in range(2, m_max + 1):
                for G in enumerate_supertrees(m, k):
                    for j, u in _release_instances(G):
                        rows.append(evaluate(G, j, u, k, m))
        for i, row in enumerate(rows):
            row["instance"] = i
        return rows

    count, ks, m_max = _lemma_params(params)
    rng = ctx.rng

    def make():
        k, m = _pick_shape(rng, ks, 2, m_max)
        G = random_supertree(m, k, rng)
        options = list(_release_instances(G))
        if not options:
            return None
        j, u = rng.choice(options)
        return evaluate(G, j, u, k, m)

    return _draw(ctx, count, make)


def check_lem_2_8(ctx: Context, params: dict) -> list[dict]:
    """Collapsing a branch edge raises q and never raises the diameter."""
    count, ks, m_max = _lemma_params(params)
    ks = tuple(k for k in ks if k >= 3)
    if not ks or m_max < 4:
        raise BadParams("branch edges need k >= 3 and m_max >= 4")
    rng = ctx.rng

    def make():
        k, m = _pick_shape(rng, ks, 4, m_max)
        G = random_supertree(m, k, rng)
        branch = [j for j in range(G.m) if is_branch_edge(G, j)]
        if not branch:
            return None
        j = rng.choice(branch)
        v1, v2 = rng.sample(non_pendent_vertices(G, j), 2)
        H = branch_collapse(G, j, (v1, v2))
        before, after = ctx.value(G), ctx.value(H)
        verdict, margin = ctx.strictly_greater(after, before)
        d0, d1 = diameter(G), diameter(H)
        if d1 > d0:
            verdict = FAIL
        return {"k": k, "m": m, "edge": j, "keep": [v1, v2], "graph": _gdesc(G), "result": _gdesc(H),
                "q_before": before.value, "q_after": after.value, "margin": margin,
                "d_before": d0, "d_after": d1, "verdict": verdict}

    return _draw(ctx, count, make)


def check_lem_2_9(ctx: Context, params: dict) -> list[dict]:
    """2-switch under the product hypotheses does not lower q; strictly raises it when a hypothesis is strict.

    A hypothesis counts as strict when its product gap exceeds ``strict_gap``
    (default 1e-6); otherwise only ``q' >= q - margin`` is asserted. Only a
    ``weak_share`` fraction of instances is drawn from the non-strict ones.
    """
    count, ks, m_max = _lemma_params(params)
    strict_gap = float(params.get("strict_gap", 1e-6))
    # most admissible switches only swap symmetric vertices; draw a minority of those
    weak_share = float(params.get("weak_share", 0.25))
    rng = ctx.rng

    def make():
        k, m = _pick_shape(rng, ks, 2, m_max)
        G = random_supertree(m, k, rng)
        x = ctx.solve_vec(G).eigenvector
        prod = lambda S: float(np.prod([x[v] for v in S]))
        strong, weak = [], []
        for e, f in itertools.permutations(range(G.m), 2):
            if set(G.edges[e]) & set(G.edges[f]):
                continue
            for r in range(1, k):
                for U1 in itertools.combinations(G.edges[e], r):
                    for V1 in itertools.combinations(G.edges[f], r):
                        U2 = [v for v in G.edges[e] if v not in U1]
                        V2 = [v for v in G.edges[f] if v not in V1]
                        g1, g2 = prod(U1) - prod(V1), prod(V2) - prod(U2)
                        if g1 >= 0 and g2 >= 0:
                            item = (e, f, list(U1), list(V1), g1, g2)
                            (strong if max(g1, g2) > strict_gap else weak).append(item)
        pool = strong if strong and rng.random() >= weak_share else weak
        rng.shuffle(pool)
        for e, f, U1, V1, g1, g2 in pool:
            try:
                H = two_switch(G, e, f, U1, V1)
            except ResultHasDuplicateEdge:
                continue
            if H.is_connected():
                break
        else:
            return None
        before, after = ctx.value(G), ctx.value(H)
        strict = max(g1, g2) > strict_gap
        if strict:
            verdict, margin = ctx.strictly_greater(after, before)
        else:
            margin = after.upper - before.lower
            verdict = PASS if after.value >= before.value - ctx.margin else FAIL
        return {"k": k, "m": m, "e": e, "f": f, "U1": sorted(U1), "V1": sorted(V1),
                "gap_U1_V1": g1, "gap_V2_U2": g2, "strict": strict, "graph": _gdesc(G),
                "result": _gdesc(H), "q_before": before.value, "q_after": after.value,
                "margin": margin, "verdict": verdict}

    return _draw(ctx, count, make)


def check_lem_2_10(ctx: Context, params: dict) -> list[dict]:
    """Grafting an edge from the shorter of two pendent paths (p >= q >= 1) lowers q."""
    count, ks, m_max = _lemma_params(params)
    if m_max < 3:
        raise BadParams("grafting needs m_max >= 3")
    rng = ctx.rng

    def make():
        k = rng.choice(ks)
        total = rng.randint(3, m_max)
        base_m = rng.randint(1, total - 2)
        q = rng.randint(1, (total - base_m) // 2)
        p = total - base_m - q
        H = random_supertree(base_m, k, rng)
        u = rng.randrange(H.n)
        G = validate_supertree(attach_paths(H, u, [p, q]))
        G2 = validate_supertree(graft_step(G, u, p, q))
        before, after = ctx.value(G), ctx.value(G2)
        verdict, margin = ctx.strictly_greater(before, after)
        return {"k": k, "m": G.m, "base_m": base_m, "u": u, "p": p, "q": q, "graph": _gdesc(G),
                "result": _gdesc(G2), "q_before": before.value, "q_after": after.value,
                "margin": margin, "verdict": verdict}

    return _draw(ctx, count, make)


# -- extremal theorems ------------------------------------------------------


def is_hypertree(G: Hypergraph) -> bool:
    """Every edge holds at least k-2 degree-1 vertices (power of an ordinary tree)."""
    deg = G.degrees
    return all(sum(1 for v in e if deg[v] == 1) >= G.k - 2 for e in G.edges)


def _argmax_row(ctx: Context, members: list[Supertree], expected: Supertree, **cell) -> dict:
    """Check that ``expected`` is the unique, bracket-separated maximiser of ``members``."""
    ranking = rank_by_q(members, ctx.opts, results=None) if members else []
    want = canonical_code(expected)
    row = dict(cell)
    row.update(class_size=len(ranking), expected_code=str(want))
    if not ranking:
        row.update(verdict=INCONCLUSIVE, note="empty class")
        return row
    top = ranking[0]
    row.update(argmax_code=str(top.code), q_first=top.value, lower_first=top.result.lower,
               upper_first=top.result.upper)
    if len(ranking) > 1:
        second = ranking[1]
        verdict, margin = ctx.strictly_greater(top.result, second.result)
        row.update(second_code=str(second.code), q_second=second.value, margin=margin)
    else:
        verdict, margin = PASS, float("inf")
        row.update(second_code="", q_second=float("nan"), margin=margin)
    if want not in {r.code for r in ranking}:
        row.update(verdict=FAIL, note="expected graph not in class")
    elif top.code != want:
        # a certified larger competitor refutes; an unresolved tie does not
        tied = [r.code for r in ranking if r.group == top.group]
        row.update(verdict=INCONCLUSIVE if want in tied else FAIL)
    else:
        row.update(verdict=verdict)
    return row


def _diameter_class(m: int, d: int, k: int) -> list[Supertree]:
    return filter_class(enumerate_supertrees(m, k, max_diameter=d), SupertreeClass("diameter", d))


def _theorem_grid(params: dict) -> list[dict]:
    return expand_grid({"k": params.get("k", "3,4"), "d": params.get("d", "3..5"),
                        "m": params.get("m", "d+1..d+3")})


def check_thm_3_1_3_3(ctx: Context, params: dict, which: str) -> list[dict]:
    rows = []
    for cell in _theorem_grid(params):
        m, d, k = cell["m"], cell["d"], cell["k"]
        if d < 3 or m < d + 1:
            raise BadParams(f"theorem needs d >= 3 and m >= d+1, got m={m}, d={d}")
        if m * (k - 1) > GUARD_RAIL:
            raise TooLarge(f"cell m={m}, k={k} exceeds the guard rail")
        members = _diameter_class(m, d, k)
        if which == "thm3.1":
            members = [T for T in members if is_hypertree(T)]
        rows.append(_argmax_row(ctx, members, fam.s1(m, d, k), m=m, d=d, k=k))
    return rows


def check_thm_3_4(ctx: Context, params: dict) -> list[dict]:
    """d = 3: S1 > S3 when m = 4; top two are (S1, S4) when m >= 5."""
    k_values = _ints(params, "k", 3)
    m_values = _ints(params, "m", "4..7")
    rows = []
    for k in k_values:
        for m in m_values:
            if m * (k - 1) > GUARD_RAIL:
                raise TooLarge(f"cell m={m}, k={k} exceeds the guard rail")
            members = _diameter_class(m, 3, k)
            ranking = rank_by_q(members, ctx.opts)
            codes = [r.code for r in ranking]
            row = {"m": m, "d": 3, "k": k, "class_size": len(ranking),
                   "ranking": [str(c) for c in codes[:3]],
                   "q_values": [r.value for r in ranking[:3]]}
            if m == 4:
                a, b = canonical_code(fam.s1(m, 3, k)), canonical_code(fam.s3(m, 3, k))
                same_class = set(codes) == {a, b}
                res = {r.code: r.result for r in ranking}
                verdict, margin = ctx.strictly_greater(res[a], res[b]) if same_class else (FAIL, float("nan"))
                row.update(expected=["s1", "s3"], class_is_s1_s3=same_class, margin=margin, verdict=verdict)
            else:
                want = [canonical_code(fam.s1(m, 3, k)), canonical_code(fam.s4(m, k))]
                if codes[:2] != want:
                    verdict, margin = FAIL, float("nan")
                    # only a tie with the expected order left unresolved is inconclusive
                    if len(ranking) >= 2 and set(codes[:2]) == set(want) and ranking[0].group == ranking[1].group:
                        verdict = INCONCLUSIVE
                else:
                    v1, m1 = ctx.strictly_greater(ranking[0].result, ranking[1].result)
                    v2, m2 = (ctx.strictly_greater(ranking[1].result, ranking[2].result)
                              if len(ranking) > 2 else (PASS, float("inf")))
                    verdict, margin = combine([v1, v2]), min(m1, m2)
                row.update(expected=["s1", "s4"], margin=margin, verdict=verdict)
            rows.append(row)
    return rows


def _feasible_nm(m_max: int, k: int, m_min: int = 1):
    for m in range(m_min, m_max + 1):
        yield m * (k - 1) + 1, m


def check_thm_4_2(ctx: Context, params: dict) -> list[dict]:
    k = _int(params, "k", 3)
    m_max = _int(params, "m_max", 6)
    rows = []
    for n, m in _feasible_nm(m_max, k, 2):
        graphs = enumerate_supertrees(m, k)
        for p in range(2, m + 1):
            members = filter_class(graphs, SupertreeClass("pendent_edges", p))
            if not members:
                rows.append({"n": n, "m": m, "p": p, "k": k, "class_size": 0,
                             "verdict": PASS, "note": "no supertree has this many pendent edges"})
                continue
            rows.append(_argmax_row(ctx, members, fam.t1(n, p, k), n=n, m=m, p=p, k=k))
    return rows


def _degree_classes(m_max: int, k: int):
    for m in range(2, m_max + 1):
        groups: dict[tuple, list[Supertree]] = defaultdict(list)
        for T in enumerate_supertrees(m, k):
            groups[T.degree_multiset()].append(T)
        for pi in sorted(groups, reverse=True):
            yield m, pi, groups[pi]


def check_thm_4_8(ctx: Context, params: dict) -> list[dict]:
    k = _int(params, "k", 3)
    m_max = _int(params, "m_max", 5)
    rows = []
    for m, pi, members in _degree_classes(m_max, k):
        G_star, _ = fam.bfs_supertree(fam.DegreeSequence(pi, k))
        rows.append(_argmax_row(ctx, members, G_star, m=m, k=k, degrees=list(pi)))
    return rows


def check_thm_4_10(ctx: Context, params: dict) -> list[dict]:
    """Max over G(n,q,k) is the BFS-supertree of the pendant degree sequence."""
    k = _int(params, "k", 3)
    m_max = _int(params, "m_max", 5)
    rows = []
    for n, m in _feasible_nm(m_max, k, 2):
        graphs = enumerate_supertrees(m, k)
        for q in range(n - m + 1, n):
            members = filter_class(graphs, SupertreeClass("pendent_vertices", q))
            pi = fam.pendant_degree_sequence(n, q, k)
            G_star, _ = fam.bfs_supertree(pi)
            row = _argmax_row(ctx, members, G_star, n=n, m=m, q=q, k=k, degrees=list(pi.degrees))
            if members and row.get("argmax_code"):
                top = next(T for T in members if str(canonical_code(T)) == row["argmax_code"])
                row["argmax_degrees_match"] = top.degree_multiset() == pi.degrees
                if not row["argmax_degrees_match"] and row["verdict"] == PASS:
                    row["verdict"] = FAIL
            rows.append(row)
    return rows


def check_lem_4_4_4_5(ctx: Context, params: dict, which: str) -> list[dict]:
    """Degree/eigenvector monotonicity at the maximiser of every degree class."""
    k = _int(params, "k", 3)
    m_max = _int(params, "m_max", 5)
    rows = []
    for m, pi, members in _degree_classes(m_max, k):
        top = rank_by_q(members, ctx.opts)[0].graph
        res = spectral_radius(top, "Q", ctx.opts)
        x, deg = res.eigenvector, top.degrees
        eps = 10.0 * max(res.residual, ctx.opts.tolerance)
        bad, unsure = 0, 0
        for u in range(top.n):
            for v in range(top.n):
                if u == v:
                    continue
                diff = x[u] - x[v]
                if which == "lem4.4" and deg[u] > deg[v]:
                    if diff <= -eps:
                        bad += 1
                    elif diff <= eps:
                        unsure += 1
                if which == "lem4.5":
                    if diff > eps and deg[u] < deg[v]:
                        bad += 1
                    elif abs(diff) <= eps and deg[u] != deg[v]:
                        unsure += 1
        verdict = FAIL if bad else INCONCLUSIVE if unsure else PASS
        rows.append({"m": m, "k": k, "degrees": list(pi), "argmax_code": str(canonical_code(top)),
                     "pairs": top.n * (top.n - 1), "violations": bad, "unresolved": unsure,
                     "eps": eps, "verdict": verdict})
    return rows


def _wrap(fn, *extra):
    return lambda ctx, params: fn(ctx, params, *extra)


CLAIMS: dict[str, Callable[[Context, dict], list[dict]]] = {
    "lem2.4": check_lem_2_4,
    "lem2.6": _wrap(check_lem_2_6_2_7, "lem2.6"),
    "lem2.7": _wrap(check_lem_2_6_2_7, "lem2.7"),
    "lem2.8": check_lem_2_8,
    "lem2.9": check_lem_2_9,
    "lem2.10": check_lem_2_10,
    "thm3.1": _wrap(check_thm_3_1_3_3, "thm3.1"),
    "thm3.3": _wrap(check_thm_3_1_3_3, "thm3.3"),
    "thm3.4": check_thm_3_4,
    "thm4.2": check_thm_4_2,
    "lem4.4": _wrap(check_lem_4_4_4_5, "lem4.4"),
    "lem4.5": _wrap(check_lem_4_4_4_5, "lem4.5"),
    "thm4.8": check_thm_4_8,
    "thm4.10": check_thm_4_10,
}


def verify(claim_id: str, params: dict | None = None, opts: SolverOptions | None = None,
           seed: int = 0) -> Report:
    """Run one claim check and fold its rows into a verdict."""
    if claim_id not in CLAIMS:
        raise UnknownClaim(f"unknown claim {claim_id!r}; known: {', '.join(CLAIMS)}")
    opts = opts or SolverOptions()
    params = dict(params or {})
    ctx = Context(opts, seed)
    start = time.perf_counter()
    rows = CLAIMS[claim_id](ctx, params)
    report = Report(claim_id, _jsonable(params), rows, combine(r["verdict"] for r in rows),
                    time.perf_counter() - start, opts.to_dict(), seed)
    return report


# -- conjecture scan --------------------------------------------------------


def _scan_cell(ctx: Context, m: int, d: int, k: int) -> dict:
    ranking = rank_by_q(_diameter_class(m, d, k), ctx.opts)
    target = canonical_code(fam.s2(m, d, k))
    row = {"m": m, "d": d, "k": k, "class_size": len(ranking), "s2_code": str(target)}
    at = {r.code: i for i, r in enumerate(ranking)}
    row["s2_rank"] = at.get(target, -1) + 1
    row["s2_q"] = ranking[at[target]].value if target in at else float("nan")
    for label, i in (("first", 0), ("second", 1), ("third", 2)):
        if i < len(ranking):
            row[f"{label}_code"] = str(ranking[i].code)
            row[f"{label}_q"] = ranking[i].value
        else:
            row[f"{label}_code"] = ""
            row[f"{label}_q"] = float("nan")
    if len(ranking) < 2:
        row.update(gap_first_second=float("nan"), gap_second_third=float("nan"),
                   second_is_s2=False, verdict=INCONCLUSIVE)
        return row
    row["gap_first_second"] = ranking[0].result.lower - ranking[1].result.upper
    row["gap_second_third"] = (ranking[1].result.lower - ranking[2].result.upper
                               if len(ranking) > 2 else float("inf"))
    row["second_is_s2"] = ranking[1].code == target
    separated = row["gap_first_second"] > ctx.margin and row["gap_second_third"] > ctx.margin
    if row["second_is_s2"] and separated:
        row["verdict"] = CONSISTENT
    elif not row["second_is_s2"] and target in at and at[target] >= 1 \
            and ranking[1].result.lower - ranking[at[target]].result.upper > ctx.margin:
        row["verdict"] = COUNTEREXAMPLE
    elif target in at and at[target] == 0 and row["gap_first_second"] > ctx.margin:
        row["verdict"] = COUNTEREXAMPLE
    else:
        row["verdict"] = INCONCLUSIVE
    return row


def conjecture_scan(d_range: Iterable[int], m_range, k_range: Iterable[int],
                    opts: SolverOptions | None = None) -> Report:
    """Rank every cell S(m,d,k) and test whether S2 comes second.

    ``m_range`` is an iterable of ints or a callable ``d -> iterable``.
    """
    opts = opts or SolverOptions()
    ctx = Context(opts, 0)
    start = time.perf_counter()
    rows = []
    cells = []
    for k in k_range:
        for d in d_range:
            ms = m_range(d) if callable(m_range) else m_range
            for m in ms:
                if d < 4 or m < d + 1:
                    raise BadParams(f"the scan needs d >= 4 and m >= d+1, got m={m}, d={d}")
                if m * (k - 1) > GUARD_RAIL:
                    raise TooLarge(f"cell m={m}, k={k} exceeds the guard rail")
                cells.append((m, d, k))
    for m, d, k in cells:
        rows.append(_scan_cell(ctx, m, d, k))
    verdicts = [r["verdict"] for r in rows]
    if not verdicts:
        verdict = INCONCLUSIVE
    elif COUNTEREXAMPLE in verdicts:
        verdict = COUNTEREXAMPLE
    elif all(v == CONSISTENT for v in verdicts):
        verdict = CONSISTENT
    else:
        verdict = INCONCLUSIVE
    return Report("conj3.5", {"cells": [list(c) for c in cells]}, rows, verdict,
                  time.perf_counter() - start, opts.to_dict(), None)


# -- grids ------------------------------------------------------------------

_TERM = re.compile(r"^\s*(?:(?P<name>[a-z_]\w*)\s*(?P<sign>[+-])\s*)?(?P<num>-?\d+)\s*$|^\s*(?P<bare>[a-z_]\w*)\s*$")


def _endpoint(text: str, env: dict) -> int:
    match = _TERM.match(text)
    if not match:
        raise BadParams(f"cannot parse range endpoint {text!r}")
    if match.group("bare"):
        name = match.group("bare")
        if name not in env:
            raise BadParams(f"range endpoint refers to unknown {name!r}")
        return int(env[name])
    num = int(match.group("num"))
    name = match.group("name")
    if name is None:
        return num
    if name not in env:
        raise BadParams(f"range endpoint refers to unknown {name!r}")
    return int(env[name]) + (num if match.group("sign") == "+" else -num)


def parse_values(text, env: dict | None = None) -> list[int]:
    """``"3"``, ``"3,4"``, ``"3..5"`` or ``"d+1..d+3"`` (inclusive) into a list of ints."""
    env = env or {}
    if isinstance(text, int):
        return [text]
    if not isinstance(text, str):
        return [int(v) for v in text]
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(_endpoint(lo, env), _endpoint(hi, env) + 1))
        elif part.strip():
            out.append(_endpoint(part, env))
    return out


def expand_grid(grid: dict) -> list[dict]:
    """Cartesian product of the grid keys, in order, resolving dependent ranges."""
    cells = [{}]
    for key, raw in grid.items():
        cells = [{**c, key: v} for c in cells for v in parse_values(raw, c)]
    return cells


def parse_grid(text: str) -> dict:
    """``"k=3,4;d=3..5;m=d+1..d+3"`` into an ordered dict of raw specs."""
    grid = {}
    for part in re.split(r"[;\s]+", text.strip()):
        if not part:
            continue
        key, sep, value = part.partition("=")
        if not sep or not key:
            raise BadParams(f"grid entry {part!r} is not key=value")
        grid[key.strip()] = value.strip()
    return grid


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj
