"""Exhaustive generation of non-isomorphic supertrees, class filters and ranking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadParams, NoConvergence, TooLarge
from .hypergraph import (
    CanonicalCode,
    Supertree,
    build,
    canonical_code,
    diameter,
    pendent_counts,
    validate_supertree,
)
from .spectral import SolverOptions, SpectralResult, spectral_radius

GUARD_RAIL = 40  # max m(k-1), i.e. n - 1


def _grow(T: Supertree, anchor: int) -> Supertree:
    k, n = T.k, T.n
    edges = list(T.edges) + [(anchor, *range(n, n + k - 1))]
    return validate_supertree(build(k, n + k - 1, edges))


def _anchor_candidates(T: Supertree) -> list[int]:
    # degree-1 vertices of one edge are interchangeable; keep the lowest
    out, seen_edges = [], set()
    for v in range(T.n):
        inc = T.incidence[v]
        if len(inc) == 1:
            if inc[0] in seen_edges:
                continue
            seen_edges.add(inc[0])
        out.append(v)
    return out


def enumerate_supertrees(m: int, k: int, *, max_diameter: int | None = None,
                         allow_large: bool = False) -> list[Supertree]:
    """All k-uniform supertrees with ``m`` edges up to isomorphism, sorted by code.

    Grows one pendent edge at a time from a single edge and keeps one
    representative per canonical code at every level. ``max_diameter`` prunes
    during growth, which is exact because deleting a pendent edge never
    increases the diameter.
    """
    if m < 1 or k < 2:
        raise BadParams(f"need m >= 1 and k >= 2, got m={m}, k={k}")
    if m * (k - 1) > GUARD_RAIL and not allow_large:
        raise TooLarge(f"m(k-1) = {m * (k - 1)} exceeds the guard rail {GUARD_RAIL}")
    level = {canonical_code(T): T for T in [validate_supertree(build(k, k, [range(k)]))]}
    for _ in range(m - 1):
        nxt: dict[CanonicalCode, Supertree] = {}
        for T in level.values():
            for v in _anchor_candidates(T):
                G = _grow(T, v)
                if max_diameter is not None and diameter(G) > max_diameter:
                    continue
                code = canonical_code(G)
                if code not in nxt:
                    nxt[code] = G
        level = nxt
    return [level[c] for c in sorted(level)]


@dataclass(frozen=True)
class SupertreeClass:
    """Selector for one of the classes S(m,d,k), T(n,p,k), G(n,q,k), S_pi.

    ``kind`` is ``all``, ``diameter``, ``pendent_edges``, ``pendent_vertices``
    or ``degree_sequence``; ``value`` is an int, or a degree tuple for the last.
    """

    kind: str = "all"
    value: object = None

    KINDS = ("all", "diameter", "pendent_edges", "pendent_vertices", "degree_sequence")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise BadParams(f"unknown class selector {self.kind!r}")
        if self.kind == "degree_sequence":
            object.__setattr__(self, "value", tuple(sorted(self.value, reverse=True)))
        elif self.kind != "all":
            if not isinstance(self.value, int) or self.value < 0:
                raise BadParams(f"{self.kind} needs a non-negative integer, got {self.value!r}")

    def contains(self, T: Supertree) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "diameter":
            return diameter(T) == self.value
        if self.kind == "pendent_edges":
            return pendent_counts(T)[0] == self.value
        if self.kind == "pendent_vertices":
            return pendent_counts(T)[1] == self.value
        return T.degree_multiset() == self.value

    @classmethod
    def parse(cls, text: str) -> "SupertreeClass":
        """Parse ``all``, ``diameter=3``, ``p=2``, ``q=7`` or ``degrees=3,2,1,...``."""
        text = text.strip()
        if text in ("", "all"):
            return cls()
        key, _, raw = text.partition("=")
        aliases = {"d": "diameter", "diameter": "diameter", "p": "pendent_edges",
                   "pendent_edges": "pendent_edges", "q": "pendent_vertices",
                   "pendent_vertices": "pendent_vertices", "degrees": "degree_sequence",
                   "degree_sequence": "degree_sequence", "pi": "degree_sequence"}
        if key.strip() not in aliases or not raw:
            raise BadParams(f"cannot parse class selector {text!r}")
        kind = aliases[key.strip()]
        try:
            if kind == "degree_sequence":
                return cls(kind, tuple(int(x) for x in raw.split(",")))
            return cls(kind, int(raw))
        except ValueError:
            raise BadParams(f"cannot parse class selector {text!r}") from None


def filter_class(graphs: Iterable[Supertree], cls: SupertreeClass) -> list[Supertree]:
    return [T for T in graphs if cls.contains(T)]


@dataclass(frozen=True)
class Ranked:
    code: CanonicalCode
    graph: Supertree
    result: SpectralResult
    group: int  # tie-group index; equal for bracket-overlapping neighbours

    @property
    def value(self) -> float:
        return self.result.value


class RankingError(NoConvergence):
    pass


def tie_threshold(opts: SolverOptions) -> float:
    return 10.0 * opts.tolerance


def rank_by_q(graphs: Sequence[Supertree], opts: SolverOptions | None = None,
              tensor: str = "Q", results: dict | None = None) -> list[Ranked]:
    """Sort by spectral radius, descending, with tie-groups.

    Neighbours whose brackets come within ``10 * tolerance`` of each other
    share a tie-group; groups are numbered from 0 in rank order.
    """
    opts = opts or SolverOptions()
    scored = []
    for T in graphs:
        code = canonical_code(T)
        try:
            res = results[code] if results and code in results else spectral_radius(T, tensor, opts)
        except NoConvergence as exc:
            raise RankingError(f"graph {code}: {exc}", exc.lower, exc.upper, exc.iterations) from exc
        scored.append((code, T, res))
    scored.sort(key=lambda item: (-item[2].value, item[0]))
    out: list[Ranked] = []
    group = -1
    for i, (code, T, res) in enumerate(scored):
        if i == 0 or scored[i - 1][2].lower - res.upper > tie_threshold(opts):
            group += 1
        out.append(Ranked(code, T, res, group))
    return out
