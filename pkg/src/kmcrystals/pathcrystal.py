"""Littelmann path model: LS paths, root operators and crystal graphs.

A path is stored as a tuple of ``(direction, duration)`` segments starting at
the origin.  Directions are integral weights, durations positive rationals
summing to one.  Translations never need to be stored, so the root operators
only reflect the directions of the affected stretch and split at most one
segment.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Optional, Sequence

from .errors import (
    BudgetExceeded,
    NonIntegralMinimum,
    NotDominant,
    NotFiniteType,
    NotReducedWord,
    NotSimplyLaced,
)
from .rootdata import GCM, Weight, _norm, is_dominant_integral, is_reduced, reflect

ONE = Fraction(1)


@dataclass(frozen=True, slots=True)
class LSPath:
    segments: tuple
    shape: Weight

    def endpoint(self) -> Weight:
        n = len(self.shape)
        return tuple(
            _norm(sum(a * d[k] for d, a in self.segments)) for k in range(n)
        )

    def __repr__(self) -> str:
        parts = ", ".join(f"{list(d)}*{a}" for d, a in self.segments)
        return f"LSPath([{parts}])"


def wt(path: LSPath) -> Weight:
    return path.endpoint()


def canonical(segments: Iterable, shape: Weight) -> LSPath:
    out = []
    for d, a in segments:
        if a == 0:
            continue
        if out and out[-1][0] == d:
            out[-1] = (d, out[-1][1] + a)
        else:
            out.append((d, a))
    return LSPath(tuple(out), shape)


def straight_path(lam: Weight) -> LSPath:
    """The highest weight element ``pi_lam``; ``lam = 0`` gives the constant path."""
    if not is_dominant_integral(lam):
        raise NotDominant(f"{lam} is not dominant integral")
    return LSPath(((tuple(int(c) for c in lam), ONE),), tuple(lam))


def _heights(segments, k: int) -> list:
    h = [0]
    for d, a in segments:
        h.append(h[-1] + a * d[k])
    return h


def height_min(path: LSPath, i: int) -> int | Fraction:
    """Minimum of ``t -> path(t)(alpha_i^vee)`` over ``[0, 1]``."""
    return _norm(min(_heights(path.segments, i - 1)))


def _integral_min(path: LSPath, i: int):
    h = _heights(path.segments, i - 1)
    m = min(h)
    if Fraction(m).denominator != 1:
        raise NonIntegralMinimum(f"minimum {m} of h_{i} is not integral in {path}")
    return h, int(m)


def epsilon(path: LSPath, i: int) -> int:
    _, m = _integral_min(path, i)
    return -m


def phi(path: LSPath, i: int) -> int:
    h, m = _integral_min(path, i)
    return int(h[-1]) - m


def _check_local_minima(path: LSPath) -> None:
    for k in range(len(path.shape)):
        h = _heights(path.segments, k)
        for j in range(1, len(h)):
            left = h[j - 1] if j >= 1 else None
            right = h[j + 1] if j + 1 < len(h) else None
            is_min = (left is None or h[j] <= left) and (right is None or h[j] <= right)
            if is_min and Fraction(h[j]).denominator != 1:
                raise NonIntegralMinimum(
                    f"local minimum {h[j]} of h_{k + 1} is not integral in {path}"
                )


def _reflect_dir(g: GCM, i: int, d: tuple) -> tuple:
    return reflect(g, i, d) if d[i - 1] else d


def f_op(g: GCM, path: LSPath, i: int) -> Optional[LSPath]:
    """Littelmann's lowering operator; ``None`` encodes 0."""
    g.check_index(i)
    k = i - 1
    segs = path.segments
    h = _heights(segs, k)
    m = min(h)
    if h[-1] - m < 1:
        return None
    p = max(j for j, v in enumerate(h) if v == m)
    q = next(j for j in range(p + 1, len(h)) if h[j] >= m + 1)
    d, a = segs[q - 1]
    cut = (m + 1 - h[q - 1]) / Fraction(d[k])
    new = list(segs[:p])
    new.extend((_reflect_dir(g, i, d2), a2) for d2, a2 in segs[p:q - 1])
    new.append((_reflect_dir(g, i, d), cut))
    new.append((d, a - cut))
    new.extend(segs[q:])
    out = canonical(new, path.shape)
    _check_local_minima(out)
    return out


def e_op(g: GCM, path: LSPath, i: int) -> Optional[LSPath]:
    """Littelmann's raising operator; ``None`` encodes 0."""
    g.check_index(i)
    k = i - 1
    segs = path.segments
    h = _heights(segs, k)
    m = min(h)
    if m > -1:
        return None
    q = next(j for j, v in enumerate(h) if v == m)
    p = max(j for j in range(q) if h[j] >= m + 1)
    d, a = segs[p]
    cut = (m + 1 - h[p]) / Fraction(d[k])
    new = list(segs[:p])
    new.append((d, cut))
    new.append((_reflect_dir(g, i, d), a - cut))
    new.extend((_reflect_dir(g, i, d2), a2) for d2, a2 in segs[p + 1:q])
    new.extend(segs[q:])
    out = canonical(new, path.shape)
    _check_local_minima(out)
    return out


def f_power(g: GCM, path: Optional[LSPath], i: int, b: int) -> Optional[LSPath]:
    for _ in range(b):
        if path is None:
            return None
        path = f_op(g, path, i)
    return path


def e_power(g: GCM, path: Optional[LSPath], i: int, b: int) -> Optional[LSPath]:
    for _ in range(b):
        if path is None:
            return None
        path = e_op(g, path, i)
    return path


def apply_f_sequence(g: GCM, path: Optional[LSPath], letters: Sequence[int]) -> Optional[LSPath]:
    """Apply ``f_{letters[0]}`` first, then ``f_{letters[1]}``, and so on."""
    for i in letters:
        if path is None:
            return None
        path = f_op(g, path, i)
    return path


def monomial_apply(g: GCM, lam: Weight, monomial: Sequence[tuple]) -> Optional[LSPath]:
    """``f_{i_1}^{b_1} ... f_{i_t}^{b_t} pi_lam``; the rightmost factor acts first."""
    path = straight_path(lam)
    for i, b in reversed(list(monomial)):
        path = f_power(g, path, i, b)
        if path is None:
            return None
    return path


def epsilon_by_raising(g: GCM, path: LSPath, i: int) -> int:
    """``max{n : e_i^n(path) != 0}`` by repeated application."""
    n = 0
    while (path := e_op(g, path, i)) is not None:
        n += 1
    return n


def phi_by_lowering(g: GCM, path: LSPath, i: int) -> int:
    n = 0
    while (path := f_op(g, path, i)) is not None:
        n += 1
    return n


# ---------------------------------------------------------------------------
# Crystal graphs


class CrystalGraph:
    """Closure of ``pi_lam`` under the lowering operators.

    ``nodes`` is in breadth-first discovery order (colors in increasing index
    order); ``edges[(x, i)]`` is ``f_i x``.
    """

    def __init__(self, g: GCM, shape: Weight, nodes: tuple, edges: dict):
        self.g = g
        self.shape = shape
        self.nodes = nodes
        self.edges = edges
        self.highest = nodes[0]

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, path) -> bool:
        return path in self.index

    @cached_property
    def index(self) -> dict:
        return {x: k for k, x in enumerate(self.nodes)}

    @cached_property
    def raising(self) -> dict:
        return {(y, i): x for (x, i), y in self.edges.items()}

    @cached_property
    def weights(self) -> dict:
        return {x: x.endpoint() for x in self.nodes}

    @cached_property
    def epsilons(self) -> dict:
        return {x: tuple(epsilon(x, i) for i in self.g.nodes) for x in self.nodes}

    @cached_property
    def phis(self) -> dict:
        return {x: tuple(phi(x, i) for i in self.g.nodes) for x in self.nodes}

    @cached_property
    def by_weight(self) -> dict:
        out = defaultdict(list)
        for x in self.nodes:
            out[self.weights[x]].append(x)
        return dict(out)

    def f(self, x: LSPath, i: int) -> Optional[LSPath]:
        return self.edges.get((x, i))

    def e(self, x: LSPath, i: int) -> Optional[LSPath]:
        return self.raising.get((x, i))

    def sorted_nodes(self) -> list:
        return sorted(self.nodes, key=lambda x: x.segments)

    def character(self) -> dict:
        return {w: len(xs) for w, xs in self.by_weight.items()}

    def highest_weight_elements(self) -> list:
        return [x for x in self.nodes if not any(self.epsilons[x])]


def generate_crystal(g: GCM, lam: Weight, budget: Optional[int] = None) -> CrystalGraph:
    """Breadth-first closure of ``{pi_lam}`` under all ``f_i``.

    Outside finite type a node ``budget`` is mandatory.
    """
    if not g.is_finite and budget is None:
        raise NotFiniteType("pass a node budget to generate outside finite type")
    return _generate(g, tuple(lam), budget)


@lru_cache(maxsize=256)
def _generate(g: GCM, lam: Weight, budget: Optional[int]) -> CrystalGraph:
    top = straight_path(lam)
    seen = {top}
    order = [top]
    edges = {}
    frontier = [top]
    while frontier:
        nxt = []
        for x in frontier:
            for i in g.nodes:
                y = f_op(g, x, i)
                if y is None:
                    continue
                edges[(x, i)] = y
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
                    if budget is not None and len(order) > budget:
                        raise BudgetExceeded(f"more than {budget} nodes in B({lam})")
        frontier = nxt
    return CrystalGraph(g, lam, tuple(order), edges)


def check_stembridge(graph: CrystalGraph) -> list[str]:
    """Axioms S1 and S2 on every applicable pair; returns the violations."""
    g = graph.g
    if not g.is_simply_laced:
        raise NotSimplyLaced("Stembridge axioms are for simply-laced types")
    eps, phis = graph.epsilons, graph.phis
    bad = []
    for x in graph.nodes:
        for i in g.nodes:
            y = graph.e(x, i)
            for j in g.nodes:
                if i == j:
                    continue
                if y is not None:
                    diff = eps[y][j - 1] - eps[x][j - 1]
                    if diff not in (0, 1):
                        bad.append(f"S1: eps_{j} jumps by {diff} along e_{i} at {x}")
                    elif diff == 1 and g.a(i, j) == 0:
                        bad.append(f"S1: eps_{j} grows along e_{i} with a_ij = 0 at {x}")
                if (
                    y is not None
                    and eps[x][i - 1] > 0
                    and eps[y][j - 1] == eps[x][j - 1] > 0
                ):
                    ej = graph.e(x, j)
                    left = graph.e(ej, i) if ej is not None else None
                    right = graph.e(y, j)
                    if left is None or left != right:
                        bad.append(f"S2: e_{i} e_{j} != e_{j} e_{i} at {x}")
                    if ej is None or phis[ej][i - 1] != phis[x][i - 1]:
                        bad.append(f"S2: phi_{i}(e_{j} x) != phi_{i}(x) at {x}")
    return bad


# ---------------------------------------------------------------------------
# Demazure subcrystals


def _require_reduced(g: GCM, w: Sequence[int]) -> None:
    if not is_reduced(g, w):
        raise NotReducedWord(f"{tuple(w)} is not reduced")


def demazure_subcrystal(g: GCM, lam: Weight, w: Sequence[int]) -> frozenset:
    """Iterated string closure along the reduced word ``w`` (rightmost letter first)."""
    _require_reduced(g, w)
    current = {straight_path(lam)}
    for i in reversed(tuple(w)):
        nxt = set()
        for x in current:
            while x is not None:
                nxt.add(x)
                x = f_op(g, x, i)
        current = nxt
    return frozenset(current)


def extremal_element(g: GCM, lam: Weight, w: Sequence[int]) -> LSPath:
    """The element of weight ``w lam`` reached by full strings along ``w``."""
    _require_reduced(g, w)
    path = straight_path(lam)
    mu = tuple(lam)
    for i in reversed(tuple(w)):
        c = max(0, int(mu[i - 1]))
        path = f_power(g, path, i, c)
        mu = reflect(g, i, mu)
    return path


# ---------------------------------------------------------------------------
# Export


def _fmt(x) -> str:
    return str(_norm(x))


def to_dot(graph: CrystalGraph, name: str = "crystal") -> str:
    """DOT text with nodes in lexicographic canonical order."""
    order = graph.sorted_nodes()
    ids = {x: f"n{k}" for k, x in enumerate(order)}
    lines = [f"digraph {name} {{"]
    for x in order:
        label = "(" + ",".join(_fmt(c) for c in graph.weights[x]) + ")"
        lines.append(f'  {ids[x]} [label="{label}"];')
    for x in order:
        for i in graph.g.nodes:
            y = graph.edges.get((x, i))
            if y is not None:
                lines.append(f'  {ids[x]} -> {ids[y]} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
