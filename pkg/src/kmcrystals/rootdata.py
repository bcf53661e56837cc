"""Generalized Cartan matrices, weights, roots and the Weyl group action.

Conventions
-----------
* Nodes are labelled ``1..n`` as in Kac's tables; every public function that
  takes a node index expects that range.
* ``a[i][j] = <alpha_i^vee, alpha_j>``, so the simple root ``alpha_j`` written
  in the fundamental-weight basis is column ``j`` of the matrix.
* A weight is a plain tuple of exact rationals (``int`` or ``Fraction``) giving
  its coefficients on the fundamental weights; ``lam[i - 1]`` is the pairing
  of ``lam`` with ``alpha_i^vee``.
* A Weyl word ``(j_1, ..., j_r)`` stands for ``s_{j_1} ... s_{j_r}``; acting on
  a weight, ``s_{j_r}`` is applied first.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import networkx as nx

from . import _linalg
from .errors import (
    IndexOutOfRange,
    NotFiniteType,
    NotGCM,
    NotSymmetrizable,
)

Weight = tuple
WeylWord = tuple


def _norm(x) -> int | Fraction:
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def as_weight(coords: Iterable) -> Weight:
    """Normalize an iterable of numbers (or strings like ``"3/2"``) to a weight."""
    return tuple(_norm(Fraction(c)) for c in coords)


def parse_weight(text: str) -> Weight:
    """Parse ``"1,2"`` or ``"1/2, 0"`` into a weight."""
    text = text.strip().strip("[]()")
    if not text:
        return ()
    return as_weight(part.strip().strip("'\"") for part in text.split(","))


def add(x: Weight, y: Weight) -> Weight:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Weight, y: Weight) -> Weight:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: Weight) -> Weight:
    return tuple(_norm(c * a) for a in x)


def zero(n: int) -> Weight:
    return (0,) * n


def is_integral(lam: Weight) -> bool:
    return all(Fraction(c).denominator == 1 for c in lam)


def is_dominant(lam: Weight) -> bool:
    return all(c >= 0 for c in lam)


def is_dominant_integral(lam: Weight) -> bool:
    return is_integral(lam) and is_dominant(lam)


def is_regular_dominant(lam: Weight) -> bool:
    return all(c >= 1 for c in lam)


# ---------------------------------------------------------------------------
# Cartan matrices


@dataclass(frozen=True)
class GCM:
    """A validated generalized Cartan matrix.

    Equality and hashing only look at ``matrix``; the other fields are derived.
    """

    matrix: tuple
    type_class: str = field(compare=False)
    label: Optional[str] = field(compare=False)
    symmetrizer: Optional[tuple] = field(compare=False)

    @property
    def n(self) -> int:
        return len(self.matrix)

    @property
    def nodes(self) -> range:
        return range(1, self.n + 1)

    @property
    def is_finite(self) -> bool:
        return self.type_class == "finite"

    @property
    def is_simply_laced(self) -> bool:
        a = self.matrix
        return all(
            a[i][j] == a[j][i] and a[i][j] in (0, -1)
            for i in range(self.n)
            for j in range(self.n)
            if i != j
        )

    def a(self, i: int, j: int) -> int:
        """The entry ``a_{i,j}`` for 1-based nodes."""
        return self.matrix[i - 1][j - 1]

    def check_index(self, i: int) -> int:
        if not isinstance(i, int) or not 1 <= i <= self.n:
            raise IndexOutOfRange(f"node {i!r} not in 1..{self.n}")
        return i

    def __repr__(self) -> str:
        return f"GCM({self.label or self.matrix}, {self.type_class})"


def _components(matrix) -> list[list[int]]:
    n = len(matrix)
    graph = nx.Graph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(
        (i, j) for i in range(n) for j in range(i + 1, n) if matrix[i][j] != 0
    )
    return sorted(sorted(c) for c in nx.connected_components(graph))


def _submatrix(matrix, nodes: Sequence[int]):
    return tuple(tuple(matrix[i][j] for j in nodes) for i in nodes)


def _symmetrizer(matrix) -> Optional[tuple]:
    n = len(matrix)
    d: list[Optional[Fraction]] = [None] * n
    for comp in _components(matrix):
        d[comp[0]] = Fraction(1)
        queue = deque([comp[0]])
        while queue:
            i = queue.popleft()
            for j in comp:
                if j == i or matrix[i][j] == 0:
                    continue
                dj = d[i] * matrix[i][j] / matrix[j][i]
                if d[j] is None:
                    d[j] = dj
                    queue.append(j)
                elif d[j] != dj:
                    return None
        smallest = min(d[i] for i in comp)
        for i in comp:
            d[i] /= smallest
    return tuple(_norm(x) for x in d)


def _classify_component(sub) -> str:
    k = len(sub)
    minors = {}
    for size in range(1, k + 1):
        for nodes in itertools.combinations(range(k), size):
            minors[nodes] = _linalg.det(_submatrix(sub, nodes))
    proper_positive = all(v > 0 for key, v in minors.items() if len(key) < k)
    full = minors[tuple(range(k))]
    if proper_positive and full > 0:
        return "finite"
    if proper_positive and full == 0:
        return "affine"
    return "indefinite"


def _standard_matrix(family: str, n: int) -> list[list[int]]:
    """Cartan matrices with Kac's node numbering (0-based rows here)."""
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if family == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif family == "B":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)  # alpha_n short
    elif family == "C":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)  # alpha_n long
    elif family == "D":
        for i in range(n - 3):
            link(i, i + 1)
        link(n - 3, n - 2)
        link(n - 3, n - 1)
    elif family == "E":
        branch = {6: 2, 7: 3, 8: 4}[n]
        for i in range(n - 2):
            link(i, i + 1)
        link(branch, n - 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif family == "G":
        link(0, 1, -1, -3)
    else:
        raise KeyError(family)
    return a


_FINITE_RANKS = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}

# Preferred label order when several families share a matrix up to relabelling.
_LABEL_ORDER = "ABDCEFG"


def _finite_candidates(n: int) -> list[str]:
    out = []
    for fam in _LABEL_ORDER:
        if not _FINITE_RANKS[fam](n):
            continue
        if fam == "D" and n == 3:
            continue  # D3 is A3; only produced on explicit request
        out.append(f"{fam}{n}")
    return out


def _digraph(matrix) -> nx.DiGraph:
    g = nx.DiGraph()
    n = len(matrix)
    g.add_nodes_from(range(n))
    for i in range(n):
        for j in range(n):
            if i != j and matrix[i][j] != 0:
                g.add_edge(i, j, a=matrix[i][j])
    return g


def _same_up_to_relabel(m1, m2) -> bool:
    if len(m1) != len(m2):
        return False
    if tuple(map(tuple, m1)) == tuple(map(tuple, m2)):
        return True
    return nx.is_isomorphic(
        _digraph(m1), _digraph(m2), edge_match=lambda x, y: x["a"] == y["a"]
    )


def _label_component(sub, type_class: str) -> Optional[str]:
    k = len(sub)
    if type_class == "finite":
        exact = [
            lab for lab in _finite_candidates(k)
            if tuple(map(tuple, _standard_matrix(lab[0], k))) == sub
        ]
        if exact:
            return exact[0]
        for lab in _finite_candidates(k):
            if _same_up_to_relabel(sub, _standard_matrix(lab[0], k)):
                return lab
        return None
    if type_class == "affine":
        for lab in _finite_candidates(k - 1):
            if _same_up_to_relabel(sub, _untwisted_affine(lab)):
                return f"{lab}^(1)"
        return None
    return None


def validate_gcm(matrix: Sequence[Sequence[int]]) -> GCM:
    """Check the GCM axioms, classify the type, and compute a symmetrizer."""
    try:
        rows = [list(r) for r in matrix]
    except TypeError as exc:
        raise NotGCM("matrix must be a sequence of rows") from exc
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotGCM("matrix must be square and nonempty")
    for r in rows:
        for v in r:
            if isinstance(v, bool) or Fraction(v).denominator != 1:
                raise NotGCM(f"non-integer entry {v!r}")
    rows = [[int(v) for v in r] for r in rows]
    for i in range(n):
        if rows[i][i] != 2:
            raise NotGCM(f"diagonal entry a[{i + 1}][{i + 1}] = {rows[i][i]} != 2")
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] > 0:
                raise NotGCM(f"positive off-diagonal entry at ({i + 1}, {j + 1})")
            if (rows[i][j] == 0) != (rows[j][i] == 0):
                raise NotGCM(f"a[{i + 1}][{j + 1}] = 0 but a[{j + 1}][{i + 1}] != 0")
    mat = tuple(tuple(r) for r in rows)
    d = _symmetrizer(mat)
    if d is None:
        raise NotSymmetrizable("no positive symmetrizer exists")

    classes, labels = [], []
    for comp in _components(mat):
        sub = _submatrix(mat, comp)
        cls = _classify_component(sub)
        classes.append(cls)
        labels.append(_label_component(sub, cls))
    if all(c == "finite" for c in classes):
        type_class = "finite"
    elif all(c in ("finite", "affine") for c in classes):
        type_class = "affine"
    else:
        type_class = "indefinite"
    label = "x".join(labels) if all(labels) else None
    return GCM(mat, type_class, label, d)


_LABEL_RE = re.compile(r"^([A-G])(\d+)(\^\(1\))?$")


@lru_cache(maxsize=None)
def cartan_matrix(label: str) -> GCM:
    """Build a GCM from a Cartan type label like ``"A3"``, ``"D4"``, ``"A1^(1)"``.

    Products are written ``"A2xA1"``.
    """
    label = label.strip()
    if "x" in label:
        parts = [cartan_matrix(p) for p in label.split("x")]
        n = sum(p.n for p in parts)
        rows = [[0] * n for _ in range(n)]
        off = 0
        for p in parts:
            for i in range(p.n):
                for j in range(p.n):
                    rows[off + i][off + j] = p.matrix[i][j]
            off += p.n
        g = validate_gcm(rows)
        return GCM(g.matrix, g.type_class, label, g.symmetrizer)
    m = _LABEL_RE.match(label)
    if not m:
        raise KeyError(f"unknown Cartan type {label!r}")
    fam, n, affine = m.group(1), int(m.group(2)), m.group(3)
    if not _FINITE_RANKS[fam](n):
        raise KeyError(f"unknown Cartan type {label!r}")
    if affine:
        g = validate_gcm(_untwisted_affine(f"{fam}{n}"))
    else:
        g = validate_gcm(_standard_matrix(fam, n))
    return GCM(g.matrix, g.type_class, label, g.symmetrizer)


def gcm_from_json(obj) -> GCM:
    """Accept ``{"type": "A3"}`` or ``{"matrix": [[...]]}``."""
    if "type" in obj:
        return cartan_matrix(obj["type"])
    return validate_gcm(obj["matrix"])


def _untwisted_affine(finite_label: str) -> list[list[int]]:
    g = validate_gcm(_standard_matrix(finite_label[0], int(finite_label[1:])))
    theta_coeffs = highest_root_coefficients(g)
    theta = coeffs_to_weight(g, theta_coeffs)
    n = g.n
    rows = [[0] * (n + 1) for _ in range(n + 1)]
    rows[0][0] = 2
    for j in range(1, n + 1):
        rows[0][j] = -coroot_pairing(g, simple_root(g, j), theta_coeffs)
        rows[j][0] = -theta[j - 1]
        for k in range(1, n + 1):
            rows[j][k] = g.matrix[j - 1][k - 1]
    return rows


# ---------------------------------------------------------------------------
# Weights, roots, reflections


def pair(g: GCM, lam: Weight, i: int) -> int | Fraction:
    """``lam(alpha_i^vee)``."""
    g.check_index(i)
    return lam[i - 1]


@lru_cache(maxsize=None)
def simple_root(g: GCM, j: int) -> Weight:
    g.check_index(j)
    return tuple(g.matrix[i][j - 1] for i in range(g.n))


def rho(g: GCM) -> Weight:
    return (1,) * g.n


def fundamental_weight(g: GCM, i: int) -> Weight:
    g.check_index(i)
    return tuple(1 if k == i - 1 else 0 for k in range(g.n))


def coeffs_to_weight(g: GCM, coeffs: Sequence) -> Weight:
    """``sum_j coeffs[j] alpha_j`` in the fundamental-weight basis."""
    return tuple(
        _norm(sum(g.matrix[i][j] * coeffs[j] for j in range(g.n))) for i in range(g.n)
    )


def reflect(g: GCM, i: int, lam: Weight) -> Weight:
    """``s_i(lam) = lam - lam(alpha_i^vee) alpha_i``."""
    g.check_index(i)
    c = lam[i - 1]
    if c == 0:
        return lam
    col = i - 1
    return tuple(_norm(x - c * g.matrix[k][col]) for k, x in enumerate(lam))


def apply_word(g: GCM, word: Sequence[int], lam: Weight) -> Weight:
    for i in reversed(word):
        lam = reflect(g, i, lam)
    return lam


def dominant_representative(g: GCM, x: Weight) -> tuple[Weight, WeylWord]:
    """Return ``(dom, w)`` with ``dom`` dominant and ``apply_word(w, x) == dom``."""
    if not g.is_finite:
        raise NotFiniteType("dominant representative needs a finite Weyl group")
    applied = []
    while True:
        i = next((k + 1 for k, c in enumerate(x) if c < 0), None)
        if i is None:
            return x, tuple(reversed(applied))
        x = reflect(g, i, x)
        applied.append(i)


def word_length(g: GCM, word: Sequence[int]) -> int:
    """Length of the group element, via descents at the regular weight rho."""
    return reduced_length_from_weight(g, apply_word(g, word, rho(g)))


def reduced_length_from_weight(g: GCM, w_rho: Weight) -> int:
    steps = 0
    x = w_rho
    while True:
        i = next((k + 1 for k, c in enumerate(x) if c < 0), None)
        if i is None:
            if x != rho(g):
                raise ValueError("weight is not in the orbit of rho")
            return steps
        x = reflect(g, i, x)
        steps += 1


def is_reduced(g: GCM, word: Sequence[int]) -> bool:
    """Each prepended letter must be an ascent: ``l(s_i w) = l(w) + 1``."""
    x = rho(g)
    for i in reversed(word):
        g.check_index(i)
        if x[i - 1] <= 0:
            return False
        x = reflect(g, i, x)
    return True


def words_equal(g: GCM, w1: Sequence[int], w2: Sequence[int]) -> bool:
    r = rho(g)
    return apply_word(g, w1, r) == apply_word(g, w2, r)


def longest_word(g: GCM) -> WeylWord:
    """A reduced word for ``w_0``."""
    _, word = dominant_representative(g, tuple(-c for c in rho(g)))
    return tuple(reversed(word))


@lru_cache(maxsize=None)
def _positive_root_data(g: GCM) -> tuple:
    n = g.n
    found = {}
    layer = []
    for j in range(n):
        c = tuple(1 if k == j else 0 for k in range(n))
        found[c] = coeffs_to_weight(g, c)
        layer.append(c)
    while layer:
        nxt = []
        for c in layer:
            w = found[c]
            for i in range(n):
                if c == tuple(1 if k == i else 0 for k in range(n)):
                    continue
                # alpha_i string through c: p downward steps, q = p - <c, alpha_i^vee>
                p = 0
                down = list(c)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                q = p - w[i]
                if q > 0:
                    up = list(c)
                    up[i] += 1
                    up = tuple(up)
                    if up not in found:
                        found[up] = coeffs_to_weight(g, up)
                        nxt.append(up)
        layer = nxt
    coeffs = sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))
    return tuple(coeffs), tuple(found[c] for c in coeffs)


def positive_root_coefficients(g: GCM) -> tuple:
    """Positive roots as coefficient vectors on the simple roots."""
    if not g.is_finite:
        raise NotFiniteType("positive roots are infinite outside finite type")
    return _positive_root_data(g)[0]


def positive_roots(g: GCM, max_height: Optional[int] = None) -> list[Weight]:
    """Positive roots in the fundamental-weight basis, ordered by height.

    Outside finite type a ``max_height`` is required and only real roots up to
    that height are returned.
    """
    if g.is_finite:
        coeffs, weights = _positive_root_data(g)
        return [w for c, w in zip(coeffs, weights) if max_height is None or sum(c) <= max_height]
    if max_height is None:
        raise NotFiniteType("pass max_height to enumerate roots outside finite type")
    return [coeffs_to_weight(g, c) for c in real_positive_roots_bounded(g, max_height)]


def real_positive_roots_bounded(g: GCM, max_height: int) -> list[tuple]:
    """Real positive roots of height at most ``max_height`` (any GCM)."""
    n = g.n
    start = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    seen = set(start)
    queue = deque(start)
    while queue:
        c = queue.popleft()
        w = coeffs_to_weight(g, c)
        for i in range(n):
            k = w[i]
            new = list(c)
            new[i] -= k
            new = tuple(new)
            if min(new) < 0 or sum(new) > max_height or new in seen:
                continue
            seen.add(new)
            queue.append(new)
    return sorted(seen, key=lambda c: (sum(c), tuple(-x for x in c)))


def highest_root_coefficients(g: GCM) -> tuple:
    return positive_root_coefficients(g)[-1]


def coroot_pairing(g: GCM, lam: Weight, coeffs: Sequence) -> int | Fraction:
    """``lam(alpha^vee)`` for the root ``alpha = sum_j coeffs[j] alpha_j``."""
    d = g.symmetrizer
    num = sum(coeffs[j] * d[j] * lam[j] for j in range(g.n))
    norm = sum(
        coeffs[i] * coeffs[j] * d[i] * g.matrix[i][j]
        for i in range(g.n)
        for j in range(g.n)
    )
    return _norm(Fraction(2 * num) / norm)


@lru_cache(maxsize=None)
def _inverse(g: GCM):
    return _linalg.inverse(g.matrix)


def to_root_coords(g: GCM, lam: Weight) -> tuple:
    """Coefficients of ``lam`` on the simple roots (needs an invertible matrix)."""
    if not g.is_finite:
        raise NotFiniteType("root coordinates need an invertible Cartan matrix")
    inv = _inverse(g)
    return tuple(_norm(sum(inv[i][k] * lam[k] for k in range(g.n))) for i in range(g.n))


def inner(g: GCM, lam: Weight, mu: Weight) -> Fraction:
    """The invariant form, normalized by the symmetrizer (``(alpha_i, omega_j) = d_i delta_ij``)."""
    x = to_root_coords(g, lam)
    d = g.symmetrizer
    return Fraction(sum(x[j] * d[j] * mu[j] for j in range(g.n)))


def dominance_leq(g: GCM, lam: Weight, nu: Weight, over: str = "integers") -> bool:
    """``lam <= nu``: ``nu - lam`` is a nonnegative combination of simple roots."""
    c = to_root_coords(g, sub(nu, lam))
    if any(x < 0 for x in c):
        return False
    if over == "integers":
        return all(Fraction(x).denominator == 1 for x in c)
    if over == "nonneg-rationals":
        return True
    raise ValueError(f"unknown cone {over!r}")


def weyl_orbit(g: GCM, lam: Weight, max_depth: Optional[int] = None) -> set:
    """Breadth-first closure under simple reflections.

    Outside finite type ``max_depth`` bounds the word length explored.
    """
    if not g.is_finite and max_depth is None:
        raise NotFiniteType("pass max_depth to explore orbits outside finite type")
    seen = {lam}
    frontier = [lam]
    depth = 0
    while frontier and (max_depth is None or depth < max_depth):
        nxt = []
        for x in frontier:
            for i in g.nodes:
                y = reflect(g, i, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
        depth += 1
    return seen


def weyl_orbit_with_words(g: GCM, lam: Weight) -> dict:
    """Map each orbit point to a reduced word carrying ``lam`` to it."""
    if not g.is_finite:
        raise NotFiniteType("orbit enumeration needs finite type")
    words = {lam: ()}
    frontier = [lam]
    while frontier:
        nxt = []
        for x in frontier:
            for i in g.nodes:
                y = reflect(g, i, x)
                if y not in words:
                    words[y] = (i,) + words[x]
                    nxt.append(y)
        frontier = nxt
    return words


def weyl_group_order(g: GCM) -> int:
    return len(weyl_orbit(g, rho(g)))


def dominant_weights_below(g: GCM, lam: Weight) -> list[Weight]:
    """All dominant integral ``nu`` with ``nu <= lam``, by box enumeration in root coordinates."""
    top = to_root_coords(g, lam)
    out = []
    ranges = [range(int(Fraction(c).__floor__()) + 1) for c in top]
    for beta in itertools.product(*ranges):
        nu = sub(lam, coeffs_to_weight(g, beta))
        if is_dominant(nu):
            out.append(nu)
    return sorted(out, reverse=True)


# ---------------------------------------------------------------------------
# Dynkin subdiagrams


@dataclass(frozen=True)
class SubdiagramInfo:
    connected: bool
    ade: bool
    components: tuple  # of (label, nodes)


def subdiagram_classify(g: GCM, nodes: Iterable[int]) -> SubdiagramInfo:
    """Connectivity and type of the Dynkin subdiagram induced on ``nodes``."""
    nodes = sorted(set(nodes))
    for i in nodes:
        g.check_index(i)
    if not nodes:
        return SubdiagramInfo(True, True, ())
    sub = _submatrix(g.matrix, [i - 1 for i in nodes])
    comps = []
    ade = True
    for comp in _components(sub):
        comp_nodes = tuple(nodes[k] for k in comp)
        csub = _submatrix(sub, comp)
        cls = _classify_component(csub)
        lab = _label_component(csub, cls)
        comps.append((lab, comp_nodes))
        symmetric = all(
            csub[i][j] == csub[j][i] and csub[i][j] in (0, -1)
            for i in range(len(comp))
            for j in range(len(comp))
            if i != j
        )
        if not (cls == "finite" and symmetric):
            ade = False
    return SubdiagramInfo(len(comps) == 1, ade, tuple(comps))
