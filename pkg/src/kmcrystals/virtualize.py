"""Non-simply-laced crystals realized inside simply-laced ones by folding.

A folding sends each child node ``i`` to a set ``psi(i)`` of parent nodes
with a scaling factor ``gamma_i``.  Virtual operators are
``f_i^v = prod_{j in psi(i)} f_j^{gamma_i}`` on the parent path model, and
``epsilon_i^v = epsilon_j / gamma_i``.  Every folding validates itself against
the child's Weyl dimension and Freudenthal tables when it is built.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import rootdata as rd
from .components import Monomial, check_monomial_nonzero
from .errors import (
    BudgetExceeded,
    InvariantBroken,
    NotDominant,
    NotSimplyLaced,
    SelfValidationFailed,
    UnsupportedChildType,
)
from .pathcrystal import LSPath, e_op, epsilon, f_op, phi, straight_path
from .rootdata import GCM, Weight
from .tensor import Decomposition, freudenthal, weyl_dim

DEFAULT_BUDGET = 2000


@dataclass(frozen=True)
class Folding:
    child: GCM
    parent: GCM
    psi: tuple  # psi[i-1] = sorted parent nodes for child node i
    gamma: tuple
    budget: int = field(default=DEFAULT_BUDGET, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "psi", tuple(tuple(sorted(p)) for p in self.psi))
        object.__setattr__(self, "gamma", tuple(int(c) for c in self.gamma))
        self._check_structure()
        self.validate()

    # -- structure ---------------------------------------------------------

    def _check_structure(self) -> None:
        c, p = self.child, self.parent
        if not p.is_simply_laced:
            raise NotSimplyLaced(f"parent {p} must be simply laced")
        if len(self.psi) != c.n or len(self.gamma) != c.n:
            raise SelfValidationFailed("psi and gamma need one entry per child node")
        used = [j for fiber in self.psi for j in fiber]
        if any(not fiber for fiber in self.psi) or len(set(used)) != len(used):
            raise SelfValidationFailed("psi fibers must be nonempty and disjoint")
        for j in used:
            p.check_index(j)
        if any(gm < 1 for gm in self.gamma):
            raise SelfValidationFailed("scaling factors must be positive")
        for fiber in self.psi:
            if any(p.a(j, k) != 0 for j, k in itertools.combinations(fiber, 2)):
                raise SelfValidationFailed(f"fiber {fiber} contains adjacent nodes")
        # child entries from the parent, constant along each fiber
        for i in c.nodes:
            for jj in c.nodes:
                values = {
                    Fraction(self.gamma[jj - 1], self.gamma[i - 1])
                    * sum(p.a(ip, k) for k in self.psi[jj - 1])
                    for ip in self.psi[i - 1]
                }
                if len(values) != 1 or values.pop() != c.a(i, jj):
                    raise SelfValidationFailed(
                        f"child entry a({i},{jj}) is not induced by the parent"
                    )

    def battery(self) -> list:
        """Dominant child weights with coordinates <= 1 and dimension within the budget."""
        out = []
        for lam in itertools.product((0, 1), repeat=self.child.n):
            if any(lam) and weyl_dim(self.child, lam) <= self.budget:
                out.append(lam)
        return out

    def validate(self, battery: Optional[Sequence[Weight]] = None) -> int:
        """Compare virtual crystals with the child oracles; returns the number checked."""
        weights = list(battery) if battery is not None else self.battery()
        if not weights:
            raise SelfValidationFailed("no battery weight fits the node budget")
        for lam in weights:
            crystal = virtual_crystal(self, tuple(lam), budget=self.budget)
            if len(crystal) != weyl_dim(self.child, lam):
                raise SelfValidationFailed(
                    f"virtual B{tuple(lam)} has {len(crystal)} nodes, expected {weyl_dim(self.child, lam)}"
                )
            if crystal.character() != freudenthal(self.child, tuple(lam)):
                raise SelfValidationFailed(f"virtual character of {tuple(lam)} is wrong")
        return len(weights)

    # -- weights -----------------------------------------------------------

    def virtualize_weight(self, lam: Weight) -> Weight:
        if not rd.is_dominant_integral(lam):
            raise NotDominant(f"{tuple(lam)} is not dominant integral")
        return self.embed(lam)

    def embed(self, lam: Weight) -> Weight:
        out = [0] * self.parent.n
        for i, fiber in enumerate(self.psi):
            for j in fiber:
                out[j - 1] = self.gamma[i] * lam[i]
        return tuple(out)

    def restrict(self, parent_wt: Weight) -> Weight:
        """Child weight read off a parent weight lying in the image of :meth:`embed`."""
        out = []
        for i, fiber in enumerate(self.psi):
            values = {Fraction(parent_wt[j - 1], self.gamma[i]) for j in fiber}
            if len(values) != 1:
                raise InvariantBroken(f"parent weight {parent_wt} is not fiber-constant")
            out.append(rd._norm(values.pop()))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "child": self.child.label,
            "parent": self.parent.label,
            "psi": {str(i + 1): list(f) for i, f in enumerate(self.psi)},
            "gamma": {str(i + 1): gm for i, gm in enumerate(self.gamma)},
        }


def folding_from_json(obj, budget: int = DEFAULT_BUDGET) -> Folding:
    if isinstance(obj, str):
        obj = json.loads(obj)
    child = rd.cartan_matrix(obj["child"])
    parent = rd.cartan_matrix(obj["parent"])
    psi = [obj["psi"][str(i)] for i in child.nodes]
    gamma = [obj["gamma"][str(i)] for i in child.nodes]
    return Folding(child, parent, tuple(psi), tuple(gamma), budget)


def _standard_data(label: str):
    fam, n = label[0], int(label[1:])
    if fam == "C" and n >= 2:
        psi = [(i, 2 * n - i) for i in range(1, n)] + [(n,)]
        return f"A{2 * n - 1}", psi, [1] * (n - 1) + [2]
    if fam == "B" and n >= 2:
        psi = [(i,) for i in range(1, n)] + [(n, n + 1)]
        return f"D{n + 1}", psi, [2] * (n - 1) + [1]
    if label == "G2":
        return "D4", [(2,), (1, 3, 4)], [3, 1]
    if label == "F4":
        return "E6", [(6,), (3,), (2, 4), (1, 5)], [2, 2, 1, 1]
    raise UnsupportedChildType(f"no standard folding for {label}")


@lru_cache(maxsize=None)
def standard_folding(child_type: str, budget: int = DEFAULT_BUDGET) -> Folding:
    """``C_n < A_{2n-1}``, ``B_n < D_{n+1}``, ``G_2 < D_4``, ``F_4 < E_6``."""
    label = child_type.strip().upper()
    if len(label) < 2 or not label[1:].isdigit():
        raise UnsupportedChildType(f"no standard folding for {child_type}")
    parent_label, psi, gamma = _standard_data(label)
    return Folding(rd.cartan_matrix(label), rd.cartan_matrix(parent_label), tuple(psi), tuple(gamma), budget)


def identity_folding(g: GCM, budget: int = DEFAULT_BUDGET) -> Folding:
    return Folding(g, g, tuple((i,) for i in g.nodes), (1,) * g.n, budget)


# ---------------------------------------------------------------------------
# Virtual elements and operators


@dataclass(frozen=True)
class VirtualElement:
    carrier: LSPath
    shape: Weight  # child weight


def _fiber_value(f: Folding, values: Sequence[int], i: int) -> int:
    gm = f.gamma[i - 1]
    if len(set(values)) != 1 or values[0] % gm:
        raise InvariantBroken(f"fiber values {list(values)} for child node {i} (gamma {gm})")
    return values[0] // gm


def v_epsilon(f: Folding, x: VirtualElement, i: int) -> int:
    return _fiber_value(f, [epsilon(x.carrier, j) for j in f.psi[i - 1]], i)


def v_phi(f: Folding, x: VirtualElement, i: int) -> int:
    return _fiber_value(f, [phi(x.carrier, j) for j in f.psi[i - 1]], i)


def v_wt(f: Folding, x: VirtualElement) -> Weight:
    return f.restrict(x.carrier.endpoint())


def _apply(f: Folding, path: LSPath, i: int, op) -> Optional[LSPath]:
    g = f.parent
    for j in f.psi[i - 1]:
        for _ in range(f.gamma[i - 1]):
            path = op(g, path, j)
            if path is None:
                return None
    return path


def v_f(f: Folding, x: VirtualElement, i: int) -> Optional[VirtualElement]:
    if v_phi(f, x, i) == 0:
        return None
    y = _apply(f, x.carrier, i, f_op)
    if y is None:
        raise InvariantBroken(f"f^v_{i} failed part way on {x.carrier}")
    return VirtualElement(y, x.shape)


def v_e(f: Folding, x: VirtualElement, i: int) -> Optional[VirtualElement]:
    if v_epsilon(f, x, i) == 0:
        return None
    y = _apply(f, x.carrier, i, e_op)
    if y is None:
        raise InvariantBroken(f"e^v_{i} failed part way on {x.carrier}")
    return VirtualElement(y, x.shape)


def highest_virtual(f: Folding, lam: Weight) -> VirtualElement:
    return VirtualElement(straight_path(f.virtualize_weight(lam)), tuple(lam))


def virtual_monomial_apply(f: Folding, lam: Weight, m) -> Optional[VirtualElement]:
    """``f_{i_1}^{b_1} ... f_{i_t}^{b_t}`` on the virtual highest element (rightmost first)."""
    x = highest_virtual(f, lam)
    for i, b in reversed(Monomial.of(m).factors):
        for _ in range(b):
            x = v_f(f, x, i)
            if x is None:
                return None
    return x


class VirtualCrystal:
    def __init__(self, folding: Folding, shape: Weight, nodes: tuple, edges: dict):
        self.folding = folding
        self.shape = shape
        self.nodes = nodes
        self.edges = edges
        self.weights = {x: folding.restrict(x.carrier.endpoint()) for x in nodes}

    def __len__(self) -> int:
        return len(self.nodes)

    def f(self, x: VirtualElement, i: int) -> Optional[VirtualElement]:
        return self.edges.get((x, i))

    def epsilons(self, x: VirtualElement) -> tuple:
        return tuple(v_epsilon(self.folding, x, i) for i in self.folding.child.nodes)

    def character(self) -> dict:
        out: dict = {}
        for w in self.weights.values():
            out[w] = out.get(w, 0) + 1
        return out

    def sorted_nodes(self) -> list:
        return sorted(self.nodes, key=lambda x: x.carrier.segments)


def virtual_crystal(f: Folding, lam: Weight, budget: Optional[int] = None) -> VirtualCrystal:
    return _virtual_crystal(f, tuple(lam), budget)


@lru_cache(maxsize=128)
def _virtual_crystal(f: Folding, lam: Weight, budget: Optional[int]) -> VirtualCrystal:
    top = highest_virtual(f, lam)
    seen = {top}
    order = [top]
    edges = {}
    frontier = [top]
    while frontier:
        nxt = []
        for x in frontier:
            for i in f.child.nodes:
                y = v_f(f, x, i)
                if y is None:
                    continue
                edges[(x, i)] = y
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    nxt.append(y)
                    if budget is not None and len(order) > budget:
                        raise BudgetExceeded(f"more than {budget} virtual nodes for {lam}")
        frontier = nxt
    return VirtualCrystal(f, lam, tuple(order), edges)


def virtual_decompose(f: Folding, lam: Weight, mu: Weight) -> Decomposition:
    """Child decomposition counting virtual elements of ``B(mu)`` with ``epsilon^v_i <= lam_i``."""
    for w in (lam, mu):
        if not rd.is_dominant_integral(w):
            raise NotDominant(f"{tuple(w)} is not dominant integral")
    lam, mu = tuple(lam), tuple(mu)
    crystal = virtual_crystal(f, mu, budget=f.budget * 10)
    counts: dict = {}
    for x in crystal.sorted_nodes():
        if all(e <= c for e, c in zip(crystal.epsilons(x), lam)):
            nu = rd.add(lam, crystal.weights[x])
            counts[nu] = counts.get(nu, 0) + 1
    return Decomposition(lam, mu, {nu: counts[nu] for nu in sorted(counts, reverse=True)})


# ---------------------------------------------------------------------------
# Closed forms


def expanded_word(f: Folding, m) -> list:
    """``[(j_l, c_l, r)]``: parent node, exponent ``b_r gamma_{i_r}`` and owning child position."""
    m = Monomial.of(m)
    out = []
    for r, (i, b) in enumerate(m.factors, start=1):
        f.child.check_index(i)
        for j in f.psi[i - 1]:
            out.append((j, b * f.gamma[i - 1], r))
    return out


def _expanded_bounds(f: Folding, m) -> dict:
    """Child position ``r`` -> the folded epsilon values at each of its expanded positions."""
    word = expanded_word(f, m)
    out: dict = {}
    for ell, (j, c, r) in enumerate(word):
        total = c + sum(cu * f.parent.a(ju, j) for ju, cu, _ in word[:ell])
        gm = f.gamma[Monomial.of(m).factors[r - 1][0] - 1]
        out.setdefault(r, []).append(Fraction(total, gm))
    return out


def folded_epsilon_formula(f: Folding, lam: Weight, m, r: int) -> int:
    """``gamma_{i_r}^{-1} max{0, c_l + sum_{u<l} c_u a~_{j_u,j_l}}`` for ``j_l`` in ``psi(i_r)``."""
    m = Monomial.of(m)
    if not 1 <= r <= len(m):
        from .errors import PositionOutOfRange

        raise PositionOutOfRange(f"position {r} not in 1..{len(m)}")
    values = {max(Fraction(0), v) for v in _expanded_bounds(f, m)[r]}
    if len(values) != 1:
        raise InvariantBroken(f"fiber values disagree at position {r}: {sorted(values)}")
    v = values.pop()
    assert v.denominator == 1
    return int(v)


def folded_component(f: Folding, lam: Weight, mu: Weight, m) -> Optional[Weight]:
    """``lam + mu - sum b_p alpha_{i_p}`` when the folded hypotheses hold.

    ``lam`` side: the nonvanishing inequalities of ``f_{i_1}^{b_1} ... pi_lam``;
    ``mu`` side: every folded epsilon value is at most ``mu`` at its node.
    """
    m = Monomial.of(m)
    g = f.child
    if not m.factors:
        return rd.add(lam, mu)
    if not check_monomial_nonzero(g, lam, m):
        return None
    for r, values in _expanded_bounds(f, m).items():
        i = m.factors[r - 1][0]
        if any(mu[i - 1] < v for v in values):
            return None
    return rd.sub(rd.add(lam, mu), m.weight_drop(g))
