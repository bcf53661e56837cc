"""Closed-form criteria for components of ``V(lam) (x) V(mu)``.

Everything here evaluates inequalities in the Cartan entries; nothing
generates a crystal.  The path model is only used by the tests and scans that
confirm these criteria.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import networkx as nx

from . import rootdata as rd
from .errors import (
    BudgetExceeded,
    DuplicateIndices,
    NotARoot,
    NotDistinctSimpleSum,
    NotFiniteType,
    NotRegular,
    NotSimplyLaced,
    PositionOutOfRange,
    MinBoundViolated,
)
from .rootdata import GCM, Weight


@dataclass(frozen=True)
class Monomial:
    """``f_{i_1}^{b_1} ... f_{i_t}^{b_t}`` with pairwise distinct ``i_p``."""

    factors: tuple

    def __post_init__(self):
        idx = [i for i, _ in self.factors]
        if len(set(idx)) != len(idx):
            raise DuplicateIndices(f"repeated index in {self.factors}")
        for i, b in self.factors:
            if b < 1:
                raise ValueError(f"exponent {b} for f_{i} must be >= 1")

    @classmethod
    def of(cls, m) -> "Monomial":
        if isinstance(m, Monomial):
            return m
        return cls(tuple((int(i), int(b)) for i, b in m))

    @classmethod
    def parse(cls, text: str) -> "Monomial":
        """``"1:1,2:1"`` -> ``f_1 f_2``."""
        factors = []
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            i, _, b = part.partition(":")
            factors.append((int(i), int(b or 1)))
        return cls(tuple(factors))

    @property
    def indices(self) -> tuple:
        return tuple(i for i, _ in self.factors)

    @property
    def exponents(self) -> tuple:
        return tuple(b for _, b in self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def reordered(self, order: Sequence[int]) -> "Monomial":
        return Monomial(tuple(self.factors[k] for k in order))

    def weight_drop(self, g: GCM) -> Weight:
        """``sum_p b_p alpha_{i_p}``."""
        coeffs = [0] * g.n
        for i, b in self.factors:
            coeffs[i - 1] += b
        return rd.coeffs_to_weight(g, coeffs)

    def __str__(self) -> str:
        return ",".join(f"{i}:{b}" for i, b in self.factors)


def _checked(g: GCM, m) -> Monomial:
    m = Monomial.of(m)
    for i in m.indices:
        g.check_index(i)
    return m


def _require_simply_laced(g: GCM) -> None:
    if not g.is_simply_laced:
        raise NotSimplyLaced(f"{g} is not simply laced")


def check_monomial_nonzero(g: GCM, lam: Weight, m) -> bool:
    """``f_{i_1}^{b_1} ... f_{i_t}^{b_t} pi_lam != 0`` via the inequalities
    ``lam(alpha_{i_k}^vee) >= b_k + sum_{s>k} b_s a_{i_k,i_s}``."""
    m = _checked(g, m)
    f = m.factors
    for k, (ik, bk) in enumerate(f):
        bound = bk + sum(bs * g.a(ik, is_) for is_, bs in f[k + 1:])
        if lam[ik - 1] < bound:
            return False
    return True


def epsilon_formula(g: GCM, m, r: int) -> int:
    """``max{0, b_r + sum_{s<r} b_s a_{i_s,i_r}}`` for the 1-based position ``r``."""
    m = _checked(g, m)
    if not 1 <= r <= len(m):
        raise PositionOutOfRange(f"position {r} not in 1..{len(m)}")
    ir, br = m.factors[r - 1]
    return max(0, br + sum(bs * g.a(is_, ir) for is_, bs in m.factors[: r - 1]))


def epsilon_profile(g: GCM, m) -> tuple:
    """Predicted ``epsilon_j`` for every node ``j``; zero off the support."""
    m = _checked(g, m)
    out = [0] * g.n
    for r, (i, _) in enumerate(m.factors, start=1):
        out[i - 1] = epsilon_formula(g, m, r)
    return tuple(out)


def check_mu_dominant(g: GCM, lam: Weight, mu: Weight, m) -> bool:
    """Is ``f_{i_1}^{b_1} ... f_{i_t}^{b_t} pi_lam`` nonzero and ``mu``-dominant?"""
    _require_simply_laced(g)
    m = _checked(g, m)
    f = m.factors
    t = len(f)
    if t == 0:
        return True
    if lam[f[-1][0] - 1] < f[-1][1] or mu[f[0][0] - 1] < f[0][1]:
        return False
    for r in range(1, t):
        ir, br = f[r]
        if mu[ir - 1] < br + sum(bs * g.a(is_, ir) for is_, bs in f[:r]):
            return False
    for r in range(t - 1):
        ir, br = f[r]
        if lam[ir - 1] < br + sum(bs * g.a(is_, ir) for is_, bs in f[r + 1:]):
            return False
    return True


def theorem_component(g: GCM, lam: Weight, mu: Weight, m) -> Optional[Weight]:
    """``lam + mu - sum b_p alpha_{i_p}`` when the main theorem's hypotheses hold."""
    m = _checked(g, m)
    if not check_mu_dominant(g, lam, mu, m):
        return None
    return rd.sub(rd.add(lam, mu), m.weight_drop(g))


def distinct_simple_sum_component(g: GCM, lam: Weight, mu: Weight, nodes: Iterable[int]):
    """``(nu, certificate)`` with ``nu = lam + mu - sum_{i in nodes} alpha_i``.

    Both weights must be regular; the certificate is the increasing-order
    monomial, replayable with :func:`theorem_component`.
    """
    _require_simply_laced(g)
    if not (rd.is_regular_dominant(lam) and rd.is_regular_dominant(mu)):
        raise NotRegular("both weights must be regular dominant")
    order = sorted(set(nodes))
    if not order:
        raise ValueError("need a nonempty set of simple roots")
    cert = Monomial(tuple((i, 1) for i in order))
    nu = theorem_component(g, lam, mu, cert)
    assert nu is not None, "increasing order must satisfy the hypotheses"
    return nu, cert


def is_prv(g: GCM, nu: Weight, lam: Weight, mu: Weight) -> bool:
    """Is ``nu`` the dominant representative of ``lam + w mu`` for some ``w``?"""
    if not g.is_finite:
        raise NotFiniteType("use prv_search for infinite Weyl groups")
    target = tuple(nu)
    for x in rd.weyl_orbit(g, tuple(mu)):
        if rd.dominant_representative(g, rd.add(lam, x))[0] == target:
            return True
    return False


def _orbit_drops(g: GCM, lam: Weight, radius: int) -> set:
    """Root coefficients of ``lam - w lam`` for words of length <= ``radius``.

    Kept in root coordinates so that imaginary roots, which pair to zero with
    every coroot, are not lost outside finite type.
    """
    start = (tuple(lam), (0,) * g.n)
    seen = {start[1]}
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for x, drop in frontier:
            for i in g.nodes:
                k = x[i - 1]
                if k == 0:
                    continue
                d = list(drop)
                d[i - 1] += k
                d = tuple(d)
                if d not in seen:
                    seen.add(d)
                    nxt.append((rd.reflect(g, i, x), d))
        frontier = nxt
    return seen


def prv_search(g: GCM, nu: Weight, lam: Weight, mu: Weight, radius: int, beta=None) -> Optional[tuple]:
    """Look for ``sigma lam + tau mu = nu`` with words of length <= ``radius``.

    The target is compared through ``beta = lam + mu - nu`` in root
    coordinates; outside finite type pass ``beta`` explicitly, since weight
    coordinates cannot see imaginary roots.  Returns the root coefficients of
    ``(lam - sigma lam, mu - tau mu)``, or ``None``, which only means no such
    expression exists within the radius.
    """
    if beta is None:
        if not g.is_finite:
            raise ValueError("pass the root coefficients beta of lam + mu - nu outside finite type")
        beta = rd.to_root_coords(g, rd.sub(rd.add(lam, mu), nu))
    beta = tuple(beta)
    right = _orbit_drops(g, mu, radius)
    for d1 in sorted(_orbit_drops(g, lam, radius)):
        d2 = tuple(b - a for a, b in zip(d1, beta))
        if d2 in right:
            return d1, d2
    return None


def support_certificate(g: GCM, beta_coeffs: Sequence[int]) -> Optional[tuple]:
    """Nodes of a 0/1 coefficient vector, or ``None`` if some coefficient exceeds one."""
    if any(c not in (0, 1) for c in beta_coeffs):
        return None
    return tuple(i + 1 for i, c in enumerate(beta_coeffs) if c == 1)


@dataclass
class KostantComponent:
    nu: Weight
    mult: int
    prv: bool
    certificate: Optional[Monomial]


@dataclass
class KostantReport:
    type_label: Optional[str]
    supports_match: bool
    components: list
    missing: list
    extra: list

    def to_json(self) -> dict:
        return {
            "type": self.type_label,
            "supports_match": self.supports_match,
            "components": [
                {
                    "nu": [str(c) for c in comp.nu],
                    "mult": comp.mult,
                    "prv": comp.prv,
                    "certificate": str(comp.certificate) if comp.certificate else None,
                }
                for comp in self.components
            ],
            "missing": [[str(c) for c in nu] for nu in self.missing],
            "extra": [[str(c) for c in nu] for nu in self.extra],
        }


def kostant_scan(
    g: GCM,
    decomposer: Optional[Callable[[Weight, Weight], dict]] = None,
    max_rank: int = 4,
) -> KostantReport:
    """Compare the support of ``V(rho) (x) V(rho)`` with ``{nu dominant : nu <= 2 rho}``.

    ``decomposer(lam, mu)`` returns ``{nu: mult}``; by default the path model.
    """
    if not g.is_finite:
        raise NotFiniteType("Kostant scan enumerates a finite decomposition")
    if g.n > max_rank:
        raise BudgetExceeded(f"rank {g.n} exceeds the scan budget {max_rank}")
    if decomposer is None:
        from .tensor import decompose

        def decomposer(lam, mu):
            return decompose(g, lam, mu).summands

    r = rd.rho(g)
    two_rho = rd.scale(2, r)
    summands = decomposer(r, r)
    expected = set(rd.dominant_weights_below(g, two_rho))
    comps = []
    for nu, mult in summands.items():
        cert = None
        if g.is_simply_laced and nu != two_rho:
            nodes = support_certificate(g, rd.to_root_coords(g, rd.sub(two_rho, nu)))
            if nodes:
                _, cert = distinct_simple_sum_component(g, r, r, nodes)
        comps.append(KostantComponent(nu, mult, is_prv(g, nu, r, r), cert))
    support = set(summands)
    return KostantReport(
        g.label,
        support == expected,
        comps,
        sorted(expected - support, reverse=True),
        sorted(support - expected, reverse=True),
    )


# ---------------------------------------------------------------------------
# Wahl triples


@dataclass(frozen=True)
class WahlInstance:
    g: GCM
    lam: Weight
    mu: Weight
    beta: Weight
    N: int

    def S(self, eta: Weight) -> frozenset:
        return frozenset(i for i in self.g.nodes if eta[i - 1] < self.N)

    @property
    def S_lam(self) -> frozenset:
        return self.S(self.lam)

    @property
    def S_mu(self) -> frozenset:
        return self.S(self.mu)

    @property
    def F_beta(self) -> frozenset:
        roots = set(rd.positive_roots(self.g))
        zero = rd.zero(self.g.n)
        out = set()
        for i in self.g.nodes:
            rest = rd.sub(self.beta, rd.simple_root(self.g, i))
            if rest not in roots and rest != zero:
                out.add(i)
        return frozenset(out)

    @property
    def target(self) -> Weight:
        return rd.sub(rd.add(self.lam, self.mu), rd.scale(self.N, self.beta))

    def conditions(self) -> bool:
        return (self.S_lam | self.S_mu) <= self.F_beta and rd.is_dominant(self.target)


@dataclass
class WahlReport:
    conditions_hold: bool
    holds: bool
    target: Weight
    witnesses: list

    def to_json(self) -> dict:
        return {
            "conditions_hold": self.conditions_hold,
            "holds": self.holds,
            "nu": [str(c) for c in self.target],
            "witnesses": [str(m) for m in self.witnesses],
        }


def _chain_order(g: GCM, nodes: Sequence[int]) -> Optional[list]:
    """The nodes listed end to end if they span a path graph."""
    graph = nx.Graph()
    graph.add_nodes_from(nodes)
    graph.add_edges_from(
        (i, j) for i, j in itertools.combinations(nodes, 2) if g.a(i, j) != 0
    )
    if not nx.is_connected(graph):
        return None
    ends = sorted(v for v in graph if graph.degree(v) <= 1)
    if any(graph.degree(v) > 2 for v in graph):
        return None
    if len(nodes) == 1:
        return list(nodes)
    return [ends[0]] + [v for v in nx.shortest_path(graph, ends[0], ends[1])][1:]


def wahl_check(g: GCM, lam: Weight, mu: Weight, beta: Weight, N: int) -> WahlReport:
    """Check a Wahl triple and build the monomial witnesses.

    Witness monomials act on ``pi_mu`` and are ``lam``-dominant.  For chains
    the end-to-end orders are tried first, then all orderings in
    lexicographic order.
    """
    if not g.is_finite:
        raise NotFiniteType("Wahl triples are checked in finite type")
    _require_simply_laced(g)
    if N < 1:
        raise ValueError("N must be positive")
    beta = tuple(beta)
    coeffs = rd.to_root_coords(g, beta)
    nodes = support_certificate(g, coeffs)
    if nodes is None:
        if beta not in set(rd.positive_roots(g)):
            raise NotARoot(f"{beta} is not a positive root")
        raise NotDistinctSimpleSum(f"{beta} is not a sum of distinct simple roots")
    # 0/1 vectors are roots exactly when their support is connected
    connected = bool(nodes) and rd.subdiagram_classify(g, nodes).connected
    assert connected == (beta in set(rd.positive_roots(g)))
    if not connected:
        raise NotARoot(f"{beta} has disconnected support")
    inst = WahlInstance(g, tuple(lam), tuple(mu), beta, N)
    if not inst.conditions():
        return WahlReport(False, False, inst.target, [])

    orders = []
    chain = _chain_order(g, nodes)
    if chain is not None:
        orders += [tuple(chain), tuple(reversed(chain))]
    orders += [p for p in itertools.permutations(nodes) if p not in orders]

    witnesses = []
    profiles = []
    for order in orders:
        m = Monomial(tuple((i, N) for i in order))
        if not check_mu_dominant(g, mu, lam, m):
            continue
        prof = epsilon_profile(g, m)
        if not witnesses:
            witnesses.append(m)
            profiles.append(prof)
            if len(nodes) == 1:
                break
        elif prof not in profiles:
            witnesses.append(m)
            break
    needed = 1 if len(nodes) == 1 else 2
    return WahlReport(True, len(witnesses) >= needed, inst.target, witnesses)


def min_pair_component(g: GCM, lam3: Weight, lam4: Weight, pairs: Sequence[tuple]) -> Weight:
    """``lam3 + lam4 - sum k_r alpha_{i_r}`` when every ``k_r <= min(lam3, lam4)`` at ``i_r``."""
    _require_simply_laced(g)
    idx = [i for i, _ in pairs]
    if len(set(idx)) != len(idx):
        raise DuplicateIndices(f"repeated index in {pairs}")
    coeffs = [0] * g.n
    for i, k in pairs:
        g.check_index(i)
        if not 0 <= k <= min(lam3[i - 1], lam4[i - 1]):
            raise MinBoundViolated(
                f"k = {k} at node {i} exceeds min({lam3[i - 1]}, {lam4[i - 1]})"
            )
        coeffs[i - 1] = k
    return rd.sub(rd.add(lam3, lam4), rd.coeffs_to_weight(g, coeffs))
