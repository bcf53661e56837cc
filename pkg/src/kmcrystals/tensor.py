"""Tensor products, lambda-dominant elements and multiplicities.

Multiplicities are counted on the ``B(mu)`` side: ``c^nu_{lam,mu}`` is the
number of ``lam``-dominant elements of weight ``nu - lam``.  The tensor rule is
implemented for property tests only.

The oracles at the bottom (Weyl dimension, Freudenthal, Brauer-Klimyk) use
root data only and never touch the path model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from . import rootdata as rd
from .errors import NotDominant, NotFiniteType
from .pathcrystal import (
    LSPath,
    e_op,
    epsilon,
    f_op,
    generate_crystal,
    phi,
)
from .rootdata import GCM, Weight


def _require_finite(g: GCM) -> None:
    if not g.is_finite:
        raise NotFiniteType(f"{g} is not of finite type")


def _require_dominant(*weights: Weight) -> None:
    for lam in weights:
        if not rd.is_dominant_integral(lam):
            raise NotDominant(f"{lam} is not dominant integral")


# ---------------------------------------------------------------------------
# Tensor rule (Kashiwara's convention, as used for the multiplicity formula)


def tensor_epsilon(pair: tuple, i: int) -> int:
    x, y = pair
    return max(epsilon(x, i), epsilon(y, i) - x.endpoint()[i - 1])


def tensor_phi(pair: tuple, i: int) -> int:
    x, y = pair
    return max(phi(y, i), phi(x, i) + y.endpoint()[i - 1])


def tensor_e(g: GCM, pair: tuple, i: int) -> Optional[tuple]:
    x, y = pair
    if phi(x, i) >= epsilon(y, i):
        x2 = e_op(g, x, i)
        return None if x2 is None else (x2, y)
    y2 = e_op(g, y, i)
    return None if y2 is None else (x, y2)


def tensor_f(g: GCM, pair: tuple, i: int) -> Optional[tuple]:
    x, y = pair
    if phi(x, i) > epsilon(y, i):
        x2 = f_op(g, x, i)
        return None if x2 is None else (x2, y)
    y2 = f_op(g, y, i)
    return None if y2 is None else (x, y2)


# ---------------------------------------------------------------------------
# Multiplicities


def is_lambda_dominant(path: LSPath, lam: Weight) -> bool:
    """``e_i^{lam(alpha_i^vee)+1}(path) = 0`` for every ``i``."""
    return all(epsilon(path, i) <= lam[i - 1] for i in range(1, len(lam) + 1))


def _dominant_in(graph, lam: Weight, x: LSPath) -> bool:
    return all(e <= c for e, c in zip(graph.epsilons[x], lam))


def tensor_multiplicity(g: GCM, lam: Weight, mu: Weight, nu: Weight) -> int:
    _require_finite(g)
    _require_dominant(lam, mu, nu)
    graph = generate_crystal(g, mu)
    target = rd.sub(nu, lam)
    return sum(1 for x in graph.by_weight.get(target, ()) if _dominant_in(graph, lam, x))


@dataclass(frozen=True)
class Decomposition:
    lam: Weight
    mu: Weight
    summands: dict = field(hash=False)

    def dims(self, g: GCM) -> dict:
        return {nu: weyl_dim(g, nu) for nu in self.summands}

    def dim_check(self, g: GCM) -> bool:
        total = sum(c * weyl_dim(g, nu) for nu, c in self.summands.items())
        return total == weyl_dim(g, self.lam) * weyl_dim(g, self.mu)

    def to_json(self, g: GCM) -> dict:
        return {
            "lambda": [str(c) for c in self.lam],
            "mu": [str(c) for c in self.mu],
            "components": [
                {"nu": [str(c) for c in nu], "mult": m, "dim": weyl_dim(g, nu)}
                for nu, m in self.summands.items()
            ],
            "dim_check": self.dim_check(g),
        }


def _sorted_summands(counts: dict) -> dict:
    return {nu: counts[nu] for nu in sorted(counts, reverse=True)}


def decompose(g: GCM, lam: Weight, mu: Weight) -> Decomposition:
    """All ``nu`` with ``c^nu_{lam,mu} > 0``, scanning ``B(mu)`` in canonical order."""
    _require_finite(g)
    _require_dominant(lam, mu)
    lam, mu = tuple(lam), tuple(mu)
    graph = generate_crystal(g, mu)
    counts: dict = {}
    for x in graph.sorted_nodes():
        if _dominant_in(graph, lam, x):
            nu = rd.add(lam, graph.weights[x])
            counts[nu] = counts.get(nu, 0) + 1
    return Decomposition(lam, mu, _sorted_summands(counts))


def weight_support(g: GCM, mu: Weight) -> dict:
    """``nu -> m_mu(nu)`` from the path model."""
    _require_finite(g)
    _require_dominant(mu)
    return generate_crystal(g, tuple(mu)).character()


def weight_multiplicity(g: GCM, mu: Weight, nu: Weight) -> int:
    return weight_support(g, mu).get(tuple(nu), 0)


# ---------------------------------------------------------------------------
# Independent oracles


def weyl_dim(g: GCM, lam: Weight) -> int:
    """Weyl dimension formula over the positive roots."""
    _require_finite(g)
    lr = rd.add(lam, rd.rho(g))
    num = Fraction(1)
    for coeffs in rd.positive_root_coefficients(g):
        num *= Fraction(rd.coroot_pairing(g, lr, coeffs)) / rd.coroot_pairing(g, rd.rho(g), coeffs)
    assert num.denominator == 1
    return int(num)


@lru_cache(maxsize=None)
def _omega_gram(g: GCM) -> tuple:
    inv = rd._inverse(g)
    d = g.symmetrizer
    n = g.n
    return tuple(tuple(inv[j][i] * d[j] for j in range(n)) for i in range(n))


def _form(gram, x, y) -> Fraction:
    n = len(x)
    return sum(x[i] * gram[i][j] * y[j] for i in range(n) for j in range(n) if x[i] and y[j])


@lru_cache(maxsize=256)
def freudenthal(g: GCM, lam: Weight) -> dict:
    """Weight multiplicities of ``V(lam)`` by Freudenthal's recursion."""
    _require_finite(g)
    _require_dominant(lam)
    lam = tuple(lam)
    gram = _omega_gram(g)
    roots = list(zip(rd.positive_root_coefficients(g), rd.positive_roots(g)))
    rho = rd.rho(g)
    lr = rd.add(lam, rho)
    top = _form(gram, lr, lr)

    def in_support(mu):
        dom, _ = rd.dominant_representative(g, mu)
        return rd.dominance_leq(g, dom, lam)

    mult = {lam: 1}
    layer = [lam]
    while layer:
        candidates = []
        seen = set()
        for mu in layer:
            for j in g.nodes:
                nu = rd.sub(mu, rd.simple_root(g, j))
                if nu not in seen and nu not in mult and in_support(nu):
                    seen.add(nu)
                    candidates.append(nu)
        for mu in candidates:
            total = Fraction(0)
            for coeffs, alpha in roots:
                k = 1
                while True:
                    up = tuple(m + k * a for m, a in zip(mu, alpha))
                    if up not in mult:
                        break
                    total += mult[up] * _form(gram, up, alpha)
                    k += 1
            mr = rd.add(mu, rho)
            value = 2 * total / (top - _form(gram, mr, mr))
            assert value.denominator == 1 and value > 0, (mu, value)
            mult[mu] = int(value)
        layer = candidates
    return mult


def klimyk_decompose(g: GCM, lam: Weight, mu: Weight) -> dict:
    """Brauer-Klimyk: reflect ``lam + nu' + rho`` into the chamber for each weight ``nu'`` of ``V(mu)``."""
    _require_finite(g)
    rho = rd.rho(g)
    out: dict = {}
    for nu_p, m in freudenthal(g, tuple(mu)).items():
        x = rd.add(rd.add(lam, nu_p), rho)
        dom, word = rd.dominant_representative(g, x)
        if any(c == 0 for c in dom):
            continue
        nu = rd.sub(dom, rho)
        out[nu] = out.get(nu, 0) + (-1) ** len(word) * m
    return _sorted_summands({nu: c for nu, c in out.items() if c != 0})
