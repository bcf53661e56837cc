"""Quadruples ``lam1 + lam2 = lam3 + lam4`` and transfer of components between them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import rootdata as rd
from .components import Monomial, check_mu_dominant, support_certificate
from .errors import (
    BadSupport,
    HypothesisViolated,
    NotDominant,
    NotFiniteType,
    SumMismatch,
    TheoremViolation,
)
from .rootdata import GCM, Weight
from .tensor import decompose, tensor_multiplicity


@dataclass(frozen=True)
class Quadruple:
    lam1: Weight
    lam2: Weight
    lam3: Weight
    lam4: Weight

    def __post_init__(self):
        for name in ("lam1", "lam2", "lam3", "lam4"):
            w = tuple(getattr(self, name))
            if not rd.is_dominant_integral(w):
                raise NotDominant(f"{name} = {w} is not dominant integral")
            object.__setattr__(self, name, w)
        if rd.add(self.lam1, self.lam2) != rd.add(self.lam3, self.lam4):
            raise SumMismatch("lam1 + lam2 must equal lam3 + lam4")

    @classmethod
    def parse(cls, text: str) -> "Quadruple":
        """``"3;1;4;0"`` or ``"1,1;0,0;1,0;0,1"``."""
        parts = [rd.parse_weight(p) for p in text.split(";")]
        if len(parts) != 4:
            raise ValueError("a quadruple needs four weights separated by ';'")
        return cls(*parts)

    @property
    def total(self) -> Weight:
        return rd.add(self.lam1, self.lam2)

    def swapped(self) -> "Quadruple":
        return Quadruple(self.lam3, self.lam4, self.lam1, self.lam2)


def _require_finite(g: GCM) -> None:
    if not g.is_finite:
        raise NotFiniteType(f"{g} is not of finite type")


def star_hypothesis(g: GCM, q: Quadruple) -> bool:
    """``|(lam1 - lam2)(a^vee)| <= |(lam3 - lam4)(a^vee)|`` for every positive root."""
    _require_finite(g)
    abs_form = True
    min_form = True
    for coeffs in rd.positive_root_coefficients(g):
        l1, l2, l3, l4 = (rd.coroot_pairing(g, w, coeffs) for w in (q.lam1, q.lam2, q.lam3, q.lam4))
        abs_form &= abs(l1 - l2) <= abs(l3 - l4)
        min_form &= min(l3, l4) <= min(l1, l2)
    assert abs_form == min_form, "absolute and min forms disagree"
    return abs_form


def _lex_sigma(g: GCM, lam1: Weight, lam2: Weight, indices: Sequence[int]) -> Optional[tuple]:
    for sigma in itertools.permutations(range(len(indices))):
        m = Monomial(tuple((indices[k], 1) for k in sigma))
        if check_mu_dominant(g, lam2, lam1, m):
            return sigma
    return None


def transfer_preconditions(g: GCM, q: Quadruple, indices: Sequence[int]) -> Optional[str]:
    """Name of the first failing precondition of :func:`transfer_sigma`, or ``None``."""
    indices = tuple(indices)
    if not indices:
        return "empty index tuple"
    if len(set(indices)) != len(indices):
        return "indices are not distinct"
    info = rd.subdiagram_classify(g, indices)
    if not (info.connected and info.ade):
        return "support is not a connected ADE subdiagram"
    if not check_mu_dominant(g, q.lam4, q.lam3, Monomial(tuple((i, 1) for i in indices))):
        return "monomial on pi_lam4 is not lam3-dominant"
    if not star_hypothesis(g, q):
        return "(*) fails"
    return None


def transfer_sigma(g: GCM, q: Quadruple, indices: Sequence[int]) -> tuple:
    """Lexicographically least ``sigma`` (0-based positions) with
    ``f_{i_sigma(1)} ... f_{i_sigma(t)} pi_lam2`` nonzero and ``lam1``-dominant."""
    indices = tuple(indices)
    failed = transfer_preconditions(g, q, indices)
    if failed:
        raise HypothesisViolated(failed)
    sigma = _lex_sigma(g, q.lam1, q.lam2, indices)
    if sigma is None:
        raise TheoremViolation(f"no sigma for {q} on {indices}")
    return sigma


@dataclass
class SupportTransferReport:
    beta: Weight
    c34: int
    c12: int
    certificates: list  # (component order for lam3/lam4, sigma)

    @property
    def holds(self) -> bool:
        return self.c34 == 0 or self.c12 > 0

    def to_json(self) -> dict:
        return {
            "beta": [str(c) for c in self.beta],
            "c34": self.c34,
            "c12": self.c12,
            "holds": self.holds,
            "certificates": [
                {"order": list(order), "sigma": list(sigma)} for order, sigma in self.certificates
            ],
        }


def support_transfer(g: GCM, q: Quadruple, beta: Weight) -> SupportTransferReport:
    """If ``V(lam - beta)`` occurs in ``V(lam3) (x) V(lam4)`` it occurs in
    ``V(lam1) (x) V(lam2)``; ``beta`` is a sum of distinct simple roots."""
    _require_finite(g)
    nodes = support_certificate(g, rd.to_root_coords(g, beta))
    if not nodes:
        raise BadSupport(f"{tuple(beta)} is not a nonempty sum of distinct simple roots")
    info = rd.subdiagram_classify(g, nodes)
    if not info.ade:
        raise BadSupport("support is not a union of ADE diagrams")
    if not star_hypothesis(g, q):
        raise HypothesisViolated("(*) fails")
    nu = rd.sub(q.total, beta)
    if not rd.is_dominant(nu):
        return SupportTransferReport(tuple(beta), 0, 0, [])
    c34 = tensor_multiplicity(g, q.lam3, q.lam4, nu)
    if c34 == 0:
        return SupportTransferReport(tuple(beta), 0, 0, [])
    certs = []
    for _, comp in info.components:
        order = next(
            (
                perm
                for perm in itertools.permutations(comp)
                if check_mu_dominant(g, q.lam4, q.lam3, Monomial(tuple((i, 1) for i in perm)))
            ),
            None,
        )
        assert order is not None, "a lam3-dominant element of this weight must be a monomial"
        certs.append((order, transfer_sigma(g, q, order)))
    c12 = tensor_multiplicity(g, q.lam1, q.lam2, nu)
    if c12 == 0:
        raise TheoremViolation(f"V{nu} in lam3 x lam4 but not in lam1 x lam2 for {q}")
    return SupportTransferReport(tuple(beta), c34, c12, certs)


@dataclass
class SchurReport:
    quadruple: Quadruple
    star: bool
    violations: dict  # nu -> (c34, c12)

    def to_json(self) -> dict:
        return {
            "quadruple": [[str(c) for c in w] for w in
                          (self.quadruple.lam1, self.quadruple.lam2, self.quadruple.lam3, self.quadruple.lam4)],
            "star": self.star,
            "violations": [
                {"nu": [str(c) for c in nu], "c34": a, "c12": b} for nu, (a, b) in self.violations.items()
            ],
        }


def full_schur_check(g: GCM, q: Quadruple) -> SchurReport:
    """All ``nu`` with ``c^nu_{lam3,lam4} > c^nu_{lam1,lam2}``; reports, never asserts."""
    _require_finite(g)
    d12 = decompose(g, q.lam1, q.lam2).summands
    d34 = decompose(g, q.lam3, q.lam4).summands
    bad = {nu: (c, d12.get(nu, 0)) for nu, c in d34.items() if c > d12.get(nu, 0)}
    return SchurReport(q, star_hypothesis(g, q), bad)
