"""Weyl polytopes, the deep chamber condition and containment of tensor products.

Polytope membership uses the dominance characterization; a Caratheodory
search over vertex subsets is kept as an independent exact oracle.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import _linalg
from . import rootdata as rd
from .errors import (
    HypothesisViolated,
    LengthConditionFailed,
    NotDeep,
    NotDominant,
    NotDominantDifference,
    NotFiniteType,
    TheoremViolation,
)
from .pathcrystal import (
    apply_f_sequence,
    demazure_subcrystal,
    extremal_element,
    f_op,
    straight_path,
)
from .rootdata import GCM, Weight
from .schur import Quadruple, star_hypothesis
from .tensor import Decomposition, weight_support


def _require_finite(g: GCM) -> None:
    if not g.is_finite:
        raise NotFiniteType(f"{g} is not of finite type")


@dataclass(frozen=True)
class ShiftedWeylPolytope:
    """``base + conv(W shape)``."""

    g: GCM
    base: Weight
    shape: Weight

    def __post_init__(self):
        _require_finite(self.g)
        if not rd.is_dominant(self.shape):
            raise NotDominant(f"shape {self.shape} is not dominant")

    @cached_property
    def vertices(self) -> tuple:
        return tuple(sorted(rd.add(self.base, x) for x in rd.weyl_orbit(self.g, tuple(self.shape))))

    @property
    def top(self) -> Weight:
        return rd.add(self.base, self.shape)

    @property
    def bottom(self) -> Weight:
        return rd.add(self.base, rd.apply_word(self.g, rd.longest_word(self.g), self.shape))

    def sandwich_holds(self) -> bool:
        """Every vertex lies in ``(top - Q+) cap (bottom + Q+)`` over the reals."""
        return all(
            rd.dominance_leq(self.g, v, self.top, "nonneg-rationals")
            and rd.dominance_leq(self.g, self.bottom, v, "nonneg-rationals")
            for v in self.vertices
        )


def is_deep(g: GCM, lam: Weight, mu: Weight) -> bool:
    """``lam + w mu`` dominant for every ``w``."""
    _require_finite(g)
    return all(rd.is_dominant(rd.add(lam, x)) for x in rd.weyl_orbit(g, tuple(mu)))


def polytope_contains_point(p: ShiftedWeylPolytope, x: Weight) -> bool:
    dom, _ = rd.dominant_representative(p.g, rd.sub(x, p.base))
    return rd.dominance_leq(p.g, dom, p.shape, "nonneg-rationals")


def caratheodory_contains(p: ShiftedWeylPolytope, x: Weight) -> bool:
    """Search affinely independent vertex subsets for a convex combination equal to ``x``."""
    n = p.g.n
    verts = p.vertices
    target = list(x) + [1]
    for k in range(1, min(n + 1, len(verts)) + 1):
        for subset in itertools.combinations(verts, k):
            rows = [[v[c] for v in subset] for c in range(n)] + [[1] * k]
            t = _linalg.solve(rows, target)
            if t is not None and all(c >= 0 for c in t):
                return True
    return False


def polytope_contained(g: GCM, q: Quadruple) -> bool:
    """``P_{lam3,lam4}`` inside ``P_{lam1,lam2}``, decided on vertices."""
    inner_p = ShiftedWeylPolytope(g, q.lam3, q.lam4)
    outer_p = ShiftedWeylPolytope(g, q.lam1, q.lam2)
    return all(polytope_contains_point(outer_p, v) for v in inner_p.vertices)


def edge_beta_length(g: GCM, w: Sequence[int], beta: int, nu: Weight) -> int:
    """``(w nu)(alpha_beta^vee)`` for an edge ``[w nu, s_beta w nu]`` with ``l(s_beta w) = l(w) + 1``."""
    _require_finite(g)
    g.check_index(beta)
    w = tuple(w)
    if rd.word_length(g, (beta,) + w) != rd.word_length(g, w) + 1:
        raise LengthConditionFailed(f"l(s_{beta} w) != l(w) + 1 for w = {w}")
    return rd.apply_word(g, w, nu)[beta - 1]


@dataclass
class LiftingReport:
    applicable_small: bool
    applicable_big: bool
    distinct_small: bool
    distinct_big: bool

    @property
    def holds(self) -> bool:
        return (not self.applicable_small or self.applicable_big) and (
            not self.distinct_small or self.distinct_big
        )


def lifting_check(g: GCM, lam_small: Weight, mu: Weight, word: Sequence[int], word2: Sequence[int]) -> LiftingReport:
    """Replay both claims of the lifting lemma for ``lam = lam_small + mu``.

    Words are applied first letter first.
    """
    _require_finite(g)
    for w in (lam_small, mu):
        if not rd.is_dominant_integral(w):
            raise NotDominant(f"{w} is not dominant integral")
    lam = rd.add(lam_small, mu)
    small = [apply_f_sequence(g, straight_path(lam_small), w) for w in (word, word2)]
    big = [apply_f_sequence(g, straight_path(lam), w) for w in (word, word2)]
    distinct_small = None not in small and small[0] != small[1]
    distinct_big = None not in big and big[0] != big[1]
    return LiftingReport(small[0] is not None, big[0] is not None, distinct_small, distinct_big)


def deep_decompose(g: GCM, lam: Weight, mu: Weight) -> Decomposition:
    """``V(lam) (x) V(mu) = sum_nu V(lam + nu)^{m_mu(nu)}`` for deep ``lam``."""
    if not is_deep(g, lam, mu):
        raise NotDeep(f"{tuple(lam)} is not deep relative to {tuple(mu)}")
    counts: dict = {}
    for nu, m in weight_support(g, mu).items():
        key = rd.add(lam, nu)
        counts[key] = counts.get(key, 0) + m
    return Decomposition(tuple(lam), tuple(mu), {k: counts[k] for k in sorted(counts, reverse=True)})


def star_implies_containment(g: GCM, q: Quadruple) -> bool:
    if not star_hypothesis(g, q):
        raise HypothesisViolated("(*) fails")
    if not is_deep(g, q.lam1, q.lam2):
        raise HypothesisViolated("lam1 is not deep relative to lam2")
    if not is_deep(g, q.lam3, q.lam4):
        raise HypothesisViolated("lam3 is not deep relative to lam4")
    if not polytope_contained(g, q):
        raise TheoremViolation(f"P_(lam3,lam4) not inside P_(lam1,lam2) for {q}")
    return True


def _apply_operator_word(g: GCM, x, word: Sequence[int]):
    """``f_{i_1} ... f_{i_t} x`` (rightmost letter first)."""
    for i in reversed(tuple(word)):
        if x is None:
            return None
        x = f_op(g, x, i)
    return x


def kk_containment(g: GCM, lam2: Weight, lam4: Weight, w: Sequence[int], word: Sequence[int]) -> bool:
    """If ``f_word v_{w lam4}`` lies in ``B_w(lam4)``, check ``f_word v_{w lam2}`` lies in ``B_w(lam2)``.

    Returns the truth of the implication for this instance.
    """
    _require_finite(g)
    diff = rd.sub(lam2, lam4)
    if not (rd.is_dominant_integral(lam4) and rd.is_dominant_integral(diff)):
        raise NotDominantDifference(f"{tuple(lam2)} - {tuple(lam4)} is not dominant")
    small = _apply_operator_word(g, extremal_element(g, lam4, w), word)
    if small is None or small not in demazure_subcrystal(g, lam4, w):
        return True
    big = _apply_operator_word(g, extremal_element(g, lam2, w), word)
    return big is not None and big in demazure_subcrystal(g, lam2, w)
