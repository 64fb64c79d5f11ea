# -*- coding: utf-8 -*-
#
# Copyright (c) 2022 Adam Solchenberger <asolchenberger@gmail.com>
# Copyright (c) 2022 Jason Engman <jengman@testtech-solutions.com>
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
#
import itertools
import logging
from dataclasses import dataclass
from math import prod
from typing import Optional, Sequence, Union

from sympy import Matrix, Rational, eye, isprime, multiplicity

from ..settings import DEFAULT_SETTINGS, Settings
from .lattice import INFINITE, AbelianError, Cardinality, IllFormedEndo
from .snf import as_matrix, smith_normal_form

__all__ = [
    "UnsupportedSubgroupForm", "QuasicyclicEndo", "TruncationLevel", "TruncationReport",
    "QuotientReport", "IterationReport", "quasicyclic_fixed", "quasicyclic_R",
    "quasicyclic_truncation", "quasicyclic_quotient", "quasicyclic_iteration",
]

logger = logging.getLogger(__name__)


class UnsupportedSubgroupForm(AbelianError):
    """
    raised when a subgroup of Z(p^inf)^d is given in a form that is not handled
    """


class QuasicyclicEndo(object):
    """
    An integer matrix M acting on Z(p^inf)^d = (Z[1/p]/Z)^d. At truncation
    level k the points x/p^k form (Z/p^k)^d and M acts by reduction mod p^k.
    """

    def __repr__(self) -> str:
        return f"<QuasicyclicEndo p={self.p} d={self.d} M={self.M.tolist()}>"

    def __init__(self, p: int, d: int, M: Union[Sequence, Matrix]) -> None:
        if any(isinstance(x, bool) or not isinstance(x, int) for x in (p, d)):
            raise IllFormedEndo(f"p and d must be integers, got p={p!r} d={d!r}")
        if not isprime(p):
            raise IllFormedEndo(f"p must be prime, got {p}")
        if d < 0:
            raise IllFormedEndo(f"dimension must be non-negative, got {d}")
        self.p = int(p)
        self.d = int(d)
        M = M if isinstance(M, Matrix) else as_matrix(M, (d, d) if d == 0 else None)
        if M.shape != (d, d):
            raise IllFormedEndo(f"matrix shape {M.shape} does not match dimension {d}")
        self.M = M

    @property
    def N(self) -> Matrix:
        return eye(self.d) - self.M

    @property
    def det_N(self) -> int:
        return int(self.N.det()) if self.d else 1

    @property
    def is_automorphism(self) -> bool:
        det = int(self.M.det()) if self.d else 1
        return det % self.p != 0

    def apply(self, x: Sequence[int], level: int) -> tuple:
        return _apply(self.M, x, self.p ** level)


def _apply(M: Matrix, x: Sequence[int], modulus: int) -> tuple:
    rows, cols = M.shape
    return tuple(sum(int(M[i, j]) * x[j] for j in range(cols)) % modulus for i in range(rows))


def quasicyclic_fixed(q: QuasicyclicEndo) -> Union[int, Cardinality]:
    """|C(phi)| = p^v_p(det(1 - M)), INFINITE when the determinant vanishes"""
    D = q.det_N
    if D == 0:
        return INFINITE
    return q.p ** int(multiplicity(q.p, abs(D)))


def quasicyclic_R(q: QuasicyclicEndo) -> Union[int, Cardinality]:
    """1 - M is onto a divisible group as soon as det(1 - M) != 0"""
    return 1 if q.det_N != 0 else INFINITE


@dataclass(frozen=True)
class TruncationLevel:
    level: int
    fixed: int
    expected_fixed: int
    surjective: Optional[bool]


@dataclass(frozen=True)
class TruncationReport:
    fixed: Union[int, Cardinality]
    R: Union[int, Cardinality]
    levels: tuple
    skipped: tuple

    @property
    def ok(self) -> bool:
        counts = [lv.fixed for lv in self.levels]
        if any(lv.fixed != lv.expected_fixed for lv in self.levels):
            return False
        if any(lv.surjective is False for lv in self.levels):
            return False
        if self.fixed is INFINITE:
            return all(a < b for a, b in zip(counts, counts[1:]))
        return all(a <= b <= self.fixed for a, b in zip(counts, counts[1:]))

    @property
    def stable(self) -> bool:
        """the fixed count has reached the formula value by the last level"""
        return bool(self.levels) and self.fixed is not INFINITE and self.levels[-1].fixed == self.fixed


def _level_kernel_order(diagonal: Sequence[int], d: int, p: int, level: int) -> int:
    """|Ker N| on (Z/p^k)^d from the Smith form of N"""
    modulus = p ** level
    padded = list(diagonal) + [0] * (d - len(diagonal))
    return prod(modulus if a == 0 else p ** min(int(multiplicity(p, abs(a))), level) for a in padded)


def quasicyclic_truncation(q: QuasicyclicEndo, settings: Optional[Settings] = None) -> TruncationReport:
    """
    count fixed points of M on (Z/p^k)^d for k = 2 .. truncation_level by
    enumeration; levels with more than enumeration_cap points are skipped.
    When R = 1 the image of 1 - M at level k must contain p^v times the
    level k - v points, v = v_p(det(1 - M)).
    """
    settings = settings or DEFAULT_SETTINGS
    p, d = q.p, q.d
    fixed = quasicyclic_fixed(q)
    R = quasicyclic_R(q)
    diagonal = smith_normal_form(q.N).diagonal
    v = int(multiplicity(p, abs(q.det_N))) if fixed is not INFINITE else 0
    levels, skipped = [], []
    for level in range(2, settings.truncation_level + 1):
        modulus = p ** level
        if modulus ** d > settings.enumeration_cap:
            skipped.append(level)
            continue
        count = 0
        image = set()
        for x in itertools.product(range(modulus), repeat=d):
            y = _apply(q.M, x, modulus)
            if y == x:
                count += 1
            image.add(tuple((a - b) % modulus for a, b in zip(x, y)))
        surjective = None
        if R == 1 and level > v:
            step = p ** v
            surjective = all(
                tuple(a * step for a in z) in image
                for z in itertools.product(range(p ** (level - v)), repeat=d)
            )
        levels.append(TruncationLevel(level, count, _level_kernel_order(diagonal, d, p, level), surjective))
        logger.debug("Z(%d^inf)^%d level %d: %d fixed points", p, d, level, count)
    return TruncationReport(fixed, R, tuple(levels), tuple(skipped))


@dataclass(frozen=True)
class QuotientReport:
    form: str
    finite: bool
    order: Optional[int]
    quotient_dimension: int
    dimension_ok: bool
    structure_checked: bool
    structure_ok: bool

    @property
    def ok(self) -> bool:
        return self.dimension_ok and self.structure_ok


def _parse_point(value, p: int) -> Rational:
    try:
        r = Rational(value)
    except (TypeError, ValueError, SyntaxError) as e:
        raise UnsupportedSubgroupForm(f"cannot read {value!r} as a rational: {e}")
    den = int(r.q)
    while den % p == 0:
        den //= p
    if den != 1:
        raise UnsupportedSubgroupForm(f"{value} is not a p-power fraction for p = {p}")
    return r


def _finite_closure(p: int, d: int, gens: list, settings: Settings) -> int:
    """order of the subgroup of (Q/Z)^d generated by p-power fractions"""
    if not gens:
        return 1
    level = max(int(multiplicity(p, int(x.q))) for g in gens for x in g)
    modulus = p ** level
    vectors = [tuple(int(x * modulus) % modulus for x in g) for g in gens]
    seen = {tuple([0] * d)}
    queue = list(seen)
    for x in queue:
        for g in vectors:
            y = tuple((a + b) % modulus for a, b in zip(x, g))
            if y not in seen:
                if len(seen) >= settings.enumeration_cap:
                    raise UnsupportedSubgroupForm("finite subgroup is over the enumeration cap")
                seen.add(y)
                queue.append(y)
    return len(seen)


def quasicyclic_quotient(p: int, d: int, H: dict, settings: Optional[Settings] = None) -> QuotientReport:
    """
    a subgroup of Z(p^inf)^d is either finite or the quotient by it has
    lower dimension. H is {"finite": [[x_1, .., x_d], ..]} with p-power
    fractions, or {"image": N} for the divisible image of an integer d x r
    matrix.
    """
    settings = settings or DEFAULT_SETTINGS
    if not isinstance(H, dict) or len(H) != 1:
        raise UnsupportedSubgroupForm(f"expected a single 'finite' or 'image' entry, got {H!r}")
    if "finite" in H:
        gens = []
        for g in H["finite"]:
            if len(g) != d:
                raise UnsupportedSubgroupForm(f"generator {g!r} needs {d} coordinates")
            gens.append([_parse_point(x, p) for x in g])
        order = _finite_closure(p, d, gens, settings)
        return QuotientReport("finite", True, order, d, True, True, True)
    if "image" not in H:
        raise UnsupportedSubgroupForm(f"unknown subgroup form {next(iter(H))!r}")
    rows = H["image"]
    try:
        N = as_matrix(rows, (d, 0) if not rows or not rows[0] else None)
    except ValueError as e:
        raise UnsupportedSubgroupForm(str(e))
    if N.shape[0] != d:
        raise UnsupportedSubgroupForm(f"image matrix needs {d} rows, got {N.shape[0]}")
    snf = smith_normal_form(N)
    r = snf.rank
    quotient_dimension = d - r
    if r == 0:
        return QuotientReport("image", True, 1, d, True, True, True)
    # |N (Z/p^k)^cols| grows by p^rank per level once k exceeds every valuation
    top = max(int(multiplicity(p, a)) for a in snf.diagonal if a)
    levels = [k for k in range(1, settings.truncation_level + 1)
              if (p ** k) ** N.shape[1] <= settings.enumeration_cap]
    structure_checked = len(levels) >= 2 and levels[-2] > top
    structure_ok = True
    if structure_checked:
        sizes = []
        for k in levels[-2:]:
            modulus = p ** k
            sizes.append(len({_apply(N, x, modulus) for x in itertools.product(range(modulus), repeat=N.shape[1])}))
        structure_ok = sizes[1] == sizes[0] * p ** r
    return QuotientReport("image", False, None, quotient_dimension, quotient_dimension < d,
                          structure_checked, structure_ok)


@dataclass(frozen=True)
class IterationReport:
    steps: int
    dimensions: tuple
    stopped_on: str  # "finite" or "identity"
    fixed: Union[int, Cardinality]
    R: Union[int, Cardinality]

    @property
    def ok(self) -> bool:
        decreasing = all(a > b for a, b in zip(self.dimensions, self.dimensions[1:]))
        return decreasing and (self.stopped_on == "identity") == (self.R is INFINITE)


def quasicyclic_iteration(q: QuasicyclicEndo) -> IterationReport:
    """
    pass to G / (divisible part of C(phi)) until the fixed group is finite or
    phi is the identity. In Smith coordinates of 1 - M the divisible part of
    the kernel is spanned by the last d - rank basis vectors of V, so the
    induced map is the leading block of V^-1 M V.
    """
    p = q.p
    M = q.M
    dims = [q.d]
    steps = 0
    while True:
        current = QuasicyclicEndo(p, M.shape[0], M)
        if current.det_N != 0:
            return IterationReport(steps, tuple(dims), "finite", quasicyclic_fixed(current), 1)
        if current.M == eye(current.d):
            return IterationReport(steps, tuple(dims), "identity", INFINITE, INFINITE)
        snf = smith_normal_form(current.N)
        r = snf.rank
        V = snf.V
        M = (V.inv() * current.M * V)[:r, :r]
        steps += 1
        dims.append(r)
        logger.debug("quasicyclic iteration step %d: dimension %d", steps, r)
