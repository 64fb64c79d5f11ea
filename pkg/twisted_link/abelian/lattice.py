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
from enum import Enum
from functools import cached_property
from math import gcd, lcm, prod
from typing import Optional, Sequence, Union

from sympy import Matrix, eye, factorint, zeros

from ..api import TwistedLinkError
from ..settings import DEFAULT_SETTINGS, Settings
from .snf import SNFResult, as_matrix, integer_kernel, smith_normal_form, solve_integer

__all__ = [
    "AbelianError", "IllFormedEndo", "InfiniteReidemeister", "Cardinality", "INFINITE",
    "is_finite", "LatticeAbelianGroup", "LatticeAbelianEndo", "TorsionDecomposition",
    "TbftWitness", "FinFixReport", "TorsionFixedReport", "PrimaryFixedReport",
    "reidemeister_abelian", "fixed_abelian", "torsion_decompose", "tbft_witness_abelian",
    "class_bijection_check",
    "fin_fix_check", "fixed_on_torsion_check", "primary_fixed_orders",
    "reidemeister_abelian_bruteforce", "fixed_abelian_bruteforce",
]

logger = logging.getLogger(__name__)


class AbelianError(TwistedLinkError):
    """
    base class for errors in abelian group computations
    """

class IllFormedEndo(AbelianError):
    """
    raised when a matrix does not induce a map on the lattice quotient
    """

class InfiniteReidemeister(AbelianError):
    """
    raised when a finite Reidemeister number is required but R is infinite
    """


class Cardinality(Enum):
    INFINITE = "infinite"

    def __str__(self) -> str:
        return self.value


INFINITE = Cardinality.INFINITE


def is_finite(value: Union[int, Cardinality]) -> bool:
    return value is not INFINITE


class LatticeAbelianGroup(object):
    """
    Z^k modulo the column span of the relation matrix L.
    Elements are integer vectors; normal_form() gives canonical coordinates.
    """

    def __repr__(self) -> str:
        return f"<LatticeAbelianGroup free_rank={self.free_rank} invariants={list(self.invariant_factors)}>"

    def __init__(self, ambient_rank: int, relations: Union[Sequence, Matrix] = ()) -> None:
        if ambient_rank < 0:
            raise AbelianError(f"ambient rank must be non-negative, got {ambient_rank}")
        self.ambient_rank = ambient_rank
        if isinstance(relations, Matrix):
            L = relations
        else:
            relations = [list(r) for r in relations]
            if any(len(r) != ambient_rank for r in relations):
                raise AbelianError(f"every relation needs {ambient_rank} entries")
            L = as_matrix(relations, (ambient_rank, 0) if not relations else None)
            if relations:
                L = L.T
        if L.shape[0] != ambient_rank:
            raise AbelianError(f"relation matrix has {L.shape[0]} rows, expected {ambient_rank}")
        self.L = L

    @cached_property
    def snf(self) -> SNFResult:
        return smith_normal_form(self.L)

    @cached_property
    def U_inv(self) -> Matrix:
        U = self.snf.U
        return U.inv() if U.shape[0] else U

    @property
    def rank_of_relations(self) -> int:
        return self.snf.rank

    @property
    def free_rank(self) -> int:
        return self.ambient_rank - self.snf.rank

    @property
    def invariant_factors(self) -> tuple:
        return self.snf.invariant_factors

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> Union[int, Cardinality]:
        return prod(self.invariant_factors) if self.is_finite else INFINITE

    @property
    def moduli(self) -> tuple:
        """the modulus of each normal form coordinate, 0 for free ones"""
        diag = self.snf.diagonal
        r = self.snf.rank
        return tuple(diag[i] for i in range(r)) + (0,) * (self.ambient_rank - r)

    def vector(self, x: Sequence[int]) -> Matrix:
        if len(x) != self.ambient_rank:
            raise AbelianError(f"vectors need {self.ambient_rank} entries, got {len(x)}")
        return Matrix(self.ambient_rank, 1, [int(a) for a in x])

    def normal_form(self, x: Union[Sequence[int], Matrix]) -> tuple:
        if not isinstance(x, Matrix):
            x = self.vector(x)
        y = self.snf.U * x
        return tuple(int(y[i]) % m if m else int(y[i]) for i, m in enumerate(self.moduli))

    def from_normal_form(self, y: Sequence[int]) -> Matrix:
        return self.U_inv * Matrix(self.ambient_rank, 1, list(y))

    def contains(self, x: Union[Sequence[int], Matrix]) -> bool:
        """x lies in the relation lattice, i.e. is zero in the group"""
        return not any(self.normal_form(x))

    def elements(self, settings: Optional[Settings] = None) -> list:
        """normal forms of all elements of a finite group"""
        settings = settings or DEFAULT_SETTINGS
        if not self.is_finite:
            raise AbelianError("cannot list the elements of an infinite group")
        if self.order > settings.enumeration_cap:
            raise AbelianError(f"group of order {self.order} is over the enumeration cap")
        return list(itertools.product(*(range(m) for m in self.moduli)))

    def element_order(self, y: Sequence[int]) -> Union[int, Cardinality]:
        """order of the element with normal form y"""
        result = 1
        for value, m in zip(y, self.moduli):
            if m == 0:
                if value:
                    return INFINITE
            else:
                result = lcm(result, m // gcd(value, m))
        return result


class LatticeAbelianEndo(object):
    """
    the endomorphism of a LatticeAbelianGroup induced by an integer matrix M
    """

    def __repr__(self) -> str:
        return f"<LatticeAbelianEndo M={self.M.tolist()} on {self.group!r}>"

    def __init__(self, group: LatticeAbelianGroup, M: Union[Sequence, Matrix]) -> None:
        self.group = group
        k = group.ambient_rank
        M = M if isinstance(M, Matrix) else as_matrix(M, (k, k) if k == 0 else None)
        if M.shape != (k, k):
            raise IllFormedEndo(f"matrix shape {M.shape} does not match ambient rank {k}")
        self.M = M
        for j in range(group.L.shape[1]):
            if not group.contains(M * group.L[:, j]):
                raise IllFormedEndo(f"relation {list(group.L[:, j])} is not mapped into the relation lattice")

    @property
    def N(self) -> Matrix:
        """1 - M"""
        return eye(self.group.ambient_rank) - self.M

    def apply(self, x: Union[Sequence[int], Matrix]) -> Matrix:
        if not isinstance(x, Matrix):
            x = self.group.vector(x)
        return self.M * x

    def on_normal_form(self, y: Sequence[int]) -> tuple:
        return self.group.normal_form(self.M * self.group.from_normal_form(y))

    @cached_property
    def is_automorphism(self) -> bool:
        """M is onto modulo the relations; onto maps of f.g. abelian groups are injective"""
        k = self.group.ambient_rank
        snf = smith_normal_form(Matrix.hstack(self.M, self.group.L))
        return snf.rank == k and all(d == 1 for d in snf.diagonal[:k])


def reidemeister_abelian(e: LatticeAbelianEndo) -> Union[int, Cardinality]:
    """|Coker(1 - phi)|, the order of Z^k / (Im(1 - M) + L)"""
    k = e.group.ambient_rank
    snf = smith_normal_form(Matrix.hstack(e.N, e.group.L))
    if snf.rank < k:
        return INFINITE
    return prod(snf.diagonal[:k])


def _fixed_lattice(e: LatticeAbelianEndo) -> Matrix:
    """columns generating {x : (1 - M) x in L}"""
    k = e.group.ambient_rank
    kernel = integer_kernel(Matrix.hstack(e.N, -e.group.L))
    return kernel[:k, :]


def fixed_abelian(e: LatticeAbelianEndo) -> LatticeAbelianGroup:
    """
    Ker(1 - phi) = {x : (1 - M) x in L} / L, presented on a basis of the
    preimage lattice
    """
    group = e.group
    X = _fixed_lattice(e)
    if X.shape[1] == 0:
        return LatticeAbelianGroup(0)
    snf = smith_normal_form(X)
    s = snf.rank
    # basis of the column span of X
    B = (snf.U.inv() * snf.D)[:, :s]
    if group.L.shape[1] == 0:
        return LatticeAbelianGroup(s)
    coords = []
    for j in range(group.L.shape[1]):
        c = solve_integer(B, group.L[:, j])
        if c is None:
            raise IllFormedEndo("the relation lattice is not inside the fixed preimage")
        coords.append(c)
    return LatticeAbelianGroup(s, Matrix.hstack(*coords))


@dataclass(frozen=True)
class TorsionDecomposition:
    parts: tuple  # (prime, exponents in decreasing order)
    free_rank: int

    def to_json(self) -> dict:
        return {'free_rank': self.free_rank, 'parts': [[p, list(e)] for p, e in self.parts]}


def torsion_decompose(A: LatticeAbelianGroup) -> TorsionDecomposition:
    parts = {}
    for d in A.invariant_factors:
        for p, e in factorint(d).items():
            parts.setdefault(int(p), []).append(int(e))
    return TorsionDecomposition(
        tuple((p, tuple(sorted(parts[p], reverse=True))) for p in sorted(parts)),
        A.free_rank,
    )


@dataclass(frozen=True)
class TbftWitness:
    """
    F = A / Im(1 - phi) with the automorphism phi induces on it
    """
    F: LatticeAbelianGroup
    induced: LatticeAbelianEndo
    R: int
    F_order: int
    R_on_F: int
    checked_points: int
    bijection_ok: bool


def class_bijection_check(e: LatticeAbelianEndo, F: LatticeAbelianGroup,
                          settings: Optional[Settings] = None) -> tuple:
    """
    pull back one point of Z^k for every element of F and check, against
    Im(1 - M) + L directly, that no two of them share a coset and that every
    point of a box around 0 lies in the coset of one of them.

    Returns (ok, number of box points checked).
    """
    settings = settings or DEFAULT_SETTINGS
    group = e.group
    if F.ambient_rank != group.ambient_rank or not F.is_finite or F.order > settings.witness_R_cap:
        return False, 0
    span = Matrix.hstack(e.N, group.L)
    snf = smith_normal_form(span)
    reps = [F.from_normal_form(y) for y in F.elements(settings)]
    for a, b in itertools.combinations(reps, 2):
        if solve_integer(span, a - b, snf) is not None:
            logger.debug("representatives %s and %s share a class", list(a), list(b))
            return False, 0
    checked = 0
    width = settings.witness_box
    for x in itertools.product(range(-width, width + 1), repeat=group.ambient_rank):
        xv = group.vector(x)
        hit = False
        for r in reps:
            z = solve_integer(span, xv - r, snf)
            if z is not None and span * z == xv - r:
                hit = True
                break
        if not hit:
            logger.debug("box point %s is in no representative's class", x)
            return False, checked
        checked += 1
    return True, checked


def tbft_witness_abelian(e: LatticeAbelianEndo, settings: Optional[Settings] = None) -> TbftWitness:
    """
    the classes of phi on A are the cosets of Im(1 - phi), so the projection
    to F matches them with the elements of F. Finite A is checked orbit by
    orbit; otherwise see class_bijection_check.
    """
    settings = settings or DEFAULT_SETTINGS
    R = reidemeister_abelian(e)
    if not is_finite(R):
        raise InfiniteReidemeister("phi has infinitely many twisted classes")
    group = e.group
    F = LatticeAbelianGroup(group.ambient_rank, Matrix.hstack(e.N, group.L))
    induced = LatticeAbelianEndo(F, e.M)
    R_on_F = reidemeister_abelian(induced)
    ok = F.order == R and R_on_F == F.order and induced.is_automorphism
    checked = 0
    if group.is_finite and group.order <= settings.enumeration_cap:
        classes = _orbits(e, settings)
        images = {}
        for y, c in classes.items():
            f = F.normal_form(group.from_normal_form(y))
            images.setdefault(c, set()).add(f)
            checked += 1
        ok = ok and all(len(v) == 1 for v in images.values())
        ok = ok and len({next(iter(v)) for v in images.values()}) == len(images) == R
    elif R > settings.witness_R_cap:
        ok = False
    else:
        bijection, checked = class_bijection_check(e, F, settings)
        ok = ok and bijection
    return TbftWitness(F, induced, R, F.order, R_on_F, checked, ok)


def _orbits(e: LatticeAbelianEndo, settings: Settings) -> dict:
    """
    normal form -> class index for the action x -> x + (1 - M) g on a finite group
    """
    group = e.group
    elements = group.elements(settings)
    index = {y: i for i, y in enumerate(elements)}
    moves = [group.normal_form(e.N * group.from_normal_form(y))
             for y in _basis_normal_forms(group)]
    moduli = group.moduli
    parent = list(range(len(elements)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for y in elements:
        for m in moves:
            z = tuple((a + b) % q for a, b, q in zip(y, m, moduli))
            ra, rb = find(index[y]), find(index[z])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return {y: find(index[y]) for y in elements}


def _basis_normal_forms(group: LatticeAbelianGroup) -> list:
    k = group.ambient_rank
    return [tuple(int(i == j) for j in range(k)) for i in range(k) if group.moduli[i] != 1]


def reidemeister_abelian_bruteforce(e: LatticeAbelianEndo, settings: Optional[Settings] = None) -> int:
    """orbit count of x -> x + g - phi(g) by enumeration"""
    settings = settings or DEFAULT_SETTINGS
    return len(set(_orbits(e, settings).values()))


def fixed_abelian_bruteforce(e: LatticeAbelianEndo, settings: Optional[Settings] = None) -> list:
    """normal forms of the fixed points, by enumeration"""
    settings = settings or DEFAULT_SETTINGS
    return [y for y in e.group.elements(settings) if e.on_normal_form(y) == y]


@dataclass(frozen=True)
class FinFixReport:
    R: Union[int, Cardinality]
    fixed: Union[int, Cardinality]

    @property
    def ok(self) -> bool:
        return not is_finite(self.R) or is_finite(self.fixed)


def fin_fix_check(e, settings: Optional[Settings] = None) -> FinFixReport:
    """
    R < infinity implies |C| < infinity, for a lattice or quasicyclic endomorphism
    """
    from .quasicyclic import QuasicyclicEndo, quasicyclic_R, quasicyclic_fixed
    if isinstance(e, QuasicyclicEndo):
        return FinFixReport(quasicyclic_R(e), quasicyclic_fixed(e))
    return FinFixReport(reidemeister_abelian(e), fixed_abelian(e).order)


@dataclass(frozen=True)
class TorsionFixedReport:
    applicable: bool
    fixed_total: Union[int, Cardinality]
    fixed_torsion: Union[int, Cardinality]
    R_torsion: Union[int, Cardinality]

    @property
    def ok(self) -> bool:
        if not self.applicable:
            return True
        return self.fixed_total == self.fixed_torsion and is_finite(self.R_torsion)


def _torsion_split(e: LatticeAbelianEndo) -> tuple:
    """
    M in normal form coordinates U M U^-1, split into the torsion block and
    the block on A/T
    """
    group = e.group
    r = group.rank_of_relations
    Mp = group.snf.U * e.M * group.U_inv
    return Mp, r


def fixed_on_torsion_check(e: LatticeAbelianEndo) -> TorsionFixedReport:
    """
    when 1 - phi is injective on A/T, the fixed points of phi all lie in the
    torsion subgroup T
    """
    group = e.group
    Mp, r = _torsion_split(e)
    k = group.ambient_rank
    free = Mp[r:, r:]
    total = fixed_abelian(e).order
    if k > r and (eye(k - r) - free).det() == 0:
        return TorsionFixedReport(False, total, INFINITE, INFINITE)
    diag = group.snf.diagonal
    T = LatticeAbelianGroup(r, [[diag[i] if j == i else 0 for j in range(r)] for i in range(r)])
    torsion = LatticeAbelianEndo(T, Mp[:r, :r]) if r else None
    if torsion is None:
        return TorsionFixedReport(True, total, 1, 1)
    return TorsionFixedReport(True, total, fixed_abelian(torsion).order, reidemeister_abelian(torsion))


@dataclass(frozen=True)
class PrimaryFixedReport:
    fixed: int
    by_prime: dict

    @property
    def ok(self) -> bool:
        return prod(self.by_prime.values()) == self.fixed


def primary_fixed_orders(e: LatticeAbelianEndo, settings: Optional[Settings] = None) -> PrimaryFixedReport:
    """
    split the fixed points of phi on a finite group by the prime of their order
    """
    group = e.group
    fixed = fixed_abelian_bruteforce(e, settings)
    primes = sorted(factorint(len(fixed)))
    by_prime = {}
    for p in primes:
        count = 0
        for y in fixed:
            order = group.element_order(y)
            if order == 1 or set(factorint(order)) == {p}:
                count += 1
        by_prime[int(p)] = count
    return PrimaryFixedReport(len(fixed), by_prime)
