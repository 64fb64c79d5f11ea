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
import logging
from dataclasses import dataclass
from math import isqrt
from typing import Optional

from sympy import FiniteField, Poly, Symbol, nextprime, primitive_root, sqrt_mod
from sympy.polys.matrices import DomainMatrix

from .api import TwistedLinkError
from .group import FiniteGroup, class_index, conjugacy_classes, exponent, is_abelian
from .morphism import Automorphism
from .settings import DEFAULT_SETTINGS, Settings
from .twisted import reidemeister_number

__all__ = [
    "CapExceeded", "PrimeSearchFailed", "ModPCharacterTable", "ClassPermutation", "TbftResult",
    "dixon_prime", "character_table", "class_permutation", "dual_map",
    "fixed_character_count", "verify_tbft_finite",
]

logger = logging.getLogger(__name__)

PRIME_SEARCH_LIMIT = 10 ** 9


class CapExceeded(TwistedLinkError):
    """
    raised when a group is too large for a character table
    """

class PrimeSearchFailed(TwistedLinkError):
    """
    raised when no suitable prime is found below the search limit
    """


@dataclass(frozen=True)
class ModPCharacterTable:
    """
    Irreducible characters of a group with values reduced mod prime. Columns
    follow conjugacy_classes(group), rows are ordered by degree with the
    trivial character first.
    """
    group: FiniteGroup
    prime: int
    class_reps: tuple
    class_sizes: tuple
    rows: tuple
    degrees: tuple

    @property
    def class_count(self) -> int:
        return len(self.class_reps)

    def inverse_classes(self) -> list:
        index = class_index(self.group)
        return [index[self.group.inv(g)] for g in self.class_reps]

    def check_orthogonality(self) -> bool:
        """
        row and column orthogonality mod p, the degree equation over the
        integers and distinct rows
        """
        p = self.prime
        n = self.group.order
        k = self.class_count
        inv = self.inverse_classes()
        sizes = self.class_sizes
        for a in range(k):
            for b in range(k):
                total = sum(sizes[c] * self.rows[a][c] * self.rows[b][inv[c]] for c in range(k)) % p
                if total != (n % p if a == b else 0):
                    return False
        for c in range(k):
            for d in range(k):
                total = sum(row[c] * row[inv[d]] for row in self.rows) % p
                expected = (n // sizes[c]) % p if c == d else 0
                if total != expected:
                    return False
        if sum(d * d for d in self.degrees) != n:
            return False
        return len(set(self.rows)) == len(self.rows) == k

    def to_json(self) -> dict:
        return {
            'prime': self.prime,
            'class_sizes': list(self.class_sizes),
            'degrees': list(self.degrees),
            'rows': [list(r) for r in self.rows],
        }


@dataclass(frozen=True)
class ClassPermutation:
    """class(phi(g)) == perm[class(g)]"""
    perm: tuple
    source: Automorphism

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.perm))


@dataclass(frozen=True)
class TbftResult:
    R: int
    fixed_characters: int

    @property
    def ok(self) -> bool:
        return self.R == self.fixed_characters

    def __bool__(self) -> bool:
        return self.ok


def dixon_prime(order: int, exp: int) -> int:
    """
    smallest prime p = 1 mod exp with p > 2 sqrt(order)
    """
    p = 2 * isqrt(order)
    while True:
        p = nextprime(p)
        if p * p > 4 * order and (p - 1) % exp == 0:
            return int(p)
        if p > PRIME_SEARCH_LIMIT:
            raise PrimeSearchFailed(f"no prime found for order {order} and exponent {exp}")


def _class_matrix(G: FiniteGroup, classes: tuple, r: int) -> list:
    """
    m[i][k] = #{x in K_r : x^-1 g_k in K_i}, the structure constants of
    multiplication by the class sum of K_r
    """
    index = class_index(G)
    k = len(classes)
    m = [[0] * k for _ in range(k)]
    reps = [c[0] for c in classes]
    for x in classes[r]:
        xi = G.inv(x)
        for col, g in enumerate(reps):
            m[index[G.mul(xi, g)]][col] += 1
    return m


def _eigenspaces(C: DomainMatrix, field) -> list:
    """
    row eigenspaces of C: bases of {y : y C = z y} for each root z of the
    characteristic polynomial, in increasing order of z
    """
    Ct = C.transpose()
    p = field.mod
    n = Ct.shape[0]
    roots = Poly(Ct.charpoly(), Symbol('x'), domain=field).ground_roots()
    spaces = []
    for z in sorted(roots, key=lambda r: int(r) % p):
        shifted = Ct - DomainMatrix.diag([field(int(z) % p)] * n, field).to_dense()
        basis, _ = shifted.nullspace().rref()
        spaces.append(basis)
    return spaces


def _common_eigenvectors(G: FiniteGroup, classes: tuple, field) -> list:
    """
    split F_p^k into the common eigenvectors of every class matrix, taking
    the matrices in class order
    """
    k = len(classes)
    spaces = [DomainMatrix.eye(k, field).to_dense()]
    for r in range(1, k):
        if len(spaces) == k:
            break
        T = DomainMatrix.from_list(_class_matrix(G, classes, r), field).transpose()
        refined = []
        for S in spaces:
            if S.shape[0] == 1:
                refined.append(S)
                continue
            _, pivots = S.rref()
            restricted = S * T.extract(range(k), list(pivots))
            for sub in _eigenspaces(restricted, field):
                refined.append(sub * S)
        spaces = refined
    if len(spaces) != k:
        raise PrimeSearchFailed(f"class matrices did not split over GF({field.mod})")
    p = field.mod
    return [[int(v) % p for v in S.to_list()[0]] for S in spaces]


def _normalize(G: FiniteGroup, classes: tuple, sizes: list, w: list, p: int) -> tuple:
    """
    w_k = h_k chi(g_k) / chi(1) up to scale; returns (degree, values)
    """
    index = class_index(G)
    inv = [index[G.inv(c[0])] for c in classes]
    scale = pow(w[0], -1, p)
    v = [x * scale * pow(h, -1, p) % p for x, h in zip(w, sizes)]
    dot = sum(h * v[c] * v[inv[c]] for c, h in enumerate(sizes)) % p
    square = G.order * pow(dot, -1, p) % p
    root = sqrt_mod(square, p)
    if root is None:
        raise PrimeSearchFailed(f"degree square {square} has no root mod {p}")
    degree = min(int(root), p - int(root))
    return degree, tuple(x * degree % p for x in v)


def _abelian_rows(G: FiniteGroup, p: int, exp: int) -> list:
    """
    homomorphisms G -> mu_exp in GF(p)*, found by extending generator images
    """
    omega = pow(primitive_root(p), (p - 1) // exp, p)
    gens = G.generator_ids
    orders = [G.element_order(s) for s in gens]
    rows = []

    def extend(images):
        f = [0] * G.order
        f[0] = 1
        seen = [False] * G.order
        seen[0] = True
        queue = [0]
        for x in queue:
            for s, t in zip(gens, images):
                y = G.mul(x, s)
                value = f[x] * t % p
                if not seen[y]:
                    seen[y] = True
                    f[y] = value
                    queue.append(y)
                elif f[y] != value:
                    return None
        return tuple(f)

    def walk(prefix):
        if len(prefix) == len(gens):
            row = extend(prefix)
            if row is not None:
                rows.append(row)
            return
        o = orders[len(prefix)]
        step = pow(omega, exp // o, p)
        for a in range(o):
            walk(prefix + [pow(step, a, p)])

    walk([])
    return rows


def character_table(G: FiniteGroup, settings: Optional[Settings] = None) -> ModPCharacterTable:
    settings = settings or DEFAULT_SETTINGS
    if G.order > settings.table_cap:
        raise CapExceeded(f"character tables are limited to order {settings.table_cap}, got {G.order}")

    def compute():
        classes = conjugacy_classes(G)
        sizes = [len(c) for c in classes]
        exp = exponent(G)
        p = dixon_prime(G.order, exp)
        if is_abelian(G):
            # classes are singletons, so class k is element classes[k][0]
            values = _abelian_rows(G, p, exp)
            rows = [(1, tuple(r[c[0]] for c in classes)) for r in values]
        else:
            field = FiniteField(p)
            vectors = _common_eigenvectors(G, classes, field)
            rows = [_normalize(G, classes, sizes, w, p) for w in vectors]
        trivial = tuple([1] * len(classes))
        rows.sort(key=lambda r: (r[0], r[1] != trivial, r[1]))
        logger.debug("character table of order %d over GF(%d): degrees %s", G.order, p, [r[0] for r in rows])
        return ModPCharacterTable(
            group=G,
            prime=p,
            class_reps=tuple(c[0] for c in classes),
            class_sizes=tuple(sizes),
            rows=tuple(r[1] for r in rows),
            degrees=tuple(r[0] for r in rows),
        )
    return G.memo('character_table', compute)


def class_permutation(G: FiniteGroup, table: ModPCharacterTable, phi: Automorphism) -> ClassPermutation:
    index = class_index(G)
    return ClassPermutation(tuple(index[phi(g)] for g in table.class_reps), phi)


def dual_map(table: ModPCharacterTable, cp: ClassPermutation) -> tuple:
    """
    the permutation of rows chi -> chi o phi
    """
    position = {row: i for i, row in enumerate(table.rows)}
    perm = cp.perm
    return tuple(position[tuple(row[perm[c]] for c in range(len(row)))] for row in table.rows)


def fixed_character_count(table: ModPCharacterTable, cp: ClassPermutation) -> int:
    perm = cp.perm
    return sum(1 for row in table.rows if all(row[perm[c]] == row[c] for c in range(len(row))))


def verify_tbft_finite(G: FiniteGroup, phi: Automorphism, settings: Optional[Settings] = None) -> TbftResult:
    """
    R(phi) against the number of irreducible characters fixed by phi
    """
    table = character_table(G, settings)
    fixed = fixed_character_count(table, class_permutation(G, table, phi))
    return TbftResult(reidemeister_number(G, phi), fixed)
