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
from typing import Callable, Optional

from sympy.combinatorics import PermutationGroup
from sympy.combinatorics.group_constructs import DirectProduct
from sympy.combinatorics.named_groups import (AbelianGroup, AlternatingGroup, CyclicGroup, DihedralGroup,
                                              SymmetricGroup)

from .group import FiniteGroup, GroupError, generate_group
from .perm import Perm
from .settings import Settings

__all__ = [
    "cyclic", "dihedral", "symmetric", "alternating", "dicyclic", "quaternion",
    "heisenberg", "elementary_abelian", "abelian", "klein_four", "direct_product",
    "from_perm_group", "trivial", "construct", "CONSTRUCTORS",
]


def from_perm_group(group: PermutationGroup, name: Optional[str] = None,
                    settings: Optional[Settings] = None) -> FiniteGroup:
    """
    enumerate a sympy permutation group, keeping its generators in order
    """
    gens = [Perm.from_sympy(g, group.degree) for g in group.generators if not g.is_Identity]
    return generate_group(gens, degree=group.degree, settings=settings, name=name)


def _left_regular(order: int, left_mul: Callable[[int], int]) -> Perm:
    return Perm(tuple(left_mul(i) for i in range(order)))


def trivial(settings: Optional[Settings] = None) -> FiniteGroup:
    return generate_group([], degree=1, settings=settings, name="1")


def cyclic(n: int, settings: Optional[Settings] = None) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"cyclic groups need n >= 1, got {n}")
    if n == 1:
        return trivial(settings)
    return from_perm_group(CyclicGroup(n), f"C{n}", settings)


def dihedral(n: int, settings: Optional[Settings] = None) -> FiniteGroup:
    """
    symmetries of the regular n-gon, order 2n
    """
    if n < 2:
        raise GroupError(f"dihedral groups need n >= 2, got {n}")
    if n == 2:
        group = klein_four(settings)
        group.name = "D2"
        return group
    return from_perm_group(DihedralGroup(n), f"D{n}", settings)


def symmetric(n: int, settings: Optional[Settings] = None) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"symmetric groups need n >= 1, got {n}")
    if n == 1:
        return trivial(settings)
    return from_perm_group(SymmetricGroup(n), f"S{n}", settings)


def alternating(n: int, settings: Optional[Settings] = None) -> FiniteGroup:
    if n < 1:
        raise GroupError(f"alternating groups need n >= 1, got {n}")
    if n < 3:
        return generate_group([], degree=n, settings=settings, name=f"A{n}")
    return from_perm_group(AlternatingGroup(n), f"A{n}", settings)


def dicyclic(n: int, settings: Optional[Settings] = None) -> FiniteGroup:
    """
    the dicyclic group of order 4n, <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>,
    in its left regular representation. Element (k, e) stands for a^k x^e and
    sits on point k + 2n*e.
    """
    if n < 2:
        raise GroupError(f"dicyclic groups need n >= 2, got {n}")
    m = 2 * n

    def point(k: int, e: int) -> int:
        return (k % m) + m * e

    def times_a(i: int) -> int:
        k, e = i % m, i // m
        return point(1 + k, e)

    def times_x(i: int) -> int:
        k, e = i % m, i // m
        return point(-k, 1) if e == 0 else point(n - k, 0)

    gens = [_left_regular(2 * m, times_a), _left_regular(2 * m, times_x)]
    name = "Q8" if n == 2 else f"Dic{n}"
    return generate_group(gens, settings=settings, name=name)


def quaternion(settings: Optional[Settings] = None) -> FiniteGroup:
    return dicyclic(2, settings)


def heisenberg(p: int, settings: Optional[Settings] = None) -> FiniteGroup:
    """
    upper unitriangular 3x3 matrices over Z/p, order p^3, in the left regular
    representation; (a, b, c) sits on point a*p^2 + b*p + c and multiplies as
    (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b')
    """
    if p < 2:
        raise GroupError(f"heisenberg groups need p >= 2, got {p}")

    def split(i: int) -> tuple:
        return i // (p * p), (i // p) % p, i % p

    def join(a: int, b: int, c: int) -> int:
        return (a % p) * p * p + (b % p) * p + (c % p)

    def times_x(i: int) -> int:
        a, b, c = split(i)
        return join(a + 1, b, c + b)

    def times_y(i: int) -> int:
        a, b, c = split(i)
        return join(a, b + 1, c)

    order = p ** 3
    gens = [_left_regular(order, times_x), _left_regular(order, times_y)]
    return generate_group(gens, settings=settings, name=f"Heis{p}")


def direct_product(*groups: FiniteGroup, settings: Optional[Settings] = None) -> FiniteGroup:
    """
    sympy's DirectProduct: each factor acts on its own block of points
    """
    if not groups:
        return trivial(settings)
    name = "x".join(g.name or "?" for g in groups)
    return from_perm_group(DirectProduct(*(g.perm_group for g in groups)), name, settings)


def abelian(*orders: int, settings: Optional[Settings] = None) -> FiniteGroup:
    orders = [n for n in orders if n != 1]
    if any(n < 1 for n in orders):
        raise GroupError(f"cyclic factors need orders >= 1, got {orders}")
    if not orders:
        return trivial(settings)
    if len(orders) == 1:
        return cyclic(orders[0], settings)
    return from_perm_group(AbelianGroup(*orders), "x".join(f"C{n}" for n in orders), settings)


def elementary_abelian(p: int, k: int, settings: Optional[Settings] = None) -> FiniteGroup:
    group = abelian(*([p] * k), settings=settings)
    if k > 1:
        group.name = f"C{p}^{k}"
    return group


def klein_four(settings: Optional[Settings] = None) -> FiniteGroup:
    group = abelian(2, 2, settings=settings)
    group.name = "V4"
    return group


CONSTRUCTORS = {
    'trivial': trivial,
    'cyclic': cyclic,
    'dihedral': dihedral,
    'symmetric': symmetric,
    'alternating': alternating,
    'dicyclic': dicyclic,
    'quaternion': quaternion,
    'heisenberg': heisenberg,
    'elementary_abelian': elementary_abelian,
    'abelian': abelian,
    'klein_four': klein_four,
}


def construct(name: str, args: list = (), settings: Optional[Settings] = None) -> FiniteGroup:
    """
    build a named group; 'direct_product' takes a list of [name, args] factors
    """
    if name == 'direct_product':
        factors = []
        for factor in args:
            try:
                factor_name, factor_args = factor
            except (TypeError, ValueError):
                raise GroupError(f"direct_product factors must be [name, args] pairs, got {factor!r}")
            factors.append(construct(factor_name, factor_args, settings))
        return direct_product(*factors, settings=settings)
    try:
        constructor = CONSTRUCTORS[name]
    except KeyError:
        raise GroupError(f"unknown group constructor '{name}'")
    try:
        return constructor(*args, settings=settings)
    except TypeError as e:
        raise GroupError(f"bad arguments {list(args)!r} for '{name}': {e}")
