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
import hashlib
import logging
import threading
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import lcm
from typing import Callable, Iterable, Optional, Sequence

from sympy.combinatorics import PermutationGroup

from .api import TwistedLinkError
from .perm import Perm
from .settings import DEFAULT_SETTINGS, Settings

__all__ = [
    "GroupError", "DegreeMismatch", "ClosureCapExceeded", "BudgetExceeded", "NotNormal",
    "NotASubgroup", "FiniteGroup", "Subgroup", "QuotientGroup", "DerivedSeries",
    "SubgroupLattice", "generate_group", "closure", "subgroup_generated", "conjugacy_classes",
    "class_index", "centralizer", "center", "normal_closure", "commutator_subgroup",
    "derived_series", "subgroup_lattice", "subgroups_of_index", "min_generators",
    "minimal_generating_set", "rank", "quotient", "normal_core", "characteristic_core",
    "normal_subgroups", "is_abelian", "exponent",
]

logger = logging.getLogger(__name__)

# groups at or below this order get a full multiplication table
TABLE_LIMIT = 1024


class GroupError(TwistedLinkError):
    """
    base class for group construction and search errors
    """

class DegreeMismatch(GroupError):
    """
    raised when generators act on different numbers of points
    """

class ClosureCapExceeded(GroupError):
    """
    raised when a generated group grows past the closure cap
    """

class BudgetExceeded(GroupError):
    """
    raised when a subgroup search needs more closures than the budget allows
    """

class NotNormal(GroupError):
    """
    raised when a normal subgroup is required
    """

class NotASubgroup(GroupError):
    """
    raised when a set of element ids is not closed under the group operations
    """


class FiniteGroup(object):
    """
    A sympy PermutationGroup with every element enumerated and given a dense id.
    Elements are sorted lexicographically on their image arrays so ids are
    deterministic and the identity is always id 0.
    """

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{label} order={self.order} degree={self.degree}>"

    def __init__(self, degree: int, generators: Sequence[Perm], elements: Iterable[Perm],
                 name: Optional[str] = None, perm_group: Optional[PermutationGroup] = None) -> None:
        self.degree = degree
        self.generators = tuple(generators)
        self.elements = tuple(sorted(elements))
        self.elem_index = {p: i for i, p in enumerate(self.elements)}
        self.order = len(self.elements)
        self.name = name
        self._perm_group = perm_group
        self._inverse = [self.elem_index[~p] for p in self.elements]
        self._table = None
        self._memo = {}
        self._lock = threading.RLock()

    @property
    def perm_group(self) -> PermutationGroup:
        if self._perm_group is None:
            gens = self.generators or (Perm.identity(self.degree),)
            self._perm_group = PermutationGroup([g.sym for g in gens])
        return self._perm_group

    def ids_of(self, group: PermutationGroup) -> frozenset:
        """
        element ids of a sympy subgroup of perm_group
        """
        return frozenset(self.elem_index[Perm.from_sympy(p, self.degree)] for p in group.generate())

    def subgroup_of(self, group: PermutationGroup) -> "Subgroup":
        return Subgroup(self, self.ids_of(group), check=False)

    @property
    def identity(self) -> int:
        return 0

    @cached_property
    def generator_ids(self) -> tuple:
        return tuple(self.elem_index[g] for g in self.generators)

    @cached_property
    def canonical_hash(self) -> str:
        digest = hashlib.sha256()
        for p in self.elements:
            digest.update(",".join(map(str, p.images)).encode())
            digest.update(b";")
        return digest.hexdigest()

    @property
    def table(self) -> Optional[list]:
        if self._table is None and self.order <= TABLE_LIMIT:
            index = self.elem_index
            elements = self.elements
            self._table = [[index[a * b] for b in elements] for a in elements]
        return self._table

    def memo(self, key, compute: Callable):
        """
        cache derived data on the group; the group itself never changes
        """
        with self._lock:
            if key not in self._memo:
                self._memo[key] = compute()
            return self._memo[key]

    def mul(self, a: int, b: int) -> int:
        table = self.table
        if table is not None:
            return table[a][b]
        return self.elem_index[self.elements[a] * self.elements[b]]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def conj(self, x: int, g: int) -> int:
        """x g x^-1"""
        return self.mul(self.mul(x, g), self._inverse[x])

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1"""
        return self.mul(self.mul(a, b), self.mul(self._inverse[a], self._inverse[b]))

    def power(self, a: int, exp: int) -> int:
        result = 0
        base = a if exp >= 0 else self._inverse[a]
        for _ in range(abs(exp)):
            result = self.mul(result, base)
        return result

    def element_order(self, a: int) -> int:
        return self.elements[a].order()

    def index_of(self, perm: Perm) -> int:
        try:
            return self.elem_index[perm]
        except KeyError:
            raise GroupError(f"{perm} is not an element of {self}")

    def subgroup(self, ids: Iterable[int], check: bool = True) -> "Subgroup":
        return Subgroup(self, frozenset(ids), check=check)

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)), check=False)

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, frozenset([0]), check=False)

    def fingerprint(self) -> dict:
        return {'order': self.order, 'classes': len(conjugacy_classes(self))}


@dataclass(frozen=True, eq=True)
class Subgroup:
    """
    A subgroup of parent, held as a set of parent element ids.
    """
    parent: FiniteGroup
    member_ids: frozenset
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'member_ids', frozenset(self.member_ids))
        if self.check:
            parent = self.parent
            members = self.member_ids
            if 0 not in members:
                raise NotASubgroup("a subgroup must contain the identity")
            for a in members:
                if parent.inv(a) not in members:
                    raise NotASubgroup(f"element {a} has no inverse in the set")
            gens = _greedy_generators(parent, members)
            if closure(parent, gens) != members:
                raise NotASubgroup("the set is not closed under multiplication")

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    def __contains__(self, g: int) -> bool:
        return g in self.member_ids

    def __len__(self) -> int:
        return len(self.member_ids)

    @property
    def order(self) -> int:
        return len(self.member_ids)

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    @cached_property
    def sorted_ids(self) -> tuple:
        return tuple(sorted(self.member_ids))

    @cached_property
    def generator_ids(self) -> tuple:
        return _greedy_generators(self.parent, self.member_ids)

    @cached_property
    def perm_group(self) -> PermutationGroup:
        parent = self.parent
        gens = [parent.elements[i].sym for i in self.generator_ids] or [Perm.identity(parent.degree).sym]
        return PermutationGroup(gens)

    @cached_property
    def is_normal(self) -> bool:
        parent = self.parent
        members = self.member_ids
        return all(parent.conj(s, h) in members for s in parent.generator_ids for h in self.generator_ids)

    @cached_property
    def as_group(self) -> FiniteGroup:
        """
        the subgroup as a FiniteGroup of its own; local id k is parent id sorted_ids[k]
        """
        parent = self.parent
        group = FiniteGroup(parent.degree, [parent.elements[i] for i in self.generator_ids],
                            [parent.elements[i] for i in self.sorted_ids],
                            perm_group=self.perm_group)
        return group

    @cached_property
    def local_index(self) -> dict:
        return {g: k for k, g in enumerate(self.sorted_ids)}

    def to_local(self, g: int) -> int:
        return self.local_index[g]

    def to_parent(self, k: int) -> int:
        return self.sorted_ids[k]

    def relative(self, other: "Subgroup") -> "Subgroup":
        """
        other (a subgroup of the same parent inside self) as a subgroup of self.as_group
        """
        if not other.member_ids <= self.member_ids:
            raise NotASubgroup("relative() needs a subgroup contained in this one")
        local = self.local_index
        return Subgroup(self.as_group, frozenset(local[g] for g in other.member_ids), check=False)

    def lift(self, inner: "Subgroup") -> "Subgroup":
        """
        a subgroup of self.as_group moved back to parent ids
        """
        return Subgroup(self.parent, frozenset(self.sorted_ids[k] for k in inner.member_ids), check=False)

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self.member_ids <= other.member_ids

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.member_ids & other.member_ids, check=False)

    def is_invariant_under(self, images: Sequence[int]) -> bool:
        members = self.member_ids
        return all(images[h] in members for h in self.generator_ids)


@dataclass(frozen=True)
class QuotientGroup:
    """
    parent / kernel realized on the left translation action on cosets.
    coset index c is also the id of its element in group_structure
    """
    parent: FiniteGroup
    kernel: Subgroup
    cosets: tuple  # coset index -> smallest parent id in the coset
    projection: tuple  # parent id -> coset index
    group_structure: FiniteGroup

    @property
    def order(self) -> int:
        return self.group_structure.order

    def project(self, g: int) -> int:
        return self.projection[g]

    def preimage(self, q: int) -> frozenset:
        rep = self.cosets[q]
        parent = self.parent
        return frozenset(parent.mul(rep, n) for n in self.kernel.member_ids)

    def preimage_of(self, sub: Subgroup) -> Subgroup:
        ids = frozenset(g for g in range(self.parent.order) if self.projection[g] in sub.member_ids)
        return Subgroup(self.parent, ids, check=False)


@dataclass(frozen=True)
class DerivedSeries:
    terms: tuple
    soluble: bool
    derived_length: Optional[int]

    def orders(self) -> list:
        return [t.order for t in self.terms]


@dataclass(frozen=True)
class SubgroupLattice:
    """
    every subgroup of a group with its minimal generator count d(H)
    and one generating set of that size
    """
    group: FiniteGroup
    subgroups: tuple
    min_gens: dict  # frozenset -> d(H)
    witness: dict  # frozenset -> tuple of generator ids

    def of_order(self, order: int) -> list:
        return [h for h in self.subgroups if h.order == order]

    @property
    def rank(self) -> int:
        return max(self.min_gens.values())


def generate_group(generators: Sequence[Perm], degree: Optional[int] = None,
                   settings: Optional[Settings] = None, name: Optional[str] = None) -> FiniteGroup:
    """
    build the sympy PermutationGroup on the generators and return it fully
    enumerated; the order comes from Schreier-Sims before any element is listed
    """
    settings = settings or DEFAULT_SETTINGS
    generators = list(generators)
    degrees = {len(g) for g in generators}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise DegreeMismatch(f"generators act on different numbers of points: {sorted(degrees)}")
    if not degrees:
        degree = 1
    else:
        degree = degrees.pop()
    if degree < 1:
        raise DegreeMismatch("a group needs at least one point")
    cap = settings.closure_cap
    perm_group = PermutationGroup([g.sym for g in generators or [Perm.identity(degree)]])
    order = int(perm_group.order())
    if order > cap:
        raise ClosureCapExceeded(f"closure passed the cap of {cap} elements: order {order}")
    elements = [Perm.from_sympy(p, degree) for p in perm_group.generate()]
    logger.debug("generated group of order %d on %d points", order, degree)
    return FiniteGroup(degree, generators, elements, name=name, perm_group=perm_group)


def closure(G: FiniteGroup, gen_ids: Iterable[int]) -> frozenset:
    gens = [g for g in dict.fromkeys(gen_ids) if g != 0]
    seen = {0}
    queue = [0]
    mul = G.mul
    for a in queue:
        for s in gens:
            b = mul(a, s)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return frozenset(seen)


def _greedy_generators(G: FiniteGroup, members: Optional[Iterable[int]] = None) -> tuple:
    """
    a small generating set: walk the members by decreasing element order and
    keep any element not already generated
    """
    members = range(G.order) if members is None else members
    candidates = sorted(members, key=lambda g: (-G.element_order(g), g))
    target = len(candidates)
    gens = []
    current = frozenset([0])
    for g in candidates:
        if len(current) == target:
            break
        if g not in current:
            gens.append(g)
            current = closure(G, gens)
    return tuple(gens)


def subgroup_generated(G: FiniteGroup, gen_ids: Iterable[int]) -> Subgroup:
    return Subgroup(G, closure(G, gen_ids), check=False)


def conjugacy_classes(G: FiniteGroup) -> tuple:
    """
    sympy's conjugacy classes as sorted tuples of ids, ordered by their
    smallest id (so the identity class comes first)
    """
    def compute():
        degree = G.degree
        index = G.elem_index
        classes = [tuple(sorted(index[Perm.from_sympy(p, degree)] for p in cls))
                   for cls in G.perm_group.conjugacy_classes()]
        return tuple(sorted(classes))
    return G.memo('conjugacy_classes', compute)


def class_index(G: FiniteGroup) -> tuple:
    def compute():
        index = [0] * G.order
        for c, members in enumerate(conjugacy_classes(G)):
            for g in members:
                index[g] = c
        return tuple(index)
    return G.memo('class_index', compute)


def centralizer(G: FiniteGroup, x: int) -> Subgroup:
    return G.subgroup_of(G.perm_group.centralizer(G.elements[x].sym))


def center(G: FiniteGroup) -> Subgroup:
    return G.memo('center', lambda: G.subgroup_of(G.perm_group.center()))


def normal_closure(G: FiniteGroup, ids: Iterable[int]) -> Subgroup:
    """
    smallest normal subgroup of G containing ids
    """
    perms = [G.elements[g].sym for g in dict.fromkeys(ids)] or [G.elements[0].sym]
    return G.subgroup_of(G.perm_group.normal_closure(PermutationGroup(perms)))


def commutator_subgroup(H: Subgroup) -> Subgroup:
    return H.parent.subgroup_of(H.perm_group.derived_subgroup())


def derived_series(G: FiniteGroup) -> DerivedSeries:
    def compute():
        terms = tuple(G.subgroup_of(term) for term in G.perm_group.derived_series())
        if terms[-1].order > 1:
            return DerivedSeries(terms, False, None)
        return DerivedSeries(terms, True, len(terms) - 1)
    return G.memo('derived_series', compute)


def _cyclic_subgroups(G: FiniteGroup) -> list:
    found = {}
    for g in range(G.order):
        cyc = closure(G, [g])
        if cyc not in found:
            found[cyc] = g
    return sorted(found.items(), key=lambda item: (len(item[0]), item[1]))


def _join_search(G: FiniteGroup, target: Optional[int], budget: int) -> tuple:
    """
    breadth-first joins of cyclic subgroups. With a target order, every join whose
    order does not divide the target is dropped (Lagrange). Returns the found subgroups
    with the level each was first reached at and the generators used to reach it.
    """
    cyclics = _cyclic_subgroups(G)
    if target is not None:
        cyclics = [(c, g) for c, g in cyclics if target % len(c) == 0]
    trivial = frozenset([0])
    levels = {trivial: 0}
    witness = {trivial: ()}
    frontier = []
    for cyc, g in cyclics:
        if cyc != trivial:
            levels[cyc] = 1
            witness[cyc] = (g,)
            frontier.append(cyc)
    attempts = 0
    level = 1
    while frontier:
        level += 1
        nxt = []
        for H in frontier:
            for cyc, g in cyclics:
                if g in H:
                    continue
                attempts += 1
                if attempts > budget:
                    raise BudgetExceeded(f"subgroup search needed more than {budget} closures")
                gens = witness[H] + (g,)
                J = closure(G, gens)
                if target is not None and target % len(J):
                    continue
                if J not in levels:
                    levels[J] = level
                    witness[J] = gens
                    nxt.append(J)
        frontier = nxt
    logger.debug("join search on order %d found %d subgroups in %d closures", G.order, len(levels), attempts)
    return levels, witness


def subgroup_lattice(G: FiniteGroup, settings: Optional[Settings] = None) -> SubgroupLattice:
    settings = settings or DEFAULT_SETTINGS

    def compute():
        levels, witness = _join_search(G, None, settings.subgroup_budget)
        subs = sorted(levels, key=lambda s: (len(s), sorted(s)))
        return SubgroupLattice(G, tuple(Subgroup(G, s, check=False) for s in subs), levels, witness)
    return G.memo('subgroup_lattice', compute)


def subgroups_of_index(G: FiniteGroup, n: int, settings: Optional[Settings] = None) -> list:
    """
    every subgroup of index n, so a_n(G) is the length of the result
    """
    settings = settings or DEFAULT_SETTINGS
    if n < 1 or G.order % n:
        return []
    target = G.order // n
    if n == 1:
        return [G.whole()]
    if 'subgroup_lattice' in G._memo:
        return subgroup_lattice(G).of_order(target)

    def compute():
        levels, _ = _join_search(G, target, settings.subgroup_budget)
        subs = sorted((s for s in levels if len(s) == target), key=sorted)
        return [Subgroup(G, s, check=False) for s in subs]
    return list(G.memo(('subgroups_of_order', target), compute))


def min_generators(H: Subgroup, settings: Optional[Settings] = None) -> int:
    return len(minimal_generating_set(H, settings))


def minimal_generating_set(H: Subgroup, settings: Optional[Settings] = None) -> tuple:
    """
    a generating set of H of the least possible size, as parent ids
    """
    settings = settings or DEFAULT_SETTINGS
    G = H.parent
    if 'subgroup_lattice' in G._memo or G.order <= settings.rank_cap:
        return subgroup_lattice(G, settings).witness[H.member_ids]
    if H.order > settings.rank_cap:
        raise BudgetExceeded(f"generator search is limited to order {settings.rank_cap}, got {H.order}")
    local = subgroup_lattice(H.as_group, settings)
    return tuple(H.to_parent(k) for k in local.witness[frozenset(range(H.order))])


def rank(G: FiniteGroup, settings: Optional[Settings] = None) -> int:
    """
    the largest minimal generator count over all subgroups
    """
    settings = settings or DEFAULT_SETTINGS
    if G.order > settings.rank_cap:
        raise BudgetExceeded(f"rank sweeps are limited to order {settings.rank_cap}, got {G.order}")
    return subgroup_lattice(G, settings).rank


def quotient(G: FiniteGroup, N: Subgroup) -> QuotientGroup:
    if N.parent is not G:
        raise GroupError("the kernel must be a subgroup of the group being divided")
    if not N.is_normal:
        raise NotNormal(f"{N} is not normal")

    def compute():
        coset_of = [-1] * G.order
        reps = []
        for g in range(G.order):
            if coset_of[g] != -1:
                continue
            for n in N.member_ids:
                coset_of[G.mul(g, n)] = len(reps)
            reps.append(g)
        count = len(reps)
        gens = [Perm(tuple(coset_of[G.mul(s, r)] for r in reps)) for s in G.generator_ids]
        structure = generate_group(gens, degree=count)
        # coset c goes to the translation by its representative
        translation = [Perm._trusted(tuple(coset_of[G.mul(rep, r)] for r in reps)) for rep in reps]
        relabel = [structure.elem_index[t] for t in translation]
        cosets = [0] * count
        for c, q in enumerate(relabel):
            cosets[q] = reps[c]
        projection = tuple(relabel[coset_of[g]] for g in range(G.order))
        return QuotientGroup(G, N, tuple(cosets), projection, structure)
    return G.memo(('quotient', N.member_ids), compute)


def normal_core(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """
    kernel of the action of G on the left cosets of H
    """
    core = set(H.member_ids)
    covered = set()
    for g in range(G.order):
        if g in covered or not core:
            continue
        covered.update(G.mul(g, h) for h in H.member_ids)
        core &= {G.conj(g, h) for h in H.member_ids}
    return Subgroup(G, frozenset(core), check=False)


def characteristic_core(G: FiniteGroup, H: Subgroup, settings: Optional[Settings] = None) -> Subgroup:
    """
    intersection of all subgroups with the same index as H
    """
    subs = subgroups_of_index(G, H.index, settings)
    members = reduce(lambda acc, s: acc & s.member_ids, subs, frozenset(range(G.order)))
    return Subgroup(G, members, check=False)


def normal_subgroups(G: FiniteGroup) -> tuple:
    """
    all normal subgroups: normal closures of class representatives closed under joins
    """
    def compute():
        found = {}
        for cls in conjugacy_classes(G):
            ncl = normal_closure(G, [cls[0]])
            found.setdefault(ncl.member_ids, ncl)
        frontier = list(found)
        basics = list(found)
        while frontier:
            nxt = []
            for A in frontier:
                for B in basics:
                    if B <= A:
                        continue
                    J = closure(G, _greedy_generators(G, A) + _greedy_generators(G, B))
                    if J not in found:
                        found[J] = Subgroup(G, J, check=False)
                        nxt.append(J)
            frontier = nxt
        return tuple(found[k] for k in sorted(found, key=lambda s: (len(s), sorted(s))))
    return G.memo('normal_subgroups', compute)


def is_abelian(G: FiniteGroup) -> bool:
    return bool(G.perm_group.is_abelian)


def exponent(G: FiniteGroup) -> int:
    return lcm(1, *(G.element_order(c[0]) for c in conjugacy_classes(G)))
