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
import itertools
import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from math import lcm
from typing import Optional, Sequence, Union

from .api import TwistedLinkError
from .group import FiniteGroup, Subgroup, center, minimal_generating_set, quotient
from .perm import Perm
from .settings import DEFAULT_SETTINGS, Settings

__all__ = [
    "MorphismError", "NotAHomomorphism", "NotBijective", "NotInvariant",
    "GroupMorphism", "Automorphism", "automorphism_from_images", "identity_automorphism",
    "inner", "compose_with_inner", "restrict", "induce_on_quotient", "fixed_subgroup",
    "all_automorphisms", "automorphism_sample",
]

logger = logging.getLogger(__name__)


class MorphismError(TwistedLinkError):
    """
    base class for errors building homomorphisms
    """

class NotAHomomorphism(MorphismError):
    """
    raised when generator images do not respect the group relations
    """

class NotBijective(MorphismError):
    """
    raised when an endomorphism is not a bijection
    """

class NotInvariant(MorphismError):
    """
    raised when a subgroup is not mapped onto itself
    """


@dataclass(frozen=True)
class GroupMorphism:
    """
    a homomorphism held as a dense id map; with check=True every product
    is verified at construction
    """
    source: FiniteGroup
    target: FiniteGroup
    map: tuple
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, 'map', tuple(self.map))
        if len(self.map) != self.source.order:
            raise MorphismError(f"map covers {len(self.map)} elements, the source has {self.source.order}")
        if self.check:
            self.verify()

    def __call__(self, g: int) -> int:
        return self.map[g]

    def verify(self) -> None:
        f = self.map
        src, dst = self.source, self.target
        if f[0] != 0:
            raise NotAHomomorphism("the identity is not mapped to the identity")
        for a in range(src.order):
            fa = f[a]
            for b in range(src.order):
                if f[src.mul(a, b)] != dst.mul(fa, f[b]):
                    raise NotAHomomorphism(f"f({a}*{b}) differs from f({a})*f({b})")

    @cached_property
    def image(self) -> frozenset:
        return frozenset(self.map)

    @property
    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and len(self.image) == self.target.order


@dataclass(frozen=True)
class Automorphism:
    base: GroupMorphism
    inverse_map: tuple

    def __post_init__(self) -> None:
        base = self.base
        if base.source is not base.target:
            raise MorphismError("an automorphism maps a group to itself")
        if not base.is_bijective:
            raise NotBijective("the element map is not a bijection")
        inverse = tuple(self.inverse_map)
        if any(inverse[base.map[g]] != g for g in range(base.source.order)):
            raise MorphismError("inverse_map does not invert the map")
        object.__setattr__(self, 'inverse_map', inverse)

    def __repr__(self) -> str:
        return f"<Automorphism order={self.order} of {self.group!r}>"

    def __call__(self, g: int) -> int:
        return self.base.map[g]

    @classmethod
    def from_map(cls, group: FiniteGroup, images: Sequence[int], check: bool = True) -> "Automorphism":
        base = GroupMorphism(group, group, tuple(images), check=check)
        if not base.is_bijective:
            raise NotBijective("the element map is not a bijection")
        inverse = [0] * group.order
        for g, h in enumerate(base.map):
            inverse[h] = g
        return cls(base, tuple(inverse))

    @property
    def group(self) -> FiniteGroup:
        return self.base.source

    @property
    def map(self) -> tuple:
        return self.base.map

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self after other"""
        f = self.map
        return Automorphism.from_map(self.group, [f[h] for h in other.map], check=False)

    def inverse(self) -> "Automorphism":
        return Automorphism(GroupMorphism(self.group, self.group, self.inverse_map, check=False), self.map)

    def power(self, k: int) -> "Automorphism":
        base = self if k >= 0 else self.inverse()
        result = identity_automorphism(self.group)
        for _ in range(abs(k)):
            result = base.compose(result)
        return result

    @cached_property
    def order(self) -> int:
        """
        least k > 0 with phi^k = id, the lcm of the cycle lengths of the id map
        """
        f = self.map
        seen = [False] * len(f)
        lengths = []
        for start in range(len(f)):
            if seen[start]:
                continue
            n, g = 0, start
            while not seen[g]:
                seen[g] = True
                g = f[g]
                n += 1
            lengths.append(n)
        return lcm(1, *lengths)

    def is_identity(self) -> bool:
        return all(g == h for g, h in enumerate(self.map))

    def as_perm(self) -> Perm:
        return Perm._trusted(self.map)

    def fingerprint(self) -> dict:
        return {'order': self.order, 'fixed': fixed_subgroup(self).order}


def identity_automorphism(G: FiniteGroup) -> Automorphism:
    ids = tuple(range(G.order))
    return Automorphism(GroupMorphism(G, G, ids, check=False), ids)


def _extend(G: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> list:
    """
    extend gens -> images multiplicatively over G. Every edge x -> x*s is
    checked, which is enough for the result to be a homomorphism.
    """
    f = [-1] * G.order
    f[0] = 0
    queue = [0]
    for x in queue:
        fx = f[x]
        for s, t in zip(gens, images):
            y = G.mul(x, s)
            fy = G.mul(fx, t)
            if f[y] == -1:
                f[y] = fy
                queue.append(y)
            elif f[y] != fy:
                raise NotAHomomorphism(f"images break a relation at element {y}")
    if len(queue) != G.order:
        raise MorphismError("the generators given do not generate the group")
    return f


def automorphism_from_images(G: FiniteGroup, images: Union[dict, Sequence], check: bool = True) -> Automorphism:
    """
    images assigns one element to each generator of G, either as a list in
    generator order or a dict keyed by generator position. Elements may be
    given as ids or as Perm objects.
    """
    if isinstance(images, dict):
        try:
            images = [images[i] for i in range(len(G.generators))]
        except KeyError as e:
            raise MorphismError(f"no image given for generator {e}")
    images = list(images)
    if len(images) != len(G.generators):
        raise MorphismError(f"expected {len(G.generators)} generator images, got {len(images)}")
    ids = []
    for img in images:
        if isinstance(img, Perm):
            img = G.index_of(img)
        img = int(img)
        if img < 0 or img >= G.order:
            raise MorphismError(f"element id {img} is outside the group")
        ids.append(img)
    f = _extend(G, G.generator_ids, ids)
    if len(set(f)) != G.order:
        raise NotBijective("the generator images do not give a bijection")
    return Automorphism.from_map(G, f, check=check)


def inner(G: FiniteGroup, x: int) -> Automorphism:
    """tau_x(z) = x z x^-1"""
    xi = G.inv(x)
    forward = tuple(G.conj(x, z) for z in range(G.order))
    backward = tuple(G.conj(xi, z) for z in range(G.order))
    return Automorphism(GroupMorphism(G, G, forward, check=False), backward)


def compose_with_inner(phi: Automorphism, x: int) -> Automorphism:
    """tau_x after phi"""
    G = phi.group
    xi = G.inv(x)
    forward = tuple(G.conj(x, phi(z)) for z in range(G.order))
    inv = phi.inverse_map
    backward = tuple(inv[G.conj(xi, z)] for z in range(G.order))
    return Automorphism(GroupMorphism(G, G, forward, check=False), backward)


def restrict(phi: Automorphism, H: Subgroup) -> Automorphism:
    """
    phi on H, as an automorphism of H.as_group
    """
    if H.parent is not phi.group:
        raise MorphismError("the subgroup belongs to another group")
    if any(phi(h) not in H.member_ids for h in H.member_ids):
        raise NotInvariant("phi does not map the subgroup onto itself")
    local = H.local_index
    forward = tuple(local[phi(g)] for g in H.sorted_ids)
    backward = tuple(local[phi.inverse_map[g]] for g in H.sorted_ids)
    return Automorphism(GroupMorphism(H.as_group, H.as_group, forward, check=False), backward)


def induce_on_quotient(phi: Automorphism, N: Subgroup) -> Automorphism:
    """
    gN -> phi(g)N on the quotient's group_structure
    """
    G = phi.group
    Q = quotient(G, N)
    if not N.is_invariant_under(phi.map):
        raise NotInvariant("phi does not map the kernel onto itself")
    forward = [Q.project(phi(rep)) for rep in Q.cosets]
    for g in range(G.order):
        if Q.project(phi(g)) != forward[Q.project(g)]:
            raise NotInvariant(f"the induced map is not well defined at element {g}")
    return Automorphism.from_map(Q.group_structure, forward, check=False)


def fixed_subgroup(phi: Automorphism) -> Subgroup:
    """C(phi) = {g : phi(g) = g}"""
    G = phi.group
    return Subgroup(G, frozenset(g for g in range(G.order) if phi(g) == g))


def _image_candidates(G: FiniteGroup, gens: Sequence[int]) -> list:
    by_order = {}
    for g in range(G.order):
        by_order.setdefault(G.element_order(g), []).append(g)
    return [by_order[G.element_order(s)] for s in gens]


def _generating_set(G: FiniteGroup, settings: Settings) -> tuple:
    if G.order <= settings.rank_cap:
        return minimal_generating_set(G.whole(), settings)
    return G.generator_ids


def _try_images(G: FiniteGroup, gens: Sequence[int], images: Sequence[int]) -> Optional[list]:
    try:
        f = _extend(G, gens, images)
    except NotAHomomorphism:
        return None
    if len(set(f)) != G.order:
        return None
    return f


def all_automorphisms(G: FiniteGroup, settings: Optional[Settings] = None) -> tuple:
    """
    every automorphism of G, found by trying each order-preserving assignment
    of images to a minimal generating set
    """
    settings = settings or DEFAULT_SETTINGS

    def compute():
        gens = _generating_set(G, settings)
        found = []
        for images in itertools.product(*_image_candidates(G, gens)):
            f = _try_images(G, gens, images)
            if f is not None:
                found.append(Automorphism.from_map(G, f, check=False))
        found.sort(key=lambda a: a.map)
        logger.debug("order %d group has %d automorphisms", G.order, len(found))
        return tuple(found)
    return G.memo('all_automorphisms', compute)


def automorphism_sample(G: FiniteGroup, settings: Optional[Settings] = None) -> tuple:
    """
    all automorphisms when G is small. Otherwise every inner automorphism,
    one per coset of Z(G), topped up to settings.automorphism_sample by a
    seeded random search over generator images
    """
    settings = settings or DEFAULT_SETTINGS
    if G.order <= settings.all_automorphisms_cap:
        return all_automorphisms(G, settings)
    chosen = {}
    Z = center(G).member_ids
    covered = set()
    for x in range(G.order):
        if x in covered:
            continue
        covered.update(G.mul(x, z) for z in Z)
        tau = inner(G, x)
        chosen[tau.map] = tau
    digest = hashlib.sha256(f"{G.canonical_hash}:{settings.seed}".encode()).hexdigest()
    rng = random.Random(int(digest[:16], 16))
    gens = _generating_set(G, settings)
    candidates = _image_candidates(G, gens)
    attempts = 0
    while len(chosen) < settings.automorphism_sample and attempts < 50 * settings.automorphism_sample:
        attempts += 1
        images = [rng.choice(c) for c in candidates]
        f = _try_images(G, gens, images)
        if f is not None:
            chosen.setdefault(tuple(f), Automorphism.from_map(G, f, check=False))
    return tuple(sorted(chosen.values(), key=lambda a: a.map))
