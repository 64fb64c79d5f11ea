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
from functools import cached_property
from typing import Optional

from .api import TwistedLinkError
from .group import (FiniteGroup, NotNormal, QuotientGroup, Subgroup, characteristic_core,
                    generate_group, normal_core, quotient, subgroups_of_index)
from .morphism import (Automorphism, NotInvariant, compose_with_inner, fixed_subgroup,
                       induce_on_quotient, restrict)
from .perm import Perm
from .settings import DEFAULT_SETTINGS, Settings

__all__ = [
    "OracleMismatch", "TwistedPartition", "ExtensionReport", "SigmaWitness", "CharacteristicQuotientReport",
    "reidemeister_classes", "reidemeister_classes_bruteforce", "reidemeister_number",
    "verify_shift", "verify_extension", "jabara_alpha", "jabara_check",
    "semidirect_coset_oracle", "sigma_witness", "verify_characteristic_quotient",
]

logger = logging.getLogger(__name__)


class OracleMismatch(TwistedLinkError):
    """the permutation model of G x| <phi> does not have the shape it must have"""
    pass


# with 2^R >= 64 the bound 2^(2^R) exceeds any group this package can enumerate
JABARA_SHORTCUT = 6


@dataclass(frozen=True)
class TwistedPartition:
    """
    the phi-twisted conjugacy classes of a group, each a sorted tuple of ids,
    ordered by their smallest member
    """
    group: FiniteGroup
    phi: Automorphism
    classes: tuple
    class_of: tuple

    @property
    def R(self) -> int:
        return len(self.classes)

    def class_containing(self, g: int) -> tuple:
        return self.classes[self.class_of[g]]

    @cached_property
    def class_sets(self) -> tuple:
        return tuple(frozenset(c) for c in self.classes)

    @property
    def sizes(self) -> list:
        return [len(c) for c in self.classes]

    def representatives(self) -> list:
        return [c[0] for c in self.classes]


@dataclass(frozen=True)
class ExtensionReport:
    R_total: int
    R_quotient: int
    R_restricted: int
    fixed_quotient_size: int
    surjectivity_ok: bool
    quotient_bound_ok: bool
    bound_a_ok: bool
    intersection_b_ok: bool
    intersection_applicable: bool

    @property
    def ok(self) -> bool:
        return self.surjectivity_ok and self.quotient_bound_ok and self.bound_a_ok and self.intersection_b_ok


@dataclass(frozen=True)
class SigmaWitness:
    """
    G acting on the right shifts {g}_phi x of its twisted classes, with the
    kernel of that action and the automorphism it induces on G/kernel
    """
    shifted_family: tuple
    action_degree: int
    action: tuple  # one Perm on the family per generator of G
    kernel: Subgroup
    quotient: QuotientGroup
    phi_on_quotient: Automorphism
    kernel_invariant: bool
    action_kernel_ok: bool
    coset_union_ok: bool
    R_quotient: int
    bijection_ok: bool


@dataclass(frozen=True)
class CharacteristicQuotientReport:
    index: int
    core_order: int
    applicable: bool
    invariant_ok: bool
    R_total: int
    R_quotient: int
    fixed_image: int
    fixed_quotient: int
    alpha_quotient_log2: int
    alpha_total_log2: int
    ok: bool


def _find(parent: list, a: int) -> int:
    root = a
    while parent[root] != root:
        root = parent[root]
    while parent[a] != root:
        parent[a], a = root, parent[a]
    return root


def _partition_from_roots(G: FiniteGroup, phi: Automorphism, root_of: list) -> TwistedPartition:
    members = {}
    for g in range(G.order):
        members.setdefault(root_of[g], []).append(g)
    classes = tuple(sorted(tuple(m) for m in members.values()))
    class_of = [0] * G.order
    for c, cls in enumerate(classes):
        for g in cls:
            class_of[g] = c
    return TwistedPartition(G, phi, classes, tuple(class_of))


def reidemeister_classes(G: FiniteGroup, phi: Automorphism) -> TwistedPartition:
    """
    orbits of x.g = x g phi(x)^-1, joined by union-find over the moves of the generators
    """
    if phi.group is not G:
        raise NotInvariant("phi is an automorphism of another group")

    def compute():
        parent = list(range(G.order))
        moves = [(s, G.inv(phi(s))) for s in G.generator_ids]
        for g in range(G.order):
            for s, t in moves:
                h = G.mul(G.mul(s, g), t)
                a, b = _find(parent, g), _find(parent, h)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        return _partition_from_roots(G, phi, [_find(parent, g) for g in range(G.order)])
    return G.memo(('twisted', phi.map), compute)


def reidemeister_classes_bruteforce(G: FiniteGroup, phi: Automorphism) -> TwistedPartition:
    """
    the same partition from the full action, every x applied to every g
    """
    root_of = [-1] * G.order
    for g in range(G.order):
        if root_of[g] != -1:
            continue
        for x in range(G.order):
            root_of[G.mul(G.mul(x, g), G.inv(phi(x)))] = g
    return _partition_from_roots(G, phi, root_of)


def reidemeister_number(G: FiniteGroup, phi: Automorphism) -> int:
    return reidemeister_classes(G, phi).R


def verify_shift(G: FiniteGroup, phi: Automorphism, x: int) -> bool:
    """
    {g}_phi x == {gx}_psi with psi = tau_{x^-1} o phi, for every class,
    and R(tau_x o phi) == R(phi)
    """
    part = reidemeister_classes(G, phi)
    psi = compose_with_inner(phi, G.inv(x))
    shifted = reidemeister_classes(G, psi)
    for cls in part.classes:
        moved = frozenset(G.mul(c, x) for c in cls)
        if moved != shifted.class_sets[shifted.class_of[G.mul(cls[0], x)]]:
            return False
    return reidemeister_number(G, compose_with_inner(phi, x)) == part.R


def verify_extension(G: FiniteGroup, H: Subgroup, phi: Automorphism) -> ExtensionReport:
    """
    compare phi with the automorphisms it induces on G/H and on H
    """
    if not H.is_normal:
        raise NotNormal("the extension check needs a normal subgroup")
    if not H.is_invariant_under(phi.map):
        raise NotInvariant("phi does not map the subgroup onto itself")
    part = reidemeister_classes(G, phi)
    Q = quotient(G, H)
    phi_bar = induce_on_quotient(phi, H)
    part_bar = reidemeister_classes(Q.group_structure, phi_bar)
    phi_res = restrict(phi, H)
    part_res = reidemeister_classes(H.as_group, phi_res)
    fixed_bar = fixed_subgroup(phi_bar).order

    # each class of phi lands in one class of phi_bar and every class of phi_bar is hit
    landing = {}
    surjective = True
    for g in range(G.order):
        c_bar = part_bar.class_of[Q.project(g)]
        if landing.setdefault(part.class_of[g], c_bar) != c_bar:
            surjective = False
    surjective = surjective and len(set(landing.values())) == part_bar.R

    applicable = fixed_bar == 1
    intersection = True
    if applicable:
        for cls in part_res.classes:
            members = frozenset(H.to_parent(k) for k in cls)
            if part.class_sets[part.class_of[H.to_parent(cls[0])]] & H.member_ids != members:
                intersection = False
                break
    return ExtensionReport(
        R_total=part.R,
        R_quotient=part_bar.R,
        R_restricted=part_res.R,
        fixed_quotient_size=fixed_bar,
        surjectivity_ok=surjective,
        quotient_bound_ok=part_bar.R <= part.R,
        bound_a_ok=part_res.R <= part.R * fixed_bar,
        intersection_b_ok=intersection,
        intersection_applicable=applicable,
    )


def jabara_alpha(r: int) -> int:
    return 2 ** (2 ** r)


def jabara_check(G: FiniteGroup, phi: Automorphism) -> bool:
    """|C(phi)| <= 2^(2^R(phi))"""
    R = reidemeister_number(G, phi)
    if R >= JABARA_SHORTCUT:
        return True
    return fixed_subgroup(phi).order <= jabara_alpha(R)


def semidirect_coset_oracle(G: FiniteGroup, phi: Automorphism, settings: Optional[Settings] = None) -> int:
    """
    realize G x| <phi> on the points of G, with g acting by left multiplication
    and phi by its element map, and count the orbits of conjugation by G on
    the coset G.phi; the count equals R(phi)
    """
    settings = settings or DEFAULT_SETTINGS
    n = G.order
    left = [Perm._trusted(tuple(G.mul(g, h) for h in range(n))) for g in range(n)]
    Phi = phi.as_perm()
    product = generate_group([left[s] for s in G.generator_ids] + [Phi], degree=n, settings=settings)
    if product.order != n * phi.order:
        raise OracleMismatch(f"semidirect product has order {product.order}, expected {n * phi.order}")
    coset = [left[g] * Phi for g in range(n)]
    conjugators = [(left[s], left[G.inv(s)]) for s in G.generator_ids]
    seen = set()
    orbits = 0
    for element in coset:
        if element in seen:
            continue
        orbits += 1
        seen.add(element)
        queue = [element]
        for c in queue:
            for s, s_inv in conjugators:
                d = s * c * s_inv
                if d not in seen:
                    seen.add(d)
                    queue.append(d)
    if any(c not in product.elem_index for c in coset):
        raise OracleMismatch("coset G.phi is not contained in the semidirect product")
    return orbits


def sigma_witness(G: FiniteGroup, phi: Automorphism) -> SigmaWitness:
    part = reidemeister_classes(G, phi)
    family = {}
    for cls in part.classes:
        for x in range(G.order):
            shifted = frozenset(G.mul(c, x) for c in cls)
            family.setdefault(shifted, None)
    ordered = sorted(family, key=lambda s: (min(s), sorted(s)))
    index = {s: i for i, s in enumerate(ordered)}

    # z acts by S -> S z^-1
    action = []
    for s in G.generator_ids:
        si = G.inv(s)
        action.append(Perm(tuple(index[frozenset(G.mul(c, si) for c in S)] for S in ordered)))

    stabilizer = set(range(G.order))
    for cls in part.class_sets:
        stabilizer &= {z for z in stabilizer if all(G.mul(c, z) in cls for c in cls)}
    kernel = normal_core(G, G.subgroup(stabilizer, check=False))

    image = generate_group(action, degree=len(ordered))
    action_kernel_ok = (
        image.order * kernel.order == G.order
        and all(frozenset(G.mul(c, k) for c in S) == S for S in ordered for k in kernel.generator_ids)
    )
    kernel_invariant = kernel.is_invariant_under(phi.map)
    Q = quotient(G, kernel)
    phi_bar = induce_on_quotient(phi, kernel)
    part_bar = reidemeister_classes(Q.group_structure, phi_bar)
    union_ok = all(part.class_of[g] == part.class_of[G.mul(g, k)]
                   for g in range(G.order) for k in kernel.generator_ids)
    pairing = {}
    for g in range(G.order):
        pairing.setdefault(part.class_of[g], set()).add(part_bar.class_of[Q.project(g)])
    injective = all(len(v) == 1 for v in pairing.values())
    bijective = injective and len({next(iter(v)) for v in pairing.values()}) == part.R == part_bar.R
    logger.debug("sigma witness: family %d, kernel %d, R %d", len(ordered), kernel.order, part.R)
    return SigmaWitness(
        shifted_family=tuple(tuple(sorted(S)) for S in ordered),
        action_degree=len(ordered),
        action=tuple(action),
        kernel=kernel,
        quotient=Q,
        phi_on_quotient=phi_bar,
        kernel_invariant=kernel_invariant,
        action_kernel_ok=action_kernel_ok,
        coset_union_ok=union_ok,
        R_quotient=part_bar.R,
        bijection_ok=kernel_invariant and action_kernel_ok and union_ok and bijective,
    )


def verify_characteristic_quotient(G: FiniteGroup, phi: Automorphism, n: int,
                                   settings: Optional[Settings] = None) -> CharacteristicQuotientReport:
    """
    pass to G/K with K the intersection of all index-n subgroups and compare
    the fixed points there with the Jabara bound
    """
    settings = settings or DEFAULT_SETTINGS
    R = reidemeister_number(G, phi)
    subs = subgroups_of_index(G, n, settings)
    if not subs:
        return CharacteristicQuotientReport(n, G.order, False, True, R, R, 0, 0, 0, 0, True)
    K = characteristic_core(G, subs[0], settings)
    invariant = K.is_invariant_under(phi.map)
    if not invariant:
        return CharacteristicQuotientReport(n, K.order, True, False, R, 0, 0, 0, 0, 0, False)
    Q = quotient(G, K)
    phi_bar = induce_on_quotient(phi, K)
    R_bar = reidemeister_number(Q.group_structure, phi_bar)
    fixed_image = len({Q.project(g) for g in fixed_subgroup(phi).member_ids})
    fixed_bar = fixed_subgroup(phi_bar).order
    # alpha is monotone, so alpha(R_bar) <= alpha(R) reduces to R_bar <= R
    bound_ok = R_bar >= JABARA_SHORTCUT or fixed_bar <= jabara_alpha(R_bar)
    ok = R_bar <= R and fixed_image <= fixed_bar and bound_ok
    return CharacteristicQuotientReport(n, K.order, True, True, R, R_bar, fixed_image, fixed_bar,
                                        2 ** R_bar, 2 ** R, ok)
