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
import threading
from dataclasses import dataclass
from math import factorial
from typing import Optional

from sympy import factorint, multiplicity

from .api import TwistedLinkError
from .characters import ModPCharacterTable, character_table
from .group import (BudgetExceeded, DerivedSeries, FiniteGroup, NotNormal, Subgroup, center,
                    characteristic_core, commutator_subgroup, conjugacy_classes, derived_series,
                    is_abelian, normal_subgroups, quotient, rank, subgroups_of_index)
from .morphism import (Automorphism, NotInvariant, automorphism_sample, compose_with_inner,
                       fixed_subgroup, induce_on_quotient, restrict)
from .settings import DEFAULT_SETTINGS, Settings
from .twisted import reidemeister_classes, reidemeister_number, sigma_witness, verify_shift

__all__ = [
    "NotSoluble", "QuotientNotAbelian", "ReductionLevel", "ReductionTrace", "InnerBoundReport",
    "SolubleProfile", "ReductionWitness", "CountingReport", "GroupWorkspace",
    "derived_reduction", "inner_bound_check", "abelian_rank", "soluble_radical", "soluble_profile",
    "class_coset_union", "reduction_witness", "subgroup_counting_check",
]

logger = logging.getLogger(__name__)


class NotSoluble(TwistedLinkError):
    """
    raised when the derived series does not reach the trivial group
    """

class QuotientNotAbelian(TwistedLinkError):
    """
    raised when G/F is expected to be abelian and is not
    """


@dataclass(frozen=True)
class ReductionLevel:
    """
    one step G^(i) > G^(i+1) of the derived series
    """
    index: int
    order: int
    R: int  # R(phi_i) on G^(i)
    R_next: int  # R(phi_(i+1)) on G^(i+1)
    fixed_alpha: int  # |C(alpha_i)| on G^(i)/G^(i+1)
    R_beta: int  # R(beta_i) on G/G^(i+1)
    invariant_ok: bool
    shift_ok: bool

    @property
    def inequality_ok(self) -> bool:
        return self.R_next <= self.R * self.fixed_alpha

    @property
    def ok(self) -> bool:
        return self.inequality_ok and self.invariant_ok and self.shift_ok


@dataclass(frozen=True)
class ReductionTrace:
    series: DerivedSeries
    levels: tuple

    @property
    def ok(self) -> bool:
        return all(level.ok for level in self.levels)


def derived_reduction(G: FiniteGroup, phi: Automorphism) -> ReductionTrace:
    """
    walk down the derived series restricting phi to each term and inducing
    it on each abelian section, checking R(phi_(i+1)) <= R(phi_i) |C(alpha_i)|
    """
    series = derived_series(G)
    if not series.soluble:
        raise NotSoluble(f"the derived series of {G!r} stops at order {series.terms[-1].order}")
    levels = []
    terms = series.terms
    for i in range(len(terms) - 1):
        term, nxt = terms[i], terms[i + 1]
        invariant = term.is_invariant_under(phi.map) and nxt.is_invariant_under(phi.map)
        if not invariant:
            raise NotInvariant(f"derived term {i + 1} is not phi-invariant")
        local = term.as_group
        phi_i = restrict(phi, term)
        phi_next = restrict(phi, nxt)
        alpha = induce_on_quotient(phi_i, term.relative(nxt))
        beta = induce_on_quotient(phi, nxt)
        shift_ok = all(verify_shift(local, phi_i, g) for g in (0,) + local.generator_ids)
        levels.append(ReductionLevel(
            index=i,
            order=term.order,
            R=reidemeister_number(local, phi_i),
            R_next=reidemeister_number(nxt.as_group, phi_next),
            fixed_alpha=fixed_subgroup(alpha).order,
            R_beta=reidemeister_number(beta.group, beta),
            invariant_ok=invariant,
            shift_ok=shift_ok,
        ))
    return ReductionTrace(series, tuple(levels))


def abelian_rank(A: FiniteGroup) -> int:
    """
    the largest p-rank of a finite abelian group, log_p #{a : a^p = 1}
    """
    result = 0
    for p in factorint(A.order):
        count = sum(1 for a in range(A.order) if A.power(a, p) == 0)
        result = max(result, int(multiplicity(p, count)))
    return result


@dataclass(frozen=True)
class InnerBoundReport:
    inner_order: int
    F_order: int
    quotient_rank: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.inner_order <= self.bound


def inner_bound_check(G: FiniteGroup, F: Subgroup) -> InnerBoundReport:
    """|Inn(G)| <= |F|! |F|^rk(G/F) for F normal with G/F abelian"""
    if not F.is_normal:
        raise NotNormal(f"{F} is not normal")
    A = quotient(G, F).group_structure
    if not is_abelian(A):
        raise QuotientNotAbelian(f"G/F of order {A.order} is not abelian")
    rk = abelian_rank(A)
    return InnerBoundReport(
        inner_order=G.order // center(G).order,
        F_order=F.order,
        quotient_rank=rk,
        bound=factorial(F.order) * F.order ** rk,
    )


def soluble_radical(G: FiniteGroup) -> Subgroup:
    """the largest soluble normal subgroup"""
    def compute():
        soluble = [N for N in normal_subgroups(G) if derived_series(N.as_group).soluble]
        return max(soluble, key=lambda N: N.order)
    return G.memo('soluble_radical', compute)


@dataclass(frozen=True)
class SolubleProfile:
    fixed: int
    rank: int
    radical_order: int
    radical_index: int
    radical_derived_length: int

    def to_json(self) -> dict:
        return {
            'fixed': self.fixed,
            'rank': self.rank,
            'radical_order': self.radical_order,
            'radical_index': self.radical_index,
            'radical_derived_length': self.radical_derived_length,
        }


def soluble_profile(G: FiniteGroup, phi: Automorphism, settings: Optional[Settings] = None) -> SolubleProfile:
    radical = soluble_radical(G)
    return SolubleProfile(
        fixed=fixed_subgroup(phi).order,
        rank=rank(G, settings),
        radical_order=radical.order,
        radical_index=radical.index,
        radical_derived_length=derived_series(radical.as_group).derived_length,
    )


def class_coset_union(G: FiniteGroup, phi: Automorphism, H: Subgroup) -> bool:
    """every twisted class of phi is a union of cosets gH"""
    class_of = reidemeister_classes(G, phi).class_of
    return all(class_of[g] == class_of[G.mul(g, h)] for g in range(G.order) for h in H.generator_ids)


@dataclass(frozen=True)
class ReductionWitness:
    H_order: int
    intersection_order: int
    core: Subgroup
    R: int
    R_quotient: int
    coset_union_ok: bool

    @property
    def ok(self) -> bool:
        return self.coset_union_ok and self.R == self.R_quotient


def reduction_witness(G: FiniteGroup, phi: Automorphism, H: Optional[Subgroup] = None,
                      settings: Optional[Settings] = None) -> ReductionWitness:
    """
    For a characteristic subgroup H (G' by default) intersect the sigma
    kernels of tau_g o phi on H over the class representatives g of phi, pass
    to the characteristic core H0 of that intersection in H and check that
    G/H0 keeps every twisted class of phi apart.
    """
    if H is None:
        H = commutator_subgroup(G.whole())
        if H.order == 1:
            H = G.whole()
    if not H.is_normal:
        raise NotNormal(f"{H} is not normal")
    if not H.is_invariant_under(phi.map):
        raise NotInvariant("phi does not map the subgroup onto itself")
    part = reidemeister_classes(G, phi)
    local = H.as_group
    members = frozenset(range(local.order))
    for g in part.representatives():
        psi = restrict(compose_with_inner(phi, g), H)
        members &= sigma_witness(local, psi).kernel.member_ids
    intersection = Subgroup(local, members, check=False)
    core = H.lift(characteristic_core(local, intersection, settings))
    phi_bar = induce_on_quotient(phi, core)
    R_bar = reidemeister_number(phi_bar.group, phi_bar)
    logger.debug("reduction witness: |H| %d, |M| %d, |H0| %d", H.order, intersection.order, core.order)
    return ReductionWitness(
        H_order=H.order,
        intersection_order=intersection.order,
        core=core,
        R=part.R,
        R_quotient=R_bar,
        coset_union_ok=class_coset_union(G, phi, core),
    )


@dataclass(frozen=True)
class CountingReport:
    rank: int
    counts: dict  # n -> (a_n, (n!)^rank)

    @property
    def ok(self) -> bool:
        return all(a <= bound for a, bound in self.counts.values())


def subgroup_counting_check(G: FiniteGroup, n_max: int, settings: Optional[Settings] = None) -> CountingReport:
    """a_n(G) <= (n!)^rank(G) for n = 1 .. n_max"""
    r = rank(G, settings)
    counts = {}
    for n in range(1, n_max + 1):
        counts[n] = (len(subgroups_of_index(G, n, settings)), factorial(n) ** r)
    return CountingReport(r, counts)


class GroupWorkspace(object):
    """
    Holds the groups of a corpus run by name and the data shared between
    their automorphism cases. Safe to share between worker threads.
    """

    def __repr__(self) -> str:
        return f"<GroupWorkspace groups={list(self.groups)}>"

    def __init__(self, settings: Optional[Settings] = None) -> None:
        self.settings = settings or DEFAULT_SETTINGS
        self.groups = {}
        self._cache = {}
        self._key_locks = {}
        self._lock = threading.RLock()

    def add_group(self, name: str, group: FiniteGroup) -> None:
        with self._lock:
            self.groups[name] = group

    def group(self, name: str) -> FiniteGroup:
        try:
            return self.groups[name]
        except KeyError:
            raise KeyError(f"no group named {name} in the workspace")

    def _cached(self, name: str, key: str, compute):
        # the workspace lock guards the dicts only, each (name, key) computes under its own lock
        with self._lock:
            entry = self._cache.setdefault(name, {})
            if key in entry:
                return entry[key]
            key_lock = self._key_locks.setdefault((name, key), threading.Lock())
        with key_lock:
            with self._lock:
                if key in entry:
                    return entry[key]
            value = compute()
            with self._lock:
                entry[key] = value
            return value

    def classes(self, name: str) -> tuple:
        return self._cached(name, 'classes', lambda: conjugacy_classes(self.group(name)))

    def table(self, name: str) -> ModPCharacterTable:
        return self._cached(name, 'table', lambda: character_table(self.group(name), self.settings))

    def automorphisms(self, name: str) -> tuple:
        return self._cached(name, 'automorphisms', lambda: automorphism_sample(self.group(name), self.settings))

    def normal_subgroups(self, name: str) -> tuple:
        return self._cached(name, 'normal', lambda: normal_subgroups(self.group(name)))

    def rank(self, name: str) -> Optional[int]:
        """None when the group is over the rank cap"""
        def compute():
            try:
                return rank(self.group(name), self.settings)
            except BudgetExceeded as e:
                logger.info("no rank for %s: %s", name, e)
                return None
        return self._cached(name, 'rank', compute)
