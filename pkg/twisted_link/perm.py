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
import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from sympy.combinatorics import Permutation

from .api import TwistedLinkError

__all__ = ["Perm", "PermError", "parse_cycles"]

_CYCLE = re.compile(r"\(([^()]*)\)")


class PermError(TwistedLinkError):
    """
    raised for image arrays that are not bijections or malformed cycle strings
    """


@dataclass(frozen=True, order=True)
class Perm:
    """
    A hashable, ordered handle on a sympy Permutation, keyed by its image array.
    Products compose right to left: (a * b)[i] == a[b[i]], which is
    Permutation.rmul. Ordering is lexicographic on the images, the identity is the least.
    """
    images: tuple

    def __post_init__(self) -> None:
        try:
            sym = Permutation([int(i) for i in self.images])
        except (TypeError, ValueError):
            raise PermError(f"images {list(self.images)} are not a bijection of 0..{len(self.images) - 1}")
        object.__setattr__(self, 'images', tuple(sym.array_form))
        object.__setattr__(self, '_sym', sym)

    def __repr__(self) -> str:
        return f"Perm({self.cycle_string()})"

    def __len__(self) -> int:
        return len(self.images)

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __call__(self, point: int) -> int:
        return self.images[point]

    @property
    def sym(self) -> Permutation:
        sym = self.__dict__.get('_sym')
        if sym is None:
            sym = Permutation(list(self.images))
            object.__setattr__(self, '_sym', sym)
        return sym

    @classmethod
    def from_sympy(cls, perm: Permutation, degree: Optional[int] = None) -> "Perm":
        images = list(perm.array_form)
        if degree is not None and degree > len(images):
            images.extend(range(len(images), degree))
        return cls._trusted(tuple(images))

    @classmethod
    def _trusted(cls, images: tuple) -> "Perm":
        # images already known to be a bijection
        perm = object.__new__(cls)
        object.__setattr__(perm, 'images', images)
        return perm

    def __mul__(self, other: "Perm") -> "Perm":
        if len(other) != len(self):
            raise PermError(f"cannot compose degree {len(self)} with degree {len(other)}")
        return Perm.from_sympy(Permutation.rmul_with_af(self.sym, other.sym))

    def __invert__(self) -> "Perm":
        return Perm.from_sympy(~self.sym)

    def __pow__(self, exp: int) -> "Perm":
        return Perm.from_sympy(self.sym ** exp, len(self))

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Perm":
        cycles = [[int(p) for p in cycle] for cycle in cycles]
        cycles = [cycle for cycle in cycles if cycle]
        for cycle in cycles:
            for p in cycle:
                if p < 0 or p >= degree:
                    raise PermError(f"point {p} is outside degree {degree}")
        if not cycles:
            return cls.identity(degree)
        try:
            sym = Permutation(cycles, size=degree)
        except ValueError:
            raise PermError(f"a point appears twice in the cycle notation {cycles}")
        return cls.from_sympy(sym, degree)

    def is_identity(self) -> bool:
        return self.images == tuple(range(len(self.images)))

    def cycles(self) -> list:
        return [tuple(c) for c in self.sym.cyclic_form]

    def cycle_string(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cycles)

    def order(self) -> int:
        return int(self.sym.order())


def parse_cycles(text: str, degree: int) -> Perm:
    """
    parse cycle notation such as "(0 1 2)(3 4)"; points may be separated by
    spaces or commas. "()" and "" are the identity.
    """
    stripped = text.strip()
    if _CYCLE.sub("", stripped).strip():
        raise PermError(f"malformed cycle notation {text!r}")
    cycles = []
    for body in _CYCLE.findall(stripped):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        try:
            cycles.append([int(t) for t in tokens])
        except ValueError:
            raise PermError(f"malformed cycle notation {text!r}")
    return Perm.from_cycles(cycles, degree)
