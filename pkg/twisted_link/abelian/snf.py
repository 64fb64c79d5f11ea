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
from dataclasses import dataclass
from typing import Optional, Sequence

from sympy import Matrix, ZZ, zeros
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

__all__ = ["SNFResult", "smith_normal_form", "solve_integer", "integer_kernel", "as_matrix"]


@dataclass(frozen=True)
class SNFResult:
    """
    U * M * V == D with U, V unimodular and D diagonal, d1 | d2 | ... and
    zero diagonal entries after the nonzero ones
    """
    U: Matrix
    V: Matrix
    D: Matrix

    @property
    def diagonal(self) -> tuple:
        return tuple(int(self.D[i, i]) for i in range(min(self.D.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> tuple:
        """the nonzero diagonal entries other than 1"""
        return tuple(d for d in self.diagonal if d > 1)

    def check(self, M: Matrix) -> bool:
        if self.U * M * self.V != self.D:
            return False
        if self.U.shape[0] and abs(self.U.det()) != 1:
            return False
        if self.V.shape[0] and abs(self.V.det()) != 1:
            return False
        rows, cols = self.D.shape
        for i in range(rows):
            for j in range(cols):
                if i != j and self.D[i, j] != 0:
                    return False
        diag = self.diagonal
        for a, b in zip(diag, diag[1:]):
            if a == 0 and b != 0:
                return False
            if a != 0 and b % a != 0:
                return False
        return all(d >= 0 for d in diag)


def as_matrix(rows: Sequence, shape: Optional[tuple] = None) -> Matrix:
    """
    an integer Matrix from nested lists; shape is needed for empty matrices
    """
    if shape is not None and 0 in shape:
        return zeros(*shape)
    M = Matrix(rows)
    if any(not x.is_Integer for x in M):
        raise ValueError(f"matrix entries must be integers: {rows!r}")
    return M


def smith_normal_form(M: Matrix) -> SNFResult:
    """
    sympy's Smith decomposition over ZZ, with U and V the row and column transforms
    """
    rows, cols = M.shape
    dm = DomainMatrix([[ZZ(int(M[i, j])) for j in range(cols)] for i in range(rows)], (rows, cols), ZZ)
    d, s, t = smith_normal_decomp(dm)
    D, U, V = Matrix(d.to_Matrix()), Matrix(s.to_Matrix()), Matrix(t.to_Matrix())
    for i in range(min(rows, cols)):
        if D[i, i] < 0:
            D[i, :] = -D[i, :]
            U[i, :] = -U[i, :]
    return SNFResult(U=U, V=V, D=D)


def solve_integer(A: Matrix, b: Matrix, snf: Optional[SNFResult] = None) -> Optional[Matrix]:
    """
    an integer z with A z == b, or None when there is none. Pass the Smith
    form of A when solving against the same A many times.
    """
    if snf is None:
        snf = smith_normal_form(A)
    c = snf.U * b
    rows, cols = A.shape
    w = zeros(cols, 1)
    diag = snf.diagonal
    for i in range(rows):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if c[i] != 0:
                return None
        elif c[i] % d:
            return None
        else:
            w[i] = c[i] // d
    return snf.V * w


def integer_kernel(A: Matrix) -> Matrix:
    """
    columns spanning {z in Z^n : A z == 0}
    """
    snf = smith_normal_form(A)
    cols = A.shape[1]
    r = snf.rank
    if r == cols:
        return zeros(cols, 0)
    return snf.V[:, r:]
