"""Standard cyclic module of an associative algebra, used as ground truth.

Deliberately self-contained: levels are full k-tensor powers A^{(x)(n+1)}
with the wraparound face and rotation operators assembled here from the
multiplication table alone, sharing nothing with the Hopf-algebroid
machinery beyond exact linear algebra.  The agreement of these numbers
with the dual Hopf-cyclic theory of the enveloping algebroid is one of
the acceptance cross-validations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .linalg import (CyclicTable, LinearMap, MixedComplex, Vec, ONE,
                     cyclic_homology_table, homology_data)
from .presentation import AlgebraPresentation


@dataclass
class AlgebraCyclicModule:
    """Levels A^{(x)(n+1)} with faces, degeneracies and the rotation."""

    algebra: AlgebraPresentation
    n_max: int

    def level_dim(self, n: int) -> int:
        return self.algebra.dim ** (n + 1)

    def _strides(self, slots: int) -> List[int]:
        d = self.algebra.dim
        return [d ** (slots - 1 - k) for k in range(slots)]

    def face(self, n: int, i: int) -> LinearMap:
        """d_i : A^{(x)(n+1)} -> A^{(x)n}; the last face wraps around."""
        A = self.algebra
        d = A.dim
        src_st = self._strides(n + 1)
        tgt_st = self._strides(n)
        cols: List[Vec] = []
        for flat in range(d ** (n + 1)):
            digits = [(flat // src_st[k]) % d for k in range(n + 1)]
            col: Vec = {}
            if i < n:
                prod = A.multiply_basis(digits[i], digits[i + 1])
                rest = digits[:i] + [0] + digits[i + 2:]
                for k, c in prod.items():
                    rest[i] = k
                    key = sum(v * tgt_st[q] for q, v in enumerate(rest))
                    col[key] = col.get(key, Fraction(0)) + c
            else:
                prod = A.multiply_basis(digits[n], digits[0])
                rest = [0] + digits[1:n]
                for k, c in prod.items():
                    rest[0] = k
                    key = sum(v * tgt_st[q] for q, v in enumerate(rest))
                    col[key] = col.get(key, Fraction(0)) + c
            cols.append({k: v for k, v in col.items() if v})
        return LinearMap(d ** n, d ** (n + 1), cols)

    def degeneracy(self, n: int, i: int) -> LinearMap:
        A = self.algebra
        d = A.dim
        unit = A.unit_vec()
        src_st = self._strides(n + 1)
        tgt_st = self._strides(n + 2)
        cols: List[Vec] = []
        for flat in range(d ** (n + 1)):
            digits = [(flat // src_st[k]) % d for k in range(n + 1)]
            col: Vec = {}
            for u, cu in unit.items():
                ext = digits[:i + 1] + [u] + digits[i + 1:]
                col[sum(v * tgt_st[q] for q, v in enumerate(ext))] = cu
            cols.append(col)
        return LinearMap(d ** (n + 2), d ** (n + 1), cols)

    def rotation(self, n: int) -> LinearMap:
        d = self.algebra.dim
        src_st = self._strides(n + 1)
        cols: List[Vec] = []
        for flat in range(d ** (n + 1)):
            digits = [(flat // src_st[k]) % d for k in range(n + 1)]
            rot = [digits[-1]] + digits[:-1]
            cols.append({sum(v * src_st[q] for q, v in enumerate(rot)): ONE})
        return LinearMap(d ** (n + 1), d ** (n + 1), cols)

    def boundary(self, n: int) -> LinearMap:
        out = self.face(n, 0)
        for i in range(1, n + 1):
            term = self.face(n, i)
            out = out + term if i % 2 == 0 else out - term
        return out

    def connes_B(self, n: int) -> LinearMap:
        """(1 - lambda) s N with the extra degeneracy s = t . s_n."""
        lam_sign = -ONE if n % 2 else ONE
        lam = self.rotation(n).scale(lam_sign)
        norm = LinearMap.identity(self.level_dim(n))
        acc = norm
        for _ in range(n):
            acc = lam @ acc
            norm = norm + acc
        extra = self.rotation(n + 1) @ self.degeneracy(n, n)
        lam1 = self.rotation(n + 1).scale(-ONE if (n + 1) % 2 else ONE)
        return (LinearMap.identity(self.level_dim(n + 1)) - lam1) @ extra @ norm

    def relation_report(self) -> List[str]:
        """Failing cyclic-module identities (empty for unital associative A)."""
        bad = []
        for n in range(1, min(self.n_max, 2) + 1):
            t = self.rotation(n)
            power = LinearMap.identity(self.level_dim(n))
            for _ in range(n + 1):
                power = t @ power
            if power != LinearMap.identity(self.level_dim(n)):
                bad.append(f"t^(n+1) != id at level {n}")
            if self.face(n, 0) @ t != self.face(n, n):
                bad.append(f"d_0 t != d_n at level {n}")
            for i in range(1, n + 1):
                lhs = self.face(n, i) @ t
                rhs = (self.rotation(n - 1) @ self.face(n, i - 1))
                if lhs != rhs:
                    bad.append(f"d_{i} t != t d_{i-1} at level {n}")
        return bad


def algebra_cyclic_homology(A: AlgebraPresentation, n_max: int) -> CyclicTable:
    """HH and HC of the algebra from its standard cyclic module."""
    bad = A.check_structure()
    if bad:
        raise ValueError(f"not a unital associative algebra: {bad}")
    mod = AlgebraCyclicModule(A, n_max)
    dims = tuple(mod.level_dim(n) for n in range(n_max + 2))
    b: List[Optional[LinearMap]] = [None] + [mod.boundary(n) for n in range(1, n_max + 2)]
    B: List[Optional[LinearMap]] = [mod.connes_B(n) for n in range(n_max)] \
        + [None, None]
    mc = MixedComplex(dims, tuple(b), tuple(B), step=-1)
    return cyclic_homology_table(mc, n_max)
