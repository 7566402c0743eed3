"""Structure-constant presentations and their file format.

A presentation file is JSON with 0-based indices and all scalars written
as rational strings ("3", "-1/2").  Top-level fields:

    name     : str
    meta     : optional free-form object (generators record provenance here)
    A_l, A_r, H : algebra blocks {"dim": d, "mul": [[i,j,k,"c"], ...],
                  "unit": ["c", ...]} with e_i * e_j = sum_k c e_k
    s_l, t_l : sparse matrices [[row, col, "c"], ...] mapping A_l -> H
    s_r, t_r : sparse matrices mapping A_r -> H
    Delta_l, Delta_r : sparse tensors [[i, j, k, "c"], ...] meaning the
                  chosen representative of Delta(e_i) contains c * e_j (x) e_k
    eps_l    : sparse matrix H -> A_l      eps_r : sparse matrix H -> A_r
    S        : sparse matrix H -> H        S_inv : optional, H -> H

Unknown fields are rejected.  Matrices act on columns: entry [r, c, v]
sends basis vector c to v * e_r.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import LinearMap, Vec, ONE, vec_iadd


class PresentationError(Exception):
    """Malformed presentation input; `where` locates the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


class MissingInverse(Exception):
    """An antipode-inverse-dependent identity was requested without S_inv."""


@dataclass(frozen=True)
class AlgebraPresentation:
    dim: int
    mul: LinearMap          # dim x dim*dim, column i*dim+j = e_i * e_j
    unit: Tuple[Fraction, ...]

    def unit_vec(self) -> Vec:
        return {i: c for i, c in enumerate(self.unit) if c}

    def multiply(self, v: Vec, w: Vec) -> Vec:
        out: Vec = {}
        d = self.dim
        for i, a in v.items():
            for j, b in w.items():
                vec_iadd(out, self.mul.columns[i * d + j], a * b)
        return out

    def multiply_basis(self, i: int, j: int) -> Vec:
        return self.mul.columns[i * self.dim + j]

    def left_mult(self, v: Vec) -> LinearMap:
        """x -> v * x as a matrix."""
        return LinearMap(self.dim, self.dim,
                         [self.multiply(v, {j: ONE}) for j in range(self.dim)])

    def right_mult(self, v: Vec) -> LinearMap:
        return LinearMap(self.dim, self.dim,
                         [self.multiply({j: ONE}, v) for j in range(self.dim)])

    def check_structure(self) -> Optional[str]:
        """None when associative and unital, else a short description."""
        d = self.dim
        for i in range(d):
            for j in range(d):
                ij = self.multiply_basis(i, j)
                for k in range(d):
                    lhs = self.multiply(ij, {k: ONE})
                    rhs = self.multiply({i: ONE}, self.multiply_basis(j, k))
                    if lhs != rhs:
                        return f"associativity fails on basis triple ({i},{j},{k})"
        u = self.unit_vec()
        for j in range(d):
            if self.multiply(u, {j: ONE}) != {j: ONE}:
                return f"unit fails on the left of basis element {j}"
            if self.multiply({j: ONE}, u) != {j: ONE}:
                return f"unit fails on the right of basis element {j}"
        return None

    def is_commutative(self) -> bool:
        d = self.dim
        return all(self.multiply_basis(i, j) == self.multiply_basis(j, i)
                   for i in range(d) for j in range(i))

    def opposite(self) -> "AlgebraPresentation":
        d = self.dim
        cols = [self.multiply_basis(j, i) for i in range(d) for j in range(d)]
        return AlgebraPresentation(d, LinearMap(d, d * d, cols), self.unit)


@dataclass(frozen=True)
class HopfAlgebroidPresentation:
    """All structure maps of a Hopf algebroid as exact rational tables.

    Coproducts are stored as chosen representatives in H (x)_k H; every
    identity involving them is checked modulo the appropriate tensor
    relations by the axioms module.
    """

    name: str
    A_l: AlgebraPresentation
    A_r: AlgebraPresentation
    H: AlgebraPresentation
    s_l: LinearMap
    t_l: LinearMap
    s_r: LinearMap
    t_r: LinearMap
    delta_l: LinearMap      # H.dim^2 x H.dim, column i = representative of Delta_l(e_i)
    delta_r: LinearMap
    eps_l: LinearMap
    eps_r: LinearMap
    S: LinearMap
    S_inv: Optional[LinearMap] = None
    meta: dict = field(default_factory=dict, compare=False)

    def with_synthesized_inverse(self) -> "HopfAlgebroidPresentation":
        """Fill in S_inv from S when S is bijective; no-op when present."""
        if self.S_inv is not None:
            return self
        inv = invert_map(self.S)
        if inv is None:
            return self
        return replace(self, S_inv=inv)


def invert_map(f: LinearMap) -> Optional[LinearMap]:
    if f.rows != f.cols:
        return None
    from .linalg import RrefBuilder, ZERO
    n = f.rows
    # Gauss-Jordan on [f | id] row-wise
    rows: Dict[int, Vec] = {}
    for i, j, v in f.entries():
        rows.setdefault(i, {})[j] = v
    aug = []
    for i in range(n):
        r = dict(rows.get(i, {}))
        r[n + i] = ONE
        aug.append(r)
    b = RrefBuilder(2 * n)
    for r in aug:
        b.add(r)
    final = b.finalize()
    piv = b.pivots()
    if piv[:n] != list(range(n)) or len(piv) < n or any(p >= n for p in piv[:n]):
        return None
    cols: List[Vec] = [dict() for _ in range(n)]
    for p, row in zip(piv, final):
        if p >= n:
            return None
        for j, v in row.items():
            if j >= n:
                cols[j - n][p] = v
    return LinearMap(n, n, cols)


# ---------------------------------------------------------------------------
# JSON (de)serialization

_ALGEBRA_FIELDS = {"dim", "mul", "unit"}
_TOP_FIELDS = ["name", "meta", "A_l", "A_r", "H", "s_l", "t_l", "s_r", "t_r",
               "Delta_l", "Delta_r", "eps_l", "eps_r", "S", "S_inv"]
_REQUIRED = [f for f in _TOP_FIELDS if f not in ("meta", "S_inv")]


def _parse_scalar(s, where: str) -> Fraction:
    if not isinstance(s, str):
        raise PresentationError(where, f"scalar must be a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise PresentationError(where, f"bad rational {s!r}: {exc}")


def _parse_matrix(data, rows: int, cols: int, where: str) -> LinearMap:
    if not isinstance(data, list):
        raise PresentationError(where, "expected a list of [row, col, scalar] entries")
    entries = []
    for pos, e in enumerate(data):
        if not (isinstance(e, list) and len(e) == 3):
            raise PresentationError(f"{where}[{pos}]", "expected [row, col, scalar]")
        r, c, v = e
        if not (isinstance(r, int) and isinstance(c, int)):
            raise PresentationError(f"{where}[{pos}]", "indices must be integers")
        entries.append((r, c, _parse_scalar(v, f"{where}[{pos}]")))
    try:
        return LinearMap.from_entries(rows, cols, entries)
    except ValueError as exc:
        raise PresentationError(where, str(exc))


def _parse_delta(data, dim: int, where: str) -> LinearMap:
    if not isinstance(data, list):
        raise PresentationError(where, "expected a list of [i, j, k, scalar] entries")
    entries = []
    for pos, e in enumerate(data):
        if not (isinstance(e, list) and len(e) == 4):
            raise PresentationError(f"{where}[{pos}]", "expected [i, j, k, scalar]")
        i, j, k, v = e
        if not all(isinstance(x, int) for x in (i, j, k)):
            raise PresentationError(f"{where}[{pos}]", "indices must be integers")
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise PresentationError(f"{where}[{pos}]", f"index outside dimension {dim}")
        entries.append((j * dim + k, i, _parse_scalar(v, f"{where}[{pos}]")))
    try:
        return LinearMap.from_entries(dim * dim, dim, entries)
    except ValueError as exc:
        raise PresentationError(where, str(exc))


def _parse_algebra(data, where: str) -> AlgebraPresentation:
    if not isinstance(data, dict):
        raise PresentationError(where, "expected an object with dim/mul/unit")
    unknown = set(data) - _ALGEBRA_FIELDS
    if unknown:
        raise PresentationError(where, f"unknown fields {sorted(unknown)}")
    for f in _ALGEBRA_FIELDS:
        if f not in data:
            raise PresentationError(where, f"missing field {f!r}")
    dim = data["dim"]
    if not (isinstance(dim, int) and dim >= 1):
        raise PresentationError(f"{where}.dim", "must be a positive integer")
    mul = data["mul"]
    if not isinstance(mul, list):
        raise PresentationError(f"{where}.mul", "expected a list")
    entries = []
    for pos, e in enumerate(mul):
        if not (isinstance(e, list) and len(e) == 4):
            raise PresentationError(f"{where}.mul[{pos}]", "expected [i, j, k, scalar]")
        i, j, k, v = e
        if not all(isinstance(x, int) for x in (i, j, k)):
            raise PresentationError(f"{where}.mul[{pos}]", "indices must be integers")
        if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
            raise PresentationError(f"{where}.mul[{pos}]", f"index outside dimension {dim}")
        entries.append((k, i * dim + j, _parse_scalar(v, f"{where}.mul[{pos}]")))
    try:
        mul_map = LinearMap.from_entries(dim, dim * dim, entries)
    except ValueError as exc:
        raise PresentationError(f"{where}.mul", str(exc))
    unit = data["unit"]
    if not (isinstance(unit, list) and len(unit) == dim):
        raise PresentationError(f"{where}.unit", f"expected a dense list of {dim} scalars")
    unit_t = tuple(_parse_scalar(c, f"{where}.unit[{i}]") for i, c in enumerate(unit))
    alg = AlgebraPresentation(dim, mul_map, unit_t)
    bad = alg.check_structure()
    if bad:
        raise PresentationError(where, bad)
    return alg


def loads_presentation(text: str) -> HopfAlgebroidPresentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError("<file>", f"not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise PresentationError("<file>", "top level must be an object")
    unknown = set(data) - set(_TOP_FIELDS)
    if unknown:
        raise PresentationError("<file>", f"unknown fields {sorted(unknown)}")
    for f in _REQUIRED:
        if f not in data:
            raise PresentationError("<file>", f"missing field {f!r}")
    if not isinstance(data["name"], str):
        raise PresentationError("name", "must be a string")
    meta = data.get("meta", {})
    if not isinstance(meta, dict):
        raise PresentationError("meta", "must be an object")
    A_l = _parse_algebra(data["A_l"], "A_l")
    A_r = _parse_algebra(data["A_r"], "A_r")
    H = _parse_algebra(data["H"], "H")
    d, dl, dr = H.dim, A_l.dim, A_r.dim
    pres = HopfAlgebroidPresentation(
        name=data["name"],
        A_l=A_l, A_r=A_r, H=H,
        s_l=_parse_matrix(data["s_l"], d, dl, "s_l"),
        t_l=_parse_matrix(data["t_l"], d, dl, "t_l"),
        s_r=_parse_matrix(data["s_r"], d, dr, "s_r"),
        t_r=_parse_matrix(data["t_r"], d, dr, "t_r"),
        delta_l=_parse_delta(data["Delta_l"], d, "Delta_l"),
        delta_r=_parse_delta(data["Delta_r"], d, "Delta_r"),
        eps_l=_parse_matrix(data["eps_l"], dl, d, "eps_l"),
        eps_r=_parse_matrix(data["eps_r"], dr, d, "eps_r"),
        S=_parse_matrix(data["S"], d, d, "S"),
        S_inv=_parse_matrix(data["S_inv"], d, d, "S_inv") if "S_inv" in data else None,
        meta=meta,
    )
    return pres


def load_presentation(path) -> HopfAlgebroidPresentation:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_presentation(fh.read())


def _dump_matrix(m: LinearMap) -> list:
    return [[i, j, str(v)] for i, j, v in sorted(m.entries(), key=lambda e: (e[0], e[1]))]


def _dump_delta(m: LinearMap, dim: int) -> list:
    out = []
    for flat, i, v in m.entries():
        out.append([i, flat // dim, flat % dim, str(v)])
    out.sort(key=lambda e: e[:3])
    return out


def _dump_algebra(a: AlgebraPresentation) -> dict:
    d = a.dim
    mul = []
    for k, flat, v in a.mul.entries():
        mul.append([flat // d, flat % d, k, str(v)])
    mul.sort(key=lambda e: e[:3])
    return {"dim": d, "mul": mul, "unit": [str(c) for c in a.unit]}


def dumps_presentation(p: HopfAlgebroidPresentation) -> str:
    d = p.H.dim
    data = {"name": p.name}
    if p.meta:
        data["meta"] = p.meta
    data.update({
        "A_l": _dump_algebra(p.A_l),
        "A_r": _dump_algebra(p.A_r),
        "H": _dump_algebra(p.H),
        "s_l": _dump_matrix(p.s_l),
        "t_l": _dump_matrix(p.t_l),
        "s_r": _dump_matrix(p.s_r),
        "t_r": _dump_matrix(p.t_r),
        "Delta_l": _dump_delta(p.delta_l, d),
        "Delta_r": _dump_delta(p.delta_r, d),
        "eps_l": _dump_matrix(p.eps_l),
        "eps_r": _dump_matrix(p.eps_r),
        "S": _dump_matrix(p.S),
    })
    if p.S_inv is not None:
        data["S_inv"] = _dump_matrix(p.S_inv)
    return json.dumps(data, indent=1) + "\n"


def save_presentation(p: HopfAlgebroidPresentation, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_presentation(p))


# ---------------------------------------------------------------------------
# basis permutation (used by the determinism property checks)


def permute_presentation(p: HopfAlgebroidPresentation, perm: Sequence[int]) -> HopfAlgebroidPresentation:
    """Conjugate all structure tables by a permutation of the H basis."""
    d = p.H.dim
    if sorted(perm) != list(range(d)):
        raise ValueError("not a permutation of the H basis")
    P = LinearMap.from_entries(d, d, [(perm[i], i, ONE) for i in range(d)])
    Pinv = LinearMap.from_entries(d, d, [(i, perm[i], ONE) for i in range(d)])
    P2 = LinearMap.from_entries(
        d * d, d * d,
        [(perm[i] * d + perm[j], i * d + j, ONE) for i in range(d) for j in range(d)])
    P2inv = LinearMap.from_entries(
        d * d, d * d,
        [(i * d + j, perm[i] * d + perm[j], ONE) for i in range(d) for j in range(d)])
    H = AlgebraPresentation(
        d, P @ p.H.mul @ P2inv,
        tuple((P.apply(p.H.unit_vec())).get(i, Fraction(0)) for i in range(d)))
    return replace(
        p, H=H,
        s_l=P @ p.s_l, t_l=P @ p.t_l, s_r=P @ p.s_r, t_r=P @ p.t_r,
        delta_l=P2 @ p.delta_l @ Pinv, delta_r=P2 @ p.delta_r @ Pinv,
        eps_l=p.eps_l @ Pinv, eps_r=p.eps_r @ Pinv,
        S=P @ p.S @ Pinv,
        S_inv=None if p.S_inv is None else P @ p.S_inv @ Pinv,
    )
