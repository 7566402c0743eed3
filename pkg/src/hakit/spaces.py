"""Glued tensor powers of H and slotwise operator assembly.

Every tensor space in the theory is a quotient of a k-tensor power of H
by junction-local relations, one relation family per adjacent pair of
slots.  Three junction types cover all gluings in use:

    "ll" : t_l(a) h (x) h' - h (x) s_l(a) h'        (left-module tensor)
    "rl" : h s_r(a) (x) h' - h (x) s_r(a) h'        (right-comodule tensor)
    "rr" : h s_r(a) (x) h' - h (x) h' t_r(a)        (right-module tensor)

Operators are given as column functions on basis tuples and induced onto
the quotients; induction always verifies well-definedness on the full
relation basis and raises NotWellDefined otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import (LinearMap, NotWellDefined, QuotientSpace, RrefBuilder,
                     Vec, ONE, full_space, quotient_from_builder, vec_iadd)
from .presentation import HopfAlgebroidPresentation
from .util import strides_of

TupleVec = Dict[tuple, Fraction]

JUNCTION_TYPES = ("ll", "rl", "rr")


class Ops:
    """Column-form structure tables of one presentation, heavily cached."""

    def __init__(self, p: HopfAlgebroidPresentation):
        self.p = p
        self.dim = p.H.dim
        self.dim_al = p.A_l.dim
        self.dim_ar = p.A_r.dim
        self.unitH = p.H.unit_vec()
        self.unitAl = p.A_l.unit_vec()
        self.unitAr = p.A_r.unit_vec()
        self.delta_l_cols = self._delta_cols(p.delta_l)
        self.delta_r_cols = self._delta_cols(p.delta_r)
        d = self.dim
        self._lmul = [p.H.left_mult({i: ONE}) for i in range(d)]
        self._rmul = [p.H.right_mult({i: ONE}) for i in range(d)]
        self._coprod_pow: Dict[Tuple[str, int, int], TupleVec] = {}
        self._pair_rels: Dict[str, List[List[Dict[Tuple[int, int], Fraction]]]] = {}
        if p.S_inv is None:
            self.p = p.with_synthesized_inverse()

    def _delta_cols(self, delta: LinearMap):
        d = self.dim
        cols = []
        for i in range(delta.cols):
            cols.append([(flat // d, flat % d, c) for flat, c in delta.columns[i].items()])
        return cols

    # -- elementwise algebra -------------------------------------------------

    def mulvec(self, v: Vec, w: Vec) -> Vec:
        return self.p.H.multiply(v, w)

    def mul_chain(self, vecs: Sequence[Vec]) -> Vec:
        out = self.unitH
        for v in vecs:
            out = self.mulvec(out, v)
        return out

    def map_vec(self, m: LinearMap, v: Vec) -> Vec:
        return m.apply(v)

    @property
    def S(self) -> LinearMap:
        return self.p.S

    @property
    def S_inv(self) -> LinearMap:
        if self.p.S_inv is None:
            from .presentation import MissingInverse
            raise MissingInverse("presentation has no antipode inverse and S is singular")
        return self.p.S_inv

    def coprod_power(self, side: str, i: int, n: int) -> TupleVec:
        """Iterated coproduct representative of e_i with n output slots."""
        key = (side, i, n)
        got = self._coprod_pow.get(key)
        if got is not None:
            return got
        if n == 1:
            out: TupleVec = {(i,): ONE}
        else:
            cols = self.delta_l_cols if side == "l" else self.delta_r_cols
            prev = self.coprod_power(side, i, n - 1)
            out = {}
            for tup, c in prev.items():
                for (a, b, cc) in cols[tup[0]]:
                    key2 = (a, b) + tup[1:]
                    w = out.get(key2)
                    w = (w if w is not None else Fraction(0)) + c * cc
                    if w:
                        out[key2] = w
                    else:
                        out.pop(key2, None)
        self._coprod_pow[key] = out
        return out

    def diag_act(self, hvec: Vec, x: TupleVec, n: int) -> TupleVec:
        """h . (m_1 (x) ... (x) m_n) via the iterated left coproduct."""
        out: TupleVec = {}
        for i, c in hvec.items():
            legs = self.coprod_power("l", i, n)
            for ktup, ck in legs.items():
                for xtup, cx in x.items():
                    coeff = c * ck * cx
                    slots = [self.mulvec({ktup[q]: ONE}, {xtup[q]: ONE}) for q in range(n)]
                    accumulate_product(out, slots, coeff)
        return out

    # -- junction relations ---------------------------------------------------

    def junction_actions(self, jtype: str):
        """(base_dim, right_action_matrices, left_action_matrices)."""
        p = self.p
        if jtype == "ll":
            base = range(self.dim_al)
            right = [p.H.left_mult(p.t_l.columns[a]) for a in base]
            left = [p.H.left_mult(p.s_l.columns[a]) for a in base]
            return self.dim_al, right, left
        if jtype == "rl":
            base = range(self.dim_ar)
            right = [p.H.right_mult(p.s_r.columns[a]) for a in base]
            left = [p.H.left_mult(p.s_r.columns[a]) for a in base]
            return self.dim_ar, right, left
        if jtype == "rr":
            base = range(self.dim_ar)
            right = [p.H.right_mult(p.s_r.columns[a]) for a in base]
            left = [p.H.right_mult(p.t_r.columns[a]) for a in base]
            return self.dim_ar, right, left
        raise ValueError(f"unknown junction type {jtype!r}")

    def pair_relations(self, jtype: str) -> List[List[Dict[Tuple[int, int], Fraction]]]:
        """pair_relations(j)[a][i*dim + j] = two-slot relation vector."""
        got = self._pair_rels.get(jtype)
        if got is not None:
            return got
        d = self.dim
        base_dim, right, left = self.junction_actions(jtype)
        out = []
        for a in range(base_dim):
            per_pair = []
            ra, la = right[a], left[a]
            for i in range(d):
                ri = ra.columns[i]
                for j in range(d):
                    rel: Dict[Tuple[int, int], Fraction] = {}
                    for k, c in ri.items():
                        rel[(k, j)] = c
                    for k, c in la.columns[j].items():
                        w = rel.get((i, k), Fraction(0)) - c
                        if w:
                            rel[(i, k)] = w
                        else:
                            rel.pop((i, k), None)
                    per_pair.append(rel)
            out.append(per_pair)
        self._pair_rels[jtype] = out
        return out


def accumulate_product(out: TupleVec, slot_vecs: Sequence[Vec], coeff: Fraction):
    """out += coeff * (slot_vecs[0] (x) ... (x) slot_vecs[-1])."""
    if not coeff:
        return
    items: List[Tuple[tuple, Fraction]] = [((), coeff)]
    for sv in slot_vecs:
        if not sv:
            return
        items = [(tup + (k,), c * ck) for tup, c in items for k, ck in sv.items()]
    for tup, c in items:
        w = out.get(tup)
        w = (w if w is not None else Fraction(0)) + c
        if w:
            out[tup] = w
        else:
            out.pop(tup, None)


def glued_space(ops: Ops, jtypes: Sequence[str],
                extra_relations: Optional[Iterable[Vec]] = None) -> QuotientSpace:
    """Quotient of H^{(x) (len(jtypes)+1)} by the junction relations."""
    d = ops.dim
    n = len(jtypes) + 1
    shape = [d] * n
    strides = strides_of(shape)
    total = d ** n
    b = RrefBuilder(total)
    for q, jt in enumerate(jtypes):
        pair = ops.pair_relations(jt)
        sq, sq1 = strides[q], strides[q + 1]
        other = [s for i, s in enumerate(strides) if i not in (q, q + 1)]
        rest_offsets = list(_flat_offsets(other, [d] * len(other)))
        for a in range(len(pair)):
            per_pair = pair[a]
            for i in range(d):
                for j in range(d):
                    rel = per_pair[i * d + j]
                    if not rel:
                        continue
                    base_off = i * sq + j * sq1
                    shifted = [((k - i) * sq + (l - j) * sq1, c) for (k, l), c in rel.items()]
                    for rest in rest_offsets:
                        off0 = base_off + rest
                        b.add({off0 + off: c for off, c in shifted})
    if extra_relations is not None:
        for r in extra_relations:
            b.add(r)
    return quotient_from_builder(total, b)


def glue_space(shape: Sequence[int], junction_actions,
               extra_relations: Optional[Iterable[Vec]] = None) -> QuotientSpace:
    """General glued tensor over arbitrary factor dimensions.

    junction_actions[q] is a list of (R, L) matrix pairs, one per base
    basis element, imposing R x (x) y - x (x) L y at junction q.
    """
    shape = tuple(shape)
    strides = strides_of(shape)
    total = 1
    for s in shape:
        total *= s
    b = RrefBuilder(total)
    for q, actions in enumerate(junction_actions):
        dl, dr = shape[q], shape[q + 1]
        sq, sq1 = strides[q], strides[q + 1]
        other = [s for i, s in enumerate(strides) if i not in (q, q + 1)]
        other_dims = [s for i, s in enumerate(shape) if i not in (q, q + 1)]
        rest_offsets = list(_flat_offsets(other, other_dims))
        for (ra, la) in actions:
            for i in range(dl):
                ri = ra.columns[i]
                for j in range(dr):
                    rel = [((k - i) * sq, c) for k, c in ri.items()]
                    rel += [((k - j) * sq1, -c) for k, c in la.columns[j].items()]
                    if not rel:
                        continue
                    base_off = i * sq + j * sq1
                    for rest in rest_offsets:
                        off0 = base_off + rest
                        vec: Vec = {}
                        for off, c in rel:
                            k = off0 + off
                            w = vec.get(k, Fraction(0)) + c
                            if w:
                                vec[k] = w
                            else:
                                vec.pop(k, None)
                        b.add(vec)
    if extra_relations is not None:
        for r in extra_relations:
            b.add(r)
    return quotient_from_builder(total, b)


def _flat_offsets(strides: List[int], dims: List[int]):
    if not strides:
        yield 0
        return
    acc = [0]
    for s, d in zip(strides, dims):
        acc = [a + s * v for a in acc for v in range(d)]
    yield from acc


ColFn = Callable[[tuple], TupleVec]


def flatten_tuplevec(tv: TupleVec, strides: Sequence[int]) -> Vec:
    out: Vec = {}
    for tup, c in tv.items():
        flat = 0
        for t, s in zip(tup, strides):
            flat += t * s
        w = out.get(flat)
        w = (w if w is not None else Fraction(0)) + c
        if w:
            out[flat] = w
        else:
            out.pop(flat, None)
    return out


def unflatten(flat: int, shape: Sequence[int]) -> tuple:
    out = []
    for s in strides_of(shape):
        out.append(flat // s)
        flat %= s
    return tuple(out)


class TupleMapBuilder:
    """Induce a tuple-level column function between glued quotients."""

    def __init__(self, colfn: ColFn, src_shape: Sequence[int], tgt_shape: Sequence[int]):
        self.colfn = colfn
        self.src_shape = tuple(src_shape)
        self.tgt_shape = tuple(tgt_shape)
        self.tgt_strides = strides_of(tgt_shape)
        self._cache: Dict[int, Vec] = {}

    def column(self, flat: int) -> Vec:
        got = self._cache.get(flat)
        if got is None:
            got = flatten_tuplevec(self.colfn(unflatten(flat, self.src_shape)),
                                   self.tgt_strides)
            self._cache[flat] = got
        return got

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for flat, c in v.items():
            vec_iadd(out, self.column(flat), c)
        return out


def induce_tuple_map(colfn: ColFn, src: QuotientSpace, tgt: QuotientSpace,
                     src_shape: Sequence[int], tgt_shape: Sequence[int],
                     check: bool = True) -> LinearMap:
    """project_tgt . colfn . section_src, verified on the relation basis."""
    tb = TupleMapBuilder(colfn, src_shape, tgt_shape)
    if check:
        for rel in src.relation_basis:
            if tgt.project.apply(tb.apply(rel)):
                raise NotWellDefined(rel)
    cols = [tgt.project.apply(tb.apply(col)) for col in src.section.columns]
    return LinearMap(tgt.dim, src.dim, cols)


def matrix_of_tuple_map(colfn: ColFn, src_shape: Sequence[int],
                        tgt_shape: Sequence[int]) -> LinearMap:
    """Materialize a tuple-level map on the full k-tensor ambients."""
    tb = TupleMapBuilder(colfn, src_shape, tgt_shape)
    total_src = 1
    for s in src_shape:
        total_src *= s
    total_tgt = 1
    for s in tgt_shape:
        total_tgt *= s
    return LinearMap(total_tgt, total_src, [tb.column(f) for f in range(total_src)])
