"""Exact sparse linear algebra over Q.

Scalars are `fractions.Fraction` throughout; nothing is ever rounded.
Vectors are dicts index -> Fraction with no stored zeros, matrices are
column-major tuples of such dicts.  Reduction is plain Gauss-Jordan to
reduced row echelon form with smallest-index pivots, so every derived
basis (kernels, coset bases, homology representatives) is canonical:
rerunning a computation, in any insertion order, gives identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Vec = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


class NotWellDefined(Exception):
    """A map does not descend to the requested quotient.

    `witness` is a relation vector (ambient coordinates) whose image has a
    nonzero class in the target quotient.  This is frequently a meaningful
    result rather than a bug, e.g. a cyclic operator failing on a
    presentation that violates the Takeuchi condition.
    """

    def __init__(self, witness: Vec, message: str = "map does not preserve relations"):
        super().__init__(message)
        self.witness = dict(witness)


class NotAComplex(Exception):
    def __init__(self, degree: int):
        super().__init__(f"composite of differentials at degree {degree} is nonzero")
        self.degree = degree


def vec_iadd(dst: Vec, src: Vec, c: Fraction = ONE) -> Vec:
    """dst += c*src in place, dropping cancellations."""
    if not c:
        return dst
    for k, v in src.items():
        w = dst.get(k, ZERO) + c * v
        if w:
            dst[k] = w
        else:
            dst.pop(k, None)
    return dst


def vec_scale(v: Vec, c: Fraction) -> Vec:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class LinearMap:
    """Sparse rows x cols matrix, stored column-major."""

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows: int, cols: int, columns: Sequence[Vec]):
        assert len(columns) == cols
        self.rows = rows
        self.cols = cols
        self.columns = tuple(columns)

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[Vec]) -> "LinearMap":
        cleaned = [{i: Fraction(c) for i, c in col.items() if c} for col in columns]
        return cls(rows, len(cleaned), cleaned)

    @classmethod
    def from_entries(cls, rows: int, cols: int,
                     entries: Iterable[Tuple[int, int, Fraction]]) -> "LinearMap":
        columns: List[Vec] = [dict() for _ in range(cols)]
        for r, c, val in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) outside {rows}x{cols}")
            if val:
                if r in columns[c]:
                    raise ValueError(f"duplicate entry at ({r},{c})")
                columns[c][r] = Fraction(val)
        return cls(rows, cols, columns)

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        return cls(n, n, [{i: ONE} for i in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "LinearMap":
        return cls(rows, cols, [dict() for _ in range(cols)])

    def column(self, j: int) -> Vec:
        return self.columns[j]

    def entries(self) -> Iterable[Tuple[int, int, Fraction]]:
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                yield i, j, v

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns)

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        cols = self.columns
        for j, c in v.items():
            vec_iadd(out, cols[j], c)
        return out

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        return LinearMap(self.rows, other.cols, [self.apply(c) for c in other.columns])

    def __add__(self, other: "LinearMap") -> "LinearMap":
        self._same_shape(other)
        cols = []
        for a, b in zip(self.columns, other.columns):
            col = dict(a)
            vec_iadd(col, b)
            cols.append(col)
        return LinearMap(self.rows, self.cols, cols)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + other.scale(-ONE)

    def __neg__(self) -> "LinearMap":
        return self.scale(-ONE)

    def scale(self, c: Fraction) -> "LinearMap":
        return LinearMap(self.rows, self.cols, [vec_scale(col, c) for col in self.columns])

    def transpose(self) -> "LinearMap":
        cols: List[Vec] = [dict() for _ in range(self.rows)]
        for i, j, v in self.entries():
            cols[i][j] = v
        return LinearMap(self.cols, self.rows, cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (self.rows, self.cols, self.columns) == (other.rows, other.cols, other.columns)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(tuple(sorted(c.items())) for c in self.columns)))

    def _same_shape(self, other: "LinearMap"):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __repr__(self):
        return f"LinearMap({self.rows}x{self.cols}, nnz={self.nnz()})"


class RrefBuilder:
    """Streaming reduced-row-echelon accumulator.

    Rows may be fed in any order; `finalize` back-substitutes so the result
    is the (unique) RREF of the accumulated row space.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: Dict[int, Vec] = {}  # pivot column -> row, leading coefficient 1

    def reduce(self, v: Vec) -> Vec:
        v = dict(v)
        while v:
            hit = -1
            for c in v:
                if c in self.rows and (hit < 0 or c < hit):
                    hit = c
            if hit < 0:
                break
            vec_iadd(v, self.rows[hit], -v[hit])
        return v

    def add(self, v: Vec) -> Optional[int]:
        """Insert a row; returns its pivot column, or None if dependent."""
        v = self.reduce(v)
        if not v:
            return None
        p = min(v)
        c = v[p]
        if c != ONE:
            v = {k: x / c for k, x in v.items()}
        self.rows[p] = v
        return p

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def copy(self) -> "RrefBuilder":
        b = RrefBuilder(self.ncols)
        b.rows = {p: dict(r) for p, r in self.rows.items()}
        return b

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> List[int]:
        return sorted(self.rows)

    def finalize(self) -> List[Vec]:
        """Fully reduced rows in pivot order."""
        piv = self.pivots()
        for p in reversed(piv):
            row = self.rows[p]
            for q in piv:
                if q >= p:
                    break
                other = self.rows[q]
                c = other.get(p)
                if c:
                    vec_iadd(other, row, -c)
        return [self.rows[p] for p in piv]


def rref(vectors: Iterable[Vec], ncols: int) -> Tuple[List[int], List[Vec]]:
    b = RrefBuilder(ncols)
    for v in vectors:
        b.add(v)
    rows = b.finalize()
    return b.pivots(), rows


def kernel_basis(f: LinearMap) -> List[Vec]:
    """Canonical basis of ker(f), one vector per pivot-free column."""
    b = RrefBuilder(f.cols)
    for i, row in _rows_of(f).items():
        b.add(row)
    b_rows = b.finalize()
    pivots = b.pivots()
    pivot_rows = dict(zip(pivots, b_rows))
    pivot_set = set(pivots)
    basis = []
    for j in range(f.cols):
        if j in pivot_set:
            continue
        v: Vec = {j: ONE}
        for p in pivots:
            c = pivot_rows[p].get(j)
            if c:
                v[p] = -c
        basis.append(v)
    return basis


def _rows_of(f: LinearMap) -> Dict[int, Vec]:
    rows: Dict[int, Vec] = {}
    for i, j, v in f.entries():
        rows.setdefault(i, {})[j] = v
    return rows


def rank(f: LinearMap) -> int:
    b = RrefBuilder(f.rows)
    for col in f.columns:
        b.add(col)
    return b.rank


@dataclass(frozen=True)
class QuotientSpace:
    """V/W presented by projection and section matrices.

    relation_basis is the RREF basis of W, coset_basis the pivot-free
    ambient indices; project . section = id and ker(project) = span(W).
    """

    ambient_dim: int
    relation_basis: Tuple[Vec, ...]
    coset_basis: Tuple[int, ...]
    project: LinearMap
    section: LinearMap

    @property
    def dim(self) -> int:
        return len(self.coset_basis)

    def project_vec(self, v: Vec) -> Vec:
        return self.project.apply(v)

    def lift_vec(self, v: Vec) -> Vec:
        return self.section.apply(v)

    def contains_in_relations(self, v: Vec) -> bool:
        return not self.project.apply(v)


def make_quotient(ambient_dim: int, relations: Iterable[Vec]) -> QuotientSpace:
    b = RrefBuilder(ambient_dim)
    for r in relations:
        for k in r:
            if not 0 <= k < ambient_dim:
                raise ValueError(f"relation index {k} outside ambient dimension {ambient_dim}")
        b.add(r)
    return quotient_from_builder(ambient_dim, b)


def quotient_from_builder(ambient_dim: int, b: RrefBuilder) -> QuotientSpace:
    rows = b.finalize()
    pivots = b.pivots()
    pivot_set = set(pivots)
    free = [j for j in range(ambient_dim) if j not in pivot_set]
    index_of = {j: i for i, j in enumerate(free)}
    dim = len(free)
    proj_cols: List[Vec] = [dict() for _ in range(ambient_dim)]
    for i, j in enumerate(free):
        proj_cols[j][i] = ONE
    for p, row in zip(pivots, rows):
        col = proj_cols[p]
        for j, c in row.items():
            if j != p:
                col[index_of[j]] = -c
    section_cols: List[Vec] = [{j: ONE} for j in free]
    return QuotientSpace(
        ambient_dim=ambient_dim,
        relation_basis=tuple(rows),
        coset_basis=tuple(free),
        project=LinearMap(dim, ambient_dim, proj_cols),
        section=LinearMap(ambient_dim, dim, section_cols),
    )


def full_space(ambient_dim: int) -> QuotientSpace:
    return make_quotient(ambient_dim, [])


def induce_on_quotients(f: LinearMap, src: QuotientSpace, tgt: QuotientSpace) -> LinearMap:
    """Descend f : ambient(src) -> ambient(tgt) to the quotients.

    Raises NotWellDefined with the offending relation vector when f does
    not map relations of src into relations of tgt.
    """
    if f.cols != src.ambient_dim or f.rows != tgt.ambient_dim:
        raise ValueError("map shape does not match ambient dimensions")
    for r in src.relation_basis:
        if tgt.project.apply(f.apply(r)):
            raise NotWellDefined(r)
    return tgt.project @ f @ src.section


def tensor_over_base(left_dim: int, right_dim: int,
                     right_action: Sequence[LinearMap],
                     left_action: Sequence[LinearMap]) -> QuotientSpace:
    """Quotient of the k-tensor product by v.a (x) w - v (x) a.w.

    right_action[a] is the action of the a-th base basis element on the
    left factor, left_action[a] the one on the right factor.  Index
    (i, j) -> i*right_dim + j.
    """
    if len(right_action) != len(left_action):
        raise ValueError("base actions have different lengths")
    for m in right_action:
        if (m.rows, m.cols) != (left_dim, left_dim):
            raise ValueError("right action shape mismatch")
    for m in left_action:
        if (m.rows, m.cols) != (right_dim, right_dim):
            raise ValueError("left action shape mismatch")
    b = RrefBuilder(left_dim * right_dim)
    for ra, la in zip(right_action, left_action):
        for i in range(left_dim):
            ri = ra.columns[i]
            for j in range(right_dim):
                rel: Vec = {}
                for k, c in ri.items():
                    rel[k * right_dim + j] = c
                for k, c in la.columns[j].items():
                    vec_iadd(rel, {i * right_dim + k: c}, -ONE)
                b.add(rel)
    return quotient_from_builder(left_dim * right_dim, b)


# ---------------------------------------------------------------------------
# complexes


@dataclass(frozen=True)
class ChainComplexData:
    """Graded spaces with differentials of fixed degree `step` (+1 or -1).

    maps[n] is the differential out of degree n, or None when the target
    degree falls outside the stored range.
    """

    dims: Tuple[int, ...]
    maps: Tuple[Optional[LinearMap], ...]
    step: int = -1

    def __post_init__(self):
        assert self.step in (1, -1)
        assert len(self.maps) == len(self.dims)
        for n, f in enumerate(self.maps):
            if f is None:
                continue
            m = n + self.step
            if not 0 <= m < len(self.dims):
                raise ValueError(f"map at degree {n} has no target degree")
            if f.cols != self.dims[n] or f.rows != self.dims[m]:
                raise ValueError(f"map at degree {n} has wrong shape")

    def check_composites(self):
        for n, f in enumerate(self.maps):
            if f is None:
                continue
            m = n + self.step
            g = self.maps[m] if 0 <= m < len(self.maps) else None
            if g is not None and not (g @ f).is_zero():
                raise NotAComplex(n)


@dataclass(frozen=True)
class HomologyDegree:
    degree: int
    dim: int
    representatives: Tuple[Vec, ...]


def homology_data(dim: int, out_map: Optional[LinearMap],
                  in_map: Optional[LinearMap]) -> Tuple[int, List[Vec], RrefBuilder]:
    """ker(out)/im(in) with canonical representative lifts.

    Returns (dimension, representatives, RREF builder of the boundary space
    im(in) alone) -- the builder can be reused to express classes.
    """
    if out_map is None:
        cycles: List[Vec] = [{i: ONE} for i in range(dim)]
    else:
        cycles = kernel_basis(out_map)
    boundaries = RrefBuilder(dim)
    if in_map is not None:
        for col in in_map.columns:
            boundaries.add(col)
    span = boundaries.copy()
    reps = []
    for v in cycles:
        if span.add(v) is not None:
            reps.append(v)
    return len(reps), reps, boundaries


def complex_homology(cx: ChainComplexData, check: bool = True) -> List[HomologyDegree]:
    """Homology in every stored degree; top/bottom ends use whatever maps exist."""
    if check:
        cx.check_composites()
    incoming: List[Optional[LinearMap]] = [None] * len(cx.dims)
    for n, f in enumerate(cx.maps):
        if f is not None:
            incoming[n + cx.step] = f
    out = []
    for n, d in enumerate(cx.dims):
        h, reps, _ = homology_data(d, cx.maps[n], incoming[n])
        out.append(HomologyDegree(n, h, tuple(reps)))
    return out


def solve_in_span(columns: Sequence[Vec], target: Vec) -> Optional[List[Fraction]]:
    """Coefficients expressing target in the given columns, or None."""
    b = RrefBuilder(0)  # ncols is advisory; indices here are arbitrary
    tags: List[Tuple[int, Vec]] = []  # pivot col -> elimination record
    combos: List[Vec] = []
    for idx, col in enumerate(columns):
        v = dict(col)
        combo: Vec = {idx: ONE}
        _reduce_with_combo(b, tags, v, combo)
        if v:
            p = min(v)
            c = v[p]
            if c != ONE:
                v = {k: x / c for k, x in v.items()}
                combo = {k: x / c for k, x in combo.items()}
            b.rows[p] = v
            tags.append((p, combo))
    t = dict(target)
    combo = {}
    _reduce_with_combo(b, tags, t, combo)
    if t:
        return None
    coeffs = [ZERO] * len(columns)
    for k, c in combo.items():
        coeffs[k] = -c
    return coeffs


def _reduce_with_combo(b: RrefBuilder, tags: List[Tuple[int, Vec]], v: Vec, combo: Vec):
    lookup = {p: combo_row for p, combo_row in tags}
    while v:
        hit = -1
        for c in v:
            if c in b.rows and (hit < 0 or c < hit):
                hit = c
        if hit < 0:
            break
        coef = v[hit]
        vec_iadd(v, b.rows[hit], -coef)
        vec_iadd(combo, lookup[hit], -coef)


# ---------------------------------------------------------------------------
# mixed complexes and cyclic homology of the total complex


@dataclass(frozen=True)
class MixedComplex:
    """(b, B) bicomplex data; step is the degree of b (+1 cochain, -1 chain).

    b[n] and B[n] act out of degree n; entries whose target is outside the
    stored range are None.
    """

    dims: Tuple[int, ...]
    b: Tuple[Optional[LinearMap], ...]
    B: Tuple[Optional[LinearMap], ...]
    step: int

    def verify(self) -> List[str]:
        """Names of the failing structure identities (empty when valid).

        A map whose target degree falls outside the stored grading is a
        genuine zero; a stored None inside the grading means "not built"
        (truncation) and any identity needing it is skipped.
        """
        bad = []
        N = len(self.dims) - 1
        ZERO_MARK = "zero"

        def get(maps, n, delta):
            if not 0 <= n <= N or not 0 <= n + delta <= N:
                return ZERO_MARK
            return maps[n]

        def compose(g, f, rows, cols):
            # g . f with out-of-grading maps treated as zero; None -> unknown
            if f is None or g is None:
                return None
            if f is ZERO_MARK or g is ZERO_MARK:
                return LinearMap.zero(rows, cols)
            return g @ f

        for n in range(N + 1):
            dn = self.dims[n]
            f = get(self.b, n, self.step)
            g = get(self.b, n + self.step, self.step)
            c = compose(g, f, self.dims[min(max(n + 2 * self.step, 0), N)], dn)
            if c is not None and not c.is_zero():
                bad.append(f"b.b at degree {n}")
            f = get(self.B, n, -self.step)
            g = get(self.B, n - self.step, -self.step)
            c = compose(g, f, self.dims[min(max(n - 2 * self.step, 0), N)], dn)
            if c is not None and not c.is_zero():
                bad.append(f"B.B at degree {n}")
            m = n - self.step  # target degree of B[n]
            t1 = compose(get(self.b, m, self.step), get(self.B, n, -self.step),
                         dn, dn)
            t2 = compose(get(self.B, n + self.step, -self.step),
                         get(self.b, n, self.step), dn, dn)
            if t1 is not None and t2 is not None:
                if not (t1 + t2).is_zero():
                    bad.append(f"bB+Bb at degree {n}")
        return bad


def total_components(n: int) -> List[int]:
    """Degrees appearing in Tot_n (resp. Tot^n): n, n-2, n-4, ..."""
    return list(range(n, -1, -2))


def total_dim(mc: MixedComplex, n: int) -> int:
    return sum(mc.dims[m] for m in total_components(n))


def total_map(mc: MixedComplex, n: int) -> LinearMap:
    """D = b + B : Tot_n -> Tot_{n - step_total} with step_total opposite to b's grading.

    For a chain mixed complex (step -1) this is Tot_n -> Tot_{n-1}; for a
    cochain one, Tot^n -> Tot^{n+1}.
    """
    src = total_components(n)
    tgt = total_components(n + (1 if mc.step == 1 else -1))
    src_off = _offsets(mc, src)
    tgt_off = _offsets(mc, tgt)
    tgt_pos = {m: k for k, m in enumerate(tgt)}
    cols: List[Vec] = [dict() for _ in range(sum(mc.dims[m] for m in src))]
    for k, m in enumerate(src):
        for (maps, delta) in ((mc.b, mc.step), (mc.B, -mc.step)):
            f = maps[m]
            if f is None or (m + delta) not in tgt_pos:
                continue
            off_t = tgt_off[tgt_pos[m + delta]]
            off_s = src_off[k]
            for j in range(mc.dims[m]):
                col = cols[off_s + j]
                for i, v in f.columns[j].items():
                    w = col.get(off_t + i, ZERO) + v
                    if w:
                        col[off_t + i] = w
                    else:
                        col.pop(off_t + i, None)
    rows = sum(mc.dims[m] for m in tgt)
    return LinearMap(rows, len(cols), cols)


def _offsets(mc: MixedComplex, degs: List[int]) -> List[int]:
    offs = []
    acc = 0
    for m in degs:
        offs.append(acc)
        acc += mc.dims[m]
    return offs


@dataclass(frozen=True)
class CyclicTable:
    """Cyclic homology of a mixed complex up to degree n_max.

    s_iso[n] records whether the periodicity map HC_n -> HC_{n-2} (or
    HC^n -> HC^{n+2} read backwards) is an isomorphism.
    """

    hh: Tuple[int, ...]
    hc: Tuple[int, ...]
    s_iso: Tuple[Optional[bool], ...]
    hp_stable: bool
    hp_stable_from: Optional[int]
    hp_even: Optional[int]
    hp_odd: Optional[int]


def cyclic_homology_table(mc: MixedComplex, n_max: int) -> CyclicTable:
    """HH/HC dims for degrees <= n_max; requires spaces up to n_max + 1.

    The S map drops the top total-complex component; HP is declared
    stabilized once S is an isomorphism in two consecutive degrees.
    """
    if len(mc.dims) < n_max + 2:
        raise ValueError("mixed complex too short: need degrees up to n_max + 1")
    hh = []
    for n in range(n_max + 1):
        m = n - mc.step
        inc = mc.b[m] if 0 <= m < len(mc.dims) else None
        h, _, _ = homology_data(mc.dims[n], mc.b[n], inc)
        hh.append(h)

    # homology of the total complex, with representatives for the S map
    top = n_max + 1 if mc.step == -1 else n_max
    tot_maps = {n: total_map(mc, n) for n in range(top + 1)}
    hom: Dict[int, Tuple[int, List[Vec], RrefBuilder]] = {}
    for n in range(n_max + 1):
        if mc.step == -1:
            out = tot_maps[n] if n > 0 else None
            inc = tot_maps[n + 1]
        else:
            out = tot_maps[n]
            inc = tot_maps[n - 1] if n > 0 else None
        hom[n] = homology_data(total_dim(mc, n), out, inc)

    s_iso: List[Optional[bool]] = [None] * (n_max + 1)
    for n in range(2, n_max + 1):
        if mc.step == -1:
            # S : HC_n -> HC_{n-2} drops the top component of Tot_n
            dim_src, reps_src, _ = hom[n]
            dim_tgt, _, img_tgt = hom[n - 2]
            images = [{i - mc.dims[n]: c for i, c in rep.items() if i >= mc.dims[n]}
                      for rep in reps_src]
        else:
            # S : HC^{n-2} -> HC^n is induced by the inclusion of totals
            dim_src, reps_src, _ = hom[n - 2]
            dim_tgt, _, img_tgt = hom[n]
            images = [{i + mc.dims[n]: c for i, c in rep.items()} for rep in reps_src]
        if dim_src != dim_tgt:
            s_iso[n] = False
            continue
        span = img_tgt.copy()
        base_rank = span.rank
        ok = True
        for v in images:
            if span.add(v) is None:
                ok = False
                break
        s_iso[n] = ok and span.rank - base_rank == dim_src
    stable_from = None
    for n in range(n_max, 2, -1):
        if s_iso[n] and s_iso[n - 1]:
            stable_from = n - 1
            break
    stable = stable_from is not None
    hc = [hom[n][0] for n in range(n_max + 1)]
    hp_even = hp_odd = None
    if stable:
        top_even = n_max if n_max % 2 == 0 else n_max - 1
        top_odd = n_max if n_max % 2 == 1 else n_max - 1
        hp_even, hp_odd = hc[top_even], hc[top_odd]
    return CyclicTable(tuple(hh), tuple(hc), tuple(s_iso), stable, stable_from,
                       hp_even, hp_odd)
