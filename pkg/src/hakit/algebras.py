"""Standard algebra presentations and directly constructed Hopf algebroids.

The enveloping construction equips H = A (x) A^op with source a (x) 1,
target 1 (x) b, the diagonal-style coproduct representative
(a (x) 1) (x) (1 (x) b) for both sides, counits ab resp. ba, and the flip
antipode.  The right coproduct representative is the one forced by the
axioms (the flip-conjugate of the left one); it passes every identity in
the checker.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List

from .linalg import LinearMap, ONE, Vec, vec_iadd
from .presentation import AlgebraPresentation, HopfAlgebroidPresentation, _dump_algebra

F = Fraction


def algebra_from_table(dim: int, table, unit) -> AlgebraPresentation:
    """table[(i,j)] = dict k -> coeff; unit = dense list."""
    cols: List[Vec] = []
    for i in range(dim):
        for j in range(dim):
            cols.append({k: F(c) for k, c in table.get((i, j), {}).items() if F(c)})
    alg = AlgebraPresentation(dim, LinearMap(dim, dim * dim, cols),
                              tuple(F(c) for c in unit))
    bad = alg.check_structure()
    if bad:
        raise ValueError(bad)
    return alg


def scalar_algebra() -> AlgebraPresentation:
    return algebra_from_table(1, {(0, 0): {0: 1}}, [1])


def split_pair() -> AlgebraPresentation:
    """Q x Q with idempotent basis."""
    return algebra_from_table(2, {(0, 0): {0: 1}, (1, 1): {1: 1}}, [1, 1])


def dual_numbers() -> AlgebraPresentation:
    """Q[x]/(x^2), basis {1, x}."""
    return algebra_from_table(
        2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {}}, [1, 0])


def truncated_polynomials(p: int) -> AlgebraPresentation:
    """Q[t]/(t^p), basis {1, t, ..., t^{p-1}}."""
    table = {(i, j): ({i + j: 1} if i + j < p else {})
             for i in range(p) for j in range(p)}
    return algebra_from_table(p, table, [1] + [0] * (p - 1))


def matrix_algebra(n: int) -> AlgebraPresentation:
    """M_n(Q) on the basis e_{ij}, flat index i*n + j."""
    table = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    if j == k:
                        table[(i * n + j, k * n + l)] = {i * n + l: 1}
    unit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return algebra_from_table(n * n, table, unit)


def enveloping(A: AlgebraPresentation) -> HopfAlgebroidPresentation:
    """The Hopf algebroid A (x) A^op over A_l = A, A_r = A^op."""
    bad = A.check_structure()
    if bad:
        raise ValueError(f"base algebra is not unital associative: {bad}")
    d = A.dim
    dim = d * d

    def idx(i, j):
        return i * d + j

    # (a (x) b)(a' (x) b') = aa' (x) b'b
    mul_cols: List[Vec] = []
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    col: Vec = {}
                    for k1, c1 in A.multiply_basis(i, k).items():
                        for k2, c2 in A.multiply_basis(l, j).items():
                            vec_iadd(col, {idx(k1, k2): ONE}, c1 * c2)
                    mul_cols.append(col)
    # column order above is (i,j) outer, (k,l) inner = flat H x H index
    unit_vec: Vec = {}
    u = A.unit_vec()
    for i, ci in u.items():
        for j, cj in u.items():
            unit_vec[idx(i, j)] = ci * cj
    H = AlgebraPresentation(
        dim, LinearMap(dim, dim * dim, mul_cols),
        tuple(unit_vec.get(i, F(0)) for i in range(dim)))

    s_l = LinearMap(dim, d, [{idx(i, uu): cu for uu, cu in u.items()} for i in range(d)])
    t_l = LinearMap(dim, d, [{idx(uu, j): cu for uu, cu in u.items()} for j in range(d)])
    # delta rep (a_i (x) 1) (x) (1 (x) a_j) for both coproducts
    delta_cols: List[Vec] = []
    for i in range(d):
        for j in range(d):
            col: Vec = {}
            for uu, cu in u.items():
                for vv, cv in u.items():
                    vec_iadd(col, {idx(i, uu) * dim + idx(vv, j): ONE}, cu * cv)
            delta_cols.append(col)
    delta = LinearMap(dim * dim, dim, delta_cols)
    eps_l = LinearMap(d, dim, [A.multiply_basis(i, j) for i in range(d) for j in range(d)])
    eps_r = LinearMap(d, dim, [A.multiply_basis(j, i) for i in range(d) for j in range(d)])
    flip = LinearMap.from_entries(dim, dim,
                                  [(idx(j, i), idx(i, j), ONE) for i in range(d) for j in range(d)])
    return HopfAlgebroidPresentation(
        name=f"enveloping-dim{d}",
        A_l=A, A_r=A.opposite(), H=H,
        s_l=s_l, t_l=t_l, s_r=t_l, t_r=s_l,
        delta_l=delta, delta_r=delta,
        eps_l=eps_l, eps_r=eps_r,
        S=flip, S_inv=flip,
        meta={"kind": "enveloping", "base": _dump_algebra(A)},
    )


def sweedler_hopf_algebroid() -> HopfAlgebroidPresentation:
    """Sweedler's 4-dimensional Hopf algebra as a Hopf algebroid over Q.

    Basis {1, g, x, gx} with g^2 = 1, x^2 = 0, xg = -gx.  The antipode
    S(x) = -gx satisfies S^2(x) = -x, so this is the standard minimal
    example with a genuinely para-cocyclic structure.
    """
    table = {
        (0, 0): {0: 1}, (0, 1): {1: 1}, (0, 2): {2: 1}, (0, 3): {3: 1},
        (1, 0): {1: 1}, (1, 1): {0: 1}, (1, 2): {3: 1}, (1, 3): {2: 1},
        (2, 0): {2: 1}, (2, 1): {3: -1}, (2, 2): {}, (2, 3): {},
        (3, 0): {3: 1}, (3, 1): {2: -1}, (3, 2): {}, (3, 3): {},
    }
    H = algebra_from_table(4, table, [1, 0, 0, 0])
    k = scalar_algebra()
    unit_col = LinearMap.from_entries(4, 1, [(0, 0, ONE)])
    eps = LinearMap.from_entries(1, 4, [(0, 0, ONE), (0, 1, ONE)])
    delta = LinearMap.from_entries(16, 4, [
        (0 * 4 + 0, 0, ONE),               # 1 -> 1 (x) 1
        (1 * 4 + 1, 1, ONE),               # g -> g (x) g
        (2 * 4 + 0, 2, ONE), (1 * 4 + 2, 2, ONE),   # x -> x (x) 1 + g (x) x
        (3 * 4 + 1, 3, ONE), (0 * 4 + 3, 3, ONE),   # gx -> gx (x) g + 1 (x) gx
    ])
    S = LinearMap.from_entries(4, 4, [(0, 0, ONE), (1, 1, ONE),
                                      (3, 2, -ONE), (2, 3, ONE)])
    S_inv = LinearMap.from_entries(4, 4, [(0, 0, ONE), (1, 1, ONE),
                                          (3, 2, ONE), (2, 3, -ONE)])
    return HopfAlgebroidPresentation(
        name="sweedler-h4",
        A_l=k, A_r=k, H=H,
        s_l=unit_col, t_l=unit_col, s_r=unit_col, t_r=unit_col,
        delta_l=delta, delta_r=delta,
        eps_l=eps, eps_r=eps,
        S=S, S_inv=S_inv,
        meta={"kind": "sweedler"},
    )
