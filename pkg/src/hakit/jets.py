"""Jet-space truncations for finite-dimensional Lie algebras over Q.

The order-p truncation is the dual of U(g)_{<=p} on the PBW dual basis.
The product is dual to the (degree-preserving, deshuffle) coproduct of
U(g) and is graded; the coproduct is dual to multiplication, whose
straightening terms of degree <= p are captured exactly; the antipode is
evaluation against the translation map, which at base k reduces to
pullback along the antipode of U(g).

All identity checks are evaluated weakly, i.e. on PBW basis elements of
the envelope, which keeps every verification exact on the truncation;
checks whose instances would all exceed the degree budget raise
TruncationTooSmall.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .axioms import AxiomReport, IdentityResult
from .algebras import scalar_algebra
from .linalg import LinearMap, Vec, ONE, vec_iadd
from .lierinehart import (Envelope, LieRinehartData, Mono, TruncationTooSmall,
                          _coprod_power, _zero)
from .presentation import PresentationError, _parse_scalar

F = Fraction


class JetError(ValueError):
    pass


def lie_algebra_data(name: str, rank: int,
                     bracket: Dict[Tuple[int, int], Dict[int, Fraction]]) -> LieRinehartData:
    """A Lie algebra as a Lie-Rinehart pair over the ground field."""
    Q = scalar_algebra()
    anchors = tuple(LinearMap.zero(1, 1) for _ in range(rank))
    br = {}
    for (i, j), comps in bracket.items():
        vecs: List[Vec] = [dict() for _ in range(rank)]
        for k, c in comps.items():
            vecs[k] = {0: F(c)}
        br[(i, j)] = tuple(vecs)
    return LieRinehartData(name, Q, rank, anchors, br)


@dataclass
class JetTruncation:
    """Dual PBW basis of U(g)_{<=p} with the structure tables.

    Basis elements are exponent vectors alpha with |alpha| <= p; the
    pairing is <phi_alpha, X^beta> = [alpha == beta].
    """

    data: LieRinehartData
    order: int
    env: Envelope              # U(g) truncated at 2*order for exact tables

    def __post_init__(self):
        self.rank = self.data.rank
        self.monos: List[Tuple[int, ...]] = [
            alpha for deg in range(self.order + 1)
            for alpha in _exponents(self.rank, deg)]
        self.index = {a: i for i, a in enumerate(self.monos)}
        self.dim = len(self.monos)
        self._antipode: Optional[LinearMap] = None

    def degree(self, idx: int) -> int:
        return sum(self.monos[idx])

    # -- structure tables -------------------------------------------------------

    def product(self, i: int, j: int) -> Vec:
        """phi_i phi_j; graded, multiplicity from the deshuffle coproduct."""
        a, b = self.monos[i], self.monos[j]
        deg = sum(a) + sum(b)
        if deg > self.order:
            raise TruncationTooSmall(
                f"product degree {deg} exceeds truncation order {self.order}")
        total = tuple(x + y for x, y in zip(a, b))
        coeff = ONE
        for x, y in zip(a, b):
            coeff *= F(_binom(x + y, x))
        return {self.index[total]: coeff}

    def unit_vec(self) -> Vec:
        return {self.index[_zero(self.rank)]: ONE}

    def counit(self, v: Vec) -> Fraction:
        return v.get(self.index[_zero(self.rank)], F(0))

    def coproduct(self, i: int) -> Dict[Tuple[int, int], Fraction]:
        """Dual of U(g)-multiplication, exact on the truncated square."""
        gamma = self.monos[i]
        out: Dict[Tuple[int, int], Fraction] = {}
        zero = _zero(self.rank)
        for j, alpha in enumerate(self.monos):
            for k, beta in enumerate(self.monos):
                if sum(alpha) + sum(beta) > self.env.N:
                    continue
                prod = self.env.mul_basis((0, alpha), (0, beta))
                c = prod.get((0, gamma), F(0))
                if c:
                    out[(j, k)] = c
        return out

    def antipode(self) -> LinearMap:
        """phi -> phi . S_U, computed through the translation map."""
        if self._antipode is not None:
            return self._antipode
        cols: List[Vec] = []
        s_table: Dict[Tuple[int, ...], Elem] = {}
        for beta in self.monos:
            # S_U(X^beta) = eps-part of the translation map on the second leg
            tr = self.env.translation_pairs((0, beta))
            acc: Dict[Mono, Fraction] = {}
            for (m1, m2), c in tr.items():
                if sum(m1[1]) == 0:
                    w = acc.get(m2, F(0)) + c
                    if w:
                        acc[m2] = w
                    else:
                        acc.pop(m2, None)
            s_table[beta] = acc
        for gamma in self.monos:
            col: Vec = {}
            for beta in self.monos:
                c = s_table[beta].get((0, gamma), F(0))
                if c:
                    col[self.index[beta]] = c
            # column of phi_gamma: (S phi_gamma)(X^beta) = phi_gamma(S_U X^beta)
            cols.append({})
        cols = []
        for gamma in self.monos:
            col: Vec = {}
            for beta in self.monos:
                c = s_table[beta].get((0, gamma), F(0))
                if c:
                    col[self.index[beta]] = c
            cols.append(col)
        self._antipode = LinearMap(self.dim, self.dim, cols)
        return self._antipode

    # -- weak (evaluation) helpers ------------------------------------------------

    def eval_product(self, v: Vec, w: Vec, mono: Tuple[int, ...]) -> Fraction:
        """(v w)(X^mono) = sum v(X^mono_(1)) w(X^mono_(2)) via deshuffle."""
        out = F(0)
        for (m1, m2), c in self.env.delta_l_pairs((0, mono)).items():
            a1, a2 = m1[1], m2[1]
            if sum(a1) <= self.order and sum(a2) <= self.order:
                out += c * v.get(self.index.get(a1, -1), F(0)) \
                    * w.get(self.index.get(a2, -1), F(0))
        return out

    def eval(self, v: Vec, mono: Tuple[int, ...]) -> Fraction:
        if sum(mono) > self.order:
            raise TruncationTooSmall("evaluation beyond the truncation order")
        return v.get(self.index[mono], F(0))


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _exponents(rank: int, deg: int):
    if rank == 1:
        yield (deg,)
        return
    for first in range(deg, -1, -1):
        for rest in _exponents(rank - 1, deg - first):
            yield (first,) + rest


Elem = Dict[Mono, Fraction]


def jets_truncation(data: LieRinehartData, p: int) -> Tuple[JetTruncation, AxiomReport]:
    """Build the order-p jet truncation and verify its axioms degree-wise."""
    if data.base.dim != 1:
        raise JetError("jet truncations are implemented over the ground field")
    if p < 1:
        raise JetError("order must be >= 1")
    env = Envelope(data, max(2 * p, 2))
    jt = JetTruncation(data, p, env)
    report = AxiomReport()
    checked = skipped = 0

    # commutativity / associativity of the graded product
    ok, wit = True, None
    for i in range(jt.dim):
        for j in range(jt.dim):
            if jt.degree(i) + jt.degree(j) > p:
                skipped += 1
                continue
            checked += 1
            if jt.product(i, j) != jt.product(j, i):
                ok, wit = False, (i, j)
    report.results.append(IdentityResult("product commutative", ok, witness=wit))
    ok, wit = True, None
    for i in range(jt.dim):
        for j in range(jt.dim):
            for k in range(jt.dim):
                if jt.degree(i) + jt.degree(j) + jt.degree(k) > p:
                    continue
                lhs: Vec = {}
                for m, c in jt.product(i, j).items():
                    vec_iadd(lhs, jt.product(m, k), c)
                rhs: Vec = {}
                for m, c in jt.product(j, k).items():
                    vec_iadd(rhs, jt.product(i, m), c)
                if lhs != rhs:
                    ok, wit = False, (i, j, k)
    report.results.append(IdentityResult("product associative", ok, witness=wit))
    ok = all(jt.product(jt.index[_zero(jt.rank)], i) == {i: ONE} for i in range(jt.dim))
    report.results.append(IdentityResult("unit element", ok))

    # graded structure matches the truncated symmetric algebra
    ok, wit = True, None
    for i in range(jt.dim):
        for j in range(jt.dim):
            if jt.degree(i) + jt.degree(j) > p:
                continue
            prod = jt.product(i, j)
            if any(jt.degree(m) != jt.degree(i) + jt.degree(j) for m in prod):
                ok, wit = False, (i, j)
    report.results.append(IdentityResult("product graded (symmetric algebra)",
                                         ok, witness=wit))

    # coassociativity, weakly: phi((DE)F) = phi(D(EF)) on in-budget triples
    ok, wit = True, None
    count = 0
    for alpha, beta, gamma in itertools.product(jt.monos, repeat=3):
        if sum(alpha) + sum(beta) + sum(gamma) > p:
            continue
        count += 1
        de = env.mul_basis((0, alpha), (0, beta))
        lhs_elem: Elem = {}
        for m, c in de.items():
            for key, v in env.mul_basis(m, (0, gamma)).items():
                w = lhs_elem.get(key, F(0)) + c * v
                if w:
                    lhs_elem[key] = w
                else:
                    lhs_elem.pop(key, None)
        ef = env.mul_basis((0, beta), (0, gamma))
        rhs_elem: Elem = {}
        for m, c in ef.items():
            for key, v in env.mul_basis((0, alpha), m).items():
                w = rhs_elem.get(key, F(0)) + c * v
                if w:
                    rhs_elem[key] = w
                else:
                    rhs_elem.pop(key, None)
        if lhs_elem != rhs_elem:
            ok, wit = False, (alpha, beta, gamma)
    if count == 0:
        raise TruncationTooSmall("no in-budget triples for coassociativity")
    report.results.append(IdentityResult(
        "coproduct coassociative (weak, degree-wise)", ok, witness=wit))

    # counit
    S = jt.antipode()
    ok, wit = True, None
    for i, gamma in enumerate(jt.monos):
        cop = jt.coproduct(i)
        acc: Vec = {}
        for (j, k), c in cop.items():
            if jt.degree(j) == 0:
                vec_iadd(acc, {k: c})
        if acc != {i: ONE}:
            ok, wit = False, (gamma,)
    report.results.append(IdentityResult("counit axiom", ok, witness=wit))

    # S^2 = id and the antipode axioms, weakly on all basis elements
    s2 = S @ S == LinearMap.identity(jt.dim)
    report.results.append(IdentityResult("S^2 = id", s2))
    report.flags["S2_is_identity"] = s2
    okl = okr = True
    witl = witr = None
    for i, gamma in enumerate(jt.monos):
        phi: Vec = {i: ONE}
        sphi = S.apply(phi)
        for beta in jt.monos:
            # mu(S (x) id) Delta phi (X^beta) = phi(X^beta_(2) S(X^beta_(1)))-dual;
            # evaluated directly: sum phi_(1)(D_(1) ) ... easiest via U(g):
            # (S phi_(1) . phi_(2))(D) = phi(S(D_(1)) D_(2)) = eps(D) phi(1)
            lhs = F(0)
            for (m1, m2), c in env.delta_l_pairs((0, beta)).items():
                for m3, c3 in env.vec_to_elem(
                        {env.index[m1]: ONE}).items():
                    pass
                # S_U on the first leg through the jet antipode pairing:
                # phi'(X) = (S phi')(X) pairing is handled by sphi below
            acc1 = F(0)
            acc2 = F(0)
            for (m1, m2), c in env.delta_l_pairs((0, beta)).items():
                a1, a2 = m1[1], m2[1]
                if sum(a1) <= p and sum(a2) <= p:
                    acc1 += c * sphi.get(jt.index.get(a1, -1), F(0)) \
                        * _eval_pair(jt, phi, a2)
                    acc2 += c * _eval_pair(jt, phi, a1) \
                        * sphi.get(jt.index.get(a2, -1), F(0))
            expect = (ONE if sum(beta) == 0 else F(0)) * jt.counit(phi)
            if acc1 != expect and okl:
                okl, witl = False, (gamma, beta)
            if acc2 != expect and okr:
                okr, witr = False, (gamma, beta)
    report.results.append(IdentityResult(
        "antipode axiom mu(S (x) id) Delta = unit counit", okl, witness=witl))
    report.results.append(IdentityResult(
        "antipode axiom mu(id (x) S) Delta = unit counit", okr, witness=witr))

    # module-compatibility of the two actions with the coproduct
    _por_identities(report, jt)
    return jt, report


def _eval_pair(jt: JetTruncation, v: Vec, alpha: Tuple[int, ...]) -> Fraction:
    idx = jt.index.get(alpha)
    if idx is None:
        return F(0)
    return v.get(idx, F(0))


def _act1(jt: JetTruncation, mono_d: Mono, i: int) -> Vec:
    """(D ._1 phi)(E) = phi(E D)."""
    env = jt.env
    out: Vec = {}
    gamma = jt.monos[i]
    for beta in jt.monos:
        prod = env.mul_basis((0, beta), mono_d)
        c = prod.get((0, gamma), F(0))
        if c:
            out[jt.index[beta]] = c
    return out


def _act2(jt: JetTruncation, mono_d: Mono, i: int) -> Vec:
    """(D ._2 phi)(E) = phi(S_U(D) E)."""
    env = jt.env
    out: Vec = {}
    gamma = jt.monos[i]
    tr = env.translation_pairs(mono_d)
    sd: Elem = {}
    for (m1, m2), c in tr.items():
        if sum(m1[1]) == 0:
            w = sd.get(m2, F(0)) + c
            if w:
                sd[m2] = w
            else:
                sd.pop(m2, None)
    for beta in jt.monos:
        acc = F(0)
        for m, c in sd.items():
            if sum(m[1]) + sum(beta) <= env.N:
                acc += c * env.mul_basis(m, (0, beta)).get((0, gamma), F(0))
        if acc:
            out[jt.index[beta]] = acc
    return out


def _por_identities(report: AxiomReport, jt: JetTruncation):
    """Delta(D._1 phi) = phi_(1) (x) D._1 phi_(2) and
    Delta(D._2 phi) = D._2 phi_(1) (x) phi_(2), evaluated weakly."""
    env = jt.env
    p = jt.order
    ok1 = ok2 = True
    wit1 = wit2 = None
    gens = [tuple(1 if q == k else 0 for q in range(jt.rank))
            for k in range(jt.rank)]
    for gd in gens:
        d mono = None
    for gd in gens:
        mono_d = (0, gd)
        for i in range(jt.dim):
            a1 = _act1(jt, mono_d, i)
            a2 = _act2(jt, mono_d, i)
            for alpha, beta in itertools.product(jt.monos, repeat=2):
                if sum(alpha) + sum(beta) + 1 > env.N:
                    continue
                # evaluate Delta(psi)(X^alpha (x) X^beta) = psi(X^alpha X^beta)
                prod = env.mul_basis((0, alpha), (0, beta))
                lhs1 = sum((c * a1.get(jt.index.get(m[1], -1), F(0))
                            for m, c in prod.items() if sum(m[1]) <= p), F(0))
                # phi_(1) (x) D._1 phi_(2) at (X^alpha, X^beta) = phi(X^alpha (X^beta D))
                bd = env.mul_basis((0, beta), mono_d)
                rhs1 = F(0)
                for m, c in bd.items():
                    prod2 = env.mul_basis((0, alpha), m)
                    rhs1 += c * prod2.get((0, jt.monos[i]), F(0))
                if lhs1 != rhs1 and ok1:
                    ok1, wit1 = False, (gd, jt.monos[i], alpha, beta)
                lhs2 = sum((c * a2.get(jt.index.get(m[1], -1), F(0))
                            for m, c in prod.items() if sum(m[1]) <= p), F(0))
                # D._2 phi_(1) (x) phi_(2) at (X^alpha, X^beta) = phi((S(D) X^alpha) X^beta)
                sd_a = env.mul_elem(
                    {m: c for m, c in _sd_elem(env, mono_d).items()},
                    {(0, alpha): ONE})
                rhs2 = F(0)
                for m, c in sd_a.items():
                    prod2 = env.mul_basis(m, (0, beta))
                    rhs2 += c * prod2.get((0, jt.monos[i]), F(0))
                if lhs2 != rhs2 and ok2:
                    ok2, wit2 = False, (gd, jt.monos[i], alpha, beta)
    report.results.append(IdentityResult(
        "Delta(D._1 phi) = phi_(1) (x) D._1 phi_(2)", ok1, witness=wit1))
    report.results.append(IdentityResult(
        "Delta(D._2 phi) = D._2 phi_(1) (x) phi_(2)", ok2, witness=wit2))


def _sd_elem(env: Envelope, mono_d: Mono) -> Elem:
    out: Elem = {}
    for (m1, m2), c in env.translation_pairs(mono_d).items():
        if sum(m1[1]) == 0:
            w = out.get(m2, F(0)) + c
            if w:
                out[m2] = w
            else:
                out.pop(m2, None)
    return out


# -- the mixed-complex comparison map ------------------------------------------------


def chevalley_eilenberg_d(data: LieRinehartData, n: int) -> LinearMap:
    """d : Lambda^n g* -> Lambda^{n+1} g* for the trivial module."""
    r = data.rank
    src = list(itertools.combinations(range(r), n))
    tgt = list(itertools.combinations(range(r), n + 1))
    pos = {c: i for i, c in enumerate(src)}
    cols: List[Vec] = [dict() for _ in range(len(src))]
    for t_i, combo in enumerate(tgt):
        for i_pos in range(n + 1):
            for j_pos in range(i_pos + 1, n + 1):
                xi, xj = combo[i_pos], combo[j_pos]
                rest = tuple(x for q, x in enumerate(combo) if q not in (i_pos, j_pos))
                sign = -ONE if (i_pos + j_pos) % 2 else ONE
                for k, fvec in enumerate(data.bracket_of(xi, xj)):
                    coeff = fvec.get(0, F(0))
                    if not coeff or k in rest:
                        continue
                    merged = tuple(sorted((k,) + rest))
                    from .lierinehart import _sort_sign
                    psign = _sort_sign((k,) + rest)
                    j_src = pos[merged]
                    col = cols[j_src]
                    w = col.get(t_i, F(0)) + sign * psign * coeff
                    if w:
                        col[t_i] = w
                    else:
                        col.pop(t_i, None)
    return LinearMap(len(tgt), len(src), cols)


def jets_F_map_check(data: LieRinehartData, p: int, n_max: int) -> AxiomReport:
    """F (phi^1 (x) ... (x) phi^n) = (-1)^n det[S(phi^i)(X_j)] intertwines
    (b, B) with (0, Chevalley-Eilenberg d), degree-wise."""
    if p < 2:
        raise TruncationTooSmall("order p >= 2 required")
    if n_max > 2:
        raise JetError("n_max <= 2 supported")
    jt, _ = jets_truncation(data, p)
    report = AxiomReport()
    S = jt.antipode()
    r = jt.rank
    gens = [tuple(1 if q == k else 0 for q in range(r)) for k in range(r)]

    def F_n(n: int, slots: List[Vec]) -> Vec:
        """Value in Lambda^n g* coordinates (basis = increasing n-subsets)."""
        out: Vec = {}
        for t_i, combo in enumerate(itertools.combinations(range(r), n)):
            acc = F(0)
            for perm in itertools.permutations(range(n)):
                sgn = _perm_sign(perm)
                term = ONE
                for q in range(n):
                    sv = S.apply(slots[q])
                    term *= sv.get(jt.index[gens[combo[perm[q]]]], F(0))
                acc += sgn * term
            if acc:
                out[t_i] = (-ONE if n % 2 else ONE) * acc
        return out

    # F . b = 0 in degrees <= 2 (checked on in-budget basis pairs)
    ok, wit = True, None
    checked = 0
    for i in range(jt.dim):
        # degree 1: b(phi) = eps phi - eps(S phi) in C_0; F_0 = id on k
        phi: Vec = {i: ONE}
        lhs = jt.counit(phi) - jt.counit(S.apply(phi))
        checked += 1
        if lhs != 0:
            ok, wit = False, (i,)
    for i in range(jt.dim):
        for j in range(jt.dim):
            if jt.degree(i) + jt.degree(j) > p:
                continue
            checked += 1
            phi: Vec = {i: ONE}
            psi: Vec = {j: ONE}
            # b(phi (x) psi) = eps(phi) psi - phi psi + eps(S psi... ) phi
            term0 = {k: jt.counit(phi) * c for k, c in psi.items()}
            term1 = jt.product(i, j)
            term2 = {k: jt.counit(S.apply(psi)) * c for k, c in phi.items()}
            b: Vec = dict(term0)
            vec_iadd(b, term1, -ONE)
            vec_iadd(b, term2)
            val = F_1 = F_n(1, [b])
            if val:
                ok, wit = False, (i, j)
    if checked == 0:
        raise TruncationTooSmall("no in-budget instances for F . b = 0")
    report.results.append(IdentityResult("F . b = 0 (degrees <= 2)", ok, witness=wit))

    # F . B = d . F for n <= 1
    d0 = chevalley_eilenberg_d(data, 0)
    d1 = chevalley_eilenberg_d(data, 1)
    ok0 = True
    # n = 0: C_0 = k, B(c) = (1 + t_1) s_0(c) = c (1 + S)(unit); F_1(B(c)) vs d0(F_0 c) = 0
    unit = jt.unit_vec()
    Bc: Vec = dict(unit)
    vec_iadd(Bc, S.apply(unit))
    if F_n(1, [Bc]):
        ok0 = False
    report.results.append(IdentityResult("F . B = d . F (degree 0)", ok0))
    ok1, wit1 = True, None
    for i in range(jt.dim):
        phi: Vec = {i: ONE}
        # B(phi) = (1 - lambda_2) t_2 s_1 N_1 phi with N_1 = 1 - t_1 = 1 - S
        nphi: Vec = dict(phi)
        vec_iadd(nphi, S.apply(phi), -ONE)
        pairs = _t2_of_pair(jt, nphi, unit)      # t_2 (nphi (x) 1)
        lam2 = [(_t2_of_pairs(jt, pairs), -ONE)]
        total: Dict[Tuple[int, int], Fraction] = dict(pairs)
        for extra, sgn in lam2:
            for key, c in extra.items():
                w = total.get(key, F(0)) - c
                if w:
                    total[key] = w
                else:
                    total.pop(key, None)
        lhs: Vec = {}
        for (a, b), c in total.items():
            vec_iadd(lhs, F_n(2, [{a: ONE}, {b: ONE}]), c)
        rhs = d1.apply(F_n(1, [phi]))
        if lhs != rhs and ok1:
            ok1, wit1 = False, (i,)
    report.results.append(IdentityResult("F . B = d . F (degree 1)", ok1, witness=wit1))
    return report


def _t2_of_pair(jt: JetTruncation, v: Vec, w: Vec) -> Dict[Tuple[int, int], Fraction]:
    out: Dict[Tuple[int, int], Fraction] = {}
    for i, c in v.items():
        for j, c2 in w.items():
            for key, c3 in _t2_basis(jt, i, j).items():
                val = out.get(key, F(0)) + c * c2 * c3
                if val:
                    out[key] = val
                else:
                    out.pop(key, None)
    return out


def _t2_of_pairs(jt: JetTruncation, pairs: Dict[Tuple[int, int], Fraction]
                 ) -> Dict[Tuple[int, int], Fraction]:
    out: Dict[Tuple[int, int], Fraction] = {}
    for (i, j), c in pairs.items():
        for key, c3 in _t2_basis(jt, i, j).items():
            val = out.get(key, F(0)) + c * c3
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def _t2_basis(jt: JetTruncation, i: int, j: int) -> Dict[Tuple[int, int], Fraction]:
    """t_2(phi_i (x) phi_j) = S^{-1}(phi_i_(2) phi_j) (x) phi_i_(1); S^{-1} = S."""
    S = jt.antipode()
    out: Dict[Tuple[int, int], Fraction] = {}
    for (a, b), c in jt.coproduct(i).items():
        if jt.degree(b) + jt.degree(j) > jt.order:
            raise TruncationTooSmall("cyclic operator leaves the truncation")
        prod = jt.product(b, j)
        for m, c2 in prod.items():
            sv = S.apply({m: ONE})
            for k, c3 in sv.items():
                key = (k, a)
                w = out.get(key, F(0)) + c * c2 * c3
                if w:
                    out[key] = w
                else:
                    out.pop(key, None)
    return out


def _perm_sign(perm) -> Fraction:
    sign = ONE
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


# -- file format -------------------------------------------------------------------


def jets_from_dict(data: dict) -> Tuple[LieRinehartData, int]:
    required = {"kind", "name", "rank", "bracket", "order"}
    unknown = set(data) - required
    if unknown:
        raise PresentationError("<jets>", f"unknown fields {sorted(unknown)}")
    missing = required - set(data)
    if missing:
        raise PresentationError("<jets>", f"missing fields {sorted(missing)}")
    if data["kind"] != "jets":
        raise PresentationError("kind", "expected 'jets'")
    rank = data["rank"]
    if not (isinstance(rank, int) and rank >= 1):
        raise PresentationError("rank", "must be a positive integer")
    bracket: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for pos, e in enumerate(data["bracket"]):
        if not (isinstance(e, list) and len(e) == 4):
            raise PresentationError(f"bracket[{pos}]", "expected [i, j, k, scalar]")
        i, j, k, c = e
        if not (0 <= i < j < rank and 0 <= k < rank):
            raise PresentationError(f"bracket[{pos}]", "index out of range")
        bracket.setdefault((i, j), {})[k] = _parse_scalar(c, f"bracket[{pos}]")
    order = data["order"]
    if not (isinstance(order, int) and 1 <= order <= 4):
        raise PresentationError("order", "must be an integer in 1..4")
    return lie_algebra_data(data["name"], rank, bracket), order


def jets_to_dict(data: LieRinehartData, order: int) -> dict:
    bracket = []
    for (i, j), vecs in sorted(data.bracket.items()):
        for k, fvec in enumerate(vecs):
            c = fvec.get(0, F(0))
            if c:
                bracket.append([i, j, k, str(c)])
    return {"kind": "jets", "name": data.name, "rank": data.rank,
            "bracket": bracket, "order": order}


def load_jets(path):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise PresentationError("<file>", f"not valid JSON: {exc}")
    return jets_from_dict(data)
