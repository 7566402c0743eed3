"""Axiom and identity verification for Hopf algebroid presentations.

Every check compares two explicitly assembled matrices, either on the
nose or after projecting to the appropriate glued tensor quotient, and a
failure records the first basis tuple (lexicographic) where the two
sides differ together with both evaluated columns, so each reported
failure can be replayed independently.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import LinearMap, QuotientSpace, Vec, ONE
from .presentation import (AlgebraPresentation, HopfAlgebroidPresentation,
                           MissingInverse)
from .spaces import Ops, TupleVec, flatten_tuplevec, glued_space, unflatten
from .util import strides_of


@dataclass
class IdentityResult:
    name: str
    ok: bool
    witness: Optional[tuple] = None
    lhs: Optional[Vec] = None
    rhs: Optional[Vec] = None
    detail: str = ""

    def __str__(self):
        if self.ok:
            return f"[pass] {self.name}"
        return f"[FAIL] {self.name} at basis {self.witness}"


@dataclass
class AxiomReport:
    results: List[IdentityResult] = field(default_factory=list)
    flags: Dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> List[IdentityResult]:
        return [r for r in self.results if not r.ok]

    def by_name(self, name: str) -> IdentityResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def extend(self, other: "AxiomReport"):
        self.results.extend(other.results)
        self.flags.update(other.flags)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "flags": dict(self.flags),
            "identities": [
                {"name": r.name, "ok": r.ok,
                 **({"witness": list(r.witness),
                     "lhs": {str(k): str(v) for k, v in (r.lhs or {}).items()},
                     "rhs": {str(k): str(v) for k, v in (r.rhs or {}).items()}}
                    if not r.ok else {}),
                 **({"detail": r.detail} if r.detail else {})}
                for r in self.results],
        }

    def render(self) -> str:
        lines = [str(r) for r in self.results]
        for k, v in sorted(self.flags.items()):
            lines.append(f"flag {k}: {v}")
        lines.append(f"{'ALL PASS' if self.passed else 'FAILURES: ' + str(len(self.failures()))}"
                     f" ({len(self.results)} identities)")
        return "\n".join(lines)


@dataclass(frozen=True)
class AntiIsoPair:
    phi: LinearMap
    theta: LinearMap
    phi_inv: LinearMap
    theta_inv: LinearMap


class AxiomChecker:
    """Assembles both sides of each identity for one presentation."""

    def __init__(self, p: HopfAlgebroidPresentation):
        self.p = p
        self.ops = Ops(p)
        self._spaces: Dict[Tuple[str, ...], QuotientSpace] = {}

    def space(self, *jtypes: str) -> QuotientSpace:
        got = self._spaces.get(jtypes)
        if got is None:
            got = glued_space(self.ops, jtypes)
            self._spaces[jtypes] = got
        return got

    # -- small builders ------------------------------------------------------

    def _compare(self, report, name, shape, lhs_cols, rhs_cols, detail=""):
        for idx, (a, b) in enumerate(zip(lhs_cols, rhs_cols)):
            if a != b:
                report.results.append(IdentityResult(
                    name, False, witness=unflatten(idx, shape), lhs=a, rhs=b,
                    detail=detail))
                return
        report.results.append(IdentityResult(name, True, detail=detail))

    def _cmp_maps(self, report, name, shape, lhs: LinearMap, rhs: LinearMap, detail=""):
        self._compare(report, name, shape, lhs.columns, rhs.columns, detail)

    def _proj2(self, jtype: str, tv: TupleVec) -> Vec:
        sp = self.space(jtype)
        return sp.project.apply(flatten_tuplevec(tv, (self.ops.dim, 1)))

    def _proj3(self, j1: str, j2: str, tv: TupleVec) -> Vec:
        d = self.ops.dim
        sp = self.space(j1, j2)
        return sp.project.apply(flatten_tuplevec(tv, (d * d, d, 1)))

    def delta_tv(self, side: str, i: int) -> TupleVec:
        cols = self.ops.delta_l_cols if side == "l" else self.ops.delta_r_cols
        return {(a, b): c for a, b, c in cols[i]}

    def delta_vec_tv(self, side: str, v: Vec) -> TupleVec:
        out: TupleVec = {}
        for i, c in v.items():
            for tup, cc in self.delta_tv(side, i).items():
                w = out.get(tup, Fraction(0)) + c * cc
                if w:
                    out[tup] = w
                else:
                    out.pop(tup, None)
        return out


def _algebra_result(name: str, alg: AlgebraPresentation) -> IdentityResult:
    bad = alg.check_structure()
    if bad:
        return IdentityResult(name, False, witness=(), detail=bad)
    return IdentityResult(name, True)


def _hom_checks(report, ck: AxiomChecker, label: str, m: LinearMap,
                base: AlgebraPresentation, anti: bool):
    """m : base -> H is a homomorphism (anti=False) or antihomomorphism."""
    ops = ck.ops
    da = base.dim
    lhs_cols = []
    rhs_cols = []
    for i in range(da):
        for j in range(da):
            lhs_cols.append(m.apply(base.multiply_basis(i, j)))
            if anti:
                rhs_cols.append(ops.mulvec(m.columns[j], m.columns[i]))
            else:
                rhs_cols.append(ops.mulvec(m.columns[i], m.columns[j]))
    kind = "antihom" if anti else "hom"
    ck._compare(report, f"{label} {kind}", (da, da), lhs_cols, rhs_cols)
    unit_img = m.apply(base.unit_vec())
    report.results.append(IdentityResult(
        f"{label} unital", unit_img == ops.unitH,
        witness=None if unit_img == ops.unitH else (),
        lhs=unit_img, rhs=ops.unitH))


def check_left_bialgebroid(p: HopfAlgebroidPresentation) -> AxiomReport:
    ck = AxiomChecker(p)
    return _left_bialgebroid(ck)


def _left_bialgebroid(ck: AxiomChecker) -> AxiomReport:
    p, ops = ck.p, ck.ops
    d, da = ops.dim, ops.dim_al
    report = AxiomReport()
    report.results.append(_algebra_result("algebra A_l", p.A_l))
    report.results.append(_algebra_result("algebra H", p.H))
    _hom_checks(report, ck, "s_l", p.s_l, p.A_l, anti=False)
    _hom_checks(report, ck, "t_l", p.t_l, p.A_l, anti=True)
    # commuting images
    lhs, rhs = [], []
    for a in range(da):
        for b in range(da):
            lhs.append(ops.mulvec(p.s_l.columns[a], p.t_l.columns[b]))
            rhs.append(ops.mulvec(p.t_l.columns[b], p.s_l.columns[a]))
    ck._compare(report, "s_l,t_l images commute", (da, da), lhs, rhs)

    # counit axioms of the A_l-coring
    lhs, rhs = [], []
    for i in range(d):
        acc: Vec = {}
        for (a, b, c) in ops.delta_l_cols[i]:
            v = ops.mulvec(p.s_l.apply(p.eps_l.columns[a]), {b: ONE})
            for k, vv in v.items():
                acc[k] = acc.get(k, Fraction(0)) + c * vv
        lhs.append({k: v for k, v in acc.items() if v})
        rhs.append({i: ONE})
    ck._compare(report, "DeltaL counit (s side)", (d,), lhs, rhs)
    lhs = []
    for i in range(d):
        acc = {}
        for (a, b, c) in ops.delta_l_cols[i]:
            v = ops.mulvec(p.t_l.apply(p.eps_l.columns[b]), {a: ONE})
            for k, vv in v.items():
                acc[k] = acc.get(k, Fraction(0)) + c * vv
        lhs.append({k: v for k, v in acc.items() if v})
    ck._compare(report, "DeltaL counit (t side)", (d,), lhs, rhs)

    # coassociativity modulo the two-junction quotient
    lhs, rhs = [], []
    for i in range(d):
        tv1: TupleVec = {}
        tv2: TupleVec = {}
        for (a, b, c) in ops.delta_l_cols[i]:
            for (x, y, cc) in ops.delta_l_cols[a]:
                tv1[(x, y, b)] = tv1.get((x, y, b), Fraction(0)) + c * cc
            for (x, y, cc) in ops.delta_l_cols[b]:
                tv2[(a, x, y)] = tv2.get((a, x, y), Fraction(0)) + c * cc
        sp = ck.space("ll", "ll")
        st = strides_of((d, d, d))
        lhs.append(sp.project.apply(flatten_tuplevec(tv1, st)))
        rhs.append(sp.project.apply(flatten_tuplevec(tv2, st)))
    ck._compare(report, "DeltaL coassociative", (d,), lhs, rhs)

    # bimodule linearity of Delta_l
    sp2 = ck.space("ll")
    st2 = strides_of((d, d))
    lhs, rhs = [], []
    for a in range(da):
        sa = p.s_l.columns[a]
        for i in range(d):
            lhs.append(sp2.project.apply(flatten_tuplevec(
                ck.delta_vec_tv("l", ops.mulvec(sa, {i: ONE})), st2)))
            tv = {}
            for (x, y, c) in ops.delta_l_cols[i]:
                for k, v in ops.mulvec(sa, {x: ONE}).items():
                    tv[(k, y)] = tv.get((k, y), Fraction(0)) + c * v
            rhs.append(sp2.project.apply(flatten_tuplevec(tv, st2)))
    ck._compare(report, "DeltaL left A_l-linear", (da, d), lhs, rhs)
    lhs, rhs = [], []
    for a in range(da):
        ta = p.t_l.columns[a]
        for i in range(d):
            lhs.append(sp2.project.apply(flatten_tuplevec(
                ck.delta_vec_tv("l", ops.mulvec(ta, {i: ONE})), st2)))
            tv = {}
            for (x, y, c) in ops.delta_l_cols[i]:
                for k, v in ops.mulvec(ta, {y: ONE}).items():
                    tv[(x, k)] = tv.get((x, k), Fraction(0)) + c * v
            rhs.append(sp2.project.apply(flatten_tuplevec(tv, st2)))
    ck._compare(report, "DeltaL right A_l-linear", (da, d), lhs, rhs)

    # Takeuchi: h_(1) t_l(a) (x) h_(2) = h_(1) (x) h_(2) s_l(a)
    lhs, rhs = [], []
    for a in range(da):
        ta, sa = p.t_l.columns[a], p.s_l.columns[a]
        for i in range(d):
            tv1, tv2 = {}, {}
            for (x, y, c) in ops.delta_l_cols[i]:
                for k, v in ops.mulvec({x: ONE}, ta).items():
                    tv1[(k, y)] = tv1.get((k, y), Fraction(0)) + c * v
                for k, v in ops.mulvec({y: ONE}, sa).items():
                    tv2[(x, k)] = tv2.get((x, k), Fraction(0)) + c * v
            lhs.append(sp2.project.apply(flatten_tuplevec(tv1, st2)))
            rhs.append(sp2.project.apply(flatten_tuplevec(tv2, st2)))
    ck._compare(report, "DeltaL Takeuchi", (da, d), lhs, rhs)

    # multiplicativity and unitality modulo relations
    lhs, rhs = [], []
    for i in range(d):
        for j in range(d):
            lhs.append(sp2.project.apply(flatten_tuplevec(
                ck.delta_vec_tv("l", ops.mulvec({i: ONE}, {j: ONE})), st2)))
            tv = {}
            for (a1, b1, c1) in ops.delta_l_cols[i]:
                for (a2, b2, c2) in ops.delta_l_cols[j]:
                    for k1, v1 in ops.mulvec({a1: ONE}, {a2: ONE}).items():
                        for k2, v2 in ops.mulvec({b1: ONE}, {b2: ONE}).items():
                            key = (k1, k2)
                            tv[key] = tv.get(key, Fraction(0)) + c1 * c2 * v1 * v2
            rhs.append(sp2.project.apply(flatten_tuplevec(tv, st2)))
    ck._compare(report, "DeltaL multiplicative", (d, d), lhs, rhs)
    lhs = [sp2.project.apply(flatten_tuplevec(ck.delta_vec_tv("l", ops.unitH), st2))]
    unit_tv: TupleVec = {}
    for i, ci in ops.unitH.items():
        for j, cj in ops.unitH.items():
            unit_tv[(i, j)] = ci * cj
    rhs = [sp2.project.apply(flatten_tuplevec(unit_tv, st2))]
    ck._compare(report, "DeltaL unital", (1,), lhs, rhs)

    # eps_l properties
    u_img = p.eps_l.apply(ops.unitH)
    report.results.append(IdentityResult("eps_l unital", u_img == ops.unitAl,
                                         witness=None if u_img == ops.unitAl else (),
                                         lhs=u_img, rhs=ops.unitAl))
    lhs, rhs1, rhs2 = [], [], []
    for i in range(d):
        for j in range(d):
            lhs.append(p.eps_l.apply(ops.mulvec({i: ONE}, {j: ONE})))
            rhs1.append(p.eps_l.apply(ops.mulvec(
                {i: ONE}, p.s_l.apply(p.eps_l.columns[j]))))
            rhs2.append(p.eps_l.apply(ops.mulvec(
                {i: ONE}, p.t_l.apply(p.eps_l.columns[j]))))
    ck._compare(report, "eps_l(hh') = eps_l(h sl(el h'))", (d, d), lhs, rhs1)
    ck._compare(report, "eps_l(hh') = eps_l(h tl(el h'))", (d, d), lhs, rhs2)
    lhs, rhs = [], []
    for a in range(da):
        for b in range(da):
            for i in range(d):
                lhs.append(p.eps_l.apply(ops.mulvec(
                    p.s_l.columns[a], ops.mulvec(p.t_l.columns[b], {i: ONE}))))
                rhs.append(p.A_l.multiply({a: ONE},
                                          p.A_l.multiply(p.eps_l.columns[i], {b: ONE})))
    ck._compare(report, "eps_l bimodule map", (da, da, d), lhs, rhs)
    return report


def check_right_bialgebroid(p: HopfAlgebroidPresentation) -> AxiomReport:
    ck = AxiomChecker(p)
    return _right_bialgebroid(ck)


def _right_bialgebroid(ck: AxiomChecker) -> AxiomReport:
    p, ops = ck.p, ck.ops
    d, da = ops.dim, ops.dim_ar
    report = AxiomReport()
    report.results.append(_algebra_result("algebra A_r", p.A_r))
    _hom_checks(report, ck, "s_r", p.s_r, p.A_r, anti=False)
    _hom_checks(report, ck, "t_r", p.t_r, p.A_r, anti=True)
    lhs, rhs = [], []
    for a in range(da):
        for b in range(da):
            lhs.append(ops.mulvec(p.s_r.columns[a], p.t_r.columns[b]))
            rhs.append(ops.mulvec(p.t_r.columns[b], p.s_r.columns[a]))
    ck._compare(report, "s_r,t_r images commute", (da, da), lhs, rhs)

    lhs, rhs = [], []
    for i in range(d):
        acc: Vec = {}
        for (a, b, c) in ops.delta_r_cols[i]:
            v = ops.mulvec({a: ONE}, p.s_r.apply(p.eps_r.columns[b]))
            for k, vv in v.items():
                acc[k] = acc.get(k, Fraction(0)) + c * vv
        lhs.append({k: v for k, v in acc.items() if v})
        rhs.append({i: ONE})
    ck._compare(report, "DeltaR counit (s side)", (d,), lhs, rhs)
    lhs = []
    for i in range(d):
        acc = {}
        for (a, b, c) in ops.delta_r_cols[i]:
            v = ops.mulvec({b: ONE}, p.t_r.apply(p.eps_r.columns[a]))
            for k, vv in v.items():
                acc[k] = acc.get(k, Fraction(0)) + c * vv
        lhs.append({k: v for k, v in acc.items() if v})
    ck._compare(report, "DeltaR counit (t side)", (d,), lhs, rhs)

    lhs, rhs = [], []
    st = strides_of((d, d, d))
    for i in range(d):
        tv1: TupleVec = {}
        tv2: TupleVec = {}
        for (a, b, c) in ops.delta_r_cols[i]:
            for (x, y, cc) in ops.delta_r_cols[a]:
                tv1[(x, y, b)] = tv1.get((x, y, b), Fraction(0)) + c * cc
            for (x, y, cc) in ops.delta_r_cols[b]:
                tv2[(a, x, y)] = tv2.get((a, x, y), Fraction(0)) + c * cc
        sp = ck.space("rr", "rr")
        lhs.append(sp.project.apply(flatten_tuplevec(tv1, st)))
        rhs.append(sp.project.apply(flatten_tuplevec(tv2, st)))
    ck._compare(report, "DeltaR coassociative", (d,), lhs, rhs)

    sp2 = ck.space("rr")
    st2 = strides_of((d, d))
    # bimodule linearity: Delta_r(h t_r(a)) = h^(1) t_r(a) (x) h^(2)
    lhs, rhs = [], []
    for a in range(da):
        ta = p.t_r.columns[a]
        for i in range(d):
            lhs.append(sp2.project.apply(flatten_tuplevec(
                ck.delta_vec_tv("r", ops.mulvec({i: ONE}, ta)), st2)))
            tv = {}
            for (x, y, c) in ops.delta_r_cols[i]:
                for k, v in ops.mulvec({x: ONE}, ta).items():
                    tv[(k, y)] = tv.get((k, y), Fraction(0)) + c * v
            rhs.append(sp2.project.apply(flatten_tuplevec(tv, st2)))
    ck._compare(report, "DeltaR left A_r-linear", (da, d), lhs, rhs)
    lhs, rhs = [], []
    for a in range(da):
        sa = p.s_r.columns[a]
        for i in range(d):
            lhs.append(sp2.project.apply(flatten_tuplevec(
                ck.delta_vec_tv("r", ops.mulvec({i: ONE}, sa)), st2)))
            tv = {}
            for (x, y, c) in ops.delta_r_cols[i]:
                for k, v in ops.mulvec({y: ONE}, sa).items():
                    tv[(x, k)] = tv.get((x, k), Fraction(0)) + c * v
            rhs.append(sp2.project.apply(flatten_tuplevec(tv, st2)))
    ck._compare(report, "DeltaR right A_r-linear", (da, d), lhs, rhs)

    # Takeuchi: s_r(a) h^(1) (x) h^(2) = h^(1) (x) t_r(a) h^(2)
    lhs, rhs = [], []
    for a in range(da):
        sa, ta = p.s_r.columns[a], p.t_r.columns[a]
        for i in range(d):
            tv1, tv2 = {}, {}
            for (x, y, c) in ops.delta_r_cols[i]:
                for k, v in ops.mulvec(sa, {x: ONE}).items():
                    tv1[(k, y)] = tv1.get((k, y), Fraction(0)) + c * v
                for k, v in ops.mulvec(ta, {y: ONE}).items():
                    tv2[(x, k)] = tv2.get((x, k), Fraction(0)) + c * v
            lhs.append(sp2.project.apply(flatten_tuplevec(tv1, st2)))
            rhs.append(sp2.project.apply(flatten_tuplevec(tv2, st2)))
    ck._compare(report, "DeltaR Takeuchi", (da, d), lhs, rhs)

    lhs, rhs = [], []
    for i in range(d):
        for j in range(d):
            lhs.append(sp2.project.apply(flatten_tuplevec(
                ck.delta_vec_tv("r", ops.mulvec({i: ONE}, {j: ONE})), st2)))
            tv = {}
            for (a1, b1, c1) in ops.delta_r_cols[i]:
                for (a2, b2, c2) in ops.delta_r_cols[j]:
                    for k1, v1 in ops.mulvec({a1: ONE}, {a2: ONE}).items():
                        for k2, v2 in ops.mulvec({b1: ONE}, {b2: ONE}).items():
                            key = (k1, k2)
                            tv[key] = tv.get(key, Fraction(0)) + c1 * c2 * v1 * v2
            rhs.append(sp2.project.apply(flatten_tuplevec(tv, st2)))
    ck._compare(report, "DeltaR multiplicative", (d, d), lhs, rhs)
    lhs = [sp2.project.apply(flatten_tuplevec(ck.delta_vec_tv("r", ops.unitH), st2))]
    unit_tv: TupleVec = {}
    for i, ci in ops.unitH.items():
        for j, cj in ops.unitH.items():
            unit_tv[(i, j)] = ci * cj
    rhs = [sp2.project.apply(flatten_tuplevec(unit_tv, st2))]
    ck._compare(report, "DeltaR unital", (1,), lhs, rhs)

    u_img = p.eps_r.apply(ops.unitH)
    report.results.append(IdentityResult("eps_r unital", u_img == ops.unitAr,
                                         witness=None if u_img == ops.unitAr else (),
                                         lhs=u_img, rhs=ops.unitAr))
    lhs, rhs1, rhs2 = [], [], []
    for i in range(d):
        for j in range(d):
            lhs.append(p.eps_r.apply(ops.mulvec({i: ONE}, {j: ONE})))
            rhs1.append(p.eps_r.apply(ops.mulvec(
                p.s_r.apply(p.eps_r.columns[i]), {j: ONE})))
            rhs2.append(p.eps_r.apply(ops.mulvec(
                p.t_r.apply(p.eps_r.columns[i]), {j: ONE})))
    ck._compare(report, "eps_r(hh') = eps_r(sr(er h)h')", (d, d), lhs, rhs1)
    ck._compare(report, "eps_r(hh') = eps_r(tr(er h)h')", (d, d), lhs, rhs2)
    lhs, rhs = [], []
    for a in range(da):
        for b in range(da):
            for i in range(d):
                lhs.append(p.eps_r.apply(ops.mulvec(
                    ops.mulvec({i: ONE}, p.t_r.columns[a]), p.s_r.columns[b])))
                rhs.append(p.A_r.multiply({a: ONE},
                                          p.A_r.multiply(p.eps_r.columns[i], {b: ONE})))
    ck._compare(report, "eps_r bimodule map", (da, da, d), lhs, rhs)
    return report


def check_hopf_algebroid(p: HopfAlgebroidPresentation) -> AxiomReport:
    """Full Def. 2.2 suite plus the derived identity tables."""
    ck = AxiomChecker(p)
    report = _left_bialgebroid(ck)
    report.extend(_right_bialgebroid(ck))
    report.extend(_hopf_axioms(ck))
    return report


def _conv_col(ck: AxiomChecker, side: str, i: int, f: LinearMap, g: LinearMap,
              opposite: bool) -> Vec:
    """mu(f (x) g) Delta_side on basis element i (opposite multiplies g then f)."""
    ops = ck.ops
    cols = ops.delta_l_cols if side == "l" else ops.delta_r_cols
    acc: Vec = {}
    for (a, b, c) in cols[i]:
        fa = f.columns[a]
        gb = g.columns[b]
        v = ops.mulvec(gb, fa) if opposite else ops.mulvec(fa, gb)
        for k, vv in v.items():
            w = acc.get(k, Fraction(0)) + c * vv
            if w:
                acc[k] = w
            else:
                acc.pop(k, None)
    return acc


def _hopf_axioms(ck: AxiomChecker) -> AxiomReport:
    p, ops = ck.p, ck.ops
    d, dal, dar = ops.dim, ops.dim_al, ops.dim_ar
    report = AxiomReport()
    S = p.S
    S_inv = ck.ops.p.S_inv  # synthesized when possible
    if S_inv is None:
        raise MissingInverse("antipode is not invertible; inverse-dependent "
                             "identities cannot be checked")

    # (2.1) source/target compatibilities
    ck._cmp_maps(report, "sl.el.tr = tr", (dar,), p.s_l @ p.eps_l @ p.t_r, p.t_r)
    ck._cmp_maps(report, "tl.el.sr = sr", (dar,), p.t_l @ p.eps_l @ p.s_r, p.s_r)
    ck._cmp_maps(report, "sr.er.tl = tl", (dal,), p.s_r @ p.eps_r @ p.t_l, p.t_l)
    ck._cmp_maps(report, "tr.er.sl = sl", (dal,), p.t_r @ p.eps_r @ p.s_l, p.s_l)

    # twisted coassociativity in the two mixed quotients
    st = strides_of((d, d, d))
    sp_lr = ck.space("ll", "rr")
    sp_rl = ck.space("rr", "ll")
    lhs, rhs = [], []
    for i in range(d):
        tv1: TupleVec = {}
        tv2: TupleVec = {}
        for (a, b, c) in ops.delta_r_cols[i]:
            for (x, y, cc) in ops.delta_l_cols[a]:
                tv1[(x, y, b)] = tv1.get((x, y, b), Fraction(0)) + c * cc
        for (a, b, c) in ops.delta_l_cols[i]:
            for (x, y, cc) in ops.delta_r_cols[b]:
                tv2[(a, x, y)] = tv2.get((a, x, y), Fraction(0)) + c * cc
        lhs.append(sp_lr.project.apply(flatten_tuplevec(tv1, st)))
        rhs.append(sp_lr.project.apply(flatten_tuplevec(tv2, st)))
    ck._compare(report, "TwCoassoc (DL (x) id) DR = (id (x) DR) DL", (d,), lhs, rhs)
    lhs, rhs = [], []
    for i in range(d):
        tv1, tv2 = {}, {}
        for (a, b, c) in ops.delta_l_cols[i]:
            for (x, y, cc) in ops.delta_r_cols[a]:
                tv1[(x, y, b)] = tv1.get((x, y, b), Fraction(0)) + c * cc
        for (a, b, c) in ops.delta_r_cols[i]:
            for (x, y, cc) in ops.delta_l_cols[b]:
                tv2[(a, x, y)] = tv2.get((a, x, y), Fraction(0)) + c * cc
        lhs.append(sp_rl.project.apply(flatten_tuplevec(tv1, st)))
        rhs.append(sp_rl.project.apply(flatten_tuplevec(tv2, st)))
    ck._compare(report, "TwCoassoc (DR (x) id) DL = (id (x) DL) DR", (d,), lhs, rhs)

    # axiom (iii)
    lhs, rhs = [], []
    for a in range(dal):
        for i in range(d):
            for b in range(dar):
                inner = ops.mulvec(p.t_l.columns[a],
                                   ops.mulvec({i: ONE}, p.t_r.columns[b]))
                lhs.append(S.apply(inner))
                rhs.append(ops.mulvec(p.s_r.columns[b],
                                      ops.mulvec(S.columns[i], p.s_l.columns[a])))
    ck._compare(report, "S(tl(a) h tr(b)) = sr(b) S(h) sl(a)", (dal, d, dar), lhs, rhs)

    # antipode axioms (TwAp)
    ident = LinearMap.identity(d)
    lhs = [_conv_col(ck, "l", i, S, ident, opposite=False) for i in range(d)]
    rhs = (p.s_r @ p.eps_r).columns
    ck._compare(report, "TwAp left: mu(S (x) id) DL = sr.er", (d,), lhs, rhs)
    lhs = [_conv_col(ck, "r", i, ident, S, opposite=False) for i in range(d)]
    rhs = (p.s_l @ p.eps_l).columns
    ck._compare(report, "TwAp right: mu(id (x) S) DR = sl.el", (d,), lhs, rhs)

    # (1.4): tw (S (x) S) Delta_l = Delta_r S and companions
    def tw_pair(side_from: str, m: LinearMap, quot: str, name_suffix: str,
                side_to: str, back: LinearMap):
        st2 = strides_of((d, d))
        sp = ck.space(quot)
        lhs_cols, rhs_cols = [], []
        for i in range(d):
            tv: TupleVec = {}
            cols = ops.delta_l_cols if side_from == "l" else ops.delta_r_cols
            for (a, b, c) in cols[i]:
                for k1, v1 in m.columns[a].items():
                    for k2, v2 in m.columns[b].items():
                        key = (k2, k1)  # tensor flip
                        tv[key] = tv.get(key, Fraction(0)) + c * v1 * v2
            lhs_cols.append(sp.project.apply(flatten_tuplevec(tv, st2)))
            rhs_cols.append(sp.project.apply(flatten_tuplevec(
                ck.delta_vec_tv(side_to, back.columns[i]), st2)))
        ck._compare(report, name_suffix, (d,), lhs_cols, rhs_cols)

    tw_pair("l", S, "rr", "tw(S (x) S) DL = DR.S", "r", S)
    tw_pair("r", S, "ll", "tw(S (x) S) DR = DL.S", "l", S)
    tw_pair("l", S_inv, "rr", "tw(Sinv (x) Sinv) DL = DR.Sinv", "r", S_inv)
    tw_pair("r", S_inv, "ll", "tw(Sinv (x) Sinv) DR = DL.Sinv", "l", S_inv)

    # (1.5) table
    S2 = S @ S
    table = [
        ("sr.er.sl = S.sl", p.s_r @ p.eps_r @ p.s_l, S @ p.s_l, (dal,)),
        ("sl.el.sr = S.sr", p.s_l @ p.eps_l @ p.s_r, S @ p.s_r, (dar,)),
        ("sr.er.tl = Sinv.sl", p.s_r @ p.eps_r @ p.t_l, S_inv @ p.s_l, (dal,)),
        ("sl.el.tr = Sinv.sr", p.s_l @ p.eps_l @ p.t_r, S_inv @ p.s_r, (dar,)),
        ("tr.er.sl = S.tl", p.t_r @ p.eps_r @ p.s_l, S @ p.t_l, (dal,)),
        ("tl.el.sr = S.tr", p.t_l @ p.eps_l @ p.s_r, S @ p.t_r, (dar,)),
        ("tr.er.tl = Sinv.tl", p.t_r @ p.eps_r @ p.t_l, S_inv @ p.t_l, (dal,)),
        ("tl.el.tr = Sinv.tr", p.t_l @ p.eps_l @ p.t_r, S_inv @ p.t_r, (dar,)),
        ("er.sl.el = er.S", p.eps_r @ p.s_l @ p.eps_l, p.eps_r @ S, (d,)),
        ("el.sr.er = el.S", p.eps_l @ p.s_r @ p.eps_r, p.eps_l @ S, (d,)),
        ("er.tl.el = er.Sinv", p.eps_r @ p.t_l @ p.eps_l, p.eps_r @ S_inv, (d,)),
        ("el.tr.er = el.Sinv", p.eps_l @ p.t_r @ p.eps_r, p.eps_l @ S_inv, (d,)),
    ]
    for name, a, b, shape in table:
        ck._cmp_maps(report, name, shape, a, b)

    # antipode convolution identities (upper and lower blocks)
    Sm2 = S_inv @ S_inv
    conv_table = [
        ("mu(S (x) sl.el) DL = S", "l", S, p.s_l @ p.eps_l, False, S),
        ("mu(sr.er (x) S) DR = S", "r", p.s_r @ p.eps_r, S, False, S),
        ("muop(S2 (x) tl.el.S2) DL = S2", "l", S2, p.t_l @ p.eps_l @ S2, True, S2),
        ("muop(tr.er.S2 (x) S2) DR = S2", "r", p.t_r @ p.eps_r @ S2, S2, True, S2),
        ("muop(S2 (x) S) DL = tr.er.S2", "l", S2, S, True, p.t_r @ p.eps_r @ S2),
        ("muop(S (x) S2) DR = tl.el.S2", "r", S, S2, True, p.t_l @ p.eps_l @ S2),
        ("muop(id (x) Sinv) DL = tr.er", "l", ident, S_inv, True, p.t_r @ p.eps_r),
        ("muop(Sinv (x) id) DR = tl.el", "r", S_inv, ident, True, p.t_l @ p.eps_l),
        ("muop(tl.el (x) Sinv) DL = Sinv", "l", p.t_l @ p.eps_l, S_inv, True, S_inv),
        ("muop(Sinv (x) tr.er) DR = Sinv", "r", S_inv, p.t_r @ p.eps_r, True, S_inv),
        ("mu(Sinv (x) Sinv2) DL = sr.er.Sinv2", "l", S_inv, Sm2, False,
         p.s_r @ p.eps_r @ Sm2),
        ("mu(Sinv2 (x) Sinv) DR = sl.el.Sinv2", "r", Sm2, S_inv, False,
         p.s_l @ p.eps_l @ Sm2),
    ]
    for name, side, f, g, opposite, target in conv_table:
        lhs = [_conv_col(ck, side, i, f, g, opposite) for i in range(d)]
        ck._compare(report, name, (d,), lhs, target.columns)

    # S and its inverse
    su = S.apply(ops.unitH)
    report.results.append(IdentityResult("S unital", su == ops.unitH,
                                         witness=None if su == ops.unitH else (),
                                         lhs=su, rhs=ops.unitH))
    ck._cmp_maps(report, "S.Sinv = id", (d,), S @ S_inv, ident)
    ck._cmp_maps(report, "Sinv.S = id", (d,), S_inv @ S, ident)

    report.flags["S2_is_identity"] = (S2 == ident)
    report.flags["commutative"] = detect_commutative(p)
    report.flags["cocommutative"] = detect_cocommutative(p)
    return report


def detect_commutative(p: HopfAlgebroidPresentation) -> bool:
    """Commutative in the structure-theorem sense: H commutative and the
    right bialgebroid is the flip of the left one."""
    if not p.H.is_commutative():
        return False
    if (p.A_l.dim, p.A_l.mul, p.A_l.unit) != (p.A_r.dim, p.A_r.mul, p.A_r.unit):
        return False
    if p.s_r != p.t_l or p.t_r != p.s_l or p.eps_r != p.eps_l:
        return False
    ops = Ops(p)
    sp = glued_space(ops, ("ll",))
    diff = p.delta_r - p.delta_l
    return all(not sp.project.apply(col) for col in diff.columns)


def detect_cocommutative(p: HopfAlgebroidPresentation) -> bool:
    """Delta_l symmetric modulo relations over a commutative base with s_l = t_l."""
    if not p.A_l.is_commutative() or p.s_l != p.t_l:
        return False
    d = p.H.dim
    ops = Ops(p)
    sp = glued_space(ops, ("ll",))
    for i in range(d):
        tv: Dict[tuple, Fraction] = {}
        for flat, c in p.delta_l.columns[i].items():
            a, b = flat // d, flat % d
            tv[(b, a)] = tv.get((b, a), Fraction(0)) + c
            tv[(a, b)] = tv.get((a, b), Fraction(0)) - c
        if sp.project.apply(flatten_tuplevec(tv, (d, 1))):
            return False
    return True


def anti_isos(p: HopfAlgebroidPresentation) -> Tuple[AntiIsoPair, AxiomReport]:
    """phi = eps_r s_l, theta = eps_r t_l and their stated inverses."""
    pair = AntiIsoPair(
        phi=p.eps_r @ p.s_l,
        theta=p.eps_r @ p.t_l,
        phi_inv=p.eps_l @ p.t_r,
        theta_inv=p.eps_l @ p.s_r,
    )
    report = AxiomReport()
    ck = AxiomChecker(p)
    dal, dar = p.A_l.dim, p.A_r.dim
    ck._cmp_maps(report, "phi.phi_inv = id", (dar,), pair.phi @ pair.phi_inv,
                 LinearMap.identity(dar))
    ck._cmp_maps(report, "phi_inv.phi = id", (dal,), pair.phi_inv @ pair.phi,
                 LinearMap.identity(dal))
    ck._cmp_maps(report, "theta.theta_inv = id", (dar,), pair.theta @ pair.theta_inv,
                 LinearMap.identity(dar))
    ck._cmp_maps(report, "theta_inv.theta = id", (dal,), pair.theta_inv @ pair.theta,
                 LinearMap.identity(dal))
    for name, m in (("phi", pair.phi), ("theta", pair.theta)):
        lhs, rhs = [], []
        for i in range(dal):
            for j in range(dal):
                lhs.append(m.apply(p.A_l.multiply_basis(i, j)))
                rhs.append(p.A_r.multiply(m.columns[j], m.columns[i]))
        ck._compare(report, f"{name} antihomomorphism", (dal, dal), lhs, rhs)
    if (p.S @ p.S) == LinearMap.identity(p.H.dim):
        ck._cmp_maps(report, "theta = phi (since S^2 = id)", (dal,), pair.theta, pair.phi)
    return pair, report
