"""Finite groupoids, their convolution Hopf algebroids, and nerve homology.

The convolution algebra has the indicator functions of arrows as basis;
all four source/target maps are the push-forward along the unit
inclusion, both coproducts are diagonal, the counits sum over target
resp. source fibres, and the antipode is pullback along inversion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .axioms import AxiomReport, IdentityResult
from .linalg import (ChainComplexData, LinearMap, Vec, ONE, complex_homology,
                     HomologyDegree)
from .presentation import (AlgebraPresentation, HopfAlgebroidPresentation,
                           PresentationError)

F = Fraction


class GroupoidError(ValueError):
    """Category/groupoid axiom violation in the input data."""


@dataclass(frozen=True)
class FiniteGroupoid:
    """Objects, arrows and structure tables; comp[(g, h)] = g after h."""

    name: str
    objects: Tuple[str, ...]
    arrows: Tuple[str, ...]
    src: Dict[str, str]
    tgt: Dict[str, str]
    comp: Dict[Tuple[str, str], str]
    inv: Dict[str, str]
    unit: Dict[str, str]

    def __post_init__(self):
        self.validate()

    def validate(self):
        names = set(self.arrows)
        objs = set(self.objects)
        if len(names) != len(self.arrows) or len(objs) != len(self.objects):
            raise GroupoidError("duplicate object or arrow names")
        for g in self.arrows:
            if self.src.get(g) not in objs or self.tgt.get(g) not in objs:
                raise GroupoidError(f"arrow {g!r} has no source/target object")
        for x in self.objects:
            u = self.unit.get(x)
            if u not in names or self.src[u] != x or self.tgt[u] != x:
                raise GroupoidError(f"object {x!r} has no unit arrow")
        for g in self.arrows:
            for h in self.arrows:
                composable = self.src[g] == self.tgt[h]
                defined = (g, h) in self.comp
                if composable != defined:
                    raise GroupoidError(
                        f"composition table wrong on ({g!r}, {h!r})")
                if defined:
                    gh = self.comp[(g, h)]
                    if gh not in names:
                        raise GroupoidError(f"composite of ({g!r},{h!r}) unknown")
                    if self.src[gh] != self.src[h] or self.tgt[gh] != self.tgt[g]:
                        raise GroupoidError(
                            f"composite of ({g!r},{h!r}) has wrong ends")
        for g in self.arrows:
            if self.comp[(self.unit[self.tgt[g]], g)] != g \
                    or self.comp[(g, self.unit[self.src[g]])] != g:
                raise GroupoidError(f"units do not act as identities on {g!r}")
            gi = self.inv.get(g)
            if gi not in names:
                raise GroupoidError(f"arrow {g!r} has no inverse")
            if self.comp.get((g, gi)) != self.unit[self.tgt[g]] \
                    or self.comp.get((gi, g)) != self.unit[self.src[g]]:
                raise GroupoidError(f"inverse of {g!r} is not two-sided")
        for g in self.arrows:
            for h in self.arrows:
                if (g, h) not in self.comp:
                    continue
                for k in self.arrows:
                    if (h, k) not in self.comp:
                        continue
                    if self.comp[(self.comp[(g, h)], k)] != self.comp[(g, self.comp[(h, k)])]:
                        raise GroupoidError(
                            f"composition not associative on ({g!r},{h!r},{k!r})")

    def arrow_index(self) -> Dict[str, int]:
        return {g: i for i, g in enumerate(self.arrows)}

    def object_index(self) -> Dict[str, int]:
        return {x: i for i, x in enumerate(self.objects)}

    def compose_chain(self, gs: Sequence[str]) -> str:
        out = gs[0]
        for g in gs[1:]:
            out = self.comp[(out, g)]
        return out

    def to_dict(self) -> dict:
        return {
            "kind": "groupoid",
            "name": self.name,
            "objects": list(self.objects),
            "arrows": [{"name": g, "src": self.src[g], "tgt": self.tgt[g]}
                       for g in self.arrows],
            "comp": [[g, h, gh] for (g, h), gh in sorted(self.comp.items())],
            "inv": [[g, self.inv[g]] for g in self.arrows],
            "unit": [[x, self.unit[x]] for x in self.objects],
        }


def groupoid_from_dict(data: dict) -> FiniteGroupoid:
    required = {"kind", "name", "objects", "arrows", "comp", "inv", "unit"}
    unknown = set(data) - required
    if unknown:
        raise PresentationError("<groupoid>", f"unknown fields {sorted(unknown)}")
    missing = required - set(data)
    if missing:
        raise PresentationError("<groupoid>", f"missing fields {sorted(missing)}")
    if data["kind"] != "groupoid":
        raise PresentationError("kind", "expected 'groupoid'")
    arrows = tuple(a["name"] for a in data["arrows"])
    try:
        return FiniteGroupoid(
            name=data["name"],
            objects=tuple(data["objects"]),
            arrows=arrows,
            src={a["name"]: a["src"] for a in data["arrows"]},
            tgt={a["name"]: a["tgt"] for a in data["arrows"]},
            comp={(g, h): gh for g, h, gh in data["comp"]},
            inv={g: gi for g, gi in data["inv"]},
            unit={x: u for x, u in data["unit"]},
        )
    except (KeyError, TypeError) as exc:
        raise PresentationError("<groupoid>", f"malformed table: {exc}")


def load_groupoid(path) -> FiniteGroupoid:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise PresentationError("<file>", f"not valid JSON: {exc}")
    return groupoid_from_dict(data)


def save_groupoid(g: FiniteGroupoid, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(g.to_dict(), indent=1) + "\n")


# -- constructors -------------------------------------------------------------


def group_groupoid(name: str, elements: Sequence[str], mul: Dict[Tuple[str, str], str],
                   inverse: Dict[str, str], identity: str) -> FiniteGroupoid:
    return FiniteGroupoid(
        name=name, objects=("*",), arrows=tuple(elements),
        src={g: "*" for g in elements}, tgt={g: "*" for g in elements},
        comp=dict(mul), inv=dict(inverse), unit={"*": identity})


def cyclic_group_groupoid(n: int) -> FiniteGroupoid:
    els = [f"g{i}" for i in range(n)]
    mul = {(f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    inv = {f"g{i}": f"g{(n - i) % n}" for i in range(n)}
    return group_groupoid(f"cyclic-{n}", els, mul, inv, "g0")


def klein_four_groupoid() -> FiniteGroupoid:
    els = ["e", "a", "b", "c"]
    table = {}
    xor = {("e",): 0}
    code = {"e": 0, "a": 1, "b": 2, "c": 3}
    dec = {v: k for k, v in code.items()}
    for g in els:
        for h in els:
            table[(g, h)] = dec[code[g] ^ code[h]]
    return group_groupoid("klein-four", els, table, {g: g for g in els}, "e")


def pair_groupoid(n: int) -> FiniteGroupoid:
    objects = [f"x{i}" for i in range(n)]
    arrows = [f"a{i}{j}" for i in range(n) for j in range(n)]
    src = {f"a{i}{j}": f"x{j}" for i in range(n) for j in range(n)}
    tgt = {f"a{i}{j}": f"x{i}" for i in range(n) for j in range(n)}
    comp = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                comp[(f"a{i}{j}", f"a{j}{k}")] = f"a{i}{k}"
    inv = {f"a{i}{j}": f"a{j}{i}" for i in range(n) for j in range(n)}
    unit = {f"x{i}": f"a{i}{i}" for i in range(n)}
    return FiniteGroupoid(f"pair-{n}", tuple(objects), tuple(arrows),
                          src, tgt, comp, inv, unit)


def disjoint_union(g1: FiniteGroupoid, g2: FiniteGroupoid,
                   name: Optional[str] = None) -> FiniteGroupoid:
    p1, p2 = "L:", "R:"
    objects = tuple(p1 + x for x in g1.objects) + tuple(p2 + x for x in g2.objects)
    arrows = tuple(p1 + g for g in g1.arrows) + tuple(p2 + g for g in g2.arrows)
    src = {p1 + g: p1 + g1.src[g] for g in g1.arrows}
    src.update({p2 + g: p2 + g2.src[g] for g in g2.arrows})
    tgt = {p1 + g: p1 + g1.tgt[g] for g in g1.arrows}
    tgt.update({p2 + g: p2 + g2.tgt[g] for g in g2.arrows})
    comp = {(p1 + g, p1 + h): p1 + gh for (g, h), gh in g1.comp.items()}
    comp.update({(p2 + g, p2 + h): p2 + gh for (g, h), gh in g2.comp.items()})
    inv = {p1 + g: p1 + g1.inv[g] for g in g1.arrows}
    inv.update({p2 + g: p2 + g2.inv[g] for g in g2.arrows})
    unit = {p1 + x: p1 + g1.unit[x] for x in g1.objects}
    unit.update({p2 + x: p2 + g2.unit[x] for x in g2.objects})
    return FiniteGroupoid(name or f"{g1.name}+{g2.name}", objects, arrows,
                          src, tgt, comp, inv, unit)


def point_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid("point", ("*",), ("1",), {"1": "*"}, {"1": "*"},
                          {("1", "1"): "1"}, {"1": "1"}, {"*": "1"})


# -- convolution Hopf algebroid -------------------------------------------------


def groupoid_algebra(G: FiniteGroupoid) -> HopfAlgebroidPresentation:
    objs = G.object_index()
    arrs = G.arrow_index()
    no, na = len(G.objects), len(G.arrows)
    A = AlgebraPresentation(
        no,
        LinearMap(no, no * no,
                  [{i: ONE} if i == j else {} for i in range(no) for j in range(no)]),
        tuple(F(1) for _ in range(no)))
    mul_cols: List[Vec] = []
    for g in G.arrows:
        for h in G.arrows:
            gh = G.comp.get((g, h))
            mul_cols.append({arrs[gh]: ONE} if gh is not None else {})
    H = AlgebraPresentation(
        na, LinearMap(na, na * na, mul_cols),
        tuple(F(1) if g in set(G.unit.values()) else F(0) for g in G.arrows))
    u_push = LinearMap(na, no, [{arrs[G.unit[x]]: ONE} for x in G.objects])
    delta = LinearMap(na * na, na, [{arrs[g] * na + arrs[g]: ONE} for g in G.arrows])
    eps_l = LinearMap(no, na, [{objs[G.tgt[g]]: ONE} for g in G.arrows])
    eps_r = LinearMap(no, na, [{objs[G.src[g]]: ONE} for g in G.arrows])
    S = LinearMap(na, na, [{arrs[G.inv[g]]: ONE} for g in G.arrows])
    return HopfAlgebroidPresentation(
        name=f"conv-{G.name}",
        A_l=A, A_r=A, H=H,
        s_l=u_push, t_l=u_push, s_r=u_push, t_r=u_push,
        delta_l=delta, delta_r=delta,
        eps_l=eps_l, eps_r=eps_r,
        S=S, S_inv=S,
        meta={"kind": "groupoid", "groupoid": G.to_dict()},
    )


# -- nerve, groupoid homology, cyclic structure ------------------------------------


@dataclass(frozen=True)
class Representation:
    """Object-indexed fibres with arrow matrices E_g : fibre(src g) -> fibre(tgt g)."""

    fibres: Dict[str, int]
    matrices: Dict[str, LinearMap]

    @classmethod
    def trivial(cls, G: FiniteGroupoid) -> "Representation":
        return cls({x: 1 for x in G.objects},
                   {g: LinearMap.identity(1) for g in G.arrows})

    def validate(self, G: FiniteGroupoid):
        for g in G.arrows:
            m = self.matrices[g]
            if (m.rows, m.cols) != (self.fibres[G.tgt[g]], self.fibres[G.src[g]]):
                raise GroupoidError(f"representation matrix for {g!r} has wrong shape")
        for (g, h), gh in G.comp.items():
            if self.matrices[g] @ self.matrices[h] != self.matrices[gh]:
                raise GroupoidError(f"representation not functorial on ({g!r},{h!r})")


@dataclass
class NerveData:
    """Levels of composable strings with face/degeneracy/cyclic set maps."""

    levels: List[List[tuple]]
    index: List[Dict[tuple, int]]

    def face(self, G: FiniteGroupoid, n: int, i: int, string: tuple) -> tuple:
        if n == 1:
            return (G.src[string[0]],) if i == 0 else (G.tgt[string[0]],)
        if i == 0:
            return string[1:]
        if i == n:
            return string[:-1]
        return string[:i - 1] + (G.comp[(string[i - 1], string[i])],) + string[i + 1:]

    def degeneracy(self, G: FiniteGroupoid, n: int, i: int, string: tuple) -> tuple:
        if n == 0:
            return (G.unit[string[0]],)
        if i == 0:
            return (G.unit[G.tgt[string[0]]],) + string
        return string[:i] + (G.unit[G.src[string[i - 1]]],) + string[i:]

    def cyclic(self, G: FiniteGroupoid, n: int, string: tuple) -> tuple:
        if n == 0:
            return string
        if n == 1:
            return (G.inv[string[0]],)
        whole = G.inv[G.compose_chain(string)]
        return (whole,) + string[:-1]


def nerve(G: FiniteGroupoid, N: int) -> NerveData:
    levels: List[List[tuple]] = [[(x,) for x in G.objects]]
    for n in range(1, N + 1):
        if n == 1:
            lvl = [(g,) for g in G.arrows]
        else:
            lvl = [s + (g,) for s in levels[n - 1] for g in G.arrows
                   if G.src[s[-1]] == G.tgt[g]]
        levels.append(lvl)
    index = [{s: i for i, s in enumerate(lvl)} for lvl in levels]
    return NerveData(levels, index)


def nerve_cyclic_report(G: FiniteGroupoid, nd: NerveData, N: int) -> AxiomReport:
    """Simplicial/cyclic identities of the nerve operators on the set level."""
    report = AxiomReport()

    def check(name, ok_fn, level):
        for s in nd.levels[level]:
            if not ok_fn(s):
                report.results.append(IdentityResult(name, False, witness=s))
                return
        report.results.append(IdentityResult(name, True))

    for n in range(1, N + 1):
        check(f"t^(n+1) = id on nerve level {n}",
              lambda s, n=n: _iterate_cyclic(G, nd, n, s, n + 1) == s, n)
        if n >= 1:
            check(f"d_0 t = d_n on nerve level {n}",
                  lambda s, n=n: nd.face(G, n, 0, nd.cyclic(G, n, s))
                  == nd.face(G, n, n, s), n)
        for i in range(1, n + 1):
            check(f"d_{i} t = t d_{i - 1} on nerve level {n}",
                  lambda s, n=n, i=i: nd.face(G, n, i, nd.cyclic(G, n, s))
                  == (nd.cyclic(G, n - 1, nd.face(G, n, i - 1, s))
                      if n >= 2 else nd.face(G, n, i - 1, s)), n)
    return report


def _iterate_cyclic(G, nd, n, s, k):
    for _ in range(k):
        s = nd.cyclic(G, n, s)
    return s


def nerve_homology(G: FiniteGroupoid, N: int,
                   rep: Optional[Representation] = None
                   ) -> Tuple[List[HomologyDegree], AxiomReport]:
    """Groupoid homology from the push-forward nerve complex, plus the
    cyclic-identity report of the nerve operators."""
    if rep is None:
        rep = Representation.trivial(G)
    rep.validate(G)
    nd = nerve(G, N + 1)
    dims = []
    offsets: List[Dict[tuple, int]] = []
    for n, lvl in enumerate(nd.levels):
        offs = {}
        acc = 0
        for s in lvl:
            offs[s] = acc
            base_obj = s[0] if n == 0 else G.tgt[s[0]]
            acc += rep.fibres[base_obj]
        offsets.append(offs)
        dims.append(acc)
    maps: List[Optional[LinearMap]] = [None]
    for n in range(1, N + 2):
        cols: List[Vec] = [dict() for _ in range(dims[n])]
        for s in nd.levels[n]:
            base = offsets[n][s]
            fibre = rep.fibres[G.tgt[s[0]]]
            for i in range(n + 1):
                sign = ONE if i % 2 == 0 else -ONE
                target = nd.face(G, n, i, s)
                tbase = offsets[n - 1][target]
                if i == 0 and n >= 1:
                    # transport along the dropped first arrow
                    m = rep.matrices[G.inv[s[0]]]
                    for v in range(fibre):
                        for w, c in m.columns[v].items():
                            col = cols[base + v]
                            key = tbase + w
                            val = col.get(key, F(0)) + sign * c
                            if val:
                                col[key] = val
                            else:
                                col.pop(key, None)
                else:
                    for v in range(fibre):
                        col = cols[base + v]
                        key = tbase + v
                        val = col.get(key, F(0)) + sign
                        if val:
                            col[key] = val
                        else:
                            col.pop(key, None)
        maps.append(LinearMap(dims[n - 1], dims[n], cols))
    cx = ChainComplexData(tuple(dims), tuple(maps), step=-1)
    hom = complex_homology(cx)[:N + 1]
    report = nerve_cyclic_report(G, nd, min(N + 1, 3))
    return hom, report


# -- comparisons with the Hopf-cyclic machinery --------------------------------------


def chain_basis_strings(machine, G: FiniteGroupoid, n: int) -> List[tuple]:
    """The coset basis of C_n as composable strings (identity bijection)."""
    arrs = list(G.arrows)
    sp = machine.chain_space(n)
    na = len(arrs)
    out = []
    for flat in sp.coset_basis:
        digits = []
        for _ in range(n):
            digits.append(flat % na)
            flat //= na
        out.append(tuple(arrs[q] for q in reversed(digits)))
    return out


def nerve_comparison_report(machine, G: FiniteGroupoid, n_max: int) -> AxiomReport:
    """The basis bijection C_n ~ Q[nerve strings] intertwines the dual
    operators with the nerve push-forwards (trivial coefficients)."""
    report = AxiomReport()
    nd = nerve(G, n_max + 1)
    for n in range(1, n_max + 1):
        strings = chain_basis_strings(machine, G, n)
        if sorted(strings) != sorted(nd.levels[n]):
            report.results.append(IdentityResult(
                f"C_{n} basis = nerve level {n}", False, witness=(n,)))
            continue
        report.results.append(IdentityResult(
            f"C_{n} basis = nerve level {n}", True))
        pos_prev = ({s: i for i, s in enumerate(chain_basis_strings(machine, G, n - 1))}
                    if n >= 2 else None)
        pos_here = {s: i for i, s in enumerate(strings)}
        for i in range(n + 1):
            face = machine.face(n, i)
            ok = True
            wit = None
            for j, s in enumerate(strings):
                target = nd.face(G, n, i, s)
                expected = ({pos_prev[target]: ONE} if n >= 2
                            else {G.object_index()[target[0]]: ONE})
                if face.columns[j] != expected:
                    ok, wit = False, s
                    break
            report.results.append(IdentityResult(
                f"d_{i} matches nerve face (degree {n})", ok, witness=wit))
        tmap = machine.t(n)
        ok = True
        wit = None
        for j, s in enumerate(strings):
            target = nd.cyclic(G, n, s)
            if tmap.columns[j] != {pos_here[target]: ONE}:
                ok, wit = False, s
                break
        report.results.append(IdentityResult(
            f"t matches nerve cyclic map (degree {n})", ok, witness=wit))
    return report


def hopf_galois_pushforward_report(machine, G: FiniteGroupoid, n_max: int) -> AxiomReport:
    """phi_n is the push-forward of (g_1,...,g_n) -> (g_1, g_1g_2, ...)."""
    report = AxiomReport()
    for n in range(1, n_max + 1):
        strings = chain_basis_strings(machine, G, n)
        cochain_strings = cochain_basis_strings(machine, G, n)
        pos = {s: i for i, s in enumerate(cochain_strings)}
        phi = machine.hopf_galois_phi(n)
        ok = True
        wit = None
        for j, s in enumerate(strings):
            image = tuple(G.compose_chain(s[:k + 1]) for k in range(n))
            if phi.columns[j] != {pos[image]: ONE}:
                ok, wit = False, s
                break
        report.results.append(IdentityResult(
            f"phi_{n} = push-forward of partial products", ok, witness=wit))
    return report


def cochain_basis_strings(machine, G: FiniteGroupoid, n: int) -> List[tuple]:
    arrs = list(G.arrows)
    sp = machine.cochain_space(n)
    na = len(arrs)
    out = []
    for flat in sp.coset_basis:
        digits = []
        for _ in range(n):
            digits.append(flat % na)
            flat //= na
        out.append(tuple(arrs[q] for q in reversed(digits)))
    return out


def burghelea_strings(G: FiniteGroupoid, n: int) -> List[tuple]:
    """Closed strings (z_0, ..., z_n): consecutive composable and closed."""
    out = []
    lvl = [(g,) for g in G.arrows]
    for _ in range(n):
        lvl = [s + (g,) for s in lvl for g in G.arrows if G.src[s[-1]] == G.tgt[g]]
    for s in lvl:
        if G.tgt[s[0]] == G.src[s[-1]]:
            out.append(s)
    return out


def burghelea_compare(machine, G: FiniteGroupoid, n_max: int) -> AxiomReport:
    """B_n(H) is the space of closed strings with the rotation/merge maps.

    Also re-checks that the invariant embedding is a morphism of cyclic
    modules for this family (after aligning the distinguished slot).
    """
    report = AxiomReport()
    arrs = list(G.arrows)
    na = len(arrs)
    for n in range(n_max + 1):
        sp = machine.inv_space(n)
        basis = []
        for flat in sp.coset_basis:
            digits = []
            for _ in range(n + 1):
                digits.append(flat % na)
                flat //= na
            basis.append(tuple(arrs[q] for q in reversed(digits)))
        closed = burghelea_strings(G, n)
        ok = sorted(basis) == sorted(closed)
        report.results.append(IdentityResult(
            f"B_{n}(H) basis = closed strings", ok,
            witness=None if ok else (n,), detail=f"|B_{n}| = {len(closed)}"))
        if not ok:
            continue
        pos = {s: i for i, s in enumerate(basis)}
        tmap = machine.inv_t(n)
        ok = all(tmap.columns[j] == {pos[(s[-1],) + s[:-1]]: ONE}
                 for j, s in enumerate(basis))
        report.results.append(IdentityResult(
            f"t on B_{n}(H) = string rotation", ok))
        if n >= 1:
            prev = {s: i for i, s in enumerate(
                _inv_basis_strings(machine, G, n - 1))}
            for i in range(n + 1):
                fmap = machine.inv_face(n, i)
                ok = True
                for j, s in enumerate(basis):
                    if i < n:
                        tgt_s = s[:i] + (G.comp[(s[i], s[i + 1])],) + s[i + 2:]
                    else:
                        tgt_s = (G.comp[(s[n], s[0])],) + s[1:n]
                    if fmap.columns[j] != {prev[tgt_s]: ONE}:
                        ok = False
                        break
                report.results.append(IdentityResult(
                    f"d_{i} on B_{n}(H) = string merge", ok))
    inv = machine.invariants_embedding(n_max)
    for n, ok in inv.cyclic_morphism.items():
        report.results.append(IdentityResult(
            f"Psi_inv is a cyclic morphism in degree {n}", ok))
    return report


def _inv_basis_strings(machine, G, n):
    arrs = list(G.arrows)
    na = len(arrs)
    out = []
    for flat in machine.inv_space(n).coset_basis:
        digits = []
        for _ in range(n + 1):
            digits.append(flat % na)
            flat //= na
        out.append(tuple(arrs[q] for q in reversed(digits)))
    return out
