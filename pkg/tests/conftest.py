import functools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import settings

from courant_deform.algebra import CourantPairData, as_courant, gallery, validate

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=25)
settings.load_profile("repo")

XI_VALUES = ("1", "2", "-1", "5/7")


def pair(name, xi=None):
    return as_courant(gallery(name, [xi] if xi is not None else []))


def _inverse(m):
    inv = sympy.Matrix(m).inv()
    return [[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in row]
            for row in inv.tolist()]


def random_invertible(n, rng):
    """A signed, scaled permutation followed by one random shear.

    Sparse on purpose: dense base changes make the exact differentials fill in
    and the relation checks several times slower.
    """
    if n == 0:
        return []
    perm = list(range(n))
    rng.shuffle(perm)
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, j in enumerate(perm):
        m[i][j] = Fraction(rng.choice([1, -1, 2, -2]))
    if n > 1:
        i, j = rng.sample(range(n), 2)
        c = rng.choice([1, -1, 2])
        for r in range(n):
            m[r][j] += c * m[r][i]
    return m


def _transform_tensor(T, g, ginv, h, hinv, n_left, n_right, n_out):
    """T(u_i, v_j) in new bases u = cols of g, v = cols of h, output in the g or h basis."""
    out = []
    for i in range(n_left):
        row = []
        for j in range(n_right):
            vec = [Fraction(0)] * len(ginv)
            for r in range(n_left):
                if not g[r][i]:
                    continue
                for s in range(n_right):
                    if not h[s][j]:
                        continue
                    c = g[r][i] * h[s][j]
                    for t in range(len(vec)):
                        vec[t] += c * T[r][s][t]
            row.append([sum(ginv[k][t] * vec[t] for t in range(len(vec))) for k in range(n_out)])
        out.append(row)
    return out


def transport(cp: CourantPairData, gA, gL) -> CourantPairData:
    """The isomorphic pair in the bases given by the columns of gA (on A) and gL (on L)."""
    nA, nL = cp.dimA, cp.dimL
    gAi, gLi = _inverse(gA) if nA else [], _inverse(gL) if nL else []
    assoc = _transform_tensor(cp.assoc, gA, gAi, gA, gAi, nA, nA, nA) if nA else []
    br = _transform_tensor(cp.bracket, gL, gLi, gL, gLi, nL, nL, nL)
    anchor = []
    for i in range(nL):
        M = [[sum(gL[s][i] * cp.anchor[s][r][c] for s in range(nL)) for c in range(nA)] for r in range(nA)]
        MA = [[sum(M[r][k] * gA[k][c] for k in range(nA)) for c in range(nA)] for r in range(nA)]
        anchor.append([[sum(gAi[r][k] * MA[k][c] for k in range(nA)) for c in range(nA)] for r in range(nA)])
    return CourantPairData(nA, nL, assoc, br, anchor, list(cp.labelsA), list(cp.labelsL), cp.field)


def random_structures(count, seed=0):
    """Validated pairs of dimension <= 3 obtained from the gallery by random base changes."""
    rng = random.Random(seed)
    sources = [("p1", "1"), ("p1", "3"), ("p1", "-1/2"), ("p2", None), ("heisenberg-lie", None),
               ("idempotent-leibniz", None), ("hemisemidirect-demo", None)]
    out = []
    while len(out) < count:
        name, xi = sources[len(out) % len(sources)]
        cp = pair(name, xi)
        gA = random_invertible(cp.dimA, rng)
        gL = gA if cp.is_poisson_type() and rng.random() < 0.6 else random_invertible(cp.dimL, rng)
        new = transport(cp, gA, gL)
        assert not validate(new)
        out.append((f"{name}#{len(out)}", new))
    return out


@pytest.fixture(scope="session")
def p1_one():
    return pair("p1", "1")


@pytest.fixture(scope="session")
def p2():
    return pair("p2")


def differential_failures(cx):
    """Broken square-zero or (anti)commutation relations of a complex, up to its cap."""
    bad = []
    for n in range(0, cx.cap - 1):
        if not (cx.total_delta(n + 1) @ cx.total_delta(n)).is_zero():
            bad.append(("tot^2", n))
    for n in range(0, cx.cap - 1):
        for p, q in cx.components(n):
            if cx.base == "poisson" and p == 0:
                continue
            vert = "v" if (cx.base == "courant" and p == 0) else "H"
            if not (cx.block("H", p + 1, q) @ cx.block(vert, p, q)).is_zero():
                bad.append(("H^2", p, q))
            if not (cx.block("L", p, q + 1) @ cx.block("L", p, q)).is_zero():
                bad.append(("L^2", p, q))
            vert_up = "v" if (cx.base == "courant" and p == 0) else "H"
            lhs = (cx.block(vert_up, p, q + 1) @ cx.block("L", p, q)).to_dense()
            rhs = (cx.block("L", p + 1, q) @ cx.block(vert, p, q)).to_dense()
            expect = rhs.scale(-1) if (cx.base == "poisson" and p == 1) else rhs
            if lhs != expect:
                bad.append(("HL", p, q))
    return bad


def hemisemidirect_cases():
    from courant_deform.algebra import HEISENBERG_BRACKET, hemisemidirect
    trivial = [[[0]], [[0]], [[0]]]
    return [("heisenberg-trivial-module", hemisemidirect(HEISENBERG_BRACKET, trivial)),
            ("heisenberg-adjoint", hemisemidirect(HEISENBERG_BRACKET, HEISENBERG_BRACKET))]


@functools.lru_cache(maxsize=None)
def relation_report():
    """Relation failures over every structure named in the differential criterion."""
    from courant_deform.cochain import Complex
    cases = [("p1[symbolic]", pair("p1"))] + [(f"p1[{x}]", pair("p1", x)) for x in XI_VALUES]
    cases += [("p2", pair("p2")), ("hemisemidirect-demo", pair("hemisemidirect-demo"))]
    cases += [(name, CourantPairData(0, len(br), [], br, [[] for _ in br])) for name, br in hemisemidirect_cases()]
    cases += random_structures(50)
    out = {}
    for name, cp in cases:
        for flavor in ("courant", "poisson"):
            if flavor == "poisson" and not cp.is_poisson_type():
                continue
            out[(name, flavor)] = differential_failures(Complex(flavor, cp, cap=4))
    return out
