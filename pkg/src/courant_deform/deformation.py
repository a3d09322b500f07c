"""Deformations of Courant pairs over commutative local bases.

A local base R is stored in adapted form: basis (1, m_1, ..., m_n) where
the m_i span the maximal ideal, with m_i m_j = sum_k mult[i][j][k] m_k.  The
augmentation is the first coordinate.  A deformation over R is given by one
degree-2 triple (a1, a2, a3) per ideal basis element:

    a .b   = 1 (x) ab      + sum_i m_i (x) a1_i(a, b)
    mu(x)a = 1 (x) mu(x)a  + sum_i m_i (x) a2_i(x, a)
    [x, y] = 1 (x) [x, y]  + sum_i m_i (x) a3_i(x, y)

extended R-bilinearly.  Triples are ExactMatrix objects with the usual
(codim x domain) layout: a1 is dimA x dimA^2, a2 is dimA x (dimL dimA) with
the L-argument first, a3 is dimL x dimL^2.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .algebra import CourantPairData, format_scalar
from .cochain import Complex, CochainError, ResourceCapError, total_cochain, _index, _strides
from .cohomology import CohomologySummary, NotACocycle, build_summary, class_of, class_rank, is_coboundary
from .exactmath import QQ, EchelonBasis, ExactMatrix, Field, SparseMatrix, solve_sparse, sparse_to_dense


class DeformationError(Exception):
    pass


class BaseError(DeformationError):
    pass


class HomError(DeformationError):
    pass


class ExtensionError(DeformationError):
    pass


class CertificateError(DeformationError):
    pass


# ---------------------------------------------------------------------------
# local bases


@dataclass
class LocalBase:
    n: int
    mult: list
    labels: list = dc_field(default_factory=list)
    field: Field = QQ

    def __post_init__(self):
        if not self.labels:
            self.labels = [f"m{i + 1}" for i in range(self.n)]
        if len(self.labels) != self.n:
            raise BaseError("label count does not match the ideal dimension")
        fld = self.field
        try:
            self.mult = [[[fld.coerce(self.mult[i][j][k]) for k in range(self.n)]
                          for j in range(self.n)] for i in range(self.n)]
        except (IndexError, TypeError) as exc:
            raise BaseError("multiplication table has the wrong shape") from exc
        self._table = None

    @property
    def dimR(self) -> int:
        return self.n + 1

    @classmethod
    def ground(cls, field: Field = QQ) -> "LocalBase":
        return cls(0, [], [], field)

    @classmethod
    def infinitesimal(cls, n: int, labels: Sequence[str] = (), field: Field = QQ) -> "LocalBase":
        z = field.zero()
        return cls(n, [[[z] * n for _ in range(n)] for _ in range(n)], list(labels), field)

    @classmethod
    def truncated(cls, k: int, var: str = "t", field: Field = QQ) -> "LocalBase":
        """K[t]/(t^k) with ideal basis t, t^2, ..., t^(k-1)."""
        n = k - 1
        mult = [[[0] * n for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                e = (i + 1) + (j + 1)
                if e < k:
                    mult[i][j][e - 1] = 1
        labels = [var if i == 0 else f"{var}^{i + 1}" for i in range(n)]
        return cls(n, mult, labels, field)

    def epsilon(self) -> list:
        return [self.field.one()] + [self.field.zero()] * self.n

    def structure_constants(self) -> list:
        """Full (n+1)^3 table on the basis (1, m_1, ..., m_n)."""
        N = self.dimR
        z, one = self.field.zero(), self.field.one()
        out = [[[z] * N for _ in range(N)] for _ in range(N)]
        for s in range(N):
            out[0][s][s] = one
            out[s][0][s] = one
        for i in range(self.n):
            for j in range(self.n):
                for k in range(self.n):
                    out[i + 1][j + 1][k + 1] = self.mult[i][j][k]
        return out

    def table(self) -> dict:
        """Sparse product of basis elements: (s, t) -> [(u, coeff), ...]."""
        if self._table is None:
            one = self.field.one()
            tab = {}
            for s in range(self.dimR):
                tab[(0, s)] = [(s, one)]
                tab[(s, 0)] = [(s, one)]
            for i in range(self.n):
                for j in range(self.n):
                    tab[(i + 1, j + 1)] = [(k + 1, c) for k, c in enumerate(self.mult[i][j]) if c]
            self._table = tab
        return self._table

    def mul(self, u: Sequence, v: Sequence) -> list:
        out = [self.field.zero()] * self.dimR
        tab = self.table()
        for s, a in enumerate(u):
            if not a:
                continue
            for t, b in enumerate(v):
                if not b:
                    continue
                for w, c in tab[(s, t)]:
                    out[w] = out[w] + a * b * c
        return out

    def ideal_power_bases(self) -> list:
        """Echelon bases of M, M^2, ... (ideal coordinates), stopping at zero."""
        cur = [{i: self.field.one()} for i in range(self.n)]
        out = []
        for _ in range(self.n + 2):
            eb = EchelonBasis()
            kept = [v for v in cur if eb.add(v)]
            out.append((eb, kept))
            if not kept:
                break
            nxt = []
            for v in kept:
                for i in range(self.n):
                    w: dict = {}
                    for j, c in v.items():
                        for k, d in enumerate(self.mult[j][i]):
                            if d:
                                nv = w.get(k, 0) + c * d
                                if nv:
                                    w[k] = nv
                                else:
                                    w.pop(k, None)
                    if w:
                        nxt.append(w)
            cur = nxt
        return out

    def nilpotency_index(self) -> int:
        """Smallest k with M^k = 0 (k = 1 for the ground field)."""
        for k, (_, kept) in enumerate(self.ideal_power_bases(), start=1):
            if not kept:
                return k
        raise BaseError("maximal ideal is not nilpotent")

    def is_infinitesimal(self) -> bool:
        return not any(c for a in self.mult for b in a for c in b)

    def validate(self) -> list[str]:
        errs = []
        n, m = self.n, self.mult
        for i, j, k in itertools.product(range(n), repeat=3):
            if m[i][j][k] != m[j][i][k]:
                errs.append(f"not commutative at ({self.labels[i]}, {self.labels[j]})")
                break
        tab = self.table()

        def prod(u: dict, t: int) -> dict:
            out: dict = {}
            for s_, c in u.items():
                for w, d in tab[(s_, t)]:
                    nv = out.get(w, 0) + c * d
                    if nv:
                        out[w] = nv
                    else:
                        out.pop(w, None)
            return out

        for i, j, k in itertools.product(range(1, n + 1), repeat=3):
            lhs = prod(prod({i: 1}, j), k)
            rhs = prod(prod({j: 1}, k), i)
            if lhs != rhs:
                errs.append(f"not associative at ({self.labels[i - 1]}, {self.labels[j - 1]}, {self.labels[k - 1]})")
                break
        if not errs:
            try:
                self.nilpotency_index()
            except BaseError as exc:
                errs.append(str(exc))
        return errs

    def order(self, r: Sequence) -> int:
        """Largest k with r in M^k (a huge number for r = 0); r is a full R-vector."""
        if not any(r):
            return 10 ** 9
        if r[0]:
            return 0
        v = {i - 1: c for i, c in enumerate(r) if i and c}
        k = 0
        for depth, (eb, kept) in enumerate(self.ideal_power_bases(), start=1):
            if kept and eb.contains(v):
                k = depth
            else:
                break
        return k

    def __eq__(self, other) -> bool:
        return (isinstance(other, LocalBase) and self.n == other.n and self.mult == other.mult
                and self.field is other.field)


@dataclass
class RingHom:
    """Augmentation-preserving algebra map R -> R2; columns are images of (1, m_1, ...)."""

    src: LocalBase
    dst: LocalBase
    matrix: list

    def __post_init__(self):
        fld = self.dst.field
        if len(self.matrix) != self.dst.dimR or any(len(r) != self.src.dimR for r in self.matrix):
            raise HomError("hom matrix has the wrong shape")
        self.matrix = [[fld.coerce(x) for x in r] for r in self.matrix]
        col0 = [r[0] for r in self.matrix]
        if col0 != self.dst.epsilon():
            raise HomError("hom does not send 1 to 1")
        if any(self.matrix[0][s] for s in range(1, self.src.dimR)):
            raise HomError("hom does not preserve the augmentation")
        for i in range(self.src.n):
            for j in range(self.src.n):
                lhs = self.image([0] + self.src.mult[i][j])
                rhs = self.dst.mul(self.column(i + 1), self.column(j + 1))
                if lhs != rhs:
                    raise HomError(f"hom is not multiplicative on ({self.src.labels[i]}, {self.src.labels[j]})")

    def column(self, s: int) -> list:
        return [r[s] for r in self.matrix]

    def image(self, v: Sequence) -> list:
        return [sum((a * b for a, b in zip(r, v) if a and b), self.dst.field.zero()) for r in self.matrix]

    @classmethod
    def from_ideal_images(cls, src: LocalBase, dst: LocalBase, images: Sequence[Sequence]) -> "RingHom":
        """images[i] gives hom(m_i) in dst's ideal coordinates."""
        fld = dst.field
        cols = [[fld.one()] + [fld.zero()] * dst.n]
        for im in images:
            if len(im) != dst.n:
                raise HomError("ideal image has the wrong length")
            cols.append([fld.zero()] + [fld.coerce(x) for x in im])
        mat = [[cols[s][r] for s in range(src.dimR)] for r in range(dst.dimR)]
        return cls(src, dst, mat)

    @classmethod
    def augmentation(cls, src: LocalBase) -> "RingHom":
        return cls.from_ideal_images(src, LocalBase.ground(src.field), [[] for _ in range(src.n)])

    @classmethod
    def identity(cls, src: LocalBase) -> "RingHom":
        fld = src.field
        imgs = [[fld.one() if k == i else fld.zero() for k in range(src.n)] for i in range(src.n)]
        return cls.from_ideal_images(src, src, imgs)


# ---------------------------------------------------------------------------
# deformation data


Triple = tuple  # (a1, a2, a3) as ExactMatrix


def zero_triple(cp: CourantPairData) -> Triple:
    fld = cp.field
    return (ExactMatrix.zeros(cp.dimA, cp.dimA ** 2, fld),
            ExactMatrix.zeros(cp.dimA, cp.dimL * cp.dimA, fld),
            ExactMatrix.zeros(cp.dimL, cp.dimL ** 2, fld))


def _check_triple(t: Triple, cp: CourantPairData) -> None:
    shapes = ((cp.dimA, cp.dimA ** 2), (cp.dimA, cp.dimL * cp.dimA), (cp.dimL, cp.dimL ** 2))
    if len(t) != 3 or any(m.shape != s for m, s in zip(t, shapes)):
        raise DeformationError("triple shapes do not fit the pair")


def triple_add(t1: Triple, t2: Triple, c=1) -> Triple:
    return tuple(a + b.scale(c) for a, b in zip(t1, t2))


@dataclass
class DeformationData:
    base: LocalBase
    cp: CourantPairData
    flavor: str
    triples: list

    def __post_init__(self):
        if len(self.triples) != self.base.n:
            raise DeformationError(f"{len(self.triples)} triples for an ideal of dimension {self.base.n}")
        for t in self.triples:
            _check_triple(t, self.cp)
        if self.flavor != "courant":
            if not self.cp.is_poisson_type() and self.flavor == "poisson":
                raise DeformationError("poisson flavor needs A = L with the adjoint anchor")
            if self.cp.is_poisson_type():
                for t in self.triples:
                    if t[1] != t[2]:
                        raise DeformationError("for A = L the anchor deformation must equal the bracket deformation")

    def __eq__(self, other) -> bool:
        return (isinstance(other, DeformationData) and self.base == other.base and self.flavor == other.flavor
                and self.cp == other.cp and self.triples == other.triples)


def trivial_deformation(cp: CourantPairData, base: LocalBase, flavor: str = "courant") -> DeformationData:
    return DeformationData(base, cp, flavor, [zero_triple(cp) for _ in range(base.n)])


def _complex(flavor: str, cp: CourantPairData) -> Complex:
    return Complex(flavor, cp)


def triple_to_vector(t: Triple, flavor: str, cp: CourantPairData) -> list:
    """Degree-2 cochain vector of a triple in the given flavor's ordering."""
    a1, a2, a3 = t
    flat = lambda m: [v for r in m.entries for v in r]
    cx = _complex(flavor, cp)
    if cx.base == "courant":
        return flat(a3) + flat(a2) + flat(a1)
    return flat(a3) + flat(a1)


def vector_to_triple(vec: Sequence, flavor: str, cp: CourantPairData) -> Triple:
    fld = cp.field
    nA, nL = cp.dimA, cp.dimL
    cx = _complex(flavor, cp)

    def mat(seg, rows, cols):
        return ExactMatrix([list(seg[r * cols:(r + 1) * cols]) for r in range(rows)], cols, fld)

    if cx.base == "courant":
        s3 = nL * nL ** 2
        s2 = nA * nL * nA
        a3 = mat(vec[:s3], nL, nL ** 2)
        a2 = mat(vec[s3:s3 + s2], nA, nL * nA)
        a1 = mat(vec[s3 + s2:], nA, nA ** 2)
        return (a1, a2, a3)
    s = nA ** 3
    phi = mat(vec[:s], nA, nA ** 2)
    return (mat(vec[s:], nA, nA ** 2), phi, phi)


def degree1_to_vector(g1: ExactMatrix, g2: ExactMatrix, flavor: str, cp: CourantPairData) -> list:
    """Degree-1 cochain (g1 on A, g2 on L) in flavor ordering."""
    flat = lambda m: [v for r in m.entries for v in r]
    cx = _complex(flavor, cp)
    if cx.base == "courant":
        return flat(g2) + flat(g1)
    return flat(g1)


# -- R-valued operations ------------------------------------------------------


def _tensor_of(m: ExactMatrix, d1: int, d2: int) -> list:
    """Bilinear tensor T[i][j] -> list of (k, coeff) from a (codim x d1 d2) matrix."""
    out = [[[] for _ in range(d2)] for _ in range(d1)]
    for k, row in enumerate(m.entries):
        for col, v in enumerate(row):
            if v:
                out[col // d2][col % d2].append((k, v))
    return out


class _Ops:
    """The R-bilinear operations of a deformation, on sparse elements of R (x) V.

    An element is a dict {(s, k): coeff} for r_s (x) v_k.
    """

    def __init__(self, d: DeformationData, extra: Sequence[Triple] = (), base: LocalBase | None = None):
        cp = d.cp
        self.base = base if base is not None else d.base
        self.cp = cp
        nA, nL = cp.dimA, cp.dimL
        prod0 = ExactMatrix([[cp.assoc[i][j][k] for i in range(nA) for j in range(nA)] for k in range(nA)],
                            nA * nA, cp.field)
        anc0 = ExactMatrix([[cp.anchor[x][k][a] for x in range(nL) for a in range(nA)] for k in range(nA)],
                           nL * nA, cp.field)
        br0 = ExactMatrix([[cp.bracket[i][j][k] for i in range(nL) for j in range(nL)] for k in range(nL)],
                          nL * nL, cp.field)
        triples = list(d.triples) + list(extra)
        if len(triples) != self.base.n:
            raise DeformationError("triple count does not match the base")
        self.P = [_tensor_of(prod0, nA, nA)] + [_tensor_of(t[0], nA, nA) for t in triples]
        self.U = [_tensor_of(anc0, nL, nA)] + [_tensor_of(t[1], nL, nA) for t in triples]
        self.B = [_tensor_of(br0, nL, nL)] + [_tensor_of(t[2], nL, nL) for t in triples]
        self.tab = self.base.table()

    def apply(self, C: list, u: dict, v: dict) -> dict:
        out: dict = {}
        tab = self.tab
        for (s, i), a in u.items():
            for (t, j), b in v.items():
                ab = a * b
                st = tab[(s, t)]
                for w, Cw in enumerate(C):
                    terms = Cw[i][j]
                    if not terms:
                        continue
                    for s1, c1 in st:
                        for u2, c2 in tab[(s1, w)]:
                            f = ab * c1 * c2
                            for k, c in terms:
                                key = (u2, k)
                                nv = out.get(key, 0) + f * c
                                if nv:
                                    out[key] = nv
                                else:
                                    out.pop(key, None)
        return out


def _sub(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, x in v.items():
        nv = out.get(k, 0) - x
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _add(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, x in v.items():
        nv = out.get(k, 0) + x
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def _unit(k: int, fld: Field) -> dict:
    return {(0, k): fld.one()}


def _defects(ops: _Ops):
    """Yield (axiom, indices, lhs, rhs, (out_space, arg_spaces)) for every basis tuple."""
    cp = ops.cp
    fld = cp.field
    nA, nL = cp.dimA, cp.dimL
    A = [_unit(i, fld) for i in range(nA)]
    L = [_unit(i, fld) for i in range(nL)]
    P, U, B, ap = ops.P, ops.U, ops.B, ops.apply
    for i, j, k in itertools.product(range(nA), repeat=3):
        yield ("associativity", (i, j, k), ap(P, A[i], ap(P, A[j], A[k])), ap(P, ap(P, A[i], A[j]), A[k]))
    for i, j, k in itertools.product(range(nL), repeat=3):
        lhs = _add(ap(B, ap(B, L[i], L[j]), L[k]), ap(B, L[j], ap(B, L[i], L[k])))
        yield ("leibniz", (i, j, k), lhs, ap(B, L[i], ap(B, L[j], L[k])))
    for x, a, b in itertools.product(range(nL), range(nA), range(nA)):
        lhs = _add(ap(P, ap(U, L[x], A[a]), A[b]), ap(P, A[a], ap(U, L[x], A[b])))
        yield ("anchor-derivation", (x, a, b), lhs, ap(U, L[x], ap(P, A[a], A[b])))
    for x, y, a in itertools.product(range(nL), range(nL), range(nA)):
        lhs = ap(U, ap(B, L[x], L[y]), A[a])
        rhs = _sub(ap(U, L[x], ap(U, L[y], A[a])), ap(U, L[y], ap(U, L[x], A[a])))
        yield ("anchor-homomorphism", (x, y, a), lhs, rhs)


@dataclass(frozen=True)
class DeformationWitness:
    axiom: str
    indices: tuple
    order: int
    difference: tuple  # ((base label, vector index, coeff), ...)

    def describe(self) -> str:
        diff = " + ".join(f"{format_scalar(c)}*{b}(x)v{k + 1}" for b, k, c in self.difference)
        return f"{self.axiom} at {self.indices} fails at order {self.order}: lhs - rhs = {diff}"


def _witness(base: LocalBase, axiom, idx, lhs, rhs) -> DeformationWitness | None:
    diff = _sub(lhs, rhs)
    if not diff:
        return None
    names = ["1"] + list(base.labels)
    order = 10 ** 9
    by_k: dict = {}
    for (s, k), c in diff.items():
        by_k.setdefault(k, [base.field.zero()] * base.dimR)[s] = c
    for vec in by_k.values():
        order = min(order, base.order(vec))
    terms = tuple((names[s], k, c) for (s, k), c in sorted(diff.items()))
    return DeformationWitness(axiom, idx, order, terms)


def check_deformation(d: DeformationData, check_alpha: bool = True) -> list:
    """Witnesses of axiom failures over the base; empty when d is a deformation."""
    errs = d.base.validate()
    if errs:
        raise BaseError("; ".join(errs))
    ops = _Ops(d)
    out = []
    for axiom, idx, lhs, rhs in _defects(ops):
        w = _witness(d.base, axiom, idx, lhs, rhs)
        if w is not None:
            out.append(w)
    if not out and check_alpha:
        for k, ok in alpha_cocycle_report(d):
            if not ok:
                out.append(DeformationWitness("alpha-cocycle", (k,), 1, ()))
    return out


def alpha_cocycle_report(d: DeformationData) -> list:
    """For a basis of functionals on M vanishing on M^2, is alpha_xi closed?"""
    fld = d.cp.field
    base = d.base
    # functionals xi on M with xi(M^2) = 0: kernel of the transpose of the products
    rows = []
    for i in range(base.n):
        for j in range(base.n):
            r = {k: c for k, c in enumerate(base.mult[i][j]) if c}
            if r:
                rows.append(r)
    sq = SparseMatrix(len(rows), base.n, [dict() for _ in range(base.n)], fld)
    for ri, r in enumerate(rows):
        for k, c in r.items():
            sq.cols[k][ri] = c
    funcs = sq.kernel() if rows else [{i: fld.one()} for i in range(base.n)]
    cx = _complex(d.flavor, d.cp)
    delta = cx.total_delta(2)
    out = []
    for k, xi in enumerate(funcs):
        t = zero_triple(d.cp)
        for i, c in xi.items():
            t = triple_add(t, d.triples[i], c)
        vec = triple_to_vector(t, d.flavor, d.cp)
        out.append((k, not delta.apply_sparse({i: v for i, v in enumerate(vec) if v})))
    return out


def fiber(d: DeformationData) -> CourantPairData:
    """The structure obtained by applying the augmentation to every operation."""
    ops = _Ops(d)
    cp = d.cp
    fld = cp.field
    nA, nL = cp.dimA, cp.dimL
    A = [_unit(i, fld) for i in range(nA)]
    L = [_unit(i, fld) for i in range(nL)]

    def at0(e, dim):
        return [e.get((0, k), fld.zero()) for k in range(dim)]

    assoc = [[at0(ops.apply(ops.P, A[i], A[j]), nA) for j in range(nA)] for i in range(nA)]
    br = [[at0(ops.apply(ops.B, L[i], L[j]), nL) for j in range(nL)] for i in range(nL)]
    anchor = [[[ops.apply(ops.U, L[x], A[c]).get((0, r), fld.zero()) for c in range(nA)] for r in range(nA)]
              for x in range(nL)]
    return CourantPairData(nA, nL, assoc, br, anchor, list(cp.labelsA), list(cp.labelsL), fld)


# ---------------------------------------------------------------------------
# universal infinitesimal deformation, push-outs, equivalence


_SUMMARIES: dict = {}


def summary_for(flavor: str, n: int, cp: CourantPairData) -> CohomologySummary:
    """Cohomology summary cached per (flavor, degree, structure)."""
    key = (flavor, n, repr(cp.assoc), repr(cp.bracket), repr(cp.anchor), cp.field.name)
    s = _SUMMARIES.get(key)
    if s is None:
        s = build_summary(_complex(flavor, cp), n)
        _SUMMARIES[key] = s
    return s


def universal_infinitesimal(cp: CourantPairData, flavor: str = "courant",
                            representatives: Sequence[Sequence] | None = None) -> DeformationData:
    """eta_1 over C_1 = K + H' where H is the degree-2 cohomology of the flavor.

    ``representatives`` optionally replaces the default cocycle choice; they
    must be cocycles whose classes form a basis of H.
    """
    summ = summary_for(flavor, 2, cp)
    if representatives is None:
        reps = [c.vector() for c in summ.nu]
    else:
        reps = [list(r) for r in representatives]
        if len(reps) != summ.dimH:
            raise DeformationError(f"need {summ.dimH} representatives, got {len(reps)}")
        for r in reps:
            class_of(r, summ)
        if class_rank(reps, summ) != summ.dimH:
            raise DeformationError("representatives do not form a basis of the cohomology")
    base = LocalBase.infinitesimal(len(reps), [f"g{i + 1}" for i in range(len(reps))], cp.field)
    return DeformationData(base, cp, flavor, [vector_to_triple(r, flavor, cp) for r in reps])


def push_out(d: DeformationData, hom: RingHom) -> DeformationData:
    if hom.src != d.base:
        raise HomError("hom source is not the deformation base")
    dst = hom.dst
    triples = []
    for j in range(dst.n):
        t = zero_triple(d.cp)
        for i in range(d.base.n):
            c = hom.matrix[j + 1][i + 1]
            if c:
                t = triple_add(t, d.triples[i], c)
        triples.append(t)
    return DeformationData(dst, d.cp, d.flavor, triples)


def equivalent_infinitesimal(d1: DeformationData, d2: DeformationData) -> bool:
    if d1.base != d2.base:
        raise BaseError("deformations have different bases")
    if not d1.base.is_infinitesimal():
        raise BaseError("equivalence is decided only over bases with M^2 = 0")
    if d1.cp != d2.cp or d1.flavor != d2.flavor:
        raise DeformationError("deformations of different structures")
    summ = summary_for(d1.flavor, 2, d1.cp)
    for t1, t2 in zip(d1.triples, d2.triples):
        c1 = class_of(triple_to_vector(t1, d1.flavor, d1.cp), summ)
        c2 = class_of(triple_to_vector(t2, d2.flavor, d2.cp), summ)
        if c1 != c2:
            return False
    return True


def classifying_map(d: DeformationData, eta: DeformationData) -> RingHom:
    """The hom C_1 -> R with push_out(eta, hom) equivalent to the infinitesimal d.

    eta must be a universal infinitesimal deformation of the same structure.
    """
    if not d.base.is_infinitesimal():
        raise BaseError("classifying map needs an infinitesimal base")
    summ = summary_for(eta.flavor, 2, eta.cp)
    eta_vecs = [triple_to_vector(t, eta.flavor, eta.cp) for t in eta.triples]
    # class coordinates of eta's triples in the summary basis
    E = [class_of(v, summ) for v in eta_vecs]
    images = [[eta.cp.field.zero()] * d.base.n for _ in range(eta.base.n)]
    for j, t in enumerate(d.triples):
        c = class_of(triple_to_vector(t, d.flavor, d.cp), summ)
        cols = [{k: x for k, x in enumerate(e) if x} for e in E]
        x = solve_sparse(cols, {k: v for k, v in enumerate(c) if v}, eta.cp.field)
        if x is None:
            raise DeformationError("eta does not span the cohomology")
        for i, xi in enumerate(x):
            images[i][j] = xi
    return RingHom.from_ideal_images(eta.base, d.base, images)


# ---------------------------------------------------------------------------
# extensions and obstructions


@dataclass
class ExtensionSpec:
    """S = R + K^r with m_i m_j picking up sum_l psi[l][i][j] n_l.

    psi[l] is a symmetric n x n matrix: the normalized Harrison 2-cocycle on
    the ideal with values in the l-th coordinate.  The section is the
    standard one, n_i = (m_i, 0) and n_{n+l} = (0, e_l).
    """

    base: LocalBase
    psi: list
    labels: list = dc_field(default_factory=list)

    def __post_init__(self):
        fld = self.base.field
        n = self.base.n
        self.psi = [[[fld.coerce(x) for x in row] for row in p] for p in self.psi]
        for p in self.psi:
            if len(p) != n or any(len(r) != n for r in p):
                raise ExtensionError("cocycle matrix has the wrong shape")
        if not self.labels:
            self.labels = [f"n{i + 1}" for i in range(len(self.psi))]
        errs = self.total_base().validate()
        if errs:
            raise ExtensionError("extension is not a commutative local algebra: " + "; ".join(errs))

    @property
    def r(self) -> int:
        return len(self.psi)

    def total_base(self) -> LocalBase:
        R = self.base
        n, r = R.n, self.r
        N = n + r
        z = R.field.zero()
        mult = [[[z] * N for _ in range(N)] for _ in range(N)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    mult[i][j][k] = R.mult[i][j][k]
                for l in range(r):
                    mult[i][j][n + l] = self.psi[l][i][j]
        return LocalBase(N, mult, list(R.labels) + list(self.labels), R.field)

    def projection(self) -> RingHom:
        S = self.total_base()
        R = self.base
        fld = R.field
        imgs = [[fld.one() if k == i else fld.zero() for k in range(R.n)] for i in range(R.n)]
        imgs += [[fld.zero()] * R.n for _ in range(self.r)]
        return RingHom.from_ideal_images(S, R, imgs)

    @classmethod
    def truncated(cls, k: int, var: str = "t", field: Field = QQ) -> "ExtensionSpec":
        """K[t]/(t^k) -> K[t]/(t^(k+1)), the cocycle t^i t^j -> [i + j = k]."""
        R = LocalBase.truncated(k, var, field)
        n = R.n
        psi = [[1 if (i + 1) + (j + 1) == k else 0 for j in range(n)] for i in range(n)]
        return cls(R, [psi], [var if k == 1 else f"{var}^{k}"])


@dataclass
class ObstructionResult:
    thetas: list  # TotalCochain of degree 3, one per new coordinate
    classes: list  # H^3 coordinates, one per new coordinate
    summary: CohomologySummary = dc_field(repr=False, compare=False, default=None)

    @property
    def theta(self):
        return self.thetas[0]

    @property
    def class_(self) -> list:
        return self.classes[0]

    def vanishes(self) -> bool:
        return all(not any(c) for c in self.classes)


def _theta_vectors(d: DeformationData, ext: ExtensionSpec, lifts: Sequence[Triple]) -> list:
    """Coefficient of each new coordinate in the axiom defects, as degree-3 vectors."""
    if ext.base != d.base:
        raise ExtensionError("extension does not extend the deformation base")
    S = ext.total_base()
    ops = _Ops(d, lifts, S)
    cx = _complex(d.flavor, d.cp)
    offs = cx.offsets(3)
    fld = d.cp.field
    n = d.base.n
    vecs = [dict() for _ in range(ext.r)]
    poisson = cx.base == "poisson"

    def put(l, comp, r, args, val):
        p, q = comp
        dims = cx.domain_dims(p, q)
        D = 1
        for x in dims:
            D *= x
        idx = offs[comp] + r * D + _index(args, _strides(dims))
        nv = vecs[l].get(idx, 0) + val
        if nv:
            vecs[l][idx] = nv
        else:
            vecs[l].pop(idx, None)

    where = {
        "associativity": (3, 0),
        "anchor-derivation": (2, 1),
        "anchor-homomorphism": None if poisson else (1, 2),
        "leibniz": (1, 2) if poisson else (0, 3),
    }
    for axiom, idx, lhs, rhs in _defects(ops):
        # each defect is written so that its linear part is +delta_tot
        diff = _sub(lhs, rhs)
        for (s, k), c in diff.items():
            if s <= n:
                raise ExtensionError(f"{axiom} fails below the new coordinates; the input is not a deformation")
            comp = where[axiom]
            if comp is None:
                continue
            put(s - n - 1, comp, k, idx, c)
    return [sparse_to_dense(v, cx.dim(3), fld) for v in vecs]


def random_triple(cp: CourantPairData, flavor: str, rng: random.Random, span: int = 5) -> Triple:
    """A random degree-2 cochain of the flavor, as a triple."""
    cx = _complex(flavor, cp)
    vec = [cp.field.coerce(Fraction(rng.randint(-span, span), rng.randint(1, 3))) for _ in range(cx.dim(2))]
    return vector_to_triple(vec, flavor, cp)


def obstruction(d: DeformationData, ext: ExtensionSpec, lift: Sequence[Triple] | None = None,
                summary: CohomologySummary | None = None, recheck_seed: int | None = 0) -> ObstructionResult:
    """Obstruction cocycles for extending d along ext, with their H^3 classes.

    ``lift`` gives one triple per new coordinate (default zero).  When
    ``recheck_seed`` is not None the classes are recomputed with a random
    second lift and compared.
    """
    lifts = list(lift) if lift is not None else [zero_triple(d.cp) for _ in range(ext.r)]
    if len(lifts) != ext.r:
        raise ExtensionError("one lift triple per new coordinate is required")
    cx = _complex(d.flavor, d.cp)
    vecs = _theta_vectors(d, ext, lifts)
    delta3 = cx.total_delta(3)
    for v in vecs:
        if delta3.apply(v) != [cx.field.zero()] * cx.dim(4):
            raise CochainError("obstruction cochain is not closed")
    summ = summary if summary is not None else summary_for(d.flavor, 3, d.cp)
    classes = [class_of(v, summ) for v in vecs]
    if recheck_seed is not None:
        rng = random.Random(recheck_seed)
        other = [random_triple(d.cp, d.flavor, rng) for _ in range(ext.r)]
        other_cls = [class_of(v, summ) for v in _theta_vectors(d, ext, other)]
        if other_cls != classes:
            raise DeformationError("obstruction class depends on the lift")
    thetas = [total_cochain(cx, 3, v) for v in vecs]
    return ObstructionResult(thetas, classes, summ)


def solve_correction(d: DeformationData, ext: ExtensionSpec, lift: Sequence[Triple] | None = None):
    """Triples gamma with delta_tot(gamma_l) = theta_l, or None when obstructed."""
    lifts = list(lift) if lift is not None else [zero_triple(d.cp) for _ in range(ext.r)]
    cx = _complex(d.flavor, d.cp)
    d2 = cx.total_delta(2)
    out = []
    for v in _theta_vectors(d, ext, lifts):
        x = solve_sparse(d2.cols, {i: c for i, c in enumerate(v) if c}, cx.field)
        if x is None:
            return None
        out.append(vector_to_triple(x, d.flavor, d.cp))
    return out


def extend_deformation(d: DeformationData, ext: ExtensionSpec, gamma: Sequence[Triple],
                       lift: Sequence[Triple] | None = None) -> DeformationData:
    """Deformation over S obtained by correcting the lift with gamma."""
    lifts = list(lift) if lift is not None else [zero_triple(d.cp) for _ in range(ext.r)]
    gamma = list(gamma)
    if len(gamma) != ext.r:
        raise CertificateError("one correction triple per new coordinate is required")
    cx = _complex(d.flavor, d.cp)
    d2 = cx.total_delta(2)
    for g, v in zip(gamma, _theta_vectors(d, ext, lifts)):
        _check_triple(g, d.cp)
        if d2.apply(triple_to_vector(g, d.flavor, d.cp)) != v:
            raise CertificateError("gamma does not satisfy delta_tot(gamma) = theta")
    new = [triple_add(l, g, -1) for l, g in zip(lifts, gamma)]
    out = DeformationData(ext.total_base(), d.cp, d.flavor, list(d.triples) + new)
    bad = check_deformation(out)
    if bad:
        raise DeformationError("extended structure fails: " + bad[0].describe())
    return out


# ---------------------------------------------------------------------------
# Harrison cohomology of a local base with coefficients in K (via epsilon)


HARRISON_CAP = 200_000


def _shuffles(q: int, p: int):
    """Interleavings of (0..p-1) with (p..q-1) and their signs."""
    for pos in itertools.combinations(range(q), p):
        word = [0] * q
        a, b = 0, p
        for t in range(q):
            if t in pos:
                word[t] = a
                a += 1
            else:
                word[t] = b
                b += 1
        inv = sum(1 for i in range(q) for j in range(i + 1, q) if word[i] > word[j])
        yield word, (-1 if inv % 2 else 1)


def shuffle_span(N: int, q: int, fld: Field = QQ) -> list:
    """Sparse vectors in (K^N)^{(x)q} spanning the shuffle products s_p, 0 < p < q."""
    st = _strides([N] * q)
    out = []
    one = fld.one()
    for p in range(1, q):
        sh = list(_shuffles(q, p))
        for args in itertools.product(range(N), repeat=q):
            v: dict = {}
            for word, sgn in sh:
                idx = _index([args[w] for w in word], st)
                nv = v.get(idx, 0) + (one if sgn > 0 else -one)
                if nv:
                    v[idx] = nv
                else:
                    v.pop(idx, None)
            if v:
                out.append(v)
    return out


def _hochschild_scalar_delta(R: LocalBase, q: int) -> SparseMatrix:
    """delta: Hom(R^q, K) -> Hom(R^{q+1}, K) with R acting on K through epsilon."""
    N = R.dimR
    tab = R.table()
    fld = R.field
    one = fld.one()
    st_q = _strides([N] * q)
    st_q1 = _strides([N] * (q + 1))
    cols = [dict() for _ in range(N ** q)]

    def add(col, row, val):
        nv = cols[col].get(row, 0) + val
        if nv:
            cols[col][row] = nv
        else:
            cols[col].pop(row, None)

    for args in itertools.product(range(N), repeat=q + 1):
        row = _index(args, st_q1)
        # epsilon(r_1) f(r_2..)
        if args[0] == 0:
            add(_index(args[1:], st_q), row, one)
        for i in range(q):
            sign = -one if (i + 1) % 2 else one
            for w, c in tab[(args[i], args[i + 1])]:
                new = args[:i] + (w,) + args[i + 2:]
                add(_index(new, st_q), row, sign * c)
        if args[-1] == 0:
            add(_index(args[:-1], st_q), row, -one if (q + 1) % 2 else one)
    return SparseMatrix(N ** (q + 1), N ** q, cols, fld)


@dataclass
class HarrisonResult:
    q: int
    dimZ: int
    dimB: int
    dimH: int
    representatives: list  # sparse vectors on R^{(x)q}, normalized
    derivation_dim: int | None = None


def _harrison_cochains(R: LocalBase, q: int) -> list:
    """Basis of cochains on R^{(x)q} vanishing on shuffle products."""
    N = R.dimR
    fld = R.field
    if q <= 1:
        return [{i: fld.one()} for i in range(N ** q)]
    sh = shuffle_span(N, q, fld)
    m = SparseMatrix(len(sh), N ** q, [dict() for _ in range(N ** q)], fld)
    for ri, v in enumerate(sh):
        for k, c in v.items():
            m.cols[k][ri] = c
    return m.kernel()


def derivations(R: LocalBase) -> int:
    """dim Der(R, K) by solving d(rs) = eps(r) d(s) + d(r) eps(s) directly."""
    N = R.dimR
    fld = R.field
    rows = []
    for s in range(N):
        for t in range(N):
            r: dict = {}
            for w, c in R.table()[(s, t)]:
                r[w] = r.get(w, 0) + c
            if s == 0:
                r[t] = r.get(t, 0) - 1
            if t == 0:
                r[s] = r.get(s, 0) - 1
            r = {k: fld.coerce(v) for k, v in r.items() if v}
            if r:
                rows.append(r)
    m = SparseMatrix(len(rows), N, [dict() for _ in range(N)], fld)
    for ri, r in enumerate(rows):
        for k, c in r.items():
            m.cols[k][ri] = c
    return N - m.rank()


def _restrict(d: SparseMatrix, basis: list) -> SparseMatrix:
    return SparseMatrix(d.nrows, len(basis), [d.apply_sparse(b) for b in basis], d.field)


def _combine(coeffs: dict, basis: list) -> dict:
    out: dict = {}
    for j, c in coeffs.items():
        for i, x in basis[j].items():
            nv = out.get(i, 0) + c * x
            if nv:
                out[i] = nv
            else:
                out.pop(i, None)
    return out


def _is_normalized(v: dict, N: int, q: int) -> bool:
    for idx in v:
        for t in range(q):
            if (idx // N ** (q - 1 - t)) % N == 0:
                return False
    return True


def harrison_cohomology(R: LocalBase, q: int) -> HarrisonResult:
    """H^q of the shuffle-quotient Hochschild complex of R with values in K."""
    if q < 0 or q > 3:
        raise ResourceCapError("Harrison cohomology is implemented for 0 <= q <= 3")
    N = R.dimR
    if N ** (q + 1) > HARRISON_CAP:
        raise ResourceCapError(f"Harrison complex of size {N ** (q + 1)} exceeds the cap {HARRISON_CAP}")
    fld = R.field
    ch_q = _harrison_cochains(R, q)
    dq = _restrict(_hochschild_scalar_delta(R, q), ch_q)
    z = [_combine(k, ch_q) for k in dq.kernel()]
    if q >= 1:
        ch_p = _harrison_cochains(R, q - 1)
        b_cols = _restrict(_hochschild_scalar_delta(R, q - 1), ch_p).cols
    else:
        b_cols = []
    eb = EchelonBasis()
    bdim = sum(1 for c in b_cols if c and eb.add(c))
    dimH = len(z) - bdim
    # normalized representatives: cocycles vanishing whenever an argument is 1
    norm_idx = [i for i in range(N ** q) if _is_normalized({i: 1}, N, q)]
    sel = {i: k for k, i in enumerate(norm_idx)}
    zn = []
    if norm_idx or q == 0:
        # cocycles supported on normalized coordinates
        rows = []
        full = _hochschild_scalar_delta(R, q)
        sub = SparseMatrix(full.nrows, len(norm_idx), [dict(full.cols[i]) for i in norm_idx], fld)
        # plus the shuffle conditions restricted to those coordinates
        extra = shuffle_span(N, q, fld) if q >= 2 else []
        nrows = full.nrows
        for v in extra:
            for i, c in v.items():
                if i in sel:
                    sub.cols[sel[i]][nrows] = c
            nrows += 1
        sub.nrows = nrows
        del rows
        zn = [{norm_idx[j]: c for j, c in k.items()} for k in sub.kernel()]
    reps = [v for v in zn if eb.add(v)]
    if len(reps) != dimH:
        raise DeformationError("normalized cocycles do not reach every Harrison class")
    der = derivations(R) if q == 1 else None
    if der is not None and der != dimH:
        raise DeformationError(f"H^1 = {dimH} but Der(R, K) = {der}")
    return HarrisonResult(q, len(z), bdim, dimH, reps, der)


# ---------------------------------------------------------------------------
# one step of the versal construction


@dataclass
class VersalStep:
    base: LocalBase
    deformation: DeformationData
    harrison_dim: int
    obstruction_rank: int
    kernel_dim: int
    extension: ExtensionSpec


def versal_step(C: LocalBase, eta: DeformationData, summary3: CohomologySummary | None = None) -> VersalStep:
    """Extend eta over C to the next base of the versal sequence.

    The universal extension of C by H^2_Harr(C, K) is built from normalized
    cocycle representatives; the obstruction map sends each to the H^3 class
    of its obstruction.  The new base is the extension by the kernel of that
    map (the quotient by the image of its dual), and eta is lifted across it.
    """
    if eta.base != C:
        raise BaseError("deformation does not live over the given base")
    har = harrison_cohomology(C, 2)
    N, n = C.dimR, C.n
    fld = C.field

    def ideal_matrix(v: dict) -> list:
        m = [[fld.zero()] * n for _ in range(n)]
        for idx, c in v.items():
            i, j = divmod(idx, N)
            m[i - 1][j - 1] = fld.coerce(c)
        return m

    psis = [ideal_matrix(v) for v in har.representatives]
    if not psis:
        ext = ExtensionSpec(C, [])
        return VersalStep(C, eta, 0, 0, 0, ext)
    universal = ExtensionSpec(C, psis, [f"u{i + 1}" for i in range(len(psis))])
    summ3 = summary3 if summary3 is not None else summary_for(eta.flavor, 3, eta.cp)
    obs = obstruction(eta, universal, summary=summ3, recheck_seed=None)
    # obstruction map as an (h3 x r) matrix, columns are classes
    r = len(psis)
    cols = [{k: x for k, x in enumerate(c) if x} for c in obs.classes]
    phi = SparseMatrix(summ3.dimH, r, cols, fld)
    rank = phi.rank() if summ3.dimH else 0
    kernel = phi.kernel() if summ3.dimH else [{j: fld.one()} for j in range(r)]
    new_psis = []
    for kv in kernel:
        m = [[fld.zero()] * n for _ in range(n)]
        for j, c in kv.items():
            for a in range(n):
                for b in range(n):
                    if psis[j][a][b]:
                        m[a][b] = m[a][b] + c * psis[j][a][b]
        new_psis.append(m)
    k = len(C.labels)
    ext = ExtensionSpec(C, new_psis, [f"w{k + i + 1}" for i in range(len(new_psis))])
    gamma = solve_correction(eta, ext)
    if gamma is None:
        raise DeformationError("kernel of the obstruction map is still obstructed")
    new = extend_deformation(eta, ext, gamma)
    back = push_out(new, ext.projection())
    if back != eta:
        raise DeformationError("push-out of the extended deformation does not recover the input")
    return VersalStep(ext.total_base(), new, r, rank, len(new_psis), ext)


def versal(cp: CourantPairData, flavor: str = "courant", depth: int = 2) -> list:
    """Bases and deformations C_1, ..., C_depth of the versal sequence."""
    eta = universal_infinitesimal(cp, flavor)
    out = [VersalStep(eta.base, eta, 0, 0, 0, ExtensionSpec(eta.base, []))]
    summ3 = summary_for(flavor, 3, cp) if depth > 1 else None
    for _ in range(depth - 1):
        st = versal_step(out[-1].base, out[-1].deformation, summ3)
        out.append(st)
    return out
