"""Cocycles, coboundaries and cohomology of the total complexes.

Representatives are chosen by scanning the kernel basis in order and keeping
each cocycle that is independent of the coboundaries and of the ones already
kept.  The choice is fixed, so recomputation gives identical matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .algebra import CourantModuleData, CourantPairData
from .cochain import Complex, FlavorError, TotalCochain, lp_restrict, total_cochain
from .exactmath import EchelonBasis, ExactMatrix, SparseMatrix, solve_sparse, sparse_to_dense


class NotACocycle(Exception):
    """Raised by class_of when the input is not closed."""


@dataclass
class CohomologySummary:
    flavor: str
    n: int
    dimZ: int
    dimB: int
    dimH: int
    cocycle_basis: ExactMatrix
    coboundary_basis: ExactMatrix
    representative_basis: ExactMatrix
    nu: list = dc_field(default_factory=list)
    complex: Complex | None = dc_field(default=None, repr=False, compare=False)
    _z: list = dc_field(default_factory=list, repr=False, compare=False)
    _b: list = dc_field(default_factory=list, repr=False, compare=False)
    _r: list = dc_field(default_factory=list, repr=False, compare=False)


def _cols_to_matrix(cols: Sequence[dict], n: int, fld) -> ExactMatrix:
    return ExactMatrix.from_columns([sparse_to_dense(c, n, fld) for c in cols], n, fld)


def _image_basis(d: SparseMatrix, src: SparseMatrix | None) -> list[dict]:
    """Independent image vectors of d (restricted to the columns of src)."""
    eb = EchelonBasis()
    out = []
    cols = d.cols if src is None else [d.apply_sparse(c) for c in src.cols]
    for c in cols:
        if c and eb.add(c):
            out.append(c)
    return out


def _kernel(d: SparseMatrix, src: SparseMatrix | None) -> list[dict]:
    if src is None:
        return d.kernel()
    # kernel of d restricted to span(src), mapped back to the ambient space
    comp = d @ src
    out = []
    for k in comp.kernel():
        v: dict = {}
        for j, c in k.items():
            for i, x in src.cols[j].items():
                nv = v.get(i, 0) + c * x
                if nv:
                    v[i] = nv
                else:
                    v.pop(i, None)
        out.append(v)
    return out


def build_summary(cx: Complex, n: int) -> CohomologySummary:
    """Cohomology of an existing Complex in degree n."""
    cx.check_degree(n + 1)
    fld = cx.field
    dim = cx.dim(n)
    lp = cx.flavor == "leibniz-pair"
    src_n = lp_restrict(cx, n) if lp else None
    src_prev = lp_restrict(cx, n - 1) if (lp and n >= 1) else None
    z = _kernel(cx.total_delta(n), src_n)
    b = _image_basis(cx.total_delta(n - 1), src_prev) if n >= 1 else []
    eb = EchelonBasis()
    for c in b:
        eb.add(c)
    reps = [c for c in z if eb.add(c)]
    nu = [total_cochain(cx, n, sparse_to_dense(r, dim, fld)) for r in reps]
    return CohomologySummary(
        flavor=cx.flavor, n=n, dimZ=len(z), dimB=len(b), dimH=len(reps),
        cocycle_basis=_cols_to_matrix(z, dim, fld),
        coboundary_basis=_cols_to_matrix(b, dim, fld),
        representative_basis=_cols_to_matrix(reps, dim, fld),
        nu=nu, complex=cx, _z=z, _b=b, _r=reps,
    )


def cohomology(flavor: str, n: int, cp: CourantPairData, mod: CourantModuleData | None = None,
               cap: int | None = None) -> CohomologySummary:
    return build_summary(Complex(flavor, cp, mod, cap), n)


def _as_sparse(c) -> dict:
    if isinstance(c, dict):
        return {i: v for i, v in c.items() if v}
    vec = c.vector() if isinstance(c, TotalCochain) else list(c)
    return {i: v for i, v in enumerate(vec) if v}


def is_cocycle(c, summary: CohomologySummary) -> bool:
    return not summary.complex.total_delta(summary.n).apply_sparse(_as_sparse(c))


def is_coboundary(c, summary: CohomologySummary) -> bool:
    return solve_sparse(summary._b, _as_sparse(c), summary.complex.field) is not None


def class_of(c, summary: CohomologySummary) -> list:
    """Coordinates of the class of c in the basis given by summary.nu.

    Raises NotACocycle when delta_tot c is nonzero.
    """
    if isinstance(c, TotalCochain):
        if c.flavor != summary.flavor or c.n != summary.n:
            raise FlavorError(f"cochain of {c.flavor} degree {c.n} against summary of "
                              f"{summary.flavor} degree {summary.n}")
    vec = _as_sparse(c)
    if len(c.vector() if isinstance(c, TotalCochain) else c) != summary.complex.dim(summary.n):
        raise FlavorError("cochain length does not match the summary degree")
    if not is_cocycle(c, summary):
        raise NotACocycle("delta_tot of the cochain is nonzero")
    x = solve_sparse(summary._r + summary._b, vec, summary.complex.field)
    if x is None:
        # cannot happen for a cocycle unless the summary is inconsistent
        raise NotACocycle("cochain is closed but outside Z; summary is inconsistent")
    return x[:summary.dimH]


def same_class(c1, c2, summary: CohomologySummary) -> bool:
    return class_of(c1, summary) == class_of(c2, summary)


def class_rank(cochains: Sequence, summary: CohomologySummary) -> int:
    """Rank of the span of the classes of the given cocycles."""
    eb = EchelonBasis()
    for c in summary._b:
        eb.add(c)
    base = len(eb)
    for c in cochains:
        eb.add(_as_sparse(c))
    return len(eb) - base


# ---------------------------------------------------------------------------
# stored reference matrices


def _structure(name: str, xi):
    from .algebra import as_courant, heisenberg_p1, heisenberg_p2
    return as_courant(heisenberg_p1(xi) if name == "p1" else heisenberg_p2())


def _xi_env(cp: CourantPairData) -> dict:
    # the p1 product is e1 e2 = xi e3, so xi is read off the structure itself
    if cp.dimA == 3 and cp.assoc[0][1][2]:
        return {"xi": cp.assoc[0][1][2]}
    return {}


def eval_generic(g, values: dict, cp: CourantPairData) -> list:
    """Flattened cochain vector of a generic matrix at given parameter values.

    Pairs are returned in total-complex order (phi block, then psi block);
    single matrices give just their own 27 entries.
    """
    from .exactmath import parse_scalar
    fld = cp.field
    env = _xi_env(cp)
    env.update({s: fld.coerce(values.get(s, 0)) for s in g.symbols})
    out = []
    for mat in (g.phi, g.psi):
        if mat is None:
            continue
        for row in mat:
            out.extend(parse_scalar(e, fld, env) for e in row)
    return out


@dataclass
class MatrixReport:
    name: str
    xi: str
    substitutions: int
    failures: list
    symbol_count: int
    parameter_rank: int
    solution_dim: int

    @property
    def ok(self) -> bool:
        return not self.failures and self.symbol_count == self.parameter_rank == self.solution_dim


def _constraint(g, cx: Complex):
    """(test, solution-space dimension) for the claim attached to g."""
    if g.kind == "leibniz-cocycle":
        blk = cx.block("L", 1, 1)
        return (lambda v: not blk.apply_sparse(v)), len(blk.kernel())
    if g.kind == "hochschild-cocycle":
        blk = cx.block("H", 2, 0)
        return (lambda v: not blk.apply_sparse(v)), len(blk.kernel())
    summ = build_summary(cx, 2)
    if g.kind == "total-cocycle":
        return (lambda v: is_cocycle(v, summ)), summ.dimZ
    return (lambda v: is_coboundary(v, summ)), summ.dimB


def generic_matrix(name: str, corrected: bool = False):
    from .fixtures import CORRECTED, GENERIC
    if corrected and name in CORRECTED:
        return CORRECTED[name]
    return GENERIC[name]


def verify_paper_matrix(name: str, xi="symbolic", trials: int = 20, seed: int = 0,
                        corrected: bool = False) -> MatrixReport:
    """Check a stored reference matrix against the complex it is claimed to live in.

    (a) random rational substitutions of the free parameters satisfy the
    claimed cocycle / coboundary condition; (b) the parameters are
    independent and their number equals the dimension of the solution space.
    """
    import random
    from fractions import Fraction
    g = generic_matrix(name, corrected)
    cp = _structure(g.structure, xi if g.structure == "p1" else None)
    cx = Complex("poisson", cp)
    test, soldim = _constraint(g, cx)
    rng = random.Random(seed)
    failures = []
    for t in range(trials):
        vals = {s: Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for s in g.symbols}
        vec = eval_generic(g, vals, cp)
        if not test({i: v for i, v in enumerate(vec) if v}):
            failures.append({s: str(v) for s, v in vals.items()})
    eb = EchelonBasis()
    for s in g.symbols:
        vec = eval_generic(g, {s: 1}, cp)
        eb.add({i: v for i, v in enumerate(vec) if v})
    return MatrixReport(name, str(xi), trials, failures, len(g.symbols), len(eb), soldim)


def named_cochain(structure: str, label: str, cp: CourantPairData, corrected: bool = False) -> list:
    from .fixtures import NAMED
    gname, vals = NAMED[structure][label]
    return eval_generic(generic_matrix(gname, corrected), vals, cp)


@dataclass
class IdentityReport:
    text: str
    cochain_equal: bool
    class_equal: bool
    lhs_coboundary: bool
    lhs_class: list
    rhs_class: list

    @property
    def ok(self) -> bool:
        return self.cochain_equal and self.class_equal and self.lhs_coboundary


def verify_identities(structure: str, xi="symbolic", summary: CohomologySummary | None = None,
                      corrected: bool = False) -> list:
    """Check each stored relation lhs = sum c_k name_k, exactly and on classes."""
    from .exactmath import parse_scalar
    from .fixtures import CORRECTED_IDENTITIES, IDENTITIES
    cp = _structure(structure, xi if structure == "p1" else None)
    if summary is None:
        summary = cohomology("poisson", 2, cp)
    fld = cp.field
    out = []
    env = _xi_env(cp)
    for ident in IDENTITIES[structure]:
        if corrected:
            ident = CORRECTED_IDENTITIES.get((structure, ident.lhs), ident)
        lhs = named_cochain(structure, ident.lhs, cp, corrected)
        rhs = [fld.zero()] * len(lhs)
        for c, nm in ident.rhs:
            v = named_cochain(structure, nm, cp, corrected)
            c = parse_scalar(c, fld, env) if isinstance(c, str) else fld.coerce(c)
            rhs = [a + c * b for a, b in zip(rhs, v)]
        lc, rc = class_of(lhs, summary), class_of(rhs, summary)
        out.append(IdentityReport(ident.text(), lhs == rhs, lc == rc, is_coboundary(lhs, summary), lc, rc))
    return out


@dataclass
class BasisReport:
    structure: str
    flavor: str
    listed: tuple
    computed_dim: int
    stated_dims: tuple
    listed_rank: int

    @property
    def ok(self) -> bool:
        return self.listed_rank == len(self.listed) == self.computed_dim

    def notes(self) -> list:
        out = []
        if self.listed_rank < len(self.listed):
            out.append(f"the {len(self.listed)} listed classes span only {self.listed_rank} dimensions")
        for d in self.stated_dims:
            if d != self.computed_dim:
                out.append(f"stated size {d} differs from computed dimension {self.computed_dim}")
        return out


def check_listed_basis(structure: str, flavor: str, xi="symbolic",
                       summary: CohomologySummary | None = None, corrected: bool = False) -> BasisReport:
    """Compare a stored list of H^2 classes with the computed H^2."""
    from .fixtures import CORRECTED_BASES, LISTED_BASES, STATED_DIMS
    cp = _structure(structure, xi if structure == "p1" else None)
    if summary is None:
        summary = cohomology(flavor, 2, cp)
    listed = LISTED_BASES[(structure, flavor)]
    if corrected:
        listed = CORRECTED_BASES.get((structure, flavor), listed)
    vecs = [named_cochain(structure, nm, cp, corrected) for nm in listed]
    for v in vecs:
        if not is_cocycle(v, summary):
            raise NotACocycle(f"listed class in {structure} is not a cocycle")
    rank = class_rank(vecs, summary)
    stated = STATED_DIMS[(structure, flavor)]
    if corrected:
        stated = (summary.dimH,) if summary.dimH in stated else stated
    return BasisReport(structure, flavor, listed, summary.dimH, stated, rank)
