"""Reference generic 2-cochains for the two Poisson structures on the Heisenberg algebra.

Each matrix has rows e1, e2, e3 and columns in the order
e1e1, e1e2, e1e3, e2e1, e2e2, e2e3, e3e1, e3e2, e3e3.  Entries are linear
expressions in named free parameters (and possibly xi).  A pair is written
(psi, phi) with psi the Hochschild part and phi the Leibniz part.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class GenericMatrix:
    name: str
    structure: str  # "p1" or "p2"
    kind: str  # leibniz-cocycle, hochschild-cocycle, total-cocycle, total-coboundary
    symbols: tuple
    psi: tuple | None = None
    phi: tuple | None = None


_LEIBNIZ = (
    ("0", "x9", "x1", "-x9", "0", "-x7", "-x1", "x7", "0"),
    ("0", "x4", "x5", "-x4", "0", "-x1", "-x5", "x1", "0"),
    ("x2", "x10", "x6", "x11", "x3", "-x8", "-x6", "x8", "0"),
)
_LEIBNIZ_SYMS = tuple(f"x{i}" for i in range(1, 12))

_HOCH = (
    ("y1", "y4", "0", "y4", "y9", "0", "0", "0", "0"),
    ("y5", "y1-y2", "0", "y1-y2", "y4+y3", "0", "0", "0", "0"),
    ("y6", "y7", "y2", "y8", "y10", "y3", "y2", "y3", "0"),
)
_HOCH_SYMS = tuple(f"y{i}" for i in range(1, 11))

_Y12 = "(2*y2-y1)/(2*xi)"
_Y43 = "(y4-y3)/(2*xi)"

P1_TOTAL = GenericMatrix(
    "p1-total-cocycle", "p1", "total-cocycle",
    tuple(f"X{i}" for i in range(1, 5)) + tuple(f"y{i}" for i in range(1, 9)),
    psi=(
        ("y1", "y4", "0", "y4", "0", "0", "0", "0", "0"),
        ("0", "y1-y2", "0", "y1-y2", "y4+y3", "0", "0", "0", "0"),
        ("y5", "y6", "y2", "y7", "y8", "y3", "y2", "y3", "0"),
    ),
    phi=(
        ("0", _Y43, "0", f"-{_Y43}", "0", "0", "0", "0", "0"),
        ("0", f"-{_Y12}", "0", _Y12, "0", "0", "0", "0", "0"),
        ("X1", "X2", _Y12, "X3", "X4", _Y43, f"-{_Y12}", f"-{_Y43}", "0"),
    ),
)

P1_COBOUNDARY = GenericMatrix(
    "p1-total-coboundary", "p1", "total-coboundary",
    ("y2", "y4", "y5", "y6", "y8"),
    psi=(
        ("0", "y4", "0", "y4", "0", "0", "0", "0", "0"),
        ("0", "-y2", "0", "-y2", "0", "0", "0", "0", "0"),
        ("y5", "y6", "y2", "y6", "y8", "-y4", "y2", "-y4", "0"),
    ),
    phi=(
        ("0", "y4/xi", "0", "-y4/xi", "0", "0", "0", "0", "0"),
        ("0", "-y2/xi", "0", "y2/xi", "0", "0", "0", "0", "0"),
        ("0", "y6", "y2/xi", "-y6", "0", "y4/xi", "-y2/xi", "-y4/xi", "0"),
    ),
)

_Y16 = "(2*y6-y1)"
_Y56 = "(y6-y5)"

P2_TOTAL = GenericMatrix(
    "p2-total-cocycle", "p2", "total-cocycle",
    tuple(f"X{i}" for i in range(1, 6)) + tuple(f"y{i}" for i in range(1, 10)),
    psi=(
        ("y1", "y4", "0", "y4", "0", "0", "0", "0", "0"),
        ("y2", "y6", "0", "y6", "2*y4", "0", "0", "0", "0"),
        ("y3", "y7", "y5", "y8", "y9", "y4", "y5", "y4", "0"),
    ),
    phi=(
        ("0", _Y56, "0", f"-{_Y56}", "0", "0", "0", "0", "0"),
        ("0", "X2", "0", "-X2", "0", "0", "0", "0", "0"),
        ("X1", "X4", "-y2", "X5", "X3", f"-{_Y16}", "y2", _Y16, "0"),
    ),
)

P2_COBOUNDARY = GenericMatrix(
    "p2-total-coboundary", "p2", "total-coboundary",
    ("y1", "y2", "y3", "y7", "X4"),
    psi=(
        ("y1", "0", "0", "0", "0", "0", "0", "0", "0"),
        ("y2", "0", "0", "0", "0", "0", "0", "0", "0"),
        ("y3", "y7", "-y1", "y7", "0", "0", "-y1", "0", "0"),
    ),
    phi=(
        ("0", "y1", "0", "-y1", "0", "0", "0", "0", "0"),
        ("0", "y2", "0", "-y2", "0", "0", "0", "0", "0"),
        ("0", "X4", "-y2", "-X4", "0", "y1", "y2", "-y1", "0"),
    ),
)

GENERIC = {
    g.name: g for g in (
        GenericMatrix("p1-leibniz-cocycle", "p1", "leibniz-cocycle", _LEIBNIZ_SYMS, phi=_LEIBNIZ),
        GenericMatrix("p1-hochschild-cocycle", "p1", "hochschild-cocycle", _HOCH_SYMS, psi=_HOCH),
        P1_TOTAL,
        P1_COBOUNDARY,
        GenericMatrix("p2-leibniz-cocycle", "p2", "leibniz-cocycle", _LEIBNIZ_SYMS, phi=_LEIBNIZ),
        GenericMatrix("p2-hochschild-cocycle", "p2", "hochschild-cocycle", _HOCH_SYMS, psi=_HOCH),
        P2_TOTAL,
        P2_COBOUNDARY,
    )
}


# Named cochains: (generic matrix, parameter assignment)
def _unit(sym: str) -> dict:
    return {sym: 1}


P1_NAMED = {}
for _i in range(1, 5):
    P1_NAMED[f"alpha{_i}"] = ("p1-total-cocycle", _unit(f"X{_i}"))
for _i in range(5, 9):
    P1_NAMED[f"alpha{_i}"] = ("p1-total-cocycle", _unit(f"y{_i}"))
for _t in range(1, 5):
    P1_NAMED[f"beta{_t}"] = ("p1-total-cocycle", _unit(f"y{_t}"))
for _i in (2, 4, 5, 6, 8):
    P1_NAMED[f"alpha{_i}'"] = ("p1-total-coboundary", _unit(f"y{_i}"))

P2_NAMED = {}
for _i in range(1, 6):
    P2_NAMED[f"alpha{_i}"] = ("p2-total-cocycle", _unit(f"X{_i}"))
for _i in (3, 4, 7, 8, 9):
    P2_NAMED[f"beta{_i}"] = ("p2-total-cocycle", _unit(f"y{_i}"))
for _t in (1, 2, 5, 6):
    P2_NAMED[f"betabar{_t}"] = ("p2-total-cocycle", _unit(f"y{_t}"))
P2_NAMED["alpha4'"] = ("p2-total-coboundary", _unit("X4"))
for _i in (7, 3):
    P2_NAMED[f"beta{_i}'"] = ("p2-total-coboundary", _unit(f"y{_i}"))
for _i in (1, 2):
    P2_NAMED[f"betabar{_i}'"] = ("p2-total-coboundary", _unit(f"y{_i}"))

NAMED = {"p1": P1_NAMED, "p2": P2_NAMED}


@dataclass(frozen=True)
class Identity:
    lhs: str
    rhs: tuple  # ((coefficient, name), ...)

    def text(self) -> str:
        out = ""
        for k, (c, n) in enumerate(self.rhs):
            if isinstance(c, str):
                term = f"({c})*{n}"
                out += (" + " if k else "") + term
                continue
            if c < 0:
                out += " - " if k else "-"
            elif k:
                out += " + "
            out += ("" if abs(c) == 1 else f"{abs(c)}*") + n
        return f"{self.lhs} = {out}"


IDENTITIES = {
    "p1": (
        Identity("alpha5'", ((1, "alpha5"),)),
        Identity("alpha8'", ((1, "alpha8"),)),
        Identity("alpha2'", ((1, "beta2"),)),
        Identity("alpha4'", ((1, "beta4"), (-1, "beta3"))),
        Identity("alpha6'", ((1, "alpha6"), (1, "alpha7"), (1, "alpha2"), (-1, "alpha3"))),
    ),
    "p2": (
        Identity("alpha4'", ((1, "alpha4"), (-1, "alpha5"))),
        Identity("beta7'", ((1, "beta7"), (1, "beta8"))),
        Identity("beta3'", ((1, "beta3"),)),
        Identity("betabar1'", ((1, "betabar1"), (-1, "betabar5"))),
        Identity("betabar2'", ((1, "betabar2"), (-1, "alpha2"))),
    ),
}

# Class lists given as bases of H^2 for the two flavors.
LISTED_BASES = {
    ("p1", "poisson"): ("alpha1", "alpha2", "alpha3", "alpha6", "alpha7", "beta1", "beta3"),
    ("p1", "leibniz-pair"): ("alpha6", "alpha7", "beta1", "beta3"),
    ("p2", "poisson"): ("alpha1", "alpha2", "alpha3", "alpha4", "beta4", "beta7", "beta9",
                        "betabar1", "betabar6"),
    ("p2", "leibniz-pair"): ("alpha2", "beta4", "beta7", "beta9", "betabar1", "betabar6"),
}

# Claimed dimensions of H^2 that accompany the lists (for the leibniz-pair flavor of p1 the
# dual basis is indexed 1..3 while four classes are listed).
STATED_DIMS = {
    ("p1", "poisson"): (7,),
    ("p1", "leibniz-pair"): (4, 3),
    ("p2", "poisson"): (9,),
    ("p2", "leibniz-pair"): (6,),
}

EXPECTED_ZDIM = {"p1": 12, "p2": 14}


# ---------------------------------------------------------------------------
# Corrected forms.  The reference data above is kept verbatim; where it fails
# the checks, the corrected version below is what the computation supports.

CORRECTED = {
    # the y6 entries of phi carry a factor 1/xi (stored without it; the two
    # agree only at xi = 1)
    "p1-total-coboundary": GenericMatrix(
        "p1-total-coboundary", "p1", "total-coboundary",
        ("y2", "y4", "y5", "y6", "y8"),
        psi=P1_COBOUNDARY.psi,
        phi=(
            ("0", "y4/xi", "0", "-y4/xi", "0", "0", "0", "0", "0"),
            ("0", "-y2/xi", "0", "y2/xi", "0", "0", "0", "0", "0"),
            ("0", "y6/xi", "y2/xi", "-y6/xi", "0", "y4/xi", "-y2/xi", "-y4/xi", "0"),
        ),
    ),
    # the stored p2 Hochschild form repeats the p1 one; the cocycle space
    # of e1^2 = e3 has 13 free parameters
    "p2-hochschild-cocycle": GenericMatrix(
        "p2-hochschild-cocycle", "p2", "hochschild-cocycle",
        tuple(f"z{i}" for i in range(1, 14)),
        psi=(
            ("z1", "z8", "z9", "z8", "0", "0", "z9", "0", "0"),
            ("z2", "z3", "z4", "z5", "z6", "0", "z4", "0", "0"),
            ("z7", "z10", "z11", "z12", "z13", "z8", "z11", "z8", "z9"),
        ),
    ),
}

CORRECTED_IDENTITIES = {
    ("p1", "alpha6'"): Identity("alpha6'", ((1, "alpha6"), (1, "alpha7"), ("1/xi", "alpha2"), ("-1/xi", "alpha3"))),
    ("p2", "betabar2'"): Identity("betabar2'", ((1, "betabar2"), (1, "alpha2"))),
}

# A basis of H^2 for p1 consistent with the stored relations: alpha4 is
# independent of the coboundaries and alpha6 is dependent on the others.
CORRECTED_BASES = {
    ("p1", "poisson"): ("alpha1", "alpha2", "alpha3", "alpha4", "alpha7", "beta1", "beta3"),
}

# Reference items expected to fail their check, with the reason.
DISCREPANCIES = {
    "p1-total-coboundary": "phi entries for y6 lack the factor 1/xi; a coboundary only at xi = 1",
    "p2-hochschild-cocycle": "matrix repeats the p1 form; e.g. y9 = 1 gives delta_H psi(e1,e2,e2) = e3",
    ("p2", "betabar2'"): "sign: the coboundary equals betabar2 + alpha2",
    ("p1", "alpha6'"): "with the corrected coboundary the relation reads alpha6 + alpha7 + (alpha2 - alpha3)/xi",
    ("p1", "poisson"): "listed classes satisfy alpha6 + alpha7 + alpha2 - alpha3 ~ 0 (at xi = 1) and omit alpha4",
    ("p1", "leibniz-pair"): "four classes listed but the dual basis is indexed 1..3",
}

# When each reference item fails its check: "always", or "xi != 1" for items
# that agree with the computation only at xi = 1.
REFERENCE_FAILS = {
    "p1-total-coboundary": "xi != 1",
    ("p1", "alpha6'"): "xi != 1",
    ("p1", "poisson"): "always",
    "p2-hochschild-cocycle": "always",
    ("p2", "betabar2'"): "always",
}
