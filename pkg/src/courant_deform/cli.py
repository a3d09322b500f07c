"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 bad input,
3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from . import fixtures
from .algebra import AlgebraError, AxiomError, GalleryLookupError, PoissonData, gallery_help
from .cochain import CochainError, Complex, FlavorError, NotApplicableError, ResourceCapError
from .cohomology import (NotACocycle, check_listed_basis, cohomology, named_cochain,
                         verify_identities, verify_paper_matrix, _structure)
from .deformation import (DeformationError, ExtensionSpec, LocalBase, RingHom, check_deformation,
                          derivations, extend_deformation, fiber, harrison_cohomology, obstruction, push_out,
                          random_triple, solve_correction, trivial_deformation, universal_infinitesimal,
                          versal)
from .documents import AlgebraDocument, load_document, require_valid
from .exactmath import ExactMathError, ParseError, SingularParameterError, format_scalar

OK, MATH_FAIL, INPUT_ERROR, CAP_HIT = 0, 1, 2, 3
FLAVORS = ("courant", "poisson", "leibniz-pair")
REPRODUCE_XI = ("1", "2", "-1", "5/7", "symbolic")


class CommandFailed(Exception):
    """A mathematical check failed."""


# ---------------------------------------------------------------------------
# report helpers


def _matrix(m, row_labels, col_labels) -> dict:
    return {"cols": list(col_labels), "rows": list(row_labels),
            "entries": [[format_scalar(v) for v in r] for r in m.entries]}


def _is_matrix(v) -> bool:
    return isinstance(v, dict) and set(v) == {"cols", "rows", "entries"}


def _render_matrix(m: dict, pad: str) -> list:
    cells = [[""] + m["cols"]] + [[lab] + row for lab, row in zip(m["rows"], m["entries"])]
    if not m["cols"]:
        return [pad + "(empty)"]
    widths = [max(len(r[j]) for r in cells) for j in range(len(cells[0]))]
    return [pad + "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]


def _scalar_text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return "null" if v is None else str(v)


def _render(key, val, depth: int, out: list) -> None:
    pad = "  " * depth
    head = f"{pad}{key}:" if key is not None else None
    if _is_matrix(val):
        out.append(head)
        out.extend(_render_matrix(val, pad + "  "))
    elif isinstance(val, dict):
        if head:
            out.append(head)
        for k, v in val.items():
            _render(k, v, depth + (1 if head else 0), out)
    elif isinstance(val, list):
        if all(not isinstance(x, (dict, list)) for x in val):
            inline = ", ".join(_scalar_text(x) for x in val)
            if len(inline) <= 160 and not any(isinstance(x, str) and " " in x for x in val):
                out.append(f"{head} [{inline}]" if head else f"{pad}[{inline}]")
                return
            out.append(head)
            out.extend(f"{pad}  {_scalar_text(x)}" for x in val)
            return
        out.append(head)
        for x in val:
            out.append(f"{pad}  -")
            _render(None, x, depth + 2, out)
    else:
        out.append(f"{head} {_scalar_text(val)}" if head else f"{pad}{_scalar_text(val)}")


def render_text(report: dict) -> str:
    out: list = []
    _render(None, report, 0, out)
    return "\n".join(out) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
    return render_text(report)


# ---------------------------------------------------------------------------
# layout helpers


def _domain_labels(cx: Complex, p: int, q: int, labelsA, labelsL) -> list:
    dims = cx.domain_dims(p, q)
    if not dims:
        return ["1"]
    groups = [labelsL] * q + [labelsA] * p
    if cx.base == "poisson":
        groups = [labelsA] * len(dims)
    out = [""]
    for g in groups:
        out = [f"{a}.{b}" if a else b for a in out for b in g]
    return out


def _codomain_labels(cx: Complex, p: int, labelsA, labelsL) -> list:
    if cx.base == "courant" and p == 0:
        return list(labelsL)
    return list(labelsA)


def _total_layout(cx: Complex, tc, labelsA, labelsL) -> dict:
    """Nonzero components of a total cochain as labelled matrices."""
    out = {}
    for c in tc.components:
        if not any(v for r in c.matrix.entries for v in r):
            continue
        out[f"C^({c.p},{c.q})"] = _matrix(c.matrix, _codomain_labels(cx, c.p, labelsA, labelsL),
                                          _domain_labels(cx, c.p, c.q, labelsA, labelsL))
    return out or {"all components": "0"}


def _combo(vec, labels) -> str:
    terms = []
    for v, lab in zip(vec, labels):
        if not v:
            continue
        s = format_scalar(v)
        if s == "1":
            t = lab
        elif s == "-1":
            t = "-" + lab
        elif any(ch in s for ch in "+ ") or ("-" in s[1:]):
            t = f"({s})*{lab}"
        else:
            t = f"{s}*{lab}"
        terms.append(t)
    if not terms:
        return "0"
    text = terms[0]
    for t in terms[1:]:
        text += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return text


def _deformed_lines(base_tensor, gens, glabels, left, right, out_labels, lhs) -> list:
    """Lines 'lhs(x, y) = c0 + g1*(c1) + ...' for every pair with a nonzero right side."""
    lines = []
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            parts = []
            c0 = base_tensor(i, j)
            if any(c0):
                parts.append(_combo(c0, out_labels))
            for g, lab in zip(gens, glabels):
                v = g(i, j)
                if any(v):
                    parts.append(f"{lab}*({_combo(v, out_labels)})")
            if parts:
                lines.append(f"{lhs(a, b)} = " + " + ".join(parts))
    return lines


def _display_deformation(d) -> dict:
    """The structure over the base, written as original + sum_k g_k * (deformation)."""
    cp = d.cp
    nA, nL = cp.dimA, cp.dimL
    gl = list(d.base.labels)

    def from_matrix(m, ncols):
        return lambda i, j: [m.entries[r][i * ncols + j] for r in range(m.rows)]

    out = {}
    out["product"] = _deformed_lines(
        lambda i, j: cp.assoc[i][j], [from_matrix(t[0], nA) for t in d.triples], gl,
        cp.labelsA, cp.labelsA, cp.labelsA, lambda a, b: f"{a}*{b}") or ["all products vanish"]
    out["bracket"] = _deformed_lines(
        lambda i, j: cp.bracket[i][j], [from_matrix(t[2], nL) for t in d.triples], gl,
        cp.labelsL, cp.labelsL, cp.labelsL, lambda a, b: f"[{a}, {b}]") or ["all brackets vanish"]
    if d.flavor == "courant" or not cp.is_poisson_type():
        out["anchor"] = _deformed_lines(
            lambda i, c: cp.mu(i, c), [from_matrix(t[1], nA) for t in d.triples], gl,
            cp.labelsL, cp.labelsA, cp.labelsA, lambda a, b: f"mu({a})({b})") or ["anchor vanishes"]
    return out


def _base_report(R: LocalBase) -> dict:
    out = {"dim": R.dimR, "basis": ["1"] + list(R.labels)}
    prods = []
    for i in range(R.n):
        for j in range(i, R.n):
            v = R.mult[i][j]
            if any(v):
                prods.append(f"{R.labels[i]}*{R.labels[j]} = {_combo(v, R.labels)}")
    out["ideal products"] = prods or ["all vanish"]
    return out


# ---------------------------------------------------------------------------
# loading


def _load(args, need_valid: bool = True) -> AlgebraDocument:
    doc = load_document(args.source, getattr(args, "xi", None))
    if need_valid:
        require_valid(doc)
    return doc


def _flavor(args, doc: AlgebraDocument) -> str:
    if args.flavor:
        return args.flavor
    return "poisson" if isinstance(doc.structure, PoissonData) else "courant"


def _inputs(args, doc: AlgebraDocument, **extra) -> dict:
    out = {"document": doc.name or args.source, "kind": doc.kind}
    if doc.xi:
        out["xi"] = doc.xi
    out.update(extra)
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args) -> dict:
    doc = _load(args, need_valid=False)
    bad = doc.witnesses()
    report = {"command": "validate", "inputs": _inputs(args, doc), "valid": not bad}
    if bad:
        report["witnesses"] = [w.describe() for w in bad]
        report["_exit"] = MATH_FAIL
    return report


def _dims_at(flavor: str, deg: int, source: str, xi: str) -> tuple:
    d = load_document(source, xi)
    s = cohomology(flavor, deg, d.pair)
    return s.dimZ, s.dimB, s.dimH


def cmd_cohomology(args) -> dict:
    doc = _load(args)
    flavor = _flavor(args, doc)
    cp = doc.pair
    s = cohomology(flavor, args.deg, cp)
    cx = s.complex
    res = {"dimZ": s.dimZ, "dimB": s.dimB, "dimH": s.dimH,
           "components": [f"C^({p},{q}) dim {cx.comp_size(p, q)}" for p, q in cx.components(args.deg)]}
    notes = ["representatives: cocycle kernel basis vectors independent of the coboundaries, in order",
             "matrix columns run over the tensor basis with the first factor most significant"]
    report = {"command": "cohomology", "inputs": _inputs(args, doc, flavor=flavor, degree=args.deg),
              "results": res}
    if doc.xi == "symbolic":
        specs = {}
        mismatch = []
        for v in REPRODUCE_XI[:-1]:
            dims = _dims_at(flavor, args.deg, args.source, v)
            specs[f"xi={v}"] = f"dimZ {dims[0]}, dimB {dims[1]}, dimH {dims[2]}"
            if dims != (s.dimZ, s.dimB, s.dimH):
                mismatch.append(v)
        res["specializations"] = specs
        if mismatch:
            notes.append("dimensions jump at xi = " + ", ".join(mismatch))
    if not args.no_reps:
        la, ll = cp.labelsA, cp.labelsL
        res["representatives"] = {f"nu{k + 1}": _total_layout(cx, c, la, ll) for k, c in enumerate(s.nu)}
    report["notes"] = notes
    return report


def cmd_deform(args) -> dict:
    doc = _load(args)
    flavor = _flavor(args, doc)
    cp = doc.pair
    eta = universal_infinitesimal(cp, flavor)
    bad = check_deformation(eta)
    eps = RingHom.augmentation(eta.base)
    recovered = fiber(push_out(eta, eps)) == cp
    report = {"command": "deform", "inputs": _inputs(args, doc, flavor=flavor),
              "base": _base_report(eta.base),
              "deformed structure": _display_deformation(eta),
              "check_deformation": "passed" if not bad else [w.describe() for w in bad],
              "push_out along augmentation recovers the input": recovered}
    if bad or not recovered:
        report["_exit"] = MATH_FAIL
    return report


def _obstruct_setup(args, cp, flavor):
    fld = cp.field
    if args.generator is not None:
        eta = universal_infinitesimal(cp, flavor)
        h = eta.base.n
        if not 1 <= args.generator <= h:
            raise ParseError(f"--generator must lie in 1..{h}")
        R = LocalBase.truncated(2, field=fld)
        imgs = [[fld.one() if i == args.generator - 1 else fld.zero()] for i in range(h)]
        d = push_out(eta, RingHom.from_ideal_images(eta.base, R, imgs))
        ext = ExtensionSpec.truncated(2, field=fld)
        what = f"eta_1 pushed out along g{args.generator} -> t, g_i -> 0 otherwise"
    else:
        if args.order < 1:
            raise ParseError("--order must be at least 1")
        R = LocalBase.truncated(args.order, field=fld)
        d = trivial_deformation(cp, R, flavor)
        ext = ExtensionSpec.truncated(args.order, field=fld)
        what = "trivial deformation"
    return d, ext, what


def cmd_obstruct(args) -> dict:
    doc = _load(args)
    flavor = _flavor(args, doc)
    cp = doc.pair
    d, ext, what = _obstruct_setup(args, cp, flavor)
    lift = None
    if args.lift is not None:
        lift = [random_triple(cp, flavor, random.Random(args.lift)) for _ in range(ext.r)]
    res = obstruction(d, ext, lift)
    summ = res.summary
    cx = summ.complex
    theta = res.thetas[0]
    closed = not any(cx.total_delta(3).apply(theta.vector()))
    cls = [format_scalar(v) for v in res.classes[0]]
    report = {"command": "obstruct",
              "inputs": _inputs(args, doc, flavor=flavor, deformation=what,
                                extension=f"{_ring_name(ext.base)} -> {_ring_name(ext.total_base())}",
                                lift="zero" if args.lift is None else f"random, seed {args.lift}"),
              "theta": _total_layout(cx, theta, cp.labelsA, cp.labelsL),
              "delta_tot(theta) = 0": closed,
              "H^3 dimension": summ.dimH,
              "class": cls,
              "extends": res.vanishes()}
    if res.vanishes():
        gamma = solve_correction(d, ext, lift)
        if gamma is None:
            raise CommandFailed("class vanishes but no correction term was found")
        ext_d = extend_deformation(d, ext, gamma, lift)
        report["extended deformation check"] = "passed" if not check_deformation(ext_d) else "failed"
    if not closed:
        report["_exit"] = MATH_FAIL
    return report


def _ring_name(R: LocalBase) -> str:
    if R.n == 0:
        return "K"
    if R.labels[0] == "t":
        return f"K[t]/(t^{R.n + 1})"
    return f"local algebra of dim {R.dimR}"


def cmd_harrison(args) -> dict:
    if args.source:
        doc = _load(args)
        flavor = _flavor(args, doc)
        R = universal_infinitesimal(doc.pair, flavor).base
        inputs = _inputs(args, doc, flavor=flavor, ring=f"C_1 (dim {R.dimR})", degree=args.deg)
    else:
        if args.order < 1:
            raise ParseError("--order must be at least 1")
        R = LocalBase.truncated(args.order)
        inputs = {"ring": _ring_name(R), "degree": args.deg}
    h = harrison_cohomology(R, args.deg)
    res = {"dimZ": h.dimZ, "dimB": h.dimB, "dimH": h.dimH}
    report = {"command": "harrison", "inputs": inputs, "results": res}
    if args.deg == 1:
        der = derivations(R)
        res["derivations (direct solve)"] = der
        res["agrees"] = der == h.dimH
        if der != h.dimH:
            report["_exit"] = MATH_FAIL
    labels = ["1"] + list(R.labels)
    reps = []
    for v in h.representatives:
        terms = []
        for idx, c in sorted(v.items()):
            parts, rem = [], idx
            for _ in range(args.deg):
                parts.append(labels[rem % R.dimR])
                rem //= R.dimR
            terms.append(f"{format_scalar(c)} at ({', '.join(reversed(parts))})")
        reps.append("; ".join(terms) if terms else "0")
    res["representatives"] = reps
    return report


def cmd_versal_step(args) -> dict:
    doc = _load(args)
    flavor = _flavor(args, doc)
    if args.depth < 1 or args.depth > 4:
        raise ResourceCapError("--depth must lie in 1..4")
    steps = versal(doc.pair, flavor, args.depth)
    out = []
    failed = False
    for k, st in enumerate(steps):
        row = {"base": f"C_{k + 1}", "dimR": st.base.dimR}
        if k:
            prev = steps[k - 1]
            back = push_out(st.deformation, st.extension.projection()) == prev.deformation
            ok = not check_deformation(st.deformation)
            row.update({"Harrison H^2 of previous base": st.harrison_dim,
                        "obstruction map rank": st.obstruction_rank,
                        "kernel dimension": st.kernel_dim,
                        "check_deformation": "passed" if ok else "failed",
                        "push_out to previous base equals previous deformation": back})
            failed |= not (ok and back)
        out.append(row)
    report = {"command": "versal-step", "inputs": _inputs(args, doc, flavor=flavor, depth=args.depth),
              "steps": out,
              "notes": ["the new base is the extension by the kernel of the obstruction map",
                        "depth truncates the sequence; the versal base is its inverse limit"]}
    if failed:
        report["_exit"] = MATH_FAIL
    return report


def _expected_fail(key, xi: str) -> bool:
    cond = fixtures.REFERENCE_FAILS.get(key)
    return cond == "always" or (cond == "xi != 1" and xi != "1")


def _check_row(kind: str, label: str, data: str, xi: str, passed: bool, key, extra: str = "") -> dict:
    expect_fail = data == "reference" and _expected_fail(key, xi)
    row = {"check": f"{kind} {label}", "data": data, "xi": xi or "-",
           "result": "pass" if passed else "fail", "expected": "fail" if expect_fail else "pass"}
    if expect_fail:
        row["reason"] = fixtures.DISCREPANCIES[key]
    if extra:
        row["detail"] = extra
    return row


def _reproduce_at(struct: str, xi: str) -> list:
    rows = []
    cp = _structure(struct, xi if struct == "p1" else None)
    summ = cohomology("poisson", 2, cp)
    lp = cohomology("leibniz-pair", 2, cp)
    for data in ("reference", "corrected"):
        corr = data == "corrected"
        for name, g in fixtures.GENERIC.items():
            if g.structure != struct:
                continue
            r = verify_paper_matrix(name, xi=xi or "symbolic", corrected=corr)
            detail = f"parameters {r.symbol_count}, independent {r.parameter_rank}, solution space {r.solution_dim}"
            if r.failures:
                detail += f", {len(r.failures)} failing substitutions"
            rows.append(_check_row("matrix", name, data, xi, r.ok, name, detail))
        for r in verify_identities(struct, xi or "symbolic", summ, corrected=corr):
            lhs = r.text.split(" = ")[0]
            rows.append(_check_row("identity", r.text, data, xi, r.ok, (struct, lhs)))
        for flavor, s in (("poisson", summ), ("leibniz-pair", lp)):
            b = check_listed_basis(struct, flavor, xi or "symbolic", s, corrected=corr)
            rows.append(_check_row("listed H^2 basis", f"{struct} {flavor}", data, xi, b.ok,
                                   (struct, flavor) if b.listed_rank < len(b.listed) else None,
                                   "; ".join(b.notes())))
    ok = summ.dimZ == fixtures.EXPECTED_ZDIM[struct] and summ.dimH == fixtures.STATED_DIMS[(struct, "poisson")][0]
    rows.append(_check_row("dimension", f"Z^2 {summ.dimZ}, H^2 {summ.dimH} (poisson)", "computed", xi, ok, None))
    stated = fixtures.STATED_DIMS[(struct, "leibniz-pair")]
    note = "" if len(set(stated)) == 1 else (f"stated sizes {', '.join(map(str, stated))}; "
                                             f"{fixtures.DISCREPANCIES[(struct, 'leibniz-pair')]}")
    rows.append(_check_row("dimension", f"H^2 {lp.dimH} (leibniz-pair)", "computed", xi,
                           lp.dimH == stated[0], None, note))
    return rows, summ


def _row_text(r: dict) -> str:
    flag = "ok  " if r["result"] == r["expected"] else "DIFF"
    tail = f" (expected {r['expected']}: {r['reason']})" if r["expected"] == "fail" else ""
    det = f" [{r['detail']}]" if r.get("detail") else ""
    return f"{flag} {r['result'].upper():4} xi={r['xi']:8} {r['data']:9} {r['check']}{det}{tail}"


def cmd_reproduce(args) -> dict:
    struct = args.structure
    if struct not in ("p1", "p2"):
        raise ParseError("reproduce takes p1 or p2")
    if struct == "p1":
        if args.xi is None:
            xis = list(REPRODUCE_XI)
        else:
            from .documents import _parse_xi
            v = _parse_xi(args.xi)
            xis = [v] if v == "symbolic" else [v, "symbolic"]
    else:
        if args.xi is not None:
            raise ParseError("p2 has no parameter")
        xis = [""]
    rows, dims = [], {}
    summ = None
    for xi in xis:
        r, s = _reproduce_at(struct, xi)
        rows += r
        dims[xi or "-"] = s.dimH
        if xi in ("symbolic", ""):
            summ = s
    if len(set(dims.values())) != 1:
        rows.append({"check": "generic dimension equals every specialization", "data": "computed", "xi": "all",
                     "result": "fail", "expected": "pass"})
    cp = _structure(struct, "symbolic" if struct == "p1" else None)
    names = fixtures.CORRECTED_BASES.get((struct, "poisson"), fixtures.LISTED_BASES[(struct, "poisson")])
    reps = [named_cochain(struct, nm, cp, True) for nm in names]
    eta = universal_infinitesimal(cp, "poisson", reps)
    eta_ok = not check_deformation(eta)
    rows.append({"check": "universal infinitesimal deformation passes check_deformation", "data": "corrected",
                 "xi": "symbolic" if struct == "p1" else "-", "result": "pass" if eta_ok else "fail",
                 "expected": "pass"})
    diff = [_row_text(r) for r in rows if r["result"] != r["expected"]]
    report = {"command": "reproduce", "inputs": {"structure": struct, "xi": [x or "-" for x in xis]},
              "checks": [_row_text(r) for r in rows],
              "H^2 dimension by xi": dims,
              "universal infinitesimal deformation": {
                  "generators": [f"g{k + 1} dual to [{nm}]" for k, nm in enumerate(names)],
                  **_display_deformation(eta)},
              "mismatches": len(diff)}
    if diff:
        report["diff against stored expectation"] = diff
        report["_exit"] = MATH_FAIL
    if args.format == "json":
        report["check records"] = rows
    return report


def cmd_gallery_list(args) -> dict:
    return {"command": "gallery-list", "entries": dict(sorted(gallery_help().items()))}


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="courant-deform",
                                 description="Exact deformation cohomology of Courant pairs and Poisson algebras.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--cap", type=int, default=None, help="degree cap (default 4, or COURANT_DEFORM_CAP)")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, source=True, optional_source=False):
        p = sub.add_parser(name)
        if source:
            p.add_argument("source", nargs="?" if optional_source else None,
                           help="document path or bundled name (p1, p2, ...)")
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
        p.set_defaults(fn=fn)
        return p

    p = add("validate", cmd_validate)
    p.add_argument("--xi", default=None)
    p = add("cohomology", cmd_cohomology)
    p.add_argument("--flavor", choices=FLAVORS)
    p.add_argument("--deg", type=int, default=2)
    p.add_argument("--xi", default=None)
    p.add_argument("--no-reps", action="store_true", help="omit representative matrices")
    p = add("deform", cmd_deform)
    p.add_argument("--flavor", choices=FLAVORS)
    p.add_argument("--xi", default=None)
    p = add("obstruct", cmd_obstruct)
    p.add_argument("--flavor", choices=FLAVORS)
    p.add_argument("--xi", default=None)
    p.add_argument("--order", type=int, default=1, help="extend the trivial deformation over K[t]/(t^k)")
    p.add_argument("--generator", type=int, default=None, help="use eta_1 pushed out along g_i -> t")
    p.add_argument("--lift", type=int, default=None, metavar="SEED", help="random lift with this seed")
    p = add("harrison", cmd_harrison, optional_source=True)
    p.add_argument("--flavor", choices=FLAVORS)
    p.add_argument("--xi", default=None)
    p.add_argument("--order", type=int, default=2, help="ring K[t]/(t^k) when no document is given")
    p.add_argument("--deg", type=int, default=2)
    p = add("versal-step", cmd_versal_step)
    p.add_argument("--flavor", choices=FLAVORS)
    p.add_argument("--xi", default=None)
    p.add_argument("--depth", type=int, default=2)
    p = sub.add_parser("reproduce")
    p.add_argument("structure", choices=("p1", "p2"))
    p.add_argument("--xi", default=None)
    p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    p.set_defaults(fn=cmd_reproduce)
    p = add("gallery-list", cmd_gallery_list, source=False)
    return ap


def _error(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    saved = os.environ.get("COURANT_DEFORM_CAP")
    if args.cap is not None:
        if args.cap < 1:
            return _error("--cap must be positive", INPUT_ERROR)
        os.environ["COURANT_DEFORM_CAP"] = str(args.cap)
    try:
        report = args.fn(args)
    except (ResourceCapError, MemoryError) as exc:
        return _error(str(exc) or "memory exhausted", CAP_HIT)
    except AxiomError as exc:
        lines = [str(exc) + "; run validate for details"] + [w.describe() for w in exc.witnesses[:5]]
        return _error("\n  ".join(lines), INPUT_ERROR)
    except (ParseError, SingularParameterError, GalleryLookupError, FlavorError, NotApplicableError) as exc:
        return _error(str(exc), INPUT_ERROR)
    except (CommandFailed, DeformationError, NotACocycle) as exc:
        return _error(str(exc), MATH_FAIL)
    except (CochainError, AlgebraError, ExactMathError) as exc:
        return _error(str(exc), INPUT_ERROR)
    finally:
        if args.cap is not None:
            if saved is None:
                os.environ.pop("COURANT_DEFORM_CAP", None)
            else:
                os.environ["COURANT_DEFORM_CAP"] = saved
    code = report.pop("_exit", OK)
    sys.stdout.write(render(report, args.format))
    return code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
