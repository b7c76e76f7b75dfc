"""Command-line front end.

Every subcommand reads one JSON document (a file path or ``-`` for stdin)
and writes one JSON document to stdout.  Rationals travel as ``"p/q"`` or
integer strings.  Exit codes: 0 ok, 2 unreadable input, 3 not in the cone.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import NotInCone, TableError
from .extremal import (
    ExtremalLabel,
    MonomialIdealSpec,
    combine,
    extremal_table,
    monomial_ideal_table,
)
from .facets import (
    E,
    GeneratorId,
    MPoint,
    Pi,
    Violation,
    combine_points,
    facet_decompose,
    incidence,
    membership,
)
from .greedy import decompose, recombine
from .table import DeltaTable, GradedMap, RawWindow, Tail, from_raw, rational, render_window

EXIT_OK, EXIT_PARSE, EXIT_NOT_IN_CONE = 0, 2, 3


class ParseError(TableError):
    pass


def fmt(q: Fraction) -> str:
    return str(q)


def _rat(value, where: str) -> Fraction:
    try:
        return rational(value)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{where}: {exc}") from None


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where} must be an integer")
    return value


# -- documents ----------------------------------------------------------------


def parse_table_file(doc: dict) -> RawWindow:
    try:
        lo = _int(doc["window"]["lo"], "window.lo")
        hi = _int(doc["window"]["hi"], "window.hi")
        rows = doc["rows"]
    except (KeyError, TypeError):
        raise ParseError("table file needs 'window' {lo, hi} and 'rows'") from None
    if lo > hi:
        raise ParseError("window needs lo <= hi")
    cols: dict[int, tuple[Fraction, Fraction, Fraction]] = {}
    for row in rows:
        try:
            n = _int(row["n"], "row n")
            vals = tuple(_rat(row.get(f"h{i}", "0"), f"row {n} h{i}") for i in range(3))
        except (KeyError, AttributeError):
            raise ParseError("each row needs n, h0, h1, h2") from None
        if n in cols:
            raise ParseError(f"degree {n} listed twice")
        cols[n] = vals
    if set(cols) != set(range(lo, hi + 1)):
        raise ParseError(f"rows must cover [{lo}, {hi}] exactly once")
    t = doc.get("tail", {})
    if not isinstance(t, dict):
        raise ParseError("tail must be an object")
    tail = Tail(
        h1_constant=bool(t.get("h1_constant", True)),
        h2_linear=bool(t.get("h2_linear", True)),
        h1_value=None if t.get("h1_value") is None else _rat(t["h1_value"], "tail.h1_value"),
        h2_slope=None if t.get("h2_slope") is None else _rat(t["h2_slope"], "tail.h2_slope"),
    )
    degrees = range(lo, hi + 1)
    return RawWindow(lo, hi, *(tuple(cols[n][i] for n in degrees) for i in range(3)), tail=tail)


def table_file(t: DeltaTable) -> dict:
    w = render_window(t)
    rows = [
        {"n": n, "h0": fmt(w.get(0, n)), "h1": fmt(w.get(1, n)), "h2": fmt(w.get(2, n))}
        for n in w.degrees
    ]
    return {
        "window": {"lo": w.lo, "hi": w.hi},
        "rows": rows,
        "tail": {"h1_constant": True, "h2_linear": True},
    }


def _graded(doc, where: str) -> GradedMap:
    if not isinstance(doc, dict):
        raise ParseError(f"{where} must map degrees to values")
    out = {}
    for k, v in doc.items():
        try:
            n = int(k)
        except ValueError:
            raise ParseError(f"{where}: bad degree {k!r}") from None
        out[n] = _rat(v, f"{where}[{k}]")
    return GradedMap(out)


def delta_doc(rows) -> dict:
    return {f"d{i}": {str(n): fmt(v) for n, v in r.items()} for i, r in enumerate(rows)}


def parse_point(doc: dict) -> MPoint:
    """A table file or a Δ document ``{"d0": {...}, "d1": {...}, "d2": {...}}``."""
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object")
    if "rows" in doc:
        return MPoint.from_table(from_raw(parse_table_file(doc)))
    return MPoint(*(_graded(doc.get(f"d{i}", {}), f"d{i}") for i in range(3)))


def label_doc(c: Fraction, label: ExtremalLabel) -> dict:
    out = {"coeff": fmt(c), "kind": label.kind.value, "shift": label.shift}
    if label.t is not None:
        out["t"] = label.t
    return out


def generator_doc(c: Fraction, g: GeneratorId) -> dict:
    if isinstance(g, E):
        return {"coeff": fmt(c), "generator": "E", "i": g.i, "s": g.s}
    return {"coeff": fmt(c), "generator": "Gamma", "s": g.s, "n": g.n}


def violation_doc(v: Violation) -> dict:
    f = v.functional
    out = {"functional": type(f).__name__.lower(), "s": f.s}
    if isinstance(f, Pi):
        out["n"] = f.n
    out["value"] = fmt(v.value)
    return out


def parse_module_spec(doc) -> DeltaTable:
    terms = doc.get("terms") if isinstance(doc, dict) else doc
    if not isinstance(terms, list):
        raise ParseError("module spec must be a list of terms")
    out = []
    for term in terms:
        try:
            kind = term["kind"]
            shift = _int(term.get("shift", 0), "shift")
            coeff = _rat(term.get("coeff", "1"), "coeff")
        except (KeyError, AttributeError, TypeError):
            raise ParseError("each term needs a kind") from None
        if coeff < 0:
            raise ParseError("coefficients must be non-negative")
        if kind == "monomial_ideal":
            try:
                gens = frozenset((int(i), int(j)) for i, j in term["generators"])
            except (KeyError, TypeError, ValueError):
                raise ParseError("monomial_ideal needs generators [[i, j], ...]") from None
            table = monomial_ideal_table(MonomialIdealSpec(gens, shift))
        else:
            t = term.get("t")
            table = extremal_table(ExtremalLabel(kind, shift, None if t is None else _int(t, "t")))
        out.append((coeff, table))
    return combine(out)


# -- plain rendering ------------------------------------------------------------


def plain_table(t: DeltaTable, delta_rows: bool = False) -> str:
    """Rows h^0, h^1, h^2 (or the Δ rows) with degrees decreasing left to right."""
    w = render_window(t)
    degrees = list(reversed(w.degrees))
    cells = [["n"] + [str(n) for n in degrees]]
    if delta_rows:
        cells += [[f"d{i}"] + [fmt(r[n]) for n in degrees] for i, r in enumerate(t.rows)]
    else:
        cells += [[f"h^{i}"] + [fmt(w.get(i, n)) for n in degrees] for i in range(3)]
    width = max(len(c) for row in cells for c in row)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


# -- commands -------------------------------------------------------------------


def cmd_decompose(doc) -> tuple[int, object]:
    T = from_raw(parse_table_file(doc))
    bad = membership(MPoint.from_table(T))
    if bad is not None:
        raise NotInCone(f"table violates {bad}", violation=bad)
    d = decompose(T)
    if recombine(d) != T:
        raise NotInCone("decomposition failed verification")
    return EXIT_OK, {"terms": [label_doc(c, label) for c, label in d], "verified": True}


def cmd_check(doc) -> tuple[int, object]:
    bad = membership(parse_point(doc))
    if bad is None:
        return EXIT_OK, {"member": True}
    return EXIT_OK, {"member": False, "violation": violation_doc(bad)}


def cmd_facet_decompose(doc) -> tuple[int, object]:
    A = parse_point(doc)
    terms = facet_decompose(A)
    if combine_points(terms) != A:
        raise NotInCone("decomposition failed verification")
    return EXIT_OK, {"terms": [generator_doc(c, g) for c, g in terms], "verified": True}


def cmd_make_table(doc) -> tuple[int, object]:
    return EXIT_OK, parse_module_spec(doc)


def cmd_delta(doc) -> tuple[int, object]:
    return EXIT_OK, from_raw(parse_table_file(doc))


def cmd_incidence(d: int) -> tuple[int, object]:
    inc = incidence(d)
    return EXIT_OK, {
        "d": d,
        "rays": [str(r) for r in inc.rays],
        "facets": [str(f) for f in inc.facets],
        "matrix": [[int(x) for x in row] for row in inc.matrix],
        "facets_per_ray": inc.facets_on_ray(),
        "rays_per_facet": inc.rays_on_facet(),
    }


def _read(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None


def _render(command: str, result, plain: bool) -> str:
    if isinstance(result, DeltaTable):
        if plain:
            return plain_table(result, delta_rows=command == "delta")
        return json.dumps(table_file(result) if command == "make-table" else delta_doc(result.rows), indent=2)
    if plain and "terms" in result:
        return "\n".join(
            " ".join(f"{k}={v}" for k, v in term.items()) for term in result["terms"]
        ) or "0"
    return json.dumps(result, indent=2)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lctables", description="Decompose local cohomology tables over k[x,y].")
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_ in [
        ("decompose", "greedy decomposition into extremal tables"),
        ("check", "test the facet inequalities"),
        ("facet-decompose", "decompose via the facet functionals"),
        ("make-table", "table of a combination of extremal modules and monomial ideals"),
        ("delta", "Δ-image of a table"),
    ]:
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", nargs="?", default="-", help="JSON file, or - for stdin")
        sp.add_argument("--plain", action="store_true", help="human-readable output")
    sp = sub.add_parser("incidence", help="ray/facet incidence on the window [0, d]")
    sp.add_argument("d", type=int)
    sp.add_argument("--plain", action="store_true", help="human-readable output")
    return p


_COMMANDS = {
    "decompose": cmd_decompose,
    "check": cmd_check,
    "facet-decompose": cmd_facet_decompose,
    "make-table": cmd_make_table,
    "delta": cmd_delta,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "incidence":
            if args.d < 0:
                raise ParseError("d must be non-negative")
            code, result = cmd_incidence(args.d)
        else:
            code, result = _COMMANDS[args.command](_read(args.input))
    except NotInCone as exc:
        out = {"error": "not_in_cone", "message": str(exc)}
        if exc.violation is not None:
            out["violation"] = violation_doc(exc.violation)
        print(json.dumps(out, indent=2))
        return EXIT_NOT_IN_CONE
    except (TableError, ValueError) as exc:
        print(json.dumps({"error": "parse", "message": str(exc)}, indent=2))
        return EXIT_PARSE
    print(_render(args.command, result, args.plain))
    return code


if __name__ == "__main__":
    sys.exit(main())
