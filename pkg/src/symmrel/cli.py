"""Command-line front end.

Subcommands:

* ``verify`` -- run zero-relation / residue checks over (family, n, m) grids
  or over power-sum-product keys;
* ``table`` -- regenerate the Z (symbolic residue) and Y (product residue)
  coefficient tables;
* ``solve-c`` -- solve the vanishing system for the C coefficients and
  optionally confirm the Bernoulli reconstruction;
* ``bernoulli-relations`` -- evaluate the nonlinear Bernoulli-number
  relations and the a_k elimination identity;
* ``families`` -- list the family registry.

Exit codes: 0 all checks passed, 1 a check was falsified, 2 usage error,
3 a resource cap was hit.  Verdicts are always available in machine-readable
form via ``--format json``; exit codes are the authoritative channel.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .families import FAMILY_NAMES, SYMBOLIC_NAME, get_family
from .partitions import exponent_vectors, vector_weight
from .polyring import TermCapExceeded, set_term_cap
from .relations import (
    PreconditionError,
    extract_y_basis,
    extract_z,
    verify_conjecture1,
    verify_conjecture2,
)
from .solver import (
    TABULATED_BERNOULLI_FREE_VALUES,
    bernoulli_reconstruction_check,
    solve_c_coefficients,
    verify_bernoulli_identity,
    verify_nonlinear_bernoulli,
)

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

DEFAULT_MAX_N = 8
DEFAULT_MAX_M = 4


class UsageError(ValueError):
    pass


def _parse_range(spec: str) -> list[int]:
    """Accept '3' or '2..4' (inclusive)."""
    try:
        if ".." in spec:
            lo_text, hi_text = spec.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        return [int(spec)]
    except ValueError:
        raise UsageError(f"bad range {spec!r}; expected N or LO..HI") from None


def _parse_key(spec: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in spec.split(","))
    except ValueError:
        raise UsageError(f"bad key {spec!r}; expected comma-separated integers") from None


def _format_rational(value) -> str:
    frac = Fraction(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"


def _format_powersum(expansion) -> str:
    """Render a power-sum expansion as p_1, p_2, ... products."""
    chunks = []
    for key, coeff in expansion.coefficients.items():
        frac = Fraction(coeff) if not hasattr(coeff, "terms") else None
        if frac is None:
            raise ValueError("symbolic expansions are rendered per entry")
        if frac == 0:
            continue
        body = "*".join(
            f"p_{i+1}" if e == 1 else f"p_{i+1}^{e}"
            for i, e in enumerate(key)
            if e
        )
        sign = "-" if frac < 0 else "+"
        mag = abs(frac)
        if not body:
            text = _format_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{_format_rational(mag)}*{body}"
        chunks.append((sign, text))
    if not chunks:
        return "0"
    first_sign, first_text = chunks[0]
    out = first_text if first_sign == "+" else f"-{first_text}"
    for sign, text in chunks[1:]:
        out += f" {sign} {text}"
    return out


def _render_json(document) -> str:
    return json.dumps(document, indent=2, sort_keys=False)


def _emit(document, fmt: str, text_lines) -> None:
    if fmt == "json":
        print(_render_json(document))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _verify_case(case):
    """Run one verification case; used directly and from worker processes."""
    regime, source, n, m, prescreen_points = case
    if regime == "zero":
        report = verify_conjecture1(source, n, m, prescreen_points=prescreen_points)
    else:
        report = verify_conjecture2(source, n, m)
    return report.to_json()


def _case_label(result) -> str:
    return f"{result['conjecture']} {result['source']} n={result['n']} m={result['m']}"


def _build_cases(args) -> list:
    m_values = _parse_range(args.m) if args.m else list(range(2, DEFAULT_MAX_M + 1))
    n_values = _parse_range(args.n) if args.n else None
    cases = []
    if args.conjecture in (1, 2):
        if not args.family:
            raise UsageError("--family is required for conjectures 1 and 2")
        name = args.family.lower()
        if name != SYMBOLIC_NAME:
            get_family(name)  # validate
        for m in m_values:
            if args.conjecture == 1:
                ns = n_values if n_values is not None else list(range(0, m))
                for n in ns:
                    if not 0 <= n <= m - 1:
                        raise UsageError(
                            f"conjecture 1 needs 0 <= n <= m-1, got n={n}, m={m}"
                        )
                    cases.append(("zero", name, n, m, args.prescreen_points))
            else:
                ns = n_values if n_values is not None else list(range(m, DEFAULT_MAX_N + 1))
                for n in ns:
                    if n < m:
                        raise UsageError(f"conjecture 2 needs n >= m, got n={n}, m={m}")
                    cases.append(("poly", name, n, m, args.prescreen_points))
    else:
        if n_values is None:
            raise UsageError("--n is required for conjecture 3")
        for m in m_values:
            for n in n_values:
                keys = [_parse_key(args.key)] if args.key else exponent_vectors(n, n if n else 1)
                for key in keys:
                    if vector_weight(key) != n or len(key) != n:
                        raise UsageError(f"key {key} does not have weight {n}")
                    regime = "zero" if n <= m - 1 else "poly"
                    cases.append((regime, key, n, m, args.prescreen_points))
    if not cases:
        raise UsageError("empty case grid")
    if not args.allow_large:
        for _, _, n, m, _ in cases:
            if n > DEFAULT_MAX_N or m > DEFAULT_MAX_M:
                raise UsageError(
                    f"case n={n}, m={m} is outside the default bounds "
                    f"(n <= {DEFAULT_MAX_N}, m <= {DEFAULT_MAX_M}); pass --allow-large"
                )
    return cases


def cmd_verify(args) -> int:
    cases = _build_cases(args)
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_case, cases))
    else:
        results = [_verify_case(case) for case in cases]

    verified = sum(1 for r in results if r["verdict"] == "verified")
    falsified = [r for r in results if r["verdict"] == "falsified"]
    limited = [r for r in results if r["verdict"] == "resource-limited"]
    document = {
        "command": "verify",
        "conjecture": args.conjecture,
        "cases": results,
        "summary": {
            "total": len(results),
            "verified": verified,
            "falsified": len(falsified),
            "resource_limited": len(limited),
        },
    }
    lines = []
    for r in results:
        line = f"{_case_label(r)}: {r['verdict']}"
        if r["verdict"] == "falsified" and "witness" in r:
            line += f" (witness: {r['witness']})"
        if r["verdict"] == "verified" and "extracted" in r:
            entries = r["extracted"]["entries"]
            nonzero = [e for e in entries if e["coeff"] not in ("0",)]
            line += f" (residue: {len(nonzero)} nonzero of {len(entries)} entries)"
        lines.append(line)
    lines.append(
        f"summary: {verified}/{len(results)} verified, "
        f"{len(falsified)} falsified, {len(limited)} resource-limited"
    )
    _emit(document, args.format, lines)
    if limited:
        return EXIT_RESOURCE
    if falsified:
        return EXIT_FALSIFIED
    return EXIT_OK


# ---------------------------------------------------------------------------
# table
# ---------------------------------------------------------------------------


def cmd_table(args) -> int:
    if not args.allow_large and (args.n > DEFAULT_MAX_N or args.m > DEFAULT_MAX_M):
        raise UsageError(
            f"table n={args.n}, m={args.m} is outside the default bounds; pass --allow-large"
        )
    if args.table == "Z":
        expansion = extract_z(args.n, args.m)
        entries = [
            {"key": list(key), "coeff": str(coeff)}
            for key, coeff in expansion.coefficients.items()
        ]
        document = {"table": "Z", "n": args.n, "m": args.m, "entries": entries}
        lines = [
            f"z^{args.m}_{{{','.join(map(str, key)) or '0'}}} = {coeff}"
            for key, coeff in expansion.coefficients.items()
        ]
        _emit(document, args.format, lines)
        return EXIT_OK
    if not args.key:
        raise UsageError("table Y requires --key")
    key = _parse_key(args.key)
    if vector_weight(key) != args.n or len(key) != args.n:
        raise UsageError(f"key {key} does not have weight {args.n}")
    expansion = extract_y_basis(args.n, args.m, key)
    entries = [
        {"key": list(entry_key), "coeff": _format_rational(coeff)}
        for entry_key, coeff in expansion.coefficients.items()
    ]
    document = {
        "table": "Y",
        "n": args.n,
        "m": args.m,
        "basis_key": list(key),
        "entries": entries,
    }
    label = f"Y_{{{args.n - args.m},{{{','.join(map(str, key))}}}}}"
    lines = [f"{label} = {_format_powersum(expansion)}"]
    _emit(document, args.format, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# solve-c
# ---------------------------------------------------------------------------


def _key_text(n: int, key) -> str:
    return f"C_{{{n},{{{', '.join(map(str, key))}}}}}"


def cmd_solve_c(args) -> int:
    if args.n < 2:
        raise UsageError("solve-c needs --n >= 2")
    solution = solve_c_coefficients(args.n)
    relations = []
    for key in solution.key_order:
        if key not in solution.dependent:
            continue
        form = solution.dependent[key]
        relations.append(
            {
                "key": list(key),
                "terms": [
                    {"free": list(fk), "coeff": _format_rational(c)}
                    for fk, c in sorted(form.items(), key=lambda kv: solution.key_order.index(kv[0]))
                ],
            }
        )
    document = {
        "command": "solve-c",
        "n": args.n,
        "unknowns": len(solution.key_order),
        "equations": solution.equations,
        "nullspace_dimension": solution.nullspace_dimension,
        "free_keys": [list(k) for k in solution.free_keys],
        "relations": relations,
    }
    lines = [
        f"n = {args.n}: {len(solution.key_order)} unknowns, "
        f"{solution.equations} equations, nullspace dimension {solution.nullspace_dimension}",
        "free: " + ", ".join(_key_text(args.n, k) for k in solution.free_keys),
    ]
    for key in solution.key_order:
        if key not in solution.dependent:
            continue
        form = solution.dependent[key]
        if not form:
            lines.append(f"{_key_text(args.n, key)} = 0")
            continue
        parts = []
        for fk in solution.free_keys:
            if fk in form:
                coeff = form[fk]
                if coeff == 1:
                    parts.append(_key_text(args.n, fk))
                elif coeff == -1:
                    parts.append(f"-{_key_text(args.n, fk)}")
                else:
                    parts.append(f"{_format_rational(coeff)}*{_key_text(args.n, fk)}")
        lines.append(f"{_key_text(args.n, key)} = " + " + ".join(parts).replace("+ -", "- "))
    exit_code = EXIT_OK
    if args.check_bernoulli:
        if args.n not in TABULATED_BERNOULLI_FREE_VALUES:
            raise UsageError(
                f"tabulated free values cover n <= 5; got n = {args.n}"
            )
        matches = bernoulli_reconstruction_check(args.n)
        document["bernoulli_check"] = {"n": args.n, "matches": matches}
        lines.append(
            f"Bernoulli reconstruction for n={args.n}: "
            + ("confirmed" if matches else "MISMATCH")
        )
        if not matches:
            exit_code = EXIT_FALSIFIED
    _emit(document, args.format, lines)
    return exit_code


# ---------------------------------------------------------------------------
# bernoulli-relations
# ---------------------------------------------------------------------------


def cmd_bernoulli_relations(args) -> int:
    nonlinear = verify_nonlinear_bernoulli()
    identity = verify_bernoulli_identity(args.max_index)
    document = {
        "command": "bernoulli-relations",
        "nonlinear": nonlinear.to_json(),
        "elimination": identity.to_json(),
        "all_ok": nonlinear.all_ok and identity.all_ok,
    }
    lines = []
    for label, value, ok in nonlinear.entries:
        lines.append(f"{label} = {_format_rational(value)} [{'ok' if ok else 'FAIL'}]")
    for index, computed, expected, ok in identity.entries:
        lines.append(
            f"a_{index} = {computed} "
            f"[{'matches' if ok else 'DIFFERS FROM'} -(2*a_1)^{index}*B_{index}/{index}]"
        )
    lines.append("all relations hold" if document["all_ok"] else "FAILURES present")
    _emit(document, args.format, lines)
    return EXIT_OK if document["all_ok"] else EXIT_FALSIFIED


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

_FAMILY_NOTES = {
    "legendre": "a_2k from the even log-derivatives of J_0; odd a_k vanish",
    "laguerre": "a_k = (k-1)!, normalization 1/n!",
    "hermite": "a_2 = -2, all other a_k = 0",
    "fibonacci": "a_2k = 2*(2k-1)!, odd a_k vanish, normalization 1/n!",
    "bernoulli": "a_k = (-1)^(k-1) B_k / k",
    "t": "a_k = (-1)^k B_k / k",
    "euler": "a_1 = -1/2, a_k = E_(k-1)(0) / 2",
    "bell": "a_k = 1",
}


def cmd_families(args) -> int:
    rows = []
    for name in FAMILY_NAMES:
        spec = get_family(name)
        rows.append(
            {
                "name": name,
                "generating_function": spec.gf_note,
                "coefficients": _FAMILY_NOTES[name],
                "s_0": _format_rational(spec.s0),
                "a_1..a_6": [_format_rational(v) for v in spec.coefficients(6)],
            }
        )
    rows.append(
        {
            "name": SYMBOLIC_NAME,
            "generating_function": "generic",
            "coefficients": "a_k left as free symbols",
            "s_0": "0",
            "a_1..a_6": ["a_1", "a_2", "a_3", "a_4", "a_5", "a_6"],
        }
    )
    document = {"command": "families", "families": rows}
    lines = [
        f"{row['name']:<10} {row['generating_function']:<28} {row['coefficients']}"
        for row in rows
    ]
    _emit(document, args.format, lines)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symmrel",
        description="Exact checks and tables for relations of homogeneous symmetric polynomials",
    )
    parser.add_argument("--version", action="version", version=f"symmrel {__version__}")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--term-cap", type=int, default=None, help="expansion guard override")
    parser.add_argument("--jobs", type=int, default=1, help="parallel verification workers")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run relation checks over a case grid")
    p_verify.add_argument("--conjecture", type=int, choices=(1, 2, 3), required=True)
    p_verify.add_argument("--family", help="family name or 'symbolic' (conjectures 1 and 2)")
    p_verify.add_argument("--key", help="power-sum product key k1,k2,... (conjecture 3)")
    p_verify.add_argument("--n", help="degree or degree range LO..HI")
    p_verify.add_argument("--m", help="variable count or range LO..HI (default 2..4)")
    p_verify.add_argument("--prescreen-points", type=int, default=3)
    p_verify.add_argument("--allow-large", action="store_true")
    p_verify.set_defaults(handler=cmd_verify)

    p_table = sub.add_parser("table", help="regenerate coefficient tables")
    p_table.add_argument("table", choices=("Z", "Y"))
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--m", type=int, required=True)
    p_table.add_argument("--key", help="basis key for Y tables")
    p_table.add_argument("--allow-large", action="store_true")
    p_table.set_defaults(handler=cmd_table)

    p_solve = sub.add_parser("solve-c", help="solve the residue-vanishing system")
    p_solve.add_argument("--n", type=int, required=True)
    p_solve.add_argument("--check-bernoulli", action="store_true")
    p_solve.set_defaults(handler=cmd_solve_c)

    p_bern = sub.add_parser("bernoulli-relations", help="nonlinear Bernoulli-number checks")
    p_bern.add_argument("--max-index", type=int, default=8)
    p_bern.set_defaults(handler=cmd_bernoulli_relations)

    p_fam = sub.add_parser("families", help="list the family registry")
    p_fam.set_defaults(handler=cmd_families)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.term_cap is not None:
        try:
            set_term_cap(args.term_cap)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.handler(args)
    except (UsageError, PreconditionError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TermCapExceeded as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
