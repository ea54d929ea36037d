"""Command-line front end.

Exit codes: 0 on success or a passing certificate, 1 when a verification
fails (the counterexample goes to stderr), 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from typing import Any

from .certificate import CERTIFICATE_SCHEMA, Certificate, new_certificate
from .classify import PI, classify_element, decide_pi
from .finite import tables
from .poly import format_poly, hat_transform, quasi_inverse_witness
from .quasigroup import all_subgroups, circ_identity_sweep, conjugation_check, subgroup_ring_closure_check
from .radical import radical_summary
from .ring import InfiniteRingError, parse_ring
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2

_STRING_OR_NULL = {"type": ["string", "null"]}

OUTPUT_SCHEMAS: dict[str, dict[str, Any]] = {
    "classify": {
        "type": "object",
        "required": ["ring", "element", "in_N", "in_Q", "in_pi", "in_I", "quasi_inverse", "witnesses"],
        "properties": {
            "ring": {"type": "string"},
            "element": {"type": "string"},
            "in_N": {"type": ["boolean", "null"]},
            "in_Q": {"type": ["boolean", "null"]},
            "in_pi": {"type": ["boolean", "null"]},
            "in_I": {"type": ["boolean", "null"]},
            "quasi_inverse": _STRING_OR_NULL,
            "witnesses": {"type": "object", "additionalProperties": {"type": "string"}},
        },
    },
    "radicals": {
        "type": "object",
        "required": ["ring", "size", "J", "Nil_upper", "Nil_lower", "N_count", "Q_count", "chain_holds"],
        "properties": {
            "ring": {"type": "string"},
            "size": {"type": "integer"},
            "J": {"type": "array", "items": {"type": "string"}},
            "Nil_upper": {"type": "array", "items": {"type": "string"}},
            "Nil_lower": {"type": "array", "items": {"type": "string"}},
            "N_count": {"type": "integer"},
            "Q_count": {"type": "integer"},
            "chain_holds": {"type": "boolean"},
        },
    },
    "witness": {
        "type": "object",
        "required": ["ring", "element", "decision", "pi_witness", "quasi_inverse_poly", "hat"],
        "properties": {
            "ring": {"type": "string"},
            "element": {"type": "string"},
            "decision": {"enum": ["yes", "no", "unknown"]},
            "pi_witness": _STRING_OR_NULL,
            "quasi_inverse_poly": _STRING_OR_NULL,
            "hat": _STRING_OR_NULL,
        },
    },
    "quasigroup": CERTIFICATE_SCHEMA,
    "verify": {"oneOf": [CERTIFICATE_SCHEMA, {"type": "array", "items": CERTIFICATE_SCHEMA}]},
    "list-suites": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["name", "summary"],
            "properties": {"name": {"type": "string"}, "summary": {"type": "string"}},
        },
    },
}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasiring",
        description="Quasi-regular and pi-algebraic elements, radicals and verification suites.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv", "text"), default="json")
        p.add_argument("--out", metavar="FILE", help="write output here (atomically) instead of stdout")

    p = sub.add_parser("classify", help="membership of an element in N, Q, pi and I")
    p.add_argument("--ring", required=True, help='ring descriptor, e.g. "Z/6" or "M2(Z/3)"')
    p.add_argument("--element", required=True, help='element literal, e.g. "2" or "[[0,1],[0,0]]"')
    common(p)

    p = sub.add_parser("radicals", help="J, Nil* and Nil_* of a finite ring")
    p.add_argument("--ring", required=True)
    common(p)

    p = sub.add_parser("quasigroup", help="circle identities, conjugation and subgroup closure checks")
    p.add_argument("--ring", required=True)
    p.add_argument("--element", help="check conjugation by this element only")
    common(p)

    p = sub.add_parser("witness", help="pi-witness, quasi-inverse polynomial and hat transform")
    p.add_argument("--ring", required=True)
    p.add_argument("--element", required=True)
    common(p)

    p = sub.add_parser("verify", help="run a named suite and emit its certificate")
    p.add_argument("--suite", required=True, help='suite name or "all"')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sample", type=int)
    p.add_argument("--max-n", type=int, dest="max_n")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed_ms for byte-stable output")
    common(p)

    p = sub.add_parser("list-suites", help="names of the verification suites")
    common(p)
    return parser


# ---------------------------------------------------------------------------
# Commands; each returns (payload, passed)
# ---------------------------------------------------------------------------


def _parse_element(ring_text: str, element_text: str):
    try:
        R = parse_ring(ring_text)
    except ValueError as exc:
        raise UsageError(f"bad ring descriptor: {exc}") from exc
    try:
        return R, R.parse(element_text)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad element literal for {R}: {exc}") from exc


def _finite_ring(ring_text: str):
    try:
        R = parse_ring(ring_text)
    except ValueError as exc:
        raise UsageError(f"bad ring descriptor: {exc}") from exc
    if not R.is_finite:
        raise UsageError(f"{R} is infinite; this command needs a finite ring")
    return R


def cmd_classify(args) -> tuple[Any, bool]:
    _R, a = _parse_element(args.ring, args.element)
    return classify_element(a).to_dict(), True


def cmd_radicals(args) -> tuple[Any, bool]:
    summary = radical_summary(_finite_ring(args.ring))
    return summary, bool(summary["chain_holds"])


def cmd_witness(args) -> tuple[Any, bool]:
    R, a = _parse_element(args.ring, args.element)
    decision, w = decide_pi(a)
    out = {
        "ring": str(R),
        "element": str(a),
        "decision": decision,
        "pi_witness": None,
        "quasi_inverse_poly": None,
        "hat": None,
    }
    if w is not None and w.kind == PI:
        out["pi_witness"] = format_poly(w.poly)
        out["quasi_inverse_poly"] = format_poly(quasi_inverse_witness(w.poly))
        out["hat"] = format_poly(hat_transform(w.poly))
    return out, True


def cmd_quasigroup(args) -> tuple[Any, bool]:
    R = _finite_ring(args.ring)
    T = tables(R)
    cert = new_certificate("quasigroup", anchor="quasigroup_identities")
    with cert.timed():
        circ_identity_sweep(R, cert)
        if args.element is not None:
            _R, r = _parse_element(args.ring, args.element)
            if not T.quasi_regular[T.idx(r)]:
                raise UsageError(f"{r} is not quasi-regular in {R}")
            conjugation_check(r, R, cert)
        else:
            for i in range(T.size):
                if T.quasi_regular[i]:
                    conjugation_check(T.elem(i), R, cert)
        if int(T.quasi_regular.sum()) <= 24:
            for S in all_subgroups(R):
                subgroup_ring_closure_check(S, cert)
    return cert, cert.passed


def cmd_verify(args) -> tuple[Any, bool]:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    for n in names:
        if n not in SUITES:
            raise UsageError(f"unknown suite {n!r}; try list-suites")
    certs = [run_suite(n, seed=args.seed, sample=args.sample, max_n=args.max_n) for n in names]
    payload = certs[0] if len(certs) == 1 else certs
    return payload, all(c.passed for c in certs)


def cmd_list_suites(args) -> tuple[Any, bool]:
    return [{"name": s.name, "summary": s.summary} for s in SUITES.values()], True


COMMANDS = {
    "classify": cmd_classify,
    "radicals": cmd_radicals,
    "quasigroup": cmd_quasigroup,
    "witness": cmd_witness,
    "verify": cmd_verify,
    "list-suites": cmd_list_suites,
}


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def to_jsonable(payload: Any, timing: bool = True) -> Any:
    if isinstance(payload, Certificate):
        return payload.to_dict(timing)
    if isinstance(payload, list):
        return [to_jsonable(p, timing) for p in payload]
    return payload


def _rows(data: Any) -> tuple[list[str], list[list[Any]]]:
    """Flatten a JSON-able payload into CSV rows."""
    if isinstance(data, dict) and "instances" in data:
        head = ["suite", "input", "claim", "result"]
        return head, [[data["suite"], i["input"], i["claim"], i["result"]] for i in data["instances"]]
    if isinstance(data, list) and data and isinstance(data[0], dict) and "instances" in data[0]:
        head, rows = ["suite", "input", "claim", "result"], []
        for d in data:
            rows += _rows(d)[1]
        return head, rows
    if isinstance(data, list):
        keys = list(data[0]) if data else []
        return keys, [[d[k] for k in keys] for d in data]
    rows = []
    for k, v in data.items():
        if isinstance(v, (list, dict)):
            v = json.dumps(v, sort_keys=True)
        rows.append([k, v])
    return ["key", "value"], rows


def render(data: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        head, rows = _rows(data)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        w.writerows(rows)
        return buf.getvalue()
    head, rows = _rows(data)
    if head == ["suite", "input", "claim", "result"]:
        lines = [f"{'PASS' if r[3] else 'FAIL'}  {r[0]}  {r[1]}: {r[2]}" for r in rows]
    elif head == ["key", "value"]:
        lines = [f"{k}: {v}" for k, v in rows]
    else:
        lines = ["  ".join(str(c) for c in r) for r in rows]
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".quasiring-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _counterexamples(data: Any) -> list[Any]:
    items = data if isinstance(data, list) else [data]
    return [d["counterexample"] for d in items if isinstance(d, dict) and d.get("counterexample")]


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        payload, passed = COMMANDS[args.command](args)
    except (UsageError, InfiniteRingError) as exc:
        print(f"quasiring: error: {exc}", file=stderr)
        return EXIT_USAGE
    data = to_jsonable(payload, timing=not getattr(args, "no_timing", False))
    text = render(data, args.format)
    if args.out:
        write_atomic(args.out, text)
    else:
        stdout.write(text)
    if not passed:
        for cx in _counterexamples(data) or ["check failed"]:
            print(f"counterexample: {json.dumps(cx, sort_keys=True)}", file=stderr)
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
