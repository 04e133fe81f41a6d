"""Command-line interface.

Subcommands: ``validate``, ``invariant``, ``classify``, ``canonical``,
``perturb``, and ``snf``.  Exit codes are a stable contract:

    0  success / equivalent
    1  inequivalent
    2  domain violation (bad component count, divisibility, invariants)
    3  I/O or parse failure
    4  internal self-check failure (signals a bug)

JSON output carries ``"schema": 1``.  Randomized subcommands take a seed
and default to a fixed constant, so runs are reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import Result, classify, handlebody_mode
from .errors import DomainError, SelfCheckError, SgdParseError
from .homology import CycleBasis, rank
from .linking import diagram_invariant, linking_matrix, over_under_consistent, require_two_components
from .moves import MoveRecord, apply_move, format_move, parse_move, walk_steps
from .moves import canonical_diagram as _canonical
from .moves import _record as _move_record
from .sgd import parse_sgd, serialize_sgd, validate
from .smith import IntMatrix, smith_normal_form

DEFAULT_SEED = 1729
SCHEMA = 1

EXIT_OK = 0
EXIT_INEQUIVALENT = 1
EXIT_DOMAIN = 2
EXIT_IO = 3
EXIT_SELFCHECK = 4


def _read_diagram(path: str, check: bool = True):
    return parse_sgd(Path(path).read_text(encoding="utf-8"), check=check)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def cmd_validate(args) -> int:
    d = _read_diagram(args.path, check=False)
    problems = validate(d)
    if not problems:
        print("OK")
        return EXIT_OK
    for v in problems:
        print(f"violation [{v.code}] {v.message}")
    return EXIT_DOMAIN


def _basis_json(basis: CycleBasis) -> dict:
    return {
        "tree": list(basis.tree_edges),
        "cycles": [dict(sorted(c.coeffs.items())) for c in basis.cycles],
    }


def cmd_invariant(args) -> int:
    d = _read_diagram(args.path)
    require_two_components(d)
    mat = linking_matrix(d)
    inv = diagram_invariant(d)
    if args.json:
        payload = {
            "schema": SCHEMA,
            "ranks": [mat.rows, mat.cols],
            "matrix": [list(r) for r in mat.entries],
            "divisors": list(inv.divisors),
            "invariant": "0" if inv.is_zero else "chain",
            "over_under_consistent": over_under_consistent(d),
        }
        if args.show_basis:
            payload["basis1"] = _basis_json(mat.basis1)
            payload["basis2"] = _basis_json(mat.basis2)
        print(json.dumps(payload))
        return EXIT_OK
    print(inv)
    if args.show_matrix:
        print(f"# matrix {mat.rows} x {mat.cols}")
        for row in mat.entries:
            print(" ".join(str(x) for x in row))
    if args.show_basis:
        for basis in (mat.basis1, mat.basis2):
            print(f"# basis {basis.component} tree: {' '.join(basis.tree_edges) or '-'}")
            for k, c in enumerate(basis.cycles):
                body = " ".join(f"{e}:{v:+d}" for e, v in sorted(c.coeffs.items()))
                print(f"cycle {basis.component}.{k + 1}: {body}")
    return EXIT_OK


def cmd_classify(args) -> int:
    a = _read_diagram(args.path_a)
    b = _read_diagram(args.path_b)
    require_two_components(a)
    require_two_components(b)
    verdict = handlebody_mode(a, b) if args.handlebody else classify(a, b, ordered=args.ordered)
    if args.json:
        print(json.dumps({
            "schema": SCHEMA,
            "result": verdict.result.value,
            "pairing": verdict.pairing,
            "obstruction": verdict.obstruction,
            "ranks": [list(verdict.ranks[0]), list(verdict.ranks[1])],
            "invariants": [str(verdict.invariants[0]), str(verdict.invariants[1])],
            "mode": "handlebody" if args.handlebody else "graph",
        }))
    else:
        print(verdict.describe(handlebody=args.handlebody))
    return EXIT_OK if verdict.result is Result.EQUIVALENT else EXIT_INEQUIVALENT


def cmd_canonical(args) -> int:
    d = _canonical(args.m, args.n, args.divisors)
    _emit(serialize_sgd(d), args.out)
    return EXIT_OK


def _check_seed(seed: int) -> int:
    if not 0 <= seed < 2**64:
        raise DomainError("seed must fit in 64 unsigned bits")
    return seed


def cmd_perturb(args) -> int:
    d = _read_diagram(args.path)
    require_two_components(d)
    inv = diagram_invariant(d)

    if args.replay:
        def steps():
            cur = d
            for line in Path(args.replay).read_text(encoding="utf-8").splitlines():
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                kind, params = parse_move(line)
                rec = _move_record(cur, kind, params)
                cur = apply_move(cur, rec)
                yield rec, cur
        walk = steps()
    else:
        walk = walk_steps(d, args.steps, _check_seed(args.seed))

    records: list[MoveRecord] = []
    final = d
    for rec, final in walk:
        records.append(rec)
        new_inv = diagram_invariant(final)
        if rec.homotopy_preserving and new_inv != inv:
            raise SelfCheckError(
                f"invariant changed from {inv} to {new_inv} "
                f"after homotopy-preserving move {format_move(rec)}"
            )
        inv = new_inv

    move_lines = [format_move(r) for r in records]
    if args.moves_out:
        Path(args.moves_out).write_text("".join(f"{ln}\n" for ln in move_lines), encoding="utf-8")
    if args.json:
        print(json.dumps({
            "schema": SCHEMA,
            "invariant": str(inv),
            "moves": move_lines,
            "sgd": serialize_sgd(final),
        }))
        return EXIT_OK
    text = serialize_sgd(final) + "".join(f"# move {ln}\n" for ln in move_lines)
    _emit(text, args.out)
    return EXIT_OK


def _read_matrix(path: str) -> IntMatrix:
    tokens = Path(path).read_text(encoding="utf-8").split()
    if len(tokens) < 2:
        raise SgdParseError("matrix file needs a 'rows cols' header")
    try:
        rows, cols = int(tokens[0]), int(tokens[1])
        entries = [int(t) for t in tokens[2:]]
    except ValueError as exc:
        raise SgdParseError(f"matrix file: {exc}") from None
    if rows < 0 or cols < 0 or len(entries) != rows * cols:
        raise SgdParseError(
            f"matrix file declares {rows}x{cols} but carries {len(entries)} entries"
        )
    return IntMatrix(rows, cols, tuple(
        tuple(entries[i * cols:(i + 1) * cols]) for i in range(rows)
    ))


def cmd_snf(args) -> int:
    mat = _read_matrix(args.path)
    cert = smith_normal_form(mat)  # verified internally before returning
    if args.json:
        print(json.dumps({
            "schema": SCHEMA,
            "divisors": list(cert.divisors),
            "D": cert.D.to_lists(),
            "U": cert.U.to_lists(),
            "V": cert.V.to_lists(),
        }))
    else:
        print(" ".join(str(x) for x in cert.divisors))
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="sglink",
        description="Linking divisor invariants, moves, and classification "
                    "for two-component spatial-graph diagrams.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check an SGD file's structural invariants")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("invariant", help="compute the divisor-chain invariant of a diagram")
    sp.add_argument("path")
    sp.add_argument("--show-basis", action="store_true")
    sp.add_argument("--show-matrix", action="store_true")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("classify", help="decide equivalence of two diagrams")
    sp.add_argument("path_a")
    sp.add_argument("path_b")
    sp.add_argument("--ordered", action="store_true",
                    help="keep the component pairing fixed instead of trying both")
    sp.add_argument("--handlebody", action="store_true",
                    help="read diagrams as handlebody spines (genus labels)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("canonical", help="generate the canonical diagram for ranks and divisors")
    sp.add_argument("m", type=int)
    sp.add_argument("n", type=int)
    sp.add_argument("divisors", type=int, nargs="*")
    sp.add_argument("--out", help="write SGD here instead of stdout")
    sp.set_defaults(func=cmd_canonical)

    sp = sub.add_parser("perturb", help="apply random invariant-preserving moves, with self-check")
    sp.add_argument("path")
    sp.add_argument("--steps", type=int, default=20)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--replay", help="apply moves from this file instead of sampling")
    sp.add_argument("--out", help="write perturbed SGD here instead of stdout")
    sp.add_argument("--moves-out", help="write the raw move list here (replayable)")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("snf", help="diagonalize an integer matrix file, printing the divisors")
    sp.add_argument("path")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_snf)

    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except SgdParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except SelfCheckError as exc:
        print(f"self-check failed: {exc}", file=sys.stderr)
        return EXIT_SELFCHECK


if __name__ == "__main__":
    sys.exit(main())
