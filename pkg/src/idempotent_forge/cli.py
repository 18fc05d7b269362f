"""Command-line front end: ``python -m idempotent_forge <command>``.

Exit codes: 0 success / affirmative answer, 1 negative answer, 2 input
error, 3 internal invariant breach.  All scalars travel as JSON strings.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from .canonical import invariant_factors, minimal_polynomial, spectral_scalars, spectral_split, weyr_sequence
from .composite import (
    Certificate,
    InternalInconsistency,
    NotComposite,
    construct,
    decide,
    verify_report,
)
from .fields import GF, QQ, Field
from .matrix import Matrix
from .oracle import (
    BudgetExceeded,
    _guard,
    all_matrices,
    brute_force_decide,
    random_composite,
    random_matrix,
)

__all__ = [
    "ProblemFile",
    "InputError",
    "parse_field",
    "field_to_json",
    "load_problem",
    "problem_to_json",
    "matrix_to_json",
    "matrix_from_json",
    "certificate_to_json",
    "certificate_from_json",
    "main",
    "run",
]

SEED_ENV = "IDEMPOTENT_FORGE_SEED"
# random-mode cases are cross-checked by exhaustive search only below this many matrices
FUZZ_BRUTE_LIMIT = 2**20

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class ProblemFile:
    field: Field
    alpha: object
    beta: object
    matrix: Matrix


def parse_field(desc) -> Field:
    """``"Q"``, ``{"GF": p}``, or on the command line ``GF:p`` / ``GF(p)`` / ``p``."""
    try:
        if isinstance(desc, dict):
            if set(desc) != {"GF"}:
                raise InputError(f"bad field descriptor {desc!r}")
            return GF(int(desc["GF"]))
        if isinstance(desc, str):
            s = desc.strip()
            if s in ("Q", "QQ"):
                return QQ
            for prefix in ("GF:", "GF(", "GF"):
                if s.startswith(prefix):
                    s = s[len(prefix) :].rstrip(")")
                    break
            return GF(int(s))
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc
    raise InputError(f"bad field descriptor {desc!r}")


def field_to_json(field: Field):
    return "Q" if field.p is None else {"GF": field.p}


def matrix_from_json(rows, field: Field) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError("matrix must be a list of rows")
    try:
        cells = [[field.coerce(x if isinstance(x, str) else str(x)) for x in r] for r in rows]
        return Matrix(field, cells)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"bad matrix: {exc}") from exc


def matrix_to_json(M: Matrix):
    return [[M.field.render(x) for x in r] for r in M.data]


def load_problem(data) -> ProblemFile:
    if not isinstance(data, dict):
        raise InputError("problem must be a JSON object")
    missing = {"field", "alpha", "beta", "matrix"} - set(data)
    if missing:
        raise InputError(f"problem lacks {sorted(missing)}")
    field = parse_field(data["field"])
    try:
        alpha = field.coerce(str(data["alpha"]))
        beta = field.coerce(str(data["beta"]))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar: {exc}") from exc
    if not alpha or not beta:
        raise InputError("alpha and beta must be nonzero")
    A = matrix_from_json(data["matrix"], field)
    if not A.is_square:
        raise InputError(f"matrix is {A.rows}x{A.cols}, not square")
    return ProblemFile(field, alpha, beta, A)


def problem_to_json(prob: ProblemFile):
    F = prob.field
    return {
        "field": field_to_json(F),
        "alpha": F.render(prob.alpha),
        "beta": F.render(prob.beta),
        "matrix": matrix_to_json(prob.matrix),
    }


def certificate_to_json(cert: Certificate):
    return {"P": matrix_to_json(cert.P), "Q": matrix_to_json(cert.Q)}


def certificate_from_json(data, prob: ProblemFile) -> Certificate:
    if not isinstance(data, dict) or not {"P", "Q"} <= set(data):
        raise InputError("certificate must have P and Q")
    P = matrix_from_json(data["P"], prob.field)
    Q = matrix_from_json(data["Q"], prob.field)
    if P.shape != prob.matrix.shape or Q.shape != prob.matrix.shape:
        raise InputError("certificate shape does not match the problem")
    return Certificate(P, Q, prob.alpha, prob.beta)


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _emit(obj, out):
    out.write(json.dumps(obj, indent=2) + "\n")


def cmd_decide(args, out):
    prob = load_problem(_read_json(args.input))
    d = decide(prob.matrix, prob.alpha, prob.beta)
    _emit(d.to_json(), out)
    return EXIT_OK if d.verdict else EXIT_NO


def cmd_construct(args, out):
    prob = load_problem(_read_json(args.input))
    try:
        cert = construct(prob.matrix, prob.alpha, prob.beta)
    except NotComposite as exc:
        _emit(exc.decision.to_json(), out)
        return EXIT_NO
    payload = certificate_to_json(cert)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    _emit(payload, out)
    return EXIT_OK


def cmd_verify(args, out):
    prob = load_problem(_read_json(args.input))
    cert = certificate_from_json(_read_json(args.certificate), prob)
    report = verify_report(prob.matrix, cert)
    ok = all(report.values())
    _emit({"valid": ok, "failed": [k for k, v in report.items() if not v], "checks": report}, out)
    return EXIT_OK if ok else EXIT_NO


def cmd_canon(args, out):
    prob = load_problem(_read_json(args.input))
    A, F = prob.matrix, prob.field
    scalars = spectral_scalars(F, prob.alpha, prob.beta)
    split = spectral_split(A, prob.alpha, prob.beta)
    _emit(
        {
            "minimal_polynomial": str(minimal_polynomial(A)),
            "invariant_factors": [str(f) for f in invariant_factors(A)],
            "weyr": {F.render(s): list(weyr_sequence(A, s)) for s in scalars.values()},
            "parts": split.dims(),
        },
        out,
    )
    return EXIT_OK


def _fuzz_cases(args, field):
    try:
        alpha, beta = field.coerce(args.alpha), field.coerce(args.beta)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad scalar: {exc}") from exc
    if not alpha or not beta:
        raise InputError("alpha and beta must be nonzero")
    if args.mode == "exhaustive":
        for n in range(1, args.n + 1):
            for A in all_matrices(field, n):
                yield "exhaustive", A, alpha, beta, None
        return
    for i in range(args.samples):
        seed = args.seed + i
        rng = random.Random(seed)
        n = rng.randint(1, args.n)
        A, _, _ = random_composite(field, n, alpha, beta, seed)
        yield "composite", A, alpha, beta, seed
        if field.p is not None:
            yield "random", random_matrix(field, n, rng), alpha, beta, seed


def cmd_fuzz(args, out):
    field = parse_field(args.field)
    if args.mode == "exhaustive":
        try:
            _guard(field, args.n)
        except BudgetExceeded as exc:
            raise InputError(str(exc)) from exc
    if args.seed is None:
        args.seed = int(os.environ.get(SEED_ENV, "0"))
    failures = []
    count = 0
    for idx, (kind, A, alpha, beta, seed) in enumerate(_fuzz_cases(args, field)):
        count += 1
        verdict = decide(A, alpha, beta).verdict
        problem = None
        if kind == "composite" and not verdict:
            problem = "criterion rejected a known composite"
        elif kind != "composite" and field.p is not None and field.p ** (A.rows * A.rows) <= FUZZ_BRUTE_LIMIT:
            if brute_force_decide(A, alpha, beta) != verdict:
                problem = "criterion disagrees with exhaustive search"
        if problem is None and verdict:
            try:
                cert = construct(A, alpha, beta)
                if not all(verify_report(A, cert).values()):
                    problem = "certificate does not verify"
            except InternalInconsistency as exc:
                problem = f"construction failed: {exc}"
        if problem:
            failures.append({"case": idx, "kind": kind, "seed": seed, "problem": problem, "matrix": matrix_to_json(A)})
    _emit(
        {"field": field_to_json(field), "mode": args.mode, "seed": args.seed, "cases": count, "failures": failures},
        out,
    )
    return EXIT_INTERNAL if failures else EXIT_OK


def _parser():
    ap = argparse.ArgumentParser(prog="idempotent-forge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", help="decide whether A is an (alpha, beta)-composite")
    p.add_argument("-i", "--input", required=True, help="problem JSON file ('-' for stdin)")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("construct", help="build a certificate (P, Q)")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", help="also write the certificate here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check a certificate exactly")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-c", "--certificate", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("canon", help="print similarity invariants and spectral part sizes")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("fuzz", help="compare the criterion with the oracles")
    p.add_argument("--field", default="GF:2", help="Q, GF:p or p")
    p.add_argument("--n", type=int, default=2, help="maximal matrix size")
    p.add_argument("--alpha", default="1")
    p.add_argument("--beta", default="1")
    p.add_argument("--mode", choices=("exhaustive", "random"), default="random")
    p.add_argument("--seed", type=int, default=None, help=f"base seed (default: ${SEED_ENV} or 0)")
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=cmd_fuzz)
    return ap


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except InternalInconsistency as exc:
        err.write(f"internal error: {exc}\n")
        return EXIT_INTERNAL


def main():
    sys.exit(run())
