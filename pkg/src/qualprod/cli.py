"""Command-line interface: ``qualprod classify|witness|verify|factor|graph``.

Exit codes: 0 success, 1 a sampled product contradicted its classification,
2 unreadable or invalid input, 3 a resource bound was hit, 4 the requested
statement holds so no witness exists.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from . import __version__
from .bipartite import build_graph
from .bipartite import to_dot as graph_dot
from .blockcirc import alternating_digraph
from .blockcirc import to_dot as digraph_dot
from .classify import (
    ANGLE_TOLERANCE,
    GOVERNING_CONDITION,
    STATEMENTS,
    ClassificationReport,
    KelloggRegion,
    classify,
    kellogg_margin,
    nonzero_eigenvalues,
)
from .errors import DomainError, PreconditionError, QualprodError, ResourceError
from .exact import ExactMatrix, char_poly, exact_rank, is_p0, minor_cap, ps_from_char_poly
from .scaling import CycleObstruction, factor
from .signpat import SignPattern, sample_product, sign_of
from .witness import DEFAULT_EPSILON, strictify, witness_for

SCHEMA_VERSION = 1
DOCUMENT_FIELDS = {"version", "kind", "rows", "cols", "entries"}
RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")

EXIT_OK = 0
EXIT_CONTRADICTION = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_HOLDS = 4


class InputError(QualprodError):
    """A document could not be read or violates the schema."""


# ---------------------------------------------------------------------------
# Documents
# ---------------------------------------------------------------------------


def _parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if not isinstance(x, str) or not RATIONAL_RE.match(x.strip()):
        raise InputError(f"rational entries must be strings 'p/q' or 'p', got {x!r}")
    q = Fraction(x.strip())
    return q


def parse_document(doc) -> SignPattern | ExactMatrix:
    if not isinstance(doc, dict):
        raise InputError("document must be a JSON object")
    unknown = set(doc) - DOCUMENT_FIELDS
    if unknown:
        raise InputError(f"unknown field(s): {', '.join(sorted(unknown))}")
    missing = DOCUMENT_FIELDS - set(doc)
    if missing:
        raise InputError(f"missing field(s): {', '.join(sorted(missing))}")
    if doc["version"] != SCHEMA_VERSION or isinstance(doc["version"], bool):
        raise InputError(f"unsupported version {doc['version']!r}; expected {SCHEMA_VERSION}")
    rows, cols, entries = doc["rows"], doc["cols"], doc["entries"]
    for name, v in (("rows", rows), ("cols", cols)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise InputError(f"{name} must be a positive integer")
    if not isinstance(entries, list) or len(entries) != rows:
        raise InputError(f"entries must be a list of {rows} rows")
    for r in entries:
        if not isinstance(r, list) or len(r) != cols:
            raise InputError(f"each row must have {cols} entries")
    if doc["kind"] == "sign-pattern":
        flat = []
        for r in entries:
            for x in r:
                if isinstance(x, bool) or x not in (-1, 0, 1) or not isinstance(x, int):
                    raise InputError(f"sign pattern entries must be -1, 0 or 1, got {x!r}")
                flat.append(x)
        return SignPattern(rows, cols, tuple(flat))
    if doc["kind"] == "exact-matrix":
        return ExactMatrix(rows, cols, tuple(_parse_rational(x) for r in entries for x in r))
    raise InputError(f"unknown kind {doc['kind']!r}")


def load_document(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None
    try:
        return parse_document(doc)
    except InputError as exc:
        raise InputError(f"{path}: {exc}") from None
    except (DomainError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def load_pattern(path: str) -> SignPattern:
    obj = load_document(path)
    if not isinstance(obj, SignPattern):
        raise InputError(f"{path}: expected a sign-pattern document")
    return obj


def load_matrix(path: str) -> ExactMatrix:
    obj = load_document(path)
    if not isinstance(obj, ExactMatrix):
        raise InputError(f"{path}: expected an exact-matrix document")
    return obj


def _q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _matrix_json(m: ExactMatrix) -> list[list[str]]:
    return [[_q(x) for x in r] for r in m.to_rows()]


def write_atomic(path: str, text: str) -> None:
    """Write through a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".qualprod-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def _cycle_json(g, c) -> dict | None:
    if c is None:
        return None
    return {"vertices": [g.label(v) for v in c.vertices], "weight": c.weight}


def report_json(r: ClassificationReport) -> dict:
    g = build_graph(r.pattern)
    tstar = None
    if r.tstar is not None:
        tstar = {
            "center": g.label(r.tstar.center),
            "arms": [[g.label(m), g.label(leaf)] for m, leaf in r.tstar.arms],
        }
    return {
        "version": SCHEMA_VERSION,
        "kind": "classification-report",
        "pattern": r.pattern.to_rows(),
        "two_odd": r.two_odd,
        "forest": r.forest,
        "caterpillar_forest": r.caterpillar_forest,
        "level": r.level.value,
        "conclusions": {s: r.conclusions[s].value for s in STATEMENTS},
        "certificates": {
            "non_two_odd_cycle": _cycle_json(g, r.two_odd_violation),
            "shortest_cycle": _cycle_json(g, r.cycle),
            "tstar": tstar,
        },
    }


def report_text(r: ClassificationReport) -> str:
    flags = {"2-odd": r.two_odd, "forest": r.forest, "caterpillar forest": r.caterpillar_forest}
    lines = [f"pattern {r.pattern.rows}x{r.pattern.cols}", str(r.pattern), f"level: {r.level.value}"]
    for s in STATEMENTS:
        cond = GOVERNING_CONDITION[s]
        noun = cond if cond == "2-odd" else f"a {cond}"
        reason = f"graph is {noun}" if flags[cond] else f"graph is not {noun}"
        lines.append(f"{s:<7} {r.conclusions[s].value:<6} ({reason})")
    return "\n".join(lines) + "\n"


def cmd_classify(args) -> int:
    p = load_pattern(args.input)
    r = classify(p)
    if args.dot:
        write_atomic(args.dot, graph_dot(build_graph(p)))
    _emit(report_text(r) if args.text else _dumps(report_json(r)), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# witness
# ---------------------------------------------------------------------------


def cmd_witness(args) -> int:
    p = load_pattern(args.input)
    try:
        cert = witness_for(p, args.target)
    except PreconditionError as exc:
        print(f"qualprod: {exc}", file=sys.stderr)
        return EXIT_HOLDS
    if args.strict:
        cert = strictify(cert, _parse_rational(args.epsilon))
    if not cert.recheck():
        raise AssertionError("certificate failed its independent recheck")
    _emit(_dumps(cert.to_dict()), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _float_p0(m: ExactMatrix, tol: float = 1e-9) -> bool:
    a = m.to_numpy()
    scale = max(1.0, float(np.abs(a).max(initial=0)))
    for size in range(1, m.rows + 1):
        for alpha in combinations(range(m.rows), size):
            if np.linalg.det(a[np.ix_(alpha, alpha)]) < -tol * scale**size:
                return False
    return True


def _float_ps(m: ExactMatrix, tol: float = 1e-9) -> bool:
    ev = np.linalg.eigvals(m.to_numpy())
    scale = max(1.0, float(np.abs(ev).max(initial=0)))
    return bool(np.all(np.abs(ev.imag) <= tol * scale) and np.all(ev.real >= -tol * scale))


def _check_product(base: SignPattern, k: int, rng: random.Random, zero_probability: float, angle_tol: float, rank_check: bool):
    prod = sample_product(base, 2 * k, rng, zero_probability=zero_probability)
    m = prod.product
    exact = m.rows <= minor_cap()
    if exact:
        p0 = is_p0(m).holds
        cp = char_poly(m)
        ps = ps_from_char_poly(cp).holds
    else:
        p0, ps, cp = _float_p0(m), _float_ps(m), None
    rank_ok = None
    if rank_check:
        s = exact_rank(prod.factors[0].matrix)
        rank_ok = exact_rank(m) == s and (cp is None or cp.zero_multiplicity() == m.rows - s)
    interior = boundary = 0
    if p0:
        for lam in nonzero_eigenvalues(m):
            if abs(lam) < 1e-12:
                continue
            margin = kellogg_margin(complex(lam), KelloggRegion(m.rows))
            if margin > angle_tol:
                interior += 1
            elif margin > -angle_tol:
                boundary += 1
    return {
        "p0": p0,
        "ps": ps,
        "exact": exact,
        "rank_ok": rank_ok,
        "kellogg_interior": interior,
        "kellogg_boundary": boundary,
        "factors": [_matrix_json(f.matrix) for f in prod.factors],
    }


def _worker(job) -> list[tuple[int, int, dict]]:
    base_entries, shape, ks, indices, seed, zero_probability, angle_tol, rank_check = job
    base = SignPattern(shape[0], shape[1], tuple(base_entries))
    rng = random.Random(seed)
    out = []
    for k in ks:
        for i in indices:
            out.append((k, i, _check_product(base, k, rng, zero_probability, angle_tol, rank_check)))
    return out


def run_verify(
    base: SignPattern,
    ks: Sequence[int],
    samples: int,
    seed: int,
    workers: int = 1,
    zero_probability: float = 0.0,
    angle_tol: float = ANGLE_TOLERANCE,
) -> dict:
    """Sample exact alternating products and compare with the classification.

    Worker ``w`` takes sample indices ``w, w + W, ...`` with a stream seeded by
    ``"{seed}:{w}"``; results are merged in index order, so the report depends
    only on the inputs, the seed and the worker count.
    """
    r = classify(base)
    rank_check = r.two_odd
    jobs = [
        (base.entries, base.shape, tuple(ks), tuple(range(w, samples, workers)), f"{seed}:{w}", zero_probability, angle_tol, rank_check)
        for w in range(workers)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_worker, jobs))
    else:
        results = [_worker(j) for j in jobs]
    merged: dict[tuple[int, int], tuple[int, dict]] = {}
    for w, res in enumerate(results):
        for k, i, rec in res:
            merged[(k, i)] = (w, rec)
    outcomes = {}
    contradictions = 0
    rank_failures = 0
    interior = boundary = 0
    for k in ks:
        for kind in ("P0", "PS"):
            name = f"{kind}_{2 * k}"
            expected = r.conclusions.get(name, r.conclusions[f"{kind}_ALL"]).value
            passes = fails = 0
            first = None
            for i in range(samples):
                w, rec = merged[(k, i)]
                ok = rec["p0" if kind == "P0" else "ps"]
                if ok:
                    passes += 1
                else:
                    fails += 1
                    if first is None:
                        first = {"sample": i, "worker": w, "stream_seed": f"{seed}:{w}", "factors": rec["factors"]}
            if expected == "HOLDS" and fails:
                contradictions += 1
            outcomes[name] = {"expected": expected, "pass": passes, "fail": fails, "first_counterexample": first}
        for i in range(samples):
            rec = merged[(k, i)][1]
            rank_failures += rec["rank_ok"] is False
            interior += rec["kellogg_interior"]
            boundary += rec["kellogg_boundary"]
    exact_all = all(rec["exact"] for _, rec in merged.values())
    return {
        "version": SCHEMA_VERSION,
        "kind": "verify-report",
        "pattern": base.to_rows(),
        "seed": seed,
        "workers": workers,
        "samples_per_k": samples,
        "k": list(ks),
        "zero_probability": zero_probability,
        "exact": exact_all,
        "level": r.level.value,
        "outcomes": outcomes,
        "rank_check": {"applied": rank_check, "failures": rank_failures},
        "kellogg": {"interior_hits": interior, "boundary_hits": boundary, "angular_tolerance": angle_tol},
        "contradictions": contradictions + rank_failures + interior,
    }


def _int_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None
    if not out or any(k < 1 for k in out):
        raise argparse.ArgumentTypeError("k values must be positive")
    return out


def cmd_verify(args) -> int:
    p = load_pattern(args.input)
    report = run_verify(p, args.k, args.samples, args.seed, args.workers, args.zero_probability, args.epsilon)
    _emit(_dumps(report), args.out)
    return EXIT_CONTRADICTION if report["contradictions"] else EXIT_OK


# ---------------------------------------------------------------------------
# factor and graph
# ---------------------------------------------------------------------------


def factor_json(result, a: ExactMatrix) -> dict:
    if isinstance(result, CycleObstruction):
        g = build_graph(sign_of(a))
        return {
            "version": SCHEMA_VERSION,
            "kind": "cycle-obstruction",
            "cycle": [g.label(v) for v in result.cycle.vertices],
            "lhs": _q(result.lhs),
            "rhs": _q(result.rhs),
        }
    return {
        "version": SCHEMA_VERSION,
        "kind": "diagonal-pair",
        "d": [_q(x) for x in result.d],
        "e": [_q(x) for x in result.e],
    }


def cmd_factor(args) -> int:
    a = load_matrix(args.reference)
    b = load_matrix(args.target)
    if a.shape != b.shape or sign_of(a) != sign_of(b):
        raise InputError("reference and target must have the same shape and sign pattern")
    _emit(_dumps(factor_json(factor(a, b), a)), args.out)
    return EXIT_OK


def cmd_graph(args) -> int:
    p = load_pattern(args.input)
    text = graph_dot(build_graph(p))
    if args.dot:
        write_atomic(args.dot, text)
    else:
        sys.stdout.write(text)
    if args.digraph is not None:
        dtext = digraph_dot(alternating_digraph(p, args.digraph))
        if args.digraph_dot:
            write_atomic(args.digraph_dot, dtext)
        else:
            sys.stdout.write(dtext)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qualprod", description="Alternating products of sign patterns.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="decide the P0/PS statements for a sign pattern")
    c.add_argument("input")
    fmt = c.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="JSON report (default)")
    fmt.add_argument("--text", action="store_true", help="one line per statement")
    c.add_argument("--dot", help="also write the bipartite graph as DOT")
    c.add_argument("--out", help="write the report here instead of stdout")
    c.set_defaults(func=cmd_classify)

    w = sub.add_parser("witness", help="write a certificate that a statement fails")
    w.add_argument("input")
    w.add_argument("--target", required=True, choices=STATEMENTS)
    w.add_argument("--strict", action="store_true", help="move the factors into the open class")
    w.add_argument("--epsilon", default=_q(DEFAULT_EPSILON), help="starting perturbation for --strict")
    w.add_argument("--out")
    w.set_defaults(func=cmd_witness)

    v = sub.add_parser("verify", help="randomized exact corroboration")
    v.add_argument("input")
    v.add_argument("--k", type=_int_list, default=[1, 2, 3], help="comma-separated k; products have 2k factors")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--zero-probability", type=float, default=0.0, help="sample from the closure instead")
    v.add_argument("--epsilon", type=float, default=ANGLE_TOLERANCE, help="angular tolerance of the wedge check")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    f = sub.add_parser("factor", help="diagonal scaling between two members of a class")
    f.add_argument("reference")
    f.add_argument("target")
    f.add_argument("--out")
    f.set_defaults(func=cmd_factor)

    g = sub.add_parser("graph", help="DOT export of the bipartite graph and product digraph")
    g.add_argument("input")
    g.add_argument("--dot", help="bipartite graph output path (stdout if omitted)")
    g.add_argument("--digraph", type=int, help="also emit the digraph of (A A^t)^k")
    g.add_argument("--digraph-dot", help="digraph output path (stdout if omitted)")
    g.set_defaults(func=cmd_graph)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    if getattr(args, "samples", 1) < 1 or getattr(args, "workers", 1) < 1:
        print("qualprod: --samples and --workers must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except (InputError, DomainError) as exc:
        print(f"qualprod: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceError as exc:
        print(f"qualprod: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
