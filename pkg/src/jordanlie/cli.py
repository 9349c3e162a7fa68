"""Command line interface: ``jordanlie {analyze,reduce,fuzz,poset,export}``.

Exit codes: 0 success, 1 violation found, 2 usage or precondition
failure, 3 unparsable input.  ``JORDANLIE_FIELD`` sets the field for
files without a ``field`` key and for ``fuzz``; ``JORDANLIE_MAX_DIM``
caps the dimension of algebras the commands accept (default 16).
"""

from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
import tempfile
import time
from pathlib import Path

from .algebra import Algebra
from .corpus import (
    RandomAlgebraParams,
    enumerate_idempotent_pairs,
    example_nr,
    random_algebra,
    standard_corpus,
)
from .errors import (
    JordanLieError,
    NotSplitError,
    ParseError,
    PreconditionError,
    ReductionFailed,
    UndecidableError,
    UnsupportedCharacteristic,
)
from .fileformat import AlgebraFile, emit, emit_algebra, read, vec_out
from .inner_ideal import InnerIdealCandidate, corner, pair_relations
from .invariants import LABELS, Violation, analyze, build_checked, check_algebra, mutate
from .reduction import bar_minimal_reduce, split_witness
from .scalars import FieldSpec

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def env_field() -> FieldSpec:
    return FieldSpec.parse(os.environ.get("JORDANLIE_FIELD", "Q"))


def env_max_dim() -> int:
    raw = os.environ.get("JORDANLIE_MAX_DIM", "16")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"JORDANLIE_MAX_DIM must be an integer, got {raw!r}") from None


_FLAT = re.compile(r'\[\s*((?:(?:-?\d+|"-?\d+/\d+")\s*,\s*)*(?:-?\d+|"-?\d+/\d+"))\s*\]')


def dump(doc) -> str:
    """Indented JSON with scalar vectors kept on one line."""
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    text = _FLAT.sub(lambda m: "[" + ", ".join(t.strip() for t in m.group(1).split(",")) + "]", text)
    return text + "\n"


def write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _output(text: str, out: str | None):
    if out:
        write_atomic(Path(out), text)
    else:
        sys.stdout.write(text)


# loading


def load_candidate(args) -> tuple:
    doc = read(args.path, default_field=env_field())
    A = doc.algebra
    cap = args.max_dim if args.max_dim is not None else env_max_dim()
    if A.dim > cap:
        raise UsageError(f"algebra has dimension {A.dim} above the cap {cap}; raise --max-dim")
    try:
        gens = doc.subspace(args.subspace)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    cand = InnerIdealCandidate.make(A, gens, k=args.k)
    return doc, cand


def _element(A: Algebra, x) -> dict:
    return {"coords": vec_out(x), "text": A.fmt(x)}


def _space(A: Algebra, U) -> list:
    return [vec_out(u) for u in U.basis]


def report_document(A: Algebra, name: str, k: int, cand, rep) -> dict:
    doc = {
        "field": str(A.field),
        "dim": A.dim,
        "subspace": name,
        "k": k,
        "dim_B": cand.B.dim,
        "inner_ideal": rep.is_inner,
        "jordan_lie": rep.is_jordan_lie,
        "regular": rep.is_regular,
        "L_perfect": rep.is_L_perfect,
        "bar_minimal": rep.is_bar_minimal,
        "bar_dim": rep.bar.dim,
    }
    if rep.core is not None:
        doc["core"] = _space(A, rep.core)
    if rep.pair is not None:
        doc["pair"] = {"e": _element(A, rep.pair.e), "f": _element(A, rep.pair.f),
                       "strict": rep.pair.strict, "orthogonal": rep.pair.orthogonal}
    if rep.violation is not None:
        kind, *elems = rep.violation
        names = ["b", "b'", "product"] if kind == "square" else ["b", "x", "b'", "product"]
        doc["violation"] = {"kind": kind, **{n: _element(A, x) for n, x in zip(names, elems)}}
    if rep.witness is not None:
        doc["regular_witness"] = {"left": _space(A, rep.witness.left), "right": _space(A, rep.witness.right)}
    if rep.split is not None:
        doc["split"] = {
            "conjugators": [vec_out(q) for q in rep.split.conjugators],
            "levi_part": _space(A, rep.split.parts[0]),
            "radical_part": _space(A, rep.split.parts[1]),
        }
    doc["checks"] = [{"check": label, "passed": ok} for label, ok in rep.checks.items()]
    return doc


# commands


def cmd_analyze(args) -> int:
    t0 = time.perf_counter()
    doc, cand = load_candidate(args)
    rep = analyze(cand, args.strategy)
    out = report_document(doc.algebra, args.subspace, args.k, cand, rep)
    if args.timings:
        out["timings"] = {"total_seconds": round(time.perf_counter() - t0, 6)}
    _output(dump(out), args.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    t0 = time.perf_counter()
    doc, cand = load_candidate(args)
    A = doc.algebra
    res = bar_minimal_reduce(cand, args.strategy)
    out = {
        "field": str(A.field),
        "dim": A.dim,
        "subspace": args.subspace,
        "k": args.k,
        "pair": {"e": _element(A, res.pair.e), "f": _element(A, res.pair.f),
                 "strict": res.pair.strict, "orthogonal": res.pair.orthogonal},
        "eAf": _space(A, res.B_prime),
        "bar_minimal": res.B_prime == cand.B,
        "conjugators": [vec_out(q) for q in res.conjugators],
        "trace": [" ".join(str(t) for t in step) for step in res.trace],
    }
    if args.emit_witness:
        w = split_witness(cand, res)
        out["split"] = {
            "conjugators": [vec_out(q) for q in w.conjugators],
            "levi_prime": _space(A, w.levi_prime),
            "levi_part": _space(A, w.parts[0]),
            "radical_part": _space(A, w.parts[1]),
        }
        fragment = AlgebraFile(A, {**doc.subspaces, "eAf": tuple(res.B_prime.basis),
                                   "pair_e": (res.pair.e,), "pair_f": (res.pair.f,)}, doc.levi)
        out["algebra_file"] = emit(fragment)
    if args.timings:
        out["timings"] = {"total_seconds": round(time.perf_counter() - t0, 6)}
    _output(dump(out), args.out)
    return EXIT_OK


def cmd_fuzz(args) -> int:
    F = FieldSpec.parse(args.field) if args.field else env_field()
    cap = env_max_dim()
    max_dim = args.max_dim if args.max_dim is not None else cap
    if args.count < 0 or max_dim < 1:
        raise UsageError("count must be non-negative and max-dim positive")
    if F.p and F.p <= max_dim:
        raise UsageError(f"fuzzing over {F} needs max-dim below {F.p}")
    params = RandomAlgebraParams(max_dim=max_dim, field=F)
    master = random.Random(args.seed)
    outdir = Path(args.out) if args.out else None
    lines = [f"fuzz seed={args.seed} count={args.count} max_dim={max_dim} field={F} mutate={args.mutate}"]
    totals: dict = {}
    found = 0
    for n in range(args.count):
        seed = master.randrange(1 << 63)
        rng = random.Random(seed)
        A = random_algebra(seed, params)
        violations: list = []
        if args.mutate:
            table, what = mutate(A, rng)
            B, violations = build_checked(A, table)
            tag = f"mutated ({what})"
            if B is not None:
                A = B
        else:
            tag = ""
        if not violations:
            try:
                violations, counts = check_algebra(A, rng, args.pair_budget)
                for key, c in counts.items():
                    totals[key] = totals.get(key, 0) + c
            except JordanLieError as exc:
                violations = [Violation("error", f"{type(exc).__name__}: {exc}")]
        dims = f"dim={A.dim}"
        if not violations:
            lines.append(f"case {n}: seed={seed} {dims} ok")
            continue
        found += len(violations)
        for m, v in enumerate(violations):
            where = ""
            if outdir is not None:
                stem = f"case-{n:05d}-{m:02d}"
                write_counterexample(outdir, stem, A, v, seed, tag)
                where = f" -> {stem}.json"
            lines.append(f"case {n}: seed={seed} {dims} {tag + ' ' if tag else ''}VIOLATION {v.check}: {v.label}; {v.detail}{where}")
    lines.append(f"algebras: {args.count}")
    lines.append("candidates: " + " ".join(f"{k}={totals.get(k, 0)}" for k in ("eAf", "conjugated", "enlarged", "core")))
    lines.append(f"pair comparisons: {totals.get('comparisons', 0)}")
    lines.append(f"violations: {found}")
    _output("\n".join(lines) + "\n", args.summary)
    return EXIT_VIOLATION if found else EXIT_OK


def write_counterexample(outdir: Path, stem: str, A: Algebra, v: Violation, seed: int, tag: str):
    subs = {"B": tuple(v.data["B"])} if "B" in v.data else {}
    try:
        text = emit_algebra(A, subs, with_levi=False)
    except JordanLieError:
        text = ""
    write_atomic(outdir / f"{stem}.json", text)
    report = {"seed": seed, "note": tag, "check": v.check, "label": v.label, "detail": v.detail,
              "data": json.loads(json.dumps(v.data, default=lambda x: vec_out(x) if isinstance(x, tuple) else str(x)))}
    write_atomic(outdir / f"{stem}.report.json", dump(report))


def poset_dot(A: Algebra, budget: int, conjugates: int = 0, seed: int = 0) -> str:
    """DOT graph of idempotent pairs up to LR-equivalence, edges are covering relations."""
    pairs, truncated = enumerate_idempotent_pairs(A, budget, seed=seed, orthogonal_only=False,
                                                  conjugates=conjugates)
    reps: list = []
    for p in pairs:
        if not any(pair_relations(A, p, r).equiv_LR for r in reps):
            reps.append(p)
    n = len(reps)
    leq = [[pair_relations(A, reps[i], reps[j]).leq_LR for j in range(n)] for i in range(n)]
    dims = [corner(A, p.e, p.f).dim for p in reps]
    lines = [f"// idempotent pairs of {A.name or 'algebra'} up to LR-equivalence",
             f"// truncated: {'true' if truncated else 'false'}",
             "digraph pairs {",
             f'  label="pairs={len(pairs)} classes={n} truncated={str(truncated).lower()}";',
             "  rankdir=BT;"]
    for i, p in enumerate(reps):
        style = ', style=filled, fillcolor="lightblue"' if p.strict else ""
        lines.append(f'  p{i} [label="e = {A.fmt(p.e)}\\nf = {A.fmt(p.f)}\\ndim eAf = {dims[i]}"{style}];')
    for i in range(n):
        for j in range(n):
            if i == j or not leq[i][j]:
                continue
            if any(t not in (i, j) and leq[i][t] and leq[t][j] for t in range(n)):
                continue
            lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_poset(args) -> int:
    doc = read(args.path, default_field=env_field())
    cap = args.max_dim if args.max_dim is not None else env_max_dim()
    if doc.algebra.dim > cap:
        raise UsageError(f"algebra has dimension {doc.algebra.dim} above the cap {cap}; raise --max-dim")
    _output(poset_dot(doc.algebra, args.budget, args.conjugates, args.seed), args.out)
    return EXIT_OK


def named_algebras(field: FieldSpec) -> dict:
    out = dict(standard_corpus(field))
    for name in ("M2", "T2"):
        A = out[name]
        out[name] = (A, {"B": (A.element({"e12": 1}),)})
    nr = example_nr(field)
    out["example-nr"] = (nr.algebra, {"B": nr.generators})
    return out


def cmd_export(args) -> int:
    F = FieldSpec.parse(args.field) if args.field else env_field()
    table = named_algebras(F)
    if args.name is None or args.name not in table:
        names = ", ".join(sorted(table))
        if args.name is None:
            sys.stdout.write(names + "\n")
            return EXIT_OK
        raise UsageError(f"unknown algebra {args.name!r}; choose from {names}")
    entry = table[args.name]
    A, subs = entry if isinstance(entry, tuple) else (entry, {})
    _output(emit_algebra(A, subs, with_levi=not args.no_levi), args.out)
    return EXIT_OK


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="jordanlie", description="Jordan-Lie inner ideals of associative algebras.")
    sub = ap.add_subparsers(dest="command", required=True)

    def candidate_args(p):
        p.add_argument("path", help="algebra file")
        p.add_argument("--subspace", "-s", default="B", help="name of the subspace in the file (default B)")
        p.add_argument("--k", type=int, default=1, help="work in the k-th derived algebra (default 1)")
        p.add_argument("--strategy", choices=("layer", "doubling"), default="layer")
        p.add_argument("--max-dim", type=int, default=None)
        p.add_argument("--timings", action="store_true", help="add wall-clock timings to the report")
        p.add_argument("--out", "-o", help="write here instead of stdout")

    p = sub.add_parser("analyze", help="report every predicate and witness for a subspace")
    candidate_args(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("reduce", help="bar-minimal reduction to eAf")
    candidate_args(p)
    p.add_argument("--emit-witness", action="store_true", help="include the Levi splitting and an algebra file")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("fuzz", help="run the invariant suite on random algebras")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--max-dim", type=int, default=None)
    p.add_argument("--field", default=None, help="Q or F<p> (default from JORDANLIE_FIELD)")
    p.add_argument("--pair-budget", type=int, default=30)
    p.add_argument("--mutate", action="store_true", help="corrupt one structure constant per algebra")
    p.add_argument("--out", help="directory for counterexample files")
    p.add_argument("--summary", help="write the summary here instead of stdout")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("poset", help="DOT graph of idempotent pairs under LR-dominance")
    p.add_argument("path")
    p.add_argument("--budget", type=int, default=400)
    p.add_argument("--conjugates", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-dim", type=int, default=None)
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("export", help="write a built-in algebra as a file (no name lists them)")
    p.add_argument("name", nargs="?")
    p.add_argument("--field", default=None)
    p.add_argument("--no-levi", action="store_true")
    p.add_argument("--out", "-o")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ReductionFailed as exc:
        print(f"violation: {exc}", file=sys.stderr)
        print(dump(json.loads(json.dumps(exc.payload, default=str))), file=sys.stderr, end="")
        return EXIT_VIOLATION
    except (UsageError, PreconditionError, UnsupportedCharacteristic, NotSplitError, UndecidableError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except JordanLieError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
