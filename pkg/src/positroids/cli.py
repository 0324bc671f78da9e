"""Command-line front end.

Matroid files use the text format of :func:`positroids.matroid.dumps`; a file
argument of ``-`` (the default) reads standard input. Parse errors exit with
status 2, domain errors with status 1 and the error class name on stderr.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .classify import classify, envelope_count, is_binary, is_ternary_positroid
from .connectivity import canonical_tree_decomposition
from .constructions import circuit_matroid, cocircuit_matroid, n_graph, n_relaxed, uniform, wheel, whirl
from .errors import BudgetExceeded, MatroidError, ParseError
from .maps import (
    DEFAULT_BUDGET,
    decorated_permutation_of,
    decorated_permutations,
    envelope_class_of,
    envelope_positroid,
    grassmann_necklace_of,
    is_positroid,
    permutation_to_necklace,
    positroid_from_necklace,
)
from .matroid import dumps, fmt_set, loads

CONSTRUCTORS = {
    "uniform": (2, lambda r, n: uniform(r, n)),
    "whirl": (1, whirl),
    "wheel": (1, lambda r: wheel(r)[1]),
    "ngraph": (1, lambda r: n_graph(r)[1]),
    "nrelaxed": (1, n_relaxed),
    "circuit": (1, circuit_matroid),
    "cocircuit": (1, cocircuit_matroid),
}


class _UsageError(Exception):
    pass


def _read(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path) as fh:
                text = fh.read()
    except OSError as exc:
        raise _UsageError(str(exc)) from exc
    try:
        return loads(text)
    except (ParseError, ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"cannot parse matroid: {exc}") from exc


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def cmd_info(args):
    m = _read(args.file)
    lines = [
        "ground: " + fmt_set(m.ground),
        f"rank: {m.rank}",
        f"bases: {len(m.masks)}",
        "loops: " + fmt_set(m.labels_of(m.loops_mask())),
        "coloops: " + fmt_set(m.labels_of(m.coloops_mask())),
        f"circuits: {len(m.circuit_masks())}",
    ]
    circuits = sorted(sorted(m.labels_of(c)) for c in m.circuit_masks())
    lines += ["  " + fmt_set(c) for c in circuits]
    _write("\n".join(lines) + "\n", None)


def cmd_perm(args):
    _write(decorated_permutation_of(_read(args.file)).render() + "\n", None)


def cmd_necklace(args):
    _write(grassmann_necklace_of(_read(args.file)).render() + "\n", None)


def cmd_envelope(args):
    _write(dumps(envelope_positroid(_read(args.file))), args.output)


def cmd_class(args):
    cls = envelope_class_of(_read(args.file), args.budget)
    k = len(cls)
    out = []
    for i, member in enumerate(cls.members, 1):
        out.append(f"# member {i} of {k}\n" + dumps(member))
    _write("".join(out), None)


def cmd_decompose(args):
    tree = canonical_tree_decomposition(_read(args.file))
    _write(tree.render() + "\n", None)
    if args.dot:
        _write(tree.to_dot(), args.dot)


def cmd_classify(args):
    c = classify(_read(args.file))
    _write(c.render_kv() if args.format == "kv" else c.render_text(), None)


def cmd_construct(args):
    arity, fn = CONSTRUCTORS[args.kind]
    if len(args.args) != arity:
        raise _UsageError(f"construct {args.kind} takes {arity} integer argument(s)")
    try:
        values = [int(a) for a in args.args]
    except ValueError as exc:
        raise _UsageError(f"arguments must be integers: {exc}") from exc
    _write(dumps(fn(*values)), args.output)


def cmd_is_positroid(args):
    _write(("true" if is_positroid(_read(args.file)) else "false") + "\n", None)


def cmd_minor(args):
    from .matroid import find_minor

    m = _read(args.file)
    target = _read(args.target)
    found = find_minor(m, target)
    if found is None:
        _write("false\n", None)
    else:
        con, dele = found
        _write(f"true\ncontract: {fmt_set(con)}\ndelete: {fmt_set(dele)}\n", None)


def census_rows(n: int, rank: int | None = None, budget: int = DEFAULT_BUDGET):
    """One row per positroid on ``1..n``; class size blank past the budget."""
    for p in decorated_permutations(range(1, n + 1)):
        neck = permutation_to_necklace(p)
        if rank is not None and neck.rank != rank:
            continue
        pos = positroid_from_necklace(neck)
        binary = is_binary(pos)
        ternary = is_ternary_positroid(pos)
        try:
            size = str(len(envelope_class_of(pos, budget)))
        except BudgetExceeded:
            size = ""
        if ternary:
            w = str(envelope_count(pos).bit_length() // 2)
        else:
            w = ""
        yield [n, neck.rank, p.render(), int(binary), int(ternary), w, size]


def cmd_census(args):
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["n", "rank", "permutation", "binary", "ternary", "w", "class_size"])
    for row in census_rows(args.n, args.rank, args.budget):
        writer.writerow(row)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="positroids", description="Ordered matroids and positroids.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def with_file(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", nargs="?", default="-", help="matroid file, '-' for stdin")
        p.set_defaults(func=func)
        return p

    with_file("info", cmd_info, "rank, bases, loops, coloops and circuits")
    with_file("perm", cmd_perm, "decorated permutation in cycle notation")
    with_file("necklace", cmd_necklace, "Grassmann necklace")
    p = with_file("envelope", cmd_envelope, "positroid envelope as a matroid file")
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p = with_file("class", cmd_class, "members of the envelope class of a positroid")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="largest search space to explore")
    p = with_file("decompose", cmd_decompose, "canonical tree decomposition")
    p.add_argument("--dot", metavar="OUT", help="also write the tree as DOT ('-' for stdout)")
    p = with_file("classify", cmd_classify, "positroid / binary / ternary report")
    p.add_argument("--format", choices=("text", "kv"), default="text")
    with_file("is-positroid", cmd_is_positroid, "print true or false")

    p = sub.add_parser("minor", help="search for a minor isomorphic to TARGET")
    p.add_argument("file")
    p.add_argument("target")
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("construct", help="named matroids: " + ", ".join(CONSTRUCTORS))
    p.add_argument("kind", choices=sorted(CONSTRUCTORS))
    p.add_argument("args", nargs="+")
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("census", help="CSV table of every positroid on 1..N")
    p.add_argument("n", type=int)
    p.add_argument("--rank", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_census)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except _UsageError as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return 2
    except MatroidError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
