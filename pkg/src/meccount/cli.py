"""Command-line front end.

Exit codes: 0 success, 3 parse error, 4 not a tree, 5 not chordal,
6 too large for brute force, 7 methods disagree, 8 infeasible generator
spec, 9 disconnected where connectivity is required.  argparse itself exits
with 2 on bad flags.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from .counting import METHODS, applicable_methods, count_mecs
from .errors import (
    Disagreement,
    InfeasibleSpec,
    MecCountError,
    NotATree,
    NotChordal,
    NotConnected,
    ParseError,
    TooLarge,
)
from .generators import FAMILIES, GenSpec, family_stats, generate
from .graph import UndirectedGraph

EXIT_CODES = {
    ParseError: 3,
    NotATree: 4,
    NotChordal: 5,
    TooLarge: 6,
    Disagreement: 7,
    InfeasibleSpec: 8,
    NotConnected: 9,
}


def exit_code_for(exc: BaseException) -> int:
    for cls in type(exc).__mro__:
        if cls in EXIT_CODES:
            return EXIT_CODES[cls]
    return 1


# ---------------------------------------------------------------------------
# edge-list files


def parse_edge_list(text: str) -> UndirectedGraph:
    """Parse the ``n m`` header plus ``m`` lines of ``u v``; ``#`` lines are comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: expected two integers, got {raw!r}") from None
        rows.append((lineno, a, b))
    if not rows:
        raise ParseError("missing 'n m' header")
    _, n, m = rows[0]
    if n < 0 or m < 0:
        raise ParseError("header values must be non-negative")
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)}")
    seen = set()
    for lineno, u, v in body:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop at {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise ParseError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(e)
    return UndirectedGraph(n, [(u, v) for _, u, v in body])


def read_edge_list(path: str | Path) -> UndirectedGraph:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise ParseError(f"{path} is not valid UTF-8") from None
    return parse_edge_list(text)


def format_edge_list(g: UndirectedGraph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reports


@dataclass
class CountReport:
    method: str
    count: str
    n: int
    m: int
    d: int
    k: int | None
    elapsed_ms: float | None = None
    verified_against: list[dict] | None = None

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    def to_text(self) -> str:
        k = "-" if self.k is None else self.k
        out = [f"method: {self.method}", f"count: {self.count}", f"n={self.n} m={self.m} d={self.d} k={k}"]
        if self.elapsed_ms is not None:
            out.append(f"elapsed_ms: {self.elapsed_ms:.3f}")
        if self.verified_against is not None:
            if len(self.verified_against) == 1:
                out.append("note: single-method mode (only one method applies)")
            for row in self.verified_against:
                flag = "agree" if row["agrees"] else "DISAGREE"
                out.append(f"  {row['method']}: {row['count']} ({flag})")
        return "\n".join(out)


def _report(g, method, count, elapsed, timing) -> CountReport:
    st = family_stats(g)
    return CountReport(
        method=method,
        count=str(count),
        n=st.n,
        m=st.m,
        d=st.d,
        k=st.k,
        elapsed_ms=round(elapsed * 1000, 3) if timing else None,
    )


def cmd_count(path: str, method: str = "auto", timing: bool = False) -> CountReport:
    g = read_edge_list(path)
    t0 = time.perf_counter()
    count, used = count_mecs(g, method)
    return _report(g, used, count, time.perf_counter() - t0, timing)


def cmd_verify(path: str, timing: bool = False) -> CountReport:
    g = read_edge_list(path)
    usable = applicable_methods(g)
    if not usable:
        raise TooLarge("no counting method applies to this graph")
    t0 = time.perf_counter()
    results = [(m, count_mecs(g, m)[0]) for m in usable]
    elapsed = time.perf_counter() - t0
    # the first applicable method is the reference the others are checked against
    ref_method, reference = results[0]
    rows = [{"method": m, "count": str(c), "agrees": c == reference} for m, c in results]
    rep = _report(g, ref_method, reference, elapsed, timing)
    rep.verified_against = rows
    if not all(r["agrees"] for r in rows):
        raise Disagreement(rep.to_text())
    return rep


def cmd_gen(spec: GenSpec, out: str | None = None) -> str:
    text = format_edge_list(generate(spec))
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    return text


def cmd_bench(
    family: str,
    sizes: list[int],
    method: str = "auto",
    reps: int = 1,
    seed: int = 0,
    max_degree: int | None = None,
    max_clique: int | None = None,
) -> list[CountReport]:
    rows = []
    for n in sizes:
        for r in range(reps):
            g = generate(GenSpec(family, n, max_degree, max_clique, seed + r))
            t0 = time.perf_counter()
            count, used = count_mecs(g, method)
            rows.append(_report(g, used, count, time.perf_counter() - t0, True))
    return rows


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="meccount", description="Count Markov equivalence classes with a given skeleton.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count MECs of the graph in an edge-list file")
    c.add_argument("file")
    c.add_argument("--method", choices=("auto",) + METHODS, default="auto")
    c.add_argument("--json", action="store_true")
    c.add_argument("--timing", action="store_true", help="include elapsed_ms (makes output run-dependent)")

    v = sub.add_parser("verify", help="run every applicable method and compare")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")
    v.add_argument("--timing", action="store_true")

    def gen_flags(q, many=False):
        q.add_argument("--family", choices=FAMILIES, required=True)
        if many:
            q.add_argument("--n", type=int, nargs="+", required=True)
        else:
            q.add_argument("--n", type=int, required=True)
        q.add_argument("--max-degree", type=int)
        q.add_argument("--max-clique", type=int)
        q.add_argument("--seed", type=int, default=0)

    gq = sub.add_parser("gen", help="write a generated instance as an edge list")
    gen_flags(gq)
    gq.add_argument("--out")

    b = sub.add_parser("bench", help="time a counting method on generated instances")
    gen_flags(b, many=True)
    b.add_argument("--method", choices=("auto",) + METHODS, default="auto")
    b.add_argument("--reps", type=int, default=1)
    b.add_argument("--json", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "count":
            rep = cmd_count(args.file, args.method, args.timing)
            print(rep.to_json() if args.json else rep.to_text())
        elif args.command == "verify":
            rep = cmd_verify(args.file, args.timing)
            print(rep.to_json() if args.json else rep.to_text())
        elif args.command == "gen":
            spec = GenSpec(args.family, args.n, args.max_degree, args.max_clique, args.seed)
            text = cmd_gen(spec, args.out)
            if not args.out:
                sys.stdout.write(text)
        elif args.command == "bench":
            rows = cmd_bench(
                args.family, args.n, args.method, args.reps, args.seed, args.max_degree, args.max_clique
            )
            if args.json:
                print(json.dumps([asdict(r) for r in rows], sort_keys=True))
            else:
                for r in rows:
                    print(f"n={r.n:<8} m={r.m:<8} d={r.d:<3} method={r.method:<8} "
                          f"elapsed_ms={r.elapsed_ms:<10.3f} count_digits={len(r.count)}")
    except MecCountError as exc:
        print(f"meccount: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    return 0


if __name__ == "__main__":
    sys.exit(main())
