"""Command-line interface.

Graph files: the first non-comment line is ``n m``, followed by ``m`` lines
``u v`` (1-indexed arc u->v). Lines starting with ``#`` are ignored and
self-loops are accepted but dropped.

Matrix files (``per``/``det``): header ``n d``, then n rows of n Z_4
coefficient strings, one digit in 0..3 per coefficient, highest degree first.
"""

from __future__ import annotations

import argparse
import random
import secrets
import sys
from dataclasses import dataclass

from evencycle.cycles import (
    Digraph,
    field_degree,
    has_even_cycle,
    run_algorithm_s,
    weighted_adjacency,
)
from evencycle.enumerators import pcc_f
from evencycle.fields import make_field
from evencycle.oracle import OracleSizeError, brute_shortest_even_cycle
from evencycle.perdet import InvariantError, det_e, per_e
from evencycle.ring4 import RingCtx, UnliftError

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_USAGE = 2

SELF_REDUCTION_NOTE = """\
to recover an actual shortest even cycle of length k, delete arcs one at a
time and keep each deletion whenever `shortest` still reports k (use several
seeds before trusting a drop); the arcs that survive form the cycle."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _ints(line: str, count: int, lineno: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(f"expected {count} integers, got {len(parts)}", lineno)
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"not an integer in {line!r}", lineno) from None


def parse_graph(text: str) -> Digraph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty graph file")
    lineno, header = lines[0]
    n, m = _ints(header, 2, lineno)
    if n < 0 or m < 0:
        raise ParseError("n and m must be non-negative", lineno)
    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else lineno
        raise ParseError(f"header declares {m} arcs, found {len(body)}", last)
    seen = set()
    for lineno, line in body:
        u, v = _ints(line, 2, lineno)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"vertex out of range 1..{n} in arc {u} {v}", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate arc {u} {v}", lineno)
        seen.add((u, v))
    return Digraph(n, frozenset(seen))


def parse_matrix(text: str):
    """Returns (d, rows of Z_4 digit strings)."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty matrix file")
    lineno, header = lines[0]
    n, d = _ints(header, 2, lineno)
    if n < 1 or d < 1:
        raise ParseError("need n >= 1 and d >= 1", lineno)
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} matrix rows, found {len(lines) - 1}")
    rows = []
    for lineno, line in lines[1:]:
        cells = line.split()
        if len(cells) != n:
            raise ParseError(f"expected {n} entries, got {len(cells)}", lineno)
        for c in cells:
            if any(ch not in "0123" for ch in c):
                raise ParseError(f"bad Z_4 coefficient string {c!r}", lineno)
            if len(c.lstrip("0")) > d:
                raise ParseError(f"entry {c!r} has degree >= d={d}", lineno)
        rows.append(cells)
    return d, rows


@dataclass
class RunConfig:
    command: str
    path: str
    seed: int
    d_override: int | None = None
    repeats: int = 1
    machine: bool = False
    quick: bool = False


class _Report:
    def __init__(self, cfg: RunConfig, out):
        self.cfg = cfg
        self.out = out
        self.facts: list[tuple[str, object]] = [("command", cfg.command), ("seed", cfg.seed)]

    def fact(self, key, value):
        self.facts.append((key, value))

    def emit(self, headline: str | None):
        if self.cfg.machine:
            for k, v in self.facts:
                print(f"{k}={v}", file=self.out)
        else:
            if headline is not None:
                print(headline, file=self.out)
            extras = " ".join(f"{k}={v}" for k, v in self.facts if k != "command")
            print(f"# {extras}", file=self.out)


def _read(path: str, stdin) -> str:
    if path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def run(cfg: RunConfig, out=None, stdin=None) -> int:
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    report = _Report(cfg, out)
    try:
        if cfg.command == "selftest":
            from evencycle.selftest import run_selftest

            failures = run_selftest(cfg.seed, out=out, machine=cfg.machine, quick=cfg.quick)
            return EXIT_OK if failures == 0 else EXIT_INTERNAL

        text = _read(cfg.path, stdin)
        if cfg.command in ("per", "det"):
            d, rows = parse_matrix(text)
            ring = RingCtx(make_field(d, random.Random(cfg.seed)))
            M = [[ring.parse(c) for c in row] for row in rows]
            value = per_e(ring, M) if cfg.command == "per" else det_e(ring, M)
            report.fact("d", d)
            report.fact("g2", hex(ring.field.g2))
            report.fact(cfg.command, ring.format(value))
            report.emit(f"{cfg.command.upper()} {ring.format(value)}")
            return EXIT_OK

        G = parse_graph(text)
        report.fact("n", G.n)
        if cfg.command == "shortest":
            res = run_algorithm_s(G, cfg.seed, cfg.d_override)
            report.fact("d", res.d)
            if res.field is not None:
                report.fact("g2", hex(res.field.g2))
            report.fact("shortest_even_cycle", res.answer if res.answer is not None else "none")
            report.emit(f"SHORTEST_EVEN_CYCLE {res.answer}" if res.answer is not None else "NO_EVEN_CYCLE")
        elif cfg.command == "detect":
            found = has_even_cycle(G, cfg.seed, cfg.repeats, cfg.d_override)
            report.fact("d", field_degree(G.n, cfg.d_override) if G.n >= 2 else 0)
            report.fact("repeats", cfg.repeats)
            report.fact("even_cycle", "yes" if found else "no")
            report.emit(f"EVEN_CYCLE {'yes' if found else 'no'}")
        elif cfg.command == "pcc":
            if G.n < 1:
                raise ParseError("pcc needs at least one vertex")
            rng = random.Random(cfg.seed)
            fctx = make_field(field_degree(max(G.n, 2), cfg.d_override), rng)
            arc_w = {a: rng.getrandbits(fctx.d) for a in G.sorted_arcs()}
            loop_w = [rng.getrandbits(fctx.d) for _ in range(G.n)]
            value = pcc_f(RingCtx(fctx), weighted_adjacency(G, arc_w, loop_w))
            report.fact("d", fctx.d)
            report.fact("g2", hex(fctx.g2))
            report.fact("pcc", hex(value))
            report.emit(f"PCC {value:#x}")
        elif cfg.command == "oracle-shortest":
            k = brute_shortest_even_cycle(G)
            report.fact("shortest_even_cycle", k if k is not None else "none")
            report.emit(f"SHORTEST_EVEN_CYCLE {k}" if k is not None else "NO_EVEN_CYCLE")
        else:
            raise ParseError(f"unknown command {cfg.command!r}")
        return EXIT_OK
    except (ParseError, OracleSizeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnliftError, InvariantError) as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="evencycle",
        description="Shortest even cycles in digraphs by algebraic fingerprinting.",
        epilog=SELF_REDUCTION_NOTE,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_u64, default=None, help="64-bit seed (default: fresh entropy, echoed)")
    common.add_argument("--field-degree", type=int, default=None, dest="d_override",
                        help="lower bound on the extension degree d")
    common.add_argument("--repeats", type=int, default=1, help="random evaluations for detect")
    common.add_argument("--machine", action="store_true", help="key=value output")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "shortest": "length of a shortest even cycle (randomized, one-sided)",
        "detect": "does the graph have an even cycle",
        "pcc": "parity cycle cover enumerator at random weights",
        "per": "permanent of a matrix over E(4^d)",
        "det": "determinant of a matrix over E(4^d)",
        "oracle-shortest": "brute-force shortest even cycle (n <= 10)",
    }
    for name, h in helps.items():
        sp = sub.add_parser(name, parents=[common], help=h, description=h)
        sp.add_argument("path", help="input file, or - for stdin")
    st = sub.add_parser("selftest", parents=[common], help="oracle-equivalence suites")
    st.add_argument("--quick", action="store_true", help="smaller corpora")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.d_override is not None and not 1 <= args.d_override <= 4096:
        print("error: --field-degree must be in 1..4096", file=sys.stderr)
        return EXIT_USAGE
    if args.repeats < 1:
        print("error: --repeats must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    seed = args.seed if args.seed is not None else secrets.randbits(64)
    cfg = RunConfig(
        command=args.command,
        path=getattr(args, "path", "-"),
        seed=seed,
        d_override=args.d_override,
        repeats=args.repeats,
        machine=args.machine,
        quick=getattr(args, "quick", False),
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
