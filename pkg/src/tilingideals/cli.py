"""Command-line interface.

Exit status: 0 on success, 1 on a domain failure (no tilings, not connected,
not simply connected, certificate rejected), 2 on usage or parse errors.
Tilings are referred to by their 1-based index in the canonical enumeration
order; ``enumerate --show-edges`` prints that table.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .binomial import (
    DecompositionError,
    certificate_mismatch,
    cycle_decomposition,
    parse_certificate,
    quadratic_decomposition,
)
from .graph import build_graph
from .ideal import export_cas, ideal_presentation
from .moves import MOVE_KINDS, NotConnected, connection_path, fiber_graph, moves_of_kind
from .region import RegionError, is_simply_connected, load_region
from .sampler import DEFAULT_SEED, ChainConfig, random_walk, visit_counts
from .tiling import TilingError, count_tilings, enumerate_tilings


class DomainError(Exception):
    pass


class _UsageError(Exception):
    pass


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tilingideals",
        description="Domino tilings of cubiculated regions, their binomial ideals and flip certificates.",
        epilog="Tilings are named by 1-based index; see `enumerate --show-edges`.")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    c = sub.add_parser("count", help="number of domino tilings")
    c.add_argument("region")

    c = sub.add_parser("enumerate", help="list all tilings in canonical order")
    c.add_argument("--show-edges", action="store_true",
                   help="prefix each tiling with its index and list the dominoes' cells")
    c.add_argument("region")

    c = sub.add_parser("connectivity", help="components of the tiling space under a move set")
    c.add_argument("--moves", choices=MOVE_KINDS, default="flip")
    c.add_argument("region")

    c = sub.add_parser("path", help="shortest move sequence between two tilings")
    c.add_argument("--moves", choices=MOVE_KINDS, default="flip")
    c.add_argument("--t1", type=int, required=True)
    c.add_argument("--t2", type=int, required=True)
    c.add_argument("region")

    c = sub.add_parser("decompose", help="certificate writing B_{T1,T2} via flips or cycles")
    c.add_argument("--method", choices=("quadratic", "cycles"), default="quadratic")
    c.add_argument("--t1", type=int, required=True)
    c.add_argument("--t2", type=int, required=True)
    c.add_argument("region")

    c = sub.add_parser("verify", help="check a certificate file ('-' reads stdin)")
    c.add_argument("--region", help="also require flip terms to be 4-cycles of this region")
    c.add_argument("certificate", nargs="?", default="-")

    c = sub.add_parser("ideals", help="generators of the toric, tiling or flip ideal")
    c.add_argument("--which", choices=("toric", "tiling", "flip"), default="toric")
    c.add_argument("--format", choices=("plain", "macaulay2", "singular"), default="plain")
    c.add_argument("region")

    c = sub.add_parser("sample", help="Metropolis random walk on the tiling space")
    c.add_argument("--moves", choices=MOVE_KINDS, default="flip")
    c.add_argument("--steps", type=int, default=1000)
    c.add_argument("--seed", type=int, default=DEFAULT_SEED)
    c.add_argument("--samples", type=int, default=None,
                   help="restarts; prints a frequency table instead of a final tiling")
    c.add_argument("--burn-in", type=int, default=0)
    c.add_argument("--start", type=int, default=1, help="index of the starting tiling")
    c.add_argument("region")
    return p


def _tiling_at(tilings, index: int, flag: str):
    if not 1 <= index <= len(tilings):
        raise DomainError(f"{flag} {index} is out of range 1..{len(tilings)}")
    return tilings[index - 1]


def _cmd_count(args) -> str:
    return f"{count_tilings(build_graph(load_region(args.region)))}\n"


def _cmd_enumerate(args) -> str:
    g = build_graph(load_region(args.region))
    out = []
    for i, t in enumerate(enumerate_tilings(g), start=1):
        if args.show_edges:
            dominoes = " ".join(
                f"{'/'.join(map(str, g.cells_of(e)[0]))}-{'/'.join(map(str, g.cells_of(e)[1]))}"
                for e in t.edges)
            out.append(f"{i}\t{t}\t{dominoes}")
        else:
            out.append(str(t))
    return "".join(line + "\n" for line in out)


def _cmd_connectivity(args) -> tuple[str, int]:
    g = build_graph(load_region(args.region))
    tilings = enumerate_tilings(g)
    if not tilings:
        raise DomainError("region has no tilings")
    moves = moves_of_kind(g, args.moves)
    k = len(fiber_graph(tilings, moves).components())
    d = max((m.size for m in moves), default=0)
    return f"components={k} move_set={args.moves} max_move_size={d}\n", 0 if k == 1 else 1


def _cmd_path(args) -> str:
    g = build_graph(load_region(args.region))
    tilings = enumerate_tilings(g)
    t1, t2 = _tiling_at(tilings, args.t1, "--t1"), _tiling_at(tilings, args.t2, "--t2")
    try:
        path = connection_path(t1, t2, moves_of_kind(g, args.moves))
    except NotConnected as exc:
        raise DomainError(str(exc)) from None
    return "".join(f"{m}\n" for m in path) + f"length={len(path)}\n"


def _cmd_decompose(args) -> str:
    region = load_region(args.region)
    g = build_graph(region)
    tilings = enumerate_tilings(g)
    t1, t2 = _tiling_at(tilings, args.t1, "--t1"), _tiling_at(tilings, args.t2, "--t2")
    if args.method == "cycles":
        return cycle_decomposition(g, t1, t2).to_text()
    if region.dim != 2 or not region.is_connected() or not is_simply_connected(region):
        raise DomainError("quadratic decomposition needs a simply connected 2D region")
    return quadratic_decomposition(g, t1, t2, region).to_text()


def _cmd_verify(args) -> tuple[str, int]:
    if args.certificate == "-":
        text = sys.stdin.read()
    else:
        with open(args.certificate, encoding="utf-8") as fh:
            text = fh.read()
    try:
        cert = parse_certificate(text)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    graph = build_graph(load_region(args.region)) if args.region else None
    problem = certificate_mismatch(cert, graph)
    if problem:
        return f"invalid: {problem}\n", 1
    return f"ok terms={len(cert.terms)}\n", 0


def _cmd_ideals(args) -> str:
    pres = ideal_presentation(load_region(args.region), args.which)
    if args.format == "plain":
        return pres.to_plain()
    return export_cas(pres, args.format)


def _cmd_sample(args) -> str:
    g = build_graph(load_region(args.region))
    tilings = enumerate_tilings(g)
    start = _tiling_at(tilings, args.start, "--start")
    cfg = ChainConfig(args.moves, args.steps, start, args.seed)
    if args.samples is None:
        return f"{random_walk(g, cfg)}\n"
    counts = visit_counts(g, cfg, args.samples, args.burn_in)
    total = sum(counts.values())
    return "".join(f"{t}\t{c}\t{c / total:.6f}\n" for t, c in counts.items())


_COMMANDS = {
    "count": _cmd_count,
    "enumerate": _cmd_enumerate,
    "connectivity": _cmd_connectivity,
    "path": _cmd_path,
    "decompose": _cmd_decompose,
    "verify": _cmd_verify,
    "ideals": _cmd_ideals,
    "sample": _cmd_sample,
}


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Execute one command; returns (exit code, stdout text).

    Usage errors raise SystemExit(2) from argparse, as usual.
    """
    args = _parser().parse_args(list(argv))
    try:
        result = _COMMANDS[args.command](args)
    except (RegionError, _UsageError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2, ""
    except (DomainError, TilingError, DecompositionError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1, ""
    if isinstance(result, tuple):
        text, code = result
        return code, text
    return 0, result


def main(argv: Sequence[str] | None = None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
