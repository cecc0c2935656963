"""Command-line front end: generate, graph, recover, reconstruct, compare.

Every subcommand reads and writes plain text, re-validates its inputs
instead of trusting upstream stages, and writes outputs via a temp file
plus rename so an interrupted run never leaves a half-written artifact.

Exit codes: 0 success / equivalent; 1 inequivalent; 2 undecided (budget);
3 invalid input (bad graph, bad code, unsupported parameters); 4 usage or
file-format errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .automorphisms import (
    code_aut_to_graph_aut,
    graph_aut_to_code_aut,
    identity_labeling,
    perfect_aut_transfer,
    sample_code_automorphisms,
)
from .distances import recover_all_distances
from .equivalence import find_equivalence
from .errors import FormatError, InvalidGraphError, UnsupportedParameterError
from .generators import gen_family
from .mdgraph import build_mdg, format_dimacs, read_dimacs, shuffle_graph
from .reconstruction import reconstruct_extended, reconstruct_perfect
from .words import (
    Word,
    apply_codemap,
    format_code,
    read_code,
    validate_extended_perfect,
    validate_perfect,
)

EXIT_OK = 0
EXIT_INEQUIVALENT = 1
EXIT_UNDECIDED = 2
EXIT_INVALID = 3
EXIT_FORMAT = 4

FAMILIES = ("hamming", "vasilev", "ext-hamming", "ext-vasilev")


class _Parser(argparse.ArgumentParser):
    """argparse's default exit code for usage errors is 2; remap to 4."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FORMAT, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand run depends on; seeds pin all randomness."""

    subcommand: str
    input: Optional[str] = None
    output: Optional[str] = None
    input_a: Optional[str] = None
    input_b: Optional[str] = None
    graph: Optional[str] = None
    seed: int = 0
    base_vertex: Optional[int] = None
    mode: Optional[str] = None
    budget: Optional[int] = None
    threads: int = 1
    family: Optional[str] = None
    m: int = 4
    shuffle_seed: Optional[int] = None
    perm_out: Optional[str] = None
    mapping: Optional[str] = None
    hint_translation: Optional[str] = None
    samples: int = 100
    perm_gens: Optional[str] = None
    kind: Optional[str] = None

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        sub = ns.subcommand
        if sub == "aut":
            sub = f"aut-{ns.aut_command}"
        fields = {
            name: getattr(ns, name)
            for name in cls.__dataclass_fields__
            if name != "subcommand" and hasattr(ns, name)
        }
        if fields.get("threads") is None:
            fields["threads"] = int(os.environ.get("MDGCODES_THREADS", "1"))
        return cls(subcommand=sub, **fields)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _atomic_write(path: str, text: str) -> None:
    """Write to a sibling temp file, then rename over the target."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mdgcodes-")
    done = False
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(text)
        os.replace(tmp, path)
        done = True
    finally:
        if not done:
            try:
                os.unlink(tmp)
            except OSError:
                pass


def _code_kind(code) -> Optional[str]:
    """'perfect', 'extended', or None when the file is neither."""
    if validate_extended_perfect(code):
        return "extended"
    if validate_perfect(code):
        return "perfect"
    return None


def _cmd_gen(cfg: RunConfig) -> int:
    code = gen_family(cfg.family, m=cfg.m, seed=cfg.seed)
    _atomic_write(cfg.output, format_code(code))
    print(f"wrote {len(code)} words of length {code.length} to {cfg.output}")
    return EXIT_OK


def _cmd_mdg(cfg: RunConfig) -> int:
    code = read_code(cfg.input)
    if _code_kind(code) is None:
        print("input code is neither perfect nor extended perfect", file=sys.stderr)
        return EXIT_INVALID
    graph = build_mdg(code)
    if cfg.shuffle_seed is not None:
        graph, perm = shuffle_graph(graph, cfg.shuffle_seed)
        if cfg.perm_out is not None:
            lines = [f"{old + 1} {new + 1}" for old, new in enumerate(perm)]
            _atomic_write(cfg.perm_out, "\n".join(lines) + "\n")
    _atomic_write(cfg.output, format_dimacs(graph))
    print(
        f"wrote graph on {graph.vcount} vertices, {graph.edge_count} edges to {cfg.output}"
    )
    return EXIT_OK


def _cmd_distances(cfg: RunConfig) -> int:
    graph = read_dimacs(cfg.input)
    dmatrix = recover_all_distances(graph)
    arr = dmatrix.to_array()
    iu, jv = np.triu_indices(graph.vcount, 1)
    vals = arr[iu, jv]
    lines = [
        f"{i + 1} {j + 1} {d}"
        for i, j, d in zip(iu.tolist(), jv.tolist(), vals.tolist())
    ]
    _atomic_write(cfg.output, "\n".join(lines) + "\n")
    print(f"wrote {len(lines)} pair distances to {cfg.output}")
    return EXIT_OK


def _cmd_reconstruct(cfg: RunConfig) -> int:
    graph = read_dimacs(cfg.input)
    base = (cfg.base_vertex or 1) - 1
    if not 0 <= base < graph.vcount:
        print(f"base vertex {base + 1} out of range 1..{graph.vcount}", file=sys.stderr)
        return EXIT_INVALID
    if cfg.mode == "extended":
        code, labeling = reconstruct_extended(graph, base=base, threads=cfg.threads)
    else:
        code, labeling = reconstruct_perfect(graph, base=base, threads=cfg.threads)
    _atomic_write(cfg.output, format_code(code))
    if cfg.mapping is not None:
        lines = [f"{v + 1} {w.to_string()}" for v, w in labeling.items()]
        _atomic_write(cfg.mapping, "\n".join(lines) + "\n")
    print(
        f"reconstructed {len(code)} words of length {code.length} "
        f"from {cfg.input} (base vertex {base + 1})"
    )
    return EXIT_OK


def _cmd_equiv(cfg: RunConfig) -> int:
    code_a = read_code(cfg.input_a)
    code_b = read_code(cfg.input_b)
    for path, code in ((cfg.input_a, code_a), (cfg.input_b, code_b)):
        if _code_kind(code) is None:
            print(f"{path}: neither perfect nor extended perfect", file=sys.stderr)
            return EXIT_INVALID
    hint = None
    if cfg.hint_translation is not None:
        hint = Word.from_string(cfg.hint_translation)
    kwargs = {}
    if cfg.budget is not None:
        kwargs["budget"] = cfg.budget
    result = find_equivalence(code_a, code_b, hint_translation=hint, **kwargs)
    print(f"status: {result.status}")
    if result.witness is not None:
        print(f"translation: {result.witness.trans.to_string()}")
        print("perm: " + " ".join(str(p) for p in result.witness.perm))
    for key in sorted(result.certificate):
        print(f"{key}: {result.certificate[key]}")
    return {
        "equivalent": EXIT_OK,
        "inequivalent": EXIT_INEQUIVALENT,
        "undecided": EXIT_UNDECIDED,
    }[result.status]


def _parse_perm_gens(path: str, length: int) -> list:
    gens = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line == "c" or line.startswith("c "):
                continue
            try:
                images = tuple(int(tok) for tok in line.split())
            except ValueError:
                raise FormatError("not a list of integers", line=lineno, path=path)
            if sorted(images) != list(range(1, length + 1)):
                raise FormatError(
                    f"not a permutation of 1..{length}", line=lineno, path=path
                )
            gens.append(images)
    return gens


def _cmd_aut_roundtrip(cfg: RunConfig) -> int:
    code = read_code(cfg.input)
    kind = _code_kind(code)
    if kind is None:
        print("input code is neither perfect nor extended perfect", file=sys.stderr)
        return EXIT_INVALID
    graph = read_dimacs(cfg.graph)
    if graph.vcount != len(code) or build_mdg(code).edge_set() != graph.edge_set():
        print(
            "graph is not the minimum distance graph of the code in file order",
            file=sys.stderr,
        )
        return EXIT_INVALID
    gens = []
    if cfg.perm_gens is not None:
        gens = _parse_perm_gens(cfg.perm_gens, code.length)
    maps = sample_code_automorphisms(
        code, cfg.samples, cfg.seed, perm_generators=gens
    )
    labeling = identity_labeling(code) if kind == "extended" else None
    round_ok = 0
    graph_auts = []
    for m in maps:
        alpha = code_aut_to_graph_aut(m, code, graph)
        graph_auts.append(alpha)
        if kind == "extended":
            back = graph_aut_to_code_aut(alpha, code, graph, labeling)
        else:
            back = perfect_aut_transfer(alpha, code, graph)
        if all(back.apply(w) == m.apply(w) for w in code):
            round_ok += 1
    comp_ok = 0
    pairs = list(zip(maps, maps[1:]))
    for (m1, m2), (a1, a2) in zip(pairs, zip(graph_auts, graph_auts[1:])):
        image = code_aut_to_graph_aut(m1.compose(m2), code, graph)
        if image.perm == a1.compose(a2).perm:
            comp_ok += 1
    print(f"samples: {len(maps)}")
    print(f"roundtrip identical action: {round_ok}/{len(maps)}")
    print(f"composition preserved: {comp_ok}/{len(pairs)}")
    ok = round_ok == len(maps) and comp_ok == len(pairs)
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_INVALID


def _cmd_validate(cfg: RunConfig) -> int:
    code = read_code(cfg.input)
    if cfg.kind == "perfect":
        result = validate_perfect(code)
    else:
        result = validate_extended_perfect(code)
    if result:
        print(f"valid {cfg.kind} code: {len(code)} words of length {code.length}")
        return EXIT_OK
    print(f"invalid: {result.reason}")
    return EXIT_INVALID


_HANDLERS = {
    "gen": _cmd_gen,
    "mdg": _cmd_mdg,
    "distances": _cmd_distances,
    "reconstruct": _cmd_reconstruct,
    "equiv": _cmd_equiv,
    "aut-roundtrip": _cmd_aut_roundtrip,
    "validate": _cmd_validate,
}


def build_parser() -> _Parser:
    parser = _Parser(
        prog="mdgcodes",
        description="Perfect binary codes and their minimum distance graphs.",
    )
    sub = parser.add_subparsers(dest="subcommand", metavar="command", required=True)

    p = sub.add_parser("gen", help="generate a code from a named family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--m", type=int, default=4, help="exponent; length 2^m - 1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("mdg", help="build the minimum distance graph of a code")
    p.add_argument("-i", "--input", required=True, help="code file")
    p.add_argument("-o", "--output", required=True, help="DIMACS graph file")
    p.add_argument(
        "--shuffle-seed", type=int, default=None,
        help="relabel vertices with this seed before writing",
    )
    p.add_argument(
        "--perm-out", default=None,
        help="write the shuffle as lines '<old-id> <new-id>' (1-based)",
    )

    p = sub.add_parser("distances", help="recover all pairwise distances from a graph")
    p.add_argument("-i", "--input", required=True, help="DIMACS graph file")
    p.add_argument("-o", "--output", required=True, help="lines '<u> <v> <d>'")

    p = sub.add_parser("reconstruct", help="rebuild a code from its graph")
    p.add_argument("--mode", required=True, choices=("extended", "perfect"))
    p.add_argument("-i", "--input", required=True, help="DIMACS graph file")
    p.add_argument("-o", "--output", required=True, help="code file")
    p.add_argument(
        "--base-vertex", type=_positive_int, default=1,
        help="1-based id of the vertex labeled with the zero word",
    )
    p.add_argument(
        "--mapping", default=None,
        help="also write lines '<vertex-id> <word>' (1-based)",
    )
    p.add_argument(
        "--threads", type=_positive_int, default=None,
        help="worker threads per weight class (default $MDGCODES_THREADS or 1)",
    )

    p = sub.add_parser("equiv", help="decide equivalence of two codes")
    p.add_argument("-a", "--input-a", required=True)
    p.add_argument("-b", "--input-b", required=True)
    p.add_argument(
        "--hint-translation", default=None,
        help="0/1 word to try first as the image of the first word of A",
    )
    p.add_argument("--budget", type=_positive_int, default=None)

    p = sub.add_parser("aut", help="automorphism transfer checks")
    aut_sub = p.add_subparsers(dest="aut_command", metavar="check", required=True)
    p = aut_sub.add_parser(
        "roundtrip", help="code -> graph -> code transfer on sampled automorphisms"
    )
    p.add_argument("-c", "--input", required=True, help="code file")
    p.add_argument("--graph", required=True, help="its DIMACS graph")
    p.add_argument("--samples", type=_positive_int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--perm-gens", default=None,
        help="file of coordinate permutations, one per line as images of 1..n",
    )

    p = sub.add_parser("validate", help="check a code file against its parameters")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--kind", required=True, choices=("perfect", "extended"))

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig.from_args(ns)
    try:
        return _HANDLERS[cfg.subcommand](cfg)
    except FormatError as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (InvalidGraphError, UnsupportedParameterError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
