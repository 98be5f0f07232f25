"""Command-line front end.

Subcommands: solve, decompose, gen, validate, patterns, bench.  One summary
line per run goes to stdout ("optimum <v> method <m> width <w> time_ms <t>"
for solve); diagnostics go to stderr.  Exit codes: 0 success, 1 parse error,
2 search cap exceeded, 3 invalid decomposition/solution/configuration.  All
randomness flows from the --seed value; output files are byte-reproducible,
only the timing field on stdout varies between runs.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, fields
from pathlib import Path

from .digraph import (
    DiGraph,
    delete,
    is_acyclic,
    parse_digraph_and_rotations,
    write_digraph,
)
from .embedding import Embedding
from .errors import CapExceeded, ParseError, ValidationError
from .generators import (
    gen_grid,
    gen_hitting_set,
    gen_random_planar,
    or_gadget,
    reduce_2formula_to_dfvs,
    reduce_3formula_to_2formula,
    reduce_hs_to_3formula,
)
from .formulas import HittingSetInstance
from .oracle import min_dfas_bruteforce, min_dfvs_bruteforce
from .patterns import ChordRelation, count_noncrossing, crossing_count, generate, simplify
from .planar_dp import solve_dfvs_planar
from .sphere_cut import (
    build_sc_heuristic,
    parse_sc,
    preprocess_planar,
    validate_sc,
    write_sc,
)
from .treewidth import (
    make_nice,
    parse_td,
    solve_dfas_tw,
    solve_dfvs_tw,
    td_exact_small,
    td_heuristic,
    write_td,
)


@dataclass
class RunConfig:
    command: str
    input: str | None = None
    out: str | None = None
    td: str | None = None
    sc: str | None = None
    solution: str | None = None
    method: str = "oracle"
    problem: str = "dfvs"
    seed: int = 0
    kind: str | None = None
    rows: int = 2
    cols: int = 2
    n: int = 4
    k: int = 2
    sets: int | None = None
    out_prefix: str | None = None
    exact: bool = False
    cap_vertices: int = 24
    cap_exact_td: int = 12
    points: int = 3
    op: str | None = None
    relation: str | None = None
    corpus: str | None = None
    methods: str = "oracle"


def _config(args: argparse.Namespace) -> RunConfig:
    known = {f.name for f in fields(RunConfig)}
    return RunConfig(**{k: v for k, v in vars(args).items() if k in known and v is not None})


def _read(path):
    return Path(path).read_text(encoding="ascii")


def _write(path, text):
    Path(path).write_text(text, encoding="ascii")


def _load_graph(cfg):
    g, rot = parse_digraph_and_rotations(_read(cfg.input))
    return g, (Embedding(rot) if rot is not None else None)


def write_hitting_set(inst: HittingSetInstance) -> str:
    out = [f"hs {inst.k} {len(inst.sets)}"]
    for f in inst.sets:
        out.append(" ".join(["s"] + [f"{r} {c}" for r, c in f]))
    return "\n".join(out) + "\n"


def parse_hitting_set(text: str) -> HittingSetInstance:
    header = None
    fam = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith("%"):
            continue
        parts = ln.split()
        if parts[0] == "hs":
            header = (int(parts[1]), int(parts[2]))
        elif parts[0] == "s":
            nums = [int(x) for x in parts[1:]]
            if len(nums) % 2:
                raise ParseError("set line needs row/col pairs", lineno)
            fam.append(list(zip(nums[0::2], nums[1::2])))
        else:
            raise ParseError(f"unknown line {ln!r}", lineno)
    if header is None:
        raise ParseError("missing 'hs' header")
    if len(fam) != header[1]:
        raise ParseError("set count does not match header")
    return HittingSetInstance(header[0], fam)


def _solution_text(problem, g, result) -> str:
    lines = [str(result.optimum)]
    if problem == "dfvs":
        lines.extend(str(v) for v in sorted(result.witness))
    else:
        arcs = sorted(g.arcs[i] for i in result.witness)
        lines.extend(f"a {u} {v}" for u, v in arcs)
    return "\n".join(lines) + "\n"


def cmd_solve(cfg: RunConfig) -> int:
    if cfg.method == "planar" and cfg.problem == "dfas":
        print("the planar method only supports dfvs; "
              "planar DFAS is polynomial elsewhere and not provided", file=sys.stderr)
        return 3
    g, emb = _load_graph(cfg)
    started = time.perf_counter()
    width = -1
    if cfg.method == "oracle":
        solver = min_dfvs_bruteforce if cfg.problem == "dfvs" else min_dfas_bruteforce
        result = solver(g, cap=cfg.cap_vertices)
    elif cfg.method == "treewidth":
        if cfg.td:
            td = parse_td(_read(cfg.td), g)
        elif g.n <= cfg.cap_exact_td:
            td = td_exact_small(g, cap=cfg.cap_exact_td)
        else:
            td = td_heuristic(g)
        ntd = make_nice(td)
        width = ntd.width
        solver = solve_dfvs_tw if cfg.problem == "dfvs" else solve_dfas_tw
        result = solver(g, ntd)
    else:
        if emb is None:
            print("planar method needs an embedding section in the input",
                  file=sys.stderr)
            return 3
        if cfg.sc:
            scd = parse_sc(_read(cfg.sc), g)
            width = scd.width
            result = solve_dfvs_planar(g, emb, scd)
        else:
            total = 0
            witness = set()
            width = 0
            for piece, piece_emb, _ in preprocess_planar(g, emb):
                scd = build_sc_heuristic(piece, piece_emb)
                width = max(width, scd.width)
                res = solve_dfvs_planar(piece, piece_emb, scd)
                total += res.optimum
                witness |= res.witness
            from .oracle import OracleResult
            result = OracleResult(total, frozenset(witness))
    elapsed_ms = int((time.perf_counter() - started) * 1000)
    if cfg.out:
        _write(cfg.out, _solution_text(cfg.problem, g, result))
    print(f"optimum {result.optimum} method {cfg.method} width {width} "
          f"time_ms {elapsed_ms}")
    return 0


def cmd_decompose(cfg: RunConfig) -> int:
    g, emb = _load_graph(cfg)
    if cfg.kind == "tree":
        td = td_exact_small(g, cap=cfg.cap_exact_td) if cfg.exact else td_heuristic(g)
        from .treewidth import validate_td
        validate_td(td, g)
        _write(cfg.out, write_td(td, g.n))
        print(f"decomposition tree width {td.width}")
    else:
        if emb is None:
            print("sc decomposition needs an embedding section", file=sys.stderr)
            return 3
        scd = build_sc_heuristic(g, emb)
        report = validate_sc(g, emb, scd)
        if not report.ok:
            print(f"built decomposition failed validation: {report.error}",
                  file=sys.stderr)
            return 3
        _write(cfg.out, write_sc(scd))
        print(f"decomposition sc width {report.width}")
    return 0


def cmd_gen(cfg: RunConfig) -> int:
    prefix = cfg.out_prefix
    if cfg.kind == "grid":
        g, emb, scd = gen_grid(cfg.rows, cfg.cols, cfg.seed)
        _write(prefix + ".gr", write_digraph(g, emb.rotations))
        _write(prefix + ".sc", write_sc(scd))
        print(f"gen grid {cfg.rows}x{cfg.cols} seed {cfg.seed}")
    elif cfg.kind == "random-planar":
        g, emb = gen_random_planar(cfg.n, cfg.seed)
        _write(prefix + ".gr", write_digraph(g, emb.rotations))
        print(f"gen random-planar n {g.n} seed {cfg.seed}")
    elif cfg.kind == "hitting-set":
        inst = gen_hitting_set(cfg.k, cfg.sets if cfg.sets is not None else cfg.k,
                               cfg.seed)
        _write(prefix + ".hs", write_hitting_set(inst))
        print(f"gen hitting-set k {cfg.k} seed {cfg.seed}")
    elif cfg.kind == "or-gadget":
        g, _, _ = or_gadget()
        _write(prefix + ".gr", write_digraph(g))
        print("gen or-gadget")
    elif cfg.kind == "hardness-chain":
        inst = gen_hitting_set(cfg.k, cfg.sets if cfg.sets is not None else cfg.k,
                               cfg.seed)
        phi = reduce_hs_to_3formula(inst, allow_small=True)
        psi, _ = reduce_3formula_to_2formula(phi)
        out = reduce_2formula_to_dfvs(psi)
        _write(prefix + ".gr", write_digraph(out.graph))
        _write(prefix + ".td", write_td(out.decomposition, out.graph.n))
        _write(prefix + ".budget", f"budget {out.budget}\n")
        print(f"gen hardness-chain k {cfg.k} seed {cfg.seed} "
              f"vertices {out.graph.n} budget {out.budget}")
    else:
        print(f"unknown kind {cfg.kind!r}", file=sys.stderr)
        return 1
    return 0


def _parse_solution(text):
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.startswith("%")]
    if not lines:
        raise ParseError("empty solution file")
    size = int(lines[0])
    vertices = set()
    arcs = set()
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "a":
            arcs.add((int(parts[1]), int(parts[2])))
        else:
            vertices.add(int(parts[0]))
    return size, vertices, arcs


def cmd_validate(cfg: RunConfig) -> int:
    g, emb = _load_graph(cfg)
    if cfg.solution:
        size, vertices, arcs = _parse_solution(_read(cfg.solution))
        if vertices and arcs:
            print("solution mixes vertex and arc lines", file=sys.stderr)
            return 3
        if size != len(vertices) + len(arcs):
            print("declared size differs from listed deletions", file=sys.stderr)
            return 3
        if not vertices <= g.vertices:
            print("solution deletes unknown vertices", file=sys.stderr)
            return 3
        arc_ids = set()
        for u, v in arcs:
            i = g.arc_index(u, v)
            if i is None:
                print(f"solution deletes unknown arc ({u},{v})", file=sys.stderr)
                return 3
            arc_ids.add(i)
        if not is_acyclic(delete(g, frozenset(vertices), frozenset(arc_ids))):
            print("deletion does not make the graph acyclic", file=sys.stderr)
            return 3
        print("valid solution")
        return 0
    if cfg.td:
        td = parse_td(_read(cfg.td), g)
        print(f"valid tree decomposition width {td.width}")
        return 0
    if cfg.sc:
        if emb is None:
            print("sc validation needs an embedding section", file=sys.stderr)
            return 3
        scd = parse_sc(_read(cfg.sc), g)
        report = validate_sc(g, emb, scd)
        if not report.ok:
            print(report.error, file=sys.stderr)
            return 3
        print(f"valid sc decomposition width {report.width}")
        return 0
    print("nothing to validate; pass --solution, --td, or --sc", file=sys.stderr)
    return 1


def _parse_relation(text, points):
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith("%"):
            continue
        parts = ln.split()
        if len(parts) != 2:
            raise ParseError(f"relation line must be 'u v', got {ln!r}", lineno)
        pairs.append((int(parts[0]), int(parts[1])))
    return ChordRelation(tuple(range(1, points + 1)), pairs)


def cmd_patterns(cfg: RunConfig) -> int:
    if cfg.op == "count-noncrossing":
        text = f"count {count_noncrossing(cfg.points)}\n"
    elif cfg.op == "gen":
        rel = _parse_relation(_read(cfg.relation), cfg.points)
        pat = generate(rel)
        text = "".join(f"pair {a} {b}\n" for a, b in sorted(pat.pairs))
    elif cfg.op == "simplify":
        rel = _parse_relation(_read(cfg.relation), cfg.points)
        out = simplify(rel)
        text = "".join(f"pair {a} {b}\n" for a, b in sorted(out.pairs))
        text += f"crossings {crossing_count(out)}\n"
    else:
        print(f"unknown op {cfg.op!r}", file=sys.stderr)
        return 1
    if cfg.out:
        _write(cfg.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_bench(cfg: RunConfig) -> int:
    methods = [m.strip() for m in cfg.methods.split(",") if m.strip()]
    all_agree = True
    for path in sorted(Path(cfg.corpus).glob("*.gr")):
        g, emb = parse_digraph_and_rotations(_read(path))
        emb = Embedding(emb) if emb is not None else None
        optima = []
        for method in methods:
            sub = RunConfig(command="solve", input=str(path), method=method,
                            problem="dfvs", cap_vertices=cfg.cap_vertices)
            try:
                if method == "oracle":
                    optima.append(min_dfvs_bruteforce(g, cap=cfg.cap_vertices).optimum)
                elif method == "treewidth":
                    td = (td_exact_small(g) if g.n <= cfg.cap_exact_td
                          else td_heuristic(g))
                    optima.append(solve_dfvs_tw(g, make_nice(td)).optimum)
                elif method == "planar":
                    if emb is None:
                        optima.append(None)
                        continue
                    total = 0
                    for piece, piece_emb, _ in preprocess_planar(g, emb):
                        scd = build_sc_heuristic(piece, piece_emb)
                        total += solve_dfvs_planar(piece, piece_emb, scd).optimum
                    optima.append(total)
                else:
                    optima.append(None)
            except (CapExceeded, ValidationError):
                optima.append(None)
        seen = {v for v in optima if v is not None}
        agree = len(seen) <= 1
        all_agree = all_agree and agree
        shown = ",".join("skip" if v is None else str(v) for v in optima)
        print(f"bench {path.name} optima {shown} agree {str(agree).lower()}")
    return 0 if all_agree else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dfvskit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve DFVS/DFAS on a digraph file")
    p.add_argument("--input", required=True)
    p.add_argument("--td")
    p.add_argument("--sc")
    p.add_argument("--method", choices=["oracle", "treewidth", "planar"],
                   default="oracle")
    p.add_argument("--problem", choices=["dfvs", "dfas"], default="dfvs")
    p.add_argument("--out")
    p.add_argument("--cap-vertices", dest="cap_vertices", type=int)

    p = sub.add_parser("decompose", help="write a tree or sc decomposition")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=["tree", "sc"], required=True)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--out", required=True)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("--kind", required=True,
                   choices=["grid", "random-planar", "hitting-set",
                            "or-gadget", "hardness-chain"])
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--sets", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-prefix", dest="out_prefix", required=True)

    p = sub.add_parser("validate", help="check a solution or decomposition")
    p.add_argument("--input", required=True)
    p.add_argument("--solution")
    p.add_argument("--td")
    p.add_argument("--sc")

    p = sub.add_parser("patterns", help="connectivity-pattern utilities")
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--op", required=True,
                   choices=["count-noncrossing", "gen", "simplify"])
    p.add_argument("--relation")
    p.add_argument("--out")

    p = sub.add_parser("bench", help="compare methods over a corpus directory")
    p.add_argument("--corpus", required=True)
    p.add_argument("--methods", default="oracle,treewidth")
    p.add_argument("--cap-vertices", dest="cap_vertices", type=int)
    return parser


COMMANDS = {
    "solve": cmd_solve,
    "decompose": cmd_decompose,
    "gen": cmd_gen,
    "validate": cmd_validate,
    "patterns": cmd_patterns,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    cfg = _config(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
