"""Command line front end.

Subcommands: solve, enumerate, poset, cut-solve, bi-objective.  Exit
status 0 on success, 1 for input errors, 2 for internal contract
violations.  All weights are printed as exact decimals.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .core import (
    ContractViolation,
    Instance,
    Matching,
    ParseError,
    WeightFunction,
    _content_lines,
    dominates,
    format_scaled,
    matching_weight,
    parse_instance,
    parse_weights,
    preset_desirable_undesirable,
    preset_egalitarian,
)
from .idealcut import max_weight_ideal_cut, parse_dag, validate_dag
from .oracle import all_stable_matchings, brute_max_weight_cut, brute_max_weight_matching
from .reduction import UniqueMatching, solve_max_weight
from .rotations import build_poset
from .sublattice import (
    boy_optimal_max,
    enumerate_max_matchings,
    girl_optimal_max,
    meta_rotation_poset,
    solve_bi_objective,
)

PRESETS = ("egalitarian-min", "egalitarian-max", "desirable-undesirable")


@dataclass
class RunConfig:
    subcommand: str
    instance_path: str | None = None
    dag_path: str | None = None
    weights_path: str | None = None
    preset: str | None = None
    pairs_path: str | None = None
    weights1_path: str | None = None
    preset1: str | None = None
    weights2_path: str | None = None
    preset2: str | None = None
    cap: int = 1000
    oracle: bool = False
    pole: str | None = None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stablecut",
        description="Maximum-weight stable matchings via ideal cuts.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_weight_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--weights", metavar="PATH", help="weight table file")
        p.add_argument("--preset", choices=PRESETS, help="built-in weight preset")
        p.add_argument(
            "--pairs",
            metavar="PATH",
            help="pair file for the desirable-undesirable preset",
        )

    p = sub.add_parser("solve", help="one maximum-weight stable matching")
    p.add_argument("instance", help="instance file")
    add_weight_options(p)
    p.add_argument("--pole", choices=("boy", "girl"), help="which optimal pole to report")
    p.add_argument("--oracle", action="store_true", help="use the brute-force path")

    p = sub.add_parser("enumerate", help="all maximum-weight stable matchings")
    p.add_argument("instance", help="instance file")
    add_weight_options(p)
    p.add_argument("--cap", type=int, default=1000, help="truncate after this many")

    p = sub.add_parser("poset", help="dump the rotation poset")
    p.add_argument("instance", help="instance file")

    p = sub.add_parser("cut-solve", help="maximum-weight ideal cut of a DAG")
    p.add_argument("dag", help="graph file")
    p.add_argument("--oracle", action="store_true", help="use the brute-force path")

    p = sub.add_parser("bi-objective", help="best secondary weight among primary optima")
    p.add_argument("instance", help="instance file")
    p.add_argument("--weights1", metavar="PATH", help="primary weight table file")
    p.add_argument("--preset1", choices=PRESETS[:2], help="primary weight preset")
    p.add_argument("--weights2", metavar="PATH", help="secondary weight table file")
    p.add_argument("--preset2", choices=PRESETS[:2], help="secondary weight preset")
    return parser


def config_from_args(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        subcommand=ns.subcommand,
        instance_path=getattr(ns, "instance", None),
        dag_path=getattr(ns, "dag", None),
        weights_path=getattr(ns, "weights", None),
        preset=getattr(ns, "preset", None),
        pairs_path=getattr(ns, "pairs", None),
        weights1_path=getattr(ns, "weights1", None),
        preset1=getattr(ns, "preset1", None),
        weights2_path=getattr(ns, "weights2", None),
        preset2=getattr(ns, "preset2", None),
        cap=getattr(ns, "cap", 1000),
        oracle=getattr(ns, "oracle", False),
        pole=getattr(ns, "pole", None),
    )


def _read(path: str) -> str:
    return Path(path).read_text()


def parse_pair_file(text: str, n: int) -> tuple[set[tuple[int, int]], set[tuple[int, int]]]:
    """Lines ``d B G`` mark desirable pairs and ``u B G`` undesirable ones,
    1-based; comments and blank lines are skipped."""
    desirable: set[tuple[int, int]] = set()
    undesirable: set[tuple[int, int]] = set()
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 3 or parts[0].lower() not in ("d", "u"):
            raise ParseError(f"line {lineno}: expected 'd B G' or 'u B G'")
        try:
            b, g = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"line {lineno}: malformed pair") from None
        if not (1 <= b <= n and 1 <= g <= n):
            raise ParseError(f"line {lineno}: pair ({b}, {g}) out of range 1..{n}")
        target = desirable if parts[0].lower() == "d" else undesirable
        target.add((b - 1, g - 1))
    return desirable, undesirable


def _load_weights(
    inst: Instance,
    weights_path: str | None,
    preset: str | None,
    pairs_path: str | None,
    slot: str = "",
) -> WeightFunction:
    tag = f" {slot}" if slot else ""
    if (weights_path is None) == (preset is None):
        raise ValueError(f"need exactly one{tag} weight source (--weights or --preset)")
    if weights_path is not None:
        return parse_weights(_read(weights_path), inst.n)
    if preset == "egalitarian-min":
        return preset_egalitarian(inst, "minimize")
    if preset == "egalitarian-max":
        return preset_egalitarian(inst, "maximize")
    if pairs_path is None:
        raise ValueError("the desirable-undesirable preset needs --pairs")
    desirable, undesirable = parse_pair_file(_read(pairs_path), inst.n)
    return preset_desirable_undesirable(inst, desirable, undesirable)


def _matching_lines(m: Matching) -> list[str]:
    return [f"{b + 1} {g + 1}" for b, g in m.pairs()]


def _run_solve(cfg: RunConfig) -> str:
    inst = parse_instance(_read(cfg.instance_path))
    w = _load_weights(inst, cfg.weights_path, cfg.preset, cfg.pairs_path)
    if cfg.oracle:
        matching, weight = brute_max_weight_matching(inst, w)
        if cfg.pole == "girl":
            stable = all_stable_matchings(inst)
            optima = [m for m in stable if matching_weight(m, w) == weight]
            bottom = [
                m for m in optima if all(dominates(other, m, inst) for other in optima)
            ]
            matching = min(bottom or optima, key=lambda m: m.partner_of_boy)
    elif cfg.pole is not None:
        p = meta_rotation_poset(inst, w)
        matching = boy_optimal_max(p) if cfg.pole == "boy" else girl_optimal_max(p)
        weight = matching_weight(matching, w)
    else:
        matching, weight = solve_max_weight(inst, w)
    lines = [f"weight {format_scaled(weight, w.scale)}"]
    lines.extend(_matching_lines(matching))
    return "\n".join(lines)


def _run_enumerate(cfg: RunConfig) -> str:
    inst = parse_instance(_read(cfg.instance_path))
    w = _load_weights(inst, cfg.weights_path, cfg.preset, cfg.pairs_path)
    p = meta_rotation_poset(inst, w)
    matchings, truncated = enumerate_max_matchings(p, cfg.cap)
    lines = [f"count {len(matchings)}"]
    for i, m in enumerate(matchings, start=1):
        lines.append(f"matching {i}")
        lines.extend(_matching_lines(m))
    lines.append(f"truncated: {'yes' if truncated else 'no'}")
    return "\n".join(lines)


def _run_poset(cfg: RunConfig) -> str:
    inst = parse_instance(_read(cfg.instance_path))
    poset = build_poset(inst)
    lines = []
    for rho in poset.rotations:
        pairs = " ".join(f"({b + 1},{g + 1})" for b, g in rho.pairs)
        lines.append(f"rotation {rho.id}: {pairs}")
    for a, b in sorted(poset.edges):
        lines.append(f"edge {a} {b}")
    return "\n".join(lines) if lines else "no rotations"


def _run_cut_solve(cfg: RunConfig) -> str:
    g = parse_dag(_read(cfg.dag_path))
    validate_dag(g)
    if cfg.oracle:
        cut, weight = brute_max_weight_cut(g)
    else:
        cut, weight = max_weight_ideal_cut(g)
    side = " ".join(str(v + 1) for v in sorted(cut.source_side))
    return f"weight {format_scaled(weight, g.scale)}\nS: {side}"


def _run_bi_objective(cfg: RunConfig) -> str:
    inst = parse_instance(_read(cfg.instance_path))
    w1 = _load_weights(inst, cfg.weights1_path, cfg.preset1, None, slot="primary")
    w2 = _load_weights(inst, cfg.weights2_path, cfg.preset2, None, slot="secondary")
    m, v1, v2 = solve_bi_objective(inst, w1, w2)
    lines = [
        f"weight1 {format_scaled(v1, w1.scale)}",
        f"weight2 {format_scaled(v2, w2.scale)}",
    ]
    lines.extend(_matching_lines(m))
    return "\n".join(lines)


_DISPATCH = {
    "solve": _run_solve,
    "enumerate": _run_enumerate,
    "poset": _run_poset,
    "cut-solve": _run_cut_solve,
    "bi-objective": _run_bi_objective,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a configuration; returns (exit status, report text)."""
    try:
        return 0, _DISPATCH[cfg.subcommand](cfg)
    except ContractViolation as exc:
        return 2, f"error: {exc}"
    except (ParseError, ValueError, OSError) as exc:
        return 1, f"error: {exc}"


def main(argv: list[str] | None = None) -> None:
    cfg = config_from_args(sys.argv[1:] if argv is None else argv)
    status, report = run(cfg)
    print(report, file=sys.stdout if status == 0 else sys.stderr)
    sys.exit(status)


if __name__ == "__main__":
    main()
