"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 verification defect.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .forms import build_form_space
from .hexagon import HEXAGON, build_hexagon_instance, build_instance, verify_features
from .ngon import scan
from .polytope import DimensionTooLargeError, VPolytope, is_simplex, read_vpolytope
from .refinement import InconsistentAssignment
from .scalar import format_scalar
from .svg import FORM_NAMES, render_svg

EXIT_OK, EXIT_USAGE, EXIT_DEFECT = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n_range: list = field(default_factory=lambda: list(range(4, 9)))
    k_range: list | None = None
    fixture: Path | None = None
    out: Path | None = None
    format: str = "text"
    form: str = "v1"
    size: int = 400
    corrupt_fixture: bool = False


def parse_range(text: str, lo: int = 3, hi: int = 16) -> list[int]:
    """``"A..B"`` or ``"A"`` as an inclusive integer list within [lo, hi]."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            a, b = int(a), int(b)
        else:
            a = b = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B or A") from None
    if a > b or a < lo or b > hi:
        raise UsageError(f"range {text!r} must lie within {lo}..{hi}")
    return list(range(a, b + 1))


def _dump_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is not None:
        cfg.out.write_text(text)
    else:
        sys.stdout.write(text)


def _corrupted_instance():
    # e_1 replaces m_1 as the preimage of s_1
    inst = build_hexagon_instance()
    sources = list(inst.midpoints)
    sources[0] = inst.T.vertices[-1]
    from .refinement import make_partial_affine_map
    inst.F = make_partial_affine_map(list(zip(sources, inst.polygon)), source=inst.T, target=inst.C)
    inst.midpoints = tuple(sources)
    return inst


def cmd_verify_hexagon(cfg: RunConfig) -> int:
    try:
        inst = _corrupted_instance() if cfg.corrupt_fixture else build_hexagon_instance()
    except (InconsistentAssignment, ValueError) as exc:
        print(f"verification defect: instance construction failed: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    report = verify_features(inst)
    if cfg.format == "json":
        _emit(cfg, _dump_json(report.to_json()))
    else:
        lines = []
        for key in sorted(report.features):
            f = report.features[key]
            lines.append(f"feature {key}: {'PASS' if f.verdict else 'FAIL'}")
        e = report.features["e"].evidence
        lines.append(f"domain of F: dim {e['domain_dim']}, {e['domain_extreme_points']} "
                     f"extreme points, simplex={e['is_simplex']}, kernel dim {e['kernel_dim']}")
        lines.append(f"c1_disproved = {str(report.conjecture1_disproved).lower()}")
        lines.append(f"c3_disproved = {str(report.conjecture3_disproved).lower()}")
        lines.append(f"instance digest {report.instance_digest}")
        _emit(cfg, "\n".join(lines) + "\n")
    if not report.all_passed:
        print(f"verification defect: failing features {', '.join(report.failing)}",
              file=sys.stderr)
        return EXIT_DEFECT
    return EXIT_OK


def cmd_scan(cfg: RunConfig) -> int:
    report = scan(cfg.n_range, cfg.k_range)
    if cfg.format == "json":
        _emit(cfg, _dump_json(report.to_json()))
        return EXIT_OK
    header = f"{'n':>3} {'k':>3}  {'realizable':<10} {'extreme':<13} {'F ok':<5} verdict  stage"
    lines = [header]
    for r in report.rows:
        ext = "-" if r.extreme_in_OC is None else str(r.extreme_in_OC).lower()
        lines.append(f"{r.n:>3} {r.k:>3}  {str(r.realizable).lower():<10} {ext:<13} "
                     f"{str(r.F_consistent).lower():<5} {'PASS' if r.passed else 'FAIL':<8} "
                     f"{r.failure_stage or ''}".rstrip())
        residues = r.certificate.get("nonzero_residues")
        if residues:
            for h, res in residues.items():
                lines.append(f"          harmonic {h}: residue [{', '.join(res['coeffs'])}]")
        if r.failure_stage == "extremality" and r.certificate.get("midpoint_of"):
            a, b = r.certificate["midpoint_of"]
            lines.append(f"          ({', '.join(r.certificate['form'])}) = midpoint of "
                         f"({', '.join(a)}) and ({', '.join(b)})")
    lines.append(f"passing cells: {report.passing}")
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def inspect_summary(P: VPolytope) -> dict:
    n_points = len(P.points)
    n_unique = len(set(P.points))
    summary = {
        "input_points": n_points,
        "duplicates_removed": n_points - n_unique,
        "non_extreme_removed": n_unique - len(P.vertices),
        "extreme_points": [[format_scalar(a) for a in v] for v in P.vertices],
        "dimension": P.dim,
        "facets": len(P.facets.inequalities),
        "simplex": is_simplex(P),
    }
    try:
        summary["form_space_extreme_forms"] = len(build_form_space(P).extreme_forms)
    except DimensionTooLargeError:
        summary["form_space_extreme_forms"] = None
    return summary


def cmd_inspect(cfg: RunConfig) -> int:
    if cfg.fixture is None:
        raise UsageError("inspect needs --fixture PATH")
    try:
        P = read_vpolytope(cfg.fixture.read_text())
        summary = inspect_summary(P)
    except OSError as exc:
        print(f"error: cannot read {cfg.fixture}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.format == "json":
        _emit(cfg, _dump_json(summary))
        return EXIT_OK
    lines = [f"extreme points ({len(summary['extreme_points'])}):"]
    lines += ["  " + " ".join(v) for v in summary["extreme_points"]]
    if summary["duplicates_removed"]:
        lines.append(f"duplicates pruned: {summary['duplicates_removed']}")
    if summary["non_extreme_removed"]:
        lines.append(f"non-extreme points pruned: {summary['non_extreme_removed']}")
    lines.append(f"dimension: {summary['dimension']}")
    lines.append(f"facets: {summary['facets']}")
    lines.append(f"simplex: {str(summary['simplex']).lower()}")
    fs = summary["form_space_extreme_forms"]
    lines.append(f"form-space extreme forms: {'n/a (dimension cap)' if fs is None else fs}")
    _emit(cfg, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_svg(cfg: RunConfig) -> int:
    inst = build_instance(HEXAGON, 3)
    try:
        doc = render_svg(inst.OC, cfg.form, cfg.size)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(cfg, doc)
    return EXIT_OK


COMMANDS = {
    "verify-hexagon": cmd_verify_hexagon,
    "scan": cmd_scan,
    "inspect": cmd_inspect,
    "svg": cmd_svg,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="refinery", description="Exact verification of simplicial refinements.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", type=Path, default=None, metavar="PATH")

    v = sub.add_parser("verify-hexagon", help="build the hexagon refinement and check features a-e")
    common(v)
    v.add_argument("--corrupt-fixture", action="store_true", help=argparse.SUPPRESS)

    s = sub.add_parser("scan", help="scan regular n-gons for window-form refinements")
    common(s)
    s.add_argument("--n", default="4..8", metavar="A..B")
    s.add_argument("--k", default=None, metavar="A..B")

    i = sub.add_parser("inspect", help="summarize a V-polytope file")
    common(i)
    i.add_argument("--fixture", type=Path, metavar="PATH")

    g = sub.add_parser("svg", help="hexagon schematic with a form's level lines")
    g.add_argument("--out", type=Path, default=None, metavar="PATH")
    g.add_argument("--form", default="v1", help=f"one of {', '.join(FORM_NAMES)}")
    g.add_argument("--size", type=int, default=400)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=ns.command)
    cfg.out = getattr(ns, "out", None)
    cfg.format = getattr(ns, "format", "text")
    if ns.command == "scan":
        cfg.n_range = parse_range(ns.n)
        cfg.k_range = None if ns.k is None else parse_range(ns.k, 2, 15)
    elif ns.command == "inspect":
        cfg.fixture = ns.fixture
    elif ns.command == "svg":
        if ns.size <= 0:
            raise UsageError("--size must be positive")
        cfg.form, cfg.size = ns.form, ns.size
    elif ns.command == "verify-hexagon":
        cfg.corrupt_fixture = ns.corrupt_fixture
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"refinery: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
