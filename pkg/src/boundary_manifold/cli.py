"""Command-line front end.

    boundary-manifold COMMAND [INPUT] [--corpus NAME] [--human] [options]

INPUT is a JSON arrangement document (see ``parse_arrangement``); ``-`` or
nothing reads standard input.  Output is JSON with sorted keys, so identical
input and seed give byte-identical reports.

Exit codes: 0 success, 1 input error, 2 internal-consistency failure,
3 resource cap reached (partial report still printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import REPORT_SCHEMA, __version__
from .alexander import (RepresentationError, alexander_polynomial, characteristic_variety_v11,
                        diagonal_representation, distinct_factor_count, factor_count_contract_applies,
                        parse_representation, pencil_note, predicted_factor_count, twisted_alexander)
from .arrangement import (Arrangement, ArrangementClass, ArrangementError, arrangement_class, decone_partition,
                          dense_edges, is_aspherical, nbc2, parse_arrangement)
from .cohomology import cohomology_report
from .corpus import corpus
from .graph import build_graph
from .holonomy import DEFAULT_CAP, graded_ranks, holonomy_complement, holonomy_double
from .loci import DEFAULT_SEED, formality, resonance_checks
from .polytope import (PolytopeError, bns_component_count, chambers_and_char_poly, poincare_text,
                       twisted_ball_equivalent, z_matrix, zonotope_vertices)
from .presentation import alexander_gcd_oracle, presentations_for

COMMANDS = ("classify", "graph", "presentation", "alexander", "norm-ball", "bns", "cohomology", "holonomy",
            "loci", "formality", "all")

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_CAP = 0, 1, 2, 3


class InputError(Exception):
    pass


class ConsistencyError(Exception):
    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report


# ---------------------------------------------------------------------------
# input


def load_arrangement(path: str | None, corpus_name: str | None) -> Arrangement:
    if corpus_name is not None:
        named = corpus()
        if corpus_name not in named:
            raise InputError(f"unknown corpus arrangement {corpus_name!r}; known: {', '.join(sorted(named))}")
        return named[corpus_name]
    text = _read_text(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return parse_arrangement(doc)
    except ArrangementError as exc:
        raise InputError(f"invalid arrangement: {exc}") from None


def _read_text(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_representation(spec: str, pres):
    if spec == "diagonal" or spec.startswith("diagonal:"):
        k = int(spec.split(":", 1)[1]) if ":" in spec else 2
        return diagonal_representation(pres, 2, k)
    text = _read_text(spec)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"representation parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return parse_representation(doc, pres)
    except (RepresentationError, ValueError) as exc:
        raise InputError(f"invalid representation: {exc}") from None


# ---------------------------------------------------------------------------
# report sections


def _frac(x: Fraction) -> str:
    return str(x)


class Context:
    """Lazily computed objects shared by the sections."""

    def __init__(self, arr: Arrangement):
        self.arr = arr
        self._cache: dict[str, Any] = {}

    def get(self, key: str, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def graph(self):
        return self.presentations[0]

    @property
    def presentations(self):
        return self.get("pres", lambda: presentations_for(self.arr))

    @property
    def delta(self):
        return self.get("delta", lambda: alexander_polynomial(self.graph))


def section_arrangement(ctx: Context, args) -> dict:
    arr = ctx.arr
    doc = arr.to_document()
    return {
        "name": arr.name,
        "n_lines": arr.n_lines,
        "document": doc,
        "permutation": list(arr.permutation),
        "decone_partition": [list(b) for b in decone_partition(arr)],
        "multiple_points": [list(p.incident) for p in arr.points if p.multiplicity >= 3],
    }


def section_classify(ctx: Context, args) -> dict:
    arr = ctx.arr
    cls = arrangement_class(arr)
    out = {"class": cls.value, "aspherical": is_aspherical(arr), "dense_edges": len(dense_edges(arr))}
    note = pencil_note(ctx.graph)
    if note:
        out["note"] = note
        out["alexander_polynomial"] = ctx.delta.to_text()
    return out


def section_graph(ctx: Context, args) -> dict:
    g = ctx.graph
    nbc = nbc2(ctx.arr)
    return {
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "first_betti": g.first_betti,
        "cycle_edges": len(g.cycle_edges),
        "nbc2": [list(p) for p in nbc.pairs],
        "cycle_edges_match_nbc2": len(g.cycle_edges) == len(nbc),
        "detail": g.to_document(),
    }


def section_presentation(ctx: Context, args) -> dict:
    _, raw, pres = ctx.presentations
    free_rank, torsion = pres.abelianization()
    expected = ctx.arr.n + len(nbc2(ctx.arr))
    out = {
        "generators": [g.label for g in pres.generators],
        "relators": [{"label": lbl, "word": w.to_text()} for lbl, w in pres.relators],
        "commutator_relators": pres.is_commutator_relators(),
        "abelianization": {"free_rank": free_rank, "torsion": torsion, "expected_rank": expected},
        "raw_generator_count": len(raw.generators),
        "raw_relator_count": len(raw.relators),
    }
    if ctx.arr.n >= 2 and arrangement_class(ctx.arr) is not ArrangementClass.PENCIL:
        if not pres.is_commutator_relators() or free_rank != expected or torsion:
            raise ConsistencyError("presentation does not abelianize to Z^(n + |nbc2|)", out)
    return out


def _oracle_section(ctx: Context) -> dict:
    _, _, pres = ctx.presentations
    res = alexander_gcd_oracle(pres)
    delta = ctx.delta
    if delta.is_zero:
        agree = res.is_zero
    else:
        agree = (not res.is_zero) and res.agrees_with(delta)
    out = {"method": res.method, "minors": res.minors, "value": res.value.to_text(), "agrees": agree}
    if res.diagnostic:
        out["diagnostic"] = res.diagnostic
    return out


def section_alexander(ctx: Context, args) -> dict:
    delta = ctx.delta
    out: dict = {"delta": delta.to_text(), "zero": delta.is_zero, "distinct_factors": distinct_factor_count(delta)}
    note = pencil_note(ctx.graph)
    if note:
        out["note"] = note
    if factor_count_contract_applies(ctx.arr):
        out["predicted_factors"] = predicted_factor_count(ctx.arr)
    if getattr(args, "twisted", None):
        _, _, pres = ctx.presentations
        rep = load_representation(args.twisted, pres)
        try:
            tw = twisted_alexander(ctx.arr, ctx.graph, pres, rep)
        except RepresentationError as exc:
            raise InputError(str(exc)) from None
        tsec = {"dimension": rep.dimension, "field": rep.field, "delta": tw.to_text()}
        if not delta.is_zero and not tw.is_zero and delta.factors:
            tsec["ball_equivalent"] = twisted_ball_equivalent(delta, tw, rep.dimension)
        out["twisted"] = tsec
    if getattr(args, "oracle", False):
        out["oracle"] = _oracle_section(ctx)
        if not out["oracle"]["agrees"]:
            raise ConsistencyError("gcd-of-minors oracle disagrees with the graph formula", out)
    return out


def _polytope_ready(ctx: Context) -> str | None:
    delta = ctx.delta
    if delta.is_zero:
        return "the Alexander polynomial vanishes (pencil), so there is no Newton polytope"
    if not delta.factors:
        return "the Alexander polynomial is a unit; the Newton polytope is a point"
    return None


def section_norm_ball(ctx: Context, args) -> dict:
    why = _polytope_ready(ctx)
    if why:
        return {"note": why}
    z = ctx.get("z", lambda: z_matrix(ctx.delta))
    verts = ctx.get("verts", lambda: zonotope_vertices(z))
    return {"z_matrix": z.as_rows(), "vertices": [list(v) for v in verts], "vertex_count": len(verts)}


def section_bns(ctx: Context, args) -> dict:
    why = _polytope_ready(ctx)
    if why:
        return {"note": why}
    z = ctx.get("z", lambda: z_matrix(ctx.delta))
    cc = ctx.get("chambers", lambda: chambers_and_char_poly(z))
    verts = ctx.get("verts", lambda: zonotope_vertices(z))
    out = {
        "z_matrix": z.as_rows(),
        "poincare": list(cc.poincare),
        "poincare_text": poincare_text(cc.poincare),
        "chambers": cc.chambers,
        "components": bns_component_count(ctx.delta),
        "vertex_count": len(verts),
    }
    if len(verts) != cc.chambers:
        raise ConsistencyError("zonotope vertex count differs from the chamber count", out)
    return out


def section_cohomology(ctx: Context, args) -> dict:
    r = cohomology_report(ctx.arr)
    out = {
        "betti": list(r.betti),
        "poincare": r.poincare,
        "eta": [{"i": i, "j": j, "k": k, "coefficient": c} for i, j, k, c in r.eta.records()],
        "eta_text": r.eta.to_text(),
        "poincare_duality": r.pd,
        "generated_in_degree_one": r.generated_in_degree_one,
        "eta_routes_agree": r.eta_routes_agree,
        "betti_matches_complement": r.betti_matches_complement,
    }
    if not (r.pd and r.eta_routes_agree and r.betti_matches_complement):
        raise ConsistencyError("cohomology self-checks failed", out)
    return out


class CapReached(Exception):
    def __init__(self, message: str, section: dict):
        super().__init__(message)
        self.section = section


def section_holonomy(ctx: Context, args) -> dict:
    depth = getattr(args, "max_degree", 4)
    cap = getattr(args, "cap", DEFAULT_CAP)
    comp = holonomy_complement(ctx.arr)
    dbl = holonomy_double(ctx.arr)
    rc = graded_ranks(comp, depth, cap)
    rd = graded_ranks(dbl, depth, cap)
    out = {
        "max_degree": depth,
        "complement": {"generators": comp.m, "relations": len(comp.relations), "ranks": list(rc.dims),
                       "series": rc.series_text(), "complete": rc.complete},
        "boundary": {"generators": dbl.m, "relations": len(dbl.relations), "ranks": list(rd.dims),
                     "series": rd.series_text(), "complete": rd.complete, "presentation": dbl.to_text()},
    }
    if not (rc.complete and rd.complete):
        raise CapReached(f"workspace cap {cap} reached; ranks computed to degree {min(rc.depth, rd.depth)}", out)
    return out


def section_loci(ctx: Context, args) -> dict:
    seed = getattr(args, "seed", DEFAULT_SEED)
    samples = getattr(args, "samples", 5)
    cv = characteristic_variety_v11(ctx.graph)
    checks = resonance_checks(ctx.arr, samples, seed)
    out = {
        "v11_subtori": cv.equations(),
        "v11_exponents": [list(a) for a in cv.subtori],
        "seed": seed,
        "samples": samples,
        "resonance_checks": {k: {"passed": p, "total": t} for k, (p, t) in sorted(checks.checks.items())},
    }
    if not checks.all_passed:
        raise ConsistencyError("a sampled resonance containment failed", out)
    return out


def section_formality(ctx: Context, args) -> dict:
    seed = getattr(args, "seed", DEFAULT_SEED)
    f = formality(ctx.arr, seed)
    out = {
        "verdict": f.verdict,
        "reason": f.reason,
        "tc_hyperplanes": list(f.hyperplane_text),
        "subtorus_count": f.subtorus_count,
        "r11": f.r11.to_text(),
        "r11_ambient": f"C^{f.r11.ambient}",
        "seed": seed,
    }
    if f.witness is not None:
        out["mismatch_witness"] = {"point": [_frac(x) for x in f.witness], "h1": f.witness_h1,
                                   "off_every_hyperplane": True}
    return out


SECTIONS = {
    "classify": section_classify,
    "graph": section_graph,
    "presentation": section_presentation,
    "alexander": section_alexander,
    "norm-ball": section_norm_ball,
    "bns": section_bns,
    "cohomology": section_cohomology,
    "holonomy": section_holonomy,
    "loci": section_loci,
    "formality": section_formality,
}


# ---------------------------------------------------------------------------
# figures


def write_figures(ctx: Context, command: str, directory: Path) -> list[str]:
    from . import plotting

    stem = ctx.arr.name or "arrangement"
    made = []
    wanted = set(SECTIONS) if command == "all" else {command}
    if wanted & {"graph", "classify", "presentation"}:
        made.append(plotting.plot_graph(ctx.graph, directory / f"{stem}-graph.png", f"{stem}: graph"))
    if wanted & {"norm-ball", "bns", "alexander"} and _polytope_ready(ctx) is None:
        z = ctx.get("z", lambda: z_matrix(ctx.delta))
        verts = ctx.get("verts", lambda: zonotope_vertices(z))
        if z.rows >= 2:
            made.append(plotting.plot_zonotope(z, verts, directory / f"{stem}-zonotope.png"))
        cc = ctx.get("chambers", lambda: chambers_and_char_poly(z))
        made.append(plotting.plot_coefficients(list(cc.poincare), directory / f"{stem}-poincare.png"))
    if "holonomy" in wanted:
        args_depth = ctx._cache.get("holonomy_dims")
        if args_depth:
            made.append(plotting.plot_ranks(args_depth, directory / f"{stem}-holonomy.png"))
    return [p.name for p in made]


# ---------------------------------------------------------------------------
# assembly and rendering


def build_report(arr: Arrangement, command: str, args) -> tuple[dict, int, str | None]:
    ctx = Context(arr)
    report: dict = {"schema": REPORT_SCHEMA, "version": __version__, "command": command,
                    "arrangement": section_arrangement(ctx, args)}
    status, message = EXIT_OK, None
    names = list(SECTIONS) if command == "all" else [command]
    for name in names:
        try:
            report[name] = SECTIONS[name](ctx, args)
        except CapReached as exc:
            report[name] = exc.section
            report[name]["diagnostic"] = str(exc)
            status, message = max(status, EXIT_CAP), str(exc)
        except ConsistencyError as exc:
            report[name] = exc.report or {}
            report[name]["failure"] = str(exc)
            status, message = EXIT_INTERNAL, str(exc)
        if name == "holonomy":
            ctx._cache["holonomy_dims"] = report[name]["boundary"]["ranks"]
    if getattr(args, "figures", None):
        report["figures"] = write_figures(ctx, command, Path(args.figures))
    return report, status, message


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_human(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent
    for key in sorted(report):
        val = report[key]
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.append(render_human(val, indent + 1).rstrip("\n"))
        elif isinstance(val, list) and val and all(isinstance(v, (dict, list)) for v in val):
            lines.append(f"{pad}{key}:")
            for v in val:
                lines.append(f"{pad}  - {json.dumps(v, sort_keys=True)}")
        elif isinstance(val, str) and "\n" in val:
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  {ln}" for ln in val.rstrip("\n").split("\n"))
        else:
            lines.append(f"{pad}{key}: {val if isinstance(val, str) else json.dumps(val)}")
    return "\n".join(lines) + "\n"


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boundary-manifold",
                                description="Invariants of the boundary manifold of a line arrangement in CP^2.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("input", nargs="?", help="arrangement JSON file ('-' or omitted: stdin)")
        sp.add_argument("--corpus", metavar="NAME", help="use a built-in arrangement instead of INPUT")
        sp.add_argument("--human", action="store_true", help="indented plain text instead of JSON")
        sp.add_argument("--figures", metavar="DIR", help="also write PNG figures into DIR")
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled checks")
        return sp

    for name in COMMANDS:
        sp = common(sub.add_parser(name))
        if name in ("alexander", "all"):
            sp.add_argument("--twisted", metavar="REP",
                            help="representation JSON file, or 'diagonal[:k]' for the built-in diagonal one")
            sp.add_argument("--oracle", action="store_true", help="also run the gcd-of-minors oracle")
        if name in ("holonomy", "all"):
            sp.add_argument("--max-degree", type=int, default=4, metavar="D")
            sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="workspace cap for graded ranks")
        if name in ("loci", "all"):
            sp.add_argument("--samples", type=int, default=5, metavar="N")
    sub.add_parser("corpus", help="list the built-in arrangements")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "corpus":
        for name in sorted(corpus()):
            print(name)
        return EXIT_OK
    try:
        if getattr(args, "max_degree", 1) < 1:
            raise InputError("--max-degree must be at least 1")
        if getattr(args, "samples", 1) < 0:
            raise InputError("--samples must be nonnegative")
        arr = load_arrangement(args.input, args.corpus)
        report, status, message = build_report(arr, args.command, args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (RuntimeError, PolytopeError) as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    sys.stdout.write(render_human(report) if args.human else render_json(report))
    if message:
        print(("resource cap: " if status == EXIT_CAP else "consistency failure: ") + message, file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
