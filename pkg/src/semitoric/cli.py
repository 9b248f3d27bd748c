"""Command line front end.

Every subcommand reads a fan document (``--fan PATH``) or a built-in example
(``--example NAME``) and writes a report to standard output: indented text by
default, canonical JSON under ``--json``.  Exit status is 0 on success, 1 for
malformed input and 2 when the input is outside an operation's domain.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import floer, polyhedral, presentations
from .errors import (
    BadParams, InputError, SchemaError, SemitoricError, SyntaxError_,
    UnknownCommand, ValidationError,
)
from .examples import NAMES, generate_example
from .exact.novikov import NovikovScalar
from .groebner import GroebnerBasis, Poly
from .polyhedral import Fan, MomentData

COMMANDS = (
    "validate", "classify", "cohomology", "quantum", "symplectic", "jacobian", "equivariant",
    "fixed-loci", "core", "morse-bott", "rotation", "a-function", "rescale", "filtration",
    "hilbert-basis", "examples",
)


# ---------------------------------------------------------------------------
# documents

@dataclass(frozen=True)
class FanDocument:
    rank: int
    rays: tuple
    max_cones: tuple
    lam: tuple | None = None
    name: str | None = None

    def fan(self):
        return Fan(self.rank, self.rays, self.max_cones, name=self.name or "")

    def to_json(self):
        out = {"rank": self.rank, "rays": [list(r) for r in self.rays],
               "max_cones": [list(c) for c in self.max_cones]}
        if self.lam is not None:
            out["lambda"] = list(self.lam)
        if self.name is not None:
            out["name"] = self.name
        return out


def render_fan_document(doc):
    return json.dumps(doc.to_json(), sort_keys=True, indent=2) + "\n"


def document_from_moment(md):
    f = md.fan
    return FanDocument(f.rank, f.rays, f.max_cones, md.lam, f.name or None)


def _int_list(value, where):
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool)
                                              for x in value):
        raise SchemaError(f"{where}: expected a list of integers")
    return tuple(value)


def parse_fan_document(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SyntaxError_(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise SchemaError("document must be an object")
    for key in ("rank", "rays", "max_cones"):
        if key not in data:
            raise SchemaError(f"missing field {key!r}")
    unknown = set(data) - {"rank", "rays", "max_cones", "lambda", "name"}
    if unknown:
        raise SchemaError(f"unknown fields {sorted(unknown)}")
    rank = data["rank"]
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 1:
        raise SchemaError("rank: expected a positive integer")
    if not isinstance(data["rays"], list) or not data["rays"]:
        raise SchemaError("rays: expected a nonempty list")
    rays = tuple(_int_list(r, f"rays[{i}]") for i, r in enumerate(data["rays"]))
    for i, r in enumerate(rays):
        if len(r) != rank:
            raise SchemaError(f"rays[{i}]: length {len(r)} differs from rank {rank}")
    if not isinstance(data["max_cones"], list) or not data["max_cones"]:
        raise SchemaError("max_cones: expected a nonempty list")
    cones = tuple(_int_list(c, f"max_cones[{i}]") for i, c in enumerate(data["max_cones"]))
    for i, c in enumerate(cones):
        if any(j < 1 or j > len(rays) for j in c):
            raise SchemaError(f"max_cones[{i}]: index outside 1..{len(rays)}")
    lam = None
    if "lambda" in data:
        lam = _int_list(data["lambda"], "lambda")
        if len(lam) != len(rays):
            raise SchemaError(f"lambda: {len(lam)} entries for {len(rays)} rays")
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise SchemaError("name: expected a string")
    doc = FanDocument(rank, rays, cones, lam, name)
    try:
        polyhedral.validate_fan(doc.fan())
    except InputError as exc:
        raise ValidationError(f"{exc.name}: {exc}", cause=exc) from None
    return doc


def default_lambda(fan):
    """All ``-1`` when that choice gives a monotone Fano polytope, else ``None``."""
    md = MomentData(fan, (-1,) * fan.nrays)
    try:
        polyhedral.polytope_vertices(md)
        if presentations.classify_geometry(md).kind != presentations.FANO:
            return None
        ring = presentations.x_ring(fan.nrays)
        presentations.quantum_srs(md, ring)
    except SemitoricError:
        return None
    return md.lam


# ---------------------------------------------------------------------------
# value conversion

def plain(x):
    """Convert results into JSON-ready values with exact numbers as strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    if isinstance(x, (NovikovScalar, Poly)):
        return str(x)
    if isinstance(x, GroebnerBasis):
        return [str(g) for g in x.generators]
    if isinstance(x, dict):
        return {str(k): plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if hasattr(x, "value"):
        return x.value
    return str(x)


def render_text(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            nested = isinstance(v, list) and any(isinstance(t, dict) for t in v)
            if (isinstance(v, dict) and v) or nested:
                lines.append(f"{pad}{k}:")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_inline(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.extend(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_inline(v)}")
    else:
        lines.append(f"{pad}{_inline(obj)}")
    return lines


def _inline(v):
    if isinstance(v, list):
        return "[" + ", ".join(_inline(t) for t in v) + "]"
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "none"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(t)}" for k, t in sorted(v.items())) + "}"
    return str(v)


def render_report(report, as_json):
    if as_json:
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return "\n".join(render_text(report)) + "\n"


# ---------------------------------------------------------------------------
# argument handling

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadParams(message)


def parse_vector(text, what="vector"):
    try:
        return tuple(int(t) for t in text.split(","))
    except (ValueError, AttributeError):
        raise BadParams(f"{what}: expected comma-separated integers, got {text!r}") from None


def parse_vectors(text, what="vectors"):
    return [parse_vector(part, what) for part in text.split(";") if part.strip()]


def build_parser(command):
    p = _Parser(prog=f"semitoric {command}", add_help=True)
    p.add_argument("--json", action="store_true", help="canonical machine-readable output")
    if command == "examples":
        p.add_argument("name", nargs="?")
        p.add_argument("--k", type=int)
        p.add_argument("--m", type=int)
        return p
    if command == "rescale":
        p.add_argument("--weights", help="weights as 'a,b;c,d;...'")
    p.add_argument("--fan", help="path to a fan document")
    p.add_argument("--example", help="built-in example name")
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    if command in ("symplectic", "equivariant", "fixed-loci", "morse-bott", "rotation",
                   "filtration", "rescale"):
        p.add_argument("--v", required=True)
    if command in ("rescale", "filtration"):
        p.add_argument("--vp")
    if command == "filtration":
        p.add_argument("--p", type=int, default=None)
        p.add_argument("--pp", type=int, default=None)
    if command == "a-function":
        p.add_argument("--vs", required=True, help="cocharacters as 'a,b;c,d;...'")
    if command in ("symplectic", "quantum", "filtration"):
        p.add_argument("--force-compact", action="store_true")
    return p


def load_document(args):
    if args.fan and args.example:
        raise BadParams("give either --fan or --example, not both")
    if args.fan:
        try:
            with open(args.fan, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise BadParams(f"cannot read {args.fan}: {exc.strerror}") from None
        except UnicodeDecodeError:
            raise SyntaxError_(f"{args.fan} is not UTF-8 text") from None
        return parse_fan_document(text)
    if args.example:
        return document_from_moment(generate_example(args.example, args.k, args.m))
    raise BadParams("a fan is required (--fan PATH or --example NAME)")


class Context:
    def __init__(self, doc):
        self.doc = doc
        self.fan = doc.fan()
        self.warnings = []
        self._md = None
        self._qh = None

    @property
    def md(self):
        if self._md is None:
            lam = self.doc.lam
            if lam is None:
                lam = default_lambda(self.fan)
                if lam is None:
                    raise SchemaError("lambda is required: all -1 is not a monotone Fano choice")
                self.warnings.append("lambda omitted; using all -1")
            self._md = MomentData(self.fan, lam)
        return self._md

    def md_or_none(self):
        if self.doc.lam is None and default_lambda(self.fan) is None:
            return None
        return self.md

    @property
    def compact(self):
        return not self.fan.facet_normals

    def qh(self):
        if self._qh is None:
            self._qh = presentations.quantum_cohomology(self.md)
        return self._qh


# ---------------------------------------------------------------------------
# subcommands

def _presentation(p, with_generators=True):
    out = {
        "variables": list(p.ring.names),
        "order": p.ring.order.tag,
        "groebner_basis": plain(p.gb),
        "quotient_basis": p.basis.render(),
        "dim": p.dim,
    }
    if with_generators:
        out["generators"] = [{"tag": g.describe(), "poly": str(g.poly)} for g in p.generators]
    if p.basis.finite and p.label in ("classical", "quantum", "symplectic"):
        out["graded_dims"] = plain(p.graded_dims)
    if p.eliminated:
        out["eliminated"] = [p.ring.names[i] for i in p.eliminated]
        out["reduced"] = plain(p.reduced_gb)
    return out


def _geometry(g):
    out = {"kind": g.kind, "compact": g.compact}
    if g.t is not None:
        out["t"] = plain(g.t)
    if g.xi is not None:
        out["xi"] = plain(list(g.xi))
    return out


def cmd_validate(ctx, args):
    rep = polyhedral.validate_fan(ctx.fan)
    return {"smooth": rep.smooth, "support_convex": rep.support_convex,
            "support_full_dim": rep.support_full_dim, "complete": rep.complete,
            "semiprojective_candidate": rep.semiprojective_candidate,
            "rays": ctx.fan.nrays, "max_cones": len(ctx.fan.max_cones)}


def cmd_classify(ctx, args):
    return {"geometry": _geometry(presentations.classify_geometry(ctx.md)),
            "lambda": list(ctx.md.lam)}


def cmd_cohomology(ctx, args):
    pres = presentations.classical_cohomology(ctx.fan)
    return {"classical": _presentation(pres),
            "primitive_subsets": [list(s) for s in polyhedral.primitive_subsets(ctx.fan)]}


def _quantum_or_classical(ctx):
    geom = presentations.classify_geometry(ctx.md)
    if geom.kind == presentations.OTHER:
        ctx.warnings.append("input is neither monotone Fano nor Calabi-Yau; the quantum "
                            "corrections are not determined combinatorially, showing classical "
                            "cohomology only")
        return None
    return ctx.qh()


def cmd_quantum(ctx, args):
    if ctx.compact:
        ctx.warnings.append("compact fan: quantum cohomology of a closed toric manifold")
    qh = _quantum_or_classical(ctx)
    if qh is None:
        return {"classical": _presentation(presentations.classical_cohomology(ctx.fan))}
    return {"quantum": _presentation(qh),
            "geometry": _geometry(qh.extras["geometry"])}


def cmd_symplectic(ctx, args):
    v = parse_vector(args.v, "--v")
    if ctx.compact and args.force_compact:
        ctx.warnings.append("compact fan forced: reporting eigenspace data only")
    res = presentations.symplectic_cohomology(ctx.md, v, ctx.qh(), force_compact=args.force_compact)
    out = {"v": list(v), "dim": res.dim, "route_agreement": res.route_agreement,
           "dim_eigenspace_route": res.dim_route_a, "dim_localisation_route": res.dim_route_b,
           "eigenspace_dim": res.eigenspace_dim, "quantum_dim": ctx.qh().dim}
    if not (ctx.compact and args.force_compact):
        out["presentation"] = _presentation(res.presentation, with_generators=False)
    return out


def cmd_jacobian(ctx, args):
    res = presentations.jacobian_ring(ctx.md)
    return {"superpotential": res.render_superpotential(), "dim": res.dim,
            "presentation": _presentation(res.presentation)}


def cmd_equivariant(ctx, args):
    v = parse_vector(args.v, "--v")
    eq = presentations.equivariant_quantum(ctx.md, v, ctx.qh())
    es = presentations.equivariant_symplectic(ctx.md, v, eq, ctx.qh())
    return {
        "v": list(v),
        "quantum": {"presentation": _presentation(eq), "rank_over_ku": eq.extras["rank_over_ku"],
                    "u_zero_matches_quantum": eq.extras["u_specialisation_matches"],
                    "u_zero": plain(eq.extras["u_specialisation"])},
        "symplectic": {"dim": es.dim, "rank_over_ku": es.rank_over_ku,
                       "u_expressible_in_x": es.u_in_x, "jacobian_dim": es.jacobian_dim},
    }


def cmd_fixed_loci(ctx, args):
    v = parse_vector(args.v, "--v")
    comps = polyhedral.fixed_locus(ctx.fan, v, ctx.md_or_none())
    return {"v": list(v), "membership": polyhedral.support_membership(ctx.fan, v).value,
            "components": [{"cone": list(c.cone), "orbit_dim": c.orbit_dim,
                            "compact": c.compact, "minimal": c.minimal} for c in comps]}


def cmd_core(ctx, args):
    cones = polyhedral.core(ctx.fan)
    return {"interior_cones": [list(c) for c in cones],
            "components": [list(c) for c in polyhedral.core_components(ctx.fan)],
            "compact_divisors": polyhedral.compact_divisors(ctx.fan)}


def cmd_morse_bott(ctx, args):
    v = parse_vector(args.v, "--v")
    data = polyhedral.morse_bott_data(ctx.md, v)
    return {"v": list(v), "points": [{"vertex": plain(list(p.vertex)), "cone": list(p.cone),
                                      "weights": plain(list(p.weights)), "index": p.index}
                                     for p in data.points],
            "poincare": data.poincare_string(), "betti": plain(data.poincare)}


def cmd_rotation(ctx, args):
    v = parse_vector(args.v, "--v")
    qh = ctx.qh()
    rc = floer.rotation_class(ctx.md, v, qh)
    return {"v": list(v), "cone": list(rc.cone), "monomial": rc.monomial_text(qh.ring),
            "normal_form": str(rc.normal_form), "min_H": plain(rc.min_H),
            "normalized": str(rc.normalized)}


def cmd_a_function(ctx, args):
    vs = parse_vectors(args.vs, "--vs")
    return {"vs": [list(v) for v in vs], "a": plain(floer.a_function(ctx.md, vs))}


def cmd_rescale(ctx, args):
    v = parse_vector(args.v, "--v")
    if args.vp is None:
        raise BadParams("--vp is required")
    vp = parse_vector(args.vp, "--vp")
    if args.weights:
        ws = polyhedral.WeightSystem(tuple(parse_vectors(args.weights, "--weights")))
    elif ctx is not None:
        ws = polyhedral.dual_cone_hilbert_basis(ctx.fan)
    else:
        raise BadParams("give --weights or a fan")
    k = floer.rescaling_constant(ws, v, vp)
    out = {"v": list(v), "vp": list(vp), "k": plain(k), "weights": [list(w) for w in ws],
           "weight_source": ws.source}
    try:
        L, p = polyhedral.psi_map_exponents(ws, v)
        out["psi_exponents"] = {"lcm": L, "p": p}
    except SemitoricError:
        pass
    return out


def cmd_filtration(ctx, args):
    v = parse_vector(args.v, "--v")
    qh = ctx.qh()
    if ctx.compact and not args.force_compact:
        ctx.warnings.append("compact fan: the eigenspace is computed without an SH interpretation")
    fc = floer.integer_filtration(ctx.md, v, qh)
    out = {"v": list(v), "quantum_dim": fc.quotient_dim, "E_dim": fc.E.dim, "n_v": fc.n_v,
           "sh_dim": fc.sh_dim,
           "image_labeling": {"description": "Fil^p = Q^p E", "dims": list(fc.dims)},
           "kernel_labeling": {"description": "Fil^p = ker Q^p", "dims": list(fc.kernel_dims)}}
    if args.vp is not None:
        vp = parse_vector(args.vp, "--vp")
        ws = polyhedral.dual_cone_hilbert_basis(ctx.fan)
        k = floer.rescaling_constant(ws, v, vp)
        p = 1 if args.p is None else args.p
        pp = floer.period_for(ws, v, vp, p) if args.pp is None else args.pp
        chains = {}
        out["inclusion"] = {
            "vp": list(vp), "k": plain(k), "p": p, "pp": pp,
            "image": floer.filtration_inclusion(ctx.md, v, vp, p, pp, qh, "image", chains),
            "kernel": floer.filtration_inclusion(ctx.md, v, vp, p, pp, qh, "kernel", chains),
        }
    return out


def cmd_hilbert_basis(ctx, args):
    ws = polyhedral.dual_cone_hilbert_basis(ctx.fan)
    return {"weights": [list(w) for w in ws], "count": len(ws)}


HANDLERS = {
    "validate": cmd_validate, "classify": cmd_classify, "cohomology": cmd_cohomology,
    "quantum": cmd_quantum, "symplectic": cmd_symplectic, "jacobian": cmd_jacobian,
    "equivariant": cmd_equivariant, "fixed-loci": cmd_fixed_loci, "core": cmd_core,
    "morse-bott": cmd_morse_bott, "rotation": cmd_rotation, "a-function": cmd_a_function,
    "rescale": cmd_rescale, "filtration": cmd_filtration, "hilbert-basis": cmd_hilbert_basis,
}


def run(argv):
    """Execute one command; returns ``(status, stdout_text, stderr_text)``."""
    argv = list(argv)
    try:
        if not argv or argv[0] not in COMMANDS:
            raise UnknownCommand(
                f"unknown command {argv[0] if argv else '(none)'!r}; "
                f"expected one of {', '.join(COMMANDS)}")
        command = argv[0]
        parser = build_parser(command)
        try:
            args = parser.parse_args(argv[1:])
        except SystemExit as exc:  # --help
            return int(exc.code or 0), "", ""
        if command == "examples":
            if not args.name:
                return 0, "\n".join(NAMES) + "\n", ""
            md = generate_example(args.name, args.k, args.m)
            return 0, render_fan_document(document_from_moment(md)), ""
        ctx = None
        if command != "rescale" or args.fan or args.example:
            ctx = Context(load_document(args))
        results = HANDLERS[command](ctx, args)
        report = {"command": command, "results": plain(results),
                  "warnings": ctx.warnings if ctx else []}
        if ctx is not None:
            report["input"] = ctx.fan.name or (args.fan or args.example)
        return 0, render_report(report, args.json), ""
    except SemitoricError as exc:
        return exc.exit_status, "", f"error: {exc.name}: {exc}\n"


def main(argv=None):
    status, out, err = run(sys.argv[1:] if argv is None else argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
