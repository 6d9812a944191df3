"""Command-line interface: one subcommand per library operation.

Payloads are JSON, passed inline or as @path-to-file; outputs are JSON on
stdout (deterministic: sorted keys, rationals as "p/q" strings) or, with
--output-format table, human-readable text.  Exit codes: 0 success,
2 validation error, 3 resource budget exceeded, 4 numerical-accuracy
failure.  Diagnostics go to stderr.

The default coset budget honors the LOGORBI_MAX_COSETS environment
variable; the kernel backend for `triangle` honors LOGORBI_KERNEL.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .canonical import canonical_type_system, maximality_certificate
from .coset_enum import DEFAULT_MAX_COSETS, DEFAULT_MAX_NODES, CosetTable, coset_enumerate, low_index_subgroups
from .covers import induced_signature
from .errors import LogorbiError, ValidationError
from .hypergeometric import hypergeometric_monodromy, triangle_data
from .jsonio import dumps, format_fraction, loads_document, parse_fraction
from .orbposet import (
    DEFAULT_MAX_MODELS,
    OrbifoldModel,
    RamifiedCoverData,
    enumerate_models,
    hyperbolic_prosystem_edges,
    resolve_ramification,
)
from .parahoric import LocalType, FilteredSpace, ParahoricBundleData, classify_residue, mp_grading, pdeg, pullback_pdeg, pullback_residue, pullback_type, pushout_sl2_to_psl2, residue_from_type
from .presentations import presentation, validate_word
from .signatures import Signature, canonical_degree, classify_sector, euler_char


def _load_payload(text: str):
    if text.startswith("@"):
        try:
            with open(text[1:], "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise ValidationError(f"cannot read payload file: {exc}") from None
    return loads_document(text)


def _render_rows(rows, header=None) -> str:
    rows = [tuple(str(v) for v in row) for row in rows]
    if header:
        rows.insert(0, tuple(str(v) for v in header))
    if not rows:
        return ""
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in rows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _signature_arg(payload) -> Signature:
    return Signature.from_json(payload)


# -- subcommand implementations ---------------------------------------------


def cmd_classify(args):
    sig = _signature_arg(_load_payload(args.payload))
    obj = {
        "chi": format_fraction(euler_char(sig)),
        "sector": classify_sector(sig).value,
    }
    table = _render_rows(
        [
            ("chi", obj["chi"]),
            ("degree", format_fraction(canonical_degree(sig))),
            ("sector", obj["sector"]),
        ]
    )
    return obj, table


def cmd_present(args):
    sig = _signature_arg(_load_payload(args.payload))
    pres = presentation(sig)
    obj = {
        "signature": sig.to_json(),
        "generators": list(pres.generators),
        "relators": [list(rel) for rel in pres.relators],
    }
    rows = [("generators", " ".join(pres.generators))]
    for rel in pres.relators:
        rows.append(("relator", " ".join(_word_str(rel, pres.generators))))
    return obj, _render_rows(rows)


def _word_str(word, generators):
    return [generators[g - 1] if g > 0 else generators[-g - 1] + "^-1" for g in word]


def cmd_cosets(args):
    payload = _load_payload(args.payload)
    if not isinstance(payload, dict) or "signature" not in payload:
        raise ValidationError("payload must be {'signature': ..., 'words': [[...]]}")
    sig = _signature_arg(payload["signature"])
    pres = presentation(sig)
    words = [
        validate_word(tuple(w), pres.num_generators) for w in payload.get("words", [])
    ]
    table = coset_enumerate(pres, words, max_cosets=args.max_cosets)
    obj = table.to_json()
    rows = [("index", table.index)]
    for name in table.generators:
        rows.append((name, " ".join(str(v) for v in table.perms[name])))
    return obj, _render_rows(rows)


def cmd_lowindex(args):
    payload = _load_payload(args.payload)
    if not isinstance(payload, dict) or "signature" not in payload:
        raise ValidationError("payload must be {'signature': ..., 'max_index': n}")
    sig = _signature_arg(payload["signature"])
    max_index = args.max_index if args.max_index is not None else payload.get("max_index")
    if not isinstance(max_index, int):
        raise ValidationError("max_index must be an integer (payload field or --max-index)")
    tables = low_index_subgroups(presentation(sig), max_index, max_nodes=args.max_nodes)
    obj = {"count": len(tables), "tables": [t.to_json() for t in tables]}
    rows = [(i, t.index) for i, t in enumerate(tables)]
    return obj, _render_rows(rows, header=("class", "index"))


def cmd_cover_signature(args):
    payload = _load_payload(args.payload)
    if not isinstance(payload, dict) or "signature" not in payload or "table" not in payload:
        raise ValidationError("payload must be {'signature': ..., 'table': ...}")
    sig = _signature_arg(payload["signature"])
    pres = presentation(sig)
    table = CosetTable.from_json(payload["table"], pres.generators)
    record = induced_signature(sig, table)
    obj = {"index": record.index, "signature": record.induced_sig.to_json()}
    rows = [
        ("index", record.index),
        ("genus", record.induced_sig.genus),
        ("orders", list(record.induced_sig.orders)),
        ("cusps", record.induced_sig.cusps),
    ]
    return obj, _render_rows(rows)


def cmd_mp_grading(args):
    t = LocalType.from_json(_load_payload(args.payload))
    grading = mp_grading(t)
    obj = {
        "entries": [
            {"basis": label, "grade": format_fraction(g)} for label, g in grading.entries
        ],
        "positive": list(grading.positive_part()),
    }
    rows = [(label, format_fraction(g)) for label, g in grading.entries]
    return obj, _render_rows(rows, header=("basis", "grade"))


def _bundle_from_json(payload) -> ParahoricBundleData:
    if not isinstance(payload, dict) or "degree" not in payload:
        raise ValidationError("bundle data needs 'degree' and 'points'")
    points = []
    for entry in payload.get("points", []):
        try:
            pid = entry["point"]
            weights = tuple(parse_fraction(w) for w in entry["weights"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed bundle point: {exc}") from None
        points.append((pid, FilteredSpace(weights)))
    return ParahoricBundleData(degree=payload["degree"], points=tuple(points))


def cmd_pdeg(args):
    data = _bundle_from_json(_load_payload(args.payload))
    value = pdeg(data)
    obj = {"pdeg": format_fraction(value), "rank": data.rank}
    return obj, _render_rows([("pdeg", obj["pdeg"]), ("rank", data.rank)])


def _residue_from_json(payload):
    if not isinstance(payload, dict):
        raise ValidationError("residue payload must be an object")
    try:
        lam = parse_fraction(payload["lambda"])
        t = LocalType.from_json(payload["type"])
        nil = tuple(tuple(parse_fraction(v) for v in row) for row in payload["nilpotent"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed residue payload: {exc}") from None
    rep = payload.get("rep", "standard" if t.group != "PSL2" else "adjoint")
    return residue_from_type(lam, t, nil, rep=rep)


def cmd_residue_classify(args):
    res = _residue_from_json(_load_payload(args.payload))
    flag = classify_residue(res)
    obj = {"flag": flag}
    return obj, _render_rows([("flag", flag)])


def cmd_pullback(args):
    payload = _load_payload(args.payload)
    if not isinstance(payload, dict):
        raise ValidationError("pullback payload must be an object")
    if "pdeg" in payload:
        deg_f = payload.get("deg_f")
        if not isinstance(deg_f, int):
            raise ValidationError("pullback of a degree needs integer 'deg_f'")
        value = pullback_pdeg(parse_fraction(payload["pdeg"]), deg_f)
        return {"pdeg": format_fraction(value)}, _render_rows([("pdeg", format_fraction(value))])
    e = payload.get("e")
    if not isinstance(e, int):
        raise ValidationError("pullback needs an integer ramification index 'e'")
    if "residue" in payload:
        res = pullback_residue(_residue_from_json(payload["residue"]), e)
        obj = {
            "lambda": format_fraction(res.lam),
            "weights": [format_fraction(w) for w in res.space.weights],
            "nilpotent": [[format_fraction(v) for v in row] for row in res.nilpotent],
            "flag": classify_residue(res),
        }
        return obj, _render_rows(sorted(obj.items()))
    if "type" in payload:
        t = pullback_type(LocalType.from_json(payload["type"]), e)
        return t.to_json(), _render_rows(sorted(t.to_json().items()))
    raise ValidationError("pullback payload needs 'type', 'residue', or 'pdeg'")


def cmd_pushout(args):
    t = LocalType.from_json(_load_payload(args.payload))
    pushed = pushout_sl2_to_psl2(t)
    obj = pushed.to_json()
    obj["integral"] = pushed.is_integral()
    return obj, _render_rows(sorted(obj.items()))


def cmd_canonical_type(args):
    sig = _signature_arg(_load_payload(args.payload))
    system = canonical_type_system(sig)
    certificate = maximality_certificate(sig)
    obj = {
        "signature": sig.to_json(),
        "points": [
            {
                "id": p.point_id,
                "kind": p.kind,
                "order": p.order,
                "kappa": format_fraction(p.kappa),
                "psl2_coeff": format_fraction(p.psl2.coeff),
                "sl2_half_weight": format_fraction(p.sl2_half_weight),
                "positive_mp": p.positive_mp_nonzero,
            }
            for p in system.points
        ],
        "deg_omega": format_fraction(certificate.deg_omega),
        "pardeg_theta": format_fraction(certificate.pardeg_theta),
        "rank2_pdeg": format_fraction(certificate.rank2_pdeg),
    }
    rows = [
        (
            p.point_id,
            p.kind,
            p.order if p.order is not None else "-",
            format_fraction(p.kappa),
            format_fraction(p.psl2.coeff) + " cowt",
            format_fraction(p.sl2_half_weight),
            "yes" if p.positive_mp_nonzero else "no",
        )
        for p in system.points
    ]
    table = _render_rows(
        rows,
        header=("point", "kind", "order", "kappa", "psl2 type", "half wt", "mp>0"),
    )
    table += "\n\n" + _render_rows(
        [
            ("deg omega", format_fraction(certificate.deg_omega)),
            ("pardeg theta", format_fraction(certificate.pardeg_theta)),
            ("rank-2 pdeg", format_fraction(certificate.rank2_pdeg)),
        ]
    )
    return obj, table


def _complex_pair(z: complex):
    return [z.real, z.imag]


def cmd_triangle(args):
    report = hypergeometric_monodromy(
        triangle_data(args.p, args.q, args.r),
        integ_tol=args.tol,
        backend=args.backend,
    )
    a, b, c = report.data.hyp_params
    obj = {
        "p": args.p,
        "q": args.q,
        "r": args.r,
        "params": {
            "a": format_fraction(a),
            "b": format_fraction(b),
            "c": format_fraction(c),
        },
        "exponent_differences": [
            format_fraction(d) for d in report.data.exponent_differences
        ],
        "matrices": {
            name: [[_complex_pair(v) for v in row] for row in matrix]
            for name, matrix in (("m0", report.m0), ("m1", report.m1), ("minf", report.minf))
        },
        "traces": list(report.traces),
        "oracle_traces": list(report.oracle_traces),
        "trace_defects": list(report.trace_defects),
        "relation_defects": list(report.relation_defects),
        "reality_defect": report.reality_defect,
        "tolerance": report.tolerance,
        "pass": {
            "traces": report.traces_pass,
            "relations": report.relations_pass,
            "reality": report.reality_pass,
            "all": report.all_pass,
        },
        "backend": report.backend,
        "integration_steps": report.integration_steps,
    }
    rows = [
        ("loop", "|trace|", "oracle", "defect"),
    ]
    table = _render_rows(
        [
            (name, f"{t:.12f}", f"{o:.12f}", f"{d:.3e}")
            for name, t, o, d in zip(
                ("around 0", "around 1", "around inf"),
                report.traces,
                report.oracle_traces,
                report.trace_defects,
            )
        ],
        header=rows[0],
    )
    table += "\n\n" + _render_rows(
        [
            ("relation M0^p", f"{report.relation_defects[0]:.3e}"),
            ("relation M1^q", f"{report.relation_defects[1]:.3e}"),
            ("loop relation", f"{report.relation_defects[2]:.3e}"),
            ("reality defect", f"{report.reality_defect:.3e}"),
            ("tolerance", f"{report.tolerance:.1e}"),
            ("backend", report.backend),
            ("verdict", "PASS" if report.all_pass else "FAIL"),
        ]
    )
    return obj, table


def cmd_resolve(args):
    payload = _load_payload(args.payload)
    cover = RamifiedCoverData.from_json(payload)
    multiplier = payload.get("multiplier", 1) if isinstance(payload, dict) else 1
    cusp_points = frozenset(payload.get("cusp_points", [])) if isinstance(payload, dict) else frozenset()
    resolved = resolve_ramification(cover, multiplier=multiplier, cusp_points=cusp_points)
    obj = {
        "target": dict(resolved.target.orders),
        "sources": {pid: list(orders) for pid, orders in resolved.source_orders.items()},
    }
    if resolved.source_cusps:
        obj["cusps"] = dict(resolved.source_cusps)
    rows = [
        (pid, resolved.target.order_at(pid), " ".join(map(str, orders)))
        for pid, orders in sorted(resolved.source_orders.items())
    ]
    return obj, _render_rows(rows, header=("point", "target order", "source orders"))


def cmd_orb_enumerate(args):
    payload = _load_payload(args.payload)
    if not isinstance(payload, dict) or "genus" not in payload:
        raise ValidationError(
            "payload must be {'genus': g, 'point_budget': k, 'order_budget': B}"
        )
    tagged = enumerate_models(
        payload["genus"],
        payload.get("point_budget", 0),
        payload.get("order_budget", 0),
        max_models=args.max_models,
    )
    obj = {
        "genus": payload["genus"],
        "models": [
            {"orders": dict(model.orders), "sector": sector.value}
            for model, sector in tagged
        ],
    }
    rows = [
        (" ".join(str(m) for _, m in model.orders) or "(trivial)", sector.value)
        for model, sector in tagged
    ]
    return obj, _render_rows(rows, header=("orders", "sector"))


def cmd_orb_poset(args):
    payload = _load_payload(args.payload)
    if not isinstance(payload, dict) or "genus" not in payload or "models" not in payload:
        raise ValidationError("payload must be {'genus': g, 'models': [{...orders...}]}")
    models = [
        OrbifoldModel.from_json({"genus": payload["genus"], "orders": orders})
        for orders in payload["models"]
    ]
    nodes, edges = hyperbolic_prosystem_edges(models)
    obj = {
        "nodes": [
            {
                "model": node.model.to_json(),
                "signature": node.signature.to_json(),
                "generators": list(node.pres.generators),
                "relators": [list(r) for r in node.pres.relators],
            }
            for node in nodes
        ],
        "edges": [list(edge) for edge in edges],
    }
    rows = [(i, dict(node.model.orders)) for i, node in enumerate(nodes)]
    table = _render_rows(rows, header=("node", "orders"))
    table += "\n\n" + _render_rows(
        [(f, c) for f, c in edges] or [("(no edges)", "")],
        header=("finer", "coarser"),
    )
    return obj, table


# -- parser wiring -----------------------------------------------------------

_PAYLOAD_HELP = "inline JSON or @file"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logorbi",
        description="log-orbi curve calculus: signatures, covers, parahoric types, triangle monodromy",
    )
    parser.add_argument("--version", action="version", version=f"logorbi {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, payload=True):
        p = sub.add_parser(name, help=help_text)
        if payload:
            p.add_argument("payload", help=_PAYLOAD_HELP)
        p.add_argument(
            "--output-format",
            choices=("json", "table"),
            default="json",
            help="serialization of the result (default json)",
        )
        p.set_defaults(func=func)
        return p

    add("classify", cmd_classify, "Euler characteristic and sector of a signature")
    add("present", cmd_present, "standard presentation of the orbifold group")

    p = add("cosets", cmd_cosets, "Todd-Coxeter coset enumeration")
    p.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)

    p = add("lowindex", cmd_lowindex, "conjugacy classes of low-index subgroups")
    p.add_argument("--max-index", type=int, default=None)
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)

    add("cover-signature", cmd_cover_signature, "induced signature of a coset table")
    add("mp-grading", cmd_mp_grading, "Lie algebra grading of a local type")
    add("pdeg", cmd_pdeg, "parahoric degree of bundle data")
    add("residue-classify", cmd_residue_classify, "algebraic/log/not-adjusted residue flag")
    add("pullback", cmd_pullback, "ramified pullback of types, residues, degrees")
    add("pushout", cmd_pushout, "SL2 -> PSL2 pushout of a local type")
    add("canonical-type", cmd_canonical_type, "canonical PSL2 type system of a signature")

    p = sub.add_parser("triangle", help="hypergeometric monodromy of a (p,q,r) orbifold")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    p.add_argument("r", type=int)
    p.add_argument("--tol", type=float, default=1e-10, help="accuracy target (default 1e-10)")
    p.add_argument("--backend", choices=("compiled", "python"), default=None)
    p.add_argument("--output-format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_triangle)

    add("resolve", cmd_resolve, "orbifold-etale resolution of a ramified cover")

    p = add("orb-enumerate", cmd_orb_enumerate, "enumerate orbifold models with sector tags")
    p.add_argument("--max-models", type=int, default=DEFAULT_MAX_MODELS)

    add("orb-poset", cmd_orb_poset, "refinement Hasse diagram of hyperbolic models")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        obj, table = args.func(args)
    except LogorbiError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.output_format == "table":
        print(table)
    else:
        print(dumps(obj))
    return 0


if __name__ == "__main__":
    sys.exit(main())
