"""Command-line surface: machine-readable JSON reports on stdout.

Exit codes: 0 = all verdicts pass (or the query answer is affirmative),
1 = negative verdict, 2 = input or validation error.  Reports are
deterministic except for the `timings` field.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from typing import Optional

from . import catalog as catalog_mod
from .core import FiniteAlgebra, classify, derived_laws, homomorphisms, validate
from .documents import export_dot, load, save
from .duality import canonical_iso, depth, dual_space
from .enumeration import enumerate_models
from .errors import (
    BadParams,
    BoundExceeded,
    HypothesesNotMet,
    MalformedTable,
    NotASubalgebra,
    NotBrouwerian,
    ParseError,
    UnknownName,
    ValidationError,
    WrongSignature,
)
from .filters import all_deductive_filters, is_prime_filter
from .reflection import reflect
from .varieties import (
    VarietySpec,
    decide_es,
    hypotheses_gate,
    is_epic_subalgebra,
    refute_epic,
)

_CATALOG_URI = re.compile(r"^catalog:([a-z_0-9]+)(?:\((\d+)\))?$")


def _resolve(token: str) -> FiniteAlgebra:
    """A `catalog:` URI or a document path."""
    m = _CATALOG_URI.match(token)
    if m:
        name, arg = m.group(1), m.group(2)
        params = () if arg is None else (int(arg),)
        return catalog_mod.builtin(name, *params)
    with open(token, "r", encoding="utf-8") as fh:
        return load(fh.read())


def _resolve_sub(algebra: FiniteAlgebra, token: str) -> frozenset[int]:
    """Comma-separated element indices, or an algebra to embed."""
    if re.fullmatch(r"\d+(,\d+)*", token):
        return frozenset(int(x) for x in token.split(","))
    sub = _resolve(token)
    embeddings = homomorphisms(sub, algebra, injective=True)
    if not embeddings:
        raise NotASubalgebra(f"{token} does not embed into the main algebra")
    return embeddings[0].image()


def _algebra_summary(algebra: FiniteAlgebra) -> dict:
    return {"name": algebra.name, "size": algebra.size}


def _emit(report: dict, started: float) -> None:
    report["timings"] = {"seconds": round(time.time() - started, 6)}
    print(json.dumps(report, indent=2, sort_keys=True))


def _cmd_check(args, started) -> int:
    algebra = _resolve(args.file)
    report_v = validate(algebra)
    out = {
        "command": "check",
        "input": args.file,
        "verdicts": {"validate": report_v.ok},
        "axioms": report_v.as_dict(),
    }
    if report_v.ok:
        out["verdicts"]["derived_laws"] = derived_laws(algebra).ok
        out["classify"] = classify(algebra).as_dict()
    _emit(out, started)
    return 0 if report_v.ok else 1


def _cmd_dual(args, started) -> int:
    algebra = _resolve(args.file)
    space = dual_space(algebra, args.mode)
    primes = all_deductive_filters(algebra)
    prime_members = [
        sorted(f.members)
        for f in primes
        if is_prime_filter(algebra, f.members)
        and (args.mode == "pointed" or not f.is_improper)
    ]
    iso = canonical_iso(algebra, args.mode)
    out = {
        "command": "dual",
        "input": args.file,
        "mode": args.mode,
        "points": prime_members,
        "top": space.top,
        "verdicts": {"round_trip": iso.is_bijective},
    }
    if args.dot:
        out["dot"] = export_dot(space)
    _emit(out, started)
    return 0


def _cmd_depth(args, started) -> int:
    algebra = _resolve(args.file)
    _emit({"command": "depth", "input": args.file, "depth": depth(algebra)}, started)
    return 0


def _cmd_filters(args, started) -> int:
    algebra = _resolve(args.file)
    flts = all_deductive_filters(algebra)
    rows = []
    for f in flts:
        prime = is_prime_filter(algebra, f.members)
        if args.prime and not prime:
            continue
        rows.append(
            {"members": sorted(f.members), "prime": prime, "improper": f.is_improper}
        )
    _emit(
        {"command": "filters", "input": args.file, "count": len(rows), "filters": rows},
        started,
    )
    return 0


def _cmd_reflect(args, started) -> int:
    algebra = _resolve(args.file)
    refl = reflect(algebra)
    document = save(refl.algebra)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(document)
    _emit(
        {
            "command": "reflect",
            "input": args.file,
            "output": args.output,
            "result": _algebra_summary(refl.algebra),
        },
        started,
    )
    return 0


def _cmd_epic(args, started) -> int:
    algebra = _resolve(args.file)
    sub = _resolve_sub(algebra, args.sub)
    spec = VarietySpec(tuple(_resolve(t) for t in args.variety))
    refutation: list = []
    verdict = is_epic_subalgebra(algebra, sub, spec, refutation=refutation)
    out = {
        "command": "epic",
        "input": args.file,
        "subalgebra": sorted(sub),
        "variety": list(args.variety),
        "verdicts": {"epic": verdict},
    }
    if not verdict:
        codomain, first, second = refutation[0]
        out["witness"] = {
            "codomain": _algebra_summary(codomain),
            "first_map": list(first.mapping),
            "second_map": list(second.mapping),
        }
    _emit(out, started)
    return 0 if verdict else 1


def _cmd_refute_epic(args, started) -> int:
    algebra = _resolve(args.file)
    sub = _resolve_sub(algebra, args.sub)
    try:
        cert = refute_epic(algebra, sub)
    except HypothesesNotMet as exc:
        _emit(
            {
                "command": "refute-epic",
                "input": args.file,
                "subalgebra": sorted(sub),
                "verdicts": {"refuted": False},
                "reason": str(exc),
            },
            started,
        )
        return 1
    from .varieties import epi_analysis

    analysis = epi_analysis(algebra, sub)
    quotient_map = cert.second_map
    retraction = [
        cert.first_map.mapping[quotient_map.mapping.index(u)]
        for u in cert.target.elements
    ]
    _emit(
        {
            "command": "refute-epic",
            "input": args.file,
            "subalgebra": sorted(sub),
            "verdicts": {"refuted": True},
            "case": analysis.case,
            "first_filter": sorted(analysis.first_filter),
            "second_filter": sorted(analysis.second_filter),
            "congruence": list(analysis.congruence.blocks),
            "target": _algebra_summary(cert.target),
            "retraction": retraction,
            "first_map": list(cert.first_map.mapping),
            "second_map": list(cert.second_map.mapping),
            "witness": cert.witness,
        },
        started,
    )
    return 0


def _cmd_es_decide(args, started) -> int:
    spec = VarietySpec(tuple(_resolve(t) for t in args.variety))
    decision = decide_es(spec)
    out = {
        "command": "es-decide",
        "variety": list(args.variety),
        "spectrum": [_algebra_summary(m) for m in decision.spectrum.algebras],
        "verdicts": {"es": decision.surjective},
    }
    if decision.witness is not None:
        member, mask = decision.witness
        out["witness"] = {
            "algebra": _algebra_summary(member),
            "subalgebra": sorted(mask),
        }
    _emit(out, started)
    return 0 if decision.surjective else 1


def _cmd_gate(args, started) -> int:
    spec = VarietySpec(tuple(_resolve(t) for t in args.variety))
    report = hypotheses_gate(spec)
    _emit(
        {
            "command": "gate",
            "variety": list(args.variety),
            "verdicts": {"gate": report.passed},
            "members": [
                {
                    "name": e.name,
                    "size": e.size,
                    "depth": e.depth,
                    "negatively_generated": e.negatively_generated,
                }
                for e in report.entries
            ],
        },
        started,
    )
    return 0 if report.passed else 1


def _cmd_enumerate(args, started) -> int:
    models = enumerate_models(args.cls, args.max_size, bound=args.bound)
    counts: dict[int, int] = {}
    for m in models:
        counts[m.size] = counts.get(m.size, 0) + 1
    out = {
        "command": "enumerate",
        "class": args.cls,
        "max_size": args.max_size,
        "counts": {str(k): v for k, v in sorted(counts.items())},
        "total": len(models),
    }
    if args.dump:
        out["models"] = [json.loads(save(m)) for m in models]
    _emit(out, started)
    return 0


def _cmd_catalog(args, started) -> int:
    m = _CATALOG_URI.match(args.name)
    if m:
        name, arg = m.group(1), m.group(2)
        params = () if arg is None else (int(arg),)
    else:
        inner = re.fullmatch(r"([a-z_0-9]+)(?:\((\d+)\))?", args.name)
        if inner is None:
            raise UnknownName(f"cannot parse catalog name {args.name!r}")
        name, arg = inner.group(1), inner.group(2)
        params = () if arg is None else (int(arg),)
    sys.stdout.write(save(catalog_mod.builtin(name, *params)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="srlkit",
        description="Finite-model workbench for subidempotent residuated lattices.",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        metavar="N",
        help="upper bound on worker parallelism; the current engine is "
        "sequential, so any value >= 1 is honored",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate, derived laws, classification")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("dual", help="dual space and round-trip verdict")
    p.add_argument("file")
    p.add_argument("--mode", choices=("pointed", "proper"), default="pointed")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=_cmd_dual)

    p = sub.add_parser("depth", help="depth of the algebra (cone-based)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_depth)

    p = sub.add_parser("filters", help="deductive filter lattice")
    p.add_argument("file")
    p.add_argument("--prime", action="store_true")
    p.set_defaults(func=_cmd_filters)

    p = sub.add_parser("reflect", help="write the reflection as a document")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_reflect)

    p = sub.add_parser("epic", help="is the subalgebra epic in the variety?")
    p.add_argument("file")
    p.add_argument("--sub", required=True, help="indices i,j,... or a document to embed")
    p.add_argument("--variety", nargs="+", required=True)
    p.set_defaults(func=_cmd_epic)

    p = sub.add_parser("refute-epic", help="produce a non-epicity certificate")
    p.add_argument("file")
    p.add_argument("--sub", required=True)
    p.set_defaults(func=_cmd_refute_epic)

    p = sub.add_parser("es-decide", help="decide epimorphism surjectivity")
    p.add_argument("--variety", nargs="+", required=True)
    p.set_defaults(func=_cmd_es_decide)

    p = sub.add_parser("gate", help="hypotheses report for the main theorem")
    p.add_argument("--variety", nargs="+", required=True)
    p.set_defaults(func=_cmd_gate)

    p = sub.add_parser("enumerate", help="enumerate models up to isomorphism")
    p.add_argument("--class", dest="cls", choices=("brouwerian", "srl", "sirl"), required=True)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--bound", type=int, default=None, help="override the size guard")
    p.add_argument("--dump", action="store_true")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("catalog", help="emit a builtin algebra as a document")
    p.add_argument("name")
    p.set_defaults(func=_cmd_catalog)

    return parser


_INPUT_ERRORS = (
    ParseError,
    ValidationError,
    MalformedTable,
    UnknownName,
    BadParams,
    BoundExceeded,
    NotASubalgebra,
    NotBrouwerian,
    WrongSignature,
    FileNotFoundError,
    ValueError,
)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    started = time.time()
    try:
        return args.func(args, started)
    except _INPUT_ERRORS as exc:
        print(
            json.dumps(
                {"command": args.command, "error": str(exc), "kind": type(exc).__name__},
                indent=2,
                sort_keys=True,
            )
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
