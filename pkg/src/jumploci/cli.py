"""Command-line entry point.

Every invocation prints one JSON document with ``verb``, ``input`` and
``result`` (and ``seed`` for randomized verbs).  Exit status is 0 on success,
1 on domain errors and 2 on input errors.  The arrangement argument is a path
to an ``.arr`` file or ``gallery:<name>`` for a built-in fixture.
"""
import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .arrangement import C1, C2, OTHER, classify, intersection_lattice, parse_arrangement, tutte_polynomial
from .charvar import (
    admissible_witness, char_components, exp_residues, local_system_h1,
    parse_local_system, to_projective,
)
from .errors import DomainError, InputError
from .gallery import gallery
from .osalg import aomoto_h1_dim, make_chart, parse_one_form
from .resonance import enumerate_components, in_union, resolve_h0, verify_oracle

VERBS = ("lattice", "classify", "tutte", "resonance", "charvar", "h1", "verify", "gallery")


class CommandFailed(DomainError):
    pass


def _frac(v):
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def _read_text(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def load_arrangement(source):
    if source.startswith("gallery:"):
        return gallery(source[len("gallery:"):])
    return parse_arrangement(_read_text(source))


def default_infinity(arr, info):
    """Cover line of highest index for C2, the cover line for C1, else the last line."""
    if info.tag == C2:
        return max(i for c in info.covers for i in c)
    if info.tag == C1:
        return info.h0
    return len(arr) - 1


def _chart(arr, args, info):
    hinf = args.infinity if args.infinity is not None else default_infinity(arr, info)
    return make_chart(arr, arr.check_index(hinf))


def _flat_json(f):
    return {"point": list(f.point.coords), "lines": list(f.incident), "multiplicity": f.multiplicity}


def cmd_lattice(arr, args):
    lat = intersection_lattice(arr)
    return {"lines": len(arr), "flats": [_flat_json(f) for f in lat]}


def cmd_classify(arr, args):
    info = classify(arr)
    out = {"tag": info.tag, "high_points": [_flat_json(f) for f in info.high_points],
           "covers": [list(c) for c in info.covers]}
    if info.h0 is not None:
        out["h0"] = info.h0
    if info.hinf is not None:
        out["hinf"] = info.hinf
    if info.tag == OTHER and info.nearest_cover is not None:
        out["nearest_cover"] = list(info.nearest_cover)
    return out


def cmd_tutte(arr, args):
    t = tutte_polynomial(arr)
    return {
        "polynomial": str(t),
        "coefficients": [[i, j, c] for (i, j), c in sorted(t.coeffs.items())],
        "T(1,1)": t(1, 1),
        "T(2,2)": t(2, 2),
    }


def cmd_resonance(arr, args):
    info = classify(arr)
    chart = _chart(arr, args, info)
    out = {"hinf": chart.hinf, "method": args.method}
    alpha = None
    if args.weights:
        alpha = parse_one_form(_read_text(args.weights), chart)
    if args.method == "oracle":
        if alpha is None:
            raise InputError("--method oracle needs --weights")
    else:
        h0 = resolve_h0(arr, chart, args.h0, info)
        comps = enumerate_components(arr, chart, h0)
        out["h0"] = h0
        out["components"] = [c.to_json() for c in comps]
        out["dimensions"] = [c.dimension for c in comps]
    if alpha is not None:
        dim = aomoto_h1_dim(chart, alpha)
        out["weights"] = [_frac(v) for v in alpha]
        out["h1_dim"] = dim
        out["resonant"] = dim >= 1
        if args.method != "oracle":
            out["in_components"] = in_union(comps, alpha) or not any(alpha)
    if args.method == "both":
        agree = True
        if alpha is not None:
            agree = out["in_components"] == out["resonant"]
        report = verify_oracle(arr, chart, args.samples, args.seed, h0)
        out["verification"] = report.to_json()
        out["agree"] = agree and report.ok
        if not out["agree"]:
            raise CommandFailed("formula and oracle disagree", out)
    return out


def cmd_charvar(arr, args):
    info = classify(arr)
    chart = _chart(arr, args, info)
    comps = char_components(arr, chart, args.h0)
    out = {"hinf": chart.hinf, "components": [c.to_json() for c in comps],
           "dimensions": [c.dimension for c in comps]}
    if args.local_system:
        system = parse_local_system(_read_text(args.local_system), arr)
        out["local_system"] = [_frac(v) for v in system.classes]
        out["member_of"] = [i for i, c in enumerate(comps) if c.contains(system)]
    if args.weights:
        alpha = parse_one_form(_read_text(args.weights), chart)
        system = exp_residues(to_projective(chart, alpha))
        out["exp_weights"] = [_frac(v) for v in system.classes]
        out["exp_member_of"] = [i for i, c in enumerate(comps) if c.contains(system)]
    return out


def cmd_h1(arr, args):
    if not args.local_system:
        raise InputError("h1 needs --local-system")
    info = classify(arr)
    chart = _chart(arr, args, info)
    system = parse_local_system(_read_text(args.local_system), arr)
    report = admissible_witness(arr, system)
    return {
        "hinf": chart.hinf,
        "local_system": [_frac(v) for v in system.classes],
        "witness": [_frac(v) for v in report.witness.a],
        "pencil_sums": [
            {"point": list(p.coords), "sum": _frac(s)} for p, s in report.pencil_sums.items()
        ],
        "h1_dim": local_system_h1(arr, chart, system),
    }


def cmd_verify(arr, args):
    info = classify(arr)
    chart = _chart(arr, args, info)
    report = verify_oracle(arr, chart, args.samples, args.seed, args.h0)
    out = {"hinf": chart.hinf, **report.to_json()}
    if not report.ok:
        raise CommandFailed("verification failed", out)
    return out


def cmd_gallery(arr, args):
    return {"name": args.arrangement, "lines": [list(t) for t in arr.triples()],
            "arr": arr.to_text(), "class": classify(arr).tag}


COMMANDS = {
    "lattice": cmd_lattice,
    "classify": cmd_classify,
    "tutte": cmd_tutte,
    "resonance": cmd_resonance,
    "charvar": cmd_charvar,
    "h1": cmd_h1,
    "verify": cmd_verify,
    "gallery": cmd_gallery,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="jumploci",
        description="Intersection lattices, resonance and characteristic varieties of line arrangements.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in VERBS:
        p = sub.add_parser(verb)
        if verb == "gallery":
            p.add_argument("arrangement", metavar="name",
                           help="ex3, braid, parallelogram_min, other7, central(n), nodal(n)")
            continue
        p.add_argument("arrangement", help=".arr file or gallery:<name>")
        if verb in ("resonance", "charvar", "h1", "verify"):
            p.add_argument("--infinity", type=int, help="index of the line sent to infinity")
            p.add_argument("--h0", type=int, help="affine cover line H0 (C2 only)")
        if verb in ("resonance", "charvar"):
            p.add_argument("--weights", help="file with a one-form in chart coordinates")
        if verb in ("charvar", "h1"):
            p.add_argument("--local-system", dest="local_system",
                           help="file with one residue class in [0,1) per line")
        if verb in ("resonance", "verify"):
            p.add_argument("--samples", type=int, default=100)
            p.add_argument("--seed", type=int, default=0)
        if verb == "resonance":
            p.add_argument("--method", choices=("oracle", "formula", "both"), default="formula")
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    doc = {"verb": args.verb, "input": {k: v for k, v in vars(args).items() if k != "verb"}}
    if hasattr(args, "seed"):
        doc["seed"] = args.seed
    status = 0
    try:
        if args.verb == "gallery":
            arr = gallery(args.arrangement)
        else:
            arr = load_arrangement(args.arrangement)
        if getattr(args, "samples", 1) < 1:
            raise InputError("--samples must be >= 1")
        doc["result"] = COMMANDS[args.verb](arr, args)
    except CommandFailed as exc:
        doc["result"] = exc.args[1]
        doc["error"] = {"type": "CommandFailed", "message": exc.args[0]}
        status = 1
    except DomainError as exc:
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        status = 1
    except InputError as exc:
        doc["error"] = {"type": type(exc).__name__, "message": str(exc)}
        status = 2
    if status:
        print(f"jumploci {args.verb}: {doc['error']['type']}: {doc['error']['message']}", file=stderr)
    json.dump(doc, stdout, indent=2)
    stdout.write("\n")
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
