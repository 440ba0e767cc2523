"""Command-line entry point.

Exit codes: 0 success, 2 verification failure, 3 budget exceeded, 4 bad input.
Errors are written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib.metadata import PackageNotFoundError, version

from . import bounds, constructions, geometry, golden, inequalities, pagoda, profile
from .cochain import CochainError, coboundary, fill_by_min_link, is_coboundary
from .io import cochain_from_json, cochain_to_json, dumps
from .minimality import is_minimal, necessary_conditions

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INPUT = 0, 2, 3, 4


class VerificationFailed(Exception):
    def __init__(self, text: str):
        super().__init__("verification failed")
        self.text = text


def _version() -> str:
    try:
        return version("cofilling")
    except PackageNotFoundError:
        return "unknown"


def _read_json(path: str | None, inputs: dict) -> dict:
    if path in (None, "-"):
        raw = sys.stdin.read()
        name = "<stdin>"
    else:
        with open(path, encoding="utf-8") as fh:
            raw = fh.read()
        name = path
    inputs[name] = hashlib.sha256(raw.encode()).hexdigest()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CochainError(f"{name}: invalid JSON ({exc})") from None


def _read_cochain(args, inputs):
    return cochain_from_json(_read_json(args.file, inputs))


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _js(obj) -> str:
    return dumps(obj)


# ---------------------------------------------------------------------------
# handlers: each returns the text to print, or raises


def cmd_coboundary(args, inputs) -> str:
    return _js(cochain_to_json(coboundary(_read_cochain(args, inputs))))


def cmd_minimal(args, inputs) -> str:
    e = _read_cochain(args, inputs)
    if args.necessary:
        return _js(necessary_conditions(e))
    return _js(is_minimal(e, args.max_rank))


def cmd_fill(args, inputs) -> str:
    f = _read_cochain(args, inputs)
    if not is_coboundary(f):
        raise CochainError("input is not a coboundary")
    e = fill_by_min_link(f)
    return _js({"filling": cochain_to_json(e), "E_size": len(e), "F_size": len(f),
                "norm_E": e.norm(), "norm_F": f.norm()})


def cmd_profile(args, inputs) -> str:
    try:
        recs = profile.profile_exact(args.n, args.d, args.budget)
    except profile.BudgetExceeded as exc:
        sys.stdout.write(profile.records_to_csv(exc.records))
        raise
    if args.envelope:
        recs = profile.lower_envelope(recs)
    return profile.records_to_csv(recs).rstrip("\n")


def cmd_bounds_curve(args, inputs) -> str:
    b = bounds.parse_bound(args.bound, level=args.d)
    rows = ["alpha,value"] + [f"{a:.12g},{v:.12g}" for a, v in bounds.bound_curve(b, args.points)]
    return "\n".join(rows)


def cmd_bounds_nested(args, inputs) -> str:
    res = bounds.nested_gromov(args.d, args.phi.split(","))
    if args.trace:
        return _js({"value": res.value, "trace": res.trace})
    return f"{float(res.value):.12g}"


def cmd_bounds_crossover(args, inputs) -> str:
    return f"{bounds.kms_thm5_crossover():.12g}"


def cmd_construct(args, inputs) -> str:
    name = args.name
    if name == "multipartite":
        ex = constructions.multipartite_example(args.n, args.d, _ints(args.parts))
        return _js({"E": ex.E, "F": ex.F, "E_size": len(ex.E), "F_size": len(ex.F),
                    "counts_match": ex.counts_match(), "max_part": constructions.max_part_argument(ex),
                    "provenance": ex.provenance})
    if name == "edge-cut":
        s, cut = constructions.edge_cut_example(args.n, args.s)
        return _js({"S": s, "cut": cut, "density": constructions.edge_cut_density(args.n, args.s)})
    if name == "bipartite":
        e, m = constructions.nonminimal_bipartite_example(args.n, args.a)
        return _js({"E": e, "delta_size": m, "minimality": is_minimal(e)})
    if name == "normal-form":
        return _js(constructions.lemma8_normal_form(args.n, args.m))
    if name == "quadripartite":
        return _js(pagoda.quadripartite_pagoda(args.n))
    if name == "fig1":
        P, probes = geometry.fig1_config()
        return _js({"config": P.to_json(),
                    "probes": {k: [[c.numerator, c.denominator] for c in v] for k, v in probes.items()}})
    raise CochainError(f"unknown construction {name!r}")


def _certificate_out(cert, ok: bool) -> str:
    text = _js(cert)
    if not ok:
        raise VerificationFailed(text)
    return text


def cmd_certify(args, inputs) -> str:
    kind = args.kind
    if kind == "pie":
        p = inequalities.pie_decompose(_read_cochain(args, inputs))
        return _certificate_out(p, p.identity_holds())
    if kind == "lemma8":
        if args.extremal is not None:
            rep = inequalities.lemma8_extremal(args.extremal)
            return _certificate_out(rep, rep["attains"])
        rep = inequalities.lobo2_check(_read_cochain(args, inputs))
        return _certificate_out(rep, rep.holds)
    if kind == "highdeg":
        cert = inequalities.highdeg_certificate(_read_cochain(args, inputs), Fraction(args.beta))
        return _certificate_out(cert, cert.holds)
    if kind == "low3":
        tau = Fraction(args.tau) if args.tau is not None else None
        cert = inequalities.low3_certificate(_read_cochain(args, inputs), tau)
        return _certificate_out(cert, cert.holds)
    if kind == "thm5-audit":
        return _js(inequalities.thm5_audit(args.n))
    raise CochainError(f"unknown certificate {kind!r}")


def _search_one(job):
    n, budget, seed = job
    return pagoda.pagoda_search(n, budget, seed)


def cmd_pagoda(args, inputs) -> str:
    action = args.action
    if action == "verify":
        obj = _read_json(args.file, inputs)
        # accept the wrapped output of the quadripartite action too
        p = pagoda.Pagoda.from_json(obj.get("pagoda", obj))
        rep = pagoda.verify_pagoda(p, Fraction(args.eps))
        return _certificate_out(rep, rep.passes)
    if action == "quadripartite":
        p = pagoda.quadripartite_pagoda(args.n)
        return _js({"pagoda": p, "report": pagoda.verify_pagoda(p, 0)})
    if action == "prop9":
        eps0, c3 = pagoda.solve_c3_lower()
        out = {"eps0": eps0, "c3_bound": c3}
        if args.eps0 is not None:
            out["chain"] = pagoda.prop9_chain(args.eps0)
        return _js(out)
    if action == "search":
        jobs = [(args.n, args.budget, args.seed + k) for k in range(args.seeds)]
        if args.threads > 1 and len(jobs) > 1:
            with ProcessPoolExecutor(max_workers=args.threads) as ex:
                results = list(ex.map(_search_one, jobs))
        else:
            results = [_search_one(j) for j in jobs]
        best = min(results, key=lambda r: (len(r.pagoda.G), r.seed))
        out = best.to_json()
        out["seeds"] = [r.seed for r in results]
        out["top_sizes"] = [len(r.pagoda.G) for r in results]
        return _js(out)
    raise CochainError(f"unknown pagoda action {action!r}")


def cmd_depth(args, inputs) -> str:
    if args.fig1:
        P, _ = geometry.fig1_config()
    else:
        P = geometry.PointConfig.from_json(_read_json(args.file, inputs))
    rep = geometry.max_depth(P)
    return _certificate_out(rep, rep.two_path_agree)


def cmd_verify_all(args, inputs) -> str:
    ok, checks, secs = golden.verify_all(args.tolerance)
    lines = [c.line() for c in checks] + [f"{'PASS' if ok else 'FAIL'} all ({secs:.3f} s)"]
    text = "\n".join(lines)
    if not ok:
        raise VerificationFailed(text)
    return text


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _error("usage", message)
        self.exit(EXIT_INPUT)


GLOBAL_DEFAULTS = {
    "threads": 1, "seed": 0, "budget": None, "tolerance": golden.DEFAULT_TOLERANCE, "manifest": None,
}


def _global_flags(p: argparse.ArgumentParser, defaults) -> None:
    def dflt(key):
        return argparse.SUPPRESS if defaults is None else defaults[key]

    p.add_argument("--threads", type=int, default=dflt("threads"),
                   help="worker processes for parallel searches (default 1)")
    p.add_argument("--seed", type=int, default=dflt("seed"), help="base RNG seed (default 0)")
    p.add_argument("--budget", type=int, default=dflt("budget"),
                   help="enumeration budget (default 2^22) or search moves (default 2000)")
    p.add_argument("--tolerance", type=float, default=dflt("tolerance"),
                   help="golden-constant tolerance (default 1e-6)")
    p.add_argument("--manifest", default=dflt("manifest"), help="write a run manifest JSON here")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cofilling", description="Cofilling profiles of the simplex.")
    _global_flags(ap, GLOBAL_DEFAULTS)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, None)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    def with_file(p):
        p.add_argument("file", nargs="?", help="JSON input (default stdin)")
        return p

    with_file(sub.add_parser("coboundary", help="coboundary of a cochain")).set_defaults(func=cmd_coboundary)

    p = with_file(sub.add_parser("minimal", help="minimality verdict"))
    p.add_argument("--max-rank", type=int, default=28)
    p.add_argument("--necessary", action="store_true", help="necessary conditions only")
    p.set_defaults(func=cmd_minimal)

    with_file(sub.add_parser("fill", help="fill a coboundary by a minimum-degree link")).set_defaults(func=cmd_fill)

    p = sub.add_parser("profile", help="exact profile as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--envelope", action="store_true", help="report the lower envelope over sizes >= |E|")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("bounds", help="bound curves and the nested bound")
    bsub = p.add_subparsers(dest="action", required=True, parser_class=_Parser)
    q = bsub.add_parser("curve", parents=[common])
    q.add_argument("--bound", required=True, help="e.g. thm5, kms, thm6:C=20, upper_prop7:d=3")
    q.add_argument("--d", type=int, default=None)
    q.add_argument("--points", type=int, default=101)
    q.set_defaults(func=cmd_bounds_curve)
    q = bsub.add_parser("nested", parents=[common])
    q.add_argument("--d", type=int, required=True)
    q.add_argument("--phi", required=True, help="comma list, one bound per level")
    q.add_argument("--trace", action="store_true")
    q.set_defaults(func=cmd_bounds_nested)
    bsub.add_parser("crossover", parents=[common]).set_defaults(func=cmd_bounds_crossover)

    p = sub.add_parser("construct", help="named examples")
    p.add_argument("name", choices=["multipartite", "edge-cut", "bipartite", "normal-form", "quadripartite", "fig1"])
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--parts", default="2,2,2")
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="counting-argument certificates")
    p.add_argument("kind", choices=["pie", "lemma8", "highdeg", "low3", "thm5-audit"])
    with_file(p)
    p.add_argument("--beta", default="1/4")
    p.add_argument("--tau", default=None)
    p.add_argument("--extremal", type=int, default=None, help="lemma8: check the extremal form at this even n")
    p.add_argument("--n", type=int, default=7)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("pagoda", help="pagoda tools")
    p.add_argument("action", choices=["verify", "quadripartite", "prop9", "search"])
    with_file(p)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--eps", default="0")
    p.add_argument("--eps0", type=float, default=None)
    p.add_argument("--seeds", type=int, default=1)
    p.set_defaults(func=cmd_pagoda)

    p = with_file(sub.add_parser("depth", help="maximum depth of a planar point configuration"))
    p.add_argument("--fig1", action="store_true", help="use the built-in five-point realization")
    p.set_defaults(func=cmd_depth)

    sub.add_parser("verify-all", help="golden-constant suite").set_defaults(func=cmd_verify_all)
    return ap


def _error(kind: str, exc: BaseException) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": str(exc)}) + "\n")


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.budget is None:
        args.budget = 2000 if args.command == "pagoda" else profile.DEFAULT_BUDGET
    inputs: dict[str, str] = {}
    t0 = time.perf_counter()
    text, code = "", EXIT_OK
    try:
        text = args.func(args, inputs)
    except VerificationFailed as exc:
        text, code = exc.text, EXIT_FAIL
        _error("verification_failed", exc)
    except profile.BudgetExceeded as exc:
        code = EXIT_BUDGET
        _error("budget_exceeded", exc)
    except (CochainError, ValueError, KeyError, OSError) as exc:
        code = EXIT_INPUT
        _error(type(exc).__name__, exc)
    if text:
        sys.stdout.write(text + "\n")
    if args.manifest:
        params = {k: v for k, v in vars(args).items() if k not in ("func", "manifest")}
        manifest = {
            "command": args.command, "parameters": params, "seed": args.seed,
            "version": _version(), "inputs": inputs,
            "output_sha256": hashlib.sha256(text.encode()).hexdigest(),
            "exit_code": code, "wall_time": time.perf_counter() - t0,
        }
        with open(args.manifest, "w", encoding="utf-8") as fh:
            fh.write(dumps(manifest, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
