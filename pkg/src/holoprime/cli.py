"""Command-line front end.

Exit codes: 0 when every check passes, 1 on a verification failure,
2 on bad usage or unreadable input.
"""

import argparse
import os
import sys

from .primeness import (
    NOT_PRIME,
    build_type1_symbol_complex,
    build_type2_symbol_complex,
    certify_complex,
    lambda_sampler,
    nonprime_witness_search,
    numeric_prime_certificate,
    prime_check_invariant,
    type1_stages,
    type2_stages,
    unit_covector,
)
from .serialize import FormatError, dumps, form_str, form_to_json, load_json, load_subspace

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render(args, payload, markdown):
    return dumps(payload) if args.format == "json" else markdown


def _tables(group):
    if group == "g2":
        from .g2 import g2_build_tables

        return g2_build_tables().dec
    from .spin7 import spin7_build_tables

    return spin7_build_tables().dec


def cmd_decompose(args):
    dec = _tables(args.group)
    if not 0 <= args.degree <= dec.n:
        raise UsageError(f"degree must lie in 0..{dec.n} for {args.group}")
    comps = []
    for key in dec.degree(args.degree):
        s = dec[key]
        comps.append({"label": s.label, "dim": s.dim, "basis": [form_str(f) for f in s.basis()]})
    payload = {"group": args.group, "n": dec.n, "degree": args.degree, "components": comps}
    lines = [f"## {args.group} degree {args.degree}", ""]
    for c in comps:
        lines.append(f"- {c['label']}: dimension {c['dim']}")
        lines.extend(f"    - {b}" for b in c["basis"])
    _emit(args, _render(args, payload, "\n".join(lines) + "\n"))
    return EXIT_OK


def cmd_verify(args):
    from .suites import run_suite

    reports = run_suite(args.suite, args.samples, args.seed)
    if args.paper_map:
        lines = [f"{c.name}\t{c.claim}" for r in reports for c in r.checks]
        _emit(args, "\n".join(lines) + "\n")
        return EXIT_OK
    payload = {
        "suite": args.suite,
        "seed": args.seed,
        "samples": args.samples,
        "passed": all(r.passed for r in reports),
        "reports": [r.to_dict() for r in reports],
        "artifacts": sorted(name for r in reports for name in r.artifacts),
    }
    md = "".join(r.to_markdown() + "\n" for r in reports)
    _emit(args, _render(args, payload, md))
    if args.out:
        folder = os.path.dirname(os.path.abspath(args.out))
        for r in reports:
            for name, data in r.artifacts.items():
                with open(os.path.join(folder, name), "w") as fh:
                    fh.write(dumps(data))
    return EXIT_OK if payload["passed"] else EXIT_FAIL


def _verdict_dict(v):
    d = {"status": v.status, "mode": v.mode}
    if v.transitive is not None:
        d["transitive"] = v.transitive
    if v.lam is not None:
        d["lambda"] = form_str(v.lam)
    if v.witness:
        d["witness"] = {"alpha": form_to_json(v.witness[0]), "lambda": form_to_json(v.witness[1]),
                        "alpha_text": form_str(v.witness[0]), "lambda_text": form_str(v.witness[1]),
                        "verified": v.check_witness()}
    return d


def cmd_check_prime(args):
    e = load_subspace(args.input)
    if e.dim == 0:
        raise UsageError("the input subspace is zero")
    if args.mode == "invariant":
        v = prime_check_invariant(e, unit_covector(e.n), args.transitive)
        payload = _verdict_dict(v)
        failed = v.status == NOT_PRIME
    elif args.mode == "witness":
        w = nonprime_witness_search(e, args.samples, args.seed)
        payload = {"status": NOT_PRIME if w else "evidence_only", "mode": "witness_search", "trials": args.samples}
        if w:
            payload["witness"] = {"alpha": form_to_json(w[0]), "lambda": form_to_json(w[1]),
                                  "alpha_text": form_str(w[0]), "lambda_text": form_str(w[1])}
        failed = bool(w)
    else:
        num = numeric_prime_certificate(e, restarts=max(args.samples // 20, 1), tolerance=args.tolerance,
                                        seed=args.seed)
        payload = {"status": num["status"], "mode": "numeric", "minimum": round(float(num["minimum"]), 9),
                   "below_tolerance": bool(num["below_tolerance"])}
        failed = num["below_tolerance"]
    payload.update(input=os.path.basename(args.input), dim=e.dim, n=e.n, k=e.k, seed=args.seed,
                   samples=args.samples)
    md = "\n".join(f"- {k}: {payload[k]}" for k in sorted(payload)) + "\n"
    _emit(args, _render(args, payload, md))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_check_complete_prime(args):
    e = load_subspace(args.input)
    if e.dim == 0:
        raise UsageError("the generator E is zero")
    f = load_subspace(args.f) if args.f else None
    if f is not None and (f.n != e.n or f.k + 1 != e.k):
        raise UsageError("F must live one degree below E in the same ambient space")
    stages = type2_stages(f, e) if f is not None else type1_stages(e)
    kind = "type2" if f is not None else "type1"
    if args.lambda_mode == "invariant":
        cert = certify_complex(kind, stages, e.n, 0, args.seed, args.transitive)
        payload = cert.reference.to_dict()
        payload["status"] = cert.status
        payload["failing_stages"] = [stages[i].label for i in cert.reference.failing_positions()]
        ok = cert.reference.verdict
    else:
        cert = certify_complex(kind, stages, e.n, args.samples, args.seed, transitive=False)
        payload = cert.to_dict()
        failing = []
        for lam in lambda_sampler(e.n, args.samples, args.seed):
            r = build_type1_symbol_complex(e, lam, stages) if f is None else build_type2_symbol_complex(f, e, lam, stages)
            if not r.verdict:
                failing.append({"lambda": form_str(lam), "stages": r.failing_positions()})
                break
        payload["first_failure"] = failing[0] if failing else None
        ok = cert.all_exact
    payload.update(seed=args.seed, samples=args.samples, lambda_mode=args.lambda_mode)
    md = [f"## {kind} complex", "", "| stage | dim | rank out | exact |", "|---|---|---|---|"]
    for s, ex in zip(payload["stages"], payload["exact_at"]):
        md.append(f"| {s['label']} | {s['dim']} | {s['rank_out']} | {ex} |")
    md.append("")
    md.append(f"exact: {payload['exact']}, status: {payload.get('status')}")
    _emit(args, _render(args, payload, "\n".join(md) + "\n"))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mp_search(args):
    from .mpsearch import ReplayError, mp_lower_bound_search, replay_certificate

    if args.replay:
        data = load_json(args.replay)
        try:
            log = replay_certificate(data)
        except ReplayError as exc:
            _emit(args, _render(args, {"replayed": False, "error": str(exc)}, f"replay failed: {exc}\n"))
            return EXIT_FAIL
        payload = {"replayed": True, "n": data["n"], "dimension": data["dimension"], "log": log}
        _emit(args, _render(args, payload, "\n".join(log) + f"\nreplayed: dimension {data['dimension']}\n"))
        return EXIT_OK
    if args.n is None:
        raise UsageError("mp-search needs --n or --replay")
    cert = mp_lower_bound_search(args.n, args.strategy, args.budget, args.seed)
    payload = cert.to_dict()
    md = (f"## MP({args.n})\n\ndimension {cert.dimension} (target {payload['target']})\n\n"
          + "\n".join(f"- {t['op']}" + (f" from R^{t['n_from']} with s = {t['s']}" if t["op"] == "extend" else
                                         f" on R^{t['n']}") for t in cert.trace) + "\n")
    _emit(args, _render(args, payload, md))
    return EXIT_OK if cert.dimension >= payload["target"] else EXIT_FAIL


def build_parser():
    p = argparse.ArgumentParser(prog="holoprime", description="Prime subspaces and symbol complexes of exterior algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=100)
    common.add_argument("--format", choices=("json", "markdown"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", parents=[common], help="print an invariant decomposition")
    d.add_argument("--group", choices=("g2", "spin7"), required=True)
    d.add_argument("--degree", type=int, required=True)
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=("g2", "spin7", "r5", "koszul", "all"), default="all")
    v.add_argument("--paper-map", action="store_true", help="list each check with the claim it verifies")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("check-prime", parents=[common], help="primeness of a subspace read from JSON")
    c.add_argument("input")
    c.add_argument("--mode", choices=("invariant", "witness", "numeric"), default="invariant")
    c.add_argument("--transitive", action="store_true", help="assert a transitive symmetry group")
    c.add_argument("--tolerance", type=float, default=1e-6)
    c.set_defaults(func=cmd_check_prime)

    cc = sub.add_parser("check-complete-prime", parents=[common], help="exactness of a symbol complex")
    cc.add_argument("input", help="generator E")
    cc.add_argument("--f", help="F for a type-2 complex")
    cc.add_argument("--lambda", dest="lambda_mode", choices=("invariant", "generic"), default="invariant")
    cc.add_argument("--transitive", action="store_true")
    cc.set_defaults(func=cmd_check_complete_prime)

    m = sub.add_parser("mp-search", parents=[common], help="lower bounds for MP(n) with replayable certificates")
    m.add_argument("--n", type=int)
    m.add_argument("--strategy", choices=("greedy", "randomized"), default="greedy")
    m.add_argument("--budget", type=int, default=8)
    m.add_argument("--replay", help="re-verify a certificate file")
    m.set_defaults(func=cmd_mp_search)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "samples", 1) < 0:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, FormatError, ValueError, KeyError) as exc:
        print(f"holoprime: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
