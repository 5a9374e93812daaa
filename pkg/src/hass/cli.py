"""Command-line entry point.

Exit codes: 0 success, 1 verification failure (or a coalition that is not
authorized), 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import secrets
import sys
from pathlib import Path

from . import ases, bbrpoly, counting, covvec, oracle, scheme, setsys
from .errors import BudgetExceeded, HassError, InvalidArgument, NotAuthorized
from .numth import GroupParams, gen_group_params, group_from_primes, parse_int


class UsageError(Exception):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(args, obj, text: str | None = None) -> None:
    data = text if text is not None else dumps(obj)
    if getattr(args, "output", None):
        Path(args.output).write_text(data)
        if getattr(args, "json", False):
            sys.stdout.write(data)
    else:
        sys.stdout.write(data)


def _load(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _parties(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad party list {text!r}") from exc
    if not out:
        raise UsageError("empty party list")
    return out


def _seed(args):
    if args.seed is None:
        args.seed = secrets.randbelow(2**32)
    return args.seed


def _bits(text: str) -> tuple[int, ...]:
    if any(c not in "01" for c in text):
        raise UsageError("z must be a string of 0/1 digits")
    return tuple(int(c) for c in text)


# -- subcommands ----------------------------------------------------------

def cmd_setup(args) -> int:
    if args.primes:
        gp = group_from_primes(_parties(args.primes))
        out = gp.to_json()
    else:
        seed = _seed(args)
        gp = gen_group_params(args.parties, args.prime_bits, seed)
        out = {**gp.to_json(), "seed": seed}
    _emit(args, out)
    return 0


def cmd_count(args) -> int:
    rows = counting.counting_table(args.n_max)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "N_k", "S", "S_gf", "exceeds_n_pow_1.5n"])
        for r in rows:
            w.writerow([r["n"], " ".join(map(str, r["N_k"])), r["S"], r["S_gf"],
                        r["exceeds_n_pow_1.5n"]])
        _emit(args, None, buf.getvalue())
    else:
        _emit(args, rows)
    return 0


def _poly_from_args(args) -> bbrpoly.IntersectionPolynomial:
    if getattr(args, "poly", None):
        return bbrpoly.IntersectionPolynomial.from_json(_load(args.poly))
    if args.m is None or args.n is None:
        raise UsageError("give --poly FILE or both --m and --n")
    return bbrpoly.build_polynomial(args.n, bbrpoly.ModulusSpec.of(args.m))


def cmd_poly_build(args) -> int:
    _emit(args, _poly_from_args(args).to_json())
    return 0


def cmd_poly_eval(args) -> int:
    poly = _poly_from_args(args)
    value, residues = bbrpoly.eval(poly, _bits(args.z))
    _emit(args, {"z": args.z, "value": value,
                 "residues": dict(zip(map(str, poly.modulus.prime_powers), residues))})
    return 0


def cmd_poly_verify(args) -> int:
    report = bbrpoly.verify_contract(_poly_from_args(args))
    _emit(args, report.to_json())
    return 0 if report.passed else 1


def cmd_setsys_build(args) -> int:
    ss = setsys.build_set_system(args.n, bbrpoly.ModulusSpec.of(args.m), dedupe=args.dedupe)
    report = setsys.build_report(ss, verify=args.verify)
    if args.vectors_out:
        fam = setsys.uniform_subsystem(ss) if args.uniform else ss.family
        Path(args.vectors_out).write_text(dumps(covvec.to_json(covvec.family_vectors(fam))))
    _emit(args, report)
    return 0 if report.get("pass", True) else 1


def cmd_ases_encode(args) -> int:
    gp = GroupParams.from_json(_load(args.params))
    ell = args.parties or gp.eta
    seed = _seed(args)
    inst = ases.encode(gp, ell, _parties(args.omega), seed)
    if args.emit_secret_audit:
        Path(args.emit_secret_audit).write_text(dumps({**inst.audit_json(args.run_id), "seed": seed}))
    _emit(args, {**inst.public_json(args.run_id), "seed": seed})
    return 0


def cmd_ases_hsver(args) -> int:
    q, tokens = ases.load_tokens(_load(args.tokens))
    coalition = _parties(args.coalition)
    missing = set(coalition) - set(tokens)
    if missing:
        raise UsageError(f"no tokens for parties {sorted(missing)}")
    held = {z: tokens[z] for z in coalition}
    if args.strict:
        ok, witness = ases.hsver_strict(held.values(), q), None
    else:
        ok, witness = ases.hsver_monotone(held, q)
    _emit(args, {"coalition": sorted(held), "authorized": ok,
                 "witness": list(witness) if witness else None, "strict": args.strict})
    return 0 if ok else 1


def cmd_scheme_share(args) -> int:
    access = ases.AccessStructure.from_json(_load(args.access))
    seed = _seed(args)
    if args.params:
        tok = GroupParams.from_json(_load(args.params))
    else:
        tok = gen_group_params(max(access.ell, 2), args.prime_bits, f"{seed}:token")
    if args.share_params:
        shr = GroupParams.from_json(_load(args.share_params))
    else:
        shr = gen_group_params(max(access.ell, 2), args.prime_bits, f"{seed}:share")
    k = parse_int(args.secret_hex)
    bundle = scheme.share(tok, shr, access, k, seed)
    if args.emit_secret_audit:
        Path(args.emit_secret_audit).write_text(
            dumps({**bundle.audit_json(), "secret_hex": format(k, "x"), "seed": seed}))
    _emit(args, {**bundle.to_json(), "parties": access.ell, "seed": seed})
    return 0


def cmd_scheme_recon(args) -> int:
    public = scheme.PublicBundle.from_json(_load(args.bundle))
    coalition = _parties(args.coalition)
    fn = scheme.recon_strict if args.strict else scheme.recon
    try:
        k = fn(public, coalition)
    except NotAuthorized as exc:
        _emit(args, {"coalition": sorted(set(coalition)), "authorized": False, "error": str(exc)})
        return 1
    _emit(args, {"coalition": sorted(set(coalition)), "authorized": True, "secret": format(k, "x")})
    return 0


def cmd_oracle_all(args) -> int:
    reports = oracle.run_grid(args.grid, seed=args.seed or 0)
    _emit(args, [r.to_json() for r in reports])
    return 0 if all(r.passed for r in reports) else 1


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hass", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=False):
        sp.add_argument("-o", "--output", help="write JSON here instead of stdout")
        sp.add_argument("--json", action="store_true", help="also echo JSON on stdout")
        if seed:
            sp.add_argument("--seed", type=int, help="RNG seed (generated and recorded if omitted)")
        return sp

    sp = common(sub.add_parser("setup", help="generate group parameters"), seed=True)
    sp.add_argument("--parties", type=int, default=3)
    sp.add_argument("--prime-bits", type=int, default=16)
    sp.add_argument("--primes", help="explicit comma-separated base primes (no randomness)")
    sp.set_defaults(func=cmd_setup)

    sp = common(sub.add_parser("count", help="S(n) and related counts"))
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_count)

    poly = sub.add_parser("poly", help="intersection polynomial").add_subparsers(dest="action", required=True)
    for name, fn in (("build", cmd_poly_build), ("eval", cmd_poly_eval), ("verify", cmd_poly_verify)):
        sp = common(poly.add_parser(name))
        sp.add_argument("--m", type=int)
        sp.add_argument("--n", type=int)
        sp.add_argument("--poly", help="polynomial JSON file")
        if name == "eval":
            sp.add_argument("--z", required=True, help="0/1 string, variable 0 first")
        sp.set_defaults(func=fn)

    ss = sub.add_parser("setsys", help="set systems").add_subparsers(dest="action", required=True)
    sp = common(ss.add_parser("build"))
    sp.add_argument("--m", type=int, default=6)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--dedupe", action="store_true")
    sp.add_argument("--vectors-out", help="write covering vectors JSON here")
    sp.add_argument("--uniform", action="store_true", help="export the uniform subsystem's vectors")
    sp.set_defaults(func=cmd_setsys_build)

    a = sub.add_parser("ases", help="access structure encoding").add_subparsers(dest="action", required=True)
    sp = common(a.add_parser("encode"), seed=True)
    sp.add_argument("--params", required=True)
    sp.add_argument("--omega", required=True)
    sp.add_argument("--parties", type=int, help="party count (default: eta)")
    sp.add_argument("--run-id", type=int, default=0)
    sp.add_argument("--emit-secret-audit", metavar="PATH")
    sp.set_defaults(func=cmd_ases_encode)
    sp = common(a.add_parser("hsver"))
    sp.add_argument("--tokens", required=True)
    sp.add_argument("--coalition", required=True)
    sp.add_argument("--strict", action="store_true")
    sp.set_defaults(func=cmd_ases_hsver)

    s = sub.add_parser("scheme", help="secret sharing").add_subparsers(dest="action", required=True)
    sp = common(s.add_parser("share"), seed=True)
    sp.add_argument("--access", required=True)
    sp.add_argument("--secret-hex", required=True)
    sp.add_argument("--params", help="token group (default: generated from the seed)")
    sp.add_argument("--share-params", help="share group (default: generated from the seed)")
    sp.add_argument("--prime-bits", type=int, default=12)
    sp.add_argument("--emit-secret-audit", metavar="PATH")
    sp.set_defaults(func=cmd_scheme_share)
    sp = common(s.add_parser("recon"))
    sp.add_argument("--bundle", required=True)
    sp.add_argument("--coalition", required=True)
    sp.add_argument("--strict", action="store_true")
    sp.set_defaults(func=cmd_scheme_recon)

    o = sub.add_parser("oracle", help="brute-force checks").add_subparsers(dest="action", required=True)
    sp = common(o.add_parser("all"), seed=True)
    sp.add_argument("--grid", default="default", choices=("default", "small"))
    sp.set_defaults(func=cmd_oracle_all)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidArgument, BudgetExceeded, ValueError) as exc:
        sys.stderr.write(f"hass {args.command}: {exc}\n")
        parser.print_usage(sys.stderr)
        return 2
    except HassError as exc:
        sys.stderr.write(f"hass {args.command}: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
