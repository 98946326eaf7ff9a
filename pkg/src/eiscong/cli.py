"""Command-line front end.

Exit codes: 0 success / all checks pass; 1 a congruence fails; 2 required
data is missing; 3 the numeric envelope exceeds the requested precision;
4 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from mpmath import mpf, nstr
from mpmath import fabs as mp_abs

from . import afe, congruence, dataset, forms, lfunc, reports
from .dataset import DataMissError, Miss
from .exact import FactorizationError, factorize, rational_reconstruct, cf_expand

EXIT_OK = 0
EXIT_CONGRUENCE_FAIL = 1
EXIT_DATA_MISS = 2
EXIT_PRECISION = 3
EXIT_USAGE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_config(path):
    if path is None:
        default = Path("eiscong.toml")
        if not default.exists():
            return {}
        path = default
    try:
        import tomllib  # py311+
    except ImportError:
        import tomli as tomllib
    with open(path, "rb") as f:
        return tomllib.load(f)


def _dataset(args, config) -> dataset.Dataset:
    ds = dataset.bundled()
    paths = list(config.get("data_paths", []))
    paths += getattr(args, "data", None) or []
    if paths:
        ds = dataset.merge(ds, dataset.load(paths))
    for path, digest in ds.manifest.items():
        print(f"manifest: {path} sha256={digest[:16]}", file=sys.stderr)
    return ds


def _emit(obj, fmt: str):
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    elif fmt == "md":
        if isinstance(obj, str):
            print(obj)
        else:
            print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(obj if isinstance(obj, str) else json.dumps(obj, indent=2, sort_keys=True))


def _parse_spec(text: str, ds: dataset.Dataset) -> lfunc.LSpec:
    kind, _, rest = text.partition(":")
    argv = [a for a in rest.split(",") if a]
    if kind == "zeta":
        return lfunc.zeta_spec()
    if kind == "elliptic":
        return lfunc.elliptic_spec(int(argv[0]))
    if kind == "spinor":
        j, k = int(argv[0]), int(argv[1])
        label = f"D{j + 2 * k - 3}_{j + 1}"
        return lfunc.spinor_spec(j, k, ds.lambda_source(label))
    if kind == "triple":
        k1, k2, k3 = (int(a) for a in argv)
        return lfunc.triple_spec(k1, k2, k3)
    raise UsageError(f"unknown L-function spec {text!r}")


def _cmd_factor(args, config):
    try:
        f = factorize(int(args.n), effort=int(config.get("factor_effort", 2_000_000)))
    except FactorizationError as e:
        print(f"unfactored cofactor: {e.cofactor}")
        return EXIT_PRECISION
    note = "" if f.certified else "  (probabilistic primality above the certified range)"
    print(f"{args.n} = {f}{note}")
    return EXIT_OK


def _cmd_rationalize(args, config):
    got = rational_reconstruct(args.decimal, int(args.threshold))
    if got is None:
        print("no convincing rational reconstruction")
        return EXIT_PRECISION
    num = factorize(got.numerator) if got.numerator else "0"
    den = factorize(got.denominator)
    print(f"{got.numerator}/{got.denominator} = {num} / ({den})")
    if args.cf:
        print("continued fraction:", cf_expand(args.decimal, max_terms=14))
    return EXIT_OK


def _cmd_forms(args, config):
    if args.forms_cmd == "ap":
        print(forms.ap(args.weight, args.p))
        return EXIT_OK
    if args.forms_cmd == "expand":
        f = forms.eigenform(args.weight, args.order)
        obj = {"weight": args.weight, "order": args.order,
               "coefficients": [str(c) for c in f.coeffs]}
        _emit(obj, args.out)
        return EXIT_OK
    raise UsageError("forms needs a subcommand (ap | expand)")


def _cmd_data(args, config):
    ds = _dataset(args, config)
    if args.data_cmd == "list":
        for space in ds.spaces():
            ops = sorted({r.op for r in ds.records() if r.space == space})
            print(f"{space}: {', '.join(ops)}")
        return EXIT_OK
    if args.data_cmd == "import":
        merged = dataset.merge(ds, dataset.load(args.files))
        print(f"{len(merged)} records after merge")
        for path, digest in merged.manifest.items():
            print(f"  {path} sha256={digest[:16]}")
        return EXIT_OK
    if args.data_cmd == "show":
        rows = [r for r in ds.records() if r.space == args.space]
        if not rows:
            print(f"no records for {args.space}")
            return EXIT_DATA_MISS
        for r in rows:
            print(f"{r.op}\tn={r.n}\t{r.value}\t[{r.src}]")
        return EXIT_OK
    raise UsageError("data needs a subcommand (list | import | show)")


def _cmd_resolve(args, config):
    ds = _dataset(args, config)
    try:
        rep = congruence.run_case(args.case, ds)
    except DataMissError as e:
        print(f"data miss: {e.miss}")
        return EXIT_DATA_MISS
    if hasattr(rep, "chain"):
        for label, value in rep.chain:
            print(f"{label}: {value}")
        print(f"norm factorization: {rep.norm_factorization.marked(rep.case.modulus)}")
        print("divisible" if rep.divisible else "NOT divisible")
        return EXIT_OK if rep.divisible else EXIT_CONGRUENCE_FAIL
    for row in rep.rows:
        if args.p and row.p != args.p:
            continue
        print(
            f"p={row.p}: lhs={row.lhs} rhs={row.rhs} diff={row.difference} "
            f"= {row.factorization.marked(rep.case.modulus) if row.factorization else '0'}"
        )
    return EXIT_OK if rep.all_pass else EXIT_CONGRUENCE_FAIL


def _cmd_congruence(args, config):
    ds = _dataset(args, config)
    cases = congruence.load_cases()
    if args.case not in cases:
        raise UsageError(f"unknown case {args.case!r}; see `eiscong congruence list`")
    case = cases[args.case]
    if args.q or args.pmax:
        primes = tuple(p for p in case.primes if not args.pmax or p <= args.pmax)
        case = congruence.CongruenceCase(
            name=case.name, shape=case.shape, modulus=args.q or case.modulus,
            primes=primes, params=case.params, lhs=case.lhs, rhs=case.rhs,
        )
    try:
        if case.shape == "so43_quadratic":
            rep = congruence.check_quadratic(case, ds)
            obj = {
                "case": case.name, "modulus": case.modulus,
                "pair": str(rep.outcome.pair),
                "norm": str(rep.norm),
                "norm_factorization": rep.norm_factorization.marked(case.modulus),
                "divisible": rep.divisible,
            }
            _emit(obj if args.out == "json" else _quad_md(obj), args.out)
            return EXIT_OK if rep.divisible else EXIT_CONGRUENCE_FAIL
        rep = congruence.check(case, ds)
    except DataMissError as e:
        print(f"data miss: {e.miss}")
        return EXIT_DATA_MISS
    if args.out == "json":
        obj = {
            "case": case.name,
            "modulus": case.modulus,
            "all_pass": rep.all_pass,
            "rows": [
                {
                    "p": r.p, "lhs": str(r.lhs), "rhs": str(r.rhs),
                    "difference": str(r.difference),
                    "factorization": r.factorization.marked(case.modulus)
                    if r.factorization else "0",
                    "divisible": r.divisible,
                }
                for r in rep.rows
            ],
        }
        _emit(obj, "json")
    else:
        print(f"# {case.name} (mod {case.modulus})")
        print("| p | lhs | rhs | difference | factored | q divides |")
        print("|---|---|---|---|---|---|")
        for r in rep.rows:
            fac = r.factorization.marked(case.modulus) if r.factorization else "0"
            print(
                f"| {r.p} | {r.lhs} | {r.rhs} | {r.difference} | {fac} | "
                f"{'yes' if r.divisible else 'NO'} |"
            )
        common = rep.common_prime_factors()
        if common:
            print(f"\nprimes dividing every difference: {common}")
    return EXIT_OK if rep.all_pass else EXIT_CONGRUENCE_FAIL


def _quad_md(obj) -> str:
    return (
        f"# {obj['case']} (mod {obj['modulus']})\n"
        f"eigenvalue pair: {obj['pair']}\n"
        f"norm: {obj['norm']} = {obj['norm_factorization']}\n"
        f"divisible: {'yes' if obj['divisible'] else 'NO'}"
    )


def _cmd_congruence_list(args, config):
    for name, case in sorted(congruence.load_cases().items()):
        print(f"{name}: shape={case.shape} modulus={case.modulus} primes={list(case.primes)}")
    return EXIT_OK


def _cmd_lvalue(args, config):
    if args.lvalue_cmd == "rationalize":
        return _cmd_rationalize(args, config)
    ds = _dataset(args, config)
    spec = _parse_spec(args.spec, ds)
    digits = args.digits
    working = config.get("working_digits")
    try:
        if args.lvalue_cmd == "eval":
            r = afe.evaluate(
                spec, Fraction(args.s), digits=digits, N=args.ncoeffs, working_digits=working
            )
            obj = {
                "spec": args.spec, "s": args.s,
                "value": nstr(r.value, digits + 5),
                "envelope": nstr(r.error_envelope, 5),
                "coefficients_used": r.coefficients_used,
            }
        elif args.lvalue_cmd == "ratio":
            r = afe.ratio(spec, args.l1, args.l2, digits=digits, N=args.ncoeffs)
            obj = {
                "spec": args.spec, "l1": args.l1, "l2": args.l2,
                "value": nstr(r.value, digits + 5),
                "envelope": nstr(r.error_envelope, 5),
                "coefficients_used": r.coefficients_used,
            }
            if args.rationalize:
                dec = nstr(r.value, digits)
                rec = rational_reconstruct(dec, 10**10)
                if rec is not None and r.contains(rec):
                    obj["rational"] = f"{rec.numerator}/{rec.denominator}"
                    obj["rational_factored"] = (
                        f"{factorize(rec.numerator)} / ({factorize(rec.denominator)})"
                    )
        else:
            raise UsageError("lvalue needs a subcommand (eval | ratio)")
    except afe.PrecisionError as e:
        print(f"insufficient data for any significant digits: {e}")
        return EXIT_PRECISION
    except afe.GammaPoleError as e:
        raise UsageError(str(e))
    _emit(obj, args.out)
    envelope = mpf(obj["envelope"])
    if envelope > mpf(10) ** (-digits) * max(mp_abs(mpf(obj["value"])), mpf(1)):
        return EXIT_PRECISION
    return EXIT_OK


def _cmd_report(args, config):
    ds = _dataset(args, config)
    if args.name == "appendix_sweep":
        rep = reports.appendix_sweep(digits=args.digits or 11)
    else:
        rep = reports.run_report(args.name, ds)
    _emit(rep.to_dict() if args.out == "json" else rep.to_markdown(), args.out)
    if rep.any_miss:
        return EXIT_DATA_MISS
    return EXIT_OK if rep.all_pass else EXIT_CONGRUENCE_FAIL


def _cmd_roots(args, config):
    from .rootdata import pairing_table, parabolic_data

    pd = parabolic_data(args.series, args.rank)
    print(f"# parabolic data, series {pd.series}, rank {pd.n}")
    print(f"- removed simple root: {pd.alpha}")
    print(f"- rho_P = {pd.rho_P}, <rho_P, alpha-coroot> = {pd.pairing_value}")
    print(f"- alpha~ = {pd.alpha_tilde}")
    for layer, roots in pd.phi_N_layers.items():
        print(f"- layer {layer}: {{{', '.join(str(r) for r in roots)}}}")
    print()
    print("| root | coroot | pairing | Satake |")
    print("|---|---|---|---|")
    for root, coroot, pairing, satake in pairing_table(pd):
        print(f"| {root} | {coroot} | {pairing} | {satake} |")
    return EXIT_OK


def _cmd_seed_manifest(args, config):
    ds = dataset.bundled()
    for path, digest in ds.manifest.items():
        print(f"{path} sha256={digest}")
    print(f"{len(ds)} bundled records across {len(ds.spaces())} spaces")
    return EXIT_OK


def build_parser() -> _Parser:
    p = _Parser(prog="eiscong", description=__doc__)
    p.add_argument("--config", default=None, help="TOML config file")
    p.add_argument("--seed-manifest", action="store_true", help="print bundled-data digests")
    sub = p.add_subparsers(dest="cmd")

    f = sub.add_parser("forms", help="eigenform q-expansions")
    fs = f.add_subparsers(dest="forms_cmd")
    ap_p = fs.add_parser("ap")
    ap_p.add_argument("--weight", type=int, required=True)
    ap_p.add_argument("--p", type=int, required=True)
    ex_p = fs.add_parser("expand")
    ex_p.add_argument("--weight", type=int, required=True)
    ex_p.add_argument("--order", type=int, required=True)
    ex_p.add_argument("--out", default="json", choices=("json", "md", "plain"))

    d = sub.add_parser("data", help="Hecke-record registry")
    d.add_argument("--data", action="append", help="extra JSON-lines file")
    dsub = d.add_subparsers(dest="data_cmd")
    dsub.add_parser("list")
    imp = dsub.add_parser("import")
    imp.add_argument("files", nargs="+")
    shw = dsub.add_parser("show")
    shw.add_argument("space")

    r = sub.add_parser("resolve", help="print a trace-to-eigenvalue resolution chain")
    r.add_argument("--case", required=True)
    r.add_argument("--p", type=int, default=None)
    r.add_argument("--data", action="append")

    c = sub.add_parser("congruence", help="exact congruence verification")
    csub = c.add_subparsers(dest="congruence_cmd")
    chk = csub.add_parser("check")
    chk.add_argument("--case", required=True)
    chk.add_argument("--q", type=int, default=None)
    chk.add_argument("--pmax", type=int, default=None)
    chk.add_argument("--out", default="md", choices=("md", "json", "plain"))
    chk.add_argument("--data", action="append")
    csub.add_parser("list")

    lv = sub.add_parser("lvalue", help="numeric L-values and ratios")
    lsub = lv.add_subparsers(dest="lvalue_cmd")
    ev = lsub.add_parser("eval")
    ev.add_argument("--spec", required=True)
    ev.add_argument("--s", required=True)
    ev.add_argument("--digits", type=int, default=30)
    ev.add_argument("--ncoeffs", type=int, default=None)
    ev.add_argument("--out", default="json", choices=("json", "md", "plain"))
    ev.add_argument("--data", action="append")
    ra = lsub.add_parser("ratio")
    ra.add_argument("--spec", required=True)
    ra.add_argument("--l1", type=int, required=True)
    ra.add_argument("--l2", type=int, required=True)
    ra.add_argument("--digits", type=int, default=30)
    ra.add_argument("--ncoeffs", type=int, default=None)
    ra.add_argument("--rationalize", action="store_true")
    ra.add_argument("--out", default="json", choices=("json", "md", "plain"))
    ra.add_argument("--data", action="append")
    lrz = lsub.add_parser("rationalize")
    lrz.add_argument("--decimal", required=True)
    lrz.add_argument("--threshold", default=10**10)
    lrz.add_argument("--cf", action="store_true")

    rz = sub.add_parser("rationalize", help="continued-fraction rational reconstruction")
    rz.add_argument("--decimal", required=True)
    rz.add_argument("--threshold", default=10**10)
    rz.add_argument("--cf", action="store_true", help="also print the continued fraction")

    rt = sub.add_parser("roots", help="render parabolic root data as markdown")
    rt.add_argument("--series", required=True, choices=("B", "D"))
    rt.add_argument("--rank", type=int, required=True)

    fa = sub.add_parser("factor", help="factor an integer with certified primes")
    fa.add_argument("n")

    rp = sub.add_parser("report", help="aggregated reproduction reports")
    rp.add_argument("name", choices=("harder41", "so43_suite", "so44_suite", "appendix_sweep"))
    rp.add_argument("--out", default="md", choices=("md", "json", "plain"))
    rp.add_argument("--digits", type=int, default=None)
    rp.add_argument("--data", action="append")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _load_config(args.config)
        if args.seed_manifest:
            return _cmd_seed_manifest(args, config)
        if args.cmd == "forms":
            return _cmd_forms(args, config)
        if args.cmd == "data":
            return _cmd_data(args, config)
        if args.cmd == "resolve":
            return _cmd_resolve(args, config)
        if args.cmd == "congruence":
            if args.congruence_cmd == "list":
                return _cmd_congruence_list(args, config)
            if args.congruence_cmd == "check":
                return _cmd_congruence(args, config)
            raise UsageError("congruence needs a subcommand (check | list)")
        if args.cmd == "lvalue":
            return _cmd_lvalue(args, config)
        if args.cmd == "rationalize":
            return _cmd_rationalize(args, config)
        if args.cmd == "roots":
            return _cmd_roots(args, config)
        if args.cmd == "factor":
            return _cmd_factor(args, config)
        if args.cmd == "report":
            return _cmd_report(args, config)
        parser.print_help()
        return EXIT_USAGE
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DataMissError as e:
        print(f"data miss: {e.miss}", file=sys.stderr)
        return EXIT_DATA_MISS


if __name__ == "__main__":
    sys.exit(main())
