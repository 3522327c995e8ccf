"""``gausscert`` command line.

Exit codes: 0 pass, 1 verification failure, 2 resource limit, 3 I/O error,
64 usage error, 65 malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from math import comb
from typing import List, Optional

from . import multipoly
from .certificate import CertificateGrid, GridKey, generate, step
from .multipoly import ResourceLimitError
from .ring import RingCtx
from .serialize import FormatError, dump_certificate, load_certificate, load_instance
from .specialize import random_instance, specialize_certificate
from .verify import audit_degrees, check_comparisons, fast_precheck, swap_certificate, verify_identity

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_RESOURCE = 2
EXIT_IO = 3
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _modulus(text: str) -> int:
    v = _nonneg(text)
    if v < 2:
        raise argparse.ArgumentTypeError(f"modulus must be >= 2, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gausscert", description=__doc__.splitlines()[0])
    p.add_argument(
        "--term-limit",
        type=_nonneg,
        default=multipoly.DEFAULT_TERM_LIMIT,
        help="max terms per polynomial, 0 disables (default %(default)s)",
    )
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="build the certificate for (m, n)")
    g.add_argument("--m", type=_nonneg, required=True)
    g.add_argument("--n", type=_nonneg, required=True)
    g.add_argument("--format", choices=("json", "text"), default="json")
    g.add_argument("--out", help="output file (default: stdout)")

    v = sub.add_parser("verify", help="expand the identity and check it equals 1")
    v.add_argument("cert")
    v.add_argument("--fast-precheck", action="store_true",
                   help="evaluate at random points mod a prime before expanding")

    a = sub.add_parser("audit", help="measure degrees against the bounds")
    a.add_argument("cert")
    a.add_argument("--trace", action="store_true",
                   help="also audit d and e, rebuilt from the neighbouring keys")

    s = sub.add_parser("specialize", help="evaluate the certificate on a concrete instance")
    s.add_argument("cert")
    s.add_argument("instance", nargs="?", help="instance JSON; omit to sample one")
    s.add_argument("--modulus", type=_modulus, help="modulus for a sampled instance")
    s.add_argument("--seed", type=int, default=0)

    t = sub.add_parser("selftest", help="run the invariant suite over all m + n <= max-total")
    t.add_argument("--max-total", type=_nonneg, default=4)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--fast-precheck", action="store_true")
    return p


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")
    sys.stdout.flush()


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc.strerror}") from exc


class _IOFailure(Exception):
    pass


def _load_cert(path: str):
    return load_certificate(_read(path))


def cmd_generate(args) -> int:
    cert = generate(args.m, args.n)
    text = dump_certificate(cert, args.format)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise _IOFailure(f"cannot write {args.out}: {exc.strerror}") from exc
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    cert = _load_cert(args.cert)
    if args.fast_precheck and not fast_precheck(cert):
        _emit({"m": cert.m, "n": cert.n, "ok": False, "precheck": "failed"})
        return EXIT_FAIL
    report = verify_identity(cert)
    out = report.to_json()
    out["residual_text"] = multipoly.poly_render(report.residual)
    _emit(out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_audit(args) -> int:
    cert = _load_cert(args.cert)
    trace = None
    if args.trace and cert.m >= 1 and cert.n >= 1:
        grid = CertificateGrid()
        _, trace = step(cert.m, cert.n, grid.get(cert.m, cert.n - 1), grid.get(cert.m - 1, cert.n))
    report = audit_degrees(cert, trace)
    _emit(report.to_json())
    return EXIT_OK if report.coarse_ok else EXIT_FAIL


def cmd_specialize(args) -> int:
    cert = _load_cert(args.cert)
    if args.instance:
        wa, wb = load_instance(_read(args.instance))
    else:
        if args.modulus is None:
            raise UsageError("give an instance file or --modulus to sample one")
        wa, wb = random_instance(RingCtx(args.modulus), cert.m, cert.n, args.seed)
    result = specialize_certificate(cert, wa, wb)
    _emit(result.to_json())
    return EXIT_OK if result.ok else EXIT_FAIL


def _selftest_key(grid: CertificateGrid, key: GridKey, args, rng_seed: int) -> dict:
    m, n = key
    row = {"event": "key", "m": m, "n": n}
    t0 = time.perf_counter()
    cert = grid.get(m, n)
    trace = grid.trace(m, n)
    t1 = time.perf_counter()
    row["generate_seconds"] = round(t1 - t0, 3)
    row["terms"] = cert.term_count()
    if args.fast_precheck:
        row["precheck"] = fast_precheck(cert, seed=rng_seed)
    t1 = time.perf_counter()
    row["identity"] = verify_identity(cert).ok
    row["verify_seconds"] = round(time.perf_counter() - t1, 3)
    report = audit_degrees(cert, trace)
    row["coarse_bound"] = comb(m + n, m)
    row["coarse_ok"] = report.coarse_ok
    row["max_measured"] = report.max_measured()
    if report.interior:
        row["fine_interior_ok"] = report.fine_ok
    else:
        row["fine_base_case_exceptions"] = report.fine_exceptions()
    checks = [row["identity"], report.coarse_ok, row.get("fine_interior_ok", True)]
    if m + n <= 4:
        sw = swap_certificate(cert)
        row["swap_ok"] = verify_identity(sw).ok and swap_certificate(sw) == cert
        checks.append(row["swap_ok"])
    if 1 <= m <= 4 and 1 <= n <= 4:
        row["comparisons"] = check_comparisons(m, n)
        checks.append(row["comparisons"])
    if m + n <= 5:
        spec_ok = []
        for i, modulus in enumerate((6, 10007 * 3, 2**31 - 1)):
            wa, wb = random_instance(RingCtx(modulus), m, n, rng_seed + i)
            spec_ok.append(specialize_certificate(cert, wa, wb).ok)
        row["specialize_ok"] = all(spec_ok)
        checks.append(row["specialize_ok"])
    row["ok"] = all(checks)
    row["seconds"] = round(time.perf_counter() - t0, 3)
    return row


def cmd_selftest(args) -> int:
    grid = CertificateGrid()
    verified, failed, limited = 0, [], []
    growth = []
    for s in range(args.max_total + 1):
        for m in range(s + 1):
            key = GridKey(m, s - m)
            t_key = time.perf_counter()
            try:
                row = _selftest_key(grid, key, args, args.seed + 1000 * s + m)
            except ResourceLimitError as exc:
                limited.append([key.m, key.n])
                _emit({"event": "key", "m": key.m, "n": key.n, "ok": False,
                       "resource_limit": str(exc),
                       "seconds": round(time.perf_counter() - t_key, 3)})
                continue
            finally:
                if s == args.max_total:
                    grid.discard(key)
            _emit(row)
            growth.append({"m": key.m, "n": key.n, "bound": row["coarse_bound"],
                           "max_measured": row["max_measured"]})
            if row["ok"]:
                verified += 1
            else:
                failed.append([key.m, key.n])
        grid.discard_totals_below(s)
    _emit({"event": "degree_growth", "rows": growth})
    _emit({"event": "summary", "max_total": args.max_total, "keys_verified": verified,
           "failed": failed, "resource_limited": limited})
    if failed:
        return EXIT_FAIL
    return EXIT_RESOURCE if limited else EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "verify": cmd_verify,
    "audit": cmd_audit,
    "specialize": cmd_specialize,
    "selftest": cmd_selftest,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    old_limit = multipoly.get_term_limit()
    multipoly.set_term_limit(args.term_limit or None)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"gausscert: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"gausscert: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except _IOFailure as exc:
        print(f"gausscert: {exc}", file=sys.stderr)
        return EXIT_IO
    except FormatError as exc:
        print(f"gausscert: malformed input: {exc}", file=sys.stderr)
        return EXIT_DATA
    finally:
        multipoly.set_term_limit(old_limit)


if __name__ == "__main__":
    sys.exit(main())
