"""Command-line entry point: ``kneser-vr <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 a resource cap or input
check refused the run, 3 an I/O error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import logging
import os
import sys
from contextlib import contextmanager
from math import comb

from .bounds import emit_table
from .combinatorics import Subset, enumerate_space, intersects_threshold, kneser_adjacent, symdiff_distance
from .complex import build_complex, is_maximal_simplex, write_simplices
from .designs import FANO_LINES, fano_plane, line_meeting_sets, projective_plane, verify_max_pp, write_plane
from .errors import CertificateError, KneserVRError, ResourceLimitError
from .generators import build_certificate, explore_pp_extension, fano_extension_complex, max_2n_facet
from .homology import PrimeField, ResourceCaps, betti_numbers, persistence_barcode
from .maps import (
    VerificationResult,
    compose_chain,
    removal_order_report,
    verify_all_atomic,
    verify_contiguity,
    verify_phi_m_m1,
    verify_phi_m_S_cases,
)

EXIT_OK, EXIT_FAIL, EXIT_RESOURCE, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("kneser_vr")


def parse_range(text: str) -> list[int]:
    """``"4..10"``, ``"1,3,5"`` or ``"7"``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            a, b = part.split("..")
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def parse_subset(text: str | None) -> Subset | None:
    return None if text is None else Subset.of(parse_range(text))


@contextmanager
def _output(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _dump(doc, out) -> None:
    out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _ground(args) -> int:
    if getattr(args, "m", None) is not None:
        return args.m
    if getattr(args, "k", None) is None:
        raise KneserVRError("give --k or --m")
    return 2 * args.n + args.k


def _caps(args) -> ResourceCaps:
    return ResourceCaps(args.max_simplices, args.memory_mb)


# ---------------------------------------------------------------------------
# commands


def cmd_betti(args) -> int:
    m = _ground(args)
    r = 2 * (args.n - 1) if args.r is None else args.r
    K = build_complex(args.n, m, r)
    dims = parse_range(args.dims) if args.dims else None
    max_dim = args.max_dim if args.max_dim is not None else (max(dims) if dims else K.dimension())
    betti = betti_numbers(K, max_dim, PrimeField(args.field), _caps(args), dims=dims, workers=args.threads)
    records = [{"dim": d, "betti": b} for d, b in enumerate(betti) if b is not None]
    with _output(args.output) as out:
        if args.format == "json":
            _dump({"n": args.n, "m": m, "r": r, "field": args.field, "betti": records}, out)
        elif args.format == "csv":
            out.write("dim,betti\n")
            for rec in records:
                out.write(f"{rec['dim']},{rec['betti']}\n")
        else:
            out.write(f"VR(F_{args.n}^[{m}]; {r}) over GF({args.field})\n")
            for rec in records:
                out.write(f"  b_{rec['dim']} = {rec['betti']}\n")
    return EXIT_OK


def _verify_dist(args) -> VerificationResult:
    params = {"n": args.n, "m": args.m}
    pts = enumerate_space(args.n, args.m).vertices
    for a, b in itertools.combinations(pts, 2):
        d = symdiff_distance(a, b)
        for c in range(1, args.n + 1):
            if (d <= 2 * c) != intersects_threshold(a, b, c):
                return VerificationResult(False, "dist", params, {"A": a.to_list(), "B": b.to_list(), "c": c})
        if (d <= 2 * (args.n - 1)) == kneser_adjacent(a, b):
            return VerificationResult(False, "dist", params, {"A": a.to_list(), "B": b.to_list(), "kneser": True})
    return VerificationResult(True, "dist", params)


def _verify_max_2n(args) -> VerificationResult:
    K = build_complex(args.n, args.m, 2 * (args.n - 1))
    params = {"n": args.n, "m": args.m}
    for S in itertools.combinations(range(1, args.m + 1), 2 * args.n):
        sigma = K.ordinals(max_2n_facet(args.n, S))
        if not K.is_simplex(sigma) or not is_maximal_simplex(K, sigma):
            return VerificationResult(False, "max-2n", params, {"S": list(S)})
    return VerificationResult(True, "max-2n", params, details={"subsets": comb(args.m, 2 * args.n)})


def _verify_decomp(args) -> VerificationResult:
    checked = []
    for j in range(args.n, args.m + 1):
        order = list(range(args.m, j, -1))
        res = compose_chain(args.m, args.n, order)
        checked.append(order)
        if not res:
            return res
    return VerificationResult(True, "decomp", {"n": args.n, "m": args.m}, details={"orders": checked})


def _verify_image_reduction(args) -> VerificationResult:
    n, m, ell = args.n, args.m, args.ell
    field = PrimeField(args.field)
    pairs = []
    if args.S and args.T:
        pairs = [(parse_subset(args.S), parse_subset(args.T))]
    else:
        for s in itertools.combinations(range(2, m + 1), ell - 1):
            S = Subset.of((1,) + s)
            for t in itertools.combinations(range(1, m + 1), ell):
                if Subset.of(t) != S:
                    pairs.append((S, Subset.of(t)))
    for S, T in pairs:
        res = verify_phi_m_S_cases(m, ell, S, T, n, field)
        if not res:
            return res
    return VerificationResult(True, "image-reduction", {"n": n, "m": m, "ell": ell}, details={"pairs": len(pairs)})


def _verify_last_element(args) -> VerificationResult:
    n, m, ell = args.n, args.m, args.ell
    field = PrimeField(args.field)
    count = 0
    for mid in itertools.combinations(range(2, m), ell - 2):
        res = verify_phi_m_m1(m, ell, (1,) + mid + (m,), n, field)
        count += 1
        if not res:
            return res
    return VerificationResult(True, "last-element-reduction", {"n": n, "m": m, "ell": ell}, details={"subsets": count})


def _verify_contiguity(args) -> VerificationResult:
    js = [args.j] if args.j is not None else list(range(args.n, args.m + 1))
    for j in js:
        res = verify_contiguity(args.m, args.n, args.c, j)
        if not res:
            return res
    return VerificationResult(True, "contiguity", {"n": args.n, "m": args.m, "c": args.c, "j": js})


def _verify_fano_cycle(args) -> VerificationResult:
    S = parse_subset(args.S) or Subset.interval(6)
    ext = fano_extension_complex(S, args.m)
    betti = betti_numbers(ext.complex, 7, PrimeField(args.field))
    ok = ext.structure is not None and len(ext.complex) == 14 and betti[6] == 1 and sum(betti) == 1
    params = {"m": args.m, "S": S.to_list(), "p": args.field}
    details = {"vertices": len(ext.complex), "betti": betti}
    return VerificationResult(ok, "fano-cycle", params, None if ok else details, details)


def _verify_fano_blocking(args) -> VerificationResult:
    plane = fano_plane()
    meeting = line_meeting_sets(plane, 3)
    lines = set(plane.lines)
    extra = [s.to_list() for s in meeting if s not in lines]
    ok = not extra and len(meeting) == len(FANO_LINES)
    return VerificationResult(ok, "fano-blocking", {"q": 2}, None if ok else {"non_lines": extra})


def _verify_persistence(args) -> VerificationResult:
    max_dim = args.max_dim if args.max_dim is not None else comb(args.m, args.n) - 2
    bc = persistence_barcode(args.n, args.m, max_dim, PrimeField(args.field), _caps(args))
    long = [rec for rec in bc.to_records() if rec["death"] is None or rec["death"] - rec["birth"] > 2]
    params = {"n": args.n, "m": args.m, "max_dim": max_dim}
    return VerificationResult(not long, "persistence-trivial", params, {"intervals": long} if long else None,
                              {"max_length": bc.max_length()})


VERIFIERS = {
    "dist": _verify_dist,
    "max-pp": lambda a: VerificationResult(verify_max_pp(a.q, a.m), "max-pp", {"q": a.q, "m": a.m}),
    "max-2n": _verify_max_2n,
    "contraction": lambda a: verify_all_atomic(a.n, a.m),
    "decomp": _verify_decomp,
    "image-reduction": _verify_image_reduction,
    "last-element-reduction": _verify_last_element,
    "contiguity": _verify_contiguity,
    "fano-cycle": _verify_fano_cycle,
    "fano-blocking": _verify_fano_blocking,
    "persistence-trivial": _verify_persistence,
}


def cmd_verify(args) -> int:
    res = VERIFIERS[args.lemma](args)
    with _output(args.output) as out:
        _dump(res.to_json(), out)
    return EXIT_OK if res.passed else EXIT_FAIL


def cmd_bounds(args) -> int:
    rows = parse_range(args.n) if args.n else None
    cols = parse_range(args.k) if args.k else None
    report = emit_table(args.table, rows, cols)
    with _output(args.output) as out:
        out.write(report.render(args.format))
    return EXIT_OK


def cmd_certificate(args) -> int:
    try:
        cert = build_certificate(args.n, args.m, PrimeField(args.field), explicit_limit=args.explicit_limit, strict=False)
    except CertificateError as exc:  # pragma: no cover - strict=False never raises
        print(str(exc), file=sys.stderr)
        return EXIT_FAIL
    with _output(args.output) as out:
        if args.format == "json":
            _dump(cert.to_json(), out)
        else:
            out.write(f"n={cert.n} m={cert.m} GF({cert.p}) degree {cert.dim}: rank >= {cert.rank}, "
                      f"pairing identity {cert.rank}x{cert.rank}: {'pass' if cert.passed else 'FAIL'}\n")
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_export(args) -> int:
    with _output(args.output) as out:
        if args.plane is not None:
            write_plane(fano_plane() if args.plane == 2 else projective_plane(args.plane), out)
            return EXIT_OK
        m = _ground(args)
        r = 2 * (args.n - 1) if args.r is None else args.r
        K = build_complex(args.n, m, r)
        count = write_simplices(K, args.dim, out, maximal_only=args.maximal_only)
    log.info("wrote %d simplices", count)
    return EXIT_OK


def cmd_barcode(args) -> int:
    max_dim = args.max_dim if args.max_dim is not None else comb(args.m, args.n) - 2
    bc = persistence_barcode(args.n, args.m, max_dim, PrimeField(args.field), _caps(args))
    with _output(args.output) as out:
        if args.format == "json":
            _dump({"n": args.n, "m": args.m, "field": args.field, "intervals": bc.to_records()}, out)
        else:
            for rec in bc.to_records():
                death = "inf" if rec["death"] is None else rec["death"]
                out.write(f"{rec['dim']} [{rec['birth']}, {death})\n")
    return EXIT_OK


def cmd_explore(args) -> int:
    if args.what == "plane-extension":
        doc = explore_pp_extension(args.q, parse_subset(args.S))
    else:
        target = parse_subset(args.S) or Subset.interval(args.n)
        doc = {"m": args.m, "n": args.n, "target": target.to_list(), "orders": removal_order_report(args.m, args.n, target)}
    with _output(args.output) as out:
        _dump(doc, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _common(p, caps=False, fmt=("json", "text")):
    p.add_argument("--field", "-p", type=int, default=2, help="prime field characteristic")
    p.add_argument("--output", "-o", default=None, help="output path (default stdout)")
    if fmt:
        p.add_argument("--format", choices=fmt, default=fmt[0])
    if caps:
        p.add_argument("--max-simplices", type=int, default=ResourceCaps.max_simplices,
                       help="per-dimension simplex cap")
        p.add_argument("--memory-mb", type=int, default=ResourceCaps.memory_mb)
        p.add_argument("--threads", type=int, default=None, help="worker threads (env KNESER_VR_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kneser-vr", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="reduced Betti numbers of VR(F_n^[m]; r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int, help="scale (default 2(n-1))")
    p.add_argument("--max-dim", type=int)
    p.add_argument("--dims", help="only these degrees, e.g. 6,9")
    _common(p, caps=True, fmt=("json", "csv", "text"))
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("verify", help="exhaustive checks of structural claims")
    p.add_argument("--lemma", required=True, choices=sorted(VERIFIERS))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=7)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--ell", type=int, default=None)
    p.add_argument("--S", default=None)
    p.add_argument("--T", default=None)
    p.add_argument("--max-dim", type=int, default=None)
    _common(p, caps=True, fmt=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="closed-form bound tables")
    p.add_argument("--table", choices=["bigdim", "kg3", "connectivity"], required=True)
    p.add_argument("--n", help="row range, e.g. 4..10")
    p.add_argument("--k", help="column range, e.g. 1..5")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("certificate", help="independent cross-polytopal classes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--explicit-limit", type=int, default=1 << 16,
                   help="largest cycle (in terms) to materialise and check explicitly")
    _common(p, fmt=("json", "text"))
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("export", help="facet-list export of simplices or a projective plane")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--maximal-only", action="store_true")
    p.add_argument("--plane", type=int, help="export the lines of PG(2, q) instead")
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("barcode", help="persistence barcode over scales 0..2n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--max-dim", type=int)
    _common(p, caps=True, fmt=("json", "text"))
    p.set_defaults(func=cmd_barcode)

    p = sub.add_parser("explore", help="exploratory reports with no presumed outcome")
    p.add_argument("what", choices=["plane-extension", "removal-orders"])
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--m", type=int, default=7)
    p.add_argument("--S", default=None)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_explore)
    return parser


def _validate(args) -> None:
    if args.command == "export" and args.plane is None and (args.n is None or args.dim is None):
        raise KneserVRError("export needs --n and --dim (or --plane)")
    if args.command == "verify":
        if args.lemma == "contiguity" and args.c is None:
            args.c = args.n - 1
        if args.lemma in ("image-reduction", "last-element-reduction") and args.ell is None:
            args.ell = args.m - 1
    threads = getattr(args, "threads", None)
    if threads is not None and threads < 1:
        raise KneserVRError("--threads must be positive")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "threads", None) is not None:
        os.environ["KNESER_VR_THREADS"] = str(args.threads)
    try:
        _validate(args)
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"refused: {exc}. Instances of this size need cluster-scale resources; "
              f"raise --max-simplices/--memory-mb only if the machine can hold them.", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except KneserVRError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
