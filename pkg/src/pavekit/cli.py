"""Command-line surface: generate seeded instances, run the searches,
emit certificates as canonical JSON (or CSV norm tables) and re-verify
any certificate file against its subject.

Exit codes: 0 a valid certificate was produced or verified, 1 a search
failed or a certificate did not verify, 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import generators
from ._jsonutil import canonical_dumps, subject_hash
from .errors import PavekitError
from .frames import Frame, frame_from_json, frame_to_json, gram
from .harmonic import (
    FreqWindow,
    IntervalSet,
    ap_partition_check,
    fourier_gram,
    general_set_partition,
    syndetic_analyze,
)
from .linalg import matrix_from_json, matrix_to_json, op_norm
from .paving import (
    PartitionCertificate,
    SearchBudget,
    exhaustive_min_r,
    heuristic_paving,
    mss_partition,
    pave_complex,
    pave_selfadjoint_via_projection,
    projection_lift,
    weaver_partition,
)
from .sequences import (
    RieszCertificate,
    bt_partition,
    bt_subset_search,
    feichtinger_partition,
    renorm_value,
    sundberg_split,
)
from .subspaces import (
    SubspaceModel,
    decompose_certificate,
    is_A_large,
    subspace_from_json,
    subspace_to_json,
    verify_decomposition,
)

NORM_MATCH_TOL = 1e-12


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except PavekitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:  # generation / search machinery gave up
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    except (OSError, KeyError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


# ---------------------------------------------------------------------------
# plumbing

def _emit(args, payload: dict, csv_text: str | None = None) -> None:
    if getattr(args, "emit", "json") == "csv":
        if csv_text is None:
            raise ValueError("this subcommand has no CSV form")
        text = csv_text
    else:
        text = canonical_dumps(payload) + "\n"
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _budget(args) -> SearchBudget:
    return SearchBudget(
        restarts=args.budget_restarts,
        seed=args.seed,
        parallelism=args.parallelism,
    )


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_matrix(path: str) -> np.ndarray:
    return matrix_from_json(_load_json(path))


def _load_frame(path: str) -> Frame:
    return frame_from_json(_load_json(path))


def _epsilon(value: str) -> float:
    eps = float(value)
    if not 0.0 < eps < 1.0:
        raise argparse.ArgumentTypeError(f"epsilon must lie in (0, 1), got {eps}")
    return eps


def _norm_cert_csv(cert: PartitionCertificate) -> str:
    lines = ["block,norm,bound"]
    for i, x in enumerate(cert.block_norms):
        lines.append(f"{i},{x!r},{cert.bound!r}")
    return "\n".join(lines) + "\n"


def _band_cert_csv(cert: RieszCertificate) -> str:
    lo_lim = cert.band_center * (1.0 - cert.epsilon)
    hi_lim = cert.band_center * (1.0 + cert.epsilon)
    lines = ["class,eig_low,eig_high,band_low,band_high"]
    for i, (lo, hi) in enumerate(cert.per_class_bounds):
        lines.append(f"{i},{lo!r},{hi!r},{lo_lim!r},{hi_lim!r}")
    return "\n".join(lines) + "\n"


def _finish_norm_cert(args, cert: PartitionCertificate) -> int:
    _emit(args, cert.to_json(), _norm_cert_csv(cert))
    if not cert.valid:
        print(
            f"search failed: best block norms {list(cert.block_norms)} vs bound {cert.bound}",
            file=sys.stderr,
        )
    return 0 if cert.valid else 1


def _finish_band_cert(args, cert: RieszCertificate) -> int:
    _emit(args, cert.to_json(), _band_cert_csv(cert))
    if not cert.valid:
        print(
            f"search failed: class ranges {list(cert.per_class_bounds)} vs band "
            f"{cert.band_center} * [1 - {cert.epsilon}, 1 + {cert.epsilon}]",
            file=sys.stderr,
        )
    return 0 if cert.valid else 1


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_gen(args) -> int:
    kind = args.kind
    if kind == "hermitian":
        M = generators.random_hermitian(args.n, args.seed, args.complex, args.zero_diag)
        _emit(args, matrix_to_json(M))
    elif kind == "parseval":
        F = generators.random_parseval_frame(args.dim, args.count, args.seed, args.complex)
        _emit(args, frame_to_json(F))
    elif kind == "eta-tight":
        F = generators.eta_tight_unit_frame(args.dim, args.eta, args.seed, args.complex)
        _emit(args, frame_to_json(F))
    elif kind == "projection":
        if args.half_diag:
            Q = generators.lifted_half_diagonal_projection(args.n, args.seed, args.complex)
        else:
            Q = generators.random_projection(args.n, args.rank, args.seed, args.complex)
        _emit(args, matrix_to_json(Q))
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown kind {kind}")
    return 0


def _cmd_pave(args) -> int:
    T = _load_matrix(args.input)
    n = T.shape[0]
    budget = _budget(args)
    if args.via_lift:
        cert = pave_selfadjoint_via_projection(T, args.epsilon, budget)
        return _finish_norm_cert(args, cert)
    if args.exhaustive:
        cert = exhaustive_min_r(T, args.epsilon, args.r if args.r else n, budget)
        if cert is None:
            print(f"infeasible: no partition with at most {args.r or n} blocks", file=sys.stderr)
            return 1
        return _finish_norm_cert(args, cert)
    r = args.r if args.r else min(n, int(math.ceil((6.0 / args.epsilon) ** 4)))
    return _finish_norm_cert(args, heuristic_paving(T, r, args.epsilon, budget))


def _cmd_pave_complex(args) -> int:
    T = _load_matrix(args.input)
    return _finish_norm_cert(args, pave_complex(T, args.epsilon, _budget(args)))


def _cmd_lift(args) -> int:
    T = _load_matrix(args.input)
    _emit(args, matrix_to_json(projection_lift(T, args.sign)))
    return 0


def _cmd_weaver(args) -> int:
    F = _load_frame(args.input)
    cert = weaver_partition(F, args.eta, args.theta, _budget(args))
    return _finish_norm_cert(args, cert)


def _cmd_mss(args) -> int:
    F = _load_frame(args.input)
    return _finish_norm_cert(args, mss_partition(F, args.r, _budget(args)))


def _cmd_feichtinger(args) -> int:
    F = _load_frame(args.input)
    return _finish_band_cert(args, feichtinger_partition(F, args.epsilon, _budget(args)))


def _cmd_bt(args) -> int:
    T = _load_matrix(args.input)
    if args.subset:
        res = bt_subset_search(T, args.lower)
        payload = {
            "subset": [int(i) for i in res.subset],
            "achieved_lower_bound": (
                float(res.achieved_lower_bound) if math.isfinite(res.achieved_lower_bound) else None
            ),
            "invertibility_ratio": float(res.invertibility_ratio),
        }
        _emit(args, payload)
        return 0 if res.subset else 1
    return _finish_band_cert(args, bt_partition(T, args.epsilon, _budget(args)))


def _cmd_renorm(args) -> int:
    if args.max_n:
        rows = [(n, renorm_value(n)) for n in range(1, args.max_n + 1)]
        csv_text = "n,value\n" + "\n".join(f"{n},{v!r}" for n, v in rows) + "\n"
        _emit(args, {"values": [[n, v] for n, v in rows]}, csv_text)
    else:
        v = renorm_value(args.n)
        _emit(args, {"n": args.n, "value": v}, f"n,value\n{args.n},{v!r}\n")
    return 0


def _cmd_sundberg(args) -> int:
    F = _load_frame(args.input)
    sets = sundberg_split(F, args.epsilon, _budget(args))
    _emit(args, {"sets": [list(map(int, s)) for s in sets]})
    return 0


def _cmd_fourier_gram(args) -> int:
    E = IntervalSet.from_json(_load_json(args.input))
    _emit(args, matrix_to_json(fourier_gram(E, FreqWindow(args.freq_window))))
    return 0


def _cmd_fourier_pave(args) -> int:
    E = IntervalSet.from_json(_load_json(args.input))
    W = FreqWindow(args.freq_window)
    if args.r:
        cert = ap_partition_check(E, args.r, args.epsilon, W)
    else:
        cert = general_set_partition(E, args.epsilon, W, _budget(args))
    return _finish_band_cert(args, cert)


def _cmd_syndetic(args) -> int:
    if args.elements:
        S = [int(tok) for tok in args.elements.split(",") if tok.strip()]
    else:
        S = [int(x) for x in _load_json(args.input)["set"]]
    report = syndetic_analyze(S, FreqWindow(args.freq_window), args.r)
    _emit(args, report.to_json())
    return 1 if report.within_r is False else 0


def _cmd_large(args) -> int:
    H = subspace_from_json(_load_json(args.input))
    ok, mn = is_A_large(H, args.lower)
    _emit(args, {"is_large": bool(ok), "lower": float(args.lower), "min_norm": float(mn)})
    return 0 if ok else 1


def _cmd_decompose(args) -> int:
    H = subspace_from_json(_load_json(args.input))
    cert = decompose_certificate(H, args.epsilon, _budget(args))
    verified = verify_decomposition(H, cert.classes)
    _emit(args, cert.to_json(), _band_cert_csv(cert))
    if not verified:
        print("decomposition failed per-block surjectivity", file=sys.stderr)
    return 0 if (cert.valid and verified) else 1


def _cmd_verify(args) -> int:
    cert_obj = _load_json(args.cert)
    subject_obj = _load_json(args.input)
    if "block_norms" in cert_obj:
        return _verify_norm_cert(args, cert_obj, subject_obj)
    if "per_class_bounds" in cert_obj:
        return _verify_band_cert(args, cert_obj, subject_obj)
    print("error: unrecognized certificate shape", file=sys.stderr)
    return 2


def _verify_norm_cert(args, cert_obj, subject_obj) -> int:
    from .paving import _OuterSumNorms, _SubmatrixNorms  # reuse the evaluators

    cert = PartitionCertificate.from_json(cert_obj)
    if "rows" in subject_obj:
        T = matrix_from_json(subject_obj)
        norms = _SubmatrixNorms(T)
        actual_hash = subject_hash(matrix_to_json(T))
        n = T.shape[0]
    elif "vectors" in subject_obj:
        F = frame_from_json(subject_obj)
        norms = _OuterSumNorms(np.ascontiguousarray(F.synthesis))
        actual_hash = subject_hash(frame_to_json(F))
        n = F.size
    else:
        print("error: subject is neither a matrix nor a frame", file=sys.stderr)
        return 2
    if actual_hash != cert.subject_hash:
        print("hash mismatch: certificate was issued for a different subject", file=sys.stderr)
        return 1
    covered = sorted(i for b in cert.partition for i in b)
    if covered != list(range(n)):
        print("partition does not cover the index set", file=sys.stderr)
        return 1
    recomputed = tuple(norms(tuple(sorted(b))) for b in cert.partition)
    drift = max(
        (abs(a - b) for a, b in zip(recomputed, cert.block_norms)),
        default=0.0,
    )
    ok = all(x <= cert.bound + cert.tolerance for x in recomputed)
    echoed = PartitionCertificate(
        subject_hash=cert.subject_hash,
        partition=cert.partition,
        epsilon=cert.epsilon,
        block_norms=tuple(float(x) for x in recomputed),
        bound=cert.bound,
        tolerance=cert.tolerance,
        verdict="valid" if ok else "invalid",
        scale=cert.scale,
        seed=cert.seed,
    )
    _emit(args, echoed.to_json(), _norm_cert_csv(echoed))
    if drift > NORM_MATCH_TOL:
        print(f"stored block norms drift {drift} beyond {NORM_MATCH_TOL}", file=sys.stderr)
        return 1
    return 0 if (ok and cert.verdict == "valid") else 1


def _verify_band_cert(args, cert_obj, subject_obj) -> int:
    cert = RieszCertificate.from_json(cert_obj)
    if "vectors" in subject_obj:
        F = frame_from_json(subject_obj)
        G = gram(F)
        actual_hash = subject_hash(frame_to_json(F))
        positions = {i: i for i in range(F.size)}
    elif "rows" in subject_obj:
        T = matrix_from_json(subject_obj)
        G = T.conj().T @ T
        actual_hash = subject_hash(matrix_to_json(T))
        positions = {i: i for i in range(T.shape[1])}
    elif "intervals" in subject_obj:
        if cert.window is None:
            print("error: harmonic certificate lacks its window", file=sys.stderr)
            return 2
        E = IntervalSet.from_json(subject_obj)
        W = FreqWindow(cert.window)
        G = fourier_gram(E, W)
        payload = dict(E.to_json())
        payload["window"] = [int(i) for i in W.indices]
        actual_hash = subject_hash(payload)
        positions = {n: pos for pos, n in enumerate(W.indices)}
    elif "ambient_dim" in subject_obj:
        H = subspace_from_json(subject_obj)
        norms = H.coordinate_norms()
        if float(norms.min()) <= 1e-8:
            print("subspace has a null coordinate; not large", file=sys.stderr)
            return 1
        U = H.basis.conj().T / norms
        G = gram(Frame.from_synthesis(U))
        actual_hash = subject_hash(subspace_to_json(H))
        positions = {i: i for i in range(H.ambient_dim)}
    else:
        print("error: unrecognized subject shape", file=sys.stderr)
        return 2
    if actual_hash != cert.subject_hash:
        print("hash mismatch: certificate was issued for a different subject", file=sys.stderr)
        return 1
    lo_lim = cert.band_center * (1.0 - cert.epsilon) - cert.tolerance
    hi_lim = cert.band_center * (1.0 + cert.epsilon) + cert.tolerance
    ok = True
    recomputed = []
    for cls in cert.classes:
        try:
            pos = [positions[int(i)] for i in cls]
        except KeyError:
            print(f"class {list(cls)} does not index the subject", file=sys.stderr)
            return 1
        sub = G[np.ix_(pos, pos)]
        w = np.linalg.eigvalsh((sub + sub.conj().T) / 2.0)
        lo, hi = float(w[0]), float(w[-1])
        recomputed.append([lo, hi])
        if lo < lo_lim or hi > hi_lim:
            ok = False
    echoed = dict(cert.to_json())
    echoed["per_class_bounds"] = recomputed
    echoed["verdict"] = "valid" if ok else "invalid"
    _emit(args, echoed)
    return 0 if (ok and cert.verdict == "valid") else 1


# ---------------------------------------------------------------------------
# parser

def _add_io_opts(p, csv_ok=True) -> None:
    p.add_argument("--output", "-o", help="write the result here instead of stdout")
    if csv_ok:
        p.add_argument("--emit", choices=["json", "csv"], default="json")
    else:
        p.set_defaults(emit="json")


def _add_search_opts(p) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--parallelism", type=int, default=1)
    p.add_argument("--budget-restarts", type=int, default=64)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pavekit",
        description="searchers and verifiers for paving, frame-partition and subspace certificates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded random instance")
    p.add_argument("--kind", required=True, choices=["hermitian", "parseval", "eta-tight", "projection"])
    p.add_argument("--n", type=int, default=6, help="matrix size (hermitian, projection)")
    p.add_argument("--dim", type=int, default=2, help="vector dimension (frames)")
    p.add_argument("--count", type=int, default=8, help="number of vectors (parseval)")
    p.add_argument("--eta", type=float, default=18.0)
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--zero-diag", action="store_true")
    p.add_argument("--complex", action="store_true")
    p.add_argument("--half-diag", action="store_true", help="lift a zero-diagonal contraction instead")
    _add_io_opts(p, csv_ok=False)
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("pave", help="search an (r, epsilon)-paving of a matrix")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", type=_epsilon, required=True)
    p.add_argument("--r", type=int, default=0, help="block count (default: formula value capped at n)")
    p.add_argument("--exhaustive", action="store_true", help="minimal-r brute force (n <= 14)")
    p.add_argument("--via-lift", action="store_true", help="zero-diagonal transfer pipeline")
    _add_search_opts(p)
    _add_io_opts(p)
    p.set_defaults(handler=_cmd_pave)

    p = sub.add_parser("pave-complex", help="pave a zero-diagonal complex matrix by parts")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", type=_epsilon, required=True)
    _add_search_opts(p)
    _add_io_opts(p)
    p.set_defaults(handler=_cmd_pave_complex)

    p = sub.add_parser("lift", help="lift a self-adjoint contraction to a projection")
    p.add_argument("--input", required=True)
    p.add_argument("--sign", choices=["+", "-"], default="+")
    _add_io_opts(p, csv_ok=False)
    p.set_defaults(handler=_cmd_lift)

    p = sub.add_parser("weaver", help="two-block partition of an eta-tight unit-norm frame")
    p.add_argument("--input", required=True)
    p.add_argument("--eta", type=float, default=18.0)
    p.add_argument("--theta", type=float, default=2.0)
    _add_search_opts(p)
    _add_io_opts(p)
    p.set_defaults(handler=_cmd_weaver)

    p = sub.add_parser("mss", help="partition an identity resolution into r low-norm blocks")
    p.add_argument("--input", required=True)
    p.add_argument("--r", type=int, required=True)
    _add_search_opts(p)
    _add_io_opts(p)
    p.set_defaults(handler=_cmd_mss)

    p = sub.add_parser("feichtinger", help="partition a unit-norm system into eps-Riesz classes")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", type=_epsilon, required=True)
    _add_search_opts(p)
    _add_io_opts(p)
    p.set_defaults(handler=_cmd_feichtinger)

    p = sub.add_parser("bt", help="Riesz partition of unit-norm columns, or max invertible subset")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", type=_epsilon, default=0.5)
    p.add_argument("--subset", action="store_true", help="search the largest well-invertible subset")
    p.add_argument("--lower", type=float, default=0.5, help="required smallest Gram eigenvalue")
    _add_search_opts(p)
    _add_io_opts(p)
    p.set_defaults(handler=_cmd_bt)

    p = sub.add_parser("renorm", help="renormed flat-combination value(s)")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--max-n", type=int, default=0, help="emit a table for n = 1..max-n")
    _add_io_opts(p)
    p.set_defaults(handler=_cmd_renorm)

    p = sub.add_parser("sundberg", help="split a unit-norm system into non-spanning sets")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", type=_epsilon, default=0.5)
    _add_search_opts(p)
    _add_io_opts(p, csv_ok=False)
    p.set_defaults(handler=_cmd_sundberg)

    p = sub.add_parser("fourier-gram", help="Gram matrix of the exponentials on E over a window")
    p.add_argument("--input", required=True)
    p.add_argument("--freq-window", type=int, required=True)
    _add_io_opts(p, csv_ok=False)
    p.set_defaults(handler=_cmd_fourier_gram)

    p = sub.add_parser("fourier-pave", help="band certificate over the window (AP with --r, searched otherwise)")
    p.add_argument("--input", required=True)
    p.add_argument("--freq-window", type=int, required=True)
    p.add_argument("--epsilon", type=_epsilon, required=True)
    p.add_argument("--r", type=int, default=0, help="use the r arithmetic progressions mod r")
    _add_search_opts(p)
    _add_io_opts(p)
    p.set_defaults(handler=_cmd_fourier_pave)

    p = sub.add_parser("syndetic", help="gap length of a set inside the window")
    p.add_argument("--input", help='JSON file {"set": [...]}')
    p.add_argument("--elements", help="comma-separated integers (alternative to --input)")
    p.add_argument("--freq-window", type=int, required=True)
    p.add_argument("--r", type=int, default=None, help="flag whether the gap length stays within r")
    _add_io_opts(p, csv_ok=False)
    p.set_defaults(handler=_cmd_syndetic)

    p = sub.add_parser("large", help="check the coordinate-norm largeness of a subspace")
    p.add_argument("--input", required=True)
    p.add_argument("--lower", type=float, required=True)
    _add_io_opts(p, csv_ok=False)
    p.set_defaults(handler=_cmd_large)

    p = sub.add_parser("decompose", help="coordinate partition making every block projection onto")
    p.add_argument("--input", required=True)
    p.add_argument("--epsilon", type=_epsilon, default=0.5)
    _add_search_opts(p)
    _add_io_opts(p)
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("verify", help="re-check a certificate file against its subject")
    p.add_argument("--cert", required=True)
    p.add_argument("--input", required=True, help="the subject the certificate was issued for")
    _add_io_opts(p)
    p.set_defaults(handler=_cmd_verify)

    return parser


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
