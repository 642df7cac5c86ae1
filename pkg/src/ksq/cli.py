"""Command-line front end.

Grammar:

    ksq classify <descriptor> [--format {table,json-lines}] [--samples N] [--seed S]
    ksq scan --figure {fig1,fig2} --grid N --out PATH [--pgm PATH] [--verify-choi K] [--seed S]
    ksq oracle <descriptor> [--samples N] [--seed S] [--tol T]
    ksq harness --family {phi,tdiag,tlm} --grid N [--samples N] [--seed S]

Exit codes: 0 ok/clean, 1 witness found, 2 parse/usage error, 3 I/O
error, 4 verification failure.  The environment variable KSQ_SEED
overrides the default seed; an explicit --seed flag wins over it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import classify, oracle
from .channels import (
    DescriptorError,
    DiagonalParams,
    DiagonalTensorParams,
    QubitChannel,
    ScalarPairParams,
    TensorMap,
    choi_matrix_qubit,
    choi_matrix_tensor,
    map_for_descriptor,
    parse_descriptor,
)
from .tolerances import DEFAULT

EXIT_OK = 0
EXIT_WITNESS = 1
EXIT_PARSE = 2
EXIT_IO = 3
EXIT_VERIFY = 4

DEFAULT_SEED = 7


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _default_seed() -> int:
    env = os.environ.get("KSQ_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise SystemExit(f"KSQ_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


# ---------------------------------------------------------------------------
# region scans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanSpec:
    """A two-axis cell-centred scan with named 0/1 predicate columns."""

    figure: str
    x_range: tuple
    y_range: tuple
    grid: int
    columns: tuple

    @classmethod
    def for_figure(cls, figure: str, grid: int) -> "ScanSpec":
        if grid < 2:
            raise ValueError("grid resolution must be at least 2")
        if figure == "fig1":
            return cls("fig1", (-0.5, 0.5), (-0.5, 0.5), grid, ("t_cp", "phi_cp"))
        if figure == "fig2":
            return cls("fig2", (-1.0, 1.0), (-1.0, 1.0), grid, ("cp", "ks_sufficient", "ks_scalar_components"))
        raise ValueError(f"unknown figure {figure!r}")

    def axis(self, lo: float, hi: float) -> np.ndarray:
        i = np.arange(self.grid)
        return lo + (i + 0.5) * (hi - lo) / self.grid

    def xs(self) -> np.ndarray:
        return self.axis(*self.x_range)

    def ys(self) -> np.ndarray:
        return self.axis(*self.y_range)


def fig1_flags(a, b) -> np.ndarray:
    """Columns (t_cp, phi_cp) for the equal-diagonal tensor family T_(a,a,b).

    t_cp:  |b| < 1/2 and a^2 <= (1+2b)/8      (tensor map CP)
    phi_cp: a^2 <= (1+2b)^2/16                (channel Phi_(2a,2a,2b) CP)
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    t_cp = (np.abs(b) < 0.5) & (a * a <= (1.0 + 2.0 * b) / 8.0 + DEFAULT.positivity)
    phi_cp = a * a <= (1.0 + 2.0 * b) ** 2 / 16.0 + DEFAULT.positivity
    return np.stack([t_cp, phi_cp])


def fig2_flags(lam, mu) -> np.ndarray:
    """Columns (cp, ks_sufficient, ks_scalar_components) for T_(lam, mu)."""
    lam = np.asarray(lam, dtype=float)
    mu = np.asarray(mu, dtype=float)
    root = np.sqrt(lam * lam - lam * mu + mu * mu)
    cp = (lam + mu + 1.0 - 2.0 * root >= -DEFAULT.positivity) & (
        lam + mu <= 1.0 + DEFAULT.positivity
    )
    ks_suff = np.abs(lam) * np.abs(1.0 - 2.0 * lam) + np.abs(mu) * np.abs(
        1.0 - 2.0 * mu
    ) <= 1.0 - 2.0 * lam * lam - 2.0 * mu * mu + DEFAULT.positivity
    in_interval = lambda v: (v >= -0.25 - DEFAULT.positivity) & (v <= 0.5 + DEFAULT.positivity)
    comps = in_interval(lam) & in_interval(mu)
    return np.stack([cp, ks_suff, comps])


def scan_flags(spec: ScanSpec) -> np.ndarray:
    """Flag array of shape (ncols, grid, grid) indexed [col, iy, ix]."""
    xs = spec.xs()
    ys = spec.ys()
    X, Y = np.meshgrid(xs, ys, indexing="xy")
    if spec.figure == "fig1":
        return fig1_flags(X, Y)
    return fig2_flags(X, Y)


def write_scan_csv(path: str, spec: ScanSpec, flags: np.ndarray) -> None:
    """UTF-8, LF line endings, header x,y,<columns>, one row per cell."""
    xs = spec.xs()
    ys = spec.ys()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("x,y," + ",".join(spec.columns) + "\n")
        for iy, y in enumerate(ys):
            for ix, x in enumerate(xs):
                bits = ",".join(str(int(flags[c, iy, ix])) for c in range(len(spec.columns)))
                fh.write(f"{_fmt(x)},{_fmt(y)},{bits}\n")


def write_scan_pgm(path: str, spec: ScanSpec, flags: np.ndarray) -> None:
    """Binary P5 raster; pixel = predicate bitmask scaled by 255 // 2^k.

    Row-major with y increasing downward (row 0 holds the smallest y).
    """
    k = len(spec.columns)
    scale = 255 // (1 << k)
    bitmask = np.zeros((spec.grid, spec.grid), dtype=np.uint16)
    for c in range(k):
        bitmask |= flags[c].astype(np.uint16) << c
    pixels = (bitmask * scale).astype(np.uint8)
    header = (
        f"P5\n"
        f"# {spec.figure}: bits " + ",".join(f"{c}={name}" for c, name in enumerate(spec.columns))
        + f"; pixel = bitmask * {scale} (= 255 // 2^{k})\n"
        f"{spec.grid} {spec.grid}\n255\n"
    )
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        fh.write(pixels.tobytes())


def verify_scan_against_choi(spec: ScanSpec, count: int, seed: int) -> list:
    """Re-check `count` random scan points against the Choi spectrum.

    Returns a list of disagreement descriptions (empty means clean).
    """
    rng = np.random.default_rng(seed)
    xs = rng.uniform(*spec.x_range, size=count)
    ys = rng.uniform(*spec.y_range, size=count)
    bad = []
    for x, y in zip(xs, ys):
        if spec.figure == "fig1":
            t_cp, phi_cp = (bool(v) for v in fig1_flags(x, y))
            m = TensorMap.diagonal(DiagonalTensorParams(x, x, y))
            choi_ok = classify.cp_choi_numeric(choi_matrix_tensor(m)).status is classify.Status.HOLDS_EXACT
            if choi_ok != t_cp:
                bad.append(f"t_cp mismatch at ({_fmt(x)}, {_fmt(y)}): flag={t_cp} choi={choi_ok}")
            ch = QubitChannel.diagonal(DiagonalParams(2 * x, 2 * x, 2 * y))
            choi_ok = classify.cp_choi_numeric(choi_matrix_qubit(ch)).status is classify.Status.HOLDS_EXACT
            if choi_ok != phi_cp:
                bad.append(f"phi_cp mismatch at ({_fmt(x)}, {_fmt(y)}): flag={phi_cp} choi={choi_ok}")
        else:
            cp = bool(fig2_flags(x, y)[0])
            m = TensorMap.scalar(ScalarPairParams(x, y))
            choi_ok = classify.cp_choi_numeric(choi_matrix_tensor(m)).status is classify.Status.HOLDS_EXACT
            if choi_ok != cp:
                bad.append(f"cp mismatch at ({_fmt(x)}, {_fmt(y)}): flag={cp} choi={choi_ok}")
    return bad


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    try:
        kind, params = parse_descriptor(args.descriptor)
    except (DescriptorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    verdict = classify.classify_full((kind, params), n_samples=args.samples, seed=args.seed)
    if args.format == "json-lines":
        for level, tri in verdict.rows():
            rec = {
                "descriptor": args.descriptor,
                "level": level,
                "status": tri.status.value,
                "note": tri.note,
            }
            if tri.witness is not None:
                rec["witness"] = _witness_json(tri.witness)
            print(json.dumps(rec))
    else:
        print(f"descriptor: {args.descriptor}")
        width = max(len(level) for level, _ in verdict.rows())
        for level, tri in verdict.rows():
            print(f"  {level.ljust(width)}  {tri.status.value:17s}  {tri.note}")
    return EXIT_OK


def _witness_json(witness):
    if isinstance(witness, oracle.Witness):
        return {
            "kind": witness.defect_kind,
            "input": _pauli_json(witness.x),
            "violation": witness.violation,
        }
    if isinstance(witness, tuple) and len(witness) == 2:
        x, viol = witness
        return {"input": _pauli_json(x), "violation": viol}
    if isinstance(witness, float):
        return {"value": witness}
    return str(witness)


def _pauli_json(x) -> list:
    vals = [x.w0] + list(x.w)
    out = []
    for v in vals:
        out.extend([float(np.real(v)), float(np.imag(v))])
    return out


def cmd_scan(args) -> int:
    try:
        spec = ScanSpec.for_figure(args.figure, args.grid)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    flags = scan_flags(spec)
    try:
        write_scan_csv(args.out, spec, flags)
        if args.pgm:
            write_scan_pgm(args.pgm, spec, flags)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {spec.grid * spec.grid} rows to {args.out}")
    if args.verify_choi:
        bad = verify_scan_against_choi(spec, args.verify_choi, args.seed)
        if bad:
            for line in bad:
                print(f"verify-choi: {line}", file=sys.stderr)
            return EXIT_VERIFY
        print(f"verify-choi: {args.verify_choi} random points agree with the Choi spectrum")
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        kind, params = parse_descriptor(args.descriptor)
    except (DescriptorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    map_obj = map_for_descriptor(kind, params)
    cfg = oracle.SampleConfig(n_samples=args.samples, seed=args.seed, tol=args.tol)
    wit = oracle.ks_violation_search(map_obj, cfg)
    if wit is None:
        print(f"no violation found in {args.samples} samples")
        return EXIT_OK
    coords = ",".join(_fmt(v) for v in _pauli_json(wit.x))
    print(f"witness {coords} violation={_fmt(wit.violation)}")
    return EXIT_WITNESS


def cmd_harness(args) -> int:
    cfg = oracle.SampleConfig(n_samples=args.samples, seed=args.seed)
    try:
        report = oracle.agreement_harness(args.family, args.grid, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    print(
        f"family={report.family} grid={report.grid} agree={report.agree} "
        f"resolved_by_oracle={report.resolved_by_oracle} discrepancies={report.discrepancies}"
    )
    for kind, where, info in report.details[:20]:
        print(f"  {kind} at {where}: {info}", file=sys.stderr)
    return EXIT_OK if report.discrepancies == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ksq",
        description="Classify qubit channels and tensor-square maps as "
        "positive / Kadison-Schwarz / completely positive.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    seed = _default_seed()

    p = sub.add_parser("classify", help="classify one parameter point")
    p.add_argument("descriptor", help="phi:a,b,c | tdiag:a,b,c | tlm:a,b | tmat:<18 reals>")
    p.add_argument("--format", choices=("table", "json-lines"), default="table")
    p.add_argument("--samples", type=int, default=20000)
    p.add_argument("--seed", type=int, default=seed)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("scan", help="emit region-scan data for the figures")
    p.add_argument("--figure", choices=("fig1", "fig2"), required=True)
    p.add_argument("--grid", type=int, default=401)
    p.add_argument("--out", required=True)
    p.add_argument("--pgm", default=None)
    p.add_argument("--verify-choi", type=int, default=0, metavar="K")
    p.add_argument("--seed", type=int, default=seed)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", help="brute-force witness search")
    p.add_argument("descriptor")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--tol", type=float, default=DEFAULT.ks_violation)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("harness", help="classifier-vs-oracle agreement scan")
    p.add_argument("--family", required=True)
    p.add_argument("--grid", type=int, default=11)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=seed)
    p.set_defaults(func=cmd_harness)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
