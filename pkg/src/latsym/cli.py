"""Command-line front end.

Exit codes: 0 on success (and on yes answers), 1 on no answers from yes/no
tests, 2 on input or usage errors.
"""

import argparse
import csv
import math
import re
import sys
import warnings
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .network import NetworkError, parse_network
from .ninesite import build_ninesite
from .pgst import PGSTError, boundary_scan, pgst_certificate
from .photons import correlation_matrix
from .spectral import (
    SpectralError,
    is_cospectral,
    is_latent_symmetric,
    isospectral_reduction,
    singlet_sites,
)
from .walk import eigh, envelope_scan, evolution_operator


def _g17(x: float) -> str:
    # 17 significant digits: doubles round-trip losslessly
    return format(float(x), ".17g")


def _load_network(path: str):
    return parse_network(Path(path).read_text())


def analyze_intensities(
    intensities: Sequence[float], background: float, u: int, v: int
) -> tuple[float, float]:
    """Background-subtracted transfer fidelities from per-site intensities.

    F_uv = (I_v - bg) / sum_i (I_i - bg) and symmetrically for F_vu, both
    clamped to [0, 1] with a warning when measurement noise forces clamping.
    """
    n = len(intensities)
    for site in (u, v):
        if not 1 <= site <= n:
            raise ValueError(f"site {site} out of range 1..{n}")
    total = sum(x - background for x in intensities)
    if total <= 0:
        raise ValueError("all intensities at or below background")
    f_uv = (intensities[v - 1] - background) / total
    f_vu = (intensities[u - 1] - background) / total
    clamped = [x for x in (f_uv, f_vu) if x < 0 or x > 1]
    if clamped:
        warnings.warn(
            "fidelity outside [0, 1] clamped (intensity below background?)",
            stacklevel=2,
        )
    clip = lambda x: min(max(x, 0.0), 1.0)
    return clip(f_uv), clip(f_vu)


def _cmd_cospectral(args) -> int:
    net = _load_network(args.network)
    ok = is_cospectral(net, args.u, args.v)
    print(f"cospectral: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def _cmd_latent(args) -> int:
    net = _load_network(args.network)
    ok = is_latent_symmetric(net, args.u, args.v)
    print(f"latent-symmetric: {'yes' if ok else 'no'}")
    return 0 if ok else 1


def _cmd_singlets(args) -> int:
    net = _load_network(args.network)
    sites = sorted(singlet_sites(net, args.u, args.v))
    print("singlets: " + (" ".join(map(str, sites)) if sites else "none"))
    return 0


def _cmd_reduce(args) -> int:
    net = _load_network(args.network)
    red = isospectral_reduction(net, args.u, args.v)
    print(f"a_num: {red.a.num}")
    print(f"a_den: {red.a.den}")
    print(f"b_num: {red.b.num}")
    print(f"b_den: {red.b.den}")
    return 0


def _cmd_cert(args) -> int:
    net = _load_network(args.network)
    print(pgst_certificate(net, args.u, args.v).report_text())
    return 0


def _cmd_scan_boundary(args) -> int:
    k = Fraction(args.k)
    emin = Fraction(args.emin)
    emax = Fraction(args.emax)
    step = Fraction(args.step)
    if step <= 0 or emax < emin:
        raise ValueError("need step > 0 and emax >= emin")
    grid = []
    e = emin
    while e <= emax:
        grid.append(e)
        e += step
    report = boundary_scan(build_ninesite, k, grid)
    print(report.report_text())
    return 0


def _cmd_evolve(args) -> int:
    net = _load_network(args.network)
    net.check_vertex(args.from_site)
    sys_ = eigh(net)
    n_rows = int(math.floor(args.tmax / args.step + 1e-9)) + 1
    taus = np.arange(n_rows) * args.step
    coef = sys_.eigenvectors[args.from_site - 1]
    amps = (np.exp(-1j * np.outer(taus, sys_.eigenvalues)) * coef) @ sys_.eigenvectors.T
    probs = np.abs(amps) ** 2
    with open(args.out, "w", newline="") as fh:
        fh.write("tau," + ",".join(f"p{i}" for i in range(1, net.n + 1)) + "\n")
        for t, row in zip(taus, probs):
            fh.write(_g17(t) + "," + ",".join(_g17(p) for p in row) + "\n")
    print(f"wrote {n_rows} rows to {args.out}")
    return 0


def _cmd_envelope(args) -> int:
    net = _load_network(args.network)
    net.check_pair(args.u, args.v)
    sys_ = eigh(net)
    report = envelope_scan(sys_, args.u, args.v, args.tmax, args.step)
    with open(args.out, "w", newline="") as fh:
        fh.write("tau,F,running_max\n")
        for tau, f, run in report.envelope:
            fh.write(f"{_g17(tau)},{_g17(f)},{_g17(run)}\n")
    best_t, best_f = report.best
    print(f"best: tau={_g17(best_t)} F={_g17(best_f)}")
    return 0


def _cmd_correlate(args) -> int:
    net = _load_network(args.network)
    net.check_pair(args.u, args.v)
    sys_ = eigh(net)
    u_net = evolution_operator(sys_, args.tau)
    corr = correlation_matrix(
        u_net,
        (args.u, args.v),
        phase=args.phase,
        statistics=args.stats,
        comparison_mode="halved" if args.halved else "raw",
        tau=args.tau,
    )
    vals = corr.values
    with open(args.out, "w", newline="") as fh:
        fh.write("i,j,value\n")
        for i in range(1, net.n + 1):
            for j in range(1, net.n + 1):
                fh.write(f"{i},{j},{_g17(vals[i - 1, j - 1])}\n")
    print(
        f"statistics={corr.statistics} mode={corr.comparison_mode} "
        f"max={_g17(vals.max())} at tau={_g17(args.tau)}"
    )
    return 0


def _read_intensity_csv(path: str) -> list[float]:
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row]
    if not rows or [c.strip() for c in rows[0]] != ["site", "intensity"]:
        raise ValueError("intensity CSV must start with header 'site,intensity'")
    by_site = {}
    for row in rows[1:]:
        if len(row) != 2:
            raise ValueError(f"bad intensity row {row!r}")
        site = int(row[0])
        if site in by_site:
            raise ValueError(f"duplicate site {site}")
        by_site[site] = float(row[1])
    n = len(by_site)
    if set(by_site) != set(range(1, n + 1)):
        raise ValueError("sites must be 1..n with no gaps")
    return [by_site[i] for i in range(1, n + 1)]


def _cmd_intensities(args) -> int:
    intensities = _read_intensity_csv(args.csv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        f_uv, f_vu = analyze_intensities(intensities, args.bg, args.u, args.v)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    print(f"F_uv = {_g17(f_uv)}")
    print(f"F_vu = {_g17(f_vu)}")
    return 0


def _add_pair_args(p) -> None:
    p.add_argument("-u", type=int, required=True, help="first site id")
    p.add_argument("-v", type=int, required=True, help="second site id")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latsym",
        description="Latent-symmetry detection, state-transfer certification, "
        "quantum-walk dynamics and two-photon statistics on weighted networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cospectral", help="are two sites cospectral?")
    p.add_argument("network")
    _add_pair_args(p)
    p.set_defaults(func=_cmd_cospectral)

    p = sub.add_parser("latent", help="cospectral without a swap automorphism?")
    p.add_argument("network")
    _add_pair_args(p)
    p.set_defaults(func=_cmd_latent)

    p = sub.add_parser("singlets", help="sites walk-equivalent w.r.t. the pair")
    p.add_argument("network")
    _add_pair_args(p)
    p.set_defaults(func=_cmd_singlets)

    p = sub.add_parser("reduce", help="isospectral reduction onto the pair")
    p.add_argument("network")
    _add_pair_args(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("cert", help="state-transfer certificate for the pair")
    p.add_argument("network")
    _add_pair_args(p)
    p.set_defaults(func=_cmd_cert)

    p = sub.add_parser(
        "scan-boundary",
        help="scan the shared on-site potential of the nine-site network "
        "for strong-cospectrality failures",
    )
    # let negative rationals like -43/100 pass as option values
    p._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")
    p.add_argument("-k", required=True, help="uniform coupling, rational")
    p.add_argument("-emin", required=True, help="grid start, rational")
    p.add_argument("-emax", required=True, help="grid end, rational")
    p.add_argument("-step", required=True, help="grid step, rational")
    p.set_defaults(func=_cmd_scan_boundary)

    p = sub.add_parser("evolve", help="per-site probabilities over time")
    p.add_argument("network")
    p.add_argument("--from", dest="from_site", metavar="SITE", type=int, required=True)
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_evolve)

    p = sub.add_parser("envelope", help="running-max transfer-fidelity envelope")
    p.add_argument("network")
    _add_pair_args(p)
    p.add_argument("--tmax", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_envelope)

    p = sub.add_parser("correlate", help="two-photon correlation matrix")
    p.add_argument("network")
    _add_pair_args(p)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--phase", type=float, default=math.pi / 2)
    p.add_argument("--stats", choices=("boson", "dist"), default="boson")
    p.add_argument("--halved", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("intensities", help="fidelities from measured intensities")
    p.add_argument("csv")
    p.add_argument("--bg", type=float, required=True)
    _add_pair_args(p)
    p.set_defaults(func=_cmd_intensities)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (NetworkError, SpectralError, PGSTError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
