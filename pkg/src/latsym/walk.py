"""Continuous-time quantum-walk engine on network Hamiltonians.

Double-precision throughout.  Site arguments are 1-based to match the network
layer; raw state vectors are plain 0-based numpy arrays.
"""

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .network import Network


class ConvergenceError(RuntimeError):
    pass


@dataclass
class EigenSystem:
    eigenvalues: np.ndarray  # ascending
    eigenvectors: np.ndarray  # orthonormal, column j belongs to eigenvalue j
    n: int


def _hamiltonian_matrix(net: Network) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in net.hamiltonian()])


def eigh(net: Network, tol: float = 1e-12, max_sweeps: int = 100) -> EigenSystem:
    """Cyclic Jacobi diagonalization of the (real symmetric) Hamiltonian.

    Sweeps until every off-diagonal magnitude is below tol; raises after
    max_sweeps.  Eigenpairs are returned sorted ascending.
    """
    h = _hamiltonian_matrix(net)
    n = h.shape[0]
    a = h.copy()
    q = np.eye(n)
    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        if n < 2 or np.abs(a[off_mask]).max() < tol:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apr = a[p, r]
                if abs(apr) < 1e-300:
                    continue
                theta = (a[r, r] - a[p, p]) / (2.0 * apr)
                if theta == 0.0:
                    t = 1.0
                else:
                    t = np.sign(theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_r = a[:, r].copy()
                a[:, p] = c * col_p - s * col_r
                a[:, r] = s * col_p + c * col_r
                row_p = a[p, :].copy()
                row_r = a[r, :].copy()
                a[p, :] = c * row_p - s * row_r
                a[r, :] = s * row_p + c * row_r
                a[p, r] = a[r, p] = 0.0
                col_p = q[:, p].copy()
                q[:, p] = c * col_p - s * q[:, r]
                q[:, r] = s * col_p + c * q[:, r]
    else:
        residual = float(np.abs(a[off_mask]).max()) if n >= 2 else 0.0
        if residual >= tol:
            raise ConvergenceError(
                f"Jacobi sweeps did not converge: off-diagonal residual {residual:g}"
            )
    evals = np.diag(a).copy()
    order = np.argsort(evals, kind="stable")
    evals = evals[order]
    q = q[:, order]
    if n:
        if np.abs(q.T @ q - np.eye(n)).max() > 1e-10:
            raise ConvergenceError("eigenvector matrix lost orthonormality")
        if np.abs(q @ np.diag(evals) @ q.T - h).max() > 1e-10:
            raise ConvergenceError("spectral reconstruction drifted from H")
    return EigenSystem(eigenvalues=evals, eigenvectors=q, n=n)


def evolve(sys: EigenSystem, tau: float, psi0: np.ndarray) -> np.ndarray:
    """psi(tau) = Q exp(-i Lambda tau) Q^T psi0."""
    psi0 = np.asarray(psi0, dtype=complex)
    if psi0.shape != (sys.n,):
        raise ValueError(f"state must have shape ({sys.n},)")
    phases = np.exp(-1j * sys.eigenvalues * tau)
    return sys.eigenvectors @ (phases * (sys.eigenvectors.T @ psi0))


def evolution_operator(sys: EigenSystem, tau: float) -> np.ndarray:
    phases = np.exp(-1j * sys.eigenvalues * tau)
    return (sys.eigenvectors * phases) @ sys.eigenvectors.T


def fidelity(sys: EigenSystem, u: int, v: int, tau: float) -> float:
    """|U_{u,v}(tau)|^2 — probability of finding at u a walker launched at v."""
    c = sys.eigenvectors[u - 1] * sys.eigenvectors[v - 1]
    amp = np.sum(c * np.exp(-1j * sys.eigenvalues * tau))
    return float(abs(amp) ** 2)


def fidelity_curve(sys: EigenSystem, u: int, v: int, taus: np.ndarray) -> np.ndarray:
    c = sys.eigenvectors[u - 1] * sys.eigenvectors[v - 1]
    amp = np.exp(-1j * np.outer(taus, sys.eigenvalues)) @ c
    return np.abs(amp) ** 2


@dataclass
class PeakReport:
    samples: int
    step: float
    peaks: list[tuple[float, float]]  # refined (tau, F), in trigger order
    envelope: list[tuple[float, float, float]]  # (tau, F, running_max), thinned
    best: tuple[float, float]


def _refine_peak(fid, t0: float, h0: float, lo: float, hi: float) -> tuple[float, float]:
    # hill-climb with step h, then iterated parabolic steps; stops once the
    # update falls below 1e-4 of the coarse step
    t = min(max(t0, lo), hi)
    h = h0
    min_h = 1e-4 * h0
    for _ in range(5000):
        if h < min_h:
            break
        tm = max(t - h, lo)
        tp = min(t + h, hi)
        fm, f0, fp = fid(tm), fid(t), fid(tp)
        if fp > f0 and fp >= fm:
            t = tp
            continue
        if fm > f0:
            t = tm
            continue
        denom = fm - 2.0 * f0 + fp
        if denom < 0.0:
            dt = 0.5 * h * (fm - fp) / denom
            t = min(max(t + dt, tm), tp)
        h *= 0.5
    return t, fid(t)


def envelope_scan(
    sys: EigenSystem,
    u: int,
    v: int,
    tau_max: float,
    coarse_step: float,
    chunk_size: int = 500_000,
    envelope_points: int = 2000,
) -> PeakReport:
    """Coarse fidelity scan with refinement of every new running-max record.

    A coarse sample beating the running maximum (which includes all refined
    values so far) triggers local parabolic refinement; the envelope output is
    the running maximum on a logarithmically thinned grid.
    """
    if tau_max <= 0 or coarse_step <= 0:
        raise ValueError("tau_max and coarse_step must be positive")
    n_samples = int(np.floor(tau_max / coarse_step + 1e-9)) + 1

    keep = np.unique(
        np.concatenate(
            [
                [0, n_samples - 1],
                np.round(np.geomspace(1, n_samples, envelope_points)).astype(int) - 1,
            ]
        )
    )
    keep = keep[(keep >= 0) & (keep < n_samples)]

    fid = lambda t: fidelity(sys, u, v, t)
    peaks: list[tuple[float, float]] = []
    envelope: list[tuple[float, float, float]] = []
    best_t, best_f = 0.0, -np.inf
    carry = -np.inf  # running max over all samples at earlier times
    pending: list[tuple[int, float]] = []  # refined values placed at their own time
    for start in range(0, n_samples, chunk_size):
        idx = np.arange(start, min(start + chunk_size, n_samples))
        taus = idx * coarse_step
        f = fidelity_curve(sys, u, v, taus)
        coarse_max = np.maximum(np.maximum.accumulate(f), carry)
        prev = np.empty_like(f)
        prev[0] = carry
        prev[1:] = coarse_max[:-1]
        for i in np.flatnonzero(f > prev):
            if f[i] <= best_f:
                continue
            t_ref, f_ref = _refine_peak(fid, taus[i], coarse_step, 0.0, tau_max)
            if f_ref < f[i]:  # refinement may not undercut its trigger
                t_ref, f_ref = float(taus[i]), float(f[i])
            if peaks and abs(t_ref - peaks[-1][0]) < coarse_step:
                if f_ref > peaks[-1][1]:
                    peaks[-1] = (t_ref, f_ref)
            else:
                peaks.append((t_ref, f_ref))
            if f_ref > best_f:
                best_t, best_f = t_ref, f_ref
            pos = max(0, min(int(np.ceil(t_ref / coarse_step - 1e-9)), n_samples - 1))
            pending.append((pos, f_ref))
        # fold refined peaks into the running max from their own position on
        refined_floor = np.full_like(f, -np.inf)
        later = []
        for pos, val in pending:
            if pos < start + len(idx):
                p = max(pos - start, 0)
                np.maximum(refined_floor[p:], val, out=refined_floor[p:])
            else:
                later.append((pos, val))
        pending = later
        running = np.maximum(coarse_max, np.maximum.accumulate(refined_floor))
        sel = keep[(keep >= start) & (keep < start + len(idx))] - start
        for j in sel:
            envelope.append((float(taus[j]), float(f[j]), float(running[j])))
        carry = float(running[-1])
    return PeakReport(
        samples=n_samples,
        step=coarse_step,
        peaks=peaks,
        envelope=envelope,
        best=(best_t, best_f),
    )


def antisymmetric_confinement(
    sys: EigenSystem, u: int, v: int, singlets: Iterable[int], tau_grid: np.ndarray
) -> float:
    """Max |psi_w(tau)| over singlet sites w for the input (e_u - e_v)/sqrt(2)."""
    rows = sorted(int(s) - 1 for s in singlets)
    if not rows:
        raise ValueError("no singlet sites supplied")
    taus = np.asarray(tau_grid, dtype=float)
    coef = (sys.eigenvectors[u - 1] - sys.eigenvectors[v - 1]) / np.sqrt(2.0)
    phases = np.exp(-1j * np.outer(taus, sys.eigenvalues))
    amps = (phases * coef) @ sys.eigenvectors[rows].T
    return float(np.abs(amps).max())


def eigenprojector_parity(
    sys: EigenSystem, u: int, v: int, cluster_tol: float = 1e-8, parity_tol: float = 1e-8
) -> bool:
    """Definite eigenvector parity on (u, v) for every eigenvalue cluster.

    Eigenvalues closer than cluster_tol (scaled by the spectral radius) are
    treated as one degenerate cluster and tested through their projector.
    """
    lam = sys.eigenvalues
    scale = max(1.0, float(np.abs(lam).max())) if sys.n else 1.0
    tol = cluster_tol * scale
    start = 0
    for i in range(1, sys.n + 1):
        if i == sys.n or lam[i] - lam[i - 1] > tol:
            block = sys.eigenvectors[:, start:i]
            pu = block @ block[u - 1]
            pv = block @ block[v - 1]
            if (
                np.linalg.norm(pu - pv) >= parity_tol
                and np.linalg.norm(pu + pv) >= parity_tol
            ):
                return False
            start = i
    return True
